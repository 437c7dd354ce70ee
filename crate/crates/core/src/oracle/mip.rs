use std::fmt::Write as _;

use crate::grid::GridSpec;
use crate::timing::MoveTimes;

/// Constraint families in emission order; each opens with a `\ family: <tag>` comment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MipFamily {
    Assign,
    VisitOnce,
    Entry,
    Exit,
    Downwind,
    Upwind,
    CrossUp,
    CrossDown,
    MoveExclusive,
    MissionTime,
}

pub const MIP_FAMILIES: [MipFamily; 10] = [
    MipFamily::Assign,
    MipFamily::VisitOnce,
    MipFamily::Entry,
    MipFamily::Exit,
    MipFamily::Downwind,
    MipFamily::Upwind,
    MipFamily::CrossUp,
    MipFamily::CrossDown,
    MipFamily::MoveExclusive,
    MipFamily::MissionTime,
];

impl MipFamily {
    pub fn tag(self) -> &'static str {
        match self {
            MipFamily::Assign => "assign",
            MipFamily::VisitOnce => "visit_once",
            MipFamily::Entry => "entry",
            MipFamily::Exit => "exit",
            MipFamily::Downwind => "downwind",
            MipFamily::Upwind => "upwind",
            MipFamily::CrossUp => "cross_up",
            MipFamily::CrossDown => "cross_down",
            MipFamily::MoveExclusive => "move_exclusive",
            MipFamily::MissionTime => "mission_time",
        }
    }

    fn note(self) -> &'static str {
        match self {
            MipFamily::Assign => "each UAV is in exactly one cell or outside at every step",
            MipFamily::VisitOnce => "every cell is visited once",
            MipFamily::Entry => "a cell is entered only from a neighbor",
            MipFamily::Exit => "a cell is left only to a neighbor or to outside",
            MipFamily::Downwind => "column i to i+1 marks a downwind move",
            MipFamily::Upwind => "column i to i-1 marks an upwind move",
            MipFamily::CrossUp => "row j to j+1 marks a crosswind move",
            MipFamily::CrossDown => "row j to j-1 marks a crosswind move",
            MipFamily::MoveExclusive => "one move type per step, or outside",
            MipFamily::MissionTime => "operation time bounds every mission time",
        }
    }

    /// Rows this family contributes for the given index-set sizes.
    pub fn count(self, n: u64, m: u64, q: u64) -> u64 {
        let s = n * m;
        match self {
            MipFamily::Assign => q * s,
            MipFamily::VisitOnce => n * m,
            MipFamily::Entry | MipFamily::Exit => n * m * q * (s - 1),
            MipFamily::Downwind | MipFamily::Upwind => (n - 1) * (s - 1) * q,
            MipFamily::CrossUp | MipFamily::CrossDown => (m - 1) * (s - 1) * q,
            MipFamily::MoveExclusive => q * (s - 1),
            MipFamily::MissionTime => q,
        }
    }
}

const WRAP: usize = 200;

/// Accumulates `+ coef var` terms and wraps long rows.
struct Row {
    text: String,
    line: usize,
}

impl Row {
    fn new(head: String) -> Self {
        let line = head.len();
        Self { text: head, line }
    }

    fn term(&mut self, sign: char, coef: Option<f64>, var: &str) {
        let lead = if sign == ' ' { String::new() } else { format!(" {sign}") };
        let piece = match coef {
            Some(c) => format!("{lead} {c} {var}"),
            None => format!("{lead} {var}"),
        };
        if self.line + piece.len() > WRAP {
            self.text.push_str("\n   ");
            self.line = 3;
        }
        self.line += piece.len();
        self.text.push_str(&piece);
    }

    fn finish(mut self, out: &mut String, rel: &str, rhs: i64) {
        let tail = format!(" {rel} {rhs}");
        if self.line + tail.len() > WRAP {
            self.text.push_str("\n   ");
        }
        self.text.push_str(&tail);
        out.push_str(&self.text);
        out.push('\n');
    }
}

fn x(k: u32, i: u32, j: u32, s: u32) -> String {
    format!("x_{k}_{i}_{j}_{s}")
}

/// The step-indexed coverage MIP in LP text format.
///
/// Steps run over `1..=n*m`. Variables are `x_k_i_j_s` (UAV `k` in cell
/// `(i, j)` at step `s`), `y_k_s` (outside), `p_k_s`, `r_k_s`, `l_k_s`
/// (crosswind, downwind, upwind move into step `s`) and `t_opr`. The output
/// depends only on the inputs.
pub fn emit_mip(g: &GridSpec, t: &MoveTimes) -> String {
    let (n, m, q) = (g.n, g.m, g.q);
    let steps = n * m;
    let mut out = String::new();
    let _ = writeln!(out, "\\ coverage MIP: n={n} m={m} q={q} steps={steps}");
    let _ = writeln!(out, "\\ times: downwind={} crosswind={} upwind={}", t.downwind, t.crosswind, t.upwind);
    out.push_str("Minimize\n obj: t_opr\nSubject To\n");

    let header = |out: &mut String, f: MipFamily| {
        let _ = writeln!(out, "\\ family: {} ({}), {} rows", f.tag(), f.note(), f.count(n.into(), m.into(), q.into()));
    };

    header(&mut out, MipFamily::Assign);
    for k in 1..=q {
        for s in 1..=steps {
            let mut row = Row::new(format!(" assign_{k}_{s}:"));
            let mut first = true;
            for i in 1..=n {
                for j in 1..=m {
                    row.term(if first { ' ' } else { '+' }, None, &x(k, i, j, s));
                    first = false;
                }
            }
            row.term('+', None, &format!("y_{k}_{s}"));
            row.finish(&mut out, "=", 1);
        }
    }

    header(&mut out, MipFamily::VisitOnce);
    for i in 1..=n {
        for j in 1..=m {
            let mut row = Row::new(format!(" visit_{i}_{j}:"));
            let mut first = true;
            for k in 1..=q {
                for s in 1..=steps {
                    row.term(if first { ' ' } else { '+' }, None, &x(k, i, j, s));
                    first = false;
                }
            }
            row.finish(&mut out, "=", 1);
        }
    }

    let around = |i: u32, j: u32| {
        let mut v = Vec::with_capacity(4);
        if i > 1 {
            v.push((i - 1, j));
        }
        if i < n {
            v.push((i + 1, j));
        }
        if j > 1 {
            v.push((i, j - 1));
        }
        if j < m {
            v.push((i, j + 1));
        }
        v
    };

    header(&mut out, MipFamily::Entry);
    for i in 1..=n {
        for j in 1..=m {
            for k in 1..=q {
                for s in 2..=steps {
                    let mut row = Row::new(format!(" entry_{k}_{i}_{j}_{s}:"));
                    row.term(' ', None, &x(k, i, j, s));
                    for (a, b) in around(i, j) {
                        row.term('-', None, &x(k, a, b, s - 1));
                    }
                    row.finish(&mut out, "<=", 0);
                }
            }
        }
    }

    header(&mut out, MipFamily::Exit);
    for i in 1..=n {
        for j in 1..=m {
            for k in 1..=q {
                for s in 1..steps {
                    let mut row = Row::new(format!(" exit_{k}_{i}_{j}_{s}:"));
                    row.term(' ', None, &x(k, i, j, s));
                    row.term('-', None, &format!("y_{k}_{}", s + 1));
                    for (a, b) in around(i, j) {
                        row.term('-', None, &x(k, a, b, s + 1));
                    }
                    row.finish(&mut out, "<=", 0);
                }
            }
        }
    }

    // Column or row transition indicators: sum(prev line) + sum(next line) - 1 <= flag.
    let transition = |out: &mut String, f: MipFamily, name: &str, flag: &str| {
        header(out, f);
        let (lines, along_x, forward) = match f {
            MipFamily::Downwind => (n, true, true),
            MipFamily::Upwind => (n, true, false),
            MipFamily::CrossUp => (m, false, true),
            _ => (m, false, false),
        };
        let range: Vec<u32> = if forward { (1..lines).collect() } else { (2..=lines).collect() };
        for a in range {
            let b = if forward { a + 1 } else { a - 1 };
            for s in 2..=steps {
                for k in 1..=q {
                    let mut row = Row::new(format!(" {name}_{k}_{a}_{s}:"));
                    let mut first = true;
                    let span = if along_x { m } else { n };
                    for (line, step) in [(a, s - 1), (b, s)] {
                        for o in 1..=span {
                            let var = if along_x { x(k, line, o, step) } else { x(k, o, line, step) };
                            row.term(if first { ' ' } else { '+' }, None, &var);
                            first = false;
                        }
                    }
                    row.term('-', None, &format!("{flag}_{k}_{s}"));
                    row.finish(out, "<=", 1);
                }
            }
        }
    };
    transition(&mut out, MipFamily::Downwind, "dw", "r");
    transition(&mut out, MipFamily::Upwind, "uw", "l");
    transition(&mut out, MipFamily::CrossUp, "cu", "p");
    transition(&mut out, MipFamily::CrossDown, "cd", "p");

    header(&mut out, MipFamily::MoveExclusive);
    for k in 1..=q {
        for s in 2..=steps {
            let mut row = Row::new(format!(" excl_{k}_{s}:"));
            for (idx, v) in ["p", "r", "l", "y"].iter().enumerate() {
                row.term(if idx == 0 { ' ' } else { '+' }, None, &format!("{v}_{k}_{s}"));
            }
            row.finish(&mut out, "=", 1);
        }
    }

    header(&mut out, MipFamily::MissionTime);
    for k in 1..=q {
        let mut row = Row::new(format!(" time_{k}:"));
        row.term(' ', None, "t_opr");
        for (v, c) in [("p", t.crosswind), ("r", t.downwind), ("l", t.upwind)] {
            for s in 2..=steps {
                row.term('-', Some(c), &format!("{v}_{k}_{s}"));
            }
        }
        row.finish(&mut out, ">=", 0);
    }

    out.push_str("Bounds\n t_opr >= 0\nBinaries\n");
    let mut names = Vec::new();
    for k in 1..=q {
        for s in 1..=steps {
            for i in 1..=n {
                for j in 1..=m {
                    names.push(x(k, i, j, s));
                }
            }
            names.push(format!("y_{k}_{s}"));
            if s > 1 {
                for v in ["p", "r", "l"] {
                    names.push(format!("{v}_{k}_{s}"));
                }
            }
        }
    }
    for chunk in names.chunks(8) {
        out.push(' ');
        out.push_str(&chunk.join(" "));
        out.push('\n');
    }
    out.push_str("End\n");
    out
}
