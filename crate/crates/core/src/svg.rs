//! SVG 1.1 rendering of a plan: grid, one polyline per UAV, start markers
//! and a wind arrow pointing downwind (+x).

use std::fmt::Write as _;

use crate::grid::{CellCoord, GridSpec};
use crate::path::UavPath;

pub const CELL_PX: u32 = 24;
const MARGIN: u32 = 24;
const HEADER: u32 = 32;

pub const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn center(g: &GridSpec, c: CellCoord) -> (u32, u32) {
    let x = MARGIN + (c.x - 1) * CELL_PX + CELL_PX / 2;
    let y = HEADER + MARGIN + (g.m - c.y) * CELL_PX + CELL_PX / 2;
    (x, y)
}

pub fn render_svg(g: &GridSpec, paths: &[UavPath]) -> String {
    let width = 2 * MARGIN + g.n * CELL_PX;
    let height = HEADER + 2 * MARGIN + g.m * CELL_PX;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#);

    // Wind arrow.
    let (ax0, ax1, ay) = (MARGIN, MARGIN + (g.n * CELL_PX).min(96), HEADER / 2);
    let _ = writeln!(s, r##"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#333"/></marker></defs>"##);
    let _ = writeln!(
        s,
        r##"<line x1="{ax0}" y1="{ay}" x2="{ax1}" y2="{ay}" stroke="#333" stroke-width="2" marker-end="url(#head)"/>"##
    );
    let _ = writeln!(s, r##"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="#333">wind</text>"##, ax1 + 8, ay + 4);

    let _ = writeln!(s, r##"<g stroke="#bbb" stroke-width="1" fill="none">"##);
    for x in 0..g.n {
        for y in 0..g.m {
            let _ = writeln!(
                s,
                r#"<rect x="{}" y="{}" width="{CELL_PX}" height="{CELL_PX}"/>"#,
                MARGIN + x * CELL_PX,
                HEADER + MARGIN + y * CELL_PX
            );
        }
    }
    let _ = writeln!(s, "</g>");

    for (i, p) in paths.iter().enumerate() {
        let Some(&first) = p.cells.first() else { continue };
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = p
            .cells
            .iter()
            .map(|&c| {
                let (x, y) = center(g, c);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="3" stroke-linejoin="round"/>"#,
            points.join(" ")
        );
        let (x, y) = center(g, first);
        let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="5" fill="{color}"/>"#);
    }
    s.push_str("</svg>\n");
    s
}
