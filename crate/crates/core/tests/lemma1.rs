//! The closed-form move mix against enumeration of every feasible integer
//! point `x1 + x2 + x3 = H`, `x1 - x3 <= N`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uavcov::lemma1_optimum;

fn brute(a: f64, b: f64, k: f64, h: u32, n: u32) -> f64 {
    let mut best = f64::INFINITY;
    for x1 in 0..=h {
        for x3 in 0..=h - x1 {
            let x2 = h - x1 - x3;
            if i64::from(x1) - i64::from(x3) <= i64::from(n) {
                best = best.min(a * f64::from(x1) + b * f64::from(x2) + k * f64::from(x3));
            }
        }
    }
    best
}

/// Coefficients with `A <= B <= K` and `A + K >= 2B`.
fn coefficients(rng: &mut ChaCha8Rng, integer: bool) -> (f64, f64, f64) {
    loop {
        let (a, b, k) = if integer {
            (f64::from(rng.gen_range(0..20u32)), f64::from(rng.gen_range(0..30u32)), f64::from(rng.gen_range(0..40u32)))
        } else {
            (rng.gen_range(0.0..10.0), rng.gen_range(0.0..15.0), rng.gen_range(0.0..20.0))
        };
        if a <= b && b <= k && a + k >= 2.0 * b {
            return (a, b, k);
        }
    }
}

#[test]
fn closed_form_matches_enumeration_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        // Small integer coefficients keep every objective exactly representable.
        let (a, b, k) = coefficients(&mut rng, true);
        let h = rng.gen_range(0..40u32);
        let n = rng.gen_range(0..=h);
        let mix = lemma1_optimum(a, b, k, f64::from(h), f64::from(n)).unwrap();
        assert_eq!(mix.objective, brute(a, b, k, h, n), "A={a} B={b} K={k} H={h} N={n}");
        assert_eq!(mix.upwind, 0.0);
        assert_eq!(mix.downwind + mix.crosswind, f64::from(h));
    }
}

#[test]
fn closed_form_matches_enumeration_real_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let (a, b, k) = coefficients(&mut rng, false);
        let h = rng.gen_range(0..40u32);
        let n = rng.gen_range(0..=h);
        let mix = lemma1_optimum(a, b, k, f64::from(h), f64::from(n)).unwrap();
        let want = brute(a, b, k, h, n);
        assert!((mix.objective - want).abs() <= 1e-9 * want.max(1.0), "{} vs {want}", mix.objective);
    }
}
