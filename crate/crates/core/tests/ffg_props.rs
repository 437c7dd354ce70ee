use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uavcov::ffg::{classify, cover_ffg, shape_flags, valleys, FfgShape, ShapeClass};
use uavcov::validate::validate_path;
use uavcov::{GridSpec, Move};

/// A random shape whose middle valleys have even length, `r <= 12`, `k <= 8`.
fn random_ffg(rng: &mut ChaCha8Rng) -> FfgShape {
    loop {
        let k = rng.gen_range(1..=8u32);
        let mut heights = Vec::new();
        let mut prev = 0;
        let valleys = rng.gen_range(1..=5);
        for v in 0..valleys {
            if k == 1 && v > 0 {
                break;
            }
            let len = if v == 0 || v == valleys - 1 { rng.gen_range(1..=3) } else { 2 * rng.gen_range(1..=2) };
            let mut depth = rng.gen_range(1..=k);
            while depth == prev {
                depth = rng.gen_range(1..=k);
            }
            prev = depth;
            heights.extend(std::iter::repeat_n(depth, len));
        }
        if heights.len() > 12 || !heights.contains(&k) {
            continue;
        }
        return FfgShape::new(heights).unwrap();
    }
}

#[test]
fn random_ffg_shapes_are_covered() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let s = random_ffg(&mut rng);
        assert_ne!(classify(&s), ShapeClass::NotFfg, "{:?}", s.heights);
        let p = cover_ffg(&s).unwrap();
        let g = GridSpec::von_neumann(s.r, s.k, 1).unwrap();
        validate_path(&p, &g).unwrap();
        assert_eq!(p.len() as u64, s.cell_count(), "{:?}", s.heights);
        let mut want: Vec<_> = s.cells().collect();
        let mut got = p.cells.clone();
        want.sort();
        got.sort();
        assert_eq!(got, want, "{:?}", s.heights);
        assert_eq!(p.count(Move::Upwind), 0);
    }
}

proptest! {
    #[test]
    fn valleys_partition_columns(heights in prop::collection::vec(1u32..6, 1..15)) {
        let s = FfgShape::new(heights.clone()).unwrap();
        let v = valleys(&s).valleys;
        let mut next = 1;
        for (i, valley) in v.iter().enumerate() {
            prop_assert_eq!(*valley.columns.start(), next);
            next = valley.columns.end() + 1;
            for c in valley.columns.clone() {
                prop_assert_eq!(heights[c as usize - 1], valley.depth);
            }
            if i > 0 {
                prop_assert_ne!(v[i - 1].depth, valley.depth);
            }
        }
        prop_assert_eq!(next, s.r + 1);
    }

    #[test]
    fn rectangles_are_single_valley(r in 1u32..20, k in 1u32..20) {
        let s = FfgShape::rectangle(r, k).unwrap();
        prop_assert_eq!(classify(&s), ShapeClass::Ffg1);
        prop_assert!(shape_flags(&s).ffg);
        let p = cover_ffg(&s).unwrap();
        prop_assert_eq!(p.len() as u64, u64::from(r * k));
    }

    #[test]
    fn covering_succeeds_exactly_when_classified(heights in prop::collection::vec(1u32..5, 1..10)) {
        let s = FfgShape::new(heights).unwrap();
        let ok = cover_ffg(&s).is_ok();
        prop_assert_eq!(ok, classify(&s) != ShapeClass::NotFfg);
    }
}
