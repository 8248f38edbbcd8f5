//! Checks against oracles that do not share code paths with the transforms.

use fht_core::analysis::{error_sweep, ortho_error, SweepAlgorithm};
use fht_core::dyadic::{gdt_opcount_with, gdt_pattern_with, gdt_transform_with, Split};
use fht_core::rational::Rational;
use fht_core::superpixel::{expand, remap_params, sp_transform, SuperpixelSpec};
use fht_core::{gdt_pattern, gdt_transform, random_image, ref_transform, GrayImage};

/// Brady–Yong rows for `w = 2^q` from the binary digits of `x`: the digit
/// selecting the right half at depth `k` adds `⌈⌊t / 2^k⌋ / 2⌉`.
fn brady_yong_rows(q: u32, t: usize, s: i64) -> Vec<i64> {
    let w = 1usize << q;
    (0..w)
        .map(|x| {
            let mut row = s;
            for k in 0..q {
                if (x >> (q - 1 - k)) & 1 == 1 {
                    row += ((t >> k) as i64 + 1) / 2;
                }
            }
            row
        })
        .collect()
}

fn rational_error(rows: &[i64], t: usize, s: i64) -> Rational {
    let w = rows.len() as i64;
    rows.iter()
        .enumerate()
        .map(|(x, &r)| {
            let d =
                Rational::from(s) + Rational::new(t as i64 * x as i64, w - 1) - Rational::from(r);
            if d < Rational::from(0) {
                -d
            } else {
                d
            }
        })
        .max()
        .unwrap()
}

#[test]
fn power_of_two_patterns_are_brady_yong() {
    for q in 1..=8 {
        let w = 1usize << q;
        for t in 0..w {
            let expected = brady_yong_rows(q, t, 3);
            for split in [Split::PowerOfTwo, Split::Balanced] {
                assert_eq!(
                    gdt_pattern_with(w, w + 5, t, 3, split).unwrap().rows,
                    expected,
                    "w={w} t={t} {split:?}"
                );
            }
        }
    }
}

#[test]
fn brady_yong_errors_frozen() {
    // computed from the bit formula above, independently of the recursion
    let frozen = [
        (2, Rational::new(1, 3)),
        (3, Rational::new(3, 7)),
        (4, Rational::new(2, 3)),
        (5, Rational::new(24, 31)),
        (6, Rational::from(1)),
        (7, Rational::new(141, 127)),
        (8, Rational::new(4, 3)),
    ];
    for (q, expected) in frozen {
        let w = 1usize << q;
        let oracle = (0..w)
            .map(|t| rational_error(&brady_yong_rows(q, t, 0), t, 0))
            .max()
            .unwrap();
        assert_eq!(oracle, expected, "oracle w={w}");
        let measured = error_sweep(SweepAlgorithm::Dyadic, &[w]).unwrap()[0].global_max;
        assert_eq!(measured, expected, "sweep w={w}");
    }
}

#[test]
fn ortho_error_matches_rational_oracle() {
    for w in [3usize, 7, 12, 33] {
        for t in 0..w {
            let p = gdt_pattern(w, 4, t, 2).unwrap();
            assert_eq!(ortho_error(&p, t), rational_error(&p.rows, t, 2));
        }
    }
}

#[test]
fn two_by_two_families_coincide() {
    let img = GrayImage::from_vec(2, 2, vec![3, 5, 7, 11]).unwrap();
    let (gdt, _) = gdt_transform(&img).unwrap();
    let (reference, _) = ref_transform(&img).unwrap();
    assert_eq!(gdt.values(), reference.values());
    // (t, s) = (0,0) 3+5, (1,0) 3+11, (0,1) 7+11, (1,1) 7+5
    assert_eq!(gdt.values(), &[8, 14, 18, 12]);
}

// Ĵ(t̂, ŝ) summed directly over the expanded image along the expanded
// pattern, then picked out by the remapped parameters.
#[test]
fn superpixel_matches_expanded_brute_force() {
    for (w, h, spec, seed) in [
        (5, 4, (3, 3, 1), 1),
        (6, 3, (2, 5, 0), 2),
        (4, 6, (5, 1, 4), 3),
        (7, 7, (3, 2, 2), 4),
    ] {
        let spec = SuperpixelSpec::new(spec.0, spec.1, spec.2).unwrap();
        let img = random_image(w, h, 999, seed).unwrap();
        let big = expand(&img, spec).unwrap();
        let (ew, eh) = (big.width(), big.height());
        let (j, _) = sp_transform(&img, spec).unwrap();
        for t in 0..w {
            for s in 0..h {
                let p = remap_params(w, h, spec, t, s).unwrap();
                let fine = gdt_pattern(ew, eh, p.t_hat, p.s_hat).unwrap();
                let direct: u64 = (0..ew)
                    .map(|x| u64::from(big.get(x, fine.wrapped(x))))
                    .sum();
                assert_eq!(j.get(t, s), direct, "w={w} h={h} ({t}, {s})");
            }
        }
    }
}

fn unrolled_count(w: usize, h: usize, split: Split) -> u64 {
    if w == 1 {
        return 0;
    }
    let l = split.left_width(w);
    unrolled_count(l, h, split) + unrolled_count(w - l, h, split) + (w * h) as u64
}

#[test]
fn opcount_matches_unmemoized_recurrence_and_execution() {
    for split in [Split::PowerOfTwo, Split::Balanced] {
        for w in 1..=70 {
            assert_eq!(
                gdt_opcount_with(w, 3, split).additions,
                unrolled_count(w, 3, split)
            );
        }
        let img = random_image(45, 6, 10, 0).unwrap();
        let (_, ops) = gdt_transform_with(&img, split).unwrap();
        assert_eq!(ops.additions, unrolled_count(45, 6, split));
    }
    assert_eq!(unrolled_count(4, 4, Split::PowerOfTwo), 32);
    assert_eq!(unrolled_count(3, 1, Split::PowerOfTwo), 5);
}

#[test]
fn count_bound_holds() {
    let c = fht_core::dyadic::count_bound_constant();
    for split in [Split::PowerOfTwo, Split::Balanced] {
        for w in 2..=2048usize {
            let a = gdt_opcount_with(w, 1, split).additions as f64;
            assert!(a <= 1.1657 * w as f64 * (w as f64).log2(), "w={w}");
            assert!(
                a <= c * w as f64 * (w as f64).log2() * (1.0 + 1e-12),
                "w={w}"
            );
        }
    }
}

#[test]
fn balanced_split_exceeds_log_bound_somewhere() {
    let r = fht_core::analysis::error_sweep_with(SweepAlgorithm::Dyadic, &[363], Split::Balanced)
        .unwrap();
    let bound = (363f64).log2() / 6.0 + 7.0 / 12.0;
    assert!(fht_core::rational::to_f64(r[0].global_max) > bound);
}
