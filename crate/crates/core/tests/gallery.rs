use std::time::Instant;

use cpokit_core::gallery::{
    build_ad_family, demo_ad_quotient_step, demo_epi_mono_not_iso, demo_generator_2_vs_3, demo_two_step_closure,
    run_demo, DEMO_NAMES,
};
use cpokit_core::Error;

#[test]
fn every_demo_passes_and_is_deterministic() {
    for name in DEMO_NAMES {
        let a = run_demo(name, 64).unwrap();
        let b = run_demo(name, 64).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(a.to_string(), b.to_string());
    }
    assert!(run_demo("nope", 64).is_err());
}

#[test]
fn generator_report_values() {
    let r = demo_generator_2_vs_3();
    assert_eq!(r.get("hom_2_3.count"), Some("3"));
    assert_eq!(r.get("strong_generator.2.factorizations"), Some("3"));
    println!("{r}");
}

#[test]
fn two_step_report_values() {
    let r = demo_two_step_closure(64);
    assert_eq!(r.get("closure_stage"), Some("2"));
    assert_eq!(r.get("refuted.stage1"), Some("top"));
    let big = demo_two_step_closure(256);
    assert!(big.passed());
    assert_eq!(big.get("closure_stage"), Some("2"));
    println!("{r}");
}

#[test]
fn ad_family_sizes_and_bounds() {
    let t = Instant::now();
    let r = demo_ad_quotient_step(16, 64).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.get("pairs"), Some("120"));
    assert_eq!(r.get("pairs.finite_intersection"), Some("120"));
    assert_eq!(r.get("closure_stage"), Some("1"));
    println!("{r}\nelapsed={:?}", t.elapsed());

    for n in [2, 3, 17, 64] {
        assert!(demo_ad_quotient_step(n, 64).unwrap().passed(), "n={n}");
    }
    for n in [0, 1, 65] {
        assert!(matches!(build_ad_family(n), Err(Error::BoundTooLarge { .. })));
        assert!(demo_ad_quotient_step(n, 64).is_err());
    }
}

/// Intersections recomputed with plain integer codes far past the divergence point.
#[test]
fn ad_intersections_against_integer_codes() {
    let fam = build_ad_family(16).unwrap();
    let codes = |i: usize| -> Vec<u128> {
        let b = fam.member(i);
        (1..100).map(|len| (0..len).fold(1u128, |v, k| (v << 1) | b.bit(k) as u128)).collect()
    };
    for i in 0..16 {
        let a = codes(i);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(fam.intersection_size(i, i), None);
        for j in 0..16 {
            if i == j {
                continue;
            }
            let b = codes(j);
            let common = a.iter().filter(|c| b.contains(c)).count();
            assert_eq!(fam.intersection_size(i, j), Some(common));
            assert_eq!(fam.divergence(i, j), Some(common));
        }
    }
    let two = build_ad_family(2).unwrap();
    assert_eq!(two.intersection_size(0, 1), Some(0));
}

#[test]
fn epi_mono_report() {
    let r = demo_epi_mono_not_iso();
    assert!(r.passed(), "{r}");
    assert_eq!(r.get("factorization.mid_size"), Some("3"));
    println!("{r}");
}
