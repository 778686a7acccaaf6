use proptest::prelude::*;

use qmr::channel::{cnot_dagger_channel, pre_process, random_udi_channel};
use qmr::conversion::{ancilla_incoherent_povm, convert};
use qmr::measurement::{is_incoherent, post_process, random_povm, StochasticMap};
use qmr::monotone::effect_brackets;
use qmr::operator::{partial_trace, tensor, Subsystem};
use qmr::random::{random_density, random_incoherent_povm};
use qmr::rng;
use qmr::{coherence_monotone, entanglement_monotone_bracket, measurement_relative_entropy};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cm_is_bounded_by_log_dim(seed in any::<u64>(), d in 2usize..=4, n in 1usize..=5) {
        let m = random_povm(d, n, seed).unwrap();
        let cm = coherence_monotone(&m);
        prop_assert!(cm >= 0.0);
        prop_assert!(cm <= (d as f64).log2() + 1e-9);
    }

    #[test]
    fn dm_self_is_zero(seed in any::<u64>(), d in 1usize..=4, n in 1usize..=4) {
        let m = random_povm(d, n, seed).unwrap();
        prop_assert!(measurement_relative_entropy(&m, &m).unwrap().abs() < 1e-10);
    }

    #[test]
    fn dephased_povm_is_incoherent_with_zero_cm(seed in any::<u64>(), d in 2usize..=4, n in 2usize..=4) {
        let f = random_povm(d, n, seed).unwrap().dephased();
        prop_assert!(is_incoherent(&f, 1e-12));
        prop_assert!(coherence_monotone(&f) <= 1e-12);
    }

    #[test]
    fn merging_outcomes_never_adds_coherence(seed in any::<u64>(), d in 2usize..=3, n in 2usize..=5) {
        let m = random_povm(d, n, seed).unwrap();
        let merged = post_process(&m, &StochasticMap::merge(n)).unwrap();
        prop_assert_eq!(merged.outcomes(), 1);
        prop_assert!(coherence_monotone(&merged) <= coherence_monotone(&m) + 1e-9);
    }

    #[test]
    fn udi_pre_processing_never_adds_coherence(seed in any::<u64>(), d in 2usize..=4, n in 2usize..=4) {
        let m = random_povm(d, n, seed).unwrap();
        let out = pre_process(&m, &random_udi_channel(d, seed ^ 0x5eed)).unwrap();
        prop_assert!(coherence_monotone(&out) <= coherence_monotone(&m) + 1e-8);
    }

    #[test]
    fn partial_traces_of_products(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let mut r = rng::seeded(seed);
        let a = random_density(&mut r, da);
        let b = random_density(&mut r, db);
        let ab = tensor(&a, &b);
        prop_assert!(partial_trace(&ab, Subsystem::A).unwrap().max_abs_diff(&a) < 1e-12);
        prop_assert!(partial_trace(&ab, Subsystem::B).unwrap().max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn ancilla_is_incoherent(d in 1usize..=5, n in 1usize..=8) {
        let e = ancilla_incoherent_povm(d, n);
        prop_assert_eq!(e.outcomes(), n);
        prop_assert!(is_incoherent(&e, 0.0));
    }

    #[test]
    fn cnot_conversion_has_maximally_correlated_support(seed in any::<u64>(), d in 2usize..=3, extra in 0usize..=2) {
        let n = d + extra;
        let m = random_povm(d, n, seed).unwrap();
        let out = convert(&m, &cnot_dagger_channel(d)).unwrap();
        for x in 0..n {
            for y in 0..d {
                let e = out.effect(x * n + y).entries();
                for r in 0..d * d {
                    for c in 0..d * d {
                        let (ia, ib) = (r / d, r % d);
                        let (ja, jb) = (c / d, c % d);
                        let on_pattern = (ib + d - ia) % d == y && (jb + d - ja) % d == y;
                        if !on_pattern {
                            prop_assert!(e[(r, c)].norm() < 1e-14);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn incoherent_input_gives_zero_em(seed in any::<u64>(), d in 2usize..=3, n in 2usize..=4) {
        let mut r = rng::seeded(seed);
        let f = random_incoherent_povm(&mut r, d, n);
        let out = convert(&f, &random_udi_channel(d * d, seed)).unwrap();
        let em = entanglement_monotone_bracket(&out).unwrap();
        prop_assert!(em.exact && em.pins(0.0, 1e-12));
    }

    #[test]
    fn shift_relabel_symmetry(seed in any::<u64>(), d in 2usize..=3) {
        let m = random_povm(d, d, seed).unwrap();
        let brackets = effect_brackets(&convert(&m, &cnot_dagger_channel(d)).unwrap()).unwrap();
        for x in 0..d {
            let first = brackets[x * d];
            for b in &brackets[x * d..x * d + d] {
                prop_assert!((b.lower - first.lower).abs() < 1e-9);
                prop_assert!((b.upper - first.upper).abs() < 1e-9);
            }
        }
    }
}
