//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::ExitCode;
use std::time::Instant;

use qmr::channel::{
    cnot_dagger_channel, is_detection_incoherent, pre_process, random_udi_channel, KrausChannel,
    UnitaryChannel,
};
use qmr::conversion::{convert, induced_coherence};
use qmr::measurement::{
    effect_separability, is_separable_effectwise, post_process, random_povm, Povm, Separability,
};
use qmr::monotone::{coherence_oracle_check, entanglement_monotone_bracket};
use qmr::operator::{partial_trace, relative_entropy, von_neumann_entropy, Subsystem};
use qmr::random::{
    random_incoherent_povm, random_psd, random_separable, random_stochastic_map,
    random_unital_channel, random_unitary, unit_interval,
};
use qmr::rng;
use qmr::{coherence_monotone, measurement_relative_entropy, HermitianOperator};
use rand::Rng;

const H: f64 = FRAC_1_SQRT_2;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn plus_minus() -> Povm {
    Povm::new(vec![
        HermitianOperator::real_ket_bra(&[H, H]),
        HermitianOperator::real_ket_bra(&[H, -H]),
    ])
    .unwrap()
}

/// Bell projectors in the order Φ⁺, Ψ⁺, Φ⁻, Ψ⁻.
fn bell_effects() -> Vec<HermitianOperator> {
    vec![
        HermitianOperator::real_ket_bra(&[H, 0.0, 0.0, H]),
        HermitianOperator::real_ket_bra(&[0.0, H, H, 0.0]),
        HermitianOperator::real_ket_bra(&[H, 0.0, 0.0, -H]),
        HermitianOperator::real_ket_bra(&[0.0, H, -H, 0.0]),
    ]
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let pm = plus_minus();
    let cm = coherence_monotone(&pm);
    let converted = convert(&pm, &cnot_dagger_channel(2)).unwrap();
    let deviation = converted
        .effects()
        .iter()
        .zip(bell_effects())
        .map(|(a, b)| a.max_abs_diff(&b))
        .fold(0.0, f64::max);
    let em = entanglement_monotone_bracket(&converted).unwrap();
    let elapsed = start.elapsed();
    let pass = (cm - 1.0).abs() <= 1e-9
        && deviation <= 1e-9
        && em.exact
        && em.pins(1.0, 1e-9)
        && elapsed.as_secs_f64() < 1.0;
    outcome(
        pass,
        format!(
            "C_m = {cm:.12}, conversion deviates from Bell by {deviation:.1e}, E_m = [{:.12}, {:.12}] exact={}, {:.1} ms",
            em.lower,
            em.upper,
            em.exact,
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn ac2() -> Outcome {
    let bell = Povm::bipartite(bell_effects(), 2, 2).unwrap();
    let em = entanglement_monotone_bracket(&bell).unwrap();
    outcome(
        em.exact && em.pins(1.0, 1e-9),
        format!("E_m(Bell) = [{:.12}, {:.12}] exact={}", em.lower, em.upper, em.exact),
    )
}

fn lemma1_instance(rng: &mut rng::Rng) -> [f64; 6] {
    let d = [2, 3][rng.random_range(0..2)];
    let n = [2, 3, 4][rng.random_range(0..3)];
    let mut fresh = || random_povm(d, n, rng.random()).unwrap();
    let (m, nn, m2, n2) = (fresh(), fresh(), fresh(), fresh());
    let dm = |a: &Povm, b: &Povm| measurement_relative_entropy(a, b).unwrap();
    let base = dm(&m, &nn);

    // (1) nonnegative, zero on identical inputs, positive on distinct ones.
    let r1 = (-base).max(dm(&m, &m).abs()).max(if base > 1e-8 { 0.0 } else { 1.0 });

    // (2) unital pre-processing.
    let ch = random_unital_channel(rng, d, 3);
    let r2 = dm(&pre_process(&m, &ch).unwrap(), &pre_process(&nn, &ch).unwrap()) - base;

    // (3) unitary invariance.
    let u = UnitaryChannel::new(random_unitary(rng, d)).unwrap().to_kraus();
    let r3 = (dm(&pre_process(&m, &u).unwrap(), &pre_process(&nn, &u).unwrap()) - base).abs();

    // (4) post-processing.
    let rows = rng.random_range(1..=4);
    let s = random_stochastic_map(rng, rows, n);
    let r4 = dm(&post_process(&m, &s).unwrap(), &post_process(&nn, &s).unwrap()) - base;

    // (5) tensor additivity.
    let r5 = (dm(&m.tensor(&m2), &nn.tensor(&n2)) - base - dm(&m2, &n2)).abs();

    // (6) joint convexity.
    let p = unit_interval(rng);
    let mixed = dm(&m.mix(p, &m2).unwrap(), &nn.mix(p, &n2).unwrap());
    let r6 = mixed - p * base - (1.0 - p) * dm(&m2, &n2);

    [r1, r2, r3, r4, r5, r6]
}

fn ac3() -> Outcome {
    let start = Instant::now();
    let instances = 60;
    let mut worst = [f64::NEG_INFINITY; 6];
    for i in 0..instances {
        let r = lemma1_instance(&mut rng::stream(3, "acceptance-lemma1", i));
        for k in 0..6 {
            worst[k] = worst[k].max(r[k]);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst.iter().all(|&r| r <= 1e-8) && elapsed < 60.0;
    let listed: Vec<String> = worst.iter().map(|r| format!("{r:.1e}")).collect();
    outcome(
        pass,
        format!(
            "{instances} instances per property, worst residuals (1)-(6) = [{}], {elapsed:.2} s",
            listed.join(", ")
        ),
    )
}

fn ac4() -> Outcome {
    let mut failures = 0;
    let povms = 24;
    for i in 0..povms {
        let d = 2 + (i % 2) as usize;
        let n = 2 + (i % 3) as usize;
        let m = random_povm(d, n, 400 + i).unwrap();
        if !coherence_oracle_check(&m, 500, i) {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("{povms} POVMs x 500 incoherent samples, {failures} oracle violations"),
    )
}

fn ac5() -> Outcome {
    let mut count = 0;
    let mut worst: f64 = 0.0;
    let mut inexact = 0;
    for d in [2usize, 3] {
        for n in [d, d + 1, d * d] {
            for k in 0..17u64 {
                let seed = 1000 * d as u64 + 100 * n as u64 + k;
                let m = random_povm(d, n, seed).unwrap();
                let cm = coherence_monotone(&m);
                let ic = induced_coherence(&m, 4, seed).unwrap();
                let em = entanglement_monotone_bracket(&convert(&m, &cnot_dagger_channel(d)).unwrap())
                    .unwrap();
                worst = worst.max((ic - cm).abs());
                if !em.exact {
                    inexact += 1;
                }
                count += 1;
            }
        }
    }
    outcome(
        worst <= 1e-7 && inexact == 0,
        format!("{count} POVMs, max |induced - C_m| = {worst:.1e}, {inexact} inexact CNOT brackets"),
    )
}

fn ac6() -> Outcome {
    let mut count = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut min_ratio = f64::INFINITY;
    for (d, n) in [(3usize, 2usize), (4, 2), (4, 3)] {
        for k in 0..17u64 {
            let m = random_povm(d, n, 7000 + 10 * d as u64 + n as u64 * 1000 + k).unwrap();
            let cm = coherence_monotone(&m);
            let em = entanglement_monotone_bracket(&convert(&m, &cnot_dagger_channel(d)).unwrap())
                .unwrap();
            let floor = (n - 1) as f64 / d as f64 * cm;
            worst = worst.max(floor - em.lower).max(em.upper - cm);
            if cm > 0.0 {
                min_ratio = min_ratio.min(em.lower / cm);
            }
            count += 1;
        }
    }
    outcome(
        worst <= 1e-8,
        format!(
            "{count} instances, worst bound violation {worst:.1e}, smallest E_m-lower / C_m = {min_ratio:.4}"
        ),
    )
}

fn ac7() -> Outcome {
    let fixed = (2..=4).all(|d| {
        is_detection_incoherent(&KrausChannel::dephasing(d), 1e-9)
            && is_detection_incoherent(&cnot_dagger_channel(d), 1e-9)
    });
    let hadamard_fails = !is_detection_incoherent(&UnitaryChannel::hadamard().to_kraus(), 1e-9);
    let mut rng = rng::seeded(7);
    let mut worst: f64 = 0.0;
    for c in 0..100u64 {
        let d = 2 + (c % 3) as usize;
        let ch = random_udi_channel(d, c);
        for _ in 0..20 {
            let outcomes = rng.random_range(2..=4);
            let f = random_incoherent_povm(&mut rng, d, outcomes);
            for e in pre_process(&f, &ch).unwrap().effects() {
                worst = worst.max(e.max_off_diagonal());
            }
        }
    }
    outcome(
        fixed && hadamard_fails && worst <= 1e-9,
        format!(
            "dephasing and CNOT UDI: {fixed}, Hadamard rejected: {hadamard_fails}, max off-diagonal after 100 UDI x 20 POVMs = {worst:.1e}"
        ),
    )
}

fn ac8() -> Outcome {
    let mut reduction: f64 = f64::NEG_INFINITY;
    let mut conditional: f64 = f64::NEG_INFINITY;
    let pairs = 240;
    for i in 0..pairs {
        let mut rng = rng::stream(8, "acceptance-er", i);
        let db = 2 + (i % 2) as usize;
        let rank = rng.random_range(1..=2 * db);
        let x = random_psd(&mut rng, 2 * db, rank).with_split(2, db).unwrap();
        let terms = rng.random_range(1..=4);
        let y = random_separable(&mut rng, 2, db, terms);
        let y = y.scaled(x.trace() / y.trace());
        let s_x = von_neumann_entropy(&x).unwrap();
        let d_xy = relative_entropy(&x, &y).unwrap();
        for side in [Subsystem::A, Subsystem::B] {
            let xs = partial_trace(&x, side).unwrap();
            let ys = partial_trace(&y, side).unwrap();
            let s_side = von_neumann_entropy(&xs).unwrap();
            let lhs = s_side - s_x;
            reduction = reduction.max(lhs - (d_xy - relative_entropy(&xs, &ys).unwrap()));
            conditional = conditional.max(lhs - d_xy);
        }
    }
    let npt = bell_effects()
        .into_iter()
        .map(|e| effect_separability(&e.with_split(2, 2).unwrap(), 1e-10).unwrap())
        .all(|s| s == Separability::DecidedFalse);
    outcome(
        reduction <= 1e-8 && conditional <= 1e-8 && npt,
        format!(
            "{pairs} pairs, worst reduction-map excess {reduction:.1e}, worst conditional-entropy excess {conditional:.1e}, Bell effects decided-false: {npt}"
        ),
    )
}

fn ac9() -> Outcome {
    let mut rng = rng::seeded(9);
    let mut decided = 0;
    let total = 50;
    for _ in 0..total {
        let n = rng.random_range(2..=5);
        let f = random_incoherent_povm(&mut rng, 4, n);
        let f = Povm::bipartite(f.into_effects(), 2, 2).unwrap();
        if is_separable_effectwise(&f, 1e-10).unwrap() == Separability::DecidedTrue {
            decided += 1;
        }
    }
    outcome(
        decided == total,
        format!("{decided}/{total} incoherent 2x2 POVMs decided-true separable"),
    )
}

fn ac10() -> Outcome {
    let mut rng = rng::seeded(10);
    let mut zero_worst: f64 = 0.0;
    for k in 0..10 {
        let d = 2 + k % 2;
        let f = random_incoherent_povm(&mut rng, d, 2 + k % 3);
        zero_worst = zero_worst.max(induced_coherence(&f, 4, k as u64).unwrap().abs());
    }
    let mut equality_worst: f64 = 0.0;
    let mut excess = f64::NEG_INFINITY;
    for k in 0..30u64 {
        let d = 2 + (k % 2) as usize;
        let n = 2 + (k % 3) as usize;
        let m = random_povm(d, n, 10_000 + k).unwrap();
        let cm = coherence_monotone(&m);
        let ic = induced_coherence(&m, 6, k).unwrap();
        excess = excess.max(ic - cm);
        if n >= d {
            equality_worst = equality_worst.max((ic - cm).abs());
        }
    }
    let pass = zero_worst == 0.0 && equality_worst <= 1e-7 && excess <= 1e-8;
    outcome(
        pass,
        format!(
            "substituted property check (exact supremum over all UDI channels not computable): incoherent max {zero_worst:.1e}, n>=d max |ic - C_m| {equality_worst:.1e}, max ic - C_m {excess:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("worked example", ac1),
        ("Bell measurement", ac2),
        ("D_m properties", ac3),
        ("C_m closed form vs sampled minimum", ac4),
        ("CNOT equality n >= d", ac5),
        ("CNOT sandwich n < d", ac6),
        ("UDI predicates", ac7),
        ("E_R lower-bound lemmata", ac8),
        ("incoherent bipartite separability", ac9),
        ("induced coherence", ac10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("AC{:<2} {tag}  {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
