//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p qpath-cli --test acceptance`.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use qpath_cli::{run_scenario, Scenario, ScenarioConfig, SweepFamily};
use qpath_core::channels::{
    bit_flip, dephasing, depolarizing, eb_xz, identity as identity_channel, random_channel_with, unitary_channel,
};
use qpath_core::dtqw::{mean_displacement, run_walk};
use qpath_core::measurement::{heralded_correction_check, measure_control, ControlBasis};
use qpath_core::numerics::gates::{hadamard, identity, pauli_x, pauli_y, pauli_z};
use qpath_core::numerics::{haar_unitary_with, random_density_with, tensor, tensor_vec};
use qpath_core::supermaps::{apply_joint, plus_control, quantum_switch, spatial_superposition};
use qpath_core::vacuum::ExtensionSpec;
use qpath_core::walk_hybrid::{
    compare_two_hop, cross_term_condition, hop_channel, surviving_operator_switch, switch_equivalence,
    switch_equivalence_on_probes, two_hop_output, probe_states,
};
use qpath_core::{CoinOperator, ComplexMatrix, DensityMatrix, KrausChannel, VacuumExtendedChannel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_amplitudes(n: usize, r: &mut ChaCha8Rng) -> Vec<Complex64> {
    let raw: Vec<Complex64> = (0..n).map(|_| c(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5)).collect();
    let norm = raw.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    raw.into_iter().map(|a| a / norm).collect()
}

fn unitary_switch_equivalence() -> Outcome {
    let start = Instant::now();
    let coin = CoinOperator::pauli_x();
    let mut worst = 0.0_f64;
    for dim in 2..=4 {
        let mut r = rng(1000 + dim as u64);
        for _ in 0..100 {
            let e = VacuumExtendedChannel::uniform(unitary_channel(haar_unitary_with(dim, &mut r)).unwrap());
            let d = VacuumExtendedChannel::uniform(unitary_channel(haar_unitary_with(dim, &mut r)).unwrap());
            let carriers: Vec<_> = (0..10).map(|_| random_density_with(dim, &mut r)).collect();
            let switch = quantum_switch(e.channel(), d.channel()).unwrap();
            let rep = compare_two_hop(&e, &d, &coin, &switch, &carriers, 1e-10).unwrap();
            worst = worst.max(rep.distance);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst <= 1e-10 && secs < 10.0,
        format!("max distance {worst:.3e} over 3000 runs (≤ 1e-10), {secs:.2} s (< 10 s)"),
    )
}

fn worked_unitary_instance() -> Outcome {
    let e = VacuumExtendedChannel::uniform(unitary_channel(pauli_x()).unwrap());
    let d = VacuumExtendedChannel::uniform(unitary_channel(pauli_z()).unwrap());
    let carrier = DensityMatrix::zero();
    // (XZ ⊗ Z_control) |0⟩|+⟩ by hand: XZ|0⟩ = |1⟩ and Z|+⟩ = |−⟩.
    let psi = tensor(&(&pauli_x() * &pauli_z()), &pauli_z())
        .apply_vec(&tensor_vec(&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.5_f64.sqrt(), 0.0), c(0.5_f64.sqrt(), 0.0)]));
    let expected = ComplexMatrix::outer(&psi, &psi);
    let target = tensor(DensityMatrix::one().matrix(), DensityMatrix::minus().matrix());
    let walk = two_hop_output(&e, &d, &CoinOperator::pauli_x(), &carrier).unwrap();
    let switch = apply_joint(&quantum_switch(e.channel(), d.channel()).unwrap(), &carrier, &plus_control()).unwrap();
    let oracle_gap = expected.max_abs_diff(&target);
    let walk_gap = walk.joint().matrix().max_abs_diff(&expected);
    let switch_gap = switch.joint().matrix().max_abs_diff(&expected);
    check(
        oracle_gap <= 1e-12 && walk_gap <= 1e-12 && switch_gap <= 1e-12,
        format!("walk {walk_gap:.1e}, switch {switch_gap:.1e}, hand product vs |1⟩⟨1|⊗|−⟩⟨−| {oracle_gap:.1e} (≤ 1e-12)"),
    )
}

fn eb_heralding() -> Outcome {
    let eb = eb_xz();
    let switch = quantum_switch(&eb, &eb).unwrap();
    let corrections = [("+".to_string(), identity()), ("-".to_string(), pauli_y())];
    let mut r = rng(3);
    let (mut prob_gap, mut worst) = (0.0_f64, 0.0_f64);
    for _ in 0..20 {
        let rho = random_density_with(2, &mut r);
        let js = apply_joint(&switch, &rho, &plus_control()).unwrap();
        let outcomes = measure_control(&js, &ControlBasis::plus_minus());
        for o in &outcomes {
            prob_gap = prob_gap.max((o.probability - 0.5).abs());
        }
        worst = worst.max(heralded_correction_check(&outcomes, &rho, &corrections).unwrap().worst_case);
    }
    check(
        prob_gap <= 1e-10 && worst <= 1e-10,
        format!("max |p - 0.5| {prob_gap:.1e}, corrected worst case {worst:.1e} over 20 states (≤ 1e-10)"),
    )
}

fn cross_term_condition_criterion() -> Outcome {
    let coin = CoinOperator::pauli_x();
    let mut r = rng(4);
    let mut pairs = vec![(eb_xz(), eb_xz())];
    for dim in 2..=3 {
        for _ in 0..5 {
            pairs.push((random_channel_with(dim, 2, &mut r), random_channel_with(dim, 2, &mut r)));
        }
    }
    let (mut concentrated_ok, mut concentrated_worst) = (true, 0.0_f64);
    let (mut uniform_ok, mut uniform_min) = (true, f64::INFINITY);
    for (e, d) in &pairs {
        for k in 0..e.kraus_count() {
            for q in 0..d.kraus_count() {
                let ec = VacuumExtendedChannel::concentrated(e.clone(), k).unwrap();
                let dc = VacuumExtendedChannel::concentrated(d.clone(), q).unwrap();
                concentrated_ok &= cross_term_condition(&ec, &dc).holds;
                let reference = surviving_operator_switch(&ec, &dc).unwrap();
                let rep = compare_two_hop(&ec, &dc, &coin, &reference, &probe_states(e.dim()), 1e-9).unwrap();
                concentrated_worst = concentrated_worst.max(rep.distance);
            }
        }
        let eu = VacuumExtendedChannel::uniform(e.clone());
        let du = VacuumExtendedChannel::uniform(d.clone());
        uniform_ok &= !cross_term_condition(&eu, &du).holds;
        uniform_min = uniform_min.min(switch_equivalence_on_probes(&eu, &du, &coin, 1e-9).unwrap().distance);
    }
    check(
        concentrated_ok && concentrated_worst <= 1e-9 && uniform_ok && uniform_min > 0.01,
        format!(
            "concentrated: predicate {concentrated_ok}, max distance to surviving-operator switch {concentrated_worst:.1e} (≤ 1e-9); \
             uniform: predicate fails {uniform_ok}, min worst-probe distance {uniform_min:.3} (> 0.01)"
        ),
    )
}

fn cptp_closure() -> Outcome {
    let mut library: Vec<KrausChannel> = vec![
        identity_channel(2),
        identity_channel(3),
        eb_xz(),
        unitary_channel(pauli_x()).unwrap(),
        unitary_channel(pauli_z()).unwrap(),
        unitary_channel(hadamard()).unwrap(),
    ];
    for p in [0.0, 0.1, 0.5, 1.0] {
        library.push(depolarizing(p).unwrap());
        library.push(dephasing(p).unwrap());
        library.push(bit_flip(p).unwrap());
    }
    let mut r = rng(5);
    let random: Vec<KrausChannel> = (0..50)
        .map(|i| random_channel_with(2 + i % 3, 1 + i % 4, &mut r))
        .collect();
    let coins = [CoinOperator::pauli_x(), CoinOperator::hadamard(), CoinOperator::identity()];
    let mut worst = 0.0_f64;
    let mut maps = 0usize;
    let mut record = |ch: &KrausChannel| {
        worst = worst.max(ch.closure_residual());
        maps += 1;
    };
    let all: Vec<&KrausChannel> = library.iter().chain(random.iter()).collect();
    for e in &all {
        record(e);
    }
    for (i, e) in all.iter().enumerate() {
        // pair each channel with itself and with the next channel of equal dimension
        let partner = all[i + 1..].iter().find(|d| d.dim() == e.dim()).copied().unwrap_or(e);
        for d in [*e, partner] {
            let ee = VacuumExtendedChannel::new((*e).clone(), random_amplitudes(e.kraus_count(), &mut r)).unwrap();
            let de = VacuumExtendedChannel::new(d.clone(), random_amplitudes(d.kraus_count(), &mut r)).unwrap();
            let spatial = spatial_superposition(&ee, &de).unwrap();
            record(&spatial);
            record(&quantum_switch(e, d).unwrap());
            for coin in &coins {
                record(&hop_channel(&spatial, coin).unwrap());
            }
        }
    }
    check(worst <= 1e-10, format!("max closure residual {worst:.1e} over {maps} maps (≤ 1e-10)"))
}

fn coin_necessity() -> Outcome {
    let e = VacuumExtendedChannel::uniform(unitary_channel(pauli_x()).unwrap());
    let d = VacuumExtendedChannel::uniform(unitary_channel(pauli_z()).unwrap());
    let rep = switch_equivalence(&e, &d, &CoinOperator::identity(), &DensityMatrix::zero(), 0.01).unwrap();
    check(rep.distance > 0.01, format!("coin I distance {:.3} (> 0.01)", rep.distance))
}

/// Brute-force expansion over all 2^n coin histories; the amplitude of a
/// history is the product of coin matrix elements along it.
fn brute_force_walk(steps: usize, start: [Complex64; 2], coin: &ComplexMatrix) -> BTreeMap<i64, f64> {
    let mut amps: BTreeMap<(i64, usize), Complex64> = BTreeMap::new();
    for history in 0..(1usize << steps) {
        for (first, &a0) in start.iter().enumerate() {
            let (mut amp, mut prev, mut x) = (a0, first, 0i64);
            for k in 0..steps {
                let next = (history >> k) & 1;
                amp *= coin[(next, prev)];
                x += 1 - 2 * next as i64;
                prev = next;
            }
            *amps.entry((x, prev)).or_default() += amp;
        }
    }
    let mut out = BTreeMap::new();
    for ((x, _), a) in amps {
        *out.entry(x).or_insert(0.0) += a.norm_sqr();
    }
    out
}

fn dtqw_claims() -> Outcome {
    let h = CoinOperator::hadamard();
    let zero = [c(1.0, 0.0), c(0.0, 0.0)];
    let mut gap = 0.0_f64;
    for steps in 2..=3 {
        let oracle = brute_force_walk(steps, zero, &hadamard());
        let dist = run_walk(steps, zero, &h).unwrap();
        for x in -(steps as i64)..=steps as i64 {
            gap = gap.max((dist.probability(x) - oracle.get(&x).copied().unwrap_or(0.0)).abs());
        }
    }
    let n2 = run_walk(2, zero, &h).unwrap();
    let expected_n2 = [(-2, 0.25), (0, 0.5), (2, 0.25)];
    let n2_gap = expected_n2.iter().map(|&(x, p)| (n2.probability(x) - p).abs()).fold(0.0, f64::max);
    let oracle3 = brute_force_walk(3, zero, &hadamard());
    let oracle_mean: f64 = oracle3.iter().map(|(&x, &p)| x as f64 * p).sum();
    let mean = mean_displacement(&run_walk(3, zero, &h).unwrap());
    let mean_gap = (mean - 0.5).abs().max((oracle_mean - 0.5).abs());
    let s = 0.5_f64.sqrt();
    let balanced = [c(s, 0.0), c(0.0, s)];
    let mut asym = 0.0_f64;
    for steps in 0..=20 {
        let dist = run_walk(steps, balanced, &h).unwrap();
        for x in 0..=steps as i64 {
            asym = asym.max((dist.probability(x) - dist.probability(-x)).abs());
        }
    }
    check(
        gap <= 1e-10 && n2_gap <= 1e-10 && mean_gap <= 1e-10 && asym <= 1e-10,
        format!(
            "vs brute force {gap:.1e}, n=2 distribution {n2_gap:.1e}, n=3 mean {mean:.12} ({mean_gap:.1e}), \
             balanced asymmetry n≤20 {asym:.1e} (all ≤ 1e-10)"
        ),
    )
}

fn one_hop_blocks() -> Outcome {
    let mut r = rng(8);
    let mut worst = 0.0_f64;
    for i in 0..30 {
        let dim = 2 + i % 3;
        let (ke, kd) = (1 + i % 3, 1 + (i / 3) % 3);
        let e = random_channel_with(dim, ke, &mut r);
        let d = random_channel_with(dim, kd, &mut r);
        let ee = VacuumExtendedChannel::new(e.clone(), random_amplitudes(ke, &mut r)).unwrap();
        let de = VacuumExtendedChannel::new(d.clone(), random_amplitudes(kd, &mut r)).unwrap();
        let rho = random_density_with(dim, &mut r);
        let js = apply_joint(&spatial_superposition(&ee, &de).unwrap(), &rho, &plus_control()).unwrap();
        let b00 = js.control_block(0, 0).max_abs_diff(&e.apply(&rho).unwrap().matrix().scale_real(0.5));
        let b11 = js.control_block(1, 1).max_abs_diff(&d.apply(&rho).unwrap().matrix().scale_real(0.5));
        worst = worst.max(b00).max(b11);
    }
    check(worst <= 1e-10, format!("max block deviation {worst:.1e} over 30 random extensions (≤ 1e-10)"))
}

fn write_extension(dir: &Path, name: &str, ext: &VacuumExtendedChannel) -> std::path::PathBuf {
    let path = dir.join(format!("{name}.json"));
    let spec = ExtensionSpec::from_extension(ext, Some(name.to_string()));
    std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
    path
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut r = rng(9);
    let e = write_extension(
        dir.path(),
        "e",
        &VacuumExtendedChannel::new(random_channel_with(2, 2, &mut r), random_amplitudes(2, &mut r)).unwrap(),
    );
    let d = write_extension(dir.path(), "d", &VacuumExtendedChannel::uniform(random_channel_with(2, 3, &mut r)));
    let mut configs = Vec::new();
    for scenario in [
        Scenario::SwitchEquiv,
        Scenario::SpatialRun,
        Scenario::SwitchRun,
        Scenario::WalkHybrid,
        Scenario::EbDemo,
        Scenario::Dtqw,
        Scenario::Sweep,
    ] {
        let mut cfg = ScenarioConfig::new(scenario);
        cfg.channel_e = Some(e.clone());
        cfg.channel_d = Some(d.clone());
        cfg.seed = 42;
        cfg.trials = 10;
        configs.push(cfg);
    }
    let mut kraus_sweep = ScenarioConfig::new(Scenario::Sweep);
    kraus_sweep.family = SweepFamily::UniformKraus;
    kraus_sweep.seed = 7;
    kraus_sweep.trials = 10;
    configs.push(kraus_sweep);
    let mut mismatched = Vec::new();
    for cfg in &configs {
        let a = run_scenario(cfg).map_err(|e| e.to_string())?;
        let b = run_scenario(cfg).map_err(|e| e.to_string())?;
        if a.report.to_json() != b.report.to_json() || a.csv != b.csv {
            mismatched.push(cfg.scenario.name());
        }
    }
    check(
        mismatched.is_empty(),
        format!("{} scenario configs rerun, mismatched: {mismatched:?}", configs.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("unitary switch equivalence", unitary_switch_equivalence),
        ("worked X/Z instance", worked_unitary_instance),
        ("entanglement-breaking heralding", eb_heralding),
        ("cross-term condition", cross_term_condition_criterion),
        ("CPTP closure", cptp_closure),
        ("coin necessity", coin_necessity),
        ("discrete-time walk", dtqw_claims),
        ("one-hop diagonal blocks", one_hop_blocks),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
