//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Oracles (dense 2x2 unitaries, Pauli algebra, closed-form heats)
//! are written out here rather than taken from the library.

use std::f64::consts::{LN_2, PI};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use landauer_mbqc::qsim::partial_trace;
use landauer_mbqc::thermo::{
    cluster_memory_trace, landauer_heat, sagawa_ueda_bound, MemoryModel, PhysicalConstants,
    BOLTZMANN_K,
};
use landauer_mbqc::verify::{
    check_decomposition, check_no_signaling, check_one_time_pad, otp_from_mbqc, KeyedPauli,
};
use landauer_mbqc::{
    build_cluster, encode_input, enumerate_trajectories, region, Builtin, ClusterLayout,
    LatticeProgram, PauliOperator, ProbabilityDistribution, RegionKind, StateVector,
};

type M2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn oracle_rz(t: f64) -> M2 {
    [
        [Complex64::from_polar(1.0, -t / 2.0), c(0.0, 0.0)],
        [c(0.0, 0.0), Complex64::from_polar(1.0, t / 2.0)],
    ]
}

fn oracle_rx(t: f64) -> M2 {
    let (s, co) = (t / 2.0).sin_cos();
    [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
}

fn apply(u: &M2, v: [Complex64; 2]) -> [Complex64; 2] {
    [
        u[0][0] * v[0] + u[0][1] * v[1],
        u[1][0] * v[0] + u[1][1] * v[1],
    ]
}

/// `|<a|b>|^2` for single-qubit vectors.
fn overlap(a: [Complex64; 2], b: &[Complex64]) -> f64 {
    (a[0].conj() * b[0] + a[1].conj() * b[1]).norm_sqr()
}

fn random_qubit(rng: &mut ChaCha8Rng) -> [Complex64; 2] {
    let theta: f64 = rng.random_range(0.0..PI);
    let phi: f64 = rng.random_range(-PI..PI);
    [
        c((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ]
}

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut min_f = f64::INFINITY;
    let mut branches = 0usize;
    let mut check = |b: Builtin, u: M2, rng: &mut ChaCha8Rng| {
        let pattern = b.pattern().unwrap();
        let v = random_qubit(rng);
        let input = StateVector::from_amplitudes(v.to_vec()).unwrap();
        let resource = encode_input(&input, pattern.layout()).unwrap();
        let target = apply(&u, v);
        for t in &enumerate_trajectories(&resource, &pattern)
            .unwrap()
            .trajectories
        {
            let mut out = t.state.clone();
            out.apply_pauli(&t.frame.to_pauli()).unwrap();
            min_f = min_f.min(overlap(target, out.amplitudes()));
            branches += 1;
        }
    };
    let identity = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    for _ in 0..20 {
        check(Builtin::WireIdentity { cols: 3 }, identity, &mut rng);
        check(Builtin::WireIdentity { cols: 4 }, identity, &mut rng);
        let (a, b, g) = (
            rng.random_range(-PI..PI),
            rng.random_range(-PI..PI),
            rng.random_range(-PI..PI),
        );
        check(
            Builtin::EulerRotation {
                alpha: a,
                beta: b,
                gamma: g,
            },
            mul(&oracle_rz(g), &mul(&oracle_rx(b), &oracle_rz(a))),
            &mut rng,
        );
    }
    Outcome {
        pass: min_f >= 1.0 - 1e-10,
        detail: format!("{branches} branches, min fidelity {min_f:.15}"),
    }
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    let mut oracle_worst = 0.0f64;
    let mut cases = 0;
    for (rows, cols) in [(1, 3), (1, 4), (2, 2), (2, 3)] {
        let layout = ClusterLayout::lattice(rows, cols).unwrap();
        for r in 1..=2usize {
            if r >= cols {
                continue;
            }
            let amps: Vec<Complex64> = (0..1 << rows)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let input =
                StateVector::from_amplitudes(amps.iter().map(|a| a / norm).collect()).unwrap();
            // tracing out C_r gives the unmeasured marginal, whatever the angles
            let bob = region(&layout, RegionKind::Trailing, r).unwrap();
            let untouched =
                partial_trace(&encode_input(&input, &layout).unwrap(), &bob.qubits).unwrap();
            for _ in 0..10 {
                let mut draw = || {
                    (0..r * rows)
                        .map(|_| rng.random_range(-PI..PI))
                        .collect::<Vec<_>>()
                };
                let (a, b) = (draw(), draw());
                let rep = check_no_signaling(&layout, &input, &a, &b, r, 1e-10).unwrap();
                worst = worst.max(rep.distance);
                let prefix = LatticeProgram::new(layout.clone(), a)
                    .unwrap()
                    .compile()
                    .unwrap();
                let rho = landauer_mbqc::verify::bob_marginal(
                    &encode_input(&input, &layout).unwrap(),
                    &prefix,
                    &bob,
                )
                .unwrap();
                oracle_worst =
                    oracle_worst.max(landauer_mbqc::trace_distance(&rho, &untouched).unwrap());
                cases += 1;
            }
        }
    }
    Outcome {
        pass: worst <= 1e-10 && oracle_worst <= 1e-10,
        detail: format!(
            "{cases} strategy pairs, max distance {worst:.3e}, max distance to unmeasured marginal {oracle_worst:.3e}"
        ),
    }
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut min_f = f64::INFINITY;
    let mut outcomes = 0;
    for (rows, cols) in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4)] {
        let layout = ClusterLayout::lattice(rows, cols).unwrap();
        for r in 1..cols {
            let angles = (0..rows * (cols - 1))
                .map(|_| rng.random_range(-PI..PI))
                .collect();
            let program = LatticeProgram::new(layout.clone(), angles).unwrap();
            let input = StateVector::random(rows, &mut rng).unwrap();
            let rep = check_decomposition(&program, &input, r, 1e-10).unwrap();
            outcomes += rep.fidelities.len();
            if rep.fidelities.len() != 1 << (rows * r) {
                return Outcome {
                    pass: false,
                    detail: format!("{rows}x{cols} r={r}: {} outcomes", rep.fidelities.len()),
                };
            }
            min_f = min_f.min(rep.min_fidelity);
        }
    }
    Outcome {
        pass: min_f >= 1.0 - 1e-10,
        detail: format!("{outcomes} outcomes, min fidelity {min_f:.15}"),
    }
}

/// Pauli from a random `(x, z)` pair; `(z << n) | x` indexes the `4^n` group.
fn pauli(n: usize, index: usize) -> PauliOperator {
    PauliOperator::from_masks(n, index & ((1 << n) - 1), index >> n)
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let wire3 = Builtin::WireIdentity { cols: 3 }.program().unwrap();
    let keys = otp_from_mbqc(&wire3, 2).unwrap();
    let uniform = keys.len() == 4 && keys.iter().all(|k| (k.probability - 0.25).abs() <= 1e-10);
    let rep = check_one_time_pad(&keys, 32, 4, 1e-10).unwrap();
    let ok = uniform
        && (rep.entropy_bits - 2.0).abs() <= 1e-9
        && rep.encryption_pass
        && rep.max_deviation <= 1e-10;
    pass &= ok;
    notes.push(format!(
        "1x3: {} keys H={:.6} dev={:.2e}",
        keys.len(),
        rep.entropy_bits,
        rep.max_deviation
    ));

    let wire2 = LatticeProgram::new(ClusterLayout::lattice(1, 2).unwrap(), vec![0.0]).unwrap();
    let rep = check_one_time_pad(&otp_from_mbqc(&wire2, 1).unwrap(), 32, 4, 1e-10).unwrap();
    let ok = (rep.entropy_bits - 1.0).abs() < 1e-9 && !rep.encryption_pass;
    pass &= ok;
    notes.push(format!(
        "1x2: H={:.6} encryption_pass={}",
        rep.entropy_bits, rep.encryption_pass
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut passing, mut violations) = (0, 0);
    for trial in 0..200 {
        let n = 1 + trial % 3;
        let group = 1usize << (2 * n);
        let keys: Vec<KeyedPauli> = match trial % 4 {
            // uniform over the whole group
            0 => (0..group)
                .map(|i| KeyedPauli {
                    probability: 1.0 / group as f64,
                    pauli: pauli(n, i),
                })
                .collect(),
            // whole group, random weights
            1 => {
                let w: Vec<f64> = (0..group).map(|_| rng.random_range(0.05..1.0)).collect();
                let s: f64 = w.iter().sum();
                (0..group)
                    .map(|i| KeyedPauli {
                        probability: w[i] / s,
                        pauli: pauli(n, i),
                    })
                    .collect()
            }
            // uniform over a random proper subset
            2 => {
                let k = rng.random_range(1..group);
                let mut idx: Vec<usize> = (0..group).collect();
                for i in 0..k {
                    let j = rng.random_range(i..group);
                    idx.swap(i, j);
                }
                idx[..k]
                    .iter()
                    .map(|&i| KeyedPauli {
                        probability: 1.0 / k as f64,
                        pauli: pauli(n, i),
                    })
                    .collect()
            }
            // uniform over the group with small perturbations
            _ => {
                let w: Vec<f64> = (0..group)
                    .map(|_| 1.0 + rng.random_range(-1e-3..1e-3))
                    .collect();
                let s: f64 = w.iter().sum();
                (0..group)
                    .map(|i| KeyedPauli {
                        probability: w[i] / s,
                        pauli: pauli(n, i),
                    })
                    .collect()
            }
        };
        let rep = check_one_time_pad(&keys, 32, trial as u64, 1e-10).unwrap();
        if rep.encryption_pass {
            passing += 1;
            if rep.entropy_bits < 2.0 * n as f64 - 1e-9 {
                violations += 1;
            }
        }
    }
    pass &= violations == 0 && passing > 0;
    notes.push(format!(
        "random families: {passing}/200 encrypt, {violations} below 2n"
    ));
    Outcome {
        pass,
        detail: notes.join("; "),
    }
}

fn criterion_5() -> Outcome {
    let si = PhysicalConstants::si();
    let kt_ln2 = BOLTZMANN_K * 300.0 * LN_2;
    let mut bad = Vec::new();
    for n in 1..=3usize {
        for m in 3..=5usize {
            let layout = ClusterLayout::lattice(n, m).unwrap();
            let pattern = LatticeProgram::new(layout, vec![0.0; n * (m - 1)])
                .unwrap()
                .compile()
                .unwrap();
            let trace = cluster_memory_trace(&pattern, 300.0, &si, true).unwrap();
            let steady = (2..m).all(|t| trace.stored_after_layer[t - 1] == 2 * n as u64);
            let bits = (n * (m - 1)) as u64;
            let heat = trace.ledger.heat_joules();
            let exact = trace.ledger.erased_bits_total() == bits
                && ((heat - bits as f64 * kt_ln2) / heat).abs() <= 1e-12;
            if !(steady && exact) {
                bad.push(format!("n={n} m={m}"));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "9 lattices, stored 2n on layers 2..m-1, heat n(m-1) kT ln2".into()
        } else {
            format!("failing: {}", bad.join(", "))
        },
    }
}

fn criterion_6() -> Outcome {
    let q = landauer_heat(1.0, 300.0, &PhysicalConstants::si()).unwrap();
    let expected = 1.380649e-23 * 300.0 * LN_2;
    let mut pass = (q - expected).abs() <= 1e-27;
    let mut worst = 0.0f64;
    for n in 1..=6 {
        let h = landauer_heat(2.0 * n as f64, 1.0, &PhysicalConstants::natural()).unwrap();
        worst = worst.max((h - 2.0 * n as f64 * LN_2).abs());
    }
    pass &= worst <= 1e-12;
    Outcome {
        pass,
        detail: format!("1 bit at 300 K = {q:.6e} J, natural-units max error {worst:.1e}"),
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let si = PhysicalConstants::si();
    let t = 300.0;
    let kt = BOLTZMANN_K * t;
    let mut worst_rel = 0.0f64;
    let mut worst_df = 0.0f64;
    for _ in 0..100 {
        let c = rng.random_range(2..17);
        let w: Vec<f64> = (0..c).map(|_| rng.random_range(0.0..1.0)).collect();
        let s: f64 = w.iter().sum();
        let p: Vec<f64> = w.iter().map(|x| x / s).collect();
        let levels: Vec<f64> = (0..rng.random_range(1..5))
            .map(|_| rng.random_range(0.0..3.0) * kt)
            .collect();
        let model = MemoryModel::symmetric(c, levels, t).unwrap();
        let b = sagawa_ueda_bound(
            &model,
            &ProbabilityDistribution::new(p.clone()).unwrap(),
            &si,
        )
        .unwrap();
        let h_nats: f64 = -p
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|x| x * x.ln())
            .sum::<f64>();
        worst_df = worst_df.max(b.delta_f.abs() / kt);
        worst_rel = worst_rel.max(((b.min_work - kt * h_nats) / (kt * h_nats)).abs());
    }
    let mut corollary = true;
    for n in 1..=2usize {
        let c = 1 << (2 * n);
        let model = MemoryModel::symmetric(c, vec![0.0], t).unwrap();
        let b =
            sagawa_ueda_bound(&model, &ProbabilityDistribution::uniform(c).unwrap(), &si).unwrap();
        let target = 2.0 * n as f64 * kt * LN_2;
        corollary &= ((b.min_work - target) / target).abs() <= 1e-12;
    }
    Outcome {
        pass: worst_df == 0.0 && worst_rel <= 1e-12 && corollary,
        detail: format!(
            "100 distributions, max |dF|/kT {worst_df:.1e}, max rel error {worst_rel:.1e}, uniform 2^(2n) corollary {}",
            if corollary { "holds" } else { "fails" }
        ),
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    let mut patterns = 0;
    let mut total = 0;
    for (rows, cols) in [
        (1, 2),
        (1, 3),
        (1, 5),
        (1, 9),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (3, 2),
        (3, 3),
        (4, 2),
        (4, 3),
    ] {
        let layout = ClusterLayout::lattice(rows, cols).unwrap();
        let resource = build_cluster(&layout).unwrap();
        for layers in 1..cols {
            let k = rows * layers;
            if k > 8 {
                continue;
            }
            let angles = (0..k).map(|_| rng.random_range(-PI..PI)).collect();
            let pattern = LatticeProgram::new(layout.clone(), angles)
                .unwrap()
                .compile()
                .unwrap();
            let e = enumerate_trajectories(&resource, &pattern).unwrap();
            if e.len() != 1 << k {
                return Outcome {
                    pass: false,
                    detail: format!("{rows}x{cols}: {} branches", e.len()),
                };
            }
            let expected = (0.5f64).powi(k as i32);
            for t in &e.trajectories {
                worst = worst.max((t.record.probability - expected).abs());
            }
            patterns += 1;
            total += e.len();
        }
    }
    Outcome {
        pass: worst <= 1e-10,
        detail: format!("{patterns} patterns, {total} branches, max deviation {worst:.1e}"),
    }
}

fn patterns_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../patterns")
}

fn criterion_9() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_landauer-mbqc");
    let dir = patterns_dir();
    let cases: Vec<Vec<String>> = vec![
        vec![
            "run".into(),
            "--pattern".into(),
            "euler_1x5.json".into(),
            "--seed".into(),
            "17".into(),
        ],
        vec![
            "enumerate".into(),
            "--pattern".into(),
            "cluster_2x3.json".into(),
        ],
        vec![
            "verify-nosignaling".into(),
            "--pattern".into(),
            "cluster_2x3.json".into(),
            "--r".into(),
            "2".into(),
            "--seed".into(),
            "9".into(),
        ],
        vec![
            "verify-otp".into(),
            "--pattern".into(),
            "wire_1x3.json".into(),
            "--seed".into(),
            "3".into(),
        ],
        vec![
            "verify-decomposition".into(),
            "--pattern".into(),
            "cluster_2x4_prefix.json".into(),
        ],
        vec![
            "thermo-report".into(),
            "--pattern".into(),
            "cluster_2x3.json".into(),
            "--seed".into(),
            "5".into(),
        ],
    ];
    let mut bad = Vec::new();
    for case in &cases {
        let args: Vec<String> = case
            .iter()
            .map(|a| {
                if a.ends_with(".json") {
                    dir.join(a).display().to_string()
                } else {
                    a.clone()
                }
            })
            .collect();
        let once = Command::new(exe)
            .args(&args)
            .env("LANDAUER_MBQC_THREADS", "1")
            .output()
            .unwrap();
        let twice = Command::new(exe).args(&args).output().unwrap();
        if once.stdout.is_empty()
            || once.stdout != twice.stdout
            || once.status.code() != twice.status.code()
        {
            bad.push(case[0].clone());
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!(
                "{} commands byte-identical across runs and thread counts",
                cases.len()
            )
        } else {
            format!("differs: {}", bad.join(", "))
        },
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("pattern correctness vs circuit oracle", criterion_1),
        ("no-signaling", criterion_2),
        ("post-measurement decomposition", criterion_3),
        ("one-time pad and entropy bound", criterion_4),
        ("cluster memory achievability", criterion_5),
        ("Landauer arithmetic", criterion_6),
        ("Sagawa-Ueda bound", criterion_7),
        ("outcome uniformity", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {} {name}: {} ({:.2}s)",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
