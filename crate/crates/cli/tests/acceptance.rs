//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints its own PASS/FAIL line.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};

use cftent::analysis::{
    boson_half_split_sweep, boson_off_critical_sweep, fit_central_charge, ising_block_sweep, ising_off_critical_sweep,
    log_grid, off_critical_slope, renyi_exponent_fit, BlockPolicy, FitModel, Phase, ScalingDataset, ScalingPoint,
};
use cftent::cft::{
    entropy_multi_interval, entropy_periodic, entropy_single_interval, entropy_thermal, renyi_trace_single_interval,
    scaling_dimension, CentralCharge, Cutoff, IntervalSet, NonUniversalConstants,
};
use cftent::ising::{
    dense, entropy_from_spectrum, ff_entropy, ff_renyi, free_fermion, renyi_from_spectrum, BlockSpec,
    BoundaryCondition, TfiParams,
};
use cftent::replica::{stress_expectation_sheeted, transform_stress, uniformizing_map_jet, ward_identity_ratio, BranchPointPair};
use cftent_cli::InputTable;

struct Outcome {
    pass: bool,
    detail: String,
}

fn within(x: f64, target: f64, rel: f64) -> bool {
    (x - target).abs() <= rel * target.abs()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = f();
    let dt = t.elapsed();
    o.detail.push_str(&format!("; {:.2} s", dt.as_secs_f64()));
    if let Some(limit) = limit {
        if dt > limit {
            o.pass = false;
            o.detail.push_str(&format!(" exceeds {} s", limit.as_secs()));
        }
    }
    o
}

fn critical_periodic_rows() -> Vec<cftent::analysis::IsingBlockRow> {
    let p = TfiParams::new(1.0, 256, BoundaryCondition::Periodic).unwrap();
    let ells: Vec<usize> = (8..=128).collect();
    ising_block_sweep(&p, 0, &ells, &[2, 3]).unwrap()
}

fn ising_central_charge() -> Outcome {
    let rows = critical_periodic_rows();
    let ds = ScalingDataset::new(
        rows.iter().map(|r| ScalingPoint { abscissa: r.ell as f64, entropy: r.entropy }).collect(),
        Default::default(),
    )
    .unwrap();
    let fit = fit_central_charge(&ds, FitModel::BulkPeriodic { size: 256.0 }).unwrap();
    Outcome {
        pass: (0.495..=0.505).contains(&fit.c_est),
        detail: format!("c = {:.5} from {} blocks (rms {:.1e})", fit.c_est, fit.n_points, fit.rms_residual),
    }
}

fn ising_off_critical() -> Outcome {
    let xis = log_grid(10.0, 100.0, 10).unwrap();
    let dis = ising_off_critical_sweep(&xis, 400, Phase::Disordered, BlockPolicy::OpenHalf).unwrap();
    let ord = ising_off_critical_sweep(&xis, 400, Phase::Ordered, BlockPolicy::OpenHalf).unwrap();
    let window = (10.0, 100.0);
    let pooled = off_critical_slope(&[&dis, &ord], window).unwrap();
    let s_dis = off_critical_slope(&[&dis], window).unwrap();
    let s_ord = off_critical_slope(&[&ord], window).unwrap();
    Outcome {
        pass: within(pooled, 1.0 / 12.0, 0.05),
        detail: format!(
            "slope = {:.4}/12 over lambda = 1 -+ 1/xi (one-sided: disordered {:.4}/12, ordered {:.4}/12)",
            12.0 * pooled,
            12.0 * s_dis,
            12.0 * s_ord
        ),
    }
}

fn oracle_equivalence() -> Outcome {
    let (mut worst_s, mut worst_r, mut cases) = (0.0f64, 0.0f64, 0usize);
    for bc in [BoundaryCondition::Periodic, BoundaryCondition::Open] {
        for &lambda in &[0.5, 1.0, 1.5] {
            for n in 2..=12 {
                let p = TfiParams::new(lambda, n, bc).unwrap();
                let ed = dense::dense_ground_state(&p).unwrap();
                let ff = free_fermion::FreeFermionGroundState::new(&p).unwrap();
                for start in 0..n {
                    for len in 1..=(n - start).min(n - 1) {
                        let b = BlockSpec::new(start, len, n).unwrap();
                        let d = dense::reduced_density_matrix(&ed.amplitudes, n, &b).unwrap();
                        let f = free_fermion::fermion_spectrum(&ff.block_correlations(&b).unwrap()).unwrap();
                        worst_s = worst_s.max((entropy_from_spectrum(&d) - ff_entropy(&f)).abs());
                        worst_r = worst_r.max((renyi_from_spectrum(&d, 2) - ff_renyi(&f, 2)).abs());
                        cases += 1;
                    }
                }
            }
        }
    }
    Outcome {
        pass: worst_s < 1e-8 && worst_r < 1e-8,
        detail: format!("{cases} blocks, max |dS| = {worst_s:.1e}, max |dTr rho^2| = {worst_r:.1e}"),
    }
}

fn renyi_exponents() -> Outcome {
    let rows = critical_periodic_rows();
    let chords: Vec<f64> = rows.iter().map(|r| 256.0 / PI * (PI * r.ell as f64 / 256.0).sin()).collect();
    let mut pass = true;
    let mut detail = Vec::new();
    for (k, n) in [2u32, 3].into_iter().enumerate() {
        let traces: Vec<f64> = rows.iter().map(|r| r.renyi[k].1).collect();
        let e = renyi_exponent_fit(&chords, &traces).unwrap();
        let target = 0.5 / 6.0 * (n as f64 - 1.0 / n as f64);
        pass &= within(e, target, 0.05);
        detail.push(format!("n = {n}: {e:.5} vs {target:.5} ({:+.2}%)", 100.0 * (e / target - 1.0)));
    }
    Outcome { pass, detail: detail.join(", ") }
}

fn boson_central_charge() -> Outcome {
    let cft = boson_half_split_sweep(&[32, 64, 128, 256], 1e-6).unwrap();
    let c = fit_central_charge(&cft, FitModel::BoundaryOpen { size: None }).unwrap().c_est;
    let xis = log_grid(10.0, 100.0, 6).unwrap();
    let open = boson_off_critical_sweep(&xis, 2000, BoundaryCondition::Open, BlockSpec::half(2000).unwrap()).unwrap();
    let periodic =
        boson_off_critical_sweep(&xis, 2000, BoundaryCondition::Periodic, BlockSpec::new(0, 600, 2000).unwrap()).unwrap();
    let s1 = off_critical_slope(&[&open], (10.0, 100.0)).unwrap();
    let s2 = off_critical_slope(&[&periodic], (10.0, 100.0)).unwrap();
    let ratio = s2 / s1;
    Outcome {
        pass: (0.98..=1.02).contains(&c) && within(s1, 1.0 / 6.0, 0.05) && within(s2, 1.0 / 3.0, 0.05) && within(ratio, 2.0, 0.03),
        detail: format!(
            "c = {c:.4}; slope(A=1) = {:.4}/6, slope(A=2) = {:.4}/3, ratio {ratio:.4}",
            6.0 * s1,
            3.0 * s2
        ),
    }
}

fn formula_identities() -> Outcome {
    let a = Cutoff::LATTICE;
    let c = CentralCharge::new(0.8).unwrap();
    let k = NonUniversalConstants::new().with_bulk(0.2);
    let mut checks: Vec<(&str, f64, f64)> = Vec::new();

    let single = entropy_single_interval(40.0, a, c, &k).unwrap();
    checks.push(("zero-temperature limit", (entropy_thermal(40.0, 1e7, a, c, &k).unwrap() - single).abs(), 1e-9));

    let beta = 2.0;
    let d = (entropy_thermal(400.0, beta, a, c, &k).unwrap() - entropy_thermal(300.0, beta, a, c, &k).unwrap()) / 100.0;
    checks.push(("extensive coefficient", (d - PI * 0.8 / 3.0 / beta).abs(), 1e-9));

    let sym = (2..99)
        .map(|l| {
            let l = l as f64;
            (entropy_periodic(l, 100.0, a, c, &k).unwrap() - entropy_periodic(100.0 - l, 100.0, a, c, &k).unwrap()).abs()
        })
        .fold(0.0, f64::max);
    checks.push(("periodic complement symmetry", sym, 1e-12));

    let one = entropy_multi_interval(&IntervalSet::single(3.0, 43.0).unwrap(), a, c, &k).unwrap();
    checks.push(("multi-interval N=1", (one - single).abs(), 1e-12));

    let two = entropy_multi_interval(&IntervalSet::new(vec![(0.0, 40.0), (1e9, 1e9 + 40.0)]).unwrap(), a, c, &k).unwrap();
    checks.push(("far separation", (two - 2.0 * single).abs(), 1e-4));

    let cn = NonUniversalConstants::new();
    let h = 1e-5;
    let tr = |n: f64| cftent::cft::renyi_power_law(n, 40.0, a, c).unwrap();
    let deriv = -(tr(1.0 + h) - tr(1.0 - h)) / (2.0 * h);
    checks.push(("replica derivative", (deriv - entropy_single_interval(40.0, a, c, &cn).unwrap()).abs(), 1e-6));
    checks.push(("Tr rho at n=1", (renyi_trace_single_interval(1, 40.0, a, c, &cn).unwrap() - 1.0).abs(), 1e-15));

    let failed: Vec<String> = checks.iter().filter(|(_, e, tol)| e > tol).map(|(n, e, _)| format!("{n} ({e:.1e})")).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} identities hold", checks.len())
        } else {
            format!("violated: {}", failed.join(", "))
        },
    }
}

fn ward_triple() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20260);
    let (mut worst, mut worst_n1, mut count) = (0.0f64, 0.0f64, 0usize);
    for &n in &[1u32, 2, 3, 5] {
        for &cv in &[0.5, 1.0] {
            let c = CentralCharge::new(cv).unwrap();
            let delta = scaling_dimension(n as f64, c).unwrap();
            let mut done = 0;
            while done < 1000 {
                let u: f64 = rng.random_range(-3.0..1.0);
                let v = u + rng.random_range(0.1..4.0);
                let w = Complex64::new(rng.random_range(-6.0..6.0), rng.random_range(-6.0..6.0));
                if (w - u).norm() < 1e-3 || (w - v).norm() < 1e-3 {
                    continue;
                }
                let bp = BranchPointPair::new(u, v, n).unwrap();
                let closed = stress_expectation_sheeted(w, &bp, c).unwrap();
                let mapped = transform_stress(&uniformizing_map_jet(w, &bp).unwrap(), Complex64::new(0.0, 0.0), c).unwrap();
                let ward = ward_identity_ratio(w, &bp, delta).unwrap();
                if n == 1 {
                    worst_n1 = worst_n1.max(closed.norm()).max(mapped.norm()).max(ward.norm());
                } else {
                    let scale = closed.norm();
                    worst = worst
                        .max((closed - mapped).norm() / scale)
                        .max((closed - ward).norm() / scale)
                        .max((mapped - ward).norm() / scale);
                }
                done += 1;
                count += 1;
            }
        }
    }
    Outcome {
        pass: worst < 1e-10 && worst_n1 < 1e-12,
        detail: format!("{count} points, max relative gap {worst:.1e}, max |T| at n=1 {worst_n1:.1e}"),
    }
}

fn figure_shape() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_cftent"))
        .args(["figure", "--sites", "400", "--lambda", "0:2:201"])
        .output()
        .expect("run cftent figure");
    if !out.status.success() {
        return Outcome { pass: false, detail: format!("cftent figure exited with {}", out.status) };
    }
    let table = InputTable::parse(&String::from_utf8_lossy(&out.stdout)).unwrap();
    let lambda = table.floats("lambda").unwrap();
    let s = table.floats("entropy").unwrap();
    let argmax = (0..s.len()).fold(0, |b, i| if s[i] > s[b] { i } else { b });
    let nearest = (0..lambda.len())
        .min_by(|&i, &j| (lambda[i] - 1.0).abs().total_cmp(&(lambda[j] - 1.0).abs()))
        .unwrap();
    let rising = s[..=argmax].windows(2).all(|w| w[1] > w[0]);
    let falling = s[argmax..].windows(2).all(|w| w[1] < w[0]);
    Outcome {
        pass: s[0] < 1e-6 && argmax == nearest && rising && falling,
        detail: format!(
            "{} points, S(0) = {:.1e}, peak at lambda = {} (S = {:.4}), monotone flanks: {}",
            s.len(),
            s[0],
            lambda[argmax],
            s[argmax],
            rising && falling
        ),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Option<u64>, fn() -> Outcome)> = vec![
        ("Ising central charge", Some(30), ising_central_charge),
        ("Ising off-critical slope", Some(120), ising_off_critical),
        ("Oracle equivalence", Some(300), oracle_equivalence),
        ("Renyi exponents", None, renyi_exponents),
        ("Boson central charge and slopes", None, boson_central_charge),
        ("Formula identities", Some(5), formula_identities),
        ("Ward identity triple agreement", Some(1), ward_triple),
        ("Figure shape", None, figure_shape),
    ];
    let mut failures = 0;
    for (name, limit, f) in criteria {
        let o = timed(limit.map(Duration::from_secs), f);
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failures += usize::from(!o.pass);
    }
    println!("acceptance: {} failed", failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
