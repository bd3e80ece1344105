//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use gwcache_cli::args::SourceArgs;
use gwcache_cli::source::load;
use gwcache_cli::sweep::sweep;
use gwcache_core::achievable::{r_ach, symmetric_equality_check, OperatingPoint};
use gwcache_core::bounds::{gap_certificate, m1, r_lb, r_lb_gw_u};
use gwcache_core::gray_wyner::{dsbs_p1, dsbs_r0_boundary, gw_corner, latent_model, wyner_aux_dsbs};
use gwcache_core::info::{binary_entropy, binary_entropy_inv};
use gwcache_core::simulator::{exhaustive_verify, run_experiment, SourceSpec};
use gwcache_core::{AuxChannel, JointPmf2, OptimizerConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(bool, String), String>;

fn h(p: f64) -> f64 {
    binary_entropy(p).unwrap()
}

fn within(x: f64, lo: f64, hi: f64) -> bool {
    (lo..=hi).contains(&x)
}

fn random_simplex(rng: &mut ChaCha8Rng, n: usize, sparse: bool) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|_| if sparse && rng.random::<f64>() < 0.2 { 0.0 } else { -rng.random::<f64>().max(1e-300).ln() })
        .collect();
    if v.iter().all(|x| *x == 0.0) {
        v[0] = 1.0;
    }
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

fn c1_coincidence_numbers() -> Check {
    let start = Instant::now();
    let j = JointPmf2::dsbs(0.2).map_err(|e| e.to_string())?;
    let g = gap_certificate(&j, &OptimizerConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let m1 = g.coincidence.m1;
    let upper = j.joint_entropy() - 2.0 * m1;
    let half = 0.5 * j.measures().h1_given_2;
    let ok = within(m1, 0.250, 0.258)
        && within(upper, 1.205, 1.222)
        && within(g.gap, 0.103, 0.110)
        && within(half, 0.360, 0.362)
        && elapsed < Duration::from_secs(60);
    Ok((
        ok,
        format!(
            "M~1={m1:.6} H-2M~1={upper:.6} gap={:.6} H(X1|X2)/2={half:.6} in {:.1}s",
            g.gap,
            elapsed.as_secs_f64()
        ),
    ))
}

fn c2_sweep_shape() -> Check {
    let source = load(&SourceArgs { p0: Some(0.2), pmf: None }).map_err(|e| e.to_string())?;
    let grid: Vec<f64> = (0..=172).map(|k| k as f64 / 100.0).collect();
    let cfg = OptimizerConfig::default().with_restarts(8);
    let rows = sweep(&source, &grid, &[], &cfg).map_err(|e| e.to_string())?;
    let mut order_bad = 0;
    let mut eq_worst: f64 = 0.0;
    let mut mid_gap: f64 = 0.0;
    for r in &rows {
        let (lb, lbgw, ub) = (r.lb.unwrap(), r.lb_gw.unwrap(), r.ub_gw.unwrap());
        let cap = r.tc.unwrap().min(r.lfu_um.unwrap());
        if !(lb <= lbgw + 1e-9 && lbgw <= ub + 1e-9 && ub <= cap + 1e-9) {
            order_bad += 1;
        }
        if r.m <= 0.254 || r.m >= 1.214 {
            eq_worst = eq_worst.max((ub - lb).abs());
        } else {
            mid_gap = mid_gap.max(ub - lb);
        }
    }
    let ok = rows.len() == 173 && order_bad == 0 && eq_worst <= 1e-6 && mid_gap <= 0.107 + 1e-6;
    Ok((
        ok,
        format!(
            "{} rows, ordering violations {order_bad}, max |ub-lb| on coincidence range {eq_worst:.2e}, max middle gap {mid_gap:.6}",
            rows.len()
        ),
    ))
}

fn c3_equality_property() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    let mut nonqualifying = 0;
    let mut check = |j: &JointPmf2, a: &AuxChannel| -> Result<(), String> {
        let top = j.joint_entropy() + 0.25;
        let grid: Vec<f64> = (0..200).map(|k| k as f64 * top / 199.0).collect();
        let r = symmetric_equality_check(j, a, &grid).map_err(|e| e.to_string())?;
        if !r.qualifying {
            nonqualifying += 1;
        }
        worst = worst.max(r.gap);
        cases += 1;
        Ok(())
    };
    for _ in 0..20 {
        let nu = rng.random_range(2..=4);
        let pu = random_simplex(&mut rng, nu, false);
        let cond: Vec<Vec<f64>> = (0..nu).map(|_| random_simplex(&mut rng, 2, false)).collect();
        let (j, a) = latent_model(&pu, &cond, &cond).map_err(|e| e.to_string())?;
        check(&j, &a)?;
    }
    for k in 1..=10 {
        let p0 = 0.05 * k as f64;
        let j = JointPmf2::dsbs(p0).map_err(|e| e.to_string())?;
        let a = wyner_aux_dsbs(p0, dsbs_p1(p0).map_err(|e| e.to_string())?, true).map_err(|e| e.to_string())?;
        check(&j, &a)?;
    }
    Ok((
        worst <= 1e-9 && nonqualifying == 0,
        format!("{cases} channels, sup gap {worst:.2e}, non-qualifying {nonqualifying}"),
    ))
}

fn c4_structural_suite() -> Check {
    const TOL: f64 = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for case in 0..200 {
        let n1 = rng.random_range(1..=4);
        let n2 = rng.random_range(1..=4);
        let j = JointPmf2::new(n1, n2, random_simplex(&mut rng, n1 * n2, true)).map_err(|e| e.to_string())?;
        let nu = rng.random_range(1..=6);
        let cols: Vec<Vec<f64>> = (0..n1 * n2).map(|_| random_simplex(&mut rng, nu, true)).collect();
        let a = AuxChannel::from_columns(nu, &cols).map_err(|e| e.to_string())?;
        let hj = j.joint_entropy();
        let s = gw_corner(&j, &a).map_err(|e| e.to_string())?.sum();
        let top = s.max(hj) + 0.5;
        let grid: Vec<f64> = (0..=80).map(|k| k as f64 * top / 80.0).collect();
        let lb: Vec<f64> = grid.iter().map(|&m| r_lb(&j, m).unwrap().value).collect();
        let gw: Vec<f64> = grid.iter().map(|&m| r_lb_gw_u(&j, &a, m).unwrap().value).collect();
        let mut fail = |what: &str| failures.push(format!("case {case}: {what}"));
        if (lb[0] - hj).abs() > TOL {
            fail("r_lb(0) != H");
        }
        if gw[0] < hj - TOL {
            fail("r_lb_gw_u(0) < H");
        }
        if r_lb(&j, hj).unwrap().value.abs() > TOL || r_lb_gw_u(&j, &a, s).unwrap().value.abs() > TOL {
            fail("not clamped to 0 at full memory");
        }
        for k in 0..grid.len() {
            if lb[k] < -TOL || gw[k] < -TOL {
                fail("negative rate");
            }
            if lb[k] > gw[k] + TOL {
                fail("r_lb > r_lb_gw_u");
            }
            if k + 1 < grid.len() && (lb[k + 1] > lb[k] + TOL || gw[k + 1] > gw[k] + TOL) {
                fail("not nonincreasing");
            }
            if k >= 1 && k + 1 < grid.len() {
                let mid = |v: &[f64]| v[k] > 0.5 * (v[k - 1] + v[k + 1]) + TOL;
                if mid(&lb) || mid(&gw) {
                    fail("not convex");
                }
            }
        }
    }
    Ok((
        failures.is_empty(),
        format!("200 pmfs, {} violations{}", failures.len(), failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()),
    ))
}

fn c5_closed_forms() -> Check {
    let err = |e: gwcache_core::Error| e.to_string();
    let mut knee: f64 = 0.0;
    for k in 1..=50 {
        let p0 = 0.01 * k as f64;
        let hp1 = h(dsbs_p1(p0).map_err(err)?);
        let f = dsbs_r0_boundary(hp1, p0).map_err(err)?;
        knee = knee.max((f - (1.0 + h(p0) - 2.0 * hp1)).abs());
    }
    let f1 = dsbs_r0_boundary(1.0, 0.2).map_err(err)?;
    let info = JointPmf2::dsbs(0.2).map_err(err)?.measures().mutual_info;
    let f1_err = (f1 - info).abs();
    let mut inv: f64 = 0.0;
    for k in 0..1000 {
        let p = k as f64 / 1998.0;
        inv = inv.max((binary_entropy_inv(h(p)).map_err(err)? - p).abs());
    }
    Ok((
        knee <= 1e-9 && f1_err <= 1e-9 && inv <= 1e-9,
        format!(
            "knee continuity max err {knee:.2e}; f(1)={f1:.6} vs I(X1;X2)={info:.6} (err {f1_err:.2e}); h^-1 round trip max err {inv:.2e}"
        ),
    ))
}

fn c6_losslessness() -> Check {
    let start = Instant::now();
    let r = exhaustive_verify(4, &[0.0, 0.5, 1.0, 1.5, 2.0]).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    Ok((
        r.passed() && r.realizations == 4096 && r.deliveries == 4096 * 5 * 4 && elapsed < Duration::from_secs(60),
        format!(
            "{} realizations, {} deliveries, counterexample {:?}, {:.1}s",
            r.realizations,
            r.deliveries,
            r.counterexample,
            elapsed.as_secs_f64()
        ),
    ))
}

fn c7_rate_fidelity() -> Check {
    let err = |e: gwcache_core::Error| e.to_string();
    let n = 100_000;
    let grid: Vec<f64> = (0..13).map(|k| 0.25 * k as f64).collect();
    let fair = run_experiment(&SourceSpec::fair_bits(), &grid, n, 1).map_err(err)?;
    let mut fair_dev: f64 = 0.0;
    for p in &fair.points {
        let target = r_ach(&OperatingPoint { r0: 1.0, rho: 1.0 }, p.m).map_err(err)?.value;
        fair_dev = fair_dev.max((p.peak_rate - target).abs());
    }
    let dsbs = run_experiment(&SourceSpec::DsbsWyner { p0: 0.2 }, &[0.8], n, 1).map_err(err)?;
    let p = &dsbs.points[0];
    let target = r_ach(&OperatingPoint { r0: dsbs.rates.r0, rho: dsbs.rates.rho }, 0.8).map_err(err)?.value;
    let dsbs_dev = (p.peak_rate - target).abs();
    let ok = fair.all_decoded && dsbs.all_decoded && fair_dev <= 2.0 / n as f64 + 1e-12 && dsbs_dev <= 0.01;
    Ok((
        ok,
        format!(
            "fair bits: 13 points, max dev {fair_dev:.2e}, decoded {}; DSBS: rho={:.5}, peak {:.5} vs {target:.5}, decoded {}",
            fair.all_decoded, dsbs.rates.rho, p.peak_rate, dsbs.all_decoded
        ),
    ))
}

fn c8_optimizer_sanity() -> Check {
    let err = |e: gwcache_core::Error| e.to_string();
    let cfg = OptimizerConfig::default();
    let mut worst_floor = f64::INFINITY;
    let mut parts = Vec::new();
    for p0 in [0.1, 0.2, 0.3, 0.4] {
        let j = JointPmf2::dsbs(p0).map_err(err)?;
        let r = m1(&j, true, &cfg).map_err(err)?;
        let floor = 0.5 * h(dsbs_p1(p0).map_err(err)?);
        worst_floor = worst_floor.min(r.m1 - floor);
        parts.push(format!("{p0}:{:.6}", r.m1));
    }
    let indep = JointPmf2::independent(&[0.5, 0.5], &[0.5, 0.5]).map_err(err)?;
    let mi = m1(&indep, false, &cfg).map_err(err)?.m1;
    let same = JointPmf2::new(2, 2, vec![0.5, 0.0, 0.0, 0.5]).map_err(err)?;
    let ms = m1(&same, false, &cfg).map_err(err)?.m1;
    let ok = worst_floor >= -1e-6 && (mi - 0.5).abs() <= 1e-6 && ms <= 1e-6;
    Ok((
        ok,
        format!(
            "M~1 by p0 [{}], min margin over h(p1)/2 {worst_floor:.2e}; independent M1={mi:.8}; X1=X2 M1={ms:.2e}",
            parts.join(", ")
        ),
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("DSBS coincidence numbers", c1_coincidence_numbers),
        ("rate-memory sweep shape", c2_sweep_shape),
        ("achievable equals GW lower bound for symmetric Markov channels", c3_equality_property),
        ("lower-bound structural suite", c4_structural_suite),
        ("Gray-Wyner closed forms", c5_closed_forms),
        ("simulator losslessness", c6_losslessness),
        ("simulator rate fidelity", c7_rate_fidelity),
        ("optimizer sanity", c8_optimizer_sanity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name}: {detail} [{:.1}s]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
