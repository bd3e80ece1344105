use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use gwcache_core::achievable::{baseline_lfu_um, baseline_tc, r_ach, r_ub_gw, r_ub_gw_dsbs, OperatingPoint};
use gwcache_core::bounds::{mi_corner_check, gap_certificate, m1, r_lb, r_lb_gw, r_lb_gw_u};
use gwcache_core::simulator::{
    exhaustive_verify_with, run_experiment, write_transcripts, Mutation, SourceSpec, DEFAULT_EXHAUSTIVE_BUDGETS,
};
use serde_json::{json, Value};

use crate::args::{ObjectiveArg, OptimizeArgs, PointArgs, SimulateArgs, SweepArgs};
use crate::error::{CliError, CliResult};
use crate::source::{load, parse_grid};
use crate::svg;
use crate::sweep::{sweep, to_csv};

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn cmd_sweep(a: &SweepArgs) -> CliResult<String> {
    let source = load(&a.source)?;
    let grid = parse_grid(&a.grid)?;
    let rows = sweep(&source, &grid, &a.curves, &a.opt.config())?;
    if let Some(path) = &a.svg {
        let title = match source.p0() {
            Some(p0) => format!("Rate-memory trade-off, DSBS p0 = {p0}"),
            None => "Rate-memory trade-off".to_string(),
        };
        write_file(path, &svg::render(&rows, &title))?;
    }
    Ok(to_csv(&rows))
}

pub fn cmd_bounds(a: &PointArgs) -> CliResult<Value> {
    let source = load(&a.source)?;
    let j = &source.joint;
    let m = a.memory;
    let lb = r_lb(j, m)?;
    let gw = r_lb_gw(j, m, &a.opt.config())?;
    let active = r_lb_gw_u(j, &gw.witness, m)?.active;
    Ok(json!({
        "command": "bounds",
        "source": source.info,
        "M": m,
        "H": j.joint_entropy(),
        "R_lb": { "value": lb.value, "active": lb.active },
        "R_lb_gw": { "value": gw.value, "active": active, "witness": gw.witness, "origin": gw.source },
    }))
}

pub fn cmd_achievable(a: &PointArgs) -> CliResult<Value> {
    let source = load(&a.source)?;
    let j = &source.joint;
    let m = a.memory;
    let ub = match source.p0() {
        Some(p0) => {
            let u = r_ub_gw_dsbs(p0, m)?;
            json!({ "value": u.value, "branch": u.branch, "r0": u.r0, "rho": u.rho })
        }
        None => {
            let e = r_ub_gw(j, m, &a.opt.config())?;
            let c = gwcache_core::gray_wyner::gw_corner(j, &e.witness)?;
            let rho = c.r1.max(c.r2);
            let branch = r_ach(&OperatingPoint { r0: c.r0, rho }, m)?.branch;
            json!({ "value": e.value, "branch": branch, "r0": c.r0, "rho": rho, "witness": e.witness, "origin": e.source })
        }
    };
    let mut out = json!({
        "command": "achievable",
        "source": source.info,
        "M": m,
        "H": j.joint_entropy(),
        "R_ub_gw": ub,
        "R_tc": baseline_tc(j, m).ok(),
        "R_lfu_um": baseline_lfu_um(j, m)?,
    });
    if let (Some(r0), Some(rho)) = (a.r0, a.rho) {
        let v = r_ach(&OperatingPoint { r0, rho }, m)?;
        out["R_ach"] = json!({ "value": v.value, "branch": v.branch, "r0": r0, "rho": rho });
    }
    Ok(out)
}

fn need_memory(a: &OptimizeArgs) -> CliResult<f64> {
    a.memory
        .ok_or_else(|| CliError::Usage("this objective needs --memory".into()))
}

pub fn cmd_optimize(a: &OptimizeArgs) -> CliResult<Value> {
    let source = load(&a.source)?;
    let j = &source.joint;
    let cfg = a.opt.config();
    let name = match a.objective {
        ObjectiveArg::M1 => "m1",
        ObjectiveArg::M1Symmetric => "m1-symmetric",
        ObjectiveArg::LbGw => "lb-gw",
        ObjectiveArg::UbGw => "ub-gw",
        ObjectiveArg::MiCorner => "mi-corner",
    };
    let mut out = json!({ "command": "optimize", "objective": name, "source": source.info });
    match a.objective {
        ObjectiveArg::M1 => {
            let r = m1(j, false, &cfg)?;
            out["value"] = json!(r.m1);
            out["report"] = serde_json::to_value(&r)?;
        }
        ObjectiveArg::M1Symmetric => {
            let g = gap_certificate(j, &cfg)?;
            out["value"] = json!(g.coincidence.m1);
            out["gap_certificate"] = json!(g.gap);
            out["half_min_conditional"] = json!(g.half_min_conditional);
            out["report"] = serde_json::to_value(&g.coincidence)?;
        }
        ObjectiveArg::LbGw => {
            let m = need_memory(a)?;
            let e = r_lb_gw(j, m, &cfg)?;
            out["value"] = json!(e.value);
            out["M"] = json!(m);
            out["report"] = serde_json::to_value(&e)?;
        }
        ObjectiveArg::UbGw => {
            let m = need_memory(a)?;
            let e = r_ub_gw(j, m, &cfg)?;
            out["value"] = json!(e.value);
            out["M"] = json!(m);
            out["report"] = serde_json::to_value(&e)?;
        }
        ObjectiveArg::MiCorner => {
            let r = mi_corner_check(j, &cfg)?;
            out["value"] = json!(r.best_excess);
            out["report"] = serde_json::to_value(&r)?;
        }
    }
    if a.traces {
        let objective = match a.objective {
            ObjectiveArg::M1 | ObjectiveArg::M1Symmetric => gwcache_core::optimizer::Objective::MaxHalfMinCond,
            ObjectiveArg::LbGw => gwcache_core::optimizer::Objective::MinRlbGw { m: need_memory(a)? },
            ObjectiveArg::UbGw => gwcache_core::optimizer::Objective::MinRubGw { m: need_memory(a)? },
            ObjectiveArg::MiCorner => gwcache_core::optimizer::Objective::MinMiCornerExcess,
        };
        let mode = match a.objective {
            ObjectiveArg::M1 => gwcache_core::optimizer::Parametrization::Markov,
            ObjectiveArg::M1Symmetric | ObjectiveArg::UbGw => gwcache_core::optimizer::Parametrization::MarkovSymmetric,
            _ => gwcache_core::optimizer::Parametrization::Free,
        };
        let r = gwcache_core::optimizer::optimize(j, objective, mode, &cfg)?;
        out["restarts"] = serde_json::to_value(&r.restarts)?;
    }
    Ok(out)
}

fn sim_source(a: &SimulateArgs) -> CliResult<SourceSpec> {
    Ok(match (a.p0, &a.shared) {
        (Some(p0), _) => SourceSpec::DsbsWyner { p0 },
        (None, Some(v)) => SourceSpec::SharedComponent { pv: v[0], p1: v[1], p2: v[2] },
        (None, None) => SourceSpec::fair_bits(),
    })
}

pub fn cmd_simulate(a: &SimulateArgs) -> CliResult<Value> {
    if let Some(n_small) = a.exhaustive {
        let budgets = match (&a.grid, a.memory) {
            (Some(g), _) => parse_grid(g)?,
            (None, Some(m)) => vec![m],
            (None, None) => DEFAULT_EXHAUSTIVE_BUDGETS.to_vec(),
        };
        let mutation = if a.mutate { Mutation::FlipCacheBit } else { Mutation::None };
        let r = exhaustive_verify_with(n_small, &budgets, mutation)?;
        let mut out = serde_json::to_value(&r)?;
        out["command"] = json!("simulate");
        out["mode"] = json!("exhaustive");
        out["budgets"] = json!(budgets);
        out["passed"] = json!(r.passed());
        return Ok(out);
    }
    let grid = match (&a.grid, a.memory) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some(m)) => vec![m],
        (None, None) => return Err(CliError::Usage("give --memory or --grid".into())),
    };
    let run = run_experiment(&sim_source(a)?, &grid, a.n, a.seed)?;
    if let Some(path) = &a.transcripts {
        let f = File::create(path).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        })?;
        write_transcripts(BufWriter::new(f), run.transcripts())?;
    }
    let mut out = serde_json::to_value(&run)?;
    out["command"] = json!("simulate");
    out["mode"] = json!("sampled");
    Ok(out)
}
