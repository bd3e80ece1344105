use gwcache_core::achievable::{baseline_lfu_um, baseline_tc, r_ub_gw, r_ub_gw_dsbs};
use gwcache_core::bounds::{r_lb, r_lb_gw_seeded};
use gwcache_core::gray_wyner::{dsbs_p1, dsbs_plane_aux, wyner_aux_dsbs};
use gwcache_core::info::{binary_entropy, binary_entropy_inv};
use gwcache_core::{AuxChannel, JointPmf2, OptimizerConfig};
use rayon::prelude::*;

use crate::args::{Curve, ALL_CURVES};
use crate::error::{CliError, CliResult};
use crate::source::Source;

pub const CSV_HEADER: &str = "M,R_lb,R_lb_gw,R_ub_gw,R_tc,R_lfu_um";

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SweepRow {
    pub m: f64,
    pub lb: Option<f64>,
    pub lb_gw: Option<f64>,
    pub ub_gw: Option<f64>,
    pub tc: Option<f64>,
    pub lfu_um: Option<f64>,
}

impl SweepRow {
    pub fn get(&self, c: Curve) -> Option<f64> {
        match c {
            Curve::Lb => self.lb,
            Curve::LbGw => self.lb_gw,
            Curve::UbGw => self.ub_gw,
            Curve::Tc => self.tc,
            Curve::LfuUm => self.lfu_um,
        }
    }
}

/// DSBS channel on the symmetric boundary at private rate `rho`; below the
/// knee the Wyner channel is used, which is at least as good there.
fn dsbs_boundary_aux(p0: f64, rho: f64) -> CliResult<AuxChannel> {
    let p1 = dsbs_p1(p0)?;
    if rho <= binary_entropy(p1)? {
        Ok(wyner_aux_dsbs(p0, p1, true)?)
    } else {
        Ok(dsbs_plane_aux(p0, binary_entropy_inv(rho.min(1.0))?)?)
    }
}

fn upper(source: &Source, m: f64, opt: &OptimizerConfig) -> CliResult<(f64, AuxChannel)> {
    match source.p0() {
        Some(p0) => {
            let u = r_ub_gw_dsbs(p0, m)?;
            Ok((u.value, dsbs_boundary_aux(p0, u.rho)?))
        }
        None => {
            let e = r_ub_gw(&source.joint, m, opt)?;
            Ok((e.value, e.witness))
        }
    }
}

fn row(source: &Source, j: &JointPmf2, m: f64, curves: &[Curve], opt: &OptimizerConfig) -> CliResult<SweepRow> {
    let want = |c| curves.contains(&c);
    let mut r = SweepRow {
        m,
        ..Default::default()
    };
    if want(Curve::Lb) {
        r.lb = Some(r_lb(j, m)?.value);
    }
    let up = if want(Curve::UbGw) || want(Curve::LbGw) {
        Some(upper(source, m, opt)?)
    } else {
        None
    };
    if want(Curve::UbGw) {
        r.ub_gw = up.as_ref().map(|u| u.0);
    }
    if want(Curve::LbGw) {
        // the upper-curve witness is a valid channel for the lower bound too
        let extra: Vec<AuxChannel> = up.into_iter().map(|u| u.1).collect();
        r.lb_gw = Some(r_lb_gw_seeded(j, m, opt, &extra)?.value);
    }
    if want(Curve::Tc) {
        r.tc = baseline_tc(j, m).ok();
    }
    if want(Curve::LfuUm) {
        r.lfu_um = Some(baseline_lfu_um(j, m)?);
    }
    Ok(r)
}

pub fn sweep(source: &Source, grid: &[f64], curves: &[Curve], opt: &OptimizerConfig) -> CliResult<Vec<SweepRow>> {
    let curves = if curves.is_empty() { &ALL_CURVES[..] } else { curves };
    let h = source.joint.joint_entropy();
    if let Some(&last) = grid.last() {
        if last > h + 1e-9 {
            return Err(CliError::Usage(format!(
                "grid stop {last} exceeds H(X1,X2) = {h}"
            )));
        }
    }
    grid.par_iter()
        .map(|&m| row(source, &source.joint, m, curves, opt))
        .collect()
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let cells = [Some(r.m), r.lb, r.lb_gw, r.ub_gw, r.tc, r.lfu_um].map(cell);
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}
