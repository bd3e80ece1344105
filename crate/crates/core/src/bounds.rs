//! Lower bounds on the peak rate-memory function and where they coincide.

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::gray_wyner::{gw_corner, AuxChannel, RateTriplet};
use crate::info::{Bits, JointPmf2};
use crate::optimizer::{optimize, Objective, OptimizerConfig, Parametrization};

/// Tolerance below which two constraint values count as a tie.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateMemoryPoint {
    pub m: Bits,
    pub r: Bits,
}

/// Value of a max-of-linear-forms bound and the index of the constraint
/// that attains it (`0` when every form is negative and the clamp is
/// active; ties go to the smallest index).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub value: Bits,
    pub active: usize,
}

fn max_of(forms: &[f64]) -> BoundValue {
    let top = forms.iter().copied().fold(0.0_f64, f64::max);
    if top <= 0.0 {
        return BoundValue {
            value: 0.0,
            active: 0,
        };
    }
    let active = forms.iter().position(|f| *f >= top - TIE_TOL).unwrap() + 1;
    BoundValue { value: top, active }
}

pub(crate) fn check_memory(m: Bits) -> Result<()> {
    if !(m >= 0.0) || !m.is_finite() {
        return Err(out_of_range("M", m, "[0, inf)"));
    }
    Ok(())
}

/// Lower bound on the optimal peak rate:
/// `max(H - 2M, (H - M)/2, (H + max(H1, H2))/2 - M)`, clamped at 0.
pub fn r_lb(j: &JointPmf2, m: Bits) -> Result<BoundValue> {
    check_memory(m)?;
    let s = j.measures();
    Ok(r_lb_from(s.h12, s.h1.max(s.h2), m))
}

pub(crate) fn r_lb_from(h12: f64, hmax: f64, m: f64) -> BoundValue {
    max_of(&[h12 - 2.0 * m, 0.5 * (h12 - m), 0.5 * (h12 + hmax) - m])
}

/// GW-class lower bound for a fixed auxiliary, from its corner `(i, h1, h2)`.
pub(crate) fn r_lb_gw_u_corner(c: &RateTriplet, m: Bits) -> BoundValue {
    let s = c.sum();
    max_of(&[
        s - 2.0 * m,
        0.5 * (s - m),
        c.r0 + c.r1 + 0.5 * c.r2 - m,
        c.r0 + 0.5 * c.r1 + c.r2 - m,
    ])
}

/// Lower bound on the GW-CACM peak `U`-rate-memory function.
pub fn r_lb_gw_u(j: &JointPmf2, a: &AuxChannel, m: Bits) -> Result<BoundValue> {
    check_memory(m)?;
    Ok(r_lb_gw_u_corner(&gw_corner(j, a)?, m))
}

/// Optimizer-backed estimate with the channel that attains it.
#[derive(Debug, Clone, Serialize)]
pub struct Estimate {
    pub value: Bits,
    pub witness: AuxChannel,
    pub source: String,
}

/// Upper estimate of `inf_U r_lb_gw_u(j, U, m)`.
pub fn r_lb_gw(j: &JointPmf2, m: Bits, opt: &OptimizerConfig) -> Result<Estimate> {
    r_lb_gw_seeded(j, m, opt, &[])
}

/// Like [`r_lb_gw`], also evaluating caller-supplied channels.
pub fn r_lb_gw_seeded(
    j: &JointPmf2,
    m: Bits,
    opt: &OptimizerConfig,
    extra: &[AuxChannel],
) -> Result<Estimate> {
    check_memory(m)?;
    let r = optimize(j, Objective::MinRlbGw { m }, Parametrization::Free, opt)?;
    let mut best = Estimate {
        value: r.value,
        witness: r.witness,
        source: r.source,
    };
    for (k, a) in extra.iter().enumerate() {
        let v = r_lb_gw_u(j, a, m)?.value;
        if v < best.value {
            best = Estimate {
                value: v,
                witness: a.clone(),
                source: format!("extra:{k}"),
            };
        }
    }
    Ok(best)
}

/// Memory intervals on which the GW-class and general lower bounds meet.
#[derive(Debug, Clone, Serialize)]
pub struct CoincidenceReport {
    pub m1: Bits,
    /// `[0, M1]` and `[H - 2 M1, H]`.
    pub intervals: Vec<[Bits; 2]>,
    pub witness: AuxChannel,
    pub symmetric: bool,
    pub joint_entropy: Bits,
    /// Best value among the analytic seeds.
    pub seed_value: Option<Bits>,
    /// Set when a numerical restart beat every analytic seed.
    pub improved_over_seeds: bool,
}

/// `M1 = max ½ min(H(X1|U), H(X2|U))` over `X1 - U - X2`; with
/// `symmetric`, additionally `p(x1|u) = p(x2|u)`.
pub fn m1(j: &JointPmf2, symmetric: bool, opt: &OptimizerConfig) -> Result<CoincidenceReport> {
    if symmetric && j.n1() != j.n2() {
        return Err(Error::Dimension(format!(
            "the symmetric variant needs equal alphabets, got {}x{}",
            j.n1(),
            j.n2()
        )));
    }
    let mode = if symmetric {
        Parametrization::MarkovSymmetric
    } else {
        Parametrization::Markov
    };
    let r = optimize(j, Objective::MaxHalfMinCond, mode, opt)?;
    let h = j.joint_entropy();
    let m1 = r.value.max(0.0);
    Ok(CoincidenceReport {
        m1,
        intervals: vec![[0.0, m1], [(h - 2.0 * m1).max(0.0), h]],
        witness: r.witness,
        symmetric,
        joint_entropy: h,
        seed_value: r.best_seed_value,
        improved_over_seeds: r.source.starts_with("restart")
            && r.best_seed_value.is_none_or(|s| r.value > s + 1e-12),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ternary {
    Yes,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct MiCornerReport {
    pub holds: Ternary,
    /// `(I(X1;X2), H(X1|X2), H(X2|X1))`.
    pub target: RateTriplet,
    /// Smallest componentwise excess found.
    pub best_excess: Bits,
    pub witness: AuxChannel,
}

/// Looks for a channel whose corner is dominated by
/// `(I(X1;X2), H(X1|X2), H(X2|X1))`. A miss is inconclusive.
pub fn mi_corner_check(j: &JointPmf2, opt: &OptimizerConfig) -> Result<MiCornerReport> {
    const TOL: f64 = 1e-9;
    let s = j.measures();
    let target = RateTriplet::new(s.mutual_info, s.h1_given_2, s.h2_given_1);
    let r = optimize(j, Objective::MinMiCornerExcess, Parametrization::Free, opt)?;
    let corner = gw_corner(j, &r.witness)?;
    let holds = if target.dominates(&corner, TOL) {
        Ternary::Yes
    } else {
        Ternary::Unknown
    };
    Ok(MiCornerReport {
        holds,
        target,
        best_excess: r.value,
        witness: r.witness,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GapCertificate {
    /// `½ min(H(X1|X2), H(X2|X1)) - M̃1`, clamped at 0.
    pub gap: Bits,
    pub half_min_conditional: Bits,
    pub coincidence: CoincidenceReport,
}

/// Worst-case distance between GW-LFU-TC and the optimum over the middle
/// memory range.
pub fn gap_certificate(j: &JointPmf2, opt: &OptimizerConfig) -> Result<GapCertificate> {
    let s = j.measures();
    let half = 0.5 * s.h1_given_2.min(s.h2_given_1);
    let rep = m1(j, true, opt)?;
    Ok(GapCertificate {
        gap: (half - rep.m1).max(0.0),
        half_min_conditional: half,
        coincidence: rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gray_wyner::{dsbs_p1, wyner_aux_dsbs};
    use approx::assert_abs_diff_eq;

    const H: f64 = 1.721_928_094_887_362_3;

    fn quick() -> OptimizerConfig {
        OptimizerConfig {
            restarts: 4,
            max_iters: 200,
            ..Default::default()
        }
    }

    fn wyner() -> AuxChannel {
        wyner_aux_dsbs(0.2, dsbs_p1(0.2).unwrap(), true).unwrap()
    }

    #[test]
    fn r_lb_examples() {
        let j = JointPmf2::dsbs(0.2).unwrap();
        let v = r_lb(&j, 0.0).unwrap();
        assert_abs_diff_eq!(v.value, H, epsilon = 1e-12);
        assert_eq!(v.active, 1);
        assert_abs_diff_eq!(r_lb(&j, 0.2).unwrap().value, 1.321_928_094_887_362_3, epsilon = 1e-12);
        let v = r_lb(&j, 1.0).unwrap();
        assert_abs_diff_eq!(v.value, 0.360_964_047_443_681_2, epsilon = 1e-12);
        // (H-M)/2 and (H+1)/2-M tie at M = 1; the smaller index is reported.
        assert_eq!(v.active, 2);
        assert_eq!(r_lb(&j, H).unwrap().value, 0.0);
        assert_eq!(r_lb(&j, 5.0).unwrap().active, 0);
        assert!(r_lb(&j, -0.1).is_err());
    }

    #[test]
    fn r_lb_gw_u_examples() {
        let j = JointPmf2::dsbs(0.2).unwrap();
        let c = r_lb_gw_u(&j, &AuxChannel::constant(4), 0.3).unwrap();
        assert_abs_diff_eq!(c.value, (2.0 - 0.6_f64).max(1.5 - 0.3), epsilon = 1e-12);
        assert_abs_diff_eq!(r_lb_gw_u(&j, &wyner(), 0.0).unwrap().value, H, epsilon = 1e-12);
        let v = r_lb_gw_u(&j, &wyner(), 0.5).unwrap();
        assert_abs_diff_eq!(v.value, 0.967_922_296_411_338_2, epsilon = 1e-12);
        assert_eq!(v.active, 3);
    }

    #[test]
    fn r_lb_gw_sandwich_in_coincidence_region() {
        let j = JointPmf2::dsbs(0.2).unwrap();
        let est = r_lb_gw(&j, 0.1, &quick()).unwrap();
        let lb = r_lb(&j, 0.1).unwrap().value;
        assert_abs_diff_eq!(lb, 1.521_928_094_887_362_3, epsilon = 1e-12);
        assert!(est.value >= lb - 1e-12);
        assert!(est.value <= r_lb_gw_u(&j, &wyner(), 0.1).unwrap().value + 1e-12);
        assert_abs_diff_eq!(r_lb_gw_u(&j, &est.witness, 0.1).unwrap().value, est.value, epsilon = 1e-9);
    }

    #[test]
    fn r_lb_gw_for_identical_and_independent_sources() {
        let same = JointPmf2::dsbs(0.0).unwrap();
        for m in [0.0, 0.3, 0.7] {
            let est = r_lb_gw(&same, m, &quick()).unwrap();
            assert_abs_diff_eq!(est.value, r_lb(&same, m).unwrap().value, epsilon = 1e-9);
        }
        let ind = JointPmf2::dsbs(0.5).unwrap();
        let est = r_lb_gw(&ind, 0.8, &quick()).unwrap();
        let constant = r_lb_gw_u(&ind, &AuxChannel::constant(4), 0.8).unwrap().value;
        assert!(est.value <= constant + 1e-12);
        assert!(est.value >= r_lb(&ind, 0.8).unwrap().value - 1e-12);
    }

    #[test]
    fn m1_examples() {
        let rep = m1(&JointPmf2::dsbs(0.0).unwrap(), false, &quick()).unwrap();
        assert!(rep.m1 <= 1e-9);
        assert_abs_diff_eq!(rep.intervals[1][0], 1.0, epsilon = 1e-8);

        let rep = m1(&JointPmf2::dsbs(0.5).unwrap(), false, &quick()).unwrap();
        assert_abs_diff_eq!(rep.m1, 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(rep.intervals[1][0], 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(rep.intervals[1][1], 2.0, epsilon = 1e-12);

        let rep = m1(&JointPmf2::dsbs(0.2).unwrap(), true, &quick()).unwrap();
        assert!(rep.m1 >= 0.254_005_798_476_024_2 - 1e-6);
        assert!(!rep.improved_over_seeds || rep.m1 <= 0.254_005_798_476_024_2 + 1e-6);
    }

    #[test]
    fn symmetric_m1_needs_square_alphabets() {
        let j = JointPmf2::new(2, 3, vec![0.1, 0.2, 0.05, 0.3, 0.25, 0.1]).unwrap();
        assert!(m1(&j, true, &quick()).is_err());
    }

    #[test]
    fn mi_corner_examples() {
        let rep = mi_corner_check(&JointPmf2::dsbs(0.0).unwrap(), &quick()).unwrap();
        assert_eq!(rep.holds, Ternary::Yes);
        let rep = mi_corner_check(&JointPmf2::shared_component(0.5, 0.3, 0.6).unwrap(), &quick()).unwrap();
        assert_eq!(rep.holds, Ternary::Yes);
        let rep = mi_corner_check(&JointPmf2::dsbs(0.2).unwrap(), &quick()).unwrap();
        assert_eq!(rep.holds, Ternary::Unknown);
        assert!(rep.best_excess > 1e-3);
    }

    #[test]
    fn gap_examples() {
        let g = gap_certificate(&JointPmf2::dsbs(0.5).unwrap(), &quick()).unwrap();
        assert_abs_diff_eq!(g.gap, 0.0, epsilon = 1e-9);
        let g = gap_certificate(&JointPmf2::dsbs(0.2).unwrap(), &quick()).unwrap();
        assert_abs_diff_eq!(g.half_min_conditional, 0.360_964_047_443_681_2, epsilon = 1e-12);
        assert!(g.gap <= 0.106_958_248_967_657 + 1e-6);
        assert!(g.gap < 0.11);
    }
}
