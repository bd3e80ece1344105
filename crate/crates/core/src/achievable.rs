//! Peak rate of the GW-LFU-TC scheme and the two correlation-unaware
//! baselines it is compared against.

use serde::{Deserialize, Serialize};

use crate::bounds::{check_memory, r_lb_gw_u, Estimate};
use crate::error::{out_of_range, Error, Result};
use crate::gray_wyner::{
    dsbs_p1, dsbs_r0_boundary, gw_corner, markov_defect, symmetry_defect, AuxChannel, MARKOV_TOL,
    SYMMETRY_TOL,
};
use crate::info::{binary_entropy_unchecked, Bits, JointPmf2};
use crate::optimizer::{optimize, Objective, OptimizerConfig, Parametrization};

/// Common rate `r0` and symmetric private rate `rho` of a Gray-Wyner
/// operating point on the plane `R1 = R2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub r0: Bits,
    pub rho: Bits,
}

/// Rate and the active piece: 1 on `[0, ρ/2)`, 2 on `[ρ/2, R0+ρ)`,
/// 3 on `[R0+ρ, R0+2ρ]`, 0 beyond (everything cached).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AchValue {
    pub value: Bits,
    pub branch: u8,
}

fn r_ach_branch(p: &OperatingPoint, m: Bits) -> AchValue {
    let (r0, rho) = (p.r0, p.rho);
    if m < 0.5 * rho {
        AchValue {
            value: r0 + 2.0 * rho - 2.0 * m,
            branch: 1,
        }
    } else if m < r0 + rho {
        AchValue {
            value: r0 + 1.5 * rho - m,
            branch: 2,
        }
    } else if m <= r0 + 2.0 * rho {
        AchValue {
            value: (0.5 * r0 + rho - 0.5 * m).max(0.0),
            branch: 3,
        }
    } else {
        AchValue {
            value: 0.0,
            branch: 0,
        }
    }
}

pub(crate) fn r_ach_value(p: &OperatingPoint, m: Bits) -> Bits {
    r_ach_branch(p, m.max(0.0)).value
}

/// GW-LFU-TC peak rate at the operating point `p` with cache size `m`.
pub fn r_ach(p: &OperatingPoint, m: Bits) -> Result<AchValue> {
    check_memory(m)?;
    if !(p.r0 >= 0.0 && p.rho >= 0.0) {
        return Err(out_of_range("operating point", p.r0.min(p.rho), "[0, inf)"));
    }
    Ok(r_ach_branch(p, m))
}

/// Rate at the corner of `R_GW(U)` for a conditionally symmetric channel.
pub fn r_ub_gw_u(j: &JointPmf2, a: &AuxChannel, m: Bits) -> Result<AchValue> {
    check_memory(m)?;
    let defect = symmetry_defect(j, a)?;
    if defect > SYMMETRY_TOL {
        return Err(Error::Asymmetric(defect));
    }
    let c = gw_corner(j, a)?;
    r_ach(
        &OperatingPoint {
            r0: c.r0,
            rho: c.r1.max(c.r2),
        },
        m,
    )
}

/// Optimizer-backed GW-LFU-TC rate for a general symmetric-alphabet source.
pub fn r_ub_gw(j: &JointPmf2, m: Bits, opt: &OptimizerConfig) -> Result<Estimate> {
    check_memory(m)?;
    let r = optimize(j, Objective::MinRubGw { m }, Parametrization::MarkovSymmetric, opt)?;
    Ok(Estimate {
        value: r.value,
        witness: r.witness,
        source: r.source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DsbsUpper {
    pub value: Bits,
    pub rho: Bits,
    pub r0: Bits,
    pub branch: u8,
}

/// GW-LFU-TC rate for the DSBS, minimized over the symmetric-plane
/// boundary `ρ ∈ [0, 1]` by a 1e-3 grid scan refined with golden-section
/// search.
pub fn r_ub_gw_dsbs(p0: f64, m: Bits) -> Result<DsbsUpper> {
    check_memory(m)?;
    let knee = binary_entropy_unchecked(dsbs_p1(p0)?);
    let eval = |rho: f64| -> Result<DsbsUpper> {
        let r0 = dsbs_r0_boundary(rho, p0)?;
        let v = r_ach_branch(&OperatingPoint { r0, rho }, m);
        Ok(DsbsUpper {
            value: v.value,
            rho,
            r0,
            branch: v.branch,
        })
    };
    let mut best = eval(0.0)?;
    let mut best_k = 0;
    for k in 1..=1000 {
        let cand = eval(k as f64 * 1e-3)?;
        if cand.value < best.value {
            best = cand;
            best_k = k;
        }
    }
    let knee_val = eval(knee)?;
    if knee_val.value < best.value {
        best = knee_val;
    }

    // golden-section refinement around the best grid point
    let center = best_k as f64 * 1e-3;
    let (mut lo, mut hi) = ((center - 1e-3).max(0.0), (center + 1e-3).min(1.0));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while hi - lo > 1e-12 {
        if f1.value <= f2.value {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = eval(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = eval(x2)?;
        }
    }
    for c in [f1, f2] {
        if c.value < best.value {
            best = c;
        }
    }
    Ok(best)
}

/// LFU caching with uncoded multicast: both receivers cache the same
/// prefix of the jointly compressed library.
pub fn baseline_lfu_um(j: &JointPmf2, m: Bits) -> Result<Bits> {
    check_memory(m)?;
    Ok((j.joint_entropy() - m).max(0.0))
}

/// Correlation-unaware two-file coded caching applied to separately
/// compressed files of equal entropy `F`.
pub fn baseline_tc(j: &JointPmf2, m: Bits) -> Result<Bits> {
    check_memory(m)?;
    let s = j.measures();
    if (s.h1 - s.h2).abs() > 1e-9 {
        return Err(Error::Unsupported(format!(
            "closed form needs H(X1) = H(X2), got {} and {}",
            s.h1, s.h2
        )));
    }
    Ok(r_ach_value(&OperatingPoint { r0: 0.0, rho: s.h1 }, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EqualityReport {
    /// `max_m |r_ub_gw_u - r_lb_gw_u|` over the grid.
    pub gap: Bits,
    pub markov_defect: Bits,
    pub symmetry_defect: Bits,
    /// Markov and symmetric: the regime in which the gap must vanish.
    pub qualifying: bool,
}

/// Sup-norm gap between the achievable rate and the GW lower bound for one
/// auxiliary over a memory grid.
pub fn symmetric_equality_check(j: &JointPmf2, a: &AuxChannel, grid: &[Bits]) -> Result<EqualityReport> {
    let markov = markov_defect(j, a)?;
    let sym = symmetry_defect(j, a)?;
    let c = gw_corner(j, a)?;
    let p = OperatingPoint {
        r0: c.r0,
        rho: c.r1.max(c.r2),
    };
    let mut gap: f64 = 0.0;
    for &m in grid {
        let ub = r_ach(&p, m)?.value;
        let lb = r_lb_gw_u(j, a, m)?.value;
        gap = gap.max((ub - lb).abs());
    }
    Ok(EqualityReport {
        gap,
        markov_defect: markov,
        symmetry_defect: sym,
        qualifying: markov <= MARKOV_TOL && sym <= SYMMETRY_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::r_lb;
    use crate::gray_wyner::wyner_aux_dsbs;
    use approx::assert_abs_diff_eq;

    const H: f64 = 1.721_928_094_887_362_3;

    fn wyner() -> AuxChannel {
        wyner_aux_dsbs(0.2, dsbs_p1(0.2).unwrap(), true).unwrap()
    }

    #[test]
    fn r_ach_examples() {
        let p = OperatingPoint { r0: 1.0, rho: 0.5 };
        assert_eq!(r_ach(&p, 0.0).unwrap().value, 2.0);
        assert_eq!(r_ach(&p, 2.0).unwrap().value, 0.0);
        let v = r_ach(&p, 0.25).unwrap();
        assert_eq!(v.value, 1.5);
        assert_eq!(v.branch, 2);
        assert_abs_diff_eq!(r_ach(&p, 0.25 - 1e-13).unwrap().value, 1.5, epsilon = 1e-12);
        assert_eq!(r_ach(&p, 1.5).unwrap().branch, 3);
        assert_eq!(r_ach(&p, 2.5).unwrap(), AchValue { value: 0.0, branch: 0 });
        assert!(r_ach(&p, -1.0).is_err());
    }

    #[test]
    fn r_ub_gw_u_examples() {
        let j = JointPmf2::dsbs(0.2).unwrap();
        let v = r_ub_gw_u(&j, &AuxChannel::constant(4), 0.3).unwrap();
        assert_abs_diff_eq!(v.value, r_ach_value(&OperatingPoint { r0: 0.0, rho: 1.0 }, 0.3), epsilon = 1e-12);
        assert_abs_diff_eq!(r_ub_gw_u(&j, &wyner(), 0.0).unwrap().value, H, epsilon = 1e-12);
        let v = r_ub_gw_u(&j, &wyner(), 1.5).unwrap();
        assert_eq!(v.branch, 3);
        assert_abs_diff_eq!(v.value, 0.110_964_047_443_681_2, epsilon = 1e-12);
    }

    #[test]
    fn asymmetric_channel_is_rejected() {
        let j = JointPmf2::dsbs(0.2).unwrap();
        // U = X1 is not conditionally symmetric
        let a = AuxChannel::deterministic(2, &[0, 0, 1, 1]).unwrap();
        assert!(matches!(r_ub_gw_u(&j, &a, 0.5), Err(Error::Asymmetric(_))));
    }

    #[test]
    fn dsbs_upper_examples() {
        let v = r_ub_gw_dsbs(0.2, 0.0).unwrap();
        assert_abs_diff_eq!(v.value, H, epsilon = 1e-12);
        assert_eq!(r_ub_gw_dsbs(0.2, H).unwrap().value, 0.0);
        let j = JointPmf2::dsbs(0.2).unwrap();
        let v = r_ub_gw_dsbs(0.2, 0.25).unwrap();
        // inside [0, M̃1] the scheme meets the lower bound (1.22193, oracle)
        assert_abs_diff_eq!(v.value, r_lb(&j, 0.25).unwrap().value, epsilon = 1e-9);
        assert_abs_diff_eq!(v.value, 1.221_928_094_887_362_3, epsilon = 1e-9);
    }

    #[test]
    fn baselines() {
        let j = JointPmf2::dsbs(0.2).unwrap();
        assert_abs_diff_eq!(baseline_lfu_um(&j, 0.0).unwrap(), H, epsilon = 1e-12);
        assert_eq!(baseline_lfu_um(&j, H).unwrap(), 0.0);
        assert_abs_diff_eq!(baseline_lfu_um(&j, 1.0).unwrap(), 0.721_928_094_887_362_3, epsilon = 1e-12);
        for p0 in [0.0, 0.2, 0.5] {
            let j = JointPmf2::dsbs(p0).unwrap();
            assert_abs_diff_eq!(baseline_tc(&j, 0.0).unwrap(), 2.0, epsilon = 1e-12);
            assert_abs_diff_eq!(baseline_tc(&j, 0.5).unwrap(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(baseline_tc(&j, 2.0).unwrap(), 0.0, epsilon = 1e-12);
        }
        let skew = JointPmf2::new(2, 2, vec![0.5, 0.3, 0.1, 0.1]).unwrap();
        assert!(baseline_tc(&skew, 0.5).is_err());
    }

    #[test]
    fn equality_examples() {
        let grid: Vec<f64> = (0..100).map(|k| k as f64 * 0.02).collect();
        let j = JointPmf2::dsbs(0.2).unwrap();
        let rep = symmetric_equality_check(&j, &wyner(), &grid).unwrap();
        assert!(rep.qualifying);
        assert!(rep.gap <= 1e-9);

        let ind = JointPmf2::dsbs(0.5).unwrap();
        let rep = symmetric_equality_check(&ind, &AuxChannel::constant(4), &grid).unwrap();
        assert!(rep.qualifying);
        assert!(rep.gap <= 1e-9);

        let rep = symmetric_equality_check(&j, &AuxChannel::constant(4), &grid).unwrap();
        assert!(!rep.qualifying);
    }
}
