//! Gray-Wyner corner points for a fixed auxiliary channel, Markov-chain
//! defects, and the closed-form DSBS boundary on the plane `R1 = R2 = ρ`.

use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};
use crate::info::{
    binary_entropy_inv, binary_entropy_unchecked, check_pmf, entropy_raw, Bits, JointPmf2,
};

/// Tolerance on `I(X1;X2|U)` for declaring the chain `X1 - U - X2`.
pub const MARKOV_TOL: f64 = 1e-9;

/// Tolerance on the joint-weighted conditional symmetry defect.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Conditional pmf `p(u | x1, x2)`; one probability column of length `nu`
/// per source cell, cells in row-major `(x1, x2)` order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AuxRepr", into = "AuxRepr")]
pub struct AuxChannel {
    nu: usize,
    w: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct AuxRepr {
    nu: usize,
    w: Vec<Vec<f64>>,
}

impl TryFrom<AuxRepr> for AuxChannel {
    type Error = Error;

    fn try_from(r: AuxRepr) -> Result<Self> {
        AuxChannel::from_columns(r.nu, &r.w)
    }
}

impl From<AuxChannel> for AuxRepr {
    fn from(a: AuxChannel) -> Self {
        AuxRepr {
            nu: a.nu,
            w: a.columns().map(<[f64]>::to_vec).collect(),
        }
    }
}

impl AuxChannel {
    pub fn from_columns(nu: usize, columns: &[Vec<f64>]) -> Result<Self> {
        if nu == 0 || columns.is_empty() {
            return Err(Error::Dimension("empty auxiliary channel".into()));
        }
        let mut w = Vec::with_capacity(nu * columns.len());
        for col in columns {
            if col.len() != nu {
                return Err(Error::Dimension(format!(
                    "column of length {} for nu = {nu}",
                    col.len()
                )));
            }
            check_pmf(col)?;
            let s: f64 = col.iter().sum();
            if (s - 1.0).abs() > 1e-14 {
                w.extend(col.iter().map(|x| x / s));
            } else {
                w.extend_from_slice(col);
            }
        }
        Ok(Self { nu, w })
    }

    /// Flat column-major storage; assumed valid.
    pub(crate) fn from_flat(nu: usize, w: Vec<f64>) -> Self {
        debug_assert_eq!(w.len() % nu, 0);
        Self { nu, w }
    }

    /// Builds the channel `p(u|x)` from a joint `r[u][cell]` by Bayes' rule.
    /// Cells with zero mass get a uniform column.
    pub(crate) fn from_joint(nu: usize, cells: usize, joint: &[f64]) -> Self {
        let mut w = vec![0.0; nu * cells];
        for c in 0..cells {
            let mass: f64 = (0..nu).map(|u| joint[u * cells + c]).sum();
            for u in 0..nu {
                w[c * nu + u] = if mass > 0.0 {
                    joint[u * cells + c] / mass
                } else {
                    1.0 / nu as f64
                };
            }
        }
        Self { nu, w }
    }

    /// `U` independent of the source.
    pub fn constant(cells: usize) -> Self {
        Self {
            nu: 1,
            w: vec![1.0; cells],
        }
    }

    /// `U = (X1, X2)`.
    pub fn identity(cells: usize) -> Self {
        let mut w = vec![0.0; cells * cells];
        for c in 0..cells {
            w[c * cells + c] = 1.0;
        }
        Self { nu: cells, w }
    }

    /// `U = g(x1, x2)` for a labelling `g` into `0..nu`.
    pub fn deterministic(nu: usize, labels: &[usize]) -> Result<Self> {
        let mut w = vec![0.0; nu * labels.len()];
        for (c, &u) in labels.iter().enumerate() {
            if u >= nu {
                return Err(Error::Dimension(format!("label {u} >= nu = {nu}")));
            }
            w[c * nu + u] = 1.0;
        }
        Ok(Self { nu, w })
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn cells(&self) -> usize {
        self.w.len() / self.nu
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        self.w.chunks(self.nu)
    }

    pub(crate) fn flat(&self) -> &[f64] {
        &self.w
    }

    /// Appends zero-probability symbols until the alphabet has `nu` letters.
    pub fn padded(&self, nu: usize) -> Self {
        if nu <= self.nu {
            return self.clone();
        }
        let mut w = Vec::with_capacity(nu * self.cells());
        for col in self.columns() {
            w.extend_from_slice(col);
            w.extend(std::iter::repeat_n(0.0, nu - self.nu));
        }
        Self { nu, w }
    }

    fn check_compatible(&self, j: &JointPmf2) -> Result<()> {
        if self.cells() != j.n1() * j.n2() {
            return Err(Error::Dimension(format!(
                "channel has {} input columns, source has {}x{} cells",
                self.cells(),
                j.n1(),
                j.n2()
            )));
        }
        Ok(())
    }
}

/// Description rates `(R0, R1, R2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateTriplet {
    pub r0: Bits,
    pub r1: Bits,
    pub r2: Bits,
}

impl RateTriplet {
    pub fn new(r0: Bits, r1: Bits, r2: Bits) -> Self {
        Self { r0, r1, r2 }
    }

    pub fn sum(&self) -> Bits {
        self.r0 + self.r1 + self.r2
    }

    /// Componentwise `self >= other - tol`.
    pub fn dominates(&self, other: &RateTriplet, tol: f64) -> bool {
        self.r0 >= other.r0 - tol && self.r1 >= other.r1 - tol && self.r2 >= other.r2 - tol
    }
}

/// Entropies of the induced triple `(U, X1, X2)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TripleEntropies {
    pub h_u: f64,
    pub h_u1: f64,
    pub h_u2: f64,
    pub h_u12: f64,
    pub h_12: f64,
}

impl TripleEntropies {
    pub fn corner(&self) -> RateTriplet {
        RateTriplet {
            r0: (self.h_12 + self.h_u - self.h_u12).max(0.0),
            r1: (self.h_u1 - self.h_u).max(0.0),
            r2: (self.h_u2 - self.h_u).max(0.0),
        }
    }

    pub fn markov_defect(&self) -> f64 {
        (self.h_u1 + self.h_u2 - self.h_u - self.h_u12).max(0.0)
    }
}

/// Entropies of `r(u, x1, x2) = w(u|x1,x2) p(x1,x2)` from flat column-major
/// channel storage. Scratch buffers are sized by the caller's dimensions.
pub(crate) fn triple_entropies(j: &JointPmf2, nu: usize, w: &[f64]) -> TripleEntropies {
    let (n1, n2) = (j.n1(), j.n2());
    let p = j.probs();
    let mut pu = vec![0.0; nu];
    let mut pu1 = vec![0.0; nu * n1];
    let mut pu2 = vec![0.0; nu * n2];
    let mut h_u12 = 0.0;
    for x1 in 0..n1 {
        for x2 in 0..n2 {
            let c = x1 * n2 + x2;
            let px = p[c];
            if px == 0.0 {
                continue;
            }
            for u in 0..nu {
                let r = w[c * nu + u] * px;
                if r > 0.0 {
                    h_u12 -= r * r.log2();
                    pu[u] += r;
                    pu1[u * n1 + x1] += r;
                    pu2[u * n2 + x2] += r;
                }
            }
        }
    }
    TripleEntropies {
        h_u: entropy_raw(pu),
        h_u1: entropy_raw(pu1),
        h_u2: entropy_raw(pu2),
        h_u12: h_u12.max(0.0),
        h_12: j.joint_entropy(),
    }
}

/// `(I(X1,X2;U), H(X1|U), H(X2|U))` under the induced joint.
pub fn gw_corner(j: &JointPmf2, a: &AuxChannel) -> Result<RateTriplet> {
    a.check_compatible(j)?;
    Ok(triple_entropies(j, a.nu, &a.w).corner())
}

/// Whether `t` lies in the region `R_GW(U)` up to `tol`.
pub fn in_region(t: &RateTriplet, j: &JointPmf2, a: &AuxChannel, tol: f64) -> Result<bool> {
    Ok(t.dominates(&gw_corner(j, a)?, tol))
}

/// `I(X1;X2|U)`; zero exactly when `X1 - U - X2` holds.
pub fn markov_defect(j: &JointPmf2, a: &AuxChannel) -> Result<f64> {
    a.check_compatible(j)?;
    Ok(triple_entropies(j, a.nu, &a.w).markov_defect())
}

/// `max_{u,x} |p(u, X1 = x) - p(u, X2 = x)|`, which vanishes exactly when
/// `p(x1|u) = p(x2|u)` on the support of `U`.
pub fn symmetry_defect(j: &JointPmf2, a: &AuxChannel) -> Result<f64> {
    a.check_compatible(j)?;
    if j.n1() != j.n2() {
        return Err(Error::Dimension(format!(
            "conditional symmetry needs equal alphabets, got {}x{}",
            j.n1(),
            j.n2()
        )));
    }
    Ok(symmetry_defect_flat(j, a.nu, &a.w))
}

pub(crate) fn symmetry_defect_flat(j: &JointPmf2, nu: usize, w: &[f64]) -> f64 {
    let n = j.n1();
    let mut diff = vec![0.0; nu * n];
    for x1 in 0..n {
        for x2 in 0..n {
            let c = x1 * n + x2;
            let px = j.get(x1, x2);
            for u in 0..nu {
                let r = w[c * nu + u] * px;
                diff[u * n + x1] += r;
                diff[u * n + x2] -= r;
            }
        }
    }
    diff.into_iter().fold(0.0, |m, d| m.max(d.abs()))
}

/// Source induced by `X1 - U - X2` with the given `p(u)`, `p(x1|u)` and
/// `p(x2|u)` (rows indexed by `u`), together with the posterior channel
/// `p(u|x1,x2)`.
pub fn latent_model(pu: &[f64], px1_u: &[Vec<f64>], px2_u: &[Vec<f64>]) -> Result<(JointPmf2, AuxChannel)> {
    check_pmf(pu)?;
    let nu = pu.len();
    if px1_u.len() != nu || px2_u.len() != nu {
        return Err(Error::Dimension(format!("need {nu} conditional rows per component")));
    }
    let (n1, n2) = (px1_u[0].len(), px2_u[0].len());
    for (r1, r2) in px1_u.iter().zip(px2_u) {
        if r1.len() != n1 || r2.len() != n2 {
            return Err(Error::Dimension("ragged conditional rows".into()));
        }
        check_pmf(r1)?;
        check_pmf(r2)?;
    }
    let cells = n1 * n2;
    let mut joint = vec![0.0; nu * cells];
    let mut p = vec![0.0; cells];
    for u in 0..nu {
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                let r = pu[u] * px1_u[u][x1] * px2_u[u][x2];
                joint[u * cells + x1 * n2 + x2] = r;
                p[x1 * n2 + x2] += r;
            }
        }
    }
    Ok((JointPmf2::new(n1, n2, p)?, AuxChannel::from_joint(nu, cells, &joint)))
}

/// `p1 = (1 - sqrt(1 - 2 p0)) / 2`, the crossover of the Wyner construction.
pub fn dsbs_p1(p0: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&p0) {
        return Err(out_of_range("p0", p0, "[0, 1/2]"));
    }
    // Same value as the textbook form without the cancellation at small p0.
    Ok(p0 / (1.0 + (1.0 - 2.0 * p0).sqrt()))
}

/// Channel induced by `U ~ Bern(1/2)`, `Xi = U xor Zi` with the noise pair
/// `(Z1, Z2)` distributed as `[[p00, p01], [p10, p11]]`.
fn xor_noise_channel(noise: [[f64; 2]; 2]) -> AuxChannel {
    let mut joint = vec![0.0; 8];
    for u in 0..2 {
        for x1 in 0..2 {
            for x2 in 0..2 {
                joint[u * 4 + x1 * 2 + x2] = 0.5 * noise[x1 ^ u][x2 ^ u];
            }
        }
    }
    AuxChannel::from_joint(2, 4, &joint)
}

/// Wyner's auxiliary for the DSBS: `U ~ Bern(1/2)`, `Xi = U xor Zi` with
/// `Zi ~ Bern(a)` independent. With `require_markov`, `(p0, a)` must satisfy
/// `2a(1-a) = p0` so that the construction reproduces the DSBS.
pub fn wyner_aux_dsbs(p0: f64, a: f64, require_markov: bool) -> Result<AuxChannel> {
    if !(0.0..=0.5).contains(&p0) {
        return Err(out_of_range("p0", p0, "[0, 1/2]"));
    }
    if !(0.0..=0.5).contains(&a) {
        return Err(out_of_range("a", a, "[0, 1/2]"));
    }
    if require_markov && (2.0 * a * (1.0 - a) - p0).abs() > 1e-9 {
        return Err(Error::InvalidPmf(format!(
            "2a(1-a) = {} does not match p0 = {p0}",
            2.0 * a * (1.0 - a)
        )));
    }
    let b = [1.0 - a, a];
    Ok(xor_noise_channel([
        [b[0] * b[0], b[0] * b[1]],
        [b[1] * b[0], b[1] * b[1]],
    ]))
}

/// Symmetric auxiliary on the `h(p1) <= ρ <= 1` part of the DSBS plane:
/// `U ~ Bern(1/2)`, `Xi = U xor Zi`, `P(Zi = 1) = a`, `P(Z1 != Z2) = p0`.
/// Its corner is `(f(h(a)), h(a), h(a))`; at `a = p1` it is Wyner's channel.
pub fn dsbs_plane_aux(p0: f64, a: f64) -> Result<AuxChannel> {
    let p1 = dsbs_p1(p0)?;
    if !(p1 - 1e-12..=0.5).contains(&a) {
        return Err(out_of_range("a", a, format!("[{p1}, 1/2]")));
    }
    let a = a.max(p1);
    let d = 0.5 * p0;
    Ok(xor_noise_channel([
        [(1.0 - a - d).max(0.0), d],
        [d, (a - d).max(0.0)],
    ]))
}

fn xlog2x(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// Minimal common rate on the symmetric DSBS plane:
/// `1 + h(p0) - 2ρ` below `h(p1)` and `f(ρ)` above it.
pub fn dsbs_r0_boundary(rho: Bits, p0: f64) -> Result<Bits> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(out_of_range("rho", rho, "[0, 1]"));
    }
    let p1 = dsbs_p1(p0)?;
    let hp0 = binary_entropy_unchecked(p0);
    let knee = binary_entropy_unchecked(p1);
    if rho < knee {
        return Ok((1.0 + hp0 - 2.0 * rho).max(0.0));
    }
    let a = binary_entropy_inv(rho)?;
    let mut lo = a - 0.5 * p0;
    if lo < 0.0 {
        // h^-1(ρ) >= p1 >= p0/2 analytically; only rounding lands here.
        if lo < -1e-12 {
            return Err(Error::InvalidPmf(format!(
                "h^-1({rho}) - p0/2 = {lo} is negative"
            )));
        }
        lo = 0.0;
    }
    let f = 1.0 + hp0 + xlog2x(lo) + xlog2x(0.5 * p0) * 2.0 + xlog2x(1.0 - a - 0.5 * p0);
    Ok(f.max(0.0))
}
