//! Discrete information measures over finite alphabets.

use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

/// A rate or a memory size in bits per source symbol.
pub type Bits = f64;

/// Tolerance on the total mass of an ingested probability vector.
pub const SUM_TOL: f64 = 1e-9;

fn xlog2x(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy without validation; zero entries contribute nothing.
pub(crate) fn entropy_raw(p: impl IntoIterator<Item = f64>) -> f64 {
    let h = -p.into_iter().map(xlog2x).sum::<f64>();
    h.max(0.0)
}

pub(crate) fn check_pmf(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidPmf("empty vector".into()));
    }
    if let Some(x) = p.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::InvalidPmf(format!("entry {x} is negative or not finite")));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidPmf(format!("entries sum to {s}")));
    }
    Ok(())
}

/// H(p) = -Σ p log2 p.
pub fn entropy(p: &[f64]) -> Result<Bits> {
    check_pmf(p)?;
    Ok(entropy_raw(p.iter().copied()))
}

/// h(p) = -p log2 p - (1-p) log2 (1-p).
pub fn binary_entropy(p: f64) -> Result<Bits> {
    if !(0.0..=1.0).contains(&p) {
        return Err(out_of_range("p", p, "[0, 1]"));
    }
    Ok(binary_entropy_unchecked(p))
}

pub(crate) fn binary_entropy_unchecked(p: f64) -> f64 {
    -(xlog2x(p) + xlog2x(1.0 - p))
}

/// Inverse of the binary entropy on the branch `[0, 1/2]`, by bisection.
pub fn binary_entropy_inv(y: Bits) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(out_of_range("y", y, "[0, 1]"));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if y == 1.0 {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0_f64, 0.5_f64);
    for _ in 0..200 {
        if hi - lo <= 1e-14 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if binary_entropy_unchecked(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Joint pmf of a two-component discrete memoryless source, stored row-major
/// (`p[x1 * n2 + x2]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PmfRepr", into = "PmfRepr")]
pub struct JointPmf2 {
    n1: usize,
    n2: usize,
    p: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PmfRepr {
    n1: usize,
    n2: usize,
    p: Vec<Vec<f64>>,
}

impl TryFrom<PmfRepr> for JointPmf2 {
    type Error = Error;

    fn try_from(r: PmfRepr) -> Result<Self> {
        if r.p.len() != r.n1 || r.p.iter().any(|row| row.len() != r.n2) {
            return Err(Error::Dimension(format!(
                "expected {}x{} matrix of probabilities",
                r.n1, r.n2
            )));
        }
        JointPmf2::new(r.n1, r.n2, r.p.into_iter().flatten().collect())
    }
}

impl From<JointPmf2> for PmfRepr {
    fn from(j: JointPmf2) -> Self {
        let p = j.p.chunks(j.n2).map(<[f64]>::to_vec).collect();
        PmfRepr { n1: j.n1, n2: j.n2, p }
    }
}

/// The six joint quantities of a pair source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointMeasures {
    pub h1: Bits,
    pub h2: Bits,
    pub h12: Bits,
    pub h1_given_2: Bits,
    pub h2_given_1: Bits,
    pub mutual_info: Bits,
}

impl JointPmf2 {
    /// Validates a row-major matrix and renormalizes it so that it sums to
    /// one up to rounding.
    pub fn new(n1: usize, n2: usize, mut p: Vec<f64>) -> Result<Self> {
        if n1 == 0 || n2 == 0 || p.len() != n1 * n2 {
            return Err(Error::Dimension(format!(
                "{} entries for a {n1}x{n2} alphabet",
                p.len()
            )));
        }
        check_pmf(&p)?;
        let s: f64 = p.iter().sum();
        // Leave already-normalized input alone so JSON round trips are exact.
        if (s - 1.0).abs() > 1e-14 {
            p.iter_mut().for_each(|x| *x /= s);
        }
        Ok(Self { n1, n2, p })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n1 = rows.len();
        let n2 = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n2) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(n1, n2, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    /// Doubly symmetric binary source with crossover probability `p0`.
    pub fn dsbs(p0: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&p0) {
            return Err(out_of_range("p0", p0, "[0, 1/2]"));
        }
        let same = 0.5 * (1.0 - p0);
        let diff = 0.5 * p0;
        Self::new(2, 2, vec![same, diff, diff, same])
    }

    /// Product of the two marginals.
    pub fn independent(p1: &[f64], p2: &[f64]) -> Result<Self> {
        check_pmf(p1)?;
        check_pmf(p2)?;
        let p = p1
            .iter()
            .flat_map(|a| p2.iter().map(move |b| a * b))
            .collect();
        Self::new(p1.len(), p2.len(), p)
    }

    /// Source with a shared component: `Xi = (Xi', V)` with `V`, `X1'`, `X2'`
    /// independent Bernoulli bits. Symbols are encoded as `2 * v + x'`.
    pub fn shared_component(pv: f64, p1: f64, p2: f64) -> Result<Self> {
        for (name, v) in [("pv", pv), ("p1'", p1), ("p2'", p2)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(out_of_range(name, v, "[0, 1]"));
            }
        }
        let bern = |q: f64, b: usize| if b == 1 { q } else { 1.0 - q };
        let mut p = vec![0.0; 16];
        for v in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    p[(2 * v + a) * 4 + 2 * v + b] = bern(pv, v) * bern(p1, a) * bern(p2, b);
                }
            }
        }
        Self::new(4, 4, p)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Row-major probabilities.
    pub fn probs(&self) -> &[f64] {
        &self.p
    }

    pub fn get(&self, x1: usize, x2: usize) -> f64 {
        self.p[x1 * self.n2 + x2]
    }

    pub fn marginal1(&self) -> Vec<f64> {
        self.p.chunks(self.n2).map(|row| row.iter().sum()).collect()
    }

    pub fn marginal2(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.n2];
        for row in self.p.chunks(self.n2) {
            for (acc, x) in m.iter_mut().zip(row) {
                *acc += x;
            }
        }
        m
    }

    pub fn joint_entropy(&self) -> Bits {
        entropy_raw(self.p.iter().copied())
    }

    pub fn measures(&self) -> JointMeasures {
        let h1 = entropy_raw(self.marginal1());
        let h2 = entropy_raw(self.marginal2());
        let h12 = self.joint_entropy();
        JointMeasures {
            h1,
            h2,
            h12,
            h1_given_2: (h12 - h2).max(0.0),
            h2_given_1: (h12 - h1).max(0.0),
            mutual_info: (h1 + h2 - h12).max(0.0),
        }
    }

    /// Whether `p(x1, x2) = p(x2, x1)`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.n1 == self.n2
            && (0..self.n1).all(|a| (0..a).all(|b| (self.get(a, b) - self.get(b, a)).abs() <= tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(entropy(&[1.0, 0.0]).unwrap(), 0.0);
        // mpmath, 40 digits
        assert_abs_diff_eq!(
            entropy(&[0.2, 0.8]).unwrap(),
            0.721_928_094_887_362_3,
            epsilon = 1e-15
        );
    }

    #[test]
    fn entropy_rejects_bad_vectors() {
        assert!(entropy(&[-0.1, 1.1]).is_err());
        assert!(entropy(&[0.5, 0.4]).is_err());
        assert!(entropy(&[]).is_err());
        assert!(entropy(&[0.5, 0.5 + 5e-10]).is_ok());
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(binary_entropy(0.2).unwrap(), 0.721_928_094_887_362_3, epsilon = 1e-15);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn binary_entropy_inverse_examples() {
        assert_eq!(binary_entropy_inv(1.0).unwrap(), 0.5);
        assert_eq!(binary_entropy_inv(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(binary_entropy_inv(0.721928).unwrap(), 0.2, epsilon = 1e-6);
        assert_abs_diff_eq!(
            binary_entropy_inv(0.721_928_094_887_362_3).unwrap(),
            0.2,
            epsilon = 1e-9
        );
        assert!(binary_entropy_inv(1.01).is_err());
    }

    #[test]
    fn inverse_is_accurate_near_the_ends() {
        for y in [1e-12, 1e-6, 0.3, 0.999_999, 1.0 - 1e-12] {
            let p = binary_entropy_inv(y).unwrap();
            assert!((binary_entropy_unchecked(p) - y).abs() <= 1e-12, "y={y}");
        }
    }

    #[test]
    fn dsbs_examples() {
        assert_eq!(JointPmf2::dsbs(0.0).unwrap().probs(), &[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(JointPmf2::dsbs(0.5).unwrap().probs(), &[0.25; 4]);
        let j = JointPmf2::dsbs(0.2).unwrap();
        for (a, b) in j.probs().iter().zip([0.4, 0.1, 0.1, 0.4]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        assert!(JointPmf2::dsbs(0.6).is_err());
    }

    #[test]
    fn measures_examples() {
        let m = JointPmf2::dsbs(0.5).unwrap().measures();
        assert_abs_diff_eq!(m.h1, 1.0);
        assert_abs_diff_eq!(m.h12, 2.0);
        assert_abs_diff_eq!(m.mutual_info, 0.0, epsilon = 1e-15);

        let m = JointPmf2::dsbs(0.0).unwrap().measures();
        assert_abs_diff_eq!(m.h12, 1.0);
        assert_abs_diff_eq!(m.h1_given_2, 0.0);
        assert_abs_diff_eq!(m.mutual_info, 1.0);

        let m = JointPmf2::dsbs(0.2).unwrap().measures();
        assert_abs_diff_eq!(m.h1, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.h1_given_2, 0.721_928_094_887_362_3, epsilon = 1e-12);
        assert_abs_diff_eq!(m.h12, 1.721_928_094_887_362_3, epsilon = 1e-12);
    }

    #[test]
    fn shared_component_measures() {
        let m = JointPmf2::shared_component(0.5, 0.5, 0.5).unwrap().measures();
        assert_abs_diff_eq!(m.h12, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.mutual_info, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.h1_given_2, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let j = JointPmf2::new(2, 3, vec![0.1, 0.2, 0.05, 0.3, 0.25, 0.1]).unwrap();
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.starts_with(r#"{"n1":2,"n2":3,"p":[["#));
        let back: JointPmf2 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, j);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn json_rejects_bad_shapes() {
        assert!(serde_json::from_str::<JointPmf2>(r#"{"n1":2,"n2":2,"p":[[0.5,0.5]]}"#).is_err());
        assert!(serde_json::from_str::<JointPmf2>(r#"{"n1":1,"n2":2,"p":[[0.7,0.7]]}"#).is_err());
    }
}
