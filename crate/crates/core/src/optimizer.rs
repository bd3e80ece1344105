//! Numerical search over auxiliary channels `p(u|x1,x2)`.
//!
//! Every objective is a function of the Gray-Wyner corner of the channel,
//! and none of them is convex in the channel. The search is a projected
//! gradient method on a product of probability simplices with central
//! difference gradients and step halving. Results are estimates: the best
//! feasible value seen across restarts, together with the channel that
//! attains it.
//!
//! Markov parametrizations describe the channel through a factorization
//! `q(x1,x2) = Σ_u p(u) p(x1|u) p(x2|u)`. The factorization is pulled
//! towards the source pmf by a quadratic penalty whose weight grows tenfold
//! per outer round, followed by EM sweeps that shrink the remaining
//! mismatch. The channel handed to the objective is always the Bayes
//! posterior of the factorization applied to the true pmf, so every
//! candidate is a valid `AuxChannel`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::achievable::{r_ach_value, OperatingPoint};
use crate::bounds::r_lb_gw_u_corner;
use crate::error::{Error, Result};
use crate::gray_wyner::{
    dsbs_p1, symmetry_defect_flat, triple_entropies, wyner_aux_dsbs, AuxChannel, RateTriplet,
    MARKOV_TOL, SYMMETRY_TOL,
};
use crate::info::{Bits, JointPmf2};

/// Maximal total-variation gap between a Markov factorization and the source.
pub const FACTOR_TV_TOL: f64 = 1e-8;

const FD_STEP: f64 = 1e-6;
const MAX_PENALTY_ROUNDS: usize = 10;
const EM_SWEEPS: usize = 20_000;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step: f64,
    pub tol: f64,
    pub markov_tol: f64,
    pub seed: u64,
    /// Auxiliary alphabet size; `None` means `n1 * n2 + 2`.
    pub nu: Option<usize>,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 2000,
            step: 0.1,
            tol: 1e-10,
            markov_tol: MARKOV_TOL,
            seed: 0,
            nu: None,
        }
    }
}

impl OptimizerConfig {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn resolve_nu(&self, j: &JointPmf2) -> Result<usize> {
        let cap = j.n1() * j.n2() + 2;
        let nu = self.nu.unwrap_or(cap);
        if nu == 0 || nu > cap {
            return Err(Error::OutOfRange {
                name: "nu",
                value: nu as f64,
                range: format!("[1, {cap}]"),
            });
        }
        if self.restarts == 0 {
            return Err(Error::OutOfRange {
                name: "restarts",
                value: 0.0,
                range: ">= 1".into(),
            });
        }
        Ok(nu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parametrization {
    /// Raw columns `p(u|x1,x2)`.
    Free,
    /// `p(u)`, `p(x1|u)`, `p(x2|u)`.
    Markov,
    /// `p(u)` and a shared `p(x|u)`.
    MarkovSymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Objective {
    /// Minimize the GW-class lower bound at memory `m`.
    MinRlbGw { m: Bits },
    /// Maximize `½ min(H(X1|U), H(X2|U))` subject to `X1 - U - X2`.
    MaxHalfMinCond,
    /// Minimize the GW-LFU-TC rate at memory `m` (symmetric channels).
    MinRubGw { m: Bits },
    /// Minimize the componentwise excess of the corner over
    /// `(I(X1;X2), H(X1|X2), H(X2|X1))`.
    MinMiCornerExcess,
}

impl Objective {
    fn maximize(&self) -> bool {
        matches!(self, Objective::MaxHalfMinCond)
    }

    fn needs_markov(&self) -> bool {
        matches!(self, Objective::MaxHalfMinCond)
    }

    fn value(&self, c: &RateTriplet, target: &RateTriplet) -> f64 {
        match *self {
            Objective::MinRlbGw { m } => r_lb_gw_u_corner(c, m).value,
            Objective::MaxHalfMinCond => 0.5 * c.r1.min(c.r2),
            Objective::MinRubGw { m } => r_ach_value(
                &OperatingPoint {
                    r0: c.r0,
                    rho: c.r1.max(c.r2),
                },
                m,
            ),
            Objective::MinMiCornerExcess => {
                (c.r0 - target.r0).max(0.0) + (c.r1 - target.r1).max(0.0) + (c.r2 - target.r2).max(0.0)
            }
        }
    }
}

/// Outcome of one start point.
#[derive(Debug, Clone, Serialize)]
pub struct RestartTrace {
    pub index: usize,
    pub start: String,
    pub value: Option<f64>,
    pub feasible: bool,
    pub iterations: usize,
    pub factor_tv: f64,
    /// Penalized objective after every accepted step, one vector per round.
    #[serde(skip)]
    pub accepted: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeResult {
    pub value: f64,
    pub witness: AuxChannel,
    /// Label of the start point that produced the witness.
    pub source: String,
    /// Best value among the analytic seeds alone.
    pub best_seed_value: Option<f64>,
    pub restarts: Vec<RestartTrace>,
}

/// Simplex blocks of a parameter vector.
#[derive(Debug, Clone)]
struct Layout {
    mode: Parametrization,
    nu: usize,
    n1: usize,
    n2: usize,
    blocks: Vec<(usize, usize)>,
}

impl Layout {
    fn new(mode: Parametrization, nu: usize, j: &JointPmf2) -> Result<Self> {
        let (n1, n2) = (j.n1(), j.n2());
        let mut blocks = Vec::new();
        let push = |len: usize, count: usize, blocks: &mut Vec<(usize, usize)>| {
            for _ in 0..count {
                let off = blocks.last().map_or(0, |(o, l)| o + l);
                blocks.push((off, len));
            }
        };
        match mode {
            Parametrization::Free => push(nu, n1 * n2, &mut blocks),
            Parametrization::Markov => {
                push(nu, 1, &mut blocks);
                push(n1, nu, &mut blocks);
                push(n2, nu, &mut blocks);
            }
            Parametrization::MarkovSymmetric => {
                if n1 != n2 {
                    return Err(Error::Dimension(format!(
                        "symmetric parametrization needs equal alphabets, got {n1}x{n2}"
                    )));
                }
                push(nu, 1, &mut blocks);
                push(n1, nu, &mut blocks);
            }
        }
        Ok(Self {
            mode,
            nu,
            n1,
            n2,
            blocks,
        })
    }

    fn len(&self) -> usize {
        self.blocks.last().map_or(0, |(o, l)| o + l)
    }

    fn is_markov(&self) -> bool {
        self.mode != Parametrization::Free
    }

    /// `(p(u), p(x1|u) flat, p(x2|u) flat)` views for Markov modes.
    fn factors<'a>(&self, x: &'a [f64]) -> (&'a [f64], &'a [f64], &'a [f64]) {
        let nu = self.nu;
        let pu = &x[..nu];
        let f1 = &x[nu..nu + nu * self.n1];
        let f2 = match self.mode {
            Parametrization::MarkovSymmetric => f1,
            _ => &x[nu + nu * self.n1..nu + nu * self.n1 + nu * self.n2],
        };
        (pu, f1, f2)
    }

    /// Factorized joint `q(u, cell)` laid out `[u * cells + cell]`.
    fn factor_joint(&self, x: &[f64]) -> Vec<f64> {
        let (pu, f1, f2) = self.factors(x);
        let cells = self.n1 * self.n2;
        let mut q = vec![0.0; self.nu * cells];
        for u in 0..self.nu {
            for a in 0..self.n1 {
                let base = pu[u].max(0.0) * f1[u * self.n1 + a].max(0.0);
                for b in 0..self.n2 {
                    q[u * cells + a * self.n2 + b] = base * f2[u * self.n2 + b].max(0.0);
                }
            }
        }
        q
    }

    /// Channel columns (flat, column-major) for parameter vector `x`.
    fn channel(&self, x: &[f64]) -> Vec<f64> {
        let cells = self.n1 * self.n2;
        if !self.is_markov() {
            return x.iter().map(|v| v.max(0.0)).collect();
        }
        let q = self.factor_joint(x);
        AuxChannel::from_joint(self.nu, cells, &q).flat().to_vec()
    }

    /// Squared Euclidean and total-variation gaps between `Σ_u q` and `p`.
    fn factor_gap(&self, x: &[f64], p: &[f64]) -> (f64, f64) {
        let cells = self.n1 * self.n2;
        let q = self.factor_joint(x);
        let mut sq = 0.0;
        let mut tv = 0.0;
        for (c, pc) in p.iter().enumerate() {
            let qc: f64 = (0..self.nu).map(|u| q[u * cells + c]).sum();
            sq += (qc - pc).powi(2);
            tv += (qc - pc).abs();
        }
        (sq, 0.5 * tv)
    }

    /// Parameter vector reproducing a given channel (exactly in free mode,
    /// through the posterior factors of `r = w p` in Markov modes).
    fn encode(&self, a: &AuxChannel, j: &JointPmf2) -> Option<Vec<f64>> {
        if a.nu() > self.nu {
            return None;
        }
        let a = a.padded(self.nu);
        let w = a.flat();
        if !self.is_markov() {
            return Some(w.to_vec());
        }
        let (nu, n1, n2) = (self.nu, self.n1, self.n2);
        let mut pu = vec![0.0; nu];
        let mut f1 = vec![0.0; nu * n1];
        let mut f2 = vec![0.0; nu * n2];
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                let c = x1 * n2 + x2;
                for u in 0..nu {
                    let r = w[c * nu + u] * j.get(x1, x2);
                    pu[u] += r;
                    f1[u * n1 + x1] += r;
                    f2[u * n2 + x2] += r;
                }
            }
        }
        normalize_rows(&mut f1, &pu, n1);
        normalize_rows(&mut f2, &pu, n2);
        let mut x = pu;
        if self.mode == Parametrization::MarkovSymmetric {
            x.extend(f1.iter().zip(&f2).map(|(a, b)| 0.5 * (a + b)));
        } else {
            x.extend(f1);
            x.extend(f2);
        }
        Some(x)
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut x = vec![0.0; self.len()];
        for &(off, len) in &self.blocks {
            // Dirichlet(1, ..., 1) through normalized exponentials.
            let block = &mut x[off..off + len];
            for v in block.iter_mut() {
                let u: f64 = rng.random();
                *v = -(1.0 - u).ln();
            }
            let s: f64 = block.iter().sum();
            block.iter_mut().for_each(|v| *v /= s);
        }
        x
    }

    fn project(&self, x: &mut [f64]) {
        for &(off, len) in &self.blocks {
            project_simplex(&mut x[off..off + len]);
        }
    }

    /// One EM sweep pulling the factorization towards `p`.
    fn em_sweep(&self, x: &mut [f64], p: &[f64]) {
        let (nu, n1, n2) = (self.nu, self.n1, self.n2);
        let cells = n1 * n2;
        let q = self.factor_joint(x);
        let mut pu = vec![0.0; nu];
        let mut f1 = vec![0.0; nu * n1];
        let mut f2 = vec![0.0; nu * n2];
        for a in 0..n1 {
            for b in 0..n2 {
                let c = a * n2 + b;
                let qc: f64 = (0..nu).map(|u| q[u * cells + c]).sum();
                if qc <= 0.0 || p[c] == 0.0 {
                    continue;
                }
                for u in 0..nu {
                    let r = q[u * cells + c] * p[c] / qc;
                    pu[u] += r;
                    f1[u * n1 + a] += r;
                    f2[u * n2 + b] += r;
                }
            }
        }
        normalize_rows(&mut f1, &pu, n1);
        normalize_rows(&mut f2, &pu, n2);
        let s: f64 = pu.iter().sum();
        pu.iter_mut().for_each(|v| *v /= s);
        x[..nu].copy_from_slice(&pu);
        match self.mode {
            Parametrization::MarkovSymmetric => {
                for (k, v) in x[nu..nu + nu * n1].iter_mut().enumerate() {
                    *v = 0.5 * (f1[k] + f2[k]);
                }
            }
            _ => {
                x[nu..nu + nu * n1].copy_from_slice(&f1);
                x[nu + nu * n1..nu + nu * n1 + nu * n2].copy_from_slice(&f2);
            }
        }
    }
}

fn normalize_rows(f: &mut [f64], mass: &[f64], n: usize) {
    for (u, row) in f.chunks_mut(n).enumerate() {
        if mass[u] > 0.0 {
            row.iter_mut().for_each(|v| *v /= mass[u]);
        } else {
            row.iter_mut().for_each(|v| *v = 1.0 / n as f64);
        }
    }
}

/// Euclidean projection onto the probability simplex.
pub(crate) fn project_simplex(v: &mut [f64]) {
    let mut s: Vec<f64> = v.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, &x) in s.iter().enumerate() {
        cum += x;
        let t = (cum - 1.0) / (k + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    for x in v.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
}

struct Problem<'a> {
    j: &'a JointPmf2,
    objective: Objective,
    layout: Layout,
    target: RateTriplet,
    cfg: &'a OptimizerConfig,
    needs_symmetric: bool,
}

impl Problem<'_> {
    /// Objective in natural orientation for a flat channel.
    fn eval_channel(&self, w: &[f64]) -> (f64, f64) {
        let t = triple_entropies(self.j, self.layout.nu, w);
        (self.objective.value(&t.corner(), &self.target), t.markov_defect())
    }

    /// Minimization form of the objective (plus penalty) at parameters `x`.
    fn loss(&self, x: &[f64], weight: f64) -> f64 {
        let (v, _) = self.eval_channel(&self.layout.channel(x));
        let mut loss = if self.objective.maximize() { -v } else { v };
        if self.layout.is_markov() {
            loss += weight * self.layout.factor_gap(x, self.j.probs()).0;
        }
        loss
    }

    fn descend(&self, x: &mut Vec<f64>, weight: f64, history: &mut Vec<f64>) -> usize {
        let n = x.len();
        let mut fx = self.loss(x, weight);
        let mut step = self.cfg.step;
        let mut grad = vec![0.0; n];
        let mut probe = x.clone();
        let mut iters = 0;
        while iters < self.cfg.max_iters {
            iters += 1;
            for k in 0..n {
                let orig = probe[k];
                probe[k] = orig + FD_STEP;
                let up = self.loss(&probe, weight);
                probe[k] = orig - FD_STEP;
                let down = self.loss(&probe, weight);
                probe[k] = orig;
                grad[k] = (up - down) / (2.0 * FD_STEP);
            }
            let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
            if gnorm == 0.0 || !gnorm.is_finite() {
                break;
            }
            let mut accepted = false;
            while step > 1e-14 {
                let mut cand: Vec<f64> = x.iter().zip(&grad).map(|(v, g)| v - step * g).collect();
                self.layout.project(&mut cand);
                let fc = self.loss(&cand, weight);
                if fc < fx {
                    let gain = fx - fc;
                    *x = cand;
                    probe.copy_from_slice(x);
                    fx = fc;
                    history.push(fx);
                    step *= 1.25;
                    accepted = true;
                    if gain < self.cfg.tol {
                        return iters;
                    }
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        iters
    }

    /// Runs one restart from `x`, returning the final parameters.
    fn run(&self, mut x: Vec<f64>, trace: &mut RestartTrace) -> Vec<f64> {
        if !self.layout.is_markov() {
            let mut hist = Vec::new();
            trace.iterations += self.descend(&mut x, 0.0, &mut hist);
            trace.accepted.push(hist);
            return x;
        }
        let p = self.j.probs();
        let mut weight = 1.0;
        for _ in 0..MAX_PENALTY_ROUNDS {
            let mut hist = Vec::new();
            trace.iterations += self.descend(&mut x, weight, &mut hist);
            trace.accepted.push(hist);
            if self.layout.factor_gap(&x, p).1 <= FACTOR_TV_TOL {
                break;
            }
            weight *= 10.0;
        }
        for _ in 0..EM_SWEEPS {
            if self.layout.factor_gap(&x, p).1 <= 1e-3 * FACTOR_TV_TOL {
                break;
            }
            self.layout.em_sweep(&mut x, p);
        }
        x
    }

    /// Natural-orientation value if the channel satisfies the objective's
    /// constraints.
    fn feasible_value(&self, w: &[f64], nu: usize) -> Option<f64> {
        let t = triple_entropies(self.j, nu, w);
        if self.objective.needs_markov() && t.markov_defect() > self.cfg.markov_tol {
            return None;
        }
        if self.needs_symmetric && symmetry_defect_flat(self.j, nu, w) > SYMMETRY_TOL {
            return None;
        }
        Some(self.objective.value(&t.corner(), &self.target))
    }

    fn better(&self, a: (f64, &[f64]), b: (f64, &[f64])) -> bool {
        if a.0 != b.0 {
            return if self.objective.maximize() {
                a.0 > b.0
            } else {
                a.0 < b.0
            };
        }
        lexicographic_lt(a.1, b.1)
    }
}

fn lexicographic_lt(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            _ => {}
        }
    }
    a.len() < b.len()
}

/// Per-restart generator: ChaCha8 keyed by `seed`, stream `restart + 1`.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64 + 1);
    rng
}

/// Analytic warm starts that are always evaluated: constant `U`,
/// `U = (X1, X2)`, Wyner's channel for a binary symmetric pmf, and the
/// common-part extractor when the support splits into several blocks.
pub fn seeded_witnesses(j: &JointPmf2) -> Vec<(String, AuxChannel)> {
    let cells = j.n1() * j.n2();
    let mut out = vec![
        ("constant".to_string(), AuxChannel::constant(cells)),
        ("identity".to_string(), AuxChannel::identity(cells)),
    ];
    if j.n1() == 2 && j.n2() == 2 && j.is_symmetric(1e-12) {
        let m = j.probs();
        let p0 = m[1] + m[2];
        let marginal_uniform = (m[0] + m[1] - 0.5).abs() <= 1e-12;
        if marginal_uniform && p0 <= 0.5 {
            if let Ok(a) = dsbs_p1(p0).and_then(|p1| wyner_aux_dsbs(p0, p1, false)) {
                out.push(("wyner".to_string(), a));
            }
        }
    }
    if let Some(a) = common_part_extractor(j) {
        out.push(("common-part".to_string(), a));
    }
    out
}

/// Channel `U = V` where `V` labels the connected components of the
/// bipartite support graph of `p(x1, x2)`; `None` when there is one block.
pub fn common_part_extractor(j: &JointPmf2) -> Option<AuxChannel> {
    let (n1, n2) = (j.n1(), j.n2());
    // union-find over n1 + n2 nodes
    let mut parent: Vec<usize> = (0..n1 + n2).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in 0..n1 {
        for b in 0..n2 {
            if j.get(a, b) > 0.0 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, n1 + b));
                parent[ra] = rb;
            }
        }
    }
    let m1 = j.marginal1();
    let mut roots: Vec<usize> = Vec::new();
    let mut label_of = vec![usize::MAX; n1];
    for a in 0..n1 {
        if m1[a] == 0.0 {
            continue;
        }
        let r = find(&mut parent, a);
        let k = roots.iter().position(|&x| x == r).unwrap_or_else(|| {
            roots.push(r);
            roots.len() - 1
        });
        label_of[a] = k;
    }
    if roots.len() < 2 {
        return None;
    }
    let labels: Vec<usize> = (0..n1)
        .flat_map(|a| std::iter::repeat_n(label_of[a].min(roots.len() - 1), n2))
        .collect();
    AuxChannel::deterministic(roots.len(), &labels).ok()
}

/// Searches auxiliary channels for the best value of `objective`.
pub fn optimize(
    j: &JointPmf2,
    objective: Objective,
    mode: Parametrization,
    cfg: &OptimizerConfig,
) -> Result<OptimizeResult> {
    let nu = cfg.resolve_nu(j)?;
    let layout = Layout::new(mode, nu, j)?;
    let m = j.measures();
    let problem = Problem {
        j,
        objective,
        layout,
        target: RateTriplet::new(m.mutual_info, m.h1_given_2, m.h2_given_1),
        cfg,
        needs_symmetric: mode == Parametrization::MarkovSymmetric
            || matches!(objective, Objective::MinRubGw { .. }),
    };
    let seeds = seeded_witnesses(j);

    let mut traces: Vec<RestartTrace> = Vec::new();
    let mut best: Option<(f64, AuxChannel, String)> = None;
    let consider = |value: Option<f64>, a: &AuxChannel, label: &str, best: &mut Option<(f64, AuxChannel, String)>| {
        if let Some(v) = value {
            let replace = match best {
                None => true,
                Some((bv, ba, _)) => problem.better((v, a.flat()), (*bv, ba.flat())),
            };
            if replace {
                *best = Some((v, a.clone(), label.to_string()));
            }
        }
    };

    for (k, (name, a)) in seeds.iter().enumerate() {
        let value = problem.feasible_value(a.flat(), a.nu());
        traces.push(RestartTrace {
            index: k,
            start: format!("seed:{name}"),
            value,
            feasible: value.is_some(),
            iterations: 0,
            factor_tv: 0.0,
            accepted: Vec::new(),
        });
        consider(value, a, &format!("seed:{name}"), &mut best);
    }
    let best_seed_value = best.as_ref().map(|b| b.0);

    let runs: Vec<(RestartTrace, AuxChannel)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let (start, x0) = match seeds.get(r).and_then(|(n, a)| problem.layout.encode(a, j).map(|x| (n, x))) {
                Some((name, x)) => (format!("warm:{name}"), x),
                None => ("random".to_string(), problem.layout.random(&mut restart_rng(cfg.seed, r))),
            };
            let mut trace = RestartTrace {
                index: seeds.len() + r,
                start,
                value: None,
                feasible: false,
                iterations: 0,
                factor_tv: 0.0,
                accepted: Vec::new(),
            };
            let x = problem.run(x0, &mut trace);
            let w = problem.layout.channel(&x);
            trace.factor_tv = if problem.layout.is_markov() {
                problem.layout.factor_gap(&x, j.probs()).1
            } else {
                0.0
            };
            let a = AuxChannel::from_flat(nu, w);
            if trace.factor_tv <= FACTOR_TV_TOL {
                trace.value = problem.feasible_value(a.flat(), nu);
            }
            trace.feasible = trace.value.is_some();
            (trace, a)
        })
        .collect();

    for (trace, a) in runs {
        consider(trace.value, &a, &format!("restart:{}", trace.index), &mut best);
        traces.push(trace);
    }

    match best {
        Some((value, witness, source)) => Ok(OptimizeResult {
            value,
            witness,
            source,
            best_seed_value,
            restarts: traces,
        }),
        None => Err(Error::Infeasible(format!(
            "no start point satisfied the constraints of {objective:?}"
        ))),
    }
}

/// Re-evaluates an objective at a channel (no feasibility filtering).
pub fn evaluate(j: &JointPmf2, objective: Objective, a: &AuxChannel) -> Result<f64> {
    let c = crate::gray_wyner::gw_corner(j, a)?;
    let m = j.measures();
    Ok(objective.value(&c, &RateTriplet::new(m.mutual_info, m.h1_given_2, m.h2_given_1)))
}
