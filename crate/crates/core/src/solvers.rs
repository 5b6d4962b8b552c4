//! Largest H-eigenvalue solvers.
//!
//! * [`nqz_max`]: min/max-ratio power iteration for the nonnegative tensors
//!   `A` and `Q`. On a connected hypergraph both are weakly irreducible, so
//!   the ratio bounds sandwich the spectral radius and close monotonically.
//! * [`laplacian_max_even`]: for even `k`, `λ(L)` is the maximum of `L x^k`
//!   on the unit k-norm sphere. A shifted fixed-point ascent from many starts
//!   climbs that objective; each run ends with a Newton polish on the
//!   eigen-equations.
//! * [`multistart_max`]: the same machinery for any operator and parity.
//!   For odd `k` there is no variational characterization, so the result is
//!   a verified eigenpair that only bounds `λ(L)` from below.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::Hypergraph;
use crate::structure::odd_bipartition;
use crate::tensor::{adjacency_into, ipow, max_deviation, normalize_max, residual, EigenPair, OperatorKind, TensorError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("hypergraph is not connected")]
    NotConnected,
    #[error("k = {k} has the wrong parity for this solver")]
    BadParity { k: usize },
    #[error("operator {0:?} is not supported by this solver")]
    UnsupportedOperator(OperatorKind),
    #[error("invalid solver configuration: {0}")]
    BadConfig(String),
    #[error("no convergence; best estimate lambda = {}", .0.pair.lambda)]
    NoConvergence(Box<SolveOutcome>),
    #[error("no start produced a verified eigenpair")]
    NoVerifiedPair,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shift {
    /// Operator-dependent default: 1 for NQZ on `A`, 0 for NQZ on `Q`, and the
    /// maximum degree for the ascent solvers.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iters: usize,
    pub shift: Shift,
    /// Random starts for the ascent solvers, on top of the structured ones.
    pub starts: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { tol: 1e-10, max_iters: 10_000, shift: Shift::Auto, starts: 64, seed: 0 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.tol > 0.0) {
            return Err(SolverError::BadConfig(format!("tol = {} must be positive", self.tol)));
        }
        if self.max_iters == 0 {
            return Err(SolverError::BadConfig("max_iters must be at least 1".into()));
        }
        if self.starts == 0 {
            return Err(SolverError::BadConfig("starts must be at least 1".into()));
        }
        if let Shift::Fixed(s) = self.shift {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(SolverError::BadConfig(format!("shift = {s} must be finite and nonnegative")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Nqz,
    ShiftedAscent,
    Multistart,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub pair: EigenPair,
    pub converged: bool,
    /// Per-iteration `(lower, upper)` estimates. NQZ records the min/max ratio
    /// bounds; the ascent solvers record the winning run's objective twice.
    pub lambda_history: Vec<(f64, f64)>,
    pub method: Method,
    /// True when `pair.lambda` is only known to bound the largest eigenvalue
    /// from below.
    pub heuristic: bool,
}

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("HYPERSPEC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
            builder = builder.num_threads(n.max(1));
        }
        builder.build().expect("failed to build solver thread pool")
    })
}

/// NQZ power iteration for the spectral radius of `A` or `Q`.
pub fn nqz_max(kind: OperatorKind, g: &Hypergraph, cfg: &SolverConfig) -> Result<SolveOutcome, SolverError> {
    cfg.validate()?;
    if !matches!(kind, OperatorKind::Adjacency | OperatorKind::SignlessLaplacian) {
        return Err(SolverError::UnsupportedOperator(kind));
    }
    if !g.is_connected() {
        return Err(SolverError::NotConnected);
    }
    let shift = match cfg.shift {
        Shift::Auto if kind == OperatorKind::Adjacency => 1.0,
        Shift::Auto => 0.0,
        Shift::Fixed(s) => s,
    };
    let k = g.k();
    let degrees = g.degree_profile().degrees;
    let op = Operator::new(kind, g, &degrees);

    let mut x = vec![1.0; g.n()];
    let mut y = vec![0.0; g.n()];
    let mut history = Vec::new();
    for _ in 0..cfg.max_iters {
        op.apply_shifted(&x, shift, &mut y);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (&yi, &xi) in y.iter().zip(&x) {
            let r = yi / ipow(xi, k - 1);
            lo = lo.min(r);
            hi = hi.max(r);
        }
        history.push((lo - shift, hi - shift));
        if hi - lo <= cfg.tol {
            let pair = EigenPair::new(kind, g, 0.5 * (lo + hi) - shift, x)?;
            let converged = pair.residual <= cfg.tol;
            return Ok(SolveOutcome { pair, converged, lambda_history: history, method: Method::Nqz, heuristic: false });
        }
        let root = 1.0 / (k - 1) as f64;
        let top = y.iter().fold(0.0f64, |m, v| m.max(*v));
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = (yi / top).powf(root);
        }
    }
    let (lo, hi) = *history.last().unwrap();
    let pair = EigenPair::new(kind, g, 0.5 * (lo + hi), x)?;
    Err(SolverError::NoConvergence(Box::new(SolveOutcome {
        pair,
        converged: false,
        lambda_history: history,
        method: Method::Nqz,
        heuristic: false,
    })))
}

/// `λ(L)` for even `k` by shifted ascent on the unit k-norm sphere.
pub fn laplacian_max_even(g: &Hypergraph, cfg: &SolverConfig) -> Result<SolveOutcome, SolverError> {
    if g.k() % 2 == 1 {
        return Err(SolverError::BadParity { k: g.k() });
    }
    let mut out = ascent_search(OperatorKind::Laplacian, g, cfg)?;
    out.method = Method::ShiftedAscent;
    out.heuristic = false;
    Ok(out)
}

/// Best verified eigenpair over structured and random starts. A lower bound
/// on the largest H-eigenvalue in general.
pub fn multistart_max(kind: OperatorKind, g: &Hypergraph, cfg: &SolverConfig) -> Result<SolveOutcome, SolverError> {
    ascent_search(kind, g, cfg)
}

/// `residual(kind, g, λ, x) <= tol`.
pub fn verify_pair(kind: OperatorKind, g: &Hypergraph, lambda: f64, x: &[f64], tol: f64) -> Result<bool, TensorError> {
    Ok(residual(kind, g, lambda, x)? <= tol)
}

/// Start vectors used by the ascent solvers, in evaluation order.
pub fn start_vectors(g: &Hypergraph, cfg: &SolverConfig) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut starts = vec![vec![1.0; n]];
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        starts.push(e);
    }
    let half = n.div_ceil(2);
    starts.push((0..n).map(|i| if i < half { 1.0 } else { -1.0 }).collect());
    starts.push((0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect());
    if g.k() % 2 == 0 {
        if let Ok(p) = odd_bipartition(g) {
            if p.feasible {
                starts.push(p.side.iter().map(|&s| if s { 1.0 } else { -1.0 }).collect());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.starts {
        starts.push((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect());
    }
    starts
}

fn ascent_search(kind: OperatorKind, g: &Hypergraph, cfg: &SolverConfig) -> Result<SolveOutcome, SolverError> {
    cfg.validate()?;
    let degrees = g.degree_profile().degrees;
    let rho = match cfg.shift {
        Shift::Auto => degrees.iter().copied().max().unwrap_or(0) as f64,
        Shift::Fixed(s) => s,
    };
    let op = Operator::new(kind, g, &degrees);
    let starts = start_vectors(g, cfg);
    let runs: Vec<Option<Run>> = pool().install(|| starts.par_iter().map(|x0| op.ascend(x0, rho, cfg)).collect());

    let mut verified: Vec<Run> = runs.into_iter().flatten().filter(|r| r.pair.residual <= cfg.tol).collect();
    if verified.is_empty() {
        return Err(SolverError::NoVerifiedPair);
    }
    // argmax λ; near-ties go to the lexicographically smallest normalized vector
    let best_lambda = verified.iter().map(|r| r.pair.lambda).fold(f64::NEG_INFINITY, f64::max);
    verified.retain(|r| r.pair.lambda >= best_lambda - cfg.tol);
    let best = verified
        .into_iter()
        .min_by(|a, b| {
            let (ka, kb) = (canonical(&a.pair.x), canonical(&b.pair.x));
            ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap();
    Ok(SolveOutcome {
        pair: best.pair,
        converged: true,
        lambda_history: best.history.into_iter().map(|l| (l, l)).collect(),
        method: Method::Multistart,
        heuristic: true,
    })
}

/// Max-norm scaling with the first largest-magnitude entry made positive.
fn canonical(x: &[f64]) -> Vec<f64> {
    let (mut idx, mut m) = (0, 0.0f64);
    for (i, v) in x.iter().enumerate() {
        if v.abs() > m {
            m = v.abs();
            idx = i;
        }
    }
    let s = if x[idx] < 0.0 { -m } else { m };
    x.iter().map(|v| v / s).collect()
}

struct Run {
    pair: EigenPair,
    history: Vec<f64>,
}

struct Operator<'a> {
    kind: OperatorKind,
    g: &'a Hypergraph,
    degrees: &'a [usize],
}

// Newton on the dense (n+1)-square system is skipped beyond this size.
const POLISH_MAX_N: usize = 600;
// Start polishing once the residual is this small relative to scale.
const POLISH_TRIGGER: f64 = 1e-5;

impl<'a> Operator<'a> {
    fn new(kind: OperatorKind, g: &'a Hypergraph, degrees: &'a [usize]) -> Self {
        Self { kind, g, degrees }
    }

    fn coeffs(&self) -> (f64, f64) {
        match self.kind {
            OperatorKind::Adjacency => (0.0, 1.0),
            OperatorKind::Degree => (1.0, 0.0),
            OperatorKind::Laplacian => (1.0, -1.0),
            OperatorKind::SignlessLaplacian => (1.0, 1.0),
        }
    }

    /// `out = T x^{k-1} + shift x^{[k-1]}`
    fn apply_shifted(&self, x: &[f64], shift: f64, out: &mut [f64]) {
        let k = self.g.k();
        let (dc, ac) = self.coeffs();
        for ((o, &xi), &d) in out.iter_mut().zip(x).zip(self.degrees) {
            *o = (dc * d as f64 + shift) * ipow(xi, k - 1);
        }
        if ac != 0.0 {
            adjacency_into(self.g, x, out, ac);
        }
    }

    fn ascend(&self, x0: &[f64], rho: f64, cfg: &SolverConfig) -> Option<Run> {
        let k = self.g.k();
        let even = k % 2 == 0;
        let root = 1.0 / (k - 1) as f64;
        let mut x = normalize_max(x0)?;
        let mut y = vec![0.0; x.len()];
        let mut history = Vec::new();
        let mut last_polish = f64::INFINITY;

        for _ in 0..cfg.max_iters {
            self.apply_shifted(&x, 0.0, &mut y);
            let lambda = ls_lambda(&y, &x, k)?;
            history.push(lambda);
            let res = max_deviation(&y, &x, lambda, k);
            let scale = lambda.abs().max(1.0);
            if res <= 0.1 * cfg.tol {
                return self.finish(lambda, x, history);
            }
            if res <= POLISH_TRIGGER * scale && res < 1e-3 * last_polish {
                last_polish = res;
                if let Some((lp, xp)) = self.polish(lambda, &x, cfg.tol) {
                    if (lp - lambda).abs() <= 1e-3 * scale {
                        return self.finish(lp, xp, history);
                    }
                }
            }
            // y <- T x^{k-1} + rho x^{[k-1]}, then its (k-1)-th root
            for (yi, &xi) in y.iter_mut().zip(&x) {
                *yi += rho * ipow(xi, k - 1);
            }
            for (xi, &yi) in x.iter_mut().zip(&y) {
                let mag = yi.abs().powf(root);
                let sign = if even || *xi == 0.0 { yi.signum() } else { xi.signum() };
                *xi = if yi == 0.0 { 0.0 } else { sign * mag };
            }
            x = normalize_max(&x)?;
        }
        self.apply_shifted(&x, 0.0, &mut y);
        let lambda = ls_lambda(&y, &x, k)?;
        self.polish(lambda, &x, cfg.tol)
            .and_then(|(lp, xp)| self.finish(lp, xp, history.clone()))
            .or_else(|| self.finish(lambda, x, history))
    }

    fn finish(&self, lambda: f64, x: Vec<f64>, history: Vec<f64>) -> Option<Run> {
        let pair = EigenPair::new(self.kind, self.g, lambda, x).ok()?;
        pair.residual.is_finite().then_some(Run { pair, history })
    }

    /// Newton on `T x^{k-1} - λ x^{[k-1]} = 0`, `c·x = 1` with `c = x0/|x0|²`.
    fn polish(&self, lambda0: f64, x0: &[f64], tol: f64) -> Option<(f64, Vec<f64>)> {
        let n = x0.len();
        if n > POLISH_MAX_N {
            return None;
        }
        let k = self.g.k();
        let (dc, ac) = self.coeffs();
        let norm2: f64 = x0.iter().map(|v| v * v).sum();
        let c: Vec<f64> = x0.iter().map(|v| v / norm2).collect();
        let mut x = x0.to_vec();
        let mut lambda = lambda0;
        let mut y = vec![0.0; n];
        let mut best: Option<(f64, f64, Vec<f64>)> = None;

        for _ in 0..40 {
            self.apply_shifted(&x, 0.0, &mut y);
            let xs = normalize_max(&x)?;
            let mx = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let res = max_deviation(&y, &x, lambda, k) / ipow(mx, k - 1);
            if !res.is_finite() {
                break;
            }
            if best.as_ref().is_none_or(|b| res < b.0) {
                best = Some((res, lambda, xs));
            }
            if res <= 1e-3 * tol {
                break;
            }
            let mut jac = DMatrix::<f64>::zeros(n + 1, n + 1);
            let mut rhs = DVector::<f64>::zeros(n + 1);
            for i in 0..n {
                rhs[i] = -(y[i] - lambda * ipow(x[i], k - 1));
                jac[(i, i)] += (dc * self.degrees[i] as f64 - lambda) * (k - 1) as f64 * ipow(x[i], k - 2);
                jac[(i, n)] = -ipow(x[i], k - 1);
                jac[(n, i)] = c[i];
            }
            rhs[n] = -(c.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - 1.0);
            if ac != 0.0 {
                for e in self.g.edges() {
                    for (p, &vi) in e.iter().enumerate() {
                        for (q, &vj) in e.iter().enumerate() {
                            if p == q {
                                continue;
                            }
                            let prod: f64 = e
                                .iter()
                                .enumerate()
                                .filter(|&(r, _)| r != p && r != q)
                                .map(|(_, &v)| x[v as usize])
                                .product();
                            jac[(vi as usize, vj as usize)] += ac * prod;
                        }
                    }
                }
            }
            let step = jac.lu().solve(&rhs)?;
            for i in 0..n {
                x[i] += step[i];
            }
            lambda += step[n];
        }
        let (res, lambda, xs) = best?;
        (res <= tol).then_some((lambda, xs))
    }
}

/// Least-squares eigenvalue estimate `argmin_λ |y - λ x^{[k-1]}|`.
fn ls_lambda(y: &[f64], x: &[f64], k: usize) -> Option<f64> {
    let (mut num, mut den) = (0.0, 0.0);
    for (&yi, &xi) in y.iter().zip(x) {
        let p = ipow(xi, k - 1);
        num += yi * p;
        den += p * p;
    }
    (den > 0.0).then(|| num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{hypercycle_signless_lambda, hyperstar_laplacian_lambda, ClosedFormConfig};
    use crate::generate::{complete, hypercycle, hyperstar};

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn nqz_complete_and_regular() {
        let out = nqz_max(OperatorKind::SignlessLaplacian, &complete(4, 3).unwrap(), &cfg()).unwrap();
        assert!(out.converged);
        assert!((out.pair.lambda - 6.0).abs() < 1e-8);
        let out = nqz_max(OperatorKind::SignlessLaplacian, &complete(5, 3).unwrap(), &cfg()).unwrap();
        assert!((out.pair.lambda - 12.0).abs() < 1e-8);
        assert!(out.pair.x.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn nqz_hypercycle_matches_closed_form() {
        let want = hypercycle_signless_lambda(4, &ClosedFormConfig::default()).unwrap().lambda;
        let out = nqz_max(OperatorKind::SignlessLaplacian, &hypercycle(4, 3).unwrap(), &cfg()).unwrap();
        assert!((out.pair.lambda - want).abs() < 1e-8);
    }

    #[test]
    fn nqz_history_sandwich_is_monotone() {
        for g in [hyperstar(3, 4).unwrap(), hypercycle(5, 4).unwrap()] {
            for kind in [OperatorKind::Adjacency, OperatorKind::SignlessLaplacian] {
                let out = nqz_max(kind, &g, &cfg()).unwrap();
                let slack = 1e-12;
                for w in out.lambda_history.windows(2) {
                    assert!(w[0].0 <= w[0].1 + slack);
                    assert!(w[1].0 >= w[0].0 - slack, "{kind:?} lower bound decreased");
                    assert!(w[1].1 <= w[0].1 + slack, "{kind:?} upper bound increased");
                }
                assert!(out.pair.residual <= cfg().tol);
            }
        }
    }

    #[test]
    fn nqz_refuses_disconnected_and_laplacian() {
        let g = Hypergraph::build(6, 3, &[[1, 2, 3], [4, 5, 6]]).unwrap();
        assert_eq!(nqz_max(OperatorKind::SignlessLaplacian, &g, &cfg()).unwrap_err(), SolverError::NotConnected);
        let g = complete(4, 3).unwrap();
        assert!(matches!(
            nqz_max(OperatorKind::Laplacian, &g, &cfg()),
            Err(SolverError::UnsupportedOperator(_))
        ));
    }

    #[test]
    fn nqz_reports_no_convergence() {
        let c = SolverConfig { max_iters: 2, ..cfg() };
        match nqz_max(OperatorKind::SignlessLaplacian, &hyperstar(3, 5).unwrap(), &c) {
            Err(SolverError::NoConvergence(best)) => {
                assert!(!best.converged);
                assert_eq!(best.lambda_history.len(), 2);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn shifted_ascent_hyperstar() {
        let want = hyperstar_laplacian_lambda(4, 2, &ClosedFormConfig::default()).unwrap().root;
        let out = laplacian_max_even(&hyperstar(4, 2).unwrap(), &cfg()).unwrap();
        assert!((out.pair.lambda - want).abs() < 1e-8, "{} vs {want}", out.pair.lambda);
        assert_eq!(out.method, Method::ShiftedAscent);
    }

    #[test]
    fn shifted_ascent_hypercycle_and_single_edge() {
        let out = laplacian_max_even(&hypercycle(4, 3).unwrap(), &cfg()).unwrap();
        assert!((out.pair.lambda - 3.0).abs() < 1e-8);
        let g = Hypergraph::build(4, 4, &[[1, 2, 3, 4]]).unwrap();
        let out = laplacian_max_even(&g, &cfg()).unwrap();
        assert!((out.pair.lambda - 2.0).abs() < 1e-8);
    }

    #[test]
    fn shifted_ascent_rejects_odd_k() {
        assert_eq!(
            laplacian_max_even(&hyperstar(3, 2).unwrap(), &cfg()).unwrap_err(),
            SolverError::BadParity { k: 3 }
        );
    }

    #[test]
    fn multistart_odd_cases() {
        let out = multistart_max(OperatorKind::Laplacian, &hyperstar(3, 3).unwrap(), &cfg()).unwrap();
        assert!((out.pair.lambda - 3.0).abs() < 1e-8);
        assert!(out.heuristic);
        let out = multistart_max(OperatorKind::Laplacian, &complete(4, 3).unwrap(), &cfg()).unwrap();
        assert!(out.pair.lambda >= 4.0 - 1e-10);
        let out = multistart_max(OperatorKind::SignlessLaplacian, &hyperstar(3, 2).unwrap(), &cfg()).unwrap();
        assert!((out.pair.lambda - 2.695_620_769_559_862).abs() < 1e-8);
    }

    #[test]
    fn verify_pair_cases() {
        let g = hyperstar(3, 2).unwrap();
        let mut e = vec![0.0; g.n()];
        e[0] = 1.0;
        assert!(verify_pair(OperatorKind::Laplacian, &g, 2.0, &e, 1e-12).unwrap());
        assert!(!verify_pair(OperatorKind::Laplacian, &g, 2.5, &e, 1e-12).unwrap());
        assert!(verify_pair(OperatorKind::Laplacian, &g, 2.0, &[0.0; 5], 1e-12).is_err());

        let g = hypercycle(4, 3).unwrap();
        let beta = 0.5f64.sqrt();
        let mut x = vec![beta; g.n()];
        for v in crate::generate::hypercycle_intersections(4, 3) {
            x[v] = 1.0;
        }
        assert!(verify_pair(OperatorKind::SignlessLaplacian, &g, 3.0, &x, 1e-9).unwrap());
    }

    #[test]
    fn config_validation() {
        let g = complete(4, 3).unwrap();
        for bad in [
            SolverConfig { tol: 0.0, ..cfg() },
            SolverConfig { max_iters: 0, ..cfg() },
            SolverConfig { starts: 0, ..cfg() },
            SolverConfig { shift: Shift::Fixed(-1.0), ..cfg() },
        ] {
            assert!(matches!(multistart_max(OperatorKind::Laplacian, &g, &bad), Err(SolverError::BadConfig(_))));
        }
    }

    #[test]
    fn canonical_flips_sign() {
        assert_eq!(canonical(&[0.5, -2.0, 1.0]), vec![-0.25, 1.0, -0.5]);
    }
}
