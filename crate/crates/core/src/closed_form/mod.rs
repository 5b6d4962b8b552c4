//! Characteristic equations with certified brackets, and the bound report.
//!
//! Three scalar equations pin down extremal eigenvalues exactly:
//!
//! | equation | bracket | eigenvalue |
//! |----------|---------|------------|
//! | `(1-λ)^{k-1}(λ-d) + d = 0`, k even | `(d, d+1]` | `λ(L)` of a size-d hyperstar |
//! | `α^k + (1-d)α^{k-1} - d = 0` | `(d-1, d]` | `λ(Q) = 1 + α` of a size-d hyperstar |
//! | `2β^k + β^2 - 1 = 0` | `(1/2, 1)` | `λ(Q) = 2 + 2β^{k-2}` of any hypercycle |
//!
//! Each is solved on a wider bracket where the polynomial is provably
//! monotone, then refined with Newton steps in double-double arithmetic so
//! that the polynomial residual stays below tolerance even where the
//! expanded coefficients cancel heavily.

mod poly;
mod root;

pub use poly::{DoubleDouble, Polynomial};
pub use root::{newton_bisect, RootOutcome};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{binomial, Hypergraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("k = {k} has the wrong parity for this equation")]
    BadParity { k: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("root finder did not converge in {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("polynomial residual {residual:e} exceeds tolerance {tol:e}")]
    ResidualNotAttained { residual: f64, tol: f64 },
    #[error("root {root} left its certified interval ({lo}, {hi}]")]
    OutsideInterval { root: f64, lo: f64, hi: f64 },
    #[error("expanded and factored forms disagree at {root}: {expanded:e} vs {factored:e}")]
    FormMismatch { root: f64, expanded: f64, factored: f64 },
    #[error("identity check failed: {lhs} vs {rhs}")]
    IdentityMismatch { lhs: f64, rhs: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormConfig {
    /// Relative bracket width at which the `f64` phase stops.
    pub root_tol: f64,
    /// Bound on `|p(root)|`.
    pub poly_tol: f64,
    pub max_iters: usize,
}

impl Default for ClosedFormConfig {
    fn default() -> Self {
        Self { root_tol: 1e-12, poly_tol: 1e-10, max_iters: 500 }
    }
}

/// A bracketed root of one of the characteristic polynomials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormResult {
    /// `λ`, `α*` or `β` depending on the equation.
    pub root: f64,
    /// The eigenvalue the root determines.
    pub lambda: f64,
    /// Initial bracket; the polynomial changes sign across it.
    pub bracket: (f64, f64),
    /// `|p(root)|` measured in double-double at the refined root; `root` is
    /// that refined root rounded to `f64`.
    pub poly_residual: f64,
    pub iterations: usize,
}

/// `f(λ) = (1-λ)^{k-1}(λ-d) + d`, expanded.
pub fn hyperstar_laplacian_poly(k: usize, d: usize) -> Polynomial {
    let d = d as f64;
    // (1-λ)^{k-1} = Σ_j C(k-1, j) (-1)^j λ^j
    let base: Vec<f64> = (0..k)
        .map(|j| {
            let c = binomial(k - 1, j).unwrap() as f64;
            if j % 2 == 0 { c } else { -c }
        })
        .collect();
    let mut coeffs = vec![0.0; k + 1];
    for (j, &b) in base.iter().enumerate() {
        coeffs[j + 1] += b;
        coeffs[j] -= d * b;
    }
    coeffs[0] += d;
    Polynomial::new(coeffs)
}

fn hyperstar_laplacian_factored(k: usize, d: usize, x: f64) -> f64 {
    (1.0 - x).powi(k as i32 - 1) * (x - d as f64) + d as f64
}

/// `g(α) = α^k + (1-d)α^{k-1} - d`.
pub fn hyperstar_signless_poly(k: usize, d: usize) -> Polynomial {
    let mut coeffs = vec![0.0; k + 1];
    coeffs[k] = 1.0;
    coeffs[k - 1] = 1.0 - d as f64;
    coeffs[0] = -(d as f64);
    Polynomial::new(coeffs)
}

/// `h(β) = 2β^k + β^2 - 1`.
pub fn hypercycle_signless_poly(k: usize) -> Polynomial {
    let mut coeffs = vec![0.0; k + 1];
    coeffs[k] = 2.0;
    coeffs[2] += 1.0;
    coeffs[0] = -1.0;
    Polynomial::new(coeffs)
}

/// Whether the double-double value `x` is strictly greater than `v`. A
/// root can sit closer to a bracket end than one f64 ulp, in which case
/// only the low word tells the two apart.
fn dd_above(x: DoubleDouble, v: f64) -> bool {
    x.hi > v || (x.hi == v && x.lo > 0.0)
}

fn dd_below(x: DoubleDouble, v: f64) -> bool {
    x.hi < v || (x.hi == v && x.lo < 0.0)
}

fn solve_bracketed(
    poly: &Polynomial,
    lo: f64,
    hi: f64,
    cfg: &ClosedFormConfig,
) -> Result<(DoubleDouble, f64, usize), ClosedFormError> {
    let (plo, phi) = (poly.eval_dd(DoubleDouble::from_f64(lo)), poly.eval_dd(DoubleDouble::from_f64(hi)));
    if plo.to_f64().signum() * phi.to_f64().signum() > 0.0 {
        return Err(ClosedFormError::NoSignChange { lo, hi });
    }
    let out = newton_bisect(|x| poly.eval_with_derivative(x), lo, hi, cfg.root_tol, cfg.max_iters)?;

    let derivative = Polynomial::new(
        poly.coeffs().iter().enumerate().skip(1).map(|(j, &c)| j as f64 * c).collect(),
    );
    let mut x = DoubleDouble::from_f64(out.root);
    let mut refine = 0;
    while refine < 8 {
        let px = poly.eval_dd(x);
        let dpx = derivative.eval(x.hi);
        if px.hi == 0.0 || dpx == 0.0 {
            break;
        }
        let step = px.to_f64() / dpx;
        x = x.sub_f64(step);
        refine += 1;
        if step.abs() <= 1e-30 * x.hi.abs().max(1.0) {
            break;
        }
    }
    let residual = poly.eval_dd(x).to_f64().abs();
    if residual > cfg.poly_tol {
        return Err(ClosedFormError::ResidualNotAttained { residual, tol: cfg.poly_tol });
    }
    Ok((x, residual, out.iterations + refine))
}

/// Largest Laplacian H-eigenvalue of a size-`d` hyperstar for even `k`.
///
/// `f` is strictly decreasing on `(d, ∞)` and `f(d) = d > 0`, so the search
/// bracket `(d, d+2)` isolates the root; it always lands in `(d, d+1]`, with
/// `λ = 2` exactly when `d = 1`.
pub fn hyperstar_laplacian_lambda(k: usize, d: usize, cfg: &ClosedFormConfig) -> Result<ClosedFormResult, ClosedFormError> {
    if k < 3 {
        return Err(ClosedFormError::BadParams(format!("k = {k} must be at least 3")));
    }
    if k % 2 == 1 {
        return Err(ClosedFormError::BadParity { k });
    }
    if d == 0 {
        return Err(ClosedFormError::BadParams("hyperstar size d must be at least 1".into()));
    }
    let poly = hyperstar_laplacian_poly(k, d);
    let (lo, hi) = (d as f64, d as f64 + 2.0);
    let (exact, poly_residual, iterations) = solve_bracketed(&poly, lo, hi, cfg)?;
    let root = exact.to_f64();
    if !(dd_above(exact, lo) && !dd_above(exact, d as f64 + 1.0)) {
        return Err(ClosedFormError::OutsideInterval { root, lo, hi: d as f64 + 1.0 });
    }
    let expanded = poly.eval(root);
    let factored = hyperstar_laplacian_factored(k, d, root);
    let slack = 64.0 * f64::EPSILON * poly.magnitude(root);
    if (expanded - factored).abs() > slack {
        return Err(ClosedFormError::FormMismatch { root, expanded, factored });
    }
    Ok(ClosedFormResult { root, lambda: root, bracket: (lo, hi), poly_residual, iterations })
}

/// Largest Laplacian H-eigenvalue of a size-`d` hyperstar for either parity:
/// the even-k root above, and `d` itself for odd `k` (a known value, nothing
/// is solved).
pub fn hyperstar_laplacian_largest(k: usize, d: usize, cfg: &ClosedFormConfig) -> Result<f64, ClosedFormError> {
    if k % 2 == 0 {
        hyperstar_laplacian_lambda(k, d, cfg).map(|r| r.lambda)
    } else if k < 3 || d == 0 {
        Err(ClosedFormError::BadParams(format!("need k >= 3 and d >= 1, got k = {k}, d = {d}")))
    } else {
        Ok(d as f64)
    }
}

/// Largest signless Laplacian H-eigenvalue `1 + α*` of a size-`d` hyperstar.
///
/// `g' = α^{k-2}(kα - (k-1)(d-1)) > 0` on `(d-1, ∞)` and `g(d-1) = -d`, so the
/// search bracket `(d-1, d+1)` isolates `α*`, which lands in `(d-1, d]`.
pub fn hyperstar_signless_lambda(k: usize, d: usize, cfg: &ClosedFormConfig) -> Result<ClosedFormResult, ClosedFormError> {
    if k < 3 || d == 0 {
        return Err(ClosedFormError::BadParams(format!("need k >= 3 and d >= 1, got k = {k}, d = {d}")));
    }
    let poly = hyperstar_signless_poly(k, d);
    let (lo, hi) = (d as f64 - 1.0, d as f64 + 1.0);
    let (exact, poly_residual, iterations) = solve_bracketed(&poly, lo, hi, cfg)?;
    let alpha = exact.to_f64();
    if !(dd_above(exact, lo) && !dd_above(exact, d as f64)) {
        return Err(ClosedFormError::OutsideInterval { root: alpha, lo, hi: d as f64 });
    }
    let lambda = 1.0 + alpha;
    let via_floor = d as f64 + d as f64 * alpha.recip().powi(k as i32 - 1);
    if (lambda - via_floor).abs() > cfg.poly_tol {
        return Err(ClosedFormError::IdentityMismatch { lhs: lambda, rhs: via_floor });
    }
    Ok(ClosedFormResult { root: alpha, lambda, bracket: (lo, hi), poly_residual, iterations })
}

/// Largest signless Laplacian H-eigenvalue `2 + 2β^{k-2}` of a k-uniform
/// hypercycle of any size.
pub fn hypercycle_signless_lambda(k: usize, cfg: &ClosedFormConfig) -> Result<ClosedFormResult, ClosedFormError> {
    if k < 3 {
        return Err(ClosedFormError::BadParams(format!("k = {k} must be at least 3")));
    }
    let poly = hypercycle_signless_poly(k);
    let (lo, hi) = (0.5, 1.0);
    let (exact, poly_residual, iterations) = solve_bracketed(&poly, lo, hi, cfg)?;
    let beta = exact.to_f64();
    if !(dd_above(exact, lo) && dd_below(exact, hi)) {
        return Err(ClosedFormError::OutsideInterval { root: beta, lo, hi });
    }
    let lambda = 2.0 + 2.0 * beta.powi(k as i32 - 2);
    Ok(ClosedFormResult { root: beta, lambda, bracket: (lo, hi), poly_residual, iterations })
}

/// Closed-form bounds on `λ(Q)` and `λ(L)` for a hypergraph, given `λ(A)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub d: usize,
    /// `2 Σ d_i / n`
    pub mean_bound: f64,
    pub lambda_a: f64,
    /// `max{d, 2 Σ d_i / n}`
    pub lower_q: f64,
    /// `λ(A) + d`
    pub upper_q: f64,
    /// `2 C(n-1, k-1)`
    pub complete_cap: f64,
    /// `d + d (1/α*)^{k-1}`
    pub hyperstar_floor: f64,
    /// Even k: hyperstar Laplacian root for the max degree; odd k: `d`.
    pub laplacian_floor: f64,
}

impl BoundReport {
    /// `lower_q <= upper_q` must hold whenever `λ(A) >= mean_bound - d`.
    pub fn is_consistent(&self) -> bool {
        self.lambda_a < self.mean_bound - self.d as f64 || self.lower_q <= self.upper_q
    }
}

pub fn bound_report(g: &Hypergraph, lambda_a: f64) -> Result<BoundReport, ClosedFormError> {
    let cfg = ClosedFormConfig::default();
    let profile = g.degree_profile();
    let d = profile.max_degree;
    let mean_bound = profile.mean_bound();
    let complete_cap = 2.0 * binomial(g.n() - 1, g.k() - 1).map_or(f64::INFINITY, |c| c as f64);
    let star = hyperstar_signless_lambda(g.k(), d, &cfg)?;
    let hyperstar_floor = d as f64 + d as f64 * star.root.recip().powi(g.k() as i32 - 1);
    Ok(BoundReport {
        d,
        mean_bound,
        lambda_a,
        lower_q: (d as f64).max(mean_bound),
        upper_q: lambda_a + d as f64,
        complete_cap,
        hyperstar_floor,
        laplacian_floor: hyperstar_laplacian_largest(g.k(), d, &cfg)?,
    })
}
