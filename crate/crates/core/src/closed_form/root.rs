//! Safeguarded Newton-bisection on a sign-changing bracket.

use super::ClosedFormError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOutcome {
    pub root: f64,
    /// Final bracket, still containing a sign change (or an exact zero).
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
}

/// Finds the root of `f` inside `[lo, hi]` given `f(lo) * f(hi) <= 0`.
///
/// Every iteration tries a Newton step and falls back to bisection whenever
/// the step leaves the bracket or is not at least half as short as the step
/// before the previous one. `f` returns `(value, derivative)`.
pub fn newton_bisect<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64, max_iters: usize) -> Result<RootOutcome, ClosedFormError>
where
    F: Fn(f64) -> (f64, f64),
{
    let (mut flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Ok(RootOutcome { root: lo, lo, hi, iterations: 0 });
    }
    if fhi == 0.0 {
        return Ok(RootOutcome { root: hi, lo, hi, iterations: 0 });
    }
    if flo.signum() == fhi.signum() {
        return Err(ClosedFormError::NoSignChange { lo, hi });
    }

    let mut x = 0.5 * (lo + hi);
    let mut step_old = hi - lo;
    let mut step = step_old;
    for it in 1..=max_iters {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(RootOutcome { root: x, lo: x, hi: x, iterations: it });
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let width = hi - lo;
        if width <= xtol * x.abs().max(1.0) || width <= f64::EPSILON * x.abs() {
            let root = 0.5 * (lo + hi);
            return Ok(RootOutcome { root, lo, hi, iterations: it });
        }
        let newton = x - fx / dfx;
        let shrinking = (2.0 * fx).abs() <= (step_old * dfx).abs();
        step_old = step;
        let use_newton = dfx != 0.0 && newton.is_finite() && newton > lo && newton < hi && shrinking;
        let next = if use_newton { newton } else { 0.5 * (lo + hi) };
        step = (next - x).abs();
        x = next;
        if use_newton && step <= xtol * x.abs().max(1.0) {
            return Ok(RootOutcome { root: x, lo, hi, iterations: it });
        }
    }
    Err(ClosedFormError::NoConvergence { iterations: max_iters })
}
