//! C ABI over `hyperspec`.
//!
//! Hypergraphs live behind the opaque `HsHypergraph` handle. Every fallible
//! function returns an `HsStatus`; on anything other than `HS_STATUS_OK` a
//! description is available from `hs_last_error_message` on the same thread.
//! Vertex labels crossing the boundary are 1-based, as in the text format.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperspec::closed_form::{
    hypercycle_signless_lambda, hyperstar_laplacian_lambda, hyperstar_signless_lambda, ClosedFormConfig,
    ClosedFormError,
};
use hyperspec::generate::{complete, hypercycle, hyperstar, random};
use hyperspec::hypergraph::Hypergraph;
use hyperspec::solvers::{laplacian_max_even, multistart_max, nqz_max, SolverConfig, SolverError};
use hyperspec::structure::{odd_bipartition, StructureError};
use hyperspec::tensor::{apply, residual, OperatorKind, TensorError};
use hyperspec::verify::{theorem_suite_with, SuiteConfig};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    DimensionMismatch = 4,
    NotConnected = 5,
    BadParity = 6,
    NoConvergence = 7,
    Infeasible = 8,
    ComputeError = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsOperator {
    Adjacency = 0,
    Laplacian = 1,
    SignlessLaplacian = 2,
}

impl From<HsOperator> for OperatorKind {
    fn from(op: HsOperator) -> Self {
        match op {
            HsOperator::Adjacency => OperatorKind::Adjacency,
            HsOperator::Laplacian => OperatorKind::Laplacian,
            HsOperator::SignlessLaplacian => OperatorKind::SignlessLaplacian,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsMethod {
    Nqz = 0,
    ShiftedAscent = 1,
    Multistart = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsClosedForm {
    /// `(1 - l)^{k-1} (l - d) + d = 0`, even k
    HyperstarLaplacian = 0,
    /// `a^k + (1 - d) a^{k-1} - d = 0`
    HyperstarSignless = 1,
    /// `2 b^k + b^2 - 1 = 0`, `d` ignored
    HypercycleSignless = 2,
}

/// Solver settings. Zero-valued fields fall back to library defaults.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HsSolverOptions {
    pub tol: f64,
    pub max_iters: usize,
    pub starts: usize,
    pub seed: u64,
}

impl HsSolverOptions {
    fn config(&self) -> SolverConfig {
        let d = SolverConfig::default();
        SolverConfig {
            tol: if self.tol > 0.0 { self.tol } else { d.tol },
            max_iters: if self.max_iters > 0 { self.max_iters } else { d.max_iters },
            starts: if self.starts > 0 { self.starts } else { d.starts },
            seed: self.seed,
            shift: d.shift,
        }
    }
}

/// Opaque hypergraph handle.
pub struct HsHypergraph {
    inner: Hypergraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(HsStatus, String);

impl Failure {
    fn new(status: HsStatus, msg: impl std::fmt::Display) -> Self {
        Self(status, msg.to_string())
    }
}

impl From<TensorError> for Failure {
    fn from(e: TensorError) -> Self {
        Self::new(HsStatus::DimensionMismatch, e)
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        let status = match &e {
            SolverError::NotConnected => HsStatus::NotConnected,
            SolverError::BadParity { .. } => HsStatus::BadParity,
            SolverError::UnsupportedOperator(_) | SolverError::BadConfig(_) => HsStatus::InvalidArgument,
            SolverError::NoConvergence(_) | SolverError::NoVerifiedPair => HsStatus::NoConvergence,
            SolverError::Tensor(_) => HsStatus::DimensionMismatch,
        };
        Self::new(status, e)
    }
}

impl From<ClosedFormError> for Failure {
    fn from(e: ClosedFormError) -> Self {
        let status = match &e {
            ClosedFormError::BadParity { .. } => HsStatus::BadParity,
            ClosedFormError::BadParams(_) => HsStatus::InvalidArgument,
            _ => HsStatus::ComputeError,
        };
        Self::new(status, e)
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        let status = match &e {
            StructureError::BadParity { .. } => HsStatus::BadParity,
            StructureError::DimensionMismatch { .. } => HsStatus::DimensionMismatch,
            StructureError::InfeasiblePartition => HsStatus::Infeasible,
            StructureError::NotPositive { .. } => HsStatus::InvalidArgument,
        };
        Self::new(status, e)
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HsStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HsStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure::new(HsStatus::NullPointer, "null pointer argument")
}

unsafe fn graph<'a>(g: *const HsHypergraph) -> Result<&'a Hypergraph, Failure> {
    g.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Failure> {
    if p.is_null() {
        return if len == 0 { Ok(&[]) } else { Err(null()) };
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize) -> Result<&'a mut [T], Failure> {
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn store_graph(out: *mut *mut HsHypergraph, g: Hypergraph) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(HsHypergraph { inner: g }));
    Ok(())
}

/// Message for the last failed call on this thread, or NULL after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a hypergraph from `num_edges * k` 1-based vertex labels.
///
/// # Safety
/// `edges` must point to `num_edges * k` readable values and `out` must be
/// writable. The handle stored in `*out` must be released with
/// `hs_hypergraph_free`.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_new(
    n: usize,
    k: usize,
    edges: *const u32,
    num_edges: usize,
    out: *mut *mut HsHypergraph,
) -> HsStatus {
    guard(|| {
        if k == 0 {
            return Err(Failure::new(HsStatus::InvalidArgument, "k must be positive"));
        }
        let len = num_edges.checked_mul(k).ok_or_else(|| Failure::new(HsStatus::InvalidArgument, "size overflow"))?;
        let flat = slice(edges, len)?;
        let lists: Vec<Vec<usize>> = flat.chunks(k).map(|e| e.iter().map(|&v| v as usize).collect()).collect();
        let g = Hypergraph::build(n, k, &lists).map_err(|e| Failure::new(HsStatus::InvalidArgument, e))?;
        store_graph(out, g)
    })
}

/// Parses the text format: a header line `n k`, then one edge per line.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_parse(text: *const c_char, out: *mut *mut HsHypergraph) -> HsStatus {
    guard(|| {
        if text.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| Failure::new(HsStatus::ParseError, e))?;
        let g = hyperspec::io::parse(s).map_err(|e| Failure::new(HsStatus::ParseError, e))?;
        store_graph(out, g)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_hyperstar(k: usize, d: usize, out: *mut *mut HsHypergraph) -> HsStatus {
    guard(|| store_graph(out, hyperstar(k, d).map_err(|e| Failure::new(HsStatus::InvalidArgument, e))?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_hypercycle(k: usize, s: usize, out: *mut *mut HsHypergraph) -> HsStatus {
    guard(|| store_graph(out, hypercycle(k, s).map_err(|e| Failure::new(HsStatus::InvalidArgument, e))?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_complete(n: usize, k: usize, out: *mut *mut HsHypergraph) -> HsStatus {
    guard(|| store_graph(out, complete(n, k).map_err(|e| Failure::new(HsStatus::InvalidArgument, e))?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_random(
    n: usize,
    k: usize,
    m: usize,
    seed: u64,
    out: *mut *mut HsHypergraph,
) -> HsStatus {
    guard(|| store_graph(out, random(n, k, m, seed).map_err(|e| Failure::new(HsStatus::InvalidArgument, e))?))
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_free(g: *mut HsHypergraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_num_vertices(g: *const HsHypergraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.n())
}

/// Uniformity `k`, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_uniformity(g: *const HsHypergraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.k())
}

/// Edge count, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_num_edges(g: *const HsHypergraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.num_edges())
}

/// Canonical text serialization. Free the result with `hs_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_serialize(g: *const HsHypergraph, out: *mut *mut c_char) -> HsStatus {
    guard(|| {
        let g = graph(g)?;
        store_string(out, hyperspec::io::serialize(g))
    })
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).map_err(|e| Failure::new(HsStatus::ComputeError, e))?.into_raw();
    Ok(())
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `out = T x^{k-1}`; both buffers hold `len` = n values.
///
/// # Safety
/// `x` must hold `len` readable values and `out` `len` writable ones.
#[no_mangle]
pub unsafe extern "C" fn hs_apply(
    g: *const HsHypergraph,
    op: HsOperator,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> HsStatus {
    guard(|| {
        let g = graph(g)?;
        let y = apply(op.into(), g, slice(x, len)?)?;
        slice_mut(out, len)?.copy_from_slice(&y);
        Ok(())
    })
}

/// Max-norm residual of `T x^{k-1} - λ x^{[k-1]}` with `x` scaled to unit
/// max-norm.
///
/// # Safety
/// `x` must hold `len` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_residual(
    g: *const HsHypergraph,
    op: HsOperator,
    lambda: f64,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> HsStatus {
    guard(|| {
        let g = graph(g)?;
        let r = residual(op.into(), g, lambda, slice(x, len)?)?;
        *out.as_mut().ok_or_else(null)? = r;
        Ok(())
    })
}

/// Largest H-eigenvalue of `op` by `method`.
///
/// `out_x` may be NULL; otherwise it receives the n-entry eigenvector.
/// `out_lower_bound` (nullable) is set when the value is only known to bound
/// the largest eigenvalue from below.
///
/// # Safety
/// `opts` may be NULL for defaults. Non-NULL out pointers must be writable,
/// `out_x` for n values.
#[no_mangle]
pub unsafe extern "C" fn hs_largest_eigenvalue(
    g: *const HsHypergraph,
    op: HsOperator,
    method: HsMethod,
    opts: *const HsSolverOptions,
    out_lambda: *mut f64,
    out_residual: *mut f64,
    out_x: *mut f64,
    out_lower_bound: *mut bool,
) -> HsStatus {
    guard(|| {
        let g = graph(g)?;
        let cfg = opts.as_ref().map_or_else(SolverConfig::default, HsSolverOptions::config);
        let kind: OperatorKind = op.into();
        let out = match method {
            HsMethod::Nqz => nqz_max(kind, g, &cfg),
            HsMethod::ShiftedAscent if kind == OperatorKind::Laplacian => laplacian_max_even(g, &cfg),
            HsMethod::ShiftedAscent => Err(SolverError::UnsupportedOperator(kind)),
            HsMethod::Multistart => multistart_max(kind, g, &cfg),
        }?;
        *out_lambda.as_mut().ok_or_else(null)? = out.pair.lambda;
        if let Some(r) = out_residual.as_mut() {
            *r = out.pair.residual;
        }
        if !out_x.is_null() {
            slice_mut(out_x, g.n())?.copy_from_slice(&out.pair.x);
        }
        if let Some(h) = out_lower_bound.as_mut() {
            *h = out.heuristic;
        }
        Ok(())
    })
}

/// Odd-bipartition for even k. On success `*out_feasible` tells whether one
/// exists and, when it does, `out_side[i]` is 1 for vertices of `V1`.
///
/// # Safety
/// `out_side` must hold n writable bytes and `out_feasible` be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_odd_bipartition(
    g: *const HsHypergraph,
    out_side: *mut u8,
    out_feasible: *mut bool,
) -> HsStatus {
    guard(|| {
        let g = graph(g)?;
        let p = odd_bipartition(g)?;
        for (o, &s) in slice_mut(out_side, g.n())?.iter_mut().zip(&p.side) {
            *o = u8::from(s);
        }
        *out_feasible.as_mut().ok_or_else(null)? = p.feasible;
        Ok(())
    })
}

/// Root and eigenvalue of a characteristic equation.
///
/// # Safety
/// `out_root` and `out_lambda` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_closed_form(
    which: HsClosedForm,
    k: usize,
    d: usize,
    out_root: *mut f64,
    out_lambda: *mut f64,
) -> HsStatus {
    guard(|| {
        let cfg = ClosedFormConfig::default();
        let r = match which {
            HsClosedForm::HyperstarLaplacian => hyperstar_laplacian_lambda(k, d, &cfg),
            HsClosedForm::HyperstarSignless => hyperstar_signless_lambda(k, d, &cfg),
            HsClosedForm::HypercycleSignless => hypercycle_signless_lambda(k, &cfg),
        }?;
        *out_root.as_mut().ok_or_else(null)? = r.root;
        *out_lambda.as_mut().ok_or_else(null)? = r.lambda;
        Ok(())
    })
}

/// Runs the verification suite and returns the report as JSON. `tol <= 0`
/// keeps the default value tolerance. `*out_passed` is false when any check
/// failed. Free `*out_json` with `hs_string_free`.
///
/// # Safety
/// `out_json` and `out_passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_verify_json(
    g: *const HsHypergraph,
    tol: f64,
    out_json: *mut *mut c_char,
    out_passed: *mut bool,
) -> HsStatus {
    guard(|| {
        let g = graph(g)?;
        let mut cfg = SuiteConfig::default();
        if tol > 0.0 {
            cfg.value_tol = tol;
            cfg.solver.tol = cfg.solver.tol.min(tol * 1e-2);
        }
        let report = theorem_suite_with(g, &cfg, hyperspec::verify::describe(g));
        let passed = out_passed.as_mut().ok_or_else(null)?;
        let text = report.to_json().map_err(|e| Failure::new(HsStatus::ComputeError, e))?;
        store_string(out_json, text)?;
        *passed = report.passed();
        Ok(())
    })
}
