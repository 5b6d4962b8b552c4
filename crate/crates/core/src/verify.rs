//! Theorem verification suite.
//!
//! [`theorem_suite`] computes `λ(A)`, `λ(Q)` and `λ(L)` for one hypergraph,
//! then checks every bound, equality and family-specific closed form that
//! applies to it. Each check records both sides of its relation, so a
//! failure is self-explaining.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::closed_form::{
    bound_report, hypercycle_signless_lambda, hyperstar_laplacian_lambda, BoundReport, ClosedFormConfig,
};
use crate::hypergraph::{binomial, recognize, Hypergraph, StructureTags};
use crate::solvers::{laplacian_max_even, multistart_max, nqz_max, SolveOutcome, SolverConfig, SolverError};
use crate::structure::{odd_bipartition, transfer_eigenvector, BitPartition};
use crate::tensor::{residual, OperatorKind};

/// Tolerances of the suite, on top of the solver configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub solver: SolverConfig,
    /// Slack for non-strict inequalities and equalities between computed values.
    pub value_tol: f64,
    /// Margin by which a strict inequality must hold.
    pub strict_margin: f64,
    /// Residual bound for explicitly constructed eigenvectors.
    pub construction_tol: f64,
    /// Residual bound for eigenvectors obtained by sign transfer.
    pub transfer_tol: f64,
    /// Random starts for the odd-k "nothing above d" search.
    pub advisory_starts: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            value_tol: 1e-8,
            strict_margin: 1e-6,
            construction_tol: 1e-12,
            transfer_tol: 1e-9,
            advisory_starts: 256,
        }
    }
}

impl From<&SolverConfig> for SuiteConfig {
    fn from(solver: &SolverConfig) -> Self {
        Self { solver: solver.clone(), ..Self::default() }
    }
}

/// How `lhs` is compared with `rhs` under the check's tolerance `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `lhs <= rhs + t`
    Le,
    /// `lhs >= rhs - t`
    Ge,
    /// `|lhs - rhs| <= t`
    Eq,
    /// `lhs <= rhs - t`
    Lt,
    /// `lhs >= rhs + t`
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64, t: f64) -> bool {
        match self {
            Self::Le => lhs <= rhs + t,
            Self::Ge => lhs >= rhs - t,
            Self::Eq => (lhs - rhs).abs() <= t,
            Self::Lt => lhs <= rhs - t,
            Self::Gt => lhs >= rhs + t,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Le => "<=",
            Self::Ge => ">=",
            Self::Eq => "==",
            Self::Lt => "<",
            Self::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "reason", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// An advisory check whose relation did not hold. Never fails the run.
    Warn,
    Skipped(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Warn => "warn",
            Self::Skipped(_) => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub claim_id: String,
    /// The mathematical statement being checked.
    pub anchor: String,
    pub relation: Relation,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub tolerance: f64,
    pub computed_values: BTreeMap<String, f64>,
    pub status: Status,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub name: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: String,
    pub checks: Vec<Check>,
    pub timings: Vec<Timing>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub warn: usize,
    pub skipped: usize,
}

impl VerificationReport {
    /// True when no check failed; warnings and skips do not count.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::Warn => t.warn += 1,
                Status::Skipped(_) => t.skipped += 1,
            }
        }
        t
    }

    pub fn check(&self, claim_id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.claim_id == claim_id)
    }

    /// The report with wall-clock timings removed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        Self { timings: Vec::new(), ..self.clone() }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// One row per check: `claim_id, anchor, lhs, rhs, status`.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["claim_id", "anchor", "lhs", "rhs", "status"])?;
        for c in &self.checks {
            w.write_record([
                c.claim_id.as_str(),
                c.anchor.as_str(),
                &fmt_opt(c.lhs),
                &fmt_opt(c.rhs),
                c.status.label(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance: {}", self.instance);
        let width = self.checks.iter().map(|c| c.claim_id.len()).max().unwrap_or(8);
        for c in &self.checks {
            let rel = format!("{} {} {}", fmt_opt(c.lhs), c.relation.symbol(), fmt_opt(c.rhs));
            let _ = write!(out, "{:<7} {:<width$}  {:<48} tol={:.0e}", c.status.label(), c.claim_id, rel, c.tolerance);
            if let Status::Skipped(reason) = &c.status {
                let _ = write!(out, "  ({reason})");
            } else if let Some(note) = &c.note {
                let _ = write!(out, "  ({note})");
            }
            out.push('\n');
        }
        let t = self.tally();
        let _ = writeln!(out, "{} passed, {} failed, {} warnings, {} skipped", t.pass, t.fail, t.warn, t.skipped);
        out
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.12}"))
}

/// Short structural description of `g`.
pub fn describe(g: &Hypergraph) -> String {
    let tags = recognize(g);
    let mut parts = vec![format!("n={} k={} m={}", g.n(), g.k(), g.num_edges())];
    if let Some(h) = tags.hyperstar_heart {
        parts.push(format!("hyperstar of size {} (heart {})", g.num_edges(), h + 1));
    }
    if let Some(s) = tags.hypercycle_size {
        parts.push(format!("hypercycle of size {s}"));
    }
    if tags.is_complete {
        parts.push("complete".into());
    } else if tags.is_regular {
        parts.push("regular".into());
    }
    if !tags.is_connected {
        parts.push("disconnected".into());
    }
    parts.join(", ")
}

/// Runs the suite with default tolerances.
pub fn theorem_suite(g: &Hypergraph, cfg: &SolverConfig) -> VerificationReport {
    theorem_suite_with(g, &SuiteConfig::from(cfg), describe(g))
}

/// Runs the suite on every component that has at least one edge.
pub fn theorem_suite_per_component(g: &Hypergraph, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    g.components()
        .iter()
        .enumerate()
        .filter_map(|(i, comp)| {
            let sub = g.component_subgraph(comp)?;
            let labels: Vec<String> = comp.iter().take(6).map(|v| (v + 1).to_string()).collect();
            let more = if comp.len() > 6 { ",..." } else { "" };
            let name = format!("component {} {{{}{}}}: {}", i + 1, labels.join(","), more, describe(&sub));
            Some(theorem_suite_with(&sub, cfg, name))
        })
        .collect()
}

struct Suite<'a> {
    g: &'a Hypergraph,
    cfg: &'a SuiteConfig,
    checks: Vec<Check>,
    timings: Vec<Timing>,
}

struct Spec<'s> {
    id: &'s str,
    anchor: &'s str,
    relation: Relation,
    tol: f64,
    advisory: bool,
}

const fn spec<'s>(id: &'s str, anchor: &'s str, relation: Relation, tol: f64) -> Spec<'s> {
    Spec { id, anchor, relation, tol, advisory: false }
}

impl Suite<'_> {
    fn compare(&mut self, s: Spec<'_>, lhs: f64, rhs: f64, values: &[(&str, f64)]) {
        let holds = lhs.is_finite() && rhs.is_finite() && s.relation.holds(lhs, rhs, s.tol);
        let status = match (holds, s.advisory) {
            (true, _) => Status::Pass,
            (false, true) => Status::Warn,
            (false, false) => Status::Fail,
        };
        self.push(s, Some(lhs), Some(rhs), values, status, None);
    }

    fn skip(&mut self, s: Spec<'_>, reason: impl Into<String>) {
        self.push(s, None, None, &[], Status::Skipped(reason.into()), None);
    }

    fn fail(&mut self, s: Spec<'_>, note: impl Into<String>) {
        self.push(s, None, None, &[], Status::Fail, Some(note.into()));
    }

    fn push(
        &mut self,
        s: Spec<'_>,
        lhs: Option<f64>,
        rhs: Option<f64>,
        values: &[(&str, f64)],
        status: Status,
        note: Option<String>,
    ) {
        let finite = |v: Option<f64>| v.filter(|x| x.is_finite());
        let computed_values =
            values.iter().filter(|(_, v)| v.is_finite()).map(|(k, v)| (k.to_string(), *v)).collect();
        self.checks.push(Check {
            claim_id: s.id.to_string(),
            anchor: s.anchor.to_string(),
            relation: s.relation,
            lhs: finite(lhs),
            rhs: finite(rhs),
            tolerance: s.tol,
            computed_values,
            status,
            note,
        });
    }

    fn timed<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        self.timings.push(Timing { name: name.to_string(), seconds: start.elapsed().as_secs_f64() });
        out
    }

    /// Records the solver outcome as a check and returns λ when usable.
    fn solved(&mut self, id: &str, anchor: &str, r: Result<SolveOutcome, SolverError>) -> Option<SolveOutcome> {
        let tol = self.cfg.solver.tol;
        match r {
            Ok(out) => {
                let values = [("lambda", out.pair.lambda), ("iterations", out.lambda_history.len() as f64)];
                self.compare(spec(id, anchor, Relation::Le, 0.0), out.pair.residual, tol, &values);
                (out.pair.residual <= tol).then_some(out)
            }
            Err(SolverError::NoConvergence(best)) => {
                let values = [("lambda", best.pair.lambda)];
                self.push(
                    spec(id, anchor, Relation::Le, 0.0),
                    Some(best.pair.residual),
                    Some(tol),
                    &values,
                    Status::Fail,
                    Some("solver did not converge".into()),
                );
                None
            }
            Err(e) => {
                self.fail(spec(id, anchor, Relation::Le, 0.0), e.to_string());
                None
            }
        }
    }
}

/// Runs every applicable check on `g`. Solver failures are recorded as
/// failed checks; the suite itself never panics on valid input.
pub fn theorem_suite_with(g: &Hypergraph, cfg: &SuiteConfig, instance: impl Into<String>) -> VerificationReport {
    let mut s = Suite { g, cfg, checks: Vec::new(), timings: Vec::new() };
    let tags = recognize(g);
    let profile = g.degree_profile();
    let d = profile.max_degree as f64;
    let k = g.k();

    s.timed("profile", |s| {
        s.compare(
            spec("profile.degree_sum", "sum of degrees = k |E|", Relation::Eq, 0.0),
            profile.sum() as f64,
            (k * g.num_edges()) as f64,
            &[
                ("n", g.n() as f64),
                ("k", k as f64),
                ("edges", g.num_edges() as f64),
                ("max_degree", d),
                ("connected", f64::from(u8::from(tags.is_connected))),
                ("regular", f64::from(u8::from(tags.is_regular))),
            ],
        );
        let s_vertex = profile.degrees.iter().position(|&di| di == profile.max_degree).unwrap_or(0);
        let mut e = vec![0.0; g.n()];
        e[s_vertex] = 1.0;
        let r = residual(OperatorKind::Laplacian, g, d, &e).unwrap_or(f64::INFINITY);
        s.compare(
            spec(
                "laplacian.max_degree_vector",
                "L e_s^{k-1} = d e_s^{[k-1]} for a vertex s of maximum degree d",
                Relation::Le,
                0.0,
            ),
            r,
            cfg.construction_tol,
            &[("vertex", (s_vertex + 1) as f64), ("lambda", d)],
        );
    });

    if !tags.is_connected {
        for (id, anchor) in CONNECTED_ONLY {
            s.skip(spec(id, anchor, Relation::Le, 0.0), "hypergraph is disconnected; use per-component mode");
        }
        return VerificationReport { instance: instance.into(), checks: s.checks, timings: s.timings };
    }

    let lambda_a = s.timed("solve.adjacency", |s| {
        let r = nqz_max(OperatorKind::Adjacency, g, &cfg.solver);
        s.solved("solve.adjacency", "lambda(A) by NQZ power iteration", r)
    });
    let q = s.timed("solve.signless", |s| {
        let r = nqz_max(OperatorKind::SignlessLaplacian, g, &cfg.solver);
        s.solved("solve.signless", "lambda(Q) by NQZ power iteration", r)
    });
    let l = s.timed("solve.laplacian", |s| {
        if k % 2 == 0 {
            let r = laplacian_max_even(g, &cfg.solver);
            s.solved("solve.laplacian", "lambda(L) = max L x^k over the unit k-norm sphere (even k)", r)
        } else {
            let r = multistart_max(OperatorKind::Laplacian, g, &cfg.solver);
            s.solved("solve.laplacian", "lambda(L) lower bound by multistart search (odd k)", r)
        }
    });
    let lambda_a = lambda_a.map(|o| o.pair.lambda);
    let lambda_q = q.as_ref().map(|o| o.pair.lambda);
    let lambda_l = l.as_ref().map(|o| o.pair.lambda);

    let report: Option<BoundReport> = s.timed("bounds", |s| {
        let la = lambda_a?;
        match bound_report(g, la) {
            Ok(r) => Some(r),
            Err(e) => {
                s.fail(spec("bounds.report", "closed-form bound assembly", Relation::Le, 0.0), e.to_string());
                None
            }
        }
    });

    s.timed("signless", |s| signless_checks(s, &tags, lambda_a, lambda_q, report.as_ref()));
    s.timed("laplacian", |s| laplacian_checks(s, &tags, lambda_l, report.as_ref()));
    s.timed("equality", |s| equality_checks(s, lambda_l, q.as_ref()));
    s.timed("family", |s| family_checks(s, &tags, lambda_q, lambda_l));

    VerificationReport { instance: instance.into(), checks: s.checks, timings: s.timings }
}

const UNAVAILABLE: &str = "an eigenvalue this check needs was not computed";

const CONNECTED_ONLY: [(&str, &str); 3] = [
    ("solve.adjacency", "lambda(A) by NQZ power iteration"),
    ("solve.signless", "lambda(Q) by NQZ power iteration"),
    ("solve.laplacian", "lambda(L) on a connected hypergraph"),
];

fn signless_checks(
    s: &mut Suite<'_>,
    tags: &StructureTags,
    lambda_a: Option<f64>,
    lambda_q: Option<f64>,
    report: Option<&BoundReport>,
) {
    let (t, margin) = (s.cfg.value_tol, s.cfg.strict_margin);
    let specs = [
        spec("signless.lower_bound", "lambda(Q) >= max{d, 2 sum(d_i) / n}", Relation::Ge, t),
        spec("signless.upper_bound", "lambda(Q) <= lambda(A) + d", Relation::Le, t),
    ];
    let (Some(lq), Some(la), Some(r)) = (lambda_q, lambda_a, report) else {
        for sp in specs {
            s.skip(sp, UNAVAILABLE);
        }
        return;
    };
    let d = r.d as f64;
    let [lower, upper] = specs;
    s.compare(lower, lq, r.lower_q, &[("d", d), ("mean_bound", r.mean_bound)]);
    s.compare(upper, lq, r.upper_q, &[("lambda_a", la), ("d", d)]);

    let cap_anchor = "lambda(Q) <= 2 C(n-1, k-1), with equality iff G is complete";
    if tags.is_complete {
        s.compare(spec("signless.complete_cap", cap_anchor, Relation::Eq, t), lq, r.complete_cap, &[]);
    } else {
        s.compare(spec("signless.complete_cap", cap_anchor, Relation::Lt, margin), lq, r.complete_cap, &[]);
    }

    let regular = spec("signless.regular", "lambda(Q) = 2d when G is regular", Relation::Eq, t);
    if tags.is_regular {
        s.compare(regular, lq, 2.0 * d, &[]);
    } else {
        s.skip(regular, "not regular");
    }

    let floor_anchor = "lambda(Q) >= d + d (1/alpha*)^{k-1}, alpha* the root of a^k + (1-d) a^{k-1} - d in (d-1, d]";
    s.compare(spec("signless.hyperstar_floor", floor_anchor, Relation::Ge, t), lq, r.hyperstar_floor, &[]);
    let eq_anchor = "lambda(Q) = d + d (1/alpha*)^{k-1} iff G is a hyperstar";
    if tags.is_hyperstar() {
        s.compare(spec("signless.hyperstar_equality", eq_anchor, Relation::Eq, t), lq, r.hyperstar_floor, &[]);
    } else {
        s.compare(spec("signless.hyperstar_equality", eq_anchor, Relation::Gt, margin), lq, r.hyperstar_floor, &[]);
    }
}

fn laplacian_checks(s: &mut Suite<'_>, tags: &StructureTags, lambda_l: Option<f64>, report: Option<&BoundReport>) {
    let g = s.g;
    let k = g.k();
    let (t, margin) = (s.cfg.value_tol, s.cfg.strict_margin);
    let d = g.degree_profile().max_degree as f64;

    let floor = spec("laplacian.degree_floor", "lambda(L) >= d", Relation::Ge, t);
    match lambda_l {
        Some(ll) => s.compare(floor, ll, d, &[]),
        None => s.skip(floor, UNAVAILABLE),
    }

    if k % 2 == 0 {
        let anchor = "even k: lambda(L) >= root in (d, d+1] of (1-l)^{k-1} (l-d) + d";
        let eq_anchor = "even k: lambda(L) equals the hyperstar root of size d iff G is a hyperstar";
        let (Some(ll), Some(r)) = (lambda_l, report) else {
            s.skip(spec("laplacian.hyperstar_floor", anchor, Relation::Ge, t), UNAVAILABLE);
            s.skip(spec("laplacian.hyperstar_equality", eq_anchor, Relation::Eq, t), UNAVAILABLE);
            return;
        };
        s.compare(spec("laplacian.hyperstar_floor", anchor, Relation::Ge, t), ll, r.laplacian_floor, &[]);
        if tags.is_hyperstar() {
            s.compare(spec("laplacian.hyperstar_equality", eq_anchor, Relation::Eq, t), ll, r.laplacian_floor, &[]);
            s.compare(
                spec("laplacian.hyperstar_strict", "even k hyperstar: lambda(L) > d", Relation::Gt, margin),
                ll,
                d,
                &[],
            );
        } else {
            s.compare(spec("laplacian.hyperstar_equality", eq_anchor, Relation::Gt, margin), ll, r.laplacian_floor, &[]);
        }
    } else if let Some(heart) = tags.hyperstar_heart {
        let mut e = vec![0.0; g.n()];
        e[heart] = 1.0;
        let r = residual(OperatorKind::Laplacian, g, d, &e).unwrap_or(f64::INFINITY);
        s.compare(
            spec("laplacian.odd_hyperstar_heart", "odd k hyperstar: (d, e_heart) is an eigenpair of L", Relation::Le, 0.0),
            r,
            s.cfg.construction_tol,
            &[("heart", (heart + 1) as f64)],
        );
        let search = SolverConfig { starts: s.cfg.advisory_starts, ..s.cfg.solver.clone() };
        let sp = Spec {
            id: "laplacian.odd_hyperstar_search",
            anchor: "odd k hyperstar: lambda(L) = d (advisory: no larger eigenvalue found by search)",
            relation: Relation::Le,
            tol: margin,
            advisory: true,
        };
        match multistart_max(OperatorKind::Laplacian, g, &search) {
            Ok(out) => s.compare(sp, out.pair.lambda, d, &[("starts", search.starts as f64)]),
            Err(e) => s.push(sp, None, None, &[], Status::Warn, Some(e.to_string())),
        }
    }
}

fn equality_checks(s: &mut Suite<'_>, lambda_l: Option<f64>, q: Option<&SolveOutcome>) {
    let g = s.g;
    let (t, margin) = (s.cfg.value_tol, s.cfg.strict_margin);
    let le = spec("equality.l_le_q", "lambda(L) <= lambda(Q)", Relation::Le, t);
    let eq_anchor = "lambda(L) = lambda(Q) iff k is even and G is odd-bipartite";
    let (Some(ll), Some(q)) = (lambda_l, q) else {
        s.skip(le, UNAVAILABLE);
        s.skip(spec("equality.verdict", eq_anchor, Relation::Eq, 2.0 * t), UNAVAILABLE);
        return;
    };
    let lq = q.pair.lambda;
    s.compare(le, ll, lq, &[]);

    let partition: Option<BitPartition> = (g.k() % 2 == 0).then(|| odd_bipartition(g).expect("even k"));
    if let Some(p) = &partition {
        let sound = f64::from(u8::from(p.is_sound_for(g)));
        let anchor = if p.feasible {
            "every edge meets V1 in an odd number of vertices"
        } else {
            "the witness edges' parity equations sum to 0 = 1"
        };
        s.compare(
            spec("equality.certificate", anchor, Relation::Eq, 0.0),
            sound,
            1.0,
            &[("feasible", f64::from(u8::from(p.feasible))), ("witness_edges", p.witness.len() as f64)],
        );
    }
    match &partition {
        Some(p) if p.feasible => {
            s.compare(spec("equality.verdict", eq_anchor, Relation::Eq, 2.0 * t), ll, lq, &[]);
            let anchor = "y = x on V1 and -x on V2 turns the positive Q-eigenvector into an L-eigenvector";
            let sp = spec("equality.transfer", anchor, Relation::Le, 0.0);
            match transfer_eigenvector(&q.pair.x, p) {
                Ok(y) => {
                    let r = residual(OperatorKind::Laplacian, g, lq, &y).unwrap_or(f64::INFINITY);
                    s.compare(sp, r, s.cfg.transfer_tol, &[("lambda", lq)]);
                }
                Err(e) => s.fail(sp, e.to_string()),
            }
        }
        _ => {
            let mut sp = spec("equality.verdict", eq_anchor, Relation::Lt, margin);
            if g.k() % 2 == 1 {
                sp.anchor = "odd k: lambda(L) < lambda(Q) (one-sided; lambda(L) is a lower bound here)";
            }
            s.compare(sp, ll, lq, &[]);
        }
    }
}

fn family_checks(s: &mut Suite<'_>, tags: &StructureTags, lambda_q: Option<f64>, lambda_l: Option<f64>) {
    let g = s.g;
    let (n, k) = (g.n(), g.k());
    let t = s.cfg.value_tol;
    let cf = ClosedFormConfig::default();

    if let Some(size) = tags.hypercycle_size {
        let anchor = "hypercycle: lambda(Q) = 2 + 2 beta^{k-2} with 2 beta^k + beta^2 - 1 = 0";
        let sp = spec("family.hypercycle_signless", anchor, Relation::Eq, t);
        match (hypercycle_signless_lambda(k, &cf), lambda_q) {
            (Ok(r), Some(lq)) => s.compare(sp, lq, r.lambda, &[("beta", r.root), ("size", size as f64)]),
            (Err(e), _) => s.fail(sp, e.to_string()),
            (_, None) => s.skip(sp, UNAVAILABLE),
        }
    }

    if tags.hyperstar_heart.is_some() && k % 2 == 0 {
        let anchor = "even k hyperstar: closed-form root has |f(l)| <= 1e-10";
        let sp = spec("family.hyperstar_polynomial", anchor, Relation::Le, 0.0);
        match hyperstar_laplacian_lambda(k, g.num_edges(), &cf) {
            Ok(r) => s.compare(sp, r.poly_residual, cf.poly_tol, &[("root", r.root)]),
            Err(e) => s.fail(sp, e.to_string()),
        }
    }

    if tags.is_complete && k == 3 && n % 2 == 0 {
        let m = n / 2;
        let value = binomial(n - 1, 2).map_or(f64::INFINITY, |c| c as f64) + m as f64 - 1.0;
        let x: Vec<f64> = (0..n).map(|i| if i < m { 1.0 } else { -1.0 }).collect();
        let r = residual(OperatorKind::Laplacian, g, value, &x).unwrap_or(f64::INFINITY);
        let anchor = "complete 3-uniform, n = 2m: (C(n-1,2) + m - 1, (1,..,1,-1,..,-1)) is an eigenpair of L";
        s.compare(
            spec("family.complete_split_vector", anchor, Relation::Le, 0.0),
            r,
            s.cfg.construction_tol,
            &[("lambda", value)],
        );
        let sp = Spec {
            id: "family.complete_split_search",
            anchor: "complete 3-uniform: search reaches lambda(L) >= C(n-1,2) + m - 1 (advisory)",
            relation: Relation::Ge,
            tol: t,
            advisory: true,
        };
        match lambda_l {
            Some(ll) => s.compare(sp, ll, value, &[]),
            None => s.skip(sp, UNAVAILABLE),
        }
    }
}
