use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperspec::closed_form::{
    bound_report, hypercycle_signless_lambda, hyperstar_laplacian_lambda, hyperstar_laplacian_largest,
    hyperstar_signless_lambda, ClosedFormConfig, ClosedFormError, ClosedFormResult,
};
use hyperspec::hypergraph::{binomial, recognize, Hypergraph};
use hyperspec::solvers::{laplacian_max_even, multistart_max, nqz_max, Shift, SolverConfig, SolverError};
use hyperspec::structure::{odd_bipartition, BitPartition};
use hyperspec::tensor::{EigenPair, OperatorKind};
use hyperspec::verify::{describe, theorem_suite_per_component, theorem_suite_with, SuiteConfig, VerificationReport};
use hyperspec::{generate, io, Family};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_COMPUTE: u8 = 3;

#[derive(Parser)]
#[command(name = "hyperspec", version, about = "Spectra of uniform hypergraph tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hypergraph from a named family
    Gen(GenArgs),
    /// Largest H-eigenvalue of an operator
    Eig(EigArgs),
    /// Odd-bipartition or an infeasibility witness (even k)
    Bipartite { file: PathBuf },
    /// Closed-form bounds on lambda(Q) and lambda(L)
    Bounds { file: PathBuf },
    /// Run the theorem verification suite
    Verify(VerifyArgs),
    /// Solve one of the characteristic equations directly
    ClosedForm(ClosedFormArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Hyperstar,
    Hypercycle,
    Complete,
    Random,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    k: usize,
    /// Hyperstar size
    #[arg(long)]
    d: Option<usize>,
    /// Hypercycle size
    #[arg(long)]
    s: Option<usize>,
    /// Vertex count (complete, random)
    #[arg(long)]
    n: Option<usize>,
    /// Edge count (random)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Adjacency,
    Laplacian,
    Signless,
}

impl Op {
    fn kind(self) -> OperatorKind {
        match self {
            Self::Adjacency => OperatorKind::Adjacency,
            Self::Laplacian => OperatorKind::Laplacian,
            Self::Signless => OperatorKind::SignlessLaplacian,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodName {
    Nqz,
    Shifted,
    Multistart,
    ClosedForm,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    starts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Fixed shift instead of the operator default
    #[arg(long)]
    shift: Option<f64>,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let d = SolverConfig::default();
        SolverConfig {
            tol: self.tol.unwrap_or(d.tol),
            max_iters: self.max_iters.unwrap_or(d.max_iters),
            shift: self.shift.map_or(Shift::Auto, Shift::Fixed),
            starts: self.starts.unwrap_or(d.starts),
            seed: self.seed.unwrap_or(d.seed),
        }
    }
}

#[derive(Args)]
struct EigArgs {
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long, value_enum)]
    method: MethodName,
    #[command(flatten)]
    solver: SolverArgs,
    /// Print the result as JSON
    #[arg(long)]
    json: bool,
    file: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Tolerance for equalities and non-strict inequalities between computed values
    #[arg(long)]
    tol: Option<f64>,
    /// Run the suite separately on each connected component
    #[arg(long)]
    per_component: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    starts: Option<usize>,
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Equation {
    /// (1 - l)^{k-1} (l - d) + d = 0, even k
    HyperstarLaplacian,
    /// a^k + (1 - d) a^{k-1} - d = 0
    HyperstarSignless,
    /// 2 b^k + b^2 - 1 = 0
    Hypercycle,
}

#[derive(Args)]
struct ClosedFormArgs {
    #[arg(long, value_enum)]
    equation: Equation,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: Option<usize>,
}

enum Failure {
    Input(String),
    Compute(String),
    Checks,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Self::Input(e.to_string())
    }

    fn compute(e: impl std::fmt::Display) -> Self {
        Self::Compute(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Eig(a) => cmd_eig(a),
        Command::Bipartite { file } => cmd_bipartite(&file),
        Command::Bounds { file } => cmd_bounds(&file),
        Command::Verify(a) => cmd_verify(a),
        Command::ClosedForm(a) => cmd_closed_form(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_COMPUTE)
        }
    }
}

fn load(path: &PathBuf) -> Result<Hypergraph, Failure> {
    io::read_file(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Input(format!("--{flag} is required for --family {family}")))
}

fn cmd_gen(a: GenArgs) -> Result<(), Failure> {
    let family = match a.family {
        FamilyName::Hyperstar => Family::Hyperstar { k: a.k, d: need(a.d, "d", "hyperstar")? },
        FamilyName::Hypercycle => Family::Hypercycle { k: a.k, s: need(a.s, "s", "hypercycle")? },
        FamilyName::Complete => Family::Complete { n: need(a.n, "n", "complete")?, k: a.k },
        FamilyName::Random => Family::Random {
            n: need(a.n, "n", "random")?,
            k: a.k,
            m: need(a.m, "m", "random")?,
            seed: a.seed,
        },
    };
    let g = generate(family).map_err(Failure::input)?;
    match a.output {
        Some(path) => io::write_file(&g, &path).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{}", io::serialize(&g));
            Ok(())
        }
    }
}

fn cmd_eig(a: EigArgs) -> Result<(), Failure> {
    let g = load(&a.file)?;
    let kind = a.op.kind();
    let cfg = a.solver.config();
    let (pair, method, heuristic, converged) = match a.method {
        MethodName::ClosedForm => {
            let (lambda, x) = closed_form_eigenvalue(&g, kind)?;
            let pair = EigenPair::new(kind, &g, lambda, x).map_err(Failure::compute)?;
            (pair, "closed_form", false, true)
        }
        m => {
            let r = match m {
                MethodName::Nqz => nqz_max(kind, &g, &cfg),
                MethodName::Shifted if kind == OperatorKind::Laplacian => laplacian_max_even(&g, &cfg),
                MethodName::Shifted => Err(SolverError::UnsupportedOperator(kind)),
                _ => multistart_max(kind, &g, &cfg),
            };
            let out = r.map_err(Failure::compute)?;
            let name = match m {
                MethodName::Nqz => "nqz",
                MethodName::Shifted => "shifted",
                _ => "multistart",
            };
            (out.pair, name, out.heuristic, out.converged)
        }
    };
    if a.json {
        let v = json!({
            "operator": kind,
            "method": method,
            "lambda": pair.lambda,
            "residual": pair.residual,
            "converged": converged,
            "lower_bound_only": heuristic,
            "x": pair.x,
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        println!("lambda    {:.15}", pair.lambda);
        println!("residual  {:.3e}", pair.residual);
        println!("method    {method}{}", if heuristic { " (lower bound)" } else { "" });
        let xs: Vec<String> = pair.x.iter().map(|v| format!("{v:.12}")).collect();
        println!("x         {}", xs.join(" "));
    }
    Ok(())
}

/// `(λ, x)` from a closed form, for the families and operators that have one.
fn closed_form_eigenvalue(g: &Hypergraph, kind: OperatorKind) -> Result<(f64, Vec<f64>), Failure> {
    let tags = recognize(g);
    let cfg = ClosedFormConfig::default();
    let d = g.degree_profile().max_degree;
    let (n, k) = (g.n(), g.k());
    let none = || Failure::Compute(format!("no closed form for {kind:?} on this instance ({})", describe(g)));
    if !tags.is_connected {
        return Err(none());
    }
    match kind {
        OperatorKind::Adjacency if tags.is_regular => Ok((d as f64, vec![1.0; n])),
        OperatorKind::SignlessLaplacian if tags.is_regular => Ok((2.0 * d as f64, vec![1.0; n])),
        OperatorKind::SignlessLaplacian if tags.is_hyperstar() => {
            let r = hyperstar_signless_lambda(k, d, &cfg).map_err(Failure::compute)?;
            let mut x = vec![1.0; n];
            x[tags.hyperstar_heart.unwrap()] = r.root;
            Ok((r.lambda, x))
        }
        OperatorKind::SignlessLaplacian if tags.is_hypercycle() => {
            let r = hypercycle_signless_lambda(k, &cfg).map_err(Failure::compute)?;
            let mut x = vec![r.root; n];
            for v in hyperspec::generate::hypercycle_intersections(k, g.num_edges()) {
                x[v] = 1.0;
            }
            Ok((r.lambda, x))
        }
        OperatorKind::Laplacian if tags.is_hyperstar() => {
            let heart = tags.hyperstar_heart.unwrap();
            let lambda = hyperstar_laplacian_largest(k, d, &cfg).map_err(Failure::compute)?;
            if k % 2 == 1 {
                let mut x = vec![0.0; n];
                x[heart] = 1.0;
                return Ok((lambda, x));
            }
            // leaves at ±1 with one negative vertex per edge, heart at λ - 1
            let mut x = vec![1.0; n];
            x[heart] = lambda - 1.0;
            for e in g.edges() {
                if let Some(&v) = e.iter().find(|&&v| v as usize != heart) {
                    x[v as usize] = -1.0;
                }
            }
            Ok((lambda, x))
        }
        _ => Err(none()),
    }
}

fn cmd_bipartite(file: &PathBuf) -> Result<(), Failure> {
    let g = load(file)?;
    let p: BitPartition = odd_bipartition(&g).map_err(Failure::input)?;
    if p.feasible {
        let v1: Vec<String> = p.v1().map(|v| (v + 1).to_string()).collect();
        let v2: Vec<String> = (0..g.n()).filter(|&v| !p.side[v]).map(|v| (v + 1).to_string()).collect();
        println!("odd-bipartite");
        println!("V1 {}", v1.join(" "));
        println!("V2 {}", v2.join(" "));
    } else {
        println!("not odd-bipartite");
        println!("witness edges (their parity equations sum to 0 = 1):");
        let edges = g.edges_one_based();
        for &i in &p.witness {
            let e: Vec<String> = edges[i].iter().map(usize::to_string).collect();
            println!("  {}", e.join(" "));
        }
    }
    Ok(())
}

fn cmd_bounds(file: &PathBuf) -> Result<(), Failure> {
    let g = load(file)?;
    let out = nqz_max(OperatorKind::Adjacency, &g, &SolverConfig::default()).map_err(Failure::compute)?;
    let r = bound_report(&g, out.pair.lambda).map_err(Failure::compute)?;
    let cap = binomial(g.n() - 1, g.k() - 1).map_or(f64::INFINITY, |c| 2.0 * c as f64);
    println!("max degree d              {}", r.d);
    println!("2 sum(d_i) / n            {:.12}", r.mean_bound);
    println!("lambda(A)                 {:.12}", r.lambda_a);
    println!("lambda(Q) lower bound     {:.12}", r.lower_q);
    println!("lambda(Q) upper bound     {:.12}", r.upper_q);
    println!("lambda(Q) complete cap    {:.12}", cap);
    println!("lambda(Q) hyperstar floor {:.12}", r.hyperstar_floor);
    println!("lambda(L) floor           {:.12}", r.laplacian_floor);
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let g = load(&a.file)?;
    let mut cfg = SuiteConfig::default();
    if let Some(t) = a.tol {
        if !(t > 0.0) {
            return Err(Failure::Input(format!("--tol {t} must be positive")));
        }
        cfg.value_tol = t;
        cfg.solver.tol = cfg.solver.tol.min(t * 1e-2);
    }
    if let Some(seed) = a.seed {
        cfg.solver.seed = seed;
    }
    if let Some(starts) = a.starts {
        cfg.solver.starts = starts;
    }
    let reports: Vec<VerificationReport> = if a.per_component {
        theorem_suite_per_component(&g, &cfg)
    } else {
        vec![theorem_suite_with(&g, &cfg, format!("{}: {}", a.file.display(), describe(&g)))]
    };
    if a.json {
        let text = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            serde_json::to_string_pretty(&reports)
        };
        println!("{}", text.map_err(Failure::compute)?);
    } else if a.csv {
        for (i, r) in reports.iter().enumerate() {
            let text = r.to_csv().map_err(Failure::compute)?;
            // a single header row when several components are printed
            let body = if i == 0 { text.as_str() } else { text.split_once('\n').map_or("", |(_, b)| b) };
            print!("{body}");
        }
    } else {
        for r in &reports {
            print!("{}", r.to_table());
        }
    }
    if reports.iter().all(VerificationReport::passed) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn cmd_closed_form(a: ClosedFormArgs) -> Result<(), Failure> {
    let cfg = ClosedFormConfig::default();
    let d = || a.d.ok_or_else(|| Failure::Input("--d is required for this equation".into()));
    let r: ClosedFormResult = match a.equation {
        Equation::HyperstarLaplacian => hyperstar_laplacian_lambda(a.k, d()?, &cfg),
        Equation::HyperstarSignless => hyperstar_signless_lambda(a.k, d()?, &cfg),
        Equation::Hypercycle => hypercycle_signless_lambda(a.k, &cfg),
    }
    .map_err(|e| match e {
        ClosedFormError::BadParity { .. } | ClosedFormError::BadParams(_) => Failure::input(e),
        _ => Failure::compute(e),
    })?;
    println!("root          {:.15}", r.root);
    println!("lambda        {:.15}", r.lambda);
    println!("bracket       ({}, {})", r.bracket.0, r.bracket.1);
    println!("poly residual {:.3e}", r.poly_residual);
    println!("iterations    {}", r.iterations);
    Ok(())
}
