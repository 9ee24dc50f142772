use std::fs;
use std::process::ExitCode;

use serde::Serialize;
use upr_core::experiments::{rows_to_csv, rows_to_json, RowVerdict};
use upr_core::graph::{parse_edge_list, Graph};
use upr_core::transition::parse_vector;
use upr_core::*;

use crate::{Format, GenArgs, GraphArgs, GraphSource, SweepArgs};

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub exit: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { code: e.code(), exit: EXIT_INPUT, message: e.to_string() }
    }
}

fn input_error(code: &'static str, message: impl Into<String>) -> CliError {
    CliError { code, exit: EXIT_INPUT, message: message.into() }
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input_error("E_IO", format!("{}: {e}", path.display())))
}

type Outcome = Result<Status, CliError>;

pub enum Status {
    Ok,
    CheckFailed,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::CheckFailed => ExitCode::from(EXIT_CHECK_FAILED),
        }
    }
}

fn load_graph(source: &GraphSource) -> Result<Graph, CliError> {
    match (&source.generator, &source.input) {
        (Some(spec), None) => Ok(generate(&spec.parse::<GeneratorSpec>()?, source.seed)?),
        (None, Some(path)) => Ok(parse_edge_list(&read(path)?)?),
        _ => Err(input_error("E_USAGE", "exactly one of --gen or --input is required")),
    }
}

fn warn_assumptions(g: &Graph) {
    if !is_connected(g) {
        eprintln!("warning: graph is disconnected; f is stationary but not the unique random-walk limit");
    }
    if is_bipartite(g) {
        eprintln!("warning: graph is bipartite; the undamped random walk has no limit distribution");
    }
}

fn personalization(spec: &str, g: &Graph) -> Result<ProbabilityVector, CliError> {
    match spec {
        "uniform" => Ok(uniform_vector(g.n())?),
        "degree" => Ok(degree_distribution(g)?),
        other => match other.strip_prefix("file:") {
            Some(path) => {
                let raw = parse_vector(&read(std::path::Path::new(path))?)?;
                if raw.len() != g.n() {
                    return Err(Error::DimensionMismatch { expected: g.n(), found: raw.len() }.into());
                }
                Ok(ProbabilityVector::new(raw)?)
            }
            None => Err(input_error("E_USAGE", format!("unknown --v source `{other}`"))),
        },
    }
}

struct Prepared {
    graph: Graph,
    a: RowStochasticMatrix,
    f: ProbabilityVector,
    v: ProbabilityVector,
    cfg: PageRankConfig,
}

fn prepare(args: &GraphArgs) -> Result<Prepared, CliError> {
    let cfg = PageRankConfig::new(args.c, args.tol, args.max_iter)?;
    if args.slack.is_nan() || args.slack < 0.0 {
        return Err(input_error("E_INVALID_PARAMETER", format!("invalid slack {}", args.slack)));
    }
    let graph = load_graph(&args.source)?;
    let a = transition_matrix(&graph)?;
    let f = degree_distribution(&graph)?;
    let v = personalization(&args.v, &graph)?;
    Ok(Prepared { graph, a, f, v, cfg })
}

fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn not_converged(r: &PageRankResult) -> CliError {
    let why = if r.stalled { "stalled at the rounding floor" } else { "hit --max-iter" };
    CliError {
        code: "E_NOT_CONVERGED",
        exit: EXIT_NOT_CONVERGED,
        message: format!(
            "{} solver {why} after {} iterations (residual {:e}); try --method linear or a larger --tol",
            r.method.name(),
            r.iterations,
            r.residual
        ),
    }
}

pub fn rank(args: &GraphArgs) -> Outcome {
    let p = prepare(args)?;
    warn_assumptions(&p.graph);
    let method = args.method.map_or(Method::Power, Into::into);
    let r = pagerank(&p.a, &p.cfg, &p.v, method)?;
    match args.format {
        Format::Text => {
            println!("# method: {}", r.method.name());
            println!("# iterations: {}", r.iterations);
            println!("# residual: {:e}", r.residual);
            println!("# converged: {}", r.converged);
            print!("{}", transition::format_vector_text(&r.pi));
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&r).expect("result serializes")),
        Format::Csv => {
            eprintln!("method {} iterations {} residual {:e}", r.method.name(), r.iterations, r.residual);
            println!("vertex,pi");
            for (i, x) in r.pi.iter().enumerate() {
                println!("{i},{}", sig17(*x));
            }
        }
    }
    if r.converged {
        Ok(Status::Ok)
    } else {
        Err(not_converged(&r))
    }
}

fn print_record<T: Serialize>(format: Format, record: &T) {
    let value = serde_json::to_value(record).expect("record serializes");
    let fields = value.as_object().expect("record is a struct");
    let render = |v: &serde_json::Value| match v {
        serde_json::Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), |x| x.to_string()),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
        Format::Text => {
            for (k, v) in fields {
                println!("{k}: {}", render(v));
            }
        }
        Format::Csv => {
            println!("{}", fields.keys().cloned().collect::<Vec<_>>().join(","));
            println!("{}", fields.values().map(render).collect::<Vec<_>>().join(","));
        }
    }
}

pub fn check(args: &GraphArgs) -> Outcome {
    let p = prepare(args)?;
    warn_assumptions(&p.graph);
    let method = args.method.map_or(Method::Linear, Into::into);
    let r = pagerank(&p.a, &p.cfg, &p.v, method)?;
    if !r.converged {
        return Err(not_converged(&r));
    }
    let report = check_theorem(&p.a, p.cfg.c, &p.v, &p.f, &r.pi, args.slack)?;
    print_record(args.format, &report);
    if report.verdict.is_pass() {
        Ok(Status::Ok)
    } else {
        eprintln!(
            "check failed: lower {} <= |pi - f|_1 {} <= upper {} does not hold within slack {}",
            report.lower, report.distance_pif, report.upper, report.slack
        );
        Ok(Status::CheckFailed)
    }
}

pub fn norms(args: &GraphArgs) -> Outcome {
    upr_core::solver::check_damping(args.c)?;
    let graph = load_graph(&args.source)?;
    let a = transition_matrix(&graph)?;
    let report = norm_identities(&a, args.c).map_err(|e| match e {
        Error::DenseCapExceeded { n, cap } => input_error(
            "E_DENSE_CAP",
            format!("norms materializes dense n x n matrices and is capped at n = {cap}; graph has n = {n}"),
        ),
        other => other.into(),
    })?;
    print_record(args.format, &report);
    if report.within(args.slack) {
        Ok(Status::Ok)
    } else {
        Ok(Status::CheckFailed)
    }
}

fn sweep_spec(args: &SweepArgs) -> Result<SweepSpec, CliError> {
    let mut spec = match &args.spec {
        Some(path) => SweepSpec::from_toml(&read(path)?)?,
        None => SweepSpec::default(),
    };
    if !args.families.is_empty() {
        spec.families = args.families.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    }
    if let Some(c) = &args.c_values {
        spec.c_values = c.clone();
    }
    if let Some(s) = &args.strategies {
        spec.v_strategies = s.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    }
    spec.trials = args.trials.unwrap_or(spec.trials);
    spec.seed = args.seed.unwrap_or(spec.seed);
    spec.slack = args.slack.unwrap_or(spec.slack);
    spec.tol = args.tol.unwrap_or(spec.tol);
    spec.max_iter = args.max_iter.unwrap_or(spec.max_iter);
    if let Some(m) = args.method {
        spec.method = m.into();
    }
    spec.validate()?;
    Ok(spec)
}

pub fn sweep(args: &SweepArgs) -> Outcome {
    let spec = sweep_spec(args)?;
    let rows = run_sweep(&spec)?;
    for r in rows.iter().filter(|r| r.verdict == RowVerdict::Skip) {
        eprintln!(
            "warning: skipped {} seed {} c {} {}: {}",
            r.family,
            r.seed,
            r.c,
            r.strategy,
            r.note.as_deref().unwrap_or("")
        );
    }
    match args.format {
        Format::Csv => print!("{}", rows_to_csv(&rows)),
        Format::Json => println!("{}", rows_to_json(&rows)),
        Format::Text => {
            let s = tightness_summary(&rows)?;
            println!("pass {} fail {} skip {}", s.pass, s.fail, s.skip);
            for st in &s.per_c {
                println!(
                    "c {}: n={} min {} median {} max {} (envelope [{}, 1])",
                    st.c,
                    st.count,
                    sig17(st.min),
                    sig17(st.median),
                    sig17(st.max),
                    sig17((1.0 - st.c) / (1.0 + st.c))
                );
            }
        }
    }
    let failing = rows.iter().filter(|r| r.verdict == RowVerdict::Fail).count();
    if failing == 0 {
        Ok(Status::Ok)
    } else {
        eprintln!("{failing} failing rows");
        Ok(Status::CheckFailed)
    }
}

#[derive(Serialize)]
struct EdgeListJson<'a> {
    n: usize,
    edges: &'a [(usize, usize)],
}

pub fn gen(args: &GenArgs) -> Outcome {
    let g = load_graph(&args.source)?;
    match args.format {
        Format::Text => print!("{}", g.to_edge_list()),
        Format::Json => println!(
            "{}",
            serde_json::to_string(&EdgeListJson { n: g.n(), edges: g.edges() }).expect("json")
        ),
        Format::Csv => {
            println!("u,w");
            for (u, w) in g.edges() {
                println!("{u},{w}");
            }
        }
    }
    Ok(Status::Ok)
}
