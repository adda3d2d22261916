use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use thinlie::endo::{compute_grend0, identify_field, DEFAULT_K0};
use thinlie::gf::{ExtElem, ExtField, ProjPoint};
use thinlie::io::{load_path, save_path, AlgebraFile, FieldDescriptor};
use thinlie::maxclass::{
    centralizer_stats, make_metabelian, search_sequences, two_step_centralizers, validate, MaxClassAlgebra,
};
use thinlie::reconstruct::verify_roundtrip;
use thinlie::subfield::{generate_subalgebra, scan, GeneratorPair, ScanMode, Verdict};
use thinlie::Error;

const SCAN_FIELD_LIMIT: usize = 25;

#[derive(Parser)]
#[command(name = "thinlie", version, about = "Thin subalgebras of Lie algebras of maximal class")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a presentation to disk.
    Build {
        kind: BuildKind,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        class: usize,
        /// Output file (metabelian) or directory (search).
        #[arg(short, long)]
        output: PathBuf,
        /// Maximum number of presentations written by `search`.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Run the Jacobi check on an algebra file.
    Check { file: PathBuf },
    /// Generate `L = <X, Y>` and classify it.
    Analyze(PairArgs),
    /// Endomorphism ring of the graded module of `L`.
    Endo {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = DEFAULT_K0)]
        k0: usize,
    },
    /// Rebuild the algebra from a thin subalgebra and compare.
    Roundtrip(PairArgs),
    /// Classify all normalized (or all) generator pairs.
    Scan {
        file: PathBuf,
        #[arg(long)]
        window: Option<usize>,
        /// Every pair in `M_1 × M_1` instead of the normalized ones.
        #[arg(long)]
        raw: bool,
    },
    /// Centralizer occurrence statistics.
    Stats { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum BuildKind {
    Metabelian,
    Search,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    /// `v,u` for `μ² = uμ + v`.
    #[arg(long, value_parser = parse_ext)]
    ext: [u32; 2],
}

#[derive(Args)]
struct PairArgs {
    file: PathBuf,
    /// `a0,a1,b0,b1` for `(a0 + a1μ)x + (b0 + b1μ)y`.
    #[arg(long = "X", value_parser = parse_elem4)]
    x: [u32; 4],
    #[arg(long = "Y", value_parser = parse_elem4)]
    y: [u32; 4],
    #[arg(long)]
    window: Option<usize>,
}

fn parse_ints<const N: usize>(s: &str) -> Result<[u32; N], String> {
    let v: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| format!("expected {N} comma-separated integers"))
}

fn parse_ext(s: &str) -> Result<[u32; 2], String> {
    parse_ints::<2>(s)
}

fn parse_elem4(s: &str) -> Result<[u32; 4], String> {
    parse_ints::<4>(s)
}

/// One run: printed as JSON on stdout.
#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    version: &'static str,
    inputs: Value,
    results: Value,
    exit_code: u8,
}

/// Errors from bad input map to 2, failed mathematical checks to 1.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NotPrime(_)
        | Error::ReduciblePolynomial { .. }
        | Error::ZeroPair(_)
        | Error::WindowTooLarge { .. }
        | Error::WindowTooLargeForBruteForce { .. }
        | Error::BadBound { .. }
        | Error::DegenerateGenerators
        | Error::OutOfWindow { .. }
        | Error::WindowTooSmall(_)
        | Error::Precondition(_)
        | Error::Schema(_) => 2,
        _ => 1,
    }
}

struct Outcome {
    results: Value,
    exit_code: u8,
    table: String,
}

impl Outcome {
    fn ok(results: Value, table: String) -> Self {
        Outcome {
            results,
            exit_code: 0,
            table,
        }
    }

    fn error(err: &Error) -> Self {
        Outcome {
            results: json!({ "error": err.to_string() }),
            exit_code: exit_code(err),
            table: format!("error: {err}\n"),
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data")
}

fn elem(field: &ExtField, c: [u32; 2]) -> Result<ExtElem, Error> {
    let p = field.p();
    if c[0] >= p || c[1] >= p {
        return Err(Error::Schema(format!("coordinates must be reduced mod {p}")));
    }
    Ok(ExtElem::new(c[0], c[1]))
}

fn pair_of(field: &ExtField, x: [u32; 4], y: [u32; 4]) -> Result<GeneratorPair, Error> {
    Ok(GeneratorPair::new(
        elem(field, [x[0], x[1]])?,
        elem(field, [x[2], x[3]])?,
        elem(field, [y[0], y[1]])?,
        elem(field, [y[2], y[3]])?,
    ))
}

fn point_str(p: &ProjPoint) -> String {
    if p.is_infinity() {
        "Ey".into()
    } else if p.b.is_zero() {
        "Ex".into()
    } else {
        format!("E(x+({})y)", p.b)
    }
}

fn load_alg(file: &Path) -> Result<MaxClassAlgebra, Error> {
    MaxClassAlgebra::new(load_path(file)?)
}

fn window_of(alg: &MaxClassAlgebra, window: Option<usize>) -> usize {
    window.unwrap_or(alg.class())
}

fn run_build(kind: BuildKind, field: &FieldArgs, class: usize, output: &Path, limit: usize) -> Result<Outcome, Error> {
    let e = FieldDescriptor {
        p: field.p,
        ext_min_poly: field.ext,
    }
    .field()?;
    match kind {
        BuildKind::Metabelian => {
            let pres = make_metabelian(e, class)?;
            save_path(&pres, output)?;
            Ok(Outcome::ok(
                json!({ "files": [output.display().to_string()], "pairs": pres.adjoint().len() }),
                format!("wrote {}\n", output.display()),
            ))
        }
        BuildKind::Search => {
            let found = search_sequences(e, class, limit)?;
            std::fs::create_dir_all(output).map_err(|err| Error::Schema(format!("{}: {err}", output.display())))?;
            let mut files = Vec::new();
            let mut table = String::new();
            for (i, pres) in found.iter().enumerate() {
                let path = output.join(format!("search_{i:03}.json"));
                save_path(pres, &path)?;
                let devs = two_step_centralizers(pres).deviations();
                table.push_str(&format!("{}  deviations {:?}\n", path.display(), devs));
                files.push(json!({ "file": path.display().to_string(), "deviations": devs }));
            }
            Ok(Outcome::ok(json!({ "count": files.len(), "files": files }), table))
        }
    }
}

fn run_check(file: &Path) -> Result<Outcome, Error> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Schema(format!("{}: {e}", file.display())))?;
    let parsed: AlgebraFile = serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
    let pres = parsed.presentation()?;
    let report = validate(&pres)?;
    let table = match &report.first_failure {
        None => format!("ok: class {}, {} triples checked\n", pres.class(), report.checked_triples),
        Some(f) => format!("not a Lie algebra: {f}\n"),
    };
    let mut out = Outcome::ok(to_value(&report), table);
    if !report.ok {
        out.exit_code = 1;
    }
    Ok(out)
}

fn analysis_table(alg: &MaxClassAlgebra, a: &thinlie::subfield::SubalgebraAnalysis) -> String {
    let cents = two_step_centralizers(alg.presentation());
    let mut t = String::from("degree  dim_F  d  centralizer\n");
    for i in 1..=a.window {
        let d = match i.checked_sub(2).and_then(|k| a.d.get(k)) {
            Some(d) => d.to_string(),
            None => "-".into(),
        };
        let c = if (2..alg.class()).contains(&i) {
            point_str(&cents.at(i))
        } else {
            "-".into()
        };
        t.push_str(&format!("{i:>6}  {:>5}  {d}  {c}\n", a.dim(i)));
    }
    t.push_str(&format!("verdict: {}\n", a.verdict().as_str()));
    t
}

fn run_analyze(args: &PairArgs) -> Result<Outcome, Error> {
    let alg = load_alg(&args.file)?;
    let pair = pair_of(alg.field(), args.x, args.y)?;
    let window = window_of(&alg, args.window);
    let a = generate_subalgebra(&alg, pair, window)?;
    let mut results = to_value(&a.report());
    if a.verdict() == Verdict::Thin {
        let endo = compute_grend0(&alg, &a, DEFAULT_K0).and_then(|ring| identify_field(&ring));
        results["endo"] = match endo {
            Ok(id) => to_value(&id.report()),
            Err(err) => json!({ "error": err.to_string() }),
        };
    }
    let mut out = Outcome::ok(results, analysis_table(&alg, &a));
    if a.verdict() == Verdict::Degenerate {
        out.exit_code = 1;
    }
    Ok(out)
}

fn run_endo(args: &PairArgs, k0: usize) -> Result<Outcome, Error> {
    let alg = load_alg(&args.file)?;
    let pair = pair_of(alg.field(), args.x, args.y)?;
    let a = generate_subalgebra(&alg, pair, window_of(&alg, args.window))?;
    let ring = compute_grend0(&alg, &a, k0)?;
    let report = identify_field(&ring)?.report();
    let table = format!(
        "dim {}  min_poly {:?}  field {}  embedding {:?}\n",
        report.dim, report.min_poly, report.is_field, report.embedding
    );
    Ok(Outcome::ok(to_value(&report), table))
}

fn run_roundtrip(args: &PairArgs) -> Result<Outcome, Error> {
    let alg = load_alg(&args.file)?;
    let pair = pair_of(alg.field(), args.x, args.y)?;
    let report = verify_roundtrip(&alg, pair, window_of(&alg, args.window))?;
    let table = format!(
        "branch {:?}  k {}  usable window {}  iso {}\n",
        report.branch, report.k, report.usable_window, report.iso
    );
    let mut out = Outcome::ok(to_value(&report), table);
    if !report.iso {
        out.exit_code = 1;
    }
    Ok(out)
}

fn run_scan(file: &Path, window: Option<usize>, raw: bool) -> Result<Outcome, Error> {
    let alg = load_alg(file)?;
    if alg.field().size() > SCAN_FIELD_LIMIT {
        return Err(Error::Precondition(format!(
            "scan needs |E| <= {SCAN_FIELD_LIMIT}, got {}",
            alg.field().size()
        )));
    }
    let mode = if raw { ScanMode::Raw } else { ScanMode::Normalized };
    let t = scan(&alg, window_of(&alg, window), mode)?;
    let mut table = format!(
        "pairs {}  thin {}  maximal {}  degenerate {}\n",
        t.pairs, t.thin, t.maximal, t.degenerate
    );
    for (r, n) in &t.rconstrained {
        table.push_str(&format!("rconstrained r={r}  {n}\n"));
    }
    table.push_str(&format!("thin by lines {}  agree {}\n", t.thin_by_lines, t.counts_agree));
    let mut out = Outcome::ok(to_value(&t), table);
    if !t.counts_agree {
        out.exit_code = 1;
    }
    Ok(out)
}

fn run_stats(file: &Path) -> Result<Outcome, Error> {
    let alg = load_alg(file)?;
    let report = centralizer_stats(&alg);
    let mut table = String::from("centralizer  first  2p^k  max_gap  occurrences\n");
    for c in &report.centralizers {
        let p = ProjPoint {
            a: c.point[0],
            b: c.point[1],
        };
        table.push_str(&format!(
            "{:<11}  {:>5}  {:>4}  {:>7}  {:?}\n",
            point_str(&p),
            c.first_occurrence,
            c.first_is_two_p_power,
            c.max_gap.map_or("-".into(), |g| g.to_string()),
            c.occurrences
        ));
    }
    Ok(Outcome::ok(to_value(&report), table))
}

fn pair_inputs(a: &PairArgs) -> Value {
    json!({ "file": a.file.display().to_string(), "X": a.x, "Y": a.y, "window": a.window })
}

fn configure_threads() -> Result<(), Error> {
    if let Ok(s) = std::env::var("THINLIE_THREADS") {
        let n: usize = s
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Schema(format!("THINLIE_THREADS={s:?} is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Schema(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = configure_threads();
    let (command, inputs, outcome) = match (&threads, &cli.command) {
        (Err(err), _) => ("config", json!({}), Err(err.clone())),
        (Ok(()), command) => dispatch(command),
    };
    let outcome = outcome.unwrap_or_else(|err| Outcome::error(&err));
    emit(command, inputs, outcome)
}

fn dispatch(command: &Command) -> (&'static str, Value, Result<Outcome, Error>) {
    match command {
        Command::Build {
            kind,
            field,
            class,
            output,
            limit,
        } => (
            "build",
            json!({ "kind": kind, "p": field.p, "ext": field.ext, "class": class,
                    "output": output.display().to_string(), "limit": limit }),
            run_build(*kind, field, *class, output, *limit),
        ),
        Command::Check { file } => ("check", json!({ "file": file.display().to_string() }), run_check(file)),
        Command::Analyze(a) => ("analyze", pair_inputs(a), run_analyze(a)),
        Command::Endo { pair, k0 } => {
            let mut inputs = pair_inputs(pair);
            inputs["k0"] = json!(k0);
            ("endo", inputs, run_endo(pair, *k0))
        }
        Command::Roundtrip(a) => ("roundtrip", pair_inputs(a), run_roundtrip(a)),
        Command::Scan { file, window, raw } => (
            "scan",
            json!({ "file": file.display().to_string(), "window": window, "raw": raw }),
            run_scan(file, *window, *raw),
        ),
        Command::Stats { file } => ("stats", json!({ "file": file.display().to_string() }), run_stats(file)),
    }
}

fn emit(command: &'static str, inputs: Value, outcome: Outcome) -> ExitCode {
    eprint!("{}", outcome.table);
    let report = RunReport {
        command,
        version: concat!("thinlie ", env!("CARGO_PKG_VERSION")),
        inputs,
        results: outcome.results,
        exit_code: outcome.exit_code,
    };
    println!("{}", serde_json::to_string(&report).expect("plain data"));
    ExitCode::from(outcome.exit_code)
}
