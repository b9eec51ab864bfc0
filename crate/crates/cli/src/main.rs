//! `ratherm`: solve, classify and inspect rational Hermite interpolation
//! problems from JSON documents.
//!
//! Exit codes: 0 solvable, 3 unattainable, 1 input error, 2 internal error,
//! 4 verification failure.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ratherm::io::{document_json, parse_document, ParseOptions};
use ratherm::poly::{eea, hermite_interpolant, product_f, Degree, Poly};
use ratherm::problem::{delta_matrix, HermiteData};
use ratherm::solvers::{solve_eea, solve_kernel, solve_minors, Classification, MinimalSolution};
use ratherm::strata::{classify_by_rank, stratum_equations, StratumReport};
use ratherm::verify::sampler::{sample_with, SampleSpec};
use ratherm::verify::{run_suite, Suite, VerifyReport};
use ratherm::{Error, FieldConfig, MinorVector};

const EXIT_SOLVABLE: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_UNATTAINABLE: u8 = 3;
const EXIT_VERIFY: u8 = 4;

const SEED_ENV: &str = "RATHERM_SEED";

#[derive(Parser)]
#[command(name = "ratherm", version, about = "Exact rational Hermite interpolation")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Field: Q or p:PRIME. Overrides the document's field.
    #[arg(long, global = true)]
    field: Option<FieldConfig>,
    /// Seed for `verify` and `sample`; RATHERM_SEED takes precedence.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Args)]
struct InputArgs {
    /// Input document; stdin when absent or `-`.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Values are raw derivatives; divide the j-th by j!.
    #[arg(long)]
    derivative_values: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Kernel,
    Eea,
    Minors,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifyMethod {
    /// Diagonal minors and chart polynomials.
    Minors,
    /// Ranks of the structured matrices only.
    Rank,
}

#[derive(Subcommand)]
enum Command {
    /// Find A/B or report that none exists.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Method::Kernel)]
        method: Method,
    },
    /// Report the defect, the chart and the witness nodes.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = ClassifyMethod::Minors)]
        method: ClassifyMethod,
    },
    /// Signed maximal minors Δ_{t,i} for a range of t.
    Minors {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        t_min: Option<usize>,
        #[arg(long)]
        t_max: Option<usize>,
    },
    /// Extended Euclidean table of (F, G) with the cut row marked.
    EeaTrace {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Check an identity suite at random points.
    Verify {
        /// catalog, corrected, delta-shift or self-test.
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        samples: u64,
    },
    /// Emit a random document on a chosen stratum.
    Sample {
        /// Multiplicities, e.g. 2,1.
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long)]
        k: usize,
        /// Target kernel dimension.
        #[arg(long, default_value_t = 1)]
        defect: usize,
        #[arg(long)]
        force_unattainable: bool,
        /// Node (0-based) carrying the common root when forcing.
        #[arg(long)]
        node: Option<usize>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InternalInconsistency(_)
            | Error::DivisionByZero
            | Error::MixedFields(..)
            | Error::BothZero
            | Error::ZeroInput => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

struct Output {
    code: u8,
    json: Value,
    pretty: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_SOLVABLE };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Pretty => print!("{}", out.pretty),
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn seed(cli: &Cli) -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| input_failure(format!("{SEED_ENV} = `{s}` is not an unsigned integer"))),
        Err(_) => Ok(cli.seed.unwrap_or(0)),
    }
}

fn read_data(cli: &Cli, args: &InputArgs) -> Result<HermiteData, Failure> {
    let text = match &args.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| input_failure(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| input_failure(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    let opts = ParseOptions {
        field_override: cli.field,
        derivative_values: args.derivative_values,
    };
    Ok(parse_document(&text, &opts)?)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Solve { input, method } => cmd_solve(&read_data(cli, input)?, *method),
        Command::Classify { input, method } => cmd_classify(&read_data(cli, input)?, *method),
        Command::Minors { input, t_min, t_max } => cmd_minors(&read_data(cli, input)?, *t_min, *t_max),
        Command::EeaTrace { input } => cmd_eea_trace(&read_data(cli, input)?),
        Command::Verify { suite, samples } => cmd_verify(*suite, cli.field.unwrap_or(FieldConfig::Rationals), *samples, seed(cli)?),
        Command::Sample {
            shape,
            k,
            defect,
            force_unattainable,
            node,
        } => cmd_sample(SampleSpec {
            field: cli.field.unwrap_or(FieldConfig::Rationals),
            shape: shape.clone(),
            k: *k,
            defect: *defect,
            force_unattainable: *force_unattainable,
            forced_node: *node,
            seed: seed(cli)?,
        }),
    }
}

fn header(data: &HermiteData) -> String {
    let nodes: Vec<String> = data.nodes().iter().map(ToString::to_string).collect();
    format!(
        "field {}, n = {}, k = {}, nodes [{}], multiplicities {:?}\n",
        data.field(),
        data.n(),
        data.k(),
        nodes.join(", "),
        data.multiplicities()
    )
}

fn describe_witnesses(data: &HermiteData, witnesses: &[usize]) -> String {
    witnesses
        .iter()
        .map(|&i| format!("{i} (u = {})", data.nodes()[i]))
        .collect::<Vec<_>>()
        .join(", ")
}

fn classification_json(c: &Classification) -> Value {
    match c {
        Classification::Solvable { solution, reduced } => json!({
            "status": "solvable",
            "A": solution.numerator,
            "B": solution.denominator,
            "reduced": reduced,
        }),
        Classification::Unattainable { stratum, witnesses } => json!({
            "status": "unattainable",
            "stratum": stratum,
            "witnesses": witnesses,
        }),
    }
}

fn classification_pretty(data: &HermiteData, c: &Classification) -> String {
    match c {
        Classification::Solvable { solution, .. } => format!(
            "solvable\n  A = {}\n  B = {}\n",
            solution.numerator.to_pretty(),
            solution.denominator.to_pretty()
        ),
        Classification::Unattainable { stratum, witnesses } => format!(
            "unattainable\n  stratum (kernel dimension) {stratum}\n  witness nodes {}\n",
            describe_witnesses(data, witnesses)
        ),
    }
}

fn exit_for(c: &Classification) -> u8 {
    if c.is_solvable() {
        EXIT_SOLVABLE
    } else {
        EXIT_UNATTAINABLE
    }
}

fn minimal_pretty(m: &MinimalSolution) -> String {
    format!(
        "  minimal pair A0 = {}, B0 = {} (s0 = {})\n",
        m.a0.to_pretty(),
        m.b0.to_pretty(),
        m.s0
    )
}

fn verdicts_agree(a: &Classification, b: &Classification) -> bool {
    match (a, b) {
        (Classification::Solvable { solution: x, .. }, Classification::Solvable { solution: y, .. }) => x.same_function(y),
        (Classification::Unattainable { .. }, Classification::Unattainable { .. }) => a == b,
        _ => false,
    }
}

fn cmd_solve(data: &HermiteData, method: Method) -> Result<Output, Failure> {
    let mut pretty = header(data);
    let (class, mut json) = match method {
        Method::Kernel => {
            let (min, class) = solve_kernel(data)?;
            pretty += &classification_pretty(data, &class);
            pretty += &minimal_pretty(&min);
            let mut j = classification_json(&class);
            j["minimal"] = json!(min);
            (class, j)
        }
        Method::Eea => {
            let class = solve_eea(data)?;
            pretty += &classification_pretty(data, &class);
            (class.clone(), classification_json(&class))
        }
        Method::Minors => {
            let ms = solve_minors(data)?;
            pretty += &classification_pretty(data, &ms.classification);
            pretty += &minimal_pretty(&ms.minimal);
            let mut j = classification_json(&ms.classification);
            j["defect"] = json!(ms.defect);
            j["chart"] = json!(ms.chart);
            (ms.classification, j)
        }
        Method::All => {
            let (min, kernel) = solve_kernel(data)?;
            let euclid = solve_eea(data)?;
            let minors = solve_minors(data)?.classification;
            let agree = verdicts_agree(&kernel, &euclid) && verdicts_agree(&kernel, &minors);
            if !agree {
                return Err(Failure {
                    code: EXIT_INTERNAL,
                    message: format!("solvers disagree: kernel {kernel:?}, eea {euclid:?}, minors {minors:?}"),
                });
            }
            pretty += &classification_pretty(data, &kernel);
            pretty += &minimal_pretty(&min);
            pretty += "  kernel, eea and minors agree\n";
            let mut j = classification_json(&kernel);
            j["minimal"] = json!(min);
            j["methods"] = json!({
                "kernel": classification_json(&kernel),
                "eea": classification_json(&euclid),
                "minors": classification_json(&minors),
            });
            j["method_agreement"] = json!(agree);
            (kernel, j)
        }
    };
    json["method"] = json!(match method {
        Method::Kernel => "kernel",
        Method::Eea => "eea",
        Method::Minors => "minors",
        Method::All => "all",
    });
    Ok(Output {
        code: exit_for(&class),
        json,
        pretty,
    })
}

fn stratum_pretty(data: &HermiteData, r: &StratumReport) -> String {
    let mut s = header(data);
    let _ = writeln!(s, "{}", if r.unattainable { "unattainable" } else { "solvable" });
    let _ = writeln!(s, "  defect {}", r.defect);
    if let Some(chart) = r.chart {
        let _ = writeln!(s, "  chart {}", serde_json::to_value(chart).expect("json").as_str().unwrap_or(""));
    }
    if r.unattainable {
        let _ = writeln!(s, "  witness nodes {}", describe_witnesses(data, &r.witnesses));
    }
    for (t, d) in &r.diagonal_minors {
        let _ = writeln!(s, "  Δ_{t},{t} = {d}");
    }
    for nc in &r.node_charts {
        let _ = writeln!(s, "  node {}: lower chart {}, upper chart {}", nc.node, nc.lower, nc.upper);
    }
    s
}

fn cmd_classify(data: &HermiteData, method: ClassifyMethod) -> Result<Output, Failure> {
    let report = match method {
        ClassifyMethod::Minors => stratum_equations(data)?,
        ClassifyMethod::Rank => classify_by_rank(data)?,
    };
    Ok(Output {
        code: if report.unattainable {
            EXIT_UNATTAINABLE
        } else {
            EXIT_SOLVABLE
        },
        pretty: stratum_pretty(data, &report),
        json: json!(report),
    })
}

fn cmd_minors(data: &HermiteData, t_min: Option<usize>, t_max: Option<usize>) -> Result<Output, Failure> {
    let n = data.n();
    let (lo, hi) = (t_min.unwrap_or(1), t_max.unwrap_or(n + 1));
    if lo < 1 || hi > n + 1 || lo > hi {
        return Err(input_failure(format!("t range {lo}..={hi} must lie in 1..={}", n + 1)));
    }
    let mut vectors = Vec::new();
    let mut diagonal = serde_json::Map::new();
    let mut pretty = header(data);
    for t in lo..=hi {
        let mv = MinorVector::compute(data, t)?;
        let product = delta_matrix(data, t)?.mul_vec(&mv.values)?;
        let annihilates = product.iter().all(|x| x.is_zero());
        diagonal.insert(t.to_string(), json!(mv.diagonal()));
        let vals: Vec<String> = mv.values.iter().map(ToString::to_string).collect();
        let _ = writeln!(pretty, "t = {t}: Δ_{t},1..{} = [{}]  diagonal {}", n + 1, vals.join(", "), mv.diagonal());
        vectors.push(json!({ "t": t, "values": mv.values, "annihilates": annihilates }));
    }
    Ok(Output {
        code: EXIT_SOLVABLE,
        json: json!({ "vectors": vectors, "diagonal": diagonal }),
        pretty,
    })
}

fn deg_json(p: &Poly) -> Value {
    json!(p.degree())
}

fn cmd_eea_trace(data: &HermiteData) -> Result<Output, Failure> {
    let f = product_f(data);
    let g = hermite_interpolant(data)?;
    let mut pretty = header(data);
    let _ = writeln!(pretty, "F = {}\nG = {}", f.to_pretty(), g.to_pretty());
    if g.is_zero() {
        let _ = writeln!(pretty, "G = 0: every value vanishes, the solution is 0/1");
        return Ok(Output {
            code: EXIT_SOLVABLE,
            json: json!({ "F": f, "G": g, "rows": [], "cut_row": null }),
            pretty,
        });
    }
    let trace = eea(&f, &g)?;
    let bound = data.k() as i64 - 1;
    let cut = trace.cut_row(bound).map(|r| r.index);
    let mut rows = Vec::new();
    let mut cut_coprime = None;
    for row in &trace.rows {
        let is_cut = Some(row.index) == cut;
        let coprime = if row.remainder.is_zero() && row.bezout_t.is_zero() {
            false
        } else {
            row.remainder.gcd(&row.bezout_t)?.degree() == Degree::Finite(0)
        };
        if is_cut {
            cut_coprime = Some(coprime);
        }
        let _ = writeln!(
            pretty,
            "{} {}: Q = {}, R = {}, S = {}, T = {}",
            if is_cut { "*" } else { " " },
            row.index,
            row.quotient.to_pretty(),
            row.remainder.to_pretty(),
            row.bezout_s.to_pretty(),
            row.bezout_t.to_pretty()
        );
        rows.push(json!({
            "index": row.index,
            "Q": row.quotient,
            "R": row.remainder,
            "S": row.bezout_s,
            "T": row.bezout_t,
            "deg_R": deg_json(&row.remainder),
            "deg_T": deg_json(&row.bezout_t),
            "cut": is_cut,
        }));
    }
    if let Some(c) = cut_coprime {
        let _ = writeln!(pretty, "cut row (first with deg R <= {bound}): gcd(R, T) {} 1", if c { "=" } else { "!=" });
    }
    Ok(Output {
        code: EXIT_SOLVABLE,
        json: json!({
            "F": f,
            "G": g,
            "reduced_input": trace.reduced_input,
            "cut_row": cut,
            "cut_row_coprime": cut_coprime,
            "rows": rows,
        }),
        pretty,
    })
}

fn verify_pretty(r: &VerifyReport) -> String {
    let mut s = format!("suite {} over {}, seed {}\n", r.suite, r.field, r.seed);
    for c in &r.checks {
        let _ = writeln!(
            s,
            "{} {} ({}/{} points) {}",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            c.passes,
            c.samples,
            c.statement
        );
        for cx in &c.failures {
            let _ = writeln!(s, "    sample {}: {}\n    point {}", cx.sample, cx.detail, cx.point);
        }
    }
    let _ = writeln!(s, "{}", if r.all_passed { "all checks passed" } else { "some checks failed" });
    s
}

fn cmd_verify(suite: Suite, field: FieldConfig, samples: u64, seed: u64) -> Result<Output, Failure> {
    let report = run_suite(suite, field, samples, seed)?;
    Ok(Output {
        code: if report.all_passed { EXIT_SOLVABLE } else { EXIT_VERIFY },
        pretty: verify_pretty(&report),
        json: json!(report),
    })
}

fn cmd_sample(spec: SampleSpec) -> Result<Output, Failure> {
    let data = sample_with(&spec)?;
    let doc = document_json(&data);
    Ok(Output {
        code: EXIT_SOLVABLE,
        pretty: format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")),
        json: doc,
    })
}
