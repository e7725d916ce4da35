use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grcodes::groups::parse_group_descriptor;
use grcodes::search::{builtin_search, run_search, verify_displayed_matrix, SearchSpec, BUILTIN_SEARCHES, DISPLAYED_MATRICES};
use grcodes::verify::{run_suite, DEFAULT_SEED, SUITES};
use grcodes::{parse_element, CodeReport, Distance, FiniteGroup, GroupRingElement, LinearCode, Metric, RingSpec};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "grc", version, about = "Codes from group rings over F2 and R_k")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for searches and large enumerations.
    #[arg(long, global = true, env = "GRC_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build C(v) and report its parameters.
    Construct(CodeArgs),
    /// Report on the binary Gray image of C(v).
    Gray(CodeArgs),
    /// Report on the dual of C(v).
    Dual(CodeArgs),
    /// Weight enumerators of C(v).
    Enum(ElementArgs),
    /// Run a named or file-based exhaustive search.
    Search(SearchArgs),
    /// Check the stored displayed matrices and run the property suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ElementArgs {
    /// `f2` or `r<k>`.
    #[arg(long, default_value = "f2")]
    ring: String,
    /// Built-in name, product such as `c3 x d8@csd`, or a Cayley-table JSON file.
    #[arg(long)]
    group: String,
    /// Group-ring element, e.g. `1 + b*a + u1*h^2`.
    #[arg(long)]
    element: String,
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    element: ElementArgs,
    /// Include the echelon generator matrix of the Gray image.
    #[arg(long)]
    matrix: bool,
    /// Exit with status 1 unless the minimum distance is at least this.
    #[arg(long)]
    min_distance: Option<u32>,
}

#[derive(Args)]
struct SearchArgs {
    /// Built-in search name.
    #[arg(long, conflicts_with = "pattern", required_unless_present_any = ["pattern", "list"])]
    name: Option<String>,
    /// JSON pattern file with the same fields as the built-in specs.
    #[arg(long)]
    pattern: Option<String>,
    /// Override the number of reported witnesses.
    #[arg(long)]
    witnesses: Option<usize>,
    /// List the built-in searches.
    #[arg(long)]
    list: bool,
    /// Print the spec instead of running it.
    #[arg(long)]
    show_spec: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Every displayed matrix and every suite.
    #[arg(long)]
    all: bool,
    /// Property suite to run (repeatable).
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: Vec<String>,
    /// Displayed matrix to check (repeatable).
    #[arg(long = "displayed", value_parser = clap::builder::PossibleValuesParser::new(DISPLAYED_MATRICES))]
    displayed: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

/// Exit statuses: 0 success, 1 verification mismatch, 2 usage or parse error.
enum Failure {
    Mismatch,
    Error(String),
}

impl From<grcodes::Error> for Failure {
    fn from(e: grcodes::Error) -> Self {
        Failure::Error(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    let result = match &cli.command {
        Command::Construct(a) => cmd_code(&cli, a, View::Code),
        Command::Gray(a) => cmd_code(&cli, a, View::Gray),
        Command::Dual(a) => cmd_code(&cli, a, View::Dual),
        Command::Enum(a) => cmd_enum(&cli, a),
        Command::Search(a) => cmd_search(&cli, a),
        Command::Verify(a) => cmd_verify(&cli, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_group(desc: &str) -> Result<FiniteGroup, Failure> {
    let path = Path::new(desc);
    if desc.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Error(format!("cannot read {desc}: {e}")))?;
        return Ok(FiniteGroup::from_json(&text)?);
    }
    Ok(parse_group_descriptor(desc)?)
}

fn load_element(a: &ElementArgs) -> Result<GroupRingElement, Failure> {
    let ring = RingSpec::parse(&a.ring)?;
    let group = Arc::new(load_group(&a.group)?);
    Ok(parse_element(&a.element, ring, &group)?)
}

fn emit<T: Serialize + std::fmt::Display>(cli: &Cli, value: &T) {
    let text = match cli.format {
        Format::Text => value.to_string(),
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize"),
    };
    out(&text);
}

fn out(text: &str) {
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout(), "{}", text.trim_end());
}

#[derive(Clone, Copy)]
enum View {
    Code,
    Gray,
    Dual,
}

fn cmd_code(cli: &Cli, a: &CodeArgs, view: View) -> Outcome {
    let v = load_element(&a.element)?;
    let code = LinearCode::from_element(&v);
    let (code, metric) = match view {
        View::Code => (code, Metric::Hamming),
        View::Gray => {
            if v.ring().is_field() {
                return Err(Failure::Error("the Gray image needs a ring r<k> with k >= 1".into()));
            }
            (code.gray_image(), Metric::Hamming)
        }
        View::Dual => (code.dual(), Metric::Hamming),
    };
    let mut report = CodeReport::new(&code, a.matrix);
    report.group = Some(v.group().name().to_string());
    match view {
        View::Code => {
            report = CodeReport::for_element(&v, a.matrix);
        }
        View::Gray => report.element = Some(format!("Gray image of C({v})")),
        View::Dual => report.element = Some(format!("dual of C({v})")),
    }
    emit(cli, &report);
    if let Some(t) = a.min_distance {
        let d = code.min_distance_with(metric, Some(t), true)?;
        if !matches!(d, Distance::Exact(x) if x >= t) {
            eprintln!("minimum distance {d} is below {t}");
            return Err(Failure::Mismatch);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct EnumReport {
    ring: String,
    group: String,
    element: String,
    hamming: Vec<(u32, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lee: Option<Vec<(u32, u64)>>,
    /// Counts keyed by the composition vector, listed over ring elements in
    /// bit order.
    #[serde(skip_serializing_if = "Option::is_none")]
    complete: Option<Vec<(Vec<u32>, u64)>>,
}

impl std::fmt::Display for EnumReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pairs = |w: &[(u32, u64)]| w.iter().map(|(a, b)| format!("{a}:{b}")).collect::<Vec<_>>().join(" ");
        writeln!(f, "C({}) over {}[{}]", self.element, self.ring, self.group)?;
        write!(f, "hamming: {}", pairs(&self.hamming))?;
        if let Some(l) = &self.lee {
            write!(f, "\nlee:     {}", pairs(l))?;
        }
        if let Some(c) = &self.complete {
            write!(f, "\ncomplete:")?;
            for (k, n) in c {
                write!(f, "\n  {k:?}: {n}")?;
            }
        }
        Ok(())
    }
}

fn cmd_enum(cli: &Cli, a: &ElementArgs) -> Outcome {
    let v = load_element(a)?;
    let code = LinearCode::from_element(&v);
    let hamming = code.weight_enumerator(Metric::Hamming)?.pairs();
    let lee = if v.ring().is_field() { None } else { Some(code.weight_enumerator(Metric::Lee)?.pairs()) };
    let complete = Some(code.complete_enumerator()?.counts.into_iter().collect());
    let report = EnumReport {
        ring: v.ring().to_string(),
        group: v.group().name().to_string(),
        element: v.to_string(),
        hamming,
        lee,
        complete,
    };
    emit(cli, &report);
    Ok(())
}

fn cmd_search(cli: &Cli, a: &SearchArgs) -> Outcome {
    if a.list {
        out(&BUILTIN_SEARCHES.join("\n"));
        return Ok(());
    }
    let mut spec: SearchSpec = match (&a.name, &a.pattern) {
        (Some(name), _) => builtin_search(name)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Error(format!("cannot read {path}: {e}")))?;
            serde_json::from_str(&text).map_err(|e| Failure::Error(format!("bad pattern file {path}: {e}")))?
        }
        (None, None) => return Err(Failure::Error("give --name or --pattern".into())),
    };
    if let Some(w) = a.witnesses {
        spec.report_witnesses = w;
    }
    if a.show_spec {
        out(&serde_json::to_string_pretty(&spec).expect("specs serialize"));
        return Ok(());
    }
    let report = run_search(&spec, cli.workers)?;
    emit(cli, &report);
    if report.all_checks_pass() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

#[derive(Serialize)]
struct MatrixCheck {
    name: String,
    parameters: String,
    self_dual: bool,
    type_ii: bool,
    ok: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    matrices: Vec<MatrixCheck>,
    suites: Vec<grcodes::verify::SuiteOutcome>,
    ok: bool,
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = |ok: bool| if ok { "PASS" } else { "FAIL" };
        for m in &self.matrices {
            writeln!(
                f,
                "{} displayed {}: {} self-dual {} type II {}",
                tag(m.ok),
                m.name,
                m.parameters,
                m.self_dual,
                m.type_ii
            )?;
        }
        for s in &self.suites {
            writeln!(f, "{} {s}", tag(s.passed()))?;
        }
        write!(f, "{}", if self.ok { "all checks passed" } else { "some checks failed" })
    }
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Outcome {
    let everything = a.all || (a.suite.is_empty() && a.displayed.is_empty());
    let matrices: Vec<&str> =
        if everything { DISPLAYED_MATRICES.to_vec() } else { a.displayed.iter().map(String::as_str).collect() };
    let suites: Vec<&str> = if everything { SUITES.to_vec() } else { a.suite.iter().map(String::as_str).collect() };
    let mut report = VerifyReport { matrices: Vec::new(), suites: Vec::new(), ok: true };
    for name in matrices {
        let r = verify_displayed_matrix(name)?;
        let ok = r.log2_size == 12
            && r.min_distance_hamming == Some(Distance::Exact(8))
            && r.self_dual
            && r.type_ii;
        report.ok &= ok;
        report.matrices.push(MatrixCheck {
            name: name.to_string(),
            parameters: r.parameters(),
            self_dual: r.self_dual,
            type_ii: r.type_ii,
            ok,
        });
    }
    for name in suites {
        let o = run_suite(name, a.seed)?;
        report.ok &= o.passed();
        report.suites.push(o);
    }
    emit(cli, &report);
    if report.ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}
