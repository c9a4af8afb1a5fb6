use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use meixner::bivariate::Route;
use meixner::harness::{
    error_exit_code, evaluate, exit_code, monic_table, random_rotation, run_suite, EvalRequest, EvalRoute, MatrixSource,
    MonicTable, Quantity, Suite, SuiteConfig,
};
use meixner::lorentz::{parse_subgroup_param, MatrixFile};
use meixner::scalar::parse_rational;
use meixner::{EvalReport, Error, LatticeBox, MultiIndex, Rational, ScalarMode};

#[derive(Parser)]
#[command(name = "meixner", version, about = "Multivariate Meixner polynomials from SO(d,1) matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one polynomial value or matrix element.
    Eval(EvalArgs),
    /// Run a verification suite; exit 0 on pass, 1 on failure.
    Verify(VerifyArgs),
    /// Emit R_{m,n}(i,k) over a box as CSV or JSON.
    Table(TableArgs),
    /// Print a seeded random generic matrix as JSON.
    GenMatrix(GenArgs),
}

#[derive(Args, Clone)]
struct SystemArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Rational `P/Q`.
    #[arg(long, default_value = "2")]
    beta: String,
    /// Matrix file `{"d": D, "entries": [["p/q", ...], ...]}`.
    #[arg(long, conflicts_with_all = ["seed", "params"])]
    matrix: Option<PathBuf>,
    #[arg(long, conflicts_with = "params")]
    seed: Option<u64>,
    /// Factors in a seeded product.
    #[arg(long, default_value_t = 3)]
    factors: usize,
    /// Comma-separated `boost:AXIS:T` / `rot:I-J:S` list, multiplied left to right.
    #[arg(long)]
    params: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// `m,n,i,k` for d = 2.
    #[arg(long, conflicts_with_all = ["degree", "at"])]
    point: Option<String>,
    /// Degree multi-index `n_1,...,n_d`.
    #[arg(long, requires = "at")]
    degree: Option<String>,
    /// Argument multi-index `x_1,...,x_d`.
    #[arg(long, requires = "degree")]
    at: Option<String>,
    #[arg(long, default_value = "gf")]
    route: String,
    #[arg(long, value_enum, default_value_t = QuantityArg::Monic)]
    quantity: QuantityArg,
}

#[derive(Copy, Clone, ValueEnum)]
enum QuantityArg {
    Monic,
    Orthonormal,
    Element,
}

#[derive(Args)]
struct BoxArgs {
    /// Maxima `m,n,i,k`.
    #[arg(long = "box", default_value = "2,2,2,2")]
    bounds: String,
    /// Also require `m + n <= N`.
    #[arg(long)]
    degree_total: Option<usize>,
    /// Also require `i + k <= N`.
    #[arg(long)]
    argument_total: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    lattice: BoxArgs,
    /// Re-verify the recurrence on a JSON table written by `table`.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Print the full report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[command(flatten)]
    lattice: BoxArgs,
    #[arg(long, default_value = "gf")]
    route: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    factors: usize,
}

/// Exit status plus a message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: error_exit_code(&e) as u8, message: e.to_string() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(inner) => Failure { code: error_exit_code(inner) as u8, message: format!("{e:#}") },
            None => Failure { code: 2, message: format!("{e:#}") },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a),
        Command::GenMatrix(a) => cmd_gen_matrix(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn usize_list(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index list `{text}`"))))
        .collect()
}

impl SystemArgs {
    fn beta(&self) -> Result<Rational, Error> {
        parse_rational(&self.beta)
    }

    fn mode(&self) -> ScalarMode {
        match self.mode {
            Mode::Exact => ScalarMode::Exact,
            Mode::Float => ScalarMode::Float,
        }
    }

    fn source(&self) -> Result<MatrixSource, Error> {
        if let Some(path) = &self.matrix {
            return Ok(MatrixSource::File(path.clone()));
        }
        if let Some(seed) = self.seed {
            return Ok(MatrixSource::Seed { seed, factors: self.factors });
        }
        if let Some(list) = &self.params {
            let params = list.split(',').map(parse_subgroup_param).collect::<Result<Vec<_>, _>>()?;
            return Ok(MatrixSource::Params(params));
        }
        if self.d != 2 {
            return Err(Error::InvalidParameter("d != 2 needs --matrix, --seed or --params".into()));
        }
        Ok(MatrixSource::Reference)
    }
}

impl BoxArgs {
    fn lattice(&self) -> Result<LatticeBox, Error> {
        let v = usize_list(&self.bounds)?;
        let [m, n, i, k] = v[..] else {
            return Err(Error::Parse(format!("--box needs four bounds m,n,i,k, got `{}`", self.bounds)));
        };
        let mut b = LatticeBox::new(m, n, i, k);
        b.degree_total = self.degree_total;
        b.argument_total = self.argument_total;
        Ok(b)
    }
}

fn table_route(name: &str) -> Result<Route, Error> {
    match name {
        "raising" => Ok(Route::Raising),
        "gf" => Ok(Route::GeneratingFunction),
        "hyp" => Ok(Route::Hypergeometric),
        other => Err(Error::Parse(format!("table route must be raising, gf or hyp, got `{other}`"))),
    }
}

fn cmd_eval(a: EvalArgs) -> Result<u8, Failure> {
    let (degree, at) = match (&a.point, &a.degree, &a.at) {
        (Some(p), _, _) => {
            let v = usize_list(p)?;
            let [m, n, i, k] = v[..] else {
                return Err(Error::Parse(format!("--point needs m,n,i,k, got `{p}`")).into());
            };
            (MultiIndex::new(vec![m, n]), MultiIndex::new(vec![i, k]))
        }
        (None, Some(d), Some(x)) => (MultiIndex::new(usize_list(d)?), MultiIndex::new(usize_list(x)?)),
        _ => return Err(Error::Parse("give --point or both --degree and --at".into()).into()),
    };
    let req = EvalRequest {
        d: a.system.d,
        beta: a.system.beta()?,
        source: a.system.source()?,
        route: a.route.parse::<EvalRoute>()?,
        quantity: match a.quantity {
            QuantityArg::Monic => Quantity::Monic,
            QuantityArg::Orthonormal => Quantity::Orthonormal,
            QuantityArg::Element => Quantity::Element,
        },
        mode: a.system.mode(),
        degree,
        at,
    };
    println!("{}", evaluate(&req)?);
    Ok(0)
}

fn print_report(report: &EvalReport, json: bool) {
    if json {
        println!("{}", report.to_json());
        return;
    }
    let status = if report.pass { "PASS" } else { "FAIL" };
    let max = match &report.max_discrepancy {
        meixner::report::Discrepancy::Exact(s) => s.clone(),
        meixner::report::Discrepancy::Float(x) => format!("{x:.3e}"),
    };
    println!("{status} {} ({} mode): {} points, max discrepancy {max}", report.suite, report.mode, report.points_checked);
    if let Some(c) = &report.counterexample {
        println!("  first counterexample at {}: lhs = {}, rhs = {}", c.point, c.lhs, c.rhs);
    }
    for note in &report.notes {
        println!("  note: {note}");
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let suite: Suite = a.suite.parse()?;
    let result = if let Some(path) = &a.table {
        if suite != Suite::Recurrence {
            return Err(Error::InvalidParameter("--table re-verifies the recurrence suite only".into()).into());
        }
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        MonicTable::from_json(&text).and_then(|t| t.verify_recurrence())
    } else {
        let cfg = SuiteConfig {
            suite,
            d: a.system.d,
            beta: a.system.beta()?,
            source: a.system.source()?,
            lattice: a.lattice.lattice()?,
            mode: a.system.mode(),
            tol: a.system.tol,
        };
        run_suite(&cfg)
    };
    let code = exit_code(&result) as u8;
    match result {
        Ok(report) => {
            print_report(&report, a.json);
            Ok(code)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_table(a: TableArgs) -> Result<u8, Failure> {
    if a.system.d != 2 {
        return Err(Error::InvalidParameter("tables are written for d = 2".into()).into());
    }
    let lambda = a.system.source()?.resolve(2)?;
    let table = monic_table(&a.system.beta()?, &lambda, &a.lattice.lattice()?, a.system.mode(), table_route(&a.route)?)?;
    let mut out: Box<dyn Write> = match &a.output {
        Some(path) => Box::new(fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    match a.format {
        Format::Json => writeln!(out, "{}", table.to_json()).context("write failed")?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in &table.rows {
                w.serialize(row).context("write failed")?;
            }
            w.flush().context("write failed")?;
        }
    }
    Ok(0)
}

fn cmd_gen_matrix(a: GenArgs) -> Result<u8, Failure> {
    let (l, params) = random_rotation(a.seed, a.d, a.factors)?;
    let factors: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    eprintln!("factors: {}", factors.join(","));
    println!("{}", MatrixFile::from_rotation(&l).to_json());
    Ok(0)
}
