//! Command-line front end. Exit codes: 0 success, 1 usage or I/O error, 2 malformed
//! input file, 3 domain error or failed check.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::canonical::build_canonical;
use crate::eigen::{eigenvalues, eigenvector_space, eigenvector_variety_oracle, eigenvectors_for, EigenvalueSource};
use crate::error::Error;
use crate::field::Field;
use crate::io::{
    parse_pencil, parse_point_list, parse_quadrics, write_pencil, write_points, write_subspace, PointSet,
};
use crate::pencil::MatrixPencil;
use crate::projective::DEFAULT_ENUM_BUDGET;
use crate::realize::{realize_variety, squareize, verify_realization};
use crate::reflect::{build_preprojectives, preprojective_dimvecs, sigma_iterate, tits_form, Direction};
use crate::suites::{run_suite, DEFAULT_CASES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FORMAT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Environment variable overriding the enumeration budget.
pub const BUDGET_VAR: &str = "PENCIL_ENUM_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "eigenpencil", version, about = "Eigenvector varieties of matrix pencils over exact fields")]
pub struct Cli {
    /// Worker threads for enumeration loops (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Omit `#` metadata lines (version, timing) from reports.
    #[arg(long, global = true)]
    no_meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical bristled module for n variables.
    Canonical {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        field: Field,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Realize the zero set of a quadric system as an eigenvalue set.
    Realize {
        #[arg(long)]
        quadrics: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        /// Report destination; standard error when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List eigenvectors (or eigenvalues with --values) as a point set.
    Eigen {
        #[arg(long)]
        pencil: PathBuf,
        /// `all`, or semicolon-separated tuples such as `1,0,0;1,1,0`.
        #[arg(long, default_value = "all")]
        eigenvalues: String,
        #[arg(long)]
        values: bool,
        #[arg(long = "points-out", default_value = "-")]
        points_out: PathBuf,
    },
    /// Print the eigenvector space for one eigenvalue.
    Eigenspace {
        #[arg(long)]
        pencil: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Replace a reduced pencil by a square one with the same bristles.
    Squareize {
        #[arg(long)]
        pencil: PathBuf,
        #[arg(long, default_value = "all")]
        eigenvalues: String,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Apply the reflection (or its adjoint) t times.
    Reflect {
        #[arg(long)]
        pencil: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        inverse: bool,
        #[arg(long = "e0-track")]
        e0_track: bool,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        /// Orbit report destination; standard error when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Tabulate the preprojective series and check it.
    Preprojective {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        field: Field,
    },
    /// Compare the eigenvector variety with a brute-force scan.
    Verify {
        #[arg(long)]
        pencil: PathBuf,
    },
    /// Run a named randomized suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CASES)]
        count: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Lib(Error),
    /// A check ran and did not hold; its report has already been written.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => EXIT_USAGE,
            Failure::Lib(e) if e.is_format_error() => EXIT_FORMAT,
            Failure::Lib(_) | Failure::Check(_) => EXIT_DOMAIN,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Io(m) => format!("i/o error: {m}"),
            Failure::Lib(e) if e.is_format_error() => format!("format error: {e}"),
            Failure::Lib(e) => format!("error: {e}"),
            Failure::Check(m) => format!("check failed: {m}"),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Context {
    budget: u64,
    meta: bool,
    started: Instant,
}

impl Context {
    fn meta_lines(&self, command: &str) -> String {
        if !self.meta {
            return String::new();
        }
        format!(
            "# eigenpencil {} command={command}\n# elapsed_ms={}\n",
            env!("CARGO_PKG_VERSION"),
            self.started.elapsed().as_millis()
        )
    }
}

fn read_input(path: &PathBuf) -> std::result::Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn write_output(path: &PathBuf, text: &str) -> Outcome {
    if path.as_os_str() == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| Failure::Io(format!("standard output: {e}")))
    } else {
        fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn write_report(path: &Option<PathBuf>, text: &str) -> Outcome {
    match path {
        Some(p) => write_output(p, text),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn load_pencil(path: &PathBuf) -> std::result::Result<MatrixPencil, Failure> {
    Ok(parse_pencil(&read_input(path)?)?)
}

fn eigen_source(spec: &str, p: &MatrixPencil) -> std::result::Result<EigenvalueSource, Failure> {
    if spec.trim() == "all" {
        return Ok(EigenvalueSource::All);
    }
    let points = parse_point_list(spec, p.n(), p.field()).map_err(|e| Failure::Usage(format!("--eigenvalues: {e}")))?;
    Ok(EigenvalueSource::List(points))
}

fn budget_from_env() -> std::result::Result<u64, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{BUDGET_VAR} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_ENUM_BUDGET),
    }
}

fn execute(command: Command, ctx: &Context) -> Outcome {
    match command {
        Command::Canonical { n, field, out } => {
            let c = build_canonical(n, field)?;
            write_output(&out, &write_pencil(c.pencil()))
        }
        Command::Realize { quadrics, out, report } => {
            let system = parse_quadrics(&read_input(&quadrics)?)?;
            let r = realize_variety(system.n, system.field, &system.quadrics)?;
            write_output(&out, &write_pencil(&r.pencil))?;
            let mut text = ctx.meta_lines("realize");
            text.push_str(&format!(
                "quadrics={} n={} field={}\npencil={}\n",
                system.quadrics.len(),
                system.n,
                system.field,
                r.pencil.dim_vector()
            ));
            let mut passed = true;
            if system.field.is_prime_field() {
                let rep = verify_realization(&r, ctx.budget)?;
                passed = rep.passed;
                text.push_str(&format!(
                    "eigenvalues={} zero_set={} max_eigenspace_dim={} result={}\n",
                    rep.eigenvalues.len(),
                    rep.zero_set.len(),
                    rep.max_eigenspace_dim,
                    if rep.passed { "pass" } else { "fail" }
                ));
                text.push_str("# eigenvalue set\n");
                text.push_str(&write_points(&PointSet::new(system.n, system.field, rep.eigenvalues)));
                text.push_str("# zero set\n");
                text.push_str(&write_points(&PointSet::new(system.n, system.field, rep.zero_set)));
            } else {
                text.push_str("result=unverified (enumeration needs a prime field)\n");
            }
            write_report(&report, &text)?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Check("eigenvalue set differs from the zero set".into()))
            }
        }
        Command::Eigen {
            pencil,
            eigenvalues: spec,
            values,
            points_out,
        } => {
            let p = load_pencil(&pencil)?;
            let source = eigen_source(&spec, &p)?;
            let set = if values {
                PointSet::new(p.n(), p.field(), eigenvalues(&p, &source, ctx.budget)?)
            } else {
                PointSet::new(p.a(), p.field(), eigenvectors_for(&p, &source, ctx.budget)?)
            };
            write_output(&points_out, &write_points(&set))
        }
        Command::Eigenspace { pencil, lambda, out } => {
            let p = load_pencil(&pencil)?;
            let points = parse_point_list(&lambda, p.n(), p.field()).map_err(|e| Failure::Usage(format!("--lambda: {e}")))?;
            let [point] = points.as_slice() else {
                return Err(Failure::Usage("--lambda takes exactly one point".into()));
            };
            write_output(&out, &write_subspace(&eigenvector_space(&p, point)?))
        }
        Command::Squareize {
            pencil,
            eigenvalues: spec,
            out,
        } => {
            let p = load_pencil(&pencil)?;
            let source = eigen_source(&spec, &p)?;
            write_output(&out, &write_pencil(&squareize(&p, &source, ctx.budget)?))
        }
        Command::Reflect {
            pencil,
            t,
            inverse,
            e0_track,
            out,
            report,
        } => {
            let p = load_pencil(&pencil)?;
            if e0_track && p.n() < 3 {
                return Err(Error::Unsupported(format!("E0 tracking needs n >= 3, got n = {}", p.n())).into());
            }
            let direction = if inverse { Direction::Inverse } else { Direction::Forward };
            let (result, orbit) = sigma_iterate(&p, t, direction, e0_track)?;
            write_output(&out, &write_pencil(&result))?;
            let mut text = ctx.meta_lines("reflect");
            if ctx.meta {
                for note in orbit.notes() {
                    text.push_str(&format!("# {note}\n"));
                }
            }
            text.push_str(&orbit.to_text());
            write_report(&report, &text)
        }
        Command::Preprojective { n, count, field } => {
            let dims = preprojective_dimvecs(n, count)?;
            let built = build_preprojectives(n, dims.len(), field)?;
            let mut text = ctx.meta_lines("preprojective");
            let mut ok = true;
            for (k, (d, p)) in dims.iter().zip(&built).enumerate() {
                let form = tits_form(n, *d);
                let matches = p.dim_vector() == *d;
                let eigen = if field.is_prime_field() {
                    let values = eigenvalues(p, &EigenvalueSource::All, ctx.budget)?;
                    ok &= values.is_empty();
                    values.len().to_string()
                } else {
                    "unchecked".to_string()
                };
                ok &= form == 1 && d.a < d.b && matches;
                text.push_str(&format!(
                    "k={k} dim={d} form={form} built={} eigenvalues={eigen}\n",
                    p.dim_vector()
                ));
            }
            text.push_str(&format!("check={}\n", if ok { "pass" } else { "fail" }));
            write_output(&PathBuf::from("-"), &text)?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Check("preprojective series".into()))
            }
        }
        Command::Verify { pencil } => {
            let p = load_pencil(&pencil)?;
            if !p.field().is_prime_field() {
                return Err(Error::EnumerationUnsupported(p.field().to_string()).into());
            }
            let fast = eigenvectors_for(&p, &EigenvalueSource::All, ctx.budget)?;
            let slow = eigenvector_variety_oracle(&p, ctx.budget)?;
            let matched = fast == slow;
            let mut text = ctx.meta_lines("verify");
            text.push_str(&format!(
                "pencil={} field={} by_eigenvalue={} by_scan={} result={}\n",
                p.dim_vector(),
                p.field(),
                fast.len(),
                slow.len(),
                if matched { "match" } else { "mismatch" }
            ));
            write_output(&PathBuf::from("-"), &text)?;
            if matched {
                Ok(())
            } else {
                Err(Failure::Check("eigenvector varieties differ".into()))
            }
        }
        Command::Check { suite, seed, count } => {
            let report = run_suite(&suite, seed, count, ctx.budget).map_err(|e| match e {
                Error::InvalidParameter(m) => Failure::Usage(m),
                other => Failure::Lib(other),
            })?;
            let mut text = ctx.meta_lines("check");
            text.push_str(&report.text);
            write_output(&PathBuf::from("-"), &text)?;
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Check(format!("{} of {count} cases failed", report.failed)))
            }
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = (|| {
        let ctx = Context {
            budget: budget_from_env()?,
            meta: !cli.no_meta,
            started: Instant::now(),
        };
        match cli.threads {
            Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
                pool.install(|| execute(cli.command, &ctx))
            }
            None => execute(cli.command, &ctx),
        }
    })();
    match outcome {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("{}", f.message());
            f.code()
        }
    }
}
