//! The `ncdet` command line: `compute` for single evaluations and `verify`
//! for seeded verification campaigns.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
//! Setting `NOCOLOR` disables ANSI colors.

pub mod compute;
pub mod instance;
pub mod report;
pub mod spec;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use compute::{compute, json_document, Kind, Request, SideArg};
use report::VerificationReport;
use spec::{RingSpec, StructureSpec, TransitiveSpec};
use suites::{run_campaign, Campaign, Requested, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Failing trials shown in full in human-readable reports.
const MAX_DETAILS: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "ncdet", version, about = "Determinants and Cayley-Hamilton identities over noncommutative rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate sdet, the preadjoint, rdet_k, ldet_k or a characteristic polynomial.
    Compute(ComputeArgs),
    /// Run a seeded verification campaign.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// q, q[y]:delta=neg, grassmann:<m> or grassmann:<m>:scalars=cyclo:<N>
    #[arg(long, default_value = "q")]
    ring: RingSpec,
    /// Matrix as a JSON array of rows of element strings.
    #[arg(long, conflicts_with = "matrix_file", required_unless_present = "matrix_file")]
    matrix: Option<String>,
    /// File holding the matrix literal.
    #[arg(long)]
    matrix_file: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, value_enum, default_value = "right")]
    side: SideArg,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    ring: Option<RingSpec>,
    /// supermatrix:d=<d>, rho_e:n=<n>, sigma:d=<d>, graded:n=<n>, zgraded:n=<n> or hmatrix
    #[arg(long)]
    structure: Option<StructureSpec>,
    /// P(d,n), Q(d,n) or units
    #[arg(long)]
    transitive: Option<TransitiveSpec>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every logical core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    json: bool,
    /// Replace the evaluator under test by a corrupted one.
    #[arg(long, hide = true)]
    sabotage: bool,
}

fn color_enabled() -> bool {
    std::env::var_os("NOCOLOR").is_none()
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Compute(a) => run_compute(a, out, err),
        Command::Verify(a) => run_verify(a, out, err),
    }
}

fn run_compute(a: ComputeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let matrix = match (a.matrix, a.matrix_file) {
        (Some(m), _) => m,
        (None, Some(path)) => match std::fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) => {
                let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
        (None, None) => unreachable!("clap requires one of --matrix, --matrix-file"),
    };
    let req = Request { kind: a.kind, ring: a.ring, matrix, k: a.k, side: a.side.into() };
    match compute(&req) {
        Ok(c) => {
            if a.json {
                let _ = writeln!(out, "{}", json_document(&req, &c));
            } else {
                let _ = writeln!(out, "{}", c.human);
            }
            EXIT_PASS
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn run_verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let requested = Requested {
        ring: a.ring,
        structure: a.structure,
        transitive: a.transitive,
        n: a.n,
        k: a.k,
        trials: a.trials,
        seed: a.seed,
        sabotage: a.sabotage,
    };
    let campaign = match Campaign::resolve(a.suite, requested) {
        Ok(c) => c,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(a.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let outcomes = match pool.install(|| run_campaign(&campaign)) {
        Ok(o) => o,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    let report =
        VerificationReport::new(campaign.command_line(), campaign.suite.name(), campaign.seed, outcomes, start.elapsed());
    if a.json {
        let _ = writeln!(out, "{}", report.to_json());
    } else {
        let _ = write!(out, "{}", report.render(color_enabled(), MAX_DETAILS));
    }
    if report.success() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("ncdet").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn compute_sdet() {
        let (code, out, _) = call(&["compute", "sdet", "--ring", "q", "--matrix", r#"[["1","2"],["3","4"]]"#]);
        assert_eq!((code, out.as_str()), (0, "-4\n"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["verify", "no-such-suite"]).0, 2);
        assert_eq!(call(&["compute", "sdet", "--matrix", "[[\"1\""]).0, 2);
        let (code, _, err) = call(&["verify", "standard-identity", "--n", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("valid flags"), "{err}");
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn verify_pass_and_sabotage() {
        let args = ["verify", "preadjoint-closure", "--trials", "5", "--seed", "9", "--json"];
        let (code, out, _) = call(&args);
        assert_eq!(code, 0, "{out}");
        let json: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(json["passed"], 5);
        let (code, out, _) = call(&[&args[..], &["--sabotage"]].concat());
        assert_eq!(code, 1);
        assert!(out.contains("residual"), "{out}");
    }
}
