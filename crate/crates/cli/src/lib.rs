//! Command line front end: complex documents, knot specifications, reports
//! and batch verification.
//!
//! Exit codes: 0 on success, 1 when the input or a check fails, 2 on usage
//! errors.

pub mod document;
pub mod error;
pub mod knotspec;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use hfi_core::cone::default_depth;
use hfi_core::invariants::{
    alternating_triple, analyze, correction_terms, correction_terms_with_depth, squares_parity, SurgeryReport,
    TowerMode,
};
use hfi_core::involution::{canonical_involution, verify_involution};
use hfi_core::knot::build_thin_canonical;

pub use document::{parse_complex_file, ComplexDocument};
pub use error::CliError;
pub use knotspec::KnotSpec;
pub use report::{Format, Report};

use report::{
    CheckReport, ComputeReport, DTriple, GradedDim, HomologyRow, SurgeryJson, TableCell, TableRow, TablesReport, Towers,
};

#[derive(Debug, Parser)]
#[command(name = "hfi", version, about = "Involutive correction terms of knots and their large surgeries")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Correction terms of one knot.
    Compute {
        /// unknot, figure8, torus:p,q, mirror-torus:p,q, thin:tau,squares or file:PATH
        #[arg(long)]
        knot: KnotSpec,
        /// Report d-invariants of this surgery as well.
        #[arg(long, allow_hyphen_values = true)]
        surgery: Option<i64>,
        /// Truncation depth; defaults to one derived from the complex.
        #[arg(long, allow_hyphen_values = true)]
        depth: Option<i64>,
    },
    /// Validate a complex document.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Triples of alternating knots by signature and Arf invariant.
    Tables {
        #[arg(long, default_value = "-16:16", allow_hyphen_values = true)]
        sigma_range: SigmaRange,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Seed for the randomized property suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    #[value(name = "paper-examples")]
    Examples,
    #[value(name = "thm-1.7")]
    Tables,
    Properties,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct SigmaRange {
    lo: i64,
    hi: i64,
}

impl FromStr for SigmaRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected A:B, got {s:?}"))?;
        let lo: i64 = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
        let hi: i64 = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
        if lo > hi {
            return Err(format!("empty range {lo}:{hi}"));
        }
        Ok(SigmaRange { lo, hi })
    }
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `argv` (including the program name) and run the command.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput { exit_code: 2, stdout: String::new(), stderr: text }
            } else {
                CommandOutput { exit_code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok(report) => CommandOutput {
            exit_code: i32::from(report.failed()),
            stdout: report.emit(cli.format),
            stderr: String::new(),
        },
        Err(e) => CommandOutput { exit_code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Compute { knot, surgery, depth } => compute(&knot, surgery, depth).map(Report::Compute),
        Command::Check { input } => check(&input).map(Report::Check),
        Command::Tables { sigma_range } => alternating_tables(sigma_range.lo, sigma_range.hi).map(Report::Tables),
        Command::Verify { suite, seed } => Ok(Report::Verify(match suite {
            Suite::Examples => verify::examples(),
            Suite::Tables => verify::tables(),
            Suite::Properties => verify::properties(seed),
        })),
    }
}

pub fn compute(spec: &KnotSpec, surgery: Option<i64>, depth: Option<i64>) -> Result<ComputeReport, CliError> {
    let knot = spec.load()?;
    let (c, iota) = (&knot.complex, &knot.involution);
    if let Some(p) = surgery {
        if p < c.genus().max(1) {
            return Err(hfi_core::Error::SurgeryTooSmall { p, genus: c.genus() }.into());
        }
    }
    let depth = depth.unwrap_or_else(|| default_depth(c));
    let terms = correction_terms_with_depth(c, iota, depth)?;
    let an = analyze(c, iota, depth)?;

    let bottoms = [terms.d_a, terms.d_b, terms.d_lower_a + 1, terms.d_upper_a];
    let top = bottoms.into_iter().chain(terms.reduced_dims.keys().copied()).max().unwrap_or(0) + 3;
    let top = top.min(an.h_a.detection_limit(TowerMode::Plain, an.margin));
    let bottom = an.h_a.min_grading().min(an.h_b.min_grading()).min(an.h_cone.min_grading());
    let homology = (bottom..=top)
        .map(|r| HomologyRow { grading: r, a: an.h_a.dim(r), b: an.h_b.dim(r), cone: an.h_cone.dim(r) })
        .collect();

    let surgery = match surgery {
        None => None,
        Some(p) => {
            let r = SurgeryReport::from_triple(p, c.genus(), terms.triple)?;
            let (dl, d, du) = r.reversed();
            Some(SurgeryJson { p, terms: DTriple::new(r.d_lower, r.d, r.d_upper), reversed: DTriple::new(dl, d, du) })
        }
    };
    Ok(ComputeReport {
        knot: c.name().to_string(),
        provenance: c.provenance().label().to_string(),
        generators: c.len(),
        tau: c.tau(),
        genus: c.genus(),
        alexander: c.alexander_polynomial().to_string(),
        determinant: c.determinant(),
        depth,
        margin: terms.margin,
        involution: verify_involution(c, iota).to_string().replace('\n', "; "),
        correction_terms: terms.triple.into(),
        towers: Towers { d_a: terms.d_a, d_b: terms.d_b, d_lower_a: terms.d_lower_a, d_upper_a: terms.d_upper_a },
        reduced: terms.reduced_dims.into_iter().map(|(grading, dim)| GradedDim { grading, dim }).collect(),
        homology,
        surgery,
    })
}

pub fn check(path: &std::path::Path) -> Result<CheckReport, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let loaded = ComplexDocument::parse(&text)?.load()?;
    Ok(CheckReport {
        name: loaded.complex.name().to_string(),
        generators: loaded.complex.len(),
        maslov: loaded.maslov_source.label().to_string(),
        violations: loaded.validation.violations.iter().map(ToString::to_string).collect(),
        involution: loaded.involution_report.as_ref().map(ToString::to_string),
        valid: loaded.is_valid(),
    })
}

/// Triples of thin models for every even signature in `lo..=hi` and both Arf
/// invariants, computed from the complexes and set against the closed form.
pub fn alternating_tables(lo: i64, hi: i64) -> Result<TablesReport, CliError> {
    let cell = |sigma: i64, arf: u8| -> Result<TableCell, CliError> {
        let squares = usize::from(squares_parity(sigma, arf)?);
        let c = build_thin_canonical(-sigma / 2, squares, None)?;
        let computed = correction_terms(&c, &canonical_involution(&c)?)?.triple;
        Ok(TableCell { computed: computed.into(), expected: alternating_triple(sigma, arf)?.into() })
    };
    let rows = (lo..=hi)
        .filter(|s| s.rem_euclid(2) == 0)
        .rev()
        .filter(|&s| s <= 0)
        .chain((lo..=hi).filter(|&s| s > 0 && s % 2 == 0))
        .map(|sigma| Ok(TableRow { sigma, arf0: cell(sigma, 0)?, arf1: cell(sigma, 1)? }))
        .collect::<Result<_, CliError>>()?;
    Ok(TablesReport { rows })
}
