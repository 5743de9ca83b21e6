//! `unknot`, `figure8`, `torus:p,q`, `mirror-torus:p,q`, `thin:tau,squares`, `file:PATH`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hfi_core::involution::{canonical_involution, FilteredMorphism};
use hfi_core::knot::{
    build_mirror_staircase, build_staircase, build_thin_canonical, figure_eight, from_alexander_lspace,
    torus_knot_alexander, unknot, ModelComplex,
};

use crate::document::parse_complex_file;
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotSpec {
    Unknot,
    FigureEight,
    Torus { p: u32, q: u32 },
    MirrorTorus { p: u32, q: u32 },
    Thin { tau: i64, squares: usize },
    File(PathBuf),
}

/// A model complex together with the involution used on it.
#[derive(Clone, Debug)]
pub struct Knot {
    pub complex: ModelComplex,
    pub involution: FilteredMorphism,
}

fn pair<A: FromStr, B: FromStr>(args: &str, what: &str) -> Result<(A, B), String> {
    let (a, b) = args.split_once(',').ok_or_else(|| format!("{what} expects two comma-separated values"))?;
    let a = a.trim().parse().map_err(|_| format!("bad first value {a:?} in {what}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad second value {b:?} in {what}"))?;
    Ok((a, b))
}

impl FromStr for KnotSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (head, args) = s.split_once(':').unwrap_or((s, ""));
        match (head, args) {
            ("unknot", "") => Ok(KnotSpec::Unknot),
            ("figure8", "") => Ok(KnotSpec::FigureEight),
            ("torus", args) => pair(args, "torus:p,q").map(|(p, q)| KnotSpec::Torus { p, q }),
            ("mirror-torus", args) => pair(args, "mirror-torus:p,q").map(|(p, q)| KnotSpec::MirrorTorus { p, q }),
            ("thin", args) => pair(args, "thin:tau,squares").map(|(tau, squares)| KnotSpec::Thin { tau, squares }),
            ("file", path) if !path.is_empty() => Ok(KnotSpec::File(PathBuf::from(path))),
            _ => Err(format!(
                "unknown knot {s:?}; expected unknot, figure8, torus:p,q, mirror-torus:p,q, thin:tau,squares or file:PATH"
            )),
        }
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSpec::Unknot => write!(f, "unknot"),
            KnotSpec::FigureEight => write!(f, "figure8"),
            KnotSpec::Torus { p, q } => write!(f, "torus:{p},{q}"),
            KnotSpec::MirrorTorus { p, q } => write!(f, "mirror-torus:{p},{q}"),
            KnotSpec::Thin { tau, squares } => write!(f, "thin:{tau},{squares}"),
            KnotSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

fn torus_model(p: u32, q: u32, mirror: bool) -> Result<ModelComplex, CliError> {
    let torsion = from_alexander_lspace(&torus_knot_alexander(p, q)?)?.torsion;
    Ok(if mirror {
        build_mirror_staircase(&torsion)?.with_name(format!("mirror T({p},{q})"))
    } else {
        build_staircase(&torsion)?.with_name(format!("T({p},{q})"))
    })
}

impl KnotSpec {
    pub fn load(&self) -> Result<Knot, CliError> {
        let complex = match self {
            KnotSpec::Unknot => unknot(),
            KnotSpec::FigureEight => figure_eight(),
            KnotSpec::Torus { p, q } => torus_model(*p, *q, false)?,
            KnotSpec::MirrorTorus { p, q } => torus_model(*p, *q, true)?,
            KnotSpec::Thin { tau, squares } => {
                build_thin_canonical(*tau, *squares, None)?.with_name(format!("thin({tau}, {squares})"))
            }
            KnotSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
                let loaded = parse_complex_file(&text)?;
                let involution = loaded.involution.ok_or_else(|| {
                    CliError::Document(format!("{} has no involution block", path.display()))
                })?;
                return Ok(Knot { complex: loaded.complex, involution });
            }
        };
        let involution = canonical_involution(&complex)?;
        Ok(Knot { complex, involution })
    }
}
