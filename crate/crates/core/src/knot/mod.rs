//! Model knot complexes.
//!
//! A model complex is a finite list of generators, each with a filtration
//! bigrading `(i, j)` and a Maslov grading, plus a differential given on
//! generators. The full complex is the free `F2[U, U^-1]` module on the
//! generators, where `U^k x` sits at `(i - k, j - k)` with Maslov grading
//! `M - 2k`.

mod alexander;
mod maslov;
mod staircase;
mod thin;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

pub use alexander::{from_alexander_lspace, torus_knot_alexander, LSpaceData, LaurentPoly};
pub use maslov::{assign_relative_maslov, normalize_maslov};
pub use staircase::{build_mirror_staircase, build_staircase, lspace_n, unknot};
pub use thin::{build_thin_canonical, figure_eight};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub i: i64,
    pub j: i64,
    pub maslov: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, i: i64, j: i64, maslov: i64) -> Self {
        Generator { name: name.into(), i, j, maslov }
    }

    pub fn alexander(&self) -> i64 {
        self.j - self.i
    }
}

/// The term `U^upower * target` in a differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffTerm {
    pub target: usize,
    pub upower: u32,
}

impl DiffTerm {
    pub fn new(target: usize, upower: u32) -> Self {
        DiffTerm { target, upower }
    }
}

/// Indices of the staircase generators: `x0` and the two arms `x_s^1, x_s^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseLayout {
    pub x0: usize,
    /// `arms[s - 1] = [x_s^1, x_s^2]`.
    pub arms: Vec<[usize; 2]>,
}

/// Indices of one square summand. `e` is stored at the bigrading of `a`, and
/// `b`, `c` both hit `U e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareLayout {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Staircase of an L-space knot (`mirror == false`) or of its mirror.
    Staircase { torsion: Vec<u32>, mirror: bool, layout: StaircaseLayout },
    /// Canonical thin model: a step-one staircase plus square summands.
    Thin {
        tau: i64,
        layout: StaircaseLayout,
        squares: Vec<SquareLayout>,
        /// Pairs of square indices placed at transposed positions; the first
        /// member lies below the diagonal.
        pairs: Vec<[usize; 2]>,
        /// Square on the diagonal, if the square count is odd.
        lone: Option<usize>,
    },
    User,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Staircase { mirror: false, .. } => "staircase",
            Provenance::Staircase { mirror: true, .. } => "mirror-staircase",
            Provenance::Thin { .. } => "thin",
            Provenance::User => "user",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelComplex {
    name: String,
    generators: Vec<Generator>,
    differential: Vec<Vec<DiffTerm>>,
    tau: Option<i64>,
    provenance: Provenance,
}

impl ModelComplex {
    /// Assemble a complex from raw data. Checks structure only: unique names
    /// and in-range targets. Repeated terms cancel in pairs.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        differential: Vec<Vec<DiffTerm>>,
        tau: Option<i64>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::MalformedComplex("no generators".into()));
        }
        if differential.len() != generators.len() {
            return Err(Error::MalformedComplex(format!(
                "{} generators but {} differential entries",
                generators.len(),
                differential.len()
            )));
        }
        let mut seen = HashMap::new();
        for (k, g) in generators.iter().enumerate() {
            if let Some(prev) = seen.insert(g.name.as_str(), k) {
                return Err(Error::MalformedComplex(format!(
                    "duplicate generator name {:?} (positions {prev} and {k})",
                    g.name
                )));
            }
        }
        let n = generators.len();
        let mut cleaned = Vec::with_capacity(n);
        for (k, terms) in differential.into_iter().enumerate() {
            if let Some(bad) = terms.iter().find(|t| t.target >= n) {
                return Err(Error::MalformedComplex(format!(
                    "differential of {} refers to generator index {}",
                    generators[k].name, bad.target
                )));
            }
            cleaned.push(cancel_pairs(terms));
        }
        Ok(ModelComplex { name: name.into(), generators, differential: cleaned, tau, provenance: Provenance::User })
    }

    pub(crate) fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, index: usize) -> &Generator {
        &self.generators[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn differential(&self, index: usize) -> &[DiffTerm] {
        &self.differential[index]
    }

    pub fn tau(&self) -> Option<i64> {
        self.tau
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `(max i - min i) + (max j - min j)` over generators.
    pub fn diameter(&self) -> i64 {
        let span = |f: fn(&Generator) -> i64| {
            let lo = self.generators.iter().map(f).min().unwrap_or(0);
            let hi = self.generators.iter().map(f).max().unwrap_or(0);
            hi - lo
        };
        span(|g| g.i) + span(|g| g.j)
    }

    /// Largest `|j - i|` over generators; the genus for reduced models.
    pub fn genus(&self) -> i64 {
        self.generators.iter().map(|g| g.alexander().abs()).max().unwrap_or(0)
    }

    /// Graded Euler characteristic `sum (-1)^M t^(j - i)`.
    pub fn alexander_polynomial(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for g in &self.generators {
            let sign = if g.maslov.rem_euclid(2) == 0 { 1 } else { -1 };
            p = p.add(&LaurentPoly::monomial(sign, g.alexander()));
        }
        p
    }

    pub fn determinant(&self) -> i64 {
        self.alexander_polynomial().eval(-1).abs()
    }

    /// Same complex with every Maslov grading moved by `delta`.
    pub fn shift_maslov(&self, delta: i64) -> ModelComplex {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.maslov += delta;
        }
        out
    }

    pub(crate) fn set_maslov(&mut self, gradings: &[i64]) {
        for (g, &m) in self.generators.iter_mut().zip(gradings) {
            g.maslov = m;
        }
    }

    pub fn min_maslov(&self) -> i64 {
        self.generators.iter().map(|g| g.maslov).min().unwrap_or(0)
    }

    pub fn max_maslov(&self) -> i64 {
        self.generators.iter().map(|g| g.maslov).max().unwrap_or(0)
    }
}

fn cancel_pairs(terms: Vec<DiffTerm>) -> Vec<DiffTerm> {
    let mut parity: BTreeMap<DiffTerm, bool> = BTreeMap::new();
    for t in terms {
        *parity.entry(t).or_default() ^= true;
    }
    parity.into_iter().filter(|&(_, odd)| odd).map(|(t, _)| t).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `d^2 x` is nonzero.
    SquareNonzero { source: String, residue: Vec<(String, u32)> },
    /// A term raises the `i` or `j` filtration level.
    NotFiltered { source: String, target: String, upower: u32 },
    /// A term does not lower the Maslov grading by exactly one.
    MaslovDrop { source: String, target: String, upower: u32, drop: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SquareNonzero { source, residue } => {
                let terms: Vec<String> = residue.iter().map(|(t, k)| format!("U^{k} {t}")).collect();
                write!(f, "d^2({source}) = {}", terms.join(" + "))
            }
            Violation::NotFiltered { source, target, upower } => {
                write!(f, "term U^{upower} {target} in d({source}) raises a filtration level")
            }
            Violation::MaslovDrop { source, target, upower, drop } => {
                write!(f, "term U^{upower} {target} in d({source}) drops Maslov grading by {drop}, expected 1")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let lines: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", lines.join("; "))
    }
}

/// Check `d^2 = 0`, the filtration condition and the Maslov drop of every term.
pub fn validate_complex(c: &ModelComplex) -> ValidationReport {
    let mut violations = Vec::new();
    for (s, src) in c.generators.iter().enumerate() {
        for t in &c.differential[s] {
            let tgt = &c.generators[t.target];
            let k = i64::from(t.upower);
            if tgt.i - k > src.i || tgt.j - k > src.j {
                violations.push(Violation::NotFiltered {
                    source: src.name.clone(),
                    target: tgt.name.clone(),
                    upower: t.upower,
                });
            }
            let drop = src.maslov - (tgt.maslov - 2 * k);
            if drop != 1 {
                violations.push(Violation::MaslovDrop {
                    source: src.name.clone(),
                    target: tgt.name.clone(),
                    upower: t.upower,
                    drop,
                });
            }
        }
        let mut twice: Vec<DiffTerm> = Vec::new();
        for t in &c.differential[s] {
            for u in &c.differential[t.target] {
                twice.push(DiffTerm::new(u.target, t.upower + u.upower));
            }
        }
        let residue = cancel_pairs(twice);
        if !residue.is_empty() {
            violations.push(Violation::SquareNonzero {
                source: src.name.clone(),
                residue: residue.iter().map(|t| (c.generators[t.target].name.clone(), t.upower)).collect(),
            });
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_only() -> ModelComplex {
        let gens = vec![
            Generator::new("a", 0, 0, 0),
            Generator::new("b", -1, 0, -1),
            Generator::new("c", 0, -1, -1),
            Generator::new("e", 0, 0, 0),
        ];
        let d = vec![vec![DiffTerm::new(1, 0), DiffTerm::new(2, 0)], vec![DiffTerm::new(3, 1)], vec![DiffTerm::new(3, 1)], vec![]];
        ModelComplex::new("square", gens, d, Some(0)).unwrap()
    }

    #[test]
    fn square_validates() {
        assert!(validate_complex(&square_only()).is_ok());
    }

    #[test]
    fn broken_square_reports_d_squared() {
        let c = square_only();
        let mut d: Vec<Vec<DiffTerm>> = (0..4).map(|k| c.differential(k).to_vec()).collect();
        d[2].clear();
        let broken = ModelComplex::new("broken", c.generators().to_vec(), d, None).unwrap();
        let report = validate_complex(&broken);
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(&report.violations[0], Violation::SquareNonzero { source, .. } if source == "a"));
    }

    #[test]
    fn filtration_and_maslov_violations() {
        let gens = vec![Generator::new("x", 0, 0, 0), Generator::new("y", 1, 0, -1)];
        let c = ModelComplex::new("bad", gens, vec![vec![DiffTerm::new(1, 0)], vec![]], None).unwrap();
        let report = validate_complex(&c);
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::NotFiltered { .. }));

        let gens = vec![Generator::new("x", 0, 0, 0), Generator::new("y", -1, 0, 0)];
        let c = ModelComplex::new("bad", gens, vec![vec![DiffTerm::new(1, 0)], vec![]], None).unwrap();
        assert!(matches!(validate_complex(&c).violations[0], Violation::MaslovDrop { drop: 0, .. }));
    }

    #[test]
    fn structural_errors() {
        let gens = vec![Generator::new("x", 0, 0, 0), Generator::new("x", 0, 0, 0)];
        assert!(ModelComplex::new("dup", gens, vec![vec![], vec![]], None).is_err());
        let gens = vec![Generator::new("x", 0, 0, 0)];
        assert!(ModelComplex::new("oob", gens, vec![vec![DiffTerm::new(3, 0)]], None).is_err());
    }

    #[test]
    fn repeated_terms_cancel() {
        let gens = vec![Generator::new("x", 0, 0, 0), Generator::new("y", -1, 0, -1)];
        let c = ModelComplex::new("rep", gens, vec![vec![DiffTerm::new(1, 0), DiffTerm::new(1, 0)], vec![]], None).unwrap();
        assert!(c.differential(0).is_empty());
    }

    #[test]
    fn square_alexander() {
        // One square contributes 2 - t - t^-1 to the Euler characteristic.
        let p = square_only().alexander_polynomial();
        assert_eq!(p, LaurentPoly::from_pairs(&[(-1, -1), (0, 2), (1, -1)]));
    }
}
