use std::collections::HashMap;
use std::fmt;

use super::{canonical_sarkar_map, conjectural_sarkar_map, FilteredMorphism, MorphismKind, UMap};
use crate::f2::{BitVec, F2Matrix};
use crate::knot::{ModelComplex, Provenance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareCheck {
    /// `iota^2` equals the Sarkar map on the nose.
    Exact,
    /// `iota^2 + sarkar = dH + Hd` for the recorded `H`.
    Homotopic { homotopy: UMap, filtered: bool },
    /// No homotopy exists.
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SarkarSource {
    /// Read off the known structure of a built-in model.
    Canonical,
    /// The `1 + U^-1 d_odd d_odd` formula, used for user complexes.
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionReport {
    pub failures: Vec<String>,
    pub square: SquareCheck,
    pub sarkar_source: SarkarSource,
}

impl InvolutionReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty() && self.square != SquareCheck::Fails
    }
}

impl fmt::Display for InvolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.failures {
            writeln!(f, "fail: {line}")?;
        }
        let source = match self.sarkar_source {
            SarkarSource::Canonical => "canonical",
            SarkarSource::Formula => "formula",
        };
        match &self.square {
            SquareCheck::Exact => write!(f, "iota^2 equals the Sarkar map ({source})"),
            SquareCheck::Homotopic { filtered, .. } => write!(
                f,
                "iota^2 is homotopic to the Sarkar map ({source}); homotopy is {}filtered",
                if *filtered { "" } else { "not " }
            ),
            SquareCheck::Fails => write!(f, "iota^2 is not homotopic to the Sarkar map ({source})"),
        }
    }
}

fn describe(c: &ModelComplex, x: usize, t: usize, k: i64) -> String {
    format!("{} -> U^{k} {}", c.generator(x).name, c.generator(t).name)
}

fn filtration_ok(c: &ModelComplex, kind: MorphismKind, x: usize, t: usize, k: i64) -> bool {
    let (gx, gt) = (c.generator(x), c.generator(t));
    let (ti, tj) = (gt.i - k, gt.j - k);
    match kind {
        MorphismKind::Filtered => ti <= gx.i && tj <= gx.j,
        MorphismKind::SkewFiltered => ti <= gx.j && tj <= gx.i,
    }
}

/// Check that `iota` is a grading-preserving, skew-filtered chain map whose
/// square is homotopic to the Sarkar map.
pub fn verify_involution(c: &ModelComplex, iota: &FilteredMorphism) -> InvolutionReport {
    let mut failures = Vec::new();
    let map = &iota.map;
    if map.len() != c.len() {
        failures.push(format!("map has {} generators, complex has {}", map.len(), c.len()));
        return InvolutionReport { failures, square: SquareCheck::Fails, sarkar_source: SarkarSource::Formula };
    }

    let d = UMap::differential(c);
    let commutator = d.compose(map).add(&map.compose(&d));
    for x in (0..c.len()).filter(|&x| !commutator.image(x).is_empty()) {
        failures.push(format!("d iota + iota d is nonzero on {}", c.generator(x).name));
    }
    for (x, t, k) in map.entries() {
        let shift = c.generator(t).maslov - 2 * k - c.generator(x).maslov;
        if shift != iota.maslov_shift {
            failures.push(format!("{} shifts Maslov grading by {shift}", describe(c, x, t, k)));
        }
        if !filtration_ok(c, MorphismKind::SkewFiltered, x, t, k) {
            failures.push(format!("{} is not skew-filtered", describe(c, x, t, k)));
        }
    }
    let square = map.compose(map);
    for (x, t, k) in square.entries() {
        if !filtration_ok(c, MorphismKind::Filtered, x, t, k) {
            failures.push(format!("iota^2: {} is not filtered", describe(c, x, t, k)));
        }
    }

    let (sarkar, sarkar_source) = match c.provenance() {
        Provenance::User => (conjectural_sarkar_map(c), SarkarSource::Formula),
        _ => (canonical_sarkar_map(c), SarkarSource::Canonical),
    };
    let sarkar = match sarkar {
        Ok(s) => s.map,
        Err(e) => {
            failures.push(format!("Sarkar map unavailable: {e}"));
            return InvolutionReport { failures, square: SquareCheck::Fails, sarkar_source };
        }
    };
    let defect = square.add(&sarkar);
    let square = if defect.is_zero() {
        SquareCheck::Exact
    } else {
        match find_homotopy(c, &defect) {
            Some(h) => {
                let filtered = h.entries().all(|(x, t, k)| filtration_ok(c, MorphismKind::Filtered, x, t, k));
                SquareCheck::Homotopic { homotopy: h, filtered }
            }
            None => SquareCheck::Fails,
        }
    };
    InvolutionReport { failures, square, sarkar_source }
}

/// Solve `dH + Hd = target` for a `U`-equivariant `H` raising Maslov grading
/// by one.
///
/// Gradings fix the `U`-power of every possible term of `H`, so the unknowns
/// are one bit per pair of generators and the system is finite.
pub fn find_homotopy(c: &ModelComplex, target: &UMap) -> Option<UMap> {
    let n = c.len();
    let m = |x: usize| c.generator(x).maslov;
    // Power of U in the unique term x -> U^k y of degree +1, if any.
    let h_power = |x: usize, y: usize| {
        let gap = m(y) - m(x) - 1;
        (gap.rem_euclid(2) == 0).then_some(gap / 2)
    };
    let mut unknowns: HashMap<(usize, usize), usize> = HashMap::new();
    let mut unknown_list = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if h_power(x, y).is_some() {
                unknowns.insert((x, y), unknown_list.len());
                unknown_list.push((x, y));
            }
        }
    }

    // Equation (x, z): coefficient of z in (dH + Hd)(x).
    let eq = |x: usize, z: usize| x * n + z;
    let mut system = F2Matrix::zeros(n * n, unknown_list.len());
    let d = UMap::differential(c);
    for (&(x, y), &col) in &unknowns {
        for &(z, _) in d.image(y) {
            system.flip(eq(x, z), col);
        }
    }
    for x in 0..n {
        for &(w, _) in d.image(x) {
            for z in 0..n {
                if let Some(&col) = unknowns.get(&(w, z)) {
                    system.flip(eq(x, z), col);
                }
            }
        }
    }
    let mut rhs = BitVec::zeros(n * n);
    for (x, z, k) in target.entries() {
        if 2 * k != m(z) - m(x) {
            return None;
        }
        rhs.flip(eq(x, z));
    }
    let solution = system.solve(&rhs)?;
    let mut h = UMap::zero(n);
    for col in solution.ones() {
        let (x, y) = unknown_list[col];
        h.toggle(x, y, h_power(x, y).expect("unknowns have a power"));
    }
    Some(h)
}
