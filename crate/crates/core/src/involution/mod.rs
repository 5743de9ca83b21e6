//! The conjugation involution on model complexes and the Sarkar map.
//!
//! Maps are stored as [`UMap`]s on generators. Terms are placed by bigrading:
//! to send `x` to a generator `t` at a prescribed position, the `U`-power is
//! whatever moves `t` there. Squares translated along the diagonal therefore
//! need no special casing.

mod map;
mod verify;

pub use map::UMap;
pub use verify::{find_homotopy, verify_involution, InvolutionReport, SarkarSource, SquareCheck};

use crate::error::{Error, Result};
use crate::knot::{ModelComplex, Provenance, SquareLayout, StaircaseLayout};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismKind {
    /// `i` and `j` levels are each non-increasing.
    Filtered,
    /// The `i` level of the image is bounded by the `j` level of the source
    /// and vice versa.
    SkewFiltered,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredMorphism {
    pub kind: MorphismKind,
    pub maslov_shift: i64,
    pub map: UMap,
}

impl FilteredMorphism {
    pub fn involution(map: UMap) -> Self {
        FilteredMorphism { kind: MorphismKind::SkewFiltered, maslov_shift: 0, map }
    }

    pub fn filtered(map: UMap) -> Self {
        FilteredMorphism { kind: MorphismKind::Filtered, maslov_shift: 0, map }
    }
}

/// The term `U^k * target` lying at bigrading `(i, j)`.
fn term_at(c: &ModelComplex, target: usize, (i, j): (i64, i64)) -> (usize, i64) {
    let g = c.generator(target);
    let k = g.i - i;
    assert_eq!(g.j - k, j, "{} cannot be translated to ({i}, {j})", g.name);
    (target, k)
}

fn position(c: &ModelComplex, x: usize) -> (i64, i64) {
    let g = c.generator(x);
    (g.i, g.j)
}

fn transposed(c: &ModelComplex, x: usize) -> (i64, i64) {
    let (i, j) = position(c, x);
    (j, i)
}

/// Sends `source` to the sum of `targets`, each translated to the transpose
/// of the source's position.
fn send(c: &ModelComplex, terms: &mut [Vec<(usize, i64)>], source: usize, targets: &[usize]) {
    let at = transposed(c, source);
    terms[source].extend(targets.iter().map(|&t| term_at(c, t, at)));
}

fn swap_arms(c: &ModelComplex, layout: &StaircaseLayout, from: usize, terms: &mut [Vec<(usize, i64)>]) {
    for &[x1, x2] in &layout.arms[from..] {
        send(c, terms, x1, &[x2]);
        send(c, terms, x2, &[x1]);
    }
}

fn staircase_layout(c: &ModelComplex) -> Result<&StaircaseLayout> {
    match c.provenance() {
        Provenance::Staircase { layout, .. } => Ok(layout),
        Provenance::Thin { layout, squares, .. } if squares.is_empty() => Ok(layout),
        other => Err(Error::WrongProvenance { expected: "staircase", found: other.label().into() }),
    }
}

/// `x_0 -> x_0` and `x_s^1 <-> x_s^2`.
pub fn standard_staircase_involution(c: &ModelComplex) -> Result<FilteredMorphism> {
    let layout = staircase_layout(c)?;
    let mut terms = vec![Vec::new(); c.len()];
    send(c, &mut terms, layout.x0, &[layout.x0]);
    swap_arms(c, layout, 0, &mut terms);
    Ok(FilteredMorphism::involution(UMap::from_terms(terms)))
}

fn write_pair(c: &ModelComplex, low: &SquareLayout, high: &SquareLayout, terms: &mut [Vec<(usize, i64)>]) {
    send(c, terms, low.a, &[high.a]);
    send(c, terms, low.b, &[high.c]);
    send(c, terms, low.c, &[high.b]);
    send(c, terms, low.e, &[high.e]);
    send(c, terms, high.a, &[low.a, low.e]);
    send(c, terms, high.b, &[low.c]);
    send(c, terms, high.c, &[low.b]);
    send(c, terms, high.e, &[low.e]);
}

/// The involution on one pair of transposed squares, zero on every other
/// generator.
pub fn square_pair_involution(c: &ModelComplex, pair: usize) -> Result<FilteredMorphism> {
    let Provenance::Thin { squares, pairs, .. } = c.provenance() else {
        return Err(Error::WrongProvenance { expected: "thin", found: c.provenance().label().into() });
    };
    let [low, high] = *pairs
        .get(pair)
        .ok_or_else(|| Error::InvalidArgument(format!("no square pair {pair}; model has {}", pairs.len())))?;
    let mut terms = vec![Vec::new(); c.len()];
    write_pair(c, &squares[low], &squares[high], &mut terms);
    Ok(FilteredMorphism::involution(UMap::from_terms(terms)))
}

/// The involution on a canonical thin model.
///
/// Square pairs are exchanged. With no leftover square the staircase arms
/// are swapped. A leftover square couples to the staircase through
/// `a -> a + x_0`, `x_0 -> x_0 + e`, and one of two patterns on `b`, `c` and
/// the first steps, chosen by the sign and parity of `tau`.
pub fn thin_involution(c: &ModelComplex) -> Result<FilteredMorphism> {
    let Provenance::Thin { tau, layout, squares, pairs, lone } = c.provenance() else {
        return Err(Error::WrongProvenance { expected: "thin", found: c.provenance().label().into() });
    };
    let tau = *tau;
    let mut terms = vec![Vec::new(); c.len()];
    for &[low, high] in pairs {
        write_pair(c, &squares[low], &squares[high], &mut terms);
    }
    let Some(lone) = *lone else {
        send(c, &mut terms, layout.x0, &[layout.x0]);
        swap_arms(c, layout, 0, &mut terms);
        return Ok(FilteredMorphism::involution(UMap::from_terms(terms)));
    };

    let sq = squares[lone];
    let x0 = layout.x0;
    send(c, &mut terms, sq.a, &[sq.a, x0]);
    send(c, &mut terms, x0, &[x0, sq.e]);
    send(c, &mut terms, sq.e, &[sq.e]);

    let first_arm_at = |p: (i64, i64)| {
        layout.arms[0]
            .iter()
            .copied()
            .find(|&x| position(c, x) == p)
            .expect("first staircase step is adjacent to x0")
    };
    let odd = tau.rem_euclid(2) == 1;
    if tau == 0 {
        send(c, &mut terms, sq.b, &[sq.c]);
        send(c, &mut terms, sq.c, &[sq.b]);
    } else if (tau > 0) == odd {
        // First steps lie below x0: b and c pick up the generator at their
        // own transposed offset.
        swap_arms(c, layout, 0, &mut terms);
        send(c, &mut terms, sq.b, &[sq.c, first_arm_at((0, -1))]);
        send(c, &mut terms, sq.c, &[sq.b, first_arm_at((-1, 0))]);
    } else {
        // First steps lie above x0 and pick up a U^-1 translate of b or c.
        swap_arms(c, layout, 1, &mut terms);
        let upper = first_arm_at((0, 1));
        let right = first_arm_at((1, 0));
        send(c, &mut terms, upper, &[right, sq.c]);
        send(c, &mut terms, right, &[upper, sq.b]);
        send(c, &mut terms, sq.b, &[sq.c]);
        send(c, &mut terms, sq.c, &[sq.b]);
    }
    Ok(FilteredMorphism::involution(UMap::from_terms(terms)))
}

/// The involution attached to a built-in model.
pub fn canonical_involution(c: &ModelComplex) -> Result<FilteredMorphism> {
    match c.provenance() {
        Provenance::Staircase { .. } => standard_staircase_involution(c),
        Provenance::Thin { .. } => thin_involution(c),
        Provenance::User => Err(Error::WrongProvenance { expected: "built-in", found: "user".into() }),
    }
}

/// Sarkar's map on a built-in model: the identity on staircases and
/// `a -> a + e` on every square.
pub fn canonical_sarkar_map(c: &ModelComplex) -> Result<FilteredMorphism> {
    let mut map = UMap::identity(c.len());
    match c.provenance() {
        Provenance::Staircase { .. } => {}
        Provenance::Thin { squares, .. } => {
            for sq in squares {
                let (t, k) = term_at(c, sq.e, position(c, sq.a));
                map.toggle(sq.a, t, k);
            }
        }
        Provenance::User => {
            return Err(Error::WrongProvenance { expected: "built-in", found: "user".into() });
        }
    }
    Ok(FilteredMorphism::filtered(map))
}

/// `1 + U^-1 (sum_{i odd} d_ij)(sum_{j odd} d_ij)`, where `d_ij` is the part
/// of the differential dropping `i` by `i` and `j` by `j`.
pub fn conjectural_sarkar_map(c: &ModelComplex) -> Result<FilteredMorphism> {
    let drop = |x: usize, t: usize, k: i64| {
        let (gx, gt) = (c.generator(x), c.generator(t));
        (gx.i - (gt.i - k), gx.j - (gt.j - k))
    };
    let mut map = UMap::identity(c.len());
    for x in 0..c.len() {
        let mut composite = UMap::zero(c.len());
        for first in c.differential(x) {
            let k1 = i64::from(first.upower);
            if drop(x, first.target, k1).1 % 2 == 0 {
                continue;
            }
            for second in c.differential(first.target) {
                let k2 = i64::from(second.upower);
                if drop(first.target, second.target, k2).0 % 2 != 0 {
                    composite.toggle(x, second.target, k1 + k2);
                }
            }
        }
        for &(t, k) in composite.image(x) {
            if k < 1 {
                return Err(Error::NegativeUPower(format!(
                    "U^-1 applied to U^{k} {} in the image of {}",
                    c.generator(t).name,
                    c.generator(x).name
                )));
            }
            map.toggle(x, t, k - 1);
        }
    }
    Ok(FilteredMorphism::filtered(map))
}
