//! Tower bottoms and the correction-term triple `(V_lower, V0, V_upper)`.
//!
//! `d_A` is the bottom of the tower in `H(A_0^+)` and `d_B` that of `H(B^+)`.
//! In the involutive cone, the tower meeting the image of `Q` starts at
//! `d_upper_A` and the other one at `d_lower_A + 1`.

mod homology;
mod surgery;

use std::collections::BTreeMap;

pub use homology::{graded_homology, HomologySummary, TowerMode};
pub use surgery::{
    alternating_triple, cobordism_check, froyshov_bound, squares_parity, surgery_report, thin_triple,
    CobordismVerdict, FroyshovBound, KnotData, SurgeryReport,
};

use crate::cone::{
    build_a_plus, build_b_plus, default_depth, involutive_cone, restrict_involution, tower_margin, v0_projection,
    TruncatedComplex,
};
use crate::error::{Error, Result};
use crate::f2::F2Matrix;
use crate::involution::FilteredMorphism;
use crate::knot::ModelComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    pub v_lower: i64,
    pub v0: i64,
    pub v_upper: i64,
}

impl Triple {
    pub fn new(v_lower: i64, v0: i64, v_upper: i64) -> Self {
        Triple { v_lower, v0, v_upper }
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.v_lower, self.v0, self.v_upper)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionTerms {
    pub triple: Triple,
    pub d_a: i64,
    pub d_b: i64,
    pub d_lower_a: i64,
    pub d_upper_a: i64,
    /// Dimensions of the reduced part of the cone homology, by grading.
    pub reduced_dims: BTreeMap<i64, usize>,
    pub depth: i64,
    pub margin: i64,
}

impl CorrectionTerms {
    /// Same values, ignoring the depth they were computed at.
    pub fn same_values(&self, other: &CorrectionTerms) -> bool {
        (self.triple, self.d_a, self.d_b, self.d_lower_a, self.d_upper_a, &self.reduced_dims)
            == (other.triple, other.d_a, other.d_b, other.d_lower_a, other.d_upper_a, &other.reduced_dims)
    }
}

/// Everything computed for one complex, involution and depth.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub depth: i64,
    pub margin: i64,
    pub a: TruncatedComplex,
    pub b: TruncatedComplex,
    pub iota: F2Matrix,
    pub cone: TruncatedComplex,
    pub h_a: HomologySummary,
    pub h_b: HomologySummary,
    pub h_cone: HomologySummary,
    pub v0: F2Matrix,
}

pub fn analyze(c: &ModelComplex, iota: &FilteredMorphism, depth: i64) -> Result<Analysis> {
    let a = build_a_plus(c, depth)?;
    let b = build_b_plus(c, depth)?;
    let iota0 = restrict_involution(c, iota, &a)?;
    let cone = involutive_cone(&a, &iota0)?;
    let v0 = v0_projection(&a, &b)?;
    Ok(Analysis {
        depth,
        margin: tower_margin(c),
        h_a: graded_homology(&a),
        h_b: graded_homology(&b),
        h_cone: graded_homology(&cone),
        a,
        b,
        iota: iota0,
        cone,
        v0,
    })
}

fn half(diff: i64, what: &str) -> Result<i64> {
    if diff.rem_euclid(2) != 0 {
        return Err(Error::InvalidInvolution(format!("{what} has odd difference {diff}")));
    }
    Ok(diff / 2)
}

impl Analysis {
    pub fn correction_terms(&self) -> Result<CorrectionTerms> {
        let m = self.margin;
        let d_a = self.h_a.tower_bottom(TowerMode::Plain, m)?;
        let d_b = self.h_b.tower_bottom(TowerMode::Plain, m)?;
        let d_upper_a = self.h_cone.tower_bottom(TowerMode::QImage, m)?;
        let d_lower_a = self.h_cone.tower_bottom(TowerMode::NonQImage, m)? - 1;
        self.check_v0_on_towers(d_a)?;

        let v0 = half(d_b - d_a, "d_B - d_A")?;
        let triple = Triple {
            v_lower: v0 + half(d_a - d_lower_a, "d_A - d_lower_A")?,
            v0,
            v_upper: v0 + half(d_a - d_upper_a, "d_A - d_upper_A")?,
        };
        Ok(CorrectionTerms {
            triple,
            d_a,
            d_b,
            d_lower_a,
            d_upper_a,
            reduced_dims: self.h_cone.reduced_dims(m),
            depth: self.depth,
            margin: m,
        })
    }

    /// `v0` must carry the tower of `H(A_0^+)` onto that of `H(B^+)` in high
    /// degrees; otherwise the two bottoms are not comparable.
    fn check_v0_on_towers(&self, d_a: i64) -> Result<()> {
        let limit = self.h_a.detection_limit(TowerMode::Plain, self.margin);
        let r = limit - (limit - d_a).rem_euclid(2);
        let tower_a = self.h_a.u_rank(r, self.margin);
        let induced = self.h_b.induced_from(&self.h_a, &self.v0, r, r);
        if tower_a == 0 || induced.rank() == 0 {
            return Err(Error::InvalidComplex(format!("v0 vanishes on the tower in grading {r}")));
        }
        Ok(())
    }
}

pub fn correction_terms_at(c: &ModelComplex, iota: &FilteredMorphism, depth: i64) -> Result<CorrectionTerms> {
    analyze(c, iota, depth)?.correction_terms()
}

/// Correction terms at the default depth, confirmed at depth + 2.
pub fn correction_terms(c: &ModelComplex, iota: &FilteredMorphism) -> Result<CorrectionTerms> {
    correction_terms_with_depth(c, iota, default_depth(c))
}

/// Correction terms at `depth`, confirmed at `depth + 2`.
pub fn correction_terms_with_depth(c: &ModelComplex, iota: &FilteredMorphism, depth: i64) -> Result<CorrectionTerms> {
    let first = correction_terms_at(c, iota, depth)?;
    let second = correction_terms_at(c, iota, depth + 2)?;
    if !first.same_values(&second) {
        return Err(Error::Unstable {
            depth,
            depth2: depth + 2,
            detail: format!("{} vs {}", first.triple, second.triple),
        });
    }
    Ok(first)
}

#[cfg(test)]
mod tests;
