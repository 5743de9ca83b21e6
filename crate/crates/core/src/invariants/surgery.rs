use num_rational::Rational64;

use super::{correction_terms, Triple};
use crate::error::{Error, Result};
use crate::involution::FilteredMorphism;
use crate::knot::ModelComplex;

/// Correction terms of `p`-surgery for `p >= genus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryReport {
    pub p: i64,
    pub triple: Triple,
    pub d_lower: Rational64,
    pub d: Rational64,
    pub d_upper: Rational64,
}

impl SurgeryReport {
    pub fn from_triple(p: i64, genus: i64, triple: Triple) -> Result<Self> {
        if p < genus.max(1) {
            return Err(Error::SurgeryTooSmall { p, genus });
        }
        let base = Rational64::new(p - 1, 4);
        let shift = |v: i64| base - Rational64::from_integer(2 * v);
        Ok(SurgeryReport {
            p,
            triple,
            d_lower: shift(triple.v_lower),
            d: shift(triple.v0),
            d_upper: shift(triple.v_upper),
        })
    }

    /// `(d_lower, d, d_upper)` of the orientation reversal.
    pub fn reversed(&self) -> (Rational64, Rational64, Rational64) {
        (-self.d_upper, -self.d, -self.d_lower)
    }
}

pub fn surgery_report(c: &ModelComplex, iota: &FilteredMorphism, p: i64) -> Result<SurgeryReport> {
    if p < c.genus().max(1) {
        return Err(Error::SurgeryTooSmall { p, genus: c.genus() });
    }
    let terms = correction_terms(c, iota)?;
    SurgeryReport::from_triple(p, c.genus(), terms.triple)
}

fn even_sigma(sigma: i64) -> Result<()> {
    if sigma.rem_euclid(2) != 0 {
        return Err(Error::InvalidArgument(format!("signature {sigma} is odd")));
    }
    Ok(())
}

fn check_arf(arf: u8) -> Result<()> {
    if arf > 1 {
        return Err(Error::InvalidArgument(format!("Arf invariant must be 0 or 1, got {arf}")));
    }
    Ok(())
}

/// Closed-form triple of a thin knot with signature `sigma` and Arf
/// invariant `arf`.
pub fn alternating_triple(sigma: i64, arf: u8) -> Result<Triple> {
    even_sigma(sigma)?;
    check_arf(arf)?;
    let t = Triple::new;
    Ok(if sigma <= 0 {
        let k = (-sigma).div_euclid(8);
        match ((-sigma).rem_euclid(8), arf) {
            (0, 0) => t(2 * k, 2 * k, 2 * k),
            (0, _) => t(2 * k + 1, 2 * k, 2 * k),
            (2, 0) => t(2 * k + 1, 2 * k + 1, 2 * k),
            (2, _) => t(2 * k + 1, 2 * k + 1, 2 * k + 1),
            (4, 0) => t(2 * k + 2, 2 * k + 1, 2 * k + 1),
            (4, _) => t(2 * k + 1, 2 * k + 1, 2 * k + 1),
            (_, 0) => t(2 * k + 2, 2 * k + 2, 2 * k + 2),
            (_, _) => t(2 * k + 2, 2 * k + 2, 2 * k + 1),
        }
    } else {
        let k = sigma.div_euclid(8);
        match (sigma.rem_euclid(8), arf) {
            (0, _) => t(0, 0, -2 * k),
            (2, 0) => t(0, 0, -2 * k),
            (2, _) => t(0, 0, -2 * k - 1),
            (4, _) => t(0, 0, -2 * k - 1),
            (_, 0) => t(0, 0, -2 * k - 2),
            (_, _) => t(0, 0, -2 * k - 1),
        }
    })
}

/// Whether a thin knot with this signature and Arf invariant has an odd
/// number of square summands.
///
/// The determinant is `2|tau| + 1 + 4r` with `r` the square count, and the
/// Arf invariant vanishes exactly when it is `±1 mod 8`.
pub fn squares_parity(sigma: i64, arf: u8) -> Result<bool> {
    even_sigma(sigma)?;
    check_arf(arf)?;
    let m = (sigma / 2).abs();
    let base_is_unit = matches!((2 * m + 1).rem_euclid(8), 1 | 7);
    Ok(base_is_unit == (arf == 1))
}

/// Triple of a canonical thin model from `tau` and the parity of the square
/// count.
pub fn thin_triple(tau: i64, odd_squares: bool) -> Triple {
    let m = tau.abs();
    let n = (m + 1) / 2;
    let t = Triple::new;
    match (odd_squares, tau.signum(), m % 2 == 1) {
        (false, 0 | 1, _) => t(n, n, n),
        (false, _, _) => t(0, 0, -n),
        (true, 0, _) => t(1, 0, 0),
        (true, 1, true) => t(n, n, n - 1),
        (true, 1, false) => t(n + 1, n, n),
        (true, _, true) => t(0, 0, -n + 1),
        (true, _, false) => t(0, 0, -n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FroyshovBound {
    /// `4 * d_lower`.
    pub bound: Rational64,
    /// Largest rank of a negative-definite spin filling allowed, if any.
    pub max_rank: Option<i64>,
    /// True when no negative-definite spin filling can exist.
    pub obstructed: bool,
}

/// Rank bound for negative-definite spin fillings of an integer homology
/// sphere with lower correction term `d_lower`.
pub fn froyshov_bound(d_lower: Rational64) -> FroyshovBound {
    let bound = d_lower * 4;
    if bound < Rational64::from_integer(0) {
        FroyshovBound { bound, max_rank: None, obstructed: true }
    } else {
        FroyshovBound { bound, max_rank: Some(bound.floor().to_integer()), obstructed: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnotData {
    pub triple: Triple,
    pub arf: u8,
}

impl KnotData {
    /// Data of a thin knot from its signature and Arf invariant.
    pub fn thin(sigma: i64, arf: u8) -> Result<Self> {
        Ok(KnotData { triple: alternating_triple(sigma, arf)?, arf })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismVerdict {
    pub obstructed: bool,
    pub reasons: Vec<String>,
    /// Rokhlin invariants of the two surgeries, in `Q / 2Z`.
    pub rokhlin: (Rational64, Rational64),
}

fn rokhlin(p: i64, arf: u8) -> Rational64 {
    let mu = Rational64::new(1 - p, 8) + Rational64::from_integer(i64::from(arf));
    let two = Rational64::from_integer(2);
    mu - two * (mu / two).floor()
}

/// Whether `p`-surgeries on the two knots can be homology cobordant, judged
/// by the correction-term triples and the Rokhlin invariant.
pub fn cobordism_check(k1: &KnotData, k2: &KnotData, p: i64) -> Result<CobordismVerdict> {
    if p <= 0 || p % 2 == 0 {
        return Err(Error::InvalidArgument(format!("surgery coefficient must be odd and positive, got {p}")));
    }
    check_arf(k1.arf)?;
    check_arf(k2.arf)?;
    let mut reasons = Vec::new();
    if k1.triple != k2.triple {
        reasons.push(format!("triples differ: {} vs {}", k1.triple, k2.triple));
    }
    let mu = (rokhlin(p, k1.arf), rokhlin(p, k2.arf));
    if mu.0 != mu.1 {
        reasons.push(format!("Rokhlin invariants differ: {} vs {}", mu.0, mu.1));
    }
    Ok(CobordismVerdict { obstructed: !reasons.is_empty(), reasons, rokhlin: mu })
}
