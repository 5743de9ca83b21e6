use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Integer Laurent polynomial in `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        Self::from_pairs(&[(exp, coeff)])
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in pairs {
            *p.coeffs.entry(e).or_default() += c;
        }
        p.coeffs.retain(|_, c| *c != 0);
        p
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let pairs: Vec<(i64, i64)> = self.terms().chain(other.terms()).collect();
        Self::from_pairs(&pairs)
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let pairs: Vec<(i64, i64)> = self.terms().chain(other.terms().map(|(e, c)| (e, -c))).collect();
        Self::from_pairs(&pairs)
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut pairs = Vec::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                pairs.push((e1 + e2, c1 * c2));
            }
        }
        Self::from_pairs(&pairs)
    }

    pub fn shift(&self, by: i64) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + by, c)).collect() }
    }

    /// Exact quotient by a divisor with leading coefficient `±1`, if any.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dhi);
        if lead.abs() != 1 {
            return None;
        }
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero();
        while let Some(hi) = rem.max_exp() {
            if hi - (dhi - dlo) < rem.min_exp()? {
                return None;
            }
            let q = LaurentPoly::monomial(rem.coeff(hi) * lead, hi - dhi);
            rem = rem.sub(&q.mul(divisor));
            quotient = quotient.add(&q);
        }
        Some(quotient)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.terms()
            .map(|(e, c)| {
                assert!(e >= 0 || t.abs() == 1, "negative power at non-unit point");
                c * t.pow(e.unsigned_abs() as u32)
            })
            .sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (*e, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, a) => write!(f, "{a}t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, a) => write!(f, "{a}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Symmetrized Alexander polynomial of the `(p, q)` torus knot.
pub fn torus_knot_alexander(p: u32, q: u32) -> Result<LaurentPoly> {
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return Err(Error::InvalidArgument(format!("torus knot needs coprime p, q >= 2, got ({p}, {q})")));
    }
    let (p, q) = (i64::from(p), i64::from(q));
    let one = LaurentPoly::monomial(1, 0);
    let minus_one = |e: i64| LaurentPoly::monomial(1, e).sub(&one);
    let num = minus_one(p * q).mul(&minus_one(1));
    let den = minus_one(p).mul(&minus_one(q));
    let quotient = num.div_exact(&den).expect("torus knot quotient is exact");
    Ok(quotient.shift(-(p - 1) * (q - 1) / 2))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Torsion sequence `n_1 < ... < n_m` read off an L-space Alexander polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSpaceData {
    pub torsion: Vec<u32>,
    /// Alternating sum `n_m - n_(m-1) + ...`.
    pub n: i64,
}

/// Recognize `(-1)^m + sum_i (-1)^(m-i) (t^(n_i) + t^(-n_i))`.
pub fn from_alexander_lspace(delta: &LaurentPoly) -> Result<LSpaceData> {
    if !delta.is_symmetric() {
        return Err(Error::NotLSpaceForm(format!("{delta} is not symmetric")));
    }
    let torsion: Vec<i64> = delta.terms().filter(|&(e, _)| e > 0).map(|(e, _)| e).collect();
    let m = torsion.len();
    for (idx, &n) in torsion.iter().enumerate() {
        let expected = if (m - idx - 1) % 2 == 0 { 1 } else { -1 };
        let got = delta.coeff(n);
        if got != expected {
            return Err(Error::NotLSpaceForm(format!("coefficient of t^{n} is {got}, expected {expected}")));
        }
    }
    let constant = if m % 2 == 0 { 1 } else { -1 };
    if delta.coeff(0) != constant {
        return Err(Error::NotLSpaceForm(format!(
            "constant term is {}, expected {constant}",
            delta.coeff(0)
        )));
    }
    let n = torsion.iter().rev().enumerate().map(|(k, &v)| if k % 2 == 0 { v } else { -v }).sum();
    let torsion = torsion.into_iter().map(|v| u32::try_from(v).expect("exponent fits u32")).collect();
    Ok(LSpaceData { torsion, n })
}
