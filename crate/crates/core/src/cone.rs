//! Finite truncations of `A_0^+`, `B^+` and the involutive mapping cone.
//!
//! `A_0^+` is spanned by `U^k x` with `max(i - k, j - k) >= 0` and `B^+` by
//! those with `i - k >= 0`; both are quotients of the full complex. We keep
//! only elements of Maslov grading at most `min M + 2 * depth`. That set is a
//! subcomplex closed under `U` and under any grading-preserving map, so the
//! restricted involution is an honest chain map and the cone is an honest
//! complex. Homology is exact strictly below the cut.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use crate::error::{Error, Result};
use crate::f2::F2Matrix;
use crate::involution::FilteredMorphism;
use crate::knot::ModelComplex;

/// The element `U^upower * gen`, in the base copy or the `Q` copy of a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncElem {
    pub gen: usize,
    pub upower: i64,
    pub grading: i64,
    pub q_copy: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    A,
    B,
}

impl Region {
    fn contains(self, i: i64, j: i64, k: i64) -> bool {
        match self {
            Region::A => i.max(j) - k >= 0,
            Region::B => i - k >= 0,
        }
    }
}

/// A finite graded complex over `F2` with a `U` action and, for cones, a `Q`
/// action. Elements are sorted by grading; maps act on column vectors.
#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    elements: Vec<TruncElem>,
    blocks: BTreeMap<i64, Range<usize>>,
    index: HashMap<(usize, i64, bool), usize>,
    boundary: F2Matrix,
    u_action: F2Matrix,
    q_action: Option<F2Matrix>,
    trust_max: i64,
    region: Option<Region>,
}

impl TruncatedComplex {
    /// Assemble from parts. Elements must be sorted by grading, the boundary
    /// must lower grading by one and square to zero, `U` must lower grading
    /// by two and `Q` by one, and both must commute with the boundary.
    pub fn new(
        elements: Vec<TruncElem>,
        boundary: F2Matrix,
        u_action: F2Matrix,
        q_action: Option<F2Matrix>,
        trust_max: i64,
    ) -> Result<Self> {
        let n = elements.len();
        if elements.windows(2).any(|w| w[0].grading > w[1].grading) {
            return Err(Error::InvalidArgument("elements are not sorted by grading".into()));
        }
        let shape_ok = |m: &F2Matrix| m.rows() == n && m.cols() == n;
        if !shape_ok(&boundary) || !shape_ok(&u_action) || q_action.as_ref().is_some_and(|q| !shape_ok(q)) {
            return Err(Error::InvalidArgument(format!("maps must be {n} x {n}")));
        }
        let degree_ok = |m: &F2Matrix, drop: i64| {
            (0..n).all(|s| m.column(s).ones().all(|t| elements[s].grading - elements[t].grading == drop))
        };
        if !degree_ok(&boundary, 1) || !degree_ok(&u_action, 2) || q_action.as_ref().is_some_and(|q| !degree_ok(q, 1)) {
            return Err(Error::InvalidArgument("a map has the wrong degree".into()));
        }
        if !boundary.mul(&boundary).is_zero() {
            return Err(Error::InvalidArgument("boundary does not square to zero".into()));
        }
        if boundary.mul(&u_action) != u_action.mul(&boundary) {
            return Err(Error::InvalidArgument("U does not commute with the boundary".into()));
        }
        if let Some(q) = &q_action {
            if boundary.mul(q) != q.mul(&boundary) {
                return Err(Error::InvalidArgument("Q does not commute with the boundary".into()));
            }
        }
        Ok(Self::assemble(elements, boundary, u_action, q_action, trust_max, None))
    }

    fn assemble(
        elements: Vec<TruncElem>,
        boundary: F2Matrix,
        u_action: F2Matrix,
        q_action: Option<F2Matrix>,
        trust_max: i64,
        region: Option<Region>,
    ) -> Self {
        let mut blocks: BTreeMap<i64, Range<usize>> = BTreeMap::new();
        for (k, e) in elements.iter().enumerate() {
            blocks.entry(e.grading).and_modify(|r| r.end = k + 1).or_insert(k..k + 1);
        }
        let index = elements.iter().enumerate().map(|(k, e)| ((e.gen, e.upower, e.q_copy), k)).collect();
        TruncatedComplex { elements, blocks, index, boundary, u_action, q_action, trust_max, region }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[TruncElem] {
        &self.elements
    }

    pub fn boundary(&self) -> &F2Matrix {
        &self.boundary
    }

    pub fn u_action(&self) -> &F2Matrix {
        &self.u_action
    }

    pub fn q_action(&self) -> Option<&F2Matrix> {
        self.q_action.as_ref()
    }

    /// Largest grading at which homology is trusted.
    pub fn trust_max(&self) -> i64 {
        self.trust_max
    }

    /// Index range of the elements in grading `r`.
    pub fn block(&self, r: i64) -> Range<usize> {
        self.blocks.get(&r).cloned().unwrap_or(0..0)
    }

    pub fn gradings(&self) -> impl Iterator<Item = i64> + '_ {
        self.blocks.keys().copied()
    }

    pub fn find(&self, gen: usize, upower: i64, q_copy: bool) -> Option<usize> {
        self.index.get(&(gen, upower, q_copy)).copied()
    }
}

fn ceil_div2(x: i64) -> i64 {
    x.div_euclid(2) + x.rem_euclid(2)
}

/// Nilpotency bound for `U` on the reduced part of the homology of any
/// truncation or cone built from `c`: the number of grading pairs between the
/// lowest element and the last grading where the truncation differs from the
/// full complex.
pub fn tower_margin(c: &ModelComplex) -> i64 {
    let (lo, hi) = interesting_range(c);
    ((hi - lo) / 2 + 1).max(3)
}

/// Gradings that can carry anything besides towers, for `A_0^+`, `B^+` and
/// their cones.
fn interesting_range(c: &ModelComplex) -> (i64, i64) {
    let gens = c.generators();
    let lowest = gens.iter().map(|g| g.maslov - 2 * g.i.max(g.j)).min().unwrap_or(0);
    let full_from = gens.iter().map(|g| g.i).min().unwrap_or(0);
    (lowest - 1, c.max_maslov() - 2 * full_from + 3)
}

/// Depth that keeps every tower bottom and the whole reduced part inside the
/// trusted range, with room for `U^margin`.
pub fn default_depth(c: &ModelComplex) -> i64 {
    let (_, hi) = interesting_range(c);
    let need = hi + 2 * tower_margin(c) + 1 + c.diameter() + 2 - c.min_maslov();
    (ceil_div2(need) + 1).max(c.diameter() + 6)
}

fn build_region(c: &ModelComplex, depth: i64, region: Region) -> Result<TruncatedComplex> {
    if depth < c.diameter() + 2 {
        return Err(Error::InvalidArgument(format!(
            "depth {depth} is below diameter + 2 = {}",
            c.diameter() + 2
        )));
    }
    let cut = c.min_maslov() + 2 * depth;
    let mut elements = Vec::new();
    for (x, g) in c.generators().iter().enumerate() {
        let kmax = match region {
            Region::A => g.i.max(g.j),
            Region::B => g.i,
        };
        for k in ceil_div2(g.maslov - cut)..=kmax {
            elements.push(TruncElem { gen: x, upower: k, grading: g.maslov - 2 * k, q_copy: false });
        }
    }
    elements.sort_by_key(|e| (e.grading, e.gen, e.upower));
    let n = elements.len();
    let index: HashMap<(usize, i64), usize> =
        elements.iter().enumerate().map(|(k, e)| ((e.gen, e.upower), k)).collect();
    let present = |x: usize, k: i64| {
        let g = c.generator(x);
        if region.contains(g.i, g.j, k) {
            Some(*index.get(&(x, k)).expect("in-region elements below the cut are present"))
        } else {
            None
        }
    };
    let mut boundary = F2Matrix::zeros(n, n);
    let mut u_action = F2Matrix::zeros(n, n);
    for (col, e) in elements.iter().enumerate() {
        for t in c.differential(e.gen) {
            if let Some(row) = present(t.target, e.upower + i64::from(t.upower)) {
                boundary.flip(row, col);
            }
        }
        if let Some(row) = present(e.gen, e.upower + 1) {
            u_action.set(row, col, true);
        }
    }
    let trust_max = cut - c.diameter() - 2;
    Ok(TruncatedComplex::assemble(elements, boundary, u_action, None, trust_max, Some(region)))
}

/// Truncation of `A_0^+` at the given depth.
pub fn build_a_plus(c: &ModelComplex, depth: i64) -> Result<TruncatedComplex> {
    build_region(c, depth, Region::A)
}

/// Truncation of `B^+` at the given depth.
pub fn build_b_plus(c: &ModelComplex, depth: i64) -> Result<TruncatedComplex> {
    build_region(c, depth, Region::B)
}

/// The quotient map `A_0^+ -> B^+`, as a matrix from `a` coordinates to `b`
/// coordinates. Both truncations must come from the same complex and depth.
pub fn v0_projection(a: &TruncatedComplex, b: &TruncatedComplex) -> Result<F2Matrix> {
    if a.region != Some(Region::A) || b.region != Some(Region::B) {
        return Err(Error::InvalidArgument("v0 needs an A_0^+ and a B^+ truncation".into()));
    }
    let mut m = F2Matrix::zeros(b.len(), a.len());
    for (col, e) in a.elements.iter().enumerate() {
        if let Some(row) = b.find(e.gen, e.upower, false) {
            m.set(row, col, true);
        }
    }
    Ok(m)
}

/// The grading-preserving map `iota` induces on a truncation of `A_0^+`.
pub fn restrict_involution(c: &ModelComplex, iota: &FilteredMorphism, a: &TruncatedComplex) -> Result<F2Matrix> {
    if a.region != Some(Region::A) {
        return Err(Error::InvalidArgument("the involution acts on A_0^+ only".into()));
    }
    if iota.maslov_shift != 0 || iota.map.len() != c.len() {
        return Err(Error::InvalidArgument("involution must be a grading-preserving map on this complex".into()));
    }
    let mut m = F2Matrix::zeros(a.len(), a.len());
    for (col, e) in a.elements.iter().enumerate() {
        for &(t, k) in iota.map.image(e.gen) {
            let g = c.generator(t);
            let kk = e.upower + k;
            if !Region::A.contains(g.i, g.j, kk) {
                continue;
            }
            let row = a.find(t, kk, false).ok_or_else(|| {
                Error::InvalidInvolution(format!("image term U^{k} {} changes the Maslov grading", g.name))
            })?;
            m.flip(row, col);
        }
    }
    Ok(m)
}

/// Mapping cone of `Q (1 + iota)`: two copies of `t`, the base copy shifted
/// up by one, with boundary `[[d, 0], [1 + iota, d]]` and `Q` carrying the
/// base copy onto the `Q` copy.
pub fn involutive_cone(t: &TruncatedComplex, iota: &F2Matrix) -> Result<TruncatedComplex> {
    let n = t.len();
    if iota.rows() != n || iota.cols() != n {
        return Err(Error::InvalidArgument(format!("self-map must be {n} x {n}")));
    }
    if t.boundary.mul(iota) != iota.mul(&t.boundary) {
        return Err(Error::InvalidArgument("self-map does not commute with the boundary".into()));
    }
    if t.u_action.mul(iota) != iota.mul(&t.u_action) {
        return Err(Error::InvalidArgument("self-map does not commute with U".into()));
    }
    let mut elements: Vec<(TruncElem, usize)> = Vec::with_capacity(2 * n);
    for (k, e) in t.elements.iter().enumerate() {
        elements.push((TruncElem { grading: e.grading + 1, q_copy: false, ..*e }, k));
        elements.push((TruncElem { q_copy: true, ..*e }, k));
    }
    elements.sort_by_key(|(e, _)| (e.grading, e.q_copy, e.gen, e.upower));
    let mut position = vec![[0usize; 2]; n];
    for (k, (e, src)) in elements.iter().enumerate() {
        position[*src][usize::from(e.q_copy)] = k;
    }
    let one_plus_iota = iota.add(&F2Matrix::identity(n));
    let mut boundary = F2Matrix::zeros(2 * n, 2 * n);
    let mut u_action = F2Matrix::zeros(2 * n, 2 * n);
    let mut q_action = F2Matrix::zeros(2 * n, 2 * n);
    for src in 0..n {
        let [base, q] = position[src];
        for tgt in t.boundary.column(src).ones() {
            boundary.flip(position[tgt][0], base);
            boundary.flip(position[tgt][1], q);
        }
        for tgt in one_plus_iota.column(src).ones() {
            boundary.flip(position[tgt][1], base);
        }
        for tgt in t.u_action.column(src).ones() {
            u_action.flip(position[tgt][0], base);
            u_action.flip(position[tgt][1], q);
        }
        q_action.set(q, base, true);
    }
    let elements = elements.into_iter().map(|(e, _)| e).collect();
    Ok(TruncatedComplex::assemble(elements, boundary, u_action, Some(q_action), t.trust_max, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::canonical_involution;
    use crate::knot::{build_mirror_staircase, build_thin_canonical, figure_eight};

    #[test]
    fn region_membership() {
        let c = build_mirror_staircase(&[1]).unwrap();
        let a = build_a_plus(&c, 10).unwrap();
        let b = build_b_plus(&c, 10).unwrap();
        for e in a.elements() {
            let g = c.generator(e.gen);
            assert!(g.i.max(g.j) - e.upower >= 0);
            assert!(e.grading <= c.min_maslov() + 20);
        }
        assert!(b.elements().iter().all(|e| c.generator(e.gen).i - e.upower >= 0));
        assert!(b.len() < a.len());
    }

    #[test]
    fn shallow_depth_rejected() {
        let c = figure_eight();
        assert!(build_a_plus(&c, 1).is_err());
    }

    #[test]
    fn maps_are_chain_maps() {
        let c = build_thin_canonical(-3, 3, None).unwrap();
        let depth = default_depth(&c);
        let a = build_a_plus(&c, depth).unwrap();
        let b = build_b_plus(&c, depth).unwrap();
        let d = a.boundary();
        assert!(d.mul(d).is_zero());
        assert_eq!(d.mul(a.u_action()), a.u_action().mul(d));
        let v0 = v0_projection(&a, &b).unwrap();
        assert_eq!(v0.mul(d), b.boundary().mul(&v0));
        let iota = restrict_involution(&c, &canonical_involution(&c).unwrap(), &a).unwrap();
        let cone = involutive_cone(&a, &iota).unwrap();
        let dc = cone.boundary();
        assert!(dc.mul(dc).is_zero());
        let q = cone.q_action().unwrap();
        assert!(q.mul(q).is_zero());
        assert_eq!(dc.mul(q), q.mul(dc));
        assert_eq!(cone.len(), 2 * a.len());
    }

    #[test]
    fn generic_constructor_checks() {
        let e = |grading| TruncElem { gen: 0, upower: 0, grading, q_copy: false };
        let mut d = F2Matrix::zeros(2, 2);
        d.set(0, 1, true);
        let ok = TruncatedComplex::new(vec![e(0), e(1)], d.clone(), F2Matrix::zeros(2, 2), None, 5);
        assert!(ok.is_ok());
        let bad = TruncatedComplex::new(vec![e(0), e(2)], d, F2Matrix::zeros(2, 2), None, 5);
        assert!(bad.is_err());
    }
}
