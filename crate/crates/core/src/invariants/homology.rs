use std::collections::BTreeMap;
use std::ops::Range;

use crate::cone::TruncatedComplex;
use crate::error::{Error, Result};
use crate::f2::{BitVec, F2Matrix, F2Subspace};

/// Homology of one grading, with chosen cycle representatives.
#[derive(Clone, Debug)]
struct Piece {
    range: Range<usize>,
    /// Columns: a basis of the boundaries, then the representatives.
    solver: F2Matrix,
    boundary_rank: usize,
    reps: Vec<BitVec>,
}

impl Piece {
    /// Homology coordinates of a cycle given in block coordinates.
    fn coordinates(&self, v: &BitVec) -> BitVec {
        let y = self.solver.solve(v).expect("vector is a cycle of this grading");
        y.slice(self.boundary_rank..self.boundary_rank + self.reps.len())
    }
}

/// Graded homology of a truncated complex with the induced `U` and `Q` maps.
#[derive(Clone, Debug)]
pub struct HomologySummary {
    pieces: BTreeMap<i64, Piece>,
    /// `u_map[r]`: `H_r -> H_(r-2)`.
    u_map: BTreeMap<i64, F2Matrix>,
    /// `q_map[r]`: `H_r -> H_(r-1)`.
    q_map: BTreeMap<i64, F2Matrix>,
    trust_max: i64,
}

pub fn graded_homology(t: &TruncatedComplex) -> HomologySummary {
    let d = t.boundary();
    let mut pieces = BTreeMap::new();
    for r in t.gradings() {
        let here = t.block(r);
        let cycles = if t.block(r - 1).is_empty() {
            F2Subspace::from_spanning(here.len(), (0..here.len()).map(|k| BitVec::unit(here.len(), k)))
        } else {
            d.block(t.block(r - 1), here.clone()).kernel_basis()
        };
        let boundaries = d.block(here.clone(), t.block(r + 1)).column_space();
        let mut span = boundaries.clone();
        let reps: Vec<BitVec> = cycles.basis().iter().filter(|z| span.insert((*z).clone())).cloned().collect();
        let columns: Vec<BitVec> = boundaries.basis().iter().chain(&reps).cloned().collect();
        let solver = F2Matrix::from_columns(here.len(), &columns);
        pieces.insert(r, Piece { range: here, solver, boundary_rank: boundaries.dim(), reps });
    }
    let induced = |m: &F2Matrix, drop: i64| {
        let mut out = BTreeMap::new();
        for (&r, src) in &pieces {
            let Some(dst) = pieces.get(&(r - drop)) else { continue };
            let block = m.block(dst.range.clone(), src.range.clone());
            let cols: Vec<BitVec> = src.reps.iter().map(|z| dst.coordinates(&block.mul_vec(z))).collect();
            out.insert(r, F2Matrix::from_columns(dst.reps.len(), &cols));
        }
        out
    };
    let u_map = induced(t.u_action(), 2);
    let q_map = t.q_action().map(|q| induced(q, 1)).unwrap_or_default();
    HomologySummary { pieces, u_map, q_map, trust_max: t.trust_max() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerMode {
    /// Lowest grading reached by `Im U^m`.
    Plain,
    /// Lowest grading reached by `Im U^m Q`.
    QImage,
    /// Lowest grading where `Im U^m` is strictly larger than `Im U^m Q`.
    NonQImage,
}

impl TowerMode {
    fn label(self) -> &'static str {
        match self {
            TowerMode::Plain => "plain",
            TowerMode::QImage => "Q-image",
            TowerMode::NonQImage => "non-Q-image",
        }
    }
}

impl HomologySummary {
    pub fn trust_max(&self) -> i64 {
        self.trust_max
    }

    pub fn gradings(&self) -> impl Iterator<Item = i64> + '_ {
        self.pieces.keys().copied()
    }

    pub fn min_grading(&self) -> i64 {
        self.pieces.keys().next().copied().unwrap_or(0)
    }

    pub fn dim(&self, r: i64) -> usize {
        self.pieces.get(&r).map_or(0, |p| p.reps.len())
    }

    /// Cycle representatives of `H_r`, in coordinates of the grading-`r` block.
    pub fn representatives(&self, r: i64) -> &[BitVec] {
        self.pieces.get(&r).map_or(&[], |p| &p.reps)
    }

    fn u_power(&self, r: i64, m: i64) -> F2Matrix {
        // U^m : H_(r + 2m) -> H_r
        let mut acc = F2Matrix::identity(self.dim(r + 2 * m));
        for step in 1..=m {
            let from = r + 2 * m - 2 * (step - 1);
            let Some(u) = self.u_map.get(&from) else {
                return F2Matrix::zeros(self.dim(r), self.dim(r + 2 * m));
            };
            acc = u.mul(&acc);
        }
        acc
    }

    /// Rank of `U^m` into grading `r`.
    pub fn u_rank(&self, r: i64, m: i64) -> usize {
        self.u_power(r, m).rank()
    }

    /// Rank of `U^m Q` into grading `r`.
    pub fn uq_rank(&self, r: i64, m: i64) -> usize {
        let Some(q) = self.q_map.get(&(r + 2 * m + 1)) else { return 0 };
        self.u_power(r, m).mul(q).rank()
    }

    /// Largest grading `r` for which `U^m` (or `U^m Q`) into `r` only reads
    /// trusted homology.
    pub fn detection_limit(&self, mode: TowerMode, margin: i64) -> i64 {
        match mode {
            TowerMode::Plain => self.trust_max - 2 * margin,
            TowerMode::QImage | TowerMode::NonQImage => self.trust_max - 2 * margin - 1,
        }
    }

    pub fn tower_bottom(&self, mode: TowerMode, margin: i64) -> Result<i64> {
        let limit = self.detection_limit(mode, margin);
        (self.min_grading()..=limit)
            .find(|&r| match mode {
                TowerMode::Plain => self.u_rank(r, margin) > 0,
                TowerMode::QImage => self.uq_rank(r, margin) > 0,
                TowerMode::NonQImage => self.u_rank(r, margin) > self.uq_rank(r, margin),
            })
            .ok_or(Error::NoTower { mode: mode.label(), limit })
    }

    /// `dim H_r - dim Im U^m` over trusted gradings, omitting zeros.
    pub fn reduced_dims(&self, margin: i64) -> BTreeMap<i64, usize> {
        let limit = self.detection_limit(TowerMode::Plain, margin);
        (self.min_grading()..=limit)
            .map(|r| (r, self.dim(r) - self.u_rank(r, margin)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    /// Matrix of the map induced by `f` from `H_r(src)` to `H_s(self)`, where
    /// `f` is given in element coordinates and carries `src` to `self`.
    pub fn induced_from(&self, src: &HomologySummary, f: &F2Matrix, r: i64, s: i64) -> F2Matrix {
        let (Some(from), Some(to)) = (src.pieces.get(&r), self.pieces.get(&s)) else {
            return F2Matrix::zeros(self.dim(s), src.dim(r));
        };
        let block = f.block(to.range.clone(), from.range.clone());
        let cols: Vec<BitVec> = from.reps.iter().map(|z| to.coordinates(&block.mul_vec(z))).collect();
        F2Matrix::from_columns(to.reps.len(), &cols)
    }

    /// Matrix of `Q: H_r -> H_(r-1)`, if this is a cone.
    pub fn q_matrix(&self, r: i64) -> Option<&F2Matrix> {
        self.q_map.get(&r)
    }
}
