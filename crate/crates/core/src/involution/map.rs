use std::collections::BTreeSet;

use crate::knot::ModelComplex;

/// A `U`-equivariant map of the free `F2[U, U^-1]` module on a complex's
/// generators, given by the image of each generator as a set of terms
/// `(target, k)` standing for `U^k * target`. `k` may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UMap {
    images: Vec<BTreeSet<(usize, i64)>>,
}

impl UMap {
    pub fn zero(n: usize) -> Self {
        UMap { images: vec![BTreeSet::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for x in 0..n {
            m.toggle(x, x, 0);
        }
        m
    }

    /// Build from term lists; repeated terms cancel in pairs.
    pub fn from_terms(terms: Vec<Vec<(usize, i64)>>) -> Self {
        let mut m = Self::zero(terms.len());
        for (x, list) in terms.into_iter().enumerate() {
            for (t, k) in list {
                m.toggle(x, t, k);
            }
        }
        m
    }

    pub fn differential(c: &ModelComplex) -> Self {
        Self::from_terms(
            (0..c.len())
                .map(|x| c.differential(x).iter().map(|t| (t.target, i64::from(t.upower))).collect())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn toggle(&mut self, source: usize, target: usize, k: i64) {
        let image = &mut self.images[source];
        if !image.remove(&(target, k)) {
            image.insert((target, k));
        }
    }

    pub fn image(&self, source: usize) -> &BTreeSet<(usize, i64)> {
        &self.images[source]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(BTreeSet::is_empty)
    }

    pub fn add(&self, other: &UMap) -> UMap {
        assert_eq!(self.len(), other.len(), "size mismatch");
        let mut out = self.clone();
        for (x, image) in other.images.iter().enumerate() {
            for &(t, k) in image {
                out.toggle(x, t, k);
            }
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &UMap) -> UMap {
        assert_eq!(self.len(), inner.len(), "size mismatch");
        let mut out = UMap::zero(self.len());
        for (x, image) in inner.images.iter().enumerate() {
            for &(y, k) in image {
                for &(z, k2) in &self.images[y] {
                    out.toggle(x, z, k + k2);
                }
            }
        }
        out
    }

    /// Terms as `(source, target, k)` triples in source order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.images.iter().enumerate().flat_map(|(x, im)| im.iter().map(move |&(t, k)| (x, t, k)))
    }
}
