//! Seeded generators of test inputs for the randomized property suites.

use rand::Rng;

use crate::cone::{TruncElem, TruncatedComplex};
use crate::f2::F2Matrix;
use crate::knot::{build_mirror_staircase, build_staircase, build_thin_canonical, ModelComplex};

/// A canonical thin model with `|tau| <= 4`, at most three squares and random
/// diagonal shifts in `[-2, 2]`.
pub fn thin_model(rng: &mut impl Rng) -> ModelComplex {
    let tau = rng.gen_range(-4..=4);
    let squares = rng.gen_range(0..=3);
    let units = squares / 2 + squares % 2;
    let shifts: Vec<i64> = (0..units).map(|_| rng.gen_range(-2..=2)).collect();
    build_thin_canonical(tau, squares, Some(&shifts)).expect("parameters are in range")
}

/// Increasing torsion sequence with up to four entries and steps up to three.
pub fn torsion(rng: &mut impl Rng) -> Vec<u32> {
    let m = rng.gen_range(1..=4);
    let mut acc = 0;
    (0..m)
        .map(|_| {
            acc += rng.gen_range(1..=3);
            acc
        })
        .collect()
}

/// A staircase model of an L-space knot or of its mirror.
pub fn staircase_model(rng: &mut impl Rng) -> ModelComplex {
    let t = torsion(rng);
    let built = if rng.gen_bool(0.5) { build_staircase(&t) } else { build_mirror_staircase(&t) };
    built.expect("torsion is valid")
}

/// A random finite complex with trivial `U`: a direct sum of single
/// generators and acyclic pairs, with a random grading-preserving change of
/// basis applied.
pub fn graded_complex(rng: &mut impl Rng, max_grading: i64) -> TruncatedComplex {
    let mut gradings = Vec::new();
    let mut arrows = Vec::new();
    for _ in 0..rng.gen_range(1..=8) {
        let g = rng.gen_range(0..=max_grading);
        if rng.gen_bool(0.5) && g > 0 {
            arrows.push((gradings.len(), gradings.len() + 1));
            gradings.push(g);
            gradings.push(g - 1);
        } else {
            gradings.push(g);
        }
    }
    let mut order: Vec<usize> = (0..gradings.len()).collect();
    order.sort_by_key(|&k| gradings[k]);
    let mut place = vec![0; gradings.len()];
    for (new, &old) in order.iter().enumerate() {
        place[old] = new;
    }
    let n = gradings.len();
    let mut d = F2Matrix::zeros(n, n);
    for &(s, t) in &arrows {
        d.set(place[t], place[s], true);
    }
    let sorted: Vec<i64> = order.iter().map(|&k| gradings[k]).collect();
    let (p, p_inv) = change_of_basis(rng, &sorted);
    let d = p.mul(&d).mul(&p_inv);
    let elements = sorted.iter().enumerate().map(|(k, &g)| TruncElem { gen: k, upower: 0, grading: g, q_copy: false }).collect();
    TruncatedComplex::new(elements, d, F2Matrix::zeros(n, n), None, max_grading + 2).expect("conjugate of a complex")
}

/// A random grading-preserving automorphism and its inverse, built from
/// transvections inside each grading.
fn change_of_basis(rng: &mut impl Rng, gradings: &[i64]) -> (F2Matrix, F2Matrix) {
    let n = gradings.len();
    let mut p = F2Matrix::identity(n);
    let mut p_inv = F2Matrix::identity(n);
    for _ in 0..3 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b || gradings[a] != gradings[b] {
            continue;
        }
        let mut t = F2Matrix::identity(n);
        t.set(a, b, true);
        p = t.mul(&p);
        p_inv = p_inv.mul(&t);
    }
    (p, p_inv)
}

/// `s ⊕ s` with the map exchanging the two summands.
pub fn doubled_with_swap(s: &TruncatedComplex) -> (TruncatedComplex, F2Matrix) {
    let n = s.len();
    // Interleave the copies so elements stay sorted by grading.
    let at = |k: usize, copy: usize| 2 * k + copy;
    let mut elements = Vec::with_capacity(2 * n);
    for (k, e) in s.elements().iter().enumerate() {
        elements.push(TruncElem { gen: at(k, 0), ..*e });
        elements.push(TruncElem { gen: at(k, 1), ..*e });
    }
    let mut d = F2Matrix::zeros(2 * n, 2 * n);
    let mut u = F2Matrix::zeros(2 * n, 2 * n);
    let mut swap = F2Matrix::zeros(2 * n, 2 * n);
    for src in 0..n {
        for copy in 0..2 {
            for tgt in s.boundary().column(src).ones() {
                d.set(at(tgt, copy), at(src, copy), true);
            }
            for tgt in s.u_action().column(src).ones() {
                u.set(at(tgt, copy), at(src, copy), true);
            }
            swap.set(at(src, 1 - copy), at(src, copy), true);
        }
    }
    let t = TruncatedComplex::new(elements, d, u, None, s.trust_max()).expect("direct sum of a complex");
    (t, swap)
}
