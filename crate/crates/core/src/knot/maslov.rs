use std::collections::VecDeque;

use super::ModelComplex;
use crate::cone::{build_b_plus, default_depth};
use crate::error::{Error, Result};
use crate::invariants::graded_homology;

/// Maslov gradings determined up to an overall constant by the differential.
///
/// A term `U^k t` in `d(s)` forces `M(t) = M(s) - 1 + 2k`. Each extra edge
/// `(s, t, delta)` forces `M(t) = M(s) + delta`. The first generator gets
/// grading zero. Fails if the constraints conflict or leave a generator
/// unreached.
pub fn assign_relative_maslov(
    c: &ModelComplex,
    extra: impl IntoIterator<Item = (usize, usize, i64)>,
) -> Result<Vec<i64>> {
    let n = c.len();
    let mut adjacency: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let mut link = |s: usize, t: usize, delta: i64| {
        adjacency[s].push((t, delta));
        adjacency[t].push((s, -delta));
    };
    for s in 0..n {
        for term in c.differential(s) {
            link(s, term.target, 2 * i64::from(term.upower) - 1);
        }
    }
    for (s, t, delta) in extra {
        link(s, t, delta);
    }

    let mut grading: Vec<Option<i64>> = vec![None; n];
    grading[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let m = grading[s].expect("queued generators are graded");
        for &(t, delta) in &adjacency[s] {
            match grading[t] {
                None => {
                    grading[t] = Some(m + delta);
                    queue.push_back(t);
                }
                Some(existing) if existing != m + delta => {
                    return Err(Error::InvalidComplex(format!(
                        "inconsistent Maslov constraints at {}",
                        c.generator(t).name
                    )));
                }
                Some(_) => {}
            }
        }
    }
    if let Some(k) = grading.iter().position(Option::is_none) {
        return Err(Error::InvalidComplex(format!(
            "Maslov grading of {} is not tied to {} by any differential",
            c.generator(k).name,
            c.generator(0).name
        )));
    }
    Ok(grading.into_iter().map(|m| m.expect("all graded")).collect())
}

/// Shift Maslov gradings so that the bottom of the tower in `H(B+)` sits in
/// grading zero.
pub fn normalize_maslov(c: &ModelComplex) -> Result<ModelComplex> {
    let b = build_b_plus(c, default_depth(c))?;
    let h = graded_homology(&b);
    let top = b.trust_max();
    let Some(bottom) = h.gradings().find(|&r| h.dim(r) > 0) else {
        return Err(Error::NotSingleTower("homology vanishes".into()));
    };
    if bottom > top - 4 {
        return Err(Error::NotSingleTower(format!("tower starts at {bottom}, beyond trusted range {top}")));
    }
    for r in bottom..=top {
        let expected = usize::from((r - bottom) % 2 == 0);
        if h.dim(r) != expected {
            return Err(Error::NotSingleTower(format!("rank {} in grading {r}", h.dim(r))));
        }
        if expected == 1 && r > bottom && h.u_rank(r, 1) != 1 {
            return Err(Error::NotSingleTower(format!("U vanishes on grading {r}")));
        }
    }
    Ok(c.shift_maslov(-bottom))
}
