use super::{assign_relative_maslov, normalize_maslov, DiffTerm, Generator, ModelComplex, Provenance, StaircaseLayout};
use crate::error::{Error, Result};

/// Alternating sum `n_m - n_(m-1) + ... ± n_1`.
pub fn lspace_n(torsion: &[u32]) -> i64 {
    torsion.iter().rev().enumerate().map(|(k, &v)| if k % 2 == 0 { i64::from(v) } else { -i64::from(v) }).sum()
}

fn check_torsion(torsion: &[u32]) -> Result<()> {
    if torsion.is_empty() {
        return Err(Error::InvalidTorsion("empty sequence".into()));
    }
    if torsion[0] == 0 {
        return Err(Error::InvalidTorsion("entries must be positive".into()));
    }
    if let Some(w) = torsion.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidTorsion(format!("not strictly increasing at {} >= {}", w[0], w[1])));
    }
    Ok(())
}

/// Bigradings of `x_1^1, ..., x_m^1` for the L-space staircase.
///
/// Starting from `x_m^1 = (-n, g - n)` and walking down to `x_0 = (0, 0)`,
/// steps alternate between `i` and `j`, beginning with an `i` step of
/// length `n_m - n_(m-1)`.
fn lspace_arm(torsion: &[u32]) -> Vec<(i64, i64)> {
    let m = torsion.len();
    let n = lspace_n(torsion);
    let g = i64::from(torsion[m - 1]);
    let step = |s: usize| i64::from(torsion[s - 1]) - if s >= 2 { i64::from(torsion[s - 2]) } else { 0 };
    let mut pos = vec![(0, 0); m + 1];
    pos[m] = (-n, g - n);
    for s in (1..=m).rev() {
        let (i, j) = pos[s];
        pos[s - 1] = if (m - s) % 2 == 0 { (i + step(s), j) } else { (i, j - step(s)) };
    }
    debug_assert_eq!(pos[0], (0, 0));
    pos[1..].to_vec()
}

fn staircase_complex(torsion: &[u32], mirror: bool) -> Result<ModelComplex> {
    check_torsion(torsion)?;
    let m = torsion.len();
    let sign = if mirror { -1 } else { 1 };
    let arm = lspace_arm(torsion);

    let mut gens = vec![Generator::new("x0", 0, 0, 0)];
    let mut arms = Vec::with_capacity(m);
    for (s, &(i, j)) in arm.iter().enumerate() {
        let k = gens.len();
        gens.push(Generator::new(format!("x{}_1", s + 1), sign * i, sign * j, 0));
        gens.push(Generator::new(format!("x{}_2", s + 1), sign * j, sign * i, 0));
        arms.push([k, k + 1]);
    }
    let layout = StaircaseLayout { x0: 0, arms };

    // Index of x_s^t, with x_0 shared by both arms.
    let at = |s: usize, t: usize| if s == 0 { layout.x0 } else { layout.arms[s - 1][t] };
    // L-space staircases have outgoing arrows from x_s with m - s odd; the
    // mirror reverses every arrow, so its sources are those with m - s even.
    let is_source = |s: usize| ((m - s) % 2 == 1) != mirror;
    let mut diff = vec![Vec::new(); gens.len()];
    for s in 0..=m {
        if !is_source(s) {
            continue;
        }
        for t in 0..2 {
            if s == 0 && t == 1 {
                break;
            }
            let mut terms = Vec::new();
            if s == 0 {
                terms.push(DiffTerm::new(at(1, 0), 0));
                terms.push(DiffTerm::new(at(1, 1), 0));
            } else {
                terms.push(DiffTerm::new(at(s - 1, t), 0));
                if s < m {
                    terms.push(DiffTerm::new(at(s + 1, t), 0));
                }
            }
            diff[at(s, t)] = terms;
        }
    }

    let name = if mirror { "mirror staircase" } else { "staircase" };
    let c = ModelComplex::new(name, gens, diff, None)?;
    let relative = assign_relative_maslov(&c, std::iter::empty())?;
    let mut c = c;
    c.set_maslov(&relative);
    let mut c = normalize_maslov(&c)?;
    let g = i64::from(torsion[m - 1]);
    c.tau = Some(if mirror { -g } else { g });
    Ok(c.with_provenance(Provenance::Staircase { torsion: torsion.to_vec(), mirror, layout }))
}

/// Staircase model of the L-space knot with the given torsion sequence.
pub fn build_staircase(torsion: &[u32]) -> Result<ModelComplex> {
    staircase_complex(torsion, false)
}

/// Staircase model of the mirror of an L-space knot: gradings negated and
/// arrows reversed.
pub fn build_mirror_staircase(torsion: &[u32]) -> Result<ModelComplex> {
    staircase_complex(torsion, true)
}

/// One generator at `(0, 0)` in Maslov grading zero.
pub fn unknot() -> ModelComplex {
    let c = ModelComplex::new("unknot", vec![Generator::new("x0", 0, 0, 0)], vec![vec![]], Some(0))
        .expect("unknot is well formed");
    c.with_provenance(Provenance::Staircase {
        torsion: Vec::new(),
        mirror: false,
        layout: StaircaseLayout { x0: 0, arms: Vec::new() },
    })
}
