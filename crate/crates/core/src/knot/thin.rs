use super::{DiffTerm, Generator, ModelComplex, Provenance, SquareLayout, StaircaseLayout};
use crate::error::{Error, Result};

/// Canonical model of a thin knot: a step-one staircase with `|tau|` steps
/// plus `squares` square summands.
///
/// Square pairs sit with initial corners at `(s, -s)` and `(-s, s)` for
/// `s = 1, 2, ...`; an odd leftover square sits at `(0, 0)`.
/// `diagonal_shift`, if given, has one entry per pair followed by one for the
/// leftover square, and translates that unit by `(d, d)`. Over the Laurent
/// ring this only changes the chosen basis. Every generator gets Maslov
/// grading `i + j - tau`.
pub fn build_thin_canonical(tau: i64, squares: usize, diagonal_shift: Option<&[i64]>) -> Result<ModelComplex> {
    let m = usize::try_from(tau.unsigned_abs()).map_err(|_| Error::InvalidArgument("tau too large".into()))?;
    let pairs = squares / 2;
    let lone = squares % 2 == 1;
    let units = pairs + usize::from(lone);
    let shifts: Vec<i64> = match diagonal_shift {
        None => vec![0; units],
        Some(s) if s.len() == units => s.to_vec(),
        Some(s) => {
            return Err(Error::InvalidArgument(format!(
                "diagonal_shift has {} entries, expected {units}",
                s.len()
            )))
        }
    };

    let mut gens: Vec<Generator> = Vec::new();
    let mut diff: Vec<Vec<DiffTerm>> = Vec::new();
    let layout = if m == 0 {
        gens.push(Generator::new("x", 0, 0, 0));
        diff.push(Vec::new());
        StaircaseLayout { x0: 0, arms: Vec::new() }
    } else {
        let torsion: Vec<u32> = (1..=m as u32).collect();
        let stair = if tau > 0 { super::build_staircase(&torsion)? } else { super::build_mirror_staircase(&torsion)? };
        gens.extend(stair.generators().iter().cloned());
        diff.extend((0..stair.len()).map(|k| stair.differential(k).to_vec()));
        match stair.provenance() {
            Provenance::Staircase { layout, .. } => layout.clone(),
            _ => unreachable!("staircase builder sets staircase provenance"),
        }
    };

    let mut square_layouts = Vec::with_capacity(squares);
    let mut push_square = |suffix: String, i: i64, j: i64, gens: &mut Vec<Generator>, diff: &mut Vec<Vec<DiffTerm>>| {
        let a = gens.len();
        let (b, c, e) = (a + 1, a + 2, a + 3);
        gens.push(Generator::new(format!("a{suffix}"), i, j, 0));
        gens.push(Generator::new(format!("b{suffix}"), i - 1, j, 0));
        gens.push(Generator::new(format!("c{suffix}"), i, j - 1, 0));
        gens.push(Generator::new(format!("e{suffix}"), i, j, 0));
        diff.push(vec![DiffTerm::new(b, 0), DiffTerm::new(c, 0)]);
        diff.push(vec![DiffTerm::new(e, 1)]);
        diff.push(vec![DiffTerm::new(e, 1)]);
        diff.push(Vec::new());
        square_layouts.push(SquareLayout { a, b, c, e });
        square_layouts.len() - 1
    };
    let mut pair_indices = Vec::with_capacity(pairs);
    for s in 1..=pairs {
        let d = shifts[s - 1];
        let si = s as i64;
        let low = push_square(s.to_string(), si + d, -si + d, &mut gens, &mut diff);
        let high = push_square(format!("{s}'"), -si + d, si + d, &mut gens, &mut diff);
        pair_indices.push([low, high]);
    }
    let lone_index = lone.then(|| {
        let d = shifts[units - 1];
        push_square(String::new(), d, d, &mut gens, &mut diff)
    });

    for g in &mut gens {
        g.maslov = g.i + g.j - tau;
    }
    let name = format!("thin(tau={tau}, squares={squares})");
    let c = ModelComplex::new(name, gens, diff, Some(tau))?;
    Ok(c.with_provenance(Provenance::Thin {
        tau,
        layout,
        squares: square_layouts,
        pairs: pair_indices,
        lone: lone_index,
    }))
}

/// The figure-eight knot: `x` plus one square at the origin.
pub fn figure_eight() -> ModelComplex {
    build_thin_canonical(0, 1, None).expect("figure-eight model is well formed").with_name("figure8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{normalize_maslov, validate_complex, LaurentPoly};
    use proptest::prelude::*;

    #[test]
    fn figure_eight_shape() {
        let c = figure_eight();
        let names: Vec<&str> = c.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["x", "a", "b", "c", "e"]);
        assert!(validate_complex(&c).is_ok());
        assert_eq!(c.alexander_polynomial(), LaurentPoly::from_pairs(&[(-1, -1), (0, 3), (1, -1)]));
        assert_eq!(c.determinant(), 5);
    }

    #[test]
    fn bad_shift_length() {
        assert!(build_thin_canonical(1, 3, Some(&[0])).is_err());
    }

    proptest! {
        #[test]
        fn thin_models(tau in -5i64..6, squares in 0usize..5, shift in -2i64..3) {
            let units = squares / 2 + squares % 2;
            let shifts = vec![shift; units];
            let c = build_thin_canonical(tau, squares, Some(&shifts)).unwrap();
            prop_assert!(validate_complex(&c).is_ok());
            // Determinant of a thin knot: 2|tau| + 1 + 4 * squares.
            prop_assert_eq!(c.determinant(), 2 * tau.abs() + 1 + 4 * squares as i64);
            // Gradings i + j - tau agree with the tower normalization.
            prop_assert_eq!(&normalize_maslov(&c).unwrap(), &c);
        }
    }
}
