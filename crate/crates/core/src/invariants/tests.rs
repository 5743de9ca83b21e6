use num_rational::Rational64;
use proptest::prelude::*;

use super::*;
use crate::cone::{default_depth, tower_margin};
use crate::involution::canonical_involution;
use crate::knot::{build_mirror_staircase, build_staircase, build_thin_canonical, figure_eight, unknot};

fn terms(c: &ModelComplex) -> CorrectionTerms {
    correction_terms(c, &canonical_involution(c).unwrap()).unwrap()
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// `dim ker((1+iota)_* on H_(r-1))` + `dim coker((1+iota)_* on H_r)` for
/// every trusted grading of the cone.
fn check_cone_ranks(an: &Analysis) {
    let one_plus = an.iota.add(&F2Matrix::identity(an.a.len()));
    let limit = an.h_cone.trust_max() - 2;
    for g in an.h_cone.min_grading()..=limit {
        let below = an.h_a.induced_from(&an.h_a, &one_plus, g - 1, g - 1);
        let here = an.h_a.induced_from(&an.h_a, &one_plus, g, g);
        let ker = an.h_a.dim(g - 1) - below.rank();
        let coker = an.h_a.dim(g) - here.rank();
        assert_eq!(an.h_cone.dim(g), ker + coker, "grading {g}");
    }
}

#[test]
fn unknot_values() {
    let t = terms(&unknot());
    assert_eq!(t.triple, Triple::new(0, 0, 0));
    assert_eq!((t.d_a, t.d_lower_a + 1, t.d_upper_a), (0, 1, 0));
    assert!(t.reduced_dims.is_empty());
}

#[test]
fn left_trefoil() {
    let c = build_mirror_staircase(&[1]).unwrap();
    let an = analyze(&c, &canonical_involution(&c).unwrap(), default_depth(&c)).unwrap();
    let t = an.correction_terms().unwrap();
    // Towers from gradings 1 and 2, one reduced class in grading 0.
    assert_eq!((t.d_lower_a + 1, t.d_upper_a), (1, 2));
    assert_eq!(t.reduced_dims, BTreeMap::from([(0, 1)]));
    assert_eq!(t.triple, Triple::new(0, 0, -1));
    let s = SurgeryReport::from_triple(1, 1, t.triple).unwrap();
    assert_eq!((s.d_lower, s.d, s.d_upper), (r(0, 1), r(0, 1), r(2, 1)));
    // Orientation reversal gives the values for Sigma(2,3,7).
    assert_eq!(s.reversed(), (r(-2, 1), r(0, 1), r(0, 1)));
    check_cone_ranks(&an);
}

#[test]
fn figure_eight_values() {
    let c = figure_eight();
    let an = analyze(&c, &canonical_involution(&c).unwrap(), default_depth(&c)).unwrap();
    let t = an.correction_terms().unwrap();
    assert_eq!((t.d_lower_a + 1, t.d_upper_a), (-1, 0));
    assert_eq!(t.reduced_dims, BTreeMap::from([(0, 1)]));
    assert_eq!(t.triple, Triple::new(1, 0, 0));
    let s = SurgeryReport::from_triple(7, c.genus(), t.triple).unwrap();
    assert_eq!((s.d_lower, s.d, s.d_upper), (r(-1, 2), r(3, 2), r(3, 2)));
    check_cone_ranks(&an);
}

#[test]
fn right_trefoil() {
    let t = terms(&build_staircase(&[1]).unwrap());
    assert_eq!(t.triple, Triple::new(1, 1, 1));
    assert!(t.reduced_dims.is_empty());
}

#[test]
fn surgery_too_small() {
    let c = build_staircase(&[1]).unwrap();
    let iota = canonical_involution(&c).unwrap();
    assert!(matches!(surgery_report(&c, &iota, 0), Err(Error::SurgeryTooSmall { p: 0, genus: 1 })));
    assert!(surgery_report(&c, &iota, 1).is_ok());
}

#[test]
fn unstable_depth_reported_as_no_tower() {
    let c = build_thin_canonical(-4, 1, None).unwrap();
    let iota = canonical_involution(&c).unwrap();
    let err = correction_terms_at(&c, &iota, c.diameter() + 2).unwrap_err();
    assert!(matches!(err, Error::NoTower { .. }), "{err}");
}

#[test]
fn tables_agree_with_case_formula() {
    for sigma in (-40..=40).step_by(2) {
        for arf in 0..=1 {
            let odd = squares_parity(sigma, arf).unwrap();
            assert_eq!(alternating_triple(sigma, arf).unwrap(), thin_triple(-sigma / 2, odd), "sigma {sigma} arf {arf}");
        }
    }
    assert!(alternating_triple(3, 0).is_err());
    assert!(alternating_triple(2, 2).is_err());
}

#[test]
fn froyshov() {
    let b = froyshov_bound(r(-2, 1));
    assert!(b.obstructed);
    assert_eq!(b.max_rank, None);
    let b = froyshov_bound(r(3, 2));
    assert_eq!((b.obstructed, b.max_rank), (false, Some(6)));
}

#[test]
fn cobordism() {
    let fig8 = KnotData { triple: Triple::new(1, 0, 0), arf: 1 };
    let unknot = KnotData { triple: Triple::new(0, 0, 0), arf: 0 };
    let v = cobordism_check(&fig8, &unknot, 1).unwrap();
    assert!(v.obstructed);
    assert_eq!(v.reasons.len(), 2);
    assert!(!cobordism_check(&fig8, &fig8, 3).unwrap().obstructed);
    assert!(cobordism_check(&fig8, &fig8, 2).is_err());
    // Signature 4 Arf 0 against every other signature with the same Arf.
    for (s, arf) in [(4i64, 0u8), (-4, 0), (0, 1), (-8, 1), (8, 1), (12, 0)] {
        for s2 in (-24..=24).step_by(2).filter(|&s2| s2 != s) {
            let v = cobordism_check(&KnotData::thin(s, arf).unwrap(), &KnotData::thin(s2, arf).unwrap(), 1).unwrap();
            assert!(v.obstructed, "{s} vs {s2}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn thin_models_match_case_formula(tau in -5i64..=5, squares in 0usize..=3, shift in -1i64..=1) {
        let units = squares / 2 + squares % 2;
        let c = build_thin_canonical(tau, squares, Some(&vec![shift; units])).unwrap();
        let an = analyze(&c, &canonical_involution(&c).unwrap(), default_depth(&c)).unwrap();
        let t = an.correction_terms().unwrap();
        prop_assert_eq!(t.triple, thin_triple(tau, squares % 2 == 1));
        // Chain V_upper <= V0 <= V_lower with V0 >= 0.
        prop_assert!(t.triple.v_upper <= t.triple.v0 && t.triple.v0 <= t.triple.v_lower && t.triple.v0 >= 0);
        // Euler characteristic of the reduced part.
        let chi: i64 = t.reduced_dims.iter().map(|(&g, &d)| if g % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        prop_assert_eq!(chi, (t.d_upper_a - t.d_lower_a) / 2);
        check_cone_ranks(&an);
    }

    #[test]
    fn staircases_have_no_reduced_cone_part_or_full_one(steps in prop::collection::vec(1u32..4, 1..4), mirror in any::<bool>()) {
        let torsion: Vec<u32> = steps.iter().scan(0, |acc, s| { *acc += s; Some(*acc) }).collect();
        let c = if mirror { build_mirror_staircase(&torsion) } else { build_staircase(&torsion) }.unwrap();
        let t = terms(&c);
        let n = crate::knot::lspace_n(&torsion);
        if mirror {
            prop_assert_eq!(t.triple, Triple::new(0, 0, -n));
        } else {
            prop_assert_eq!(t.triple, Triple::new(n, n, n));
            prop_assert!(t.reduced_dims.is_empty());
        }
    }

    #[test]
    fn deeper_truncations_agree(tau in -3i64..=3, squares in 0usize..=3, extra in 0i64..4) {
        let c = build_thin_canonical(tau, squares, None).unwrap();
        let iota = canonical_involution(&c).unwrap();
        let base = correction_terms_at(&c, &iota, default_depth(&c)).unwrap();
        let deeper = correction_terms_at(&c, &iota, default_depth(&c) + extra).unwrap();
        prop_assert!(base.same_values(&deeper));
        prop_assert!(tower_margin(&c) >= 3);
    }
}
