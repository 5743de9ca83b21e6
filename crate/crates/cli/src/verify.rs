//! Batch checks behind `hfi verify`.

use std::collections::BTreeMap;

use hfi_core::cone::{default_depth, involutive_cone};
use hfi_core::f2::F2Matrix;
use hfi_core::invariants::{
    analyze, cobordism_check, correction_terms, correction_terms_at, froyshov_bound, graded_homology, thin_triple,
    Analysis, KnotData, SurgeryReport, Triple,
};
use hfi_core::involution::{
    canonical_involution, canonical_sarkar_map, conjectural_sarkar_map, verify_involution, SquareCheck,
};
use hfi_core::knot::{build_thin_canonical, figure_eight, lspace_n, validate_complex, ModelComplex, Provenance};
use hfi_core::random;
use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::document::{parse_complex_file, ComplexDocument};
use crate::knotspec::KnotSpec;
use crate::report::{CheckLine, VerifyReport};
use crate::alternating_tables;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn line(name: &str, outcome: Outcome) -> CheckLine {
    match outcome {
        Ok(detail) => CheckLine { name: name.into(), passed: true, detail },
        Err(detail) => CheckLine { name: name.into(), passed: false, detail },
    }
}

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn s<E: ToString>(e: E) -> String {
    e.to_string()
}

fn analysis_of(c: &ModelComplex) -> Result<Analysis, String> {
    let iota = canonical_involution(c).map_err(s)?;
    analyze(c, &iota, default_depth(c)).map_err(s)
}

fn triple_of(spec: &KnotSpec) -> Result<(ModelComplex, hfi_core::invariants::CorrectionTerms), String> {
    let knot = spec.load().map_err(s)?;
    let terms = correction_terms(&knot.complex, &knot.involution).map_err(s)?;
    Ok((knot.complex, terms))
}

fn figure_eight_values() -> Outcome {
    let (c, t) = triple_of(&KnotSpec::FigureEight)?;
    ensure(t.triple == Triple::new(1, 0, 0), || format!("triple {}", t.triple))?;
    ensure(t.reduced_dims == BTreeMap::from([(0, 1)]), || format!("reduced part {:?}", t.reduced_dims))?;
    let p7 = SurgeryReport::from_triple(7, c.genus(), t.triple).map_err(s)?;
    ensure((p7.d_lower, p7.d, p7.d_upper) == (q(-1, 2), q(3, 2), q(3, 2)), || format!("p = 7 gives {p7:?}"))?;
    let p1 = SurgeryReport::from_triple(1, c.genus(), t.triple).map_err(s)?;
    ensure((p1.d_lower, p1.d, p1.d_upper) == (q(-2, 1), q(0, 1), q(0, 1)), || format!("p = 1 gives {p1:?}"))?;
    Ok("triple (1, 0, 0); +7 surgery (-1/2, 3/2, 3/2); +1 surgery (-2, 0, 0)".into())
}

fn figure_eight_document() -> Outcome {
    let c = figure_eight();
    let iota = canonical_involution(&c).map_err(s)?;
    let text = ComplexDocument::from_model(&c, Some(&iota)).emit();
    let loaded = parse_complex_file(&text).map_err(s)?;
    ensure(loaded.complex.generators() == c.generators(), || "generators differ after reparsing".into())?;
    ensure((0..c.len()).all(|k| loaded.complex.differential(k) == c.differential(k)), || "differential differs".into())?;
    ensure(loaded.involution.as_ref() == Some(&iota), || "involution differs".into())?;
    let report = loaded.involution_report.ok_or("involution was not verified")?;
    ensure(report.square == SquareCheck::Exact, || report.to_string())?;
    Ok("document round trip reproduces the built-in model; involution verified".into())
}

fn left_trefoil() -> Outcome {
    let c = KnotSpec::MirrorTorus { p: 2, q: 3 }.load().map_err(s)?.complex;
    let an = analysis_of(&c)?;
    let t = an.correction_terms().map_err(s)?;
    ensure((t.d_lower_a + 1, t.d_upper_a) == (1, 2), || format!("tower bottoms {} and {}", t.d_lower_a + 1, t.d_upper_a))?;
    ensure(t.reduced_dims == BTreeMap::from([(0, 1)]), || format!("reduced part {:?}", t.reduced_dims))?;
    let r = SurgeryReport::from_triple(1, c.genus(), t.triple).map_err(s)?;
    ensure((r.d_lower, r.d, r.d_upper) == (q(0, 1), q(0, 1), q(2, 1)), || format!("+1 surgery gives {r:?}"))?;
    ensure(r.reversed() == (q(-2, 1), q(0, 1), q(0, 1)), || format!("reversal gives {:?}", r.reversed()))?;
    Ok("towers from 1 and 2, one reduced class in grading 0; (0, 0, 2), reversed (-2, 0, 0)".into())
}

fn torus_family(mirror: bool) -> Outcome {
    let mut seen = Vec::new();
    for q in [3u32, 5, 7, 9] {
        let spec = if mirror { KnotSpec::MirrorTorus { p: 2, q } } else { KnotSpec::Torus { p: 2, q } };
        let (c, t) = triple_of(&spec)?;
        let Provenance::Staircase { torsion, .. } = c.provenance() else { return Err(format!("{spec} is not a staircase")) };
        let n = lspace_n(torsion);
        let want = if mirror { Triple::new(0, 0, -n) } else { Triple::new(n, n, n) };
        ensure(t.triple == want, || format!("{spec}: {} expected {want}", t.triple))?;
        ensure(mirror || t.reduced_dims.is_empty(), || format!("{spec}: reduced part {:?}", t.reduced_dims))?;
        seen.push(format!("q={q}: {}", t.triple));
    }
    Ok(seen.join(", "))
}

fn sarkar_formula() -> Outcome {
    let mut count = 0;
    for tau in -4..=4 {
        for squares in 0..=3 {
            let c = build_thin_canonical(tau, squares, None).map_err(s)?;
            let formula = conjectural_sarkar_map(&c).map_err(s)?;
            ensure(formula == canonical_sarkar_map(&c).map_err(s)?, || format!("tau {tau}, {squares} squares"))?;
            count += 1;
        }
    }
    Ok(format!("formula equals the canonical map on {count} thin models"))
}

fn obstructions() -> Outcome {
    ensure(froyshov_bound(q(-2, 1)).obstructed, || "d_lower = -2 should rule out negative-definite spin fillings".into())?;
    let fig8 = KnotData { triple: Triple::new(1, 0, 0), arf: 1 };
    let unknot = KnotData { triple: Triple::new(0, 0, 0), arf: 0 };
    let v = cobordism_check(&fig8, &unknot, 1).map_err(s)?;
    ensure(v.obstructed, || "figure-eight and unknot surgeries should be distinguished".into())?;
    Ok(format!("Sigma(2,3,7) has no negative-definite spin filling; figure-eight vs unknot: {}", v.reasons.join("; ")))
}

fn signature_rigidity() -> Outcome {
    let mut pairs = 0;
    for arf in 0..=1u8 {
        let special = (4 * i64::from(arf) + 4) % 8;
        for sigma in (-24..=24i64).step_by(2).filter(|s| s.rem_euclid(8) == special) {
            for other in (-24..=24i64).step_by(2).filter(|&o| o != sigma) {
                let k1 = KnotData::thin(sigma, arf).map_err(s)?;
                let k2 = KnotData::thin(other, arf).map_err(s)?;
                ensure(cobordism_check(&k1, &k2, 1).map_err(s)?.obstructed, || format!("sigma {sigma} vs {other}, Arf {arf}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs with sigma = 4 Arf + 4 mod 8 are told apart"))
}

pub fn examples() -> VerifyReport {
    let checks = vec![
        line("figure-eight values", figure_eight_values()),
        line("figure-eight document", figure_eight_document()),
        line("left-handed trefoil", left_trefoil()),
        line("mirrored T(2,q)", torus_family(true)),
        line("T(2,q)", torus_family(false)),
        line("Sarkar formula", sarkar_formula()),
        line("obstructions", obstructions()),
        line("signature rigidity", signature_rigidity()),
    ];
    VerifyReport { suite: "paper-examples".into(), seed: None, checks }
}

pub fn tables() -> VerifyReport {
    let checks = match alternating_tables(-16, 16) {
        Err(e) => vec![line("tables", Err(e.to_string()))],
        Ok(report) => report
            .rows
            .iter()
            .map(|row| {
                let detail = format!("Arf 0 {}, Arf 1 {}", row.arf0.computed, row.arf1.computed);
                let outcome = if row.arf0.matches() && row.arf1.matches() {
                    Ok(detail)
                } else {
                    Err(format!("{detail}; expected {} and {}", row.arf0.expected, row.arf1.expected))
                };
                line(&format!("sigma = {}", row.sigma), outcome)
            })
            .collect(),
    };
    VerifyReport { suite: "thm-1.7".into(), seed: None, checks }
}

fn euler_characteristic(reduced: &BTreeMap<i64, usize>) -> i64 {
    reduced.iter().map(|(&g, &d)| if g.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
}

/// Every property that applies to a built-in model, with `expected` as the
/// triple to compare against.
fn model_properties(c: &ModelComplex, expected: Triple, extra_depth: i64) -> Result<(), String> {
    let name = c.name().to_string();
    let validation = validate_complex(c);
    ensure(validation.is_ok(), || format!("{name}: {validation}"))?;
    let iota = canonical_involution(c).map_err(s)?;
    let report = verify_involution(c, &iota);
    ensure(report.is_valid() && report.square == SquareCheck::Exact, || format!("{name}: {report}"))?;
    let depth = default_depth(c);
    let an = analyze(c, &iota, depth).map_err(|e| format!("{name}: {e}"))?;
    for (label, t) in [("A0+", &an.a), ("B+", &an.b), ("cone", &an.cone)] {
        ensure(t.boundary().mul(t.boundary()).is_zero(), || format!("{name}: d^2 != 0 on {label}"))?;
    }
    let terms = an.correction_terms().map_err(|e| format!("{name}: {e}"))?;
    let v = terms.triple;
    ensure(v == expected, || format!("{name}: {v}, expected {expected}"))?;
    ensure(v.v_upper <= v.v0 && v.v0 <= v.v_lower && v.v0 >= 0, || format!("{name}: inequalities fail for {v}"))?;
    ensure(
        (terms.d_lower_a - terms.d_a).rem_euclid(2) == 0 && (terms.d_upper_a - terms.d_a).rem_euclid(2) == 0,
        || format!("{name}: tower bottoms differ from d_A by an odd amount"),
    )?;
    ensure(
        euler_characteristic(&terms.reduced_dims) == (terms.d_upper_a - terms.d_lower_a) / 2,
        || format!("{name}: Euler characteristic of the reduced part"),
    )?;
    let one_plus = an.iota.add(&F2Matrix::identity(an.a.len()));
    for g in an.h_cone.min_grading()..=an.h_cone.trust_max() - 2 {
        let ker = an.h_a.dim(g - 1) - an.h_a.induced_from(&an.h_a, &one_plus, g - 1, g - 1).rank();
        let coker = an.h_a.dim(g) - an.h_a.induced_from(&an.h_a, &one_plus, g, g).rank();
        ensure(an.h_cone.dim(g) == ker + coker, || format!("{name}: cone rank in grading {g}"))?;
    }
    let deeper = correction_terms_at(c, &iota, depth + 2 + extra_depth).map_err(|e| format!("{name}: {e}"))?;
    ensure(deeper.same_values(&terms), || format!("{name}: depth {depth} and {} disagree", depth + 2 + extra_depth))?;
    Ok(())
}

fn swap_cone(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let base = random::graded_complex(rng, 6);
    let (doubled, swap) = random::doubled_with_swap(&base);
    let cone = involutive_cone(&doubled, &swap).map_err(s)?;
    ensure(cone.boundary().mul(cone.boundary()).is_zero(), || "d^2 != 0 on the swap cone".into())?;
    let (h, hc) = (graded_homology(&base), graded_homology(&cone));
    for r in -1..=9 {
        ensure(hc.dim(r) == h.dim(r - 1) + h.dim(r), || format!("swap cone rank in grading {r}"))?;
        ensure(hc.q_matrix(r).is_none_or(F2Matrix::is_zero), || format!("Q acts nontrivially in grading {r}"))?;
    }
    Ok(())
}

fn batch(count: usize, mut case: impl FnMut() -> Result<(), String>) -> Outcome {
    for k in 0..count {
        case().map_err(|e| format!("case {k}: {e}"))?;
    }
    Ok(format!("{count} cases"))
}

pub fn properties(seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let thin = batch(120, || {
        let c = random::thin_model(&mut rng);
        let Provenance::Thin { tau, lone, .. } = c.provenance() else { return Err("not a thin model".into()) };
        let expected = thin_triple(*tau, lone.is_some());
        model_properties(&c, expected, 0)
    });
    let staircases = batch(50, || {
        let c = random::staircase_model(&mut rng);
        let Provenance::Staircase { torsion, mirror, .. } = c.provenance() else { return Err("not a staircase".into()) };
        let n = lspace_n(torsion);
        model_properties(&c, if *mirror { Triple::new(0, 0, -n) } else { Triple::new(n, n, n) }, 0)
    });
    let swaps = batch(60, || swap_cone(&mut rng));
    let checks = vec![
        line("thin models", thin),
        line("staircases", staircases),
        line("swap cones", swaps),
    ];
    VerifyReport { suite: "properties".into(), seed: Some(seed), checks }
}
