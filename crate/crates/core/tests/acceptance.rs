//! Acceptance criteria, one line per criterion. Run with `cargo test --test acceptance`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use hfi_core::cone::default_depth;
use hfi_core::f2::F2Matrix;
use hfi_core::invariants::{
    alternating_triple, analyze, cobordism_check, correction_terms, correction_terms_at, froyshov_bound,
    graded_homology, Analysis, KnotData, SurgeryReport, Triple,
};
use hfi_core::involution::{
    canonical_involution, canonical_sarkar_map, conjectural_sarkar_map, verify_involution, SquareCheck,
};
use hfi_core::knot::{
    build_mirror_staircase, build_staircase, build_thin_canonical, figure_eight, from_alexander_lspace,
    torus_knot_alexander, ModelComplex,
};
use hfi_core::random;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn terms_of(c: &ModelComplex) -> Result<hfi_core::invariants::CorrectionTerms, String> {
    let iota = canonical_involution(c).map_err(|e| e.to_string())?;
    correction_terms(c, &iota).map_err(|e| e.to_string())
}

/// Table of (V_lower, V0, V_upper) transcribed row by row.
fn table_entry(sigma: i64, arf: u8) -> Triple {
    let t = Triple::new;
    if sigma <= 0 {
        let k = -sigma / 8;
        let rows = [
            [t(2 * k, 2 * k, 2 * k), t(2 * k + 1, 2 * k, 2 * k)],
            [t(2 * k + 1, 2 * k + 1, 2 * k), t(2 * k + 1, 2 * k + 1, 2 * k + 1)],
            [t(2 * k + 2, 2 * k + 1, 2 * k + 1), t(2 * k + 1, 2 * k + 1, 2 * k + 1)],
            [t(2 * k + 2, 2 * k + 2, 2 * k + 2), t(2 * k + 2, 2 * k + 2, 2 * k + 1)],
        ];
        rows[((-sigma % 8) / 2) as usize][arf as usize]
    } else {
        let k = sigma / 8;
        let rows = [
            [t(0, 0, -2 * k), t(0, 0, -2 * k)],
            [t(0, 0, -2 * k), t(0, 0, -2 * k - 1)],
            [t(0, 0, -2 * k - 1), t(0, 0, -2 * k - 1)],
            [t(0, 0, -2 * k - 2), t(0, 0, -2 * k - 1)],
        ];
        rows[((sigma % 8) / 2) as usize][arf as usize]
    }
}

/// Parity of the square count from determinant `2|tau| + 1 + 4r` and the
/// rule Arf = 0 iff the determinant is `±1 mod 8`.
fn odd_square_count(sigma: i64, arf: u8) -> bool {
    let m = (sigma / 2).abs();
    (0..2).find(|r| matches!((2 * m + 1 + 4 * r) % 8, 1 | 7) == (arf == 0)).unwrap() == 1
}

fn criterion_tables() -> Check {
    let mut rows = 0;
    for sigma in (-16..=16).step_by(2) {
        for arf in 0..=1u8 {
            let squares = usize::from(odd_square_count(sigma, arf));
            let c = build_thin_canonical(-sigma / 2, squares, None).map_err(|e| e.to_string())?;
            let got = terms_of(&c)?.triple;
            let want = table_entry(sigma, arf);
            ensure(got == want, || format!("sigma {sigma} arf {arf}: computed {got}, table {want}"))?;
            let closed = alternating_triple(sigma, arf).map_err(|e| e.to_string())?;
            ensure(closed == want, || format!("sigma {sigma} arf {arf}: closed form {closed}, table {want}"))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} (sigma, Arf) cells match"))
}

fn criterion_figure_eight() -> Check {
    let c = figure_eight();
    let t = terms_of(&c)?;
    ensure(t.triple == Triple::new(1, 0, 0), || format!("triple {}", t.triple))?;
    let s = SurgeryReport::from_triple(7, c.genus(), t.triple).map_err(|e| e.to_string())?;
    ensure((s.d_lower, s.d, s.d_upper) == (q(-1, 2), q(3, 2), q(3, 2)), || format!("p=7 gives {s:?}"))?;
    let s1 = SurgeryReport::from_triple(1, c.genus(), t.triple).map_err(|e| e.to_string())?;
    ensure((s1.d_lower, s1.d, s1.d_upper) == (q(-2, 1), q(0, 1), q(0, 1)), || format!("p=1 gives {s1:?}"))?;
    Ok("triple (1,0,0); p=7 gives (-1/2, 3/2, 3/2); p=1 gives (-2, 0, 0)".into())
}

fn cone_dims(an: &Analysis, upto: i64) -> Vec<(i64, usize)> {
    (an.h_cone.min_grading()..=upto).map(|r| (r, an.h_cone.dim(r))).filter(|&(_, d)| d > 0).collect()
}

fn criterion_left_trefoil() -> Check {
    let c = build_mirror_staircase(&[1]).map_err(|e| e.to_string())?;
    let iota = canonical_involution(&c).map_err(|e| e.to_string())?;
    let an = analyze(&c, &iota, default_depth(&c)).map_err(|e| e.to_string())?;
    let t = an.correction_terms().map_err(|e| e.to_string())?;
    // T_1 + T_2 + F_(0): ranks 1 in every grading from 0 upward.
    let dims = cone_dims(&an, 8);
    let want: Vec<(i64, usize)> = (0..=8).map(|r| (r, 1)).collect();
    ensure(dims == want, || format!("cone ranks {dims:?}"))?;
    ensure(t.reduced_dims == BTreeMap::from([(0, 1)]), || format!("reduced {:?}", t.reduced_dims))?;
    ensure((t.d_lower_a + 1, t.d_upper_a) == (1, 2), || format!("tower bottoms {} {}", t.d_lower_a + 1, t.d_upper_a))?;
    ensure(t.triple == Triple::new(0, 0, -1), || format!("triple {}", t.triple))?;
    let s = SurgeryReport::from_triple(1, 1, t.triple).map_err(|e| e.to_string())?;
    ensure((s.d_lower, s.d, s.d_upper) == (q(0, 1), q(0, 1), q(2, 1)), || format!("p=1 gives {s:?}"))?;
    ensure(s.reversed() == (q(-2, 1), q(0, 1), q(0, 1)), || format!("reversal {:?}", s.reversed()))?;
    Ok("HFI = T_1 + T_2 + F_(0); d_lower=0, d=0, d_upper=2; reversal (-2, 0, 0)".into())
}

fn torus_model(q: u32, mirror: bool) -> Result<ModelComplex, String> {
    let delta = torus_knot_alexander(2, q).map_err(|e| e.to_string())?;
    let torsion = from_alexander_lspace(&delta).map_err(|e| e.to_string())?.torsion;
    let c = if mirror { build_mirror_staircase(&torsion) } else { build_staircase(&torsion) };
    c.map_err(|e| e.to_string())
}

fn criterion_mirror_torus() -> Check {
    for q in [3u32, 5, 7, 9] {
        let t = terms_of(&torus_model(q, true)?)?.triple;
        let n = i64::from(q - 1).div_euclid(4) + i64::from((q - 1) % 4 != 0);
        ensure(t == Triple::new(0, 0, -n), || format!("mirror T(2,{q}): {t}"))?;
    }
    Ok("mirror T(2,q), q = 3,5,7,9: (0, 0, -ceil((q-1)/4))".into())
}

fn criterion_torus() -> Check {
    for q in [3u32, 5, 7, 9] {
        let t = terms_of(&torus_model(q, false)?)?;
        let n = i64::from(q - 1).div_euclid(4) + i64::from((q - 1) % 4 != 0);
        ensure(t.triple == Triple::new(n, n, n), || format!("T(2,{q}): {}", t.triple))?;
        ensure(t.reduced_dims.is_empty(), || format!("T(2,{q}) reduced part {:?}", t.reduced_dims))?;
    }
    Ok("T(2,q), q = 3,5,7,9: (n, n, n), towers at d+1 and d only".into())
}

fn criterion_sarkar_formula() -> Check {
    let mut count = 0;
    for tau in -4..=4 {
        for squares in 0..=3usize {
            let c = build_thin_canonical(tau, squares, None).map_err(|e| e.to_string())?;
            let formula = conjectural_sarkar_map(&c).map_err(|e| e.to_string())?;
            let canonical = canonical_sarkar_map(&c).map_err(|e| e.to_string())?;
            ensure(formula == canonical, || format!("tau {tau}, {squares} squares"))?;
            count += 1;
        }
    }
    Ok(format!("formula equals canonical map on {count} thin models"))
}

fn euler_of(reduced: &BTreeMap<i64, usize>) -> i64 {
    reduced.iter().map(|(&g, &d)| if g.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
}

/// Independent parity/sign-based case split used as the oracle for thin
/// models with a given tau and square parity.
fn thin_oracle(tau: i64, odd: bool) -> Triple {
    let n = (tau.abs() + 1) / 2;
    let t = Triple::new;
    if !odd {
        return if tau >= 0 { t(n, n, n) } else { t(0, 0, -n) };
    }
    if tau == 0 {
        t(1, 0, 0)
    } else if tau > 0 {
        if tau % 2 == 1 { t(n, n, n - 1) } else { t(n + 1, n, n) }
    } else if tau % 2 != 0 {
        t(0, 0, -n + 1)
    } else {
        t(0, 0, -n)
    }
}

fn check_model(c: &ModelComplex, expected: Option<Triple>, depth_extra: i64) -> Result<(), String> {
    let name = c.name().to_string();
    let iota = canonical_involution(c).map_err(|e| e.to_string())?;
    let report = verify_involution(c, &iota);
    ensure(report.is_valid() && report.square == SquareCheck::Exact, || format!("{name}: {report}"))?;
    let depth = default_depth(c);
    let an = analyze(c, &iota, depth).map_err(|e| format!("{name}: {e}"))?;
    let t = an.correction_terms().map_err(|e| format!("{name}: {e}"))?;
    let v = t.triple;
    if let Some(want) = expected {
        ensure(v == want, || format!("{name}: {v} expected {want}"))?;
    }
    ensure(v.v_upper <= v.v0 && v.v0 <= v.v_lower && v.v0 >= 0, || format!("{name}: chain fails for {v}"))?;
    ensure(
        (t.d_lower_a - t.d_a).rem_euclid(2) == 0 && (t.d_upper_a - t.d_a).rem_euclid(2) == 0,
        || format!("{name}: parity"),
    )?;
    ensure(euler_of(&t.reduced_dims) == (t.d_upper_a - t.d_lower_a) / 2, || format!("{name}: Euler characteristic"))?;
    let one_plus = an.iota.add(&F2Matrix::identity(an.a.len()));
    for g in an.h_cone.min_grading()..=an.h_cone.trust_max() - 2 {
        let ker = an.h_a.dim(g - 1) - an.h_a.induced_from(&an.h_a, &one_plus, g - 1, g - 1).rank();
        let coker = an.h_a.dim(g) - an.h_a.induced_from(&an.h_a, &one_plus, g, g).rank();
        ensure(an.h_cone.dim(g) == ker + coker, || format!("{name}: cone rank identity fails in grading {g}"))?;
    }
    if depth_extra > 0 {
        let deeper = correction_terms_at(c, &iota, depth + depth_extra).map_err(|e| format!("{name}: {e}"))?;
        ensure(deeper.same_values(&t), || format!("{name}: unstable at depth {}", depth + depth_extra))?;
    }
    Ok(())
}

fn criterion_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cases = 0;
    for _ in 0..120 {
        let c = random::thin_model(&mut rng);
        let hfi_core::knot::Provenance::Thin { tau, lone, .. } = c.provenance().clone() else { unreachable!() };
        let extra = rng.gen_range(0..4);
        check_model(&c, Some(thin_oracle(tau, lone.is_some())), extra)?;
        cases += 1;
    }
    for _ in 0..50 {
        let c = random::staircase_model(&mut rng);
        let hfi_core::knot::Provenance::Staircase { torsion, mirror, .. } = c.provenance().clone() else { unreachable!() };
        let n = hfi_core::knot::lspace_n(&torsion);
        let want = if mirror { Triple::new(0, 0, -n) } else { Triple::new(n, n, n) };
        check_model(&c, Some(want), 0)?;
        cases += 1;
    }
    for _ in 0..60 {
        let s = random::graded_complex(&mut rng, 6);
        let (t, swap) = random::doubled_with_swap(&s);
        let cone = hfi_core::cone::involutive_cone(&t, &swap).map_err(|e| e.to_string())?;
        let (hs, hc) = (graded_homology(&s), graded_homology(&cone));
        for r in -1..=9 {
            ensure(hc.dim(r) == hs.dim(r - 1) + hs.dim(r), || format!("swap cone rank in grading {r}"))?;
            ensure(hc.q_matrix(r).is_none_or(F2Matrix::is_zero), || format!("Q nonzero on homology in grading {r}"))?;
        }
        cases += 1;
    }
    Ok(format!("{cases} seeded cases"))
}

fn criterion_obstructions() -> Check {
    let b = froyshov_bound(q(-2, 1));
    ensure(b.obstructed && b.max_rank.is_none(), || "d_lower = -2 should obstruct".into())?;
    let b = froyshov_bound(q(0, 1));
    ensure(!b.obstructed && b.max_rank == Some(0), || "d_lower = 0 allows rank 0".into())?;
    let b = froyshov_bound(q(3, 2));
    ensure(b.max_rank == Some(6), || "d_lower = 3/2 allows rank 6".into())?;

    let fig8 = KnotData { triple: Triple::new(1, 0, 0), arf: 1 };
    let unknot = KnotData { triple: Triple::new(0, 0, 0), arf: 0 };
    let v = cobordism_check(&fig8, &unknot, 1).map_err(|e| e.to_string())?;
    ensure(v.obstructed, || "figure-eight vs unknot".into())?;
    ensure(!cobordism_check(&unknot, &unknot, 5).map_err(|e| e.to_string())?.obstructed, || "unknot vs itself".into())?;

    // sigma ≡ 4 Arf + 4 (mod 8) against any other sigma with the same Arf.
    let mut pairs = 0;
    for arf in 0..=1u8 {
        for sigma in (-24..=24i64).step_by(2).filter(|s| s.rem_euclid(8) == (4 * i64::from(arf) + 4) % 8) {
            for other in (-24..=24i64).step_by(2).filter(|&o| o != sigma) {
                let k1 = KnotData::thin(sigma, arf).map_err(|e| e.to_string())?;
                let k2 = KnotData::thin(other, arf).map_err(|e| e.to_string())?;
                let v = cobordism_check(&k1, &k2, 1).map_err(|e| e.to_string())?;
                ensure(v.obstructed, || format!("sigma {sigma} vs {other}, Arf {arf}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("Froyshov bounds and {pairs} obstructed cobordism pairs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 alternating-knot tables", criterion_tables),
        ("2 figure-eight", criterion_figure_eight),
        ("3 left-handed trefoil", criterion_left_trefoil),
        ("4 mirrored T(2,q)", criterion_mirror_torus),
        ("5 T(2,q)", criterion_torus),
        ("6 Sarkar formula", criterion_sarkar_formula),
        ("7 seeded properties", criterion_properties),
        ("8 obstructions", criterion_obstructions),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{:.2}s]", t.elapsed().as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{:.2}s]", t.elapsed().as_secs_f64());
            }
        }
    }
    println!("{} of 8 criteria passed in {:.2}s", 8 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
