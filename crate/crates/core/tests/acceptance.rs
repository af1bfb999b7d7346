//! Acceptance run: one PASS/FAIL line per criterion, with pinned tolerances and time budgets.

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

use qonsager::coefficients::{
    closed_coeffs, coeffs_by_route, qbinomial_theorem_check, qbinomial_theorem_check_perturbed, recursion_coeffs,
    reduced_genfun_coeffs, CoeffTable, Route,
};
use qonsager::exactring::{rat, LaurentPoly, Rational, RingElement};
use qonsager::freealg::{dagger, Letter, NcPoly, Word};
use qonsager::matrixrep::{check_qdg, coideal_generators, CoidealParams};
use qonsager::qnumbers::{qint, qint_base};
use qonsager::rewrite::{normal_form, normal_form_traced};
use qonsager::verify::{build_relation_lhs, verify_relation, verify_table, Family};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lp(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

struct Criterion {
    id: u32,
    name: &'static str,
    tolerance: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn golden_tables() -> Check {
    let sq = |n| {
        let x = qint_base(n, 2).unwrap();
        &x * &x
    };
    let expected = [
        (2, 1, 0, lp("q^4+3+q^-4")),
        (2, 1, 1, &qint(5).unwrap() * &qint(3).unwrap()),
        (2, 2, 0, lp("q^2+q^-2").pow(2)),
        (3, 1, 0, lp("q^8+3*q^4+6+3*q^-4+q^-8")),
        (3, 1, 1, &qint(7).unwrap() * &lp("q^6+q^4+q^2+4+q^-2+q^-4+q^-6")),
        (3, 2, 0, &lp("q^6+2*q^2+3*q^-2+q^-6") * &lp("q^6+3*q^2+2*q^-2+q^-6")),
        (
            3,
            2,
            1,
            &qint(7).unwrap() * &lp("q^8+q^6+4*q^4+q^2+7+q^-2+4*q^-4+q^-6+q^-8"),
        ),
        (3, 3, 0, &sq(2) * &sq(3)),
    ];
    for route in [Route::Genfun, Route::Closed, Route::Recursion] {
        for r in 2..=3 {
            let t = coeffs_by_route(r, route).map_err(|e| e.to_string())?;
            for j in 0..2 * r + 2 {
                let b = qonsager::qnumbers::qbinomial(2 * r as i64 + 1, j as i64).unwrap();
                ensure(t.get(0, j) == Some(&b), || {
                    format!("{route} c^[{r},0]_{j} is not a q-binomial")
                })?;
            }
        }
        for (r, p, j, v) in &expected {
            let t = coeffs_by_route(*r, route).map_err(|e| e.to_string())?;
            let got = t.entry(*p, *j).map_err(|e| e.to_string())?;
            ensure(got == v, || format!("{route} c^[{r},{p}]_{j} = {got}, expected {v}"))?;
        }
    }
    Ok(())
}

fn relation_verification() -> Check {
    let start = Instant::now();
    for r in 1..=5 {
        let rep = verify_relation(r, Route::Genfun).map_err(|e| e.to_string())?;
        ensure(rep.is_zero(), || {
            format!("r={r} residual has {} terms", rep.residual_term_count)
        })?;
    }
    let small = start.elapsed();
    ensure(small < Duration::from_secs(10), || {
        format!("r<=5 took {small:?}, budget 10 s")
    })?;
    for r in 6..=7 {
        let rep = verify_relation(r, Route::Genfun).map_err(|e| e.to_string())?;
        ensure(rep.is_zero(), || {
            format!("r={r} residual has {} terms", rep.residual_term_count)
        })?;
    }
    Ok(())
}

fn route_agreement() -> Check {
    let rec = recursion_coeffs(8).map_err(|e| e.to_string())?;
    for r in 1..=8 {
        let g = reduced_genfun_coeffs(r).map_err(|e| e.to_string())?;
        let c = closed_coeffs(r, false).map_err(|e| e.to_string())?;
        for other in [&rec[r - 1], &c] {
            if let Some(m) = g.first_mismatch(other) {
                return Err(format!("genfun vs {}: {m}", other.route()));
            }
        }
    }
    Ok(())
}

fn literal_discrepancy() -> Check {
    let mut first = None;
    for r in 1..=8 {
        let g = reduced_genfun_coeffs(r).map_err(|e| e.to_string())?;
        let corrected = closed_coeffs(r, false).map_err(|e| e.to_string())?;
        ensure(g.first_mismatch(&corrected).is_none(), || {
            format!("corrected form differs at r={r}")
        })?;
        let literal = closed_coeffs(r, true).map_err(|e| e.to_string())?;
        if first.is_none() {
            first = g.first_mismatch(&literal).map(|m| (m.r, m.p, m.j));
        }
    }
    ensure(first == Some((3, 0, 3)), || {
        format!("literal form first diverges at {first:?}")
    })
}

fn lusztig_limit() -> Check {
    for r in 1..=10 {
        let t = reduced_genfun_coeffs(r).map_err(|e| e.to_string())?;
        let lim = build_relation_lhs(&t, Family::One)
            .map_err(|e| e.to_string())?
            .specialize_rho_zero();
        let serre = build_relation_lhs(&coeffs_by_route(r, Route::Lusztig).unwrap(), Family::One).unwrap();
        ensure(lim == serre, || format!("rho -> 0 limit differs from q-Serre at r={r}"))?;
        ensure(lim.len() == 2 * r + 2, || format!("r={r}: {} terms", lim.len()))?;
    }
    Ok(())
}

fn q_binomial_identity() -> Check {
    for r in 1..=10 {
        ensure(qbinomial_theorem_check(r) == Ok(true), || {
            format!("identity fails at r={r}")
        })?;
    }
    Ok(())
}

fn coideal(sites: &[Rational]) -> CoidealParams {
    CoidealParams {
        t: rat(3, 2),
        sites: sites.to_vec(),
        c0: rat(1, 1),
        c1: rat(2, 1),
        cbar0: rat(3, 5),
        cbar1: rat(-1, 4),
        eps0: rat(1, 2),
        eps1: rat(-2, 3),
    }
}

fn matrix_soundness() -> Check {
    let all_sites = [rat(1, 1), rat(2, 1), rat(-3, 4)];
    let tables: Vec<CoeffTable> = (1..=3).map(|r| reduced_genfun_coeffs(r).unwrap()).collect();
    for l in 1..=3 {
        let pair = coideal_generators(&coideal(&all_sites[..l])).map_err(|e| e.to_string())?;
        ensure(pair.gate() == Ok(true), || format!("qDG gate fails for L={l}"))?;
        for t in &tables {
            for fam in [Family::One, Family::Two] {
                let lhs = build_relation_lhs(t, fam).unwrap();
                let m = pair.eval(&lhs, &pair.q).map_err(|e| e.to_string())?;
                ensure(m.is_zero(), || format!("L={l} r={} family {fam:?} is nonzero", t.r()))?;
            }
        }
    }
    Ok(())
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, 0..=max_len).prop_map(|bits| {
        let letters: Vec<Letter> = bits
            .into_iter()
            .map(|b| if b { Letter::AStar } else { Letter::A })
            .collect();
        Word::from_letters(&letters).unwrap()
    })
}

fn poly_strategy() -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((word_strategy(8), -3i64..4, 0u32..2, 0u32..2), 1..4).prop_map(|terms| {
        let mut x = NcPoly::zero();
        for (w, c, i, j) in terms {
            x.add_term(
                w,
                &RingElement::monomial(i, j, LaurentPoly::monomial(c, (i as i32) - (j as i32))),
            );
        }
        x
    })
}

fn property_suites() -> Check {
    let mut runner = TestRunner::deterministic();
    let pair = coideal_generators(&coideal(&[rat(1, 1), rat(2, 1)])).unwrap();
    let words = word_strategy(10);
    for _ in 0..100 {
        let w = words.new_tree(&mut runner).unwrap().current();
        let x = NcPoly::from_word(w);
        // normal_form_traced asserts that every step lowers the termination measure
        let traced = std::panic::catch_unwind(|| normal_form_traced(&x)).map_err(|_| format!("measure rose on {w}"))?;
        let nf = normal_form(&x);
        ensure(traced.final_form == nf, || {
            format!("stepwise and fast forms differ on {w}")
        })?;
        ensure(normal_form(&nf) == nf, || format!("normal form not idempotent on {w}"))?;
        let (a, b) = (pair.eval(&x, &pair.q).unwrap(), pair.eval(&nf, &pair.q).unwrap());
        ensure(a == b, || format!("reduction unsound under evaluation on {w}"))?;
    }
    let polys = poly_strategy();
    for _ in 0..50 {
        let x = polys.new_tree(&mut runner).unwrap().current();
        let y = polys.new_tree(&mut runner).unwrap().current();
        ensure(dagger(&dagger(&x)) == x, || {
            format!("dagger is not an involution on {x}")
        })?;
        ensure(dagger(&(&x * &y)) == &dagger(&x) * &dagger(&y), || {
            "dagger is not multiplicative".into()
        })?;
        ensure(dagger(&(&x + &y)) == &dagger(&x) + &dagger(&y), || {
            "dagger is not additive".into()
        })?;
    }
    let bad = reduced_genfun_coeffs(2)
        .unwrap()
        .perturbed(0, 1, &LaurentPoly::one())
        .unwrap();
    ensure(!verify_table(&bad).unwrap().is_zero(), || {
        "perturbed coefficient still reduces to zero".into()
    })?;
    let mut a = pair.a.clone();
    let x = a.get(1, 0) + Rational::from_integer(1.into());
    a.set(1, 0, x);
    ensure(
        check_qdg(&a, &pair.astar, &pair.q, &pair.rho0, &pair.rho1) == Ok(false),
        || "perturbed matrix passes the gate".into(),
    )?;
    ensure(
        qbinomial_theorem_check_perturbed(4, Some((2, LaurentPoly::one()))) == Ok(false),
        || "perturbed q-binomial identity still holds".into(),
    )?;
    Ok(())
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "golden r=2,3 tables on every route",
            tolerance: "exact",
            budget: Duration::from_secs(1),
            run: golden_tables,
        },
        Criterion {
            id: 2,
            name: "relation reduces to zero for r=1..7",
            tolerance: "exact zero residual",
            budget: Duration::from_secs(310),
            run: relation_verification,
        },
        Criterion {
            id: 3,
            name: "genfun = recursion = corrected closed form, r<=8",
            tolerance: "exact",
            budget: Duration::from_secs(60),
            run: route_agreement,
        },
        Criterion {
            id: 4,
            name: "literal closed form first diverges at (3,0,3)",
            tolerance: "exact",
            budget: Duration::from_secs(10),
            run: literal_discrepancy,
        },
        Criterion {
            id: 5,
            name: "rho -> 0 limit is the q-Serre relation, r<=10",
            tolerance: "exact",
            budget: Duration::from_secs(10),
            run: lusztig_limit,
        },
        Criterion {
            id: 6,
            name: "q-binomial theorem identity, r<=10",
            tolerance: "exact",
            budget: Duration::from_secs(1),
            run: q_binomial_identity,
        },
        Criterion {
            id: 7,
            name: "coideal matrices: gate and relation LHS, L=1..3, r=1..3",
            tolerance: "exact zero matrix",
            budget: Duration::from_secs(30),
            run: matrix_soundness,
        },
        Criterion {
            id: 8,
            name: "property suites and negative controls",
            tolerance: "exact",
            budget: Duration::from_secs(60),
            run: property_suites,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= c.budget) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over budget {:?})", c.budget),
            (Err(msg), _) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!(
            "criterion {}: {} [tolerance: {}; budget: {:?}; elapsed: {:.3} s] {}",
            c.id,
            c.name,
            c.tolerance,
            c.budget,
            elapsed.as_secs_f64(),
            verdict
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
