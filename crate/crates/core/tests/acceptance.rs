use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use iorealize::diff::{
    check_order_obstruction, corresponding_parametrization, implicitize_curve, realization_from_parametrization,
    reparametrize_realization, verify_realization, OrderVerdict,
};
use iorealize::observable::{
    degree_condition_check, find_common_reparametrization, gp_pair, mobius_equivalent, observable_realize_detailed,
    proper_reparametrize, reciprocal_form, tracing_index,
};
use iorealize::real::{common_v, detect_real_curve_factors, real_realize, split_component, CurveKind, IsReal, RealVerdict};
use iorealize::{
    gcd, parse_expr, parse_poly, resultant, solve_linear, Error, IOEquation, Parametrization, Poly, RFMatrix, RatFunc,
    Realization, Var, VarSet, QI,
};

const CASES: u32 = 200;
const SEED: [u8; 32] = *b"iorealize acceptance fixed seed!";

const F_CUBIC: &str = "27*u^6*y^3 - 27*u^5*y^2*y' + 27*u^4*u'*y^3 + 9*u^4*y*y'^2 \
    - 18*u^3*u'*y^2*y' + 9*u^2*u'^2*y^3 - 4*u^4*y^2 - u^3*y'^3 + 3*u^2*u'*y*y'^2 \
    - 3*u*u'^2*y^2*y' + u'^3*y^3 + 4*u^3*y*y' - 4*u^2*u'*y^2 - u^2*y'^2 + 4*u*u'*y*y' - u'*y'^2";

const F_NO_REAL: &str = "9*(u-1)^2*y^4 + (-12*u^2-24*u+36)*y^3 + (22*u^2+128*y'^2-12*u+54)*y^2 \
    + (-12*u^2-24*u+36)*y + 9*u^2 + 128*y'^2 - 18*u + 9";

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: &str) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn rf(s: &str) -> RatFunc {
    parse_expr(s).unwrap()
}

fn poly(s: &str) -> Poly {
    parse_poly(s).unwrap()
}

fn sys(p: &[&str], q: &str) -> Realization {
    Realization::new(p.iter().map(|s| rf(s)).collect(), rf(q)).unwrap()
}

fn implicit(sigma: &Realization) -> IOEquation {
    implicitize_curve(&corresponding_parametrization(sigma, 1)).unwrap()
}

fn criterion_1() -> Outcome {
    let p = Parametrization::new(vec![rf("u/(u-x)^3"), rf("u*x/(u-x)^3")]).unwrap();
    let z = rf("(u*x*(u-x) + (2*u+x)*u')/(3*u)");
    match realization_from_parametrization(&p) {
        Err(Error::NotRealizableFromP { z: got }) => ensure(got == vec![z], "z differs from the expected value")?,
        other => return Err(format!("expected NotRealizableFromP, got {other:?}")),
    }
    let f = implicitize_curve(&p).unwrap();
    ensure(f.same_up_to_unit(&poly("(y' - u*y)^3 + u*y^2")), "implicit equation")?;
    ensure(check_order_obstruction(&f) == OrderVerdict::Inconclusive, "order obstruction")
}

fn criterion_2() -> Outcome {
    let f = IOEquation::new(poly(F_CUBIC)).unwrap();
    let sigma = sys(&["u*x"], "u*x^3 + x^2");
    ensure(verify_realization(&sigma, &f), "substitution does not vanish")?;
    ensure(degree_condition_check(&sigma, &f).unwrap().passed(), "degree conditions")?;
    ensure(tracing_index(&corresponding_parametrization(&sigma, 1)).unwrap() == 1, "tracing index")
}

fn criterion_3() -> Outcome {
    let sigma = sys(&["(1-x)/(2*u)"], "(1-x)^4/(u^2+(1-x)^6)");
    let f = implicit(&sigma);
    let p = corresponding_parametrization(&sigma, 1);
    ensure(gp_pair(&p).unwrap().g.is_associate(&poly("(w - 2 + x)*(w - x)")), "G^P")?;
    let cand = find_common_reparametrization(&p).unwrap();
    ensure(mobius_equivalent(&cand.r, &rf("-x^2 + 2*x")), "reparametrization r")?;
    let q = proper_reparametrize(&p, &cand.r).unwrap().q;
    let g1 = poly("z^3 - u^2 - 3*z^2 + 3*z - 1 - (-z^2 + 2*z - 1)*t");
    ensure(reciprocal_form(q.component(0)).is_associate(&g1), "implicit equation of Q1")?;
    let out = observable_realize_detailed(&sigma, &f).unwrap().realization;
    let expected = sys(&["(1-x)/u"], "(1-x)^2/(u^2+(1-x)^3)");
    ensure(implicit(&out).same_up_to_unit(implicit(&expected).poly()), "cross-implicitization")?;
    ensure(implicit(&out).same_up_to_unit(f.poly()), "equation of the output")?;
    ensure(tracing_index(&corresponding_parametrization(&out, 1)).unwrap() == 1, "output tracing index")?;
    ensure(out == expected, "output realization")
}

fn criterion_4() -> Outcome {
    let sigma = sys(
        &["I*(x^2-2*x-1)*(u*x^4-6*x^2+u)/(8*(x^2+1)^2)"],
        "(-x^2-2*x+1)/(x^2-2*x-1)",
    );
    let f = IOEquation::new(poly(F_NO_REAL)).unwrap();
    ensure(verify_realization(&sigma, &f), "complex realization verifies")?;
    let v = common_v(&corresponding_parametrization(&sigma, 1)).unwrap();
    ensure(v.is_associate(&poly("x^2 + z^2 + 1")), "V")?;
    let factors = detect_real_curve_factors(&v, 50, 0);
    ensure(factors.iter().all(|c| c.kind == CurveKind::NonReal), "factor classification")?;
    ensure(real_realize(&sigma, &f).unwrap().verdict == RealVerdict::NoRealRealization, "verdict")?;
    let at_one = f.poly().eval(Var::U, &QI::int(1));
    ensure(at_one.is_associate(&poly("2*y^2*y'^2 + y^2 + 2*y'^2")), "curve at u = 1")
}

fn criterion_5() -> Outcome {
    let f = IOEquation::new(poly(
        "u^3 - 3*u^2*y'' + 3*u*y''^2 - y''^3 - 5*u^2 + 10*u*y'' + y^2 + y'^2 - 5*y''^2 + 4*u - 4*y''",
    ))
    .unwrap();
    let sigma = sys(
        &[
            "(-x1^3*x2^2 + x1^2*x2^2 + u*x2^2 + x1^3 - 6*x1^2*x2 + 2*x1*x2^2 + x1^2 + u - 2*x1)\
             *(2*x1^2*x2 - 3*x1*x2^2 + 3*x1 - 4*x2)/((3*x1^4 + 10*x1^2 + 4)*(x2^2 + 1)^2)",
            "(-12*x1^5*x2^2 + (-3*x2^4 + 30*x2^3 - 30*x2 + 3)*x1^4 + (-18*x2^4 - 12*x2^3 + 68*x2^2 - 12*x2 - 18)*x1^3 \
             + ((-3*u + 2)*x2^4 - 36*x2^3 + 36*x2 + 3*u - 2)*x1^2 - 12*x2*(u*x2^2 + u + 4*x2/3)*x1 + 2*u*x2^4 - 2*u)\
             /(2*x1*(x2^2 + 1)*(3*x1^4 + 10*x1^2 + 4))",
        ],
        "-((x2^2 - 1)*x1^2 + 6*x1*x2 - 2*x2^2 + 2)*x1/(x2^2 + 1)",
    );
    ensure(sigma.is_real(), "system is real")?;
    let p = corresponding_parametrization(&sigma, 2);
    ensure(f.vanishes_on(p.components()), "substitution does not vanish")
}

// Random generators. Polynomials are dense in u and x with small Gaussian
// integer coefficients.

fn qi(re: i64, im: i64) -> QI {
    QI::int(re) + QI::int(im) * QI::i()
}

fn dense(coeffs: &[(i64, i64)], du: usize, v: Var) -> Poly {
    let mut out = Poly::zero();
    for (k, &(re, im)) in coeffs.iter().enumerate() {
        let (i, j) = (k % (du + 1), k / (du + 1));
        let m = &Poly::var(Var::U).pow(i as u32) * &Poly::var(v).pow(j as u32);
        out = &out + &m.scale(&qi(re, im));
    }
    out
}

fn gauss(complex: bool) -> BoxedStrategy<(i64, i64)> {
    if complex {
        (-2i64..=2, prop_oneof![2 => Just(0i64), 1 => -2i64..=2]).boxed()
    } else {
        (-2i64..=2, Just(0i64)).boxed()
    }
}

/// Polynomial in u, x with degree at most `du` in u and `dx` in x.
fn poly_ux(du: usize, dx: usize, complex: bool) -> impl Strategy<Value = Poly> {
    prop::collection::vec(gauss(complex), (du + 1) * (dx + 1)).prop_map(move |c| dense(&c, du, Var::X1))
}

/// First-order system with `x' = p(u, x)` and `y = q(u, x)`, `q` depending on x.
fn system(complex: bool) -> impl Strategy<Value = Realization> {
    (poly_ux(1, 1, complex), poly_ux(1, 2, complex), poly_ux(0, 1, complex))
        .prop_filter_map("degenerate system", |(p, qn, qd)| {
            if p.is_zero() || qd.is_zero() {
                return None;
            }
            let q = RatFunc::new(qn, qd).ok()?;
            if !q.contains(Var::X1) {
                return None;
            }
            Realization::new(vec![RatFunc::from_poly(p)], q).ok()
        })
}

fn mobius(complex: bool) -> impl Strategy<Value = RatFunc> {
    prop::collection::vec(gauss(complex), 4).prop_filter_map("singular", |c| {
        let [a, b, cc, d] = [0, 1, 2, 3].map(|k| qi(c[k].0, c[k].1));
        if (a.clone() * d.clone() - b.clone() * cc.clone()) == QI::int(0) {
            return None;
        }
        let x = Poly::var(Var::X1);
        let num = &x.scale(&a) + &Poly::constant(b);
        let den = &x.scale(&cc) + &Poly::constant(d);
        RatFunc::new(num, den).ok()
    })
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, max_shrink_iters: 16, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn run<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome
where
    S::Value: std::fmt::Debug,
{
    runner(CASES).run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn check(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn round_trip() -> Outcome {
    run("round trip", system(true), |sigma| {
        let p = corresponding_parametrization(&sigma, 1);
        check(realization_from_parametrization(&p).ok() == Some(sigma), "realization differs")
    })
}

fn mobius_closure() -> Outcome {
    run("Möbius closure", (system(true), mobius(true)), |(sigma, m)| {
        let f = implicit(&sigma);
        let moved = reparametrize_realization(&sigma, &[m]).unwrap();
        check(verify_realization(&moved, &f), "reparametrized system fails")?;
        check(implicit(&moved).same_up_to_unit(f.poly()), "implicit equations differ")
    })
}

fn analytic_gcd() -> Outcome {
    let generator = (prop::collection::vec(gauss(true), 2 * 4), 1usize..=3)
        .prop_filter_map("constant", |(c, dx)| {
            let g = dense(&c[..2 * (dx + 1)], 1, Var::X1);
            (g.degree(Var::X1) > 0).then_some(g)
        });
    run("gcd(U, V)", generator, |g| {
        let p = g.compose(Var::X1, &(&Poly::var(Var::X1) + &Poly::var(Var::Z).scale(&QI::i())));
        let (u, v) = p.split_re_im();
        check(gcd(&u, &v).degree_in(VarSet::of(&[Var::X1, Var::Z])) == 0, "common factor in x, z")
    })
}

fn quadratic() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec(-2i64..=2, 5).prop_filter_map("not of degree 2", |c| {
        let x = Poly::var(Var::X1);
        let num = &(&x.pow(2).scale(&QI::int(c[0])) + &x.scale(&QI::int(c[1]))) + &Poly::int(c[2]);
        let den = &x.scale(&QI::int(c[3])) + &Poly::int(c[4]);
        let r = RatFunc::new(num, den).ok()?;
        (r.num().degree(Var::X1).max(r.den().degree(Var::X1)) == 2).then_some(r)
    })
}

fn tracing_multiplicativity() -> Outcome {
    run("tracing index", (system(false), quadratic()), |(sigma, s)| {
        let before = tracing_index(&corresponding_parametrization(&sigma, 1)).unwrap();
        let moved = reparametrize_realization(&sigma, &[s]).unwrap();
        let after = tracing_index(&corresponding_parametrization(&moved, 1)).unwrap();
        check(after == 2 * before, &format!("{before} then {after}"))
    })
}

fn recombination() -> Outcome {
    let generator = (poly_ux(1, 2, true), poly_ux(1, 2, true))
        .prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok());
    run("recombination", generator, |r| {
        let direct = r.compose(Var::X1, &rf("x + I*z")).unwrap();
        check(split_component(&r).recombine().unwrap() == direct, "split does not recombine")
    })
}

/// Real system whose output is linear in x, hence observable.
fn observable_real_system() -> impl Strategy<Value = Realization> {
    (poly_ux(1, 1, false), poly_ux(1, 1, false)).prop_filter_map("degenerate system", |(p, q)| {
        if p.is_zero() || q.degree(Var::X1) != 1 {
            return None;
        }
        Realization::new(vec![RatFunc::from_poly(p)], RatFunc::from_poly(q)).ok()
    })
}

fn twist_and_recover() -> Outcome {
    run("twist and recover", (observable_real_system(), mobius(true)), |(sigma, m)| {
        let f = implicit(&sigma);
        let twisted = reparametrize_realization(&sigma, &[m]).unwrap();
        let out = real_realize(&twisted, &f).unwrap();
        let RealVerdict::Realized { realization, .. } = &out.verdict else {
            return Err(TestCaseError::fail(format!("verdict {:?}", out.verdict)));
        };
        check(IsReal::is_real(realization), "output is not real")?;
        check(verify_realization(realization, &f), "output does not verify")
    })
}

fn suites(list: &[(&str, fn() -> Outcome)]) -> Outcome {
    let mut failures = Vec::new();
    for (name, f) in list {
        let start = std::time::Instant::now();
        let r = f();
        println!("    {} {name} [{:.2} s]", if r.is_ok() { "ok" } else { "failed" }, start.elapsed().as_secs_f64());
        failures.extend(r.err());
    }
    ensure(failures.is_empty(), &failures.join("; "))
}

fn criterion_6() -> Outcome {
    suites(&[
        ("round trip", round_trip),
        ("Möbius closure", mobius_closure),
        ("gcd(U, V) = 1", analytic_gcd),
        ("tracing index under degree 2", tracing_multiplicativity),
        ("recombination", recombination),
        ("twist and recover", twist_and_recover),
    ])
}

// Kernel oracles. Univariate arithmetic over dense coefficient vectors,
// written independently of the crate's sparse kernel.

type Dense = Vec<QI>;

fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(|c| *c == QI::int(0)) {
        a.pop();
    }
    a
}

fn dense_of(p: &Poly, v: Var) -> Dense {
    trim(p.coeffs_in(v).iter().map(|c| c.constant_value().expect("univariate")).collect())
}

fn dense_rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap().clone() / lb.clone();
        for (k, c) in b.iter().enumerate() {
            r[shift + k] = r[shift + k].clone() - f.clone() * c.clone();
        }
        r = trim(r);
    }
    r
}

fn dense_gcd_degree(a: &Dense, b: &Dense) -> usize {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = dense_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

fn determinant(mut m: Vec<Vec<QI>>) -> QI {
    let n = m.len();
    let mut det = QI::int(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != QI::int(0)) else {
            return QI::int(0);
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det = det * m[col][col].clone();
        for r in col + 1..n {
            let f = m[r][col].clone() / m[col][col].clone();
            for c in col..n {
                let t = f.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - t;
            }
        }
    }
    det
}

fn sylvester(a: &Dense, b: &Dense) -> QI {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for k in 0..n {
        let mut row = vec![QI::int(0); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[k + j] = c.clone();
        }
        rows.push(row);
    }
    for k in 0..m {
        let mut row = vec![QI::int(0); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[k + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

fn poly_xy(dx: usize, dy: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(gauss(true), (dy + 1) * (dx + 1)).prop_map(move |c| {
        dense(&c, dy, Var::X1).rename(&[(Var::U, Var::Z)])
    })
}

fn gcd_oracle() -> Outcome {
    let generator = (poly_xy(1, 1), poly_xy(2, 1), poly_xy(1, 1))
        .prop_filter("zero input", |(g, a, b)| !g.is_zero() && !a.is_zero() && !b.is_zero());
    run("gcd oracle", generator, |(g0, a1, b1)| {
        let (a, b) = (&g0 * &a1, &g0 * &b1);
        let g = gcd(&a, &b);
        check(g.divides(&a) && g.divides(&b), "gcd does not divide")?;
        check(g0.divides(&g), "known common factor missing")?;
        let (ca, cb) = (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap());
        for (main, other) in [(Var::X1, Var::Z), (Var::Z, Var::X1)] {
            let coprime_somewhere = (1..=6).any(|c| {
                let (sa, sb) = (ca.eval(other, &QI::int(c)), cb.eval(other, &QI::int(c)));
                let (da, db) = (dense_of(&sa, main), dense_of(&sb, main));
                !da.is_empty() && !db.is_empty() && dense_gcd_degree(&da, &db) == 0
            });
            check(coprime_somewhere, "cofactors share a root at every sample")?;
        }
        Ok(())
    })
}

fn resultant_oracle() -> Outcome {
    let generator = (poly_xy(2, 1), poly_xy(2, 1)).prop_filter("constant in x", |(a, b)| {
        a.degree(Var::X1) > 0 && b.degree(Var::X1) > 0
    });
    run("resultant oracle", generator, |(a, b)| {
        let r = resultant(&a, &b, Var::X1);
        check(!r.contains(Var::X1), "x not eliminated")?;
        let (la, lb) = (a.lc_in(Var::X1), b.lc_in(Var::X1));
        for c in -3..=3 {
            let val = QI::int(c);
            if la.eval(Var::Z, &val).is_zero() || lb.eval(Var::Z, &val).is_zero() {
                continue;
            }
            let (da, db) = (dense_of(&a.eval(Var::Z, &val), Var::X1), dense_of(&b.eval(Var::Z, &val), Var::X1));
            let expected = sylvester(&da, &db);
            check(r.eval(Var::Z, &val) == Poly::constant(expected), "resultant differs at a sample")?;
        }
        Ok(())
    })
}

fn solve_oracle() -> Outcome {
    let entry = || poly_ux(1, 1, true).prop_map(RatFunc::from_poly);
    let generator = (prop::collection::vec(entry(), 9), prop::collection::vec(entry(), 3));
    runner(CASES)
        .run(&generator, |(cells, rhs)| {
            let rows = cells.chunks(3).map(|r| r.to_vec()).collect();
            let m = RFMatrix::from_rows(rows).unwrap();
            match solve_linear(&m, &rhs) {
                Ok(sol) => check(m.mul_vec(&sol).unwrap() == rhs, "back-multiplication differs"),
                Err(_) => check(m.determinant().unwrap().is_zero(), "nonsingular system rejected"),
            }
        })
        .map_err(|e| format!("solve_linear: {e}"))
}

fn criterion_7() -> Outcome {
    suites(&[("gcd", gcd_oracle), ("resultant", resultant_oracle), ("solve_linear", solve_oracle)])
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("non-realizable parametrization", criterion_1),
        ("cubic system verification", criterion_2),
        ("improper system end to end", criterion_3),
        ("complex system without real realization", criterion_4),
        ("second-order real system", criterion_5),
        ("property suites", criterion_6),
        ("kernel oracles", criterion_7),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let label = format!("criterion {} ({name})", k + 1);
        if !filter.is_empty() && !filter.iter().any(|w| label.contains(w.as_str())) {
            continue;
        }
        let start = std::time::Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {label} [{secs:.2} s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {label} [{secs:.2} s]: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
