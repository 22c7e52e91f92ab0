use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use iorealize::{parse_expr, parse_poly, print_poly, print_ratfunc, Monomial, Poly, ProblemFile, RatFunc, Var, QI};

fn vars() -> Vec<Var> {
    vec![Var::U, Var::u(1), Var::u(2), Var::Y, Var::y(1), Var::x(1), Var::x(2), Var::W, Var::Z, Var::T]
}

fn coeff() -> impl Strategy<Value = QI> {
    (-9i64..=9, 1i64..=4, prop_oneof![Just(0i64), -5i64..=5], 1i64..=3).prop_map(|(a, b, c, d)| {
        QI::int(a) / QI::int(b) + QI::int(c) / QI::int(d) * QI::i()
    })
}

fn term() -> impl Strategy<Value = Poly> {
    (coeff(), prop::collection::vec((0..10usize, 0u16..=3), 0..3)).prop_map(|(c, exps)| {
        let vs = vars();
        let m = exps.iter().fold(Monomial::one(), |m, &(k, e)| m.mul(&Monomial::var(vs[k], e)));
        Poly::term(m, c)
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(term(), 0..5).prop_map(|ts| ts.iter().fold(Poly::zero(), |acc, t| &acc + t))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn poly_round_trip(p in poly()) {
        prop_assert_eq!(parse_poly(&print_poly(&p)).unwrap(), p);
    }

    #[test]
    fn ratfunc_round_trip(n in poly(), d in poly().prop_filter("zero", |d| !d.is_zero())) {
        let r = RatFunc::new(n, d).unwrap();
        let text = print_ratfunc(&r);
        prop_assert_eq!(parse_expr(&text).unwrap(), r);
        prop_assert_eq!(print_ratfunc(&parse_expr(&text).unwrap()), text);
    }
}

#[test]
fn problem_file_sections() {
    let pf = ProblemFile::parse(
        "# comment\n[equation]\nF = y' - u*y\n    + 1\n\n[realization]\np = u*x\nq = x\n",
    )
    .unwrap();
    assert_eq!(pf.equation, Some(parse_poly("y' - u*y + 1").unwrap()));
    let (p, q) = pf.realization.unwrap();
    assert_eq!(p, vec![parse_expr("u*x").unwrap()]);
    assert_eq!(q, RatFunc::var(Var::X1));
    assert!(pf.parametrization.is_none());
}
