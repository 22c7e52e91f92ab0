use iorealize::diff::{corresponding_parametrization, implicitize_curve, reparametrize_realization, verify_realization};
use iorealize::observable::{
    by_ansatz, degree_condition_check, find_common_reparametrization, gp_pair, mobius_equivalent, observable_realize,
    observable_realize_detailed, proper_reparametrize, reciprocal_form, tracing_index,
};
use iorealize::{parse_expr, parse_poly, IOEquation, Parametrization, RatFunc, Realization, Var};

fn rf(s: &str) -> RatFunc {
    parse_expr(s).unwrap()
}

fn sys(p: &str, q: &str) -> Realization {
    Realization::new(vec![rf(p)], rf(q)).unwrap()
}

fn improper() -> Realization {
    sys("(1-x)/(2*u)", "(1-x)^4/(u^2+(1-x)^6)")
}

fn equation_of(sigma: &Realization) -> IOEquation {
    implicitize_curve(&corresponding_parametrization(sigma, 1)).unwrap()
}

#[test]
fn improper_system_pair() {
    let p = corresponding_parametrization(&improper(), 1);
    let gp = gp_pair(&p).unwrap();
    assert!(gp.g.is_associate(&parse_poly("(w - 2 + x)*(w - x)").unwrap()));
    assert_eq!(tracing_index(&p).unwrap(), 2);
    let f = equation_of(&improper());
    assert!(!degree_condition_check(&improper(), &f).unwrap().passed());
}

#[test]
fn improper_system_reparametrization() {
    let p = corresponding_parametrization(&improper(), 1);
    let cand = find_common_reparametrization(&p).unwrap();
    assert_eq!(cand.r, rf("-x^2 + 2*x"));
    let out = proper_reparametrize(&p, &cand.r).unwrap();
    let q1 = out.q.component(0);
    assert_eq!(q1, &rf("(-x^2 + 2*x - 1)/(x^3 - u^2 - 3*x^2 + 3*x - 1)"));
    let printed = parse_poly("z^3 - u^2 - 3*z^2 + 3*z - 1 - (-z^2 + 2*z - 1)*t").unwrap();
    assert!(reciprocal_form(q1).is_associate(&printed));
    let q2 = rf("-(-1 + x)^2*(2*u^2*u' + x^3 + 2*u^2 - 3*x^2 + 3*x - 1)/(u*(-x^3 + u^2 + 3*x^2 - 3*x + 1)^2)");
    assert_eq!(out.q.component(1), &q2);
    assert_eq!(out.q.component(1).derivative(Var::u(1)), q1.derivative(Var::U));
    assert_eq!(tracing_index(&out.q).unwrap(), 1);
    for (pi, qi) in p.components().iter().zip(out.q.components()) {
        assert_eq!(&by_ansatz(pi, &cand.r).unwrap(), qi);
    }
}

#[test]
fn improper_system_becomes_observable() {
    let sigma = improper();
    let f = equation_of(&sigma);
    let detailed = observable_realize_detailed(&sigma, &f).unwrap();
    assert_eq!(detailed.tracing_index_before, 2);
    let expected = sys("(1-x)/u", "(1-x)^2/(u^2+(1-x)^3)");
    assert_eq!(detailed.realization, expected);
    assert!(degree_condition_check(&detailed.realization, &f).unwrap().passed());
    assert!(equation_of(&detailed.realization).same_up_to_unit(f.poly()));
}

#[test]
fn observable_system_is_unchanged() {
    let sigma = sys("u*x", "u*x^3 + x^2");
    let f = equation_of(&sigma);
    assert!(degree_condition_check(&sigma, &f).unwrap().passed());
    assert_eq!(observable_realize(&sigma, &f).unwrap(), sigma);
}

#[test]
fn squared_state_is_undone() {
    let sigma = sys("u*x", "u*x^3 + x^2");
    let f = equation_of(&sigma);
    let squared = reparametrize_realization(&sigma, &[rf("x^2")]).unwrap();
    assert!(verify_realization(&squared, &f));
    assert_eq!(tracing_index(&corresponding_parametrization(&squared, 1)).unwrap(), 2);
    let out = observable_realize(&squared, &f).unwrap();
    let back = corresponding_parametrization(&out, 1);
    assert_eq!(tracing_index(&back).unwrap(), 1);
    assert!(verify_realization(&out, &f));
    // both proper parametrizations of the same curve differ by a Möbius map
    let orig = corresponding_parametrization(&sigma, 1);
    let cand = find_common_reparametrization(&corresponding_parametrization(&squared, 1)).unwrap();
    assert!(mobius_equivalent(&cand.r, &rf("x^2")));
    let q0 = proper_reparametrize(&corresponding_parametrization(&squared, 1), &cand.r).unwrap();
    assert_eq!(q0.q.compose(&[cand.r.clone()]).unwrap(), corresponding_parametrization(&squared, 1));
    assert_eq!(tracing_index(&orig).unwrap(), 1);
}

#[test]
fn wrong_equation_is_rejected() {
    let f = IOEquation::new(parse_poly("y' - y").unwrap()).unwrap();
    assert!(observable_realize(&improper(), &f).is_err());
}

#[test]
fn constant_parametrization_is_degenerate() {
    let p = Parametrization::new(vec![rf("u"), rf("u'")]).unwrap();
    assert!(gp_pair(&p).is_err());
}
