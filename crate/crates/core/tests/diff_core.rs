use iorealize::diff::{
    check_param_shape, corresponding_parametrization, implicitize_curve, realization_from_parametrization,
    reparametrize_realization, verify_realization,
};
use iorealize::{parse_expr, parse_poly, Error, IOEquation, Parametrization, RatFunc, Realization};

const F_SEVERAL_FACTORS: &str = "27*u^6*y^3 - 27*u^5*y^2*y' + 27*u^4*u'*y^3 + 9*u^4*y*y'^2 \
    - 18*u^3*u'*y^2*y' + 9*u^2*u'^2*y^3 - 4*u^4*y^2 - u^3*y'^3 + 3*u^2*u'*y*y'^2 \
    - 3*u*u'^2*y^2*y' + u'^3*y^3 + 4*u^3*y*y' - 4*u^2*u'*y^2 - u^2*y'^2 + 4*u*u'*y*y' - u'*y'^2";

fn rf(s: &str) -> RatFunc {
    parse_expr(s).unwrap()
}

fn eq(s: &str) -> IOEquation {
    IOEquation::new(parse_poly(s).unwrap()).unwrap()
}

fn sys(p: &[&str], q: &str) -> Realization {
    Realization::new(p.iter().map(|s| rf(s)).collect(), rf(q)).unwrap()
}

#[test]
fn cubic_system_verifies_and_implicitizes() {
    let f = eq(F_SEVERAL_FACTORS);
    let sigma = sys(&["u*x"], "u*x^3 + x^2");
    assert!(verify_realization(&sigma, &f));
    let p = corresponding_parametrization(&sigma, 1);
    assert_eq!(p.component(1), &rf("3*u^2*x^3 + 2*u*x^2 + u'*x^3"));
    assert_eq!(p.field_level(0), Some(0));
    assert_eq!(p.field_level(1), Some(1));
    let g = implicitize_curve(&p).unwrap();
    assert!(g.same_up_to_unit(f.poly()));
    assert_eq!(realization_from_parametrization(&p).unwrap(), sigma);
}

#[test]
fn inversion_keeps_the_equation() {
    let f = eq(F_SEVERAL_FACTORS);
    let sigma = sys(&["u*x"], "u*x^3 + x^2");
    let inverted = reparametrize_realization(&sigma, &[rf("1/x")]).unwrap();
    assert_eq!(inverted.p(), &[rf("-u*x")]);
    assert!(verify_realization(&inverted, &f));
}

#[test]
fn imaginary_twist_keeps_the_equation() {
    let f = eq(F_SEVERAL_FACTORS);
    let sigma = sys(&["u*x"], "u*x^3 + x^2");
    let twisted = reparametrize_realization(&sigma, &[rf("I*x")]).unwrap();
    assert!(!twisted.is_real());
    assert!(verify_realization(&twisted, &f));
}

#[test]
fn improper_system_parametrization() {
    let sigma = sys(&["(1-x)/(2*u)"], "(1-x)^4/(u^2+(1-x)^6)");
    let p = corresponding_parametrization(&sigma, 1);
    assert_eq!(p.component(0), &rf("(1-x)^4/(u^2+(1-x)^6)"));
    let f = implicitize_curve(&p).unwrap();
    assert!(verify_realization(&sigma, &f));
    assert_eq!(realization_from_parametrization(&p).unwrap(), sigma);
}

#[test]
fn proper_parametrization_gives_observable_system() {
    let q = Parametrization::new(vec![
        rf("(-x^2 + 2*x - 1)/(x^3 - u^2 - 3*x^2 + 3*x - 1)"),
        rf("-(-1 + x)^2*(2*u^2*u' + x^3 + 2*u^2 - 3*x^2 + 3*x - 1)/(u*(-x^3 + u^2 + 3*x^2 - 3*x + 1)^2)"),
    ])
    .unwrap();
    assert!(check_param_shape(&q, 1).passed());
    let sigma = realization_from_parametrization(&q).unwrap();
    assert_eq!(sigma, sys(&["(1-x)/u"], "(1-x)^2/(u^2+(1-x)^3)"));
}

#[test]
fn non_realizable_parametrization_reports_z() {
    let p = Parametrization::new(vec![rf("u/(u-x)^3"), rf("u*x/(u-x)^3")]).unwrap();
    let err = realization_from_parametrization(&p).unwrap_err();
    assert_eq!(err, Error::NotRealizableFromP { z: vec![rf("(u*x*(u-x) + (2*u+x)*u')/(3*u)")] });
    assert!(!check_param_shape(&p, 1).passed());
    let f = implicitize_curve(&p).unwrap();
    assert!(f.same_up_to_unit(&parse_poly("(y' - u*y)^3 + u*y^2").unwrap()));
}

#[test]
fn second_order_real_system() {
    let f = eq("u^3 - 3*u^2*y'' + 3*u*y''^2 - y''^3 - 5*u^2 + 10*u*y'' + y^2 + y'^2 - 5*y''^2 + 4*u - 4*y''");
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
    assert!(sigma.is_real());
    assert!(verify_realization(&sigma, &f));
    let p = corresponding_parametrization(&sigma, 2);
    assert_eq!(p.jacobian_rank(), 2);
}
