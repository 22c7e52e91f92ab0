use anyhow::{anyhow, bail, Context, Result};

use iorealize::diff::{
    check_order_obstruction, check_param_shape, corresponding_parametrization, implicitize_curve,
    realization_from_parametrization, verify_realization, OrderVerdict, ShapeVerdict,
};
use iorealize::observable::{degree_condition_check, observable_realize_detailed, tracing_index};
use iorealize::real::{real_realize_with, RealOptions, RealVerdict};
use iorealize::{print_poly, print_ratfunc, Error, IOEquation, Parametrization, ProblemFile, Realization};

use crate::report::{Report, Verdict};

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub height_bound: u64,
    pub verify: bool,
}

fn equation(pf: &ProblemFile) -> Result<Option<IOEquation>> {
    pf.equation.clone().map(IOEquation::new).transpose().context("equation")
}

fn need_equation(pf: &ProblemFile) -> Result<IOEquation> {
    equation(pf)?.ok_or_else(|| anyhow!("the problem file has no [equation] section"))
}

fn realization(pf: &ProblemFile) -> Result<Option<Realization>> {
    pf.realization.clone().map(|(p, q)| Realization::new(p, q)).transpose().context("realization")
}

fn need_realization(pf: &ProblemFile) -> Result<Realization> {
    realization(pf)?.ok_or_else(|| anyhow!("the problem file has no [realization] section"))
}

fn parametrization(pf: &ProblemFile) -> Result<Option<Parametrization>> {
    pf.parametrization.clone().map(Parametrization::new).transpose().context("parametrization")
}

/// `F` from the file, or implicitized from the realization when absent.
fn equation_or_implicit(pf: &ProblemFile, sigma: &Realization) -> Result<IOEquation> {
    match equation(pf)? {
        Some(f) => Ok(f),
        None if sigma.dim() == 1 => Ok(implicitize_curve(&corresponding_parametrization(sigma, 1))?),
        None => bail!("an [equation] section is required for systems with several states"),
    }
}

fn add_realization(r: &mut Report, sigma: &Realization) {
    let n = sigma.dim();
    for (i, p) in sigma.p().iter().enumerate() {
        let name = if n == 1 { "x'".to_string() } else { format!("x{}'", i + 1) };
        r.add(name, print_ratfunc(p));
    }
    r.add("y", print_ratfunc(sigma.q()));
}

fn add_parametrization(r: &mut Report, p: &Parametrization) {
    for (i, c) in p.components().iter().enumerate() {
        r.add(format!("P{i}"), print_ratfunc(c));
    }
}

fn add_verification(r: &mut Report, opts: &Options, sigma: &Realization, f: &IOEquation) -> bool {
    if !opts.verify {
        return true;
    }
    let ok = verify_realization(sigma, f);
    r.add("verified", ok);
    if !ok {
        r.verdict(Verdict::Failed);
    }
    ok
}

pub fn param(pf: &ProblemFile, _: &Options) -> Result<Report> {
    let sigma = need_realization(pf)?;
    let mut r = Report::new("param");
    add_parametrization(&mut r, &corresponding_parametrization(&sigma, sigma.dim()));
    Ok(r)
}

pub fn realize(pf: &ProblemFile, opts: &Options) -> Result<Report> {
    let p = parametrization(pf)?.ok_or_else(|| anyhow!("the problem file has no [parametrization] section"))?;
    let f = equation(pf)?;
    let mut r = Report::new("realize");
    if let Some(f) = &f {
        if check_order_obstruction(f) == OrderVerdict::NotRealizable {
            r.verdict(Verdict::NotRealizable).add("reason", "the order in u exceeds the order in y");
            return Ok(r);
        }
    }
    match realization_from_parametrization(&p) {
        Ok(sigma) => {
            add_realization(&mut r, &sigma);
            if let Some(f) = &f {
                add_verification(&mut r, opts, &sigma, f);
            }
        }
        Err(e @ Error::NotRealizableFromP { .. }) => {
            r.verdict(Verdict::NotRealizable).add("reason", e);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

pub fn check(pf: &ProblemFile, _: &Options) -> Result<Report> {
    let f = equation(pf)?;
    let p = parametrization(pf)?;
    if f.is_none() && p.is_none() {
        bail!("check needs an [equation] or a [parametrization] section");
    }
    let mut r = Report::new("check");
    if let Some(f) = &f {
        r.add("order_y", f.order_y());
        r.add("order_u", f.order_u().map_or("none".to_string(), |k| k.to_string()));
        let obstruction = check_order_obstruction(f);
        r.add(
            "order_obstruction",
            match obstruction {
                OrderVerdict::NotRealizable => "not realizable",
                OrderVerdict::Inconclusive => "inconclusive",
            },
        );
        if obstruction == OrderVerdict::NotRealizable {
            r.verdict(Verdict::NotRealizable);
        }
    }
    if let Some(p) = &p {
        let order_u = f.as_ref().and_then(|f| f.order_u()).unwrap_or(0);
        match check_param_shape(p, order_u) {
            ShapeVerdict::Pass => {
                r.add("shape", "pass");
            }
            ShapeVerdict::Fail(why) => {
                r.add("shape", "fail");
                for w in why {
                    r.add("shape_violation", w);
                }
                r.verdict(Verdict::NotRealizable);
            }
        }
    }
    Ok(r)
}

pub fn implicitize(pf: &ProblemFile, _: &Options) -> Result<Report> {
    let p = match (parametrization(pf)?, realization(pf)?) {
        (Some(p), _) => p,
        (None, Some(sigma)) => corresponding_parametrization(&sigma, sigma.dim()),
        (None, None) => bail!("implicitize needs a [parametrization] or [realization] section"),
    };
    let f = implicitize_curve(&p)?;
    let mut r = Report::new("implicitize");
    r.add("F", print_poly(f.poly()));
    Ok(r)
}

pub fn observable(pf: &ProblemFile, opts: &Options) -> Result<Report> {
    let sigma = need_realization(pf)?;
    let f = equation_or_implicit(pf, &sigma)?;
    let out = observable_realize_detailed(&sigma, &f)?;
    let mut r = Report::new("observable");
    r.add("tracing_index", out.tracing_index_before);
    if let Some(c) = &out.reparametrization {
        r.add("r", print_ratfunc(&c.r));
    }
    add_realization(&mut r, &out.realization);
    let check = degree_condition_check(&out.realization, &f)?;
    r.add("degree_conditions", if check.passed() { "pass" } else { "fail" });
    add_verification(&mut r, opts, &out.realization, &f);
    Ok(r)
}

pub fn real(pf: &ProblemFile, opts: &Options) -> Result<Report> {
    let sigma = need_realization(pf)?;
    let f = equation_or_implicit(pf, &sigma)?;
    let out = real_realize_with(&sigma, &f, RealOptions { height_bound: opts.height_bound, seed: opts.seed })?;
    let mut r = Report::new("real");
    r.add("V", print_poly(&out.v));
    for c in &out.factors {
        let kind = format!("{:?}", c.kind).to_lowercase();
        r.add("factor", format!("{} [{kind}]", print_poly(&c.factor)));
    }
    match &out.verdict {
        RealVerdict::Realized { realization, s, .. } => {
            r.add("s", print_ratfunc(s));
            add_realization(&mut r, realization);
            add_verification(&mut r, opts, realization, &f);
        }
        RealVerdict::NoRealRealization => {
            r.verdict(Verdict::NoRealRealization);
        }
        RealVerdict::Indeterminate(why) => {
            r.verdict(Verdict::Indeterminate).add("reason", why);
        }
    }
    Ok(r)
}

pub fn verify(pf: &ProblemFile, _: &Options) -> Result<Report> {
    let sigma = need_realization(pf)?;
    let f = need_equation(pf)?;
    let mut r = Report::new("verify");
    let ok = verify_realization(&sigma, &f);
    r.add("verified", ok);
    if sigma.dim() == 1 {
        r.add("tracing_index", tracing_index(&corresponding_parametrization(&sigma, 1))?);
    }
    if !ok {
        r.verdict(Verdict::Failed);
    }
    Ok(r)
}
