use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::{Poly, RatFunc};

use super::parse::{parse_expr, parse_poly};
use super::print::{print_poly, print_ratfunc};

/// On-disk problem description.
///
/// ```text
/// # Example
/// [equation]
/// F = (y' - u*y)^3 + u*y^2
///
/// [realization]
/// p = u*x
/// q = u*x^3 + x^2
///
/// [parametrization]
/// P0 = u/(u - x)^3
/// P1 = u*x/(u - x)^3
/// ```
///
/// With several states the realization uses `p1, p2, …`. A line that starts
/// with whitespace continues the previous value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProblemFile {
    pub equation: Option<Poly>,
    pub realization: Option<(Vec<RatFunc>, RatFunc)>,
    pub parametrization: Option<Vec<RatFunc>>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Equation,
    Realization,
    Parametrization,
}

fn indexed(key: &str, prefix: char) -> Option<usize> {
    let rest = key.strip_prefix(prefix)?;
    if rest.is_empty() {
        return Some(usize::MAX);
    }
    rest.parse().ok()
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(Section, String, String, usize)> = Vec::new();
        let mut section = Section::None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Invalid(format!("line {}: {msg}", lineno + 1));
            if raw.starts_with(char::is_whitespace) {
                if let Some(last) = entries.last_mut() {
                    last.2.push(' ');
                    last.2.push_str(line.trim());
                    continue;
                }
            }
            let t = line.trim();
            if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = match name.trim() {
                    "equation" => Section::Equation,
                    "realization" => Section::Realization,
                    "parametrization" => Section::Parametrization,
                    other => return Err(bad(format!("unknown section `{other}`"))),
                };
                continue;
            }
            let Some((k, v)) = t.split_once('=') else {
                return Err(bad("expected `key = value`".into()));
            };
            if section == Section::None {
                return Err(bad("entry outside of a section".into()));
            }
            entries.push((section, k.trim().to_string(), v.trim().to_string(), lineno + 1));
        }

        let mut pf = ProblemFile::default();
        let mut ps: Vec<(usize, RatFunc)> = Vec::new();
        let mut q = None;
        let mut comps: Vec<(usize, RatFunc)> = Vec::new();
        for (sec, key, val, lineno) in entries {
            let ctx = |e: Error| Error::Invalid(format!("line {lineno}, `{key}`: {e}"));
            match sec {
                Section::Equation => {
                    if key != "F" {
                        return Err(Error::Invalid(format!("line {lineno}: unknown key `{key}` in [equation]")));
                    }
                    pf.equation = Some(parse_poly(&val).map_err(ctx)?);
                }
                Section::Realization => {
                    if key == "q" {
                        q = Some(parse_expr(&val).map_err(ctx)?);
                    } else if let Some(i) = indexed(&key, 'p') {
                        ps.push((i, parse_expr(&val).map_err(ctx)?));
                    } else {
                        return Err(Error::Invalid(format!("line {lineno}: unknown key `{key}` in [realization]")));
                    }
                }
                Section::Parametrization => match indexed(&key, 'P') {
                    Some(i) if i != usize::MAX => comps.push((i, parse_expr(&val).map_err(ctx)?)),
                    _ => return Err(Error::Invalid(format!("line {lineno}: unknown key `{key}` in [parametrization]"))),
                },
                Section::None => unreachable!(),
            }
        }

        if !ps.is_empty() || q.is_some() {
            let q = q.ok_or_else(|| Error::Invalid("[realization] needs `q`".into()))?;
            ps.sort_by_key(|(i, _)| *i);
            let p = if ps.len() == 1 && ps[0].0 == usize::MAX {
                vec![ps.remove(0).1]
            } else {
                for (k, (i, _)) in ps.iter().enumerate() {
                    if *i != k + 1 {
                        return Err(Error::Invalid("[realization] keys must be `p` or `p1, p2, …` without gaps".into()));
                    }
                }
                ps.into_iter().map(|(_, r)| r).collect()
            };
            if p.is_empty() {
                return Err(Error::Invalid("[realization] needs at least one `p`".into()));
            }
            pf.realization = Some((p, q));
        }
        if !comps.is_empty() {
            comps.sort_by_key(|(i, _)| *i);
            for (k, (i, _)) in comps.iter().enumerate() {
                if *i != k {
                    return Err(Error::Invalid("[parametrization] keys must be `P0, P1, …` without gaps".into()));
                }
            }
            pf.parametrization = Some(comps.into_iter().map(|(_, r)| r).collect());
        }
        Ok(pf)
    }

    /// Canonical text form; `parse(to_text())` reproduces `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(f) = &self.equation {
            let _ = writeln!(out, "[equation]\nF = {}", print_poly(f));
        }
        if let Some((p, q)) = &self.realization {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str("[realization]\n");
            if p.len() == 1 {
                let _ = writeln!(out, "p = {}", print_ratfunc(&p[0]));
            } else {
                for (i, pi) in p.iter().enumerate() {
                    let _ = writeln!(out, "p{} = {}", i + 1, print_ratfunc(pi));
                }
            }
            let _ = writeln!(out, "q = {}", print_ratfunc(q));
        }
        if let Some(ps) = &self.parametrization {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str("[parametrization]\n");
            for (i, c) in ps.iter().enumerate() {
                let _ = writeln!(out, "P{i} = {}", print_ratfunc(c));
            }
        }
        out
    }
}
