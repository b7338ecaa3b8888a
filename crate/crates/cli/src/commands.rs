use std::fs;
use std::path::Path;

use buchi_core::bounds::{big_to_json, bound_lemma_linear, replay_contradiction};
use buchi_core::buchi::{
    self, exact_powerful_locus, nth_differences, search_integer_buchi, sequence_to_form, BuchiError,
    FormFit, HarnessConfig, LocusJson, Verdict,
};
use buchi_core::charp::{full_report, CharPError};
use buchi_core::fields::Rational;
use buchi_core::funcfield::{classify as classify_form, multiplicity_profile, zero_profile, BuchiForm, Classification, ProjPoint, RatFunc};
use buchi_core::geometry::{
    lemma_linear_census as linear_census, ramification, zeuthen_check, Correspondence, GeometryError,
    RationalMap,
};
use buchi_core::parser::{parse_form, parse_form_expr, parse_ratfunc, parse_ratfunc_in, FormJson};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Failure, Outcome};

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn ok(inputs: Value, outputs: Value) -> Result<Outcome, Failure> {
    Ok(Outcome {
        inputs,
        outputs,
        seed: None,
        failed: false,
    })
}

/// Inclusive `A..B` (also `A..=B`) or a single integer.
fn parse_range(src: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("invalid range '{src}', expected A..B"));
    let (a, b) = match src.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (src.trim(), src.trim()),
    };
    let a: i64 = a.parse().map_err(|_| bad())?;
    let b: i64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(Failure::Usage(format!("empty range '{src}'")));
    }
    Ok((a, b))
}

fn parse_urange(src: &str) -> Result<(u64, u64), Failure> {
    let (a, b) = parse_range(src)?;
    if a < 0 {
        return Err(Failure::Usage(format!("range '{src}' must be non-negative")));
    }
    Ok((a as u64, b as u64))
}

/// A form from a JSON file, inline JSON, or a polynomial expression in t.
fn load_form(arg: &str) -> Result<BuchiForm<Rational>, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        return Ok(parse_form(&text)?);
    }
    if arg.trim_start().starts_with('{') {
        return Ok(parse_form(arg)?);
    }
    Ok(parse_form_expr(arg)?)
}

fn form_value(f: &BuchiForm<Rational>) -> Value {
    let mut v = to_value(&FormJson::from_form(f));
    v["expr"] = Value::String(f.to_string());
    v
}

pub fn powerful(expr: &str, k: u32) -> Result<Outcome, Failure> {
    let f = parse_ratfunc(expr)?;
    let p = zero_profile(&f)?;
    ok(
        json!({ "f": f.to_string(), "k": k }),
        json!({
            "powerful": p.is_k_powerful(k),
            "profile": p.finite.profile("x"),
            "order_at_infinity": p.order_at_infinity,
            "level": p.level(),
        }),
    )
}

pub fn classify(arg: &str) -> Result<Outcome, Failure> {
    let form = load_form(arg)?;
    let class = classify_form(&form)?;
    let nu = match &class {
        Classification::PowerOfLinear(nu) => Value::String(nu.to_string()),
        _ => Value::Null,
    };
    ok(
        json!({ "form": form_value(&form) }),
        json!({
            "classification": class.label(),
            "nu": nu,
            "multiplicity_profile": multiplicity_profile(&form)?.profile("t"),
        }),
    )
}

pub fn census(arg: &str, range: &str, mu: u32, g: u64, include_infinity: bool) -> Result<Outcome, Failure> {
    let form = load_form(arg)?;
    let (a, b) = parse_range(range)?;
    let mut points: Vec<ProjPoint<Rational>> = (a..=b).map(|l| ProjPoint::Affine(Rational::from_i64(l))).collect();
    if include_infinity {
        points.push(ProjPoint::Infinity);
    }
    let r = buchi::census(&form, &points, mu, g)?;
    let powerful: Vec<Value> = r
        .levels
        .iter()
        .filter(|(_, l)| l.at_least(mu))
        .map(|(p, l)| json!({ "point": p.to_string(), "level": l }))
        .collect();
    let outputs = json!({
        "form": r.form,
        "classification": r.classification,
        "tested_count": r.tested.len(),
        "powerful_count": powerful.len(),
        "powerful": powerful,
        "degenerate": r.degenerate.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "bound_M": big_to_json(&r.bound_m),
        "verdict": r.verdict,
    });
    Ok(Outcome {
        inputs: json!({
            "form": form_value(&form),
            "lambda_range": [a, b],
            "mu": mu,
            "g": g,
            "include_infinity": include_infinity,
        }),
        outputs,
        seed: None,
        failed: r.verdict == Verdict::Inconsistent,
    })
}

pub fn locus(arg: &str, k: u32) -> Result<Outcome, Failure> {
    let form = load_form(arg)?;
    let inputs = json!({ "form": form_value(&form), "n": k });
    match exact_powerful_locus(&form, k) {
        Ok(l) => {
            let mut v = to_value(&LocusJson::from(&l));
            v["infinite"] = Value::Bool(false);
            ok(inputs, v)
        }
        Err(BuchiError::InfiniteLocus(reason)) if (k as usize) < form.n() => {
            ok(inputs, json!({ "k": k, "infinite": true, "reason": reason }))
        }
        Err(BuchiError::InfiniteLocus(reason)) => Err(Failure::Verification(json!({
            "form": form.to_string(),
            "k": k,
            "reason": reason,
        }))),
        Err(e) => Err(e.into()),
    }
}

fn load_sequence(path: &Path) -> Result<Vec<RatFunc<Rational>>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let raw: Vec<Value> = serde_json::from_str(&text)?;
    raw.iter()
        .map(|v| match v {
            Value::String(s) => Ok(parse_ratfunc(s)?),
            Value::Number(n) => Ok(parse_ratfunc(&n.to_string())?),
            other => Err(Failure::Usage(format!("sequence entry {other} is not a string"))),
        })
        .collect()
}

pub fn sequence(to_form: bool, path: &Path, n: usize) -> Result<Outcome, Failure> {
    let u = load_sequence(path)?;
    let inputs = json!({
        "action": if to_form { "to-form" } else { "verify" },
        "terms": u.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "n": n,
    });
    if !to_form {
        let d = nth_differences(&u, n)?;
        let fact = (1..=n as i64).product::<i64>();
        let buchi = d.iter().all(|x| x.as_constant() == Some(Rational::from_i64(fact)));
        return ok(
            inputs,
            json!({
                "length": u.len(),
                "differences": d.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "buchi": buchi,
            }),
        );
    }
    let outputs = match sequence_to_form(&u, n)? {
        FormFit::Form(coeffs) => {
            let form = if n >= 2 {
                BuchiForm::new(coeffs.clone()).ok().map(|f| form_value(&f))
            } else {
                None
            };
            json!({
                "buchi": true,
                "coeffs": coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "form": form,
            })
        }
        FormFit::NotBuchi => json!({ "buchi": false, "coeffs": Value::Null, "form": Value::Null }),
    };
    ok(inputs, outputs)
}

pub fn search_int(x1: &str, x2: &str, min_len: usize, max_len: usize, nontrivial_only: bool) -> Result<Outcome, Failure> {
    let (a1, b1) = parse_urange(x1)?;
    let (a2, b2) = parse_urange(x2)?;
    let found = search_integer_buchi(a1..=b1, a2..=b2, min_len, max_len);
    let nontrivial: Vec<_> = found.iter().filter(|s| !s.trivial).collect();
    let listed: Vec<Value> = found
        .iter()
        .filter(|s| !nontrivial_only || !s.trivial)
        .map(to_value)
        .collect();
    ok(
        json!({
            "x1": [a1, b1], "x2": [a2, b2],
            "min_len": min_len, "max_len": max_len,
            "nontrivial_only": nontrivial_only,
        }),
        json!({
            "count": found.len(),
            "nontrivial_count": nontrivial.len(),
            "max_nontrivial_length": nontrivial.iter().map(|s| s.len()).max().unwrap_or(0),
            "sequences": listed,
        }),
    )
}

pub fn bound(n: &str, g: &str) -> Result<Outcome, Failure> {
    let (n0, n1) = parse_urange(n)?;
    let (g0, g1) = parse_urange(g)?;
    let mut rows = Vec::new();
    let mut all = true;
    for n in n0..=n1 {
        for g in g0..=g1 {
            let r = replay_contradiction(n, g, 4)?;
            all &= r.is_contradiction();
            let mut row = to_value(&r);
            row["M"] = row["bound_m"].clone();
            row["lemma_linear"] = big_to_json(&bound_lemma_linear(g));
            row["branches_checked"] = json!(r.branches.len());
            row["contradiction"] = json!(r.is_contradiction());
            if let Some(obj) = row.as_object_mut() {
                obj.remove("bound_m");
                obj.remove("branches");
            }
            rows.push(row);
        }
    }
    let single = n0 == n1 && g0 == g1;
    let outputs = if single { rows.remove(0) } else { json!({ "rows": rows }) };
    Ok(Outcome {
        inputs: json!({ "n": [n0, n1], "g": [g0, g1] }),
        outputs,
        seed: None,
        failed: !all,
    })
}

pub fn charp_example(p: u64, e: u32, samples: usize) -> Result<Outcome, Failure> {
    let r = match full_report(p, e, samples) {
        Ok(r) => r,
        Err(CharPError::VerificationFailed(m)) => {
            return Err(Failure::Verification(json!({ "p": p, "e": e, "reason": m })))
        }
        Err(other) => return Err(other.into()),
    };
    Ok(Outcome {
        inputs: json!({ "p": p, "e": e, "samples": samples }),
        failed: !r.passed(),
        outputs: to_value(&r),
        seed: None,
    })
}

pub fn lemma_linear(c: &str) -> Result<Outcome, Failure> {
    let f = parse_ratfunc(c)?;
    let r = match linear_census(&f) {
        Ok(r) => r,
        Err(GeometryError::BoundExceeded(k)) => {
            return Err(Failure::Verification(json!({ "c": f.to_string(), "size": k, "bound": 4 })))
        }
        Err(e) => return Err(e.into()),
    };
    ok(
        json!({ "c": f.to_string() }),
        json!({
            "points": r.rational.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "irrational": r.irrational,
            "size": r.size(),
            "bound": big_to_json(&bound_lemma_linear(0)),
        }),
    )
}

/// Parameter maps are written in t; x is accepted too.
fn parse_param(src: &str) -> Result<RatFunc<Rational>, Failure> {
    parse_ratfunc_in(src, 't').or_else(|_| parse_ratfunc(src)).map_err(Into::into)
}

pub fn zeuthen(u: &str, v: &str) -> Result<Outcome, Failure> {
    let (fu, fv) = (parse_param(u)?, parse_param(v)?);
    let c = Correspondence {
        u: RationalMap::new(fu.clone())?,
        v: RationalMap::new(fv.clone())?,
    };
    let z = zeuthen_check(&c)?;
    Ok(Outcome {
        inputs: json!({ "u": fu.fmt_var("t"), "v": fv.fmt_var("t") }),
        outputs: json!({
            "epsilon": c.u.degree(),
            "delta": c.v.degree(),
            "lhs": z.lhs,
            "rhs": z.rhs,
            "equal": z.equal,
            "ramification_u": ramification(&c.u)?,
            "ramification_v": ramification(&c.v)?,
        }),
        seed: None,
        failed: !z.equal,
    })
}

pub fn harness(n: usize, trials: usize, seed: u64, range: &str) -> Result<Outcome, Failure> {
    if n < 2 {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    let (a, b) = parse_range(range)?;
    let cfg = HarnessConfig {
        lambdas: (a..=b).map(Rational::from_i64).collect(),
        ..HarnessConfig::new(n, trials, seed)
    };
    let inputs = json!({ "n": n, "trials": trials, "lambda_range": [a, b], "pool": cfg.pool });
    match buchi::theorem_harness(&cfg) {
        Ok(r) => Ok(Outcome {
            inputs,
            outputs: to_value(&r),
            seed: Some(seed),
            failed: false,
        }),
        Err(BuchiError::TheoremViolation(w)) => Err(Failure::Verification(
            serde_json::from_str(&w).unwrap_or(Value::String(w)),
        )),
        Err(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-5..5").ok(), Some((-5, 5)));
        assert_eq!(parse_range("1..=3").ok(), Some((1, 3)));
        assert_eq!(parse_range("7").ok(), Some((7, 7)));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a..b").is_err());
        assert!(parse_urange("-1..2").is_err());
    }

    #[test]
    fn forms_from_any_source() {
        let a = load_form(r#"{"n": 2, "coeffs": ["-x^2", "0"]}"#).ok().unwrap();
        let b = load_form("t^2-x^2").ok().unwrap();
        assert_eq!(a, b);
    }
}
