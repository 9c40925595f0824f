//! JSON encodings. Rationals are `{"num": "..", "den": ".."}`, complex
//! numbers are `[re, im]` with shortest round-trip floats.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::coh_ring::{AmbientClass, Monomial, NilPoly, Scalar, SectorLabel, StateClass};
use crate::degrees::Degree;
use crate::error::{GlsmError, Result};
use crate::i_series::{ISeries, LogPoly, SeriesKind};
use crate::model::{Chamber, Var};
use crate::state_space::state_basis;

fn bad(msg: impl Into<String>) -> GlsmError {
    GlsmError::BadJson(msg.into())
}

pub trait CoeffJson: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl CoeffJson for BigRational {
    fn to_json(&self) -> Value {
        json!({"num": self.numer().to_string(), "den": self.denom().to_string()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let part = |k: &str| -> Result<BigInt> {
            v.get(k)
                .and_then(Value::as_str)
                .ok_or_else(|| bad(format!("missing {k}")))?
                .parse()
                .map_err(|_| bad(format!("bad {k}")))
        };
        let den = part("den")?;
        if den == BigInt::from(0) {
            return Err(bad("zero denominator"));
        }
        Ok(BigRational::new(part("num")?, den))
    }
}

impl CoeffJson for Complex64 {
    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v.as_array().map(Vec::as_slice) {
            Some([re, im]) => Ok(Complex64::new(
                re.as_f64().ok_or_else(|| bad("re"))?,
                im.as_f64().ok_or_else(|| bad("im"))?,
            )),
            _ => Err(bad("expected [re, im]")),
        }
    }
}

pub fn complex_json(z: Complex64) -> Value {
    z.to_json()
}

fn strings(v: &Value) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| bad("expected array"))?
        .iter()
        .map(|s| s.as_str().map(str::to_owned).ok_or_else(|| bad("expected string")))
        .collect()
}

pub fn class_to_json<C: CoeffJson>(c: &AmbientClass<C>) -> Value {
    Value::Array(
        c.entries()
            .iter()
            .map(|(s, m, a)| json!({"sector": s.json_strings(), "monomial": m.json_names(), "coeff": a.to_json()}))
            .collect(),
    )
}

pub fn class_from_json<C: CoeffJson>(v: &Value) -> Result<AmbientClass<C>> {
    let mut out = AmbientClass::zero();
    for e in v.as_array().ok_or_else(|| bad("class must be an array"))? {
        let sector = SectorLabel::from_json_strings(&strings(&e["sector"])?)?;
        let vars = strings(&e["monomial"])?
            .iter()
            .map(|s| Monomial::parse_json_name(s))
            .collect::<Result<Vec<Var>>>()?;
        let coeff = C::from_json(&e["coeff"])?;
        out.add_part(sector, NilPoly::monomial(Monomial::from_vars(&vars), coeff));
    }
    Ok(out)
}

/// A state-space class as a list of `{label, degree, coeff}`, nonzero entries only.
pub fn state_class_to_json<C: CoeffJson>(c: &StateClass<C>) -> Value {
    let basis = state_basis(&c.chamber);
    Value::Array(
        basis
            .elements
            .iter()
            .zip(&c.coeffs)
            .filter(|(_, a)| !a.is_zero())
            .map(|(e, a)| {
                json!({
                    "label": e.label(&c.chamber),
                    "sector": e.sector.json_strings(),
                    "monomial": e.monomial.json_names(),
                    "degree": e.degree,
                    "coeff": a.to_json(),
                })
            })
            .collect(),
    )
}

fn l_names(l: Monomial) -> Vec<String> {
    l.vars().iter().map(|v| format!("L{}", v.name())).collect()
}

fn parse_l_name(s: &str) -> Result<Var> {
    s.strip_prefix('L')
        .ok_or_else(|| bad(format!("bad log name {s}")))
        .and_then(Var::parse)
}

pub fn logpoly_to_json<C: CoeffJson>(p: &LogPoly<C>) -> Value {
    Value::Array(
        p.terms
            .iter()
            .map(|(l, c)| json!({"Lpowers": l_names(*l), "class": class_to_json(c)}))
            .collect(),
    )
}

pub fn logpoly_from_json<C: CoeffJson>(v: &Value) -> Result<LogPoly<C>> {
    let mut p = LogPoly::default();
    for t in v.as_array().ok_or_else(|| bad("logpoly must be an array"))? {
        let vars = strings(&t["Lpowers"])?
            .iter()
            .map(|s| parse_l_name(s))
            .collect::<Result<Vec<Var>>>()?;
        p.add(Monomial::from_vars(&vars), class_from_json(&t["class"])?);
    }
    Ok(p)
}

pub fn series_to_json<C: CoeffJson>(s: &ISeries<C>) -> Value {
    let terms: Vec<Value> = s
        .ordered_terms()
        .into_iter()
        .map(|(e, p)| json!({"exponent": e.strings(), "logpoly": logpoly_to_json(p)}))
        .collect();
    json!({
        "chamber": s.chamber.to_json(),
        "kind": s.kind.name(),
        "hbar": s.hbar.to_json(),
        "cutoff": s.cutoff,
        "shift": s.shift.strings(),
        "terms": terms,
    })
}

pub fn series_from_json<C: CoeffJson>(v: &Value) -> Result<ISeries<C>> {
    let exps = v["chamber"]["exponents"]
        .as_array()
        .ok_or_else(|| bad("chamber.exponents"))?;
    let exps: Vec<i64> = exps
        .iter()
        .map(|e| e.as_i64().ok_or_else(|| bad("exponent")))
        .collect::<Result<_>>()?;
    let exponents: [i64; 4] = exps.try_into().map_err(|_| bad("chamber needs 4 exponents"))?;
    let kind = match v["kind"].as_str() {
        Some("plain") => SeriesKind::Plain,
        Some("givental") => SeriesKind::Givental,
        _ => return Err(bad("kind")),
    };
    let mut terms = std::collections::BTreeMap::new();
    for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
        terms.insert(
            Degree::from_strings(&strings(&t["exponent"])?)?,
            logpoly_from_json(&t["logpoly"])?,
        );
    }
    Ok(ISeries {
        chamber: Chamber::new(exponents)?,
        hbar: C::from_json(&v["hbar"])?,
        cutoff: v["cutoff"].as_i64().ok_or_else(|| bad("cutoff"))?,
        kind,
        shift: Degree::from_strings(&strings(&v["shift"])?)?,
        terms,
    })
}
