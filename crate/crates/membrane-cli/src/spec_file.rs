//! Integrand description files for `membrane integrate`.
//!
//! ```json
//! {
//!   "rect": [0.0, 1.0, 0.0, 1.0],
//!   "forms": [
//!     {"poly": [{"coeff": "1/2", "px": 1, "py": 0}]},
//!     {"poly": [{"coeff": 2, "px": 0, "py": 0}]},
//!     {"builtin": "gauss"}
//!   ]
//! }
//! ```
//!
//! Coefficients are `"p/q"` strings or plain integers. Built-in evaluator
//! integrands: `one`, `gauss` (exp(-x²-y²)), `sinxy` (sin(πx)·sin(πy)).

use membrane::error::{Error, Result};
use membrane::quad::{Form2, PolyTerm, Rectangle};
use membrane::Rational;
use serde_json::Value;
use std::path::Path;

pub struct IntegrandSpec {
    pub forms: Vec<Form2>,
    pub rect: Rectangle,
}

pub fn load(path: &Path) -> Result<IntegrandSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::invalid(format!("{} is not valid JSON: {e}", path.display())))?;
    parse(&v)
}

fn parse(v: &Value) -> Result<IntegrandSpec> {
    let rect = match v.get("rect") {
        None => Rectangle::unit(),
        Some(Value::Array(b)) if b.len() == 4 => {
            let nums: Vec<f64> = b
                .iter()
                .map(|x| {
                    x.as_f64()
                        .ok_or_else(|| Error::invalid("rect entries must be numbers"))
                })
                .collect::<Result<Vec<_>>>()?;
            Rectangle::new(nums[0], nums[1], nums[2], nums[3])?
        }
        Some(_) => return Err(Error::invalid("rect must be [ax, bx, ay, by]")),
    };
    let Some(Value::Array(forms_json)) = v.get("forms") else {
        return Err(Error::invalid("missing forms array"));
    };
    let forms = forms_json
        .iter()
        .map(parse_form)
        .collect::<Result<Vec<_>>>()?;
    if forms.is_empty() {
        return Err(Error::invalid("need at least one form"));
    }
    Ok(IntegrandSpec { forms, rect })
}

fn parse_form(v: &Value) -> Result<Form2> {
    if let Some(terms) = v.get("poly") {
        let Value::Array(terms) = terms else {
            return Err(Error::invalid("poly must be an array of terms"));
        };
        let parsed = terms
            .iter()
            .map(|t| {
                let coeff = parse_coeff(t.get("coeff").unwrap_or(&Value::Null))?;
                let px = t.get("px").and_then(Value::as_u64).unwrap_or(0) as u32;
                let py = t.get("py").and_then(Value::as_u64).unwrap_or(0) as u32;
                Ok(PolyTerm::new(coeff, px, py))
            })
            .collect::<Result<Vec<_>>>()?;
        return Form2::polynomial(parsed);
    }
    if let Some(Value::String(name)) = v.get("builtin") {
        return builtin(name);
    }
    Err(Error::invalid(
        "each form needs a `poly` list or a `builtin` name",
    ))
}

fn parse_coeff(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|_| Error::invalid(format!("bad rational coefficient {s:?}"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                Rational::from_float(n.as_f64().unwrap_or(f64::NAN))
                    .ok_or_else(|| Error::invalid("non-finite coefficient"))
            }
        }
        _ => Err(Error::invalid("coeff must be \"p/q\" or a number")),
    }
}

fn builtin(name: &str) -> Result<Form2> {
    match name {
        "one" => Ok(Form2::evaluator(|_, _| 1.0)),
        "gauss" => Ok(Form2::evaluator(|x, y| (-x * x - y * y).exp())),
        "sinxy" => Ok(Form2::evaluator(|x, y| {
            (std::f64::consts::PI * x).sin() * (std::f64::consts::PI * y).sin()
        })),
        other => Err(Error::invalid(format!("unknown builtin {other:?}"))),
    }
}
