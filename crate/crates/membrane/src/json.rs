//! JSON shapes for series and permutation sets: terms in graded
//! lexicographic order, exact coefficients as `"p/q"` strings, floating
//! coefficients as numbers.

use crate::perm::Permutation;
use crate::series::{FormalSeries, Scalar};
use crate::word::{IndexedMonomial, MonomialClass};
use crate::Rational;
use serde_json::{json, Value};

/// How a coefficient scalar renders into JSON.
pub trait CoeffJson {
    fn coeff_json(&self) -> Value;
}

impl CoeffJson for Rational {
    fn coeff_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }
}

impl CoeffJson for f64 {
    fn coeff_json(&self) -> Value {
        json!(self)
    }
}

fn word_json(class_word: &crate::word::Word) -> Value {
    Value::Array(class_word.letters().iter().map(|&c| json!(c)).collect())
}

fn perm_json(p: &Permutation) -> Value {
    Value::Array(p.images().iter().map(|&v| json!(v)).collect())
}

/// `{"truncation": N, "terms": [{"word": [...], "sigma2": [...], "coeff": ...}]}`
pub fn series_json<C: Scalar + CoeffJson>(s: &FormalSeries<MonomialClass, C>) -> Value {
    json!({
        "truncation": s.truncation(),
        "terms": s.terms().map(|(k, c)| json!({
            "word": word_json(&k.word),
            "sigma2": perm_json(&k.sigma2),
            "coeff": c.coeff_json(),
        })).collect::<Vec<_>>(),
    })
}

/// Indexed variant: every term also carries its `split`.
pub fn indexed_series_json<C: Scalar + CoeffJson>(s: &FormalSeries<IndexedMonomial, C>) -> Value {
    json!({
        "truncation": s.truncation(),
        "terms": s.terms().map(|(k, c)| json!({
            "word": word_json(&k.word),
            "sigma2": perm_json(&k.sigma2),
            "split": k.split,
            "coeff": c.coeff_json(),
        })).collect::<Vec<_>>(),
    })
}

/// A shuffle set as a JSON array of one-line image arrays.
pub fn permutation_set_json(perms: &[Permutation]) -> Value {
    Value::Array(perms.iter().map(perm_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::truncated_j;
    use num_traits::One;

    #[test]
    fn series_terms_serialize_in_graded_order() {
        let j = truncated_j(2, 2, |_| Ok(Rational::one())).unwrap();
        let v = series_json(&j);
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 11);
        let degrees: Vec<usize> = terms
            .iter()
            .map(|t| t["word"].as_array().unwrap().len())
            .collect();
        let mut sorted = degrees.clone();
        sorted.sort();
        assert_eq!(degrees, sorted);
        assert_eq!(terms[0]["coeff"], "1/1");
    }

    #[test]
    fn indexed_terms_carry_their_split() {
        let j = truncated_j(1, 1, |_| Ok(Rational::one())).unwrap();
        let e = crate::indexed::embed(&j);
        let v = indexed_series_json(&e);
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 3); // unit + two splits of the letter
        assert!(terms.iter().all(|t| t.get("split").is_some()));
    }

    #[test]
    fn shuffle_set_shape() {
        let set = crate::perm::shuffles(&Permutation::identity(1), &Permutation::identity(1));
        let v = permutation_set_json(&set);
        assert_eq!(v.to_string(), "[[1,2],[2,1]]");
    }
}
