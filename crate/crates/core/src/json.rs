//! JSON encodings shared by the library and the command-line front end.

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::aut::HeisAutomorphism;
use crate::error::{Error, Result};
use crate::heis::HeisElement;
use crate::matrix::{RepMatrix, SpecializedMatrix};
use crate::ring::{HeisPolynomial, SpecializationTarget, SpecializedPolynomial};
use crate::schrodinger::UnitaryMatrix;

pub(crate) fn int(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

pub(crate) fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub(crate) fn parse_int(v: &Value) -> Result<BigInt> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(Error::Json(format!("expected an integer, got {other}"))),
    };
    s.parse()
        .map_err(|_| Error::Json(format!("expected an integer, got {s}")))
}

pub(crate) fn parse_ints(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Json("expected an array of integers".into()))?
        .iter()
        .map(parse_int)
        .collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Json(format!("missing field `{key}`")))
}

impl HeisElement {
    /// `{"k": …, "coords": […], "word": "…"}`.
    pub fn to_json(&self) -> Value {
        json!({"k": int(self.k()), "coords": ints(self.coords()), "word": self.to_word_string()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        HeisElement::new(parse_int(field(v, "k")?)?, parse_ints(field(v, "coords")?)?)
    }
}

impl HeisPolynomial {
    /// `{"genus": g, "terms": [{"k", "coords", "c"}, …], "text": "…"}` in canonical order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| json!({"k": int(e.k()), "coords": ints(e.coords()), "c": int(c)}))
            .collect();
        json!({"genus": self.genus(), "terms": terms, "text": self.to_plain_string()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let genus = field(v, "genus")?
            .as_u64()
            .ok_or_else(|| Error::Json("`genus` must be a positive integer".into()))?
            as usize;
        if genus == 0 {
            return Err(Error::GenusTooSmall { min: 1, got: 0 });
        }
        let terms = field(v, "terms")?
            .as_array()
            .ok_or_else(|| Error::Json("`terms` must be an array".into()))?
            .iter()
            .map(|t| {
                Ok((
                    HeisElement::new(parse_int(field(t, "k")?)?, parse_ints(field(t, "coords")?)?)?,
                    parse_int(field(t, "c")?)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        HeisPolynomial::from_terms(genus, terms)
    }
}

impl HeisAutomorphism {
    /// `{"delta": […], "S": [[…], …]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "delta": ints(self.delta()),
            "S": Value::Array(self.matrix().iter().map(|r| ints(r)).collect()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let delta = parse_ints(field(v, "delta")?)?;
        let s = field(v, "S")?
            .as_array()
            .ok_or_else(|| Error::Json("`S` must be an array of rows".into()))?
            .iter()
            .map(parse_ints)
            .collect::<Result<Vec<_>>>()?;
        HeisAutomorphism::new(delta, s)
    }
}

impl RepMatrix {
    /// `{"genus", "rows", "cols", "twist", "target_twist", "entries": [[poly, …], …]}`.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows())
            .map(|i| Value::Array(self.row(i).iter().map(HeisPolynomial::to_json).collect()))
            .collect();
        json!({
            "genus": self.genus(),
            "rows": self.rows(),
            "cols": self.cols(),
            "twist": self.source_twist().to_json(),
            "target_twist": self.target_twist().to_json(),
            "entries": entries,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let genus = field(v, "genus")?
            .as_u64()
            .ok_or_else(|| Error::Json("`genus` must be a positive integer".into()))?
            as usize;
        let grid = field(v, "entries")?
            .as_array()
            .ok_or_else(|| Error::Json("`entries` must be an array of rows".into()))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Json("rows must be arrays".into()))?
                    .iter()
                    .map(HeisPolynomial::from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = RepMatrix::new(genus, grid)?;
        let source = match v.get("twist") {
            Some(t) => HeisAutomorphism::from_json(t)?,
            None => HeisAutomorphism::identity(genus),
        };
        let target = match v.get("target_twist") {
            Some(t) => HeisAutomorphism::from_json(t)?,
            None => HeisAutomorphism::identity(genus),
        };
        m.with_twists(source, target)
    }
}

impl SpecializationTarget {
    pub fn name(&self) -> String {
        match self {
            SpecializationTarget::Moriyama => "moriyama".into(),
            SpecializationTarget::Abelian => "abelian".into(),
            SpecializationTarget::Torsion(n) => format!("torsion{n}"),
        }
    }
}

impl SpecializedPolynomial {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("target".into(), Value::String(self.target().name()));
        match self {
            SpecializedPolynomial::Moriyama { c0, c1 } => {
                m.insert("c0".into(), int(c0));
                m.insert("c1".into(), int(c1));
            }
            SpecializedPolynomial::Abelian { terms, .. } => {
                let t: Vec<Value> = terms
                    .iter()
                    .map(|(k, c)| json!({"coords": ints(k), "c": int(c)}))
                    .collect();
                m.insert("terms".into(), Value::Array(t));
            }
            SpecializedPolynomial::Torsion { terms, .. } => {
                let t: Vec<Value> = terms
                    .iter()
                    .map(|(e, c)| {
                        json!({"kappa": int(&e.word_exponent()), "coords": ints(e.coords()), "c": int(c)})
                    })
                    .collect();
                m.insert("terms".into(), Value::Array(t));
            }
        }
        m.insert("text".into(), Value::String(self.to_plain_string()));
        Value::Object(m)
    }
}

impl SpecializedMatrix {
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows)
            .map(|i| Value::Array((0..self.cols).map(|j| self.get(i, j).to_json()).collect()))
            .collect();
        json!({
            "target": self.target.name(),
            "rows": self.rows,
            "cols": self.cols,
            "is_identity": self.is_identity(),
            "entries": entries,
        })
    }
}

impl UnitaryMatrix {
    /// Rows of `[re, im]` pairs.
    pub fn to_json(&self) -> Value {
        json!(self.to_pairs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::matrix_ta;

    #[test]
    fn polynomial_round_trip() {
        let p =
            HeisPolynomial::parse("123456789012345678901234567890 u^-3 a1 b2^4 - a2", 2).unwrap();
        assert_eq!(HeisPolynomial::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn matrix_round_trip() {
        let m = matrix_ta();
        let back = RepMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn automorphism_round_trip() {
        let t = HeisAutomorphism::twist_b(2, 2).unwrap();
        assert_eq!(HeisAutomorphism::from_json(&t.to_json()).unwrap(), t);
        let bad = json!({"delta": [0, 0], "S": [[2, 0], [0, 1]]});
        assert!(HeisAutomorphism::from_json(&bad).is_err());
    }

    #[test]
    fn element_round_trip() {
        let e = HeisElement::from_ints(-7, &[1, 2, -3, 4]).unwrap();
        assert_eq!(HeisElement::from_json(&e.to_json()).unwrap(), e);
    }
}
