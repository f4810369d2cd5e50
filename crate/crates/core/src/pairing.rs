//! Intersection pairings from combinatorial intersection data.
//!
//! Each intersection point contributes `sgn(p₁)·sgn(p₂)·sgn(ℓ)·φ(ℓ)`, where `ℓ` is a loop in
//! the two-point braid group. The oriented pairing carries an extra global `−1`.

use num_bigint::BigInt;
use serde_json::Value;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::ring::HeisPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionRecord {
    pub sgn_p1: i8,
    pub sgn_p2: i8,
    pub sgn_loop: i8,
    pub loop_word: BraidWord,
}

fn check_sign(s: i64) -> Result<i8> {
    match s {
        1 => Ok(1),
        -1 => Ok(-1),
        other => Err(Error::InvalidArgument(format!(
            "sign must be ±1, got {other}"
        ))),
    }
}

impl IntersectionRecord {
    pub fn new(sgn_p1: i64, sgn_p2: i64, sgn_loop: i64, loop_word: BraidWord) -> Result<Self> {
        if loop_word.strands() != 2 {
            return Err(Error::InvalidArgument(format!(
                "loops live in the two-strand braid group, got {} strands",
                loop_word.strands()
            )));
        }
        Ok(Self {
            sgn_p1: check_sign(sgn_p1)?,
            sgn_p2: check_sign(sgn_p2)?,
            sgn_loop: check_sign(sgn_loop)?,
            loop_word,
        })
    }

    pub fn parse(genus: usize, s1: i64, s2: i64, sl: i64, word: &str) -> Result<Self> {
        Self::new(s1, s2, sl, BraidWord::parse(word, genus, 2)?)
    }

    /// Reads `{"s1": ±1, "s2": ±1, "sl": ±1, "loop": "<braid word>"}`.
    pub fn from_json(v: &Value, genus: usize) -> Result<Self> {
        let sign = |key: &str| {
            v.get(key)
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Json(format!("record needs integer `{key}`")))
        };
        let word = v
            .get("loop")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Json("record needs string `loop`".into()))?;
        Self::parse(genus, sign("s1")?, sign("s2")?, sign("sl")?, word)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "s1": self.sgn_p1,
            "s2": self.sgn_p2,
            "sl": self.sgn_loop,
            "loop": self.loop_word.to_string(),
        })
    }

    fn contribution(&self) -> HeisPolynomial {
        let sign = i64::from(self.sgn_p1) * i64::from(self.sgn_p2) * i64::from(self.sgn_loop);
        HeisPolynomial::monomial(self.loop_word.phi(), BigInt::from(sign))
    }
}

/// Reads a JSON array of records.
pub fn records_from_json(text: &str, genus: usize) -> Result<Vec<IntersectionRecord>> {
    let v: Value = serde_json::from_str(text)?;
    v.as_array()
        .ok_or_else(|| Error::Json("expected an array of records".into()))?
        .iter()
        .map(|r| IntersectionRecord::from_json(r, genus))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairingMode {
    /// `Σ sgn(p₁)sgn(p₂)sgn(ℓ)φ(ℓ)`.
    #[default]
    Standard,
    /// The same sum with the global `−1`.
    Oriented,
}

/// `−sgn(p₁)·sgn(p₂)·sgn(ℓ)`.
pub fn configuration_sign(sgn_p1: i8, sgn_p2: i8, sgn_loop: i8) -> i8 {
    -sgn_p1 * sgn_p2 * sgn_loop
}

pub fn evaluate_pairing(
    genus: usize,
    records: &[IntersectionRecord],
    mode: PairingMode,
) -> Result<HeisPolynomial> {
    let mut acc = HeisPolynomial::zero(genus);
    for r in records {
        if r.loop_word.genus() != genus {
            return Err(Error::GenusMismatch {
                left: genus,
                right: r.loop_word.genus(),
            });
        }
        acc = acc.add(&r.contribution())?;
    }
    Ok(match mode {
        PairingMode::Standard => acc,
        PairingMode::Oriented => acc.neg(),
    })
}

fn records(genus: usize, data: &[(i64, i64, i64, &str)]) -> Vec<IntersectionRecord> {
    data.iter()
        .map(|&(a, b, c, w)| IntersectionRecord::parse(genus, a, b, c, w).expect("valid record"))
        .collect()
}

/// Data for entry `(1, 2)` of the `T_a` matrix.
pub fn fixture_ta_12() -> Vec<IntersectionRecord> {
    records(1, &[(-1, -1, 1, "a1^-1 b1 s1^-1 a1^-1 b1 s1")])
}

/// Data for entry `(1, 3)` of the `T_a` matrix.
pub fn fixture_ta_13() -> Vec<IntersectionRecord> {
    records(1, &[(-1, 1, -1, "s1^-1 a1^-1 b1"), (1, -1, 1, "a1^-1 b1")])
}

/// Data for the entry `s` of the separating-twist matrix. The loops are those of the five
/// intersection points; the arc signs are chosen to be consistent with the value of `s`.
pub fn fixture_separating_s() -> Vec<IntersectionRecord> {
    records(
        1,
        &[
            (1, 1, 1, ""),
            (1, -1, 1, "s1^-1 b1^-1 a1 b1 a1^-1 b1 a1 b1^-1 a1^-1 b1 s1"),
            (1, 1, 1, "s1^-1 a1 b1^-1 a1^-1 b1 s1"),
            (1, 1, 1, "s1^-1 a1^-1 b1 a1 b1^-1 a1^-1 b1 s1"),
            (1, -1, 1, "s1^-1 b1^-1 a1^-1 b1 s1"),
        ],
    )
}

/// Intersection data for the genus-one dual bases: a single positive point with trivial
/// loop on the diagonal and no intersections elsewhere. This data is constructed, not
/// read off a diagram.
pub fn fixture_dual_basis() -> Vec<Vec<Vec<IntersectionRecord>>> {
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    if i == j {
                        records(1, &[(1, 1, 1, "")])
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        })
        .collect()
}

/// Evaluates a grid of record lists.
pub fn pairing_matrix(
    genus: usize,
    grid: &[Vec<Vec<IntersectionRecord>>],
    mode: PairingMode,
) -> Result<Vec<Vec<HeisPolynomial>>> {
    grid.iter()
        .map(|row| {
            row.iter()
                .map(|cell| evaluate_pairing(genus, cell, mode))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> HeisPolynomial {
        HeisPolynomial::parse(s, 1).unwrap()
    }

    #[test]
    fn worked_entries() {
        let m = PairingMode::Standard;
        assert_eq!(
            evaluate_pairing(1, &fixture_ta_12(), m).unwrap(),
            poly("u^2 a^-2 b^2")
        );
        assert_eq!(
            evaluate_pairing(1, &fixture_ta_13(), m).unwrap(),
            poly("(u^-1 - 1) a^-1 b")
        );
        assert_eq!(
            evaluate_pairing(1, &fixture_separating_s(), m).unwrap(),
            poly("1 - b + u^-2 + u^-2 a^-1 b - u^-2 a^-1")
        );
    }

    #[test]
    fn oriented_mode_flips_sign() {
        let p = evaluate_pairing(1, &fixture_ta_13(), PairingMode::Oriented).unwrap();
        assert_eq!(p, poly("(1 - u^-1) a^-1 b"));
    }

    #[test]
    fn configuration_signs() {
        assert_eq!(configuration_sign(1, 1, 1), -1);
        assert_eq!(configuration_sign(-1, -1, 1), -1);
        assert_eq!(configuration_sign(-1, 1, -1), -1);
        assert_eq!(configuration_sign(-1, 1, 1), 1);
    }

    #[test]
    fn additivity() {
        let (x, y) = (fixture_ta_12(), fixture_separating_s());
        let joined: Vec<_> = x.iter().chain(&y).cloned().collect();
        let m = PairingMode::Standard;
        assert_eq!(
            evaluate_pairing(1, &joined, m).unwrap(),
            evaluate_pairing(1, &x, m)
                .unwrap()
                .add(&evaluate_pairing(1, &y, m).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn dual_basis_is_identity() {
        let m = pairing_matrix(1, &fixture_dual_basis(), PairingMode::Standard).unwrap();
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(e.is_one(), i == j);
                assert_eq!(e.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn json_records() {
        let text = r#"[{"s1":-1,"s2":1,"sl":-1,"loop":"s1^-1 a1^-1 b1"},{"s1":1,"s2":-1,"sl":1,"loop":"a1^-1 b1"}]"#;
        let recs = records_from_json(text, 1).unwrap();
        assert_eq!(recs, fixture_ta_13());
        assert_eq!(recs[0].to_json()["loop"], "s1^-1 a1^-1 b1");
        assert!(records_from_json(r#"[{"s1":2,"s2":1,"sl":1,"loop":""}]"#, 1).is_err());
        assert!(IntersectionRecord::new(1, 1, 1, BraidWord::parse("s2", 1, 3).unwrap()).is_err());
    }
}
