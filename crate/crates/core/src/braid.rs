//! Surface braid words in Bellingeri's generators and the quotient `φ: 𝔹_n(Σ) ↠ ℋ`,
//! `σᵢ ↦ u`, `αⱼ ↦ ãⱼ`, `βⱼ ↦ b̃ⱼ`.
//!
//! Words are never rewritten in the braid group; only their images are normalized.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::heis::{Generator, HeisElement, RelationCheck, RelationReport};
use crate::text::parse_word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraidGen {
    Sigma(usize),
    Alpha(usize),
    Beta(usize),
}

impl fmt::Display for BraidGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidGen::Sigma(i) => write!(f, "s{i}"),
            BraidGen::Alpha(i) => write!(f, "a{i}"),
            BraidGen::Beta(i) => write!(f, "b{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    genus: usize,
    strands: usize,
    letters: Vec<(BraidGen, BigInt)>,
}

impl BraidWord {
    pub fn empty(genus: usize, strands: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall { min: 1, got: 0 });
        }
        if strands == 0 {
            return Err(Error::InvalidArgument(
                "strand count must be positive".into(),
            ));
        }
        Ok(Self {
            genus,
            strands,
            letters: Vec::new(),
        })
    }

    fn check(&self, g: BraidGen) -> Result<()> {
        match g {
            BraidGen::Sigma(i) if i == 0 || i >= self.strands => Err(Error::IndexOutOfRange {
                index: i,
                max: self.strands.saturating_sub(1),
            }),
            BraidGen::Alpha(i) | BraidGen::Beta(i) if i == 0 || i > self.genus => {
                Err(Error::IndexOutOfRange {
                    index: i,
                    max: self.genus,
                })
            }
            _ => Ok(()),
        }
    }

    pub fn from_letters(
        genus: usize,
        strands: usize,
        letters: Vec<(BraidGen, BigInt)>,
    ) -> Result<Self> {
        let mut w = Self::empty(genus, strands)?;
        for (g, e) in letters {
            w.check(g)?;
            if !e.is_zero() {
                w.letters.push((g, e));
            }
        }
        Ok(w)
    }

    /// Parses e.g. `s1 a1^-1 b1 s1^-1`; `σ`, `α`, `β` are accepted and a bare letter means
    /// index 1.
    pub fn parse(input: &str, genus: usize, strands: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for l in parse_word(input)? {
            let i = l.index.unwrap_or(1);
            let g = match l.symbol {
                's' => BraidGen::Sigma(i),
                'a' => BraidGen::Alpha(i),
                'b' => BraidGen::Beta(i),
                other => return Err(Error::UnknownGenerator(other.to_string())),
            };
            letters.push((g, l.exponent));
        }
        Self::from_letters(genus, strands, letters)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(BraidGen, BigInt)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if (self.genus, self.strands) != (other.genus, other.strands) {
            return Err(Error::InvalidArgument(
                "braid words live on different surfaces".into(),
            ));
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(Self {
            letters,
            ..self.clone()
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|(g, e)| (*g, -e)).collect(),
            ..self.clone()
        }
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.concat(other)?
            .concat(&self.inverse())?
            .concat(&other.inverse())
    }

    pub fn phi(&self) -> HeisElement {
        let word: Vec<(Generator, BigInt)> = self
            .letters
            .iter()
            .map(|(g, e)| {
                let gen = match *g {
                    BraidGen::Sigma(_) => Generator::U,
                    BraidGen::Alpha(i) => Generator::A(i),
                    BraidGen::Beta(i) => Generator::B(i),
                };
                (gen, e.clone())
            })
            .collect();
        HeisElement::from_word(self.genus, &word).expect("indices validated at construction")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(g, e)| {
                if e.is_one() {
                    g.to_string()
                } else {
                    format!("{g}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Checks `φ(LHS) = φ(RHS)` on every instance of Bellingeri's relations at `(g, n)`.
pub fn verify_bellingeri(genus: usize, strands: usize) -> Result<RelationReport> {
    if genus == 0 {
        return Err(Error::GenusTooSmall { min: 1, got: 0 });
    }
    if strands < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 strands, got {strands}"
        )));
    }
    let w = |s: &str| BraidWord::parse(s, genus, strands).expect("well-formed relation word");
    let mut checks = Vec::new();
    let mut push = |name: String, lhs: BraidWord, rhs: BraidWord| {
        let (lv, rv) = (lhs.phi(), rhs.phi());
        checks.push(RelationCheck {
            name,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds: lv == rv,
            lhs_value: lv,
            rhs_value: rv,
        });
    };
    let one = BraidWord::empty(genus, strands)?;
    for i in 1..strands {
        for j in 1..strands {
            let si = w(&format!("s{i}"));
            let sj = w(&format!("s{j}"));
            if i.abs_diff(j) >= 2 && i < j {
                push(format!("BR1 i={i} j={j}"), si.commutator(&sj)?, one.clone());
            }
            if i.abs_diff(j) == 1 {
                push(
                    format!("BR2 i={i} j={j}"),
                    w(&format!("s{i} s{j} s{i}")),
                    w(&format!("s{j} s{i} s{j}")),
                );
            }
        }
    }
    for r in 1..=genus {
        let (a, b) = (w(&format!("a{r}")), w(&format!("b{r}")));
        for i in 2..strands {
            let si = w(&format!("s{i}"));
            push(
                format!("CR1 alpha r={r} i={i}"),
                a.commutator(&si)?,
                one.clone(),
            );
            push(
                format!("CR1 beta r={r} i={i}"),
                b.commutator(&si)?,
                one.clone(),
            );
        }
        push(
            format!("CR2 alpha r={r}"),
            a.commutator(&w(&format!("s1 a{r} s1")))?,
            one.clone(),
        );
        push(
            format!("CR2 beta r={r}"),
            b.commutator(&w(&format!("s1 b{r} s1")))?,
            one.clone(),
        );
        for s in (r + 1)..=genus {
            for (x, xn) in [(&a, "alpha"), (&b, "beta")] {
                for (y, yn) in [('a', "alpha"), ('b', "beta")] {
                    push(
                        format!("CR3 {xn}_{r} {yn}_{s}"),
                        x.commutator(&w(&format!("s1^-1 {y}{s} s1")))?,
                        one.clone(),
                    );
                }
            }
        }
        push(
            format!("SCR r={r}"),
            w(&format!("s1 b{r} s1 a{r} s1")),
            w(&format!("a{r} s1 b{r}")),
        );
    }
    Ok(RelationReport {
        title: format!("Bellingeri relations, genus {genus}, {strands} strands"),
        checks,
    })
}

/// An explicit preimage word for a generator of `ℋ`.
pub fn preimage_of(genus: usize, strands: usize, g: Generator) -> Result<BraidWord> {
    let letter = match g {
        Generator::U => BraidGen::Sigma(1),
        Generator::A(i) => BraidGen::Alpha(i),
        Generator::B(i) => BraidGen::Beta(i),
    };
    BraidWord::from_letters(genus, strands, vec![(letter, BigInt::one())])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        let w = BraidWord::parse("s1", 1, 2).unwrap();
        assert_eq!(w.phi(), HeisElement::u(1));
        let w = BraidWord::parse("a1^-1 b1 a1^-1 b1", 1, 2).unwrap();
        assert_eq!(w.phi(), HeisElement::from_ints(-2, &[-2, 2]).unwrap());
        assert_eq!(w.phi().to_word_string(), "u^2 a1^-2 b1^2");
        assert!(BraidWord::empty(1, 2).unwrap().phi().is_identity());
    }

    #[test]
    fn parse_validates_indices() {
        assert!(BraidWord::parse("s2", 1, 2).is_err());
        assert!(BraidWord::parse("a2", 1, 2).is_err());
        assert!(BraidWord::parse("x1", 1, 2).is_err());
        assert!(BraidWord::parse("s2 a2", 2, 3).is_ok());
        let w = BraidWord::parse("σ1 α1^{-1} β1", 1, 2).unwrap();
        assert_eq!(w.to_string(), "s1 a1^-1 b1");
    }

    #[test]
    fn bellingeri_relations_hold() {
        for g in 1..=3 {
            for n in 2..=4 {
                let r = verify_bellingeri(g, n).unwrap();
                assert!(
                    r.all_hold(),
                    "{g} {n}: {:?}",
                    r.failures().collect::<Vec<_>>()
                );
            }
        }
        let r = verify_bellingeri(2, 3).unwrap();
        assert_eq!(
            r.checks
                .iter()
                .filter(|c| c.name.starts_with("CR3"))
                .count(),
            4
        );
        assert!(verify_bellingeri(1, 1).is_err());
    }

    #[test]
    fn scr_values() {
        let r = verify_bellingeri(1, 2).unwrap();
        let scr = r.checks.iter().find(|c| c.name.starts_with("SCR")).unwrap();
        assert_eq!(scr.lhs_value, HeisElement::from_ints(2, &[1, 1]).unwrap());
    }

    #[test]
    fn preimages() {
        for g in [Generator::U, Generator::A(2), Generator::B(1)] {
            assert_eq!(preimage_of(2, 3, g).unwrap().phi(), g.element(2).unwrap());
        }
    }
}
