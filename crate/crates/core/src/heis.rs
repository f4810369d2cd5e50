//! Normal-form arithmetic in the discrete Heisenberg group `ℋ = ℤ × H₁(Σ_{g,1})`.
//!
//! Elements are stored in pair form `(k, x)` with `x = Σ lᵢaᵢ + mᵢbᵢ`, and multiply by
//!
//! ```text
//! (k, x)·(l, y) = (k + l + ω(x, y), x + y)
//! ```
//!
//! where `ω(aᵢ, bⱼ) = δᵢⱼ`. The word form `u^κ a₁^{l₁} b₁^{m₁} … a_g^{l_g} b_g^{m_g}` is a
//! derived view with `κ = k − Σ lᵢmᵢ`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::text::{self, Token, TokenStream};

/// The standard symplectic form on `H₁(Σ_{g,1}) ≅ ℤ^{2g}` in the ordered basis
/// `(a₁, b₁, …, a_g, b_g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymplecticForm {
    genus: usize,
}

impl SymplecticForm {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall { min: 1, got: 0 });
        }
        Ok(Self { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// `ω(x, y) = Σᵢ (lᵢ m'ᵢ − mᵢ l'ᵢ)`.
    pub fn eval(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        omega(x, y)
    }

    /// Value of `ω` on a pair of basis vectors (`J` entry).
    pub fn basis_value(&self, i: usize, j: usize) -> i64 {
        if i / 2 != j / 2 {
            return 0;
        }
        match (i % 2, j % 2) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        }
    }
}

pub(crate) fn omega(x: &[BigInt], y: &[BigInt]) -> BigInt {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = BigInt::zero();
    for (xs, ys) in x.chunks_exact(2).zip(y.chunks_exact(2)) {
        acc += &xs[0] * &ys[1] - &xs[1] * &ys[0];
    }
    acc
}

/// A generator of the presentation `⟨u, ã₁, b̃₁, …⟩` of `ℋ`; indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    U,
    A(usize),
    B(usize),
}

impl Generator {
    pub fn element(&self, genus: usize) -> Result<HeisElement> {
        let mut e = HeisElement::identity(genus);
        match *self {
            Generator::U => e.k = BigInt::one(),
            Generator::A(i) | Generator::B(i) => {
                if i == 0 || i > genus {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        max: genus,
                    });
                }
                let slot = 2 * (i - 1) + usize::from(matches!(self, Generator::B(_)));
                e.coords[slot] = BigInt::one();
            }
        }
        Ok(e)
    }

    pub(crate) fn from_symbol(symbol: char, index: Option<usize>) -> Result<Self> {
        match (symbol, index) {
            ('u', None) => Ok(Generator::U),
            ('a', i) => Ok(Generator::A(i.unwrap_or(1))),
            ('b', i) => Ok(Generator::B(i.unwrap_or(1))),
            (s, Some(i)) => Err(Error::UnknownGenerator(format!("{s}{i}"))),
            (s, None) => Err(Error::UnknownGenerator(s.to_string())),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::U => write!(f, "u"),
            Generator::A(i) => write!(f, "a{i}"),
            Generator::B(i) => write!(f, "b{i}"),
        }
    }
}

/// An element `(k, x)` of `ℋ` in pair form.
///
/// Field order gives the canonical lexicographic ordering on `(k, coords)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisElement {
    k: BigInt,
    coords: Vec<BigInt>,
}

impl HeisElement {
    /// Builds `(k, coords)`; `coords` must have even positive length `2g`.
    pub fn new(k: impl Into<BigInt>, coords: Vec<BigInt>) -> Result<Self> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "coordinate vector of length {} is not 2g for g >= 1",
                coords.len()
            )));
        }
        Ok(Self {
            k: k.into(),
            coords,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(k: i64, coords: &[i64]) -> Result<Self> {
        Self::new(k, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn identity(genus: usize) -> Self {
        assert!(genus >= 1, "genus must be positive");
        Self {
            k: BigInt::zero(),
            coords: vec![BigInt::zero(); 2 * genus],
        }
    }

    /// The central generator `u = (1, 0)`.
    pub fn u(genus: usize) -> Self {
        let mut e = Self::identity(genus);
        e.k = BigInt::one();
        e
    }

    /// `u^k` as an element of the given genus.
    pub fn central(genus: usize, k: impl Into<BigInt>) -> Self {
        let mut e = Self::identity(genus);
        e.k = k.into();
        e
    }

    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    /// Central coordinate in pair form.
    pub fn k(&self) -> &BigInt {
        &self.k
    }

    /// Homology coordinates `(l₁, m₁, …, l_g, m_g)`.
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_parts(self) -> (BigInt, Vec<BigInt>) {
        (self.k, self.coords)
    }

    pub fn is_identity(&self) -> bool {
        self.k.is_zero() && self.is_central()
    }

    pub fn is_central(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `Σ lᵢmᵢ`, the correction between pair form and word form.
    pub fn quadratic_part(&self) -> BigInt {
        self.coords.chunks_exact(2).map(|c| &c[0] * &c[1]).sum()
    }

    /// The exponent `κ = k − Σ lᵢmᵢ` of `u` in the word normal form.
    pub fn word_exponent(&self) -> BigInt {
        &self.k - self.quadratic_part()
    }

    /// Builds the element whose word normal form is `u^κ Π aᵢ^{lᵢ} bᵢ^{mᵢ}`.
    pub fn from_word_form(kappa: impl Into<BigInt>, coords: Vec<BigInt>) -> Result<Self> {
        let mut e = Self::new(0, coords)?;
        e.k = kappa.into() + e.quadratic_part();
        Ok(e)
    }

    fn check_genus(&self, other: &Self) -> Result<()> {
        if self.coords.len() != other.coords.len() {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: other.genus(),
            });
        }
        Ok(())
    }

    /// Group product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_genus(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let k = &self.k + &other.k + omega(&self.coords, &other.coords);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Self { k, coords }
    }

    /// `(k, x)⁻¹ = (−k, −x)`, since `ω(x, −x) = 0`.
    pub fn inverse(&self) -> Self {
        Self {
            k: -&self.k,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Integer power, computed in closed form: `(k, x)^n = (nk, nx)`.
    pub fn pow(&self, n: &BigInt) -> Self {
        Self {
            k: &self.k * n,
            coords: self.coords.iter().map(|c| c * n).collect(),
        }
    }

    /// `self · x · self⁻¹ = (k + 2ω(h̄, x̄), x̄)`.
    pub fn conjugate(&self, x: &Self) -> Result<Self> {
        self.check_genus(x)?;
        Ok(Self {
            k: &x.k + BigInt::from(2) * omega(&self.coords, &x.coords),
            coords: x.coords.clone(),
        })
    }

    /// Group commutator `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_genus(other)?;
        Ok(self
            .mul_unchecked(other)
            .mul_unchecked(&self.inverse())
            .mul_unchecked(&other.inverse()))
    }

    /// Multiplies out a word `Π gᵢ^{eᵢ}` in the presentation generators.
    pub fn from_word(genus: usize, word: &[(Generator, BigInt)]) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall { min: 1, got: 0 });
        }
        let mut acc = Self::identity(genus);
        for (g, e) in word {
            let gen = g.element(genus)?;
            acc = acc.mul_unchecked(&gen.pow(e));
        }
        Ok(acc)
    }

    /// The reduced word `u^κ a₁^{l₁} b₁^{m₁} …` with zero exponents dropped.
    pub fn word(&self) -> Vec<(Generator, BigInt)> {
        let mut w = Vec::new();
        let kappa = self.word_exponent();
        if !kappa.is_zero() {
            w.push((Generator::U, kappa));
        }
        for (i, c) in self.coords.chunks_exact(2).enumerate() {
            if !c[0].is_zero() {
                w.push((Generator::A(i + 1), c[0].clone()));
            }
            if !c[1].is_zero() {
                w.push((Generator::B(i + 1), c[1].clone()));
            }
        }
        w
    }

    /// Word-form rendering, e.g. `u^2 a1^-2 b1^2`; the identity renders as `1`.
    pub fn to_word_string(&self) -> String {
        let w = self.word();
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|(g, e)| {
                if e.is_one() {
                    g.to_string()
                } else {
                    format!("{g}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Pair-form rendering `(k; l1,m1,…)`.
    pub fn to_pair_string(&self) -> String {
        let coords: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        format!("({}; {})", self.k, coords.join(","))
    }

    /// Parses either word form (`u^2 a1^-2 b1^2`, bare `a`/`b` mean handle 1) or pair
    /// form (`(k; l1,m1,…)`).
    pub fn parse(input: &str, genus: usize) -> Result<Self> {
        if input.trim_start().starts_with('(') {
            let e = Self::parse_pair(input)?;
            if e.genus() != genus {
                return Err(Error::GenusMismatch {
                    left: e.genus(),
                    right: genus,
                });
            }
            return Ok(e);
        }
        let letters = text::parse_word(input)?;
        let mut word = Vec::with_capacity(letters.len());
        for l in letters {
            word.push((Generator::from_symbol(l.symbol, l.index)?, l.exponent));
        }
        Self::from_word(genus, &word)
    }

    fn parse_pair(input: &str) -> Result<Self> {
        let mut ts = TokenStream::new(input)?;
        ts.expect(Token::LParen)?;
        let k = ts.signed_int()?;
        match ts.next() {
            Some(Token::Semi) | Some(Token::Comma) => {}
            other => return Err(Error::Parse(format!("expected `;`, found {other:?}"))),
        }
        let mut coords = vec![ts.signed_int()?];
        loop {
            match ts.next() {
                Some(Token::Comma) => coords.push(ts.signed_int()?),
                Some(Token::RParen) => break,
                other => {
                    return Err(Error::Parse(format!(
                        "expected `,` or `)`, found {other:?}"
                    )))
                }
            }
        }
        if !ts.at_end() {
            return Err(Error::Parse(format!("trailing input in `{input}`")));
        }
        Self::new(k, coords)
    }
}

impl fmt::Display for HeisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word_string())
    }
}

/// Parses pair form only; word form needs the ambient genus, see [`HeisElement::parse`].
impl FromStr for HeisElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_pair(s)
    }
}

/// One relation instance of a presentation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub lhs_value: HeisElement,
    pub rhs_value: HeisElement,
    pub holds: bool,
}

/// Outcome of checking every instance of a family of relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub title: String,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Evaluates both sides of every relation of the presentation of `ℋ` in genus `g`:
/// `u` commutes with every `ãᵢ, b̃ᵢ`, `ãᵢb̃ᵢ = u²b̃ᵢãᵢ` and `ãᵢb̃ⱼ = b̃ⱼãᵢ` for `i ≠ j`.
pub fn verify_presentation(genus: usize) -> Result<RelationReport> {
    let mut checks = Vec::new();
    let mut push = |name: String, lhs: String, rhs: String| -> Result<()> {
        let l = HeisElement::parse(&lhs, genus)?;
        let r = HeisElement::parse(&rhs, genus)?;
        checks.push(RelationCheck {
            holds: l == r,
            name,
            lhs,
            rhs,
            lhs_value: l,
            rhs_value: r,
        });
        Ok(())
    };
    for i in 1..=genus {
        push(format!("u·a{i}"), format!("u a{i}"), format!("a{i} u"))?;
        push(format!("u·b{i}"), format!("u b{i}"), format!("b{i} u"))?;
    }
    for i in 1..=genus {
        for j in 1..=genus {
            if i == j {
                push(
                    format!("a{i}·b{j}"),
                    format!("a{i} b{j}"),
                    format!("u^2 b{j} a{i}"),
                )?;
            } else {
                push(
                    format!("a{i}·b{j}"),
                    format!("a{i} b{j}"),
                    format!("b{j} a{i}"),
                )?;
            }
        }
    }
    Ok(RelationReport {
        title: format!("presentation of the Heisenberg group, genus {genus}"),
        checks,
    })
}
