//! Sparse arithmetic in the group ring `ℤ[ℋ]` and its specializations.
//!
//! A [`HeisPolynomial`] is a finitely supported map `ℋ → ℤ` held in an ordered map, so
//! printing and serialization are deterministic. Three quotient targets are provided:
//!
//! * `ℤ[u]/(u² − 1)`: `u ↦ σ`, `aᵢ, bᵢ ↦ 1` (the Moriyama quotient `ℋ ↠ ℤ/2`);
//! * the commutative Laurent ring `ℤ[H]`: `u ↦ 1`;
//! * `ℤ[ℋ/⟨u^N⟩]`.
//!
//! The Moriyama map sends `(k, x)` to `σ^κ` with `κ = k − Σ lᵢmᵢ` the word-form exponent,
//! because `κ mod 2` (unlike `k mod 2`) is a homomorphism.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::heis::{Generator, HeisElement};
use crate::text::{Token, TokenStream};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisPolynomial {
    genus: usize,
    terms: BTreeMap<HeisElement, BigInt>,
}

impl HeisPolynomial {
    pub fn zero(genus: usize) -> Self {
        assert!(genus >= 1, "genus must be positive");
        Self {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(genus: usize) -> Self {
        Self::monomial(HeisElement::identity(genus), 1)
    }

    pub fn monomial(e: HeisElement, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(e.genus());
        p.add_term(e, c.into());
        p
    }

    pub fn constant(genus: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(HeisElement::identity(genus), c)
    }

    /// Builds a polynomial from `(element, coefficient)` pairs, combining repeats.
    pub fn from_terms<I>(genus: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (HeisElement, BigInt)>,
    {
        let mut p = Self::zero(genus);
        for (e, c) in terms {
            if e.genus() != genus {
                return Err(Error::GenusMismatch {
                    left: e.genus(),
                    right: genus,
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| e.is_identity() && c.is_one())
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&HeisElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &HeisElement) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, e: HeisElement, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.genus(), self.genus);
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_genus(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_genus(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            genus: self.genus,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero(self.genus);
        }
        Self {
            genus: self.genus,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    /// Product, extending the group law bilinearly.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_genus(other)?;
        let mut out = Self::zero(self.genus);
        for (x, c) in &self.terms {
            for (y, d) in &other.terms {
                out.add_term(x.mul_unchecked(y), c * d);
            }
        }
        Ok(out)
    }

    /// `p · h` for a group element `h`.
    pub fn mul_element_right(&self, h: &HeisElement) -> Result<Self> {
        if h.genus() != self.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: h.genus(),
            });
        }
        Ok(Self {
            genus: self.genus,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.mul_unchecked(h), c.clone()))
                .collect(),
        })
    }

    /// `h · p` for a group element `h`.
    pub fn mul_element_left(&self, h: &HeisElement) -> Result<Self> {
        if h.genus() != self.genus {
            return Err(Error::GenusMismatch {
                left: h.genus(),
                right: self.genus,
            });
        }
        Ok(Self {
            genus: self.genus,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (h.mul_unchecked(e), c.clone()))
                .collect(),
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.genus);
        for _ in 0..n {
            acc = acc.mul(self).expect("same genus");
        }
        acc
    }

    /// Returns `(±1, h)` when `self = ±h`; the units of `ℤ[ℋ]` are exactly these.
    pub fn as_unit(&self) -> Option<(BigInt, HeisElement)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.abs().is_one() {
            Some((c.clone(), e.clone()))
        } else {
            None
        }
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, e) = self.as_unit()?;
        Some(Self::monomial(e.inverse(), c))
    }

    /// Maps every group element through `f`, keeping coefficients.
    pub fn map_elements<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&HeisElement) -> HeisElement,
    {
        let mut out = Self::zero(self.genus);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Reinterprets the polynomial in a larger genus, putting it on the first handles.
    pub fn embed(&self, genus: usize) -> Result<Self> {
        if genus < self.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: genus,
            });
        }
        let mut out = Self::zero(genus);
        for (e, c) in &self.terms {
            let mut coords = e.coords().to_vec();
            coords.resize(2 * genus, BigInt::zero());
            out.add_term(HeisElement::new(e.k().clone(), coords)?, c.clone());
        }
        Ok(out)
    }

    /// Parses an expression over `ℤ[ℋ]`, e.g.
    /// `u^{-8}b^2 + (u^{-1}-u^{-2})a^{-2}b - 3 u a1 b2`.
    ///
    /// Juxtaposition is multiplication in the group ring (so order matters), `(…)^n`
    /// raises to a non-negative power, and bare `a`/`b` abbreviate `a1`/`b1`.
    pub fn parse(input: &str, genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall { min: 1, got: 0 });
        }
        let mut ts = TokenStream::new(input)?;
        if ts.at_end() {
            return Err(Error::Parse("empty expression".into()));
        }
        let p = parse_sum(&mut ts, genus)?;
        if !ts.at_end() {
            return Err(Error::Parse(format!(
                "trailing input after expression `{input}`: {:?}",
                ts.peek()
            )));
        }
        Ok(p)
    }

    /// Canonical plain rendering: terms in canonical order as `c·word`.
    pub fn to_plain_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let word = e.to_word_string();
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if word == "1" {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&word);
            } else {
                s.push_str(&format!("{abs} {word}"));
            }
        }
        s
    }

    /// LaTeX rendering grouping terms by their `H`-part, with a Laurent polynomial in `u`
    /// as coefficient, e.g. `(u^{-1}-u^{-2})a^{-2}b`.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut groups: BTreeMap<Vec<BigInt>, BTreeMap<BigInt, BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let slot = groups.entry(e.coords().to_vec()).or_default();
            *slot.entry(e.word_exponent()).or_default() += c;
        }
        let genus = self.genus;
        let mut pieces: Vec<(bool, String)> = Vec::new();
        // the u-only part first, as in the usual display
        let mut ordered: Vec<_> = groups.into_iter().collect();
        ordered.sort_by_key(|(coords, _)| !coords.iter().all(Zero::is_zero));
        for (coords, upoly) in ordered {
            let mono = latex_monomial(&coords, genus);
            let nonzero: Vec<_> = upoly.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if nonzero.is_empty() {
                continue;
            }
            if nonzero.len() == 1 {
                let (kappa, c) = &nonzero[0];
                let u = latex_u(kappa);
                let body = join_nonempty(&u, &mono);
                pieces.push((c.is_negative(), coef_prefix(&c.abs(), &body)));
            } else {
                // descending powers of u inside the parentheses
                let mut inner = String::new();
                for (i, (kappa, c)) in nonzero.iter().rev().enumerate() {
                    let u = latex_u(kappa);
                    let t = coef_prefix(&c.abs(), &u);
                    if i == 0 {
                        if c.is_negative() {
                            inner.push('-');
                        }
                    } else {
                        inner.push(if c.is_negative() { '-' } else { '+' });
                    }
                    inner.push_str(&t);
                }
                if mono.is_empty() {
                    pieces.push((false, inner));
                } else {
                    pieces.push((false, format!("({inner}){mono}")));
                }
            }
        }
        let mut s = String::new();
        for (i, (neg, body)) in pieces.iter().enumerate() {
            if i == 0 {
                if *neg {
                    s.push('-');
                }
            } else {
                s.push_str(if *neg { " - " } else { " + " });
            }
            s.push_str(body);
        }
        s
    }
}

fn join_nonempty(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ => format!("{a}{b}"),
    }
}

fn coef_prefix(c: &BigInt, body: &str) -> String {
    if body.is_empty() {
        c.to_string()
    } else if c.is_one() {
        body.to_string()
    } else {
        format!("{c}{body}")
    }
}

fn latex_pow(base: &str, e: &BigInt) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        base.to_string()
    } else {
        format!("{base}^{{{e}}}")
    }
}

fn latex_u(kappa: &BigInt) -> String {
    latex_pow("u", kappa)
}

fn latex_monomial(coords: &[BigInt], genus: usize) -> String {
    let mut s = String::new();
    for (i, c) in coords.chunks_exact(2).enumerate() {
        let (a, b) = if genus == 1 {
            ("a".to_string(), "b".to_string())
        } else {
            (format!("a_{{{}}}", i + 1), format!("b_{{{}}}", i + 1))
        };
        s.push_str(&latex_pow(&a, &c[0]));
        s.push_str(&latex_pow(&b, &c[1]));
    }
    s
}

fn parse_sum(ts: &mut TokenStream, genus: usize) -> Result<HeisPolynomial> {
    let mut acc = HeisPolynomial::zero(genus);
    let mut sign = match ts.peek() {
        Some(Token::Minus) => {
            ts.next();
            -1
        }
        Some(Token::Plus) => {
            ts.next();
            1
        }
        _ => 1,
    };
    loop {
        let t = parse_product(ts, genus)?;
        acc = if sign < 0 { acc.sub(&t)? } else { acc.add(&t)? };
        match ts.peek() {
            Some(Token::Plus) => {
                ts.next();
                sign = 1;
            }
            Some(Token::Minus) => {
                ts.next();
                sign = -1;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_product(ts: &mut TokenStream, genus: usize) -> Result<HeisPolynomial> {
    let mut acc: Option<HeisPolynomial> = None;
    loop {
        match ts.peek() {
            None | Some(Token::Plus) | Some(Token::Minus) | Some(Token::RParen) => break,
            Some(Token::Star) => {
                ts.next();
                continue;
            }
            _ => {}
        }
        let f = parse_factor(ts, genus)?;
        acc = Some(match acc {
            None => f,
            Some(a) => a.mul(&f)?,
        });
    }
    acc.ok_or_else(|| Error::Parse("expected a term".into()))
}

fn parse_factor(ts: &mut TokenStream, genus: usize) -> Result<HeisPolynomial> {
    match ts.next() {
        Some(Token::Num(n)) => Ok(HeisPolynomial::constant(genus, n)),
        Some(Token::Sym(s, idx)) => {
            let g = Generator::from_symbol(s, idx)?;
            let e = ts.exponent()?;
            Ok(HeisPolynomial::monomial(g.element(genus)?.pow(&e), 1))
        }
        Some(Token::LParen) => {
            let inner = parse_sum(ts, genus)?;
            ts.expect(Token::RParen)?;
            if ts.peek() == Some(&Token::Caret) {
                let e = ts.exponent()?;
                if e.is_negative() {
                    let inv = inner
                        .unit_inverse()
                        .ok_or_else(|| Error::Parse("negative power of a non-unit".into()))?;
                    let n: u32 = (-e)
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(inv.pow(n));
                }
                let n: u32 = e
                    .try_into()
                    .map_err(|_| Error::Parse("exponent too large".into()))?;
                return Ok(inner.pow(n));
            }
            Ok(inner)
        }
        other => Err(Error::Parse(format!("unexpected {other:?} in expression"))),
    }
}

impl fmt::Display for HeisPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain_string())
    }
}

/// Target ring of a specialization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpecializationTarget {
    /// `ℤ[u]/(u² − 1)`, all `aᵢ, bᵢ ↦ 1`.
    Moriyama,
    /// The commutative Laurent ring `ℤ[a₁^±, …, b_g^±]`, `u ↦ 1`.
    Abelian,
    /// `ℤ[ℋ/⟨u^N⟩]`.
    Torsion(BigInt),
}

impl SpecializationTarget {
    /// Parses `moriyama`, `abelian` or `torsionN` (e.g. `torsion3`).
    pub fn parse(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "moriyama" => Ok(Self::Moriyama),
            "abelian" | "abelianize" => Ok(Self::Abelian),
            _ => {
                let rest = lower
                    .strip_prefix("torsion")
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown target `{s}`")))?;
                let n: BigInt = rest
                    .trim_start_matches(['=', ':'])
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad torsion order in `{s}`")))?;
                if !n.is_positive() {
                    return Err(Error::InvalidArgument("torsion order must be >= 1".into()));
                }
                Ok(Self::Torsion(n))
            }
        }
    }
}

/// An element of one of the specialization targets, in that target's canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpecializedPolynomial {
    /// `c0 + c1·u` in `ℤ[u]/(u² − 1)`.
    Moriyama { c0: BigInt, c1: BigInt },
    /// Laurent polynomial keyed by exponent vectors `(l₁, m₁, …)`.
    Abelian {
        genus: usize,
        terms: BTreeMap<Vec<BigInt>, BigInt>,
    },
    /// Element of `ℤ[ℋ_N]`; keys are representatives whose word exponent lies in `[0, N)`.
    Torsion {
        n: BigInt,
        genus: usize,
        terms: BTreeMap<HeisElement, BigInt>,
    },
}

fn insert_nonzero<K: Ord>(map: &mut BTreeMap<K, BigInt>, k: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(k).or_default();
    *slot += c;
    // a zero coefficient is never stored
    if slot.is_zero() {
        map.retain(|_, v| !v.is_zero());
    }
}

fn torsion_rep(e: &HeisElement, n: &BigInt) -> HeisElement {
    let kappa = e.word_exponent().mod_floor(n);
    HeisElement::from_word_form(kappa, e.coords().to_vec()).expect("valid coords")
}

impl SpecializedPolynomial {
    pub fn target(&self) -> SpecializationTarget {
        match self {
            Self::Moriyama { .. } => SpecializationTarget::Moriyama,
            Self::Abelian { .. } => SpecializationTarget::Abelian,
            Self::Torsion { n, .. } => SpecializationTarget::Torsion(n.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Moriyama { c0, c1 } => c0.is_zero() && c1.is_zero(),
            Self::Abelian { terms, .. } => terms.is_empty(),
            Self::Torsion { terms, .. } => terms.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Self::Moriyama { c0, c1 } => c0.is_one() && c1.is_zero(),
            Self::Abelian { terms, .. } => {
                terms.len() == 1
                    && terms
                        .iter()
                        .all(|(k, c)| c.is_one() && k.iter().all(Zero::is_zero))
            }
            Self::Torsion { terms, .. } => {
                terms.len() == 1 && terms.iter().all(|(e, c)| c.is_one() && e.is_identity())
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Self::Moriyama { c0, c1 }, Self::Moriyama { c0: d0, c1: d1 }) => Ok(Self::Moriyama {
                c0: c0 + d0,
                c1: c1 + d1,
            }),
            (
                Self::Abelian { genus, terms },
                Self::Abelian {
                    genus: g2,
                    terms: t2,
                },
            ) if genus == g2 => {
                let mut out = terms.clone();
                for (k, c) in t2 {
                    insert_nonzero(&mut out, k.clone(), c.clone());
                }
                Ok(Self::Abelian {
                    genus: *genus,
                    terms: out,
                })
            }
            (
                Self::Torsion { n, genus, terms },
                Self::Torsion {
                    n: n2,
                    genus: g2,
                    terms: t2,
                },
            ) if n == n2 && genus == g2 => {
                let mut out = terms.clone();
                for (k, c) in t2 {
                    insert_nonzero(&mut out, k.clone(), c.clone());
                }
                Ok(Self::Torsion {
                    n: n.clone(),
                    genus: *genus,
                    terms: out,
                })
            }
            _ => Err(Error::InvalidArgument(
                "specialized polynomials live in different rings".into(),
            )),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Self::Moriyama { c0, c1 }, Self::Moriyama { c0: d0, c1: d1 }) => Ok(Self::Moriyama {
                c0: c0 * d0 + c1 * d1,
                c1: c0 * d1 + c1 * d0,
            }),
            (
                Self::Abelian { genus, terms },
                Self::Abelian {
                    genus: g2,
                    terms: t2,
                },
            ) if genus == g2 => {
                let mut out = BTreeMap::new();
                for (x, c) in terms {
                    for (y, d) in t2 {
                        let k: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                        insert_nonzero(&mut out, k, c * d);
                    }
                }
                Ok(Self::Abelian {
                    genus: *genus,
                    terms: out,
                })
            }
            (
                Self::Torsion { n, genus, terms },
                Self::Torsion {
                    n: n2,
                    genus: g2,
                    terms: t2,
                },
            ) if n == n2 && genus == g2 => {
                let mut out = BTreeMap::new();
                for (x, c) in terms {
                    for (y, d) in t2 {
                        insert_nonzero(&mut out, torsion_rep(&x.mul_unchecked(y), n), c * d);
                    }
                }
                Ok(Self::Torsion {
                    n: n.clone(),
                    genus: *genus,
                    terms: out,
                })
            }
            _ => Err(Error::InvalidArgument(
                "specialized polynomials live in different rings".into(),
            )),
        }
    }

    /// Evaluates a torsion-quotient element supported on the centre at `u ↦ z`.
    /// Returns `None` when some term has a non-central part or the target is not
    /// a torsion quotient.
    pub fn eval_central_torsion(
        &self,
        z: num_complex::Complex64,
    ) -> Option<num_complex::Complex64> {
        match self {
            Self::Torsion { terms, .. } => {
                let mut acc = num_complex::Complex64::new(0.0, 0.0);
                for (e, c) in terms {
                    if !e.is_central() {
                        return None;
                    }
                    let kappa: i32 = e.word_exponent().try_into().ok()?;
                    let cf: f64 = c.to_string().parse().ok()?;
                    acc += z.powi(kappa) * cf;
                }
                Some(acc)
            }
            _ => None,
        }
    }

    pub fn to_plain_string(&self) -> String {
        fn join(parts: Vec<(BigInt, String)>) -> String {
            if parts.is_empty() {
                return "0".into();
            }
            let mut s = String::new();
            for (i, (c, w)) in parts.iter().enumerate() {
                let neg = c.is_negative();
                let abs = c.abs();
                if i == 0 {
                    if neg {
                        s.push('-');
                    }
                } else {
                    s.push_str(if neg { " - " } else { " + " });
                }
                if w == "1" {
                    s.push_str(&abs.to_string());
                } else if abs.is_one() {
                    s.push_str(w);
                } else {
                    s.push_str(&format!("{abs} {w}"));
                }
            }
            s
        }
        match self {
            Self::Moriyama { c0, c1 } => {
                let mut parts = Vec::new();
                if !c0.is_zero() {
                    parts.push((c0.clone(), "1".to_string()));
                }
                if !c1.is_zero() {
                    parts.push((c1.clone(), "u".to_string()));
                }
                join(parts)
            }
            Self::Abelian { terms, .. } => join(
                terms
                    .iter()
                    .map(|(k, c)| {
                        let e = HeisElement::from_word_form(0, k.clone()).expect("coords");
                        (c.clone(), e.to_word_string())
                    })
                    .collect(),
            ),
            Self::Torsion { terms, .. } => join(
                terms
                    .iter()
                    .map(|(e, c)| (c.clone(), e.to_word_string()))
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for SpecializedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain_string())
    }
}

/// `ℤ[ℋ] → ℤ[u]/(u² − 1)`, `(k, x) ↦ u^{κ mod 2}`.
pub fn specialize_moriyama(p: &HeisPolynomial) -> SpecializedPolynomial {
    let mut c0 = BigInt::zero();
    let mut c1 = BigInt::zero();
    for (e, c) in p.terms() {
        if e.word_exponent().is_even() {
            c0 += c;
        } else {
            c1 += c;
        }
    }
    SpecializedPolynomial::Moriyama { c0, c1 }
}

/// `ℤ[ℋ] → ℤ[H]`, `u ↦ 1`.
pub fn specialize_abelianize(p: &HeisPolynomial) -> SpecializedPolynomial {
    let mut terms = BTreeMap::new();
    for (e, c) in p.terms() {
        insert_nonzero(&mut terms, e.coords().to_vec(), c.clone());
    }
    SpecializedPolynomial::Abelian {
        genus: p.genus(),
        terms,
    }
}

/// `ℤ[ℋ] → ℤ[ℋ/⟨u^N⟩]`.
pub fn specialize_torsion(p: &HeisPolynomial, n: &BigInt) -> Result<SpecializedPolynomial> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "torsion order must be >= 1, got {n}"
        )));
    }
    let mut terms = BTreeMap::new();
    for (e, c) in p.terms() {
        insert_nonzero(&mut terms, torsion_rep(e, n), c.clone());
    }
    Ok(SpecializedPolynomial::Torsion {
        n: n.clone(),
        genus: p.genus(),
        terms,
    })
}

pub fn specialize(
    p: &HeisPolynomial,
    target: &SpecializationTarget,
) -> Result<SpecializedPolynomial> {
    match target {
        SpecializationTarget::Moriyama => Ok(specialize_moriyama(p)),
        SpecializationTarget::Abelian => Ok(specialize_abelianize(p)),
        SpecializationTarget::Torsion(n) => specialize_torsion(p, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HeisPolynomial {
        HeisPolynomial::parse(s, 1).unwrap()
    }

    #[test]
    fn product_from_the_ma_entry() {
        let lhs = p("u^-1 - 1").mul(&p("a^-1 b")).unwrap();
        assert_eq!(lhs, p("u^-1 a^-1 b - a^-1 b"));
        assert_eq!(lhs, p("(u^{-1}-1)a^{-1}b"));
    }

    #[test]
    fn one_is_neutral() {
        let x = p("3 u^2 a^-1 b - b + 7");
        assert_eq!(x.mul(&HeisPolynomial::one(1)).unwrap(), x);
        assert_eq!(HeisPolynomial::one(1).mul(&x).unwrap(), x);
    }

    #[test]
    fn commutation_relation_in_the_ring() {
        let d = p("a")
            .mul(&p("b"))
            .unwrap()
            .sub(&p("u^2").mul(&p("b a")).unwrap())
            .unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn no_zero_coefficients_are_stored() {
        let x = p("a - a + b");
        assert_eq!(x.len(), 1);
        assert_eq!(x, p("b"));
        assert!(p("u - u").is_zero());
    }

    #[test]
    fn genus_mismatch() {
        let x = HeisPolynomial::one(1);
        let y = HeisPolynomial::one(2);
        assert!(x.mul(&y).is_err());
        assert!(x.add(&y).is_err());
    }

    #[test]
    fn plain_rendering_round_trips() {
        for s in ["u^2 a1^-2 b1^2", "-u^-1 a1^-1 b1 + 3 a1^-1 b1 - 2", "0"] {
            if s == "0" {
                assert_eq!(HeisPolynomial::zero(1).to_plain_string(), "0");
                continue;
            }
            let x = p(s);
            assert_eq!(p(&x.to_plain_string()), x);
        }
    }

    #[test]
    fn latex_groups_by_homology_part() {
        assert_eq!(
            p("(u^{-1}-u^{-2})a^{-2}b").to_latex(),
            "(u^{-1}-u^{-2})a^{-2}b"
        );
        assert_eq!(p("u^{-8}b^2").to_latex(), "u^{-8}b^{2}");
        assert_eq!(p("-u^-1").to_latex(), "-u^{-1}");
    }

    #[test]
    fn moriyama_examples() {
        let m = specialize_moriyama(&p("u^2 a^-2 b^2"));
        assert!(m.is_one());
        let m = specialize_moriyama(&p("(u^-1 - 1) a^-1 b"));
        assert_eq!(
            m,
            SpecializedPolynomial::Moriyama {
                c0: BigInt::from(-1),
                c1: BigInt::from(1)
            }
        );
        let pp = p("-a^-1 b + u^-2 b + u^-2 a^-1");
        assert!(specialize_moriyama(&pp).is_one());
    }

    #[test]
    fn abelian_examples() {
        assert_eq!(
            specialize_abelianize(&p("u^2 a^-2 b^2")).to_plain_string(),
            "a1^-2 b1^2"
        );
        let q = p("1 - a + u^-2 - u^-2 a^-1");
        assert_eq!(
            specialize_abelianize(&q),
            specialize_abelianize(&p("2 - a - a^-1"))
        );
        assert!(specialize_abelianize(&HeisPolynomial::zero(1)).is_zero());
    }

    #[test]
    fn torsion_examples() {
        let two = BigInt::from(2);
        assert_eq!(
            specialize_torsion(&p("u^3"), &two)
                .unwrap()
                .to_plain_string(),
            "u"
        );
        assert_eq!(
            specialize_torsion(&p("u^2 a^-2 b^2"), &two)
                .unwrap()
                .to_plain_string(),
            "a1^-2 b1^2"
        );
        assert!(specialize_torsion(&p("u"), &BigInt::zero()).is_err());
        let x = p("3 u^5 a b^-1 - u^-3 + a^2");
        let t1 = specialize_torsion(&x, &BigInt::one()).unwrap();
        assert_eq!(
            t1,
            specialize_torsion(&p("3 a b^-1 - 1 + a^2"), &BigInt::one()).unwrap()
        );
        match t1 {
            SpecializedPolynomial::Torsion { terms, .. } => {
                assert!(terms.keys().all(|e| e.word_exponent().is_zero()));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn target_parsing() {
        assert_eq!(
            SpecializationTarget::parse("torsion5").unwrap(),
            SpecializationTarget::Torsion(BigInt::from(5))
        );
        assert_eq!(
            SpecializationTarget::parse("moriyama").unwrap(),
            SpecializationTarget::Moriyama
        );
        assert!(SpecializationTarget::parse("torsion0").is_err());
        assert!(SpecializationTarget::parse("bogus").is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(HeisPolynomial::parse("", 1).is_err());
        assert!(HeisPolynomial::parse("a +", 1).is_err());
        assert!(HeisPolynomial::parse("(a", 1).is_err());
        assert!(HeisPolynomial::parse("(1+a)^-1", 1).is_err());
        assert_eq!(
            HeisPolynomial::parse("(u a)^-1", 1).unwrap(),
            HeisPolynomial::parse("a^-1 u^-1", 1).unwrap()
        );
    }
}
