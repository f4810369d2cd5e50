//! Orientation-preserving automorphisms of `ℋ`, stored as pairs `(δ, S) ∈ H* ⋊ Sp(H)`.
//!
//! `(δ, S)` acts by `(k, x) ↦ (k + δ(x), S·x)`. Composition follows
//! `δ_{g∘f} = δ_f + δ_g ∘ S_f`, `S_{g∘f} = S_g S_f`.
//!
//! The module also evaluates Morita's crossed homomorphism from the action of a mapping
//! class on free generators `α₁, β₁, …, α_g, β_g` of `π₁(Σ_{g,1})`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::heis::{omega, HeisElement};
use crate::ring::HeisPolynomial;
use crate::text::parse_word;

type IntMatrix = Vec<Vec<BigInt>>;

fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn mat_vec(a: &IntMatrix, x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

fn row_mat(v: &[BigInt], a: &IntMatrix) -> Vec<BigInt> {
    let m = a.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| v.iter().zip(a).map(|(x, row)| x * &row[j]).sum())
        .collect()
}

/// The Gram matrix of `ω` on the basis `a₁, b₁, …, a_g, b_g`.
pub fn symplectic_j(genus: usize) -> IntMatrix {
    let n = 2 * genus;
    let mut j = vec![vec![BigInt::zero(); n]; n];
    for i in 0..genus {
        j[2 * i][2 * i + 1] = BigInt::one();
        j[2 * i + 1][2 * i] = -BigInt::one();
    }
    j
}

fn transpose(a: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

/// `SᵀJS = J`.
pub fn is_symplectic(s: &IntMatrix) -> bool {
    let n = s.len();
    if n == 0 || !n.is_multiple_of(2) || s.iter().any(|r| r.len() != n) {
        return false;
    }
    let j = symplectic_j(n / 2);
    mat_mul(&mat_mul(&transpose(s), &j), s) == j
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisAutomorphism {
    genus: usize,
    delta: Vec<BigInt>,
    s: IntMatrix,
}

impl HeisAutomorphism {
    /// Builds `(δ, S)`; `S` acts on column vectors of coordinates `(l₁, m₁, …)`.
    pub fn new(delta: Vec<BigInt>, s: IntMatrix) -> Result<Self> {
        let n = delta.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "delta must have even positive length, got {n}"
            )));
        }
        if s.len() != n || s.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("S must be {n}x{n}")));
        }
        if !is_symplectic(&s) {
            return Err(Error::NotSymplectic);
        }
        Ok(Self {
            genus: n / 2,
            delta,
            s,
        })
    }

    pub fn from_ints(delta: &[i64], s: &[&[i64]]) -> Result<Self> {
        Self::new(
            delta.iter().map(|&d| BigInt::from(d)).collect(),
            s.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn identity(genus: usize) -> Self {
        Self {
            genus,
            delta: vec![BigInt::zero(); 2 * genus],
            s: identity_matrix(2 * genus),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn delta(&self) -> &[BigInt] {
        &self.delta
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.s
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.genus)
    }

    pub fn has_trivial_delta(&self) -> bool {
        self.delta.iter().all(Zero::is_zero)
    }

    fn check_genus(&self, genus: usize) -> Result<()> {
        if self.genus != genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: genus,
            });
        }
        Ok(())
    }

    pub fn apply(&self, x: &HeisElement) -> Result<HeisElement> {
        self.check_genus(x.genus())?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &HeisElement) -> HeisElement {
        let coords = x.coords();
        let shift: BigInt = self.delta.iter().zip(coords).map(|(d, c)| d * c).sum();
        HeisElement::new(x.k() + shift, mat_vec(&self.s, coords)).expect("same rank")
    }

    /// Extends the action linearly to `ℤ[ℋ]`.
    pub fn apply_poly(&self, p: &HeisPolynomial) -> Result<HeisPolynomial> {
        self.check_genus(p.genus())?;
        Ok(p.map_elements(|e| self.apply_unchecked(e)))
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Self) -> Result<Self> {
        self.check_genus(f.genus)?;
        let pulled = row_mat(&self.delta, &f.s);
        Ok(Self {
            genus: self.genus,
            delta: f.delta.iter().zip(&pulled).map(|(a, b)| a + b).collect(),
            s: mat_mul(&self.s, &f.s),
        })
    }

    pub fn inverse(&self) -> Self {
        // S⁻¹ = −J Sᵀ J for symplectic S
        let j = symplectic_j(self.genus);
        let s_inv: IntMatrix = mat_mul(&mat_mul(&j, &transpose(&self.s)), &j)
            .into_iter()
            .map(|r| r.into_iter().map(|v| -v).collect())
            .collect();
        let delta = row_mat(&self.delta, &s_inv)
            .into_iter()
            .map(|v| -v)
            .collect();
        Self {
            genus: self.genus,
            delta,
            s: s_inv,
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.genus);
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base).expect("same genus");
        }
        acc
    }

    /// Conjugation by `h`: `x ↦ h x h⁻¹`.
    pub fn inner_of(h: &HeisElement) -> Self {
        let genus = h.genus();
        let n = 2 * genus;
        let delta = (0..n)
            .map(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                omega(h.coords(), &e) * 2
            })
            .collect();
        Self {
            genus,
            delta,
            s: identity_matrix(n),
        }
    }

    /// Some `h = (0, x)` with `inner_of(h) = self`, if one exists.
    pub fn inner_witness(&self) -> Option<HeisElement> {
        if self.s != identity_matrix(2 * self.genus) {
            return None;
        }
        if self.delta.iter().any(|d| d.is_odd()) {
            return None;
        }
        let mut x = vec![BigInt::zero(); 2 * self.genus];
        for i in 0..self.genus {
            x[2 * i] = &self.delta[2 * i + 1] / BigInt::from(2);
            x[2 * i + 1] = -(&self.delta[2 * i] / BigInt::from(2));
        }
        let h = HeisElement::new(0, x).ok()?;
        (Self::inner_of(&h) == *self).then_some(h)
    }

    /// `(T_{aᵢ})_ℋ` on handle `i` (1-based): `aᵢ ↦ aᵢ`, `bᵢ ↦ u⁻¹·(bᵢ − aᵢ)`.
    pub fn twist_a(genus: usize, i: usize) -> Result<Self> {
        Self::handle_twist(genus, i, [0, -1], [[1, -1], [0, 1]])
    }

    /// `(T_{bᵢ})_ℋ` on handle `i` (1-based): `aᵢ ↦ u·(aᵢ + bᵢ)`, `bᵢ ↦ bᵢ`.
    pub fn twist_b(genus: usize, i: usize) -> Result<Self> {
        Self::handle_twist(genus, i, [1, 0], [[1, 0], [1, 1]])
    }

    fn handle_twist(genus: usize, i: usize, d: [i64; 2], block: [[i64; 2]; 2]) -> Result<Self> {
        if i == 0 || i > genus {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: genus,
            });
        }
        let mut out = Self::identity(genus);
        let o = 2 * (i - 1);
        for r in 0..2 {
            out.delta[o + r] = BigInt::from(d[r]);
            for (c, &v) in block[r].iter().enumerate() {
                out.s[o + r][o + c] = BigInt::from(v);
            }
        }
        Ok(out)
    }

    /// `(δ, S)` for a lift to `Aut(ℋ)` with `S` given and `δ(eⱼ) ∈ {0, 1}` chosen so that
    /// `δ(eⱼ) ≡ Q(S eⱼ) mod 2`, where `Q(l, m) = Σ lᵢmᵢ`. This is the lift compatible with
    /// the odd-order Schrödinger representations.
    pub fn parity_lift(&self) -> Self {
        let n = 2 * self.genus;
        let delta = (0..n)
            .map(|j| {
                let col: Vec<BigInt> = (0..n).map(|i| self.s[i][j].clone()).collect();
                let q: BigInt = col.chunks_exact(2).map(|c| &c[0] * &c[1]).sum();
                q.mod_floor(&BigInt::from(2))
            })
            .collect();
        Self {
            genus: self.genus,
            delta,
            s: self.s.clone(),
        }
    }
}

impl fmt::Display for HeisAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_vec = |v: &[BigInt]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "delta=[{}] S=[", fmt_vec(&self.delta))?;
        for (i, row) in self.s.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{}]", fmt_vec(row))?;
        }
        f.write_str("]")
    }
}

/// Free generator `αᵢ` or `βᵢ` of `π₁(Σ_{g,1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeGen {
    Alpha(usize),
    Beta(usize),
}

impl FreeGen {
    pub fn handle(self) -> usize {
        match self {
            FreeGen::Alpha(i) | FreeGen::Beta(i) => i,
        }
    }

    /// Position in the basis `a₁, b₁, …` (0-based).
    pub fn basis_index(self) -> usize {
        match self {
            FreeGen::Alpha(i) => 2 * (i - 1),
            FreeGen::Beta(i) => 2 * (i - 1) + 1,
        }
    }

    pub fn all(genus: usize) -> Vec<FreeGen> {
        (1..=genus)
            .flat_map(|i| [FreeGen::Alpha(i), FreeGen::Beta(i)])
            .collect()
    }
}

impl fmt::Display for FreeGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeGen::Alpha(i) => write!(f, "a{i}"),
            FreeGen::Beta(i) => write!(f, "b{i}"),
        }
    }
}

/// A word in the free group, stored letter by letter with exponents `±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    genus: usize,
    letters: Vec<(FreeGen, i8)>,
}

impl FreeWord {
    pub fn empty(genus: usize) -> Self {
        Self {
            genus,
            letters: Vec::new(),
        }
    }

    pub fn letter(genus: usize, g: FreeGen, e: i8) -> Result<Self> {
        if g.handle() == 0 || g.handle() > genus {
            return Err(Error::IndexOutOfRange {
                index: g.handle(),
                max: genus,
            });
        }
        if e.abs() != 1 {
            return Err(Error::InvalidArgument("letter exponent must be ±1".into()));
        }
        Ok(Self {
            genus,
            letters: vec![(g, e)],
        })
    }

    /// Parses words such as `a1 b1^-1 a2^2` (Greek `α`, `β` accepted).
    pub fn parse(input: &str, genus: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for l in parse_word(input)? {
            let i = l.index.unwrap_or(1);
            if i == 0 || i > genus {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    max: genus,
                });
            }
            let g = match l.symbol {
                'a' => FreeGen::Alpha(i),
                'b' => FreeGen::Beta(i),
                other => return Err(Error::UnknownGenerator(other.to_string())),
            };
            let n: i64 = (&l.exponent)
                .try_into()
                .map_err(|_| Error::Parse("exponent too large".into()))?;
            let sign = if n < 0 { -1 } else { 1 };
            letters.extend(std::iter::repeat_n((g, sign), n.unsigned_abs() as usize));
        }
        Ok(Self { genus, letters })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn letters(&self) -> &[(FreeGen, i8)] {
        &self.letters
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self {
            genus: self.genus,
            letters,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Free reduction.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<(FreeGen, i8)> = Vec::with_capacity(self.letters.len());
        for &(g, e) in &self.letters {
            match out.last() {
                Some(&(h, f)) if h == g && f == -e => {
                    out.pop();
                }
                _ => out.push((g, e)),
            }
        }
        Self {
            genus: self.genus,
            letters: out,
        }
    }

    /// Substitutes a word for every generator (missing generators are fixed).
    pub fn substitute(&self, table: &EndomorphismTable) -> Self {
        let mut out = Self::empty(self.genus);
        for &(g, e) in &self.letters {
            let img = table
                .image(g)
                .cloned()
                .unwrap_or_else(|| Self::letter(self.genus, g, 1).expect("valid generator"));
            out = out.concat(&if e < 0 { img.inverse() } else { img });
        }
        out
    }

    /// Class in `H₁`.
    pub fn abelianize(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); 2 * self.genus];
        for &(g, e) in &self.letters {
            v[g.basis_index()] += e;
        }
        v
    }

    /// Image in `ℋ` under `αᵢ ↦ ãᵢ`, `βᵢ ↦ b̃ᵢ`.
    pub fn heis_image(&self) -> HeisElement {
        let mut acc = HeisElement::identity(self.genus);
        for &(g, e) in &self.letters {
            let mut c = vec![BigInt::zero(); 2 * self.genus];
            c[g.basis_index()] = BigInt::from(e);
            acc = acc.mul_unchecked(&HeisElement::new(0, c).expect("rank"));
        }
        acc
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(g, e)| {
                if *e < 0 {
                    format!("{g}^-1")
                } else {
                    g.to_string()
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `dᵢ(w)`: project to handle `i`, reduce, split greedily into blocks `αᵢ^ν βᵢ^μ` with
/// `ν, μ ∈ {−1, 0, 1}` and return `Σ_{j,k} ι_{jk} ν_j μ_k` where `ι_{jk} = 1` for `j ≤ k`
/// and `−1` otherwise.
pub fn morita_d(i: usize, w: &FreeWord) -> Result<BigInt> {
    if i == 0 || i > w.genus {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: w.genus,
        });
    }
    let projected = FreeWord {
        genus: w.genus,
        letters: w
            .letters
            .iter()
            .copied()
            .filter(|(g, _)| g.handle() == i)
            .collect(),
    }
    .reduced();
    let mut blocks: Vec<(i64, i64)> = Vec::new();
    let mut it = projected.letters.iter().peekable();
    while let Some(&(g, e)) = it.next() {
        match g {
            FreeGen::Alpha(_) => {
                let mu = match it.peek() {
                    Some(&&(FreeGen::Beta(_), f)) => {
                        it.next();
                        i64::from(f)
                    }
                    _ => 0,
                };
                blocks.push((i64::from(e), mu));
            }
            FreeGen::Beta(_) => blocks.push((0, i64::from(e))),
        }
    }
    // Σ_{j≤k} ν_j μ_k − Σ_{j>k} ν_j μ_k via prefix sums of ν
    let mut total = 0i64;
    let mut nu_prefix = 0i64;
    let nu_sum: i64 = blocks.iter().map(|b| b.0).sum();
    for &(nu, mu) in &blocks {
        nu_prefix += nu;
        total += mu * (nu_prefix - (nu_sum - nu_prefix));
    }
    Ok(BigInt::from(total))
}

/// The action of a mapping class on free generators; generators not listed are fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndomorphismTable {
    genus: usize,
    images: BTreeMap<FreeGen, FreeWord>,
}

impl EndomorphismTable {
    pub fn identity(genus: usize) -> Self {
        Self {
            genus,
            images: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn with(mut self, g: FreeGen, word: &str) -> Result<Self> {
        if g.handle() == 0 || g.handle() > self.genus {
            return Err(Error::IndexOutOfRange {
                index: g.handle(),
                max: self.genus,
            });
        }
        self.images.insert(g, FreeWord::parse(word, self.genus)?);
        Ok(self)
    }

    pub fn image(&self, g: FreeGen) -> Option<&FreeWord> {
        self.images.get(&g)
    }

    /// Parses lines `a1 -> a1 b1` (or `a1: …`, `a1 = …`); `#` starts a comment.
    pub fn parse(text: &str, genus: usize) -> Result<Self> {
        let mut t = Self::identity(genus);
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .or_else(|| line.split_once('↦'))
                .or_else(|| line.split_once(':'))
                .or_else(|| line.split_once('='))
                .ok_or_else(|| Error::Parse(format!("expected `gen -> word`, got `{line}`")))?;
            let gen = FreeWord::parse(lhs, genus)?;
            match gen.letters() {
                [(g, 1)] => t = t.with(*g, rhs)?,
                _ => return Err(Error::Parse(format!("`{lhs}` is not a single generator"))),
            }
        }
        Ok(t)
    }

    /// `T_{aᵢ}`: `αᵢ ↦ αᵢ`, `βᵢ ↦ αᵢ⁻¹βᵢ`.
    pub fn twist_a(genus: usize, i: usize) -> Result<Self> {
        Self::identity(genus).with(FreeGen::Beta(i), &format!("a{i}^-1 b{i}"))
    }

    /// `T_{bᵢ}`: `αᵢ ↦ αᵢβᵢ`, `βᵢ ↦ βᵢ`.
    pub fn twist_b(genus: usize, i: usize) -> Result<Self> {
        Self::identity(genus).with(FreeGen::Alpha(i), &format!("a{i} b{i}"))
    }

    /// A bounding-pair map in genus `g ≥ 2` acting on handles 1 and 2, with
    /// `C = α₂β₂α₂⁻¹β₂⁻¹`.
    pub fn bounding_pair(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::GenusTooSmall { min: 2, got: genus });
        }
        let c = "a2 b2 a2^-1 b2^-1";
        let cinv = "b2 a2 b2^-1 a2^-1";
        Self::identity(genus)
            .with(FreeGen::Alpha(1), &format!("{c} a1"))?
            .with(
                FreeGen::Alpha(2),
                &format!("{c} a1 b1 a1^-1 a2 a1 b1^-1 a1^-1 {cinv}"),
            )?
            .with(
                FreeGen::Beta(2),
                &format!("{c} a1 b1 a1^-1 b2 a1 b1^-1 a1^-1 {cinv}"),
            )
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        let mut images = BTreeMap::new();
        for g in FreeGen::all(self.genus) {
            let w = other
                .image(g)
                .cloned()
                .unwrap_or_else(|| FreeWord::letter(self.genus, g, 1).expect("valid"));
            images.insert(g, w.substitute(self).reduced());
        }
        Self {
            genus: self.genus,
            images,
        }
    }
}

/// Morita's crossed homomorphism evaluated on a π₁-action:
/// `δ(c) = Σᵢ dᵢ(f♯(γ_c)) − dᵢ(γ_c)` and `S` the induced action on `H₁`.
pub fn morita_crossed_hom(table: &EndomorphismTable) -> Result<HeisAutomorphism> {
    let genus = table.genus;
    let n = 2 * genus;
    let mut delta = Vec::with_capacity(n);
    let mut s = vec![vec![BigInt::zero(); n]; n];
    for g in FreeGen::all(genus) {
        let gamma = FreeWord::letter(genus, g, 1)?;
        let img = gamma.substitute(table);
        let mut d = BigInt::zero();
        for i in 1..=genus {
            d += morita_d(i, &img)? - morita_d(i, &gamma)?;
        }
        delta.push(d);
        for (r, v) in img.abelianize().into_iter().enumerate() {
            s[r][g.basis_index()] = v;
        }
    }
    HeisAutomorphism::new(delta, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(k: i64, c: &[i64]) -> HeisElement {
        HeisElement::from_ints(k, c).unwrap()
    }

    #[test]
    fn identity_fixes_elements() {
        let x = el(5, &[1, -1]);
        assert_eq!(HeisAutomorphism::identity(1).apply(&x).unwrap(), x);
    }

    #[test]
    fn rejects_non_symplectic() {
        assert_eq!(
            HeisAutomorphism::from_ints(&[0, 0], &[&[2, 0], &[0, 1]]),
            Err(Error::NotSymplectic)
        );
    }

    #[test]
    fn bounding_pair_class() {
        let phi = HeisAutomorphism::from_ints(
            &[2, 0, 0, 0],
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
        )
        .unwrap();
        assert_eq!(
            phi.apply(&el(0, &[1, 0, 0, 0])).unwrap(),
            el(2, &[1, 0, 0, 0])
        );
        let m = morita_crossed_hom(&EndomorphismTable::bounding_pair(2).unwrap()).unwrap();
        assert_eq!(m, phi);
        let m3 = morita_crossed_hom(&EndomorphismTable::bounding_pair(3).unwrap()).unwrap();
        assert_eq!(m3.delta()[0], BigInt::from(2));
        assert!(m3.delta()[1..].iter().all(Zero::is_zero));
        assert!(m3.matrix() == &identity_matrix(6));
    }

    #[test]
    fn inner_of_examples() {
        assert!(HeisAutomorphism::inner_of(&HeisElement::u(1)).is_identity());
        let h = el(0, &[0, -1]);
        let phi = HeisAutomorphism::inner_of(&h);
        assert_eq!(phi.delta(), &[BigInt::from(2), BigInt::zero()]);
        for x in [el(3, &[1, 2]), el(-1, &[0, 5]), el(0, &[-4, 1])] {
            assert_eq!(phi.apply(&x).unwrap(), h.conjugate(&x).unwrap());
        }
    }

    #[test]
    fn inner_witness_examples() {
        assert_eq!(
            HeisAutomorphism::identity(1).inner_witness(),
            Some(HeisElement::identity(1))
        );
        let phi = HeisAutomorphism::from_ints(&[2, 0], &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(phi.inner_witness(), Some(el(0, &[0, -1])));
        let odd = HeisAutomorphism::from_ints(&[1, 0], &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(odd.inner_witness(), None);
        assert_eq!(
            HeisAutomorphism::twist_a(1, 1).unwrap().inner_witness(),
            None
        );
    }

    #[test]
    fn compose_and_inverse() {
        let ta = HeisAutomorphism::twist_a(2, 1).unwrap();
        let tb = HeisAutomorphism::twist_b(2, 2).unwrap();
        let x = el(3, &[1, -2, 4, 7]);
        let c = ta.compose(&tb).unwrap();
        assert_eq!(
            c.apply(&x).unwrap(),
            ta.apply(&tb.apply(&x).unwrap()).unwrap()
        );
        assert!(c.compose(&c.inverse()).unwrap().is_identity());
        assert!(c.inverse().compose(&c).unwrap().is_identity());
        assert!(ta.compose(&HeisAutomorphism::identity(2)).unwrap() == ta);
    }

    #[test]
    fn twists_satisfy_the_braid_relation_on_h() {
        let ta = HeisAutomorphism::twist_a(1, 1).unwrap();
        let tb = HeisAutomorphism::twist_b(1, 1).unwrap();
        let aba = ta.compose(&tb).unwrap().compose(&ta).unwrap();
        let bab = tb.compose(&ta).unwrap().compose(&tb).unwrap();
        assert_eq!(aba, bab);
        // (T_aT_bT_a)⁴ acts trivially
        assert!(aba.pow(4).is_identity());
    }

    #[test]
    fn morita_d_examples() {
        let w = |s| FreeWord::parse(s, 2).unwrap();
        assert_eq!(morita_d(1, &w("a1 b1")).unwrap(), BigInt::from(1));
        assert_eq!(morita_d(1, &w("b1 a1")).unwrap(), BigInt::from(-1));
        assert_eq!(morita_d(2, &w("a1 b1")).unwrap(), BigInt::zero());
        assert_eq!(
            morita_d(1, &w("a1 a2 a2^-1 a1^-1")).unwrap(),
            BigInt::zero()
        );
        assert!(morita_d(3, &w("a1")).is_err());
    }

    #[test]
    fn morita_d_matches_heisenberg_image() {
        let w = FreeWord::parse("a1 b2^-1 b1 a1^-1 b1^2 a2 a1^-1 b2 a2^2 b1^-1 a1", 2).unwrap();
        let total = morita_d(1, &w).unwrap() + morita_d(2, &w).unwrap();
        assert_eq!(&total, w.heis_image().k());
    }

    #[test]
    fn morita_reproduces_the_twist_automorphisms() {
        for g in 1..=3 {
            for i in 1..=g {
                assert_eq!(
                    morita_crossed_hom(&EndomorphismTable::twist_a(g, i).unwrap()).unwrap(),
                    HeisAutomorphism::twist_a(g, i).unwrap()
                );
                assert_eq!(
                    morita_crossed_hom(&EndomorphismTable::twist_b(g, i).unwrap()).unwrap(),
                    HeisAutomorphism::twist_b(g, i).unwrap()
                );
            }
        }
        assert!(morita_crossed_hom(&EndomorphismTable::identity(2))
            .unwrap()
            .is_identity());
    }

    #[test]
    fn table_parsing_and_composition() {
        let t = EndomorphismTable::parse("# twist\nb1 -> a1^-1 b1\n", 1).unwrap();
        assert_eq!(t, EndomorphismTable::twist_a(1, 1).unwrap());
        assert!(EndomorphismTable::parse("a1 b1 -> a1", 1).is_err());
        let ta = EndomorphismTable::twist_a(1, 1).unwrap();
        let tb = EndomorphismTable::twist_b(1, 1).unwrap();
        let composite = morita_crossed_hom(&ta.compose(&tb)).unwrap();
        let expected = morita_crossed_hom(&ta)
            .unwrap()
            .compose(&morita_crossed_hom(&tb).unwrap())
            .unwrap();
        assert_eq!(composite, expected);
    }

    #[test]
    fn parity_lift_is_trivial_on_the_twist_of_b_in_delta_parity() {
        let tb = HeisAutomorphism::twist_b(1, 1).unwrap();
        let lift = HeisAutomorphism::identity(1)
            .compose(&tb)
            .unwrap()
            .parity_lift();
        assert_eq!(lift.delta(), &[BigInt::one(), BigInt::zero()]);
        assert!(HeisAutomorphism::identity(2).parity_lift().is_identity());
    }
}
