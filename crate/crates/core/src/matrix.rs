//! Matrices over `ℤ[ℋ]` for twisted module maps, and the Dehn-twist matrices of the
//! two-point configuration module.
//!
//! A [`RepMatrix`] with twists `(σ, ρ)` is a map `F: A^σ → A^ρ` where `A^τ` is the free right
//! module `A` with action `m ∗ x = m·τ(x)`. Column `j` holds the `∗`-coordinates of `F(eⱼ)`.
//! With that convention:
//!
//! * composing `G∘F` needs `target(F) = source(G)` and is the plain matrix product;
//! * regarding `F` as `A^{στ} → A^{ρτ}` (the shift by `τ`) replaces entries by `τ⁻¹(·)`;
//! * a mapping class `f` gives `f_*: A^{f_ℋ⁻¹} → A`, so `Mat(g∘f) = Mat(g)·g_ℋ(Mat(f))`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::Value;

use crate::aut::HeisAutomorphism;
use crate::error::{Error, Result};
use crate::heis::HeisElement;
use crate::ring::{specialize, HeisPolynomial, SpecializationTarget, SpecializedPolynomial};

const TWIST_A: &str = include_str!("../fixtures/twist_a.json");
const TWIST_B: &str = include_str!("../fixtures/twist_b.json");
const TWIST_ABA: &str = include_str!("../fixtures/twist_aba.json");
const BOUNDARY: &str = include_str!("../fixtures/boundary_twist.json");

/// Entries of the middle blocks of the separating-twist matrix, in handle-1 variables.
pub const SEPARATING_P: &str = "-a^{-1}b+u^{-2}b+u^{-2}a^{-1}";
pub const SEPARATING_Q: &str = "1-a+u^{-2}-u^{-2}a^{-1}";
pub const SEPARATING_R: &str = "a^{-1}(-b+b^2+u^{-2}-u^{-2}b)";
pub const SEPARATING_S: &str = "1-b+u^{-2}+u^{-2}a^{-1}b-u^{-2}a^{-1}";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMatrix {
    genus: usize,
    rows: usize,
    cols: usize,
    entries: Vec<HeisPolynomial>,
    source_twist: HeisAutomorphism,
    target_twist: HeisAutomorphism,
}

/// One entry where two matrices differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub computed: HeisPolynomial,
    pub expected: HeisPolynomial,
}

impl fmt::Display for EntryMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entry ({}, {}): computed {} but expected {}",
            self.row + 1,
            self.col + 1,
            self.computed,
            self.expected
        )
    }
}

impl RepMatrix {
    pub fn new(genus: usize, rows: Vec<Vec<HeisPolynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::Dimension("matrix must be non-empty".into()));
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for e in row {
                if e.genus() != genus {
                    return Err(Error::GenusMismatch {
                        left: genus,
                        right: e.genus(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(Self {
            genus,
            rows: r,
            cols: c,
            entries,
            source_twist: HeisAutomorphism::identity(genus),
            target_twist: HeisAutomorphism::identity(genus),
        })
    }

    /// Parses a grid of expressions.
    pub fn parse_rows<S: AsRef<str>>(genus: usize, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| HeisPolynomial::parse(s.as_ref(), genus))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(genus, parsed)
    }

    /// Loads `{"genus": g, "entries": [["expr", …], …]}`.
    pub fn from_fixture_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let genus = v
            .get("genus")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("fixture needs an integer `genus`".into()))?
            as usize;
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("fixture needs `entries`".into()))?;
        let grid = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Json("each row must be an array".into()))?
                    .iter()
                    .map(|e| {
                        e.as_str()
                            .map(str::to_owned)
                            .ok_or_else(|| Error::Json("entries must be strings".into()))
                    })
                    .collect::<Result<Vec<String>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Self::parse_rows(genus, &grid)?;
        for (key, want) in [("rows", m.rows), ("cols", m.cols)] {
            if let Some(n) = v.get(key).and_then(Value::as_u64) {
                if n as usize != want {
                    return Err(Error::Dimension(format!(
                        "fixture declares {key}={n} but has {want}"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn identity(genus: usize, dim: usize) -> Self {
        Self::scalar(&HeisPolynomial::one(genus), dim)
    }

    /// `c·I`.
    pub fn scalar(c: &HeisPolynomial, dim: usize) -> Self {
        let genus = c.genus();
        let mut entries = vec![HeisPolynomial::zero(genus); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c.clone();
        }
        Self {
            genus,
            rows: dim,
            cols: dim,
            entries,
            source_twist: HeisAutomorphism::identity(genus),
            target_twist: HeisAutomorphism::identity(genus),
        }
    }

    pub fn with_twists(
        mut self,
        source: HeisAutomorphism,
        target: HeisAutomorphism,
    ) -> Result<Self> {
        for t in [&source, &target] {
            if t.genus() != self.genus {
                return Err(Error::GenusMismatch {
                    left: self.genus,
                    right: t.genus(),
                });
            }
        }
        self.source_twist = source;
        self.target_twist = target;
        Ok(self)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn source_twist(&self) -> &HeisAutomorphism {
        &self.source_twist
    }

    pub fn target_twist(&self) -> &HeisAutomorphism {
        &self.target_twist
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &HeisPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[HeisPolynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries_grid(&self) -> Vec<Vec<HeisPolynomial>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn map_entries<F: FnMut(&HeisPolynomial) -> HeisPolynomial>(&self, f: F) -> Self {
        Self {
            entries: self.entries.iter().map(f).collect(),
            ..self.clone()
        }
    }

    /// True when the entries form the identity matrix (twists ignored).
    pub fn is_identity_matrix(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Plain matrix product of the entries; twists are taken from `self` (source of
    /// `other`, target of `self`).
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = HeisPolynomial::zero(self.genus);
                for k in 0..self.cols {
                    let (x, y) = (self.get(i, k), other.get(k, j));
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    acc = acc.add(&x.mul(y)?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Self {
            genus: self.genus,
            rows: self.rows,
            cols: other.cols,
            entries,
            source_twist: other.source_twist.clone(),
            target_twist: self.target_twist.clone(),
        })
    }

    /// Applies a ring automorphism entrywise (twists unchanged).
    pub fn apply_entrywise(&self, tau: &HeisAutomorphism) -> Result<Self> {
        if tau.genus() != self.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: tau.genus(),
            });
        }
        Ok(self.map_entries(|p| tau.apply_poly(p).expect("genus checked")))
    }

    /// The same map regarded between modules twisted further by `τ`: entries become
    /// `τ⁻¹(·)`, source and target twists are precomposed with `τ`.
    pub fn shift(&self, tau: &HeisAutomorphism) -> Result<Self> {
        let mut out = self.apply_entrywise(&tau.inverse())?;
        out.source_twist = self.source_twist.compose(tau)?;
        out.target_twist = self.target_twist.compose(tau)?;
        Ok(out)
    }

    /// `self ∘ f`; requires `target(f) = source(self)`.
    pub fn compose(&self, f: &Self) -> Result<Self> {
        if f.target_twist != self.source_twist {
            return Err(Error::TwistMismatch(format!(
                "target twist {} of the inner map differs from source twist {} of the outer map",
                f.target_twist, self.source_twist
            )));
        }
        self.product(f)
    }

    /// `Mat(g∘f) = Mat(g)·g_ℋ(Mat(f))`: shifts `ff` by `g_ℋ⁻¹` and composes.
    pub fn compose_twisted(fg: &Self, ff: &Self, g_h: &HeisAutomorphism) -> Result<Self> {
        fg.compose(&ff.shift(&g_h.inverse())?)
    }

    /// Composes two mapping-class matrices, reading `g_ℋ` off the source twist of `fg`.
    pub fn compose_mapping_classes(fg: &Self, ff: &Self) -> Result<Self> {
        if !fg.target_twist.is_identity() {
            return Err(Error::TwistMismatch(
                "outer matrix is not of mapping-class type (non-trivial target twist)".into(),
            ));
        }
        Self::compose_twisted(fg, ff, &fg.source_twist.inverse())
    }

    /// Two-sided inverse over `ℤ[ℋ]` by Gauss–Jordan elimination with unit pivots, searched
    /// over the whole remaining block. The result maps `A^ρ → A^σ` when `self` maps
    /// `A^σ → A^ρ`.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension(
                "only square matrices can be inverted".into(),
            ));
        }
        let n = self.rows;
        let g = self.genus;
        let mut a = self.entries_grid();
        let mut inv = Self::identity(g, n).entries_grid();
        // perm[c] is the original column now sitting at position c
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let (pr, pc) = (col..n)
                .flat_map(|c| (col..n).map(move |r| (r, c)))
                .filter(|&(r, c)| a[r][c].as_unit().is_some())
                .min_by_key(|&(r, c)| a[r][c].terms().next().map(|(e, _)| e.clone()))
                .ok_or(Error::NotInvertible)?;
            a.swap(col, pr);
            inv.swap(col, pr);
            if pc != col {
                for row in &mut a {
                    row.swap(col, pc);
                }
                perm.swap(col, pc);
            }
            let p_inv = a[col][col].unit_inverse().expect("unit pivot");
            for j in 0..n {
                a[col][j] = p_inv.mul(&a[col][j])?;
                inv[col][j] = p_inv.mul(&inv[col][j])?;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let da = factor.mul(&a[col][j])?;
                    let di = factor.mul(&inv[col][j])?;
                    a[r][j] = a[r][j].sub(&da)?;
                    inv[r][j] = inv[r][j].sub(&di)?;
                }
            }
        }
        // inv = (A·P)⁻¹, so row c of it is row perm[c] of A⁻¹
        let mut rows = vec![Vec::new(); n];
        for (c, row) in inv.into_iter().enumerate() {
            rows[perm[c]] = row;
        }
        let inv = rows;
        let out =
            Self::new(g, inv)?.with_twists(self.target_twist.clone(), self.source_twist.clone())?;
        if !self.product(&out)?.is_identity_matrix() || !out.product(self)?.is_identity_matrix() {
            return Err(Error::NotInvertible);
        }
        Ok(out)
    }

    /// Inverse as a mapping-class matrix: `Mat(f⁻¹) = f_ℋ⁻¹(Mat(f)⁻¹)` with source twist
    /// `f_ℋ`.
    pub fn mapping_class_inverse(&self) -> Result<Self> {
        if !self.target_twist.is_identity() {
            return Err(Error::TwistMismatch(
                "not a mapping-class matrix (non-trivial target twist)".into(),
            ));
        }
        let f_h_inv = self.source_twist.clone();
        self.inverse()?.shift(&f_h_inv.inverse())
    }

    /// Entrywise `p ↦ p·h`, turning an inner-twisted map into a linear one.
    /// Requires source twist `inner_of(h)⁻¹` and trivial target twist.
    pub fn untwist(&self, h: &HeisElement) -> Result<Self> {
        let expected = HeisAutomorphism::inner_of(h).inverse();
        if self.source_twist != expected || !self.target_twist.is_identity() {
            return Err(Error::TwistMismatch(format!(
                "untwist by {h} needs source twist {expected} and trivial target twist"
            )));
        }
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.mul_element_right(h)?;
        }
        out.source_twist = HeisAutomorphism::identity(self.genus);
        Ok(out)
    }

    /// Multiplies every entry on the right by the polynomial `c` (no twist change).
    pub fn scale_right(&self, c: &HeisPolynomial) -> Result<Self> {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.mul(c)?;
        }
        Ok(out)
    }

    /// Entrywise specialization.
    pub fn specialize(&self, target: &SpecializationTarget) -> Result<SpecializedMatrix> {
        Ok(SpecializedMatrix {
            rows: self.rows,
            cols: self.cols,
            target: target.clone(),
            entries: self
                .entries
                .iter()
                .map(|p| specialize(p, target))
                .collect::<Result<_>>()?,
        })
    }

    /// Entrywise differences to `expected` (twists ignored).
    pub fn diff(&self, expected: &Self) -> Result<Vec<EntryMismatch>> {
        if (self.rows, self.cols, self.genus) != (expected.rows, expected.cols, expected.genus) {
            return Err(Error::Dimension(format!(
                "cannot diff {}x{} (genus {}) against {}x{} (genus {})",
                self.rows, self.cols, self.genus, expected.rows, expected.cols, expected.genus
            )));
        }
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != expected.get(i, j) {
                    out.push(EntryMismatch {
                        row: i,
                        col: j,
                        computed: self.get(i, j).clone(),
                        expected: expected.get(i, j).clone(),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Reinterprets a matrix in a larger genus; entries move onto the first handles.
    pub fn embed(&self, genus: usize) -> Result<Self> {
        let grid = self
            .entries_grid()
            .into_iter()
            .map(|r| r.iter().map(|p| p.embed(genus)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if !(self.source_twist.is_identity() && self.target_twist.is_identity()) {
            return Err(Error::Precondition(
                "only untwisted matrices can be embedded".into(),
            ));
        }
        Self::new(genus, grid)
    }

    /// `pmatrix` LaTeX.
    pub fn to_latex(&self) -> String {
        let mut s = String::from("\\begin{pmatrix}\n");
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(HeisPolynomial::to_latex).collect();
            s.push_str(&row.join(" & "));
            if i + 1 < self.rows {
                s.push_str(" \\\\");
            }
            s.push('\n');
        }
        s.push_str("\\end{pmatrix}");
        s
    }

    pub fn to_plain_string(&self) -> String {
        let mut lines = Vec::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_plain_string()).collect();
            lines.push(format!("[{}]", row.join(" | ")));
        }
        lines.join("\n")
    }
}

impl fmt::Display for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain_string())
    }
}

/// A matrix over one of the specialization targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedMatrix {
    pub rows: usize,
    pub cols: usize,
    pub target: SpecializationTarget,
    pub entries: Vec<SpecializedPolynomial>,
}

impl SpecializedMatrix {
    pub fn get(&self, i: usize, j: usize) -> &SpecializedPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn to_plain_string(&self) -> String {
        (0..self.rows)
            .map(|i| {
                let row: Vec<String> = (0..self.cols)
                    .map(|j| self.get(i, j).to_plain_string())
                    .collect();
                format!("[{}]", row.join(" | "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Ordered basis multi-indices for the `n`-point module in genus `g`.
///
/// Order: pure powers on handle 1 (`(n,0,…)`, `(0,n,…)`), the remaining compositions
/// supported on handle 1, then those meeting handle 1 and another handle, then the rest;
/// each group in descending lexicographic order. For `n = 2` this is
/// `w(α₁), w(β₁), v(α₁,β₁)`, the `v(α₁,ε)`, the `v(β₁,ε)`, then the rest.
pub fn basis_enumerate(genus: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    if genus == 0 {
        return Err(Error::GenusTooSmall { min: 1, got: 0 });
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    fn compositions(
        total: usize,
        parts: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            compositions(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    compositions(n, 2 * genus, &mut Vec::new(), &mut all);
    // `all` is already in descending lexicographic order
    let h1 = |k: &Vec<usize>| k[0] + k[1];
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(all.len());
    let mut pure_a = vec![0; 2 * genus];
    pure_a[0] = n;
    let mut pure_b = vec![0; 2 * genus];
    pure_b[1] = n;
    out.push(pure_a.clone());
    out.push(pure_b.clone());
    out.extend(
        all.iter()
            .filter(|k| h1(k) == n && **k != pure_a && **k != pure_b)
            .cloned(),
    );
    out.extend(all.iter().filter(|k| h1(k) > 0 && h1(k) < n).cloned());
    out.extend(all.iter().filter(|k| h1(k) == 0).cloned());
    Ok(out)
}

fn twist_pair() -> (HeisAutomorphism, HeisAutomorphism) {
    (
        HeisAutomorphism::twist_a(1, 1).expect("genus 1"),
        HeisAutomorphism::twist_b(1, 1).expect("genus 1"),
    )
}

fn load_fixture(text: &str) -> RepMatrix {
    RepMatrix::from_fixture_json(text).expect("bundled fixture parses")
}

/// `M_a`, the matrix of `T_a` (genus 1, two points), source twist `(T_a)_ℋ⁻¹`.
pub fn matrix_ta() -> RepMatrix {
    let (ta, _) = twist_pair();
    load_fixture(TWIST_A)
        .with_twists(ta.inverse(), HeisAutomorphism::identity(1))
        .expect("genus 1")
}

/// `M_b`, the matrix of `T_b` (genus 1, two points), source twist `(T_b)_ℋ⁻¹`.
pub fn matrix_tb() -> RepMatrix {
    let (_, tb) = twist_pair();
    load_fixture(TWIST_B)
        .with_twists(tb.inverse(), HeisAutomorphism::identity(1))
        .expect("genus 1")
}

/// Transcribed matrix of `T_aT_bT_a`.
pub fn fixture_ta_tb_ta() -> RepMatrix {
    load_fixture(TWIST_ABA)
}

/// Transcribed matrix of the boundary twist.
pub fn fixture_boundary_twist() -> RepMatrix {
    load_fixture(BOUNDARY)
}

/// Both sides of the braid relation, `Mat(T_aT_bT_a)` and `Mat(T_bT_aT_b)`.
pub fn braid_relation_sides() -> Result<(RepMatrix, RepMatrix)> {
    let (ma, mb) = (matrix_ta(), matrix_tb());
    let lhs =
        RepMatrix::compose_mapping_classes(&RepMatrix::compose_mapping_classes(&ma, &mb)?, &ma)?;
    let rhs =
        RepMatrix::compose_mapping_classes(&RepMatrix::compose_mapping_classes(&mb, &ma)?, &mb)?;
    Ok((lhs, rhs))
}

/// `Mat(T_aT_bT_a)`, computed both ways round the braid relation.
pub fn matrix_ta_tb_ta() -> Result<RepMatrix> {
    let (lhs, rhs) = braid_relation_sides()?;
    if lhs != rhs {
        return Err(Error::Inconsistent(
            "the two sides of the braid relation differ".into(),
        ));
    }
    Ok(lhs)
}

/// Matrix of the genus-one boundary twist: with `g = T_aT_bT_a`, the product
/// `G·g(G)·g²(G)·g³(G)` where `G = Mat(g)`. Its twists are trivial since `g⁴` acts
/// trivially on `ℋ`.
pub fn matrix_boundary_twist() -> Result<RepMatrix> {
    let g = matrix_ta_tb_ta()?;
    let mut acc = g.clone();
    for _ in 0..3 {
        acc = RepMatrix::compose_mapping_classes(&acc, &g)?;
    }
    if !acc.source_twist.is_identity() {
        return Err(Error::Inconsistent(
            "boundary twist acts non-trivially on the Heisenberg group".into(),
        ));
    }
    Ok(acc)
}

/// Matrix of the twist along a genus-one separating curve in genus `g ≥ 2` (two points),
/// in the order of [`basis_enumerate`].
pub fn matrix_separating_twist(genus: usize) -> Result<RepMatrix> {
    if genus < 2 {
        return Err(Error::GenusTooSmall { min: 2, got: genus });
    }
    let lambda = matrix_boundary_twist()?.embed(genus)?;
    let parse = |s: &str| HeisPolynomial::parse(s, genus);
    let (p, q, r, s) = (
        parse(SEPARATING_P)?,
        parse(SEPARATING_Q)?,
        parse(SEPARATING_R)?,
        parse(SEPARATING_S)?,
    );
    let m = 2 * genus - 2;
    let dim = basis_enumerate(genus, 2)?.len();
    let rest = dim - 3 - 2 * m;
    let mut grid = vec![vec![HeisPolynomial::zero(genus); dim]; dim];
    for (i, row) in grid.iter_mut().take(3).enumerate() {
        row[..3].clone_from_slice(lambda.row(i));
    }
    for t in 0..m {
        let (x, y) = (3 + t, 3 + m + t);
        grid[x][x] = p.clone();
        grid[x][y] = r.clone();
        grid[y][x] = q.clone();
        grid[y][y] = s.clone();
    }
    for t in 0..rest {
        let d = 3 + 2 * m + t;
        grid[d][d] = HeisPolynomial::one(genus);
    }
    RepMatrix::new(genus, grid)
}

/// Rescales a family of generator matrices so that a central generator acts trivially.
///
/// `central` must equal `μ^k·I` for a central unit `μ = ±u^m` and `k ≠ 0`; each
/// `(matrix, q)` in `family` is multiplied by `μ^{−q}`. Returns the rescaled central image
/// (the identity) followed by the rescaled family.
pub fn rescale(
    central: &RepMatrix,
    family: &[(RepMatrix, i64)],
    mu: &HeisPolynomial,
    k: i64,
) -> Result<(RepMatrix, Vec<RepMatrix>)> {
    if k == 0 {
        return Err(Error::Precondition("k must be non-zero".into()));
    }
    let (sign, e) = mu
        .as_unit()
        .ok_or_else(|| Error::Precondition("μ must be a unit ±h".into()))?;
    if !e.is_central() {
        return Err(Error::Precondition("μ must be central".into()));
    }
    let mu_pow = |n: i64| -> HeisPolynomial {
        let s = if n.rem_euclid(2) == 1 {
            sign.clone()
        } else {
            BigInt::one()
        };
        HeisPolynomial::monomial(e.pow(&BigInt::from(n)), s)
    };
    if central.rows != central.cols
        || central.entries != RepMatrix::scalar(&mu_pow(k), central.rows).entries
    {
        return Err(Error::Precondition(format!("central image is not μ^{k}·I")));
    }
    let c = central.scale_right(&mu_pow(-k))?;
    let scaled = family
        .iter()
        .map(|(m, q)| m.scale_right(&mu_pow(-q)))
        .collect::<Result<Vec<_>>>()?;
    Ok((c, scaled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::SpecializationTarget;

    fn poly(s: &str) -> HeisPolynomial {
        HeisPolynomial::parse(s, 1).unwrap()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(
            basis_enumerate(1, 2).unwrap(),
            vec![vec![2, 0], vec![0, 2], vec![1, 1]]
        );
        let b = basis_enumerate(2, 2).unwrap();
        assert_eq!(b.len(), 10);
        assert_eq!(b[3], vec![1, 0, 1, 0]);
        assert_eq!(b[4], vec![1, 0, 0, 1]);
        assert_eq!(b[5], vec![0, 1, 1, 0]);
        assert_eq!(b[6], vec![0, 1, 0, 1]);
        assert_eq!(b[7], vec![0, 0, 2, 0]);
        assert_eq!(basis_enumerate(1, 3).unwrap().len(), 4);
        assert_eq!(basis_enumerate(3, 2).unwrap().len(), 21);
        assert_eq!(basis_enumerate(2, 3).unwrap().len(), 20);
    }

    #[test]
    fn fixture_entries() {
        assert_eq!(matrix_ta().get(0, 1), &poly("u^2 a^-2 b^2"));
        assert_eq!(matrix_tb().get(0, 0), &poly("u^-2 b^2"));
        let aba = fixture_ta_tb_ta();
        assert!(aba.get(0, 0).is_zero());
        assert_eq!(aba.get(2, 2), &poly("u^-1 a^-1 b"));
        assert_eq!(
            aba.get(1, 1),
            &poly("1 + u^-3 a^-1 - u^-2 a^-1 - u^-5 a^-2")
        );
    }

    #[test]
    fn moriyama_of_ma() {
        let m = matrix_ta()
            .specialize(&SpecializationTarget::Moriyama)
            .unwrap();
        assert_eq!(m.get(0, 1).to_plain_string(), "1");
        assert_eq!(m.get(0, 2).to_plain_string(), "-1 + u");
        assert_eq!(m.get(2, 1).to_plain_string(), "-1");
    }

    #[test]
    fn braid_identity_matches_fixture() {
        let (lhs, rhs) = braid_relation_sides().unwrap();
        assert_eq!(lhs, rhs);
        assert!(lhs.diff(&fixture_ta_tb_ta()).unwrap().is_empty());
    }

    #[test]
    fn shift_by_identity_and_back() {
        let m = matrix_ta();
        let id = HeisAutomorphism::identity(1);
        assert_eq!(m.shift(&id).unwrap(), m);
        let (ta, tb) = twist_pair();
        let tau = ta.compose(&tb).unwrap();
        assert_eq!(m.shift(&tau).unwrap().shift(&tau.inverse()).unwrap(), m);
    }

    #[test]
    fn compose_checks_twists() {
        let ma = matrix_ta();
        assert!(matches!(ma.compose(&ma), Err(Error::TwistMismatch(_))));
        let id = RepMatrix::identity(1, 3);
        assert_eq!(
            RepMatrix::compose_twisted(&id, &id, &HeisAutomorphism::identity(1)).unwrap(),
            id
        );
    }

    #[test]
    fn inverses_of_generators() {
        for m in [matrix_ta(), matrix_tb()] {
            let inv = m.mapping_class_inverse().unwrap();
            let prod = RepMatrix::compose_mapping_classes(&m, &inv).unwrap();
            assert!(prod.is_identity_matrix());
            assert!(prod.source_twist().is_identity());
            let prod = RepMatrix::compose_mapping_classes(&inv, &m).unwrap();
            assert!(prod.is_identity_matrix());
        }
    }

    #[test]
    fn untwist_examples() {
        let h = HeisElement::from_ints(0, &[1, -2]).unwrap();
        let m = RepMatrix::identity(1, 2)
            .with_twists(
                HeisAutomorphism::inner_of(&h).inverse(),
                HeisAutomorphism::identity(1),
            )
            .unwrap();
        let u = m.untwist(&h).unwrap();
        assert_eq!(
            u,
            RepMatrix::scalar(&HeisPolynomial::monomial(h.clone(), 1), 2)
        );
        assert!(matrix_ta().untwist(&h).is_err());
        let c = HeisElement::central(1, 3);
        let plain = RepMatrix::identity(1, 2);
        assert_eq!(
            plain.untwist(&c).unwrap(),
            RepMatrix::scalar(&poly("u^3"), 2)
        );
    }

    #[test]
    fn rescale_examples() {
        let u = poly("u");
        let central = RepMatrix::scalar(&poly("u^2"), 3);
        let (c, fam) = rescale(
            &central,
            &[(matrix_ta(), 0), (RepMatrix::identity(1, 3), 1)],
            &u,
            2,
        )
        .unwrap();
        assert!(c.is_identity_matrix());
        assert_eq!(fam[0], matrix_ta());
        assert_eq!(fam[1], RepMatrix::scalar(&poly("u^-1"), 3));
        assert!(rescale(&central, &[], &u, 1).is_err());
        assert!(rescale(&central, &[], &poly("a"), 2).is_err());
        assert!(rescale(&central, &[], &u, 0).is_err());
        let neg = RepMatrix::scalar(&poly("-u"), 2);
        let (c, _) = rescale(&neg, &[], &poly("-u"), 1).unwrap();
        assert!(c.is_identity_matrix());
    }

    #[test]
    fn separating_twist_shape() {
        let m = matrix_separating_twist(2).unwrap();
        assert_eq!((m.rows(), m.cols()), (10, 10));
        assert_eq!(
            m.get(6, 6),
            &HeisPolynomial::parse(SEPARATING_S, 2).unwrap()
        );
        assert!(m.get(3, 4).is_zero());
        assert_eq!(m.get(9, 9), &HeisPolynomial::one(2));
        assert!(matrix_separating_twist(1).is_err());
    }

    #[test]
    fn boundary_twist_matches_transcription() {
        let m = matrix_boundary_twist().unwrap();
        assert!(m.source_twist().is_identity());
        assert!(m.diff(&fixture_boundary_twist()).unwrap().is_empty());
        assert!(m
            .specialize(&SpecializationTarget::Moriyama)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn separating_twist_dies_in_the_moriyama_quotient() {
        for g in [2, 3] {
            let m = matrix_separating_twist(g).unwrap();
            assert!(m
                .specialize(&SpecializationTarget::Moriyama)
                .unwrap()
                .is_identity());
        }
    }

    #[test]
    fn latex_shape() {
        let s = matrix_ta().to_latex();
        assert!(s.starts_with("\\begin{pmatrix}"));
        assert!(s.contains("u^{2}a^{-2}b^{2}"));
        assert!(s.contains("(-1+u^{-1})a^{-1}b"));
    }
}
