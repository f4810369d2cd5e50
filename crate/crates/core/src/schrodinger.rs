//! Finite Schrödinger representations `ϖ_N` of `ℋ` on `ℂ^{N^g}` and their Weil intertwiners.
//!
//! `[ϖ_N(k, Σ pᵢaᵢ + qᵢbᵢ)ψ](ς) = e^{iπ(k + p·q)/N} e^{2πi q·ς/N} ψ(ς + p)`.
//! Phases are reduced exactly modulo `2N` before conversion to floating point.
//!
//! For a symplectic `S`, `ϖ_N ∘ (δ, S)` is equivalent to `ϖ_N` only when `(δ, S)` preserves
//! the kernel of `ϖ_N`. Since `ϖ_N(0, N·x) = (−1)^{N·Q(x)}` with `Q(l, m) = Σ lᵢmᵢ`, this means
//! `δ ≡ 0 mod 2` for even `N` and `δ(eⱼ) ≡ Q(S eⱼ) mod 2` for odd `N`. The intertwiner of a
//! `δ = 0` automorphism is therefore computed for its parity lift when `N` is odd.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::aut::HeisAutomorphism;
use crate::error::{Error, Result};
use crate::heis::{Generator, HeisElement};

/// Default tolerance for representation checks.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Singular values below this count towards the intertwiner space.
pub const NULL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    data: DMatrix<Complex64>,
}

impl UnitaryMatrix {
    pub fn from_matrix(data: DMatrix<Complex64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::Dimension("unitary matrices are square".into()));
        }
        Ok(Self { data })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            data: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[(i, j)]
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            data: &self.data * &other.data,
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            data: self.data.adjoint(),
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            data: self.data.map(|x| x * z),
        }
    }

    /// `max |xᵢⱼ − yᵢⱼ|`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint()
            .mul(self)
            .max_diff(&Self::identity(self.dim()))
    }

    /// Rows of `[re, im]` pairs.
    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| {
                        let z = self.data[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect()
    }
}

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "N must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn dimension(n: u32, genus: usize) -> Result<usize> {
    let d = (n as usize)
        .checked_pow(genus as u32)
        .filter(|&d| d <= 4096)
        .ok_or_else(|| Error::InvalidArgument(format!("N^g too large for N={n}, g={genus}")))?;
    Ok(d)
}

/// Digits of a state index, most significant first.
fn digits(mut idx: usize, n: usize, genus: usize) -> Vec<usize> {
    let mut out = vec![0; genus];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

fn undigits(d: &[usize], n: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * n + x)
}

/// The matrix of `ϖ_N(h)` on `ℂ^{N^g}`.
pub fn schrodinger_matrix(n: u32, genus: usize, h: &HeisElement) -> Result<UnitaryMatrix> {
    check_n(n)?;
    if h.genus() != genus {
        return Err(Error::GenusMismatch {
            left: genus,
            right: h.genus(),
        });
    }
    let dim = dimension(n, genus)?;
    let nb = BigInt::from(n);
    let two_n = BigInt::from(2 * n);
    let coords = h.coords();
    let p: Vec<BigInt> = coords.iter().step_by(2).cloned().collect();
    let q: Vec<BigInt> = coords.iter().skip(1).step_by(2).cloned().collect();
    let pq: BigInt = p.iter().zip(&q).map(|(a, b)| a * b).sum();
    let base = (h.k() + pq).mod_floor(&two_n);
    let p_mod: Vec<usize> = p
        .iter()
        .map(|x| x.mod_floor(&nb).to_usize().expect("reduced"))
        .collect();
    let q_mod: Vec<i64> = q
        .iter()
        .map(|x| x.mod_floor(&two_n).to_i64().expect("reduced"))
        .collect();
    let base = base.to_i64().expect("reduced");
    let n_us = n as usize;
    let n_i = i64::from(n);
    let mut data = DMatrix::from_element(dim, dim, Complex64::zero());
    for row in 0..dim {
        let s = digits(row, n_us, genus);
        let qs: i64 = q_mod.iter().zip(&s).map(|(a, &b)| a * b as i64).sum();
        let e = (base + 2 * qs).rem_euclid(2 * n_i);
        let target: Vec<usize> = s.iter().zip(&p_mod).map(|(a, b)| (a + b) % n_us).collect();
        let angle = std::f64::consts::PI * e as f64 / f64::from(n);
        data[(row, undigits(&target, n_us))] = Complex64::from_polar(1.0, angle);
    }
    Ok(UnitaryMatrix { data })
}

/// One line of a numerical verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericCheck {
    pub name: String,
    pub error: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericReport {
    pub title: String,
    pub tolerance: f64,
    pub checks: Vec<NumericCheck>,
}

impl NumericReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_error(&self) -> f64 {
        self.checks.iter().map(|c| c.error).fold(0.0, f64::max)
    }
}

fn generator_list(genus: usize) -> Vec<(String, HeisElement)> {
    let mut gens = vec![("u".to_string(), HeisElement::u(genus))];
    for i in 1..=genus {
        for g in [Generator::A(i), Generator::B(i)] {
            gens.push((g.to_string(), g.element(genus).expect("in range")));
        }
    }
    let inverses: Vec<_> = gens
        .iter()
        .map(|(name, e)| (format!("{name}^-1"), e.inverse()))
        .collect();
    gens.extend(inverses);
    gens
}

/// Checks unitarity, multiplicativity on generator pairs, the central character and the
/// commutators `ϖ(aᵢ)ϖ(bᵢ)ϖ(aᵢ)⁻¹ϖ(bᵢ)⁻¹ = e^{2πi/N}`.
pub fn verify_schrodinger_rep(n: u32, genus: usize, tol: f64) -> Result<NumericReport> {
    check_n(n)?;
    let mut checks = Vec::new();
    let mut push = |name: String, error: f64| {
        checks.push(NumericCheck {
            passed: error < tol,
            name,
            error,
        })
    };
    let gens = generator_list(genus);
    let images: Vec<UnitaryMatrix> = gens
        .iter()
        .map(|(_, e)| schrodinger_matrix(n, genus, e))
        .collect::<Result<_>>()?;
    for ((name, _), m) in gens.iter().zip(&images) {
        push(format!("unitary {name}"), m.unitarity_defect());
    }
    for (i, (nx, x)) in gens.iter().enumerate() {
        for (j, (ny, y)) in gens.iter().enumerate() {
            let lhs = images[i].mul(&images[j]);
            let rhs = schrodinger_matrix(n, genus, &x.mul(y)?)?;
            push(format!("product {nx} * {ny}"), lhs.max_diff(&rhs));
        }
    }
    let dim = images[0].dim();
    for m in [-3i64, -1, 2, 5] {
        let img = schrodinger_matrix(n, genus, &HeisElement::central(genus, m))?;
        let phase = Complex64::from_polar(1.0, std::f64::consts::PI * m as f64 / f64::from(n));
        push(
            format!("central u^{m}"),
            img.max_diff(&UnitaryMatrix::identity(dim).scale(phase)),
        );
    }
    for i in 1..=genus {
        let a = schrodinger_matrix(n, genus, &Generator::A(i).element(genus)?)?;
        let b = schrodinger_matrix(n, genus, &Generator::B(i).element(genus)?)?;
        let comm = a.mul(&b).mul(&a.adjoint()).mul(&b.adjoint());
        let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / f64::from(n));
        push(
            format!("commutator a{i} b{i}"),
            comm.max_diff(&UnitaryMatrix::identity(dim).scale(phase)),
        );
    }
    Ok(NumericReport {
        title: format!("Schrödinger representation N={n}, genus {genus}"),
        tolerance: tol,
        checks,
    })
}

/// A normalized intertwiner together with the data that certifies it.
#[derive(Debug, Clone, PartialEq)]
pub struct Intertwiner {
    pub matrix: UnitaryMatrix,
    /// The automorphism actually intertwined (the parity lift for odd `N`).
    pub lift: HeisAutomorphism,
    /// Smallest and second-smallest singular values of the intertwining system.
    pub singular_values: [f64; 2],
    /// `max_h ‖U ϖ(h) − ϖ(φ h) U‖_max` over the generators `aᵢ, bᵢ`.
    pub residual: f64,
}

/// The automorphism whose intertwiner represents `(0, S)` at level `N`.
pub fn weil_lift(n: u32, phi: &HeisAutomorphism) -> HeisAutomorphism {
    if n % 2 == 1 {
        phi.parity_lift()
    } else {
        phi.clone()
    }
}

/// Solves `U ϖ(h) = ϖ(φ h) U` for `h ∈ {aᵢ, bᵢ}` without any restriction on `δ`.
pub fn intertwiner_for(n: u32, genus: usize, phi: &HeisAutomorphism) -> Result<Intertwiner> {
    check_n(n)?;
    if phi.genus() != genus {
        return Err(Error::GenusMismatch {
            left: genus,
            right: phi.genus(),
        });
    }
    let dim = dimension(n, genus)?;
    let d2 = dim * dim;
    let gens: Vec<HeisElement> = (1..=genus)
        .flat_map(|i| [Generator::A(i), Generator::B(i)])
        .map(|g| g.element(genus).expect("in range"))
        .collect();
    let eye = DMatrix::<Complex64>::identity(dim, dim);
    let mut system = DMatrix::<Complex64>::zeros(gens.len() * d2, d2);
    let mut pairs = Vec::with_capacity(gens.len());
    for (t, h) in gens.iter().enumerate() {
        let a = schrodinger_matrix(n, genus, h)?;
        let b = schrodinger_matrix(n, genus, &phi.apply(h)?)?;
        // vec(U A − B U) = (Aᵀ ⊗ I − I ⊗ B) vec(U), column-major
        let block = a.data.transpose().kronecker(&eye) - eye.kronecker(&b.data);
        system.view_mut((t * d2, 0), (d2, d2)).copy_from(&block);
        pairs.push((a, b));
    }
    let svd = system.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let sv = |k: usize| {
        order
            .get(k)
            .map_or(f64::INFINITY, |&i| svd.singular_values[i])
    };
    let singular_values = [sv(0), sv(1)];
    let null_dim = order
        .iter()
        .filter(|&&i| svd.singular_values[i] < NULL_TOL)
        .count();
    if null_dim != 1 {
        return Err(Error::IntertwinerDimension {
            dimension: null_dim,
        });
    }
    let row = v_t.row(order[0]);
    let mut u = DMatrix::<Complex64>::zeros(dim, dim);
    for c in 0..dim {
        for r in 0..dim {
            u[(r, c)] = row[c * dim + r].conj();
        }
    }
    // Schur: U†U is a positive multiple of I
    let scale = (u.adjoint() * &u)[(0, 0)].re.sqrt();
    u /= Complex64::new(scale, 0.0);
    let first = u
        .transpose()
        .iter()
        .copied()
        .find(|z| z.norm() > NULL_TOL)
        .expect("non-zero solution");
    u *= first.conj() / first.norm();
    let matrix = UnitaryMatrix { data: u };
    let residual = pairs
        .iter()
        .map(|(a, b)| matrix.mul(a).max_diff(&b.mul(&matrix)))
        .fold(0.0, f64::max);
    Ok(Intertwiner {
        matrix,
        lift: phi.clone(),
        singular_values,
        residual,
    })
}

/// The Weil intertwiner of a symplectic automorphism `(0, S)`, unique up to a phase, with
/// the first non-zero entry (row-major) made positive real.
pub fn weil_intertwiner(n: u32, genus: usize, phi: &HeisAutomorphism) -> Result<Intertwiner> {
    if !phi.has_trivial_delta() {
        return Err(Error::InvalidArgument(
            "Weil intertwiners are defined for automorphisms with zero delta".into(),
        ));
    }
    intertwiner_for(n, genus, &weil_lift(n, phi))
}

/// `λ` with `U_{φ₁φ₂} = λ·U_{φ₁}U_{φ₂}`.
pub fn weil_cocycle(
    n: u32,
    genus: usize,
    phi1: &HeisAutomorphism,
    phi2: &HeisAutomorphism,
) -> Result<Complex64> {
    let u1 = weil_intertwiner(n, genus, phi1)?;
    let u2 = weil_intertwiner(n, genus, phi2)?;
    let u12 = intertwiner_for(n, genus, &u1.lift.compose(&u2.lift)?)?;
    let prod = u1.matrix.mul(&u2.matrix);
    let dim = prod.dim() as f64;
    let lambda = (prod.adjoint().mul(&u12.matrix)).data.trace() / dim;
    if u12.matrix.max_diff(&prod.scale(lambda)) > 1e-8 {
        return Err(Error::Inconsistent(
            "composite intertwiner is not a multiple of the product".into(),
        ));
    }
    Ok(lambda)
}

/// Standard symplectic generators of `Sp(2g, ℤ)` with zero `δ`: the transvections along
/// `aᵢ`, `bᵢ` and the rotation `aᵢ ↦ bᵢ, bᵢ ↦ −aᵢ` on each handle.
pub fn standard_generators(genus: usize) -> Result<Vec<(String, HeisAutomorphism)>> {
    let mut out = Vec::new();
    for i in 1..=genus {
        let embed = |block: [[i64; 2]; 2]| -> Result<HeisAutomorphism> {
            let n = 2 * genus;
            let mut s = vec![vec![BigInt::zero(); n]; n];
            for (r, row) in s.iter_mut().enumerate() {
                row[r] = BigInt::from(1);
            }
            let o = 2 * (i - 1);
            for r in 0..2 {
                for c in 0..2 {
                    s[o + r][o + c] = BigInt::from(block[r][c]);
                }
            }
            HeisAutomorphism::new(vec![BigInt::zero(); n], s)
        };
        out.push((format!("ta{i}"), embed([[1, -1], [0, 1]])?));
        out.push((format!("tb{i}"), embed([[1, 0], [1, 1]])?));
        out.push((format!("j{i}"), embed([[0, -1], [1, 0]])?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(k: i64, c: &[i64]) -> HeisElement {
        HeisElement::from_ints(k, c).unwrap()
    }

    #[test]
    fn centre_acts_by_phase() {
        let m = schrodinger_matrix(5, 1, &HeisElement::u(1)).unwrap();
        let phase = Complex64::from_polar(1.0, std::f64::consts::PI / 5.0);
        assert!(m.max_diff(&UnitaryMatrix::identity(5).scale(phase)) < 1e-14);
    }

    #[test]
    fn b_is_diagonal_and_a_is_a_shift() {
        let n = 4;
        let b = schrodinger_matrix(n, 1, &el(0, &[0, 1])).unwrap();
        let a = schrodinger_matrix(n, 1, &el(0, &[1, 0])).unwrap();
        for s in 0..4usize {
            let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * s as f64 / 4.0);
            assert!((b.get(s, s) - want).norm() < 1e-14);
            assert!((a.get(s, (s + 1) % 4) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn representation_checks_pass() {
        for (n, g) in [(2, 1), (5, 2), (3, 1)] {
            let r = verify_schrodinger_rep(n, g, 1e-10).unwrap();
            assert!(r.all_pass(), "N={n} g={g}: {}", r.max_error());
        }
        assert!(verify_schrodinger_rep(1, 1, 1e-10).is_err());
    }

    #[test]
    fn identity_intertwiner() {
        for n in [2, 3, 4] {
            let w = weil_intertwiner(n, 1, &HeisAutomorphism::identity(1)).unwrap();
            assert!(w.matrix.max_diff(&UnitaryMatrix::identity(n as usize)) < 1e-10);
        }
    }

    #[test]
    fn transvection_intertwiner() {
        let (_, ta) = &standard_generators(1).unwrap()[0];
        for n in [2, 3, 4, 5] {
            let w = weil_intertwiner(n, 1, ta).unwrap();
            assert!(w.residual < 1e-10, "N={n} residual {}", w.residual);
            assert!(w.singular_values[0] < 1e-10);
            assert!(w.singular_values[1] > 1e-6);
            assert!(w.matrix.unitarity_defect() < 1e-10);
        }
    }

    #[test]
    fn rejects_nonzero_delta() {
        let tb = HeisAutomorphism::twist_b(1, 1).unwrap();
        assert!(weil_intertwiner(3, 1, &tb).is_err());
    }

    #[test]
    fn genus_two_intertwiners() {
        for (_, phi) in standard_generators(2).unwrap() {
            let w = weil_intertwiner(3, 2, &phi).unwrap();
            assert!(w.residual < 1e-10);
        }
    }

    #[test]
    fn cocycle_has_modulus_one() {
        let gens = standard_generators(1).unwrap();
        for n in [3, 4] {
            for (_, x) in &gens {
                for (_, y) in &gens {
                    let l = weil_cocycle(n, 1, x, y).unwrap();
                    assert!((l.norm() - 1.0).abs() < 1e-10);
                }
            }
            let id = HeisAutomorphism::identity(1);
            let l = weil_cocycle(n, 1, &gens[0].1, &id).unwrap();
            assert!((l - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }
}
