//! The right `B`-module `Bⁿ`, the groups `Sp(n,B)`, `𝔰𝔭(n,B)` and their
//! Abelian subgroups, and the complex coordinates `ξ = z + w s`.

use num_complex::Complex;

use super::quaternion::SplitQuaternion;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Point of `Bⁿ`.
#[derive(Clone, PartialEq, Debug)]
pub struct BVector<T>(pub Vec<SplitQuaternion<T>>);

impl<T: Scalar> BVector<T> {
    pub fn zeros(n: usize) -> Self {
        Self(vec![SplitQuaternion::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `⟨ξ, η⟩ = Re(ξ̄ᵀ η)`, signature (2n, 2n).
    pub fn inner(&self, other: &Self) -> T {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.inner(b))
    }

    pub fn norm_sqr(&self) -> T {
        self.inner(self)
    }

    /// `ξ · p` (right scalar multiplication).
    pub fn right_mul(&self, p: &SplitQuaternion<T>) -> Self {
        Self(self.0.iter().map(|x| x * p).collect())
    }

    /// Real coordinates in `ℝ^{4n}`, blocks `(x, y, u, v)` per slot.
    pub fn to_real(&self) -> Vec<T> {
        self.0.iter().flat_map(|p| p.coords()).collect()
    }

    pub fn from_real(coords: &[T]) -> Self {
        assert_eq!(coords.len() % 4, 0);
        Self(
            coords
                .chunks(4)
                .map(|c| SplitQuaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()))
                .collect(),
        )
    }
}

/// Square matrix with split-quaternion entries.
#[derive(Clone, PartialEq, Debug)]
pub struct BMatrix<T> {
    n: usize,
    entries: Vec<SplitQuaternion<T>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Membership {
    /// `Sp(n,B)`: `Āᵀ A = 1`.
    Group,
    /// `𝔰𝔭(n,B)`: `A + Āᵀ = 0`.
    Algebra,
}

impl<T: Scalar> BMatrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> SplitQuaternion<T>) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![SplitQuaternion::one(); n])
    }

    pub fn diagonal(d: &[SplitQuaternion<T>]) -> Self {
        Self::from_fn(d.len(), |i, j| {
            if i == j {
                d[i].clone()
            } else {
                SplitQuaternion::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &SplitQuaternion<T> {
        &self.entries[i * self.n + j]
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(SplitQuaternion::zero(), |acc, k| {
                acc + self.get(i, k) * other.get(k, j)
            })
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).clone() + other.get(i, j).clone())
    }

    /// `A ξ` (left matrix action).
    pub fn apply(&self, xi: &BVector<T>) -> BVector<T> {
        assert_eq!(self.n, xi.len());
        BVector(
            (0..self.n)
                .map(|i| {
                    (0..self.n).fold(SplitQuaternion::zero(), |acc, k| {
                        acc + self.get(i, k) * &xi.0[k]
                    })
                })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SplitQuaternion::is_zero)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a.approx_eq(b))
    }

    pub fn is_member(&self, mode: Membership) -> bool {
        let adj = self.conj_transpose();
        match mode {
            Membership::Group => adj.mul(self).approx_eq(&Self::identity(self.n)),
            Membership::Algebra => self.add(&adj).is_zero(),
        }
    }

    /// Real `4n × 4n` matrix of `ξ ↦ A ξ`.
    pub fn to_real(&self) -> Matrix<T> {
        let n = self.n;
        let mut m = Matrix::zeros(4 * n, 4 * n);
        for i in 0..n {
            for j in 0..n {
                let block = self.get(i, j).left_mul_matrix();
                for a in 0..4 {
                    for b in 0..4 {
                        m[(4 * i + a, 4 * j + b)] = block[(a, b)].clone();
                    }
                }
            }
        }
        m
    }
}

/// The action `(A, p) · ξ = A ξ p̄` of `Sp(n,B) × Sp(1,B)` on `Bⁿ`.
pub fn module_action<T: Scalar>(
    a: &BMatrix<T>,
    p: &SplitQuaternion<T>,
    xi: &BVector<T>,
) -> Result<BVector<T>> {
    if !p.norm_sqr().approx_eq(&T::one()) {
        return Err(Error::NonUnitParameter(p.norm_sqr().to_string()));
    }
    if a.size() != xi.len() {
        return Err(Error::DimensionMismatch {
            expected: a.size(),
            found: xi.len(),
        });
    }
    if !a.is_member(Membership::Group) {
        return Err(Error::NotInGroup);
    }
    Ok(a.apply(xi).right_mul(&p.conj()))
}

/// Which Abelian subgroup to build a diagonal element of.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AbelianMode {
    /// `Tⁿ = diag(e^{iθ_k})`, parameters `(cos θ, sin θ)`.
    Torus,
    /// `Rⁿ = diag(e^{sφ_k})`, parameters `(cosh φ, sinh φ)`.
    Split,
}

/// Diagonal element of `Tⁿ` or `Rⁿ` from rational points on the circle
/// `c² + s² = 1` or the hyperbola `c² − s² = 1`.
pub fn abelian_element<T: Scalar>(params: &[(T, T)], mode: AbelianMode) -> Result<BMatrix<T>> {
    let entries = params
        .iter()
        .map(|(c, s)| {
            let (lhs, entry, curve) = match mode {
                AbelianMode::Torus => (
                    c.clone() * c.clone() + s.clone() * s.clone(),
                    SplitQuaternion::new(c.clone(), s.clone(), T::zero(), T::zero()),
                    "unit circle",
                ),
                AbelianMode::Split => (
                    c.clone() * c.clone() - s.clone() * s.clone(),
                    SplitQuaternion::new(c.clone(), T::zero(), s.clone(), T::zero()),
                    "unit hyperbola",
                ),
            };
            if lhs.approx_eq(&T::one()) {
                Ok(entry)
            } else {
                Err(Error::OffCircle(c.to_string(), s.to_string(), curve))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BMatrix::diagonal(&entries))
}

/// Complex coordinates `(z, w) ∈ ℂ^{n,n}` with `ξ = z + w s`.
///
/// A split quaternion `x + iy + su + tv` corresponds to `z = x + iy`,
/// `w = u + iv`, since `(u + iv) s = su + tv`.
#[derive(Clone, PartialEq, Debug)]
pub struct ComplexPair<T> {
    pub z: Vec<Complex<T>>,
    pub w: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexPair<T> {
    pub fn from_bvector(xi: &BVector<T>) -> Self {
        let z = xi.0.iter().map(|p| Complex::new(p.x.clone(), p.y.clone())).collect();
        let w = xi.0.iter().map(|p| Complex::new(p.u.clone(), p.v.clone())).collect();
        Self { z, w }
    }

    pub fn to_bvector(&self) -> BVector<T> {
        assert_eq!(self.z.len(), self.w.len());
        BVector(
            self.z
                .iter()
                .zip(&self.w)
                .map(|(z, w)| SplitQuaternion::new(z.re.clone(), z.im.clone(), w.re.clone(), w.im.clone()))
                .collect(),
        )
    }
}
