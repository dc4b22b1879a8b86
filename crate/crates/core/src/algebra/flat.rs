//! The flat hypersymplectic structure on `Bⁿ = ℝ^{4n}`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::quaternion::SplitQuaternion;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Endomorphisms, metric and Kähler-type forms of flat `Bⁿ`.
///
/// `I`, `S`, `T` are right multiplication by `-i`, `s`, `t`. In the complex
/// coordinates `ξ = z + w s` this reads `I(z,w) = (-iz, iw)`,
/// `S(z,w) = (w, z)`. Each `ω_a` is stored as the coefficient matrix
/// `ω_a(e_j, e_k) = g(a e_j, e_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatStructure<T> {
    pub n: usize,
    pub i: Matrix<T>,
    pub s: Matrix<T>,
    pub t: Matrix<T>,
    pub gram: Matrix<T>,
    pub omega_i: Matrix<T>,
    pub omega_s: Matrix<T>,
    pub omega_t: Matrix<T>,
}

/// Values of `g` and the three 2-forms on a pair of tangent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatValues<T> {
    pub g: T,
    pub omega_i: T,
    pub omega_s: T,
    pub omega_t: T,
}

/// Which of the quaternionic relations and metric compatibilities hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub i_squared_minus_one: bool,
    pub s_squared_one: bool,
    pub t_squared_one: bool,
    pub is_equals_t: bool,
    pub si_equals_minus_t: bool,
    pub g_i_invariant: bool,
    pub g_s_anti_invariant: bool,
    pub g_t_anti_invariant: bool,
}

impl RelationReport {
    pub fn quaternionic(&self) -> bool {
        self.i_squared_minus_one
            && self.s_squared_one
            && self.t_squared_one
            && self.is_equals_t
            && self.si_equals_minus_t
    }

    pub fn compatible(&self) -> bool {
        self.g_i_invariant && self.g_s_anti_invariant && self.g_t_anti_invariant
    }

    pub fn all_hold(&self) -> bool {
        self.quaternionic() && self.compatible()
    }
}

/// Checks `I² = -1, S² = T² = 1, IS = T = -SI` and the metric
/// compatibilities `AᵀGA = ±G` for endomorphism matrices on a space with
/// Gram matrix `gram`.
pub fn check_relations<T: Scalar>(
    i: &Matrix<T>,
    s: &Matrix<T>,
    t: &Matrix<T>,
    gram: &Matrix<T>,
) -> RelationReport {
    let id = Matrix::identity(gram.rows());
    let minus_id = -id.clone();
    let pulled = |a: &Matrix<T>| &(&a.transpose() * gram) * a;
    let neg_gram = -gram.clone();
    RelationReport {
        i_squared_minus_one: (i * i).approx_eq(&minus_id),
        s_squared_one: (s * s).approx_eq(&id),
        t_squared_one: (t * t).approx_eq(&id),
        is_equals_t: (i * s).approx_eq(t),
        si_equals_minus_t: (s * i).approx_eq(&-t.clone()),
        g_i_invariant: pulled(i).approx_eq(gram),
        g_s_anti_invariant: pulled(s).approx_eq(&neg_gram),
        g_t_anti_invariant: pulled(t).approx_eq(&neg_gram),
    }
}

/// Block-diagonal matrix with `n` copies of `block`.
pub fn block_diagonal<T: Scalar>(block: &Matrix<T>, n: usize) -> Matrix<T> {
    let b = block.rows();
    let mut m = Matrix::zeros(b * n, b * n);
    for k in 0..n {
        for r in 0..b {
            for c in 0..b {
                m[(k * b + r, k * b + c)] = block[(r, c)].clone();
            }
        }
    }
    m
}

impl<T: Scalar> FlatStructure<T> {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "flat structure needs n >= 1");
        let right = |p: SplitQuaternion<T>| block_diagonal(&p.right_mul_matrix(), n);
        let i = right(-SplitQuaternion::i());
        let s = right(SplitQuaternion::s());
        let t = right(SplitQuaternion::t());
        let gram = block_diagonal(
            &Matrix::diagonal(&[T::one(), T::one(), -T::one(), -T::one()]),
            n,
        );
        let form = |a: &Matrix<T>| &a.transpose() * &gram;
        Self {
            n,
            omega_i: form(&i),
            omega_s: form(&s),
            omega_t: form(&t),
            i,
            s,
            t,
            gram,
        }
    }

    pub fn dim(&self) -> usize {
        4 * self.n
    }

    pub fn relations(&self) -> RelationReport {
        check_relations(&self.i, &self.s, &self.t, &self.gram)
    }

    fn check_dim(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: &[T], y: &[T]) -> Result<FlatValues<T>> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(FlatValues {
            g: self.gram.bilinear(x, y),
            omega_i: self.omega_i.bilinear(x, y),
            omega_s: self.omega_s.bilinear(x, y),
            omega_t: self.omega_t.bilinear(x, y),
        })
    }

    /// `Ω = ω_I∧ω_I − ω_S∧ω_S − ω_T∧ω_T` on four tangent vectors.
    pub fn omega4(&self, v: [&[T]; 4]) -> Result<T> {
        for x in v {
            self.check_dim(x)?;
        }
        let sq = |w: &Matrix<T>| wedge_square(w, v);
        Ok(sq(&self.omega_i) - sq(&self.omega_s) - sq(&self.omega_t))
    }

    /// All coefficients are constant, so `dω_a = 0` and `dΩ = 0`.
    pub fn is_closed(&self) -> bool {
        true
    }
}

/// `(α∧α)(X₁,X₂,X₃,X₄)` for a 2-form with coefficient matrix `w`.
fn wedge_square<T: Scalar>(w: &Matrix<T>, v: [&[T]; 4]) -> T {
    let a = |p: usize, q: usize| w.bilinear(v[p], v[q]);
    let two = T::from_int(2);
    two * (a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2))
}

/// The 1-forms `dz_k`, `dz̄_k`, `dw_k` evaluated on a real tangent vector.
fn coordinate_differentials<T: Scalar>(x: &[T], k: usize) -> (Complex<T>, Complex<T>, Complex<T>, Complex<T>) {
    let b = 4 * k;
    let dz = Complex::new(x[b].clone(), x[b + 1].clone());
    let dw = Complex::new(x[b + 2].clone(), x[b + 3].clone());
    (dz.clone(), dz.conj(), dw.clone(), dw.conj())
}

fn wedge<T: Scalar>(a: (Complex<T>, Complex<T>), b: (Complex<T>, Complex<T>)) -> Complex<T> {
    // (α∧β)(X,Y) = α(X)β(Y) − α(Y)β(X), with a = (α(X), α(Y)), b = (β(X), β(Y)).
    a.0 * b.1 - a.1 * b.0
}

/// `Re Σ (dz_k dz̄_k − dw_k dw̄_k)` computed from complex coordinates.
pub fn coordinate_metric<T: Scalar>(x: &[T], y: &[T]) -> T {
    (0..x.len() / 4)
        .map(|k| {
            let (zx, _, wx, _) = coordinate_differentials(x, k);
            let (_, zby, _, wby) = coordinate_differentials(y, k);
            // the symmetric product ½(a b̄ + b ā) has value Re(a b̄)
            (zx * zby).re - (wx * wby).re
        })
        .fold(T::zero(), |a, b| a + b)
}

/// `(1/2i) Σ (dz_k∧dz̄_k + dw_k∧dw̄_k)` computed from complex coordinates.
pub fn coordinate_omega_i<T: Scalar>(x: &[T], y: &[T]) -> T {
    let total = (0..x.len() / 4)
        .map(|k| {
            let (zx, zbx, wx, wbx) = coordinate_differentials(x, k);
            let (zy, zby, wy, wby) = coordinate_differentials(y, k);
            wedge((zx, zy), (zbx, zby)) + wedge((wx, wy), (wbx, wby))
        })
        .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b);
    // divide by 2i: (a + ib)/(2i) = (b − ia)/2
    let half = T::from_ratio(1, 2);
    debug_assert!(total.re.is_negligible());
    total.im * half
}

/// `Σ dw_k∧dz̄_k` computed from complex coordinates.
pub fn coordinate_holomorphic_form<T: Scalar>(x: &[T], y: &[T]) -> Complex<T> {
    (0..x.len() / 4)
        .map(|k| {
            let (_, zbx, wx, _) = coordinate_differentials(x, k);
            let (_, zby, wy, _) = coordinate_differentials(y, k);
            wedge((wx, wy), (zbx, zby))
        })
        .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;
    use crate::Rational;

    fn e(dim: usize, k: usize) -> Vec<Rational> {
        (0..dim).map(|j| qi((j == k) as i64)).collect()
    }

    #[test]
    fn n1_identities() {
        let fs = FlatStructure::<Rational>::new(1);
        assert_eq!(&fs.i * &fs.i, -Matrix::identity(4));
        assert!(fs.relations().all_hold());
        assert!(fs.omega_i.is_antisymmetric());
    }

    #[test]
    fn s_swaps_z_and_w() {
        let fs = FlatStructure::<Rational>::new(1);
        // (z, w) = (1 + 2i, 3 + 4i)
        let v = vec![qi(1), qi(2), qi(3), qi(4)];
        assert_eq!(fs.s.mul_vec(&v), vec![qi(3), qi(4), qi(1), qi(2)]);
    }

    #[test]
    fn gram_signature_n2() {
        let fs = FlatStructure::<Rational>::new(2);
        assert_eq!(fs.gram.inertia(), (4, 4, 0));
    }

    #[test]
    fn omega_i_on_real_and_imaginary_z() {
        let fs = FlatStructure::<Rational>::new(1);
        let vals = fs.eval(&e(4, 0), &e(4, 1)).unwrap();
        // (1/2i) dz∧dz̄ = −dx∧dy, so ω_I(∂x, ∂y) = −1 on both routes.
        assert_eq!(vals.omega_i, qi(-1));
        assert_eq!(coordinate_omega_i(&e(4, 0), &e(4, 1)), qi(-1));
        let same = fs.eval(&e(4, 2), &e(4, 2)).unwrap();
        assert_eq!(same.omega_i, qi(0));
        assert_eq!(same.g, qi(-1));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let fs = FlatStructure::<Rational>::new(1);
        assert!(fs.eval(&e(8, 0), &e(4, 0)).is_err());
        assert!(fs.is_closed());
    }
}
