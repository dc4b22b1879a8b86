use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Split quaternion `x + i y + s u + t v` with `i² = -1`, `s² = t² = 1`,
/// `is = t = -si`.
///
/// The norm `‖p‖² = x² + y² − u² − v²` has signature (2,2). The letters
/// `u`, `v` are the coefficients of `s`, `t`; some texts write the norm as
/// `x² + y² − s² − t²`, reusing the basis names for the coefficients.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct SplitQuaternion<T> {
    pub x: T,
    pub y: T,
    pub u: T,
    pub v: T,
}

/// Outcome of squaring a split quaternion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SquareClass {
    MinusOne,
    PlusOne,
    Neither,
}

impl<T: Scalar> SplitQuaternion<T> {
    pub fn new(x: T, y: T, u: T, v: T) -> Self {
        Self { x, y, u, v }
    }

    pub fn from_real(x: T) -> Self {
        Self::new(x, T::zero(), T::zero(), T::zero())
    }

    pub fn zero() -> Self {
        Self::from_real(T::zero())
    }

    pub fn one() -> Self {
        Self::from_real(T::one())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn s() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn t() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Basis element by index in the ordering `(1, i, s, t)`.
    pub fn basis(k: usize) -> Self {
        let mut c = [T::zero(), T::zero(), T::zero(), T::zero()];
        c[k] = T::one();
        Self::from_coords(c)
    }

    pub fn from_coords([x, y, u, v]: [T; 4]) -> Self {
        Self { x, y, u, v }
    }

    pub fn coords(&self) -> [T; 4] {
        [self.x.clone(), self.y.clone(), self.u.clone(), self.v.clone()]
    }

    pub fn conj(&self) -> Self {
        Self::new(self.x.clone(), -self.y.clone(), -self.u.clone(), -self.v.clone())
    }

    pub fn norm_sqr(&self) -> T {
        self.x.clone() * self.x.clone() + self.y.clone() * self.y.clone()
            - self.u.clone() * self.u.clone()
            - self.v.clone() * self.v.clone()
    }

    /// `⟨p, q⟩ = Re(p̄ q)`.
    pub fn inner(&self, other: &Self) -> T {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
            - self.u.clone() * other.u.clone()
            - self.v.clone() * other.v.clone()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            self.x.clone() * c.clone(),
            self.y.clone() * c.clone(),
            self.u.clone() * c.clone(),
            self.v.clone() * c.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(Scalar::is_negligible)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.x.is_negligible()
    }

    /// Classifies `p²` by squaring directly.
    pub fn classify_square(&self) -> SquareClass {
        let sq = self.clone() * self.clone();
        if sq.approx_eq(&-Self::one()) {
            SquareClass::MinusOne
        } else if sq.approx_eq(&Self::one()) {
            SquareClass::PlusOne
        } else {
            SquareClass::Neither
        }
    }

    /// Classifies `p²` from the coefficients alone: `p² = -1` iff `p` is
    /// imaginary with `y² − u² − v² = 1`; `p² = +1` iff `p` is imaginary with
    /// `y² − u² − v² = −1`, or `p = ±1`.
    pub fn classify_square_by_criterion(&self) -> SquareClass {
        let imag_norm = self.y.clone() * self.y.clone()
            - self.u.clone() * self.u.clone()
            - self.v.clone() * self.v.clone();
        if self.is_imaginary() {
            if imag_norm.approx_eq(&T::one()) {
                return SquareClass::MinusOne;
            }
            if imag_norm.approx_eq(&-T::one()) {
                return SquareClass::PlusOne;
            }
        }
        let pure_real =
            self.y.is_negligible() && self.u.is_negligible() && self.v.is_negligible();
        if pure_real && (self.x.approx_eq(&T::one()) || self.x.approx_eq(&-T::one())) {
            return SquareClass::PlusOne;
        }
        SquareClass::Neither
    }

    /// Real 4×4 matrix of `ξ ↦ ξ · self` in the basis `(1, i, s, t)`.
    pub fn right_mul_matrix(&self) -> Matrix<T> {
        let cols: Vec<Vec<T>> = (0..4)
            .map(|k| (Self::basis(k) * self.clone()).coords().to_vec())
            .collect();
        Matrix::from_cols(&cols, 4)
    }

    /// Real 4×4 matrix of `ξ ↦ self · ξ`.
    pub fn left_mul_matrix(&self) -> Matrix<T> {
        let cols: Vec<Vec<T>> = (0..4)
            .map(|k| (self.clone() * Self::basis(k)).coords().to_vec())
            .collect();
        Matrix::from_cols(&cols, 4)
    }
}

impl<T: Scalar> Mul for SplitQuaternion<T> {
    type Output = Self;

    fn mul(self, q: Self) -> Self {
        &self * &q
    }
}

impl<T: Scalar> Mul for &SplitQuaternion<T> {
    type Output = SplitQuaternion<T>;

    // it = -s, ti = s, st = -i, ts = i follow from is = t = -si.
    fn mul(self, q: &SplitQuaternion<T>) -> SplitQuaternion<T> {
        let (x1, y1, u1, v1) = (&self.x, &self.y, &self.u, &self.v);
        let (x2, y2, u2, v2) = (&q.x, &q.y, &q.u, &q.v);
        let p = |a: &T, b: &T| a.clone() * b.clone();
        SplitQuaternion {
            x: p(x1, x2) - p(y1, y2) + p(u1, u2) + p(v1, v2),
            y: p(x1, y2) + p(y1, x2) - p(u1, v2) + p(v1, u2),
            u: p(x1, u2) + p(u1, x2) - p(y1, v2) + p(v1, y2),
            v: p(x1, v2) + p(v1, x2) + p(y1, u2) - p(u1, y2),
        }
    }
}

impl<T: Scalar> Add for SplitQuaternion<T> {
    type Output = Self;

    fn add(self, q: Self) -> Self {
        Self::new(self.x + q.x, self.y + q.y, self.u + q.u, self.v + q.v)
    }
}

impl<T: Scalar> Sub for SplitQuaternion<T> {
    type Output = Self;

    fn sub(self, q: Self) -> Self {
        Self::new(self.x - q.x, self.y - q.y, self.u - q.u, self.v - q.v)
    }
}

impl<T: Scalar> Neg for SplitQuaternion<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.u, -self.v)
    }
}

impl<T: Scalar> fmt::Display for SplitQuaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}s + {}t", self.x, self.y, self.u, self.v)
    }
}
