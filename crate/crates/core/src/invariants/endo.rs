//! Recovering an endomorphism from a metric and a 2-form.

use crate::algebra::{check_relations, RelationReport};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::qi;
use crate::Rational;

/// `A` with `ω(X, Y) = g(AX, Y)` on a subspace, in the coordinates of the
/// given basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Endomorphism {
    pub a: Matrix<Rational>,
    pub a_squared: Matrix<Rational>,
    /// `Some(±1)` if `A² = ±1`.
    pub square_sign: Option<i64>,
    /// `g(AX, AY) = ±g(X, Y)` for all `X, Y`.
    pub metric_sign: Option<i64>,
    pub gram: Matrix<Rational>,
}

fn restrict(m: &Matrix<Rational>, basis: &[Vec<Rational>]) -> Matrix<Rational> {
    let b = Matrix::from_cols(basis, m.rows());
    &(&b.transpose() * m) * &b
}

/// Solves `ω(X, Y) = g(AX, Y)` on `span(basis)`; `g` and `ω` are given by
/// coefficient matrices in ambient coordinates.
pub fn endo_from_pair(g: &Matrix<Rational>, omega: &Matrix<Rational>, basis: &[Vec<Rational>]) -> Result<Endomorphism> {
    if basis.iter().any(|b| b.len() != g.rows()) {
        return Err(Error::DimensionMismatch {
            expected: g.rows(),
            found: basis.iter().map(Vec::len).find(|&l| l != g.rows()).unwrap_or(0),
        });
    }
    let gram = restrict(g, basis);
    let w = restrict(omega, basis);
    let inv = gram.inverse().ok_or(Error::DegenerateMetric)?;
    // Ω = Aᵀ G
    let a = &inv * &w.transpose();
    debug_assert_eq!(&a.transpose() * &gram, w);
    let a_squared = &a * &a;
    let id = Matrix::identity(basis.len());
    let square_sign = [1, -1].into_iter().find(|&s| a_squared == id.scale(&qi(s)));
    let pulled = &(&a.transpose() * &gram) * &a;
    let metric_sign = [1, -1].into_iter().find(|&s| pulled == gram.scale(&qi(s)));
    Ok(Endomorphism {
        a,
        a_squared,
        square_sign,
        metric_sign,
        gram,
    })
}

/// Recovers `I, S, T` from `g` and `ω_I, ω_S, ω_T` on a subspace and checks
/// the quaternionic and metric relations.
pub fn triple_from_forms(
    g: &Matrix<Rational>,
    omegas: [&Matrix<Rational>; 3],
    basis: &[Vec<Rational>],
) -> Result<([Endomorphism; 3], RelationReport)> {
    let [i, s, t] = omegas.map(|w| endo_from_pair(g, w, basis));
    let (i, s, t) = (i?, s?, t?);
    let report = check_relations(&i.a, &s.a, &t.a, &i.gram);
    Ok(([i, s, t], report))
}
