//! The structure induced on `H = ker dμ ∩ 𝔊^⊥` at a point of the level set.

use num_traits::Zero;

use super::config::ToricConfig;
use crate::algebra::{check_relations, FlatStructure, RelationReport};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::qi;
use crate::{ComplexQ, Rational};

/// Restrictions of `g`, `ω_I`, `ω_S`, `ω_T` to a basis of `H` and the
/// endomorphisms they determine.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedStructure {
    /// Basis of `H` as vectors of `ℝ^{4d}`.
    pub basis: Vec<Vec<Rational>>,
    pub gram: Matrix<Rational>,
    pub omega_i: Matrix<Rational>,
    pub omega_s: Matrix<Rational>,
    pub omega_t: Matrix<Rational>,
    pub i: Matrix<Rational>,
    pub s: Matrix<Rational>,
    pub t: Matrix<Rational>,
    pub relations: RelationReport,
    /// `(positive, negative, zero)` eigenvalue counts of `g|_H`.
    pub signature: (usize, usize, usize),
}

impl InducedStructure {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Real coordinates `(x, y, u, v)` per slot of `(z, w)`.
fn real_coords(z: &[ComplexQ], w: &[ComplexQ]) -> Vec<Rational> {
    z.iter()
        .zip(w)
        .flat_map(|(zk, wk)| [zk.re.clone(), zk.im.clone(), wk.re.clone(), wk.im.clone()])
        .collect()
}

/// Fundamental vector field of `ξ ∈ 𝔫` at `x`, for the action
/// `(z, w) ↦ (e^{iθ}z, e^{iθ}w)` on each slot.
pub fn generator(xi: &[Rational], x: &[Rational]) -> Vec<Rational> {
    let mut out = vec![qi(0); x.len()];
    for (k, c) in xi.iter().enumerate() {
        let b = 4 * k;
        out[b] = -(c * &x[b + 1]);
        out[b + 1] = c * &x[b];
        out[b + 2] = -(c * &x[b + 3]);
        out[b + 3] = c * &x[b + 2];
    }
    out
}

/// Computes the induced structure at `(z, w) ∈ μ⁻¹(0)`.
///
/// Fails with [`Error::NotOnLevelSet`] off the level set and with
/// [`Error::DegenerateAtPoint`] where `𝔊` is not a nondegenerate
/// subspace of dimension `dim 𝔫` or `dμ` is not surjective.
pub fn induced_structure(cfg: &ToricConfig, z: &[ComplexQ], w: &[ComplexQ]) -> Result<InducedStructure> {
    let torus = cfg.torus();
    let (mu_i, mu_c) = cfg.moment_map(&torus, z, w)?;
    if !mu_i.iter().all(Zero::is_zero) || !mu_c.iter().all(Zero::is_zero) {
        return Err(Error::NotOnLevelSet);
    }
    let flat = FlatStructure::<Rational>::new(cfg.d());
    let x = real_coords(z, w);
    let m = torus.dim();
    let gens: Vec<Vec<Rational>> = torus.basis.iter().map(|v| generator(v, &x)).collect();

    if m > 0 {
        let span = Matrix::from_rows(&gens);
        let g_gens = &(&span * &flat.gram) * &span.transpose();
        let rank = g_gens.rank();
        if rank < m {
            return Err(Error::DegenerateAtPoint { rank, dim: m });
        }
    }

    // ker dμ: rows X_pᵀ Ω_a; 𝔊^⊥: rows X_pᵀ G.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for omega in [&flat.omega_i, &flat.omega_s, &flat.omega_t] {
        for g in &gens {
            rows.push(omega.transpose().mul_vec(g));
        }
    }
    if m > 0 {
        let rank = Matrix::from_rows(&rows).rank();
        if rank < 3 * m {
            return Err(Error::DegenerateAtPoint { rank, dim: 3 * m });
        }
    }
    for g in &gens {
        rows.push(flat.gram.mul_vec(g));
    }
    let basis = if rows.is_empty() {
        (0..flat.dim())
            .map(|j| (0..flat.dim()).map(|i| qi((i == j) as i64)).collect())
            .collect()
    } else {
        Matrix::from_rows(&rows).kernel()
    };
    let h = Matrix::from_cols(&basis, flat.dim());
    let restrict = |form: &Matrix<Rational>| &(&h.transpose() * form) * &h;
    let gram = restrict(&flat.gram);
    let gram_inv = gram.inverse().ok_or(Error::DegenerateMetric)?;
    let omega_i = restrict(&flat.omega_i);
    let omega_s = restrict(&flat.omega_s);
    let omega_t = restrict(&flat.omega_t);
    // ω(X, Y) = g(AX, Y) gives Ω = Aᵀ G, so A = G⁻¹ Ωᵀ.
    let endo = |omega: &Matrix<Rational>| &gram_inv * &omega.transpose();
    let (i, s, t) = (endo(&omega_i), endo(&omega_s), endo(&omega_t));
    let relations = check_relations(&i, &s, &t, &gram);
    let signature = gram.inertia();
    Ok(InducedStructure {
        basis,
        gram,
        omega_i,
        omega_s,
        omega_t,
        i,
        s,
        t,
        relations,
        signature,
    })
}

#[cfg(test)]
mod tests {
    use num_complex::Complex;

    use super::*;

    fn c(re: i64, im: i64) -> ComplexQ {
        Complex::new(qi(re), qi(im))
    }

    #[test]
    fn example_family_point() {
        let cfg = ToricConfig::example_family(1, qi(1)).unwrap();
        let h = induced_structure(&cfg, &[c(1, 1), c(2, 0)], &[c(0, 0), c(0, 0)]).unwrap();
        assert_eq!(h.dim(), 4);
        assert!(h.relations.all_hold(), "{:?}", h.relations);
        assert_eq!(h.signature, (2, 2, 0));
    }

    #[test]
    fn trivial_torus_is_flat() {
        let cfg = ToricConfig::identity(2);
        let h = induced_structure(&cfg, &[c(1, 0), c(0, 3)], &[c(2, 1), c(0, 0)]).unwrap();
        assert_eq!(h.dim(), 8);
        assert!(h.relations.all_hold());
    }

    #[test]
    fn origin_is_degenerate() {
        let cfg = ToricConfig::new(1, &[vec![1], vec![1]], [vec![qi(0); 2], vec![qi(0); 2], vec![qi(0); 2]]).unwrap();
        let err = induced_structure(&cfg, &[c(0, 0), c(0, 0)], &[c(0, 0), c(0, 0)]).unwrap_err();
        assert!(matches!(err, Error::DegenerateAtPoint { rank: 0, dim: 1 }));
    }

    #[test]
    fn off_level_set() {
        let cfg = ToricConfig::example_family(1, qi(1)).unwrap();
        let err = induced_structure(&cfg, &[c(1, 0), c(0, 0)], &[c(0, 0), c(0, 0)]).unwrap_err();
        assert!(matches!(err, Error::NotOnLevelSet));
    }

    #[test]
    fn generator_is_tangent_to_orbit() {
        let x = vec![qi(1), qi(2), qi(3), qi(4)];
        assert_eq!(generator(&[qi(1)], &x), vec![qi(-2), qi(1), qi(-4), qi(3)]);
    }
}
