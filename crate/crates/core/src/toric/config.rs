//! Torus data: `β(e_k) = u_k`, `𝔫 = ker β`, the projections `α_k` and the
//! level-set equations.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::convex::{integral_kernel_basis, Affine, IntegerMatrix, SecondOrderCone, SocSystem};
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::scalar::{format_rational, qi};
use crate::{ComplexQ, Rational};

/// A subtorus `N ≤ T^d` given by integral `u_1, …, u_d ∈ ℤⁿ`, together with
/// the level `λ^{(1)}, λ^{(2)}, λ^{(3)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricConfig {
    d: usize,
    n: usize,
    /// `n × d`, columns `u_k`.
    u: IntegerMatrix,
    lambda: [Vec<Rational>; 3],
}

impl ToricConfig {
    /// Validates and builds a configuration from the columns `u_k`.
    pub fn new(n: usize, columns: &[Vec<i64>], lambda: [Vec<Rational>; 3]) -> Result<Self> {
        let cols: Vec<Vec<BigInt>> = columns.iter().map(|c| c.iter().map(|&x| x.into()).collect()).collect();
        Self::from_columns(n, &cols, lambda)
    }

    pub fn from_columns(n: usize, columns: &[Vec<BigInt>], lambda: [Vec<Rational>; 3]) -> Result<Self> {
        let d = columns.len();
        if n == 0 || d == 0 {
            return Err(Error::Config("d and n must be positive".into()));
        }
        for (k, c) in columns.iter().enumerate() {
            if c.len() != n {
                return Err(Error::Config(format!("u[{k}] has length {}, expected n = {n}", c.len())));
            }
        }
        for (j, l) in lambda.iter().enumerate() {
            if l.len() != d {
                return Err(Error::Config(format!(
                    "lambda{} has length {}, expected d = {d}",
                    j + 1,
                    l.len()
                )));
            }
        }
        if d < n {
            return Err(Error::Config(format!("need d >= n, got d = {d}, n = {n}")));
        }
        let u = IntegerMatrix::from_fn(n, d, |i, k| columns[k][i].clone());
        let rank = u.to_rational().rank();
        if rank < n {
            return Err(Error::NotSpanning { n, rank });
        }
        Ok(Self { d, n, u, lambda })
    }

    /// `N` trivial: `d = n`, `U = 1`, all levels zero.
    pub fn identity(n: usize) -> Self {
        let cols: Vec<Vec<i64>> = (0..n).map(|k| (0..n).map(|i| (i == k) as i64).collect()).collect();
        Self::new(n, &cols, zero_levels(n)).expect("identity config is valid")
    }

    /// `d = n + 1`, `u_k = e_k`, `u_{n+1} = e_1 + … + e_n`, `λ^{(1)}_{n+1} = −λ`.
    pub fn example_family(n: usize, lambda: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("example family needs n >= 1".into()));
        }
        if lambda <= Rational::zero() {
            return Err(Error::Config(format!("example family needs lambda > 0, got {}", format_rational(&lambda))));
        }
        let mut cols: Vec<Vec<i64>> = (0..n).map(|k| (0..n).map(|i| (i == k) as i64).collect()).collect();
        cols.push(vec![1; n]);
        let mut levels = zero_levels(n + 1);
        levels[0][n] = -lambda;
        Self::new(n, &cols, levels)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u(&self) -> &IntegerMatrix {
        &self.u
    }

    pub fn u_rational(&self) -> Matrix<Rational> {
        self.u.to_rational()
    }

    pub fn column(&self, k: usize) -> Vec<Rational> {
        self.u.col(k).into_iter().map(Rational::from_integer).collect()
    }

    pub fn columns_i64(&self) -> Vec<Vec<BigInt>> {
        (0..self.d).map(|k| self.u.col(k)).collect()
    }

    pub fn lambda(&self, j: usize) -> &[Rational] {
        &self.lambda[j]
    }

    pub fn levels(&self) -> &[Vec<Rational>; 3] {
        &self.lambda
    }

    /// `λ^{(c)}_k = λ^{(2)}_k + iλ^{(3)}_k`.
    pub fn lambda_c(&self, k: usize) -> ComplexQ {
        Complex::new(self.lambda[1][k].clone(), self.lambda[2][k].clone())
    }

    /// Same subtorus and level with the columns reordered: column `k` of the
    /// result is column `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let cols: Vec<Vec<BigInt>> = perm.iter().map(|&k| self.u.col(k)).collect();
        let lambda = self.lambda.clone().map(|l| perm.iter().map(|&k| l[k].clone()).collect());
        Self::from_columns(self.n, &cols, lambda).expect("permutation preserves validity")
    }

    /// `a_k = ⟨a, u_k⟩ − λ^{(1)}_k` and `b_k = ⟨b, u_k⟩ − λ^{(c)}_k`.
    pub fn cone_values(&self, p: &ConePoint) -> (Vec<Rational>, Vec<ComplexQ>) {
        let a = (0..self.d)
            .map(|k| dot(&p.a, &self.column(k)) - &self.lambda[0][k])
            .collect();
        let b = (0..self.d)
            .map(|k| {
                let u = self.column(k);
                let re = dot(&p.b_re(), &u) - &self.lambda[1][k];
                let im = dot(&p.b_im(), &u) - &self.lambda[2][k];
                Complex::new(re, im)
            })
            .collect();
        (a, b)
    }

    /// The cones `K_k` as a second-order-cone system in the variables
    /// `(a, Re b, Im b) ∈ ℚ^{3n}`.
    pub fn cone_system(&self) -> SocSystem {
        let m = 3 * self.n;
        let mut sys = SocSystem::new(m);
        for k in 0..self.d {
            let u = self.column(k);
            let block = |offset: usize, constant: &Rational| {
                let mut coeffs = vec![Rational::zero(); m];
                coeffs[offset..offset + self.n].clone_from_slice(&u);
                Affine::new(coeffs, -constant.clone())
            };
            sys.cones.push(SecondOrderCone {
                height: block(0, &self.lambda[0][k]),
                re: block(self.n, &self.lambda[1][k]),
                im: block(2 * self.n, &self.lambda[2][k]),
            });
        }
        sys
    }

    /// `𝔫`, the projections `α_k` and shifts `c_j`.
    pub fn torus(&self) -> TorusData {
        let kernel = integral_kernel_basis(&self.u);
        let basis = kernel.rational;
        let d = self.d;
        let projector = if basis.is_empty() {
            Matrix::zeros(d, d)
        } else {
            // P = B (BᵀB)⁻¹ Bᵀ, the Euclidean orthogonal projector onto 𝔫.
            let b = Matrix::from_cols(&basis, d);
            let gram = &b.transpose() * &b;
            let inv = gram.inverse().expect("kernel basis is independent");
            &(&b * &inv) * &b.transpose()
        };
        let alpha: Vec<Vec<Rational>> = (0..d).map(|k| projector.col(k)).collect();
        let shift = |j: usize| projector.mul_vec(&self.lambda[j]);
        TorusData {
            shifts: [shift(0), shift(1), shift(2)],
            integral_basis: kernel.integral,
            basis,
            alpha,
            projector,
        }
    }

    /// `(a, b)` solving `⟨a,u_k⟩ = p_k`, `⟨b,u_k⟩ = q_k`, if consistent.
    pub fn solve_level(&self, p: &[Rational], q: &[ComplexQ]) -> Option<ConePoint> {
        let ut = self.u_rational().transpose();
        let a = ut.solve(p)?;
        let re: Vec<Rational> = q.iter().map(|c| c.re.clone()).collect();
        let im: Vec<Rational> = q.iter().map(|c| c.im.clone()).collect();
        let b_re = ut.solve(&re)?;
        let b_im = ut.solve(&im)?;
        Some(ConePoint::new(a, b_re, b_im))
    }

    /// Right-hand sides `p_k = ½(|z_k|² + |w_k|²) + λ^{(1)}_k` and
    /// `q_k = i z̄_k w_k + λ^{(c)}_k`.
    pub fn level_data(&self, z: &[ComplexQ], w: &[ComplexQ]) -> Result<(Vec<Rational>, Vec<ComplexQ>)> {
        for v in [z, w] {
            if v.len() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    found: v.len(),
                });
            }
        }
        let half = Rational::new(1.into(), 2.into());
        let i = Complex::new(Rational::zero(), Rational::one());
        let p = (0..self.d)
            .map(|k| (z[k].norm_sqr() + w[k].norm_sqr()) * &half + &self.lambda[0][k])
            .collect();
        let q = (0..self.d)
            .map(|k| &i * &z[k].conj() * &w[k] + self.lambda_c(k))
            .collect();
        Ok((p, q))
    }

    /// `(μ_I, μ_S + iμ_T)` as vectors of `𝔫 ⊂ ℝ^d`.
    pub fn moment_map(&self, torus: &TorusData, z: &[ComplexQ], w: &[ComplexQ]) -> Result<(Vec<Rational>, Vec<ComplexQ>)> {
        let (p, q) = self.level_data(z, w)?;
        // Σ p_k α_k = P p, since c_1 = P λ^{(1)}.
        let mu_i = torus.projector.mul_vec(&p);
        let re: Vec<Rational> = q.iter().map(|c| c.re.clone()).collect();
        let im: Vec<Rational> = q.iter().map(|c| c.im.clone()).collect();
        let mu_c = torus
            .projector
            .mul_vec(&re)
            .into_iter()
            .zip(torus.projector.mul_vec(&im))
            .map(|(r, i)| Complex::new(r, i))
            .collect();
        Ok((mu_i, mu_c))
    }

    /// `φ(z, w) = (a, b)` when `(z, w) ∈ μ⁻¹(0)`.
    pub fn level_witness(&self, z: &[ComplexQ], w: &[ComplexQ]) -> Result<Option<ConePoint>> {
        let (p, q) = self.level_data(z, w)?;
        Ok(self.solve_level(&p, &q))
    }
}

fn zero_levels(d: usize) -> [Vec<Rational>; 3] {
    [vec![qi(0); d], vec![qi(0); d], vec![qi(0); d]]
}

/// `𝔫 = ker β` with its Euclidean projections.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusData {
    /// Rational basis of `𝔫 ⊂ ℝ^d`.
    pub basis: Vec<Vec<Rational>>,
    /// Basis of the lattice `𝔫 ∩ ℤ^d`.
    pub integral_basis: Vec<Vec<BigInt>>,
    /// `α_k = P e_k`.
    pub alpha: Vec<Vec<Rational>>,
    /// `c_j = Σ_k λ^{(j)}_k α_k`.
    pub shifts: [Vec<Rational>; 3],
    pub projector: Matrix<Rational>,
}

impl TorusData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A point `(a, b) ∈ ℝⁿ × ℂⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConePoint {
    pub a: Vec<Rational>,
    pub b: Vec<ComplexQ>,
}

impl ConePoint {
    pub fn new(a: Vec<Rational>, b_re: Vec<Rational>, b_im: Vec<Rational>) -> Self {
        let b = b_re.into_iter().zip(b_im).map(|(r, i)| Complex::new(r, i)).collect();
        Self { a, b }
    }

    /// From the variables `(a, Re b, Im b)` of [`ToricConfig::cone_system`].
    pub fn from_vars(n: usize, x: &[Rational]) -> Self {
        Self::new(x[..n].to_vec(), x[n..2 * n].to_vec(), x[2 * n..3 * n].to_vec())
    }

    pub fn to_vars(&self) -> Vec<Rational> {
        let mut x = self.a.clone();
        x.extend(self.b_re());
        x.extend(self.b_im());
        x
    }

    pub fn b_re(&self) -> Vec<Rational> {
        self.b.iter().map(|c| c.re.clone()).collect()
    }

    pub fn b_im(&self) -> Vec<Rational> {
        self.b.iter().map(|c| c.im.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn cplx(re: Rational, im: Rational) -> ComplexQ {
        Complex::new(re, im)
    }

    fn diag_circle() -> ToricConfig {
        ToricConfig::new(1, &[vec![1], vec![1]], zero_levels(2)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            ToricConfig::new(2, &[vec![1, 0], vec![2]], zero_levels(2)),
            Err(Error::Config(msg)) if msg.contains("u[1]")
        ));
        assert!(matches!(
            ToricConfig::new(2, &[vec![1, 1], vec![2, 2]], zero_levels(2)),
            Err(Error::NotSpanning { n: 2, rank: 1 })
        ));
    }

    #[test]
    fn torus_examples() {
        assert_eq!(ToricConfig::identity(3).torus().dim(), 0);
        let t = diag_circle().torus();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.alpha[0], vec![q(1, 2), q(-1, 2)]);
        assert_eq!(t.alpha[1], vec![q(-1, 2), q(1, 2)]);
        let three = ToricConfig::new(1, &[vec![1], vec![1], vec![1]], zero_levels(3)).unwrap();
        assert_eq!(three.torus().dim(), 2);
    }

    #[test]
    fn alpha_reproduces_kernel_vectors() {
        let cfg = ToricConfig::new(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![2, -1]], zero_levels(4)).unwrap();
        let t = cfg.torus();
        for v in &t.basis {
            let mut sum = vec![qi(0); 4];
            for k in 0..4 {
                for (s, a) in sum.iter_mut().zip(&t.alpha[k]) {
                    *s += &v[k] * a;
                }
            }
            assert_eq!(&sum, v);
        }
    }

    #[test]
    fn moment_map_and_witness() {
        let cfg = diag_circle();
        let t = cfg.torus();
        let one = cplx(qi(1), qi(0));
        let zero = cplx(qi(0), qi(0));
        let (mi, mc) = cfg.moment_map(&t, &[one.clone(), one.clone()], &[zero.clone(), zero.clone()]).unwrap();
        assert!(mi.iter().all(Zero::is_zero) && mc.iter().all(Zero::is_zero));
        let p = cfg.level_witness(&[one.clone(), one.clone()], &[zero.clone(), zero.clone()]).unwrap();
        assert_eq!(p.unwrap().a, vec![q(1, 2)]);

        let (mi, _) = cfg.moment_map(&t, &[one.clone(), zero.clone()], &[zero.clone(), zero.clone()]).unwrap();
        assert_eq!(mi, vec![q(1, 4), q(-1, 4)]);
        assert!(cfg.level_witness(&[one, zero.clone()], &[zero.clone(), zero]).unwrap().is_none());
    }

    #[test]
    fn example_family_shape() {
        let cfg = ToricConfig::example_family(1, qi(1)).unwrap();
        assert_eq!(cfg.d(), 2);
        assert_eq!(cfg.lambda(0), &[qi(0), qi(-1)]);
        assert!(ToricConfig::example_family(1, qi(0)).is_err());
    }
}
