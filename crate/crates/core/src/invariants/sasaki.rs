//! The pseudo-sphere `{‖ξ‖² = 1} ⊂ 𝔹^{n+1}`, its three linear fields and
//! the cone over it.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::flat::block_diagonal;
use crate::algebra::{FlatStructure, SplitQuaternion};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_rational, q, qi};
use crate::{Rational, Scalar};

const NAMES: [&str; 3] = ["i", "s", "t"];

fn generator(k: usize) -> SplitQuaternion<Rational> {
    SplitQuaternion::basis(k + 1)
}

/// `ξ^a(ξ) = signs[a] · ξ · q_{generators[a]}` with `q ∈ (i, s, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub generators: [usize; 3],
    pub signs: [i64; 3],
}

impl Assignment {
    /// `ξ¹ = ξ·(−i)`, `ξ² = ξ·s`, `ξ³ = ξ·t`: the flat `I`, `S`, `T`.
    pub fn flat() -> Self {
        Self {
            generators: [0, 1, 2],
            signs: [-1, 1, 1],
        }
    }

    pub fn fields(&self, n: usize) -> [Matrix<Rational>; 3] {
        [0, 1, 2].map(|a| block_diagonal(&generator(self.generators[a]).right_mul_matrix(), n + 1).scale(&qi(self.signs[a])))
    }

    pub fn describe(&self) -> String {
        let part = |a: usize| {
            let sign = if self.signs[a] < 0 { "-" } else { "" };
            format!("xi{} = {sign}xi*{}", a + 1, NAMES[self.generators[a]])
        };
        format!("{}, {}, {}", part(0), part(1), part(2))
    }
}

/// Vector field commutator of the linear fields `x ↦ Ax`, `x ↦ Bx`.
fn field_bracket(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    &(b * a) - &(a * b)
}

fn gram(n: usize) -> Matrix<Rational> {
    FlatStructure::<Rational>::new(n + 1).gram
}

/// `κ` with `[ξ¹,ξ²] = −κξ³`, `[ξ²,ξ³] = κξ¹`, `[ξ³,ξ¹] = −κξ²`, and the
/// squared lengths `(1, −1, −1)`; `None` if no single `κ` works.
fn bracket_scale(n: usize, assignment: &Assignment) -> Option<Rational> {
    let f = assignment.fields(n);
    let g = gram(n);
    let lengths = [1, -1, -1];
    for (a, l) in f.iter().zip(lengths) {
        if &(&a.transpose() * &g) * a != g.scale(&qi(l)) {
            return None;
        }
    }
    let ratio = |c: &Matrix<Rational>, target: &Matrix<Rational>| -> Option<Rational> {
        let (r, col) = (0..target.rows())
            .flat_map(|r| (0..target.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| !target[(r, c)].is_zero())?;
        let k = &c[(r, col)] / &target[(r, col)];
        (*c == target.scale(&k)).then_some(k)
    };
    let k12 = -ratio(&field_bracket(&f[0], &f[1]), &f[2])?;
    let k23 = ratio(&field_bracket(&f[1], &f[2]), &f[0])?;
    let k31 = -ratio(&field_bracket(&f[2], &f[0]), &f[1])?;
    (k12 == k23 && k23 == k31 && !k12.is_zero()).then_some(k12)
}

/// All permutation/sign assignments with the right squared lengths and
/// brackets of the Definition's shape, with their scale `κ`.
pub fn assignment_search(n: usize) -> Vec<(Assignment, Rational)> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for generators in perms {
        for bits in 0..8 {
            let signs = [0, 1, 2].map(|a| if bits >> a & 1 == 1 { -1 } else { 1 });
            let asg = Assignment { generators, signs };
            if let Some(k) = bracket_scale(n, &asg) {
                out.push((asg, k));
            }
        }
    }
    out
}

/// Exact checks of an assignment at sample points of the pseudo-sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SasakiReport {
    pub n: usize,
    pub assignment: Assignment,
    /// Bracket scale `κ`; the Definition asks for `κ = 1`.
    pub kappa: String,
    pub points: usize,
    pub lengths: bool,
    pub orthogonal: bool,
    pub brackets: bool,
    pub killing: bool,
    /// `Φ₁ξ² = ξ³ = −Φ₂ξ¹`, `−Φ₂ξ³ = ξ¹ = Φ₃ξ²`, `Φ₃ξ¹ = ξ² = −Φ₁ξ³` with
    /// `Φ_a` the tangential part of the derivative of `ξ^a`.
    pub phi_relations: bool,
}

impl SasakiReport {
    pub fn all_hold(&self) -> bool {
        self.lengths && self.orthogonal && self.brackets && self.killing && self.phi_relations
    }
}

/// Verifies an assignment with bracket scale `kappa` at every point.
pub fn verify_assignment(n: usize, assignment: Assignment, kappa: &Rational, points: &[Vec<Rational>]) -> SasakiReport {
    let f = assignment.fields(n);
    let g = gram(n);
    let ip = |x: &[Rational], y: &[Rational]| g.bilinear(x, y);
    let killing = f.iter().all(|a| (&(&a.transpose() * &g) + &(&g * a)).is_zero_matrix());
    let brackets_m = [
        field_bracket(&f[0], &f[1]) == f[2].scale(&-kappa.clone()),
        field_bracket(&f[1], &f[2]) == f[0].scale(kappa),
        field_bracket(&f[2], &f[0]) == f[1].scale(&-kappa.clone()),
    ];
    let per_point: Vec<[bool; 4]> = points
        .par_iter()
        .map(|x| {
            let xi: Vec<Vec<Rational>> = f.iter().map(|a| a.mul_vec(x)).collect();
            let norm = ip(x, x);
            let lengths = [1, -1, -1].iter().enumerate().all(|(a, &l)| ip(&xi[a], &xi[a]) == qi(l));
            let orthogonal = (0..3).all(|a| (a + 1..3).all(|b| ip(&xi[a], &xi[b]).is_zero()));
            // commutators evaluated at x
            let at = |c: &Matrix<Rational>| c.mul_vec(x);
            let brackets = at(&field_bracket(&f[0], &f[1])) == scaled(&xi[2], &-kappa.clone())
                && at(&field_bracket(&f[1], &f[2])) == scaled(&xi[0], kappa)
                && at(&field_bracket(&f[2], &f[0])) == scaled(&xi[1], &-kappa.clone());
            let phi = |a: usize, v: &[Rational]| {
                let w = f[a].mul_vec(v);
                let c = ip(&w, x) / &norm;
                w.iter().zip(x).map(|(wi, xi)| wi - &c * xi).collect::<Vec<_>>()
            };
            let neg = |v: &[Rational]| v.iter().map(|c| -c).collect::<Vec<_>>();
            let phi_ok = phi(0, &xi[1]) == xi[2]
                && neg(&phi(1, &xi[0])) == xi[2]
                && neg(&phi(1, &xi[2])) == xi[0]
                && phi(2, &xi[1]) == xi[0]
                && phi(2, &xi[0]) == xi[1]
                && neg(&phi(0, &xi[2])) == xi[1];
            [lengths, orthogonal, brackets, phi_ok]
        })
        .collect();
    let all = |k: usize| per_point.iter().all(|p| p[k]);
    SasakiReport {
        n,
        assignment,
        kappa: format_rational(kappa),
        points: points.len(),
        lengths: all(0),
        orthogonal: all(1),
        brackets: all(2) && brackets_m.iter().all(|&b| b),
        killing,
        phi_relations: all(3),
    }
}

fn scaled(v: &[Rational], k: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x * k).collect()
}

/// Searches for an assignment satisfying the Definition exactly (`κ = 1`)
/// and verifies it at `points`.
///
/// Fails with [`Error::NoConsistentAssignment`] when only other scales are
/// consistent, naming the smallest such scale.
pub fn sasaki_check(n: usize, points: &[Vec<Rational>]) -> Result<SasakiReport> {
    let found = assignment_search(n);
    if let Some((asg, k)) = found.iter().find(|(_, k)| *k == qi(1)) {
        return Ok(verify_assignment(n, *asg, k, points));
    }
    let scale = found
        .iter()
        .map(|(_, k)| k.abs())
        .min()
        .map_or_else(|| "none".to_string(), |k| format_rational(&k));
    Err(Error::NoConsistentAssignment { scale })
}

fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    q(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// Unit split quaternions `((1+t²)/(1−t²), 0, 2t/(1−t²), 0)` style boosts
/// and rational rotations, multiplied together.
fn random_unit(rng: &mut ChaCha8Rng) -> SplitQuaternion<Rational> {
    let mut p = SplitQuaternion::one();
    for axis in 0..3 {
        let t = random_rational(rng, 3, 5);
        let (one, two) = (qi(1), qi(2));
        let factor = if axis == 0 {
            let d = &one + &t * &t;
            SplitQuaternion::new((&one - &t * &t) / &d, &two * &t / &d, qi(0), qi(0))
        } else {
            let d = &one - &t * &t;
            if d.is_zero() {
                continue;
            }
            let (c, s) = ((&one + &t * &t) / &d, &two * &t / &d);
            if axis == 1 {
                SplitQuaternion::new(c, qi(0), s, qi(0))
            } else {
                SplitQuaternion::new(c, qi(0), qi(0), s)
            }
        };
        p = p * factor;
    }
    p
}

/// A split quaternion with `‖p‖² = norm`.
fn with_norm(norm: &Rational, rng: &mut ChaCha8Rng) -> SplitQuaternion<Rational> {
    // x² − u² = (x − u)(x + u) = norm
    let mut m = random_rational(rng, 4, 3);
    if m.is_zero() {
        m = qi(1);
    }
    let other = norm / &m;
    let x = (&m + &other) / qi(2);
    let u = (&other - &m) / qi(2);
    SplitQuaternion::new(x, qi(0), u, qi(0)) * random_unit(rng)
}

/// `count` rational points of `𝔹^{n+1}` with `‖ξ‖² = norm`.
pub fn points_with_norm(n: usize, norm: &Rational, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rest: Vec<SplitQuaternion<Rational>> = (0..n)
                .map(|_| {
                    SplitQuaternion::new(
                        random_rational(&mut rng, 3, 2),
                        random_rational(&mut rng, 3, 2),
                        random_rational(&mut rng, 3, 2),
                        random_rational(&mut rng, 3, 2),
                    )
                })
                .collect();
            let used = rest.iter().fold(qi(0), |acc, p| acc + p.norm_sqr());
            let first = with_norm(&(norm - used), &mut rng);
            std::iter::once(first).chain(rest).flat_map(|p| p.coords()).collect()
        })
        .collect()
}

/// Rational points of the pseudo-sphere `‖ξ‖² = 1`.
pub fn pseudo_sphere_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    points_with_norm(n, &qi(1), count, seed)
}

/// Rational points of positive norm with a spread of radii.
pub fn positive_norm_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    (0..count)
        .map(|j| {
            let norm = q(rng.gen_range(1..=20), rng.gen_range(1..=4));
            points_with_norm(n, &norm, 1, seed.wrapping_add(j as u64)).remove(0)
        })
        .collect()
}

/// How `ψ` in the cone formulas is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialReading {
    /// `ψ = r∂_r`, the position vector field.
    Euler,
    /// `ψ = ∂_r`.
    UnitRadial,
}

/// Agreement of the cone formulas with the flat endomorphisms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeComparison {
    pub reading: RadialReading,
    pub points: usize,
    /// Largest entry of `recovered − flat` over all points and all three
    /// endomorphisms (0 means exact agreement).
    pub max_discrepancy: f64,
    /// Exact agreement, decided in rational arithmetic when the reading
    /// allows it.
    pub exact: Option<bool>,
    /// The recovered `I` maps `r∂_r` to `ξ¹`.
    pub radial_to_xi1: bool,
}

impl ConeComparison {
    pub fn agrees(&self, tol: f64) -> bool {
        self.exact.unwrap_or(self.max_discrepancy <= tol)
    }
}

/// Evaluates `A_a = Φ_a − g(ξ^a,·)⊗ψ + (1/r)dr⊗ξ^a` on the cone over the
/// pseudo-sphere, realised as `{‖ξ‖² > 0}`, and compares with the flat
/// `I`, `S`, `T`.
///
/// Here `g` is the pseudo-sphere metric, `ξ^a` the fields of
/// [`Assignment::flat`] and `Φ_a` the tangential part of their derivative.
pub fn cone_compare(n: usize, points: &[Vec<Rational>], reading: RadialReading) -> ConeComparison {
    let flat = FlatStructure::<Rational>::new(n + 1);
    let fields = Assignment::flat().fields(n);
    let targets = [&flat.i, &flat.s, &flat.t];
    let g = &flat.gram;
    let dim = 4 * (n + 1);
    // A_a(Y) = base − c ψ with base = Φ_a(Y) + (1/r)dr(Y) ξ^a and
    // c = g_S(ξ^a, Y) = g(ξ^a, Y_tan)/r²; (1/r)dr(Y) = g(x, Y)/r².
    let split = |a: &Matrix<Rational>, x: &[Rational], y: &[Rational]| -> (Vec<Rational>, Rational) {
        let r2 = g.bilinear(x, x);
        let radial = g.bilinear(x, y) / &r2;
        let y_tan: Vec<Rational> = y.iter().zip(x).map(|(yi, xi)| yi - &radial * xi).collect();
        let ay = a.mul_vec(&y_tan);
        let tangential = g.bilinear(&ay, x) / &r2;
        let xi_a = a.mul_vec(x);
        let c = g.bilinear(&xi_a, &y_tan) / &r2;
        let base = (0..x.len())
            .map(|i| &ay[i] - &tangential * &x[i] + &radial * &xi_a[i])
            .collect();
        (base, c)
    };
    let results: Vec<(f64, bool, bool)> = points
        .par_iter()
        .map(|x| {
            let r = g.bilinear(x, x).to_f64().sqrt();
            let mut worst = 0.0f64;
            let mut exact = true;
            for (a, target) in fields.iter().zip(targets) {
                for j in 0..dim {
                    let y: Vec<Rational> = (0..dim).map(|i| qi((i == j) as i64)).collect();
                    let (base, c) = split(a, x, &y);
                    for i in 0..dim {
                        let diff = match reading {
                            RadialReading::Euler => {
                                let v = &base[i] - &c * &x[i] - &target[(i, j)];
                                exact &= v.is_zero();
                                v.to_f64()
                            }
                            RadialReading::UnitRadial => {
                                base[i].to_f64() - c.to_f64() * x[i].to_f64() / r - target[(i, j)].to_f64()
                            }
                        };
                        worst = worst.max(diff.abs());
                    }
                }
            }
            // I(r∂_r) = ξ¹: for Y = x the ψ coefficient vanishes.
            let (base, c) = split(&fields[0], x, x);
            let radial = c.is_zero() && base == fields[0].mul_vec(x);
            (worst, exact, radial)
        })
        .collect();
    ConeComparison {
        reading,
        points: points.len(),
        max_discrepancy: results.iter().map(|r| r.0).fold(0.0, f64::max),
        exact: (reading == RadialReading::Euler).then(|| results.iter().all(|r| r.1)),
        radial_to_xi1: results.iter().all(|r| r.2),
    }
}
