//! Decision procedures for connectedness, compactness and the conditions
//! (F), (S), (D) in terms of the cones `K_k`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{ConePoint, ToricConfig};
use super::fiber::{first_violated, incidence, Incidence};
use crate::convex::{
    boundary_meet, exclusion_margin, positively_spanning, smith_normal_form, soc_feasible, strict_interior,
    walls_meet, FeasibilityVerdict, IntegerMatrix, InteriorProbe, SocOptions, Status,
};
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::scalar::{q, qi, rational_sqrt};
use crate::Rational;

/// Three-valued verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truth {
    Yes,
    No,
    Unknown,
}

/// Knobs shared by the analyses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisOptions {
    /// Number of sweep directions per wall (beyond the four axes).
    pub sweep_resolution: usize,
    /// Random sample points of `K` used by the pointwise (D) test.
    pub samples: usize,
    /// Largest `|J|` enumerated; `None` means `n + 1`.
    pub stratum_cap: Option<usize>,
    /// Largest `d` for which subsets are enumerated.
    pub max_d: usize,
    /// Directions per pinned wall in multi-wall searches.
    pub wall_directions: usize,
    /// Pin tuples tried per multi-wall search.
    pub wall_attempts: usize,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            sweep_resolution: 720,
            samples: 64,
            stratum_cap: None,
            max_d: 12,
            wall_directions: 24,
            wall_attempts: 2000,
            seed: 0,
        }
    }
}

/// `W_k ∩ K` for every `k`.
#[derive(Clone, Debug)]
pub struct ConnectednessResult {
    pub connected: Truth,
    pub walls: Vec<FeasibilityVerdict>,
}

pub fn connectedness_test(cfg: &ToricConfig, opts: &AnalysisOptions) -> ConnectednessResult {
    let sys = cfg.cone_system();
    let walls: Vec<FeasibilityVerdict> = (0..cfg.d())
        .map(|k| boundary_meet(&sys, k, opts.sweep_resolution))
        .collect();
    let connected = if walls.iter().any(FeasibilityVerdict::is_infeasible) {
        Truth::No
    } else if walls.iter().any(FeasibilityVerdict::is_unknown) {
        Truth::Unknown
    } else {
        Truth::Yes
    };
    ConnectednessResult { connected, walls }
}

/// Compact iff the `u_k` positively span `ℝⁿ`.
pub fn compactness_test(cfg: &ToricConfig) -> bool {
    let cols: Vec<Vec<Rational>> = (0..cfg.d()).map(|k| cfg.column(k)).collect();
    positively_spanning(&cols, cfg.n())
}

/// A nonempty `∩_{k∈J} V_k ∩ K` and the lattice data of `(u_k)_{k∈J}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexStratum {
    pub j: Vec<usize>,
    pub witness: Option<ConePoint>,
    pub invariant_factors: Vec<BigInt>,
    pub independent: bool,
}

impl VertexStratum {
    /// `(u_k)_{k∈J}` is part of a ℤ-basis of `ℤⁿ`.
    pub fn extends_to_basis(&self) -> bool {
        self.independent && self.invariant_factors.iter().all(One::is_one)
    }
}

#[derive(Clone, Debug)]
pub struct FreenessResult {
    pub holds: Truth,
    pub strata: Vec<VertexStratum>,
    pub violation: Option<VertexStratum>,
    /// Subsets whose vertex intersection could not be decided.
    pub undetermined: Vec<Vec<usize>>,
}

fn subsets(d: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for k in start..d {
            cur.push(k);
            rec(k + 1, d, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, size, &mut Vec::new(), &mut out);
    out
}

fn stratum_cap(cfg: &ToricConfig, opts: &AnalysisOptions) -> usize {
    opts.stratum_cap.unwrap_or(cfg.n() + 1).min(cfg.d())
}

/// Lattice data of the columns `J`.
pub fn lattice_data(cfg: &ToricConfig, j: &[usize]) -> (Vec<BigInt>, bool) {
    let sub: IntegerMatrix = cfg.u().select_cols(j);
    let snf = smith_normal_form(&sub);
    (snf.invariant_factors(), snf.rank == j.len())
}

pub fn freeness_test(cfg: &ToricConfig, opts: &AnalysisOptions) -> FreenessResult {
    let mut result = FreenessResult {
        holds: Truth::Yes,
        strata: Vec::new(),
        violation: None,
        undetermined: Vec::new(),
    };
    if cfg.d() > opts.max_d {
        result.holds = Truth::Unknown;
        return result;
    }
    let sys = cfg.cone_system();
    let mut empty: HashSet<Vec<usize>> = HashSet::new();
    for size in 1..=stratum_cap(cfg, opts) {
        for j in subsets(cfg.d(), size) {
            // ∩V_k over a superset of an empty intersection is empty
            let implied_empty = j.iter().any(|&drop| {
                let sub: Vec<usize> = j.iter().copied().filter(|&k| k != drop).collect();
                empty.contains(&sub)
            });
            if implied_empty {
                empty.insert(j);
                continue;
            }
            let mut pinned = sys.clone();
            for &k in &j {
                let c = &sys.cones[k];
                pinned.equalities.extend([c.height.clone(), c.re.clone(), c.im.clone()]);
            }
            let v = soc_feasible(&pinned, &SocOptions::default());
            match v.status {
                Status::Infeasible(_) => {
                    empty.insert(j);
                }
                Status::Unknown => result.undetermined.push(j),
                Status::Feasible(x) => {
                    let (invariant_factors, independent) = lattice_data(cfg, &j);
                    let stratum = VertexStratum {
                        j,
                        witness: Some(ConePoint::from_vars(cfg.n(), &x)),
                        invariant_factors,
                        independent,
                    };
                    if !stratum.extends_to_basis() && result.violation.is_none() {
                        result.violation = Some(stratum.clone());
                    }
                    result.strata.push(stratum);
                }
            }
        }
    }
    result.holds = if result.violation.is_some() {
        Truth::No
    } else if result.undetermined.is_empty() {
        Truth::Yes
    } else {
        Truth::Unknown
    };
    result
}

/// Data `(x, ζ, s)` with `Σ ζ_k u_k = 0`, `ζ ≠ 0` and
/// `4ζ_k²(a_k² − |b_k|²) = ⟨s, u_k⟩` for all `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegeneracyWitness {
    pub point: ConePoint,
    pub zeta: Vec<Rational>,
    pub s: Vec<Rational>,
    /// Walls through `point` used to build the witness, if any.
    pub walls: Vec<usize>,
}

impl DegeneracyWitness {
    /// Exact re-verification against `cfg`.
    pub fn verify(&self, cfg: &ToricConfig) -> bool {
        if first_violated(cfg, &self.point).is_some() || self.zeta.iter().all(Zero::is_zero) {
            return false;
        }
        let mut combo = vec![qi(0); cfg.n()];
        for k in 0..cfg.d() {
            for (c, u) in combo.iter_mut().zip(cfg.column(k)) {
                *c += &self.zeta[k] * u;
            }
        }
        if !combo.iter().all(Zero::is_zero) {
            return false;
        }
        let (a, b) = cfg.cone_values(&self.point);
        (0..cfg.d()).all(|k| {
            let lhs = qi(4) * &self.zeta[k] * &self.zeta[k] * (&a[k] * &a[k] - b[k].norm_sqr());
            lhs == dot(&self.s, &cfg.column(k))
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DegeneracyVerdict {
    Degenerate(DegeneracyWitness),
    /// No witness among the enumerated wall subsets and sample points.
    NondegenerateAtSampled,
}

#[derive(Clone, Debug)]
pub struct DegeneracyResult {
    pub verdict: DegeneracyVerdict,
    /// `(n+1)`-subsets of walls proved not to meet in `K`.
    pub wall_subsets_excluded: usize,
    /// `(n+1)`-subsets of walls searched without success.
    pub wall_subsets_unresolved: usize,
    pub samples_tested: usize,
}

/// `D_k = a_k² − |b_k|²`.
fn discriminants(cfg: &ToricConfig, p: &ConePoint) -> Vec<Rational> {
    let (a, b) = cfg.cone_values(p);
    a.iter().zip(&b).map(|(ak, bk)| ak * ak - bk.norm_sqr()).collect()
}

/// If `(ζ_k² D_k)_k ∈ im Uᵀ`, the `s` with `Uᵀ s = 4(ζ_k² D_k)_k`.
fn solve_s(cfg: &ToricConfig, p: &ConePoint, zeta: &[Rational]) -> Option<Vec<Rational>> {
    let disc = discriminants(cfg, p);
    let rhs: Vec<Rational> = zeta.iter().zip(&disc).map(|(z, dk)| qi(4) * z * z * dk).collect();
    cfg.u_rational().transpose().solve(&rhs)
}

/// A nonzero `ζ` supported on `walls` with `Σ ζ_k u_k = 0`.
fn kernel_on(cfg: &ToricConfig, walls: &[usize]) -> Option<Vec<Rational>> {
    let sub = cfg.u_rational().select_cols(walls);
    let v = sub.kernel().into_iter().next()?;
    let mut zeta = vec![qi(0); cfg.d()];
    for (&k, x) in walls.iter().zip(v) {
        zeta[k] = x;
    }
    Some(zeta)
}

/// Rational points of `K`: known points plus random perturbations.
pub fn sample_points(cfg: &ToricConfig, seeds: &[ConePoint], count: usize, seed: u64) -> Vec<ConePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<ConePoint> = seeds.iter().filter(|p| first_violated(cfg, p).is_none()).cloned().collect();
    if out.is_empty() {
        return out;
    }
    let base = out.clone();
    let m = 3 * cfg.n();
    let mut tries = 0;
    while out.len() < base.len() + count && tries < 20 * count {
        tries += 1;
        let x0 = base[rng.gen_range(0..base.len())].to_vars();
        let dir: Vec<Rational> = (0..m).map(|_| q(rng.gen_range(-8..=8), rng.gen_range(1..=4))).collect();
        let mut t = qi(2);
        for _ in 0..8 {
            let x: Vec<Rational> = x0.iter().zip(&dir).map(|(a, b)| a + &t * b).collect();
            let p = ConePoint::from_vars(cfg.n(), &x);
            if first_violated(cfg, &p).is_none() {
                out.push(p);
                break;
            }
            t /= qi(2);
        }
    }
    out
}

/// `F(x) = Σ v_k³ D_k(x)` for `𝔫 = span v`; (D) fails at `x` iff `F(x) = 0`.
fn line_form(cfg: &ToricConfig, v: &[Rational], p: &ConePoint) -> Rational {
    discriminants(cfg, p)
        .iter()
        .zip(v)
        .fold(qi(0), |acc, (dk, vk)| acc + vk * vk * vk * dk)
}

/// Pointwise (D) check at `p`. Exact when `dim 𝔫 = 1`; otherwise tries
/// small integer combinations of a kernel basis for `ζ`.
pub fn degenerate_at(cfg: &ToricConfig, basis: &[Vec<Rational>], p: &ConePoint) -> Option<DegeneracyWitness> {
    let candidates: Vec<Vec<Rational>> = match basis.len() {
        0 => return None,
        1 => {
            if !line_form(cfg, &basis[0], p).is_zero() {
                return None;
            }
            vec![basis[0].clone()]
        }
        m => {
            let mut out = Vec::new();
            let mut theta = vec![-2i64; m];
            loop {
                if theta.iter().any(|&t| t != 0) {
                    let mut zeta = vec![qi(0); cfg.d()];
                    for (t, b) in theta.iter().zip(basis) {
                        for (z, bk) in zeta.iter_mut().zip(b) {
                            *z += qi(*t) * bk;
                        }
                    }
                    out.push(zeta);
                }
                let mut i = 0;
                while i < m && theta[i] == 2 {
                    theta[i] = -2;
                    i += 1;
                }
                if i == m {
                    break;
                }
                theta[i] += 1;
            }
            out
        }
    };
    candidates.into_iter().find_map(|zeta| {
        let s = solve_s(cfg, p, &zeta)?;
        let w = DegeneracyWitness {
            point: p.clone(),
            zeta,
            s,
            walls: Vec::new(),
        };
        w.verify(cfg).then_some(w)
    })
}

/// Rational zero of `F` on the segment between two sample points with
/// `F` of opposite signs, when the quadratic has rational roots.
fn segment_zero(cfg: &ToricConfig, v: &[Rational], p0: &ConePoint, p1: &ConePoint) -> Option<ConePoint> {
    let (x0, x1) = (p0.to_vars(), p1.to_vars());
    let at = |t: &Rational| {
        let x: Vec<Rational> = x0.iter().zip(&x1).map(|(a, b)| a + t * (b - a)).collect();
        ConePoint::from_vars(cfg.n(), &x)
    };
    let (f0, fh, f1) = (line_form(cfg, v, p0), line_form(cfg, v, &at(&q(1, 2))), line_form(cfg, v, p1));
    // F(t) = A t² + B t + C through t = 0, ½, 1
    let c = f0.clone();
    let a = (&f1 - &fh * qi(2) + &f0) * qi(2);
    let b = &f1 - &f0 - &a;
    let roots: Vec<Rational> = if a.is_zero() {
        if b.is_zero() {
            return None;
        }
        vec![-c / b]
    } else {
        let disc = &b * &b - qi(4) * &a * &c;
        let r = rational_sqrt(&disc)?;
        vec![(-&b + &r) / (qi(2) * &a), (-&b - r) / (qi(2) * &a)]
    };
    roots
        .into_iter()
        .filter(|t| !t.is_negative() && *t <= qi(1))
        .map(|t| at(&t))
        .find(|p| line_form(cfg, v, p).is_zero())
}

pub fn degeneracy_test(cfg: &ToricConfig, extra_points: &[ConePoint], opts: &AnalysisOptions) -> DegeneracyResult {
    let torus = cfg.torus();
    let mut result = DegeneracyResult {
        verdict: DegeneracyVerdict::NondegenerateAtSampled,
        wall_subsets_excluded: 0,
        wall_subsets_unresolved: 0,
        samples_tested: 0,
    };
    if torus.dim() == 0 {
        // 𝔊 = 0: (D) holds trivially.
        return result;
    }
    let sys = cfg.cone_system();
    let n = cfg.n();
    if cfg.d() <= opts.max_d {
        let excluded: Vec<bool> = (0..cfg.d()).map(|k| exclusion_margin(&sys, k).is_some()).collect();
        for walls in subsets(cfg.d(), n + 1) {
            if walls.iter().any(|&k| excluded[k]) {
                result.wall_subsets_excluded += 1;
                continue;
            }
            match walls_meet(&sys, &walls, opts.wall_directions, opts.wall_attempts) {
                Some(x) => {
                    let point = ConePoint::from_vars(n, &x);
                    let zeta = kernel_on(cfg, &walls).expect("n+1 vectors in ℝⁿ are dependent");
                    let w = DegeneracyWitness {
                        point,
                        zeta,
                        s: vec![qi(0); n],
                        walls,
                    };
                    assert!(w.verify(cfg), "wall witness failed verification");
                    result.verdict = DegeneracyVerdict::Degenerate(w);
                    return result;
                }
                None => result.wall_subsets_unresolved += 1,
            }
        }
    }

    let mut seeds: Vec<ConePoint> = extra_points.to_vec();
    if let CintResult::Point(p) = cint_probe(cfg) {
        seeds.push(p);
    }
    for k in 0..cfg.d() {
        if let Some(x) = boundary_meet(&sys, k, 16).witness() {
            seeds.push(ConePoint::from_vars(n, x));
        }
    }
    let samples = sample_points(cfg, &seeds, opts.samples, opts.seed);
    result.samples_tested = samples.len();
    for p in &samples {
        if let Some(w) = degenerate_at(cfg, &torus.basis, p) {
            result.verdict = DegeneracyVerdict::Degenerate(w);
            return result;
        }
    }
    if torus.dim() == 1 {
        let v = &torus.basis[0];
        let signs: Vec<Rational> = samples.iter().map(|p| line_form(cfg, v, p)).collect();
        for i in 0..samples.len() {
            for j in i + 1..samples.len() {
                if signs[i].is_positive() != signs[j].is_positive() {
                    if let Some(p) = segment_zero(cfg, v, &samples[i], &samples[j]) {
                        if let Some(w) = degenerate_at(cfg, &torus.basis, &p) {
                            result.verdict = DegeneracyVerdict::Degenerate(w);
                            return result;
                        }
                    }
                }
            }
        }
    }
    result
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SmoothnessVerdict {
    NecessaryConditionHolds,
    /// More than `3n` walls meet at the point.
    TooManyWalls { walls: usize, bound: usize },
    /// `Λ_{(a,b)}` has a kernel.
    NotInjective { rank: usize, domain: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessResult {
    pub incidence: Incidence,
    /// `dim 𝔫_{L,J}`.
    pub kernel_dim: usize,
    pub verdict: SmoothnessVerdict,
}

/// Injectivity of `Λ_{(a,b)}` on `𝔫_{L,J} ⊗ (ℝ × ℂ)`, a necessary condition
/// for (S).
pub fn smoothness_test(cfg: &ToricConfig, p: &ConePoint) -> Result<SmoothnessResult> {
    if let Some(k) = first_violated(cfg, p) {
        return Err(Error::NotInCone(k));
    }
    let inc = incidence(cfg, p);
    let free: Vec<usize> = inc.l.iter().copied().filter(|k| !inc.j.contains(k)).collect();
    let u = cfg.u_rational();
    // 𝔫_{L,J} = {c ∈ ℝ_{L∖J} : U_{L∖J} c ∈ im U_J}
    let basis: Vec<Vec<Rational>> = if free.is_empty() {
        Vec::new()
    } else {
        let joint = u.select_cols(&free).hstack(&u.select_cols(&inc.j));
        let projected: Vec<Vec<Rational>> = joint.kernel().into_iter().map(|v| v[..free.len()].to_vec()).collect();
        let keep = Matrix::independent_subset(&projected);
        keep.into_iter().map(|i| projected[i].clone()).collect()
    };
    let kernel_dim = basis.len();
    if inc.l.len() > 3 * cfg.n() {
        return Ok(SmoothnessResult {
            incidence: inc.clone(),
            kernel_dim,
            verdict: SmoothnessVerdict::TooManyWalls {
                walls: inc.l.len(),
                bound: 3 * cfg.n(),
            },
        });
    }
    let (a, b) = cfg.cone_values(p);
    // Real matrix: rows (Re, Im) per k ∈ L∖J; columns c_i, Re d_i, Im d_i.
    let rows = 2 * free.len();
    let cols = 3 * kernel_dim;
    let lam = Matrix::from_fn(rows, cols, |r, c| {
        let (slot, imag) = (r / 2, r % 2 == 1);
        let k = free[slot];
        let (i, kind) = (c / 3, c % 3);
        let v = &basis[i][slot];
        match (kind, imag) {
            (0, false) => &b[k].re * v,
            (0, true) => &b[k].im * v,
            (1, false) | (2, true) => &a[k] * v,
            _ => qi(0),
        }
    });
    let rank = if cols == 0 { 0 } else { lam.rank() };
    let verdict = if rank == cols {
        SmoothnessVerdict::NecessaryConditionHolds
    } else {
        SmoothnessVerdict::NotInjective { rank, domain: cols }
    };
    Ok(SmoothnessResult {
        incidence: inc,
        kernel_dim,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum CintResult {
    Point(ConePoint),
    Empty,
    Unknown,
}

/// A point with every `a_k > |b_k|`, or a proof that none exists.
pub fn cint_probe(cfg: &ToricConfig) -> CintResult {
    match strict_interior(&cfg.cone_system()) {
        InteriorProbe::Point(x) => CintResult::Point(ConePoint::from_vars(cfg.n(), &x)),
        InteriorProbe::Empty => CintResult::Empty,
        InteriorProbe::Unknown => CintResult::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levels(l1: &[Rational], l2: &[Rational], l3: &[Rational]) -> [Vec<Rational>; 3] {
        [l1.to_vec(), l2.to_vec(), l3.to_vec()]
    }

    fn zeros(d: usize) -> [Vec<Rational>; 3] {
        [vec![qi(0); d], vec![qi(0); d], vec![qi(0); d]]
    }

    fn quick() -> AnalysisOptions {
        AnalysisOptions {
            sweep_resolution: 64,
            samples: 16,
            ..AnalysisOptions::default()
        }
    }

    #[test]
    fn model_case() {
        let cfg = ToricConfig::identity(1);
        assert_eq!(connectedness_test(&cfg, &quick()).connected, Truth::Yes);
        assert!(!compactness_test(&cfg));
        assert_eq!(freeness_test(&cfg, &quick()).holds, Truth::Yes);
        let CintResult::Point(p) = cint_probe(&cfg) else {
            panic!("model case has interior points")
        };
        assert!(first_violated(&cfg, &p).is_none());
        assert!(incidence(&cfg, &p).l.is_empty());
    }

    #[test]
    fn compactness_examples() {
        let c = |cols: &[Vec<i64>]| ToricConfig::new(1, cols, zeros(cols.len())).unwrap();
        assert!(compactness_test(&c(&[vec![1], vec![-1]])));
        assert!(!compactness_test(&c(&[vec![1], vec![1]])));
        assert!(!compactness_test(&ToricConfig::example_family(2, qi(1)).unwrap()));
    }

    #[test]
    fn freeness_failure_from_lattice() {
        let cfg = ToricConfig::new(1, &[vec![2]], zeros(1)).unwrap();
        let r = freeness_test(&cfg, &quick());
        assert_eq!(r.holds, Truth::No);
        let v = r.violation.unwrap();
        assert_eq!(v.j, vec![0]);
        assert_eq!(v.invariant_factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn example_family_n1() {
        let cfg = ToricConfig::example_family(1, qi(1)).unwrap();
        let conn = connectedness_test(&cfg, &quick());
        assert_eq!(conn.connected, Truth::No);
        assert!(conn.walls[1].is_infeasible());
        assert_eq!(freeness_test(&cfg, &quick()).holds, Truth::Yes);
        let deg = degeneracy_test(&cfg, &[], &quick());
        assert_eq!(deg.verdict, DegeneracyVerdict::NondegenerateAtSampled);
        assert!(deg.samples_tested > 0);
        assert!(matches!(cint_probe(&cfg), CintResult::Point(_)));
    }

    #[test]
    fn diagonal_circle_is_degenerate_at_origin() {
        let cfg = ToricConfig::new(1, &[vec![1], vec![1]], zeros(2)).unwrap();
        let r = degeneracy_test(&cfg, &[], &quick());
        let DegeneracyVerdict::Degenerate(w) = r.verdict else {
            panic!("expected degenerate")
        };
        assert!(w.verify(&cfg));
        assert_eq!(w.walls, vec![0, 1]);
    }

    #[test]
    fn compact_config_degenerate() {
        let cfg = ToricConfig::new(
            1,
            &[vec![1], vec![-1]],
            levels(&[qi(-1), qi(-2)], &[q(1, 3), qi(0)], &[qi(0), q(1, 2)]),
        )
        .unwrap();
        assert!(compactness_test(&cfg));
        let r = degeneracy_test(&cfg, &[], &quick());
        let DegeneracyVerdict::Degenerate(w) = r.verdict else {
            panic!("expected degenerate")
        };
        assert!(w.verify(&cfg));
    }

    #[test]
    fn smoothness_examples() {
        let cfg = ToricConfig::new(1, &[vec![1], vec![1]], zeros(2)).unwrap();
        // L = ∅
        let p = ConePoint::new(vec![qi(2)], vec![qi(1)], vec![qi(0)]);
        let r = smoothness_test(&cfg, &p).unwrap();
        assert_eq!(r.verdict, SmoothnessVerdict::NecessaryConditionHolds);
        assert_eq!(r.kernel_dim, 0);

        // four coincident walls through (1, 1) for n = 1
        let cfg = ToricConfig::new(1, &[vec![1], vec![1], vec![1], vec![1]], zeros(4)).unwrap();
        let p = ConePoint::new(vec![qi(1)], vec![qi(1)], vec![qi(0)]);
        let r = smoothness_test(&cfg, &p).unwrap();
        assert_eq!(r.verdict, SmoothnessVerdict::TooManyWalls { walls: 4, bound: 3 });
    }

    #[test]
    fn empty_interior() {
        let cfg = ToricConfig::new(1, &[vec![1], vec![-1]], zeros(2)).unwrap();
        assert_eq!(cint_probe(&cfg), CintResult::Empty);
    }
}
