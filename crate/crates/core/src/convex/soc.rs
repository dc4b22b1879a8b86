//! Feasibility of linear constraints plus planar second-order cones
//! `ℓ₀ ≥ ‖(ℓ₁, ℓ₂)‖`.
//!
//! Every `Feasible` answer carries a rational witness that satisfies the
//! system exactly; every `Infeasible` answer carries an exactly verifiable
//! certificate. Anything else is `Unknown`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::directions::{polygon_vertices, sweep_directions};
use super::lp::{FarkasCertificate, LinearProgram, LpOutcome};
use crate::linalg::{dot, Matrix};
use crate::scalar::{qi, rational_approx, Scalar};
use crate::Rational;

/// `ℓ(x) = coeffs · x + constant`.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl Affine {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        Self { coeffs, constant }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::new(vec![Rational::zero(); dim], c)
    }

    /// The coordinate function `x_j`.
    pub fn coordinate(dim: usize, j: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[j] = Rational::one();
        Self::new(coeffs, Rational::zero())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x) + &self.constant
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(c, v)| c.to_f64() * v).sum::<f64>() + self.constant.to_f64()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), &self.constant * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            &self.constant + &other.constant,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&qi(-1)))
    }

    /// `Σ c_i ℓ_i`.
    pub fn combination(dim: usize, terms: &[(Rational, &Affine)]) -> Self {
        terms
            .iter()
            .fold(Self::constant(dim, Rational::zero()), |acc, (c, l)| acc.add(&l.scale(c)))
    }
}

/// `height ≥ ‖(re, im)‖`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondOrderCone {
    pub height: Affine,
    pub re: Affine,
    pub im: Affine,
}

impl SecondOrderCone {
    pub fn contains(&self, x: &[Rational]) -> bool {
        let h = self.height.eval(x);
        let (a, b) = (self.re.eval(x), self.im.eval(x));
        !h.is_negative() && &h * &h >= &a * &a + &b * &b
    }

    /// `height² − re² − im²` at `x`; zero on the boundary.
    pub fn gap(&self, x: &[Rational]) -> Rational {
        let h = self.height.eval(x);
        let (a, b) = (self.re.eval(x), self.im.eval(x));
        &h * &h - &a * &a - &b * &b
    }
}

/// `{ x ∈ ℚ^dim : E x = 0, G x ≥ 0, x in every cone }` with affine rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SocSystem {
    pub dim: usize,
    pub equalities: Vec<Affine>,
    pub inequalities: Vec<Affine>,
    pub cones: Vec<SecondOrderCone>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Infeasibility {
    /// Farkas certificate for the polygonal outer relaxation built from
    /// [`SocSystem::outer_relaxation`] with the given number of cuts.
    Farkas {
        cuts: usize,
        certificate: FarkasCertificate<Rational>,
    },
    /// `height_k − ‖(re_k, im_k)‖ ≥ margin > 0` on the whole system.
    Exclusion { cone: usize, margin: Rational },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Feasible(Vec<Rational>),
    Infeasible(Infeasibility),
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Linear,
    InnerPolygon,
    OuterPolygon,
    NumericPolish,
    Vertex,
    DirectionSweep,
    Exclusion,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityVerdict {
    pub status: Status,
    pub method: Method,
    /// Polygon size or sweep length that produced the answer.
    pub resolution: Option<usize>,
}

impl FeasibilityVerdict {
    fn new(status: Status, method: Method, resolution: Option<usize>) -> Self {
        Self {
            status,
            method,
            resolution,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.status, Status::Feasible(_))
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self.status, Status::Infeasible(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.status, Status::Unknown)
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match &self.status {
            Status::Feasible(x) => Some(x),
            _ => None,
        }
    }
}

/// Knobs for [`soc_feasible`].
#[derive(Clone, Debug)]
pub struct SocOptions {
    /// Inner polygon sizes tried in order.
    pub inner: Vec<usize>,
    /// Outer polygon sizes tried in order.
    pub outer: Vec<usize>,
    pub numeric: bool,
    pub numeric_iterations: usize,
}

impl Default for SocOptions {
    fn default() -> Self {
        Self {
            inner: vec![8, 32],
            outer: vec![8, 32],
            numeric: true,
            numeric_iterations: 4000,
        }
    }
}

impl SocOptions {
    /// Inner approximations only; used inside sweeps.
    pub fn quick() -> Self {
        Self {
            inner: vec![8, 24],
            outer: vec![],
            numeric: false,
            numeric_iterations: 0,
        }
    }
}

impl SocSystem {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            ..Self::default()
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.equalities.iter().all(|e| e.eval(x).is_zero())
            && self.inequalities.iter().all(|g| !g.eval(x).is_negative())
            && self.cones.iter().all(|c| c.contains(x))
    }

    fn base_lp(&self) -> LinearProgram<Rational> {
        let mut lp = LinearProgram::new(self.dim);
        for e in &self.equalities {
            lp.add_eq(e.coeffs.clone(), -e.constant.clone());
        }
        for g in &self.inequalities {
            lp.add_ge(g.coeffs.clone(), -g.constant.clone());
        }
        lp
    }

    fn add_rows(lp: &mut LinearProgram<Rational>, rows: impl IntoIterator<Item = Affine>) {
        for r in rows {
            lp.add_ge(r.coeffs, -r.constant);
        }
    }

    /// Each cone replaced by the cuts `θ · (re, im) ≤ height` for
    /// `cuts` exact unit directions `θ`; contains the true feasible set.
    pub fn outer_relaxation(&self, cuts: usize) -> LinearProgram<Rational> {
        let dirs = polygon_vertices(cuts);
        let mut lp = self.base_lp();
        for c in &self.cones {
            Self::add_rows(
                &mut lp,
                dirs.iter()
                    .map(|(a, b)| c.height.sub(&c.re.scale(a)).sub(&c.im.scale(b))),
            );
        }
        lp
    }

    /// Each cone replaced by the inscribed polygon with `vertices` exact
    /// unit vertices; contained in the true feasible set.
    pub fn inner_approximation(&self, vertices: usize) -> LinearProgram<Rational> {
        let verts = polygon_vertices(vertices);
        let mut lp = self.base_lp();
        for c in &self.cones {
            let mut rows = vec![c.height.clone()];
            for k in 0..verts.len() {
                let (ax, ay) = &verts[k];
                let (bx, by) = &verts[(k + 1) % verts.len()];
                // outward normal of the edge a → b (counter-clockwise order)
                let (nx, ny) = (by - ay, ax - bx);
                let offset = &nx * ax + &ny * ay;
                rows.push(
                    c.height
                        .scale(&offset)
                        .sub(&c.re.scale(&nx))
                        .sub(&c.im.scale(&ny)),
                );
            }
            Self::add_rows(&mut lp, rows);
        }
        lp
    }

    /// Cone `k` replaced by the ray `(re, im) = height · θ`, `height ≥ 0`.
    pub fn on_ray(&self, k: usize, theta: &(Rational, Rational)) -> SocSystem {
        let mut sys = self.clone();
        let c = sys.cones.remove(k);
        sys.equalities.push(c.re.sub(&c.height.scale(&theta.0)));
        sys.equalities.push(c.im.sub(&c.height.scale(&theta.1)));
        sys.inequalities.push(c.height);
        sys
    }

    /// Cone `k` replaced by its apex `height = re = im = 0`.
    pub fn at_apex(&self, k: usize) -> SocSystem {
        let mut sys = self.clone();
        let c = sys.cones.remove(k);
        sys.equalities.extend([c.height, c.re, c.im]);
        sys
    }
}

/// Decides feasibility of `sys`, or gives up with `Unknown`.
pub fn soc_feasible(sys: &SocSystem, opts: &SocOptions) -> FeasibilityVerdict {
    if sys.cones.is_empty() {
        let lp = sys.base_lp();
        return match lp.feasible_point() {
            LpOutcome::Infeasible(certificate) => FeasibilityVerdict::new(
                Status::Infeasible(Infeasibility::Farkas { cuts: 0, certificate }),
                Method::Linear,
                None,
            ),
            outcome => {
                let x = outcome.point().expect("feasible outcome has a point").to_vec();
                debug_assert!(sys.contains(&x));
                FeasibilityVerdict::new(Status::Feasible(x), Method::Linear, None)
            }
        };
    }
    let mut outer = opts.outer.iter();
    let mut last_outer_point = None;
    if let Some(&cuts) = outer.next() {
        match outer_check(sys, cuts) {
            Err(v) => return v,
            Ok(x) => last_outer_point = Some(x),
        }
    }
    for &n in &opts.inner {
        if let LpOutcome::Optimal { x, .. } = sys.inner_approximation(n).feasible_point() {
            assert!(sys.contains(&x), "inner approximation produced an infeasible point");
            return FeasibilityVerdict::new(Status::Feasible(x), Method::InnerPolygon, Some(n));
        }
    }
    for &cuts in outer {
        match outer_check(sys, cuts) {
            Err(v) => return v,
            Ok(x) => last_outer_point = Some(x),
        }
    }
    if opts.numeric {
        let start: Vec<f64> = match &last_outer_point {
            Some(x) => x.iter().map(Scalar::to_f64).collect(),
            None => vec![0.0; sys.dim],
        };
        if let Some(x) = numeric_witness(sys, start, opts.numeric_iterations) {
            return FeasibilityVerdict::new(Status::Feasible(x), Method::NumericPolish, None);
        }
    }
    FeasibilityVerdict::new(Status::Unknown, Method::Exhausted, opts.inner.last().copied())
}

fn outer_check(sys: &SocSystem, cuts: usize) -> Result<Vec<Rational>, FeasibilityVerdict> {
    match sys.outer_relaxation(cuts).feasible_point() {
        LpOutcome::Infeasible(certificate) => Err(FeasibilityVerdict::new(
            Status::Infeasible(Infeasibility::Farkas { cuts, certificate }),
            Method::OuterPolygon,
            Some(cuts),
        )),
        outcome => {
            let x = outcome.point().unwrap().to_vec();
            if sys.contains(&x) {
                Err(FeasibilityVerdict::new(Status::Feasible(x), Method::OuterPolygon, Some(cuts)))
            } else {
                Ok(x)
            }
        }
    }
}

/// Cyclic projections onto the constraints in floating point, then
/// rounding and exact re-verification.
fn numeric_witness(sys: &SocSystem, mut x: Vec<f64>, iterations: usize) -> Option<Vec<Rational>> {
    let f = |a: &Affine| -> (Vec<f64>, f64) {
        (a.coeffs.iter().map(Scalar::to_f64).collect(), a.constant.to_f64())
    };
    let eqs: Vec<_> = sys.equalities.iter().map(f).collect();
    let ineqs: Vec<_> = sys.inequalities.iter().map(f).collect();
    let cones: Vec<[(Vec<f64>, f64); 3]> = sys
        .cones
        .iter()
        .map(|c| [f(&c.height), f(&c.re), f(&c.im)])
        .collect();
    let eval = |(c, c0): &(Vec<f64>, f64), x: &[f64]| -> f64 {
        c.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + c0
    };
    let shift = |x: &mut [f64], c: &[f64], amount: f64| {
        let nn: f64 = c.iter().map(|a| a * a).sum();
        if nn > 0.0 {
            for (xi, ci) in x.iter_mut().zip(c) {
                *xi += amount * ci / nn;
            }
        }
    };
    for margin in [1e-3, 1e-6, 0.0] {
        for _ in 0..iterations {
            let mut worst: f64 = 0.0;
            for e in &eqs {
                let v = eval(e, &x);
                worst = worst.max(v.abs());
                shift(&mut x, &e.0, -v);
            }
            for g in &ineqs {
                let v = eval(g, &x) - margin;
                if v < 0.0 {
                    worst = worst.max(-v);
                    shift(&mut x, &g.0, -v);
                }
            }
            for c in &cones {
                let h = eval(&c[0], &x) - margin;
                let (a, b) = (eval(&c[1], &x), eval(&c[2], &x));
                let r = a.hypot(b);
                if r <= h {
                    continue;
                }
                worst = worst.max(r - h);
                let target = if r <= -h {
                    [0.0, 0.0, 0.0]
                } else {
                    let s = (h + r) / 2.0;
                    [s, s * a / r, s * b / r]
                };
                let delta = [target[0] - h, target[1] - a, target[2] - b];
                let jac = Matrix::from_rows(&[c[0].0.clone(), c[1].0.clone(), c[2].0.clone()]);
                let gram = &jac * &jac.transpose();
                match gram.solve(&delta) {
                    Some(w) => {
                        let step = jac.transpose().mul_vec(&w);
                        for (xi, si) in x.iter_mut().zip(step) {
                            *xi += si;
                        }
                    }
                    None => {
                        for (row, d) in c.iter().zip(delta) {
                            shift(&mut x, &row.0, d / 3.0);
                        }
                    }
                }
            }
            if worst < 1e-10 {
                break;
            }
        }
        if let Some(w) = polish(sys, &x) {
            return Some(w);
        }
    }
    None
}

/// Rounds `x` at increasing precision, snapping onto the equalities exactly.
fn polish(sys: &SocSystem, x: &[f64]) -> Option<Vec<Rational>> {
    if x.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let eq_rows: Vec<Vec<Rational>> = sys.equalities.iter().map(|e| e.coeffs.clone()).collect();
    let basis = Matrix::independent_subset(&eq_rows);
    let c = Matrix::from_rows(&basis.iter().map(|&i| eq_rows[i].clone()).collect::<Vec<_>>());
    let consts: Vec<Rational> = basis.iter().map(|&i| sys.equalities[i].constant.clone()).collect();
    let cct = if basis.is_empty() {
        None
    } else {
        Some(&c * &c.transpose())
    };
    for den in [16i64, 256, 4096, 1 << 16, 1 << 20, 1 << 26] {
        let mut xq: Vec<Rational> = x
            .iter()
            .map(|v| rational_approx(*v, den).unwrap_or_else(Rational::zero))
            .collect();
        if let Some(cct) = &cct {
            // least-norm exact correction onto the affine subspace
            let resid: Vec<Rational> = c
                .mul_vec(&xq)
                .into_iter()
                .zip(&consts)
                .map(|(v, k)| -(v + k))
                .collect();
            let w = cct.solve(&resid)?;
            let step = c.transpose().mul_vec(&w);
            for (xi, si) in xq.iter_mut().zip(step) {
                *xi += si;
            }
        }
        if sys.contains(&xq) {
            return Some(xq);
        }
    }
    None
}

/// Linear certificate that the boundary of cone `k` misses the system.
///
/// Looks for multipliers expressing `height_k` as a nonnegative combination
/// of the other heights and the linear rows, and `(re_k, im_k)` as a
/// combination of the other cones' `(re, im)` with coefficients bounded by
/// those multipliers, leaving constants `C`, `r₁`, `r₂`. Then
/// `height_k − ‖(re_k, im_k)‖ ≥ C − |r₁| − |r₂|` everywhere on the system;
/// the LP maximises that margin (capped at 1).
pub fn exclusion_margin(sys: &SocSystem, k: usize) -> Option<Rational> {
    let others: Vec<usize> = (0..sys.cones.len()).filter(|&j| j != k).collect();
    let (no, ne, ni) = (others.len(), sys.equalities.len(), sys.inequalities.len());
    // μ, μ', ν⁰, ρ, ν¹, ν², t₁, t₂
    let mu = 0;
    let mup = mu + no;
    let nu0 = mup + no;
    let rho = nu0 + ne;
    let nu1 = rho + ni;
    let nu2 = nu1 + ne;
    let t1 = nu2 + ne;
    let t2 = t1 + 1;
    let nv = t2 + 1;
    let mut lp = LinearProgram::new(nv);
    for j in (mu..mup).chain(rho..nu1).chain([t1, t2]) {
        lp.set_nonnegative(j);
    }
    let target = &sys.cones[k];
    let zero = || vec![Rational::zero(); nv];
    for c in 0..sys.dim {
        let mut h = zero();
        let mut a = zero();
        let mut b = zero();
        for (slot, &j) in others.iter().enumerate() {
            h[mu + slot] = sys.cones[j].height.coeffs[c].clone();
            a[mup + slot] = sys.cones[j].re.coeffs[c].clone();
            b[mup + slot] = sys.cones[j].im.coeffs[c].clone();
        }
        for (i, e) in sys.equalities.iter().enumerate() {
            h[nu0 + i] = e.coeffs[c].clone();
            a[nu1 + i] = e.coeffs[c].clone();
            b[nu2 + i] = e.coeffs[c].clone();
        }
        for (i, g) in sys.inequalities.iter().enumerate() {
            h[rho + i] = g.coeffs[c].clone();
        }
        lp.add_eq(h, target.height.coeffs[c].clone());
        lp.add_eq(a, target.re.coeffs[c].clone());
        lp.add_eq(b, target.im.coeffs[c].clone());
    }
    for slot in 0..no {
        let mut up = zero();
        up[mu + slot] = qi(1);
        up[mup + slot] = qi(-1);
        lp.add_ge(up, qi(0));
        let mut down = zero();
        down[mu + slot] = qi(1);
        down[mup + slot] = qi(1);
        lp.add_ge(down, qi(0));
    }
    // C = const_k − Σ μ_j const_j − Σ ν⁰ const_E − Σ ρ const_G, as an affine
    // function of the multipliers; likewise r₁, r₂.
    let mut c_lin = zero();
    let mut r1 = zero();
    let mut r2 = zero();
    for (slot, &j) in others.iter().enumerate() {
        c_lin[mu + slot] = -sys.cones[j].height.constant.clone();
        r1[mup + slot] = -sys.cones[j].re.constant.clone();
        r2[mup + slot] = -sys.cones[j].im.constant.clone();
    }
    for (i, e) in sys.equalities.iter().enumerate() {
        c_lin[nu0 + i] = -e.constant.clone();
        r1[nu1 + i] = -e.constant.clone();
        r2[nu2 + i] = -e.constant.clone();
    }
    for (i, g) in sys.inequalities.iter().enumerate() {
        c_lin[rho + i] = -g.constant.clone();
    }
    let (c0, r10, r20) = (
        target.height.constant.clone(),
        target.re.constant.clone(),
        target.im.constant.clone(),
    );
    // t ≥ ±r
    for (t, r, r0) in [(t1, &r1, &r10), (t2, &r2, &r20)] {
        for sign in [qi(1), qi(-1)] {
            let mut row: Vec<Rational> = r.iter().map(|v| -(v * &sign)).collect();
            row[t] += qi(1);
            lp.add_ge(row, r0 * &sign);
        }
    }
    // margin = C − t₁ − t₂ ≤ 1
    let mut margin = c_lin.clone();
    margin[t1] -= qi(1);
    margin[t2] -= qi(1);
    lp.add_le(margin.clone(), qi(1) - &c0);
    match lp.maximize(&margin) {
        LpOutcome::Optimal { value, .. } => {
            let m = value + c0;
            m.is_positive().then_some(m)
        }
        _ => None,
    }
}

/// Whether the boundary `{height_k = ‖(re_k, im_k)‖}` of cone `k` meets
/// the feasible set.
///
/// Tries, in order: the exclusion certificate, infeasibility of the whole
/// system, the apex of cone `k`, and
/// the rays of cone `k` through the first `resolution` sweep directions.
pub fn boundary_meet(sys: &SocSystem, k: usize, resolution: usize) -> FeasibilityVerdict {
    if let Some(margin) = exclusion_margin(sys, k) {
        return FeasibilityVerdict::new(
            Status::Infeasible(Infeasibility::Exclusion { cone: k, margin }),
            Method::Exclusion,
            None,
        );
    }
    // an empty feasible set misses every boundary
    for cuts in [8, 32] {
        if let Err(v) = outer_check(sys, cuts) {
            if v.is_infeasible() {
                return v;
            }
        }
    }
    let apex = soc_feasible(&sys.at_apex(k), &SocOptions::default());
    if let Status::Feasible(x) = apex.status {
        return FeasibilityVerdict::new(Status::Feasible(x), Method::Vertex, None);
    }
    let quick = SocOptions::quick();
    let dirs = sweep_directions(resolution);
    let hit = dirs.par_iter().find_map_first(|theta| {
        soc_feasible(&sys.on_ray(k, theta), &quick).witness().map(<[_]>::to_vec)
    });
    match hit {
        Some(x) => {
            debug_assert!(sys.contains(&x) && sys.cones[k].gap(&x).is_zero());
            FeasibilityVerdict::new(Status::Feasible(x), Method::DirectionSweep, Some(resolution))
        }
        None => FeasibilityVerdict::new(Status::Unknown, Method::DirectionSweep, Some(resolution)),
    }
}

/// Whether the vectors positively span `ℝⁿ`, i.e. `{ s : ⟨v, s⟩ ≥ 0 ∀v } = {0}`.
pub fn positively_spanning(vectors: &[Vec<Rational>], n: usize) -> bool {
    let mut lp = LinearProgram::new(n);
    for v in vectors {
        lp.add_ge(v.clone(), Rational::zero());
    }
    (0..n).all(|i| {
        [qi(1), qi(-1)].into_iter().all(|sign| {
            let mut obj = vec![Rational::zero(); n];
            obj[i] = sign;
            matches!(lp.maximize(&obj), LpOutcome::Optimal { .. })
        })
    })
}


/// Exact LP feasibility of `{ E x = 0, G x ≥ 0 }`; never `Unknown`.
pub fn rational_lp_feasible(dim: usize, equalities: &[Affine], inequalities: &[Affine]) -> FeasibilityVerdict {
    let sys = SocSystem {
        dim,
        equalities: equalities.to_vec(),
        inequalities: inequalities.to_vec(),
        cones: Vec::new(),
    };
    soc_feasible(&sys, &SocOptions::default())
}

/// One way of pinning a cone onto its boundary with linear equations.
#[derive(Clone, Debug, PartialEq)]
enum WallPin {
    Apex,
    Ray((Rational, Rational)),
}

fn pin_rows(c: &SecondOrderCone, pin: &WallPin) -> Vec<Affine> {
    match pin {
        WallPin::Apex => vec![c.height.clone(), c.re.clone(), c.im.clone()],
        WallPin::Ray((t1, t2)) => vec![c.re.sub(&c.height.scale(t1)), c.im.sub(&c.height.scale(t2))],
    }
}

/// Tuples over `0..base` of length `len`, ordered by largest entry, then sum.
fn graded_tuples(base: usize, len: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out.sort_by_key(|t| (t.iter().copied().max().unwrap_or(0), t.iter().sum::<usize>()));
    out.truncate(cap);
    out
}

/// Searches for a point of the system lying on the boundary of every cone
/// in `walls` simultaneously.
///
/// All but the last cone are pinned to their apex or to a ray through one
/// of the first `per_wall` sweep directions. If the remaining affine set is
/// a line, the last boundary condition is a quadratic in the line
/// parameter and its rational roots are checked exactly; otherwise the
/// last cone is swept as in [`boundary_meet`]. At most `cap` pin tuples are
/// tried. Returned points are verified exactly.
pub fn walls_meet(sys: &SocSystem, walls: &[usize], per_wall: usize, cap: usize) -> Option<Vec<Rational>> {
    let (&last, rest) = walls.split_last()?;
    let mut pins = vec![WallPin::Apex];
    pins.extend(sweep_directions(per_wall).into_iter().map(WallPin::Ray));
    let on_all = |x: &[Rational]| sys.contains(x) && walls.iter().all(|&k| sys.cones[k].gap(x).is_zero());
    for tuple in graded_tuples(pins.len(), rest.len(), cap) {
        let mut extra = Vec::new();
        for (&k, &p) in rest.iter().zip(&tuple) {
            extra.extend(pin_rows(&sys.cones[k], &pins[p]));
        }
        let found = last_wall(sys, last, &extra, per_wall);
        if let Some(x) = found.filter(|x| on_all(x)) {
            return Some(x);
        }
    }
    None
}

fn last_wall(sys: &SocSystem, k: usize, extra: &[Affine], per_wall: usize) -> Option<Vec<Rational>> {
    let rows: Vec<&Affine> = sys.equalities.iter().chain(extra).collect();
    let (x0, dirs) = if rows.is_empty() {
        (vec![Rational::zero(); sys.dim], (0..sys.dim).map(|j| Affine::coordinate(sys.dim, j).coeffs).collect())
    } else {
        let c = Matrix::from_rows(&rows.iter().map(|r| r.coeffs.clone()).collect::<Vec<_>>());
        let rhs: Vec<Rational> = rows.iter().map(|r| -r.constant.clone()).collect();
        (c.solve(&rhs)?, c.kernel())
    };
    let cone = &sys.cones[k];
    match dirs.len() {
        0 => Some(x0),
        1 => {
            let n = &dirs[0];
            let at = |l: &Affine| (l.eval(&x0), dot(&l.coeffs, n));
            let (al, be) = at(&cone.height);
            let (g1, d1) = at(&cone.re);
            let (g2, d2) = at(&cone.im);
            let a = &be * &be - &d1 * &d1 - &d2 * &d2;
            let b = (&al * &be - &g1 * &d1 - &g2 * &d2) * qi(2);
            let c0 = &al * &al - &g1 * &g1 - &g2 * &g2;
            let point = |rho: Rational| -> Vec<Rational> {
                x0.iter().zip(n).map(|(x, v)| x + &rho * v).collect()
            };
            let roots: Vec<Rational> = if a.is_zero() && b.is_zero() {
                if !c0.is_zero() {
                    return None;
                }
                // the whole line lies on the boundary cone surface
                let mut pinned = sys.clone();
                pinned.equalities.extend(extra.iter().cloned());
                return soc_feasible(&pinned, &SocOptions::default()).witness().map(<[_]>::to_vec);
            } else if a.is_zero() {
                vec![-c0 / b]
            } else {
                let disc = &b * &b - &a * &c0 * qi(4);
                if disc.is_negative() {
                    return None;
                }
                let Some(r) = crate::scalar::rational_sqrt(&disc) else {
                    return None;
                };
                let two_a = &a * qi(2);
                vec![(-&b + &r) / &two_a, (-&b - r) / two_a]
            };
            roots.into_iter().map(point).find(|x| sys.contains(x))
        }
        _ => {
            let mut pinned = sys.clone();
            pinned.equalities.extend(extra.iter().cloned());
            let apex = soc_feasible(&pinned.at_apex(k), &SocOptions::quick());
            if let Some(x) = apex.witness() {
                return Some(x.to_vec());
            }
            let quick = SocOptions::quick();
            sweep_directions(per_wall)
                .par_iter()
                .find_map_first(|theta| soc_feasible(&pinned.on_ray(k, theta), &quick).witness().map(<[_]>::to_vec))
        }
    }
}

/// Outcome of looking for a point strictly inside every cone.
#[derive(Clone, Debug, PartialEq)]
pub enum InteriorProbe {
    /// A point with `height_k − ‖(re_k, im_k)‖ > 0` for every cone.
    Point(Vec<Rational>),
    /// The outer relaxation proves no such point exists.
    Empty,
    Unknown,
}

/// Maximises a common margin `m ≤ 1` with `height_k − m ≥ ‖(re_k, im_k)‖`
/// over outer polygon relaxations (a nonpositive optimum proves there is
/// no interior point) and inner polygon approximations (a positive optimum
/// gives one), with 8 and then 32 sides.
pub fn strict_interior(sys: &SocSystem) -> InteriorProbe {
    let widen = |a: &Affine, m_coeff: i64| {
        let mut c = a.coeffs.clone();
        c.push(qi(m_coeff));
        Affine::new(c, a.constant.clone())
    };
    let shifted = SocSystem {
        dim: sys.dim + 1,
        equalities: sys.equalities.iter().map(|e| widen(e, 0)).collect(),
        inequalities: sys
            .inequalities
            .iter()
            .map(|g| widen(g, 0))
            .chain(std::iter::once(Affine::new(
                {
                    let mut c = vec![Rational::zero(); sys.dim + 1];
                    c[sys.dim] = qi(-1);
                    c
                },
                qi(1),
            )))
            .collect(),
        cones: sys
            .cones
            .iter()
            .map(|c| SecondOrderCone {
                height: widen(&c.height, -1),
                re: widen(&c.re, 0),
                im: widen(&c.im, 0),
            })
            .collect(),
    };
    let mut objective = vec![Rational::zero(); sys.dim + 1];
    objective[sys.dim] = qi(1);
    let strict = |x: &[Rational]| {
        sys.contains(x) && sys.cones.iter().all(|c| c.height.eval(x).is_positive() && c.gap(x).is_positive())
    };
    // cheapest first: each size refutes with the outer polygon, then
    // searches with the inner one
    for n in [8, 32] {
        match shifted.outer_relaxation(n).maximize(&objective) {
            LpOutcome::Infeasible(_) => return InteriorProbe::Empty,
            LpOutcome::Optimal { value, .. } if !value.is_positive() => return InteriorProbe::Empty,
            _ => {}
        }
        if let LpOutcome::Optimal { x, value } = shifted.inner_approximation(n).maximize(&objective) {
            if value.is_positive() {
                let x = x[..sys.dim].to_vec();
                assert!(strict(&x), "inner approximation produced a non-interior point");
                return InteriorProbe::Point(x);
            }
        }
    }
    InteriorProbe::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    /// `x₀ + c ≥ ‖(x₁, x₂)‖` on `ℚ³`.
    fn cone(c: i64) -> SecondOrderCone {
        SecondOrderCone {
            height: Affine::new(vec![qi(1), qi(0), qi(0)], qi(c)),
            re: Affine::coordinate(3, 1),
            im: Affine::coordinate(3, 2),
        }
    }

    #[test]
    fn simple_feasible_and_infeasible() {
        let mut sys = SocSystem::new(3);
        sys.cones.push(cone(0));
        sys.equalities.push(Affine::new(vec![qi(0), qi(1), qi(0)], qi(-3)));
        sys.equalities.push(Affine::new(vec![qi(0), qi(0), qi(1)], qi(-4)));
        let v = soc_feasible(&sys, &SocOptions::default());
        assert!(v.is_feasible());
        assert!(sys.contains(v.witness().unwrap()));

        // x₀ ≤ 4 together with ‖(3, 4)‖ = 5 ≤ x₀
        sys.inequalities.push(Affine::new(vec![qi(-1), qi(0), qi(0)], qi(4)));
        let v = soc_feasible(&sys, &SocOptions::default());
        let Status::Infeasible(Infeasibility::Farkas { cuts, certificate }) = &v.status else {
            panic!("{v:?}")
        };
        assert!(sys.outer_relaxation(*cuts).verify_certificate(certificate));
    }

    #[test]
    fn tangent_point_found_numerically_or_exactly() {
        // x₀ = 5, x₁ = 3, x₂ free: only x₂ = ±4 on the boundary, interior between.
        let mut sys = SocSystem::new(3);
        sys.cones.push(cone(0));
        sys.equalities.push(Affine::new(vec![qi(1), qi(0), qi(0)], qi(-5)));
        sys.equalities.push(Affine::new(vec![qi(0), qi(1), qi(0)], qi(-3)));
        let v = boundary_meet(&sys, 0, 64);
        assert!(v.is_feasible(), "{v:?}");
        assert!(sys.cones[0].gap(v.witness().unwrap()).is_zero());
    }

    #[test]
    fn nested_cones_exclusion() {
        let mut sys = SocSystem::new(3);
        sys.cones.push(cone(0));
        sys.cones.push(cone(1));
        let v = boundary_meet(&sys, 1, 16);
        assert_eq!(
            v.status,
            Status::Infeasible(Infeasibility::Exclusion { cone: 1, margin: qi(1) })
        );
        let v = boundary_meet(&sys, 0, 16);
        assert!(v.is_feasible());
    }

    #[test]
    fn spanning() {
        let v = |a: i64, b: i64| vec![qi(a), qi(b)];
        assert!(positively_spanning(&[v(1, 0), v(0, 1), v(-1, -1)], 2));
        assert!(!positively_spanning(&[v(1, 0), v(0, 1)], 2));
        assert!(positively_spanning(&[vec![qi(1)], vec![qi(-1)]], 1));
        assert!(!positively_spanning(&[vec![qi(1)], vec![qi(1)]], 1));
    }

    #[test]
    fn two_walls_on_a_line() {
        // x₀ ≥ ‖(x₁, x₂)‖ and 2 − x₀ ≥ ‖(x₁ − 1, x₂)‖: both boundaries meet
        // on an ellipse; one of its rational points must be found.
        let mut sys = SocSystem::new(3);
        sys.cones.push(cone(0));
        sys.cones.push(SecondOrderCone {
            height: Affine::new(vec![qi(-1), qi(0), qi(0)], qi(2)),
            re: Affine::new(vec![qi(0), qi(1), qi(0)], qi(-1)),
            im: Affine::coordinate(3, 2),
        });
        let x = walls_meet(&sys, &[0, 1], 24, 2000).expect("walls meet");
        assert!(sys.cones[0].gap(&x).is_zero() && sys.cones[1].gap(&x).is_zero());
        assert!(sys.contains(&x));
    }

    #[test]
    fn interior_probe() {
        let mut sys = SocSystem::new(3);
        sys.cones.push(cone(0));
        assert!(matches!(strict_interior(&sys), InteriorProbe::Point(_)));
        // x₀ ≤ 0 forces the apex
        sys.inequalities.push(Affine::new(vec![qi(-1), qi(0), qi(0)], qi(0)));
        assert_eq!(strict_interior(&sys), InteriorProbe::Empty);
    }

    #[test]
    fn lp_examples() {
        let s = Affine::coordinate(1, 0);
        let v = rational_lp_feasible(1, &[], &[s.clone(), s.scale(&qi(-1))]);
        assert_eq!(v.witness(), Some(&[qi(0)][..]));
        let v = rational_lp_feasible(1, &[], &[s.add(&Affine::constant(1, qi(-1))), s.scale(&qi(-1))]);
        assert!(v.is_infeasible());
    }

    #[test]
    fn affine_helpers() {
        let a = Affine::new(vec![qi(1), qi(2)], q(1, 2));
        assert_eq!(a.eval(&[qi(1), qi(1)]), q(7, 2));
        let b = Affine::combination(2, &[(qi(2), &a), (qi(-1), &a)]);
        assert_eq!(a, b);
    }
}
