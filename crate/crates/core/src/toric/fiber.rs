//! Incidence of a point of `K` with the walls and vertices, and the
//! orbits of the fibre of `φ` over it.

use std::fmt;

use num_complex::Complex;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::config::{ConePoint, ToricConfig};
use crate::error::{Error, Result};
use crate::scalar::{qi, rational_sqrt, Scalar};
use crate::{ComplexQ, Rational};

/// `J = {k : x ∈ V_k}` and `L = {ℓ : x ∈ W_ℓ}`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub in_k: bool,
    pub j: Vec<usize>,
    pub l: Vec<usize>,
}

pub fn incidence(cfg: &ToricConfig, p: &ConePoint) -> Incidence {
    let (a, b) = cfg.cone_values(p);
    let mut inc = Incidence {
        in_k: true,
        j: Vec::new(),
        l: Vec::new(),
    };
    for k in 0..cfg.d() {
        let nb = b[k].norm_sqr();
        let gap = &a[k] * &a[k] - &nb;
        if a[k].is_negative() || gap.is_negative() {
            inc.in_k = false;
        } else if gap.is_zero() {
            inc.l.push(k);
            if a[k].is_zero() {
                inc.j.push(k);
            }
        }
    }
    inc
}

/// First cone `K_k` violated by `p`, if any.
pub fn first_violated(cfg: &ToricConfig, p: &ConePoint) -> Option<usize> {
    let (a, b) = cfg.cone_values(p);
    (0..cfg.d()).find(|&k| a[k].is_negative() || &a[k] * &a[k] < b[k].norm_sqr())
}

/// `r + c √D` with rational `r`, `c` and `D ≥ 0`; `D` is never a nonzero
/// perfect square and `c = 0` whenever `D = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub rational: Rational,
    pub coeff: Rational,
    pub radicand: Rational,
}

impl QuadSurd {
    pub fn rational(r: Rational) -> Self {
        Self {
            rational: r,
            coeff: qi(0),
            radicand: qi(0),
        }
    }

    pub fn new(r: Rational, c: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if c.is_zero() || d.is_zero() {
            return Self::rational(r);
        }
        match rational_sqrt(&d) {
            Some(s) => Self::rational(r + c * s),
            None => Self {
                rational: r,
                coeff: c,
                radicand: d,
            },
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeff.is_zero().then_some(&self.rational)
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64() + self.coeff.to_f64() * self.radicand.to_f64().sqrt()
    }

    /// Sum of two surds with the same radicand (or rational ones).
    pub fn add(&self, other: &Self) -> Option<Self> {
        let d = self.common_radicand(other)?;
        Some(Self::new(&self.rational + &other.rational, &self.coeff + &other.coeff, d))
    }

    pub fn mul(&self, other: &Self) -> Option<Self> {
        let d = self.common_radicand(other)?;
        let r = &self.rational * &other.rational + &self.coeff * &other.coeff * &d;
        let c = &self.rational * &other.coeff + &self.coeff * &other.rational;
        Some(Self::new(r, c, d))
    }

    fn common_radicand(&self, other: &Self) -> Option<Rational> {
        match (self.coeff.is_zero(), other.coeff.is_zero()) {
            (true, true) => Some(qi(0)),
            (true, false) => Some(other.radicand.clone()),
            (false, true) => Some(self.radicand.clone()),
            (false, false) => (self.radicand == other.radicand).then(|| self.radicand.clone()),
        }
    }

    /// Sign, decided by comparing squares.
    pub fn is_nonnegative(&self) -> bool {
        let r = &self.rational;
        let c = &self.coeff;
        let csq = c * c * &self.radicand;
        match (r.is_negative(), c.is_negative()) {
            (false, false) => true,
            (true, true) => false,
            (false, true) => r * r >= csq,
            (true, false) => csq >= r * r,
        }
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} + {}·√{}", self.rational, self.coeff, self.radicand)
        }
    }
}

/// One `T^d`-orbit in `φ⁻¹(a, b)`, described by its invariants
/// `(|z_k|², |w_k|², z̄_k w_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberOrbit {
    /// `Some(true)` when `|z_k|² = ρ₊`, `Some(false)` when `|z_k|² = ρ₋`,
    /// `None` on a wall where the two roots coincide.
    pub signs: Vec<Option<bool>>,
    /// `(|z_k|², |w_k|²)`.
    pub moduli: Vec<(QuadSurd, QuadSurd)>,
    /// `z̄_k w_k = −i b_k`.
    pub zbar_w: Vec<ComplexQ>,
}

impl FiberOrbit {
    /// Checks `|z_k|² + |w_k|² = 2a_k`, `|z_k|²|w_k|² = |b_k|²` and
    /// `z̄_k w_k = −i b_k` exactly.
    pub fn check(&self, cfg: &ToricConfig, p: &ConePoint) -> bool {
        let (a, b) = cfg.cone_values(p);
        (0..cfg.d()).all(|k| {
            let (mz, mw) = &self.moduli[k];
            let sum = mz.add(mw);
            let prod = mz.mul(mw);
            let minus_i_b = Complex::new(b[k].im.clone(), -b[k].re.clone());
            sum.as_ref().and_then(QuadSurd::as_rational) == Some(&(&a[k] * qi(2)))
                && prod.as_ref().and_then(QuadSurd::as_rational) == Some(&b[k].norm_sqr())
                && mz.is_nonnegative()
                && mw.is_nonnegative()
                && self.zbar_w[k] == minus_i_b
        })
    }

    /// `(a, b)` recovered from the orbit invariants alone.
    pub fn push_forward(&self, cfg: &ToricConfig) -> Option<ConePoint> {
        let half = Rational::new(1.into(), 2.into());
        let i = Complex::new(qi(0), qi(1));
        let mut p = Vec::with_capacity(cfg.d());
        let mut q = Vec::with_capacity(cfg.d());
        for k in 0..cfg.d() {
            let (mz, mw) = &self.moduli[k];
            let s = mz.add(mw)?;
            p.push(s.as_rational()? * &half + &cfg.lambda(0)[k]);
            q.push(&i * &self.zbar_w[k] + cfg.lambda_c(k));
        }
        cfg.solve_level(&p, &q)
    }

    /// Canonical representative: `z_k` real and nonnegative when nonzero,
    /// otherwise `w_k` real and nonnegative. Exact when every modulus to be
    /// square-rooted is a rational square.
    pub fn representative(&self) -> Option<(Vec<ComplexQ>, Vec<ComplexQ>)> {
        let mut z = Vec::new();
        let mut w = Vec::new();
        for (k, (mz, mw)) in self.moduli.iter().enumerate() {
            let mz = mz.as_rational()?;
            if mz.is_zero() {
                let r = rational_sqrt(mw.as_rational()?)?;
                z.push(Complex::new(qi(0), qi(0)));
                w.push(Complex::new(r, qi(0)));
            } else {
                let r = rational_sqrt(mz)?;
                // w = z̄w / z̄ with z real
                w.push(self.zbar_w[k].clone() / Complex::new(r.clone(), qi(0)));
                z.push(Complex::new(r, qi(0)));
            }
        }
        Some((z, w))
    }

    /// Floating-point canonical representative.
    pub fn representative_f64(&self) -> (Vec<Complex<f64>>, Vec<Complex<f64>>) {
        self.moduli
            .iter()
            .zip(&self.zbar_w)
            .map(|((mz, mw), zw)| {
                let zw = Complex::new(zw.re.to_f64(), zw.im.to_f64());
                let mz = mz.to_f64().max(0.0);
                if mz == 0.0 {
                    (Complex::new(0.0, 0.0), Complex::new(mw.to_f64().max(0.0).sqrt(), 0.0))
                } else {
                    let r = mz.sqrt();
                    (Complex::new(r, 0.0), zw / r)
                }
            })
            .unzip()
    }
}

/// All `2^{d−|L|}` orbits over `(a, b)`.
pub fn fiber_enumerate(cfg: &ToricConfig, p: &ConePoint) -> Result<Vec<FiberOrbit>> {
    if let Some(k) = first_violated(cfg, p) {
        return Err(Error::NotInCone(k));
    }
    let (a, b) = cfg.cone_values(p);
    let per_slot: Vec<Vec<(Option<bool>, QuadSurd, QuadSurd)>> = (0..cfg.d())
        .map(|k| {
            let disc = &a[k] * &a[k] - b[k].norm_sqr();
            if disc.is_zero() {
                let r = QuadSurd::rational(a[k].clone());
                vec![(None, r.clone(), r)]
            } else {
                let plus = QuadSurd::new(a[k].clone(), qi(1), disc.clone());
                let minus = QuadSurd::new(a[k].clone(), qi(-1), disc);
                vec![
                    (Some(true), plus.clone(), minus.clone()),
                    (Some(false), minus, plus),
                ]
            }
        })
        .collect();
    let zbar_w: Vec<ComplexQ> = b.iter().map(|bk| Complex::new(bk.im.clone(), -bk.re.clone())).collect();
    let mut orbits = vec![FiberOrbit {
        signs: Vec::new(),
        moduli: Vec::new(),
        zbar_w,
    }];
    for choices in per_slot {
        orbits = orbits
            .into_iter()
            .flat_map(|o| {
                choices.iter().map(move |(s, mz, mw)| {
                    let mut o = o.clone();
                    o.signs.push(*s);
                    o.moduli.push((mz.clone(), mw.clone()));
                    o
                })
            })
            .collect();
    }
    Ok(orbits)
}
