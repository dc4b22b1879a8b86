//! Rational points on the unit circle.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_traits::{One, Signed};

use crate::scalar::{qi, rational_approx};
use crate::Rational;

/// Largest denominator used when rounding `tan(φ/2)`.
pub const DIRECTION_DENOMINATOR: i64 = 1024;

/// `((1 − t²)/(1 + t²), 2t/(1 + t²))`, an exact point of the unit circle.
pub fn circle_point(t: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let t2 = t * t;
    let den = &one + &t2;
    ((&one - &t2) / &den, (t * qi(2)) / den)
}

/// Exact unit vector close to angle `phi`.
pub fn unit_near_angle(phi: f64) -> (Rational, Rational) {
    let half = phi.rem_euclid(2.0 * PI) / 2.0;
    if (half - PI / 2.0).abs() < 1e-9 {
        return (qi(-1), qi(0));
    }
    let t = half.tan();
    match rational_approx(t, DIRECTION_DENOMINATOR) {
        Some(t) if t.abs() <= qi(1 << 20) => circle_point(&t),
        _ => (qi(-1), qi(0)),
    }
}

/// Base-2 radical inverse of `j`.
pub fn van_der_corput(mut j: u64) -> f64 {
    let mut x = 0.0;
    let mut scale = 0.5;
    while j > 0 {
        if j & 1 == 1 {
            x += scale;
        }
        j >>= 1;
        scale *= 0.5;
    }
    x
}

pub fn axes() -> Vec<(Rational, Rational)> {
    vec![(qi(1), qi(0)), (qi(0), qi(1)), (qi(-1), qi(0)), (qi(0), qi(-1))]
}

/// Tangents `p/q` in lowest terms ordered by height `max(|p|, q)`.
fn small_tangents(limit: usize) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut h: i64 = 1;
    while out.len() < limit {
        for q in 1..=h {
            for p in [-h, h] {
                if num_integer::gcd(p, q) == 1 {
                    out.push(Rational::new(p.into(), q.into()));
                }
            }
        }
        for p in 1..h {
            for sp in [-p, p] {
                if num_integer::gcd(sp, h) == 1 {
                    out.push(Rational::new(sp.into(), h.into()));
                }
            }
        }
        h += 1;
    }
    out
}

/// The four axes followed by `count` further distinct unit vectors,
/// alternating between small-height Pythagorean points and van der Corput
/// angles.
///
/// Every call returns a prefix of every call with a larger `count`, so a
/// search over this sequence can only succeed earlier as `count` grows.
pub fn sweep_directions(count: usize) -> Vec<(Rational, Rational)> {
    let mut out = axes();
    let mut seen: HashSet<(Rational, Rational)> = out.iter().cloned().collect();
    let tangents = small_tangents(count + 8);
    let mut j = 1u64;
    let mut next_tangent = 0;
    let mut use_tangent = true;
    while out.len() < count + 4 && j < (count as u64 + 4) * 64 {
        let d = if use_tangent && next_tangent < tangents.len() {
            next_tangent += 1;
            circle_point(&tangents[next_tangent - 1])
        } else {
            j += 1;
            unit_near_angle(2.0 * PI * van_der_corput(j - 1))
        };
        use_tangent = !use_tangent;
        if seen.insert(d.clone()) {
            out.push(d);
        }
    }
    out
}

/// `count` (≥ 4) exact unit vectors sorted by angle, including the axes.
pub fn polygon_vertices(count: usize) -> Vec<(Rational, Rational)> {
    let mut v = sweep_directions(count.max(4) - 4);
    v.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    v
}

fn angle((x, y): &(Rational, Rational)) -> f64 {
    use crate::Scalar;
    y.to_f64().atan2(x.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_on_circle() {
        for (x, y) in sweep_directions(100) {
            assert_eq!(&x * &x + &y * &y, qi(1));
        }
    }

    #[test]
    fn prefix_property() {
        let a = sweep_directions(30);
        let b = sweep_directions(90);
        assert_eq!(a.len(), 34);
        assert_eq!(&b[..a.len()], &a[..]);
    }

    #[test]
    fn polygon_is_sorted() {
        let p = polygon_vertices(16);
        assert_eq!(p.len(), 16);
        let angles: Vec<f64> = p.iter().map(angle).collect();
        assert!(angles.windows(2).all(|w| w[0] < w[1]));
    }
}
