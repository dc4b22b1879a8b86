//! Dense two-phase simplex with Bland's rule.
//!
//! Over exact rationals the answers are exact and infeasibility comes with
//! a Farkas certificate that can be checked independently of the solver.

use serde::{Deserialize, Serialize};

use crate::linalg::dot;
use crate::scalar::Scalar;

/// Feasible set `{ x : A x = b, G x ≥ h, x_j ≥ 0 for flagged j }`.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    num_vars: usize,
    nonneg: Vec<bool>,
    equalities: Vec<(Vec<T>, T)>,
    inequalities: Vec<(Vec<T>, T)>,
}

/// Multipliers `y` (equalities, free) and `z ≥ 0` (inequalities) with
/// `yᵀA + zᵀG = 0` on free variables, `≤ 0` on nonnegative ones, and
/// `yᵀb + zᵀh > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FarkasCertificate<T> {
    pub equality: Vec<T>,
    pub inequality: Vec<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    /// A feasible point and a ray along which the objective grows without bound.
    Unbounded { x: Vec<T>, ray: Vec<T> },
    Infeasible(FarkasCertificate<T>),
}

impl<T: Scalar> LpOutcome<T> {
    pub fn point(&self) -> Option<&[T]> {
        match self {
            LpOutcome::Optimal { x, .. } | LpOutcome::Unbounded { x, .. } => Some(x),
            LpOutcome::Infeasible(_) => None,
        }
    }
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            nonneg: vec![false; num_vars],
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_nonnegative(&mut self, j: usize) {
        self.nonneg[j] = true;
    }

    pub fn add_eq(&mut self, a: Vec<T>, b: T) {
        assert_eq!(a.len(), self.num_vars);
        self.equalities.push((a, b));
    }

    /// `g · x ≥ h`
    pub fn add_ge(&mut self, g: Vec<T>, h: T) {
        assert_eq!(g.len(), self.num_vars);
        self.inequalities.push((g, h));
    }

    /// `g · x ≤ h`
    pub fn add_le(&mut self, g: Vec<T>, h: T) {
        self.add_ge(g.into_iter().map(|c| -c).collect(), -h);
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.num_vars
            && self.nonneg.iter().zip(x).all(|(&nn, v)| !nn || !is_neg(v))
            && self.equalities.iter().all(|(a, b)| (dot(a, x) - b.clone()).is_negligible())
            && self.inequalities.iter().all(|(g, h)| !is_neg(&(dot(g, x) - h.clone())))
    }

    /// Checks a certificate against this program without using the solver.
    pub fn verify_certificate(&self, cert: &FarkasCertificate<T>) -> bool {
        if cert.equality.len() != self.equalities.len()
            || cert.inequality.len() != self.inequalities.len()
            || cert.inequality.iter().any(is_neg)
        {
            return false;
        }
        let mut combo = vec![T::zero(); self.num_vars];
        let mut rhs = T::zero();
        let rows = self.equalities.iter().zip(&cert.equality);
        let rows = rows.chain(self.inequalities.iter().zip(&cert.inequality));
        for ((a, b), y) in rows {
            for (c, aj) in combo.iter_mut().zip(a) {
                *c = c.clone() + y.clone() * aj.clone();
            }
            rhs = rhs + y.clone() * b.clone();
        }
        let signs_ok = combo.iter().zip(&self.nonneg).all(|(c, &nn)| {
            if nn {
                !is_pos(c)
            } else {
                c.is_negligible()
            }
        });
        signs_ok && is_pos(&rhs)
    }

    pub fn feasible_point(&self) -> LpOutcome<T> {
        self.maximize(&vec![T::zero(); self.num_vars])
    }

    pub fn maximize(&self, objective: &[T]) -> LpOutcome<T> {
        assert_eq!(objective.len(), self.num_vars);
        Tableau::build(self).solve(self, objective)
    }

    pub fn minimize(&self, objective: &[T]) -> LpOutcome<T> {
        let neg: Vec<T> = objective.iter().map(|c| -c.clone()).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
            other => other,
        }
    }
}

fn is_neg<T: Scalar>(v: &T) -> bool {
    *v < T::zero() && !v.is_negligible()
}

fn is_pos<T: Scalar>(v: &T) -> bool {
    *v > T::zero() && !v.is_negligible()
}

/// How a column of the tableau relates to the original variables.
#[derive(Clone, Copy, Debug)]
enum Column {
    Plus(usize),
    Minus(usize),
    Slack,
    Artificial,
}

struct Tableau<T> {
    /// `m` constraint rows followed by the objective row; last column is the rhs.
    a: Vec<Vec<T>>,
    kinds: Vec<Column>,
    basis: Vec<usize>,
    /// Column that formed the initial identity in each row.
    initial: Vec<usize>,
    /// Row sign flips applied when building the standard form.
    sigma: Vec<bool>,
    num_eq: usize,
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

impl<T: Scalar> Tableau<T> {
    fn build(lp: &LinearProgram<T>) -> Self {
        let mut kinds = Vec::new();
        for j in 0..lp.num_vars {
            kinds.push(Column::Plus(j));
            if !lp.nonneg[j] {
                kinds.push(Column::Minus(j));
            }
        }
        let structural = kinds.len();
        let num_eq = lp.equalities.len();
        let m = num_eq + lp.inequalities.len();

        // g·x − s = h; rows with h ≤ 0 are negated so the slack is basic.
        let mut slack_of_row = vec![None; m];
        for slot in slack_of_row.iter_mut().skip(num_eq) {
            *slot = Some(kinds.len());
            kinds.push(Column::Slack);
        }
        let mut sigma = vec![false; m];
        let mut initial = vec![0; m];
        for r in 0..m {
            let rhs = if r < num_eq {
                &lp.equalities[r].1
            } else {
                &lp.inequalities[r - num_eq].1
            };
            let is_ineq = r >= num_eq;
            if is_ineq && !is_pos(rhs) {
                sigma[r] = true;
                initial[r] = slack_of_row[r].unwrap();
            } else {
                sigma[r] = is_neg(rhs);
                initial[r] = kinds.len();
                kinds.push(Column::Artificial);
            }
        }
        let width = kinds.len() + 1;
        let mut a = vec![vec![T::zero(); width]; m + 1];
        for r in 0..m {
            let (coeffs, rhs) = if r < num_eq {
                &lp.equalities[r]
            } else {
                &lp.inequalities[r - num_eq]
            };
            let sign = |v: T| if sigma[r] { -v } else { v };
            for (c, kind) in kinds[..structural].iter().enumerate() {
                a[r][c] = match *kind {
                    Column::Plus(j) => sign(coeffs[j].clone()),
                    Column::Minus(j) => sign(-coeffs[j].clone()),
                    _ => unreachable!(),
                };
            }
            if let Some(s) = slack_of_row[r] {
                a[r][s] = sign(-T::one());
            }
            if matches!(kinds[initial[r]], Column::Artificial) {
                a[r][initial[r]] = T::one();
            }
            a[r][width - 1] = sign(rhs.clone());
        }
        Self {
            a,
            kinds,
            basis: initial.clone(),
            initial,
            sigma,
            num_eq,
        }
    }

    fn m(&self) -> usize {
        self.basis.len()
    }

    fn width(&self) -> usize {
        self.kinds.len() + 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width();
        let p = self.a[r][c].clone();
        for j in 0..w {
            let v = self.a[r][j].clone() / p.clone();
            self.a[r][j] = v;
        }
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..w {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
                }
            }
            // keep the pivot column exact under floating point
            row[c] = T::zero();
        }
        self.basis[r] = c;
    }

    /// Loads the reduced-cost row for column costs `cost`.
    fn set_objective(&mut self, cost: &[T]) {
        let m = self.m();
        let w = self.width();
        let mut obj: Vec<T> = cost.iter().cloned().chain(std::iter::once(T::zero())).collect();
        for r in 0..m {
            let cb = cost[self.basis[r]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..w {
                obj[j] = obj[j].clone() - cb.clone() * self.a[r][j].clone();
            }
        }
        self.a[m] = obj;
    }

    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> Phase {
        let m = self.m();
        let rhs = self.width() - 1;
        loop {
            let entering = (0..rhs).find(|&j| allowed(j) && is_neg(&self.a[m][j]));
            let Some(c) = entering else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, T)> = None;
            for r in 0..m {
                if !is_pos(&self.a[r][c]) {
                    continue;
                }
                let ratio = self.a[r][rhs].clone() / self.a[r][c].clone();
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        let diff = ratio.clone() - best.clone();
                        is_neg(&diff) || (diff.is_negligible() && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Phase::Unbounded(c),
            }
        }
    }

    fn column_values(&self) -> Vec<T> {
        let rhs = self.width() - 1;
        let mut vals = vec![T::zero(); self.kinds.len()];
        for (r, &b) in self.basis.iter().enumerate() {
            vals[b] = self.a[r][rhs].clone();
        }
        vals
    }

    fn to_original(&self, cols: &[T], n: usize) -> Vec<T> {
        let mut x = vec![T::zero(); n];
        for (v, kind) in cols.iter().zip(&self.kinds) {
            match *kind {
                Column::Plus(j) => x[j] = x[j].clone() + v.clone(),
                Column::Minus(j) => x[j] = x[j].clone() - v.clone(),
                _ => {}
            }
        }
        x
    }

    fn solve(mut self, lp: &LinearProgram<T>, objective: &[T]) -> LpOutcome<T> {
        let m = self.m();
        let ncols = self.kinds.len();
        let is_art = |k: &Column| matches!(k, Column::Artificial);

        let phase1: Vec<T> = self
            .kinds
            .iter()
            .map(|k| if is_art(k) { T::one() } else { T::zero() })
            .collect();
        self.set_objective(&phase1);
        // Phase 1 is bounded below by zero.
        let _ = self.run(|_| true);
        let infeasibility = -self.a[m][ncols].clone();
        if is_pos(&infeasibility) {
            return LpOutcome::Infeasible(self.certificate(&phase1, lp));
        }

        // Drive zero-level artificials out of the basis where possible.
        for r in 0..m {
            if is_art(&self.kinds[self.basis[r]]) {
                if let Some(c) = (0..ncols).find(|&c| !is_art(&self.kinds[c]) && !self.a[r][c].is_negligible()) {
                    self.pivot(r, c);
                }
            }
        }

        let cost: Vec<T> = self
            .kinds
            .iter()
            .map(|k| match *k {
                Column::Plus(j) => -objective[j].clone(),
                Column::Minus(j) => objective[j].clone(),
                _ => T::zero(),
            })
            .collect();
        self.set_objective(&cost);
        let kinds = self.kinds.clone();
        let outcome = self.run(|c| !is_art(&kinds[c]));
        let cols = self.column_values();
        let x = self.to_original(&cols, lp.num_vars);
        match outcome {
            Phase::Optimal => {
                let value = dot(objective, &x);
                LpOutcome::Optimal { x, value }
            }
            Phase::Unbounded(c) => {
                let mut dir = vec![T::zero(); ncols];
                dir[c] = T::one();
                for r in 0..m {
                    dir[self.basis[r]] = -self.a[r][c].clone();
                }
                let ray = self.to_original(&dir, lp.num_vars);
                LpOutcome::Unbounded { x, ray }
            }
        }
    }

    /// Phase-1 duals `y_r = c_r − d_r` read off the initial identity columns.
    fn certificate(&self, phase1: &[T], lp: &LinearProgram<T>) -> FarkasCertificate<T> {
        let m = self.m();
        let mut equality = Vec::with_capacity(self.num_eq);
        let mut inequality = Vec::with_capacity(m - self.num_eq);
        for r in 0..m {
            let c = self.initial[r];
            // the initial column is +e_r in the sign-adjusted rows
            let y = phase1[c].clone() - self.a[m][c].clone();
            let y = if self.sigma[r] { -y } else { y };
            if r < self.num_eq {
                equality.push(y);
            } else {
                inequality.push(y);
            }
        }
        let cert = FarkasCertificate { equality, inequality };
        debug_assert!(!T::EXACT || lp.verify_certificate(&cert));
        cert
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};
    use crate::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn small_optimum() {
        // max x + y s.t. x + 2y ≤ 4, 3x + y ≤ 6, x, y ≥ 0 → (8/5, 6/5)
        let mut lp = LinearProgram::new(2);
        lp.set_nonnegative(0);
        lp.set_nonnegative(1);
        lp.add_le(v(&[1, 2]), qi(4));
        lp.add_le(v(&[3, 1]), qi(6));
        match lp.maximize(&v(&[1, 1])) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![q(8, 5), q(6, 5)]);
                assert_eq!(value, q(14, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x s.t. x − y = −3, y ≥ 1 → x = −2
        let mut lp = LinearProgram::new(2);
        lp.add_eq(v(&[1, -1]), qi(-3));
        lp.add_ge(v(&[0, 1]), qi(1));
        match lp.minimize(&v(&[1, 0])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, qi(-2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_has_ray() {
        let mut lp = LinearProgram::new(2);
        lp.add_ge(v(&[1, 1]), qi(1));
        match lp.maximize(&v(&[1, 0])) {
            LpOutcome::Unbounded { x, ray } => {
                assert!(lp.contains(&x));
                assert!(ray[0] > qi(0));
                assert_eq!(ray[0].clone() + ray[1].clone() >= qi(0), true);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_certificate_verifies() {
        // x ≥ 1, x ≤ 0
        let mut lp = LinearProgram::new(1);
        lp.add_ge(v(&[1]), qi(1));
        lp.add_le(v(&[1]), qi(0));
        match lp.feasible_point() {
            LpOutcome::Infeasible(cert) => assert!(lp.verify_certificate(&cert)),
            other => panic!("{other:?}"),
        }
        // x + y = 1, x + y = 2
        let mut lp = LinearProgram::new(2);
        lp.add_eq(v(&[1, 1]), qi(1));
        lp.add_eq(v(&[1, 1]), qi(2));
        let LpOutcome::Infeasible(cert) = lp.feasible_point() else {
            panic!("expected infeasible")
        };
        assert!(lp.verify_certificate(&cert));
        let bogus = FarkasCertificate {
            equality: v(&[1, 1]),
            inequality: vec![],
        };
        assert!(!lp.verify_certificate(&bogus));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.add_eq(v(&[1, 1]), qi(2));
        lp.add_eq(v(&[2, 2]), qi(4));
        lp.set_nonnegative(0);
        lp.set_nonnegative(1);
        match lp.maximize(&v(&[1, 0])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, qi(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn float_instance() {
        let mut lp = LinearProgram::<f64>::new(2);
        lp.set_nonnegative(0);
        lp.set_nonnegative(1);
        lp.add_le(vec![1.0, 2.0], 4.0);
        lp.add_le(vec![3.0, 1.0], 6.0);
        let LpOutcome::Optimal { value, .. } = lp.maximize(&[1.0, 1.0]) else {
            panic!()
        };
        assert!((value - 2.8).abs() < 1e-9);
    }
}
