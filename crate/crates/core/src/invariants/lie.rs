//! Lie algebras by structure constants, left-invariant forms and the
//! Chevalley–Eilenberg differential.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::Matrix;
use crate::scalar::{format_rational, qi};
use crate::Rational;

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            c: vec![vec![vec![qi(0); dim]; dim]; dim],
        }
    }

    /// From nonzero brackets `(i, j, v)` meaning `[e_i, e_j] = v`; the
    /// antisymmetric partner is filled in.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<Rational>)]) -> Self {
        let mut l = Self::abelian(dim);
        for (i, j, v) in brackets {
            l.set_bracket(*i, *j, v.clone());
        }
        l
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = −v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<Rational>) {
        assert_eq!(v.len(), self.dim);
        self.c[j][i] = v.iter().map(|x| -x).collect();
        self.c[i][j] = v;
    }

    /// The 3-dimensional Heisenberg algebra `[e_1, e_2] = e_3`.
    pub fn heisenberg() -> Self {
        Self::from_brackets(3, &[(0, 1, unit(3, 2))])
    }

    /// `[E1,E2] = E3`, `[E3,E1] = E4`, `[E3,E2] = E5`.
    pub fn five_dim_example() -> Self {
        Self::from_brackets(5, &[(0, 1, unit(5, 2)), (2, 0, unit(5, 3)), (2, 1, unit(5, 4))])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.c[i][j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![qi(0); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let f = xi * yj;
                for (o, c) in out.iter_mut().zip(&self.c[i][j]) {
                    *o += &f * c;
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| (0..self.dim).all(|k| self.c[i][j][k] == -&self.c[j][i][k]))
        })
    }

    /// Structure constants in the basis `e'_i = λ_i e_i`.
    pub fn rescaled(&self, lambda: &[Rational]) -> Self {
        let mut out = Self::abelian(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    out.c[i][j][k] = &self.c[i][j][k] * &lambda[i] * &lambda[j] / &lambda[k];
                }
            }
        }
        out
    }

    /// Structure constants after reordering the basis: new `e_a` is old
    /// `e_{order[a]}`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        let mut out = Self::abelian(self.dim);
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    out.c[a][b][c] = self.c[order[a]][order[b]][order[c]].clone();
                }
            }
        }
        out
    }
}

pub(crate) fn unit(dim: usize, k: usize) -> Vec<Rational> {
    (0..dim).map(|i| qi((i == k) as i64)).collect()
}

/// Basis triples `i < j < k` on which the Jacobi identity fails; empty
/// means the identity holds.
pub fn jacobi_check(l: &LieAlgebra) -> Vec<(usize, usize, usize)> {
    let m = l.dim();
    let e = |i| unit(m, i);
    let mut bad = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let t1 = l.bracket(&l.bracket(&e(i), &e(j)), &e(k));
                let t2 = l.bracket(&l.bracket(&e(j), &e(k)), &e(i));
                let t3 = l.bracket(&l.bracket(&e(k), &e(i)), &e(j));
                if t1.iter().zip(&t2).zip(&t3).any(|((a, b), c)| !(a + b + c).is_zero()) {
                    bad.push((i, j, k));
                }
            }
        }
    }
    bad
}

/// Number of steps `s` with `𝔤_{s+1} = 0` in the lower central series
/// `𝔤_1 = 𝔤`, `𝔤_{k+1} = [𝔤, 𝔤_k]`; `None` if the series stalls.
pub fn nilpotency_step(l: &LieAlgebra) -> Option<usize> {
    let m = l.dim();
    let mut current: Vec<Vec<Rational>> = (0..m).map(|i| unit(m, i)).collect();
    let mut step = 0;
    loop {
        if current.is_empty() {
            return Some(step.max(1));
        }
        step += 1;
        let mut next: Vec<Vec<Rational>> = Vec::new();
        for i in 0..m {
            for v in &current {
                next.push(l.bracket(&unit(m, i), v));
            }
        }
        let keep = Matrix::independent_subset(&next);
        let next: Vec<Vec<Rational>> = keep.into_iter().map(|i| next[i].clone()).collect();
        if next.len() == current.len() {
            return None;
        }
        current = next;
    }
}

/// A left-invariant `k`-form `Σ c_I E^{i_1}∧…∧E^{i_k}` over increasing
/// multi-indices `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

/// Sorts `idx`, returning the permutation sign, or `None` on a repeat.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The dual basis 1-form `E^i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim, 1);
        f.add_term(&[i], &qi(1));
        f
    }

    /// `c · E^{i_1}∧…∧E^{i_k}` for an arbitrary index order.
    pub fn monomial(dim: usize, idx: &[usize], c: Rational) -> Self {
        let mut f = Self::zero(dim, idx.len());
        f.add_term(idx, &c);
        f
    }

    /// Builds a form from `(coefficient, indices)` terms.
    pub fn from_terms(dim: usize, degree: usize, terms: &[(Rational, Vec<usize>)]) -> Self {
        let mut f = Self::zero(dim, degree);
        for (c, idx) in terms {
            assert_eq!(idx.len(), degree);
            f.add_term(idx, c);
        }
        f
    }

    fn add_term(&mut self, idx: &[usize], c: &Rational) {
        assert!(idx.iter().all(|&i| i < self.dim));
        let Some((key, sign)) = sort_sign(idx) else {
            return;
        };
        let entry = self.coeffs.entry(key.clone()).or_insert_with(|| qi(0));
        *entry += c * qi(sign);
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.coeffs.iter()
    }

    /// Value on basis vectors `e_{idx}` in the given order.
    pub fn on_basis(&self, idx: &[usize]) -> Rational {
        match sort_sign(idx) {
            Some((key, sign)) => self.coeffs.get(&key).map_or(qi(0), |c| c * qi(sign)),
            None => qi(0),
        }
    }

    /// Multilinear evaluation on `degree` vectors.
    pub fn eval(&self, vectors: &[&[Rational]]) -> Rational {
        assert_eq!(vectors.len(), self.degree);
        let mut total = qi(0);
        for (idx, c) in &self.coeffs {
            // determinant of the minor (vectors[j][idx[l]])
            let minor = Matrix::from_fn(self.degree, self.degree, |j, l| vectors[j][idx[l]].clone());
            total += c * determinant(&minor);
        }
        total
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx, c);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, c) in &self.coeffs {
            out.add_term(idx, &(c * s));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let idx: Vec<usize> = a.iter().chain(b).copied().collect();
                out.add_term(&idx, &(x * y));
            }
        }
        out
    }

    /// Coefficient matrix `ω(e_i, e_j)` of a 2-form.
    pub fn to_matrix(&self) -> Matrix<Rational> {
        assert_eq!(self.degree, 2);
        Matrix::from_fn(self.dim, self.dim, |i, j| self.on_basis(&[i, j]))
    }

    pub fn from_matrix(m: &Matrix<Rational>) -> Self {
        let mut f = Self::zero(m.rows(), 2);
        for i in 0..m.rows() {
            for j in i + 1..m.cols() {
                f.add_term(&[i, j], &m[(i, j)]);
            }
        }
        f
    }

    /// Pull back along the linear map whose columns express the new basis in
    /// the old one: the result has dimension `columns.len()`.
    pub fn pullback(&self, columns: &[Vec<Rational>]) -> Self {
        let dim = columns.len();
        let mut out = Self::zero(dim, self.degree);
        let mut idx = vec![0usize; self.degree];
        loop {
            if idx.windows(2).all(|w| w[0] < w[1]) {
                let vecs: Vec<&[Rational]> = idx.iter().map(|&i| columns[i].as_slice()).collect();
                let v = self.eval(&vecs);
                if !v.is_zero() {
                    out.add_term(&idx, &v);
                }
            }
            let mut p = 0;
            while p < self.degree && idx[p] + 1 == dim {
                idx[p] = 0;
                p += 1;
            }
            if p == self.degree {
                break;
            }
            idx[p] += 1;
        }
        out
    }
}

fn determinant(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    match n {
        0 => Rational::one(),
        1 => m[(0, 0)].clone(),
        _ => (0..n)
            .filter(|&j| !m[(0, j)].is_zero())
            .map(|j| {
                let minor = Matrix::from_fn(n - 1, n - 1, |r, c| m[(r + 1, if c < j { c } else { c + 1 })].clone());
                let sign = if j % 2 == 0 { qi(1) } else { qi(-1) };
                sign * &m[(0, j)] * determinant(&minor)
            })
            .fold(qi(0), |a, b| a + b),
    }
}

impl fmt::Display for Form {
    /// `-2 E1∧E2∧E3 + E4∧E5`, 1-based, `0` for the zero form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.coeffs.iter().enumerate() {
            let mono: Vec<String> = idx.iter().map(|i| format!("E{}", i + 1)).collect();
            let mono = mono.join("∧");
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (n, mag.is_one()) {
                (0, true) if c.is_negative() => write!(f, "-{mono}")?,
                (0, true) => write!(f, "{mono}")?,
                (0, false) => write!(f, "{} {mono}", format_rational(c))?,
                (_, true) => write!(f, " {sign} {mono}")?,
                (_, false) => write!(f, " {sign} {} {mono}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

/// Left-invariant differential:
/// `dφ(X_0,…,X_k) = Σ_{i<j} (−1)^{i+j} φ([X_i,X_j], X_0,…,X̂_i,…,X̂_j,…,X_k)`.
pub fn ce_differential(l: &LieAlgebra, phi: &Form) -> Form {
    assert_eq!(l.dim(), phi.dim());
    let m = l.dim();
    let k = phi.degree();
    let mut out = Form::zero(m, k + 1);
    for idx in increasing_tuples(m, k + 1) {
        let mut total = qi(0);
        for i in 0..=k {
            for j in i + 1..=k {
                let rest: Vec<usize> = (0..=k).filter(|&p| p != i && p != j).map(|p| idx[p]).collect();
                let br = l.bracket_basis(idx[i], idx[j]);
                let mut val = qi(0);
                for (mm, c) in br.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let mut args = vec![mm];
                    args.extend(&rest);
                    val += c * phi.on_basis(&args);
                }
                if (i + j) % 2 == 1 {
                    total -= val;
                } else {
                    total += val;
                }
            }
        }
        if !total.is_zero() {
            out.add_term(&idx, &total);
        }
    }
    out
}

pub(crate) fn increasing_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Closedness of one named form.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosednessEntry {
    pub name: String,
    pub form: Form,
    pub residue: Form,
}

impl ClosednessEntry {
    pub fn closed(&self) -> bool {
        self.residue.is_zero()
    }
}

/// `dω` for each named form.
pub fn closedness_report(l: &LieAlgebra, forms: &[(String, Form)]) -> Vec<ClosednessEntry> {
    forms
        .iter()
        .map(|(name, form)| ClosednessEntry {
            name: name.clone(),
            form: form.clone(),
            residue: ce_differential(l, form),
        })
        .collect()
}

/// The printed 2-forms of the five-dimensional example together with the
/// variant obtained by flipping the sign of the second term of each.
pub fn five_dim_forms() -> Vec<(String, Form)> {
    let two = |a: (usize, usize), sign: i64, b: (usize, usize)| {
        Form::from_terms(5, 2, &[(qi(1), vec![a.0, a.1]), (qi(sign), vec![b.0, b.1])])
    };
    vec![
        ("omega_I".into(), two((0, 3), -1, (1, 4))),
        ("omega_I (flipped)".into(), two((0, 3), 1, (1, 4))),
        ("omega_S".into(), two((0, 4), -1, (1, 3))),
        ("omega_S (flipped)".into(), two((0, 4), 1, (1, 3))),
        ("omega_T".into(), two((0, 3), 1, (1, 4))),
        ("omega_T (flipped)".into(), two((0, 3), -1, (1, 4))),
    ]
}

/// `α∨β = α⊗β + β⊗α` as a symmetric matrix, from `(coefficient, i, j)`.
pub fn symmetric_form(dim: usize, terms: &[(Rational, usize, usize)]) -> Matrix<Rational> {
    let mut m = Matrix::zeros(dim, dim);
    for (c, i, j) in terms {
        m[(*i, *j)] += c;
        m[(*j, *i)] += c;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_examples() {
        assert!(jacobi_check(&LieAlgebra::abelian(4)).is_empty());
        assert!(jacobi_check(&LieAlgebra::five_dim_example()).is_empty());
        assert!(jacobi_check(&LieAlgebra::heisenberg()).is_empty());
        let mut bad = LieAlgebra::five_dim_example();
        bad.set_bracket(3, 4, unit(5, 0));
        assert!(jacobi_check(&bad).contains(&(2, 3, 4)));
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(nilpotency_step(&LieAlgebra::abelian(3)), Some(1));
        assert_eq!(nilpotency_step(&LieAlgebra::heisenberg()), Some(2));
        assert_eq!(nilpotency_step(&LieAlgebra::five_dim_example()), Some(3));
        // sl(2) = [h,e]=2e, [h,f]=-2f, [e,f]=h
        let sl2 = LieAlgebra::from_brackets(
            3,
            &[
                (0, 1, vec![qi(0), qi(2), qi(0)]),
                (0, 2, vec![qi(0), qi(0), qi(-2)]),
                (1, 2, vec![qi(1), qi(0), qi(0)]),
            ],
        );
        assert!(jacobi_check(&sl2).is_empty());
        assert_eq!(nilpotency_step(&sl2), None);
    }

    #[test]
    fn differential_examples() {
        let l = LieAlgebra::five_dim_example();
        assert_eq!(ce_differential(&l, &Form::basis(5, 2)), Form::monomial(5, &[0, 1], qi(-1)));
        assert!(ce_differential(&l, &Form::basis(5, 0)).is_zero());
        let ab = LieAlgebra::abelian(5);
        assert!(ce_differential(&ab, &Form::monomial(5, &[1, 3], qi(7))).is_zero());
    }

    #[test]
    fn form_display_and_eval() {
        let f = Form::from_terms(5, 3, &[(qi(-2), vec![0, 1, 2]), (qi(1), vec![4, 3, 2])]);
        assert_eq!(f.to_string(), "-2 E1∧E2∧E3 - E3∧E4∧E5");
        let e = |i| unit(5, i);
        assert_eq!(f.eval(&[&e(1), &e(0), &e(2)]), qi(2));
        let w = Form::basis(5, 0).wedge(&Form::basis(5, 1));
        assert_eq!(w.eval(&[&e(0), &e(1)]), qi(1));
        assert_eq!(Form::from_matrix(&w.to_matrix()), w);
    }

    #[test]
    fn printed_forms() {
        let l = LieAlgebra::five_dim_example();
        let report = closedness_report(&l, &five_dim_forms());
        let get = |name: &str| report.iter().find(|e| e.name == name).unwrap();
        assert!(get("omega_I").closed());
        assert!(get("omega_T").closed());
        assert!(get("omega_S (flipped)").closed());
        assert!(!get("omega_S").closed());
    }
}
