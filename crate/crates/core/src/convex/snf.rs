//! Integer matrices and the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::Matrix;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == c), "ragged rows");
        Self::from_fn(rows.len(), c, |i, j| BigInt::from(rows[i][j]))
    }

    /// Integer matrix from a rational one, if every entry is integral.
    pub fn from_rational(m: &Matrix<BigRational>) -> Option<Self> {
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let x = &m[(i, j)];
                if !x.is_integer() {
                    return None;
                }
                data.push(x.to_integer());
            }
        }
        Some(Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }

    pub fn to_rational(&self) -> Matrix<BigRational> {
        Matrix::from_fn(self.rows, self.cols, |i, j| BigRational::from_integer(self[(i, j)].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(BigInt::zero(), |acc, k| acc + &self[(i, k)] * &other[(k, j)])
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += f · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += f · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self[(r, j)].clone();
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `S = P M Q` with `P`, `Q` unimodular and `S` diagonal, each nonzero
/// diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntegerMatrix,
    pub p: IntegerMatrix,
    pub q: IntegerMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut p = IntegerMatrix::identity(r);
    let mut q = IntegerMatrix::identity(c);
    let mut rank = 0;
    for t in 0..r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !a[(i, j)].is_zero()
                        && best.map_or(true, |(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SmithForm { s: a, p, q, rank };
            };
            a.swap_rows(t, bi);
            p.swap_rows(t, bi);
            a.swap_cols(t, bj);
            q.swap_cols(t, bj);

            let mut dirty = false;
            for i in t + 1..r {
                let f = -a[(i, t)].div_floor(&a[(t, t)]);
                if !f.is_zero() {
                    a.add_row(i, t, &f);
                    p.add_row(i, t, &f);
                }
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                let f = -a[(t, j)].div_floor(&a[(t, t)]);
                if !f.is_zero() {
                    a.add_col(j, t, &f);
                    q.add_col(j, t, &f);
                }
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let bad_row = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)]))
            });
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    p.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            p.negate_row(t);
        }
        rank += 1;
    }
    SmithForm { s: a, p, q, rank }
}

/// Rational and integral bases of `ker M`.
///
/// The integral basis spans the lattice `ker M ∩ ℤ^c`: it is the trailing
/// `c − rank` columns of the right transform `Q`.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub rational: Vec<Vec<BigRational>>,
    pub integral: Vec<Vec<BigInt>>,
}

pub fn integral_kernel_basis(m: &IntegerMatrix) -> KernelBasis {
    let snf = smith_normal_form(m);
    let integral = (snf.rank..m.cols).map(|j| snf.q.col(j)).collect();
    KernelBasis {
        rational: m.to_rational().kernel(),
        integral,
    }
}

/// Whether the columns of `m` extend to a ℤ-basis of `ℤ^rows`: they are
/// independent and every invariant factor is 1.
pub fn extends_to_basis(m: &IntegerMatrix) -> bool {
    let snf = smith_normal_form(m);
    snf.rank == m.cols && snf.invariant_factors().iter().all(One::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntegerMatrix) {
        let f = smith_normal_form(m);
        assert_eq!(f.p.mul(m).mul(&f.q), f.s);
        assert!(f.p.is_unimodular());
        assert!(f.q.is_unimodular());
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j {
                    assert!(f.s[(i, j)].is_zero());
                }
            }
        }
        let d = f.invariant_factors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(d.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn textbook_example() {
        let m = IntegerMatrix::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check(&m);
        let d = smith_normal_form(&m).invariant_factors();
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn rank_deficient_and_rectangular() {
        let m = IntegerMatrix::from_rows_i64(&[vec![1, -1]]);
        check(&m);
        let k = integral_kernel_basis(&m);
        assert_eq!(k.integral.len(), 1);
        assert_eq!(k.rational.len(), 1);
        let v = &k.integral[0];
        assert_eq!(&v[0], &v[1]);
        assert!(v[0].abs().is_one());
        check(&IntegerMatrix::zeros(2, 3));
    }

    #[test]
    fn primitive_columns() {
        assert!(extends_to_basis(&IntegerMatrix::from_rows_i64(&[vec![1], vec![2]])));
        assert!(!extends_to_basis(&IntegerMatrix::from_rows_i64(&[vec![2], vec![4]])));
        assert!(!extends_to_basis(&IntegerMatrix::from_rows_i64(&[vec![1, 1], vec![1, -1]])));
        assert!(extends_to_basis(&IntegerMatrix::from_rows_i64(&[vec![1, 1], vec![0, 1]])));
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntegerMatrix::from_rows_i64(&[vec![0, 2, 1], vec![3, 1, 0], vec![1, 1, 1]]);
        // 0(1) − 2(3) + 1(2) = −4
        assert_eq!(m.determinant(), BigInt::from(-4));
    }
}
