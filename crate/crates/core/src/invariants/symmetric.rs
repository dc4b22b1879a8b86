//! Symmetric hypersymplectic Lie algebras `𝔤 = 𝔨 + 𝔹ⁿ` built from an
//! `s_E`-invariant quartic `R⁺ ∈ S⁴L₊`.
//!
//! Conventions: `E = L₊ ⊕ L₋` with bases `e_a`, `ẽ_a`, `ω^E(e_a, ẽ_b) = δ_ab`,
//! `s_E e_a = e_a`, `s_E ẽ_a = −ẽ_a`; `H` has basis `h, h̃` with
//! `ω^H(h, h̃) = 1`. `S²L₊` acts on `E` by
//! `(uv)·w = u ω^E(v,w) + v ω^E(u,w)` and `R⁺_{A,B}` is the double
//! contraction `Σ R_{abcd} ω^E(e_a,A) ω^E(e_b,B) e_c e_d`.

use num_complex::Complex;
use num_traits::Zero;

use super::lie::{jacobi_check, Form, LieAlgebra};
use crate::algebra::{check_relations, RelationReport};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::qi;
use crate::{ComplexQ, Rational};

fn cq(re: i64, im: i64) -> ComplexQ {
    Complex::new(qi(re), qi(im))
}

/// `R⁺` as a totally symmetric complex 4-tensor on `L₊ = ℂⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticData {
    n: usize,
    r: Vec<ComplexQ>,
}

impl QuarticData {
    /// Validates total symmetry of the `n⁴` coefficients `r[((a·n+b)·n+c)·n+d]`.
    pub fn new(n: usize, r: Vec<ComplexQ>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("L+ must have positive dimension".into()));
        }
        if r.len() != n.pow(4) {
            return Err(Error::DimensionMismatch {
                expected: n.pow(4),
                found: r.len(),
            });
        }
        let q = Self { n, r };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let v = q.coeff(a, b, c, d);
                        let perms = [(b, a, c, d), (a, c, b, d), (a, b, d, c)];
                        if perms.iter().any(|&(w, x, y, z)| q.coeff(w, x, y, z) != v) {
                            return Err(Error::Config("R+ is not totally symmetric".into()));
                        }
                    }
                }
            }
        }
        Ok(q)
    }

    /// `c · e⁴` on `L₊ = ℂ`.
    pub fn e4(c: Rational) -> Self {
        Self::new(1, vec![Complex::new(c, qi(0))]).expect("valid quartic")
    }

    /// Symmetrisation of `Σ c_i e_{a_i}e_{b_i}e_{c_i}e_{d_i}` with real
    /// coefficients.
    pub fn from_monomials(n: usize, monomials: &[(Rational, [usize; 4])]) -> Result<Self> {
        let mut r = vec![cq(0, 0); n.pow(4)];
        for (c, idx) in monomials {
            if idx.iter().any(|&i| i >= n) {
                return Err(Error::Config(format!("monomial index out of range for dim L+ = {n}")));
            }
            let perms = permutations4();
            let w = c / qi(perms.len() as i64);
            for p in perms {
                let j = ((idx[p[0]] * n + idx[p[1]]) * n + idx[p[2]]) * n + idx[p[3]];
                r[j].re += &w;
            }
        }
        Self::new(n, r)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, a: usize, b: usize, c: usize, d: usize) -> &ComplexQ {
        let n = self.n;
        &self.r[((a * n + b) * n + c) * n + d]
    }

    /// `s_E`-invariance: with `e_a` real, all coefficients are real.
    pub fn is_real_invariant(&self) -> bool {
        self.r.iter().all(|c| c.im.is_zero())
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Readings of the real structure on `H`: `s_H h̃ = −h̃` or, as printed,
/// `s_H h̃ = −h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HReading {
    Corrected,
    Printed,
}

/// Elements of `E ⊗ H` as complex vectors indexed by `2α + μ`, with
/// `α < n` for `e_α`, `α ≥ n` for `ẽ_{α−n}`, and `μ ∈ {h, h̃}`.
struct Model<'a> {
    q: &'a QuarticData,
    n: usize,
}

impl<'a> Model<'a> {
    fn new(q: &'a QuarticData) -> Self {
        Self { q, n: q.dim() }
    }

    fn omega_e(&self, a: usize, b: usize) -> i64 {
        let n = self.n;
        if a < n && b == a + n {
            1
        } else if b < n && a == b + n {
            -1
        } else {
            0
        }
    }

    /// `R⁺_{A,B}` as a symmetric `n × n` matrix over `e_c e_d`.
    fn r_ab(&self, a: &[ComplexQ], b: &[ComplexQ]) -> Vec<ComplexQ> {
        let n = self.n;
        let mut m = vec![cq(0, 0); n * n];
        for i in 0..n {
            for j in 0..n {
                let w = &a[n + i] * &b[n + j];
                if w.is_zero() {
                    continue;
                }
                for c in 0..n {
                    for d in 0..n {
                        m[c * n + d] += &w * self.q.coeff(i, j, c, d);
                    }
                }
            }
        }
        m
    }

    fn component(&self, x: &[ComplexQ], mu: usize) -> Vec<ComplexQ> {
        (0..2 * self.n).map(|a| x[2 * a + mu].clone()).collect()
    }

    /// `[X, Y] = ω^H(h,h̃)(R_{X_h,Y_h̃} − R_{X_h̃,Y_h})`.
    fn bracket(&self, x: &[ComplexQ], y: &[ComplexQ]) -> Vec<ComplexQ> {
        let p = self.r_ab(&self.component(x, 0), &self.component(y, 1));
        let m = self.r_ab(&self.component(x, 1), &self.component(y, 0));
        p.into_iter().zip(m).map(|(a, b)| a - b).collect()
    }

    /// `M · w = 2 Σ M_cd e_c ω^E(e_d, w)` on each `H` component.
    fn act(&self, m: &[ComplexQ], x: &[ComplexQ]) -> Vec<ComplexQ> {
        let n = self.n;
        let mut out = vec![cq(0, 0); 4 * n];
        for mu in 0..2 {
            for c in 0..n {
                let mut acc = cq(0, 0);
                for d in 0..n {
                    acc += &m[c * n + d] * &x[2 * (n + d) + mu];
                }
                out[2 * c + mu] = acc * cq(2, 0);
            }
        }
        out
    }

    fn s_e(&self, a: &[ComplexQ]) -> Vec<ComplexQ> {
        a.iter()
            .enumerate()
            .map(|(i, c)| if i < self.n { c.conj() } else { -c.conj() })
            .collect()
    }

    fn sigma(&self, x: &[ComplexQ], reading: HReading) -> Vec<ComplexQ> {
        let mut out = vec![cq(0, 0); 4 * self.n];
        for a in 0..2 * self.n {
            let s = if a < self.n { qi(1) } else { qi(-1) };
            let (h, ht) = (x[2 * a].conj() * &s, x[2 * a + 1].conj() * &s);
            out[2 * a] += h;
            match reading {
                HReading::Corrected => out[2 * a + 1] -= ht,
                HReading::Printed => out[2 * a] -= ht,
            }
        }
        out
    }

    /// `iẽ_a⊗h, ẽ_a⊗h̃, e_a⊗h, ie_a⊗h̃` for each `a`.
    fn real_basis(&self) -> Vec<Vec<ComplexQ>> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            let v = |idx: usize, c: ComplexQ| {
                let mut x = vec![cq(0, 0); 4 * n];
                x[idx] = c;
                x
            };
            out.push(v(2 * (n + a), cq(0, 1)));
            out.push(v(2 * (n + a) + 1, cq(1, 0)));
            out.push(v(2 * a, cq(1, 0)));
            out.push(v(2 * a + 1, cq(0, 1)));
        }
        out
    }

    /// `(ω^E ⊗ ω^H)(X, Y)`.
    fn pairing(&self, x: &[ComplexQ], y: &[ComplexQ]) -> ComplexQ {
        let mut acc = cq(0, 0);
        for a in 0..2 * self.n {
            for b in 0..2 * self.n {
                let w = self.omega_e(a, b);
                if w == 0 {
                    continue;
                }
                let t = &x[2 * a] * &y[2 * b + 1] - &x[2 * a + 1] * &y[2 * b];
                acc += t * cq(w, 0);
            }
        }
        acc
    }

    /// `1 ⊗ J` for `J` given on `(h, h̃)` by the images of `h` and `h̃`.
    fn on_h(&self, x: &[ComplexQ], jh: [ComplexQ; 2], jht: [ComplexQ; 2]) -> Vec<ComplexQ> {
        let mut out = vec![cq(0, 0); 4 * self.n];
        for a in 0..2 * self.n {
            let (h, ht) = (&x[2 * a], &x[2 * a + 1]);
            out[2 * a] = h * &jh[0] + ht * &jht[0];
            out[2 * a + 1] = h * &jh[1] + ht * &jht[1];
        }
        out
    }
}

fn split(v: &[ComplexQ]) -> Vec<Rational> {
    v.iter().map(|c| c.re.clone()).chain(v.iter().map(|c| c.im.clone())).collect()
}

/// Real coordinates of `v` in the real span of `basis`, if it lies there.
fn real_coords(basis: &[Vec<ComplexQ>], v: &[ComplexQ]) -> Option<Vec<Rational>> {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| split(b)).collect();
    Matrix::from_cols(&cols, 2 * v.len()).solve(&split(v))
}

/// Comparison of `𝔨` with the real span of `i(R⁺_{s_E A,B} − R⁺_{A,s_E B})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelFormulaReport {
    /// Real dimension of the span of the brackets of real elements.
    pub bracket_dim: usize,
    /// Real dimension of the span of `i(R⁺_{s_E A,B} − R⁺_{A,s_E B})`.
    pub formula_dim: usize,
    /// The brackets lie in the formula's span.
    pub formula_contains_brackets: bool,
    /// The brackets lie in the span without the factor `i`.
    pub formula_without_i_contains_brackets: bool,
}

/// Output of [`build_symmetric_hs`].
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricHs {
    /// Basis: the `4n` real elements of `E ⊗ H` (see `real_basis`), then `𝔨`.
    pub algebra: LieAlgebra,
    pub real_basis: Vec<Vec<ComplexQ>>,
    /// `𝔨` basis as symmetric `n × n` matrices over `e_c e_d`.
    pub k_basis: Vec<Vec<ComplexQ>>,
    /// `g = ω^E ⊗ ω^H` on `𝔹ⁿ`.
    pub gram: Matrix<Rational>,
    /// `I = 1⊗J₁`, `S = 1⊗J₂`, `T = IS` on `𝔹ⁿ`.
    pub endomorphisms: [Matrix<Rational>; 3],
    pub relations: RelationReport,
    /// `ω_I, ω_S, ω_T` as forms on `𝔤`, vanishing on `𝔨`.
    pub forms: Vec<(String, Form)>,
    pub kernel_formula: KernelFormulaReport,
}

/// Whether `σ = s_E ⊗ s_H` is an involution fixing the chosen real basis.
pub fn real_structure_holds(q: &QuarticData, reading: HReading) -> bool {
    let m = Model::new(q);
    let basis = m.real_basis();
    let fixes = basis.iter().all(|b| m.sigma(b, reading) == *b);
    let n4 = 4 * m.n;
    let involution = (0..n4).all(|i| {
        [cq(1, 0), cq(0, 1)].into_iter().all(|c| {
            let mut x = vec![cq(0, 0); n4];
            x[i] = c;
            m.sigma(&m.sigma(&x, reading), reading) == x
        })
    });
    fixes && involution
}

pub fn build_symmetric_hs(q: &QuarticData) -> Result<SymmetricHs> {
    if !q.is_real_invariant() {
        return Err(Error::Config("R+ is not s_E-invariant".into()));
    }
    let m = Model::new(q);
    let n = m.n;
    let basis = m.real_basis();
    let nb = basis.len();

    // brackets of real elements, and 𝔨 as their real span
    let mut br: Vec<Vec<Vec<ComplexQ>>> = vec![vec![Vec::new(); nb]; nb];
    let mut candidates = Vec::new();
    for i in 0..nb {
        for j in 0..nb {
            br[i][j] = m.bracket(&basis[i], &basis[j]);
            if i < j {
                candidates.push(br[i][j].clone());
            }
        }
    }
    let keep = Matrix::independent_subset(&candidates.iter().map(|c| split(c)).collect::<Vec<_>>());
    let k_basis: Vec<Vec<ComplexQ>> = keep.into_iter().map(|i| candidates[i].clone()).collect();
    let kd = k_basis.len();
    let dim = nb + kd;

    let not_real = |what: &str| Error::Config(format!("{what} is not a real element"));
    let mut algebra = LieAlgebra::abelian(dim);
    for i in 0..nb {
        for j in i + 1..nb {
            let coords = real_coords(&k_basis, &br[i][j]).ok_or_else(|| not_real("bracket"))?;
            let mut v = vec![qi(0); dim];
            v[nb..].clone_from_slice(&coords);
            algebra.set_bracket(i, j, v);
        }
    }
    for (a, k) in k_basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let image = m.act(k, b);
            let coords = real_coords(&basis, &image).ok_or_else(|| not_real("k-action image"))?;
            let mut v = vec![qi(0); dim];
            v[..nb].clone_from_slice(&coords);
            algebra.set_bracket(nb + a, j, v);
        }
    }
    if let Some(&(i, j, k)) = jacobi_check(&algebra).first() {
        return Err(Error::JacobiFailure(i, j, k));
    }

    // metric and endomorphisms from ω^E ⊗ ω^H and the real structure on H
    let gram_c: Vec<Vec<ComplexQ>> = basis.iter().map(|x| basis.iter().map(|y| m.pairing(x, y)).collect()).collect();
    if gram_c.iter().flatten().any(|c| !c.im.is_zero()) {
        return Err(not_real("g"));
    }
    let gram = Matrix::from_fn(nb, nb, |i, j| gram_c[i][j].re.clone());
    let endo = |jh: [ComplexQ; 2], jht: [ComplexQ; 2]| -> Result<Matrix<Rational>> {
        let cols = basis
            .iter()
            .map(|b| real_coords(&basis, &m.on_h(b, jh.clone(), jht.clone())).ok_or_else(|| not_real("J-image")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_cols(&cols, nb))
    };
    let i_end = endo([cq(0, 0), cq(0, 1)], [cq(0, 1), cq(0, 0)])?;
    let s_end = endo([cq(1, 0), cq(0, 0)], [cq(0, 0), cq(-1, 0)])?;
    let t_end = &i_end * &s_end;
    let relations = check_relations(&i_end, &s_end, &t_end, &gram);
    let form_on_g = |a: &Matrix<Rational>| {
        let omega = &a.transpose() * &gram;
        let mut f = Form::zero(dim, 2);
        for i in 0..nb {
            for j in i + 1..nb {
                f = f.add(&Form::monomial(dim, &[i, j], omega[(i, j)].clone()));
            }
        }
        f
    };
    let forms = vec![
        ("omega_I".to_string(), form_on_g(&i_end)),
        ("omega_S".to_string(), form_on_g(&s_end)),
        ("omega_T".to_string(), form_on_g(&t_end)),
    ];

    // the displayed formula for 𝔨
    let mut e_real = Vec::new();
    for a in 0..2 * n {
        for c in [cq(1, 0), cq(0, 1)] {
            let mut v = vec![cq(0, 0); 2 * n];
            v[a] = c;
            e_real.push(v);
        }
    }
    let mut formula = Vec::new();
    for a in &e_real {
        for b in &e_real {
            let x = m.r_ab(&m.s_e(a), b);
            let y = m.r_ab(a, &m.s_e(b));
            formula.push(x.into_iter().zip(y).map(|(p, q)| p - q).collect::<Vec<_>>());
        }
    }
    let times_i: Vec<Vec<ComplexQ>> = formula
        .iter()
        .map(|v| v.iter().map(|c| c * cq(0, 1)).collect())
        .collect();
    let span = |vs: &[Vec<ComplexQ>]| -> Vec<Vec<ComplexQ>> {
        let keep = Matrix::independent_subset(&vs.iter().map(|v| split(v)).collect::<Vec<_>>());
        keep.into_iter().map(|i| vs[i].clone()).collect()
    };
    let with_i = span(&times_i);
    let without_i = span(&formula);
    let contains = |sp: &[Vec<ComplexQ>]| k_basis.iter().all(|k| real_coords(sp, k).is_some());
    let kernel_formula = KernelFormulaReport {
        bracket_dim: kd,
        formula_dim: with_i.len(),
        formula_contains_brackets: contains(&with_i),
        formula_without_i_contains_brackets: contains(&without_i),
    };

    Ok(SymmetricHs {
        algebra,
        real_basis: basis,
        k_basis,
        gram,
        endomorphisms: [i_end, s_end, t_end],
        relations,
        forms,
        kernel_formula,
    })
}

/// Diagonal `λ` with `l.rescaled(λ) == target`, found by propagating along
/// the nonzero brackets of `target`; `None` if there is none.
pub fn match_by_scaling(l: &LieAlgebra, target: &LieAlgebra) -> Option<Vec<Rational>> {
    let m = l.dim();
    if target.dim() != m {
        return None;
    }
    let mut outputs = vec![false; m];
    for i in 0..m {
        for j in 0..m {
            for (k, out) in outputs.iter_mut().enumerate() {
                if !target.constant(i, j, k).is_zero() {
                    *out = true;
                }
            }
        }
    }
    let mut lambda: Vec<Option<Rational>> = outputs.iter().map(|&o| (!o).then(|| qi(1))).collect();
    let mut progress = true;
    while progress {
        progress = false;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let t = target.constant(i, j, k);
                    let c = l.constant(i, j, k);
                    if t.is_zero() || c.is_zero() || lambda[k].is_some() {
                        continue;
                    }
                    if let (Some(li), Some(lj)) = (&lambda[i], &lambda[j]) {
                        // t = c λ_i λ_j / λ_k
                        lambda[k] = Some(c * li * lj / t);
                        progress = true;
                    }
                }
            }
        }
    }
    let lambda: Vec<Rational> = lambda.into_iter().collect::<Option<_>>()?;
    (l.rescaled(&lambda) == *target).then_some(lambda)
}

#[cfg(test)]
mod tests {
    use super::super::lie::{closedness_report, nilpotency_step};
    use super::*;

    #[test]
    fn flat_case_is_abelian() {
        let h = build_symmetric_hs(&QuarticData::e4(qi(0))).unwrap();
        assert_eq!(h.algebra.dim(), 4);
        assert_eq!(nilpotency_step(&h.algebra), Some(1));
        assert!(h.relations.all_hold(), "{:?}", h.relations);
    }

    #[test]
    fn e4_reproduces_bracket_table() {
        let h = build_symmetric_hs(&QuarticData::e4(qi(1))).unwrap();
        assert_eq!(h.algebra.dim(), 5);
        // built order E1, E2, E4, E5, E3 → paper order
        let l = h.algebra.reordered(&[0, 1, 4, 2, 3]);
        let lambda = match_by_scaling(&l, &LieAlgebra::five_dim_example()).expect("matches up to scaling");
        assert_eq!(lambda[0], qi(1));
        assert_eq!(nilpotency_step(&h.algebra), Some(3));
        assert!(h.relations.all_hold(), "{:?}", h.relations);
        for entry in closedness_report(&h.algebra, &h.forms) {
            assert!(entry.closed(), "{} = {}, d = {}", entry.name, entry.form, entry.residue);
        }
        assert!(h.kernel_formula.formula_without_i_contains_brackets);
        assert!(!h.kernel_formula.formula_contains_brackets);
    }

    #[test]
    fn derived_forms_in_paper_normalisation() {
        let h = build_symmetric_hs(&QuarticData::e4(qi(1))).unwrap();
        let order = [0, 1, 4, 2, 3];
        let l = h.algebra.reordered(&order);
        let lambda = match_by_scaling(&l, &LieAlgebra::five_dim_example()).unwrap();
        assert_eq!(lambda, vec![qi(1), qi(1), qi(1), qi(-2), qi(2)]);
        let columns: Vec<Vec<Rational>> = (0..5)
            .map(|a| (0..5).map(|i| if i == order[a] { lambda[a].clone() } else { qi(0) }).collect())
            .collect();
        let two = qi(2);
        let printed = super::super::lie::five_dim_forms();
        let get = |name: &str| printed.iter().find(|(n, _)| n == name).unwrap().1.scale(&two);
        let derived: Vec<Form> = h.forms.iter().map(|(_, f)| f.pullback(&columns)).collect();
        // the derived I and T forms are the printed T and I forms; S is the flipped variant
        assert_eq!(derived[0], get("omega_T"));
        assert_eq!(derived[1], get("omega_S (flipped)"));
        assert_eq!(derived[2], get("omega_I"));
        // derived g is the printed g = E1∨E5 − E2∨E4, up to the same factor
        let b = Matrix::from_cols(&columns[..].iter().map(|c| c[..4].to_vec()).collect::<Vec<_>>(), 4);
        let g = &(&b.transpose() * &h.gram) * &b;
        let printed_g = super::super::lie::symmetric_form(5, &[(qi(1), 0, 4), (qi(-1), 1, 3)]);
        for a in [0, 1, 3, 4] {
            for c in [0, 1, 3, 4] {
                assert_eq!(g[(a, c)], &printed_g[(a, c)] * &two, "g({a},{c})");
            }
        }
    }

    #[test]
    fn real_structure_readings() {
        let q = QuarticData::e4(qi(1));
        assert!(real_structure_holds(&q, HReading::Corrected));
        assert!(!real_structure_holds(&q, HReading::Printed));
    }

    #[test]
    fn two_dimensional_quartic() {
        let q = QuarticData::from_monomials(2, &[(qi(1), [0, 0, 0, 0]), (qi(3), [0, 0, 1, 1]), (qi(-2), [0, 1, 1, 1])])
            .unwrap();
        let h = build_symmetric_hs(&q).unwrap();
        assert!(jacobi_check(&h.algebra).is_empty());
        assert!(h.relations.all_hold());
        for entry in closedness_report(&h.algebra, &h.forms) {
            assert!(entry.closed(), "{}", entry.name);
        }
    }

    #[test]
    fn rejects_non_invariant() {
        let q = QuarticData::new(1, vec![cq(0, 1)]).unwrap();
        assert!(build_symmetric_hs(&q).is_err());
    }
}
