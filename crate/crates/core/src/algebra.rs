//! Finite-dimensional superalgebras presented by structure constants.

use std::fmt;
use std::ops::Add;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, solve_homogeneous, unit_vector, zero_vector, Vector};
use crate::scalar::{sign, FieldSpec, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Self {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

/// `(-1)^{p(a) p(b)}` is negative exactly when both are odd.
pub fn koszul_negative(a: Parity, b: Parity) -> bool {
    a.is_odd() && b.is_odd()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AlgebraKind {
    Associative,
    LieSuper,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Associative => write!(f, "assoc"),
            AlgebraKind::LieSuper => write!(f, "liesuper"),
        }
    }
}

/// Sparse coefficient vector: sorted by basis index, no zero entries.
pub type SparseVec = Vec<(usize, Scalar)>;

fn canonical_sparse(mut terms: SparseVec) -> SparseVec {
    terms.sort_by_key(|(k, _)| *k);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some((last, acc)) if *last == k => *acc = &*acc + &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// An element of an algebra, as a dense coefficient vector over its basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Element {
    pub coeffs: Vector,
}

impl Element {
    pub fn new(coeffs: Vector) -> Self {
        Element { coeffs }
    }

    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        Element::new(zero_vector(field, dim))
    }

    pub fn basis(field: FieldSpec, dim: usize, i: usize) -> Self {
        Element::new(unit_vector(field, dim, i))
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element::new(self.coeffs.iter().map(|x| c * x).collect())
    }
}

/// A finite-dimensional `Z/2`-graded algebra given by structure constants
/// `b_i b_j = sum_k c_ij^k b_k`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperAlgebra {
    field: FieldSpec,
    kind: AlgebraKind,
    parity: Vec<Parity>,
    unit: Option<usize>,
    labels: Vec<String>,
    table: Vec<SparseVec>,
}

/// Mutable staging area for a [`SuperAlgebra`].
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    field: FieldSpec,
    kind: AlgebraKind,
    parity: Vec<Parity>,
    unit: Option<usize>,
    labels: Vec<String>,
    table: Vec<SparseVec>,
}

impl AlgebraBuilder {
    pub fn new(field: FieldSpec, kind: AlgebraKind, parity: Vec<Parity>) -> Self {
        let dim = parity.len();
        AlgebraBuilder {
            field,
            kind,
            labels: (0..dim).map(|i| format!("b{i}")).collect(),
            parity,
            unit: None,
            table: vec![Vec::new(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn unit(mut self, unit: Option<usize>) -> Self {
        self.unit = unit;
        self
    }

    /// Adds `c * b_k` to the product `b_i b_j`.
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let d = self.dim();
        self.table[i * d + j].push((k, c));
    }

    pub fn set_product(&mut self, i: usize, j: usize, terms: SparseVec) {
        let d = self.dim();
        self.table[i * d + j] = terms;
    }

    /// Sets `b_i b_j` from a dense coefficient vector.
    pub fn set_dense(&mut self, i: usize, j: usize, v: &[Scalar]) {
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
        self.set_product(i, j, terms);
    }

    /// Checks indices, label count, and scalar fields; grading and the
    /// algebra axioms are left to [`SuperAlgebra::validate`].
    pub fn build(self) -> Result<SuperAlgebra> {
        let dim = self.dim();
        if self.labels.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: self.labels.len(),
            });
        }
        if let Some(u) = self.unit {
            if u >= dim {
                return Err(Error::IndexError(format!("unit index {u} >= dim {dim}")));
            }
            if self.kind == AlgebraKind::LieSuper {
                return Err(Error::InvalidInput(
                    "Lie superalgebras carry no unit".into(),
                ));
            }
        }
        let mut table = Vec::with_capacity(self.table.len());
        for (idx, terms) in self.table.into_iter().enumerate() {
            for (k, c) in &terms {
                if *k >= dim {
                    return Err(Error::IndexError(format!(
                        "product ({}, {}) has basis index {k} >= dim {dim}",
                        idx / dim.max(1),
                        idx % dim.max(1)
                    )));
                }
                if c.field() != self.field {
                    return Err(Error::FieldMismatch {
                        left: self.field,
                        right: c.field(),
                    });
                }
            }
            table.push(canonical_sparse(terms));
        }
        Ok(SuperAlgebra {
            field: self.field,
            kind: self.kind,
            parity: self.parity,
            unit: self.unit,
            labels: self.labels,
            table,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Violation {
    Grading { i: usize, j: usize, k: usize },
    Unit { i: usize },
    Associativity { i: usize, j: usize, k: usize },
    AntiSymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
}

impl Violation {
    fn sort_key(&self) -> (usize, usize, usize, u8) {
        match *self {
            Violation::Grading { i, j, k } => (i, j, k, 0),
            Violation::Unit { i } => (i, 0, 0, 1),
            Violation::AntiSymmetry { i, j } => (i, j, 0, 2),
            Violation::Associativity { i, j, k } => (i, j, k, 3),
            Violation::Jacobi { i, j, k } => (i, j, k, 4),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub kind: AlgebraKind,
    pub dim: usize,
    pub exhaustive: bool,
    pub triples_checked: usize,
    pub sample_seed: Option<u64>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Largest dimension validated over all basis triples.
pub const EXHAUSTIVE_VALIDATION_DIM: usize = 64;
/// Triples sampled above [`EXHAUSTIVE_VALIDATION_DIM`].
pub const SAMPLED_TRIPLES: usize = 20_000;

impl SuperAlgebra {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn even_dim(&self) -> usize {
        self.parity.iter().filter(|p| !p.is_odd()).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    pub fn is_all_even(&self) -> bool {
        self.odd_dim() == 0
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.parity[i].is_odd())
            .collect()
    }

    /// Structure-constant vector of `b_i b_j` (or `[b_i, b_j]`).
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn products(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Scalar)])> + '_ {
        let d = self.dim();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(move |(idx, t)| (idx / d, idx % d, t.as_slice()))
    }

    pub fn builder(&self) -> AlgebraBuilder {
        AlgebraBuilder {
            field: self.field,
            kind: self.kind,
            parity: self.parity.clone(),
            unit: self.unit,
            labels: self.labels.clone(),
            table: self.table.clone(),
        }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim(), i)
    }

    pub fn zero_element(&self) -> Element {
        Element::zero(self.field, self.dim())
    }

    /// Parity of a nonzero homogeneous element, `None` otherwise.
    pub fn element_parity(&self, e: &Element) -> Option<Parity> {
        let mut parities = e.support().map(|i| self.parity[i]);
        let first = parities.next()?;
        parities.all(|p| p == first).then_some(first)
    }

    /// Splits an element into its even and odd components.
    pub fn homogeneous_parts(&self, e: &Element) -> (Element, Element) {
        let mut even = self.zero_element();
        let mut odd = self.zero_element();
        for i in e.support() {
            let dst = if self.parity[i].is_odd() {
                &mut odd
            } else {
                &mut even
            };
            dst.coeffs[i] = e.coeffs[i].clone();
        }
        (even, odd)
    }

    fn check_element(&self, e: &Element) -> Result<()> {
        if e.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: e.dim(),
            });
        }
        if let Some(bad) = e.coeffs.iter().find(|c| c.field() != self.field) {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: bad.field(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        self.check_element(u)?;
        self.check_element(v)?;
        Ok(Element::new(self.mul_vec(&u.coeffs, &v.coeffs)))
    }

    pub(crate) fn mul_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (k, s) in self.product(i, j) {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    /// `b_i * v`.
    pub(crate) fn left_basis_mul(&self, i: usize, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (k, s) in self.product(i, j) {
                out[*k] = &out[*k] + &(vj * s);
            }
        }
        out
    }

    /// `v * b_j`.
    pub(crate) fn right_basis_mul(&self, v: &[Scalar], j: usize) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (k, s) in self.product(i, j) {
                out[*k] = &out[*k] + &(vi * s);
            }
        }
        out
    }

    fn sparse_dense(&self, terms: &[(usize, Scalar)]) -> Vector {
        let mut v = zero_vector(self.field, self.dim());
        for (k, c) in terms {
            v[*k] = c.clone();
        }
        v
    }

    /// The unit element: the stored unit index if any, otherwise the
    /// unique solution of `u b_j = b_j = b_j u`, when it exists.
    pub fn identity(&self) -> Option<Element> {
        if self.kind != AlgebraKind::Associative {
            return None;
        }
        if let Some(u) = self.unit {
            return Some(self.basis_element(u));
        }
        let d = self.dim();
        if d == 0 || !self.field.is_field() {
            return None;
        }
        // Unknowns u_0..u_{d-1} plus a homogenizing coordinate t:
        // sum_i u_i (b_i b_j)_k - t [k == j] = 0, likewise on the right.
        let mut rows = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for side in 0..2 {
                let mut eqs = vec![zero_vector(self.field, d + 1); d];
                for i in 0..d {
                    let prod = if side == 0 {
                        self.product(i, j)
                    } else {
                        self.product(j, i)
                    };
                    for (k, c) in prod {
                        eqs[*k][i] = c.clone();
                    }
                }
                eqs[j][d] = -&self.field.one();
                rows.extend(eqs);
            }
        }
        let sol = solve_homogeneous(self.field, d + 1, rows).ok()?;
        let v = sol.basis().iter().find(|v| !v[d].is_zero())?;
        let t_inv = v[d].inv().ok()?;
        Some(Element::new(v[..d].iter().map(|x| x * &t_inv).collect()))
    }

    /// Checks grading consistency and the associative or Lie-super axioms on
    /// basis triples: all of them up to dimension 64, a seeded sample above.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with_seed(0)
    }

    pub fn validate_with_seed(&self, seed: u64) -> ValidationReport {
        let d = self.dim();
        let mut violations = Vec::new();
        for (i, j, terms) in self.products() {
            for (k, _) in terms {
                if self.parity[*k] != self.parity[i] + self.parity[j] {
                    violations.push(Violation::Grading { i, j, k: *k });
                }
            }
        }
        if let Some(u) = self.unit {
            for i in 0..d {
                let e = unit_vector(self.field, d, i);
                let left = self.sparse_dense(self.product(u, i));
                let right = self.sparse_dense(self.product(i, u));
                if left != e || right != e {
                    violations.push(Violation::Unit { i });
                }
            }
        }
        if self.kind == AlgebraKind::LieSuper {
            for i in 0..d {
                for j in 0..d {
                    if !self.antisymmetric_pair(i, j) {
                        violations.push(Violation::AntiSymmetry { i, j });
                    }
                }
            }
        }
        let exhaustive = d <= EXHAUSTIVE_VALIDATION_DIM;
        let triples: Vec<(usize, usize, usize)> = if exhaustive {
            (0..d)
                .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..SAMPLED_TRIPLES)
                .map(|_| {
                    (
                        rng.gen_range(0..d),
                        rng.gen_range(0..d),
                        rng.gen_range(0..d),
                    )
                })
                .collect()
        };
        let failures: Vec<Violation> = triples
            .par_iter()
            .filter_map(|&(i, j, k)| match self.kind {
                AlgebraKind::Associative => (!self.associative_triple(i, j, k))
                    .then_some(Violation::Associativity { i, j, k }),
                AlgebraKind::LieSuper => {
                    (!self.jacobi_triple(i, j, k)).then_some(Violation::Jacobi { i, j, k })
                }
            })
            .collect();
        violations.extend(failures);
        violations.sort_by_key(Violation::sort_key);
        violations.dedup();
        ValidationReport {
            kind: self.kind,
            dim: d,
            exhaustive,
            triples_checked: triples.len(),
            sample_seed: (!exhaustive).then_some(seed),
            violations,
        }
    }

    fn associative_triple(&self, i: usize, j: usize, k: usize) -> bool {
        let d = self.dim();
        let mut left = zero_vector(self.field, d);
        for (m, c) in self.product(i, j) {
            for (n, s) in self.product(*m, k) {
                left[*n] = &left[*n] + &(c * s);
            }
        }
        let mut right = zero_vector(self.field, d);
        for (m, c) in self.product(j, k) {
            for (n, s) in self.product(i, *m) {
                right[*n] = &right[*n] + &(c * s);
            }
        }
        left == right
    }

    fn antisymmetric_pair(&self, i: usize, j: usize) -> bool {
        let ij = self.sparse_dense(self.product(i, j));
        let mut ji = self.sparse_dense(self.product(j, i));
        let s = sign(self.field, !koszul_negative(self.parity[i], self.parity[j]));
        for x in ji.iter_mut() {
            *x = &*x * &s;
        }
        ij == ji
    }

    /// `[a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)} [b,[a,c]]`.
    fn jacobi_triple(&self, i: usize, j: usize, k: usize) -> bool {
        let d = self.dim();
        let mut lhs = zero_vector(self.field, d);
        for (m, c) in self.product(j, k) {
            for (n, s) in self.product(i, *m) {
                lhs[*n] = &lhs[*n] + &(c * s);
            }
        }
        let mut rhs = zero_vector(self.field, d);
        for (m, c) in self.product(i, j) {
            for (n, s) in self.product(*m, k) {
                rhs[*n] = &rhs[*n] + &(c * s);
            }
        }
        let sgn = sign(self.field, koszul_negative(self.parity[i], self.parity[j]));
        for (m, c) in self.product(i, k) {
            let cs = c * &sgn;
            for (n, s) in self.product(j, *m) {
                rhs[*n] = &rhs[*n] + &(&cs * s);
            }
        }
        lhs == rhs
    }

    /// First `(i, j, k)` with a nonzero constant whose parity is not additive
    /// under `parity`.
    fn grading_violation(&self, parity: &[Parity]) -> Option<(usize, usize, usize)> {
        self.products().find_map(|(i, j, terms)| {
            terms
                .iter()
                .find(|(k, _)| parity[*k] != parity[i] + parity[j])
                .map(|(k, _)| (i, j, *k))
        })
    }

    /// Same structure constants with a new parity vector.
    pub fn regrade(&self, parity: Vec<Parity>) -> Result<SuperAlgebra> {
        if parity.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: parity.len(),
            });
        }
        if let Some((i, j, k)) = self.grading_violation(&parity) {
            return Err(Error::GradingViolation { i, j, k });
        }
        let mut out = self.clone();
        out.parity = parity;
        Ok(out)
    }

    /// The underlying ungraded algebra (every basis element even).
    pub fn forget_grading(&self) -> SuperAlgebra {
        let mut out = self.clone();
        out.parity = vec![Parity::Even; self.dim()];
        out
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<SuperAlgebra> {
        let mut b = self.builder();
        b.labels = labels;
        b.build()
    }

    /// Dense matrix of `v -> b_i v` (columns indexed by input basis).
    pub fn left_mult_matrix(&self, i: usize) -> Vec<Vector> {
        self.operator_matrix(|j| self.product(i, j))
    }

    /// Dense matrix of `v -> v b_i`.
    pub fn right_mult_matrix(&self, i: usize) -> Vec<Vector> {
        self.operator_matrix(|j| self.product(j, i))
    }

    fn operator_matrix<'a, F>(&'a self, column: F) -> Vec<Vector>
    where
        F: Fn(usize) -> &'a [(usize, Scalar)],
    {
        let d = self.dim();
        let mut m = vec![zero_vector(self.field, d); d];
        for j in 0..d {
            for (k, c) in column(j) {
                m[*k][j] = c.clone();
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn parity_addition() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Even + Parity::Odd, Parity::Odd);
    }

    #[test]
    fn corrupted_matrix_algebra_is_reported() {
        let mat2 = construct::mat(FieldSpec::Rationals, 2).unwrap();
        assert!(mat2.validate().is_valid());
        let mut b = mat2.builder();
        // E12 E21 = E11; flip its sign.
        let f = FieldSpec::Rationals;
        b.set_product(1, 2, vec![(0, f.from_i64(-1))]);
        let bad = b.build().unwrap();
        let report = bad.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Associativity { .. })));
    }

    #[test]
    fn identity_of_matrix_units() {
        let f = FieldSpec::Rationals;
        let mat2 = construct::mat(f, 2).unwrap();
        let one = mat2.identity().unwrap();
        let expected: Vector = [1, 0, 0, 1].iter().map(|&x| f.from_i64(x)).collect();
        assert_eq!(one.coeffs, expected);
    }

    #[test]
    fn multiply_rejects_foreign_field() {
        let mat2 = construct::mat(FieldSpec::Rationals, 2).unwrap();
        let u = Element::zero(FieldSpec::PrimeField(5), 4);
        assert!(matches!(
            mat2.multiply(&u, &u),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn regrade_rejects_lone_odd_matrix_unit() {
        let mat2 = construct::mat(FieldSpec::Rationals, 2).unwrap();
        // With only E12 odd, E12 E21 = E11 has parity odd + even on the
        // left and even on the right.
        let only_e12 = vec![Parity::Even, Parity::Odd, Parity::Even, Parity::Even];
        assert_eq!(
            mat2.regrade(only_e12).unwrap_err(),
            Error::GradingViolation { i: 1, j: 2, k: 0 }
        );
        let both = vec![Parity::Even, Parity::Odd, Parity::Odd, Parity::Even];
        assert!(mat2.regrade(both).unwrap().validate().is_valid());
    }
}
