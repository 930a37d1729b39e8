//! Queerification `A -> Q(A), q(A)`, the queer trace, and `sq`, `pq`, `psq`.

use serde::Serialize;

use crate::algebra::{AlgebraBuilder, AlgebraKind, Element, SuperAlgebra};
use crate::construct::mat;
use crate::error::{Error, Result};
use crate::lie::{lie_of, LieMode};
use crate::linalg::{unit_vector, Subspace, Vector};
use crate::scalar::{FieldSpec, Scalar};
use crate::subquotient::{quotient, subalgebra};

/// `A ⊗ D` where `D` has an odd generator `xi` with `xi^2 = 1`, using
/// `(a ⊗ d)(a' ⊗ d') = (-1)^{p(d)p(a')} aa' ⊗ dd'`. Index `x` is `b_x ⊗ 1`
/// and index `dim + x` is `Pi(b_x) = b_x ⊗ xi`.
pub fn queerify_assoc(a: &SuperAlgebra) -> Result<SuperAlgebra> {
    if a.kind() != AlgebraKind::Associative {
        return Err(Error::InvalidInput(
            "queerify_assoc needs an associative algebra".into(),
        ));
    }
    let d = a.dim();
    let parity = a
        .parities()
        .iter()
        .copied()
        .chain(a.parities().iter().map(|p| p.flip()))
        .collect();
    let labels = a
        .labels()
        .iter()
        .cloned()
        .chain(a.labels().iter().map(|l| format!("Pi({l})")))
        .collect();
    let mut b = AlgebraBuilder::new(a.field(), AlgebraKind::Associative, parity)
        .labels(labels)
        .unit(a.unit_index());
    for x in 0..d {
        for y in 0..d {
            let xy = a.product(x, y);
            let negated: Vec<(usize, Scalar)> = if a.parity(y).is_odd() {
                xy.iter().map(|(k, c)| (*k, -c)).collect()
            } else {
                xy.to_vec()
            };
            let shift =
                |terms: &[(usize, Scalar)]| terms.iter().map(|(k, c)| (d + k, c.clone())).collect();
            b.set_product(x, y, xy.to_vec());
            b.set_product(x, d + y, shift(xy));
            b.set_product(d + x, y, shift(&negated));
            b.set_product(d + x, d + y, negated);
        }
    }
    b.build()
}

/// `q(A)`, the supercommutator algebra of [`queerify_assoc`].
pub fn queerify_lie(a: &SuperAlgebra) -> Result<SuperAlgebra> {
    lie_of(&queerify_assoc(a)?, LieMode::Super)
}

/// A pair `(X, Y)` standing for `X + Pi(Y)` in `q(A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueerElement {
    pub x: Vector,
    pub y: Vector,
}

impl QueerElement {
    pub fn from_element(e: &Element) -> Result<Self> {
        if !e.dim().is_multiple_of(2) {
            return Err(Error::WrongAmbient(format!("odd dimension {}", e.dim())));
        }
        let (x, y) = e.coeffs.split_at(e.dim() / 2);
        Ok(QueerElement {
            x: x.to_vec(),
            y: y.to_vec(),
        })
    }

    pub fn to_element(&self) -> Element {
        Element::new(self.x.iter().chain(&self.y).cloned().collect())
    }
}

/// `q(Mat(n))` and its standard subquotients.
#[derive(Debug, Clone)]
pub struct QueerTower {
    pub n: usize,
    pub q: SuperAlgebra,
    /// `ker qtr` as a subspace of `q`.
    pub sq_space: Subspace,
    pub sq: SuperAlgebra,
    pub pq: SuperAlgebra,
    pub psq: SuperAlgebra,
}

/// Builds `q(Mat(n))`.
pub fn q_lie(field: FieldSpec, n: usize) -> Result<SuperAlgebra> {
    queerify_lie(&mat(field, n)?)
}

/// `tr Y` for `(X, Y)` in `q(Mat(n))`; rejects other ambients.
pub fn qtr(ambient: &SuperAlgebra, e: &Element) -> Result<Scalar> {
    let n = queer_matrix_size(ambient)?;
    if e.dim() != ambient.dim() {
        return Err(Error::DimensionMismatch {
            expected: ambient.dim(),
            actual: e.dim(),
        });
    }
    Ok(qtr_coeffs(ambient.field(), n, &e.coeffs))
}

fn qtr_coeffs(field: FieldSpec, n: usize, v: &[Scalar]) -> Scalar {
    let offset = n * n;
    (0..n).fold(field.zero(), |acc, i| &acc + &v[offset + i * n + i])
}

/// Recognizes `q(Mat(n))` by rebuilding it for the implied `n`.
fn queer_matrix_size(ambient: &SuperAlgebra) -> Result<usize> {
    let n = (1..).find(|n| 2 * n * n >= ambient.dim()).unwrap_or(0);
    if ambient.dim() == 0 || 2 * n * n != ambient.dim() || *ambient != q_lie(ambient.field(), n)? {
        return Err(Error::WrongAmbient(
            "qtr is defined on q(Mat(n)) as built by queerify_lie".into(),
        ));
    }
    Ok(n)
}

impl QueerTower {
    pub fn new(field: FieldSpec, n: usize) -> Result<Self> {
        field.require_field()?;
        let q = q_lie(field, n)?;
        let dim = q.dim();
        // Kernel of the functional sum_i y_ii.
        let functional: Vector = (0..dim)
            .map(|k| {
                if k >= n * n && (k - n * n).is_multiple_of(n + 1) {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect();
        let sq_space = crate::linalg::solve_homogeneous(field, dim, [functional])?;
        let sq = subalgebra(&q, &sq_space)?;
        let one_x: Vector = {
            let mut v = crate::linalg::zero_vector(field, dim);
            for i in 0..n {
                v[i * n + i] = field.one();
            }
            v
        };
        let scalars = Subspace::span(field, dim, [one_x.clone()])?;
        let pq = quotient(&q, &scalars)?.algebra;
        let scalars_in_sq = sq_space.relative(&scalars)?;
        let psq = quotient(&sq, &scalars_in_sq)?.algebra;
        Ok(QueerTower {
            n,
            q,
            sq_space,
            sq,
            pq,
            psq,
        })
    }

    pub fn qtr(&self, e: &Element) -> Scalar {
        qtr_coeffs(self.q.field(), self.n, &e.coeffs)
    }
}

/// `psq(n)` alone.
pub fn psq(field: FieldSpec, n: usize) -> Result<SuperAlgebra> {
    Ok(QueerTower::new(field, n)?.psq)
}

/// Unit vector helper for tests and callers addressing `(X, 0)` or `(0, Y)`
/// by matrix-unit position.
pub fn queer_basis(field: FieldSpec, n: usize, odd: bool, i: usize, j: usize) -> Element {
    let offset = if odd { n * n } else { 0 };
    Element::new(unit_vector(field, 2 * n * n, offset + i * n + j))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn queer_one_dimensional() {
        let k = mat(Q, 1).unwrap();
        let q = queerify_assoc(&k).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.product(1, 1), &[(0, Q.one())]);
        let ql = queerify_lie(&k).unwrap();
        // [Pi(1), Pi(1)] = 2
        assert_eq!(ql.product(1, 1), &[(0, Q.from_i64(2))]);
    }

    #[test]
    fn odd_bracket_of_e11() {
        let q2 = q_lie(Q, 2).unwrap();
        let y = queer_basis(Q, 2, true, 0, 0);
        let expected = queer_basis(Q, 2, false, 0, 0).scale(&Q.from_i64(2));
        assert_eq!(q2.multiply(&y, &y).unwrap(), expected);
    }

    #[test]
    fn qtr_values() {
        let q2 = q_lie(Q, 2).unwrap();
        assert_eq!(qtr(&q2, &queer_basis(Q, 2, true, 0, 0)).unwrap(), Q.one());
        assert!(qtr(&q2, &queer_basis(Q, 2, false, 0, 0)).unwrap().is_zero());
        let other = mat(Q, 2).unwrap();
        assert!(matches!(
            qtr(&other, &other.zero_element()),
            Err(Error::WrongAmbient(_))
        ));
    }

    #[test]
    fn tower_dimensions_n2() {
        let t = QueerTower::new(Q, 2).unwrap();
        assert_eq!(t.q.dim(), 8);
        assert_eq!(t.sq.dim(), 7);
        assert_eq!(t.pq.dim(), 7);
        assert_eq!(t.psq.dim(), 6);
        for alg in [&t.q, &t.sq, &t.pq, &t.psq] {
            assert!(alg.validate().is_valid());
        }
    }

    #[test]
    fn queer_element_round_trip() {
        let e = queer_basis(Q, 2, true, 1, 0);
        let qe = QueerElement::from_element(&e).unwrap();
        assert!(qe.x.iter().all(|c| c.is_zero()));
        assert_eq!(qe.to_element(), e);
    }
}
