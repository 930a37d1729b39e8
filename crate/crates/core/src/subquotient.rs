//! Subalgebras and quotients carried by explicit bases.

use crate::algebra::{AlgebraBuilder, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};
use crate::scalar::Scalar;

fn combo_label(coeffs: &[Scalar], labels: &[String], fallback: String) -> String {
    let terms: Vec<(usize, &Scalar)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    if terms.is_empty() || terms.len() > 3 {
        return fallback;
    }
    let mut out = String::new();
    for (n, (k, c)) in terms.iter().enumerate() {
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if n > 0 || neg {
            out.push(if neg { '-' } else { '+' });
        }
        if !c.is_one() && body != "1" {
            out.push_str(&body);
            out.push('*');
        }
        out.push_str(&labels[*k]);
    }
    out
}

fn check_ambient(a: &SuperAlgebra, w: &Subspace) -> Result<()> {
    if w.ambient_dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: w.ambient_dim(),
        });
    }
    if w.field() != a.field() {
        return Err(Error::FieldMismatch {
            left: a.field(),
            right: w.field(),
        });
    }
    Ok(())
}

fn row_parities(a: &SuperAlgebra, w: &Subspace) -> Result<Vec<Parity>> {
    w.basis()
        .iter()
        .enumerate()
        .map(|(r, row)| {
            a.element_parity(&crate::algebra::Element::new(row.clone()))
                .ok_or_else(|| Error::InvalidInput(format!("basis row {r} is not homogeneous")))
        })
        .collect()
}

/// The subalgebra on a graded, product-closed subspace; its basis is the
/// subspace's reduced row-echelon basis.
pub fn subalgebra(a: &SuperAlgebra, w: &Subspace) -> Result<SuperAlgebra> {
    check_ambient(a, w)?;
    let parity = row_parities(a, w)?;
    let rows = w.basis();
    let labels = rows
        .iter()
        .enumerate()
        .map(|(r, row)| combo_label(row, a.labels(), format!("w{r}")))
        .collect();
    let mut b = AlgebraBuilder::new(a.field(), a.kind(), parity).labels(labels);
    for (r, u) in rows.iter().enumerate() {
        for (s, v) in rows.iter().enumerate() {
            let prod = a.mul_vec(u, v);
            let coords = w.coordinates(&prod).ok_or_else(|| {
                Error::NotClosed(format!(
                    "product of basis rows {r} and {s} leaves the subspace"
                ))
            })?;
            b.set_dense(r, s, &coords);
        }
    }
    if let Some(one) = a.identity() {
        if let Some(coords) = w.coordinates(&one.coeffs) {
            let mut support = coords.iter().enumerate().filter(|(_, c)| !c.is_zero());
            if let (Some((u, c)), None) = (support.next(), support.next()) {
                if c.is_one() {
                    b = b.unit(Some(u));
                }
            }
        }
    }
    b.build()
}

/// First `(basis index, row)` whose product leaves `w`, checking both
/// `b_j w` and `w b_j`.
pub fn ideal_violation(a: &SuperAlgebra, w: &Subspace) -> Option<(usize, usize)> {
    for (r, row) in w.basis().iter().enumerate() {
        for j in 0..a.dim() {
            if !w.contains_vector(&a.left_basis_mul(j, row))
                || !w.contains_vector(&a.right_basis_mul(row, j))
            {
                return Some((j, r));
            }
        }
    }
    None
}

pub fn is_graded_ideal(a: &SuperAlgebra, w: &Subspace) -> bool {
    w.ambient_dim() == a.dim() && row_parities(a, w).is_ok() && ideal_violation(a, w).is_none()
}

/// A quotient algebra with the coordinates chosen as its basis.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: SuperAlgebra,
    /// Ambient basis indices spanning the complement of the ideal.
    pub transversal: Vec<usize>,
}

impl Quotient {
    /// Image of an ambient vector in quotient coordinates.
    pub fn project(&self, ideal: &Subspace, v: &[Scalar]) -> Vector {
        let r = ideal.reduce(v);
        self.transversal.iter().map(|&t| r[t].clone()).collect()
    }
}

/// `a / ideal`, with the non-pivot coordinates of the ideal's echelon form
/// as transversal.
pub fn quotient(a: &SuperAlgebra, ideal: &Subspace) -> Result<Quotient> {
    check_ambient(a, ideal)?;
    row_parities(a, ideal)?;
    if let Some((j, r)) = ideal_violation(a, ideal) {
        return Err(Error::NotAnIdeal(format!(
            "multiplying row {r} by basis element {j} leaves the subspace"
        )));
    }
    let transversal = ideal.non_pivots();
    let parity = transversal.iter().map(|&t| a.parity(t)).collect();
    let labels = transversal.iter().map(|&t| a.labels()[t].clone()).collect();
    let mut b = AlgebraBuilder::new(a.field(), a.kind(), parity).labels(labels);
    for (x, &s) in transversal.iter().enumerate() {
        for (y, &t) in transversal.iter().enumerate() {
            let mut v = crate::linalg::zero_vector(a.field(), a.dim());
            for (k, c) in a.product(s, t) {
                v[*k] = c.clone();
            }
            let r = ideal.reduce(&v);
            let coords: Vector = transversal.iter().map(|&t| r[t].clone()).collect();
            b.set_dense(x, y, &coords);
        }
    }
    if let Some(u) = a.unit_index() {
        if let Some(pos) = transversal.iter().position(|&t| t == u) {
            b = b.unit(Some(pos));
        }
    }
    Ok(Quotient {
        algebra: b.build()?,
        transversal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::scalar::FieldSpec;

    #[test]
    fn diagonal_subalgebra_of_mat2() {
        let f = FieldSpec::Rationals;
        let mat2 = construct::mat(f, 2).unwrap();
        let diag = Subspace::span(
            f,
            4,
            [
                crate::linalg::unit_vector(f, 4, 0),
                crate::linalg::unit_vector(f, 4, 3),
            ],
        )
        .unwrap();
        let sub = subalgebra(&mat2, &diag).unwrap();
        assert_eq!(sub.dim(), 2);
        assert!(sub.validate().is_valid());
        assert_eq!(sub.labels(), ["E11", "E22"]);
    }

    #[test]
    fn non_closed_subspace_rejected() {
        let f = FieldSpec::Rationals;
        let mat2 = construct::mat(f, 2).unwrap();
        let w = Subspace::span(
            f,
            4,
            [
                crate::linalg::unit_vector(f, 4, 1),
                crate::linalg::unit_vector(f, 4, 2),
            ],
        )
        .unwrap();
        assert!(matches!(subalgebra(&mat2, &w), Err(Error::NotClosed(_))));
        assert!(matches!(quotient(&mat2, &w), Err(Error::NotAnIdeal(_))));
    }
}
