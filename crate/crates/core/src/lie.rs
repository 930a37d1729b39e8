//! Commutator functors and the Herstein and Montgomery subquotients.

use serde::Serialize;

use crate::algebra::{koszul_negative, AlgebraBuilder, AlgebraKind, SuperAlgebra};
use crate::center::{center, supercenter};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};
use crate::subquotient::{quotient, subalgebra};

/// How `lie_of` forms the bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LieMode {
    /// `ab - ba`; the input must be all even.
    Plain,
    /// `ab - (-1)^{p(a)p(b)} ba`.
    Super,
}

/// `A^L` or `A^S`: same basis, bracket from the (super)commutator.
pub fn lie_of(a: &SuperAlgebra, mode: LieMode) -> Result<SuperAlgebra> {
    if a.kind() != AlgebraKind::Associative {
        return Err(Error::InvalidInput(
            "lie_of needs an associative algebra".into(),
        ));
    }
    if mode == LieMode::Plain {
        if let Some(&i) = a.odd_indices().first() {
            // An odd basis element cannot sit in an ordinary Lie algebra.
            return Err(Error::GradingViolation { i, j: i, k: i });
        }
    }
    let d = a.dim();
    let labels = a.labels().to_vec();
    let mut b =
        AlgebraBuilder::new(a.field(), AlgebraKind::LieSuper, a.parities().to_vec()).labels(labels);
    for i in 0..d {
        for j in 0..d {
            let anti = koszul_negative(a.parity(i), a.parity(j));
            let mut terms = a.product(i, j).to_vec();
            for (k, c) in a.product(j, i) {
                terms.push((*k, if anti { c.clone() } else { -c }));
            }
            b.set_product(i, j, terms);
        }
    }
    b.build()
}

/// `[L, L]` as a subspace of `L`.
pub fn derived_subspace(l: &SuperAlgebra) -> Result<Subspace> {
    let d = l.dim();
    let field = l.field();
    let vectors = l.products().map(|(_, _, terms)| {
        let mut v = crate::linalg::zero_vector(field, d);
        for (k, c) in terms {
            v[*k] = c.clone();
        }
        v
    });
    Subspace::span(field, d, vectors.collect::<Vec<Vector>>())
}

/// `L^(1)` together with its induced structure constants.
pub fn derived(l: &SuperAlgebra) -> Result<(Subspace, SuperAlgebra)> {
    let w = derived_subspace(l)?;
    let sub = subalgebra(l, &w)?;
    Ok((w, sub))
}

/// Output of the Herstein or Montgomery construction with its intermediate
/// dimensions.
#[derive(Debug, Clone)]
pub struct LieSubquotient {
    pub algebra: SuperAlgebra,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub intersection_dim: usize,
    /// The derived algebra lies inside the center, so the result is zero.
    pub degenerate: bool,
}

fn lie_subquotient(a: &SuperAlgebra, mode: LieMode) -> Result<LieSubquotient> {
    let l = lie_of(a, mode)?;
    let (w, derived_alg) = derived(&l)?;
    let z = match mode {
        LieMode::Plain => center(a)?,
        LieMode::Super => supercenter(a)?,
    };
    let meet = w.intersect(&z)?;
    let inner = w.relative(&meet)?;
    let q = quotient(&derived_alg, &inner)?;
    let degenerate = q.algebra.dim() == 0;
    Ok(LieSubquotient {
        algebra: q.algebra,
        derived_dim: w.dim(),
        center_dim: z.dim(),
        intersection_dim: meet.dim(),
        degenerate,
    })
}

/// `L(A) = (A^L)^(1) / ((A^L)^(1) ∩ Z)` for an all-even associative `A`.
pub fn herstein_l(a: &SuperAlgebra) -> Result<LieSubquotient> {
    lie_subquotient(a, LieMode::Plain)
}

/// `SL(A) = (A^S)^(1) / ((A^S)^(1) ∩ Z)` with `Z` the supercenter.
pub fn montgomery_sl(a: &SuperAlgebra) -> Result<LieSubquotient> {
    lie_subquotient(a, LieMode::Super)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{mat, mat_super};
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn gl2_bracket() {
        let gl2 = lie_of(&mat(Q, 2).unwrap(), LieMode::Plain).unwrap();
        // [E11, E12] = E12
        assert_eq!(gl2.product(0, 1), &[(1, Q.one())]);
        assert!(gl2.validate().is_valid());
    }

    #[test]
    fn odd_units_anticommute() {
        let l = lie_of(&mat_super(Q, 1, 1).unwrap(), LieMode::Super).unwrap();
        assert_eq!(l.product(1, 2), &[(0, Q.one()), (3, Q.one())]);
        assert!(l.validate().is_valid());
    }

    #[test]
    fn plain_mode_rejects_odd_part() {
        assert!(matches!(
            lie_of(&mat_super(Q, 1, 1).unwrap(), LieMode::Plain),
            Err(Error::GradingViolation { .. })
        ));
    }

    #[test]
    fn derived_of_gl2_is_sl2() {
        let gl2 = lie_of(&mat(Q, 2).unwrap(), LieMode::Plain).unwrap();
        let (w, sl2) = derived(&gl2).unwrap();
        assert_eq!(w.dim(), 3);
        assert!(sl2.validate().is_valid());
    }

    #[test]
    fn herstein_dimensions() {
        assert!(herstein_l(&mat(Q, 1).unwrap()).unwrap().degenerate);
        let l2 = herstein_l(&mat(Q, 2).unwrap()).unwrap();
        assert_eq!(l2.algebra.dim(), 3);
        assert_eq!(l2.intersection_dim, 0);
    }

    #[test]
    fn montgomery_mat_super_1_1_is_abelian() {
        let sl = montgomery_sl(&mat_super(Q, 1, 1).unwrap()).unwrap();
        assert_eq!(sl.algebra.dim(), 2);
        assert_eq!(sl.algebra.products().count(), 0);
    }
}
