//! Centers and supercenters as solution spaces of linear systems.

use crate::algebra::{koszul_negative, AlgebraKind, Parity, SuperAlgebra};
use crate::error::Result;
use crate::linalg::{solve_homogeneous, zero_vector, Subspace, Vector};

/// Solutions `z` supported on `coords` of `z b_i - s(z, b_i) b_i z = 0` for
/// every basis element, where `s` is `-1` only when `super_sign` holds and
/// both `z` and `b_i` are odd. For Lie superalgebras the condition is
/// `[z, b_i] = 0`.
fn commutant_on(
    a: &SuperAlgebra,
    coords: &[usize],
    parity: Parity,
    super_sign: bool,
) -> Result<Subspace> {
    let field = a.field();
    let d = a.dim();
    let n = coords.len();
    let mut rows: Vec<Vector> = Vec::with_capacity(d * d);
    for i in 0..d {
        let negative = super_sign && koszul_negative(parity, a.parity(i));
        let mut eqs = vec![zero_vector(field, n); d];
        for (col, &j) in coords.iter().enumerate() {
            for (k, c) in a.product(j, i) {
                eqs[*k][col] = &eqs[*k][col] + c;
            }
            if a.kind() == AlgebraKind::Associative {
                for (k, c) in a.product(i, j) {
                    eqs[*k][col] = if negative {
                        &eqs[*k][col] + c
                    } else {
                        &eqs[*k][col] - c
                    };
                }
            }
        }
        rows.extend(eqs.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
    let local = solve_homogeneous(field, n, rows)?;
    Subspace::span(
        field,
        d,
        local.basis().iter().map(|sol| {
            let mut v = zero_vector(field, d);
            for (x, &j) in sol.iter().zip(coords) {
                v[j] = x.clone();
            }
            v
        }),
    )
}

fn all_coords(a: &SuperAlgebra) -> Vec<usize> {
    (0..a.dim()).collect()
}

fn parity_coords(a: &SuperAlgebra, p: Parity) -> Vec<usize> {
    (0..a.dim()).filter(|&i| a.parity(i) == p).collect()
}

/// `{z : z b = b z for all b}`; for a Lie superalgebra, `{z : [z, b] = 0}`.
pub fn center(a: &SuperAlgebra) -> Result<Subspace> {
    a.field().require_field()?;
    commutant_on(a, &all_coords(a), Parity::Even, false)
}

/// `{z : z b = (-1)^{p(z)p(b)} b z}`, solved separately on the even and odd
/// coordinates and summed. For a Lie superalgebra this is its center.
pub fn supercenter(a: &SuperAlgebra) -> Result<Subspace> {
    a.field().require_field()?;
    if a.kind() == AlgebraKind::LieSuper {
        return center(a);
    }
    let even = commutant_on(a, &parity_coords(a, Parity::Even), Parity::Even, true)?;
    let odd = commutant_on(a, &parity_coords(a, Parity::Odd), Parity::Odd, true)?;
    even.sum(&odd)
}

/// Restriction of a subspace to one parity's coordinates, intersected.
pub fn parity_part(a: &SuperAlgebra, w: &Subspace, p: Parity) -> Result<Subspace> {
    let coords = Subspace::span(
        a.field(),
        a.dim(),
        parity_coords(a, p)
            .into_iter()
            .map(|i| crate::linalg::unit_vector(a.field(), a.dim(), i)),
    )?;
    w.intersect(&coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{clifford, mat, mat_super, CliffordGrading};
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn center_of_matrix_algebra_is_scalars() {
        for n in 1..=3 {
            let m = mat(Q, n).unwrap();
            let z = center(&m).unwrap();
            assert_eq!(z.dim(), 1);
            assert!(z.contains_vector(&m.identity().unwrap().coeffs));
        }
    }

    #[test]
    fn supercenter_of_mat_super_1_1() {
        let m = mat_super(Q, 1, 1).unwrap();
        let z = supercenter(&m).unwrap();
        assert_eq!(z.dim(), 1);
        assert!(z.contains_vector(&m.identity().unwrap().coeffs));
    }

    #[test]
    fn supercenter_of_clifford_3_excludes_top_element() {
        let c = clifford(Q, 3, &Q.one(), CliffordGrading::Natural).unwrap();
        assert_eq!(supercenter(&c).unwrap().dim(), 1);
        // The ungraded center does contain x1x2x3.
        assert_eq!(center(&c).unwrap().dim(), 2);
    }
}
