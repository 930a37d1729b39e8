//! Exact elimination over `Q` and `F_p`, and subspaces in canonical
//! reduced row-echelon form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: FieldSpec, dim: usize) -> Vector {
    vec![field.zero(); dim]
}

pub fn unit_vector(field: FieldSpec, dim: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, dim);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `dst += c * src`, skipping zero entries of `src`.
pub fn axpy(dst: &mut [Scalar], c: &Scalar, src: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = &*d + &(c * s);
        }
    }
}

pub fn scale_vector(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Incremental Gaussian elimination. Each stored row is normalized to a
/// leading one and has zeros at the pivots of all rows inserted before it.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: FieldSpec,
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    pub fn new(field: FieldSpec, dim: usize) -> Result<Self> {
        field.require_field()?;
        Ok(Echelon {
            field,
            dim,
            rows: Vec::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Zeroes `v` at every stored pivot.
    pub fn reduce_in_place(&self, v: &mut [Scalar]) {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let c = -&v[*pivot];
                axpy(v, &c, row);
            }
        }
    }

    /// Inserts `v` if it is independent of the stored rows.
    pub fn insert(&mut self, mut v: Vector) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        self.reduce_in_place(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[pivot].inv()?;
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((pivot, v));
        Ok(true)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        is_zero_vector(&w)
    }

    /// Canonical reduced row-echelon form of the span.
    pub fn into_subspace(self) -> Subspace {
        let Echelon {
            field,
            dim,
            mut rows,
        } = self;
        rows.sort_by_key(|(p, _)| *p);
        for r in 0..rows.len() {
            let (pivot, row) = rows[r].clone();
            for (s, (_, other)) in rows.iter_mut().enumerate() {
                if s != r && !other[pivot].is_zero() {
                    let c = -&other[pivot];
                    axpy(other, &c, &row);
                }
            }
        }
        let pivots = rows.iter().map(|(p, _)| *p).collect();
        let basis = rows.into_iter().map(|(_, r)| r).collect();
        Subspace {
            field,
            ambient_dim: dim,
            basis,
            pivots,
        }
    }
}

/// Result of [`row_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    /// Reduced row-echelon form, same shape as the input (zero rows last).
    pub rref: Vec<Vector>,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub kernel: Subspace,
}

pub fn row_reduce(field: FieldSpec, ncols: usize, rows: &[Vector]) -> Result<RowReduction> {
    field.require_field()?;
    let mut ech = Echelon::new(field, ncols)?;
    for row in rows {
        check_field(field, row)?;
        ech.insert(row.clone())?;
    }
    let space = ech.into_subspace();
    let kernel = space.annihilator();
    let mut rref = space.basis.clone();
    rref.resize(rows.len().max(space.dim()), zero_vector(field, ncols));
    Ok(RowReduction {
        rank: space.dim(),
        pivots: space.pivots.clone(),
        rref,
        kernel,
    })
}

/// Solution space of the homogeneous system whose equations are `rows`.
/// Stops consuming equations once the solution space is zero.
pub fn solve_homogeneous<I>(field: FieldSpec, ncols: usize, rows: I) -> Result<Subspace>
where
    I: IntoIterator<Item = Vector>,
{
    let mut ech = Echelon::new(field, ncols)?;
    for row in rows {
        if ech.rank() == ncols {
            break;
        }
        ech.insert(row)?;
    }
    Ok(ech.into_subspace().annihilator())
}

fn check_field(field: FieldSpec, v: &[Scalar]) -> Result<()> {
    if let Some(bad) = v.iter().find(|x| x.field() != field) {
        return Err(Error::FieldMismatch {
            left: field,
            right: bad.field(),
        });
    }
    Ok(())
}

/// A linear subspace stored by its reduced row-echelon basis, so equal
/// subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subspace {
    #[serde(skip)]
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

/// Selector for [`subspace_combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Sum,
    Intersect,
    Contains,
    QuotientTransversal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Combined {
    Space(Subspace),
    Flag(bool),
    Transversal(Vec<Vector>),
}

/// `QuotientTransversal` completes a basis of `u` to one of `v`, which must contain `u`.
pub fn subspace_combine(op: CombineOp, u: &Subspace, v: &Subspace) -> Result<Combined> {
    Ok(match op {
        CombineOp::Sum => Combined::Space(u.sum(v)?),
        CombineOp::Intersect => Combined::Space(u.intersect(v)?),
        CombineOp::Contains => Combined::Flag(u.contains(v)?),
        CombineOp::QuotientTransversal => Combined::Transversal(u.quotient_transversal(Some(v))?),
    })
}

impl Subspace {
    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim: dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim: dim,
            basis: (0..dim).map(|i| unit_vector(field, dim, i)).collect(),
            pivots: (0..dim).collect(),
        }
    }

    pub fn span<I>(field: FieldSpec, dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut ech = Echelon::new(field, dim)?;
        for v in vectors {
            check_field(field, &v)?;
            ech.insert(v)?;
        }
        Ok(ech.into_subspace())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                actual: other.ambient_dim,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    /// Remainder of `v` modulo the subspace; zero at every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (pivot, row) in self.pivots.iter().zip(&self.basis) {
            if !w[*pivot].is_zero() {
                let c = -&w[*pivot];
                axpy(&mut w, &c, row);
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim && is_zero_vector(&self.reduce(v))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Inverse of [`Subspace::coordinates`].
    pub fn combine_basis(&self, coords: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.ambient_dim);
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(&mut out, c, row);
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Subspace::span(
            self.field,
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let (r, s) = (self.dim(), other.dim());
        // (c, d) with sum c_i u_i - sum d_j v_j = 0, one equation per coordinate.
        let equations = (0..self.ambient_dim).map(|k| {
            self.basis
                .iter()
                .map(|u| u[k].clone())
                .chain(other.basis.iter().map(|v| -&v[k]))
                .collect::<Vector>()
        });
        let relations = solve_homogeneous(self.field, r + s, equations)?;
        Subspace::span(
            self.field,
            self.ambient_dim,
            relations
                .basis
                .iter()
                .map(|rel| self.combine_basis(&rel[..r])),
        )
    }

    /// True when `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    /// Coordinate positions not used as pivots, in increasing order.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    /// Vectors completing a basis of `self` to the ambient space (unit
    /// vectors at the non-pivot columns), or to `superspace` if given.
    pub fn quotient_transversal(&self, superspace: Option<&Subspace>) -> Result<Vec<Vector>> {
        match superspace {
            None => Ok(self
                .non_pivots()
                .into_iter()
                .map(|i| unit_vector(self.field, self.ambient_dim, i))
                .collect()),
            Some(w) => {
                self.check_compatible(w)?;
                if !w.contains(self)? {
                    return Err(Error::InvalidInput(
                        "quotient transversal: subspace is not contained in the superspace".into(),
                    ));
                }
                let mut ech = Echelon::new(self.field, self.ambient_dim)?;
                for v in &self.basis {
                    ech.insert(v.clone())?;
                }
                let mut out = Vec::new();
                for v in &w.basis {
                    if ech.insert(v.clone())? {
                        out.push(v.clone());
                    }
                }
                Ok(out)
            }
        }
    }

    /// `{x : <x, row> = 0 for every basis row}`, the kernel of the matrix
    /// whose rows are this basis.
    pub fn annihilator(&self) -> Subspace {
        let n = self.ambient_dim;
        let free = self.non_pivots();
        let vectors = free.iter().map(|&f| {
            let mut v = unit_vector(self.field, n, f);
            for (pivot, row) in self.pivots.iter().zip(&self.basis) {
                v[*pivot] = -&row[f];
            }
            v
        });
        Subspace::span(self.field, n, vectors).expect("annihilator over a field")
    }

    /// Subspace of `self` given by coordinates relative to `self`'s basis.
    pub fn from_coordinates(&self, coords: &Subspace) -> Result<Subspace> {
        if coords.ambient_dim != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: coords.ambient_dim,
            });
        }
        Subspace::span(
            self.field,
            self.ambient_dim,
            coords.basis.iter().map(|c| self.combine_basis(c)),
        )
    }

    /// Re-expresses a subspace of `self` in `self`'s basis coordinates.
    pub fn relative(&self, inner: &Subspace) -> Result<Subspace> {
        self.check_compatible(inner)?;
        let coords: Option<Vec<Vector>> = inner.basis.iter().map(|v| self.coordinates(v)).collect();
        let coords = coords.ok_or_else(|| {
            Error::InvalidInput("relative: inner subspace is not contained".into())
        })?;
        Subspace::span(self.field, self.dim(), coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(xs: &[i64]) -> Vector {
        xs.iter()
            .map(|&x| FieldSpec::Rationals.from_i64(x))
            .collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let r = row_reduce(FieldSpec::Rationals, 2, &[qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel.dim(), 0);
    }

    #[test]
    fn proportional_rows() {
        let r = row_reduce(FieldSpec::Rationals, 2, &[qv(&[1, 2]), qv(&[2, 4])]).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.rref[0], qv(&[1, 2]));
        assert_eq!(r.rref[1], qv(&[0, 0]));
        let expected = Subspace::span(FieldSpec::Rationals, 2, [qv(&[-2, 1])]).unwrap();
        assert_eq!(r.kernel, expected);
    }

    #[test]
    fn full_rank_mod_three() {
        let f3 = FieldSpec::PrimeField(3);
        let rows: Vec<Vector> = [[1, 1], [1, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| f3.from_i64(x)).collect())
            .collect();
        let r = row_reduce(f3, 2, &rows).unwrap();
        assert_eq!(r.rank, 2);
        assert!(r.kernel.is_zero());
    }

    #[test]
    fn nu_polynomials_rejected() {
        assert_eq!(
            row_reduce(FieldSpec::NuPolynomials, 1, &[]).unwrap_err(),
            Error::UnsupportedField(FieldSpec::NuPolynomials)
        );
    }

    #[test]
    fn sum_and_intersection_of_axes() {
        let f = FieldSpec::Rationals;
        let u = Subspace::span(f, 2, [qv(&[1, 0])]).unwrap();
        let v = Subspace::span(f, 2, [qv(&[0, 1])]).unwrap();
        assert!(u.sum(&v).unwrap().is_full());
        assert!(u.intersect(&v).unwrap().is_zero());
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert!(u.contains(&u).unwrap());
    }

    #[test]
    fn ambient_mismatch() {
        let f = FieldSpec::Rationals;
        let u = Subspace::zero(f, 2);
        let v = Subspace::zero(f, 3);
        assert!(matches!(
            subspace_combine(CombineOp::Sum, &u, &v),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn transversal_within_superspace() {
        let f = FieldSpec::Rationals;
        let u = Subspace::span(f, 3, [qv(&[1, 1, 0])]).unwrap();
        let w = Subspace::span(f, 3, [qv(&[1, 0, 0]), qv(&[0, 1, 0])]).unwrap();
        let t = u.quotient_transversal(Some(&w)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(u.quotient_transversal(None).unwrap().len(), 2);
        assert!(Subspace::full(f, 3).quotient_transversal(Some(&u)).is_err());
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = FieldSpec::Rationals;
        let w = Subspace::span(f, 3, [qv(&[2, 4, 0]), qv(&[0, 3, 3])]).unwrap();
        let v = qv(&[2, 7, 3]);
        let c = w.coordinates(&v).unwrap();
        assert_eq!(w.combine_basis(&c), v);
        assert!(w.coordinates(&qv(&[0, 0, 1])).is_none());
    }
}
