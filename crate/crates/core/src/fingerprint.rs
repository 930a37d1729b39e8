//! Isomorphism invariants: equal fingerprints are necessary for isomorphism.

use serde::Serialize;

use crate::algebra::{AlgebraKind, SuperAlgebra};
use crate::center::{center, supercenter};
use crate::error::Result;
use crate::lie::{derived_subspace, lie_of, LieMode};
use crate::simplicity::{is_simple, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub kind: AlgebraKind,
    pub dim: usize,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub center_dim: usize,
    pub supercenter_dim: usize,
    /// Dimension of `[X, X]` for Lie input, of `[A, A]` under the
    /// supercommutator for associative input.
    pub derived_dim: usize,
    pub simplicity_verdict: Verdict,
}

pub fn fingerprint(a: &SuperAlgebra) -> Result<Fingerprint> {
    let derived_dim = match a.kind() {
        AlgebraKind::LieSuper => derived_subspace(a)?.dim(),
        AlgebraKind::Associative => derived_subspace(&lie_of(a, LieMode::Super)?)?.dim(),
    };
    Ok(Fingerprint {
        kind: a.kind(),
        dim: a.dim(),
        even_dim: a.even_dim(),
        odd_dim: a.odd_dim(),
        center_dim: center(a)?.dim(),
        supercenter_dim: supercenter(a)?.dim(),
        derived_dim,
        simplicity_verdict: is_simple(a)?.verdict,
    })
}
