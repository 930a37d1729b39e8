//! Simplicity by ideal spinning plus a Burnside envelope certificate.
//!
//! Spinning a vector closes it under multiplication (or bracket) by every
//! basis element; a proper closure is an ideal witness. If every basis
//! vector spins to the whole algebra, the unital associative envelope of
//! the multiplication operators (with the parity operator for
//! superalgebras) is computed; when it is all of `End(X)` there is no
//! proper graded invariant subspace, hence no proper graded ideal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraKind, Element, Parity, SuperAlgebra};
use crate::center::{center, supercenter};
use crate::error::{Error, Result};
use crate::linalg::{zero_vector, Echelon, Subspace, Vector};
use crate::modp::{envelope_dim, reduce_scalar, CERTIFICATE_PRIMES};
use crate::scalar::{FieldSpec, Scalar};
use crate::subquotient::ideal_violation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Simple,
    NotSimple,
    Inconclusive,
}

/// A proper ideal together with the vector that generated it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealWitness {
    pub dim: usize,
    pub subspace: Subspace,
    pub generator: Element,
    pub closure_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub envelope_dim: usize,
    pub ambient_sq: usize,
    /// Prime the rank was computed modulo; `None` for an exact computation.
    pub modulus: Option<u64>,
    /// `"random-pair"` or `"basis"`.
    pub generators: &'static str,
    pub parity_operator: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trials {
    pub seed: u64,
    pub random_spins: usize,
    pub coefficient_min: i64,
    pub coefficient_max: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub verdict: Verdict,
    /// Reason for a verdict decided without spinning.
    pub degenerate: Option<String>,
    pub witness: Option<IdealWitness>,
    pub certificate: Option<Certificate>,
    /// Every homogeneous basis vector spun to the whole algebra.
    pub basis_spins_full: bool,
    pub trials: Option<Trials>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplicityOptions {
    pub seed: u64,
    pub random_spins: usize,
    /// Exact envelope computation is attempted only up to this dimension
    /// when no certificate prime succeeds.
    pub exact_envelope_dim: usize,
}

impl Default for SimplicityOptions {
    fn default() -> Self {
        SimplicityOptions {
            seed: 0,
            random_spins: 64,
            exact_envelope_dim: 10,
        }
    }
}

const COEFF_MIN: i64 = -2;
const COEFF_MAX: i64 = 2;

fn products_of(a: &SuperAlgebra, j: usize, w: &[Scalar]) -> Vec<Vector> {
    match a.kind() {
        AlgebraKind::LieSuper => vec![a.left_basis_mul(j, w)],
        AlgebraKind::Associative => vec![a.left_basis_mul(j, w), a.right_basis_mul(w, j)],
    }
}

/// Closure of the homogeneous parts of `start` under the algebra's
/// operations; returns the ideal and the number of passes that added rank.
pub fn spin(a: &SuperAlgebra, start: &[Scalar]) -> Result<(Subspace, usize)> {
    a.field().require_field()?;
    let d = a.dim();
    let mut ech = Echelon::new(a.field(), d)?;
    let (even, odd) = a.homogeneous_parts(&Element::new(start.to_vec()));
    let mut layer = Vec::new();
    for part in [even.coeffs, odd.coeffs] {
        if ech.insert(part.clone())? {
            layer.push(part);
        }
    }
    let mut steps = 0;
    while !layer.is_empty() && ech.rank() < d {
        let mut next = Vec::new();
        'layer: for w in &layer {
            for j in 0..d {
                for p in products_of(a, j, w) {
                    if ech.insert(p.clone())? {
                        next.push(p);
                        if ech.rank() == d {
                            break 'layer;
                        }
                    }
                }
            }
        }
        if !next.is_empty() {
            steps += 1;
        }
        layer = next;
    }
    Ok((ech.into_subspace(), steps))
}

/// The ideal generated by `v`.
pub fn ideal_generated(a: &SuperAlgebra, v: &Element) -> Result<Subspace> {
    if v.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: v.dim(),
        });
    }
    Ok(spin(a, &v.coeffs)?.0)
}

/// Independent check that `w` is a proper, nonzero, graded ideal.
pub fn verify_witness(a: &SuperAlgebra, w: &Subspace) -> bool {
    w.dim() > 0
        && w.dim() < a.dim()
        && w.basis()
            .iter()
            .all(|r| a.element_parity(&Element::new(r.clone())).is_some())
        && ideal_violation(a, w).is_none()
}

fn witness_from(a: &SuperAlgebra, generator: Vector) -> Result<Option<IdealWitness>> {
    let (w, steps) = spin(a, &generator)?;
    if w.is_full() || w.is_zero() {
        return Ok(None);
    }
    if !verify_witness(a, &w) {
        return Err(Error::Internal(
            "spun subspace failed ideal re-verification".into(),
        ));
    }
    Ok(Some(IdealWitness {
        dim: w.dim(),
        subspace: w,
        generator: Element::new(generator),
        closure_steps: steps,
    }))
}

/// Operators whose envelope is computed: multiplication by each input
/// element (left and right in the associative case), plus parity.
fn operator_matrices(a: &SuperAlgebra, elements: &[Vector]) -> Vec<Vec<Scalar>> {
    let d = a.dim();
    let field = a.field();
    let mut ops = Vec::new();
    for x in elements {
        let mut sides = vec![true];
        if a.kind() == AlgebraKind::Associative {
            sides.push(false);
        }
        for left in sides {
            // Column j is x b_j (or b_j x).
            let mut m = zero_vector(field, d * d);
            for j in 0..d {
                let col = if left {
                    a.mul_vec(x, &crate::linalg::unit_vector(field, d, j))
                } else {
                    a.mul_vec(&crate::linalg::unit_vector(field, d, j), x)
                };
                for (k, c) in col.into_iter().enumerate() {
                    m[k * d + j] = c;
                }
            }
            ops.push(m);
        }
    }
    if a.odd_dim() > 0 {
        let mut m = zero_vector(field, d * d);
        for i in 0..d {
            m[i * d + i] = field.from_i64(if a.parity(i).is_odd() { -1 } else { 1 });
        }
        ops.push(m);
    }
    ops
}

fn reduce_all(ops: &[Vec<Scalar>], p: u64) -> Option<Vec<Vec<u64>>> {
    ops.iter()
        .map(|m| m.iter().map(|s| reduce_scalar(s, p)).collect())
        .collect()
}

/// Exact envelope dimension over the algebra's own field.
fn exact_envelope_dim(
    field: FieldSpec,
    d: usize,
    ops: &[Vec<Scalar>],
    cap: usize,
) -> Result<usize> {
    let full = d * d;
    let mut ech = Echelon::new(field, full)?;
    let mut identity = zero_vector(field, full);
    for i in 0..d {
        identity[i * d + i] = field.one();
    }
    ech.insert(identity.clone())?;
    let mut queue = std::collections::VecDeque::from([identity]);
    let mut insertions = 1;
    while let Some(m) = queue.pop_front() {
        for g in ops {
            if ech.rank() == full || insertions >= cap {
                return Ok(ech.rank());
            }
            let mut prod = zero_vector(field, full);
            for i in 0..d {
                for k in 0..d {
                    let gik = &g[i * d + k];
                    if gik.is_zero() {
                        continue;
                    }
                    for j in 0..d {
                        let mkj = &m[k * d + j];
                        if !mkj.is_zero() {
                            prod[i * d + j] = &prod[i * d + j] + &(gik * mkj);
                        }
                    }
                }
            }
            if ech.insert(prod.clone())? {
                insertions += 1;
                queue.push_back(prod);
            }
        }
    }
    Ok(ech.rank())
}

fn envelope_certificate(
    a: &SuperAlgebra,
    elements: &[Vector],
    generators: &'static str,
    opts: &SimplicityOptions,
) -> Result<(usize, Option<Certificate>)> {
    let d = a.dim();
    let full = d * d;
    let cap = full + 8;
    let ops = operator_matrices(a, elements);
    let parity_operator = a.odd_dim() > 0;
    let certificate = |envelope_dim, modulus| Certificate {
        envelope_dim,
        ambient_sq: full,
        modulus,
        generators,
        parity_operator,
    };
    let mut best = 0;
    let primes: Vec<u64> = match a.field() {
        FieldSpec::PrimeField(p) => vec![p],
        _ => CERTIFICATE_PRIMES.to_vec(),
    };
    for p in primes {
        let Some(reduced) = reduce_all(&ops, p) else {
            continue;
        };
        let dim = envelope_dim(p, d, &reduced, cap);
        if dim == full {
            let modulus = match a.field() {
                FieldSpec::PrimeField(_) => None,
                _ => Some(p),
            };
            return Ok((dim, Some(certificate(dim, modulus))));
        }
        best = best.max(dim);
        if matches!(a.field(), FieldSpec::PrimeField(_)) {
            return Ok((best, None));
        }
    }
    if d <= opts.exact_envelope_dim {
        let dim = exact_envelope_dim(a.field(), d, &ops, cap)?;
        if dim == full {
            return Ok((dim, Some(certificate(dim, None))));
        }
        best = best.max(dim);
    }
    Ok((best, None))
}

fn random_vector(rng: &mut ChaCha8Rng, field: FieldSpec, coords: &[usize], d: usize) -> Vector {
    let mut v = zero_vector(field, d);
    for &i in coords {
        v[i] = field.from_i64(rng.gen_range(COEFF_MIN..=COEFF_MAX));
    }
    v
}

fn degenerate(reason: &str, witness: Option<IdealWitness>) -> SimplicityVerdict {
    SimplicityVerdict {
        verdict: Verdict::NotSimple,
        degenerate: Some(reason.to_string()),
        witness,
        certificate: None,
        basis_spins_full: false,
        trials: None,
    }
}

pub fn is_simple(a: &SuperAlgebra) -> Result<SimplicityVerdict> {
    is_simple_with(a, &SimplicityOptions::default())
}

pub fn is_simple_with(a: &SuperAlgebra, opts: &SimplicityOptions) -> Result<SimplicityVerdict> {
    a.field().require_field()?;
    let d = a.dim();
    let field = a.field();
    if d == 0 {
        return Ok(degenerate("zero algebra", None));
    }
    if a.products().next().is_none() {
        let witness = if d >= 2 {
            let w = Subspace::span(field, d, [crate::linalg::unit_vector(field, d, 0)])?;
            Some(IdealWitness {
                dim: 1,
                subspace: w,
                generator: a.basis_element(0),
                closure_steps: 0,
            })
        } else {
            None
        };
        return Ok(degenerate("product identically zero", witness));
    }
    if a.kind() == AlgebraKind::LieSuper && d == 1 {
        return Ok(degenerate("one-dimensional Lie superalgebra", None));
    }

    // (b) every basis vector; lowest index with a proper closure wins.
    let spins: Vec<Result<Option<IdealWitness>>> = (0..d)
        .into_par_iter()
        .map(|i| witness_from(a, crate::linalg::unit_vector(field, d, i)))
        .collect();
    for s in spins {
        if let Some(w) = s? {
            return Ok(SimplicityVerdict {
                verdict: Verdict::NotSimple,
                degenerate: None,
                witness: Some(w),
                certificate: None,
                basis_spins_full: false,
                trials: None,
            });
        }
    }

    // Center and derived algebra of a Lie superalgebra are ideals; their
    // vectors catch ideals that miss every basis vector.
    if a.kind() == AlgebraKind::LieSuper {
        let mut structural = center(a)?.basis().to_vec();
        structural.extend(crate::lie::derived_subspace(a)?.basis().iter().cloned());
        let spun: Vec<Result<Option<IdealWitness>>> = structural
            .into_par_iter()
            .map(|v| witness_from(a, v))
            .collect();
        for s in spun {
            if let Some(w) = s? {
                return Ok(SimplicityVerdict {
                    verdict: Verdict::NotSimple,
                    degenerate: None,
                    witness: Some(w),
                    certificate: None,
                    basis_spins_full: true,
                    trials: None,
                });
            }
        }
    }

    // (c) envelope from two random elements, then from the whole basis.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let all: Vec<usize> = (0..d).collect();
    let pair = vec![
        random_vector(&mut rng, field, &all, d),
        random_vector(&mut rng, field, &all, d),
    ];
    let (_, mut cert) = envelope_certificate(a, &pair, "random-pair", opts)?;
    if cert.is_none() {
        let basis: Vec<Vector> = (0..d)
            .map(|i| crate::linalg::unit_vector(field, d, i))
            .collect();
        cert = envelope_certificate(a, &basis, "basis", opts)?.1;
    }
    if let Some(c) = cert {
        return Ok(SimplicityVerdict {
            verdict: Verdict::Simple,
            degenerate: None,
            witness: None,
            certificate: Some(c),
            basis_spins_full: true,
            trials: None,
        });
    }

    // (d) seeded random homogeneous spins.
    let trials = Trials {
        seed: opts.seed,
        random_spins: opts.random_spins,
        coefficient_min: COEFF_MIN,
        coefficient_max: COEFF_MAX,
    };
    let even: Vec<usize> = (0..d).filter(|&i| a.parity(i) == Parity::Even).collect();
    let odd = a.odd_indices();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    let candidates: Vec<Vector> = (0..opts.random_spins)
        .map(|t| {
            let coords = if odd.is_empty() || (t % 2 == 0 && !even.is_empty()) {
                &even
            } else {
                &odd
            };
            random_vector(&mut rng, field, coords, d)
        })
        .collect();
    let spun: Vec<Result<Option<IdealWitness>>> = candidates
        .into_par_iter()
        .map(|v| witness_from(a, v))
        .collect();
    for s in spun {
        if let Some(w) = s? {
            return Ok(SimplicityVerdict {
                verdict: Verdict::NotSimple,
                degenerate: None,
                witness: Some(w),
                certificate: None,
                basis_spins_full: true,
                trials: Some(trials),
            });
        }
    }
    Ok(SimplicityVerdict {
        verdict: Verdict::Inconclusive,
        degenerate: None,
        witness: None,
        certificate: None,
        basis_spins_full: true,
        trials: Some(trials),
    })
}

/// Whether the center is measured ungraded or super.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterMode {
    Plain,
    Super,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralSimpleReport {
    pub central_simple: bool,
    pub mode: CenterMode,
    pub center_dim: usize,
    pub simplicity: SimplicityVerdict,
}

/// Simple with one-dimensional (super)center. The default mode is super
/// exactly when the algebra has an odd part.
pub fn is_central_simple(
    a: &SuperAlgebra,
    mode: Option<CenterMode>,
) -> Result<CentralSimpleReport> {
    if a.kind() != AlgebraKind::Associative {
        return Err(Error::InvalidInput(
            "central simplicity is for associative algebras".into(),
        ));
    }
    let mode = mode.unwrap_or(if a.odd_dim() > 0 {
        CenterMode::Super
    } else {
        CenterMode::Plain
    });
    let z = match mode {
        CenterMode::Plain => center(a)?,
        CenterMode::Super => supercenter(a)?,
    };
    let simplicity = is_simple(a)?;
    Ok(CentralSimpleReport {
        central_simple: simplicity.verdict == Verdict::Simple && z.dim() == 1,
        mode,
        center_dim: z.dim(),
        simplicity,
    })
}
