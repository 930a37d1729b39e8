//! Dunkl operators of the rational Calogero model on polynomials, and the
//! Losev simplicity predicate for `Gamma = S_n`.

pub mod operator;
pub mod poly;
pub mod survey;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

pub use operator::{Atom, DunklContext, OperatorExpr};
pub use poly::{monomials_up_to, Exponents, XPolynomial};

use crate::error::{Error, Result};
use crate::scalar::NuPoly;

/// Failures kept verbatim in a report; the rest are only counted.
const RECORDED_FAILURES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorFailure {
    pub left: OperatorExpr,
    pub right: OperatorExpr,
    pub monomial: Exponents,
    pub value: XPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorReport {
    pub n: usize,
    pub dmax: u32,
    pub pairs: usize,
    pub monomials: usize,
    pub identities_checked: usize,
    pub nonzero: usize,
    pub all_zero: bool,
    pub failures: Vec<CommutatorFailure>,
}

/// Evaluates `[a, b]` on every monomial of degree at most `dmax`.
pub fn commutator_sweep(
    ctx: &DunklContext,
    pairs: &[(OperatorExpr, OperatorExpr)],
    dmax: u32,
) -> Result<CommutatorReport> {
    let monomials = monomials_up_to(ctx.n, dmax);
    let jobs: Vec<(usize, &Exponents)> = (0..pairs.len())
        .flat_map(|p| monomials.iter().map(move |m| (p, m)))
        .collect();
    let results: Vec<Result<Option<CommutatorFailure>>> = jobs
        .par_iter()
        .map(|&(p, m)| {
            let (a, b) = &pairs[p];
            let f = XPolynomial::monomial(ctx.n, m.clone(), NuPoly::one());
            let value = ctx.apply(&OperatorExpr::commutator(a, b), &f)?;
            Ok((!value.is_zero()).then(|| CommutatorFailure {
                left: a.clone(),
                right: b.clone(),
                monomial: m.clone(),
                value,
            }))
        })
        .collect();
    let mut failures = Vec::new();
    let mut nonzero = 0;
    for r in results {
        if let Some(f) = r? {
            nonzero += 1;
            if failures.len() < RECORDED_FAILURES {
                failures.push(f);
            }
        }
    }
    Ok(CommutatorReport {
        n: ctx.n,
        dmax,
        pairs: pairs.len(),
        monomials: monomials.len(),
        identities_checked: jobs.len(),
        nonzero,
        all_zero: nonzero == 0,
        failures,
    })
}

/// `[D_i, D_j] = 0` for all `i < j`, identically in `nu`.
pub fn check_dunkl_commutativity(n: usize, dmax: u32) -> Result<CommutatorReport> {
    if n < 2 || dmax < 1 {
        return Err(Error::InvalidInput("need N >= 2 and dmax >= 1".into()));
    }
    let pairs: Vec<_> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                OperatorExpr::atom(Atom::Dunkl(i)),
                OperatorExpr::atom(Atom::Dunkl(j)),
            )
        })
        .collect();
    commutator_sweep(&DunklContext::formal(n), &pairs, dmax)
}

/// `[D_1, x_1]` over the same monomials; expected to be nonzero.
pub fn negative_control(n: usize, dmax: u32) -> Result<CommutatorReport> {
    let pair = (
        OperatorExpr::atom(Atom::Dunkl(1)),
        OperatorExpr::atom(Atom::Mult(1)),
    );
    commutator_sweep(&DunklContext::formal(n), &[pair], dmax)
}

/// Monomial symmetric polynomials `m_lambda` for partitions with at most
/// `n` parts and weight at most `dmax`.
pub fn symmetric_monomials(n: usize, dmax: u32) -> Vec<XPolynomial> {
    monomials_up_to(n, dmax)
        .into_iter()
        .filter(|e| e.windows(2).all(|w| w[0] >= w[1]))
        .map(|lambda| {
            let mut orbit = BTreeSet::new();
            permutations(&lambda, &mut orbit);
            XPolynomial::from_terms(n, orbit.into_iter().map(|e| (e, NuPoly::one())))
                .expect("exponent lengths match")
        })
        .collect()
}

fn permutations(e: &[u32], out: &mut BTreeSet<Exponents>) {
    let mut cur = e.to_vec();
    cur.sort_unstable();
    loop {
        out.insert(cur.clone());
        // Next lexicographic permutation.
        let Some(i) = (0..cur.len().saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return;
        };
        let j = (i + 1..cur.len())
            .rev()
            .find(|&j| cur[j] > cur[i])
            .expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonianComparison {
    pub input: XPolynomial,
    pub anticommutator_form: XPolynomial,
    pub differential_form: XPolynomial,
    /// anticommutator form minus differential form.
    pub difference: XPolynomial,
    pub equal: bool,
    pub negatives: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonianComparisonReport {
    pub n: usize,
    pub dmax: u32,
    pub inputs: usize,
    pub equal: usize,
    pub negatives: usize,
    pub entries: Vec<HamiltonianComparison>,
}

/// Evaluates both displayed forms of the Hamiltonian on symmetric
/// monomials and records how they differ. Nothing is asserted.
pub fn compare_hamiltonians(n: usize, dmax: u32) -> Result<HamiltonianComparisonReport> {
    if n < 1 {
        return Err(Error::InvalidInput("need N >= 1".into()));
    }
    let ctx = DunklContext::formal(n);
    let entries = symmetric_monomials(n, dmax)
        .into_par_iter()
        .map(|f| {
            let a = ctx.hamiltonian_apply(&f)?;
            let d = ctx.hamiltonian_differential(&f)?;
            let difference = a.sub(&d);
            Ok(HamiltonianComparison {
                equal: difference.is_zero(),
                negatives: a.add(&d).is_zero(),
                input: f,
                anticommutator_form: a,
                differential_form: d,
                difference,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HamiltonianComparisonReport {
        n,
        dmax,
        inputs: entries.len(),
        equal: entries.iter().filter(|e| e.equal).count(),
        negatives: entries.iter().filter(|e| e.negatives).count(),
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LosevResult {
    pub c: String,
    pub n: u64,
    pub q: String,
    pub m: String,
    pub simple: bool,
}

/// `H_{1,c}` for `S_n` is simple unless `c = q/m` in lowest terms with
/// `1 < m <= n`.
pub fn losev_simple(c: &BigRational, n: u64) -> Result<LosevResult> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "n must be at least 2, got {n}"
        )));
    }
    // BigRational keeps lowest terms with a positive denominator.
    let m = c.denom();
    let simple = m.is_one() || *m > BigInt::from(n);
    Ok(LosevResult {
        c: c.to_string(),
        n,
        q: c.numer().to_string(),
        m: m.to_string(),
        simple,
    })
}
