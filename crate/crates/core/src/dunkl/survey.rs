//! Ranks of spans of operator words in `a_i^alpha` and `K_ij`, as matrices
//! on a degree-truncated polynomial space at a fixed rational `nu`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use super::operator::{Atom, DunklContext};
use super::poly::{monomials_up_to, Exponents, XPolynomial};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::scalar::{FieldSpec, NuPoly, Scalar};

/// Default cap on `candidate words x matrix entries`.
pub const DEFAULT_SURVEY_BUDGET: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub word_len: usize,
    pub rank: usize,
    /// Words of exactly this length that raised the rank.
    pub new_independent: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub n: usize,
    pub word_len: usize,
    pub dmax: u32,
    pub nu: String,
    pub domain_degree: u32,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub atoms: Vec<String>,
    pub rows: Vec<SurveyRow>,
    pub note: &'static str,
}

/// An operator on the domain, stored as the images of domain monomials.
type OperatorImages = Vec<XPolynomial>;

fn generators(n: usize) -> Vec<Atom> {
    let mut atoms = Vec::new();
    for i in 1..=n {
        atoms.push(Atom::CreaAnn(i, 0));
        atoms.push(Atom::CreaAnn(i, 1));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            atoms.push(Atom::Exchange(i, j));
        }
    }
    atoms
}

fn flatten(images: &OperatorImages, index: &BTreeMap<Exponents, usize>) -> Result<Vec<Scalar>> {
    let rows = index.len();
    let q = FieldSpec::Rationals;
    let mut v = vec![q.zero(); images.len() * rows];
    for (col, img) in images.iter().enumerate() {
        for (e, c) in img.terms() {
            let row = *index
                .get(e)
                .ok_or_else(|| Error::Internal("operator image left the codomain".into()))?;
            // Coefficients are constants once nu is fixed.
            v[col * rows + row] = Scalar::Rational(c.coeff(0));
        }
    }
    Ok(v)
}

pub fn observables_span_survey(
    n: usize,
    word_len: usize,
    dmax: u32,
    nu: &BigRational,
    budget: u128,
) -> Result<SurveyReport> {
    if n < 1 || word_len as u32 > dmax {
        return Err(Error::InvalidInput(format!(
            "need N >= 1 and word_len <= dmax, got N = {n}, word_len = {word_len}, dmax = {dmax}"
        )));
    }
    let ctx = DunklContext::at(n, nu.clone());
    let domain_degree = dmax - word_len as u32;
    let domain = monomials_up_to(n, domain_degree);
    let codomain = monomials_up_to(n, dmax);
    let index: BTreeMap<Exponents, usize> = codomain
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let atoms = generators(n);
    let entries = (domain.len() * codomain.len()) as u128;
    // Worst case: every word of every length is a candidate.
    let candidates: u128 = (0..=word_len as u32)
        .map(|l| (atoms.len() as u128).pow(l))
        .sum();
    if candidates.saturating_mul(entries) > budget {
        return Err(Error::BudgetExceeded {
            needed: candidates.saturating_mul(entries),
            budget,
        });
    }
    let identity: OperatorImages = domain
        .iter()
        .map(|e| XPolynomial::monomial(n, e.clone(), NuPoly::one()))
        .collect();
    let mut ech = Echelon::new(FieldSpec::Rationals, domain.len() * codomain.len())?;
    ech.insert(flatten(&identity, &index)?)?;
    let mut rows = vec![SurveyRow {
        word_len: 0,
        rank: ech.rank(),
        new_independent: ech.rank(),
    }];
    // Words of length l are atom ∘ (independent words of length l - 1):
    // dependent words only contribute dependent extensions.
    let mut frontier = vec![identity];
    for l in 1..=word_len {
        let mut next = Vec::new();
        for op in &frontier {
            for &atom in &atoms {
                let images = op
                    .iter()
                    .map(|f| ctx.apply_atom(atom, f))
                    .collect::<Result<OperatorImages>>()?;
                if ech.insert(flatten(&images, &index)?)? {
                    next.push(images);
                }
            }
        }
        rows.push(SurveyRow {
            word_len: l,
            rank: ech.rank(),
            new_independent: next.len(),
        });
        frontier = next;
    }
    Ok(SurveyReport {
        n,
        word_len,
        dmax,
        nu: nu.to_string(),
        domain_degree,
        domain_dim: domain.len(),
        codomain_dim: codomain.len(),
        atoms: atoms.iter().map(|a| a.to_string()).collect(),
        rows,
        note: "ranks over Q at the fixed nu; domain truncated to degree dmax - word_len",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_only_at_length_zero() {
        let r = observables_span_survey(
            2,
            0,
            3,
            &BigRational::new(1.into(), 5.into()),
            DEFAULT_SURVEY_BUDGET,
        )
        .unwrap();
        assert_eq!(
            r.rows,
            vec![SurveyRow {
                word_len: 0,
                rank: 1,
                new_independent: 1
            }]
        );
    }

    #[test]
    fn ranks_are_monotone() {
        let r = observables_span_survey(
            2,
            2,
            4,
            &BigRational::new(1.into(), 5.into()),
            DEFAULT_SURVEY_BUDGET,
        )
        .unwrap();
        assert_eq!(r.rows[1].rank, 6);
        assert!(r.rows.windows(2).all(|w| w[1].rank >= w[0].rank));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            observables_span_survey(3, 4, 8, &BigRational::new(1.into(), 5.into()), 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
