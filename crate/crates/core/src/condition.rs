//! Search for odd `u` with `u^2` in the supercenter but `u` outside it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraKind, Element, SuperAlgebra};
use crate::center::supercenter;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, zero_vector, Subspace, Vector};
use crate::scalar::FieldSpec;

/// Default cap on `p^(odd dim)` for exhaustive enumeration.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Coefficient box for random samples.
pub const SAMPLE_COEFF: i64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum ConditionStrategy {
    /// Every odd vector up to scalars; the algebra must be over `F_p`.
    Exhaustive { budget: u128 },
    /// Odd basis vectors, their pairwise sums, then `count` seeded random
    /// odd vectors with coefficients in `[-3, 3]`.
    Sample { count: usize, seed: u64 },
}

/// Which `u` count as violations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionReading {
    /// `u^2 ∈ Z`, `u^2 != 0`, `u ∉ Z`. Odd nilpotents are not counted.
    #[default]
    NonzeroSquare,
    /// `u^2 ∈ Z`, `u ∉ Z`, so any odd `u` with `u^2 = 0` outside `Z` counts.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConditionVerdict {
    Violated,
    NoViolationFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionWitness {
    pub u: Element,
    pub u_squared: Element,
    /// `u` written in basis labels.
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub exhaustive: bool,
    /// Vectors examined (projective points when exhaustive).
    pub candidates: u128,
    pub odd_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub verdict: ConditionVerdict,
    pub reading: ConditionReading,
    pub strategy: ConditionStrategy,
    pub supercenter_dim: usize,
    pub witness: Option<ConditionWitness>,
    pub coverage: Coverage,
}

struct Checker<'a> {
    a: &'a SuperAlgebra,
    z: Subspace,
    reading: ConditionReading,
    odd: Vec<usize>,
}

impl Checker<'_> {
    fn embed(&self, coords: &[crate::scalar::Scalar]) -> Vector {
        let mut u = zero_vector(self.a.field(), self.a.dim());
        for (c, &i) in coords.iter().zip(&self.odd) {
            u[i] = c.clone();
        }
        u
    }

    /// `Some(u^2)` when `u` violates the condition under the chosen reading.
    fn violation(&self, u: &[crate::scalar::Scalar]) -> Option<Vector> {
        if is_zero_vector(u) || self.z.contains_vector(u) {
            return None;
        }
        let sq = self.a.mul_vec(u, u);
        if self.reading == ConditionReading::NonzeroSquare && is_zero_vector(&sq) {
            return None;
        }
        self.z.contains_vector(&sq).then_some(sq)
    }

    fn witness(&self, u: Vector, sq: Vector) -> Result<ConditionWitness> {
        // Re-verify independently of the search path.
        if self.violation(&u).as_ref() != Some(&sq) {
            return Err(Error::Internal(
                "condition witness failed re-verification".into(),
            ));
        }
        let display = u
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.a.labels()[i].clone()
                } else {
                    format!("{c}*{}", self.a.labels()[i])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ");
        Ok(ConditionWitness {
            u: Element::new(u),
            u_squared: Element::new(sq),
            display,
        })
    }
}

pub fn montgomery_condition_check(
    a: &SuperAlgebra,
    strategy: ConditionStrategy,
    reading: ConditionReading,
) -> Result<ConditionReport> {
    if a.kind() != AlgebraKind::Associative {
        return Err(Error::InvalidInput(
            "condition check needs an associative algebra".into(),
        ));
    }
    let z = supercenter(a)?;
    let checker = Checker {
        a,
        z,
        reading,
        odd: a.odd_indices(),
    };
    let k = checker.odd.len();
    let report = |witness: Option<ConditionWitness>, coverage| ConditionReport {
        verdict: if witness.is_some() {
            ConditionVerdict::Violated
        } else {
            ConditionVerdict::NoViolationFound
        },
        reading,
        strategy,
        supercenter_dim: checker.z.dim(),
        witness,
        coverage,
    };
    if k == 0 {
        return Ok(report(
            None,
            Coverage {
                exhaustive: true,
                candidates: 0,
                odd_dim: 0,
            },
        ));
    }
    match strategy {
        ConditionStrategy::Exhaustive { budget } => {
            let FieldSpec::PrimeField(p) = a.field() else {
                return Err(Error::UnsupportedField(a.field()));
            };
            let total = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
            if total > budget {
                return Err(Error::BudgetExceeded {
                    needed: total,
                    budget,
                });
            }
            let total = total as u64;
            let field = a.field();
            // Index -> coefficients, most significant digit first, so index
            // order is lexicographic order of coefficient vectors.
            let digits = |mut idx: u64| {
                let mut c = vec![0u64; k];
                for slot in c.iter_mut().rev() {
                    *slot = idx % p;
                    idx /= p;
                }
                c
            };
            let normalized = |c: &[u64]| c.iter().find(|&&x| x != 0) == Some(&1);
            let found = (1..total).into_par_iter().find_first(|&idx| {
                let c = digits(idx);
                normalized(&c) && {
                    let coords: Vec<_> = c.iter().map(|&x| field.from_i64(x as i64)).collect();
                    checker.violation(&checker.embed(&coords)).is_some()
                }
            });
            let candidates = ((p as u128).pow(k as u32) - 1) / (p as u128 - 1);
            let coverage = Coverage {
                exhaustive: true,
                candidates,
                odd_dim: k,
            };
            let witness = match found {
                Some(idx) => {
                    let coords: Vec<_> = digits(idx)
                        .iter()
                        .map(|&x| field.from_i64(x as i64))
                        .collect();
                    let u = checker.embed(&coords);
                    let sq = checker.violation(&u).expect("found by search");
                    Some(checker.witness(u, sq)?)
                }
                None => None,
            };
            Ok(report(witness, coverage))
        }
        ConditionStrategy::Sample { count, seed } => {
            let field = a.field();
            let d = a.dim();
            let mut candidates: Vec<Vector> = Vec::new();
            for &i in &checker.odd {
                candidates.push(crate::linalg::unit_vector(field, d, i));
            }
            for (x, &i) in checker.odd.iter().enumerate() {
                for &j in &checker.odd[x + 1..] {
                    let mut v = crate::linalg::unit_vector(field, d, i);
                    v[j] = field.one();
                    candidates.push(v);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let coords: Vec<_> = (0..k)
                    .map(|_| field.from_i64(rng.gen_range(-SAMPLE_COEFF..=SAMPLE_COEFF)))
                    .collect();
                candidates.push(checker.embed(&coords));
            }
            let n = candidates.len() as u128;
            let found = candidates
                .into_par_iter()
                .find_map_first(|u| checker.violation(&u).map(|sq| (u, sq)));
            let witness = match found {
                Some((u, sq)) => Some(checker.witness(u, sq)?),
                None => None,
            };
            Ok(report(
                witness,
                Coverage {
                    exhaustive: false,
                    candidates: n,
                    odd_dim: k,
                },
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{clifford, mat, mat_super, CliffordGrading};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn sample() -> ConditionStrategy {
        ConditionStrategy::Sample { count: 50, seed: 0 }
    }

    #[test]
    fn mat_super_1_1_violates() {
        let a = mat_super(Q, 1, 1).unwrap();
        let r = montgomery_condition_check(&a, sample(), ConditionReading::NonzeroSquare).unwrap();
        assert_eq!(r.verdict, ConditionVerdict::Violated);
        let w = r.witness.unwrap();
        assert_eq!(w.display, "E12 + E21");
        assert_eq!(w.u_squared, a.identity().unwrap());
    }

    #[test]
    fn literal_reading_accepts_nilpotent_witness() {
        let a = mat_super(Q, 1, 1).unwrap();
        let r = montgomery_condition_check(&a, sample(), ConditionReading::Literal).unwrap();
        assert_eq!(r.witness.unwrap().display, "E12");
    }

    #[test]
    fn even_algebra_is_vacuous() {
        let r =
            montgomery_condition_check(&mat(Q, 2).unwrap(), sample(), ConditionReading::default())
                .unwrap();
        assert_eq!(r.verdict, ConditionVerdict::NoViolationFound);
        assert_eq!(r.coverage.odd_dim, 0);
    }

    #[test]
    fn mat_super_1_2_over_f3_exhaustive() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = mat_super(f3, 1, 2).unwrap();
        let r = montgomery_condition_check(
            &a,
            ConditionStrategy::Exhaustive {
                budget: DEFAULT_BUDGET,
            },
            ConditionReading::NonzeroSquare,
        )
        .unwrap();
        assert_eq!(r.verdict, ConditionVerdict::NoViolationFound);
        assert_eq!(r.coverage.candidates, 40);
    }

    #[test]
    fn exhaustive_budget_and_field() {
        let a = mat_super(FieldSpec::prime(7).unwrap(), 2, 2).unwrap();
        assert!(matches!(
            montgomery_condition_check(
                &a,
                ConditionStrategy::Exhaustive { budget: 1000 },
                ConditionReading::default()
            ),
            Err(Error::BudgetExceeded { .. })
        ));
        let q = mat_super(Q, 1, 1).unwrap();
        assert!(matches!(
            montgomery_condition_check(
                &q,
                ConditionStrategy::Exhaustive {
                    budget: DEFAULT_BUDGET
                },
                ConditionReading::default()
            ),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn clifford_generator_is_a_witness() {
        let c = clifford(Q, 2, &Q.from_i64(-1), CliffordGrading::Natural).unwrap();
        let r = montgomery_condition_check(&c, sample(), ConditionReading::default()).unwrap();
        assert_eq!(r.witness.unwrap().display, "x1");
    }
}
