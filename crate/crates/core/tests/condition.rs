use queerify_core::center::supercenter;
use queerify_core::condition::{
    montgomery_condition_check, ConditionReading, ConditionStrategy, ConditionVerdict,
    DEFAULT_BUDGET,
};
use queerify_core::construct::{clifford, mat_super, CliffordGrading};
use queerify_core::{Error, FieldSpec, SuperAlgebra};

fn sample() -> ConditionStrategy {
    ConditionStrategy::Sample { count: 64, seed: 0 }
}

/// `u` odd, outside the supercenter, with `u^2` in the supercenter.
fn independently_violates(a: &SuperAlgebra, u: &queerify_core::Element, literal: bool) -> bool {
    let z = supercenter(a).unwrap();
    let odd_only = u.support().all(|i| a.parity(i).is_odd());
    let sq = a.multiply(u, u).unwrap();
    odd_only
        && !u.is_zero()
        && !z.contains_vector(&u.coeffs)
        && z.contains_vector(&sq.coeffs)
        && (literal || !sq.is_zero())
}

#[test]
fn super_matrices_one_one_violate() {
    let a = mat_super(FieldSpec::Rationals, 1, 1).unwrap();
    let r = montgomery_condition_check(&a, sample(), ConditionReading::NonzeroSquare).unwrap();
    assert_eq!(r.verdict, ConditionVerdict::Violated);
    let w = r.witness.unwrap();
    assert!(independently_violates(&a, &w.u, false));
    assert_eq!(a.multiply(&w.u, &w.u).unwrap(), w.u_squared);
}

#[test]
fn super_matrices_one_two_over_f3_exhaustive() {
    let a = mat_super(FieldSpec::prime(3).unwrap(), 1, 2).unwrap();
    let r = montgomery_condition_check(
        &a,
        ConditionStrategy::Exhaustive {
            budget: DEFAULT_BUDGET,
        },
        ConditionReading::NonzeroSquare,
    )
    .unwrap();
    assert_eq!(r.verdict, ConditionVerdict::NoViolationFound);
    assert!(r.coverage.exhaustive);
    // Projective points of F_3^4.
    assert_eq!(r.coverage.candidates, (81 - 1) / 2);
}

#[test]
fn literal_reading_counts_odd_nilpotents() {
    let a = mat_super(FieldSpec::prime(3).unwrap(), 1, 2).unwrap();
    let r = montgomery_condition_check(
        &a,
        ConditionStrategy::Exhaustive {
            budget: DEFAULT_BUDGET,
        },
        ConditionReading::Literal,
    )
    .unwrap();
    assert_eq!(r.verdict, ConditionVerdict::Violated);
    assert!(independently_violates(&a, &r.witness.unwrap().u, true));
}

#[test]
fn clifford_verdict_is_stable() {
    let q = FieldSpec::Rationals;
    let a = clifford(q, 2, &q.from_i64(-1), CliffordGrading::Natural).unwrap();
    let x = montgomery_condition_check(&a, sample(), ConditionReading::NonzeroSquare).unwrap();
    let y = montgomery_condition_check(&a, sample(), ConditionReading::NonzeroSquare).unwrap();
    assert_eq!(
        serde_json::to_string(&x).unwrap(),
        serde_json::to_string(&y).unwrap()
    );
    if let Some(w) = &x.witness {
        assert!(independently_violates(&a, &w.u, false));
    }
}

#[test]
fn exhaustive_budget_is_enforced() {
    let a = mat_super(FieldSpec::prime(3).unwrap(), 2, 2).unwrap();
    assert!(matches!(
        montgomery_condition_check(
            &a,
            ConditionStrategy::Exhaustive { budget: 100 },
            ConditionReading::NonzeroSquare
        ),
        Err(Error::BudgetExceeded { .. })
    ));
}
