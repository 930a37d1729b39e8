use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use queerify_core::dunkl::{
    check_dunkl_commutativity, compare_hamiltonians, losev_simple, monomials_up_to,
    negative_control, symmetric_monomials, Atom, DunklContext, OperatorExpr, XPolynomial,
};
use queerify_core::NuPoly;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn mono(e: &[u32]) -> XPolynomial {
    XPolynomial::monomial(e.len(), e.to_vec(), NuPoly::one())
}

#[test]
fn dunkl_operators_commute_to_degree_six() {
    for n in 2..=4 {
        let r = check_dunkl_commutativity(n, 6).unwrap();
        assert!(r.all_zero, "N = {n}: {:?}", r.failures.first());
        assert_eq!(r.pairs, n * (n - 1) / 2);
        assert!(!negative_control(n, 2).unwrap().all_zero);
    }
}

#[test]
fn dunkl_on_coordinates() {
    for n in 2..=4 {
        let ctx = DunklContext::formal(n);
        let mut x1 = vec![0; n];
        x1[0] = 1;
        let expected = NuPoly::from_coeffs(vec![q(1), q(2 * (n as i64 - 1))]);
        assert_eq!(
            ctx.apply_dunkl(1, &mono(&x1)).unwrap(),
            XPolynomial::monomial(n, vec![0; n], expected)
        );
    }
    let ctx = DunklContext::formal(2);
    let minus_two_nu = NuPoly::from_coeffs(vec![q(0), q(-2)]);
    assert_eq!(
        ctx.apply_dunkl(1, &mono(&[0, 1])).unwrap(),
        XPolynomial::monomial(2, vec![0, 0], minus_two_nu)
    );
}

#[test]
fn anticommutator_hamiltonian_is_half_sum_of_squares() {
    for n in 1..=3 {
        let ctx = DunklContext::formal(n);
        let h = ctx.hamiltonian_operator();
        let s = ctx.squares_operator();
        for e in monomials_up_to(n, 5) {
            let f = XPolynomial::monomial(n, e.clone(), NuPoly::one());
            assert_eq!(
                ctx.apply(&h, &f).unwrap(),
                ctx.apply(&s, &f).unwrap(),
                "N = {n}, {e:?}"
            );
        }
    }
}

#[test]
fn exchange_conjugates_dunkl_operators() {
    for n in 2..=3 {
        let ctx = DunklContext::formal(n);
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                let conj = OperatorExpr::word(vec![
                    Atom::Exchange(i, j),
                    Atom::Dunkl(i),
                    Atom::Exchange(i, j),
                ]);
                let dj = OperatorExpr::atom(Atom::Dunkl(j));
                for e in monomials_up_to(n, 5) {
                    let f = XPolynomial::monomial(n, e, NuPoly::one());
                    assert_eq!(ctx.apply(&conj, &f).unwrap(), ctx.apply(&dj, &f).unwrap());
                }
            }
        }
    }
}

#[test]
fn hamiltonian_preserves_symmetric_polynomials() {
    for n in 1..=3 {
        let ctx = DunklContext::formal(n);
        for f in symmetric_monomials(n, 5) {
            assert!(ctx.hamiltonian_apply(&f).unwrap().is_symmetric());
        }
    }
}

/// The two displayed forms agree up to sign at `nu = 0`; their sum is
/// `nu sum_{i<j} (d_i f - d_j f) / (x_i - x_j)` on symmetric `f`.
#[test]
fn hamiltonian_forms_differ_by_sign_and_pole_weight() {
    let n = 3;
    let r = compare_hamiltonians(n, 4).unwrap();
    let ctx = DunklContext::formal(n);
    let nu = NuPoly::from_coeffs(vec![q(0), q(1)]);
    for e in &r.entries {
        let sum = e.anticommutator_form.add(&e.differential_form);
        assert!(sum.eval_nu(&BigRational::zero()).is_zero());
        let mut poles = XPolynomial::zero(n);
        for i in 1..=n {
            for j in i + 1..=n {
                let diff = ctx
                    .apply_atom(Atom::Partial(i), &e.input)
                    .unwrap()
                    .sub(&ctx.apply_atom(Atom::Partial(j), &e.input).unwrap());
                poles = poles.add(&diff.divide_by_difference(i, j).unwrap().unwrap());
            }
        }
        assert_eq!(sum, poles.scale(&nu));
    }
    assert!(r.negatives >= 1 && r.negatives < r.inputs);
}

#[test]
fn losev_truth_table() {
    for (p, q) in [(1, 2), (1, 3), (2, 5), (3, 1), (-7, 2)] {
        for n in [2u64, 3, 5] {
            let m = q as u64;
            let got = losev_simple(&BigRational::new(p.into(), q.into()), n)
                .unwrap()
                .simple;
            assert_eq!(got, !(1 < m && m <= n), "c = {p}/{q}, n = {n}");
        }
    }
}

fn homogeneous(n: usize) -> impl Strategy<Value = XPolynomial> {
    (0u32..=5).prop_flat_map(move |deg| {
        let monos: Vec<Vec<u32>> = monomials_up_to(n, deg)
            .into_iter()
            .filter(|e| e.iter().sum::<u32>() == deg)
            .collect();
        prop::collection::vec((prop::sample::select(monos), -3i64..=3), 1..4).prop_map(
            move |terms| {
                XPolynomial::from_terms(n, terms.into_iter().map(|(e, c)| (e, NuPoly::from_i64(c))))
                    .unwrap()
            },
        )
    })
}

proptest! {
    #[test]
    fn dunkl_lowers_degree_by_one((n, f) in (2usize..=3).prop_flat_map(|n| (Just(n), homogeneous(n)))) {
        let ctx = DunklContext::formal(n);
        for i in 1..=n {
            let g = ctx.apply_dunkl(i, &f).unwrap();
            prop_assert!(g.is_homogeneous());
            if let (Some(dg), Some(df)) = (g.degree(), f.degree()) {
                prop_assert_eq!(dg + 1, df);
            }
        }
    }

    #[test]
    fn nu_zero_collapses_to_partials((n, f) in (2usize..=3).prop_flat_map(|n| (Just(n), homogeneous(n)))) {
        let ctx = DunklContext::formal(n);
        for i in 1..=n {
            let d = ctx.apply_dunkl(i, &f).unwrap().eval_nu(&BigRational::zero());
            prop_assert_eq!(d, ctx.apply_atom(Atom::Partial(i), &f).unwrap());
        }
    }
}
