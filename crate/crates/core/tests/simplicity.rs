use queerify_core::algebra::AlgebraBuilder;
use queerify_core::construct::{
    clifford, direct_sum, group_algebra, mat, mat_super, CliffordGrading, FiniteGroup,
};
use queerify_core::lie::{herstein_l, lie_of, montgomery_sl, LieMode};
use queerify_core::modp::reduce_scalar;
use queerify_core::queer::{psq, QueerTower};
use queerify_core::simplicity::{
    is_simple, is_simple_with, verify_witness, SimplicityOptions, Verdict,
};
use queerify_core::{AlgebraKind, FieldSpec, Parity, SuperAlgebra};

const P: u8 = 3;

/// Every subspace of F_3^k in reduced row-echelon form.
fn subspaces(k: usize) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << k) {
        let pivots: Vec<usize> = (0..k).filter(|c| mask & (1 << c) != 0).collect();
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                (p + 1..k)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        for assignment in 0..(P as u32).pow(free.len() as u32) {
            let mut rows: Vec<Vec<u8>> = pivots
                .iter()
                .map(|&p| {
                    let mut row = vec![0u8; k];
                    row[p] = 1;
                    row
                })
                .collect();
            let mut x = assignment;
            for &(r, c) in &free {
                rows[r][c] = (x % P as u32) as u8;
                x /= P as u32;
            }
            out.push(rows);
        }
    }
    out
}

fn reduce(basis: &[Vec<u8>], v: &mut [u8]) {
    for row in basis {
        let p = row.iter().position(|&x| x != 0).unwrap();
        let c = v[p];
        if c != 0 {
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi = (*vi + P * P - c * ri % P) % P;
            }
        }
    }
}

struct Table {
    d: usize,
    kind: AlgebraKind,
    /// `mul[i][j]` is `b_i b_j` over F_3.
    mul: Vec<Vec<Vec<u8>>>,
}

impl Table {
    fn of(a: &SuperAlgebra) -> Self {
        let d = a.dim();
        let mul = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![0u8; d];
                        for (k, c) in a.product(i, j) {
                            v[*k] = reduce_scalar(c, P as u64).unwrap() as u8;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Table {
            d,
            kind: a.kind(),
            mul,
        }
    }

    fn times(&self, i: usize, w: &[u8], left: bool) -> Vec<u8> {
        let mut out = vec![0u8; self.d];
        for (j, &c) in w.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let prod = if left {
                &self.mul[i][j]
            } else {
                &self.mul[j][i]
            };
            for (o, &x) in out.iter_mut().zip(prod) {
                *o = (*o + c * x) % P;
            }
        }
        out
    }

    fn is_ideal(&self, basis: &[Vec<u8>]) -> bool {
        basis.iter().all(|w| {
            (0..self.d).all(|i| {
                let sides: &[bool] = match self.kind {
                    AlgebraKind::LieSuper => &[true],
                    AlgebraKind::Associative => &[true, false],
                };
                sides.iter().all(|&left| {
                    let mut v = self.times(i, w, left);
                    reduce(basis, &mut v);
                    v.iter().all(|&x| x == 0)
                })
            })
        })
    }
}

/// Simple iff the product is nonzero and no graded subspace strictly
/// between 0 and the whole space is an ideal.
fn oracle_simple(a: &SuperAlgebra) -> bool {
    let t = Table::of(a);
    if t.mul.iter().flatten().flatten().all(|&x| x == 0) {
        return false;
    }
    let even: Vec<usize> = (0..a.dim())
        .filter(|&i| a.parity(i) == Parity::Even)
        .collect();
    let odd: Vec<usize> = (0..a.dim())
        .filter(|&i| a.parity(i) == Parity::Odd)
        .collect();
    let lift = |rows: &[Vec<u8>], idx: &[usize]| -> Vec<Vec<u8>> {
        rows.iter()
            .map(|r| {
                let mut v = vec![0u8; a.dim()];
                for (c, &i) in r.iter().zip(idx) {
                    v[i] = *c;
                }
                v
            })
            .collect()
    };
    for w0 in subspaces(even.len()) {
        for w1 in subspaces(odd.len()) {
            let dim = w0.len() + w1.len();
            if dim == 0 || dim == a.dim() {
                continue;
            }
            let mut basis = lift(&w0, &even);
            basis.extend(lift(&w1, &odd));
            // Rows from disjoint coordinate blocks stay in echelon form
            // once sorted by pivot.
            basis.sort_by_key(|r| r.iter().position(|&x| x != 0));
            if t.is_ideal(&basis) {
                return false;
            }
        }
    }
    true
}

fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

fn lie_from(
    d: usize,
    parity: Vec<Parity>,
    brackets: &[(usize, usize, usize, i64)],
) -> SuperAlgebra {
    let f = f3();
    let mut b = AlgebraBuilder::new(f, AlgebraKind::LieSuper, parity.clone());
    for &(i, j, k, c) in brackets {
        b.add_term(i, j, k, f.from_i64(c));
        if i != j {
            let sign = if parity[i].is_odd() && parity[j].is_odd() {
                1
            } else {
                -1
            };
            b.add_term(j, i, k, f.from_i64(sign * c));
        }
    }
    assert_eq!(b.dim(), d);
    b.build().unwrap()
}

fn library() -> Vec<(&'static str, SuperAlgebra)> {
    let f = f3();
    let e = Parity::Even;
    let o = Parity::Odd;
    let sl2 = herstein_l(&mat(f, 2).unwrap()).unwrap().algebra;
    let abelian1 = lie_from(1, vec![e], &[]);
    vec![
        ("abelian(1)", abelian1.clone()),
        ("abelian(3)", lie_from(3, vec![e; 3], &[])),
        ("nonabelian(2)", lie_from(2, vec![e, e], &[(0, 1, 1, 1)])),
        ("heisenberg", lie_from(3, vec![e, e, e], &[(0, 1, 2, 1)])),
        (
            "odd heisenberg",
            lie_from(3, vec![o, o, e], &[(0, 1, 2, 1)]),
        ),
        ("gl2", lie_of(&mat(f, 2).unwrap(), LieMode::Plain).unwrap()),
        ("sl2", sl2.clone()),
        ("sl2 + abelian(1)", direct_sum(&sl2, &abelian1).unwrap()),
        (
            "gl(1|1)",
            lie_of(&mat_super(f, 1, 1).unwrap(), LieMode::Super).unwrap(),
        ),
        (
            "sl(1|1)",
            montgomery_sl(&mat_super(f, 1, 1).unwrap()).unwrap().algebra,
        ),
        ("mat(2)", mat(f, 2).unwrap()),
        ("mat(1|1)", mat_super(f, 1, 1).unwrap()),
        (
            "cliff(2,-1)",
            clifford(f, 2, &f.from_i64(-1), CliffordGrading::Natural).unwrap(),
        ),
        (
            "cliff(2,1,trivial)",
            clifford(f, 2, &f.one(), CliffordGrading::Trivial).unwrap(),
        ),
        (
            "F3[C2]",
            group_algebra(f, &FiniteGroup::cyclic(2).unwrap()).unwrap(),
        ),
        (
            "F3[C3]",
            group_algebra(f, &FiniteGroup::cyclic(3).unwrap()).unwrap(),
        ),
    ]
}

#[test]
fn agrees_with_brute_force_over_f3() {
    for (name, a) in library() {
        assert!(a.dim() <= 4 && a.validate().is_valid(), "{name}");
        let expected = oracle_simple(&a);
        let got = is_simple(&a).unwrap();
        let want = if expected {
            Verdict::Simple
        } else {
            Verdict::NotSimple
        };
        assert_eq!(got.verdict, want, "{name}");
        if let Some(w) = &got.witness {
            assert!(verify_witness(&a, &w.subspace), "{name}");
        }
    }
}

#[test]
fn psq_three_is_certified() {
    let v = is_simple(&psq(FieldSpec::Rationals, 3).unwrap()).unwrap();
    assert_eq!(v.verdict, Verdict::Simple);
    let c = v.certificate.unwrap();
    assert_eq!((c.envelope_dim, c.ambient_sq), (256, 256));
    assert!(v.basis_spins_full);
}

#[test]
fn psq_four_is_simple() {
    let v = is_simple(&psq(FieldSpec::Rationals, 4).unwrap()).unwrap();
    assert_eq!(v.verdict, Verdict::Simple);
    assert_eq!(v.certificate.unwrap().envelope_dim, 30 * 30);
}

#[test]
fn psq_two_has_a_three_dimensional_ideal() {
    let a = psq(FieldSpec::Rationals, 2).unwrap();
    let v = is_simple(&a).unwrap();
    assert_eq!(v.verdict, Verdict::NotSimple);
    let w = v.witness.unwrap();
    assert_eq!(w.dim, 3);
    assert!(verify_witness(&a, &w.subspace));
}

#[test]
fn tower_members_are_not_simple() {
    let t = QueerTower::new(FieldSpec::Rationals, 3).unwrap();
    for alg in [&t.q, &t.sq, &t.pq] {
        let v = is_simple(alg).unwrap();
        assert_eq!(v.verdict, Verdict::NotSimple);
        assert!(verify_witness(alg, &v.witness.unwrap().subspace));
    }
}

#[test]
fn verdicts_are_deterministic() {
    let a = psq(FieldSpec::Rationals, 2).unwrap();
    let opts = SimplicityOptions {
        seed: 11,
        ..Default::default()
    };
    let x = serde_json::to_string(&is_simple_with(&a, &opts).unwrap()).unwrap();
    let y = serde_json::to_string(&is_simple_with(&a, &opts).unwrap()).unwrap();
    assert_eq!(x, y);
}
