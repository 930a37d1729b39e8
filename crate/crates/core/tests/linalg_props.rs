use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use queerify_core::linalg::{row_reduce, Subspace, Vector};
use queerify_core::{FieldSpec, Scalar};

fn to_field(field: FieldSpec, rows: &[Vec<i64>]) -> Vec<Vector> {
    rows.iter()
        .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
        .collect()
}

/// Fraction-free elimination over Z. Returns the rank and the last pivot,
/// which is a nonzero minor of that size.
fn bareiss(rows: &[Vec<i64>]) -> (usize, BigInt) {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in col + 1..ncols {
                let v = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                m[i][j] = v.div_floor(&prev);
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        r += 1;
    }
    (r, prev)
}

fn matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(lo..=hi, cols), rows)
}

/// Mostly low-rank matrices: products of thin factors.
fn low_rank(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=n)
        .prop_flat_map(move |k| (matrix(n, k, -3, 3), matrix(k, n, -3, 3)))
        .prop_map(|(a, b)| {
            a.iter()
                .map(|row| {
                    (0..b[0].len())
                        .map(|j| row.iter().zip(&b).map(|(x, brow)| x * brow[j]).sum())
                        .collect()
                })
                .collect()
        })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix(5, 6, -9, 9), p in prop::sample::select(vec![0u64, 5, 7, 11])) {
        let field = if p == 0 { FieldSpec::Rationals } else { FieldSpec::prime(p).unwrap() };
        let once = row_reduce(field, 6, &to_field(field, &m)).unwrap();
        let twice = row_reduce(field, 6, &once.rref).unwrap();
        prop_assert_eq!(&once.rref, &twice.rref);
        prop_assert_eq!(once.rank + once.kernel.dim(), 6);
    }

    #[test]
    fn rank_mod_p_matches_integer_minor(m in prop_oneof![matrix(6, 6, -9, 9), low_rank(6)]) {
        let (r, minor) = bareiss(&m);
        let q = row_reduce(FieldSpec::Rationals, 6, &to_field(FieldSpec::Rationals, &m)).unwrap();
        prop_assert_eq!(q.rank, r);
        for p in [5u64, 7, 11] {
            let f = FieldSpec::prime(p).unwrap();
            let rp = row_reduce(f, 6, &to_field(f, &m)).unwrap().rank;
            prop_assert!(rp <= r);
            if r > 0 && !(&minor % BigInt::from(p)).is_zero() {
                prop_assert_eq!(rp, r);
            }
        }
    }
}

#[test]
fn modular_law_on_seeded_pairs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let q = FieldSpec::Rationals;
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let random_space = |rng: &mut rand_chacha::ChaCha8Rng| {
            let k = rng.gen_range(0..=n);
            // Sparse entries make nontrivial intersections likely.
            let vecs: Vec<Vector> = (0..k)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            if rng.gen_bool(0.5) {
                                q.zero()
                            } else {
                                q.from_i64(rng.gen_range(-2..=2))
                            }
                        })
                        .collect()
                })
                .collect();
            Subspace::span(q, n, vecs).unwrap()
        };
        let u = random_space(&mut rng);
        let v = random_space(&mut rng);
        let sum = u.sum(&v).unwrap();
        let meet = u.intersect(&v).unwrap();
        assert_eq!(u.dim() + v.dim(), sum.dim() + meet.dim());
        assert!(sum.contains(&u).unwrap() && sum.contains(&v).unwrap());
        assert!(u.contains(&meet).unwrap() && v.contains(&meet).unwrap());
    }
}

#[test]
fn rational_entries_reduce() {
    let q = FieldSpec::Rationals;
    let half = Scalar::Rational(BigRational::new(1.into(), 2.into()));
    let rows = vec![vec![half.clone(), q.one()], vec![q.one(), q.from_i64(2)]];
    let r = row_reduce(q, 2, &rows).unwrap();
    assert_eq!(r.rank, 1);
    assert_eq!(r.rref[0], vec![q.one(), q.from_i64(2)]);
}
