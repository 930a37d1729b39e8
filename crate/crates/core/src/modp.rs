//! Dense `u64` arithmetic modulo a prime below 2^32, used for the
//! operator-envelope rank where the vectors have `dim^2` entries. Below
//! [`LAZY_BOUND`] products are accumulated without intermediate reduction.

use num_rational::BigRational;

use crate::scalar::{inv_mod, mod_bigint, mul_mod, Scalar};

/// Primes tried, in order, when certifying over `Q`.
pub const CERTIFICATE_PRIMES: [u64; 3] = [1_048_573, 1_048_571, 1_048_559];

/// Moduli below this bound have `p^2 < 2^42`, so at least `2^21` products
/// fit in a `u64` accumulator.
pub const LAZY_BOUND: u64 = 1 << 21;

/// Reduction of a rational; `None` when `p` divides the denominator.
pub fn reduce_rational(q: &BigRational, p: u64) -> Option<u64> {
    let den = mod_bigint(q.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(mod_bigint(q.numer(), p), inv_mod(den, p), p))
}

/// Reduction of an exact scalar into `F_p`; `None` for `nu`-polynomials,
/// for residues of a different prime, or for non-`p`-integral rationals.
pub fn reduce_scalar(s: &Scalar, p: u64) -> Option<u64> {
    match s {
        Scalar::Rational(q) => reduce_rational(q, p),
        Scalar::Modular { residue, modulus } if *modulus == p => Some(*residue),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub struct ModEchelon {
    p: u64,
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new(p: u64, dim: usize) -> Self {
        ModEchelon {
            p,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let p = self.p;
        let lazy = p < LAZY_BOUND;
        for (pivot, row) in &self.rows {
            let c = v[*pivot] % p;
            if c != 0 {
                let neg = p - c;
                if lazy {
                    for (x, r) in v[*pivot..].iter_mut().zip(&row[*pivot..]) {
                        *x += neg * *r;
                    }
                } else {
                    for (x, r) in v[*pivot..].iter_mut().zip(&row[*pivot..]) {
                        *x = (*x + mul_mod(neg, *r, p)) % p;
                    }
                }
            }
        }
        for x in v.iter_mut() {
            *x %= p;
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[pivot], p);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Row-major square matrix product modulo `p`.
pub fn mat_mul(p: u64, d: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
    let lazy = p < LAZY_BOUND;
    let mut out = vec![0u64; d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == 0 {
                continue;
            }
            let row = &b[k * d..(k + 1) * d];
            let dst = &mut out[i * d..(i + 1) * d];
            if lazy {
                for (o, &bkj) in dst.iter_mut().zip(row) {
                    *o += aik * bkj;
                }
            } else {
                for (o, &bkj) in dst.iter_mut().zip(row) {
                    *o = (*o + mul_mod(aik, bkj, p)) % p;
                }
            }
        }
    }
    for x in out.iter_mut() {
        *x %= p;
    }
    out
}

/// Dimension of the unital associative algebra generated by `gens`
/// (each a `d x d` row-major matrix), by breadth-first left
/// multiplication of new envelope elements. Stops at `d^2` or after
/// `cap` successful insertions.
pub fn envelope_dim(p: u64, d: usize, gens: &[Vec<u64>], cap: usize) -> usize {
    let full = d * d;
    let mut ech = ModEchelon::new(p, full);
    let mut identity = vec![0u64; full];
    for i in 0..d {
        identity[i * d + i] = 1;
    }
    let mut queue = std::collections::VecDeque::new();
    if ech.insert(identity.clone()) {
        queue.push_back(identity);
    }
    let mut insertions = ech.rank();
    while let Some(m) = queue.pop_front() {
        for g in gens {
            if ech.rank() == full || insertions >= cap {
                return ech.rank();
            }
            let prod = mat_mul(p, d, g, &m);
            if ech.insert(prod.clone()) {
                insertions += 1;
                queue.push_back(prod);
            }
        }
    }
    ech.rank()
}
