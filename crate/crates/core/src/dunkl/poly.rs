use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::NuPoly;

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

/// A polynomial in `x_1..x_N` with coefficients in `Q[nu]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XPolynomial {
    n: usize,
    terms: BTreeMap<Exponents, NuPoly>,
}

impl XPolynomial {
    pub fn zero(n: usize) -> Self {
        XPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; n], NuPoly::one())
    }

    pub fn monomial(n: usize, exps: Exponents, coeff: NuPoly) -> Self {
        assert_eq!(exps.len(), n, "exponent vector length");
        let mut p = Self::zero(n);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// `x_i`, with 1-based `i`.
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        check_index(n, i)?;
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Ok(Self::monomial(n, e, NuPoly::one()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, NuPoly)>>(
        n: usize,
        terms: I,
    ) -> Result<Self> {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: e.len(),
                });
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, NuPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    pub fn coeff(&self, e: &[u32]) -> NuPoly {
        self.terms.get(e).cloned().unwrap_or_else(NuPoly::zero)
    }

    fn add_term(&mut self, e: Exponents, c: &NuPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &XPolynomial) -> XPolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &XPolynomial) -> XPolynomial {
        self.add(&other.scale(&NuPoly::from_i64(-1)))
    }

    pub fn scale(&self, c: &NuPoly) -> XPolynomial {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (e, x) in &self.terms {
            out.add_term(e.clone(), &(x * c));
        }
        out
    }

    pub fn mul(&self, other: &XPolynomial) -> XPolynomial {
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    /// Multiplication by `x_i`.
    pub fn mul_var(&self, i: usize) -> Result<XPolynomial> {
        check_index(self.n, i)?;
        Ok(XPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i - 1] += 1;
                    (e, c.clone())
                })
                .collect(),
        })
    }

    pub fn partial(&self, i: usize) -> Result<XPolynomial> {
        check_index(self.n, i)?;
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let k = e[i - 1];
            if k == 0 {
                continue;
            }
            let mut e = e.clone();
            e[i - 1] -= 1;
            out.add_term(e, &c.scale(&BigRational::from_integer(k.into())));
        }
        Ok(out)
    }

    /// `K_ij`: exchanges the exponents of `x_i` and `x_j`.
    pub fn swap(&self, i: usize, j: usize) -> Result<XPolynomial> {
        check_index(self.n, i)?;
        check_index(self.n, j)?;
        if i == j {
            return Err(Error::IndexError(format!(
                "exchange needs i != j, got ({i}, {j})"
            )));
        }
        Ok(XPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i - 1, j - 1);
                    (e, c.clone())
                })
                .collect(),
        })
    }

    /// Exact quotient by `x_i - x_j`, or `None` when the remainder is nonzero.
    pub fn divide_by_difference(&self, i: usize, j: usize) -> Result<Option<XPolynomial>> {
        check_index(self.n, i)?;
        check_index(self.n, j)?;
        if i == j {
            return Err(Error::IndexError(format!("x_{i} - x_{j} is zero")));
        }
        let (i, j) = (i - 1, j - 1);
        // f = sum_k f_k x_i^k with f_k free of x_i.
        let mut slices: BTreeMap<u32, XPolynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            slices
                .entry(e[i])
                .or_insert_with(|| Self::zero(self.n))
                .add_term(rest, c);
        }
        let Some(&top) = slices.keys().next_back() else {
            return Ok(Some(Self::zero(self.n)));
        };
        let times_xj = |p: &XPolynomial| XPolynomial {
            n: p.n,
            terms: p
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[j] += 1;
                    (e, c.clone())
                })
                .collect(),
        };
        // Synthetic division: q_{k-1} = f_k + x_j q_k.
        let mut quotient = Self::zero(self.n);
        let mut carry = Self::zero(self.n);
        for k in (1..=top).rev() {
            let fk = slices
                .get(&k)
                .cloned()
                .unwrap_or_else(|| Self::zero(self.n));
            carry = fk.add(&times_xj(&carry));
            for (e, c) in &carry.terms {
                let mut e = e.clone();
                e[i] = k - 1;
                quotient.add_term(e, c);
            }
        }
        let f0 = slices
            .get(&0)
            .cloned()
            .unwrap_or_else(|| Self::zero(self.n));
        let remainder = f0.add(&times_xj(&carry));
        Ok(remainder.is_zero().then_some(quotient))
    }

    /// Substitutes a rational value for `nu` in every coefficient.
    pub fn eval_nu(&self, at: &BigRational) -> XPolynomial {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &NuPoly::constant(c.eval(at)));
        }
        out
    }

    /// Invariant under every exchange `K_ij`.
    pub fn is_symmetric(&self) -> bool {
        (1..self.n).all(|i| self.swap(i, i + 1).map(|s| s == *self).unwrap_or(false))
    }
}

pub(crate) fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexError(format!(
            "variable index {i} outside 1..={n}"
        )));
    }
    Ok(())
}

/// All exponent vectors in `n` variables with total degree at most `dmax`,
/// by degree then lexicographically descending.
pub fn monomials_up_to(n: usize, dmax: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for d in 0..=dmax {
        let mut cur = vec![0u32; n];
        compositions(n, 0, d, &mut cur, &mut out);
    }
    out
}

fn compositions(n: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
    if n == 0 {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        compositions(n, pos + 1, left - k, cur, out);
    }
    cur[pos] = 0;
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{k}", i + 1)
                        }
                    })
                    .collect();
                let coeff = c.to_string();
                match (vars.is_empty(), coeff.as_str()) {
                    (true, _) => format!("({coeff})"),
                    (false, "1") => vars.join("*"),
                    (false, _) => format!("({coeff})*{}", vars.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

struct TermList<'a>(&'a BTreeMap<Exponents, NuPoly>);

impl Serialize for TermList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (e, c) in self.0 {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl Serialize for XPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("XPolynomial", 2)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("terms", &TermList(&self.terms))?;
        st.end()
    }
}
