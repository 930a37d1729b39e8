use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use super::poly::{check_index, XPolynomial};
use crate::error::{Error, Result};
use crate::scalar::NuPoly;

/// A single operator on `Q[nu][x_1..x_N]`. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Mult(usize),
    Partial(usize),
    Exchange(usize, usize),
    Dunkl(usize),
    /// `x_i + (-1)^alpha D_i`, the creation/annihilation operator without
    /// its `1/sqrt 2`.
    CreaAnn(usize, u8),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::Mult(i) => write!(f, "x:{i}"),
            Atom::Partial(i) => write!(f, "d:{i}"),
            Atom::Exchange(i, j) => write!(f, "K:{i}:{j}"),
            Atom::Dunkl(i) => write!(f, "D:{i}"),
            Atom::CreaAnn(i, a) => write!(f, "a:{i}:{a}"),
        }
    }
}

impl FromStr for Atom {
    type Err = Error;

    /// `x:i`, `d:i`, `K:i:j`, `D:i`, or `a:i:alpha`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "bad operator atom {s:?}; expected x:i, d:i, K:i:j, D:i or a:i:alpha"
            ))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let num = |k: usize| {
            parts
                .get(k)
                .and_then(|p| p.parse::<usize>().ok())
                .ok_or_else(bad)
        };
        let atom = match (parts[0], parts.len()) {
            ("x", 2) => Atom::Mult(num(1)?),
            ("d", 2) => Atom::Partial(num(1)?),
            ("D", 2) => Atom::Dunkl(num(1)?),
            ("K", 3) => Atom::Exchange(num(1)?, num(2)?),
            ("a", 3) => {
                let alpha = num(2)?;
                if alpha > 1 {
                    return Err(bad());
                }
                Atom::CreaAnn(num(1)?, alpha as u8)
            }
            _ => return Err(bad()),
        };
        Ok(atom)
    }
}

/// A formal sum of operator words; each word acts right to left.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OperatorExpr {
    pub terms: Vec<(NuPoly, Vec<Atom>)>,
}

impl OperatorExpr {
    pub fn word(atoms: Vec<Atom>) -> Self {
        OperatorExpr {
            terms: vec![(NuPoly::one(), atoms)],
        }
    }

    pub fn atom(a: Atom) -> Self {
        Self::word(vec![a])
    }

    pub fn identity() -> Self {
        Self::word(Vec::new())
    }

    pub fn plus(mut self, other: OperatorExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn scaled(mut self, c: &NuPoly) -> Self {
        for (k, _) in self.terms.iter_mut() {
            *k = &*k * c;
        }
        self
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &OperatorExpr) -> Self {
        let mut terms = Vec::new();
        for (c1, w1) in &self.terms {
            for (c2, w2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().copied());
                terms.push((c1 * c2, w));
            }
        }
        OperatorExpr { terms }
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(a: &OperatorExpr, b: &OperatorExpr) -> Self {
        a.then_after(b)
            .plus(b.then_after(a).scaled(&NuPoly::from_i64(-1)))
    }

    /// `{a, b} = ab + ba`.
    pub fn anticommutator(a: &OperatorExpr, b: &OperatorExpr) -> Self {
        a.then_after(b).plus(b.then_after(a))
    }
}

impl FromStr for OperatorExpr {
    type Err = Error;

    /// Words separated by `+`, atoms within a word separated by spaces,
    /// e.g. `"D:1 D:2 + x:1"`. An empty word is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for word in s.split('+') {
            let atoms = word
                .split_whitespace()
                .map(Atom::from_str)
                .collect::<Result<Vec<_>>>()?;
            terms.push((NuPoly::one(), atoms));
        }
        Ok(OperatorExpr { terms })
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .terms
            .iter()
            .map(|(c, w)| {
                let body = if w.is_empty() {
                    "id".to_string()
                } else {
                    w.iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                if *c == NuPoly::one() {
                    body
                } else {
                    format!("({c}) {body}")
                }
            })
            .collect();
        write!(f, "{}", words.join(" + "))
    }
}

impl Serialize for OperatorExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Particle count and coupling constant. The coupling is the formal `nu`
/// by default and a rational constant for fixed-parameter runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DunklContext {
    pub n: usize,
    pub coupling: NuPoly,
}

impl DunklContext {
    pub fn formal(n: usize) -> Self {
        DunklContext {
            n,
            coupling: NuPoly::nu(),
        }
    }

    pub fn at(n: usize, nu: BigRational) -> Self {
        DunklContext {
            n,
            coupling: NuPoly::constant(nu),
        }
    }

    fn check(&self, f: &XPolynomial) -> Result<()> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: f.n(),
            });
        }
        Ok(())
    }

    pub fn apply_atom(&self, atom: Atom, f: &XPolynomial) -> Result<XPolynomial> {
        self.check(f)?;
        match atom {
            Atom::Mult(i) => f.mul_var(i),
            Atom::Partial(i) => f.partial(i),
            Atom::Exchange(i, j) => f.swap(i, j),
            Atom::Dunkl(i) => self.apply_dunkl(i, f),
            Atom::CreaAnn(i, alpha) => self.apply_crea_ann(i, alpha, f),
        }
    }

    /// `D_i f = d_i f + nu sum_{j != i} 2 (f - K_ij f) / (x_i - x_j)`.
    pub fn apply_dunkl(&self, i: usize, f: &XPolynomial) -> Result<XPolynomial> {
        self.check(f)?;
        check_index(self.n, i)?;
        let mut exchange = XPolynomial::zero(self.n);
        for j in (1..=self.n).filter(|&j| j != i) {
            let numerator = f.sub(&f.swap(i, j)?);
            let quot = numerator.divide_by_difference(i, j)?.ok_or_else(|| {
                Error::Internal(format!(
                    "(1 - K_{i}{j}) f is not divisible by x_{i} - x_{j}"
                ))
            })?;
            exchange = exchange.add(&quot);
        }
        let coupling = self.coupling.scale(&BigRational::from_integer(2.into()));
        Ok(f.partial(i)?.add(&exchange.scale(&coupling)))
    }

    pub fn apply_crea_ann(&self, i: usize, alpha: u8, f: &XPolynomial) -> Result<XPolynomial> {
        if alpha > 1 {
            return Err(Error::InvalidInput(format!(
                "alpha must be 0 or 1, got {alpha}"
            )));
        }
        let d = self.apply_dunkl(i, f)?;
        let x = f.mul_var(i)?;
        Ok(if alpha == 0 { x.add(&d) } else { x.sub(&d) })
    }

    pub fn apply(&self, op: &OperatorExpr, f: &XPolynomial) -> Result<XPolynomial> {
        self.check(f)?;
        let mut out = XPolynomial::zero(self.n);
        for (c, word) in &op.terms {
            let mut g = f.clone();
            for atom in word.iter().rev() {
                g = self.apply_atom(*atom, &g)?;
            }
            out = out.add(&g.scale(c));
        }
        Ok(out)
    }

    /// `-1/4 sum_i {a_i^0, a_i^1}` with unnormalized `a`.
    pub fn hamiltonian_operator(&self) -> OperatorExpr {
        let mut h = OperatorExpr::default();
        for i in 1..=self.n {
            h = h.plus(OperatorExpr::anticommutator(
                &OperatorExpr::atom(Atom::CreaAnn(i, 0)),
                &OperatorExpr::atom(Atom::CreaAnn(i, 1)),
            ));
        }
        h.scaled(&NuPoly::constant(BigRational::new((-1).into(), 4.into())))
    }

    /// `1/2 sum_i (D_i^2 - x_i^2)`.
    pub fn squares_operator(&self) -> OperatorExpr {
        let mut h = OperatorExpr::default();
        for i in 1..=self.n {
            h = h
                .plus(OperatorExpr::word(vec![Atom::Dunkl(i), Atom::Dunkl(i)]))
                .plus(
                    OperatorExpr::word(vec![Atom::Mult(i), Atom::Mult(i)])
                        .scaled(&NuPoly::from_i64(-1)),
                );
        }
        h.scaled(&NuPoly::constant(BigRational::new(1.into(), 2.into())))
    }

    pub fn hamiltonian_apply(&self, f: &XPolynomial) -> Result<XPolynomial> {
        self.apply(&self.hamiltonian_operator(), f)
    }

    /// The differential-operator display
    /// `-1/2 sum_i (d_i^2 - x_i^2 + nu sum_{j != i} 2/(x_i - x_j) d_i)`.
    /// The pole terms are paired as `2 nu (d_i f - d_j f)/(x_i - x_j)`, which
    /// is a polynomial when `f` is symmetric; otherwise this fails.
    pub fn hamiltonian_differential(&self, f: &XPolynomial) -> Result<XPolynomial> {
        self.check(f)?;
        let mut inner = XPolynomial::zero(self.n);
        for i in 1..=self.n {
            inner = inner
                .add(&f.partial(i)?.partial(i)?)
                .sub(&f.mul_var(i)?.mul_var(i)?);
        }
        let mut poles = XPolynomial::zero(self.n);
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                let diff = f.partial(i)?.sub(&f.partial(j)?);
                let quot = diff.divide_by_difference(i, j)?.ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "d_{i} f - d_{j} f is not divisible by x_{i} - x_{j}; the differential form needs symmetric input"
                    ))
                })?;
                poles = poles.add(&quot);
            }
        }
        let coupling = self.coupling.scale(&BigRational::from_integer(2.into()));
        inner = inner.add(&poles.scale(&coupling));
        Ok(inner.scale(&NuPoly::constant(BigRational::new((-1).into(), 2.into()))))
    }
}
