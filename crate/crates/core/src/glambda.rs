//! Degree-truncated `U(sl2)` in the PBW basis `f^a h^b e^c`, its central
//! quotients `U_lambda = U(sl2) / (C - (lambda^2 - 1))` with
//! `C = h^2 + 2h + 4fe`, and the `n`-dimensional representation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::scalar::{FieldSpec, Scalar};

/// Exponents `[a, b, c]` of `f^a h^b e^c`.
pub type Pbw = [u32; 3];

pub const CASIMIR: &str = "C = h^2 + 2h + 4fe";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Mode {
    Full,
    Quotient(BigRational),
}

impl Mode {
    /// `lambda^2 - 1`, the value of `C` in the quotient.
    fn casimir_value(&self) -> Option<BigRational> {
        match self {
            Mode::Full => None,
            Mode::Quotient(l) => Some(l * l - BigRational::one()),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Full => write!(f, "full"),
            Mode::Quotient(l) => write!(f, "lambda = {l}"),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Mode::Full => s.serialize_str("full"),
            Mode::Quotient(l) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("lambda", &l.to_string())?;
                m.end()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    E,
    H,
    F,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::E, Generator::H, Generator::F];

    fn exponents(self) -> Pbw {
        match self {
            Generator::F => [1, 0, 0],
            Generator::H => [0, 1, 0],
            Generator::E => [0, 0, 1],
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::E => "e",
            Generator::H => "h",
            Generator::F => "f",
        };
        write!(f, "{s}")
    }
}

type Terms = BTreeMap<Pbw, BigRational>;

fn add_term(terms: &mut Terms, m: Pbw, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let entry = terms.entry(m).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        terms.remove(&m);
    }
}

fn degree_of(m: &Pbw) -> u32 {
    m[0] + m[1] + m[2]
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// `g * t` for a normal-form `t`, exactly and without truncation.
fn left_generator(g: Generator, t: &Terms) -> Terms {
    let mut out = Terms::new();
    for (&[a, b, c], k) in t {
        match g {
            Generator::F => add_term(&mut out, [a + 1, b, c], k.clone()),
            // h f^a = f^a (h - 2a)
            Generator::H => {
                add_term(&mut out, [a, b + 1, c], k.clone());
                add_term(
                    &mut out,
                    [a, b, c],
                    k * BigRational::from_integer(BigInt::from(-2 * a as i64)),
                );
            }
            // e f^a = f^a e + a f^(a-1) h - a(a-1) f^(a-1), and e h^b = (h-2)^b e
            Generator::E => {
                for j in 0..=b {
                    let coeff = BigInt::from(-2).pow(b - j) * binomial(b, j);
                    add_term(
                        &mut out,
                        [a, j, c + 1],
                        k * BigRational::from_integer(coeff),
                    );
                }
                if a > 0 {
                    let a_big = BigInt::from(a);
                    add_term(
                        &mut out,
                        [a - 1, b + 1, c],
                        k * BigRational::from_integer(a_big.clone()),
                    );
                    let lower = a_big.clone() * (a_big - 1);
                    add_term(
                        &mut out,
                        [a - 1, b, c],
                        -(k * BigRational::from_integer(lower)),
                    );
                }
            }
        }
    }
    out
}

/// Rewrites `h^2 -> c1 - 2h - 4fe` until every h-exponent is below 2.
fn reduce_quotient(t: Terms, c1: &BigRational) -> Terms {
    let mut out = Terms::new();
    let mut pending: Vec<(Pbw, BigRational)> = t.into_iter().collect();
    while let Some(([a, b, c], k)) = pending.pop() {
        if b < 2 {
            add_term(&mut out, [a, b, c], k);
            continue;
        }
        let r = b - 2;
        // f^a h^r (c1 - 2h - 4fe) e^c, with h^r f = f (h - 2)^r.
        pending.push(([a, r, c], &k * c1));
        pending.push((
            [a, r + 1, c],
            &k * BigRational::from_integer(BigInt::from(-2)),
        ));
        for j in 0..=r {
            let coeff = BigInt::from(-2).pow(r - j) * binomial(r, j) * BigInt::from(-4);
            pending.push(([a + 1, j, c + 1], &k * BigRational::from_integer(coeff)));
        }
    }
    out
}

/// An element of the truncated `U(sl2)` or of a quotient `U_lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UElement {
    mode: Mode,
    cutoff: u32,
    terms: Terms,
    truncated: bool,
}

impl UElement {
    pub fn zero(mode: Mode, cutoff: u32) -> Self {
        UElement {
            mode,
            cutoff,
            terms: Terms::new(),
            truncated: false,
        }
    }

    pub fn one(mode: Mode, cutoff: u32) -> Self {
        Self::monomial(mode, cutoff, [0, 0, 0], BigRational::one())
    }

    pub fn generator(mode: Mode, cutoff: u32, g: Generator) -> Self {
        Self::monomial(mode, cutoff, g.exponents(), BigRational::one())
    }

    /// `coeff * f^a h^b e^c`, reduced in quotient mode.
    pub fn monomial(mode: Mode, cutoff: u32, m: Pbw, coeff: BigRational) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, m, coeff);
        Self::from_exact(mode, cutoff, terms, false)
    }

    pub fn scalar(mode: Mode, cutoff: u32, c: BigRational) -> Self {
        Self::monomial(mode, cutoff, [0, 0, 0], c)
    }

    /// `h^2 + 2h + 4fe`.
    pub fn casimir(mode: Mode, cutoff: u32) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, [0, 2, 0], BigRational::one());
        add_term(&mut terms, [0, 1, 0], BigRational::from_integer(2.into()));
        add_term(&mut terms, [1, 0, 1], BigRational::from_integer(4.into()));
        Self::from_exact(mode, cutoff, terms, false)
    }

    fn from_exact(mode: Mode, cutoff: u32, terms: Terms, truncated: bool) -> Self {
        let terms = match mode.casimir_value() {
            Some(c1) => reduce_quotient(terms, &c1),
            None => terms,
        };
        let before = terms.len();
        let terms: Terms = terms
            .into_iter()
            .filter(|(m, _)| degree_of(m) <= cutoff)
            .collect();
        UElement {
            truncated: truncated || terms.len() < before,
            mode,
            cutoff,
            terms,
        }
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pbw, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Pbw) -> BigRational {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Filtration degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(degree_of).max()
    }

    fn check(&self, other: &UElement) -> Result<()> {
        if self.mode != other.mode || self.cutoff != other.cutoff {
            return Err(Error::ModeMismatch(format!(
                "({}, cutoff {}) vs ({}, cutoff {})",
                self.mode, self.cutoff, other.mode, other.cutoff
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &UElement) -> Result<UElement> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, *m, c.clone());
        }
        Ok(UElement {
            terms,
            truncated: self.truncated || other.truncated,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &BigRational) -> UElement {
        let mut terms = Terms::new();
        for (m, k) in &self.terms {
            add_term(&mut terms, *m, k * c);
        }
        UElement {
            terms,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &UElement) -> Result<UElement> {
        self.add(&other.scale(&-BigRational::one()))
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&[a, b, c], k) in &self.terms {
            let mut factors = Vec::new();
            for (sym, e) in [("f", a), ("h", b), ("e", c)] {
                match e {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    _ => factors.push(format!("{sym}^{e}")),
                }
            }
            let sign = if k.is_negative() { "-" } else { "+" };
            if first {
                if k.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = k.abs();
            match (factors.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", factors.join(" "))?,
                (false, false) => write!(f, "{mag} {}", factors.join(" "))?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for UElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(Pbw, String)> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.to_string()))
            .collect();
        let mut st = s.serialize_struct("UElement", 4)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("cutoff", &self.cutoff)?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("truncated", &self.truncated)?;
        st.end()
    }
}

/// `u * v` in normal form; terms above the cutoff are dropped and flagged.
pub fn u_multiply(u: &UElement, v: &UElement) -> Result<UElement> {
    u.check(v)?;
    let mut out = Terms::new();
    for (&[a, b, c], k) in &u.terms {
        // f^a h^b e^c v, applying e first.
        let mut t = v.terms.clone();
        let word = std::iter::repeat_n(Generator::E, c as usize)
            .chain(std::iter::repeat_n(Generator::H, b as usize))
            .chain(std::iter::repeat_n(Generator::F, a as usize));
        for g in word {
            t = left_generator(g, &t);
        }
        for (m, x) in t {
            add_term(&mut out, m, x * k);
        }
    }
    Ok(UElement::from_exact(
        u.mode.clone(),
        u.cutoff,
        out,
        u.truncated || v.truncated,
    ))
}

/// `uv - vu`.
pub fn glambda_bracket(u: &UElement, v: &UElement) -> Result<UElement> {
    u_multiply(u, v)?.sub(&u_multiply(v, u)?)
}

/// An element `(X, Y)` of the queerification of `U_lambda`; `Y` is odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueerPair {
    pub x: UElement,
    pub y: UElement,
}

impl QueerPair {
    pub fn even(x: UElement) -> Self {
        let y = UElement::zero(x.mode.clone(), x.cutoff);
        QueerPair { x, y }
    }

    pub fn odd(y: UElement) -> Self {
        let x = UElement::zero(y.mode.clone(), y.cutoff);
        QueerPair { x, y }
    }

    pub fn truncated(&self) -> bool {
        self.x.truncated || self.y.truncated
    }

    pub fn add(&self, other: &QueerPair) -> Result<QueerPair> {
        Ok(QueerPair {
            x: self.x.add(&other.x)?,
            y: self.y.add(&other.y)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// `[(X1, Y1), (X2, Y2)] = ([X1, X2] + Y1 Y2 + Y2 Y1, [X1, Y2] + [Y1, X2])`.
pub fn glambda_queer_bracket(p: &QueerPair, q: &QueerPair) -> Result<QueerPair> {
    let x = glambda_bracket(&p.x, &q.x)?
        .add(&u_multiply(&p.y, &q.y)?)?
        .add(&u_multiply(&q.y, &p.y)?)?;
    let y = glambda_bracket(&p.x, &q.y)?.add(&glambda_bracket(&p.y, &q.x)?)?;
    Ok(QueerPair { x, y })
}

/// Coefficient of `v` in `u v` for a highest-weight vector `v` with
/// `e v = 0`, `h v = mu v`. `None` if `u v` leaves the line through `v`.
pub fn highest_weight_value(u: &UElement, mu: &BigRational) -> Option<BigRational> {
    let mut value = BigRational::zero();
    for (&[a, b, c], k) in &u.terms {
        if c > 0 {
            continue;
        }
        if a > 0 {
            return None;
        }
        value += k * num_traits::pow(mu.clone(), b as usize);
    }
    Some(value)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorCheck {
    pub generator: String,
    pub commutator: UElement,
    pub zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HighestWeightCheck {
    pub mu: i64,
    pub value: String,
    pub expected: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CasimirReport {
    pub casimir: &'static str,
    pub cutoff: u32,
    pub commutators: Vec<CommutatorCheck>,
    pub highest_weight: Vec<HighestWeightCheck>,
    pub holds: bool,
}

/// `[C, g] = 0` for each generator and `C v = ((mu+1)^2 - 1) v` on highest
/// weight vectors for `mu` in `mus`.
pub fn casimir_check(cutoff: u32, mus: &[i64]) -> Result<CasimirReport> {
    let c = UElement::casimir(Mode::Full, cutoff);
    let commutators = Generator::ALL
        .iter()
        .map(|&g| {
            let k = glambda_bracket(&c, &UElement::generator(Mode::Full, cutoff, g))?;
            Ok(CommutatorCheck {
                generator: g.to_string(),
                zero: k.is_zero() && !k.truncated,
                commutator: k,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let highest_weight = mus
        .iter()
        .map(|&mu| {
            let m = BigRational::from_integer(mu.into());
            let expected = (&m + BigRational::one()).pow(2) - BigRational::one();
            let value = highest_weight_value(&c, &m);
            HighestWeightCheck {
                mu,
                matches: value.as_ref() == Some(&expected),
                value: value.map_or_else(|| "not a multiple of v".to_string(), |v| v.to_string()),
                expected: expected.to_string(),
            }
        })
        .collect::<Vec<_>>();
    let holds = !c.truncated
        && commutators.iter().all(|k| k.zero)
        && highest_weight.iter().all(|h| h.matches);
    Ok(CasimirReport {
        casimir: CASIMIR,
        cutoff,
        commutators,
        highest_weight,
        holds,
    })
}

/// Dense square matrix over Q.
pub type Matrix = Vec<Vec<BigRational>>;

pub fn mat_zero(n: usize) -> Matrix {
    vec![vec![BigRational::zero(); n]; n]
}

pub fn mat_identity(n: usize) -> Matrix {
    let mut m = mat_zero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = mat_zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn mat_scale(a: &Matrix, c: &BigRational) -> Matrix {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    mat_add(a, &mat_scale(b, &-BigRational::one()))
}

fn mat_pow(a: &Matrix, k: u32) -> Matrix {
    (0..k).fold(mat_identity(a.len()), |acc, _| mat_mul(&acc, a))
}

/// The irreducible `n`-dimensional representation of `sl2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Rep {
    pub n: usize,
    pub e: Matrix,
    pub f: Matrix,
    pub h: Matrix,
}

impl Sl2Rep {
    /// `[h, e] - 2e`, `[h, f] + 2f`, `[e, f] - h`, all zero.
    pub fn relations_hold(&self) -> bool {
        let comm = |a: &Matrix, b: &Matrix| mat_sub(&mat_mul(a, b), &mat_mul(b, a));
        let two = BigRational::from_integer(2.into());
        let zero = mat_zero(self.n);
        mat_sub(&comm(&self.h, &self.e), &mat_scale(&self.e, &two)) == zero
            && mat_add(&comm(&self.h, &self.f), &mat_scale(&self.f, &two)) == zero
            && mat_sub(&comm(&self.e, &self.f), &self.h) == zero
    }
}

pub fn rep_map(n: usize) -> Result<Sl2Rep> {
    if n < 1 {
        return Err(Error::InvalidInput(
            "representation dimension must be at least 1".into(),
        ));
    }
    let mut e = mat_zero(n);
    let mut f = mat_zero(n);
    let mut h = mat_zero(n);
    for k in 0..n {
        h[k][k] = BigRational::from_integer(BigInt::from(n as i64 - 1 - 2 * k as i64));
        if k + 1 < n {
            f[k + 1][k] = BigRational::one();
            // 1-based e_{k, k+1} = k (n - k)
            e[k][k + 1] = BigRational::from_integer(BigInt::from((k + 1) * (n - k - 1)));
        }
    }
    Ok(Sl2Rep { n, e, f, h })
}

/// Image of `u`. Quotient elements must have `lambda = n`; full-mode
/// elements are evaluated term by term.
pub fn evaluate_rep(rep: &Sl2Rep, u: &UElement) -> Result<Matrix> {
    if let Mode::Quotient(l) = &u.mode {
        if *l != BigRational::from_integer(BigInt::from(rep.n)) {
            return Err(Error::ParameterMismatch(format!(
                "element lives in U_lambda with lambda = {l}, representation has n = {}",
                rep.n
            )));
        }
    }
    let mut out = mat_zero(rep.n);
    for (&[a, b, c], k) in &u.terms {
        let m = mat_mul(
            &mat_mul(&mat_pow(&rep.f, a), &mat_pow(&rep.h, b)),
            &mat_pow(&rep.e, c),
        );
        out = mat_add(&out, &mat_scale(&m, k));
    }
    Ok(out)
}

/// PBW monomials of filtration degree at most `d`; in quotient mode only
/// h-exponents 0 and 1.
pub fn pbw_monomials(mode: &Mode, d: u32) -> Vec<Pbw> {
    let max_h = if matches!(mode, Mode::Quotient(_)) {
        1
    } else {
        d
    };
    let mut out = Vec::new();
    for deg in 0..=d {
        for a in 0..=deg {
            for b in 0..=(deg - a).min(max_h) {
                out.push([a, b, deg - a - b]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub degree: u32,
    pub rank: usize,
    pub target: usize,
    pub monomials_tested: usize,
    /// Smallest degree whose monomials already reach `rank`.
    pub minimal_degree: u32,
    pub surjective: bool,
    pub note: Option<String>,
}

/// Rank of the images of the quotient PBW monomials of degree `<= d` in
/// `Mat(n)` under the representation at `lambda = n`.
pub fn ideal_codim_probe(n: usize, d: u32) -> Result<ProbeReport> {
    let rep = rep_map(n)?;
    let mode = Mode::Quotient(BigRational::from_integer(BigInt::from(n)));
    let monomials = pbw_monomials(&mode, d);
    let images = monomials
        .par_iter()
        .map(|&m| {
            let u = UElement::monomial(mode.clone(), d, m, BigRational::one());
            evaluate_rep(&rep, &u).map(|img| (degree_of(&m), img))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ech = Echelon::new(FieldSpec::Rationals, n * n)?;
    let mut minimal_degree = 0;
    for (deg, img) in images {
        let v = img.into_iter().flatten().map(Scalar::Rational).collect();
        if ech.insert(v)? {
            minimal_degree = deg;
        }
    }
    let rank = ech.rank();
    let target = n * n;
    let note = (rank < target).then(|| {
        format!("degree {d} is below the window needed to reach Mat({n}); at least 2(n - 1) is required")
    });
    Ok(ProbeReport {
        n,
        degree: d,
        rank,
        target,
        monomials_tested: monomials.len(),
        minimal_degree,
        surjective: rank == target,
        note,
    })
}
