//! Exact scalars: rationals, residues modulo an odd prime, and polynomials
//! in the coupling parameter `nu` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The coefficient domain of an algebra or matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    /// Residues modulo an odd prime `p < 2^32`.
    PrimeField(u64),
    /// The ring `Q[nu]`. Not a field: elimination rejects it.
    NuPolynomials,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
            FieldSpec::NuPolynomials => write!(f, "Qnu"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Prime field `F_p`; rejects `p = 2`, composites, and moduli that do
    /// not fit in 32 bits.
    pub fn prime(p: u64) -> Result<Self> {
        if !(3..(1 << 32)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, FieldSpec::NuPolynomials)
    }

    pub fn require_field(&self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::UnsupportedField(*self))
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldSpec::PrimeField(p) => Scalar::Modular {
                residue: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
            FieldSpec::NuPolynomials => {
                Scalar::Nu(NuPoly::constant(BigRational::from_integer(n.into())))
            }
        }
    }

    /// Image of a rational number; fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldSpec::PrimeField(p) => {
                let num = mod_bigint(q.numer(), p);
                let den = mod_bigint(q.denom(), p);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Modular {
                    residue: mul_mod(num, inv_mod(den, p), p),
                    modulus: p,
                })
            }
            FieldSpec::NuPolynomials => Ok(Scalar::Nu(NuPoly::constant(q.clone()))),
        }
    }

    /// Parses the canonical string form of a scalar of this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rational(parse_rational(s)?)),
            FieldSpec::PrimeField(p) => {
                if let Some((r, m)) = s.split_once("mod") {
                    let m: u64 = m
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
                    if m != p {
                        return Err(Error::Parse(format!("modulus {m} in {s:?}, field is F{p}")));
                    }
                    self.from_rational(&parse_rational(r.trim())?)
                } else {
                    self.from_rational(&parse_rational(s)?)
                }
            }
            FieldSpec::NuPolynomials => Ok(Scalar::Nu(s.parse()?)),
        }
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        ))
    }
}

pub(crate) fn mod_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Moduli are below 2^32, so reduced operands multiply without overflow.
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// A polynomial in `nu` with rational coefficients, lowest degree first.
/// Never stores trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NuPoly {
    coeffs: Vec<BigRational>,
}

impl NuPoly {
    pub fn zero() -> Self {
        NuPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// The monomial `nu`.
    pub fn nu() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        NuPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }
}

impl Add<&NuPoly> for &NuPoly {
    type Output = NuPoly;
    fn add(self, rhs: &NuPoly) -> NuPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        NuPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&NuPoly> for &NuPoly {
    type Output = NuPoly;
    fn sub(self, rhs: &NuPoly) -> NuPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        NuPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&NuPoly> for &NuPoly {
    type Output = NuPoly;
    fn mul(self, rhs: &NuPoly) -> NuPoly {
        if self.is_zero() || rhs.is_zero() {
            return NuPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        NuPoly::from_coeffs(out)
    }
}

impl Neg for &NuPoly {
    type Output = NuPoly;
    fn neg(self) -> NuPoly {
        NuPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for NuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*nu")?,
                _ => write!(f, "{c}*nu^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for NuPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty nu-polynomial".into()));
        }
        let mut coeffs: Vec<BigRational> = Vec::new();
        for term in compact.split('+') {
            let (coef, power) = match term.find("nu") {
                None => (parse_rational(term)?, 0usize),
                Some(pos) => {
                    let head = term[..pos].trim_end_matches('*');
                    let coef = match head {
                        "" => BigRational::one(),
                        "-" => -BigRational::one(),
                        h => parse_rational(h)?,
                    };
                    let tail = &term[pos + 2..];
                    let power = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| Error::Parse(format!("bad nu power in {term:?}")))?
                    };
                    (coef, power)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigRational::zero());
            }
            coeffs[power] += coef;
        }
        Ok(NuPoly::from_coeffs(coeffs))
    }
}

/// An exact scalar tagged with its domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { residue: u64, modulus: u64 },
    Nu(NuPoly),
}

/// Binary operation selector for [`scalar_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic: reports field mismatches and bad divisions
/// as errors instead of panicking.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.field(),
            right: b.field(),
        });
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::PrimeField(*modulus),
            Scalar::Nu(_) => FieldSpec::NuPolynomials,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { residue, .. } => *residue == 0,
            Scalar::Nu(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { residue, .. } => *residue == 1,
            Scalar::Nu(p) => p.coeffs().len() == 1 && p.coeffs()[0].is_one(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(q.recip()))
                }
            }
            Scalar::Modular { residue, modulus } => {
                if *residue == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Modular {
                        residue: inv_mod(*residue, *modulus),
                        modulus: *modulus,
                    })
                }
            }
            Scalar::Nu(p) => {
                if p.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Err(Error::UnsupportedField(FieldSpec::NuPolynomials))
                }
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_nu(&self) -> Option<&NuPoly> {
        match self {
            Scalar::Nu(p) => Some(p),
            _ => None,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Modular {
                    residue: a,
                    modulus: p,
                },
                Scalar::Modular {
                    residue: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Modular {
                residue: (a + b) % p,
                modulus: *p,
            },
            (Scalar::Nu(a), Scalar::Nu(b)) => Scalar::Nu(a + b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Modular {
                    residue: a,
                    modulus: p,
                },
                Scalar::Modular {
                    residue: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Modular {
                residue: (a + p - b) % p,
                modulus: *p,
            },
            (Scalar::Nu(a), Scalar::Nu(b)) => Scalar::Nu(a - b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Modular {
                    residue: a,
                    modulus: p,
                },
                Scalar::Modular {
                    residue: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Modular {
                residue: mul_mod(*a, *b, *p),
                modulus: *p,
            },
            (Scalar::Nu(a), Scalar::Nu(b)) => Scalar::Nu(a * b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
            Scalar::Nu(a) => Scalar::Nu(-a),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Modular { residue, modulus } => write!(f, "{residue} mod {modulus}"),
            Scalar::Nu(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Sign as a scalar: `(-1)^k`.
pub(crate) fn sign(field: FieldSpec, negative: bool) -> Scalar {
    field.from_i64(if negative { -1 } else { 1 })
}
