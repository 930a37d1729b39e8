//! Algebra expressions such as `psq(3)`, `mat-super(1,2)@F3` or
//! `queerify-assoc(clifford(2,-1,natural))`, and polynomial expressions
//! in `x1..xN` and `nu`.

use num_rational::BigRational;
use queerify_core::construct::{
    clifford, direct_sum, group_algebra, mat, mat_super, q_assoc, CliffordGrading, FiniteGroup,
};
use queerify_core::dunkl::XPolynomial;
use queerify_core::lie::{derived, herstein_l, lie_of, montgomery_sl, LieMode};
use queerify_core::queer::{q_lie, queerify_assoc, queerify_lie, QueerTower};
use queerify_core::{Error, FieldSpec, NuPoly, Result, SuperAlgebra};

/// `Q`, `Qnu`, `F7`, `Fp7`, `F_7` or `GF7`.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let t = s.trim();
    match t {
        "Q" | "q" => return Ok(FieldSpec::Rationals),
        "Qnu" | "qnu" => return Ok(FieldSpec::NuPolynomials),
        _ => {}
    }
    let digits = ["GF", "Fp", "F_", "F"]
        .iter()
        .find_map(|p| t.strip_prefix(p))
        .ok_or_else(|| Error::Parse(format!("unknown field {t:?}; expected Q, Qnu or Fp")))?;
    let p = digits
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad prime in field {t:?}")))?;
    FieldSpec::prime(p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    name: String,
    args: Option<Vec<Node>>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn node(&mut self) -> Result<Node> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '/' | '.'))
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a name or number"));
        }
        let name = self.src[start..self.pos].to_string();
        self.skip_ws();
        if self.peek() != Some('(') {
            return Ok(Node { name, args: None });
        }
        self.pos += 1;
        let mut args = Vec::new();
        self.skip_ws();
        if self.peek() == Some(')') {
            self.pos += 1;
            return Ok(Node {
                name,
                args: Some(args),
            });
        }
        loop {
            args.push(self.node()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    return Ok(Node {
                        name,
                        args: Some(args),
                    });
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
    }
}

fn usize_arg(node: &Node) -> Result<usize> {
    node.name.parse().map_err(|_| {
        Error::Parse(format!(
            "expected a non-negative integer, got {:?}",
            node.name
        ))
    })
}

fn arity(node: &Node, lo: usize, hi: usize) -> Result<&[Node]> {
    let args = node.args.as_deref().unwrap_or(&[]);
    if args.len() < lo || args.len() > hi {
        let want = if lo == hi {
            lo.to_string()
        } else {
            format!("{lo} to {hi}")
        };
        return Err(Error::Parse(format!(
            "{} takes {want} arguments, got {}",
            node.name,
            args.len()
        )));
    }
    Ok(args)
}

fn eval(node: &Node, field: FieldSpec) -> Result<SuperAlgebra> {
    let name = node.name.replace('_', "-").to_lowercase();
    if node.args.is_none() {
        return Err(Error::Parse(format!(
            "{:?} is not an algebra expression",
            node.name
        )));
    }
    let tower = |n: &Node| QueerTower::new(field, usize_arg(n)?);
    match name.as_str() {
        "mat" => mat(field, usize_arg(&arity(node, 1, 1)?[0])?),
        "mat-super" => {
            let a = arity(node, 2, 2)?;
            mat_super(field, usize_arg(&a[0])?, usize_arg(&a[1])?)
        }
        "q-assoc" => q_assoc(field, usize_arg(&arity(node, 1, 1)?[0])?),
        "clifford" | "cliff" => {
            let a = arity(node, 2, 3)?;
            let grading = match a.get(2).map(|g| g.name.to_lowercase()).as_deref() {
                None | Some("natural") => CliffordGrading::Natural,
                Some("trivial") => CliffordGrading::Trivial,
                Some(other) => {
                    return Err(Error::Parse(format!("unknown Clifford grading {other:?}")))
                }
            };
            clifford(
                field,
                usize_arg(&a[0])?,
                &field.parse_scalar(&a[1].name)?,
                grading,
            )
        }
        "group-algebra" => {
            let a = arity(node, 2, 2)?;
            let n = usize_arg(&a[1])?;
            let g = match a[0].name.to_lowercase().as_str() {
                "cyclic" => FiniteGroup::cyclic(n)?,
                "symmetric" => FiniteGroup::symmetric(n)?,
                other => return Err(Error::Parse(format!("unknown group family {other:?}"))),
            };
            group_algebra(field, &g)
        }
        "q" => q_lie(field, usize_arg(&arity(node, 1, 1)?[0])?),
        "sq" => Ok(tower(&arity(node, 1, 1)?[0])?.sq),
        "pq" => Ok(tower(&arity(node, 1, 1)?[0])?.pq),
        "psq" => Ok(tower(&arity(node, 1, 1)?[0])?.psq),
        "queerify-assoc" => queerify_assoc(&eval(&arity(node, 1, 1)?[0], field)?),
        "queerify-lie" => queerify_lie(&eval(&arity(node, 1, 1)?[0], field)?),
        "lie-of" => {
            let a = arity(node, 1, 2)?;
            let mode = match a.get(1).map(|m| m.name.to_lowercase()).as_deref() {
                None | Some("super") => LieMode::Super,
                Some("plain") => LieMode::Plain,
                Some(other) => return Err(Error::Parse(format!("unknown Lie mode {other:?}"))),
            };
            lie_of(&eval(&a[0], field)?, mode)
        }
        "derived" => Ok(derived(&eval(&arity(node, 1, 1)?[0], field)?)?.1),
        "herstein" => Ok(herstein_l(&eval(&arity(node, 1, 1)?[0], field)?)?.algebra),
        "montgomery-sl" => Ok(montgomery_sl(&eval(&arity(node, 1, 1)?[0], field)?)?.algebra),
        "direct-sum" => {
            let a = arity(node, 2, 2)?;
            direct_sum(&eval(&a[0], field)?, &eval(&a[1], field)?)
        }
        other => Err(Error::Parse(format!("unknown construction {other:?}"))),
    }
}

/// Builds the algebra named by `src`. A trailing `@FIELD` overrides
/// `default_field`.
pub fn parse_algebra(src: &str, default_field: FieldSpec) -> Result<SuperAlgebra> {
    let (body, field) = match src.rsplit_once('@') {
        Some((b, f)) => (b, parse_field(f)?),
        None => (src, default_field),
    };
    let mut p = Parser { src: body, pos: 0 };
    let node = p.node()?;
    p.skip_ws();
    if p.pos != body.len() {
        return Err(p.error("trailing input"));
    }
    eval(&node, field)
}

/// Polynomials such as `x1^2 + (1/2)*nu*x1*x2 - 3`.
pub fn parse_polynomial(src: &str, n: usize) -> Result<XPolynomial> {
    let mut p = PolyParser {
        src: src.as_bytes(),
        text: src,
        pos: 0,
        n,
    };
    let f = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

struct PolyParser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    n: usize,
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in polynomial {:?}",
            self.pos, self.text
        ))
    }

    fn number(&mut self) -> u32 {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().unwrap_or(0)
    }

    fn constant(&self, c: BigRational) -> XPolynomial {
        XPolynomial::monomial(self.n, vec![0; self.n], NuPoly::constant(c))
    }

    fn sum(&mut self) -> Result<XPolynomial> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.product()?.scale(&NuPoly::from_i64(-1))
            }
            _ => self.product()?,
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.product()?;
            acc = if op == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<XPolynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<XPolynomial> {
        let base = self.factor()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let e = self.number();
        Ok((0..e).fold(
            self.constant(BigRational::from_integer(1.into())),
            |acc, _| acc.mul(&base),
        ))
    }

    fn factor(&mut self) -> Result<XPolynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.number() as usize;
                XPolynomial::variable(self.n, i)
            }
            Some(b'n') if self.text[self.pos..].starts_with("nu") => {
                self.pos += 2;
                Ok(XPolynomial::monomial(self.n, vec![0; self.n], NuPoly::nu()))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/')
                {
                    self.pos += 1;
                }
                let q: BigRational = self.text[start..self.pos]
                    .parse()
                    .map_err(|_| self.error("bad rational"))?;
                Ok(self.constant(q))
            }
            _ => Err(self.error("expected x<i>, nu, a number or '('")),
        }
    }
}
