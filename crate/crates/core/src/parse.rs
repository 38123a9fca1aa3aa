//! Text syntax for polynomials in `x` and `y`.
//!
//! Accepted: integer and `a/b` rational literals, the variables `x` and `y`
//! (or `X` and `Y`), `+ - *`, nonnegative integer exponents `^n` and
//! parentheses. Juxtaposition multiplies, so `3x^2y` reads as `3*x^2*y`.
//! Expressions are expanded exactly over the rationals before being mapped
//! into the target field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::form::BinaryForm;

/// Sparse polynomial: `(x exponent, y exponent) -> coefficient`.
type Poly = BTreeMap<(usize, usize), BigRational>;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = j + 1;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Num(s[i..end].parse().expect("digits")));
            }
            _ => {
                chars.next();
                out.push(match c {
                    'x' | 'X' => Token::Var(0),
                    'y' | 'Y' => Token::Var(1),
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    other => {
                        return Err(Error::Parse(format!(
                            "unexpected character {other:?} at offset {i}"
                        )))
                    }
                });
            }
        }
    }
    Ok(out)
}

fn constant(c: BigRational) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert((0, 0), c);
    }
    p
}

fn add_into(acc: &mut Poly, rhs: Poly, sign: bool) {
    for (k, v) in rhs {
        let e = acc.entry(k).or_insert_with(BigRational::zero);
        if sign {
            *e += v;
        } else {
            *e -= v;
        }
        if e.is_zero() {
            acc.remove(&k);
        }
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(a1, b1), u) in a {
        for (&(a2, b2), v) in b {
            let mut term = Poly::new();
            term.insert((a1 + a2, b1 + b2), u * v);
            add_into(&mut out, term, true);
        }
    }
    out
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::new();
        let mut sign = true;
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                sign = false;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            add_into(&mut acc, t, sign);
            match self.peek() {
                Some(Token::Plus) => sign = true,
                Some(Token::Minus) => sign = false,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                }
                Some(Token::Num(_) | Token::Var(_) | Token::LParen) => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let Some(Token::Num(e)) = self.next() else {
                return Err(Error::Parse("expected an integer exponent after '^'".into()));
            };
            let e: usize = (&e)
                .try_into()
                .map_err(|_| Error::Parse(format!("exponent {e} is too large")))?;
            let mut acc = constant(BigRational::one());
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.next() {
            Some(Token::Num(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    let Some(Token::Num(d)) = self.next() else {
                        return Err(Error::Parse("expected an integer denominator after '/'".into()));
                    };
                    if d.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    return Ok(constant(BigRational::new(n, d)));
                }
                Ok(constant(BigRational::from_integer(n)))
            }
            Some(Token::Var(v)) => {
                let mut p = Poly::new();
                p.insert(if v == 0 { (1, 0) } else { (0, 1) }, BigRational::one());
                Ok(p)
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse("unbalanced parentheses".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

fn parse_poly(s: &str) -> Result<Poly> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(poly)
}

/// Parses a homogeneous polynomial into a [`BinaryForm`]; `0` gives the zero
/// form. Inhomogeneous input is rejected.
pub fn parse_form<F: Field>(field: &F, s: &str) -> Result<BinaryForm<F::Elem>> {
    let poly = parse_poly(s)?;
    let Some(degree) = poly.keys().next().map(|(a, b)| a + b) else {
        return Ok(BinaryForm::zero());
    };
    if let Some((a, b)) = poly.keys().find(|(a, b)| a + b != degree) {
        return Err(Error::Parse(format!(
            "inhomogeneous polynomial {s:?}: terms of degree {degree} and {}",
            a + b
        )));
    }
    let mut coeffs = vec![field.zero(); degree + 1];
    for (&(_, b), c) in &poly {
        coeffs[b] = field.from_ratio(c.numer(), c.denom()).ok_or_else(|| {
            Error::Parse(format!("coefficient {c} has a denominator divisible by the characteristic"))
        })?;
    }
    Ok(BinaryForm::from_coeffs(field, coeffs))
}
