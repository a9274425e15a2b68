//! Text syntax for polynomials.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := coeff | coeff "*" mono | mono
//! mono     := "x" ["^" exponent]
//! exponent := integer | "(" integer "/" integer ")"
//! ```
//!
//! Whitespace is ignored, and any term may carry a leading sign.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use puiseux::{Error as CoreError, IntPoly, MonAlgPoly, PuiseuxParam};
use thiserror::Error;

/// Largest integer exponent accepted in integer mode.
pub const MAX_INT_EXPONENT: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent {exponent} at position {pos} not allowed: {msg}")]
    ExponentDomain { pos: usize, exponent: String, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Integer,
    /// Exponents must have denominators compatible with this parameter.
    Rational(PuiseuxParam),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Int(IntPoly),
    Alg(MonAlgPoly),
}

struct Term {
    pos: usize,
    exp_pos: usize,
    coeff: BigInt,
    exp: BigRational,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{}'", b as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn exponent(&mut self) -> Result<BigRational, ParseError> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let num = self.integer()?;
            self.expect(b'/')?;
            let den_pos = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(ParseError::ExponentDomain {
                    pos: den_pos,
                    exponent: format!("{num}/0"),
                    msg: "zero denominator".into(),
                });
            }
            self.expect(b')')?;
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(self.integer()?))
        }
    }

    /// `x ["^" exponent]`, positioned at the `x`.
    fn mono(&mut self) -> Result<(usize, BigRational), ParseError> {
        self.expect(b'x')?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            Ok((at, self.exponent()?))
        } else {
            Ok((self.pos, BigRational::one()))
        }
    }

    fn term(&mut self, sign: i32) -> Result<Term, ParseError> {
        let mut sign = sign;
        let pos = match self.peek() {
            Some(_) => self.pos,
            None => return self.error("expected a term"),
        };
        if let Some(b @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            if b == b'-' {
                sign = -sign;
            }
        }
        match self.peek() {
            Some(b'x') => {
                let (exp_pos, exp) = self.mono()?;
                Ok(Term { pos, exp_pos, coeff: BigInt::from(sign), exp })
            }
            Some(b) if b.is_ascii_digit() => {
                let c = self.integer()? * sign;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    let (exp_pos, exp) = self.mono()?;
                    Ok(Term { pos, exp_pos, coeff: c, exp })
                } else {
                    Ok(Term { pos, exp_pos: self.pos, coeff: c, exp: BigRational::zero() })
                }
            }
            _ => self.error("expected a coefficient or 'x'"),
        }
    }

    fn expr(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut terms = vec![self.term(1)?];
        loop {
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term(1)?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(self.term(-1)?);
                }
                Some(_) => return self.error("expected '+', '-' or end of input"),
            }
        }
    }
}

fn terms_of(text: &str) -> Result<Vec<Term>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.expr()
}

pub fn parse_int_poly(text: &str) -> Result<IntPoly, ParseError> {
    let mut coeffs: Vec<BigInt> = Vec::new();
    for t in terms_of(text)? {
        let domain = |msg: &str| ParseError::ExponentDomain {
            pos: t.exp_pos,
            exponent: t.exp.to_string(),
            msg: msg.into(),
        };
        if !t.exp.is_integer() {
            return Err(domain("rational exponent in integer mode"));
        }
        let k = t
            .exp
            .to_integer()
            .to_usize()
            .filter(|&k| k <= MAX_INT_EXPONENT)
            .ok_or_else(|| domain("exponent too large"))?;
        if k >= coeffs.len() {
            coeffs.resize(k + 1, BigInt::zero());
        }
        coeffs[k] += t.coeff;
    }
    Ok(IntPoly::new(coeffs))
}

pub fn parse_monalg(text: &str, param: &PuiseuxParam) -> Result<MonAlgPoly, ParseError> {
    let terms = terms_of(text)?;
    for t in &terms {
        if let Err(e) = MonAlgPoly::new([(t.exp.clone(), BigInt::one())], param.clone()) {
            let msg = match e {
                CoreError::IncompatibleDenominator(_) => {
                    format!("denominator is not compatible with q = {param}")
                }
                other => other.to_string(),
            };
            return Err(ParseError::ExponentDomain { pos: t.exp_pos, exponent: t.exp.to_string(), msg });
        }
    }
    let first = terms.first().map_or(0, |t| t.pos);
    MonAlgPoly::new(terms.into_iter().map(|t| (t.exp, t.coeff)), param.clone())
        .map_err(|e| ParseError::Syntax { pos: first, msg: e.to_string() })
}

pub fn parse_poly(text: &str, mode: &Mode) -> Result<Parsed, ParseError> {
    match mode {
        Mode::Integer => parse_int_poly(text).map(Parsed::Int),
        Mode::Rational(p) => parse_monalg(text, p).map(Parsed::Alg),
    }
}

/// Parses `n` or `n/d` into a positive parameter.
pub fn parse_param(text: &str) -> Result<PuiseuxParam, String> {
    let q = parse_rational(text)?;
    if !q.is_positive() {
        return Err(format!("q = {text} must be positive"));
    }
    PuiseuxParam::from_rational(&q).map_err(|e| e.to_string())
}

/// Parses an optionally signed `n` or `n/d`.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator in '{text}'"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator in '{text}'"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in '{text}'"));
    }
    Ok(BigRational::new(num, den))
}
