//! Text grammar for polynomials and rationals.
//!
//! Coefficients are integers or rationals `a/b`, the variable is `x` (or
//! `X`), powers use a caret: `x^4 - 6x^3 + 4x^2 - 2x - 2`. A `*` between
//! coefficient and variable is optional, as are parentheses around a
//! rational coefficient: `(2/3)x - 1` and `2/3x - 1` both parse to the same
//! polynomial.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::poly::{IntPolynomial, RatPolynomial};
use super::{Int, Rat};
use crate::error::Error;

/// Parses a rational like `3/2`, `-5`, `7`.
pub fn parse_rational(input: &str) -> Result<Rat, Error> {
    let s = input.trim();
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r.trim()),
        None => (1, s.strip_prefix('+').unwrap_or(s).trim()),
    };
    let (num_s, den_s) = match rest.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (rest, "1"),
    };
    let num: Int = num_s
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {input:?}")))?;
    let den: Int = den_s
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {input:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {input:?}")));
    }
    Ok(Rat::new(num * Int::from(sign), den))
}

/// Parses the polynomial grammar into a rational-coefficient polynomial.
pub fn parse_rat_polynomial(input: &str) -> Result<RatPolynomial, Error> {
    Parser::new(input).parse()
}

/// Parses and requires integer coefficients.
pub fn parse_int_polynomial(input: &str) -> Result<IntPolynomial, Error> {
    let rp = parse_rat_polynomial(input)?;
    let mut coeffs = Vec::with_capacity(rp.coeffs().len());
    for c in rp.coeffs() {
        if !c.is_integer() {
            return Err(Error::Parse(format!(
                "expected integer coefficients, found {c} in {input:?}"
            )));
        }
        coeffs.push(c.numer().clone());
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            chars: input.chars().collect(),
            pos: 0,
            input,
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().map(char::is_whitespace).unwrap_or(false) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn fail<T>(&self, msg: &str) -> Result<T, Error> {
        Err(Error::Parse(format!(
            "{msg} at position {} in {:?}",
            self.pos, self.input
        )))
    }

    fn parse(mut self) -> Result<RatPolynomial, Error> {
        let mut terms: Vec<(usize, Rat)> = Vec::new();
        self.skip_ws();
        if self.peek().is_none() {
            return self.fail("empty polynomial");
        }
        let mut sign = 1i32;
        match self.peek() {
            Some('+') => {
                self.bump();
            }
            Some('-') => {
                self.bump();
                sign = -1;
            }
            _ => {}
        }
        loop {
            let (exp, coeff) = self.term()?;
            terms.push((exp, coeff * Rat::from_integer(Int::from(sign))));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => {
                    self.bump();
                    sign = 1;
                }
                Some('-') => {
                    self.bump();
                    sign = -1;
                }
                Some(c) => return self.fail(&format!("unexpected character {c:?}")),
            }
        }
        let max_exp = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let mut coeffs = alloc::vec![Rat::zero(); max_exp + 1];
        for (e, c) in terms {
            coeffs[e] += c;
        }
        Ok(RatPolynomial::from_coeffs(coeffs))
    }

    /// One signless term: `coeff`, `x^k`, `coeff x^k`, `coeff * x^k`,
    /// `(a/b) x^k`.
    fn term(&mut self) -> Result<(usize, Rat), Error> {
        self.skip_ws();
        let mut coeff: Option<Rat> = None;
        match self.peek() {
            Some('(') => {
                self.bump();
                self.skip_ws();
                let mut inner_sign = 1;
                if self.peek() == Some('-') {
                    self.bump();
                    inner_sign = -1;
                }
                let c = self.number()?;
                self.skip_ws();
                if self.bump() != Some(')') {
                    return self.fail("expected ')'");
                }
                coeff = Some(c * Rat::from_integer(Int::from(inner_sign)));
            }
            Some(c) if c.is_ascii_digit() => {
                coeff = Some(self.number()?);
            }
            _ => {}
        }
        self.skip_ws();
        if self.peek() == Some('*') {
            if coeff.is_none() {
                return self.fail("'*' without coefficient");
            }
            self.bump();
            self.skip_ws();
        }
        let has_var = matches!(self.peek(), Some('x') | Some('X'));
        if !has_var {
            return match coeff {
                Some(c) => Ok((0, c)),
                None => self.fail("expected coefficient or variable"),
            };
        }
        self.bump();
        self.skip_ws();
        let exp = if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            self.unsigned_integer()? as usize
        } else {
            1
        };
        Ok((exp, coeff.unwrap_or_else(|| Rat::from_integer(Int::from(1)))))
    }

    /// `digits` or `digits/digits`.
    fn number(&mut self) -> Result<Rat, Error> {
        let num = self.unsigned_big()?;
        self.skip_ws();
        // a '/' starts a rational only when followed by a digit; leave other
        // uses (there are none in the grammar) as errors downstream
        if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            let den = self.unsigned_big()?;
            if den.is_zero() {
                return self.fail("zero denominator");
            }
            return Ok(Rat::new(num, den));
        }
        Ok(Rat::from_integer(num))
    }

    fn unsigned_big(&mut self) -> Result<Int, Error> {
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected digits");
        }
        let s: alloc::string::String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| Error::Parse(format!("bad integer {s:?} in {:?}", self.input)))
    }

    fn unsigned_integer(&mut self) -> Result<u32, Error> {
        let v = self.unsigned_big()?;
        u32::try_from(v)
            .map_err(|_| Error::Parse(format!("exponent too large in {:?}", self.input)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parses_the_reference_polynomial() {
        let f = parse_int_polynomial("x^4 - 6x^3 + 4x^2 - 2x - 2").unwrap();
        assert_eq!(f, IntPolynomial::from_i64(&[-2, -2, 4, -6, 1]));
        assert_eq!(f.to_string(), "x^4 - 6x^3 + 4x^2 - 2x - 2");
    }

    #[test]
    fn parses_constants_and_monomials() {
        assert_eq!(parse_int_polynomial("5").unwrap(), IntPolynomial::from_i64(&[5]));
        assert_eq!(parse_int_polynomial("x").unwrap(), IntPolynomial::from_i64(&[0, 1]));
        assert_eq!(
            parse_int_polynomial("7x^3").unwrap(),
            IntPolynomial::from_i64(&[0, 0, 0, 7])
        );
        assert_eq!(
            parse_int_polynomial("2*x^2 + 1").unwrap(),
            IntPolynomial::from_i64(&[1, 0, 2])
        );
    }

    #[test]
    fn rational_coefficients() {
        let f = parse_rat_polynomial("(2/3)x - 1").unwrap();
        assert_eq!(f.coeff(1), Rat::new(Int::from(2), Int::from(3)));
        assert_eq!(f.coeff(0), Rat::from_integer(Int::from(-1)));
        let g = parse_rat_polynomial("2/3x - 1").unwrap();
        assert_eq!(f, g);
        assert!(parse_int_polynomial("2/3x").is_err());
    }

    #[test]
    fn repeated_terms_accumulate() {
        assert_eq!(
            parse_int_polynomial("x + x + 1").unwrap(),
            IntPolynomial::from_i64(&[1, 2])
        );
    }

    #[test]
    fn garbage_is_rejected() {
        assert!(parse_int_polynomial("").is_err());
        assert!(parse_int_polynomial("x^").is_err());
        assert!(parse_int_polynomial("3 +").is_err());
        assert!(parse_int_polynomial("y + 1").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn rational_scalar_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), Rat::new(Int::from(3), Int::from(2)));
        assert_eq!(parse_rational("-5").unwrap(), Rat::from_integer(Int::from(-5)));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), Rat::new(Int::from(2), Int::from(3)));
    }
}
