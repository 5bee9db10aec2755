//! Dense univariate polynomials over the integers and rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, Rat};
use crate::error::Error;

/// Dense integer-coefficient polynomial, indexed by degree, trailing zeros
/// trimmed. The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<Int>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(Int::one())
    }

    pub fn constant(c: Int) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    /// `c * x^exp`.
    pub fn monomial(c: Int, exp: usize) -> Self {
        let mut coeffs = vec![Int::zero(); exp + 1];
        coeffs[exp] = c;
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Builds from ascending-degree coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Int {
        self.coeffs.get(k).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Sum of the coefficients, i.e. the value at 1. For a formal sum of
    /// atoms this is its length.
    pub fn eval_at_one(&self) -> Int {
        self.coeffs.iter().sum()
    }

    pub fn eval_int(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Int::from(i))
            .collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![Int::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Nonnegative gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Splits a nonzero polynomial into `(content, primitive part)` with
    /// `content > 0` and `content * primitive == self`.
    pub fn content_primitive(&self) -> Result<(Int, IntPolynomial), Error> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let c = self.content();
        let prim = IntPolynomial {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        };
        Ok((c, prim))
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn primitive_normalized(&self) -> Result<IntPolynomial, Error> {
        let (_, mut p) = self.content_primitive()?;
        if p.leading().map(Signed::is_negative).unwrap_or(false) {
            p = -&p;
        }
        Ok(p)
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Quotient and remainder over the rationals: `self = q*g + r` with
    /// `deg r < deg g`.
    pub fn divrem_rational(
        &self,
        g: &IntPolynomial,
    ) -> Result<(RatPolynomial, RatPolynomial), Error> {
        self.to_rational().divrem(&g.to_rational())
    }

    /// Exact division over the integers; `None` if `g` does not divide
    /// `self` in `Z[x]`.
    pub fn div_exact(&self, g: &IntPolynomial) -> Option<IntPolynomial> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let n = self.degree()?;
        let d = g.degree()?;
        if n < d {
            return None;
        }
        let lead = g.leading()?.clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Int::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let top = rem[k + d].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                rem[k + i] -= &q * gc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::from_coeffs(quot))
    }

    /// Primitive gcd with positive leading coefficient (Euclid over the
    /// rationals, then normalized). `gcd(0, 0) = 0`.
    pub fn gcd(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
        let mut a = f.to_rational();
        let mut b = g.to_rational();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("divisor checked nonzero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return IntPolynomial::zero();
        }
        let (_, prim) = a.content_primitive();
        prim.primitive_normalized()
            .expect("nonzero by construction")
    }

    /// Square-free test via `gcd(f, f')`.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = IntPolynomial::gcd(self, &self.derivative());
        g.degree() == Some(0)
    }

    /// Number of sign changes in the coefficient sequence (zeros skipped).
    pub fn sign_variations(&self) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for c in &self.coeffs {
            let s = match c.sign() {
                num_bigint::Sign::Plus => 1i8,
                num_bigint::Sign::Minus => -1i8,
                num_bigint::Sign::NoSign => 0i8,
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.len(), |k| RatOrInt::Int(self.coeff(k)))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Dense rational-coefficient polynomial; same layout conventions as
/// [`IntPolynomial`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPolynomial {
    coeffs: Vec<Rat>,
}

impl RatPolynomial {
    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Long division: `self = q*g + r`, `deg r < deg g`.
    pub fn divrem(&self, g: &RatPolynomial) -> Result<(RatPolynomial, RatPolynomial), Error> {
        if g.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        let d = g.degree().expect("nonzero");
        let lead = g.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((RatPolynomial::zero(), self.clone()));
        }
        let qlen = rem.len() - d;
        let mut quot = vec![Rat::zero(); qlen];
        for k in (0..qlen).rev() {
            let q = &rem[k + d] / &lead;
            if q.is_zero() {
                continue;
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                let v = &q * gc;
                rem[k + i] -= v;
            }
            quot[k] = q;
        }
        rem.truncate(d);
        Ok((
            RatPolynomial::from_coeffs(quot),
            RatPolynomial::from_coeffs(rem),
        ))
    }

    /// Writes `self = content * primitive` with `primitive` an integer
    /// polynomial of content 1. Returns `(0, zero)` for the zero polynomial.
    pub fn content_primitive(&self) -> (Rat, IntPolynomial) {
        if self.is_zero() {
            return (Rat::zero(), IntPolynomial::zero());
        }
        let mut den_lcm = Int::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let as_int = IntPolynomial::from_coeffs(ints);
        let (content, prim) = as_int.content_primitive().expect("nonzero");
        (Rat::new(content, den_lcm), prim)
    }

    /// Clears denominators: smallest positive integer `l` such that
    /// `l * self` has integer coefficients, together with that polynomial.
    pub fn clear_denominators(&self) -> (Int, IntPolynomial) {
        let mut den_lcm = Int::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        (den_lcm, IntPolynomial::from_coeffs(ints))
    }

    pub fn scale(&self, s: &Rat) -> RatPolynomial {
        RatPolynomial::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        RatPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        RatPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.len(), |k| RatOrInt::Rat(self.coeff(k)))
    }
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPolynomial({self})")
    }
}

enum RatOrInt {
    Int(Int),
    Rat(Rat),
}

impl RatOrInt {
    fn is_zero(&self) -> bool {
        match self {
            RatOrInt::Int(v) => v.is_zero(),
            RatOrInt::Rat(v) => v.is_zero(),
        }
    }
    fn is_negative(&self) -> bool {
        match self {
            RatOrInt::Int(v) => v.is_negative(),
            RatOrInt::Rat(v) => v.is_negative(),
        }
    }
    fn is_one_abs(&self) -> bool {
        match self {
            RatOrInt::Int(v) => v.abs().is_one(),
            RatOrInt::Rat(v) => v.abs().is_one(),
        }
    }
    fn fmt_abs(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatOrInt::Int(v) => write!(f, "{}", v.abs()),
            RatOrInt::Rat(v) => write!(f, "{}", v.abs()),
        }
    }
}

/// Shared printer matching the input grammar, highest degree first:
/// `x^4 - 6x^3 + 4x^2 - 2x - 2`.
fn write_poly(
    f: &mut fmt::Formatter<'_>,
    len: usize,
    coeff: impl Fn(usize) -> RatOrInt,
) -> fmt::Result {
    if len == 0 {
        return write!(f, "0");
    }
    let mut first = true;
    for k in (0..len).rev() {
        let c = coeff(k);
        if c.is_zero() {
            continue;
        }
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let unit = c.is_one_abs();
        if !unit || k == 0 {
            c.fmt_abs(f)?;
        }
        match k {
            0 => {}
            1 => write!(f, "x")?,
            _ => write!(f, "x^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    #[test]
    fn trims_and_reports_degree() {
        let f = p(&[1, 2, 0, 0]);
        assert_eq!(f.degree(), Some(1));
        assert!(IntPolynomial::zero().degree().is_none());
        assert_eq!(p(&[0, 0, 0]).coeffs().len(), 0);
    }

    #[test]
    fn support_skips_zero_coefficients() {
        let f = p(&[-2, -2, 4, -6, 1]);
        assert_eq!(f.support(), vec![0, 1, 2, 3, 4]);
        let g = p(&[0, 0, 6, 0, 0, 1]);
        assert_eq!(g.support(), vec![2, 5]);
    }

    #[test]
    fn exact_division_roundtrip() {
        // (x^2 - 1) / (x - 1) = x + 1 exactly
        let f = p(&[-1, 0, 1]);
        let g = p(&[-1, 1]);
        let (q, r) = f.divrem_rational(&g).unwrap();
        assert!(r.is_zero());
        let (_, qi) = q.content_primitive();
        assert_eq!(qi, p(&[1, 1]));
    }

    #[test]
    fn long_division_against_hand_computation() {
        // (x^5 + 6x^2) / (x^4 - 6x^3 + 4x^2 - 2x - 2):
        // quotient x + 6, remainder 32x^3 - 16x^2 + 14x + 12.
        let f = p(&[0, 0, 6, 0, 0, 1]);
        let g = p(&[-2, -2, 4, -6, 1]);
        let (q, r) = f.divrem_rational(&g).unwrap();
        let expect_q = p(&[6, 1]).to_rational();
        let expect_r = p(&[12, 14, -16, 32]).to_rational();
        assert_eq!(q, expect_q);
        assert_eq!(r, expect_r);
        // round-trip f = q*g + r
        let qg = &(q.content_primitive().1) * &g; // q is integral here
        let back = &qg + &p(&[12, 14, -16, 32]);
        assert_eq!(back, f);
    }

    #[test]
    fn divide_by_zero_is_an_error() {
        let f = p(&[1, 1]);
        assert_eq!(
            f.divrem_rational(&IntPolynomial::zero()).unwrap_err(),
            Error::DivisionByZeroPolynomial
        );
    }

    #[test]
    fn gcd_examples() {
        let f = p(&[-1, 0, 1]);
        let g = p(&[-1, 1]);
        assert_eq!(IntPolynomial::gcd(&f, &g), p(&[-1, 1]));
        // gcd is primitive with positive leading coefficient
        let a = p(&[0, -4, -4]); // -4x(x + 1)
        let b = p(&[0, 0, 2]); // 2x^2
        assert_eq!(IntPolynomial::gcd(&a, &b), p(&[0, 1]));
    }

    #[test]
    fn content_and_primitive() {
        let f = p(&[-3, 2]);
        let (c, prim) = f.content_primitive().unwrap();
        assert_eq!(c, Int::from(1));
        assert_eq!(prim, f);

        let g = p(&[-6, 0, 4]);
        let (c, prim) = g.content_primitive().unwrap();
        assert_eq!(c, Int::from(2));
        assert_eq!(prim, p(&[-3, 0, 2]));

        assert!(IntPolynomial::zero().content_primitive().is_err());
    }

    #[test]
    fn rational_input_clears_denominators() {
        // (2/3)x - 1 -> l = 3, primitive 2x - 3
        let f = RatPolynomial::from_coeffs(vec![
            Rat::new(Int::from(-1), Int::from(1)),
            Rat::new(Int::from(2), Int::from(3)),
        ]);
        let (l, cleared) = f.clear_denominators();
        assert_eq!(l, Int::from(3));
        assert_eq!(cleared, p(&[-3, 2]));
        let (content, prim) = f.content_primitive();
        assert_eq!(content, Rat::new(Int::from(1), Int::from(3)));
        assert_eq!(prim, p(&[-3, 2]));
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(p(&[0, 0, 6, 0, 0, 1]).eval_at_one(), Int::from(7));
        assert_eq!(IntPolynomial::zero().eval_at_one(), Int::from(0));
        assert_eq!(p(&[2, 4, 4, 2, 5]).eval_at_one(), Int::from(17));
    }

    #[test]
    fn display_matches_grammar() {
        assert_eq!(p(&[-2, -2, 4, -6, 1]).to_string(), "x^4 - 6x^3 + 4x^2 - 2x - 2");
        assert_eq!(p(&[-3, 2]).to_string(), "2x - 3");
        assert_eq!(p(&[5]).to_string(), "5");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn squarefree_detection() {
        assert!(p(&[-2, 0, 1]).is_squarefree());
        assert!(!(&p(&[-1, 1]) * &p(&[-1, 1])).is_squarefree());
    }

    #[test]
    fn exact_integer_division() {
        let m = p(&[-3, 0, 2]);
        let r = p(&[1, -2, 5]);
        let prod = &m * &r;
        assert_eq!(prod.div_exact(&m), Some(r));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[0, 2])), None);
    }
}
