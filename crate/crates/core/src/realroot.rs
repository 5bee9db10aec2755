//! Exact real algebraic numbers: isolating intervals over the rationals,
//! sign evaluation, and exponent bounds.
//!
//! An [`AlgebraicNumber`] pins one positive real root of a certified
//! irreducible integer polynomial between two rationals. Every comparison
//! against the root is decided exactly: polynomials are reduced modulo the
//! minimal polynomial (zero remainder means the value is zero) and otherwise
//! the isolating interval is bisected until the interval image of the
//! polynomial excludes zero. No floating point is involved anywhere.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exact::{is_irreducible_over_q, Int, IntPolynomial, IrreducibilityOutcome, Rat,
    RatPolynomial};

/// One positive real root of an irreducible integer polynomial, pinned by an
/// isolating rational interval `(lo, hi)` with `0 < lo`, on which the
/// minimal polynomial changes sign exactly once.
///
/// Values are immutable; refinement produces a new value designating the
/// same root.
#[derive(Clone)]
pub struct AlgebraicNumber {
    min_poly: IntPolynomial,
    lo: Rat,
    hi: Rat,
    root_index: usize,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly && self.root_index == other.root_index
    }
}
impl Eq for AlgebraicNumber {}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraicNumber(root #{} of {} in ({}, {}))",
            self.root_index, self.min_poly, self.lo, self.hi
        )
    }
}

impl AlgebraicNumber {
    /// All positive real roots of `m`, ordered increasingly, as certified
    /// algebraic numbers. `m` must be square-free and irreducible over `Q`
    /// (irreducibility is checked and certified here; a reducible input is
    /// rejected with its witness factor).
    pub fn positive_roots_of(m: &IntPolynomial) -> Result<Vec<AlgebraicNumber>, Error> {
        if m.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let prim = m.primitive_normalized()?;
        if !prim.is_squarefree() {
            // irreducible implies square-free; keep the sharper error for
            // hand-typed inputs like (x-1)^2
            return Err(Error::NotSquareFree);
        }
        match is_irreducible_over_q(&prim)? {
            IrreducibilityOutcome::Irreducible(_) => {}
            IrreducibilityOutcome::Reducible { factor } => {
                return Err(Error::Reducible { factor });
            }
        }
        let intervals = isolate_positive_roots(&prim)?;
        Ok(intervals
            .into_iter()
            .enumerate()
            .map(|(root_index, (lo, hi))| AlgebraicNumber {
                min_poly: prim.clone(),
                lo,
                hi,
                root_index,
            })
            .collect())
    }

    /// The unique positive root of a polynomial known to have exactly one
    /// (errors otherwise).
    pub fn unique_positive_root(m: &IntPolynomial) -> Result<AlgebraicNumber, Error> {
        let mut roots = Self::positive_roots_of(m)?;
        match roots.len() {
            0 => Err(Error::NoPositiveRoot),
            1 => Ok(roots.pop().expect("len checked")),
            n => Err(Error::RootIndexOutOfRange { index: 1, count: n }),
        }
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn interval(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    /// Degree of the minimal polynomial.
    pub fn degree(&self) -> usize {
        self.min_poly.degree().expect("min_poly nonzero")
    }

    /// The exact rational value when the minimal polynomial is linear.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.degree() != 1 {
            return None;
        }
        Some(Rat::new(-self.min_poly.coeff(0), self.min_poly.coeff(1)))
    }

    /// One bisection step; the result designates the same root.
    pub fn refined(&self) -> AlgebraicNumber {
        let (lo, hi) = refine_step(&self.min_poly, &self.lo, &self.hi);
        AlgebraicNumber {
            min_poly: self.min_poly.clone(),
            lo,
            hi,
            root_index: self.root_index,
        }
    }

    /// Refines until the interval is narrower than `width`.
    pub fn refined_below(&self, width: &Rat) -> AlgebraicNumber {
        let mut cur = self.clone();
        while &(&cur.hi - &cur.lo) >= width {
            cur = cur.refined();
        }
        cur
    }

    /// Exact sign of `g` at this root: `0` iff the minimal polynomial
    /// divides `g` over `Q`, otherwise the sign of `g(alpha)`.
    pub fn sign_of_poly(&self, g: &IntPolynomial) -> i8 {
        if g.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return rat_sign(&g.eval_rat(&r));
        }
        let reduced: IntPolynomial = if g.degree() < self.min_poly.degree() {
            g.clone()
        } else {
            let (_, rem) = g
                .divrem_rational(&self.min_poly)
                .expect("min_poly nonzero");
            if rem.is_zero() {
                return 0;
            }
            rem.clear_denominators().1
        };
        if reduced.is_zero() {
            return 0;
        }
        // deg(reduced) < deg(min_poly), so reduced cannot vanish at the root
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        loop {
            let (image_lo, image_hi) = interval_image(&reduced, &lo, &hi);
            if image_lo.is_positive() {
                return 1;
            }
            if image_hi.is_negative() {
                return -1;
            }
            let (nlo, nhi) = refine_step(&self.min_poly, &lo, &hi);
            lo = nlo;
            hi = nhi;
        }
    }

    /// Sign of a rational-coefficient polynomial at the root.
    pub fn sign_of_rat_poly(&self, g: &RatPolynomial) -> i8 {
        if g.is_zero() {
            return 0;
        }
        let (_, cleared) = g.clear_denominators();
        self.sign_of_poly(&cleared)
    }

    /// Compares the root against a rational.
    pub fn cmp_rational(&self, r: &Rat) -> Ordering {
        let probe = IntPolynomial::from_coeffs(vec![-r.numer().clone(), r.denom().clone()]);
        match self.sign_of_poly(&probe) {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    pub fn is_greater_than_one(&self) -> bool {
        self.cmp_rational(&Rat::one()) == Ordering::Greater
    }

    /// Largest `k >= 0` with `alpha^k <= v(alpha)`, decided exactly.
    /// Requires `alpha > 1` and `v(alpha) >= 1`.
    pub fn floor_log(&self, v: &RatPolynomial) -> Result<u32, Error> {
        if !self.is_greater_than_one() {
            return Err(Error::NoFiniteExponentBound);
        }
        let sign_v = self.sign_of_rat_poly(v);
        if sign_v <= 0 {
            return Err(Error::ValueBelowOne);
        }
        let one = RatPolynomial::from_coeffs(vec![Rat::one()]);
        if self.sign_of_rat_poly(&(v - &one)) < 0 {
            return Err(Error::ValueBelowOne);
        }
        let mut k: u32 = 0;
        loop {
            let next = k + 1;
            let mut coeffs = vec![Rat::zero(); next as usize + 1];
            coeffs[next as usize] = Rat::one();
            let probe = v - &RatPolynomial::from_coeffs(coeffs);
            if self.sign_of_rat_poly(&probe) < 0 {
                return Ok(k);
            }
            k = next;
        }
    }

    /// Decimal approximation `a.bcd...` with the given number of fractional
    /// digits, computed by refining the isolating interval; exact integer
    /// arithmetic only. Intended for display.
    pub fn decimal_approx(&self, digits: u32) -> String {
        use core::fmt::Write;
        let scale = num_traits::pow::pow(Int::from(10), digits as usize);
        let width = Rat::new(Int::one(), scale.clone());
        let fine = self.refined_below(&width);
        let mid = (&fine.lo + &fine.hi) / Rat::from_integer(Int::from(2));
        let scaled = (mid * Rat::from_integer(scale.clone())).floor().to_integer();
        let (int_part, frac_part) = scaled.div_rem(&scale);
        let mut out = String::new();
        let _ = write!(out, "{int_part}");
        if digits > 0 {
            let frac = frac_part.abs();
            let mut frac_str = String::new();
            let _ = write!(frac_str, "{frac}");
            let _ = write!(out, ".");
            for _ in frac_str.len()..digits as usize {
                let _ = write!(out, "0");
            }
            let _ = write!(out, "{frac_str}");
        }
        out
    }
}

fn rat_sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact image bounds of `g` over `[lo, hi]` with `0 <= lo <= hi`: each term
/// `c x^k` is monotone on nonnegative intervals, so term bounds add up.
fn interval_image(g: &IntPolynomial, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut image_lo = Rat::zero();
    let mut image_hi = Rat::zero();
    let mut pow_lo = Rat::one();
    let mut pow_hi = Rat::one();
    for c in g.coeffs() {
        if !c.is_zero() {
            let c_rat = Rat::from_integer(c.clone());
            let a = &c_rat * &pow_lo;
            let b = &c_rat * &pow_hi;
            if c.is_positive() {
                image_lo += a;
                image_hi += b;
            } else {
                image_lo += b;
                image_hi += a;
            }
        }
        pow_lo *= lo;
        pow_hi *= hi;
    }
    (image_lo, image_hi)
}

/// Halves an isolating interval of a square-free polynomial, keeping the
/// sign-change certificate. If the midpoint happens to be the (rational)
/// root, a small symmetric enclosure is returned instead.
fn refine_step(f: &IntPolynomial, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let two = Rat::from_integer(Int::from(2));
    let mid = (lo + hi) / &two;
    let f_mid = f.eval_rat(&mid);
    if f_mid.is_zero() {
        let delta = (hi - lo) / Rat::from_integer(Int::from(8));
        let mut d = delta;
        loop {
            let a = &mid - &d;
            let b = &mid + &d;
            if a > *lo && b < *hi && !f.eval_rat(&a).is_zero() && !f.eval_rat(&b).is_zero() {
                return (a, b);
            }
            d = &d / &two;
        }
    }
    let f_lo = f.eval_rat(lo);
    if rat_sign(&f_lo) == rat_sign(&f_mid) {
        (mid, hi.clone())
    } else {
        (lo.clone(), mid)
    }
}

/// Number of sign variations of `f` mapped onto `(a, b)`: the coefficient
/// variations of `(1+x)^n f((a + bx)/(1+x))` after clearing denominators.
/// Zero variations mean no root in `(a, b)`; one means exactly one.
fn variations_in(f: &IntPolynomial, a: &Rat, b: &Rat) -> usize {
    let n = f.degree().expect("nonzero");
    let s: Int = a.denom().lcm(b.denom());
    let p = a.numer() * (&s / a.denom());
    let r = b.numer() * (&s / b.denom());
    // base polynomials
    let lin_pr = IntPolynomial::from_coeffs(vec![p, r]); // p + r x
    let lin_one = IntPolynomial::from_coeffs(vec![Int::one(), Int::one()]); // 1 + x
    // powers
    let mut pow_pr = Vec::with_capacity(n + 1);
    let mut pow_one = Vec::with_capacity(n + 1);
    pow_pr.push(IntPolynomial::one());
    pow_one.push(IntPolynomial::one());
    for i in 1..=n {
        pow_pr.push(&pow_pr[i - 1] * &lin_pr);
        pow_one.push(&pow_one[i - 1] * &lin_one);
    }
    let mut acc = IntPolynomial::zero();
    let mut s_pow = Int::one();
    // s^(n-i) built from the top down
    let mut s_powers = vec![Int::one(); n + 1];
    for i in (0..n).rev() {
        s_pow *= &s;
        s_powers[i] = s_pow.clone();
    }
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &(&pow_pr[i] * &pow_one[n - i])
            * &IntPolynomial::constant(c * &s_powers[i]);
        acc = &acc + &term;
    }
    acc.sign_variations()
}

/// Isolating intervals, ordered increasingly, for every positive real root
/// of a square-free polynomial. Interval subdivision is seeded by the Cauchy
/// root bound and certified by the sign-variation count on each cell.
pub fn isolate_positive_roots(m: &IntPolynomial) -> Result<Vec<(Rat, Rat)>, Error> {
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if m.degree() == Some(0) {
        return Err(Error::ConstantPolynomial);
    }
    if !m.is_squarefree() {
        return Err(Error::NotSquareFree);
    }
    let mut f = m.clone();
    if f.coeff(0).is_zero() {
        // square-free, so x divides exactly once; the root 0 is not positive
        f = f
            .div_exact(&IntPolynomial::monomial(Int::one(), 1))
            .expect("constant term is zero");
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }

    // Cauchy bound: 1 + max |a_i| / |a_n|
    let lead = f.leading().expect("nonzero").abs();
    let mut max_abs = Int::zero();
    let deg = f.degree().expect("nonzero");
    for k in 0..deg {
        let a = f.coeff(k).abs();
        if a > max_abs {
            max_abs = a;
        }
    }
    let bound = Rat::one() + Rat::new(max_abs, lead);
    let bound = Rat::from_integer(bound.ceil().to_integer());

    let mut out: Vec<(Rat, Rat)> = Vec::new();
    let mut exact: Vec<Rat> = Vec::new();
    let mut stack: Vec<(Rat, Rat)> = vec![(Rat::zero(), bound)];
    while let Some((a, b)) = stack.pop() {
        match variations_in(&f, &a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = (&a + &b) / Rat::from_integer(Int::from(2));
                if f.eval_rat(&mid).is_zero() {
                    exact.push(mid.clone());
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }

    // Enclose exact rational roots (reducible square-free inputs only) in
    // intervals certified to contain just that root.
    for c in exact {
        let mut d = Rat::new(Int::one(), Int::from(4));
        loop {
            let a = (&c - &d).max(Rat::zero());
            let b = &c + &d;
            if !f.eval_rat(&a).is_zero()
                && !f.eval_rat(&b).is_zero()
                && variations_in(&f, &a, &b) == 1
            {
                out.push((a, b));
                break;
            }
            d = d / Rat::from_integer(Int::from(2));
        }
    }

    out.sort_by(|x, y| x.0.cmp(&y.0));
    // make intervals pairwise disjoint and keep left endpoints positive
    loop {
        let mut changed = false;
        for i in 0..out.len() {
            if !out[i].0.is_positive() {
                let (lo, hi) = shrink_left_positive(&f, &out[i].0, &out[i].1);
                out[i] = (lo, hi);
                changed = true;
            }
            if i + 1 < out.len() && out[i].1 > out[i + 1].0 {
                let left = refine_step(&f, &out[i].0, &out[i].1);
                let right = refine_step(&f, &out[i + 1].0, &out[i + 1].1);
                out[i] = left;
                out[i + 1] = right;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(out)
}

/// Moves a zero left endpoint strictly above zero while keeping the single
/// root inside: `f` keeps the sign of `f(0)` on the left of the root.
fn shrink_left_positive(f: &IntPolynomial, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    debug_assert!(lo.is_zero());
    let sign_at_zero = rat_sign(&f.eval_rat(&Rat::zero()));
    let two = Rat::from_integer(Int::from(2));
    let mut cand = hi / &two;
    loop {
        if rat_sign(&f.eval_rat(&cand)) == sign_at_zero {
            return (cand, hi.clone());
        }
        cand = cand / &two;
    }
}
