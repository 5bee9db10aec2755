//! Irreducibility over the rationals, with certificates.
//!
//! The decision procedure is a stack of fast certified paths (rational root
//! test, Eisenstein, the binomial criterion for `a*x^n - b`) backed by an
//! exhaustive bounded factor search (Kronecker interpolation through divisor
//! tuples) for degrees up to [`SEARCH_DEGREE_LIMIT`]. Degrees beyond the
//! limit that no fast path settles report an explicit "undecided" error
//! rather than guessing.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use super::poly::{IntPolynomial, RatPolynomial};
use super::{Int, Rat};
use crate::error::Error;

/// Largest degree the exhaustive factor search will take on.
pub const SEARCH_DEGREE_LIMIT: usize = 8;

/// Values above this are not factored for divisor enumeration; hitting the
/// limit surfaces as an "undecided" error, never a guess.
const TRIAL_FACTOR_LIMIT: u64 = 1_000_000_000_000;

/// Cap on divisor-tuple combinations tried per factor degree.
const COMBO_BUDGET: u128 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityCertificate {
    /// Degree-1 polynomials are irreducible.
    Degree1,
    /// Degree 2 or 3 with no rational root.
    NoRationalRoot,
    /// Eisenstein's criterion at the given prime.
    Eisenstein { prime: Int },
    /// `a*x^n - b` with `b/a` not a `p`-th rational power for any prime
    /// `p | n` (the positive-base case of the binomial criterion).
    Binomial { checked_primes: Vec<u32> },
    /// No factor of degree up to `max_factor_degree` exists; established by
    /// interpolation through complete divisor tuples of the values at the
    /// sample points.
    FactorSearchExhausted { max_factor_degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityOutcome {
    Irreducible(IrreducibilityCertificate),
    /// The witness factor divides the input (over `Q`; primitive over `Z`).
    Reducible { factor: IntPolynomial },
}

impl IrreducibilityOutcome {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityOutcome::Irreducible(_))
    }
}

/// Decides irreducibility of `f` over `Q` and produces a certificate.
pub fn is_irreducible_over_q(f: &IntPolynomial) -> Result<IrreducibilityOutcome, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let prim = f.primitive_normalized()?;
    let n = prim.degree().expect("nonzero");
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(IrreducibilityOutcome::Irreducible(
            IrreducibilityCertificate::Degree1,
        ));
    }
    if prim.coeff(0).is_zero() {
        return Ok(IrreducibilityOutcome::Reducible {
            factor: IntPolynomial::monomial(Int::one(), 1),
        });
    }

    let rational_roots_complete = match rational_root_factor(&prim)? {
        RootScan::Found(factor) => return Ok(IrreducibilityOutcome::Reducible { factor }),
        RootScan::NoneComplete => true,
        RootScan::Inconclusive => false,
    };

    if let Some(p) = eisenstein_prime(&prim) {
        return Ok(IrreducibilityOutcome::Irreducible(
            IrreducibilityCertificate::Eisenstein { prime: p },
        ));
    }

    if n <= 3 {
        if rational_roots_complete {
            return Ok(IrreducibilityOutcome::Irreducible(
                IrreducibilityCertificate::NoRationalRoot,
            ));
        }
        return Err(Error::IrreducibilityUndecided { degree: n });
    }

    if let Some(outcome) = binomial_criterion(&prim) {
        return Ok(outcome);
    }

    if n > SEARCH_DEGREE_LIMIT {
        return Err(Error::IrreducibilityUndecided { degree: n });
    }

    match kronecker_factor(&prim)? {
        Some(factor) => Ok(IrreducibilityOutcome::Reducible { factor }),
        None => Ok(IrreducibilityOutcome::Irreducible(
            IrreducibilityCertificate::FactorSearchExhausted {
                max_factor_degree: n / 2,
            },
        )),
    }
}

enum RootScan {
    Found(IntPolynomial),
    NoneComplete,
    Inconclusive,
}

/// Complete rational root test on a primitive polynomial with nonzero
/// constant term. Candidates are `±p/q` with `p | a_0` and `q | a_n`.
fn rational_root_factor(f: &IntPolynomial) -> Result<RootScan, Error> {
    let a0 = f.coeff(0).abs();
    let an = f.leading().expect("nonzero").abs();
    let (num_divs, den_divs) = match (positive_divisors(&a0), positive_divisors(&an)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(RootScan::Inconclusive),
    };
    for p in &num_divs {
        for q in &den_divs {
            for sign in [1i64, -1] {
                let root = Rat::new(p * Int::from(sign), q.clone());
                if f.eval_rat(&root).is_zero() {
                    // q*x - p in primitive form
                    let factor = IntPolynomial::from_coeffs(vec![-(p * Int::from(sign)), q.clone()])
                        .primitive_normalized()?;
                    return Ok(RootScan::Found(factor));
                }
            }
        }
    }
    Ok(RootScan::NoneComplete)
}

/// Eisenstein witness: a prime dividing every non-leading coefficient, not
/// the leading one, with square not dividing the constant term.
fn eisenstein_prime(f: &IntPolynomial) -> Option<Int> {
    let n = f.degree()?;
    let mut g = Int::zero();
    for k in 0..n {
        g = g.gcd(&f.coeff(k));
    }
    if g <= Int::one() {
        return None;
    }
    let primes = match prime_factors(&g) {
        Some(ps) => ps,
        None => return None,
    };
    let lead = f.leading()?;
    let a0 = f.coeff(0);
    for p in primes {
        if (lead % &p).is_zero() {
            continue;
        }
        if (&a0 % (&p * &p)).is_zero() {
            continue;
        }
        return Some(p);
    }
    None
}

/// Re-checks an Eisenstein certificate; used by the verification suites.
pub fn eisenstein_holds(f: &IntPolynomial, p: &Int) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if p <= &Int::one() {
        return false;
    }
    for k in 0..n {
        if !(f.coeff(k) % p).is_zero() {
            return false;
        }
    }
    !(f.leading().unwrap() % p).is_zero() && !(f.coeff(0) % (p * p)).is_zero()
}

/// `a*x^n - b` with `a, b > 0`: irreducible iff `b/a` is not a `p`-th
/// rational power for any prime `p | n`. (The `-4c^4` branch of the general
/// criterion needs a negative base and cannot arise here.)
fn binomial_criterion(f: &IntPolynomial) -> Option<IrreducibilityOutcome> {
    let n = f.degree()?;
    if f.support() != vec![0, n] {
        return None;
    }
    let a = f.leading()?.clone();
    let b = -f.coeff(0);
    if !a.is_positive() || !b.is_positive() {
        return None;
    }
    let q = Rat::new(b, a);
    let mut checked = Vec::new();
    for p in prime_factors_u32(n as u32) {
        if let Some(root) = rational_pth_root(&q, p) {
            // x^(n/p) - root divides x^n - q
            let sub = n / p as usize;
            let mut coeffs = vec![Int::zero(); sub + 1];
            coeffs[0] = -root.numer().clone();
            coeffs[sub] = root.denom().clone();
            let factor = IntPolynomial::from_coeffs(coeffs)
                .primitive_normalized()
                .expect("nonzero");
            return Some(IrreducibilityOutcome::Reducible { factor });
        }
        checked.push(p);
    }
    Some(IrreducibilityOutcome::Irreducible(
        IrreducibilityCertificate::Binomial {
            checked_primes: checked,
        },
    ))
}

/// Exact `p`-th root of a positive rational, if it exists.
pub(crate) fn rational_pth_root(q: &Rat, p: u32) -> Option<Rat> {
    let rn = exact_nth_root(q.numer(), p)?;
    let rd = exact_nth_root(q.denom(), p)?;
    Some(Rat::new(rn, rd))
}

fn exact_nth_root(v: &Int, p: u32) -> Option<Int> {
    if v.is_negative() {
        return None;
    }
    let r = v.nth_root(p);
    if Pow::pow(r.clone(), p) == *v {
        Some(r)
    } else {
        None
    }
}

/// Exhaustive factor search by interpolation: any degree-`k` factor `g`
/// satisfies `g(x_i) | f(x_i)` at every sample point, so running over all
/// divisor tuples and interpolating covers every candidate.
fn kronecker_factor(f: &IntPolynomial) -> Result<Option<IntPolynomial>, Error> {
    let n = f.degree().expect("degree checked");
    for k in 2..=n / 2 {
        // k+1 small sample points
        let mut points: Vec<Int> = Vec::new();
        let mut candidate = 0i64;
        while points.len() < k + 1 {
            let x = Int::from(candidate);
            let v = f.eval_int(&x);
            if v.is_zero() {
                // rational root missed only if divisor enumeration was
                // inconclusive; surface it as a factor now
                let factor =
                    IntPolynomial::from_coeffs(vec![-x, Int::one()]).primitive_normalized()?;
                return Ok(Some(factor));
            }
            points.push(x);
            candidate = if candidate > 0 { -candidate } else { -candidate + 1 };
        }

        let mut divisor_lists: Vec<Vec<Int>> = Vec::with_capacity(points.len());
        let mut combos: u128 = 1;
        for (i, x) in points.iter().enumerate() {
            let v = f.eval_int(x).abs();
            let divs = positive_divisors(&v)
                .ok_or(Error::IrreducibilityUndecided { degree: n })?;
            let mut signed: Vec<Int> = Vec::with_capacity(divs.len() * 2);
            for d in divs {
                signed.push(d.clone());
                // sign symmetry g ~ -g: pin the first coordinate positive
                if i > 0 {
                    signed.push(-d);
                }
            }
            combos = combos.saturating_mul(signed.len() as u128);
            divisor_lists.push(signed);
        }
        if combos > COMBO_BUDGET {
            return Err(Error::IrreducibilityUndecided { degree: n });
        }

        let mut idx = vec![0usize; points.len()];
        loop {
            let values: Vec<Int> = idx
                .iter()
                .zip(&divisor_lists)
                .map(|(&i, list)| list[i].clone())
                .collect();
            if let Some(g) = interpolate_integer(&points, &values) {
                if g.degree().map(|d| d >= 1).unwrap_or(false) {
                    let g = g.primitive_normalized()?;
                    if f.div_exact(&g).is_some() {
                        return Ok(Some(g));
                    }
                }
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < divisor_lists[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Ok(None)
}

/// Lagrange interpolation through `(points[i], values[i])`, kept only when
/// the result has integer coefficients.
fn interpolate_integer(points: &[Int], values: &[Int]) -> Option<IntPolynomial> {
    let one = RatPolynomial::from_coeffs(vec![Rat::one()]);
    let mut acc = RatPolynomial::zero();
    for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
        let mut basis = one.clone();
        let mut denom = Rat::one();
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let lin = RatPolynomial::from_coeffs(vec![
                Rat::from_integer(-xj.clone()),
                Rat::one(),
            ]);
            basis = &basis * &lin;
            denom *= Rat::from_integer(xi - xj);
        }
        let scale = Rat::from_integer(yi.clone()) / denom;
        acc = &acc + &basis.scale(&scale);
    }
    let mut coeffs = Vec::with_capacity(acc.coeffs().len());
    for c in acc.coeffs() {
        if !c.denom().is_one() {
            return None;
        }
        coeffs.push(c.numer().clone());
    }
    Some(IntPolynomial::from_coeffs(coeffs))
}

/// All positive divisors, or `None` when the value is too large to factor
/// within the trial-division limit.
fn positive_divisors(v: &Int) -> Option<Vec<Int>> {
    let primes = prime_factorization(v)?;
    let mut divisors = vec![Int::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for d in &divisors {
            let mut pk = Int::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divisors = next;
    }
    divisors.sort();
    Some(divisors)
}

fn prime_factors(v: &Int) -> Option<Vec<Int>> {
    Some(prime_factorization(v)?.into_iter().map(|(p, _)| p).collect())
}

fn prime_factorization(v: &Int) -> Option<Vec<(Int, u32)>> {
    let mut n: u64 = v.abs().try_into().ok()?;
    if n == 0 || n > TRIAL_FACTOR_LIMIT {
        return None;
    }
    let mut out: Vec<(Int, u32)> = Vec::new();
    let mut push = |p: u64, e: u32| out.push((Int::from(p), e));
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            push(p, e);
        }
    }
    let mut d = 7u64;
    // wheel over 2,3,5
    let steps = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut s = 0;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            push(d, e);
        }
        d += steps[s];
        s = (s + 1) % steps.len();
    }
    if n > 1 {
        push(n, 1);
    }
    Some(out)
}

fn prime_factors_u32(n: u32) -> Vec<u32> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    #[test]
    fn eisenstein_on_the_quartic() {
        let f = p(&[-2, -2, 4, -6, 1]);
        match is_irreducible_over_q(&f).unwrap() {
            IrreducibilityOutcome::Irreducible(IrreducibilityCertificate::Eisenstein { prime }) => {
                assert_eq!(prime, Int::from(2));
                assert!(eisenstein_holds(&f, &prime));
            }
            other => panic!("expected Eisenstein certificate, got {other:?}"),
        }
    }

    #[test]
    fn explicit_factor_for_x2_minus_1() {
        let f = p(&[-1, 0, 1]);
        match is_irreducible_over_q(&f).unwrap() {
            IrreducibilityOutcome::Reducible { factor } => {
                assert!(f.div_exact(&factor).is_some(), "certificate must divide");
                assert_eq!(factor.degree(), Some(1));
            }
            other => panic!("expected factor, got {other:?}"),
        }
    }

    #[test]
    fn two_x_squared_minus_three_is_irreducible() {
        let f = p(&[-3, 0, 2]);
        assert!(is_irreducible_over_q(&f).unwrap().is_irreducible());
    }

    #[test]
    fn quartic_with_no_low_degree_certificates_uses_search() {
        // x^4 - x^3 - x^2 - x + 1: no rational root, Eisenstein fails;
        // the quadratic-factor search must run and find nothing.
        let f = p(&[1, -1, -1, -1, 1]);
        match is_irreducible_over_q(&f).unwrap() {
            IrreducibilityOutcome::Irreducible(
                IrreducibilityCertificate::FactorSearchExhausted { max_factor_degree },
            ) => assert_eq!(max_factor_degree, 2),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn search_finds_quadratic_factors() {
        // (x^2 + x + 1)(x^2 + 2) has no rational roots
        let f = &p(&[1, 1, 1]) * &p(&[2, 0, 1]);
        match is_irreducible_over_q(&f).unwrap() {
            IrreducibilityOutcome::Reducible { factor } => {
                assert!(f.div_exact(&factor).is_some());
            }
            other => panic!("expected factor, got {other:?}"),
        }
    }

    #[test]
    fn binomial_criterion_both_ways() {
        // x^4 - 4 = (x^2-2)(x^2+2): 4 is a square
        let f = p(&[-4, 0, 0, 0, 1]);
        match is_irreducible_over_q(&f).unwrap() {
            IrreducibilityOutcome::Reducible { factor } => {
                assert!(f.div_exact(&factor).is_some());
                assert_eq!(factor, p(&[-2, 0, 1]));
            }
            other => panic!("expected factor, got {other:?}"),
        }
        // 2x^4 - 3: 3/2 is neither a square nor a fourth power.
        // (Eisenstein at 3 fires first, which is also a valid certificate.)
        let g = p(&[-3, 0, 0, 0, 2]);
        assert!(is_irreducible_over_q(&g).unwrap().is_irreducible());
    }

    #[test]
    fn degree_beyond_limit_is_undecided_not_guessed() {
        // x^9 + x + 3: no cheap certificate applies
        let mut coeffs = vec![0i64; 10];
        coeffs[0] = 3;
        coeffs[1] = 1;
        coeffs[9] = 1;
        let f = p(&coeffs);
        assert_eq!(
            is_irreducible_over_q(&f).unwrap_err(),
            Error::IrreducibilityUndecided { degree: 9 }
        );
    }

    #[test]
    fn constants_are_rejected() {
        assert_eq!(
            is_irreducible_over_q(&p(&[5])).unwrap_err(),
            Error::ConstantPolynomial
        );
        assert_eq!(
            is_irreducible_over_q(&IntPolynomial::zero()).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn degree_one_certificate() {
        let out = is_irreducible_over_q(&p(&[-3, 2])).unwrap();
        assert_eq!(
            out,
            IrreducibilityOutcome::Irreducible(IrreducibilityCertificate::Degree1)
        );
    }

    #[test]
    fn divisor_enumeration() {
        assert_eq!(
            positive_divisors(&Int::from(12)).unwrap(),
            vec![1, 2, 3, 4, 6, 12].into_iter().map(Int::from).collect::<Vec<_>>()
        );
        assert_eq!(positive_divisors(&Int::from(1)).unwrap().len(), 1);
    }

    #[test]
    fn display_of_error_mentions_bound() {
        let e = Error::IrreducibilityUndecided { degree: 11 };
        assert!(e.to_string().contains("undecided at configured bound"));
    }
}
