//! Brute-force reference implementations used to cross-check the primary
//! algorithms. These deliberately share no search machinery with the
//! implementations they verify: no sign evaluations at the root, no
//! residual pruning, no synthetic-division bookkeeping.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::exact::{Int, IntPolynomial};
use crate::factorize::{ElementExpr, Factorization};
use crate::invariants::distance;
use crate::monoid::MonoidSpec;

/// Box-size guard for the quotient enumeration.
const ORACLE_BOX_LIMIT: u128 = 20_000_000;

/// Enumerates `Z(x)` by running over the witness-quotient lattice: every
/// factorization is `x + m*r` for an integer polynomial `r` (the minimal
/// polynomial is primitive), so it suffices to enumerate `r` over a box
/// that provably contains all solutions and keep the candidates whose
/// coefficients are nonnegative, within the caps, and supported on atoms.
///
/// The box is obtained by forward interval propagation: the coefficient of
/// degree `e + i` of `x + m*r` involves `r_i` and already-bounded higher
/// quotient coefficients, so each coefficient window `[0, cap]` yields an
/// interval for one more `r_i`.
pub fn enumerate_by_quotient(
    x: &ElementExpr,
    spec: &MonoidSpec,
    max_exponent: u32,
    caps: &[u64],
    atoms: &BTreeSet<u32>,
) -> Result<Vec<Factorization>, Error> {
    let m = spec.min_poly();
    let e = spec.rank() as usize;
    let levels = (max_exponent as usize).max(x.poly().degree().unwrap_or(0));
    let cap_at = |k: usize| -> Int {
        if k <= max_exponent as usize && atoms.contains(&(k as u32)) {
            Int::from(caps.get(k).copied().unwrap_or(0))
        } else {
            Int::zero()
        }
    };

    if levels < e {
        // no quotient freedom at all: the only candidate is x itself
        let only = validate_candidate(x.poly(), max_exponent, caps, atoms);
        return Ok(only.into_iter().collect());
    }
    let t = levels - e; // deg r <= t
    let m_lead = m.leading().expect("nonzero").clone();

    // interval propagation, top quotient coefficient first
    let mut r_lo = vec![Int::zero(); t + 1];
    let mut r_hi = vec![Int::zero(); t + 1];
    for i in (0..=t).rev() {
        let deg = e + i;
        // known contribution of higher quotient coefficients to this degree
        let mut s_lo = Int::zero();
        let mut s_hi = Int::zero();
        for (s, ms) in m.coeffs().iter().enumerate().take(e) {
            // m_s * r_j lands at degree s + j; we need s + j == deg, j > i
            if deg < s {
                continue;
            }
            let j = deg - s;
            if j <= i || j > t || ms.is_zero() {
                continue;
            }
            let (a, b) = if ms.is_positive() {
                (ms * &r_lo[j], ms * &r_hi[j])
            } else {
                (ms * &r_hi[j], ms * &r_lo[j])
            };
            s_lo += a;
            s_hi += b;
        }
        let xd = x.poly().coeff(deg);
        let cap = cap_at(deg);
        // 0 <= x_deg + s + m_lead * r_i <= cap
        let lo = (-(&xd) - &s_hi).div_ceil(&m_lead);
        let hi = (&cap - &xd - &s_lo).div_floor(&m_lead);
        if lo > hi {
            return Ok(Vec::new());
        }
        r_lo[i] = lo;
        r_hi[i] = hi;
    }

    let mut box_size: u128 = 1;
    for i in 0..=t {
        let width = (&r_hi[i] - &r_lo[i]) + Int::from(1);
        let w: u128 = (&width).try_into().map_err(|_| Error::BoundOverflow)?;
        box_size = box_size.saturating_mul(w);
        if box_size > ORACLE_BOX_LIMIT {
            return Err(Error::BoundOverflow);
        }
    }

    let mut out = Vec::new();
    let mut r = r_lo.clone();
    loop {
        let r_poly = IntPolynomial::from_coeffs(r.clone());
        let candidate = x.poly() + &(m * &r_poly);
        if let Some(z) = validate_candidate(&candidate, max_exponent, caps, atoms) {
            out.push(z);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos > t {
                out.sort();
                return Ok(out);
            }
            if r[pos] < r_hi[pos] {
                r[pos] += 1;
                break;
            }
            r[pos] = r_lo[pos].clone();
            pos += 1;
        }
    }
}

fn validate_candidate(
    q: &IntPolynomial,
    max_exponent: u32,
    caps: &[u64],
    atoms: &BTreeSet<u32>,
) -> Option<Factorization> {
    let mut pairs = Vec::new();
    for (k, c) in q.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() || k > max_exponent as usize || !atoms.contains(&(k as u32)) {
            return None;
        }
        let cap = caps.get(k).copied().unwrap_or(0);
        let c64 = c.to_u64()?;
        if c64 > cap {
            return None;
        }
        pairs.push((k as u32, c64));
    }
    Some(Factorization::from_pairs(&pairs))
}

/// Least `N` whose threshold graph (edges at distance at most `N`) on the
/// factorization set is connected, by direct connectivity checks over the
/// sorted candidate thresholds.
pub fn catenary_by_threshold(factorizations: &[Factorization]) -> u64 {
    let n = factorizations.len();
    if n <= 1 {
        return 0;
    }
    let mut dist = vec![vec![0u64; n]; n];
    let mut candidates = BTreeSet::new();
    candidates.insert(0u64);
    for i in 0..n {
        for j in i + 1..n {
            let d = distance(&factorizations[i], &factorizations[j]);
            dist[i][j] = d;
            dist[j][i] = d;
            candidates.insert(d);
        }
    }
    for threshold in candidates {
        if connected_under(&dist, threshold) {
            return threshold;
        }
    }
    unreachable!("the largest distance always connects the graph")
}

fn connected_under(dist: &[Vec<u64>], threshold: u64) -> bool {
    let n = dist.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && dist[i][j] <= threshold {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::{parse_int_polynomial, parse_rational};
    use crate::factorize::{enumerate_factorizations, Bounds};
    use crate::invariants::catenary_of_set;

    fn expr(s: &str) -> ElementExpr {
        ElementExpr::new(parse_int_polynomial(s).unwrap()).unwrap()
    }

    #[test]
    fn oracle_agrees_with_primary_on_rational_cases() {
        let spec = MonoidSpec::rational(parse_rational("3/2").unwrap()).unwrap();
        for x in ["3", "9", "2x + 1", "x^2 + x", "12"] {
            let x = expr(x);
            let set = enumerate_factorizations(&x, &spec, &Bounds::default()).unwrap();
            assert!(set.complete);
            let atoms: BTreeSet<u32> = (0..=set.bounds_used.max_exponent).collect();
            let oracle = enumerate_by_quotient(
                &x,
                &spec,
                set.bounds_used.max_exponent,
                &set.bounds_used.caps,
                &atoms,
            )
            .unwrap();
            assert_eq!(set.factorizations, oracle, "mismatch for {x}");
        }
    }

    #[test]
    fn oracle_agrees_on_the_quartic_example() {
        let spec = MonoidSpec::from_min_poly(
            &parse_int_polynomial("x^4 - 6x^3 + 4x^2 - 2x - 2").unwrap(),
            None,
        )
        .unwrap();
        let x = expr("x^5 + 6x^2");
        let set = enumerate_factorizations(&x, &spec, &Bounds::default()).unwrap();
        assert!(set.complete);
        let atoms: BTreeSet<u32> = (0..=5).collect();
        let oracle = enumerate_by_quotient(
            &x,
            &spec,
            set.bounds_used.max_exponent,
            &set.bounds_used.caps,
            &atoms,
        )
        .unwrap();
        assert_eq!(set.factorizations, oracle);
    }

    #[test]
    fn threshold_catenary_matches_mst_bottleneck() {
        let spec = MonoidSpec::rational(parse_rational("3/2").unwrap()).unwrap();
        for x in ["3", "9", "3x", "6", "x^2 + 3"] {
            let set = enumerate_factorizations(&expr(x), &spec, &Bounds::default()).unwrap();
            assert_eq!(
                catenary_of_set(&set.factorizations),
                catenary_by_threshold(&set.factorizations),
                "mismatch for {x}"
            );
        }
    }
}
