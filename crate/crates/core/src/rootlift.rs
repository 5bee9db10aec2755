//! Transfer along the isomorphism `Z(N0[q])^n ~ Z(N0[q^(1/n)])`.
//!
//! For the positive irreducible `n`-th root `alpha` of a rational `q`, an
//! atom `alpha^(kn + r)` is `alpha^r * q^k`, so a factorization over
//! `N0[alpha]` splits by exponent residue mod `n` into an `n`-tuple of
//! factorizations over `N0[q]`, and conversely. Lengths and Betti elements
//! transfer along the split, which makes the closed-form statements about
//! root semirings executable as cross-checks of the direct enumeration.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::exact::{Int, IntPolynomial, Rat};
use crate::factorize::{
    canonicalize, enumerate_factorizations, length_set, Bounds, CanonicalValue, ElementExpr,
    Factorization, LengthSet,
};
use crate::invariants::{betti_components, betti_graph};
use crate::monoid::MonoidSpec;

/// A factorization over `N0[q^(1/n)]` split by exponent residue: component
/// `r` collects the atoms `alpha^(kn + r)` as `q^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedFactorization {
    pub components: Vec<Factorization>,
}

impl LiftedFactorization {
    pub fn total_length(&self) -> u64 {
        self.components.iter().map(Factorization::length).sum()
    }
}

/// Splits by exponent residue mod `n`.
pub fn split_factorization(z: &Factorization, n: u32) -> LiftedFactorization {
    let mut parts: Vec<Vec<(u32, u64)>> = vec![Vec::new(); n as usize];
    for (&exp, &count) in z.counts() {
        let r = exp % n;
        let k = exp / n;
        parts[r as usize].push((k, count));
    }
    LiftedFactorization {
        components: parts
            .into_iter()
            .map(|pairs| Factorization::from_pairs(&pairs))
            .collect(),
    }
}

/// Joins the components back: exact inverse of [`split_factorization`].
pub fn join_factorization(lifted: &LiftedFactorization) -> Factorization {
    let n = lifted.components.len() as u32;
    let mut pairs = Vec::new();
    for (r, comp) in lifted.components.iter().enumerate() {
        for (&k, &count) in comp.counts() {
            pairs.push((k * n + r as u32, count));
        }
    }
    Factorization::from_pairs(&pairs)
}

/// The spec's root structure `(q, n)` with `n >= 2`, required by every
/// transfer operation here.
fn root_parameters(spec: &MonoidSpec) -> Result<(Rat, u32), Error> {
    match spec.root_structure() {
        Some((q, n)) if n >= 2 && !q.denom().is_one() && !q.numer().is_one() => Ok((q, n)),
        _ => Err(Error::NotARootSpec),
    }
}

/// Residue-`r` component of an expression: the coefficients at exponents
/// `≡ r (mod n)`, re-indexed by `k = (exp - r)/n`. Its value is the `r`-th
/// canonical coordinate of the element, as a value in `N0[q]`.
pub fn component_expr(b: &ElementExpr, n: u32, r: u32) -> ElementExpr {
    let coeffs = b.poly().coeffs();
    let mut out: Vec<Int> = Vec::new();
    for (exp, c) in coeffs.iter().enumerate() {
        if exp as u32 % n == r {
            let k = exp as u32 / n;
            if out.len() <= k as usize {
                out.resize(k as usize + 1, Int::zero());
            }
            out[k as usize] = c.clone();
        }
    }
    ElementExpr::new(IntPolynomial::from_coeffs(out)).expect("component of a nonnegative expr")
}

/// Length set of `b` computed through the lift: the sumset of the component
/// length sets over `N0[q]`. Must agree with direct enumeration wherever
/// both are complete.
pub fn lifted_length_set(
    b: &ElementExpr,
    spec: &MonoidSpec,
    bounds: &Bounds,
) -> Result<LengthSet, Error> {
    let (q, n) = root_parameters(spec)?;
    let base = MonoidSpec::rational(q)?;
    let mut lengths: alloc::collections::BTreeSet<u64> = [0u64].into_iter().collect();
    let mut complete = true;
    for r in 0..n {
        let comp = component_expr(b, n, r);
        let ls = length_set(&comp, &base, bounds)?;
        complete &= ls.complete;
        let mut next = alloc::collections::BTreeSet::new();
        for &a in &lengths {
            for &l in &ls.lengths {
                next.insert(a + l);
            }
        }
        lengths = next;
        if lengths.is_empty() {
            // some coordinate is not in N0[q]: the element is not in the
            // monoid at all
            return Err(Error::SupportOutsideAtoms { exponent: r });
        }
    }
    Ok(LengthSet { lengths, complete })
}

/// One member of the lifted Betti family.
#[derive(Debug, Clone)]
pub struct LiftedBettiElement {
    /// Family index `m` (power of the base Betti value).
    pub m: u32,
    /// Residue `r` (power of alpha multiplying it).
    pub r: u32,
    /// `n(q)^(m+1)/d(q)^m * alpha^r` as an expression: `n(q) * x^(mn + r)`.
    pub expr: ElementExpr,
    pub value: CanonicalValue,
    /// Confirmed disconnected by direct Betti-graph computation.
    pub confirmed: bool,
}

#[derive(Debug, Clone)]
pub struct LiftedBettiReport {
    pub family: Vec<LiftedBettiElement>,
    /// All family members confirmed Betti by direct computation.
    pub all_confirmed: bool,
    /// Elements with two or more nonzero coordinates checked non-Betti.
    pub mixed_non_betti: usize,
}

/// Emits the closed-form Betti family `n(q)^(m+1)/d(q)^m * alpha^r` for
/// `m <= m_max`, `r < n`, confirming each member by direct Betti-graph
/// computation, and checks that sampled elements with at least two nonzero
/// coordinates are not Betti.
pub fn lifted_betti(
    spec: &MonoidSpec,
    m_max: u32,
    mixed_samples: &[(u64, u64)],
    bounds: &Bounds,
) -> Result<LiftedBettiReport, Error> {
    let (q, n) = root_parameters(spec)?;
    let nq = q.numer().to_u64().ok_or(Error::BoundOverflow)?;
    let mut family = Vec::new();
    let mut all_confirmed = true;
    for m in 0..=m_max {
        for r in 0..n {
            let expr = ElementExpr::monomial(nq, m * n + r);
            let report = betti_graph(&expr, spec, bounds)?;
            let confirmed = report.is_betti && report.complete;
            all_confirmed &= confirmed;
            family.push(LiftedBettiElement {
                m,
                r,
                value: canonicalize(&expr, spec),
                expr,
                confirmed,
            });
        }
    }
    // sampled two-coordinate elements must not be Betti
    let mut mixed_ok = 0usize;
    for &(c0, c1) in mixed_samples {
        let mut coeffs = vec![Int::zero(); 2];
        coeffs[0] = Int::from(c0.max(1));
        coeffs[1] = Int::from(c1.max(1));
        let expr = ElementExpr::new(IntPolynomial::from_coeffs(coeffs)).expect("nonnegative");
        let report = betti_graph(&expr, spec, bounds)?;
        if !report.is_betti && report.complete {
            mixed_ok += 1;
        }
    }
    Ok(LiftedBettiReport {
        family,
        all_confirmed,
        mixed_non_betti: mixed_ok,
    })
}

/// Direct check that two lifted factorizations project to the same element
/// iff their components do, pairwise (the projection-compatibility of the
/// split).
pub fn components_project_equally(
    a: &Factorization,
    b: &Factorization,
    spec: &MonoidSpec,
    n: u32,
) -> bool {
    let base_q = match spec.root_structure() {
        Some((q, _)) => q,
        None => return false,
    };
    let base = match MonoidSpec::rational(base_q) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let whole_equal = canonicalize(&ElementExpr::from(a), spec)
        == canonicalize(&ElementExpr::from(b), spec);
    let sa = split_factorization(a, n);
    let sb = split_factorization(b, n);
    let parts_equal = sa
        .components
        .iter()
        .zip(&sb.components)
        .all(|(x, y)| {
            canonicalize(&ElementExpr::from(x), &base) == canonicalize(&ElementExpr::from(y), &base)
        });
    whole_equal == parts_equal
}

/// Betti components computed through the lift (used as an oracle in tests):
/// split every factorization, then components of the joined graph must
/// match the direct ones.
pub fn split_preserves_components(factorizations: &[Factorization], n: u32) -> bool {
    let direct = betti_components(factorizations);
    let rejoined: Vec<Factorization> = factorizations
        .iter()
        .map(|z| join_factorization(&split_factorization(z, n)))
        .collect();
    let lifted = betti_components(&rejoined);
    direct.len() == lifted.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::{parse_int_polynomial, parse_rational};

    fn expr(s: &str) -> ElementExpr {
        ElementExpr::new(parse_int_polynomial(s).unwrap()).unwrap()
    }

    fn root_spec(q: &str, n: u32) -> MonoidSpec {
        MonoidSpec::irreducible_root(parse_rational(q).unwrap(), n).unwrap()
    }

    #[test]
    fn split_by_residue() {
        // 1*a^0 + 2*a^1 + 1*a^2 over n = 2:
        // residue 0: q^0 + q^1, residue 1: 2*q^0
        let z = Factorization::from_pairs(&[(0, 1), (1, 2), (2, 1)]);
        let lifted = split_factorization(&z, 2);
        assert_eq!(
            lifted.components[0],
            Factorization::from_pairs(&[(0, 1), (1, 1)])
        );
        assert_eq!(lifted.components[1], Factorization::from_pairs(&[(0, 2)]));
        assert_eq!(join_factorization(&lifted), z);
        assert_eq!(lifted.total_length(), z.length());
    }

    #[test]
    fn empty_splits_to_empties() {
        let lifted = split_factorization(&Factorization::empty(), 3);
        assert_eq!(lifted.components.len(), 3);
        assert!(lifted.components.iter().all(Factorization::is_empty));
        assert!(join_factorization(&lifted).is_empty());
    }

    #[test]
    fn lifted_lengths_match_direct_for_coordinate_pairs() {
        let spec = root_spec("3/2", 2);
        // coords (3, 0): L = {2, 3}
        let ls = lifted_length_set(&expr("3"), &spec, &Bounds::default()).unwrap();
        assert!(ls.complete);
        assert_eq!(ls.lengths.iter().copied().collect::<Vec<_>>(), vec![2, 3]);
        // atom
        let ls = lifted_length_set(&expr("x"), &spec, &Bounds::default()).unwrap();
        assert_eq!(ls.lengths.iter().copied().collect::<Vec<_>>(), vec![1]);
        // coords (3, 3): sumset {2,3} + {2,3} = {4,5,6}
        let ls = lifted_length_set(&expr("3x + 3"), &spec, &Bounds::default()).unwrap();
        assert_eq!(
            ls.lengths.iter().copied().collect::<Vec<_>>(),
            vec![4, 5, 6]
        );
        // direct agreement
        let direct = length_set(&expr("3x + 3"), &spec, &Bounds::default()).unwrap();
        assert_eq!(direct.lengths, ls.lengths);
        assert!(direct.complete);
    }

    #[test]
    fn lifted_betti_family_for_three_halves() {
        let spec = root_spec("3/2", 2);
        let report = lifted_betti(&spec, 1, &[(3, 1), (1, 1)], &Bounds::default()).unwrap();
        assert!(report.all_confirmed);
        assert_eq!(report.family.len(), 4);
        let values: Vec<Rat> = report
            .family
            .iter()
            .map(|e| {
                let coords = e.value.coords();
                coords[e.r as usize].clone()
            })
            .collect();
        assert_eq!(
            values,
            vec![
                parse_rational("3").unwrap(),
                parse_rational("3").unwrap(),
                parse_rational("9/2").unwrap(),
                parse_rational("9/2").unwrap(),
            ]
        );
        assert_eq!(report.mixed_non_betti, 2);
    }

    #[test]
    fn five_halves_family_smallest_member() {
        let spec = root_spec("5/2", 2);
        let report = lifted_betti(&spec, 0, &[], &Bounds::default()).unwrap();
        assert!(report.all_confirmed);
        assert_eq!(report.family.len(), 2);
    }

    #[test]
    fn two_coordinate_elements_are_not_betti() {
        let spec = root_spec("3/2", 2);
        // alpha + 3 has coordinates (3, 1)
        let report = betti_graph(&expr("x + 3"), &spec, &Bounds::default()).unwrap();
        assert!(report.complete);
        assert!(!report.is_betti);
    }

    #[test]
    fn projection_compatibility_on_enumerated_sets() {
        let spec = root_spec("3/2", 2);
        let set = enumerate_factorizations(&expr("3x + 3"), &spec, &Bounds::default()).unwrap();
        for a in &set.factorizations {
            for b in &set.factorizations {
                assert!(components_project_equally(a, b, &spec, 2));
            }
        }
    }

    #[test]
    fn non_root_specs_are_rejected() {
        let spec = MonoidSpec::rational(parse_rational("3/2").unwrap()).unwrap();
        assert_eq!(
            lifted_length_set(&expr("3"), &spec, &Bounds::default()).unwrap_err(),
            Error::NotARootSpec
        );
    }
}
