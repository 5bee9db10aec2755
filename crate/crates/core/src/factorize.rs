//! Canonical element representation modulo the minimal polynomial and
//! complete enumeration of factorization sets.
//!
//! Elements of `N0[alpha]` are given as formal expressions `p(alpha)` with
//! `p` a nonnegative-integer polynomial. Two expressions denote the same
//! element exactly when the minimal polynomial divides their difference, so
//! the remainder of `p` modulo the minimal polynomial (a rational
//! coordinate vector in the basis `1, alpha, ..., alpha^(rank-1)`) is a
//! canonical form.
//!
//! Factorizations of an element are the nonnegative-integer polynomials `f`
//! supported on atom exponents with `f ≡ p (mod m)`. The enumerator assigns
//! coefficients from the highest exponent down. Because any congruent `f`
//! equals `p + m*r` with an integer quotient `r` (the minimal polynomial is
//! primitive), the search tracks the synthetic division as it goes: each
//! coefficient choice fixes one quotient coefficient, which must be an
//! integer, and once the level drops below the rank the remaining
//! coefficients are forced outright. Partial assignments are pruned when
//! the residual value goes negative, when it exceeds what the remaining
//! exponents can reach, or when interval propagation through the remaining
//! quotient coefficients shows the forced tail cannot stay nonnegative.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::exact::{Int, IntPolynomial, Rat, RatPolynomial};
use crate::monoid::{AtomDescription, MonoidSpec};
use crate::realroot::AlgebraicNumber;

/// Default DFS node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Guard on derived per-exponent coefficient caps.
const CAP_LIMIT: u64 = 1 << 44;

/// A formal element `p(alpha)` with `p` having nonnegative integer
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementExpr {
    poly: IntPolynomial,
}

impl ElementExpr {
    pub fn new(poly: IntPolynomial) -> Result<ElementExpr, Error> {
        for (k, c) in poly.coeffs().iter().enumerate() {
            if c.is_negative() {
                return Err(Error::NegativeCoefficient { exponent: k });
            }
        }
        Ok(ElementExpr { poly })
    }

    pub fn constant(c: u64) -> ElementExpr {
        ElementExpr {
            poly: IntPolynomial::constant(Int::from(c)),
        }
    }

    pub fn monomial(c: u64, exp: u32) -> ElementExpr {
        ElementExpr {
            poly: IntPolynomial::monomial(Int::from(c), exp as usize),
        }
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Display for ElementExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl From<&Factorization> for ElementExpr {
    fn from(z: &Factorization) -> ElementExpr {
        ElementExpr {
            poly: z.polynomial(),
        }
    }
}

/// Coordinates of an element in the basis `1, alpha, ..., alpha^(rank-1)`:
/// the remainder of its expression modulo the minimal polynomial. Equal
/// coordinates mean equal monoid elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalValue {
    coords: Vec<Rat>,
}

impl CanonicalValue {
    pub fn from_coords(coords: Vec<Rat>) -> CanonicalValue {
        CanonicalValue { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn as_rat_poly(&self) -> RatPolynomial {
        RatPolynomial::from_coeffs(self.coords.clone())
    }

    /// Orders by the real value of the element (exact comparison at the
    /// root). Coordinates determine the value uniquely, so this is total.
    pub fn cmp_value(&self, other: &CanonicalValue, alpha: &AlgebraicNumber) -> Ordering {
        let diff = &self.as_rat_poly() - &other.as_rat_poly();
        match alpha.sign_of_rat_poly(&diff) {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Display for CanonicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Remainder of the expression modulo the minimal polynomial, padded to the
/// rank.
pub fn canonicalize(x: &ElementExpr, spec: &MonoidSpec) -> CanonicalValue {
    canonicalize_poly(x.poly(), spec)
}

pub(crate) fn canonicalize_poly(p: &IntPolynomial, spec: &MonoidSpec) -> CanonicalValue {
    let (_, rem) = p
        .divrem_rational(spec.min_poly())
        .expect("min_poly nonzero");
    let mut coords = rem.coeffs().to_vec();
    coords.resize(spec.rank() as usize, Rat::zero());
    CanonicalValue { coords }
}

/// True iff the two expressions denote the same monoid element, i.e. the
/// minimal polynomial divides their difference.
pub fn equal_in_monoid(a: &ElementExpr, b: &ElementExpr, spec: &MonoidSpec) -> bool {
    let diff = a.poly() - b.poly();
    if diff.is_zero() {
        return true;
    }
    let (_, rem) = diff
        .divrem_rational(spec.min_poly())
        .expect("min_poly nonzero");
    rem.is_zero()
}

/// A finite multiset of atoms `alpha^k`, stored as exponent -> positive
/// count. The empty factorization (of the element 0) has no entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Factorization {
    counts: BTreeMap<u32, u64>,
}

impl Factorization {
    pub fn empty() -> Factorization {
        Factorization::default()
    }

    pub fn from_pairs(pairs: &[(u32, u64)]) -> Factorization {
        let mut counts = BTreeMap::new();
        for &(e, c) in pairs {
            if c > 0 {
                *counts.entry(e).or_insert(0) += c;
            }
        }
        Factorization { counts }
    }

    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of atoms counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The associated polynomial `sum c_k x^k`; its value is the element
    /// being factored and its coefficient sum is the length.
    pub fn polynomial(&self) -> IntPolynomial {
        let max = match self.counts.keys().next_back() {
            Some(&k) => k as usize,
            None => return IntPolynomial::zero(),
        };
        let mut coeffs = vec![Int::zero(); max + 1];
        for (&k, &c) in &self.counts {
            coeffs[k as usize] = Int::from(c);
        }
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Serialization form: sorted `[exponent, count]` pairs.
    pub fn pairs(&self) -> Vec<(u32, u64)> {
        self.counts.iter().map(|(&k, &c)| (k, c)).collect()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, (k, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*a^{k}")?;
        }
        Ok(())
    }
}

/// Enumeration bounds. `max_exponent` and `caps` are derived from the value
/// when the root exceeds 1 and must be given explicitly otherwise.
#[derive(Debug, Clone)]
pub struct Bounds {
    pub max_exponent: Option<u32>,
    pub caps: Option<CapSpec>,
    pub node_budget: u64,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_exponent: None,
            caps: None,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl Bounds {
    pub fn with_budget(node_budget: u64) -> Bounds {
        Bounds {
            node_budget,
            ..Bounds::default()
        }
    }

    pub fn explicit(max_exponent: u32, cap: u64) -> Bounds {
        Bounds {
            max_exponent: Some(max_exponent),
            caps: Some(CapSpec::Uniform(cap)),
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub enum CapSpec {
    /// One cap for every exponent.
    Uniform(u64),
    /// Per-exponent caps, indexed by exponent; must cover the exponent
    /// range.
    PerExponent(Vec<u64>),
}

/// Result of a factorization-set enumeration, with its completeness
/// certificate and the bounds that were actually used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    pub factorizations: Vec<Factorization>,
    /// True only when the bounds provably cover every factorization: atoms
    /// known definitively, exponent bound at least the derived one, caps at
    /// least the derived caps, budget not exhausted.
    pub complete: bool,
    /// The node budget ran out; the set is explicitly truncated.
    pub budget_exhausted: bool,
    pub bounds_used: BoundsUsed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsUsed {
    pub max_exponent: u32,
    pub caps: Vec<u64>,
}

impl FactorizationSet {
    pub fn lengths(&self) -> BTreeSet<u64> {
        self.factorizations.iter().map(Factorization::length).collect()
    }

    pub fn min_length(&self) -> Option<u64> {
        self.factorizations.iter().map(Factorization::length).min()
    }
}

/// Sorted set of factorization lengths plus the completeness flag of the
/// enumeration it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSet {
    pub lengths: BTreeSet<u64>,
    pub complete: bool,
}

/// Atom knowledge for one enumeration: which exponents (up to the table
/// bound) are atoms, whether that is definitive, and stored refutations for
/// the non-atoms.
#[derive(Debug, Clone)]
pub struct AtomTable {
    pub atoms: BTreeSet<u32>,
    pub definitive: bool,
    pub up_to: u32,
    pub refutations: BTreeMap<u32, Factorization>,
}

impl AtomTable {
    fn contains(&self, k: u32) -> bool {
        self.atoms.contains(&k)
    }

    fn max_atom(&self) -> Option<u32> {
        self.atoms.iter().next_back().copied()
    }
}

/// Builds the atom table for exponents `0..=up_to`.
///
/// For `AllPowers` and `FiniteList` specs the table restates the spec
/// description (with computed refutations for listed non-atoms). Otherwise
/// atoms are determined bottom-up: `alpha^k` is an atom exactly when it has
/// no factorization over the atoms below `k`. With `alpha > 1` that
/// enumeration is complete and the verdicts are definitive; otherwise they
/// hold within the supplied bounds only.
pub fn atom_table(spec: &MonoidSpec, up_to: u32, bounds: &Bounds) -> Result<AtomTable, Error> {
    match spec.atom_description() {
        AtomDescription::AllPowers => Ok(AtomTable {
            atoms: (0..=up_to).collect(),
            definitive: true,
            up_to,
            refutations: BTreeMap::new(),
        }),
        AtomDescription::FiniteList(list) => {
            let listed: BTreeSet<u32> = list.iter().copied().filter(|&k| k <= up_to).collect();
            let mut table = AtomTable {
                atoms: listed,
                definitive: true,
                up_to,
                refutations: BTreeMap::new(),
            };
            for k in 0..=up_to {
                if table.contains(k) {
                    continue;
                }
                let target = canonicalize_poly(
                    &IntPolynomial::monomial(Int::one(), k as usize),
                    spec,
                );
                let found = enumerate_value(
                    spec,
                    &table,
                    &target,
                    &IntPolynomial::monomial(Int::one(), k as usize),
                    bounds,
                    true,
                )?;
                match found.factorizations.first() {
                    Some(z) if z.length() >= 2 => {
                        table.refutations.insert(k, z.clone());
                    }
                    Some(_) => {
                        // the value coincides with a listed atom (base 1)
                        table.atoms.insert(k);
                    }
                    None => {
                        debug_assert!(false, "finite atom list does not generate alpha^{k}");
                        table.atoms.insert(k);
                    }
                }
            }
            Ok(table)
        }
        AtomDescription::BoundedUnknown => {
            let definitive = spec.alpha_above_one();
            if !definitive && bounds.max_exponent.is_none() {
                return Err(Error::BoundsRequired);
            }
            let mut table = AtomTable {
                atoms: BTreeSet::new(),
                definitive,
                up_to,
                refutations: BTreeMap::new(),
            };
            for k in 0..=up_to {
                let rho = IntPolynomial::monomial(Int::one(), k as usize);
                let target = canonicalize_poly(&rho, spec);
                let found = enumerate_value(spec, &table, &target, &rho, bounds, true)?;
                match found.factorizations.first() {
                    Some(z) => {
                        debug_assert!(z.length() >= 2);
                        table.refutations.insert(k, z.clone());
                    }
                    None => {
                        table.atoms.insert(k);
                    }
                }
            }
            Ok(table)
        }
    }
}

/// Every factorization of `x` within the (derived or explicit) bounds,
/// canonically ordered.
pub fn enumerate_factorizations(
    x: &ElementExpr,
    spec: &MonoidSpec,
    bounds: &Bounds,
) -> Result<FactorizationSet, Error> {
    if spec.classification().atomic.is_false() {
        return Err(Error::NonAtomicSpec);
    }
    let target = canonicalize(x, spec);
    // table bound: enough to cover the element's own support and the
    // derived exponent range
    let expr_max = x.poly().degree().unwrap_or(0) as u32;
    let derived_max = derived_exponent_bound(spec, &target, bounds)?;
    let up_to = derived_max.max(expr_max);
    let table = atom_table(spec, up_to, bounds)?;
    for k in x.poly().support() {
        if !table.contains(k as u32) {
            return Err(Error::SupportOutsideAtoms { exponent: k as u32 });
        }
    }
    enumerate_value(spec, &table, &target, x.poly(), bounds, false)
}

/// Sorted set of lengths of `Z(x)`, with the completeness flag propagated.
pub fn length_set(
    x: &ElementExpr,
    spec: &MonoidSpec,
    bounds: &Bounds,
) -> Result<LengthSet, Error> {
    let set = enumerate_factorizations(x, spec, bounds)?;
    Ok(LengthSet {
        lengths: set.lengths(),
        complete: set.complete,
    })
}

/// The exponent range the enumeration will use for this value (before
/// intersecting with the atom set).
fn derived_exponent_bound(
    spec: &MonoidSpec,
    target: &CanonicalValue,
    bounds: &Bounds,
) -> Result<u32, Error> {
    if let Some(d) = bounds.max_exponent {
        return Ok(d);
    }
    if spec.alpha_above_one() {
        let vp = target.as_rat_poly();
        return match spec.alpha().floor_log(&vp) {
            Ok(k) => Ok(k),
            Err(Error::ValueBelowOne) => Ok(0),
            Err(e) => Err(e),
        };
    }
    match spec.atom_description() {
        AtomDescription::FiniteList(list) => Ok(list.iter().copied().max().unwrap_or(0)),
        _ => Err(Error::BoundsRequired),
    }
}

/// Core enumeration: all nonnegative-integer polynomials supported on the
/// atom table, within the caps, congruent to `rho0` modulo the minimal
/// polynomial. `target` must be the canonical value of `rho0`.
pub(crate) fn enumerate_value(
    spec: &MonoidSpec,
    table: &AtomTable,
    target: &CanonicalValue,
    rho0: &IntPolynomial,
    bounds: &Bounds,
    first_only: bool,
) -> Result<FactorizationSet, Error> {
    debug_assert_eq!(&canonicalize_poly(rho0, spec), target);

    // trivial values
    let value_sign = value_sign(spec, target);
    if value_sign < 0 {
        return Ok(FactorizationSet {
            factorizations: Vec::new(),
            complete: true,
            budget_exhausted: false,
            bounds_used: BoundsUsed {
                max_exponent: 0,
                caps: Vec::new(),
            },
        });
    }
    if value_sign == 0 {
        return Ok(FactorizationSet {
            factorizations: vec![Factorization::empty()],
            complete: true,
            budget_exhausted: false,
            bounds_used: BoundsUsed {
                max_exponent: 0,
                caps: Vec::new(),
            },
        });
    }

    // effective exponent bound
    let derived = derived_exponent_bound(spec, target, bounds)?;
    let mut e_used = derived.min(table.up_to);
    if let Some(max_atom) = table.max_atom() {
        e_used = e_used.min(max_atom);
    } else {
        // no atoms at all below the bound: nothing to enumerate
        return Ok(FactorizationSet {
            factorizations: Vec::new(),
            complete: table.definitive,
            budget_exhausted: false,
            bounds_used: BoundsUsed {
                max_exponent: 0,
                caps: Vec::new(),
            },
        });
    }

    // caps
    let mut caps: Vec<u64> = Vec::with_capacity(e_used as usize + 1);
    let mut derived_caps_ok = true;
    for k in 0..=e_used {
        if !table.contains(k) {
            caps.push(0);
            continue;
        }
        let derived_cap = value_floor_div(spec, target, k)?;
        let cap = match &bounds.caps {
            None => derived_cap,
            Some(CapSpec::Uniform(c)) => {
                if *c < derived_cap {
                    derived_caps_ok = false;
                }
                (*c).min(derived_cap)
            }
            Some(CapSpec::PerExponent(v)) => {
                let c = *v.get(k as usize).ok_or(Error::BoundsRequired)?;
                if c < derived_cap {
                    derived_caps_ok = false;
                }
                c.min(derived_cap)
            }
        };
        caps.push(cap);
    }

    // completeness of the exponent range
    let range_ok = if spec.alpha_above_one() {
        let needed = match table.max_atom() {
            Some(m) => derived_needed(spec, target)?.min(m),
            None => derived_needed(spec, target)?,
        };
        e_used >= needed && table.definitive
    } else if spec.alpha().as_rational().map(|q| q.is_one()).unwrap_or(false) {
        // base 1: the only atom is alpha^0 and it is covered
        table.definitive
    } else {
        false
    };

    let levels = (e_used as usize).max(rho0.degree().unwrap_or(0));
    let mut caps_full = caps.clone();
    caps_full.resize(levels + 1, 0);

    let mut ctx = Dfs::new(spec, target, caps_full, levels, bounds.node_budget, first_only)?;
    let mut rho: Vec<Int> = rho0.coeffs().to_vec();
    rho.resize(levels + 1, Int::zero());
    let mut stack: Vec<(u32, u64)> = Vec::new();
    ctx.run(levels as isize, &rho, target.coords().to_vec(), &mut stack);

    let mut factorizations = ctx.out;
    factorizations.sort();
    factorizations.dedup();
    if first_only {
        factorizations.truncate(1);
    }
    let complete = range_ok && derived_caps_ok && !ctx.budget_exhausted && !first_only;
    Ok(FactorizationSet {
        factorizations,
        complete,
        budget_exhausted: ctx.budget_exhausted,
        bounds_used: BoundsUsed {
            max_exponent: e_used,
            caps,
        },
    })
}

/// Derived exponent requirement for completeness (`floor_log` of the
/// value).
fn derived_needed(spec: &MonoidSpec, target: &CanonicalValue) -> Result<u32, Error> {
    match spec.alpha().floor_log(&target.as_rat_poly()) {
        Ok(k) => Ok(k),
        Err(Error::ValueBelowOne) => Ok(0),
        Err(e) => Err(e),
    }
}

fn value_sign(spec: &MonoidSpec, v: &CanonicalValue) -> i8 {
    if spec.rank() == 1 {
        let c = &v.coords()[0];
        if c.is_zero() {
            0
        } else if c.is_positive() {
            1
        } else {
            -1
        }
    } else {
        spec.alpha().sign_of_rat_poly(&v.as_rat_poly())
    }
}

/// Exact `floor(value / alpha^k)` as a `u64`.
fn value_floor_div(spec: &MonoidSpec, v: &CanonicalValue, k: u32) -> Result<u64, Error> {
    if let Some(q) = spec.alpha().as_rational() {
        let qk = num_traits::pow::pow(q, k as usize);
        let ratio = (&v.coords()[0] / qk).floor().to_integer();
        return ratio.to_u64().ok_or(Error::BoundOverflow);
    }
    // binary search on c with c*alpha^k <= value
    let alpha = spec.alpha();
    let vp = v.as_rat_poly();
    let le = |c: u64| -> bool {
        let probe = &vp
            - &RatPolynomial::from_coeffs({
                let mut cs = vec![Rat::zero(); k as usize + 1];
                cs[k as usize] = Rat::from_integer(Int::from(c));
                cs
            });
        alpha.sign_of_rat_poly(&probe) >= 0
    };
    if !le(1) {
        return Ok(0);
    }
    let mut lo = 1u64;
    let mut hi = 2u64;
    while le(hi) {
        lo = hi;
        hi = hi.checked_mul(2).ok_or(Error::BoundOverflow)?;
        if hi > CAP_LIMIT {
            return Err(Error::BoundOverflow);
        }
    }
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if le(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Depth-first enumeration state.
struct Dfs {
    alpha: AlgebraicNumber,
    rank: usize,
    m_coeffs: Vec<Int>,
    m_lead: Int,
    caps: Vec<u64>,
    caps_int: Vec<Int>,
    /// coords of `x^k` reduced mod `m`, `k = 0..=levels`
    pows: Vec<Vec<Rat>>,
    /// coords of `sum_(j<=k) caps[j]*x^j`: the most the exponents up to `k`
    /// can contribute
    attain: Vec<Vec<Rat>>,
    budget: u64,
    budget_exhausted: bool,
    first_only: bool,
    out: Vec<Factorization>,
}

impl Dfs {
    fn new(
        spec: &MonoidSpec,
        target: &CanonicalValue,
        caps: Vec<u64>,
        levels: usize,
        budget: u64,
        first_only: bool,
    ) -> Result<Dfs, Error> {
        let rank = spec.rank() as usize;
        let m_coeffs = spec.min_poly().coeffs().to_vec();
        let m_lead = m_coeffs[rank].clone();
        // x^rank reduced: -(m_0 + ... + m_(rank-1) x^(rank-1)) / m_rank
        let mut x_rank_red = Vec::with_capacity(rank);
        for c in m_coeffs.iter().take(rank) {
            x_rank_red.push(Rat::new(-c.clone(), m_lead.clone()));
        }
        let mut pows: Vec<Vec<Rat>> = Vec::with_capacity(levels + 1);
        let mut row = vec![Rat::zero(); rank];
        row[0] = Rat::one();
        pows.push(row.clone());
        for _ in 1..=levels {
            // multiply by x and reduce
            let carry = row[rank - 1].clone();
            for i in (1..rank).rev() {
                row[i] = row[i - 1].clone();
            }
            row[0] = Rat::zero();
            if !carry.is_zero() {
                for i in 0..rank {
                    let add = &x_rank_red[i] * &carry;
                    row[i] += add;
                }
            }
            pows.push(row.clone());
        }
        let mut attain: Vec<Vec<Rat>> = Vec::with_capacity(levels + 1);
        let mut acc = vec![Rat::zero(); rank];
        for k in 0..=levels {
            if caps[k] > 0 {
                let c = Rat::from_integer(Int::from(caps[k]));
                for i in 0..rank {
                    let add = &pows[k][i] * &c;
                    acc[i] += add;
                }
            }
            attain.push(acc.clone());
        }
        let _ = target;
        let alpha = if rank > 1 {
            let width = Rat::new(Int::one(), Int::from(1u64 << 48));
            spec.alpha().refined_below(&width)
        } else {
            spec.alpha().clone()
        };
        Ok(Dfs {
            alpha,
            rank,
            m_coeffs,
            m_lead,
            caps_int: caps.iter().map(|&c| Int::from(c)).collect(),
            caps,
            pows,
            attain,
            budget,
            budget_exhausted: false,
            first_only,
            out: Vec::new(),
        })
    }

    fn sign_coords(&self, coords: &[Rat]) -> i8 {
        if self.rank == 1 {
            let c = &coords[0];
            return if c.is_zero() {
                0
            } else if c.is_positive() {
                1
            } else {
                -1
            };
        }
        if coords.iter().all(Zero::is_zero) {
            return 0;
        }
        self.alpha
            .sign_of_rat_poly(&RatPolynomial::from_coeffs(coords.to_vec()))
    }

    fn done(&self) -> bool {
        self.budget_exhausted || (self.first_only && !self.out.is_empty())
    }

    fn charge(&mut self) -> bool {
        if self.budget == 0 {
            self.budget_exhausted = true;
            return false;
        }
        self.budget -= 1;
        true
    }

    fn run(&mut self, k: isize, rho: &[Int], val: Vec<Rat>, stack: &mut Vec<(u32, u64)>) {
        if self.done() || !self.charge() {
            return;
        }
        if self.sign_coords(&val) < 0 {
            return;
        }
        if k < self.rank as isize {
            self.closed_form(rho, &val, stack);
            return;
        }
        let k = k as usize;
        // the remaining exponents cannot reach beyond their cap volume
        let limit = &self.attain[k.min(self.attain.len() - 1)];
        let headroom: Vec<Rat> = limit.iter().zip(&val).map(|(a, b)| a - b).collect();
        if self.sign_coords(&headroom) < 0 {
            return;
        }

        let rho_k = rho.get(k).cloned().unwrap_or_else(Int::zero);
        // quotient integrality: c ≡ rho_k (mod m_lead)
        let base = rho_k.mod_floor(&self.m_lead);
        let step: u64 = match (&self.m_lead).try_into() {
            Ok(s) => s,
            Err(_) => {
                // leading coefficient beyond u64: only the single candidate
                // equal to rho_k can work, and only if it is in range
                if rho_k.is_negative() || rho_k > self.caps_int[k] {
                    return;
                }
                let c: u64 = (&rho_k).try_into().expect("bounded by cap");
                self.try_candidate(k, &rho_k, c, rho, &val, stack);
                return;
            }
        };
        let Ok(mut c): Result<u64, _> = (&base).try_into() else {
            return;
        };
        while c <= self.caps[k] {
            if self.done() {
                return;
            }
            // residual must stay nonnegative; values shrink as c grows
            let mut child_val = val.clone();
            for i in 0..self.rank {
                let sub = &self.pows[k][i] * &Rat::from_integer(Int::from(c));
                child_val[i] -= sub;
            }
            if self.sign_coords(&child_val) < 0 {
                return;
            }
            self.descend(k, &rho_k, c, rho, child_val, stack);
            match c.checked_add(step) {
                Some(next) => c = next,
                None => return,
            }
        }
    }

    fn try_candidate(
        &mut self,
        k: usize,
        rho_k: &Int,
        c: u64,
        rho: &[Int],
        val: &[Rat],
        stack: &mut Vec<(u32, u64)>,
    ) {
        let mut child_val = val.to_vec();
        for i in 0..self.rank {
            let sub = &self.pows[k][i] * &Rat::from_integer(Int::from(c));
            child_val[i] -= sub;
        }
        if self.sign_coords(&child_val) < 0 {
            return;
        }
        self.descend(k, rho_k, c, rho, child_val, stack);
    }

    fn descend(
        &mut self,
        k: usize,
        rho_k: &Int,
        c: u64,
        rho: &[Int],
        child_val: Vec<Rat>,
        stack: &mut Vec<(u32, u64)>,
    ) {
        // quotient coefficient fixed by this choice
        let r = (Int::from(c) - rho_k) / &self.m_lead;
        let mut child_rho: Vec<Int> = rho[..k].to_vec();
        if !r.is_zero() {
            for (s, ms) in self.m_coeffs.iter().enumerate().take(self.rank) {
                let idx = k - self.rank + s;
                child_rho[idx] += ms * &r;
            }
        }
        if !self.lookahead_ok(&child_rho, k as isize - 1) {
            return;
        }
        stack.push((k as u32, c));
        self.run(k as isize - 1, &child_rho, child_val, stack);
        stack.pop();
    }

    /// Interval propagation over the remaining quotient coefficients: from
    /// level `k_top` down, each level's coefficient window forces a window
    /// on one quotient coefficient, which shifts the windows of the lower
    /// levels. Infeasible windows prune the branch. Sound: every actual
    /// completion stays inside the propagated intervals.
    fn lookahead_ok(&self, rho: &[Int], k_top: isize) -> bool {
        if k_top < 0 {
            return rho.is_empty();
        }
        let k_top = k_top as usize;
        let mut lo: Vec<Int> = rho[..=k_top.min(rho.len().saturating_sub(1))].to_vec();
        lo.resize(k_top + 1, Int::zero());
        let mut hi = lo.clone();
        for j in (self.rank..=k_top).rev() {
            // c_j = rho_j + m_lead * r with c_j in [0, caps[j]]
            let r_lo = (-&hi[j]).div_ceil(&self.m_lead);
            let r_hi = (&self.caps_int[j] - &lo[j]).div_floor(&self.m_lead);
            if r_lo > r_hi {
                return false;
            }
            for (s, ms) in self.m_coeffs.iter().enumerate().take(self.rank) {
                let idx = j - self.rank + s;
                if ms.is_zero() {
                    continue;
                }
                let (a, b) = if ms.is_positive() {
                    (ms * &r_lo, ms * &r_hi)
                } else {
                    (ms * &r_hi, ms * &r_lo)
                };
                lo[idx] += a;
                hi[idx] += b;
            }
        }
        for j in 0..self.rank.min(k_top + 1) {
            if lo[j] > self.caps_int[j] || hi[j].is_negative() {
                return false;
            }
        }
        true
    }

    /// Below the rank the congruence leaves no freedom: the remaining
    /// coefficients are exactly the remainder's.
    fn closed_form(&mut self, rho: &[Int], val: &[Rat], stack: &mut Vec<(u32, u64)>) {
        debug_assert!({
            let mut ok = true;
            for (i, v) in val.iter().enumerate() {
                let r = rho.get(i).cloned().unwrap_or_else(Int::zero);
                if v != &Rat::from_integer(r) {
                    ok = false;
                }
            }
            ok
        });
        let _ = val;
        let mut pairs: Vec<(u32, u64)> = stack.clone();
        for (j, c) in rho.iter().enumerate().take(self.rank) {
            if c.is_negative() || c > &self.caps_int[j.min(self.caps_int.len() - 1)] {
                return;
            }
            if !c.is_zero() {
                let c: u64 = c.try_into().expect("bounded by cap");
                pairs.push((j as u32, c));
            }
        }
        for c in rho.iter().skip(self.rank) {
            if !c.is_zero() {
                return;
            }
        }
        self.out.push(Factorization::from_pairs(&pairs));
    }
}

/// Orders canonical values by real value (strictly total on distinct
/// coordinate vectors).
pub fn compare_values(a: &CanonicalValue, b: &CanonicalValue, spec: &MonoidSpec) -> Ordering {
    a.cmp_value(b, spec.alpha())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::{parse_int_polynomial, parse_rational};
    use crate::monoid::MonoidSpec;

    fn spec_rational(q: &str) -> MonoidSpec {
        MonoidSpec::rational(parse_rational(q).unwrap()).unwrap()
    }

    fn expr(s: &str) -> ElementExpr {
        ElementExpr::new(parse_int_polynomial(s).unwrap()).unwrap()
    }

    fn quartic_spec() -> MonoidSpec {
        MonoidSpec::from_min_poly(
            &parse_int_polynomial("x^4 - 6x^3 + 4x^2 - 2x - 2").unwrap(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn canonicalize_reduces_modulo_min_poly() {
        let spec = MonoidSpec::from_min_poly(
            &parse_int_polynomial("x^4 - x^3 - x^2 - x + 1").unwrap(),
            None,
        )
        .unwrap();
        let v = canonicalize(&expr("x^4 + 1"), &spec);
        // alpha^4 = alpha^3 + alpha^2 + alpha - 1, so alpha^4 + 1 has
        // coordinates of x^3 + x^2 + x
        let expected = canonicalize(&expr("x^3 + x^2 + x"), &spec);
        assert_eq!(v, expected);
        assert_eq!(v.coords()[0], parse_rational("0").unwrap());
    }

    #[test]
    fn canonicalize_rational_case() {
        let spec = spec_rational("3/2");
        let v = canonicalize(&expr("x^2"), &spec);
        assert_eq!(v.coords(), &[parse_rational("9/4").unwrap()]);
        let zero = canonicalize(&ElementExpr::new(IntPolynomial::zero()).unwrap(), &spec);
        assert!(zero.is_zero());
    }

    #[test]
    fn equality_modulo_min_poly() {
        let spec = quartic_spec();
        assert!(equal_in_monoid(
            &expr("x^5 + 6x^2"),
            &expr("5x^4 + 2x^3 + 4x^2 + 4x + 2"),
            &spec
        ));
        assert!(equal_in_monoid(
            &expr("x^5 + 6x^2"),
            &expr("4x^4 + 8x^3 + 6x + 4"),
            &spec
        ));
        let aap = MonoidSpec::from_min_poly(
            &parse_int_polynomial("x^4 - x^3 - x^2 - x + 1").unwrap(),
            None,
        )
        .unwrap();
        assert!(equal_in_monoid(
            &expr("x^7 + 1"),
            &expr("x^6 + x^5 + x^2 + x"),
            &aap
        ));
        let r32 = spec_rational("3/2");
        assert!(!equal_in_monoid(&expr("x"), &expr("x^2"), &r32));
    }

    #[test]
    fn factorizations_of_three_over_three_halves() {
        let spec = spec_rational("3/2");
        let set = enumerate_factorizations(&expr("3"), &spec, &Bounds::default()).unwrap();
        assert!(set.complete);
        assert_eq!(
            set.factorizations,
            vec![
                Factorization::from_pairs(&[(0, 3)]),
                Factorization::from_pairs(&[(1, 2)]),
            ]
        );
    }

    #[test]
    fn atoms_factor_uniquely() {
        let spec = spec_rational("3/2");
        let set = enumerate_factorizations(&expr("x"), &spec, &Bounds::default()).unwrap();
        assert!(set.complete);
        assert_eq!(set.factorizations, vec![Factorization::from_pairs(&[(1, 1)])]);
    }

    #[test]
    fn lengths_of_five_over_five_halves() {
        let spec = spec_rational("5/2");
        let ls = length_set(&expr("5"), &spec, &Bounds::default()).unwrap();
        assert!(ls.complete);
        assert_eq!(ls.lengths.iter().copied().collect::<Vec<_>>(), vec![2, 5]);
    }

    #[test]
    fn paper_element_has_lengths_7_17_22_but_not_12() {
        let spec = quartic_spec();
        let ls = length_set(&expr("x^5 + 6x^2"), &spec, &Bounds::default()).unwrap();
        assert!(ls.complete);
        assert!(ls.lengths.contains(&7));
        assert!(ls.lengths.contains(&17));
        assert!(ls.lengths.contains(&22));
        assert!(!ls.lengths.contains(&12));
    }

    #[test]
    fn integer_base_is_unique_factorization() {
        let spec = spec_rational("2");
        let set = enumerate_factorizations(&expr("5"), &spec, &Bounds::default()).unwrap();
        assert!(set.complete);
        assert_eq!(set.factorizations, vec![Factorization::from_pairs(&[(0, 5)])]);
        // support outside the atom list is rejected
        assert_eq!(
            enumerate_factorizations(&expr("x"), &spec, &Bounds::default()).unwrap_err(),
            Error::SupportOutsideAtoms { exponent: 1 }
        );
    }

    #[test]
    fn zero_element_has_the_empty_factorization() {
        let spec = spec_rational("3/2");
        let zero = ElementExpr::new(IntPolynomial::zero()).unwrap();
        let set = enumerate_factorizations(&zero, &spec, &Bounds::default()).unwrap();
        assert!(set.complete);
        assert_eq!(set.factorizations, vec![Factorization::empty()]);
    }

    #[test]
    fn budget_exhaustion_is_flagged_never_silent() {
        let spec = spec_rational("3/2");
        let mut bounds = Bounds::default();
        bounds.node_budget = 3;
        let set = enumerate_factorizations(&expr("9"), &spec, &bounds).unwrap();
        assert!(set.budget_exhausted);
        assert!(!set.complete);
    }

    #[test]
    fn non_atomic_specs_are_rejected() {
        let spec = spec_rational("1/2");
        assert_eq!(
            enumerate_factorizations(&expr("1"), &spec, &Bounds::default()).unwrap_err(),
            Error::NonAtomicSpec
        );
    }

    #[test]
    fn alpha_below_one_needs_explicit_bounds_and_is_incomplete() {
        let spec =
            MonoidSpec::from_min_poly(&parse_int_polynomial("3x^2 - 2").unwrap(), None).unwrap();
        assert_eq!(
            enumerate_factorizations(&expr("2"), &spec, &Bounds::default()).unwrap_err(),
            Error::BoundsRequired
        );
        let set =
            enumerate_factorizations(&expr("2"), &spec, &Bounds::explicit(6, 8)).unwrap();
        assert!(!set.complete);
        // within bounds: 2 = 2*a^0 = 3*a^2 = a^2 + 3a^4 = ...
        assert!(set
            .factorizations
            .contains(&Factorization::from_pairs(&[(0, 2)])));
        assert!(set
            .factorizations
            .contains(&Factorization::from_pairs(&[(2, 3)])));
        assert!(set
            .factorizations
            .contains(&Factorization::from_pairs(&[(2, 1), (4, 3)])));
    }

    #[test]
    fn minimal_pair_gives_two_factorizations_of_one_element() {
        for spec in [spec_rational("3/2"), quartic_spec()] {
            let pair = spec.minimal_pair();
            let p = ElementExpr::new(pair.positive_part.clone()).unwrap();
            let q = ElementExpr::new(pair.negative_part.clone()).unwrap();
            assert!(equal_in_monoid(&p, &q, &spec));
            let set = enumerate_factorizations(&p, &spec, &Bounds::default()).unwrap();
            let zp = Factorization::from_pairs(
                &pair
                    .positive_part
                    .support()
                    .iter()
                    .map(|&k| {
                        (k as u32, (&pair.positive_part.coeff(k)).try_into().unwrap())
                    })
                    .collect::<Vec<_>>(),
            );
            let zq = Factorization::from_pairs(
                &pair
                    .negative_part
                    .support()
                    .iter()
                    .map(|&k| {
                        (k as u32, (&pair.negative_part.coeff(k)).try_into().unwrap())
                    })
                    .collect::<Vec<_>>(),
            );
            assert!(set.factorizations.contains(&zp), "p-side found");
            assert!(set.factorizations.contains(&zq), "q-side found");
            assert_ne!(zp, zq);
        }
    }

    #[test]
    fn every_factorization_recanonicalizes_to_the_target() {
        let spec = quartic_spec();
        let x = expr("x^5 + 6x^2");
        let target = canonicalize(&x, &spec);
        let set = enumerate_factorizations(&x, &spec, &Bounds::default()).unwrap();
        assert!(!set.factorizations.is_empty());
        for z in &set.factorizations {
            let back = canonicalize(&ElementExpr::from(z), &spec);
            assert_eq!(back, target);
            assert_eq!(z.length(), (&z.polynomial().eval_at_one()).try_into().unwrap());
        }
    }

    #[test]
    fn completeness_is_stable_under_bound_growth() {
        let spec = spec_rational("3/2");
        let x = expr("9");
        let base = enumerate_factorizations(&x, &spec, &Bounds::default()).unwrap();
        assert!(base.complete);
        let bigger = Bounds {
            max_exponent: Some(base.bounds_used.max_exponent + 1),
            caps: Some(CapSpec::Uniform(
                base.bounds_used.caps.iter().copied().max().unwrap() + 1,
            )),
            node_budget: DEFAULT_NODE_BUDGET,
        };
        let grown = enumerate_factorizations(&x, &spec, &bigger).unwrap();
        assert_eq!(base.factorizations, grown.factorizations);
    }

    #[test]
    fn value_ordering_is_exact() {
        let spec = spec_rational("3/2");
        let a = canonicalize(&expr("3"), &spec);
        let b = canonicalize(&expr("2x"), &spec);
        assert_eq!(compare_values(&a, &b, &spec), Ordering::Equal);
        let c = canonicalize(&expr("x^2"), &spec);
        assert_eq!(compare_values(&a, &c, &spec), Ordering::Greater);
    }
}
