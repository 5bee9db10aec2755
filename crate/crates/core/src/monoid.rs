//! Monoid specifications: construction routes, classification, minimal
//! pairs, and atom enumeration for `N0[alpha]`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exact::{self, Int, IntPolynomial, Rat};
use crate::factorize::{atom_table, Bounds, Factorization};
use crate::realroot::AlgebraicNumber;

/// How the spec was constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecRoute {
    /// `alpha = q`, a positive rational.
    RationalCyclic(Rat),
    /// `alpha = q^(1/n)`, the positive irreducible `n`-th root of `q`.
    IrreducibleRoot { base: Rat, degree: u32 },
    /// `alpha` is a designated positive root of a supplied irreducible
    /// minimal polynomial.
    AlgebraicEval,
}

/// What is known about the atom set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomDescription {
    /// Every power `alpha^k`, `k >= 0`, is an atom.
    AllPowers,
    /// Exactly the listed exponents are atoms.
    FiniteList(Vec<u32>),
    /// Atoms are determined by bounded enumeration only.
    BoundedUnknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

/// Where a classification verdict comes from: a rule quoted from the
/// literature, a computation done here, or nothing at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    CitedRule(&'static str),
    Computed(&'static str),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flag {
    pub verdict: Verdict,
    pub provenance: Provenance,
}

impl Flag {
    fn unknown() -> Flag {
        Flag {
            verdict: Verdict::Unknown,
            provenance: Provenance::Unknown,
        }
    }
    fn cited(value: bool, rule: &'static str) -> Flag {
        Flag {
            verdict: if value { Verdict::True } else { Verdict::False },
            provenance: Provenance::CitedRule(rule),
        }
    }
    fn computed(value: bool, why: &'static str) -> Flag {
        Flag {
            verdict: if value { Verdict::True } else { Verdict::False },
            provenance: Provenance::Computed(why),
        }
    }
    pub fn is_true(&self) -> bool {
        self.verdict == Verdict::True
    }
    pub fn is_false(&self) -> bool {
        self.verdict == Verdict::False
    }
}

/// Classification flags with provenance. The implication chain
/// `UFM => BFM => ACCP => atomic` is closed automatically, in both
/// directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub atomic: Flag,
    pub bounded_factorization: Flag,
    pub accp: Flag,
    pub unique_factorization: Flag,
}

impl Classification {
    fn unknown() -> Classification {
        Classification {
            atomic: Flag::unknown(),
            bounded_factorization: Flag::unknown(),
            accp: Flag::unknown(),
            unique_factorization: Flag::unknown(),
        }
    }

    fn close(&mut self) {
        // downward True: UFM => BFM => ACCP => atomic
        let chain = |upper: &Flag, lower: &mut Flag, why: &'static str| {
            if upper.verdict == Verdict::True && lower.verdict == Verdict::Unknown {
                *lower = Flag::computed(true, why);
            }
        };
        let c = *self;
        chain(
            &c.unique_factorization,
            &mut self.bounded_factorization,
            "implied: unique factorization bounds every length set",
        );
        let c = *self;
        chain(
            &c.bounded_factorization,
            &mut self.accp,
            "implied: bounded factorization forces chains of principal ideals to stabilize",
        );
        let c = *self;
        chain(
            &c.accp,
            &mut self.atomic,
            "implied: the ascending chain condition gives atomicity",
        );
        // upward False: not atomic => not ACCP => not BFM => not UFM
        let chain_f = |lower: &Flag, upper: &mut Flag, why: &'static str| {
            if lower.verdict == Verdict::False && upper.verdict == Verdict::Unknown {
                *upper = Flag::computed(false, why);
            }
        };
        let c = *self;
        chain_f(
            &c.atomic,
            &mut self.accp,
            "implied: a non-atomic monoid cannot satisfy the chain condition",
        );
        let c = *self;
        chain_f(
            &c.accp,
            &mut self.bounded_factorization,
            "implied: without the chain condition length sets cannot all be bounded",
        );
        let c = *self;
        chain_f(
            &c.bounded_factorization,
            &mut self.unique_factorization,
            "implied: a unique factorization monoid is bounded",
        );
    }
}

const RULE_INTEGER_BASE: &str = "integer base: the monoid is plain N0 with single atom 1";
const RULE_RECIPROCAL_BASE: &str =
    "base is the reciprocal of an integer >= 2: every power splits, no atoms remain";
const RULE_RATIONAL_ATOMIC: &str =
    "positive non-integer rational base with numerator >= 2: atomic, atoms are all powers";
const RULE_ROOT_ATOMIC: &str =
    "irreducible root of a rational with numerator and denominator >= 2: atomic, atoms are all powers";
const RULE_ALPHA_GT_ONE: &str =
    "root exceeds 1: nonzero elements stay away from 0, so every length set is finite";
const RULE_PRIME_LEAD: &str =
    "two-term minimal polynomial p*x^d - c with p prime, p < c, p not dividing c: chains of principal ideals stabilize";
const RULE_PRIME_CONST: &str =
    "two-term minimal polynomial c*x^d - p with p prime, p < c, p not dividing c: atomic, but a strictly ascending chain of principal ideals exists";
const NOTE_TWO_FACTORIZATIONS: &str =
    "the numerator splits two ways: n(q) copies of alpha^0 and d(q) copies of alpha^(rank)";

/// A described monoid `N0[alpha]`: minimal polynomial, designated root,
/// rank, atom description, and classification flags. Immutable after
/// construction.
#[derive(Debug, Clone)]
pub struct MonoidSpec {
    route: SpecRoute,
    min_poly: IntPolynomial,
    alpha: AlgebraicNumber,
    rank: u32,
    atom_description: AtomDescription,
    classification: Classification,
    alpha_above_one: bool,
}

impl MonoidSpec {
    /// `N0[q]` for a positive rational `q`.
    pub fn rational(q: Rat) -> Result<MonoidSpec, Error> {
        if !q.is_positive() {
            return Err(Error::NonPositiveBase);
        }
        let min_poly =
            IntPolynomial::from_coeffs(vec![-q.numer().clone(), q.denom().clone()]);
        let alpha = AlgebraicNumber::unique_positive_root(&min_poly)?;
        Ok(Self::finish(SpecRoute::RationalCyclic(q), min_poly, alpha))
    }

    /// `N0[q^(1/n)]` for the positive irreducible `n`-th root of `q`.
    /// Checks the binomial irreducibility condition: `q` must not be a
    /// `p`-th rational power for any prime `p | n`.
    pub fn irreducible_root(q: Rat, n: u32) -> Result<MonoidSpec, Error> {
        if !q.is_positive() {
            return Err(Error::NonPositiveBase);
        }
        if n < 2 {
            return Err(Error::NotARootSpec);
        }
        for p in small_primes_dividing(n) {
            if exact::irreducible::rational_pth_root(&q, p).is_some() {
                return Err(Error::NotIrreducibleRoot { prime: p });
            }
        }
        let mut coeffs = vec![Int::zero(); n as usize + 1];
        coeffs[0] = -q.numer().clone();
        coeffs[n as usize] = q.denom().clone();
        let min_poly = IntPolynomial::from_coeffs(coeffs);
        let alpha = AlgebraicNumber::unique_positive_root(&min_poly)?;
        Ok(Self::finish(
            SpecRoute::IrreducibleRoot { base: q, degree: n },
            min_poly,
            alpha,
        ))
    }

    /// `N0[alpha]` for a designated positive root of `m`. Irreducibility is
    /// certified (reducible or undecidable inputs are rejected). When `m`
    /// has several positive roots, `root_index` picks one (ascending order);
    /// it defaults to the largest.
    pub fn from_min_poly(m: &IntPolynomial, root_index: Option<usize>) -> Result<MonoidSpec, Error> {
        let roots = AlgebraicNumber::positive_roots_of(m)?;
        if roots.is_empty() {
            return Err(Error::NoPositiveRoot);
        }
        let count = roots.len();
        let index = root_index.unwrap_or(count - 1);
        let alpha = roots
            .into_iter()
            .nth(index)
            .ok_or(Error::RootIndexOutOfRange { index, count })?;
        let min_poly = alpha.min_poly().clone();
        Ok(Self::finish(SpecRoute::AlgebraicEval, min_poly, alpha))
    }

    /// Wraps an already-certified root.
    pub fn from_algebraic(alpha: AlgebraicNumber) -> MonoidSpec {
        let min_poly = alpha.min_poly().clone();
        Self::finish(SpecRoute::AlgebraicEval, min_poly, alpha)
    }

    fn finish(route: SpecRoute, min_poly: IntPolynomial, alpha: AlgebraicNumber) -> MonoidSpec {
        let rank = min_poly.degree().expect("min_poly nonzero") as u32;
        let alpha_above_one = alpha.is_greater_than_one();
        let (classification, atom_description) = classify(&min_poly, alpha_above_one);
        MonoidSpec {
            route,
            min_poly,
            alpha,
            rank,
            atom_description,
            classification,
            alpha_above_one,
        }
    }

    pub fn route(&self) -> &SpecRoute {
        &self.route
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn alpha(&self) -> &AlgebraicNumber {
        &self.alpha
    }

    /// Rank of the monoid; equals the degree of the minimal polynomial.
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn atom_description(&self) -> &AtomDescription {
        &self.atom_description
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn alpha_above_one(&self) -> bool {
        self.alpha_above_one
    }

    /// For two-term minimal polynomials `a x^n - b` this is `(q, n)` with
    /// `alpha = q^(1/n)`, `q = b/a`; covers both explicit root specs and
    /// rational specs (`n = 1`).
    pub fn root_structure(&self) -> Option<(Rat, u32)> {
        let (a, b, n) = two_term_shape(&self.min_poly)?;
        Some((Rat::new(b, a), n))
    }

    /// Sign-split of the primitive minimal polynomial into two polynomials
    /// with nonnegative coefficients and disjoint supports.
    pub fn minimal_pair(&self) -> MinimalPair {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for c in self.min_poly.coeffs() {
            if c.is_positive() {
                pos.push(c.clone());
                neg.push(Int::zero());
            } else {
                pos.push(Int::zero());
                neg.push(-c);
            }
        }
        MinimalPair {
            positive_part: IntPolynomial::from_coeffs(pos),
            negative_part: IntPolynomial::from_coeffs(neg),
        }
    }

    /// Atom verdict for every exponent up to `k_max`. Definitive when the
    /// spec pins the atoms or when `alpha > 1` (complete enumeration);
    /// otherwise "atom within bound".
    pub fn atoms_up_to(&self, k_max: u32, bounds: &Bounds) -> Result<AtomsReport, Error> {
        if self.classification.atomic.is_false() {
            return Err(Error::NonAtomicSpec);
        }
        let table = atom_table(self, k_max, bounds)?;
        let entries = (0..=k_max)
            .map(|k| AtomEntry {
                exponent: k,
                status: if table.atoms.contains(&k) {
                    AtomStatus::Atom {
                        definitive: table.definitive,
                    }
                } else {
                    AtomStatus::NonAtom {
                        refutation: table
                            .refutations
                            .get(&k)
                            .cloned()
                            .unwrap_or_else(Factorization::empty),
                    }
                },
            })
            .collect();
        Ok(AtomsReport {
            entries,
            complete: table.definitive,
        })
    }
}

/// The sign-split `(p, q)` of the primitive integer form of the minimal
/// polynomial: `p - q = l*m_alpha`, supports disjoint, coefficients
/// nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPair {
    pub positive_part: IntPolynomial,
    pub negative_part: IntPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomsReport {
    pub entries: Vec<AtomEntry>,
    pub complete: bool,
}

impl AtomsReport {
    /// Exponents reported as atoms.
    pub fn atom_exponents(&self) -> Vec<u32> {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, AtomStatus::Atom { .. }))
            .map(|e| e.exponent)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomEntry {
    pub exponent: u32,
    pub status: AtomStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomStatus {
    Atom { definitive: bool },
    /// The stored factorization writes `alpha^k` as a different combination
    /// of atoms, refuting atomicity of that power.
    NonAtom { refutation: Factorization },
}

/// Applies the cited classification rules to the minimal-polynomial shape.
/// Anything not covered stays `Unknown`.
fn classify(min_poly: &IntPolynomial, alpha_above_one: bool) -> (Classification, AtomDescription) {
    let mut c = Classification::unknown();
    let mut atoms = AtomDescription::BoundedUnknown;

    let shape = two_term_shape(min_poly);
    if let Some((a, b, n)) = &shape {
        let q_integer = a.is_one();
        let q_reciprocal = b.is_one();
        if *n == 1 {
            if q_integer {
                c.unique_factorization = Flag::cited(true, RULE_INTEGER_BASE);
                atoms = AtomDescription::FiniteList(vec![0]);
            } else if q_reciprocal {
                c.atomic = Flag::cited(false, RULE_RECIPROCAL_BASE);
                atoms = AtomDescription::FiniteList(vec![]);
            } else {
                c.atomic = Flag::cited(true, RULE_RATIONAL_ATOMIC);
                c.unique_factorization = Flag::computed(false, NOTE_TWO_FACTORIZATIONS);
                atoms = AtomDescription::AllPowers;
            }
        } else if !q_integer && !q_reciprocal {
            c.atomic = Flag::cited(true, RULE_ROOT_ATOMIC);
            c.unique_factorization = Flag::computed(false, NOTE_TWO_FACTORIZATIONS);
            atoms = AtomDescription::AllPowers;
        }
        // prime two-term families
        if is_small_prime(a) && a < b {
            c.accp = Flag::cited(true, RULE_PRIME_LEAD);
        }
        if is_small_prime(b) && b < a {
            c.atomic = Flag::cited(true, RULE_PRIME_CONST);
            c.accp = Flag::cited(false, RULE_PRIME_CONST);
            if atoms == AtomDescription::BoundedUnknown {
                atoms = AtomDescription::AllPowers;
            }
        }
    }

    if alpha_above_one {
        c.bounded_factorization = Flag::cited(true, RULE_ALPHA_GT_ONE);
    }
    c.close();
    (c, atoms)
}

/// `a x^n - b` with `a, b > 0` (primitive): returns `(a, b, n)`.
fn two_term_shape(m: &IntPolynomial) -> Option<(Int, Int, u32)> {
    let n = m.degree()?;
    if n == 0 || m.support() != vec![0, n] {
        return None;
    }
    let a = m.leading()?.clone();
    let b = -m.coeff(0);
    if a.is_positive() && b.is_positive() {
        Some((a, b, n as u32))
    } else {
        None
    }
}

fn is_small_prime(v: &Int) -> bool {
    let n: u64 = match v.try_into() {
        Ok(n) => n,
        Err(_) => return false,
    };
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn small_primes_dividing(n: u32) -> Vec<u32> {
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
