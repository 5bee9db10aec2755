//! Arithmetic invariants on factorization sets: gcd, distance, catenary
//! degrees, Betti graphs, monoid scans, length-set structure, and furcus
//! witnesses.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::exact::{Int, IntPolynomial, Rat};
use crate::factorize::{
    atom_table, canonicalize, canonicalize_poly, enumerate_factorizations, enumerate_value,
    length_set, Bounds, CanonicalValue, ElementExpr, Factorization, FactorizationSet, LengthSet,
};
use crate::monoid::MonoidSpec;

/// Exponent-wise minimum of the two atom multisets.
pub fn fact_gcd(a: &Factorization, b: &Factorization) -> Factorization {
    let mut pairs = Vec::new();
    for (&k, &ca) in a.counts() {
        if let Some(&cb) = b.counts().get(&k) {
            pairs.push((k, ca.min(cb)));
        }
    }
    Factorization::from_pairs(&pairs)
}

/// `max(|a| - |gcd|, |b| - |gcd|)`: the distance between two factorizations
/// of the same element.
pub fn distance(a: &Factorization, b: &Factorization) -> u64 {
    let g = gcd_length(a, b);
    (a.length() - g).max(b.length() - g)
}

fn gcd_length(a: &Factorization, b: &Factorization) -> u64 {
    let mut g = 0u64;
    for (&k, &ca) in a.counts() {
        if let Some(&cb) = b.counts().get(&k) {
            g += ca.min(cb);
        }
    }
    g
}

/// Catenary degree of one element, with the completeness flag of the
/// underlying enumeration. When the enumeration is incomplete the value is
/// the catenary degree of the observed part of `Z(x)` only (an estimate,
/// not a certified bound).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catenary {
    pub value: u64,
    pub complete: bool,
}

pub fn catenary_element(
    x: &ElementExpr,
    spec: &MonoidSpec,
    bounds: &Bounds,
) -> Result<Catenary, Error> {
    let set = enumerate_factorizations(x, spec, bounds)?;
    Ok(Catenary {
        value: catenary_of_set(&set.factorizations),
        complete: set.complete,
    })
}

/// Bottleneck of a minimum spanning tree of the complete graph on the
/// factorizations under `distance`: the least `N` whose threshold graph is
/// connected, which is the element catenary degree. Prim's scan, `O(n^2)`
/// distance evaluations.
pub fn catenary_of_set(factorizations: &[Factorization]) -> u64 {
    let n = factorizations.len();
    if n <= 1 {
        return 0;
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![u64::MAX; n];
    in_tree[0] = true;
    for (j, z) in factorizations.iter().enumerate().skip(1) {
        best[j] = distance(&factorizations[0], z);
    }
    let mut bottleneck = 0u64;
    for _ in 1..n {
        let mut pick = usize::MAX;
        let mut pick_d = u64::MAX;
        for j in 0..n {
            if !in_tree[j] && best[j] < pick_d {
                pick = j;
                pick_d = best[j];
            }
        }
        in_tree[pick] = true;
        bottleneck = bottleneck.max(pick_d);
        for j in 0..n {
            if !in_tree[j] {
                let d = distance(&factorizations[pick], &factorizations[j]);
                if d < best[j] {
                    best[j] = d;
                }
            }
        }
    }
    bottleneck
}

/// Betti graph of one element: vertices are factorizations, edges join
/// factorizations sharing an atom. The element is Betti when the graph is
/// disconnected; that verdict is definitive only for complete enumerations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiReport {
    pub element: CanonicalValue,
    pub components: Vec<Vec<Factorization>>,
    pub is_betti: bool,
    pub complete: bool,
}

pub fn betti_graph(
    x: &ElementExpr,
    spec: &MonoidSpec,
    bounds: &Bounds,
) -> Result<BettiReport, Error> {
    let set = enumerate_factorizations(x, spec, bounds)?;
    let components = betti_components(&set.factorizations);
    Ok(BettiReport {
        element: canonicalize(x, spec),
        is_betti: components.len() >= 2,
        components,
        complete: set.complete,
    })
}

/// Connected components of the Betti graph. Two factorizations are adjacent
/// iff their supports intersect, so it suffices to union factorizations
/// through the exponents they contain.
pub fn betti_components(factorizations: &[Factorization]) -> Vec<Vec<Factorization>> {
    let n = factorizations.len();
    let mut uf = UnionFind::new(n);
    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, z) in factorizations.iter().enumerate() {
        for &k in z.counts().keys() {
            match seen.get(&k) {
                Some(&j) => uf.union(i, j),
                None => {
                    seen.insert(k, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Factorization>> = BTreeMap::new();
    for (i, z) in factorizations.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(z.clone());
    }
    groups.into_values().collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }
    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Scan region: all elements expressible with exponents up to
/// `max_exponent`, coefficients up to `max_coeff`, optionally clipped to
/// values at most `value_cutoff`. Elements are deduplicated by canonical
/// value and visited in increasing value order.
#[derive(Debug, Clone)]
pub struct ScanBounds {
    pub max_exponent: u32,
    pub max_coeff: u64,
    pub value_cutoff: Option<Rat>,
}

/// One deduplicated scanned element: canonical value plus the first
/// expression that produced it.
#[derive(Debug, Clone)]
pub struct ScannedElement {
    pub value: CanonicalValue,
    pub representative: ElementExpr,
}

/// Enumerates the scan region, deduplicated and value-ordered.
pub fn scan_elements(spec: &MonoidSpec, scan: &ScanBounds) -> Vec<ScannedElement> {
    let mut by_coords: BTreeMap<Vec<Rat>, IntPolynomial> = BTreeMap::new();
    let width = scan.max_exponent as usize + 1;
    let mut digits = vec![0u64; width];
    // powers of alpha reduced, for incremental partial sums
    let rank = spec.rank() as usize;
    let mut pows: Vec<Vec<Rat>> = Vec::with_capacity(width);
    for k in 0..width {
        pows.push(
            canonicalize_poly(&IntPolynomial::monomial(Int::one(), k), spec)
                .coords()
                .to_vec(),
        );
    }
    let cutoff_poly = scan.value_cutoff.clone();
    let over_cutoff = |coords: &[Rat]| -> bool {
        match &cutoff_poly {
            None => false,
            Some(c) => {
                if rank == 1 {
                    &coords[0] > c
                } else {
                    let mut probe = coords.to_vec();
                    probe[0] -= c;
                    spec.alpha()
                        .sign_of_rat_poly(&crate::exact::RatPolynomial::from_coeffs(probe))
                        > 0
                }
            }
        }
    };

    // depth-first odometer over digit vectors with partial-sum pruning
    fn rec(
        pos: usize,
        coords: Vec<Rat>,
        digits: &mut Vec<u64>,
        max_coeff: u64,
        pows: &[Vec<Rat>],
        over_cutoff: &dyn Fn(&[Rat]) -> bool,
        out: &mut BTreeMap<Vec<Rat>, IntPolynomial>,
    ) {
        if pos == pows.len() {
            if !out.contains_key(&coords) {
                let poly = IntPolynomial::from_coeffs(
                    digits.iter().map(|&c| Int::from(c)).collect(),
                );
                out.insert(coords, poly);
            }
            return;
        }
        let mut current = coords;
        for c in 0..=max_coeff {
            digits[pos] = c;
            if c > 0 {
                for (i, p) in pows[pos].iter().enumerate() {
                    current[i] += p;
                }
                if over_cutoff(&current) {
                    break;
                }
            }
            rec(
                pos + 1,
                current.clone(),
                digits,
                max_coeff,
                pows,
                over_cutoff,
                out,
            );
        }
        digits[pos] = 0;
    }

    let zero = vec![Rat::zero(); rank];
    rec(
        0,
        zero,
        &mut digits,
        scan.max_coeff,
        &pows,
        &over_cutoff,
        &mut by_coords,
    );

    let mut items: Vec<ScannedElement> = by_coords
        .into_iter()
        .map(|(coords, poly)| ScannedElement {
            value: CanonicalValue::from_coords(coords),
            representative: ElementExpr::new(poly).expect("scan digits are nonnegative"),
        })
        .collect();
    if rank == 1 {
        items.sort_by(|a, b| a.value.coords()[0].cmp(&b.value.coords()[0]));
    } else {
        items.sort_by(|a, b| a.value.cmp_value(&b.value, spec.alpha()));
    }
    items
}

/// Outcome of a catenary scan over the region.
#[derive(Debug, Clone)]
pub struct CatenaryScanReport {
    pub observed_sup: u64,
    /// First element (in value order) attaining the observed supremum.
    pub witness: Option<ScannedElement>,
    /// `max(n(q), d(q))` for atomic non-integer rational bases.
    pub formula: Option<u64>,
    /// Set when the formula applies: whether every observed value stayed
    /// within it.
    pub formula_respected: Option<bool>,
    pub elements_scanned: usize,
    pub all_complete: bool,
}

/// Scans the region and reports the largest element catenary degree seen.
pub fn catenary_monoid_scan(
    spec: &MonoidSpec,
    scan: &ScanBounds,
    bounds: &Bounds,
) -> Result<CatenaryScanReport, Error> {
    if spec.classification().atomic.is_false() {
        return Err(Error::NonAtomicSpec);
    }
    let elements = scan_elements(spec, scan);
    let table = scan_atom_table(spec, scan, &elements, bounds)?;
    let mut observed = 0u64;
    let mut witness = None;
    let mut all_complete = true;
    for el in &elements {
        let set = enumerate_value(
            spec,
            &table,
            &el.value,
            el.representative.poly(),
            bounds,
            false,
        )?;
        all_complete &= set.complete;
        let c = catenary_of_set(&set.factorizations);
        if c > observed {
            observed = c;
            witness = Some(el.clone());
        }
    }
    let formula = rational_catenary_formula(spec);
    let formula_respected = formula.map(|f| observed <= f);
    Ok(CatenaryScanReport {
        observed_sup: observed,
        witness,
        formula,
        formula_respected,
        elements_scanned: elements.len(),
        all_complete,
    })
}

/// `max(n(q), d(q))` for an atomic, non-integer rational base.
pub fn rational_catenary_formula(spec: &MonoidSpec) -> Option<u64> {
    let (q, n) = spec.root_structure()?;
    if n != 1 || q.denom().is_one() || !spec.classification().atomic.is_true() {
        return None;
    }
    let nq = q.numer().to_u64()?;
    let dq = q.denom().to_u64()?;
    Some(nq.max(dq))
}

/// One Betti element found by a scan.
#[derive(Debug, Clone)]
pub struct BettiScanHit {
    pub element: ScannedElement,
    pub component_count: usize,
    /// Whether the closed-form isolated vertex predicted for the formula
    /// family is present and isolated (only set for formula members).
    pub predicted_isolated_ok: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct BettiScanReport {
    pub betti: Vec<BettiScanHit>,
    /// The closed-form Betti family clipped to the scanned set, when the
    /// spec is a rational base or an irreducible root of one.
    pub formula_in_range: Option<Vec<CanonicalValue>>,
    /// Found set equals the clipped formula family.
    pub matches_formula: Option<bool>,
    pub elements_scanned: usize,
    pub all_complete: bool,
}

/// Scans the region, classifies every element's Betti graph, and
/// cross-checks the closed-form family where one is known.
pub fn betti_scan(
    spec: &MonoidSpec,
    scan: &ScanBounds,
    bounds: &Bounds,
) -> Result<BettiScanReport, Error> {
    if spec.classification().atomic.is_false() {
        return Err(Error::NonAtomicSpec);
    }
    let elements = scan_elements(spec, scan);
    let table = scan_atom_table(spec, scan, &elements, bounds)?;
    let scanned_coords: BTreeSet<Vec<Rat>> = elements
        .iter()
        .map(|e| e.value.coords().to_vec())
        .collect();

    let family = betti_formula_family(spec, &scanned_coords);

    let mut hits: Vec<BettiScanHit> = Vec::new();
    let mut all_complete = true;
    for el in &elements {
        let set = enumerate_value(
            spec,
            &table,
            &el.value,
            el.representative.poly(),
            bounds,
            false,
        )?;
        all_complete &= set.complete;
        let components = betti_components(&set.factorizations);
        if components.len() >= 2 {
            let predicted_isolated_ok = family.as_ref().and_then(|fam| {
                fam.iter()
                    .find(|(coords, _)| coords == el.value.coords())
                    .map(|(_, iso)| {
                        components
                            .iter()
                            .any(|comp| comp.len() == 1 && &comp[0] == iso)
                    })
            });
            hits.push(BettiScanHit {
                element: el.clone(),
                component_count: components.len(),
                predicted_isolated_ok,
            });
        }
    }

    let (formula_in_range, matches_formula) = match &family {
        None => (None, None),
        Some(fam) => {
            let fam_coords: BTreeSet<Vec<Rat>> =
                fam.iter().map(|(c, _)| c.clone()).collect();
            let found: BTreeSet<Vec<Rat>> = hits
                .iter()
                .map(|h| h.element.value.coords().to_vec())
                .collect();
            (
                Some(
                    fam.iter()
                        .map(|(c, _)| CanonicalValue::from_coords(c.clone()))
                        .collect(),
                ),
                Some(fam_coords == found),
            )
        }
    };

    Ok(BettiScanReport {
        betti: hits,
        formula_in_range,
        matches_formula,
        elements_scanned: elements.len(),
        all_complete,
    })
}

/// The closed-form Betti family `n(q)^(m+1)/d(q)^m * alpha^r` (for `r`
/// ranging over residues when the spec is a root of a rational), clipped to
/// the scanned value set, each with its predicted isolated vertex:
/// `d(q)` copies of the `(m+1)`-st power when `d < n`, `n(q)` copies of the
/// `m`-th power when `n < d`.
fn betti_formula_family(
    spec: &MonoidSpec,
    scanned: &BTreeSet<Vec<Rat>>,
) -> Option<Vec<(Vec<Rat>, Factorization)>> {
    let (q, n_root) = spec.root_structure()?;
    if q.denom().is_one() || q.numer().is_one() {
        return None;
    }
    if !spec.classification().atomic.is_true() {
        return None;
    }
    let rank = spec.rank() as usize;
    let nq = q.numer().to_u64()?;
    let dq = q.denom().to_u64()?;
    // family members have a single nonzero coordinate; the member at index
    // m has denominator d^m exactly, so the walk stops once either the
    // value (q > 1) or the denominator (any q) leaves the scanned grid
    let mut coord_max = vec![Rat::zero(); rank];
    let mut den_max = vec![Int::one(); rank];
    for v in scanned {
        for (i, c) in v.iter().enumerate() {
            if c > &coord_max[i] {
                coord_max[i] = c.clone();
            }
            if c.denom() > &den_max[i] {
                den_max[i] = c.denom().clone();
            }
        }
    }
    let above_one = nq > dq;
    let mut out = Vec::new();
    for r in 0..n_root {
        let mut value = Rat::from_integer(Int::from(nq));
        let mut m = 0u32;
        loop {
            if value.denom() > &den_max[r as usize]
                || (above_one && value > coord_max[r as usize])
            {
                break;
            }
            let mut coords = vec![Rat::zero(); rank];
            coords[r as usize] = value.clone();
            if scanned.contains(&coords) {
                let iso = if dq < nq {
                    Factorization::from_pairs(&[((m + 1) * n_root + r, dq)])
                } else {
                    Factorization::from_pairs(&[(m * n_root + r, nq)])
                };
                out.push((coords, iso));
            }
            value *= &q;
            m += 1;
        }
    }
    out.sort();
    out.dedup_by(|a, b| a.0 == b.0);
    Some(out)
}

/// Atom table covering the whole scan (largest element decides the bound).
fn scan_atom_table(
    spec: &MonoidSpec,
    scan: &ScanBounds,
    elements: &[ScannedElement],
    bounds: &Bounds,
) -> Result<crate::factorize::AtomTable, Error> {
    let mut up_to = scan.max_exponent;
    if let Some(d) = bounds.max_exponent {
        up_to = up_to.max(d);
    } else if spec.alpha_above_one() {
        if let Some(last) = elements.last() {
            let vp = last.value.as_rat_poly();
            match spec.alpha().floor_log(&vp) {
                Ok(k) => up_to = up_to.max(k),
                Err(Error::ValueBelowOne) => {}
                Err(e) => return Err(e),
            }
        }
    }
    atom_table(spec, up_to, bounds)
}

/// Almost-arithmetic-progression decomposition: `S = c + (S' u S* u S'')`
/// inside `c + dZ`, `S*` a full AP with difference `d` starting at 0, `S'`
/// within `{-N..-1}`, `S''` within `sup S* + {1..N}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AapDecomposition {
    pub d: u64,
    pub n: u64,
    /// Base point `c` (an element of the set).
    pub c: u64,
    /// Offsets below `c` (negative part, stored as distances below `c`).
    pub s_prime: Vec<u64>,
    /// The AP core, as offsets from `c`.
    pub s_star: Vec<u64>,
    /// Offsets above the core end.
    pub s_double_prime: Vec<u64>,
}

/// Length-set structure report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSetReport {
    pub lengths: Vec<u64>,
    pub complete: bool,
    pub is_ap: bool,
    /// Common difference when `is_ap` and the set has at least two
    /// elements.
    pub common_difference: Option<u64>,
    pub aap: Option<AapDecomposition>,
}

/// Analyzes a finite length set: AP check always; AAP decomposition for the
/// supplied `(d, N)` when given, otherwise inferred over all `d` up to the
/// largest gap and `N` up to `n_cap`.
pub fn length_report(
    ls: &LengthSet,
    aap_params: Option<(u64, u64)>,
    n_cap: u64,
) -> LengthSetReport {
    let lengths: Vec<u64> = ls.lengths.iter().copied().collect();
    let (is_ap, common_difference) = ap_structure(&lengths);
    let aap = match aap_params {
        Some((d, n)) => aap_decompose(&lengths, d, n),
        None => infer_aap(&lengths, n_cap),
    };
    LengthSetReport {
        lengths,
        complete: ls.complete,
        is_ap,
        common_difference,
        aap,
    }
}

/// `(is_ap, common difference)`: every gap equal. Singletons and empty sets
/// are trivially APs.
pub fn ap_structure(sorted: &[u64]) -> (bool, Option<u64>) {
    if sorted.len() <= 1 {
        return (true, None);
    }
    let d = sorted[1] - sorted[0];
    for w in sorted.windows(2) {
        if w[1] - w[0] != d {
            return (false, None);
        }
    }
    (true, Some(d))
}

/// AAP decomposition for given difference `d >= 1` and bound `n`. Returns
/// the decomposition with the longest core (ties: smallest base).
pub fn aap_decompose(sorted: &[u64], d: u64, n: u64) -> Option<AapDecomposition> {
    if sorted.is_empty() || d == 0 {
        return None;
    }
    let mut best: Option<AapDecomposition> = None;
    for (i, &c) in sorted.iter().enumerate() {
        // prefix: below c within N
        if sorted[..i].iter().any(|&s| c - s > n) {
            continue;
        }
        // longest full run c, c+d, ...
        let mut t = 0u64;
        let mut idx = i;
        while idx + 1 < sorted.len() && sorted[idx + 1] == c + (t + 1) * d {
            idx += 1;
            t += 1;
        }
        let core_end = c + t * d;
        // suffix: above the core within N
        if sorted[idx + 1..].iter().any(|&s| s - core_end > n) {
            continue;
        }
        let cand = AapDecomposition {
            d,
            n,
            c,
            s_prime: sorted[..i].iter().map(|&s| c - s).collect(),
            s_star: (0..=t).map(|j| j * d).collect(),
            s_double_prime: sorted[idx + 1..].iter().map(|&s| s - core_end).collect(),
        };
        let better = match &best {
            None => true,
            Some(b) => cand.s_star.len() > b.s_star.len(),
        };
        if better {
            best = Some(cand);
        }
    }
    best
}

/// Tries every difference up to the largest gap and every bound up to
/// `n_cap`, preferring small `(d, n)`.
pub fn infer_aap(sorted: &[u64], n_cap: u64) -> Option<AapDecomposition> {
    if sorted.len() <= 1 {
        return aap_decompose(sorted, 1, 0);
    }
    let max_gap = sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .max()
        .unwrap_or(1)
        .max(1);
    for n in 0..=n_cap {
        for d in 1..=max_gap {
            if let Some(dec) = aap_decompose(sorted, d, n) {
                return Some(dec);
            }
        }
    }
    None
}

/// Search budget for furcus witnesses.
#[derive(Debug, Clone)]
pub struct FurcusBudget {
    /// Stage 1: natural numbers `1..=max_natural`.
    pub max_natural: u64,
    /// Stage 2: two-term expressions `c0 + c*x^a`.
    pub expr_max_exponent: u32,
    pub expr_max_coeff: u64,
}

impl Default for FurcusBudget {
    fn default() -> FurcusBudget {
        FurcusBudget {
            max_natural: 64,
            expr_max_exponent: 4,
            expr_max_coeff: 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FurcusWitness {
    pub element: ElementExpr,
    pub min_length: u64,
    pub lengths: LengthSet,
}

/// Searches for an element whose every factorization is longer than `k`,
/// refuting `k`-furcusness constructively. Naturals first, then small
/// two-term expressions. `None` means the budget ran out, not that the
/// monoid is `k`-furcus.
pub fn furcus_witness(
    spec: &MonoidSpec,
    k: u64,
    budget: &FurcusBudget,
    bounds: &Bounds,
) -> Result<Option<FurcusWitness>, Error> {
    if spec.classification().atomic.is_false() {
        return Err(Error::NonAtomicSpec);
    }
    if !spec.alpha_above_one() {
        return Err(Error::NoFiniteExponentBound);
    }
    let mut check = |expr: ElementExpr| -> Result<Option<FurcusWitness>, Error> {
        let ls = length_set(&expr, spec, bounds)?;
        if !ls.complete {
            return Ok(None);
        }
        match ls.lengths.iter().next() {
            Some(&min) if min > k => Ok(Some(FurcusWitness {
                element: expr,
                min_length: min,
                lengths: ls,
            })),
            _ => Ok(None),
        }
    };
    for v in 1..=budget.max_natural {
        if let Some(w) = check(ElementExpr::constant(v))? {
            return Ok(Some(w));
        }
    }
    for a in 1..=budget.expr_max_exponent {
        for c in 1..=budget.expr_max_coeff {
            for c0 in 0..=budget.expr_max_coeff {
                let mut coeffs = vec![Int::zero(); a as usize + 1];
                coeffs[0] = Int::from(c0);
                coeffs[a as usize] = Int::from(c);
                let expr = ElementExpr::new(IntPolynomial::from_coeffs(coeffs))
                    .expect("nonnegative");
                if let Some(w) = check(expr)? {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// Convenience: the full factorization set of an already-scanned element.
pub fn enumerate_scanned(
    spec: &MonoidSpec,
    el: &ScannedElement,
    bounds: &Bounds,
) -> Result<FactorizationSet, Error> {
    let derived = el
        .representative
        .poly()
        .degree()
        .unwrap_or(0)
        .max(scan_needed(spec, el)? as usize);
    let table = atom_table(spec, derived as u32, bounds)?;
    enumerate_value(
        spec,
        &table,
        &el.value,
        el.representative.poly(),
        bounds,
        false,
    )
}

fn scan_needed(spec: &MonoidSpec, el: &ScannedElement) -> Result<u32, Error> {
    if spec.alpha_above_one() {
        match spec.alpha().floor_log(&el.value.as_rat_poly()) {
            Ok(k) => Ok(k),
            Err(Error::ValueBelowOne) => Ok(0),
            Err(e) => Err(e),
        }
    } else {
        Ok(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::{parse_int_polynomial, parse_rational};

    fn spec_rational(q: &str) -> MonoidSpec {
        MonoidSpec::rational(parse_rational(q).unwrap()).unwrap()
    }

    fn expr(s: &str) -> ElementExpr {
        ElementExpr::new(parse_int_polynomial(s).unwrap()).unwrap()
    }

    fn z(pairs: &[(u32, u64)]) -> Factorization {
        Factorization::from_pairs(pairs)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            fact_gcd(&z(&[(0, 2), (2, 1)]), &z(&[(0, 1), (1, 3)])),
            z(&[(0, 1)])
        );
        let w = z(&[(0, 3), (2, 2)]);
        assert_eq!(fact_gcd(&w, &w), w);
        assert_eq!(fact_gcd(&z(&[(0, 3)]), &z(&[(1, 2)])), Factorization::empty());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&z(&[(0, 3)]), &z(&[(1, 2)])), 3);
        let w = z(&[(0, 1), (3, 4)]);
        assert_eq!(distance(&w, &w), 0);
        // both factor 9/2 in N0[3/2]
        assert_eq!(distance(&z(&[(0, 3), (1, 1)]), &z(&[(1, 3)])), 3);
    }

    #[test]
    fn catenary_of_three_in_three_halves() {
        let spec = spec_rational("3/2");
        let c = catenary_element(&expr("3"), &spec, &Bounds::default()).unwrap();
        assert!(c.complete);
        assert_eq!(c.value, 3);
        // single factorization => 0
        let c1 = catenary_element(&expr("x"), &spec, &Bounds::default()).unwrap();
        assert_eq!(c1.value, 0);
    }

    #[test]
    fn catenary_of_nine_halves() {
        // Z(9/2) = {3*a^1, 2*a^2, 3*a^0 + 1*a^1}
        let spec = spec_rational("3/2");
        let set = enumerate_factorizations(&expr("3x"), &spec, &Bounds::default()).unwrap();
        assert!(set.complete);
        assert_eq!(set.factorizations.len(), 3);
        let c = catenary_element(&expr("3x"), &spec, &Bounds::default()).unwrap();
        assert_eq!(c.value, 3);
    }

    #[test]
    fn betti_graph_of_three() {
        let spec = spec_rational("3/2");
        let report = betti_graph(&expr("3"), &spec, &Bounds::default()).unwrap();
        assert!(report.complete);
        assert!(report.is_betti);
        assert_eq!(report.components.len(), 2);
    }

    #[test]
    fn betti_graph_of_nine_halves_has_isolated_vertex() {
        let spec = spec_rational("3/2");
        let report = betti_graph(&expr("3x"), &spec, &Bounds::default()).unwrap();
        assert!(report.is_betti);
        assert_eq!(report.components.len(), 2);
        // 2*a^2 is isolated; the other two share a^1
        let isolated: Vec<_> = report
            .components
            .iter()
            .filter(|c| c.len() == 1)
            .collect();
        assert_eq!(isolated.len(), 1);
        assert_eq!(isolated[0][0], z(&[(2, 2)]));
    }

    #[test]
    fn atoms_are_not_betti() {
        let spec = spec_rational("3/2");
        let report = betti_graph(&expr("x"), &spec, &Bounds::default()).unwrap();
        assert!(!report.is_betti);
    }

    #[test]
    fn betti_scan_matches_formula_family() {
        let spec = spec_rational("3/2");
        // covers 3, 9/2, 27/4, 81/8 (m <= 3)
        let scan = ScanBounds {
            max_exponent: 3,
            max_coeff: 8,
            value_cutoff: Some(parse_rational("11").unwrap()),
        };
        let report = betti_scan(&spec, &scan, &Bounds::default()).unwrap();
        assert!(report.all_complete);
        assert_eq!(report.matches_formula, Some(true));
        let found: Vec<Rat> = report
            .betti
            .iter()
            .map(|h| h.element.value.coords()[0].clone())
            .collect();
        assert_eq!(
            found,
            vec![
                parse_rational("3").unwrap(),
                parse_rational("9/2").unwrap(),
                parse_rational("27/4").unwrap(),
                parse_rational("81/8").unwrap(),
            ]
        );
        for hit in &report.betti {
            assert_eq!(hit.predicted_isolated_ok, Some(true));
        }
    }

    #[test]
    fn betti_scan_five_halves_smallest_case() {
        let spec = spec_rational("5/2");
        let scan = ScanBounds {
            max_exponent: 2,
            max_coeff: 6,
            value_cutoff: Some(parse_rational("6").unwrap()),
        };
        let report = betti_scan(&spec, &scan, &Bounds::default()).unwrap();
        // only 5 is a Betti element at value <= 6
        assert_eq!(report.betti.len(), 1);
        assert_eq!(
            report.betti[0].element.value.coords()[0],
            parse_rational("5").unwrap()
        );
        assert_eq!(report.matches_formula, Some(true));
    }

    #[test]
    fn catenary_scan_three_halves() {
        let spec = spec_rational("3/2");
        let scan = ScanBounds {
            max_exponent: 3,
            max_coeff: 5,
            value_cutoff: Some(parse_rational("20").unwrap()),
        };
        let report = catenary_monoid_scan(&spec, &scan, &Bounds::default()).unwrap();
        assert_eq!(report.formula, Some(3));
        assert_eq!(report.observed_sup, 3);
        assert_eq!(report.formula_respected, Some(true));
        assert!(report.all_complete);
    }

    #[test]
    fn ap_analysis_examples() {
        let mk = |v: &[u64]| LengthSet {
            lengths: v.iter().copied().collect(),
            complete: true,
        };
        let r = length_report(&mk(&[2, 5]), Some((3, 0)), 0);
        assert!(r.is_ap);
        assert_eq!(r.common_difference, Some(3));
        assert!(r.aap.is_some());

        let r = length_report(&mk(&[7, 17, 22]), None, 3);
        assert!(!r.is_ap);

        let r = length_report(&mk(&[0, 2, 4, 5]), Some((2, 1)), 0);
        assert!(!r.is_ap);
        let aap = r.aap.expect("decomposition exists");
        assert_eq!(aap.c, 0);
        assert_eq!(aap.s_star, vec![0, 2, 4]);
        assert_eq!(aap.s_double_prime, vec![1]);
        assert!(aap.s_prime.is_empty());
    }

    #[test]
    fn aap_head_and_tail_windows_are_enforced() {
        // tail may leave the residue class but must stay within N
        assert!(aap_decompose(&[2, 5, 7], 3, 2).is_some());
        assert!(aap_decompose(&[2, 5, 7], 3, 1).is_none());
        assert!(aap_decompose(&[2, 5, 8], 3, 0).is_some());
        // an off-progression element inside the core range refutes
        assert!(aap_decompose(&[0, 2, 4, 5, 6], 2, 1).is_none());
    }

    #[test]
    fn furcus_witnesses_for_three_halves() {
        let spec = spec_rational("3/2");
        // any atom beats k = 0
        let w0 = furcus_witness(&spec, 0, &FurcusBudget::default(), &Bounds::default())
            .unwrap()
            .expect("witness exists");
        assert!(w0.min_length >= 1);
        let w2 = furcus_witness(&spec, 2, &FurcusBudget::default(), &Bounds::default())
            .unwrap()
            .expect("witness exists");
        assert!(w2.min_length > 2);
        // re-verify the certificate by complete enumeration
        let ls = length_set(&w2.element, &spec, &Bounds::default()).unwrap();
        assert!(ls.complete);
        assert!(*ls.lengths.iter().next().unwrap() > 2);
    }

    #[test]
    fn furcus_requires_alpha_above_one() {
        let spec = spec_rational("2/3");
        assert_eq!(
            furcus_witness(&spec, 1, &FurcusBudget::default(), &Bounds::default()).unwrap_err(),
            Error::NoFiniteExponentBound
        );
    }

    #[test]
    fn scan_dedups_by_value() {
        let spec = spec_rational("3/2");
        // 3 and 2x collide (both 3)
        let scan = ScanBounds {
            max_exponent: 1,
            max_coeff: 3,
            value_cutoff: None,
        };
        let elements = scan_elements(&spec, &scan);
        let threes: Vec<_> = elements
            .iter()
            .filter(|e| e.value.coords()[0] == parse_rational("3").unwrap())
            .collect();
        assert_eq!(threes.len(), 1);
        // sorted ascending
        for w in elements.windows(2) {
            assert!(w[0].value.coords()[0] < w[1].value.coords()[0]);
        }
    }
}
