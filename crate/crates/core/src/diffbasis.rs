//! Difference bases: sets `T` with `T * T^-1` equal to the whole group.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{normalize_set, set_product_inv, Elem, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffBasisError {
    #[error("element {elem} is out of range for a group of order {order}")]
    InvalidSet { elem: Elem, order: usize },
    #[error("set does not cover the group: {} elements missing", missing.len())]
    NotCovering { missing: Vec<Elem> },
    #[error("no difference basis of size at most {cap} exists")]
    SizeCapReached { cap: usize },
    #[error("randomized search needs at least one trial")]
    NoTrials,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Greedy,
    Randomized,
    Exact,
    User,
}

/// Result of [`verify_difference_basis`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub covered: bool,
    pub missing: Vec<Elem>,
}

/// A verified difference basis of a finite group.
#[derive(Debug, Clone)]
pub struct DifferenceBasis {
    group: FiniteGroup,
    elements: Vec<Elem>,
    method: Method,
    certified_minimal: bool,
}

impl DifferenceBasis {
    /// Verifies `T * T^-1 = G` before accepting the set.
    pub fn new(
        group: &FiniteGroup,
        elements: Vec<Elem>,
        method: Method,
    ) -> Result<Self, DiffBasisError> {
        let elements = normalize_set(elements);
        let cov = verify_difference_basis(group, &elements)?;
        if !cov.covered {
            return Err(DiffBasisError::NotCovering {
                missing: cov.missing,
            });
        }
        Ok(DifferenceBasis {
            group: group.clone(),
            elements,
            method,
            certified_minimal: false,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn certified_minimal(&self) -> bool {
        self.certified_minimal
    }
}

/// Checks whether `T * T^-1` is the whole group and lists what is missing.
pub fn verify_difference_basis(g: &FiniteGroup, t: &[Elem]) -> Result<Coverage, DiffBasisError> {
    if let Some(&elem) = t.iter().find(|&&x| !g.contains(x)) {
        return Err(DiffBasisError::InvalidSet {
            elem,
            order: g.order(),
        });
    }
    let diffs = set_product_inv(g, t, t);
    let mut mask = vec![false; g.order()];
    for x in diffs {
        mask[x] = true;
    }
    let missing: Vec<Elem> = g.elements().filter(|&x| !mask[x]).collect();
    Ok(Coverage {
        covered: missing.is_empty(),
        missing,
    })
}

/// Smallest `s` with `s(s-1) + 1 >= n`: no smaller set can cover a group of order `n`.
pub fn counting_lower_bound(n: usize) -> usize {
    let mut s = 1;
    while s * (s - 1) + 1 < n {
        s += 1;
    }
    s
}

/// Incremental coverage counts of `T * T^-1`.
struct CoverState<'a> {
    g: &'a FiniteGroup,
    counts: Vec<u32>,
    covered: usize,
    chosen: Vec<Elem>,
}

impl<'a> CoverState<'a> {
    fn new(g: &'a FiniteGroup) -> Self {
        CoverState {
            g,
            counts: vec![0; g.order()],
            covered: 0,
            chosen: Vec::new(),
        }
    }

    fn bump(&mut self, x: Elem) {
        if self.counts[x] == 0 {
            self.covered += 1;
        }
        self.counts[x] += 1;
    }

    fn push(&mut self, x: Elem) {
        self.bump(self.g.identity());
        for i in 0..self.chosen.len() {
            let y = self.chosen[i];
            self.bump(self.g.div(x, y));
            self.bump(self.g.div(y, x));
        }
        self.chosen.push(x);
    }

    fn gain(&self, x: Elem) -> usize {
        // new elements among x*y^-1, y*x^-1 (y in T) and the identity
        let mut fresh: Vec<Elem> = Vec::with_capacity(2 * self.chosen.len() + 1);
        let mut consider = |z: Elem| {
            if self.counts[z] == 0 && !fresh.contains(&z) {
                fresh.push(z);
            }
        };
        consider(self.g.identity());
        for &y in &self.chosen {
            consider(self.g.div(x, y));
            consider(self.g.div(y, x));
        }
        fresh.len()
    }

    fn done(&self) -> bool {
        self.covered == self.g.order()
    }
}

/// Greedy construction: add the element covering the most new members, least index on ties.
pub fn greedy_difference_basis(g: &FiniteGroup) -> DifferenceBasis {
    let mut state = CoverState::new(g);
    while !state.done() {
        let mut best = (0, 0);
        for x in g.elements() {
            let gain = state.gain(x);
            if gain > best.0 {
                best = (gain, x);
            }
        }
        state.push(best.1);
    }
    DifferenceBasis::new(g, state.chosen, Method::Greedy).expect("greedy result covers")
}

/// Best of `trials` greedy runs with ties broken by a seeded generator.
///
/// Among runs of equal size the earliest wins, so output depends only on `seed`.
pub fn randomized_difference_basis(
    g: &FiniteGroup,
    seed: u64,
    trials: usize,
) -> Result<DifferenceBasis, DiffBasisError> {
    if trials == 0 {
        return Err(DiffBasisError::NoTrials);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Vec<Elem>> = None;
    for _ in 0..trials {
        let mut state = CoverState::new(g);
        while !state.done() {
            let mut top = 0;
            let mut ties = Vec::new();
            for x in g.elements() {
                let gain = state.gain(x);
                if gain > top {
                    top = gain;
                    ties.clear();
                }
                if gain == top && gain > 0 {
                    ties.push(x);
                }
            }
            let &pick = ties
                .choose(&mut rng)
                .expect("an uncovered element always has a positive gain");
            state.push(pick);
        }
        if best.as_ref().is_none_or(|b| state.chosen.len() < b.len()) {
            best = Some(state.chosen);
        }
    }
    DifferenceBasis::new(g, best.expect("trials >= 1"), Method::Randomized)
}

/// Outcome of the exact minimal search.
#[derive(Debug, Clone)]
pub struct ExactSearchReport {
    /// Certified minimal basis, or the greedy fallback when the budget ran out.
    pub basis: DifferenceBasis,
    pub certified: bool,
    /// Every size below this is known not to admit a difference basis.
    pub proven_lower_bound: usize,
    /// Sizes refuted by exhaustive search (sizes below the counting bound are not listed).
    pub refuted_sizes: Vec<usize>,
    pub nodes: u64,
}

/// Exact minimal difference basis by depth-first search.
///
/// Sizes are tried upward from the counting bound. The identity is forced
/// into the set (every basis has a translate containing it) and the remaining
/// elements are chosen in increasing index order, so the first basis found
/// is the lexicographically least minimal basis containing the identity.
/// A branch is cut when even maximal growth of `T * T^-1` could not reach
/// the whole group.
pub fn exact_minimal_difference_basis(
    g: &FiniteGroup,
    size_cap: usize,
    budget: Option<Duration>,
) -> Result<ExactSearchReport, DiffBasisError> {
    let n = g.order();
    let start = counting_lower_bound(n);
    let mut search = ExactSearch {
        g,
        diff: DiffTable::new(g),
        candidates: g.elements().filter(|&x| x != g.identity()).collect(),
        state: CoverState::new(g),
        nodes: 0,
        deadline: budget.map(|b| Instant::now() + b),
        expired: false,
    };
    let mut refuted_sizes = Vec::new();
    for size in start..=size_cap.min(n) {
        search.state = CoverState::new(g);
        search.state.push(g.identity());
        if search.extend(size, 0) {
            let elements = search.state.chosen.clone();
            let mut basis = DifferenceBasis::new(g, elements, Method::Exact)?;
            basis.certified_minimal = true;
            return Ok(ExactSearchReport {
                basis,
                certified: true,
                proven_lower_bound: size,
                refuted_sizes,
                nodes: search.nodes,
            });
        }
        if search.expired {
            let mut basis = greedy_difference_basis(g);
            basis.method = Method::Exact;
            return Ok(ExactSearchReport {
                basis,
                certified: false,
                proven_lower_bound: size,
                refuted_sizes,
                nodes: search.nodes,
            });
        }
        refuted_sizes.push(size);
    }
    Err(DiffBasisError::SizeCapReached { cap: size_cap })
}

/// Dense `x * y^-1` table for the exact search.
struct DiffTable {
    n: usize,
    data: Vec<u32>,
}

impl DiffTable {
    fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut data = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                data.push(g.div(x, y) as u32);
            }
        }
        DiffTable { n, data }
    }

    fn get(&self, x: Elem, y: Elem) -> usize {
        self.data[x * self.n + y] as usize
    }
}

struct ExactSearch<'a> {
    g: &'a FiniteGroup,
    diff: DiffTable,
    candidates: Vec<Elem>,
    state: CoverState<'a>,
    nodes: u64,
    deadline: Option<Instant>,
    expired: bool,
}

impl ExactSearch<'_> {
    fn add(&mut self, x: Elem) {
        for i in 0..self.state.chosen.len() {
            let y = self.state.chosen[i];
            let a = self.diff.get(x, y);
            let b = self.diff.get(y, x);
            self.state.bump(a);
            self.state.bump(b);
        }
        self.state.chosen.push(x);
    }

    fn remove(&mut self) {
        let x = self.state.chosen.pop().expect("non-empty");
        for i in 0..self.state.chosen.len() {
            let y = self.state.chosen[i];
            for z in [self.diff.get(x, y), self.diff.get(y, x)] {
                self.state.counts[z] -= 1;
                if self.state.counts[z] == 0 {
                    self.state.covered -= 1;
                }
            }
        }
    }

    /// Tries to complete the current set to `size` elements using candidates from `from` on.
    fn extend(&mut self, size: usize, from: usize) -> bool {
        let n = self.g.order();
        if self.state.covered == n {
            // padding with unused candidates keeps the size exact
            return self.state.chosen.len() <= size;
        }
        let have = self.state.chosen.len();
        let remaining = size - have;
        if remaining == 0 {
            return false;
        }
        // adding the j-th element (0-based) contributes at most 2j new quotients
        let max_gain = remaining * (2 * have + remaining - 1);
        if self.state.covered + max_gain < n {
            return false;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.expired = true;
                }
            }
        }
        if self.expired {
            return false;
        }
        let last_start = self.candidates.len().saturating_sub(remaining);
        for i in from..=last_start {
            if i >= self.candidates.len() {
                break;
            }
            let x = self.candidates[i];
            self.add(x);
            if self.extend(size, i + 1) {
                return true;
            }
            self.remove();
            if self.expired {
                return false;
            }
        }
        false
    }
}

/// Result of comparing a basis size against `A * sqrt(|G|)` with `A = 4/sqrt(3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KozmaLevCheck {
    pub size: usize,
    pub group_order: usize,
    /// `A^2 |G| = 16|G|/3`, the bound on `|T|^2`.
    pub bound_squared: BigRational,
    /// Largest size allowed by the bound, `floor(A sqrt(|G|))`.
    pub max_size: usize,
    pub satisfied: bool,
}

/// The constant `A = 4/sqrt(3)` together with a rational upper bound for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KozmaLevConstant {
    pub upper: BigRational,
}

impl Default for KozmaLevConstant {
    fn default() -> Self {
        KozmaLevConstant {
            upper: BigRational::new(BigInt::from(2_309_402), BigInt::from(1_000_000)),
        }
    }
}

impl KozmaLevConstant {
    /// `A^2` exactly.
    pub fn squared() -> BigRational {
        BigRational::new(BigInt::from(16), BigInt::from(3))
    }

    pub fn description(&self) -> &'static str {
        "4/sqrt(3)"
    }

    /// The rational bound really dominates `A`: `upper >= 0` and `upper^2 >= 16/3`.
    pub fn upper_is_valid(&self) -> bool {
        self.upper >= BigRational::from_integer(0.into())
            && &self.upper * &self.upper >= Self::squared()
    }

    /// Exact `|T| <= A sqrt(n)` as `3 |T|^2 <= 16 n`.
    pub fn admits(size: usize, n: usize) -> bool {
        3 * (size as u128) * (size as u128) <= 16 * n as u128
    }

    /// `floor(A sqrt(n))`.
    pub fn max_size(n: usize) -> usize {
        let mut s = 0;
        while Self::admits(s + 1, n) {
            s += 1;
        }
        s
    }
}

pub fn check_kozma_lev(g: &FiniteGroup, t: &DifferenceBasis) -> KozmaLevCheck {
    let n = g.order();
    KozmaLevCheck {
        size: t.size(),
        group_order: n,
        bound_squared: KozmaLevConstant::squared() * BigInt::from(n),
        max_size: KozmaLevConstant::max_size(n),
        satisfied: KozmaLevConstant::admits(t.size(), n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_cyclic, named};

    fn all_subsets_of_size(n: usize, k: usize) -> Vec<Vec<Elem>> {
        // oracle: plain enumeration of k-subsets, no symmetry reduction
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for x in from..n {
                cur.push(x);
                rec(n, k, x + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 0, &mut cur, &mut out);
        out
    }

    fn covers(g: &FiniteGroup, t: &[Elem]) -> bool {
        let mut seen = vec![false; g.order()];
        for &a in t {
            for &b in t {
                seen[g.mul(a, g.inv(b))] = true;
            }
        }
        seen.iter().all(|&s| s)
    }

    #[test]
    fn verify_examples() {
        let z7 = make_cyclic(7).unwrap();
        assert!(verify_difference_basis(&z7, &[1, 2, 4]).unwrap().covered);
        let cov = verify_difference_basis(&z7, &[0, 1]).unwrap();
        // differences of {0,1}: 0, 1, 6
        assert_eq!(cov.missing, vec![2, 3, 4, 5]);
        assert!(!cov.covered);
        let trivial = make_cyclic(1).unwrap();
        assert!(verify_difference_basis(&trivial, &[0]).unwrap().covered);
        assert_eq!(
            verify_difference_basis(&z7, &[9]),
            Err(DiffBasisError::InvalidSet { elem: 9, order: 7 })
        );
    }

    #[test]
    fn greedy_examples() {
        let trivial = make_cyclic(1).unwrap();
        assert_eq!(greedy_difference_basis(&trivial).elements(), &[0]);

        let z4 = make_cyclic(4).unwrap();
        let b = greedy_difference_basis(&z4);
        assert!(b.size() <= 3);
        assert!(all_subsets_of_size(4, 2).iter().all(|t| !covers(&z4, t)));

        let z13 = make_cyclic(13).unwrap();
        let b = greedy_difference_basis(&z13);
        assert!(verify_difference_basis(&z13, b.elements()).unwrap().covered);
        assert!(covers(&z13, &[0, 1, 3, 9]));
        assert!(b.size() >= 4);
    }

    #[test]
    fn exact_examples() {
        let cases = [(4, 3), (7, 3), (13, 4)];
        for (n, expected) in cases {
            let g = make_cyclic(n).unwrap();
            let r = exact_minimal_difference_basis(&g, n, None).unwrap();
            assert!(r.certified);
            assert_eq!(r.basis.size(), expected, "Z/{n}");
            assert!(r.basis.certified_minimal());
        }
        let z13 = make_cyclic(13).unwrap();
        let r = exact_minimal_difference_basis(&z13, 13, None).unwrap();
        assert_eq!(r.basis.elements(), &[0, 1, 3, 9]);
        let z7 = make_cyclic(7).unwrap();
        let r = exact_minimal_difference_basis(&z7, 7, None).unwrap();
        assert_eq!(r.basis.elements(), &[0, 1, 3]);
    }

    #[test]
    fn exact_matches_brute_force() {
        let mut groups: Vec<FiniteGroup> = (1..=16).map(|n| make_cyclic(n).unwrap()).collect();
        let z2 = make_cyclic(2).unwrap();
        groups.push(direct_product(&z2, &z2).unwrap());
        groups.push(named::symmetric3());
        groups.push(named::quaternion());
        for g in groups {
            let n = g.order();
            let oracle = (1..=n)
                .find(|&k| all_subsets_of_size(n, k).iter().any(|t| covers(&g, t)))
                .unwrap();
            let r = exact_minimal_difference_basis(&g, n, None).unwrap();
            assert_eq!(r.basis.size(), oracle, "{g}");
        }
    }

    #[test]
    fn size_cap_and_budget() {
        let z13 = make_cyclic(13).unwrap();
        assert_eq!(
            exact_minimal_difference_basis(&z13, 3, None).unwrap_err(),
            DiffBasisError::SizeCapReached { cap: 3 }
        );
        let big = make_cyclic(300).unwrap();
        let r = exact_minimal_difference_basis(&big, 300, Some(Duration::ZERO)).unwrap();
        assert!(!r.certified);
        assert!(!r.basis.certified_minimal());
        assert!(
            verify_difference_basis(&big, r.basis.elements())
                .unwrap()
                .covered
        );
    }

    #[test]
    fn randomized_is_deterministic() {
        let z32 = make_cyclic(32).unwrap();
        let a = randomized_difference_basis(&z32, 42, 64).unwrap();
        let b = randomized_difference_basis(&z32, 42, 64).unwrap();
        assert_eq!(a.elements(), b.elements());
        assert!(a.size() <= 16);
        assert!(verify_difference_basis(&z32, a.elements()).unwrap().covered);

        let one = randomized_difference_basis(&z32, 7, 1).unwrap();
        assert_eq!(
            one.elements(),
            randomized_difference_basis(&z32, 7, 1).unwrap().elements()
        );

        let trivial = make_cyclic(1).unwrap();
        assert_eq!(
            randomized_difference_basis(&trivial, 0, 3)
                .unwrap()
                .elements(),
            &[0]
        );
        assert_eq!(
            randomized_difference_basis(&z32, 0, 0).unwrap_err(),
            DiffBasisError::NoTrials
        );
    }

    #[test]
    fn kozma_lev_examples() {
        let z7 = make_cyclic(7).unwrap();
        let b = DifferenceBasis::new(&z7, vec![1, 2, 4], Method::User).unwrap();
        let c = check_kozma_lev(&z7, &b);
        assert!(c.satisfied);
        assert_eq!(c.bound_squared, BigRational::new(112.into(), 3.into()));

        let z4 = make_cyclic(4).unwrap();
        let b = DifferenceBasis::new(&z4, vec![0, 1, 2], Method::User).unwrap();
        assert_eq!(
            check_kozma_lev(&z4, &b).bound_squared,
            BigRational::new(64.into(), 3.into())
        );
        assert!(check_kozma_lev(&z4, &b).satisfied);

        let trivial = make_cyclic(1).unwrap();
        let b = DifferenceBasis::new(&trivial, vec![0], Method::User).unwrap();
        assert!(check_kozma_lev(&trivial, &b).satisfied);

        // floor(4/sqrt(3) * sqrt(32)) = floor(13.06...) = 13
        assert_eq!(KozmaLevConstant::max_size(32), 13);
        assert!(KozmaLevConstant::default().upper_is_valid());
        let too_small = KozmaLevConstant {
            upper: BigRational::new(2_309_401.into(), 1_000_000.into()),
        };
        assert!(!too_small.upper_is_valid());
    }

    #[test]
    fn rejects_non_covering_basis() {
        let z7 = make_cyclic(7).unwrap();
        assert!(matches!(
            DifferenceBasis::new(&z7, vec![0, 1], Method::User),
            Err(DiffBasisError::NotCovering { .. })
        ));
    }

    #[test]
    fn counting_bound() {
        assert_eq!(counting_lower_bound(1), 1);
        assert_eq!(counting_lower_bound(7), 3);
        assert_eq!(counting_lower_bound(8), 4);
        assert_eq!(counting_lower_bound(13), 4);
        assert_eq!(counting_lower_bound(32), 7);
    }
}
