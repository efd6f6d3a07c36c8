//! Quotient towers `H_1 <- H_2 <- ... <- H_m` of a profinite group and the
//! covering recursion `S_{k+1} = lift(S_k) * T_{k+1}`.
//!
//! Levels are 0-based in this API; the density ledger reports `k` 1-based.
//! The limit set `K` is represented by its cylinders `K_k`, the preimages of
//! `S_k`, whose normalized measure is exactly `|S_k| / |H_k|`.

use std::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diffbasis::{
    exact_minimal_difference_basis, greedy_difference_basis, randomized_difference_basis,
    DiffBasisError, DifferenceBasis, KozmaLevConstant,
};
use crate::group::{
    make_cyclic_capped, normalize_set, Elem, FiniteGroup, GroupError, GroupHom, Subgroup,
};

/// Order cap for p-adic towers.
pub const DEFAULT_TOWER_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponents must be non-empty and strictly increasing, got {0:?}")]
    BadExponents(Vec<u32>),
    #[error("level of order {p}^{exp} exceeds the cap {cap}")]
    CapExceeded { p: u64, exp: u32, cap: usize },
    #[error("projection {level} does not connect consecutive levels")]
    Disconnected { level: usize },
    #[error("level {level} index {elem} is out of range")]
    BadElement { level: usize, elem: Elem },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Basis(#[from] DiffBasisError),
    #[error("covering failed at level {level}: {missing} elements without a witness")]
    CoveringFailed { level: usize, missing: usize },
    #[error("projection of S at level {level} differs from S at level {}", level - 1)]
    ProjectionMismatch { level: usize },
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// A chain of finite quotients with surjections `H_{k+1} -> H_k`.
#[derive(Clone, Debug)]
pub struct Tower {
    levels: Vec<FiniteGroup>,
    projections: Vec<GroupHom>,
    kernels: Vec<Subgroup>,
    /// `composed[k]` maps the top level onto level `k`.
    composed: Vec<GroupHom>,
}

impl Tower {
    /// Builds a tower from projections `projections[k] : H_{k+1} -> H_k`.
    ///
    /// Kernel normality is verified for every level, not assumed.
    pub fn from_projections(
        base: FiniteGroup,
        projections: Vec<GroupHom>,
    ) -> Result<Self, TowerError> {
        let mut levels = vec![base];
        let mut kernels = Vec::with_capacity(projections.len());
        for (k, proj) in projections.iter().enumerate() {
            if proj.target() != &levels[k] {
                return Err(TowerError::Disconnected { level: k });
            }
            let ker = proj.kernel();
            ker.require_normal()?;
            debug_assert_eq!(proj.source().order(), proj.target().order() * ker.order());
            levels.push(proj.source().clone());
            kernels.push(ker);
        }
        let top = levels.len() - 1;
        let identity = GroupHom::new(&levels[top], &levels[top], levels[top].elements().collect())?;
        let mut composed = vec![identity];
        for k in (0..top).rev() {
            let next = composed.last().expect("non-empty").then(&projections[k])?;
            composed.push(next);
        }
        composed.reverse();
        Ok(Tower {
            levels,
            projections,
            kernels,
            composed,
        })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &FiniteGroup {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[FiniteGroup] {
        &self.levels
    }

    /// `pi_k : H_{k+1} -> H_k`.
    pub fn projection(&self, k: usize) -> &GroupHom {
        &self.projections[k]
    }

    /// `Q_{k+1} = ker pi_k`, a normal subgroup of `H_{k+1}`.
    pub fn kernel(&self, k: usize) -> &Subgroup {
        &self.kernels[k]
    }

    pub fn kernels(&self) -> &[Subgroup] {
        &self.kernels
    }

    /// Map from the top level onto level `k`.
    pub fn composed(&self, k: usize) -> &GroupHom {
        &self.composed[k]
    }

    /// Projects `x` at level `from` down to level `to <= from`.
    pub fn project(&self, from: usize, to: usize, x: Elem) -> Elem {
        assert!(to <= from && from < self.depth());
        (to..from)
            .rev()
            .fold(x, |y, k| self.projections[k].apply(y))
    }

    /// Checks that each composed map equals the projection of the next one.
    pub fn composition_compatible(&self) -> bool {
        let top = self.depth() - 1;
        (0..top).all(|k| {
            self.levels[top].elements().all(|x| {
                self.composed[k].apply(x)
                    == self.projections[k].apply(self.composed[k + 1].apply(x))
            })
        })
    }
}

/// The tower `Z/p^{d_1} <- Z/p^{d_2} <- ...` of quotients of the p-adic integers.
pub fn build_padic_tower(p: u64, exponents: &[u32], cap: usize) -> Result<Tower, TowerError> {
    if !is_prime(p) {
        return Err(TowerError::NotPrime(p));
    }
    if exponents.is_empty() || exponents.windows(2).any(|w| w[0] >= w[1]) {
        return Err(TowerError::BadExponents(exponents.to_vec()));
    }
    let mut levels = Vec::with_capacity(exponents.len());
    for &d in exponents {
        let order = p
            .checked_pow(d)
            .and_then(|o| usize::try_from(o).ok())
            .filter(|&o| o <= cap)
            .ok_or(TowerError::CapExceeded { p, exp: d, cap })?;
        levels.push(make_cyclic_capped(order, cap)?);
    }
    let projections = levels
        .windows(2)
        .map(|w| GroupHom::cyclic_reduction(&w[1], &w[0]))
        .collect::<Result<Vec<_>, _>>()?;
    Tower::from_projections(levels[0].clone(), projections)
}

/// `A / sqrt(|Q|) <= 1/2`, i.e. `3 |Q| >= 64`.
pub fn index_condition_holds(kernel_order: usize) -> bool {
    3 * kernel_order as u128 >= 64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexCondition {
    /// 1-based level of the kernel `Q_k`.
    pub k: usize,
    pub kernel_order: usize,
    pub satisfied: bool,
}

pub fn check_index_condition(tower: &Tower) -> Vec<IndexCondition> {
    tower
        .kernels
        .iter()
        .enumerate()
        .map(|(i, q)| IndexCondition {
            k: i + 2,
            kernel_order: q.order(),
            satisfied: index_condition_holds(q.order()),
        })
        .collect()
}

/// How difference bases are obtained for `H_1` and for each kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisStrategy {
    Greedy,
    Exact,
    Random,
    /// Exact up to [`AUTO_EXACT_LIMIT`] elements, randomized above.
    Auto,
}

pub const AUTO_EXACT_LIMIT: usize = 40;
pub const RANDOM_TRIALS: usize = 64;
pub const EXACT_BUDGET: Duration = Duration::from_secs(60);

/// Supplies a verified difference basis for a finite group.
pub trait BasisProvider {
    fn basis(&self, group: &FiniteGroup, seed: u64) -> Result<DifferenceBasis, DiffBasisError>;
}

impl BasisProvider for BasisStrategy {
    fn basis(&self, group: &FiniteGroup, seed: u64) -> Result<DifferenceBasis, DiffBasisError> {
        match self {
            BasisStrategy::Greedy => Ok(greedy_difference_basis(group)),
            BasisStrategy::Exact => {
                exact_minimal_difference_basis(group, group.order(), Some(EXACT_BUDGET))
                    .map(|r| r.basis)
            }
            BasisStrategy::Random => randomized_difference_basis(group, seed, RANDOM_TRIALS),
            BasisStrategy::Auto if group.order() <= AUTO_EXACT_LIMIT => {
                BasisStrategy::Exact.basis(group, seed)
            }
            BasisStrategy::Auto => BasisStrategy::Random.basis(group, seed),
        }
    }
}

/// Rule for choosing a preimage of each `x in S_k` in `H_{k+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftRule {
    /// Least element of the fiber.
    Canonical,
    /// Uniform element of the fiber from a seeded generator.
    Random(u64),
}

/// The sets `S_1, ..., S_m` with `S_k S_k^-1 = H_k` and `pi_k(S_{k+1}) = S_k`.
#[derive(Clone, Debug)]
pub struct CoveringSequence {
    tower: Tower,
    sets: Vec<Vec<Elem>>,
    initial_basis: DifferenceBasis,
    /// `kernel_bases[k]` is `T_{k+2}` in coordinates of the kernel-as-group.
    kernel_bases: Vec<DifferenceBasis>,
    /// `T_{k+2}` as elements of `H_{k+2}`.
    kernel_bases_ambient: Vec<Vec<Elem>>,
    lifts: LiftRule,
}

fn level_seed(seed: u64, level: usize) -> u64 {
    seed.wrapping_add((level as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs the covering recursion and verifies covering and projection
/// compatibility exhaustively at every level.
pub fn construct_covering_sequence(
    tower: &Tower,
    provider: &dyn BasisProvider,
    seed: u64,
) -> Result<CoveringSequence, TowerError> {
    construct_covering_sequence_with(tower, provider, seed, LiftRule::Canonical)
}

pub fn construct_covering_sequence_with(
    tower: &Tower,
    provider: &dyn BasisProvider,
    seed: u64,
    lifts: LiftRule,
) -> Result<CoveringSequence, TowerError> {
    let initial_basis = provider.basis(tower.level(0), level_seed(seed, 0))?;
    let mut sets = vec![initial_basis.elements().to_vec()];
    let mut kernel_bases = Vec::new();
    let mut kernel_bases_ambient = Vec::new();
    let mut lift_rng = match lifts {
        LiftRule::Random(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        LiftRule::Canonical => None,
    };

    for k in 0..tower.depth() - 1 {
        let upper = tower.level(k + 1);
        let proj = tower.projection(k);
        let (kernel_group, embed) = tower.kernel(k).as_group()?;
        let t = provider.basis(&kernel_group, level_seed(seed, k + 1))?;
        let t_ambient: Vec<Elem> = t.elements().iter().map(|&i| embed[i]).collect();

        let fibers = lift_rng.as_ref().map(|_| fibers_of(proj));
        let lifted: Vec<Elem> = sets[k]
            .iter()
            .map(|&x| match (&mut lift_rng, &fibers) {
                (Some(rng), Some(fibers)) => *fibers[x].choose(rng).expect("surjective"),
                _ => proj.section(x),
            })
            .collect();

        let mut next = Vec::with_capacity(lifted.len() * t_ambient.len());
        for &x in &lifted {
            for &q in &t_ambient {
                next.push(upper.mul(x, q));
            }
        }
        let next = normalize_set(next);

        let missing = uncovered_count(upper, &next);
        if missing > 0 {
            return Err(TowerError::CoveringFailed {
                level: k + 1,
                missing,
            });
        }
        if proj.image_of(&next) != sets[k] {
            return Err(TowerError::ProjectionMismatch { level: k + 1 });
        }
        sets.push(next);
        kernel_bases.push(t);
        kernel_bases_ambient.push(t_ambient);
    }

    let missing = uncovered_count(tower.level(0), &sets[0]);
    if missing > 0 {
        return Err(TowerError::CoveringFailed { level: 0, missing });
    }
    Ok(CoveringSequence {
        tower: tower.clone(),
        sets,
        initial_basis,
        kernel_bases,
        kernel_bases_ambient,
        lifts,
    })
}

fn fibers_of(proj: &GroupHom) -> Vec<Vec<Elem>> {
    let mut fibers = vec![Vec::new(); proj.target().order()];
    for x in proj.source().elements() {
        fibers[proj.apply(x)].push(x);
    }
    fibers
}

/// Number of elements of `g` outside `S S^-1`.
fn uncovered_count(g: &FiniteGroup, s: &[Elem]) -> usize {
    let mut seen = vec![false; g.order()];
    let inverses: Vec<Elem> = s.iter().map(|&b| g.inv(b)).collect();
    for &a in s {
        for &b_inv in &inverses {
            seen[g.mul(a, b_inv)] = true;
        }
    }
    seen.iter().filter(|&&c| !c).count()
}

impl CoveringSequence {
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// `S_{k+1}` (0-based `k`).
    pub fn set(&self, k: usize) -> &[Elem] {
        &self.sets[k]
    }

    pub fn sets(&self) -> &[Vec<Elem>] {
        &self.sets
    }

    pub fn initial_basis(&self) -> &DifferenceBasis {
        &self.initial_basis
    }

    pub fn kernel_bases(&self) -> &[DifferenceBasis] {
        &self.kernel_bases
    }

    pub fn kernel_bases_ambient(&self) -> &[Vec<Elem>] {
        &self.kernel_bases_ambient
    }

    pub fn lift_rule(&self) -> LiftRule {
        self.lifts
    }

    /// `|S_k| / |H_k|`, exactly.
    pub fn density(&self, k: usize) -> BigRational {
        BigRational::new(
            BigInt::from(self.sets[k].len()),
            BigInt::from(self.tower.level(k).order()),
        )
    }

    fn contains(&self, k: usize, x: Elem) -> bool {
        self.sets[k].binary_search(&x).is_ok()
    }

    /// Recomputes `S_k S_k^-1` and reports how many elements of `H_k` it misses.
    pub fn uncovered(&self, k: usize) -> usize {
        uncovered_count(self.tower.level(k), &self.sets[k])
    }

    /// Lexicographically least `(a, b)` in `S_k^2` with `a b^-1 = g`.
    pub fn difference_witness(&self, k: usize, g: Elem) -> Result<(Elem, Elem), TowerError> {
        let h = self.tower.level(k);
        if !h.contains(g) {
            return Err(TowerError::BadElement { level: k, elem: g });
        }
        // for fixed a the only candidate is b = g^-1 a
        let g_inv = h.inv(g);
        self.sets[k]
            .iter()
            .find_map(|&a| {
                let b = h.mul(g_inv, a);
                self.contains(k, b).then_some((a, b))
            })
            .ok_or(TowerError::CoveringFailed {
                level: k,
                missing: 1,
            })
    }

    /// Witnesses at every level that project onto each other, derived from a
    /// single point of `S_m ∩ g S_m` at the top level.
    pub fn coherent_witness_chain(&self, g_top: Elem) -> Result<WitnessChain, TowerError> {
        let top = self.tower.depth() - 1;
        let (a_top, b_top) = self.difference_witness(top, g_top)?;
        let mut links = Vec::with_capacity(top + 1);
        let mut consistent = true;
        for k in 0..=top {
            let phi = self.tower.composed(k);
            let (g, a, b) = (phi.apply(g_top), phi.apply(a_top), phi.apply(b_top));
            consistent &=
                self.contains(k, a) && self.contains(k, b) && self.tower.level(k).div(a, b) == g;
            links.push(ChainLink {
                k: k + 1,
                g,
                a,
                b,
                least_witness: self.difference_witness(k, g)?,
            });
        }
        for k in 0..top {
            let pi = self.tower.projection(k);
            let (lower, upper) = (&links[k], &links[k + 1]);
            consistent &= pi.apply(upper.a) == lower.a && pi.apply(upper.b) == lower.b;
        }
        Ok(WitnessChain {
            g_top,
            intersection_point: a_top,
            links,
            consistent,
        })
    }

    /// Whether `g` at level `depth` lies in the cylinder `K_k`, i.e. projects into `S_k`.
    pub fn cylinder_membership(&self, k: usize, depth: usize, g: Elem) -> Result<bool, TowerError> {
        if k > depth || depth >= self.tower.depth() {
            return Err(TowerError::BadElement {
                level: depth,
                elem: g,
            });
        }
        if !self.tower.level(depth).contains(g) {
            return Err(TowerError::BadElement {
                level: depth,
                elem: g,
            });
        }
        Ok(self.contains(k, self.tower.project(depth, k, g)))
    }

    pub fn density_ledger(&self) -> Vec<LedgerRow> {
        density_ledger(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    /// 1-based level.
    pub k: usize,
    pub g: Elem,
    pub a: Elem,
    pub b: Elem,
    /// Independent least witness at this level (may differ from `(a, b)`).
    pub least_witness: (Elem, Elem),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessChain {
    pub g_top: Elem,
    /// `a_m in S_m ∩ g_m S_m`.
    pub intersection_point: Elem,
    pub links: Vec<ChainLink>,
    pub consistent: bool,
}

/// One level of the exact density bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerRow {
    /// 1-based level.
    pub k: usize,
    pub group_order: usize,
    /// `|Q_k|`; absent at the base level.
    pub kernel_order: Option<usize>,
    /// `|S_1|` at the base, `|T_k|` above.
    pub basis_size: usize,
    pub set_size: usize,
    /// `eta_k = |S_k| / |H_k|`, which is also `m(K_k) / m(N_1)`.
    pub eta: BigRational,
    /// `2 eta_k <= eta_{k-1}` (true at the base).
    pub halving_ok: bool,
    /// `3 |Q_k| >= 64` (true at the base).
    pub index_condition_ok: bool,
    /// `|S_k| <= |S_{k-1}| |T_k|`, i.e. `eta_k <= eta_{k-1} |T_k| / |Q_k|`.
    pub recursion_ok: bool,
    /// Basis used at this level satisfies `3 |T|^2 <= 16 |group|`.
    pub kozma_lev_ok: bool,
    /// `eta_k <= eta_1 / 2^(k-1)`, reported when every earlier halving held.
    pub cumulative_bound_ok: Option<bool>,
}

pub fn density_ledger(cs: &CoveringSequence) -> Vec<LedgerRow> {
    let tower = cs.tower();
    let eta_1 = cs.density(0);
    let mut rows: Vec<LedgerRow> = Vec::with_capacity(tower.depth());
    let mut all_halved = true;
    for k in 0..tower.depth() {
        let eta = cs.density(k);
        let row = if k == 0 {
            LedgerRow {
                k: 1,
                group_order: tower.level(0).order(),
                kernel_order: None,
                basis_size: cs.initial_basis.size(),
                set_size: cs.sets[0].len(),
                eta: eta.clone(),
                halving_ok: true,
                index_condition_ok: true,
                recursion_ok: true,
                kozma_lev_ok: KozmaLevConstant::admits(
                    cs.initial_basis.size(),
                    tower.level(0).order(),
                ),
                cumulative_bound_ok: Some(true),
            }
        } else {
            let prev = &rows[k - 1];
            let q = tower.kernel(k - 1).order();
            let t = cs.kernel_bases[k - 1].size();
            let halving_ok = eta.clone() * BigInt::from(2) <= prev.eta;
            let scale = BigRational::from_integer(BigInt::from(1u64) << (k as u32));
            let cumulative_bound_ok = all_halved.then(|| &eta * &scale <= eta_1);
            LedgerRow {
                k: k + 1,
                group_order: tower.level(k).order(),
                kernel_order: Some(q),
                basis_size: t,
                set_size: cs.sets[k].len(),
                recursion_ok: cs.sets[k].len() <= prev.set_size * t,
                eta,
                halving_ok,
                index_condition_ok: index_condition_holds(q),
                kozma_lev_ok: KozmaLevConstant::admits(t, q),
                cumulative_bound_ok,
            }
        };
        all_halved &= row.halving_ok;
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_cyclic, named, quotient};

    #[test]
    fn padic_tower_shapes() {
        let t = build_padic_tower(2, &[5, 10, 15], DEFAULT_TOWER_CAP).unwrap();
        let orders: Vec<usize> = t.levels().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![32, 1024, 32768]);
        assert_eq!(t.kernel(0).order(), 32);
        assert_eq!(t.kernel(1).order(), 32);
        assert!(t.composition_compatible());

        let t = build_padic_tower(3, &[3, 6], DEFAULT_TOWER_CAP).unwrap();
        assert_eq!(t.level(1).order(), 729);
        assert_eq!(t.kernel(0).order(), 27);

        let t = build_padic_tower(2, &[5], DEFAULT_TOWER_CAP).unwrap();
        assert_eq!(t.depth(), 1);
        assert!(t.kernels().is_empty());
    }

    #[test]
    fn padic_tower_errors() {
        assert_eq!(
            build_padic_tower(4, &[1, 2], DEFAULT_TOWER_CAP).unwrap_err(),
            TowerError::NotPrime(4)
        );
        assert!(matches!(
            build_padic_tower(2, &[3, 3], DEFAULT_TOWER_CAP),
            Err(TowerError::BadExponents(_))
        ));
        assert!(matches!(
            build_padic_tower(2, &[], DEFAULT_TOWER_CAP),
            Err(TowerError::BadExponents(_))
        ));
        assert!(matches!(
            build_padic_tower(2, &[5, 21], DEFAULT_TOWER_CAP),
            Err(TowerError::CapExceeded { .. })
        ));
    }

    #[test]
    fn index_condition_boundary() {
        assert!(!index_condition_holds(21));
        assert!(index_condition_holds(22));
        assert!(index_condition_holds(32));
        let t = build_padic_tower(2, &[1, 3], DEFAULT_TOWER_CAP).unwrap();
        let c = check_index_condition(&t);
        assert_eq!(
            c,
            vec![IndexCondition {
                k: 2,
                kernel_order: 4,
                satisfied: false
            }]
        );
    }

    #[test]
    fn small_tower_runs_and_witnesses() {
        let t = build_padic_tower(2, &[5, 10], DEFAULT_TOWER_CAP).unwrap();
        let cs = construct_covering_sequence(&t, &BasisStrategy::Exact, 0).unwrap();
        for g in t.level(1).elements() {
            let chain = cs.coherent_witness_chain(g).unwrap();
            assert!(chain.consistent);
            let (l1, l2) = (&chain.links[0], &chain.links[1]);
            assert_eq!(t.projection(0).apply(l2.a), l1.a);
            assert_eq!(t.projection(0).apply(l2.b), l1.b);
            assert_eq!(t.level(1).div(l2.a, l2.b), g);
            assert_eq!(t.level(0).div(l1.a, l1.b), l1.g);
        }
        let chain = cs.coherent_witness_chain(0).unwrap();
        let least = cs.set(1)[0];
        assert_eq!((chain.links[1].a, chain.links[1].b), (least, least));
    }

    #[test]
    fn witness_example_z7() {
        let z7 = make_cyclic(7).unwrap();
        let tower = Tower::from_projections(z7.clone(), vec![]).unwrap();
        struct Fixed;
        impl BasisProvider for Fixed {
            fn basis(&self, g: &FiniteGroup, _: u64) -> Result<DifferenceBasis, DiffBasisError> {
                DifferenceBasis::new(g, vec![1, 2, 4], crate::diffbasis::Method::User)
            }
        }
        let cs = construct_covering_sequence(&tower, &Fixed, 0).unwrap();
        assert_eq!(cs.difference_witness(0, 3).unwrap(), (4, 1));
        assert_eq!(cs.difference_witness(0, 0).unwrap(), (1, 1));
        assert!(cs.difference_witness(0, 7).is_err());
        let ledger = cs.density_ledger();
        assert_eq!(ledger.len(), 1);
        assert_eq!(ledger[0].eta, BigRational::new(3.into(), 7.into()));
        assert!(ledger[0].halving_ok);
    }

    #[test]
    fn weak_kernel_still_covers() {
        let t = build_padic_tower(2, &[1, 3], DEFAULT_TOWER_CAP).unwrap();
        let cs = construct_covering_sequence(&t, &BasisStrategy::Exact, 0).unwrap();
        assert_eq!(cs.uncovered(1), 0);
        let ledger = cs.density_ledger();
        assert!(!ledger[1].index_condition_ok);
    }

    #[test]
    fn cylinder_nesting() {
        let t = build_padic_tower(2, &[3, 6, 9], DEFAULT_TOWER_CAP).unwrap();
        let cs = construct_covering_sequence(&t, &BasisStrategy::Greedy, 0).unwrap();
        let top = t.depth() - 1;
        for g in t.level(top).elements() {
            for k in 0..top {
                if cs.cylinder_membership(k + 1, top, g).unwrap() {
                    assert!(cs.cylinder_membership(k, top, g).unwrap());
                }
            }
        }
        for &g in cs.set(top) {
            assert!((0..=top).all(|k| cs.cylinder_membership(k, top, g).unwrap()));
        }
        assert!(cs.cylinder_membership(2, 1, 0).is_err());
    }

    #[test]
    fn random_lifts_cover() {
        let t = build_padic_tower(3, &[2, 4, 5], DEFAULT_TOWER_CAP).unwrap();
        let cs =
            construct_covering_sequence_with(&t, &BasisStrategy::Exact, 1, LiftRule::Random(99))
                .unwrap();
        assert!((0..t.depth()).all(|k| cs.uncovered(k) == 0));
    }

    #[test]
    fn nonabelian_tower() {
        // Z/2 x S3 -> S3 -> Z/2
        let s3 = named::symmetric3();
        let z2 = make_cyclic(2).unwrap();
        let big = direct_product(&z2, &s3).unwrap();
        let drop_z2 = GroupHom::new(&big, &s3, big.elements().map(|x| x % 6).collect()).unwrap();
        let a3 = Subgroup::new(&s3, vec![0, 3, 4]).unwrap();
        let (sign_group, sign) = quotient(&s3, &a3).unwrap();
        let tower = Tower::from_projections(sign_group, vec![sign, drop_z2]).unwrap();
        assert!(tower.composition_compatible());
        let cs = construct_covering_sequence(&tower, &BasisStrategy::Exact, 0).unwrap();
        assert!((0..3).all(|k| cs.uncovered(k) == 0));
        for g in tower.level(2).elements() {
            assert!(cs.coherent_witness_chain(g).unwrap().consistent);
        }
    }

    #[test]
    fn determinism() {
        let t = build_padic_tower(2, &[6, 12], DEFAULT_TOWER_CAP).unwrap();
        let a = construct_covering_sequence(&t, &BasisStrategy::Random, 5).unwrap();
        let b = construct_covering_sequence(&t, &BasisStrategy::Random, 5).unwrap();
        assert_eq!(a.sets(), b.sets());
    }
}
