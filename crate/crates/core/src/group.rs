//! Finite groups as dense index structures.
//!
//! Every group has elements `0..order`. Cyclic groups and direct products
//! compute multiplication arithmetically; arbitrary groups are stored as a
//! Cayley table and are only admitted up to [`DEFAULT_TABLE_CAP`] elements.
//! Values are immutable and cheap to clone.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Element of a finite group, as a dense index.
pub type Elem = usize;

/// Largest order for which Cayley tables are stored and axioms are checked exhaustively.
pub const DEFAULT_TABLE_CAP: usize = 512;

/// Largest order accepted for arithmetic (cyclic / product) groups.
pub const DEFAULT_MAX_ORDER: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group order {0}")]
    InvalidOrder(usize),
    #[error("group of order {order} exceeds the size cap {cap}")]
    SizeLimit { order: usize, cap: usize },
    #[error("cayley table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("group axiom violated: {0}")]
    AxiomViolation(AxiomWitness),
    #[error("element {elem} is out of range for a group of order {order}")]
    InvalidElement { elem: Elem, order: usize },
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: {g} * {n} * {g}^-1 is outside the subgroup")]
    NotNormal { g: Elem, n: Elem },
    #[error("map is not a homomorphism: f({x}*{y}) != f({x})*f({y})")]
    NotHomomorphism { x: Elem, y: Elem },
    #[error("map is not surjective: {0} has no preimage")]
    NotSurjective(Elem),
    #[error("map has length {len}, expected {expected}")]
    MapLength { len: usize, expected: usize },
    #[error("homomorphisms do not compose: target of the first has order {left}, source of the second has order {right}")]
    IncompatibleComposition { left: usize, right: usize },
}

/// Explicit counterexample produced by Cayley-table validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomWitness {
    /// `(a*b)*c != a*(b*c)`
    NonAssociative(Elem, Elem, Elem),
    NoIdentity,
    /// Element without a two-sided inverse.
    NoInverse(Elem),
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomWitness::NonAssociative(a, b, c) => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
            AxiomWitness::NoIdentity => write!(f, "no identity element"),
            AxiomWitness::NoInverse(x) => write!(f, "element {x} has no inverse"),
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Repr {
    Cyclic,
    Product {
        left: FiniteGroup,
        right: FiniteGroup,
    },
    Table {
        mul: Vec<Elem>,
        inv: Vec<Elem>,
    },
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    order: usize,
    identity: Elem,
    label: String,
    repr: Repr,
}

/// A finite group on the index set `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup(Arc<Inner>);

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.0.label, self.0.order)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.label)
    }
}

/// The cyclic group `Z/n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    make_cyclic_capped(n, DEFAULT_MAX_ORDER)
}

pub fn make_cyclic_capped(n: usize, max_order: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidOrder(0));
    }
    if n > max_order {
        return Err(GroupError::SizeLimit {
            order: n,
            cap: max_order,
        });
    }
    Ok(FiniteGroup(Arc::new(Inner {
        order: n,
        identity: 0,
        label: format!("Z/{n}"),
        repr: Repr::Cyclic,
    })))
}

/// Componentwise product; the pair `(g, h)` has index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    direct_product_capped(g, h, DEFAULT_MAX_ORDER)
}

pub fn direct_product_capped(
    g: &FiniteGroup,
    h: &FiniteGroup,
    max_order: usize,
) -> Result<FiniteGroup, GroupError> {
    let order = g
        .order()
        .checked_mul(h.order())
        .filter(|&o| o <= max_order)
        .ok_or(GroupError::SizeLimit {
            order: g.order().saturating_mul(h.order()),
            cap: max_order,
        })?;
    Ok(FiniteGroup(Arc::new(Inner {
        order,
        identity: g.identity() * h.order() + h.identity(),
        label: format!("{} x {}", g.label(), h.label()),
        repr: Repr::Product {
            left: g.clone(),
            right: h.clone(),
        },
    })))
}

/// Validates a Cayley table exhaustively and builds the group it describes.
///
/// The identity and inverses are derived from the table. Tables larger than
/// [`DEFAULT_TABLE_CAP`] are rejected.
pub fn from_cayley_table(table: &[Vec<Elem>], label: &str) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::InvalidOrder(0));
    }
    if n > DEFAULT_TABLE_CAP {
        return Err(GroupError::SizeLimit {
            order: n,
            cap: DEFAULT_TABLE_CAP,
        });
    }
    let mut mul = Vec::with_capacity(n * n);
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != n {
            return Err(GroupError::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
        for &e in entries {
            if e >= n {
                return Err(GroupError::InvalidElement { elem: e, order: n });
            }
            mul.push(e);
        }
    }
    let at = |a: Elem, b: Elem| mul[a * n + b];

    let identity = (0..n)
        .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
        .ok_or(GroupError::AxiomViolation(AxiomWitness::NoIdentity))?;
    let inv = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or(GroupError::AxiomViolation(AxiomWitness::NoInverse(x)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for a in 0..n {
        for b in 0..n {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(GroupError::AxiomViolation(AxiomWitness::NonAssociative(
                        a, b, c,
                    )));
                }
            }
        }
    }
    Ok(FiniteGroup(Arc::new(Inner {
        order: n,
        identity,
        label: label.to_string(),
        repr: Repr::Table { mul, inv },
    })))
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> Elem {
        self.0.identity
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn is_cyclic_repr(&self) -> bool {
        matches!(self.0.repr, Repr::Cyclic)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.0.order
    }

    pub fn check_elem(&self, x: Elem) -> Result<(), GroupError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GroupError::InvalidElement {
                elem: x,
                order: self.order(),
            })
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.order
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.0.repr {
            Repr::Cyclic => {
                let s = x + y;
                if s >= self.0.order {
                    s - self.0.order
                } else {
                    s
                }
            }
            Repr::Product { left, right } => {
                let m = right.order();
                left.mul(x / m, y / m) * m + right.mul(x % m, y % m)
            }
            Repr::Table { mul, .. } => mul[x * self.0.order + y],
        }
    }

    pub fn inv(&self, x: Elem) -> Elem {
        match &self.0.repr {
            Repr::Cyclic => (self.0.order - x) % self.0.order,
            Repr::Product { left, right } => {
                let m = right.order();
                left.inv(x / m) * m + right.inv(x % m)
            }
            Repr::Table { inv, .. } => inv[x],
        }
    }

    /// `x * y^-1`
    pub fn div(&self, x: Elem, y: Elem) -> Elem {
        self.mul(x, self.inv(y))
    }

    pub fn pow(&self, x: Elem, mut k: u64) -> Elem {
        let mut acc = self.identity();
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let e = self.identity();
        let mut y = x;
        let mut k = 1;
        while y != e {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        match &self.0.repr {
            Repr::Cyclic => true,
            Repr::Product { left, right } => left.is_abelian() && right.is_abelian(),
            Repr::Table { .. } => {
                let gens = self.generators();
                gens.iter()
                    .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
            }
        }
    }

    /// A generating set. Tables report every non-identity element.
    pub fn generators(&self) -> Vec<Elem> {
        match &self.0.repr {
            Repr::Cyclic => {
                if self.0.order > 1 {
                    vec![1]
                } else {
                    vec![]
                }
            }
            Repr::Product { left, right } => {
                let m = right.order();
                let mut gens: Vec<Elem> = left
                    .generators()
                    .into_iter()
                    .map(|a| a * m + right.identity())
                    .collect();
                gens.extend(
                    right
                        .generators()
                        .into_iter()
                        .map(|b| left.identity() * m + b),
                );
                gens
            }
            Repr::Table { .. } => self.elements().filter(|&x| x != self.identity()).collect(),
        }
    }

    /// Exhaustive check of associativity, identity and inverse laws.
    ///
    /// Groups above `cap` are skipped (returns `Ok(false)`): arithmetic
    /// constructors are correct by construction.
    pub fn check_axioms(&self, cap: usize) -> Result<bool, GroupError> {
        let n = self.order();
        if n > cap {
            return Ok(false);
        }
        let e = self.identity();
        for x in 0..n {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                return Err(GroupError::AxiomViolation(AxiomWitness::NoIdentity));
            }
            if self.mul(x, self.inv(x)) != e || self.mul(self.inv(x), x) != e {
                return Err(GroupError::AxiomViolation(AxiomWitness::NoInverse(x)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::AxiomViolation(AxiomWitness::NonAssociative(
                            a, b, c,
                        )));
                    }
                }
            }
        }
        Ok(true)
    }

    /// Full multiplication table (only sensible for small groups).
    pub fn cayley_table(&self) -> Vec<Vec<Elem>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        match &self.0.repr {
            Repr::Cyclic => GroupDescriptor::Cyclic {
                n: self.order(),
                label: None,
            },
            Repr::Product { left, right } => {
                let mut factors = Vec::new();
                for part in [left, right] {
                    match part.descriptor() {
                        // flatten left-nested products so `a x b x c` round-trips
                        GroupDescriptor::Product { factors: inner, .. }
                            if std::ptr::eq(part, left) =>
                        {
                            factors.extend(inner)
                        }
                        d => factors.push(d),
                    }
                }
                GroupDescriptor::Product {
                    factors,
                    label: None,
                }
            }
            Repr::Table { .. } => GroupDescriptor::Table {
                table: self.cayley_table(),
                label: Some(self.label().to_string()),
            },
        }
    }

    fn membership(&self, set: &[Elem]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        for &x in set {
            mask[x] = true;
        }
        mask
    }
}

/// Serializable description of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupDescriptor {
    Cyclic {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Product {
        factors: Vec<GroupDescriptor>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Table {
        table: Vec<Vec<Elem>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

impl GroupDescriptor {
    pub fn build(&self, max_order: usize) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupDescriptor::Cyclic { n, .. } => make_cyclic_capped(*n, max_order),
            GroupDescriptor::Product { factors, .. } => {
                let mut iter = factors.iter();
                let first = iter
                    .next()
                    .ok_or(GroupError::InvalidOrder(0))?
                    .build(max_order)?;
                iter.try_fold(first, |acc, f| {
                    direct_product_capped(&acc, &f.build(max_order)?, max_order)
                })
            }
            GroupDescriptor::Table { table, label } => {
                from_cayley_table(table, label.as_deref().unwrap_or("table"))
            }
        }
    }
}

/// Sorts and deduplicates an element set.
pub fn normalize_set(mut set: Vec<Elem>) -> Vec<Elem> {
    set.sort_unstable();
    set.dedup();
    set
}

fn collect_mask(mask: &[bool]) -> Vec<Elem> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &m)| m.then_some(i))
        .collect()
}

/// `A * B`, sorted and deduplicated.
pub fn set_product(g: &FiniteGroup, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut mask = vec![false; g.order()];
    for &x in a {
        for &y in b {
            mask[g.mul(x, y)] = true;
        }
    }
    collect_mask(&mask)
}

/// `A * B^-1`, sorted and deduplicated.
pub fn set_product_inv(g: &FiniteGroup, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let b_inv: Vec<Elem> = b.iter().map(|&y| g.inv(y)).collect();
    set_product(g, a, &b_inv)
}

/// A subgroup, with its normality established at construction time.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<Elem>,
    normal: bool,
}

impl Subgroup {
    /// Validates that `elements` is a subgroup of `parent` and records whether it is normal.
    pub fn new(parent: &FiniteGroup, elements: Vec<Elem>) -> Result<Self, GroupError> {
        let elements = normalize_set(elements);
        for &x in &elements {
            parent.check_elem(x)?;
        }
        if elements.binary_search(&parent.identity()).is_err() {
            return Err(GroupError::NotSubgroup("missing identity".into()));
        }
        let mask = parent.membership(&elements);
        for &x in &elements {
            for &y in &elements {
                let z = parent.div(x, y);
                if !mask[z] {
                    return Err(GroupError::NotSubgroup(format!(
                        "{x} * {y}^-1 = {z} is outside the set"
                    )));
                }
            }
        }
        let normal = normality_witness(parent, &elements, &mask).is_none();
        Ok(Subgroup {
            parent: parent.clone(),
            elements,
            normal,
        })
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: vec![parent.identity()],
            normal: true,
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// Fails with a conjugation witness unless the subgroup is normal.
    pub fn require_normal(&self) -> Result<(), GroupError> {
        let mask = self.parent.membership(&self.elements);
        match normality_witness(&self.parent, &self.elements, &mask) {
            None => Ok(()),
            Some((g, n)) => Err(GroupError::NotNormal { g, n }),
        }
    }

    /// Rebuilds the subgroup as a standalone group.
    ///
    /// Returns the group together with its embedding: index `i` of the new
    /// group corresponds to `elements()[i]` in the parent.
    pub fn as_group(&self) -> Result<(FiniteGroup, Vec<Elem>), GroupError> {
        let n = self.order();
        if self.parent.is_cyclic_repr() {
            // subgroups of Z/m are the multiples of m/n, listed in order
            let g = make_cyclic_capped(n, self.parent.order())?;
            return Ok((g, self.elements.clone()));
        }
        if n > DEFAULT_TABLE_CAP {
            return Err(GroupError::SizeLimit {
                order: n,
                cap: DEFAULT_TABLE_CAP,
            });
        }
        let pos = |x: Elem| self.elements.binary_search(&x).expect("closed subgroup");
        let table: Vec<Vec<Elem>> = self
            .elements
            .iter()
            .map(|&a| {
                self.elements
                    .iter()
                    .map(|&b| pos(self.parent.mul(a, b)))
                    .collect()
            })
            .collect();
        let label = format!("subgroup of {} (order {n})", self.parent.label());
        Ok((from_cayley_table(&table, &label)?, self.elements.clone()))
    }
}

/// First `(g, n)` with `g n g^-1` outside the set; checking generators of the parent suffices.
fn normality_witness(
    parent: &FiniteGroup,
    elements: &[Elem],
    mask: &[bool],
) -> Option<(Elem, Elem)> {
    for g in parent.generators() {
        let g_inv = parent.inv(g);
        for &n in elements {
            if !mask[parent.mul(parent.mul(g, n), g_inv)] {
                return Some((g, n));
            }
        }
    }
    None
}

/// A surjective homomorphism with a canonical section (least element of each fiber).
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Arc<Vec<Elem>>,
    section: Arc<Vec<Elem>>,
}

impl GroupHom {
    /// Validates the homomorphism law (on generators of the source),
    /// surjectivity and equal fiber sizes.
    pub fn new(
        source: &FiniteGroup,
        target: &FiniteGroup,
        map: Vec<Elem>,
    ) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::MapLength {
                len: map.len(),
                expected: source.order(),
            });
        }
        for &y in &map {
            target.check_elem(y)?;
        }
        // f(xy) = f(x)f(y) for all x and generators y extends to all y by induction
        let gens = source.generators();
        for x in source.elements() {
            for &y in &gens {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(GroupError::NotHomomorphism { x, y });
                }
            }
        }
        if map[source.identity()] != target.identity() {
            return Err(GroupError::NotHomomorphism {
                x: source.identity(),
                y: source.identity(),
            });
        }
        let mut section = vec![usize::MAX; target.order()];
        let mut fiber = vec![0usize; target.order()];
        for (x, &y) in map.iter().enumerate() {
            if section[y] == usize::MAX {
                section[y] = x;
            }
            fiber[y] += 1;
        }
        if let Some(h) = section.iter().position(|&s| s == usize::MAX) {
            return Err(GroupError::NotSurjective(h));
        }
        debug_assert!(fiber.iter().all(|&f| f == fiber[0]));
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            map: Arc::new(map),
            section: Arc::new(section),
        })
    }

    /// The reduction `Z/n -> Z/m`, `x -> x mod m`, for `m | n`.
    pub fn cyclic_reduction(
        source: &FiniteGroup,
        target: &FiniteGroup,
    ) -> Result<Self, GroupError> {
        let m = target.order();
        let map = source.elements().map(|x| x % m).collect();
        GroupHom::new(source, target, map)
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    /// Canonical lift: least source index mapping to `h`.
    pub fn section(&self, h: Elem) -> Elem {
        self.section[h]
    }

    /// All preimages of `h`, ascending.
    pub fn fiber(&self, h: Elem) -> Vec<Elem> {
        self.source
            .elements()
            .filter(|&x| self.map[x] == h)
            .collect()
    }

    pub fn image_of(&self, set: &[Elem]) -> Vec<Elem> {
        normalize_set(set.iter().map(|&x| self.map[x]).collect())
    }

    pub fn kernel(&self) -> Subgroup {
        let e = self.target.identity();
        let elements: Vec<Elem> = self
            .source
            .elements()
            .filter(|&x| self.map[x] == e)
            .collect();
        let mask = self.source.membership(&elements);
        let normal = normality_witness(&self.source, &elements, &mask).is_none();
        debug_assert!(normal, "kernels are normal");
        Subgroup {
            parent: self.source.clone(),
            elements,
            normal,
        }
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if self.target != other.source {
            return Err(GroupError::IncompatibleComposition {
                left: self.target.order(),
                right: other.source.order(),
            });
        }
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        GroupHom::new(&self.source, &other.target, map)
    }
}

/// Kernel of a homomorphism; always normal.
pub fn kernel(f: &GroupHom) -> Subgroup {
    f.kernel()
}

/// The quotient `G/N` and its canonical projection.
///
/// Cosets are indexed in increasing order of their least element, which is
/// also the value of the section. Quotients of cyclic groups are built as
/// cyclic groups; other quotients are tabulated and must fit the table cap.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom), GroupError> {
    if n.parent() != g {
        return Err(GroupError::NotSubgroup(
            "subgroup belongs to a different group".into(),
        ));
    }
    n.require_normal()?;
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::with_capacity(n.index());
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &k in n.elements() {
            coset_of[g.mul(x, k)] = c;
        }
    }
    let m = reps.len();
    let q = if g.is_cyclic_repr() {
        make_cyclic_capped(m, g.order())?
    } else {
        if m > DEFAULT_TABLE_CAP {
            return Err(GroupError::SizeLimit {
                order: m,
                cap: DEFAULT_TABLE_CAP,
            });
        }
        let table: Vec<Vec<Elem>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
            .collect();
        from_cayley_table(&table, &format!("{}/N{}", g.label(), n.order()))?
    };
    let hom = GroupHom::new(g, &q, coset_of)?;
    Ok((q, hom))
}

/// Small nonabelian groups used in tests and suites.
pub mod named {
    use super::*;

    fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
        // (p ∘ q)(i) = p(q(i))
        q.iter().map(|&i| p[i]).collect()
    }

    fn from_permutations(perms: Vec<Vec<usize>>, label: &str) -> FiniteGroup {
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let table: Vec<Vec<Elem>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| index(&compose(a, b))).collect())
            .collect();
        from_cayley_table(&table, label).expect("permutation groups satisfy the axioms")
    }

    /// `S_3` as permutations of {0,1,2} in lexicographic order (index 0 is the identity).
    pub fn symmetric3() -> FiniteGroup {
        let perms = vec![
            vec![0, 1, 2],
            vec![0, 2, 1],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
            vec![2, 1, 0],
        ];
        from_permutations(perms, "S3")
    }

    /// Dihedral group of order `2n`: `r^i` has index `i`, `s r^i` has index `n + i`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidOrder(0));
        }
        let elem = |flip: bool, rot: usize| if flip { n + rot } else { rot };
        let table: Vec<Vec<Elem>> = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (fa, ra) = (a >= n, a % n);
                        let (fb, rb) = (b >= n, b % n);
                        // s^fa r^ra s^fb r^rb = s^(fa+fb) r^(±ra + rb)
                        let rot = if fb { (n - ra + rb) % n } else { (ra + rb) % n };
                        elem(fa ^ fb, rot)
                    })
                    .collect()
            })
            .collect();
        from_cayley_table(&table, &format!("D{n}"))
    }

    /// Quaternion group: indices 0..8 are 1, -1, i, -i, j, -j, k, -k.
    pub fn quaternion() -> FiniteGroup {
        // unit u in {1,i,j,k} as 0..4, sign s; element index 2u + s
        fn unit_mul(a: usize, b: usize) -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        }
        let table: Vec<Vec<Elem>> = (0..8)
            .map(|a: usize| {
                (0..8)
                    .map(|b: usize| {
                        let (u, neg) = unit_mul(a / 2, b / 2);
                        let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
                        2 * u + usize::from(sign)
                    })
                    .collect()
            })
            .collect();
        from_cayley_table(&table, "Q8").expect("quaternion table is a group")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn cyclic_examples() {
        let z1 = make_cyclic(1).unwrap();
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.mul(0, 0), 0);
        let z4 = make_cyclic(4).unwrap();
        assert_eq!(z4.mul(3, 2), 1);
        assert_eq!(z4.inv(1), 3);
        let z7 = make_cyclic(7).unwrap();
        assert_eq!(z7.inv(3), 4);
        assert_eq!(z7.mul(5, 6), 4);
        assert_eq!(make_cyclic(0), Err(GroupError::InvalidOrder(0)));
    }

    #[test]
    fn products() {
        let z2 = make_cyclic(2).unwrap();
        let v4 = direct_product(&z2, &z2).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(v4.elements().all(|x| v4.inv(x) == x));

        let z3 = make_cyclic(3).unwrap();
        let z6 = direct_product(&z2, &z3).unwrap();
        // (1,1) has index 1*3 + 1
        let powers: Vec<Elem> = (0..6).map(|k| z6.pow(4, k)).collect();
        assert_eq!(normalize_set(powers).len(), 6);
        assert_eq!(z6.element_order(4), 6);

        let trivial = make_cyclic(1).unwrap();
        let s3 = symmetric3();
        let p = direct_product(&trivial, &s3).unwrap();
        assert_eq!(p.cayley_table(), s3.cayley_table());

        let big = make_cyclic(1 << 11).unwrap();
        assert!(matches!(
            direct_product(&big, &big),
            Err(GroupError::SizeLimit { .. })
        ));
    }

    #[test]
    fn cayley_tables() {
        let s3 = symmetric3();
        assert!(!s3.is_abelian());
        assert_eq!(s3.identity(), 0);
        let t = from_cayley_table(&[vec![0]], "1").unwrap();
        assert_eq!(t.order(), 1);

        // x*y = (2x + 2y) mod 5... use x*y = (2x - y) mod 5: a latin square, not associative
        let quasi: Vec<Vec<Elem>> = (0..5)
            .map(|x| (0..5).map(|y| (2 * x + 5 - y) % 5).collect())
            .collect();
        let err = from_cayley_table(&quasi, "quasi").unwrap_err();
        assert!(matches!(err, GroupError::AxiomViolation(_)), "{err}");

        // latin square with identity 0 but failing associativity
        let loop5: Vec<Vec<Elem>> = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match from_cayley_table(&loop5, "loop") {
            Err(GroupError::AxiomViolation(AxiomWitness::NonAssociative(a, b, c))) => {
                let m = |x: usize, y: usize| loop5[x][y];
                assert_ne!(m(m(a, b), c), m(a, m(b, c)));
            }
            other => panic!("expected associativity witness, got {other:?}"),
        }

        assert!(matches!(
            from_cayley_table(&[vec![0, 1], vec![1]], "bad"),
            Err(GroupError::NotSquare { .. })
        ));
    }

    #[test]
    fn nonabelian_groups_satisfy_axioms() {
        for g in [symmetric3(), dihedral(4).unwrap(), quaternion()] {
            assert_eq!(g.check_axioms(DEFAULT_TABLE_CAP), Ok(true));
            assert!(!g.is_abelian());
        }
        assert_eq!(dihedral(4).unwrap().order(), 8);
        let q8 = quaternion();
        // -1 is the unique element of order 2
        let order2: Vec<Elem> = q8
            .elements()
            .filter(|&x| q8.element_order(x) == 2)
            .collect();
        assert_eq!(order2, vec![1]);
    }

    #[test]
    fn quotients() {
        let z8 = make_cyclic(8).unwrap();
        let n = Subgroup::new(&z8, vec![0, 4]).unwrap();
        let (q, hom) = quotient(&z8, &n).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.element_order(1), 4);
        assert_eq!(hom.kernel().elements(), n.elements());

        let z32 = make_cyclic(32).unwrap();
        let (q, hom) = quotient(&z32, &Subgroup::trivial(&z32)).unwrap();
        assert_eq!(q.order(), 32);
        assert!(z32.elements().all(|x| hom.apply(x) == x));

        let s3 = symmetric3();
        // A_3: identity and the two 3-cycles (indices 3 and 4)
        let a3 = Subgroup::new(&s3, vec![0, 3, 4]).unwrap();
        assert!(a3.is_normal());
        let (q, hom) = quotient(&s3, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(hom.kernel().elements(), &[0, 3, 4]);
        assert_eq!(hom.section(1), 1);

        let transposition = Subgroup::new(&s3, vec![0, 1]).unwrap();
        assert!(!transposition.is_normal());
        assert!(matches!(
            quotient(&s3, &transposition),
            Err(GroupError::NotNormal { .. })
        ));
    }

    #[test]
    fn kernels() {
        let z32 = make_cyclic(32).unwrap();
        let z8 = make_cyclic(8).unwrap();
        let f = GroupHom::cyclic_reduction(&z32, &z8).unwrap();
        assert_eq!(kernel(&f).elements(), &[0, 8, 16, 24]);
        assert!(kernel(&f).is_normal());

        let id = GroupHom::new(&z8, &z8, (0..8).collect()).unwrap();
        assert_eq!(kernel(&id).elements(), &[0]);

        let big = make_cyclic(1024).unwrap();
        let f = GroupHom::cyclic_reduction(&big, &z32).unwrap();
        assert_eq!(kernel(&f).order(), 32);
        assert_eq!(big.order(), z32.order() * kernel(&f).order());
    }

    #[test]
    fn bad_homomorphisms() {
        let z4 = make_cyclic(4).unwrap();
        let z2 = make_cyclic(2).unwrap();
        assert!(matches!(
            GroupHom::new(&z4, &z2, vec![0, 1, 1, 0]),
            Err(GroupError::NotHomomorphism { .. })
        ));
        assert!(matches!(
            GroupHom::new(&z4, &z4, vec![0, 2, 0, 2]),
            Err(GroupError::NotSurjective(1))
        ));
    }

    #[test]
    fn set_products() {
        let z7 = make_cyclic(7).unwrap();
        assert_eq!(set_product(&z7, &[0], &[2, 5]), vec![2, 5]);
        assert_eq!(
            set_product_inv(&z7, &[1, 2, 4], &[1, 2, 4]),
            (0..7).collect::<Vec<_>>()
        );
        let z4 = make_cyclic(4).unwrap();
        assert_eq!(set_product_inv(&z4, &[0], &[1]), vec![3]);
    }

    #[test]
    fn subgroup_validation() {
        let z6 = make_cyclic(6).unwrap();
        assert!(Subgroup::new(&z6, vec![1, 2]).is_err());
        assert!(Subgroup::new(&z6, vec![0, 2]).is_err());
        assert!(Subgroup::new(&z6, vec![0, 9]).is_err());
        let s = Subgroup::new(&z6, vec![4, 0, 2]).unwrap();
        assert_eq!(s.elements(), &[0, 2, 4]);
        let (g, embed) = s.as_group().unwrap();
        assert_eq!(g.order(), 3);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(embed[g.mul(a, b)], z6.mul(embed[a], embed[b]));
            }
        }

        let d4 = dihedral(4).unwrap();
        let rotations = Subgroup::new(&d4, vec![0, 1, 2, 3]).unwrap();
        assert!(rotations.is_normal());
        let (g, embed) = rotations.as_group().unwrap();
        assert!(g.is_abelian());
        assert_eq!(
            g.element_order(embed.iter().position(|&x| x == 1).unwrap()),
            4
        );
    }

    #[test]
    fn descriptors_round_trip() {
        let z2 = make_cyclic(2).unwrap();
        let z4 = make_cyclic(4).unwrap();
        let p = direct_product(&direct_product(&z2, &z4).unwrap(), &z2).unwrap();
        let d = p.descriptor();
        match &d {
            GroupDescriptor::Product { factors, .. } => assert_eq!(factors.len(), 3),
            _ => panic!(),
        }
        let rebuilt = d.build(DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(rebuilt.cayley_table(), p.cayley_table());

        let json = serde_json::to_string(&quaternion().descriptor()).unwrap();
        let back: GroupDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(
            back.build(DEFAULT_MAX_ORDER).unwrap().cayley_table(),
            quaternion().cayley_table()
        );

        let parsed: GroupDescriptor = serde_json::from_str(r#"{"kind":"cyclic","n":5}"#).unwrap();
        assert_eq!(parsed.build(DEFAULT_MAX_ORDER).unwrap().order(), 5);
    }
}
