//! Finite bounded lattices with precomputed order, join and meet tables.

mod decompose;
mod interval;
mod io;
mod product;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::verdict::Verdict;

pub use decompose::{is_independent, Decomposition};
pub use interval::Interval;
pub use io::LatticeSpec;
pub use product::{direct_product, Product};

/// Index of an element in its lattice's canonical order.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct ElementId(pub u32);

impl ElementId {
    pub fn new(i: usize) -> Self {
        ElementId(i as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Scope for the relative notions of essential and superfluous elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smallness {
    Essential,
    Superfluous,
}

/// A validated finite bounded lattice.
///
/// Elements are sorted by (rank, name), where rank is the length of the
/// longest chain from the bottom. Hence the bottom is index 0 and the top is
/// index `len() - 1`.
#[derive(Clone)]
pub struct Lattice {
    name: String,
    names: Vec<String>,
    lookup: HashMap<String, ElementId>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    join: Vec<ElementId>,
    meet: Vec<ElementId>,
    rank: Vec<u32>,
    upper_covers: Vec<Vec<ElementId>>,
    lower_covers: Vec<Vec<ElementId>>,
    complements: OnceLock<Vec<Vec<ElementId>>>,
    modular_witness: OnceLock<Option<[ElementId; 3]>>,
    up_intervals: Vec<OnceLock<Arc<Interval>>>,
    down_intervals: Vec<OnceLock<Arc<Interval>>>,
}

/// Two lattices are equal when they carry the same element names in the
/// same canonical order with the same order relation; the lattice name is
/// not compared.
impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("name", &self.name)
            .field("elements", &self.names)
            .field("covers", &self.cover_names())
            .finish()
    }
}

impl Lattice {
    /// Builds a lattice from an up-set relation (`up[i]` holds every `j`
    /// with `i ≤ j`), which must already be reflexive and transitive.
    ///
    /// Returns the lattice and the permutation `perm[new] = old`.
    pub(crate) fn from_order(
        name: String,
        names: Vec<String>,
        up: Vec<FixedBitSet>,
    ) -> Result<(Lattice, Vec<usize>), LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, s) in names.iter().enumerate() {
            if seen.insert(s.as_str(), i).is_some() {
                return Err(LatticeError::DuplicateName(s.clone()));
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(LatticeError::NotAPoset(names[i].clone(), names[j].clone()));
                }
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }

        // Longest chain from below; a strict predecessor always has a
        // strictly smaller down-set.
        let mut by_height: Vec<usize> = (0..n).collect();
        by_height.sort_by_key(|&i| down[i].count_ones(..));
        let mut rank = vec![0u32; n];
        for &i in &by_height {
            rank[i] = down[i]
                .ones()
                .filter(|&j| j != i)
                .map(|j| rank[j] + 1)
                .max()
                .unwrap_or(0);
        }

        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| rank[a].cmp(&rank[b]).then_with(|| names[a].cmp(&names[b])));
        let mut inv = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let remap = |set: &FixedBitSet| {
            let mut out = FixedBitSet::with_capacity(n);
            for j in set.ones() {
                out.insert(inv[j]);
            }
            out
        };
        let names: Vec<String> = perm.iter().map(|&o| names[o].clone()).collect();
        let rank: Vec<u32> = perm.iter().map(|&o| rank[o]).collect();
        let up: Vec<FixedBitSet> = perm.iter().map(|&o| remap(&up[o])).collect();
        let down: Vec<FixedBitSet> = perm.iter().map(|&o| remap(&down[o])).collect();

        let mut join = vec![ElementId(0); n * n];
        let mut meet = vec![ElementId(0); n * n];
        for a in 0..n {
            for b in a..n {
                let mut common = up[a].clone();
                common.intersect_with(&up[b]);
                // A least upper bound, if any, has the smallest rank among
                // the upper bounds and so the smallest canonical index.
                let lub = common.ones().next().filter(|&u| common.is_subset(&up[u]));
                let Some(lub) = lub else {
                    return Err(LatticeError::NotALattice(
                        names[a].clone(),
                        names[b].clone(),
                        "join",
                    ));
                };
                let mut common = down[a].clone();
                common.intersect_with(&down[b]);
                let glb = common.ones().last().filter(|&l| common.is_subset(&down[l]));
                let Some(glb) = glb else {
                    return Err(LatticeError::NotALattice(
                        names[a].clone(),
                        names[b].clone(),
                        "meet",
                    ));
                };
                join[a * n + b] = ElementId::new(lub);
                join[b * n + a] = ElementId::new(lub);
                meet[a * n + b] = ElementId::new(glb);
                meet[b * n + a] = ElementId::new(glb);
            }
        }

        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            for y in up[x].ones() {
                if y == x {
                    continue;
                }
                let mut between = up[x].clone();
                between.intersect_with(&down[y]);
                if between.count_ones(..) == 2 {
                    upper_covers[x].push(ElementId::new(y));
                    lower_covers[y].push(ElementId::new(x));
                }
            }
        }

        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), ElementId::new(i)))
            .collect();
        let lattice = Lattice {
            name,
            names,
            lookup,
            up,
            down,
            join,
            meet,
            rank,
            upper_covers,
            lower_covers,
            complements: OnceLock::new(),
            modular_witness: OnceLock::new(),
            up_intervals: (0..n).map(|_| OnceLock::new()).collect(),
            down_intervals: (0..n).map(|_| OnceLock::new()).collect(),
        };
        Ok((lattice, perm))
    }

    /// Builds a lattice from element names and cover pairs `(lower, upper)`.
    ///
    /// The order is the reflexive-transitive closure of the pairs; pairs that
    /// are not true covers are accepted and reduced away.
    pub fn build(
        name: impl Into<String>,
        elements: &[&str],
        covers: &[(&str, &str)],
    ) -> Result<Lattice, LatticeError> {
        let spec = LatticeSpec {
            name: name.into(),
            elements: elements.iter().map(|s| s.to_string()).collect(),
            covers: covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        };
        Lattice::from_spec(&spec, usize::MAX)
    }

    /// Builds a lattice from a closed relation `leq(i, j)` on `names`.
    pub(crate) fn from_relation(
        name: String,
        names: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<(Lattice, Vec<usize>), LatticeError> {
        let n = names.len();
        let up = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                for j in 0..n {
                    if leq(i, j) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        Lattice::from_order(name, names, up)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Never true for a validated lattice; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.len() as u32).map(ElementId)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, x: ElementId) -> &str {
        &self.names[x.index()]
    }

    pub fn element(&self, name: &str) -> Option<ElementId> {
        self.lookup.get(name).copied()
    }

    pub fn id(&self, name: &str) -> Result<ElementId, LatticeError> {
        self.element(name)
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn bottom(&self) -> ElementId {
        ElementId(0)
    }

    pub fn top(&self) -> ElementId {
        ElementId::new(self.len() - 1)
    }

    pub fn rank(&self, x: ElementId) -> u32 {
        self.rank[x.index()]
    }

    /// Length of the longest chain, i.e. the rank of the top.
    pub fn height(&self) -> u32 {
        self.rank(self.top())
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a.index()].contains(b.index())
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a.index() * self.len() + b.index()]
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = ElementId>) -> ElementId {
        xs.into_iter()
            .fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = ElementId>) -> ElementId {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Every `y` with `x ≤ y`.
    pub fn up_set(&self, x: ElementId) -> &FixedBitSet {
        &self.up[x.index()]
    }

    /// Every `y` with `y ≤ x`.
    pub fn down_set(&self, x: ElementId) -> &FixedBitSet {
        &self.down[x.index()]
    }

    pub fn upper_covers(&self, x: ElementId) -> &[ElementId] {
        &self.upper_covers[x.index()]
    }

    pub fn lower_covers(&self, x: ElementId) -> &[ElementId] {
        &self.lower_covers[x.index()]
    }

    /// All cover pairs `(lower, upper)`, sorted by index.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out: Vec<_> = self
            .elements()
            .flat_map(|x| self.upper_covers(x).iter().map(move |&y| (x, y)))
            .collect();
        out.sort();
        out
    }

    pub fn cover_names(&self) -> Vec<(String, String)> {
        self.covers()
            .into_iter()
            .map(|(a, b)| (self.name_of(a).to_string(), self.name_of(b).to_string()))
            .collect()
    }

    pub fn atoms(&self) -> &[ElementId] {
        if self.len() == 1 {
            return &[];
        }
        self.upper_covers(self.bottom())
    }

    pub fn coatoms(&self) -> &[ElementId] {
        if self.len() == 1 {
            return &[];
        }
        self.lower_covers(self.top())
    }

    /// The first triple `(a, b, c)` with `a ≤ b` and
    /// `a ∨ (c ∧ b) ≠ (a ∨ c) ∧ b`, if any.
    pub fn modularity_witness(&self) -> Option<[ElementId; 3]> {
        *self.modular_witness.get_or_init(|| {
            for a in self.elements() {
                for b in self.up_set(a).ones().map(ElementId::new) {
                    if a == b {
                        continue;
                    }
                    for c in self.elements() {
                        if self.join(a, self.meet(c, b)) != self.meet(self.join(a, c), b) {
                            return Some([a, b, c]);
                        }
                    }
                }
            }
            None
        })
    }

    pub fn is_modular(&self) -> Verdict {
        match self.modularity_witness() {
            None => Verdict::pass("modular"),
            Some([a, b, c]) => Verdict::fail("modular")
                .with("a", self.name_of(a))
                .with("b", self.name_of(b))
                .with("c", self.name_of(c)),
        }
    }

    pub fn require_modular(&self) -> Result<(), LatticeError> {
        match self.modularity_witness() {
            None => Ok(()),
            Some([a, b, c]) => Err(LatticeError::NotModular(
                self.name_of(a).into(),
                self.name_of(b).into(),
                self.name_of(c).into(),
            )),
        }
    }

    pub fn distributivity_witness(&self) -> Option<[ElementId; 3]> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> Verdict {
        match self.distributivity_witness() {
            None => Verdict::pass("distributive"),
            Some([a, b, c]) => Verdict::fail("distributive")
                .with("a", self.name_of(a))
                .with("b", self.name_of(b))
                .with("c", self.name_of(c)),
        }
    }

    fn complement_table(&self) -> &[Vec<ElementId>] {
        self.complements.get_or_init(|| {
            let (bot, top) = (self.bottom(), self.top());
            self.elements()
                .map(|a| {
                    self.elements()
                        .filter(|&b| self.meet(a, b) == bot && self.join(a, b) == top)
                        .collect()
                })
                .collect()
        })
    }

    /// Every `b` with `a ∧ b = 0` and `a ∨ b = 1`, in canonical order.
    pub fn complements_of(&self, a: ElementId) -> &[ElementId] {
        &self.complement_table()[a.index()]
    }

    pub fn is_complemented(&self, a: ElementId) -> bool {
        !self.complements_of(a).is_empty()
    }

    /// The set C(L) of elements that have a complement.
    pub fn complemented_elements(&self) -> Vec<ElementId> {
        self.elements()
            .filter(|&a| self.is_complemented(a))
            .collect()
    }

    pub fn is_complemented_lattice(&self) -> bool {
        self.elements().all(|a| self.is_complemented(a))
    }

    /// Complemented and distributive, cross-checked against the criterion
    /// that every map `x ↦ a ∧ x` is a linear morphism.
    pub fn is_boolean(&self) -> Result<Verdict, LatticeError> {
        self.require_modular()?;
        let by_definition =
            self.is_complemented_lattice() && self.distributivity_witness().is_none();
        let mut failing_meet_map = None;
        for a in self.elements() {
            let map: Vec<ElementId> = self.elements().map(|x| self.meet(a, x)).collect();
            if crate::linmor::certify(self, self, &map).is_err() {
                failing_meet_map = Some(a);
                break;
            }
        }
        let by_meet_maps = failing_meet_map.is_none();
        let mut v = Verdict::new("boolean", by_definition)
            .with("definition", by_definition)
            .with("meet_maps", by_meet_maps);
        if let Some(a) = failing_meet_map {
            v = v.with("nonlinear_meet", self.name_of(a));
        }
        if by_definition != by_meet_maps {
            v = v.note("definition and meet-map criterion disagree");
        }
        Ok(v)
    }

    /// `a` essential (every nonzero `b` meets it nontrivially) or superfluous
    /// (`a ∨ b = 1` forces `b = 1`), optionally relative to an interval of
    /// this lattice, in which case its ends replace `0` and `1`.
    pub fn is_small(&self, a: ElementId, kind: Smallness, within: Option<&Interval>) -> bool {
        let (lo, hi) = match within {
            Some(iv) => (iv.lo(), iv.hi()),
            None => (self.bottom(), self.top()),
        };
        let scope = || {
            let mut s = self.up_set(lo).clone();
            s.intersect_with(self.down_set(hi));
            s.ones().map(ElementId::new).collect::<Vec<_>>().into_iter()
        };
        match kind {
            Smallness::Essential => scope().filter(|&b| b != lo).all(|b| self.meet(a, b) != lo),
            Smallness::Superfluous => scope().filter(|&b| b != hi).all(|b| self.join(a, b) != hi),
        }
    }

    pub fn is_essential(&self, a: ElementId) -> bool {
        self.is_small(a, Smallness::Essential, None)
    }

    pub fn is_superfluous(&self, a: ElementId) -> bool {
        self.is_small(a, Smallness::Superfluous, None)
    }

    /// `a` essential in `[0, c]`.
    pub fn is_essential_below(&self, a: ElementId, c: ElementId) -> bool {
        let lo = self.bottom();
        self.down_set(c)
            .ones()
            .map(ElementId::new)
            .filter(|&b| b != lo)
            .all(|b| self.meet(a, b) != lo)
    }

    /// (Soc, Rad): the join of the atoms and the meet of the coatoms.
    pub fn socle_radical(&self) -> (ElementId, ElementId) {
        (
            self.join_all(self.atoms().iter().copied()),
            self.meet_all(self.coatoms().iter().copied()),
        )
    }

    /// The interval `[lo, hi]` as a re-indexed lattice.
    pub fn interval(&self, lo: ElementId, hi: ElementId) -> Result<Interval, LatticeError> {
        Interval::new(self, lo, hi)
    }

    /// `[a, 1]`, cached.
    pub fn up_interval(&self, a: ElementId) -> Arc<Interval> {
        self.up_intervals[a.index()]
            .get_or_init(|| {
                Arc::new(Interval::new(self, a, self.top()).expect("a ≤ 1 always holds"))
            })
            .clone()
    }

    /// `[0, x]`, cached.
    pub fn down_interval(&self, x: ElementId) -> Arc<Interval> {
        self.down_intervals[x.index()]
            .get_or_init(|| {
                Arc::new(Interval::new(self, self.bottom(), x).expect("0 ≤ x always holds"))
            })
            .clone()
    }

    /// Sorted multiset of (rank, up-degree, down-degree); an isomorphism
    /// invariant used to prune searches.
    pub fn profile(&self) -> Vec<(u32, usize, usize)> {
        let mut p: Vec<_> = self.elements().map(|x| self.signature(x)).collect();
        p.sort_unstable();
        p
    }

    #[inline]
    pub fn signature(&self, x: ElementId) -> (u32, usize, usize) {
        (
            self.rank(x),
            self.upper_covers(x).len(),
            self.lower_covers(x).len(),
        )
    }

    /// The two-element lattice up to isomorphism.
    pub fn is_two(&self) -> bool {
        self.len() == 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn canonical_order_puts_bounds_at_the_ends() {
        let l = fixtures::excip();
        assert_eq!(l.name_of(l.bottom()), "0");
        assert_eq!(l.name_of(l.top()), "1");
        for x in l.elements() {
            assert!(l.leq(l.bottom(), x) && l.leq(x, l.top()));
        }
    }

    #[test]
    fn v_shape_is_rejected() {
        let err = Lattice::build("V", &["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap_err();
        assert!(matches!(err, LatticeError::NotALattice(_, _, "join")));
    }

    #[test]
    fn cycles_and_unknowns_are_rejected() {
        let err = Lattice::build("cyc", &["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, LatticeError::NotAPoset(_, _)));
        let err = Lattice::build("u", &["a"], &[("a", "z")]).unwrap_err();
        assert_eq!(err, LatticeError::UnknownElement("z".into()));
        assert_eq!(
            Lattice::build("e", &[], &[]).unwrap_err(),
            LatticeError::Empty
        );
        let err = Lattice::build("d", &["a", "a"], &[]).unwrap_err();
        assert_eq!(err, LatticeError::DuplicateName("a".into()));
    }

    #[test]
    fn order_queries() {
        let c3 = fixtures::c3();
        let n = c3.id("n").unwrap();
        assert_eq!(c3.join(n, c3.top()), c3.top());
        let m3 = fixtures::m3();
        let (a, b) = (m3.id("a").unwrap(), m3.id("b").unwrap());
        assert_eq!(m3.join(a, b), m3.top());
        assert_eq!(m3.meet(a, b), m3.bottom());
        let ex = fixtures::excip();
        assert_eq!(
            ex.join(ex.id("k").unwrap(), ex.id("f").unwrap()),
            ex.id("c").unwrap()
        );
    }

    #[test]
    fn modularity() {
        assert!(!fixtures::n5().is_modular().holds);
        assert!(fixtures::n5().is_modular().witness.is_some());
        assert!(fixtures::m3().is_modular().holds);
        assert!(fixtures::excip().is_modular().holds);
    }

    #[test]
    fn boolean_lattices() {
        assert!(fixtures::b2().is_boolean().unwrap().holds);
        assert!(!fixtures::m3().is_boolean().unwrap().holds);
        assert!(!fixtures::c3().is_boolean().unwrap().holds);
        assert!(matches!(
            fixtures::n5().is_boolean(),
            Err(LatticeError::NotModular(..))
        ));
    }

    #[test]
    fn complements() {
        let c3 = fixtures::c3();
        assert!(c3.complements_of(c3.id("n").unwrap()).is_empty());
        let ex = fixtures::excip();
        let names: Vec<&str> = ex
            .complemented_elements()
            .into_iter()
            .map(|x| ex.name_of(x))
            .collect();
        assert_eq!(names, ["0", "a", "b", "1"]);
        let m3 = fixtures::m3();
        let comps: Vec<&str> = m3
            .complements_of(m3.id("a").unwrap())
            .iter()
            .map(|&x| m3.name_of(x))
            .collect();
        assert_eq!(comps, ["b", "c"]);
    }

    #[test]
    fn essential_and_superfluous() {
        let c3 = fixtures::c3();
        let n = c3.id("n").unwrap();
        assert!(c3.is_essential(n));
        assert!(c3.is_superfluous(n));
        let b2 = fixtures::b2();
        assert!(!b2.is_essential(b2.id("a").unwrap()));
        let ex = fixtures::excip();
        let iv = ex.interval(ex.bottom(), ex.id("a").unwrap()).unwrap();
        assert!(ex.is_small(ex.id("k").unwrap(), Smallness::Essential, Some(&iv)));
        assert!(ex.is_essential_below(ex.id("k").unwrap(), ex.id("a").unwrap()));
    }

    #[test]
    fn socle_and_radical() {
        let c3 = fixtures::c3();
        let n = c3.id("n").unwrap();
        assert_eq!(c3.socle_radical(), (n, n));
        let b2 = fixtures::b2();
        assert_eq!(b2.socle_radical(), (b2.top(), b2.bottom()));
        let ex = fixtures::excip();
        let c = ex.id("c").unwrap();
        assert_eq!(ex.socle_radical(), (c, c));
    }
}
