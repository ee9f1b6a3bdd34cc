//! Submonoids of `End_lin(L)` that contain the identity and the zero map.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::MonoidError;
use crate::lattice::{ElementId, Lattice};
use crate::limits::Limits;
use crate::linmor::{self, same_lattice, LinearMorphism, MorphismSpec};
use crate::verdict::{Verdict, WitnessValue};

/// How to build a monoid over a given lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MonoidSpec {
    Full,
    Generated {
        generators: Vec<MorphismSpec>,
        #[serde(default)]
        with_projections: bool,
    },
    Explicit {
        members: Vec<MorphismSpec>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Right,
    Left,
}

/// The annihilator of a set of members on one side.
///
/// Right: `{ψ : φ ∘ ψ = 0 for all targets φ}`; left: `{ψ : ψ ∘ φ = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorSet {
    pub side: Side,
    pub targets: Vec<usize>,
    pub members: Vec<usize>,
    /// The first idempotent `ε` with `members = ε𝔪` (right) or `𝔪ε` (left).
    pub principal_idempotent: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonoidProperty {
    RightRickart,
    LeftRickart,
    RightBaer,
    LeftBaer,
}

impl MonoidProperty {
    pub const ALL: [MonoidProperty; 4] = [
        MonoidProperty::RightRickart,
        MonoidProperty::LeftRickart,
        MonoidProperty::RightBaer,
        MonoidProperty::LeftBaer,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MonoidProperty::RightRickart => "right_rickart",
            MonoidProperty::LeftRickart => "left_rickart",
            MonoidProperty::RightBaer => "right_baer",
            MonoidProperty::LeftBaer => "left_baer",
        }
    }

    fn side(self) -> Side {
        match self {
            MonoidProperty::RightRickart | MonoidProperty::RightBaer => Side::Right,
            MonoidProperty::LeftRickart | MonoidProperty::LeftBaer => Side::Left,
        }
    }
}

/// A composition-closed set of linear endomorphisms, sorted by map table.
#[derive(Debug)]
pub struct EndoMonoid {
    lattice: Arc<Lattice>,
    members: Vec<LinearMorphism>,
    zero: usize,
    identity: usize,
    has_all_projections: bool,
    description: String,
    comp: OnceLock<Vec<u32>>,
    idempotents: OnceLock<Vec<usize>>,
    principal: [OnceLock<HashMap<FixedBitSet, usize>>; 2],
}

impl EndoMonoid {
    fn assemble(
        lattice: Arc<Lattice>,
        mut members: Vec<LinearMorphism>,
        description: String,
    ) -> Result<EndoMonoid, MonoidError> {
        members.sort_by(|f, g| f.map().cmp(g.map()));
        members.dedup_by(|f, g| f.map() == g.map());
        let find = |m: &LinearMorphism| members.binary_search_by(|f| f.map().cmp(m.map())).ok();
        let zero = find(&LinearMorphism::zero(&lattice, &lattice))
            .ok_or_else(|| MonoidError::NotClosed("the zero map is missing".into()))?;
        let identity = find(&LinearMorphism::identity(&lattice))
            .ok_or_else(|| MonoidError::NotClosed("the identity is missing".into()))?;
        let has_all_projections = if lattice.modularity_witness().is_none() {
            linmor::all_projections(&lattice)?
                .iter()
                .all(|p| find(p).is_some())
        } else {
            false
        };
        Ok(EndoMonoid {
            lattice,
            members,
            zero,
            identity,
            has_all_projections,
            description,
            comp: OnceLock::new(),
            idempotents: OnceLock::new(),
            principal: [OnceLock::new(), OnceLock::new()],
        })
    }

    fn check_endo(l: &Arc<Lattice>, f: &LinearMorphism) -> Result<(), MonoidError> {
        if same_lattice(f.domain(), l) && same_lattice(f.codomain(), l) {
            Ok(())
        } else {
            Err(MonoidError::NotAnEndomorphism(l.name().into()))
        }
    }

    /// `End_lin(L)`.
    pub fn full(l: &Arc<Lattice>, limits: &Limits) -> Result<EndoMonoid, MonoidError> {
        let members = linmor::enumerate_linmors(l, l, limits)?;
        if members.len() > limits.max_monoid {
            return Err(MonoidError::SizeLimitExceeded {
                size: members.len(),
                limit: limits.max_monoid,
            });
        }
        EndoMonoid::assemble(l.clone(), members, "full".into())
    }

    /// Closure of the generators, the identity, the zero map and optionally
    /// every projection under composition.
    pub fn generated(
        l: &Arc<Lattice>,
        generators: &[LinearMorphism],
        with_projections: bool,
        limits: &Limits,
    ) -> Result<EndoMonoid, MonoidError> {
        let mut seed = vec![LinearMorphism::identity(l), LinearMorphism::zero(l, l)];
        for g in generators {
            EndoMonoid::check_endo(l, g)?;
            seed.push(g.clone());
        }
        if with_projections {
            seed.extend(linmor::all_projections(l)?);
        }
        let mut seen: HashSet<Vec<ElementId>> = HashSet::new();
        let mut members: Vec<LinearMorphism> = Vec::new();
        let mut queue: VecDeque<LinearMorphism> = VecDeque::new();
        for f in seed {
            if seen.insert(f.map().to_vec()) {
                queue.push_back(f);
            }
        }
        while let Some(f) = queue.pop_front() {
            members.push(f.clone());
            if members.len() > limits.max_monoid {
                return Err(MonoidError::SizeLimitExceeded {
                    size: members.len(),
                    limit: limits.max_monoid,
                });
            }
            let mut fresh = Vec::new();
            for g in &members {
                for h in [f.compose(g)?, g.compose(&f)?] {
                    if seen.insert(h.map().to_vec()) {
                        fresh.push(h);
                    }
                }
            }
            queue.extend(fresh);
        }
        let description = format!(
            "generated({}{})",
            generators.len(),
            if with_projections {
                ", projections"
            } else {
                ""
            }
        );
        EndoMonoid::assemble(l.clone(), members, description)
    }

    /// An explicit member set, which must already be a monoid with zero.
    pub fn explicit(
        l: &Arc<Lattice>,
        members: Vec<LinearMorphism>,
    ) -> Result<EndoMonoid, MonoidError> {
        for f in &members {
            EndoMonoid::check_endo(l, f)?;
        }
        let n = members.len();
        let m = EndoMonoid::assemble(l.clone(), members, format!("explicit({n})"))?;
        m.verify_closed()?;
        Ok(m)
    }

    /// Members known to form a monoid; closure is verified only when
    /// `verify` is set.
    pub(crate) fn from_closed(
        l: &Arc<Lattice>,
        members: Vec<LinearMorphism>,
        description: String,
        verify: bool,
    ) -> Result<EndoMonoid, MonoidError> {
        let m = EndoMonoid::assemble(l.clone(), members, description)?;
        if verify {
            m.verify_closed()?;
        }
        Ok(m)
    }

    fn verify_closed(&self) -> Result<(), MonoidError> {
        for f in &self.members {
            for g in &self.members {
                let h = f.compose(g)?;
                if self.index_of(h.map()).is_none() {
                    return Err(MonoidError::NotClosed(format!(
                        "{:?} ∘ {:?} is missing",
                        f.table(),
                        g.table()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn from_spec(
        l: &Arc<Lattice>,
        spec: &MonoidSpec,
        limits: &Limits,
    ) -> Result<EndoMonoid, MonoidError> {
        let load = |specs: &[MorphismSpec]| -> Result<Vec<LinearMorphism>, MonoidError> {
            specs
                .iter()
                .map(|s| LinearMorphism::from_spec(s, l, l).map_err(MonoidError::from))
                .collect()
        };
        match spec {
            MonoidSpec::Full => EndoMonoid::full(l, limits),
            MonoidSpec::Generated {
                generators,
                with_projections,
            } => EndoMonoid::generated(l, &load(generators)?, *with_projections, limits),
            MonoidSpec::Explicit { members } => EndoMonoid::explicit(l, load(members)?),
        }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Never true: the identity is always a member.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[LinearMorphism] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &LinearMorphism {
        &self.members[i]
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn has_all_projections(&self) -> bool {
        self.has_all_projections
    }

    pub fn require_projections(&self) -> Result<(), MonoidError> {
        if self.has_all_projections {
            Ok(())
        } else {
            Err(MonoidError::MissingProjections)
        }
    }

    pub fn index_of(&self, map: &[ElementId]) -> Option<usize> {
        self.members.binary_search_by(|f| f.map().cmp(map)).ok()
    }

    pub fn contains_map(&self, map: &[ElementId]) -> bool {
        self.index_of(map).is_some()
    }

    fn compose_direct(&self, i: usize, j: usize) -> usize {
        let (f, g) = (&self.members[i], &self.members[j]);
        let map: Vec<ElementId> = g.map().iter().map(|&y| f.apply(y)).collect();
        self.index_of(&map).expect("monoid is closed")
    }

    /// Row-major table of `members[i] ∘ members[j]`, built on first use.
    pub fn composition_table(&self) -> &[u32] {
        self.comp.get_or_init(|| {
            let n = self.len();
            (0..n * n)
                .into_par_iter()
                .map(|ij| self.compose_direct(ij / n, ij % n) as u32)
                .collect()
        })
    }

    /// Index of `members[i] ∘ members[j]`.
    #[inline]
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.composition_table()[i * self.len() + j] as usize
    }

    pub fn idempotents(&self) -> &[usize] {
        self.idempotents.get_or_init(|| {
            (0..self.len())
                .filter(|&i| self.members[i].is_idempotent())
                .collect()
        })
    }

    /// `{x : φ(x) ≤ x for all members φ}`.
    pub fn fully_invariant_elements(&self) -> Vec<ElementId> {
        linmor::fully_invariant_elements(&self.lattice, &self.members)
    }

    fn annihilator_bits(&self, side: Side, target: usize) -> FixedBitSet {
        let n = self.len();
        let mut bits = FixedBitSet::with_capacity(n);
        for psi in 0..n {
            let c = match side {
                Side::Right => self.compose(target, psi),
                Side::Left => self.compose(psi, target),
            };
            if c == self.zero {
                bits.insert(psi);
            }
        }
        bits
    }

    /// `ε𝔪 = {ψ : ε ∘ ψ = ψ}` (right) or `𝔪ε = {ψ : ψ ∘ ε = ψ}` (left).
    pub fn principal_bits(&self, side: Side, eps: usize) -> FixedBitSet {
        let n = self.len();
        let mut bits = FixedBitSet::with_capacity(n);
        for psi in 0..n {
            let c = match side {
                Side::Right => self.compose(eps, psi),
                Side::Left => self.compose(psi, eps),
            };
            if c == psi {
                bits.insert(psi);
            }
        }
        bits
    }

    /// Principal one-sided ideals keyed by member set, first idempotent kept.
    fn principal_lookup(&self, side: Side) -> &HashMap<FixedBitSet, usize> {
        let slot = match side {
            Side::Right => &self.principal[0],
            Side::Left => &self.principal[1],
        };
        slot.get_or_init(|| {
            let mut out = HashMap::new();
            for &e in self.idempotents() {
                out.entry(self.principal_bits(side, e)).or_insert(e);
            }
            out
        })
    }

    /// The first idempotent `ε` with `ε𝔪` (right) or `𝔪ε` (left) equal to
    /// the given member set.
    pub fn principal_idempotent(&self, side: Side, members: &FixedBitSet) -> Option<usize> {
        self.principal_lookup(side).get(members).copied()
    }

    pub fn annihilator(&self, side: Side, targets: &[usize]) -> AnnihilatorSet {
        let n = self.len();
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        for &t in targets {
            bits.intersect_with(&self.annihilator_bits(side, t));
        }
        let principal_idempotent = self.principal_idempotent(side, &bits);
        AnnihilatorSet {
            side,
            targets: targets.to_vec(),
            members: bits.ones().collect(),
            principal_idempotent,
        }
    }

    pub fn right_annihilator(&self, targets: &[usize]) -> AnnihilatorSet {
        self.annihilator(Side::Right, targets)
    }

    pub fn left_annihilator(&self, targets: &[usize]) -> AnnihilatorSet {
        self.annihilator(Side::Left, targets)
    }

    /// Right/left Rickart quantify single members; Baer quantifies every
    /// subset through the intersection closure of single annihilators.
    pub fn check(&self, property: MonoidProperty) -> Verdict {
        let side = property.side();
        let principal = self.principal_lookup(side);
        let singles: Vec<FixedBitSet> = (0..self.len())
            .map(|i| self.annihilator_bits(side, i))
            .collect();
        let fail = |subset: Vec<usize>| {
            let tables: Vec<String> = subset
                .iter()
                .map(|&i| format!("{:?}", self.members[i]))
                .collect();
            Verdict::fail(property.id())
                .with("subset", WitnessValue::Indices(subset))
                .with("morphisms", tables)
        };
        match property {
            MonoidProperty::RightRickart | MonoidProperty::LeftRickart => {
                for (i, s) in singles.iter().enumerate() {
                    if !principal.contains_key(s) {
                        return fail(vec![i]);
                    }
                }
                Verdict::pass(property.id())
            }
            MonoidProperty::RightBaer | MonoidProperty::LeftBaer => {
                // Closure under intersection, keeping a generating subset
                // for every set reached. The empty subset gives everything.
                let mut full = FixedBitSet::with_capacity(self.len());
                full.insert_range(..);
                let mut reached: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
                let mut queue = VecDeque::new();
                reached.insert(full.clone(), Vec::new());
                queue.push_back(full);
                while let Some(set) = queue.pop_front() {
                    let gens = reached[&set].clone();
                    if !principal.contains_key(&set) {
                        return fail(gens);
                    }
                    for (i, s) in singles.iter().enumerate() {
                        let mut next = set.clone();
                        next.intersect_with(s);
                        if !reached.contains_key(&next) {
                            let mut g = gens.clone();
                            g.push(i);
                            reached.insert(next.clone(), g);
                            queue.push_back(next);
                        }
                    }
                }
                Verdict::pass(property.id())
                    .note(format!("{} distinct annihilators", reached.len()))
            }
        }
    }

    /// Kernels of every member, in member order.
    pub fn kernels(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.iter().map(|f| f.kernel())
    }

    /// `φ(1)` of every member, in member order.
    pub fn images(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.iter().map(|f| f.image_top())
    }
}
