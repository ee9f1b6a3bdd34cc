//! Finite abelian groups as Z-modules: subgroup lattices, endomorphism
//! rings and the induced monoid `𝔈_M = {f_* : f ∈ End(M)}` on `Λ(M)`, where
//! `f_*(H) = f(H)`.

mod group;

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{GroupError, MonoidError};
use crate::lattice::{ElementId, Lattice};
use crate::limits::Limits;
use crate::linmor::LinearMorphism;
use crate::monoid::EndoMonoid;
use crate::properties::{check_rickart_family, RickartKind};
use crate::verdict::Verdict;

pub use group::{AbelianGroup, GroupHom, MASK_ORDER};

/// Subgroups of `M` as element masks, indexed by lattice element.
#[derive(Debug)]
pub struct SubgroupLattice {
    lattice: Arc<Lattice>,
    masks: Vec<u64>,
    index: HashMap<u64, ElementId>,
}

impl SubgroupLattice {
    /// Subgroups are reached from `0` by adjoining one element at a time;
    /// each is named by the generators used to first reach it.
    pub fn new(group: &AbelianGroup, limits: &Limits) -> Result<SubgroupLattice, GroupError> {
        let order = group.order();
        let full: u64 = if order == 64 {
            u64::MAX
        } else {
            (1u64 << order) - 1
        };
        let multiples = |x: usize| {
            let mut out = vec![0usize];
            let mut m = x;
            while m != 0 {
                out.push(m);
                m = group.add(m, x);
            }
            out
        };
        let mut found: HashMap<u64, usize> = HashMap::new();
        let mut subgroups: Vec<(u64, Vec<usize>)> = vec![(1, Vec::new())];
        found.insert(1, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (h, gens) = subgroups[i].clone();
            for x in 0..order {
                if h >> x & 1 == 1 {
                    continue;
                }
                let mut next = 0u64;
                for m in multiples(x) {
                    for y in bits(h) {
                        next |= 1 << group.add(y, m);
                    }
                }
                if found.contains_key(&next) {
                    continue;
                }
                if subgroups.len() >= limits.max_subgroups {
                    return Err(GroupError::SizeLimitExceeded {
                        what: "subgroup count",
                        size: subgroups.len() as u128 + 1,
                        limit: limits.max_subgroups as u128,
                    });
                }
                let mut g = gens.clone();
                g.push(x);
                found.insert(next, subgroups.len());
                queue.push_back(subgroups.len());
                subgroups.push((next, g));
            }
        }
        let names: Vec<String> = subgroups
            .iter()
            .map(|(mask, gens)| {
                if *mask == 1 {
                    "0".to_string()
                } else if *mask == full {
                    "M".to_string()
                } else {
                    let parts: Vec<String> = gens.iter().map(|&g| group.element_name(g)).collect();
                    format!("<{}>", parts.join(","))
                }
            })
            .collect();
        let (lattice, perm) = Lattice::from_relation(format!("Λ({group})"), names, |i, j| {
            subgroups[i].0 & !subgroups[j].0 == 0
        })?;
        let masks: Vec<u64> = perm.iter().map(|&old| subgroups[old].0).collect();
        let index = masks
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, ElementId::new(i)))
            .collect();
        Ok(SubgroupLattice {
            lattice: Arc::new(lattice),
            masks,
            index,
        })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn mask(&self, x: ElementId) -> u64 {
        self.masks[x.index()]
    }

    pub fn element(&self, mask: u64) -> Option<ElementId> {
        self.index.get(&mask).copied()
    }

    pub fn name(&self, mask: u64) -> &str {
        let x = self.element(mask).expect("mask is a subgroup");
        self.lattice.name_of(x)
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

/// Kernel and image masks of an endomorphism given by its value table.
fn kernel_image(values: &[u8]) -> (u64, u64) {
    let mut kernel = 0u64;
    let mut image = 0u64;
    for (g, &v) in values.iter().enumerate() {
        if v == 0 {
            kernel |= 1 << g;
        }
        image |= 1 << v;
    }
    (kernel, image)
}

/// Distinct kernels and images over all of `End(M)`, each with the index
/// of the first endomorphism producing it, in increasing index order.
#[derive(Debug)]
struct ModuleScan {
    kernels: Vec<(u64, u64)>,
    images: Vec<(u64, u64)>,
}

type FirstSeen = HashMap<u64, u64>;

fn merge_first(mut a: FirstSeen, b: FirstSeen) -> FirstSeen {
    for (k, i) in b {
        a.entry(k).and_modify(|j| *j = (*j).min(i)).or_insert(i);
    }
    a
}

fn sorted_by_index(seen: FirstSeen) -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> = seen.into_iter().collect();
    v.sort_by_key(|&(mask, i)| (i, mask));
    v
}

/// The module, its subgroup lattice and the induced monoid, with the
/// module-side and lattice-side Rickart family verdicts.
#[derive(Debug)]
pub struct ModuleBridge {
    group: AbelianGroup,
    subgroups: SubgroupLattice,
    limits: Limits,
    scan: OnceLock<Result<ModuleScan, GroupError>>,
    monoid: OnceLock<Result<Arc<EndoMonoid>, GroupError>>,
    summands: OnceLock<HashMap<u64, bool>>,
}

impl ModuleBridge {
    pub fn new(group: AbelianGroup, limits: &Limits) -> Result<ModuleBridge, GroupError> {
        let subgroups = SubgroupLattice::new(&group, limits)?;
        Ok(ModuleBridge {
            group,
            subgroups,
            limits: limits.clone(),
            scan: OnceLock::new(),
            monoid: OnceLock::new(),
            summands: OnceLock::new(),
        })
    }

    pub fn parse(text: &str, limits: &Limits) -> Result<ModuleBridge, GroupError> {
        ModuleBridge::new(AbelianGroup::parse(text, limits)?, limits)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn subgroups(&self) -> &SubgroupLattice {
        &self.subgroups
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        self.subgroups.lattice()
    }

    /// `f_*`, sending each subgroup to its image.
    pub fn induced(&self, f: &GroupHom) -> Result<LinearMorphism, GroupError> {
        let values = f.apply_all(&self.group);
        let map = self.induced_map(&values);
        let l = self.lattice();
        LinearMorphism::new(l.clone(), l.clone(), map)
            .map_err(|e| GroupError::Monoid(MonoidError::Morphism(e)))
    }

    fn induced_map(&self, values: &[u8]) -> Vec<ElementId> {
        self.subgroups
            .masks
            .iter()
            .map(|&h| {
                let image = bits(h).fold(0u64, |acc, g| acc | 1 << values[g]);
                self.subgroups
                    .element(image)
                    .expect("images of subgroups are subgroups")
            })
            .collect()
    }

    /// `Ker f` as an element of `Λ(M)`.
    pub fn kernel_element(&self, f: &GroupHom) -> ElementId {
        let (kernel, _) = kernel_image(&f.apply_all(&self.group));
        self.subgroups
            .element(kernel)
            .expect("kernels are subgroups")
    }

    /// `𝔈_M`. Closure is automatic since `(f ∘ g)_* = f_* ∘ g_*`; it is
    /// re-verified when the monoid is small.
    pub fn induced_monoid(&self) -> Result<Arc<EndoMonoid>, GroupError> {
        self.monoid
            .get_or_init(|| {
                let l = self.lattice();
                let mut seen = HashSet::new();
                let mut members = Vec::new();
                for f in self.group.endomorphisms(&self.limits)? {
                    let map = self.induced_map(&f.apply_all(&self.group));
                    if seen.insert(map.clone()) {
                        let phi = LinearMorphism::new(l.clone(), l.clone(), map)
                            .map_err(|e| GroupError::Monoid(MonoidError::Morphism(e)))?;
                        members.push(phi);
                    }
                }
                let verify = members.len() <= 256;
                let m = EndoMonoid::from_closed(l, members, format!("𝔈({})", self.group), verify)?;
                Ok(Arc::new(m))
            })
            .clone()
    }

    fn scan(&self) -> Result<&ModuleScan, GroupError> {
        self.scan
            .get_or_init(|| {
                let count = self.group.endomorphism_count();
                if count > self.limits.max_module_scan {
                    return Err(GroupError::SizeLimitExceeded {
                        what: "endomorphism ring size",
                        size: count,
                        limit: self.limits.max_module_scan,
                    });
                }
                let candidates = self.group.column_candidates();
                let k = candidates.len();
                let (kernels, images) = (0..count as u64)
                    .into_par_iter()
                    .fold(
                        || (FirstSeen::new(), FirstSeen::new(), vec![0usize; k]),
                        |(mut ks, mut is, mut columns), i| {
                            group::decode_columns(&candidates, i as u128, &mut columns);
                            let (kernel, image) = kernel_image(&self.group.evaluate(&columns));
                            ks.entry(kernel).or_insert(i);
                            is.entry(image).or_insert(i);
                            (ks, is, columns)
                        },
                    )
                    .map(|(ks, is, _)| (ks, is))
                    .reduce(
                        || (FirstSeen::new(), FirstSeen::new()),
                        |(a, b), (c, d)| (merge_first(a, c), merge_first(b, d)),
                    );
                Ok(ModuleScan {
                    kernels: sorted_by_index(kernels),
                    images: sorted_by_index(images),
                })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `H` is a direct summand: some subgroup `K` has `H ∩ K = 0` and
    /// `|H| |K| = |M|`, hence `H + K = M`.
    pub fn is_summand(&self, h: u64) -> bool {
        let table = self.summands.get_or_init(|| {
            let order = self.group.order() as u32;
            let masks = &self.subgroups.masks;
            masks
                .iter()
                .map(|&a| {
                    let ok = masks
                        .iter()
                        .any(|&b| a & b == 1 && a.count_ones() * b.count_ones() == order);
                    (a, ok)
                })
                .collect()
        });
        table[&h]
    }

    fn sum(&self, a: u64, b: u64) -> u64 {
        let mut out = 0u64;
        for x in bits(a) {
            for y in bits(b) {
                out |= 1 << self.group.add(x, y);
            }
        }
        out
    }

    fn endo_description(&self, index: u64) -> String {
        let candidates = self.group.column_candidates();
        let mut columns = vec![0usize; candidates.len()];
        group::decode_columns(&candidates, index as u128, &mut columns);
        let f =
            GroupHom::from_columns(&self.group, columns).expect("decoded columns are admissible");
        f.describe(&self.group)
    }

    /// The module-side answer: kernels (images) of endomorphisms, and
    /// intersections (sums) of families of them, tested for being direct
    /// summands by searching for a complementary subgroup.
    pub fn module_verdict(&self, kind: RickartKind) -> Result<Verdict, GroupError> {
        let scan = self.scan()?;
        let dual = matches!(kind, RickartKind::DualRickart | RickartKind::DualBaer);
        let values = if dual { &scan.images } else { &scan.kernels };
        let key = if dual { "image" } else { "kernel" };
        match kind {
            RickartKind::Rickart | RickartKind::DualRickart => {
                for &(mask, i) in values {
                    if !self.is_summand(mask) {
                        return Ok(Verdict::fail(kind.id())
                            .with(key, self.subgroups.name(mask))
                            .with("endomorphism", self.endo_description(i)));
                    }
                }
                Ok(Verdict::pass(kind.id()))
            }
            RickartKind::Baer | RickartKind::DualBaer => {
                let order = self.group.order();
                let start = if dual {
                    1u64
                } else if order == 64 {
                    u64::MAX
                } else {
                    (1u64 << order) - 1
                };
                let mut reached = HashSet::from([start]);
                let mut queue = VecDeque::from([start]);
                while let Some(h) = queue.pop_front() {
                    if !self.is_summand(h) {
                        let key = if dual {
                            "image_sum"
                        } else {
                            "kernel_intersection"
                        };
                        return Ok(Verdict::fail(kind.id()).with(key, self.subgroups.name(h)));
                    }
                    for &(v, _) in values {
                        let next = if dual { self.sum(h, v) } else { h & v };
                        if reached.insert(next) {
                            queue.push_back(next);
                        }
                    }
                }
                Ok(Verdict::pass(kind.id()))
            }
        }
    }

    /// The lattice-side answer over `(Λ(M), 𝔈_M)`.
    ///
    /// When `End(M)` is too large to materialize but `Λ(M)` is a
    /// complemented lattice, every element is complemented and all four
    /// conditions hold for any monoid, so the verdict is returned directly.
    pub fn lattice_verdict(&self, kind: RickartKind) -> Result<Verdict, GroupError> {
        let count = self.group.endomorphism_count();
        if count > self.limits.max_group_endos && self.lattice().is_complemented_lattice() {
            return Ok(Verdict::pass(kind.id())
                .note("complemented subgroup lattice; induced monoid not materialized"));
        }
        let m = self.induced_monoid()?;
        Ok(check_rickart_family(&m, kind))
    }

    /// Both sides, which must agree; the module-side witness is returned.
    pub fn rickart_module_direct(&self, kind: RickartKind) -> Result<Verdict, GroupError> {
        let module = self.module_verdict(kind)?;
        let lattice = self.lattice_verdict(kind)?;
        if module.holds != lattice.holds {
            return Err(GroupError::Disagreement {
                property: kind.id().to_string(),
                module: module.holds,
                lattice: lattice.holds,
            });
        }
        Ok(module.with("lattice_side", lattice.holds))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linmor;

    fn bridge(text: &str) -> ModuleBridge {
        ModuleBridge::parse(text, &Limits::default()).unwrap()
    }

    #[test]
    fn z4_is_a_three_chain() {
        let b = bridge("4");
        let l = b.lattice();
        assert_eq!(l.names(), ["0", "<2>", "M"]);
        assert_eq!(l.cover_names().len(), 2);
        assert!(l.is_modular().holds);
    }

    #[test]
    fn klein_group_is_a_diamond() {
        let b = bridge("2,2");
        let l = b.lattice();
        assert_eq!(l.len(), 5);
        assert_eq!(l.atoms().len(), 3);
        assert!(linmor::interval_isos(l, &fixtures::m3()).len() == 6);
    }

    #[test]
    fn small_cases() {
        assert_eq!(bridge("2").lattice().len(), 2);
        let trivial = bridge("1");
        assert_eq!(trivial.lattice().len(), 1);
        let m = trivial.induced_monoid().unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn z4_induced_monoid_has_three_members() {
        let b = bridge("4");
        let m = b.induced_monoid().unwrap();
        assert_eq!(m.len(), 3);
        let times_two = GroupHom::from_columns(b.group(), vec![2]).unwrap();
        let f = b.induced(&times_two).unwrap();
        let table = f.table();
        assert_eq!(table.get("0"), Some("0"));
        assert_eq!(table.get("<2>"), Some("0"));
        assert_eq!(table.get("M"), Some("<2>"));
        assert_eq!(b.kernel_element(&times_two), f.kernel());
    }

    #[test]
    fn klein_group_identity_from_all_automorphisms() {
        let b = bridge("2,2");
        let l = b.lattice();
        let ends = b.group().endomorphisms(&Limits::default()).unwrap();
        let autos: Vec<_> = ends
            .iter()
            .filter(|f| {
                let vals = f.apply_all(b.group());
                vals.iter().collect::<std::collections::HashSet<_>>().len() == vals.len()
            })
            .map(|f| b.induced(f).unwrap())
            .collect();
        assert_eq!(autos.len(), 6);
        assert_eq!(autos.iter().filter(|g| g.is_identity()).count(), 1);
        let distinct: std::collections::HashSet<_> =
            autos.iter().map(|g| g.map().to_vec()).collect();
        assert_eq!(distinct.len(), 6);
        let m = b.induced_monoid().unwrap();
        assert!(m.has_all_projections());
        assert_eq!(m.lattice().len(), l.len());
    }

    #[test]
    fn induced_maps_respect_composition_and_kernels() {
        for text in ["4", "2,2", "2,4", "6"] {
            let b = bridge(text);
            let g = b.group();
            let ends = g.endomorphisms(&Limits::default()).unwrap();
            for f in &ends {
                let fv = f.apply_all(g);
                let fs = b.induced(f).unwrap();
                assert_eq!(fs.kernel(), b.kernel_element(f));
                for h in &ends {
                    let hv = h.apply_all(g);
                    let columns: Vec<usize> = (0..g.factors().len())
                        .map(|i| fv[hv[g.unit(i)] as usize] as usize)
                        .collect();
                    let composite = GroupHom::from_columns(g, columns).unwrap();
                    let lhs = b.induced(&composite).unwrap();
                    let rhs = fs.compose(&b.induced(h).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn induced_monoid_contains_projections() {
        for text in ["2,2", "2,4", "6", "3,3"] {
            let m = bridge(text).induced_monoid().unwrap();
            assert!(m.has_all_projections(), "{text}");
        }
    }

    #[test]
    fn module_and_lattice_sides_agree() {
        let z4 = bridge("4");
        for kind in RickartKind::ALL {
            assert!(!z4.rickart_module_direct(kind).unwrap().holds);
        }
        let v = z4.rickart_module_direct(RickartKind::Rickart).unwrap();
        assert_eq!(v.witness_element("kernel"), Some("<2>"));
        for text in ["2", "2,2", "6", "2,2,2"] {
            let b = bridge(text);
            for kind in RickartKind::ALL {
                assert!(
                    b.rickart_module_direct(kind).unwrap().holds,
                    "{text} {}",
                    kind.id()
                );
            }
        }
    }

    #[test]
    fn summand_test() {
        let b = bridge("2,4");
        let s = b.subgroups();
        let l = b.lattice();
        for x in l.elements() {
            assert_eq!(
                b.is_summand(s.mask(x)),
                l.is_complemented(x),
                "{}",
                l.name_of(x)
            );
        }
    }
}
