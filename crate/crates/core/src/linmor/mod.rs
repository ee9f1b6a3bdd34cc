//! Linear morphisms between finite modular lattices.
//!
//! A map `φ: L → M` is linear when some `k ∈ L` satisfies `φ(x) = φ(x ∨ k)`
//! for all `x` and `φ` restricts to an isomorphism `[k, 1] → [0, φ(1)]`.
//! The element `k` is then the greatest element sent to `0`.

mod enumerate;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::MorphismError;
use crate::lattice::{ElementId, Interval, Lattice};
use crate::verdict::OrderedTable;

pub use enumerate::{enumerate_interval_isos, enumerate_linmors, interval_isos, IntervalIso};

/// Checks both clauses of the definition and returns `(kernel, image_top)`.
pub(crate) fn certify(
    domain: &Lattice,
    codomain: &Lattice,
    map: &[ElementId],
) -> Result<(ElementId, ElementId), MorphismError> {
    if map.len() != domain.len() {
        return Err(MorphismError::NotTotal {
            expected: domain.len(),
            got: map.len(),
        });
    }
    if let Some(x) = domain
        .elements()
        .find(|x| map[x.index()].index() >= codomain.len())
    {
        return Err(MorphismError::OutOfRange(domain.name_of(x).into()));
    }
    let zero = codomain.bottom();
    let kernel = domain.join_all(domain.elements().filter(|x| map[x.index()] == zero));
    for x in domain.elements() {
        if map[x.index()] != map[domain.join(x, kernel).index()] {
            return Err(MorphismError::NoKernel {
                x: domain.name_of(x).into(),
                kernel: domain.name_of(kernel).into(),
            });
        }
    }
    let image_top = map[domain.top().index()];
    let fail = |detail: String| MorphismError::NotIntervalIso {
        kernel: domain.name_of(kernel).into(),
        image_top: codomain.name_of(image_top).into(),
        detail,
    };
    let upper: Vec<ElementId> = domain.up_set(kernel).ones().map(ElementId::new).collect();
    let target = codomain.down_set(image_top);
    if upper.len() != target.count_ones(..) {
        return Err(fail(format!(
            "{} elements above the kernel but {} below the image",
            upper.len(),
            target.count_ones(..)
        )));
    }
    let mut hit = vec![false; codomain.len()];
    for &x in &upper {
        let y = map[x.index()];
        if !target.contains(y.index()) {
            return Err(fail(format!(
                "{} is sent outside [0, {}]",
                domain.name_of(x),
                codomain.name_of(image_top)
            )));
        }
        if std::mem::replace(&mut hit[y.index()], true) {
            return Err(fail(format!("{} is hit twice", codomain.name_of(y))));
        }
    }
    for &x in &upper {
        for &y in &upper {
            if domain.leq(x, y) != codomain.leq(map[x.index()], map[y.index()]) {
                return Err(fail(format!(
                    "order between {} and {} is not preserved",
                    domain.name_of(x),
                    domain.name_of(y)
                )));
            }
        }
    }
    Ok((kernel, image_top))
}

/// A certified linear morphism. Equality is equality of map tables over
/// equal lattices.
#[derive(Clone)]
pub struct LinearMorphism {
    domain: Arc<Lattice>,
    codomain: Arc<Lattice>,
    map: Vec<ElementId>,
    kernel: ElementId,
    image_top: ElementId,
}

impl PartialEq for LinearMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && same_lattice(&self.domain, &other.domain)
            && same_lattice(&self.codomain, &other.codomain)
    }
}

impl Eq for LinearMorphism {}

impl fmt::Debug for LinearMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {} {{", self.domain.name(), self.codomain.name())?;
        for (i, (a, b)) in self.table().0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}↦{b}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn same_lattice(a: &Arc<Lattice>, b: &Arc<Lattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Serialized morphism; kernel and image are recomputed on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub domain: String,
    pub codomain: String,
    pub map: OrderedTable,
}

impl LinearMorphism {
    /// Certifies `map` (indexed by domain id) as a linear morphism.
    pub fn new(
        domain: Arc<Lattice>,
        codomain: Arc<Lattice>,
        map: Vec<ElementId>,
    ) -> Result<Self, MorphismError> {
        let (kernel, image_top) = certify(&domain, &codomain, &map)?;
        Ok(LinearMorphism {
            domain,
            codomain,
            map,
            kernel,
            image_top,
        })
    }

    /// Skips certification; callers construct maps that are linear by
    /// construction.
    pub(crate) fn trusted(
        domain: Arc<Lattice>,
        codomain: Arc<Lattice>,
        map: Vec<ElementId>,
        kernel: ElementId,
        image_top: ElementId,
    ) -> Self {
        debug_assert_eq!(
            certify(&domain, &codomain, &map).ok(),
            Some((kernel, image_top))
        );
        LinearMorphism {
            domain,
            codomain,
            map,
            kernel,
            image_top,
        }
    }

    /// Builds a morphism from `(source, target)` element-name pairs, which
    /// must cover the domain exactly once.
    pub fn from_names(
        domain: Arc<Lattice>,
        codomain: Arc<Lattice>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, MorphismError> {
        let mut map = vec![None; domain.len()];
        for &(a, b) in pairs {
            let x = domain.id(a)?;
            let y = codomain.id(b)?;
            if map[x.index()].replace(y).is_some() {
                return Err(MorphismError::Parse(format!("`{a}` is mapped twice")));
            }
        }
        let got = map.iter().filter(|m| m.is_some()).count();
        let map: Option<Vec<ElementId>> = map.into_iter().collect();
        let map = map.ok_or(MorphismError::NotTotal {
            expected: domain.len(),
            got,
        })?;
        LinearMorphism::new(domain, codomain, map)
    }

    /// Loads a spec; the named lattices must match the ones supplied.
    pub fn from_spec(
        spec: &MorphismSpec,
        domain: &Arc<Lattice>,
        codomain: &Arc<Lattice>,
    ) -> Result<Self, MorphismError> {
        if spec.domain != domain.name() {
            return Err(MorphismError::DomainMismatch(
                spec.domain.clone(),
                domain.name().into(),
            ));
        }
        if spec.codomain != codomain.name() {
            return Err(MorphismError::DomainMismatch(
                spec.codomain.clone(),
                codomain.name().into(),
            ));
        }
        let pairs: Vec<(&str, &str)> = spec
            .map
            .0
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        LinearMorphism::from_names(domain.clone(), codomain.clone(), &pairs)
    }

    pub fn to_spec(&self) -> MorphismSpec {
        MorphismSpec {
            domain: self.domain.name().into(),
            codomain: self.codomain.name().into(),
            map: self.table(),
        }
    }

    pub fn identity(l: &Arc<Lattice>) -> Self {
        let map = l.elements().collect();
        LinearMorphism::trusted(l.clone(), l.clone(), map, l.bottom(), l.top())
    }

    pub fn zero(domain: &Arc<Lattice>, codomain: &Arc<Lattice>) -> Self {
        let map = vec![codomain.bottom(); domain.len()];
        LinearMorphism::trusted(
            domain.clone(),
            codomain.clone(),
            map,
            domain.top(),
            codomain.bottom(),
        )
    }

    pub fn domain(&self) -> &Arc<Lattice> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Lattice> {
        &self.codomain
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.map[x.index()]
    }

    pub fn kernel(&self) -> ElementId {
        self.kernel
    }

    /// `φ(1)`.
    pub fn image_top(&self) -> ElementId {
        self.image_top
    }

    pub fn is_zero(&self) -> bool {
        self.image_top == self.codomain.bottom()
    }

    pub fn is_identity(&self) -> bool {
        same_lattice(&self.domain, &self.codomain)
            && self.map.iter().enumerate().all(|(i, y)| y.index() == i)
    }

    pub fn is_endomorphism(&self) -> bool {
        same_lattice(&self.domain, &self.codomain)
    }

    /// Source-to-target element names in domain order.
    pub fn table(&self) -> OrderedTable {
        OrderedTable(
            self.domain
                .elements()
                .map(|x| {
                    (
                        self.domain.name_of(x).to_string(),
                        self.codomain.name_of(self.apply(x)).to_string(),
                    )
                })
                .collect(),
        )
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LinearMorphism) -> Result<LinearMorphism, MorphismError> {
        if !same_lattice(&other.codomain, &self.domain) {
            return Err(MorphismError::DomainMismatch(
                other.codomain.name().into(),
                self.domain.name().into(),
            ));
        }
        let map = other.map.iter().map(|&y| self.apply(y)).collect();
        LinearMorphism::new(other.domain.clone(), self.codomain.clone(), map)
    }

    /// `φ ∘ φ = φ`, i.e. `φ` fixes its image pointwise.
    pub fn is_idempotent(&self) -> bool {
        self.is_endomorphism() && self.map.iter().all(|&y| self.apply(y) == y)
    }
}

/// `a ↦ (a ∨ x') ∧ x`, the projection onto `x` along the complement `x'`.
pub fn projection(
    l: &Arc<Lattice>,
    x: ElementId,
    x_prime: ElementId,
) -> Result<LinearMorphism, MorphismError> {
    l.require_modular()?;
    if l.meet(x, x_prime) != l.bottom() || l.join(x, x_prime) != l.top() {
        return Err(MorphismError::NotAComplement(
            l.name_of(x_prime).into(),
            l.name_of(x).into(),
        ));
    }
    let map = l
        .elements()
        .map(|a| l.meet(l.join(a, x_prime), x))
        .collect();
    Ok(LinearMorphism::trusted(
        l.clone(),
        l.clone(),
        map,
        x_prime,
        x,
    ))
}

/// Every projection `π_x` over every complemented pair `(x, x')`.
pub fn all_projections(l: &Arc<Lattice>) -> Result<Vec<LinearMorphism>, MorphismError> {
    let mut out = Vec::new();
    for x in l.elements() {
        for &xp in l.complements_of(x) {
            out.push(projection(l, x, xp)?);
        }
    }
    Ok(out)
}

/// The inclusion `ι: [0, a] → L`.
pub fn inclusion(l: &Arc<Lattice>, iv: &Interval) -> Result<LinearMorphism, MorphismError> {
    if iv.lo() != l.bottom() {
        return Err(MorphismError::BadInterval(format!(
            "inclusion needs a lower end of 0, got {}",
            l.name_of(iv.lo())
        )));
    }
    let map = iv.members().to_vec();
    Ok(LinearMorphism::trusted(
        iv.lattice().clone(),
        l.clone(),
        map,
        iv.lattice().bottom(),
        iv.hi(),
    ))
}

/// The retraction `ρ_a: L → [a, 1]`, `x ↦ x ∨ a`.
pub fn rho(l: &Arc<Lattice>, iv: &Interval) -> Result<LinearMorphism, MorphismError> {
    if iv.hi() != l.top() {
        return Err(MorphismError::BadInterval(format!(
            "retraction needs an upper end of 1, got {}",
            l.name_of(iv.hi())
        )));
    }
    let a = iv.lo();
    let map = l
        .elements()
        .map(|x| iv.to_sub(l.join(x, a)).expect("x ∨ a lies above a"))
        .collect();
    Ok(LinearMorphism::trusted(
        l.clone(),
        iv.lattice().clone(),
        map,
        a,
        iv.lattice().top(),
    ))
}

/// Extends `φ: [0, x] → [0, y]` to `L → L` by `a ↦ φ((a ∨ x') ∧ x)`, that
/// is `φ ∘ π_x` along the complement `x'`. The kernel is `ker φ ∨ x'`.
///
/// The projection is needed: `a ↦ φ(a ∧ x)` alone is not linear in general
/// (in M3 it sends the third atom to `0` although that atom is not below `x'`).
pub fn extend_from_interval(
    l: &Arc<Lattice>,
    source: &Interval,
    target: &Interval,
    phi: &LinearMorphism,
    x_prime: ElementId,
) -> Result<LinearMorphism, MorphismError> {
    if source.lo() != l.bottom() || target.lo() != l.bottom() {
        return Err(MorphismError::BadInterval(
            "extension needs intervals of the form [0, x]".into(),
        ));
    }
    if !same_lattice(phi.domain(), source.lattice())
        || !same_lattice(phi.codomain(), target.lattice())
    {
        return Err(MorphismError::DomainMismatch(
            phi.domain().name().into(),
            source.lattice().name().into(),
        ));
    }
    let x = source.hi();
    if l.meet(x, x_prime) != l.bottom() || l.join(x, x_prime) != l.top() {
        return Err(MorphismError::NotAComplement(
            l.name_of(x_prime).into(),
            l.name_of(x).into(),
        ));
    }
    let map = l
        .elements()
        .map(|a| {
            let inner = source
                .to_sub(l.meet(l.join(a, x_prime), x))
                .expect("(a ∨ x') ∧ x ≤ x");
            target.to_parent(phi.apply(inner))
        })
        .collect();
    LinearMorphism::new(l.clone(), l.clone(), map)
}

/// `{x : φ(x) ≤ x for every φ}`.
pub fn fully_invariant_elements<'a>(
    l: &Lattice,
    morphisms: impl IntoIterator<Item = &'a LinearMorphism> + Clone,
) -> Vec<ElementId> {
    l.elements()
        .filter(|&x| morphisms.clone().into_iter().all(|f| l.leq(f.apply(x), x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chain_shift_has_kernel_n() {
        let c3 = Arc::new(fixtures::c3());
        let phi = fixtures::chain_shift(&c3);
        let n = c3.id("n").unwrap();
        assert_eq!(phi.kernel(), n);
        assert_eq!(phi.image_top(), n);
        let sq = phi.compose(&phi).unwrap();
        assert!(sq.is_zero());
        assert_eq!(sq.kernel(), c3.top());
        assert_eq!(LinearMorphism::identity(&c3).compose(&phi).unwrap(), phi);
    }

    #[test]
    fn collapsing_map_on_m3_is_not_linear() {
        let m3 = Arc::new(fixtures::m3());
        let err = LinearMorphism::from_names(
            m3.clone(),
            m3.clone(),
            &[("0", "0"), ("a", "a"), ("b", "a"), ("c", "a"), ("1", "a")],
        )
        .unwrap_err();
        assert!(matches!(err, MorphismError::NotIntervalIso { .. }));
    }

    #[test]
    fn map_without_kernel() {
        // 0 ↦ 0, n ↦ 0, 1 ↦ 1 collapses the bottom edge but not the top.
        let c3 = Arc::new(fixtures::c3());
        let err = LinearMorphism::from_names(
            c3.clone(),
            c3.clone(),
            &[("0", "0"), ("n", "n"), ("1", "0")],
        )
        .unwrap_err();
        assert!(matches!(err, MorphismError::NoKernel { .. }));
        let err = LinearMorphism::from_names(c3.clone(), c3, &[("0", "0")]).unwrap_err();
        assert!(matches!(
            err,
            MorphismError::NotTotal {
                expected: 3,
                got: 1
            }
        ));
    }

    #[test]
    fn projections_on_b2_and_m3() {
        let b2 = Arc::new(fixtures::b2());
        let (a, b) = (b2.id("a").unwrap(), b2.id("b").unwrap());
        let pa = projection(&b2, a, b).unwrap();
        assert_eq!(pa.apply(b), b2.bottom());
        assert_eq!(pa.apply(b2.top()), a);
        assert_eq!(pa.kernel(), b);
        let pb = projection(&b2, b, a).unwrap();
        let z = pb.compose(&pa).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.kernel(), b2.top());
        let m3 = Arc::new(fixtures::m3());
        let (a, b, c) = (
            m3.id("a").unwrap(),
            m3.id("b").unwrap(),
            m3.id("c").unwrap(),
        );
        assert_eq!(projection(&m3, a, b).unwrap().apply(c), a);
        assert!(projection(&m3, m3.top(), m3.bottom())
            .unwrap()
            .is_identity());
        assert!(matches!(
            projection(&m3, a, a),
            Err(MorphismError::NotAComplement(..))
        ));
    }

    #[test]
    fn extension_from_excip_interval() {
        let ex = Arc::new(fixtures::excip());
        let (a, b, k, f) = (
            ex.id("a").unwrap(),
            ex.id("b").unwrap(),
            ex.id("k").unwrap(),
            ex.id("f").unwrap(),
        );
        let src = ex.down_interval(a);
        let dst = ex.down_interval(b);
        let phi = LinearMorphism::from_names(
            src.lattice().clone(),
            dst.lattice().clone(),
            &[("0", "0"), ("k", "0"), ("a", "f")],
        )
        .unwrap();
        assert_eq!(src.to_parent(phi.kernel()), k);
        let ext = extend_from_interval(&ex, &src, &dst, &phi, b).unwrap();
        assert_eq!(ext.kernel(), ex.join(k, b));
        assert_eq!(ext.image_top(), f);

        let id = LinearMorphism::identity(src.lattice());
        let ext = extend_from_interval(&ex, &src, &src, &id, b).unwrap();
        assert_eq!(ext, projection(&ex, a, b).unwrap());
        let zero = LinearMorphism::zero(src.lattice(), src.lattice());
        assert!(extend_from_interval(&ex, &src, &src, &zero, b)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn inclusion_and_rho() {
        let ex = Arc::new(fixtures::excip());
        let c = ex.id("c").unwrap();
        let i = inclusion(&ex, &ex.down_interval(c)).unwrap();
        assert_eq!(i.kernel(), ElementId(0));
        let r = rho(&ex, &ex.up_interval(c)).unwrap();
        assert_eq!(r.kernel(), c);
        assert!(inclusion(&ex, &ex.up_interval(c)).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let c3 = Arc::new(fixtures::c3());
        let phi = fixtures::chain_shift(&c3);
        let json = serde_json::to_string(&phi.to_spec()).unwrap();
        assert_eq!(
            json,
            r#"{"domain":"C3","codomain":"C3","map":{"0":"0","n":"0","1":"n"}}"#
        );
        let spec: MorphismSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(LinearMorphism::from_spec(&spec, &c3, &c3).unwrap(), phi);
    }
}
