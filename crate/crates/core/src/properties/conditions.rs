use crate::lattice::{ElementId, Lattice};
use crate::linmor::interval_isos;
use crate::monoid::EndoMonoid;
use crate::verdict::{OrderedTable, Verdict};

/// The extension and lifting conditions C1, D1, 𝔪-C2 and 𝔪-D2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionKind {
    C1,
    D1,
    MC2,
    MD2,
}

impl ConditionKind {
    pub fn id(self) -> &'static str {
        match self {
            ConditionKind::C1 => "c1",
            ConditionKind::D1 => "d1",
            ConditionKind::MC2 => "mc2",
            ConditionKind::MD2 => "md2",
        }
    }
}

/// A complemented `c ≥ x` with `x` essential in `[0, c]`.
pub fn c1_certificate(l: &Lattice, x: ElementId) -> Option<ElementId> {
    l.complemented_elements()
        .into_iter()
        .find(|&c| l.leq(x, c) && l.is_essential_below(x, c))
}

/// A complemented `c ≤ x` with a complement `c'` making `x ∧ c'`
/// superfluous.
pub fn d1_certificate(l: &Lattice, x: ElementId) -> Option<(ElementId, ElementId)> {
    for c in l.complemented_elements() {
        if !l.leq(c, x) {
            continue;
        }
        for &cp in l.complements_of(c) {
            if l.is_superfluous(l.meet(x, cp)) {
                return Some((c, cp));
            }
        }
    }
    None
}

pub fn check_c1(l: &Lattice) -> Verdict {
    let mut cert = Vec::new();
    for x in l.elements() {
        match c1_certificate(l, x) {
            Some(c) => cert.push((l.name_of(x).to_string(), l.name_of(c).to_string())),
            None => return Verdict::fail("c1").with("element", l.name_of(x)),
        }
    }
    Verdict::pass("c1").with("closure", OrderedTable(cert))
}

pub fn check_d1(l: &Lattice) -> Verdict {
    let mut cert = Vec::new();
    for x in l.elements() {
        match d1_certificate(l, x) {
            Some((c, _)) => cert.push((l.name_of(x).to_string(), l.name_of(c).to_string())),
            None => return Verdict::fail("d1").with("element", l.name_of(x)),
        }
    }
    Verdict::pass("d1").with("summand", OrderedTable(cert))
}

/// 𝔪-D2: for every `a`, complemented `x` and isomorphism `θ: [a, 1] → [0, x]`
/// with `y ↦ θ(y ∨ a)` in `m`, the element `a` is complemented.
pub fn check_md2(m: &EndoMonoid) -> Verdict {
    let l = m.lattice();
    for a in l.elements() {
        if l.is_complemented(a) {
            continue;
        }
        let upper = l.up_interval(a);
        for x in l.complemented_elements() {
            let lower = l.down_interval(x);
            for theta in interval_isos(upper.lattice(), lower.lattice()) {
                let map: Vec<ElementId> = l
                    .elements()
                    .map(|y| {
                        let s = upper.to_sub(l.join(y, a)).expect("y ∨ a ≥ a");
                        lower.to_parent(theta[s.index()])
                    })
                    .collect();
                if let Some(i) = m.index_of(&map) {
                    return Verdict::fail("md2")
                        .with("a", l.name_of(a))
                        .with("x", l.name_of(x))
                        .with("morphism", m.member(i).table());
                }
            }
        }
    }
    Verdict::pass("md2")
}

/// 𝔪-C2: for every complemented `x`, complement `x'`, element `a` and
/// isomorphism `θ: [0, x] → [0, a]` with `z ↦ θ(x ∧ (z ∨ x'))` in `m`, the
/// element `a` is complemented.
pub fn check_mc2(m: &EndoMonoid) -> Verdict {
    let l = m.lattice();
    for x in l.complemented_elements() {
        let source = l.down_interval(x);
        for &xp in l.complements_of(x) {
            for a in l.elements() {
                if l.is_complemented(a) {
                    continue;
                }
                let target = l.down_interval(a);
                for theta in interval_isos(source.lattice(), target.lattice()) {
                    let map: Vec<ElementId> = l
                        .elements()
                        .map(|z| {
                            let s = source
                                .to_sub(l.meet(x, l.join(z, xp)))
                                .expect("x ∧ (z ∨ x') ≤ x");
                            target.to_parent(theta[s.index()])
                        })
                        .collect();
                    if let Some(i) = m.index_of(&map) {
                        return Verdict::fail("mc2")
                            .with("x", l.name_of(x))
                            .with("complement", l.name_of(xp))
                            .with("a", l.name_of(a))
                            .with("morphism", m.member(i).table());
                    }
                }
            }
        }
    }
    Verdict::pass("mc2")
}

pub fn check_condition(m: &EndoMonoid, kind: ConditionKind) -> Verdict {
    match kind {
        ConditionKind::C1 => check_c1(m.lattice()),
        ConditionKind::D1 => check_d1(m.lattice()),
        ConditionKind::MC2 => check_mc2(m),
        ConditionKind::MD2 => check_md2(m),
    }
}

/// K/T-nonsingularity and their co-versions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularityKind {
    K,
    T,
    KCo,
    TCo,
}

impl SingularityKind {
    pub fn id(self) -> &'static str {
        match self {
            SingularityKind::K => "k",
            SingularityKind::T => "t",
            SingularityKind::KCo => "k_co",
            SingularityKind::TCo => "t_co",
        }
    }
}

/// K: an essential kernel forces the zero map. T: a superfluous image
/// forces the zero map. K_co: if no nonzero member kills `a` then `a` is
/// essential. T_co: if no nonzero member has image below `a` then `a` is
/// superfluous.
pub fn check_nonsingularity(m: &EndoMonoid, kind: SingularityKind) -> Verdict {
    let l = m.lattice();
    let nonzero = || m.members().iter().enumerate().filter(|(_, f)| !f.is_zero());
    match kind {
        SingularityKind::K | SingularityKind::T => {
            for (i, f) in nonzero() {
                let small = match kind {
                    SingularityKind::K => l.is_essential(f.kernel()),
                    _ => l.is_superfluous(f.image_top()),
                };
                if small {
                    return Verdict::fail(kind.id())
                        .with("morphism", m.member(i).table())
                        .with("subset", vec![i]);
                }
            }
            Verdict::pass(kind.id())
        }
        SingularityKind::KCo | SingularityKind::TCo => {
            for a in l.elements() {
                let hypothesis = match kind {
                    SingularityKind::KCo => nonzero().all(|(_, f)| f.apply(a) != l.bottom()),
                    _ => nonzero().all(|(_, f)| !l.leq(f.image_top(), a)),
                };
                let conclusion = match kind {
                    SingularityKind::KCo => l.is_essential(a),
                    _ => l.is_superfluous(a),
                };
                if hypothesis && !conclusion {
                    return Verdict::fail(kind.id()).with("element", l.name_of(a));
                }
            }
            Verdict::pass(kind.id())
        }
    }
}
