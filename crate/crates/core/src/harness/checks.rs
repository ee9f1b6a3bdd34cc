//! The check implementations behind the registry.
//!
//! Every check recomputes both sides of its claim from independent pieces
//! (member scans, interval isomorphism enumeration, closure searches) so a
//! bug in one decider shows up as a disagreement rather than cancelling out.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{Check, MonoidCtx, Outcome, Runner, Subject};
use crate::lattice::{direct_product, is_independent, ElementId, Lattice};
use crate::limits::Limits;
use crate::linmor::{self, enumerate_linmors, interval_isos, LinearMorphism};
use crate::monoid::{EndoMonoid, Side};
use crate::properties::{self as props, Property, SummandKind};

macro_rules! guard {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(o) => return o,
        }
    };
}

fn equivalent(left: &str, a: bool, right: &str, b: bool) -> Outcome {
    if a == b {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("`{left}` is {a} but `{right}` is {b}"))
    }
}

fn implication(premise: &str, p: bool, conclusion: &str, c: bool) -> Outcome {
    if !p || c {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("`{premise}` holds but `{conclusion}` fails"))
    }
}

/// First failure wins; all-skipped stays skipped.
fn all_of(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut first_skip = None;
    let mut any_pass = false;
    for o in outcomes {
        match o {
            Outcome::Fail(_) => return o,
            Outcome::Pass => any_pass = true,
            Outcome::Skip(_) => {
                first_skip.get_or_insert(o);
            }
        }
    }
    match (any_pass, first_skip) {
        (false, Some(skip)) => skip,
        _ => Outcome::Pass,
    }
}

fn full(s: &Subject) -> Result<Arc<MonoidCtx>, Outcome> {
    s.full()
        .map_err(|e| Outcome::Skip(format!("monoid unavailable: {e}")))
}

fn projections(ctx: &MonoidCtx) -> Result<(), Outcome> {
    if ctx.m.has_all_projections() {
        Ok(())
    } else {
        Err(Outcome::Skip("monoid lacks projections".into()))
    }
}

fn cap<T>(r: Result<T, impl std::fmt::Display>) -> Result<T, Outcome> {
    r.map_err(|e| Outcome::Skip(format!("size cap: {e}")))
}

fn names(l: &Lattice, xs: &[ElementId]) -> String {
    let v: Vec<&str> = xs.iter().map(|&x| l.name_of(x)).collect();
    format!("{{{}}}", v.join(", "))
}

/// Distinct values reachable from `start` under `∧` (or `∨`) with `values`.
fn closure(
    l: &Lattice,
    start: ElementId,
    values: impl Iterator<Item = ElementId>,
    joins: bool,
) -> Vec<ElementId> {
    let seeds: Vec<ElementId> = {
        let mut seen = HashSet::new();
        values.filter(|v| seen.insert(*v)).collect()
    };
    let mut reached = vec![start];
    let mut seen: HashSet<ElementId> = reached.iter().copied().collect();
    let mut queue = VecDeque::from([start]);
    while let Some(e) = queue.pop_front() {
        for &v in &seeds {
            let next = if joins { l.join(e, v) } else { l.meet(e, v) };
            if seen.insert(next) {
                reached.push(next);
                queue.push_back(next);
            }
        }
    }
    reached
}

/// Independent families joining to `1`, every subset of the nonzero
/// elements when there are at most twelve of them.
pub(crate) fn independent_families(l: &Lattice) -> Vec<Vec<ElementId>> {
    let nonzero: Vec<ElementId> = l.elements().filter(|&x| x != l.bottom()).collect();
    let mut out: Vec<Vec<ElementId>> = Vec::new();
    if nonzero.len() <= 12 {
        for mask in 0u32..(1 << nonzero.len()) {
            let family: Vec<ElementId> = (0..nonzero.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| nonzero[i])
                .collect();
            if l.join_all(family.iter().copied()) == l.top() && is_independent(l, &family) {
                out.push(family);
            }
        }
        return out;
    }
    out.push(vec![l.top()]);
    if let Ok(d) = l.decompose() {
        out.push(d.blocks);
    }
    for x in l.complemented_elements() {
        if x == l.bottom() || x == l.top() {
            continue;
        }
        for &xp in l.complements_of(x) {
            if x < xp {
                out.push(vec![x, xp]);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `π_{a_i}(x)` along the join of the rest of the family.
fn family_projection(l: &Lattice, family: &[ElementId], i: usize, x: ElementId) -> ElementId {
    let rest = l.join_all(
        family
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &a)| a),
    );
    l.meet(l.join(x, rest), family[i])
}

// ---------------------------------------------------------------------------
// Lattice scope
// ---------------------------------------------------------------------------

fn kerpi(s: &Subject) -> Outcome {
    let l = &s.lattice;
    let c = l.complemented_elements();
    for &x in &c {
        for &xp in l.complements_of(x) {
            let px = guard!(cap(linmor::projection(l, x, xp)));
            for &y in &c {
                for &yp in l.complements_of(y) {
                    let py = guard!(cap(linmor::projection(l, y, yp)));
                    let map = l.elements().map(|a| py.apply(px.apply(a))).collect();
                    let composite = match LinearMorphism::new(l.clone(), l.clone(), map) {
                        Ok(f) => f,
                        Err(e) => {
                            return Outcome::Fail(format!(
                                "π_{} ∘ π_{} is not linear: {e}",
                                l.name_of(y),
                                l.name_of(x)
                            ))
                        }
                    };
                    let expected = l.join(l.meet(x, yp), xp);
                    if composite.kernel() != expected {
                        return Outcome::Fail(format!(
                            "x={}, x'={}, y={}, y'={}: kernel {} but (x ∧ y') ∨ x' = {}",
                            l.name_of(x),
                            l.name_of(xp),
                            l.name_of(y),
                            l.name_of(yp),
                            l.name_of(composite.kernel()),
                            l.name_of(expected)
                        ));
                    }
                }
            }
        }
    }
    Outcome::Pass
}

fn idemcomp(s: &Subject) -> Outcome {
    let l = &s.lattice;
    let ctx = guard!(full(s));
    for &i in ctx.m.idempotents() {
        let f = ctx.m.member(i);
        let (k, im) = (f.kernel(), f.image_top());
        if l.meet(k, im) != l.bottom() || l.join(k, im) != l.top() {
            return Outcome::Fail(format!(
                "idempotent {:?} has kernel {} and image {}",
                f.table(),
                l.name_of(k),
                l.name_of(im)
            ));
        }
    }
    Outcome::Pass
}

fn isolin(s: &Subject) -> Outcome {
    let l = &s.lattice;
    for a in l.elements() {
        let up = l.up_interval(a);
        for x in l.elements() {
            let down = l.down_interval(x);
            if up.len() != down.len() {
                continue;
            }
            for theta in interval_isos(up.lattice(), down.lattice()) {
                let map = l
                    .elements()
                    .map(|y| {
                        let t = up.to_sub(l.join(y, a)).expect("y ∨ a ≥ a");
                        down.to_parent(theta[t.index()])
                    })
                    .collect();
                match LinearMorphism::new(l.clone(), l.clone(), map) {
                    Ok(f) if f.kernel() == a && f.image_top() == x => {}
                    Ok(f) => {
                        return Outcome::Fail(format!(
                            "composite through [{}, 1] ≅ [0, {}] has kernel {}",
                            l.name_of(a),
                            l.name_of(x),
                            l.name_of(f.kernel())
                        ))
                    }
                    Err(e) => {
                        return Outcome::Fail(format!(
                            "composite through [{}, 1] ≅ [0, {}] is not linear: {e}",
                            l.name_of(a),
                            l.name_of(x)
                        ))
                    }
                }
            }
        }
    }
    Outcome::Pass
}

fn splits(s: &Subject) -> Outcome {
    let l = &s.lattice;
    for a in l.elements() {
        let down = l.down_interval(a);
        let up = l.up_interval(a);
        let retractions = guard!(cap(enumerate_linmors(l, down.lattice(), s.limits())));
        let inclusion_splits = retractions.iter().any(|psi| {
            down.lattice()
                .elements()
                .all(|j| psi.apply(down.to_parent(j)) == j)
        });
        let sections = guard!(cap(enumerate_linmors(up.lattice(), l, s.limits())));
        let rho_splits = sections.iter().any(|phi| {
            up.lattice()
                .elements()
                .all(|j| l.join(phi.apply(j), a) == up.to_parent(j))
        });
        let complemented = l.is_complemented(a);
        if complemented != inclusion_splits || complemented != rho_splits {
            return Outcome::Fail(format!(
                "a={}: complemented {complemented}, ι_a splits {inclusion_splits}, ρ_a splits {rho_splits}",
                l.name_of(a)
            ));
        }
    }
    Outcome::Pass
}

fn boolean_meetmaps(s: &Subject) -> Outcome {
    let l = &s.lattice;
    let boolean = l.is_distributive().holds && l.is_complemented_lattice();
    let meet_maps = l.elements().all(|a| {
        let map = l.elements().map(|b| l.meet(a, b)).collect();
        LinearMorphism::new(l.clone(), l.clone(), map).is_ok()
    });
    equivalent("boolean", boolean, "every a ∧ _ is linear", meet_maps)
}

fn lemmaret(s: &Subject) -> Outcome {
    let l = &s.lattice;
    let zero = l.bottom();
    for a in l.elements() {
        for b in l.elements() {
            if l.meet(a, b) != zero {
                continue;
            }
            let ab = l.join(a, b);
            for c in l.elements() {
                if l.meet(ab, c) == zero && l.meet(a, l.join(b, c)) != zero {
                    return Outcome::Fail(format!(
                        "a={}, b={}, c={}",
                        l.name_of(a),
                        l.name_of(b),
                        l.name_of(c)
                    ));
                }
            }
        }
    }
    Outcome::Pass
}

fn fipi1(s: &Subject) -> Outcome {
    let l = &s.lattice;
    for family in s.families() {
        for x in l.elements() {
            let covered = l.join_all((0..family.len()).map(|i| family_projection(l, family, i, x)));
            if !l.leq(x, covered) {
                return Outcome::Fail(format!(
                    "family {}: {} ≰ {}",
                    names(l, family),
                    l.name_of(x),
                    l.name_of(covered)
                ));
            }
        }
    }
    Outcome::Pass
}

fn fidis(s: &Subject) -> Outcome {
    let l = &s.lattice;
    let invariant = guard!(s.fully_invariant().map_err(Outcome::Skip));
    for family in s.families() {
        for &x in invariant {
            let parts = l.join_all(family.iter().map(|&a| l.meet(x, a)));
            if parts != x {
                return Outcome::Fail(format!(
                    "family {}: ⋁(x ∧ a_i) = {} for x = {}",
                    names(l, family),
                    l.name_of(parts),
                    l.name_of(x)
                ));
            }
            for (i, &a) in family.iter().enumerate() {
                if family_projection(l, family, i, x) != l.meet(x, a) {
                    return Outcome::Fail(format!(
                        "family {}: π_{}({}) ≠ {} ∧ {}",
                        names(l, family),
                        l.name_of(a),
                        l.name_of(x),
                        l.name_of(x),
                        l.name_of(a)
                    ));
                }
            }
        }
    }
    Outcome::Pass
}

fn ricind2(s: &Subject) -> Outcome {
    let l = &s.lattice;
    if l.len() < 2 {
        return Outcome::Skip("one-element lattice".into());
    }
    let (soc, rad) = l.socle_radical();
    if soc == l.bottom() || rad == l.top() {
        return Outcome::Skip("Soc = 0 or Rad = 1".into());
    }
    let ctx = guard!(full(s));
    let indecomposable = l.complemented_elements().len() == 2;
    equivalent(
        "indecomposable and Rickart",
        indecomposable && ctx.holds(Property::Rickart),
        "L ≅ 2",
        l.is_two(),
    )
}

fn if2(s: &Subject) -> Outcome {
    let l = &s.lattice;
    let ctx = guard!(full(s));
    let rickart = ctx.holds(Property::Rickart);
    let two = |a: ElementId| l.down_interval(a).lattice().is_two();
    let literal = s.families().iter().any(|f| f.iter().all(|&a| two(a)));
    let blocks = guard!(cap(l.decompose()));
    all_of([
        equivalent("Rickart", rickart, "some family of atoms", literal),
        equivalent(
            "Rickart",
            rickart,
            "decomposition blocks all atoms",
            blocks.blocks.iter().all(|&a| two(a)),
        ),
    ])
}

fn interval_family(s: &Subject, only_invariant: bool) -> Outcome {
    let l = &s.lattice;
    let ctx = guard!(full(s));
    let rickart = ctx.holds(Property::Rickart);
    let invariant: Vec<ElementId> = if only_invariant {
        guard!(s.fully_invariant().map_err(Outcome::Skip)).to_vec()
    } else {
        Vec::new()
    };
    let mut checked = 0;
    for family in s.families() {
        if only_invariant && !family.iter().all(|a| invariant.contains(a)) {
            continue;
        }
        let mut parts = true;
        for &a in family {
            match s.down_rickart(a) {
                Some(v) => parts &= v,
                None => return Outcome::Skip("size cap".into()),
            }
        }
        checked += 1;
        if parts != rickart {
            return Outcome::Fail(format!(
                "family {}: L Rickart is {rickart}, intervals Rickart is {parts}",
                names(l, family)
            ));
        }
    }
    if checked == 0 {
        Outcome::Skip("no qualifying family".into())
    } else {
        Outcome::Pass
    }
}

fn sumric(s: &Subject) -> Outcome {
    interval_family(s, false)
}

fn decomp_fi(s: &Subject) -> Outcome {
    interval_family(s, true)
}

/// Whether `set`, ordered as in `l`, is a lattice in which every element
/// has a complement. Returns the offending element or pair otherwise.
fn induced_complemented_lattice(l: &Lattice, set: &[ElementId]) -> Result<(), String> {
    let least = |cands: Vec<ElementId>, up: bool| {
        cands.iter().copied().find(|&z| {
            cands
                .iter()
                .all(|&w| if up { l.leq(z, w) } else { l.leq(w, z) })
        })
    };
    let lub = |x: ElementId, y: ElementId| {
        least(
            set.iter()
                .copied()
                .filter(|&z| l.leq(x, z) && l.leq(y, z))
                .collect(),
            true,
        )
    };
    let glb = |x: ElementId, y: ElementId| {
        least(
            set.iter()
                .copied()
                .filter(|&z| l.leq(z, x) && l.leq(z, y))
                .collect(),
            false,
        )
    };
    for &x in set {
        for &y in set {
            if lub(x, y).is_none() || glb(x, y).is_none() {
                return Err(format!(
                    "{} and {} lack a bound",
                    l.name_of(x),
                    l.name_of(y)
                ));
            }
        }
    }
    let (bottom, top) = (least(set.to_vec(), true), least(set.to_vec(), false));
    for &x in set {
        let ok = set.iter().any(|&y| glb(x, y) == bottom && lub(x, y) == top);
        if !ok {
            return Err(format!("{} has no complement inside", l.name_of(x)));
        }
    }
    Ok(())
}

fn cl_complemented(s: &Subject) -> Outcome {
    let l = &s.lattice;
    let ctx = guard!(full(s));
    if !(ctx.holds(Property::Baer) || ctx.holds(Property::DualBaer)) {
        return Outcome::Pass;
    }
    match induced_complemented_lattice(l, &l.complemented_elements()) {
        Ok(()) => Outcome::Pass,
        Err(e) => Outcome::Fail(format!("(dual-)Baer but C(L) fails: {e}")),
    }
}

fn boolean_cl(s: &Subject) -> Outcome {
    let l = &s.lattice;
    let c = l.complemented_elements();
    let inside: HashSet<ElementId> = c.iter().copied().collect();
    let sublattice = c.iter().all(|&x| {
        c.iter()
            .all(|&y| inside.contains(&l.meet(x, y)) && inside.contains(&l.join(x, y)))
    });
    if !sublattice {
        return Outcome::Skip("C(L) is not a sublattice".into());
    }
    let mut projections_meet = true;
    'outer: for &x in &c {
        for &y in &c {
            let m = l.meet(x, y);
            for &xp in l.complements_of(x) {
                for &yp in l.complements_of(y) {
                    let pxy = l.meet(l.join(y, xp), x);
                    let pyx = l.meet(l.join(x, yp), y);
                    if pxy != m || pyx != m {
                        projections_meet = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    let distributive = c.iter().all(|&x| {
        c.iter().all(|&y| {
            c.iter()
                .all(|&z| l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z)))
        })
    });
    equivalent(
        "π_x(y) = π_y(x) = x ∧ y on C(L)",
        projections_meet,
        "C(L) Boolean",
        distributive,
    )
}

fn fi_extension(s: &Subject) -> Outcome {
    let l = &s.lattice;
    let ctx = guard!(full(s));
    if !ctx.holds(Property::Rickart) {
        return Outcome::Pass;
    }
    let invariant = guard!(s.fully_invariant().map_err(Outcome::Skip)).to_vec();
    for x in invariant {
        let iv = l.down_interval(x);
        let restrictions: HashSet<Vec<ElementId>> = ctx
            .m
            .members()
            .iter()
            .map(|f| {
                iv.members()
                    .iter()
                    .map(|&y| iv.to_sub(f.apply(y)).expect("x is fully invariant"))
                    .collect()
            })
            .collect();
        let local = guard!(cap(enumerate_linmors(
            iv.lattice(),
            iv.lattice(),
            s.limits()
        )));
        let extendable = local.iter().all(|phi| {
            let table: Vec<ElementId> = iv
                .members()
                .iter()
                .map(|&y| phi.apply(iv.to_sub(y).expect("member")))
                .collect();
            restrictions.contains(&table)
        });
        if extendable && s.down_rickart(x) == Some(false) {
            return Outcome::Fail(format!(
                "[0, {}] is not Rickart although every endomorphism extends",
                l.name_of(x)
            ));
        }
    }
    Outcome::Pass
}

// ---------------------------------------------------------------------------
// Monoid scope
// ---------------------------------------------------------------------------

fn riccipssp(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    all_of([
        implication(
            "Rickart",
            c.holds(Property::Rickart),
            "CIP",
            c.holds(Property::Cip),
        ),
        implication(
            "dual-Rickart",
            c.holds(Property::DualRickart),
            "CSP",
            c.holds(Property::Csp),
        ),
    ])
}

fn baerricscip(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    all_of([
        equivalent(
            "Rickart ∧ SCIP",
            c.holds(Property::Rickart) && c.holds(Property::Scip),
            "Baer",
            c.holds(Property::Baer),
        ),
        equivalent(
            "dual-Rickart ∧ SCSP",
            c.holds(Property::DualRickart) && c.holds(Property::Scsp),
            "dual-Baer",
            c.holds(Property::DualBaer),
        ),
    ])
}

fn kernels_generated(m: &EndoMonoid) -> bool {
    let distinct: HashSet<ElementId> = m.kernels().collect();
    distinct.into_iter().all(|k| props::is_generated(m, k))
}

fn images_cogenerated(m: &EndoMonoid) -> bool {
    let distinct: HashSet<ElementId> = m.images().collect();
    distinct.into_iter().all(|i| props::is_cogenerated(m, i))
}

fn ricendoric(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    let rickart = c.holds(Property::Rickart);
    let rr = c.holds(Property::RightRickart);
    all_of([
        equivalent(
            "Rickart",
            rickart,
            "right Rickart monoid ∧ retractable",
            rr && c.holds(Property::Retractable),
        ),
        equivalent(
            "Rickart",
            rickart,
            "right Rickart monoid ∧ kernels generated",
            rr && kernels_generated(&c.m),
        ),
    ])
}

fn dricendodric(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    equivalent(
        "dual-Rickart",
        c.holds(Property::DualRickart),
        "left Rickart monoid ∧ images cogenerated",
        c.holds(Property::LeftRickart) && images_cogenerated(&c.m),
    )
}

fn member_set(m: &EndoMonoid, pred: impl Fn(&LinearMorphism) -> bool) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(m.len());
    for (i, f) in m.members().iter().enumerate() {
        if pred(f) {
            bits.insert(i);
        }
    }
    bits
}

fn baercar(s: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    let l = &s.lattice;
    let m = &c.m;
    let baer = c.holds(Property::Baer);
    let principal = l.elements().all(|a| {
        let killers = member_set(m, |f| f.apply(a) == l.bottom());
        m.principal_idempotent(Side::Left, &killers).is_some()
    });
    let meets = closure(l, l.top(), m.kernels(), false);
    let monoid_side =
        c.holds(Property::RightBaer) && meets.iter().all(|&k| props::is_generated(m, k));
    all_of([
        equivalent("Baer", baer, "{φ : φ(a) = 0} = 𝔪ε for all a", principal),
        equivalent(
            "Baer",
            baer,
            "Baer monoid ∧ kernel meets generated",
            monoid_side,
        ),
    ])
}

fn dbaercar(s: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    let l = &s.lattice;
    let m = &c.m;
    let dual = c.holds(Property::DualBaer);
    let principal = l.elements().all(|a| {
        let below = member_set(m, |f| l.leq(f.image_top(), a));
        m.principal_idempotent(Side::Right, &below).is_some()
    });
    let joins = closure(l, l.bottom(), m.images(), true);
    let monoid_side =
        c.holds(Property::LeftBaer) && joins.iter().all(|&j| props::is_cogenerated(m, j));
    all_of([
        equivalent(
            "dual-Baer",
            dual,
            "{φ : φ(1) ≤ a} = ε𝔪 for all a",
            principal,
        ),
        equivalent(
            "dual-Baer",
            dual,
            "Baer monoid ∧ image joins cogenerated",
            monoid_side,
        ),
    ])
}

/// For every member `φ`: some complemented `x` and `θ: [0, φ(1)] ≅ [0, x]`
/// with `ι_x θ φ` in `m`.
fn image_to_complement(m: &EndoMonoid) -> bool {
    let l = m.lattice();
    let comp = l.complemented_elements();
    let mut cache: std::collections::HashMap<ElementId, bool> = Default::default();
    m.members().iter().all(|phi| {
        // The condition depends on φ itself, not only on φ(1).
        let _ = &mut cache;
        let img = l.down_interval(phi.image_top());
        comp.iter().any(|&x| {
            let target = l.down_interval(x);
            if target.len() != img.len() {
                return false;
            }
            interval_isos(img.lattice(), target.lattice())
                .into_iter()
                .any(|theta| {
                    let map: Vec<ElementId> = l
                        .elements()
                        .map(|y| {
                            let t = img.to_sub(phi.apply(y)).expect("φ(y) ≤ φ(1)");
                            target.to_parent(theta[t.index()])
                        })
                        .collect();
                    m.index_of(&map).is_some()
                })
        })
    })
}

/// For every member `φ`: some complemented `x`, complement `x'` and
/// `θ: [0, x] ≅ [0, φ(1)]` with `z ↦ θ((z ∨ x') ∧ x)` in `m`.
fn complement_to_image(m: &EndoMonoid) -> bool {
    let l = m.lattice();
    let comp = l.complemented_elements();
    let images: HashSet<ElementId> = m.images().collect();
    images.into_iter().all(|top| {
        let img = l.down_interval(top);
        comp.iter().any(|&x| {
            let source = l.down_interval(x);
            if source.len() != img.len() {
                return false;
            }
            l.complements_of(x).iter().any(|&xp| {
                interval_isos(source.lattice(), img.lattice())
                    .into_iter()
                    .any(|theta| {
                        let map: Vec<ElementId> = l
                            .elements()
                            .map(|z| {
                                let t = source
                                    .to_sub(l.meet(l.join(z, xp), x))
                                    .expect("(z ∨ x') ∧ x ≤ x");
                                img.to_parent(theta[t.index()])
                            })
                            .collect();
                        m.index_of(&map).is_some()
                    })
            })
        })
    })
}

fn ricd2(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    equivalent(
        "Rickart",
        c.holds(Property::Rickart),
        "𝔪-D2 ∧ images iso to complements",
        c.holds(Property::MD2) && image_to_complement(&c.m),
    )
}

fn dricc2(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    equivalent(
        "dual-Rickart",
        c.holds(Property::DualRickart),
        "𝔪-C2 ∧ complements iso to images",
        c.holds(Property::MC2) && complement_to_image(&c.m),
    )
}

fn kercompkergenann(s: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    let l = &s.lattice;
    let m = &c.m;
    for (i, phi) in m.members().iter().enumerate() {
        let k = phi.kernel();
        let right = m.right_annihilator(&[i]).principal_idempotent.is_some();
        let rhs = props::is_generated(m, k) && right;
        if l.is_complemented(k) != rhs {
            return Outcome::Fail(format!(
                "φ = {:?}: kernel complemented {} but generated ∧ principal {}",
                phi.table(),
                l.is_complemented(k),
                rhs
            ));
        }
    }
    Outcome::Pass
}

fn imcompintkercogen(s: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    let l = &s.lattice;
    let m = &c.m;
    for (i, phi) in m.members().iter().enumerate() {
        let top = phi.image_top();
        let left = m.left_annihilator(&[i]).principal_idempotent.is_some();
        let rhs = props::is_cogenerated(m, top) && left;
        if l.is_complemented(top) != rhs {
            return Outcome::Fail(format!(
                "φ = {:?}: image complemented {} but cogenerated ∧ principal {}",
                phi.table(),
                l.is_complemented(top),
                rhs
            ));
        }
    }
    Outcome::Pass
}

fn baercar_k(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    equivalent(
        "K-nonsingular ∧ C1",
        c.holds(Property::K) && c.holds(Property::C1),
        "Baer ∧ K-cononsingular",
        c.holds(Property::Baer) && c.holds(Property::KCo),
    )
}

fn dbaercar_t(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    equivalent(
        "T-nonsingular ∧ D1",
        c.holds(Property::T) && c.holds(Property::D1),
        "dual-Baer ∧ T-cononsingular",
        c.holds(Property::DualBaer) && c.holds(Property::TCo),
    )
}

fn acc_rickart_eq_baer(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    all_of([
        equivalent(
            "Rickart",
            c.holds(Property::Rickart),
            "Baer",
            c.holds(Property::Baer),
        ),
        equivalent(
            "dual-Rickart",
            c.holds(Property::DualRickart),
            "dual-Baer",
            c.holds(Property::DualBaer),
        ),
    ])
}

/// The largest submonoid `𝔫` of `End_lin([0, a])` whose extensions along a
/// fixed complement `a'` all lie in `m`.
pub(crate) struct Restriction {
    pub a: ElementId,
    pub complement: ElementId,
    pub interval: Arc<Lattice>,
    pub members: Vec<LinearMorphism>,
}

pub(crate) fn restrictions(m: &EndoMonoid, limits: &Limits) -> Vec<Restriction> {
    let l = m.lattice();
    let mut out = Vec::new();
    for a in l.complemented_elements() {
        let iv = l.down_interval(a);
        let Ok(local) = enumerate_linmors(iv.lattice(), iv.lattice(), limits) else {
            continue;
        };
        for &ap in l.complements_of(a) {
            let members = local
                .iter()
                .filter(|psi| {
                    linmor::extend_from_interval(l, &iv, &iv, psi, ap)
                        .map(|ext| m.index_of(ext.map()).is_some())
                        .unwrap_or(false)
                })
                .cloned()
                .collect();
            out.push(Restriction {
                a,
                complement: ap,
                interval: iv.lattice().clone(),
                members,
            });
        }
    }
    out
}

fn restricted_family(
    s: &Subject,
    c: &MonoidCtx,
    premise: Property,
    label: &str,
    ok: impl Fn(&Restriction) -> bool,
) -> Outcome {
    if !c.holds(premise) {
        return Outcome::Pass;
    }
    let l = &s.lattice;
    for r in c.restricted(s.limits()) {
        if !ok(r) {
            return Outcome::Fail(format!(
                "[0, {}] along {} is not {label} for its restricted monoid ({} members)",
                l.name_of(r.a),
                l.name_of(r.complement),
                r.members.len()
            ));
        }
    }
    Outcome::Pass
}

fn compintric(s: &Subject, c: &MonoidCtx) -> Outcome {
    all_of([
        restricted_family(s, c, Property::Rickart, "Rickart", |r| {
            r.members
                .iter()
                .all(|f| r.interval.is_complemented(f.kernel()))
        }),
        restricted_family(s, c, Property::DualRickart, "dual-Rickart", |r| {
            r.members
                .iter()
                .all(|f| r.interval.is_complemented(f.image_top()))
        }),
    ])
}

fn complbaer(s: &Subject, c: &MonoidCtx) -> Outcome {
    restricted_family(s, c, Property::Baer, "Baer", |r| {
        let i = &r.interval;
        closure(i, i.top(), r.members.iter().map(|f| f.kernel()), false)
            .into_iter()
            .all(|k| i.is_complemented(k))
    })
}

fn compldbaer(s: &Subject, c: &MonoidCtx) -> Outcome {
    restricted_family(s, c, Property::DualBaer, "dual-Baer", |r| {
        let i = &r.interval;
        closure(i, i.bottom(), r.members.iter().map(|f| f.image_top()), true)
            .into_iter()
            .all(|k| i.is_complemented(k))
    })
}

fn c1_kco(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    implication(
        "C1",
        c.holds(Property::C1),
        "K-cononsingular",
        c.holds(Property::KCo),
    )
}

fn d1_tco(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    implication(
        "D1",
        c.holds(Property::D1),
        "T-cononsingular",
        c.holds(Property::TCo),
    )
}

fn kc1_baer(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    implication(
        "K-nonsingular ∧ C1",
        c.holds(Property::K) && c.holds(Property::C1),
        "Baer",
        c.holds(Property::Baer),
    )
}

fn td1_dbaer(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    implication(
        "T-nonsingular ∧ D1",
        c.holds(Property::T) && c.holds(Property::D1),
        "dual-Baer",
        c.holds(Property::DualBaer),
    )
}

fn rickart_k(_: &Subject, c: &MonoidCtx) -> Outcome {
    implication(
        "Rickart",
        c.holds(Property::Rickart),
        "K-nonsingular",
        c.holds(Property::K),
    )
}

fn drickart_t(_: &Subject, c: &MonoidCtx) -> Outcome {
    implication(
        "dual-Rickart",
        c.holds(Property::DualRickart),
        "T-nonsingular",
        c.holds(Property::T),
    )
}

fn baer_kco_c1(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    implication(
        "Baer ∧ K-cononsingular",
        c.holds(Property::Baer) && c.holds(Property::KCo),
        "C1",
        c.holds(Property::C1),
    )
}

fn dbaer_tco_d1(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    implication(
        "dual-Baer ∧ T-cononsingular",
        c.holds(Property::DualBaer) && c.holds(Property::TCo),
        "D1",
        c.holds(Property::D1),
    )
}

fn baer_symmetry(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    equivalent(
        "left Baer monoid",
        c.holds(Property::LeftBaer),
        "right Baer monoid",
        c.holds(Property::RightBaer),
    )
}

fn rickpix(_: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    let v = guard!(props::check_rickpix(&c.m).map_err(|e| Outcome::Skip(e.to_string())));
    if v.holds {
        Outcome::Pass
    } else {
        Outcome::Fail(format!(
            "Rickart is {:?} but the projection criterion is {:?}",
            v.witness_flag("rickart"),
            v.witness_flag("projection_condition")
        ))
    }
}

/// For each `a`, the `b` admitting `θ: [a, 1] ≅ [0, b]` with `ι_b θ ρ_a ∈ m`.
fn iso_targets(m: &EndoMonoid) -> Vec<Vec<ElementId>> {
    let l = m.lattice();
    l.elements()
        .map(|a| {
            let up = l.up_interval(a);
            l.elements()
                .filter(|&b| {
                    let down = l.down_interval(b);
                    down.len() == up.len()
                        && interval_isos(up.lattice(), down.lattice())
                            .into_iter()
                            .any(|theta| {
                                let map: Vec<ElementId> = l
                                    .elements()
                                    .map(|y| {
                                        let t = up.to_sub(l.join(y, a)).expect("y ∨ a ≥ a");
                                        down.to_parent(theta[t.index()])
                                    })
                                    .collect();
                                m.index_of(&map).is_some()
                            })
                })
                .collect()
        })
        .collect()
}

fn boolean_char_exists(s: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    let targets = iso_targets(&c.m);
    equivalent(
        "Rickart ∧ every a has some b",
        c.holds(Property::Rickart) && targets.iter().all(|t| !t.is_empty()),
        "complemented",
        s.lattice.is_complemented_lattice(),
    )
}

fn boolean_char_unique(s: &Subject, c: &MonoidCtx) -> Outcome {
    guard!(projections(c));
    let l = &s.lattice;
    let targets = iso_targets(&c.m);
    implication(
        "Rickart ∧ every a has exactly one b",
        c.holds(Property::Rickart) && targets.iter().all(|t| t.len() == 1),
        "Boolean",
        l.is_distributive().holds && l.is_complemented_lattice(),
    )
}

// ---------------------------------------------------------------------------
// Pair scope
// ---------------------------------------------------------------------------

fn cross(l: &Arc<Lattice>, m: &Arc<Lattice>, limits: &Limits) -> Result<bool, Outcome> {
    cap(props::check_cross_rickart(l, m, limits)).map(|v| v.holds)
}

fn prod_projections_linear(a: &Subject, b: &Subject, limits: &Limits) -> Outcome {
    let factors = [a.lattice.clone(), b.lattice.clone()];
    let p = guard!(cap(direct_product(&factors, limits.max_lattice)));
    for (i, f) in factors.iter().enumerate() {
        let map = p.lattice().elements().map(|x| p.coords(x)[i]).collect();
        if let Err(e) = LinearMorphism::new(p.lattice().clone(), f.clone(), map) {
            return Outcome::Fail(format!("projection onto factor {i} is not linear: {e}"));
        }
    }
    Outcome::Pass
}

fn prod_rickart_pairs(a: &Subject, b: &Subject, limits: &Limits) -> Outcome {
    let (l, m) = (&a.lattice, &b.lattice);
    let p = guard!(cap(direct_product(
        &[l.clone(), m.clone()],
        limits.max_lattice
    )));
    let product = guard!(cross(p.lattice(), p.lattice(), limits));
    let mut factors = true;
    for x in [l, m] {
        for y in [l, m] {
            factors &= guard!(cross(x, y, limits));
        }
    }
    equivalent(
        "L × M Rickart",
        product,
        "each factor Rickart for each factor",
        factors,
    )
}

fn ricdirsumsub(a: &Subject, b: &Subject, limits: &Limits) -> Outcome {
    let (l, m) = (&a.lattice, &b.lattice);
    if !guard!(cross(l, m, limits)) {
        return Outcome::Pass;
    }
    for x in l.complemented_elements() {
        let lx = l.down_interval(x);
        for y in m.elements() {
            let my = m.down_interval(y);
            if !guard!(cross(lx.lattice(), my.lattice(), limits)) {
                return Outcome::Fail(format!(
                    "[0, {}] is not [0, {}]-Rickart",
                    l.name_of(x),
                    m.name_of(y)
                ));
            }
        }
    }
    Outcome::Pass
}

fn cross_decomposition(a: &Subject, b: &Subject, limits: &Limits) -> Outcome {
    let (l, m) = (&a.lattice, &b.lattice);
    if !props::check_summand_property(l, SummandKind::Cip).holds {
        return Outcome::Skip("L lacks CIP".into());
    }
    let whole = guard!(cross(l, m, limits));
    for family in b.families() {
        let mut parts = true;
        for &x in family {
            parts &= guard!(cross(l, m.down_interval(x).lattice(), limits));
        }
        if parts != whole {
            return Outcome::Fail(format!(
                "family {} of M: L M-Rickart is {whole}, per-block is {parts}",
                names(m, family)
            ));
        }
    }
    Outcome::Pass
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

const fn lattice(id: &'static str, claim: &'static str, f: fn(&Subject) -> Outcome) -> Check {
    Check {
        id,
        claim,
        runner: Runner::Lattice(f),
    }
}

const fn monoid(
    id: &'static str,
    claim: &'static str,
    f: fn(&Subject, &MonoidCtx) -> Outcome,
) -> Check {
    Check {
        id,
        claim,
        runner: Runner::Monoid(f),
    }
}

const fn pair(
    id: &'static str,
    claim: &'static str,
    f: fn(&Subject, &Subject, &Limits) -> Outcome,
) -> Check {
    Check {
        id,
        claim,
        runner: Runner::Pair(f),
    }
}

pub(super) fn all() -> Vec<Check> {
    vec![
        // Linear morphisms and decompositions.
        lattice("kerpi", "ker(π_y ∘ π_x) = (x ∧ y') ∨ x'", kerpi),
        lattice("idemcomp", "φ idempotent ⇒ ker φ ∧ φ(1) = 0, ker φ ∨ φ(1) = 1", idemcomp),
        lattice("isolin", "θ: [a,1] ≅ [0,x] ⇒ ι_x θ ρ_a linear with kernel a", isolin),
        lattice("splits", "a complemented ⟺ ι_a splits ⟺ ρ_a splits", splits),
        lattice("boolean_meetmaps", "Boolean ⟺ every a ∧ _ linear", boolean_meetmaps),
        lattice("lemmaret", "a ∧ b = 0, (a ∨ b) ∧ c = 0 ⇒ a ∧ (b ∨ c) = 0", lemmaret),
        lattice("fipi1", "independent {a_i}, ⋁a_i = 1 ⇒ x ≤ ⋁π_{a_i}(x)", fipi1),
        lattice("fidis", "x fully invariant ⇒ x = ⋁(x ∧ a_i), π_{a_i}(x) = x ∧ a_i", fidis),
        // Rickart and Baer conditions relative to a monoid.
        monoid("riccipssp", "Rickart ⇒ CIP; dual-Rickart ⇒ CSP", riccipssp),
        monoid("baerricscip", "Rickart ∧ SCIP ⟺ Baer; dual-Rickart ∧ SCSP ⟺ dual-Baer", baerricscip),
        monoid("acc_rickart_eq_baer", "finite ⇒ (Rickart ⟺ Baer) and (dual-Rickart ⟺ dual-Baer)", acc_rickart_eq_baer),
        monoid("compintric", "(dual-)Rickart ⇒ [0,a] (dual-)Rickart for the restricted monoid", compintric),
        monoid("complbaer", "Baer ⇒ [0,x] Baer for the restricted monoid", complbaer),
        monoid("compldbaer", "dual-Baer ⇒ [0,x] dual-Baer for the restricted monoid", compldbaer),
        monoid("rickpix", "Rickart ⟺ ∀φ ∃ complemented x: φ = φπ_x, x ∧ ker φ = 0", rickpix),
        monoid("ricd2", "Rickart ⟺ 𝔪-D2 ∧ ∀φ: [0,φ(1)] ≅ [0,x], x complemented, ι_x θ φ ∈ 𝔪", ricd2),
        monoid("dricc2", "dual-Rickart ⟺ 𝔪-C2 ∧ ∀φ: [0,x] ≅ [0,φ(1)] with the composite in 𝔪", dricc2),
        monoid("kercompkergenann", "ker φ complemented ⟺ ker φ generated ∧ right annihilator = ε𝔪", kercompkergenann),
        monoid("imcompintkercogen", "φ(1) complemented ⟺ φ(1) cogenerated ∧ left annihilator = 𝔪ε", imcompintkercogen),
        monoid("ricendoric", "Rickart ⟺ right Rickart monoid ∧ retractable ⟺ right Rickart monoid ∧ kernels generated", ricendoric),
        monoid("dricendodric", "dual-Rickart ⟺ left Rickart monoid ∧ images cogenerated", dricendodric),
        monoid("baer_symmetry", "left Baer monoid ⟺ right Baer monoid", baer_symmetry),
        monoid("baercar", "Baer ⟺ ∀a: {φ : φ(a) = 0} = 𝔪ε ⟺ Baer monoid ∧ kernel meets generated", baercar),
        monoid("dbaercar", "dual-Baer ⟺ ∀a: {φ : φ(1) ≤ a} = ε𝔪 ⟺ Baer monoid ∧ image joins cogenerated", dbaercar),
        monoid("boolean_char_exists", "Rickart ∧ ∀a ∃b: ι_b θ ρ_a ∈ 𝔪 ⟺ complemented", boolean_char_exists),
        monoid("boolean_char_unique", "Rickart ∧ ∀a ∃!b: ι_b θ ρ_a ∈ 𝔪 ⇒ Boolean", boolean_char_unique),
        // Nonsingularity.
        monoid("c1_kco", "C1 ⇒ K-cononsingular", c1_kco),
        monoid("d1_tco", "D1 ⇒ T-cononsingular", d1_tco),
        monoid("kc1_baer", "K-nonsingular ∧ C1 ⇒ Baer", kc1_baer),
        monoid("td1_dbaer", "T-nonsingular ∧ D1 ⇒ dual-Baer", td1_dbaer),
        monoid("rickart_k", "Rickart ⇒ K-nonsingular", rickart_k),
        monoid("drickart_t", "dual-Rickart ⇒ T-nonsingular", drickart_t),
        monoid("baer_kco_c1", "Baer ∧ K-cononsingular ⇒ C1", baer_kco_c1),
        monoid("dbaer_tco_d1", "dual-Baer ∧ T-cononsingular ⇒ D1", dbaer_tco_d1),
        monoid("baercarK", "K-nonsingular ∧ C1 ⟺ Baer ∧ K-cononsingular", baercar_k),
        monoid("dbaercarT", "T-nonsingular ∧ D1 ⟺ dual-Baer ∧ T-cononsingular", dbaercar_t),
        // Summands, C(L) and decompositions, for End_lin(L).
        lattice("cl_complemented", "Baer or dual-Baer ⇒ C(L) a complemented lattice", cl_complemented),
        lattice("boolean_cl", "C(L) sublattice ⇒ (π_x(y) = π_y(x) = x ∧ y on C(L) ⟺ C(L) Boolean)", boolean_cl),
        lattice("fi_extension", "x fully invariant, L Rickart, every End_lin([0,x]) map extends ⇒ [0,x] Rickart", fi_extension),
        lattice("ricind2", "Soc ≠ 0, Rad ≠ 1 ⇒ (indecomposable ∧ Rickart ⟺ L ≅ 2)", ricind2),
        lattice("if2", "Rickart ⟺ independent family of atoms joining to 1", if2),
        lattice("sumric", "independent {a_i}, ⋁a_i = 1 ⇒ (Rickart ⟺ all [0,a_i] Rickart)", sumric),
        lattice("decomp_fi", "fully invariant independent {a_i}, ⋁a_i = 1 ⇒ (Rickart ⟺ all [0,a_i] Rickart)", decomp_fi),
        // Products and cross-lattice Rickart.
        pair("prod_projections_linear", "coordinate projections of L × M are linear", prod_projections_linear),
        pair("prod_rickart_pairs", "L × M Rickart ⟺ L_i is L_j-Rickart for all i, j", prod_rickart_pairs),
        pair("ricdirsumsub", "L M-Rickart, a ∈ C(L), x ∈ M ⇒ [0,a] is [0,x]-Rickart", ricdirsumsub),
        pair("cross_decomposition", "L has CIP ⇒ (L M-Rickart ⟺ L [0,a_i]-Rickart for all i)", cross_decomposition),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn families_of_b2_and_m3() {
        let b2 = fixtures::b2();
        // {1} and the two atoms.
        assert_eq!(independent_families(&b2).len(), 2);
        let m3 = fixtures::m3();
        // {1} and the three pairs of atoms.
        assert_eq!(independent_families(&m3).len(), 4);
        let trivial = fixtures::trivial();
        assert_eq!(
            independent_families(&trivial),
            vec![Vec::<ElementId>::new()]
        );
    }

    #[test]
    fn closure_of_kernels() {
        let m3 = fixtures::m3();
        let atoms = m3.atoms().to_vec();
        let meets = closure(&m3, m3.top(), atoms.iter().copied(), false);
        assert_eq!(meets.len(), 5);
    }

    #[test]
    fn induced_order_checks() {
        let ex = fixtures::excip();
        assert!(induced_complemented_lattice(&ex, &ex.complemented_elements()).is_ok());
        let c3 = fixtures::c3();
        let all: Vec<ElementId> = c3.elements().collect();
        assert!(induced_complemented_lattice(&c3, &all).is_err());
    }

    #[test]
    fn boolean_char_unique_fails_in_reverse_for_b2() {
        // In B2 the full monoid serves an atom by both atoms, so uniqueness
        // is not implied by being Boolean.
        let b2 = Arc::new(fixtures::b2());
        let m = EndoMonoid::full(&b2, &Limits::default()).unwrap();
        let targets = iso_targets(&m);
        let a = b2.atoms()[0];
        assert_eq!(targets[a.index()].len(), 2);
    }
}
