use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{MonoidError, MorphismError};
use crate::lattice::{ElementId, Lattice};
use crate::limits::Limits;
use crate::linmor::{self, LinearMorphism};
use crate::monoid::EndoMonoid;
use crate::verdict::Verdict;

/// The four kernel/image complementation conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RickartKind {
    Rickart,
    Baer,
    DualRickart,
    DualBaer,
}

impl RickartKind {
    pub const ALL: [RickartKind; 4] = [
        RickartKind::Rickart,
        RickartKind::Baer,
        RickartKind::DualRickart,
        RickartKind::DualBaer,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RickartKind::Rickart => "rickart",
            RickartKind::Baer => "baer",
            RickartKind::DualRickart => "dual_rickart",
            RickartKind::DualBaer => "dual_baer",
        }
    }

    fn dual(self) -> bool {
        matches!(self, RickartKind::DualRickart | RickartKind::DualBaer)
    }
}

/// Distinct values in first-occurrence order, each paired with the index
/// where it first appears.
fn first_occurrences(values: impl Iterator<Item = ElementId>) -> Vec<(ElementId, usize)> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for (i, v) in values.enumerate() {
        if seen.insert(v, i).is_none() {
            out.push((v, i));
        }
    }
    out
}

/// Breadth-first closure of `start` under `op` with the seeds. Returns the
/// first reached element failing `ok`, with the seed indices producing it.
fn closure_failure(
    start: ElementId,
    seeds: &[(ElementId, usize)],
    op: impl Fn(ElementId, ElementId) -> ElementId,
    ok: impl Fn(ElementId) -> bool,
) -> Result<usize, (ElementId, Vec<usize>)> {
    let mut reached: HashMap<ElementId, Vec<usize>> = HashMap::new();
    let mut queue = VecDeque::new();
    reached.insert(start, Vec::new());
    queue.push_back(start);
    while let Some(e) = queue.pop_front() {
        let gens = reached[&e].clone();
        if !ok(e) {
            return Err((e, gens));
        }
        for &(v, i) in seeds {
            let next = op(e, v);
            if let std::collections::hash_map::Entry::Vacant(slot) = reached.entry(next) {
                let mut g = gens.clone();
                g.push(i);
                slot.insert(g);
                queue.push_back(next);
            }
        }
    }
    Ok(reached.len())
}

/// 𝔪-Rickart, 𝔪-Baer and their duals.
///
/// Baer conditions range over every subset of `m`; the meets of kernels
/// (joins of images) over all subsets are exactly the closure of the
/// single values under `∧` (`∨`) starting from the empty meet `1` (join `0`).
pub fn check_rickart_family(m: &EndoMonoid, kind: RickartKind) -> Verdict {
    let l = m.lattice();
    let values: Vec<ElementId> = if kind.dual() {
        m.images().collect()
    } else {
        m.kernels().collect()
    };
    match kind {
        RickartKind::Rickart | RickartKind::DualRickart => {
            let key = if kind.dual() { "image" } else { "kernel" };
            for (i, &v) in values.iter().enumerate() {
                if !l.is_complemented(v) {
                    return Verdict::fail(kind.id())
                        .with(key, l.name_of(v))
                        .with("morphism", m.member(i).table())
                        .with("subset", vec![i]);
                }
            }
            Verdict::pass(kind.id())
        }
        RickartKind::Baer | RickartKind::DualBaer => {
            let seeds = first_occurrences(values.into_iter());
            let result = if kind.dual() {
                closure_failure(
                    l.bottom(),
                    &seeds,
                    |a, b| l.join(a, b),
                    |e| l.is_complemented(e),
                )
            } else {
                closure_failure(
                    l.top(),
                    &seeds,
                    |a, b| l.meet(a, b),
                    |e| l.is_complemented(e),
                )
            };
            let key = if kind.dual() {
                "image_join"
            } else {
                "kernel_meet"
            };
            match result {
                Ok(count) => Verdict::pass(kind.id())
                    .note(format!("{count} distinct {}s", key.replace('_', " "))),
                Err((e, subset)) => Verdict::fail(kind.id())
                    .with(key, l.name_of(e))
                    .with("subset", subset),
            }
        }
    }
}

/// Closure of C(L) under meets or joins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummandKind {
    Cip,
    Scip,
    Csp,
    Scsp,
}

impl SummandKind {
    pub fn id(self) -> &'static str {
        match self {
            SummandKind::Cip => "cip",
            SummandKind::Scip => "scip",
            SummandKind::Csp => "csp",
            SummandKind::Scsp => "scsp",
        }
    }
}

/// For a finite lattice the finite and arbitrary-family versions coincide,
/// since any family of complements has a finite subfamily with the same
/// meet (join), and the empty family gives `1` (`0`).
pub fn check_summand_property(l: &Lattice, kind: SummandKind) -> Verdict {
    let meets = matches!(kind, SummandKind::Cip | SummandKind::Scip);
    let c = l.complemented_elements();
    for (i, &x) in c.iter().enumerate() {
        for &y in &c[i + 1..] {
            let z = if meets { l.meet(x, y) } else { l.join(x, y) };
            if !l.is_complemented(z) {
                let key = if meets { "meet" } else { "join" };
                return Verdict::fail(kind.id())
                    .with(
                        "pair",
                        vec![l.name_of(x).to_string(), l.name_of(y).to_string()],
                    )
                    .with(key, l.name_of(z));
            }
        }
    }
    Verdict::pass(kind.id())
}

/// `L` is `M`-Rickart when every linear `L → M` has a complemented kernel.
pub fn check_cross_rickart(
    l: &Arc<Lattice>,
    target: &Arc<Lattice>,
    limits: &Limits,
) -> Result<Verdict, MorphismError> {
    let all = linmor::enumerate_linmors(l, target, limits)?;
    let count = all.len();
    for f in all {
        if !l.is_complemented(f.kernel()) {
            return Ok(Verdict::fail("cross_rickart")
                .with("kernel", l.name_of(f.kernel()))
                .with("morphism", f.table())
                .note(format!("{} → {}", l.name(), target.name())));
        }
    }
    Ok(Verdict::pass("cross_rickart").note(format!(
        "{count} linear morphisms {} → {}",
        l.name(),
        target.name()
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenerationKind {
    Generated,
    Cogenerated,
}

/// `⋁{ξ(1) : ξ ∈ m, ξ(1) ≤ x}`, the part of `x` generated by `m`.
pub fn generated_part(m: &EndoMonoid, x: ElementId) -> ElementId {
    let l = m.lattice();
    l.join_all(m.images().filter(|&i| l.leq(i, x)))
}

/// `⋀{ker ξ : ξ ∈ m, x ≤ ker ξ}`, the cogenerated hull of `x`.
pub fn cogenerated_hull(m: &EndoMonoid, x: ElementId) -> ElementId {
    let l = m.lattice();
    l.meet_all(m.kernels().filter(|&k| l.leq(x, k)))
}

pub fn is_generated(m: &EndoMonoid, x: ElementId) -> bool {
    generated_part(m, x) == x
}

pub fn is_cogenerated(m: &EndoMonoid, x: ElementId) -> bool {
    cogenerated_hull(m, x) == x
}

/// Whether `x` is 𝔪-L-generated or 𝔪-L-cogenerated.
///
/// Every `ψ ∈ m` with `ψ(1) ≤ x` factors through `[0, x]`, and every `ψ`
/// with `x ≤ ker ψ` factors through `ρ_x`, so scanning members suffices.
pub fn check_generation(m: &EndoMonoid, x: ElementId, kind: GenerationKind) -> Verdict {
    let l = m.lattice();
    let (id, value) = match kind {
        GenerationKind::Generated => ("generated", generated_part(m, x)),
        GenerationKind::Cogenerated => ("cogenerated", cogenerated_hull(m, x)),
    };
    Verdict::new(id, value == x)
        .with("element", l.name_of(x))
        .with("reached", l.name_of(value))
}

/// Every element satisfies [`check_generation`]; reports the first failure.
pub fn check_generation_all(m: &EndoMonoid, kind: GenerationKind) -> Verdict {
    let l = m.lattice();
    for x in l.elements() {
        let v = check_generation(m, x, kind);
        if !v.holds {
            return v;
        }
    }
    Verdict::new(
        match kind {
            GenerationKind::Generated => "generated",
            GenerationKind::Cogenerated => "cogenerated",
        },
        true,
    )
}

/// ∀φ ∈ m, ∀b ≤ ker φ, ∃ξ ∈ m with `b ≤ ξ(1) ≤ ker φ`.
pub fn check_retractable(m: &EndoMonoid) -> Verdict {
    let l = m.lattice();
    let images: Vec<ElementId> = first_occurrences(m.images())
        .into_iter()
        .map(|p| p.0)
        .collect();
    for (k, i) in first_occurrences(m.kernels()) {
        for b in l.down_set(k).ones().map(ElementId::new) {
            let served = images.iter().any(|&y| l.leq(b, y) && l.leq(y, k));
            if !served {
                return Verdict::fail("retractable")
                    .with("morphism", m.member(i).table())
                    .with("kernel", l.name_of(k))
                    .with("below_kernel", l.name_of(b));
            }
        }
    }
    Verdict::pass("retractable")
}

/// A complemented `x` with complement `x'` such that `φ = φ ∘ π_x` and
/// `x ∧ ker φ = 0`.
pub fn rickpix_certificate(m: &EndoMonoid, phi: &LinearMorphism) -> Option<(ElementId, ElementId)> {
    let l = m.lattice();
    for x in l.elements() {
        if l.meet(x, phi.kernel()) != l.bottom() {
            continue;
        }
        for &xp in l.complements_of(x) {
            let factors = l
                .elements()
                .all(|z| phi.apply(l.meet(l.join(z, xp), x)) == phi.apply(z));
            if factors {
                return Some((x, xp));
            }
        }
    }
    None
}

/// Agreement of the Rickart verdict with the projection factorization
/// criterion. Both sides are reported; `holds` means they agree.
pub fn check_rickpix(m: &EndoMonoid) -> Result<Verdict, MonoidError> {
    m.require_projections()?;
    let l = m.lattice();
    let rickart = check_rickart_family(m, RickartKind::Rickart).holds;
    let mut failing = None;
    for (i, phi) in m.members().iter().enumerate() {
        if rickpix_certificate(m, phi).is_none() {
            failing = Some(i);
            break;
        }
    }
    let condition = failing.is_none();
    let mut v = Verdict::new("rickpix", rickart == condition)
        .with("rickart", rickart)
        .with("projection_condition", condition);
    if let Some(i) = failing {
        v = v
            .with("morphism", m.member(i).table())
            .with("kernel", l.name_of(m.member(i).kernel()));
    }
    Ok(v)
}
