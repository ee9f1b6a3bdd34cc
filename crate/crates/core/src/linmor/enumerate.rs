use std::sync::Arc;

use rayon::prelude::*;

use super::LinearMorphism;
use crate::error::{LatticeError, MorphismError};
use crate::lattice::{ElementId, Interval, Lattice};
use crate::limits::Limits;

/// Every order isomorphism `a → b`, as forward tables in lexicographic
/// order.
///
/// Elements of `a` are assigned in canonical order; a candidate must share
/// the (rank, cover degrees) signature and agree with every earlier
/// assignment on the order relation in both directions.
pub fn interval_isos(a: &Lattice, b: &Lattice) -> Vec<Vec<ElementId>> {
    let mut out = Vec::new();
    if a.len() != b.len() || a.profile() != b.profile() {
        return out;
    }
    let mut forward = Vec::with_capacity(a.len());
    let mut used = vec![false; b.len()];
    extend(a, b, &mut forward, &mut used, &mut out);
    out
}

fn extend(
    a: &Lattice,
    b: &Lattice,
    forward: &mut Vec<ElementId>,
    used: &mut [bool],
    out: &mut Vec<Vec<ElementId>>,
) {
    let i = forward.len();
    if i == a.len() {
        out.push(forward.clone());
        return;
    }
    let x = ElementId::new(i);
    let sig = a.signature(x);
    for y in b.elements() {
        if used[y.index()] || b.signature(y) != sig {
            continue;
        }
        let consistent = forward.iter().enumerate().all(|(j, &fy)| {
            let z = ElementId::new(j);
            a.leq(z, x) == b.leq(fy, y) && a.leq(x, z) == b.leq(y, fy)
        });
        if !consistent {
            continue;
        }
        used[y.index()] = true;
        forward.push(y);
        extend(a, b, forward, used, out);
        forward.pop();
        used[y.index()] = false;
    }
}

/// An order isomorphism between two intervals, stored in sub-lattice ids.
#[derive(Clone, Debug)]
pub struct IntervalIso {
    pub source: Arc<Interval>,
    pub target: Arc<Interval>,
    pub forward: Vec<ElementId>,
    pub backward: Vec<ElementId>,
}

impl IntervalIso {
    /// Image of a parent element of the source interval, as a parent
    /// element of the target.
    pub fn apply(&self, x: ElementId) -> ElementId {
        let sub = self.source.to_sub(x).expect("argument lies in the source");
        self.target.to_parent(self.forward[sub.index()])
    }

    pub fn apply_inverse(&self, y: ElementId) -> ElementId {
        let sub = self.target.to_sub(y).expect("argument lies in the target");
        self.source.to_parent(self.backward[sub.index()])
    }
}

pub fn enumerate_interval_isos(a: &Arc<Interval>, b: &Arc<Interval>) -> Vec<IntervalIso> {
    interval_isos(a.lattice(), b.lattice())
        .into_iter()
        .map(|forward| {
            let mut backward = vec![ElementId(0); forward.len()];
            for (i, y) in forward.iter().enumerate() {
                backward[y.index()] = ElementId::new(i);
            }
            IntervalIso {
                source: a.clone(),
                target: b.clone(),
                forward,
                backward,
            }
        })
        .collect()
}

/// All linear morphisms `l → m`, sorted by map table.
///
/// Each one is `x ↦ θ(x ∨ k)` for a unique kernel `k`, image top `a` and
/// isomorphism `θ: [k, 1] → [0, a]`, so the triples are enumerated directly.
pub fn enumerate_linmors(
    l: &Arc<Lattice>,
    m: &Arc<Lattice>,
    limits: &Limits,
) -> Result<Vec<LinearMorphism>, MorphismError> {
    let size = l.len().max(m.len());
    if size > limits.max_enumeration {
        return Err(LatticeError::SizeLimitExceeded {
            size,
            limit: limits.max_enumeration,
        }
        .into());
    }
    let mut all: Vec<LinearMorphism> = l
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|k| {
            let upper = l.up_interval(k);
            let mut found = Vec::new();
            for a in m.elements() {
                let lower = m.down_interval(a);
                if lower.len() != upper.len() {
                    continue;
                }
                for theta in interval_isos(upper.lattice(), lower.lattice()) {
                    let map = l
                        .elements()
                        .map(|x| {
                            let s = upper.to_sub(l.join(x, k)).expect("x ∨ k ≥ k");
                            lower.to_parent(theta[s.index()])
                        })
                        .collect();
                    found.push(LinearMorphism::trusted(l.clone(), m.clone(), map, k, a));
                }
            }
            found
        })
        .collect();
    all.sort_by(|f, g| f.map().cmp(g.map()));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn diamond_has_six_automorphisms() {
        let m3 = fixtures::m3();
        let isos = interval_isos(&m3, &m3);
        assert_eq!(isos.len(), 6);
        let mut sorted = isos.clone();
        sorted.sort();
        assert_eq!(sorted, isos);
    }

    #[test]
    fn size_mismatch_gives_nothing() {
        assert!(interval_isos(&fixtures::c3(), &fixtures::two()).is_empty());
    }

    #[test]
    fn excip_upper_k_to_lower_a_join_c() {
        let ex = fixtures::excip();
        let up = ex.up_interval(ex.id("k").unwrap());
        let down = ex.down_interval(ex.id("a∨c").unwrap());
        let isos = enumerate_interval_isos(&up, &down);
        assert_eq!(isos.len(), 1);
        let theta = &isos[0];
        assert_eq!(theta.apply(ex.id("k").unwrap()), ex.bottom());
        for x in up.members() {
            assert_eq!(theta.apply_inverse(theta.apply(*x)), *x);
        }
    }

    #[test]
    fn small_endomorphism_counts() {
        let limits = Limits::default();
        for (l, count) in [
            (fixtures::two(), 2),
            (fixtures::c3(), 3),
            (fixtures::b2(), 7),
            (fixtures::m3(), 16),
        ] {
            let l = Arc::new(l);
            assert_eq!(enumerate_linmors(&l, &l, &limits).unwrap().len(), count);
        }
    }

    #[test]
    fn refuses_oversized_input() {
        let l = Arc::new(fixtures::excip());
        let limits = Limits::default().with_max_size(5);
        assert!(matches!(
            enumerate_linmors(&l, &l, &limits),
            Err(MorphismError::Lattice(
                LatticeError::SizeLimitExceeded { .. }
            ))
        ));
    }
}
