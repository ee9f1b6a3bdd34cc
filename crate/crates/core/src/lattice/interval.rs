use std::sync::Arc;

use super::{ElementId, Lattice};
use crate::error::LatticeError;

const NOT_MEMBER: u32 = u32::MAX;

/// The interval `[lo, hi]` of a parent lattice, re-indexed as a lattice of
/// its own.
///
/// Sub-lattice ids follow the sub-lattice's canonical order; `members` maps
/// them back to parent ids. Element names are inherited from the parent.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: ElementId,
    hi: ElementId,
    members: Vec<ElementId>,
    to_sub: Vec<u32>,
    lattice: Arc<Lattice>,
}

impl Interval {
    pub fn new(parent: &Lattice, lo: ElementId, hi: ElementId) -> Result<Interval, LatticeError> {
        if !parent.leq(lo, hi) {
            return Err(LatticeError::NotComparable(
                parent.name_of(lo).into(),
                parent.name_of(hi).into(),
            ));
        }
        let mut span = parent.up_set(lo).clone();
        span.intersect_with(parent.down_set(hi));
        let local: Vec<ElementId> = span.ones().map(ElementId::new).collect();
        let names = local
            .iter()
            .map(|&x| parent.name_of(x).to_string())
            .collect();
        let name = format!(
            "{}[{},{}]",
            parent.name(),
            parent.name_of(lo),
            parent.name_of(hi)
        );
        let (lattice, perm) =
            Lattice::from_relation(name, names, |i, j| parent.leq(local[i], local[j]))?;
        let members: Vec<ElementId> = perm.iter().map(|&old| local[old]).collect();
        let mut to_sub = vec![NOT_MEMBER; parent.len()];
        for (i, &x) in members.iter().enumerate() {
            to_sub[x.index()] = i as u32;
        }
        Ok(Interval {
            lo,
            hi,
            members,
            to_sub,
            lattice: Arc::new(lattice),
        })
    }

    pub fn lo(&self) -> ElementId {
        self.lo
    }

    pub fn hi(&self) -> ElementId {
        self.hi
    }

    /// Parent ids indexed by sub-lattice id.
    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false: an interval contains at least its ends.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.to_sub[x.index()] != NOT_MEMBER
    }

    /// Sub-lattice id of a parent element inside the interval.
    pub fn to_sub(&self, x: ElementId) -> Option<ElementId> {
        match self.to_sub[x.index()] {
            NOT_MEMBER => None,
            i => Some(ElementId(i)),
        }
    }

    pub fn to_parent(&self, x: ElementId) -> ElementId {
        self.members[x.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn member_names(l: &Lattice, iv: &Interval) -> Vec<String> {
        iv.members()
            .iter()
            .map(|&x| l.name_of(x).to_string())
            .collect()
    }

    #[test]
    fn lower_interval_of_excip_is_a_chain() {
        let ex = fixtures::excip();
        let iv = ex.interval(ex.bottom(), ex.id("a").unwrap()).unwrap();
        assert_eq!(member_names(&ex, &iv), ["0", "k", "a"]);
        assert_eq!(iv.lattice().height(), 2);
    }

    #[test]
    fn upper_interval_of_k() {
        let ex = fixtures::excip();
        let iv = ex.up_interval(ex.id("k").unwrap());
        let mut names = member_names(&ex, &iv);
        names.sort();
        assert_eq!(names, ["1", "a", "a∨c", "c", "c∨b", "k"]);
        for (i, &x) in iv.members().iter().enumerate() {
            assert_eq!(iv.to_sub(x), Some(ElementId::new(i)));
            for (j, &y) in iv.members().iter().enumerate() {
                assert_eq!(
                    iv.lattice().leq(ElementId::new(i), ElementId::new(j)),
                    ex.leq(x, y)
                );
            }
        }
        assert_eq!(iv.to_sub(ex.bottom()), None);
    }

    #[test]
    fn degenerate_and_reversed() {
        let m3 = fixtures::m3();
        let a = m3.id("a").unwrap();
        assert_eq!(m3.interval(a, a).unwrap().len(), 1);
        assert!(matches!(
            m3.interval(m3.top(), a),
            Err(LatticeError::NotComparable(..))
        ));
    }
}
