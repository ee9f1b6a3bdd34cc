use serde::Serialize;

use super::{ElementId, Lattice};
use crate::error::LatticeError;

/// An independent family joining to the top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub blocks: Vec<ElementId>,
    pub independent: bool,
}

/// `a_i ∧ ⋁_{j≠i} a_j = 0` for every `i`.
pub fn is_independent(l: &Lattice, blocks: &[ElementId]) -> bool {
    (0..blocks.len()).all(|i| {
        let rest = l.join_all(
            blocks
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &b)| b),
        );
        l.meet(blocks[i], rest) == l.bottom()
    })
}

impl Lattice {
    /// Splits the lattice into indecomposable blocks.
    ///
    /// `[0, x]` is split along the first pair `a < b` in index order with
    /// `a ∧ b = 0`, `a ∨ b = x` and `a ∉ {0, x}`; the `a` side is expanded
    /// first. Other decompositions may exist; this one is deterministic.
    pub fn decompose(&self) -> Result<Decomposition, LatticeError> {
        self.require_modular()?;
        let mut blocks = Vec::new();
        if self.len() > 1 {
            self.split_into(self.top(), &mut blocks);
        }
        let independent = is_independent(self, &blocks);
        Ok(Decomposition {
            blocks,
            independent,
        })
    }

    /// First nontrivial complemented pair of `[0, x]`, if any.
    pub fn relative_split(&self, x: ElementId) -> Option<(ElementId, ElementId)> {
        let below: Vec<ElementId> = self.down_set(x).ones().map(ElementId::new).collect();
        for &a in &below {
            if a == self.bottom() || a == x {
                continue;
            }
            for &b in &below {
                if self.meet(a, b) == self.bottom() && self.join(a, b) == x {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn split_into(&self, x: ElementId, out: &mut Vec<ElementId>) {
        match self.relative_split(x) {
            None => out.push(x),
            Some((a, b)) => {
                self.split_into(a, out);
                self.split_into(b, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn block_names(l: &Lattice) -> Vec<String> {
        l.decompose()
            .unwrap()
            .blocks
            .iter()
            .map(|&b| l.name_of(b).to_string())
            .collect()
    }

    #[test]
    fn known_decompositions() {
        assert_eq!(block_names(&fixtures::b2()), ["a", "b"]);
        assert_eq!(block_names(&fixtures::c3()), ["1"]);
        assert_eq!(block_names(&fixtures::b3()), ["a", "b", "c"]);
        assert!(block_names(&fixtures::trivial()).is_empty());
    }

    #[test]
    fn blocks_are_independent_and_indecomposable() {
        for l in fixtures::modular_corpus() {
            let d = l.decompose().unwrap();
            assert!(d.independent);
            if l.len() > 1 {
                assert_eq!(l.join_all(d.blocks.iter().copied()), l.top());
            }
            for &b in &d.blocks {
                assert!(l.relative_split(b).is_none());
            }
        }
    }

    #[test]
    fn pentagon_is_refused() {
        assert!(matches!(
            fixtures::n5().decompose(),
            Err(LatticeError::NotModular(..))
        ));
    }
}
