use std::sync::Arc;

use super::{ElementId, Lattice};
use crate::error::LatticeError;
use crate::linmor::LinearMorphism;

/// A direct product together with the coordinates of each of its elements.
#[derive(Clone, Debug)]
pub struct Product {
    lattice: Arc<Lattice>,
    factors: Vec<Arc<Lattice>>,
    coords: Vec<Vec<ElementId>>,
}

/// Pointwise product of `factors`.
///
/// Elements are named `(x,y,...)` and the product `(A×B×...)`. A single
/// factor keeps its element names and is only renamed to `(A)`.
pub fn direct_product(factors: &[Arc<Lattice>], limit: usize) -> Result<Product, LatticeError> {
    if factors.is_empty() {
        return Err(LatticeError::Empty);
    }
    let size = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.len()))
        .unwrap_or(usize::MAX);
    if size > limit {
        return Err(LatticeError::SizeLimitExceeded { size, limit });
    }
    let name = format!(
        "({})",
        factors
            .iter()
            .map(|f| f.name())
            .collect::<Vec<_>>()
            .join("×")
    );

    // Mixed-radix enumeration, last factor fastest.
    let mut coords = Vec::with_capacity(size);
    let mut cur = vec![ElementId(0); factors.len()];
    for _ in 0..size {
        coords.push(cur.clone());
        for i in (0..factors.len()).rev() {
            if cur[i].index() + 1 < factors[i].len() {
                cur[i].0 += 1;
                break;
            }
            cur[i] = ElementId(0);
        }
    }
    let names: Vec<String> = if factors.len() == 1 {
        coords
            .iter()
            .map(|c| factors[0].name_of(c[0]).to_string())
            .collect()
    } else {
        coords
            .iter()
            .map(|c| {
                let parts: Vec<&str> = c.iter().zip(factors).map(|(&x, f)| f.name_of(x)).collect();
                format!("({})", parts.join(","))
            })
            .collect()
    };
    let (lattice, perm) = Lattice::from_relation(name, names, |i, j| {
        coords[i]
            .iter()
            .zip(&coords[j])
            .zip(factors)
            .all(|((&x, &y), f)| f.leq(x, y))
    })?;
    let coords = perm.iter().map(|&old| coords[old].clone()).collect();
    Ok(Product {
        lattice: Arc::new(lattice),
        factors: factors.to_vec(),
        coords,
    })
}

impl Product {
    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn factors(&self) -> &[Arc<Lattice>] {
        &self.factors
    }

    pub fn coords(&self, x: ElementId) -> &[ElementId] {
        &self.coords[x.index()]
    }

    /// The element with the given coordinates.
    pub fn element(&self, coords: &[ElementId]) -> ElementId {
        let pos = self
            .coords
            .iter()
            .position(|c| c == coords)
            .expect("coordinates lie in the product");
        ElementId::new(pos)
    }

    /// The canonical projection onto factor `i`.
    pub fn projection(&self, i: usize) -> LinearMorphism {
        let map = self.coords.iter().map(|c| c[i]).collect();
        LinearMorphism::new(self.lattice.clone(), self.factors[i].clone(), map)
            .expect("coordinate projections are linear")
    }

    /// The embedding of factor `i` with every other coordinate at the bottom.
    pub fn injection(&self, i: usize) -> LinearMorphism {
        let f = &self.factors[i];
        let map = f
            .elements()
            .map(|x| {
                let mut c = vec![ElementId(0); self.factors.len()];
                c[i] = x;
                self.element(&c)
            })
            .collect();
        LinearMorphism::new(f.clone(), self.lattice.clone(), map)
            .expect("coordinate injections are linear")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn two_by_two_is_the_square() {
        let two = Arc::new(fixtures::two());
        let p = direct_product(&[two.clone(), two], 64).unwrap();
        assert_eq!(p.lattice().name(), "(2×2)");
        assert_eq!(p.lattice().len(), 4);
        assert!(p.lattice().is_boolean().unwrap().holds);
        assert_eq!(p.lattice().name_of(p.lattice().top()), "(1,1)");
    }

    #[test]
    fn two_by_chain_is_modular() {
        let p = direct_product(&[Arc::new(fixtures::two()), Arc::new(fixtures::c3())], 64).unwrap();
        assert_eq!(p.lattice().len(), 6);
        assert!(p.lattice().is_modular().holds);
        let pi = p.projection(1);
        assert_eq!(pi.codomain().len(), 3);
        let e = p.injection(0);
        assert_eq!(e.kernel(), ElementId(0));
    }

    #[test]
    fn singleton_and_limits() {
        let c3 = Arc::new(fixtures::c3());
        let p = direct_product(std::slice::from_ref(&c3), 64).unwrap();
        assert_eq!(p.lattice().name(), "(C3)");
        assert_eq!(**p.lattice(), *c3);
        assert_eq!(direct_product(&[], 64).unwrap_err(), LatticeError::Empty);
        assert!(matches!(
            direct_product(&[c3.clone(), c3.clone(), c3], 20),
            Err(LatticeError::SizeLimitExceeded {
                size: 27,
                limit: 20
            })
        ));
    }
}
