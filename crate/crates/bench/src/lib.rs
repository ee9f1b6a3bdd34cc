//! Inputs shared by the benchmarks: named lattices of increasing size.

use std::sync::Arc;

use latticelab::{direct_product, fixtures, Lattice};

/// Fixtures plus a few products, sorted by size. All are modular.
pub fn workloads() -> Vec<Arc<Lattice>> {
    let mut out: Vec<Arc<Lattice>> = fixtures::modular_corpus()
        .into_iter()
        .map(Arc::new)
        .collect();
    let c3 = Arc::new(fixtures::c3());
    let m3 = Arc::new(fixtures::m3());
    let two = Arc::new(fixtures::two());
    for factors in [
        vec![c3.clone(), c3.clone()],
        vec![m3.clone(), two.clone()],
        vec![m3.clone(), c3],
    ] {
        let p = direct_product(&factors, 64).expect("small products");
        out.push(p.lattice().clone());
    }
    out.sort_by_key(|l| l.len());
    out
}

#[cfg(test)]
mod tests {
    #[test]
    fn workloads_are_modular_and_capped() {
        for l in super::workloads() {
            assert!(l.modularity_witness().is_none(), "{}", l.name());
            assert!(l.len() <= 20);
        }
    }
}
