//! Invariants over random modular lattices, each checked against a
//! brute-force recomputation that shares no code with the library paths.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use latticelab::harness::random_modular_lattice;
use latticelab::linmor::{self, enumerate_linmors};
use latticelab::properties::{check_rickart_family, RickartKind};
use latticelab::{direct_product, ElementId, EndoMonoid, Lattice, Limits, LinearMorphism};

fn lattice(max: usize) -> impl Strategy<Value = Arc<Lattice>> {
    any::<u64>().prop_map(move |seed| Arc::new(random_modular_lattice(seed, max).unwrap()))
}

/// `f` is linear when some `k` has `f(x) = f(x ∨ k)` and `f` is an order
/// isomorphism from `[k, 1]` onto `[0, f(1)]`.
fn oracle_is_linear(l: &Lattice, m: &Lattice, f: &[ElementId]) -> bool {
    let top = f[l.top().index()];
    l.elements().any(|k| {
        l.elements()
            .all(|x| f[x.index()] == f[l.join(x, k).index()])
            && {
                let upper: Vec<ElementId> = l.elements().filter(|&x| l.leq(k, x)).collect();
                let lower: BTreeSet<ElementId> = m.elements().filter(|&y| m.leq(y, top)).collect();
                let image: BTreeSet<ElementId> = upper.iter().map(|&x| f[x.index()]).collect();
                image == lower
                    && image.len() == upper.len()
                    && upper.iter().all(|&x| {
                        upper
                            .iter()
                            .all(|&y| l.leq(x, y) == m.leq(f[x.index()], f[y.index()]))
                    })
            }
    })
}

fn tables(fs: &[LinearMorphism]) -> BTreeSet<Vec<u32>> {
    fs.iter()
        .map(|f| f.map().iter().map(|x| x.0).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws(l in lattice(10)) {
        for a in l.elements() {
            prop_assert_eq!(l.join(a, a), a);
            prop_assert_eq!(l.meet(a, a), a);
            for b in l.elements() {
                prop_assert_eq!(l.join(a, b), l.join(b, a));
                prop_assert_eq!(l.meet(a, l.join(a, b)), a);
                prop_assert_eq!(l.leq(a, b), l.join(a, b) == b);
                for c in l.elements() {
                    prop_assert_eq!(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
                    if l.leq(a, c) {
                        prop_assert_eq!(l.join(a, l.meet(b, c)), l.meet(l.join(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip(l in lattice(10)) {
        let back = Lattice::from_json(&l.to_json(), 64).unwrap();
        prop_assert_eq!(back.to_json(), l.to_json());
        prop_assert_eq!(&back, l.as_ref());
    }

    #[test]
    fn enumeration_matches_all_maps(l in lattice(5)) {
        let n = l.len();
        let mut oracle = BTreeSet::new();
        let mut f = vec![ElementId(0); n];
        for code in 0..n.pow(n as u32) {
            let mut c = code;
            for slot in f.iter_mut() {
                *slot = ElementId((c % n) as u32);
                c /= n;
            }
            if oracle_is_linear(&l, &l, &f) {
                oracle.insert(f.iter().map(|x| x.0).collect::<Vec<u32>>());
            }
        }
        let fast = enumerate_linmors(&l, &l, &Limits::default()).unwrap();
        prop_assert_eq!(tables(&fast), oracle);
    }

    #[test]
    fn linear_morphisms_compose(l in lattice(8), i in any::<usize>(), j in any::<usize>()) {
        let all = enumerate_linmors(&l, &l, &Limits::default()).unwrap();
        let (f, g) = (&all[i % all.len()], &all[j % all.len()]);
        let h = f.compose(g).unwrap();
        let expected: Vec<ElementId> = l.elements().map(|x| f.apply(g.apply(x))).collect();
        prop_assert_eq!(h.map(), expected.as_slice());
        prop_assert!(oracle_is_linear(&l, &l, h.map()));
    }

    #[test]
    fn projections_are_idempotent(l in lattice(10)) {
        for x in l.complemented_elements() {
            for &xp in l.complements_of(x) {
                let p = linmor::projection(&l, x, xp).unwrap();
                prop_assert!(p.is_idempotent());
                prop_assert_eq!(p.kernel(), xp);
                prop_assert_eq!(p.image_top(), x);
                prop_assert!(oracle_is_linear(&l, &l, p.map()));
            }
        }
    }

    #[test]
    fn complements_are_symmetric(l in lattice(10)) {
        for a in l.elements() {
            for &b in l.complements_of(a) {
                prop_assert!(l.complements_of(b).contains(&a));
                prop_assert_eq!(l.meet(a, b), l.bottom());
                prop_assert_eq!(l.join(a, b), l.top());
            }
        }
    }

    #[test]
    fn extensions_restrict_and_are_linear(l in lattice(8)) {
        for x in l.complemented_elements() {
            let iv = l.down_interval(x);
            let local = enumerate_linmors(iv.lattice(), iv.lattice(), &Limits::default()).unwrap();
            for &xp in l.complements_of(x) {
                for psi in &local {
                    let ext = linmor::extend_from_interval(&l, &iv, &iv, psi, xp).unwrap();
                    for s in iv.lattice().elements() {
                        prop_assert_eq!(ext.apply(iv.to_parent(s)), iv.to_parent(psi.apply(s)));
                    }
                    prop_assert_eq!(ext.kernel(), l.join(iv.to_parent(psi.kernel()), xp));
                }
            }
        }
    }

    #[test]
    fn finite_rickart_is_baer(l in lattice(8)) {
        let m = EndoMonoid::full(&l, &Limits::default()).unwrap();
        let v = |k| check_rickart_family(&m, k).holds;
        prop_assert_eq!(v(RickartKind::Rickart), v(RickartKind::Baer));
        prop_assert_eq!(v(RickartKind::DualRickart), v(RickartKind::DualBaer));
    }

    #[test]
    fn boolean_criteria_agree(l in lattice(10)) {
        let v = l.is_boolean().unwrap();
        prop_assert_eq!(v.witness_flag("definition"), v.witness_flag("meet_maps"));
    }

    #[test]
    fn products_stay_modular(a in lattice(4), b in lattice(4)) {
        let p = direct_product(&[a.clone(), b.clone()], 64).unwrap();
        prop_assert_eq!(p.lattice().len(), a.len() * b.len());
        prop_assert!(p.lattice().modularity_witness().is_none());
        for x in p.lattice().elements() {
            for y in p.lattice().elements() {
                let (cx, cy) = (p.coords(x), p.coords(y));
                let cj = p.coords(p.lattice().join(x, y));
                prop_assert_eq!(cj[0], a.join(cx[0], cy[0]));
                prop_assert_eq!(cj[1], b.join(cx[1], cy[1]));
            }
        }
    }

    #[test]
    fn full_monoid_is_closed(l in lattice(7)) {
        let m = EndoMonoid::full(&l, &Limits::default()).unwrap();
        let all = enumerate_linmors(&l, &l, &Limits::default()).unwrap();
        prop_assert_eq!(m.len(), all.len());
        for f in m.members() {
            for g in m.members().iter().take(8) {
                prop_assert!(m.index_of(f.compose(g).unwrap().map()).is_some());
            }
        }
    }
}
