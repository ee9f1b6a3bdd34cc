//! Small named lattices used throughout the tests, benches and CLI corpus.
//!
//! The JSON files under `fixtures/` in the workspace root describe the same
//! lattices; tests assert the two agree.

use std::sync::Arc;

use crate::lattice::Lattice;
use crate::linmor::LinearMorphism;

fn build(name: &str, elements: &[&str], covers: &[(&str, &str)]) -> Lattice {
    Lattice::build(name, elements, covers).expect("fixture is a lattice")
}

/// The one-element lattice.
pub fn trivial() -> Lattice {
    build("1", &["0"], &[])
}

/// The two-element chain.
pub fn two() -> Lattice {
    build("2", &["0", "1"], &[("0", "1")])
}

/// The three-element chain `0 < n < 1`.
pub fn c3() -> Lattice {
    build("C3", &["0", "n", "1"], &[("0", "n"), ("n", "1")])
}

pub fn b2() -> Lattice {
    build(
        "B2",
        &["0", "a", "b", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )
}

pub fn b3() -> Lattice {
    build(
        "B3",
        &["0", "a", "b", "c", "a∨b", "a∨c", "b∨c", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "a∨b"),
            ("a", "a∨c"),
            ("b", "a∨b"),
            ("b", "b∨c"),
            ("c", "a∨c"),
            ("c", "b∨c"),
            ("a∨b", "1"),
            ("a∨c", "1"),
            ("b∨c", "1"),
        ],
    )
}

/// The diamond.
pub fn m3() -> Lattice {
    build(
        "M3",
        &["0", "a", "b", "c", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
}

/// The pentagon `0 < a < b < 1`, `0 < c < 1`.
pub fn n5() -> Lattice {
    build(
        "N5",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
}

/// A nine-element modular lattice with the CIP whose complemented
/// elements are only `0, a, b, 1`.
pub fn excip() -> Lattice {
    build(
        "EXCIP",
        &["0", "k", "f", "a", "c", "b", "a∨c", "c∨b", "1"],
        &[
            ("0", "k"),
            ("0", "f"),
            ("k", "a"),
            ("k", "c"),
            ("f", "c"),
            ("f", "b"),
            ("a", "a∨c"),
            ("c", "a∨c"),
            ("c", "c∨b"),
            ("b", "c∨b"),
            ("a∨c", "1"),
            ("c∨b", "1"),
        ],
    )
}

/// Every fixture, including the non-modular pentagon.
pub fn corpus() -> Vec<Lattice> {
    vec![two(), c3(), b2(), b3(), m3(), n5(), excip()]
}

/// The modular fixtures plus the one-element lattice.
pub fn modular_corpus() -> Vec<Lattice> {
    vec![trivial(), two(), c3(), b2(), b3(), m3(), excip()]
}

/// The endomorphism `0 ↦ 0, n ↦ 0, 1 ↦ n` of the three-element chain.
pub fn chain_shift(c3: &Arc<Lattice>) -> LinearMorphism {
    LinearMorphism::from_names(
        c3.clone(),
        c3.clone(),
        &[("0", "0"), ("n", "0"), ("1", "n")],
    )
    .expect("the chain shift is linear")
}
