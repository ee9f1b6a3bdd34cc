//! Finite modular lattices, their linear morphisms, and exact deciders for
//! Rickart and Baer type conditions relative to monoids of endomorphisms.
//!
//! Everything is exhaustive: lattices are small, all tables are
//! precomputed, and every verdict carries a witness that can be replayed.

pub mod bridge;
pub mod error;
pub mod fixtures;
pub mod harness;
pub mod lattice;
pub mod limits;
pub mod linmor;
pub mod monoid;
pub mod properties;
pub mod verdict;

pub use error::{GroupError, HarnessError, LatticeError, MonoidError, MorphismError};
pub use lattice::{
    direct_product, Decomposition, ElementId, Interval, Lattice, LatticeSpec, Product,
};
pub use limits::Limits;
pub use linmor::{LinearMorphism, MorphismSpec};
pub use monoid::{EndoMonoid, MonoidSpec};
pub use verdict::{OrderedTable, Verdict, Witness, WitnessValue};
