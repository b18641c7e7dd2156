//! Exact Weyl-group combinatorics for reduced quantised function algebras and
//! quantised Borel algebras at a root of unity, together with a brute-force
//! finite-dimensional algebra oracle used to cross-check the closed forms.

pub mod error;
pub mod intmat;
pub mod invariants;
pub mod lattice;
pub mod quiver;
pub mod rootsys;
pub mod skewalg;
pub mod strata;
pub mod suites;
pub mod weyl;

pub use error::{Error, Result};
pub use invariants::{
    borel_invariants, stratum_invariants, BorelInvariants, EllPower, RepType, StratumInvariants,
    StratumPair,
};
pub use lattice::{BasisKind, EllSubgroup, SubLattice};
pub use quiver::{cayley_graph, connected_components, to_dot, CayleyGraph, VertexGroup};
pub use rootsys::{cartan_data, CartanData, CartanType, Family, GoodEll};
pub use skewalg::FDAlgebra;
pub use weyl::{RootSequence, WeylElement, WeylGroup, WeylWord};
