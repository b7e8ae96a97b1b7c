//! Exact computation of double Hurwitz numbers through monodromy graphs and
//! flow polytopes, together with the chamber and wall-crossing machinery that
//! surrounds them.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] enumerates trivalent graphs with labelled ends, their
//!   orientations, automorphisms and vertex-ordering multiplicities.
//! * [`flow`] parametrises integer flows on a graph and sums edge-weight
//!   products over the lattice points of each flow chamber.
//! * [`engine`] assembles connected and disconnected Hurwitz numbers.
//! * [`oracle`] counts transposition factorisations in the symmetric group
//!   as an independent check of the engine.
//! * [`chambers`] and [`poly`] handle the resonance arrangement and exact
//!   interpolation of chamber polynomials.
//! * [`cuts`] implements cut posets and thin cuts; [`gm`] the combinatorial
//!   Gauss-Manin connection, checked against a connection solved from cones.
//! * [`wallcross`] compares wall-crossing polynomials against the light
//!   wall-crossing formula.
//! * [`fixtures`] holds small explicit graphs used throughout the tests.

pub mod chambers;
pub mod cuts;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod fm;
pub mod gm;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod subset;
pub mod wallcross;

pub use chambers::{adjacent_pair, classify, resonance_subsets, sample_chamber, HChamber};
pub use engine::{hurwitz, hurwitz_disconnected, hurwitz_r, HurwitzEngine};
pub use error::{Error, Result};
pub use flow::{chamber_sum, graph_contribution, lattice_flows, Flow, FlowParam};
pub use graph::{
    automorphism_count, enumerate_xgraphs, linear_extension_count, valid_orientations,
    Orientation, XGraph,
};
pub use oracle::{oracle_connected, oracle_disconnected};
pub use poly::Polynomial;
pub use subset::EndSubset;
