//! Constructive toolkit for monochromatic powers of paths in blown-up
//! expander hosts.

pub mod adversary;
pub mod auxiliary;
pub mod biclique;
pub mod bitset;
pub mod blowup;
pub mod coloring;
pub mod constants;
pub mod cover;
pub mod expansion;
pub mod experiment;
pub mod graph;
pub mod host;
pub mod io;
pub mod lift;
pub mod ramsey;
pub mod solve;
pub mod transversal;
pub mod witness;

pub use blowup::{complete_blowup, BlowupMap};
pub use coloring::{BipartiteColoring, Color, CompleteColoring, TwoColoring};
pub use graph::{graph_power, Graph};
pub use witness::{verify_witness, Witness};
