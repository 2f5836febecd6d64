//! Hyperbolic manifolds built from colourings of right-angled polytopes,
//! and the search for free involutions that cut them down to surfaces and
//! 3-manifolds with large isometry groups.

pub mod colouring;
pub mod complex;
pub mod error;
pub mod gf2;
pub mod groups;
pub mod isometry;
pub mod pairings;
pub mod polytope;

pub use colouring::{family_colouring, Colouring, Family};
pub use complex::{realize, Analysis, CellComplex, FlagMap};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, Subspace};
pub use groups::{FiniteGroup, Presentation, Signature};
pub use isometry::{ColouredIsometry, IsometryGroup};
pub use pairings::{glue, theorem_e_table, PairingTable, SideMatch};
pub use polytope::{Face, Polytope, Symmetry};
