//! Knotting levels of genus-2 spatial handlebodies.
//!
//! Three obstruction families are computed exactly: dihedral quandle
//! coloring polynomials, Alexander elementary ideals and free-group
//! pattern classifications. [`obstructions::combine_report`] closes the
//! resulting evidence under the implications between knotting levels.

#![allow(clippy::needless_range_loop)]

pub mod diagram;
pub mod fixtures;
pub mod freegroup;
pub mod ideals;
pub mod laurent;
pub mod obstructions;
pub mod patterns;
pub mod presentation;
pub mod quandle;

pub use diagram::{parse_diagram, SpineDiagram};
pub use freegroup::{parse_word, FreeWord};
pub use laurent::{parse_poly, LaurentPoly2};
pub use obstructions::{KnottingReport, Level};
pub use presentation::{parse_presentation, GroupPresentation};
