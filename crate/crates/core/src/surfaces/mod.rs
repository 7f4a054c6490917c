//! Oriented triangulated surfaces and spin structures.

mod spin;
mod triangulation;

pub use spin::{Handle, SpinStructure};
pub use triangulation::Triangulation;
