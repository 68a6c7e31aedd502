//! Parametric hard instances and reduction constructions.

mod families;
mod reductions;

pub use families::*;
pub use reductions::*;
