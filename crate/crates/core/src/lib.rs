//! Equivariant discrete Morse theory for finite group actions on simplicial complexes,
//! computed through complexes of groups over loopfree poset-enriched categories.

pub mod action;
pub mod cog;
pub mod development;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod group;
pub mod homology;
pub mod io;
pub mod lp;
pub mod morse;
pub mod morse_cog;
pub mod pipeline;
pub mod report;

pub use error::{Error, Result};
pub use report::Report;
