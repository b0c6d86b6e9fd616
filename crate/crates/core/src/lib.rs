//! Nested-set fans, Chow rings, tropical curves and normal complexes for
//! the moduli space of rational curves with a cyclic action.

pub mod chow;
pub mod cli;
pub mod error;
pub mod exact;
pub mod fan;
pub mod guard;
pub mod io;
pub mod lattice;
pub mod normal;
pub mod sample;
pub mod tropical;
pub mod verify;

pub use error::{Error, Result};
