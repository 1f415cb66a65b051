//! Group cohomology and local cohomology of finite matrix groups acting on
//! (Z/p^nZ)^r, with an explicit norm-one torus whose local cohomology mod p^2
//! does not vanish.

pub mod cohomology;
pub mod error;
pub mod matgroup;
pub mod modring;
pub mod torus;

pub use error::{Error, Result};
