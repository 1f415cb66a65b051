//! Exact arithmetic over Z/p^nZ and the integers.

mod matrix;
mod modulus;
mod snf;
mod solve;
mod submodule;

pub use matrix::{IntMatrix, ModMatrix, ModVector};
pub use modulus::{is_prime, Modulus};
pub use snf::{
    invariant_factor_valuations, mod_smith, smith_normal_form, ModSnf, SnfResult, SnfTracking,
};
pub use solve::{
    image_submodule, kernel_submodule, solve_linear, solve_linear_lifted, LinearSolution,
};
pub use submodule::{Quotient, Submodule};
