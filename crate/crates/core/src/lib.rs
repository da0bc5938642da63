//! Single-layer commuting CX circuits for CSS ground states.
//!
//! [`synth`] turns a CSS code into a circuit of Hadamards on a qubit subset
//! followed by one layer of CX gates; [`verify`] checks the result against
//! the code's stabilizers. [`groups`] holds the constant-depth product
//! planner for solvable groups.

#![no_std]

extern crate alloc;

pub mod css;
pub mod gf2;
pub mod groups;
pub mod synth;
pub mod verify;
