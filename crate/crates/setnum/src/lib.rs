//! Exact bijections between the naturals, the discrete plane and finite
//! sets of naturals; elastic dilations of the plane; generators, solvers
//! and solution-space censuses for subset-sum, subset-product and
//! subset-bitwise-XOR problems; and closed-form entropy tables for the
//! basic logical operations.

pub mod dilation;
pub mod error;
pub mod numeric;
pub mod pairing;
pub mod prng;
pub mod sbxor;
pub mod setcodec;
pub mod sorted;
pub mod subset;

pub use error::{Error, Result};
pub use numeric::Nat;
pub use pairing::Point;
pub use setcodec::FinSet;
