//! Fibonacci numeration automata and exact linear representations.
//!
//! The crate builds the automaton recognising Fibonacci normalization, turns
//! pair automata into linear representations by path counting, minimizes them
//! over the rationals, and certifies boundedness of the represented sequences
//! by semigroup closure. An independent partition oracle cross-checks every
//! representation.

pub mod constructions;
pub mod fibnum;
pub mod fixtures;
pub mod linrep;
pub mod oracle;
pub mod pairdfa;
pub mod semigroup;
pub mod verify;

pub use num_bigint;

pub use fibnum::{fib, is_canonical, to_canonical, value_of, BitString};
pub use linrep::{LinRep, Matrix, Polynomial, Q};
pub use pairdfa::{PairDfa, PairSymbol};
pub use semigroup::{Dfao, VectorOrbit};
