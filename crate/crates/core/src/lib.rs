//! Exact computations around the three equivalent pictures of one object:
//! the Eisenstein form of the E8 lattice built from the tetracode, the
//! Mordell-Weil group of `y^2 = x^3 + S(t)` with its height pairing, and the
//! minimal representations of a squarefree sextic `S` as `y^2 - x^3`.
//!
//! All arithmetic is exact: prime and extension fields, the Eisenstein
//! rationals, and arbitrary-precision integers.  The crate cross-checks the
//! lattice census (240 roots, the 120 mod-2 and 80 mod-sqrt(-3) classes, the
//! order-155520 triflection group) against the curve side (heights, the
//! Hermitian pairing, exhaustive solution enumeration over finite fields).

pub mod covers;
pub mod curve;
pub mod eisenstein;
pub mod error;
pub mod field;
pub mod lattice;
pub mod pairings;
pub mod perm;
pub mod poly;
pub mod ratfun;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldKind, FieldSpec};
