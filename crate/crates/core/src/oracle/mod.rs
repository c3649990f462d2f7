//! Exponential ground-truth procedures used to validate the polynomial
//! algorithms: loop enumeration, exhaustive condition search and language
//! equivalence with counterexamples.

pub mod brute;
pub mod equiv;
pub mod formula;
pub mod loops;

pub use brute::{brute_force_consistency, ConditionCatalog};
pub use equiv::{equivalence, equivalence_exhaustive, parity_equiv_fast};
pub use loops::{enumerate_loops, LoopCatalog};
