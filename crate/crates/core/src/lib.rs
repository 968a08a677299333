//! Finite posets, their order complexes and homology, h-vectors, and
//! mechanical audits of the inequalities and identities relating them.

pub mod audit;
pub mod complex;
pub mod generators;
pub mod homology;
pub mod hvectors;
pub mod io;
pub mod polynomial;
pub mod poset;

pub use complex::{order_complex, ComplexError, FVector, SimplicialComplex};
pub use homology::{HomologyError, HomologyReport, PrimeField};
pub use poset::{FinitePoset, PosetError};
