//! Exact cluster algebras of finite Dynkin type and their foldings.
//!
//! Non-simply-laced cluster structures are realized by folding a simply-laced
//! one along an admissible diagram automorphism:
//!
//! - [`cartan`]: Cartan matrices, admissible automorphisms, the two folded
//!   Cartan matrices and the search for an unfolding of a given type.
//! - [`weyl`]: root systems, reduced words, longest elements, lifted words.
//! - [`laurent`]: exact Laurent polynomials over the rationals.
//! - [`seed`]: seeds, mutation, the initial seed of a reduced word.
//! - [`fold`]: orbit mutation and projection to the folded structure.
//! - [`explorer`]: exchange-graph enumeration, cluster-monomial
//!   independence, and the JSON/DOT reports behind the command line tool.

// Matrix code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod explorer;
pub mod fold;
pub mod laurent;
pub mod par;
pub mod seed;
pub mod weyl;

pub use cartan::{CartanMatrix, FoldingData, TypeLabel};
pub use laurent::{LaurentPoly, Vars};
pub use par::Parallelism;
pub use seed::Seed;
