//! Semirigid systems of equivalence relations on finite sets.
//!
//! A system is a finite ground set with an ordered family of equivalence
//! relations. It is *semirigid* when the identity and the constant maps are
//! its only endomorphisms. This crate builds the known families of semirigid
//! systems, decides semirigidity by search, and checks the structural
//! certificates for three-direction systems in the integer plane against
//! that search.

pub mod constructions;
pub mod error;
pub mod io;
pub mod lattice;
pub mod nets;
pub mod partition;
pub mod planar;
pub mod search;
pub mod system;
pub mod ultra;

pub use error::{Error, Result};
pub use partition::Partition;
pub use planar::{PlanarSet, Point};
pub use search::{endomorphisms, is_semirigid, EndoReport};
pub use system::{is_homomorphism, is_reduced, restrict, SelfMap, System};
