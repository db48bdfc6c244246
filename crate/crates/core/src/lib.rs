//! Exact local cohomology invariants of multipartite stabilizer states.
//!
//! A stabilizer state on qudits of prime dimension `p`, distributed over a set
//! of parties `P`, is a lagrangian subspace `L` of the symplectic space
//! `G = ⊕_p G_p` over `F_p`. This crate computes the dimensions
//! `h^{ij} = dim H_•^j(X; Λ^i FL)` of the local cohomology of exterior powers
//! of the associated partition sheaf, the duality pairings between them, GHZ
//! extraction, and the simplicial model of first-order invariants.

pub mod cohomology;
pub mod duality;
pub mod error;
pub mod ffla;
pub mod simplicial;
pub mod structure;
pub mod symplectic;

pub use cohomology::{invariant_table, local_invariants, local_invariants_rel, CechComplex, InvariantTable};
pub use error::{Error, Result};
pub use ffla::{FieldPrime, Matrix, Subspace};
pub use symplectic::{graph_state, Graph, GraphFamily, PartySet, PartyStructure};
