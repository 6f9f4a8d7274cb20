//! Numerical tools for a family of Birkhoff-type interpolation problems over
//! complex polynomials and for the Casas-Alvero root-sharing condition.
//!
//! All coefficient vectors are stored in ascending powers: index `j` holds the
//! coefficient of `z^j`.
//!
//! - [`poly`]: dense polynomial arithmetic, differentiation, symmetric means.
//! - [`roots`]: simultaneous root finding with multiplicity clustering.
//! - [`birkhoff`]: the forward interpolation problem `p^(k)(alpha_{k+1}) = 0`,
//!   solved by back substitution and by iterated antidifferentiation.
//! - [`overdetermined`]: solvability analysis of the doubled-condition problem.
//! - [`inverse`]: recovering every node vector from the roots of `p`.
//! - [`casas`]: the common-root checker, its smooth defect, and a multistart
//!   search for counterexamples.

pub mod birkhoff;
pub mod casas;
mod dd;
mod error;
pub mod inverse;
mod linalg;
pub mod overdetermined;
pub mod poly;
pub mod roots;

pub use birkhoff::{build_system, iterated_integral, solve_forward, BirkhoffSystem, NodeVector};
pub use casas::{
    ca_check, ca_defect, ca_search, pattern_search, theorem1_witness, CAReport, OrderRecord,
    SearchConfig, SearchResult,
};
pub use error::{Error, Result};
pub use inverse::{
    assignment_matches_roots, enumerate_assignments, node_levels, Assignments, NodeAssignment,
    NodeLevels, DEFAULT_ENUMERATION_CAP,
};
pub use num_complex::Complex64;
pub use overdetermined::{analyze_overdetermined, OverdeterminedReport};
pub use poly::{centroid, symmetric_means, Polynomial, SymmetricMeans};
pub use roots::{roots_of, Cluster, RootSet, ToleranceProfile};
