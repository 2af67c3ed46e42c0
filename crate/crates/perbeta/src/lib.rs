//! Eventually periodic digit representations in an algebraic base β.
//!
//! Given a primitive integer polynomial m with m(β) = 0 and a modulus n ≥ 2,
//! this crate finds exponents i > j with β^i − β^j ∈ nZ[β], certified by an
//! exact identity x^i − x^j − n·p(x) = r(x)·m(x) in Z[x], and converts such
//! witnesses into explicit eventually periodic digit strings for 1/n and for
//! arbitrary elements of Q(β). Every constructed object carries or passes an
//! exact verification step; floating point appears only in the numeric root
//! diagnostics of [`BaseSpec`].
//!
//! The main entry points:
//!
//! - [`BaseSpec::analyze`] / [`check_base`]: root moduli and eligibility.
//! - [`find_witness`]: witness search (modular walk, prime-power recursion,
//!   coprime composition, or graph search).
//! - [`densify`]: rewrites a witness so digit extraction has bounded overlap.
//! - [`rep_of_unit_fraction`], [`rep_of_field_element`]: digit strings.
//! - [`eval_rep`]: exact evaluation of a digit string back into Q(β).
//! - [`member_nzbeta`]: independent membership oracle for nZ[β].
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything is safe to share across threads.

pub mod base;
pub mod engine;
pub mod error;
pub mod field;
pub mod graph;
mod modular;
pub mod oracle;
pub mod poly;
pub mod powers;
pub mod rep;
pub mod walk;
pub mod witness;

pub use base::{check_base, Base, BaseSpec, Eligibility, TriState, DEFAULT_TOLERANCE};
pub use engine::{
    combine_coprime, densify, find_witness, find_witness_with, prime_power_witness, Budgets,
    Method,
};
pub use error::{Error, Result};
pub use field::{field_inv, field_reduce, parse_rational, FieldElement};
pub use graph::{
    export_dot, neighbors, path_to_witness, shortest_path, DotScope, GraphEdge, GraphVertex,
    Phase, WitnessPath,
};
pub use oracle::{default_degree_budget, eval_rep, member_nzbeta, witness_from_rep, Membership};
pub use poly::{poly_mul, IntPoly, LaurentIntPoly};
pub use powers::power_min_poly;
pub use rep::{
    canonicalize, multiply_finite, normalize_digits, rep_of_field_element, rep_of_unit_fraction,
    PeriodicRep,
};
pub use walk::{coprime_walk, coprime_walk_traced, WalkState, WalkTrace};
pub use witness::FermatWitness;
