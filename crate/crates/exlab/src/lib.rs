//! Exact bounds on exclusivity structures.
//!
//! An experiment's events, together with which sets of them are mutually
//! exclusive, form an abstract simplicial complex: vertices are events and
//! simplices are exclusive sets. On such a complex the sum S = Σᵢ P(i)
//! over all events is bounded differently under different model classes:
//!
//! * **NCHV** — noncontextual hidden-variable models; the bound is the
//!   independence number of the exclusivity skeleton ([`nchv_bound`]).
//! * **E** — probability assignments whose sums over exclusive sets stay
//!   ≤ 1; the bound is the fractional packing number, computed by an
//!   exact-arithmetic LP with a dual certificate ([`e_bound`]).
//! * **CE** — consistent exclusivity, i.e. E on the clique complex of the
//!   skeleton, where pairwise exclusivity is promoted to joint
//!   exclusivity ([`ce_bound`]); activated across independent copies via
//!   the OR product ([`ce_product_bound`]).
//!
//! The gap between these classes is witnessed concretely: the five-cycle
//! ("pentagon") has NCHV bound 2, CE-regularized two-copy bound √5, and E
//! bound 5/2, with √5 also the quantum maximum ([`theta::theta_odd_cycle`]).
//! Bell-box scenarios enter through [`scenarios::lo_complex`], which
//! derives exclusivity from no-signaling alone; two PR boxes side by side
//! satisfy E yet violate consistent exclusivity ([`bounds::find_ce_violation`]).
//!
//! All arithmetic is exact: probabilities and LP data are arbitrary-
//! precision rationals, bound values are rationals or exact roots
//! ([`bounds::RootValue`]), and every LP result carries an independently
//! checkable optimality certificate.

pub mod bounds;
pub mod claims;
pub mod complex;
pub mod dot;
pub mod error;
pub mod json;
pub mod lp;
pub mod rational;
pub mod scenarios;
pub mod theta;

pub use bounds::{
    ce_bound, ce_product_bound, check_assignment, e_bound, find_ce_violation, nchv_bound,
    verify_bound_certificate, Assignment, BoundResult, ModelClass, ProductCeBound, RootValue,
    Violation,
};
pub use claims::{paper_check, Claim, ClaimReport};
pub use complex::{Defect, Graph, SimplicialComplex};
pub use error::Error;
pub use rational::Rational;
pub use scenarios::{
    are_locally_orthogonal, assignment_from_behavior, complete_graph_complex, cycle_complex,
    full_simplex_complex, joint_scenario, lo_complex, no_signaling_check, pentachoron, pentagon,
    pentagram, pr_box_behavior, Behavior, BoxEvent, BoxScenario, SignalingDefect,
};
pub use theta::{theta_odd_cycle, ThetaValue};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
