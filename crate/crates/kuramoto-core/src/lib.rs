//! Analysis of homogeneous Kuramoto oscillator networks on small graphs.
//!
//! The phase dynamics on a graph G are `θ̇_i = Σ_{j~i} sin(θ_j − θ_i)`.
//! This crate provides both sides of the story:
//!
//! * the *algebraic* encoding — the polynomial system obtained from the
//!   substitution `x_i = sin θ_i`, `y_i = cos θ_i`, its structural
//!   identities, and the Segre membership test for standard states
//!   ([`ideal`]);
//! * the *dynamical* side — residuals, gradient flow, Newton refinement,
//!   deterministic multistart equilibrium search, and stability
//!   classification through the weighted graph Laplacian ([`dynamics`],
//!   [`stability`]);
//! * exact Sturm-sequence root isolation for the cubic that controls the
//!   five-cycle gluing construction ([`sturm`]);
//! * graph plumbing: graph6 parsing, isomorphism-class enumeration for the
//!   small-vertex censuses, k-let detection, chordless-cycle search, and
//!   the gluing constructor itself ([`graphs`]);
//! * census orchestration and report rendering ([`census`], [`report`]).

pub mod census;
pub mod dynamics;
pub mod graphs;
pub mod ideal;
pub mod report;
pub mod stability;
pub mod sturm;

pub use dynamics::{AngleState, EquilibriumRecord, SearchParams};
pub use graphs::Graph;
pub use stability::Classification;
