//! Simulation laboratory for equatorial von Neumann measurements on
//! n-partite GHZ states, built from no-signaling nonlocal boxes.
//!
//! The target correlations: every strict subset of parties sees unbiased
//! outcomes, while the full n-party product has expectation
//! cos(φ_a + φ_b + … + φ_z). The crate provides
//!
//! * [`boxes`] — PR, Millionaire, bipartite and n-partite Cosine boxes, and
//!   the function-input box, all realized so the defining parity holds on
//!   every call and strict subsets of outputs stay uniform;
//! * [`protocols`] — the simulation models (Svetlichny warm-up, tripartite,
//!   four-partite, general two-group, single-C-box, out-of-plane Charlie);
//! * [`conversions`] — the C box ↔ M box equivalence;
//! * [`comm`] — the digit-exchange protocol realizing an M box with finite
//!   expected communication, and the 10-bit-average tripartite translation;
//! * [`decompose`] — recursive simulation of any full-correlation-only
//!   n-party distribution with bipartite boxes, at finite grid resolution;
//! * [`analysis`] — closed-form quantum oracle, correlator estimation,
//!   no-signaling checks, and the Svetlichny value;
//! * [`core`] — shared types, the sign convention, and the seeded
//!   randomness contract (ChaCha8, split by stream id).

pub mod analysis;
pub mod boxes;
pub mod comm;
pub mod conversions;
pub mod core;
pub mod decompose;
pub mod protocols;
pub mod transcript;
