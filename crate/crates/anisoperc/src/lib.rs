//! Simulator and analysis toolkit for an anisotropic bootstrap percolation
//! model on `Z^2`.
//!
//! The update rule: a vacant site `(m, n)` becomes occupied once its
//! neighborhood `{(m±1,n), ..., (m±k,n), (m,n±1)}` contains at least `k+1`
//! occupied sites; occupied sites never revert. The crate provides
//!
//! * exact dynamics and closure computation on finite windows ([`lattice`]),
//! * the traversability / crossing event predicates ([`events`]),
//! * closed-form bounds and threshold quantities ([`analytic`]),
//! * the variational growth-cost minimization ([`variational`]),
//! * disjoint-spanning traces and growth hierarchies ([`decomposition`]),
//! * seeded Monte Carlo estimation with exhaustive-enumeration oracles
//!   ([`montecarlo`]),
//! * a command-line front end ([`cli`]).

pub mod analytic;
pub mod cli;
pub mod decomposition;
pub mod events;
pub mod lattice;
pub mod montecarlo;
pub mod rng;
mod unionfind;
pub mod variational;

pub use lattice::{Configuration, NeighborhoodSpec, Rect, Site};
