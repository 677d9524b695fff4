//! Online learning against replayed labels, at desk scale.
//!
//! The library models a sequential game in which Nature may answer a query
//! either with the true label of a hidden target hypothesis or with the
//! prediction of an earlier learner hypothesis, indistinguishably. It ships:
//!
//! - finite-domain hypothesis classes as bit vectors, with representation
//!   masks and the intersection-closure machinery ([`hypothesis`], [`family`],
//!   [`classgen`]);
//! - exact calculators for VC, Littlestone, Threshold, chain-depth and
//!   Extended Threshold dimensions, all with verifiable certificates
//!   ([`dimensions`]);
//! - the round-by-round game engine with reliable version spaces, trap
//!   detection and end-of-game scoring ([`engine`]);
//! - learner strategies (closure, conservative threshold, halving, greedy
//!   proper, convex hull) and Nature strategies (truthful, descending,
//!   witness chain, trap exploitation, geometric stochastic) ([`learners`],
//!   [`adversaries`], [`convex`]);
//! - a seeded experiment harness producing CSV/JSON result rows
//!   ([`experiments`]).

pub mod adversaries;
pub mod classgen;
pub mod convex;
pub mod dimensions;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod family;
pub mod hypothesis;
pub mod learners;
pub mod pointset;
pub mod stats;

pub use error::{Error, Result};
pub use hypothesis::{Domain, Hypothesis, HypothesisClass, LabeledExample, Representation};
pub use pointset::PointSet;

/// Concrete scalar used by the shipped convex-geometry learners.
pub type Coord = f64;
/// Convex-hull learner over [`Coord`] coordinates.
pub type ConvexLearner = convex::ConvexHullLearner<Coord>;
/// Convex body over [`Coord`] coordinates.
pub type ConvexBody = convex::Body<Coord>;
