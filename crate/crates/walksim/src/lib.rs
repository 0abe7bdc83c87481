//! Representation-independent similarity search over labeled graphs.
//!
//! The same information can be stored under many graph structures: a
//! casting relationship may be three direct edges or a hub node, a
//! functional fact may hang off either end of a dependency. Classic
//! similarity measures (random walk with restart, SimRank, PathSim) change
//! their answers under such restructurings. This crate implements
//! R-PathSim — PathSim restricted to informative walks, with star labels
//! collapsing FD-determined multiplicities — together with the
//! transformations themselves, FD mining, meta-walk selection, and an
//! evaluation harness that measures ranking robustness.
//!
//! Modules follow the pipeline: [`graph`] stores labeled graphs, [`walk`]
//! gives walk and meta-walk semantics, [`matrix`]/[`similarity`]/[`store`]
//! compute scores, [`baselines`] the comparison algorithms, [`fd`] the
//! dependency machinery, [`transform`] the rewrites, [`eval`] the
//! experiments, [`fixtures`] the worked examples.

pub mod baselines;
pub mod error;
pub mod eval;
pub mod fd;
pub mod fixtures;
pub mod graph;
pub mod iso;
pub mod matrix;
pub mod similarity;
pub mod store;
pub mod transform;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{EntityKey, LabeledGraph, LabelKind};
pub use similarity::{RankedList, Score};
pub use walk::MetaWalk;
