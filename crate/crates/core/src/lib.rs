//! Activity ranking for chat logs.
//!
//! A chat log becomes a directed temporal multi-graph ([`graph`]), from
//! which per-member activity features are extracted and min-max normalized
//! ([`features`]). The features are aggregated by an ordered weighted
//! averaging operator whose weights come from the quantifier `r^beta`
//! ([`fuzzy`]); sweeping `beta` from pure "or" towards "and" shows how each
//! member's rank depends on how much one feature may compensate for another
//! ([`ranking`], [`plot`]).
//!
//! ```
//! use chat_owa::{fixture, grid::Grid, ranking::sweep, NodeId};
//!
//! let matrix = fixture::table1_matrix();
//! let trajectory = sweep(&matrix, &"0:5:1".parse::<Grid>()?)?;
//! let therapist = trajectory.get(&NodeId::new("Therapist")?).unwrap();
//! assert!(therapist.ranks.iter().all(|&r| r == matrix.node_count()));
//! # Ok::<(), chat_owa::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod features;
pub mod fixture;
pub mod fuzzy;
pub mod graph;
pub mod grid;
pub mod ingest;
pub mod plot;
pub mod ranking;
pub mod synth;

pub use error::{Error, Result};
pub use features::{Feature, FeatureMatrix};
pub use fuzzy::{owa, quantifier_weights, Quantifier, WeightVector};
pub use graph::{NodeId, TemporalEdge, TemporalMultiGraph, WeightedDigraph};
pub use ingest::{ChatRecord, SessionLog};
pub use ranking::{RankTable, RankTrajectory};
