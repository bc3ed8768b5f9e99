//! The localization game on incidence graphs of block designs.
//!
//! In the localization game a team of cops probes distances to an invisible
//! robber each round; the robber then moves to a neighbour or stays put. The
//! cops win once the probe results leave a single candidate vertex. This
//! crate provides
//!
//! * design representations, validators and generators ([`design`],
//!   [`generators`], [`field`]);
//! * the candidate-set game engine with exhaustive strategy verification
//!   ([`game`]);
//! * executable cop strategies, robber adversaries and bound reports for
//!   design families ([`strategies`]);
//! * an exact solver for the localization number of small graphs
//!   ([`solver`]);
//! * text formats for designs, graphs, transcripts, reports and
//!   certificates ([`io`]).

pub mod design;
pub mod field;
pub mod game;
pub mod generators;
pub mod strategies;
pub mod graph;
pub mod io;
pub mod solver;
pub mod vset;

pub use design::{Design, DesignError, DesignParams, GroupedDesign, ResolvedDesign};
pub use graph::{Graph, IncidenceGraph, Side};
pub use vset::VertexSet;
