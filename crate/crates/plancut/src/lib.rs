//! Minimal disconnected cuts of 4-connected planar graphs.
//!
//! A cut `S` of a connected graph is a vertex set whose removal disconnects
//! it; `S` is minimal when `G - (S - v)` stays connected for every `v` in
//! `S`, and disconnected when `G[S]` has several components. For 4-connected
//! planar graphs a minimal disconnected cut exists exactly when the plane
//! embedding has at least two faces of length four or more, and one can be
//! produced in linear time. This crate implements that pipeline end to end:
//!
//! * [`graph`] — adjacency-list graphs on `1..=n`, subset/lookup index
//!   arrays, components, induced subgraphs;
//! * [`embed`] — rotation systems, a planarity test + embedder, validation;
//! * [`dcel`] — half-edge structure, face enumeration, large-face catalog;
//! * [`connectivity`] — internally disjoint paths via unit-capacity flow;
//! * [`pathops`] — path truncation, chord removal, skippers;
//! * [`auxiliary`] — the apex-per-large-face triangulation and the
//!   face/cycle relations on it;
//! * [`cut`] — cut verification and the main search;
//! * [`oracle`] — exhaustive minimal-cut enumeration for small instances;
//! * [`generate`] — deterministic instance generators.

pub mod auxiliary;
pub mod cli;
pub mod connectivity;
pub mod cut;
pub mod dcel;
pub mod embed;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod pathops;

pub use cut::{min_disc_cut, verify_cut, Branch, Cut, CutReport, CutSearch, PipelineOptions};
pub use graph::{Graph, Vertex};
