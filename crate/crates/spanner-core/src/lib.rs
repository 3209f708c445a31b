//! Construction and verification of (1+eps)-spanners for random Euclidean
//! embeddings of G(n,p) and for random geometric graphs on the unit square.
//!
//! The library is organized around a pipeline:
//!
//! * [`instance`] — seeded generation of embedded graphs, plus a text
//!   serialization format for frozen instances;
//! * [`geometry`] — points, cones, and the focal-sum ellipse predicate;
//! * [`paths`] — deterministic Dijkstra, canonical shortest paths, and an
//!   all-pairs oracle;
//! * [`spanner`] — critical radii, Yao/Theta cone tables, the four
//!   attributed edge sets and their union, waypoint routing with
//!   shortest-path splicing, and exact stretch verification;
//! * [`lonely`] — the lower-bound side: lonely-edge counting, a
//!   semi-analytic expectation oracle, and exact essential-edge
//!   certification;
//! * [`report`] — reproducible JSON/CSV artifact emission.
//!
//! All randomness flows through per-purpose seeded streams, so every
//! artifact is a pure function of its parameters and seed.

pub mod geometry;
pub mod instance;
pub mod lonely;
pub mod paths;
pub mod report;
pub mod spanner;
