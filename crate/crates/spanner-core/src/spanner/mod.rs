//! The upper-bound construction: critical radii, Yao/Theta cone tables, the
//! four attributed edge sets and their union, the waypoint routing procedure,
//! and exact stretch verification of the assembled spanner.

mod cones;
mod construct;
mod edges;
mod stretch;

pub use cones::{build_cone_table, build_theta_table, ConeTable};
pub use construct::{construct_path, yao_route, ConstructError, ConstructTrace, StepTag};
pub use edges::{
    assemble_spanner, build_e1, build_e2, build_e3, build_e4, classify_pairs, ClassCounts,
    EdgeSetSizes, PairClass, PairClassKind, SpannerBuild, SpannerEdges, IN_E1, IN_E2, IN_E3,
    IN_E4,
};
pub use stretch::{check_far_pairs, verify_stretch, FarPairDiagnostics, StretchReport};

use crate::instance::Params;
use serde::{Deserialize, Serialize};

/// The two critical radii separating "short" edges (kept wholesale) from
/// "far" pairs (handled probabilistically):
/// `r_eps = sqrt(M / (n p^(1+theta)))`, `R_eps = sqrt(K ln n / (n p^(1+theta)))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalRadii {
    pub r_eps: f64,
    pub big_r_eps: f64,
}

pub fn critical_radii(params: &Params) -> CriticalRadii {
    let denom = params.n as f64 * params.p.powf(1.0 + params.theta);
    CriticalRadii {
        r_eps: (params.m_const / denom).sqrt(),
        big_r_eps: (params.k_const * (params.n as f64).ln() / denom).sqrt(),
    }
}
