//! Exact stretch verification of an edge subset, and the far-pair
//! diagnostics backing the high-probability lemmas.

use super::cones::ConeTable;
use super::CriticalRadii;
use crate::instance::EmbeddedGraph;
use crate::paths::{apsp, ApspOracle};
use serde::Serialize;
use std::collections::BTreeMap;

/// Result of verifying an edge subset against the full graph metric.
#[derive(Clone, Debug, Serialize)]
pub struct StretchReport {
    /// max over checked pairs of d'(u,v) / d(u,v); 1.0 when no pairs exist.
    pub max_stretch: f64,
    pub argmax_pair: Option<(u32, u32)>,
    /// Histogram of stretch values in buckets of width 0.01 starting at 1.0:
    /// bucket k counts pairs with stretch in [1 + 0.01 k, 1 + 0.01 (k+1)).
    pub histogram: BTreeMap<u32, u64>,
    pub pairs_checked: u64,
    /// Pairs connected in the graph but not in the subset.
    pub infinite_stretch_pairs: u64,
    /// True when only a sample of sources was verified.
    pub sampled: bool,
    pub sources_used: usize,
}

/// Run shortest paths on the subgraph (V, subset) and compare against the
/// full-graph oracle. `sources` restricts verification to pairs with at
/// least one endpoint in the sample; pass `None` for all oracle sources.
pub fn verify_stretch(
    g: &EmbeddedGraph,
    subset: &[(u32, u32)],
    oracle: &ApspOracle,
    sources: Option<&[u32]>,
) -> StretchReport {
    let sub = EmbeddedGraph::new(g.points().to_vec(), subset.to_vec());
    let all_sources: Vec<u32> = oracle.sources().collect();
    let (verify_sources, sampled) = match sources {
        Some(s) => (s.to_vec(), true),
        None => (all_sources, false),
    };
    let sub_oracle = apsp(&sub, &verify_sources).expect("sources valid");

    let mut max_stretch = 1.0f64;
    let mut argmax = None;
    let mut histogram: BTreeMap<u32, u64> = BTreeMap::new();
    let mut pairs_checked = 0u64;
    let mut infinite = 0u64;
    let n = g.num_vertices() as u32;
    for &s in &verify_sources {
        let full = oracle.field(s).expect("oracle covers verify sources");
        let part = sub_oracle.field(s).expect("computed above");
        // in the unsampled all-pairs case count each unordered pair once
        let targets = if sampled { 0..n } else { (s + 1)..n };
        for v in targets {
            if v == s {
                continue;
            }
            let d = full.dist[v as usize];
            if d.is_infinite() {
                continue; // outside the spanner contract
            }
            let dsub = part.dist[v as usize];
            pairs_checked += 1;
            if dsub.is_infinite() {
                infinite += 1;
                continue;
            }
            let stretch = if d == 0.0 { 1.0 } else { dsub / d };
            if stretch > max_stretch {
                max_stretch = stretch;
                argmax = Some(if s < v { (s, v) } else { (v, s) });
            }
            let bucket = ((stretch - 1.0) / 0.01).floor().max(0.0) as u32;
            *histogram.entry(bucket).or_default() += 1;
        }
    }
    StretchReport {
        max_stretch,
        argmax_pair: argmax,
        histogram,
        pairs_checked,
        infinite_stretch_pairs: infinite,
        sampled,
        sources_used: verify_sources.len(),
    }
}

/// Empirical check of the far-pair lemmas: pairs at Euclidean distance at
/// least `R_eps` should have nearly-straight shortest paths, and their Yao
/// step should be short relative to the remaining distance.
#[derive(Clone, Debug, Default, Serialize)]
pub struct FarPairDiagnostics {
    pub pairs_at_range: u64,
    /// Pairs with dist >= R_eps violating d <= (1 + 4 eps) r.
    pub distance_violations: u64,
    pub distance_violation_examples: Vec<(u32, u32)>,
    /// Ordered pairs at range whose Yao step exceeds eps * r.
    pub yao_step_violations: u64,
}

pub fn check_far_pairs(
    g: &EmbeddedGraph,
    radii: &CriticalRadii,
    table: &ConeTable,
    oracle: &ApspOracle,
    epsilon: f64,
) -> FarPairDiagnostics {
    let n = g.num_vertices() as u32;
    let mut diag = FarPairDiagnostics::default();
    for u in 0..n {
        let field = match oracle.field(u) {
            Some(f) => f,
            None => continue,
        };
        for v in (u + 1)..n {
            let r = g.pair_dist(u, v);
            if r < radii.big_r_eps {
                continue;
            }
            diag.pairs_at_range += 1;
            let d = field.dist[v as usize];
            if !(d <= (1.0 + 4.0 * epsilon) * r) {
                diag.distance_violations += 1;
                if diag.distance_violation_examples.len() < 16 {
                    diag.distance_violation_examples.push((u, v));
                }
            }
            for (a, b) in [(u, v), (v, u)] {
                if table.gap_toward(g, a, b) > epsilon * r {
                    diag.yao_step_violations += 1;
                }
            }
        }
    }
    diag
}
