//! Pair classification and the four attributed edge sets.
//!
//! E1: all edges of length at most `r_eps`.
//! E2: the cone-table (Yao) edges.
//! E3: canonical shortest-path edges of high-stretch pairs.
//! E4: canonical shortest-path edges of near pairs whose Yao step toward the
//!     partner is long in at least one orientation.

use super::cones::{build_cone_table, ConeTable};
use super::{critical_radii, CriticalRadii};
use crate::geometry::ConeSpec;
use crate::instance::{EmbeddedGraph, Params};
use crate::paths::{apsp_all, ApspOracle};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

pub const IN_E1: u8 = 1;
pub const IN_E2: u8 = 2;
pub const IN_E3: u8 = 4;
pub const IN_E4: u8 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClassKind {
    /// d >= (1+eps) r and r >= r_eps: the pair's shortest path enters E3.
    BEps,
    /// d <= (1+eps) r, r in [r_eps, R_eps], and the Yao step toward the
    /// partner is at least eps*r in some orientation: path enters E4.
    CEps,
    Neither,
    Disconnected,
}

/// Classification record for one unordered pair. The Yao gap is recorded in
/// both orientations because the near-pair set is defined over ordered
/// pairs: a long cone step from either endpoint qualifies.
#[derive(Clone, Copy, Debug)]
pub struct PairClass {
    pub pair: (u32, u32),
    /// Euclidean distance.
    pub r: f64,
    /// Shortest-path distance (infinity when disconnected).
    pub d: f64,
    /// dist(u, Y(i_{u,v}, u)), infinity for an empty cone.
    pub yao_gap_uv: f64,
    /// dist(v, Y(i_{v,u}, v)).
    pub yao_gap_vu: f64,
    pub class: PairClassKind,
}

fn classify_one(
    r: f64,
    d: f64,
    gap_uv: f64,
    gap_vu: f64,
    radii: &CriticalRadii,
    epsilon: f64,
) -> PairClassKind {
    if d.is_infinite() {
        return PairClassKind::Disconnected;
    }
    let slack = (1.0 + epsilon) * r;
    // boundary d == (1+eps) r goes to BEps so the classes partition
    if d >= slack && r >= radii.r_eps {
        PairClassKind::BEps
    } else if d <= slack
        && r >= radii.r_eps
        && r <= radii.big_r_eps
        && (gap_uv >= epsilon * r || gap_vu >= epsilon * r)
    {
        PairClassKind::CEps
    } else {
        PairClassKind::Neither
    }
}

/// Classify every unordered pair of vertices.
pub fn classify_pairs(
    g: &EmbeddedGraph,
    radii: &CriticalRadii,
    table: &ConeTable,
    oracle: &ApspOracle,
    epsilon: f64,
) -> Vec<PairClass> {
    let n = g.num_vertices() as u32;
    (0..n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let field = oracle.field(u).expect("oracle covers all vertices");
            ((u + 1)..n).map(move |v| {
                let r = g.pair_dist(u, v);
                let d = field.dist[v as usize];
                let gap_uv = table.gap_toward(g, u, v);
                let gap_vu = table.gap_toward(g, v, u);
                PairClass {
                    pair: (u, v),
                    r,
                    d,
                    yao_gap_uv: gap_uv,
                    yao_gap_vu: gap_vu,
                    class: classify_one(r, d, gap_uv, gap_vu, radii, epsilon),
                }
            })
        })
        .collect()
}

/// All graph edges of length at most `r_eps`.
pub fn build_e1(g: &EmbeddedGraph, radii: &CriticalRadii) -> Vec<(u32, u32)> {
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| g.pair_dist(u, v) <= radii.r_eps)
        .collect()
}

/// The cone-table edges.
pub fn build_e2(table: &ConeTable) -> Vec<(u32, u32)> {
    table.edges()
}

fn path_union(
    classes: &[PairClass],
    oracle: &ApspOracle,
    want: PairClassKind,
) -> Vec<(u32, u32)> {
    let mut set = BTreeSet::new();
    for c in classes.iter().filter(|c| c.class == want) {
        let path = oracle
            .canonical_path(c.pair.0, c.pair.1)
            .expect("classified pairs are connected");
        set.extend(path.edges());
    }
    set.into_iter().collect()
}

/// Union of canonical shortest-path edges over high-stretch pairs.
pub fn build_e3(classes: &[PairClass], oracle: &ApspOracle) -> Vec<(u32, u32)> {
    path_union(classes, oracle, PairClassKind::BEps)
}

/// Union of canonical shortest-path edges over Yao-deficient near pairs.
pub fn build_e4(classes: &[PairClass], oracle: &ApspOracle) -> Vec<(u32, u32)> {
    path_union(classes, oracle, PairClassKind::CEps)
}

/// The four edge sets, their union, and per-edge attribution bits.
#[derive(Clone, Debug, PartialEq)]
pub struct SpannerEdges {
    pub e1: Vec<(u32, u32)>,
    pub e2: Vec<(u32, u32)>,
    pub e3: Vec<(u32, u32)>,
    pub e4: Vec<(u32, u32)>,
    /// Sorted union with parallel attribution bitmasks.
    pub union: Vec<(u32, u32)>,
    pub attribution: Vec<u8>,
}

impl SpannerEdges {
    pub fn from_sets(
        e1: Vec<(u32, u32)>,
        e2: Vec<(u32, u32)>,
        e3: Vec<(u32, u32)>,
        e4: Vec<(u32, u32)>,
    ) -> Self {
        let mut attr = std::collections::BTreeMap::<(u32, u32), u8>::new();
        for (set, bit) in [(&e1, IN_E1), (&e2, IN_E2), (&e3, IN_E3), (&e4, IN_E4)] {
            for &e in set.iter() {
                *attr.entry(e).or_default() |= bit;
            }
        }
        let union: Vec<(u32, u32)> = attr.keys().copied().collect();
        let attribution = attr.values().copied().collect();
        SpannerEdges {
            e1,
            e2,
            e3,
            e4,
            union,
            attribution,
        }
    }

    pub fn contains(&self, u: u32, v: u32) -> bool {
        let e = if u < v { (u, v) } else { (v, u) };
        self.union.binary_search(&e).is_ok()
    }

    pub fn sizes(&self) -> EdgeSetSizes {
        EdgeSetSizes {
            e1: self.e1.len(),
            e2: self.e2.len(),
            e3: self.e3.len(),
            e4: self.e4.len(),
            union: self.union.len(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeSetSizes {
    pub e1: usize,
    pub e2: usize,
    pub e3: usize,
    pub e4: usize,
    pub union: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub b_eps: u64,
    pub c_eps: u64,
    pub neither: u64,
    pub disconnected: u64,
}

/// Everything produced by one spanner construction, kept together so the
/// routing procedure and the verifier can reuse the same oracle and table.
pub struct SpannerBuild {
    pub radii: CriticalRadii,
    pub spec: ConeSpec,
    pub table: ConeTable,
    pub oracle: ApspOracle,
    pub edges: SpannerEdges,
    pub class_counts: ClassCounts,
}

/// Build all four edge sets over a shared oracle and cone table.
/// Disconnected pairs are counted and skipped, never classified.
pub fn assemble_spanner(g: &EmbeddedGraph, params: &Params) -> SpannerBuild {
    let radii = critical_radii(params);
    let spec = ConeSpec::new(params.epsilon);
    let table = build_cone_table(g, &spec);
    let oracle = apsp_all(g);
    let classes = classify_pairs(g, &radii, &table, &oracle, params.epsilon);
    let mut counts = ClassCounts::default();
    for c in &classes {
        match c.class {
            PairClassKind::BEps => counts.b_eps += 1,
            PairClassKind::CEps => counts.c_eps += 1,
            PairClassKind::Neither => counts.neither += 1,
            PairClassKind::Disconnected => counts.disconnected += 1,
        }
    }
    let e1 = build_e1(g, &radii);
    let e2 = build_e2(&table);
    let e3 = build_e3(&classes, &oracle);
    let e4 = build_e4(&classes, &oracle);
    SpannerBuild {
        radii,
        spec,
        table,
        oracle,
        edges: SpannerEdges::from_sets(e1, e2, e3, e4),
        class_counts: counts,
    }
}
