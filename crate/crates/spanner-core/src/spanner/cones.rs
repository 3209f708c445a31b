//! Per-vertex, per-cone nearest adjacent neighbor tables (Yao and Theta
//! variants).

use crate::geometry::{cone_index, dist, ConeSpec, Point};
use crate::instance::EmbeddedGraph;
use rayon::prelude::*;
use std::f64::consts::PI;

const EMPTY: u32 = u32::MAX;

/// For every vertex and cone, the selected adjacent neighbor or none.
/// The Yao variant keeps the Euclidean-nearest adjacent neighbor in the
/// cone; the Theta variant keeps the neighbor with the shortest projection
/// onto the cone bisector. Selection ties break to the lowest vertex id.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeTable {
    spec: ConeSpec,
    /// Row-major (vertex, cone) -> neighbor id, EMPTY for an empty cone.
    slots: Vec<u32>,
    n: usize,
}

impl ConeTable {
    pub fn spec(&self) -> &ConeSpec {
        &self.spec
    }

    /// The table entry `y(a, i)`.
    pub fn neighbor(&self, a: u32, cone: u32) -> Option<u32> {
        let v = self.slots[a as usize * self.spec.tau() as usize + cone as usize];
        (v != EMPTY).then_some(v)
    }

    /// The entry for the cone of `a` that contains `b`, together with the
    /// cone index. Errors only when `a` and `b` coincide.
    pub fn neighbor_toward(
        &self,
        g: &EmbeddedGraph,
        a: u32,
        b: u32,
    ) -> Result<(u32, Option<u32>), crate::geometry::GeometryError> {
        let i = cone_index(g.point(a), g.point(b), &self.spec)?;
        Ok((i, self.neighbor(a, i)))
    }

    /// Distance from `a` to its Yao neighbor toward `b`, or infinity for an
    /// empty cone.
    pub fn gap_toward(&self, g: &EmbeddedGraph, a: u32, b: u32) -> f64 {
        match self.neighbor_toward(g, a, b) {
            Ok((_, Some(y))) => g.pair_dist(a, y),
            _ => f64::INFINITY,
        }
    }

    /// Fraction of (vertex, cone) slots holding a neighbor, over the given
    /// vertices (all vertices if empty).
    pub fn occupancy(&self, vertices: &[u32]) -> f64 {
        let tau = self.spec.tau() as usize;
        let ids: Vec<u32> = if vertices.is_empty() {
            (0..self.n as u32).collect()
        } else {
            vertices.to_vec()
        };
        if ids.is_empty() {
            return 0.0;
        }
        let filled: usize = ids
            .iter()
            .map(|&v| {
                self.slots[v as usize * tau..(v as usize + 1) * tau]
                    .iter()
                    .filter(|&&s| s != EMPTY)
                    .count()
            })
            .sum();
        filled as f64 / (ids.len() * tau) as f64
    }

    /// All (vertex, neighbor) pairs in the table, normalized to u < v and
    /// deduplicated, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self
            .slots
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != EMPTY)
            .map(|(idx, &s)| {
                let a = (idx / self.spec.tau() as usize) as u32;
                if a < s {
                    (a, s)
                } else {
                    (s, a)
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn build_table<F>(g: &EmbeddedGraph, spec: &ConeSpec, key: F) -> ConeTable
where
    F: Fn(Point, Point, u32) -> f64 + Sync,
{
    let n = g.num_vertices();
    let tau = spec.tau() as usize;
    let rows: Vec<Vec<u32>> = (0..n as u32)
        .into_par_iter()
        .map(|a| {
            let mut row = vec![EMPTY; tau];
            let mut best = vec![f64::INFINITY; tau];
            let pa = g.point(a);
            for &(v, _) in g.neighbors(a) {
                let pv = g.point(v);
                let i = cone_index(pa, pv, spec).expect("distinct sampled points") as usize;
                let k = key(pa, pv, i as u32);
                // neighbors iterate in ascending id order, so strict `<`
                // leaves the lowest id in place on ties
                if k < best[i] {
                    best[i] = k;
                    row[i] = v;
                }
            }
            row
        })
        .collect();
    ConeTable {
        spec: *spec,
        slots: rows.into_iter().flatten().collect(),
        n,
    }
}

/// Yao table: per cone, the Euclidean-nearest adjacent neighbor.
pub fn build_cone_table(g: &EmbeddedGraph, spec: &ConeSpec) -> ConeTable {
    build_table(g, spec, |a, v, _| dist(a, v))
}

/// Theta table: per cone, the adjacent neighbor whose projection onto the
/// cone bisector is shortest. The last (possibly truncated) cone uses the
/// bisector of its actual angular extent.
pub fn build_theta_table(g: &EmbeddedGraph, spec: &ConeSpec) -> ConeTable {
    let eps = spec.epsilon();
    let tau = spec.tau();
    build_table(g, spec, move |a, v, i| {
        let lo = i as f64 * eps;
        let hi = if i == tau - 1 { 2.0 * PI } else { (i + 1) as f64 * eps };
        let bisector = 0.5 * (lo + hi);
        let dx = v.x - a.x;
        let dy = v.y - a.y;
        dx * bisector.cos() + dy * bisector.sin()
    })
}
