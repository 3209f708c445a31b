//! Exact shortest-path machinery: single-source Dijkstra with deterministic
//! tie-breaking, predecessor path extraction, and an all-pairs oracle.
//!
//! This is the ground truth for pairwise graph distances and for the
//! canonical shortest paths that feed the detour edge sets.

use crate::instance::EmbeddedGraph;
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("invalid vertex id {0}")]
    InvalidVertex(u32),
    #[error("disconnected pair: {target} unreachable from {origin}")]
    DisconnectedPair { origin: u32, target: u32 },
}

/// Distances and predecessors from one source. Unreachable vertices carry
/// `f64::INFINITY` and no predecessor.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceField {
    pub source: u32,
    pub dist: Vec<f64>,
    pub pred: Vec<Option<u32>>,
}

impl DistanceField {
    pub fn is_reachable(&self, v: u32) -> bool {
        self.dist[v as usize].is_finite()
    }
}

/// A simple path with its total length.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphPath {
    pub vertices: Vec<u32>,
    pub length: f64,
}

impl GraphPath {
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.vertices.windows(2).map(|w| {
            if w[0] < w[1] {
                (w[0], w[1])
            } else {
                (w[1], w[0])
            }
        })
    }
}

/// Heap entry ordered so that the smallest distance pops first, and among
/// equal distances the lowest vertex id settles first.
#[derive(PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: u32,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Binary-heap Dijkstra. Predecessor ties (equal path length through
/// different parents) resolve to the lowest parent id, which makes the
/// extracted shortest paths canonical.
pub fn dijkstra(g: &EmbeddedGraph, s: u32) -> Result<DistanceField, PathError> {
    dijkstra_filtered(g, s, None)
}

/// Dijkstra that optionally ignores one edge; used for essential-edge checks.
pub fn dijkstra_filtered(
    g: &EmbeddedGraph,
    s: u32,
    skip_edge: Option<(u32, u32)>,
) -> Result<DistanceField, PathError> {
    let n = g.num_vertices();
    if s as usize >= n {
        return Err(PathError::InvalidVertex(s));
    }
    let skip = skip_edge.map(|(u, v)| if u < v { (u, v) } else { (v, u) });
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<u32>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s as usize] = 0.0;
    heap.push(HeapEntry { dist: 0.0, vertex: s });
    while let Some(HeapEntry { dist: d, vertex: u }) = heap.pop() {
        if settled[u as usize] {
            continue;
        }
        settled[u as usize] = true;
        for &(v, len) in g.neighbors(u) {
            if let Some(sk) = skip {
                let e = if u < v { (u, v) } else { (v, u) };
                if e == sk {
                    continue;
                }
            }
            if settled[v as usize] {
                continue;
            }
            let nd = d + len;
            match nd.partial_cmp(&dist[v as usize]) {
                Some(Ordering::Less) => {
                    dist[v as usize] = nd;
                    pred[v as usize] = Some(u);
                    heap.push(HeapEntry { dist: nd, vertex: v });
                }
                Some(Ordering::Equal) => {
                    // canonical parent: lowest id among equal-length routes
                    if pred[v as usize].map_or(true, |p| u < p) {
                        pred[v as usize] = Some(u);
                    }
                }
                _ => {}
            }
        }
    }
    Ok(DistanceField { source: s, dist, pred })
}

/// Walk predecessors from `t` back to the field's source.
pub fn shortest_path(field: &DistanceField, t: u32) -> Result<GraphPath, PathError> {
    if t as usize >= field.dist.len() {
        return Err(PathError::InvalidVertex(t));
    }
    if !field.is_reachable(t) {
        return Err(PathError::DisconnectedPair {
            origin: field.source,
            target: t,
        });
    }
    let mut vertices = vec![t];
    let mut cur = t;
    while let Some(p) = field.pred[cur as usize] {
        vertices.push(p);
        cur = p;
        debug_assert!(vertices.len() <= field.dist.len(), "predecessor cycle");
    }
    vertices.reverse();
    debug_assert_eq!(vertices[0], field.source);
    Ok(GraphPath {
        vertices,
        length: field.dist[t as usize],
    })
}

/// All-pairs oracle: one distance field per requested source. Fields are
/// computed independently (in parallel) over the read-only graph, so the
/// result does not depend on the execution schedule.
pub struct ApspOracle {
    fields: Vec<DistanceField>,
    /// Maps vertex id to its index in `fields`, or `u32::MAX` if absent.
    index: Vec<u32>,
}

impl ApspOracle {
    pub fn field(&self, s: u32) -> Option<&DistanceField> {
        let idx = *self.index.get(s as usize)?;
        if idx == u32::MAX {
            None
        } else {
            Some(&self.fields[idx as usize])
        }
    }

    /// Shortest-path distance from `u` to `v`; `u` must be a source.
    pub fn dist(&self, u: u32, v: u32) -> f64 {
        self.field(u).expect("source not covered").dist[v as usize]
    }

    pub fn sources(&self) -> impl Iterator<Item = u32> + '_ {
        self.fields.iter().map(|f| f.source)
    }

    /// The canonical shortest path between `u` and `v`: the predecessor walk
    /// in the field of the lower-id endpoint. Both orientations yield the
    /// same edge set.
    pub fn canonical_path(&self, u: u32, v: u32) -> Result<GraphPath, PathError> {
        let (s, t) = if u < v { (u, v) } else { (v, u) };
        let field = self
            .field(s)
            .ok_or(PathError::InvalidVertex(s))?;
        shortest_path(field, t)
    }
}

/// Run Dijkstra from every vertex in `sources`.
pub fn apsp(g: &EmbeddedGraph, sources: &[u32]) -> Result<ApspOracle, PathError> {
    let n = g.num_vertices();
    for &s in sources {
        if s as usize >= n {
            return Err(PathError::InvalidVertex(s));
        }
    }
    let fields: Vec<DistanceField> = sources
        .par_iter()
        .map(|&s| dijkstra(g, s).expect("validated source"))
        .collect();
    let mut index = vec![u32::MAX; n];
    for (i, f) in fields.iter().enumerate() {
        index[f.source as usize] = i as u32;
    }
    Ok(ApspOracle { fields, index })
}

/// All-pairs oracle over every vertex.
pub fn apsp_all(g: &EmbeddedGraph) -> ApspOracle {
    let sources: Vec<u32> = (0..g.num_vertices() as u32).collect();
    apsp(g, &sources).expect("all vertices are valid sources")
}

/// Vertex ids of the largest connected component (lowest-id component wins
/// ties), sorted ascending.
pub fn largest_component(g: &EmbeddedGraph) -> Vec<u32> {
    let n = g.num_vertices();
    let mut comp = vec![u32::MAX; n];
    let mut best: (usize, u32) = (0, u32::MAX); // (size, root)
    let mut next = 0u32;
    for start in 0..n as u32 {
        if comp[start as usize] != u32::MAX {
            continue;
        }
        let label = next;
        next += 1;
        let mut stack = vec![start];
        let mut size = 0usize;
        comp[start as usize] = label;
        while let Some(u) = stack.pop() {
            size += 1;
            for &(v, _) in g.neighbors(u) {
                if comp[v as usize] == u32::MAX {
                    comp[v as usize] = label;
                    stack.push(v);
                }
            }
        }
        if size > best.0 {
            best = (size, label);
        }
    }
    (0..n as u32).filter(|&v| comp[v as usize] == best.1).collect()
}
