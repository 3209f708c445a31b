//! Seeded generation, serialization, and loading of random embedded graphs:
//! the G(n,p) embedding and the random geometric graph on the unit square.
//!
//! All randomness flows through a counter-based ChaCha generator with two
//! streams: stream 0 drives point coordinates, stream 1 drives edge coins.
//! The same point set can therefore carry different edge samples, and every
//! artifact is a pure function of `(Params, seed)`.

use crate::geometry::{dist, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use thiserror::Error;

const POINT_STREAM: u64 = 0;
const EDGE_STREAM: u64 = 1;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: parse error: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: coordinate out of domain: {value}")]
    CoordinateOutOfDomain { line: usize, value: f64 },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: u32, v: u32 },
    #[error("line {line}: self loop at vertex {v}")]
    SelfLoop { line: usize, v: u32 },
    #[error("line {line}: vertex id {v} out of range (n = {n})")]
    VertexOutOfRange { line: usize, v: u32, n: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Which random graph model an instance is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    /// Each of the C(n,2) pairs is an edge independently with probability p.
    GnpEmbedding,
    /// Pairs at Euclidean distance <= radius are edges.
    Geometric { radius: f64 },
}

/// Experiment parameters: the graph model plus the spanner knobs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub p: f64,
    pub epsilon: f64,
    pub theta: f64,
    /// Short-edge radius constant (the paper only requires it "sufficiently large").
    pub m_const: f64,
    /// Far-pair radius constant.
    pub k_const: f64,
    pub seed: u64,
    pub model: Model,
}

impl Params {
    pub fn validate(&self) -> Result<(), InstanceError> {
        let fail = |msg: &str| Err(InstanceError::InvalidParams(msg.to_string()));
        if self.n < 2 {
            return fail("n must be >= 2");
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return fail("p must be in (0, 1]");
        }
        if self.epsilon <= 0.0 {
            return fail("epsilon must be > 0");
        }
        if self.theta <= 0.0 {
            return fail("theta must be > 0");
        }
        if self.m_const <= 0.0 || self.k_const <= 0.0 {
            return fail("M and K must be > 0");
        }
        if let Model::Geometric { radius } = self.model {
            if !(radius > 0.0 && radius <= std::f64::consts::SQRT_2) {
                return fail("radius must be in (0, sqrt(2)]");
            }
        }
        Ok(())
    }
}

/// An embedded graph: labeled points in the unit square plus an undirected
/// edge set. Edge lengths are always recomputed from coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedGraph {
    points: Vec<Point>,
    /// Sorted list of (u, v) with u < v.
    edges: Vec<(u32, u32)>,
    /// Per-vertex neighbor lists with precomputed lengths, sorted by id.
    adj: Vec<Vec<(u32, f64)>>,
}

impl EmbeddedGraph {
    pub fn new(points: Vec<Point>, mut edges: Vec<(u32, u32)>) -> Self {
        let n = points.len();
        for e in edges.iter_mut() {
            assert!(e.0 != e.1, "self loop");
            assert!((e.0 as usize) < n && (e.1 as usize) < n, "vertex out of range");
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            let len = dist(points[u as usize], points[v as usize]);
            adj[u as usize].push((v, len));
            adj[v as usize].push((u, len));
        }
        for list in adj.iter_mut() {
            list.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        }
        EmbeddedGraph { points, edges, adj }
    }

    pub fn num_vertices(&self) -> usize {
        self.points.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: u32) -> Point {
        self.points[v as usize]
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[(u32, f64)] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize]
            .binary_search_by(|probe| probe.0.cmp(&v))
            .is_ok()
    }

    /// Euclidean length of the edge {u, v} (defined for any pair).
    pub fn pair_dist(&self, u: u32, v: u32) -> f64 {
        dist(self.points[u as usize], self.points[v as usize])
    }
}

/// `n` points i.i.d. uniform on the unit square, reproducible per seed.
pub fn sample_points(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(POINT_STREAM);
    (0..n)
        .map(|_| {
            let x: f64 = rng.gen();
            let y: f64 = rng.gen();
            Point::new(x, y)
        })
        .collect()
}

/// Embedding of G(n,p): every unordered pair is an edge independently with
/// probability `p`. Pair coins are drawn in lexicographic order on stream 1,
/// so the edge sample is independent of the point sample.
pub fn sample_gnp_embedding(points: Vec<Point>, p: f64, seed: u64) -> EmbeddedGraph {
    assert!((0.0..=1.0).contains(&p), "p must be in [0, 1]");
    let n = points.len() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(EDGE_STREAM);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    EmbeddedGraph::new(points, edges)
}

/// Random geometric graph: edge iff Euclidean distance <= r (inclusive).
pub fn geometric_graph(points: Vec<Point>, r: f64) -> EmbeddedGraph {
    assert!(r >= 0.0, "radius must be >= 0");
    let n = points.len() as u32;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if dist(points[u as usize], points[v as usize]) <= r {
                edges.push((u, v));
            }
        }
    }
    EmbeddedGraph::new(points, edges)
}

/// Generate the instance described by `params` (model, size, seed).
pub fn generate(params: &Params) -> Result<EmbeddedGraph, InstanceError> {
    params.validate()?;
    let points = sample_points(params.n, params.seed);
    Ok(match params.model {
        Model::GnpEmbedding => sample_gnp_embedding(points, params.p, params.seed),
        Model::Geometric { radius } => geometric_graph(points, radius),
    })
}

/// Render an instance in the `geograph v1` text format. Coordinates are
/// written with 17 significant digits, which round-trips binary64 exactly.
pub fn format_instance(g: &EmbeddedGraph, model: &Model, p: f64, seed: u64) -> String {
    let mut out = String::new();
    match model {
        Model::GnpEmbedding => {
            writeln!(out, "geograph v1 n={} model=gnp p={} seed={}", g.num_vertices(), p, seed)
                .unwrap();
        }
        Model::Geometric { radius } => {
            writeln!(out, "geograph v1 n={} model=rgg r={} seed={}", g.num_vertices(), radius, seed)
                .unwrap();
        }
    }
    for (i, pt) in g.points().iter().enumerate() {
        writeln!(out, "v {} {:.16e} {:.16e}", i, pt.x, pt.y).unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u, v).unwrap();
    }
    out
}

pub fn save_instance(
    g: &EmbeddedGraph,
    model: &Model,
    p: f64,
    seed: u64,
    path: &Path,
) -> Result<(), InstanceError> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(format_instance(g, model, p, seed).as_bytes())?;
    Ok(())
}

/// Parsed instance: the graph plus the header metadata.
#[derive(Debug)]
pub struct LoadedInstance {
    pub graph: EmbeddedGraph,
    pub model: Model,
    pub p: f64,
    pub seed: u64,
}

pub fn load_instance(path: &Path) -> Result<LoadedInstance, InstanceError> {
    let f = std::fs::File::open(path)?;
    parse_instance(BufReader::new(f))
}

pub fn parse_instance<R: BufRead>(reader: R) -> Result<LoadedInstance, InstanceError> {
    let parse_err = |line: usize, msg: &str| InstanceError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut lines = reader.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file"))
        .and_then(|(i, r)| r.map(|s| (i, s)).map_err(InstanceError::Io))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "geograph" || fields[1] != "v1" {
        return Err(parse_err(1, "expected header `geograph v1 n=.. model=.. p=..|r=.. seed=..`"));
    }
    fn kv<'a>(field: &'a str, key: &str) -> Result<&'a str, InstanceError> {
        field.strip_prefix(&format!("{key}=")).ok_or_else(|| InstanceError::Parse {
            line: 1,
            msg: format!("expected `{key}=<value>`"),
        })
    }
    let n: usize = kv(fields[2], "n")?
        .parse()
        .map_err(|_| parse_err(1, "invalid n"))?;
    let (model, p) = match kv(fields[3], "model")? {
        "gnp" => {
            let p: f64 = kv(fields[4], "p")?
                .parse()
                .map_err(|_| parse_err(1, "invalid p"))?;
            (Model::GnpEmbedding, p)
        }
        "rgg" => {
            let r: f64 = kv(fields[4], "r")?
                .parse()
                .map_err(|_| parse_err(1, "invalid r"))?;
            (Model::Geometric { radius: r }, 1.0)
        }
        other => return Err(parse_err(1, &format!("unknown model `{other}`"))),
    };
    let seed: u64 = kv(fields[5], "seed")?
        .parse()
        .map_err(|_| parse_err(1, "invalid seed"))?;

    let mut points = Vec::with_capacity(n);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts[0] {
            "v" => {
                if parts.len() != 4 {
                    return Err(parse_err(lineno, "expected `v <id> <x> <y>`"));
                }
                let id: usize = parts[1]
                    .parse()
                    .map_err(|_| parse_err(lineno, "invalid vertex id"))?;
                if id != points.len() {
                    return Err(parse_err(lineno, "vertex ids must be consecutive from 0"));
                }
                let x: f64 = parts[2]
                    .parse()
                    .map_err(|_| parse_err(lineno, "invalid x coordinate"))?;
                let y: f64 = parts[3]
                    .parse()
                    .map_err(|_| parse_err(lineno, "invalid y coordinate"))?;
                for value in [x, y] {
                    if !(0.0..=1.0).contains(&value) {
                        return Err(InstanceError::CoordinateOutOfDomain { line: lineno, value });
                    }
                }
                points.push(Point::new(x, y));
            }
            "e" => {
                if parts.len() != 3 {
                    return Err(parse_err(lineno, "expected `e <u> <v>`"));
                }
                let u: u32 = parts[1]
                    .parse()
                    .map_err(|_| parse_err(lineno, "invalid vertex id"))?;
                let v: u32 = parts[2]
                    .parse()
                    .map_err(|_| parse_err(lineno, "invalid vertex id"))?;
                if u == v {
                    return Err(InstanceError::SelfLoop { line: lineno, v });
                }
                let (u, v) = if u < v { (u, v) } else { (v, u) };
                if u as usize >= n || v as usize >= n {
                    return Err(InstanceError::VertexOutOfRange {
                        line: lineno,
                        v: v.max(u),
                        n,
                    });
                }
                if !seen.insert((u, v)) {
                    return Err(InstanceError::DuplicateEdge { line: lineno, u, v });
                }
                edges.push((u, v));
            }
            other => return Err(parse_err(lineno, &format!("unknown record `{other}`"))),
        }
    }
    if points.len() != n {
        return Err(parse_err(0, "vertex count does not match header"));
    }
    Ok(LoadedInstance {
        graph: EmbeddedGraph::new(points, edges),
        model,
        p,
        seed,
    })
}
