//! Mode drivers: build, verify, lonely, sweep, and rgg runs, plus artifact
//! emission. Every number in `report.json`, `edges.csv`, and `sweep.csv` is
//! a pure function of (config, seed); wall-clock data goes to
//! `timings.json` only.

use crate::config::ExperimentConfig;
use spanner_core::instance::{
    generate, load_instance, save_instance, EmbeddedGraph, InstanceError, Model,
};
use spanner_core::lonely::{lonely_report, LonelyReport};
use spanner_core::paths::{apsp, apsp_all, ApspOracle};
use spanner_core::report::{
    save_edges_csv, sweep_csv, write_text, PhaseTimings, ReportError, RunReport, SweepRow,
};
use spanner_core::spanner::{
    assemble_spanner, check_far_pairs, construct_path, verify_stretch, ConstructError,
    SpannerBuild, StretchReport,
};
use std::path::Path;
use std::time::Instant;

/// Run failures carrying their process exit code.
#[derive(Debug)]
pub enum RunError {
    /// Bad config or flags → exit 1.
    Usage(String),
    /// Filesystem trouble → exit 2.
    Io(String),
    /// A library invariant broke → exit 3.
    Internal(String),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Usage(_) => 1,
            RunError::Io(_) => 2,
            RunError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RunError::Usage(m) | RunError::Io(m) | RunError::Internal(m) => m,
        }
    }
}

impl From<InstanceError> for RunError {
    fn from(e: InstanceError) -> Self {
        match e {
            InstanceError::Io(_) => RunError::Io(e.to_string()),
            InstanceError::InvalidParams(_) => RunError::Usage(e.to_string()),
            other => RunError::Io(other.to_string()),
        }
    }
}

impl From<ReportError> for RunError {
    fn from(e: ReportError) -> Self {
        RunError::Io(e.to_string())
    }
}

fn ensure_dir(dir: &Path) -> Result<(), RunError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| RunError::Io(format!("cannot create {}: {e}", dir.display())))
}

/// Evenly spaced source sample used when n is too large for all-pairs
/// verification.
const SAMPLE_SOURCES: usize = 200;
const FULL_VERIFY_LIMIT: usize = 2000;

fn verify_scope(n: usize) -> Option<Vec<u32>> {
    if n <= FULL_VERIFY_LIMIT {
        None
    } else {
        Some((0..SAMPLE_SOURCES).map(|i| (i * n / SAMPLE_SOURCES) as u32).collect())
    }
}

/// Stretch of an edge subset against the full graph, honoring the
/// verification scope policy.
fn run_verify_stretch(
    g: &EmbeddedGraph,
    subset: &[(u32, u32)],
    full_oracle: Option<&ApspOracle>,
) -> Result<(StretchReport, Option<ApspOracle>), RunError> {
    match verify_scope(g.num_vertices()) {
        None => {
            let owned;
            let oracle = match full_oracle {
                Some(o) => o,
                None => {
                    owned = apsp_all(g);
                    &owned
                }
            };
            let report = verify_stretch(g, subset, oracle, None);
            Ok((report, None))
        }
        Some(sources) => {
            let oracle = apsp(g, &sources)
                .map_err(|e| RunError::Internal(format!("sampled apsp: {e}")))?;
            let report = verify_stretch(g, subset, &oracle, Some(&sources));
            Ok((report, Some(oracle)))
        }
    }
}

/// Routing diagnostics over every connected pair: how many traces spliced
/// beyond R_eps, and how many unflagged traces used an edge outside E_eps.
fn route_diagnostics(
    g: &EmbeddedGraph,
    build: &SpannerBuild,
    epsilon: f64,
) -> Result<(u64, u64), RunError> {
    let n = g.num_vertices() as u32;
    let mut far = 0u64;
    let mut violations = 0u64;
    for u in 0..n {
        for v in (u + 1)..n {
            if build.oracle.dist(u, v).is_infinite() {
                continue;
            }
            let trace =
                construct_path(g, &build.radii, &build.table, &build.oracle, u, v, epsilon)
                    .map_err(|e| match e {
                        ConstructError::StepCapExceeded { .. } => {
                            RunError::Internal(format!("routing ({u},{v}): {e}"))
                        }
                        other => RunError::Internal(format!("routing ({u},{v}): {other}")),
                    })?;
            if trace.far_splice {
                far += 1;
                continue; // outside the containment guarantee
            }
            if trace.edges().iter().any(|&(a, b)| !build.edges.contains(a, b)) {
                violations += 1;
            }
        }
    }
    Ok((far, violations))
}

/// Pairs of the config's seed range: `seed`, `seed + 1`, ...
fn seed_range(cfg: &ExperimentConfig) -> std::ops::Range<u64> {
    cfg.seed..cfg.seed + cfg.seeds as u64
}

/// Per-seed artifact directory: the out dir itself for single-seed runs.
fn seed_dir(cfg: &ExperimentConfig, seed: u64) -> std::path::PathBuf {
    if cfg.seeds == 1 {
        cfg.out.clone()
    } else {
        cfg.out.join(format!("seed{seed}"))
    }
}

/// Routing diagnostics scale with n^2 routed pairs; skip them on instances
/// past this size (the report fields stay absent).
const ROUTE_DIAGNOSTIC_LIMIT: usize = 1200;

pub fn run_build(cfg: &ExperimentConfig) -> Result<(), RunError> {
    for seed in seed_range(cfg) {
        let dir = seed_dir(cfg, seed);
        ensure_dir(&dir)?;
        let mut timings = PhaseTimings::default();
        let params = cfg.params(Model::GnpEmbedding, seed);

        let t = Instant::now();
        let g = generate(&params)?;
        timings.record("generate", t.elapsed().as_secs_f64());

        let t = Instant::now();
        let build = assemble_spanner(&g, &params);
        timings.record("assemble", t.elapsed().as_secs_f64());

        let mut report = RunReport::new("build", params.clone(), build.radii, build.spec.tau());
        report.num_vertices = g.num_vertices();
        report.num_edges = g.num_edges();
        report.sizes = Some(build.edges.sizes());
        report.class_counts = Some(build.class_counts);
        report.disconnected_pairs = build.class_counts.disconnected;

        if g.num_vertices() <= ROUTE_DIAGNOSTIC_LIMIT {
            let t = Instant::now();
            let (far, violations) = route_diagnostics(&g, &build, cfg.epsilon)?;
            report.far_splice_traces = Some(far);
            report.containment_violations = Some(violations);
            timings.record("route", t.elapsed().as_secs_f64());
        }

        let t = Instant::now();
        let (stretch, _) = run_verify_stretch(&g, &build.edges.union, Some(&build.oracle))?;
        report.stretch = Some(stretch);
        timings.record("verify", t.elapsed().as_secs_f64());

        let t = Instant::now();
        report.far_pairs = Some(check_far_pairs(
            &g,
            &build.radii,
            &build.table,
            &build.oracle,
            cfg.epsilon,
        ));
        timings.record("far_pairs", t.elapsed().as_secs_f64());

        let t = Instant::now();
        report.lonely = Some(lonely_report(&g, cfg.n, cfg.p, cfg.epsilon, None));
        timings.record("lonely", t.elapsed().as_secs_f64());

        let t = Instant::now();
        save_instance(&g, &params.model, cfg.p, seed, &dir.join("instance.txt"))?;
        save_edges_csv(&dir.join("edges.csv"), &build.edges, |u, v| g.pair_dist(u, v))?;
        report.save(&dir.join("report.json"))?;
        timings.record("write", t.elapsed().as_secs_f64());
        timings.save(&dir.join("timings.json"))?;
    }
    Ok(())
}

/// Verify the edge subset in `edges.csv` (or the full edge set when absent)
/// against the instance frozen in `instance.txt`.
pub fn run_verify(cfg: &ExperimentConfig) -> Result<(), RunError> {
    for seed in seed_range(cfg) {
        let dir = seed_dir(cfg, seed);
        let mut timings = PhaseTimings::default();

        let t = Instant::now();
        let inst_path = dir.join("instance.txt");
        let loaded = load_instance(&inst_path)?;
        let g = loaded.graph;
        let subset = match read_edge_subset(&dir.join("edges.csv"))? {
            Some(s) => s,
            None => g.edges().to_vec(),
        };
        timings.record("load", t.elapsed().as_secs_f64());

        let params = cfg.params(loaded.model, loaded.seed);
        let radii = spanner_core::spanner::critical_radii(&params);
        let spec = spanner_core::geometry::ConeSpec::new(cfg.epsilon);
        let mut report = RunReport::new("verify", params, radii, spec.tau());
        report.num_vertices = g.num_vertices();
        report.num_edges = g.num_edges();

        let t = Instant::now();
        let (stretch, _) = run_verify_stretch(&g, &subset, None)?;
        report.disconnected_pairs = stretch.infinite_stretch_pairs;
        report.stretch = Some(stretch);
        timings.record("verify", t.elapsed().as_secs_f64());

        report.save(&dir.join("report.json"))?;
        timings.save(&dir.join("timings.json"))?;
    }
    Ok(())
}

fn read_edge_subset(path: &Path) -> Result<Option<Vec<(u32, u32)>>, RunError> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(RunError::Io(format!("{}: {e}", path.display()))),
    };
    let mut edges = Vec::new();
    for (idx, line) in text.lines().enumerate().skip(1) {
        let mut cols = line.split(',');
        let bad = || RunError::Io(format!("{}:{}: malformed edge row", path.display(), idx + 1));
        let u: u32 = cols.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let v: u32 = cols.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        edges.push((u, v));
    }
    Ok(Some(edges))
}

pub fn run_lonely(cfg: &ExperimentConfig) -> Result<(), RunError> {
    for seed in seed_range(cfg) {
        let dir = seed_dir(cfg, seed);
        ensure_dir(&dir)?;
        let mut timings = PhaseTimings::default();
        let params = cfg.params(Model::GnpEmbedding, seed);

        let t = Instant::now();
        let g = generate(&params)?;
        timings.record("generate", t.elapsed().as_secs_f64());

        let t = Instant::now();
        let lonely: LonelyReport =
            lonely_report(&g, cfg.n, cfg.p, cfg.epsilon, cfg.integral_samples);
        timings.record("lonely", t.elapsed().as_secs_f64());

        let radii = spanner_core::spanner::critical_radii(&params);
        let spec = spanner_core::geometry::ConeSpec::new(cfg.epsilon);
        let mut report = RunReport::new("lonely", params.clone(), radii, spec.tau());
        report.num_vertices = g.num_vertices();
        report.num_edges = g.num_edges();
        report.lonely = Some(lonely);

        save_instance(&g, &params.model, cfg.p, seed, &dir.join("instance.txt"))?;
        report.save(&dir.join("report.json"))?;
        timings.save(&dir.join("timings.json"))?;
    }
    Ok(())
}

pub fn run_sweep(cfg: &ExperimentConfig) -> Result<(), RunError> {
    ensure_dir(&cfg.out)?;
    let mut timings = PhaseTimings::default();
    let ns = if cfg.grid_n.is_empty() { vec![cfg.n] } else { cfg.grid_n.clone() };
    let ps = if cfg.grid_p.is_empty() { vec![cfg.p] } else { cfg.grid_p.clone() };
    let epsilons = if cfg.grid_epsilon.is_empty() {
        vec![cfg.epsilon]
    } else {
        cfg.grid_epsilon.clone()
    };

    let mut rows: Vec<SweepRow> = Vec::new();
    for &n in &ns {
        for &p in &ps {
            for &epsilon in &epsilons {
                for seed in seed_range(cfg) {
                    let t = Instant::now();
                    let mut point_cfg = cfg.clone();
                    point_cfg.n = n;
                    point_cfg.p = p;
                    point_cfg.epsilon = epsilon;
                    let params = point_cfg.params(Model::GnpEmbedding, seed);
                    let g = generate(&params)?;
                    let build = assemble_spanner(&g, &params);
                    let (stretch, _) =
                        run_verify_stretch(&g, &build.edges.union, Some(&build.oracle))?;
                    let lonely = spanner_core::lonely::count_lonely(&g, epsilon, None);
                    rows.push(SweepRow {
                        n,
                        p,
                        epsilon,
                        seed,
                        sizes: build.edges.sizes(),
                        max_stretch: stretch.max_stretch,
                        lonely_count: lonely.lonely,
                    });
                    timings.record(
                        &format!("n={n} p={p} eps={epsilon} seed={seed}"),
                        t.elapsed().as_secs_f64(),
                    );
                }
            }
        }
    }
    write_text(&cfg.out.join("sweep.csv"), &sweep_csv(&rows))?;
    timings.save(&cfg.out.join("timings.json"))?;
    Ok(())
}

pub fn run_rgg(cfg: &ExperimentConfig) -> Result<(), RunError> {
    let radius = cfg
        .radius
        .ok_or_else(|| RunError::Usage("radius: rgg mode requires a radius".into()))?;
    for seed in seed_range(cfg) {
        let dir = seed_dir(cfg, seed);
        ensure_dir(&dir)?;
        let mut timings = PhaseTimings::default();
        let mut params = cfg.params(Model::Geometric { radius }, seed);
        params.p = 1.0; // every close pair is an edge with certainty

        let t = Instant::now();
        let g = generate(&params)?;
        timings.record("generate", t.elapsed().as_secs_f64());

        let t = Instant::now();
        let build = assemble_spanner(&g, &params);
        timings.record("assemble", t.elapsed().as_secs_f64());

        let mut report = RunReport::new("rgg", params.clone(), build.radii, build.spec.tau());
        report.radius = Some(radius);
        report.num_vertices = g.num_vertices();
        report.num_edges = g.num_edges();
        report.sizes = Some(build.edges.sizes());
        report.class_counts = Some(build.class_counts);
        report.disconnected_pairs = build.class_counts.disconnected;

        // cone occupancy over interior vertices (>= radius from each side)
        let interior: Vec<u32> = (0..g.num_vertices() as u32)
            .filter(|&v| {
                let pt = g.point(v);
                pt.x >= radius && pt.x <= 1.0 - radius && pt.y >= radius && pt.y <= 1.0 - radius
            })
            .collect();
        report.cone_occupancy = Some(if interior.is_empty() {
            build.table.occupancy(&[])
        } else {
            build.table.occupancy(&interior)
        });

        let t = Instant::now();
        let (stretch, _) = run_verify_stretch(&g, &build.edges.union, Some(&build.oracle))?;
        report.stretch = Some(stretch);
        timings.record("verify", t.elapsed().as_secs_f64());

        let t = Instant::now();
        save_instance(&g, &params.model, params.p, seed, &dir.join("instance.txt"))?;
        save_edges_csv(&dir.join("edges.csv"), &build.edges, |u, v| g.pair_dist(u, v))?;
        report.save(&dir.join("report.json"))?;
        timings.record("write", t.elapsed().as_secs_f64());
        timings.save(&dir.join("timings.json"))?;
    }
    Ok(())
}
