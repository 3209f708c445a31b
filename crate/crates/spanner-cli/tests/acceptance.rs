//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line with the measured quantities. Tolerances are pinned in
//! the assertions; a red test here means the contract is not met.

use spanner_core::geometry::{dist, ConeSpec};
use spanner_core::instance::{
    generate, geometric_graph, sample_gnp_embedding, sample_points, EmbeddedGraph, Model, Params,
};
use spanner_core::lonely::{
    closed_form_bound, count_lonely, essential_edges, expected_lonely_integral, psi,
};
use spanner_core::paths::apsp_all;
use spanner_core::spanner::{
    assemble_spanner, build_cone_table, check_far_pairs, construct_path, verify_stretch,
    yao_route, SpannerBuild,
};
use std::sync::OnceLock;
use std::time::Instant;

fn verdict(criterion: u32, name: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion:2} [{tag}] {name}: {detail}");
    assert!(ok, "criterion {criterion} ({name}) failed: {detail}");
}

fn gnp_params(n: usize, p: f64, epsilon: f64, k_const: f64, seed: u64) -> Params {
    Params {
        n,
        p,
        epsilon,
        theta: 0.5,
        m_const: 2.0,
        k_const,
        seed,
        model: Model::GnpEmbedding,
    }
}

/// Instances shared by criteria 2 and 10 (K = 20) and by criteria 3 and 8
/// (K = 400, which pushes R_eps past sqrt(2)).
struct Fixture {
    params: Params,
    graph: EmbeddedGraph,
    build: SpannerBuild,
}

fn make_fixtures(k_const: f64) -> Vec<Fixture> {
    (11..16u64)
        .map(|seed| {
            let params = gnp_params(400, 0.3, 0.25, k_const, seed);
            let graph = generate(&params).expect("valid params");
            let build = assemble_spanner(&graph, &params);
            Fixture { params, graph, build }
        })
        .collect()
}

fn fixtures_k20() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| make_fixtures(20.0))
}

fn fixtures_k400() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| make_fixtures(400.0))
}

#[test]
fn criterion_01_oracle_equivalence() {
    let start = Instant::now();
    let mut worst_rel = 0.0f64;
    for seed in 0..20u64 {
        let n = 32 + (seed as usize * 13) % 33;
        let p = if seed % 2 == 0 { 0.3 } else { 0.7 };
        let g = sample_gnp_embedding(sample_points(n, seed), p, seed);
        let oracle = apsp_all(&g);
        // independent Floyd-Warshall
        let mut d = vec![vec![f64::INFINITY; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0.0;
        }
        for &(u, v) in g.edges() {
            let len = g.pair_dist(u, v);
            d[u as usize][v as usize] = len;
            d[v as usize][u as usize] = len;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        for u in 0..n as u32 {
            for v in 0..n as u32 {
                let a = oracle.dist(u, v);
                let b = d[u as usize][v as usize];
                if a.is_finite() || b.is_finite() {
                    let rel = (a - b).abs() / a.abs().max(b.abs()).max(1.0);
                    assert!(rel <= 1e-12, "seed {seed} ({u},{v}): {a} vs {b}");
                    worst_rel = worst_rel.max(rel);
                }
                if u != v && a.is_finite() {
                    let path = oracle.canonical_path(u, v).expect("connected");
                    let mut len = 0.0;
                    for w in path.vertices.windows(2) {
                        len += g.pair_dist(w[0], w[1]);
                    }
                    assert_eq!(len, path.length, "path length must equal field distance");
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        1,
        "oracle equivalence",
        secs < 5.0,
        &format!("20 seeds, worst relative gap {worst_rel:.2e}, {secs:.2}s (< 5s)"),
    );
}

#[test]
fn criterion_02_construct_stretch_bound() {
    let mut max_ratio = 0.0f64;
    let mut max_secs = 0.0f64;
    let bound = 1.0 + 7.0 * 0.25;
    for fx in fixtures_k20() {
        let t = Instant::now();
        let n = fx.graph.num_vertices() as u32;
        for u in 0..n {
            for v in (u + 1)..n {
                let d = fx.build.oracle.dist(u, v);
                if d.is_infinite() {
                    continue;
                }
                let trace = construct_path(
                    &fx.graph,
                    &fx.build.radii,
                    &fx.build.table,
                    &fx.build.oracle,
                    u,
                    v,
                    fx.params.epsilon,
                )
                .expect("connected pair routes");
                assert!(
                    trace.length <= bound * d + 1e-9,
                    "seed {} pair ({u},{v}): {} > {}",
                    fx.params.seed,
                    trace.length,
                    bound * d
                );
                max_ratio = max_ratio.max(trace.length / d);
            }
        }
        max_secs = max_secs.max(t.elapsed().as_secs_f64());
    }
    verdict(
        2,
        "construct stretch <= (1+7eps) d",
        max_secs < 60.0,
        &format!("5 seeds at n=400, max ratio {max_ratio:.4} vs bound {bound}, worst seed {max_secs:.1}s (< 60s)"),
    );
}

#[test]
fn criterion_03_containment() {
    let mut flagged = 0u64;
    let mut violations = 0u64;
    let mut max_stretch = 0.0f64;
    for fx in fixtures_k400() {
        assert!(
            fx.build.radii.big_r_eps >= std::f64::consts::SQRT_2,
            "K=400 must push R_eps past the diameter"
        );
        let n = fx.graph.num_vertices() as u32;
        for u in 0..n {
            for v in (u + 1)..n {
                if fx.build.oracle.dist(u, v).is_infinite() {
                    continue;
                }
                let trace = construct_path(
                    &fx.graph,
                    &fx.build.radii,
                    &fx.build.table,
                    &fx.build.oracle,
                    u,
                    v,
                    fx.params.epsilon,
                )
                .expect("connected pair routes");
                if trace.far_splice {
                    flagged += 1;
                }
                if trace.edges().iter().any(|&(a, b)| !fx.build.edges.contains(a, b)) {
                    violations += 1;
                }
            }
        }
        let report = verify_stretch(&fx.graph, &fx.build.edges.union, &fx.build.oracle, None);
        max_stretch = max_stretch.max(report.max_stretch);
    }
    let bound = 1.0 + 7.0 * 0.25 + 1e-9;
    let ok = flagged == 0 && violations == 0 && max_stretch <= bound;
    verdict(
        3,
        "trace containment in E_eps",
        ok,
        &format!("flagged traces {flagged}, containment violations {violations}, max spanner stretch {max_stretch:.4} (<= {bound:.4})"),
    );
}

#[test]
fn criterion_04_yao_stretch_p1() {
    let start = Instant::now();
    let eps = 0.2f64;
    let factor = 1.0 / (eps.cos() - eps.sin());
    let g = sample_gnp_embedding(sample_points(300, 7), 1.0, 7);
    let table = build_cone_table(&g, &ConeSpec::new(eps));
    let mut max_ratio = 0.0f64;
    for u in 0..300u32 {
        for v in 0..300u32 {
            if u == v {
                continue;
            }
            let path = yao_route(&g, &table, u, v).expect("complete graph routes");
            let r = g.pair_dist(u, v);
            assert!(
                path.length <= factor * r + 1e-9,
                "pair ({u},{v}): {} > {}",
                path.length,
                factor * r
            );
            max_ratio = max_ratio.max(path.length / r);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        4,
        "Yao routing stretch at p=1",
        secs < 30.0,
        &format!("all ordered pairs, max ratio {max_ratio:.4} vs bound {factor:.4}, {secs:.1}s (< 30s)"),
    );
}

#[test]
fn criterion_05_short_edge_count() {
    let n = 2000usize;
    let p = 0.2f64;
    let eps = 0.25f64;
    let spec = ConeSpec::new(eps);
    let mut e1_sum = 0.0f64;
    let mut e2_ok = true;
    let mut r_eps = 0.0;
    for seed in 0..20u64 {
        let params = gnp_params(n, p, eps, 20.0, seed);
        let g = generate(&params).expect("valid params");
        let radii = spanner_core::spanner::critical_radii(&params);
        r_eps = radii.r_eps;
        let e1 = g
            .edges()
            .iter()
            .filter(|&&(u, v)| g.pair_dist(u, v) <= radii.r_eps)
            .count();
        e1_sum += e1 as f64;
        let e2 = build_cone_table(&g, &spec).edges().len();
        e2_ok &= e2 <= spec.tau() as usize * n;
    }
    let mean_e1 = e1_sum / 20.0;
    let bound = 0.5 * (n as f64) * (n as f64 - 1.0) * std::f64::consts::PI * r_eps * r_eps * p;
    let ok = mean_e1 <= bound && mean_e1 >= 0.55 * bound && e2_ok;
    verdict(
        5,
        "E1 count vs area bound, E2 <= tau n",
        ok,
        &format!("mean |E1| {mean_e1:.0} in [0.55x, 1x] of {bound:.0}; |E2| bound held: {e2_ok}"),
    );
}

#[test]
fn criterion_06_size_scaling() {
    let p = 0.3f64;
    let theta = 0.5f64;
    let mut ratios = Vec::new();
    for &n in &[500usize, 1000, 2000] {
        let mut total = 0.0f64;
        for seed in 0..5u64 {
            let params = gnp_params(n, p, 0.25, 20.0, seed);
            let g = generate(&params).expect("valid params");
            let build = assemble_spanner(&g, &params);
            total += build.edges.union.len() as f64;
        }
        let mean = total / 5.0;
        ratios.push(mean / (n as f64 * p.powf(-theta)));
    }
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let spread = max / min;
    verdict(
        6,
        "spanner size linear in n",
        spread <= 1.5,
        &format!("|E_eps|/(n p^-theta) over n=500/1000/2000: {ratios:.3?}, spread {spread:.3} (<= 1.5)"),
    );
}

#[test]
fn criterion_07_lonely_expectation() {
    let start = Instant::now();
    let n = 1500usize;
    let p = 0.15f64;
    let eps = 0.2f64;
    let mut total = 0.0f64;
    for seed in 0..20u64 {
        let g = sample_gnp_embedding(sample_points(n, seed), p, seed);
        total += count_lonely(&g, eps, None).lonely as f64;
    }
    let empirical_mean = total / 20.0;
    let oracle = expected_lonely_integral(n, p, eps, 100_000, 424_242);
    let rel = (empirical_mean - oracle.mean).abs() / oracle.mean;
    let floor = closed_form_bound(n, eps);
    let secs = start.elapsed().as_secs_f64();
    let ok = rel <= 0.15 && empirical_mean >= 0.8 * floor && secs < 120.0;
    verdict(
        7,
        "lonely count matches expectation oracle",
        ok,
        &format!(
            "mean {empirical_mean:.0} vs oracle {:.0} (+-{:.0}) rel {rel:.3} (<= 0.15); floor 0.8x{floor:.0}; {secs:.1}s (< 120s)",
            oracle.mean, oracle.std_error
        ),
    );
}

#[test]
fn criterion_08_essential_edges_and_linearity() {
    // every essential edge of the K=400 instances must sit inside E_eps
    let mut misses = 0u64;
    let mut essential_total = 0u64;
    for fx in fixtures_k400() {
        let essential = essential_edges(&fx.graph, fx.params.epsilon, None);
        essential_total += essential.len() as u64;
        misses += essential
            .iter()
            .filter(|&&(u, v)| !fx.build.edges.contains(u, v))
            .count() as u64;
    }
    // lonely count doubles when n doubles at fixed p, eps
    let mut means = Vec::new();
    for &n in &[400usize, 800] {
        let mut total = 0.0;
        for seed in 0..20u64 {
            let g = sample_gnp_embedding(sample_points(n, seed), 0.3, seed);
            total += count_lonely(&g, 0.25, None).lonely as f64;
        }
        means.push(total / 20.0);
    }
    let factor = means[1] / means[0];
    let ok = misses == 0 && (1.7..=2.3).contains(&factor);
    verdict(
        8,
        "essential edges contained, lonely count linear",
        ok,
        &format!("{essential_total} essential edges, {misses} outside E_eps; doubling factor {factor:.3} in [1.7, 2.3]"),
    );
}

#[test]
fn criterion_09_rgg_spanner() {
    let n = 2000usize;
    let eps = 0.3f64;
    let radius = (25.0 * (n as f64).ln() / n as f64).sqrt();
    let mut c_values = Vec::new();
    let mut min_occupancy = 1.0f64;
    let mut max_stretch = 0.0f64;
    for seed in 5..10u64 {
        let mut params = gnp_params(n, 1.0, eps, 20.0, seed);
        params.model = Model::Geometric { radius };
        let g = generate(&params).expect("valid params");
        let build = assemble_spanner(&g, &params);
        let interior: Vec<u32> = (0..n as u32)
            .filter(|&v| {
                let pt = g.point(v);
                pt.x >= radius && pt.x <= 1.0 - radius && pt.y >= radius && pt.y <= 1.0 - radius
            })
            .collect();
        min_occupancy = min_occupancy.min(build.table.occupancy(&interior));
        let report = verify_stretch(&g, &build.edges.union, &build.oracle, None);
        max_stretch = max_stretch.max(report.max_stretch);
        c_values.push(build.edges.union.len() as f64 / (n as f64 / (eps * eps)));
    }
    let c_mean = c_values.iter().sum::<f64>() / c_values.len() as f64;
    let c_stable = c_values.iter().all(|c| (c - c_mean).abs() <= 0.3 * c_mean);
    let bound = 1.0 + 7.0 * eps;
    let ok = min_occupancy >= 0.99 && max_stretch <= bound && c_stable;
    verdict(
        9,
        "RGG spanner occupancy, stretch, size",
        ok,
        &format!("min interior occupancy {min_occupancy:.4} (>= 0.99), max stretch {max_stretch:.4} (<= {bound}), C = {c_mean:.2} stable +-30%: {c_stable}"),
    );
}

#[test]
fn criterion_10_far_pair_distances() {
    let mut pairs = 0u64;
    let mut violations = 0u64;
    for fx in fixtures_k20() {
        let diag = check_far_pairs(
            &fx.graph,
            &fx.build.radii,
            &fx.build.table,
            &fx.build.oracle,
            fx.params.epsilon,
        );
        pairs += diag.pairs_at_range;
        violations += diag.distance_violations;
    }
    verdict(
        10,
        "far pairs nearly straight",
        violations == 0,
        &format!("{pairs} pairs at dist >= R_eps across 5 seeds, {violations} violations of d <= (1+4eps) r"),
    );
}

#[test]
fn criterion_11_byte_identical_artifacts() {
    let bin = env!("CARGO_BIN_EXE_spanner-lab");
    let base = std::env::temp_dir().join(format!("spanner-acceptance-{}", std::process::id()));
    let dirs = [base.join("run_a"), base.join("run_b")];
    for dir in &dirs {
        let status = std::process::Command::new(bin)
            .args([
                "build", "--n", "150", "--p", "0.3", "--epsilon", "0.25", "--seed", "42", "--out",
            ])
            .arg(dir)
            .status()
            .expect("binary runs");
        assert!(status.success(), "build run failed");
    }
    let mut identical = true;
    for file in ["report.json", "edges.csv", "instance.txt"] {
        let a = std::fs::read(dirs[0].join(file)).expect("artifact exists");
        let b = std::fs::read(dirs[1].join(file)).expect("artifact exists");
        identical &= a == b;
    }
    std::fs::remove_dir_all(&base).ok();
    verdict(
        11,
        "re-runs byte-identical",
        identical,
        "report.json, edges.csv, instance.txt identical across two runs",
    );
}
