//! Cross-validation of the Dijkstra/APSP machinery against an independent
//! Floyd-Warshall implementation on small seeded instances.

use spanner_core::instance::{sample_gnp_embedding, sample_points, EmbeddedGraph};
use spanner_core::paths::apsp_all;

fn floyd_warshall(g: &EmbeddedGraph) -> Vec<Vec<f64>> {
    let n = g.num_vertices();
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
            if d[i][k].is_infinite() {
                continue;
            }
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

fn relative_close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn apsp_matches_floyd_warshall_on_twenty_seeds() {
    let start = std::time::Instant::now();
    for seed in 0..20u64 {
        let n = 32 + (seed as usize * 13) % 33; // sizes in [32, 64]
        let p = if seed % 2 == 0 { 0.3 } else { 0.7 };
        let g = sample_gnp_embedding(sample_points(n, seed), p, seed);
        let oracle = apsp_all(&g);
        let fw = floyd_warshall(&g);
        for u in 0..n as u32 {
            for v in 0..n as u32 {
                let a = oracle.dist(u, v);
                let b = fw[u as usize][v as usize];
                assert!(
                    relative_close(a, b, 1e-12),
                    "seed {seed} pair ({u},{v}): dijkstra {a} vs floyd-warshall {b}"
                );
            }
        }
        // path lengths equal field distances exactly
        for u in (0..n as u32).step_by(5) {
            for v in 0..n as u32 {
                if u != v && oracle.dist(u, v).is_finite() {
                    let path = oracle.canonical_path(u, v).expect("connected");
                    let mut len = 0.0;
                    for w in path.vertices.windows(2) {
                        len += g.pair_dist(w[0], w[1]);
                    }
                    assert_eq!(len, path.length, "seed {seed} path length mismatch");
                    assert!(
                        relative_close(path.length, oracle.dist(u, v), 1e-12),
                        "seed {seed} path vs field"
                    );
                }
            }
        }
    }
    assert!(
        start.elapsed().as_secs_f64() < 5.0,
        "oracle equivalence must finish within 5 seconds"
    );
}

#[test]
fn canonical_paths_are_shortest() {
    for seed in [3u64, 17] {
        let g = sample_gnp_embedding(sample_points(48, seed), 0.3, seed);
        let oracle = apsp_all(&g);
        let fw = floyd_warshall(&g);
        for u in 0..48u32 {
            for v in (u + 1)..48 {
                if let Ok(path) = oracle.canonical_path(u, v) {
                    assert!(relative_close(path.length, fw[u as usize][v as usize], 1e-12));
                }
            }
        }
    }
}
