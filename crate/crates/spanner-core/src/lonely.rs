//! The lower-bound side: lonely-edge detection and counting, the
//! semi-analytic expectation oracle, and exact essential-edge certification.
//!
//! An edge {A, B} is lonely when no third vertex inside the focal-sum
//! ellipse of the pair is adjacent to both endpoints. Lonely edges are
//! exactly the edges without a two-hop detour of length at most
//! (1 + eps) |A - B|, so every essential edge is lonely.

use crate::geometry::{dist, Point};
use crate::instance::EmbeddedGraph;
use crate::paths::dijkstra_filtered;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Area coefficient of the lonely-edge ellipse:
/// `psi = pi (1+eps) sqrt(2 eps + eps^2) / 4`, so an ellipse on a pair at
/// distance r has area `psi * r^2`.
pub fn psi(epsilon: f64) -> f64 {
    assert!(epsilon >= 0.0);
    PI * (1.0 + epsilon) * (2.0 * epsilon + epsilon * epsilon).sqrt() / 4.0
}

/// The variance-argument cutoff `rho_eps = sqrt(20 ln n / (n p psi))`.
pub fn rho_cutoff(n: usize, p: f64, epsilon: f64) -> f64 {
    (20.0 * (n as f64).ln() / (n as f64 * p * psi(epsilon))).sqrt()
}

/// Exact area of the focal-sum ellipse of (a, b) at slack `epsilon`,
/// clipped to the unit square. Adaptive Simpson over vertical chords with
/// absolute tolerance 1e-9.
pub fn ellipse_square_area(a: Point, b: Point, epsilon: f64) -> f64 {
    let r = dist(a, b);
    if r == 0.0 {
        return 0.0;
    }
    let focal_sum = (1.0 + epsilon) * r;
    let semi_major = focal_sum / 2.0;
    let semi_minor = 0.5 * (focal_sum * focal_sum - r * r).sqrt();
    if semi_minor <= 0.0 {
        return 0.0; // degenerate segment
    }
    let cx = 0.5 * (a.x + b.x);
    let cy = 0.5 * (a.y + b.y);
    let (cos_t, sin_t) = {
        let dx = b.x - a.x;
        let dy = b.y - a.y;
        (dx / r, dy / r)
    };
    // x-extent of the rotated ellipse
    let half_width = (semi_major * semi_major * cos_t * cos_t
        + semi_minor * semi_minor * sin_t * sin_t)
        .sqrt();
    let lo = (cx - half_width).max(0.0);
    let hi = (cx + half_width).min(1.0);
    if lo >= hi {
        return 0.0;
    }
    // length of the vertical chord at x, clipped to [0, 1]
    let chord = move |x: f64| -> f64 {
        let u = x - cx;
        let inv_a2 = 1.0 / (semi_major * semi_major);
        let inv_b2 = 1.0 / (semi_minor * semi_minor);
        let qa = sin_t * sin_t * inv_a2 + cos_t * cos_t * inv_b2;
        let qb = 2.0 * u * cos_t * sin_t * (inv_a2 - inv_b2);
        let qc = u * u * (cos_t * cos_t * inv_a2 + sin_t * sin_t * inv_b2) - 1.0;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc <= 0.0 {
            return 0.0;
        }
        let root = disc.sqrt();
        let v_lo = (-qb - root) / (2.0 * qa);
        let v_hi = (-qb + root) / (2.0 * qa);
        let y_lo = (cy + v_lo).max(0.0);
        let y_hi = (cy + v_hi).min(1.0);
        (y_hi - y_lo).max(0.0)
    };
    adaptive_simpson(&chord, lo, hi, 1e-9)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// True iff no third vertex inside the pair ellipse is adjacent to both
/// endpoints. Panics if {a, b} is not an edge.
pub fn is_lonely(g: &EmbeddedGraph, a: u32, b: u32, epsilon: f64) -> bool {
    assert!(g.has_edge(a, b), "is_lonely requires an edge");
    let pa = g.point(a);
    let pb = g.point(b);
    let bound = (1.0 + epsilon) * dist(pa, pb);
    // scan the smaller adjacency list
    let (base, other) = if g.neighbors(a).len() <= g.neighbors(b).len() {
        (a, b)
    } else {
        (b, a)
    };
    for &(x, _) in g.neighbors(base) {
        if x == other {
            continue;
        }
        let px = g.point(x);
        if dist(px, pa) + dist(px, pb) <= bound && g.has_edge(x, other) {
            return false;
        }
    }
    true
}

/// Lonely-edge counts over all edges, plus the count below an optional
/// length cutoff.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct LonelyCounts {
    pub lonely: u64,
    pub below_cutoff: u64,
    pub edges_total: u64,
}

pub fn count_lonely(g: &EmbeddedGraph, epsilon: f64, cutoff: Option<f64>) -> LonelyCounts {
    let (lonely, below) = g
        .edges()
        .par_iter()
        .map(|&(u, v)| {
            if is_lonely(g, u, v, epsilon) {
                let under = cutoff.map_or(0u64, |c| u64::from(g.pair_dist(u, v) <= c));
                (1u64, under)
            } else {
                (0, 0)
            }
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    LonelyCounts {
        lonely,
        below_cutoff: below,
        edges_total: g.num_edges() as u64,
    }
}

/// Semi-analytic estimate of the expected lonely-edge count, independent of
/// any sampled graph: draw uniform point pairs, compute the exact clipped
/// ellipse area q by quadrature, and average
/// `C(n,2) p (1 - p^2 q)^(n-2)` — the `p^2` reflects that a third point
/// only rescues the edge when both of its incident edges exist.
/// `paper_variant` uses a single edge-probability factor and exponent n.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LonelyExpectation {
    pub mean: f64,
    pub std_error: f64,
    /// Variant matching the printed integrand (1 - q p)^n.
    pub paper_variant_mean: f64,
    pub samples: usize,
}

pub fn expected_lonely_integral(
    n: usize,
    p: f64,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> LonelyExpectation {
    assert!(samples >= 10_000, "need at least 1e4 samples");
    assert!(n >= 2);
    let binom = 0.5 * (n as f64) * (n as f64 - 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2);
    let pairs: Vec<(Point, Point)> = (0..samples)
        .map(|_| {
            (
                Point::new(rng.gen(), rng.gen()),
                Point::new(rng.gen(), rng.gen()),
            )
        })
        .collect();
    let vals: Vec<(f64, f64)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let q = ellipse_square_area(a, b, epsilon);
            let survive = (1.0 - p * p * q).powi(n as i32 - 2);
            let paper = (1.0 - p * q).powi(n as i32);
            (binom * p * survive, binom * p * paper)
        })
        .collect();
    let mean = vals.iter().map(|v| v.0).sum::<f64>() / samples as f64;
    let paper_mean = vals.iter().map(|v| v.1).sum::<f64>() / samples as f64;
    let var = vals
        .iter()
        .map(|v| (v.0 - mean) * (v.0 - mean))
        .sum::<f64>()
        / (samples as f64 - 1.0);
    LonelyExpectation {
        mean,
        std_error: (var / samples as f64).sqrt(),
        paper_variant_mean: paper_mean,
        samples,
    }
}

/// The closed-form floor `n pi / (3 psi)` of the expectation.
pub fn closed_form_bound(n: usize, epsilon: f64) -> f64 {
    n as f64 * PI / (3.0 * psi(epsilon))
}

/// Exact essential-edge certification: an edge is essential when removing
/// it pushes the endpoints' shortest-path distance above
/// `(1 + eps) * length`. Such edges belong to every (1+eps)-spanner.
///
/// Candidates default to the lonely edges, which is exact: an edge with a
/// two-hop detour within the bound is neither lonely nor essential.
pub fn essential_edges(
    g: &EmbeddedGraph,
    epsilon: f64,
    candidates: Option<&[(u32, u32)]>,
) -> Vec<(u32, u32)> {
    let lonely_store;
    let candidates: &[(u32, u32)] = match candidates {
        Some(c) => c,
        None => {
            lonely_store = g
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| is_lonely(g, u, v, epsilon))
                .collect::<Vec<_>>();
            &lonely_store
        }
    };
    let mut out: Vec<(u32, u32)> = candidates
        .par_iter()
        .copied()
        .filter(|&(u, v)| {
            let len = g.pair_dist(u, v);
            let field = dijkstra_filtered(g, u, Some((u, v))).expect("valid vertex");
            field.dist[v as usize] > (1.0 + epsilon) * len
        })
        .collect();
    out.sort_unstable();
    out
}

/// Aggregated lower-bound measurements for one instance.
#[derive(Clone, Debug, Serialize)]
pub struct LonelyReport {
    pub lonely_count: u64,
    pub essential_count: u64,
    pub closed_form_bound: f64,
    pub rho_cutoff: f64,
    pub count_below_cutoff: u64,
    pub edges_total: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral_estimate: Option<LonelyExpectation>,
}

pub fn lonely_report(
    g: &EmbeddedGraph,
    n: usize,
    p: f64,
    epsilon: f64,
    integral_samples: Option<usize>,
) -> LonelyReport {
    let rho = rho_cutoff(n, p, epsilon);
    let counts = count_lonely(g, epsilon, Some(rho));
    let essential = essential_edges(g, epsilon, None);
    let integral =
        integral_samples.map(|s| expected_lonely_integral(n, p, epsilon, s, 0x10_e1));
    LonelyReport {
        lonely_count: counts.lonely,
        essential_count: essential.len() as u64,
        closed_form_bound: closed_form_bound(n, epsilon),
        rho_cutoff: rho,
        count_below_cutoff: counts.below_cutoff,
        edges_total: counts.edges_total,
        integral_estimate: integral,
    }
}
