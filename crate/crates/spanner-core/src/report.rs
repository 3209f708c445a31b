//! Run-report assembly and artifact writers. Reports are pure functions of
//! (config, seed): anything wall-clock-dependent goes to a separate timings
//! sidecar so `report.json` and `edges.csv` stay byte-identical across
//! re-runs.

use crate::instance::Params;
use crate::lonely::LonelyReport;
use crate::spanner::{
    ClassCounts, CriticalRadii, EdgeSetSizes, FarPairDiagnostics, SpannerEdges, StretchReport,
};
use serde::Serialize;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

/// Schema version stamped into every report.
pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("i/o error writing {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("serialization error: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Everything one run reports. Mode-dependent sections are optional but the
/// field set itself is stable.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub version: String,
    pub mode: String,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    pub radii: CriticalRadii,
    pub tau: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sizes: Option<EdgeSetSizes>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_counts: Option<ClassCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stretch: Option<StretchReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub far_pairs: Option<FarPairDiagnostics>,
    /// Routed traces whose splice fired beyond R_eps (outside the
    /// containment guarantee), and trace edges found missing from the union.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub far_splice_traces: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub containment_violations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone_occupancy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lonely: Option<LonelyReport>,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub disconnected_pairs: u64,
}

impl RunReport {
    pub fn new(mode: &str, params: Params, radii: CriticalRadii, tau: u32) -> Self {
        RunReport {
            version: REPORT_VERSION.to_string(),
            mode: mode.to_string(),
            params,
            radius: None,
            radii,
            tau,
            sizes: None,
            class_counts: None,
            stretch: None,
            far_pairs: None,
            far_splice_traces: None,
            containment_violations: None,
            cone_occupancy: None,
            lonely: None,
            num_vertices: 0,
            num_edges: 0,
            disconnected_pairs: 0,
        }
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn save(&self, path: &Path) -> Result<(), ReportError> {
        write_text(path, &self.to_json()?)
    }
}

/// Wall-clock measurements, kept out of `RunReport` so the report is
/// reproducible byte for byte.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PhaseTimings {
    /// (phase name, seconds), in execution order.
    pub phases: Vec<(String, f64)>,
    pub total_seconds: f64,
}

impl PhaseTimings {
    pub fn record(&mut self, phase: &str, seconds: f64) {
        self.phases.push((phase.to_string(), seconds));
        self.total_seconds += seconds;
    }

    pub fn save(&self, path: &Path) -> Result<(), ReportError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        write_text(path, &s)
    }
}

pub fn write_text(path: &Path, content: &str) -> Result<(), ReportError> {
    let io = |source| ReportError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut f = std::fs::File::create(path).map_err(io)?;
    f.write_all(content.as_bytes()).map_err(io)
}

/// Render the attributed edge union as CSV:
/// `u,v,length,in_e1,in_e2,in_e3,in_e4`, sorted by (u, v). Lengths use the
/// shortest round-trip decimal form, so output is deterministic.
pub fn edges_csv(edges: &SpannerEdges, length_of: impl Fn(u32, u32) -> f64) -> String {
    use crate::spanner::{IN_E1, IN_E2, IN_E3, IN_E4};
    let mut out = String::with_capacity(32 * edges.union.len() + 40);
    out.push_str("u,v,length,in_e1,in_e2,in_e3,in_e4\n");
    for (idx, &(u, v)) in edges.union.iter().enumerate() {
        let bits = edges.attribution[idx];
        let line = format!(
            "{u},{v},{},{},{},{},{}\n",
            length_of(u, v),
            u8::from(bits & IN_E1 != 0),
            u8::from(bits & IN_E2 != 0),
            u8::from(bits & IN_E3 != 0),
            u8::from(bits & IN_E4 != 0),
        );
        out.push_str(&line);
    }
    out
}

pub fn save_edges_csv(
    path: &Path,
    edges: &SpannerEdges,
    length_of: impl Fn(u32, u32) -> f64,
) -> Result<(), ReportError> {
    write_text(path, &edges_csv(edges, length_of))
}

/// One sweep row; columns mirror the CSV header below.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: usize,
    pub p: f64,
    pub epsilon: f64,
    pub seed: u64,
    pub sizes: EdgeSetSizes,
    pub max_stretch: f64,
    pub lonely_count: u64,
}

pub const SWEEP_HEADER: &str = "n,p,epsilon,seed,e1,e2,e3,e4,union,max_stretch,lonely\n";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.p,
            r.epsilon,
            r.seed,
            r.sizes.e1,
            r.sizes.e2,
            r.sizes.e3,
            r.sizes.e4,
            r.sizes.union,
            r.max_stretch,
            r.lonely_count,
        ));
    }
    out
}
