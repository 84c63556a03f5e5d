//! JSON report schema, CSV exports and atomic file output.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::{DistortionReport, HyperbolicityCertificate, RateTables, RnReport, SpectralBounds};
use crate::norms;
use crate::shadow::DriftReport;
use crate::space::DissipativeSystem;
use crate::young::YoungFunction;

use super::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Key excluded from determinism comparisons.
pub const TIMESTAMP_KEY: &str = "generated_at";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub generated_at: String,
    pub config: RunConfig,
    pub certificate: Option<HyperbolicityCertificate>,
    pub distortion: Option<DistortionReport>,
    pub rn_class: Option<RnReport>,
    pub spectral: Option<SpectralBounds>,
    pub shadow_runs: Option<ShadowSummary>,
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        let secs = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Report {
            schema_version: SCHEMA_VERSION,
            generated_at: secs.to_string(),
            config,
            certificate: None,
            distortion: None,
            rn_class: None,
            spectral: None,
            shadow_runs: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShadowRun {
    pub seed: u64,
    pub epsilon_achieved: f64,
    pub epsilon_bound: f64,
    pub orbit_residual: f64,
    /// `max_n |Π y_n - z_n|` against the shadow of the projected pseudo-orbit.
    pub factor_deviation: f64,
    pub within_bound: bool,
    #[serde(skip)]
    pub correction_norms: Vec<f64>,
    #[serde(skip)]
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShadowSummary {
    pub delta: f64,
    pub length: usize,
    /// A-priori bound from the certificate; absent when not hyperbolic.
    pub epsilon_bound: Option<f64>,
    pub max_epsilon: f64,
    pub max_residual: f64,
    pub all_within_bound: bool,
    pub runs: Vec<ShadowRun>,
    /// Drifting pseudo-orbit evidence, attached when the class is NONE.
    pub drift: Option<DriftReport>,
}

/// Named CSV tables collected before writing.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct CsvSet {
    pub files: Vec<(String, String)>,
}

impl CsvSet {
    pub fn push(&mut self, name: impl Into<String>, header: &str, rows: impl IntoIterator<Item = Vec<String>>) {
        let mut text = String::from(header);
        text.push('\n');
        for row in rows {
            let _ = writeln!(text, "{}", row.join(","));
        }
        self.files.push((name.into(), text));
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, t)| t.as_str())
    }

    pub fn nu(&mut self, phi: &YoungFunction, sys: &DissipativeSystem) {
        let w = sys.window();
        self.push("nu.csv", "k,nu", (-w..=w).map(|k| vec![k.to_string(), norms::level_norm(phi, sys, k).to_string()]));
    }

    pub fn rates(&mut self, tables: &RateTables) {
        for mode in crate::classify::Mode::ALL {
            let t = tables.get(mode);
            self.push(
                format!("rates_{}.csv", mode.name()),
                "n,a_n",
                t.values.iter().enumerate().map(|(j, a)| vec![(j + 1).to_string(), a.to_string()]),
            );
        }
    }

    pub fn masses(&mut self, sys: &DissipativeSystem) {
        self.push(
            "masses.csv",
            "k,i,mass",
            sys.mass_rows().into_iter().map(|(k, i, m)| vec![k.to_string(), i.to_string(), m.to_string()]),
        );
    }

    pub fn rn(&mut self, sys: &DissipativeSystem) {
        let w = sys.window();
        self.push(
            "rn.csv",
            "k,m_k,M_k",
            (-w..=w).map(|k| {
                let p = sys.rn_profile(k);
                vec![k.to_string(), p.min.to_string(), p.max.to_string()]
            }),
        );
    }

    pub fn shadow_traces(&mut self, summary: &ShadowSummary) {
        for run in &summary.runs {
            self.push(
                format!("shadow_seed_{}.csv", run.seed),
                "n,correction_norm,residual",
                run.correction_norms.iter().enumerate().map(|(n, c)| {
                    let r = run.residuals.get(n).map(|r| r.to_string()).unwrap_or_default();
                    vec![n.to_string(), c.to_string(), r]
                }),
            );
        }
    }
}

/// Write `contents` to `path` through a sibling temp file and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    {
        let mut f = fs::File::create(tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(tmp, path)
}

/// Parse a report and drop the timestamp, for comparisons across runs.
pub fn strip_timestamp(json: &str) -> serde_json::Result<serde_json::Value> {
    let mut v: serde_json::Value = serde_json::from_str(json)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove(TIMESTAMP_KEY);
    }
    Ok(v)
}
