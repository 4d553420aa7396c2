//! Verification report: rows of named checks with residuals and pinned
//! tolerances, rendered as a human console summary (with runtimes) or as a
//! deterministic JSON/CSV artifact (without runtimes, so repeated runs are
//! byte-identical).

use serde::Serialize;

use crate::config::{Format, RunConfig};

/// One executed check. `max_residual` is the worst observed deviation;
/// a non-finite residual means the check could not run to completion
/// (for example an unattainable calibration tolerance) and counts as a
/// failure.
#[derive(Clone, Debug)]
pub struct CheckRow {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub config: RunConfig,
    pub checks: Vec<CheckRow>,
}

#[derive(Serialize)]
struct RowJson<'a> {
    name: &'a str,
    max_residual: Option<f64>,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    version: u32,
    config: &'a RunConfig,
    checks: Vec<RowJson<'a>>,
    pass: bool,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|row| row.pass)
    }

    /// Serialized artifact in the requested format. Runtimes are omitted:
    /// they are the one nondeterministic quantity measured.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_json(&self) -> String {
        let body = ReportJson {
            version: 1,
            config: &self.config,
            checks: self
                .checks
                .iter()
                .map(|row| RowJson {
                    name: row.name,
                    max_residual: row.max_residual.is_finite().then_some(row.max_residual),
                    tolerance: row.tolerance,
                    pass: row.pass,
                })
                .collect(),
            pass: self.pass(),
        };
        let mut text = serde_json::to_string_pretty(&body).expect("report serialization");
        text.push('\n');
        text
    }

    fn render_csv(&self) -> String {
        let mut text = String::new();
        text.push_str("# verification report\n");
        text.push_str(&format!(
            "# n = {}, levels = {}, tol = {:e}, quad_points = {}, strict = {}\n",
            self.config.n,
            self.config.levels,
            self.config.tol,
            self.config.quad_points,
            self.config.strict
        ));
        text.push_str("# columns: name, max_residual, tolerance, pass\n");
        for row in &self.checks {
            text.push_str(&format!(
                "{},{:e},{:e},{}\n",
                row.name, row.max_residual, row.tolerance, row.pass
            ));
        }
        text.push_str(&format!(
            "# summary: {}\n",
            if self.pass() { "pass" } else { "fail" }
        ));
        text
    }

    /// Console rendering, one line per check plus a summary verdict.
    pub fn console(&self) -> String {
        let mut text = format!(
            "verification: n = {}, levels = {}, tolerance scale = {:.3e}\n",
            self.config.n,
            self.config.levels,
            self.config.tol / 1e-9
        );
        let width = self
            .checks
            .iter()
            .map(|row| row.name.len())
            .max()
            .unwrap_or(0);
        for row in &self.checks {
            text.push_str(&format!(
                "  {:width$}  residual {:>9.3e}  tol {:>9.3e}  {}  ({:.1} ms)\n",
                row.name,
                row.max_residual,
                row.tolerance,
                if row.pass { "pass" } else { "FAIL" },
                row.runtime_ms,
            ));
        }
        text.push_str(&format!(
            "summary: {} ({} checks)\n",
            if self.pass() { "PASS" } else { "FAIL" },
            self.checks.len()
        ));
        text
    }
}
