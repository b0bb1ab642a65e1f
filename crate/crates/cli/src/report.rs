//! Verification report emitted by the batch commands.

use serde::Serialize;
use std::time::Instant;

pub fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub status: &'static str,
    /// Witness data: resolutions, deviations, failing rows.
    pub detail: serde_json::Value,
}

#[derive(Serialize)]
pub struct VerificationReport {
    pub version: &'static str,
    pub config: String,
    pub checks: Vec<Check>,
    pub overall: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u128)>>,
}

impl VerificationReport {
    pub fn new(config: String) -> Self {
        VerificationReport {
            version: env!("CARGO_PKG_VERSION"),
            config,
            checks: Vec::new(),
            overall: "pass",
            timings_ms: Some(Vec::new()),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn timing(&mut self, name: &str, start: Instant) {
        if let Some(timings) = &mut self.timings_ms {
            timings.push((name.to_string(), start.elapsed().as_millis()));
        }
    }

    /// Sets the overall status and strips timings when requested; returns
    /// whether every check passed.
    pub fn finish(&mut self, no_timings: bool) -> bool {
        let pass = self.checks.iter().all(|c| c.status == "pass");
        self.overall = status(pass);
        if no_timings {
            self.timings_ms = None;
        }
        pass
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "verification report (v{}): {}\n",
            self.version, self.overall
        );
        out.push_str(&format!("config: {}\n", self.config));
        for check in &self.checks {
            out.push_str(&format!("  {:<24} {}\n", check.name, check.status));
        }
        if let Some(timings) = &self.timings_ms {
            for (name, ms) in timings {
                out.push_str(&format!("  {name:<24} {ms} ms\n"));
            }
        }
        out
    }
}
