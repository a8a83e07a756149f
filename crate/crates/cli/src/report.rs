//! The JSON report (schema 1) and its text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use bihom_core::conditions::{CoordinateChange, HilbertTable, ALL_CONDITIONS};
use bihom_core::implicitize::Verification;
use bihom_core::{
    BiDegree, ConditionReport, DetBackend, ImplicitResult, Parametrization, PipelineConfig, Route,
};
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ConditionFailure,
    VerificationFailure,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::ConditionFailure | Status::VerificationFailure => 1,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InputView {
    pub m: u32,
    pub n: u32,
    pub a: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ConfigView {
    pub seed: u64,
    pub det_backend: DetBackend,
    pub sat_bound: usize,
    pub window: usize,
    pub samples: usize,
    pub force: bool,
    pub assert_one_to_one: bool,
}

#[derive(Debug, Serialize)]
pub struct ConditionsView {
    pub all_hold: bool,
    #[serde(flatten)]
    pub report: ConditionReport,
}

impl ConditionsView {
    pub fn new(report: &ConditionReport) -> Self {
        Self {
            all_hold: report.all_hold(),
            report: report.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ResultView {
    /// Canonical rendering; re-parses to the normalized polynomial.
    pub polynomial: String,
    pub terms: usize,
    pub degree: u32,
    pub k: usize,
    pub mn: usize,
    pub route: Route,
    pub pivots: Vec<String>,
    pub columns: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub backend: DetBackend,
    pub backends_agree: Option<bool>,
    pub projected: bool,
    pub plane_multiples_excluded: bool,
    pub diagonal_x3_powers: bool,
    pub coordinate_change: Option<CoordinateChange>,
    /// Pulled back through the coordinate change, when one was applied.
    pub polynomial_original_coordinates: Option<String>,
    pub verification: Verification,
}

impl ResultView {
    pub fn new(r: &ImplicitResult) -> bihom_core::Result<Self> {
        let original = match r.coordinate_change {
            Some(_) => Some(r.original_coordinates()?.to_string()),
            None => None,
        };
        Ok(Self {
            polynomial: r.polynomial.to_string(),
            terms: r.polynomial.len(),
            degree: r.degree,
            k: r.k,
            mn: r.mn,
            route: r.route,
            pivots: r.pivots.iter().map(|p| p.dehomogenized()).collect(),
            columns: r.matrix.columns.iter().map(|p| p.dehomogenized()).collect(),
            matrix: r.matrix.render(),
            backend: r.backend,
            backends_agree: (r.backend == DetBackend::Both).then_some(true),
            projected: r.projected,
            plane_multiples_excluded: r.plane_multiples_excluded,
            diagonal_x3_powers: r.diagonal_x3_powers,
            coordinate_change: r.coordinate_change.clone(),
            polynomial_original_coordinates: original,
            verification: r.verification.clone(),
        })
    }
}

#[derive(Debug, Serialize)]
pub struct HilbertView {
    pub from: BiDegree,
    pub to: BiDegree,
    /// `rows[k - from.d1][l - from.d2] = dim (R/I)_{k,l}`.
    pub rows: Vec<Vec<usize>>,
}

impl HilbertView {
    pub fn new(from: BiDegree, to: BiDegree, table: &HilbertTable) -> Self {
        let rows = (from.d1..=to.d1)
            .map(|k| {
                (from.d2..=to.d2)
                    .map(|l| table.get(BiDegree::new(k, l)).expect("sampled"))
                    .collect()
            })
            .collect();
        Self { from, to, rows }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: &'static str,
    pub input: InputView,
    pub config: ConfigView,
    pub status: Status,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionsView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<ResultView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertView>,
    /// Wall-clock milliseconds per stage; the only nondeterministic field.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &'static str, phi: &Parametrization, cfg: &PipelineConfig) -> Self {
        Self {
            schema: SCHEMA,
            command,
            input: InputView {
                m: phi.m(),
                n: phi.n(),
                a: phi.a().iter().map(ToString::to_string).collect(),
            },
            config: ConfigView {
                seed: cfg.seed,
                det_backend: cfg.backend,
                sat_bound: cfg
                    .sat_bound
                    .unwrap_or(2 * phi.m().max(phi.n()) as usize + 2),
                window: cfg.window,
                samples: cfg.samples,
                force: cfg.force,
                assert_one_to_one: cfg.assert_one_to_one,
            },
            status: Status::Ok,
            error: None,
            conditions: None,
            result: None,
            verification: None,
            hilbert: None,
            timings: BTreeMap::new(),
        }
    }

    pub fn timing(&mut self, stage: &str, start: Instant) {
        self.timings
            .insert(stage.to_string(), start.elapsed().as_secs_f64() * 1000.0);
    }

    /// Records the first failure only.
    pub fn fail(&mut self, status: Status, error: Option<String>) {
        if self.status == Status::Ok {
            self.status = status;
            self.error = error;
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "bidegree ({},{})", self.input.m, self.input.n);
        for (i, a) in self.input.a.iter().enumerate() {
            let _ = writeln!(out, "  a{i} = {a}");
        }
        if let Some(c) = &self.conditions {
            for cond in ALL_CONDITIONS {
                let v = c.report.verdict(cond);
                let mark = if v.holds { "ok  " } else { "FAIL" };
                let _ = writeln!(out, "{cond} {mark} {}", v.witness);
            }
            match c.report.k {
                Some(k) => {
                    let _ = writeln!(out, "k = {k}");
                }
                None => {
                    let _ = writeln!(out, "k undefined (base locus not finite)");
                }
            }
            let _ = writeln!(out, "route: {:?}", c.report.route);
            if let Some(t) = &c.report.coordinate_change {
                let _ = writeln!(out, "coordinate change (seed {}): {:?}", t.seed, t.matrix);
            }
        }
        if let Some(r) = &self.result {
            let _ = writeln!(out, "M ({}x{}), columns {:?}:", r.mn, r.mn, r.columns);
            for row in &r.matrix {
                let _ = writeln!(out, "  [{}]", row.join(", "));
            }
            let _ = writeln!(
                out,
                "degree {} ({} terms), backend {:?}",
                r.degree, r.terms, r.backend
            );
            let _ = writeln!(
                out,
                "verification: {}/{} samples vanish, degree ok: {}",
                r.verification.samples_passed,
                r.verification.samples_requested,
                r.verification.degree_ok
            );
            let _ = writeln!(out, "{}", r.polynomial);
            if let Some(p) = &r.polynomial_original_coordinates {
                let _ = writeln!(out, "original coordinates: {p}");
            }
        }
        if let Some(v) = &self.verification {
            let _ = writeln!(
                out,
                "verification: {}/{} samples vanish, degree {:?} (expected {})",
                v.samples_passed, v.samples_requested, v.degree, v.expected_degree
            );
        }
        if let Some(h) = &self.hilbert {
            let _ = writeln!(
                out,
                "dim (R/I)_(k,l), k = {}..{}, l = {}..{}",
                h.from.d1, h.to.d1, h.from.d2, h.to.d2
            );
            for (i, row) in h.rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
                let _ = writeln!(out, "{:>3} |{}", h.from.d1 + i as u32, cells.join(""));
            }
        }
        let _ = writeln!(out, "status: {:?}", self.status);
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Ok.exit_code(), 0);
        assert_eq!(Status::ConditionFailure.exit_code(), 1);
        assert_eq!(Status::VerificationFailure.exit_code(), 1);
    }

    #[test]
    fn first_failure_is_kept() {
        let phi = Parametrization::parse(1, 1, &["s*t", "s*v", "u*t", "u*v"]).unwrap();
        let mut r = Report::new("check", &phi, &PipelineConfig::default());
        assert_eq!(r.config.sat_bound, 4);
        r.fail(Status::ConditionFailure, Some("first".into()));
        r.fail(Status::VerificationFailure, Some("second".into()));
        assert_eq!(r.status, Status::ConditionFailure);
        assert_eq!(r.error.as_deref(), Some("first"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["status"], "condition_failure");
        assert!(json.get("result").is_none());
    }
}
