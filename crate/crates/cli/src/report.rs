use serde::Serialize;
use std::fmt::Write as _;

pub const SCHEMA: &str = "tubecat.report/v1";

/// Where an expected value comes from: `reference` values are quoted
/// from the literature, `derived` ones are computed by an independent
/// route, `none` marks informational rows.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Reference,
    Derived,
    None,
}

impl Kind {
    fn as_str(self) -> &'static str {
        match self {
            Kind::Reference => "reference",
            Kind::Derived => "derived",
            Kind::None => "none",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub section: String,
    pub name: String,
    pub value: String,
    pub expected: Option<String>,
    pub expected_kind: Kind,
    pub residual: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn new(section: &str, name: impl Into<String>, value: impl Into<String>) -> Self {
        Check {
            section: section.to_string(),
            name: name.into(),
            value: value.into(),
            expected: None,
            expected_kind: Kind::None,
            residual: None,
            pass: true,
        }
    }

    /// Passes iff `value == expected` as strings.
    pub fn exact(section: &str, name: impl Into<String>, value: impl Into<String>, expected: impl Into<String>, kind: Kind) -> Self {
        let (value, expected) = (value.into(), expected.into());
        Check { pass: value == expected, expected: Some(expected), expected_kind: kind, ..Check::new(section, name, value) }
    }

    /// Passes iff the residual is within the tolerance.
    pub fn residual(section: &str, name: impl Into<String>, residual: f64, tol: f64, kind: Kind) -> Self {
        Check {
            pass: residual <= tol,
            expected: Some("0".into()),
            expected_kind: kind,
            residual: Some(residual),
            ..Check::new(section, name, fmt_float(residual, tol))
        }
    }

    pub fn with_expected(mut self, expected: impl Into<String>, kind: Kind) -> Self {
        self.expected = Some(expected.into());
        self.expected_kind = kind;
        self
    }

    pub fn with_residual(mut self, residual: f64, tol: f64) -> Self {
        self.residual = Some(residual);
        self.pass &= residual <= tol;
        self
    }

    pub fn failing_if(mut self, bad: bool) -> Self {
        self.pass &= !bad;
        self
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub tolerance: f64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, tolerance: f64, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report { schema: SCHEMA, command: command.to_string(), tolerance, pass, checks }
    }
}

/// Enough decimals to resolve the tolerance.
pub fn fmt_float(x: f64, tol: f64) -> String {
    if x != 0.0 && x.abs() < tol {
        return format!("{x:.2e}");
    }
    let digits = (-tol.log10()).ceil().clamp(1.0, 17.0) as usize;
    format!("{x:.digits$}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const COLUMNS: [&str; 8] = ["section", "name", "value", "expected", "expected_kind", "residual", "tolerance", "pass"];

fn row(c: &Check, tol: f64) -> [String; 8] {
    [
        c.section.clone(),
        c.name.clone(),
        c.value.clone(),
        c.expected.clone().unwrap_or_default(),
        c.expected_kind.as_str().to_string(),
        c.residual.map(|r| format!("{r:.3e}")).unwrap_or_default(),
        format!("{tol:e}"),
        if c.pass { "PASS" } else { "FAIL" }.to_string(),
    ]
}

pub fn render_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize") + "\n"
}

pub fn render_csv(r: &Report) -> String {
    let mut out = COLUMNS.join(",") + "\n";
    for c in &r.checks {
        out += &row(c, r.tolerance).iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
        out.push('\n');
    }
    out
}

pub fn render_table(r: &Report) -> String {
    let rows: Vec<[String; 8]> = r.checks.iter().map(|c| row(c, r.tolerance)).collect();
    let mut width = COLUMNS.map(|c| c.chars().count());
    for row in &rows {
        for (w, f) in width.iter_mut().zip(row) {
            *w = (*w).max(f.chars().count());
        }
    }
    let line = |fields: &[String]| -> String {
        let cells: Vec<String> = fields.iter().zip(width).map(|(f, w)| format!("{f}{}", " ".repeat(w - f.chars().count()))).collect();
        cells.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&COLUMNS.map(String::from));
    for row in &rows {
        out += &line(row);
    }
    let failed = r.checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(out, "{}: {} checks, {} failed, tolerance {:e}", r.command, r.checks.len(), failed, r.tolerance);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_follow_the_tolerance() {
        assert_eq!(fmt_float(7.0 / 6.0, 1e-9), "1.166666667");
        assert_eq!(fmt_float(0.0, 1e-3), "0.000");
        assert_eq!(fmt_float(3e-12, 1e-9), "3.00e-12");
    }

    #[test]
    fn csv_quotes_lists() {
        let r = Report::new("moments", 1e-9, vec![Check::exact("moments", "sequence", "[8,0,1]", "[8,0,1]", Kind::Reference)]);
        let csv = render_csv(&r);
        assert!(csv.contains("\"[8,0,1]\""));
        assert!(r.pass);
    }

    #[test]
    fn residual_checks_respect_tolerance() {
        assert!(Check::residual("x", "r", 1e-10, 1e-9, Kind::Derived).pass);
        assert!(!Check::residual("x", "r", 1e-8, 1e-9, Kind::Derived).pass);
    }
}
