//! JSON and CSV rendering of count reports.

use std::collections::BTreeMap;
use std::io;
use std::process::ExitCode;

use dancount::counting::{
    count_double_surface, count_single_surface, Caps, CountError, CountReport, Method,
};
use dancount::field::FiniteField;
use dancount::poly::{SurfaceKind, SurfaceSpec};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Failure {
    #[error(transparent)]
    Usage(#[from] anyhow::Error),
    #[error(transparent)]
    Count(#[from] CountError),
}

impl Failure {
    /// Internal inconsistencies are disagreements between methods.
    pub fn is_disagreement(&self) -> bool {
        matches!(
            self,
            Failure::Count(CountError::Inconsistent { .. } | CountError::NonIntegerResult { .. })
        )
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(if self.is_disagreement() { 2 } else { 1 })
    }
}

pub fn count(
    field: &FiniteField,
    spec: &SurfaceSpec,
    methods: &[Method],
    caps: &Caps,
) -> Result<CountReport, Failure> {
    let report = match spec.kind() {
        SurfaceKind::Single => count_single_surface(spec, field, methods, caps),
        SurfaceKind::Double => count_double_surface(spec, field, methods, caps),
    };
    report.map_err(|e| match e {
        CountError::Poly(_) | CountError::Spec(_) => Failure::Usage(e.into()),
        e => Failure::Count(e),
    })
}

/// Selected methods in canonical order with their value or `"n/a"`.
fn method_values(methods: &[Method], report: &CountReport) -> BTreeMap<&'static str, Value> {
    Method::ALL
        .into_iter()
        .filter(|m| methods.contains(m))
        .map(|m| {
            let v = match report.method_results.get(m.name()) {
                Some(Some(v)) => json!(v),
                _ if m == Method::Closed => match &report.closed_form {
                    Some(c) => json!(c.value),
                    None => json!("n/a"),
                },
                _ => json!("n/a"),
            };
            (m.name(), v)
        })
        .collect()
}

pub fn count_json(
    field: &FiniteField,
    spec: &SurfaceSpec,
    methods: &[Method],
    report: &CountReport,
) -> Value {
    let closed = |c: &dancount::counting::ClosedFormResult| json!({ "family": c.family.name(), "value": c.value, "parameters": c.parameters });
    json!({
        "field": {
            "p": field.p(),
            "r": field.r(),
            "q": field.q(),
            "modulus": field.modulus(),
        },
        "spec": {
            "kind": spec.kind(),
            "d1": spec.d1(),
            "d2": spec.d2(),
            "P": spec.p().format(field),
            "Q": spec.q().map(|q| q.format(field)),
        },
        "methods": method_values(methods, report),
        "closed_form": report.closed_form.as_ref().map(closed),
        "closed_form_matches": report.closed_form_matches.iter().map(closed).collect::<Vec<_>>(),
        "bounds": report.bounds,
        "n0": report.n0(),
        "s1": report.s1_count,
        "s2": report.s2_count,
        "total": report.total_points,
        "enumerated_total": report.enumerated_total,
        "agreement": report.agreement,
    })
}

#[derive(Debug)]
pub struct SweepRow {
    pub q: u64,
    pub methods: BTreeMap<&'static str, Value>,
    pub closed: Option<u64>,
    pub total: Option<u64>,
    pub agreement: Option<bool>,
    pub error: Option<String>,
    disagreement: bool,
}

impl SweepRow {
    pub fn new(q: u64, outcome: Result<CountReport, Failure>) -> Self {
        match outcome {
            Ok(report) => SweepRow {
                q,
                methods: method_values(&Method::ALL, &report),
                closed: report.closed_form.as_ref().map(|c| c.value),
                total: Some(report.total_points),
                agreement: Some(report.agreement),
                error: None,
                disagreement: !report.agreement,
            },
            Err(e) => SweepRow {
                q,
                methods: BTreeMap::new(),
                closed: None,
                total: None,
                agreement: None,
                error: Some(format!("{e:#}")),
                disagreement: e.is_disagreement(),
            },
        }
    }

    pub fn disagrees(&self) -> bool {
        self.disagreement
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        Some(Value::String(s)) => s.clone(),
        Some(v) => v.to_string(),
        None => String::new(),
    }
}

/// Columns: `q`, one per selected counting method, `closed`, `total`, `agreement`, `error`.
pub fn write_sweep<W: io::Write>(out: W, methods: &[Method], rows: &[SweepRow]) -> csv::Result<()> {
    let selected: Vec<Method> = Method::ALL
        .into_iter()
        .filter(|&m| m != Method::Closed && methods.contains(&m))
        .collect();
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["q"];
    header.extend(selected.iter().map(|m| m.name()));
    header.extend(["closed", "total", "agreement", "error"]);
    w.write_record(&header)?;
    for row in rows {
        let mut rec = vec![row.q.to_string()];
        rec.extend(selected.iter().map(|m| cell(row.methods.get(m.name()))));
        rec.push(row.closed.map(|v| v.to_string()).unwrap_or_default());
        rec.push(row.total.map(|v| v.to_string()).unwrap_or_default());
        rec.push(row.agreement.map(|v| v.to_string()).unwrap_or_default());
        rec.push(row.error.clone().unwrap_or_default());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep_is_header_only() {
        let mut buf = Vec::new();
        write_sweep(&mut buf, &[Method::Oracle, Method::Gcd], &[]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "q,oracle,gcd,closed,total,agreement,error\n"
        );
    }

    #[test]
    fn errors_are_quoted() {
        let row = SweepRow::new(
            6,
            Err(Failure::Usage(anyhow::anyhow!("6 is not, a prime power"))),
        );
        let mut buf = Vec::new();
        write_sweep(&mut buf, &[Method::Oracle], &[row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(
            text.ends_with("6,,,,,\"6 is not, a prime power\"\n"),
            "{text}"
        );
    }

    #[test]
    fn inconsistency_exits_with_two() {
        let e = Failure::Count(CountError::Inconsistent {
            method: "kr",
            detail: "x".into(),
        });
        assert!(e.is_disagreement());
        assert_eq!(e.exit_code(), ExitCode::from(2));
        let row = SweepRow::new(5, Err(e));
        assert!(row.disagrees());
        let e = Failure::Count(CountError::BadRow(7));
        assert_eq!(e.exit_code(), ExitCode::from(1));
    }
}
