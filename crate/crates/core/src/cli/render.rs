use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::{ConfigError, Format, Params};
use crate::report::{ordering_name, CheckReport, Conclusion, Premise, Relation, Witness};

/// Everything one invocation produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub params: Params,
    pub checks: Vec<CheckReport>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn render(&self, format: Format) -> Result<String, ConfigError> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => Ok(self.to_text()),
        }
    }

    pub fn to_json(&self) -> Result<String, ConfigError> {
        let mut s = serde_json::to_string_pretty(&JsonRun::from(self))
            .map_err(|e| ConfigError(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String, ConfigError> {
        let err = |e: csv::Error| ConfigError(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "check", "relation", "lhs", "rhs", "ordering", "premises", "witness", "pass",
        ])
        .map_err(err)?;
        for check in &self.checks {
            let premises = format!(
                "{}/{}",
                check.premises.iter().filter(|p| p.pass).count(),
                check.premises.len()
            );
            let witness = check
                .witness
                .as_ref()
                .map(|w| w.items.join("; "))
                .unwrap_or_default();
            let mut row = |name: String, c: Option<&Conclusion>, pass: bool| {
                let (relation, lhs, rhs, ordering) = match c {
                    Some(c) => (
                        c.relation.to_string(),
                        c.lhs.to_string(),
                        c.rhs.to_string(),
                        c.ordering.map(ordering_name).unwrap_or("").to_string(),
                    ),
                    None => Default::default(),
                };
                w.write_record([
                    name,
                    relation,
                    lhs,
                    rhs,
                    ordering,
                    premises.clone(),
                    witness.clone(),
                    pass.to_string(),
                ])
            };
            row(
                check.name.clone(),
                check.conclusion.as_ref(),
                check.passed(),
            )
            .map_err(err)?;
            for (name, c) in &check.auxiliary {
                row(format!("{}/{name}", check.name), Some(c), c.holds).map_err(err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| ConfigError(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(s, "{} {}", self.command, params.join(" "));
        for check in &self.checks {
            let _ = writeln!(s, "{check}");
            for p in check.premises.iter().filter(|p| !p.pass) {
                let _ = writeln!(s, "  premise failed: {}", p.description);
            }
            for (name, c) in &check.auxiliary {
                let status = if c.holds { "ok" } else { "FAILED" };
                let _ = writeln!(s, "  {name}: {} {} {} {status}", c.lhs, c.relation, c.rhs);
            }
            if let Some(w) = &check.witness {
                let _ = writeln!(s, "  {}: {}", w.label, w.items.join(", "));
            }
            for (k, v) in &check.notes {
                let _ = writeln!(s, "  {k} = {v}");
            }
        }
        let _ = writeln!(
            s,
            "summary: {} checks, {} failed, {} ms",
            self.checks.len(),
            self.failed(),
            self.elapsed_ms
        );
        s
    }
}

#[derive(Serialize)]
struct JsonRun<'a> {
    command: &'a str,
    params: &'a Params,
    checks: Vec<JsonCheck<'a>>,
    summary: JsonSummary,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct JsonSummary {
    total: usize,
    failed: usize,
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    name: &'a str,
    premises: &'a [Premise],
    lhs: Option<String>,
    rhs: Option<String>,
    relation: Option<Relation>,
    ordering: Option<&'static str>,
    witness: Option<&'a Witness>,
    auxiliary: Vec<JsonAux<'a>>,
    notes: Notes<'a>,
    pass: bool,
}

#[derive(Serialize)]
struct JsonAux<'a> {
    name: &'a str,
    lhs: String,
    rhs: String,
    relation: Relation,
    ordering: Option<&'static str>,
    pass: bool,
}

/// Notes as a JSON object in insertion order.
struct Notes<'a>(&'a [(String, String)]);

impl Serialize for Notes<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'a> From<&'a RunReport> for JsonRun<'a> {
    fn from(r: &'a RunReport) -> Self {
        let checks = r
            .checks
            .iter()
            .map(|c| JsonCheck {
                name: &c.name,
                premises: &c.premises,
                lhs: c.conclusion.as_ref().map(|x| x.lhs.to_string()),
                rhs: c.conclusion.as_ref().map(|x| x.rhs.to_string()),
                relation: c.conclusion.as_ref().map(|x| x.relation),
                ordering: c
                    .conclusion
                    .as_ref()
                    .and_then(|x| x.ordering)
                    .map(ordering_name),
                witness: c.witness.as_ref(),
                auxiliary: c
                    .auxiliary
                    .iter()
                    .map(|(name, x)| JsonAux {
                        name,
                        lhs: x.lhs.to_string(),
                        rhs: x.rhs.to_string(),
                        relation: x.relation,
                        ordering: x.ordering.map(ordering_name),
                        pass: x.holds,
                    })
                    .collect(),
                notes: Notes(&c.notes),
                pass: c.passed(),
            })
            .collect();
        JsonRun {
            command: &r.command,
            params: &r.params,
            checks,
            summary: JsonSummary {
                total: r.checks.len(),
                failed: r.failed(),
            },
            elapsed_ms: r.elapsed_ms,
        }
    }
}
