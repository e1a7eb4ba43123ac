use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A published step that the exact computation contradicts; reported,
    /// and fatal only under `--strict`.
    KnownDiscrepancy,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok { Status::Pass } else { Status::Fail }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::KnownDiscrepancy => "DISCREPANCY",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub name: String,
    /// Which result the record checks, or `plumbing`.
    pub topic: String,
    pub status: Status,
    pub summary: String,
    pub witness: Value,
}

impl Record {
    pub fn new(name: impl Into<String>, topic: &str, status: Status, summary: impl Into<String>) -> Self {
        Record { name: name.into(), topic: topic.into(), status, summary: summary.into(), witness: Value::Null }
    }

    pub fn with_witness(mut self, witness: impl Serialize) -> Self {
        self.witness = serde_json::to_value(witness).unwrap_or(Value::Null);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: &str, config: impl Serialize) -> Self {
        Report {
            tool: "bhk",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn ok(&self, strict: bool) -> bool {
        self.records.iter().all(|r| match r.status {
            Status::Pass => true,
            Status::Fail => false,
            Status::KnownDiscrepancy => !strict,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "topic", "status", "summary"]).expect("in-memory write");
        for r in &self.records {
            w.write_record([r.name.as_str(), r.topic.as_str(), r.status.tag(), r.summary.as_str()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "bhk {} {}", self.version, self.command);
        for r in &self.records {
            let mut lines = r.summary.lines();
            let _ = writeln!(out, "[{}] {}: {}", r.status.tag(), r.name, lines.next().unwrap_or(""));
            for line in lines {
                let _ = writeln!(out, "    {line}");
            }
        }
        let failed = self.records.iter().filter(|r| r.status == Status::Fail).count();
        let noted = self.records.iter().filter(|r| r.status == Status::KnownDiscrepancy).count();
        let _ = writeln!(out, "{} records, {failed} failed, {noted} known discrepancies", self.records.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strictness() {
        let mut r = Report::new("x", ());
        r.push(Record::new("a", "plumbing", Status::Pass, "fine"));
        assert!(r.ok(true));
        r.push(Record::new("b", "plumbing", Status::KnownDiscrepancy, "noted"));
        assert!(r.ok(false) && !r.ok(true));
        r.push(Record::new("c", "plumbing", Status::Fail, "bad"));
        assert!(!r.ok(false));
    }

    #[test]
    fn csv_quotes_commas() {
        let mut r = Report::new("x", ());
        r.push(Record::new("a", "plumbing", Status::Pass, "one, two"));
        assert_eq!(r.to_csv(), "name,topic,status,summary\na,plumbing,PASS,\"one, two\"\n");
    }
}
