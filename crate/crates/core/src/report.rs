//! Outcome of a check, as TSV lines or as an XML report file.

use std::collections::BTreeMap;
use std::fmt;

use crate::lmf::ValidationReport;
use crate::tei::TeiReport;
use crate::xml::{serialize_xml_with, ElementNode, SerializeOptions, XmlTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violations,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violations => "violations",
            Status::Error => "error",
        }
    }

    /// 0 conformant, 1 violations, 2 input or parse errors.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violations => 1,
            Status::Error => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub path: String,
    pub kind: String,
    pub message: String,
}

impl Finding {
    pub fn new(path: impl Into<String>, kind: impl Into<String>, message: impl Into<String>) -> Self {
        Finding {
            path: path.into(),
            kind: kind.into(),
            message: message.into(),
        }
    }

    /// `PATH<TAB>KIND<TAB>MESSAGE`, with tabs and newlines in fields
    /// replaced by spaces.
    pub fn to_tsv(&self) -> String {
        let clean = |s: &str| s.replace(['\t', '\n', '\r'], " ");
        format!("{}\t{}\t{}", clean(&self.path), clean(&self.kind), clean(&self.message))
    }
}

/// Status is `Ok` exactly when there are no findings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    status: Status,
    findings: Vec<Finding>,
}

impl Report {
    pub fn ok() -> Self {
        Report {
            status: Status::Ok,
            findings: Vec::new(),
        }
    }

    pub fn from_findings(findings: Vec<Finding>) -> Self {
        let status = if findings.is_empty() {
            Status::Ok
        } else {
            Status::Violations
        };
        Report { status, findings }
    }

    pub fn error(finding: Finding) -> Self {
        Report {
            status: Status::Error,
            findings: vec![finding],
        }
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Number of findings per kind.
    pub fn counts(&self) -> BTreeMap<&str, usize> {
        let mut out = BTreeMap::new();
        for f in &self.findings {
            *out.entry(f.kind.as_str()).or_insert(0) += 1;
        }
        out
    }

    pub fn summary(&self) -> String {
        let n = self.findings.len();
        let counts: Vec<String> = self
            .counts()
            .into_iter()
            .map(|(k, c)| format!("{k}={c}"))
            .collect();
        if counts.is_empty() {
            format!("{}: {n} findings", self.status)
        } else {
            format!("{}: {n} findings ({})", self.status, counts.join(", "))
        }
    }

    pub fn to_tsv(&self) -> String {
        self.findings
            .iter()
            .map(|f| f.to_tsv() + "\n")
            .collect()
    }

    /// `<report status subject [stamp]>` with a summary and one
    /// `<finding path kind>` per finding.
    pub fn to_xml(&self, subject: &str, stamp: Option<&str>) -> String {
        let el = |n: &str| ElementNode::new(n).expect("report names are valid");
        let attr = |e: ElementNode, k: &str, v: &str| e.with_attr(k, v).expect("valid attribute");
        let mut root = attr(attr(el("report"), "status", self.status.as_str()), "subject", subject);
        if let Some(s) = stamp {
            root = attr(root, "stamp", s);
        }
        let mut summary = attr(el("summary"), "findings", &self.findings.len().to_string());
        for (kind, n) in self.counts() {
            summary.push_child(attr(attr(el("count"), "kind", kind), "n", &n.to_string()));
        }
        root.push_child(summary);
        for f in &self.findings {
            let e = attr(attr(el("finding"), "path", &f.path), "kind", &f.kind);
            root.push_child(e.with_text(&f.message));
        }
        let opts = SerializeOptions {
            xml_decl: true,
            indent: Some(2),
        };
        serialize_xml_with(&XmlTree::new(root), opts)
    }
}

impl From<&ValidationReport> for Report {
    fn from(r: &ValidationReport) -> Self {
        Report::from_findings(
            r.violations
                .iter()
                .map(|v| Finding::new(&v.location, v.kind.as_str(), &v.message))
                .collect(),
        )
    }
}

impl From<&TeiReport> for Report {
    fn from(r: &TeiReport) -> Self {
        Report::from_findings(
            r.violations
                .iter()
                .map(|v| Finding::new(&v.path, v.kind.as_str(), &v.message))
                .collect(),
        )
    }
}
