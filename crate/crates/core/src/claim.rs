//! Certificate trees.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// How a claim is backed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    /// Settled by an exact computation.
    Computed,
    /// Supported by a bounded search; the bounds make it reproducible.
    Evidence { bounds: BTreeMap<String, Value> },
    /// Taken from the literature.
    Axiom { citation: String },
    /// Contradicted by an exact computation.
    Refuted,
}

impl Status {
    /// Lower is weaker. A parent is never stronger than its weakest child.
    pub fn strength(&self) -> u8 {
        match self {
            Status::Refuted => 0,
            Status::Evidence { .. } => 1,
            Status::Axiom { .. } => 2,
            Status::Computed => 3,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Computed => "COMPUTED",
            Status::Evidence { .. } => "EVIDENCE",
            Status::Axiom { .. } => "AXIOM",
            Status::Refuted => "REFUTED",
        }
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Status::Refuted)
    }

    pub fn is_computed(&self) -> bool {
        matches!(self, Status::Computed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedClaim {
    pub statement: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CertifiedClaim>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl CertifiedClaim {
    fn leaf(statement: impl Into<String>, status: Status) -> Self {
        CertifiedClaim {
            statement: statement.into(),
            status,
            children: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn computed(statement: impl Into<String>) -> Self {
        Self::leaf(statement, Status::Computed)
    }

    pub fn refuted(statement: impl Into<String>) -> Self {
        Self::leaf(statement, Status::Refuted)
    }

    /// `Computed` when `holds`, `Refuted` otherwise.
    pub fn decided(statement: impl Into<String>, holds: bool) -> Self {
        if holds {
            Self::computed(statement)
        } else {
            Self::refuted(statement)
        }
    }

    pub fn evidence<K: Into<String>>(
        statement: impl Into<String>,
        bounds: impl IntoIterator<Item = (K, Value)>,
    ) -> Self {
        let bounds = bounds.into_iter().map(|(k, v)| (k.into(), v)).collect();
        Self::leaf(statement, Status::Evidence { bounds })
    }

    /// An axiom leaf. The citation must be nonempty.
    pub fn axiom(statement: impl Into<String>, citation: impl Into<String>) -> Result<Self> {
        let citation = citation.into();
        if citation.trim().is_empty() {
            return Err(Error::InvalidInput("axiom without citation".into()));
        }
        Ok(Self::leaf(statement, Status::Axiom { citation }))
    }

    /// A node whose status is the weakest status among its children.
    pub fn aggregate(statement: impl Into<String>, children: Vec<CertifiedClaim>) -> Self {
        let status = weakest(&children);
        CertifiedClaim {
            statement: statement.into(),
            status,
            children,
            data: Value::Null,
        }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    pub fn with_children(mut self, children: Vec<CertifiedClaim>) -> Self {
        self.children = children;
        self
    }

    /// Recompute this node's status from its children, never strengthening it.
    pub fn weaken_to_children(mut self) -> Self {
        if !self.children.is_empty() {
            let w = weakest(&self.children);
            if w.strength() < self.status.strength() {
                self.status = w;
            }
        }
        self
    }

    /// Visit every node, depth first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a CertifiedClaim)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    pub fn any_refuted(&self) -> bool {
        let mut found = false;
        self.walk(&mut |c| found |= c.status.is_refuted());
        found
    }

    /// True when every node is `Computed`.
    pub fn fully_computed(&self) -> bool {
        let mut ok = true;
        self.walk(&mut |c| ok &= c.status.is_computed());
        ok
    }

    /// Every axiom node carries a nonempty citation.
    pub fn axioms_cited(&self) -> bool {
        let mut ok = true;
        self.walk(&mut |c| {
            if let Status::Axiom { citation } = &c.status {
                ok &= !citation.trim().is_empty();
            }
        });
        ok
    }

    pub fn count_status(&self, label: &str) -> usize {
        let mut n = 0;
        self.walk(&mut |c| {
            if c.status.label() == label {
                n += 1;
            }
        });
        n
    }

    /// Indented tree rendering with citations inlined.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let _ = write!(out, "{pad}[{}] {}", self.status.label(), self.statement);
        match &self.status {
            Status::Axiom { citation } => {
                let _ = write!(out, " (cite: {citation})");
            }
            Status::Evidence { bounds } => {
                let b: Vec<String> = bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = write!(out, " (bounds: {})", b.join(", "));
            }
            _ => {}
        }
        out.push('\n');
        for c in &self.children {
            c.render_into(out, depth + 1);
        }
    }
}

/// Weakest status of a list; `Computed` for an empty list.
///
/// Evidence bounds of all evidence children are merged, axiom citations joined.
pub fn weakest(children: &[CertifiedClaim]) -> Status {
    let min = children
        .iter()
        .map(|c| c.status.strength())
        .min()
        .unwrap_or(3);
    match min {
        0 => Status::Refuted,
        1 => {
            let mut bounds = BTreeMap::new();
            for c in children {
                if let Status::Evidence { bounds: b } = &c.status {
                    for (k, v) in b {
                        bounds.entry(k.clone()).or_insert_with(|| v.clone());
                    }
                }
            }
            Status::Evidence { bounds }
        }
        2 => {
            let mut cites: Vec<String> = Vec::new();
            for c in children {
                if let Status::Axiom { citation } = &c.status {
                    if !cites.contains(citation) {
                        cites.push(citation.clone());
                    }
                }
            }
            Status::Axiom {
                citation: cites.join("; "),
            }
        }
        _ => Status::Computed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn aggregate_takes_weakest() {
        let c = CertifiedClaim::aggregate(
            "root",
            vec![
                CertifiedClaim::computed("a"),
                CertifiedClaim::axiom("b", "Kazhdan 1967").unwrap(),
            ],
        );
        assert_eq!(c.status.label(), "AXIOM");
        let c = CertifiedClaim::aggregate(
            "root",
            vec![
                CertifiedClaim::evidence("e", [("radius", json!(3))]),
                CertifiedClaim::refuted("r"),
            ],
        );
        assert!(c.status.is_refuted());
        assert!(CertifiedClaim::aggregate("empty", vec![]).status.is_computed());
    }

    #[test]
    fn axiom_needs_citation() {
        assert!(CertifiedClaim::axiom("x", "  ").is_err());
    }

    #[test]
    fn text_rendering() {
        let single = CertifiedClaim::computed("leaf");
        assert_eq!(single.render_text(), "[COMPUTED] leaf\n");
        let tree = CertifiedClaim::aggregate(
            "root",
            vec![CertifiedClaim::axiom("t", "Margulis 1991").unwrap()],
        );
        let text = tree.render_text();
        assert!(text.contains("  [AXIOM] t (cite: Margulis 1991)"));
    }

    #[test]
    fn json_round_trip() {
        let tree = CertifiedClaim::aggregate(
            "root",
            vec![CertifiedClaim::evidence("e", [("radius", json!(4))]).with_data(json!({"n": 3}))],
        );
        let s = serde_json::to_string(&tree).unwrap();
        let back: CertifiedClaim = serde_json::from_str(&s).unwrap();
        assert_eq!(back, tree);
    }
}
