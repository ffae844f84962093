//! Hand-transcribed Hasse diagrams with edge signs.
//!
//! Schema: `{"nodes": [{"key", "rank"}], "edges": [{"src", "dst", "sign"?}]}`
//! where `src` is the upper node and `sign` is `1` for a solid arrow and
//! `-1` for a dotted one.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::RankedHasse;
use crate::signs::{diamond_parity_check, SignAssignment, SignedEdge};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureNode {
    pub key: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEdge {
    pub src: String,
    pub dst: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub nodes: Vec<FixtureNode>,
    pub edges: Vec<FixtureEdge>,
}

pub const GL6_JSON: &str = include_str!("../fixtures/gl6.json");
pub const GL8_JSON: &str = include_str!("../fixtures/gl8.json");
pub const U21_JSON: &str = include_str!("../fixtures/u21.json");

/// The `GL(6)` diagram: `𝔍_3` with solid and dotted arrows.
pub fn gl6() -> Fixture {
    Fixture::from_json(GL6_JSON).expect("bundled fixture parses")
}

/// The `GL(8)` diagram: `𝔍_4` with solid and dotted arrows.
pub fn gl8() -> Fixture {
    Fixture::from_json(GL8_JSON).expect("bundled fixture parses")
}

/// The Hasse diagram of the `U(2, 1)` clans.
pub fn u21() -> Fixture {
    Fixture::from_json(U21_JSON).expect("bundled fixture parses")
}

impl Fixture {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Fixture(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The diagram as a ranked poset; fails on unknown nodes or rank gaps.
    pub fn hasse(&self) -> Result<RankedHasse<String>> {
        RankedHasse::from_covers(
            self.nodes.iter().map(|n| (n.key.clone(), n.rank)),
            self.edges.iter().map(|e| (e.dst.clone(), e.src.clone())),
        )
    }

    pub fn has_signs(&self) -> bool {
        !self.edges.is_empty() && self.edges.iter().all(|e| e.sign.is_some())
    }

    pub fn signed_edges(&self) -> Result<Vec<SignedEdge>> {
        self.edges
            .iter()
            .map(|e| {
                e.sign
                    .map(|sign| SignedEdge {
                        src: e.src.clone(),
                        dst: e.dst.clone(),
                        sign,
                    })
                    .ok_or_else(|| Error::Fixture(format!("edge {}→{} has no sign", e.src, e.dst)))
            })
            .collect()
    }

    /// Edge signs aligned with the edges of `h`.
    pub fn signs_on<K: crate::poset::NodeKey>(&self, h: &RankedHasse<K>) -> Result<SignAssignment> {
        SignAssignment::from_edges(h, &self.signed_edges()?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub signed: bool,
    pub nodes: usize,
    pub edges: usize,
    pub diamonds: usize,
    pub diamond_violations: usize,
    pub parity_violations: Vec<[String; 4]>,
}

impl FixtureReport {
    /// Signed diagrams must have clean diamonds and parity; unsigned ones
    /// only need to be graded.
    pub fn passed(&self) -> bool {
        !self.signed || (self.diamond_violations == 0 && self.parity_violations.is_empty())
    }
}

/// Grading, diamond shape and, when signs are present, diamond parity.
/// Diamond violations of an unsigned diagram are reported but not fatal.
pub fn verify_fixture(f: &Fixture) -> Result<FixtureReport> {
    let h = f.hasse()?;
    let shape = h.find_diamonds();
    let parity_violations = if f.has_signs() {
        let signs = f.signs_on(&h)?;
        diamond_parity_check(&h, &signs)
            .violations
            .iter()
            .map(|d| [d.bottom, d.mid1, d.mid2, d.top].map(|v| h.key(v).clone()))
            .collect()
    } else {
        Vec::new()
    };
    Ok(FixtureReport {
        signed: f.has_signs(),
        nodes: h.len(),
        edges: h.edges().len(),
        diamonds: shape.diamonds.len(),
        diamond_violations: shape.violations.len(),
        parity_violations,
    })
}
