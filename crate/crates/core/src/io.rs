//! The lattice exchange format and Hasse-diagram rendering.
//!
//! A lattice file is a JSON object:
//!
//! ```json
//! { "name": "M3",
//!   "elements": ["0", "a", "b", "c", "1"],
//!   "covers": [["0", "a"], ["0", "b"], ["0", "c"], ["a", "1"], ["b", "1"], ["c", "1"]] }
//! ```
//!
//! `covers` lists the Hasse diagram as `[lower, upper]` pairs. Reading and
//! writing preserves element and cover order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::Lattice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl LatticeFile {
    pub fn from_lattice(l: &Lattice) -> Self {
        LatticeFile {
            name: l.name().to_string(),
            elements: l.labels().to_vec(),
            covers: l
                .covers()
                .iter()
                .map(|&(a, b)| [l.label(a).to_string(), l.label(b).to_string()])
                .collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        let pairs: Vec<(&str, &str)> = self.covers.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let labels: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        Lattice::from_covers(self.name.clone(), &labels, &pairs)
    }
}

pub fn read_lattice(text: &str) -> Result<Lattice> {
    let file: LatticeFile = serde_json::from_str(text)?;
    file.to_lattice()
}

pub fn write_lattice(l: &Lattice) -> String {
    serde_json::to_string_pretty(&LatticeFile::from_lattice(l)).expect("lattice files serialize")
}

/// Single-line form, used when streaming many lattices.
pub fn write_lattice_compact(l: &Lattice) -> String {
    serde_json::to_string(&LatticeFile::from_lattice(l)).expect("lattice files serialize")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram in DOT, edges from lower to upper cover, drawn bottom to top.
pub fn to_dot(l: &Lattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(l.name())).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for x in l.elements() {
        writeln!(out, "  {};", quote(l.label(x))).unwrap();
    }
    for &(a, b) in l.covers() {
        writeln!(out, "  {} -> {};", quote(l.label(a)), quote(l.label(b))).unwrap();
    }
    out.push_str("}\n");
    out
}
