//! JSON and text forms of tables, complexes and verification reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use khovanov_core::coeff::{RingElem, SDeg, SpecVariant};
use khovanov_core::complex::GradedComplex;
use khovanov_core::homology::{HomologyEntry, HomologyTable};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: i64,
    pub q: i64,
    pub free: usize,
    pub torsion: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_plus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_minus: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub variant: String,
    pub entries: Vec<EntryJson>,
}

impl From<&HomologyTable> for TableJson {
    fn from(t: &HomologyTable) -> Self {
        let entries = t
            .entries
            .iter()
            .map(|(&(i, q), e)| EntryJson {
                i,
                q,
                free: e.free,
                torsion: e.torsion.clone(),
                pi_plus: e.pi_plus,
                pi_minus: e.pi_minus,
            })
            .collect();
        TableJson { variant: t.variant.name().to_string(), entries }
    }
}

impl TableJson {
    pub fn to_table(&self) -> Result<HomologyTable, String> {
        let variant: SpecVariant = self.variant.parse().map_err(|e| format!("{e}"))?;
        let mut t = HomologyTable::new(variant);
        for e in &self.entries {
            let entry = HomologyEntry { free: e.free, torsion: e.torsion.clone(), pi_plus: e.pi_plus, pi_minus: e.pi_minus };
            t.entries.insert((e.i, e.q), entry);
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub a: u8,
    pub b: i64,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksJson {
    pub variant: String,
    pub blocks: Vec<BlockJson>,
}

impl BlocksJson {
    pub fn new(blocks: &BTreeMap<SDeg, HomologyTable>) -> Self {
        let blocks = blocks
            .iter()
            .map(|(s, t)| BlockJson { a: s.parity, b: s.depth, entries: TableJson::from(t).entries })
            .collect();
        BlocksJson { variant: SpecVariant::Generalized.name().to_string(), blocks }
    }
}

pub fn render_blocks(blocks: &BTreeMap<SDeg, HomologyTable>) -> String {
    let mut out = String::new();
    for (s, t) in blocks {
        let _ = writeln!(out, "block ({}, {})", s.parity, s.depth);
        out.push_str(&t.to_string());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub i: i64,
    pub index: usize,
    pub vertex: usize,
    pub word: String,
    pub q: i64,
    pub sdeg: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryTriplet {
    pub i: i64,
    pub row: usize,
    pub col: usize,
    pub coeff: String,
}

/// A generalized complex: generators with gradings and the nonzero entries
/// of every differential `d^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub generators: Vec<GeneratorJson>,
    pub differentials: Vec<EntryTriplet>,
}

impl From<&GradedComplex<RingElem>> for ComplexJson {
    fn from(c: &GradedComplex<RingElem>) -> Self {
        let mut generators = Vec::new();
        for (&i, gs) in &c.gens {
            for (index, g) in gs.iter().enumerate() {
                generators.push(GeneratorJson {
                    i,
                    index,
                    vertex: g.vertex,
                    word: g.word.to_string(),
                    q: g.q_deg,
                    sdeg: [i64::from(g.sdeg.parity), g.sdeg.depth],
                });
            }
        }
        let mut differentials = Vec::new();
        for (&i, d) in &c.diffs {
            for (row, col, v) in d.iter() {
                differentials.push(EntryTriplet { i, row, col, coeff: v.to_string() });
            }
        }
        ComplexJson { generators, differentials }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

impl DiagramReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub diagrams: Vec<DiagramReport>,
}

impl VerifyReport {
    pub fn new(diagrams: Vec<DiagramReport>) -> Self {
        VerifyReport { pass: diagrams.iter().all(DiagramReport::pass), diagrams }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for d in &self.diagrams {
            for c in &d.checks {
                let status = if c.pass { "pass" } else { "FAIL" };
                let _ = writeln!(out, "{status}  {}  {}  {}", d.name, c.check, c.detail);
            }
        }
        let _ = writeln!(out, "{}", if self.pass { "all checks passed" } else { "some checks failed" });
        out
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}
