//! Corpus files: PD text with a `# key: value` metadata header.
//!
//! ```text
//! # name: 3_1
//! # kind: knot
//! # variant-of: 3_1
//! # expect even: 0,1:1 0,3:1 2,5:1 3,7:0:2 3,9:1
//! X(1,2,3,4) X(2,5,6,3) X(5,1,4,6)
//! ```
//!
//! A fixture entry `i,q:free[:t1,t2,…]` lists the free rank and torsion
//! orders of one bidegree.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use khovanov_core::coeff::SpecVariant;
use khovanov_core::complex::build_complex;
use khovanov_core::diagram::{parse_pd, Diagram};
use khovanov_core::homology::{HomologyEntry, HomologyTable};
use rayon::prelude::*;

use crate::compute::table;
use crate::Failure;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub path: Option<PathBuf>,
    pub meta: BTreeMap<String, String>,
    pub expected: BTreeMap<SpecVariant, HomologyTable>,
    pub diagram: Diagram,
}

impl CorpusEntry {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.get(key).map(String::as_str)
    }

    /// Name of the diagram this one is a Reidemeister variant of.
    pub fn variant_of(&self) -> Option<&str> {
        self.meta("variant-of")
    }

    pub fn is_knot(&self) -> bool {
        self.meta("kind") != Some("link")
    }
}

/// Parses one fixture line body.
pub fn parse_fixture(variant: SpecVariant, text: &str) -> Result<HomologyTable, Failure> {
    let bad = |item: &str| Failure::Input(format!("malformed fixture item `{item}`"));
    let mut t = HomologyTable::new(variant);
    for item in text.split_whitespace() {
        let mut parts = item.split(':');
        let (i, q) = parts.next().and_then(|iq| iq.split_once(',')).ok_or_else(|| bad(item))?;
        let i: i64 = i.parse().map_err(|_| bad(item))?;
        let q: i64 = q.parse().map_err(|_| bad(item))?;
        let free: usize = parts.next().ok_or_else(|| bad(item))?.parse().map_err(|_| bad(item))?;
        let torsion: Vec<u64> = match parts.next() {
            Some(ts) => ts.split(',').map(|t| t.parse().map_err(|_| bad(item))).collect::<Result<_, _>>()?,
            None => Vec::new(),
        };
        if parts.next().is_some() || torsion.iter().any(|&t| t < 2) || t.entries.contains_key(&(i, q)) {
            return Err(bad(item));
        }
        t.entries.insert((i, q), HomologyEntry { free, torsion, pi_plus: None, pi_minus: None });
    }
    Ok(t)
}

/// Renders a table as a fixture line body.
pub fn fixture_line(t: &HomologyTable) -> String {
    t.entries
        .iter()
        .map(|(&(i, q), e)| {
            let mut s = format!("{i},{q}:{}", e.free);
            if !e.torsion.is_empty() {
                let ts: Vec<String> = e.torsion.iter().map(u64::to_string).collect();
                s.push(':');
                s.push_str(&ts.join(","));
            }
            s
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a corpus file. `fallback_name` is used when the header has no name.
pub fn parse_entry(text: &str, fallback_name: &str) -> Result<CorpusEntry, Failure> {
    let mut meta = BTreeMap::new();
    let mut expected = BTreeMap::new();
    for line in text.lines() {
        let Some(body) = line.trim().strip_prefix('#') else { continue };
        let Some((key, value)) = body.split_once(':') else { continue };
        let (key, value) = (key.trim(), value.trim());
        if let Some(v) = key.strip_prefix("expect ") {
            let variant: SpecVariant = v.trim().parse()?;
            if expected.insert(variant, parse_fixture(variant, value)?).is_some() {
                return Err(Failure::Input(format!("duplicate fixture for variant {variant}")));
            }
        } else if meta.insert(key.to_string(), value.to_string()).is_some() {
            return Err(Failure::Input(format!("duplicate metadata key `{key}`")));
        }
    }
    let diagram = parse_pd(text)?;
    let name = meta.get("name").cloned().unwrap_or_else(|| fallback_name.to_string());
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return Err(Failure::Input(format!("invalid corpus name `{name}`")));
    }
    Ok(CorpusEntry { name, path: None, meta, expected, diagram })
}

pub fn load_file(path: &Path) -> Result<CorpusEntry, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    let mut entry = parse_entry(&text, stem).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    entry.path = Some(path.to_path_buf());
    Ok(entry)
}

/// Loads every `*.pd` file of a directory, sorted by name.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>, Failure> {
    let mut entries = Vec::new();
    let listing = fs::read_dir(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    for item in listing {
        let path = item?.path();
        if path.extension().and_then(|e| e.to_str()) == Some("pd") {
            entries.push(load_file(&path)?);
        }
    }
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    for w in entries.windows(2) {
        if w[0].name == w[1].name {
            return Err(Failure::Input(format!("duplicate corpus name `{}`", w[0].name)));
        }
    }
    Ok(entries)
}

/// Validates `file` and copies it into `dir` as `<name>.pd`.
pub fn add(dir: &Path, file: &Path) -> Result<PathBuf, Failure> {
    let entry = load_file(file)?;
    let existing = load_dir(dir)?;
    if existing.iter().any(|e| e.name == entry.name) {
        return Err(Failure::Input(format!("corpus already has an entry named `{}`", entry.name)));
    }
    let target = dir.join(format!("{}.pd", entry.name));
    fs::copy(file, &target)?;
    Ok(target)
}

/// Outcome of checking one entry's fixtures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub name: String,
    pub mismatches: Vec<String>,
}

/// Recomputes every fixture of every entry.
pub fn validate(entries: &[CorpusEntry]) -> Vec<Validation> {
    entries
        .par_iter()
        .map(|e| {
            let mut mismatches = Vec::new();
            match build_complex(&e.diagram) {
                Err(err) => mismatches.push(format!("complex: {err}")),
                Ok(c) => {
                    for (&v, want) in &e.expected {
                        match table(&c, v) {
                            Ok(got) if got.groups_only() == *want => {}
                            Ok(got) => mismatches.push(format!("{v}: expected `{}`, got `{}`", fixture_line(want), fixture_line(&got))),
                            Err(err) => mismatches.push(format!("{v}: {err}")),
                        }
                    }
                }
            }
            Validation { name: e.name.clone(), mismatches }
        })
        .collect()
}
