//! Catalog of real semisimple Lie algebras through their restricted root
//! data: a Cartan type plus one multiplicity per coordinate shape of root.
//!
//! In every supported ambient realization the Weyl orbits of roots are
//! separated by coordinate shape: two nonzero entries of absolute value one
//! (`pair`), one entry of absolute value one (`single`), one entry of
//! absolute value two (`double`), anything else (`generic`, e.g. the long
//! G2 roots or the half-integer vectors of F4 and the E series).  A form
//! file assigns a multiplicity to each shape that occurs.
//!
//! File format (`.rrform`):
//!
//! ```text
//! rrform v1
//! name su(2,1)
//! type BC1
//! # free-form commentary
//! mult single 2
//! mult double 1
//! ```
//!
//! Forms resolve by name against the built-in split series (`split-A3`),
//! the embedded catalog below, directories listed in the `RRFORM_PATH`
//! environment variable, and finally literal file paths.

use crate::error::{Error, Result};
use crate::rootsys::{CartanLabel, RestrictedRootSystem, Root};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootKind {
    Pair,
    Single,
    Double,
    Generic,
}

impl RootKind {
    pub fn token(self) -> &'static str {
        match self {
            RootKind::Pair => "pair",
            RootKind::Single => "single",
            RootKind::Double => "double",
            RootKind::Generic => "generic",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "pair" => Some(RootKind::Pair),
            "single" => Some(RootKind::Single),
            "double" => Some(RootKind::Double),
            "generic" => Some(RootKind::Generic),
            _ => None,
        }
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Coordinate shape of a root vector.
pub fn kind_of(root: &Root) -> RootKind {
    let nonzero: Vec<&crate::Rat> = root.coords().iter().filter(|c| !c.is_zero()).collect();
    let one = crate::Rat::one();
    let two = &one + &one;
    match nonzero.as_slice() {
        [a, b] if a.abs() == one && b.abs() == one => RootKind::Pair,
        [a] if a.abs() == one => RootKind::Single,
        [a] if a.abs() == two => RootKind::Double,
        _ => RootKind::Generic,
    }
}

/// Parsed form description: a label and a multiplicity per root shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealFormData {
    pub name: String,
    pub label: CartanLabel,
    pub mults: BTreeMap<RootKind, u32>,
}

impl RealFormData {
    /// True when every multiplicity is 1.
    pub fn is_split(&self) -> bool {
        self.mults.values().all(|&m| m == 1)
    }

    /// Build the restricted root system with these multiplicities.  Errors
    /// when the file assigns a shape that does not occur in the type or
    /// misses one that does.
    pub fn realize(&self) -> Result<RestrictedRootSystem> {
        let plain = RestrictedRootSystem::generate(self.label)?;
        let present: BTreeSet<RootKind> = plain.roots().iter().map(kind_of).collect();
        for k in present.iter() {
            if !self.mults.contains_key(k) {
                return Err(Error::FormParse {
                    path: self.name.clone(),
                    msg: format!("no multiplicity given for {} roots of {}", k, self.label),
                });
            }
        }
        for k in self.mults.keys() {
            if !present.contains(k) {
                return Err(Error::FormParse {
                    path: self.name.clone(),
                    msg: format!("{} roots do not occur in {}", k, self.label),
                });
            }
        }
        RestrictedRootSystem::with_multiplicities(self.label, |r| self.mults[&kind_of(r)])
    }
}

fn parse_err(path: &str, msg: impl Into<String>) -> Error {
    Error::FormParse { path: path.to_string(), msg: msg.into() }
}

/// Parse the `rrform v1` format.  `origin` only labels error messages.
pub fn parse_form(origin: &str, text: &str) -> Result<RealFormData> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some("rrform v1") => {}
        other => {
            return Err(parse_err(
                origin,
                format!("expected header 'rrform v1', found {:?}", other.unwrap_or("")),
            ))
        }
    }
    let mut name: Option<String> = None;
    let mut label: Option<CartanLabel> = None;
    let mut mults: BTreeMap<RootKind, u32> = BTreeMap::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("name") => {
                let rest: Vec<&str> = parts.collect();
                if rest.is_empty() || name.is_some() {
                    return Err(parse_err(origin, "malformed or repeated name line"));
                }
                name = Some(rest.join(" "));
            }
            Some("type") => {
                let tok = parts
                    .next()
                    .ok_or_else(|| parse_err(origin, "type line without a label"))?;
                if label.is_some() || parts.next().is_some() {
                    return Err(parse_err(origin, "malformed or repeated type line"));
                }
                label = Some(tok.parse()?);
            }
            Some("mult") => {
                let kind_tok = parts
                    .next()
                    .ok_or_else(|| parse_err(origin, "mult line without a shape"))?;
                let kind = RootKind::from_token(kind_tok)
                    .ok_or_else(|| parse_err(origin, format!("unknown root shape '{}'", kind_tok)))?;
                let value: u32 = parts
                    .next()
                    .and_then(|v| v.parse().ok())
                    .filter(|&v| v > 0)
                    .ok_or_else(|| parse_err(origin, "mult line needs a positive integer"))?;
                if parts.next().is_some() || mults.insert(kind, value).is_some() {
                    return Err(parse_err(origin, format!("malformed or repeated mult line for '{}'", kind_tok)));
                }
            }
            Some(other) => {
                return Err(parse_err(origin, format!("unknown directive '{}'", other)));
            }
            None => unreachable!("blank lines were filtered"),
        }
    }
    let name = name.ok_or_else(|| parse_err(origin, "missing name line"))?;
    let label = label.ok_or_else(|| parse_err(origin, "missing type line"))?;
    if mults.is_empty() {
        return Err(parse_err(origin, "no mult lines"));
    }
    Ok(RealFormData { name, label, mults })
}

/// Cartan labels of the built-in split catalog.
const SPLIT_LABELS: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "B4", "B5", "B6", "B7", "C2", "C3",
    "C4", "C5", "C6", "C7", "D4", "D5", "D6", "D7", "G2", "F4", "E6", "E7", "E8",
];

const EMBEDDED: &[&str] = &[
    include_str!("../forms/su_1_1.rrform"),
    include_str!("../forms/su_2_1.rrform"),
    include_str!("../forms/su_3_1.rrform"),
    include_str!("../forms/su_4_1.rrform"),
    include_str!("../forms/su_2_2.rrform"),
    include_str!("../forms/su_3_2.rrform"),
    include_str!("../forms/so_2_1.rrform"),
    include_str!("../forms/so_3_1.rrform"),
    include_str!("../forms/so_4_1.rrform"),
    include_str!("../forms/so_5_1.rrform"),
    include_str!("../forms/so_6_1.rrform"),
    include_str!("../forms/so_3_2.rrform"),
    include_str!("../forms/so_4_2.rrform"),
    include_str!("../forms/so_5_2.rrform"),
    include_str!("../forms/so_4_3.rrform"),
    include_str!("../forms/so_2_2.rrform"),
    include_str!("../forms/so_3_3.rrform"),
    include_str!("../forms/sl_2_c.rrform"),
    include_str!("../forms/sl_3_c.rrform"),
    include_str!("../forms/sl_4_c.rrform"),
];

fn split_form(label_str: &str) -> Result<RealFormData> {
    let label: CartanLabel = label_str.parse()?;
    let plain = RestrictedRootSystem::generate(label)?;
    let mults: BTreeMap<RootKind, u32> =
        plain.roots().iter().map(kind_of).map(|k| (k, 1)).collect();
    Ok(RealFormData { name: format!("split-{}", label), label, mults })
}

/// Names resolvable without `RRFORM_PATH`, split series first.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = SPLIT_LABELS.iter().map(|l| format!("split-{}", l)).collect();
    let mut embedded: Vec<String> = EMBEDDED
        .iter()
        .map(|text| parse_form("embedded", text).expect("embedded forms parse").name)
        .collect();
    embedded.sort();
    names.extend(embedded);
    names
}

fn load_from_dir(dir: &Path, name: &str) -> Option<RealFormData> {
    let entries = std::fs::read_dir(dir).ok()?;
    for entry in entries.flatten() {
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("rrform") {
            continue;
        }
        let Ok(text) = std::fs::read_to_string(&path) else { continue };
        if let Ok(data) = parse_form(&path.display().to_string(), &text) {
            if data.name == name {
                return Some(data);
            }
        }
    }
    None
}

/// Resolve a form by name or file path.
pub fn load_form(name: &str) -> Result<RealFormData> {
    if name.contains('/') || name.ends_with(".rrform") {
        let text = std::fs::read_to_string(name)?;
        return parse_form(name, &text);
    }
    if let Some(rest) = name.strip_prefix("split-") {
        if SPLIT_LABELS.contains(&rest) {
            return split_form(rest);
        }
        return Err(Error::UnknownForm(name.to_string()));
    }
    for text in EMBEDDED {
        let data = parse_form("embedded", text)?;
        if data.name == name {
            return Ok(data);
        }
    }
    if let Ok(var) = std::env::var("RRFORM_PATH") {
        for dir in std::env::split_paths(&var) {
            if let Some(data) = load_from_dir(&dir, name) {
                return Ok(data);
            }
        }
    }
    Err(Error::UnknownForm(name.to_string()))
}
