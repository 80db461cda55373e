//! Published block tables for the shipped groups, kept as plain-text
//! fixtures and parsed here so tests and the command line can certify the
//! engine against them.
//!
//! Block fixture grammar: a line starting with `= ` opens a record and the
//! rest of the line is the hyperplane display form (`No essential
//! hyperplane` for the record away from every hyperplane).  Each indented
//! line lists one part with at least two characters; characters absent from
//! every listed line are singletons.  Induction fixtures hold one
//! `child: parent ...` line per child character.

use crate::blockengine::Partition;
use crate::grouprepo::GroupData;

pub const G4_BLOCKS: &str = include_str!("../goldens/g4_blocks.txt");
pub const G6_BLOCKS: &str = include_str!("../goldens/g6_blocks.txt");
pub const G7_BLOCKS: &str = include_str!("../goldens/g7_blocks.txt");
pub const G7_INDUCTION: &str = include_str!("../goldens/g7_induction.txt");
pub const G4_CHARNAMES: &str = include_str!("../goldens/g4_charnames.txt");

/// One expected block record: the display form of its hyperplane and the
/// parts of size at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenRecord {
    pub display: String,
    pub parts: Vec<Vec<String>>,
}

pub fn parse_blocks(text: &str) -> Result<Vec<GoldenRecord>, String> {
    let mut out: Vec<GoldenRecord> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(display) = line.strip_prefix("= ") {
            out.push(GoldenRecord { display: display.trim().to_string(), parts: Vec::new() });
        } else if line.starts_with(' ') {
            let rec = out
                .last_mut()
                .ok_or_else(|| format!("line {}: part before any record", no + 1))?;
            let part: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            if part.len() < 2 {
                return Err(format!("line {}: a listed part needs at least two characters", no + 1));
            }
            rec.parts.push(part);
        } else {
            return Err(format!("line {}: expected `= display` or an indented part", no + 1));
        }
    }
    Ok(out)
}

pub fn parse_induction(text: &str) -> Result<Vec<(String, Vec<String>)>, String> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (child, rest) = line
            .split_once(':')
            .ok_or_else(|| format!("line {}: expected `child: parents`", no + 1))?;
        let parents: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        if parents.is_empty() {
            return Err(format!("line {}: no parents listed", no + 1));
        }
        out.push((child.trim().to_string(), parents));
    }
    Ok(out)
}

pub fn parse_names(text: &str) -> Vec<String> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(str::to_string).collect()
}

/// Expands a record's listed parts to a full partition of the characters of
/// `g`, filling in singletons for every unmentioned character.
pub fn golden_partition(g: &GroupData, parts: &[Vec<String>]) -> Result<Partition, String> {
    let n = g.characters.len();
    let mut seen = vec![false; n];
    let mut index_parts: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    for part in parts {
        let mut ip = Vec::with_capacity(part.len());
        for label in part {
            let i = g
                .char_index(label)
                .ok_or_else(|| format!("{}: no character {label}", g.name))?;
            if seen[i] {
                return Err(format!("{}: character {label} listed twice", g.name));
            }
            seen[i] = true;
            ip.push(i);
        }
        index_parts.push(ip);
    }
    for (i, s) in seen.into_iter().enumerate() {
        if !s {
            index_parts.push(vec![i]);
        }
    }
    Ok(Partition::from_parts(n, index_parts))
}
