//! Checks of computed results against the transcribed printed tables. These
//! never touch stdout; a mismatch is a hard error so that --certified runs
//! fail loudly.

use hecke_core::blockengine::{join, HyperplaneBlocks, Partition};
use hecke_core::goldens::{self, GoldenRecord};
use hecke_core::grouprepo::GroupData;
use hecke_core::monlattice::{dot, ExpVec, Hyperplane};

pub fn golden_text(name: &str) -> Option<&'static str> {
    match name {
        "g4" => Some(goldens::G4_BLOCKS),
        "g6" => Some(goldens::G6_BLOCKS),
        "g7" => Some(goldens::G7_BLOCKS),
        _ => None,
    }
}

fn records(g: &GroupData) -> Result<Vec<GoldenRecord>, String> {
    let text = golden_text(&g.name)
        .ok_or_else(|| format!("no printed table is transcribed for {}", g.name))?;
    goldens::parse_blocks(text)
}

fn display_of(g: &GroupData, rec: &HyperplaneBlocks) -> String {
    match &rec.hyperplane {
        None => "No essential hyperplane".to_string(),
        Some(h) => hecke_core::blockengine::display_hyperplane(h, &g.slot_names()),
    }
}

/// Every computed record must appear in the printed table with the same
/// partition, and the record counts must agree.
pub fn check_all_blocks(g: &GroupData, table: &[HyperplaneBlocks]) -> Result<(), String> {
    let golden = records(g)?;
    if golden.len() != table.len() {
        return Err(format!(
            "computed {} records, the printed table has {}",
            table.len(),
            golden.len()
        ));
    }
    for rec in table {
        let display = display_of(g, rec);
        let gr = golden
            .iter()
            .find(|r| r.display == display)
            .ok_or_else(|| format!("hyperplane {display} is not in the printed table"))?;
        let want = goldens::golden_partition(g, &gr.parts)?;
        if want != rec.partition {
            return Err(format!("partition at {display} differs from the printed one"));
        }
    }
    Ok(())
}

/// Independent recomputation from the printed table alone: join the printed
/// partitions of every essential hyperplane containing n.
pub fn check_rouquier(g: &GroupData, n: &ExpVec, got: &Partition) -> Result<(), String> {
    let golden = records(g)?;
    let names = g.slot_names();
    let mut acc: Option<Partition> = None;
    for rec in &golden {
        let on = if rec.display == "No essential hyperplane" {
            true
        } else {
            let coeffs = parse_display(&rec.display, &names)?;
            dot(&coeffs, n).map_err(|e| e.to_string())? == 0
        };
        if !on {
            continue;
        }
        let part = goldens::golden_partition(g, &rec.parts)?;
        acc = Some(match acc {
            None => part,
            Some(a) => join(&a, &part).map_err(|e| e.to_string())?,
        });
    }
    let want = acc.ok_or("printed table is empty")?;
    if want != *got {
        return Err("blocks differ from the join of the printed records".into());
    }
    Ok(())
}

/// For p = 0 the computed set must equal the printed hyperplane list; for a
/// dividing prime it must be a subset (the printed table does not mark which
/// records are p-essential).
pub fn check_essential(g: &GroupData, p: u64, hs: &[Hyperplane]) -> Result<(), String> {
    let golden = records(g)?;
    let names = g.slot_names();
    let printed: Vec<String> = golden
        .iter()
        .map(|r| r.display.clone())
        .filter(|d| d != "No essential hyperplane")
        .collect();
    let got: Vec<String> = hs
        .iter()
        .map(|h| hecke_core::blockengine::display_hyperplane(h, &names))
        .collect();
    for d in &got {
        if !printed.contains(d) {
            return Err(format!("hyperplane {d} is not in the printed table"));
        }
    }
    if p == 0 && got.len() != printed.len() {
        return Err(format!(
            "{} hyperplanes computed, the printed table lists {}",
            got.len(),
            printed.len()
        ));
    }
    Ok(())
}

/// Inverse of display_hyperplane: "2c_0-c_1-c_2=0" back to coefficients.
pub fn parse_display(s: &str, names: &[String]) -> Result<ExpVec, String> {
    let body = s.strip_suffix("=0").ok_or_else(|| format!("'{s}' does not end in =0"))?;
    let mut coeffs = vec![0i64; names.len()];
    let mut rest = body;
    while !rest.is_empty() {
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        rest = &rest[digits.len()..];
        let mag: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| s)? };
        let (idx, name) = names
            .iter()
            .enumerate()
            .filter(|(_, n)| rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len())
            .ok_or_else(|| format!("unknown slot at '{rest}' in '{s}'"))?;
        rest = &rest[name.len()..];
        coeffs[idx] += sign * mag;
    }
    Ok(coeffs)
}
