//! Final pack assembly: placeholder tables for the block runs, label
//! application, JSON emission, and the reload gates.
//!
//! Generation never trusts itself: every emitted document is read back
//! through the ordinary loader, its block table is compared record by record
//! against the printed fixtures, and the two subgroup tables are re-derived
//! from the emitted parent through the ordinary derivation path.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, ensure, Context, Result};
use serde::Serialize;

use hecke_core::blockengine::{all_blocks, display_hyperplane, DEFAULT_BUDGET};
use hecke_core::goldens;
use hecke_core::grouprepo::{
    derive_subgroup, load_group, CharInfo, ClassInfo, CliffordLink, GroupData, InductionRow,
    OrbitInfo,
};
use hecke_core::numfield::CycNum;
use hecke_core::schur::{equivalent, FactoredSchur, SpecSlot};

use crate::group::MatGroup;
use crate::labels::{Assignment, GroupFacts, Label};

/// A pack with throwaway labels: enough for the block engine, whose output
/// then pins the real ones.
pub fn placeholder(
    name: &str,
    orbits: &[(&str, usize)],
    degrees: &[u32],
    b: &[u32],
    values: &[Vec<CycNum>],
    schur: &[FactoredSchur],
    group: &MatGroup,
) -> GroupData {
    let class_data = group
        .classes
        .iter()
        .enumerate()
        .map(|(ci, members)| ClassInfo {
            size: members.len() as u64,
            values: values.iter().map(|row| row[ci].clone()).collect(),
        })
        .collect();
    GroupData {
        name: name.to_string(),
        order: group.order() as u64,
        conductor: 12,
        mu_order: 12,
        orbits: orbits
            .iter()
            .map(|&(letter, e)| OrbitInfo { letter: letter.to_string(), e })
            .collect(),
        characters: degrees
            .iter()
            .zip(b)
            .enumerate()
            .map(|(i, (&degree, &b))| CharInfo { label: format!("c{i}"), degree, b })
            .collect(),
        schur_table: schur.to_vec(),
        class_data,
        clifford: None,
        advisories: Vec::new(),
    }
}

/// Block table of a placeholder pack paired with the printed records.
/// Counts must agree and every computed hyperplane must be printed; the
/// label-independent half of the solver's input.
pub struct BlockFacts {
    pub blocks: Vec<(String, Vec<Vec<usize>>)>,
    pub golden: Vec<goldens::GoldenRecord>,
}

pub fn block_facts(gd: &GroupData, golden_text: &str) -> Result<BlockFacts> {
    let table = all_blocks(gd, DEFAULT_BUDGET)?;
    let names = gd.slot_names();
    let blocks: Vec<(String, Vec<Vec<usize>>)> = table
        .iter()
        .map(|rec| {
            let display = match &rec.hyperplane {
                None => "No essential hyperplane".to_string(),
                Some(h) => display_hyperplane(h, &names),
            };
            (display, rec.partition.parts().to_vec())
        })
        .collect();
    let golden = goldens::parse_blocks(golden_text).map_err(anyhow::Error::msg)?;
    ensure!(
        golden.len() == blocks.len(),
        "{}: computed {} block records, printed table has {}",
        gd.name,
        blocks.len(),
        golden.len()
    );
    for (display, _) in &blocks {
        ensure!(
            golden.iter().any(|r| r.display == *display),
            "{}: computed hyperplane {display} is not in the printed table",
            gd.name
        );
    }
    Ok(BlockFacts { blocks, golden })
}

pub fn facts_with(bf: &BlockFacts, labels: Vec<Label>, db: Vec<(u32, u32)>) -> GroupFacts {
    GroupFacts { labels, db, blocks: bf.blocks.clone(), golden: bf.golden.clone() }
}

/// Reorders characters, Schur rows, and class values into pack order and
/// applies the solved labels.
pub fn finalize(
    gd: &GroupData,
    labels: &[Label],
    perm: &[usize],
    clifford: Option<CliffordLink>,
) -> Result<GroupData> {
    ensure!(perm.len() == gd.characters.len());
    let characters = perm
        .iter()
        .zip(labels)
        .map(|(&ch, l)| {
            let old = &gd.characters[ch];
            ensure!(
                l.d == old.degree && l.b == old.b,
                "label {} does not fit degree {} b {}",
                l.text,
                old.degree,
                old.b
            );
            Ok(CharInfo { label: l.text.clone(), degree: old.degree, b: old.b })
        })
        .collect::<Result<Vec<_>>>()?;
    let schur_table = perm.iter().map(|&ch| gd.schur_table[ch].clone()).collect();
    let class_data = gd
        .class_data
        .iter()
        .map(|c| ClassInfo {
            size: c.size,
            values: perm.iter().map(|&ch| c.values[ch].clone()).collect(),
        })
        .collect();
    Ok(GroupData {
        characters,
        schur_table,
        class_data,
        clifford,
        ..gd.clone()
    })
}

/// Induction rows in child pack order, parents in parent pack order.
pub fn induction_rows(
    child_labels: &[Label],
    child_assign: &Assignment,
    child_perm: &[usize],
    parent_labels: &[Label],
    parent_assign: &Assignment,
    orbits: &[Vec<usize>],
) -> Vec<InductionRow> {
    child_perm
        .iter()
        .map(|&ch| {
            let child = child_labels[child_assign.label_of[ch]].text.clone();
            let mut ps: Vec<usize> =
                orbits[ch].iter().map(|&p| parent_assign.label_of[p]).collect();
            ps.sort();
            InductionRow {
                child,
                parents: ps.into_iter().map(|l| parent_labels[l].text.clone()).collect(),
            }
        })
        .collect()
}

// --------------------------------------------------------------------------
// emission

#[derive(Serialize)]
struct OutPack<'a> {
    name: &'a str,
    order: u64,
    conductor: u32,
    mu_order: u32,
    orbits: Vec<OutOrbit<'a>>,
    characters: Vec<OutChar<'a>>,
    schur: Vec<OutSchur<'a>>,
    classes: Vec<OutClass<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clifford: Option<OutClifford<'a>>,
}

#[derive(Serialize)]
struct OutOrbit<'a> {
    letter: &'a str,
    e: usize,
}

#[derive(Serialize)]
struct OutChar<'a> {
    label: &'a str,
    degree: u32,
    b: u32,
}

#[derive(Serialize)]
struct OutSchur<'a> {
    #[serde(rename = "char")]
    char_label: &'a str,
    xi: &'a CycNum,
    #[serde(rename = "N")]
    n0: &'a Vec<i64>,
    factors: Vec<OutFactor<'a>>,
}

#[derive(Serialize)]
struct OutFactor<'a> {
    psi: OutPsi,
    #[serde(rename = "M")]
    m: &'a Vec<i64>,
    mult: u32,
}

#[derive(Serialize)]
struct OutPsi {
    d: u32,
    k: i64,
}

#[derive(Serialize)]
struct OutClass<'a> {
    size: u64,
    values: &'a Vec<CycNum>,
}

#[derive(Serialize)]
struct OutClifford<'a> {
    parent: &'a str,
    spec_map: Vec<OutSlot>,
    induction: Vec<OutInduction<'a>>,
    orbit_size: u32,
}

#[derive(Serialize)]
struct OutSlot {
    #[serde(skip_serializing_if = "Option::is_none")]
    child: Option<usize>,
    zeta: (u32, i64),
}

#[derive(Serialize)]
struct OutInduction<'a> {
    child: &'a str,
    parents: &'a Vec<String>,
}

pub fn to_json(gd: &GroupData) -> Result<String> {
    let pack = OutPack {
        name: &gd.name,
        order: gd.order,
        conductor: gd.conductor,
        mu_order: gd.mu_order,
        orbits: gd.orbits.iter().map(|o| OutOrbit { letter: &o.letter, e: o.e }).collect(),
        characters: gd
            .characters
            .iter()
            .map(|c| OutChar { label: &c.label, degree: c.degree, b: c.b })
            .collect(),
        schur: gd
            .characters
            .iter()
            .zip(&gd.schur_table)
            .map(|(c, s)| OutSchur {
                char_label: &c.label,
                xi: &s.xi,
                n0: &s.n0,
                factors: s
                    .factors
                    .iter()
                    .map(|f| OutFactor {
                        psi: OutPsi { d: f.psi.root_order, k: f.psi.root_exp as i64 },
                        m: &f.m,
                        mult: f.mult,
                    })
                    .collect(),
            })
            .collect(),
        classes: gd
            .class_data
            .iter()
            .map(|c| OutClass { size: c.size, values: &c.values })
            .collect(),
        clifford: gd.clifford.as_ref().map(|link| OutClifford {
            parent: &link.parent,
            spec_map: link
                .spec_map
                .iter()
                .map(|s| match *s {
                    SpecSlot::Keep { child, zeta } => OutSlot { child: Some(child), zeta },
                    SpecSlot::Kill { zeta } => OutSlot { child: None, zeta },
                })
                .collect(),
            induction: link
                .induction
                .iter()
                .map(|r| OutInduction { child: &r.child, parents: &r.parents })
                .collect(),
            orbit_size: link.orbit_size,
        }),
    };
    let mut out = serde_json::to_string_pretty(&pack)?;
    out.push('\n');
    Ok(out)
}

/// Writes the pack, reloads it through the ordinary loader, and certifies
/// its block table against the printed records.
pub fn emit_and_check(
    dir: &Path,
    name: &str,
    gd: &GroupData,
    golden_text: &str,
) -> Result<GroupData> {
    let json = to_json(gd)?;
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, &json).with_context(|| format!("writing {}", path.display()))?;
    let loaded = load_group(json.as_bytes()).map_err(|e| anyhow!("reload of {name}: {e}"))?;
    ensure!(
        loaded.advisories.is_empty(),
        "emitted {name} pack carries advisories: {:?}",
        loaded.advisories
    );

    let table = all_blocks(&loaded, DEFAULT_BUDGET)?;
    let golden = goldens::parse_blocks(golden_text).map_err(anyhow::Error::msg)?;
    ensure!(table.len() == golden.len(), "{name}: block record count mismatch");
    let names = loaded.slot_names();
    for rec in &table {
        let display = match &rec.hyperplane {
            None => "No essential hyperplane".to_string(),
            Some(h) => display_hyperplane(h, &names),
        };
        let grec = golden
            .iter()
            .find(|r| r.display == display)
            .with_context(|| format!("{name}: record {display} is not printed"))?;
        let want = goldens::golden_partition(&loaded, &grec.parts).map_err(anyhow::Error::msg)?;
        ensure!(
            rec.partition == want,
            "{name}: blocks at {display} differ from the printed table"
        );
    }
    Ok(loaded)
}

/// Re-derives the child's table from the emitted parent and compares with
/// the shipped rows.
pub fn derive_gate(parent: &GroupData, child: &GroupData) -> Result<()> {
    let derived = derive_subgroup(parent, child)
        .map_err(|e| anyhow!("deriving {} from {}: {e}", child.name, parent.name))?;
    for ((a, b), c) in derived.schur_table.iter().zip(&child.schur_table).zip(&child.characters) {
        ensure!(equivalent(a, b), "{}: derived row for {} differs", child.name, c.label);
    }
    Ok(())
}
