//! Printed label assignment.
//!
//! The fake degrees pin each character's (d, b) pair, but the printed tables
//! distinguish equal pairs by primes. Those primes are recovered here by
//! constraint propagation against the golden tables: the induction rows
//! couple the two bigger groups' labels, and the per-hyperplane block
//! partitions separate whatever the induction rows leave open. The final
//! assignment must reproduce every golden table exactly; anything less is an
//! error, not a warning.

use std::collections::BTreeSet;

use anyhow::{ensure, Context, Result};
use hecke_core::goldens::{self, GoldenRecord};

#[derive(Clone, Debug)]
pub struct Label {
    pub text: String,
    pub d: u32,
    pub b: u32,
}

/// "phi{d,b}" plus trailing primes.
pub fn parse_label(text: &str) -> Result<(u32, u32)> {
    let rest = text.strip_prefix("phi{").with_context(|| format!("bad label {text}"))?;
    let end = rest.find('}').with_context(|| format!("bad label {text}"))?;
    ensure!(rest[end + 1..].chars().all(|c| c == '\''), "bad label {text}");
    let (d, b) = rest[..end].split_once(',').with_context(|| format!("bad label {text}"))?;
    Ok((d.parse()?, b.parse()?))
}

fn to_labels(names: &[String]) -> Result<Vec<Label>> {
    let mut out = Vec::with_capacity(names.len());
    for n in names {
        let (d, b) = parse_label(n)?;
        out.push(Label { text: n.clone(), d, b });
    }
    let distinct: BTreeSet<&str> = out.iter().map(|l| l.text.as_str()).collect();
    ensure!(distinct.len() == out.len(), "duplicate labels");
    Ok(out)
}

/// Pack-order label lists for the three groups. The small group's order is
/// its printed CharNames listing; the other two follow the induction table:
/// children in row order, parents in reading order.
pub fn pack_orders() -> Result<(Vec<Label>, Vec<Label>, Vec<Label>)> {
    let g4 = to_labels(&goldens::parse_names(goldens::G4_CHARNAMES))?;
    ensure!(g4.len() == 7);
    let rows = goldens::parse_induction(goldens::G7_INDUCTION).map_err(anyhow::Error::msg)?;
    ensure!(rows.len() == 14);
    let g6 = to_labels(&rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>())?;
    let g7 = to_labels(&rows.iter().flat_map(|r| r.1.clone()).collect::<Vec<_>>())?;
    ensure!(g7.len() == 42);
    Ok((g4, g6, g7))
}

/// Everything the solver knows about one group: its label universe, the
/// computed (d, b) pairs, the computed block partitions keyed by hyperplane
/// display, and the golden records to match them against.
pub struct GroupFacts {
    pub labels: Vec<Label>,
    pub db: Vec<(u32, u32)>,
    /// (hyperplane display, parts including singletons), one per record
    pub blocks: Vec<(String, Vec<Vec<usize>>)>,
    pub golden: Vec<GoldenRecord>,
}

pub struct Assignment {
    /// char index -> label index (into the pack-order list)
    pub label_of: Vec<usize>,
}

type Cands = Vec<BTreeSet<usize>>;

fn init_cands(facts: &GroupFacts) -> Result<Cands> {
    let mut out = Vec::with_capacity(facts.db.len());
    ensure!(facts.db.len() == facts.labels.len(), "character/label count mismatch");
    for &(d, b) in &facts.db {
        let set: BTreeSet<usize> = facts
            .labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.d == d && l.b == b)
            .map(|(i, _)| i)
            .collect();
        ensure!(!set.is_empty(), "no label with degree {d}, exponent {b}");
        out.push(set);
    }
    // sanity: the computed multiset matches the printed one exactly
    let mut got: Vec<(u32, u32)> = facts.db.clone();
    let mut want: Vec<(u32, u32)> = facts.labels.iter().map(|l| (l.d, l.b)).collect();
    got.sort();
    want.sort();
    ensure!(got == want, "(d, b) multiset mismatch: computed {got:?}, printed {want:?}");
    Ok(out)
}

fn intersect(cand: &mut BTreeSet<usize>, allowed: &BTreeSet<usize>) -> Result<bool> {
    let before = cand.len();
    cand.retain(|x| allowed.contains(x));
    ensure!(!cand.is_empty(), "label candidates ran out");
    Ok(cand.len() != before)
}

/// One golden record against one computed record: match parts greedily by
/// uniqueness. `golden_parts` includes the singleton labels.
fn prune_record(
    facts: &GroupFacts,
    cands: &mut Cands,
    computed: &[Vec<usize>],
    golden_parts: &[Vec<usize>],
) -> Result<bool> {
    let mut changed = false;
    let db_multiset = |chars: &[usize]| -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = chars.iter().map(|&c| facts.db[c]).collect();
        v.sort();
        v
    };
    let label_db_multiset = |labels: &[usize]| -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> =
            labels.iter().map(|&l| (facts.labels[l].d, facts.labels[l].b)).collect();
        v.sort();
        v
    };
    for part in computed {
        let want = db_multiset(part);
        let compatible: Vec<&Vec<usize>> = golden_parts
            .iter()
            .filter(|g| {
                label_db_multiset(g) == want
                    && part.iter().all(|&c| g.iter().any(|l| cands[c].contains(l)))
            })
            .collect();
        ensure!(!compatible.is_empty(), "no golden part matches a computed block");
        if compatible.len() == 1 {
            let allowed: BTreeSet<usize> = compatible[0].iter().copied().collect();
            for &c in part {
                let narrowed: BTreeSet<usize> = allowed
                    .iter()
                    .copied()
                    .filter(|&l| (facts.labels[l].d, facts.labels[l].b) == facts.db[c])
                    .collect();
                changed |= intersect(&mut cands[c], &narrowed)?;
            }
        }
    }
    Ok(changed)
}

fn golden_parts_with_singletons(facts: &GroupFacts, rec: &GoldenRecord) -> Result<Vec<Vec<usize>>> {
    let index_of = |label: &str| -> Result<usize> {
        facts
            .labels
            .iter()
            .position(|l| l.text == label)
            .with_context(|| format!("unknown label {label}"))
    };
    let mut used = BTreeSet::new();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for p in &rec.parts {
        let mut part = Vec::new();
        for l in p {
            let i = index_of(l)?;
            ensure!(used.insert(i), "label {l} listed twice");
            part.push(i);
        }
        parts.push(part);
    }
    for i in 0..facts.labels.len() {
        if !used.contains(&i) {
            parts.push(vec![i]);
        }
    }
    Ok(parts)
}

fn blocks_pass(facts: &GroupFacts, cands: &mut Cands) -> Result<bool> {
    let mut changed = false;
    for rec in &facts.golden {
        let computed = &facts
            .blocks
            .iter()
            .find(|(display, _)| *display == rec.display)
            .with_context(|| format!("no computed record for {}", rec.display))?
            .1;
        let golden_parts = golden_parts_with_singletons(facts, rec)?;
        ensure!(
            computed.len() == golden_parts.len(),
            "part count differs from the printed table at {}",
            rec.display
        );
        changed |= prune_record(facts, cands, computed, &golden_parts)?;
    }
    Ok(changed)
}

/// One computed twist orbit against one printed row: child candidate, parent
/// (d, b) multiset, and per-parent candidates must all fit.
fn induction_compat(
    g7: &GroupFacts,
    c7: &Cands,
    c6: &Cands,
    orbit: &(usize, Vec<usize>),
    row: &(usize, Vec<usize>),
) -> bool {
    if !c6[orbit.0].contains(&row.0) {
        return false;
    }
    let mut want: Vec<(u32, u32)> = orbit.1.iter().map(|&p| g7.db[p]).collect();
    let mut have: Vec<(u32, u32)> =
        row.1.iter().map(|&l| (g7.labels[l].d, g7.labels[l].b)).collect();
    want.sort();
    have.sort();
    if want != have {
        return false;
    }
    orbit.1.iter().all(|&p| row.1.iter().any(|l| c7[p].contains(l)))
}

/// The induction coupling: computed twist orbits against golden rows.
fn induction_pass(
    g7: &GroupFacts,
    g6: &GroupFacts,
    c7: &mut Cands,
    c6: &mut Cands,
    orbits: &[(usize, Vec<usize>)],
    rows: &[(String, Vec<String>)],
) -> Result<bool> {
    let mut changed = false;
    let row_labels: Vec<(usize, Vec<usize>)> = rows
        .iter()
        .map(|(child, parents)| {
            let c = g6
                .labels
                .iter()
                .position(|l| l.text == *child)
                .with_context(|| format!("unknown child label {child}"))?;
            let ps = parents
                .iter()
                .map(|p| {
                    g7.labels
                        .iter()
                        .position(|l| l.text == *p)
                        .with_context(|| format!("unknown parent label {p}"))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((c, ps))
        })
        .collect::<Result<_>>()?;

    for (oi, orbit) in orbits.iter().enumerate() {
        let hits: Vec<usize> = (0..row_labels.len())
            .filter(|&ri| induction_compat(g7, c7, c6, orbit, &row_labels[ri]))
            .collect();
        ensure!(!hits.is_empty(), "induction orbit {oi} matches no printed row");
        if hits.len() == 1 {
            let row = &row_labels[hits[0]];
            let child_set: BTreeSet<usize> = [row.0].into_iter().collect();
            changed |= intersect(&mut c6[orbit.0], &child_set)?;
            for &p in &orbit.1 {
                let narrowed: BTreeSet<usize> = row
                    .1
                    .iter()
                    .copied()
                    .filter(|&l| (g7.labels[l].d, g7.labels[l].b) == g7.db[p])
                    .collect();
                changed |= intersect(&mut c7[p], &narrowed)?;
            }
        }
    }
    // reverse direction: a row claimed by exactly one orbit pins that orbit
    for (ri, row) in row_labels.iter().enumerate() {
        let hits: Vec<usize> = (0..orbits.len())
            .filter(|&oi| induction_compat(g7, c7, c6, &orbits[oi], row))
            .collect();
        ensure!(!hits.is_empty(), "printed induction row {ri} matches no computed orbit");
        if hits.len() == 1 {
            let orbit = &orbits[hits[0]];
            let child_set: BTreeSet<usize> = [row.0].into_iter().collect();
            changed |= intersect(&mut c6[orbit.0], &child_set)?;
            for &p in &orbit.1 {
                let narrowed: BTreeSet<usize> = row
                    .1
                    .iter()
                    .copied()
                    .filter(|&l| (g7.labels[l].d, g7.labels[l].b) == g7.db[p])
                    .collect();
                changed |= intersect(&mut c7[p], &narrowed)?;
            }
        }
    }
    Ok(changed)
}

fn all_singleton(c: &Cands) -> bool {
    c.iter().all(|s| s.len() == 1)
}

fn finish(c: &Cands) -> Result<Assignment> {
    let label_of: Vec<usize> = c.iter().map(|s| *s.first().unwrap()).collect();
    let distinct: BTreeSet<usize> = label_of.iter().copied().collect();
    ensure!(distinct.len() == label_of.len(), "assignment is not a bijection");
    Ok(Assignment { label_of })
}

/// Full verification of a finished assignment against every golden table.
fn verify(facts: &GroupFacts, assign: &Assignment) -> Result<()> {
    for rec in &facts.golden {
        let computed = &facts
            .blocks
            .iter()
            .find(|(display, _)| *display == rec.display)
            .with_context(|| format!("no computed record for {}", rec.display))?
            .1;
        let golden_parts = golden_parts_with_singletons(facts, rec)?;
        let mut got: Vec<Vec<usize>> = computed
            .iter()
            .map(|part| {
                let mut v: Vec<usize> = part.iter().map(|&ch| assign.label_of[ch]).collect();
                v.sort();
                v
            })
            .collect();
        let mut want: Vec<Vec<usize>> = golden_parts
            .iter()
            .map(|p| {
                let mut v = p.clone();
                v.sort();
                v
            })
            .collect();
        got.sort();
        want.sort();
        ensure!(got == want, "assigned blocks differ from the printed table at {}", rec.display);
    }
    Ok(())
}

fn verify_induction(
    g7: &GroupFacts,
    g6: &GroupFacts,
    a7: &Assignment,
    a6: &Assignment,
    orbits: &[(usize, Vec<usize>)],
    rows: &[(String, Vec<String>)],
) -> Result<()> {
    for (child, parents) in orbits {
        let child_label = &g6.labels[a6.label_of[*child]].text;
        let row = rows
            .iter()
            .find(|(c, _)| c == child_label)
            .with_context(|| format!("no printed induction row for {child_label}"))?;
        let mut got: Vec<&str> =
            parents.iter().map(|&p| g7.labels[a7.label_of[p]].text.as_str()).collect();
        let mut want: Vec<&str> = row.1.iter().map(|s| s.as_str()).collect();
        got.sort();
        want.sort();
        ensure!(got == want, "induction row for {child_label} differs from the printed table");
    }
    Ok(())
}

/// Solves all three label assignments simultaneously.
pub fn solve(
    g7: &GroupFacts,
    g6: &GroupFacts,
    g4: &GroupFacts,
    orbits: &[(usize, Vec<usize>)],
) -> Result<(Assignment, Assignment, Assignment)> {
    let rows = goldens::parse_induction(goldens::G7_INDUCTION).map_err(anyhow::Error::msg)?;
    let mut c7 = init_cands(g7)?;
    let mut c6 = init_cands(g6)?;
    let mut c4 = init_cands(g4)?;

    loop {
        let mut changed = false;
        changed |= induction_pass(g7, g6, &mut c7, &mut c6, orbits, &rows)?;
        changed |= blocks_pass(g7, &mut c7)?;
        changed |= blocks_pass(g6, &mut c6)?;
        changed |= blocks_pass(g4, &mut c4)?;
        if !changed {
            break;
        }
    }
    ensure!(
        all_singleton(&c7) && all_singleton(&c6) && all_singleton(&c4),
        "propagation left label ambiguity: g7 {:?} g6 {:?} g4 {:?}",
        c7.iter().map(|s| s.len()).collect::<Vec<_>>(),
        c6.iter().map(|s| s.len()).collect::<Vec<_>>(),
        c4.iter().map(|s| s.len()).collect::<Vec<_>>(),
    );
    let (a7, a6, a4) = (finish(&c7)?, finish(&c6)?, finish(&c4)?);
    verify(g7, &a7)?;
    verify(g6, &a6)?;
    verify(g4, &a4)?;
    verify_induction(g7, g6, &a7, &a6, orbits, &rows)?;
    Ok((a7, a6, a4))
}

/// Returns `order[pack_pos] = char_index`, the inverse of the assignment.
pub fn pack_permutation(assign: &Assignment) -> Result<Vec<usize>> {
    let n = assign.label_of.len();
    let mut order = vec![usize::MAX; n];
    for (ch, &l) in assign.label_of.iter().enumerate() {
        ensure!(order[l] == usize::MAX, "two characters share a label");
        order[l] = ch;
    }
    ensure!(order.iter().all(|&x| x != usize::MAX));
    Ok(order)
}
