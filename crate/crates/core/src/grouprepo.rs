//! Group data packs: parsing and validation of the shipped JSON documents,
//! character tables, central characters, p-blocks of the group algebra, and
//! derivation of a subgroup's Schur data through a Clifford link.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use crate::blockengine::Partition;
use crate::monlattice::OrbitLayout;
use crate::numfield::{lcm_u32, residue_mod_ideal, CycNum, NumFieldError, PrimeIdeal};
use crate::polyalg::k_cyc_poly;
use crate::schur::{
    advisory_notes, clifford_derive, equivalent, validate_schur, value_at_one, FactoredSchur,
    SchurError, SchurFactor, SpecSlot,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupRepoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid pack: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("inconsistent clifford link: {0}")]
    InconsistentLink(String),
    #[error(transparent)]
    NumField(#[from] NumFieldError),
    #[error(transparent)]
    Schur(#[from] SchurError),
}

type Result<T> = std::result::Result<T, GroupRepoError>;

#[derive(Debug, Clone)]
pub struct OrbitInfo {
    pub letter: String,
    /// number of parameters on this orbit of reflecting hyperplanes
    pub e: usize,
}

#[derive(Debug, Clone)]
pub struct CharInfo {
    pub label: String,
    pub degree: u32,
    /// valuation of the fake degree
    pub b: u32,
}

#[derive(Debug, Clone)]
pub struct ClassInfo {
    pub size: u64,
    /// one character value per character, in pack order
    pub values: Vec<CycNum>,
}

#[derive(Debug, Clone)]
pub struct InductionRow {
    pub child: String,
    pub parents: Vec<String>,
}

/// How this pack's group sits under a parent group: the variable
/// specialization, the induction table, and the character orbit size.
#[derive(Debug, Clone)]
pub struct CliffordLink {
    pub parent: String,
    pub spec_map: Vec<SpecSlot>,
    pub induction: Vec<InductionRow>,
    pub orbit_size: u32,
}

#[derive(Debug, Clone)]
pub struct GroupData {
    pub name: String,
    pub order: u64,
    /// conductor m of the coefficient field K = Q(zeta_m)
    pub conductor: u32,
    /// |mu(K)|, the specialization denominator
    pub mu_order: u32,
    pub orbits: Vec<OrbitInfo>,
    pub characters: Vec<CharInfo>,
    pub schur_table: Vec<FactoredSchur>,
    pub class_data: Vec<ClassInfo>,
    pub clifford: Option<CliffordLink>,
    /// soft findings from load-time review; never fatal
    pub advisories: Vec<String>,
}

impl GroupData {
    pub fn layout(&self) -> OrbitLayout {
        self.orbits.iter().map(|o| o.e).collect()
    }

    pub fn n_slots(&self) -> usize {
        self.orbits.iter().map(|o| o.e).sum()
    }

    /// "a_0", "a_1", "b_0", ... in slot order.
    pub fn slot_names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.n_slots());
        for o in &self.orbits {
            for j in 0..o.e {
                out.push(format!("{}_{}", o.letter, j));
            }
        }
        out
    }

    pub fn char_index(&self, label: &str) -> Option<usize> {
        self.characters.iter().position(|c| c.label == label)
    }
}

/// Central character of one irreducible: |C| chi(g_C) / chi(1) per class.
/// Always an algebraic integer for honest tables.
#[derive(Debug, Clone)]
pub struct CentralCharRow {
    pub values: Vec<CycNum>,
}

pub fn central_char(g: &GroupData, chi: usize) -> Result<CentralCharRow> {
    let deg = CycNum::from_int(g.characters[chi].degree as i64);
    let mut values = Vec::with_capacity(g.class_data.len());
    for c in &g.class_data {
        let v = CycNum::from_int(c.size as i64)
            .try_mul(&c.values[chi])?
            .try_div(&deg)?;
        if !v.is_integral() {
            return Err(NumFieldError::NotIntegral.into());
        }
        values.push(v);
    }
    Ok(CentralCharRow { values })
}

// ---------------------------------------------------------------------------
// pack format

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPack {
    name: String,
    order: u64,
    conductor: u32,
    mu_order: u32,
    orbits: Vec<RawOrbit>,
    characters: Vec<RawChar>,
    schur: Vec<RawSchurRow>,
    classes: Vec<RawClass>,
    #[serde(default)]
    clifford: Option<RawClifford>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbit {
    letter: String,
    e: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChar {
    label: String,
    degree: u32,
    b: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchurRow {
    #[serde(rename = "char")]
    char_label: String,
    xi: CycNum,
    #[serde(rename = "N")]
    n0: Vec<i64>,
    factors: Vec<RawFactor>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    psi: RawPsi,
    #[serde(rename = "M")]
    m: Vec<i64>,
    mult: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPsi {
    d: u32,
    k: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    size: u64,
    values: Vec<CycNum>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClifford {
    parent: String,
    spec_map: Vec<RawSlot>,
    induction: Vec<RawInduction>,
    orbit_size: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSlot {
    #[serde(default)]
    child: Option<usize>,
    zeta: (u32, i64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInduction {
    child: String,
    parents: Vec<String>,
}

/// "phi{d,b}" plus trailing primes -> (d, b).
fn parse_label(label: &str) -> Option<(u32, u32)> {
    let rest = label.strip_prefix("phi{")?;
    let (body, tail) = rest.split_once('}')?;
    if !tail.chars().all(|c| c == '\'') {
        return None;
    }
    let (d, b) = body.split_once(',')?;
    Some((d.parse().ok()?, b.parse().ok()?))
}

// ---------------------------------------------------------------------------
// loading

pub fn load_group(bytes: &[u8]) -> Result<GroupData> {
    let raw: RawPack =
        serde_json::from_slice(bytes).map_err(|e| GroupRepoError::Parse(e.to_string()))?;
    let mut violations: Vec<String> = Vec::new();
    let mut advisories: Vec<String> = Vec::new();

    if raw.order == 0 {
        violations.push("order is zero".into());
    }
    if raw.conductor == 0 {
        violations.push("conductor is zero".into());
    } else if raw.mu_order as u64 != lcm_u32(2, raw.conductor) {
        violations.push(format!(
            "mu_order {} does not match the roots of unity of Q(zeta_{})",
            raw.mu_order, raw.conductor
        ));
    }

    let orbits: Vec<OrbitInfo> = raw
        .orbits
        .iter()
        .map(|o| OrbitInfo { letter: o.letter.clone(), e: o.e })
        .collect();
    let mut letters = BTreeSet::new();
    for o in &orbits {
        if o.e == 0 {
            violations.push(format!("orbit {} has no parameters", o.letter));
        }
        if !letters.insert(o.letter.clone()) {
            violations.push(format!("orbit letter {} repeats", o.letter));
        }
    }
    let layout: OrbitLayout = orbits.iter().map(|o| o.e).collect();

    let characters: Vec<CharInfo> = raw
        .characters
        .iter()
        .map(|c| CharInfo { label: c.label.clone(), degree: c.degree, b: c.b })
        .collect();
    let nchars = characters.len();
    if nchars == 0 {
        violations.push("no characters".into());
    }
    let mut labels = BTreeSet::new();
    for c in &characters {
        if !labels.insert(c.label.clone()) {
            violations.push(format!("character label {} repeats", c.label));
        }
        match parse_label(&c.label) {
            Some((d, b)) if d == c.degree && b == c.b => {}
            _ => violations.push(format!(
                "label {} does not encode degree {} and valuation {}",
                c.label, c.degree, c.b
            )),
        }
    }
    let sq: u64 = characters.iter().map(|c| (c.degree as u64).pow(2)).sum();
    if sq != raw.order {
        violations.push(format!("sum of squared degrees is {sq}, not {}", raw.order));
    }

    // classes: the first column is the identity
    let class_data: Vec<ClassInfo> = raw
        .classes
        .iter()
        .map(|c| ClassInfo { size: c.size, values: c.values.clone() })
        .collect();
    if class_data.is_empty() {
        violations.push("no conjugacy classes".into());
    }
    for (i, c) in class_data.iter().enumerate() {
        if c.values.len() != nchars {
            violations.push(format!("class {i} has {} values for {nchars} characters", c.values.len()));
        }
    }
    let shape_ok = nchars > 0
        && !class_data.is_empty()
        && class_data.iter().all(|c| c.values.len() == nchars);
    if shape_ok {
        let total: u64 = class_data.iter().map(|c| c.size).sum();
        if total != raw.order {
            violations.push(format!("class sizes sum to {total}, not {}", raw.order));
        }
        if class_data[0].size != 1 {
            violations.push("first class is not the identity".into());
        }
        for (i, c) in characters.iter().enumerate() {
            if class_data[0].values[i] != CycNum::from_int(c.degree as i64) {
                violations.push(format!("identity value of {} is not its degree", c.label));
            }
        }
        // row orthogonality over the table
        let w = CycNum::from_int(raw.order as i64);
        for i in 0..nchars {
            for j in i..nchars {
                let mut acc = CycNum::zero();
                for c in &class_data {
                    let t = c.values[i]
                        .try_mul(&c.values[j].conjugate())
                        .and_then(|v| v.try_mul(&CycNum::from_int(c.size as i64)));
                    match t {
                        Ok(v) => acc = acc.try_add(&v).unwrap(),
                        Err(e) => {
                            violations.push(format!("table arithmetic failed: {e}"));
                            acc = CycNum::zero();
                            break;
                        }
                    }
                }
                let want = if i == j { w.clone() } else { CycNum::zero() };
                if acc != want {
                    violations.push(format!(
                        "orthogonality fails for {} and {}",
                        characters[i].label, characters[j].label
                    ));
                }
            }
        }
        // central characters must be integral
        for (i, c) in characters.iter().enumerate() {
            let deg = CycNum::from_int(c.degree as i64);
            for (ci, cl) in class_data.iter().enumerate() {
                let v = CycNum::from_int(cl.size as i64)
                    .try_mul(&cl.values[i])
                    .and_then(|v| v.try_div(&deg));
                match v {
                    Ok(v) if v.is_integral() => {}
                    _ => violations.push(format!(
                        "central character of {} is not integral on class {ci}",
                        c.label
                    )),
                }
            }
        }
    }

    // schur rows, in character order
    if raw.schur.len() != nchars {
        violations.push(format!("{} schur rows for {nchars} characters", raw.schur.len()));
    }
    let mut schur_table: Vec<FactoredSchur> = Vec::with_capacity(nchars);
    for (i, row) in raw.schur.iter().enumerate() {
        if i < nchars && row.char_label != characters[i].label {
            violations.push(format!(
                "schur row {i} is for {} but the character there is {}",
                row.char_label, characters[i].label
            ));
        }
        let mut factors = Vec::with_capacity(row.factors.len());
        let mut ok = true;
        for f in &row.factors {
            match k_cyc_poly(f.psi.d, f.psi.k, raw.conductor) {
                Ok(psi) => factors.push(SchurFactor { psi, m: f.m.clone(), mult: f.mult }),
                Err(e) => {
                    violations.push(format!("schur row {}: {e}", row.char_label));
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        let s = FactoredSchur { xi: row.xi.clone(), n0: row.n0.clone(), factors };
        for v in validate_schur(&s, &layout) {
            violations.push(format!("schur row {}: {v}", row.char_label));
        }
        for a in advisory_notes(&s) {
            advisories.push(format!("schur row {}: {a}", row.char_label));
        }
        if i < nchars {
            let want = CycNum::from_rational(BigRational::new(
                BigInt::from(raw.order),
                BigInt::from(characters[i].degree),
            ));
            if value_at_one(&s) != want {
                violations.push(format!(
                    "schur row {}: value at 1 is not |W|/degree",
                    row.char_label
                ));
            }
        }
        schur_table.push(s);
    }

    let clifford = match &raw.clifford {
        None => None,
        Some(link) => {
            let spec_map: Vec<SpecSlot> = link
                .spec_map
                .iter()
                .map(|s| match s.child {
                    Some(child) => SpecSlot::Keep { child, zeta: s.zeta },
                    None => SpecSlot::Kill { zeta: s.zeta },
                })
                .collect();
            for (i, s) in link.spec_map.iter().enumerate() {
                if s.zeta.0 == 0 {
                    violations.push(format!("clifford slot {i} scales by a root of order 0"));
                }
            }
            if link.orbit_size == 0 {
                violations.push("clifford orbit size is zero".into());
            }
            let mut children = BTreeSet::new();
            for row in &link.induction {
                if !children.insert(row.child.clone()) {
                    violations.push(format!("induction row for {} repeats", row.child));
                }
                if characters.iter().all(|c| c.label != row.child) {
                    violations.push(format!("induction row for unknown character {}", row.child));
                }
                if row.parents.len() != link.orbit_size as usize {
                    violations.push(format!(
                        "induction row for {} has {} parents for orbit size {}",
                        row.child,
                        row.parents.len(),
                        link.orbit_size
                    ));
                }
            }
            for c in &characters {
                if !children.contains(&c.label) {
                    violations.push(format!("no induction row for {}", c.label));
                }
            }
            Some(CliffordLink {
                parent: link.parent.clone(),
                spec_map,
                induction: link
                    .induction
                    .iter()
                    .map(|r| InductionRow { child: r.child.clone(), parents: r.parents.clone() })
                    .collect(),
                orbit_size: link.orbit_size,
            })
        }
    };

    if !violations.is_empty() {
        return Err(GroupRepoError::Validation(violations));
    }
    Ok(GroupData {
        name: raw.name,
        order: raw.order,
        conductor: raw.conductor,
        mu_order: raw.mu_order,
        orbits,
        characters,
        schur_table,
        class_data,
        clifford,
        advisories,
    })
}

// ---------------------------------------------------------------------------
// clifford chains

/// Builds the child's Schur table from the parent's through the child's
/// link. Every parent in an induction row must derive the same element;
/// the child pack supplies its own character table and classes.
pub fn derive_subgroup(parent: &GroupData, child: &GroupData) -> Result<GroupData> {
    let link = child
        .clifford
        .as_ref()
        .ok_or_else(|| GroupRepoError::InconsistentLink("child pack has no link".into()))?;
    let icl = |msg: String| GroupRepoError::InconsistentLink(msg);
    if link.parent != parent.name {
        return Err(icl(format!("link names parent {}, got {}", link.parent, parent.name)));
    }
    if link.orbit_size as u64 * child.order != parent.order {
        return Err(icl(format!(
            "orders {} and {} do not fit orbit size {}",
            parent.order, child.order, link.orbit_size
        )));
    }
    if link.spec_map.len() != parent.n_slots() {
        return Err(icl(format!(
            "spec map covers {} of {} parent variables",
            link.spec_map.len(),
            parent.n_slots()
        )));
    }
    let mut hit = vec![false; child.n_slots()];
    for s in &link.spec_map {
        if let SpecSlot::Keep { child: c, .. } = s {
            if *c >= hit.len() {
                return Err(icl(format!("spec map targets child slot {c} of {}", hit.len())));
            }
            hit[*c] = true;
        }
    }
    if !hit.iter().all(|&b| b) {
        return Err(icl("spec map misses a child variable".into()));
    }
    let mut seen_parents = BTreeSet::new();
    for row in &link.induction {
        for p in &row.parents {
            if parent.char_index(p).is_none() {
                return Err(icl(format!("unknown parent character {p}")));
            }
            if !seen_parents.insert(p.clone()) {
                return Err(icl(format!("parent character {p} appears twice")));
            }
        }
    }
    if seen_parents.len() != parent.characters.len() {
        return Err(icl(format!(
            "induction covers {} of {} parent characters",
            seen_parents.len(),
            parent.characters.len()
        )));
    }

    let layout = child.layout();
    let mut violations = Vec::new();
    let mut schur_table = Vec::with_capacity(child.characters.len());
    let mut advisories = Vec::new();
    for c in &child.characters {
        let row = link
            .induction
            .iter()
            .find(|r| r.child == c.label)
            .ok_or_else(|| icl(format!("no induction row for {}", c.label)))?;
        let derived: Vec<FactoredSchur> = row
            .parents
            .iter()
            .map(|p| {
                let pi = parent.char_index(p).unwrap();
                clifford_derive(&parent.schur_table[pi], &link.spec_map, link.orbit_size)
            })
            .collect::<std::result::Result<_, _>>()?;
        for other in &derived[1..] {
            if !equivalent(&derived[0], other) {
                return Err(icl(format!("parents of {} derive different elements", c.label)));
            }
        }
        let s = derived.into_iter().next().unwrap();
        for v in validate_schur(&s, &layout) {
            violations.push(format!("derived row {}: {v}", c.label));
        }
        let want = CycNum::from_rational(BigRational::new(
            BigInt::from(child.order),
            BigInt::from(c.degree),
        ));
        if value_at_one(&s) != want {
            violations.push(format!("derived row {}: value at 1 is not |W|/degree", c.label));
        }
        for a in advisory_notes(&s) {
            advisories.push(format!("derived row {}: {a}", c.label));
        }
        schur_table.push(s);
    }
    if !violations.is_empty() {
        return Err(GroupRepoError::Validation(violations));
    }
    Ok(GroupData { schur_table, advisories, ..child.clone() })
}

// ---------------------------------------------------------------------------
// p-blocks of the group algebra

/// Blocks of the group over the p-local ring: characters fall together when
/// their central characters agree modulo P on every class sum. Singletons
/// when p does not divide the group order.
pub fn p_blocks_of_group(g: &GroupData, p: &PrimeIdeal) -> Result<Partition> {
    let n = g.characters.len();
    if g.order % p.p != 0 {
        return Ok(Partition::singletons(n));
    }
    let mut keys: Vec<Vec<Vec<u64>>> = Vec::with_capacity(n);
    for chi in 0..n {
        let row = central_char(g, chi)?;
        let mut key = Vec::with_capacity(row.values.len());
        for v in &row.values {
            key.push(residue_mod_ideal(v, p)?);
        }
        keys.push(key);
    }
    Ok(Partition::from_key_vec(&keys))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::numfield::primes_above;
    use crate::schur::canonical_form;

    pub(crate) fn c2_json() -> String {
        r#"{
            "name": "c2", "order": 2, "conductor": 1, "mu_order": 2,
            "orbits": [{"letter": "x", "e": 2}],
            "characters": [
                {"label": "phi{1,0}", "degree": 1, "b": 0},
                {"label": "phi{1,1}", "degree": 1, "b": 1}
            ],
            "schur": [
                {"char": "phi{1,0}", "xi": 1, "N": [0, 0],
                 "factors": [{"psi": {"d": 4, "k": 1}, "M": [-1, 1], "mult": 1}]},
                {"char": "phi{1,1}", "xi": 1, "N": [0, 0],
                 "factors": [{"psi": {"d": 4, "k": 1}, "M": [1, -1], "mult": 1}]}
            ],
            "classes": [
                {"size": 1, "values": [1, 1]},
                {"size": 1, "values": [1, -1]}
            ]
        }"#
        .to_string()
    }

    pub(crate) fn c1_json(with_link: bool) -> String {
        let link = r#",
            "clifford": {
                "parent": "c2",
                "spec_map": [{"zeta": [1, 0]}, {"zeta": [1, 0]}],
                "induction": [{"child": "phi{1,0}", "parents": ["phi{1,0}", "phi{1,1}"]}],
                "orbit_size": 2
            }"#;
        format!(
            r#"{{
            "name": "c1", "order": 1, "conductor": 1, "mu_order": 2,
            "orbits": [],
            "characters": [{{"label": "phi{{1,0}}", "degree": 1, "b": 0}}],
            "schur": [{{"char": "phi{{1,0}}", "xi": 1, "N": [], "factors": []}}],
            "classes": [{{"size": 1, "values": [1]}}]{}
        }}"#,
            if with_link { link } else { "" }
        )
    }

    pub(crate) fn c2() -> GroupData {
        load_group(c2_json().as_bytes()).unwrap()
    }

    // the symmetric group on three points, for p-block checks only: the
    // schur rows are placeholders and never touched here
    fn s3() -> GroupData {
        let dummy = FactoredSchur {
            xi: CycNum::one(),
            n0: vec![],
            factors: vec![],
        };
        GroupData {
            name: "s3".into(),
            order: 6,
            conductor: 1,
            mu_order: 2,
            orbits: vec![],
            characters: vec![
                CharInfo { label: "phi{1,0}".into(), degree: 1, b: 0 },
                CharInfo { label: "phi{1,3}".into(), degree: 1, b: 3 },
                CharInfo { label: "phi{2,1}".into(), degree: 2, b: 1 },
            ],
            schur_table: vec![dummy.clone(), dummy.clone(), dummy],
            class_data: vec![
                ClassInfo {
                    size: 1,
                    values: vec![CycNum::one(), CycNum::one(), CycNum::from_int(2)],
                },
                ClassInfo {
                    size: 3,
                    values: vec![CycNum::one(), CycNum::from_int(-1), CycNum::zero()],
                },
                ClassInfo {
                    size: 2,
                    values: vec![CycNum::one(), CycNum::one(), CycNum::from_int(-1)],
                },
            ],
            clifford: None,
            advisories: vec![],
        }
    }

    #[test]
    fn loads_a_valid_pack() {
        let g = c2();
        assert_eq!(g.order, 2);
        assert_eq!(g.layout(), vec![2]);
        assert_eq!(g.slot_names(), vec!["x_0", "x_1"]);
        assert_eq!(g.char_index("phi{1,1}"), Some(1));
        assert!(g.advisories.is_empty());
        for (i, s) in g.schur_table.iter().enumerate() {
            let want = CycNum::from_int(2 / g.characters[i].degree as i64);
            assert_eq!(value_at_one(s), want);
        }
        let t = load_group(c1_json(false).as_bytes()).unwrap();
        assert_eq!(t.n_slots(), 0);
        assert_eq!(t.characters.len(), 1);
    }

    #[test]
    fn rejects_malformed_documents() {
        let err = load_group(b"{").unwrap_err();
        assert!(matches!(err, GroupRepoError::Parse(_)));
        // unknown keys are parse failures
        let doc = c2_json().replacen("\"name\"", "\"extra\": 7, \"name\"", 1);
        assert!(matches!(load_group(doc.as_bytes()).unwrap_err(), GroupRepoError::Parse(_)));
    }

    #[test]
    fn rejects_wrong_order_and_bad_tables() {
        // 2 -> 3 breaks degree sum, class sizes, and schur values at once
        let doc = c2_json().replacen("\"order\": 2", "\"order\": 3", 1);
        match load_group(doc.as_bytes()).unwrap_err() {
            GroupRepoError::Validation(v) => {
                assert!(v.iter().any(|s| s.contains("squared degrees")));
                assert!(v.iter().any(|s| s.contains("class sizes")));
                assert!(v.iter().any(|s| s.contains("value at 1")));
            }
            other => panic!("wrong error: {other}"),
        }

        let doc = c2_json().replacen("\"values\": [1, -1]", "\"values\": [1, 1]", 1);
        match load_group(doc.as_bytes()).unwrap_err() {
            GroupRepoError::Validation(v) => {
                assert!(v.iter().any(|s| s.contains("orthogonality")));
            }
            other => panic!("wrong error: {other}"),
        }

        let doc = c2_json().replacen("{\"psi\": {\"d\": 4, \"k\": 1}", "{\"psi\": {\"d\": 1, \"k\": 0}", 1);
        match load_group(doc.as_bytes()).unwrap_err() {
            GroupRepoError::Validation(v) => {
                assert!(v.iter().any(|s| s.contains("t - 1")));
            }
            other => panic!("wrong error: {other}"),
        }

        let doc = c2_json().replacen("\"mu_order\": 2", "\"mu_order\": 4", 1);
        match load_group(doc.as_bytes()).unwrap_err() {
            GroupRepoError::Validation(v) => {
                assert!(v.iter().any(|s| s.contains("mu_order")));
            }
            other => panic!("wrong error: {other}"),
        }

        let doc = c2_json().replacen("\"label\": \"phi{1,1}\"", "\"label\": \"phi{1,2}\"", 1);
        match load_group(doc.as_bytes()).unwrap_err() {
            GroupRepoError::Validation(v) => {
                assert!(v.iter().any(|s| s.contains("does not encode")));
                // schur row labels no longer line up either
                assert!(v.iter().any(|s| s.contains("schur row")));
            }
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn rejects_non_integral_central_characters() {
        // order 4 with one degree-2 character: 3 * 1 / 2 is not integral
        let doc = r#"{
            "name": "fake", "order": 4, "conductor": 1, "mu_order": 2,
            "orbits": [],
            "characters": [{"label": "phi{2,0}", "degree": 2, "b": 0}],
            "schur": [{"char": "phi{2,0}", "xi": 2, "N": [], "factors": []}],
            "classes": [
                {"size": 1, "values": [2]},
                {"size": 3, "values": [1]}
            ]
        }"#;
        match load_group(doc.as_bytes()).unwrap_err() {
            GroupRepoError::Validation(v) => {
                assert!(v.iter().any(|s| s.contains("central character")));
            }
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn central_characters_and_p_blocks() {
        let g = c2();
        let triv = central_char(&g, 0).unwrap();
        assert_eq!(triv.values, vec![CycNum::one(), CycNum::one()]);
        let sgn = central_char(&g, 1).unwrap();
        assert_eq!(sgn.values, vec![CycNum::one(), CycNum::from_int(-1)]);

        for p in primes_above(2, 1).unwrap() {
            let blocks = p_blocks_of_group(&g, &p).unwrap();
            assert_eq!(blocks.parts(), &[vec![0, 1]]);
        }
        for p in primes_above(3, 1).unwrap() {
            let blocks = p_blocks_of_group(&g, &p).unwrap();
            assert_eq!(blocks, Partition::singletons(2));
        }

        let s = s3();
        for p in primes_above(2, 1).unwrap() {
            let blocks = p_blocks_of_group(&s, &p).unwrap();
            assert_eq!(blocks.parts(), &[vec![0, 1], vec![2]]);
        }
        for p in primes_above(3, 1).unwrap() {
            let blocks = p_blocks_of_group(&s, &p).unwrap();
            assert_eq!(blocks.parts(), &[vec![0, 1, 2]]);
        }
        for p in primes_above(5, 1).unwrap() {
            assert_eq!(p_blocks_of_group(&s, &p).unwrap(), Partition::singletons(3));
        }

        let t = load_group(c1_json(false).as_bytes()).unwrap();
        for p in primes_above(2, 1).unwrap() {
            assert_eq!(p_blocks_of_group(&t, &p).unwrap(), Partition::singletons(1));
        }
    }

    #[test]
    fn derives_the_trivial_subgroup() {
        let parent = c2();
        let child = load_group(c1_json(true).as_bytes()).unwrap();
        let got = derive_subgroup(&parent, &child).unwrap();
        assert_eq!(got.schur_table.len(), 1);
        assert!(equivalent(&got.schur_table[0], &child.schur_table[0]));
        assert_eq!(value_at_one(&got.schur_table[0]), CycNum::one());
    }

    #[test]
    fn identity_link_reproduces_the_parent() {
        let parent = c2();
        let mut child = parent.clone();
        child.clifford = Some(CliffordLink {
            parent: "c2".into(),
            spec_map: vec![
                SpecSlot::Keep { child: 0, zeta: (1, 0) },
                SpecSlot::Keep { child: 1, zeta: (1, 0) },
            ],
            induction: vec![
                InductionRow { child: "phi{1,0}".into(), parents: vec!["phi{1,0}".into()] },
                InductionRow { child: "phi{1,1}".into(), parents: vec!["phi{1,1}".into()] },
            ],
            orbit_size: 1,
        });
        let got = derive_subgroup(&parent, &child).unwrap();
        for (a, b) in got.schur_table.iter().zip(&parent.schur_table) {
            assert!(equivalent(a, b));
            assert_eq!(canonical_form(a).xi, canonical_form(b).xi);
        }
    }

    #[test]
    fn rejects_inconsistent_links() {
        let parent = c2();
        let child = load_group(c1_json(true).as_bytes()).unwrap();

        let mut bad = child.clone();
        bad.clifford = None;
        assert!(matches!(
            derive_subgroup(&parent, &bad).unwrap_err(),
            GroupRepoError::InconsistentLink(_)
        ));

        let mut bad = child.clone();
        bad.clifford.as_mut().unwrap().parent = "c3".into();
        assert!(matches!(
            derive_subgroup(&parent, &bad).unwrap_err(),
            GroupRepoError::InconsistentLink(_)
        ));

        let mut bad = child.clone();
        bad.clifford.as_mut().unwrap().induction[0].parents =
            vec!["phi{1,0}".into(), "phi{1,0}".into()];
        let err = derive_subgroup(&parent, &bad).unwrap_err();
        assert!(matches!(err, GroupRepoError::InconsistentLink(ref m) if m.contains("twice")));

        let mut bad = child.clone();
        bad.clifford.as_mut().unwrap().spec_map.pop();
        assert!(matches!(
            derive_subgroup(&parent, &bad).unwrap_err(),
            GroupRepoError::InconsistentLink(_)
        ));

        // a parent whose two characters derive different elements
        let mut warped = parent.clone();
        warped.schur_table[1] = FactoredSchur {
            xi: CycNum::from_int(2),
            n0: vec![0, 0],
            factors: warped.schur_table[1].factors.clone(),
        };
        let err = derive_subgroup(&warped, &child).unwrap_err();
        assert!(matches!(err, GroupRepoError::InconsistentLink(ref m) if m.contains("different")));
    }
}
