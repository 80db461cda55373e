//! The two subgroup links: choosing the kill branches for the eliminated
//! variables and deriving the smaller Schur tables from the big one.
//!
//! Killing a split variable sends it to a 12th root of unity; the underlying
//! parameter always lands on its reflection eigenvalue, but the branch
//! changes the collapsed factor values. A branch is accepted only if every
//! twist orbit derives one element, no essential factor collapses to zero,
//! and the derived value at 1 is the child group order over the degree.
//! All accepted branches must agree up to equivalence; the group-point
//! branch is preferred when it passes.

use anyhow::{ensure, Result};
use hecke_core::schur::{clifford_derive, equivalent, value_at_one, FactoredSchur, SpecSlot};

use crate::chars::SubChars;
use crate::group::int;

pub struct Link {
    pub spec_map: Vec<SpecSlot>,
    pub orbit_size: u32,
    /// chosen kill exponents at order 12, for the record
    pub kills: Vec<i64>,
    /// derived child table, in child character order
    pub rows: Vec<FactoredSchur>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// zeta_12^m as a primitive (order, exponent) pair.
fn zeta12(m: i64) -> (u32, i64) {
    let m = m.rem_euclid(12) as u32;
    if m == 0 {
        return (1, 0);
    }
    let g = gcd(m, 12);
    (12 / g, (m / g) as i64)
}

fn try_link(
    parent_rows: &[FactoredSchur],
    sub: &SubChars,
    child_order: i64,
    spec: &[SpecSlot],
    orbit_size: u32,
    probe: bool,
) -> Result<Vec<FactoredSchur>> {
    let children: Vec<usize> =
        if probe { vec![0] } else { (0..sub.parent_orbits.len()).collect() };
    let mut rows = Vec::with_capacity(children.len());
    for &c in &children {
        let parents = &sub.parent_orbits[c];
        let mut derived = Vec::with_capacity(parents.len());
        for &p in parents {
            derived.push(clifford_derive(&parent_rows[p], spec, orbit_size)?);
        }
        for o in &derived[1..] {
            ensure!(equivalent(&derived[0], o), "parents of child {c} disagree");
        }
        let row = derived.into_iter().next().unwrap();
        ensure!(
            value_at_one(&row) == int(child_order / sub.degrees[c] as i64),
            "child {c}: wrong value at 1"
        );
        rows.push(row);
    }
    Ok(rows)
}

fn pick<const K: usize>(
    parent_rows: &[FactoredSchur],
    sub: &SubChars,
    child_order: i64,
    orbit_size: u32,
    preferred: [i64; K],
    spec_of: impl Fn(&[i64; K]) -> Vec<SpecSlot>,
) -> Result<Link> {
    let mut tuples: Vec<[i64; K]> = vec![preferred];
    let mut cur = [0i64; K];
    loop {
        if cur != preferred {
            tuples.push(cur);
        }
        let mut i = K;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < 12 {
                break;
            }
            cur[i] = 0;
        }
        if cur == [0i64; K] {
            break;
        }
    }

    let mut passing: Vec<([i64; K], Vec<FactoredSchur>)> = Vec::new();
    for m in tuples {
        let spec = spec_of(&m);
        if try_link(parent_rows, sub, child_order, &spec, orbit_size, true).is_err() {
            continue;
        }
        if let Ok(rows) = try_link(parent_rows, sub, child_order, &spec, orbit_size, false) {
            passing.push((m, rows));
        }
    }
    ensure!(!passing.is_empty(), "no kill branch survives the orbit checks");
    let (best, rows) = passing.remove(0);
    for (m, other) in &passing {
        for (a, b) in rows.iter().zip(other) {
            ensure!(
                equivalent(a, b),
                "branches {best:?} and {m:?} both pass but derive different tables"
            );
        }
    }
    Ok(Link {
        spec_map: spec_of(&best),
        orbit_size,
        kills: best.to_vec(),
        rows,
    })
}

/// The index-3 subgroup drops the order-3 generator: its three variables are
/// killed, x and z survive. Group-point kill is Y_j -> zeta_3^j.
pub fn solve_g6(parent_rows: &[FactoredSchur], sub: &SubChars) -> Result<Link> {
    pick(parent_rows, sub, 48, 3, [0, 4, 8], |m| {
        vec![
            SpecSlot::Keep { child: 0, zeta: (1, 0) },
            SpecSlot::Keep { child: 1, zeta: (1, 0) },
            SpecSlot::Kill { zeta: zeta12(m[0]) },
            SpecSlot::Kill { zeta: zeta12(m[1]) },
            SpecSlot::Kill { zeta: zeta12(m[2]) },
            SpecSlot::Keep { child: 2, zeta: (1, 0) },
            SpecSlot::Keep { child: 3, zeta: (1, 0) },
            SpecSlot::Keep { child: 4, zeta: (1, 0) },
        ]
    })
}

/// The index-2 subgroup of that drops the involution: the two x variables
/// are killed, z survives as the single orbit. Group-point kill is
/// X_i -> zeta_2^i.
pub fn solve_g4(parent_rows: &[FactoredSchur], sub: &SubChars) -> Result<Link> {
    pick(parent_rows, sub, 24, 2, [0, 6], |m| {
        vec![
            SpecSlot::Kill { zeta: zeta12(m[0]) },
            SpecSlot::Kill { zeta: zeta12(m[1]) },
            SpecSlot::Keep { child: 0, zeta: (1, 0) },
            SpecSlot::Keep { child: 1, zeta: (1, 0) },
            SpecSlot::Keep { child: 2, zeta: (1, 0) },
        ]
    })
}
