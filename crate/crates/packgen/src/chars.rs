//! Irreducible characters and fake degrees, computed from the matrices.
//!
//! The big group needs no general-purpose algorithm: its 18 linear characters
//! come from the determinant and the order-3 quotient, its 18 two-dimensional
//! irreducibles are the reflection embedding twisted by the linear ones, and
//! its 6 three-dimensional irreducibles scale the order-12 center into the
//! tetrahedral character. The smaller tables are restrictions. Orthogonality
//! is asserted, not assumed.

use anyhow::{ensure, Context, Result};
use hecke_core::numfield::CycNum;
use std::collections::BTreeMap;

use crate::group::{int, zeta, Groups, Mat2, MatGroup};

/// Identifying data for one irreducible of the big group. A linear character
/// is indexed by the parameter slots (i, j, k) that s, t, u map to; a 2-dim
/// character is the reflection embedding twisted by Lin(i, j, k); a 3-dim
/// character is indexed by the exponent e through which it scales the
/// order-12 center.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Lin { i: usize, j: usize, k: usize },
    Two { i: usize, j: usize, k: usize },
    Three { e: usize },
}

impl Kind {
    pub fn degree(&self) -> u32 {
        match self {
            Kind::Lin { .. } => 1,
            Kind::Two { .. } => 2,
            Kind::Three { .. } => 3,
        }
    }
}

fn det_exp6(x: &Mat2) -> i64 {
    let d = x.det();
    (0..6).find(|&a| d == zeta(6, a)).expect("determinant is a 6th root of unity")
}

fn lin_val(groups: &Groups, i: usize, j: usize, k: usize, g7_idx: usize) -> CycNum {
    // det^m zeta_3^(n phi3), with m matching i mod 2 and k mod 3
    let m = (0..6i64).find(|&m| m % 2 == i as i64 && m % 3 == k as i64).unwrap();
    let n = ((j + 3 - k) % 3) as i64;
    let x = &groups.g7.elems[g7_idx];
    let d = x.det().pow(m).unwrap();
    d.try_mul(&zeta(3, n * groups.phi3[g7_idx] as i64)).unwrap()
}

pub fn eval_big(groups: &Groups, kind: Kind, g7_idx: usize) -> CycNum {
    match kind {
        Kind::Lin { i, j, k } => lin_val(groups, i, j, k, g7_idx),
        Kind::Two { i, j, k } => {
            let x = &groups.g7.elems[g7_idx];
            x.trace().try_mul(&lin_val(groups, i, j, k, g7_idx)).unwrap()
        }
        Kind::Three { e } => {
            let x = &groups.g7.elems[g7_idx];
            let a6 = det_exp6(x);
            let g = x.scale(&zeta(12, -a6));
            assert!(groups.sl23.contains(&g), "scalar-free part lies in SL(2,3)");
            let tau = match g.elem_order() {
                1 | 2 => int(3),
                4 => int(-1),
                3 | 6 => int(0),
                o => panic!("unexpected element order {o} in SL(2,3)"),
            };
            zeta(6, a6 * e as i64).try_mul(&tau).unwrap()
        }
    }
}

/// chi(1)-weighted hermitian inner product of two class-value rows.
pub fn inner(group: &MatGroup, a: &[CycNum], b: &[CycNum]) -> CycNum {
    let mut acc = CycNum::zero();
    for (ci, members) in group.classes.iter().enumerate() {
        let term = a[ci].try_mul(&b[ci].conjugate()).unwrap();
        let term = term.try_mul(&int(members.len() as i64)).unwrap();
        acc = acc.try_add(&term).unwrap();
    }
    acc.try_div(&int(group.order() as i64)).unwrap()
}

fn assert_orthonormal(group: &MatGroup, values: &[Vec<CycNum>]) -> Result<()> {
    for (i, a) in values.iter().enumerate() {
        for (j, b) in values.iter().enumerate() {
            let p = inner(group, a, b);
            let want = if i == j { int(1) } else { int(0) };
            ensure!(p == want, "first orthogonality fails at ({i}, {j}): {p}");
        }
    }
    // column orthogonality pins the table as a whole
    let nc = group.classes.len();
    ensure!(values.len() == nc, "character count must equal class count");
    for ci in 0..nc {
        for cj in 0..nc {
            let mut acc = CycNum::zero();
            for row in values {
                acc = acc.try_add(&row[ci].try_mul(&row[cj].conjugate()).unwrap()).unwrap();
            }
            let want = if ci == cj {
                int(group.order() as i64 / group.classes[ci].len() as i64)
            } else {
                int(0)
            };
            ensure!(acc == want, "second orthogonality fails at ({ci}, {cj})");
        }
    }
    Ok(())
}

pub struct BigChars {
    pub kinds: Vec<Kind>,
    /// class-value rows, indexed [char][class]
    pub values: Vec<Vec<CycNum>>,
}

pub fn build_big(groups: &Groups) -> Result<BigChars> {
    let mut kinds = Vec::new();
    for i in 0..2 {
        for j in 0..3 {
            for k in 0..3 {
                kinds.push(Kind::Lin { i, j, k });
            }
        }
    }
    for i in 0..2 {
        for j in 0..3 {
            for k in 0..3 {
                kinds.push(Kind::Two { i, j, k });
            }
        }
    }
    for e in 0..6 {
        kinds.push(Kind::Three { e });
    }
    ensure!(kinds.len() == 42);

    let values: Vec<Vec<CycNum>> = kinds
        .iter()
        .map(|&kind| {
            groups
                .g7
                .classes
                .iter()
                .map(|members| eval_big(groups, kind, members[0]))
                .collect()
        })
        .collect();

    // the linear characters hit the advertised parameter slots
    let s_idx = groups.g7.idx(&groups.s).unwrap();
    let t_idx = groups.g7.idx(&groups.t).unwrap();
    let u_idx = groups.g7.idx(&groups.u).unwrap();
    for &kind in &kinds {
        if let Kind::Lin { i, j, k } = kind {
            ensure!(eval_big(groups, kind, s_idx) == zeta(2, i as i64));
            ensure!(eval_big(groups, kind, t_idx) == zeta(3, j as i64));
            ensure!(eval_big(groups, kind, u_idx) == zeta(3, k as i64));
        }
    }
    for (kind, row) in kinds.iter().zip(&values) {
        ensure!(row[0] == int(kind.degree() as i64), "identity value is the degree");
    }
    assert_orthonormal(&groups.g7, &values)?;
    Ok(BigChars { kinds, values })
}

/// A smaller table obtained by restriction: each row together with the
/// parent characters restricting to it (one twist orbit each).
pub struct SubChars {
    pub values: Vec<Vec<CycNum>>,
    pub degrees: Vec<u32>,
    pub parent_orbits: Vec<Vec<usize>>,
}

fn row_key(row: &[CycNum]) -> String {
    let mut s = String::new();
    for x in row {
        let x = x.at_order(12).unwrap();
        for c in x.coeffs() {
            s.push_str(&c.to_string());
            s.push(',');
        }
        s.push(';');
    }
    s
}

/// Restricts the parent rows to the subgroup and groups equal restrictions.
/// `embed` maps subgroup element indices into the parent element indices.
pub fn restrict(
    parent: &MatGroup,
    parent_values: &[Vec<CycNum>],
    sub: &MatGroup,
    embed: &[usize],
) -> Result<SubChars> {
    let orbit = parent.order() / sub.order();
    let mut grouped: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut rows: BTreeMap<String, Vec<CycNum>> = BTreeMap::new();
    for (pi, pv) in parent_values.iter().enumerate() {
        let row: Vec<CycNum> = sub
            .classes
            .iter()
            .map(|members| pv[parent.class_of[embed[members[0]]]].clone())
            .collect();
        let key = row_key(&row);
        grouped.entry(key.clone()).or_default().push(pi);
        rows.entry(key).or_insert(row);
    }
    // order rows by their smallest parent
    let mut order: Vec<(usize, String)> =
        grouped.iter().map(|(k, v)| (v[0], k.clone())).collect();
    order.sort();
    let mut out = SubChars { values: Vec::new(), degrees: Vec::new(), parent_orbits: Vec::new() };
    for (_, key) in order {
        let parents = grouped.remove(&key).unwrap();
        ensure!(parents.len() == orbit, "twist orbits must have size {orbit}");
        let row = rows.remove(&key).unwrap();
        let norm = inner(sub, &row, &row);
        ensure!(norm == int(1), "restriction must stay irreducible");
        let deg = row[0].as_rational().context("degree must be rational")?;
        ensure!(deg.is_integer(), "degree must be an integer");
        let deg_i: i64 = deg.to_integer().try_into().context("degree fits in i64")?;
        out.degrees.push(u32::try_from(deg_i).context("degree is positive")?);
        out.values.push(row);
        out.parent_orbits.push(parents);
    }
    ensure!(out.values.len() * orbit == parent_values.len());
    assert_orthonormal(sub, &out.values)?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// fake degrees

const WINDOW: usize = 48;

fn series_inv_char(tr: &CycNum, det: &CycNum) -> Vec<CycNum> {
    // 1/det(1 - q M) = 1/(1 - tr q + det q^2)
    let mut c = vec![CycNum::zero(); WINDOW];
    c[0] = int(1);
    for n in 1..WINDOW {
        let mut v = tr.try_mul(&c[n - 1]).unwrap();
        if n >= 2 {
            v = v.try_sub(&det.try_mul(&c[n - 2]).unwrap()).unwrap();
        }
        c[n] = v;
    }
    c
}

fn mul_one_minus_power(series: &[CycNum], d: usize) -> Vec<CycNum> {
    let mut out = series.to_vec();
    for n in (d..WINDOW).rev() {
        out[n] = out[n].try_sub(&series[n - d]).unwrap();
    }
    out
}

pub struct FakeDegrees {
    pub b: Vec<u32>,
    pub invariant_degrees: (usize, usize),
}

/// Graded multiplicities in the coinvariant algebra, via the exact power
/// series (1/|G|) sum over classes of |C| chi*(rep) / det(1 - q rep copy).
/// `conj_char` and `inv_rep` select the pairing convention; the caller keeps
/// whichever convention reproduces the printed exponents.
pub fn fake_degrees(
    group: &MatGroup,
    values: &[Vec<CycNum>],
    conj_char: bool,
    inv_rep: bool,
) -> Result<FakeDegrees> {
    let nc = group.classes.len();
    let class_series: Vec<Vec<CycNum>> = (0..nc)
        .map(|ci| {
            let rep_idx = group.classes[ci][0];
            let rep_idx = if inv_rep { group.inv[rep_idx] } else { rep_idx };
            let m = &group.elems[rep_idx];
            series_inv_char(&m.trace(), &m.det())
        })
        .collect();

    let molien = |row: &[CycNum]| -> Vec<CycNum> {
        let mut acc = vec![CycNum::zero(); WINDOW];
        for ci in 0..nc {
            let mut a = row[ci].clone();
            if conj_char {
                a = a.conjugate();
            }
            a = a.try_mul(&int(group.classes[ci].len() as i64)).unwrap();
            for n in 0..WINDOW {
                acc[n] = acc[n].try_add(&a.try_mul(&class_series[ci][n]).unwrap()).unwrap();
            }
        }
        let g = int(group.order() as i64);
        acc.into_iter().map(|x| x.try_div(&g).unwrap()).collect()
    };

    // invariant degrees from the trivial character
    let triv = values
        .iter()
        .position(|row| row.iter().all(|v| v.is_one()))
        .context("trivial character missing")?;
    let f = molien(&values[triv]);
    let d1 = (1..WINDOW).find(|&n| !f[n].is_zero()).context("no invariant degree")?;
    let g = mul_one_minus_power(&f, d1);
    let d2 = (1..WINDOW).find(|&n| !g[n].is_zero()).context("no second degree")?;
    let h = mul_one_minus_power(&g, d2);
    ensure!(h[0].is_one() && h[1..].iter().all(|x| x.is_zero()), "not a rank-2 invariant ring");
    ensure!(d1 * d2 == group.order(), "degrees must multiply to the group order");
    let (d1, d2) = (d1.min(d2), d1.max(d2));

    let mut b = Vec::with_capacity(values.len());
    let mut weighted = vec![CycNum::zero(); WINDOW];
    for row in values {
        let r = mul_one_minus_power(&mul_one_minus_power(&molien(row), d1), d2);
        ensure!(
            r[d1 + d2..].iter().all(|x| x.is_zero()),
            "graded multiplicity is not polynomial"
        );
        let mut total = CycNum::zero();
        for (n, x) in r.iter().enumerate() {
            ensure!(x.is_rational() && x.is_integral(), "multiplicity at q^{n} not integral");
            ensure!(
                !num_traits::Signed::is_negative(&x.as_rational().unwrap()),
                "negative multiplicity"
            );
            total = total.try_add(x).unwrap();
            weighted[n] = weighted[n].try_add(&x.try_mul(&row[0]).unwrap()).unwrap();
        }
        ensure!(total == row[0], "multiplicities must sum to the degree");
        let v = r.iter().position(|x| !x.is_zero()).context("zero fake degree")?;
        b.push(v as u32);
    }

    // the degree-weighted sum is the Poincare polynomial of the coinvariants
    let mut poincare = vec![CycNum::zero(); WINDOW];
    for n1 in 0..d1 {
        for n2 in 0..d2 {
            poincare[n1 + n2] = poincare[n1 + n2].try_add(&int(1)).unwrap();
        }
    }
    ensure!(weighted == poincare, "coinvariant Poincare polynomial mismatch");

    Ok(FakeDegrees { b, invariant_degrees: (d1, d2) })
}
