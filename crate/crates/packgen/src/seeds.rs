//! The three seed Schur elements, their orbits under parameter permutation,
//! and the conversion into factored normal form over the split variables.
//!
//! Parameter slots are x0 x1 | y0 y1 y2 | z0 z1 z2 with x_i = zeta_2^i X_i^12,
//! y_j = zeta_3^j Y_j^12, z_k = zeta_3^k Z_k^12. Monomial exponents are kept
//! in sixths of a parameter unit so the square and cube roots appearing in
//! the 2- and 3-dimensional seeds stay integral. A branch choice for such a
//! root shifts the attached root of unity by 6 (square) or 4 (cube); the
//! right branch per character is pinned by the scalar through which the
//! central element acts.

use std::collections::BTreeMap;

use anyhow::{ensure, Context, Result};
use hecke_core::numfield::CycNum;
use hecke_core::polyalg::factor_power_minus_root;
use hecke_core::schur::{equivalent, validate_schur, value_at_one, FactoredSchur, SchurFactor};

use crate::chars::{BigChars, Kind};
use crate::group::{int, zeta, Groups};

type Sixth = [i64; 8];

const X: [usize; 2] = [0, 1];
const Y: [usize; 3] = [2, 3, 4];
const Z: [usize; 3] = [5, 6, 7];

pub const LAYOUT7: [usize; 3] = [2, 3, 3];

fn build(parts: &[(usize, i64)]) -> Sixth {
    let mut m = [0i64; 8];
    for &(s, v) in parts {
        m[s] += v;
    }
    m
}

fn sub(a: &Sixth, b: &Sixth) -> Sixth {
    let mut m = *a;
    for i in 0..8 {
        m[i] -= b[i];
    }
    m
}

/// zeta_12 exponent of the root-of-unity part: a whole unit of x_i carries
/// zeta_2^i, of y_j carries zeta_3^j, of z_k carries zeta_3^k.
fn zeta_exp(nu: &Sixth) -> i64 {
    let num = 6 * nu[1] + 4 * (nu[3] + 2 * nu[4]) + 4 * (nu[6] + 2 * nu[7]);
    assert!(num % 6 == 0, "monomial constant is not in mu_12");
    (num / 6).rem_euclid(12)
}

/// One Phi_1 factor; the argument is zeta_12^shift times the sixth-monomial.
#[derive(Clone)]
struct Fac {
    nu: Sixth,
    shift: i64,
}

fn fac(parts: &[(usize, i64)]) -> Fac {
    Fac { nu: build(parts), shift: 0 }
}

struct Template {
    coef: i64,
    pref: Option<Fac>,
    facs: Vec<Fac>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn to_schur(t: &Template) -> Result<FactoredSchur> {
    let mut xi = int(t.coef);
    let mut n0 = vec![0i64; 8];
    if let Some(p) = &t.pref {
        let c = (zeta_exp(&p.nu) + p.shift).rem_euclid(12);
        xi = xi.try_mul(&zeta(12, c))?;
        for (i, v) in p.nu.iter().enumerate() {
            n0[i] += 2 * v;
        }
    }
    let mut merged: BTreeMap<(Vec<i64>, u32, u32), (SchurFactor, u32)> = BTreeMap::new();
    for f in &t.facs {
        let c = (zeta_exp(&f.nu) + f.shift).rem_euclid(12);
        let alpha: Vec<i64> = f.nu.iter().map(|v| 2 * v).collect();
        let g = alpha.iter().fold(0, |acc, &v| gcd(acc, v));
        ensure!(g > 0, "constant factor in a seed");
        let m: Vec<i64> = alpha.iter().map(|v| v / g).collect();
        // Phi_1(zeta^c V^alpha) = zeta^c (V^alpha - zeta^-c)
        xi = xi.try_mul(&zeta(12, c))?;
        for psi in factor_power_minus_root(g as u32, 12, -c, 12)? {
            let key = (m.clone(), psi.root_order, psi.root_exp);
            merged
                .entry(key)
                .and_modify(|e| e.1 += 1)
                .or_insert((SchurFactor { psi, m: m.clone(), mult: 0 }, 1));
        }
    }
    let factors = merged
        .into_values()
        .map(|(mut f, mult)| {
            f.mult = mult;
            f
        })
        .collect();
    Ok(FactoredSchur { xi, n0, factors })
}

fn lin_template(i: usize, j: usize, k: usize) -> Template {
    let ip = 1 - i;
    let (a, b) = others(j);
    let (c, d) = others(k);
    let mut facs = vec![
        fac(&[(X[i], 6), (X[ip], -6)]),
        fac(&[
            (X[i], 6),
            (Y[j], 12),
            (Z[k], 12),
            (X[ip], -6),
            (Y[a], -6),
            (Y[b], -6),
            (Z[c], -6),
            (Z[d], -6),
        ]),
        fac(&[(Y[j], 6), (Y[a], -6)]),
        fac(&[(Y[j], 6), (Y[b], -6)]),
        fac(&[(Z[k], 6), (Z[c], -6)]),
        fac(&[(Z[k], 6), (Z[d], -6)]),
    ];
    for p in [a, b] {
        for q in [c, d] {
            facs.push(fac(&[(X[i], 6), (Y[j], 6), (Z[k], 6), (X[ip], -6), (Y[p], -6), (Z[q], -6)]));
        }
    }
    Template { coef: 1, pref: None, facs }
}

fn others(r: usize) -> (usize, usize) {
    match r {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => unreachable!(),
    }
}

/// y-roles: a outside the character, p plain in the pair, q distinguished;
/// z-roles: g outside, {h, k} the symmetric pair. The p and q roles are
/// interchangeable at a fixed branch; see `bind_all`.
fn two_template(a: usize, p: usize, q: usize, g: usize, h: usize, k: usize, beta: i64) -> Template {
    let r = build(&[(X[0], 3), (X[1], 3), (Y[p], 3), (Y[q], 3), (Z[h], 3), (Z[k], 3)]);
    let mut facs = vec![
        fac(&[(Y[a], 6), (Y[p], -6)]),
        fac(&[(Y[q], 6), (Y[a], -6)]),
        fac(&[(Z[h], 6), (Z[g], -6)]),
        fac(&[(Z[k], 6), (Z[g], -6)]),
    ];
    for i in 0..2 {
        for (yy, zz) in [(a, g), (q, h), (q, k)] {
            facs.push(Fac {
                nu: sub(&r, &build(&[(X[i], 6), (Y[yy], 6), (Z[zz], 6)])),
                shift: 6 * beta,
            });
        }
    }
    Template { coef: 2, pref: Some(fac(&[(Y[q], 6), (Y[a], -6)])), facs }
}

fn two_radical(p: usize, q: usize, h: usize, k: usize) -> Sixth {
    build(&[(X[0], 3), (X[1], 3), (Y[p], 3), (Y[q], 3), (Z[h], 3), (Z[k], 3)])
}

/// x-role i is the doubled one in the cube-root radicand.
fn three_template(i: usize, mhat: i64) -> Template {
    let ip = 1 - i;
    let r3 = three_radical(i);
    let mut facs = vec![fac(&[(X[ip], 6), (X[i], -6)])];
    for j in 0..3 {
        for k in 0..3 {
            facs.push(Fac {
                nu: sub(&build(&[(X[i], 6), (Y[j], 6), (Z[k], 6)]), &r3),
                shift: -4 * mhat,
            });
        }
    }
    Template { coef: 3, pref: None, facs }
}

fn three_radical(i: usize) -> Sixth {
    let ip = 1 - i;
    build(&[
        (X[i], 4),
        (X[ip], 2),
        (Y[0], 2),
        (Y[1], 2),
        (Y[2], 2),
        (Z[0], 2),
        (Z[1], 2),
        (Z[2], 2),
    ])
}

/// Builds the full 42-row Schur table in the order of `big.kinds`. Every row
/// is validated structurally, against its value at 1, and collectively
/// against the trace identity sum chi(1)/s_chi = 1 at exact generic points.
pub fn bind_all(g: &Groups, big: &BigChars) -> Result<Vec<FactoredSchur>> {
    let stu_mat = g.s.mul(&g.t).mul(&g.u);
    ensure!(stu_mat.scalar_value() == Some(g.stu.clone()), "central product changed");
    let stu = g.g7.idx(&stu_mat).context("stu not in the group")?;
    let stu_class = g.g7.class_of[stu];
    let mut rows = Vec::with_capacity(big.kinds.len());
    for (ci, kind) in big.kinds.iter().enumerate() {
        let central = &big.values[ci][stu_class];
        let t = match *kind {
            Kind::Lin { i, j, k } => lin_template(i, j, k),
            Kind::Two { i: _, j, k } => {
                let a = (j + 2) % 3;
                let (p, q) = (j.min((j + 1) % 3), j.max((j + 1) % 3));
                let gz = (k + 2) % 3;
                let (h, kk) = (k.min((k + 1) % 3), k.max((k + 1) % 3));
                let scalar = central.try_div(&int(2))?;
                let want: Vec<i64> = (0..2)
                    .filter(|&beta| {
                        let e = (zeta_exp(&two_radical(p, q, h, kk)) + 6 * beta).rem_euclid(12);
                        zeta(12, e) == scalar
                    })
                    .collect();
                ensure!(want.len() == 1, "branch of char {ci} not pinned: {want:?}");
                two_template(a, p, q, gz, h, kk, want[0])
            }
            Kind::Three { e: _ } => {
                let scalar = central.try_div(&int(3))?;
                let mut found = Vec::new();
                for i in 0..2 {
                    for mhat in 0..3 {
                        let e = (zeta_exp(&three_radical(i)) + 4 * mhat).rem_euclid(12);
                        if zeta(12, e) == scalar {
                            found.push((i, mhat));
                        }
                    }
                }
                ensure!(found.len() == 1, "cube branch of char {ci} not pinned: {found:?}");
                three_template(found[0].0, found[0].1)
            }
        };
        let s = to_schur(&t)?;
        let errs = validate_schur(&s, &LAYOUT7.to_vec());
        ensure!(errs.is_empty(), "char {ci}: {errs:?}");
        let deg = kind.degree() as i64;
        ensure!(value_at_one(&s) == int(144 / deg), "char {ci}: wrong value at 1");
        rows.push(s);
    }

    // the two y-roles inside the pair are interchangeable at a fixed branch,
    // while flipping the branch gives a genuinely different element (the
    // other sign twist), so the central scalar pins each row completely
    for a in 0..3 {
        let (p, q) = others(a);
        for gz in 0..3 {
            let (h, k) = others(gz);
            for beta in 0..2 {
                let s1 = to_schur(&two_template(a, p, q, gz, h, k, beta))?;
                let s2 = to_schur(&two_template(a, q, p, gz, h, k, beta))?;
                let s3 = to_schur(&two_template(a, p, q, gz, h, k, 1 - beta))?;
                ensure!(equivalent(&s1, &s2), "pair swap broken at a={a} g={gz} beta={beta}");
                ensure!(!equivalent(&s1, &s3), "branch flip collapses at a={a} g={gz} beta={beta}");
            }
        }
    }

    transcription_checks(&rows, big)?;

    // primes keep every nonconstant monomial away from roots of unity, so
    // the sum of chi(1)/s_chi over all 42 rows must be exactly 1
    let points: [([i64; 8], i64); 2] =
        [([2, 3, 5, 7, 11, 13, 17, 19], 1), ([23, 29, 31, 37, 41, 43, 47, 53], 7)];
    for (primes, shift) in points {
        let point: Vec<CycNum> = primes
            .iter()
            .enumerate()
            .map(|(s, &pr)| int(pr).try_mul(&zeta(12, shift * s as i64)).expect("point"))
            .collect();
        let mut sum = CycNum::zero();
        for (ci, s) in rows.iter().enumerate() {
            let v = eval_schur(s, &point)?;
            let term = int(big.kinds[ci].degree() as i64).try_div(&v)?;
            sum = sum.try_add(&term)?;
        }
        ensure!(sum == int(1), "trace identity fails at {primes:?}");
    }
    Ok(rows)
}

fn eval_schur(s: &FactoredSchur, point: &[CycNum]) -> Result<CycNum> {
    let mut v = s.xi.clone();
    for (i, &e) in s.n0.iter().enumerate() {
        v = v.try_mul(&point[i].pow(e)?)?;
    }
    for f in &s.factors {
        let mut arg = int(1);
        for (i, &e) in f.m.iter().enumerate() {
            arg = arg.try_mul(&point[i].pow(e)?)?;
        }
        v = v.try_mul(&f.psi.eval(&arg).pow(f.mult as i64)?)?;
    }
    Ok(v)
}

/// Literal transcriptions of the three seeds, spelled out factor by factor
/// with no index arithmetic, compared against the generated rows.
fn transcription_checks(rows: &[FactoredSchur], big: &BigChars) -> Result<()> {
    let lit_triv = Template {
        coef: 1,
        pref: None,
        facs: vec![
            fac(&[(0, 6), (1, -6)]),
            fac(&[(0, 6), (2, 12), (5, 12), (1, -6), (3, -6), (4, -6), (6, -6), (7, -6)]),
            fac(&[(2, 6), (3, -6)]),
            fac(&[(2, 6), (4, -6)]),
            fac(&[(5, 6), (6, -6)]),
            fac(&[(5, 6), (7, -6)]),
            fac(&[(0, 6), (2, 6), (5, 6), (1, -6), (3, -6), (6, -6)]),
            fac(&[(0, 6), (2, 6), (5, 6), (1, -6), (3, -6), (7, -6)]),
            fac(&[(0, 6), (2, 6), (5, 6), (1, -6), (4, -6), (6, -6)]),
            fac(&[(0, 6), (2, 6), (5, 6), (1, -6), (4, -6), (7, -6)]),
        ],
    };
    let triv = big
        .kinds
        .iter()
        .position(|k| matches!(k, Kind::Lin { i: 0, j: 0, k: 0 }))
        .context("trivial character missing")?;
    ensure!(
        equivalent(&to_schur(&lit_triv)?, &rows[triv]),
        "trivial seed transcription mismatch"
    );

    // 2(y2/y0) Phi1(y0/y1) Phi1(y2/y0) Phi1(z1/z0) Phi1(z2/z0)
    //   prod_i Phi1(r/x_i y0 z0) Phi1(r/x_i y2 z1) Phi1(r/x_i y2 z2),
    // r = sqrt(x0 x1 y1 y2 z1 z2); character has T-pair {y1,y2}, U-pair {z1,z2}
    let r = build(&[(0, 3), (1, 3), (3, 3), (4, 3), (6, 3), (7, 3)]);
    let two_both: Vec<usize> = big
        .kinds
        .iter()
        .enumerate()
        .filter(|(_, k)| matches!(k, Kind::Two { i: _, j: 1, k: 1 }))
        .map(|(i, _)| i)
        .collect();
    ensure!(two_both.len() == 2, "expected two 2-dim chars with pairs {{1,2}},{{1,2}}");
    let mut matched = 0;
    for beta in 0..2 {
        let lit = Template {
            coef: 2,
            pref: Some(fac(&[(4, 6), (2, -6)])),
            facs: vec![
                fac(&[(2, 6), (3, -6)]),
                fac(&[(4, 6), (2, -6)]),
                fac(&[(6, 6), (5, -6)]),
                fac(&[(7, 6), (5, -6)]),
                Fac { nu: sub(&r, &build(&[(0, 6), (2, 6), (5, 6)])), shift: 6 * beta },
                Fac { nu: sub(&r, &build(&[(0, 6), (4, 6), (6, 6)])), shift: 6 * beta },
                Fac { nu: sub(&r, &build(&[(0, 6), (4, 6), (7, 6)])), shift: 6 * beta },
                Fac { nu: sub(&r, &build(&[(1, 6), (2, 6), (5, 6)])), shift: 6 * beta },
                Fac { nu: sub(&r, &build(&[(1, 6), (4, 6), (6, 6)])), shift: 6 * beta },
                Fac { nu: sub(&r, &build(&[(1, 6), (4, 6), (7, 6)])), shift: 6 * beta },
            ],
        };
        let s = to_schur(&lit)?;
        // exactly one branch matches each of the two i-twists
        matched += two_both.iter().filter(|&&ci| equivalent(&s, &rows[ci])).count();
    }
    ensure!(matched == 2, "2-dim seed transcription mismatch: {matched} matches");

    // 3 Phi1(x1/x0) prod_{j,k} Phi1(x0 y_j z_k / r3), r3 = (x0^2 x1 prod y prod z)^(1/3)
    let r3 = three_radical(0);
    let three_i0: Vec<usize> = big
        .kinds
        .iter()
        .enumerate()
        .filter(|(ci, k)| matches!(k, Kind::Three { .. }) && row_has_x_role_0(&rows[*ci]))
        .map(|(i, _)| i)
        .collect();
    ensure!(three_i0.len() == 3, "expected three 3-dim chars bound to x-role 0");
    let mut matched3 = 0;
    for mhat in 0..3 {
        let mut facs = vec![fac(&[(1, 6), (0, -6)])];
        for j in [2usize, 3, 4] {
            for k in [5usize, 6, 7] {
                facs.push(Fac {
                    nu: sub(&build(&[(0, 6), (j, 6), (k, 6)]), &r3),
                    shift: -4 * mhat,
                });
            }
        }
        let lit = Template { coef: 3, pref: None, facs };
        let s = to_schur(&lit)?;
        matched3 += three_i0.iter().filter(|&&ci| equivalent(&s, &rows[ci])).count();
    }
    ensure!(matched3 == 3, "3-dim seed transcription mismatch: {matched3} matches");
    Ok(())
}

fn row_has_x_role_0(row: &FactoredSchur) -> bool {
    // the i = 0 rows contain the factor built on x1/x0; the monomial with
    // support only on the x slots pins the role
    row.factors
        .iter()
        .any(|f| f.m[2..].iter().all(|&v| v == 0) && f.m[0] < 0)
}
