//! Integer exponent lattices of parameter monomials.
//!
//! A monomial in the algebra parameters is recorded only through its
//! exponent vector. This module provides the primitive/gcd normal form,
//! the surjective lattice map associated with a primitive monomial (whose
//! kernel is exactly the line spanned by it), and hyperplanes of exponent
//! vectors in canonical form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponent vector of a Laurent monomial, one slot per parameter variable
/// in the group pack's declared order.
pub type ExpVec = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonLatticeError {
    #[error("zero exponent vector")]
    ZeroVector,
    #[error("exponent vector is not primitive (gcd of entries is not 1)")]
    NotPrimitive,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("orbit starting at slot {0} has nonzero degree {1}")]
    NonZeroOrbitDegree(usize, i64),
}

type Result<T> = std::result::Result<T, MonLatticeError>;

pub fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    if a.len() != b.len() {
        return Err(MonLatticeError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).map(|(x, y)| x * y).sum())
}

pub fn gcd_of(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// (M°, d): the primitive direction and the positive gcd, M° = a / d.
/// The direction is not sign-normalized.
pub fn normalize(a: &ExpVec) -> Result<(ExpVec, i64)> {
    let d = gcd_of(a);
    if d == 0 {
        return Err(MonLatticeError::ZeroVector);
    }
    Ok((a.iter().map(|&x| x / d).collect(), d))
}

/// k such that N = k·M, if any.
pub fn monomial_power(m: &ExpVec, n: &ExpVec) -> Option<i64> {
    assert!(m.iter().any(|&x| x != 0), "monomial_power requires M != 0");
    if m.len() != n.len() {
        return None;
    }
    let i = m.iter().position(|&x| x != 0).unwrap();
    if n[i] % m[i] != 0 {
        return None;
    }
    let k = n[i] / m[i];
    if m.iter().zip(n).all(|(&x, &y)| k * x == y) {
        Some(k)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// associated lattice map

/// A surjective map Z^(m+1) -> Z^m whose kernel is exactly Z·kernel_gen.
/// Column j of `matrix` is the image of the j-th parameter variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    pub matrix: Vec<Vec<i64>>,
    pub kernel_gen: ExpVec,
}

// left-fold extended gcd: g >= 0 and xs·v = g
fn fold_bezout(v: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut xs: Vec<i64> = Vec::with_capacity(v.len());
    for &e in v {
        let (g2, x, y) = ext_gcd(g, e);
        for c in xs.iter_mut() {
            *c *= x;
        }
        xs.push(y);
        g = g2;
    }
    (g, xs)
}

// classical Euclid with truncated division; on (5, -3) this yields the
// coefficients (-1, -2) used by the worked example
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let q = a / b;
    let (g, x, y) = ext_gcd(b, a - q * b);
    (g, y, x - y * q)
}

/// Deterministic construction: Bezout u with u·a = 1 by left-fold extended
/// gcd in index order, projection y -> y - (u·y)a onto the complement of
/// Z·a, complement basis by integer row reduction of u with the first
/// nonzero entry as pivot.
pub fn associated_morphism(a: &ExpVec) -> Result<LatticeMap> {
    let (g, u) = fold_bezout(a);
    if g != 1 {
        return Err(MonLatticeError::NotPrimitive);
    }
    let n = a.len(); // m + 1 slots
    debug_assert_eq!(dot(&u, a)?, 1);

    // Row-reduce the column u alongside an identity tracking matrix; the
    // rows whose u-entry vanishes form a basis of {y : u·y = 0}.
    let mut w: Vec<i64> = u.clone();
    let mut t: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let p = w.iter().position(|&x| x != 0).expect("u is nonzero");
    for i in 0..n {
        if i == p || w[i] == 0 {
            continue;
        }
        loop {
            let q = w[i] / w[p];
            w[i] -= q * w[p];
            for j in 0..n {
                let s = q * t[p][j];
                t[i][j] -= s;
            }
            if w[i] == 0 {
                break;
            }
            w.swap(i, p);
            t.swap(i, p);
        }
    }
    assert_eq!(w[p].abs(), 1, "gcd(u) = 1 since u·a = 1");
    let basis: Vec<&Vec<i64>> = (0..n).filter(|&i| i != p).map(|i| &t[i]).collect();

    // Express each projected unit vector e_j - u_j·a in that basis; the
    // solve is exact because the basis spans the projection's image.
    let mut matrix = vec![vec![0i64; n]; n - 1];
    for j in 0..n {
        let target: Vec<i64> = (0..n)
            .map(|r| i64::from(r == j) - u[j] * a[r])
            .collect();
        let coords = solve_exact(&basis, &target);
        for (r, c) in coords.into_iter().enumerate() {
            matrix[r][j] = c;
        }
    }
    let map = LatticeMap { matrix, kernel_gen: a.clone() };
    debug_assert!(verify_associated(&map));
    Ok(map)
}

// Solve sum_i x_i basis_i = target exactly over the integers.
fn solve_exact(basis: &[&Vec<i64>], target: &[i64]) -> Vec<i64> {
    let m = basis.len();
    let n = target.len();
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    // n x (m+1) augmented system over Q
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| big(b[r])).collect();
            row.push(big(target[r]));
            row
        })
        .collect();
    let mut piv: Vec<(usize, usize)> = Vec::new();
    let mut r0 = 0;
    for c in 0..m {
        let Some(pr) = (r0..n).find(|&r| !aug[r][c].is_zero()) else { continue };
        aug.swap(r0, pr);
        let inv = aug[r0][c].recip();
        for v in aug[r0][c..].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != r0 && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for c2 in c..=m {
                    let s = &f * &aug[r0][c2];
                    aug[r][c2] -= s;
                }
            }
        }
        piv.push((r0, c));
        r0 += 1;
    }
    for r in r0..n {
        assert!(aug[r][m].is_zero(), "target outside basis span");
    }
    let mut out = vec![0i64; m];
    for &(r, c) in &piv {
        let v = &aug[r][m];
        assert!(v.denom().is_one(), "non-integer coordinate");
        out[c] = i64::try_from(v.numer().clone()).expect("coordinate fits in i64");
    }
    out
}

/// True iff matrix·kernel_gen = 0, the matrix is surjective (gcd of maximal
/// minors 1) and its kernel is exactly Z·kernel_gen, checked by exact row
/// reduction.
pub fn verify_associated(map: &LatticeMap) -> bool {
    let a = &map.kernel_gen;
    let n = a.len();
    if gcd_of(a) != 1 {
        return false;
    }
    if map.matrix.len() + 1 != n || map.matrix.iter().any(|r| r.len() != n) {
        return false;
    }
    if map.matrix.iter().any(|r| dot(r, a).unwrap() != 0) {
        return false;
    }
    if !is_surjective(&map.matrix) {
        return false;
    }
    // rational kernel must be one-dimensional; together with M·a = 0 and
    // primitivity of a the integer kernel is then exactly Z·a
    rational_rank(&map.matrix) == n - 1
}

/// gcd of all k×k minors is 1, for a k×n matrix with k <= n.
pub fn is_surjective(matrix: &[Vec<i64>]) -> bool {
    let k = matrix.len();
    let n = matrix[0].len();
    assert!(k <= n);
    let mut cols: Vec<usize> = (0..k).collect();
    let mut g = BigInt::zero();
    loop {
        let minor: Vec<Vec<BigInt>> = matrix
            .iter()
            .map(|row| cols.iter().map(|&c| BigInt::from(row[c])).collect())
            .collect();
        g = g.gcd(&det_bigint(minor));
        if g.is_one() {
            return true;
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return g.is_one();
            }
            i -= 1;
            if cols[i] != i + n - k {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    // fraction-free Bareiss elimination
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n - 1 {
        if m[c][c].is_zero() {
            let Some(pr) = (c + 1..n).find(|&r| !m[r][c].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(c, pr);
            sign = -sign;
        }
        for r in c + 1..n {
            for c2 in c + 1..n {
                let v = (&m[r][c2] * &m[c][c] - &m[r][c] * &m[c][c2]) / &prev;
                m[r][c2] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[c][c].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

fn rational_rank(matrix: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, pr);
        let inv = m[rank][c].recip();
        for v in m[rank][c..].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for c2 in c..cols {
                    let s = &f * &m[rank][c2];
                    m[r][c2] -= s;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Composition g ∘ f on the matrix level.
pub fn compose(g: &[Vec<i64>], f: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = g.len();
    let inner = f.len();
    let cols = f[0].len();
    assert!(g.iter().all(|r| r.len() == inner));
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).map(|k| g[i][k] * f[k][j]).sum())
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// hyperplanes

/// Integral hyperplane of specialization exponents, in canonical form:
/// gcd of coefficients 1, first nonzero coefficient positive, coefficient
/// sum over each orbit's slots zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub coeffs: ExpVec,
}

/// Slot counts per orbit of reflecting hyperplanes, in pack order.
pub type OrbitLayout = Vec<usize>;

/// Sum of the entries over each orbit's slots.
pub fn orbit_sums(v: &[i64], layout: &OrbitLayout) -> Vec<i64> {
    assert_eq!(layout.iter().sum::<usize>(), v.len(), "layout covers all slots");
    let mut out = Vec::with_capacity(layout.len());
    let mut start = 0;
    for &e in layout {
        out.push(v[start..start + e].iter().sum());
        start += e;
    }
    out
}

pub fn canonicalize_hyperplane(a: &ExpVec, layout: &OrbitLayout) -> Result<Hyperplane> {
    assert_eq!(layout.iter().sum::<usize>(), a.len(), "layout covers all slots");
    let mut start = 0;
    for &e in layout {
        let s: i64 = a[start..start + e].iter().sum();
        if s != 0 {
            return Err(MonLatticeError::NonZeroOrbitDegree(start, s));
        }
        start += e;
    }
    let (mut v, _) = normalize(a)?;
    let lead = v.iter().find(|&&x| x != 0).copied().unwrap();
    if lead < 0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
    Ok(Hyperplane { coeffs: v })
}

pub fn hyperplane_contains(h: &Hyperplane, n: &ExpVec) -> Result<bool> {
    Ok(dot(&h.coeffs, n)? == 0)
}

impl Hyperplane {
    /// Renders the defining equation with the given slot names, e.g.
    /// coefficients (1, -2, 1) with slots c_0, c_1, c_2 print as
    /// "c_0-2c_1+c_2=0".
    pub fn display(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.coeffs.len());
        let mut out = String::new();
        for (c, name) in self.coeffs.iter().zip(names) {
            match *c {
                0 => continue,
                1 => {
                    if !out.is_empty() {
                        out.push('+');
                    }
                }
                -1 => out.push('-'),
                c if c > 0 => {
                    if !out.is_empty() {
                        out.push('+');
                    }
                    out.push_str(&c.to_string());
                }
                c => out.push_str(&c.to_string()),
            }
            out.push_str(name);
        }
        out.push_str("=0");
        out
    }
}
