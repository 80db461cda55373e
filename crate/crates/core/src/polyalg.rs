//! Laurent polynomials over cyclotomic fields and K-cyclotomic polynomials.
//!
//! A K-cyclotomic polynomial is the minimal polynomial over K = Q(zeta_m)
//! of a root of unity; products of their values at parameter monomials are
//! the essential form in which Schur elements are stored. Phi_1 = t - 1 is
//! rejected at construction, which makes value_at_one != 0 a type
//! invariant.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::monlattice::{self, ExpVec};
use crate::numfield::{cyclotomic_poly_z, galois_orbit, lcm_u32, CycNum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyAlgError {
    #[error("the orbit polynomial is t - 1, which never occurs in an essential factorization")]
    IsPhiOne,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("zero polynomial has no valuation")]
    ZeroPolynomial,
}

type Result<T> = std::result::Result<T, PolyAlgError>;

// ---------------------------------------------------------------------------
// multivariate Laurent polynomials

/// Sparse Laurent polynomial in the parameter variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<ExpVec, CycNum>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(n_vars: usize, c: CycNum) -> Self {
        LaurentPoly::from_term(vec![0; n_vars], c)
    }

    pub fn from_term(exp: ExpVec, c: CycNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &CycNum)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.terms.clone();
        for (e, c) in &rhs.terms {
            match out.remove(e) {
                None => {
                    out.insert(e.clone(), c.clone());
                }
                Some(prev) => {
                    let s = prev.try_add(c).expect("coefficient addition");
                    if !s.is_zero() {
                        out.insert(e.clone(), s);
                    }
                }
            }
        }
        LaurentPoly { terms: out }
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out: BTreeMap<ExpVec, CycNum> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: ExpVec = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca.try_mul(cb).expect("coefficient multiplication");
                match out.remove(&e) {
                    None => {
                        if !c.is_zero() {
                            out.insert(e, c);
                        }
                    }
                    Some(prev) => {
                        let s = prev.try_add(&c).expect("coefficient addition");
                        if !s.is_zero() {
                            out.insert(e, s);
                        }
                    }
                }
            }
        }
        LaurentPoly { terms: out }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpKind {
    Add,
    Mul,
}

pub fn lp_arith(a: &LaurentPoly, b: &LaurentPoly, kind: LpKind) -> LaurentPoly {
    match kind {
        LpKind::Add => a.add(b),
        LpKind::Mul => a.mul(b),
    }
}

// ---------------------------------------------------------------------------
// univariate Laurent polynomials in y

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniLaurent {
    terms: BTreeMap<i64, CycNum>,
}

impl UniLaurent {
    pub fn zero() -> Self {
        UniLaurent::default()
    }

    pub fn from_term(exp: i64, c: CycNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        UniLaurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: i64) -> CycNum {
        self.terms.get(&exp).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn add(&self, rhs: &UniLaurent) -> UniLaurent {
        let mut out = self.terms.clone();
        for (&e, c) in &rhs.terms {
            match out.remove(&e) {
                None => {
                    out.insert(e, c.clone());
                }
                Some(prev) => {
                    let s = prev.try_add(c).expect("coefficient addition");
                    if !s.is_zero() {
                        out.insert(e, s);
                    }
                }
            }
        }
        UniLaurent { terms: out }
    }

    pub fn mul(&self, rhs: &UniLaurent) -> UniLaurent {
        let mut out: BTreeMap<i64, CycNum> = BTreeMap::new();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                let e = ea + eb;
                let c = ca.try_mul(cb).expect("coefficient multiplication");
                match out.remove(&e) {
                    None => {
                        if !c.is_zero() {
                            out.insert(e, c);
                        }
                    }
                    Some(prev) => {
                        let s = prev.try_add(&c).expect("coefficient addition");
                        if !s.is_zero() {
                            out.insert(e, s);
                        }
                    }
                }
            }
        }
        UniLaurent { terms: out }
    }

    pub fn scale(&self, c: &CycNum) -> UniLaurent {
        if c.is_zero() {
            return UniLaurent::zero();
        }
        UniLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, v)| (e, v.try_mul(c).expect("coefficient multiplication")))
                .collect(),
        }
    }
}

impl fmt::Display for UniLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*y")?,
                _ => write!(f, "({c})*y^{e}")?,
            }
        }
        Ok(())
    }
}

/// The exponent M·n of the image of the monomial v^M under v_j -> y^(n_j).
pub fn specialize_uni(m: &ExpVec, n: &ExpVec) -> Result<i64> {
    monlattice::dot(m, n).map_err(|_| PolyAlgError::LengthMismatch(m.len(), n.len()))
}

/// (valuation, degree) in y.
pub fn uni_val_deg(f: &UniLaurent) -> Result<(i64, i64)> {
    if f.is_zero() {
        return Err(PolyAlgError::ZeroPolynomial);
    }
    let min = *f.terms.keys().next().unwrap();
    let max = *f.terms.keys().next_back().unwrap();
    Ok((min, max))
}

/// Applies v_j -> y^(n_j) to every term.
pub fn specialize_laurent(p: &LaurentPoly, n: &ExpVec) -> Result<UniLaurent> {
    let mut out = UniLaurent::zero();
    for (e, c) in &p.terms {
        let k = specialize_uni(e, n)?;
        out = out.add(&UniLaurent::from_term(k, c.clone()));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials

/// Coefficients of Phi_d, ascending, by the divide-out recursion
/// x^d - 1 = prod over e | d of Phi_e.
pub fn cyclotomic_poly(d: u32) -> Vec<BigInt> {
    cyclotomic_poly_z(d)
}

/// Minimal polynomial over K = Q(zeta_m) of the root of unity zeta_d^k,
/// expanded and monic, with its value at 1. Never Phi_1.
#[derive(Debug, Clone)]
pub struct KCycPoly {
    /// order of the root after primitivity reduction
    pub root_order: u32,
    /// least representative of the Galois orbit of the exponent
    pub root_exp: u32,
    pub conductor_k: u32,
    /// ascending, monic, coefficients at conductor_k
    pub coeffs: Vec<CycNum>,
    pub value_at_one: CycNum,
}

impl PartialEq for KCycPoly {
    fn eq(&self, other: &Self) -> bool {
        self.root_order == other.root_order
            && self.root_exp == other.root_exp
            && self.conductor_k == other.conductor_k
    }
}
impl Eq for KCycPoly {}

impl PartialOrd for KCycPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for KCycPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.root_order, self.root_exp, self.conductor_k).cmp(&(
            other.root_order,
            other.root_exp,
            other.conductor_k,
        ))
    }
}

impl fmt::Display for KCycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Psi({},{};K=Q(zeta_{}))", self.root_order, self.root_exp, self.conductor_k)
    }
}

pub fn k_cyc_poly(d: u32, k: i64, m: u32) -> Result<KCycPoly> {
    assert!(d >= 1 && m >= 1);
    let k = k.rem_euclid(d as i64) as u32;
    // reduce the root to primitive order
    let g = num_integer::Integer::gcd(&(k as u64), &(d as u64)) as u32;
    let (d, k) = if k == 0 { (1, 0) } else { (d / g, k / g) };
    if d == 1 {
        return Err(PolyAlgError::IsPhiOne);
    }
    let orbit = galois_orbit(d, k as i64, m);
    let l = lcm_u32(d, m) as u32;
    // expand prod (t - zeta_d^j) at conductor l, then push down to m
    let mut coeffs: Vec<CycNum> = vec![CycNum::one().at_order(l).unwrap()];
    for &j in &orbit {
        let root = CycNum::root_of_unity(d, j as i64).at_order(l).unwrap();
        let mut next: Vec<CycNum> = vec![CycNum::zero().at_order(l).unwrap(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].try_add(c).unwrap();
            let s = c.try_mul(&root).unwrap();
            next[i] = next[i].try_sub(&s).unwrap();
        }
        coeffs = next;
    }
    let coeffs: Vec<CycNum> = coeffs
        .into_iter()
        .map(|c| c.at_order(m).expect("minimal polynomial coefficients lie in K"))
        .collect();
    let mut value_at_one = CycNum::zero();
    for c in &coeffs {
        value_at_one = value_at_one.try_add(c).unwrap();
    }
    assert!(!value_at_one.is_zero(), "only Phi_1 vanishes at 1");
    Ok(KCycPoly {
        root_order: d,
        root_exp: orbit[0],
        conductor_k: m,
        coeffs,
        value_at_one,
    })
}

impl KCycPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True iff the explicit coefficient list agrees with this polynomial.
    pub fn matches_coeffs(&self, coeffs: &[CycNum]) -> bool {
        self.coeffs.len() == coeffs.len()
            && self.coeffs.iter().zip(coeffs).all(|(a, b)| a == b)
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        let mut acc = CycNum::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(x).unwrap().try_add(c).unwrap();
        }
        acc
    }
}

/// Exact substitution of the monomial v^M for t.
pub fn eval_at_monomial(p: &KCycPoly, m: &ExpVec) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (i, c) in p.coeffs.iter().enumerate() {
        let e: ExpVec = m.iter().map(|&x| x * i as i64).collect();
        out = out.add(&LaurentPoly::from_term(e, c.clone()));
    }
    out
}

/// Substitution t -> y^e into the coefficient list.
pub fn eval_at_power(p: &KCycPoly, e: i64) -> UniLaurent {
    let mut out = UniLaurent::zero();
    for (i, c) in p.coeffs.iter().enumerate() {
        out = out.add(&UniLaurent::from_term(e * i as i64, c.clone()));
    }
    out
}

/// The K-cyclotomic factors of Phi_d over Q(zeta_m), sorted.
pub fn k_cyc_factors_of_phi(d: u32, m: u32) -> Result<Vec<KCycPoly>> {
    if d == 1 {
        return Err(PolyAlgError::IsPhiOne);
    }
    let mut seen: Vec<u32> = Vec::new();
    let mut out = Vec::new();
    for k in 0..d {
        if num_integer::Integer::gcd(&(k as u64), &(d as u64)) != 1 {
            continue;
        }
        if seen.contains(&k) {
            continue;
        }
        let p = k_cyc_poly(d, k as i64, m)?;
        seen.extend(galois_orbit(d, k as i64, m));
        out.push(p);
    }
    out.sort();
    Ok(out)
}

/// Groups a set of root-of-unity exponents over zeta_n into the
/// K-cyclotomic polynomials they are roots of, over Q(zeta_m). The set
/// must be a disjoint union of full Galois orbits (asserted), which is the
/// case exactly when the polynomial with those roots has coefficients in K.
pub fn group_roots(n: u32, exps: &[u32], m: u32) -> Result<Vec<KCycPoly>> {
    let mut covered: Vec<u32> = Vec::new(); // exponents mod n
    let mut out: Vec<KCycPoly> = Vec::new();
    for &e in exps {
        let e = e % n;
        if covered.contains(&e) {
            continue;
        }
        let ge = num_integer::Integer::gcd(&(e as u64), &(n as u64)) as u32;
        let (de, ke) = if e == 0 { (1, 0) } else { (n / ge, e / ge) };
        if de == 1 {
            return Err(PolyAlgError::IsPhiOne);
        }
        let p = k_cyc_poly(de, ke as i64, m)?;
        for j in galois_orbit(de, ke as i64, m) {
            covered.push(j * (n / de));
        }
        out.push(p);
    }
    let mut a = covered;
    a.sort_unstable();
    let mut b: Vec<u32> = exps.iter().map(|&e| e % n).collect();
    b.sort_unstable();
    assert_eq!(a, b, "root set not Galois-stable over Q(zeta_{m})");
    out.sort();
    Ok(out)
}

/// Factors t^g - zeta_d^k into K-cyclotomic polynomials over Q(zeta_m).
/// The root set {zeta_(dg)^(k + d i)} must be Galois-stable over K, which
/// holds whenever zeta_d^k lies in K; the reassembled product is asserted.
pub fn factor_power_minus_root(g: u32, d: u32, k: i64, m: u32) -> Result<Vec<KCycPoly>> {
    assert!(g >= 1 && d >= 1);
    let k = k.rem_euclid(d as i64) as u32;
    let n = d * g;
    let root_exps: Vec<u32> = (0..g).map(|i| (k + d * i) % n).collect();
    let out = group_roots(n, &root_exps, m)?;
    // reassemble and compare against t^g - zeta_d^k
    let mut prod: Vec<CycNum> = vec![CycNum::one()];
    for p in &out {
        let mut next = vec![CycNum::zero(); prod.len() + p.coeffs.len() - 1];
        for (i, a) in prod.iter().enumerate() {
            for (j, b) in p.coeffs.iter().enumerate() {
                let t = a.try_mul(b).unwrap();
                next[i + j] = next[i + j].try_add(&t).unwrap();
            }
        }
        prod = next;
    }
    assert_eq!(prod.len(), g as usize + 1);
    let minus_root = CycNum::root_of_unity(d, k as i64).neg();
    for (i, c) in prod.iter().enumerate() {
        let expect = if i == g as usize {
            CycNum::one()
        } else if i == 0 {
            minus_root.clone()
        } else {
            CycNum::zero()
        };
        assert!(*c == expect, "factor product mismatch at degree {i}");
    }
    Ok(out)
}
