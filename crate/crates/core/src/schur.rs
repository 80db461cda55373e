//! Schur elements in essential form: a scalar, a degree-0 monomial, and a
//! product of K-cyclotomic polynomials evaluated at degree-0 monomials.
//! Supports p-essential monomial extraction, cyclotomic specialization to a
//! single variable y, the a/A functions, bad-prime tests, and derivation of
//! subgroup Schur data from a parent group via Clifford theory.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::monlattice::{
    canonicalize_hyperplane, dot, gcd_of, normalize, orbit_sums, ExpVec, Hyperplane,
    MonLatticeError, OrbitLayout,
};
use crate::numfield::{galois_orbit, in_prime_ideal, lcm_u32, CycNum, NumFieldError, PrimeIdeal};
use crate::polyalg::{eval_at_power, group_roots, k_cyc_poly, KCycPoly, PolyAlgError, UniLaurent};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchurError {
    #[error("a factor specialized to zero; the data is not essential for this map")]
    NonEssentialCollapse,
    #[error(transparent)]
    NumField(#[from] NumFieldError),
    #[error(transparent)]
    MonLattice(#[from] MonLatticeError),
    #[error(transparent)]
    PolyAlg(#[from] PolyAlgError),
}

type Result<T> = std::result::Result<T, SchurError>;

/// One factor Psi(v^M)^mult of an essential form.
#[derive(Debug, Clone)]
pub struct SchurFactor {
    pub psi: KCycPoly,
    /// primitive exponent vector of degree 0 on every orbit
    pub m: ExpVec,
    pub mult: u32,
}

/// xi * v^n0 * prod Psi(v^M)^mult. The factorization is unique; xi only up
/// to units, see `equivalent`.
#[derive(Debug, Clone)]
pub struct FactoredSchur {
    pub xi: CycNum,
    pub n0: ExpVec,
    pub factors: Vec<SchurFactor>,
}

/// Checks every structural invariant and returns all violations; an empty
/// list means the element is well formed over the given orbit layout.
pub fn validate_schur(s: &FactoredSchur, layout: &OrbitLayout) -> Vec<String> {
    let mut out = Vec::new();
    let slots: usize = layout.iter().sum();
    if s.xi.is_zero() {
        out.push("xi is zero".to_string());
    } else if !s.xi.is_integral() {
        out.push("xi is not integral".to_string());
    }
    if s.n0.len() != slots {
        out.push(format!("n0 has length {} but layout covers {}", s.n0.len(), slots));
    } else {
        for (o, d) in orbit_sums(&s.n0, layout).iter().enumerate() {
            if *d != 0 {
                out.push(format!("n0 has degree {d} on orbit {o}"));
            }
        }
    }
    for (i, f) in s.factors.iter().enumerate() {
        if f.m.len() != slots {
            out.push(format!("factor {i}: monomial length {} vs {slots}", f.m.len()));
            continue;
        }
        match gcd_of(&f.m) {
            0 => out.push(format!("factor {i}: zero monomial")),
            1 => {
                for (o, d) in orbit_sums(&f.m, layout).iter().enumerate() {
                    if *d != 0 {
                        out.push(format!("factor {i}: monomial has degree {d} on orbit {o}"));
                    }
                }
            }
            _ => out.push(format!("factor {i}: gcd != 1")),
        }
        if f.psi.root_order < 2 {
            out.push(format!("factor {i}: Phi_1 forbidden"));
            continue;
        }
        if f.psi.degree() < 1 || !f.psi.coeffs.last().unwrap().is_one() {
            out.push(format!("factor {i}: psi is not monic of positive degree"));
        }
        if f.psi.value_at_one.is_zero()
            || f.psi.eval(&CycNum::one()) != f.psi.value_at_one
        {
            out.push(format!("factor {i}: value at 1 is wrong"));
        }
        if f.mult == 0 {
            out.push(format!("factor {i}: multiplicity 0"));
        }
    }
    out
}

/// Soft checks on authored data: reported, never rejected. Genuine minimal
/// polynomials of roots of unity always pass.
pub fn advisory_notes(s: &FactoredSchur) -> Vec<String> {
    let mut out = Vec::new();
    for (i, f) in s.factors.iter().enumerate() {
        let c0 = &f.psi.coeffs[0];
        let unit = c0.is_integral()
            && c0.try_inv().map(|v| v.is_integral()).unwrap_or(false);
        if !unit {
            out.push(format!("factor {i}: constant term of psi is not a unit"));
        }
    }
    out
}

/// xi * prod Psi(1)^mult; monomials evaluate to 1. Equals |W|/chi(1) for
/// group data.
pub fn value_at_one(s: &FactoredSchur) -> CycNum {
    let mut acc = s.xi.clone();
    for f in &s.factors {
        let v = f.psi.value_at_one.pow(f.mult as i64).unwrap();
        acc = acc.try_mul(&v).unwrap();
    }
    acc
}

/// Hyperplanes of the factors whose Psi(1) lies in P, in canonical form.
pub fn essential_monomials(
    s: &FactoredSchur,
    p: &PrimeIdeal,
    layout: &OrbitLayout,
) -> Result<BTreeSet<Hyperplane>> {
    let mut out = BTreeSet::new();
    for f in &s.factors {
        if in_prime_ideal(&f.psi.value_at_one, p)? {
            out.insert(canonicalize_hyperplane(&f.m, layout)?);
        }
    }
    Ok(out)
}

/// The image of an essential form under v_s -> y^(n_s), kept factored:
/// psi_coeff * y^y_exp * prod (monic cyclotomic content). The expansion
/// behind `a`/`A` is never built here; see `expand`.
#[derive(Debug, Clone)]
pub struct SpecializedSchur {
    /// scalar of the factored form; the lowest coefficient up to a unit
    pub psi_coeff: CycNum,
    /// valuation in y
    pub y_exp: i64,
    pub mu_order: u32,
    pub xi: CycNum,
    /// n0 . n
    pub n_dot: i64,
    /// (psi, M . n, mult) for every factor, including collapsed ones
    pub factors: Vec<(KCycPoly, i64, u32)>,
}

pub fn specialize(s: &FactoredSchur, n: &ExpVec, mu_order: u32) -> Result<SpecializedSchur> {
    assert!(mu_order >= 1);
    let n_dot = dot(&s.n0, n)?;
    let mut psi_coeff = s.xi.clone();
    let mut y_exp = n_dot;
    let mut factors = Vec::with_capacity(s.factors.len());
    for f in &s.factors {
        let e = dot(&f.m, n)?;
        if e == 0 {
            let v = f.psi.value_at_one.pow(f.mult as i64)?;
            psi_coeff = psi_coeff.try_mul(&v)?;
        } else if e < 0 {
            // Psi(y^e) = c0 * y^(e deg) * (monic content in y^|e|)
            let c0 = f.psi.coeffs[0].pow(f.mult as i64)?;
            psi_coeff = psi_coeff.try_mul(&c0)?;
            y_exp += f.mult as i64 * e * f.psi.degree() as i64;
        }
        factors.push((f.psi.clone(), e, f.mult));
    }
    Ok(SpecializedSchur { psi_coeff, y_exp, mu_order, xi: s.xi.clone(), n_dot, factors })
}

impl SpecializedSchur {
    fn deg_y(&self) -> i64 {
        let spread: i64 = self
            .factors
            .iter()
            .filter(|(_, e, _)| *e != 0)
            .map(|(p, e, mult)| *mult as i64 * e.abs() * p.degree() as i64)
            .sum();
        self.y_exp + spread
    }

    /// valuation / |mu(K)|
    pub fn a(&self) -> BigRational {
        BigRational::new(BigInt::from(self.y_exp), BigInt::from(self.mu_order))
    }

    /// degree / |mu(K)|
    pub fn big_a(&self) -> BigRational {
        BigRational::new(BigInt::from(self.deg_y()), BigInt::from(self.mu_order))
    }

    pub fn a_plus_big_a(&self) -> BigRational {
        self.a() + self.big_a()
    }

    /// Multiset of the K-cyclotomic polynomials in y whose product is the
    /// monic content. Computed on demand; the root orders grow with |M . n|
    /// and are not needed by the block algorithms.
    pub fn cyc_factors(&self) -> Result<Vec<(KCycPoly, u32)>> {
        let mut acc: BTreeMap<KCycPoly, u32> = BTreeMap::new();
        for (psi, e, mult) in &self.factors {
            if *e == 0 {
                continue;
            }
            let d = psi.root_order;
            let g = e.unsigned_abs() as u32;
            // roots of y^g = zeta_d^j, with j -> -j when the pole flips
            let mut exps = Vec::new();
            for j in galois_orbit(d, psi.root_exp as i64, psi.conductor_k) {
                let jj = if *e > 0 { j } else { (d - j) % d };
                for i in 0..g {
                    exps.push(jj + d * i);
                }
            }
            for p in group_roots(d * g, &exps, psi.conductor_k)? {
                *acc.entry(p).or_insert(0) += mult;
            }
        }
        Ok(acc.into_iter().collect())
    }

    /// Full expansion; test oracle only.
    pub fn expand(&self) -> UniLaurent {
        let mut acc = UniLaurent::from_term(self.n_dot, self.xi.clone());
        for (psi, e, mult) in &self.factors {
            let f = eval_at_power(psi, *e);
            for _ in 0..*mult {
                acc = acc.mul(&f);
            }
        }
        acc
    }
}

/// True iff the coefficient of y^j lies in P. The bad primes of the
/// specialization are the primes for which this holds for some character.
pub fn is_bad_prime(sp: &SpecializedSchur, p: &PrimeIdeal) -> Result<bool> {
    Ok(in_prime_ideal(&sp.psi_coeff, p)?)
}

/// conj(c_e) = c_(v+D-e) for every coefficient, v and D the valuation and
/// degree. Specialized Schur elements of group data satisfy this.
pub fn is_semi_palindromic(f: &UniLaurent) -> bool {
    let terms: Vec<(i64, CycNum)> = f.terms().map(|(e, c)| (*e, c.clone())).collect();
    if terms.is_empty() {
        return true;
    }
    let v = terms.first().unwrap().0;
    let d = terms.last().unwrap().0;
    terms.iter().all(|(e, c)| c.conjugate() == f.coeff(v + d - e))
}

/// Where each parent variable goes under a Clifford specialization: onto a
/// child variable scaled by a root of unity, or onto a bare root of unity.
#[derive(Debug, Clone)]
pub enum SpecSlot {
    Keep { child: usize, zeta: (u32, i64) },
    Kill { zeta: (u32, i64) },
}

impl SpecSlot {
    fn zeta(&self) -> (u32, i64) {
        match self {
            SpecSlot::Keep { zeta, .. } | SpecSlot::Kill { zeta } => *zeta,
        }
    }
}

/// Schur element of a subgroup character from a parent group element:
/// specializes the parent variables per `spec_map`, re-expresses every
/// factor in the surviving variables, and divides by the size of the
/// character's orbit under the acting cyclic group.
pub fn clifford_derive(
    parent: &FactoredSchur,
    spec_map: &[SpecSlot],
    orbit_size: u32,
) -> Result<FactoredSchur> {
    assert!(orbit_size >= 1);
    assert_eq!(spec_map.len(), parent.n0.len(), "one slot per parent variable");
    let child_len = spec_map
        .iter()
        .filter_map(|s| match s {
            SpecSlot::Keep { child, .. } => Some(child + 1),
            SpecSlot::Kill { .. } => None,
        })
        .max()
        .unwrap_or(0);
    // common order for all the scaling roots
    let mut l: u32 = 1;
    for s in spec_map {
        l = lcm_u32(l, s.zeta().0) as u32;
    }
    // zeta^(e . M) as an exponent at order l
    let zeta_exp = |m: &ExpVec| -> i64 {
        let mut acc: i64 = 0;
        for (slot, x) in spec_map.iter().zip(m) {
            let (o, e) = slot.zeta();
            acc += x * e.rem_euclid(o as i64) * (l / o) as i64;
        }
        acc.rem_euclid(l as i64)
    };
    let push_down = |m: &ExpVec| -> ExpVec {
        let mut out = vec![0i64; child_len];
        for (slot, x) in spec_map.iter().zip(m) {
            if let SpecSlot::Keep { child, .. } = slot {
                out[*child] += x;
            }
        }
        out
    };

    let mut xi = parent.xi.try_mul(&CycNum::root_of_unity(l, zeta_exp(&parent.n0)))?;
    let n0 = push_down(&parent.n0);
    let mut factors: BTreeMap<(KCycPoly, ExpVec), u32> = BTreeMap::new();
    for f in &parent.factors {
        let me = zeta_exp(&f.m);
        let md = push_down(&f.m);
        if md.iter().all(|&x| x == 0) {
            // the monomial collapsed; fold Psi(zeta) into xi
            let v = f.psi.eval(&CycNum::root_of_unity(l, me));
            if v.is_zero() {
                return Err(SchurError::NonEssentialCollapse);
            }
            xi = xi.try_mul(&v.pow(f.mult as i64)?)?;
            continue;
        }
        let (m0, g) = normalize(&md)?;
        let g = g as u32;
        // Psi(zeta u^g) = zeta^deg prod_j (u^g - zeta_d^j zeta^-1), u = v^M0
        let deg = f.psi.degree() as i64;
        xi = xi.try_mul(&CycNum::root_of_unity(l, me * deg * f.mult as i64))?;
        let d = f.psi.root_order;
        let big_d = lcm_u32(d, l) as u32;
        let mut exps = Vec::new();
        for j in galois_orbit(d, f.psi.root_exp as i64, f.psi.conductor_k) {
            let r = (j as i64 * (big_d / d) as i64 - me * (big_d / l) as i64)
                .rem_euclid(big_d as i64) as u32;
            for i in 0..g {
                exps.push(r + big_d * i);
            }
        }
        for p in group_roots(big_d * g, &exps, f.psi.conductor_k)? {
            *factors.entry((p, m0.clone())).or_insert(0) += f.mult;
        }
    }
    xi = xi.try_div(&CycNum::from_int(orbit_size as i64))?;
    let factors = factors
        .into_iter()
        .map(|((psi, m), mult)| SchurFactor { psi, m, mult })
        .collect();
    Ok(FactoredSchur { xi, n0, factors })
}

/// Rewrites every factor so the first nonzero entry of its monomial is
/// positive, via Psi(v^M) = c0 v^(deg M) PsiBar(v^-M), then sorts and
/// merges. Exact equality of canonical forms pins everything but xi.
pub fn canonical_form(s: &FactoredSchur) -> FactoredSchur {
    let mut xi = s.xi.clone();
    let mut n0 = s.n0.clone();
    let mut factors: BTreeMap<(KCycPoly, ExpVec), u32> = BTreeMap::new();
    for f in &s.factors {
        let lead = f.m.iter().find(|&&x| x != 0).copied().unwrap_or(0);
        let (psi, m) = if lead < 0 {
            let deg = f.psi.degree() as i64;
            xi = xi.try_mul(&f.psi.coeffs[0].pow(f.mult as i64).unwrap()).unwrap();
            for (t, x) in n0.iter_mut().zip(&f.m) {
                *t += x * deg * f.mult as i64;
            }
            let bar = k_cyc_poly(
                f.psi.root_order,
                -(f.psi.root_exp as i64),
                f.psi.conductor_k,
            )
            .unwrap();
            (bar, f.m.iter().map(|&x| -x).collect::<ExpVec>())
        } else {
            (f.psi.clone(), f.m.clone())
        };
        *factors.entry((psi, m)).or_insert(0) += f.mult;
    }
    let factors = factors
        .into_iter()
        .map(|((psi, m), mult)| SchurFactor { psi, m, mult })
        .collect();
    FactoredSchur { xi, n0, factors }
}

/// Equality up to a unit on xi: canonical forms must agree exactly except
/// that xi may differ by an invertible algebraic integer.
pub fn equivalent(s1: &FactoredSchur, s2: &FactoredSchur) -> bool {
    let a = canonical_form(s1);
    let b = canonical_form(s2);
    if a.n0 != b.n0 || a.factors.len() != b.factors.len() {
        return false;
    }
    for (fa, fb) in a.factors.iter().zip(&b.factors) {
        if fa.psi != fb.psi || fa.m != fb.m || fa.mult != fb.mult {
            return false;
        }
    }
    if b.xi.is_zero() {
        return a.xi.is_zero();
    }
    match a.xi.try_div(&b.xi) {
        Ok(r) => {
            r.is_integral() && r.try_inv().map(|v| v.is_integral()).unwrap_or(false)
        }
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::uni_val_deg;
    use crate::numfield::primes_above;

    fn z(d: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(d, k)
    }

    fn factor(d: u32, k: i64, m: u32, mono: &[i64], mult: u32) -> SchurFactor {
        SchurFactor { psi: k_cyc_poly(d, k, m).unwrap(), m: mono.to_vec(), mult }
    }

    // xi = 3, factors Psi(4,1)(v^(1,-1,0,0,0)) Psi(4,3)(v^(0,0,1,0,-1)),
    // layout (2,3); value at 1 is 3 (1-i)(1+i) = 6
    fn sample() -> FactoredSchur {
        FactoredSchur {
            xi: CycNum::from_int(3),
            n0: vec![0, 0, 0, 0, 0],
            factors: vec![
                factor(4, 1, 12, &[1, -1, 0, 0, 0], 1),
                factor(4, 3, 12, &[0, 0, 1, 0, -1], 1),
            ],
        }
    }

    #[test]
    fn validates_good_and_bad_rows() {
        let layout = vec![2usize, 3];
        assert!(validate_schur(&sample(), &layout).is_empty());

        let mut s = sample();
        s.factors[0].m = vec![2, -2, 0, 0, 0];
        assert!(validate_schur(&s, &layout).iter().any(|v| v.contains("gcd != 1")));

        // a fabricated Phi_1 row
        let mut s = sample();
        s.factors[0].psi = KCycPoly {
            root_order: 1,
            root_exp: 0,
            conductor_k: 12,
            coeffs: vec![CycNum::from_int(-1), CycNum::one()],
            value_at_one: CycNum::zero(),
        };
        assert!(validate_schur(&s, &layout).iter().any(|v| v.contains("Phi_1")));

        let mut s = sample();
        s.xi = CycNum::zero();
        assert!(validate_schur(&s, &layout).iter().any(|v| v.contains("xi is zero")));
        s.xi = CycNum::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(validate_schur(&s, &layout).iter().any(|v| v.contains("not integral")));

        let mut s = sample();
        s.n0 = vec![1, 0, 0, 0, 0];
        assert!(validate_schur(&s, &layout).iter().any(|v| v.contains("n0 has degree")));

        let mut s = sample();
        s.factors[0].m = vec![1, 0, -1, 0, 0];
        assert!(validate_schur(&s, &layout)
            .iter()
            .any(|v| v.contains("monomial has degree")));

        let mut s = sample();
        s.factors[0].mult = 0;
        assert!(validate_schur(&s, &layout).iter().any(|v| v.contains("multiplicity 0")));
    }

    #[test]
    fn advisory_flags_non_unit_constant_term() {
        assert!(advisory_notes(&sample()).is_empty());
        let mut s = sample();
        s.factors[0].psi.coeffs[0] = CycNum::from_int(2);
        let notes = advisory_notes(&s);
        assert_eq!(notes.len(), 1);
        assert!(notes[0].contains("not a unit"));
        // still not a validate violation
        assert!(!validate_schur(&s, &vec![2, 3]).iter().any(|v| v.contains("unit")));
    }

    #[test]
    fn value_at_one_multiplies_out() {
        assert_eq!(value_at_one(&sample()), CycNum::from_int(6));
        let mut s = sample();
        s.factors[0].mult = 2;
        // 3 (1-i)^2 (1+i) = (3-3i) 2i ... = 6 + 6i ... check exactly
        let w = CycNum::from_int(3)
            .try_mul(&CycNum::one().try_sub(&z(4, 1)).unwrap().pow(2).unwrap())
            .unwrap()
            .try_mul(&CycNum::one().try_add(&z(4, 1)).unwrap())
            .unwrap();
        assert_eq!(value_at_one(&s), w);
    }

    #[test]
    fn essential_monomials_split_by_prime() {
        let layout = vec![3usize];
        // values at 1: 1-i and 1+i lie over 2, 1-zeta_3 over 3,
        // 1-zeta_12 and 1-zeta_6 are units
        let s = FactoredSchur {
            xi: CycNum::one(),
            n0: vec![0, 0, 0],
            factors: vec![
                factor(4, 1, 12, &[1, -1, 0], 1),
                factor(4, 3, 12, &[-1, 0, 1], 1),
                factor(3, 1, 12, &[0, 1, -1], 1),
                factor(12, 1, 12, &[2, -1, -1], 1),
                factor(6, 1, 12, &[1, 1, -2], 1),
            ],
        };
        let p2 = &primes_above(2, 12).unwrap()[0];
        let got = essential_monomials(&s, p2, &layout).unwrap();
        let want: BTreeSet<Hyperplane> = [vec![1, -1, 0], vec![1, 0, -1]]
            .into_iter()
            .map(|coeffs| Hyperplane { coeffs })
            .collect();
        assert_eq!(got, want);

        let p3 = &primes_above(3, 12).unwrap()[0];
        let got = essential_monomials(&s, p3, &layout).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got.iter().next().unwrap().coeffs, vec![0, 1, -1]);

        // same answer over every prime above the same p
        for p in primes_above(13, 12).unwrap() {
            assert!(essential_monomials(&s, &p, &layout).unwrap().is_empty());
        }
    }

    #[test]
    fn constant_specialization_is_the_group_algebra_point() {
        for n in [vec![1i64, 1, 1, 1, 1], vec![5, 5, 2, 2, 2]] {
            let sp = specialize(&sample(), &n, 12).unwrap();
            assert_eq!(sp.psi_coeff, CycNum::from_int(6));
            assert_eq!(sp.y_exp, 0);
            assert!(sp.a().numer().sign() == num_bigint::Sign::NoSign);
            assert_eq!(sp.a_plus_big_a(), BigRational::from(BigInt::from(0)));
            assert!(sp.cyc_factors().unwrap().is_empty());
            let f = sp.expand();
            assert_eq!(f.coeff(0), CycNum::from_int(6));
            assert_eq!(uni_val_deg(&f).unwrap(), (0, 0));
        }
    }

    #[test]
    fn negative_power_shifts_and_splits() {
        // Psi = t+1 over Q, M . n = -3: y^-3 + 1 = y^-3 (y+1)(y^2-y+1)
        let s = FactoredSchur {
            xi: CycNum::one(),
            n0: vec![0, 0],
            factors: vec![factor(2, 1, 1, &[1, -1], 1)],
        };
        let sp = specialize(&s, &vec![0, 3], 1).unwrap();
        assert_eq!(sp.psi_coeff, CycNum::one());
        assert_eq!(sp.y_exp, -3);
        let cyc = sp.cyc_factors().unwrap();
        let want = vec![
            (k_cyc_poly(2, 1, 1).unwrap(), 1),
            (k_cyc_poly(6, 1, 1).unwrap(), 1),
        ];
        assert_eq!(cyc, want);
        let f = sp.expand();
        let mut oracle = UniLaurent::from_term(-3, CycNum::one());
        oracle = oracle.add(&UniLaurent::from_term(0, CycNum::one()));
        assert_eq!(f.terms().count(), oracle.terms().count());
        for (e, c) in oracle.terms() {
            assert_eq!(f.coeff(*e), c.clone());
        }
        assert_eq!(sp.a(), BigRational::from(BigInt::from(-3)));
        assert_eq!(sp.big_a(), BigRational::from(BigInt::from(0)));

        // positive direction: same content, shifted range
        let sp = specialize(&s, &vec![3, 0], 1).unwrap();
        assert_eq!(sp.y_exp, 0);
        assert_eq!(sp.cyc_factors().unwrap(), want);
        assert_eq!(uni_val_deg(&sp.expand()).unwrap(), (0, 3));
    }

    #[test]
    fn specialization_agrees_with_expansion() {
        let s = FactoredSchur {
            xi: z(3, 1).try_add(&CycNum::one()).unwrap(),
            n0: vec![2, -2, 1, 0, -1],
            factors: vec![
                factor(4, 1, 12, &[1, -1, 0, 0, 0], 2),
                factor(3, 2, 12, &[0, 0, 1, 0, -1], 1),
                factor(8, 1, 12, &[1, -1, 1, -2, 1], 1),
            ],
        };
        let vectors = [
            vec![0i64, 1, 0, 2, -1],
            vec![-3, 1, 4, 0, 1],
            vec![1, 1, 1, 1, 1],
            vec![0, 0, -1, 2, 5],
        ];
        for n in &vectors {
            let sp = specialize(&s, n, 12).unwrap();
            let f = sp.expand();
            let (val, deg) = uni_val_deg(&f).unwrap();
            assert_eq!(sp.y_exp, val);
            assert_eq!(
                sp.big_a(),
                BigRational::new(BigInt::from(deg), BigInt::from(12))
            );
            // psi_coeff y^y_exp prod cyc == full expansion; this also pins
            // psi_coeff, which is the lowest coefficient only up to the
            // (unit) constant terms of the monic content
            let mut g = UniLaurent::from_term(sp.y_exp, sp.psi_coeff.clone());
            for (p, mult) in sp.cyc_factors().unwrap() {
                let q = eval_at_power(&p, 1);
                for _ in 0..mult {
                    g = g.mul(&q);
                }
            }
            assert_eq!(g.terms().count(), f.terms().count());
            for (e, c) in f.terms() {
                assert_eq!(g.coeff(*e), c.clone());
            }
        }
    }

    #[test]
    fn scaling_the_vector_scales_a_plus_big_a() {
        let s = sample();
        let n = vec![0i64, 1, 0, 2, -2];
        let one = specialize(&s, &n, 12).unwrap().a_plus_big_a();
        let n2: ExpVec = n.iter().map(|x| 2 * x).collect();
        let two = specialize(&s, &n2, 12).unwrap().a_plus_big_a();
        assert_eq!(two, BigRational::from(BigInt::from(2)) * one);
    }

    #[test]
    fn bad_primes_follow_the_lowest_coefficient() {
        let s = FactoredSchur {
            xi: CycNum::from_int(24),
            n0: vec![0, 0],
            factors: vec![],
        };
        let sp = specialize(&s, &vec![1, 1], 12).unwrap();
        assert!(is_bad_prime(&sp, &primes_above(2, 12).unwrap()[0]).unwrap());
        assert!(is_bad_prime(&sp, &primes_above(3, 12).unwrap()[0]).unwrap());
        for p in primes_above(5, 12).unwrap() {
            assert!(!is_bad_prime(&sp, &p).unwrap());
        }

        let unit = FactoredSchur { xi: z(12, 7), n0: vec![0, 0], factors: vec![] };
        let sp = specialize(&unit, &vec![1, 1], 12).unwrap();
        for p in [2u64, 3, 5, 7, 13] {
            for ideal in primes_above(p, 12).unwrap() {
                assert!(!is_bad_prime(&sp, &ideal).unwrap());
            }
        }

        let half = FactoredSchur {
            xi: CycNum::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2))),
            n0: vec![0, 0],
            factors: vec![],
        };
        let sp = specialize(&half, &vec![1, 1], 12).unwrap();
        let err = is_bad_prime(&sp, &primes_above(3, 12).unwrap()[0]).unwrap_err();
        assert_eq!(err, SchurError::NumField(NumFieldError::NotIntegral));
    }

    #[test]
    fn semi_palindromic_checker() {
        let poly = |coeffs: &[(i64, CycNum)]| {
            let mut f = UniLaurent::zero();
            for (e, c) in coeffs {
                f = f.add(&UniLaurent::from_term(*e, c.clone()));
            }
            f
        };
        // y^2 - y + 1 and y^2 + y + 1: real palindromes
        assert!(is_semi_palindromic(&poly(&[
            (0, CycNum::one()),
            (1, CycNum::from_int(-1)),
            (2, CycNum::one()),
        ])));
        // y - zeta_3 is not
        assert!(!is_semi_palindromic(&poly(&[(0, z(3, 1).neg()), (1, CycNum::one())])));
        // (y - zeta_3)(y - zeta_3^2) = y^2 + y + 1 is
        assert!(is_semi_palindromic(&poly(&[
            (0, CycNum::one()),
            (1, CycNum::one()),
            (2, CycNum::one()),
        ])));
        // y^-3 + 1 is
        assert!(is_semi_palindromic(&poly(&[(-3, CycNum::one()), (0, CycNum::one())])));
        // y^2 + (zeta_12 + zeta_12^-1) y + 1 has a real middle: still one
        let real = z(12, 1).try_add(&z(12, -1)).unwrap();
        assert!(is_semi_palindromic(&poly(&[
            (0, CycNum::one()),
            (1, real),
            (2, CycNum::one()),
        ])));
        // y + zeta_12 is not
        assert!(!is_semi_palindromic(&poly(&[(0, z(12, 1)), (1, CycNum::one())])));
    }

    #[test]
    fn identity_spec_returns_the_parent() {
        let s = sample();
        let map: Vec<SpecSlot> = (0..5).map(|i| SpecSlot::Keep { child: i, zeta: (1, 0) }).collect();
        let got = clifford_derive(&s, &map, 1).unwrap();
        assert!(equivalent(&got, &s));
        assert_eq!(got.xi, s.xi);
        assert_eq!(got.n0, s.n0);
        assert_eq!(value_at_one(&got), value_at_one(&s));
    }

    #[test]
    fn collapsed_monomials_fold_into_xi() {
        // v0 -> 1, v1 -> -1, last two variables survive
        let map = vec![
            SpecSlot::Kill { zeta: (1, 0) },
            SpecSlot::Kill { zeta: (2, 1) },
            SpecSlot::Keep { child: 0, zeta: (1, 0) },
            SpecSlot::Keep { child: 1, zeta: (1, 0) },
        ];
        let s = FactoredSchur {
            xi: CycNum::one(),
            n0: vec![0, 0, 0, 0],
            factors: vec![factor(4, 1, 12, &[1, -1, 0, 0], 1)],
        };
        let got = clifford_derive(&s, &map, 1).unwrap();
        // Psi(-1) = -1 - i
        assert_eq!(got.xi, CycNum::from_int(-1).try_sub(&z(4, 1)).unwrap());
        assert!(got.factors.is_empty());
        assert_eq!(got.n0, vec![0, 0]);

        // surviving part doubles: Psi(-u^2) = -(u^2 + i) = -(u^2 - i^3)
        let s = FactoredSchur {
            xi: CycNum::one(),
            n0: vec![0, 0, 0, 0],
            factors: vec![factor(4, 1, 12, &[1, -1, 2, -2], 1)],
        };
        let got = clifford_derive(&s, &map, 1).unwrap();
        assert_eq!(got.xi, CycNum::from_int(-1));
        assert_eq!(got.factors.len(), 1);
        assert_eq!(got.factors[0].psi, k_cyc_poly(8, 3, 12).unwrap());
        assert_eq!(got.factors[0].m, vec![1, -1]);
        assert_eq!(got.factors[0].mult, 1);

        // Psi(-1) = 0 for Psi = t + 1: the factor was essential for the map
        let s = FactoredSchur {
            xi: CycNum::one(),
            n0: vec![0, 0, 0, 0],
            factors: vec![factor(2, 1, 12, &[1, -1, 0, 0], 1)],
        };
        assert_eq!(clifford_derive(&s, &map, 1).unwrap_err(), SchurError::NonEssentialCollapse);
    }

    #[test]
    fn parallel_factors_merge_after_the_map() {
        let map = vec![
            SpecSlot::Keep { child: 0, zeta: (1, 0) },
            SpecSlot::Keep { child: 1, zeta: (1, 0) },
            SpecSlot::Keep { child: 0, zeta: (1, 0) },
            SpecSlot::Keep { child: 1, zeta: (1, 0) },
        ];
        let s = FactoredSchur {
            xi: CycNum::from_int(2),
            n0: vec![1, -1, -1, 1],
            factors: vec![
                factor(4, 1, 12, &[1, -1, 0, 0], 1),
                factor(4, 1, 12, &[0, 0, 1, -1], 1),
            ],
        };
        let got = clifford_derive(&s, &map, 2).unwrap();
        assert_eq!(got.xi, CycNum::one());
        assert_eq!(got.n0, vec![0, 0]);
        assert_eq!(got.factors.len(), 1);
        assert_eq!(got.factors[0].psi, k_cyc_poly(4, 1, 12).unwrap());
        assert_eq!(got.factors[0].m, vec![1, -1]);
        assert_eq!(got.factors[0].mult, 2);
    }

    #[test]
    fn equivalence_is_unit_blind_and_flip_blind() {
        let a = FactoredSchur {
            xi: CycNum::one(),
            n0: vec![0, 0],
            factors: vec![factor(4, 1, 12, &[1, -1], 1)],
        };
        let mut b = a.clone();
        b.xi = z(12, 1);
        assert!(equivalent(&a, &b));
        b.xi = CycNum::from_int(2);
        assert!(!equivalent(&a, &b));

        // the same element written against the inverted monomial:
        // Psi(4,1)(v^(1,-1)) = -i^3 v^(1,-1) Psi(4,3)(v^(-1,1))
        let d = FactoredSchur {
            xi: z(4, 1).neg(),
            n0: vec![1, -1],
            factors: vec![factor(4, 3, 12, &[-1, 1], 1)],
        };
        assert!(equivalent(&a, &d));
        let c = canonical_form(&d);
        assert_eq!(c.xi, CycNum::one());
        assert_eq!(c.n0, vec![0, 0]);
        assert_eq!(c.factors[0].psi, k_cyc_poly(4, 1, 12).unwrap());
        assert_eq!(c.factors[0].m, vec![1, -1]);

        // different multiplicity is not equivalent
        let mut e = a.clone();
        e.factors[0].mult = 2;
        assert!(!equivalent(&a, &e));
    }
}
