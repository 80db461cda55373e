//! Partition lattice over character indices and the block algorithm:
//! candidate Rouquier blocks with no or one essential hyperplane, the full
//! per-hyperplane table, and blocks of arbitrary integer specializations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::grouprepo::{p_blocks_of_group, GroupData};
use crate::monlattice::{dot, gcd_of, normalize, ExpVec, Hyperplane, MonLatticeError, OrbitLayout};
use crate::numfield::{in_prime_ideal, primes_above, NumFieldError, PrimeIdeal};
use crate::schur::{essential_monomials, specialize, SchurError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockError {
    #[error("partitions have sizes {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("no specialization vector found inside the search box")]
    NoVectorFound,
    #[error("Error, The number p should divide the order of the group")]
    PrimeDoesNotDivideOrder(u64),
    #[error(transparent)]
    NumField(#[from] NumFieldError),
    #[error(transparent)]
    MonLattice(#[from] MonLatticeError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    GroupRepo(#[from] crate::grouprepo::GroupRepoError),
}

type Result<T> = std::result::Result<T, BlockError>;

/// Disjoint nonempty index sets covering 0..n. Canonical form: parts sorted
/// by least element, indices ascending inside each part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn singletons(n: usize) -> Partition {
        Partition { n, parts: (0..n).map(|i| vec![i]).collect() }
    }

    /// Canonicalizes; the parts must be disjoint, nonempty, and cover 0..n.
    pub fn from_parts(n: usize, parts: Vec<Vec<usize>>) -> Partition {
        let mut seen = vec![false; n];
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
        for mut p in parts {
            assert!(!p.is_empty(), "empty part");
            p.sort_unstable();
            for &i in &p {
                assert!(i < n && !seen[i], "parts must be disjoint and within 0..n");
                seen[i] = true;
            }
            out.push(p);
        }
        assert!(seen.iter().all(|&b| b), "parts must cover 0..n");
        out.sort_by_key(|p| p[0]);
        Partition { n, parts: out }
    }

    /// Groups indices with equal keys.
    pub fn from_key_vec<K: Ord>(keys: &[K]) -> Partition {
        let mut groups: BTreeMap<&K, Vec<usize>> = BTreeMap::new();
        for (i, k) in keys.iter().enumerate() {
            groups.entry(k).or_default().push(i);
        }
        Partition::from_parts(keys.len(), groups.into_values().collect())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_index(&self, i: usize) -> usize {
        self.parts.iter().position(|p| p.binary_search(&i).is_ok()).unwrap()
    }

    /// True iff every part of self lies inside one part of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        if self.n != coarser.n {
            return Err(BlockError::SizeMismatch(self.n, coarser.n));
        }
        Ok(self.parts.iter().all(|p| {
            let home = coarser.part_index(p[0]);
            p.iter().all(|&i| coarser.part_index(i) == home)
        }))
    }
}

// 1-based, matching the printed tables
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in p.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Finest partition coarser than both: connected components of the union.
pub fn join(a: &Partition, b: &Partition) -> Result<Partition> {
    if a.n != b.n {
        return Err(BlockError::SizeMismatch(a.n, b.n));
    }
    let mut root: Vec<usize> = (0..a.n).collect();
    fn find(root: &mut Vec<usize>, mut i: usize) -> usize {
        while root[i] != i {
            root[i] = root[root[i]];
            i = root[i];
        }
        i
    }
    for p in a.parts.iter().chain(b.parts.iter()) {
        for w in p.windows(2) {
            let (x, y) = (find(&mut root, w[0]), find(&mut root, w[1]));
            root[x.max(y)] = x.min(y);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..a.n {
        let r = find(&mut root, i);
        groups.entry(r).or_default().push(i);
    }
    Ok(Partition::from_parts(a.n, groups.into_values().collect()))
}

/// Common refinement: pairwise intersections of parts.
pub fn meet(a: &Partition, b: &Partition) -> Result<Partition> {
    if a.n != b.n {
        return Err(BlockError::SizeMismatch(a.n, b.n));
    }
    let keys: Vec<(usize, usize)> =
        (0..a.n).map(|i| (a.part_index(i), b.part_index(i))).collect();
    Ok(Partition::from_key_vec(&keys))
}

/// What a specialization vector must satisfy against the arrangement.
#[derive(Debug, Clone)]
pub enum SpecTarget {
    /// on no essential hyperplane
    OffAll,
    /// on this hyperplane and no other
    OnExactly(Hyperplane),
}

pub const DEFAULT_BUDGET: usize = 12;
// search box half-width cap; shipped arrangements are resolved well below it
const MAX_SHELL: i64 = 6;

/// Deterministic supply of integer specialization vectors: boxes [-b, b]^m
/// in lexicographic order with growing b, keeping primitive vectors whose
/// first nonzero entry is positive (scaling a vector never changes blocks).
pub fn find_spec_vectors(
    hyperplanes: &[Hyperplane],
    target: &SpecTarget,
    layout: &OrbitLayout,
    budget: usize,
) -> Result<Vec<ExpVec>> {
    assert!(budget >= 1);
    let m: usize = layout.iter().sum();
    assert!(m >= 1);
    let mut found: Vec<ExpVec> = Vec::new();
    for b in 1..=MAX_SHELL {
        let mut v = vec![-b; m];
        'sweep: loop {
            // only vectors new to this shell
            if v.iter().map(|x| x.abs()).max().unwrap() == b
                && v.iter().find(|&&x| x != 0).map(|&x| x > 0).unwrap_or(false)
                && gcd_of(&v) == 1
            {
                let ok = match target {
                    SpecTarget::OffAll => hyperplanes
                        .iter()
                        .all(|h| dot(&h.coeffs, &v).unwrap() != 0),
                    SpecTarget::OnExactly(h) => {
                        dot(&h.coeffs, &v).unwrap() == 0
                            && hyperplanes
                                .iter()
                                .filter(|g| *g != h)
                                .all(|g| dot(&g.coeffs, &v).unwrap() != 0)
                    }
                };
                if ok {
                    found.push(v.clone());
                    if found.len() >= budget {
                        return Ok(found);
                    }
                }
            }
            // lexicographic odometer
            for i in (0..m).rev() {
                if v[i] < b {
                    v[i] += 1;
                    continue 'sweep;
                }
                v[i] = -b;
            }
            break;
        }
        if found.len() >= budget {
            break;
        }
    }
    if found.is_empty() {
        return Err(BlockError::NoVectorFound);
    }
    Ok(found)
}

/// One row of the per-hyperplane block table.
#[derive(Debug, Clone)]
pub struct HyperplaneBlocks {
    /// absent = the record off every essential hyperplane
    pub hyperplane: Option<Hyperplane>,
    /// join of the per-prime partitions
    pub partition: Partition,
    pub per_prime: BTreeMap<u64, Partition>,
}

// state shared by every pass at one prime ideal
struct PrimeCtx {
    ideal: PrimeIdeal,
    // per character, its essential hyperplanes at this ideal
    essentials: Vec<BTreeSet<Hyperplane>>,
    // sorted union of the above
    arrangement: Vec<Hyperplane>,
    p_blocks: Partition,
}

fn prime_ctx(g: &GroupData, ideal: PrimeIdeal) -> Result<PrimeCtx> {
    let layout = g.layout();
    let mut essentials = Vec::with_capacity(g.schur_table.len());
    let mut arrangement: BTreeSet<Hyperplane> = BTreeSet::new();
    for s in &g.schur_table {
        let e = essential_monomials(s, &ideal, &layout)?;
        arrangement.extend(e.iter().cloned());
        essentials.push(e);
    }
    let p_blocks = p_blocks_of_group(g, &ideal)?;
    Ok(PrimeCtx { ideal, essentials, arrangement: arrangement.into_iter().collect(), p_blocks })
}

fn one_part_plus_singletons(n: usize, big: &[usize]) -> Partition {
    let mut parts: Vec<Vec<usize>> = Vec::new();
    if !big.is_empty() {
        parts.push(big.to_vec());
    }
    for i in (0..n).filter(|i| !big.contains(i)) {
        parts.push(vec![i]);
    }
    Partition::from_parts(n, parts)
}

// characters grouped by a + A at the specialization n
fn level_partition(g: &GroupData, n: &ExpVec) -> Result<Partition> {
    let mut keys = Vec::with_capacity(g.schur_table.len());
    for s in &g.schur_table {
        keys.push(specialize(s, n, g.mu_order)?.a_plus_big_a());
    }
    Ok(Partition::from_key_vec(&keys))
}

fn meet_levels_to_fixpoint(g: &GroupData, mut lam: Partition, vectors: &[ExpVec]) -> Result<Partition> {
    loop {
        let before = lam.clone();
        for n in vectors {
            lam = meet(&lam, &level_partition(g, n)?)?;
        }
        if lam == before {
            return Ok(lam);
        }
    }
}

fn no_hyp_with(g: &GroupData, ctx: &PrimeCtx, budget: usize) -> Result<Partition> {
    let nchars = g.schur_table.len();
    let mut big = Vec::new();
    for (i, s) in g.schur_table.iter().enumerate() {
        if in_prime_ideal(&s.xi, &ctx.ideal)? {
            big.push(i);
        }
    }
    let mut lam = one_part_plus_singletons(nchars, &big);
    lam = meet(&lam, &ctx.p_blocks)?;
    if g.n_slots() == 0 {
        // no variables: a + A vanishes everywhere
        return Ok(lam);
    }
    let vectors = find_spec_vectors(&ctx.arrangement, &SpecTarget::OffAll, &g.layout(), budget)?;
    meet_levels_to_fixpoint(g, lam, &vectors)
}

fn on_hyp_with(
    g: &GroupData,
    ctx: &PrimeCtx,
    h: &Hyperplane,
    no_hyp: &Partition,
    budget: usize,
) -> Result<Partition> {
    if !ctx.arrangement.contains(h) {
        // blocks off and on a non-essential hyperplane coincide
        return Ok(no_hyp.clone());
    }
    let nchars = g.schur_table.len();
    let big: Vec<usize> = (0..nchars).filter(|&i| ctx.essentials[i].contains(h)).collect();
    let mut lam = one_part_plus_singletons(nchars, &big);
    lam = meet(&lam, &ctx.p_blocks)?;
    let target = SpecTarget::OnExactly(h.clone());
    let vectors = find_spec_vectors(&ctx.arrangement, &target, &g.layout(), budget)?;
    lam = meet_levels_to_fixpoint(g, lam, &vectors)?;
    join(&lam, no_hyp)
}

/// Candidate blocks at P for specializations off every essential hyperplane:
/// scalars in P as one part, refined by the p-blocks of the group and by
/// a + A levels across off-hyperplane vectors. Provably a coarsening of the
/// true blocks.
pub fn blocks_no_hyperplane(g: &GroupData, p: &PrimeIdeal, budget: usize) -> Result<Partition> {
    let ctx = prime_ctx(g, p.clone())?;
    no_hyp_with(g, &ctx, budget)
}

/// Candidate blocks at P for specializations lying exactly on H, joined with
/// the off-hyperplane blocks. Falls back to the latter when H is not
/// p-essential for any character.
pub fn blocks_on_hyperplane(
    g: &GroupData,
    p: &PrimeIdeal,
    h: &Hyperplane,
    budget: usize,
) -> Result<Partition> {
    let ctx = prime_ctx(g, p.clone())?;
    let base = no_hyp_with(g, &ctx, budget)?;
    on_hyp_with(g, &ctx, h, &base, budget)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn join_all<'a>(n: usize, parts: impl Iterator<Item = &'a Partition>) -> Result<Partition> {
    let mut acc = Partition::singletons(n);
    for p in parts {
        acc = join(&acc, p)?;
    }
    Ok(acc)
}

// one context per rational prime dividing the group order, plus (debug only)
// the contexts for every other prime ideal above it
fn prime_ctxs(g: &GroupData) -> Result<(Vec<(u64, PrimeCtx)>, Vec<(u64, Vec<PrimeCtx>)>)> {
    let mut ctxs = Vec::new();
    let mut rest = Vec::new();
    for p in prime_divisors(g.order) {
        let mut ideals = primes_above(p, g.conductor)?;
        let first = ideals.remove(0);
        ctxs.push((p, prime_ctx(g, first)?));
        if cfg!(debug_assertions) {
            let extra: Vec<PrimeCtx> =
                ideals.into_iter().map(|i| prime_ctx(g, i)).collect::<Result<_>>()?;
            rest.push((p, extra));
        }
    }
    Ok((ctxs, rest))
}

/// The full table: the off-hyperplane record first, then one record per
/// essential hyperplane (union over primes dividing the group order), each
/// joined across one prime ideal per rational prime.
pub fn all_blocks(g: &GroupData, budget: usize) -> Result<Vec<HyperplaneBlocks>> {
    let nchars = g.schur_table.len();
    let (ctxs, galois) = prime_ctxs(g)?;
    let mut union: BTreeSet<Hyperplane> = BTreeSet::new();
    for (_, ctx) in &ctxs {
        union.extend(ctx.arrangement.iter().cloned());
    }

    let mut no_hyp: BTreeMap<u64, Partition> = BTreeMap::new();
    for (p, ctx) in &ctxs {
        no_hyp.insert(*p, no_hyp_with(g, ctx, budget)?);
    }
    let mut out = vec![HyperplaneBlocks {
        hyperplane: None,
        partition: join_all(nchars, no_hyp.values())?,
        per_prime: no_hyp.clone(),
    }];
    for h in &union {
        let mut per_prime = BTreeMap::new();
        for (p, ctx) in &ctxs {
            per_prime.insert(*p, on_hyp_with(g, ctx, h, &no_hyp[p], budget)?);
        }
        out.push(HyperplaneBlocks {
            hyperplane: Some(h.clone()),
            partition: join_all(nchars, per_prime.values())?,
            per_prime,
        });
    }

    // the choice of prime ideal above p is immaterial
    for (p, extras) in &galois {
        for ctx in extras {
            let base = no_hyp_with(g, ctx, budget)?;
            debug_assert_eq!(base, out[0].per_prime[p], "prime ideals above {p} disagree");
            for (k, h) in union.iter().enumerate() {
                let got = on_hyp_with(g, ctx, h, &base, budget)?;
                debug_assert_eq!(got, out[k + 1].per_prime[p], "prime ideals above {p} disagree");
            }
        }
    }
    Ok(out)
}

/// Blocks of the specialization v_s -> y^(n_s): the off-hyperplane partition
/// when n avoids the arrangement, otherwise the join over every essential
/// hyperplane containing n.
pub fn rouquier_blocks(g: &GroupData, n: &ExpVec, budget: usize) -> Result<Partition> {
    let slots = g.n_slots();
    if n.len() != slots {
        return Err(BlockError::SizeMismatch(n.len(), slots));
    }
    // scaling n never moves it across the arrangement
    let dir = if n.iter().all(|&x| x == 0) { n.clone() } else { normalize(n)?.0 };

    let nchars = g.schur_table.len();
    let (ctxs, _) = prime_ctxs(g)?;
    let mut union: BTreeSet<Hyperplane> = BTreeSet::new();
    for (_, ctx) in &ctxs {
        union.extend(ctx.arrangement.iter().cloned());
    }
    let mut no_hyp: BTreeMap<u64, Partition> = BTreeMap::new();
    for (p, ctx) in &ctxs {
        no_hyp.insert(*p, no_hyp_with(g, ctx, budget)?);
    }
    let mut acc = join_all(nchars, no_hyp.values())?;
    for h in union.iter().filter(|h| dot(&h.coeffs, &dir).unwrap() == 0) {
        for (p, ctx) in &ctxs {
            acc = join(&acc, &on_hyp_with(g, ctx, h, &no_hyp[p], budget)?)?;
        }
    }
    Ok(acc)
}

/// The essential hyperplanes swept over every character: all primes dividing
/// the group order for p = 0, or one prime ideal above a given p.
pub fn essential_hyperplanes(g: &GroupData, p: u64) -> Result<Vec<Hyperplane>> {
    let ps = if p == 0 {
        prime_divisors(g.order)
    } else {
        if !is_prime(p) || g.order % p != 0 {
            return Err(BlockError::PrimeDoesNotDivideOrder(p));
        }
        vec![p]
    };
    let layout = g.layout();
    let mut set: BTreeSet<Hyperplane> = BTreeSet::new();
    for q in ps {
        let ideal = primes_above(q, g.conductor)?.remove(0);
        for s in &g.schur_table {
            set.extend(essential_monomials(s, &ideal, &layout)?);
        }
    }
    Ok(set.into_iter().collect())
}

/// "c_0-2c_1+c_2=0" in the pack's slot names, unit coefficients bare.
pub fn display_hyperplane(h: &Hyperplane, slot_names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in h.coeffs.iter().zip(slot_names) {
        match *c {
            0 => continue,
            1 if out.is_empty() => {}
            -1 if out.is_empty() => out.push('-'),
            1 => out.push('+'),
            -1 => out.push('-'),
            c => {
                if c > 0 && !out.is_empty() {
                    out.push('+');
                }
                out.push_str(&c.to_string());
            }
        }
        out.push_str(name);
    }
    out.push_str("=0");
    out
}

#[cfg(test)]
mod partition_tests {
    use super::*;

    fn p(n: usize, parts: &[&[usize]]) -> Partition {
        Partition::from_parts(n, parts.iter().map(|p| p.to_vec()).collect())
    }

    #[test]
    fn canonical_form_sorts_by_least_element() {
        let x = Partition::from_parts(4, vec![vec![3, 1], vec![2, 0]]);
        assert_eq!(x.parts(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(x.to_string(), "[[1,3],[2,4]]");
        assert_eq!(x.part_index(3), 1);
    }

    #[test]
    fn join_is_component_closure() {
        // 0-based translation of the two printed difference-hyperplane
        // partitions; their join merges everything but the last character
        let a = p(7, &[&[0, 1, 5], &[2], &[3, 4], &[6]]);
        let b = p(7, &[&[0, 2, 4], &[1], &[3, 5], &[6]]);
        let j = join(&a, &b).unwrap();
        assert_eq!(j.parts(), &[vec![0, 1, 2, 3, 4, 5], vec![6]]);
        assert_eq!(join(&b, &a).unwrap(), j);
        assert_eq!(join(&a, &a).unwrap(), a);
        assert_eq!(join(&a, &Partition::singletons(7)).unwrap(), a);
        assert!(matches!(
            join(&a, &Partition::singletons(5)),
            Err(BlockError::SizeMismatch(7, 5))
        ));
    }

    #[test]
    fn meet_is_common_refinement() {
        let a = p(3, &[&[0, 1], &[2]]);
        let b = p(3, &[&[0], &[1, 2]]);
        assert_eq!(meet(&a, &b).unwrap(), Partition::singletons(3));
        let one = p(3, &[&[0, 1, 2]]);
        assert_eq!(meet(&a, &one).unwrap(), a);
        assert_eq!(meet(&a, &a).unwrap(), a);
        assert_eq!(meet(&a, &b).unwrap(), meet(&b, &a).unwrap());
    }

    #[test]
    fn refinement_check() {
        let fine = Partition::singletons(4);
        let coarse = p(4, &[&[0, 1], &[2, 3]]);
        assert!(fine.refines(&coarse).unwrap());
        assert!(!coarse.refines(&fine).unwrap());
        assert!(coarse.refines(&coarse).unwrap());
    }

    #[test]
    fn join_and_meet_bracket_random_partitions() {
        // deterministic pseudo-random keys
        let mut seed = 9u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as usize
        };
        for n in [1usize, 2, 5, 9] {
            for _ in 0..20 {
                let ka: Vec<usize> = (0..n).map(|_| next() % 3).collect();
                let kb: Vec<usize> = (0..n).map(|_| next() % 3).collect();
                let a = Partition::from_key_vec(&ka);
                let b = Partition::from_key_vec(&kb);
                let j = join(&a, &b).unwrap();
                let m = meet(&a, &b).unwrap();
                assert!(a.refines(&j).unwrap() && b.refines(&j).unwrap());
                assert!(m.refines(&a).unwrap() && m.refines(&b).unwrap());
                assert_eq!(meet(&m, &a).unwrap(), m);
                assert_eq!(join(&j, &b).unwrap(), j);
            }
        }
    }
}
