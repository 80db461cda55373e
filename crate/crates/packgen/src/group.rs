//! Matrix models of the three groups inside GL_2(Q(zeta_12)).
//!
//! The order-144 group is mu_12 . SL(2,3): the scalars of order 12 over the
//! binary tetrahedral group. Its reflection generators s (order 2), t, u
//! (order 3) satisfy s t u = t u s = u s t = scalar, and the two smaller
//! groups are the subgroups <s, u> (index 3) and <u, sus> (index 6).
//! Everything downstream (classes, characters, fake degrees) is computed
//! from these matrices; nothing is copied from printed tables.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::{ensure, Context, Result};
use hecke_core::numfield::CycNum;

/// zeta_d^k expressed at the ambient conductor 12.
pub fn zeta(d: u32, k: i64) -> CycNum {
    CycNum::root_of_unity(d, k).at_order(12).expect("root lives in Q(zeta_12)")
}

pub fn int(v: i64) -> CycNum {
    CycNum::from_int(v).at_order(12).unwrap()
}

/// Row-major 2x2 matrix over Q(zeta_12). Entries are kept at conductor 12,
/// so coefficient strings are canonical keys.
#[derive(Clone, PartialEq)]
pub struct Mat2 {
    pub e: [CycNum; 4],
}

impl Mat2 {
    pub fn new(a: CycNum, b: CycNum, c: CycNum, d: CycNum) -> Mat2 {
        let fix = |x: CycNum| x.at_order(12).expect("entry lives in Q(zeta_12)");
        Mat2 { e: [fix(a), fix(b), fix(c), fix(d)] }
    }

    pub fn identity() -> Mat2 {
        Mat2::new(int(1), int(0), int(0), int(1))
    }

    pub fn scalar(z: &CycNum) -> Mat2 {
        Mat2::new(z.clone(), int(0), int(0), z.clone())
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let p = |i: usize, j: usize| self.e[i].try_mul(&o.e[j]).unwrap();
        let add = |x: CycNum, y: CycNum| x.try_add(&y).unwrap();
        Mat2::new(
            add(p(0, 0), p(1, 2)),
            add(p(0, 1), p(1, 3)),
            add(p(2, 0), p(3, 2)),
            add(p(2, 1), p(3, 3)),
        )
    }

    pub fn scale(&self, z: &CycNum) -> Mat2 {
        let m = |x: &CycNum| x.try_mul(z).unwrap();
        Mat2::new(m(&self.e[0]), m(&self.e[1]), m(&self.e[2]), m(&self.e[3]))
    }

    pub fn det(&self) -> CycNum {
        self.e[0]
            .try_mul(&self.e[3])
            .unwrap()
            .try_sub(&self.e[1].try_mul(&self.e[2]).unwrap())
            .unwrap()
    }

    pub fn trace(&self) -> CycNum {
        self.e[0].try_add(&self.e[3]).unwrap()
    }

    pub fn inv(&self) -> Mat2 {
        let d = self.det().try_inv().expect("group element is invertible");
        Mat2::new(
            self.e[3].try_mul(&d).unwrap(),
            self.e[1].neg().try_mul(&d).unwrap(),
            self.e[2].neg().try_mul(&d).unwrap(),
            self.e[0].try_mul(&d).unwrap(),
        )
    }

    pub fn is_scalar(&self) -> bool {
        self.e[1].is_zero() && self.e[2].is_zero() && self.e[0] == self.e[3]
    }

    pub fn scalar_value(&self) -> Option<CycNum> {
        if self.is_scalar() {
            Some(self.e[0].clone())
        } else {
            None
        }
    }

    /// Has eigenvalue 1 but is not the identity.
    pub fn is_reflection(&self) -> bool {
        let char_at_one = int(1).try_sub(&self.trace()).unwrap().try_add(&self.det()).unwrap();
        char_at_one.is_zero() && *self != Mat2::identity()
    }

    pub fn key(&self) -> String {
        let mut s = String::new();
        for x in &self.e {
            for c in x.coeffs() {
                s.push_str(&c.to_string());
                s.push(',');
            }
            s.push(';');
        }
        s
    }

    pub fn elem_order(&self) -> u32 {
        let mut p = self.clone();
        for n in 1..=48u32 {
            if p == Mat2::identity() {
                return n;
            }
            p = p.mul(self);
        }
        panic!("element order exceeds 48");
    }
}

/// A finite matrix group with canonically ordered elements and classes.
/// Elements are sorted by key; the class list puts the identity class first,
/// then orders by (element order, class size, smallest member key).
pub struct MatGroup {
    pub elems: Vec<Mat2>,
    index: BTreeMap<String, usize>,
    pub inv: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl MatGroup {
    pub fn closure(gens: &[Mat2], cap: usize) -> Result<Vec<Mat2>> {
        let mut elems = vec![Mat2::identity()];
        let mut seen: BTreeSet<String> = BTreeSet::new();
        seen.insert(Mat2::identity().key());
        let mut frontier = vec![Mat2::identity()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for g in gens {
                    let m = f.mul(g);
                    if seen.insert(m.key()) {
                        ensure!(elems.len() < cap, "closure exceeded cap {cap}");
                        elems.push(m.clone());
                        next.push(m);
                    }
                }
            }
            frontier = next;
        }
        Ok(elems)
    }

    pub fn new(mut elems: Vec<Mat2>) -> Result<MatGroup> {
        elems.sort_by_key(|m| m.key());
        let index: BTreeMap<String, usize> =
            elems.iter().enumerate().map(|(i, m)| (m.key(), i)).collect();
        ensure!(index.len() == elems.len(), "duplicate elements");
        let inv: Vec<usize> = elems
            .iter()
            .map(|m| index.get(&m.inv().key()).copied().context("inverse missing"))
            .collect::<Result<_>>()?;
        let order_of: Vec<u32> = elems.iter().map(|m| m.elem_order()).collect();

        let n = elems.len();
        let mut class_of = vec![usize::MAX; n];
        let mut raw_classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members = BTreeSet::new();
            for g in &elems {
                let conj = g.mul(&elems[i]).mul(&g.inv());
                let k = index.get(&conj.key()).copied().context("not closed under conjugation")?;
                members.insert(k);
            }
            let members: Vec<usize> = members.into_iter().collect();
            for &m in &members {
                class_of[m] = raw_classes.len();
            }
            raw_classes.push(members);
        }
        // canonical class order
        let id_idx = *index.get(&Mat2::identity().key()).context("identity missing")?;
        let mut keys: Vec<(u32, usize, String, usize)> = raw_classes
            .iter()
            .enumerate()
            .map(|(ci, members)| {
                let is_id = members.contains(&id_idx);
                let o = if is_id { 0 } else { order_of[members[0]] };
                let min_key = members.iter().map(|&m| elems[m].key()).min().unwrap();
                (o, members.len(), min_key, ci)
            })
            .collect();
        keys.sort();
        let classes: Vec<Vec<usize>> = keys.iter().map(|k| raw_classes[k.3].clone()).collect();
        let mut class_of = vec![usize::MAX; n];
        for (ci, members) in classes.iter().enumerate() {
            for &m in members {
                class_of[m] = ci;
            }
        }
        ensure!(classes[0] == vec![id_idx], "identity class must come first");
        Ok(MatGroup { elems, index, inv, classes, class_of })
    }

    pub fn idx(&self, m: &Mat2) -> Option<usize> {
        self.index.get(&m.key()).copied()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.idx(m).is_some()
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn reflection_count(&self) -> usize {
        self.elems.iter().filter(|m| m.is_reflection()).count()
    }
}

pub struct Groups {
    pub sl23: MatGroup,
    pub g7: MatGroup,
    pub g6: MatGroup,
    pub g4: MatGroup,
    pub s: Mat2,
    pub t: Mat2,
    pub u: Mat2,
    /// scalar value of the central product s t u
    pub stu: CycNum,
    /// coset map to the order-3 quotient of the big group by <s, u>:
    /// x lies in <s,u> t^phi3(x)
    pub phi3: Vec<u32>,
    pub g6_to_g7: Vec<usize>,
    pub g4_to_g6: Vec<usize>,
}

pub fn build() -> Result<Groups> {
    let i = zeta(4, 1);
    // (a + b i)/2
    let h = |a: i64, b: i64| -> CycNum {
        int(a).try_add(&i.try_mul(&int(b)).unwrap()).unwrap().try_div(&int(2)).unwrap()
    };
    let q = Mat2::new(i.clone(), int(0), int(0), i.neg());
    let j = Mat2::new(int(0), int(1), int(-1), int(0));
    let w = Mat2::new(h(-1, 1), h(1, 1), h(-1, 1), h(-1, -1));
    ensure!(w.det() == int(1) && w.trace() == int(-1) && w.elem_order() == 3);

    let sl23 = MatGroup::new(MatGroup::closure(&[q.clone(), j, w.clone()], 24)?)?;
    ensure!(sl23.order() == 24, "binary tetrahedral group has 24 elements");
    ensure!(sl23.classes.len() == 7);

    let mut big: Vec<Mat2> = Vec::new();
    let mut seen = BTreeSet::new();
    for a in 0..12 {
        let z = zeta(12, a);
        for g in &sl23.elems {
            let m = g.scale(&z);
            if seen.insert(m.key()) {
                big.push(m);
            }
        }
    }
    let g7 = MatGroup::new(big)?;
    ensure!(g7.order() == 144, "mu_12 . SL(2,3) has 144 elements");
    ensure!(g7.classes.len() == 42, "expected 42 conjugacy classes, got {}", g7.classes.len());
    ensure!(g7.reflection_count() == 22);

    let s = q.scale(&zeta(4, 3));
    let t = w.scale(&zeta(3, 2));
    ensure!(s.elem_order() == 2 && t.elem_order() == 3);

    // u = zeta_3^2 w' for an order-3 w' making s t u scalar and |<s,u>| = 48
    let mut u_pick: Option<(Mat2, Vec<Mat2>)> = None;
    for g in &sl23.elems {
        if g.elem_order() != 3 {
            continue;
        }
        let u = g.scale(&zeta(3, 2));
        if !s.mul(&t).mul(&u).is_scalar() {
            continue;
        }
        let sub = MatGroup::closure(&[s.clone(), u.clone()], 144)?;
        if sub.len() == 48 {
            u_pick = Some((u, sub));
            break; // elems are key-sorted, so the first hit is canonical
        }
    }
    let (u, g6_elems) = u_pick.context("no generator u with s t u scalar")?;
    let stu = s.mul(&t).mul(&u).scalar_value().unwrap();
    ensure!(stu.pow(12).unwrap().is_one() && !stu.pow(6).unwrap().is_one(), "s t u has order 12");

    // the three cyclic rotations of the central element coincide
    let m1 = s.mul(&t).mul(&u);
    ensure!(m1 == t.mul(&u).mul(&s) && m1 == u.mul(&s).mul(&t), "braid relation fails");
    // <s,u> satisfies the length-6 braid relation
    let lhs = s.mul(&u).mul(&s).mul(&u).mul(&s).mul(&u);
    let rhs = u.mul(&s).mul(&u).mul(&s).mul(&u).mul(&s);
    ensure!(lhs == rhs, "length-6 braid relation fails for <s,u>");

    let g6 = MatGroup::new(g6_elems)?;
    ensure!(g6.classes.len() == 14);
    ensure!(g6.reflection_count() == 14);
    ensure!(g6.contains(&Mat2::scalar(&i)) && !g6.contains(&Mat2::scalar(&zeta(12, 1))));

    let sus = s.mul(&u).mul(&s);
    // <u, sus> satisfies the length-3 braid relation
    ensure!(u.mul(&sus).mul(&u) == sus.mul(&u).mul(&sus), "length-3 braid relation fails");
    let g4 = MatGroup::new(MatGroup::closure(&[u.clone(), sus], 48)?)?;
    ensure!(g4.order() == 24);
    ensure!(g4.classes.len() == 7);
    ensure!(g4.reflection_count() == 8);
    ensure!(g4.contains(&Mat2::scalar(&int(-1))) && !g4.contains(&Mat2::scalar(&i)));

    // <s, t, u> is the whole big group
    let full = MatGroup::closure(&[s.clone(), t.clone(), u.clone()], 200)?;
    ensure!(full.len() == 144 && full.iter().all(|m| g7.contains(m)));

    // normality, then the coset map onto the order-3 quotient
    for x in &g6.elems {
        ensure!(g6.contains(&t.mul(x).mul(&t.inv())), "<s,u> must be normal");
    }
    for x in &g4.elems {
        ensure!(g4.contains(&s.mul(x).mul(&s)), "<u,sus> must be normal in <s,u>");
    }
    let t_inv = t.inv();
    let phi3: Vec<u32> = g7
        .elems
        .iter()
        .map(|x| {
            let mut hits = Vec::new();
            let mut y = x.clone();
            for p in 0..3u32 {
                if g6.contains(&y) {
                    hits.push(p);
                }
                y = y.mul(&t_inv);
            }
            ensure!(hits.len() == 1, "cosets of <s,u> do not partition");
            Ok(hits[0])
        })
        .collect::<Result<_>>()?;

    let g6_to_g7: Vec<usize> = g6
        .elems
        .iter()
        .map(|m| g7.idx(m).context("subgroup element missing in big group"))
        .collect::<Result<_>>()?;
    let g4_to_g6: Vec<usize> = g4
        .elems
        .iter()
        .map(|m| g6.idx(m).context("subgroup element missing in <s,u>"))
        .collect::<Result<_>>()?;

    Ok(Groups { sl23, g7, g6, g4, s, t, u, stu, phi3, g6_to_g7, g4_to_g6 })
}
