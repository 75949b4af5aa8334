//! Finite group machinery: multiplication tables, subgroup lattice, conjugacy
//! classes, normalizers, the numbers n(L,H) and epimorphism enumeration.

use crate::perm::Perm;
use crate::smallgrp::SmallGroup;
use std::collections::{BTreeSet, HashMap, HashSet};

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// A finite group materialized from permutation generators.
#[derive(Debug)]
pub struct FiniteGroup {
    pub name: String,
    pub degree: usize,
    pub elems: Vec<Perm>,
    /// mul[a][b] = index of elems[a] * elems[b]
    mul: Vec<u16>,
    inv: Vec<u16>,
    order: usize,
}

pub type ElId = u16;

/// Sorted member indices of a subgroup.
pub type Members = Vec<ElId>;

#[derive(Debug, Clone)]
pub struct SubgroupClass {
    /// Lexicographically minimal member set among the conjugates.
    pub rep: Members,
    pub conjugates: Vec<Members>,
    pub normalizer: Members,
    pub weyl_order: usize,
    pub name: String,
}

impl FiniteGroup {
    pub fn from_generators(name: &str, degree: usize, gens: &[Perm]) -> Result<Self, String> {
        Self::from_generators_bounded(name, degree, gens, DEFAULT_ORDER_BOUND)
    }

    pub fn from_generators_bounded(
        name: &str,
        degree: usize,
        gens: &[Perm],
        bound: usize,
    ) -> Result<Self, String> {
        for g in gens {
            if g.degree() != degree {
                return Err(format!(
                    "generator degree {} does not match declared degree {}",
                    g.degree(),
                    degree
                ));
            }
        }
        // Dimino-style closure
        let mut elems: Vec<Perm> = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in gens {
                let p = g.compose(&elems[i]);
                if !index.contains_key(&p) {
                    if elems.len() >= bound {
                        return Err(format!("group order exceeds bound {}", bound));
                    }
                    index.insert(p.clone(), elems.len());
                    frontier.push(elems.len());
                    elems.push(p);
                }
            }
        }
        // put identity first, keep a stable sorted order for the rest
        let mut sorted: Vec<Perm> = elems.clone();
        sorted.sort();
        // identity sorts first automatically (images 0,1,2,... is lex-min? not
        // always, e.g. nothing sorts below the identity since any non-identity
        // perm has some image[i] != i; the first differing position has
        // image > i or < i). Force it explicitly.
        let idp = Perm::identity(degree);
        sorted.retain(|p| *p != idp);
        sorted.insert(0, idp);
        let order = sorted.len();
        if order > u16::MAX as usize {
            return Err("group order exceeds u16 index range".into());
        }
        let mut index: HashMap<&Perm, usize> = HashMap::new();
        for (i, p) in sorted.iter().enumerate() {
            index.insert(p, i);
        }
        let mut mul = vec![0u16; order * order];
        let mut inv = vec![0u16; order];
        for a in 0..order {
            for b in 0..order {
                let p = sorted[a].compose(&sorted[b]);
                let c = index[&p];
                mul[a * order + b] = c as u16;
                if c == 0 {
                    inv[a] = b as u16;
                }
            }
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            degree,
            elems: sorted,
            mul,
            inv,
            order,
        })
    }

    /// Direct product realized on the disjoint union of the two point sets.
    pub fn direct_product(name: &str, a: &FiniteGroup, b: &FiniteGroup) -> Result<Self, String> {
        let d = a.degree + b.degree;
        let mut gens = Vec::new();
        for g in a.generating_set() {
            let mut img: Vec<usize> = (0..d).collect();
            for (i, item) in a.elems[g as usize].0.iter().enumerate() {
                img[i] = *item;
            }
            gens.push(Perm(img));
        }
        for g in b.generating_set() {
            let mut img: Vec<usize> = (0..d).collect();
            for (i, &j) in b.elems[g as usize].0.iter().enumerate() {
                img[a.degree + i] = a.degree + j;
            }
            gens.push(Perm(img));
        }
        FiniteGroup::from_generators(name, d, &gens)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: ElId, b: ElId) -> ElId {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: ElId) -> ElId {
        self.inv[a as usize]
    }

    #[inline]
    pub fn conj(&self, g: ElId, x: ElId) -> ElId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn el_order(&self, a: ElId) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// A small generating set found greedily.
    pub fn generating_set(&self) -> Vec<ElId> {
        subgroup_generators(self, &(0..self.order as u16).collect::<Vec<_>>())
    }

    // ----- subgroup machinery -----

    pub fn closure(&self, seed: &[ElId]) -> Members {
        let mut set: BTreeSet<ElId> = seed.iter().copied().collect();
        set.insert(0);
        loop {
            let cur: Vec<ElId> = set.iter().copied().collect();
            let before = set.len();
            for &a in &cur {
                for &b in &cur {
                    set.insert(self.mul(a, b));
                }
            }
            if set.len() == before {
                break;
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, m: &Members) -> bool {
        if m.first() != Some(&0) {
            return false;
        }
        let set: HashSet<ElId> = m.iter().copied().collect();
        m.iter()
            .all(|&a| m.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn conjugate_members(&self, m: &Members, g: ElId) -> Members {
        let mut out: Vec<ElId> = m.iter().map(|&x| self.conj(g, x)).collect();
        out.sort_unstable();
        out
    }

    pub fn normalizer(&self, m: &Members) -> Members {
        (0..self.order as u16)
            .filter(|&g| self.conjugate_members(m, g) == *m)
            .collect()
    }

    pub fn centralizer(&self, m: &Members) -> Members {
        (0..self.order as u16)
            .filter(|&g| m.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    /// All subgroups contained in the given member set.
    pub fn subgroups_within(&self, members: &Members) -> Vec<Members> {
        let mut subs: BTreeSet<Members> = BTreeSet::new();
        subs.insert(vec![0]);
        let mut cyclics: BTreeSet<Members> = BTreeSet::new();
        for &g in members {
            cyclics.insert(self.closure(&[g]));
        }
        subs.extend(cyclics.iter().cloned());
        let cyc: Vec<Members> = cyclics.into_iter().collect();
        let mut frontier: Vec<Members> = subs.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for c in &cyc {
                if c.iter().all(|x| s.binary_search(x).is_ok()) {
                    continue;
                }
                let mut seed = s.clone();
                seed.extend_from_slice(c);
                let j = self.closure(&seed);
                if j.len() <= members.len()
                    && j.iter().all(|x| members.binary_search(x).is_ok())
                    && subs.insert(j.clone())
                {
                    frontier.push(j);
                }
            }
        }
        subs.into_iter().collect()
    }

    /// All subgroups, as sorted member sets.
    pub fn all_subgroups(&self) -> Vec<Members> {
        let mut subs: BTreeSet<Members> = BTreeSet::new();
        subs.insert(vec![0]);
        // cyclic subgroups
        let mut cyclics: BTreeSet<Members> = BTreeSet::new();
        for g in 0..self.order as u16 {
            cyclics.insert(self.closure(&[g]));
        }
        subs.extend(cyclics.iter().cloned());
        // grow by joining with cyclic subgroups until stable
        let cyc: Vec<Members> = cyclics.into_iter().collect();
        let mut frontier: Vec<Members> = subs.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for c in &cyc {
                if c.iter().all(|x| s.binary_search(x).is_ok()) {
                    continue;
                }
                let mut seed = s.clone();
                seed.extend_from_slice(c);
                let j = self.closure(&seed);
                if subs.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        subs.into_iter().collect()
    }

    /// Conjugacy classes of subgroups with a stable deterministic order:
    /// by order, then by the lexicographically minimal member set.
    pub fn subgroup_classes(&self) -> Vec<SubgroupClass> {
        let subs = self.all_subgroups();
        let mut remaining: BTreeSet<Members> = subs.into_iter().collect();
        let mut classes = Vec::new();
        while let Some(s) = remaining.iter().next().cloned() {
            let mut conjs: BTreeSet<Members> = BTreeSet::new();
            for g in 0..self.order as u16 {
                conjs.insert(self.conjugate_members(&s, g));
            }
            for c in &conjs {
                remaining.remove(c);
            }
            let rep = conjs.iter().next().unwrap().clone();
            let normalizer = self.normalizer(&rep);
            let weyl_order = normalizer.len() / rep.len();
            classes.push(SubgroupClass {
                rep,
                conjugates: conjs.into_iter().collect(),
                normalizer,
                weyl_order,
                name: String::new(),
            });
        }
        classes.sort_by(|a, b| (a.rep.len(), &a.rep).cmp(&(b.rep.len(), &b.rep)));
        let names = name_classes(self, &classes);
        for (c, n) in classes.iter_mut().zip(names) {
            c.name = n;
        }
        classes
    }

    /// N(L,H) = {g : g L g^{-1} <= H};  n(L,H) = |N(L,H)| / |N(H)|.
    pub fn n_number(&self, l: &Members, h: &Members) -> usize {
        let hset: HashSet<ElId> = h.iter().copied().collect();
        let count = (0..self.order as u16)
            .filter(|&g| l.iter().all(|&x| hset.contains(&self.conj(g, x))))
            .count();
        let nh = self.normalizer(h).len();
        debug_assert_eq!(count % nh, 0);
        count / nh
    }

    pub fn is_subconjugate(&self, l: &Members, h: &Members) -> bool {
        if l.len() > h.len() || h.len() % l.len() != 0 {
            return false;
        }
        let hset: HashSet<ElId> = h.iter().copied().collect();
        (0..self.order as u16).any(|g| l.iter().all(|&x| hset.contains(&self.conj(g, x))))
    }

    /// Index of the class containing the subgroup `m` in `classes`.
    pub fn class_of(&self, classes: &[SubgroupClass], m: &Members) -> usize {
        for (i, c) in classes.iter().enumerate() {
            if c.rep.len() == m.len() && c.conjugates.iter().any(|x| x == m) {
                return i;
            }
        }
        panic!("subgroup not found in class list");
    }

    /// All epimorphisms from the subgroup `h` onto the small group `l`,
    /// each returned as the full map member-position -> L-element.
    pub fn epimorphisms_onto(&self, h: &Members, l: &SmallGroup) -> Vec<Vec<u8>> {
        if h.len() % l.order() != 0 {
            return Vec::new();
        }
        let gens = subgroup_generators(self, h);
        let pos: HashMap<ElId, usize> = h.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut out = Vec::new();
        let mut images = vec![0u8; gens.len()];
        self.epi_search(h, &pos, l, &gens, 0, &mut images, &mut out);
        out
    }

    fn epi_search(
        &self,
        h: &Members,
        pos: &HashMap<ElId, usize>,
        l: &SmallGroup,
        gens: &[ElId],
        k: usize,
        images: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if k == gens.len() {
            if let Some(map) = extend_hom(self, h, pos, l, gens, images) {
                let img: BTreeSet<u8> = map.iter().copied().collect();
                if img.len() == l.order() {
                    out.push(map);
                }
            }
            return;
        }
        let go = self.el_order(gens[k]);
        for cand in 0..l.order() as u8 {
            // image order must divide generator order
            if go % l.el_order(cand) != 0 {
                continue;
            }
            images[k] = cand;
            self.epi_search(h, pos, l, gens, k + 1, images, out);
        }
    }
}

/// Greedy small generating set for a subgroup given by members.
pub fn subgroup_generators(g: &FiniteGroup, members: &Members) -> Vec<ElId> {
    let mut gens: Vec<ElId> = Vec::new();
    let mut have: BTreeSet<ElId> = [0u16].into_iter().collect();
    for &x in members {
        if have.contains(&x) {
            continue;
        }
        gens.push(x);
        have = g.closure(&gens).into_iter().collect();
        if have.len() == members.len() {
            break;
        }
    }
    gens
}

/// Try to extend generator images to a homomorphism h -> L; `None` if inconsistent.
fn extend_hom(
    g: &FiniteGroup,
    h: &Members,
    pos: &HashMap<ElId, usize>,
    l: &SmallGroup,
    gens: &[ElId],
    images: &[u8],
) -> Option<Vec<u8>> {
    let mut map: Vec<Option<u8>> = vec![None; h.len()];
    map[0] = Some(l.identity());
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        let x = h[i];
        let fx = map[i].unwrap();
        for (k, &gen) in gens.iter().enumerate() {
            let y = g.mul(gen, x);
            let fy = l.mul(images[k], fx);
            let j = pos[&y];
            match map[j] {
                None => {
                    map[j] = Some(fy);
                    frontier.push(j);
                }
                Some(v) => {
                    if v != fy {
                        return None;
                    }
                }
            }
        }
    }
    // verify multiplicativity over all pairs (cheap at this scale)
    let full: Vec<u8> = map.into_iter().map(|x| x.unwrap()).collect();
    for (i, &x) in h.iter().enumerate() {
        for (j, &y) in h.iter().enumerate() {
            let xy = g.mul(x, y);
            let k = pos[&xy];
            if l.mul(full[i], full[j]) != full[k] {
                return None;
            }
        }
    }
    Some(full)
}

/// Structural names with deterministic disambiguation suffixes.
fn name_classes(g: &FiniteGroup, classes: &[SubgroupClass]) -> Vec<String> {
    let base: Vec<String> = classes
        .iter()
        .map(|c| {
            let n = c.rep.len();
            if n == g.order() {
                return "G".to_string();
            }
            if c.rep.iter().any(|&x| g.el_order(x) == n) {
                return format!("Z{}", n);
            }
            if n % 2 == 0 && is_dihedral(g, &c.rep) {
                return format!("D{}", n / 2);
            }
            format!("U{}", n)
        })
        .collect();
    let mut counts: HashMap<&String, usize> = HashMap::new();
    for b in &base {
        *counts.entry(b).or_insert(0) += 1;
    }
    let mut seen: HashMap<String, usize> = HashMap::new();
    base.iter()
        .map(|b| {
            if counts[b] == 1 {
                b.clone()
            } else {
                let k = seen.entry(b.clone()).or_insert(0);
                *k += 1;
                format!("{}{}", b, (b'a' + (*k as u8) - 1) as char)
            }
        })
        .collect()
}

fn is_dihedral(g: &FiniteGroup, m: &Members) -> bool {
    let n = m.len() / 2;
    // a cyclic subgroup of order n plus an inverting involution
    let cyc: Vec<ElId> = m
        .iter()
        .copied()
        .filter(|&x| {
            let o = g.el_order(x);
            n % o == 0
        })
        .collect();
    for &r in m {
        if g.el_order(r) != n {
            continue;
        }
        let rot = g.closure(&[r]);
        if rot.len() != n {
            continue;
        }
        let rotset: HashSet<ElId> = rot.iter().copied().collect();
        for &s in &cyc {
            if rotset.contains(&s) || g.el_order(s) != 2 {
                continue;
            }
            // s r s^{-1} = r^{-1}
            if g.conj(s, r) == g.inv(r) {
                let gen = g.closure(&[r, s]);
                if gen == *m {
                    return true;
                }
            }
        }
    }
    // Klein four group counts as D2
    if m.len() == 4 && m.iter().all(|&x| x == 0 || g.el_order(x) == 2) {
        return true;
    }
    false
}
