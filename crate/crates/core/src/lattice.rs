//! Closed subgroups of Gamma x O(2): concrete amalgamated subgroups, the
//! symbolic classes containing SO(2), conjugacy classification, Weyl data,
//! n(L,H) numbers and the family table of conjugacy classes.

use crate::angle::Angle;
use crate::group::{ElId, FiniteGroup, Members, SubgroupClass};
use crate::o2::{O2Elem, O2Subgroup};
use crate::smallgrp::{SmallGroup, SmallTag};
use num_integer::Integer;
use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

/// Element of Gamma x O(2).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GElem {
    pub g: ElId,
    pub t: O2Elem,
}

/// A finite subgroup given by its sorted element list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FinSub {
    pub elems: Vec<GElem>,
}

/// Subgroups whose O(2)-part contains SO(2).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SymKind {
    /// H x SO(2)
    ProdSO2,
    /// H x O(2)
    ProdO2,
    /// {(h,k): h in Z iff k is a rotation}; Z normal of index 2 in H
    ZTwoO2 { z: Members },
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SymSub {
    pub h: Members,
    pub kind: SymKind,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GSub {
    Fin(FinSub),
    Sym(SymSub),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Stratum {
    Phi0I,
    Phi0II,
    Phi0III,
    Phi1,
}

/// K-side of a parametrized family.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum KFam {
    O2,
    SO2,
    /// K = D_{mult*n}, n >= 1 the free parameter.
    Dn { mult: u32 },
    /// K = Z_{mult*n}.
    Zn { mult: u32 },
}

/// Quotient shape L. `D(1)` is the reflection-type Z2 quotient; `Z(2)` the
/// rotation-type one (kernel a dihedral subgroup).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LTag {
    Trivial,
    Z(u32),
    D(u32),
}

impl LTag {
    pub fn order(&self) -> usize {
        match *self {
            LTag::Trivial => 1,
            LTag::Z(m) => m as usize,
            LTag::D(m) => 2 * m as usize,
        }
    }
    pub fn small(&self) -> SmallGroup {
        match *self {
            LTag::Trivial => SmallGroup::new(SmallTag::Cyclic(1)),
            LTag::Z(m) => SmallGroup::new(SmallTag::Cyclic(m)),
            LTag::D(m) => SmallGroup::new(SmallTag::Dihedral(m)),
        }
    }
}

/// One conjugacy-class family of closed subgroups of Gamma x O(2).
#[derive(Clone, Debug)]
pub struct Family {
    pub h_class: usize,
    pub k: KFam,
    pub l: LTag,
    pub z_class: usize,
    pub r_class: Option<usize>,
    pub stratum: Stratum,
    /// |W| for generic parameter; for Phi1 families this is the component
    /// count of the Weyl group (the tables print infinity).
    pub weyl_order: usize,
    pub weyl_dim: u8,
    /// representative epimorphism phi: position in h-members -> L element
    pub h_members: Members,
    pub phi: Vec<u8>,
}

pub type ClassId = usize;

pub struct ClassData {
    pub rep: GSub,
    pub stratum: Stratum,
    pub weyl: RefCell<Option<usize>>,
    /// structured name data, set on first identification
    pub name: RefCell<Option<ClassName>>,
}

/// Canonical display data: Amal(H=..., K=..., L=..., Z=..., R=...).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassName {
    pub h_class: usize,
    pub k_kind: KFam,
    pub k_param: u32,
    pub l: LTag,
    pub z_class: usize,
    pub r_class: Option<usize>,
}

pub struct GammaO2 {
    pub gamma: Rc<FiniteGroup>,
    pub gclasses: Vec<SubgroupClass>,
    /// element -> conjugacy class of elements (for characters)
    pub el_class: Vec<usize>,
    pub el_class_reps: Vec<ElId>,
    classes: RefCell<Vec<ClassData>>,
    key_to_id: RefCell<HashMap<Vec<GElem>, ClassId>>,
    sym_to_id: RefCell<HashMap<SymSub, ClassId>>,
    raw_to_id: RefCell<HashMap<GSub, ClassId>>,
    n_memo: RefCell<HashMap<(ClassId, ClassId), usize>>,
    families: RefCell<Option<Rc<Vec<Family>>>>,
    pub(crate) gs1: RefCell<crate::gs1::GS1Registry>,
}

impl GammaO2 {
    pub fn new(gamma: FiniteGroup) -> Self {
        let gclasses = gamma.subgroup_classes();
        // element conjugacy classes
        let n = gamma.order();
        let mut el_class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as u16 {
            if el_class[x as usize] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for g in 0..n as u16 {
                el_class[gamma.conj(g, x) as usize] = c;
            }
        }
        GammaO2 {
            gamma: Rc::new(gamma),
            gclasses,
            el_class,
            el_class_reps: reps,
            classes: RefCell::new(Vec::new()),
            key_to_id: RefCell::new(HashMap::new()),
            sym_to_id: RefCell::new(HashMap::new()),
            raw_to_id: RefCell::new(HashMap::new()),
            n_memo: RefCell::new(HashMap::new()),
            families: RefCell::new(None),
            gs1: RefCell::new(Default::default()),
        }
    }

    pub fn gamma_class_of(&self, m: &Members) -> usize {
        self.gamma.class_of(&self.gclasses, m)
    }

    pub fn class_count(&self) -> usize {
        self.classes.borrow().len()
    }

    pub fn class_rep(&self, id: ClassId) -> GSub {
        self.classes.borrow()[id].rep.clone()
    }

    pub fn class_stratum(&self, id: ClassId) -> Stratum {
        self.classes.borrow()[id].stratum
    }

    // ---------- subgroup element ops ----------

    pub fn mul(&self, a: GElem, b: GElem) -> GElem {
        GElem {
            g: self.gamma.mul(a.g, b.g),
            t: a.t.mul(&b.t),
        }
    }

    pub fn inv(&self, a: GElem) -> GElem {
        GElem {
            g: self.gamma.inv(a.g),
            t: a.t.inv(),
        }
    }

    pub fn conj_elem(&self, c: GElem, x: GElem) -> GElem {
        self.mul(self.mul(c, x), self.inv(c))
    }

    pub fn conj_fin(&self, s: &FinSub, c: GElem) -> FinSub {
        let mut elems: Vec<GElem> = s.elems.iter().map(|&x| self.conj_elem(c, x)).collect();
        elems.sort_unstable();
        FinSub { elems }
    }

    pub fn conj_sym(&self, s: &SymSub, g: ElId) -> SymSub {
        let h = self.gamma.conjugate_members(&s.h, g);
        let kind = match &s.kind {
            SymKind::ZTwoO2 { z } => SymKind::ZTwoO2 {
                z: self.gamma.conjugate_members(z, g),
            },
            k => k.clone(),
        };
        SymSub { h, kind }
    }

    pub fn sym_contains(&self, s: &SymSub, e: GElem) -> bool {
        if s.h.binary_search(&e.g).is_err() {
            return false;
        }
        match &s.kind {
            SymKind::ProdO2 => true,
            SymKind::ProdSO2 => !e.t.is_reflection(),
            SymKind::ZTwoO2 { z } => {
                let in_z = z.binary_search(&e.g).is_ok();
                in_z != e.t.is_reflection()
            }
        }
    }

    pub fn contains(&self, big: &GSub, small: &GSub) -> bool {
        match (big, small) {
            (GSub::Fin(b), GSub::Fin(s)) => s
                .elems
                .iter()
                .all(|e| b.elems.binary_search(e).is_ok()),
            (GSub::Sym(b), GSub::Fin(s)) => s.elems.iter().all(|&e| self.sym_contains(b, e)),
            (GSub::Fin(_), GSub::Sym(_)) => false,
            (GSub::Sym(b), GSub::Sym(s)) => {
                // H-side containment plus component compatibility
                if !s.h.iter().all(|x| b.h.binary_search(x).is_ok()) {
                    return false;
                }
                match (&b.kind, &s.kind) {
                    (SymKind::ProdO2, _) => true,
                    (SymKind::ProdSO2, SymKind::ProdSO2) => true,
                    (SymKind::ProdSO2, _) => false,
                    (SymKind::ZTwoO2 { .. }, SymKind::ProdSO2) => {
                        // s = H_s x SO2 inside b iff H_s subset Z_b
                        let zb = match &b.kind {
                            SymKind::ZTwoO2 { z } => z,
                            _ => unreachable!(),
                        };
                        s.h.iter().all(|x| zb.binary_search(x).is_ok())
                    }
                    (SymKind::ZTwoO2 { z: zb }, SymKind::ZTwoO2 { z: zs }) => {
                        // rotations of s: zs -> must be in zb; reflections: h\zs -> h\zb
                        zs.iter().all(|x| zb.binary_search(x).is_ok())
                            && s.h
                                .iter()
                                .filter(|x| zs.binary_search(x).is_err())
                                .all(|x| zb.binary_search(x).is_err())
                    }
                    (SymKind::ZTwoO2 { .. }, SymKind::ProdO2) => false,
                }
            }
        }
    }

    pub fn intersect(&self, a: &GSub, b: &GSub) -> GSub {
        match (a, b) {
            (GSub::Fin(x), GSub::Fin(y)) => {
                let set: BTreeSet<&GElem> = y.elems.iter().collect();
                GSub::Fin(FinSub {
                    elems: x
                        .elems
                        .iter()
                        .copied()
                        .filter(|e| set.contains(e))
                        .collect(),
                })
            }
            (GSub::Fin(x), GSub::Sym(s)) | (GSub::Sym(s), GSub::Fin(x)) => GSub::Fin(FinSub {
                elems: x
                    .elems
                    .iter()
                    .copied()
                    .filter(|&e| self.sym_contains(s, e))
                    .collect(),
            }),
            (GSub::Sym(x), GSub::Sym(y)) => {
                let hx: BTreeSet<ElId> = x.h.iter().copied().collect();
                let h: Members = y.h.iter().copied().filter(|e| hx.contains(e)).collect();
                let zx = |e: ElId| match &x.kind {
                    SymKind::ProdO2 | SymKind::ProdSO2 => true,
                    SymKind::ZTwoO2 { z } => z.binary_search(&e).is_ok(),
                };
                let zy = |e: ElId| match &y.kind {
                    SymKind::ProdO2 | SymKind::ProdSO2 => true,
                    SymKind::ZTwoO2 { z } => z.binary_search(&e).is_ok(),
                };
                let refl_ok = |e: ElId| {
                    let rx = match &x.kind {
                        SymKind::ProdO2 => true,
                        SymKind::ProdSO2 => false,
                        SymKind::ZTwoO2 { z } => z.binary_search(&e).is_err(),
                    };
                    let ry = match &y.kind {
                        SymKind::ProdO2 => true,
                        SymKind::ProdSO2 => false,
                        SymKind::ZTwoO2 { z } => z.binary_search(&e).is_err(),
                    };
                    rx && ry
                };
                // rotation-part members: those allowed as rotations in both
                let zmem: Members = h
                    .iter()
                    .copied()
                    .filter(|&e| zx(e) && zy(e))
                    .collect();
                let rmem: Members = h.iter().copied().filter(|&e| refl_ok(e)).collect();
                if rmem.is_empty() {
                    GSub::Sym(SymSub {
                        h: zmem,
                        kind: SymKind::ProdSO2,
                    })
                } else {
                    let mut hh = zmem.clone();
                    hh.extend(rmem.iter().copied());
                    hh.sort_unstable();
                    if zmem.len() == hh.len() {
                        GSub::Sym(SymSub {
                            h: hh,
                            kind: SymKind::ProdO2,
                        })
                    } else {
                        GSub::Sym(SymSub {
                            h: hh,
                            kind: SymKind::ZTwoO2 { z: zmem },
                        })
                    }
                }
            }
        }
    }

    // ---------- structure extraction ----------

    pub fn fin_pi1(&self, s: &FinSub) -> Members {
        let mut v: Vec<ElId> = s.elems.iter().map(|e| e.g).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Rotation order of the O(2)-side.
    pub fn fin_rot_order(&self, s: &FinSub) -> u32 {
        s.elems
            .iter()
            .filter(|e| !e.t.is_reflection())
            .map(|e| e.t)
            .collect::<BTreeSet<_>>()
            .len() as u32
    }

    pub fn fin_has_reflection(&self, s: &FinSub) -> bool {
        s.elems.iter().any(|e| e.t.is_reflection())
    }

    /// lcm of all angle denominators (grid resolution).
    pub fn fin_denominator(&self, s: &FinSub) -> i64 {
        let mut l = 1i64;
        for e in &s.elems {
            let d = match e.t {
                O2Elem::Rot(a) => a.den(),
                O2Elem::Refl(a) => a.den(),
            };
            l = l.lcm(&d);
        }
        l
    }

    /// Goursat data of a concrete subgroup.
    pub fn fin_goursat(&self, s: &FinSub) -> GoursatData {
        let h = self.fin_pi1(s);
        let z: Members = s
            .elems
            .iter()
            .filter(|e| e.t == O2Elem::identity())
            .map(|e| e.g)
            .collect();
        let r: Members = {
            let mut v: Vec<ElId> = s
                .elems
                .iter()
                .filter(|e| !e.t.is_reflection())
                .map(|e| e.g)
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let k0_rot: usize = s
            .elems
            .iter()
            .filter(|e| e.g == 0 && !e.t.is_reflection())
            .count();
        let k0_refl: usize = s
            .elems
            .iter()
            .filter(|e| e.g == 0 && e.t.is_reflection())
            .count();
        let k_rot = self.fin_rot_order(s) as usize;
        let has_refl = self.fin_has_reflection(s);
        let k_order = if has_refl { 2 * k_rot } else { k_rot };
        let k0_order = k0_rot + k0_refl;
        let l_order = k_order / k0_order;
        let ltag = if !has_refl {
            if l_order == 1 {
                LTag::Trivial
            } else {
                LTag::Z(l_order as u32)
            }
        } else if k0_refl > 0 {
            // kernel has reflections: rotation-type Z2 quotient (or trivial)
            if l_order == 1 {
                LTag::Trivial
            } else {
                LTag::Z(2)
            }
        } else if l_order == 1 {
            LTag::Trivial
        } else {
            LTag::D((l_order / 2) as u32)
        };
        GoursatData {
            h,
            z,
            r,
            k_rot: k_rot as u32,
            k_has_refl: has_refl,
            ltag,
        }
    }

    // ---------- canonicalization & registry ----------

    fn canonical_fin(&self, s: &FinSub) -> FinSub {
        let den = self.fin_denominator(s).lcm(&2);
        let grid = 2 * den;
        let mut best: Option<FinSub> = None;
        for g in 0..self.gamma.order() as u16 {
            for j in 0..grid {
                for refl in [false, true] {
                    let t = if refl {
                        O2Elem::Refl(Angle::new(j, grid))
                    } else {
                        O2Elem::Rot(Angle::new(j, grid))
                    };
                    let c = self.conj_fin(s, GElem { g, t });
                    if best.as_ref().map_or(true, |b| c < *b) {
                        best = Some(c);
                    }
                }
            }
        }
        best.unwrap()
    }

    fn canonical_sym(&self, s: &SymSub) -> SymSub {
        let mut best: Option<SymSub> = None;
        for g in 0..self.gamma.order() as u16 {
            let c = self.conj_sym(s, g);
            if best.as_ref().map_or(true, |b| c < *b) {
                best = Some(c);
            }
        }
        best.unwrap()
    }

    pub fn class_of(&self, s: &GSub) -> ClassId {
        if let Some(&id) = self.raw_to_id.borrow().get(s) {
            return id;
        }
        let id = match s {
            GSub::Fin(f) => {
                assert!(!f.elems.is_empty());
                let canon = self.canonical_fin(f);
                if let Some(&id) = self.key_to_id.borrow().get(&canon.elems) {
                    self.raw_to_id.borrow_mut().insert(s.clone(), id);
                    return id;
                }
                let stratum = if self.fin_has_reflection(&canon) {
                    Stratum::Phi0II
                } else {
                    Stratum::Phi1
                };
                let id = self.push_class(GSub::Fin(canon.clone()), stratum);
                self.key_to_id.borrow_mut().insert(canon.elems, id);
                id
            }
            GSub::Sym(sym) => {
                let canon = self.canonical_sym(sym);
                if let Some(&id) = self.sym_to_id.borrow().get(&canon) {
                    self.raw_to_id.borrow_mut().insert(s.clone(), id);
                    return id;
                }
                let stratum = match canon.kind {
                    SymKind::ProdSO2 => Stratum::Phi0I,
                    _ => Stratum::Phi0III,
                };
                let id = self.push_class(GSub::Sym(canon.clone()), stratum);
                self.sym_to_id.borrow_mut().insert(canon, id);
                id
            }
        };
        self.raw_to_id.borrow_mut().insert(s.clone(), id);
        id
    }

    fn push_class(&self, rep: GSub, stratum: Stratum) -> ClassId {
        let mut cl = self.classes.borrow_mut();
        cl.push(ClassData {
            rep,
            stratum,
            weyl: RefCell::new(None),
            name: RefCell::new(None),
        });
        cl.len() - 1
    }

    pub fn conjugate_test(&self, a: &GSub, b: &GSub) -> bool {
        self.class_of(a) == self.class_of(b)
    }

    // ---------- conjugates & n-numbers ----------

    /// Distinct conjugates of the class representative whose O(2)-side stays
    /// on the rational grid of denominator `den`.
    pub fn conjugates_on_grid(&self, s: &GSub, den: i64) -> Vec<GSub> {
        match s {
            GSub::Sym(sym) => {
                let mut out: BTreeSet<SymSub> = BTreeSet::new();
                for g in 0..self.gamma.order() as u16 {
                    out.insert(self.conj_sym(sym, g));
                }
                out.into_iter().map(GSub::Sym).collect()
            }
            GSub::Fin(f) => {
                let den = den.lcm(&self.fin_denominator(f)).lcm(&2);
                let grid = 2 * den;
                let mut out: BTreeSet<FinSub> = BTreeSet::new();
                for g in 0..self.gamma.order() as u16 {
                    for j in 0..grid {
                        for refl in [false, true] {
                            let t = if refl {
                                O2Elem::Refl(Angle::new(j, grid))
                            } else {
                                O2Elem::Rot(Angle::new(j, grid))
                            };
                            out.insert(self.conj_fin(f, GElem { g, t }));
                        }
                    }
                }
                out.into_iter().map(GSub::Fin).collect()
            }
        }
    }

    /// n(L,H): the number of distinct conjugates of H containing L.
    /// Both classes must have 0-dimensional Weyl groups (Phi_0).
    pub fn n_number(&self, l_id: ClassId, h_id: ClassId) -> usize {
        if let Some(&v) = self.n_memo.borrow().get(&(l_id, h_id)) {
            return v;
        }
        let l = self.class_rep(l_id);
        let h = self.class_rep(h_id);
        let den = match &l {
            GSub::Fin(f) => self.fin_denominator(f),
            GSub::Sym(_) => 2,
        };
        let v = self
            .conjugates_on_grid(&h, den)
            .iter()
            .filter(|c| self.contains(c, &l))
            .count();
        self.n_memo.borrow_mut().insert((l_id, h_id), v);
        v
    }

    /// |W(H)| for Phi_0 classes (for Phi_1 classes: the component count).
    pub fn weyl_order(&self, id: ClassId) -> usize {
        if let Some(w) = *self.classes.borrow()[id].weyl.borrow() {
            return w;
        }
        let rep = self.class_rep(id);
        let w = match &rep {
            GSub::Sym(s) => match &s.kind {
                SymKind::ProdSO2 => {
                    let n = self.gamma.normalizer(&s.h).len();
                    2 * n / s.h.len()
                }
                SymKind::ProdO2 => {
                    let n = self.gamma.normalizer(&s.h).len();
                    n / s.h.len()
                }
                SymKind::ZTwoO2 { z } => {
                    let nh: HashSet<ElId> =
                        self.gamma.normalizer(&s.h).into_iter().collect();
                    let nz = self.gamma.normalizer(z);
                    let both = nz.iter().filter(|x| nh.contains(x)).count();
                    2 * both / s.h.len()
                }
            },
            GSub::Fin(f) => {
                if self.fin_has_reflection(f) {
                    self.fin_normalizer_order(f) / f.elems.len()
                } else {
                    // Phi1: component count of W = [N+:K] + [N-:K] (see module docs)
                    self.phi1_weyl_components(f)
                }
            }
        };
        *self.classes.borrow()[id].weyl.borrow_mut() = Some(w);
        w
    }

    fn fin_normalizer_order(&self, f: &FinSub) -> usize {
        let den = self.fin_denominator(f).lcm(&2);
        let grid = 2 * den;
        let ngamma = self.gamma.normalizer(&self.fin_pi1(f));
        let mut count = 0usize;
        for &g in &ngamma {
            for j in 0..grid {
                for refl in [false, true] {
                    let t = if refl {
                        O2Elem::Refl(Angle::new(j, grid))
                    } else {
                        O2Elem::Rot(Angle::new(j, grid))
                    };
                    if self.conj_fin(f, GElem { g, t }).elems == f.elems {
                        count += 1;
                    }
                }
            }
        }
        // conjugators counted on the grid of size 2*grid elements of O(2);
        // the normalizer is a finite extension: each coset of the trivial
        // rotation stabilizer appears once per grid step that fixes the group.
        // Rotations fixing a reflection-bearing subgroup form a finite cyclic
        // group fully inside the grid, so `count` is exactly |N| measured in
        // elements whose angles lie on the grid. N itself is finite and lies
        // on the grid, so this is |N|.
        count
    }

    fn phi1_weyl_components(&self, f: &FinSub) -> usize {
        // twisted subgroup K^{phi,l}: N0 = {g in N(K): phi o c_g = phi},
        // N- = {g: phi o c_g = phi^{-1}}; components = [N0:K] + [N-:K]
        let k = self.fin_pi1(f);
        let phi = self.fin_twist_map(f);
        let nk = self.gamma.normalizer(&k);
        let mut n0 = 0usize;
        let mut n1 = 0usize;
        for &g in &nk {
            let ok0 = k
                .iter()
                .all(|&x| phi[&self.gamma.conj(g, x)] == phi[&x]);
            let ok1 = k
                .iter()
                .all(|&x| phi[&self.gamma.conj(g, x)] == phi[&x].neg());
            if ok0 {
                n0 += 1;
            }
            if ok1 {
                n1 += 1;
            }
        }
        (n0 + n1) / k.len()
    }

    /// For a rotation-only subgroup: the map gamma-member -> phi(gamma) as an
    /// angle, where the subgroup is {(g, z): z^l = phi(g)} with l the fiber size.
    pub fn fin_twist_map(&self, f: &FinSub) -> HashMap<ElId, Angle> {
        let l = f
            .elems
            .iter()
            .filter(|e| e.g == 0 && !e.t.is_reflection())
            .count() as i64;
        let mut map = HashMap::new();
        for e in &f.elems {
            if let O2Elem::Rot(a) = e.t {
                map.entry(e.g).or_insert_with(|| a.times(l));
            }
        }
        map
    }

    pub fn fin_fold(&self, f: &FinSub) -> u32 {
        f.elems
            .iter()
            .filter(|e| e.g == 0 && !e.t.is_reflection())
            .count() as u32
    }

    // ---------- family enumeration ----------

    pub fn families(&self) -> Rc<Vec<Family>> {
        if let Some(f) = self.families.borrow().as_ref() {
            return Rc::clone(f);
        }
        let fams = Rc::new(self.enumerate_families());
        *self.families.borrow_mut() = Some(Rc::clone(&fams));
        fams
    }

    fn enumerate_families(&self) -> Vec<Family> {
        let mut out = Vec::new();
        let n0: u32 = 5; // generic instantiation parameter
        for (hc, class) in self.gclasses.iter().enumerate() {
            let h = class.rep.clone();
            let trivial_phi = vec![0u8; h.len()];
            // product families: H x Z_n (Phi1), H x SO2, H x D_n, H x O2
            for (k, stratum) in [
                (KFam::Zn { mult: 1 }, Stratum::Phi1),
                (KFam::SO2, Stratum::Phi0I),
                (KFam::Dn { mult: 1 }, Stratum::Phi0II),
                (KFam::O2, Stratum::Phi0III),
            ] {
                out.push(self.make_family(
                    hc,
                    k,
                    LTag::Trivial,
                    h.clone(),
                    trivial_phi.clone(),
                    stratum,
                    n0,
                ));
            }
            // nontrivial quotients
            for ltag in self.l_candidates(h.len()) {
                let small = ltag.small();
                let epis = self.gamma.epimorphisms_onto(&h, &small);
                if epis.is_empty() {
                    continue;
                }
                for (k, stratum) in self.k_shapes_for(&ltag) {
                    let orbits =
                        self.epi_pair_orbits(&h, &epis, &small, &ltag, &k, n0);
                    for phi in orbits {
                        out.push(self.make_family(hc, k, ltag, h.clone(), phi, stratum, n0));
                    }
                }
            }
        }
        // deterministic order: stratum group, then H class, K, L, Z, R
        out.sort_by_key(|f| {
            (
                f.stratum,
                f.h_class,
                f.k,
                f.l,
                f.z_class,
                f.r_class,
            )
        });
        out
    }

    fn l_candidates(&self, h_order: usize) -> Vec<LTag> {
        let mut v = Vec::new();
        for m in 2..=h_order as u32 {
            if h_order % m as usize == 0 {
                v.push(LTag::Z(m));
            }
        }
        for m in 1..=(h_order / 2) as u32 {
            if h_order % (2 * m as usize) == 0 {
                v.push(LTag::D(m));
            }
        }
        v
    }

    fn k_shapes_for(&self, l: &LTag) -> Vec<(KFam, Stratum)> {
        match *l {
            LTag::Trivial => vec![],
            LTag::Z(2) => vec![
                (KFam::Zn { mult: 2 }, Stratum::Phi1),
                (KFam::Dn { mult: 2 }, Stratum::Phi0II),
            ],
            LTag::Z(m) => vec![(KFam::Zn { mult: m }, Stratum::Phi1)],
            LTag::D(1) => vec![
                (KFam::Dn { mult: 1 }, Stratum::Phi0II),
                (KFam::O2, Stratum::Phi0III),
            ],
            LTag::D(m) => vec![(KFam::Dn { mult: m }, Stratum::Phi0II)],
        }
    }

    /// K-side epimorphisms at generic parameter, as maps K-element -> L-element,
    /// plus the list of K elements. The first entry is the canonical psi_0.
    fn k_side(&self, k: &KFam, l: &LTag, n: u32) -> (Vec<O2Elem>, Vec<Vec<u8>>) {
        let small = l.small();
        match (*k, *l) {
            (KFam::Zn { mult }, LTag::Z(m)) => {
                assert_eq!(mult, m);
                let kk = O2Subgroup::Cyclic(m * n).elements();
                // canonical psi: Rot(j/(mn)) -> j mod m; all epis with kernel Z_n
                // are Aut(L) twists of it
                let psi0: Vec<u8> = kk
                    .iter()
                    .map(|e| match e {
                        O2Elem::Rot(a) => {
                            let j = (a.num() * (m as i64 * n as i64) / a.den())
                                .rem_euclid(m as i64 * n as i64);
                            (j % m as i64) as u8
                        }
                        _ => unreachable!(),
                    })
                    .collect();
                let mut epis = vec![psi0.clone()];
                for aut in small.automorphisms() {
                    epis.push(psi0.iter().map(|&v| aut[v as usize]).collect());
                }
                dedup_keep_first(&mut epis);
                (kk, epis)
            }
            (KFam::Dn { mult }, LTag::Z(2)) => {
                assert_eq!(mult, 2);
                let kk = O2Subgroup::Dihedral(2 * n, Angle::zero()).elements();
                // kernels: D_n at phase 0 and at phase 1/(2n)
                let mut epis = Vec::new();
                for shift in 0..2i64 {
                    let psi: Vec<u8> = kk
                        .iter()
                        .map(|e| {
                            let j = match e {
                                O2Elem::Rot(a) => a.num() * (2 * n as i64) / a.den(),
                                O2Elem::Refl(a) => {
                                    a.num() * (2 * n as i64) / a.den() + shift
                                }
                            };
                            (j.rem_euclid(2) % 2) as u8
                        })
                        .collect();
                    epis.push(psi);
                }
                dedup_keep_first(&mut epis);
                (kk, epis)
            }
            (KFam::Dn { mult }, LTag::D(m)) => {
                assert_eq!(mult, m);
                let kk = O2Subgroup::Dihedral(m * n, Angle::zero()).elements();
                let mn = m as i64 * n as i64;
                let psi0: Vec<u8> = kk
                    .iter()
                    .map(|e| match e {
                        O2Elem::Rot(a) => {
                            let j = (a.num() * mn / a.den()).rem_euclid(mn);
                            (j % m as i64) as u8
                        }
                        O2Elem::Refl(a) => {
                            let j = (a.num() * mn / a.den()).rem_euclid(mn);
                            // Refl(j/(mn)) -> s r^{-j}
                            (m as i64 + (-j).rem_euclid(m as i64)) as u8
                        }
                    })
                    .collect();
                let mut epis = vec![psi0.clone()];
                for aut in small.automorphisms() {
                    epis.push(psi0.iter().map(|&v| aut[v as usize]).collect());
                }
                dedup_keep_first(&mut epis);
                (kk, epis)
            }
            (KFam::O2, LTag::D(1)) => (vec![], vec![vec![]]), // handled structurally
            _ => panic!("incompatible K/L shapes"),
        }
    }

    /// Orbits of Epi(H,L) x Epi_K under N(H) x N_O2(K) x Aut(L); returns one
    /// representative phi per orbit (lexicographically least pair).
    fn epi_pair_orbits(
        &self,
        h: &Members,
        epis_h: &[Vec<u8>],
        small: &SmallGroup,
        l: &LTag,
        k: &KFam,
        n0: u32,
    ) -> Vec<Vec<u8>> {
        let (kk, epis_k) = self.k_side(k, l, n0);
        let auts = small.automorphisms();
        let pos: HashMap<ElId, usize> = h.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let nh = self.gamma.normalizer(h);
        // K-side conjugator grid: N_O2(K)
        let kconj: Vec<GElem> = if kk.is_empty() {
            vec![]
        } else {
            let den = 2 * kk.len() as i64; // grid 1/(2|K-rot|) covers N_O2(K)
            let mut v = Vec::new();
            for j in 0..den {
                v.push(GElem {
                    g: 0,
                    t: O2Elem::Rot(Angle::new(j, den)),
                });
                v.push(GElem {
                    g: 0,
                    t: O2Elem::Refl(Angle::new(j, den)),
                });
            }
            v
        };
        let kk_pos: HashMap<O2Elem, usize> =
            kk.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        type Pair = (Vec<u8>, Vec<u8>);
        let mut remaining: BTreeSet<Pair> = BTreeSet::new();
        for eh in epis_h {
            for ek in &epis_k {
                remaining.insert((eh.clone(), ek.clone()));
            }
        }
        let mut orbit_reps = Vec::new();
        while let Some(start) = remaining.iter().next().cloned() {
            let mut orbit: BTreeSet<Pair> = BTreeSet::new();
            let mut frontier = vec![start.clone()];
            orbit.insert(start);
            while let Some((phi, psi)) = frontier.pop() {
                // gamma-conjugation on phi
                for &g in &nh {
                    let phi2: Vec<u8> = h
                        .iter()
                        .map(|&x| phi[pos[&self.gamma.conj(g, x)]])
                        .collect();
                    let p = (phi2, psi.clone());
                    if orbit.insert(p.clone()) {
                        frontier.push(p);
                    }
                }
                // O2-conjugation on psi
                for c in &kconj {
                    if kk.is_empty() {
                        break;
                    }
                    // psi2(x) = psi(c^{-1} x c); keep only if image stays in K
                    let mut ok = true;
                    let psi2: Vec<u8> = kk
                        .iter()
                        .map(|x| {
                            let y = c.t.inv().mul(x).mul(&c.t);
                            match kk_pos.get(&y) {
                                Some(&i) => psi[i],
                                None => {
                                    ok = false;
                                    0
                                }
                            }
                        })
                        .collect();
                    if !ok {
                        continue;
                    }
                    let p = (phi.clone(), psi2);
                    if orbit.insert(p.clone()) {
                        frontier.push(p);
                    }
                }
                // simultaneous Aut(L)
                for a in &auts {
                    let phi2: Vec<u8> = phi.iter().map(|&v| a[v as usize]).collect();
                    let psi2: Vec<u8> = psi.iter().map(|&v| a[v as usize]).collect();
                    let p = (phi2, psi2);
                    if orbit.insert(p.clone()) {
                        frontier.push(p);
                    }
                }
            }
            // normalize the representative to the canonical psi_0 component;
            // every orbit contains such a pair (Aut(L) acts transitively on
            // the K-side epimorphisms with a given kernel, and the two
            // dihedral kernels in the Z(2) case are O(2)-conjugate)
            let psi0 = &epis_k[0];
            let rep = orbit
                .iter()
                .filter(|p| p.1 == *psi0)
                .min()
                .expect("orbit misses the canonical K-side epimorphism")
                .clone();
            orbit_reps.push(rep.0);
            for p in orbit {
                remaining.remove(&p);
            }
        }
        orbit_reps.sort();
        orbit_reps
    }

    fn make_family(
        &self,
        h_class: usize,
        k: KFam,
        l: LTag,
        h_members: Members,
        phi: Vec<u8>,
        stratum: Stratum,
        n0: u32,
    ) -> Family {
        let small = l.small();
        let z: Members = h_members
            .iter()
            .enumerate()
            .filter(|(i, _)| phi[*i] == 0)
            .map(|(_, &x)| x)
            .collect();
        let z_class = self.gamma_class_of(&z);
        let r_class = match l {
            LTag::D(_) => {
                let r: Members = h_members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| small.in_rotation_part(phi[*i]))
                    .map(|(_, &x)| x)
                    .collect();
                Some(self.gamma_class_of(&r))
            }
            _ => None,
        };
        let fam = Family {
            h_class,
            k,
            l,
            z_class,
            r_class,
            stratum,
            weyl_order: 0,
            weyl_dim: if stratum == Stratum::Phi1 { 1 } else { 0 },
            h_members,
            phi,
        };
        let sub = self.instantiate(&fam, n0);
        let id = self.class_of(&sub);
        let w = self.weyl_order(id);
        Family {
            weyl_order: w,
            ..fam
        }
    }

    /// Concrete subgroup for the family at parameter `n`.
    pub fn instantiate(&self, fam: &Family, n: u32) -> GSub {
        match fam.k {
            KFam::SO2 => GSub::Sym(SymSub {
                h: fam.h_members.clone(),
                kind: SymKind::ProdSO2,
            }),
            KFam::O2 => {
                if fam.l == LTag::Trivial {
                    GSub::Sym(SymSub {
                        h: fam.h_members.clone(),
                        kind: SymKind::ProdO2,
                    })
                } else {
                    let z: Members = fam
                        .h_members
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| fam.phi[*i] == 0)
                        .map(|(_, &x)| x)
                        .collect();
                    GSub::Sym(SymSub {
                        h: fam.h_members.clone(),
                        kind: SymKind::ZTwoO2 { z },
                    })
                }
            }
            KFam::Zn { .. } | KFam::Dn { .. } => {
                let (kk, epis_k) = match (fam.k, fam.l) {
                    (KFam::Zn { mult: 1 }, LTag::Trivial) => (
                        O2Subgroup::Cyclic(n).elements(),
                        vec![vec![0u8; n as usize]],
                    ),
                    (KFam::Dn { mult: 1 }, LTag::Trivial) => (
                        O2Subgroup::Dihedral(n, Angle::zero()).elements(),
                        vec![vec![0u8; 2 * n as usize]],
                    ),
                    _ => self.k_side(&fam.k, &fam.l, n),
                };
                let psi = &epis_k[0];
                let mut elems = Vec::new();
                for (i, &h) in fam.h_members.iter().enumerate() {
                    for (j, &t) in kk.iter().enumerate() {
                        if fam.phi[i] == psi[j] {
                            elems.push(GElem { g: h, t });
                        }
                    }
                }
                elems.sort_unstable();
                GSub::Fin(FinSub { elems })
            }
        }
    }

    /// The fold of a Phi1 family instantiation: Zn{mult} at parameter n is an
    /// |Im|=mult twisted subgroup with fold n.
    pub fn family_list_sorted(&self) -> Vec<Family> {
        self.families().as_ref().clone()
    }

    // ---------- naming ----------

    /// Identify the structured name of a registered class.
    pub fn class_name(&self, id: ClassId) -> ClassName {
        if let Some(n) = self.classes.borrow()[id].name.borrow().as_ref() {
            return n.clone();
        }
        let rep = self.class_rep(id);
        let name = match &rep {
            GSub::Sym(s) => {
                let h_class = self.gamma_class_of(&s.h);
                match &s.kind {
                    SymKind::ProdSO2 => ClassName {
                        h_class,
                        k_kind: KFam::SO2,
                        k_param: 0,
                        l: LTag::Trivial,
                        z_class: h_class,
                        r_class: None,
                    },
                    SymKind::ProdO2 => ClassName {
                        h_class,
                        k_kind: KFam::O2,
                        k_param: 0,
                        l: LTag::Trivial,
                        z_class: h_class,
                        r_class: None,
                    },
                    SymKind::ZTwoO2 { z } => ClassName {
                        h_class,
                        k_kind: KFam::O2,
                        k_param: 0,
                        l: LTag::D(1),
                        z_class: self.gamma_class_of(z),
                        r_class: None,
                    },
                }
            }
            GSub::Fin(f) => {
                let gd = self.fin_goursat(f);
                let h_class = self.gamma_class_of(&gd.h);
                let z_class = self.gamma_class_of(&gd.z);
                let r_class = match gd.ltag {
                    LTag::D(_) => Some(self.gamma_class_of(&gd.r)),
                    _ => None,
                };
                let (k_kind, k_param) = if gd.k_has_refl {
                    (
                        KFam::Dn {
                            mult: match gd.ltag {
                                LTag::D(m) => m,
                                LTag::Z(2) => 2,
                                _ => 1,
                            },
                        },
                        gd.k_rot,
                    )
                } else {
                    (
                        KFam::Zn {
                            mult: match gd.ltag {
                                LTag::Z(m) => m,
                                _ => 1,
                            },
                        },
                        gd.k_rot,
                    )
                };
                ClassName {
                    h_class,
                    k_kind,
                    k_param,
                    l: gd.ltag,
                    z_class,
                    r_class,
                }
            }
        };
        *self.classes.borrow()[id].name.borrow_mut() = Some(name.clone());
        name
    }

    /// Printable canonical name.
    pub fn render_name(&self, id: ClassId) -> String {
        let n = self.class_name(id);
        let hname = &self.gclasses[n.h_class].name;
        let k = match n.k_kind {
            KFam::O2 => "O2".to_string(),
            KFam::SO2 => "SO2".to_string(),
            KFam::Dn { .. } => format!("D({})", n.k_param),
            KFam::Zn { .. } => format!("Z({})", n.k_param),
        };
        let mut s = format!("Amal(H={}, K={}", hname, k);
        match n.l {
            LTag::Trivial => {}
            LTag::Z(m) => s += &format!(", L=Z({})", m),
            LTag::D(m) => s += &format!(", L=D({})", m),
        }
        if n.l != LTag::Trivial {
            s += &format!(", Z={}", self.gclasses[n.z_class].name);
            if let (LTag::D(m), Some(r)) = (n.l, n.r_class) {
                if m >= 2 {
                    s += &format!(", R={}", self.gclasses[r].name);
                }
            }
        }
        s + ")"
    }
}

#[derive(Debug, Clone)]
pub struct GoursatData {
    pub h: Members,
    pub z: Members,
    pub r: Members,
    pub k_rot: u32,
    pub k_has_refl: bool,
    pub ltag: LTag,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn ctx_s4() -> GammaO2 {
        GammaO2::new(samples::s4())
    }

    #[test]
    fn amalgamated_order_formula() {
        // |H x_L K| = |Z| |L| |K0| on instantiated families
        let ctx = ctx_s4();
        let fams = ctx.families();
        for fam in fams.iter() {
            if matches!(fam.k, KFam::SO2 | KFam::O2) {
                continue;
            }
            for n in [1u32, 2, 3] {
                if let GSub::Fin(f) = ctx.instantiate(fam, n) {
                    let gd = ctx.fin_goursat(&f);
                    let lorder = fam.l.order();
                    let k_rot = match fam.k {
                        KFam::Zn { mult } => mult * n,
                        KFam::Dn { mult } => mult * n,
                        _ => unreachable!(),
                    } as usize;
                    let k_order = match fam.k {
                        KFam::Zn { .. } => k_rot,
                        KFam::Dn { .. } => 2 * k_rot,
                        _ => unreachable!(),
                    };
                    let k0 = k_order / lorder;
                    assert_eq!(
                        f.elems.len(),
                        gd.z.len() * lorder * k0,
                        "order formula for {:?} at n={}",
                        fam,
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn s4_family_count_is_100() {
        let ctx = ctx_s4();
        assert_eq!(ctx.families().len(), 100);
    }

    #[test]
    fn trivial_gamma_families() {
        let ctx = GammaO2::new(FiniteGroup::from_generators("Z1", 1, &[]).unwrap());
        let fams = ctx.families();
        assert_eq!(fams.len(), 4);
        let kinds: Vec<KFam> = fams.iter().map(|f| f.k).collect();
        assert!(kinds.contains(&KFam::O2));
        assert!(kinds.contains(&KFam::SO2));
        assert!(kinds.contains(&KFam::Dn { mult: 1 }));
        assert!(kinds.contains(&KFam::Zn { mult: 1 }));
    }

    #[test]
    fn conjugacy_distinguishes_r_data() {
        // In S4 x O(2): H=D2-plane Klein, K=D_{2n}, L=D2, the two classes with
        // R = <double transposition> vs R = <transposition> are distinct.
        let ctx = ctx_s4();
        let fams = ctx.families();
        let d2 = samples::s4_class(&ctx.gamma, &ctx.gclasses, "D2planes");
        let matching: Vec<&Family> = fams
            .iter()
            .filter(|f| {
                f.h_class == d2 && f.k == (KFam::Dn { mult: 2 }) && f.l == LTag::D(2)
            })
            .collect();
        assert_eq!(matching.len(), 2);
        let a = ctx.instantiate(matching[0], 3);
        let b = ctx.instantiate(matching[1], 3);
        assert!(!ctx.conjugate_test(&a, &b));
        assert!(ctx.conjugate_test(&a, &a));
    }

    #[test]
    fn dihedral_phase_is_conjugated_away() {
        let ctx = ctx_s4();
        // Z1 x D3 at phase 0 and at phase 1/6 are conjugate via a rotation
        let mk = |phase: Angle| {
            let elems: Vec<GElem> = O2Subgroup::Dihedral(3, phase)
                .elements()
                .into_iter()
                .map(|t| GElem { g: 0, t })
                .collect();
            let mut elems = elems;
            elems.sort_unstable();
            GSub::Fin(FinSub { elems })
        };
        assert!(ctx.conjugate_test(&mk(Angle::zero()), &mk(Angle::new(1, 6))));
    }

    #[test]
    fn weyl_orders_match_table_examples() {
        let ctx = ctx_s4();
        // (S4 x O2) -> |W| = 1;  (Z1 x SO2) -> 48;  (Z1 x Dn) -> 48
        let full = GSub::Sym(SymSub {
            h: (0..24u16).collect(),
            kind: SymKind::ProdO2,
        });
        assert_eq!(ctx.weyl_order(ctx.class_of(&full)), 1);
        let so2 = GSub::Sym(SymSub {
            h: vec![0],
            kind: SymKind::ProdSO2,
        });
        assert_eq!(ctx.weyl_order(ctx.class_of(&so2)), 48);
        let fams = ctx.families();
        let z1dn = fams
            .iter()
            .find(|f| {
                f.h_class == 0 && f.k == (KFam::Dn { mult: 1 }) && f.l == LTag::Trivial
            })
            .unwrap();
        assert_eq!(z1dn.weyl_order, 48);
    }

    #[test]
    fn n_number_dihedral_alignment() {
        // In O(2) viewed inside Z1 x O(2): n(D_k, D_n) = 1 for k | n
        let ctx = GammaO2::new(FiniteGroup::from_generators("Z1", 1, &[]).unwrap());
        let mk = |n: u32| {
            let mut elems: Vec<GElem> = O2Subgroup::Dihedral(n, Angle::zero())
                .elements()
                .into_iter()
                .map(|t| GElem { g: 0, t })
                .collect();
            elems.sort_unstable();
            GSub::Fin(FinSub { elems })
        };
        let d2 = ctx.class_of(&mk(2));
        let d6 = ctx.class_of(&mk(6));
        assert_eq!(ctx.n_number(d2, d6), 1);
        assert_eq!(ctx.n_number(d6, d6), 1);
        assert_eq!(ctx.weyl_order(d6), 2);
    }

    #[test]
    fn goursat_of_intersection_is_consistent() {
        let ctx = ctx_s4();
        let fams = ctx.families();
        // intersect (S4 x O2-as-Z2-quotient...) pick two finite instances and
        // verify the intersection is a subgroup with the order formula.
        let f1 = fams
            .iter()
            .find(|f| f.stratum == Stratum::Phi0II && f.l == LTag::D(2))
            .unwrap();
        let a = ctx.instantiate(f1, 2);
        let b = ctx.instantiate(f1, 4);
        if let (GSub::Fin(x), GSub::Fin(_)) = (&a, &b) {
            let i = ctx.intersect(&a, &b);
            if let GSub::Fin(f) = &i {
                // closed under multiplication
                for p in &f.elems {
                    for q in &f.elems {
                        let m = ctx.mul(*p, *q);
                        assert!(f.elems.binary_search(&m).is_ok());
                    }
                }
                assert!(f.elems.len() <= x.elems.len());
            }
        }
    }
}

fn dedup_keep_first(v: &mut Vec<Vec<u8>>) {
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    v.retain(|x| seen.insert(x.clone()));
}
