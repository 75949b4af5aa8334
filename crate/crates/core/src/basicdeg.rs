//! Basic degrees of -Id on irreducible representations: Burnside-valued
//! degrees without parameter, twisted degrees over Gamma x S^1, and the
//! gradient basic degrees for Gamma x S^1 and Gamma x O(2).

use crate::angle::Angle;
use crate::burnside::{EulerElement, GElt};
use crate::chartab::CharacterTable;
use crate::euler::EulerCtx;
use crate::group::Members;
use crate::gs1::{GS1Elt, GS1Id, TwistedRep};
use crate::lattice::{ClassId, GSub, GammaO2, KFam, Stratum, SymKind};
use crate::o2::O2Elem;
use crate::smallgrp::{SmallGroup, SmallTag};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// The three kinds of irreducible Gamma x O(2)-representations, referred to
/// by the index of the real irreducible Gamma-character.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IrrKind {
    /// V_j with trivial O(2)-action.
    TypeI(usize),
    /// V_j tensor the sign representation of O(2)/SO(2).
    TypeII(usize),
    /// V_j tensor the 2-dimensional l-folded O(2)-representation.
    TypeIII { j: usize, l: u32 },
}

/// A finite-dimensional representation as multiplicities of irreducibles.
pub type RepVector = Vec<(IrrKind, u32)>;

pub struct DegreeCtx<'a> {
    pub e: EulerCtx<'a>,
    pub tab: &'a CharacterTable,
    fixdim_memo: RefCell<HashMap<(ClassId, IrrKind), i64>>,
    basic_memo: RefCell<HashMap<IrrKind, EulerElement>>,
    gs1_basic_memo: RefCell<HashMap<IrrKind, GS1Elt>>,
}

impl<'a> DegreeCtx<'a> {
    pub fn new(ctx: &'a GammaO2, tab: &'a CharacterTable) -> Self {
        DegreeCtx {
            e: EulerCtx::new(ctx),
            tab,
            fixdim_memo: RefCell::new(HashMap::new()),
            basic_memo: RefCell::new(HashMap::new()),
            gs1_basic_memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &'a GammaO2 {
        self.e.ctx
    }

    // ---------- fixed dimensions ----------

    /// dim of the fixed space of the class representative on the irreducible.
    pub fn fixdim(&self, id: ClassId, kind: IrrKind) -> i64 {
        if let Some(&v) = self.fixdim_memo.borrow().get(&(id, kind)) {
            return v;
        }
        let ctx = self.ctx();
        let chi = |g: u16| match kind {
            IrrKind::TypeI(j) | IrrKind::TypeII(j) | IrrKind::TypeIII { j, .. } => {
                self.tab.real_char_on(j, g)
            }
        };
        let v: f64 = match ctx.class_rep(id) {
            GSub::Fin(f) => {
                let mut s = 0.0;
                for el in &f.elems {
                    s += match (kind, el.t) {
                        (IrrKind::TypeI(_), _) => chi(el.g),
                        (IrrKind::TypeII(_), t) => {
                            if t.is_reflection() {
                                -chi(el.g)
                            } else {
                                chi(el.g)
                            }
                        }
                        (IrrKind::TypeIII { l, .. }, O2Elem::Rot(a)) => {
                            chi(el.g) * 2.0 * a.times(l as i64).cos2pi()
                        }
                        (IrrKind::TypeIII { .. }, O2Elem::Refl(_)) => 0.0,
                    };
                }
                s / f.elems.len() as f64
            }
            GSub::Sym(sym) => match (kind, &sym.kind) {
                (IrrKind::TypeIII { .. }, _) => 0.0,
                (IrrKind::TypeI(_), _) => {
                    sym.h.iter().map(|&g| chi(g)).sum::<f64>() / sym.h.len() as f64
                }
                (IrrKind::TypeII(_), SymKind::ProdSO2) => {
                    sym.h.iter().map(|&g| chi(g)).sum::<f64>() / sym.h.len() as f64
                }
                (IrrKind::TypeII(_), SymKind::ProdO2) => 0.0,
                (IrrKind::TypeII(_), SymKind::ZTwoO2 { z }) => {
                    let mut s = 0.0;
                    for &g in &sym.h {
                        if z.binary_search(&g).is_ok() {
                            s += chi(g);
                        } else {
                            s -= chi(g);
                        }
                    }
                    s / sym.h.len() as f64
                }
            },
        };
        let r = v.round();
        assert!(
            (v - r).abs() < 1e-6,
            "non-integral fixed dimension {v} for class {id}"
        );
        self.fixdim_memo.borrow_mut().insert((id, kind), r as i64);
        r as i64
    }

    pub fn fixdim_rep(&self, id: ClassId, rep: &RepVector) -> i64 {
        rep.iter()
            .map(|(k, m)| self.fixdim(id, *k) * *m as i64)
            .sum()
    }

    // ---------- orbit types ----------

    /// Phi_0 candidate classes whose rotation order divides `rot_bound`.
    fn phi0_universe(&self, rot_bound: u32) -> Vec<ClassId> {
        let ctx = self.ctx();
        let fams = ctx.families();
        let mut out: BTreeSet<ClassId> = BTreeSet::new();
        let divisors: Vec<u32> = (1..=rot_bound).filter(|d| rot_bound % d == 0).collect();
        for fam in fams.iter() {
            match fam.k {
                KFam::SO2 | KFam::O2 => {
                    out.insert(ctx.class_of(&ctx.instantiate(fam, 1)));
                }
                KFam::Dn { mult } => {
                    for &m in &divisors {
                        if m % mult == 0 {
                            out.insert(ctx.class_of(&ctx.instantiate(fam, m / mult)));
                        }
                    }
                }
                KFam::Zn { .. } => {}
            }
        }
        out.into_iter().collect()
    }

    /// Rotation-order bound for isotropy groups of the given representation.
    fn rot_bound(&self, rep: &RepVector) -> u32 {
        let exp = (0..self.ctx().gamma.order() as u16)
            .map(|x| self.ctx().gamma.el_order(x) as u32)
            .fold(1u32, |a, b| num_integer::lcm(a, b));
        let mut l_lcm = 1u32;
        for (k, _) in rep {
            if let IrrKind::TypeIII { l, .. } = k {
                l_lcm = num_integer::lcm(l_lcm, *l);
            }
        }
        exp * l_lcm
    }

    /// Orbit types of the representation among Phi_0 classes: classes L with
    /// positive fixed dimension such that no strictly larger class has the
    /// same fixed dimension (saturation criterion).
    pub fn orbit_types_phi0(&self, rep: &RepVector) -> Vec<ClassId> {
        let ctx = self.ctx();
        let universe: Vec<ClassId> = self
            .phi0_universe(self.rot_bound(rep))
            .into_iter()
            .filter(|&id| self.fixdim_rep(id, rep) > 0)
            .collect();
        universe
            .iter()
            .copied()
            .filter(|&l| {
                let d = self.fixdim_rep(l, rep);
                !universe.iter().any(|&m| {
                    m != l && self.fixdim_rep(m, rep) == d && ctx.n_number(l, m) > 0
                })
            })
            .collect()
    }

    // ---------- no-parameter degree (Burnside valued) ----------

    /// G-degree of -Id on the unit ball of the representation, computed by
    /// the recurrence over the Phi_0 orbit types.
    pub fn deg_noparam(&self, rep: &RepVector) -> GElt {
        let ctx = self.ctx();
        let full = self.e.unit().coeffs.keys().next().copied().unwrap();
        let mut cands = self.orbit_types_phi0(rep);
        if !cands.contains(&full) {
            cands.push(full);
        }
        cands.sort_by_key(|&l| std::cmp::Reverse(measure(ctx, l)));
        let mut coeffs: GElt = BTreeMap::new();
        for &l in &cands {
            let local = if self.fixdim_rep(l, rep) % 2 == 0 {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            };
            let mut num = local;
            for (&m, c) in &coeffs {
                if c.is_zero() || m == l {
                    continue;
                }
                let k = ctx.n_number(l, m) * ctx.weyl_order(m);
                num -= c * BigInt::from(k as i64);
            }
            let w = BigInt::from(ctx.weyl_order(l) as i64);
            let (q, r) = num.div_rem(&w);
            assert!(r.is_zero(), "degree recurrence not exact at class {l}");
            if !q.is_zero() {
                coeffs.insert(l, q);
            }
        }
        coeffs
    }

    // ---------- Gamma x S^1 twisted side ----------

    /// All twisted classes (K, phi) of Gamma at the given fold.
    fn twisted_universe(&self, fold: u32) -> Vec<(GS1Id, TwistedRep)> {
        let ctx = self.ctx();
        let mut out: Vec<(GS1Id, TwistedRep)> = Vec::new();
        let mut seen: BTreeSet<GS1Id> = BTreeSet::new();
        for class in &ctx.gclasses {
            let k = class.rep.clone();
            let exp = k
                .iter()
                .map(|&x| ctx.gamma.el_order(x) as u32)
                .fold(1u32, num_integer::lcm);
            for m in 1..=exp {
                if exp % m != 0 {
                    continue;
                }
                let small = SmallGroup::new(SmallTag::Cyclic(m));
                for epi in ctx.gamma.epimorphisms_onto(&k, &small) {
                    let rep = TwistedRep {
                        phi: epi
                            .iter()
                            .map(|&v| Angle::new(v as i64, m as i64))
                            .collect(),
                        k: k.clone(),
                        fold,
                    };
                    let id = ctx.gs1_twisted_id(&rep);
                    if seen.insert(id) {
                        let canon = match ctx.gs1_class(id) {
                            crate::gs1::GS1Class::Twisted(t) => t,
                            _ => unreachable!(),
                        };
                        out.push((id, canon));
                    }
                }
            }
        }
        out
    }

    /// dim of the fixed space of a twisted subgroup on the fold-l rep vector
    /// (only TypeIII entries with matching fold contribute).
    fn twisted_fixdim(&self, t: &TwistedRep, rep: &RepVector) -> i64 {
        let mut s = 0.0;
        for (kind, mult) in rep {
            if let IrrKind::TypeIII { j, l } = kind {
                assert_eq!(*l, t.fold, "mixed folds in twisted fixdim");
                let mut acc = 0.0;
                for (x, a) in t.k.iter().zip(&t.phi) {
                    acc += self.tab.real_char_on(*j, *x) * 2.0 * a.cos2pi();
                }
                s += *mult as f64 * acc / t.k.len() as f64;
            }
        }
        let r = s.round();
        assert!((s - r).abs() < 1e-6, "non-integral twisted fixed dim {s}");
        r as i64
    }

    /// Twisted basic degree over Gamma x S^1 at fold l (Phi_1 supported).
    pub fn twisted_deg(&self, rep: &RepVector, fold: u32) -> GS1Elt {
        let ctx = self.ctx();
        let universe: Vec<(GS1Id, TwistedRep)> = self
            .twisted_universe(fold)
            .into_iter()
            .filter(|(_, t)| self.twisted_fixdim(t, rep) > 0)
            .collect();
        // orbit types among twisted classes by the saturation criterion
        let cands: Vec<(GS1Id, TwistedRep)> = universe
            .iter()
            .filter(|(id, t)| {
                let d = self.twisted_fixdim(t, rep);
                !universe.iter().any(|(mid, m)| {
                    mid != id
                        && self.twisted_fixdim(m, rep) == d
                        && ctx.twisted_fixed_cosets(t, m) > 0
                })
            })
            .cloned()
            .collect();
        let mut order = cands;
        order.sort_by_key(|(_, t)| std::cmp::Reverse(t.k.len()));
        let mut coeffs: GS1Elt = BTreeMap::new();
        let mut reps: HashMap<GS1Id, TwistedRep> = HashMap::new();
        for (id, t) in &order {
            reps.insert(*id, t.clone());
        }
        for (id, t) in &order {
            let d = self.twisted_fixdim(t, rep);
            assert!(d % 2 == 0, "odd twisted fixed dimension");
            let mut num = BigInt::from(d / 2);
            for (m, c) in &coeffs {
                if c.is_zero() || m == id {
                    continue;
                }
                let k = ctx.twisted_fixed_cosets(t, &reps[m]);
                num -= c * BigInt::from(k as i64);
            }
            let w = BigInt::from(ctx.gs1_twisted_weyl(*id) as i64);
            let (q, r) = num.div_rem(&w);
            assert!(r.is_zero(), "twisted degree recurrence not exact");
            if !q.is_zero() {
                coeffs.insert(*id, q);
            }
        }
        coeffs
    }

    /// Gamma-side orbit types and no-parameter degree for a Gamma-rep given by
    /// multiplicities of the real irreducibles (used on the Gamma x S^1 side).
    pub fn gamma_deg_noparam(&self, mults: &[(usize, u32)]) -> BTreeMap<usize, BigInt> {
        let ctx = self.ctx();
        let fd = |members: &Members| -> i64 {
            mults
                .iter()
                .map(|(j, m)| {
                    let chi = &self.tab.real_chars[*j];
                    self.tab.fixed_dim(chi, members).unwrap() * *m as i64
                })
                .sum()
        };
        let universe: Vec<usize> = (0..ctx.gclasses.len())
            .filter(|&i| fd(&ctx.gclasses[i].rep) > 0)
            .collect();
        let cands: Vec<usize> = universe
            .iter()
            .copied()
            .filter(|&l| {
                let d = fd(&ctx.gclasses[l].rep);
                !universe.iter().any(|&m| {
                    m != l
                        && fd(&ctx.gclasses[m].rep) == d
                        && ctx
                            .gamma
                            .is_subconjugate(&ctx.gclasses[l].rep, &ctx.gclasses[m].rep)
                })
            })
            .collect();
        let full = ctx.gclasses.len() - 1;
        let mut order = cands;
        if !order.contains(&full) {
            order.push(full);
        }
        order.sort_by_key(|&i| std::cmp::Reverse(ctx.gclasses[i].rep.len()));
        let mut coeffs: BTreeMap<usize, BigInt> = BTreeMap::new();
        for &l in &order {
            let local = if fd(&ctx.gclasses[l].rep) % 2 == 0 {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            };
            let mut num = local;
            for (&m, c) in &coeffs {
                if c.is_zero() || m == l {
                    continue;
                }
                let k = ctx.gamma_fixed_cosets(&ctx.gclasses[l].rep, &ctx.gclasses[m].rep);
                num -= c * BigInt::from(k as i64);
            }
            let w = BigInt::from(ctx.gclasses[l].weyl_order as i64);
            let (q, r) = num.div_rem(&w);
            assert!(r.is_zero(), "Gamma degree recurrence not exact");
            if !q.is_zero() {
                coeffs.insert(l, q);
            }
        }
        coeffs
    }

    // ---------- gradient basic degrees ----------

    /// Gradient basic degree over Gamma x S^1 for one irreducible.
    pub fn grad_basic_gs1(&self, kind: IrrKind) -> GS1Elt {
        if let Some(v) = self.gs1_basic_memo.borrow().get(&kind) {
            return v.clone();
        }
        let ctx = self.ctx();
        let out: GS1Elt = match kind {
            IrrKind::TypeI(j) => self
                .gamma_deg_noparam(&[(j, 1)])
                .into_iter()
                .map(|(c, n)| (ctx.gs1_prod_id(c), n))
                .collect(),
            IrrKind::TypeIII { j, l } => {
                // (G~) - twisted degree
                let mut out: GS1Elt = BTreeMap::new();
                let full = ctx.gs1_prod_id(ctx.gclasses.len() - 1);
                out.insert(full, BigInt::from(1));
                for (id, c) in self.twisted_deg(&vec![(IrrKind::TypeIII { j, l }, 1)], l) {
                    let e = out.entry(id).or_insert_with(BigInt::zero);
                    *e -= c;
                }
                out.retain(|_, v| !v.is_zero());
                out
            }
            IrrKind::TypeII(_) => panic!("Gamma x S^1 has no type (ii) irreducibles"),
        };
        self.gs1_basic_memo.borrow_mut().insert(kind, out.clone());
        out
    }

    /// Exact inverse of a gradient basic degree: Deg * (2(G) - Deg^2).
    /// Valid because pi0(Deg)^2 is the unit of A(G), so Deg^2 - (G) is purely
    /// Phi_1-supported and squares to zero.
    pub fn degree_inverse(&self, deg: &EulerElement) -> EulerElement {
        let unit = self.e.unit();
        let sq = self.e.multiply(deg, deg);
        let mut m = unit.scaled(2);
        m.sub_assign(&sq);
        self.e.multiply(deg, &m)
    }

    /// Gradient basic degree over Gamma x O(2).
    pub fn grad_basic_go2(&self, kind: IrrKind) -> EulerElement {
        if let Some(v) = self.basic_memo.borrow().get(&kind) {
            return v.clone();
        }
        let rep = vec![(kind, 1u32)];
        let phi0 = self.deg_noparam(&rep);
        let out = match kind {
            IrrKind::TypeI(_) | IrrKind::TypeII(_) => EulerElement { coeffs: phi0 },
            IrrKind::TypeIII { j, l } => {
                // Phi_1 coefficients from the Psi relation:
                // 2 x_i (H_i) = Deg~ - sum n_j Psi(L_j)
                let mut rhs = self.grad_basic_gs1(IrrKind::TypeIII { j, l });
                for (cls, n) in &phi0 {
                    for (g, c) in self.e.psi_generator(*cls) {
                        let e = rhs.entry(g).or_insert_with(BigInt::zero);
                        *e -= c * n;
                    }
                }
                rhs.retain(|_, v| !v.is_zero());
                let mut coeffs = phi0;
                for (cls, x) in self.e.solve_phi1(&rhs) {
                    let e = coeffs.entry(cls).or_insert_with(BigInt::zero);
                    *e += x;
                }
                coeffs.retain(|_, v| !v.is_zero());
                EulerElement { coeffs }
            }
        };
        self.basic_memo.borrow_mut().insert(kind, out.clone());
        out
    }
}

fn measure(ctx: &GammaO2, id: ClassId) -> u64 {
    match ctx.class_rep(id) {
        GSub::Fin(f) => f.elems.len() as u64,
        GSub::Sym(s) => {
            let units = match s.kind {
                SymKind::ProdSO2 => s.h.len() as u64,
                SymKind::ProdO2 => 2 * s.h.len() as u64,
                SymKind::ZTwoO2 { .. } => s.h.len() as u64,
            };
            1_000_000_000 + units
        }
    }
}

impl Stratum {
    pub fn is_phi0(self) -> bool {
        self != Stratum::Phi1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn o2_basic_degrees() {
        // over the trivial Gamma: Deg_{U_l} = (O2) - (D_l), squares to unit;
        // Deg~ over S^1: (S^1) - (Z_l)
        let ctx = GammaO2::new(samples::z1());
        let tab = CharacterTable::compute(&ctx.gamma).unwrap();
        let d = DegreeCtx::new(&ctx, &tab);
        let deg = d.grad_basic_go2(IrrKind::TypeIII { j: 0, l: 1 });
        assert_eq!(deg.coeffs.len(), 2);
        // invertible with the closed-form inverse Deg * (2(G) - Deg^2)
        let inv = d.degree_inverse(&deg);
        assert_eq!(d.e.multiply(&deg, &inv), d.e.unit());
        // the square differs from the unit exactly by the Phi1 class (Z_l)
        let sq = d.e.multiply(&deg, &deg);
        let mut diff = sq.clone();
        diff.sub_assign(&d.e.unit());
        assert!(diff
            .coeffs
            .keys()
            .all(|&id| ctx.class_stratum(id) == crate::lattice::Stratum::Phi1));
        // type (i) trivial irreducible: -(O2)
        let degi = d.grad_basic_go2(IrrKind::TypeI(0));
        let unit = d.e.unit();
        assert_eq!(degi.scaled(-1), unit);
        // type (ii): (O2) - (SO2)
        let degii = d.grad_basic_go2(IrrKind::TypeII(0));
        assert_eq!(degii.coeffs.len(), 2);
        let sq = d.e.multiply(&degii, &degii);
        assert_eq!(sq, unit);
    }

    #[test]
    fn gs1_twisted_degree_trivial_gamma() {
        let ctx = GammaO2::new(samples::z1());
        let tab = CharacterTable::compute(&ctx.gamma).unwrap();
        let d = DegreeCtx::new(&ctx, &tab);
        let t = d.twisted_deg(&vec![(IrrKind::TypeIII { j: 0, l: 1 }, 1)], 1);
        // supported on the single class (Z_1 twisted, fold 1) with coefficient 1
        assert_eq!(t.len(), 1);
        assert_eq!(*t.values().next().unwrap(), BigInt::from(1));
    }
}
