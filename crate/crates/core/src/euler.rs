//! Euler ring U(Gamma x O(2)): the homomorphism Psi to U(Gamma x S^1) and the
//! full multiplication, with Phi_1 coefficients solved from the Psi relation.

use crate::angle::Angle;
use crate::burnside::{BurnsideCtx, EulerElement, GElt};
use crate::gs1::{GS1Class, GS1Elt, GS1Id, TwistedRep};
use crate::lattice::{ClassId, FinSub, GElem, GSub, GammaO2, Stratum, SymKind};
use crate::o2::O2Elem;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub struct EulerCtx<'a> {
    pub ctx: &'a GammaO2,
    pub burnside: BurnsideCtx<'a>,
    memo: RefCell<HashMap<(ClassId, ClassId), GElt>>,
    psi_memo: RefCell<HashMap<ClassId, GS1Elt>>,
}

impl<'a> EulerCtx<'a> {
    pub fn new(ctx: &'a GammaO2) -> Self {
        EulerCtx {
            ctx,
            burnside: BurnsideCtx::new(ctx),
            memo: RefCell::new(HashMap::new()),
            psi_memo: RefCell::new(HashMap::new()),
        }
    }

    /// The Gamma x S^1 class of the intersection with Gamma x SO(2), plus
    /// whether the subgroup already lies inside Gamma x SO(2).
    pub fn intersect_with_so2(&self, id: ClassId) -> (GS1Id, bool) {
        let ctx = self.ctx;
        match ctx.class_rep(id) {
            GSub::Sym(s) => match &s.kind {
                SymKind::ProdSO2 => {
                    (ctx.gs1_prod_id(ctx.gamma_class_of(&s.h)), true)
                }
                SymKind::ProdO2 => (ctx.gs1_prod_id(ctx.gamma_class_of(&s.h)), false),
                SymKind::ZTwoO2 { z } => {
                    (ctx.gs1_prod_id(ctx.gamma_class_of(z)), false)
                }
            },
            GSub::Fin(f) => {
                let rot = FinSub {
                    elems: f
                        .elems
                        .iter()
                        .copied()
                        .filter(|e| !e.t.is_reflection())
                        .collect(),
                };
                let t = self.twisted_of_rotation_group(&rot);
                (ctx.gs1_twisted_id(&t), !ctx.fin_has_reflection(&f))
            }
        }
    }

    fn twisted_of_rotation_group(&self, rot: &FinSub) -> TwistedRep {
        let ctx = self.ctx;
        let fold = ctx.fin_fold(rot);
        let map = ctx.fin_twist_map(rot);
        let mut k: Vec<u16> = map.keys().copied().collect();
        k.sort_unstable();
        TwistedRep {
            phi: k.iter().map(|x| map[x]).collect(),
            k,
            fold,
        }
    }

    /// Psi on a generator, as an element of U(Gamma x S^1). Classes inside
    /// Gamma x SO(2) map to (H) + (kappa H kappa); the others to (H_0).
    pub fn psi_generator(&self, id: ClassId) -> GS1Elt {
        if let Some(v) = self.psi_memo.borrow().get(&id) {
            return v.clone();
        }
        let (h0, inside) = self.intersect_with_so2(id);
        let mut out: GS1Elt = BTreeMap::new();
        if inside {
            out.insert(h0, BigInt::from(1));
            let twin = self.ctx.gs1_kappa_twin(h0);
            *out.entry(twin).or_insert_with(BigInt::zero) += 1;
        } else {
            out.insert(h0, BigInt::from(1));
        }
        self.psi_memo.borrow_mut().insert(id, out.clone());
        out
    }

    pub fn psi(&self, x: &EulerElement) -> GS1Elt {
        let mut out: GS1Elt = BTreeMap::new();
        for (id, c) in &x.coeffs {
            for (g, n) in self.psi_generator(*id) {
                let e = out.entry(g).or_insert_with(BigInt::zero);
                *e += n * c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// The Gamma x O(2) Phi_1 class determined by a twisted Gamma x S^1 class.
    pub fn phi1_class_of_twisted(&self, id: GS1Id) -> ClassId {
        let t = match self.ctx.gs1_class(id) {
            GS1Class::Twisted(t) => t,
            GS1Class::Prod(_) => panic!("expected twisted class"),
        };
        let mut elems = Vec::new();
        for (x, a) in t.k.iter().zip(&t.phi) {
            for j in 0..t.fold as i64 {
                let z = Angle::new(a.num() + j * a.den(), a.den() * t.fold as i64);
                elems.push(GElem {
                    g: *x,
                    t: O2Elem::Rot(z),
                });
            }
        }
        elems.sort_unstable();
        self.ctx.class_of(&GSub::Fin(FinSub { elems }))
    }

    /// Full Euler-ring generator product in U(Gamma x O(2)).
    pub fn generator_product(&self, a: ClassId, b: ClassId) -> GElt {
        let (a, b) = (a.min(b), a.max(b));
        if let Some(v) = self.memo.borrow().get(&(a, b)) {
            return v.clone();
        }
        let ctx = self.ctx;
        let phi0: GElt = if ctx.class_stratum(a) != Stratum::Phi1
            && ctx.class_stratum(b) != Stratum::Phi1
        {
            self.burnside.generator_product(a, b)
        } else {
            GElt::new()
        };
        // Psi relation: sum_x x_{L'} Psi(L') = Psi(a)*Psi(b) - sum n_L Psi(L)
        let pa = self.psi_generator(a);
        let pb = self.psi_generator(b);
        let mut rhs = ctx.gs1_multiply(&pa, &pb);
        for (l, n) in &phi0 {
            for (g, c) in self.psi_generator(*l) {
                let e = rhs.entry(g).or_insert_with(BigInt::zero);
                *e -= c * n;
            }
        }
        rhs.retain(|_, v| !v.is_zero());
        let mut out = phi0;
        for (cls, x) in self.solve_phi1(&rhs) {
            let e = out.entry(cls).or_insert_with(BigInt::zero);
            *e += x;
        }
        out.retain(|_, v| !v.is_zero());
        self.memo.borrow_mut().insert((a, b), out.clone());
        out
    }

    /// Solve `sum_i x_i Psi(L'_i) = rhs` for the Phi_1 coefficients x_i.
    /// Psi doubles kappa-self-paired twisted classes and sends the others to
    /// the sum of the two kappa-paired Gamma x S^1 classes.
    pub fn solve_phi1(&self, rhs: &GS1Elt) -> GElt {
        let ctx = self.ctx;
        let mut out: GElt = GElt::new();
        let mut handled: BTreeSet<GS1Id> = BTreeSet::new();
        for (&t, c) in rhs {
            if handled.contains(&t) {
                continue;
            }
            match ctx.gs1_class(t) {
                GS1Class::Prod(_) => panic!(
                    "Psi relation has Phi0-type remainder: internal inconsistency"
                ),
                GS1Class::Twisted(_) => {}
            }
            let twin = ctx.gs1_kappa_twin(t);
            let x = if twin == t {
                let (q, r) = c.div_rem(&BigInt::from(2));
                assert!(
                    r.is_zero(),
                    "odd coefficient in the Psi relation: internal inconsistency"
                );
                q
            } else {
                let ctwin = rhs.get(&twin).cloned().unwrap_or_else(BigInt::zero);
                assert_eq!(
                    *c, ctwin,
                    "kappa-paired twisted coefficients differ: internal inconsistency"
                );
                c.clone()
            };
            handled.insert(t);
            handled.insert(twin);
            if x.is_zero() {
                continue;
            }
            let cls = self.phi1_class_of_twisted(t);
            let e = out.entry(cls).or_insert_with(BigInt::zero);
            *e += x;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn multiply(&self, x: &EulerElement, y: &EulerElement) -> EulerElement {
        let mut out: GElt = BTreeMap::new();
        for (&ia, ca) in &x.coeffs {
            for (&ib, cb) in &y.coeffs {
                let scale = ca * cb;
                if scale.is_zero() {
                    continue;
                }
                for (id, c) in self.generator_product(ia, ib) {
                    let e = out.entry(id).or_insert_with(BigInt::zero);
                    *e += c * &scale;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        EulerElement { coeffs: out }
    }

    /// x^k by repeated squaring is pointless at these sizes; plain iteration.
    pub fn pow(&self, x: &EulerElement, k: u32) -> EulerElement {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.multiply(&acc, x);
        }
        acc
    }

    /// The unit (Gamma x O(2)).
    pub fn unit(&self) -> EulerElement {
        let ctx = self.ctx;
        let full = GSub::Sym(crate::lattice::SymSub {
            h: (0..ctx.gamma.order() as u16).collect(),
            kind: SymKind::ProdO2,
        });
        EulerElement::generator(ctx.class_of(&full))
    }
}
