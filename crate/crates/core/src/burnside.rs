//! The Burnside ring A(Gamma x O(2)) on Phi_0 classes: generator products via
//! the top-down recurrence over the subconjugation order, and the truncation
//! pi_0 from the Euler ring.

use crate::lattice::{ClassId, GSub, GammaO2, KFam, LTag, Stratum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub type GElt = BTreeMap<ClassId, BigInt>;

/// Finitely supported integer combination of Phi_0 classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideElement {
    pub coeffs: GElt,
}

/// Finitely supported integer combination of Phi(G) classes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EulerElement {
    pub coeffs: GElt,
}

impl EulerElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(id: ClassId) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(id, BigInt::from(1));
        EulerElement { coeffs }
    }

    pub fn add_assign(&mut self, other: &EulerElement) {
        for (id, c) in &other.coeffs {
            let e = self.coeffs.entry(*id).or_insert_with(BigInt::zero);
            *e += c;
        }
        self.coeffs.retain(|_, v| !v.is_zero());
    }

    pub fn sub_assign(&mut self, other: &EulerElement) {
        for (id, c) in &other.coeffs {
            let e = self.coeffs.entry(*id).or_insert_with(BigInt::zero);
            *e -= c;
        }
        self.coeffs.retain(|_, v| !v.is_zero());
    }

    pub fn scaled(&self, k: i64) -> EulerElement {
        let mut coeffs = self.coeffs.clone();
        for v in coeffs.values_mut() {
            *v *= k;
        }
        coeffs.retain(|_, v| !v.is_zero());
        EulerElement { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// pi_0: drop all Phi_1 coefficients.
pub fn pi0(ctx: &GammaO2, x: &EulerElement) -> BurnsideElement {
    let coeffs = x
        .coeffs
        .iter()
        .filter(|(id, _)| ctx.class_stratum(**id) != Stratum::Phi1)
        .map(|(id, c)| (*id, c.clone()))
        .collect();
    BurnsideElement { coeffs }
}

pub struct BurnsideCtx<'a> {
    pub ctx: &'a GammaO2,
    memo: RefCell<HashMap<(ClassId, ClassId), GElt>>,
}

impl<'a> BurnsideCtx<'a> {
    pub fn new(ctx: &'a GammaO2) -> Self {
        BurnsideCtx {
            ctx,
            memo: RefCell::new(HashMap::new()),
        }
    }

    /// Generator product in A(Gamma x O(2)). Both classes must be Phi_0.
    pub fn generator_product(&self, a: ClassId, b: ClassId) -> GElt {
        let (a, b) = (a.min(b), a.max(b));
        if let Some(v) = self.memo.borrow().get(&(a, b)) {
            return v.clone();
        }
        let ctx = self.ctx;
        assert_ne!(ctx.class_stratum(a), Stratum::Phi1, "Phi0 generator expected");
        assert_ne!(ctx.class_stratum(b), Stratum::Phi1, "Phi0 generator expected");
        let ra = ctx.class_rep(a);
        let rb = ctx.class_rep(b);
        // maximal orbit types: Phi0 classes among conj(a) cap b
        let den_b = match &rb {
            GSub::Fin(f) => ctx.fin_denominator(f),
            GSub::Sym(_) => 2,
        };
        let mut tops: BTreeSet<ClassId> = BTreeSet::new();
        let mut top_rot: BTreeSet<u32> = BTreeSet::new();
        let mut any_sym_top = false;
        for c in ctx.conjugates_on_grid(&ra, den_b) {
            let i = ctx.intersect(&c, &rb);
            match &i {
                GSub::Fin(f) => {
                    if f.elems.is_empty() || !ctx.fin_has_reflection(f) {
                        continue; // empty or Phi_1: no Burnside contribution
                    }
                    top_rot.insert(ctx.fin_rot_order(f));
                    tops.insert(ctx.class_of(&i));
                }
                GSub::Sym(_) => {
                    any_sym_top = true;
                    tops.insert(ctx.class_of(&i));
                }
            }
        }
        if tops.is_empty() {
            self.memo.borrow_mut().insert((a, b), GElt::new());
            return GElt::new();
        }
        // candidate classes subconjugate to the tops
        let mut cands: BTreeSet<ClassId> = tops.clone();
        let fams = ctx.families();
        let mut params: BTreeSet<u32> = BTreeSet::new();
        for &r in &top_rot {
            for d in 1..=r {
                if r % d == 0 {
                    params.insert(d);
                }
            }
        }
        for fam in fams.iter() {
            match fam.k {
                KFam::Dn { mult } => {
                    if top_rot.is_empty() {
                        continue;
                    }
                    for &m in &params {
                        if m % mult == 0 && m / mult >= 1 {
                            let s = ctx.instantiate(fam, m / mult);
                            cands.insert(ctx.class_of(&s));
                        }
                    }
                }
                KFam::SO2 | KFam::O2 => {
                    if any_sym_top {
                        let s = ctx.instantiate(fam, 1);
                        cands.insert(ctx.class_of(&s));
                    }
                }
                KFam::Zn { .. } => {}
            }
        }
        // subconjugate to both factors
        let cands: Vec<ClassId> = cands
            .into_iter()
            .filter(|&l| ctx.n_number(l, a) > 0 && ctx.n_number(l, b) > 0)
            .collect();
        // process in a containment-compatible descending order
        let mut order: Vec<ClassId> = cands.clone();
        order.sort_by_key(|&l| std::cmp::Reverse(class_measure(ctx, l)));
        let mut coeffs: GElt = BTreeMap::new();
        for &l in &order {
            let ca = BigInt::from((ctx.n_number(l, a) * ctx.weyl_order(a)) as i64);
            let cb = BigInt::from((ctx.n_number(l, b) * ctx.weyl_order(b)) as i64);
            let mut num = ca * cb;
            for (&m, coeff) in &coeffs {
                if coeff.is_zero() || m == l {
                    continue;
                }
                let c = ctx.n_number(l, m) * ctx.weyl_order(m);
                num -= coeff * BigInt::from(c as i64);
            }
            let w = BigInt::from(ctx.weyl_order(l) as i64);
            let (q, r) = num.div_rem(&w);
            assert!(
                r.is_zero(),
                "non-integer Burnside recurrence quotient at class {l}"
            );
            if !q.is_zero() {
                coeffs.insert(l, q);
            }
        }
        self.memo.borrow_mut().insert((a, b), coeffs.clone());
        coeffs
    }

    pub fn multiply(&self, x: &BurnsideElement, y: &BurnsideElement) -> BurnsideElement {
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
        BurnsideElement { coeffs: out }
    }
}

/// A containment-compatible size measure: if L is subconjugate to M then
/// measure(L) <= measure(M). Symbolic classes (containing SO(2)) are measured
/// by their count of SO(2)-cosets, offset above every finite class.
fn class_measure(ctx: &GammaO2, id: ClassId) -> u64 {
    use crate::lattice::SymKind;
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
