//! Shared fixtures: golden-file parsing and class construction by table data.

#![allow(dead_code)]

use eqdeg::angle::Angle;
use eqdeg::burnside::EulerElement;
use eqdeg::gs1::TwistedRep;
use eqdeg::lattice::{ClassId, GammaO2, KFam, LTag};
use eqdeg::samples;
use num_bigint::BigInt;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct Term {
    pub coeff: i64,
    pub h: String,
    pub kkind: String,
    pub kmult: u32,
    pub kparam: String,
    pub l: String,
    pub z: String,
    pub r: String,
    pub bold: bool,
}

pub fn load_terms(name: &str) -> Vec<Term> {
    let path = format!("{}/tests/data/{}", env!("CARGO_MANIFEST_DIR"), name);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut out = Vec::new();
    for line in text.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('|').collect();
        assert_eq!(f.len(), 7, "bad term {line}");
        let kparts: Vec<&str> = f[2].split(':').collect();
        out.push(Term {
            coeff: f[0].trim().parse().unwrap(),
            h: f[1].to_string(),
            kkind: kparts[0].to_string(),
            kmult: kparts[1].parse().unwrap_or(0),
            kparam: kparts[2].to_string(),
            l: f[3].to_string(),
            z: f[4].to_string(),
            r: f[5].to_string(),
            bold: f[6] == "1",
        });
    }
    out
}

pub fn parse_ltag(l: &str) -> LTag {
    if l.is_empty() || l == "Z1" {
        return LTag::Trivial;
    }
    let m: u32 = l[1..].parse().unwrap();
    if l.starts_with('Z') {
        LTag::Z(m)
    } else {
        LTag::D(m)
    }
}

pub enum Gamma {
    S4,
    D4Z2,
}

pub fn gamma_class(ctx: &GammaO2, which: &Gamma, tag: &str) -> usize {
    match which {
        Gamma::S4 => samples::s4_class(&ctx.gamma, &ctx.gclasses, tag),
        Gamma::D4Z2 => {
            let t = tag.replace("Dt1", "D1t").replace("Dt2", "D2t");
            let t = t.replace("^td", "^dt");
            samples::d4z2_class(&ctx.gamma, &ctx.gclasses, &t)
        }
    }
}

/// Resolve a table/expansion term (with a concrete K) to a registered class.
/// `fold_subst` substitutes the symbolic parameter when kparam == "n".
pub fn term_class(ctx: &GammaO2, which: &Gamma, t: &Term, fold_subst: u32) -> ClassId {
    let h = gamma_class(ctx, which, &t.h);
    let l = parse_ltag(&t.l);
    let z = if t.z.is_empty() {
        h
    } else {
        gamma_class(ctx, which, &t.z)
    };
    let r = if t.r.is_empty() {
        None
    } else {
        Some(gamma_class(ctx, which, &t.r))
    };
    let k = match t.kkind.as_str() {
        "O2" => KFam::O2,
        "SO2" => KFam::SO2,
        "D" => KFam::Dn {
            mult: match l {
                LTag::Trivial => 1,
                LTag::Z(2) => 2,
                LTag::D(m) => m,
                LTag::Z(_) => panic!("dihedral K with non-Z2 cyclic quotient"),
            },
        },
        "Z" => KFam::Zn {
            mult: match l {
                LTag::Trivial => 1,
                LTag::Z(m) => m,
                LTag::D(_) => panic!("cyclic K with dihedral quotient"),
            },
        },
        other => panic!("bad K kind {other}"),
    };
    // parameter: concrete K gives rot order kmult; family rows use fold_subst
    let n = match (t.kparam.as_str(), k) {
        (_, KFam::O2) | (_, KFam::SO2) => 1,
        ("c", KFam::Dn { mult }) | ("c", KFam::Zn { mult }) => {
            assert_eq!(t.kmult % mult, 0, "K order {} not divisible by mult {mult}", t.kmult);
            t.kmult / mult
        }
        ("n", _) => fold_subst,
        _ => panic!("bad K parameter"),
    };
    let fams = ctx.families();
    let fam = fams
        .iter()
        .find(|f| {
            f.h_class == h
                && f.k == k
                && f.l == l
                && f.z_class == z
                && (r.is_none() || f.r_class == r)
        })
        .unwrap_or_else(|| panic!("no family for term {:?}", t));
    ctx.class_of(&ctx.instantiate(fam, n))
}

pub fn expansion_element(
    ctx: &GammaO2,
    which: &Gamma,
    terms: &[Term],
    fold_subst: u32,
) -> EulerElement {
    let mut coeffs: BTreeMap<ClassId, BigInt> = BTreeMap::new();
    for t in terms {
        let id = term_class(ctx, which, t, fold_subst);
        *coeffs.entry(id).or_insert_with(|| BigInt::from(0)) += BigInt::from(t.coeff);
    }
    coeffs.retain(|_, v| *v != BigInt::from(0));
    EulerElement { coeffs }
}

/// Bold (maximal) classes of an expansion.
pub fn bold_classes(
    ctx: &GammaO2,
    which: &Gamma,
    terms: &[Term],
    fold_subst: u32,
) -> Vec<ClassId> {
    let mut v: Vec<ClassId> = terms
        .iter()
        .filter(|t| t.bold)
        .map(|t| term_class(ctx, which, t, fold_subst))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// A twisted Gamma x S^1 representative from a subgroup and the kernel of a
/// Z_m-valued epimorphism given by a generator-to-angle table.
pub fn twisted_from_kernel(
    ctx: &GammaO2,
    k_members: &[u16],
    kernel: &[u16],
    m: u32,
    fold: u32,
) -> TwistedRep {
    assert!(m <= 2, "use explicit angles for higher twists");
    let phi: Vec<Angle> = k_members
        .iter()
        .map(|x| {
            if kernel.binary_search(x).is_ok() {
                Angle::zero()
            } else {
                Angle::new(1, 2)
            }
        })
        .collect();
    TwistedRep {
        k: k_members.to_vec(),
        phi,
        fold,
    }
}
