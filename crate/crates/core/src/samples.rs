//! Standard sample groups used across tests and examples.

use crate::group::{FiniteGroup, Members, SubgroupClass};
use crate::perm::Perm;

pub fn z1() -> FiniteGroup {
    FiniteGroup::from_generators("Z1", 1, &[]).unwrap()
}

/// S4 acting on 4 points.
pub fn s4() -> FiniteGroup {
    let gens = vec![
        Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
        Perm::from_cycles(4, &[vec![0, 1]]).unwrap(),
    ];
    FiniteGroup::from_generators("S4", 4, &gens).unwrap()
}

/// D4 = <(0123), (02)> inside S4's point set.
pub fn d4() -> FiniteGroup {
    let gens = vec![
        Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
        Perm::from_cycles(4, &[vec![0, 3], vec![1, 2]]).unwrap(),
    ];
    FiniteGroup::from_generators("D4", 4, &gens).unwrap()
}

/// D4 x Z2 on 4 + 2 points. The D4 part matches `d4` (r = coordinate shift,
/// kappa = coordinate reversal of the Newtonian example); Z2 swaps points 4,5.
pub fn d4xz2() -> FiniteGroup {
    let gens = vec![
        Perm::from_cycles(6, &[vec![0, 1, 2, 3]]).unwrap(),
        Perm::from_cycles(6, &[vec![0, 3], vec![1, 2]]).unwrap(),
        Perm::from_cycles(6, &[vec![4, 5]]).unwrap(),
    ];
    FiniteGroup::from_generators("D4xZ2", 6, &gens).unwrap()
}

/// Element index from cycle notation.
pub fn el(g: &FiniteGroup, cycles: &[Vec<usize>]) -> u16 {
    let p = Perm::from_cycles(g.degree, cycles).unwrap();
    g.elems
        .iter()
        .position(|q| *q == p)
        .expect("element not in group") as u16
}

/// Member set generated by the given cycle-notation generators.
pub fn span(g: &FiniteGroup, gens: &[&[Vec<usize>]]) -> Members {
    let ids: Vec<u16> = gens.iter().map(|c| el(g, c)).collect();
    g.closure(&ids)
}

/// Named subgroup classes of S4 in the rotation-group-of-the-cube convention:
/// "D1" = <transposition>, "Z2" = <double transposition>,
/// "D2planes" = {e,(01),(23),(01)(23)}, "V4" = normal Klein.
pub fn s4_class(g: &FiniteGroup, classes: &[SubgroupClass], tag: &str) -> usize {
    let m: Members = match tag {
        "Z1" => vec![0],
        "D1" => span(g, &[&[vec![0, 1]]]),
        "Z2" => span(g, &[&[vec![0, 1], vec![2, 3]]]),
        "Z3" => span(g, &[&[vec![0, 1, 2]]]),
        "Z4" => span(g, &[&[vec![0, 1, 2, 3]]]),
        "V4" => span(g, &[&[vec![0, 1], vec![2, 3]], &[vec![0, 2], vec![1, 3]]]),
        "D2planes" | "D2" => span(g, &[&[vec![0, 1]], &[vec![2, 3]]]),
        "D3" => span(g, &[&[vec![0, 1, 2]], &[vec![0, 1]]]),
        "D4" => span(g, &[&[vec![0, 1, 2, 3]], &[vec![0, 2]]]),
        "A4" => span(
            g,
            &[&[vec![0, 1, 2]], &[vec![0, 1], vec![2, 3]]],
        ),
        "S4" => (0..g.order() as u16).collect(),
        _ => panic!("unknown S4 class tag {tag}"),
    };
    g.class_of(classes, &m)
}

/// Named subgroup classes of D4 x Z2 in the convention of the product tables:
/// base names Z1,Z2,Z4,D1,D1t,D2,D2t,D4 for subgroups of D4 (D1 = <kappa>,
/// D1t = <r kappa>, D2 = <r^2, kappa>, D2t = <r^2, r kappa>), decorated by
/// "^s" for K x Z2 and "^z","^d","^dt" for graphs of K -> Z2 with kernel
/// cyclic / D-type / Dt-type.
pub fn d4z2_class(g: &FiniteGroup, classes: &[SubgroupClass], tag: &str) -> usize {
    let w = el(g, &[vec![4, 5]]); // the central Z2 generator
    let r = el(g, &[vec![0, 1, 2, 3]]);
    let kappa = el(g, &[vec![0, 3], vec![1, 2]]);
    let r2 = g.mul(r, r);
    let rk = g.mul(r, kappa);
    let base = |name: &str| -> Vec<u16> {
        match name {
            "Z1" => vec![],
            "Z2" => vec![r2],
            "Z4" => vec![r],
            "D1" => vec![kappa],
            "D1t" => vec![rk],
            "D2" => vec![r2, kappa],
            "D2t" => vec![r2, rk],
            "D4" => vec![r, kappa],
            _ => panic!("unknown D4 base {name}"),
        }
    };
    let (b, dec) = match tag.find('^') {
        Some(i) => (&tag[..i], &tag[i + 1..]),
        None => (tag, ""),
    };
    let gens = base(b);
    let m: Members = match dec {
        "" => g.closure(&gens),
        "s" => {
            let mut v = gens.clone();
            v.push(w);
            g.closure(&v)
        }
        "z" | "d" | "dt" => {
            // graph of the epimorphism with the indicated kernel
            let kernel: Vec<u16> = match (b, dec) {
                ("Z2", "z") => vec![],
                ("Z4", "z") => vec![r2],
                ("D1", "d") => vec![],
                ("D1t", "dt") => vec![],
                ("D2", "z") => vec![r2],
                ("D2", "d") => vec![kappa],
                ("D2t", "z") => vec![r2],
                ("D2t", "dt") => vec![rk],
                ("D4", "z") => vec![r],
                ("D4", "d") => vec![r2, kappa],
                ("D4", "dt") => vec![r2, rk],
                _ => panic!("unknown decoration {tag}"),
            };
            let h = g.closure(&gens);
            let ker = g.closure(&kernel);
            let mut v: Vec<u16> = Vec::new();
            for &x in &h {
                if ker.binary_search(&x).is_ok() {
                    v.push(x);
                } else {
                    v.push(g.mul(x, w));
                }
            }
            v.sort_unstable();
            assert!(g.is_subgroup(&v), "graph subgroup failed for {tag}");
            v
        }
        _ => panic!("unknown decoration {dec}"),
    };
    g.class_of(classes, &m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_orders() {
        assert_eq!(s4().order(), 24);
        assert_eq!(d4().order(), 8);
        assert_eq!(d4xz2().order(), 16);
    }

    #[test]
    fn d4xz2_has_27_classes() {
        let g = d4xz2();
        let classes = g.subgroup_classes();
        assert_eq!(classes.len(), 27);
        // all 27 names resolve and are pairwise distinct
        let names = [
            "Z1", "Z1^s", "Z2", "Z2^z", "D1t", "D1t^dt", "D1", "D1^d", "Z2^s", "D2",
            "D2^z", "D2^d", "D1^s", "Z4", "Z4^z", "D2t", "D2t^z", "D2t^dt", "D1t^s",
            "D2t^s", "Z4^s", "D2^s", "D4^dt", "D4", "D4^d", "D4^z", "D4^s",
        ];
        let mut ids: Vec<usize> = names
            .iter()
            .map(|n| d4z2_class(&g, &classes, n))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 27);
    }

    #[test]
    fn s4_class_tags_are_distinct() {
        let g = s4();
        let classes = g.subgroup_classes();
        let names = [
            "Z1", "Z2", "D1", "Z3", "Z4", "V4", "D2", "D3", "D4", "A4", "S4",
        ];
        let mut ids: Vec<usize> = names.iter().map(|n| s4_class(&g, &classes, n)).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 11);
    }
}
