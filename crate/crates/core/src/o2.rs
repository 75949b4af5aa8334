//! Exact model of O(2) elements and its closed subgroups.
//!
//! `Rot(a)` is the rotation by `a` turns; `Refl(b)` is `Rot(b) * kappa` where
//! `kappa` conjugates (negates angles). So `Refl(b)` fixes the axis at angle
//! `b/2` turns and `Refl(b)^2 = identity`.

use crate::angle::Angle;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum O2Elem {
    Rot(Angle),
    Refl(Angle),
}

impl O2Elem {
    pub fn identity() -> Self {
        O2Elem::Rot(Angle::zero())
    }

    pub fn mul(&self, o: &O2Elem) -> O2Elem {
        use O2Elem::*;
        match (*self, *o) {
            (Rot(a), Rot(b)) => Rot(a.add(b)),
            (Rot(a), Refl(b)) => Refl(a.add(b)),
            (Refl(a), Rot(b)) => Refl(a.sub(b)),
            (Refl(a), Refl(b)) => Rot(a.sub(b)),
        }
    }

    pub fn inv(&self) -> O2Elem {
        match *self {
            O2Elem::Rot(a) => O2Elem::Rot(a.neg()),
            O2Elem::Refl(a) => O2Elem::Refl(a),
        }
    }

    pub fn conj_by(&self, g: &O2Elem) -> O2Elem {
        g.mul(self).mul(&g.inv())
    }

    pub fn is_reflection(&self) -> bool {
        matches!(self, O2Elem::Refl(_))
    }
}

impl fmt::Debug for O2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            O2Elem::Rot(a) => write!(f, "r({})", a),
            O2Elem::Refl(a) => write!(f, "s({})", a),
        }
    }
}

/// Closed subgroups of O(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum O2Subgroup {
    O2,
    SO2,
    /// Dihedral(n, phase): rotations by k/n turns and reflections Refl(phase + k/n).
    Dihedral(u32, Angle),
    Cyclic(u32),
}

impl O2Subgroup {
    pub fn contains(&self, e: &O2Elem) -> bool {
        match (*self, *e) {
            (O2Subgroup::O2, _) => true,
            (O2Subgroup::SO2, O2Elem::Rot(_)) => true,
            (O2Subgroup::SO2, _) => false,
            (O2Subgroup::Dihedral(n, _), O2Elem::Rot(a)) => a.times(n as i64).is_zero(),
            (O2Subgroup::Dihedral(n, p), O2Elem::Refl(b)) => {
                b.sub(p).times(n as i64).is_zero()
            }
            (O2Subgroup::Cyclic(n), O2Elem::Rot(a)) => a.times(n as i64).is_zero(),
            (O2Subgroup::Cyclic(_), O2Elem::Refl(_)) => false,
        }
    }

    /// Elements, for the finite kinds.
    pub fn elements(&self) -> Vec<O2Elem> {
        match *self {
            O2Subgroup::Cyclic(n) => (0..n as i64)
                .map(|k| O2Elem::Rot(Angle::new(k, n as i64)))
                .collect(),
            O2Subgroup::Dihedral(n, p) => {
                let mut v: Vec<O2Elem> = (0..n as i64)
                    .map(|k| O2Elem::Rot(Angle::new(k, n as i64)))
                    .collect();
                v.extend(
                    (0..n as i64).map(|k| O2Elem::Refl(p.add(Angle::new(k, n as i64)))),
                );
                v
            }
            _ => panic!("infinite subgroup has no element list"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_conjugation_shifts_phase() {
        // r_a s_b r_a^{-1} = s_{b+2a}
        let a = Angle::new(1, 8);
        let b = Angle::new(1, 3);
        let got = O2Elem::Refl(b).conj_by(&O2Elem::Rot(a));
        assert_eq!(got, O2Elem::Refl(b.add(a.times(2))));
        // kappa r kappa = r^{-1}
        let r = O2Elem::Rot(Angle::new(1, 5));
        assert_eq!(r.conj_by(&O2Elem::Refl(Angle::zero())), r.inv());
    }

    #[test]
    fn dihedral_membership_and_closure() {
        let d3 = O2Subgroup::Dihedral(3, Angle::zero());
        let els = d3.elements();
        assert_eq!(els.len(), 6);
        for x in &els {
            assert!(d3.contains(x));
            for y in &els {
                assert!(d3.contains(&x.mul(y)));
            }
            assert!(d3.contains(&x.inv()));
        }
        assert!(!d3.contains(&O2Elem::Refl(Angle::new(1, 6))));
        let d3s = O2Subgroup::Dihedral(3, Angle::new(1, 6));
        assert!(d3s.contains(&O2Elem::Refl(Angle::new(1, 6))));
    }
}
