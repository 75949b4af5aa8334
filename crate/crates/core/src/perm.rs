//! Permutations on `0..d` in image notation.

use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.0[p]
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.0.len(), other.0.len());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            r[j] = i;
        }
        Perm(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Build from disjoint cycles over `0..d`. Points absent from all cycles are fixed.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Result<Perm, String> {
        let mut img: Vec<usize> = (0..d).collect();
        let mut seen = vec![false; d];
        for cyc in cycles {
            for (k, &p) in cyc.iter().enumerate() {
                if p >= d {
                    return Err(format!("cycle point {} out of range 0..{}", p, d));
                }
                if seen[p] {
                    return Err(format!("point {} repeated across cycles", p));
                }
                seen[p] = true;
                img[p] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Perm(img))
    }

    /// Check the image vector is a bijection.
    pub fn validate(images: Vec<usize>) -> Result<Perm, String> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &j in &images {
            if j >= d {
                return Err(format!("image {} out of range 0..{}", j, d));
            }
            if seen[j] {
                return Err(format!("image {} repeated: not a permutation", j));
            }
            seen[j] = true;
        }
        Ok(Perm(images))
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut n = 1;
        while !p.is_identity() {
            p = p.compose(self);
            n += 1;
        }
        n
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // cycle notation
        let d = self.0.len();
        let mut seen = vec![false; d];
        let mut out = String::new();
        for s in 0..d {
            if seen[s] || self.0[s] == s {
                continue;
            }
            out.push('(');
            let mut p = s;
            loop {
                seen[p] = true;
                out.push_str(&p.to_string());
                p = self.0[p];
                if p == s {
                    break;
                }
                out.push(' ');
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        write!(f, "{}", out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycles_roundtrip() {
        let p = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(p.0, vec![1, 2, 3, 0]);
        assert_eq!(p.order(), 4);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(Perm::validate(vec![0, 0, 1]).is_err());
        assert!(Perm::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    proptest! {
        #[test]
        fn inverse_is_involution(v in proptest::collection::vec(0usize..8, 8)) {
            let mut v = v;
            v.sort_unstable();
            v.dedup();
            if v.len() == 8 {
                let p = Perm::validate(v).unwrap();
                prop_assert_eq!(p.inverse().inverse(), p.clone());
                prop_assert!(p.compose(&p.inverse()).is_identity());
            }
        }
    }
}
