//! Small abstract target groups for amalgamation quotients: cyclic Z_m and
//! dihedral D_m. These are the only quotient shapes arising from closed
//! subgroups of O(2).

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SmallTag {
    /// Z_m, elements 0..m, addition mod m.
    Cyclic(u32),
    /// D_m, order 2m: elements 0..m rotations, m..2m reflections.
    /// Convention: j < m is rotation r^j; m+j is reflection s r^j.
    Dihedral(u32),
}

impl SmallTag {
    pub fn order(&self) -> usize {
        match *self {
            SmallTag::Cyclic(m) => m as usize,
            SmallTag::Dihedral(m) => 2 * m as usize,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SmallGroup {
    pub tag: SmallTag,
}

impl SmallGroup {
    pub fn new(tag: SmallTag) -> Self {
        SmallGroup { tag }
    }

    pub fn order(&self) -> usize {
        self.tag.order()
    }

    pub fn identity(&self) -> u8 {
        0
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        match self.tag {
            SmallTag::Cyclic(m) => ((a as u32 + b as u32) % m) as u8,
            SmallTag::Dihedral(m) => {
                let (ra, fa) = self.split(a);
                let (rb, fb) = self.split(b);
                // s r^j * s r^k = r^{k-j}; r^j * s r^k = s r^{k-j}; etc.
                // With x = s^{fa} r^{ra}: x*y where y = s^{fb} r^{rb}:
                // s^{fa} r^{ra} s^{fb} r^{rb} = s^{fa+fb} r^{rb + (-1)^{fb} ra}
                let f = fa ^ fb;
                let r = if fb {
                    (rb + m - ra % m) % m
                } else {
                    (ra + rb) % m
                };
                self.join(r, f)
            }
        }
    }

    pub fn inv(&self, a: u8) -> u8 {
        match self.tag {
            SmallTag::Cyclic(m) => ((m - a as u32) % m) as u8,
            SmallTag::Dihedral(_) => {
                let (r, f) = self.split(a);
                if f {
                    a // reflections are involutions: (s r^j)^2 = e
                } else {
                    self.join((self.m() - r) % self.m(), false)
                }
            }
        }
    }

    pub fn el_order(&self, a: u8) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Is element `a` in the distinguished cyclic part?
    /// For dihedral D_m that is the rotation subgroup <r>; for Z_m everything.
    pub fn in_rotation_part(&self, a: u8) -> bool {
        match self.tag {
            SmallTag::Cyclic(_) => true,
            SmallTag::Dihedral(m) => (a as u32) < m,
        }
    }

    fn m(&self) -> u32 {
        match self.tag {
            SmallTag::Cyclic(m) | SmallTag::Dihedral(m) => m,
        }
    }

    fn split(&self, a: u8) -> (u32, bool) {
        let m = self.m();
        let a = a as u32;
        if a < m {
            (a, false)
        } else {
            (a - m, true)
        }
    }

    fn join(&self, r: u32, f: bool) -> u8 {
        (if f { r + self.m() } else { r }) as u8
    }

    /// All automorphisms, each as the image vector over elements 0..order.
    pub fn automorphisms(&self) -> Vec<Vec<u8>> {
        let n = self.order();
        let mut out = Vec::new();
        // determined by images of generators; search over candidate images
        let gens: Vec<u8> = match self.tag {
            SmallTag::Cyclic(_) => vec![1 % n.max(1) as u8],
            SmallTag::Dihedral(m) => vec![1 % m.max(1) as u8, m as u8],
        };
        let mut stack = vec![Vec::<u8>::new()];
        while let Some(partial) = stack.pop() {
            if partial.len() == gens.len() {
                if let Some(map) = self.extend_endo(&gens, &partial) {
                    let mut seen = vec![false; n];
                    for &v in &map {
                        seen[v as usize] = true;
                    }
                    if seen.iter().all(|&b| b) {
                        out.push(map);
                    }
                }
                continue;
            }
            let g = gens[partial.len()];
            for cand in 0..n as u8 {
                if self.el_order(cand) == self.el_order(g) {
                    let mut p = partial.clone();
                    p.push(cand);
                    stack.push(p);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn extend_endo(&self, gens: &[u8], images: &[u8]) -> Option<Vec<u8>> {
        let n = self.order();
        let mut map: Vec<Option<u8>> = vec![None; n];
        map[0] = Some(0);
        let mut frontier = vec![0u8];
        while let Some(x) = frontier.pop() {
            let fx = map[x as usize].unwrap();
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(g, x);
                let fy = self.mul(images[k], fx);
                match map[y as usize] {
                    None => {
                        map[y as usize] = Some(fy);
                        frontier.push(y);
                    }
                    Some(v) if v != fy => return None,
                    _ => {}
                }
            }
        }
        let full: Vec<u8> = map.into_iter().collect::<Option<Vec<_>>>()?;
        for a in 0..n as u8 {
            for b in 0..n as u8 {
                if self.mul(full[a as usize], full[b as usize])
                    != full[self.mul(a, b) as usize]
                {
                    return None;
                }
            }
        }
        Some(full)
    }
}
