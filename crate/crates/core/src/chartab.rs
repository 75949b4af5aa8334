//! Character tables by the class-algebra method (Dixon): simultaneous
//! eigenvectors of the class-multiplication matrices over a prime field,
//! lifted to complex values, then realified into the list of real
//! irreducible characters the degree formulas consume.

use crate::group::{ElId, FiniteGroup, Members};
use num_integer::Integer;
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct CharacterTable {
    /// one representative element per conjugacy class; index 0 = identity
    pub class_reps: Vec<ElId>,
    pub class_sizes: Vec<usize>,
    pub el_class: Vec<usize>,
    /// complex irreducible characters (rows) by class (columns)
    pub complex_chars: Vec<Vec<(f64, f64)>>,
    /// real irreducible characters after realification
    pub real_chars: Vec<Vec<f64>>,
    /// norm square of each real character row: 1 (real type), 2 (complex
    /// pair), 4 (quaternionic)
    pub type_factor: Vec<u32>,
    pub real_degrees: Vec<usize>,
}

// ---------- modular helpers ----------

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Gaussian elimination kernel basis of an m x n matrix mod p.
fn kernel_mod(m: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let rows = a.len();
    let mut pivot_col_of_row = vec![usize::MAX; rows];
    let mut row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..n {
        let mut piv = None;
        for r in row..rows {
            if a[r][col] % p != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        a.swap(row, piv);
        let inv = inv_mod(a[row][col], p);
        for c in col..n {
            a[row][c] = a[row][c] * inv % p;
        }
        for r in 0..rows {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in col..n {
                    a[r][c] = (a[r][c] + (p - f) * a[row][c]) % p;
                }
            }
        }
        pivot_col_of_row[row] = col;
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            if pc != usize::MAX {
                v[pc] = (p - a[r][free] % p) % p;
            }
        }
        basis.push(v);
    }
    basis
}

impl CharacterTable {
    pub fn compute(g: &FiniteGroup) -> Result<CharacterTable, String> {
        let n = g.order();
        // conjugacy classes of elements
        let mut el_class = vec![usize::MAX; n];
        let mut class_reps: Vec<ElId> = Vec::new();
        let mut members: Vec<Vec<ElId>> = Vec::new();
        for x in 0..n as u16 {
            if el_class[x as usize] != usize::MAX {
                continue;
            }
            let c = class_reps.len();
            class_reps.push(x);
            let mut mem = Vec::new();
            for y in 0..n as u16 {
                let z = g.conj(y, x);
                if el_class[z as usize] == usize::MAX {
                    el_class[z as usize] = c;
                    mem.push(z);
                }
            }
            members.push(mem);
        }
        let r = class_reps.len();
        let class_sizes: Vec<usize> = members.iter().map(|m| m.len()).collect();
        // exponent and prime choice
        let e = (0..n as u16).fold(1u64, |acc, x| acc.lcm(&(g.el_order(x) as u64)));
        let mut p = 2 * n as u64 + 1;
        while !(is_prime(p) && (p - 1) % e == 0) {
            p += 1;
        }
        // primitive e-th root of unity mod p
        let omega = {
            let mut gen = 2u64;
            loop {
                // test generator of the full multiplicative group
                let mut ok = true;
                let mut q = 2;
                let phi = p - 1;
                let mut m = phi;
                while q * q <= m {
                    if m % q == 0 {
                        if pow_mod(gen, phi / q, p) == 1 {
                            ok = false;
                            break;
                        }
                        while m % q == 0 {
                            m /= q;
                        }
                    }
                    q += 1;
                }
                if ok && m > 1 && pow_mod(gen, phi / m, p) == 1 {
                    ok = false;
                }
                if ok {
                    break pow_mod(gen, (p - 1) / e, p);
                }
                gen += 1;
            }
        };
        // class multiplication matrices A_i[j][k] = #{(x,y) in C_i x C_j : xy = z_k}
        let inv_class: Vec<usize> = class_reps
            .iter()
            .map(|&z| el_class[g.inv(z) as usize])
            .collect();
        let mats: Vec<Vec<Vec<u64>>> = (0..r)
            .map(|i| {
                let mut a = vec![vec![0u64; r]; r];
                for k in 0..r {
                    let zk = class_reps[k];
                    for &x in &members[i] {
                        let y = g.mul(g.inv(x), zk);
                        let j = el_class[y as usize];
                        a[j][k] += 1;
                    }
                }
                a
            })
            .collect();
        // split the r-dimensional space into common eigenvectors
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
            .map(|i| {
                let mut v = vec![0u64; r];
                v[i] = 1;
                v
            })
            .collect()];
        for mat in &mats {
            let mut next = Vec::new();
            for space in spaces {
                if space.len() <= 1 {
                    next.push(space);
                    continue;
                }
                let d = space.len();
                let mut found = Vec::new();
                let mut remaining = d;
                for lam in 0..p {
                    if remaining == 0 {
                        break;
                    }
                    // rows of (A - lam I) * B where B columns are basis vectors
                    let mut sys = vec![vec![0u64; d]; r];
                    for (bi, bv) in space.iter().enumerate() {
                        for row in 0..r {
                            let mut acc = 0u64;
                            for col in 0..r {
                                let m = if row == col {
                                    (mat[row][col] + p - lam % p) % p
                                } else {
                                    mat[row][col] % p
                                };
                                acc = (acc + m * bv[col]) % p;
                            }
                            sys[row][bi] = acc;
                        }
                    }
                    let ker = kernel_mod(&sys, d, p);
                    if ker.is_empty() {
                        continue;
                    }
                    remaining -= ker.len();
                    let sub: Vec<Vec<u64>> = ker
                        .iter()
                        .map(|c| {
                            let mut v = vec![0u64; r];
                            for (bi, bv) in space.iter().enumerate() {
                                for t in 0..r {
                                    v[t] = (v[t] + c[bi] * bv[t]) % p;
                                }
                            }
                            v
                        })
                        .collect();
                    found.push(sub);
                }
                if remaining != 0 {
                    return Err("class algebra failed to split over F_p".into());
                }
                next.extend(found);
            }
            spaces = next;
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
        }
        if !spaces.iter().all(|s| s.len() == 1) {
            return Err("class algebra eigenspaces not one-dimensional".into());
        }
        // recover characters
        let power_class: Vec<Vec<usize>> = (0..r)
            .map(|i| {
                let mut v = Vec::with_capacity(e as usize);
                let mut x = 0u16; // identity
                for _ in 0..e {
                    v.push(el_class[x as usize]);
                    x = g.mul(x, class_reps[i]);
                }
                // v[j] = class of rep^j with v[0] = identity class
                v
            })
            .collect();
        let einv = inv_mod(e % p, p);
        let mut complex_chars: Vec<Vec<(f64, f64)>> = Vec::new();
        for space in &spaces {
            let v = &space[0];
            if v[0] == 0 {
                return Err("eigenvector vanishes at the identity class".into());
            }
            let scale = inv_mod(v[0], p);
            let om: Vec<u64> = v.iter().map(|&x| x * scale % p).collect();
            // degree
            let mut s = 0u64;
            for i in 0..r {
                let ii = inv_class[i];
                let c = inv_mod(class_sizes[i] as u64 % p, p);
                s = (s + om[i] * om[ii] % p * c) % p;
            }
            let d2 = n as u64 % p * inv_mod(s, p) % p;
            let mut deg = 0u64;
            for d in 1..=n as u64 {
                if d * d > n as u64 {
                    break;
                }
                if d * d % p == d2 {
                    deg = d;
                    break;
                }
            }
            if deg == 0 {
                return Err("could not recover character degree".into());
            }
            let chi_p: Vec<u64> = (0..r)
                .map(|i| deg % p * om[i] % p * inv_mod(class_sizes[i] as u64 % p, p) % p)
                .collect();
            // lift via discrete Fourier inversion over the exponent
            let mut chi: Vec<(f64, f64)> = Vec::with_capacity(r);
            for i in 0..r {
                let mut val = (0.0f64, 0.0f64);
                for k in 0..e {
                    let mut mk = 0u64;
                    for j in 0..e {
                        let cls = power_class[i][j as usize];
                        let w = pow_mod(omega, (e - k % e) * j % e, p);
                        mk = (mk + chi_p[cls] * w) % p;
                    }
                    mk = mk * einv % p;
                    if mk > n as u64 {
                        return Err("character lift produced a large residue".into());
                    }
                    let ang = 2.0 * std::f64::consts::PI * k as f64 / e as f64;
                    val.0 += mk as f64 * ang.cos();
                    val.1 += mk as f64 * ang.sin();
                }
                chi.push(val);
            }
            complex_chars.push(chi);
        }
        // verify sum of squared degrees
        let degsum: f64 = complex_chars.iter().map(|c| c[0].0 * c[0].0).sum();
        if (degsum - n as f64).abs() > 1e-6 {
            return Err(format!(
                "degree check failed: sum of squares {} vs |G| {}",
                degsum, n
            ));
        }
        // row orthogonality
        for (a, ca) in complex_chars.iter().enumerate() {
            for (b, cb) in complex_chars.iter().enumerate() {
                let mut re = 0.0;
                let mut im = 0.0;
                for i in 0..r {
                    let (x, y) = ca[i];
                    let (u, w) = cb[i];
                    // <a,b> = (1/|G|) sum |C_i| a_i conj(b_i)
                    re += class_sizes[i] as f64 * (x * u + y * w);
                    im += class_sizes[i] as f64 * (y * u - x * w);
                }
                re /= n as f64;
                im /= n as f64;
                let want = if a == b { 1.0 } else { 0.0 };
                if (re - want).abs() > 1e-8 || im.abs() > 1e-8 {
                    return Err("row orthogonality check failed".into());
                }
            }
        }
        // Frobenius-Schur indicators and realification
        let sq_class: Vec<usize> = class_reps
            .iter()
            .map(|&z| el_class[g.mul(z, z) as usize])
            .collect();
        let mut used = vec![false; complex_chars.len()];
        let mut real_chars = Vec::new();
        let mut type_factor = Vec::new();
        for (i, chi) in complex_chars.iter().enumerate() {
            if used[i] {
                continue;
            }
            let mut fs = 0.0;
            for c in 0..r {
                fs += class_sizes[c] as f64 * chi[sq_class[c]].0;
            }
            fs /= n as f64;
            if (fs - 1.0).abs() < 1e-6 {
                used[i] = true;
                real_chars.push(chi.iter().map(|v| v.0).collect::<Vec<f64>>());
                type_factor.push(1);
            } else if fs.abs() < 1e-6 {
                // complex type: find the conjugate partner and realify
                let mut partner = None;
                for (j, chj) in complex_chars.iter().enumerate() {
                    if j == i || used[j] {
                        continue;
                    }
                    let close = (0..r).all(|c| {
                        (chi[c].0 - chj[c].0).abs() < 1e-6
                            && (chi[c].1 + chj[c].1).abs() < 1e-6
                    });
                    if close {
                        partner = Some(j);
                        break;
                    }
                }
                let j = partner.ok_or("missing conjugate character partner")?;
                used[i] = true;
                used[j] = true;
                real_chars.push(chi.iter().map(|v| 2.0 * v.0).collect::<Vec<f64>>());
                type_factor.push(2);
            } else if (fs + 1.0).abs() < 1e-6 {
                used[i] = true;
                real_chars.push(chi.iter().map(|v| 2.0 * v.0).collect::<Vec<f64>>());
                type_factor.push(4);
            } else {
                return Err(format!("Frobenius-Schur indicator {} not in -1,0,1", fs));
            }
        }
        // stable order: by degree then lexicographic values
        let mut idx: Vec<usize> = (0..real_chars.len()).collect();
        idx.sort_by(|&a, &b| {
            let da = real_chars[a][0] as i64;
            let db = real_chars[b][0] as i64;
            (da, format!("{:?}", real_chars[a])).cmp(&(db, format!("{:?}", real_chars[b])))
        });
        let real_chars: Vec<Vec<f64>> = idx.iter().map(|&i| real_chars[i].clone()).collect();
        let type_factor: Vec<u32> = idx.iter().map(|&i| type_factor[i]).collect();
        let real_degrees: Vec<usize> = real_chars.iter().map(|c| c[0].round() as usize).collect();
        Ok(CharacterTable {
            class_reps,
            class_sizes,
            el_class,
            complex_chars,
            real_chars,
            type_factor,
            real_degrees,
        })
    }

    pub fn n_real_irreducibles(&self) -> usize {
        self.real_chars.len()
    }

    /// chi_i evaluated on a group element.
    pub fn real_char_on(&self, i: usize, el: ElId) -> f64 {
        self.real_chars[i][self.el_class[el as usize]]
    }

    /// dim V^H = (1/|H|) sum_h chi(h), with an integrality check.
    pub fn fixed_dim(&self, chi: &[f64], h: &Members) -> Result<i64, String> {
        let s: f64 = h
            .iter()
            .map(|&x| chi[self.el_class[x as usize]])
            .sum::<f64>()
            / h.len() as f64;
        let r = s.round();
        if (s - r).abs() > 1e-6 {
            return Err(format!("non-integral fixed dimension {}", s));
        }
        Ok(r as i64)
    }

    /// Multiplicity of real irreducible i in the class function chi_v.
    pub fn multiplicity(&self, chi_v: &[f64], i: usize, order: usize) -> Result<i64, String> {
        let mut s = 0.0;
        for c in 0..self.class_reps.len() {
            s += self.class_sizes[c] as f64 * chi_v[c] * self.real_chars[i][c];
        }
        s /= order as f64 * self.type_factor[i] as f64;
        let r = s.round();
        if (s - r).abs() > 1e-6 {
            return Err(format!("non-integral multiplicity {}", s));
        }
        Ok(r as i64)
    }
}

/// A concrete orthogonal representation given by generator images.
#[derive(Debug, Clone)]
pub struct OrthogonalRep {
    pub dim: usize,
    /// matrix per group element, row-major
    pub mats: Vec<Vec<f64>>,
}

impl OrthogonalRep {
    /// Build from images of a generating set (in the order returned by
    /// `FiniteGroup::generating_set`).
    pub fn from_generator_images(
        g: &FiniteGroup,
        gens: &[ElId],
        images: &[Vec<f64>],
        dim: usize,
    ) -> Result<OrthogonalRep, String> {
        if gens.len() != images.len() {
            return Err("generator/image count mismatch".into());
        }
        for m in images {
            if m.len() != dim * dim {
                return Err("image matrix has wrong size".into());
            }
            // orthogonality within 1e-10
            for i in 0..dim {
                for j in 0..dim {
                    let mut s = 0.0;
                    for k in 0..dim {
                        s += m[k * dim + i] * m[k * dim + j];
                    }
                    let want = if i == j { 1.0 } else { 0.0 };
                    if (s - want).abs() > 1e-10 {
                        return Err("generator image is not orthogonal".into());
                    }
                }
            }
        }
        let n = g.order();
        let mut mats: Vec<Option<Vec<f64>>> = vec![None; n];
        mats[0] = Some(identity(dim));
        let mut frontier = vec![0u16];
        while let Some(x) = frontier.pop() {
            let mx = mats[x as usize].clone().unwrap();
            for (k, &gen) in gens.iter().enumerate() {
                let y = g.mul(gen, x);
                if mats[y as usize].is_none() {
                    mats[y as usize] = Some(matmul(&images[k], &mx, dim));
                    frontier.push(y);
                }
            }
        }
        let mats: Vec<Vec<f64>> = mats
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or("generators do not generate the group")?;
        // generator relations: multiplication table consistency on a sample
        for a in 0..n.min(16) {
            for b in 0..n.min(16) {
                let c = g.mul(a as u16, b as u16) as usize;
                let prod = matmul(&mats[a], &mats[b], dim);
                for (u, v) in prod.iter().zip(&mats[c]) {
                    if (u - v).abs() > 1e-8 {
                        return Err("generator images violate group relations".into());
                    }
                }
            }
        }
        Ok(OrthogonalRep { dim, mats })
    }

    pub fn character(&self, tab: &CharacterTable) -> Vec<f64> {
        tab.class_reps
            .iter()
            .map(|&c| {
                let m = &self.mats[c as usize];
                (0..self.dim).map(|i| m[i * self.dim + i]).sum()
            })
            .collect()
    }

    /// The isotypical multiplicities of the representation.
    pub fn isotypical_multiplicities(
        &self,
        g: &FiniteGroup,
        tab: &CharacterTable,
    ) -> Result<Vec<i64>, String> {
        let chi = self.character(tab);
        let mut out = Vec::new();
        for i in 0..tab.n_real_irreducibles() {
            out.push(tab.multiplicity(&chi, i, g.order())?);
        }
        // dimension bookkeeping
        let total: i64 = out
            .iter()
            .zip(&tab.real_degrees)
            .map(|(m, d)| m * *d as i64)
            .sum();
        if total != self.dim as i64 {
            return Err("isotypical multiplicities do not add up to dim V".into());
        }
        Ok(out)
    }
}

pub fn identity(d: usize) -> Vec<f64> {
    let mut m = vec![0.0; d * d];
    for i in 0..d {
        m[i * d + i] = 1.0;
    }
    m
}

pub fn matmul(a: &[f64], b: &[f64], d: usize) -> Vec<f64> {
    let mut out = vec![0.0; d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    out
}
