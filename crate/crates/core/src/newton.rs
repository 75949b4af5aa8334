//! The application layer for Gamma-symmetric Newtonian systems: spectra of
//! equivariant Hessians, the sigma^k sets of the variational linearization,
//! linear gradient degrees, existence/Nagumo/bifurcation invariants, and the
//! orbit-type annotations attached to them.

use crate::basicdeg::{DegreeCtx, IrrKind, RepVector};
use crate::burnside::EulerElement;
use crate::chartab::{matmul, CharacterTable, OrthogonalRep};
use crate::group::FiniteGroup;
use crate::lattice::{ClassId, GSub, GammaO2, Stratum};
use crate::perm::Perm;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Errors surfacing to the CLI with distinct exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum NewtonError {
    /// bad input (exit 2)
    Input(String),
    /// resonance / precondition violation (exit 3)
    Resonance(String),
    /// internal consistency failure (exit 4)
    Internal(String),
}

impl std::fmt::Display for NewtonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NewtonError::Input(s) => write!(f, "input error: {s}"),
            NewtonError::Resonance(s) => write!(f, "resonance/precondition: {s}"),
            NewtonError::Internal(s) => write!(f, "internal consistency failure: {s}"),
        }
    }
}

// ---------- symmetric eigensolver (cyclic Jacobi) ----------

/// Eigenvalues and an orthonormal eigenbasis of a symmetric matrix.
pub fn jacobi_eigen(a_in: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = a_in.to_vec();
    let mut v = crate::chartab::identity(n);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-18 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    (eig, v)
}

/// Eigenvalues of a symmetric equivariant matrix with isotypical
/// multiplicities per real irreducible.
#[derive(Debug, Clone)]
pub struct SpectrumProfile {
    /// ascending distinct eigenvalues
    pub eigenvalues: Vec<f64>,
    /// mults[e][i] = V_i-multiplicity of eigenvalues[e]
    pub mults: Vec<Vec<i64>>,
    pub tag: String,
}

pub fn spectrum(
    m: &[f64],
    g: &FiniteGroup,
    rep: &OrthogonalRep,
    tab: &CharacterTable,
    tag: &str,
) -> Result<SpectrumProfile, NewtonError> {
    let n = rep.dim;
    if m.len() != n * n {
        return Err(NewtonError::Input(format!(
            "matrix size {} does not match representation dimension {}",
            m.len(),
            n * n
        )));
    }
    for i in 0..n {
        for j in 0..n {
            if (m[i * n + j] - m[j * n + i]).abs() > 1e-10 {
                return Err(NewtonError::Input("matrix is not symmetric".into()));
            }
        }
    }
    // equivariance: commutes with every group element
    for el in 0..g.order() {
        let r = &rep.mats[el];
        let mr = matmul(m, r, n);
        let rm = matmul(r, m, n);
        for (x, y) in mr.iter().zip(&rm) {
            if (x - y).abs() > 1e-8 {
                return Err(NewtonError::Input(
                    "matrix does not commute with the group action".into(),
                ));
            }
        }
    }
    let (eig, vecs) = jacobi_eigen(m, n);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig[a].partial_cmp(&eig[b]).unwrap());
    // cluster
    let mut clusters: Vec<(f64, Vec<usize>)> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some((mu, idxs)) if (eig[i] - *mu).abs() < 1e-8 => idxs.push(i),
            _ => clusters.push((eig[i], vec![i])),
        }
    }
    let mut eigenvalues = Vec::new();
    let mut mults = Vec::new();
    for (mu, idxs) in &clusters {
        // character of the eigenspace as a class function
        let chi: Vec<f64> = tab
            .class_reps
            .iter()
            .map(|&c| {
                let r = &rep.mats[c as usize];
                let mut tr = 0.0;
                for &col in idxs {
                    for a in 0..n {
                        for b in 0..n {
                            tr += vecs[a * n + col] * r[a * n + b] * vecs[b * n + col];
                        }
                    }
                }
                tr
            })
            .collect();
        let mut row = Vec::new();
        for i in 0..tab.n_real_irreducibles() {
            let v = tab
                .multiplicity(&chi, i, g.order())
                .map_err(|e| NewtonError::Internal(format!("eigenspace at {mu}: {e}")))?;
            row.push(v);
        }
        let total: i64 = row
            .iter()
            .zip(&tab.real_degrees)
            .map(|(m, d)| m * *d as i64)
            .sum();
        if total != idxs.len() as i64 {
            return Err(NewtonError::Internal(format!(
                "isotypical multiplicities at eigenvalue {mu} sum to {total}, expected {}",
                idxs.len()
            )));
        }
        eigenvalues.push(*mu);
        mults.push(row);
    }
    Ok(SpectrumProfile {
        eigenvalues,
        mults,
        tag: tag.into(),
    })
}

// ---------- sigma sets ----------

/// Negative spectrum of the variational linearization per Fourier mode:
/// sigma^k = { 1 - (q mu + 1)/(k^2+1) : mu in sigma(A) } with q = (p/2pi)^2.
#[derive(Debug, Clone)]
pub struct SigmaSet {
    /// entries[k] = list of (xi, eigenvalue index) with xi < 0
    pub entries: Vec<Vec<(f64, usize)>>,
    pub q: f64,
}

pub fn sigma_sets(profile: &SpectrumProfile, q: f64) -> Result<SigmaSet, NewtonError> {
    if q <= 0.0 {
        return Err(NewtonError::Input("period must be positive".into()));
    }
    let mu_max = profile
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let mut entries = Vec::new();
    let mut k = 0usize;
    loop {
        let denom = (k * k + 1) as f64;
        let mut row = Vec::new();
        for (e, &mu) in profile.eigenvalues.iter().enumerate() {
            let xi = 1.0 - (q * mu + 1.0) / denom;
            if xi.abs() < 1e-10 {
                return Err(NewtonError::Resonance(format!(
                    "resonance at mode k={k}, eigenvalue {mu} (sigma value {xi:e})"
                )));
            }
            if xi < 0.0 {
                row.push((xi, e));
            }
        }
        let empty = row.is_empty();
        entries.push(row);
        // all further modes are positive once k^2+1 > q*mu_max + 1
        if k >= 1 && empty && (k * k) as f64 > q * mu_max {
            break;
        }
        if k > 10_000 {
            return Err(NewtonError::Internal("sigma set truncation failed".into()));
        }
        k += 1;
    }
    // drop trailing empty rows beyond k_max
    while entries.len() > 1 && entries.last().is_some_and(|r| r.is_empty()) {
        entries.pop();
    }
    Ok(SigmaSet { entries, q })
}

// ---------- linear gradient degree ----------

/// Gradient degree of the variational linearization determined by the
/// spectrum profile: the product over modes of gradient basic degrees raised
/// to the sigma^k multiplicities.
pub fn linear_gradient_degree(
    deg: &DegreeCtx,
    profile: &SpectrumProfile,
    q: f64,
) -> Result<EulerElement, NewtonError> {
    let sigma = sigma_sets(profile, q)?;
    let mut acc = deg.e.unit();
    for (k, row) in sigma.entries.iter().enumerate() {
        for (_, e) in row {
            for (j, &mj) in profile.mults[*e].iter().enumerate() {
                if mj == 0 {
                    continue;
                }
                if mj < 0 {
                    return Err(NewtonError::Internal("negative multiplicity".into()));
                }
                let kind = if k == 0 {
                    IrrKind::TypeI(j)
                } else {
                    IrrKind::TypeIII { j, l: k as u32 }
                };
                let base = deg.grad_basic_go2(kind);
                for _ in 0..mj {
                    acc = deg.e.multiply(&acc, &base);
                }
            }
        }
    }
    Ok(acc)
}

// ---------- invariants & annotations ----------

#[derive(Debug, Clone)]
pub struct ClassAnnotation {
    pub class: ClassId,
    pub maximal: bool,
    pub similarity_class: Option<usize>,
    pub anti_reflective: Option<bool>,
    pub s1_orbits: usize,
}

#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub invariant: EulerElement,
    pub annotations: Vec<ClassAnnotation>,
    /// critical parameter values, for bifurcation reports
    pub lambdas: Vec<CriticalLambda>,
    pub lambda0: Option<f64>,
    pub limit_period: Option<f64>,
    /// the normalized bracket (G) - prod Deg^m for bifurcation reports
    pub bracket: Option<EulerElement>,
    pub sigma_a: Option<SigmaSet>,
    pub sigma_b: Option<SigmaSet>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CriticalLambda {
    pub lambda: f64,
    pub k: usize,
    pub mu: f64,
    pub eigen_index: usize,
}

/// The Phi^f_k orbit types (isotropy classes of non-constant functions in the
/// k-th Fourier mode), their maximal elements, and similarity classes.
pub struct ModeOrbitTypes {
    pub per_mode: BTreeMap<usize, Vec<ClassId>>,
    pub maximal: BTreeSet<ClassId>,
    pub similarity: BTreeMap<ClassId, usize>,
}

pub fn mode_orbit_types(
    deg: &DegreeCtx,
    v_mults: &[i64],
    modes: &[usize],
) -> ModeOrbitTypes {
    let ctx = deg.ctx();
    let mut per_mode = BTreeMap::new();
    let mut maximal: BTreeSet<ClassId> = BTreeSet::new();
    let mut all_types: BTreeSet<ClassId> = BTreeSet::new();
    for &k in modes {
        if k == 0 {
            continue;
        }
        let rep: RepVector = v_mults
            .iter()
            .enumerate()
            .filter(|(_, m)| **m > 0)
            .map(|(j, m)| (IrrKind::TypeIII { j, l: k as u32 }, *m as u32))
            .collect();
        let types = deg.orbit_types_phi0(&rep);
        all_types.extend(types.iter().copied());
        // maximal elements of Phi^f_k
        for &t in &types {
            let dominated = types
                .iter()
                .any(|&u| u != t && ctx.n_number(t, u) > 0);
            if !dominated {
                maximal.insert(t);
            }
        }
        per_mode.insert(k, types);
    }
    // similarity: maximal types H, H' are similar if some f-orbit type K
    // dominates both; take the transitive closure
    let max_list: Vec<ClassId> = maximal.iter().copied().collect();
    let mut parent: Vec<usize> = (0..max_list.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..max_list.len() {
        for j in (i + 1)..max_list.len() {
            let linked = all_types.iter().any(|&k| {
                ctx.n_number(max_list[i], k) > 0 && ctx.n_number(max_list[j], k) > 0
            });
            if linked {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut similarity = BTreeMap::new();
    let mut canon: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &c) in max_list.iter().enumerate() {
        let root = find(&mut parent, i);
        let next = canon.len();
        let id = *canon.entry(root).or_insert(next);
        similarity.insert(c, id);
    }
    ModeOrbitTypes {
        per_mode,
        maximal,
        similarity,
    }
}

/// Whether the class surjects onto the auxiliary Z2 factor (anti-reflective);
/// `z2_part[g]` marks Gamma'-elements with nontrivial Z2 component.
pub fn is_anti_reflective(ctx: &GammaO2, id: ClassId, z2_part: &[bool]) -> bool {
    let h = match ctx.class_rep(id) {
        GSub::Fin(f) => ctx.fin_pi1(&f),
        GSub::Sym(s) => s.h,
    };
    h.iter().any(|&g| z2_part[g as usize])
}

fn annotate(
    deg: &DegreeCtx,
    invariant: &EulerElement,
    v_mults: &[i64],
    modes: &[usize],
    z2_part: Option<&[bool]>,
) -> Vec<ClassAnnotation> {
    let ctx = deg.ctx();
    let mot = mode_orbit_types(deg, v_mults, modes);
    invariant
        .coeffs
        .keys()
        .map(|&id| ClassAnnotation {
            class: id,
            maximal: mot.maximal.contains(&id),
            similarity_class: mot.similarity.get(&id).copied(),
            anti_reflective: z2_part.map(|z| is_anti_reflective(ctx, id, z)),
            s1_orbits: if ctx.class_stratum(id) != Stratum::Phi1 {
                ctx.s1_orbit_count(id)
            } else {
                0
            },
        })
        .collect()
}

fn contributing_modes(sigmas: &[&SigmaSet]) -> Vec<usize> {
    let mut out: BTreeSet<usize> = BTreeSet::new();
    for s in sigmas {
        for (k, row) in s.entries.iter().enumerate() {
            if k > 0 && !row.is_empty() {
                out.insert(k);
            }
        }
    }
    out.into_iter().collect()
}

/// Existence invariant for the asymptotically linear system:
/// grad-degree at infinity minus grad-degree at the origin.
pub fn existence_invariant(
    deg: &DegreeCtx,
    g: &FiniteGroup,
    rep: &OrthogonalRep,
    tab: &CharacterTable,
    a: &[f64],
    b: &[f64],
    q: f64,
    z2_part: Option<&[bool]>,
) -> Result<InvariantReport, NewtonError> {
    let pa = spectrum(a, g, rep, tab, "A")?;
    let pb = spectrum(b, g, rep, tab, "B")?;
    let da = linear_gradient_degree(deg, &pa, q)?;
    let db = linear_gradient_degree(deg, &pb, q)?;
    let mut invariant = db.clone();
    invariant.sub_assign(&da);
    let sa = sigma_sets(&pa, q)?;
    let sb = sigma_sets(&pb, q)?;
    let v_mults = rep
        .isotypical_multiplicities(g, tab)
        .map_err(NewtonError::Internal)?;
    let modes = contributing_modes(&[&sa, &sb]);
    let annotations = annotate(deg, &invariant, &v_mults, &modes, z2_part);
    Ok(InvariantReport {
        invariant,
        annotations,
        lambdas: vec![],
        lambda0: None,
        limit_period: None,
        bracket: None,
        sigma_a: Some(sa),
        sigma_b: Some(sb),
        notes: vec![],
    })
}

/// Nagumo-type invariant: (G) minus the grad-degree of the linearization.
pub fn nagumo_invariant(
    deg: &DegreeCtx,
    g: &FiniteGroup,
    rep: &OrthogonalRep,
    tab: &CharacterTable,
    a: &[f64],
    q: f64,
    z2_part: Option<&[bool]>,
) -> Result<InvariantReport, NewtonError> {
    let pa = spectrum(a, g, rep, tab, "A")?;
    let da = linear_gradient_degree(deg, &pa, q)?;
    let mut invariant = deg.e.unit();
    invariant.sub_assign(&da);
    let sa = sigma_sets(&pa, q)?;
    let v_mults = rep
        .isotypical_multiplicities(g, tab)
        .map_err(NewtonError::Internal)?;
    let modes = contributing_modes(&[&sa]);
    let annotations = annotate(deg, &invariant, &v_mults, &modes, z2_part);
    Ok(InvariantReport {
        invariant,
        annotations,
        lambdas: vec![],
        lambda0: None,
        limit_period: None,
        bracket: None,
        sigma_a: Some(sa),
        sigma_b: None,
        notes: vec![],
    })
}

/// The critical parameter set Lambda = {k / sqrt(mu)} for positive
/// eigenvalues, ascending, truncated at `max_k` harmonics.
pub fn critical_lambdas(
    profile: &SpectrumProfile,
    max_k: usize,
) -> Result<Vec<CriticalLambda>, NewtonError> {
    if profile.eigenvalues.iter().any(|&mu| mu.abs() < 1e-12) {
        return Err(NewtonError::Resonance(
            "0 lies in the spectrum of A (condition A7 fails)".into(),
        ));
    }
    let mut out = Vec::new();
    for (e, &mu) in profile.eigenvalues.iter().enumerate() {
        if mu <= 0.0 {
            continue;
        }
        for k in 1..=max_k {
            out.push(CriticalLambda {
                lambda: k as f64 / mu.sqrt(),
                k,
                mu,
                eigen_index: e,
            });
        }
    }
    out.sort_by(|x, y| x.lambda.partial_cmp(&y.lambda).unwrap());
    Ok(out)
}

/// Equivariant bifurcation invariant at the critical value lambda0: the jump
/// of the gradient degree across lambda0, plus the normalized bracket
/// (G) - prod of crossing basic degrees.
pub fn bifurcation_invariant(
    deg: &DegreeCtx,
    g: &FiniteGroup,
    rep: &OrthogonalRep,
    tab: &CharacterTable,
    a: &[f64],
    lambda0: f64,
    z2_part: Option<&[bool]>,
) -> Result<InvariantReport, NewtonError> {
    let pa = spectrum(a, g, rep, tab, "A")?;
    let lambdas = critical_lambdas(&pa, 32)?;
    let pos = lambdas
        .iter()
        .position(|l| (l.lambda - lambda0).abs() < 1e-9)
        .ok_or_else(|| {
            NewtonError::Input(format!("{lambda0} is not a critical value"))
        })?;
    // delta: half the gap to the nearest distinct critical value
    let mut gap = f64::INFINITY;
    for l in &lambdas {
        let d = (l.lambda - lambda0).abs();
        if d > 1e-9 && d < gap {
            gap = d;
        }
    }
    if !gap.is_finite() {
        gap = lambda0;
    }
    let delta = gap / 2.0;
    let qm = (lambda0 - delta) * (lambda0 - delta);
    let qp = (lambda0 + delta) * (lambda0 + delta);
    let dm = linear_gradient_degree(deg, &pa, qm)?;
    let dp = linear_gradient_degree(deg, &pa, qp)?;
    let mut invariant = dm.clone();
    invariant.sub_assign(&dp);
    // crossing factors: all (k, mu) with lambda = k/sqrt(mu) = lambda0
    let crossing: Vec<&CriticalLambda> = lambdas
        .iter()
        .filter(|l| (l.lambda - lambda0).abs() < 1e-9)
        .collect();
    let mut prod = deg.e.unit();
    let mut modes: BTreeSet<usize> = BTreeSet::new();
    for c in &crossing {
        modes.insert(c.k);
        for (j, &mj) in pa.mults[c.eigen_index].iter().enumerate() {
            if mj <= 0 {
                continue;
            }
            let base = deg.grad_basic_go2(IrrKind::TypeIII {
                j,
                l: c.k as u32,
            });
            for _ in 0..mj {
                prod = deg.e.multiply(&prod, &base);
            }
        }
    }
    let mut bracket = deg.e.unit();
    bracket.sub_assign(&prod);
    let mut notes = vec![];
    if crossing.len() > 1 {
        notes.push(format!(
            "{} eigenvalue/mode pairs collide at lambda0; all crossing factors entered the bracket",
            crossing.len()
        ));
    }
    let v_mults = rep
        .isotypical_multiplicities(g, tab)
        .map_err(NewtonError::Internal)?;
    let mode_list: Vec<usize> = modes.into_iter().collect();
    let annotations = annotate(deg, &bracket, &v_mults, &mode_list, z2_part);
    Ok(InvariantReport {
        invariant,
        annotations,
        lambdas,
        lambda0: Some(lambda0),
        limit_period: Some(2.0 * std::f64::consts::PI * lambda0),
        bracket: Some(bracket),
        sigma_a: None,
        sigma_b: None,
        notes,
    })
}

// ---------- a priori bounds ----------

/// R0 = max(M, p (M' + M)).
pub fn apriori_bound(m: f64, m_prime: f64, p: f64) -> Result<f64, NewtonError> {
    if m <= 0.0 || m_prime < 0.0 || p <= 0.0 {
        return Err(NewtonError::Input("bounds must be positive".into()));
    }
    Ok(m.max(p * (m_prime + m)))
}

/// Minimal period bound p >= 1/sqrt(K).
pub fn min_period_bound(k: f64) -> Result<f64, NewtonError> {
    if k <= 0.0 {
        return Err(NewtonError::Input(
            "Hessian bound must be positive".into(),
        ));
    }
    Ok(1.0 / k.sqrt())
}

// ---------- odd symmetry ----------

/// Extend Gamma (a permutation group on d points) to Gamma x Z2 acting on
/// d + 2 points, the extra swap acting on V by -Id. Returns the group, the
/// extended representation and the Z2-part marker per element.
pub fn with_odd_symmetry(
    g: &FiniteGroup,
    rep: &OrthogonalRep,
) -> Result<(FiniteGroup, OrthogonalRep, Vec<bool>), String> {
    let d = g.degree;
    let mut gens: Vec<Perm> = Vec::new();
    let gen_ids = g.generating_set();
    for &x in &gen_ids {
        let mut img: Vec<usize> = (0..d + 2).collect();
        for (i, item) in g.elems[x as usize].0.iter().enumerate() {
            img[i] = *item;
        }
        gens.push(Perm(img));
    }
    let mut swap: Vec<usize> = (0..d + 2).collect();
    swap.swap(d, d + 1);
    gens.push(Perm(swap));
    let g2 = FiniteGroup::from_generators(&format!("{}xZ2", g.name), d + 2, &gens)?;
    let n = rep.dim;
    let mut images: Vec<Vec<f64>> = gen_ids
        .iter()
        .map(|&x| rep.mats[x as usize].clone())
        .collect();
    let mut minus = vec![0.0; n * n];
    for i in 0..n {
        minus[i * n + i] = -1.0;
    }
    images.push(minus);
    // the generating set of g2 is not automatically gens; rebuild explicitly
    let gen_ids2: Vec<u16> = gens
        .iter()
        .map(|p| g2.elems.iter().position(|q| q == p).unwrap() as u16)
        .collect();
    let rep2 = OrthogonalRep::from_generator_images(&g2, &gen_ids2, &images, n)?;
    let z2_part: Vec<bool> = g2.elems.iter().map(|p| p.apply(d) != d).collect();
    Ok((g2, rep2, z2_part))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn jacobi_small_matrix() {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let (e, v) = jacobi_eigen(&[2.0, 1.0, 1.0, 2.0], 2);
        let mut ee = e.clone();
        ee.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ee[0] - 1.0).abs() < 1e-12);
        assert!((ee[1] - 3.0).abs() < 1e-12);
        // columns orthonormal
        let dot = v[0] * v[1] + v[2] * v[3];
        assert!(dot.abs() < 1e-12);
    }

    fn s4_perm_rep(g: &FiniteGroup) -> OrthogonalRep {
        let gens = g.generating_set();
        let images: Vec<Vec<f64>> = gens
            .iter()
            .map(|&x| {
                let p = &g.elems[x as usize];
                let mut m = vec![0.0; 16];
                for i in 0..4 {
                    m[p.apply(i) * 4 + i] = 1.0;
                }
                m
            })
            .collect();
        OrthogonalRep::from_generator_images(g, &gens, &images, 4).unwrap()
    }

    fn cmat(c: f64, d: f64) -> Vec<f64> {
        let mut m = vec![d; 16];
        for i in 0..4 {
            m[i * 4 + i] = c;
        }
        m
    }

    #[test]
    fn s4_spectrum_examples() {
        let g = samples::s4();
        let tab = CharacterTable::compute(&g).unwrap();
        let rep = s4_perm_rep(&g);
        // A: c=18.8, d=-1.5 -> {14.3 (V3), 20.3 (V0)}
        let pa = spectrum(&cmat(18.8, -1.5), &g, &rep, &tab, "A").unwrap();
        assert_eq!(pa.eigenvalues.len(), 2);
        assert!((pa.eigenvalues[0] - 14.3).abs() < 1e-9);
        assert!((pa.eigenvalues[1] - 20.3).abs() < 1e-9);
        // B: c=2.1, d=1.2 -> {0.9, 5.7}
        let pb = spectrum(&cmat(2.1, 1.2), &g, &rep, &tab, "B").unwrap();
        assert!((pb.eigenvalues[0] - 0.9).abs() < 1e-9);
        assert!((pb.eigenvalues[1] - 5.7).abs() < 1e-9);
        // multiplicities: one trivial on c+3d, one standard on c-d
        let triv = tab
            .real_chars
            .iter()
            .position(|c| c.iter().all(|&v| (v - 1.0).abs() < 1e-9))
            .unwrap();
        // c+3d = 14.3 for A is the V0 eigenvalue? c+3d = 18.8-4.5 = 14.3 yes
        assert_eq!(pa.mults[0][triv], 1);
        assert_eq!(pa.mults[1][triv], 0);
    }

    #[test]
    fn sigma_table_ex1() {
        let g = samples::s4();
        let tab = CharacterTable::compute(&g).unwrap();
        let rep = s4_perm_rep(&g);
        let pa = spectrum(&cmat(18.8, -1.5), &g, &rep, &tab, "A").unwrap();
        let s = sigma_sets(&pa, 1.0).unwrap();
        // k = 0: {-14.3, -20.3}; k=1: {-6.65, -9.65}; k=2: {-2.06, -3.26};
        // k=3: {-0.53, -1.13}; k=4: {-0.25}
        let flat: Vec<Vec<f64>> = s
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.0).collect())
            .collect();
        let want: Vec<Vec<f64>> = vec![
            vec![-14.3, -20.3],
            vec![-6.65, -9.65],
            vec![-2.06, -3.26],
            vec![-0.53, -1.13],
            vec![-0.25],
        ];
        assert_eq!(flat.len(), want.len());
        for (row, wrow) in flat.iter().zip(&want) {
            assert_eq!(row.len(), wrow.len());
            for (x, y) in row.iter().zip(wrow) {
                assert!((x - y).abs() < 1e-9, "sigma {x} vs {y}");
            }
        }
        let pb = spectrum(&cmat(2.1, 1.2), &g, &rep, &tab, "B").unwrap();
        let s = sigma_sets(&pb, 1.0).unwrap();
        let flat: Vec<Vec<f64>> = s
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.0).collect())
            .collect();
        let want = vec![vec![-0.9, -5.7], vec![-2.35], vec![-0.34]];
        assert_eq!(flat.len(), want.len());
        for (row, wrow) in flat.iter().zip(&want) {
            let mut r = row.clone();
            r.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let mut w = wrow.clone();
            w.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (x, y) in r.iter().zip(&w) {
                assert!((x - y).abs() < 1e-9, "sigma {x} vs {y}");
            }
        }
    }

    #[test]
    fn lambda_head_values() {
        let g = samples::s4();
        let tab = CharacterTable::compute(&g).unwrap();
        let rep = s4_perm_rep(&g);
        let pa = spectrum(&cmat(18.8, -1.5), &g, &rep, &tab, "A").unwrap();
        let l = critical_lambdas(&pa, 4).unwrap();
        let head: Vec<f64> = l.iter().take(4).map(|x| x.lambda).collect();
        let want = [0.22194838, 0.26444294, 0.44389676, 0.52888589];
        for (x, y) in head.iter().zip(&want) {
            assert!((x - y).abs() < 1e-6, "lambda {x} vs {y}");
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(apriori_bound(1.0, 1.0, 1.0).unwrap(), 2.0);
        let v = apriori_bound(2.0, 3.0, 2.0 * std::f64::consts::PI).unwrap();
        assert!((v - 10.0 * std::f64::consts::PI).abs() < 1e-12);
        assert_eq!(apriori_bound(1.0, 0.0, 3.0).unwrap(), 3.0);
        assert_eq!(min_period_bound(1.0).unwrap(), 1.0);
        assert_eq!(min_period_bound(4.0).unwrap(), 0.5);
        assert_eq!(min_period_bound(0.25).unwrap(), 2.0);
        assert!(min_period_bound(-1.0).is_err());
    }

    #[test]
    fn resonance_is_refused() {
        let g = samples::s4();
        let tab = CharacterTable::compute(&g).unwrap();
        let rep = s4_perm_rep(&g);
        // mu = 4 at q = 1 makes xi = 1 - 5/5 = 0 at k = 2
        let pa = spectrum(&cmat(4.0, 0.0), &g, &rep, &tab, "A").unwrap();
        match sigma_sets(&pa, 1.0) {
            Err(NewtonError::Resonance(msg)) => assert!(msg.contains("k=2")),
            other => panic!("expected resonance, got {other:?}"),
        }
    }

    #[test]
    fn existence_antisymmetry_and_zero() {
        let g = samples::s4();
        let tab = CharacterTable::compute(&g).unwrap();
        let rep = s4_perm_rep(&g);
        let ctx = GammaO2::new(samples::s4());
        let tab2 = CharacterTable::compute(&ctx.gamma).unwrap();
        let d = DegreeCtx::new(&ctx, &tab2);
        let _ = (&g, &tab);
        let a = cmat(18.8, -1.5);
        let b = cmat(2.1, 1.2);
        let rep2 = s4_perm_rep(&ctx.gamma);
        let ab = existence_invariant(&d, &ctx.gamma, &rep2, &tab2, &a, &b, 1.0, None).unwrap();
        let ba = existence_invariant(&d, &ctx.gamma, &rep2, &tab2, &b, &a, 1.0, None).unwrap();
        let mut sum = ab.invariant.clone();
        sum.add_assign(&ba.invariant);
        assert!(sum.is_zero(), "existence invariant not antisymmetric");
        let aa = existence_invariant(&d, &ctx.gamma, &rep2, &tab2, &a, &a, 1.0, None).unwrap();
        assert!(aa.invariant.is_zero());
    }
}
