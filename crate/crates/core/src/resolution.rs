//! Minimal projective resolutions: the direct algorithm by iterated
//! projective covers, and the envelope tree over the parent algebra whose
//! image under `F_e` resolves over `Γ_e`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::module::{ModMap, Module, MultiplicityVector};
use crate::scalar::Scalar;
use crate::subring::GammaContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionStatus {
    /// The syzygy after the last term vanished.
    Terminated,
    /// Terms were computed up to `bound` and the next syzygy is nonzero.
    Truncated { bound: usize },
}

impl ResolutionStatus {
    pub fn is_terminated(self) -> bool {
        matches!(self, ResolutionStatus::Terminated)
    }
}

impl fmt::Display for ResolutionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolutionStatus::Terminated => write!(f, "terminated"),
            ResolutionStatus::Truncated { bound } => write!(f, "truncated at {bound}"),
        }
    }
}

/// `... -> P_1 -> P_0 -> M -> 0`. `differentials[k - 1]` is `d_k: P_k -> P_{k-1}`.
#[derive(Clone, Debug)]
pub struct Resolution<T> {
    algebra: Arc<Algebra<T>>,
    target: Module<T>,
    summands: Vec<Vec<usize>>,
    projectives: Vec<Module<T>>,
    differentials: Vec<ModMap<T>>,
    augmentation: ModMap<T>,
    status: ResolutionStatus,
}

impl<T: Scalar> Resolution<T> {
    /// Assembles a complex without checking it; see [`verify_minimal_resolution`].
    pub fn from_parts(
        target: Module<T>,
        summands: Vec<Vec<usize>>,
        differentials: Vec<ModMap<T>>,
        augmentation: ModMap<T>,
        status: ResolutionStatus,
    ) -> Self {
        let algebra = target.algebra().clone();
        let projectives = summands.iter().map(|s| Module::projective_sum(algebra.clone(), s)).collect();
        Resolution { algebra, target, summands, projectives, differentials, augmentation, status }
    }

    pub fn algebra(&self) -> &Arc<Algebra<T>> {
        &self.algebra
    }

    pub fn target(&self) -> &Module<T> {
        &self.target
    }

    pub fn terms(&self) -> Vec<MultiplicityVector> {
        let n = self.algebra.vertex_count();
        self.summands.iter().map(|s| MultiplicityVector::from_summands(n, s)).collect()
    }

    /// Number of computed terms.
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self, k: usize) -> &[usize] {
        &self.summands[k]
    }

    pub fn projective(&self, k: usize) -> &Module<T> {
        &self.projectives[k]
    }

    /// `d_k: P_k -> P_{k-1}` for `k >= 1`.
    pub fn differential(&self, k: usize) -> &ModMap<T> {
        &self.differentials[k - 1]
    }

    pub fn augmentation(&self) -> &ModMap<T> {
        &self.augmentation
    }

    pub fn status(&self) -> ResolutionStatus {
        self.status
    }

    /// Projective dimension when terminated (`None` for the zero module).
    pub fn projective_dimension(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    /// Multiplicity of `P(v)` in degree `k`, zero past the computed range.
    pub fn multiplicity(&self, k: usize, v: usize) -> usize {
        self.summands.get(k).map_or(0, |s| s.iter().filter(|&&w| w == v).count())
    }
}

/// Iterated projective covers of syzygies, degrees `0..=maxdeg`.
pub fn minimal_projective_resolution<T: Scalar>(m: &Module<T>, maxdeg: usize) -> Resolution<T> {
    let algebra = m.algebra().clone();
    let mut summands = Vec::new();
    let mut projectives: Vec<Module<T>> = Vec::new();
    let mut differentials = Vec::new();
    let mut augmentation = ModMap::zero(Module::zero(algebra.clone()), m.clone());
    let mut omega = m.clone();
    let mut inclusion: Option<ModMap<T>> = None;
    for k in 0..=maxdeg {
        if omega.is_zero() {
            break;
        }
        let cover = omega.projective_cover();
        match &inclusion {
            None => augmentation = cover.map.clone(),
            Some(inc) => differentials.push(cover.map.then(inc)),
        }
        let (syzygy, inc) = cover.map.kernel();
        summands.push(cover.summands);
        projectives.push(cover.projective);
        omega = syzygy;
        inclusion = Some(inc);
        debug_assert!(k == summands.len() - 1);
    }
    let status = if omega.is_zero() { ResolutionStatus::Terminated } else { ResolutionStatus::Truncated { bound: maxdeg } };
    Resolution { algebra, target: m.clone(), summands, projectives, differentials, augmentation, status }
}

/// The tree `Ω_i -> X_i`, `K_i -> Ω_i`, `P_i -> K_i`, `Ω_{i+1} -> P_i`.
///
/// `omega`, `x` and `k` run one degree further than `p`: the envelope of the
/// last syzygy decides whether the induced resolution stops.
#[derive(Clone, Debug)]
pub struct ConstructionTrace<T> {
    pub context: GammaContext<T>,
    pub omega: Vec<Module<T>>,
    pub x: Vec<Module<T>>,
    pub k: Vec<Module<T>>,
    pub p: Vec<Module<T>>,
    pub p_summands: Vec<Vec<usize>>,
    /// `f_i: Ω_i -> X_i`
    pub f: Vec<ModMap<T>>,
    /// `k_i: K_i -> Ω_i`
    pub k_maps: Vec<ModMap<T>>,
    /// `g_i: P_i -> K_i`
    pub g: Vec<ModMap<T>>,
    /// `h_i: Ω_{i+1} -> P_i`
    pub h: Vec<ModMap<T>>,
    pub status: ResolutionStatus,
}

impl<T: Scalar> ConstructionTrace<T> {
    pub fn p_terms(&self) -> Vec<MultiplicityVector> {
        let n = self.context.parent().vertex_count();
        self.p_summands.iter().map(|s| MultiplicityVector::from_summands(n, s)).collect()
    }

    /// Dimension vector of `X_i`, zero past the computed range.
    pub fn x_dims(&self, i: usize) -> Vec<usize> {
        self.x.get(i).map_or_else(|| vec![0; self.context.parent().vertex_count()], |m| m.dims().to_vec())
    }
}

pub fn run_construction<T: Scalar>(ctx: &GammaContext<T>, omega0: &Module<T>, maxdeg: usize) -> ConstructionTrace<T> {
    let mut trace = ConstructionTrace {
        context: ctx.clone(),
        omega: vec![omega0.clone()],
        x: Vec::new(),
        k: Vec::new(),
        p: Vec::new(),
        p_summands: Vec::new(),
        f: Vec::new(),
        k_maps: Vec::new(),
        g: Vec::new(),
        h: Vec::new(),
        status: ResolutionStatus::Terminated,
    };
    for i in 0..=maxdeg + 1 {
        let env = ctx.serre_envelope(&trace.omega[i]);
        let k_zero = env.k.is_zero();
        trace.x.push(env.x);
        trace.f.push(env.f);
        trace.k.push(env.k);
        trace.k_maps.push(env.k_map);
        if k_zero {
            return trace;
        }
        if i == maxdeg + 1 {
            trace.status = ResolutionStatus::Truncated { bound: maxdeg };
            return trace;
        }
        let cover = trace.k[i].projective_cover();
        let (next, h) = cover.map.kernel();
        trace.p.push(cover.projective);
        trace.p_summands.push(cover.summands);
        trace.g.push(cover.map);
        trace.omega.push(next);
        trace.h.push(h);
    }
    unreachable!("loop returns at i = maxdeg + 1")
}

/// `C_i = F_e(P_i)`, `d_i = F_e(g_i k_i h_{i-1})`, `ε = F_e(g_0 k_0)`.
pub fn induced_resolution<T: Scalar>(trace: &ConstructionTrace<T>) -> Resolution<T> {
    let ctx = &trace.context;
    let gamma = ctx.gamma().clone();
    let target = ctx.apply_fe(&trace.omega[0]);
    let summands: Vec<Vec<usize>> = trace
        .p_summands
        .iter()
        .map(|s| s.iter().map(|&v| ctx.gamma_vertex(v).expect("cover of K_i avoids E")).collect())
        .collect();
    let projectives: Vec<Module<T>> = trace.p.iter().map(|p| ctx.apply_fe(p)).collect();
    let augmentation = match trace.g.first() {
        Some(g0) => ctx.apply_fe_map(&g0.then(&trace.k_maps[0])),
        None => ModMap::zero(Module::zero(gamma.clone()), target.clone()),
    };
    let differentials = (1..trace.p.len())
        .map(|i| ctx.apply_fe_map(&trace.g[i].then(&trace.k_maps[i]).then(&trace.h[i - 1])))
        .collect();
    Resolution { algebra: gamma, target, summands, projectives, differentials, augmentation, status: trace.status }
}

/// Compares the induced resolution of `trace` with a minimal resolution of
/// `F_e(Ω_0)` computed directly over `Γ_e`, term by term and in status.
pub fn oracle_compare<T: Scalar>(trace: &ConstructionTrace<T>) -> Verification {
    let bound = match trace.status {
        ResolutionStatus::Truncated { bound } => bound,
        ResolutionStatus::Terminated => trace.p.len(),
    };
    let induced = induced_resolution(trace);
    let oracle = minimal_projective_resolution(&trace.context.apply_fe(&trace.omega[0]), bound);
    let (a, b) = (induced.terms(), oracle.terms());
    if let Some(k) = (0..a.len().max(b.len())).find(|&k| a.get(k) != b.get(k)) {
        let show = |t: Option<&MultiplicityVector>| t.map_or("0".to_string(), |m| m.to_string());
        return Err(format!("degree {k}: induced {} but direct {}", show(a.get(k)), show(b.get(k))));
    }
    if induced.status() != oracle.status() {
        return Err(format!("status: induced {} but direct {}", induced.status(), oracle.status()));
    }
    Ok(())
}

/// Outcome of [`verify_minimal_resolution`]: `Err` names the first violated invariant.
pub type Verification = Result<(), String>;

/// Checks `d d = 0`, exactness by dimension counts, radical differentials
/// and a surjective augmentation with radical kernel.
pub fn verify_minimal_resolution<T: Scalar>(res: &Resolution<T>) -> Verification {
    let target = &res.target;
    if res.is_empty() {
        return if target.is_zero() && res.status.is_terminated() {
            Ok(())
        } else {
            Err("empty resolution of a nonzero module".into())
        };
    }
    let eps = &res.augmentation;
    if !eps.is_surjective() {
        return Err("augmentation is not surjective".into());
    }
    let nv = res.algebra.vertex_count();
    let kernel_dims = |f: &ModMap<T>| -> Vec<usize> { (0..nv).map(|v| f.domain().dim_at(v) - f.rank_at(v)).collect() };
    let rank_dims = |f: &ModMap<T>| -> Vec<usize> { (0..nv).map(|v| f.rank_at(v)).collect() };
    let (_, ker_eps) = eps.kernel();
    if !ker_eps.is_radical() {
        return Err("augmentation is not a projective cover".into());
    }
    for k in 1..res.len() {
        let d = res.differential(k);
        if !d.is_radical() {
            return Err(format!("differential d_{k} is not radical"));
        }
        let previous = if k == 1 { eps.clone() } else { res.differential(k - 1).clone() };
        if !d.then(&previous).is_zero() {
            return Err(format!("d_{k} composed with the previous map is nonzero"));
        }
        if rank_dims(d) != kernel_dims(&previous) {
            return Err(format!("not exact at degree {}", k - 1));
        }
    }
    if res.status.is_terminated() {
        let last = if res.len() == 1 { eps } else { res.differential(res.len() - 1) };
        if !last.is_injective() {
            return Err(format!("terminated but the map out of degree {} is not injective", res.len() - 1));
        }
    }
    Ok(())
}
