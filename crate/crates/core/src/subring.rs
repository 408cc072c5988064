//! The idempotent subring `Γ_e = (1-e)A(1-e)` and the functors around it.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, IdempotentSelector};
use crate::linalg::{Mat, Subspace};
use crate::module::{same_algebra, ModMap, Module};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubringError {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("module is not over the expected algebra")]
    WrongAlgebra,
}

/// `A` together with `e` and the restricted algebra `Γ_e`.
#[derive(Clone, Debug)]
pub struct GammaContext<T> {
    parent: Arc<Algebra<T>>,
    e: IdempotentSelector,
    gamma: Arc<Algebra<T>>,
    embedding: Vec<usize>,
    kept_vertices: Vec<usize>,
}

impl<T: Scalar> GammaContext<T> {
    pub fn parent(&self) -> &Arc<Algebra<T>> {
        &self.parent
    }

    pub fn selector(&self) -> &IdempotentSelector {
        &self.e
    }

    pub fn gamma(&self) -> &Arc<Algebra<T>> {
        &self.gamma
    }

    /// Parent basis index of each basis element of `Γ_e`.
    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    /// Parent vertex of each vertex of `Γ_e`.
    pub fn kept_vertices(&self) -> &[usize] {
        &self.kept_vertices
    }

    /// `Γ_e` has no vertices (every vertex selected).
    pub fn is_degenerate(&self) -> bool {
        self.kept_vertices.is_empty()
    }

    pub fn gamma_vertex(&self, parent_vertex: usize) -> Option<usize> {
        self.kept_vertices.iter().position(|&v| v == parent_vertex)
    }

    /// `F_e`: keep the blocks outside `E` and the surviving actions.
    pub fn apply_fe(&self, m: &Module<T>) -> Module<T> {
        assert!(same_algebra(m.algebra(), &self.parent), "module is not over the parent algebra");
        let dims = self.kept_vertices.iter().map(|&v| m.dim_at(v)).collect();
        let actions = self.embedding.iter().map(|&b| m.action(b).clone()).collect();
        Module::from_parts(self.gamma.clone(), dims, actions)
    }

    pub fn apply_fe_map(&self, f: &ModMap<T>) -> ModMap<T> {
        let blocks = self.kept_vertices.iter().map(|&v| f.block(v).clone()).collect();
        ModMap::from_parts(self.apply_fe(f.domain()), self.apply_fe(f.codomain()), blocks)
    }

    /// `G_e` through a minimal projective presentation `Q_1 -> Q_0 -> N`.
    ///
    /// `e_v Γ e_w = e_v A e_w` for `v, w` outside `E`, so generator images
    /// in `Q_0` carry over to the lifted projectives coordinate for coordinate.
    pub fn apply_ge(&self, n: &Module<T>) -> Module<T> {
        assert!(same_algebra(n.algebra(), &self.gamma), "module is not over the subring");
        let cover0 = n.projective_cover();
        let (_, syzygy) = cover0.map.kernel();
        let cover1 = syzygy.domain().projective_cover();
        let presentation = cover1.map.then(&syzygy);
        let images = presentation.generator_images(&cover1.summands);
        let q0 = Module::projective_sum(self.parent.clone(), &self.lift_summands(&cover0.summands));
        let lifted1 = self.lift_summands(&cover1.summands);
        let q1 = Module::projective_sum(self.parent.clone(), &lifted1);
        let d = ModMap::from_generator_images(&q1, &lifted1, &q0, &images);
        d.cokernel().0
    }

    /// Parent vertices of a list of `Γ_e` vertices.
    pub fn lift_summands(&self, summands: &[usize]) -> Vec<usize> {
        summands.iter().map(|&v| self.kept_vertices[v]).collect()
    }

    /// `M<1-e>`: the submodule generated by the blocks `M e_v`, `v` outside `E`.
    pub fn trace_spaces(&self, m: &Module<T>) -> Vec<Subspace<T>> {
        let seeds: Vec<Mat<T>> = (0..self.parent.vertex_count())
            .map(|v| if self.e.contains(v) { Mat::zeros(0, m.dim_at(v)) } else { Mat::identity(m.dim_at(v)) })
            .collect();
        m.generated_spaces(&seeds)
    }

    /// The envelope `M -> X = M / M<1-e>` with kernel `K = M<1-e>`.
    pub fn serre_envelope(&self, m: &Module<T>) -> Envelope<T> {
        let spaces = self.trace_spaces(m);
        let (k, k_map) = m.submodule(&spaces);
        let (x, f) = m.quotient(&spaces);
        Envelope { x, f, k, k_map }
    }
}

pub struct Envelope<T> {
    pub x: Module<T>,
    /// `M -> X`
    pub f: ModMap<T>,
    pub k: Module<T>,
    /// `K -> M`
    pub k_map: ModMap<T>,
}

pub fn gamma_algebra<T: Scalar>(parent: &Arc<Algebra<T>>, e: &IdempotentSelector) -> Result<GammaContext<T>, SubringError> {
    if let Some(v) = e.vertices().find(|&v| v >= parent.vertex_count()) {
        return Err(SubringError::VertexOutOfRange(v));
    }
    let kept_vertices: Vec<usize> = (0..parent.vertex_count()).filter(|&v| !e.contains(v)).collect();
    let embedding: Vec<usize> =
        (0..parent.dim()).filter(|&b| !e.contains(parent.source(b)) && !e.contains(parent.target(b))).collect();
    let gamma = if e.is_empty() { parent.clone() } else { Arc::new(parent.restrict(&kept_vertices, &embedding)) };
    Ok(GammaContext { parent: parent.clone(), e: e.clone(), gamma, embedding, kept_vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::module::MultiplicityVector;
    use crate::scalar::Fp;

    type F5 = Fp<5>;

    fn a2() -> Algebra<F5> {
        examples::a2()
    }

    fn a3_rel() -> Algebra<F5> {
        examples::a3_with_relation()
    }

    fn ctx(a: Algebra<F5>, e: &[usize]) -> GammaContext<F5> {
        gamma_algebra(&Arc::new(a), &IdempotentSelector::new(e.iter().copied())).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let c = ctx(a2(), &[0]);
        assert_eq!(c.gamma().labels(), ["e_2"]);
        let c = ctx(a3_rel(), &[1]);
        assert_eq!(c.gamma().labels(), ["e_1", "e_3"]);
        assert!(c.gamma().radical().is_empty());
        let c = ctx(a2(), &[]);
        assert_eq!(**c.gamma(), a2());
        let c = ctx(a2(), &[0, 1]);
        assert!(c.is_degenerate());
        assert_eq!(c.gamma().dim(), 0);
        assert!(gamma_algebra(&Arc::new(a2()), &IdempotentSelector::new([2])).is_err());
    }

    #[test]
    fn fe_examples() {
        let c = ctx(a2(), &[0]);
        let p1 = Module::projective(c.parent().clone(), 0);
        let f = c.apply_fe(&p1);
        assert_eq!(f.dims(), [1]);
        assert_eq!(f, Module::projective(c.gamma().clone(), 0));
        assert!(c.apply_fe(&Module::simple(c.parent().clone(), 0)).is_zero());
        assert_eq!(c.apply_fe(&Module::regular(c.parent().clone())).dims(), [2]);
    }

    #[test]
    fn ge_examples() {
        let c = ctx(a3_rel(), &[1]);
        let s = Module::simple(c.gamma().clone(), 0);
        assert_eq!(c.apply_ge(&s), Module::projective(c.parent().clone(), 0));
        assert!(c.apply_ge(&Module::zero(c.gamma().clone())).is_zero());
        let c = ctx(a2(), &[0]);
        let q = Module::projective(c.gamma().clone(), 0);
        assert_eq!(c.apply_ge(&q), Module::projective(c.parent().clone(), 1));
    }

    #[test]
    fn ge_of_non_projective_uses_the_presentation() {
        // Gamma = A2 itself (E empty): G_e is the identity up to isomorphism.
        let c = ctx(a2(), &[]);
        let s = Module::simple(c.gamma().clone(), 0);
        assert_eq!(c.apply_ge(&s).dims(), [1, 0]);
    }

    #[test]
    fn envelope_examples() {
        let c = ctx(a2(), &[0]);
        let p1 = Module::projective(c.parent().clone(), 0);
        let env = c.serre_envelope(&p1);
        assert_eq!(env.x.dims(), [1, 0]);
        assert_eq!(env.k.dims(), [0, 1]);
        assert_eq!(env.k.top_multiplicities(), MultiplicityVector(vec![0, 1]));
        assert!(c.trace_spaces(&env.x).iter().all(|s| s.dim() == 0));

        let c = ctx(a2(), &[]);
        let env = c.serre_envelope(&p1);
        assert!(env.x.is_zero());
        assert_eq!(env.k, p1);

        let c = ctx(a2(), &[0]);
        let s1 = Module::simple(c.parent().clone(), 0);
        let env = c.serre_envelope(&s1);
        assert_eq!(env.x, s1);
        assert!(env.k.is_zero());
    }
}
