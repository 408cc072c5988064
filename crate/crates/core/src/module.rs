//! Finitely generated right modules as vertex-graded representations.
//!
//! A module `M` stores `dim M e_v` for every vertex and, for every basis
//! element `b` from `u` to `v`, the matrix of `m -> m * b` from `M e_u` to
//! `M e_v`. Vertex idempotents act as identities on their own block.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::linalg::{Mat, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("action does not respect the structure constants at ({0}, {1})")]
    NotAModule(String, String),
    #[error("map does not commute with the action of `{0}`")]
    NotAHomomorphism(String),
}

pub(crate) fn same_algebra<T: Scalar>(a: &Arc<Algebra<T>>, b: &Arc<Algebra<T>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Multiplicity of `P(v)` (or `S(v)`) for each vertex `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicityVector(pub Vec<usize>);

impl MultiplicityVector {
    pub fn zero(vertices: usize) -> Self {
        MultiplicityVector(vec![0; vertices])
    }

    pub fn unit(vertices: usize, v: usize) -> Self {
        let mut m = Self::zero(vertices);
        m.0[v] = 1;
        m
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Each vertex repeated by its multiplicity, in vertex order.
    pub fn summands(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(v, &m)| std::iter::repeat_n(v, m)).collect()
    }

    pub fn from_summands(vertices: usize, summands: &[usize]) -> Self {
        let mut m = Self::zero(vertices);
        for &v in summands {
            m.0[v] += 1;
        }
        m
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone)]
pub struct Module<T> {
    algebra: Arc<Algebra<T>>,
    dims: Vec<usize>,
    actions: Arc<Vec<Mat<T>>>,
}

impl<T: Scalar> PartialEq for Module<T> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.dims == other.dims && self.actions == other.actions
    }
}

impl<T: Scalar> Eq for Module<T> {}

impl<T> fmt::Debug for Module<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims)
    }
}

impl<T: Scalar> Module<T> {
    /// Validating constructor. `actions[b]` must be `dims[source b] x dims[target b]`.
    pub fn new(algebra: Arc<Algebra<T>>, dims: Vec<usize>, actions: Vec<Mat<T>>) -> Result<Self, ModuleError> {
        if dims.len() != algebra.vertex_count() || actions.len() != algebra.dim() {
            return Err(ModuleError::Shape("dimension vector or action list has the wrong length".into()));
        }
        for (b, m) in actions.iter().enumerate() {
            if (m.rows(), m.cols()) != (dims[algebra.source(b)], dims[algebra.target(b)]) {
                return Err(ModuleError::Shape(format!("action of `{}` has the wrong shape", algebra.label(b))));
            }
            if algebra.is_idempotent(b) && *m != Mat::identity(dims[algebra.source(b)]) {
                return Err(ModuleError::NotAModule(algebra.label(b).into(), algebra.label(b).into()));
            }
        }
        let m = Module { algebra, dims, actions: Arc::new(actions) };
        m.check_action()?;
        Ok(m)
    }

    pub(crate) fn from_parts(algebra: Arc<Algebra<T>>, dims: Vec<usize>, actions: Vec<Mat<T>>) -> Self {
        debug_assert_eq!(actions.len(), algebra.dim());
        Module { algebra, dims, actions: Arc::new(actions) }
    }

    /// Checks `A_i * A_j = sum_k c(i, j, k) A_k` for all composable basis pairs.
    pub fn check_action(&self) -> Result<(), ModuleError> {
        let a = &*self.algebra;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if a.target(i) != a.source(j) {
                    continue;
                }
                let lhs = self.actions[i].mul(&self.actions[j]);
                let mut rhs = Mat::zeros(lhs.rows(), lhs.cols());
                for (k, c) in a.product(i, j) {
                    rhs.add_scaled(c, &self.actions[*k]);
                }
                if lhs != rhs {
                    return Err(ModuleError::NotAModule(a.label(i).into(), a.label(j).into()));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: Arc<Algebra<T>>) -> Self {
        let actions = (0..algebra.dim()).map(|_| Mat::zeros(0, 0)).collect();
        let dims = vec![0; algebra.vertex_count()];
        Module::from_parts(algebra, dims, actions)
    }

    pub fn algebra(&self) -> &Arc<Algebra<T>> {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, b: usize) -> &Mat<T> {
        &self.actions[b]
    }

    pub fn is_semisimple(&self) -> bool {
        self.algebra.radical().iter().all(|&b| self.actions[b].is_zero())
    }

    /// The simple module `S(v)`.
    pub fn simple(algebra: Arc<Algebra<T>>, v: usize) -> Self {
        let n = algebra.vertex_count();
        Self::semisimple(algebra, &MultiplicityVector::unit(n, v))
    }

    /// `S(v)^{m(v)}` summed over all vertices.
    pub fn semisimple(algebra: Arc<Algebra<T>>, mult: &MultiplicityVector) -> Self {
        let dims = mult.0.clone();
        let actions = (0..algebra.dim())
            .map(|b| {
                let (s, t) = (algebra.source(b), algebra.target(b));
                if algebra.is_idempotent(b) {
                    Mat::identity(dims[s])
                } else {
                    Mat::zeros(dims[s], dims[t])
                }
            })
            .collect();
        Module::from_parts(algebra, dims, actions)
    }

    /// The indecomposable projective `e_v A`.
    pub fn projective(algebra: Arc<Algebra<T>>, v: usize) -> Self {
        Self::projective_sum(algebra, &[v])
    }

    /// `e_{v_1} A + ... + e_{v_r} A` in the standard layout: at vertex `w`
    /// the coordinates are the bases of `e_{v_i} A e_w`, copy after copy.
    pub fn projective_sum(algebra: Arc<Algebra<T>>, summands: &[usize]) -> Self {
        let nv = algebra.vertex_count();
        let mut dims = vec![0; nv];
        for &v in summands {
            for (w, d) in dims.iter_mut().enumerate() {
                *d += algebra.block(v, w).len();
            }
        }
        let mut distinct: Vec<usize> = summands.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        // Action of every basis element on each distinct indecomposable.
        let mut per_vertex: Vec<Option<Vec<Mat<T>>>> = vec![None; nv];
        for &v in &distinct {
            per_vertex[v] = Some((0..algebra.dim()).map(|c| projective_action(&algebra, v, c)).collect());
        }
        let actions = (0..algebra.dim())
            .map(|c| {
                let blocks: Vec<&Mat<T>> = summands.iter().map(|&v| &per_vertex[v].as_ref().unwrap()[c]).collect();
                Mat::block_diag(&blocks)
            })
            .collect();
        Module::from_parts(algebra, dims, actions)
    }

    /// The regular module `A` as the sum of all `e_v A`.
    pub fn regular(algebra: Arc<Algebra<T>>) -> Self {
        let all: Vec<usize> = (0..algebra.vertex_count()).collect();
        Self::projective_sum(algebra, &all)
    }

    /// Submodule given by per-vertex subspaces closed under the action.
    pub fn submodule(&self, spaces: &[Subspace<T>]) -> (Module<T>, ModMap<T>) {
        let a = &self.algebra;
        debug_assert!(self.is_closed(spaces));
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        let actions = (0..a.dim())
            .map(|b| {
                let (s, t) = (a.source(b), a.target(b));
                if a.is_idempotent(b) {
                    return Mat::identity(dims[s]);
                }
                let image = spaces[s].basis().mul(&self.actions[b]);
                spaces[t].coords_matrix(&image)
            })
            .collect();
        let sub = Module::from_parts(a.clone(), dims, actions);
        let blocks = spaces.iter().map(|s| s.basis().clone()).collect();
        let inclusion = ModMap::from_parts(sub.clone(), self.clone(), blocks);
        (sub, inclusion)
    }

    /// Quotient by per-vertex subspaces closed under the action. The
    /// quotient basis at `v` is the set of non-pivot unit vectors.
    pub fn quotient(&self, spaces: &[Subspace<T>]) -> (Module<T>, ModMap<T>) {
        let a = &self.algebra;
        debug_assert!(self.is_closed(spaces));
        let complements: Vec<Vec<usize>> = spaces.iter().map(|s| s.complement_indices()).collect();
        let dims: Vec<usize> = complements.iter().map(|c| c.len()).collect();
        let reduce_rows = |m: Mat<T>, w: usize| -> Mat<T> {
            let mut m = m;
            for i in 0..m.rows() {
                spaces[w].reduce(m.row_mut(i));
            }
            m.select_cols(&complements[w])
        };
        let actions = (0..a.dim())
            .map(|b| {
                let (s, t) = (a.source(b), a.target(b));
                if a.is_idempotent(b) {
                    return Mat::identity(dims[s]);
                }
                reduce_rows(self.actions[b].select_rows(&complements[s]), t)
            })
            .collect();
        let quot = Module::from_parts(a.clone(), dims, actions);
        let blocks = (0..a.vertex_count()).map(|v| reduce_rows(Mat::identity(self.dims[v]), v)).collect();
        let projection = ModMap::from_parts(self.clone(), quot.clone(), blocks);
        (quot, projection)
    }

    fn is_closed(&self, spaces: &[Subspace<T>]) -> bool {
        let a = &self.algebra;
        spaces.len() == a.vertex_count()
            && spaces.iter().zip(&self.dims).all(|(s, &d)| s.ambient() == d)
            && (0..a.dim()).all(|b| {
                let image = spaces[a.source(b)].basis().mul(&self.actions[b]);
                spaces[a.target(b)].contains_all(&image)
            })
    }

    /// `M J`, spanned by the images of all radical basis elements.
    pub fn radical_spaces(&self) -> Vec<Subspace<T>> {
        let a = &self.algebra;
        (0..a.vertex_count())
            .map(|w| {
                let mut rows = Mat::zeros(0, self.dims[w]);
                for &b in a.radical() {
                    if a.target(b) == w && !self.actions[b].is_zero() {
                        rows = rows.vstack(&self.actions[b]);
                    }
                }
                Subspace::span(&rows)
            })
            .collect()
    }

    /// Submodule generated by the given per-vertex vectors.
    pub fn generated_spaces(&self, seeds: &[Mat<T>]) -> Vec<Subspace<T>> {
        let a = &self.algebra;
        (0..a.vertex_count())
            .map(|w| {
                let mut rows = Mat::zeros(0, self.dims[w]);
                for b in 0..a.dim() {
                    if a.target(b) == w && seeds[a.source(b)].rows() > 0 {
                        rows = rows.vstack(&seeds[a.source(b)].mul(&self.actions[b]));
                    }
                }
                Subspace::span(&rows)
            })
            .collect()
    }

    pub fn top_and_radical(&self) -> TopRadical<T> {
        let rad = self.radical_spaces();
        let (radical, radical_inclusion) = self.submodule(&rad);
        let (top, top_projection) = self.quotient(&rad);
        let multiplicities = MultiplicityVector(top.dims.clone());
        TopRadical { radical, radical_inclusion, top, top_projection, multiplicities }
    }

    pub fn top_multiplicities(&self) -> MultiplicityVector {
        MultiplicityVector(self.radical_spaces().iter().zip(&self.dims).map(|(s, d)| d - s.dim()).collect())
    }

    /// Largest semisimple submodule: vectors killed by every radical generator.
    pub fn socle(&self) -> (Module<T>, ModMap<T>) {
        let spaces = self.socle_spaces();
        self.submodule(&spaces)
    }

    pub fn socle_spaces(&self) -> Vec<Subspace<T>> {
        let a = &self.algebra;
        (0..a.vertex_count())
            .map(|v| {
                let mut stacked = Mat::zeros(self.dims[v], 0);
                for &b in a.generators() {
                    if a.source(b) == v {
                        stacked = stacked.hstack(&self.actions[b]);
                    }
                }
                Subspace::span(&stacked.kernel_basis())
            })
            .collect()
    }

    /// Projective cover `g: P -> M`. Generators of `P` map to the
    /// non-pivot unit vectors of `rad M` at each vertex, in vertex order.
    pub fn projective_cover(&self) -> ProjectiveCover<T> {
        let a = &self.algebra;
        let rad = self.radical_spaces();
        let mut summands = Vec::new();
        let mut images = Vec::new();
        for (v, space) in rad.iter().enumerate() {
            for j in space.complement_indices() {
                summands.push(v);
                let mut e = vec![T::zero(); self.dims[v]];
                e[j] = T::one();
                images.push(e);
            }
        }
        let projective = Module::projective_sum(a.clone(), &summands);
        let map = ModMap::from_generator_images(&projective, &summands, self, &images);
        let multiplicities = MultiplicityVector::from_summands(a.vertex_count(), &summands);
        ProjectiveCover { projective, map, multiplicities, summands }
    }

    pub fn direct_sum(modules: &[Module<T>]) -> Result<DirectSum<T>, ModuleError> {
        let Some(first) = modules.first() else {
            return Err(ModuleError::Shape("direct sum of no modules needs an algebra; use direct_sum_over".into()));
        };
        Self::direct_sum_over(first.algebra.clone(), modules)
    }

    pub fn direct_sum_over(algebra: Arc<Algebra<T>>, modules: &[Module<T>]) -> Result<DirectSum<T>, ModuleError> {
        if modules.iter().any(|m| !same_algebra(&m.algebra, &algebra)) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let nv = algebra.vertex_count();
        let dims: Vec<usize> = (0..nv).map(|v| modules.iter().map(|m| m.dims[v]).sum()).collect();
        let actions = (0..algebra.dim())
            .map(|b| Mat::block_diag(&modules.iter().map(|m| &m.actions[b]).collect::<Vec<_>>()))
            .collect();
        let sum = Module::from_parts(algebra.clone(), dims.clone(), actions);
        let mut offsets = vec![0; nv];
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for m in modules {
            let mut inj = Vec::with_capacity(nv);
            let mut proj = Vec::with_capacity(nv);
            for v in 0..nv {
                let mut block = Mat::zeros(m.dims[v], dims[v]);
                block.set_block(0, offsets[v], &Mat::identity(m.dims[v]));
                proj.push(block.transpose());
                inj.push(block);
                offsets[v] += m.dims[v];
            }
            injections.push(ModMap::from_parts(m.clone(), sum.clone(), inj));
            projections.push(ModMap::from_parts(sum.clone(), m.clone(), proj));
        }
        Ok(DirectSum { sum, injections, projections })
    }
}

/// Matrix of right multiplication by basis element `c` on `e_v A`, from
/// `e_v A e_{source c}` to `e_v A e_{target c}`.
fn projective_action<T: Scalar>(a: &Algebra<T>, v: usize, c: usize) -> Mat<T> {
    let (u, w) = (a.source(c), a.target(c));
    let rows = a.block(v, u);
    let cols = a.block(v, w);
    let mut m = Mat::zeros(rows.len(), cols.len());
    for (r, &b) in rows.iter().enumerate() {
        for (k, coeff) in a.product(b, c) {
            m[(r, a.block_position(*k))] = coeff.clone();
        }
    }
    m
}

pub struct TopRadical<T> {
    pub radical: Module<T>,
    pub radical_inclusion: ModMap<T>,
    pub top: Module<T>,
    pub top_projection: ModMap<T>,
    pub multiplicities: MultiplicityVector,
}

pub struct ProjectiveCover<T> {
    pub projective: Module<T>,
    pub map: ModMap<T>,
    pub multiplicities: MultiplicityVector,
    /// Vertex of each indecomposable summand of `projective`, in layout order.
    pub summands: Vec<usize>,
}

pub struct DirectSum<T> {
    pub sum: Module<T>,
    pub injections: Vec<ModMap<T>>,
    pub projections: Vec<ModMap<T>>,
}

/// A homomorphism, one matrix `dim M e_v x dim N e_v` per vertex.
#[derive(Clone)]
pub struct ModMap<T> {
    domain: Module<T>,
    codomain: Module<T>,
    blocks: Vec<Mat<T>>,
}

impl<T: Scalar> PartialEq for ModMap<T> {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.blocks == other.blocks
    }
}

impl<T: Scalar> Eq for ModMap<T> {}

impl<T> fmt::Debug for ModMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModMap").field("domain", &self.domain).field("codomain", &self.codomain).finish()
    }
}

impl<T: Scalar> ModMap<T> {
    pub fn new(domain: Module<T>, codomain: Module<T>, blocks: Vec<Mat<T>>) -> Result<Self, ModuleError> {
        if !same_algebra(&domain.algebra, &codomain.algebra) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if blocks.len() != domain.dims.len()
            || blocks.iter().enumerate().any(|(v, b)| (b.rows(), b.cols()) != (domain.dims[v], codomain.dims[v]))
        {
            return Err(ModuleError::Shape("map blocks do not match module dimensions".into()));
        }
        let f = ModMap { domain, codomain, blocks };
        f.check_intertwines()?;
        Ok(f)
    }

    pub(crate) fn from_parts(domain: Module<T>, codomain: Module<T>, blocks: Vec<Mat<T>>) -> Self {
        ModMap { domain, codomain, blocks }
    }

    pub fn check_intertwines(&self) -> Result<(), ModuleError> {
        let a = self.domain.algebra.clone();
        for &b in a.generators() {
            let (u, w) = (a.source(b), a.target(b));
            let lhs = self.domain.actions[b].mul(&self.blocks[w]);
            let rhs = self.blocks[u].mul(&self.codomain.actions[b]);
            if lhs != rhs {
                return Err(ModuleError::NotAHomomorphism(a.label(b).into()));
            }
        }
        Ok(())
    }

    pub fn zero(domain: Module<T>, codomain: Module<T>) -> Self {
        let blocks = domain.dims.iter().zip(&codomain.dims).map(|(&r, &c)| Mat::zeros(r, c)).collect();
        ModMap { domain, codomain, blocks }
    }

    pub fn identity(m: Module<T>) -> Self {
        let blocks = m.dims.iter().map(|&d| Mat::identity(d)).collect();
        ModMap { domain: m.clone(), codomain: m, blocks }
    }

    /// The map out of a projective sum (standard layout, summands as given)
    /// sending the generator `e_{v_i}` of copy `i` to `images[i]`, a vector
    /// of `target e_{v_i}`.
    pub fn from_generator_images(domain: &Module<T>, summands: &[usize], target: &Module<T>, images: &[Vec<T>]) -> Self {
        let a = domain.algebra.clone();
        let blocks = (0..a.vertex_count())
            .map(|w| {
                let mut block = Mat::zeros(domain.dims[w], target.dims[w]);
                let mut row = 0;
                for (&v, image) in summands.iter().zip(images) {
                    for &b in a.block(v, w) {
                        let out = target.actions[b].apply(image);
                        block.row_mut(row).clone_from_slice(&out);
                        row += 1;
                    }
                }
                block
            })
            .collect();
        ModMap { domain: domain.clone(), codomain: target.clone(), blocks }
    }

    /// Inverse of [`ModMap::from_generator_images`]: the image of each
    /// copy's generator, for a map out of a projective sum.
    pub fn generator_images(&self, summands: &[usize]) -> Vec<Vec<T>> {
        let a = self.domain.algebra.clone();
        let mut offsets = vec![0; a.vertex_count()];
        summands
            .iter()
            .map(|&v| {
                let row = offsets[v] + a.block_position(a.idempotent(v));
                for (w, off) in offsets.iter_mut().enumerate() {
                    *off += a.block(v, w).len();
                }
                self.blocks[v].row(row).to_vec()
            })
            .collect()
    }

    pub fn domain(&self) -> &Module<T> {
        &self.domain
    }

    pub fn codomain(&self) -> &Module<T> {
        &self.codomain
    }

    pub fn block(&self, v: usize) -> &Mat<T> {
        &self.blocks[v]
    }

    pub fn blocks(&self) -> &[Mat<T>] {
        &self.blocks
    }

    /// The composite "first `self`, then `next`".
    pub fn then(&self, next: &ModMap<T>) -> ModMap<T> {
        assert_eq!(self.codomain.dims, next.domain.dims, "maps are not composable");
        let blocks = self.blocks.iter().zip(&next.blocks).map(|(f, g)| f.mul(g)).collect();
        ModMap { domain: self.domain.clone(), codomain: next.codomain.clone(), blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn rank_at(&self, v: usize) -> usize {
        self.blocks[v].rank()
    }

    pub fn is_injective(&self) -> bool {
        (0..self.blocks.len()).all(|v| self.rank_at(v) == self.domain.dims[v])
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.blocks.len()).all(|v| self.rank_at(v) == self.codomain.dims[v])
    }

    pub fn kernel(&self) -> (Module<T>, ModMap<T>) {
        let spaces: Vec<Subspace<T>> = self.blocks.iter().map(|b| Subspace::span(&b.kernel_basis())).collect();
        self.domain.submodule(&spaces)
    }

    pub fn image_spaces(&self) -> Vec<Subspace<T>> {
        self.blocks.iter().map(Subspace::span).collect()
    }

    pub fn image(&self) -> (Module<T>, ModMap<T>) {
        self.codomain.submodule(&self.image_spaces())
    }

    pub fn cokernel(&self) -> (Module<T>, ModMap<T>) {
        self.codomain.quotient(&self.image_spaces())
    }

    pub fn spaces(&self) -> MapSpaces<T> {
        let (kernel, kernel_inclusion) = self.kernel();
        let (image, image_inclusion) = self.image();
        let (cokernel, cokernel_projection) = self.cokernel();
        MapSpaces { kernel, kernel_inclusion, image, image_inclusion, cokernel, cokernel_projection }
    }

    /// True when the image lies in the radical of the codomain.
    pub fn is_radical(&self) -> bool {
        let rad = self.codomain.radical_spaces();
        self.blocks.iter().zip(&rad).all(|(b, r)| r.contains_all(b))
    }
}

pub struct MapSpaces<T> {
    pub kernel: Module<T>,
    pub kernel_inclusion: ModMap<T>,
    pub image: Module<T>,
    pub image_inclusion: ModMap<T>,
    pub cokernel: Module<T>,
    pub cokernel_projection: ModMap<T>,
}

/// Regular module, indecomposable projectives and simples.
pub struct CanonicalModules<T> {
    pub regular: Module<T>,
    pub projectives: Vec<Module<T>>,
    pub simples: Vec<Module<T>>,
}

pub fn canonical_modules<T: Scalar>(algebra: &Arc<Algebra<T>>) -> CanonicalModules<T> {
    let n = algebra.vertex_count();
    CanonicalModules {
        regular: Module::regular(algebra.clone()),
        projectives: (0..n).map(|v| Module::projective(algebra.clone(), v)).collect(),
        simples: (0..n).map(|v| Module::simple(algebra.clone(), v)).collect(),
    }
}

/// A basis of `Hom(M, N)`, from the linear system `A^M_b F_w = F_u A^N_b`
/// over the radical generators `b: u -> w`.
pub fn hom_space<T: Scalar>(m: &Module<T>, n: &Module<T>) -> Result<Vec<ModMap<T>>, ModuleError> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let a = m.algebra.clone();
    let nv = a.vertex_count();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = offset[nv];
    let var = |v: usize, i: usize, j: usize| offset[v] + i * n.dims[v] + j;
    let mut columns: Vec<Vec<(usize, T)>> = Vec::new();
    for &b in a.generators() {
        let (u, w) = (a.source(b), a.target(b));
        let am = &m.actions[b];
        let an = &n.actions[b];
        for i in 0..m.dims[u] {
            for j in 0..n.dims[w] {
                let mut col = Vec::new();
                for k in 0..m.dims[w] {
                    if !am[(i, k)].is_zero() {
                        col.push((var(w, k, j), am[(i, k)].clone()));
                    }
                }
                for k in 0..n.dims[u] {
                    if !an[(k, j)].is_zero() {
                        col.push((var(u, i, k), -an[(k, j)].clone()));
                    }
                }
                if !col.is_empty() {
                    columns.push(col);
                }
            }
        }
    }
    let mut system: Mat<T> = Mat::zeros(unknowns, columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (r, x) in col {
            system[(*r, c)] = system[(*r, c)].clone() + x.clone();
        }
    }
    let basis = system.kernel_basis();
    Ok(basis
        .row_vectors()
        .map(|row| {
            let blocks = (0..nv)
                .map(|v| Mat::from_vec(m.dims[v], n.dims[v], row[offset[v]..offset[v + 1]].to_vec()))
                .collect();
            ModMap::from_parts(m.clone(), n.clone(), blocks)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Quiver, Relation};
    use crate::scalar::Fp;

    type F5 = Fp<5>;

    fn a2() -> Arc<Algebra<F5>> {
        Arc::new(Algebra::from_quiver(&Quiver::with_vertices(2).arrow("a", 0, 1), &[], 2).unwrap())
    }

    fn a3_rel() -> Arc<Algebra<F5>> {
        let q = Quiver::with_vertices(3).arrow("a", 0, 1).arrow("b", 1, 2);
        Arc::new(Algebra::from_quiver(&q, &[Relation::monomial(&["a", "b"])], 3).unwrap())
    }

    fn field() -> Arc<Algebra<F5>> {
        Arc::new(Algebra::from_quiver(&Quiver::with_vertices(1), &[], 1).unwrap())
    }

    #[test]
    fn canonical_modules_of_a2() {
        let a = a2();
        let c = canonical_modules(&a);
        assert_eq!(c.projectives[0].dims(), [1, 1]);
        assert_eq!(c.projectives[1].dims(), [0, 1]);
        assert_eq!(c.simples[0].dims(), [1, 0]);
        assert!(c.simples[0].is_semisimple());
        assert_eq!(c.regular.dims(), [1, 2]);
        for m in [&c.regular, &c.projectives[0], &c.projectives[1]] {
            m.check_action().unwrap();
        }
    }

    #[test]
    fn field_algebra_regular_is_simple() {
        let c = canonical_modules(&field());
        assert_eq!(c.regular, c.simples[0]);
        assert_eq!(c.regular, c.projectives[0]);
    }

    #[test]
    fn hom_examples() {
        let a = a2();
        let c = canonical_modules(&a);
        assert_eq!(hom_space(&c.simples[0], &c.simples[0]).unwrap().len(), 1);
        assert_eq!(hom_space(&c.simples[0], &c.simples[1]).unwrap().len(), 0);
        assert_eq!(hom_space(&c.projectives[0], &c.simples[1]).unwrap().len(), 0);
        assert_eq!(hom_space(&c.projectives[0], &c.simples[0]).unwrap().len(), 1);
        for f in hom_space(&c.regular, &c.regular).unwrap() {
            f.check_intertwines().unwrap();
        }
        // End(A) = A as a vector space
        assert_eq!(hom_space(&c.regular, &c.regular).unwrap().len(), a.dim());
    }

    #[test]
    fn hom_rejects_foreign_modules() {
        let s = Module::simple(a2(), 0);
        let t = Module::simple(field(), 0);
        assert_eq!(hom_space(&s, &t).unwrap_err(), ModuleError::AlgebraMismatch);
    }

    #[test]
    fn identity_and_zero_map_spaces() {
        let p = Module::projective(a2(), 0);
        let id = ModMap::identity(p.clone()).spaces();
        assert!(id.kernel.is_zero() && id.cokernel.is_zero());
        let z = ModMap::zero(p.clone(), p.clone()).spaces();
        assert_eq!(z.kernel, p);
        assert_eq!(z.cokernel, p);
    }

    #[test]
    fn cokernel_of_radical_inclusion_is_top() {
        let p = Module::projective(a2(), 0);
        let tr = p.top_and_radical();
        assert_eq!(tr.radical.dims(), [0, 1]);
        let s = tr.radical_inclusion.spaces();
        assert_eq!(s.cokernel.dims(), [1, 0]);
        assert!(s.kernel.is_zero());
        assert_eq!(tr.multiplicities, MultiplicityVector(vec![1, 0]));
    }

    #[test]
    fn top_edge_cases() {
        let a = a2();
        let s = Module::semisimple(a.clone(), &MultiplicityVector(vec![2, 1]));
        assert_eq!(s.top_and_radical().top, s);
        assert!(Module::zero(a).top_and_radical().top.is_zero());
    }

    #[test]
    fn socle_examples() {
        let a = a2();
        let (soc, inc) = Module::projective(a.clone(), 0).socle();
        assert_eq!(soc.dims(), [0, 1]);
        inc.check_intertwines().unwrap();
        let s = Module::semisimple(a.clone(), &MultiplicityVector(vec![1, 1]));
        assert_eq!(s.socle().0, s);
        assert!(Module::zero(a).socle().0.is_zero());
    }

    #[test]
    fn projective_cover_examples() {
        let a = a2();
        let p = Module::projective(a.clone(), 0);
        let cover = p.projective_cover();
        assert_eq!(cover.projective.dims(), p.dims());
        assert!(cover.map.is_injective() && cover.map.is_surjective());

        let s1 = Module::simple(a.clone(), 0);
        let cover = s1.projective_cover();
        assert_eq!(cover.multiplicities, MultiplicityVector(vec![1, 0]));
        cover.map.check_intertwines().unwrap();
        assert!(cover.map.is_surjective());
        let (k, inc) = cover.map.kernel();
        assert_eq!(k.dims(), [0, 1]);
        assert!(inc.is_radical());

        assert!(Module::zero(a).projective_cover().projective.is_zero());
    }

    #[test]
    fn direct_sums() {
        let a = a2();
        let none = Module::direct_sum_over(a.clone(), &[]).unwrap();
        assert!(none.sum.is_zero());
        let s = Module::direct_sum(&[Module::simple(a.clone(), 0), Module::simple(a.clone(), 1)]).unwrap();
        assert_eq!(s.sum.dims(), [1, 1]);
        let p = Module::projective(a.clone(), 0);
        let pp = Module::direct_sum(&[p.clone(), p.clone()]).unwrap();
        assert_eq!(pp.sum.top_multiplicities(), MultiplicityVector(vec![2, 0]));
        for (i, q) in pp.injections.iter().zip(&pp.projections) {
            assert_eq!(i.then(q), ModMap::identity(p.clone()));
        }
        let foreign = Module::simple(field(), 0);
        assert!(Module::direct_sum(&[p, foreign]).is_err());
    }

    #[test]
    fn projectives_have_simple_tops_and_dual_homs() {
        for a in [a2(), a3_rel(), field()] {
            let c = canonical_modules(&a);
            for v in 0..a.vertex_count() {
                assert_eq!(c.projectives[v].top_multiplicities(), MultiplicityVector::unit(a.vertex_count(), v));
                for w in 0..a.vertex_count() {
                    let h = hom_space(&c.projectives[v], &c.simples[w]).unwrap().len();
                    assert_eq!(h, usize::from(v == w));
                }
            }
        }
    }

    #[test]
    fn validating_constructors_reject_bad_data() {
        let a = a2();
        let bad = Module::<F5>::new(a.clone(), vec![1, 1], vec![Mat::identity(1), Mat::identity(1), Mat::zeros(1, 2)]);
        assert!(matches!(bad, Err(ModuleError::Shape(_))));
        let p = Module::projective(a.clone(), 0);
        let s = Module::simple(a.clone(), 1);
        let bad = ModMap::new(p, s, vec![Mat::zeros(1, 0), Mat::identity(1)]);
        assert!(matches!(bad, Err(ModuleError::NotAHomomorphism(_))));
    }
}
