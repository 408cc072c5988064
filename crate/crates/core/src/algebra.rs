//! Finite-dimensional basic algebras given by a basis and structure constants.
//!
//! Every basis element `b` is sandwiched between two vertex idempotents,
//! `e_u * b * e_v = b`; we call `u` its source and `v` its target. Paths
//! compose left to right, so an arrow `a: 1 -> 2` followed by `b: 2 -> 3`
//! is the product `a * b`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Mat, Subspace};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("relation {relation}: {detail}")]
    RelationNotParallel { relation: usize, detail: String },
    #[error("relation {relation} has a component of path length 0")]
    NotAdmissible { relation: usize },
    #[error("relation {relation} uses unknown arrow `{label}`")]
    UnknownArrow { relation: usize, label: String },
    #[error("truncation must be at least 1")]
    InvalidTruncation,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("arrow `{label}` has an endpoint outside the vertex range")]
    VertexOutOfRange { label: String },
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("structure constants are not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("basis element `{0}` is not sandwiched between a unique pair of vertex idempotents")]
    NotBigraded(String),
    #[error("vertex idempotents do not decompose the unit: {0}")]
    UnitDecompositionFails(String),
    #[error("algebra is not basic: {0}")]
    NotBasic(String),
    #[error("the span of the non-idempotent basis elements is not nilpotent")]
    RadicalNotNilpotent,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Vertices named `1..=n`.
    pub fn with_vertices(n: usize) -> Self {
        Quiver { vertices: (1..=n).map(|i| i.to_string()).collect(), arrows: Vec::new() }
    }

    pub fn arrow(mut self, label: &str, source: usize, target: usize) -> Self {
        self.arrows.push(Arrow { label: label.to_string(), source, target });
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

/// One summand of a relation. The path is a sequence of arrow labels; a
/// single vertex-idempotent label such as `e_1` denotes a trivial path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<T> {
    pub coeff: T,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<T> {
    pub terms: Vec<Term<T>>,
}

impl<T: Scalar> Relation<T> {
    pub fn monomial(path: &[&str]) -> Self {
        Relation { terms: vec![Term { coeff: T::one(), path: path.iter().map(|s| s.to_string()).collect() }] }
    }

    pub fn binomial(first: &[&str], coeff: T, second: &[&str]) -> Self {
        let mut r = Self::monomial(first);
        r.terms.push(Term { coeff, path: second.iter().map(|s| s.to_string()).collect() });
        r
    }
}

/// A set `E` of vertices, standing for the idempotent `e = sum of e_v, v in E`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdempotentSelector {
    selected: BTreeSet<usize>,
}

impl IdempotentSelector {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        IdempotentSelector { selected: vertices.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.selected.contains(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.selected.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn is_subset(&self, other: &IdempotentSelector) -> bool {
        self.selected.is_subset(&other.selected)
    }

    /// The idempotent as an element of `algebra`.
    pub fn element<T: Scalar>(&self, algebra: &Algebra<T>) -> Vec<T> {
        let mut v = vec![T::zero(); algebra.dim()];
        for u in self.vertices() {
            v[algebra.idempotent(u)] = T::one();
        }
        v
    }

    /// The complementary idempotent `1 - e` over `vertex_count` vertices.
    pub fn complement(&self, vertex_count: usize) -> IdempotentSelector {
        IdempotentSelector::new((0..vertex_count).filter(|v| !self.contains(*v)))
    }
}

/// `(i, j, [(k, c)])` for `b_i * b_j = sum c b_k`.
pub type ProductEntry<T> = (usize, usize, Vec<(usize, T)>);

/// Structure data accepted by [`Algebra::from_table`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSpec<T> {
    pub vertices: Vec<String>,
    pub labels: Vec<String>,
    /// Nonzero products `b_i * b_j = sum c_k b_k`; omitted pairs multiply to zero.
    pub products: Vec<ProductEntry<T>>,
    /// Basis index of `e_v` for each vertex `v`.
    pub idempotents: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Algebra<T> {
    vertices: Vec<String>,
    labels: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    /// `products[i * dim + j]` expands `b_i * b_j`, sorted by basis index.
    products: Vec<Vec<(usize, T)>>,
    idempotents: Vec<usize>,
    radical: Vec<usize>,
    generators: Vec<usize>,
    /// `blocks[u * n + v]` lists the basis of `e_u A e_v` in increasing order.
    blocks: Vec<Vec<usize>>,
    block_position: Vec<usize>,
    truncation: Option<usize>,
}

/// Structural equality; the truncation metadata of quiver-built algebras is ignored.
impl<T: Scalar> PartialEq for Algebra<T> {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.labels == other.labels
            && self.idempotents == other.idempotents
            && self.products == other.products
    }
}

impl<T: Scalar> Eq for Algebra<T> {}

impl<T: Scalar> Algebra<T> {
    pub fn field(&self) -> FieldSpec {
        T::field()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn source(&self, i: usize) -> usize {
        self.source[i]
    }

    pub fn target(&self, i: usize) -> usize {
        self.target[i]
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.idempotents[self.source[i]] == i
    }

    /// Basis indices spanning the radical, in increasing order.
    pub fn radical(&self) -> &[usize] {
        &self.radical
    }

    /// Radical basis elements whose classes form a basis of `J / J^2`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Basis of `e_u A e_v`.
    pub fn block(&self, u: usize, v: usize) -> &[usize] {
        &self.blocks[u * self.vertex_count() + v]
    }

    /// Position of basis element `i` within `block(source(i), target(i))`.
    pub fn block_position(&self, i: usize) -> usize {
        self.block_position[i]
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, T)] {
        &self.products[i * self.dim() + j]
    }

    /// Truncation length `L` when the algebra was built as `kQ / (I + J^L)`.
    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn multiply(&self, u: &[T], v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() || self.target[i] != self.source[j] {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for (k, c) in self.product(i, j) {
                    out[*k] = out[*k].clone() + ab.clone() * c.clone();
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim()];
        v[i] = T::one();
        v
    }

    /// Basis of `J^k` as a subspace of the algebra (`J^0 = A`).
    pub fn radical_power(&self, k: usize) -> Subspace<T> {
        let n = self.dim();
        if k == 0 {
            return Subspace::full(n);
        }
        let mut current = Subspace::span(&Mat::from_rows(n, self.radical.iter().map(|&r| self.unit_vector(r)).collect()));
        for _ in 1..k {
            if current.dim() == 0 {
                break;
            }
            let mut rows = Vec::new();
            for x in current.basis().row_vectors() {
                for &r in &self.radical {
                    let p = self.multiply(x, &self.unit_vector(r));
                    if p.iter().any(|c| !c.is_zero()) {
                        rows.push(p);
                    }
                }
            }
            current = Subspace::span(&Mat::from_rows(n, rows));
        }
        current
    }

    /// Validating constructor from a multiplication table.
    pub fn from_table(spec: TableSpec<T>) -> Result<Self, AlgebraError> {
        let TableSpec { vertices, labels, products, idempotents } = spec;
        let n = labels.len();
        let nv = vertices.len();
        check_unique(&labels)?;
        check_unique(&vertices)?;
        if idempotents.len() != nv {
            return Err(AlgebraError::Malformed(format!("{} vertices but {} idempotents", nv, idempotents.len())));
        }
        if idempotents.iter().any(|&i| i >= n) || idempotents.iter().collect::<BTreeSet<_>>().len() != nv {
            return Err(AlgebraError::Malformed("idempotent indices must be distinct basis indices".into()));
        }
        let mut table: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); n * n];
        for (i, j, terms) in products {
            if i >= n || j >= n {
                return Err(AlgebraError::Malformed(format!("product index ({i}, {j}) out of range")));
            }
            let slot = &mut table[i * n + j];
            for (k, c) in terms {
                if k >= n {
                    return Err(AlgebraError::Malformed(format!("basis index {k} out of range")));
                }
                let e = slot.entry(k).or_insert_with(T::zero);
                *e = e.clone() + c;
            }
        }
        let table: Vec<Vec<(usize, T)>> =
            table.into_iter().map(|m| m.into_iter().filter(|(_, c)| !c.is_zero()).collect()).collect();
        let prod = |i: usize, j: usize| &table[i * n + j];
        let is_basis = |terms: &Vec<(usize, T)>, k: usize| terms.len() == 1 && terms[0].0 == k && terms[0].1.is_one();

        for (u, &eu) in idempotents.iter().enumerate() {
            for (v, &ev) in idempotents.iter().enumerate() {
                let ok = if u == v { is_basis(prod(eu, ev), eu) } else { prod(eu, ev).is_empty() };
                if !ok {
                    return Err(AlgebraError::UnitDecompositionFails(format!(
                        "{} * {} is not {}",
                        labels[eu],
                        labels[ev],
                        if u == v { labels[eu].as_str() } else { "0" }
                    )));
                }
            }
        }

        let mut source = vec![0; n];
        let mut target = vec![0; n];
        for b in 0..n {
            let left: Vec<usize> = (0..nv).filter(|&u| !prod(idempotents[u], b).is_empty()).collect();
            let right: Vec<usize> = (0..nv).filter(|&v| !prod(b, idempotents[v]).is_empty()).collect();
            match (left.as_slice(), right.as_slice()) {
                ([u], [v]) if is_basis(prod(idempotents[*u], b), b) && is_basis(prod(b, idempotents[*v]), b) => {
                    source[b] = *u;
                    target[b] = *v;
                }
                _ => return Err(AlgebraError::NotBigraded(labels[b].clone())),
            }
        }

        let mut algebra = Algebra::assemble(vertices, labels, source, target, table, idempotents, None);
        algebra.check_associative()?;
        algebra.check_radical()?;
        algebra.generators = algebra.compute_generators();
        Ok(algebra)
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.target[i] != self.source[j] {
                    continue;
                }
                let ij = self.product(i, j);
                for k in 0..n {
                    if self.target[j] != self.source[k] {
                        continue;
                    }
                    let mut lhs: BTreeMap<usize, T> = BTreeMap::new();
                    for (m, c) in ij {
                        for (l, d) in self.product(*m, k) {
                            let e = lhs.entry(*l).or_insert_with(T::zero);
                            *e = e.clone() + c.clone() * d.clone();
                        }
                    }
                    let mut rhs: BTreeMap<usize, T> = BTreeMap::new();
                    for (m, c) in self.product(j, k) {
                        for (l, d) in self.product(i, *m) {
                            let e = rhs.entry(*l).or_insert_with(T::zero);
                            *e = e.clone() + c.clone() * d.clone();
                        }
                    }
                    lhs.retain(|_, c| !c.is_zero());
                    rhs.retain(|_, c| !c.is_zero());
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        // Products across non-matching vertices must vanish; with the
        // idempotent checks above associativity forces it, but a table can
        // still list such a product explicitly.
        for i in 0..n {
            for j in 0..n {
                if self.target[i] != self.source[j] && !self.product(i, j).is_empty() {
                    return Err(AlgebraError::NotBigraded(format!("{} * {}", self.labels[i], self.labels[j])));
                }
            }
        }
        Ok(())
    }

    fn check_radical(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.is_idempotent(i) && self.is_idempotent(j) {
                    continue;
                }
                if let Some((k, _)) = self.product(i, j).iter().find(|(k, _)| self.is_idempotent(*k)) {
                    return Err(AlgebraError::NotBasic(format!(
                        "{} * {} has a component along {}",
                        self.labels[i], self.labels[j], self.labels[*k]
                    )));
                }
            }
        }
        let mut previous = usize::MAX;
        for k in 1..=n + 1 {
            let d = self.radical_power(k).dim();
            if d == 0 {
                return Ok(());
            }
            if d == previous {
                break;
            }
            previous = d;
        }
        Err(AlgebraError::RadicalNotNilpotent)
    }

    fn compute_generators(&self) -> Vec<usize> {
        let mut span = self.radical_power(2);
        let mut gens = Vec::new();
        for &r in &self.radical {
            let v = self.unit_vector(r);
            if !span.contains(&v) {
                gens.push(r);
                span = span.sum(&Subspace::span(&Mat::from_rows(self.dim(), vec![v])));
            }
        }
        gens
    }

    fn assemble(
        vertices: Vec<String>,
        labels: Vec<String>,
        source: Vec<usize>,
        target: Vec<usize>,
        products: Vec<Vec<(usize, T)>>,
        idempotents: Vec<usize>,
        truncation: Option<usize>,
    ) -> Self {
        let n = labels.len();
        let nv = vertices.len();
        let mut blocks = vec![Vec::new(); nv * nv];
        let mut block_position = vec![0; n];
        for i in 0..n {
            let slot = &mut blocks[source[i] * nv + target[i]];
            block_position[i] = slot.len();
            slot.push(i);
        }
        let radical = (0..n).filter(|&i| idempotents[source[i]] != i).collect();
        Algebra {
            vertices,
            labels,
            source,
            target,
            products,
            idempotents,
            radical,
            generators: Vec::new(),
            blocks,
            block_position,
            truncation,
        }
    }

    /// The algebra as table data, suitable for [`Algebra::from_table`].
    pub fn to_table(&self) -> TableSpec<T> {
        let n = self.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = self.product(i, j);
                if !p.is_empty() {
                    products.push((i, j, p.to_vec()));
                }
            }
        }
        TableSpec {
            vertices: self.vertices.clone(),
            labels: self.labels.clone(),
            products,
            idempotents: self.idempotents.clone(),
        }
    }

    /// Restriction to the basis elements listed in `keep` (sorted), which
    /// must span a subalgebra whose unit is the sum of the kept idempotents.
    pub(crate) fn restrict(&self, keep_vertices: &[usize], keep: &[usize]) -> Self {
        let mut new_index = vec![usize::MAX; self.dim()];
        for (a, &i) in keep.iter().enumerate() {
            new_index[i] = a;
        }
        let mut vertex_index = vec![usize::MAX; self.vertex_count()];
        for (a, &v) in keep_vertices.iter().enumerate() {
            vertex_index[v] = a;
        }
        let m = keep.len();
        let mut products = vec![Vec::new(); m * m];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                products[a * m + b] = self
                    .product(i, j)
                    .iter()
                    .map(|(k, c)| {
                        debug_assert!(new_index[*k] != usize::MAX, "restricted basis is not closed under products");
                        (new_index[*k], c.clone())
                    })
                    .collect();
            }
        }
        let mut algebra = Algebra::assemble(
            keep_vertices.iter().map(|&v| self.vertices[v].clone()).collect(),
            keep.iter().map(|&i| self.labels[i].clone()).collect(),
            keep.iter().map(|&i| vertex_index[self.source[i]]).collect(),
            keep.iter().map(|&i| vertex_index[self.target[i]]).collect(),
            products,
            keep_vertices.iter().map(|&v| new_index[self.idempotents[v]]).collect(),
            self.truncation,
        );
        algebra.generators = algebra.compute_generators();
        algebra
    }
}

fn check_unique(labels: &[String]) -> Result<(), AlgebraError> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(AlgebraError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

pub fn idempotent_label(vertex: &str) -> String {
    format!("e_{vertex}")
}

pub fn path_label(arrows: &[&str]) -> String {
    arrows.join(".")
}

/// A path in the quiver: a vertex (for trivial paths) plus arrow indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

/// Incremental echelon form whose pivot is the largest nonzero coordinate.
///
/// With paths ordered by length, reducing against it rewrites long paths in
/// terms of shorter ones, so the surviving normal words are the short paths.
struct HighEchelon<T> {
    rows: BTreeMap<usize, Vec<T>>,
}

impl<T: Scalar> HighEchelon<T> {
    fn new() -> Self {
        HighEchelon { rows: BTreeMap::new() }
    }

    fn reduce(&self, w: &mut [T]) {
        for j in (0..w.len()).rev() {
            if w[j].is_zero() {
                continue;
            }
            if let Some(row) = self.rows.get(&j) {
                let c = w[j].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.clone() - c.clone() * r.clone();
                    }
                }
            }
        }
    }

    /// Inserts `w` if it is new; returns the normalised residue when it was.
    fn insert(&mut self, mut w: Vec<T>) -> Option<Vec<T>> {
        self.reduce(&mut w);
        let p = w.iter().rposition(|x| !x.is_zero())?;
        let inv = T::one() / w[p].clone();
        for x in w.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.rows.insert(p, w.clone());
        Some(w)
    }
}

impl<T: Scalar> Algebra<T> {
    /// Builds `kQ / (I + J^L)` where `I` is generated by `relations`.
    ///
    /// The basis consists of the paths of length `< truncation` that are not
    /// leading words of the ideal, ordered by length and then
    /// lexicographically by arrow labels.
    pub fn from_quiver(quiver: &Quiver, relations: &[Relation<T>], truncation: usize) -> Result<Self, AlgebraError> {
        if truncation == 0 {
            return Err(AlgebraError::InvalidTruncation);
        }
        let nv = quiver.vertex_count();
        check_unique(&quiver.vertices)?;
        check_unique(&quiver.arrows.iter().map(|a| a.label.clone()).collect::<Vec<_>>())?;
        for a in &quiver.arrows {
            if a.source >= nv || a.target >= nv {
                return Err(AlgebraError::VertexOutOfRange { label: a.label.clone() });
            }
            if quiver.vertices.iter().any(|v| idempotent_label(v) == a.label) {
                return Err(AlgebraError::DuplicateLabel(a.label.clone()));
            }
        }

        // Arrows in label order so that extension produces lexicographic order.
        let mut arrow_order: Vec<usize> = (0..quiver.arrows.len()).collect();
        arrow_order.sort_by(|&a, &b| quiver.arrows[a].label.cmp(&quiver.arrows[b].label));

        let mut paths: Vec<Path> = (0..nv).map(|v| Path { source: v, target: v, arrows: Vec::new() }).collect();
        let mut layer: Vec<Path> = arrow_order
            .iter()
            .map(|&a| Path { source: quiver.arrows[a].source, target: quiver.arrows[a].target, arrows: vec![a] })
            .collect();
        for _ in 1..truncation {
            let mut next = Vec::new();
            for p in &layer {
                for &a in &arrow_order {
                    let arrow = &quiver.arrows[a];
                    if p.target == arrow.source {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push(Path { source: p.source, target: arrow.target, arrows });
                    }
                }
            }
            paths.append(&mut layer);
            layer = next;
        }
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let np = paths.len();

        let concat = |p: &Path, q: &Path| -> Option<Path> {
            if p.target != q.source {
                return None;
            }
            let mut arrows = p.arrows.clone();
            arrows.extend(&q.arrows);
            (arrows.len() < truncation).then_some(Path { source: p.source, target: q.target, arrows })
        };

        let arrow_by_label: HashMap<&str, usize> =
            quiver.arrows.iter().enumerate().map(|(i, a)| (a.label.as_str(), i)).collect();
        let mut ideal = HighEchelon::new();
        let mut queue = Vec::new();
        for (ri, rel) in relations.iter().enumerate() {
            let mut vec = vec![T::zero(); np];
            let mut ends: Option<(usize, usize)> = None;
            for term in &rel.terms {
                let path = resolve_path(quiver, &arrow_by_label, ri, &term.path)?;
                if path.arrows.is_empty() {
                    if !term.coeff.is_zero() {
                        return Err(AlgebraError::NotAdmissible { relation: ri });
                    }
                    continue;
                }
                match ends {
                    None => ends = Some((path.source, path.target)),
                    Some(e) if e != (path.source, path.target) => {
                        return Err(AlgebraError::RelationNotParallel {
                            relation: ri,
                            detail: format!("path {} is not parallel to the first term", term.path.join("*")),
                        })
                    }
                    Some(_) => {}
                }
                if let Some(&i) = index.get(&path) {
                    vec[i] = vec[i].clone() + term.coeff.clone();
                }
            }
            if let Some(w) = ideal.insert(vec) {
                queue.push(w);
            }
        }

        let arrow_paths: Vec<Path> = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| Path { source: a.source, target: a.target, arrows: vec![i] })
            .collect();
        while let Some(w) = queue.pop() {
            for ap in &arrow_paths {
                let mut left = vec![T::zero(); np];
                let mut right = vec![T::zero(); np];
                let (mut any_l, mut any_r) = (false, false);
                for (i, c) in w.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(q) = concat(ap, &paths[i]) {
                        let j = index[&q];
                        left[j] = left[j].clone() + c.clone();
                        any_l = true;
                    }
                    if let Some(q) = concat(&paths[i], ap) {
                        let j = index[&q];
                        right[j] = right[j].clone() + c.clone();
                        any_r = true;
                    }
                }
                for (v, any) in [(left, any_l), (right, any_r)] {
                    if any {
                        if let Some(r) = ideal.insert(v) {
                            queue.push(r);
                        }
                    }
                }
            }
        }

        let basis_paths: Vec<usize> = (0..np).filter(|i| !ideal.rows.contains_key(i)).collect();
        let mut basis_index = vec![usize::MAX; np];
        for (b, &p) in basis_paths.iter().enumerate() {
            basis_index[p] = b;
        }
        let normal_form = |p: usize| -> Vec<(usize, T)> {
            let mut w = vec![T::zero(); np];
            w[p] = T::one();
            ideal.reduce(&mut w);
            w.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    debug_assert!(basis_index[i] != usize::MAX);
                    (basis_index[i], c)
                })
                .collect()
        };

        let n = basis_paths.len();
        let mut products = vec![Vec::new(); n * n];
        for (a, &pa) in basis_paths.iter().enumerate() {
            for (b, &pb) in basis_paths.iter().enumerate() {
                if let Some(q) = concat(&paths[pa], &paths[pb]) {
                    products[a * n + b] = normal_form(index[&q]);
                }
            }
        }
        let labels = basis_paths
            .iter()
            .map(|&p| {
                let path = &paths[p];
                if path.arrows.is_empty() {
                    idempotent_label(&quiver.vertices[path.source])
                } else {
                    path_label(&path.arrows.iter().map(|&a| quiver.arrows[a].label.as_str()).collect::<Vec<_>>())
                }
            })
            .collect();
        let mut algebra = Algebra::assemble(
            quiver.vertices.clone(),
            labels,
            basis_paths.iter().map(|&p| paths[p].source).collect(),
            basis_paths.iter().map(|&p| paths[p].target).collect(),
            products,
            (0..nv).map(|v| basis_index[v]).collect(),
            Some(truncation),
        );
        algebra.generators = algebra.compute_generators();
        Ok(algebra)
    }
}

fn resolve_path(
    quiver: &Quiver,
    arrow_by_label: &HashMap<&str, usize>,
    relation: usize,
    labels: &[String],
) -> Result<Path, AlgebraError> {
    if let [single] = labels {
        if !arrow_by_label.contains_key(single.as_str()) {
            if let Some(v) = quiver.vertices.iter().position(|v| &idempotent_label(v) == single) {
                return Ok(Path { source: v, target: v, arrows: Vec::new() });
            }
        }
    }
    let mut arrows = Vec::with_capacity(labels.len());
    for l in labels {
        let a = *arrow_by_label
            .get(l.as_str())
            .ok_or_else(|| AlgebraError::UnknownArrow { relation, label: l.clone() })?;
        if let Some(&prev) = arrows.last() {
            let prev: usize = prev;
            if quiver.arrows[prev].target != quiver.arrows[a].source {
                return Err(AlgebraError::RelationNotParallel {
                    relation,
                    detail: format!("path {} is not composable", labels.join("*")),
                });
            }
        }
        arrows.push(a);
    }
    match (arrows.first(), arrows.last()) {
        (Some(&f), Some(&l)) => Ok(Path { source: quiver.arrows[f].source, target: quiver.arrows[l].target, arrows }),
        _ => Err(AlgebraError::NotAdmissible { relation }),
    }
}

/// Every `e' = sum_{v in E'} e_v` with `E'` a subset of `E`, in binary
/// counting order over the sorted vertices of `E`. These are exactly the
/// idempotents with `e'e = ee' = e'` among sums of vertex idempotents.
pub fn sandwiched_idempotents(e: &IdempotentSelector) -> Vec<IdempotentSelector> {
    let vs: Vec<usize> = e.vertices().collect();
    (0u64..1 << vs.len())
        .map(|mask| IdempotentSelector::new(vs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v)))
        .collect()
}
