//! Reproducible random algebras for sweeps and property tests.
//!
//! Each algebra is a random quiver with a few monomial and binomial
//! relations between parallel paths of length at least two. Half of the
//! quivers are drawn acyclic (arrows only go from lower to higher vertex
//! index), so a large share of the corpus has finite global dimension.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::sync::Arc;

use crate::algebra::{Algebra, Arrow, IdempotentSelector};
use crate::module::Module;
use crate::subring::gamma_algebra;
use crate::format::{AlgebraFile, LinComb, Presentation, ProductLine};
use crate::scalar::FieldSpec;
use crate::F5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusLimits {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_truncation: usize,
    /// Draws whose algebra is larger than this are redrawn.
    pub max_dim: usize,
    /// Draws are redrawn when a term `P_k`, `k <= growth_bound`, of the
    /// minimal resolution of a simple over the algebra or one of its corner
    /// rings `Γ_e` has total dimension above `max_term_dim`.
    pub max_term_dim: usize,
    pub growth_bound: usize,
    pub field: FieldSpec,
}

impl Default for CorpusLimits {
    fn default() -> Self {
        CorpusLimits {
            max_vertices: 5,
            max_arrows: 8,
            max_truncation: 4,
            max_dim: 40,
            max_term_dim: 60,
            growth_bound: 8,
            field: FieldSpec::Prime(5),
        }
    }
}

const LABELS: [&str; 12] = ["a", "b", "c", "d", "f", "g", "h", "k", "m", "n", "p", "q"];

/// `count` algebra files drawn from `seed`. Every file parses and builds
/// over F_5 (the coefficients are small integers, so over any field).
pub fn generate_corpus(seed: u64, count: usize, limits: CorpusLimits) -> Vec<AlgebraFile> {
    assert!(limits.max_vertices >= 1 && limits.max_arrows <= LABELS.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let file = draw(&mut rng, &limits);
        match file.build::<F5>() {
            Ok(a) if a.dim() <= limits.max_dim && tame(&a, &limits) => out.push(file),
            _ => {}
        }
    }
    out
}

fn draw(rng: &mut ChaCha8Rng, limits: &CorpusLimits) -> AlgebraFile {
    let nv = rng.random_range(1..=limits.max_vertices);
    let na = rng.random_range((nv - 1).min(limits.max_arrows)..=limits.max_arrows);
    let acyclic = rng.random_bool(0.5);
    let truncation = if limits.max_truncation < 2 { limits.max_truncation.max(1) } else { rng.random_range(2..=limits.max_truncation) };
    let mut arrows = Vec::with_capacity(na);
    for label in LABELS.iter().take(na) {
        let (s, t) = if acyclic {
            if nv < 2 {
                break;
            }
            let s = rng.random_range(0..nv - 1);
            (s, rng.random_range(s + 1..nv))
        } else {
            (rng.random_range(0..nv), rng.random_range(0..nv))
        };
        arrows.push(Arrow { label: label.to_string(), source: s, target: t });
    }

    let paths = paths_up_to(&arrows, truncation.max(3));
    let mut relations = Vec::new();
    if !paths.is_empty() {
        for _ in 0..rng.random_range(0..=2) {
            let first = paths[rng.random_range(0..paths.len())].clone();
            let parallel: Vec<&Vec<usize>> = paths
                .iter()
                .filter(|p| **p != first && endpoints(&arrows, p) == endpoints(&arrows, &first))
                .collect();
            let label_path = |p: &[usize]| p.iter().map(|&a| arrows[a].label.clone()).collect::<Vec<_>>();
            let mut terms = vec![(BigRational::from_integer(1.into()), label_path(&first))];
            if !parallel.is_empty() && rng.random_bool(0.5) {
                let second = parallel[rng.random_range(0..parallel.len())];
                let c = rng.random_range(1..=4i64) * if rng.random_bool(0.5) { -1 } else { 1 };
                terms.push((BigRational::from_integer(BigInt::from(c)), label_path(second)));
            }
            relations.push(LinComb { terms });
        }
    }
    AlgebraFile::quiver(
        Some(limits.field),
        (1..=nv).map(|i| i.to_string()).collect(),
        arrows,
        relations,
        truncation,
    )
}

fn tame(a: &Algebra<F5>, limits: &CorpusLimits) -> bool {
    let a = Arc::new(a.clone());
    let n = a.vertex_count();
    (0u32..1 << n).all(|mask| {
        let e = IdempotentSelector::new((0..n).filter(|v| mask >> v & 1 == 1));
        let ctx = gamma_algebra(&a, &e).expect("vertices in range");
        let g = ctx.gamma();
        (0..g.vertex_count()).all(|v| small_syzygies(Module::simple(g.clone(), v), limits))
    })
}

fn small_syzygies(mut omega: Module<F5>, limits: &CorpusLimits) -> bool {
    for _ in 0..=limits.growth_bound {
        if omega.is_zero() {
            return true;
        }
        let cover = omega.projective_cover();
        if cover.projective.total_dim() > limits.max_term_dim {
            return false;
        }
        omega = cover.map.kernel().0;
    }
    true
}

fn endpoints(arrows: &[Arrow], path: &[usize]) -> (usize, usize) {
    (arrows[path[0]].source, arrows[path[path.len() - 1]].target)
}

/// Paths of length `2..max_len` as arrow-index sequences.
fn paths_up_to(arrows: &[Arrow], max_len: usize) -> Vec<Vec<usize>> {
    let mut layer: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
    let mut out = Vec::new();
    for _ in 2..max_len {
        let mut next = Vec::new();
        for p in &layer {
            let end = arrows[*p.last().expect("nonempty")].target;
            for (a, arrow) in arrows.iter().enumerate() {
                if arrow.source == end {
                    let mut q = p.clone();
                    q.push(a);
                    next.push(q);
                }
            }
            if next.len() > 200 {
                break;
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Reorders the vertices and basis of a table-form file at random.
///
/// Returns the shuffled file and `perm` with `perm[new] = old` for vertices.
/// Panics if `file` is not in table form.
pub fn shuffle_table(file: &AlgebraFile, seed: u64) -> (AlgebraFile, Vec<usize>) {
    let Presentation::Table { basis, idempotents, products } = &file.presentation else {
        panic!("shuffle_table needs a table-form file");
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..file.vertices.len()).collect();
    perm.shuffle(&mut rng);
    let mut basis = basis.clone();
    basis.shuffle(&mut rng);
    let mut products: Vec<ProductLine> = products.clone();
    products.shuffle(&mut rng);
    let shuffled = AlgebraFile::table(
        file.field,
        perm.iter().map(|&v| file.vertices[v].clone()).collect(),
        basis,
        perm.iter().map(|&v| idempotents[v].clone()).collect(),
        products,
    );
    (shuffled, perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn single_vertex_without_arrows_is_the_field() {
        let limits = CorpusLimits { max_vertices: 1, max_arrows: 0, ..CorpusLimits::default() };
        let files = generate_corpus(1, 1, limits);
        let a: Algebra<F5> = files[0].build().unwrap();
        assert_eq!(a, examples::field());
    }

    #[test]
    fn corpus_is_deterministic_and_valid() {
        let a = generate_corpus(42, 100, CorpusLimits::default());
        let b = generate_corpus(42, 100, CorpusLimits::default());
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
        for f in &a {
            let text = f.to_text();
            let parsed = AlgebraFile::parse(&text).unwrap();
            assert_eq!(&parsed, f);
            assert!(parsed.build::<F5>().is_ok());
        }
        assert_ne!(a, generate_corpus(43, 100, CorpusLimits::default()));
    }

    #[test]
    fn shuffled_table_builds() {
        for f in generate_corpus(7, 10, CorpusLimits::default()) {
            let a: Algebra<F5> = f.build().unwrap();
            let table = AlgebraFile::from_algebra(&a);
            let (s, perm) = shuffle_table(&table, 3);
            let b: Algebra<F5> = s.build().unwrap();
            assert_eq!(a.dim(), b.dim());
            for (new, &old) in perm.iter().enumerate() {
                assert_eq!(b.vertex_names()[new], a.vertex_names()[old]);
            }
        }
    }
}
