use std::collections::BTreeMap;
use std::sync::Arc;

use idemres::*;
use proptest::prelude::*;

const BOUND: usize = 5;

fn algebra_from_seed(seed: u64) -> (AlgebraFile, Arc<Algebra<F5>>) {
    let file = generate_corpus(seed, 1, CorpusLimits::default()).remove(0);
    let a = Arc::new(file.build::<F5>().unwrap());
    (file, a)
}

fn mat_f5(rows: usize, cols: usize, data: &[u64]) -> Mat<F5> {
    Mat::from_vec(rows, cols, data.iter().take(rows * cols).map(|&x| F5::new(x)).collect())
}

fn matrix_strategy() -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(0u64..5, r * c)))
}

/// A quotient of a sum of indecomposable projectives by the submodule
/// generated by a few pseudo-random vectors.
fn random_module(a: &Arc<Algebra<F5>>, picks: &[usize], noise: &[u64]) -> Module<F5> {
    let n = a.vertex_count();
    let tops: Vec<usize> = picks.iter().take(2).map(|p| p % n).collect();
    let p = Module::projective_sum(a.clone(), &tops);
    let mut noise = noise.iter().cycle();
    let seeds: Vec<Mat<F5>> = (0..n)
        .map(|v| {
            let d = p.dim_at(v);
            if d == 0 || picks.get(2).is_some_and(|&x| x % n != v) {
                return Mat::zeros(0, d);
            }
            let row: Vec<F5> = (0..d).map(|_| F5::new(*noise.next().unwrap())).collect();
            Mat::from_rows(d, vec![row])
        })
        .collect();
    let spaces = p.generated_spaces(&seeds);
    p.quotient(&spaces).0
}

fn selector_from_mask(n: usize, mask: u32) -> IdempotentSelector {
    IdempotentSelector::new((0..n).filter(|v| mask >> v & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn rank_nullity((r, c, data) in matrix_strategy()) {
        let m = mat_f5(r, c, &data);
        let k = m.kernel_basis();
        prop_assert_eq!(k.rows() + m.rank(), r);
        prop_assert!(k.mul(&m).is_zero());
        let span = Subspace::span(&m);
        prop_assert_eq!(span.dim(), m.rank());
        prop_assert!(span.contains_all(&m));
    }

    #[test]
    fn solve_recovers_a_solution((r, c, data) in matrix_strategy(), xs in prop::collection::vec(0u64..5, 1..7 * 7)) {
        let a = mat_f5(r, c, &data);
        let x = Mat::from_vec(2, r, (0..2 * r).map(|i| F5::new(xs[i % xs.len()])).collect());
        let b = x.mul(&a);
        let y = a.solve(&b).unwrap();
        prop_assert_eq!(y.mul(&a), b);
    }

    #[test]
    fn reduction_mod_p_cannot_raise_rank((r, c, data) in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-4i64..5, r * c)))) {
        let q: Mat<Q> = Mat::from_vec(r, c, data.iter().map(|&x| Q::from_i64(x)).collect());
        let p: Mat<F5> = Mat::from_vec(r, c, data.iter().map(|&x| F5::from_i64(x)).collect());
        prop_assert!(p.rank() <= q.rank());
    }

    #[test]
    fn hom_from_projective_is_evaluation(seed in 0u64..400, picks in prop::collection::vec(0usize..5, 3), noise in prop::collection::vec(0u64..5, 1..12)) {
        let (_, a) = algebra_from_seed(seed);
        let m = random_module(&a, &picks, &noise);
        for v in 0..a.vertex_count() {
            let homs = hom_space(&Module::projective(a.clone(), v), &m).unwrap();
            prop_assert_eq!(homs.len(), m.dim_at(v));
        }
    }

    #[test]
    fn projectives_have_block_dimensions(seed in 0u64..400) {
        let (_, a) = algebra_from_seed(seed);
        for v in 0..a.vertex_count() {
            let p = Module::projective(a.clone(), v);
            for w in 0..a.vertex_count() {
                prop_assert_eq!(p.dim_at(w), a.block(v, w).len());
            }
            prop_assert_eq!(p.top_multiplicities(), MultiplicityVector::unit(a.vertex_count(), v));
        }
    }

    #[test]
    fn covers_are_surjective_with_radical_kernel(seed in 0u64..400, picks in prop::collection::vec(0usize..5, 3), noise in prop::collection::vec(0u64..5, 1..12)) {
        let (_, a) = algebra_from_seed(seed);
        let m = random_module(&a, &picks, &noise);
        let cover = m.projective_cover();
        prop_assert!(cover.map.is_surjective());
        prop_assert_eq!(cover.multiplicities.clone(), m.top_multiplicities());
        let (_, inclusion) = cover.map.kernel();
        prop_assert!(inclusion.is_radical());
    }

    #[test]
    fn resolutions_are_minimal_and_alternating_sums_match(seed in 0u64..400, picks in prop::collection::vec(0usize..5, 3), noise in prop::collection::vec(0u64..5, 1..12)) {
        let (_, a) = algebra_from_seed(seed);
        let m = random_module(&a, &picks, &noise);
        let res = minimal_projective_resolution(&m, BOUND);
        prop_assert!(verify_minimal_resolution(&res).is_ok());
        if res.status().is_terminated() {
            let mut euler = vec![0i64; a.vertex_count()];
            for k in 0..res.len() {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                for (v, slot) in euler.iter_mut().enumerate() {
                    *slot += sign * res.projective(k).dim_at(v) as i64;
                }
            }
            let dims: Vec<i64> = m.dims().iter().map(|&d| d as i64).collect();
            prop_assert_eq!(euler, dims);
        }
    }

    #[test]
    fn first_extensions_count_arrows(seed in 0u64..400) {
        let (file, a) = algebra_from_seed(seed);
        let Presentation::Quiver { arrows, truncation, .. } = &file.presentation else { unreachable!() };
        prop_assume!(*truncation >= 2);
        let n = a.vertex_count();
        for v in 0..n {
            let res = minimal_projective_resolution(&Module::simple(a.clone(), v), 1);
            for w in 0..n {
                let count = arrows.iter().filter(|x| x.source == v && x.target == w).count();
                prop_assert_eq!(res.multiplicity(1, w), count);
                prop_assert_eq!(res.multiplicity(0, w), usize::from(v == w));
            }
        }
    }

    #[test]
    fn gamma_has_the_corner_dimension(seed in 0u64..400, mask in 0u32..32) {
        let (_, a) = algebra_from_seed(seed);
        let n = a.vertex_count();
        let e = selector_from_mask(n, mask % (1 << n));
        let ctx = gamma_algebra(&a, &e).unwrap();
        let kept: Vec<usize> = (0..n).filter(|v| !e.contains(*v)).collect();
        let expected: usize = kept.iter().flat_map(|&u| kept.iter().map(move |&w| (u, w))).map(|(u, w)| a.block(u, w).len()).sum();
        prop_assert_eq!(ctx.gamma().dim(), expected);
        prop_assert_eq!(ctx.gamma().vertex_count(), kept.len());
    }

    #[test]
    fn fe_is_exact_on_covers(seed in 0u64..400, mask in 0u32..32, picks in prop::collection::vec(0usize..5, 3), noise in prop::collection::vec(0u64..5, 1..12)) {
        let (_, a) = algebra_from_seed(seed);
        let n = a.vertex_count();
        let ctx = gamma_algebra(&a, &selector_from_mask(n, mask % (1 << n))).unwrap();
        let m = random_module(&a, &picks, &noise);
        let cover = m.projective_cover();
        let (k, _) = cover.map.kernel();
        let fmap = ctx.apply_fe_map(&cover.map);
        prop_assert!(fmap.is_surjective());
        let (fk, _) = fmap.kernel();
        let fe_k = ctx.apply_fe(&k);
        prop_assert_eq!(fk.dims(), fe_k.dims());
        let kept: Vec<usize> = ctx.kept_vertices().iter().map(|&v| m.dim_at(v)).collect();
        let fe_m = ctx.apply_fe(&m);
        prop_assert_eq!(fe_m.dims(), kept.as_slice());
    }

    #[test]
    fn construction_matches_direct_resolution(seed in 0u64..400, mask in 0u32..32, picks in prop::collection::vec(0usize..5, 3), noise in prop::collection::vec(0u64..5, 1..12)) {
        let (_, a) = algebra_from_seed(seed);
        let n = a.vertex_count();
        let ctx = gamma_algebra(&a, &selector_from_mask(n, mask % (1 << n))).unwrap();
        let m = random_module(&a, &picks, &noise);
        let trace = run_construction(&ctx, &m, BOUND);
        prop_assert_eq!(oracle_compare(&trace), Ok(()));
        prop_assert!(verify_minimal_resolution(&induced_resolution(&trace)).is_ok());
    }

    #[test]
    fn text_round_trips(seed in 0u64..400) {
        let (file, a) = algebra_from_seed(seed);
        prop_assert_eq!(AlgebraFile::parse(&file.to_text()).unwrap(), file);
        let text = serialize_algebra(&*a);
        let b: Algebra<F5> = parse_algebra(&text).unwrap();
        prop_assert_eq!(&b, &*a);
        prop_assert_eq!(serialize_algebra(&b), text);
    }

    #[test]
    fn shuffled_presentations_resolve_alike(seed in 0u64..400, shuffle in any::<u64>()) {
        let (_, a) = algebra_from_seed(seed);
        let (file, perm) = shuffle_table(&AlgebraFile::from_algebra(&*a), shuffle);
        let b = Arc::new(file.build::<F5>().unwrap());
        prop_assert_eq!(global_dimension(&a, BOUND), global_dimension(&b, BOUND));
        let named = |alg: &Algebra<F5>, m: &MultiplicityVector| -> BTreeMap<String, usize> {
            alg.vertex_names().iter().cloned().zip(m.0.iter().copied()).collect()
        };
        for (new, &old) in perm.iter().enumerate() {
            let ra = minimal_projective_resolution(&Module::simple(a.clone(), old), BOUND);
            let rb = minimal_projective_resolution(&Module::simple(b.clone(), new), BOUND);
            prop_assert_eq!(ra.len(), rb.len());
            for k in 0..ra.len() {
                prop_assert_eq!(named(&a, &ra.terms()[k]), named(&b, &rb.terms()[k]));
            }
        }
    }
}

