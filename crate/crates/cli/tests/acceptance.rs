//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines reach the terminal under
//! `cargo test`. The process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use idemres::{
    check_ip_conjecture, check_sandwich_theorem, examples, ext_dims_hom_complex, ext_dims_shortcut, ext_quiver, gamma_algebra,
    generate_corpus, global_dimension, induced_resolution, m_table_and_property, minimal_projective_resolution, oracle_compare,
    run_construction, shuffle_table, tor_dims, verify_minimal_resolution, yoneda_directedness, Algebra, AlgebraFile, Certainty,
    ConstructionTrace, CorpusLimits, ExtendedDegree, GammaContext, IdempotentSelector, Module, MultiplicityVector, Resolution,
    ResolutionStatus, Verdict, F5,
};
use idemres_cli::{run_command, Command, OutputFormat, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SEED: u64 = 8128;
const CORPUS_SIZE: usize = 200;
const SELECTORS_PER_ALGEBRA: usize = 3;
const DEGREE: usize = 8;
const TOR_LAST: usize = 7;
const SWEEP_BOUND: usize = 12;
const SHUFFLED_CASES: usize = 20;
const TIME_LIMIT: Duration = Duration::from_secs(120);

type A = Arc<Algebra<F5>>;

struct Case {
    algebra: A,
    ctx: GammaContext<F5>,
    omega_label: String,
    omega0: Module<F5>,
    trace: ConstructionTrace<F5>,
}

impl Case {
    fn name(&self, index: usize) -> String {
        let e: Vec<String> = self.ctx.selector().vertices().map(|v| self.algebra.vertex_names()[v].clone()).collect();
        format!("algebra {index}, E={{{}}}, omega0={}", e.join(","), self.omega_label)
    }
}

/// `min(3, 2^n)` distinct uniform selectors, topped up to three by repeats.
fn random_selectors(n: usize, rng: &mut ChaCha8Rng) -> Vec<IdempotentSelector> {
    let total = 1u64 << n;
    let mut masks: Vec<u64> = Vec::new();
    while masks.len() < SELECTORS_PER_ALGEBRA.min(total as usize) {
        let m = rng.random_range(0..total);
        if !masks.contains(&m) {
            masks.push(m);
        }
    }
    while masks.len() < SELECTORS_PER_ALGEBRA {
        masks.push(masks[rng.random_range(0..masks.len())]);
    }
    masks.into_iter().map(|m| IdempotentSelector::new((0..n).filter(|v| m >> v & 1 == 1))).collect()
}

fn starting_modules(a: &A) -> Vec<(String, Module<F5>)> {
    let mut out = Vec::new();
    for v in 0..a.vertex_count() {
        out.push((format!("e_{}R", a.vertex_names()[v]), Module::projective(a.clone(), v)));
        out.push((format!("S_{}", a.vertex_names()[v]), Module::simple(a.clone(), v)));
    }
    out
}

struct Line {
    failures: usize,
}

impl Line {
    fn emit(&mut self, n: usize, title: &str, problems: &[String], detail: String) {
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {verdict}: {title} ({detail})");
        for p in problems.iter().take(5) {
            println!("    {p}");
        }
        if !problems.is_empty() {
            self.failures += 1;
        }
    }
}

fn trace_dims_agree(res_a: &Resolution<F5>, res_b: &Resolution<F5>) -> bool {
    res_a.terms() == res_b.terms() && res_a.status() == res_b.status()
}

fn report_text(cfg: &RunConfig) -> (i32, String) {
    let out = run_command(cfg);
    (out.status, out.render(cfg.format))
}

fn main() {
    let mut line = Line { failures: 0 };
    let files = generate_corpus(CORPUS_SEED, CORPUS_SIZE, CorpusLimits::default());
    let algebras: Vec<A> = files.iter().map(|f| Arc::new(f.build::<F5>().expect("corpus files build"))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);

    // 1. Induced resolution against the direct resolution over Γ_e.
    let start = Instant::now();
    let mut cases = Vec::new();
    let mut problems = Vec::new();
    for (i, a) in algebras.iter().enumerate() {
        for e in random_selectors(a.vertex_count(), &mut rng) {
            let ctx = gamma_algebra(a, &e).expect("selector in range");
            for (label, omega0) in starting_modules(a) {
                let trace = run_construction(&ctx, &omega0, DEGREE);
                let case = Case { algebra: a.clone(), ctx: ctx.clone(), omega_label: label, omega0, trace };
                if let Err(msg) = oracle_compare(&case.trace) {
                    problems.push(format!("{}: {msg}", case.name(i)));
                }
                cases.push((i, case));
            }
        }
    }
    let elapsed = start.elapsed();
    let truncated = cases.iter().filter(|(_, c)| !c.trace.status.is_terminated()).count();
    let long = cases.iter().filter(|(_, c)| c.trace.p.len() >= 3).count();
    let nontrivial_e = cases.iter().filter(|(_, c)| !c.ctx.selector().is_empty() && !c.ctx.is_degenerate()).count();
    if elapsed > TIME_LIMIT {
        problems.push(format!("took {elapsed:?}, limit {TIME_LIMIT:?}"));
    }
    line.emit(
        1,
        "induced resolution equals direct resolution over Gamma_e",
        &problems,
        format!(
            "{} algebras, {} cases ({nontrivial_e} with proper nonempty E, {long} with >= 3 terms, {truncated} truncated), degree <= {DEGREE}, {:.1?}",
            algebras.len(),
            cases.len(),
            elapsed
        ),
    );

    // 2. Tor_i against X_{i+1}.
    let mut problems = Vec::new();
    for (i, c) in &cases {
        let tor = tor_dims(&c.ctx, &c.ctx.apply_fe(&c.omega0), TOR_LAST);
        if let Err(msg) = tor.matches_trace(&c.trace, TOR_LAST) {
            problems.push(format!("{}: {msg}", c.name(*i)));
        }
    }
    line.emit(2, "Tor_i over Gamma_e matches X_(i+1), 1 <= i <= 7", &problems, format!("{} cases", cases.len()));

    // 3. Minimality of both resolutions.
    let mut problems = Vec::new();
    let mut checked = 0;
    for (i, c) in &cases {
        let induced = induced_resolution(&c.trace);
        let direct = minimal_projective_resolution(&c.ctx.apply_fe(&c.omega0), DEGREE);
        for (which, res) in [("induced", &induced), ("direct", &direct)] {
            checked += 1;
            if let Err(msg) = verify_minimal_resolution(res) {
                problems.push(format!("{} ({which}): {msg}", c.name(*i)));
            }
        }
    }
    line.emit(3, "every resolution passes verify_minimal_resolution", &problems, format!("{checked} resolutions"));

    // 4. Envelope and support invariants.
    let mut problems = Vec::new();
    for (i, c) in &cases {
        let t = &c.trace;
        let e = c.ctx.selector();
        for j in 0..t.x.len() {
            let top = t.k[j].top_multiplicities();
            if e.vertices().any(|v| top.0[v] != 0) {
                problems.push(format!("{}: top(K_{j}) meets E", c.name(*i)));
            }
            for v in 0..c.algebra.vertex_count() {
                if t.omega[j].dim_at(v) != t.x[j].dim_at(v) + t.k[j].dim_at(v) {
                    problems.push(format!("{}: dim Omega_{j} != dim X_{j} + dim K_{j} at vertex {v}", c.name(*i)));
                }
            }
            if let Some(p) = t.p_terms().get(j) {
                if e.vertices().any(|v| p.0[v] != 0) {
                    problems.push(format!("{}: P_{j} has a summand P(v) with v in E", c.name(*i)));
                }
                for v in 0..c.algebra.vertex_count() {
                    if t.k[j].dim_at(v) + t.omega[j + 1].dim_at(v) != t.p[j].dim_at(v) {
                        problems.push(format!("{}: dim P_{j} != dim K_{j} + dim Omega_{} at vertex {v}", c.name(*i), j + 1));
                    }
                }
            }
        }
    }
    line.emit(4, "top(K_i) avoids E, P_i avoids E, dimensions conserve", &problems, format!("{} traces", cases.len()));

    // 5. E empty reproduces the resolution over R.
    let mut problems = Vec::new();
    let mut checked = 0;
    for (i, a) in algebras.iter().enumerate() {
        let ctx = gamma_algebra(a, &IdempotentSelector::empty()).expect("empty selector");
        for (label, omega0) in starting_modules(a) {
            checked += 1;
            let trace = run_construction(&ctx, &omega0, DEGREE);
            let direct = minimal_projective_resolution(&omega0, DEGREE);
            if trace.x.iter().any(|x| !x.is_zero()) {
                problems.push(format!("algebra {i}, omega0={label}: some X_i is nonzero"));
            }
            if trace.p_terms() != direct.terms() || trace.status != direct.status() {
                problems.push(format!("algebra {i}, omega0={label}: trace terms differ from the resolution over R"));
            }
            if !trace_dims_agree(&induced_resolution(&trace), &direct) {
                problems.push(format!("algebra {i}, omega0={label}: induced resolution differs"));
            }
        }
    }
    line.emit(5, "E = {} reproduces the minimal resolution over R", &problems, format!("{checked} cases"));

    // 6. Multiplicity shortcut against Hom-complex homology.
    let mut problems = Vec::new();
    let mut checked = 0;
    for (i, a) in algebras.iter().enumerate() {
        let n = a.vertex_count();
        let mut targets: Vec<(String, Module<F5>)> =
            (0..n).map(|v| (format!("S_{}", a.vertex_names()[v]), Module::simple(a.clone(), v))).collect();
        let all = MultiplicityVector(vec![1; n]);
        targets.push(("top R".into(), Module::semisimple(a.clone(), &all)));
        for (label, m) in starting_modules(a) {
            let res = minimal_projective_resolution(&m, DEGREE + 1);
            for (tl, s) in &targets {
                checked += 1;
                let short = ext_dims_shortcut(&res, s, DEGREE).expect("semisimple target");
                let hom = ext_dims_hom_complex(&res, s, DEGREE).expect("same algebra");
                if short != hom {
                    problems.push(format!("algebra {i}, Ext({label}, {tl}): shortcut {:?} vs Hom complex {:?}", short.dims, hom.dims));
                }
            }
        }
    }
    line.emit(6, "Ext via multiplicities equals Hom-complex homology, k <= 8", &problems, format!("{checked} pairs"));

    // 7. Golden traces and byte-identical reports.
    let mut problems = golden_problems();
    for (name, text, e, module) in [("A2", A2_TEXT, "1", "e_1R"), ("A3 with relation", A3_TEXT, "2", "e_2R")] {
        let mut cfg = RunConfig::new(Command::Construct);
        cfg.algebra = Some(text.into());
        cfg.e = vec![e.into()];
        cfg.module = Some(module.into());
        cfg.bound = 10;
        cfg.format = OutputFormat::Json;
        let (s1, r1) = report_text(&cfg);
        let (s2, r2) = report_text(&cfg);
        if s1 != 0 || s2 != 0 || r1 != r2 {
            problems.push(format!("{name}: statuses {s1}/{s2}, reports identical: {}", r1 == r2));
        }
        let expected = if name == "A2" { A2_GOLDEN } else { A3_GOLDEN };
        if r1 != expected {
            problems.push(format!("{name}: report differs from the golden copy:\n{r1}"));
        }
    }
    line.emit(7, "golden A2 and A3 traces; machine-readable reports byte-identical", &problems, "2 examples".into());

    // 8. Self-orthogonality under the finiteness hypotheses.
    let mut problems = Vec::new();
    let mut qualifying = 0;
    let mut finite = 0;
    for (i, a) in algebras.iter().enumerate() {
        if !matches!(global_dimension(a, SWEEP_BOUND), ExtendedDegree::Finite(_) | ExtendedDegree::MinusInfinity) {
            continue;
        }
        finite += 1;
        for v in 0..a.vertex_count() {
            let s = Module::simple(a.clone(), v);
            let res = minimal_projective_resolution(&s, SWEEP_BOUND);
            if res.multiplicity(1, v) != 0 {
                continue;
            }
            let ctx = gamma_algebra(a, &IdempotentSelector::new([v])).expect("vertex in range");
            let fe = minimal_projective_resolution(&ctx.apply_fe(&Module::projective(a.clone(), v)), SWEEP_BOUND);
            if !fe.status().is_terminated() {
                continue;
            }
            qualifying += 1;
            if let Some(k) = (1..=SWEEP_BOUND).find(|&k| res.multiplicity(k, v) != 0) {
                problems.push(format!("algebra {i}, e = e_{}: Ext^{k}(S_e, S_e) != 0", a.vertex_names()[v]));
            }
        }
    }
    line.emit(
        8,
        "Ext^k(S_e, S_e) = 0 for 1 <= k <= 12 under the hypotheses",
        &problems,
        format!("{finite} algebras of finite global dimension, {qualifying} primitive idempotents qualified, counterexamples {}", problems.len()),
    );

    // 9. Sandwich and Yoneda checkers on the named examples.
    line.emit(9, "sandwich and Yoneda checkers on A3 and the cyclic algebra", &checker_problems(), "bound 12".into());

    // 10. Permutation invariance.
    let mut problems = Vec::new();
    for (i, a) in algebras.iter().enumerate().take(SHUFFLED_CASES) {
        if let Err(msg) = permutation_invariant(a, i as u64) {
            problems.push(format!("algebra {i}: {msg}"));
        }
    }
    line.emit(10, "shuffling basis and vertices changes no verdict or multiplicity", &problems, format!("{SHUFFLED_CASES} cases"));

    if line.failures > 0 {
        println!("{} criteria failed", line.failures);
        std::process::exit(1);
    }
}

const A2_TEXT: &str = "field F5\nvertices 1 2\narrow a 1 2\ntruncation 2\n";
const A3_TEXT: &str = "field F5\nvertices 1 2 3\narrow a 1 2\narrow b 2 3\nrelation a*b\ntruncation 3\n";
const A2_GOLDEN: &str = include_str!("golden/a2_construct.jsonl");
const A3_GOLDEN: &str = include_str!("golden/a3_construct.jsonl");

/// X_0 is the S_e summand, K_0 is projective, Ω_1 = 0, one induced term.
fn golden_problems() -> Vec<String> {
    let mut problems = Vec::new();
    type Case = (&'static str, Algebra<F5>, usize, Vec<usize>, Vec<usize>);
    let cases: [Case; 2] = [
        ("A2", examples::a2(), 0, vec![1, 0], vec![1]),
        ("A3 with relation", examples::a3_with_relation(), 1, vec![0, 1, 0], vec![0, 1]),
    ];
    for (name, a, v, x0, term) in cases {
        let a = Arc::new(a);
        let ctx = gamma_algebra(&a, &IdempotentSelector::new([v])).expect("vertex in range");
        let trace = run_construction(&ctx, &Module::projective(a.clone(), v), 10);
        let k0 = &trace.k[0];
        let k0_projective = k0.projective_cover().map.kernel().0.is_zero();
        let res = induced_resolution(&trace);
        let checks = [
            (trace.x[0].dims() == x0.as_slice() && trace.x[0].is_semisimple(), "X_0 is the S_e summand"),
            (k0_projective, "K_0 is projective"),
            (trace.omega.get(1).is_some_and(Module::is_zero), "Omega_1 = 0"),
            (trace.status == ResolutionStatus::Terminated, "trace terminates"),
            (res.len() == 1 && res.terms()[0].0 == term, "induced resolution has the single stated term"),
        ];
        for (ok, what) in checks {
            if !ok {
                problems.push(format!("{name}: {what} fails"));
            }
        }
    }
    problems
}

fn checker_problems() -> Vec<String> {
    let mut problems = Vec::new();
    let a3 = Arc::new(examples::a3_with_relation::<F5>());
    let ctx = gamma_algebra(&a3, &IdempotentSelector::new([0, 1])).expect("in range");
    let sandwich = check_sandwich_theorem(&ctx, SWEEP_BOUND);
    if sandwich.verdict != Verdict::Holds {
        problems.push(format!("A3 sandwich verdict {}", sandwich.verdict));
    }
    match &sandwich.ordering {
        Some(order) if ordering_is_valid(&a3, order, true) => {}
        other => problems.push(format!("A3 sandwich ordering {other:?} is not valid")),
    }
    let yoneda = yoneda_directedness(&ctx, SWEEP_BOUND);
    if yoneda.verdict != Verdict::Holds {
        problems.push(format!("A3 Yoneda verdict {}", yoneda.verdict));
    }
    match &yoneda.ordering {
        Some(order) if ordering_is_valid(&a3, order, false) => {}
        other => problems.push(format!("A3 Yoneda ordering {other:?} is not valid")),
    }

    let cyc = Arc::new(examples::cyclic_two_vertex::<F5>());
    let ctx = gamma_algebra(&cyc, &IdempotentSelector::new([0, 1])).expect("in range");
    let report = check_sandwich_theorem(&ctx, SWEEP_BOUND);
    let gldim = report.hypotheses.iter().find(|h| h.name == "gldim Gamma_{} finite");
    match gldim {
        Some(h) if h.status == Certainty::Unknown && h.witness == format!("atLeast({SWEEP_BOUND})") => {}
        other => problems.push(format!("cyclic: gldim hypothesis reported as {other:?}")),
    }
    if report.verdict != Verdict::Unknown {
        problems.push(format!("cyclic: verdict {} claims a conclusion", report.verdict));
    }
    let q = ext_quiver(&cyc, ctx.selector(), SWEEP_BOUND);
    if !(q.definite.contains(&(0, 1)) && q.definite.contains(&(1, 0)) && q.acyclic == Certainty::Fails) {
        problems.push(format!("cyclic: Ext quiver {:?} lacks the definite 2-cycle", q.definite));
    }
    let mut cfg = RunConfig::new(Command::CheckSandwich);
    cfg.algebra = Some(AlgebraFile::from_algebra(&*cyc).to_text());
    cfg.e = vec!["1".into(), "2".into()];
    if run_command(&cfg).status != 3 {
        problems.push("cyclic: check-sandwich does not exit with status 3".into());
    }
    problems
}

/// With `forward`, no Ext from a later vertex to an earlier one; otherwise
/// none from an earlier vertex to a later one. Self-extensions never allowed.
fn ordering_is_valid(a: &A, order: &[String], forward: bool) -> bool {
    let pos: BTreeMap<&str, usize> = order.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let n = a.vertex_count();
    let res: Vec<Resolution<F5>> = (0..n).map(|v| minimal_projective_resolution(&Module::simple(a.clone(), v), SWEEP_BOUND)).collect();
    for (i, ri) in res.iter().enumerate() {
        for j in 0..n {
            let (Some(&pi), Some(&pj)) = (pos.get(a.vertex_names()[i].as_str()), pos.get(a.vertex_names()[j].as_str())) else {
                continue;
            };
            let nonzero = (1..=SWEEP_BOUND).any(|k| ri.multiplicity(k, j) != 0);
            let forbidden = if forward { pj <= pi } else { pi <= pj };
            if nonzero && forbidden {
                return false;
            }
        }
    }
    true
}

fn named(a: &Algebra<F5>, m: &MultiplicityVector) -> BTreeMap<String, usize> {
    a.vertex_names().iter().cloned().zip(m.0.iter().copied()).collect()
}

fn named_terms(a: &Algebra<F5>, terms: &[MultiplicityVector]) -> Vec<BTreeMap<String, usize>> {
    terms.iter().map(|m| named(a, m)).collect()
}

fn permutation_invariant(a: &A, seed: u64) -> Result<(), String> {
    let (file, perm) = shuffle_table(&AlgebraFile::from_algebra(&**a), seed);
    let b = Arc::new(file.build::<F5>().map_err(|e| e.to_string())?);
    let n = a.vertex_count();
    let old_to_new: Vec<usize> = (0..n).map(|old| perm.iter().position(|&p| p == old).expect("permutation")).collect();
    for (v, &nv) in old_to_new.iter().enumerate() {
        let ra = minimal_projective_resolution(&Module::simple(a.clone(), v), DEGREE);
        let rb = minimal_projective_resolution(&Module::simple(b.clone(), nv), DEGREE);
        if named_terms(a, &ra.terms()) != named_terms(&b, &rb.terms()) || ra.status() != rb.status() {
            return Err(format!("resolution of S_{} changed", a.vertex_names()[v]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for e in random_selectors(n, &mut rng) {
        let eb = IdempotentSelector::new(e.vertices().map(|v| old_to_new[v]));
        let ca = gamma_algebra(a, &e).expect("in range");
        let cb = gamma_algebra(&b, &eb).expect("in range");
        for (v, &nv) in old_to_new.iter().enumerate() {
            let ta = induced_resolution(&run_construction(&ca, &Module::projective(a.clone(), v), DEGREE));
            let tb = induced_resolution(&run_construction(&cb, &Module::projective(b.clone(), nv), DEGREE));
            if named_terms(ca.gamma(), &ta.terms()) != named_terms(cb.gamma(), &tb.terms()) || ta.status() != tb.status() {
                return Err(format!("induced resolution of e_{}R changed for {e:?}", a.vertex_names()[v]));
            }
        }
        let verdicts = |c: &GammaContext<F5>, alg: &A, sel: &IdempotentSelector| {
            let ip = check_ip_conjecture(c, DEGREE).ok().map(|r| r.verdict);
            (
                check_sandwich_theorem(c, DEGREE).verdict,
                yoneda_directedness(c, DEGREE).verdict,
                ip,
                m_table_and_property(alg, sel, DEGREE).has_m_property,
                ext_quiver(alg, sel, DEGREE).acyclic,
            )
        };
        let (va, vb) = (verdicts(&ca, a, &e), verdicts(&cb, &b, &eb));
        if va != vb {
            return Err(format!("verdicts changed for {e:?}: {va:?} vs {vb:?}"));
        }
    }
    Ok(())
}
