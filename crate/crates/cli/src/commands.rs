use std::sync::Arc;

use idemres::{
    check_ip_conjecture, check_sandwich_theorem, ext_dims_hom_complex, ext_dims_shortcut, ext_quiver, gamma_algebra, generate_corpus,
    global_dimension, induced_resolution, m_table_and_property, minimal_projective_resolution, oracle_compare, run_construction,
    tor_dims, verify_minimal_resolution, yoneda_directedness, Algebra, Certainty, CheckerReport, CorpusLimits, FieldSpec,
    GammaContext, IdempotentSelector, Module, Resolution, Scalar, F5,
};
use serde_json::{json, Value};

use crate::{Command, Report, RunConfig};

type CommandResult = Result<(Report, i32), String>;

fn certainty_exit(c: Certainty) -> i32 {
    match c {
        Certainty::Holds => 0,
        Certainty::Fails => 1,
        Certainty::Unknown => 3,
    }
}

fn vertex_index<T: Scalar>(algebra: &Algebra<T>, name: &str) -> Result<usize, String> {
    algebra.vertex_names().iter().position(|v| v == name).ok_or_else(|| {
        format!("vertex `{name}` is out of range; the vertices are {}", algebra.vertex_names().join(" "))
    })
}

fn selector<T: Scalar>(algebra: &Algebra<T>, names: &[String]) -> Result<IdempotentSelector, String> {
    names.iter().map(|n| vertex_index(algebra, n)).collect::<Result<Vec<_>, _>>().map(IdempotentSelector::new)
}

/// Parses `e_vR`, `S_v`, `R` and sums of these joined by `+` or `⊕`.
pub(crate) fn parse_module<T: Scalar>(algebra: &Arc<Algebra<T>>, spec: &str) -> Result<Module<T>, String> {
    let mut parts = Vec::new();
    for raw in spec.split(['+', '⊕']) {
        let s = raw.trim();
        let m = if s == "R" {
            Module::regular(algebra.clone())
        } else if let Some(v) = s.strip_prefix("e_").and_then(|r| r.strip_suffix('R')) {
            Module::projective(algebra.clone(), vertex_index(algebra, v)?)
        } else if let Some(v) = s.strip_prefix("S_") {
            Module::simple(algebra.clone(), vertex_index(algebra, v)?)
        } else {
            return Err(format!("cannot read module `{s}`; expected e_<v>R, S_<v> or R"));
        };
        parts.push(m);
    }
    Ok(Module::direct_sum_over(algebra.clone(), &parts).map_err(|e| e.to_string())?.sum)
}

fn require<'a>(value: &'a Option<String>, what: &str) -> Result<&'a str, String> {
    value.as_deref().ok_or_else(|| format!("this command needs --{what}"))
}

fn names<T: Scalar>(algebra: &Algebra<T>, vertices: impl IntoIterator<Item = usize>) -> Vec<String> {
    vertices.into_iter().map(|v| algebra.vertex_names()[v].clone()).collect()
}

fn header<T: Scalar>(report: &mut Report, algebra: &Algebra<T>, e: &IdempotentSelector, bound: usize) {
    report.push(
        "algebra",
        json!({
            "field": T::field().to_string(),
            "vertices": algebra.vertex_names(),
            "dim": algebra.dim(),
            "e": names(algebra, e.vertices()),
            "bound": bound,
        }),
    );
}

fn push_resolution<T: Scalar>(report: &mut Report, res: &Resolution<T>) {
    for (k, m) in res.terms().iter().enumerate() {
        report.push("term", json!({"degree": k, "multiplicities": m.0}));
    }
    report.push("status", json!({"value": res.status().to_string()}));
}

fn verification(result: &Result<(), String>) -> Value {
    match result {
        Ok(()) => json!("pass"),
        Err(e) => json!(format!("fail: {e}")),
    }
}

fn push_checker(report: &mut Report, r: &CheckerReport) -> i32 {
    for h in &r.hypotheses {
        report.push("hypothesis", json!({"name": h.name, "status": h.status.to_string(), "witness": h.witness}));
    }
    let c = &r.conclusion;
    report.push("conclusion", json!({"name": c.name, "status": c.status.to_string(), "witness": c.witness}));
    let mut v = json!({"checker": r.checker, "verdict": r.verdict.to_string()});
    if let Some(o) = &r.ordering {
        v["ordering"] = json!(o);
    }
    if let Some(cy) = &r.cycle {
        v["cycle"] = json!(cy);
    }
    if let Some(g) = &r.graded_dims {
        v["graded_dims"] = json!(g);
    }
    report.push("verdict", v);
    r.verdict.exit_code()
}

pub(crate) fn run<T: Scalar>(config: &RunConfig, algebra: Algebra<T>) -> CommandResult {
    let a = Arc::new(algebra);
    let bound = config.bound;
    let e = selector(&a, &config.e)?;
    let ctx = gamma_algebra(&a, &e).map_err(|err| err.to_string())?;
    let mut report = Report::new();
    header(&mut report, &a, &e, bound);
    let status = match config.command {
        Command::Resolve => {
            let m = parse_module(&a, require(&config.module, "module")?)?;
            let (res, over) = if e.is_empty() {
                (minimal_projective_resolution(&m, bound), a.clone())
            } else {
                (minimal_projective_resolution(&ctx.apply_fe(&m), bound), ctx.gamma().clone())
            };
            report.push("resolution", json!({"over": if e.is_empty() { "R" } else { "Gamma_e" }, "vertices": over.vertex_names()}));
            push_resolution(&mut report, &res);
            let check = verify_minimal_resolution(&res);
            report.push("verify", json!({"result": verification(&check)}));
            i32::from(check.is_err())
        }
        Command::Construct => construct(&mut report, &ctx, &parse_module(&a, require(&config.module, "module")?)?, bound),
        Command::OracleCompare => {
            let omega0 = parse_module(&a, require(&config.module, "module")?)?;
            let trace = run_construction(&ctx, &omega0, bound);
            let cmp = oracle_compare(&trace);
            report.push("oracle_compare", json!({"result": verification(&cmp), "status": trace.status.to_string()}));
            i32::from(cmp.is_err())
        }
        Command::Ext => {
            let m = parse_module(&a, require(&config.module, "module")?)?;
            let n = parse_module(&a, require(&config.target, "target")?)?;
            let (m, n) = if e.is_empty() { (m, n) } else { (ctx.apply_fe(&m), ctx.apply_fe(&n)) };
            let res = minimal_projective_resolution(&m, bound + 1);
            let hom = ext_dims_hom_complex(&res, &n, bound).map_err(|err| err.to_string())?;
            for (k, d) in hom.dims.iter().enumerate() {
                report.push("ext", json!({"degree": k, "dim": d}));
            }
            report.push("m", json!({"value": hom.m_value().to_string()}));
            let mut status = 0;
            if n.is_semisimple() {
                let short = ext_dims_shortcut(&res, &n, bound).map_err(|err| err.to_string())?;
                let agree = short.dims == hom.dims;
                report.push("shortcut", json!({"agrees": agree, "dims": short.dims}));
                status = i32::from(!agree);
            }
            status
        }
        Command::Tor => {
            let omega0 = parse_module(&a, require(&config.module, "module")?)?;
            let tor = tor_dims(&ctx, &ctx.apply_fe(&omega0), bound);
            for (k, d) in tor.dims.iter().enumerate() {
                report.push("tor", json!({"degree": k, "dims": d}));
            }
            let trace = run_construction(&ctx, &omega0, bound);
            let cmp = tor.matches_trace(&trace, bound);
            report.push("cross_check", json!({"result": verification(&cmp), "against": "X_(i+1)"}));
            i32::from(cmp.is_err())
        }
        Command::MTable => {
            let t = m_table_and_property(&a, &e, bound);
            for (i, row) in t.table.iter().enumerate() {
                let values: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                report.push("m_row", json!({"row": a.vertex_names()[t.vertices[i]], "values": values}));
            }
            let duals: Vec<Option<String>> =
                t.duals.iter().map(|d| d.map(|j| a.vertex_names()[t.vertices[j]].clone())).collect();
            report.push("m_property", json!({"status": t.has_m_property.to_string(), "duals": duals}));
            certainty_exit(t.has_m_property)
        }
        Command::ExtQuiver => {
            let q = ext_quiver(&a, &e, bound);
            let name = |v: usize| a.vertex_names()[v].clone();
            for &(i, j) in &q.definite {
                report.push("arrow", json!({"from": name(i), "to": name(j), "kind": "definite"}));
            }
            for &(i, j) in &q.tentative {
                report.push("arrow", json!({"from": name(i), "to": name(j), "kind": "tentative"}));
            }
            let mut v = json!({"acyclic": q.acyclic.to_string()});
            if let Some(l) = &q.labeling {
                v["labeling"] = json!(names(&a, l.iter().copied()));
            }
            if let Some(c) = &q.cycle {
                v["cycle"] = json!(names(&a, c.iter().copied()));
            }
            report.push("ext_quiver", v);
            certainty_exit(q.acyclic)
        }
        Command::CheckIp => {
            let r = check_ip_conjecture(&ctx, bound).map_err(|err| err.to_string())?;
            push_checker(&mut report, &r)
        }
        Command::CheckSandwich => push_checker(&mut report, &check_sandwich_theorem(&ctx, bound)),
        Command::Yoneda => push_checker(&mut report, &yoneda_directedness(&ctx, bound)),
        Command::Gldim => {
            let g = global_dimension(&a, bound);
            report.push("gldim", json!({"value": g.to_string()}));
            if g.is_definite() {
                0
            } else {
                3
            }
        }
        Command::Corpus | Command::Sweep => unreachable!("handled without an algebra"),
    };
    Ok((report, status))
}

fn construct<T: Scalar>(report: &mut Report, ctx: &GammaContext<T>, omega0: &Module<T>, bound: usize) -> i32 {
    let trace = run_construction(ctx, omega0, bound);
    let e = ctx.selector();
    let mut invariants_ok = true;
    for i in 0..trace.x.len() {
        let top_k = trace.k[i].top_multiplicities();
        let support_ok = e.vertices().all(|v| top_k.0[v] == 0);
        let conservation = trace.omega[i].total_dim() == trace.x[i].total_dim() + trace.k[i].total_dim();
        let mut v = json!({
            "i": i,
            "omega": trace.omega[i].dims(),
            "x": trace.x[i].dims(),
            "k": trace.k[i].dims(),
            "top_k_avoids_e": support_ok,
            "conservation": conservation,
        });
        if let Some(p) = trace.p_terms().get(i) {
            let p_ok = e.vertices().all(|u| p.0[u] == 0);
            v["p"] = json!(p.0);
            v["p_avoids_e"] = json!(p_ok);
            invariants_ok &= p_ok;
        }
        invariants_ok &= support_ok && conservation;
        report.push("step", v);
    }
    report.push("trace", json!({"status": trace.status.to_string(), "steps": trace.x.len()}));
    let res = induced_resolution(&trace);
    report.push("resolution", json!({"over": "Gamma_e", "vertices": ctx.gamma().vertex_names()}));
    push_resolution(report, &res);
    let verify = verify_minimal_resolution(&res);
    let cmp = oracle_compare(&trace);
    report.push(
        "checks",
        json!({"invariants": invariants_ok, "verify": verification(&verify), "oracle_compare": verification(&cmp)}),
    );
    i32::from(!(invariants_ok && verify.is_ok() && cmp.is_ok()))
}

pub(crate) fn corpus_command(config: &RunConfig, field: FieldSpec) -> CommandResult {
    let limits = CorpusLimits { field, ..CorpusLimits::default() };
    let files = generate_corpus(config.seed, config.count, limits);
    let mut report = Report::new();
    match config.command {
        Command::Corpus => {
            for (i, f) in files.iter().enumerate() {
                report.push("case", json!({"index": i, "text": f.to_text()}));
            }
            Ok((report, 0))
        }
        Command::Sweep => {
            if field != FieldSpec::Prime(5) {
                return Err("sweep runs over F5 only".into());
            }
            let jobs = config.jobs.max(1);
            let mut results: Vec<(usize, usize, Vec<String>)> = Vec::with_capacity(files.len());
            std::thread::scope(|s| {
                let handles: Vec<_> = (0..jobs)
                    .map(|j| {
                        let files = &files;
                        s.spawn(move || {
                            (j..files.len()).step_by(jobs).map(|i| (i, sweep_case(&files[i], config.bound))).collect::<Vec<_>>()
                        })
                    })
                    .collect();
                for h in handles {
                    for (i, (checked, failures)) in h.join().expect("sweep worker panicked") {
                        results.push((i, checked, failures));
                    }
                }
            });
            results.sort_by_key(|r| r.0);
            let mut total_failures = 0;
            let mut total_checked = 0;
            for (i, checked, failures) in &results {
                total_checked += checked;
                total_failures += failures.len();
                report.push("case", json!({"index": i, "checked": checked, "failures": failures}));
            }
            report.push("summary", json!({"cases": results.len(), "checked": total_checked, "failures": total_failures}));
            Ok((report, i32::from(total_failures > 0)))
        }
        _ => unreachable!("algebra commands are dispatched by field"),
    }
}

/// Every single-vertex `E` against every indecomposable projective `Ω_0`.
fn sweep_case(file: &idemres::AlgebraFile, bound: usize) -> (usize, Vec<String>) {
    let a = Arc::new(file.build::<F5>().expect("generated files build"));
    let mut checked = 0;
    let mut failures = Vec::new();
    for v in 0..a.vertex_count() {
        let ctx = gamma_algebra(&a, &IdempotentSelector::new([v])).expect("vertex in range");
        for w in 0..a.vertex_count() {
            let trace = run_construction(&ctx, &Module::projective(a.clone(), w), bound);
            checked += 1;
            let verdict = oracle_compare(&trace).and_then(|()| verify_minimal_resolution(&induced_resolution(&trace)));
            if let Err(msg) = verdict {
                failures.push(format!("E={{{}}} omega0=e_{}R: {msg}", a.vertex_names()[v], a.vertex_names()[w]));
            }
        }
    }
    (checked, failures)
}
