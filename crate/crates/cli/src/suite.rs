//! The ordered list of checks for one prime, run on a thread pool.

use std::sync::Arc;
use std::time::Instant;

use levelflat::algebra::{phi_column, phi_row, Integers};
use levelflat::km_compare::{
    chai_norman_check, generic_fiber_count, is_stable_mod_p, trace_identity_check, ActionSide,
    KmdIdeals, MAX_FIBER_PRIME, MAX_KMD_PRIME, MAX_TRACE_PRIME,
};
use levelflat::level_ideals::{
    self, division_lemma_check, formulas, random_permutation_pairs, subsets, KeyLemmaOutcome,
    KeyLemmaSide, LevelIdeals, MAX_FLATNESS_PRIME,
};
use levelflat::symmetry::{symmetry_report, MAX_ENUMERATION_PRIME};
use levelflat::{Prime, Result};
use rayon::prelude::*;
use serde_json::json;

use crate::check::CheckResult;
use crate::config::{RunConfig, Suite, FILTRATION_PAIRS, MAX_SUBSPACE_PRIME};

type Task = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync>;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "LEVELFLAT_THREADS";

fn set_label(j: &[usize]) -> String {
    let parts: Vec<String> = j.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn timed(task: &Task) -> Vec<CheckResult> {
    let start = Instant::now();
    let mut out = task();
    let ms = start.elapsed().as_millis() as u64;
    for r in &mut out {
        r.elapsed_ms = ms;
    }
    out
}

/// Runs the selected checks in a fixed order; results come back in that
/// order whatever the number of workers.
pub fn run_suite(config: &RunConfig, suite: Suite) -> Result<Vec<CheckResult>> {
    let p = config.validate()?;
    let tasks = plan(config, p, suite)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            builder = builder.num_threads(n);
        }
    }
    let pool = builder
        .build()
        .map_err(|e| levelflat::Error::OutOfRange(format!("thread pool: {e}")))?;
    let groups: Vec<Vec<CheckResult>> = pool.install(|| tasks.par_iter().map(timed).collect());
    Ok(groups.into_iter().flatten().collect())
}

fn plan(config: &RunConfig, p: Prime, suite: Suite) -> Result<Vec<Task>> {
    let mut tasks = Vec::new();
    let want = |s: Suite| suite == Suite::All || suite == s;
    let needs_ctx = matches!(suite, Suite::All | Suite::Dims | Suite::Intersections);
    let ctx = if needs_ctx && p.get() <= MAX_SUBSPACE_PRIME {
        Some(Arc::new(LevelIdeals::new(p)?))
    } else {
        None
    };
    if want(Suite::Symmetry) {
        symmetry_tasks(p, &mut tasks);
    }
    if want(Suite::Dims) {
        dims_tasks(config, p, ctx.clone(), &mut tasks);
    }
    if want(Suite::Intersections) {
        intersection_tasks(config, p, ctx.clone(), &mut tasks);
    }
    if want(Suite::Division) {
        division_tasks(p, &mut tasks);
    }
    if want(Suite::Dims) {
        filtration_tasks(config, p, ctx.clone(), &mut tasks);
    }
    if want(Suite::Flatness) {
        tasks.push(flatness_task(p, config.aux_primes.clone()));
        tasks.push(fiber_task(p));
    }
    if want(Suite::Kmd) {
        tasks.push(trace_task(p));
        tasks.push(kmd_task(p, config.long_tests));
    }
    Ok(tasks)
}

fn too_large(id: &str, p: Prime, max: u32) -> Task {
    let id = id.to_string();
    Box::new(move || {
        vec![CheckResult::skipped(id.clone(), p.get(), json!({}), format!("only run for p <= {max}"))]
    })
}

fn symmetry_tasks(p: Prime, tasks: &mut Vec<Task>) {
    if p.get() > MAX_ENUMERATION_PRIME {
        tasks.push(too_large("symmetry", p, MAX_ENUMERATION_PRIME));
        return;
    }
    tasks.push(Box::new(move || match symmetry_report(p) {
        Ok(r) => {
            let params = json!({"elements_tested": r.elements_tested, "exhaustive": r.exhaustive});
            r.checks()
                .into_iter()
                .map(|(name, ok)| CheckResult::compare(format!("symmetry.{name}"), p.get(), params.clone(), true, ok))
                .collect()
        }
        Err(e) => vec![CheckResult::errored("symmetry", p.get(), json!({}), e)],
    }));
}

fn dims_tasks(config: &RunConfig, p: Prime, ctx: Option<Arc<LevelIdeals>>, tasks: &mut Vec<Task>) {
    let Some(ctx) = ctx else {
        tasks.push(too_large("dims", p, MAX_SUBSPACE_PRIME));
        return;
    };
    let q = p.get();
    {
        let ctx = ctx.clone();
        tasks.push(Box::new(move || {
            vec![CheckResult::compare(
                "dims.ideal",
                q,
                json!({}),
                formulas::ideal_dim(q),
                ctx.span_i().dim(),
            )]
        }));
    }
    for j in subsets(p.as_usize() + 1, config.subset_policy) {
        let ctx = ctx.clone();
        tasks.push(Box::new(move || {
            let label = set_label(&j);
            let params = json!({"J": j, "k": j.len()});
            match ctx.dim_formula_check(&j) {
                Ok(r) => vec![
                    CheckResult::compare(
                        format!("dims.single[J={label}]"),
                        q,
                        params.clone(),
                        json!({"C(J)": r.expected_single, "R(J)": r.expected_single}),
                        json!({"C(J)": r.dim_c, "R(J)": r.dim_r}),
                    ),
                    CheckResult::compare(
                        format!("dims.mixed[J={label}]"),
                        q,
                        params.clone(),
                        json!({"C+R(J)": r.expected_mixed, "C(J)+R": r.expected_mixed}),
                        json!({"C+R(J)": r.dim_c_plus_rj, "C(J)+R": r.dim_cj_plus_r}),
                    ),
                    CheckResult::compare(format!("dims.iota[J={label}]"), q, params, true, r.iota_swaps),
                ],
                Err(e) => vec![CheckResult::errored(format!("dims[J={label}]"), q, params, e)],
            }
        }));
    }
}

fn intersection_tasks(config: &RunConfig, p: Prime, ctx: Option<Arc<LevelIdeals>>, tasks: &mut Vec<Task>) {
    let Some(ctx) = ctx else {
        tasks.push(too_large("intersections", p, MAX_SUBSPACE_PRIME));
        return;
    };
    let q = p.get();
    for j in subsets(p.as_usize(), config.subset_policy) {
        let ctx = ctx.clone();
        tasks.push(Box::new(move || {
            let label = set_label(&j);
            let params = json!({"J": j, "k": j.len()});
            if j.is_empty() {
                return vec![CheckResult::skipped(
                    format!("intersections[J={label}]"),
                    q,
                    params,
                    "the bounds are stated for 1 <= |J| <= p",
                )];
            }
            match ctx.intersection_check(&j) {
                Ok(r) => {
                    let side = |name: &str, s: &level_ideals::IntersectionSide| {
                        let mut params = params.clone();
                        params["degree"] = json!(s.degree);
                        CheckResult::compare(
                            format!("intersections.{name}[J={label}]"),
                            q,
                            params,
                            json!({"contained": true, "dim": s.expected_dim}),
                            json!({"contained": s.contained, "dim": s.dim}),
                        )
                    };
                    vec![side("column", &r.column), side("row", &r.row)]
                }
                Err(e) => vec![CheckResult::errored(format!("intersections[J={label}]"), q, params, e)],
            }
        }));
    }
    // induction steps at J' ⊆ {1, ..., p-1}
    for jp in subsets(p.as_usize() - 1, config.subset_policy) {
        let jp: Vec<usize> = jp.into_iter().map(|x| x + 1).collect();
        let ctx = ctx.clone();
        tasks.push(Box::new(move || {
            let label = set_label(&jp);
            [KeyLemmaSide::Column, KeyLemmaSide::Mirrored, KeyLemmaSide::Row]
                .into_iter()
                .map(|side| {
                    let id = format!("key_lemma.{}[J'={label}]", json!(side).as_str().unwrap_or("?"));
                    let params = json!({"J'": jp, "side": side});
                    match ctx.key_lemma_instance_check(&jp, side) {
                        Ok(KeyLemmaOutcome::Vacuous) => {
                            CheckResult::skipped(id, q, params, "hypothesis does not hold")
                        }
                        Ok(outcome) => CheckResult::compare(id, q, params, KeyLemmaOutcome::Holds, outcome),
                        Err(e) => CheckResult::errored(id, q, params, e),
                    }
                })
                .collect()
        }));
    }
}

fn division_tasks(p: Prime, tasks: &mut Vec<Task>) {
    if p.get() > MAX_SUBSPACE_PRIME {
        tasks.push(too_large("division", p, MAX_SUBSPACE_PRIME));
        return;
    }
    for d in 1..=2 * p.as_usize() + 3 {
        tasks.push(Box::new(move || {
            let id = format!("division[d={d}]");
            let params = json!({"d": d});
            match division_lemma_check(p, d) {
                Ok(r) => vec![CheckResult::compare(
                    id,
                    p.get(),
                    params,
                    json!({"dim": r.power_dim, "equal": true}),
                    json!({"dim": r.annihilator_dim, "equal": r.equal}),
                )],
                Err(e) => vec![CheckResult::errored(id, p.get(), params, e)],
            }
        }));
    }
}

fn filtration_tasks(config: &RunConfig, p: Prime, ctx: Option<Arc<LevelIdeals>>, tasks: &mut Vec<Task>) {
    let Some(ctx) = ctx else {
        tasks.push(too_large("filtration", p, MAX_SUBSPACE_PRIME));
        return;
    };
    let q = p.get();
    for (i, (sigma, tau)) in random_permutation_pairs(p.as_usize() + 1, FILTRATION_PAIRS, config.seed)
        .into_iter()
        .enumerate()
    {
        let ctx = ctx.clone();
        tasks.push(Box::new(move || {
            let id = format!("filtration[{i}]");
            let params = json!({"sigma": sigma, "tau": tau});
            match ctx.filtration_dims(&sigma, &tau) {
                Ok(r) => vec![CheckResult::compare(
                    id,
                    q,
                    params,
                    json!({"graded": r.expected, "total": formulas::ideal_dim(q)}),
                    json!({"graded": r.graded, "total": r.total}),
                )],
                Err(e) => vec![CheckResult::errored(id, q, params, e)],
            }
        }));
    }
}

/// `r_p`, `r_Q` and the flatness verdict as one result.
pub fn flatness_certificate(p: Prime, aux_primes: &[u64]) -> CheckResult {
    let q = p.get();
    if q > MAX_FLATNESS_PRIME {
        return CheckResult::skipped("flatness", q, json!({}), format!("only run for p <= {MAX_FLATNESS_PRIME}"));
    }
    match level_ideals::flatness_certificate(p, aux_primes) {
        Ok(c) => {
            let params = json!({"method": c.method, "aux_ranks": c.aux_ranks});
            let expected = json!({
                "r_p": c.expected,
                "r_q": c.expected,
                "generic_rank": c.gl2_order,
                "aux_consensus": true,
            });
            let actual = json!({
                "r_p": c.r_p,
                "r_q": c.r_q,
                "generic_rank": c.generic_rank,
                "aux_consensus": c.aux_consensus(),
            });
            let r = CheckResult::compare("flatness", q, params, expected, actual);
            match c.method {
                level_ideals::RankMethod::Probabilistic => r.with_note("probabilistic: multi-modular consensus"),
                level_ideals::RankMethod::Exact => r,
            }
        }
        Err(e) => CheckResult::errored("flatness", q, json!({}), e),
    }
}

fn flatness_task(p: Prime, aux: Vec<u64>) -> Task {
    Box::new(move || vec![flatness_certificate(p, &aux)])
}

fn fiber_task(p: Prime) -> Task {
    Box::new(move || {
        let q = p.get();
        if q > MAX_FIBER_PRIME {
            return vec![CheckResult::skipped("generic_fiber", q, json!({}), format!("only run for p <= {MAX_FIBER_PRIME}"))];
        }
        match generic_fiber_count(p) {
            Ok(n) => vec![CheckResult::compare("generic_fiber", q, json!({}), formulas::gl2_order(q), n)],
            Err(e) => vec![CheckResult::errored("generic_fiber", q, json!({}), e)],
        }
    })
}

fn trace_task(p: Prime) -> Task {
    Box::new(move || {
        let q = p.get();
        if q > MAX_TRACE_PRIME {
            return vec![CheckResult::skipped("trace", q, json!({}), format!("only run for p <= {MAX_TRACE_PRIME}"))];
        }
        match trace_identity_check(p) {
            Ok(r) => vec![
                CheckResult::compare("trace.tr_x", q, json!({}), 0, r.trace_x_on_b),
                CheckResult::compare("trace.pullback_x", q, json!({}), true, r.x_matches),
                CheckResult::compare("trace.pullback_y", q, json!({}), true, r.y_matches),
            ],
            Err(e) => vec![CheckResult::errored("trace", q, json!({}), e)],
        }
    })
}

fn kmd_task(p: Prime, long: bool) -> Task {
    Box::new(move || {
        let q = p.get();
        if q > MAX_KMD_PRIME {
            return vec![CheckResult::skipped("kmd", q, json!({}), format!("only run for p <= {MAX_KMD_PRIME}"))];
        }
        if q > 2 && !long {
            return vec![CheckResult::skipped("kmd", q, json!({}), "p = 3 needs --long")];
        }
        match kmd_checks(p) {
            Ok(v) => v,
            Err(e) => vec![CheckResult::errored("kmd", q, json!({}), e)],
        }
    })
}

fn kmd_checks(p: Prime) -> Result<Vec<CheckResult>> {
    let q = p.get();
    let ideals = KmdIdeals::build(p)?;
    let cmp = ideals.compare_with_full()?;
    let none = || json!({});
    let n = p.as_usize() + 1;
    let su = phi_column(p, Integers, (1, 0))?;
    let st = phi_row(p, Integers, (1, 0))?;
    let cn = chai_norman_check(&ideals.times)?;
    let p4 = p.ambient_dim() as i64;
    let mut out = vec![
        CheckResult::compare("kmd.trace_element_in_times", q, none(), true, ideals.times.contains(&su)),
        CheckResult::compare("kmd.dual_trace_element_in_dual", q, none(), true, ideals.dual.contains(&st)),
        CheckResult::compare("kmd.inclusion", q, none(), vec![true; 2 * n], &cmp.generators_in_kmd),
        CheckResult::compare("kmd.lattices_equal", q, none(), true, cmp.lattices_equal),
        CheckResult::compare(
            "kmd.rank",
            q,
            none(),
            json!({"full": formulas::ideal_dim(q), "kmd": formulas::ideal_dim(q)}),
            json!({"full": cmp.rank_full, "kmd": cmp.rank_kmd}),
        ),
        CheckResult::compare(
            "kmd.dim_mod_p",
            q,
            none(),
            json!({"full": formulas::ideal_dim(q), "kmd": formulas::ideal_dim(q)}),
            json!({"full": cmp.dim_mod_p_full, "kmd": cmp.dim_mod_p_kmd}),
        ),
        CheckResult::compare(
            "kmd.dual_dim_mod_p",
            q,
            none(),
            ideals.times.mod_p().dim(),
            ideals.dual.mod_p().dim(),
        ),
    ];
    for (name, side) in [("left", ActionSide::Left), ("right", ActionSide::Right)] {
        out.push(CheckResult::compare(
            format!("kmd.stable_{name}"),
            q,
            none(),
            true,
            is_stable_mod_p(&ideals.combined, side)?,
        ));
    }
    out.push(CheckResult::observation(
        "kmd.times_stable_right",
        q,
        none(),
        is_stable_mod_p(&ideals.times, ActionSide::Right)?,
    ));
    out.push(CheckResult::observation(
        "kmd.columns_equal_times",
        q,
        none(),
        json!({"over_z": cmp.columns_equal_times, "mod_p": cmp.columns_equal_times_mod_p}),
    ));
    out.push(CheckResult::observation(
        "kmd.rows_equal_dual",
        q,
        none(),
        json!({"over_z": cmp.rows_equal_dual, "mod_p": cmp.rows_equal_dual_mod_p}),
    ));
    out.push(CheckResult::compare(
        "kmd.chai_norman",
        q,
        none(),
        json!({
            "mod_p_fiber_dim": p4 - formulas::column_sum_dim(q, n),
            "rational_fiber_dim": formulas::gl2_order(q),
            "not_flat": true,
        }),
        json!({
            "mod_p_fiber_dim": cn.mod_p_fiber_dim,
            "rational_fiber_dim": cn.rational_fiber_dim,
            "not_flat": cn.not_flat(),
        }),
    ));
    Ok(out)
}
