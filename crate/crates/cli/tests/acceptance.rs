//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use stringc_core::coset::{enumerate, EnumerationLimits};
use stringc_core::families::{
    build_degenerate, build_type1, build_type2, build_type44, Family, Type2Params,
};
use stringc_core::perm::{derived_series, subgroup_elements, ElementSet};
use stringc_core::sggi::{check_intersection_property, intersection_property_shortcut, SggiGroup};
use stringc_core::verify::{
    divisibility_reports, verify_cor52, verify_prop21, verify_prop23, verify_subgroup_structure,
    verify_theorem4, verify_theorem5, ClaimReport, Grid,
};
use stringc_core::{Permutation, PermutationGroup, Presentation};

struct Outcome {
    ok: bool,
    detail: String,
}

fn timed<F: FnOnce() -> Outcome>(f: F, budget: Duration) -> (Outcome, Duration) {
    let t = Instant::now();
    let mut out = f();
    let el = t.elapsed();
    if el > budget {
        out.ok = false;
        out.detail = format!("{}; over budget {:?}", out.detail, budget);
    }
    (out, el)
}

fn all_pass(reports: &[ClaimReport]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} {} observed {}", r.claim, r.params, r.observed))
        .collect();
    Outcome {
        ok: failed.is_empty() && !reports.is_empty(),
        detail: if failed.is_empty() {
            format!("{} reports", reports.len())
        } else {
            format!(
                "{} of {} failed: {}",
                failed.len(),
                reports.len(),
                failed.join("; ")
            )
        },
    }
}

fn observed_u64(r: &ClaimReport, key: &str) -> Option<u64> {
    r.observed.get(key).and_then(|v| v.as_u64())
}

fn observed_pair(r: &ClaimReport) -> Option<(u64, u64)> {
    let k = r.observed.get("schlafli")?.as_array()?;
    Some((k.first()?.as_u64()?, k.get(1)?.as_u64()?))
}

fn brute_derived(degree: usize, set: &ElementSet) -> ElementSet {
    let elems: Vec<&Permutation> = set.iter().collect();
    let mut comms = HashSet::new();
    for a in &elems {
        for b in &elems {
            comms.insert(a.commutator(b));
        }
    }
    let gens: Vec<Permutation> = comms.into_iter().collect();
    subgroup_elements(degree, &gens, usize::MAX).expect("uncapped")
}

/// Stabilizer chain vs element count, full vs shortcut intersection check,
/// derived series vs commutator closure.
fn oracle_check(name: &str, p: &Presentation, limits: EnumerationLimits) -> Result<(), String> {
    let t = enumerate(p, &[], limits).map_err(|e| format!("{name}: {e}"))?;
    let (n, gens) = (t.n_live(), t.coset_action());
    let g = PermutationGroup::new(n, gens.clone()).map_err(|e| e.to_string())?;
    let mut set = subgroup_elements(n, &gens, usize::MAX).map_err(|e| e.to_string())?;
    if g.order() != set.len() as u128 {
        return Err(format!("{name}: chain {} vs bfs {}", g.order(), set.len()));
    }
    let s = SggiGroup::from_presentation_default(p, limits).map_err(|e| e.to_string())?;
    let full = check_intersection_property(&s).map_err(|e| e.to_string())?;
    let short = intersection_property_shortcut(&s).map_err(|e| e.to_string())?;
    if full != short {
        return Err(format!(
            "{name}: intersection check {full} vs shortcut {short}"
        ));
    }
    let fast: Vec<u128> = derived_series(&g).iter().map(|h| h.order()).collect();
    let mut brute = vec![set.len() as u128];
    while set.len() > 1 {
        let next = brute_derived(n, &set);
        if next.len() == set.len() {
            break;
        }
        brute.push(next.len() as u128);
        set = next;
    }
    if fast != brute {
        return Err(format!("{name}: derived series {fast:?} vs {brute:?}"));
    }
    Ok(())
}

fn strip_elapsed(jsonl: &str) -> Vec<String> {
    jsonl
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).expect("json line");
            v.as_object_mut().expect("object").remove("elapsed_ms");
            v.to_string()
        })
        .collect()
}

fn verify_all_run(dir: &std::path::Path, tag: &str) -> Result<Vec<String>, String> {
    let path = dir.join(format!("{tag}.jsonl"));
    let status = Command::new(env!("CARGO_BIN_EXE_stringc"))
        .args(["verify", "all", "--jobs", "4", "--jsonl"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?
        .status;
    if !status.success() {
        return Err(format!("verify all exited with {status}"));
    }
    Ok(strip_elapsed(
        &std::fs::read_to_string(&path).map_err(|e| e.to_string())?,
    ))
}

fn main() {
    let limits = EnumerationLimits::default();
    let grid = Grid::default();
    let mut corpus: Vec<ClaimReport> = Vec::new();
    let mut results: Vec<(u32, &str, Outcome, Duration)> = Vec::new();

    let (o, d) = timed(
        || {
            let r = verify_prop21(&grid.ks, limits).expect("grid");
            let mut out = all_pass(&r);
            let orders_ok = r
                .iter()
                .all(|x| observed_u64(x, "order") == Some(4 * x.params["k"].as_u64().unwrap_or(0)));
            out.ok &= orders_ok && r.len() == 30;
            corpus.extend(r);
            out
        },
        Duration::from_secs(5),
    );
    results.push((1, "degenerate orders 4k", o, d));

    let (o, d) = timed(
        || {
            let r = verify_prop23(&grid.bs, limits).expect("grid");
            let mut out = all_pass(&r);
            out.ok &= r.len() == 10
                && r.iter().all(|x| {
                    let b = x.params["b"].as_u64().unwrap_or(0);
                    let want = if x.params["variant"] == 1 {
                        8 * b * b
                    } else {
                        16 * b * b
                    };
                    observed_u64(x, "order") == Some(want)
                        && observed_pair(x) == Some((4, 4))
                        && x.certificate.as_ref().is_some_and(|c| c.intersection_ok)
                });
            corpus.extend(r);
            out
        },
        Duration::from_secs(10),
    );
    results.push((2, "type {4,4} orders 8b^2 and 16b^2", o, d));

    let (o, d) = timed(
        || {
            let r = verify_theorem4(&grid.type1, limits).expect("grid");
            let mut out = all_pass(&r);
            out.ok &= r.len() == grid.type1.len()
                && r.iter().zip(&grid.type1).all(|(x, tp)| {
                    let c = x.certificate.as_ref();
                    let g1 = observed_u64(x, "g1_order").unwrap_or(0);
                    let g2 = observed_u64(x, "g2_order").unwrap_or(0);
                    let s_part = (1u64 << (tp.s - 2)) * tp.l1 as u64;
                    let t_part = (1u64 << (tp.t - 2)) * tp.l2 as u64;
                    observed_u64(x, "order") == Some(tp.expected_order())
                        && observed_pair(x) == Some((tp.k1(), tp.k2()))
                        && c.is_some_and(|c| c.intersection_ok && c.solvable)
                        && tp.expected_order() == g1 * s_part
                        && g1 == g2 * t_part
                        && g2 == 1u64 << (tp.n - tp.s - tp.t + 4)
                });
            corpus.extend(r);
            out
        },
        Duration::from_secs(600),
    );
    results.push((3, "type-(1) family and quotient chain", o, d));

    let (o, d) = timed(
        || {
            let r = verify_theorem5(&grid.type2, limits).expect("grid");
            let mut out = all_pass(&r);
            let orders: Vec<u64> = r.iter().filter_map(|x| observed_u64(x, "order")).collect();
            out.ok &= orders == [192, 384, 768, 1536, 3072, 6144, 5184]
                && r.iter().all(|x| {
                    observed_pair(x) == Some((6, 6))
                        && x.certificate.as_ref().is_some_and(|c| c.solvable)
                });
            out.detail = format!("{}; orders {orders:?}", out.detail);
            corpus.extend(r);
            out
        },
        Duration::from_secs(900),
    );
    results.push((4, "type-(2) families of type {6,6}", o, d));

    let (o, d) = timed(
        || {
            let r = verify_subgroup_structure(&Family::ALL, limits);
            let mut out = all_pass(&r);
            let idx: Vec<u64> = r.iter().filter_map(|x| observed_u64(x, "index")).collect();
            out.ok &= idx == [192, 384, 768]
                && r.iter().all(|x| {
                    x.observed["normal"] == true
                        && observed_u64(x, "free_rank") == Some(3)
                        && x.observed["torsion"]
                            .as_array()
                            .is_some_and(|t| t.is_empty())
                });
            out.detail = format!("{}; indices {idx:?}", out.detail);
            out
        },
        Duration::from_secs(300),
    );
    results.push((5, "normal subgroups free abelian of rank 3", o, d));

    let (o, d) = timed(
        || {
            let r = divisibility_reports(&corpus);
            let mut out = all_pass(&r);
            let type2 = r.iter().filter(|x| x.params["class"] == 2).count();
            out.detail = format!(
                "{}; {} with one entry divisible, {type2} with both",
                out.detail,
                r.len() - type2
            );
            out
        },
        Duration::from_secs(60),
    );
    results.push((6, "odd prime divides a Schlafli entry", o, d));

    let (o, d) = timed(
        || {
            let r = verify_cor52(&[6, 7, 8, 9], limits).expect("n >= 6");
            let mut out = all_pass(&r);
            out.ok &= r.len() == 4
                && r.iter().all(|x| {
                    let n = x.params["n"].as_u64().unwrap_or(0);
                    observed_u64(x, "order") == Some(3 << n)
                        && observed_pair(x) == Some((6, 6))
                        && x.certificate
                            .as_ref()
                            .is_some_and(|c| c.is_string_c_group())
                });
            out
        },
        Duration::from_secs(300),
    );
    results.push((7, "order 3*2^n type {6,6} for n = 6..9", o, d));

    let (o, d) = timed(
        || {
            let mut cases: Vec<(String, Presentation)> = Vec::new();
            for &k in &grid.ks {
                for v in [1, 2] {
                    cases.push((format!("L{v} k={k}"), build_degenerate(k, v).expect("grid")));
                }
            }
            for &b in &grid.bs {
                for (v, order) in [(1, 8 * b * b), (2, 16 * b * b)] {
                    if order <= 200 {
                        cases.push((format!("M{v} b={b}"), build_type44(b, v).expect("grid")));
                    }
                }
            }
            for tp in grid.type1.iter().filter(|tp| tp.expected_order() <= 200) {
                cases.push((tp.to_string(), build_type1(tp).expect("grid")));
            }
            for tp in grid.type2.iter().filter(|tp| tp.expected_order() <= 200) {
                let p =
                    build_type2(&Type2Params::new(tp.family, tp.m).expect("grid")).expect("grid");
                cases.push((format!("{} m={}", tp.family, tp.m), p));
            }
            let errors: Vec<String> = cases
                .iter()
                .filter_map(|(n, p)| oracle_check(n, p, limits).err())
                .collect();
            Outcome {
                ok: errors.is_empty(),
                detail: if errors.is_empty() {
                    format!("{} groups", cases.len())
                } else {
                    errors.join("; ")
                },
            }
        },
        Duration::from_secs(600),
    );
    results.push((8, "oracle equivalence on groups of order <= 200", o, d));

    let (o, d) = timed(
        || {
            let dir =
                std::env::temp_dir().join(format!("stringc-acceptance-{}", std::process::id()));
            let _ = std::fs::create_dir_all(&dir);
            let out = match (verify_all_run(&dir, "a"), verify_all_run(&dir, "b")) {
                (Ok(a), Ok(b)) => Outcome {
                    ok: a == b && !a.is_empty(),
                    detail: format!("{} records, identical: {}", a.len(), a == b),
                },
                (Err(e), _) | (_, Err(e)) => Outcome {
                    ok: false,
                    detail: e,
                },
            };
            let _ = std::fs::remove_dir_all(&dir);
            out
        },
        Duration::from_secs(1800),
    );
    results.push((9, "deterministic verify all output", o, d));

    let mut failed = 0;
    for (n, what, o, d) in &results {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {n} {tag}: {what} ({}; {:.2} s)",
            o.detail,
            d.as_secs_f64()
        );
        failed += usize::from(!o.ok);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
