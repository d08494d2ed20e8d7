//! Executable checks of the closed-form claims over parameter grids.
//!
//! Every point yields one [`ClaimReport`]; expected values are computed from
//! the formulas at run time and compared for exact equality with what the
//! certification pipeline observes.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::coset::{enumerate, CosetError, EnumerationLimits};
use crate::families::{
    build_degenerate, build_type1, build_type1_chain, build_type2, build_type44, build_u,
    subgroup_generators, Family, FamilyError, Type1Params, Type2Params,
};
use crate::fpcore::Presentation;
use crate::sggi::{certify, Certificate, SggiError};
use crate::snf::abelian_invariants;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("order {0} is not of the form 2^n p with p an odd prime")]
    NotApplicable(u64),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

/// How a point ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Enumeration hit its limits; observed holds the error.
    Limit,
}

/// Expected value with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expected {
    pub value: Value,
    pub provenance: String,
}

/// One verified point. Serializes to the JSON-lines record.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub params: Value,
    pub expected: Expected,
    pub observed: Value,
    pub pass: bool,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub outcome: Outcome,
    /// Certificate of the main group of the point, when one was produced.
    #[serde(skip)]
    pub certificate: Option<Certificate>,
}

impl ClaimReport {
    fn new(claim: &str, params: Value, expected: Value, provenance: &str) -> Self {
        ClaimReport {
            claim: claim.to_string(),
            params,
            expected: Expected {
                value: expected,
                provenance: provenance.to_string(),
            },
            observed: Value::Null,
            pass: false,
            elapsed_ms: 0,
            outcome: Outcome::Fail,
            certificate: None,
        }
    }

    fn observe(mut self, observed: Result<Value, SggiError>, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        match observed {
            Ok(v) => {
                self.pass = v == self.expected.value;
                self.outcome = if self.pass {
                    Outcome::Pass
                } else {
                    Outcome::Fail
                };
                self.observed = v;
            }
            Err(e) => {
                self.outcome = match e {
                    SggiError::Coset(CosetError::LimitExceeded { .. }) => Outcome::Limit,
                    _ => Outcome::Fail,
                };
                self.observed = json!({ "error": e.to_string() });
            }
        }
        self
    }

    /// JSON line with `elapsed_ms` removed, for reproducibility comparisons.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("elapsed_ms");
        v.to_string()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Builders only fail on parameters the suites have already validated.
fn built(r: Result<Presentation, FamilyError>) -> Presentation {
    r.unwrap_or_else(|e| panic!("invalid grid point: {e}"))
}

fn certificate_value(c: &Certificate) -> Value {
    json!({
        "order": c.order,
        "schlafli": c.schlafli.entries,
        "string_c_group": c.is_string_c_group(),
        "degenerate": c.degenerate,
        "solvable": c.solvable,
    })
}

fn run_certified(
    claim: &str,
    params: Value,
    expected: Value,
    provenance: &str,
    p: &Presentation,
    limits: EnumerationLimits,
) -> ClaimReport {
    let started = Instant::now();
    let report = ClaimReport::new(claim, params, expected, provenance);
    let cert = certify(p, &[0, 1, 2], limits);
    let observed = cert.as_ref().map(certificate_value).map_err(Clone::clone);
    let mut report = report.observe(observed, started);
    report.certificate = cert.ok();
    report
}

/// Degenerate groups of order `4k`, both variants.
pub fn verify_prop21(
    ks: &[i64],
    limits: EnumerationLimits,
) -> Result<Vec<ClaimReport>, VerifyError> {
    if let Some(k) = ks.iter().find(|&&k| k < 2) {
        return Err(VerifyError::BadParam(format!(
            "k must be at least 2, got {k}"
        )));
    }
    let points: Vec<(i64, u8)> = ks.iter().flat_map(|&k| [(k, 1u8), (k, 2u8)]).collect();
    Ok(points
        .par_iter()
        .map(|&(k, variant)| {
            let schlafli = if variant == 1 { [k, 2] } else { [2, k] };
            let expected = json!({
                "order": 4 * k,
                "schlafli": schlafli,
                "string_c_group": true,
                "degenerate": true,
                "solvable": true,
            });
            let p = built(build_degenerate(k, variant));
            run_certified(
                "prop21",
                json!({ "k": k, "variant": variant }),
                expected,
                "formula: order 4k, type (k,2) or (2,k)",
                &p,
                limits,
            )
        })
        .collect())
}

/// Type `{4,4}` groups of orders `8b²` and `16b²`.
pub fn verify_prop23(
    bs: &[i64],
    limits: EnumerationLimits,
) -> Result<Vec<ClaimReport>, VerifyError> {
    if let Some(b) = bs.iter().find(|&&b| b < 2) {
        return Err(VerifyError::BadParam(format!(
            "b must be at least 2, got {b}"
        )));
    }
    let points: Vec<(i64, u8)> = bs.iter().flat_map(|&b| [(b, 1u8), (b, 2u8)]).collect();
    Ok(points
        .par_iter()
        .map(|&(b, variant)| {
            let order = if variant == 1 { 8 * b * b } else { 16 * b * b };
            let expected = json!({
                "order": order,
                "schlafli": [4, 4],
                "string_c_group": true,
                "degenerate": false,
                "solvable": true,
            });
            let p = built(build_type44(b, variant));
            run_certified(
                "prop23",
                json!({ "b": b, "variant": variant }),
                expected,
                "formula: order 8b^2 or 16b^2, type (4,4)",
                &p,
                limits,
            )
        })
        .collect())
}

fn group_order(p: &Presentation, limits: EnumerationLimits) -> Result<u64, SggiError> {
    Ok(enumerate(p, &[], limits)?.index() as u64)
}

/// Type-(1) groups of order `2ⁿℓ₁ℓ₂`, with the orders of both intermediate
/// quotients.
pub fn verify_theorem4(
    grid: &[Type1Params],
    limits: EnumerationLimits,
) -> Result<Vec<ClaimReport>, VerifyError> {
    for p in grid {
        p.validate()
            .map_err(|e| VerifyError::BadParam(e.to_string()))?;
    }
    Ok(grid
        .par_iter()
        .map(|tp| {
            let started = Instant::now();
            let g2 = 1u64 << (tp.n - tp.s - tp.t + 4);
            let g1 = g2 * (1u64 << (tp.t - 2)) * tp.l2 as u64;
            let order = g1 * (1u64 << (tp.s - 2)) * tp.l1 as u64;
            debug_assert_eq!(order, tp.expected_order());
            let expected = json!({
                "order": order,
                "schlafli": [tp.k1(), tp.k2()],
                "string_c_group": true,
                "degenerate": false,
                "solvable": true,
                "g1_order": g1,
                "g2_order": g2,
            });
            let params = json!({ "s": tp.s, "t": tp.t, "n": tp.n, "l1": tp.l1, "l2": tp.l2 });
            let report = ClaimReport::new(
                "thm4",
                params,
                expected,
                "formula: order 2^n l1 l2, type (2^s l1, 2^t l2), |G2| = 2^(n-s-t+4)",
            );
            let p = built(build_type1(tp));
            let (p1, p2) =
                build_type1_chain(tp).unwrap_or_else(|e| panic!("invalid grid point: {e}"));
            let cert = certify(&p, &[0, 1, 2], limits);
            let observed = (|| {
                let c = cert.clone()?;
                let mut v = certificate_value(&c);
                v["g1_order"] = json!(group_order(&p1, limits)?);
                v["g2_order"] = json!(group_order(&p2, limits)?);
                Ok(v)
            })();
            let mut report = report.observe(observed, started);
            report.certificate = cert.ok();
            report
        })
        .collect())
}

/// Type-(2) families of order `base · m³` and type `{6,6}`.
pub fn verify_theorem5(
    points: &[Type2Params],
    limits: EnumerationLimits,
) -> Result<Vec<ClaimReport>, VerifyError> {
    if points.iter().any(|p| p.m == 0) {
        return Err(VerifyError::BadParam("m must be at least 1".into()));
    }
    Ok(points
        .par_iter()
        .map(|tp| {
            let expected = json!({
                "order": tp.expected_order(),
                "schlafli": [6, 6],
                "string_c_group": true,
                "degenerate": false,
                "solvable": true,
            });
            let p = built(build_type2(tp));
            run_certified(
                "thm5",
                json!({ "family": tp.family.to_string(), "m": tp.m }),
                expected,
                "formula: order 192m^3, 384m^3 or 768m^3, type (6,6)",
                &p,
                limits,
            )
        })
        .collect())
}

fn subgroup_name(f: Family) -> &'static str {
    match f {
        Family::G => "N",
        Family::H => "L",
        Family::I => "M",
    }
}

/// Index, normality and abelianization of the three normal subgroups of `𝒰`.
pub fn verify_subgroup_structure(
    families: &[Family],
    limits: EnumerationLimits,
) -> Vec<ClaimReport> {
    families
        .par_iter()
        .map(|&f| {
            let started = Instant::now();
            let expected = json!({
                "index": f.base_order(),
                "normal": true,
                "torsion": [],
                "free_rank": 3,
            });
            let report = ClaimReport::new(
                "subgroups",
                json!({ "family": f.to_string(), "subgroup": subgroup_name(f) }),
                expected,
                "formula: index 192, 384 or 768; free abelian of rank 3",
            );
            let u = build_u();
            let words = subgroup_generators(f).words();
            let observed = (|| {
                let table = enumerate(&u, &words, limits)?;
                let normal = table.is_normal(&words)?;
                let inv = abelian_invariants(&table.abelianized_subgroup_relations(&u));
                let torsion: Vec<String> = inv.torsion.iter().map(ToString::to_string).collect();
                Ok(json!({
                    "index": table.index(),
                    "normal": normal,
                    "torsion": torsion,
                    "free_rank": inv.free_rank,
                }))
            })();
            report.observe(observed, started)
        })
        .collect()
}

/// Family and `m` realizing order `3·2ⁿ` with type `{6,6}`.
pub fn cor52_point(n: u32) -> Result<Type2Params, VerifyError> {
    if n <= 5 {
        return Err(VerifyError::BadParam(format!(
            "n must be at least 6, got {n}"
        )));
    }
    let j = (n - 6) / 3;
    let family = Family::ALL[((n - 6) % 3) as usize];
    Type2Params::new(family, 1 << j).map_err(|e| VerifyError::BadParam(e.to_string()))
}

pub fn verify_cor52(
    ns: &[u32],
    limits: EnumerationLimits,
) -> Result<Vec<ClaimReport>, VerifyError> {
    let points = ns
        .iter()
        .map(|&n| Ok((n, cor52_point(n)?)))
        .collect::<Result<Vec<_>, VerifyError>>()?;
    Ok(points
        .par_iter()
        .map(|&(n, tp)| {
            let expected = json!({
                "order": 3u64 << n,
                "schlafli": [6, 6],
                "string_c_group": true,
                "degenerate": false,
                "solvable": true,
            });
            let p = built(build_type2(&tp));
            run_certified(
                "cor52",
                json!({ "n": n, "family": tp.family.to_string(), "m": tp.m }),
                expected,
                "formula: order 3*2^n, type (6,6)",
                &p,
                limits,
            )
        })
        .collect())
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// `p` when `order = 2ⁿ·p` with `p` an odd prime.
pub fn odd_prime_part(order: u64) -> Option<u64> {
    if order == 0 {
        return None;
    }
    let odd = order >> order.trailing_zeros();
    (odd > 2 && is_prime(odd)).then_some(odd)
}

/// Whether `p` divides a Schläfli entry of a certificate of order `2ⁿ·p`.
pub fn verify_divisibility(c: &Certificate, p: u64) -> Result<bool, VerifyError> {
    if odd_prime_part(c.order) != Some(p) {
        return Err(VerifyError::NotApplicable(c.order));
    }
    Ok(c.schlafli.entries.iter().any(|k| k % p == 0))
}

/// Number of Schläfli entries divisible by `p`: 1 for type (1), 2 for type (2).
pub fn divisibility_class(c: &Certificate, p: u64) -> usize {
    c.schlafli.entries.iter().filter(|k| *k % p == 0).count()
}

/// One report per string C-group certificate of order `2ⁿp` in `reports`.
pub fn divisibility_reports(reports: &[ClaimReport]) -> Vec<ClaimReport> {
    let mut out = Vec::new();
    for r in reports {
        let Some(c) = &r.certificate else { continue };
        if !c.is_string_c_group() {
            continue;
        }
        let Some(p) = odd_prime_part(c.order) else {
            continue;
        };
        let started = Instant::now();
        let report = ClaimReport::new(
            "thm3",
            json!({ "source": r.claim, "source_params": r.params, "order": c.order, "p": p }),
            json!({ "p_divides_schlafli": true }),
            "formula: p divides k1 or k2",
        );
        let divides = verify_divisibility(c, p).expect("applicable");
        let mut report = report.observe(Ok(json!({ "p_divides_schlafli": divides })), started);
        report.params["class"] = json!(divisibility_class(c, p));
        out.push(report);
    }
    out
}

/// Parameter grids for every suite.
#[derive(Debug, Clone)]
pub struct Grid {
    pub ks: Vec<i64>,
    pub bs: Vec<i64>,
    pub type1: Vec<Type1Params>,
    pub type2: Vec<Type2Params>,
    pub families: Vec<Family>,
    pub cor52: Vec<u32>,
}

impl Default for Grid {
    fn default() -> Self {
        let mut type1 = Vec::new();
        for s in [2, 3] {
            for t in [2, 3] {
                for l1 in [1, 3, 5] {
                    for l2 in [1, 3] {
                        for n in s + t + 1..=s + t + 4 {
                            type1.push(Type1Params::new(s, t, n, l1, l2).expect("default grid"));
                        }
                    }
                }
            }
        }
        let mut type2 = Vec::new();
        for m in [1, 2] {
            for f in Family::ALL {
                type2.push(Type2Params::new(f, m).expect("default grid"));
            }
        }
        type2.push(Type2Params::new(Family::G, 3).expect("default grid"));
        Grid {
            ks: (2..=16).collect(),
            bs: (2..=6).collect(),
            type1,
            type2,
            families: Family::ALL.to_vec(),
            cor52: vec![6, 7, 8, 9],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Prop21,
    Prop23,
    Thm4,
    Thm5,
    Subgroups,
    Cor52,
    All,
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "prop21" => Suite::Prop21,
            "prop23" => Suite::Prop23,
            "thm4" => Suite::Thm4,
            "thm5" => Suite::Thm5,
            "subgroups" => Suite::Subgroups,
            "cor52" => Suite::Cor52,
            "all" => Suite::All,
            _ => return Err(VerifyError::UnknownSuite(s.to_string())),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Prop21 => "prop21",
            Suite::Prop23 => "prop23",
            Suite::Thm4 => "thm4",
            Suite::Thm5 => "thm5",
            Suite::Subgroups => "subgroups",
            Suite::Cor52 => "cor52",
            Suite::All => "all",
        })
    }
}

/// Runs a suite; `all` appends the divisibility reports over every
/// certificate produced.
pub fn run_suite(
    suite: Suite,
    grid: &Grid,
    limits: EnumerationLimits,
) -> Result<Vec<ClaimReport>, VerifyError> {
    let mut out = Vec::new();
    let want = |s: Suite| suite == s || suite == Suite::All;
    if want(Suite::Prop21) {
        out.extend(verify_prop21(&grid.ks, limits)?);
    }
    if want(Suite::Prop23) {
        out.extend(verify_prop23(&grid.bs, limits)?);
    }
    if want(Suite::Thm4) {
        out.extend(verify_theorem4(&grid.type1, limits)?);
    }
    if want(Suite::Thm5) {
        out.extend(verify_theorem5(&grid.type2, limits)?);
    }
    if want(Suite::Subgroups) {
        out.extend(verify_subgroup_structure(&grid.families, limits));
    }
    if want(Suite::Cor52) {
        out.extend(verify_cor52(&grid.cor52, limits)?);
    }
    if suite == Suite::All {
        let div = divisibility_reports(&out);
        out.extend(div);
    }
    Ok(out)
}

/// CSV table `claim,params,expected,observed,pass`.
pub fn csv_summary(reports: &[ClaimReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["claim", "params", "expected", "observed", "pass"])
        .expect("in-memory write");
    for r in reports {
        w.write_record([
            r.claim.clone(),
            r.params.to_string(),
            r.expected.value.to_string(),
            r.observed.to_string(),
            r.pass.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
