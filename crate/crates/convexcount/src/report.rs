//! Run reports: counting, verification and bound evaluation of one placement,
//! serialized as JSON or as flat `key = value` text with the same numbers.
//!
//! Integers that can exceed 64 bits and exact rationals are written as
//! decimal strings (`"p/q"` for non-integral rationals).

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use convexcount_core::counting::{
    count4_from_regions, count4_naive, count5_from_regions, count5_naive, CountingError,
    TypeCounts4, TypeCounts5,
};
use convexcount_core::identities::{
    bound_report_from, rhs_gamma_dominates_const, stats, verify_identities, BoundReport,
    IdentityReport, StatsSummary, Trackers,
};
use convexcount_core::{BigRational, Placement};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::parallel::aggregate_parallel;

/// Largest `n` at which the `auto` engine cross-checks against the naive
/// enumerator (`C(11,5) = 462` subsets).
pub const AUTO_CROSSCHECK_MAX_N: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    /// Enumerate every 4- and 5-subset.
    Naive,
    /// Derive counts from per-triangle region sums.
    Regions,
    /// Regions, cross-checked against naive for small `n`.
    Auto,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error("engine mismatch: naive {naive}, regions {regions}")]
    CrossCheck { naive: String, regions: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exact {
    pub exact: String,
    pub approx: Option<f64>,
}

impl From<&BigRational> for Exact {
    fn from(r: &BigRational) -> Self {
        Self {
            exact: r.to_string(),
            approx: r.to_f64().filter(|v| v.is_finite()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counts4 {
    pub quad: String,
    pub tridot: String,
    pub total: String,
}

impl From<&TypeCounts4> for Counts4 {
    fn from(t: &TypeCounts4) -> Self {
        Self {
            quad: t.quad.to_string(),
            tridot: t.tridot.to_string(),
            total: t.total().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counts5 {
    pub pentagon: String,
    pub four_hull: String,
    pub three_hull: String,
    pub total: String,
}

impl From<&TypeCounts5> for Counts5 {
    fn from(t: &TypeCounts5) -> Self {
        Self {
            pentagon: t.pentagon.to_string(),
            four_hull: t.four_hull.to_string(),
            three_hull: t.three_hull.to_string(),
            total: t.total().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsSection {
    pub mean_beta: Exact,
    pub mean_gamma: Exact,
    pub var_beta: Exact,
    pub var_gamma: Exact,
    pub covariance: Exact,
    pub x_p: Exact,
    pub sigma_product: f64,
}

impl From<&StatsSummary> for StatsSection {
    fn from(s: &StatsSummary) -> Self {
        Self {
            mean_beta: (&s.mean_beta).into(),
            mean_gamma: (&s.mean_gamma).into(),
            var_beta: (&s.var_beta).into(),
            var_gamma: (&s.var_gamma).into(),
            covariance: (&s.covariance).into(),
            x_p: (&s.x_p).into(),
            sigma_product: s.sigma_product(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityLine {
    pub id: String,
    pub statement: String,
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentitiesSection {
    pub pass: bool,
    pub records: Vec<IdentityLine>,
}

impl From<&IdentityReport> for IdentitiesSection {
    fn from(r: &IdentityReport) -> Self {
        Self {
            pass: r.pass,
            records: r
                .records
                .iter()
                .map(|e| IdentityLine {
                    id: e.id.to_owned(),
                    statement: e.statement.to_owned(),
                    relation: e.relation.to_string(),
                    lhs: e.lhs.to_string(),
                    rhs: e.rhs.to_string(),
                    pass: e.pass,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrackersSection {
    pub r_sum_gamma_sq: Option<f64>,
    pub r_var_gamma: Option<f64>,
    pub r_var_beta: Option<f64>,
    pub slack_covariance: Option<f64>,
    pub x_p_over_rhs_gamma: Option<f64>,
}

impl From<&Trackers> for TrackersSection {
    fn from(t: &Trackers) -> Self {
        Self {
            r_sum_gamma_sq: t.r_sum_gamma_sq,
            r_var_gamma: t.r_var_gamma,
            r_var_beta: t.r_var_beta,
            slack_covariance: Some(t.slack_covariance).filter(|v| v.is_finite()),
            x_p_over_rhs_gamma: t.x_p_over_rhs_gamma,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSection {
    pub pentagon: String,
    pub c5_estimate: Exact,
    pub x_p: Exact,
    pub gamma_bar: Exact,
    pub gamma_bar_degenerate: bool,
    pub rhs_gamma: Option<Exact>,
    pub rhs_const: f64,
    /// Exact check of `rhs_gamma >= rhs_const`; null when `γ̄ = 0`.
    pub rhs_gamma_dominates_const: Option<bool>,
    pub mu5_lower_thm: f64,
    pub mu5_coefficient: f64,
    pub c5_lower_const: f64,
    pub trackers: TrackersSection,
}

impl From<&BoundReport> for BoundSection {
    fn from(b: &BoundReport) -> Self {
        Self {
            pentagon: b.pentagon.to_string(),
            c5_estimate: (&b.c5_estimate).into(),
            x_p: (&b.x_p).into(),
            gamma_bar: (&b.gamma_bar).into(),
            gamma_bar_degenerate: b.gamma_bar_degenerate(),
            rhs_gamma: b.rhs_gamma.as_ref().map(Exact::from),
            rhs_const: b.rhs_const,
            rhs_gamma_dominates_const: rhs_gamma_dominates_const(b.n as u64, &b.gamma_bar),
            mu5_lower_thm: b.mu5_lower_thm,
            mu5_coefficient: b.mu5_coefficient,
            c5_lower_const: b.c5_lower_const,
            trackers: (&b.trackers).into(),
        }
    }
}

/// Wall-clock milliseconds per phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub aggregate_ms: f64,
    pub derive_ms: f64,
    pub verify_ms: f64,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub n: usize,
    /// `naive`, `regions`, or `regions+naive` when cross-checked.
    pub engine: String,
    pub counts4: Counts4,
    pub counts5: Counts5,
    pub stats: StatsSection,
    pub identities: IdentitiesSection,
    /// Null when `n < 5`.
    pub bound: Option<BoundSection>,
    pub timings: Timings,
}

/// Exact results behind a [`RunReport`].
#[derive(Clone, Debug)]
pub struct Analysis {
    pub counts4: TypeCounts4,
    pub counts5: TypeCounts5,
    pub identities: IdentityReport,
    pub stats: StatsSummary,
    pub bound: Option<BoundReport>,
    pub engine_used: &'static str,
    pub timings: Timings,
}

/// Counts with the chosen engine, then verifies every identity and evaluates
/// the bound chain. Fails on an `auto` cross-check mismatch.
pub fn analyze(p: &Placement, engine: Engine, threads: usize) -> Result<Analysis, ReportError> {
    let mut timings = Timings::default();

    let t = Instant::now();
    let sums = aggregate_parallel(p, threads)?;
    timings.aggregate_ms = ms(t.elapsed());

    let t = Instant::now();
    let (counts4, counts5, engine_used) = match engine {
        Engine::Naive => (count4_naive(p), count5_naive(p), "naive"),
        Engine::Regions => (
            count4_from_regions(&sums)?,
            count5_from_regions(&sums)?,
            "regions",
        ),
        Engine::Auto => {
            let c4 = count4_from_regions(&sums)?;
            let c5 = count5_from_regions(&sums)?;
            if p.len() <= AUTO_CROSSCHECK_MAX_N {
                let (n4, n5) = (count4_naive(p), count5_naive(p));
                if (n4, n5) != (c4, c5) {
                    return Err(ReportError::CrossCheck {
                        naive: format!("{n4:?} {n5:?}"),
                        regions: format!("{c4:?} {c5:?}"),
                    });
                }
                (c4, c5, "regions+naive")
            } else {
                (c4, c5, "regions")
            }
        }
    };
    timings.derive_ms = ms(t.elapsed());

    let t = Instant::now();
    let identities = verify_identities(&sums, &counts4, &counts5);
    let stats = stats(&sums, &counts5);
    let bound = (p.len() >= 5)
        .then(|| bound_report_from(&sums, &counts5))
        .transpose()
        .map_err(|e| match e {
            convexcount_core::identities::BoundError::Counting(c) => ReportError::Counting(c),
            other => unreachable!("n >= 5 was checked: {other}"),
        })?;
    timings.verify_ms = ms(t.elapsed());

    Ok(Analysis {
        counts4,
        counts5,
        identities,
        stats,
        bound,
        engine_used,
        timings,
    })
}

impl RunReport {
    pub fn new(p: &Placement, a: &Analysis) -> Self {
        Self {
            n: p.len(),
            engine: a.engine_used.to_owned(),
            counts4: (&a.counts4).into(),
            counts5: (&a.counts5).into(),
            stats: (&a.stats).into(),
            identities: (&a.identities).into(),
            bound: a.bound.as_ref().map(BoundSection::from),
            timings: a.timings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        render_text(&serde_json::to_value(self).expect("report serializes"))
    }
}

/// Flattens a JSON value into `path = value` lines. Array elements that carry
/// an `id` are keyed by it.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    flatten(v, "", &mut out);
    out
}

fn flatten(v: &Value, path: &str, out: &mut String) {
    let join = |k: &str| {
        if path.is_empty() {
            k.to_owned()
        } else {
            format!("{path}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(x, &join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                let key = x
                    .get("id")
                    .and_then(Value::as_str)
                    .map_or_else(|| i.to_string(), str::to_owned);
                flatten(x, &join(&key), out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{path} = {s}");
        }
        other => {
            let _ = writeln!(out, "{path} = {other}");
        }
    }
}
