//! The pentagon lower-bound chain evaluated on a concrete placement.
//!
//! The asymptotic relations between the pentagon count and the moments of
//! `γ_T` and `β_T` cannot be asserted at finite `n`; they are reported as
//! ratios that tend to 1 (or a slack that should be non-negative for large
//! `n`). Exact fields stay rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::stats::{stats, StatsSummary};
use super::{big, big_binomial, int};
use crate::counting::{
    aggregate_regions, count5_from_regions, AggregateSums, CountingError, TypeCounts5,
};
use crate::geometry::Placement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("pentagon bounds need n >= 5, got n = {0}")]
    TooFewPoints(usize),
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error("supersaturation needs n >= m >= 5 (m = {m}, n = {n})")]
    Domain { m: u64, n: u64 },
}

/// `(5√5 − 11)/4`, the limiting lower bound on the convex-pentagon density.
pub fn c5_lower_const() -> f64 {
    (5.0 * libm::sqrt(5.0) - 11.0) / 4.0
}

/// `(5√5 − 11)/480`, the coefficient of `n⁵` in the pentagon lower bound.
pub fn mu5_coefficient() -> f64 {
    (5.0 * libm::sqrt(5.0) - 11.0) / 480.0
}

/// `10√5 − 22`, the minimum of `rhs_gamma / n²` over `γ̄ > 0`.
pub fn rhs_const_coefficient() -> f64 {
    10.0 * libm::sqrt(5.0) - 22.0
}

/// `n(25γ̄² − 22nγ̄ + 5n²)/γ̄`; `None` when `γ̄ = 0`.
pub fn rhs_gamma(n: u64, gamma_bar: &BigRational) -> Option<BigRational> {
    if gamma_bar.is_zero() {
        return None;
    }
    let n = int(big(n));
    let poly = int(big(25)) * gamma_bar * gamma_bar - int(big(22)) * &n * gamma_bar
        + int(big(5)) * &n * &n;
    Some(&n * poly / gamma_bar)
}

/// Exact test of `rhs_gamma(n, γ̄) >= (10√5 − 22)·n²` for `γ̄ > 0`.
///
/// `rhs_gamma/n² + 22 = 25γ̄/n + 5n/γ̄ =: t > 0`, so the inequality is
/// `t >= 10√5`, i.e. `t² >= 500`.
pub fn rhs_gamma_dominates_const(n: u64, gamma_bar: &BigRational) -> Option<bool> {
    if gamma_bar.is_zero() || n == 0 {
        return None;
    }
    let n = int(big(n));
    let t = int(big(25)) * gamma_bar / &n + int(big(5)) * &n / gamma_bar;
    Some(&t * &t >= int(big(500)))
}

/// Ratios of the pentagon count to the leading-order expressions it is
/// asymptotically equivalent to. `None` marks a zero denominator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trackers {
    /// `32♣ / (4Σγ² − 3nΣγ + n⁵/10)`
    pub r_sum_gamma_sq: Option<f64>,
    /// `960♣ / (n³(20σ_γ² + 20γ̄² − 15nγ̄ + 3n²))`
    pub r_var_gamma: Option<f64>,
    /// `960♣ / (n³(80σ_β² + 45γ̄² − 50nγ̄ + 13n²))`
    pub r_var_beta: Option<f64>,
    /// `960♣ − n³(−30nγ̄ + 30γ̄² − 40σ_γσ_β + 8n²)`
    pub slack_covariance: f64,
    /// `x_P / rhs_gamma`
    pub x_p_over_rhs_gamma: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub pentagon: u64,
    /// `pentagon / C(n,5)`
    pub c5_estimate: BigRational,
    pub x_p: BigRational,
    pub gamma_bar: BigRational,
    /// `None` when `γ̄ = 0`.
    pub rhs_gamma: Option<BigRational>,
    /// `(10√5 − 22)·n²`
    pub rhs_const: f64,
    /// `(5√5 − 11)/480 · n⁵`
    pub mu5_lower_thm: f64,
    pub mu5_coefficient: f64,
    pub c5_lower_const: f64,
    pub trackers: Trackers,
}

impl BoundReport {
    pub fn gamma_bar_degenerate(&self) -> bool {
        self.rhs_gamma.is_none()
    }
}

fn ratio(num: &BigRational, den: &BigRational) -> Option<f64> {
    if den.is_zero() {
        None
    } else {
        (num / den).to_f64()
    }
}

pub fn bound_report(p: &Placement) -> Result<BoundReport, BoundError> {
    if p.len() < 5 {
        return Err(BoundError::TooFewPoints(p.len()));
    }
    let a = aggregate_regions(p)?;
    let t5 = count5_from_regions(&a)?;
    bound_report_from(&a, &t5)
}

/// Bound report from precomputed sums and five-point counts.
pub fn bound_report_from(a: &AggregateSums, t5: &TypeCounts5) -> Result<BoundReport, BoundError> {
    let n = a.n as u64;
    if n < 5 {
        return Err(BoundError::TooFewPoints(a.n));
    }
    let s: StatsSummary = stats(a, t5);
    let nr = int(big(n));
    let n2 = &nr * &nr;
    let n3 = &n2 * &nr;
    let g = &s.mean_gamma;
    let pent = int(big(t5.pentagon));
    let k = |v: i64| int(big(v));

    let rhs_g = rhs_gamma(n, g);
    let nf = n as f64;

    let den31 = k(4) * int(big(a.sum_gamma_sq)) - k(3) * &nr * int(big(a.sum_gamma))
        + int(BigInt::from(n).pow(5)) / k(10);
    let den32 = &n3 * (k(20) * &s.var_gamma + k(20) * g * g - k(15) * &nr * g + k(3) * &n2);
    let den33 = &n3 * (k(80) * &s.var_beta + k(45) * g * g - k(50) * &nr * g + k(13) * &n2);
    let pent960 = k(960) * &pent;

    let exact_part = (&n3 * (k(-30) * &nr * g + k(30) * g * g + k(8) * &n2))
        .to_f64()
        .unwrap_or(f64::NAN);
    let slack =
        pent960.to_f64().unwrap_or(f64::NAN) - exact_part + 40.0 * nf * nf * nf * s.sigma_product();

    let trackers = Trackers {
        r_sum_gamma_sq: ratio(&(k(32) * &pent), &den31),
        r_var_gamma: ratio(&pent960, &den32),
        r_var_beta: ratio(&pent960, &den33),
        slack_covariance: slack,
        x_p_over_rhs_gamma: rhs_g.as_ref().and_then(|r| ratio(&s.x_p, r)),
    };

    Ok(BoundReport {
        n: a.n,
        pentagon: t5.pentagon,
        c5_estimate: BigRational::new(big(t5.pentagon), big_binomial(n, 5)),
        x_p: s.x_p.clone(),
        gamma_bar: g.clone(),
        rhs_gamma: rhs_g,
        rhs_const: rhs_const_coefficient() * nf * nf,
        mu5_lower_thm: mu5_coefficient() * libm::pow(nf, 5.0),
        mu5_coefficient: mu5_coefficient(),
        c5_lower_const: c5_lower_const(),
        trackers,
    })
}

/// Lower bound on the minimum pentagon count of `n` points, given that every
/// `m`-point placement has at least `r` convex pentagons: `r·C(n,5)/C(m,5)`.
pub fn supersaturation_bound(m: u64, r: u64, n: u64) -> Result<BigRational, BoundError> {
    if m < 5 || n < m {
        return Err(BoundError::Domain { m, n });
    }
    Ok(BigRational::new(
        big(r) * big_binomial(n, 5),
        big_binomial(m, 5),
    ))
}

/// The implied lower bound on the pentagon density as `n → ∞`: `r / C(m,5)`.
pub fn supersaturation_limit(m: u64, r: u64) -> Result<BigRational, BoundError> {
    if m < 5 {
        return Err(BoundError::Domain { m, n: m });
    }
    Ok(BigRational::new(big(r), big_binomial(m, 5)))
}
