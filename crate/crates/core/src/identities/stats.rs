use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{big, big_binomial};
use crate::counting::{AggregateSums, TypeCounts5};

/// Exact moments of `(β_T, γ_T)` over the `C(n,3)` triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatsSummary {
    pub n: usize,
    pub mean_beta: BigRational,
    pub mean_gamma: BigRational,
    pub var_beta: BigRational,
    pub var_gamma: BigRational,
    pub covariance: BigRational,
    /// `960·pentagon / n³`
    pub x_p: BigRational,
}

impl StatsSummary {
    /// `σ_β·σ_γ`, the only quantity that needs a square root.
    pub fn sigma_product(&self) -> f64 {
        use num_traits::ToPrimitive;
        let prod = (&self.var_beta * &self.var_gamma)
            .to_f64()
            .unwrap_or(f64::NAN);
        libm::sqrt(prod)
    }
}

pub fn stats(a: &AggregateSums, t5: &TypeCounts5) -> StatsSummary {
    let n = a.n as u64;
    let tri = big_binomial(n, 3);
    let ratio = |num: i128| {
        if tri.is_zero() {
            BigRational::zero()
        } else {
            BigRational::new(big(num), tri.clone())
        }
    };
    let mean_beta = ratio(a.sum_beta);
    let mean_gamma = ratio(a.sum_gamma);
    let var_beta = ratio(a.sum_beta_sq) - &mean_beta * &mean_beta;
    let var_gamma = ratio(a.sum_gamma_sq) - &mean_gamma * &mean_gamma;
    let covariance = ratio(a.sum_beta_gamma) - &mean_beta * &mean_gamma;
    let n3 = BigInt::from(n).pow(3);
    let x_p = if n3.is_zero() {
        BigRational::zero()
    } else {
        BigRational::new(960 * big(t5.pentagon), n3)
    };
    StatsSummary {
        n: a.n,
        mean_beta,
        mean_gamma,
        var_beta,
        var_gamma,
        covariance,
        x_p,
    }
}
