//! Exact verification of the planar-point equations relating region sums to
//! subset-type counts, plus the statistics and bound chain built on them.
//!
//! Every comparison is carried out in arbitrary-precision integers or
//! rationals. A failing record on a valid placement is a bug in the counting
//! code: each identity is a theorem.

mod bound;
mod stats;

pub use bound::{
    bound_report, bound_report_from, c5_lower_const, mu5_coefficient, rhs_const_coefficient,
    rhs_gamma, rhs_gamma_dominates_const, supersaturation_bound, supersaturation_limit, BoundError,
    BoundReport, Trackers,
};
pub use stats::{stats, StatsSummary};

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::counting::{AggregateSums, TypeCounts4, TypeCounts5};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    /// `lhs <= rhs`
    Le,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub statement: &'static str,
    pub relation: Relation,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub records: Vec<IdentityRecord>,
    pub pass: bool,
}

impl IdentityReport {
    pub fn get(&self, id: &str) -> Option<&IdentityRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

pub(crate) fn big(v: impl Into<BigInt>) -> BigInt {
    v.into()
}

pub(crate) fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// `C(n, k)` as a big integer.
pub fn big_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

struct Builder {
    records: Vec<IdentityRecord>,
}

impl Builder {
    fn push(
        &mut self,
        id: &'static str,
        statement: &'static str,
        lhs: BigRational,
        relation: Relation,
        rhs: BigRational,
    ) {
        let pass = match relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
        };
        self.records.push(IdentityRecord {
            id,
            statement,
            relation,
            lhs,
            rhs,
            pass,
        });
    }

    fn eq(&mut self, id: &'static str, statement: &'static str, lhs: BigInt, rhs: BigInt) {
        self.push(id, statement, int(lhs), Relation::Eq, int(rhs));
    }
}

/// Evaluates identities E1–E15 on counts and sums from one placement.
pub fn verify_identities(a: &AggregateSums, t4: &TypeCounts4, t5: &TypeCounts5) -> IdentityReport {
    let n = a.n as u64;
    let nb = big(n);
    let sb = big(a.sum_beta);
    let sg = big(a.sum_gamma);
    let sbb = big(a.sum_beta_sq);
    let sgg = big(a.sum_gamma_sq);
    let sbg = big(a.sum_beta_gamma);
    let quad = big(t4.quad);
    let tridot = big(t4.tridot);
    let pent = big(t5.pentagon);
    let four = big(t5.four_hull);
    let three = big(t5.three_hull);
    let c3 = big_binomial(n, 3);
    let c4 = big_binomial(n, 4);
    let c5 = big_binomial(n, 5);

    let mut b = Builder {
        records: Vec::with_capacity(17),
    };
    b.eq("E1", "Σγ = 4·quad", sg.clone(), 4 * &quad);
    b.eq("E2", "Σβ = 3·tridot", sb.clone(), 3 * &tridot);
    b.eq("E3", "quad + tridot = C(n,4)", &quad + &tridot, c4.clone());
    b.eq("E4", "Σ(4β+3γ) = 12·C(n,4)", 4 * &sb + 3 * &sg, 12 * &c4);
    b.eq(
        "E5",
        "4·pentagon = 4·C(n,5) − Σβγ",
        4 * &pent,
        4 * &c5 - &sbg,
    );
    b.eq(
        "E6",
        "pentagon + four_hull + three_hull = C(n,5)",
        &pent + &four + &three,
        c5.clone(),
    );
    b.eq(
        "E7a",
        "Σ_T Σ_i C(γ_i,2) = 5·pentagon + 2·four_hull",
        big(a.sum_gamma_pair_binom),
        5 * &pent + 2 * &four,
    );
    b.eq(
        "E7b",
        "Σ_T Σ_{i<j} γ_i γ_j = 5·pentagon + four_hull",
        big(a.sum_gamma_cross),
        5 * &pent + &four,
    );
    b.eq(
        "E8a",
        "Σ_T Σ_i C(β_i,2) = four_hull + 2·three_hull",
        big(a.sum_beta_pair_binom),
        &four + 2 * &three,
    );
    b.eq(
        "E8b",
        "Σ_T Σ_{i<j} β_i β_j = three_hull",
        big(a.sum_beta_cross),
        three.clone(),
    );
    b.eq(
        "E9",
        "(n−4)·quad = 5·pentagon + 3·four_hull + three_hull",
        (&nb - 4) * &quad,
        5 * &pent + 3 * &four + &three,
    );
    b.eq(
        "E10",
        "Σ(interior + β + γ) = (n−3)·C(n,3)",
        big(a.sum_interior) + &sb + &sg,
        (&nb - 3) * &c3,
    );
    b.eq(
        "E11",
        "Σ interior = tridot",
        big(a.sum_interior),
        tridot.clone(),
    );

    let cov = &c3 * &sbg - &sb * &sg;
    let var_b = &c3 * &sbb - &sb * &sb;
    let var_g = &c3 * &sgg - &sg * &sg;
    b.push(
        "E12",
        "(NΣβγ − ΣβΣγ)² <= (NΣβ² − (Σβ)²)(NΣγ² − (Σγ)²), N = C(n,3)",
        int(&cov * &cov),
        Relation::Le,
        int(var_b * var_g),
    );
    b.eq(
        "E13",
        "Σγ² − Σγ = 20·pentagon + 6·four_hull",
        &sgg - &sg,
        20 * &pent + 6 * &four,
    );
    b.eq(
        "E14",
        "Σβ² − Σβ = 2·four_hull + 6·three_hull",
        &sbb - &sb,
        2 * &four + 6 * &three,
    );

    let lhs15 = if c3 == BigInt::from(0) {
        int(big(0))
    } else {
        BigRational::new(4 * &sb + 3 * &sg, c3.clone())
    };
    let rhs15 = if c3 == BigInt::from(0) {
        int(big(0))
    } else {
        int(3 * (&nb - 3))
    };
    b.push(
        "E15",
        "4·mean(β) + 3·mean(γ) = 3(n−3)",
        lhs15,
        Relation::Eq,
        rhs15,
    );

    let pass = b.records.iter().all(|r| r.pass);
    IdentityReport {
        records: b.records,
        pass,
    }
}
