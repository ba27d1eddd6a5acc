//! Counting engines for 4- and 5-point subset types.
//!
//! Two independent routes are provided. The naive engine classifies every
//! subset directly. The region engine streams over all `C(n,3)` triangles,
//! counts how many points fall in each of the seven regions, and derives the
//! type counts from sums of those region counts through double-counting
//! identities:
//!
//! ```text
//! Σ γ_T                 = 4·quad
//! Σ β_T                 = 3·tridot
//! Σ_T Σ_i C(γ_i, 2)     = 5·pentagon + 2·four_hull
//! Σ_T Σ_{i<j} γ_i γ_j   = 5·pentagon +   four_hull
//! Σ_T Σ_{i<j} β_i β_j   = three_hull
//! ```

use alloc::vec::Vec;

use crate::classification::{
    canonical_triangle, classify4, classify5, label_from_signs, region_of, RegionLabel,
    TriangleRef, Type4, Type5,
};
use crate::geometry::{GeometryError, Placement, Point};

/// Largest placement for which [`region_table`] keeps per-triangle data.
pub const REGION_TABLE_MAX_N: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CountingError {
    #[error("arithmetic overflow while accumulating region sums")]
    Overflow,
    #[error("region sums are internally inconsistent: {0}")]
    InconsistentCounts(&'static str),
    #[error("per-triangle region table is limited to n <= {REGION_TABLE_MAX_N}, got n = {0}")]
    TableTooLarge(usize),
}

/// Region counts of the other `n - 3` points with respect to one triangle.
/// `beta[m]` and `gamma[m]` are indexed by zero-based vertex slot.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RegionCounts {
    pub interior: u32,
    pub beta: [u32; 3],
    pub gamma: [u32; 3],
}

impl RegionCounts {
    pub fn beta_total(&self) -> u32 {
        self.beta.iter().sum()
    }

    pub fn gamma_total(&self) -> u32 {
        self.gamma.iter().sum()
    }

    pub fn total(&self) -> u32 {
        self.interior + self.beta_total() + self.gamma_total()
    }

    fn record(&mut self, label: RegionLabel) {
        match label {
            RegionLabel::Interior => self.interior += 1,
            RegionLabel::Beta(m) => self.beta[m as usize - 1] += 1,
            RegionLabel::Gamma(m) => self.gamma[m as usize - 1] += 1,
        }
    }
}

/// Placement-wide sums of per-triangle region counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AggregateSums {
    pub n: usize,
    pub triangles: i128,
    pub sum_interior: i128,
    pub sum_beta: i128,
    pub sum_gamma: i128,
    pub sum_beta_sq: i128,
    pub sum_gamma_sq: i128,
    pub sum_beta_gamma: i128,
    /// `Σ_T Σ_i C(γ_i, 2)`
    pub sum_gamma_pair_binom: i128,
    /// `Σ_T Σ_{i<j} γ_i γ_j`
    pub sum_gamma_cross: i128,
    /// `Σ_T Σ_i C(β_i, 2)`
    pub sum_beta_pair_binom: i128,
    /// `Σ_T Σ_{i<j} β_i β_j`
    pub sum_beta_cross: i128,
}

#[inline]
fn add(acc: &mut i128, v: i128) -> Result<(), CountingError> {
    *acc = acc.checked_add(v).ok_or(CountingError::Overflow)?;
    Ok(())
}

fn pair_binom(v: [u32; 3]) -> i128 {
    v.iter().map(|&x| x as i128 * (x as i128 - 1) / 2).sum()
}

fn cross(v: [u32; 3]) -> i128 {
    let [a, b, c] = v.map(i128::from);
    a * b + b * c + a * c
}

impl AggregateSums {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn accumulate(&mut self, rc: &RegionCounts) -> Result<(), CountingError> {
        let b = rc.beta_total() as i128;
        let g = rc.gamma_total() as i128;
        add(&mut self.triangles, 1)?;
        add(&mut self.sum_interior, rc.interior as i128)?;
        add(&mut self.sum_beta, b)?;
        add(&mut self.sum_gamma, g)?;
        add(&mut self.sum_beta_sq, b * b)?;
        add(&mut self.sum_gamma_sq, g * g)?;
        add(&mut self.sum_beta_gamma, b * g)?;
        add(&mut self.sum_gamma_pair_binom, pair_binom(rc.gamma))?;
        add(&mut self.sum_gamma_cross, cross(rc.gamma))?;
        add(&mut self.sum_beta_pair_binom, pair_binom(rc.beta))?;
        add(&mut self.sum_beta_cross, cross(rc.beta))?;
        Ok(())
    }

    /// Field-wise sum of two partial aggregates over disjoint triangle sets.
    pub fn merge(&mut self, other: &AggregateSums) -> Result<(), CountingError> {
        debug_assert_eq!(self.n, other.n);
        add(&mut self.triangles, other.triangles)?;
        add(&mut self.sum_interior, other.sum_interior)?;
        add(&mut self.sum_beta, other.sum_beta)?;
        add(&mut self.sum_gamma, other.sum_gamma)?;
        add(&mut self.sum_beta_sq, other.sum_beta_sq)?;
        add(&mut self.sum_gamma_sq, other.sum_gamma_sq)?;
        add(&mut self.sum_beta_gamma, other.sum_beta_gamma)?;
        add(&mut self.sum_gamma_pair_binom, other.sum_gamma_pair_binom)?;
        add(&mut self.sum_gamma_cross, other.sum_gamma_cross)?;
        add(&mut self.sum_beta_pair_binom, other.sum_beta_pair_binom)?;
        add(&mut self.sum_beta_cross, other.sum_beta_cross)?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TypeCounts4 {
    pub quad: u64,
    pub tridot: u64,
}

impl TypeCounts4 {
    pub fn total(&self) -> u64 {
        self.quad + self.tridot
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TypeCounts5 {
    pub pentagon: u64,
    pub four_hull: u64,
    pub three_hull: u64,
}

impl TypeCounts5 {
    pub fn total(&self) -> u64 {
        self.pentagon + self.four_hull + self.three_hull
    }

    fn record(&mut self, t: Type5) {
        match t {
            Type5::Pentagon => self.pentagon += 1,
            Type5::FourHull => self.four_hull += 1,
            Type5::ThreeHull => self.three_hull += 1,
        }
    }
}

/// `C(n, k)` in `i128`; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128)? / (i as i128 + 1);
    }
    Some(acc)
}

fn binom(n: usize, k: u64) -> Result<i128, CountingError> {
    binomial(n as u64, k).ok_or(CountingError::Overflow)
}

fn to_u64(v: i128) -> Result<u64, CountingError> {
    u64::try_from(v).map_err(|_| CountingError::InconsistentCounts("negative or oversized count"))
}

pub fn count4_naive(p: &Placement) -> TypeCounts4 {
    let n = p.len();
    let mut out = TypeCounts4::default();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    match classify4(p, [a, b, c, d]) {
                        Type4::ConvexQuad => out.quad += 1,
                        Type4::TriDot => out.tridot += 1,
                    }
                }
            }
        }
    }
    out
}

pub fn count5_naive(p: &Placement) -> TypeCounts5 {
    let n = p.len();
    let mut out = TypeCounts5::default();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        out.record(classify5(p, [a, b, c, d, e]));
                    }
                }
            }
        }
    }
    out
}

/// Type counts over the `C(n-1, 4)` five-subsets that contain `moved`.
pub fn delta_count5(p: &Placement, moved: usize) -> TypeCounts5 {
    let others: Vec<usize> = (0..p.len()).filter(|&i| i != moved).collect();
    let m = others.len();
    let mut out = TypeCounts5::default();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    let s = [moved, others[a], others[b], others[c], others[d]];
                    out.record(classify5(p, s));
                }
            }
        }
    }
    out
}

/// Signed-area form `det(a, b, ·)` as a linear function of the query point.
#[derive(Clone, Copy)]
struct EdgeLine {
    ax: i64,
    ay: i64,
    c: i64,
}

impl EdgeLine {
    #[inline]
    fn through(a: Point, b: Point) -> Self {
        let dx = b.x - a.x;
        let dy = b.y - a.y;
        Self {
            ax: -dy,
            ay: dx,
            c: dy * a.x - dx * a.y,
        }
    }

    #[inline]
    fn left(&self, q: Point) -> bool {
        self.ax * q.x + self.ay * q.y + self.c > 0
    }
}

fn region_counts_inner(pts: &[Point], t: TriangleRef) -> RegionCounts {
    let [a, b, c] = t.v.map(|i| pts[i]);
    let edges = [
        EdgeLine::through(b, c),
        EdgeLine::through(c, a),
        EdgeLine::through(a, b),
    ];
    let mut rc = RegionCounts::default();
    for (x, &q) in pts.iter().enumerate() {
        if t.contains(x) {
            continue;
        }
        rc.record(label_from_signs([
            edges[0].left(q),
            edges[1].left(q),
            edges[2].left(q),
        ]));
    }
    rc
}

/// Region counts of all non-vertex points with respect to triangle `t`.
pub fn region_counts(p: &Placement, t: TriangleRef) -> RegionCounts {
    region_counts_inner(p.points(), t)
}

/// Region counts of arbitrary points against a counter-clockwise triangle.
///
/// Only needs each point to avoid the three edge lines, so it also works on
/// point sets that are not in general position among themselves.
pub fn region_counts_of(tri: [Point; 3], others: &[Point]) -> Result<RegionCounts, GeometryError> {
    let mut rc = RegionCounts::default();
    for &q in others {
        rc.record(region_of(tri, q)?);
    }
    Ok(rc)
}

/// Region sums over all triangles whose smallest vertex index `i` satisfies
/// `i % parts == part`. Partial results merge into [`aggregate_regions`].
pub fn aggregate_partition(
    p: &Placement,
    part: usize,
    parts: usize,
) -> Result<AggregateSums, CountingError> {
    assert!(
        parts > 0 && part < parts,
        "invalid partition {part}/{parts}"
    );
    let n = p.len();
    let mut acc = AggregateSums::empty(n);
    for i in (part..n).step_by(parts) {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = canonical_triangle(p, i, j, k);
                acc.accumulate(&region_counts_inner(p.points(), t))?;
            }
        }
    }
    Ok(acc)
}

/// Exact region sums over all `C(n,3)` canonical triangles.
pub fn aggregate_regions(p: &Placement) -> Result<AggregateSums, CountingError> {
    aggregate_partition(p, 0, 1)
}

/// Per-triangle region counts, retained for small diagnostics runs.
pub fn region_table(p: &Placement) -> Result<Vec<(TriangleRef, RegionCounts)>, CountingError> {
    let n = p.len();
    if n > REGION_TABLE_MAX_N {
        return Err(CountingError::TableTooLarge(n));
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = canonical_triangle(p, i, j, k);
                out.push((t, region_counts(p, t)));
            }
        }
    }
    Ok(out)
}

/// Convex-quadrilateral and triangle-with-interior-point counts from the sums.
pub fn count4_from_regions(a: &AggregateSums) -> Result<TypeCounts4, CountingError> {
    if a.sum_gamma % 4 != 0 {
        return Err(CountingError::InconsistentCounts(
            "sum of gamma not divisible by 4",
        ));
    }
    if a.sum_beta % 3 != 0 {
        return Err(CountingError::InconsistentCounts(
            "sum of beta not divisible by 3",
        ));
    }
    let quad = a.sum_gamma / 4;
    let tridot = a.sum_beta / 3;
    if quad + tridot != binom(a.n, 4)? {
        return Err(CountingError::InconsistentCounts("quad + tridot != C(n,4)"));
    }
    if tridot != a.sum_interior {
        return Err(CountingError::InconsistentCounts(
            "tridot != sum of interior counts",
        ));
    }
    Ok(TypeCounts4 {
        quad: to_u64(quad)?,
        tridot: to_u64(tridot)?,
    })
}

/// Five-point type counts from the sums, cross-checked against every
/// independent relation the sums satisfy.
pub fn count5_from_regions(a: &AggregateSums) -> Result<TypeCounts5, CountingError> {
    let same = a.sum_gamma_pair_binom; // 5·pentagon + 2·four_hull
    let diff = a.sum_gamma_cross; // 5·pentagon + four_hull
    let four_hull = same - diff;
    let five_pent = 2 * diff - same;
    if four_hull < 0 || five_pent < 0 {
        return Err(CountingError::InconsistentCounts("negative type count"));
    }
    if five_pent % 5 != 0 {
        return Err(CountingError::InconsistentCounts(
            "pentagon count not integral",
        ));
    }
    let pentagon = five_pent / 5;
    let three_hull = a.sum_beta_cross;

    let c5 = binom(a.n, 5)?;
    let ck = |ok: bool, what: &'static str| {
        if ok {
            Ok(())
        } else {
            Err(CountingError::InconsistentCounts(what))
        }
    };
    ck(
        4 * pentagon == 4 * c5 - a.sum_beta_gamma,
        "4·pentagon != 4·C(n,5) - Σβγ",
    )?;
    ck(
        pentagon + four_hull + three_hull == c5,
        "type counts do not sum to C(n,5)",
    )?;
    ck(
        a.sum_beta_pair_binom == four_hull + 2 * three_hull,
        "Σ C(β_i,2) != U + 2·▲▲",
    )?;
    let n4 = a.n as i128 - 4;
    ck(
        n4 * a.sum_gamma == 4 * (5 * pentagon + 3 * four_hull + three_hull),
        "(n-4)·quad != 5·pentagon + 3·U + ▲▲",
    )?;

    Ok(TypeCounts5 {
        pentagon: to_u64(pentagon)?,
        four_hull: to_u64(four_hull)?,
        three_hull: to_u64(three_hull)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn parabola(n: i64) -> Placement {
        Placement::new((0..n).map(|i| Point::new(i, i * i)).collect()).unwrap()
    }

    fn square_center() -> Placement {
        Placement::from_coords(&[(0, 0), (6, 0), (6, 6), (0, 6), (3, 2)]).unwrap()
    }

    fn t2() -> Placement {
        Placement::from_coords(&[(0, 0), (12, 0), (0, 12), (3, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 5), Some(1));
        assert_eq!(binomial(16, 5), Some(4368));
        assert_eq!(binomial(25, 5), Some(53130));
        assert_eq!(binomial(3, 4), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
    }

    #[test]
    fn naive_examples() {
        assert_eq!(
            count4_naive(&parabola(6)),
            TypeCounts4 {
                quad: 15,
                tridot: 0
            }
        );
        assert_eq!(
            count4_naive(&square_center()),
            TypeCounts4 { quad: 3, tridot: 2 }
        );
        assert_eq!(count4_naive(&t2()), TypeCounts4 { quad: 1, tridot: 4 });

        let c = count5_naive(&parabola(7));
        assert_eq!((c.pentagon, c.four_hull, c.three_hull), (21, 0, 0));
        let c = count5_naive(&square_center());
        assert_eq!((c.pentagon, c.four_hull, c.three_hull), (0, 1, 0));
        let c = count5_naive(&t2());
        assert_eq!((c.pentagon, c.four_hull, c.three_hull), (0, 0, 1));
    }

    #[test]
    fn region_count_examples() {
        let p = parabola(6);
        for (_, rc) in region_table(&p).unwrap() {
            assert_eq!((rc.interior, rc.beta_total(), rc.gamma_total()), (0, 0, 3));
        }

        // (-1,-1), (0,0), (1,1), (7,7) share the line y = x, so this is not a
        // placement; the triangle-relative counts are still well defined.
        let tri = [Point::new(0, 0), Point::new(6, 0), Point::new(0, 6)];
        let extra = [Point::new(1, 1), Point::new(7, 7), Point::new(-1, -1)];
        let rc = region_counts_of(tri, &extra).unwrap();
        assert_eq!(rc.interior, 1);
        assert_eq!(rc.gamma_total(), 1);
        assert_eq!(rc.beta_total(), 1);
        assert_eq!(rc.gamma, [1, 0, 0]);
        assert_eq!(rc.beta, [1, 0, 0]);

        let p = parabola(3);
        assert_eq!(
            region_counts(&p, canonical_triangle(&p, 0, 1, 2)),
            RegionCounts::default()
        );
    }

    #[test]
    fn aggregate_examples() {
        let a = aggregate_regions(&parabola(6)).unwrap();
        assert_eq!((a.sum_gamma, a.sum_beta, a.sum_interior), (60, 0, 0));
        assert_eq!(a.triangles, 20);

        let a = aggregate_regions(&square_center()).unwrap();
        assert_eq!((a.sum_gamma, a.sum_beta), (12, 6));

        let a = aggregate_regions(&parabola(3)).unwrap();
        assert_eq!(
            a,
            AggregateSums {
                n: 3,
                triangles: 1,
                ..AggregateSums::default()
            }
        );
    }

    #[test]
    fn derived_count_examples() {
        let c = count5_from_regions(&aggregate_regions(&parabola(7)).unwrap()).unwrap();
        assert_eq!((c.pentagon, c.four_hull, c.three_hull), (21, 0, 0));
        let a = aggregate_regions(&parabola(7)).unwrap();
        assert_eq!((a.sum_gamma_pair_binom, a.sum_gamma_cross), (105, 105));

        let c = count5_from_regions(&aggregate_regions(&square_center()).unwrap()).unwrap();
        assert_eq!((c.pentagon, c.four_hull, c.three_hull), (0, 1, 0));

        assert_eq!(
            count4_from_regions(&aggregate_regions(&parabola(6)).unwrap()).unwrap(),
            TypeCounts4 {
                quad: 15,
                tridot: 0
            }
        );
        assert_eq!(
            count4_from_regions(&aggregate_regions(&square_center()).unwrap()).unwrap(),
            TypeCounts4 { quad: 3, tridot: 2 }
        );
        assert_eq!(
            count4_from_regions(&aggregate_regions(&t2()).unwrap()).unwrap(),
            TypeCounts4 { quad: 1, tridot: 4 }
        );
    }

    #[test]
    fn corrupted_sums_are_rejected() {
        let mut a = aggregate_regions(&square_center()).unwrap();
        a.sum_gamma += 4;
        assert!(matches!(
            count4_from_regions(&a),
            Err(CountingError::InconsistentCounts(_))
        ));
        assert!(matches!(
            count5_from_regions(&a),
            Err(CountingError::InconsistentCounts(_))
        ));

        let mut a = aggregate_regions(&parabola(7)).unwrap();
        a.sum_beta_cross += 1;
        assert!(matches!(
            count5_from_regions(&a),
            Err(CountingError::InconsistentCounts(_))
        ));

        let mut a = aggregate_regions(&parabola(7)).unwrap();
        a.sum_gamma_pair_binom += 5;
        a.sum_gamma_cross += 5;
        assert!(count5_from_regions(&a).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let mut a = AggregateSums::empty(5);
        a.sum_gamma = i128::MAX;
        let rc = RegionCounts {
            gamma: [1, 0, 0],
            ..Default::default()
        };
        assert_eq!(a.accumulate(&rc), Err(CountingError::Overflow));
        let mut b = AggregateSums::empty(5);
        b.sum_beta_cross = i128::MAX;
        let mut c = AggregateSums::empty(5);
        c.sum_beta_cross = 1;
        assert_eq!(b.merge(&c), Err(CountingError::Overflow));
    }

    #[test]
    fn region_table_is_limited() {
        let p = parabola(61);
        assert_eq!(region_table(&p), Err(CountingError::TableTooLarge(61)));
    }

    #[test]
    fn delta_examples() {
        let sq = square_center();
        for i in 0..5 {
            assert_eq!(delta_count5(&sq, i), count5_naive(&sq));
        }
        let p = parabola(7);
        for i in 0..7 {
            assert_eq!(
                delta_count5(&p, i),
                TypeCounts5 {
                    pentagon: 15,
                    four_hull: 0,
                    three_hull: 0
                }
            );
        }
    }

    #[test]
    fn partitions_merge_to_whole() {
        let p = Placement::from_coords(&[
            (0, 0),
            (17, 3),
            (5, 22),
            (-8, 9),
            (11, -13),
            (3, 4),
            (-2, -7),
            (14, 15),
            (-9, -1),
        ])
        .unwrap();
        let whole = aggregate_regions(&p).unwrap();
        for parts in 1..5 {
            let mut acc = AggregateSums::empty(p.len());
            for part in (0..parts).rev() {
                acc.merge(&aggregate_partition(&p, part, parts).unwrap())
                    .unwrap();
            }
            assert_eq!(acc, whole);
        }
    }
}
