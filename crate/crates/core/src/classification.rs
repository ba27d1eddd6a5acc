//! Canonical triangles, the seven-region partition a triangle induces on the
//! plane, and the hull-size types of 4- and 5-point subsets.
//!
//! Region slots follow one fixed convention: for a canonical triangle with
//! vertex slots `v1, v2, v3` (counter-clockwise), `Gamma(m)` is the edge region
//! across the edge opposite `v_m`, and `Beta(m)` is the corner region beyond
//! `v_m`. Every counting identity is symmetric in the slot labels.

use crate::geometry::{det, GeometryError, Placement, Point, Sign};

/// A triangle of a placement in canonical form: `v[0]` is the smallest index
/// and the vertices run counter-clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TriangleRef {
    pub v: [usize; 3],
}

impl TriangleRef {
    pub fn contains(&self, i: usize) -> bool {
        self.v.contains(&i)
    }
}

/// Region of a point relative to a canonical triangle. Slots are `1..=3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    Interior,
    Beta(u8),
    Gamma(u8),
}

impl RegionLabel {
    /// Zero-based slot for `Beta`/`Gamma`, `None` for `Interior`.
    pub fn slot_index(self) -> Option<usize> {
        match self {
            RegionLabel::Interior => None,
            RegionLabel::Beta(m) | RegionLabel::Gamma(m) => Some(m as usize - 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Type4 {
    ConvexQuad,
    TriDot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Type5 {
    Pentagon,
    FourHull,
    ThreeHull,
}

/// Canonical form of the unordered triple `{i, j, k}`.
///
/// Panics if an index is out of range or the indices are not distinct.
pub fn canonical_triangle(p: &Placement, i: usize, j: usize, k: usize) -> TriangleRef {
    assert!(
        i != j && j != k && i != k,
        "triangle indices must be distinct"
    );
    let mut v = [i, j, k];
    v.sort_unstable();
    if p.orient(v[0], v[1], v[2]) == Sign::Cw {
        v.swap(1, 2);
    }
    TriangleRef { v }
}

/// Maps the three edge-side signs to a region; `s[m]` is the sign of
/// `orientation(v_{m+1}, v_{m+2}, x)` (zero-based, indices mod 3).
#[inline]
pub(crate) fn label_from_signs(s: [bool; 3]) -> RegionLabel {
    // `true` = strictly left of the directed edge (inside half-plane).
    match s {
        [true, true, true] => RegionLabel::Interior,
        [false, true, true] => RegionLabel::Gamma(1),
        [true, false, true] => RegionLabel::Gamma(2),
        [true, true, false] => RegionLabel::Gamma(3),
        [true, false, false] => RegionLabel::Beta(1),
        [false, true, false] => RegionLabel::Beta(2),
        [false, false, true] => RegionLabel::Beta(3),
        [false, false, false] => {
            unreachable!("no point lies outside all three edges of a ccw triangle")
        }
    }
}

/// Region of `x` relative to the counter-clockwise triangle `tri`.
pub fn region_of(tri: [Point; 3], x: Point) -> Result<RegionLabel, GeometryError> {
    let mut s = [false; 3];
    for (m, side) in s.iter_mut().enumerate() {
        let a = tri[(m + 1) % 3];
        let b = tri[(m + 2) % 3];
        *side = crate::geometry::orientation(a, b, x)? == Sign::Ccw;
    }
    Ok(label_from_signs(s))
}

/// Region of point `x` of the placement relative to the canonical triangle `t`.
///
/// Panics if `x` is a vertex of `t`.
#[inline]
pub fn classify_region(p: &Placement, t: TriangleRef, x: usize) -> RegionLabel {
    assert!(!t.contains(x), "point must not be a vertex of the triangle");
    let pts = p.points();
    let [a, b, c] = t.v.map(|i| pts[i]);
    let q = pts[x];
    label_from_signs([det(b, c, q) > 0, det(c, a, q) > 0, det(a, b, q) > 0])
}

/// Whether `x` is strictly inside triangle `abc` (either orientation).
#[inline]
pub fn strictly_inside(a: Point, b: Point, c: Point, x: Point) -> bool {
    let d1 = det(a, b, x).signum();
    let d2 = det(b, c, x).signum();
    let d3 = det(c, a, x).signum();
    d1 != 0 && d1 == d2 && d2 == d3
}

/// Type of four points in general position.
pub fn type4_of(q: [Point; 4]) -> Type4 {
    for skip in 0..4 {
        let [a, b, c] = others3(q, skip);
        if strictly_inside(a, b, c, q[skip]) {
            return Type4::TriDot;
        }
    }
    Type4::ConvexQuad
}

/// Number of convex-hull vertices of five points in general position.
pub fn hull_size5(q: [Point; 5]) -> usize {
    let mut inner = 0;
    for skip in 0..5 {
        let rest: [Point; 4] = core::array::from_fn(|i| q[if i < skip { i } else { i + 1 }]);
        let covered = (0..4).any(|drop| {
            let [a, b, c] = others3(rest, drop);
            strictly_inside(a, b, c, q[skip])
        });
        if covered {
            inner += 1;
        }
    }
    5 - inner
}

/// Type of five points in general position.
pub fn type5_of(q: [Point; 5]) -> Type5 {
    match hull_size5(q) {
        5 => Type5::Pentagon,
        4 => Type5::FourHull,
        3 => Type5::ThreeHull,
        h => unreachable!("five points in general position cannot have a hull of size {h}"),
    }
}

fn others3(q: [Point; 4], skip: usize) -> [Point; 3] {
    core::array::from_fn(|i| q[if i < skip { i } else { i + 1 }])
}

pub fn classify4(p: &Placement, s: [usize; 4]) -> Type4 {
    type4_of(s.map(|i| p[i]))
}

pub fn classify5(p: &Placement, s: [usize; 5]) -> Type5 {
    type5_of(s.map(|i| p[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn placement(coords: &[(i64, i64)]) -> Placement {
        Placement::from_coords(coords).unwrap()
    }

    #[test]
    fn canonical_triangle_examples() {
        let p = placement(&[(0, 0), (6, 0), (0, 6)]);
        assert_eq!(canonical_triangle(&p, 0, 1, 2).v, [0, 1, 2]);
        assert_eq!(canonical_triangle(&p, 0, 2, 1).v, [0, 1, 2]);
        assert_eq!(canonical_triangle(&p, 2, 1, 0).v, [0, 1, 2]);

        let q = placement(&[(0, 0), (0, 6), (6, 0)]);
        assert_eq!(canonical_triangle(&q, 0, 1, 2).v, [0, 2, 1]);
    }

    #[test]
    fn region_examples() {
        for (x, label) in [
            ((1, 1), RegionLabel::Interior),
            ((7, 7), RegionLabel::Gamma(1)),
            ((-1, -1), RegionLabel::Beta(1)),
        ] {
            let p = placement(&[(0, 0), (6, 0), (0, 6), x]);
            let t = canonical_triangle(&p, 0, 1, 2);
            assert_eq!(t.v, [0, 1, 2]);
            assert_eq!(classify_region(&p, t, 3), label);
        }
    }

    #[test]
    fn region_of_matches_placement_path() {
        let tri = [Point::new(0, 0), Point::new(6, 0), Point::new(0, 6)];
        assert_eq!(region_of(tri, Point::new(1, 1)), Ok(RegionLabel::Interior));
        assert_eq!(region_of(tri, Point::new(7, 7)), Ok(RegionLabel::Gamma(1)));
        assert_eq!(region_of(tri, Point::new(-1, -1)), Ok(RegionLabel::Beta(1)));
        assert_eq!(region_of(tri, Point::new(3, -1)), Ok(RegionLabel::Gamma(3)));
        assert_eq!(region_of(tri, Point::new(-1, 3)), Ok(RegionLabel::Gamma(2)));
        assert_eq!(region_of(tri, Point::new(8, -1)), Ok(RegionLabel::Beta(2)));
        assert_eq!(region_of(tri, Point::new(-1, 8)), Ok(RegionLabel::Beta(3)));
        assert!(region_of(tri, Point::new(3, 0)).is_err());
    }

    #[test]
    fn classify4_examples() {
        let sq = placement(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(classify4(&sq, [0, 1, 2, 3]), Type4::ConvexQuad);
        let tri = placement(&[(0, 0), (6, 0), (0, 6), (1, 1)]);
        assert_eq!(classify4(&tri, [0, 1, 2, 3]), Type4::TriDot);
        let par = placement(&[(0, 0), (1, 1), (2, 4), (3, 9)]);
        assert_eq!(classify4(&par, [0, 1, 2, 3]), Type4::ConvexQuad);
    }

    #[test]
    fn classify5_examples() {
        let par = placement(&[(0, 0), (1, 1), (2, 4), (3, 9), (4, 16)]);
        assert_eq!(classify5(&par, [0, 1, 2, 3, 4]), Type5::Pentagon);
        let sq = placement(&[(0, 0), (6, 0), (6, 6), (0, 6), (3, 2)]);
        assert_eq!(classify5(&sq, [0, 1, 2, 3, 4]), Type5::FourHull);
        let t2 = placement(&[(0, 0), (12, 0), (0, 12), (3, 2), (2, 3)]);
        assert_eq!(classify5(&t2, [0, 1, 2, 3, 4]), Type5::ThreeHull);
    }

    /// Hull size via the textbook definition: `q[i]` is a hull vertex iff some
    /// line through it has all other points strictly on one side, i.e. some
    /// directed edge `(q[i], q[j])` has every other point on its left.
    fn hull_size_by_edges(q: &[Point]) -> usize {
        (0..q.len())
            .filter(|&i| {
                (0..q.len()).any(|j| {
                    j != i
                        && (0..q.len())
                            .filter(|&k| k != i && k != j)
                            .all(|k| det(q[i], q[j], q[k]) > 0)
                })
            })
            .count()
    }

    fn small_placement(max: usize) -> impl Strategy<Value = Placement> {
        proptest::collection::vec((-40i64..=40, -40i64..=40), 5..=max)
            .prop_filter_map("general position", |c| Placement::from_coords(&c).ok())
    }

    proptest! {
        #[test]
        fn region_partition_and_consistency(p in small_placement(9)) {
            let n = p.len();
            for i in 0..n { for j in i+1..n { for k in j+1..n {
                let t = canonical_triangle(&p, i, j, k);
                prop_assert_eq!(t.v[0], i);
                prop_assert_eq!(p.orient(t.v[0], t.v[1], t.v[2]), Sign::Ccw);
                for x in (0..n).filter(|x| !t.contains(*x)) {
                    let label = classify_region(&p, t, x);
                    let ty = classify4(&p, [t.v[0], t.v[1], t.v[2], x]);
                    let convex = matches!(label, RegionLabel::Gamma(_));
                    prop_assert_eq!(convex, ty == Type4::ConvexQuad);
                    if let RegionLabel::Beta(m) = label {
                        let m = m as usize - 1;
                        let a = p[t.v[(m + 1) % 3]];
                        let b = p[t.v[(m + 2) % 3]];
                        prop_assert!(strictly_inside(p[x], a, b, p[t.v[m]]));
                    } else {
                        for m in 0..3 {
                            let a = p[t.v[(m + 1) % 3]];
                            let b = p[t.v[(m + 2) % 3]];
                            prop_assert!(!strictly_inside(p[x], a, b, p[t.v[m]]));
                        }
                    }
                }
            }}}
        }

        #[test]
        fn classify5_agrees_with_edge_hull(p in small_placement(7)) {
            let pts: Vec<Point> = p.points().to_vec();
            let n = pts.len();
            for a in 0..n { for b in a+1..n { for c in b+1..n { for d in c+1..n { for e in d+1..n {
                let q = [pts[a], pts[b], pts[c], pts[d], pts[e]];
                prop_assert_eq!(hull_size5(q), hull_size_by_edges(&q));
            }}}}}
        }
    }
}
