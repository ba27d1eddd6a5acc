//! Integer points, the exact orientation predicate and placement validation.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Neg;

/// Largest admissible absolute coordinate.
///
/// With |x|, |y| ≤ 10⁷ every orientation determinant is bounded by 8·10¹⁴ in
/// absolute value, far inside `i64`.
pub const COORD_BOUND: i64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn in_bounds(&self) -> bool {
        self.x.abs() <= COORD_BOUND && self.y.abs() <= COORD_BOUND
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Orientation of an ordered triple. A zero determinant has no `Sign`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Ccw,
    Cw,
}

impl Sign {
    /// `+1` for counter-clockwise, `-1` for clockwise.
    pub fn value(self) -> i8 {
        match self {
            Sign::Ccw => 1,
            Sign::Cw => -1,
        }
    }

    fn of(det: i64) -> Option<Sign> {
        match det.signum() {
            1 => Some(Sign::Ccw),
            -1 => Some(Sign::Cw),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Ccw => Sign::Cw,
            Sign::Cw => Sign::Ccw,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("points {0}, {1} and {2} are collinear")]
    Collinear(Point, Point, Point),
    #[error("point {0} exceeds the coordinate bound {COORD_BOUND}")]
    OutOfBounds(Point),
}

/// The cross product `(b - a) × (c - a)`.
///
/// Exact for in-bound points; callers outside this module are expected to
/// have checked the bound (every `Placement` has).
#[inline]
pub fn det(a: Point, b: Point, c: Point) -> i64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Exact orientation of the triple `(a, b, c)`.
pub fn orientation(a: Point, b: Point, c: Point) -> Result<Sign, GeometryError> {
    for p in [a, b, c] {
        if !p.in_bounds() {
            return Err(GeometryError::OutOfBounds(p));
        }
    }
    Sign::of(det(a, b, c)).ok_or(GeometryError::Collinear(a, b, c))
}

/// First reason a point sequence fails to be a placement in general position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("placement needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point #{0} exceeds the coordinate bound {COORD_BOUND}")]
    OutOfBounds(usize),
    #[error("points #{0} and #{1} coincide")]
    Duplicate(usize, usize),
    #[error("points #{0}, #{1} and #{2} are collinear")]
    Collinear(usize, usize, usize),
}

/// Checks bounds, distinctness and general position of `points`.
///
/// Scans bounds first, then all pairs for duplicates, then all `C(n,3)`
/// triples in lexicographic order, reporting the first violation found. Does
/// not enforce the minimum size; see [`Placement::new`].
pub fn validate_points(points: &[Point]) -> Result<(), Violation> {
    if let Some(i) = points.iter().position(|p| !p.in_bounds()) {
        return Err(Violation::OutOfBounds(i));
    }
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Err(Violation::Duplicate(i, j));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if det(points[i], points[j], points[k]) == 0 {
                    return Err(Violation::Collinear(i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// A validated point placement: at least three distinct in-bound points, no
/// three collinear.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    points: Vec<Point>,
}

impl Placement {
    pub fn new(points: Vec<Point>) -> Result<Self, Violation> {
        if points.len() < 3 {
            return Err(Violation::TooFewPoints(points.len()));
        }
        validate_points(&points)?;
        Ok(Self { points })
    }

    /// Convenience constructor from coordinate pairs.
    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self, Violation> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// Orientation of three points of the placement. Never collinear.
    #[inline]
    pub fn orient(&self, i: usize, j: usize, k: usize) -> Sign {
        let d = det(self.points[i], self.points[j], self.points[k]);
        debug_assert!(d != 0, "validated placement has a collinear triple");
        if d > 0 {
            Sign::Ccw
        } else {
            Sign::Cw
        }
    }

    /// The placement with point `index` removed, when at least three remain.
    pub fn without(&self, index: usize) -> Result<Placement, Violation> {
        let mut points = self.points.clone();
        points.remove(index);
        if points.len() < 3 {
            return Err(Violation::TooFewPoints(points.len()));
        }
        Ok(Placement { points })
    }
}

impl core::ops::Index<usize> for Placement {
    type Output = Point;

    fn index(&self, i: usize) -> &Point {
        &self.points[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    const O: Point = Point::new(0, 0);

    #[test]
    fn orientation_examples() {
        assert_eq!(
            orientation(O, Point::new(1, 0), Point::new(0, 1)),
            Ok(Sign::Ccw)
        );
        assert_eq!(
            orientation(O, Point::new(0, 1), Point::new(1, 0)),
            Ok(Sign::Cw)
        );
        assert!(matches!(
            orientation(O, Point::new(1, 1), Point::new(2, 2)),
            Err(GeometryError::Collinear(..))
        ));
    }

    #[test]
    fn orientation_rejects_out_of_bounds() {
        let far = Point::new(COORD_BOUND + 1, 0);
        assert_eq!(
            orientation(O, far, Point::new(0, 1)),
            Err(GeometryError::OutOfBounds(far))
        );
    }

    #[test]
    fn extreme_coordinates_do_not_overflow() {
        let b = COORD_BOUND;
        let a = Point::new(-b, -b);
        let c = Point::new(b, -b);
        let d = Point::new(-b, b);
        assert_eq!(det(a, c, d), 4 * b * b);
        assert_eq!(orientation(a, c, d), Ok(Sign::Ccw));
    }

    #[test]
    fn validation_examples() {
        let ok = [Point::new(0, 0), Point::new(1, 0), Point::new(0, 1)];
        assert_eq!(validate_points(&ok), Ok(()));

        let collinear = [
            Point::new(0, 0),
            Point::new(1, 1),
            Point::new(2, 2),
            Point::new(5, 0),
        ];
        assert_eq!(
            validate_points(&collinear),
            Err(Violation::Collinear(0, 1, 2))
        );

        let dup = [Point::new(0, 0), Point::new(0, 0), Point::new(1, 2)];
        assert_eq!(validate_points(&dup), Err(Violation::Duplicate(0, 1)));
    }

    #[test]
    fn placement_requires_three_points() {
        assert_eq!(Placement::new(vec![]), Err(Violation::TooFewPoints(0)));
        assert_eq!(
            Placement::from_coords(&[(0, 0), (1, 0)]),
            Err(Violation::TooFewPoints(2))
        );
        assert!(Placement::from_coords(&[(0, 0), (1, 0), (0, 1)]).is_ok());
    }

    fn coord() -> impl Strategy<Value = i64> {
        -1000i64..=1000
    }

    fn point() -> impl Strategy<Value = Point> {
        (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
    }

    proptest! {
        #[test]
        fn antisymmetric_and_cyclic(a in point(), b in point(), c in point()) {
            prop_assume!(det(a, b, c) != 0);
            let abc = orientation(a, b, c).unwrap();
            prop_assert_eq!(orientation(a, c, b).unwrap(), -abc);
            prop_assert_eq!(orientation(b, c, a).unwrap(), abc);
        }

        #[test]
        fn translation_invariant(a in point(), b in point(), c in point(), dx in coord(), dy in coord()) {
            prop_assume!(det(a, b, c) != 0);
            let moved = orientation(a.translate(dx, dy), b.translate(dx, dy), c.translate(dx, dy));
            prop_assert_eq!(moved.unwrap(), orientation(a, b, c).unwrap());
        }

        #[test]
        fn valid_placements_never_collinear(pts in proptest::collection::vec(point(), 3..9)) {
            if let Ok(p) = Placement::new(pts) {
                let n = p.len();
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            if i != j && j != k && i != k {
                                prop_assert!(orientation(p[i], p[j], p[k]).is_ok());
                            }
                        }
                    }
                }
            }
        }
    }
}
