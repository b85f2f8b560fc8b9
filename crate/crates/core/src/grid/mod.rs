//! Lattice points, diagonals, slopes and exact line/diagonal intersections.
//!
//! Everything here is exact. `ℓ(p)` is the Euclidean line through the origin
//! and `p`; a point is *above* `ℓ(q)` when its slope is strictly larger and
//! *below* otherwise, so points on the line count as below.

mod rational;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use rational::Rational;

/// Integer lattice point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub const ORIGIN: GridPoint = GridPoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        GridPoint { x, y }
    }

    pub fn is_origin(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn in_first_quadrant(self) -> bool {
        self.x >= 0 && self.y >= 0
    }

    /// `x + y`. Only meaningful as a diagonal index in the first quadrant.
    pub fn diagonal(self) -> i64 {
        self.x + self.y
    }

    pub fn left(self) -> Self {
        GridPoint::new(self.x - 1, self.y)
    }

    pub fn down(self) -> Self {
        GridPoint::new(self.x, self.y - 1)
    }

    pub fn right(self) -> Self {
        GridPoint::new(self.x + 1, self.y)
    }

    pub fn up(self) -> Self {
        GridPoint::new(self.x, self.y + 1)
    }

    /// `(x - 1, y + 1)`: the upper neighbour on the same diagonal.
    pub fn north_west(self) -> Self {
        GridPoint::new(self.x - 1, self.y + 1)
    }

    /// `(x + 1, y - 1)`: the lower neighbour on the same diagonal.
    pub fn south_east(self) -> Self {
        GridPoint::new(self.x + 1, self.y - 1)
    }

    /// True when the two points differ by exactly one unit step.
    pub fn is_unit_neighbor(self, other: GridPoint) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() == 1
    }

    /// Swaps the coordinates (reflection in the line `y = x`).
    pub fn transposed(self) -> Self {
        GridPoint::new(self.y, self.x)
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Debug for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<(i64, i64)> for GridPoint {
    fn from((x, y): (i64, i64)) -> Self {
        GridPoint::new(x, y)
    }
}

/// Slope of `ℓ(p)`; vertical lines have slope `Infinity`, which sorts above
/// every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinity => f.write_str("inf"),
        }
    }
}

/// Point with rational coordinates lying on some diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

/// Side of `ℓ(q)` a point lies on. Points on the line are `Below`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineSide {
    Above,
    Below,
}

pub fn diagonal(p: GridPoint) -> i64 {
    p.diagonal()
}

pub fn slope(p: GridPoint) -> Result<Slope> {
    if p.is_origin() {
        return Err(Error::OriginInput);
    }
    if p.x == 0 {
        Ok(Slope::Infinity)
    } else {
        Ok(Slope::Finite(Rational::new(p.y, p.x)))
    }
}

/// `Inter(ℓ(p), d)`: where the line through the origin and `p` crosses
/// diagonal `d`. Only first-quadrant `p` give a point on the diagonal.
pub fn intersect_diagonal(p: GridPoint, d: i64) -> Result<RationalPoint> {
    if p.is_origin() {
        return Err(Error::OriginInput);
    }
    if d < 0 {
        return Err(Error::NegativeDiagonal(d));
    }
    let s = p.diagonal();
    if s == 0 {
        // (k, -k) never meets a diagonal x + y = d > 0.
        return Err(Error::NotInFirstQuadrant(p));
    }
    Ok(RationalPoint {
        x: Rational::new(d * p.x, s),
        y: Rational::new(d * p.y, s),
    })
}

/// Compares two first-quadrant slopes `p.y/p.x` and `q.y/q.x` without division.
pub(crate) fn cmp_slopes(p: GridPoint, q: GridPoint) -> Ordering {
    match (p.x == 0, q.x == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        // x > 0 for both, so cross-multiplying preserves the order.
        (false, false) => (i128::from(p.y) * i128::from(q.x)).cmp(&(i128::from(q.y) * i128::from(p.x))),
    }
}

/// Side of `ℓ(q)` on which `p` lies, with ties resolved to `Below`.
pub fn compare_to_line(p: GridPoint, q: GridPoint) -> Result<LineSide> {
    if p.is_origin() || q.is_origin() {
        return Err(Error::OriginInput);
    }
    if !p.in_first_quadrant() {
        return Err(Error::NotInFirstQuadrant(p));
    }
    if !q.in_first_quadrant() {
        return Err(Error::NotInFirstQuadrant(q));
    }
    Ok(match cmp_slopes(p, q) {
        Ordering::Greater => LineSide::Above,
        _ => LineSide::Below,
    })
}

pub(crate) fn is_power_of_two(n: i64) -> bool {
    n > 0 && (n & (n - 1)) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gp(x: i64, y: i64) -> GridPoint {
        GridPoint::new(x, y)
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal(gp(0, 0)), 0);
        assert_eq!(diagonal(gp(3, 2)), 5);
        assert_eq!(diagonal(gp(5, 3)), 8);
    }

    #[test]
    fn slope_examples() {
        assert_eq!(slope(gp(2, 2)).unwrap(), Slope::Finite(Rational::integer(1)));
        assert_eq!(slope(gp(0, 4)).unwrap(), Slope::Infinity);
        assert_eq!(slope(gp(6, 2)).unwrap(), Slope::Finite(Rational::new(1, 3)));
        assert_eq!(slope(GridPoint::ORIGIN), Err(Error::OriginInput));
        assert!(Slope::Infinity > Slope::Finite(Rational::integer(1_000_000)));
    }

    #[test]
    fn intersection_examples() {
        let i = intersect_diagonal(gp(3, 3), 4).unwrap();
        assert_eq!((i.x, i.y), (Rational::integer(2), Rational::integer(2)));
        let i = intersect_diagonal(gp(1, 4), 1).unwrap();
        assert_eq!((i.x, i.y), (Rational::new(1, 5), Rational::new(4, 5)));
        let i = intersect_diagonal(gp(2, 3), 3).unwrap();
        assert_eq!((i.x, i.y), (Rational::new(6, 5), Rational::new(9, 5)));
        assert_eq!(intersect_diagonal(GridPoint::ORIGIN, 3), Err(Error::OriginInput));
        assert_eq!(intersect_diagonal(gp(1, 1), -1), Err(Error::NegativeDiagonal(-1)));
    }

    #[test]
    fn line_side_examples() {
        assert_eq!(compare_to_line(gp(2, 2), gp(2, 2)).unwrap(), LineSide::Below);
        assert_eq!(compare_to_line(gp(1, 3), gp(3, 1)).unwrap(), LineSide::Above);
        assert_eq!(compare_to_line(gp(5, 3), gp(2, 2)).unwrap(), LineSide::Below);
        assert_eq!(compare_to_line(gp(0, 3), gp(0, 1)).unwrap(), LineSide::Below);
        assert_eq!(compare_to_line(gp(0, 3), gp(9, 1)).unwrap(), LineSide::Above);
        assert_eq!(compare_to_line(GridPoint::ORIGIN, gp(1, 1)), Err(Error::OriginInput));
    }

    #[test]
    fn steps() {
        let p = gp(3, 2);
        assert_eq!(p.left(), gp(2, 2));
        assert_eq!(p.down(), gp(3, 1));
        assert_eq!(p.right(), gp(4, 2));
        assert_eq!(p.up(), gp(3, 3));
        assert_eq!(p.north_west(), gp(2, 3));
        assert_eq!(p.south_east(), gp(4, 1));
        assert!(p.is_unit_neighbor(p.up()));
        assert!(!p.is_unit_neighbor(p.north_west()));
    }

    fn q1_point() -> impl Strategy<Value = GridPoint> {
        (0i64..200, 0i64..200)
            .prop_filter("origin", |&(x, y)| x != 0 || y != 0)
            .prop_map(GridPoint::from)
    }

    proptest! {
        #[test]
        fn intersection_lies_on_diagonal(p in q1_point(), d in 0i64..5000) {
            let i = intersect_diagonal(p, d).unwrap();
            prop_assert_eq!(&i.x + &i.y, Rational::integer(d));
        }

        #[test]
        fn slope_is_scale_invariant(p in q1_point(), k in 1i64..50) {
            let scaled = GridPoint::new(k * p.x, k * p.y);
            prop_assert_eq!(slope(scaled).unwrap(), slope(p).unwrap());
        }

        #[test]
        fn line_side_matches_slope_order(p in q1_point(), q in q1_point()) {
            let side = compare_to_line(p, q).unwrap();
            let above = slope(p).unwrap() > slope(q).unwrap();
            prop_assert_eq!(side == LineSide::Above, above);
            // Exactly one side holds, and at most one of the pair is strictly above.
            let back = compare_to_line(q, p).unwrap();
            prop_assert!(!(side == LineSide::Above && back == LineSide::Above));
        }
    }
}
