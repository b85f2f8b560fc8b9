//! The error-1.5 construction.
//!
//! Diagonals `2^i` (`i >= 2`) carry a fixed pattern: interior points with odd
//! x split, interior points with even x are inner leaves. Between
//! `2^i` and `2^(i+1)` the plane is cut into zones by the origin lines through
//! the lattice points of diagonal `2^i`, and every point steers its ray toward
//! the middle of its zone.

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{compare_to_line, is_power_of_two, GridPoint, LineSide, Rational};
use crate::ray_system::{ParentChoice, RaySystem};

/// How to resolve an exact tie between the two candidates in the zone rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieBreak {
    #[default]
    Down,
    Left,
}

impl std::str::FromStr for TieBreak {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "down" => Ok(TieBreak::Down),
            "left" => Ok(TieBreak::Left),
            _ => Err(format!("unknown tie rule {s:?}, expected down|left")),
        }
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreak::Down => "down",
            TieBreak::Left => "left",
        })
    }
}

/// Zone `Z_i^j`: points with `2^i < D <= 2^(i+1)` that are below `ℓ(v_j)`
/// and above `ℓ(v_(j+1))`, where `v_k = (k, 2^i - k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZoneId {
    pub level: u32,
    pub index: i64,
}

impl ZoneId {
    pub fn new(level: u32, index: i64) -> Result<ZoneId> {
        if !(2..=61).contains(&level) || index < 1 || index > (1i64 << level) - 2 {
            return Err(Error::InvalidZone { level, index });
        }
        Ok(ZoneId { level, index })
    }

    fn ring_base(self) -> i64 {
        1i64 << self.level
    }

    /// Lattice point on diagonal `2^i` defining the upper boundary.
    pub fn upper_vertex(self) -> GridPoint {
        GridPoint::new(self.index, self.ring_base() - self.index)
    }

    /// Lattice point on diagonal `2^i` defining the lower boundary.
    pub fn lower_vertex(self) -> GridPoint {
        GridPoint::new(self.index + 1, self.ring_base() - self.index - 1)
    }

    pub fn ring_contains_diagonal(self, d: i64) -> bool {
        d > self.ring_base() && d <= 2 * self.ring_base()
    }

    /// Membership by the defining predicate (ring plus the two line tests).
    pub fn contains(self, p: GridPoint) -> bool {
        if !p.in_first_quadrant() || p.is_origin() || !self.ring_contains_diagonal(p.diagonal()) {
            return false;
        }
        self.meets_line(p)
    }

    /// True when `ℓ(p)` passes through the zone, i.e. `p` lies in the same
    /// wedge between the two boundary lines.
    pub fn meets_line(self, p: GridPoint) -> bool {
        compare_to_line(p, self.upper_vertex()) == Ok(LineSide::Below)
            && compare_to_line(p, self.lower_vertex()) == Ok(LineSide::Above)
    }
}

impl fmt::Display for ZoneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[{},{}]", self.level, self.index)
    }
}

/// The `i` with `2^i < d <= 2^(i+1)`, for `d >= 2`.
pub fn ring_level(d: i64) -> u32 {
    debug_assert!(d >= 2);
    63 - (d - 1).leading_zeros()
}

/// Zone of `p`, for points with both coordinates at least 2 past diagonal 4.
pub fn zone_of(p: GridPoint) -> Result<Option<ZoneId>> {
    if p.is_origin() {
        return Err(Error::OriginInput);
    }
    if !p.in_first_quadrant() {
        return Err(Error::NotInFirstQuadrant(p));
    }
    let d = p.diagonal();
    if p.x < 2 || p.y < 2 || d <= 4 {
        return Ok(None);
    }
    let level = ring_level(d);
    // Below ℓ(v_j) ⇔ j·D <= 2^i·x and above ℓ(v_(j+1)) ⇔ (j+1)·D > 2^i·x.
    let index = ((1i128 << level) * i128::from(p.x) / i128::from(d)) as i64;
    Ok(ZoneId::new(level, index).ok())
}

/// Zone of `p` found by testing every candidate zone of its ring with the
/// line predicates. Slow; used to validate [`zone_of`].
pub fn zone_of_by_definition(p: GridPoint) -> Result<Option<ZoneId>> {
    if p.is_origin() {
        return Err(Error::OriginInput);
    }
    if !p.in_first_quadrant() {
        return Err(Error::NotInFirstQuadrant(p));
    }
    let d = p.diagonal();
    if p.x < 2 || p.y < 2 || d <= 4 {
        return Ok(None);
    }
    let level = ring_level(d);
    let mut found = None;
    for index in 1..=(1i64 << level) - 2 {
        let z = ZoneId { level, index };
        if z.contains(p) {
            assert!(found.is_none(), "zones overlap at {p}");
            found = Some(z);
        }
    }
    Ok(found)
}

/// x-coordinate of the point on diagonal `d` at equal L∞ distance from the
/// two boundary lines of `zone`: the mean of their intersections with `d`.
pub fn zone_midpoint_x(zone: ZoneId, d: i64) -> Result<Rational> {
    if !zone.ring_contains_diagonal(d) {
        return Err(Error::DiagonalOutsideRing { diagonal: d, level: zone.level });
    }
    Ok(Rational::new(d * (2 * zone.index + 1), 2 * zone.ring_base()))
}

/// Which rule of the parent selection applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `x <= 1`, except `(1,0)`.
    NearYAxis,
    /// `y <= 1`.
    NearXAxis,
    /// `y = 2` on a power-of-two diagonal.
    PowerDiagonalRowTwo,
    /// The previous diagonal is a power of two: take the odd-x candidate.
    AfterPowerDiagonal,
    /// Closest candidate to the zone midpoint.
    ZoneMidpoint,
}

/// Parent choice for `p` and the rule that produced it.
pub fn choose_parent(p: GridPoint, tie: TieBreak) -> Result<(ParentChoice, Rule)> {
    if p.is_origin() {
        return Err(Error::OriginInput);
    }
    if !p.in_first_quadrant() {
        return Err(Error::NotInFirstQuadrant(p));
    }
    let d = p.diagonal();
    if p.x <= 1 && p != GridPoint::new(1, 0) {
        return Ok((ParentChoice::Down, Rule::NearYAxis));
    }
    if p.y <= 1 {
        return Ok((ParentChoice::Left, Rule::NearXAxis));
    }
    if p.y == 2 && is_power_of_two(d) {
        return Ok((ParentChoice::Down, Rule::PowerDiagonalRowTwo));
    }
    if is_power_of_two(d - 1) {
        // p↓ has x = p.x and p← has x = p.x - 1; exactly one is odd.
        let c = if p.x % 2 == 1 { ParentChoice::Down } else { ParentChoice::Left };
        return Ok((c, Rule::AfterPowerDiagonal));
    }
    let zone = zone_of(p)?.unwrap_or_else(|| unreachable!("{p} reached the zone rule without a zone"));
    // Scaled by 2^(i+1): midpoint = (d-1)(2j+1), candidates x·2^(i+1).
    let scale = 2 * i128::from(zone.ring_base());
    let mid = i128::from(d - 1) * i128::from(2 * zone.index + 1);
    let down = (i128::from(p.x) * scale - mid).abs();
    let left = (i128::from(p.x - 1) * scale - mid).abs();
    let c = match down.cmp(&left) {
        std::cmp::Ordering::Less => ParentChoice::Down,
        std::cmp::Ordering::Greater => ParentChoice::Left,
        std::cmp::Ordering::Equal => match tie {
            TieBreak::Down => ParentChoice::Down,
            TieBreak::Left => ParentChoice::Left,
        },
    };
    Ok((c, Rule::ZoneMidpoint))
}

/// Parent of `p` under the construction, ties toward `p↓`.
pub fn pick_parent(p: GridPoint) -> Result<GridPoint> {
    pick_parent_with(p, TieBreak::Down)
}

pub fn pick_parent_with(p: GridPoint, tie: TieBreak) -> Result<GridPoint> {
    Ok(choose_parent(p, tie)?.0.parent_of(p))
}

/// The construction restricted to diagonals `1..=bound`.
pub fn build_system(bound: u32) -> RaySystem {
    build_system_with(bound, TieBreak::Down)
}

pub fn build_system_with(bound: u32, tie: TieBreak) -> RaySystem {
    RaySystem::from_interior_fn(bound, |p| {
        choose_parent(p, tie).expect("interior points are valid inputs").0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(x: i64, y: i64) -> GridPoint {
        GridPoint::new(x, y)
    }

    #[test]
    fn zone_examples() {
        assert_eq!(zone_of(gp(3, 3)).unwrap(), Some(ZoneId { level: 2, index: 2 }));
        assert_eq!(zone_of(gp(6, 2)).unwrap(), None);
        assert_eq!(zone_of(gp(5, 3)).unwrap(), Some(ZoneId { level: 2, index: 2 }));
        assert_eq!(zone_of(gp(1, 7)).unwrap(), None);
        assert_eq!(zone_of(gp(2, 2)).unwrap(), None);
        assert_eq!(zone_of(GridPoint::ORIGIN), Err(Error::OriginInput));
    }

    #[test]
    fn midpoint_examples() {
        let z = |i, j| ZoneId::new(i, j).unwrap();
        assert_eq!(zone_midpoint_x(z(2, 2), 7).unwrap(), Rational::new(35, 8));
        assert_eq!(zone_midpoint_x(z(2, 1), 8).unwrap(), Rational::integer(3));
        assert_eq!(zone_midpoint_x(z(3, 4), 9).unwrap(), Rational::new(81, 16));
        assert!(matches!(zone_midpoint_x(z(2, 1), 4), Err(Error::DiagonalOutsideRing { .. })));
        assert!(matches!(zone_midpoint_x(z(2, 1), 9), Err(Error::DiagonalOutsideRing { .. })));
        assert!(ZoneId::new(2, 3).is_err());
        assert!(ZoneId::new(1, 1).is_err());
    }

    #[test]
    fn midpoint_is_equidistant() {
        // Distance on diagonal d to ℓ(v) is |x - d·v.x/2^i|.
        let z = ZoneId::new(3, 4).unwrap();
        let d = 9;
        let m = zone_midpoint_x(z, d).unwrap();
        let top = Rational::new(d * z.upper_vertex().x, 8);
        let bottom = Rational::new(d * z.lower_vertex().x, 8);
        assert_eq!((&m - &top).abs(), (&m - &bottom).abs());
    }

    #[test]
    fn parent_examples() {
        assert_eq!(pick_parent(gp(1, 0)).unwrap(), gp(0, 0));
        assert_eq!(pick_parent(gp(3, 2)).unwrap(), gp(3, 1));
        assert_eq!(pick_parent(gp(5, 3)).unwrap(), gp(4, 3));
        assert_eq!(pick_parent(gp(2, 2)).unwrap(), gp(2, 1));
        assert_eq!(pick_parent(GridPoint::ORIGIN), Err(Error::OriginInput));
        assert_eq!(choose_parent(gp(2, 2), TieBreak::Down).unwrap().1, Rule::PowerDiagonalRowTwo);
        assert_eq!(choose_parent(gp(5, 3), TieBreak::Down).unwrap().1, Rule::ZoneMidpoint);
    }

    #[test]
    fn zone_rule_always_finds_a_zone() {
        for d in 1..=1024i64 {
            for x in 0..=d {
                let p = gp(x, d - x);
                for tie in [TieBreak::Down, TieBreak::Left] {
                    let parent = pick_parent_with(p, tie).unwrap();
                    assert!(parent.in_first_quadrant());
                    assert_eq!(parent.diagonal(), d - 1);
                }
            }
        }
    }

    #[test]
    fn midpoint_never_ties() {
        // A tie needs (D-1)(2j+1) = 2^i (2x-1), i.e. D-1 divisible by exactly
        // 2^i, which no diagonal strictly inside the ring satisfies.
        for d in 6..=1024i64 {
            for x in 2..=d - 2 {
                let p = gp(x, d - x);
                let (a, _) = choose_parent(p, TieBreak::Down).unwrap();
                let (b, _) = choose_parent(p, TieBreak::Left).unwrap();
                assert_eq!(a, b, "{p}");
            }
        }
    }

    #[test]
    fn small_builds() {
        let sys = build_system(1);
        assert_eq!(sys.choice(gp(1, 0)), Some(ParentChoice::Left));
        assert_eq!(sys.choice(gp(0, 1)), Some(ParentChoice::Down));

        let sys = build_system(5);
        let d5: Vec<_> = (0..=5).map(|x| sys.choice(gp(x, 5 - x)).unwrap()).collect();
        use ParentChoice::{Down as D, Left as L};
        // (0,5) (1,4) (2,3) (3,2) (4,1) (5,0)
        assert_eq!(d5, vec![D, D, L, D, L, L]);
    }
}
