//! Parent-map representation of a weak consistent digital ray system.
//!
//! Every first-quadrant point `p` with `1 <= D(p) <= N` picks exactly one
//! parent, `p↓` or `p←`, on the previous diagonal. The ray to `p` is the walk
//! back to the origin. Because each point has a single parent, rays through
//! a common point share their prefix, so the subsegment property holds by
//! construction. Other quadrants are handled by reflecting coordinates.

mod analysis;
mod json;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridPoint;

pub use analysis::{cone, cone_width, grid_points_in_cone, Cone};
pub use json::{ChoiceEntry, ParentMapDocument};

/// Which neighbour a point takes as its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ParentChoice {
    /// `p↓ = (x, y - 1)`
    Down,
    /// `p← = (x - 1, y)`
    Left,
}

impl ParentChoice {
    pub fn parent_of(self, p: GridPoint) -> GridPoint {
        match self {
            ParentChoice::Down => p.down(),
            ParentChoice::Left => p.left(),
        }
    }

    /// The choice forced on axis points, if any. `None` for interior points.
    pub fn forced(p: GridPoint) -> Option<ParentChoice> {
        if p.x == 0 {
            Some(ParentChoice::Down)
        } else if p.y == 0 {
            Some(ParentChoice::Left)
        } else {
            None
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ParentChoice::Down => "D",
            ParentChoice::Left => "L",
        }
    }
}

/// Index of a first-quadrant point in diagonal-major order.
#[inline]
pub(crate) fn tri_index(p: GridPoint) -> usize {
    let d = p.diagonal() as usize;
    d * (d + 1) / 2 + p.x as usize
}

/// Number of first-quadrant points with `D(p) <= n`, origin included.
#[inline]
pub(crate) fn tri_len(n: u32) -> usize {
    let n = n as usize;
    (n + 1) * (n + 2) / 2
}

/// A weak consistent digital ray system bounded at diagonal `N`.
#[derive(Clone, PartialEq, Eq)]
pub struct RaySystem {
    bound: u32,
    // Indexed by `tri_index`; slot 0 (the origin) is unused.
    choices: Vec<ParentChoice>,
}

impl fmt::Debug for RaySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RaySystem").field("bound", &self.bound).finish_non_exhaustive()
    }
}

impl RaySystem {
    /// Builds a system by asking `choose` for every interior point.
    /// Axis points are forced and never passed to `choose`.
    pub fn from_interior_fn<F>(bound: u32, mut choose: F) -> RaySystem
    where
        F: FnMut(GridPoint) -> ParentChoice,
    {
        let mut choices = vec![ParentChoice::Down; tri_len(bound)];
        for p in domain_points(bound) {
            choices[tri_index(p)] = ParentChoice::forced(p).unwrap_or_else(|| choose(p));
        }
        RaySystem { bound, choices }
    }

    /// Builds a system from a choice for every domain point, axis points
    /// included; rejects choices that would leave the quadrant.
    pub fn try_from_fn<F>(bound: u32, mut choose: F) -> Result<RaySystem>
    where
        F: FnMut(GridPoint) -> ParentChoice,
    {
        let mut choices = vec![ParentChoice::Down; tri_len(bound)];
        for p in domain_points(bound) {
            let c = choose(p);
            check_axis(p, c)?;
            choices[tri_index(p)] = c;
        }
        Ok(RaySystem { bound, choices })
    }

    /// Builds a system from explicit `(point, choice)` pairs. Every domain
    /// point must appear exactly once.
    pub fn from_choices<I>(bound: u32, entries: I) -> Result<RaySystem>
    where
        I: IntoIterator<Item = (GridPoint, ParentChoice)>,
    {
        let mut slots: Vec<Option<ParentChoice>> = vec![None; tri_len(bound)];
        for (p, c) in entries {
            if !p.in_first_quadrant() {
                return Err(Error::NotInFirstQuadrant(p));
            }
            if p.is_origin() || p.diagonal() > i64::from(bound) {
                return Err(Error::OutOfBounds { point: p, bound });
            }
            check_axis(p, c)?;
            let slot = &mut slots[tri_index(p)];
            if slot.is_some() {
                return Err(Error::DuplicateChoice(p));
            }
            *slot = Some(c);
        }
        let mut choices = vec![ParentChoice::Down; slots.len()];
        for p in domain_points(bound) {
            choices[tri_index(p)] = slots[tri_index(p)].ok_or(Error::MissingChoice(p))?;
        }
        Ok(RaySystem { bound, choices })
    }

    /// Copy of this system with the choice at `p` replaced.
    pub fn with_choice(&self, p: GridPoint, choice: ParentChoice) -> Result<RaySystem> {
        if !self.in_domain(p) {
            return Err(Error::OutOfBounds { point: p, bound: self.bound });
        }
        check_axis(p, choice)?;
        let mut out = self.clone();
        out.choices[tri_index(p)] = choice;
        Ok(out)
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// True for first-quadrant `p != o` with `D(p) <= N`.
    pub fn in_domain(&self, p: GridPoint) -> bool {
        p.in_first_quadrant() && !p.is_origin() && p.diagonal() <= i64::from(self.bound)
    }

    /// Like [`in_domain`](Self::in_domain) but also admits the origin.
    pub fn contains(&self, p: GridPoint) -> bool {
        p.is_origin() || self.in_domain(p)
    }

    pub fn choice(&self, p: GridPoint) -> Option<ParentChoice> {
        self.in_domain(p).then(|| self.choices[tri_index(p)])
    }

    pub(crate) fn choice_unchecked(&self, p: GridPoint) -> ParentChoice {
        self.choices[tri_index(p)]
    }

    pub fn parent(&self, p: GridPoint) -> Option<GridPoint> {
        self.choice(p).map(|c| c.parent_of(p))
    }

    /// Points on the next diagonal that picked `p` as their parent, upper
    /// child first.
    pub fn children(&self, p: GridPoint) -> impl Iterator<Item = GridPoint> + '_ {
        let up = p.up();
        let right = p.right();
        let up = (self.choice(up) == Some(ParentChoice::Down)).then_some(up);
        let right = (self.choice(right) == Some(ParentChoice::Left)).then_some(right);
        up.into_iter().chain(right)
    }

    /// Domain points (origin excluded) in `(diagonal, x)` order.
    pub fn points(&self) -> impl Iterator<Item = GridPoint> {
        domain_points(self.bound)
    }

    /// `(point, choice)` pairs in `(diagonal, x)` order.
    pub fn entries(&self) -> impl Iterator<Item = (GridPoint, ParentChoice)> + '_ {
        self.points().map(move |p| (p, self.choice_unchecked(p)))
    }

    /// The digital ray from the origin to `p`.
    pub fn ray(&self, p: GridPoint) -> Result<DigitalRay> {
        if !self.contains(p) {
            return Err(Error::OutOfBounds { point: p, bound: self.bound });
        }
        let mut points = Vec::with_capacity(p.diagonal() as usize + 1);
        let mut cur = p;
        points.push(cur);
        while !cur.is_origin() {
            cur = self.choice_unchecked(cur).parent_of(cur);
            points.push(cur);
        }
        points.reverse();
        Ok(DigitalRay { points })
    }

    /// The ray to any `q` with `|q.x| + |q.y| <= N`, obtained by reflecting
    /// `q` into the first quadrant and reflecting the path back.
    pub fn ray_in_z2(&self, q: GridPoint) -> Result<DigitalRay> {
        let sx = if q.x < 0 { -1 } else { 1 };
        let sy = if q.y < 0 { -1 } else { 1 };
        let folded = GridPoint::new(q.x * sx, q.y * sy);
        if folded.diagonal() > i64::from(self.bound) {
            return Err(Error::OutOfBounds { point: q, bound: self.bound });
        }
        let ray = self.ray(folded)?;
        Ok(DigitalRay {
            points: ray.points.into_iter().map(|p| GridPoint::new(p.x * sx, p.y * sy)).collect(),
        })
    }
}

fn check_axis(p: GridPoint, c: ParentChoice) -> Result<()> {
    match (ParentChoice::forced(p), c) {
        (Some(forced), c) if forced != c => Err(Error::AxisViolation { point: p, parent: c.tag() }),
        _ => Ok(()),
    }
}

/// First-quadrant points with `1 <= D(p) <= bound` in `(diagonal, x)` order.
pub(crate) fn domain_points(bound: u32) -> impl Iterator<Item = GridPoint> {
    (1..=i64::from(bound)).flat_map(|d| (0..=d).map(move |x| GridPoint::new(x, d - x)))
}

/// Ordered grid path from the origin to a target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitalRay {
    points: Vec<GridPoint>,
}

impl DigitalRay {
    /// Wraps an arbitrary point sequence without validation.
    pub fn from_points(points: Vec<GridPoint>) -> DigitalRay {
        DigitalRay { points }
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<GridPoint> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn target(&self) -> Option<GridPoint> {
        self.points.last().copied()
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        self.points.contains(&p)
    }
}
