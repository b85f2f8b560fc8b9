//! Structural queries: split points, inner leaves, subtrees and cones.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{tri_index, tri_len, RaySystem};
use crate::error::{Error, Result};
use crate::grid::{intersect_diagonal, slope, GridPoint, Rational, Slope};

impl RaySystem {
    fn check_inner_diagonal(&self, d: i64) -> Result<()> {
        if d < 0 || d >= i64::from(self.bound) {
            return Err(Error::DiagonalOutOfRange { diagonal: d, bound: self.bound });
        }
        Ok(())
    }

    /// Number of points on the next diagonal that chose `p` as parent.
    pub fn child_count(&self, p: GridPoint) -> usize {
        self.children(p).count()
    }

    /// Points on diagonal `d` whose upper and right neighbours both chose
    /// them as parent. Requires `0 <= d < N`.
    pub fn split_points(&self, d: i64) -> Result<Vec<GridPoint>> {
        self.check_inner_diagonal(d)?;
        Ok(diagonal(d).filter(|&p| self.child_count(p) == 2).collect())
    }

    /// Points on diagonal `d` that no point on `d + 1` chose as parent.
    /// Requires `0 <= d < N`.
    pub fn inner_leaves(&self, d: i64) -> Result<Vec<GridPoint>> {
        self.check_inner_diagonal(d)?;
        Ok(diagonal(d).filter(|&p| self.child_count(p) == 0).collect())
    }

    pub fn count_inner_leaves_range(&self, lo: i64, hi: i64) -> Result<usize> {
        if lo > hi {
            return Err(Error::DiagonalOutOfRange { diagonal: lo, bound: self.bound });
        }
        self.check_inner_diagonal(lo)?;
        self.check_inner_diagonal(hi)?;
        let mut total = 0;
        for d in lo..=hi {
            total += self.inner_leaves(d)?.len();
        }
        Ok(total)
    }

    /// All points whose ray passes through `v`, `v` included.
    pub fn subtree(&self, v: GridPoint) -> Result<BTreeSet<GridPoint>> {
        if !self.contains(v) {
            return Err(Error::OutOfBounds { point: v, bound: self.bound });
        }
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(p) = stack.pop() {
            out.insert(p);
            stack.extend(self.children(p));
        }
        Ok(out)
    }

    /// For every point, the largest diagonal it extends to (its own
    /// diagonal when it is a leaf). Indexed like the choice table.
    pub fn reach_table(&self) -> ReachTable {
        let mut reach = vec![0u32; tri_len(self.bound)];
        for d in (0..=i64::from(self.bound)).rev() {
            for p in diagonal(d) {
                let own = d as u32;
                let best = self
                    .children(p)
                    .map(|c| reach[tri_index(c)])
                    .max()
                    .unwrap_or(own);
                reach[tri_index(p)] = best.max(own);
            }
        }
        ReachTable { bound: self.bound, reach }
    }
}

/// Maximum diagonal each point extends to. A point extends to every
/// diagonal between its own and its reach, since subtrees are connected.
#[derive(Clone, Debug)]
pub struct ReachTable {
    bound: u32,
    reach: Vec<u32>,
}

impl ReachTable {
    pub fn reach(&self, p: GridPoint) -> Option<u32> {
        (p.in_first_quadrant() && p.diagonal() <= i64::from(self.bound))
            .then(|| self.reach[tri_index(p)])
    }

    /// True when some point on diagonal `d` has `p` on its ray.
    pub fn extends_to(&self, p: GridPoint, d: i64) -> bool {
        match self.reach(p) {
            Some(r) => d >= p.diagonal() && d <= i64::from(r),
            None => false,
        }
    }
}

fn diagonal(d: i64) -> impl Iterator<Item = GridPoint> {
    (0..=d).map(move |x| GridPoint::new(x, d - x))
}

/// The wedge between the steepest and the shallowest origin lines through
/// a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    /// Point of maximum slope.
    pub top_point: GridPoint,
    /// Point of minimum slope.
    pub bottom_point: GridPoint,
    pub top: Slope,
    pub bottom: Slope,
}

pub fn cone(points: &[GridPoint]) -> Result<Cone> {
    let mut it = points.iter().copied();
    let first = it.next().ok_or(Error::EmptySet)?;
    let mut top = (slope(first)?, first);
    let mut bottom = top.clone();
    for p in it {
        let s = slope(p)?;
        if s > top.0 {
            top = (s.clone(), p);
        }
        if s < bottom.0 {
            bottom = (s, p);
        }
    }
    Ok(Cone { top_point: top.1, bottom_point: bottom.1, top: top.0, bottom: bottom.0 })
}

/// Horizontal distance on diagonal `d` between the cone's bounding lines.
pub fn cone_width(points: &[GridPoint], d: i64) -> Result<Rational> {
    let c = cone(points)?;
    let left = intersect_diagonal(c.top_point, d)?.x;
    let right = intersect_diagonal(c.bottom_point, d)?.x;
    Ok(right - left)
}

/// Lattice points on diagonal `d` lying in the closed cone, i.e. whose
/// x-coordinate falls between the two bounding intersections.
pub fn grid_points_in_cone(points: &[GridPoint], d: i64) -> Result<u64> {
    let c = cone(points)?;
    let left = intersect_diagonal(c.top_point, d)?.x;
    let right = intersect_diagonal(c.bottom_point, d)?.x;
    // ceil(left) ..= floor(right)
    let lo = -(-left).floor();
    let hi = right.floor();
    let count = hi - lo + BigInt::from(1);
    Ok(count.to_u64().unwrap_or(0))
}
