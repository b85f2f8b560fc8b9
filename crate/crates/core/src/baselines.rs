//! Reference schemes: per-target rounding and the L-shaped tree.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::grid::GridPoint;
use crate::ray_system::{DigitalRay, ParentChoice, RaySystem};
use crate::verifier::{check_s3, RayFamily, S3Violation};

/// `round(num / den)` with halves rounded down, for `den > 0`.
fn round_half_down(num: i64, den: i64) -> i64 {
    Integer::div_ceil(&(2 * num - den), &(2 * den))
}

/// Ray to `target` that, on every diagonal, takes the lattice point nearest
/// to the segment, rounding halves toward smaller x.
pub fn rounding_ray(target: GridPoint) -> Result<DigitalRay> {
    if target.is_origin() {
        return Err(Error::OriginInput);
    }
    if !target.in_first_quadrant() {
        return Err(Error::NotInFirstQuadrant(target));
    }
    let n = target.diagonal();
    Ok(DigitalRay::from_points(
        (0..=n)
            .map(|d| {
                let x = round_half_down(d * target.x, n);
                GridPoint::new(x, d - x)
            })
            .collect(),
    ))
}

/// The rounding rays of every target up to a bound. Not a tree, so it is
/// only available as a [`RayFamily`].
#[derive(Clone, Copy, Debug)]
pub struct RoundingScheme {
    pub bound: u32,
}

impl RayFamily for RoundingScheme {
    fn bound(&self) -> u32 {
        self.bound
    }

    fn ray_points(&self, target: GridPoint) -> Vec<GridPoint> {
        rounding_ray(target).map(DigitalRay::into_points).unwrap_or_default()
    }
}

/// First subsegment failure of the rounding scheme with targets up to
/// diagonal `bound`, if any.
pub fn find_s3_violation_rounding(bound: u32) -> Option<S3Violation> {
    check_s3(&RoundingScheme { bound }).err()
}

/// Every interior point takes its left neighbour: rays climb the y-axis and
/// then run right. A consistent ray system with no inner leaves.
pub fn lpath_system(bound: u32) -> RaySystem {
    RaySystem::from_interior_fn(bound, |_| ParentChoice::Left)
}
