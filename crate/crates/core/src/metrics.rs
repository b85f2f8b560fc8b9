//! Exact L∞ error of points, rays and whole systems against the Euclidean
//! segment from the origin to each target, plus squared L2 error for
//! comparison.
//!
//! For a point `v` with `D(v) <= D(t)` the closest point of segment `o–t`
//! under L∞ is where `ℓ(t)` crosses diagonal `D(v)`, so the error reduces to
//! `|v.x - D(v)·t.x / D(t)|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridPoint, Rational};
use crate::ray_system::RaySystem;

/// Largest error over a set of rays, with where it happens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub max_error: Rational,
    /// Point of the ray at which the error is attained.
    pub witness_point: GridPoint,
    /// Endpoint of the ray that attains the maximum.
    pub witness_target: GridPoint,
    /// Diagonal of `witness_point`.
    pub diagonal: i64,
}

impl ErrorReport {
    fn zero() -> ErrorReport {
        ErrorReport {
            max_error: Rational::zero(),
            witness_point: GridPoint::ORIGIN,
            witness_target: GridPoint::ORIGIN,
            diagonal: 0,
        }
    }
}

/// Worst error among the targets of one diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalError {
    /// Diagonal of the targets.
    pub diagonal: i64,
    pub report: ErrorReport,
}

fn check_pair(v: GridPoint, target: GridPoint) -> Result<()> {
    if target.is_origin() {
        return Err(Error::OriginInput);
    }
    for p in [v, target] {
        if !p.in_first_quadrant() {
            return Err(Error::NotInFirstQuadrant(p));
        }
    }
    if v.diagonal() > target.diagonal() {
        return Err(Error::DiagonalOutOfRange {
            diagonal: v.diagonal(),
            bound: target.diagonal() as u32,
        });
    }
    Ok(())
}

/// L∞ distance from `v` to the segment from the origin to `target`.
pub fn point_error_linf(v: GridPoint, target: GridPoint) -> Result<Rational> {
    check_pair(v, target)?;
    let ideal = Rational::new(v.diagonal() * target.x, target.diagonal());
    Ok((Rational::integer(v.x) - ideal).abs())
}

/// Squared Euclidean distance from `v` to the segment from the origin to
/// `target`.
pub fn point_error_l2(v: GridPoint, target: GridPoint) -> Result<Rational> {
    check_pair(v, target)?;
    let dot = v.x * target.x + v.y * target.y;
    let len2 = target.x * target.x + target.y * target.y;
    let s = if dot <= 0 {
        Rational::zero()
    } else if dot >= len2 {
        Rational::integer(1)
    } else {
        Rational::new(dot, len2)
    };
    let dx = Rational::integer(v.x) - &s * &Rational::integer(target.x);
    let dy = Rational::integer(v.y) - &s * &Rational::integer(target.y);
    Ok(&dx * &dx + &dy * &dy)
}

/// Error of the ray to `target`, with the first point attaining it.
pub fn ray_error_report(sys: &RaySystem, target: GridPoint) -> Result<ErrorReport> {
    if !sys.in_domain(target) {
        return Err(Error::OutOfBounds { point: target, bound: sys.bound() });
    }
    let ray = sys.ray(target)?;
    let mut best = ErrorReport {
        max_error: Rational::zero(),
        witness_point: GridPoint::ORIGIN,
        witness_target: target,
        diagonal: 0,
    };
    for &v in ray.points() {
        let e = point_error_linf(v, target)?;
        if e > best.max_error {
            best.max_error = e;
            best.witness_point = v;
            best.diagonal = v.diagonal();
        }
    }
    Ok(best)
}

pub fn ray_error(sys: &RaySystem, target: GridPoint) -> Result<Rational> {
    Ok(ray_error_report(sys, target)?.max_error)
}

/// Worst ray of each target diagonal `1..=N`.
///
/// Walks the parent tree depth first, keeping the x-coordinates of the
/// current root path on a stack, so each target costs one pass over its
/// own ray and no pointer chasing. Errors are compared as integer
/// numerators over the common denominator `D(target)`.
pub fn per_diagonal_errors(sys: &RaySystem) -> Vec<DiagonalError> {
    let n = sys.bound() as usize;
    // (numerator, target x, witness diagonal) of the best target per diagonal.
    let mut best: Vec<Option<(i64, i64, usize)>> = vec![None; n + 1];
    let mut path_x = vec![0i64; n + 1];
    let mut stack: Vec<GridPoint> = sys.children(GridPoint::ORIGIN).collect();
    while let Some(p) = stack.pop() {
        let d = p.diagonal() as usize;
        path_x[d] = p.x;
        let num = ray_numerator(&path_x[..d], d as i64, p.x);
        let slot = &mut best[d];
        let better = match *slot {
            None => true,
            Some((b, bx, _)) => num > b || (num == b && p.x < bx),
        };
        if better {
            let k = first_hit(&path_x[..d], d as i64, p.x, num);
            *slot = Some((num, p.x, k));
        }
        stack.extend(sys.children(p));
    }
    (1..=n)
        .map(|d| {
            let (num, tx, k) = best[d].expect("every diagonal has a target");
            let target = GridPoint::new(tx, d as i64 - tx);
            let witness = if num == 0 {
                GridPoint::ORIGIN
            } else {
                sys.ray(target).expect("target in domain").points()[k]
            };
            DiagonalError {
                diagonal: d as i64,
                report: ErrorReport {
                    max_error: Rational::new(num, d as i64),
                    witness_point: witness,
                    witness_target: target,
                    diagonal: witness.diagonal(),
                },
            }
        })
        .collect()
}

#[inline]
fn ray_numerator(path: &[i64], d: i64, px: i64) -> i64 {
    let mut best = 0i64;
    let mut kp = 0i64;
    for &x in path {
        best = best.max((x * d - kp).abs());
        kp += px;
    }
    best
}

fn first_hit(path: &[i64], d: i64, px: i64, num: i64) -> usize {
    path.iter()
        .enumerate()
        .position(|(k, &x)| (x * d - k as i64 * px).abs() == num)
        .unwrap_or(0)
}

/// Largest ray error over every target of the system. Ties go to the target
/// with the smallest `(diagonal, x)`.
pub fn max_error(sys: &RaySystem) -> ErrorReport {
    max_of(per_diagonal_errors(sys).into_iter().map(|r| r.report))
}

/// Running maximum of the per-diagonal errors: entry `k` is the system
/// error when the bound is cut to `k + 1`.
pub fn prefix_max_errors(rows: &[DiagonalError]) -> Vec<ErrorReport> {
    let mut out: Vec<ErrorReport> = Vec::with_capacity(rows.len());
    for r in rows {
        let next = match out.last() {
            Some(prev) if prev.max_error >= r.report.max_error => prev.clone(),
            _ => r.report.clone(),
        };
        out.push(next);
    }
    out
}

fn max_of(reports: impl Iterator<Item = ErrorReport>) -> ErrorReport {
    let mut best: Option<ErrorReport> = None;
    for r in reports {
        if best.as_ref().is_none_or(|b| r.max_error > b.max_error) {
            best = Some(r);
        }
    }
    best.unwrap_or_else(ErrorReport::zero)
}

/// Reference evaluation: every target's ray, exact rationals throughout.
pub fn max_error_brute_force(sys: &RaySystem) -> ErrorReport {
    max_of(sys.points().map(|p| ray_error_report(sys, p).expect("domain point")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_system;
    use crate::ray_system::ParentChoice;

    fn gp(x: i64, y: i64) -> GridPoint {
        GridPoint::new(x, y)
    }

    #[test]
    fn linf_examples() {
        assert_eq!(point_error_linf(gp(2, 2), gp(3, 3)).unwrap(), Rational::zero());
        assert_eq!(point_error_linf(gp(1, 0), gp(1, 1)).unwrap(), Rational::new(1, 2));
        assert_eq!(point_error_linf(gp(3, 1), gp(3, 3)).unwrap(), Rational::integer(1));
        assert_eq!(point_error_linf(gp(0, 0), gp(5, 1)).unwrap(), Rational::zero());
        assert_eq!(point_error_linf(gp(1, 1), GridPoint::ORIGIN), Err(Error::OriginInput));
        assert!(point_error_linf(gp(4, 4), gp(1, 1)).is_err());
    }

    #[test]
    fn l2_examples() {
        assert_eq!(point_error_l2(gp(2, 1), gp(4, 2)).unwrap(), Rational::zero());
        assert_eq!(point_error_l2(gp(1, 0), gp(1, 1)).unwrap(), Rational::new(1, 2));
        // The perpendicular foot from (0,2) onto o–(2,0) is the origin.
        assert_eq!(point_error_l2(gp(0, 2), gp(2, 0)).unwrap(), Rational::integer(4));
        // Foot clamped to the far endpoint.
        assert_eq!(point_error_l2(gp(3, 0), gp(2, 1)).unwrap(), Rational::integer(2));
    }

    #[test]
    fn ray_error_examples() {
        let sys = build_system(6);
        assert_eq!(ray_error(&sys, gp(2, 2)).unwrap(), Rational::new(1, 2));
        assert_eq!(ray_error(&sys, gp(3, 3)).unwrap(), Rational::integer(1));
        assert_eq!(ray_error(&sys, gp(1, 4)).unwrap(), Rational::new(4, 5));
        let r = ray_error_report(&sys, gp(1, 4)).unwrap();
        assert_eq!(r.witness_point, gp(1, 0));
        assert!(ray_error(&sys, gp(4, 4)).is_err());
    }

    #[test]
    fn max_error_examples() {
        let r = max_error(&build_system(2));
        assert_eq!(r.max_error, Rational::new(1, 2));

        let r = max_error(&build_system(6));
        assert_eq!(r.max_error, Rational::integer(1));
        assert_eq!(r.witness_point, gp(3, 1));
        assert_eq!(r.witness_target, gp(3, 3));
        assert_eq!(r.diagonal, 2 + 2);

        let empty = RaySystem::from_interior_fn(0, |_| ParentChoice::Down);
        assert_eq!(max_error(&empty).max_error, Rational::zero());
    }

    #[test]
    fn lpath_error_is_quarter_of_bound() {
        let sys = RaySystem::from_interior_fn(8, |_| ParentChoice::Left);
        let r = max_error(&sys);
        assert_eq!(r.max_error, Rational::integer(2));
        assert_eq!(r.witness_point, gp(0, 4));
        assert_eq!(r.witness_target, gp(4, 4));
    }

    #[test]
    fn tree_sweep_matches_brute_force() {
        for n in [1u32, 2, 5, 9, 17, 40] {
            let sys = build_system(n);
            assert_eq!(max_error(&sys), max_error_brute_force(&sys), "n = {n}");
            let rows = per_diagonal_errors(&sys);
            for row in &rows {
                let d = row.diagonal;
                let brute = max_of(
                    (0..=d).map(|x| ray_error_report(&sys, gp(x, d - x)).unwrap()),
                );
                assert_eq!(row.report, brute, "n = {n}, d = {d}");
            }
        }
    }
}
