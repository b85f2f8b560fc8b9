//! Checks for the ray-system axioms and the structural facts that follow
//! from them.
//!
//! `check_s1`, `check_s3` and `check_s5` work on any [`RayFamily`], since
//! they exist to catch data that is not a well-formed parent map: imported
//! files, hand-built fixtures and the rounding baseline. The remaining
//! checks need the tree structure of a [`RaySystem`].

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::grid::GridPoint;
use crate::ray_system::{domain_points, RaySystem};

/// Anything that assigns a ray from the origin to each first-quadrant
/// point up to a bound.
pub trait RayFamily {
    fn bound(&self) -> u32;

    /// Points in the family's domain, origin excluded, in `(diagonal, x)`
    /// order.
    fn targets(&self) -> Vec<GridPoint> {
        domain_points(self.bound()).collect()
    }

    /// The family's ray to `target`, origin first. Malformed families may
    /// return anything, including an empty path.
    fn ray_points(&self, target: GridPoint) -> Vec<GridPoint>;
}

impl RayFamily for RaySystem {
    fn bound(&self) -> u32 {
        RaySystem::bound(self)
    }

    fn ray_points(&self, target: GridPoint) -> Vec<GridPoint> {
        self.ray(target).map(|r| r.into_points()).unwrap_or_default()
    }
}

/// Rays given explicitly, one path per target.
#[derive(Clone, Debug, Default)]
pub struct PathFamily {
    bound: u32,
    rays: BTreeMap<GridPoint, Vec<GridPoint>>,
}

impl PathFamily {
    pub fn new(bound: u32) -> Self {
        PathFamily { bound, rays: BTreeMap::new() }
    }

    /// Copies every ray of `family`.
    pub fn snapshot(family: &impl RayFamily) -> Self {
        let mut out = PathFamily::new(family.bound());
        for t in family.targets() {
            out.rays.insert(t, family.ray_points(t));
        }
        out
    }

    /// Follows arbitrary parent pointers back from each target. The walk
    /// stops at the origin, at a point without a pointer, or when it would
    /// revisit a point.
    pub fn from_parent_pointers(bound: u32, parents: &HashMap<GridPoint, GridPoint>) -> Self {
        let mut out = PathFamily::new(bound);
        for t in domain_points(bound) {
            let mut seen = HashSet::new();
            let mut path = vec![t];
            seen.insert(t);
            let mut cur = t;
            while !cur.is_origin() {
                match parents.get(&cur) {
                    Some(&next) if seen.insert(next) => {
                        path.push(next);
                        cur = next;
                    }
                    _ => break,
                }
            }
            path.reverse();
            out.rays.insert(t, path);
        }
        out
    }

    pub fn set_ray(&mut self, target: GridPoint, points: Vec<GridPoint>) {
        self.rays.insert(target, points);
    }
}

impl RayFamily for PathFamily {
    fn bound(&self) -> u32 {
        self.bound
    }

    fn ray_points(&self, target: GridPoint) -> Vec<GridPoint> {
        self.rays.get(&target).cloned().unwrap_or_default()
    }
}

/// A ray that is not a unit-step grid path from the origin to its target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum S1Violation {
    WrongStart { target: GridPoint, start: Option<GridPoint> },
    WrongEnd { target: GridPoint, end: Option<GridPoint> },
    NonAdjacent { target: GridPoint, point: GridPoint, predecessor: GridPoint },
}

/// Ray of `subpoint`, a point on the ray to `target`, is not a prefix of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S3Violation {
    pub target: GridPoint,
    pub subpoint: GridPoint,
    /// First position where the two rays differ.
    pub index: usize,
    /// Point of the target's ray at `index`.
    pub expected: Option<GridPoint>,
    /// Point of the subpoint's ray at `index`.
    pub found: Option<GridPoint>,
}

/// Ray to an axis point that leaves the axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S5Violation {
    pub target: GridPoint,
    pub point: GridPoint,
}

/// Mirrored ray that is inconsistent with its quadrant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S2Violation {
    pub target: GridPoint,
    pub point: GridPoint,
}

/// Two neighbours on a diagonal that both stop before diagonal `diagonal`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeadPairViolation {
    pub point: GridPoint,
    pub neighbor: GridPoint,
    pub diagonal: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternationViolation {
    pub diagonal: i64,
    /// Split points and inner leaves of the diagonal in scan order.
    pub sequence: Vec<(GridPoint, Role)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Split,
    Leaf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alternation {
    pub diagonal: i64,
    pub split_points: Vec<GridPoint>,
    pub inner_leaves: Vec<GridPoint>,
}

pub fn check_s1(family: &impl RayFamily) -> Result<(), S1Violation> {
    for t in family.targets() {
        let ray = family.ray_points(t);
        if ray.first() != Some(&GridPoint::ORIGIN) {
            return Err(S1Violation::WrongStart { target: t, start: ray.first().copied() });
        }
        if ray.last() != Some(&t) {
            return Err(S1Violation::WrongEnd { target: t, end: ray.last().copied() });
        }
        if let Some(w) = ray.windows(2).find(|w| !w[0].is_unit_neighbor(w[1])) {
            return Err(S1Violation::NonAdjacent { target: t, point: w[1], predecessor: w[0] });
        }
    }
    Ok(())
}

fn prefix_mismatch(long: &[GridPoint], short: &[GridPoint]) -> Option<usize> {
    let k = long.iter().zip(short).position(|(a, b)| a != b);
    match k {
        Some(k) => Some(k),
        None if short.len() > long.len() => Some(long.len()),
        None => None,
    }
}

fn ray_of(family: &impl RayFamily, p: GridPoint) -> Vec<GridPoint> {
    if p.is_origin() {
        vec![GridPoint::ORIGIN]
    } else {
        family.ray_points(p)
    }
}

/// Subsegment property for origin rays: for every target `p` and every `s`
/// on its ray, the ray to `s` is the prefix of the ray to `p` ending at `s`.
///
/// When each ray's parent-prefix matches the parent's ray, every prefix
/// matches by induction, so only the penultimate point is compared unless a
/// mismatch shows up. The witness is the first target in `(diagonal, x)`
/// order and, for it, the first failing point along its ray.
pub fn check_s3(family: &impl RayFamily) -> Result<(), S3Violation> {
    for p in family.targets() {
        let rp = family.ray_points(p);
        let quick_ok = rp.first() == Some(&GridPoint::ORIGIN)
            && match rp.len() {
                0 | 1 => true,
                n => {
                    let rs = ray_of(family, rp[n - 2]);
                    rs.as_slice() == &rp[..n - 1]
                }
            };
        if quick_ok {
            continue;
        }
        for (j, &s) in rp.iter().enumerate() {
            let rs = ray_of(family, s);
            let want = &rp[..=j];
            if rs.as_slice() != want {
                let index = prefix_mismatch(want, &rs).unwrap_or(rs.len());
                return Err(S3Violation {
                    target: p,
                    subpoint: s,
                    index,
                    expected: want.get(index).copied(),
                    found: rs.get(index).copied(),
                });
            }
        }
    }
    Ok(())
}

/// Rays to points on an axis stay on that axis.
pub fn check_s5(family: &impl RayFamily) -> Result<(), S5Violation> {
    for t in family.targets() {
        if t.x != 0 && t.y != 0 {
            continue;
        }
        for q in family.ray_points(t) {
            if (t.x == 0 && q.x != 0) || (t.y == 0 && q.y != 0) {
                return Err(S5Violation { target: t, point: q });
            }
        }
    }
    Ok(())
}

/// Symmetry of the mirrored system. Rays are traversed from either end,
/// so `R_o(q) = R_q(o)` reduces to the mirrored ray being well defined:
/// every ray to `q ∈ ℤ²` stays in the closed quadrant of `q`, and a ray to
/// an axis point reads the same from both adjacent quadrants.
pub fn check_s2(sys: &RaySystem) -> Result<(), S2Violation> {
    let n = i64::from(sys.bound());
    for x in -n..=n {
        let rem = n - x.abs();
        for y in -rem..=rem {
            let q = GridPoint::new(x, y);
            if q.is_origin() {
                continue;
            }
            let ray = sys.ray_in_z2(q).expect("q within bound");
            let pts = ray.points();
            let bad = pts.iter().find(|p| p.x * q.x.signum() < 0 || p.y * q.y.signum() < 0
                || (q.x == 0 && p.x != 0) || (q.y == 0 && p.y != 0));
            if let Some(&p) = bad {
                return Err(S2Violation { target: q, point: p });
            }
            if pts.first() != Some(&GridPoint::ORIGIN) || pts.last() != Some(&q) {
                return Err(S2Violation { target: q, point: pts.first().copied().unwrap_or(q) });
            }
        }
    }
    Ok(())
}

/// Points whose ray cannot be prolonged to the next diagonal (the inner
/// leaves of every diagonal below the bound). Empty exactly when the
/// bounded system is a consistent digital ray system.
pub fn check_s4(sys: &RaySystem) -> Vec<GridPoint> {
    let n = i64::from(sys.bound());
    let mut out = Vec::new();
    for d in 0..n {
        out.extend(sys.inner_leaves(d).expect("diagonal below bound"));
    }
    out
}

/// If a point stops before some diagonal `d`, both of its neighbours on the
/// same diagonal must still extend to `d`. Systems with error below 3/2
/// always satisfy this.
pub fn check_no_consecutive_dead(sys: &RaySystem) -> Result<(), DeadPairViolation> {
    let n = sys.bound();
    let reach = sys.reach_table();
    for v in std::iter::once(GridPoint::ORIGIN).chain(sys.points()) {
        let rv = reach.reach(v).expect("in domain");
        if rv >= n {
            continue;
        }
        for nb in [v.north_west(), v.south_east()] {
            if !nb.in_first_quadrant() {
                continue;
            }
            let rn = reach.reach(nb).expect("same diagonal");
            if rn < n {
                return Err(DeadPairViolation {
                    point: v,
                    neighbor: nb,
                    diagonal: i64::from(rv.max(rn)) + 1,
                });
            }
        }
    }
    Ok(())
}

/// On diagonal `d`, split points and inner leaves alternate by increasing
/// x, beginning and ending with a split point.
pub fn check_alternation(sys: &RaySystem, d: i64) -> Result<Alternation, AlternationViolation> {
    let mut sequence = Vec::new();
    for x in 0..=d {
        let p = GridPoint::new(x, d - x);
        match sys.child_count(p) {
            2 => sequence.push((p, Role::Split)),
            0 => sequence.push((p, Role::Leaf)),
            _ => {}
        }
    }
    let ok = !sequence.is_empty()
        && sequence.iter().enumerate().all(|(i, &(_, r))| {
            r == if i % 2 == 0 { Role::Split } else { Role::Leaf }
        })
        && sequence.last().map(|s| s.1) == Some(Role::Split);
    if !ok {
        return Err(AlternationViolation { diagonal: d, sequence });
    }
    let pick = |role: Role| sequence.iter().filter(|s| s.1 == role).map(|s| s.0).collect();
    Ok(Alternation { diagonal: d, split_points: pick(Role::Split), inner_leaves: pick(Role::Leaf) })
}

/// Outcome of every check, as written by `verify --report`.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub bound: u32,
    pub s1: Option<S1Violation>,
    pub s2: Option<S2Violation>,
    pub s3: Option<S3Violation>,
    pub s5: Option<S5Violation>,
    /// Informational: weak systems are allowed to have inner leaves.
    pub s4_failures: Vec<GridPoint>,
    pub alternation: Vec<AlternationViolation>,
    /// Present only when the dead-pair check was requested.
    pub no_consecutive_dead: Option<Option<DeadPairViolation>>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.s1.is_none()
            && self.s2.is_none()
            && self.s3.is_none()
            && self.s5.is_none()
            && self.alternation.is_empty()
            && !matches!(self.no_consecutive_dead, Some(Some(_)))
    }
}

pub fn verify_system(sys: &RaySystem, dead_pairs: bool) -> VerificationReport {
    let n = i64::from(sys.bound());
    VerificationReport {
        bound: sys.bound(),
        s1: check_s1(sys).err(),
        s2: check_s2(sys).err(),
        s3: check_s3(sys).err(),
        s5: check_s5(sys).err(),
        s4_failures: check_s4(sys),
        alternation: (0..n).filter_map(|d| check_alternation(sys, d).err()).collect(),
        no_consecutive_dead: dead_pairs.then(|| check_no_consecutive_dead(sys).err()),
    }
}
