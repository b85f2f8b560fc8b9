//! Minimum achievable error over every weak ray system up to a bound.
//!
//! Axis points have forced parents; each of the `(N-1)N/2` interior points
//! picks `p↓` or `p←` freely. Assignments are ordered lexicographically over
//! the interior points in `(diagonal, x)` order with `Down < Left`, and both
//! searches return the least optimal assignment in that order.

use serde::Serialize;

use crate::construction::build_system;
use crate::error::{Error, Result};
use crate::grid::{GridPoint, Rational};
use crate::metrics::max_error;
use crate::ray_system::{tri_index, tri_len, ParentChoice, RaySystem};

/// Largest bound accepted by [`min_error_exhaustive`] (21 free points).
pub const EXHAUSTIVE_LIMIT: u32 = 7;
/// Largest bound accepted by [`min_error_bnb`].
pub const BNB_LIMIT: u32 = 16;

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub bound: u32,
    pub min_error: Rational,
    #[serde(skip)]
    pub witness_system: RaySystem,
    /// Complete assignments evaluated.
    pub systems_explored: u64,
    /// Partial assignments cut off by the bound.
    pub pruned: u64,
    /// Search-tree nodes visited (branch and bound only).
    pub nodes: u64,
    /// False when the node budget ran out before the search finished.
    pub proven_optimal: bool,
}

/// Exact fraction `num / den` with `den > 0`, small enough for `i64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frac {
    num: i64,
    den: i64,
}

impl Frac {
    const ZERO: Frac = Frac { num: 0, den: 1 };

    fn lt(self, other: Frac) -> bool {
        i128::from(self.num) * i128::from(other.den) < i128::from(other.num) * i128::from(self.den)
    }

    fn max(self, other: Frac) -> Frac {
        if self.lt(other) {
            other
        } else {
            self
        }
    }

    fn to_rational(self) -> Rational {
        Rational::new(self.num, self.den)
    }
}

fn interior_points(bound: u32) -> Vec<GridPoint> {
    (2..=i64::from(bound))
        .flat_map(|d| (1..d).map(move |x| GridPoint::new(x, d - x)))
        .collect()
}

fn system_from_bits(bound: u32, vars: &[GridPoint], choices: &[ParentChoice]) -> RaySystem {
    let mut it = vars.iter().zip(choices);
    RaySystem::from_interior_fn(bound, |p| {
        let (&q, &c) = it.next().expect("one choice per interior point");
        debug_assert_eq!(p, q);
        c
    })
}

/// Error numerator of the ray to `p` over denominator `D(p)`, following the
/// parent table back to the origin.
fn ray_error_frac(choice: &[ParentChoice], p: GridPoint) -> Frac {
    let d = p.diagonal();
    if p.x == 0 || p.y == 0 {
        return Frac::ZERO;
    }
    let mut cur = p;
    let mut worst = 0i64;
    while !cur.is_origin() {
        worst = worst.max((cur.x * d - cur.diagonal() * p.x).abs());
        cur = choice[tri_index(cur)].parent_of(cur);
    }
    Frac { num: worst, den: d }
}

fn forced_table(bound: u32) -> Vec<ParentChoice> {
    let mut table = vec![ParentChoice::Down; tri_len(bound)];
    for d in 1..=i64::from(bound) {
        table[tri_index(GridPoint::new(d, 0))] = ParentChoice::Left;
    }
    table
}

/// Plain enumeration of all `2^k` interior assignments.
pub fn min_error_exhaustive(bound: u32) -> Result<SearchResult> {
    if bound > EXHAUSTIVE_LIMIT {
        return Err(Error::BoundTooLarge {
            bound,
            limit: EXHAUSTIVE_LIMIT,
            what: "exhaustive enumeration; use branch and bound",
        });
    }
    let vars = interior_points(bound);
    let k = vars.len();
    let targets: Vec<GridPoint> = vars.clone();
    let mut table = forced_table(bound);
    let mut best: Option<(Frac, u64)> = None;
    let total = 1u64 << k;
    for mask in 0..total {
        // Variable 0 is the most significant bit, so numeric order is
        // lexicographic order.
        for (i, p) in vars.iter().enumerate() {
            let bit = (mask >> (k - 1 - i)) & 1;
            table[tri_index(*p)] = if bit == 1 { ParentChoice::Left } else { ParentChoice::Down };
        }
        let err = targets
            .iter()
            .fold(Frac::ZERO, |acc, &p| acc.max(ray_error_frac(&table, p)));
        if best.is_none_or(|(b, _)| err.lt(b)) {
            best = Some((err, mask));
        }
    }
    let (err, mask) = best.expect("at least one assignment");
    let choices: Vec<ParentChoice> = (0..k)
        .map(|i| if (mask >> (k - 1 - i)) & 1 == 1 { ParentChoice::Left } else { ParentChoice::Down })
        .collect();
    Ok(SearchResult {
        bound,
        min_error: err.to_rational(),
        witness_system: system_from_bits(bound, &vars, &choices),
        systems_explored: total,
        pruned: 0,
        nodes: 0,
        proven_optimal: true,
    })
}

struct Bnb<'a> {
    vars: &'a [GridPoint],
    table: Vec<ParentChoice>,
    assignment: Vec<ParentChoice>,
    /// Value of the construction; nothing worse needs exploring.
    ceiling: Frac,
    incumbent: Option<(Frac, Vec<ParentChoice>)>,
    budget: u64,
    nodes: u64,
    leaves: u64,
    pruned: u64,
    exhausted: bool,
}

impl Bnb<'_> {
    fn cut(&self, lower: Frac) -> bool {
        match &self.incumbent {
            Some((best, _)) => !lower.lt(*best),
            None => self.ceiling.lt(lower),
        }
    }

    fn search(&mut self, depth: usize, lower: Frac) {
        if self.exhausted {
            return;
        }
        if depth == self.vars.len() {
            self.leaves += 1;
            self.incumbent = Some((lower, self.assignment.clone()));
            return;
        }
        let p = self.vars[depth];
        for c in [ParentChoice::Down, ParentChoice::Left] {
            if self.nodes >= self.budget {
                self.exhausted = true;
                return;
            }
            self.nodes += 1;
            self.table[tri_index(p)] = c;
            self.assignment[depth] = c;
            let next = lower.max(ray_error_frac(&self.table, p));
            if self.cut(next) {
                self.pruned += 1;
                continue;
            }
            self.search(depth + 1, next);
        }
    }
}

/// Depth-first branch and bound over the same assignment order. A partial
/// assignment's value is the worst error among rays that are already fully
/// determined; extending an assignment only adds rays, so the value is a
/// valid lower bound. The construction supplies the initial ceiling.
pub fn min_error_bnb(bound: u32, budget: Option<u64>) -> Result<SearchResult> {
    if bound > BNB_LIMIT {
        return Err(Error::BoundTooLarge { bound, limit: BNB_LIMIT, what: "branch and bound" });
    }
    let vars = interior_points(bound);
    let seed = build_system(bound);
    let seed_err = max_error(&seed).max_error;
    let ceiling = Frac {
        num: num_traits::ToPrimitive::to_i64(seed_err.numer()).expect("small"),
        den: num_traits::ToPrimitive::to_i64(seed_err.denom()).expect("small"),
    };
    let mut bnb = Bnb {
        vars: &vars,
        table: forced_table(bound),
        assignment: vec![ParentChoice::Down; vars.len()],
        ceiling,
        incumbent: None,
        budget: budget.unwrap_or(u64::MAX),
        nodes: 0,
        leaves: 0,
        pruned: 0,
        exhausted: false,
    };
    bnb.search(0, Frac::ZERO);
    let (min_error, witness_system) = match bnb.incumbent.take() {
        Some((err, choices)) => (err.to_rational(), system_from_bits(bound, &vars, &choices)),
        None => (seed_err, seed),
    };
    Ok(SearchResult {
        bound,
        min_error,
        witness_system,
        systems_explored: bnb.leaves,
        pruned: bnb.pruned,
        nodes: bnb.nodes,
        proven_optimal: !bnb.exhausted,
    })
}

/// Minimum error for every bound `1..=max_bound`: enumeration where it is
/// allowed, branch and bound past it.
pub fn min_error_curve(max_bound: u32) -> Result<Vec<(u32, Rational)>> {
    (1..=max_bound)
        .map(|n| {
            let r = if n <= EXHAUSTIVE_LIMIT { min_error_exhaustive(n)? } else { min_error_bnb(n, None)? };
            Ok((n, r.min_error))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_floors() {
        assert_eq!(min_error_exhaustive(1).unwrap().min_error, Rational::zero());
        assert_eq!(min_error_exhaustive(2).unwrap().min_error, Rational::new(1, 2));
        assert_eq!(min_error_exhaustive(3).unwrap().min_error, Rational::new(2, 3));
        assert_eq!(min_error_exhaustive(3).unwrap().systems_explored, 8);
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(min_error_exhaustive(8), Err(Error::BoundTooLarge { .. })));
        assert!(matches!(min_error_bnb(17, None), Err(Error::BoundTooLarge { .. })));
    }

    #[test]
    fn witness_reproduces_minimum() {
        for n in 1..=5 {
            let r = min_error_exhaustive(n).unwrap();
            assert_eq!(max_error(&r.witness_system).max_error, r.min_error);
            let b = min_error_bnb(n, None).unwrap();
            assert_eq!(max_error(&b.witness_system).max_error, b.min_error);
            assert_eq!(b.witness_system, r.witness_system, "n = {n}");
        }
    }

    #[test]
    fn bnb_small() {
        let r = min_error_bnb(2, None).unwrap();
        assert_eq!(r.min_error, Rational::new(1, 2));
        assert!(r.proven_optimal);
        assert!(r.nodes <= 2);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let r = min_error_bnb(6, Some(3)).unwrap();
        assert!(!r.proven_optimal);
        assert_eq!(max_error(&r.witness_system).max_error, r.min_error);
    }
}
