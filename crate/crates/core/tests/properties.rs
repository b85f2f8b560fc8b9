//! Invariants that hold for every parent map, not only the construction.

use std::collections::BTreeSet;

use proptest::prelude::*;
use wcdr_core::metrics::max_error_brute_force;
use wcdr_core::*;

fn gp(x: i64, y: i64) -> GridPoint {
    GridPoint::new(x, y)
}

/// A random parent map: one coin per domain point, axis choices forced.
fn any_system() -> impl Strategy<Value = RaySystem> {
    (1u32..=14).prop_flat_map(|n| {
        let len = ((n + 1) * (n + 2) / 2) as usize;
        prop::collection::vec(any::<bool>(), len).prop_map(move |coins| {
            let mut i = 0;
            RaySystem::from_interior_fn(n, |_| {
                i += 1;
                if coins[i - 1] {
                    ParentChoice::Left
                } else {
                    ParentChoice::Down
                }
            })
        })
    })
}

proptest! {
    #[test]
    fn every_parent_map_is_a_weak_system(sys in any_system()) {
        prop_assert_eq!(check_s1(&sys), Ok(()));
        prop_assert_eq!(check_s2(&sys), Ok(()));
        prop_assert_eq!(check_s3(&sys), Ok(()));
        prop_assert_eq!(check_s5(&sys), Ok(()));
    }

    #[test]
    fn splits_and_leaves_alternate(sys in any_system()) {
        for d in 0..i64::from(sys.bound()) {
            let alt = check_alternation(&sys, d);
            prop_assert!(alt.is_ok(), "d = {}: {:?}", d, alt);
            let alt = alt.unwrap();
            prop_assert_eq!(alt.split_points.len(), alt.inner_leaves.len() + 1);
            prop_assert_eq!(check_s4(&sys).iter().filter(|p| p.diagonal() == d).count(), alt.inner_leaves.len());
        }
    }

    #[test]
    fn subtrees_partition_later_diagonals(sys in any_system(), pick in 0i64..14) {
        let d = pick % i64::from(sys.bound());
        let mut seen = BTreeSet::new();
        for x in 0..=d {
            for p in sys.subtree(gp(x, d - x)).unwrap() {
                prop_assert!(p.diagonal() >= d);
                prop_assert!(seen.insert(p), "{} in two subtrees", p);
            }
        }
        let later = sys.points().filter(|p| p.diagonal() >= d).count() + usize::from(d == 0);
        prop_assert_eq!(seen.len(), later);
    }

    #[test]
    fn sweep_matches_brute_force(sys in any_system()) {
        prop_assert_eq!(max_error(&sys), max_error_brute_force(&sys));
    }

    #[test]
    fn linf_error_is_symmetric_under_transpose(vx in 0i64..40, vy in 0i64..40, tx in 0i64..40, ty in 0i64..40) {
        let (v, t) = (gp(vx, vy), gp(tx, ty));
        prop_assume!(!t.is_origin() && v.diagonal() <= t.diagonal());
        prop_assert_eq!(point_error_linf(v, t).unwrap(), point_error_linf(v.transposed(), t.transposed()).unwrap());
    }

    #[test]
    fn cone_count_is_floor_or_next(
        set in prop::collection::vec((0i64..=64, 0i64..=64), 1..6),
        d in 1i64..=128,
    ) {
        let set: Vec<GridPoint> = set.into_iter().map(|(x, y)| gp(x, y)).filter(|p| !p.is_origin()).collect();
        prop_assume!(!set.is_empty());
        let w = cone_width(&set, d).unwrap().floor();
        let n = num_bigint::BigInt::from(grid_points_in_cone(&set, d).unwrap());
        prop_assert!(n == w || n == &w + 1);
    }

    #[test]
    fn witness_reproduces_max_error(n in 1u32..=80) {
        let sys = build_system(n);
        let r = max_error(&sys);
        if r.max_error > Rational::zero() {
            prop_assert!(sys.ray(r.witness_target).unwrap().contains(r.witness_point));
            prop_assert_eq!(point_error_linf(r.witness_point, r.witness_target).unwrap(), r.max_error);
        }
    }
}

#[test]
fn tie_rules_build_the_same_system() {
    for n in [16u32, 100, 513] {
        assert!(build_system_with(n, TieBreak::Down) == build_system_with(n, TieBreak::Left), "n = {n}");
    }
}
