mod common;

use latsep::conditions::{search_flag, verify_flag};
use latsep::convexity::{is_hole_free, is_integrally_convex, is_k_convex, k_convex_hull};
use latsep::geometry::{hull_facets, lattice_points_in_conv, lines_through};
use latsep::{IntPoint, Partition, PointSet};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use common::*;

fn planar_set(max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((0i64..5, 0i64..5), 1..=max)
        .prop_map(|s| PointSet::new(2, s.into_iter().map(|(x, y)| IntPoint::from([x, y]))).unwrap())
}

fn spatial_set(max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((0i64..3, 0i64..3, 0i64..3), 1..=max)
        .prop_map(|s| PointSet::new(3, s.into_iter().map(|(x, y, z)| IntPoint::from([x, y, z]))).unwrap())
}

/// A set of at least two points with a split mask.
fn planar_partition(max: usize) -> impl Strategy<Value = Partition> {
    (planar_set(max), any::<u64>()).prop_filter_map("both sides nonempty", |(s, mask)| {
        let a: Vec<IntPoint> = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
        Partition::from_subset(&s, PointSet::new(2, a).ok()?).ok()
    })
}

fn map_points(p: &Partition, f: impl Fn(&IntPoint) -> IntPoint) -> Partition {
    let side = |s: &PointSet| PointSet::new(s.dim(), s.iter().map(&f)).unwrap();
    Partition::new(side(p.a()), side(p.b())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lattice_hull_contains_and_is_idempotent(s in planar_set(6)) {
        let h = lattice_points_in_conv(&s).unwrap();
        prop_assert!(s.is_subset(&h));
        prop_assert_eq!(lattice_points_in_conv(&h).unwrap(), h);
    }

    #[test]
    fn facets_are_nonnegative_on_the_set(s in spatial_set(7)) {
        for g in hull_facets(&s).unwrap() {
            for x in s.iter() {
                prop_assert!(!g.eval(x).is_negative(), "{} negative at {}", g, x);
            }
        }
    }

    #[test]
    fn every_pair_lies_on_a_listed_line(s in planar_set(7)) {
        let lines = lines_through(&s);
        let pts = s.points();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let covering = lines.iter().filter(|l| l.trace.contains(&pts[i]) && l.trace.contains(&pts[j])).count();
                prop_assert_eq!(covering, 1);
            }
        }
    }

    #[test]
    fn hull_tower_is_monotone(s in spatial_set(4)) {
        let mut prev = s.clone();
        for k in 1..=3 {
            let h = k_convex_hull(&s, k).unwrap();
            prop_assert!(prev.is_subset(&h));
            prop_assert!(is_k_convex(&h, k).unwrap().holds());
            prev = h;
        }
        prop_assert_eq!(prev, lattice_points_in_conv(&s).unwrap());
    }

    #[test]
    fn hole_free_is_full_convexity(s in spatial_set(6)) {
        prop_assert_eq!(is_hole_free(&s).unwrap().holds(), is_k_convex(&s, 3).unwrap().holds());
    }

    #[test]
    fn integrally_convex_sets_are_hole_free(s in spatial_set(6)) {
        if is_integrally_convex(&s).unwrap().holds() {
            prop_assert!(is_hole_free(&s).unwrap().holds());
        }
    }

    #[test]
    fn search_is_translation_invariant(p in planar_partition(7), dx in -9i64..9, dy in -9i64..9) {
        let shift = IntPoint::from([dx, dy]);
        let q = map_points(&p, |x| x.add(&shift));
        prop_assert_eq!(search_flag(&p).holds(), search_flag(&q).holds());
    }

    #[test]
    fn search_is_unimodular_invariant(p in planar_partition(7), k in -3i64..=3, swap in any::<bool>()) {
        let q = map_points(&p, |x| {
            let (u, v) = (x[0] + k * x[1], x[1]);
            if swap { IntPoint::from([v, -u]) } else { IntPoint::from([u, v]) }
        });
        prop_assert_eq!(search_flag(&p).holds(), search_flag(&q).holds());
    }

    #[test]
    fn found_flags_place_every_point(p in planar_partition(8)) {
        let v = search_flag(&p);
        prop_assert_eq!(v.holds(), flag_oracle_2d(&p));
        if let Some(flag) = v.certificate() {
            prop_assert!(flag.validate(2).is_ok());
            prop_assert_eq!(verify_flag(&p, flag), Ok(true));
        }
        prop_assert_eq!(search_flag(&p.swapped()).holds(), v.holds());
    }

    #[test]
    fn spatial_flags_verify(s in spatial_set(7), mask in any::<u64>()) {
        let a: Vec<IntPoint> = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
        let Ok(p) = Partition::from_subset(&s, PointSet::new(3, a).unwrap()) else { return Ok(()) };
        if let Some(flag) = search_flag(&p).certificate() {
            prop_assert_eq!(verify_flag(&p, flag), Ok(true));
        }
    }
}

/// Faces of a finite integrally convex set are integrally convex.
#[test]
fn faces_of_integrally_convex_sets() {
    for grid in [[3, 3], [4, 3]] {
        for (_, s) in grid_subsets(&grid) {
            if !is_integrally_convex(&s).unwrap().holds() {
                continue;
            }
            for g in hull_facets(&s).unwrap() {
                let face = PointSet::new(2, s.iter().filter(|x| g.eval(x).is_zero()).cloned()).unwrap();
                if !face.is_empty() {
                    assert!(is_integrally_convex(&face).unwrap().holds(), "face {g} of {s:?}");
                }
            }
        }
    }
}

/// A run of lattice points along a primitive direction is integrally convex
/// exactly when the direction has entries in {-1, 0, 1}.
#[test]
fn integrally_convex_lines() {
    for dx in -3i64..=3 {
        for dy in -3i64..=3 {
            if num_integer::gcd(dx, dy) != 1 {
                continue;
            }
            for len in 2..=4 {
                let s = PointSet::new(2, (0..len).map(|t| IntPoint::from([1 + t * dx, 2 + t * dy]))).unwrap();
                let unit = dx.abs() <= 1 && dy.abs() <= 1;
                assert_eq!(is_integrally_convex(&s).unwrap().holds(), unit, "direction ({dx},{dy})");
            }
        }
    }
}
