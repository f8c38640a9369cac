use farey_odd::geometry::{stabilization_threshold, Tile};
use farey_odd::rational::ratio;
use farey_odd::{
    build_region, haynes_density, orbit_kappas, region_area, region_membership, stabilized_quadrangle,
    unimodular_image, ConvexRegion, Error, IndexTuple, Point, TrianglePoint,
};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn tile(ks: &[u64]) -> ConvexRegion {
    build_region(&IndexTuple::new(ks.to_vec()).unwrap())
}

fn area_formula(k: u64) -> BigRational {
    ratio(4, (k * (k + 1) * (k + 2)) as i64)
}

#[test]
fn single_tile_areas() {
    assert_eq!(region_area(&tile(&[])), ratio(1, 2));
    assert_eq!(region_area(&tile(&[1])), ratio(1, 6));
    for k in 2..=200 {
        assert_eq!(region_area(&tile(&[k])), area_formula(k), "k={k}");
        assert_eq!(area_formula(k), haynes_density(k));
    }
}

#[test]
fn single_tiles_partition_the_triangle() {
    let mut sum = BigRational::zero();
    for k in 1..=200u64 {
        sum += region_area(&tile(&[k]));
        let tail = ratio(2, ((k + 1) * (k + 2)) as i64);
        assert_eq!(&sum + tail, ratio(1, 2), "K={k}");
    }
}

#[test]
fn longer_tuples_nest() {
    fn walk(t: &Tile, depth: usize) {
        if depth == 4 {
            return;
        }
        for k in 1..=5 {
            let child = t.child(k);
            for v in child.region().vertices() {
                assert!(t.region().contains_closed(v), "{:?} escapes its parent", child.ks());
            }
            assert!(region_area(child.region()) <= region_area(t.region()));
            walk(&child, depth + 1);
        }
    }
    walk(&Tile::root(), 0);
}

/// Visits every nonempty tile with r labels in 1..=max.
fn nonempty_tiles(r: usize, max: u64, f: &mut dyn FnMut(&Tile)) {
    fn go(t: &Tile, r: usize, max: u64, f: &mut dyn FnMut(&Tile)) {
        if t.ks().len() == r {
            f(t);
            return;
        }
        for k in 1..=max {
            let c = t.child(k);
            if !c.region().is_empty() {
                go(&c, r, max, f);
            }
        }
    }
    go(&Tile::root(), r, max, f);
}

#[test]
fn large_labels_force_ones_and_twos() {
    for r in 2..=3usize {
        let c = stabilization_threshold(r as u64);
        let mut forced = 0;
        nonempty_tiles(r, 30, &mut |t| {
            let ks = t.ks();
            for (j, &k) in ks.iter().enumerate() {
                if k < c {
                    continue;
                }
                for (i, &other) in ks.iter().enumerate() {
                    let want = if i + 1 == j || i == j + 1 { 1 } else { 2 };
                    if i != j {
                        assert_eq!(other, want, "{:?} is nonempty", ks);
                    }
                }
                assert_eq!(region_area(t.region()), area_formula(k), "{:?}", ks);
                forced += 1;
            }
        });
        // Each large m sits at one of r positions.
        assert_eq!(forced, r * (30 - c as usize + 1));
    }
}

#[test]
fn boundary_shrinks_with_the_large_label() {
    for r in 1..=3usize {
        let c = stabilization_threshold(r as u64);
        nonempty_tiles(r, 30, &mut |t| {
            let ks = t.ks();
            for (j, &k) in ks.iter().enumerate() {
                if k <= c {
                    continue;
                }
                let mut image = t.region().clone();
                for &step in &ks[..j] {
                    image = unimodular_image(&image, step).unwrap();
                }
                let own = tile(&[k]).perimeter();
                assert!(image.perimeter() <= own + 1e-12, "{:?} j={j}", ks);
                assert!(own <= 20.0 / k as f64, "k={k}");
            }
        });
    }
}

fn arb_point() -> impl Strategy<Value = (i64, i64, i64)> {
    (1i64..=24, 1i64..=24, 1i64..=24).prop_filter("in the triangle", |&(a, b, d)| a <= d && b <= d && a + b > d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn constraints_agree_with_the_orbit((a, b, d) in arb_point()) {
        let region = tile(&[2, 1, 3]);
        let p = Point::new(ratio(a, d), ratio(b, d));
        let tp = TrianglePoint::new(ratio(a, d), ratio(b, d)).unwrap();
        prop_assert_eq!(region_membership(&region, &p), orbit_kappas(&tp, 3) == vec![2, 1, 3]);
    }

    #[test]
    fn every_point_lies_in_exactly_one_pair_tile((a, b, d) in arb_point()) {
        let p = Point::new(ratio(a, d), ratio(b, d));
        let tp = TrianglePoint::new(ratio(a, d), ratio(b, d)).unwrap();
        let ks = orbit_kappas(&tp, 2);
        prop_assert!(region_membership(&tile(&ks), &p));
        for k1 in 1..=d as u64 + 2 {
            if k1 != ks[0] {
                prop_assert!(!region_membership(&tile(&[k1, ks[1]]), &p));
            }
        }
    }
}

#[test]
fn images_preserve_area() {
    for k in 1..=50 {
        let t = tile(&[k]);
        assert_eq!(region_area(&unimodular_image(&t, k).unwrap()), region_area(&t), "k={k}");
    }
}

#[test]
fn image_of_a_pair_tile() {
    for k1 in 1..=6 {
        for k2 in 1..=6 {
            let pair = tile(&[k1, k2]);
            let img = unimodular_image(&pair, k1).unwrap();
            let other = tile(&[k2]).intersect(&unimodular_image(&tile(&[k1]), k1).unwrap());
            assert_eq!(img.vertices(), other.vertices(), "({k1},{k2})");
        }
    }
}

#[test]
fn large_tiles_map_into_the_first() {
    for m in 6..=40 {
        assert!(unimodular_image(&tile(&[m]), m).unwrap().is_subset_of(&tile(&[1])), "m={m}");
    }
}

#[test]
fn image_requires_the_tile() {
    assert!(matches!(unimodular_image(&tile(&[2]), 3), Err(Error::Precondition(_))));
}

#[test]
fn explicit_quadrangles() {
    let q = stabilized_quadrangle(6, 1, 1).unwrap();
    let mut want = vec![
        Point::new(ratio(4, 6), ratio(1, 1)),
        Point::new(ratio(5, 7), ratio(1, 1)),
        Point::new(ratio(4, 8), ratio(6, 8)),
        Point::new(ratio(3, 7), ratio(5, 7)),
    ];
    want.sort();
    let mut got = q.vertices().to_vec();
    got.sort();
    assert_eq!(got, want);
    for r in 1..=4 {
        for m in stabilization_threshold(r)..stabilization_threshold(r) + 6 {
            for i in 1..=r {
                assert_eq!(region_area(&stabilized_quadrangle(m, i, r).unwrap()), area_formula(m));
            }
        }
    }
    assert!(stabilized_quadrangle(10, 2, 2).unwrap().is_subset_of(&tile(&[2])));
    assert!(matches!(stabilized_quadrangle(9, 1, 2), Err(Error::OutOfRegime { .. })));
}

#[test]
fn stabilized_pair_equals_single() {
    for m in 6..=60 {
        assert_eq!(tile(&[m, 1]).vertices(), tile(&[m]).vertices(), "m={m}");
    }
}
