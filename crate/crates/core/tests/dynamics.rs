use farey_odd::rational::ratio;
use farey_odd::{build_region, farey_seq, index_nu, kappa, orbit_kappas, t_inv, t_map, ConvexRegion, IndexTuple, TrianglePoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn tile(ks: &[u64]) -> ConvexRegion {
    build_region(&IndexTuple::new(ks.to_vec()).unwrap())
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Interior sample points of a region: positive-weight averages of its vertices.
fn samples(region: &ConvexRegion) -> Vec<TrianglePoint> {
    let vs = region.vertices();
    let weights: [&[i64]; 5] = [&[1, 1, 1, 1], &[5, 1, 1, 1], &[1, 7, 2, 1], &[1, 1, 9, 3], &[2, 1, 1, 11]];
    weights
        .iter()
        .map(|w| {
            let total: i64 = w.iter().take(vs.len()).sum();
            let x = vs.iter().zip(w.iter()).map(|(v, &c)| &v.x * int(c)).sum::<BigRational>() / int(total);
            let y = vs.iter().zip(w.iter()).map(|(v, &c)| &v.y * int(c)).sum::<BigRational>() / int(total);
            TrianglePoint::new(x, y).unwrap()
        })
        .collect()
}

fn arb_point() -> impl Strategy<Value = TrianglePoint> {
    (1i64..=60, 1i64..=60, 1i64..=60).prop_filter_map("outside the triangle", |(a, b, d)| {
        TrianglePoint::new(ratio(a, d), ratio(b, d)).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn inverse_undoes_the_map(p in arb_point()) {
        prop_assert_eq!(t_inv(&t_map(&p)), p.clone());
        prop_assert_eq!(t_map(&t_inv(&p)), p);
    }

    #[test]
    fn map_stays_in_the_triangle(p in arb_point()) {
        let q = t_map(&p);
        prop_assert!(TrianglePoint::new(q.x().clone(), q.y().clone()).is_ok());
    }
}

#[test]
fn fixed_point() {
    let p = TrianglePoint::new(ratio(1, 1), ratio(1, 1)).unwrap();
    assert_eq!(orbit_kappas(&p, 3), vec![2, 2, 2]);
}

#[test]
fn denominators_follow_the_map() {
    for q in 2..=200u64 {
        let dens: Vec<u64> = farey_seq(q).unwrap().map(|f| f.den()).collect();
        for w in dens.windows(3) {
            let p = TrianglePoint::from_denominators(w[0], w[1], q).unwrap();
            let next = TrianglePoint::from_denominators(w[1], w[2], q).unwrap();
            assert_eq!(t_map(&p), next, "Q={q} {:?}", w);
        }
    }
}

#[test]
fn kappa_is_the_farey_index() {
    let fr: Vec<_> = farey_seq(8).unwrap().collect();
    let p = TrianglePoint::from_denominators(fr[0].den(), fr[1].den(), 8).unwrap();
    let nus: Vec<u64> = fr.windows(2).take(4).map(|w| index_nu(8, w[0], w[1]).unwrap()).collect();
    assert_eq!(orbit_kappas(&p, 4), nus);
}

#[test]
fn large_tiles_pull_back_by_shears() {
    for r in 1..=5i64 {
        let c = 4 * r + 2;
        for m in [c, c + 1, c + 7, 3 * c] {
            for p in samples(&tile(&[m as u64])) {
                assert_eq!(kappa(&p), m as u64);
                let (x, y) = (p.x().clone(), p.y().clone());
                let mut back = p.clone();
                for i in 1..=r {
                    back = t_inv(&back);
                    assert_eq!(back.x(), &(&x - int(i) * &y), "m={m} i={i}");
                    assert_eq!(back.y(), &(&x - int(i - 1) * &y));
                    assert_eq!(kappa(&back), if i == 1 { 1 } else { 2 }, "m={m} i={i}");
                }
            }
        }
    }
}

#[test]
fn large_tiles_push_forward_by_shears() {
    for r in 2..=5i64 {
        let c = 4 * r + 2;
        for m in [c, c + 1, c + 7, 3 * c] {
            for p in samples(&tile(&[m as u64])) {
                let (x, y) = (p.x().clone(), p.y().clone());
                let mut fwd = p.clone();
                for i in 1..=r {
                    fwd = t_map(&fwd);
                    if i >= 2 {
                        assert_eq!(fwd.x(), &(int(m + 2 - i) * &y - &x), "m={m} i={i}");
                        assert_eq!(fwd.y(), &(int(m + 1 - i) * &y - &x));
                    }
                }
            }
        }
    }
}

#[test]
fn tiles_land_where_expected() {
    let lands_in = |m: u64, allowed: &[u64]| {
        for p in samples(&tile(&[m])) {
            let k = kappa(&t_map(&p));
            assert!(allowed.contains(&k), "T(T_{m}) hit T_{k}");
        }
    };
    for m in 6..=40 {
        lands_in(m, &[1]);
    }
    lands_in(4, &[1, 2]);
    lands_in(5, &[1, 2]);
    lands_in(3, &[1, 2, 3, 4]);
    lands_in(2, &[1, 2, 3]);
}
