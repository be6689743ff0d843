use num_bigint::BigInt;
use proptest::prelude::*;
use stairnet::scalar::{big, ratio};
use stairnet::{build_grid, conv_intersects, sconv_intersects, Point, PointSet};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimal_grid_is_geometric(d in 1usize..4, m in 2usize..7) {
        let g = build_grid(d, m).unwrap();
        for i in 0..d {
            let k = g.k(i);
            let expected = if i == 0 { BigInt::from(1u64 << d) } else { BigInt::from(1u64 << d) * g.coord(i - 1, m - 1) };
            prop_assert_eq!(k, &expected);
            for j in 0..m {
                prop_assert_eq!(g.coord(i, j), &k.pow(j as u32));
            }
            for j in 1..m {
                prop_assert_eq!(&(k * g.coord(i, j - 1)), g.coord(i, j));
            }
        }
    }

    #[test]
    fn pi_preserves_coordinate_order(m in 2usize..6, a in prop::collection::vec(0i64..=60, 4)) {
        let g = build_grid(2, m).unwrap();
        let u = Point::new(vec![ratio(a[0], 60), ratio(a[1], 60)]);
        let v = Point::new(vec![ratio(a[2], 60), ratio(a[3], 60)]);
        let (p, q) = (g.pi_inverse(&u).unwrap(), g.pi_inverse(&v).unwrap());
        let (pu, qv) = (g.pi_map(&p).unwrap(), g.pi_map(&q).unwrap());
        prop_assert_eq!(&pu, &u);
        prop_assert_eq!(&qv, &v);
        for i in 0..2 {
            prop_assert_eq!(p[i] < q[i], u[i] < v[i]);
            prop_assert_eq!(p[i] == q[i], u[i] == v[i]);
        }
    }

    #[test]
    fn grid_points_differing_everywhere_are_far_apart(d in 1usize..4, m in 2usize..5, a in prop::collection::vec(0usize..4, 3), b in prop::collection::vec(0usize..4, 3)) {
        let g = build_grid(d, m).unwrap();
        let ia: Vec<usize> = a[..d].iter().map(|&x| x % m).collect();
        let ib: Vec<usize> = b[..d].iter().map(|&x| x % m).collect();
        let differ = ia.iter().zip(&ib).all(|(x, y)| x != y);
        prop_assert_eq!(g.far_apart(&g.point(&ia), &g.point(&ib)).unwrap(), differ);
    }

    #[test]
    fn far_apart_hulls_meet_exactly_when_stair_hulls_do(
        three in any::<bool>(),
        raw in prop::collection::vec(prop::collection::vec(0usize..4, 3), 5),
        split in 1usize..4,
    ) {
        let (d, m) = if three { (3, 3) } else { (2, 4) };
        let g = build_grid(d, m).unwrap();
        let total = raw.len().min(d + 2);
        let split = split.min(total - 1);
        let pts: Vec<Point> = raw[..total].iter().map(|c| g.point(&c[..d].iter().map(|&x| x % m).collect::<Vec<_>>())).collect();
        let p = PointSet::new(d, pts[..split].to_vec()).unwrap();
        let q = PointSet::new(d, pts[split..].to_vec()).unwrap();
        prop_assume!(g.far_apart_sets(&p, &q).unwrap());
        prop_assert_eq!(conv_intersects(&p, &q).unwrap(), sconv_intersects(&p, &q).unwrap());
    }
}

#[test]
fn lifted_unit_points_stay_in_the_box() {
    let g = build_grid(3, 4).unwrap();
    let top = Point::new((0..3).map(|i| big(g.coord(i, 3).clone())).collect());
    assert_eq!(g.pi_map(&top).unwrap(), Point::from_ints(&[1, 1, 1]));
    assert!(g.bounding_box().contains(&g.pi_inverse(&Point::new(vec![ratio(1, 3); 3])).unwrap()));
}
