use proptest::prelude::*;
use stairnet::combinatorics::for_each_product;
use stairnet::grid::build_grid_with;
use stairnet::scalar::{big, ratio};
use stairnet::selection::{
    class_bound, count_simplices_containing, gen_thin_triangles, probe_all, shares_coordinate, type_class_sizes,
};
use stairnet::{build_grid, GridSpec, Point};

/// One probe per interior gap cell, at the cell midpoints.
fn cell_midpoints(g: &GridSpec) -> Vec<Point> {
    let mut out = Vec::new();
    for_each_product(&vec![g.m() - 1; g.d()], |idx| {
        out.push(Point::new(
            idx.iter()
                .enumerate()
                .map(|(i, &j)| (big(g.coord(i, j).clone()) + big(g.coord(i, j + 1).clone())) * ratio(1, 2))
                .collect(),
        ));
        true
    });
    out
}

fn check_type_bound(g: &GridSpec) -> usize {
    let x = g.points();
    let mut checked = 0;
    for q in cell_midpoints(g) {
        assert!(!shares_coordinate(&q, &x));
        let sizes = type_class_sizes(&q, &x).unwrap();
        let far = count_simplices_containing(&q, &x, Some(g)).unwrap();
        assert!(far as u128 <= sizes.product(), "probe {q}: {far} > {:?}", sizes.sizes);
        checked += 1;
    }
    checked
}

#[test]
fn far_apart_simplices_are_bounded_by_type_classes() {
    for m in 2..=5 {
        assert_eq!(check_type_bound(&build_grid(2, m).unwrap()), (m - 1) * (m - 1));
        assert!(check_type_bound(&build_grid_with(2, m, 2, 10_000).unwrap()) > 0);
    }
    assert_eq!(check_type_bound(&build_grid(3, 3).unwrap()), 8);
    check_type_bound(&build_grid_with(3, 3, 2, 10_000).unwrap());
}

#[test]
fn thin_family_classes_obey_the_slack_bound() {
    let g = build_grid(2, 12).unwrap();
    let f = gen_thin_triangles(&g, &ratio(1, 12)).unwrap();
    f.validate().unwrap();
    let probes: Vec<Point> = (1..40)
        .map(|s| g.pi_inverse(&Point::new(vec![ratio((s * 37) % 101, 101), ratio((s * 53) % 103, 103)])).unwrap())
        .collect();
    for counts in probe_all(&f, &probes).unwrap() {
        for (dims, &c) in &counts.by_class {
            assert!(c <= class_bound(*dims, 12));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn balanced_probes_in_the_wide_grid(a in 0usize..3, b in 0usize..3) {
        // gap-2 grid: K_i x_ij lies strictly between x_ij and x_i(j+1) and is
        // far apart from both
        let g = build_grid_with(2, 4, 2, 10_000).unwrap();
        let q = Point::new(vec![big(g.k(0) * g.coord(0, a)), big(g.k(1) * g.coord(1, b))]);
        let x = g.points();
        let sizes = type_class_sizes(&q, &x).unwrap();
        prop_assert!(!sizes.shared_coordinate);
        let far = count_simplices_containing(&q, &x, Some(&g)).unwrap();
        prop_assert_eq!(far as u128, sizes.product());
        prop_assert!(count_simplices_containing(&q, &x, None).unwrap() >= far);
        prop_assert_eq!(sizes.sizes.iter().sum::<usize>(), x.len());
    }
}
