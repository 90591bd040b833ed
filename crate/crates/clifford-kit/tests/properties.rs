//! Property tests over randomized inputs drawn around the catalog.

use proptest::prelude::*;

use clifford_kit::catalog;
use clifford_kit::construct::reduced_product;
use clifford_kit::embed::{embed_into_reduced_products, EmbedOptions};
use clifford_kit::hom::{enumerate_homs_backtracking, enumerate_homs_scan};
use clifford_kit::metric::{
    check_metric_flags, cone_metric, ratio, subinvariant_closure, word_metric, ConePoint,
    MetricMatrix, Ratio,
};
use clifford_kit::order::natural_order;
use clifford_kit::semigroup::{classify, clifford_structure, is_ideal, FiniteSemigroup};

fn small_clifford_members(max_size: usize) -> Vec<FiniteSemigroup> {
    catalog::catalog()
        .into_iter()
        .filter(|e| e.semigroup.size() <= max_size)
        .map(|e| e.semigroup)
        .collect()
}

fn semilattice_members(max_size: usize) -> Vec<FiniteSemigroup> {
    catalog::catalog()
        .into_iter()
        .filter(|e| e.semigroup.size() <= max_size && classify(&e.semigroup).is_semilattice)
        .map(|e| e.semigroup)
        .collect()
}

fn group_members(max_size: usize) -> Vec<FiniteSemigroup> {
    catalog::catalog()
        .into_iter()
        .filter(|e| e.semigroup.size() <= max_size && classify(&e.semigroup).is_group)
        .map(|e| e.semigroup)
        .collect()
}

/// Random distances in [1, 2]: the triangle inequality holds automatically,
/// so any symmetric choice is a metric.
#[allow(clippy::needless_range_loop)]
fn random_metric(s: &FiniteSemigroup, quarters: &[u8]) -> MetricMatrix {
    let n = s.size();
    let mut d = vec![vec![Ratio::from_integer(0); n]; n];
    let mut k = 0usize;
    for x in 0..n {
        for y in x + 1..n {
            let v = ratio(4 + i64::from(quarters[k % quarters.len()]), 4);
            d[x][y] = v;
            d[y][x] = v;
            k += 1;
        }
    }
    MetricMatrix::new(s.clone(), d).expect("values in [1,2] always form a metric")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The two-sided closure is a subinvariant metric whatever the input
    /// metric, including on the noncommutative members.
    #[test]
    fn closure_is_always_subinvariant(
        member in 0usize..small_clifford_members(8).len(),
        quarters in proptest::collection::vec(0u8..=4, 1..40),
    ) {
        let s = small_clifford_members(8)[member].clone();
        let c = clifford_structure(&s).unwrap();
        let m = random_metric(&s, &quarters);
        let closed = subinvariant_closure(&m, &c);
        let flags = check_metric_flags(&closed, &c);
        prop_assert!(flags.subinvariant);
        // and it dominates the input pointwise
        for x in 0..s.size() {
            for y in 0..s.size() {
                prop_assert!(closed.get(x, y) >= m.get(x, y));
            }
        }
    }

    /// Down-closing an arbitrary subset of a semilattice yields an ideal,
    /// and the reduced product over it is again Clifford of the exact size.
    #[test]
    fn reduced_products_over_down_closures_stay_clifford(
        sl in 0usize..semilattice_members(6).len(),
        g in 0usize..group_members(6).len(),
        seed in proptest::collection::vec(any::<bool>(), 6),
    ) {
        let e = semilattice_members(6)[sl].clone();
        let h = group_members(6)[g].clone();
        let order = natural_order(&e).unwrap();
        let mut ideal: Vec<usize> = Vec::new();
        for x in 0..e.size() {
            if seed[x % seed.len()] {
                for y in order.down_set(x) {
                    if !ideal.contains(&y) {
                        ideal.push(y);
                    }
                }
            }
        }
        ideal.sort_unstable();
        prop_assert!(is_ideal(&e, &ideal));
        let rp = reduced_product(&e, &ideal, &h).unwrap();
        let expected = ideal.len() + (e.size() - ideal.len()) * h.size();
        prop_assert_eq!(rp.semigroup.size(), expected);
        prop_assert!(classify(&rp.semigroup).is_clifford);
        // the first embedding stays injective on the result
        let report = embed_into_reduced_products(&rp.semigroup, None, &EmbedOptions::default()).unwrap();
        prop_assert!(report.injective && report.hom_verified);
    }

    /// Exhaustive scan and pruned backtracking enumerate the same set.
    #[test]
    fn hom_enumeration_routes_agree(
        xi in 0usize..small_clifford_members(4).len(),
        yi in 0usize..small_clifford_members(5).len(),
    ) {
        let x = small_clifford_members(4)[xi].clone();
        let y = small_clifford_members(5)[yi].clone();
        let scan = enumerate_homs_scan(&x, &y, u128::MAX).unwrap();
        let back = enumerate_homs_backtracking(&x, &y, u128::MAX).unwrap();
        prop_assert_eq!(
            scan.iter().map(|h| h.map().to_vec()).collect::<Vec<_>>(),
            back.iter().map(|h| h.map().to_vec()).collect::<Vec<_>>()
        );
    }

    /// Triangle inequality of the cone distance on arbitrary rational points
    /// over the word metric of the symmetric group.
    #[test]
    fn cone_metric_triangle_on_random_points(
        pts in proptest::collection::vec((0i64..=4, 0usize..6), 3),
    ) {
        let s3 = catalog::find("s3").unwrap();
        let dg = word_metric(&s3, &[1, 2, 5]).unwrap();
        let points: Vec<ConePoint> = pts
            .iter()
            .map(|&(q, h)| ConePoint::new(ratio(q, 4), h).unwrap())
            .collect();
        let d = |a: usize, b: usize| cone_metric(&dg, &points[a], &points[b]);
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2));
        prop_assert_eq!(d(0, 1), d(1, 0));
        prop_assert_eq!(d(0, 0), Ratio::from_integer(0));
    }
}
