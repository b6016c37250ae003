use hermorient_core::graph::{parse_edge_list, switch, Graph, Orientation, PartialAssignment};
use hermorient_core::matching::{matching_counts, matching_polynomial, matching_radius};
use hermorient_core::orient::{
    brute_force_extremes, expected_charpoly_brute, expected_charpoly_fast, greedy_orient, Mode,
};
use hermorient_core::poly::{interlaces, largest_root, Polynomial};
use hermorient_core::spectral::{
    adjacency_char_poly, adjacency_spectral_radius, char_poly_exact, eigenvalues, hermitian_matrix,
};
use hermorient_core::ucover::cover_radius_profile;
use num_bigint::BigInt;
use proptest::prelude::*;

const TOL: f64 = 1e-10;

/// Graphs on `1..=max_n` vertices, each pair an edge with probability 1/2.
fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn with_orientation(max_n: usize) -> impl Strategy<Value = (Graph, Orientation)> {
    graphs(max_n).prop_flat_map(|g| {
        let m = g.m();
        (Just(g), any::<u64>()).prop_map(move |(g, bits)| {
            let idx = if m >= 64 {
                bits
            } else {
                bits & ((1u64 << m) - 1)
            };
            let o = Orientation::from_index(&g, idx);
            (g, o)
        })
    })
}

/// Matching counts by enumerating all edge subsets.
fn brute_matching_counts(g: &Graph) -> Vec<u64> {
    let mut counts = vec![0u64; g.n() / 2 + 1];
    for subset in 0u32..1 << g.m() {
        let mut used = 0u32;
        let ok = g.edges().iter().enumerate().all(|(i, &(u, v))| {
            if subset >> i & 1 == 0 {
                return true;
            }
            let uv = 1 << u | 1 << v;
            let free = used & uv == 0;
            used |= uv;
            free
        });
        if ok {
            counts[subset.count_ones() as usize] += 1;
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn switching_preserves_spectrum((g, o) in with_orientation(7), set in proptest::collection::vec(any::<bool>(), 7)) {
        let chosen: Vec<usize> = (0..g.n()).filter(|&v| set[v]).collect();
        let s = switch(&g, &o, &chosen).unwrap();
        let a = char_poly_exact(&hermitian_matrix(&g, &o).unwrap()).unwrap();
        let b = char_poly_exact(&hermitian_matrix(&g, &s).unwrap()).unwrap();
        prop_assert_eq!(a, b);
        let ea = eigenvalues(&hermitian_matrix(&g, &o).unwrap(), TOL).unwrap();
        let eb = eigenvalues(&hermitian_matrix(&g, &s).unwrap(), TOL).unwrap();
        for (x, y) in ea.eigenvalues().iter().zip(eb.eigenvalues()) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn reversal_preserves_char_poly((g, o) in with_orientation(7)) {
        let a = char_poly_exact(&hermitian_matrix(&g, &o).unwrap()).unwrap();
        let b = char_poly_exact(&hermitian_matrix(&g, &o.reversed()).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn edge_list_round_trip(g in graphs(9)) {
        prop_assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g.clone());
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), g);
    }

    #[test]
    fn components_partition_vertices(g in graphs(9)) {
        let comps = g.components();
        let mut all: Vec<usize> = comps.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        for &(u, v) in g.edges() {
            prop_assert!(comps.iter().any(|c| c.contains(&u) && c.contains(&v)));
        }
    }

    #[test]
    fn spectrum_is_symmetric_and_matches_char_poly((g, o) in with_orientation(7)) {
        let h = hermitian_matrix(&g, &o).unwrap();
        let s = eigenvalues(&h, TOL).unwrap();
        prop_assert!(s.asymmetry() <= 1e-9);
        prop_assert!((s.radius() - s.lambda1()).abs() <= 1e-9);
        let p = char_poly_exact(&h).unwrap();
        prop_assert_eq!(p.coeff(g.n()), BigInt::from(1));
        if g.n() >= 2 {
            prop_assert_eq!(p.coeff(g.n() - 2), BigInt::from(-(g.m() as i64)));
        }
        prop_assert!(p.has_single_parity());
        if g.n() >= 1 {
            let top = largest_root(&p, 1e-12).unwrap();
            prop_assert!((top - s.lambda1()).abs() <= 1e-8);
        }
    }

    #[test]
    fn largest_root_scaling_invariant(roots in proptest::collection::vec(-20i64..20, 1..7), c in 1i64..50) {
        let p = Polynomial::from_roots(&roots);
        let q = p.scale(&BigInt::from(c));
        let a = largest_root(&p, TOL).unwrap();
        prop_assert_eq!(a, largest_root(&q, TOL).unwrap());
        prop_assert!((a - *roots.iter().max().unwrap() as f64).abs() <= TOL);
    }

    #[test]
    fn derivative_interlaces(roots in proptest::collection::vec(-20i64..20, 2..8)) {
        let p = Polynomial::from_roots(&roots);
        prop_assert!(interlaces(&p.derivative(), &p, TOL).unwrap());
    }

    #[test]
    fn matching_recursion_matches_enumeration(g in graphs(7)) {
        prop_assume!(g.m() <= 12);
        let counts = matching_counts(&g).unwrap();
        let want = brute_matching_counts(&g);
        prop_assert_eq!(counts.counts(), want.as_slice());
    }

    #[test]
    fn forests_are_cospectral_with_adjacency((g, o) in with_orientation(9)) {
        prop_assume!(g.m() + g.components().len() == g.n());
        let h = char_poly_exact(&hermitian_matrix(&g, &o).unwrap()).unwrap();
        prop_assert_eq!(&h, &adjacency_char_poly(&g).unwrap());
        prop_assert_eq!(h, matching_polynomial(&g).unwrap());
    }

    #[test]
    fn fast_expansion_matches_brute_force((g, o) in with_orientation(6), depth in 0usize..16) {
        let k = depth.min(g.m());
        let pa = PartialAssignment::new(&g, o.signs()[..k].to_vec()).unwrap();
        prop_assert_eq!(
            expected_charpoly_fast(&g, &pa).unwrap(),
            expected_charpoly_brute(&g, &pa).unwrap()
        );
    }

    #[test]
    fn parent_is_average_of_children((g, o) in with_orientation(6), depth in 0usize..16) {
        prop_assume!(g.m() > 0);
        let k = depth.min(g.m() - 1);
        let pa = PartialAssignment::new(&g, o.signs()[..k].to_vec()).unwrap();
        let parent = expected_charpoly_fast(&g, &pa).unwrap();
        let plus = expected_charpoly_fast(&g, &pa.child(1)).unwrap();
        let minus = expected_charpoly_fast(&g, &pa.child(-1)).unwrap();
        prop_assert_eq!(parent.scale(&BigInt::from(2)), &plus + &minus);
    }

    #[test]
    fn greedy_bounds_and_monotone_path(g in graphs(7)) {
        let rho_mu = matching_radius(&g, TOL).unwrap();
        let min = greedy_orient(&g, Mode::Min, TOL).unwrap();
        prop_assert!(min.value <= rho_mu + 1e-9);
        for w in min.path_roots.windows(2) {
            prop_assert!(w[1] <= w[0] + TOL);
        }
        let max = greedy_orient(&g, Mode::Max, TOL).unwrap();
        prop_assert!(max.value >= rho_mu - 1e-9);
    }

    #[test]
    fn brute_extremes_bracket_matching_radius(g in graphs(6)) {
        prop_assume!(g.m() <= 10);
        let rho_mu = matching_radius(&g, TOL).unwrap();
        let ex = brute_force_extremes(&g, TOL).unwrap();
        prop_assert!(ex.min_lambda1 <= rho_mu + 1e-9);
        prop_assert!(ex.max_rho >= rho_mu - 1e-9);
        let again = brute_force_extremes(&g, TOL).unwrap();
        prop_assert_eq!(ex.min_orientation, again.min_orientation);
        prop_assert_eq!(ex.max_orientation, again.max_orientation);
        let total: u64 = ex.histogram.iter().map(|b| b.count).sum();
        prop_assert_eq!(total, 1u64 << g.m());
    }

    #[test]
    fn cover_profile_monotone_and_below_adjacency(g in graphs(6)) {
        let profile = cover_radius_profile(&g, 5, TOL).unwrap();
        let rho = adjacency_spectral_radius(&g).unwrap();
        let rho_mu = matching_radius(&g, TOL).unwrap();
        for w in profile.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        let forest = g.m() + g.components().len() == g.n();
        for &v in &profile {
            prop_assert!(v <= rho + 1e-9);
            if forest {
                prop_assert!(v <= rho_mu + 1e-9);
            }
        }
    }
}
