//! Reference values checked against brute-force computations written here,
//! independent of the library's own search code.

use fswap_core::bounds::{
    bandwidth_exact, boundary_profile, dense_bounds, hubbard_bounds, order_bandwidth,
    swap_depth_lower_bound, two_bandwidth_exact,
};
use fswap_core::fermioracle::{hubbard_matrix, jw_ladder, mode_permutation_check, trotter_error_check};
use fswap_core::isoperimetry::{
    closure, is_initial_segment_closed, shells, sigma_rows, vertex_boundary, verify_isoperimetric,
    wang_wang_order, LinearOrder, VertexSet,
};
use fswap_core::lattice::{interaction_graph, make_grid, Coord, GridGraph, HubbardModel, InteractionGraph};
use fswap_core::synth::{
    dense_network, grid_network, hubbard_network, interleave_orders, round_robin_matchings,
    triangular_network, DenseMode,
};
use fswap_core::verify::{check_against_bounds, coverage, min_swap_depth_exhaustive, simulate};
use fswap_core::Error;

fn c(v: &[usize]) -> Coord {
    Coord::new(v.to_vec())
}

fn coords(g: &GridGraph, r: &LinearOrder) -> Vec<Coord> {
    r.to_coords(g)
}

fn set(g: &GridGraph, cs: &[&[usize]]) -> VertexSet {
    let mut s = VertexSet::with_capacity(g.num_vertices());
    for &x in cs {
        s.insert(g.index(&c(x)).unwrap());
    }
    s
}

/// Edges by direct coordinate comparison: differ by one in exactly one axis.
fn brute_edges(g: &GridGraph) -> Vec<(usize, usize)> {
    let n = g.num_vertices();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (ca, cb) = (g.coord(a), g.coord(b));
            let dist: usize = ca
                .components()
                .iter()
                .zip(cb.components())
                .map(|(x, y)| x.abs_diff(*y))
                .sum();
            if dist == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// (bandwidth, 2-bandwidth) over every vertex order.
fn brute_bandwidths(edges: &[(usize, usize)], n: usize) -> (usize, usize) {
    let mut nbrs = vec![Vec::new(); n];
    for &(a, b) in edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let (mut best1, mut best2) = (usize::MAX, usize::MAX);
    for seq in permutations(n) {
        let mut rank = vec![0; n];
        for (i, &v) in seq.iter().enumerate() {
            rank[v] = i;
        }
        let b1 = edges.iter().map(|&(a, b)| rank[a].abs_diff(rank[b])).max().unwrap_or(0);
        let mut b2 = 0;
        for v in 0..n {
            for (i, &x) in nbrs[v].iter().enumerate() {
                for &y in &nbrs[v][i + 1..] {
                    let rs = [rank[v], rank[x], rank[y]];
                    b2 = b2.max(rs.iter().max().unwrap() - rs.iter().min().unwrap());
                }
            }
        }
        best1 = best1.min(b1);
        best2 = best2.min(b2);
    }
    (best1, best2)
}

#[test]
fn grid_edge_counts() {
    for (dims, v, e) in [(vec![2], 2, 1), (vec![3, 3], 9, 12), (vec![2, 2, 2], 8, 12)] {
        let g = make_grid(&dims).unwrap();
        assert_eq!(g.num_vertices(), v);
        assert_eq!(g.edges().len(), e);
        assert_eq!(g.edges(), brute_edges(&g));
    }
    assert!(matches!(make_grid(&[]), Err(Error::InvalidArgument(_))));
    assert!(matches!(make_grid(&[3, 0]), Err(Error::InvalidArgument(_))));
}

#[test]
fn neighbor_examples() {
    let g = make_grid(&[3, 3]).unwrap();
    let mut got = g.neighbors_of(&c(&[1, 1])).unwrap();
    got.sort();
    let mut want = vec![c(&[0, 1]), c(&[2, 1]), c(&[1, 0]), c(&[1, 2])];
    want.sort();
    assert_eq!(got, want);
    let mut corner = g.neighbors_of(&c(&[0, 0])).unwrap();
    corner.sort();
    assert_eq!(corner, vec![c(&[0, 1]), c(&[1, 0])]);
    let g = make_grid(&[2, 3, 3]).unwrap();
    let mut got = g.neighbors_of(&c(&[1, 2, 2])).unwrap();
    got.sort();
    assert_eq!(got, vec![c(&[0, 2, 2]), c(&[1, 1, 2]), c(&[1, 2, 1])]);
    assert!(g.neighbors_of(&c(&[2, 0, 0])).is_err());
}

#[test]
fn hubbard_interaction_graphs() {
    let ig = interaction_graph(&HubbardModel::new(3, 3, false).unwrap()).unwrap();
    assert_eq!((ig.edges().len(), ig.site_terms().len()), (12, 9));
    assert_eq!(ig.degree_bound(), 4);
    let ig = interaction_graph(&HubbardModel::new(3, 3, true).unwrap()).unwrap();
    let onsite = ig.edges().iter().filter(|e| e.kind.as_str() == "onsite_pair").count();
    assert_eq!((ig.edges().len(), onsite), (33, 9));
    assert_eq!(ig.degree_bound(), 5);
    let ig = interaction_graph(&HubbardModel::new(1, 2, false).unwrap()).unwrap();
    assert_eq!((ig.edges().len(), ig.site_terms().len(), ig.degree_bound()), (1, 2, 1));
}

#[test]
fn wang_wang_examples() {
    let g = make_grid(&[3]).unwrap();
    assert_eq!(wang_wang_order(&g), LinearOrder::identity(3));
    let g = make_grid(&[2, 3]).unwrap();
    let want: Vec<Coord> = [[0, 0], [1, 0], [0, 1], [1, 1], [0, 2], [1, 2]].iter().map(|x| c(x)).collect();
    assert_eq!(coords(&g, &wang_wang_order(&g)), want);
    let g = make_grid(&[3, 3]).unwrap();
    let first: Vec<Coord> = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1]].iter().map(|x| c(x)).collect();
    assert_eq!(coords(&g, &wang_wang_order(&g))[..5], first[..]);
}

#[test]
fn boundary_and_closure_examples() {
    let g = make_grid(&[3, 3]).unwrap();
    let empty = VertexSet::with_capacity(9);
    assert_eq!(vertex_boundary(&g, &empty), empty);
    assert_eq!(closure(&g, &empty), empty);
    let origin = set(&g, &[&[0, 0]]);
    assert_eq!(vertex_boundary(&g, &origin), set(&g, &[&[1, 0], &[0, 1]]));
    assert_eq!(closure(&g, &origin), set(&g, &[&[0, 0], &[1, 0], &[0, 1]]));
    let mut all = VertexSet::with_capacity(9);
    all.insert_range(..);
    assert_eq!(vertex_boundary(&g, &all), empty);
    assert_eq!(closure(&g, &all), all);
}

#[test]
fn shell_examples() {
    let g = make_grid(&[3, 3]).unwrap();
    let sizes: Vec<usize> = shells(&g).shells.iter().map(|s| s.len()).collect();
    assert_eq!(sizes, vec![1, 2, 3, 2, 1]);
    assert_eq!(shells(&make_grid(&[5]).unwrap()).shells.len(), 5);
    let g = make_grid(&[2, 3, 3]).unwrap();
    let mut s2: Vec<Coord> = shells(&g).shells[2].iter().map(|&v| g.coord(v)).collect();
    s2.sort();
    let want: Vec<Coord> = [[0, 0, 2], [0, 1, 1], [0, 2, 0], [1, 0, 1], [1, 1, 0]].iter().map(|x| c(x)).collect();
    assert_eq!(s2, want);
}

#[test]
fn closure_property_examples() {
    let g = make_grid(&[3, 3]).unwrap();
    assert!(is_initial_segment_closed(&g, &wang_wang_order(&g)));
    let row_major: Vec<Coord> = (0..3).flat_map(|j| (0..3).map(move |i| c(&[i, j]))).collect();
    let rm = LinearOrder::from_coords(&g, &row_major).unwrap();
    assert!(!is_initial_segment_closed(&g, &rm));
    let g = make_grid(&[2]).unwrap();
    for seq in permutations(2) {
        assert!(is_initial_segment_closed(&g, &LinearOrder::from_sequence(seq).unwrap()));
    }
}

#[test]
fn isoperimetry_examples() {
    for dims in [vec![3, 3], vec![2, 3, 3]] {
        let g = make_grid(&dims).unwrap();
        assert!(verify_isoperimetric(&g, &wang_wang_order(&g), 20).unwrap().ok);
    }
    let g = make_grid(&[3, 3]).unwrap();
    let snake: Vec<Coord> = [[0, 0], [1, 0], [2, 0], [2, 1], [1, 1], [0, 1], [0, 2], [1, 2], [2, 2]]
        .iter()
        .map(|x| c(x))
        .collect();
    let rep = verify_isoperimetric(&g, &LinearOrder::from_coords(&g, &snake).unwrap(), 20).unwrap();
    assert!(!rep.ok);
    let big = make_grid(&[5, 5]).unwrap();
    assert!(matches!(
        verify_isoperimetric(&big, &wang_wang_order(&big), 20),
        Err(Error::SizeExceeded { .. })
    ));
}

#[test]
fn minimum_boundary_matches_subset_enumeration() {
    let g = make_grid(&[3, 3]).unwrap();
    let n = 9;
    let mut best = vec![usize::MAX; n + 1];
    for mask in 0u32..1 << n {
        let mut s = VertexSet::with_capacity(n);
        for v in 0..n {
            if mask >> v & 1 == 1 {
                s.insert(v);
            }
        }
        let k = mask.count_ones() as usize;
        best[k] = best[k].min(vertex_boundary(&g, &s).count_ones(..));
    }
    let rep = verify_isoperimetric(&g, &wang_wang_order(&g), 9).unwrap();
    assert_eq!(rep.min_boundary, best);
}

#[test]
fn sigma_row_examples() {
    let g = make_grid(&[3, 3]).unwrap();
    let rows = sigma_rows(&g, 2).unwrap();
    assert_eq!(rows.len(), 1);
    let els: Vec<Coord> = rows[0].elements.iter().map(|&v| g.coord(v)).collect();
    assert_eq!(els, vec![c(&[2, 0]), c(&[1, 1]), c(&[0, 2])]);
    assert!(sigma_rows(&g, 5).is_err());

    let g = make_grid(&[2, 3, 3]).unwrap();
    let rows = sigma_rows(&g, 2).unwrap();
    let got: Vec<Vec<Coord>> = rows
        .iter()
        .map(|r| r.elements.iter().map(|&v| g.coord(v)).collect())
        .collect();
    assert_eq!(
        got,
        vec![
            vec![c(&[0, 0, 2])],
            vec![c(&[1, 0, 1]), c(&[0, 1, 1])],
            vec![c(&[1, 1, 0]), c(&[0, 2, 0])],
        ]
    );
    let g = make_grid(&[5]).unwrap();
    let rows = sigma_rows(&g, 3).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].elements, vec![3]);
}

#[test]
fn order_bandwidth_examples() {
    let g = make_grid(&[3, 3]).unwrap();
    let r = wang_wang_order(&g);
    assert_eq!(order_bandwidth(&r, &[4]).unwrap(), 0);
    let w: Vec<usize> = [[0, 0], [1, 0]].iter().map(|x| g.index(&c(x)).unwrap()).collect();
    assert_eq!(order_bandwidth(&r, &w).unwrap(), 1);
    assert!(order_bandwidth(&r, &[]).is_err());
    let max = g
        .edges()
        .iter()
        .map(|&(a, b)| order_bandwidth(&r, &[a, b]).unwrap())
        .max()
        .unwrap();
    assert_eq!(max, 3);
}

#[test]
fn profile_examples() {
    let g = make_grid(&[3, 3]).unwrap();
    let rep = boundary_profile(&g, &wang_wang_order(&g));
    assert_eq!((rep.bandwidth, rep.two_bandwidth), (Some(3), Some(6)));
    let b_max: Vec<usize> = rep.profile.iter().filter(|p| p[1] == 3).map(|p| p[0]).collect();
    assert_eq!(b_max, vec![2, 3, 4, 5]);
    assert_eq!(rep.profile.iter().map(|p| p[2]).max(), Some(6));
    let g = make_grid(&[2, 2]).unwrap();
    let rep = boundary_profile(&g, &wang_wang_order(&g));
    let unions: Vec<usize> = rep.profile.iter().map(|p| p[2]).collect();
    assert_eq!(unions, vec![3, 2, 1, 0]);
    assert_eq!(rep.two_bandwidth, Some(3));
}

#[test]
fn exhaustive_bandwidths_match_brute_force() {
    for dims in [vec![4], vec![3], vec![2, 2], vec![2, 3], vec![2, 4], vec![2, 2, 2]] {
        let g = make_grid(&dims).unwrap();
        let want = brute_bandwidths(&g.edges(), g.num_vertices());
        let got = (bandwidth_exact(&g, 9).unwrap(), two_bandwidth_exact(&g, 9).unwrap());
        assert_eq!(got, want, "{dims:?}");
    }
    let g = make_grid(&[3, 3]).unwrap();
    assert_eq!(bandwidth_exact(&g, 9).unwrap(), 3);
    assert_eq!(two_bandwidth_exact(&g, 9).unwrap(), 6);
    assert_eq!(bandwidth_exact(&make_grid(&[4]).unwrap(), 9).unwrap(), 1);
    assert_eq!(two_bandwidth_exact(&make_grid(&[3]).unwrap(), 9).unwrap(), 2);
    assert!(bandwidth_exact(&make_grid(&[4, 4]).unwrap(), 9).is_err());
}

#[test]
fn lower_bound_examples() {
    assert_eq!(swap_depth_lower_bound(3, 6), 2);
    assert_eq!(swap_depth_lower_bound(3, 7), 3);
    assert_eq!(swap_depth_lower_bound(1, 2), 0);
}

#[test]
fn hubbard_bound_examples() {
    let rep = hubbard_bounds(&HubbardModel::new(3, 3, false).unwrap()).unwrap();
    assert_eq!((rep.two_bandwidth, rep.swap_depth_lb, rep.interaction_depth_lb), (Some(6), 2, 4));
    let rep = hubbard_bounds(&HubbardModel::new(3, 3, true).unwrap()).unwrap();
    assert_eq!((rep.two_bandwidth, rep.swap_depth_lb, rep.interaction_depth_lb), (Some(11), 5, 5));
    let rep = hubbard_bounds(&HubbardModel::new(2, 3, true).unwrap()).unwrap();
    assert_eq!((rep.two_bandwidth, rep.swap_depth_lb), (Some(8), 3));
    let rep = dense_bounds(4).unwrap();
    assert_eq!((rep.swap_depth_lb, rep.interaction_depth_lb), (2, 3));
}

#[test]
fn dense_examples() {
    for (n, swaps, inter) in [(2, 0, 1), (4, 2, 4), (5, 3, 5)] {
        let net = dense_network(n, DenseMode::SwapOptimal).unwrap();
        let rep = coverage(&net, &InteractionGraph::complete(n).unwrap()).unwrap();
        assert!(rep.is_complete());
        assert_eq!(rep.covered.len(), n * (n - 1) / 2);
        assert_eq!((rep.swap_depth, rep.interaction_depth), (swaps, inter));
    }
    assert!(matches!(
        dense_network(5, DenseMode::InteractionOptimal),
        Err(Error::UnsupportedMode(_))
    ));
    let net = dense_network(6, DenseMode::InteractionOptimal).unwrap();
    let rep = coverage(&net, &InteractionGraph::complete(6).unwrap()).unwrap();
    assert!(rep.is_complete());
    assert_eq!(rep.interaction_depth, 5);
}

#[test]
fn round_robin_examples() {
    let one = round_robin_matchings(2).unwrap();
    assert_eq!(one.len(), 1);
    assert!(one[0] == [(0, 1)] || one[0] == [(1, 0)]);
    assert_eq!(
        round_robin_matchings(4).unwrap(),
        vec![vec![(3, 0), (1, 2)], vec![(3, 1), (2, 0)], vec![(3, 2), (0, 1)]]
    );
    assert!(matches!(round_robin_matchings(5), Err(Error::InvalidArgument(_))));
    for n in [4, 6] {
        let ms = round_robin_matchings(n).unwrap();
        assert_eq!(ms.len(), n - 1);
        let mut all: Vec<(usize, usize)> = ms
            .iter()
            .flatten()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        assert!(ms.iter().all(|m| m.len() == n / 2));
        all.sort();
        all.dedup();
        assert_eq!(all.len(), n * (n - 1) / 2);
    }
}

#[test]
fn interleave_examples() {
    let g = make_grid(&[3, 3]).unwrap();
    let want: Vec<Coord> = [[1, 0], [0, 0], [0, 1], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2], [2, 2]]
        .iter()
        .map(|x| c(x))
        .collect();
    assert_eq!(coords(&g, &interleave_orders(&g).unwrap()), want);
    let g = make_grid(&[2, 2]).unwrap();
    let want: Vec<Coord> = [[1, 0], [0, 0], [0, 1], [1, 1]].iter().map(|x| c(x)).collect();
    assert_eq!(coords(&g, &interleave_orders(&g).unwrap()), want);
    let g = make_grid(&[2]).unwrap();
    assert_eq!(interleave_orders(&g).unwrap(), LinearOrder::identity(2));
}

#[test]
fn hubbard_network_examples() {
    let check = |m: HubbardModel, swaps: usize, inter: usize, edges: usize| {
        let ig = interaction_graph(&m).unwrap();
        let rep = coverage(&hubbard_network(&m).unwrap(), &ig).unwrap();
        assert!(rep.is_complete(), "{m:?}");
        assert_eq!((rep.swap_depth, rep.interaction_depth, rep.covered.len()), (swaps, inter, edges), "{m:?}");
    };
    check(HubbardModel::new(3, 3, false).unwrap(), 2, 4, 12);
    check(HubbardModel::new(3, 3, true).unwrap(), 5, 6, 33);
    check(HubbardModel::new(1, 4, false).unwrap(), 0, 2, 3);
    // the 2x2x2 grid: 4 onsite pairs and 8 hops
    check(HubbardModel::new(2, 2, true).unwrap(), 3, 5, 12);
}

#[test]
fn grid_network_examples() {
    let g = grid_network(&[3, 3]).unwrap();
    let h = hubbard_network(&HubbardModel::new(3, 3, false).unwrap()).unwrap();
    let gi = InteractionGraph::grid_hops(make_grid(&[3, 3]).unwrap()).unwrap();
    let (rg, rh) = (coverage(&g, &gi).unwrap(), coverage(&h, &interaction_graph(&HubbardModel::new(3, 3, false).unwrap()).unwrap()).unwrap());
    assert_eq!((rg.swap_depth, rg.interaction_depth), (rh.swap_depth, rh.interaction_depth));
    assert!(rg.is_complete() && rh.is_complete());

    let cube = make_grid(&[2, 2, 2]).unwrap();
    let net = grid_network(&[2, 2, 2]).unwrap();
    let rep = coverage(&net, &InteractionGraph::grid_hops(cube.clone()).unwrap()).unwrap();
    assert_eq!(rep.covered.len(), 12);
    let prof = boundary_profile(&cube, &wang_wang_order(&cube));
    let lb = swap_depth_lower_bound(prof.bandwidth.unwrap(), prof.two_bandwidth.unwrap());
    assert!(rep.swap_depth >= lb.max(3));
    assert_eq!(grid_network(&[4]).unwrap().swap_depth(), 0);
}

#[test]
fn triangular_examples() {
    let (ig, net) = triangular_network(2, 2).unwrap();
    let rep = coverage(&net, &ig).unwrap();
    assert!(rep.is_complete());
    assert_eq!((ig.edges().len(), rep.swap_depth), (5, 1));
    let (ig, net) = triangular_network(3, 3).unwrap();
    let rep = coverage(&net, &ig).unwrap();
    assert!(rep.is_complete());
    assert_eq!(ig.edges().len(), 16);
    let (ig, net) = triangular_network(1, 5).unwrap();
    assert_eq!((ig.edges().len(), net.swap_depth()), (4, 0));
}

#[test]
fn simulation_examples() {
    let net = hubbard_network(&HubbardModel::new(3, 3, false).unwrap()).unwrap();
    let g = net.grid().clone();
    let trace = simulate(&net).unwrap();
    let want: Vec<Coord> = [[0, 0], [2, 0], [1, 0], [1, 1], [0, 1], [0, 2], [2, 1], [2, 2], [1, 2]]
        .iter()
        .map(|x| c(x))
        .collect();
    assert_eq!(coords(&g, trace.last().unwrap()), want);

    let net = hubbard_network(&HubbardModel::new(2, 2, false).unwrap()).unwrap();
    let g = net.grid().clone();
    let pair_adjacent = |a: &[usize], b: &[usize]| {
        let (a, b) = (g.index(&c(a)).unwrap(), g.index(&c(b)).unwrap());
        simulate(&net).unwrap().iter().any(|r| r.rank(a).abs_diff(r.rank(b)) == 1)
    };
    assert!(pair_adjacent(&[0, 0], &[0, 1]));
    assert!(pair_adjacent(&[1, 0], &[1, 1]));
}

#[test]
fn optimality_examples() {
    let cases = [
        (HubbardModel::new(3, 3, false).unwrap(), (true, true)),
        (HubbardModel::new(3, 3, true).unwrap(), (true, false)),
    ];
    for (m, want) in cases {
        let rep = coverage(&hubbard_network(&m).unwrap(), &interaction_graph(&m).unwrap()).unwrap();
        let o = check_against_bounds(&rep, &hubbard_bounds(&m).unwrap());
        assert_eq!((o.swap_optimal, o.interaction_optimal), want, "{m:?}");
    }
    let rep = coverage(
        &dense_network(4, DenseMode::SwapOptimal).unwrap(),
        &InteractionGraph::complete(4).unwrap(),
    )
    .unwrap();
    let o = check_against_bounds(&rep, &dense_bounds(4).unwrap());
    assert_eq!((o.swap_optimal, o.interaction_optimal), (true, false));
}

#[test]
fn deleting_final_layer_leaves_edges_missing() {
    let m = HubbardModel::new(3, 3, false).unwrap();
    let net = hubbard_network(&m).unwrap();
    let cut = net.without_layer(net.layers().len() - 1);
    let rep = coverage(&cut, &interaction_graph(&m).unwrap()).unwrap();
    assert!(!rep.missing.is_empty());
}

#[test]
fn oracle_examples() {
    for n in 3..=6 {
        let k = InteractionGraph::complete(n).unwrap();
        assert_eq!(min_swap_depth_exhaustive(&k, 7).unwrap(), n - 2, "K{n}");
    }
    let g23 = InteractionGraph::grid_hops(make_grid(&[2, 3]).unwrap()).unwrap();
    assert_eq!(min_swap_depth_exhaustive(&g23, 7).unwrap(), 1);
    let path = InteractionGraph::grid_hops(make_grid(&[6]).unwrap()).unwrap();
    assert_eq!(min_swap_depth_exhaustive(&path, 7).unwrap(), 0);
}

#[test]
fn fermion_examples() {
    let a = jw_ladder(0, 1).unwrap();
    assert_eq!(a[(0, 1)].re, 1.0);
    assert_eq!(a.iter().filter(|z| z.norm() > 0.0).count(), 1);

    let spectrum = |u: f64, t: f64| {
        let m = HubbardModel::with_couplings(1, 2, false, u, t).unwrap();
        let h = hubbard_matrix(&m, &LinearOrder::identity(2)).unwrap();
        let mut ev: Vec<f64> = h.map(|z| z.re).symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    };
    let close = |a: Vec<f64>, b: [f64; 4]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12);
    assert!(close(spectrum(0.0, 1.0), [-1.0, 0.0, 0.0, 1.0]));
    assert!(close(spectrum(1.0, 1.0), [0.0, 0.0, 2.0, 2.0]));
    assert!(close(spectrum(0.0, 0.0), [0.0; 4]));

    let net = hubbard_network(&HubbardModel::new(2, 2, false).unwrap()).unwrap();
    assert!(mode_permutation_check(&net).unwrap());

    let free = HubbardModel::with_couplings(2, 2, false, 0.0, 0.0).unwrap();
    let rep = trotter_error_check(&free, &net, 0.05).unwrap();
    assert_eq!(rep.err, 0.0);
    for (rows, cols) in [(1, 2), (2, 2)] {
        let m = HubbardModel::new(rows, cols, false).unwrap();
        let rep = trotter_error_check(&m, &hubbard_network(&m).unwrap(), 0.05).unwrap();
        assert!(rep.ratio_in_range(), "{rows}x{cols}: {rep:?}");
    }
}
