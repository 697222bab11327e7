use std::sync::Arc;

use graphcat::graph::morphism::contract_edges;
use graphcat::graph::{subdivide, DirectedEdge};
use graphcat::swiatkowski::{
    sw_chain_map, sw_chain_map_with_order, sw_differential, uconf_homology,
};
use graphcat::{MultiGraph, SparseMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

mod common;

fn big(m: SparseMatrix<i64>) -> SparseMatrix<BigInt> {
    m.to_big()
}

/// The first `n - 1` edges of a generated graph form its spanning tree.
fn tree_edges(g: &MultiGraph) -> Vec<usize> {
    (0..g.vertex_count() - 1).collect()
}

fn pick(edges: &[usize], mask: u32) -> Vec<usize> {
    edges
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_squares_to_zero(g in common::connected_graph(1..=6, 3, true), n in 1usize..=3) {
        prop_assume!(g.edge_count() > 0);
        for i in 1..n {
            let d1 = big(sw_differential(&g, i, n).unwrap());
            let d2 = big(sw_differential(&g, i + 1, n).unwrap());
            prop_assert!(d1.mul(&d2).unwrap().is_zero());
        }
    }

    #[test]
    fn chain_maps_are_functorial(
        g in common::connected_graph(2..=6, 3, true),
        first in any::<u32>(),
        second in any::<u32>(),
        n in 2usize..=3,
    ) {
        let g = Arc::new(g);
        let phi = contract_edges(&g, &pick(&tree_edges(&g), first)).unwrap();
        let mid = phi.target().clone();
        // edges of the middle graph that were tree edges upstairs
        let mid_tree: Vec<usize> = tree_edges(&g)
            .into_iter()
            .filter_map(|e| match phi.map_edge(e) {
                graphcat::graph::EdgeImage::Edge { edge, .. } => Some(edge),
                _ => None,
            })
            .collect();
        let psi = contract_edges(&mid, &pick(&mid_tree, second)).unwrap();
        prop_assume!(psi.target().edge_count() > 0);
        let both = psi.compose(&phi).unwrap();
        for i in 1..=2 {
            let m_phi = big(sw_chain_map(&phi, i, n).unwrap());
            let m_psi = big(sw_chain_map(&psi, i, n).unwrap());
            prop_assert_eq!(big(sw_chain_map(&both, i, n).unwrap()), m_phi.mul(&m_psi).unwrap());
            // commutes with the differential
            let lower = big(sw_chain_map(&phi, i - 1, n).unwrap());
            let d_src = big(sw_differential(&g, i, n).unwrap());
            let d_tgt = big(sw_differential(&mid, i, n).unwrap());
            prop_assert_eq!(d_src.mul(&m_phi).unwrap(), lower.mul(&d_tgt).unwrap());
            let mut order = phi.contracted_edges();
            order.reverse();
            prop_assert_eq!(big(sw_chain_map_with_order(&phi, &order, i, n).unwrap()), m_phi);
        }
    }

    #[test]
    fn subdivision_keeps_homology(
        g in common::connected_graph(1..=5, 3, true),
        edge in any::<prop::sample::Index>(),
        pieces in 2usize..=4,
    ) {
        prop_assume!(g.edge_count() > 0);
        let g = Arc::new(g);
        let e = edge.index(g.edge_count());
        let m = subdivide(&g, &[DirectedEdge::forward(e)], &[pieces]).unwrap();
        for (i, n) in [(0, 2), (1, 2), (1, 3), (2, 3)] {
            let a = uconf_homology(&g, i, n).unwrap();
            let b = uconf_homology(&m.graph, i, n).unwrap();
            prop_assert_eq!(a.group(), b.group(), "edge {} into {} at ({}, {})", e, pieces, i, n);
        }
    }
}
