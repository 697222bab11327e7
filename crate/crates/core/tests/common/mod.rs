use graphcat::MultiGraph;
use proptest::prelude::*;

/// Connected graph: a random spanning tree on `vertices` plus extra edges,
/// loops among them when `loops` is set.
pub fn connected_graph(
    vertices: std::ops::RangeInclusive<usize>,
    extra: usize,
    loops: bool,
) -> impl Strategy<Value = MultiGraph> {
    vertices.prop_flat_map(move |n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
        (parents, prop::collection::vec((0..n, 0..n), 0..=extra)).prop_map(
            move |(parents, extras)| {
                let mut ends: Vec<(usize, usize)> = parents
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| (p, k + 1))
                    .collect();
                ends.extend(extras.into_iter().filter(|&(a, b)| loops || a != b));
                MultiGraph::from_edges(n, &ends)
            },
        )
    })
}
