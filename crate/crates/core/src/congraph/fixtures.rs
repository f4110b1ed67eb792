//! Connection graphs of toroids that are only described combinatorially:
//! shipped as JSON and, for the parametric families, generated.

use super::ConnectionGraph;

/// Shipped fixtures by name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("two-triangles-bridged", include_str!("../../fixtures/graphs/two-triangles-bridged.json")),
    ("two-triangles-sharing-node", include_str!("../../fixtures/graphs/two-triangles-sharing-node.json")),
    ("two-triangles-joined-by-branch", include_str!("../../fixtures/graphs/two-triangles-joined-by-branch.json")),
    ("heptagon-chain-3", include_str!("../../fixtures/graphs/heptagon-chain-3.json")),
    ("heptagons-sharing-nodes-3", include_str!("../../fixtures/graphs/heptagons-sharing-nodes-3.json")),
    ("heptagon-ring-3", include_str!("../../fixtures/graphs/heptagon-ring-3.json")),
];

pub fn fixture(name: &str) -> Option<ConnectionGraph> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| ConnectionGraph::from_json(text).expect("shipped fixtures are consistent"))
}

fn cycle_through(nodes: &[usize]) -> impl Iterator<Item = [usize; 2]> + '_ {
    (0..nodes.len()).map(move |k| [nodes[k], nodes[(k + 1) % nodes.len()]])
}

/// `p` heptagons in a row, consecutive ones joined by one bridge edge. The
/// bridge leaves each heptagon two steps after the node where it arrived,
/// as in the glued chain of seven-vertex tori.
pub fn heptagon_chain(p: usize) -> ConnectionGraph {
    let mut edges = Vec::new();
    for i in 0..p {
        let ring: Vec<usize> = (0..7).map(|k| 7 * i + k).collect();
        edges.extend(cycle_through(&ring));
    }
    edges.extend((0..p.saturating_sub(1)).map(|i| [7 * i + 2, 7 * (i + 1)]));
    ConnectionGraph::new(7 * p, edges)
}

/// `p` heptagons in a row, consecutive ones sharing one node.
pub fn heptagons_sharing_nodes(p: usize) -> ConnectionGraph {
    let mut edges = Vec::new();
    for i in 0..p {
        let ring: Vec<usize> = (0..7).map(|k| 6 * i + k).collect();
        edges.extend(cycle_through(&ring));
    }
    ConnectionGraph::new(6 * p + 1, edges)
}

/// [`heptagons_sharing_nodes`] closed up: the last heptagon shares a node
/// with the first.
pub fn heptagon_ring(p: usize) -> ConnectionGraph {
    let mut edges = Vec::new();
    for i in 0..p {
        let ring: Vec<usize> = (0..7).map(|k| (6 * i + k) % (6 * p)).collect();
        edges.extend(cycle_through(&ring));
    }
    ConnectionGraph::new(6 * p, edges)
}
