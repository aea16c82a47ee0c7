//! Cheapest routes under the `time + distance` edge weight.
//!
//! Labels are compared by total cost, then hop count, then the node-id
//! sequence from the origin, so every query has exactly one answer.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::model::{Node, NodeId, NodeKind, TransportGraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathError {
    #[error("node {0} does not exist")]
    NodeOutOfRange(NodeId),
    #[error("node {to} is unreachable from node {from}")]
    Unreachable { from: NodeId, to: NodeId },
    #[error("no qualifying {0} node")]
    NoCandidate(NodeKind),
    #[error("nodes {0} and {1} are not adjacent")]
    NotAdjacent(NodeId, NodeId),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    pub nodes: Vec<NodeId>,
    pub total_cost: f64,
    pub total_distance_km: f64,
    pub total_time_min: u64,
}

impl Route {
    /// The empty route that stays at `at`.
    pub fn stay(at: NodeId) -> Self {
        Self {
            nodes: vec![at],
            total_cost: 0.0,
            total_distance_km: 0.0,
            total_time_min: 0,
        }
    }

    /// Builds a route from a node sequence, summing edge figures in order.
    pub fn from_nodes(g: &TransportGraph, nodes: Vec<NodeId>) -> Result<Self, PathError> {
        let Some(&first) = nodes.first() else {
            return Err(PathError::NodeOutOfRange(usize::MAX));
        };
        if first >= g.node_count() {
            return Err(PathError::NodeOutOfRange(first));
        }
        let mut route = Route::stay(first);
        route.nodes = nodes;
        for pair in route.nodes.windows(2) {
            let edge = g
                .edge_between(pair[0], pair[1])
                .ok_or(PathError::NotAdjacent(pair[0], pair[1]))?;
            route.total_cost += edge.cost();
            route.total_distance_km += edge.distance_km;
            route.total_time_min += u64::from(edge.time_min);
        }
        Ok(route)
    }

    pub fn origin(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn destination(&self) -> NodeId {
        *self.nodes.last().expect("route has at least one node")
    }

    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }
}

#[derive(Debug, Clone)]
struct Label {
    cost: f64,
    path: Vec<NodeId>,
}

impl Label {
    fn rank(&self, other: &Self) -> Ordering {
        self.cost
            .total_cmp(&other.cost)
            .then_with(|| self.path.len().cmp(&other.path.len()))
            .then_with(|| self.path.cmp(&other.path))
    }
}

// BinaryHeap is a max-heap; reverse so the best label pops first.
struct HeapEntry(Label);

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.rank(&self.0)
    }
}

/// Cheapest routes from one origin to every reachable node.
#[derive(Debug, Clone)]
pub struct RouteTree {
    origin: NodeId,
    labels: Vec<Option<Label>>,
}

impl RouteTree {
    pub fn origin(&self) -> NodeId {
        self.origin
    }

    pub fn cost_to(&self, to: NodeId) -> Option<f64> {
        self.labels.get(to)?.as_ref().map(|l| l.cost)
    }

    pub fn path_to(&self, to: NodeId) -> Option<&[NodeId]> {
        self.labels.get(to)?.as_ref().map(|l| l.path.as_slice())
    }

    pub fn route_to(&self, g: &TransportGraph, to: NodeId) -> Result<Route, PathError> {
        let path = self.path_to(to).ok_or(if to < self.labels.len() {
            PathError::Unreachable {
                from: self.origin,
                to,
            }
        } else {
            PathError::NodeOutOfRange(to)
        })?;
        Route::from_nodes(g, path.to_vec())
    }
}

/// Single-source label-setting search from `origin`.
pub fn cheapest_routes_from(g: &TransportGraph, origin: NodeId) -> Result<RouteTree, PathError> {
    let n = g.node_count();
    if origin >= n {
        return Err(PathError::NodeOutOfRange(origin));
    }
    let mut best: Vec<Option<Label>> = vec![None; n];
    let mut settled = vec![false; n];
    let start = Label {
        cost: 0.0,
        path: vec![origin],
    };
    best[origin] = Some(start.clone());
    let mut frontier = BinaryHeap::from([HeapEntry(start)]);

    while let Some(HeapEntry(label)) = frontier.pop() {
        let u = *label.path.last().expect("non-empty path");
        if settled[u] {
            continue;
        }
        settled[u] = true;
        for (edge_idx, v) in g.neighbors(u) {
            if settled[v] {
                continue;
            }
            let mut path = label.path.clone();
            path.push(v);
            let candidate = Label {
                cost: label.cost + g.edge(edge_idx).cost(),
                path,
            };
            let improves = best[v]
                .as_ref()
                .is_none_or(|current| candidate.rank(current) == Ordering::Less);
            if improves {
                best[v] = Some(candidate.clone());
                frontier.push(HeapEntry(candidate));
            }
        }
    }

    Ok(RouteTree {
        origin,
        labels: best,
    })
}

pub fn cheapest_route(g: &TransportGraph, from: NodeId, to: NodeId) -> Result<Route, PathError> {
    if to >= g.node_count() {
        return Err(PathError::NodeOutOfRange(to));
    }
    cheapest_routes_from(g, from)?.route_to(g, to)
}

/// The node of kind `want` passing `filter` with the cheapest route from
/// `from`; ties go to the smaller id. A qualifying node at `from` wins at
/// zero cost.
pub fn nearest_of_kind<F>(
    g: &TransportGraph,
    from: NodeId,
    want: NodeKind,
    filter: F,
) -> Result<(NodeId, Route), PathError>
where
    F: Fn(&Node) -> bool,
{
    let tree = cheapest_routes_from(g, from)?;
    nearest_in_tree(g, &tree, want, filter)
}

/// [`nearest_of_kind`] over an already computed tree.
pub fn nearest_in_tree<F>(
    g: &TransportGraph,
    tree: &RouteTree,
    want: NodeKind,
    filter: F,
) -> Result<(NodeId, Route), PathError>
where
    F: Fn(&Node) -> bool,
{
    let mut qualifying = false;
    let mut best: Option<(f64, NodeId)> = None;
    for node in g.nodes().iter().filter(|n| n.kind == want && filter(n)) {
        qualifying = true;
        let Some(cost) = tree.cost_to(node.id) else {
            continue;
        };
        if best.is_none_or(|(c, _)| cost < c) {
            best = Some((cost, node.id));
        }
    }
    match best {
        Some((_, id)) => Ok((id, tree.route_to(g, id)?)),
        None if qualifying => Err(PathError::Unreachable {
            from: tree.origin(),
            to: g
                .nodes()
                .iter()
                .find(|n| n.kind == want && filter(n))
                .map_or(usize::MAX, |n| n.id),
        }),
        None => Err(PathError::NoCandidate(want)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Edge;

    fn line(n: usize) -> TransportGraph {
        let mut g = TransportGraph::default();
        for i in 0..n {
            g.add_node(NodeKind::Joint, i as f64 * 10.0, 0.0, 0, 0);
        }
        for i in 1..n {
            g.connect(i - 1, i, 60);
        }
        g
    }

    #[test]
    fn route_to_self_is_empty() {
        let g = line(3);
        let r = cheapest_route(&g, 1, 1).unwrap();
        assert_eq!(r, Route::stay(1));
        assert_eq!(r.hops(), 0);
    }

    #[test]
    fn single_edge_cost() {
        let mut g = TransportGraph::default();
        g.add_node(NodeKind::Joint, 0.0, 0.0, 0, 0);
        g.add_node(NodeKind::Joint, 5.0, 0.0, 0, 0);
        g.add_edge(Edge {
            a: 0,
            b: 1,
            distance_km: 5.0,
            time_min: 10,
            velocity_kmh: 30,
        });
        let r = cheapest_route(&g, 0, 1).unwrap();
        assert_eq!(r.total_cost, 15.0);
        assert_eq!(r.nodes, vec![0, 1]);
        assert_eq!(r.total_time_min, 10);
    }

    #[test]
    fn prefers_cheaper_detour() {
        // 0 -- 2 direct is slow; 0 -- 1 -- 2 is fast.
        let mut g = TransportGraph::default();
        g.add_node(NodeKind::Joint, 0.0, 0.0, 0, 0);
        g.add_node(NodeKind::Joint, 50.0, 1.0, 0, 0);
        g.add_node(NodeKind::Joint, 100.0, 0.0, 0, 0);
        g.connect(0, 2, 1);
        g.connect(0, 1, 100);
        g.connect(1, 2, 100);
        let r = cheapest_route(&g, 0, 2).unwrap();
        assert_eq!(r.nodes, vec![0, 1, 2]);
        assert_eq!(r, Route::from_nodes(&g, vec![0, 1, 2]).unwrap());
    }

    #[test]
    fn ties_prefer_fewer_hops_then_smaller_ids() {
        // Square 0-1-3, 0-2-3 with identical weights, plus no diagonal.
        let mut g = TransportGraph::default();
        for _ in 0..4 {
            g.add_node(NodeKind::Joint, 0.0, 0.0, 0, 0);
        }
        for (a, b) in [(0, 2), (2, 3), (0, 1), (1, 3)] {
            g.add_edge(Edge {
                a,
                b,
                distance_km: 1.0,
                time_min: 1,
                velocity_kmh: 60,
            });
        }
        assert_eq!(cheapest_route(&g, 0, 3).unwrap().nodes, vec![0, 1, 3]);
        assert_eq!(cheapest_route(&g, 3, 0).unwrap().nodes, vec![3, 1, 0]);

        // Zero-weight detour ties on cost; the direct hop wins.
        let mut g = TransportGraph::default();
        for _ in 0..3 {
            g.add_node(NodeKind::Joint, 0.0, 0.0, 0, 0);
        }
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            g.add_edge(Edge {
                a,
                b,
                distance_km: 0.0,
                time_min: 0,
                velocity_kmh: 60,
            });
        }
        assert_eq!(cheapest_route(&g, 0, 2).unwrap().nodes, vec![0, 2]);
    }

    #[test]
    fn unreachable_and_out_of_range() {
        let mut g = line(2);
        g.add_node(NodeKind::Joint, 500.0, 500.0, 0, 0);
        assert_eq!(
            cheapest_route(&g, 0, 2),
            Err(PathError::Unreachable { from: 0, to: 2 })
        );
        assert_eq!(cheapest_route(&g, 0, 7), Err(PathError::NodeOutOfRange(7)));
        assert_eq!(cheapest_route(&g, 9, 0), Err(PathError::NodeOutOfRange(9)));
    }

    #[test]
    fn nearest_at_current_node_is_free() {
        let mut g = line(3);
        let mut w = TransportGraph::default();
        w.add_node(NodeKind::Warehouse, 0.0, 0.0, 5, 0);
        w.add_node(NodeKind::Warehouse, 10.0, 0.0, 5, 0);
        w.connect(0, 1, 60);
        let (id, route) = nearest_of_kind(&w, 1, NodeKind::Warehouse, |n| n.supply > 0).unwrap();
        assert_eq!(id, 1);
        assert_eq!(route, Route::stay(1));

        g.add_node(NodeKind::Store, 40.0, 0.0, 0, 3);
        g.connect(2, 3, 60);
        let (id, route) = nearest_of_kind(&g, 0, NodeKind::Store, |n| n.demand > 0).unwrap();
        assert_eq!(id, 3);
        assert_eq!(route.nodes, vec![0, 1, 2, 3]);
    }

    #[test]
    fn nearest_reports_missing_candidates() {
        let g = line(3);
        assert_eq!(
            nearest_of_kind(&g, 0, NodeKind::Warehouse, |_| true),
            Err(PathError::NoCandidate(NodeKind::Warehouse))
        );
    }

    #[test]
    fn nearest_ties_go_to_smaller_id() {
        let mut g = TransportGraph::default();
        g.add_node(NodeKind::Joint, 50.0, 0.0, 0, 0);
        g.add_node(NodeKind::Store, 100.0, 0.0, 0, 1);
        g.add_node(NodeKind::Store, 0.0, 0.0, 0, 1);
        g.connect(0, 2, 60);
        g.connect(0, 1, 60);
        let (id, _) = nearest_of_kind(&g, 0, NodeKind::Store, |n| n.demand > 0).unwrap();
        assert_eq!(id, 1);
    }
}
