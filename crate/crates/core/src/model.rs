//! Problem-instance types shared by the generator, router and serializers.
//!
//! A [`TransportGraph`] is an undirected graph whose nodes are stores,
//! warehouses or joints. Goods are a single integer-counted commodity.
//! Edges carry a Euclidean distance in kilometres, the integer velocity
//! drawn when the edge was created, and the travel time in whole minutes
//! derived from those two.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type NodeId = usize;

/// Default side length of the square map, in kilometres.
pub const DEFAULT_MAP_SIZE: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Store,
    Warehouse,
    Joint,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Store => "store",
            NodeKind::Warehouse => "warehouse",
            NodeKind::Joint => "joint",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown node kind `{0}`")]
pub struct UnknownNodeKind(pub String);

impl FromStr for NodeKind {
    type Err = UnknownNodeKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "store" => Ok(NodeKind::Store),
            "warehouse" => Ok(NodeKind::Warehouse),
            "joint" => Ok(NodeKind::Joint),
            other => Err(UnknownNodeKind(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub x: f64,
    pub y: f64,
    pub supply: u32,
    pub demand: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub a: NodeId,
    pub b: NodeId,
    pub distance_km: f64,
    pub time_min: u32,
    /// Average velocity in km/h assumed when the edge was created.
    pub velocity_kmh: u32,
}

impl Edge {
    /// Heuristic traversal weight: minutes plus kilometres.
    pub fn cost(&self) -> f64 {
        edge_cost(self)
    }

    /// The endpoint opposite `from`, if `from` is an endpoint at all.
    pub fn other(&self, from: NodeId) -> Option<NodeId> {
        if self.a == from {
            Some(self.b)
        } else if self.b == from {
            Some(self.a)
        } else {
            None
        }
    }

    /// Endpoints as `(min, max)`.
    pub fn key(&self) -> (NodeId, NodeId) {
        (self.a.min(self.b), self.a.max(self.b))
    }
}

/// `time + distance`. The unit mix (minutes + km) is intentional.
pub fn edge_cost(edge: &Edge) -> f64 {
    f64::from(edge.time_min) + edge.distance_km
}

pub fn euclidean_distance(ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    let dx = ax - bx;
    let dy = ay - by;
    (dx * dx + dy * dy).sqrt()
}

/// Whole minutes needed to cover `distance_km` at `velocity_kmh`,
/// computed as `(distance / velocity) * 60` with the fraction truncated.
pub fn travel_time_min(distance_km: f64, velocity_kmh: u32) -> u32 {
    ((distance_km / f64::from(velocity_kmh)) * 60.0).trunc() as u32
}

/// One broken instance invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("map size {0} is not a positive finite number")]
    InvalidMapSize(f64),
    #[error("node at position {index} has id {id}; ids must be contiguous from 0")]
    NodeIdMismatch { index: usize, id: NodeId },
    #[error("node {node} coordinates ({x}, {y}) lie outside [0, {map_size}]")]
    CoordinateOutOfRange {
        node: NodeId,
        x: f64,
        y: f64,
        map_size: f64,
    },
    #[error("store {node} has nonzero supply {supply}")]
    StoreSupply { node: NodeId, supply: u32 },
    #[error("warehouse {node} has nonzero demand {demand}")]
    WarehouseDemand { node: NodeId, demand: u32 },
    #[error("joint {node} carries goods (supply {supply}, demand {demand})")]
    JointGoods {
        node: NodeId,
        supply: u32,
        demand: u32,
    },
    #[error("edge {edge} has dangling endpoint {endpoint}")]
    DanglingEndpoint { edge: usize, endpoint: NodeId },
    #[error("edge {edge} is a self-loop on node {node}")]
    SelfLoop { edge: usize, node: NodeId },
    #[error("edge {edge} duplicates the pair {{{a}, {b}}}")]
    DuplicateEdge { edge: usize, a: NodeId, b: NodeId },
    #[error("edge {edge} has invalid distance {distance}")]
    InvalidDistance { edge: usize, distance: f64 },
    #[error("edge {edge} has zero velocity")]
    ZeroVelocity { edge: usize },
    #[error(
        "edge {edge} stores time {stored} min but its distance and velocity give {expected} min"
    )]
    TimeMismatch {
        edge: usize,
        stored: u32,
        expected: u32,
    },
    #[error("adjacency of node {node} disagrees with the edge list")]
    AdjacencyMismatch { node: NodeId },
    #[error("graph has {components} connected components")]
    Disconnected { components: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportGraph {
    map_size: f64,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    /// Per node, indices into `edges` of incident edges.
    adjacency: Vec<Vec<usize>>,
}

impl Default for TransportGraph {
    fn default() -> Self {
        Self::new(DEFAULT_MAP_SIZE)
    }
}

impl TransportGraph {
    pub fn new(map_size: f64) -> Self {
        Self {
            map_size,
            nodes: Vec::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    /// Assembles a graph without checking it. Edges whose endpoints do not
    /// name a node position are kept in the edge list but left out of the
    /// adjacency; [`TransportGraph::validate`] reports them.
    pub fn from_parts(map_size: f64, nodes: Vec<Node>, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (idx, e) in edges.iter().enumerate() {
            if e.a < nodes.len() && e.b < nodes.len() {
                adjacency[e.a].push(idx);
                if e.b != e.a {
                    adjacency[e.b].push(idx);
                }
            }
        }
        Self {
            map_size,
            nodes,
            edges,
            adjacency,
        }
    }

    pub fn add_node(&mut self, kind: NodeKind, x: f64, y: f64, supply: u32, demand: u32) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(Node {
            id,
            kind,
            x,
            y,
            supply,
            demand,
        });
        self.adjacency.push(Vec::new());
        id
    }

    /// Adds an edge whose distance comes from the endpoint coordinates and
    /// whose time follows from `velocity_kmh`.
    ///
    /// Panics if either endpoint does not exist.
    pub fn connect(&mut self, a: NodeId, b: NodeId, velocity_kmh: u32) -> usize {
        let (na, nb) = (&self.nodes[a], &self.nodes[b]);
        let distance_km = euclidean_distance(na.x, na.y, nb.x, nb.y);
        self.add_edge(Edge {
            a,
            b,
            distance_km,
            time_min: travel_time_min(distance_km, velocity_kmh),
            velocity_kmh,
        })
    }

    /// Adds an edge as given. Panics if either endpoint does not exist.
    pub fn add_edge(&mut self, edge: Edge) -> usize {
        assert!(
            edge.a < self.nodes.len() && edge.b < self.nodes.len(),
            "edge endpoint out of range"
        );
        let idx = self.edges.len();
        self.adjacency[edge.a].push(idx);
        if edge.b != edge.a {
            self.adjacency[edge.b].push(idx);
        }
        self.edges.push(edge);
        idx
    }

    /// Same instance with every edge oriented `a < b` and edges sorted by
    /// endpoint pair, the order used by the DOT emitter.
    pub fn canonical(&self) -> Self {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = e.key();
                Edge { a, b, ..e.clone() }
            })
            .collect();
        edges.sort_by_key(|e| e.key());
        Self::from_parts(self.map_size, self.nodes.clone(), edges)
    }

    pub fn map_size(&self) -> f64 {
        self.map_size
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Incident edges of `node` as `(edge index, neighbour)` pairs.
    pub fn neighbors(&self, node: NodeId) -> impl Iterator<Item = (usize, NodeId)> + '_ {
        self.adjacency[node].iter().filter_map(move |&idx| {
            let other = self.edges[idx].other(node)?;
            Some((idx, other))
        })
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node].len()
    }

    pub fn edge_between(&self, a: NodeId, b: NodeId) -> Option<&Edge> {
        self.adjacency
            .get(a)?
            .iter()
            .map(|&idx| &self.edges[idx])
            .find(|e| e.other(a) == Some(b))
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.edge_between(a, b).is_some()
    }

    pub fn total_supply(&self) -> u64 {
        self.nodes.iter().map(|n| u64::from(n.supply)).sum()
    }

    pub fn total_demand(&self) -> u64 {
        self.nodes.iter().map(|n| u64::from(n.demand)).sum()
    }

    pub fn count_kind(&self, kind: NodeKind) -> usize {
        self.nodes.iter().filter(|n| n.kind == kind).count()
    }

    /// Component label per node, labels numbered in order of first node.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for (_, v) in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels()
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Every broken invariant, in a stable order. Empty means well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let map_size = self.map_size;
        if !(map_size.is_finite() && map_size > 0.0) {
            out.push(Violation::InvalidMapSize(map_size));
        }

        for (index, node) in self.nodes.iter().enumerate() {
            if node.id != index {
                out.push(Violation::NodeIdMismatch { index, id: node.id });
            }
            let in_range = |v: f64| v.is_finite() && (0.0..=map_size).contains(&v);
            if !in_range(node.x) || !in_range(node.y) {
                out.push(Violation::CoordinateOutOfRange {
                    node: node.id,
                    x: node.x,
                    y: node.y,
                    map_size,
                });
            }
            match node.kind {
                NodeKind::Store if node.supply != 0 => out.push(Violation::StoreSupply {
                    node: node.id,
                    supply: node.supply,
                }),
                NodeKind::Warehouse if node.demand != 0 => out.push(Violation::WarehouseDemand {
                    node: node.id,
                    demand: node.demand,
                }),
                NodeKind::Joint if node.supply != 0 || node.demand != 0 => {
                    out.push(Violation::JointGoods {
                        node: node.id,
                        supply: node.supply,
                        demand: node.demand,
                    })
                }
                _ => {}
            }
        }

        let n = self.nodes.len();
        let mut seen = HashSet::new();
        let mut structurally_sound = true;
        for (idx, e) in self.edges.iter().enumerate() {
            let mut dangling = false;
            for endpoint in [e.a, e.b] {
                if endpoint >= n {
                    out.push(Violation::DanglingEndpoint {
                        edge: idx,
                        endpoint,
                    });
                    dangling = true;
                }
            }
            structurally_sound &= !dangling;
            if e.a == e.b {
                out.push(Violation::SelfLoop {
                    edge: idx,
                    node: e.a,
                });
                structurally_sound = false;
            } else if !seen.insert(e.key()) {
                let (a, b) = e.key();
                out.push(Violation::DuplicateEdge { edge: idx, a, b });
            }
            if !(e.distance_km.is_finite() && e.distance_km >= 0.0) {
                out.push(Violation::InvalidDistance {
                    edge: idx,
                    distance: e.distance_km,
                });
            } else if e.velocity_kmh == 0 {
                out.push(Violation::ZeroVelocity { edge: idx });
            } else {
                let expected = travel_time_min(e.distance_km, e.velocity_kmh);
                if expected != e.time_min {
                    out.push(Violation::TimeMismatch {
                        edge: idx,
                        stored: e.time_min,
                        expected,
                    });
                }
            }
        }

        let mut expected = vec![Vec::new(); n];
        // dangling edges are reported above and carry no adjacency
        for (idx, e) in self.edges.iter().enumerate() {
            if e.a < n && e.b < n {
                expected[e.a].push(idx);
                if e.b != e.a {
                    expected[e.b].push(idx);
                }
            }
        }
        for (node, want) in expected.iter().enumerate() {
            let mut listed = self.adjacency.get(node).cloned().unwrap_or_default();
            listed.sort_unstable();
            if &listed != want {
                out.push(Violation::AdjacencyMismatch { node });
            }
        }

        if structurally_sound {
            let components = self.component_count();
            if components > 1 {
                out.push(Violation::Disconnected { components });
            }
        }
        out
    }
}
