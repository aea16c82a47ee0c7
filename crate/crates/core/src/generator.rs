//! Pseudorandom instance generation.
//!
//! Draw order is fixed: node kinds (one shuffle of the ids), coordinates
//! (x then y, nodes in id order), then edge attempts per node in id order,
//! then bridging edges for any leftover components. Goods allocation is
//! deterministic and consumes no randomness.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    euclidean_distance, travel_time_min, Edge, NodeId, NodeKind, TransportGraph, DEFAULT_MAP_SIZE,
};
use crate::rng::InstanceRng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub total_nodes: usize,
    pub max_edges_per_node: usize,
    pub num_stores: usize,
    pub num_warehouses: usize,
    /// Only a single good type is supported.
    pub good_types: u32,
    pub total_supply: u32,
    pub total_demand: u32,
    pub map_size: f64,
    pub velocity_min: u32,
    pub velocity_max: u32,
    pub seed: u64,
}

impl Default for GeneratorParams {
    /// The 12-node configuration: 2 edges per node, 2 warehouses, 4 stores,
    /// supply 100, demand 90.
    fn default() -> Self {
        Self {
            total_nodes: 12,
            max_edges_per_node: 2,
            num_stores: 4,
            num_warehouses: 2,
            good_types: 1,
            total_supply: 100,
            total_demand: 90,
            map_size: DEFAULT_MAP_SIZE,
            velocity_min: 40,
            velocity_max: 100,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("total_nodes must be at least 1")]
    NoNodes,
    #[error("max_edges_per_node must be at least 1")]
    NoEdgeBudget,
    #[error("{stores} stores + {warehouses} warehouses exceed {nodes} nodes")]
    TooManySpecialNodes {
        stores: usize,
        warehouses: usize,
        nodes: usize,
    },
    #[error("only one good type is supported, got {0}")]
    UnsupportedGoodTypes(u32),
    #[error("velocity range [{min}, {max}] must be positive and ordered")]
    InvalidVelocityRange { min: u32, max: u32 },
    #[error("map size {0} must be positive and finite")]
    InvalidMapSize(f64),
    #[error("cannot allocate {total} units over zero bins")]
    NoBins { total: u32 },
}

impl GeneratorParams {
    pub fn check(&self) -> Result<(), GeneratorError> {
        if self.total_nodes == 0 {
            return Err(GeneratorError::NoNodes);
        }
        if self.max_edges_per_node == 0 {
            return Err(GeneratorError::NoEdgeBudget);
        }
        if self.num_stores + self.num_warehouses > self.total_nodes {
            return Err(GeneratorError::TooManySpecialNodes {
                stores: self.num_stores,
                warehouses: self.num_warehouses,
                nodes: self.total_nodes,
            });
        }
        if self.good_types != 1 {
            return Err(GeneratorError::UnsupportedGoodTypes(self.good_types));
        }
        if self.velocity_min == 0 || self.velocity_min > self.velocity_max {
            return Err(GeneratorError::InvalidVelocityRange {
                min: self.velocity_min,
                max: self.velocity_max,
            });
        }
        if !(self.map_size.is_finite() && self.map_size > 0.0) {
            return Err(GeneratorError::InvalidMapSize(self.map_size));
        }
        if self.total_supply > 0 && self.num_warehouses == 0 {
            return Err(GeneratorError::NoBins {
                total: self.total_supply,
            });
        }
        if self.total_demand > 0 && self.num_stores == 0 {
            return Err(GeneratorError::NoBins {
                total: self.total_demand,
            });
        }
        Ok(())
    }
}

/// Builds a connected instance. Identical params, seed included, always
/// give an identical graph.
pub fn generate(params: &GeneratorParams) -> Result<TransportGraph, GeneratorError> {
    params.check()?;
    let mut rng = InstanceRng::from_seed(params.seed);
    let n = params.total_nodes;

    let mut order: Vec<NodeId> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut kinds = vec![NodeKind::Joint; n];
    for &id in &order[..params.num_warehouses] {
        kinds[id] = NodeKind::Warehouse;
    }
    for &id in &order[params.num_warehouses..params.num_warehouses + params.num_stores] {
        kinds[id] = NodeKind::Store;
    }

    let supplies = allocate_goods(params.total_supply, params.num_warehouses)?;
    let demands = allocate_goods(params.total_demand, params.num_stores)?;
    let (mut next_supply, mut next_demand) = (supplies.into_iter(), demands.into_iter());

    let mut g = TransportGraph::new(params.map_size);
    for kind in kinds {
        let x = rng.unit_f64() * params.map_size;
        let y = rng.unit_f64() * params.map_size;
        let (supply, demand) = match kind {
            NodeKind::Warehouse => (next_supply.next().unwrap_or(0), 0),
            NodeKind::Store => (0, next_demand.next().unwrap_or(0)),
            NodeKind::Joint => (0, 0),
        };
        g.add_node(kind, x, y, supply, demand);
    }

    spread_edges(&mut g, params, &mut rng);
    ensure_connected(&mut g, params.velocity_min, params.velocity_max, &mut rng);
    Ok(g.canonical())
}

/// Hands out `total` units one at a time, cycling over `bins` from bin 0.
pub fn allocate_goods(total: u32, bins: usize) -> Result<Vec<u32>, GeneratorError> {
    if bins == 0 {
        return if total == 0 {
            Ok(Vec::new())
        } else {
            Err(GeneratorError::NoBins { total })
        };
    }
    let mut out = vec![0u32; bins];
    for unit in 0..total as usize {
        out[unit % bins] += 1;
    }
    Ok(out)
}

/// Draws a velocity uniformly from the integer range and derives the
/// travel time. Returns `(time_min, velocity_kmh)`.
pub fn sample_time(
    distance_km: f64,
    velocity_min: u32,
    velocity_max: u32,
    rng: &mut InstanceRng,
) -> (u32, u32) {
    let velocity = rng.range_inclusive(velocity_min, velocity_max);
    (travel_time_min(distance_km, velocity), velocity)
}

fn make_edge(
    g: &TransportGraph,
    a: NodeId,
    b: NodeId,
    velocity_min: u32,
    velocity_max: u32,
    rng: &mut InstanceRng,
) -> Edge {
    let (na, nb) = (g.node(a), g.node(b));
    let distance_km = euclidean_distance(na.x, na.y, nb.x, nb.y);
    let (time_min, velocity_kmh) = sample_time(distance_km, velocity_min, velocity_max, rng);
    Edge {
        a,
        b,
        distance_km,
        time_min,
        velocity_kmh,
    }
}

/// Tries to add one edge from `from` to a uniformly drawn other node,
/// redrawing on duplicates up to `n - 1` times.
fn try_spawn_edge(
    g: &mut TransportGraph,
    from: NodeId,
    params: &GeneratorParams,
    rng: &mut InstanceRng,
) -> bool {
    let n = g.node_count();
    for _ in 0..n {
        let draw = rng.below(n as u64 - 1) as usize;
        let to = if draw >= from { draw + 1 } else { draw };
        if g.has_edge(from, to) {
            continue;
        }
        let edge = make_edge(g, from, to, params.velocity_min, params.velocity_max, rng);
        g.add_edge(edge);
        return true;
    }
    false
}

/// For every node in id order, makes `max_edges_per_node` attempts that
/// each succeed on a fair coin; a node whose attempts all fail gets one
/// forced edge. Returns the number of edges added.
pub fn spread_edges(
    g: &mut TransportGraph,
    params: &GeneratorParams,
    rng: &mut InstanceRng,
) -> usize {
    let n = g.node_count();
    if n < 2 {
        return 0;
    }
    let mut added = 0;
    for from in 0..n {
        let mut spawned = 0;
        for _ in 0..params.max_edges_per_node {
            if rng.coin() && try_spawn_edge(g, from, params, rng) {
                spawned += 1;
            }
        }
        if spawned == 0 && try_spawn_edge(g, from, params, rng) {
            spawned = 1;
        }
        added += spawned;
    }
    added
}

/// Joins components by repeatedly adding an edge between the closest pair
/// of nodes lying in different components. Returns the number of edges
/// added; zero on an already connected graph.
pub fn ensure_connected(
    g: &mut TransportGraph,
    velocity_min: u32,
    velocity_max: u32,
    rng: &mut InstanceRng,
) -> usize {
    let mut added = 0;
    loop {
        let labels = g.component_labels();
        let n = labels.len();
        let mut best: Option<(f64, NodeId, NodeId)> = None;
        for a in 0..n {
            for b in a + 1..n {
                if labels[a] == labels[b] {
                    continue;
                }
                let (na, nb) = (g.node(a), g.node(b));
                let d = euclidean_distance(na.x, na.y, nb.x, nb.y);
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, a, b));
                }
            }
        }
        let Some((_, a, b)) = best else {
            return added;
        };
        let edge = make_edge(g, a, b, velocity_min, velocity_max, rng);
        g.add_edge(edge);
        added += 1;
    }
}
