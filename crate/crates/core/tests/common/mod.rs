#![allow(dead_code)]

use truckroute::{generate, GeneratorParams, NodeKind, SolveStatus, SolverParams, TransportGraph};

/// Seeded instances spanning 6 to 40 nodes with varied supply/demand
/// balance, edge budgets and special-node counts.
pub fn corpus(count: u64) -> Vec<(GeneratorParams, TransportGraph)> {
    (0..count)
        .map(|i| {
            let total_nodes = 6 + (i as usize * 7) % 35;
            let num_warehouses = 1 + (i as usize) % 3;
            let num_stores = 1 + (i as usize / 3) % (total_nodes - num_warehouses).min(6);
            let (total_supply, total_demand) = match i % 4 {
                0 => (100, 90),
                1 => (60, 90),
                2 => (90, 90),
                _ => (37 + (i % 50) as u32, 11 + (i % 71) as u32),
            };
            let params = GeneratorParams {
                total_nodes,
                max_edges_per_node: 1 + (i as usize) % 4,
                num_stores,
                num_warehouses,
                total_supply,
                total_demand,
                seed: 1000 + i,
                ..GeneratorParams::default()
            };
            let g = generate(&params).expect("corpus params are valid");
            (params, g)
        })
        .collect()
}

pub fn edge_costs(g: &TransportGraph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut w = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in w.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in g.edges() {
        let c = e.time_min as f64 + e.distance_km;
        if c < w[e.a][e.b] {
            w[e.a][e.b] = c;
            w[e.b][e.a] = c;
        }
    }
    w
}

pub fn floyd_warshall(g: &TransportGraph) -> Vec<Vec<f64>> {
    let mut d = edge_costs(g);
    let n = d.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Cheapest simple path between `from` and `to` by depth-first enumeration.
pub fn brute_force_cost(g: &TransportGraph, from: usize, to: usize) -> f64 {
    fn walk(w: &[Vec<f64>], at: usize, to: usize, seen: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if at == to {
            *best = best.min(acc);
            return;
        }
        for next in 0..w.len() {
            if !seen[next] && w[at][next].is_finite() && next != at {
                seen[next] = true;
                walk(w, next, to, seen, acc + w[at][next], best);
                seen[next] = false;
            }
        }
    }
    let w = edge_costs(g);
    let mut seen = vec![false; w.len()];
    seen[from] = true;
    let mut best = f64::INFINITY;
    walk(&w, from, to, &mut seen, 0.0, &mut best);
    best
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.parent[x] = root;
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }

    pub fn components(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }
}

pub fn components(g: &TransportGraph) -> usize {
    let mut uf = UnionFind::new(g.node_count());
    for e in g.edges() {
        uf.union(e.a, e.b);
    }
    uf.components()
}

/// One step of the reference simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimStep {
    pub restock: bool,
    pub target: usize,
    pub moved: u32,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub steps: Vec<SimStep>,
    pub status: SolveStatus,
    pub supply_left: u64,
    pub demand_left: u64,
    pub load: u32,
}

/// Straight re-statement of the decision table over Floyd–Warshall
/// distances, ignoring path shapes.
pub fn simulate(g: &TransportGraph, p: &SolverParams) -> SimResult {
    let d = floyd_warshall(g);
    let mut supply: Vec<u32> = g.nodes().iter().map(|n| n.supply).collect();
    let mut demand: Vec<u32> = g.nodes().iter().map(|n| n.demand).collect();
    let mut pos = p.start_node;
    let mut load = p.initial_load;
    let mut steps = Vec::new();
    let nearest = |pos: usize, kind: NodeKind, open: &dyn Fn(usize) -> bool| {
        let mut best: Option<usize> = None;
        for n in g.nodes().iter().filter(|n| n.kind == kind && open(n.id)) {
            if best.is_none_or(|b| d[pos][n.id] < d[pos][b]) {
                best = Some(n.id);
            }
        }
        best.expect("a candidate exists")
    };
    let status = loop {
        if demand.iter().all(|&x| x == 0) {
            break SolveStatus::Complete;
        }
        let stock = supply.iter().any(|&x| x > 0);
        let below = (load as f64) < p.threshold * p.max_capacity as f64;
        let restock = if below { stock } else { load == 0 };
        if restock && !stock || !restock && load == 0 {
            break SolveStatus::Partial;
        }
        let (target, moved) = if restock {
            let w = nearest(pos, NodeKind::Warehouse, &|i| supply[i] > 0);
            let m = (p.max_capacity - load).min(supply[w]);
            supply[w] -= m;
            load += m;
            (w, m)
        } else {
            let s = nearest(pos, NodeKind::Store, &|i| demand[i] > 0);
            let m = load.min(demand[s]);
            demand[s] -= m;
            load -= m;
            (s, m)
        };
        steps.push(SimStep {
            restock,
            target,
            moved,
            cost: d[pos][target],
        });
        pos = target;
    };
    SimResult {
        steps,
        status,
        supply_left: supply.iter().map(|&x| u64::from(x)).sum(),
        demand_left: demand.iter().map(|&x| u64::from(x)).sum(),
        load,
    }
}
