//! Greedy single-truck delivery simulation.
//!
//! At each step the truck compares its load with `threshold * capacity`.
//! Below it, the truck heads for the cheapest-to-reach warehouse that still
//! has stock and fills up; at or above it, the truck heads for the
//! cheapest-to-reach store that still wants goods and drops what it can.
//! The run ends when no store wants goods (complete) or when the truck is
//! empty and every warehouse is depleted (partial).

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{NodeId, NodeKind, TransportGraph, Violation};
use crate::shortest_path::{cheapest_routes_from, nearest_in_tree, PathError, Route};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    pub start_node: NodeId,
    pub initial_load: u32,
    pub max_capacity: u32,
    /// Fraction of capacity below which the truck restocks.
    pub threshold: f64,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            start_node: 0,
            initial_load: 0,
            max_capacity: 20,
            threshold: 0.5,
        }
    }
}

impl SolverParams {
    pub fn with_capacity(self, max_capacity: u32) -> Self {
        Self {
            max_capacity,
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruckState {
    pub position: NodeId,
    pub load: u32,
    pub max_capacity: u32,
    pub threshold: f64,
}

impl TruckState {
    pub fn new(params: &SolverParams) -> Self {
        Self {
            position: params.start_node,
            load: params.initial_load,
            max_capacity: params.max_capacity,
            threshold: params.threshold,
        }
    }

    /// `load < threshold * max_capacity`.
    pub fn below_threshold(&self) -> bool {
        f64::from(self.load) < self.threshold * f64::from(self.max_capacity)
    }
}

/// Remaining stock per warehouse and remaining demand per store.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ledger {
    pub supply: Vec<u32>,
    pub demand: Vec<u32>,
}

impl Ledger {
    pub fn from_graph(g: &TransportGraph) -> Self {
        Self {
            supply: g.nodes().iter().map(|n| n.supply).collect(),
            demand: g.nodes().iter().map(|n| n.demand).collect(),
        }
    }

    pub fn total_supply(&self) -> u64 {
        self.supply.iter().map(|&s| u64::from(s)).sum()
    }

    pub fn total_demand(&self) -> u64 {
        self.demand.iter().map(|&d| u64::from(d)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentKind {
    Restock,
    Ship,
}

impl SegmentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SegmentKind::Restock => "restock",
            SegmentKind::Ship => "ship",
        }
    }
}

impl fmt::Display for SegmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The six decision rules, keyed by the kind of node the truck stands on
/// and whether its load is below the restock threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    WarehouseBelowThreshold,
    JointBelowThreshold,
    StoreBelowThreshold,
    WarehouseAtOrAboveThreshold,
    JointAtOrAboveThreshold,
    StoreAtOrAboveThreshold,
}

impl Rule {
    pub fn select(position: NodeKind, below_threshold: bool) -> Self {
        match (position, below_threshold) {
            (NodeKind::Warehouse, true) => Rule::WarehouseBelowThreshold,
            (NodeKind::Joint, true) => Rule::JointBelowThreshold,
            (NodeKind::Store, true) => Rule::StoreBelowThreshold,
            (NodeKind::Warehouse, false) => Rule::WarehouseAtOrAboveThreshold,
            (NodeKind::Joint, false) => Rule::JointAtOrAboveThreshold,
            (NodeKind::Store, false) => Rule::StoreAtOrAboveThreshold,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::WarehouseBelowThreshold => "warehouse-below-threshold",
            Rule::JointBelowThreshold => "joint-below-threshold",
            Rule::StoreBelowThreshold => "store-below-threshold",
            Rule::WarehouseAtOrAboveThreshold => "warehouse-at-or-above-threshold",
            Rule::JointAtOrAboveThreshold => "joint-at-or-above-threshold",
            Rule::StoreAtOrAboveThreshold => "store-at-or-above-threshold",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Rule::WarehouseBelowThreshold => {
                "at a warehouse with load < T x capacity: restock at the nearest warehouse (here if it has stock)"
            }
            Rule::JointBelowThreshold => {
                "at a joint with load < T x capacity: go to the nearest warehouse to restock"
            }
            Rule::StoreBelowThreshold => {
                "at a store with load < T x capacity: go to the nearest warehouse to restock"
            }
            Rule::WarehouseAtOrAboveThreshold => {
                "at a warehouse with load >= T x capacity: go to the nearest store to drop goods"
            }
            Rule::JointAtOrAboveThreshold => {
                "at a joint with load >= T x capacity: go to the nearest store to drop goods"
            }
            Rule::StoreAtOrAboveThreshold => {
                "at a store with load >= T x capacity: drop goods at the nearest store (here if it still has demand)"
            }
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        [
            Rule::WarehouseBelowThreshold,
            Rule::JointBelowThreshold,
            Rule::StoreBelowThreshold,
            Rule::WarehouseAtOrAboveThreshold,
            Rule::JointAtOrAboveThreshold,
            Rule::StoreAtOrAboveThreshold,
        ]
        .into_iter()
        .find(|r| r.name() == name)
    }
}

/// Why a move differs from what its rule alone prescribes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Override {
    /// Below threshold but every warehouse is empty: deliver what is left.
    SupplyExhausted,
    /// At or above a zero threshold with an empty truck: restock first.
    EmptyTruck,
}

impl Override {
    pub fn name(self) -> &'static str {
        match self {
            Override::SupplyExhausted => "supply-exhausted",
            Override::EmptyTruck => "empty-truck",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    /// Every store's demand was met.
    Complete,
    /// Overconstrained: goods ran out with demand remaining.
    Partial,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Complete => "complete",
            SolveStatus::Partial => "partial",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Move {
    pub kind: SegmentKind,
    pub target: NodeId,
    pub route: Route,
    pub rule: Rule,
    pub override_: Option<Override>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decision {
    Go(Move),
    Stop(SolveStatus),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathSegment {
    pub kind: SegmentKind,
    pub rule: Rule,
    pub override_: Option<Override>,
    pub target: NodeId,
    pub route: Route,
    pub moved_units: u32,
    pub load_before: u32,
    pub load_after: u32,
    /// Route cost; the heuristic value of the decision.
    pub decision_cost: f64,
    /// Warehouse stock left across the graph after this segment.
    pub remaining_supply: u64,
    /// Store demand left across the graph after this segment.
    pub remaining_demand: u64,
    /// Goods dropped at stores so far, this segment included.
    pub delivered_so_far: u64,
}

impl PathSegment {
    pub fn origin(&self) -> NodeId {
        self.route.origin()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub params: SolverParams,
    pub segments: Vec<PathSegment>,
    pub full_path: Vec<NodeId>,
    pub initial_supply: u64,
    pub initial_demand: u64,
    pub delivered_total: u64,
    pub remaining_demand: u64,
    pub remaining_supply: u64,
    pub truck_load_final: u32,
    pub elapsed: Duration,
}

impl SolveOutcome {
    /// Sum of segment route costs.
    pub fn total_cost(&self) -> f64 {
        self.segments.iter().map(|s| s.decision_cost).sum()
    }

    pub fn total_distance_km(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.route.total_distance_km)
            .sum()
    }

    pub fn total_time_min(&self) -> u64 {
        self.segments.iter().map(|s| s.route.total_time_min).sum()
    }

    pub fn count(&self, kind: SegmentKind) -> usize {
        self.segments.iter().filter(|s| s.kind == kind).count()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("max_capacity must be at least 1")]
    ZeroCapacity,
    #[error("initial load {load} exceeds capacity {capacity}")]
    InitialLoadExceedsCapacity { load: u32, capacity: u32 },
    #[error("threshold {0} is outside [0, 1]")]
    ThresholdOutOfRange(f64),
    #[error("start node {0} does not exist")]
    StartOutOfRange(NodeId),
    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("graph is invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidGraph(Vec<Violation>),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("step {step} moved no goods")]
    NoProgress { step: usize },
    #[error(transparent)]
    Path(#[from] PathError),
}

impl SolverParams {
    pub fn check(&self) -> Result<(), SolveError> {
        if self.max_capacity == 0 {
            return Err(SolveError::ZeroCapacity);
        }
        if self.initial_load > self.max_capacity {
            return Err(SolveError::InitialLoadExceedsCapacity {
                load: self.initial_load,
                capacity: self.max_capacity,
            });
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(SolveError::ThresholdOutOfRange(self.threshold));
        }
        Ok(())
    }
}

/// Picks the next move from the truck's position, load and the ledger.
pub fn decide_next(
    g: &TransportGraph,
    truck: &TruckState,
    ledger: &Ledger,
) -> Result<Decision, SolveError> {
    let wants_goods = |id: NodeId| ledger.demand[id] > 0;
    let has_stock = |id: NodeId| ledger.supply[id] > 0;
    if !g
        .nodes()
        .iter()
        .any(|n| n.kind == NodeKind::Store && wants_goods(n.id))
    {
        return Ok(Decision::Stop(SolveStatus::Complete));
    }
    let any_stock = g
        .nodes()
        .iter()
        .any(|n| n.kind == NodeKind::Warehouse && has_stock(n.id));

    let below = truck.below_threshold();
    let rule = Rule::select(g.node(truck.position).kind, below);
    let (kind, override_) = match (below, any_stock, truck.load > 0) {
        (true, true, _) => (SegmentKind::Restock, None),
        (true, false, true) => (SegmentKind::Ship, Some(Override::SupplyExhausted)),
        (false, _, true) => (SegmentKind::Ship, None),
        (false, true, false) => (SegmentKind::Restock, Some(Override::EmptyTruck)),
        (_, false, false) => return Ok(Decision::Stop(SolveStatus::Partial)),
    };

    let tree = cheapest_routes_from(g, truck.position)?;
    let (target, route) = match kind {
        SegmentKind::Restock => {
            nearest_in_tree(g, &tree, NodeKind::Warehouse, |n| has_stock(n.id))?
        }
        SegmentKind::Ship => nearest_in_tree(g, &tree, NodeKind::Store, |n| wants_goods(n.id))?,
    };
    Ok(Decision::Go(Move {
        kind,
        target,
        route,
        rule,
        override_,
    }))
}

/// Fills the truck at `warehouse` up to capacity, limited by its stock.
pub fn apply_restock(
    truck: &mut TruckState,
    ledger: &mut Ledger,
    warehouse: NodeId,
) -> Result<u32, SolveError> {
    let stock = *ledger
        .supply
        .get(warehouse)
        .ok_or_else(|| SolveError::Contract(format!("no node {warehouse}")))?;
    if stock == 0 {
        return Err(SolveError::Contract(format!(
            "restock at node {warehouse} which has no stock"
        )));
    }
    if truck.load >= truck.max_capacity {
        return Err(SolveError::Contract(format!(
            "restock with a full truck ({}/{})",
            truck.load, truck.max_capacity
        )));
    }
    let moved = (truck.max_capacity - truck.load).min(stock);
    ledger.supply[warehouse] -= moved;
    truck.load += moved;
    truck.position = warehouse;
    Ok(moved)
}

/// Drops as much of the load at `store` as it still wants.
pub fn apply_ship(
    truck: &mut TruckState,
    ledger: &mut Ledger,
    store: NodeId,
) -> Result<u32, SolveError> {
    let wanted = *ledger
        .demand
        .get(store)
        .ok_or_else(|| SolveError::Contract(format!("no node {store}")))?;
    if wanted == 0 {
        return Err(SolveError::Contract(format!(
            "ship to node {store} which has no demand"
        )));
    }
    if truck.load == 0 {
        return Err(SolveError::Contract("ship with an empty truck".into()));
    }
    let moved = truck.load.min(wanted);
    ledger.demand[store] -= moved;
    truck.load -= moved;
    truck.position = store;
    Ok(moved)
}

/// Runs the delivery loop to termination.
pub fn solve(g: &TransportGraph, params: &SolverParams) -> Result<SolveOutcome, SolveError> {
    let started = Instant::now();
    params.check()?;
    let violations = g.validate();
    if let Some(Violation::Disconnected { components }) = violations
        .iter()
        .find(|v| matches!(v, Violation::Disconnected { .. }))
    {
        return Err(SolveError::Disconnected(*components));
    }
    if !violations.is_empty() {
        return Err(SolveError::InvalidGraph(violations));
    }
    if params.start_node >= g.node_count() {
        return Err(SolveError::StartOutOfRange(params.start_node));
    }

    let mut ledger = Ledger::from_graph(g);
    let mut truck = TruckState::new(params);
    let initial_supply = ledger.total_supply();
    let initial_demand = ledger.total_demand();
    let step_limit = initial_supply + initial_demand;
    let mut segments: Vec<PathSegment> = Vec::new();
    let mut full_path = vec![params.start_node];
    let mut delivered = 0u64;

    let status = loop {
        let mv = match decide_next(g, &truck, &ledger)? {
            Decision::Stop(status) => break status,
            Decision::Go(mv) => mv,
        };
        let step = segments.len() + 1;
        if step as u64 > step_limit {
            return Err(SolveError::NoProgress { step });
        }
        let load_before = truck.load;
        let moved = match mv.kind {
            SegmentKind::Restock => apply_restock(&mut truck, &mut ledger, mv.target)?,
            SegmentKind::Ship => apply_ship(&mut truck, &mut ledger, mv.target)?,
        };
        if moved == 0 {
            return Err(SolveError::NoProgress { step });
        }
        if mv.kind == SegmentKind::Ship {
            delivered += u64::from(moved);
        }
        full_path.extend_from_slice(&mv.route.nodes[1..]);
        segments.push(PathSegment {
            kind: mv.kind,
            rule: mv.rule,
            override_: mv.override_,
            target: mv.target,
            decision_cost: mv.route.total_cost,
            route: mv.route,
            moved_units: moved,
            load_before,
            load_after: truck.load,
            remaining_supply: ledger.total_supply(),
            remaining_demand: ledger.total_demand(),
            delivered_so_far: delivered,
        });
    };

    Ok(SolveOutcome {
        status,
        params: *params,
        segments,
        full_path,
        initial_supply,
        initial_demand,
        delivered_total: delivered,
        remaining_demand: ledger.total_demand(),
        remaining_supply: ledger.total_supply(),
        truck_load_final: truck.load,
        elapsed: started.elapsed(),
    })
}
