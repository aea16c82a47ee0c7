//! Renderings of a [`SolveOutcome`]: a readable step-by-step log, JSON
//! lines for tooling, and a DOT overlay of the traversed edges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dot::{graph_to_document, lookup, set_attr};
use crate::model::{NodeId, TransportGraph};
use crate::router::{Override, PathSegment, Rule, SegmentKind, SolveOutcome, SolveStatus};

/// One decision of the truck, as shown in the log.
#[derive(Debug, Clone, PartialEq)]
pub struct LogEntry {
    /// 1-based.
    pub step: usize,
    pub position: NodeId,
    pub load_before: u32,
    pub load_after: u32,
    pub rule: Rule,
    pub override_: Option<Override>,
    pub kind: SegmentKind,
    pub target: NodeId,
    pub route: Vec<NodeId>,
    pub moved_units: u32,
    pub decision_cost: f64,
    pub remaining_supply: u64,
    pub remaining_demand: u64,
}

impl LogEntry {
    fn from_segment(step: usize, s: &PathSegment) -> Self {
        Self {
            step,
            position: s.origin(),
            load_before: s.load_before,
            load_after: s.load_after,
            rule: s.rule,
            override_: s.override_,
            kind: s.kind,
            target: s.target,
            route: s.route.nodes.clone(),
            moved_units: s.moved_units,
            decision_cost: s.decision_cost,
            remaining_supply: s.remaining_supply,
            remaining_demand: s.remaining_demand,
        }
    }
}

pub fn log_entries(outcome: &SolveOutcome) -> Vec<LogEntry> {
    outcome
        .segments
        .iter()
        .enumerate()
        .map(|(i, s)| LogEntry::from_segment(i + 1, s))
        .collect()
}

/// One decimal place, exact ties rounded up.
pub fn one_decimal(v: f64) -> String {
    let scaled = v * 10.0;
    // exact binary ties only occur for quarters
    if scaled.fract() == 0.5 && (v * 4.0).fract() == 0.0 {
        format!("{:.1}", (scaled.floor() + 1.0) / 10.0)
    } else {
        format!("{v:.1}")
    }
}

fn path_text(nodes: &[NodeId]) -> String {
    nodes
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" -> ")
}

pub fn render_log(outcome: &SolveOutcome) -> String {
    let p = &outcome.params;
    let mut out = String::new();
    let _ = writeln!(out, "Truck routing log");
    let _ = writeln!(out, "=================");
    let _ = writeln!(
        out,
        "start node {}, initial load {}, capacity {}, threshold T {} (restock below {} units)",
        p.start_node,
        p.initial_load,
        p.max_capacity,
        p.threshold,
        p.threshold * f64::from(p.max_capacity)
    );
    let _ = writeln!(
        out,
        "initial supply {}, initial demand {}",
        outcome.initial_supply, outcome.initial_demand
    );

    for e in log_entries(outcome) {
        let _ = writeln!(out);
        let _ = writeln!(out, "Step {}", e.step);
        let _ = writeln!(
            out,
            "  position:  node {} with load {}",
            e.position, e.load_before
        );
        let _ = writeln!(
            out,
            "  rule:      {} ({})",
            e.rule.name(),
            e.rule.describe()
        );
        if let Some(o) = e.override_ {
            let why = match o {
                Override::SupplyExhausted => {
                    "every warehouse is depleted, delivering the remaining load"
                }
                Override::EmptyTruck => "the truck is empty, restocking first",
            };
            let _ = writeln!(out, "  override:  {} ({why})", o.name());
        }
        let (verb, place) = match e.kind {
            SegmentKind::Restock => ("restock at", "warehouse"),
            SegmentKind::Ship => ("ship to", "store"),
        };
        let _ = writeln!(out, "  decision:  {verb} {place} {}", e.target);
        let hops = e.route.len() - 1;
        let _ = writeln!(
            out,
            "  route:     {} ({hops} edge{})",
            path_text(&e.route),
            if hops == 1 { "" } else { "s" }
        );
        let _ = writeln!(out, "  cost:      {}", one_decimal(e.decision_cost));
        let action = match e.kind {
            SegmentKind::Restock => "loaded",
            SegmentKind::Ship => "dropped",
        };
        let _ = writeln!(
            out,
            "  action:    {action} {} units, load now {}",
            e.moved_units, e.load_after
        );
        let _ = writeln!(
            out,
            "  remaining: supply {}, demand {}",
            e.remaining_supply, e.remaining_demand
        );
    }

    let _ = writeln!(out);
    let _ = writeln!(out, "Summary");
    let _ = writeln!(out, "=======");
    let _ = writeln!(out, "full path:        {}", path_text(&outcome.full_path));
    let _ = writeln!(
        out,
        "segments:         {} ({} restock, {} ship)",
        outcome.segments.len(),
        outcome.count(SegmentKind::Restock),
        outcome.count(SegmentKind::Ship)
    );
    let _ = writeln!(
        out,
        "total cost:       {}",
        one_decimal(outcome.total_cost())
    );
    let _ = writeln!(
        out,
        "total distance:   {} km",
        one_decimal(outcome.total_distance_km())
    );
    let _ = writeln!(out, "total time:       {} min", outcome.total_time_min());
    let status = match outcome.status {
        SolveStatus::Complete => "complete (every store received its goods)",
        SolveStatus::Partial => {
            "partial (overconstrained problem, only a partial solution available)"
        }
    };
    let _ = writeln!(out, "status:           {status}");
    let _ = writeln!(out, "delivered:        {}", outcome.delivered_total);
    let _ = writeln!(out, "remaining demand: {}", outcome.remaining_demand);
    let _ = writeln!(out, "remaining supply: {}", outcome.remaining_supply);
    let _ = writeln!(out, "truck leftover:   {}", outcome.truck_load_final);
    let _ = writeln!(
        out,
        "runtime:          {:.6} s",
        outcome.elapsed.as_secs_f64()
    );
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentRecord {
    pub step: usize,
    pub kind: SegmentKind,
    pub rule: Rule,
    #[serde(rename = "override")]
    pub override_: Option<Override>,
    pub from: NodeId,
    pub target: NodeId,
    pub route: Vec<NodeId>,
    pub moved: u32,
    pub load_before: u32,
    pub load_after: u32,
    pub cost: f64,
    pub distance_km: f64,
    pub time_min: u64,
    pub remaining_supply: u64,
    pub remaining_demand: u64,
    pub delivered: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub status: SolveStatus,
    pub segments: usize,
    pub restock_segments: usize,
    pub ship_segments: usize,
    pub total_cost: f64,
    pub total_distance_km: f64,
    pub total_time_min: u64,
    pub delivered: u64,
    pub initial_supply: u64,
    pub initial_demand: u64,
    pub remaining_supply: u64,
    pub remaining_demand: u64,
    pub truck_load_final: u32,
    pub start_node: NodeId,
    pub initial_load: u32,
    pub max_capacity: u32,
    pub threshold: f64,
    pub runtime_secs: f64,
    pub full_path: Vec<NodeId>,
}

impl SummaryRecord {
    pub fn from_outcome(o: &SolveOutcome) -> Self {
        Self {
            status: o.status,
            segments: o.segments.len(),
            restock_segments: o.count(SegmentKind::Restock),
            ship_segments: o.count(SegmentKind::Ship),
            total_cost: o.total_cost(),
            total_distance_km: o.total_distance_km(),
            total_time_min: o.total_time_min(),
            delivered: o.delivered_total,
            initial_supply: o.initial_supply,
            initial_demand: o.initial_demand,
            remaining_supply: o.remaining_supply,
            remaining_demand: o.remaining_demand,
            truck_load_final: o.truck_load_final,
            start_node: o.params.start_node,
            initial_load: o.params.initial_load,
            max_capacity: o.params.max_capacity,
            threshold: o.params.threshold,
            runtime_secs: o.elapsed.as_secs_f64(),
            full_path: o.full_path.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "lowercase")]
pub enum Record {
    Segment(SegmentRecord),
    Summary(SummaryRecord),
}

/// Segment records followed by the summary record.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredReport {
    pub segments: Vec<SegmentRecord>,
    pub summary: SummaryRecord,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("no summary record")]
    MissingSummary,
    #[error("line {0}: record after the summary")]
    TrailingRecord(usize),
}

pub fn records(outcome: &SolveOutcome) -> Vec<Record> {
    let mut out: Vec<Record> = outcome
        .segments
        .iter()
        .enumerate()
        .map(|(i, s)| {
            Record::Segment(SegmentRecord {
                step: i + 1,
                kind: s.kind,
                rule: s.rule,
                override_: s.override_,
                from: s.origin(),
                target: s.target,
                route: s.route.nodes.clone(),
                moved: s.moved_units,
                load_before: s.load_before,
                load_after: s.load_after,
                cost: s.decision_cost,
                distance_km: s.route.total_distance_km,
                time_min: s.route.total_time_min,
                remaining_supply: s.remaining_supply,
                remaining_demand: s.remaining_demand,
                delivered: s.delivered_so_far,
            })
        })
        .collect();
    out.push(Record::Summary(SummaryRecord::from_outcome(outcome)));
    out
}

/// One JSON object per line: a `segment` record per segment, then a
/// `summary` record. Reals keep full precision.
pub fn render_structured(outcome: &SolveOutcome) -> String {
    let mut out = String::new();
    for record in records(outcome) {
        out.push_str(&serde_json::to_string(&record).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_structured(text: &str) -> Result<StructuredReport, ReportError> {
    let mut segments = Vec::new();
    let mut summary = None;
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        if summary.is_some() {
            return Err(ReportError::TrailingRecord(idx + 1));
        }
        match serde_json::from_str(line).map_err(|source| ReportError::Json {
            line: idx + 1,
            source,
        })? {
            Record::Segment(s) => segments.push(s),
            Record::Summary(s) => summary = Some(s),
        }
    }
    Ok(StructuredReport {
        segments,
        summary: summary.ok_or(ReportError::MissingSummary)?,
    })
}

/// Per undirected edge, how often it was driven and by which segment kinds.
pub fn edge_traversals(
    outcome: &SolveOutcome,
) -> BTreeMap<(NodeId, NodeId), (usize, BTreeSet<SegmentKind>)> {
    let mut map: BTreeMap<(NodeId, NodeId), (usize, BTreeSet<SegmentKind>)> = BTreeMap::new();
    for s in &outcome.segments {
        for pair in s.route.nodes.windows(2) {
            let key = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            let slot = map.entry(key).or_default();
            slot.0 += 1;
            slot.1.insert(s.kind);
        }
    }
    map
}

/// The instance document with traversed edges annotated: `traversals`
/// (count), `segment_kinds` (`restock`, `ship` or `restock+ship`) and a
/// `color`/`penwidth` pair for visualizers.
pub fn render_solution_dot(g: &TransportGraph, outcome: &SolveOutcome) -> String {
    let mut doc = graph_to_document(g);
    let traversals = edge_traversals(outcome);
    for stmt in &mut doc.edge_statements {
        let (Ok(a), Ok(b)) = (stmt.a.parse::<NodeId>(), stmt.b.parse::<NodeId>()) else {
            continue;
        };
        let Some((count, kinds)) = traversals.get(&(a.min(b), a.max(b))) else {
            continue;
        };
        let names: Vec<&str> = kinds.iter().map(|k| k.as_str()).collect();
        let color = match names.as_slice() {
            ["restock"] => "blue",
            ["ship"] => "red",
            _ => "purple",
        };
        set_attr(&mut stmt.attrs, "traversals", count.to_string());
        set_attr(&mut stmt.attrs, "segment_kinds", names.join("+"));
        set_attr(&mut stmt.attrs, "color", color);
        set_attr(&mut stmt.attrs, "penwidth", (1 + count).to_string());
    }
    debug_assert!(doc
        .edge_statements
        .iter()
        .all(|s| lookup(&s.attrs, "distance").is_some()));
    doc.render()
}
