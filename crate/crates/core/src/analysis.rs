//! Capacity sweeps: solve one instance under several truck capacities and
//! compare segment counts and total route cost.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::dot::format_real;
use crate::model::TransportGraph;
use crate::report::SummaryRecord;
use crate::router::{solve, SolveStatus, SolverParams};

#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Complete,
    Partial,
    Failed(String),
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowStatus::Complete => f.write_str("complete"),
            RowStatus::Partial => f.write_str("partial"),
            RowStatus::Failed(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl From<SolveStatus> for RowStatus {
    fn from(s: SolveStatus) -> Self {
        match s {
            SolveStatus::Complete => RowStatus::Complete,
            SolveStatus::Partial => RowStatus::Partial,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub capacity: u32,
    pub segment_count: usize,
    /// Sum of segment route costs.
    pub total_cost: f64,
    pub delivered: u64,
    pub status: RowStatus,
}

impl SweepRow {
    pub fn from_summary(s: &SummaryRecord) -> Self {
        Self {
            capacity: s.max_capacity,
            segment_count: s.segments,
            total_cost: s.total_cost,
            delivered: s.delivered,
            status: s.status.into(),
        }
    }

    fn failed(capacity: u32, message: String) -> Self {
        Self {
            capacity,
            segment_count: 0,
            total_cost: 0.0,
            delivered: 0,
            status: RowStatus::Failed(message),
        }
    }
}

/// One row per capacity, ascending. A capacity the solver rejects yields a
/// failed row rather than aborting the sweep.
pub fn sweep(g: &TransportGraph, capacities: &[u32], base: &SolverParams) -> Vec<SweepRow> {
    let mut sorted = capacities.to_vec();
    sorted.sort_unstable();
    sorted
        .par_iter()
        .map(|&capacity| match solve(g, &base.with_capacity(capacity)) {
            Ok(outcome) => SweepRow {
                capacity,
                segment_count: outcome.segments.len(),
                total_cost: outcome.total_cost(),
                delivered: outcome.delivered_total,
                status: outcome.status.into(),
            },
            Err(e) => SweepRow::failed(capacity, e.to_string()),
        })
        .collect()
}

pub const CSV_HEADER: [&str; 6] = [
    "capacity",
    "segments",
    "total_cost",
    "delivered",
    "status",
    "error",
];

pub fn emit_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        let (status, error) = match &row.status {
            RowStatus::Complete => ("complete", ""),
            RowStatus::Partial => ("partial", ""),
            RowStatus::Failed(msg) => ("error", msg.as_str()),
        };
        w.write_record([
            row.capacity.to_string(),
            row.segment_count.to_string(),
            format_real(row.total_cost),
            row.delivered.to_string(),
            status.to_string(),
            error.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("row {row}: bad `{column}` value `{value}`")]
    Field {
        row: usize,
        column: &'static str,
        value: String,
    },
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, AnalysisError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(AnalysisError::Header(header));
    }
    let mut rows = Vec::new();
    for (idx, record) in r.records().enumerate() {
        let record = record?;
        let row = idx + 1;
        let field = |i: usize| record.get(i).unwrap_or("");
        fn num<T: std::str::FromStr>(
            row: usize,
            column: &'static str,
            value: &str,
        ) -> Result<T, AnalysisError> {
            value.parse().map_err(|_| AnalysisError::Field {
                row,
                column,
                value: value.to_string(),
            })
        }
        let status = match field(4) {
            "complete" => RowStatus::Complete,
            "partial" => RowStatus::Partial,
            "error" => RowStatus::Failed(field(5).to_string()),
            other => {
                return Err(AnalysisError::Field {
                    row,
                    column: "status",
                    value: other.to_string(),
                })
            }
        };
        rows.push(SweepRow {
            capacity: num(row, "capacity", field(0))?,
            segment_count: num(row, "segments", field(1))?,
            total_cost: num(row, "total_cost", field(2))?,
            delivered: num(row, "delivered", field(3))?,
            status,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalValue {
    pub from_capacity: u32,
    pub to_capacity: u32,
    pub capacity_delta: u32,
    /// Cost saved per added unit of capacity; negative when cost rises.
    pub cost_delta_per_unit: f64,
}

/// `(cost[i] - cost[i+1]) / (capacity[i+1] - capacity[i])` over
/// consecutive rows. Pairs with a failed row or equal capacities are
/// skipped.
pub fn marginal_value(rows: &[SweepRow]) -> Vec<MarginalValue> {
    rows.windows(2)
        .filter(|w| {
            w[1].capacity > w[0].capacity
                && !matches!(w[0].status, RowStatus::Failed(_))
                && !matches!(w[1].status, RowStatus::Failed(_))
        })
        .map(|w| {
            let delta = w[1].capacity - w[0].capacity;
            MarginalValue {
                from_capacity: w[0].capacity,
                to_capacity: w[1].capacity,
                capacity_delta: delta,
                cost_delta_per_unit: (w[0].total_cost - w[1].total_cost) / f64::from(delta),
            }
        })
        .collect()
}

/// Fixed-width table for terminals.
pub fn render_table(rows: &[SweepRow]) -> String {
    let mut out = format!(
        "{:>8}  {:>8}  {:>14}  {:>9}  {}\n",
        "capacity", "segments", "total cost", "delivered", "status"
    );
    for row in rows {
        out.push_str(&format!(
            "{:>8}  {:>8}  {:>14}  {:>9}  {}\n",
            row.capacity,
            row.segment_count,
            crate::report::one_decimal(row.total_cost),
            row.delivered,
            row.status
        ));
    }
    out
}
