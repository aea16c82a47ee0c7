//! Instance interchange in a subset of the Graphviz DOT language.
//!
//! ```text
//! graph G {
//!   graph [map_size=500.0];
//!   0 [label="{0,warehouse}", kind=warehouse, x=12.5, y=880.25, supply=50, demand=0];
//!   1 [label="{1,store}", kind=store, x=640.0, y=3.75, supply=0, demand=23];
//!   0 -- 1 [distance=1069.7, velocity=71, time=903];
//! }
//! ```
//!
//! Node attributes: `kind` (`store`, `warehouse` or `joint`), `x`, `y`
//! (km), `supply`, `demand` (units). `label` is informational and rebuilt
//! on emission. Edge attributes: `distance` (km), `velocity` (km/h),
//! `time` (whole minutes). The graph attribute `map_size` is written only
//! when it differs from 1000. Reals are printed in the shortest form that
//! reads back to the same `f64`, always with a decimal point; integers are
//! bare. Nodes come first in id order, then edges ordered by endpoint pair.
//!
//! Parsing happens in two layers: [`DotDocument::parse`] checks syntax and
//! keeps every attribute verbatim, then [`graph_from_document`] applies the
//! schema above. Unknown attributes are ignored by the schema layer.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{Edge, Node, NodeId, TransportGraph, Violation, DEFAULT_MAP_SIZE};

pub type Attrs = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodeStatement {
    pub id: String,
    pub attrs: Attrs,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EdgeStatement {
    pub a: String,
    pub b: String,
    pub attrs: Attrs,
}

/// Syntax-level view of an undirected DOT file.
#[derive(Debug, Clone, PartialEq)]
pub struct DotDocument {
    pub graph_name: String,
    pub strict: bool,
    pub graph_attrs: Attrs,
    pub node_defaults: Attrs,
    pub edge_defaults: Attrs,
    pub node_statements: Vec<NodeStatement>,
    pub edge_statements: Vec<EdgeStatement>,
}

impl Default for DotDocument {
    fn default() -> Self {
        Self {
            graph_name: "G".into(),
            strict: false,
            graph_attrs: Vec::new(),
            node_defaults: Vec::new(),
            edge_defaults: Vec::new(),
            node_statements: Vec::new(),
            edge_statements: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DotError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{statement}: missing attribute `{key}`")]
    MissingAttribute { statement: String, key: String },
    #[error("{statement}: attribute `{key}` has invalid value `{value}` ({reason})")]
    InvalidAttribute {
        statement: String,
        key: String,
        value: String,
        reason: String,
    },
    #[error("node id `{0}` is not a non-negative integer")]
    InvalidNodeId(String),
    #[error("node {0} is declared twice")]
    DuplicateNode(NodeId),
    #[error("edge {a} -- {b} references undefined node {endpoint}")]
    DanglingEndpoint {
        a: NodeId,
        b: NodeId,
        endpoint: NodeId,
    },
    #[error("instance breaks {} invariant(s): {}", .0.len(), .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

pub fn lookup<'a>(attrs: &'a Attrs, key: &str) -> Option<&'a str> {
    attrs
        .iter()
        .rev()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

/// Sets `key`, replacing an existing value in place or appending.
pub fn set_attr(attrs: &mut Attrs, key: &str, value: impl Into<String>) {
    let value = value.into();
    match attrs.iter_mut().find(|(k, _)| k == key) {
        Some(slot) => slot.1 = value,
        None => attrs.push((key.to_string(), value)),
    }
}

/// Shortest round-trip decimal form with at least one fractional digit.
pub fn format_real(v: f64) -> String {
    let s = v.to_string();
    if s.contains(['.', 'e', 'E']) || !v.is_finite() {
        s
    } else {
        s + ".0"
    }
}

// ---------------------------------------------------------------------------
// rendering

const KEYWORDS: [&str; 6] = ["graph", "digraph", "subgraph", "node", "edge", "strict"];

fn is_plain_id(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    (first.is_ascii_alphabetic() || first == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&s.to_ascii_lowercase().as_str())
}

fn is_numeral(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (body, None),
    };
    let digits = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    match frac {
        None => !int.is_empty() && digits(int),
        Some(f) => digits(int) && digits(f) && !(int.is_empty() && f.is_empty()),
    }
}

fn quote_id(s: &str) -> String {
    if is_plain_id(s) || is_numeral(s) {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('"', "\\\""))
    }
}

fn render_attrs(out: &mut String, attrs: &Attrs) {
    if attrs.is_empty() {
        return;
    }
    out.push_str(" [");
    for (i, (k, v)) in attrs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{}={}", quote_id(k), quote_id(v));
    }
    out.push(']');
}

impl DotDocument {
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.strict {
            out.push_str("strict ");
        }
        out.push_str("graph");
        if !self.graph_name.is_empty() {
            let _ = write!(out, " {}", quote_id(&self.graph_name));
        }
        out.push_str(" {\n");
        for (keyword, attrs) in [
            ("graph", &self.graph_attrs),
            ("node", &self.node_defaults),
            ("edge", &self.edge_defaults),
        ] {
            if !attrs.is_empty() {
                let _ = write!(out, "  {keyword}");
                render_attrs(&mut out, attrs);
                out.push_str(";\n");
            }
        }
        for stmt in &self.node_statements {
            let _ = write!(out, "  {}", quote_id(&stmt.id));
            render_attrs(&mut out, &stmt.attrs);
            out.push_str(";\n");
        }
        for stmt in &self.edge_statements {
            let _ = write!(out, "  {} -- {}", quote_id(&stmt.a), quote_id(&stmt.b));
            render_attrs(&mut out, &stmt.attrs);
            out.push_str(";\n");
        }
        out.push_str("}\n");
        out
    }

    pub fn parse(text: &str) -> Result<Self, DotError> {
        let tokens = tokenize(text)?;
        Parser {
            tokens,
            pos: 0,
            end: end_position(text),
        }
        .document()
    }
}

/// Canonical document for `g`.
pub fn graph_to_document(g: &TransportGraph) -> DotDocument {
    let mut doc = DotDocument::default();
    if g.map_size() != DEFAULT_MAP_SIZE {
        doc.graph_attrs
            .push(("map_size".into(), format_real(g.map_size())));
    }
    for node in g.nodes() {
        doc.node_statements.push(NodeStatement {
            id: node.id.to_string(),
            attrs: vec![
                ("label".into(), format!("{{{},{}}}", node.id, node.kind)),
                ("kind".into(), node.kind.to_string()),
                ("x".into(), format_real(node.x)),
                ("y".into(), format_real(node.y)),
                ("supply".into(), node.supply.to_string()),
                ("demand".into(), node.demand.to_string()),
            ],
        });
    }
    let mut edges: Vec<&Edge> = g.edges().iter().collect();
    edges.sort_by_key(|e| e.key());
    for e in edges {
        let (a, b) = e.key();
        doc.edge_statements.push(EdgeStatement {
            a: a.to_string(),
            b: b.to_string(),
            attrs: vec![
                ("distance".into(), format_real(e.distance_km)),
                ("velocity".into(), e.velocity_kmh.to_string()),
                ("time".into(), e.time_min.to_string()),
            ],
        });
    }
    doc
}

pub fn emit_dot(g: &TransportGraph) -> String {
    graph_to_document(g).render()
}

// ---------------------------------------------------------------------------
// schema

fn parse_node_id(s: &str) -> Result<NodeId, DotError> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        return Err(DotError::InvalidNodeId(s.to_string()));
    }
    s.parse()
        .map_err(|_| DotError::InvalidNodeId(s.to_string()))
}

fn required<'a>(attrs: &'a Attrs, key: &str, statement: &str) -> Result<&'a str, DotError> {
    lookup(attrs, key).ok_or_else(|| DotError::MissingAttribute {
        statement: statement.to_string(),
        key: key.to_string(),
    })
}

fn typed<T: std::str::FromStr>(attrs: &Attrs, key: &str, statement: &str) -> Result<T, DotError>
where
    T::Err: std::fmt::Display,
{
    let raw = required(attrs, key, statement)?;
    raw.trim()
        .parse()
        .map_err(|e: T::Err| DotError::InvalidAttribute {
            statement: statement.to_string(),
            key: key.to_string(),
            value: raw.to_string(),
            reason: e.to_string(),
        })
}

/// Applies the instance schema. The result is not validated.
pub fn graph_from_document(doc: &DotDocument) -> Result<TransportGraph, DotError> {
    let map_size = match lookup(&doc.graph_attrs, "map_size") {
        Some(_) => typed::<f64>(&doc.graph_attrs, "map_size", "graph")?,
        None => DEFAULT_MAP_SIZE,
    };

    let mut nodes = Vec::with_capacity(doc.node_statements.len());
    let mut ids = HashSet::new();
    for stmt in &doc.node_statements {
        let id = parse_node_id(&stmt.id)?;
        if !ids.insert(id) {
            return Err(DotError::DuplicateNode(id));
        }
        let label = format!("node {id}");
        nodes.push(Node {
            id,
            kind: typed(&stmt.attrs, "kind", &label)?,
            x: typed(&stmt.attrs, "x", &label)?,
            y: typed(&stmt.attrs, "y", &label)?,
            supply: typed(&stmt.attrs, "supply", &label)?,
            demand: typed(&stmt.attrs, "demand", &label)?,
        });
    }
    nodes.sort_by_key(|n| n.id);

    let mut edges = Vec::with_capacity(doc.edge_statements.len());
    for stmt in &doc.edge_statements {
        let a = parse_node_id(&stmt.a)?;
        let b = parse_node_id(&stmt.b)?;
        for endpoint in [a, b] {
            if !ids.contains(&endpoint) {
                return Err(DotError::DanglingEndpoint { a, b, endpoint });
            }
        }
        let label = format!("edge {a} -- {b}");
        edges.push(Edge {
            a,
            b,
            distance_km: typed(&stmt.attrs, "distance", &label)?,
            time_min: typed(&stmt.attrs, "time", &label)?,
            velocity_kmh: typed(&stmt.attrs, "velocity", &label)?,
        });
    }
    Ok(TransportGraph::from_parts(map_size, nodes, edges))
}

/// Parses and applies the schema without validating the instance.
pub fn parse_dot_unchecked(text: &str) -> Result<TransportGraph, DotError> {
    graph_from_document(&DotDocument::parse(text)?)
}

/// Parses an instance and checks every invariant.
pub fn parse_dot(text: &str) -> Result<TransportGraph, DotError> {
    let g = parse_dot_unchecked(text)?;
    let violations = g.validate();
    if violations.is_empty() {
        Ok(g)
    } else {
        Err(DotError::Invalid(violations))
    }
}

// ---------------------------------------------------------------------------
// lexing and parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Quoted(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Equals,
    Semi,
    Comma,
    Undirected,
    Directed,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let column = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DotError {
    DotError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, DotError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let next = chars.get(i + 1).copied();
        if c.is_whitespace() {
            bump!();
        } else if c == '#' || (c == '/' && next == Some('/')) {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
        } else if c == '/' && next == Some('*') {
            bump!();
            bump!();
            loop {
                if i >= chars.len() {
                    return Err(syntax(tl, tc, "unterminated comment"));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    break;
                }
                bump!();
            }
        } else if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                if i >= chars.len() {
                    return Err(syntax(tl, tc, "unterminated string"));
                }
                match chars[i] {
                    '"' => {
                        bump!();
                        break;
                    }
                    '\\' if chars.get(i + 1) == Some(&'"') => {
                        bump!();
                        bump!();
                        s.push('"');
                    }
                    '\\' if chars.get(i + 1) == Some(&'\n') => {
                        bump!();
                        bump!();
                    }
                    ch => {
                        s.push(ch);
                        bump!();
                    }
                }
            }
            tokens.push(Token {
                tok: Tok::Quoted(s),
                line: tl,
                column: tc,
            });
        } else if c == '-' && next == Some('-') {
            bump!();
            bump!();
            tokens.push(Token {
                tok: Tok::Undirected,
                line: tl,
                column: tc,
            });
        } else if c == '-' && next == Some('>') {
            bump!();
            bump!();
            tokens.push(Token {
                tok: Tok::Directed,
                line: tl,
                column: tc,
            });
        } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
            let mut s = String::new();
            s.push(c);
            bump!();
            // numerals may carry an exponent so that any f64 reads back
            let numeric = c.is_ascii_digit() || c == '.' || c == '-';
            while i < chars.len() {
                let ch = chars[i];
                let exp_sign = numeric
                    && (ch == '-' || ch == '+')
                    && matches!(s.chars().last(), Some('e' | 'E'));
                if ch.is_alphanumeric() || ch == '_' || ch == '.' || exp_sign {
                    s.push(ch);
                    bump!();
                } else {
                    break;
                }
            }
            tokens.push(Token {
                tok: Tok::Id(s),
                line: tl,
                column: tc,
            });
        } else {
            let tok = match c {
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '=' => Tok::Equals,
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                other => return Err(syntax(tl, tc, format!("unexpected character `{other}`"))),
            };
            bump!();
            tokens.push(Token {
                tok,
                line: tl,
                column: tc,
            });
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + offset).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, message: impl Into<String>) -> DotError {
        let (line, column) = self.here();
        syntax(line, column, message)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), DotError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Id(s)) if s.eq_ignore_ascii_case(word))
    }

    fn id(&mut self, what: &str) -> Result<String, DotError> {
        match self.peek() {
            Some(Tok::Id(s)) | Some(Tok::Quoted(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn document(mut self) -> Result<DotDocument, DotError> {
        let mut doc = DotDocument {
            graph_name: String::new(),
            ..DotDocument::default()
        };
        if self.keyword("strict") {
            doc.strict = true;
            self.pos += 1;
        }
        if self.keyword("digraph") {
            return Err(self.error("directed graphs are not supported"));
        }
        if !self.keyword("graph") {
            return Err(self.error("expected `graph`"));
        }
        self.pos += 1;
        if matches!(self.peek(), Some(Tok::Id(_) | Tok::Quoted(_))) {
            doc.graph_name = self.id("graph name")?;
        }
        self.expect(Tok::LBrace, "`{`")?;
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Semi) => self.pos += 1,
                None => return Err(self.error("expected `}`")),
                _ => self.statement(&mut doc)?,
            }
        }
        if self.peek().is_some() {
            return Err(self.error("unexpected content after closing `}`"));
        }
        Ok(doc)
    }

    fn statement(&mut self, doc: &mut DotDocument) -> Result<(), DotError> {
        if self.keyword("subgraph") || self.peek() == Some(&Tok::LBrace) {
            return Err(self.error("subgraphs are not supported"));
        }
        for (word, which) in [("graph", 0), ("node", 1), ("edge", 2)] {
            if self.keyword(word) && self.peek_at(1) == Some(&Tok::LBracket) {
                self.pos += 1;
                let attrs = self.attr_lists()?;
                match which {
                    0 => doc.graph_attrs.extend(attrs),
                    1 => doc.node_defaults.extend(attrs),
                    _ => doc.edge_defaults.extend(attrs),
                }
                return Ok(());
            }
        }

        let first = self.id("node id")?;
        match self.peek() {
            Some(Tok::Equals) => {
                self.pos += 1;
                let value = self.id("attribute value")?;
                doc.graph_attrs.push((first, value));
            }
            Some(Tok::Undirected) => {
                let mut chain = vec![first];
                while self.peek() == Some(&Tok::Undirected) {
                    self.pos += 1;
                    chain.push(self.id("node id after `--`")?);
                }
                let attrs = self.attr_lists()?;
                for pair in chain.windows(2) {
                    doc.edge_statements.push(EdgeStatement {
                        a: pair[0].clone(),
                        b: pair[1].clone(),
                        attrs: attrs.clone(),
                    });
                }
            }
            Some(Tok::Directed) => {
                return Err(self.error("`->` is not allowed in an undirected graph"))
            }
            _ => {
                let attrs = self.attr_lists()?;
                doc.node_statements.push(NodeStatement { id: first, attrs });
            }
        }
        Ok(())
    }

    fn attr_lists(&mut self) -> Result<Attrs, DotError> {
        let mut attrs = Attrs::new();
        while self.peek() == Some(&Tok::LBracket) {
            self.pos += 1;
            loop {
                match self.peek() {
                    Some(Tok::RBracket) => {
                        self.pos += 1;
                        break;
                    }
                    Some(Tok::Comma | Tok::Semi) => self.pos += 1,
                    _ => {
                        let key = self.id("attribute name")?;
                        self.expect(Tok::Equals, "`=`")?;
                        let value = self.id("attribute value")?;
                        attrs.push((key, value));
                    }
                }
            }
        }
        Ok(attrs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NodeKind;

    fn sample() -> TransportGraph {
        let mut g = TransportGraph::default();
        g.add_node(NodeKind::Warehouse, 0.0, 0.0, 50, 0);
        g.add_node(NodeKind::Store, 300.5, 400.0, 0, 23);
        g.add_node(NodeKind::Joint, 1000.0, 0.1 + 0.2, 0, 0);
        g.connect(0, 1, 71);
        g.connect(1, 2, 40);
        g
    }

    #[test]
    fn emits_schema() {
        let text = emit_dot(&sample());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "graph G {");
        assert_eq!(
            lines[1],
            "  0 [label=\"{0,warehouse}\", kind=warehouse, x=0.0, y=0.0, supply=50, demand=0];"
        );
        assert_eq!(
            lines[3],
            "  2 [label=\"{2,joint}\", kind=joint, x=1000.0, y=0.30000000000000004, supply=0, demand=0];"
        );
        assert!(lines[4].starts_with("  0 -- 1 [distance=500.3001"));
        assert!(lines[4].ends_with("velocity=71, time=422];"));
        assert_eq!(*lines.last().unwrap(), "}");
    }

    #[test]
    fn round_trip_is_exact() {
        let g = sample();
        let back = parse_dot(&emit_dot(&g)).unwrap();
        assert_eq!(back, g);
        assert_eq!(emit_dot(&back), emit_dot(&g));
    }

    #[test]
    fn empty_graph() {
        let text = emit_dot(&TransportGraph::default());
        assert_eq!(text, "graph G {\n}\n");
        assert_eq!(parse_dot(&text).unwrap(), TransportGraph::default());
    }

    #[test]
    fn map_size_only_when_not_default() {
        let mut g = TransportGraph::new(250.0);
        g.add_node(NodeKind::Joint, 1.0, 2.0, 0, 0);
        let text = emit_dot(&g);
        assert!(text.contains("graph [map_size=250.0];"));
        assert_eq!(parse_dot(&text).unwrap(), g);
    }

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(1.0), "1.0");
        assert_eq!(format_real(0.1), "0.1");
        assert_eq!(format_real(1e-7), "0.0000001");
        assert_eq!(format_real(123456.789), "123456.789");
    }

    #[test]
    fn dangling_edge_is_a_schema_error() {
        let text = "graph G {\n 0 [kind=joint, x=0, y=0, supply=0, demand=0];\n 0 -- 4 [distance=1.0, velocity=60, time=1];\n}\n";
        assert_eq!(
            parse_dot(text),
            Err(DotError::DanglingEndpoint {
                a: 0,
                b: 4,
                endpoint: 4
            })
        );
    }

    #[test]
    fn store_with_supply_is_a_validation_error() {
        let text = "graph G {\n 0 [kind=store, x=0, y=0, supply=3, demand=1];\n}\n";
        assert_eq!(
            parse_dot(text),
            Err(DotError::Invalid(vec![Violation::StoreSupply {
                node: 0,
                supply: 3
            }]))
        );
        assert!(parse_dot_unchecked(text).is_ok());
    }

    #[test]
    fn missing_and_bad_attributes() {
        let text = "graph { 0 [kind=store, x=0, y=0, supply=0]; }";
        assert_eq!(
            parse_dot(text),
            Err(DotError::MissingAttribute {
                statement: "node 0".into(),
                key: "demand".into()
            })
        );
        let text = "graph { 0 [kind=depot, x=0, y=0, supply=0, demand=0]; }";
        assert!(
            matches!(parse_dot(text), Err(DotError::InvalidAttribute { key, .. }) if key == "kind")
        );
        let text = "graph { a [kind=joint, x=0, y=0, supply=0, demand=0]; }";
        assert_eq!(parse_dot(text), Err(DotError::InvalidNodeId("a".into())));
        let text = "graph { 0 [kind=joint, x=0, y=0, supply=0, demand=0]; 0 [kind=joint, x=0, y=0, supply=0, demand=0] }";
        assert_eq!(parse_dot(text), Err(DotError::DuplicateNode(0)));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = DotDocument::parse("graph G {\n  0 -- ;\n}").unwrap_err();
        assert_eq!(
            err,
            DotError::Syntax {
                line: 2,
                column: 8,
                message: "expected node id after `--`".into()
            }
        );
        let err = DotDocument::parse("digraph G { a -> b }").unwrap_err();
        assert!(matches!(
            err,
            DotError::Syntax {
                line: 1,
                column: 1,
                ..
            }
        ));
        let err = DotDocument::parse("graph G {\n a [x=\"open\n").unwrap_err();
        assert!(matches!(
            err,
            DotError::Syntax {
                line: 2,
                column: 7,
                ..
            }
        ));
        let err = DotDocument::parse("graph G { a -- b").unwrap_err();
        assert!(matches!(err, DotError::Syntax { message, .. } if message == "expected `}`"));
    }

    #[test]
    fn tolerates_common_dot_forms() {
        let text = r#"/* header */
strict graph "instance" {
  // defaults
  node [shape=circle]
  rankdir=LR
  0 [kind=warehouse x=1 y=2 supply=5 demand=0 color="light blue"]
  1 [kind="store"; x=1e1, y=.5, supply=0, demand=5]
  # chained edge
  0 -- 1 [distance=9.01387818866, velocity=60] [time=9]
}
"#;
        let doc = DotDocument::parse(text).unwrap();
        assert!(doc.strict);
        assert_eq!(doc.graph_name, "instance");
        assert_eq!(doc.node_defaults, vec![("shape".into(), "circle".into())]);
        assert_eq!(lookup(&doc.graph_attrs, "rankdir"), Some("LR"));
        assert_eq!(
            lookup(&doc.node_statements[0].attrs, "color"),
            Some("light blue")
        );
        let g = graph_from_document(&doc).unwrap();
        assert_eq!(g.node(1).x, 10.0);
        assert_eq!(g.node(1).y, 0.5);
        assert_eq!(g.edge(0).time_min, 9);
        // unknown attributes survive a document round trip
        let again = DotDocument::parse(&doc.render()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn quoting() {
        assert_eq!(quote_id("abc_1"), "abc_1");
        assert_eq!(quote_id("-1.5"), "-1.5");
        assert_eq!(quote_id("{0,store}"), "\"{0,store}\"");
        assert_eq!(quote_id("say \"hi\""), "\"say \\\"hi\\\"\"");
        assert_eq!(quote_id("node"), "\"node\"");
        assert_eq!(quote_id("1e-7"), "\"1e-7\"");
    }
}
