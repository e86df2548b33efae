//! Canonical text format for instance files.
//!
//! A file is a sequence of `field value...` lines. Blank lines and lines
//! starting with `#` are ignored when parsing. The first field must be
//! `problem` naming the instance kind; the remaining fields may appear in any
//! order, repeated fields other than `edge`, `item` and `value` are rejected.
//!
//! ```text
//! problem mepvcb        problem bkp           problem subset-sum
//! left 2                item 1 -1             value 1
//! right 3               item 2 -2             value 2
//! edge 0 0 5            budget 2              value 3
//! edge 0 1 3            p1 5                  target 5
//! k1 1                  p2 -5                 size 2
//! k2 5                  mode exactly-b
//! k3 5
//! ```
//!
//! Serialization is canonical: fixed field order, single spaces, edges sorted
//! by `(left, right)` (the graph stores them that way), `\n` line endings and
//! no comments, so re-serialized files are byte-stable and diff-friendly.

use crate::graph::BipartiteGraph;
use crate::instance::{
    AnyInstance, BkpInstance, CardinalityMode, InstanceError, MepvcbInstance, SubsetSumInstance,
};
use crate::num::Weight;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

struct Lines<'a> {
    /// (line number, field, arguments)
    items: Vec<(usize, &'a str, Vec<&'a str>)>,
}

fn tokenize(text: &str) -> Result<Lines<'_>, ParseError> {
    let mut items = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let field = tokens.next().expect("non-empty trimmed line");
        items.push((line, field, tokens.collect()));
    }
    if items.is_empty() {
        return Err(ParseError::new(1, "empty instance file"));
    }
    Ok(Lines { items })
}

fn parse_usize(line: usize, field: &str, token: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("field `{field}`: invalid count `{token}`")))
}

fn parse_weight<W: Weight>(line: usize, field: &str, token: &str) -> Result<W, ParseError> {
    W::parse_decimal(token).ok_or_else(|| {
        ParseError::new(line, format!("field `{field}`: invalid integer `{token}`"))
    })
}

fn expect_args(line: usize, field: &str, args: &[&str], count: usize) -> Result<(), ParseError> {
    if args.len() != count {
        return Err(ParseError::new(
            line,
            format!(
                "field `{field}` expects {count} value(s), got {}",
                args.len()
            ),
        ));
    }
    Ok(())
}

/// Scalar fields collected once each; errors on duplicates and unknowns.
struct ScalarFields<'a> {
    seen: BTreeMap<&'a str, (usize, Vec<&'a str>)>,
}

impl<'a> ScalarFields<'a> {
    fn collect(
        lines: &[(usize, &'a str, Vec<&'a str>)],
        repeatable: &str,
        known: &[&str],
    ) -> Result<(Self, Vec<(usize, Vec<&'a str>)>), ParseError> {
        let mut seen: BTreeMap<&str, (usize, Vec<&str>)> = BTreeMap::new();
        let mut repeated = Vec::new();
        for (line, field, args) in lines {
            if *field == repeatable {
                repeated.push((*line, args.clone()));
            } else if known.contains(field) {
                if seen.contains_key(field) {
                    return Err(ParseError::new(*line, format!("duplicate field `{field}`")));
                }
                seen.insert(field, (*line, args.clone()));
            } else {
                return Err(ParseError::new(*line, format!("unknown field `{field}`")));
            }
        }
        Ok((Self { seen }, repeated))
    }

    fn take(&mut self, field: &str, last_line: usize) -> Result<(usize, Vec<&'a str>), ParseError> {
        self.seen
            .remove(field)
            .ok_or_else(|| ParseError::new(last_line, format!("missing field `{field}`")))
    }
}

fn instance_error(line: usize, err: InstanceError) -> ParseError {
    ParseError::new(line, err.to_string())
}

/// Parse any instance kind, dispatching on the `problem` header.
pub fn parse_any<W: Weight>(text: &str) -> Result<AnyInstance<W>, ParseError> {
    let lines = tokenize(text)?;
    let (first_line, field, args) = &lines.items[0];
    if *field != "problem" {
        return Err(ParseError::new(
            *first_line,
            format!("expected `problem` header, found `{field}`"),
        ));
    }
    expect_args(*first_line, "problem", args, 1)?;
    let rest = &lines.items[1..];
    match args[0] {
        "mepvcb" => parse_mepvcb_body(rest).map(AnyInstance::Mepvcb),
        "bkp" => parse_bkp_body(rest).map(AnyInstance::Bkp),
        "subset-sum" => parse_subsetsum_body(rest).map(AnyInstance::SubsetSum),
        other => Err(ParseError::new(
            *first_line,
            format!("unknown problem kind `{other}`"),
        )),
    }
}

/// Parse a decision instance file.
pub fn parse_mepvcb<W: Weight>(text: &str) -> Result<MepvcbInstance<W>, ParseError> {
    match parse_any(text)? {
        AnyInstance::Mepvcb(inst) => Ok(inst),
        other => Err(ParseError::new(
            1,
            format!("expected problem `mepvcb`, found `{}`", other.kind_name()),
        )),
    }
}

pub fn parse_bkp<W: Weight>(text: &str) -> Result<BkpInstance<W>, ParseError> {
    match parse_any(text)? {
        AnyInstance::Bkp(inst) => Ok(inst),
        other => Err(ParseError::new(
            1,
            format!("expected problem `bkp`, found `{}`", other.kind_name()),
        )),
    }
}

pub fn parse_subsetsum<W: Weight>(text: &str) -> Result<SubsetSumInstance<W>, ParseError> {
    match parse_any(text)? {
        AnyInstance::SubsetSum(inst) => Ok(inst),
        other => Err(ParseError::new(
            1,
            format!(
                "expected problem `subset-sum`, found `{}`",
                other.kind_name()
            ),
        )),
    }
}

fn parse_mepvcb_body<W: Weight>(
    lines: &[(usize, &str, Vec<&str>)],
) -> Result<MepvcbInstance<W>, ParseError> {
    let last_line = lines.last().map_or(1, |(l, _, _)| *l);
    let (mut fields, edge_lines) =
        ScalarFields::collect(lines, "edge", &["left", "right", "k1", "k2", "k3"])?;
    let (line, args) = fields.take("left", last_line)?;
    expect_args(line, "left", &args, 1)?;
    let left = parse_usize(line, "left", args[0])?;
    let (line, args) = fields.take("right", last_line)?;
    expect_args(line, "right", &args, 1)?;
    let right = parse_usize(line, "right", args[0])?;

    let mut edges = Vec::new();
    for (line, args) in &edge_lines {
        expect_args(*line, "edge", args, 3)?;
        let u = parse_usize(*line, "edge", args[0])?;
        let v = parse_usize(*line, "edge", args[1])?;
        let w = parse_weight::<W>(*line, "edge", args[2])?;
        edges.push((u, v, w, *line));
    }
    let graph = BipartiteGraph::new(left, right, edges.iter().map(|&(u, v, w, _)| (u, v, w)))
        .map_err(|err| {
            // Attribute graph-level failures to the offending edge line.
            use crate::graph::GraphError;
            let line = match &err {
                GraphError::DuplicateEdge { left, right } => edges
                    .iter()
                    .filter(|e| e.0 == *left && e.1 == *right)
                    .nth(1)
                    .map(|e| e.3),
                GraphError::LeftOutOfRange { left, .. } => {
                    edges.iter().find(|e| e.0 == *left).map(|e| e.3)
                }
                GraphError::RightOutOfRange { right, .. } => {
                    edges.iter().find(|e| e.1 == *right).map(|e| e.3)
                }
                GraphError::NegativeWeight { left, right, .. } => edges
                    .iter()
                    .find(|e| e.0 == *left && e.1 == *right)
                    .map(|e| e.3),
                _ => None,
            };
            let line =
                line.unwrap_or_else(|| edge_lines.last().map_or(last_line, |(l, _)| *l));
            ParseError::new(line, err.to_string())
        })?;

    let (line, args) = fields.take("k1", last_line)?;
    expect_args(line, "k1", &args, 1)?;
    let k1 = parse_usize(line, "k1", args[0])?;
    let k1_line = line;
    let (line, args) = fields.take("k2", last_line)?;
    expect_args(line, "k2", &args, 1)?;
    let k2 = parse_weight::<W>(line, "k2", args[0])?;
    let k2_line = line;
    let (line, args) = fields.take("k3", last_line)?;
    expect_args(line, "k3", &args, 1)?;
    let k3 = parse_weight::<W>(line, "k3", args[0])?;
    let k3_line = line;

    MepvcbInstance::new(graph, k1, k2, k3).map_err(|err| {
        let line = match &err {
            InstanceError::NonPositiveThreshold { name: "k1" } => k1_line,
            InstanceError::NonPositiveThreshold { name: "k2" } => k2_line,
            InstanceError::NonPositiveThreshold { name: "k3" } => k3_line,
            InstanceError::BudgetExceedsVertices { .. } => k1_line,
            _ => last_line,
        };
        instance_error(line, err)
    })
}

fn parse_bkp_body<W: Weight>(
    lines: &[(usize, &str, Vec<&str>)],
) -> Result<BkpInstance<W>, ParseError> {
    let last_line = lines.last().map_or(1, |(l, _, _)| *l);
    let (mut fields, item_lines) =
        ScalarFields::collect(lines, "item", &["budget", "p1", "p2", "mode"])?;
    let mut profits1 = Vec::new();
    let mut profits2 = Vec::new();
    for (line, args) in &item_lines {
        expect_args(*line, "item", args, 2)?;
        profits1.push(parse_weight::<W>(*line, "item", args[0])?);
        profits2.push(parse_weight::<W>(*line, "item", args[1])?);
    }
    let (line, args) = fields.take("budget", last_line)?;
    expect_args(line, "budget", &args, 1)?;
    let budget = parse_usize(line, "budget", args[0])?;
    let budget_line = line;
    let (line, args) = fields.take("p1", last_line)?;
    expect_args(line, "p1", &args, 1)?;
    let threshold1 = parse_weight::<W>(line, "p1", args[0])?;
    let (line, args) = fields.take("p2", last_line)?;
    expect_args(line, "p2", &args, 1)?;
    let threshold2 = parse_weight::<W>(line, "p2", args[0])?;
    let (line, args) = fields.take("mode", last_line)?;
    expect_args(line, "mode", &args, 1)?;
    let mode = match args[0] {
        "exactly-b" => CardinalityMode::ExactlyBudget,
        "at-most-b" => CardinalityMode::AtMostBudget,
        other => {
            return Err(ParseError::new(
                line,
                format!("field `mode`: expected `exactly-b` or `at-most-b`, got `{other}`"),
            ))
        }
    };
    BkpInstance::new(profits1, profits2, budget, threshold1, threshold2, mode).map_err(|err| {
        let line = match &err {
            InstanceError::BudgetOutOfRange { .. } => budget_line,
            _ => last_line,
        };
        instance_error(line, err)
    })
}

fn parse_subsetsum_body<W: Weight>(
    lines: &[(usize, &str, Vec<&str>)],
) -> Result<SubsetSumInstance<W>, ParseError> {
    let last_line = lines.last().map_or(1, |(l, _, _)| *l);
    let (mut fields, value_lines) = ScalarFields::collect(lines, "value", &["target", "size"])?;
    let mut values = Vec::new();
    for (line, args) in &value_lines {
        expect_args(*line, "value", args, 1)?;
        values.push(parse_weight::<W>(*line, "value", args[0])?);
    }
    let (line, args) = fields.take("target", last_line)?;
    expect_args(line, "target", &args, 1)?;
    let target = parse_weight::<W>(line, "target", args[0])?;
    let (line, args) = fields.take("size", last_line)?;
    expect_args(line, "size", &args, 1)?;
    let size = parse_usize(line, "size", args[0])?;
    let size_line = line;
    SubsetSumInstance::new(values, target, size).map_err(|err| {
        let line = match &err {
            InstanceError::SizeOutOfRange { .. } => size_line,
            _ => last_line,
        };
        instance_error(line, err)
    })
}

/// Canonical serialization of a decision instance.
pub fn serialize_mepvcb<W: Weight>(inst: &MepvcbInstance<W>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "problem mepvcb");
    let _ = writeln!(out, "left {}", inst.graph.left_count());
    let _ = writeln!(out, "right {}", inst.graph.right_count());
    for e in inst.graph.edges() {
        let _ = writeln!(out, "edge {} {} {}", e.left, e.right, e.weight);
    }
    let _ = writeln!(out, "k1 {}", inst.k1);
    let _ = writeln!(out, "k2 {}", inst.k2);
    let _ = writeln!(out, "k3 {}", inst.k3);
    out
}

pub fn serialize_bkp<W: Weight>(inst: &BkpInstance<W>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "problem bkp");
    for (p1, p2) in inst.profits1.iter().zip(&inst.profits2) {
        let _ = writeln!(out, "item {p1} {p2}");
    }
    let _ = writeln!(out, "budget {}", inst.budget);
    let _ = writeln!(out, "p1 {}", inst.threshold1);
    let _ = writeln!(out, "p2 {}", inst.threshold2);
    let mode = match inst.mode {
        CardinalityMode::ExactlyBudget => "exactly-b",
        CardinalityMode::AtMostBudget => "at-most-b",
    };
    let _ = writeln!(out, "mode {mode}");
    out
}

pub fn serialize_subsetsum<W: Weight>(inst: &SubsetSumInstance<W>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "problem subset-sum");
    for v in &inst.values {
        let _ = writeln!(out, "value {v}");
    }
    let _ = writeln!(out, "target {}", inst.target);
    let _ = writeln!(out, "size {}", inst.size);
    out
}

pub fn serialize_any<W: Weight>(inst: &AnyInstance<W>) -> String {
    match inst {
        AnyInstance::Mepvcb(i) => serialize_mepvcb(i),
        AnyInstance::Bkp(i) => serialize_bkp(i),
        AnyInstance::SubsetSum(i) => serialize_subsetsum(i),
    }
}

/// SHA-256 digest of the canonical serialization, as lowercase hex.
pub fn digest_any<W: Weight>(inst: &AnyInstance<W>) -> String {
    use sha2::{Digest, Sha256};
    let bytes = Sha256::digest(serialize_any(inst).as_bytes());
    let mut hex = String::with_capacity(64);
    for b in bytes {
        let _ = write!(hex, "{b:02x}");
    }
    hex
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    #[test]
    fn parses_minimal_instance() {
        let text = "problem mepvcb\nleft 1\nright 1\nedge 0 0 5\nk1 1\nk2 5\nk3 5\n";
        let inst: MepvcbInstance<i64> = parse_mepvcb(text).unwrap();
        assert_eq!(inst.graph.edge_count(), 1);
        assert_eq!(inst.graph.weight(crate::graph::EdgeId(0)), 5);
        assert_eq!((inst.k1, inst.k2, inst.k3), (1, 5, 5));
        assert!(inst.graph.contains_vertex(Vertex::Right(0)));
    }

    #[test]
    fn rejects_duplicate_edge_with_context() {
        let text = "problem mepvcb\nleft 1\nright 1\nedge 0 0 5\nedge 0 0 7\nk1 1\nk2 5\nk3 5\n";
        let err = parse_mepvcb::<i64>(text).unwrap_err();
        assert!(err.to_string().contains("duplicate edge"), "{err}");
        // Blamed on the second occurrence.
        assert_eq!(err.line, 5);
    }

    #[test]
    fn rejects_out_of_range_vertex_with_context() {
        let text = "problem mepvcb\nleft 1\nright 2\nedge 0 0 5\nedge 3 1 2\nk1 1\nk2 5\nk3 5\n";
        let err = parse_mepvcb::<i64>(text).unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.to_string().contains("out of range"), "{err}");
    }

    #[test]
    fn rejects_negative_weight_with_context() {
        let text = "problem mepvcb\nleft 1\nright 2\nedge 0 0 -5\nedge 0 1 2\nk1 1\nk2 5\nk3 5\n";
        let err = parse_mepvcb::<i64>(text).unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.to_string().contains("negative weight"), "{err}");
    }

    #[test]
    fn rejects_zero_k1_with_field_line() {
        let text = "problem mepvcb\nleft 1\nright 1\nedge 0 0 5\nk1 0\nk2 5\nk3 5\n";
        let err = parse_mepvcb::<i64>(text).unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.to_string().contains("k1"), "{err}");
    }

    #[test]
    fn rejects_unknown_and_duplicate_fields() {
        let text = "problem mepvcb\nleft 1\nleft 2\nright 1\nk1 1\nk2 1\nk3 1\n";
        let err = parse_mepvcb::<i64>(text).unwrap_err();
        assert!(err.to_string().contains("duplicate field `left`"));
        let text = "problem mepvcb\nleft 1\nright 1\nwidth 3\nk1 1\nk2 1\nk3 1\n";
        let err = parse_mepvcb::<i64>(text).unwrap_err();
        assert!(err.to_string().contains("unknown field `width`"));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a comment\n\nproblem mepvcb\nleft 1\nright 2\n# another\nedge 0 0 3\nedge 0 1 4\nk1 1\nk2 7\nk3 4\n";
        let inst: MepvcbInstance<i64> = parse_mepvcb(text).unwrap();
        assert_eq!(inst.graph.edge_count(), 2);
    }

    #[test]
    fn serialization_is_canonical_and_roundtrips() {
        let text = "problem mepvcb\nleft 2\nright 2\nedge 1 1 4\nedge 0 0 1\nedge 0 1 2\nk1 2\nk2 3\nk3 2\n";
        let inst: MepvcbInstance<i64> = parse_mepvcb(text).unwrap();
        let canonical = serialize_mepvcb(&inst);
        // Edges come out sorted regardless of input order.
        assert!(canonical.contains("edge 0 0 1\nedge 0 1 2\nedge 1 1 4\n"));
        let reparsed: MepvcbInstance<i64> = parse_mepvcb(&canonical).unwrap();
        assert_eq!(inst, reparsed);
        assert_eq!(serialize_mepvcb(&reparsed), canonical);
    }

    #[test]
    fn bkp_roundtrip() {
        let text = "problem bkp\nitem 1 -1\nitem 2 -2\nitem 3 -3\nbudget 2\np1 5\np2 -5\nmode exactly-b\n";
        let inst: BkpInstance<i64> = parse_bkp(text).unwrap();
        assert_eq!(inst.profits2, vec![-1, -2, -3]);
        let reparsed: BkpInstance<i64> = parse_bkp(&serialize_bkp(&inst)).unwrap();
        assert_eq!(inst, reparsed);
    }

    #[test]
    fn subsetsum_roundtrip() {
        let text = "problem subset-sum\nvalue 1\nvalue 2\nvalue 3\ntarget 5\nsize 2\n";
        let inst: SubsetSumInstance<i64> = parse_subsetsum(text).unwrap();
        let reparsed: SubsetSumInstance<i64> =
            parse_subsetsum(&serialize_subsetsum(&inst)).unwrap();
        assert_eq!(inst, reparsed);
    }

    #[test]
    fn digest_is_stable_and_content_sensitive() {
        let a: AnyInstance<i64> =
            parse_any("problem subset-sum\nvalue 1\ntarget 1\nsize 1\n").unwrap();
        let b: AnyInstance<i64> =
            parse_any("problem subset-sum\nvalue 2\ntarget 1\nsize 1\n").unwrap();
        assert_eq!(digest_any(&a), digest_any(&a));
        assert_ne!(digest_any(&a), digest_any(&b));
    }
}
