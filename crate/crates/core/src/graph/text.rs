//! Plain-text edge lists.
//!
//! ```text
//! c optional comment lines
//! p multigraph <n> <m>
//! e <u> <v>
//! ```

use std::fmt::Write as _;

use super::{GraphError, Multigraph};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num(token: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{token}`")))
}

pub fn parse(input: &str) -> Result<Multigraph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    let mut lines = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('c') {
            continue;
        }
        let mut tokens = text.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                if tokens.next() != Some("multigraph") {
                    return Err(parse_err(line, "expected `p multigraph <n> <m>`"));
                }
                let n = parse_num(tokens.next(), line, "vertex count")?;
                let m = parse_num(tokens.next(), line, "edge count")?;
                if tokens.next().is_some() {
                    return Err(parse_err(line, "trailing tokens after header"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                if header.is_none() {
                    return Err(parse_err(line, "edge before header"));
                }
                let u = parse_num(tokens.next(), line, "endpoint")?;
                let v = parse_num(tokens.next(), line, "endpoint")?;
                if tokens.next().is_some() {
                    return Err(parse_err(line, "trailing tokens after edge"));
                }
                pairs.push((u, v));
                lines.push(line);
            }
            Some(other) => return Err(parse_err(line, format!("unknown line type `{other}`"))),
            None => unreachable!(),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(input.lines().count().max(1), "missing header"))?;
    if pairs.len() != m {
        let line = lines.last().copied().unwrap_or(1);
        return Err(parse_err(
            line,
            format!("header declares {m} edges, found {}", pairs.len()),
        ));
    }
    Multigraph::build(n, &pairs).map_err(|err| match err {
        GraphError::SelfLoop { position, vertex } => {
            parse_err(lines[position], format!("self-loop at vertex {vertex}"))
        }
        GraphError::EndpointOutOfRange { position, vertex, n } => parse_err(
            lines[position],
            format!("endpoint {vertex} outside 0..{n}"),
        ),
        other => other,
    })
}

/// Canonical text; edges appear in id order.
pub fn serialize(g: &Multigraph) -> String {
    let mut out = String::new();
    writeln!(out, "p multigraph {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for e in g.edges() {
        writeln!(out, "e {} {}", e.u, e.v).unwrap();
    }
    out
}
