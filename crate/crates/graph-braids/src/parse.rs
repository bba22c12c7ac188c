use crate::error::{Error, Result};
use crate::graph::Graph;

/// Graph text format, one statement per line:
///   root <v>
///   adj <v>: <u1> <u2> ... <uk>
/// '#' starts a comment. Neighbor listing order is the rotation order. Every
/// undirected edge must appear in both endpoint lists; parallel edges repeat;
/// a loop lists its own vertex twice.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut root: Option<(usize, usize)> = None;
    let mut adj_lines: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("root") => {
                let v = parse_number(tokens.next(), line_no, "root vertex")?;
                if tokens.next().is_some() {
                    return Err(err(line_no, "trailing tokens after root statement"));
                }
                if root.is_some() {
                    return Err(err(line_no, "duplicate root statement"));
                }
                root = Some((v, line_no));
            }
            Some("adj") => {
                let head = tokens.next().ok_or_else(|| err(line_no, "missing vertex"))?;
                let head = head
                    .strip_suffix(':')
                    .ok_or_else(|| err(line_no, "expected 'adj <v>:'"))?;
                let v = parse_number(Some(head), line_no, "vertex")?;
                let mut neighbors = Vec::new();
                for tok in tokens {
                    neighbors.push(parse_number(Some(tok), line_no, "neighbor")?);
                }
                adj_lines.push((v, line_no, neighbors));
            }
            Some(other) => {
                return Err(err(line_no, &format!("unknown statement '{other}'")));
            }
            None => unreachable!(),
        }
    }
    if adj_lines.is_empty() {
        return Err(err(0, "no adj statements"));
    }
    let nv = adj_lines.iter().map(|(v, _, _)| v + 1).max().unwrap();
    let mut adj: Vec<Option<(usize, Vec<usize>)>> = vec![None; nv];
    for (v, line_no, neighbors) in adj_lines {
        if adj[v].is_some() {
            return Err(err(line_no, &format!("duplicate adj statement for vertex {v}")));
        }
        adj[v] = Some((line_no, neighbors));
    }
    for (v, slot) in adj.iter().enumerate() {
        if slot.is_none() {
            return Err(err(0, &format!("vertex {v} has no adj statement")));
        }
    }
    let lists: Vec<Vec<usize>> = adj.into_iter().map(|s| s.unwrap().1).collect();
    let root_v = match root {
        Some((v, line_no)) => {
            if v >= nv {
                return Err(err(line_no, &format!("root {v} has no adj statement")));
            }
            Some(v)
        }
        None => None,
    };
    Graph::from_rotation_lists(&lists, root_v)
}

fn parse_number(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| err(line, &format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| err(line, &format!("invalid {what} '{tok}'")))
}

fn err(line: usize, message: &str) -> Error {
    Error::Parse { line, message: message.to_string() }
}

/// Inverse of `parse_graph` up to comments and whitespace.
pub fn graph_to_text(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("root {}\n", g.root()));
    for v in 0..g.n_vertices() {
        let neighbors: Vec<String> = g
            .rotation(v)
            .iter()
            .map(|end| {
                let (a, b) = g.endpoints(end.edge);
                let w = if end.side == 0 { b } else { a };
                w.to_string()
            })
            .collect();
        out.push_str(&format!("adj {}: {}\n", v, neighbors.join(" ")));
    }
    out
}
