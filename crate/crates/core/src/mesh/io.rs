use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Element, ElementKind, NodalMesh, Node};
use crate::error::{Error, Result};

const HEADER: &str = "mesh2d v1";

/// Non-empty, comment-stripped lines with their 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            self.last = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let tokens: Vec<_> = body.split_whitespace().collect();
            if !tokens.is_empty() {
                return Some((i + 1, tokens));
            }
        }
        None
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next_line().ok_or_else(|| Error::Syntax {
            line: self.last + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_count(line: usize, tokens: &[&str], keyword: &str) -> Result<usize> {
    match tokens {
        [k, n] if *k == keyword => n
            .parse()
            .map_err(|_| syntax(line, format!("invalid {keyword} count `{n}`"))),
        _ => Err(syntax(line, format!("expected `{keyword} <count>`"))),
    }
}

fn parse_id(line: usize, tok: &str, what: &str) -> Result<u64> {
    match tok.parse::<u64>() {
        Ok(id) if id > 0 => Ok(id),
        _ => Err(syntax(line, format!("invalid {what} id `{tok}`"))),
    }
}

fn parse_coord(line: usize, tok: &str) -> Result<f64> {
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(syntax(line, format!("invalid coordinate `{tok}`"))),
    }
}

/// Parses the `mesh2d v1` interchange format.
pub fn parse_mesh(text: &str) -> Result<NodalMesh> {
    let mut lines = Lines::new(text);

    let (line, header) = lines.expect_line("header")?;
    if header.join(" ") != HEADER {
        return Err(syntax(line, format!("expected header `{HEADER}`")));
    }

    let (line, tokens) = lines.expect_line("`nodes <count>`")?;
    let n_nodes = parse_count(line, &tokens, "nodes")?;
    let mut nodes = Vec::with_capacity(n_nodes);
    let mut index_of = HashMap::with_capacity(n_nodes);
    for _ in 0..n_nodes {
        let (line, tokens) = lines.expect_line("node record")?;
        let [id, x, y] = tokens[..] else {
            return Err(syntax(line, "node record must be `<id> <x> <y>`"));
        };
        let label = parse_id(line, id, "node")?;
        if index_of.insert(label, nodes.len()).is_some() {
            return Err(Error::DuplicateId { what: "node", id: label });
        }
        nodes.push(Node {
            label,
            x: parse_coord(line, x)?,
            y: parse_coord(line, y)?,
        });
    }

    let (line, tokens) = lines.expect_line("`elements <count>`")?;
    let n_elements = parse_count(line, &tokens, "elements")?;
    let mut elements = Vec::with_capacity(n_elements);
    for expected in 1..=n_elements as u64 {
        let (line, tokens) = lines.expect_line("element record")?;
        if tokens.len() < 2 {
            return Err(syntax(line, "element record must be `<id> <kind> <nodes...>`"));
        }
        let id = parse_id(line, tokens[0], "element")?;
        if id < expected {
            return Err(Error::DuplicateId { what: "element", id });
        }
        if id != expected {
            return Err(syntax(
                line,
                format!("element ids must be contiguous from 1; expected {expected}, found {id}"),
            ));
        }
        let kind = ElementKind::from_tag(tokens[1])
            .ok_or_else(|| Error::UnsupportedKind(tokens[1].to_string()))?;
        let refs = &tokens[2..];
        if refs.len() != kind.nodes_per_element() {
            return Err(syntax(
                line,
                format!(
                    "{kind} element needs {} nodes, found {}",
                    kind.nodes_per_element(),
                    refs.len()
                ),
            ));
        }
        let mut conn = Vec::with_capacity(refs.len());
        for tok in refs {
            let label = parse_id(line, tok, "node")?;
            let &idx = index_of.get(&label).ok_or(Error::DanglingNodeRef {
                element: id,
                node: label,
            })?;
            conn.push(idx);
        }
        elements.push(Element::new(kind, conn));
    }

    let (line, tokens) = lines.expect_line("`end`")?;
    if tokens != ["end"] {
        return Err(syntax(line, "expected `end`"));
    }
    if let Some((line, _)) = lines.next_line() {
        return Err(syntax(line, "content after `end`"));
    }
    NodalMesh::new(nodes, elements)
}

/// Serializes a mesh. Coordinates use the shortest decimal form that parses
/// back to the identical double, so `parse_mesh(&write_mesh(m)) == m`.
pub fn write_mesh(mesh: &NodalMesh) -> String {
    let mut out = String::with_capacity(32 * (mesh.num_nodes() + mesh.num_elements()) + 64);
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "nodes {}", mesh.num_nodes());
    for n in mesh.nodes() {
        let _ = writeln!(out, "{} {:?} {:?}", n.label, n.x, n.y);
    }
    let _ = writeln!(out, "elements {}", mesh.num_elements());
    for (e, el) in mesh.elements().iter().enumerate() {
        let _ = write!(out, "{} {}", e + 1, el.kind);
        for &v in &el.nodes {
            let _ = write!(out, " {}", mesh.nodes()[v].label);
        }
        out.push('\n');
    }
    out.push_str("end\n");
    out
}
