//! Plain-text file formats.
//!
//! ```text
//! graph <order> <edge_count>        coloring <edge_count>      witness <color> <k> <length>
//! u v                               u v R|B                    x_1
//! ...                               ...                        ...
//! ```
//!
//! Ids are 0-indexed, edges are written with `u < v`, and everything after a
//! `#` on a line is ignored. Classes files hold one class per line. Cover
//! files start with `cover <k>` followed by `path ...` and `class ...` lines;
//! DFS traces hold one `start|extend|dead-end <v>` event per line.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::coloring::{Color, TwoColoring};
use crate::cover::PartitionCover;
use crate::graph::{Graph, GraphError};
use crate::transversal::DfsEvent;
use crate::witness::Witness;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("header declares {declared} entries but {found} were read")]
    CountMismatch { declared: usize, found: usize },
    #[error("line {line}: {{{u}, {v}}} is not an edge of the host graph")]
    NotAnEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: edge {{{u}, {v}}} colored twice")]
    RepeatedEdge { line: usize, u: usize, v: usize },
    #[error("coloring is not total: edge {{{u}, {v}}} has no color")]
    NotTotal { u: usize, v: usize },
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty content lines with 1-based line numbers and comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{token}`")))
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    keyword: &str,
    arity: usize,
) -> Result<(usize, Vec<&'a str>), FormatError> {
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| parse_err(1, format!("missing `{keyword}` header")))?;
    if tokens[0] != keyword || tokens.len() != arity + 1 {
        return Err(parse_err(
            line,
            format!("expected `{keyword}` header with {arity} fields"),
        ));
    }
    Ok((line, tokens[1..].to_vec()))
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = expect_header(&mut lines, "graph", 2)?;
    let order = parse_usize(hline, header[0], "order")?;
    let declared = parse_usize(hline, header[1], "edge count")?;
    let mut edges = Vec::with_capacity(declared);
    let mut last_line = hline;
    for (line, tokens) in lines {
        if tokens.len() != 2 {
            return Err(parse_err(line, "expected `u v`"));
        }
        let u = parse_usize(line, tokens[0], "vertex")?;
        let v = parse_usize(line, tokens[1], "vertex")?;
        if u >= order || v >= order {
            return Err(FormatError::Graph {
                line,
                source: GraphError::UnknownVertex { u, v, order },
            });
        }
        if u == v {
            return Err(FormatError::Graph {
                line,
                source: GraphError::SelfLoop(u),
            });
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != declared {
        return Err(FormatError::CountMismatch {
            declared,
            found: edges.len(),
        });
    }
    Graph::from_edges(order, edges).map_err(|source| FormatError::Graph {
        line: last_line,
        source,
    })
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("graph {} {}\n", g.order(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Colored edge triples `(u, v, color)` in file order, without a host.
pub fn parse_colored_edges(text: &str) -> Result<Vec<(usize, usize, Color, usize)>, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = expect_header(&mut lines, "coloring", 1)?;
    let declared = parse_usize(hline, header[0], "edge count")?;
    let mut out = Vec::with_capacity(declared);
    for (line, tokens) in lines {
        if tokens.len() != 3 {
            return Err(parse_err(line, "expected `u v R|B`"));
        }
        let u = parse_usize(line, tokens[0], "vertex")?;
        let v = parse_usize(line, tokens[1], "vertex")?;
        let color = Color::parse(tokens[2])
            .ok_or_else(|| parse_err(line, format!("invalid color `{}`", tokens[2])))?;
        out.push((u, v, color, line));
    }
    if out.len() != declared {
        return Err(FormatError::CountMismatch {
            declared,
            found: out.len(),
        });
    }
    Ok(out)
}

pub fn parse_coloring<'g>(text: &str, host: &'g Graph) -> Result<TwoColoring<'g>, FormatError> {
    let entries = parse_colored_edges(text)?;
    let mut colors: Vec<Option<Color>> = vec![None; host.edge_count()];
    for (u, v, color, line) in entries {
        let id = host
            .edge_id(u, v)
            .filter(|_| u != v)
            .ok_or(FormatError::NotAnEdge { line, u, v })?;
        if colors[id].replace(color).is_some() {
            return Err(FormatError::RepeatedEdge { line, u, v });
        }
    }
    let colors = colors
        .iter()
        .enumerate()
        .map(|(id, c)| {
            c.ok_or_else(|| {
                let (u, v) = host.edges()[id];
                FormatError::NotTotal { u, v }
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TwoColoring::new(host, colors).expect("one color per host edge"))
}

/// Reads a coloring of a complete graph without a separate host file; the
/// order is recovered from the edge count.
pub fn parse_complete_coloring(text: &str) -> Result<(Graph, Vec<Color>), FormatError> {
    let entries = parse_colored_edges(text)?;
    let e = entries.len();
    let mut m = 0usize;
    while m * m.saturating_sub(1) / 2 < e {
        m += 1;
    }
    if m * m.saturating_sub(1) / 2 != e {
        return Err(parse_err(1, format!("{e} edges is not the size of a complete graph")));
    }
    let host = Graph::complete(m);
    let colors = parse_coloring(text, &host)?.colors().to_vec();
    Ok((host, colors))
}

pub fn format_coloring(c: &TwoColoring<'_>) -> String {
    let mut out = format!("coloring {}\n", c.host().edge_count());
    for (id, &(u, v)) in c.host().edges().iter().enumerate() {
        let _ = writeln!(out, "{u} {v} {}", c.color_of_edge(id).code());
    }
    out
}

pub fn parse_witness(text: &str) -> Result<Witness, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = expect_header(&mut lines, "witness", 3)?;
    let color = Color::parse(header[0])
        .ok_or_else(|| parse_err(hline, format!("invalid color `{}`", header[0])))?;
    let power = parse_usize(hline, header[1], "power")?;
    let declared = parse_usize(hline, header[2], "length")?;
    let mut vertices = Vec::with_capacity(declared);
    for (line, tokens) in lines {
        if tokens.len() != 1 {
            return Err(parse_err(line, "expected one vertex id per line"));
        }
        vertices.push(parse_usize(line, tokens[0], "vertex")?);
    }
    if vertices.len() != declared {
        return Err(FormatError::CountMismatch {
            declared,
            found: vertices.len(),
        });
    }
    Ok(Witness {
        color,
        power,
        vertices,
    })
}

pub fn format_witness(w: &Witness) -> String {
    let mut out = format!("witness {} {} {}\n", w.color.code(), w.power, w.len());
    for v in &w.vertices {
        let _ = writeln!(out, "{v}");
    }
    out
}

pub fn parse_classes(text: &str) -> Result<Vec<Vec<usize>>, FormatError> {
    content_lines(text)
        .map(|(line, tokens)| {
            tokens
                .iter()
                .map(|t| parse_usize(line, t, "vertex"))
                .collect()
        })
        .collect()
}

pub fn format_classes(classes: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for class in classes {
        let ids: Vec<String> = class.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", ids.join(" "));
    }
    out
}

pub fn format_cover(k: usize, cover: &PartitionCover) -> String {
    let mut out = format!("cover {k}\n");
    for (tag, lists) in [("path", &cover.blue_paths), ("class", &cover.classes)] {
        for list in lists {
            out.push_str(tag);
            for v in list {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
    }
    out
}

/// Returns `k` and the cover.
pub fn parse_cover(text: &str) -> Result<(usize, PartitionCover), FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = expect_header(&mut lines, "cover", 1)?;
    let k = parse_usize(hline, header[0], "k")?;
    let mut cover = PartitionCover::default();
    for (line, tokens) in lines {
        let ids = tokens[1..]
            .iter()
            .map(|t| parse_usize(line, t, "vertex"))
            .collect::<Result<Vec<_>, _>>()?;
        match tokens[0] {
            "path" => cover.blue_paths.push(ids),
            "class" => cover.classes.push(ids),
            other => return Err(parse_err(line, format!("unknown cover line `{other}`"))),
        }
    }
    Ok((k, cover))
}

pub fn format_trace(events: &[DfsEvent]) -> String {
    let mut out = String::new();
    for e in events {
        let _ = match e {
            DfsEvent::Start(v) => writeln!(out, "start {v}"),
            DfsEvent::Extend(v) => writeln!(out, "extend {v}"),
            DfsEvent::DeadEnd(v) => writeln!(out, "dead-end {v}"),
        };
    }
    out
}

pub fn parse_trace(text: &str) -> Result<Vec<DfsEvent>, FormatError> {
    content_lines(text)
        .map(|(line, tokens)| {
            if tokens.len() != 2 {
                return Err(parse_err(line, "expected `<event> <vertex>`"));
            }
            let v = parse_usize(line, tokens[1], "vertex")?;
            match tokens[0] {
                "start" => Ok(DfsEvent::Start(v)),
                "extend" => Ok(DfsEvent::Extend(v)),
                "dead-end" => Ok(DfsEvent::DeadEnd(v)),
                other => Err(parse_err(line, format!("unknown event `{other}`"))),
            }
        })
        .collect()
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph, FormatError> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<(), FormatError> {
    Ok(fs::write(path, format_graph(g))?)
}

pub fn read_coloring<'g>(path: impl AsRef<Path>, host: &'g Graph) -> Result<TwoColoring<'g>, FormatError> {
    parse_coloring(&fs::read_to_string(path)?, host)
}

pub fn write_coloring(c: &TwoColoring<'_>, path: impl AsRef<Path>) -> Result<(), FormatError> {
    Ok(fs::write(path, format_coloring(c))?)
}

pub fn read_witness(path: impl AsRef<Path>) -> Result<Witness, FormatError> {
    parse_witness(&fs::read_to_string(path)?)
}

pub fn write_witness(w: &Witness, path: impl AsRef<Path>) -> Result<(), FormatError> {
    Ok(fs::write(path, format_witness(w))?)
}

pub fn read_classes(path: impl AsRef<Path>) -> Result<Vec<Vec<usize>>, FormatError> {
    parse_classes(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cover_and_trace_round_trip() {
        let cover = PartitionCover {
            blue_paths: vec![vec![3, 1, 4]],
            classes: vec![vec![0], vec![], vec![2, 5]],
        };
        let text = format_cover(2, &cover);
        assert_eq!(text, "cover 2\npath 3 1 4\nclass 0\nclass\nclass 2 5\n");
        assert_eq!(parse_cover(&text).unwrap(), (2, cover));
        let events = vec![DfsEvent::Start(0), DfsEvent::Extend(3), DfsEvent::DeadEnd(3)];
        assert_eq!(parse_trace(&format_trace(&events)).unwrap(), events);
        assert!(parse_trace("jump 3").is_err());
    }

    #[test]
    fn graph_with_comments() {
        let text = "# a path\ngraph 3 2\n0 1 # first\n\n1 2\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        match parse_graph("graph 3 1\n0 x\n") {
            Err(FormatError::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph("graph 3 1\n0 5\n") {
            Err(FormatError::Graph { line: 2, source: GraphError::UnknownVertex { .. } }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_graph("graph 3 2\n0 1\n"),
            Err(FormatError::CountMismatch { declared: 2, found: 1 })
        ));
        assert!(matches!(parse_graph("digraph 3 0\n"), Err(FormatError::Parse { line: 1, .. })));
    }

    #[test]
    fn coloring_must_match_host() {
        let g = Graph::path(3);
        let ok = parse_coloring("coloring 2\n0 1 R\n2 1 B\n", &g).unwrap();
        assert_eq!(ok.color(1, 2), Some(Color::Blue));
        assert!(matches!(
            parse_coloring("coloring 2\n0 1 R\n0 2 B\n", &g),
            Err(FormatError::NotAnEdge { line: 3, u: 0, v: 2 })
        ));
        assert!(matches!(
            parse_coloring("coloring 1\n0 1 R\n", &g),
            Err(FormatError::NotTotal { u: 1, v: 2 })
        ));
        assert!(matches!(
            parse_coloring("coloring 2\n0 1 R\n1 0 B\n", &g),
            Err(FormatError::RepeatedEdge { line: 3, .. })
        ));
        assert!(matches!(
            parse_coloring("coloring 2\n0 1 G\n1 2 B\n", &g),
            Err(FormatError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn complete_coloring_infers_order() {
        let (g, colors) = parse_complete_coloring("coloring 3\n0 1 R\n0 2 B\n1 2 B\n").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(colors, vec![Color::Red, Color::Blue, Color::Blue]);
        assert!(parse_complete_coloring("coloring 2\n0 1 R\n0 2 B\n").is_err());
    }

    #[test]
    fn witness_and_classes() {
        let w = Witness {
            color: Color::Red,
            power: 2,
            vertices: vec![4, 0, 3],
        };
        assert_eq!(parse_witness(&format_witness(&w)).unwrap(), w);
        assert_eq!(parse_witness("witness blue 1 1\n7\n").unwrap().color, Color::Blue);
        let classes = vec![vec![0, 2], vec![1, 3, 5]];
        assert_eq!(parse_classes(&format_classes(&classes)).unwrap(), classes);
    }
}
