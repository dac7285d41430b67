//! Plain-text graph format: a header line `n m` followed by `m` lines `u v`
//! with 0-based endpoints. Lines starting with `#` are comments.

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let pair = |line: usize, l: &str| -> Result<(usize, usize)> {
        let mut it = l.split_whitespace();
        let err = |m: &str| Error::Parse { line, message: m.to_string() };
        let a = it.next().ok_or_else(|| err("expected two integers"))?;
        let b = it.next().ok_or_else(|| err("expected two integers"))?;
        if it.next().is_some() {
            return Err(err("trailing tokens"));
        }
        let a = a.parse().map_err(|_| err("not a non-negative integer"))?;
        let b = b.parse().map_err(|_| err("not a non-negative integer"))?;
        Ok((a, b))
    };

    let (line, header) = lines.next().ok_or(Error::Parse { line: 0, message: "empty input".into() })?;
    let (n, m) = pair(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, l) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: format!("expected {m} edges, found {}", edges.len()),
        })?;
        let (u, v) = pair(line, l)?;
        if u >= n || v >= n {
            return Err(Error::Parse { line, message: format!("endpoint out of range 0..{n}") });
        }
        if u == v {
            return Err(Error::Parse { line, message: "loop".into() });
        }
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse { line, message: "more edges than declared".into() });
    }
    Graph::new(n, edges).map_err(|e| Error::Parse { line: 0, message: e.to_string() })
}

/// Writes the header and the edges in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.m() + 1));
    if let Some(f) = g.family() {
        out.push_str(&format!("# {f}\n"));
    }
    out.push_str(&format!("{} {}\n", g.n(), g.m()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn round_trip() {
        let g = generate(Family::Petersen).unwrap();
        let text = write_graph(&g);
        assert!(text.starts_with("# petersen\n10 15\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# triangle\n\n3 3\n0 1\n# mid\n1 2\n2 0\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_graph("3 1\n0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("3 1\n0 1\n1 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("x y"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n1 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn edgeless_parses() {
        assert!(parse_graph("4 0\n").unwrap().is_edgeless());
    }
}
