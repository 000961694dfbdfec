//! Plain-text graph format and dot export.
//!
//! ```text
//! 4 4            # rank, number of boundary vertices
//! 0 black boundary
//! 4 white
//! 0 4 1          # edge u v m; edges are numbered in file order
//! 4: 0 1 2 3     # clockwise rotation as edge ids, hourglasses listed twice
//! b: 0 1 2 3     # boundary vertices clockwise from b_1
//! ```

use std::fmt;
use std::str::FromStr;

use super::{Color, HourglassGraph};
use crate::error::{Error, Result};
use crate::words::Rank;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| perr(line, format!("expected a number, got {tok:?}")))
}

impl FromStr for HourglassGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<HourglassGraph> {
        let mut header: Option<(Rank, usize)> = None;
        let mut colors: Vec<Option<(Color, bool)>> = Vec::new();
        let mut edges = Vec::new();
        let mut rots: Vec<Option<Vec<usize>>> = Vec::new();
        let mut boundary: Option<Vec<usize>> = None;
        for (ix, raw) in s.lines().enumerate() {
            let line = ix + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            if header.is_none() {
                let t: Vec<&str> = text.split_whitespace().collect();
                if t.len() != 2 {
                    return Err(perr(line, "header must be `r n`"));
                }
                let r = Rank::new(num(t[0], line)?).map_err(|e| perr(line, e.to_string()))?;
                header = Some((r, num(t[1], line)?));
                continue;
            }
            if let Some((head, rest)) = text.split_once(':') {
                let list = rest.split_whitespace().map(|t| num(t, line)).collect::<Result<Vec<usize>>>()?;
                if head.trim() == "b" {
                    boundary = Some(list);
                } else {
                    let v: usize = num(head.trim(), line)?;
                    if rots.len() <= v {
                        rots.resize(v + 1, None);
                    }
                    if rots[v].replace(list).is_some() {
                        return Err(perr(line, format!("second rotation for vertex {v}")));
                    }
                }
                continue;
            }
            let t: Vec<&str> = text.split_whitespace().collect();
            match t.as_slice() {
                [id, color, flag @ ..] if *color == "black" || *color == "white" => {
                    let v: usize = num(id, line)?;
                    let bd = match flag {
                        [] => false,
                        ["boundary"] => true,
                        _ => return Err(perr(line, "vertex flag must be `boundary`")),
                    };
                    let c = if *color == "black" { Color::Black } else { Color::White };
                    if colors.len() <= v {
                        colors.resize(v + 1, None);
                    }
                    colors[v] = Some((c, bd));
                }
                [u, v, m] => edges.push((num(u, line)?, num(v, line)?, num(m, line)?)),
                _ => return Err(perr(line, format!("unrecognised line {text:?}"))),
            }
        }
        let (r, n) = header.ok_or_else(|| perr(0, "missing header"))?;
        let colors: Vec<(Color, bool)> = colors
            .into_iter()
            .enumerate()
            .map(|(v, c)| c.ok_or_else(|| perr(0, format!("vertex {v} not declared"))))
            .collect::<Result<_>>()?;
        rots.resize(colors.len(), None);
        let rots: Vec<Vec<usize>> = rots
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.ok_or_else(|| perr(0, format!("vertex {v} has no rotation"))))
            .collect::<Result<_>>()?;
        let boundary = boundary.ok_or_else(|| perr(0, "missing boundary line"))?;
        if boundary.len() != n {
            return Err(perr(0, format!("header promises {n} boundary vertices, found {}", boundary.len())));
        }
        HourglassGraph::from_rotations(r, &colors, &edges, &rots, &boundary)
    }
}

impl fmt::Display for HourglassGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.r, self.n())?;
        for (v, vert) in self.vertices.iter().enumerate() {
            let flag = if vert.boundary { " boundary" } else { "" };
            writeln!(f, "{v} {}{flag}", vert.color)?;
        }
        for e in &self.edges {
            writeln!(f, "{} {} {}", e.black, e.white, e.m)?;
        }
        for (v, list) in self.rot.iter().enumerate() {
            let ids: Vec<String> = list.iter().map(|s| s.edge.to_string()).collect();
            writeln!(f, "{v}: {}", ids.join(" "))?;
        }
        let b: Vec<String> = self.boundary.iter().map(|v| v.to_string()).collect();
        writeln!(f, "b: {}", b.join(" "))
    }
}

impl HourglassGraph {
    /// Graphviz rendering; hourglass edges drawn doubled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph web {\n");
        for (v, vert) in self.vertices.iter().enumerate() {
            let fill = if vert.color == Color::Black { "black" } else { "white" };
            let shape = if vert.boundary { "box" } else { "circle" };
            let label = match self.boundary_index(v) {
                Some(i) => format!("b{}", i + 1),
                None => String::new(),
            };
            out.push_str(&format!(
                "  v{v} [shape={shape}, style=filled, fillcolor={fill}, fontcolor=red, label=\"{label}\"];\n"
            ));
        }
        for e in &self.edges {
            let style = if e.m == 2 { " [color=\"black:black\"]" } else { "" };
            out.push_str(&format!("  v{} -- v{}{style};\n", e.black, e.white));
        }
        out.push_str("}\n");
        out
    }
}
