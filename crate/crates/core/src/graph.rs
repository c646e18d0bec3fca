//! Loopless multigraphs, dense symmetric matrices and the two text formats
//! graphs are read from.
//!
//! Vertices are 0-based inside the library. Every textual input and output
//! uses 1-based vertex labels.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A loopless multigraph stored as a dense symmetric multiplicity table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mu: Vec<u32>,
}

impl Multigraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Multigraph { n, mu: vec![0; n * n] }
    }

    /// Builds a graph from 0-based `(i, j, multiplicity)` triples, accumulating
    /// repeated pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for &(i, j, m) in edges {
            g.add_edge(i, j, m)?;
        }
        Ok(g)
    }

    /// Builds a graph from a full multiplicity table. The table must be
    /// symmetric with a zero diagonal.
    pub fn from_table(table: &[Vec<u32>]) -> Result<Self> {
        let n = table.len();
        let mut g = Multigraph::new(n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!("row {} has length {}, expected {n}", i + 1, row.len())));
            }
            if row[i] != 0 {
                return Err(Error::LoopEdge { line: i + 1, vertex: i + 1 });
            }
            for (j, &m) in row.iter().enumerate() {
                if table[j][i] != m {
                    return Err(Error::Invalid(format!("multiplicity table not symmetric at ({}, {})", i + 1, j + 1)));
                }
                g.mu[i * n + j] = m;
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize, m: u32) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::Invalid(format!("edge ({i}, {j}) outside a graph of order {}", self.n)));
        }
        if i == j {
            return Err(Error::LoopEdge { line: 0, vertex: i + 1 });
        }
        let m = self.mu[i * self.n + j].checked_add(m).ok_or(Error::Overflow("edge multiplicity"))?;
        self.mu[i * self.n + j] = m;
        self.mu[j * self.n + i] = m;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mu(&self, i: usize, j: usize) -> u32 {
        self.mu[i * self.n + j]
    }

    /// Row `i` of the multiplicity table.
    pub fn row(&self, i: usize) -> &[u32] {
        &self.mu[i * self.n..(i + 1) * self.n]
    }

    pub fn is_simple(&self) -> bool {
        self.mu.iter().all(|&m| m <= 1)
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.mu.iter().copied().max().unwrap_or(0)
    }

    /// Sum of multiplicities at each vertex.
    pub fn degrees(&self) -> Vec<u64> {
        (0..self.n).map(|i| self.row(i).iter().map(|&m| m as u64).sum()).collect()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().filter(|(_, &m)| m > 0).map(|(j, _)| j)
    }

    /// 0-based edge triples with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let m = self.mu(i, j);
                if m > 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    /// Regularity degree, when every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<u64> {
        let d = self.degrees();
        match d.first() {
            Some(&d0) if d.iter().all(|&x| x == d0) => Some(d0),
            Some(_) => None,
            None => Some(0),
        }
    }

    /// Graph on the vertices of `keep` (in that order).
    pub fn induced(&self, keep: &[usize]) -> Multigraph {
        let k = keep.len();
        let mut g = Multigraph::new(k);
        for (a, &x) in keep.iter().enumerate() {
            for (b, &y) in keep.iter().enumerate() {
                g.mu[a * k + b] = self.mu(x, y);
            }
        }
        g
    }

    /// Image of the graph under a relabelling: vertex `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Multigraph {
        let n = self.n;
        let mut g = Multigraph::new(n);
        for i in 0..n {
            for j in 0..n {
                g.mu[perm[i] * n + perm[j]] = self.mu(i, j);
            }
        }
        g
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (i, j, m) in self.edges() {
            if m == 1 {
                let _ = writeln!(s, "{} {}", i + 1, j + 1);
            } else {
                let _ = writeln!(s, "{} {} {}", i + 1, j + 1, m);
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        let doc = GraphDocument {
            n: self.n,
            edges: self.edges().into_iter().map(|(i, j, m)| vec![i + 1, j + 1, m as usize]).collect(),
        };
        serde_json::to_string(&doc).expect("graph document serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDocument {
    n: usize,
    #[serde(default)]
    edges: Vec<Vec<usize>>,
}

/// Parses either the edge-list format or the JSON format.
///
/// Edge list: the first non-comment line is `n`, each following non-empty line
/// is `i j [m]` with 1-based endpoints; repeated pairs accumulate. Lines whose
/// first non-blank character is `#` are ignored.
///
/// JSON: `{"n": 3, "edges": [[1, 2, 1], [2, 3]]}`, multiplicity optional.
pub fn parse_multigraph(text: &str) -> Result<Multigraph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

/// Largest vertex count the parsers accept (the dense storage is `n²`).
pub const MAX_VERTICES: usize = 4096;

fn checked_new(n: usize) -> Result<Multigraph> {
    if n > MAX_VERTICES {
        return Err(Error::TooLarge { what: "graph", n, max: MAX_VERTICES });
    }
    Ok(Multigraph::new(n))
}

fn parse_json(text: &str) -> Result<Multigraph> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    let mut g = checked_new(doc.n)?;
    for (k, edge) in doc.edges.iter().enumerate() {
        let (i, j, m) = match edge.as_slice() {
            [i, j] => (*i, *j, 1),
            [i, j, m] => (*i, *j, *m),
            _ => return Err(Error::Parse { line: k + 1, msg: format!("edge {} must be [i, j] or [i, j, m]", k + 1) }),
        };
        push_edge(&mut g, k + 1, i, j, m)?;
    }
    Ok(g)
}

fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut g: Option<Multigraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("expected a non-negative integer, found {s:?}"),
            })
        };
        match g.as_mut() {
            None => {
                if fields.len() != 1 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "first line must hold the vertex count only".into(),
                    });
                }
                g = Some(checked_new(num(fields[0])?)?);
            }
            Some(graph) => {
                let (i, j, m) = match fields.as_slice() {
                    [i, j] => (num(i)?, num(j)?, 1),
                    [i, j, m] => (num(i)?, num(j)?, num(m)?),
                    _ => {
                        return Err(Error::Parse { line: line_no, msg: format!("expected `i j [m]`, found {line:?}") })
                    }
                };
                push_edge(graph, line_no, i, j, m)?;
            }
        }
    }
    g.ok_or(Error::Parse { line: 0, msg: "missing vertex count".into() })
}

fn push_edge(g: &mut Multigraph, line: usize, i: usize, j: usize, m: usize) -> Result<()> {
    let n = g.n();
    for v in [i, j] {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { line, vertex: v, n });
        }
    }
    if i == j {
        return Err(Error::LoopEdge { line, vertex: i });
    }
    let m = u32::try_from(m).map_err(|_| Error::Parse { line, msg: "multiplicity too large".into() })?;
    g.add_edge(i - 1, j - 1, m).map_err(|e| match e {
        Error::Overflow(_) => Error::Parse { line, msg: "accumulated multiplicity overflows".into() },
        other => other,
    })
}

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// `J - I`.
    pub fn off_diagonal_ones(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 0.0 } else { 1.0 })
    }

    /// Evaluates `f` on the upper triangle and mirrors it, so the result is
    /// exactly symmetric whatever rounding `f` does.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SymMatrix { n, data }
    }

    /// Rejects ragged or asymmetric input; symmetry is checked exactly.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!("row {} has length {}, expected {n}", i + 1, row.len())));
            }
            if let Some(bad) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Invalid(format!("entry ({}, {}) is not finite", i + 1, bad + 1)));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Invalid(format!("matrix not symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &SymMatrix, b: f64) -> SymMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self::from_fn(self.n, |i, j| a * self.get(i, j) + b * other.get(i, j))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 0.0)
    }
}

pub fn adjacency_matrix(g: &Multigraph) -> SymMatrix {
    SymMatrix::from_fn(g.n(), |i, j| g.mu(i, j) as f64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub degrees: Vec<u64>,
    pub connected: bool,
    /// Shortest-path edge counts; `None` between different components.
    pub dist: Vec<Vec<Option<u32>>>,
}

/// Degrees, connectivity and breadth-first distances. Parallel edges count as
/// a single step.
pub fn graph_metrics(g: &Multigraph) -> GraphMetrics {
    let n = g.n();
    let mut dist = vec![vec![None; n]; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist[s][s] = Some(0);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            let du = dist[s][u].expect("queued vertices have a distance");
            for v in g.neighbors(u) {
                if dist[s][v].is_none() {
                    dist[s][v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    let connected = dist.iter().all(|row| row.iter().all(Option::is_some));
    GraphMetrics { degrees: g.degrees(), connected, dist }
}
