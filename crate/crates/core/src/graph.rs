//! Simple undirected graphs stored as per-vertex adjacency bitsets.

use std::fmt;

use thiserror::Error;

/// Largest vertex count a [`Graph`] may hold.
pub const MAX_VERTICES: usize = 4096;

const WORD_BITS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {vertex} out of range for graph on {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("{what} needs {requested} vertices, limit is {MAX_VERTICES}")]
    Capacity { what: &'static str, requested: usize },
    #[error("graph6 format error at byte {position}: {message}")]
    Format { position: usize, message: String },
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Word-level helpers over `&[u64]` bitsets.
pub mod bits {
    #[inline]
    pub fn test(set: &[u64], i: usize) -> bool {
        set[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(set: &mut [u64], i: usize) {
        set[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn clear(set: &mut [u64], i: usize) {
        set[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn count(set: &[u64]) -> usize {
        set.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(set: &[u64]) -> bool {
        set.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersects(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).any(|(x, y)| x & y != 0)
    }

    #[inline]
    pub fn first(set: &[u64]) -> Option<usize> {
        set.iter()
            .position(|&w| w != 0)
            .map(|wi| wi * 64 + set[wi].trailing_zeros() as usize)
    }

    /// Iterates set bit positions in increasing order.
    pub fn iter(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
        set.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Rows are stored contiguously; row `u` has bit `v` set iff `{u, v}` is an
/// edge. The matrix is kept symmetric with an empty diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("graph6", &write_graph6(self))
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity {
                what: "graph",
                requested: n,
            });
        }
        let words = words_for(n);
        Ok(Graph {
            n,
            words,
            adj: vec![0; n * words],
            m: 0,
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EndpointOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    /// Inserts `{u, v}`; caller guarantees `u != v` and both are in range.
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if !self.has_edge(u, v) {
            let w = self.words;
            bits::set(&mut self.adj[u * w..(u + 1) * w], v);
            bits::set(&mut self.adj[v * w..(v + 1) * w], u);
            self.m += 1;
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of `u64` words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::test(self.row(u), v)
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        bits::count(self.row(u))
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits::iter(self.row(u))
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// True iff every pair of distinct vertices in `vertices` is adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            u < self.n && vertices[i + 1..].iter().all(|&v| v < self.n && u != v && self.has_edge(u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let mut out = Graph::empty(self.n).expect("same size as an existing graph");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.add_edge_unchecked(u, v);
                }
            }
        }
        out
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees = (0..self.n).map(|u| self.degree(u));
        let min = degrees.clone().min().unwrap_or(0);
        let max = degrees.max().unwrap_or(0);
        DegreeStats {
            min,
            max,
            regular_degree: (self.n > 0 && min == max).then_some(min),
        }
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| !bits::intersects(self.row(u), self.row(v)))
    }

    /// Dense row-major 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for (u, v) in self.edges() {
            a[u * n + v] = 1.0;
            a[v * n + u] = 1.0;
        }
        a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    /// `Some(d)` when every vertex has degree `d`.
    pub regular_degree: Option<usize>,
}

impl DegreeStats {
    pub fn is_regular(&self) -> bool {
        self.regular_degree.is_some()
    }
}

const GRAPH6_HEADER: &str = ">>graph6<<";
const GRAPH6_LONG_MAX: usize = 258_047;

fn format_err(position: usize, message: impl Into<String>) -> GraphError {
    GraphError::Format {
        position,
        message: message.into(),
    }
}

/// Decodes one graph6 line. Surrounding whitespace and a leading
/// `>>graph6<<` marker are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(format_err(pos, format!("byte {} outside [63, 126]", bytes[pos])));
    }
    let six = |i: usize| -> Result<usize, GraphError> {
        bytes
            .get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| format_err(i, "truncated size header"))
    };

    let (n, mut pos) = match bytes.first() {
        None => return Err(format_err(0, "empty input")),
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                // 36-bit form; every such n exceeds the capacity.
                let mut n = 0usize;
                for i in 2..8 {
                    n = (n << 6) | six(i)?;
                }
                return Err(GraphError::Capacity {
                    what: "graph6 input",
                    requested: n,
                });
            }
            let n = (six(1)? << 12) | (six(2)? << 6) | six(3)?;
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::Capacity {
            what: "graph6 input",
            requested: n,
        });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() < pos + nbytes {
        return Err(format_err(
            bytes.len(),
            format!("truncated bit stream: expected {nbytes} data bytes, found {}", bytes.len() - pos),
        ));
    }
    if bytes.len() > pos + nbytes {
        return Err(format_err(pos + nbytes, "trailing bytes after bit stream"));
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = (bytes[pos + k / 6] - 63) as usize;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge_unchecked(i, j);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        pos += nbytes - 1;
        let pad_mask = (1usize << (6 - nbits % 6)) - 1;
        if (bytes[pos] - 63) as usize & pad_mask != 0 {
            return Err(format_err(pos, "non-zero padding bits"));
        }
    }
    Ok(g)
}

/// Encodes `g` as a graph6 line (no newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    debug_assert!(n <= GRAPH6_LONG_MAX);
    let mut out: Vec<u8> = Vec::with_capacity(4 + n * n / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Reads a graph6 file: one graph per line, blank lines and a `>>graph6<<`
/// header skipped. Yields `(line_number, graph)` with 1-based line numbers.
pub fn read_graph6<R: std::io::BufRead>(
    reader: R,
) -> impl Iterator<Item = Result<(usize, Graph), Graph6ReadError>> {
    reader.lines().enumerate().filter_map(|(idx, line)| {
        let line_no = idx + 1;
        let line = match line {
            Ok(l) => l,
            Err(e) => return Some(Err(Graph6ReadError::Io(e))),
        };
        let body = line.trim();
        let body = body.strip_prefix(GRAPH6_HEADER).unwrap_or(body);
        if body.is_empty() {
            return None;
        }
        Some(
            parse_graph6(body)
                .map(|g| (line_no, g))
                .map_err(|source| Graph6ReadError::Line { line: line_no, source }),
        )
    })
}

#[derive(Debug, Error)]
pub enum Graph6ReadError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Line { line: usize, source: GraphError },
}
