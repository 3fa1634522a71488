//! Graph families and graph operators.
//!
//! Vertex numbering is fixed so that witnesses and graph6 output are
//! reproducible: line-graph vertex `i` is the `i`-th edge of the source in
//! lexicographic order, and product vertex `(u, v)` is `u * h.n() + v`.

mod srg;

pub use srg::{srg_parameters_of, srg_spectrum, SrgError, SrgParams, SrgSpectrum};

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

/// Name of the generator behind [`random_gnp`] and the seeded heuristics,
/// recorded in report metadata.
pub const PRNG_NAME: &str = "chacha8 (key = seed as little-endian u64, zero-padded; stream 0)";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn capacity(what: &'static str, requested: usize) -> GeneratorError {
    GeneratorError::Graph(GraphError::Capacity { what, requested })
}

/// Seeded generator shared by everything that needs reproducible randomness.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Uniform draw in `[0, 1)` from the top 53 bits of one `u64`.
pub fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn complete(n: usize) -> Result<Graph, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::InvalidParameter("complete graph needs n >= 1".into()));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge_unchecked(u, v);
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        g.add_edge_unchecked(i, (i + 1) % n);
    }
    Ok(g)
}

pub fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|i| i * i <= q).all(|i| !q.is_multiple_of(i))
}

/// Paley graph on the prime field of order `q`: `a ~ b` iff `a - b` is a
/// nonzero square mod `q`.
pub fn paley(q: usize) -> Result<Graph, GeneratorError> {
    if !is_prime(q) {
        return Err(GeneratorError::InvalidParameter(format!("paley order {q} is not prime")));
    }
    if q % 4 != 1 {
        return Err(GeneratorError::InvalidParameter(format!(
            "paley order {q} is not 1 mod 4; the residue relation would not be symmetric"
        )));
    }
    if q > MAX_VERTICES {
        return Err(capacity("paley graph", q));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    let mut g = Graph::empty(q)?;
    for a in 0..q {
        for b in a + 1..q {
            if square[b - a] {
                g.add_edge_unchecked(a, b);
            }
        }
    }
    Ok(g)
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Kneser graph: `k`-subsets of `{0..n}`, adjacent when disjoint. Subsets
/// are numbered in lexicographic order.
pub fn kneser(n: usize, k: usize) -> Result<Graph, GeneratorError> {
    if k == 0 || n < 2 * k {
        return Err(GeneratorError::InvalidParameter(format!(
            "kneser needs n >= 2k >= 2, got n={n}, k={k}"
        )));
    }
    let count = binomial(n, k).filter(|&c| c <= MAX_VERTICES);
    let count = count.ok_or_else(|| capacity("kneser graph", binomial(n, k).unwrap_or(usize::MAX)))?;

    let mut subsets: Vec<Vec<usize>> = Vec::with_capacity(count);
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        subsets.push(cur.clone());
        // Advance to the next combination in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    debug_assert_eq!(subsets.len(), count);

    let disjoint = |a: &[usize], b: &[usize]| {
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => return false,
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
            }
        }
        true
    };
    let mut g = Graph::empty(count)?;
    for a in 0..count {
        for b in a + 1..count {
            if disjoint(&subsets[a], &subsets[b]) {
                g.add_edge_unchecked(a, b);
            }
        }
    }
    Ok(g)
}

pub fn line_graph(g: &Graph) -> Result<Graph, GeneratorError> {
    if g.m() > MAX_VERTICES {
        return Err(capacity("line graph", g.m()));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (idx, (u, v)) in g.edges().enumerate() {
        incident[u].push(idx);
        incident[v].push(idx);
    }
    let mut out = Graph::empty(g.m())?;
    for star in &incident {
        for (i, &a) in star.iter().enumerate() {
            for &b in &star[i + 1..] {
                out.add_edge_unchecked(a, b);
            }
        }
    }
    Ok(out)
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, GeneratorError> {
    let size = g.n().checked_mul(h.n()).filter(|&s| s <= MAX_VERTICES);
    let size = size.ok_or_else(|| capacity("cartesian product", g.n().saturating_mul(h.n())))?;
    let hn = h.n();
    let mut out = Graph::empty(size)?;
    for u in 0..g.n() {
        for (v, w) in h.edges() {
            out.add_edge_unchecked(u * hn + v, u * hn + w);
        }
    }
    for (u, w) in g.edges() {
        for v in 0..hn {
            out.add_edge_unchecked(u * hn + v, w * hn + v);
        }
    }
    Ok(out)
}

/// Erdős–Rényi `G(n, p)`. Pairs `(u, v)`, `u < v`, are visited in
/// lexicographic order and each consumes one `u64` from [`seeded_rng`].
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GeneratorError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GeneratorError::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = seeded_rng(seed);
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if unit_f64(&mut rng) < p {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(g)
}
