//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use scv_core::generators::{cartesian_product, complete, cycle, kneser, line_graph, paley};
use scv_core::graph::Graph;

/// Clique number by checking every vertex subset; only for small `n`.
pub fn brute_force_omega(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 16, "brute force is exponential");
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let ok = verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if ok {
            best = size;
        }
    }
    best
}

/// Clique number by plain Bron–Kerbosch recursion over vertex lists.
pub fn bron_kerbosch_omega(g: &Graph) -> usize {
    fn go(g: &Graph, size: usize, cand: Vec<usize>, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + cand.len() <= *best {
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            go(g, size + 1, next, best);
        }
    }
    let mut best = 0;
    go(g, 0, (0..g.n()).collect(), &mut best);
    best
}

/// `t+` of a Cartesian square from an explicit eigenvalue list.
pub fn pair_sum_t_plus(eigs: &[f64]) -> f64 {
    let mut t = 0.0;
    for a in eigs {
        for b in eigs {
            if a + b > 1e-7 {
                t += (a + b) * (a + b);
            }
        }
    }
    t
}

/// Paley(q) spectrum: `(q-1)/2` once, `(-1 ± sqrt q)/2` each `(q-1)/2` times.
pub fn paley_spectrum(q: usize) -> Vec<f64> {
    let h = (q - 1) / 2;
    let mut v = vec![h as f64];
    v.extend(std::iter::repeat_n((-1.0 + (q as f64).sqrt()) / 2.0, h));
    v.extend(std::iter::repeat_n((-1.0 - (q as f64).sqrt()) / 2.0, h));
    v
}

/// L(K_n) spectrum: `2n-4`, `n-4` with multiplicity `n-1`, `-2` with `n(n-3)/2`.
pub fn line_kn_spectrum(n: usize) -> Vec<f64> {
    let mut v = vec![2.0 * n as f64 - 4.0];
    v.extend(std::iter::repeat_n(n as f64 - 4.0, n - 1));
    v.extend(std::iter::repeat_n(-2.0, n * (n - 3) / 2));
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn petersen() -> Graph {
    kneser(5, 2).unwrap()
}

/// Named deterministic graphs from every family.
pub fn family_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push((format!("K{n}"), complete(n).unwrap()));
    }
    out.push(("petersen".into(), petersen()));
    for q in [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97, 101] {
        out.push((format!("paley{q}"), paley(q).unwrap()));
    }
    for n in 4..=12 {
        out.push((format!("L(K{n})"), line_graph(&complete(n).unwrap()).unwrap()));
    }
    for n in (3..=21).chain(22..=60) {
        out.push((format!("C{n}"), cycle(n).unwrap()));
    }
    for (n, k) in [(6, 2), (7, 2), (7, 3), (8, 3)] {
        out.push((format!("kneser({n},{k})"), kneser(n, k).unwrap()));
    }
    let k4 = complete(4).unwrap();
    out.push(("K4xK4".into(), cartesian_product(&k4, &k4).unwrap()));
    let c5 = cycle(5).unwrap();
    out.push(("C5xC5".into(), cartesian_product(&c5, &c5).unwrap()));
    out.push(("PetxPet".into(), cartesian_product(&petersen(), &petersen()).unwrap()));
    let p13 = paley(13).unwrap();
    out.push(("P13xP13".into(), cartesian_product(&p13, &p13).unwrap()));
    out
}
