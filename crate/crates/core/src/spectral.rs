//! Adjacency spectra: dense symmetric eigensolvers, `s+`, and the Ramanujan
//! test.
//!
//! Two eigenvalue routes are provided. Cyclic Jacobi is the reference and is
//! used up to [`JACOBI_MAX_N`] vertices; above that the matrix is reduced to
//! tridiagonal form with Householder reflections and finished with implicit
//! QL. The test suite checks the two against each other.

use thiserror::Error;

use crate::generators::SrgSpectrum;
use crate::graph::Graph;

/// Largest order handled by Jacobi in [`eigenvalues_symmetric`].
pub const JACOBI_MAX_N: usize = 256;
/// Full Jacobi sweeps allowed before giving up.
pub const MAX_SWEEPS: usize = 50;
/// Relative gap used when grouping eigenvalues into multiplicities.
pub const CLUSTER_GAP: f64 = 1e-6;
/// Slack on the Ramanujan inequality.
pub const RAMANUJAN_SLACK: f64 = 1e-9;

const QL_MAX_ITER: usize = 60;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e}, target {target:e})")]
    NoConvergence { sweeps: usize, off_norm: f64, target: f64 },
    #[error("QL iteration did not converge for eigenvalue {index} after {QL_MAX_ITER} iterations")]
    QlNoConvergence { index: usize },
    #[error("graph is not regular (degrees {min}..={max})")]
    NotRegular { min: usize, max: usize },
    #[error("Ramanujan test needs degree >= 1")]
    ZeroDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumSource {
    Numeric,
    ClosedFormSrg,
}

impl std::fmt::Display for SpectrumSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SpectrumSource::Numeric => "numeric",
            SpectrumSource::ClosedFormSrg => "closed-form-srg",
        })
    }
}

/// Adjacency eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigs: Vec<f64>,
    pos_threshold: f64,
    source: SpectrumSource,
}

impl Spectrum {
    pub fn new(mut eigs: Vec<f64>, source: SpectrumSource) -> Self {
        eigs.sort_by(|a, b| b.total_cmp(a));
        let lambda1 = eigs.first().copied().unwrap_or(0.0);
        Spectrum {
            pos_threshold: 1e-8 * lambda1.max(1.0),
            eigs,
            source,
        }
    }

    pub fn from_srg(sp: &SrgSpectrum) -> Self {
        Spectrum::new(sp.eigenvalues(), SpectrumSource::ClosedFormSrg)
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigs
    }

    pub fn len(&self) -> usize {
        self.eigs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigs.is_empty()
    }

    pub fn source(&self) -> SpectrumSource {
        self.source
    }

    /// Eigenvalues above this count as positive.
    pub fn pos_threshold(&self) -> f64 {
        self.pos_threshold
    }

    pub fn lambda1(&self) -> f64 {
        self.eigs.first().copied().unwrap_or(0.0)
    }

    pub fn lambda2(&self) -> Option<f64> {
        self.eigs.get(1).copied()
    }

    /// Sum of squares of the positive eigenvalues, with how many contributed.
    pub fn s_plus(&self) -> (f64, usize) {
        let t = self.pos_threshold;
        self.eigs
            .iter()
            .filter(|&&x| x > t)
            .fold((0.0, 0), |(acc, k), &x| (acc + x * x, k + 1))
    }

    /// Sum of squares of the negative eigenvalues.
    pub fn s_minus(&self) -> f64 {
        let t = self.pos_threshold;
        self.eigs.iter().filter(|&&x| x < -t).map(|x| x * x).sum()
    }

    pub fn trace(&self) -> f64 {
        self.eigs.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.eigs.iter().map(|x| x * x).sum()
    }

    /// `(value, multiplicity)` groups; neighbours closer than
    /// `CLUSTER_GAP * max(1, |lambda1|)` are merged and reported by their mean.
    pub fn groups(&self) -> Vec<(f64, usize)> {
        let gap = CLUSTER_GAP * self.lambda1().abs().max(1.0);
        let mut out: Vec<(f64, usize)> = Vec::new();
        let mut last = f64::NAN;
        for &x in &self.eigs {
            match out.last_mut() {
                Some((sum, count)) if last - x < gap => {
                    *sum += x;
                    *count += 1;
                }
                _ => out.push((x, 1)),
            }
            last = x;
        }
        out.into_iter().map(|(sum, count)| (sum / count as f64, count)).collect()
    }
}

/// All adjacency eigenvalues of `g`.
pub fn eigenvalues_symmetric(g: &Graph) -> Result<Spectrum, SpectralError> {
    let n = g.n();
    if n == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    let a = g.adjacency_matrix();
    let eigs = if n <= JACOBI_MAX_N {
        jacobi_eigenvalues(a, n)?
    } else {
        tridiagonal_ql_eigenvalues(a, n)?
    };
    Ok(Spectrum::new(eigs, SpectrumSource::Numeric))
}

pub fn lambda_max(g: &Graph) -> Result<f64, SpectralError> {
    Ok(eigenvalues_symmetric(g)?.lambda1())
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            acc += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * acc).sqrt()
}

/// Cyclic Jacobi on a dense row-major symmetric matrix. Stops once the
/// off-diagonal Frobenius norm drops below `1e-12 * n`.
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>, SpectralError> {
    assert_eq!(a.len(), n * n);
    let target = 1e-12 * n as f64;
    let mut off = off_diagonal_norm(&a, n);
    for _ in 0..MAX_SWEEPS {
        if off < target {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                // signum(0) is 1 in Rust, which is the rotation we want.
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r * n + p];
                    let h = a[r * n + q];
                    let rp = g - s * (h + g * tau);
                    let rq = h + s * (g - h * tau);
                    a[r * n + p] = rp;
                    a[p * n + r] = rp;
                    a[r * n + q] = rq;
                    a[q * n + r] = rq;
                }
            }
        }
        off = off_diagonal_norm(&a, n);
    }
    if off < target {
        return Ok((0..n).map(|i| a[i * n + i]).collect());
    }
    Err(SpectralError::NoConvergence {
        sweeps: MAX_SWEEPS,
        off_norm: off,
        target,
    })
}

/// Householder tridiagonalisation followed by implicit QL with Wilkinson-type
/// shifts. Eigenvalues only.
pub fn tridiagonal_ql_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>, SpectralError> {
    assert_eq!(a.len(), n * n);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[i * n + k] * a[i * n + k]).sum::<f64>().sqrt();
        d[k] = a[k * n + k];
        if norm == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = a[i * n + k];
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        for x in &mut v[k + 1..n] {
            *x /= vnorm;
        }
        // p = A v on the trailing block, then w = p - (v.p) v.
        for i in k + 1..n {
            w[i] = (k + 1..n).map(|j| a[i * n + j] * v[j]).sum();
        }
        let vp: f64 = (k + 1..n).map(|i| v[i] * w[i]).sum();
        for i in k + 1..n {
            w[i] -= vp * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] -= 2.0 * (v[i] * w[j] + w[i] * v[j]);
            }
        }
        e[k] = alpha;
    }
    if n >= 2 {
        d[n - 2] = a[(n - 2) * n + n - 2];
        d[n - 1] = a[(n - 1) * n + n - 1];
        e[n - 2] = a[(n - 1) * n + n - 2];
    } else if n == 1 {
        d[0] = a[0];
    }
    e[n.saturating_sub(1)] = 0.0;

    // e[i] couples d[i] and d[i + 1].
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(SpectralError::QlNoConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

/// Outcome of the Ramanujan test `lambda2 <= 2 sqrt(d - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RamanujanTest {
    pub is_ramanujan: bool,
    pub d: usize,
    pub lambda2: f64,
    pub threshold: f64,
}

pub fn is_ramanujan(g: &Graph) -> Result<RamanujanTest, SpectralError> {
    let ds = g.degree_stats();
    let d = ds.regular_degree.ok_or(SpectralError::NotRegular {
        min: ds.min,
        max: ds.max,
    })?;
    ramanujan_from_spectrum(d, &eigenvalues_symmetric(g)?)
}

/// Ramanujan test for a `d`-regular graph whose spectrum is already known.
pub fn ramanujan_from_spectrum(d: usize, sp: &Spectrum) -> Result<RamanujanTest, SpectralError> {
    if d == 0 {
        return Err(SpectralError::ZeroDegree);
    }
    let threshold = 2.0 * ((d - 1) as f64).sqrt();
    // A single vertex cannot have degree >= 1, so lambda2 exists.
    let lambda2 = sp.lambda2().ok_or(SpectralError::EmptyGraph)?;
    Ok(RamanujanTest {
        is_ramanujan: lambda2 <= threshold + RAMANUJAN_SLACK,
        d,
        lambda2,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, kneser, random_gnp, srg_spectrum, SrgParams};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    /// Closed-form cycle spectrum 2 cos(2 pi k / n), descending.
    fn cycle_oracle(n: usize) -> Vec<f64> {
        let mut v: Vec<f64> = (0..n).map(|k| 2.0 * (2.0 * PI * k as f64 / n as f64).cos()).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    #[test]
    fn complete_spectra() {
        let sp = eigenvalues_symmetric(&complete(4).unwrap()).unwrap();
        assert_close(sp.eigenvalues(), &[3.0, -1.0, -1.0, -1.0], 1e-12);
        assert_eq!(sp.groups().len(), 2);
        let sp6 = eigenvalues_symmetric(&complete(6).unwrap()).unwrap();
        assert_eq!(sp6.groups()[1].1, 5);
        assert_abs_diff_eq!(sp.s_plus().0, 9.0, epsilon = 1e-10);
        assert_eq!(sp.s_plus().1, 1);
    }

    #[test]
    fn cycle_spectra_match_cosines() {
        for n in [3, 4, 5, 8, 13, 22, 40] {
            let sp = eigenvalues_symmetric(&cycle(n).unwrap()).unwrap();
            assert_close(sp.eigenvalues(), &cycle_oracle(n), 1e-9);
        }
        let c5 = eigenvalues_symmetric(&cycle(5).unwrap()).unwrap();
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert_abs_diff_eq!(c5.lambda2().unwrap(), golden, epsilon = 1e-10);
        assert_abs_diff_eq!(c5.s_plus().0, 7.0 - 5f64.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn petersen_matches_closed_form() {
        let sp = eigenvalues_symmetric(&kneser(5, 2).unwrap()).unwrap();
        let closed = srg_spectrum(&SrgParams::new(10, 3, 0, 1)).unwrap().eigenvalues();
        assert_close(sp.eigenvalues(), &closed, 1e-10);
        let groups = sp.groups();
        assert_eq!(groups.iter().map(|g| g.1).collect::<Vec<_>>(), vec![1, 5, 4]);
        assert_abs_diff_eq!(sp.s_plus().0, 14.0, epsilon = 1e-9);
    }

    #[test]
    fn lambda_max_examples() {
        let star = Graph::from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert_abs_diff_eq!(lambda_max(&star).unwrap(), 2.0, epsilon = 1e-12);
        assert_eq!(lambda_max(&Graph::empty(3).unwrap()).unwrap(), 0.0);
        assert_eq!(lambda_max(&Graph::empty(0).unwrap()), Err(SpectralError::EmptyGraph));
        // Star K_{1,4} has a zero eigenvalue of multiplicity 3 that must not enter s+.
        let sp = eigenvalues_symmetric(&star).unwrap();
        assert_eq!(sp.s_plus().1, 1);
        assert_abs_diff_eq!(sp.s_plus().0, 4.0, epsilon = 1e-10);
    }

    #[test]
    fn jacobi_and_ql_agree() {
        for seed in 0..8 {
            let g = random_gnp(40, 0.3 + 0.05 * seed as f64, seed).unwrap();
            let a = g.adjacency_matrix();
            let mut j = jacobi_eigenvalues(a.clone(), 40).unwrap();
            let mut q = tridiagonal_ql_eigenvalues(a, 40).unwrap();
            j.sort_by(|a, b| b.total_cmp(a));
            q.sort_by(|a, b| b.total_cmp(a));
            assert_close(&j, &q, 1e-9);
        }
        let mut one = tridiagonal_ql_eigenvalues(vec![0.0], 1).unwrap();
        one.sort_by(f64::total_cmp);
        assert_eq!(one, vec![0.0]);
        let two = tridiagonal_ql_eigenvalues(vec![0.0, 1.0, 1.0, 0.0], 2).unwrap();
        assert_close(&Spectrum::new(two, SpectrumSource::Numeric).eigs, &[1.0, -1.0], 1e-14);
    }

    #[test]
    fn large_cycle_uses_ql_route() {
        let n = JACOBI_MAX_N + 44;
        let sp = eigenvalues_symmetric(&cycle(n).unwrap()).unwrap();
        assert_close(sp.eigenvalues(), &cycle_oracle(n), 1e-9);
    }

    #[test]
    fn trace_energy_and_split() {
        for seed in 0..5 {
            let g = random_gnp(30, 0.5, 100 + seed).unwrap();
            let sp = eigenvalues_symmetric(&g).unwrap();
            let two_m = 2.0 * g.m() as f64;
            assert!(sp.trace().abs() <= 1e-8 * 30.0);
            assert!((sp.sum_of_squares() - two_m).abs() <= 1e-6 * two_m.max(1.0));
            assert!((sp.s_plus().0 + sp.s_minus() - two_m).abs() <= 1e-6);
        }
    }

    #[test]
    fn ramanujan_examples() {
        let k6 = is_ramanujan(&complete(6).unwrap()).unwrap();
        assert!(k6.is_ramanujan);
        assert_abs_diff_eq!(k6.lambda2, -1.0, epsilon = 1e-10);
        let c22 = is_ramanujan(&cycle(22).unwrap()).unwrap();
        assert!(c22.is_ramanujan);
        assert_abs_diff_eq!(c22.lambda2, 2.0 * (PI / 11.0).cos(), epsilon = 1e-10);
        assert_eq!(c22.threshold, 2.0);
        let pet = is_ramanujan(&kneser(5, 2).unwrap()).unwrap();
        assert!(pet.is_ramanujan);
        assert_abs_diff_eq!(pet.threshold, 2.0 * 2f64.sqrt(), epsilon = 1e-15);

        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(is_ramanujan(&p3), Err(SpectralError::NotRegular { min: 1, max: 2 }));
        assert_eq!(is_ramanujan(&Graph::empty(4).unwrap()), Err(SpectralError::ZeroDegree));
        // Two disjoint K4: lambda2 = 3 > 2 sqrt(2).
        let mut edges = Vec::new();
        for base in [0, 4] {
            for u in 0..4 {
                for v in u + 1..4 {
                    edges.push((base + u, base + v));
                }
            }
        }
        let t = is_ramanujan(&Graph::from_edges(8, &edges).unwrap()).unwrap();
        assert!(!t.is_ramanujan);
        assert_abs_diff_eq!(t.lambda2, 3.0, epsilon = 1e-10);
    }
}
