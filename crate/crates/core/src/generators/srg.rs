//! Strongly regular graph parameters and their closed-form spectrum.

use thiserror::Error;

use crate::graph::Graph;

/// Tolerance on the raw multiplicity formula before it is accepted as an
/// integer.
pub const MULTIPLICITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SrgError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("parameter relation fails: (n-d-1)*mu = {lhs} but d*(d-lambda-1) = {rhs}")]
    RelationViolated { lhs: i64, rhs: i64 },
    #[error("discriminant (lambda-mu)^2 + 4(d-mu) = {0} is not positive")]
    Discriminant(i64),
    #[error("multiplicities f = {f_raw}, g = {g_raw} are not integers")]
    NonIntegralMultiplicity { f_raw: f64, g_raw: f64 },
}

/// `srg(n, d, lambda, mu)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SrgParams {
    pub n: u64,
    pub d: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    pub fn new(n: u64, d: u64, lambda: u64, mu: u64) -> Self {
        SrgParams { n, d, lambda, mu }
    }

    /// Conference parameters `(4mu + 1, 2mu, mu - 1, mu)`.
    pub fn conference(mu: u64) -> Self {
        assert!(mu >= 1);
        SrgParams::new(4 * mu + 1, 2 * mu, mu - 1, mu)
    }

    /// Parameters of the line graph of `K_n`.
    pub fn line_of_complete(n: u64) -> Self {
        SrgParams::new(n * (n - 1) / 2, 2 * (n - 2), n - 2, 4)
    }

    /// `((n-d-1)*mu, d*(d-lambda-1))`; the two sides of the counting identity.
    pub fn relation_sides(&self) -> (i64, i64) {
        let (n, d, l, m) = (self.n as i64, self.d as i64, self.lambda as i64, self.mu as i64);
        ((n - d - 1) * m, d * (d - l - 1))
    }

    pub fn relation_holds(&self) -> bool {
        let (lhs, rhs) = self.relation_sides();
        lhs == rhs
    }

    /// Range checks plus the counting identity.
    pub fn validate(&self) -> Result<(), SrgError> {
        let SrgParams { n, d, lambda, mu } = *self;
        if d == 0 || n <= d {
            return Err(SrgError::OutOfRange(format!("need 0 < d < n, got n={n}, d={d}")));
        }
        if lambda > d - 1 {
            return Err(SrgError::OutOfRange(format!("lambda={lambda} exceeds d-1={}", d - 1)));
        }
        if mu > d {
            return Err(SrgError::OutOfRange(format!("mu={mu} exceeds d={d}")));
        }
        let (lhs, rhs) = self.relation_sides();
        if lhs != rhs {
            return Err(SrgError::RelationViolated { lhs, rhs });
        }
        Ok(())
    }

    /// `2d + (n-1)(lambda-mu) == 0`: the half case where `f = g = (n-1)/2`.
    pub fn is_conference_shape(&self) -> bool {
        2 * self.d as i64 + (self.n as i64 - 1) * (self.lambda as i64 - self.mu as i64) == 0
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "srg({},{},{},{})", self.n, self.d, self.lambda, self.mu)
    }
}

/// Spectrum `(d^1, r^f, s^g)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrgSpectrum {
    pub d: f64,
    pub r: f64,
    pub s: f64,
    pub f: u64,
    pub g: u64,
    /// Multiplicities came from the conference half case.
    pub conference: bool,
}

impl SrgSpectrum {
    /// `d^2 + f r^2`, or `d^2` alone when `r` is not positive.
    pub fn s_plus(&self) -> f64 {
        let mut acc = self.d * self.d;
        if self.r > 0.0 {
            acc += self.f as f64 * self.r * self.r;
        }
        if self.s > 0.0 {
            acc += self.g as f64 * self.s * self.s;
        }
        acc
    }

    /// Eigenvalue groups `(value, multiplicity)` in descending order, zero
    /// multiplicities dropped.
    pub fn groups(&self) -> Vec<(f64, u64)> {
        [(self.d, 1), (self.r, self.f), (self.s, self.g)]
            .into_iter()
            .filter(|&(_, m)| m > 0)
            .collect()
    }

    /// All eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.groups()
            .into_iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m as usize))
            .collect()
    }
}

/// Closed-form eigenvalues and multiplicities of `srg(n, d, lambda, mu)`.
pub fn srg_spectrum(p: &SrgParams) -> Result<SrgSpectrum, SrgError> {
    p.validate()?;
    let (n, d, l, m) = (p.n as f64, p.d as f64, p.lambda as f64, p.mu as f64);
    let disc_int = (p.lambda as i64 - p.mu as i64).pow(2) + 4 * (p.d as i64 - p.mu as i64);
    if disc_int <= 0 {
        return Err(SrgError::Discriminant(disc_int));
    }
    let root = (disc_int as f64).sqrt();
    let r = 0.5 * ((l - m) + root);
    let s = 0.5 * ((l - m) - root);

    let (f, g) = if p.is_conference_shape() {
        if p.n.is_multiple_of(2) {
            let half = (n - 1.0) / 2.0;
            return Err(SrgError::NonIntegralMultiplicity { f_raw: half, g_raw: half });
        }
        ((p.n - 1) / 2, (p.n - 1) / 2)
    } else {
        let skew = (2.0 * d + (n - 1.0) * (l - m)) / root;
        let f_raw = 0.5 * ((n - 1.0) - skew);
        let g_raw = 0.5 * ((n - 1.0) + skew);
        let integral = |x: f64| x > -MULTIPLICITY_TOLERANCE && (x - x.round()).abs() < MULTIPLICITY_TOLERANCE;
        if !integral(f_raw) || !integral(g_raw) {
            return Err(SrgError::NonIntegralMultiplicity { f_raw, g_raw });
        }
        (f_raw.round() as u64, g_raw.round() as u64)
    };
    Ok(SrgSpectrum {
        d,
        r,
        s,
        f,
        g,
        conference: p.is_conference_shape(),
    })
}

/// Recognises a strongly regular graph by counting common neighbours over
/// all pairs. Complete and edgeless graphs are not reported.
pub fn srg_parameters_of(g: &Graph) -> Option<SrgParams> {
    let d = g.degree_stats().regular_degree?;
    let n = g.n();
    if d == 0 || d == n - 1 {
        return None;
    }
    let (mut lambda, mut mu) = (None, None);
    for u in 0..n {
        for v in u + 1..n {
            let c = g.common_neighbors(u, v);
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    Some(SrgParams::new(n as u64, d as u64, lambda? as u64, mu? as u64))
}
