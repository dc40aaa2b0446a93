//! Linear structural equation models whose graphs may contain cycles.
//!
//! Each vertex `Y` satisfies `Y = Σ_X b[Y,X]·X + ε_Y` with independent
//! Gaussian errors. When `I − B` is invertible the system has the unique
//! solution `x = (I − B)⁻¹ ε`, which is what [`LinearSem::simulate`] draws.
//!
//! Text format, one statement per line:
//!
//! ```text
//! # ccd-kit format v1
//! vertex Q
//! X <- A 0.5
//! var X 2.0
//! ```
//!
//! Vertices are introduced implicitly by coefficient and variance lines;
//! error variances default to 1.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::digraph::{DirectedGraph, GraphError, VertexId};
use crate::dsep::d_separated;
use crate::oracle::{partial_correlation, DataMatrix, OracleError};
use crate::FORMAT_HEADER;

/// Pivot magnitude below which `I − B` is treated as singular.
const SINGULAR_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum SemError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Data(#[from] OracleError),
    #[error("I - B is singular; the equations have no unique solution")]
    Singular,
    #[error("error variance of {0} must be positive and finite, got {1}")]
    BadVariance(String, f64),
    #[error("coefficient {child} <- {parent} must be finite, got {value}")]
    BadCoefficient { child: String, parent: String, value: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("no faithful parameters found after {0} draws")]
    Unfaithful(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearSem {
    vertices: Vec<VertexId>,
    /// `(child, parent) -> coefficient`.
    coefficients: BTreeMap<(usize, usize), f64>,
    variances: Vec<f64>,
}

impl LinearSem {
    /// Builds a model from `(child, parent, coefficient)` triples and
    /// per-vertex variance overrides. Rejects self-loops, non-finite
    /// coefficients, non-positive variances and singular `I − B`.
    pub fn new<V, C, W>(vertices: V, coefficients: C, variances: W) -> Result<Self, SemError>
    where
        V: IntoIterator,
        V::Item: Into<VertexId>,
        C: IntoIterator<Item = (VertexId, VertexId, f64)>,
        W: IntoIterator<Item = (VertexId, f64)>,
    {
        let coefficients: Vec<_> = coefficients.into_iter().collect();
        let variances: Vec<_> = variances.into_iter().collect();
        let mut labels: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        labels.extend(coefficients.iter().flat_map(|(c, p, _)| [c.clone(), p.clone()]));
        labels.extend(variances.iter().map(|(v, _)| v.clone()));
        labels.sort();
        labels.dedup();
        let index = |v: &VertexId| labels.binary_search(v).expect("label collected above");

        let mut coef = BTreeMap::new();
        for (child, parent, value) in &coefficients {
            if child == parent {
                return Err(GraphError::SelfLoop(child.to_string()).into());
            }
            if !value.is_finite() {
                return Err(SemError::BadCoefficient {
                    child: child.to_string(),
                    parent: parent.to_string(),
                    value: *value,
                });
            }
            coef.insert((index(child), index(parent)), *value);
        }
        let mut var = vec![1.0; labels.len()];
        for (v, value) in &variances {
            if !(value.is_finite() && *value > 0.0) {
                return Err(SemError::BadVariance(v.to_string(), *value));
            }
            var[index(v)] = *value;
        }
        let sem = LinearSem { vertices: labels, coefficients: coef, variances: var };
        sem.solve_matrix()?;
        Ok(sem)
    }

    /// Every edge of `g` gets coefficient `c`; unit variances.
    pub fn from_graph(g: &DirectedGraph, c: f64) -> Result<Self, SemError> {
        Self::new(
            g.vertices().iter().cloned(),
            g.edges().map(|(p, ch)| (g.label(ch).clone(), g.label(p).clone(), c)),
            std::iter::empty(),
        )
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn coefficient(&self, child: usize, parent: usize) -> Option<f64> {
        self.coefficients.get(&(child, parent)).copied()
    }

    pub fn coefficients(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.coefficients
    }

    pub fn variances(&self) -> &[f64] {
        &self.variances
    }

    /// `X -> Y` for every coefficient of `X` in `Y`'s equation, zero or not.
    pub fn graph(&self) -> DirectedGraph {
        DirectedGraph::from_index_edges(
            self.vertices.clone(),
            self.coefficients.keys().map(|&(child, parent)| (parent, child)),
        )
    }

    /// `B` with `B[(child, parent)]` the coefficient.
    pub fn coefficient_matrix(&self) -> DMatrix<f64> {
        let n = self.vertices.len();
        let mut b = DMatrix::zeros(n, n);
        for (&(child, parent), &v) in &self.coefficients {
            b[(child, parent)] = v;
        }
        b
    }

    /// `(I − B)⁻¹`.
    fn solve_matrix(&self) -> Result<DMatrix<f64>, SemError> {
        let n = self.vertices.len();
        let m = DMatrix::identity(n, n) - self.coefficient_matrix();
        let lu = m.lu();
        let u = lu.u();
        if (0..n).any(|i| u[(i, i)].abs() < SINGULAR_TOL) {
            return Err(SemError::Singular);
        }
        lu.try_inverse().ok_or(SemError::Singular)
    }

    /// `(I − B)⁻¹ Ω (I − B)⁻ᵀ`.
    pub fn implied_covariance(&self) -> Result<DMatrix<f64>, SemError> {
        let inv = self.solve_matrix()?;
        let omega = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.variances));
        let sigma = &inv * omega * inv.transpose();
        Ok((&sigma + sigma.transpose()) * 0.5)
    }

    /// `samples` independent draws at equilibrium, reproducible per `seed`.
    pub fn simulate(&self, samples: usize, seed: u64) -> Result<DataMatrix, SemError> {
        if samples == 0 {
            return Err(SemError::NoSamples);
        }
        let inv = self.solve_matrix()?;
        let n = self.vertices.len();
        let noise: Vec<Normal<f64>> = self
            .variances
            .iter()
            .map(|v| Normal::new(0.0, v.sqrt()).expect("variance validated"))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut eps = nalgebra::DVector::zeros(n);
        let mut rows = Vec::with_capacity(samples);
        for _ in 0..samples {
            for (e, d) in eps.iter_mut().zip(&noise) {
                *e = d.sample(&mut rng);
            }
            rows.push((&inv * &eps).iter().copied().collect());
        }
        Ok(DataMatrix::new(self.vertices.clone(), rows)?)
    }

    /// Largest eigenvalue modulus of `B`.
    pub fn spectral_radius(&self) -> f64 {
        if self.vertices.is_empty() {
            return 0.0;
        }
        self.coefficient_matrix().complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral radius of `B` below 1: the feedback loops settle to the
    /// simulated equilibrium.
    pub fn is_stable(&self) -> bool {
        self.spectral_radius() < 1.0 - 1e-9
    }

    /// Coefficients `±U[lo, hi]` on each edge of `g`, unit variances,
    /// redrawn until the implied covariance has a partial correlation of
    /// magnitude below `tie` exactly for the d-separated pairs (over all
    /// conditioning sets). Returns the model and the number of rejected
    /// draws. Exhaustive over conditioning sets, so keep `g` small.
    pub fn random_faithful<R: Rng + ?Sized>(
        g: &DirectedGraph,
        lo: f64,
        hi: f64,
        tie: f64,
        rng: &mut R,
        max_draws: usize,
    ) -> Result<(Self, usize), SemError> {
        for attempt in 0..max_draws {
            let coefficients = g.edges().map(|(p, c)| {
                let magnitude = rng.random_range(lo..=hi);
                let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                (g.label(c).clone(), g.label(p).clone(), sign * magnitude)
            });
            let sem = match Self::new(g.vertices().iter().cloned(), coefficients.collect::<Vec<_>>(), []) {
                Ok(sem) => sem,
                Err(SemError::Singular) => continue,
                Err(e) => return Err(e),
            };
            if sem.is_faithful(tie)? {
                return Ok((sem, attempt));
            }
        }
        Err(SemError::Unfaithful(max_draws))
    }

    /// Whether `|ρ(x, y | s)| < tie` holds exactly when `x` and `y` are
    /// d-separated by `s`, for every pair and every `s`.
    pub fn is_faithful(&self, tie: f64) -> Result<bool, SemError> {
        let sigma = self.implied_covariance()?;
        let g = self.graph();
        let n = self.vertices.len();
        for (x, y) in (0..n).tuple_combinations() {
            let rest: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
            for s in rest.into_iter().powerset() {
                let r = partial_correlation(&sigma, x, y, &s)?;
                if (r.abs() < tie) != d_separated(&g, x, y, &s) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn parse(text: &str) -> Result<Self, SemError> {
        let mut vertices = Vec::new();
        let mut coefficients = Vec::new();
        let mut variances = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| SemError::Parse { line: i + 1, message: message.to_string() };
            let number = |s: &str| s.parse::<f64>().map_err(|_| err(&format!("not a number: {s}")));
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["vertex", v] => vertices.push(VertexId::from(*v)),
                ["var", v, value] => variances.push((VertexId::from(*v), number(value)?)),
                [child, "<-", parent, value] => {
                    coefficients.push((VertexId::from(*child), VertexId::from(*parent), number(value)?))
                }
                _ => return Err(err("expected `Y <- X coef`, `var X v` or `vertex X`")),
            }
        }
        Self::new(vertices, coefficients, variances)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("{FORMAT_HEADER}\n");
        for v in &self.vertices {
            let _ = writeln!(out, "vertex {v}");
        }
        for (&(child, parent), value) in &self.coefficients {
            let _ = writeln!(out, "{} <- {} {value}", self.vertices[child], self.vertices[parent]);
        }
        for (v, value) in self.vertices.iter().zip(&self.variances) {
            if *value != 1.0 {
                let _ = writeln!(out, "var {v} {value}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2(c: f64) -> LinearSem {
        let g = DirectedGraph::from_edges(&[("A", "X"), ("B", "Y"), ("X", "Y"), ("Y", "X")]).unwrap();
        LinearSem::from_graph(&g, c).unwrap()
    }

    #[test]
    fn graph_of_model() {
        let sem = fig2(0.5);
        assert_eq!(sem.graph().serialize(), fig2(0.1).graph().serialize());
        assert!(sem.graph().has_cycle());
        let chain = LinearSem::parse("B <- A 0.3\nC <- B 0.3\n").unwrap();
        assert_eq!(chain.graph(), DirectedGraph::from_edges(&[("A", "B"), ("B", "C")]).unwrap());
        let empty = LinearSem::parse("vertex A\nvertex B\n").unwrap();
        assert_eq!(empty.graph().edge_count(), 0);
    }

    #[test]
    fn zero_coefficients_give_identity() {
        let sem = LinearSem::parse("vertex A\nvertex B\nvertex C\n").unwrap();
        assert_eq!(sem.implied_covariance().unwrap(), DMatrix::identity(3, 3));
    }

    #[test]
    fn singular_feedback_rejected() {
        let err = LinearSem::parse("Y <- X 2\nX <- Y 0.5\n").unwrap_err();
        assert!(matches!(err, SemError::Singular));
    }

    #[test]
    fn two_cycle_covariance_by_hand() {
        // X = bY + e1, Y = cX + e2 => X = (e1 + b e2)/(1-bc), Y = (c e1 + e2)/(1-bc).
        let (b, c) = (0.5, 0.4);
        let sem = LinearSem::new(
            ["X", "Y"],
            [("X".into(), "Y".into(), b), ("Y".into(), "X".into(), c)],
            [],
        )
        .unwrap();
        let d = (1.0 - b * c) * (1.0 - b * c);
        let sigma = sem.implied_covariance().unwrap();
        assert!((sigma[(0, 0)] - (1.0 + b * b) / d).abs() < 1e-12);
        assert!((sigma[(1, 1)] - (c * c + 1.0) / d).abs() < 1e-12);
        assert!((sigma[(0, 1)] - (c + b) / d).abs() < 1e-12);
    }

    #[test]
    fn fig2_population_partial_correlations() {
        let sigma = fig2(0.5).implied_covariance().unwrap();
        // A=0, B=1, X=2, Y=3
        assert!(partial_correlation(&sigma, 0, 1, &[]).unwrap().abs() < 1e-12);
        assert!(partial_correlation(&sigma, 0, 1, &[2, 3]).unwrap().abs() < 1e-12);
        assert!(partial_correlation(&sigma, 0, 1, &[2]).unwrap().abs() > 1e-3);
        assert!(partial_correlation(&sigma, 0, 1, &[3]).unwrap().abs() > 1e-3);
        assert!(fig2(0.5).is_faithful(1e-8).unwrap());
    }

    #[test]
    fn sample_covariance_converges() {
        let sem = LinearSem::parse("vertex A\nvertex B\nvertex C\n").unwrap();
        let data = sem.simulate(100_000, 7).unwrap();
        let cov = data.covariance();
        let id = DMatrix::<f64>::identity(3, 3);
        assert!((cov - id).abs().max() < 0.05);
    }

    #[test]
    fn simulation_is_seeded() {
        let sem = fig2(0.5);
        assert_eq!(sem.simulate(10, 3).unwrap(), sem.simulate(10, 3).unwrap());
        assert_ne!(sem.simulate(10, 3).unwrap(), sem.simulate(10, 4).unwrap());
        assert_eq!(sem.simulate(1, 0).unwrap().rows(), 1);
        assert!(matches!(sem.simulate(0, 0), Err(SemError::NoSamples)));
    }

    #[test]
    fn stability() {
        let two_cycle = |v: f64| {
            LinearSem::new(["X", "Y"], [("X".into(), "Y".into(), v), ("Y".into(), "X".into(), v)], []).unwrap()
        };
        assert!(two_cycle(0.9).is_stable());
        assert!(!two_cycle(1.1).is_stable());
        assert!((two_cycle(0.9).spectral_radius() - 0.9).abs() < 1e-9);
        assert!(LinearSem::parse("vertex A\n").unwrap().is_stable());
    }

    #[test]
    fn text_round_trip() {
        let text = "# ccd-kit format v1\nvertex A\nvertex Q\nvertex X\nX <- A 0.5\nvar X 2\n";
        let sem = LinearSem::parse(text).unwrap();
        assert_eq!(sem.serialize(), text);
        assert_eq!(sem.variances(), &[1.0, 1.0, 2.0]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(LinearSem::parse("X <- Y abc"), Err(SemError::Parse { line: 1, .. })));
        assert!(matches!(LinearSem::parse("vertex A\nX -> Y 1"), Err(SemError::Parse { line: 2, .. })));
        assert!(matches!(LinearSem::parse("var X -1"), Err(SemError::BadVariance(..))));
        assert!(matches!(LinearSem::parse("X <- X 0.5"), Err(SemError::Graph(_))));
    }

    #[test]
    fn random_faithful_draws() {
        let g = DirectedGraph::from_edges(&[("A", "X"), ("B", "Y"), ("X", "Y"), ("Y", "X")]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (sem, _) = LinearSem::random_faithful(&g, 0.3, 0.8, 1e-8, &mut rng, 100).unwrap();
        assert_eq!(sem.graph(), g);
        for &c in sem.coefficients().values() {
            assert!((0.3..=0.8).contains(&c.abs()));
        }
    }
}
