//! Conditional-independence oracles.
//!
//! Under the global directed Markov property plus faithfulness,
//! `X ⫫ Y | S` holds exactly when `X` and `Y` are d-separated by `S`, so an
//! exact oracle is just d-separation in a known graph ([`GraphOracle`]).
//! With sample data a Fisher-z partial correlation test stands in
//! ([`FisherZOracle`]). Search code talks to either through
//! [`IndependenceOracle`] and wraps it in a [`RecordingOracle`] for caching
//! and per-phase counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};

use nalgebra::DMatrix;
use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

use crate::digraph::{DirectedGraph, GraphError, VertexId};
use crate::dsep::{d_connected, SeparationQuery};

/// Significance level used when none is given.
pub const DEFAULT_ALPHA: f64 = 0.01;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("covariance of the conditioning variables is singular")]
    Singular,
    #[error("need more than {needed} rows, have {have}")]
    InsufficientRows { needed: usize, have: usize },
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    BadAlpha(f64),
    #[error("data: {0}")]
    Data(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// "Is `x` independent of `y` given `s`?" over an oracle's vertex indices.
/// `s` is kept sorted and never contains `x` or `y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CiQuery {
    x: usize,
    y: usize,
    s: Vec<usize>,
}

impl CiQuery {
    pub fn new(x: usize, y: usize, s: impl IntoIterator<Item = usize>) -> Result<Self, OracleError> {
        let mut s: Vec<usize> = s.into_iter().collect();
        s.sort_unstable();
        s.dedup();
        if x == y {
            return Err(OracleError::InvalidQuery("x and y must differ".into()));
        }
        if s.contains(&x) || s.contains(&y) {
            return Err(OracleError::InvalidQuery("conditioning set contains x or y".into()));
        }
        Ok(CiQuery { x, y, s })
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    /// Same question with the endpoints in canonical order.
    pub fn unordered(&self) -> CiQuery {
        CiQuery { x: self.x.min(self.y), y: self.x.max(self.y), s: self.s.clone() }
    }

    pub fn display<'a>(&'a self, vertices: &'a [VertexId]) -> impl fmt::Display + 'a {
        DisplayQuery { q: self, vertices }
    }
}

struct DisplayQuery<'a> {
    q: &'a CiQuery,
    vertices: &'a [VertexId],
}

impl fmt::Display for DisplayQuery<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.q.s.iter().map(|&i| self.vertices[i].as_str()).collect();
        write!(f, "{} _||_ {} | {{{}}}", self.vertices[self.q.x], self.vertices[self.q.y], s.join(", "))
    }
}

/// Anything that can answer conditional-independence questions about a
/// fixed, lexicographically sorted vertex list.
pub trait IndependenceOracle {
    fn vertices(&self) -> &[VertexId];

    fn is_independent(&self, q: &CiQuery) -> Result<bool, OracleError>;

    /// Label-based convenience wrapper.
    fn independent(&self, x: &str, y: &str, s: &[&str]) -> Result<bool, OracleError> {
        let find = |l: &str| {
            self.vertices()
                .binary_search_by(|v| v.as_str().cmp(l))
                .map_err(|_| OracleError::Graph(GraphError::UnknownVertex(l.to_owned())))
        };
        let s = s.iter().map(|l| find(l)).collect::<Result<Vec<_>, _>>()?;
        self.is_independent(&CiQuery::new(find(x)?, find(y)?, s)?)
    }
}

/// Exact oracle: independence is d-separation in `graph`.
#[derive(Debug)]
pub struct GraphOracle {
    graph: DirectedGraph,
    evaluations: AtomicUsize,
}

impl GraphOracle {
    pub fn new(graph: DirectedGraph) -> Self {
        GraphOracle { graph, evaluations: AtomicUsize::new(0) }
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    /// Number of questions answered so far (uncached).
    pub fn evaluations(&self) -> usize {
        self.evaluations.load(Ordering::Relaxed)
    }
}

impl IndependenceOracle for GraphOracle {
    fn vertices(&self) -> &[VertexId] {
        self.graph.vertices()
    }

    fn is_independent(&self, q: &CiQuery) -> Result<bool, OracleError> {
        let n = self.graph.len();
        if q.x >= n || q.y >= n || q.s.iter().any(|&v| v >= n) {
            return Err(OracleError::InvalidQuery("vertex index out of range".into()));
        }
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        let sq = SeparationQuery::pair(&self.graph, q.x, q.y, &q.s)
            .map_err(|e| OracleError::InvalidQuery(e.to_string()))?;
        Ok(!d_connected(&self.graph, &sq))
    }
}

/// Search phases that may consult an oracle (B and E never do, but are
/// listed so stats can be keyed uniformly).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Phase {
    pub const ALL: [Phase; 6] = [Phase::A, Phase::B, Phase::C, Phase::D, Phase::E, Phase::F];
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Distinct queries answered, by phase and conditioning-set size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    counts: BTreeMap<Phase, BTreeMap<usize, u64>>,
}

impl OracleStats {
    pub fn record(&mut self, phase: Phase, set_size: usize) {
        *self.counts.entry(phase).or_default().entry(set_size).or_default() += 1;
    }

    pub fn phase_total(&self, phase: Phase) -> u64 {
        self.counts.get(&phase).map_or(0, |m| m.values().sum())
    }

    pub fn by_size(&self, phase: Phase) -> BTreeMap<usize, u64> {
        self.counts.get(&phase).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().flat_map(|m| m.values()).sum()
    }
}

/// Caches answers per unordered pair and conditioning set, and counts each
/// distinct query once, against the phase that first asked it.
pub struct RecordingOracle<'a, O: ?Sized> {
    inner: &'a O,
    cache: Mutex<HashMap<CiQuery, bool>>,
    stats: Mutex<OracleStats>,
}

impl<'a, O: IndependenceOracle + ?Sized> RecordingOracle<'a, O> {
    pub fn new(inner: &'a O) -> Self {
        RecordingOracle { inner, cache: Mutex::new(HashMap::new()), stats: Mutex::new(OracleStats::default()) }
    }

    pub fn vertices(&self) -> &[VertexId] {
        self.inner.vertices()
    }

    pub fn ask(&self, phase: Phase, q: &CiQuery) -> Result<bool, OracleError> {
        let key = q.unordered();
        if let Some(&hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit);
        }
        let answer = self.inner.is_independent(&key)?;
        // Two threads may race to answer the same query; only the first
        // insertion is counted.
        let mut cache = self.cache.lock().expect("cache lock");
        if cache.insert(key.clone(), answer).is_none() {
            self.stats.lock().expect("stats lock").record(phase, key.s.len());
        }
        Ok(answer)
    }

    pub fn stats(&self) -> OracleStats {
        self.stats.lock().expect("stats lock").clone()
    }
}

/// Rectangular table of real observations with unique column labels.
#[derive(Clone, Debug)]
pub struct DataMatrix {
    labels: Vec<VertexId>,
    /// row-major
    values: Vec<f64>,
    rows: usize,
    covariance: OnceLock<DMatrix<f64>>,
}

impl PartialEq for DataMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.rows == other.rows && self.values == other.values
    }
}

impl DataMatrix {
    pub fn new(labels: Vec<VertexId>, rows: Vec<Vec<f64>>) -> Result<Self, OracleError> {
        if rows.is_empty() {
            return Err(OracleError::Data("at least one row is required".into()));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(OracleError::Data("column labels must be unique".into()));
        }
        let cols = labels.len();
        let mut values = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(OracleError::Data(format!("row {} has {} values, expected {cols}", i + 1, row.len())));
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                return Err(OracleError::Data(format!("row {} has non-finite value {bad}", i + 1)));
            }
            values.extend_from_slice(row);
        }
        Ok(DataMatrix { labels, values, rows: rows.len(), covariance: OnceLock::new() })
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let c = self.labels.len();
        &self.values[i * c..(i + 1) * c]
    }

    pub fn column_index(&self, label: &str) -> Result<usize, OracleError> {
        self.labels
            .iter()
            .position(|l| l.as_str() == label)
            .ok_or_else(|| OracleError::Graph(GraphError::UnknownVertex(label.to_owned())))
    }

    /// Sample covariance (divisor `N - 1`), computed once.
    pub fn covariance(&self) -> &DMatrix<f64> {
        self.covariance.get_or_init(|| {
            let (n, c) = (self.rows, self.labels.len());
            let mut mean = vec![0.0; c];
            for i in 0..n {
                for (m, v) in mean.iter_mut().zip(self.row(i)) {
                    *m += v;
                }
            }
            mean.iter_mut().for_each(|m| *m /= n as f64);
            let mut cov = DMatrix::zeros(c, c);
            for i in 0..n {
                let row = self.row(i);
                for a in 0..c {
                    let da = row[a] - mean[a];
                    for b in a..c {
                        cov[(a, b)] += da * (row[b] - mean[b]);
                    }
                }
            }
            let denom = if n > 1 { (n - 1) as f64 } else { 1.0 };
            for a in 0..c {
                for b in a..c {
                    let v = cov[(a, b)] / denom;
                    cov[(a, b)] = v;
                    cov[(b, a)] = v;
                }
            }
            cov
        })
    }

    /// Reads CSV: a header row of labels, then numeric rows.
    pub fn from_csv<R: io::Read>(reader: R) -> Result<Self, OracleError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
        let labels: Vec<VertexId> = rdr.headers()?.iter().map(VertexId::from).collect();
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|f| {
                    if f.is_empty() {
                        return Err(OracleError::Data(format!("row {}: missing value", i + 1)));
                    }
                    f.parse::<f64>().map_err(|_| OracleError::Data(format!("row {}: `{f}` is not a number", i + 1)))
                })
                .collect::<Result<Vec<f64>, _>>()?;
            rows.push(row);
        }
        DataMatrix::new(labels, rows)
    }

    pub fn write_csv<W: io::Write>(&self, writer: W) -> Result<(), OracleError> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(self.labels.iter().map(VertexId::as_str))?;
        for i in 0..self.rows {
            w.write_record(self.row(i).iter().map(|v| format!("{v}")))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Sample partial correlation of `x` and `y` given `s`, by labels.
    pub fn partial_correlation(&self, x: &str, y: &str, s: &[&str]) -> Result<f64, OracleError> {
        let (xi, yi) = (self.column_index(x)?, self.column_index(y)?);
        let si = s.iter().map(|l| self.column_index(l)).collect::<Result<Vec<_>, _>>()?;
        if self.rows <= si.len() + 2 {
            return Err(OracleError::InsufficientRows { needed: si.len() + 2, have: self.rows });
        }
        partial_correlation(self.covariance(), xi, yi, &si)
    }
}

/// Relative pivot below which a covariance block counts as singular.
const SINGULAR_TOL: f64 = 1e-12;

/// Partial correlation of `x`, `y` given `s` from a covariance matrix, via
/// the conditional covariance `Σ_ab − Σ_as Σ_ss⁻¹ Σ_sa` of `{x, y}` on `s`.
///
/// Fails with [`OracleError::Singular`] when `Σ_ss` is singular or when `x`
/// or `y` is an exact linear function of `s`.
pub fn partial_correlation(cov: &DMatrix<f64>, x: usize, y: usize, s: &[usize]) -> Result<f64, OracleError> {
    let ab = [x, y];
    let mut cond = DMatrix::from_fn(2, 2, |i, j| cov[(ab[i], ab[j])]);
    if !s.is_empty() {
        let k = s.len();
        let sss = DMatrix::from_fn(k, k, |i, j| cov[(s[i], s[j])]);
        let scale = (0..k).map(|i| sss[(i, i)]).fold(0.0_f64, f64::max);
        let chol = sss.clone().cholesky().ok_or(OracleError::Singular)?;
        let l = chol.l();
        if scale <= 0.0 || (0..k).any(|i| l[(i, i)] * l[(i, i)] <= SINGULAR_TOL * scale) {
            return Err(OracleError::Singular);
        }
        let sab = DMatrix::from_fn(k, 2, |i, j| cov[(s[i], ab[j])]);
        let solved = chol.solve(&sab);
        cond -= sab.transpose() * solved;
    }
    let (vx, vy) = (cond[(0, 0)], cond[(1, 1)]);
    if vx <= SINGULAR_TOL * cov[(x, x)].abs() || vy <= SINGULAR_TOL * cov[(y, y)].abs() || vx <= 0.0 || vy <= 0.0 {
        return Err(OracleError::Singular);
    }
    Ok((cond[(0, 1)] / (vx * vy).sqrt()).clamp(-1.0, 1.0))
}

/// The same quantity by the order-reduction recursion
/// `ρ_xy·Sz = (ρ_xy·S − ρ_xz·S ρ_yz·S) / √((1 − ρ²_xz·S)(1 − ρ²_yz·S))`.
/// Exponential in `|s|`; kept as an independent check.
pub fn partial_correlation_recursive(cov: &DMatrix<f64>, x: usize, y: usize, s: &[usize]) -> Result<f64, OracleError> {
    match s.split_last() {
        None => {
            let denom = (cov[(x, x)] * cov[(y, y)]).sqrt();
            if denom <= 0.0 {
                return Err(OracleError::Singular);
            }
            Ok((cov[(x, y)] / denom).clamp(-1.0, 1.0))
        }
        Some((&z, rest)) => {
            let rxy = partial_correlation_recursive(cov, x, y, rest)?;
            let rxz = partial_correlation_recursive(cov, x, z, rest)?;
            let ryz = partial_correlation_recursive(cov, y, z, rest)?;
            let denom = ((1.0 - rxz * rxz) * (1.0 - ryz * ryz)).sqrt();
            if denom <= SINGULAR_TOL.sqrt() {
                return Err(OracleError::Singular);
            }
            Ok(((rxy - rxz * ryz) / denom).clamp(-1.0, 1.0))
        }
    }
}

/// Fisher z statistic `½ ln((1 + r)/(1 − r)) · √(N − |s| − 3)`.
pub fn fisher_z(r: f64, samples: usize, set_size: usize) -> Result<f64, OracleError> {
    if samples < set_size + 4 {
        return Err(OracleError::InsufficientRows { needed: set_size + 3, have: samples });
    }
    let dof = (samples - set_size - 3) as f64;
    Ok(r.atanh() * dof.sqrt())
}

/// Two-sided critical value `Φ⁻¹(1 − α/2)`.
pub fn critical_value(alpha: f64) -> Result<f64, OracleError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(OracleError::BadAlpha(alpha));
    }
    let normal = Normal::standard();
    Ok(normal.inverse_cdf(1.0 - alpha / 2.0))
}

/// Independence decision for a given sample partial correlation. `|r| = 1`
/// gives an infinite statistic and therefore dependence.
pub fn fisher_z_independent(r: f64, samples: usize, set_size: usize, alpha: f64) -> Result<bool, OracleError> {
    let crit = critical_value(alpha)?;
    let z = fisher_z(r, samples, set_size)?;
    Ok(z.is_finite() && z.abs() <= crit)
}

/// Statistical oracle: Fisher-z test on sample partial correlations.
#[derive(Debug)]
pub struct FisherZOracle {
    data: DataMatrix,
    alpha: f64,
    critical: f64,
    vertices: Vec<VertexId>,
    /// column of `vertices[i]` in `data`
    columns: Vec<usize>,
    singular: AtomicUsize,
}

impl FisherZOracle {
    pub fn new(data: DataMatrix, alpha: f64) -> Result<Self, OracleError> {
        let critical = critical_value(alpha)?;
        let mut order: Vec<(VertexId, usize)> = data.labels().iter().cloned().zip(0..).collect();
        order.sort();
        let (vertices, columns) = order.into_iter().unzip();
        Ok(FisherZOracle { data, alpha, critical, vertices, columns, singular: AtomicUsize::new(0) })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn data(&self) -> &DataMatrix {
        &self.data
    }

    /// How many queries hit a singular covariance block (and were
    /// answered "dependent").
    pub fn singular_count(&self) -> usize {
        self.singular.load(Ordering::Relaxed)
    }
}

impl IndependenceOracle for FisherZOracle {
    fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    fn is_independent(&self, q: &CiQuery) -> Result<bool, OracleError> {
        let n = self.vertices.len();
        if q.x >= n || q.y >= n || q.s.iter().any(|&v| v >= n) {
            return Err(OracleError::InvalidQuery("vertex index out of range".into()));
        }
        let rows = self.data.rows();
        if rows < q.s.len() + 4 {
            return Err(OracleError::InsufficientRows { needed: q.s.len() + 3, have: rows });
        }
        let s: Vec<usize> = q.s.iter().map(|&v| self.columns[v]).collect();
        let r = match partial_correlation(self.data.covariance(), self.columns[q.x], self.columns[q.y], &s) {
            Ok(r) => r,
            Err(OracleError::Singular) => {
                self.singular.fetch_add(1, Ordering::Relaxed);
                log::warn!("singular covariance for {}; treating as dependent", q.display(&self.vertices));
                return Ok(false);
            }
            Err(e) => return Err(e),
        };
        let z = fisher_z(r, rows, q.s.len())?;
        Ok(z.is_finite() && z.abs() <= self.critical)
    }
}
