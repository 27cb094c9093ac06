//! Brute-force walk simulation: dense Hamiltonian, full eigendecomposition,
//! exact evolution at arbitrary times, and peak extraction.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::design::BipartiteGraph;
use crate::error::{Error, Result};
use crate::numeric::golden_max;
use crate::predictor::SearchPrediction;

/// Minimum number of grid samples for [`success_curve`].
pub const MIN_SAMPLES: usize = 100;
pub const DEFAULT_SAMPLES: usize = 1000;
/// Time resolution of the refined peak.
pub const PEAK_TIME_TOL: f64 = 1e-6;

/// `H = −γA − Σ_{w∈W} |w⟩⟨w|`.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub matrix: DMatrix<f64>,
    pub gamma: f64,
    pub marked: Vec<usize>,
}

pub fn assemble_h(g: &BipartiteGraph, gamma: f64, marked: &[usize]) -> Result<Hamiltonian> {
    if marked.is_empty() {
        return Err(Error::EmptyMarkedSet);
    }
    if let Some(&index) = marked.iter().find(|&&w| w >= g.n()) {
        return Err(Error::BadIndex { index, n: g.n() });
    }
    let mut h = walk_hamiltonian(g, gamma)?;
    for &w in marked {
        h.matrix[(w, w)] = -1.0;
    }
    h.marked = marked.to_vec();
    Ok(h)
}

/// `−γA` with nothing marked.
pub fn walk_hamiltonian(g: &BipartiteGraph, gamma: f64) -> Result<Hamiltonian> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidArgument(format!("gamma must be finite and >= 0, got {gamma}")));
    }
    let mut matrix = g.adjacency();
    matrix *= -gamma;
    // Avoid -0.0 entries so H + γA compares exactly against the projector.
    matrix.apply(|x| {
        if *x == 0.0 {
            *x = 0.0;
        }
    });
    Ok(Hamiltonian {
        matrix,
        gamma,
        marked: Vec::new(),
    })
}

/// Eigenvalues ascending with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl Eigen {
    /// `max |H − VΘVᵀ|`.
    pub fn reconstruction_error(&self, h: &DMatrix<f64>) -> f64 {
        let recon = &self.vectors * DMatrix::from_diagonal(&self.values) * self.vectors.transpose();
        (recon - h).amax()
    }

    /// `max |VᵀV − I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.values.len();
        (self.vectors.transpose() * &self.vectors - DMatrix::<f64>::identity(n, n)).amax()
    }
}

pub fn eigh(h: &DMatrix<f64>) -> Result<Eigen> {
    if !h.is_square() {
        return Err(Error::InvalidArgument(format!(
            "eigh needs a square matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let n = h.nrows();
    let se = SymmetricEigen::try_new(h.clone(), f64::EPSILON, 0).ok_or(Error::ConvergenceFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| se.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    Ok(Eigen { values, vectors })
}

pub fn uniform_state(n: usize) -> DVector<Complex64> {
    DVector::from_element(n, Complex64::new(1.0 / (n as f64).sqrt(), 0.0))
}

/// `ψ(t) = Σ_j e^{−iθ_j t} v_j (v_jᵀ ψ₀)`.
pub fn evolve(eig: &Eigen, psi0: &DVector<Complex64>, t: f64) -> DVector<Complex64> {
    if t == 0.0 {
        return psi0.clone();
    }
    let n = eig.values.len();
    let v = &eig.vectors;
    let coeffs: Vec<Complex64> = (0..n)
        .map(|j| {
            let proj: Complex64 = v.column(j).iter().zip(psi0.iter()).map(|(a, b)| b * a).sum();
            proj * Complex64::from_polar(1.0, -eig.values[j] * t)
        })
        .collect();
    DVector::from_fn(n, |i, _| {
        (0..n).map(|j| coeffs[j] * v[(i, j)]).sum::<Complex64>()
    })
}

#[derive(Debug, Clone, Copy)]
pub struct CurveOptions {
    pub t_max: f64,
    pub samples: usize,
    pub per_vertex: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvolutionResult {
    pub gamma: f64,
    pub marked: Vec<usize>,
    pub t_grid: Vec<f64>,
    /// Total marked probability at each grid time.
    pub p_curve: Vec<f64>,
    pub t_peak: f64,
    pub p_peak: f64,
    /// One curve per marked vertex, in `marked` order, when requested.
    pub per_vertex: Option<Vec<Vec<f64>>>,
    /// Largest `|‖ψ(t)‖ − 1|` over the grid.
    pub max_norm_error: f64,
}

/// Precomputed spectral data for fast evaluation of marked amplitudes.
struct Propagator {
    values: Vec<f64>,
    /// `v_jᵀ ψ₀` (real because ψ₀ is uniform).
    weights: Vec<f64>,
    /// Rows of the eigenvector matrix at the marked vertices.
    rows: Vec<Vec<f64>>,
    vectors: DMatrix<f64>,
}

impl Propagator {
    fn new(eig: Eigen, marked: &[usize]) -> Self {
        let n = eig.values.len();
        let s = 1.0 / (n as f64).sqrt();
        let weights = (0..n).map(|j| eig.vectors.column(j).sum() * s).collect();
        let rows = marked
            .iter()
            .map(|&w| eig.vectors.row(w).iter().copied().collect())
            .collect();
        Propagator {
            values: eig.values.iter().copied().collect(),
            weights,
            rows,
            vectors: eig.vectors,
        }
    }

    fn phases(&self, t: f64) -> Vec<Complex64> {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(&th, &c)| Complex64::from_polar(c, -th * t))
            .collect()
    }

    fn marked_probs(&self, t: f64) -> Vec<f64> {
        let ph = self.phases(t);
        self.rows
            .iter()
            .map(|row| row.iter().zip(&ph).map(|(&a, z)| z * a).sum::<Complex64>().norm_sqr())
            .collect()
    }

    fn total(&self, t: f64) -> f64 {
        self.marked_probs(t).iter().sum()
    }

    fn norm_error(&self, t: f64) -> f64 {
        let ph = DVector::from_vec(self.phases(t));
        let re = &self.vectors * ph.map(|z| z.re);
        let im = &self.vectors * ph.map(|z| z.im);
        (re.norm_squared() + im.norm_squared()).sqrt() - 1.0
    }
}

/// Samples the total marked probability on a uniform grid over `[0, t_max]`
/// starting from the uniform superposition, then refines the global
/// maximum by golden-section search on the neighbouring grid cells.
pub fn success_curve(
    g: &BipartiteGraph,
    gamma: f64,
    marked: &[usize],
    opts: CurveOptions,
) -> Result<EvolutionResult> {
    if !opts.t_max.is_finite() || opts.t_max < 0.0 {
        return Err(Error::InvalidArgument(format!("t_max must be finite and >= 0, got {}", opts.t_max)));
    }
    if opts.t_max > 0.0 && opts.samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_SAMPLES} samples, got {}",
            opts.samples
        )));
    }
    let h = assemble_h(g, gamma, marked)?;
    let prop = Propagator::new(eigh(&h.matrix)?, marked);

    let count = if opts.t_max == 0.0 { 1 } else { opts.samples };
    let t_grid: Vec<f64> = if count == 1 {
        vec![0.0]
    } else {
        (0..count)
            .map(|i| opts.t_max * i as f64 / (count - 1) as f64)
            .collect()
    };
    let rows: Vec<(Vec<f64>, f64)> = t_grid
        .par_iter()
        .map(|&t| (prop.marked_probs(t), prop.norm_error(t).abs()))
        .collect();
    let p_curve: Vec<f64> = rows.iter().map(|(p, _)| p.iter().sum()).collect();
    let max_norm_error = rows.iter().map(|r| r.1).fold(0.0, f64::max);

    let imax = p_curve
        .iter()
        .enumerate()
        .fold(0, |best, (i, &p)| if p > p_curve[best] { i } else { best });
    let (t_peak, p_peak) = if count == 1 {
        (0.0, p_curve[0])
    } else {
        let lo = t_grid[imax.saturating_sub(1)];
        let hi = t_grid[(imax + 1).min(count - 1)];
        let (t, p) = golden_max(|t| prop.total(t), lo, hi, PEAK_TIME_TOL);
        if p >= p_curve[imax] {
            (t, p)
        } else {
            (t_grid[imax], p_curve[imax])
        }
    };

    let per_vertex = opts.per_vertex.then(|| {
        (0..marked.len())
            .map(|w| rows.iter().map(|(p, _)| p[w]).collect())
            .collect()
    });

    Ok(EvolutionResult {
        gamma,
        marked: marked.to_vec(),
        t_grid,
        p_curve,
        t_peak,
        p_peak,
        per_vertex,
        max_norm_error,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TierComparison {
    pub tier: String,
    pub t_opt: f64,
    pub p_succ: Option<f64>,
    /// `|t_peak − t_opt| / t_opt`.
    pub t_rel_error: f64,
    /// `|p_peak − p_succ| / p_succ`.
    pub p_rel_error: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub case: String,
    pub gamma: f64,
    pub t_peak: f64,
    pub p_peak: f64,
    pub tiers: Vec<TierComparison>,
}

impl ComparisonReport {
    pub fn tier(&self, name: &str) -> Option<&TierComparison> {
        self.tiers.iter().find(|t| t.tier == name)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// Relative errors of the simulated peak against every prediction tier.
pub fn compare(pred: &SearchPrediction, emp: &EvolutionResult) -> ComparisonReport {
    let mut tiers = Vec::new();
    let mut push = |tier: &str, t_opt: f64, p_succ: Option<f64>| {
        tiers.push(TierComparison {
            tier: tier.into(),
            t_opt,
            p_succ,
            t_rel_error: rel(emp.t_peak, t_opt),
            p_rel_error: p_succ.map(|p| rel(emp.p_peak, p)),
        });
    };
    push("headline", pred.t_opt, Some(pred.p_succ));
    if let Some(f) = &pred.finite_v {
        push("finite_v", f.t_opt, Some(f.p_succ));
    }
    push("leading", pred.leading.t_opt, Some(pred.leading.p_succ));
    if let Some(p) = &pred.published {
        push("published", p.t_opt, Some(p.p_succ));
    }
    if let Some(r) = &pred.eps_root {
        push("root", std::f64::consts::FRAC_PI_2 / r.half_gap, None);
    }
    ComparisonReport {
        case: pred.case.label(),
        gamma: emp.gamma,
        t_peak: emp.t_peak,
        p_peak: emp.p_peak,
        tiers,
    }
}
