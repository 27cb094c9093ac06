//! Closed-form spectral decomposition of the incidence graph of a symmetric
//! design.
//!
//! For a symmetric design (`v = b`, `r = k`) with `θ = √(r − λ₂) > 0` the
//! adjacency matrix `A = [[0, N], [Nᵀ, 0]]` has exactly four eigenvalues
//! `k > θ > −θ > −k` with multiplicities `1, v−1, v−1, 1`. Writing
//! `P = I − J/v` and `M = (vN − kJ)/(vθ)`, the idempotents are
//!
//! ```text
//! E_{±k} = 1/(2v) [[J, ±J], [±J, J]]
//! E_{±θ} = 1/2    [[P, ±M], [±Mᵀ, P]]
//! ```
//!
//! Every entry depends only on whether the two vertices coincide, share a
//! part, or are (non-)incident, so entries are served in O(1) and dense
//! matrices are only materialized for moderate `n`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::design::IncidenceStructure;
use crate::dynamics::eigh;
use crate::error::{Error, Result};

/// Closed-form algebra tolerance.
pub const TAU_ALG: f64 = 1e-10;

/// Dense idempotents are built eagerly up to this many vertices.
pub const DENSE_LIMIT: usize = 2000;

/// Numerical-eigensolver tolerance for an `n`-vertex graph.
pub fn tau_num(n: usize) -> f64 {
    1e-8 * n as f64
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    incidence: IncidenceStructure,
    v: usize,
    k: f64,
    lambda2: f64,
    theta: f64,
    dense: Option<[DMatrix<f64>; 4]>,
}

/// Checks the hypotheses shared by everything built on the closed form:
/// symmetric, `t ≥ 2` (or balanced by counting), and `r > λ₂`.
pub(crate) fn symmetric_params(inc: &IncidenceStructure) -> Result<(u64, u64, u64)> {
    let p = inc.params();
    if !p.is_symmetric() || inc.num_points() != inc.num_blocks() {
        return Err(Error::NotSymmetricDesign {
            v: p.v,
            b: inc.num_blocks() as u64,
            r: p.r,
            k: p.k,
        });
    }
    let l2 = p.lambda2()?;
    if p.r <= l2 {
        return Err(Error::DegenerateDesign(format!(
            "r = lambda_2 = {l2} (k = v, complete bipartite graph); the idempotents of the \
             +-sqrt(r - lambda_2) eigenspaces are undefined"
        )));
    }
    Ok((p.v, p.k, l2))
}

pub fn spectral_decomposition(inc: &IncidenceStructure) -> Result<SpectralDecomposition> {
    let (v, k, l2) = symmetric_params(inc)?;
    let mut dec = SpectralDecomposition {
        incidence: inc.clone(),
        v: v as usize,
        k: k as f64,
        lambda2: l2 as f64,
        theta: ((k - l2) as f64).sqrt(),
        dense: None,
    };
    if dec.n() <= DENSE_LIMIT {
        dec.dense = Some([0, 1, 2, 3].map(|l| dec.materialize(l)));
    }
    Ok(dec)
}

impl SpectralDecomposition {
    pub fn v(&self) -> usize {
        self.v
    }

    pub fn n(&self) -> usize {
        2 * self.v
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    /// `√(r − λ₂)`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn incidence(&self) -> &IncidenceStructure {
        &self.incidence
    }

    /// `[k, θ, −θ, −k]`, descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        [self.k, self.theta, -self.theta, -self.k]
    }

    pub fn multiplicities(&self) -> [usize; 4] {
        [1, self.v - 1, self.v - 1, 1]
    }

    /// `⟨w|E_l|w2⟩` from the closed form.
    pub fn idempotent_entry(&self, l: usize, w: usize, w2: usize) -> Result<f64> {
        if l > 3 {
            return Err(Error::IndexOutOfRange { index: l, limit: 3 });
        }
        for x in [w, w2] {
            if x >= self.n() {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    limit: self.n() - 1,
                });
            }
        }
        Ok(self.entry(l, w, w2))
    }

    #[inline]
    pub(crate) fn entry(&self, l: usize, w: usize, w2: usize) -> f64 {
        let v = self.v;
        let vf = v as f64;
        let same_part = (w < v) == (w2 < v);
        if same_part {
            match l {
                0 | 3 => 0.5 / vf,
                _ => 0.5 * (f64::from(u8::from(w == w2)) - 1.0 / vf),
            }
        } else {
            let (p, b) = if w < v { (w, w2 - v) } else { (w2, w - v) };
            match l {
                0 => 0.5 / vf,
                3 => -0.5 / vf,
                1 => 0.5 * self.m_entry(p, b),
                _ => -0.5 * self.m_entry(p, b),
            }
        }
    }

    #[inline]
    fn m_entry(&self, point: usize, block: usize) -> f64 {
        let vf = self.v as f64;
        let n = f64::from(u8::from(self.incidence.get(point, block)));
        (vf * n - self.k) / (vf * self.theta)
    }

    /// `M = (vN − kJ) / (v√(r − λ₂))`.
    pub fn m_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.v, self.v, |i, j| self.m_entry(i, j))
    }

    /// Dense `E_l`, built from the same entry formula as
    /// [`idempotent_entry`](Self::idempotent_entry).
    pub fn materialize(&self, l: usize) -> DMatrix<f64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |i, j| self.entry(l, i, j))
    }

    /// The cached dense idempotent, when `n ≤ DENSE_LIMIT`.
    pub fn idempotent(&self, l: usize) -> Option<&DMatrix<f64>> {
        self.dense.as_ref().and_then(|d| d.get(l))
    }

    fn dense_or_build(&self, l: usize) -> std::borrow::Cow<'_, DMatrix<f64>> {
        match self.idempotent(l) {
            Some(m) => std::borrow::Cow::Borrowed(m),
            None => std::borrow::Cow::Owned(self.materialize(l)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub name: String,
    pub max_abs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    /// The seven matrix identities behind the closed form.
    pub identities: Vec<Residual>,
    /// `E_l² − E_l`, one per eigenvalue.
    pub idempotency: Vec<Residual>,
    /// Largest entry of `E_i E_j` over `i ≠ j`.
    pub orthogonality: f64,
    /// `Σ E_l − I`.
    pub completeness: f64,
    /// `Σ φ_l E_l − A`.
    pub reconstruction: f64,
    pub traces: [f64; 4],
    /// Largest deviation of the traces from `1, v−1, v−1, 1`.
    pub trace_error: f64,
}

impl ResidualReport {
    pub fn all(&self) -> Vec<Residual> {
        let mut out = self.identities.clone();
        out.extend(self.idempotency.iter().cloned());
        for (name, x) in [
            ("orthogonality", self.orthogonality),
            ("completeness", self.completeness),
            ("reconstruction", self.reconstruction),
            ("traces", self.trace_error),
        ] {
            out.push(Residual {
                name: name.into(),
                max_abs: x,
            });
        }
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.all().iter().map(|r| r.max_abs).fold(0.0, f64::max)
    }

    /// Residuals above `tol`.
    pub fn breaches(&self, tol: f64) -> Vec<Residual> {
        self.all()
            .into_iter()
            .filter(|r| r.max_abs.is_nan() || r.max_abs > tol)
            .collect()
    }
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

fn residual(name: &str, parts: &[DMatrix<f64>]) -> Residual {
    Residual {
        name: name.into(),
        max_abs: parts.iter().map(max_abs).fold(0.0, f64::max),
    }
}

/// Evaluates every identity the closed form rests on, plus the projector
/// properties of the assembled idempotents.
pub fn verify_identities(inc: &IncidenceStructure) -> Result<ResidualReport> {
    let dec = spectral_decomposition(inc)?;
    let v = dec.v;
    let vf = v as f64;
    let k = dec.k;
    let order = dec.theta * dec.theta;

    let j = DMatrix::from_element(v, v, 1.0);
    let id = DMatrix::<f64>::identity(v, v);
    let p = &id - &j / vf;
    let n = inc.to_dmatrix();
    let nt = n.transpose();
    let m = dec.m_matrix();
    let mt = m.transpose();
    let kj = &j * k;
    let gram = &p * order + &j * (k * k / vf);

    let identities = vec![
        residual("J^2 = vJ", &[&j * &j - &j * vf]),
        residual("(I - J/v)^2 = I - J/v", &[&p * &p - &p]),
        residual(
            "JN = NJ = N^T J = J N^T = kJ",
            &[&j * &n - &kj, &n * &j - &kj, &nt * &j - &kj, &j * &nt - &kj],
        ),
        residual("JM = MJ = M^T J = J M^T = 0", &[&j * &m, &m * &j, &mt * &j, &j * &mt]),
        residual(
            "N^T N = N N^T = (r - lambda_2)(I - J/v) + k^2 J/v",
            &[&nt * &n - &gram, &n * &nt - &gram],
        ),
        residual("M M^T = M^T M = I - J/v", &[&m * &mt - &p, &mt * &m - &p]),
        residual("J(I - J/v) = 0", &[&j * &p]),
    ];

    let es: Vec<_> = (0..4).map(|l| dec.dense_or_build(l)).collect();
    let names = ["E_k", "E_theta", "E_-theta", "E_-k"];
    let idempotency = es
        .iter()
        .zip(names)
        .map(|(e, name)| residual(&format!("{name}^2 = {name}"), &[e.as_ref() * e.as_ref() - e.as_ref()]))
        .collect();

    let mut orthogonality = 0.0f64;
    for a in 0..4 {
        for b in (a + 1)..4 {
            orthogonality = orthogonality.max(max_abs(&(es[a].as_ref() * es[b].as_ref())));
        }
    }

    let nn = dec.n();
    let mut sum = DMatrix::<f64>::zeros(nn, nn);
    let mut recon = DMatrix::<f64>::zeros(nn, nn);
    for (e, phi) in es.iter().zip(dec.eigenvalues()) {
        sum += e.as_ref();
        recon += e.as_ref() * phi;
    }
    let completeness = max_abs(&(sum - DMatrix::<f64>::identity(nn, nn)));
    let adjacency = crate::design::to_bipartite(inc).adjacency();
    let reconstruction = max_abs(&(recon - adjacency));

    let traces = [0, 1, 2, 3].map(|l| es[l].trace());
    let trace_error = traces
        .iter()
        .zip(dec.multiplicities())
        .map(|(t, m)| (t - m as f64).abs())
        .fold(0.0, f64::max);

    Ok(ResidualReport {
        identities,
        idempotency,
        orthogonality,
        completeness,
        reconstruction,
        traces,
        trace_error,
    })
}

/// Closed-form spectrum against a numerical eigensolve of `A`.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumCheck {
    /// Expected eigenvalues with multiplicity, ascending.
    pub expected: Vec<f64>,
    /// Numerical eigenvalues, ascending.
    pub numerical: Vec<f64>,
    pub max_error: f64,
    pub tolerance: f64,
}

impl SpectrumCheck {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

pub fn spectrum_check(inc: &IncidenceStructure) -> Result<SpectrumCheck> {
    let dec = spectral_decomposition(inc)?;
    let mut expected = Vec::with_capacity(dec.n());
    for (phi, mult) in dec.eigenvalues().iter().zip(dec.multiplicities()).rev() {
        expected.extend(std::iter::repeat(*phi).take(mult));
    }
    let adjacency = crate::design::to_bipartite(inc).adjacency();
    let numerical: Vec<f64> = eigh(&adjacency)?.values.iter().copied().collect();
    let max_error = expected
        .iter()
        .zip(&numerical)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(SpectrumCheck {
        expected,
        numerical,
        max_error,
        tolerance: tau_num(dec.n()),
    })
}
