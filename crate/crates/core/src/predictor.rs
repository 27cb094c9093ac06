//! Closed-form search predictions and the reduced eigenvalue condition.
//!
//! With `H = −γA − Σ_{w∈W}|w⟩⟨w|`, an eigenvalue `λ` of `H` in the marked
//! subspace solves `det Λ_λ = 0`, where
//!
//! ```text
//! (Λ_λ)_{ww'} = δ_{ww'} + Σ_l ⟨w|E_l|w'⟩ / (λ + γφ_l).
//! ```
//!
//! For every configuration handled here the `W`-block of each idempotent
//! has constant row sums, so the all-ones vector is an eigenvector of
//! `Λ_λ` and the relevant factor of the determinant is the scalar
//!
//! ```text
//! f(λ) = 1 + Σ_l R_l / (λ + γφ_l),    R_l = Σ_{x∈W} ⟨w|E_l|x⟩.
//! ```
//!
//! Expanding `f` around `λ = −γk` to second order gives the coupling
//! `γ = Σ_x S⁽¹⁾_{wx}` that cancels the constant term and the half-gap
//! `ε = γ √(R_0 / Σ_x S⁽²⁾_{wx})`, with
//! `S⁽ʲ⁾_{wx} = Σ_{l≥1} ⟨w|E_l|x⟩ / (k − φ_l)ʲ`.
//!
//! Predictions come in tiers:
//!
//! * `finite_v`: the expressions above evaluated exactly at the given `v`.
//! * `leading`: their large-`v` limits.
//! * `published`: the closed forms as commonly quoted for each case. For
//!   the cross-part cases these quoted couplings carry a sign error in the
//!   `E_{−θ}` cross block and do not tune the avoided crossing; they are
//!   reported for comparison only.
//! * `eps_root`: exact roots of `f` on both sides of `−γk`.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::design::{IncidenceStructure, Part};
use crate::error::{Error, Result};
use crate::marking::{MarkedConfig, MarkedKind, PairRelation};
use crate::numeric::bisect;
use crate::spectral::{symmetric_params, SpectralDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Exactness {
    ExactFiniteV,
    LeadingOrder,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FieldExactness {
    pub gamma: Exactness,
    pub eps: Exactness,
    pub t_opt: Exactness,
    pub p_succ: Exactness,
}

/// One consistent set of `ε`, `t_opt = π/(2ε)` and `p_succ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tier {
    pub eps: f64,
    pub t_opt: f64,
    pub p_succ: f64,
}

impl Tier {
    fn new(eps: f64, p_succ: f64) -> Self {
        Tier {
            eps,
            t_opt: FRAC_PI_2 / eps,
            p_succ,
        }
    }
}

/// The quoted closed forms for a case, including their own coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Published {
    pub gamma: f64,
    pub eps: f64,
    pub t_opt: f64,
    pub p_succ: f64,
}

/// Roots of the reduced condition at `λ = −γk + eps_plus` and
/// `λ = −γk − eps_minus`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsRoot {
    pub eps_plus: f64,
    pub eps_minus: f64,
    /// `(eps_plus + eps_minus) / 2`.
    pub half_gap: f64,
}

impl EpsRoot {
    /// The two eigenvalues of `H` the roots correspond to, ascending.
    pub fn eigenvalues(&self, gamma: f64, k: f64) -> (f64, f64) {
        (-gamma * k - self.eps_minus, -gamma * k + self.eps_plus)
    }
}

/// Row sums over `W` of `S⁽¹⁾` and `S⁽²⁾`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RowSums {
    pub s1: f64,
    pub s2: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchPrediction {
    pub case: MarkedKind,
    pub v: u64,
    pub k: u64,
    pub lambda2: u64,
    /// `|W|`.
    pub marked: usize,
    pub gamma: f64,
    pub eps: f64,
    pub t_opt: f64,
    pub p_succ: f64,
    pub exactness: FieldExactness,
    pub finite_v: Option<Tier>,
    pub leading: Tier,
    pub published: Option<Published>,
    /// Single-vertex sums `S1 = S⁽¹⁾_{ww}`, `S2 = S⁽²⁾_{ww}`.
    pub s1: Option<f64>,
    pub s2: Option<f64>,
    /// Off-diagonal `S⁽¹⁾_{ww'}`, `S⁽²⁾_{ww'}` for pairs.
    pub pair_s1: Option<f64>,
    pub pair_s2: Option<f64>,
    pub row_sums: Option<RowSums>,
    /// Amplitude of each marked vertex in the avoided-crossing eigenvectors.
    pub c: Option<f64>,
    pub c_published: Option<f64>,
    /// `⟨ψ(0)|λ⁻⟩` for the lower avoided-crossing eigenvector.
    pub overlap: Option<f64>,
    pub eps_root: Option<EpsRoot>,
}

/// Design constants the closed forms need.
#[derive(Debug, Clone, Copy)]
struct Consts {
    v: f64,
    k: f64,
    l2: f64,
    theta: f64,
    /// `k² − r + λ₂`.
    d: f64,
    raw: (u64, u64, u64),
}

fn consts(inc: &IncidenceStructure) -> Result<Consts> {
    let (v, k, l2) = symmetric_params(inc)?;
    let (vf, kf, l2f) = (v as f64, k as f64, l2 as f64);
    let d = kf * kf - kf + l2f;
    if kf < 2.0 || d <= 0.0 {
        return Err(Error::DegenerateDesign(format!("k = {k}: the closed forms need k >= 2")));
    }
    Ok(Consts {
        v: vf,
        k: kf,
        l2: l2f,
        theta: (kf - l2f).sqrt(),
        d,
        raw: (v, k, l2),
    })
}

/// `(S⁽¹⁾, S⁽²⁾)` for the four vertex relations, in closed form.
#[derive(Debug, Clone, Copy)]
struct RelationSums {
    same_vertex: (f64, f64),
    same_part: (f64, f64),
    adjacent: (f64, f64),
    cross_nonadjacent: (f64, f64),
}

fn relation_sums(c: &Consts) -> RelationSums {
    let Consts { v, k, theta, d, .. } = *c;
    let t2 = theta * theta;
    let e1 = 1.0 / (4.0 * v * k);
    let e2 = 1.0 / (8.0 * v * k * k);
    let cross = |n: f64| ((v * n - k) / (v * d), 2.0 * k * (v * n - k) / (v * d * d));
    let adj = cross(1.0);
    let non = cross(0.0);
    RelationSums {
        same_vertex: ((v - 1.0) * k / (v * d) + e1, (v - 1.0) * (k * k + t2) / (v * d * d) + e2),
        same_part: (-k / (v * d) + e1, -(k * k + t2) / (v * d * d) + e2),
        adjacent: (adj.0 - e1, adj.1 - e2),
        cross_nonadjacent: (non.0 - e1, non.1 - e2),
    }
}

/// Numbers of other marked vertices a marked vertex sees in each relation.
#[derive(Debug, Clone, Copy)]
struct RelationCounts {
    same_part: f64,
    adjacent: f64,
    cross_nonadjacent: f64,
}

impl RelationCounts {
    fn of(kind: &MarkedKind) -> Result<Self> {
        let (s, a, n) = match *kind {
            MarkedKind::Single => (0, 0, 0),
            MarkedKind::Pair { relation } => match relation {
                PairRelation::Adjacent => (0, 1, 0),
                PairRelation::CrossNonadjacent => (0, 0, 1),
                PairRelation::SamePart => (1, 0, 0),
            },
            MarkedKind::SamePart { m, .. } => (m - 1, 0, 0),
            MarkedKind::Biregular { m, d } => (m - 1, d, m - d),
            MarkedKind::Unclassified => {
                return Err(Error::UnsupportedConfiguration(
                    "marked set matches no closed-form case; simulate it instead".into(),
                ))
            }
        };
        Ok(RelationCounts {
            same_part: s as f64,
            adjacent: a as f64,
            cross_nonadjacent: n as f64,
        })
    }

    fn size(&self) -> f64 {
        1.0 + self.same_part + self.adjacent + self.cross_nonadjacent
    }

    fn row_sums(&self, rs: &RelationSums) -> RowSums {
        let pick = |f: fn((f64, f64)) -> f64| {
            f(rs.same_vertex)
                + self.same_part * f(rs.same_part)
                + self.adjacent * f(rs.adjacent)
                + self.cross_nonadjacent * f(rs.cross_nonadjacent)
        };
        RowSums {
            s1: pick(|x| x.0),
            s2: pick(|x| x.1),
        }
    }

    /// Row sums over `W` of the four idempotents, from the entry formulas.
    fn idempotent_rows(&self, c: &Consts) -> [f64; 4] {
        let Consts { v, k, theta, .. } = *c;
        let half_v = 0.5 / v;
        let same = 1.0 + self.same_part;
        let cross = self.adjacent + self.cross_nonadjacent;
        let m_sum = (self.adjacent * (v - k) - self.cross_nonadjacent * k) / (v * theta);
        let p_sum = 0.5 - same * half_v;
        [
            (same + cross) * half_v,
            p_sum + 0.5 * m_sum,
            p_sum - 0.5 * m_sum,
            (same - cross) * half_v,
        ]
    }
}

/// `(S⁽¹⁾_{ww'}, S⁽²⁾_{ww'})` summed over the three non-principal
/// eigenvalues, from idempotent entries.
pub fn pair_sums(dec: &SpectralDecomposition, w: usize, w2: usize) -> Result<(f64, f64)> {
    let phi = dec.eigenvalues();
    let k = phi[0];
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for (l, &eig) in phi.iter().enumerate().skip(1) {
        let gap = k - eig;
        if gap == 0.0 {
            return Err(Error::DegenerateDesign(format!("k equals eigenvalue {l}")));
        }
        let e = dec.idempotent_entry(l, w, w2)?;
        s1 += e / gap;
        s2 += e / (gap * gap);
    }
    Ok((s1, s2))
}

/// Assembles a prediction from the finite-`v` row sums of a configuration.
fn from_rows(
    c: &Consts,
    case: MarkedKind,
    counts: RelationCounts,
    leading: Tier,
    published: Published,
) -> Result<SearchPrediction> {
    let rs = relation_sums(c);
    let rows = counts.row_sums(&rs);
    let size = counts.size();
    let gamma = rows.s1;
    if gamma.is_nan() || gamma <= 0.0 || rows.s2.is_nan() || rows.s2 <= 0.0 {
        return Err(Error::DegenerateDesign(format!(
            "non-positive coupling {gamma} for {}",
            case.label()
        )));
    }
    let ek = size / (2.0 * c.v);
    let finite = Tier::new(gamma * (ek / rows.s2).sqrt(), gamma * gamma / rows.s2);
    let idem = counts.idempotent_rows(c);
    let root = eps_root_from_rows(&[c.k, c.theta, -c.theta, -c.k], &idem, gamma).ok();
    let single = matches!(case, MarkedKind::Single);
    let (head, flag) = if single {
        (finite, Exactness::ExactFiniteV)
    } else {
        (leading, Exactness::LeadingOrder)
    };
    let pair = match case {
        MarkedKind::Pair { relation } => Some(match relation {
            PairRelation::Adjacent => rs.adjacent,
            PairRelation::CrossNonadjacent => rs.cross_nonadjacent,
            PairRelation::SamePart => rs.same_part,
        }),
        _ => None,
    };
    Ok(SearchPrediction {
        case,
        v: c.raw.0,
        k: c.raw.1,
        lambda2: c.raw.2,
        marked: size as usize,
        gamma,
        eps: head.eps,
        t_opt: head.t_opt,
        p_succ: head.p_succ,
        exactness: FieldExactness {
            gamma: Exactness::ExactFiniteV,
            eps: flag,
            t_opt: flag,
            p_succ: flag,
        },
        finite_v: Some(finite),
        leading,
        published: Some(published),
        s1: Some(rs.same_vertex.0),
        s2: Some(rs.same_vertex.1),
        pair_s1: pair.map(|p| p.0),
        pair_s2: pair.map(|p| p.1),
        row_sums: Some(rows),
        c: Some(gamma / (2.0 * size * rows.s2).sqrt()),
        c_published: None,
        overlap: Some(-std::f64::consts::FRAC_1_SQRT_2),
        eps_root: root,
    })
}

fn published(gamma: f64, eps: f64, p_succ: f64) -> Published {
    Published {
        gamma,
        eps,
        t_opt: FRAC_PI_2 / eps,
        p_succ,
    }
}

/// Leading order for `m` marked vertices in each part with a `d`-regular
/// induced subgraph.
fn leading_cross(c: &Consts, m: f64, d: f64) -> Tier {
    let k = c.k;
    Tier::new(
        (k + d) * m.sqrt() / (c.v * k * (k + 1.0 + 2.0 * d)).sqrt(),
        (k + d).powi(2) / (k * (k + 1.0 + 2.0 * d)),
    )
}

/// Leading order for `m` marked vertices in one part.
fn leading_same(c: &Consts, m: f64) -> Tier {
    let k = c.k;
    Tier::new((k * m / (2.0 * c.v * (k + 1.0))).sqrt(), k / (k + 1.0))
}

/// Quoted coupling for `m` vertices per part with `d`-regular induced
/// subgraph; `(1, 1)` and `(1, 0)` are the adjacent and non-adjacent pairs.
fn published_cross_gamma(c: &Consts, m: f64, d: f64) -> f64 {
    let Consts { v, k, l2, theta, .. } = *c;
    k * (k * m - d * v + (m - v) * theta) / (v * theta * (k - l2 - k * k))
}

fn published_cross_eps(c: &Consts, m: f64, d: f64) -> f64 {
    let k = c.k;
    (m * (k + d * k.sqrt())).sqrt() / (k + 1.0).sqrt() / c.v.sqrt()
}

fn published_cross_p(c: &Consts, d: f64) -> f64 {
    let k = c.k;
    let rk = k.sqrt();
    4.0 * rk * (k + 1.0) * (d + rk).powi(3) / ((k + 1.0) * (d + 2.0 * rk) + 2.0 * d * rk).powi(2)
}

fn published_same_gamma(c: &Consts, m: f64) -> f64 {
    let Consts { v, k, l2, .. } = *c;
    let r = k;
    (-3.0 * k * k * m + 4.0 * k * k * v + l2 * m - m * r) / (4.0 * k * v * (k * k + l2 - r))
}

fn published_same_eps(c: &Consts, m: f64) -> f64 {
    let k = c.k;
    k.sqrt() * m.sqrt() / ((2.0 * c.v).sqrt() * (k + 1.0).sqrt())
}

/// Single marked vertex. For `k = v` (complete bipartite graph) the
/// spectral closed form does not apply and the large-`v` limits are
/// returned instead.
pub fn predict_single(inc: &IncidenceStructure) -> Result<SearchPrediction> {
    let c = match consts(inc) {
        Ok(c) => c,
        Err(Error::DegenerateDesign(_)) if inc.params().k == inc.params().v => {
            return Ok(complete_bipartite_single(inc.params().v))
        }
        Err(e) => return Err(e),
    };
    let rs = relation_sums(&c);
    let (s1, s2) = rs.same_vertex;
    let leading = leading_same(&c, 1.0);
    // ‖E_k|w⟩‖² = 1/(2v), so S1²/(2v·S2·‖E_k|w⟩‖²) reduces to S1²/S2.
    let ek_norm2 = 1.0 / (2.0 * c.v);
    let eps = s1 * ek_norm2.sqrt() / s2.sqrt();
    let p = s1 * s1 / (2.0 * c.v * s2 * ek_norm2);
    from_rows(
        &c,
        MarkedKind::Single,
        RelationCounts::of(&MarkedKind::Single)?,
        leading,
        published(s1, eps, p),
    )
}

fn complete_bipartite_single(v: u64) -> SearchPrediction {
    let vf = v as f64;
    let t_opt = PI * vf.sqrt() / 2f64.sqrt();
    let leading = Tier {
        eps: FRAC_PI_2 / t_opt,
        t_opt,
        p_succ: 1.0,
    };
    let lo = Exactness::LeadingOrder;
    SearchPrediction {
        case: MarkedKind::Single,
        v,
        k: v,
        lambda2: v,
        marked: 1,
        gamma: 1.0 / vf,
        eps: leading.eps,
        t_opt,
        p_succ: 1.0,
        exactness: FieldExactness {
            gamma: lo,
            eps: lo,
            t_opt: lo,
            p_succ: lo,
        },
        finite_v: None,
        leading,
        published: None,
        s1: None,
        s2: None,
        pair_s1: None,
        pair_s2: None,
        row_sums: None,
        c: None,
        c_published: None,
        overlap: None,
        eps_root: None,
    }
}

pub fn predict_pair(inc: &IncidenceStructure, relation: PairRelation) -> Result<SearchPrediction> {
    let c = consts(inc)?;
    let kind = MarkedKind::Pair { relation };
    let (leading, publ) = match relation {
        PairRelation::Adjacent => (
            leading_cross(&c, 1.0, 1.0),
            published(
                c.k * (c.k - c.v + (1.0 - c.v) * c.theta) / (c.v * c.theta * (c.k - c.l2 - c.k * c.k)),
                (c.k + c.k.sqrt()).sqrt() / (c.k + 1.0).sqrt() / c.v.sqrt(),
                {
                    let rk = c.k.sqrt();
                    4.0 * rk * (rk + 1.0).powi(3) * (c.k + 1.0)
                        / (4.0 * rk + c.k + 2.0 * c.k * rk + 1.0).powi(2)
                },
            ),
        ),
        PairRelation::CrossNonadjacent => (
            leading_cross(&c, 1.0, 0.0),
            published(
                c.k * (c.k + (1.0 - c.v) * c.theta) / (c.v * c.theta * (c.k - c.l2 - c.k * c.k)),
                c.k.sqrt() / (c.k + 1.0).sqrt() / c.v.sqrt(),
                c.k / (c.k + 1.0),
            ),
        ),
        PairRelation::SamePart => {
            let (k, v, l2) = (c.k, c.v, c.l2);
            let r = k;
            (
                leading_same(&c, 2.0),
                published(
                    (2.0 * k * k * v - 3.0 * k * k + l2 - r) / (2.0 * k * v * (k * k + l2 - r)),
                    k.sqrt() / (k + 1.0).sqrt() / v.sqrt(),
                    k / (k + 1.0),
                ),
            )
        }
    };
    from_rows(&c, kind, RelationCounts::of(&kind)?, leading, publ)
}

pub fn predict_same_part(inc: &IncidenceStructure, m: usize) -> Result<SearchPrediction> {
    let c = consts(inc)?;
    if m == 0 || m as f64 > c.v {
        return Err(Error::InvalidParameters(format!("need 1 <= m <= v, got m = {m}")));
    }
    let mf = m as f64;
    let kind = MarkedKind::SamePart { m, part: Part::Point };
    let publ = published(
        published_same_gamma(&c, mf),
        published_same_eps(&c, mf),
        c.k / (c.k + 1.0),
    );
    let mut pred = from_rows(&c, kind, RelationCounts::of(&kind)?, leading_same(&c, mf), publ)?;
    let r = c.k;
    pred.c_published = Some(c.k / (2f64.sqrt() * mf.sqrt() * (c.k * c.k - c.l2 + r).sqrt()));
    Ok(pred)
}

pub fn predict_biregular(inc: &IncidenceStructure, m: usize, d: usize) -> Result<SearchPrediction> {
    let c = consts(inc)?;
    if m == 0 || m as f64 > c.v || d > m || d as f64 > c.k {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= m <= v and 0 <= d <= min(m, k), got m = {m}, d = {d}"
        )));
    }
    let (mf, df) = (m as f64, d as f64);
    let kind = MarkedKind::Biregular { m, d };
    let publ = published(
        published_cross_gamma(&c, mf, df),
        published_cross_eps(&c, mf, df),
        published_cross_p(&c, df),
    );
    from_rows(&c, kind, RelationCounts::of(&kind)?, leading_cross(&c, mf, df), publ)
}

/// Dispatches on the configuration's classification.
pub fn predict(inc: &IncidenceStructure, config: &MarkedConfig) -> Result<SearchPrediction> {
    let mut pred = match config.kind {
        MarkedKind::Single => predict_single(inc),
        MarkedKind::Pair { relation } => predict_pair(inc, relation),
        MarkedKind::SamePart { m, .. } => predict_same_part(inc, m),
        MarkedKind::Biregular { m, d } => predict_biregular(inc, m, d),
        MarkedKind::Unclassified => Err(Error::UnsupportedConfiguration(
            "marked set matches no closed-form case; simulate it instead".into(),
        )),
    }?;
    pred.case = config.kind;
    Ok(pred)
}

/// `Λ_λ` restricted to the marked set.
pub fn lambda_matrix(
    dec: &SpectralDecomposition,
    gamma: f64,
    lam: f64,
    marked: &[usize],
) -> Result<DMatrix<f64>> {
    let phi = dec.eigenvalues();
    for (index, p) in phi.iter().enumerate() {
        if lam + gamma * p == 0.0 {
            return Err(Error::PoleAtEigenvalue { lambda: lam, index });
        }
    }
    let n = marked.len();
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut x = if i == j { 1.0 } else { 0.0 };
            for (l, p) in phi.iter().enumerate() {
                x += dec.idempotent_entry(l, marked[i], marked[j])? / (lam + gamma * p);
            }
            out[(i, j)] = x;
            out[(j, i)] = x;
        }
    }
    Ok(out)
}

/// Determinant of the `m×m` matrix with `a` on the diagonal and `b`
/// elsewhere.
pub fn structured_det(a: f64, b: f64, m: usize) -> f64 {
    assert!(m >= 1, "structured_det needs m >= 1");
    (a - b).powi(m as i32 - 1) * (a + (m as f64 - 1.0) * b)
}

/// Exact roots of the reduced condition nearest `−γk`, for a marked set
/// whose idempotent blocks have constant row sums.
pub fn eps_root(dec: &SpectralDecomposition, gamma: f64, marked: &[usize]) -> Result<EpsRoot> {
    if marked.is_empty() {
        return Err(Error::EmptyMarkedSet);
    }
    let mut rows = [0.0; 4];
    for (l, row) in rows.iter_mut().enumerate() {
        let sums = marked
            .iter()
            .map(|&w| marked.iter().map(|&x| dec.idempotent_entry(l, w, x)).sum::<Result<f64>>())
            .collect::<Result<Vec<f64>>>()?;
        let scale = sums.iter().fold(1.0f64, |a, s| a.max(s.abs()));
        if sums.iter().any(|s| (s - sums[0]).abs() > 1e-12 * scale) {
            return Err(Error::UnsupportedConfiguration(
                "idempotent row sums over the marked set are not constant".into(),
            ));
        }
        *row = sums[0];
    }
    eps_root_from_rows(&dec.eigenvalues(), &rows, gamma)
}

/// Number of log-spaced scan points used to bracket each root.
const ROOT_SCAN: usize = 400;

fn eps_root_from_rows(phi: &[f64; 4], rows: &[f64; 4], gamma: f64) -> Result<EpsRoot> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::InvalidArgument(format!("gamma must be positive, got {gamma}")));
    }
    let k = phi[0];
    let f = |lam: f64| {
        1.0 + phi
            .iter()
            .zip(rows)
            .map(|(p, r)| r / (lam + gamma * p))
            .sum::<f64>()
    };
    let centre = -gamma * k;
    // Above −γk the nearest pole is at −γθ; below it there is none.
    let plus_hi = gamma * (k - phi[1]);
    let plus = first_root(|e| f(centre + e), plus_hi * (1.0 - 1e-12))?;
    let minus = first_root(|e| f(centre - e), 1e6 * (gamma * k).max(1.0))?;
    Ok(EpsRoot {
        eps_plus: plus,
        eps_minus: minus,
        half_gap: 0.5 * (plus + minus),
    })
}

/// Smallest positive root of `g` on `(0, hi]` located by a log-spaced
/// sign-change scan followed by bisection.
fn first_root(g: impl Fn(f64) -> f64, hi: f64) -> Result<f64> {
    let lo = hi * 1e-12;
    let ratio = (hi / lo).powf(1.0 / ROOT_SCAN as f64);
    let mut a = lo;
    let mut ga = g(a);
    for _ in 0..ROOT_SCAN {
        let b = (a * ratio).min(hi);
        let gb = g(b);
        if ga == 0.0 {
            return Ok(a);
        }
        if (ga > 0.0) != (gb > 0.0) {
            return Ok(bisect(&g, a, b));
        }
        a = b;
        ga = gb;
    }
    Err(Error::NoRootInBracket { lo, hi })
}
