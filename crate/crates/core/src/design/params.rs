use num_integer::binomial;
use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters of a `t-(v, k, λ)` design together with the derived block
/// counts `λ_0 = b, λ_1 = r, ..., λ_t = λ`.
///
/// All arithmetic is exact; a parameter set that does not admit a design
/// is rejected because some `λ_i` fails to be an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub t: u32,
    pub v: u64,
    pub b: u64,
    pub k: u64,
    pub r: u64,
    pub lambda: u64,
    pub lambda_i: Vec<u64>,
}

/// `λ_i = λ·C(v−i, t−i) / C(k−i, t−i)`, the number of blocks through any
/// `i`-subset of points.
pub fn lambda_i(t: u32, v: u64, k: u64, lambda: u64, i: u32) -> Result<u64> {
    if i > t {
        return Err(Error::IndexOutOfRange {
            index: i as usize,
            limit: t as usize,
        });
    }
    check_ranges(t, v, k, lambda)?;
    let i64_ = u64::from(i);
    let tt = u64::from(t);
    let num = u128::from(lambda) * binomial(u128::from(v - i64_), u128::from(tt - i64_));
    let den = binomial(u128::from(k - i64_), u128::from(tt - i64_));
    if den == 0 || num % den != 0 {
        return Err(Error::NonIntegerLambda { t, v, k, lambda, i });
    }
    u64::try_from(num / den)
        .map_err(|_| Error::InvalidParameters(format!("lambda_{i} overflows u64")))
}

fn check_ranges(t: u32, v: u64, k: u64, lambda: u64) -> Result<()> {
    if t == 0 || lambda == 0 {
        return Err(Error::InvalidParameters(
            "t and lambda must be positive".into(),
        ));
    }
    if !(u64::from(t) <= k && k <= v) {
        return Err(Error::InvalidParameters(format!(
            "need t <= k <= v, got t={t}, k={k}, v={v}"
        )));
    }
    Ok(())
}

impl DesignParams {
    pub fn new(t: u32, v: u64, k: u64, lambda: u64) -> Result<Self> {
        check_ranges(t, v, k, lambda)?;
        let lambda_i = (0..=t)
            .map(|i| lambda_i(t, v, k, lambda, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            t,
            v,
            b: lambda_i[0],
            k,
            r: lambda_i[1],
            lambda,
            lambda_i,
        })
    }

    pub fn lambda_i(&self, i: u32) -> Result<u64> {
        self.lambda_i
            .get(i as usize)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index: i as usize,
                limit: self.t as usize,
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.v == self.b && self.r == self.k
    }

    /// Blocks through a pair of points. For `t = 1` this falls back to the
    /// counting identity `λ_2 (v − 1) = r (k − 1)`, which only holds when the
    /// structure happens to be pairwise balanced.
    pub fn lambda2(&self) -> Result<u64> {
        if self.t >= 2 {
            return self.lambda_i(2);
        }
        if self.v < 2 {
            return Err(Error::InvalidParameters("v < 2 has no pairs".into()));
        }
        let num = self.r * (self.k - 1);
        if num % (self.v - 1) != 0 {
            return Err(Error::NonIntegerLambda {
                t: 2,
                v: self.v,
                k: self.k,
                lambda: self.lambda,
                i: 2,
            });
        }
        Ok(num / (self.v - 1))
    }

    /// `r − λ_2`, the squared magnitude of the non-trivial incidence-graph
    /// eigenvalues of a symmetric design.
    pub fn order(&self) -> Result<u64> {
        let l2 = self.lambda2()?;
        self.r
            .checked_sub(l2)
            .ok_or_else(|| Error::InvalidParameters(format!("lambda_2={l2} exceeds r={}", self.r)))
    }
}
