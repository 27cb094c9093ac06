use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::Serialize;

use super::params::DesignParams;
use crate::error::{Error, Result};

/// A finite incidence structure: `v` labelled points, `b` blocks, and the
/// `v × b` binary incidence matrix `N` with `N[i][j] = 1` iff point `i` lies
/// in block `j`.
///
/// The structure is not required to be a design. `params` records the
/// declared strength and `λ`, with `k` taken from the most common column sum
/// (so a corrupted matrix still loads and can be diagnosed by
/// [`validate_design`](super::validate_design)).
#[derive(Debug, Clone, Serialize)]
pub struct IncidenceStructure {
    params: DesignParams,
    points: Vec<String>,
    blocks: Vec<Vec<usize>>,
    rows: usize,
    cols: usize,
    #[serde(skip)]
    bits: Vec<u8>,
}

impl IncidenceStructure {
    /// Builds the structure from a dense 0/1 matrix given row by row.
    pub fn from_matrix(rows: &[Vec<u8>], t: u32, lambda: u64) -> Result<Self> {
        let v = rows.len();
        if v == 0 {
            return Err(Error::InvalidParameters("incidence matrix has no rows".into()));
        }
        let b = rows[0].len();
        if b == 0 {
            return Err(Error::InvalidParameters("incidence matrix has no columns".into()));
        }
        let mut bits = Vec::with_capacity(v * b);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != b {
                return Err(Error::Shape {
                    line: i + 1,
                    expected: b,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if x > 1 {
                    return Err(Error::Parse {
                        line: i + 1,
                        column: j + 1,
                        message: format!("entry {x} is not 0 or 1"),
                    });
                }
                bits.push(x);
            }
        }
        let blocks = (0..b)
            .map(|j| (0..v).filter(|&i| bits[i * b + j] == 1).collect())
            .collect();
        let points = (0..v).map(|i| i.to_string()).collect();
        Self::assemble(points, blocks, v, b, bits, t, lambda)
    }

    /// Builds the structure from a block list over points `0..v`.
    pub fn from_blocks(
        points: Vec<String>,
        blocks: Vec<Vec<usize>>,
        t: u32,
        lambda: u64,
    ) -> Result<Self> {
        let v = points.len();
        let b = blocks.len();
        if v == 0 || b == 0 {
            return Err(Error::InvalidParameters("empty point or block set".into()));
        }
        let mut bits = vec![0u8; v * b];
        let mut sorted = Vec::with_capacity(b);
        for (j, block) in blocks.into_iter().enumerate() {
            let mut block = block;
            block.sort_unstable();
            block.dedup();
            for &i in &block {
                if i >= v {
                    return Err(Error::BadIndex { index: i, n: v });
                }
                bits[i * b + j] = 1;
            }
            sorted.push(block);
        }
        Self::assemble(points, sorted, v, b, bits, t, lambda)
    }

    fn assemble(
        points: Vec<String>,
        blocks: Vec<Vec<usize>>,
        v: usize,
        b: usize,
        bits: Vec<u8>,
        t: u32,
        lambda: u64,
    ) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for blk in &blocks {
            *counts.entry(blk.len()).or_insert(0usize) += 1;
        }
        // Mode of the column sums; ties go to the smaller block size.
        let k = counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&k, _)| k)
            .unwrap_or(0);
        let params = DesignParams::new(t, v as u64, k as u64, lambda)?;
        Ok(Self {
            params,
            points,
            blocks,
            rows: v,
            cols: b,
            bits,
        })
    }

    pub fn params(&self) -> &DesignParams {
        &self.params
    }

    pub fn num_points(&self) -> usize {
        self.rows
    }

    pub fn num_blocks(&self) -> usize {
        self.cols
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    #[inline]
    pub fn get(&self, point: usize, block: usize) -> bool {
        self.bits[point * self.cols + block] == 1
    }

    pub fn row(&self, point: usize) -> &[u8] {
        &self.bits[point * self.cols..(point + 1) * self.cols]
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| u64::from(x)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.len() as u64).collect()
    }

    /// `N` as a dense floating-point matrix.
    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| f64::from(self.bits[i * self.cols + j]))
    }

    /// `N Nᵀ` in exact integer arithmetic: entry `(i, j)` counts the blocks
    /// through both points `i` and `j`.
    pub fn pair_counts(&self) -> DMatrix<u64> {
        DMatrix::from_fn(self.rows, self.rows, |i, j| {
            self.row(i)
                .iter()
                .zip(self.row(j))
                .map(|(&a, &b)| u64::from(a & b))
                .sum()
        })
    }

    /// A copy with the single incidence `(point, block)` toggled.
    pub fn with_flipped(&self, point: usize, block: usize) -> Result<Self> {
        if point >= self.rows {
            return Err(Error::BadIndex { index: point, n: self.rows });
        }
        if block >= self.cols {
            return Err(Error::BadIndex { index: block, n: self.cols });
        }
        let mut rows: Vec<Vec<u8>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rows[point][block] ^= 1;
        let mut out = Self::from_matrix(&rows, self.params.t, self.params.lambda)?;
        out.points = self.points.clone();
        Ok(out)
    }

    /// Equality of the incidence data and parameters, ignoring labels.
    pub fn same_incidence(&self, other: &Self) -> bool {
        self.params == other.params
            && self.rows == other.rows
            && self.cols == other.cols
            && self.bits == other.bits
    }
}
