//! Exhaustive certification of the `t`-design property.

use itertools::Itertools;
use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use super::incidence::IncidenceStructure;
use super::params::DesignParams;
use crate::error::{Error, Result};

/// Default cap on the total number of point subsets enumerated.
pub const DEFAULT_SUBSET_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetViolation {
    pub points: Vec<usize>,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    /// Subset size.
    pub s: u32,
    /// Expected `λ_s`.
    pub expected: u64,
    pub subsets_checked: u128,
    /// Lexicographically first subset with the wrong block count.
    pub violation: Option<SubsetViolation>,
}

impl LevelReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SumCheck {
    pub expected: u64,
    /// First index whose sum differs, with the sum found there.
    pub first_bad: Option<(usize, u64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub t: u32,
    pub lambda: u64,
    pub params: DesignParams,
    pub block_count: SumCheck,
    pub row_sums: SumCheck,
    pub col_sums: SumCheck,
    pub levels: Vec<LevelReport>,
    pub passed: bool,
}

impl ValidationReport {
    /// One-line description of the first failure, if any.
    pub fn first_failure(&self) -> Option<String> {
        if let Some((_, found)) = self.block_count.first_bad {
            return Some(format!(
                "block count {found} differs from lambda_0 = {}",
                self.block_count.expected
            ));
        }
        if let Some((i, s)) = self.row_sums.first_bad {
            return Some(format!("point {i} lies in {s} blocks, expected r = {}", self.row_sums.expected));
        }
        if let Some((j, s)) = self.col_sums.first_bad {
            return Some(format!("block {j} has {s} points, expected k = {}", self.col_sums.expected));
        }
        self.levels.iter().find_map(|lvl| {
            lvl.violation.as_ref().map(|v| {
                format!(
                    "{}-subset {:?} lies in {} blocks, expected lambda_{} = {}",
                    lvl.s, v.points, v.count, lvl.s, lvl.expected
                )
            })
        })
    }
}

fn first_mismatch(values: &[u64], expected: u64) -> Option<(usize, u64)> {
    values
        .iter()
        .enumerate()
        .find(|(_, &x)| x != expected)
        .map(|(i, &x)| (i, x))
}

/// Per-point bitsets over blocks.
fn point_bitsets(inc: &IncidenceStructure) -> Vec<Vec<u64>> {
    let words = inc.num_blocks().div_ceil(64);
    (0..inc.num_points())
        .map(|i| {
            let mut bs = vec![0u64; words];
            for (j, &x) in inc.row(i).iter().enumerate() {
                if x == 1 {
                    bs[j / 64] |= 1 << (j % 64);
                }
            }
            bs
        })
        .collect()
}

fn check_level(sets: &[Vec<u64>], s: usize, expected: u64) -> Option<SubsetViolation> {
    let v = sets.len();
    let words = sets.first().map_or(0, Vec::len);
    // Split on the smallest element; each worker reports its own first
    // violation and the minimum over workers is the global lexicographic one.
    (0..v)
        .into_par_iter()
        .filter_map(|first| {
            let mut acc = vec![0u64; words];
            (first + 1..v).combinations(s - 1).find_map(|rest| {
                acc.copy_from_slice(&sets[first]);
                for &p in &rest {
                    for (a, w) in acc.iter_mut().zip(&sets[p]) {
                        *a &= w;
                    }
                }
                let count: u64 = acc.iter().map(|w| u64::from(w.count_ones())).sum();
                (count != expected).then(|| {
                    let mut points = Vec::with_capacity(s);
                    points.push(first);
                    points.extend(rest);
                    SubsetViolation { points, count }
                })
            })
        })
        .min_by(|a, b| a.points.cmp(&b.points))
}

/// Checks that every `s`-subset of points (`1 ≤ s ≤ t`) lies in exactly
/// `λ_s` blocks, and that row sums, column sums and the block count match
/// `r`, `k` and `b`.
pub fn validate_design(inc: &IncidenceStructure, t: u32, lambda: u64) -> Result<ValidationReport> {
    validate_design_with_budget(inc, t, lambda, DEFAULT_SUBSET_BUDGET)
}

pub fn validate_design_with_budget(
    inc: &IncidenceStructure,
    t: u32,
    lambda: u64,
    budget: u128,
) -> Result<ValidationReport> {
    let v = inc.num_points();
    let params = DesignParams::new(t, v as u64, inc.params().k, lambda)?;
    let needed: u128 = (1..=u128::from(t)).map(|s| binomial(v as u128, s)).sum();
    if needed > budget {
        return Err(Error::TooLarge { needed, budget });
    }

    let sets = point_bitsets(inc);
    let levels = (1..=t)
        .map(|s| {
            let expected = params.lambda_i[s as usize];
            LevelReport {
                s,
                expected,
                subsets_checked: binomial(v as u128, u128::from(s)),
                violation: check_level(&sets, s as usize, expected),
            }
        })
        .collect::<Vec<_>>();

    let block_count = SumCheck {
        expected: params.b,
        first_bad: (inc.num_blocks() as u64 != params.b).then_some((0, inc.num_blocks() as u64)),
    };
    let row_sums = SumCheck {
        expected: params.r,
        first_bad: first_mismatch(&inc.row_sums(), params.r),
    };
    let col_sums = SumCheck {
        expected: params.k,
        first_bad: first_mismatch(&inc.col_sums(), params.k),
    };
    let passed = block_count.first_bad.is_none()
        && row_sums.first_bad.is_none()
        && col_sums.first_bad.is_none()
        && levels.iter().all(LevelReport::ok);
    Ok(ValidationReport {
        t,
        lambda,
        params,
        block_count,
        row_sums,
        col_sums,
        levels,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::generate::{fano, gen_paley_design, gen_projective_plane};

    /// Independent pair count: blocks containing both points, from the
    /// block lists.
    fn brute_pairs_ok(inc: &IncidenceStructure, lambda: usize) -> bool {
        let v = inc.num_points();
        (0..v).tuple_combinations().all(|(a, b)| {
            inc.blocks()
                .iter()
                .filter(|blk| blk.contains(&a) && blk.contains(&b))
                .count()
                == lambda
        })
    }

    #[test]
    fn fano_passes() {
        let f = fano();
        assert!(brute_pairs_ok(&f, 1));
        let rep = validate_design(&f, 2, 1).unwrap();
        assert!(rep.passed, "{:?}", rep.first_failure());
        assert_eq!(rep.levels[1].subsets_checked, 21);
    }

    #[test]
    fn paley_11_passes() {
        let p = gen_paley_design(11).unwrap();
        assert!(brute_pairs_ok(&p, 2));
        let rep = validate_design(&p, 2, 2).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.levels[1].subsets_checked, 55);
    }

    #[test]
    fn flipped_bit_cites_pair() {
        let bad = fano().with_flipped(0, 0).unwrap();
        let rep = validate_design(&bad, 2, 1).unwrap();
        assert!(!rep.passed);
        let viol = rep.levels[1].violation.as_ref().unwrap();
        assert_eq!(viol.points.len(), 2);
        assert!(viol.points.contains(&0) || viol.count != 1);
        assert!(rep.first_failure().is_some());
    }

    #[test]
    fn wrong_lambda_fails() {
        // 2-(13,4,2) is admissible arithmetically (b = 26, r = 8) but the
        // plane has r = 4 and every pair in exactly one block.
        let rep = validate_design(&gen_projective_plane(3).unwrap(), 2, 2).unwrap();
        assert!(!rep.passed);
        assert_eq!(rep.row_sums.first_bad, Some((0, 4)));
        assert_eq!(rep.levels[1].violation.as_ref().unwrap().points, vec![0, 1]);
    }

    #[test]
    fn budget() {
        let f = fano();
        assert!(matches!(
            validate_design_with_budget(&f, 2, 1, 10),
            Err(Error::TooLarge { needed: 28, budget: 10 })
        ));
    }
}
