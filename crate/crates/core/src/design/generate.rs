//! Built-in families of symmetric designs.

use super::incidence::IncidenceStructure;
use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Canonical representatives of the 1-dimensional subspaces of GF(q)³: the
/// first non-zero coordinate is 1. Order: `(1,a,b)`, then `(0,1,b)`, then
/// `(0,0,1)`.
fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            pts.push([1, a, b]);
        }
    }
    for b in 0..q {
        pts.push([0, 1, b]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// The Desarguesian projective plane PG(2, q) for prime `q`: a symmetric
/// 2-(q²+q+1, q+1, 1) design.
///
/// Points are the 1-dimensional subspaces of GF(q)³ and blocks the
/// 2-dimensional ones, each block indexed by its normal vector. A point lies
/// on a block iff their dot product vanishes mod `q`.
pub fn gen_projective_plane(q: u64) -> Result<IncidenceStructure> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let pts = projective_points(q);
    let blocks = pts
        .iter()
        .map(|line| {
            pts.iter()
                .enumerate()
                .filter(|(_, p)| (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let labels = pts
        .iter()
        .map(|p| format!("({},{},{})", p[0], p[1], p[2]))
        .collect();
    IncidenceStructure::from_blocks(labels, blocks, 2, 1)
}

/// The Fano plane, PG(2, 2).
pub fn fano() -> IncidenceStructure {
    gen_projective_plane(2).expect("2 is prime")
}

/// The Paley (quadratic-residue) difference-set design for a prime
/// `q ≡ 3 (mod 4)`: a symmetric 2-(q, (q−1)/2, (q−3)/4) design whose block
/// `j` is the residue set translated by `j`.
pub fn gen_paley_design(q: u64) -> Result<IncidenceStructure> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q % 4 != 3 || q < 7 {
        return Err(Error::BadResidueClass(q));
    }
    let mut residues: Vec<u64> = (1..q).map(|x| x * x % q).collect();
    residues.sort_unstable();
    residues.dedup();
    let blocks = (0..q)
        .map(|j| residues.iter().map(|&x| ((x + j) % q) as usize).collect())
        .collect();
    let labels = (0..q).map(|i| i.to_string()).collect();
    IncidenceStructure::from_blocks(labels, blocks, 2, (q - 3) / 4)
}

/// The trivial symmetric design whose `v` blocks are all the whole point
/// set. Its incidence graph is the complete bipartite graph `K_{v,v}`, the
/// degenerate `k = v` limit.
pub fn gen_complete(v: u64) -> Result<IncidenceStructure> {
    if v < 2 {
        return Err(Error::InvalidParameters("complete design needs v >= 2".into()));
    }
    let n = v as usize;
    let blocks = (0..n).map(|_| (0..n).collect()).collect();
    let labels = (0..n).map(|i| i.to_string()).collect();
    IncidenceStructure::from_blocks(labels, blocks, 2, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn plane_sizes() {
        for (q, v, k) in [(2, 7, 3), (3, 13, 4), (5, 31, 6)] {
            let inc = gen_projective_plane(q).unwrap();
            assert_eq!(inc.num_points(), v);
            assert_eq!(inc.num_blocks(), v);
            assert_eq!(inc.params().k, k);
            assert!(inc.params().is_symmetric());
        }
        assert!(matches!(gen_projective_plane(4), Err(Error::NotPrime(4))));
        assert!(matches!(gen_projective_plane(1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn paley_params() {
        for (q, k, l) in [(7, 3, 1), (11, 5, 2), (19, 9, 4)] {
            let inc = gen_paley_design(q).unwrap();
            assert_eq!(inc.params().k, k);
            assert_eq!(inc.params().lambda, l);
        }
        assert!(matches!(gen_paley_design(13), Err(Error::BadResidueClass(13))));
        assert!(matches!(gen_paley_design(3), Err(Error::BadResidueClass(3))));
        assert!(matches!(gen_paley_design(15), Err(Error::NotPrime(15))));
    }

    #[test]
    fn complete_is_degenerate_symmetric() {
        let inc = gen_complete(5).unwrap();
        let p = inc.params();
        assert!(p.is_symmetric());
        assert_eq!(p.order().unwrap(), 0);
    }
}
