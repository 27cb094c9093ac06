//! Closed forms checked against independent numerical computations that
//! share no code with them: sums over a full eigendecomposition of the
//! adjacency matrix, and eigenvalues of the assembled Hamiltonian.

use designwalk::design::{
    fano, gen_paley_design, gen_projective_plane, to_bipartite, IncidenceStructure,
};
use designwalk::dynamics::{assemble_h, eigh};
use designwalk::marking::{classify_pair, find_biregular, make_same_part, PairRelation};
use designwalk::predictor::{pair_sums, predict_pair, predict_single};
use designwalk::spectral::{spectral_decomposition, tau_num};
use designwalk::design::Part;
use nalgebra::SymmetricEigen;

fn designs() -> Vec<(String, IncidenceStructure)> {
    let mut out = Vec::new();
    for q in [2, 3, 5, 7, 11, 13] {
        out.push((format!("pg{q}"), gen_projective_plane(q).unwrap()));
    }
    for q in [7, 11, 19, 23] {
        out.push((format!("paley{q}"), gen_paley_design(q).unwrap()));
    }
    out
}

/// `Σ_j v_j[w] v_j[w'] / (k − θ_j)^p` over every eigenvector except the
/// principal one.
fn eigvec_sums(inc: &IncidenceStructure, pairs: &[(usize, usize)]) -> Vec<(f64, f64)> {
    let a = to_bipartite(inc).adjacency();
    let se = SymmetricEigen::new(a);
    let k = inc.params().k as f64;
    let top = (0..se.eigenvalues.len())
        .max_by(|&x, &y| se.eigenvalues[x].total_cmp(&se.eigenvalues[y]))
        .unwrap();
    pairs
        .iter()
        .map(|&(w, w2)| {
            let mut s = (0.0, 0.0);
            for j in 0..se.eigenvalues.len() {
                if j == top {
                    continue;
                }
                let x = se.eigenvectors[(w, j)] * se.eigenvectors[(w2, j)];
                let gap = k - se.eigenvalues[j];
                s.0 += x / gap;
                s.1 += x / (gap * gap);
            }
            s
        })
        .collect()
}

#[test]
fn pair_sums_agree_with_eigenvector_sums() {
    for (name, inc) in designs() {
        let v = inc.num_points();
        if v > 200 {
            continue;
        }
        let g = to_bipartite(&inc);
        let dec = spectral_decomposition(&inc).unwrap();
        let adj = g.neighbors(0)[0];
        let non = (v..2 * v).find(|&b| !g.is_adjacent(0, b)).unwrap();
        let pairs = [(0, 0), (v + 2, v + 2), (0, 1), (v, v + 3), (0, adj), (adj, 0), (0, non)];
        let tol = tau_num(2 * v);
        for (&(w, w2), want) in pairs.iter().zip(eigvec_sums(&inc, &pairs)) {
            let got = pair_sums(&dec, w, w2).unwrap();
            assert!(
                (got.0 - want.0).abs() <= tol && (got.1 - want.1).abs() <= tol,
                "{name} ({w},{w2}): {got:?} vs {want:?}"
            );
        }
    }
}

#[test]
fn fano_single_sums_from_eigenvectors() {
    let (s1, s2) = eigvec_sums(&fano(), &[(0, 0)])[0];
    assert!((s1 - 0.379252).abs() < 1e-6, "{s1}");
    assert!((s2 - 0.194404).abs() < 1e-6, "{s2}");
}

#[test]
fn fano_adjacent_pair_sums_from_eigenvectors() {
    let inc = fano();
    let g = to_bipartite(&inc);
    let b = g.neighbors(0)[0];
    assert_eq!(classify_pair(&g, 0, b), PairRelation::Adjacent);
    let dec = spectral_decomposition(&inc).unwrap();
    let got = pair_sums(&dec, 0, b).unwrap();
    let want = eigvec_sums(&inc, &[(0, b)])[0];
    assert!((got.0 - want.0).abs() < 1e-12 && (got.1 - want.1).abs() < 1e-12);
    // Closed form for (v, k, λ₂) = (7, 3, 1): (v − k)/(vD) − 1/(4vk), D = 7.
    assert!((got.0 - (4.0 / 49.0 - 1.0 / 84.0)).abs() < 1e-15);
}

/// The two eigenvalues of `H` whose eigenvectors overlap most with the
/// uniform state, ascending.
fn crossing_pair(h: &nalgebra::DMatrix<f64>) -> (f64, f64) {
    let e = eigh(h).unwrap();
    let n = h.nrows();
    let mut ov: Vec<(f64, f64)> = (0..n)
        .map(|j| (e.vectors.column(j).sum().powi(2) / n as f64, e.values[j]))
        .collect();
    ov.sort_by(|a, b| b.0.total_cmp(&a.0));
    let (a, b) = (ov[0].1, ov[1].1);
    (a.min(b), a.max(b))
}

#[test]
fn fano_single_gap_from_hamiltonian() {
    let inc = fano();
    let p = predict_single(&inc).unwrap();
    let h = assemble_h(&to_bipartite(&inc), p.gamma, &[0]).unwrap();
    let (lo, hi) = crossing_pair(&h.matrix);
    let root = p.eps_root.unwrap();
    let (rlo, rhi) = root.eigenvalues(p.gamma, 3.0);
    assert!((lo - rlo).abs() < 1e-10 && (hi - rhi).abs() < 1e-10);
    let half_gap = 0.5 * (hi - lo);
    assert!((half_gap - p.eps).abs() / p.eps < 0.02, "{half_gap} vs {}", p.eps);
}

#[test]
fn roots_match_hamiltonian_for_all_cases_on_pg5() {
    let inc = gen_projective_plane(5).unwrap();
    let g = to_bipartite(&inc);
    let adj = g.neighbors(0)[0];
    let non = (31..62).find(|&b| !g.is_adjacent(0, b)).unwrap();
    for (rel, w) in [
        (PairRelation::Adjacent, vec![0, adj]),
        (PairRelation::CrossNonadjacent, vec![0, non]),
        (PairRelation::SamePart, vec![0, 1]),
    ] {
        let p = predict_pair(&inc, rel).unwrap();
        let h = assemble_h(&g, p.gamma, &w).unwrap();
        let (lo, hi) = crossing_pair(&h.matrix);
        let (rlo, rhi) = p.eps_root.unwrap().eigenvalues(p.gamma, 6.0);
        assert!((lo - rlo).abs() < 1e-9 && (hi - rhi).abs() < 1e-9, "{rel:?}");
    }
    let same = make_same_part(&g, 4, Part::Block).unwrap();
    let p = designwalk::predictor::predict(&inc, &designwalk::marking::classify(&g, &same.vertices).unwrap()).unwrap();
    let h = assemble_h(&g, p.gamma, &same.vertices).unwrap();
    let (lo, hi) = crossing_pair(&h.matrix);
    let (rlo, rhi) = p.eps_root.unwrap().eigenvalues(p.gamma, 6.0);
    assert!((lo - rlo).abs() < 1e-9 && (hi - rhi).abs() < 1e-9);
    let bir = find_biregular(&g, 2, 1, 3).unwrap();
    let p = designwalk::predictor::predict(&inc, &bir).unwrap();
    let h = assemble_h(&g, p.gamma, &bir.vertices).unwrap();
    let (lo, hi) = crossing_pair(&h.matrix);
    let (rlo, rhi) = p.eps_root.unwrap().eigenvalues(p.gamma, 6.0);
    assert!((lo - rlo).abs() < 1e-9 && (hi - rhi).abs() < 1e-9);
}
