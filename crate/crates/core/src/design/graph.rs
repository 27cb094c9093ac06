use nalgebra::DMatrix;
use serde::Serialize;

use super::incidence::IncidenceStructure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Part {
    Point,
    Block,
}

/// Incidence graph of a design. Vertices `0..v` are the points in input
/// order and `v..v+b` the blocks in input order, so the adjacency matrix is
/// `[[0, N], [Nᵀ, 0]]`.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    incidence: IncidenceStructure,
}

pub fn to_bipartite(inc: &IncidenceStructure) -> BipartiteGraph {
    BipartiteGraph {
        incidence: inc.clone(),
    }
}

impl BipartiteGraph {
    pub fn incidence(&self) -> &IncidenceStructure {
        &self.incidence
    }

    pub fn num_points(&self) -> usize {
        self.incidence.num_points()
    }

    pub fn num_blocks(&self) -> usize {
        self.incidence.num_blocks()
    }

    pub fn n(&self) -> usize {
        self.num_points() + self.num_blocks()
    }

    pub fn part(&self, vertex: usize) -> Part {
        if vertex < self.num_points() {
            Part::Point
        } else {
            Part::Block
        }
    }

    /// Vertex ids of one part, in order.
    pub fn part_vertices(&self, part: Part) -> std::ops::Range<usize> {
        match part {
            Part::Point => 0..self.num_points(),
            Part::Block => self.num_points()..self.n(),
        }
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        let v = self.num_points();
        match (a < v, b < v) {
            (true, false) => self.incidence.get(a, b - v),
            (false, true) => self.incidence.get(b, a - v),
            _ => false,
        }
    }

    pub fn degree(&self, vertex: usize) -> usize {
        let v = self.num_points();
        if vertex < v {
            self.incidence.row(vertex).iter().filter(|&&x| x == 1).count()
        } else {
            self.incidence.blocks()[vertex - v].len()
        }
    }

    pub fn neighbors(&self, vertex: usize) -> Vec<usize> {
        let v = self.num_points();
        if vertex < v {
            self.incidence
                .row(vertex)
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == 1)
                .map(|(j, _)| v + j)
                .collect()
        } else {
            self.incidence.blocks()[vertex - v].clone()
        }
    }

    pub fn adjacency(&self) -> DMatrix<f64> {
        let v = self.num_points();
        let n = self.n();
        let mut a = DMatrix::zeros(n, n);
        for (j, blk) in self.incidence.blocks().iter().enumerate() {
            for &i in blk {
                a[(i, v + j)] = 1.0;
                a[(v + j, i)] = 1.0;
            }
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{fano, gen_paley_design};

    #[test]
    fn fano_graph() {
        let g = to_bipartite(&fano());
        let a = g.adjacency();
        assert_eq!(a.nrows(), 14);
        assert_eq!(a, a.transpose());
        for i in 0..14 {
            assert_eq!(a.row(i).sum(), 3.0);
            assert_eq!(a[(i, i)], 0.0);
            assert_eq!(g.degree(i), 3);
        }
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(a[(i, j)], 0.0);
                assert_eq!(a[(7 + i, 7 + j)], 0.0);
            }
        }
    }

    #[test]
    fn paley_graph_row_sums() {
        let g = to_bipartite(&gen_paley_design(11).unwrap());
        let a = g.adjacency();
        assert_eq!(a.nrows(), 22);
        assert!((0..22).all(|i| a.row(i).sum() == 5.0));
    }

    #[test]
    fn adjacency_matches_queries() {
        let g = to_bipartite(&fano());
        let a = g.adjacency();
        for x in 0..14 {
            let nb = g.neighbors(x);
            for y in 0..14 {
                assert_eq!(a[(x, y)] == 1.0, g.is_adjacent(x, y));
                assert_eq!(nb.contains(&y), g.is_adjacent(x, y));
            }
        }
        assert_eq!(g.part(6), Part::Point);
        assert_eq!(g.part(7), Part::Block);
    }
}
