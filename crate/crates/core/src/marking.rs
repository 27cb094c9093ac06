//! Marked-vertex configurations: construction, classification, and
//! certification of the cases the closed-form predictor covers.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::design::{BipartiteGraph, Part};
use crate::error::{Error, Result};

/// Default node budget for [`find_biregular`].
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Relation between two distinct vertices of the incidence graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairRelation {
    /// A point and a block containing it.
    Adjacent,
    /// A point and a block not containing it.
    CrossNonadjacent,
    /// Two points or two blocks.
    SamePart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MarkedKind {
    Single,
    Pair { relation: PairRelation },
    SamePart { m: usize, part: Part },
    Biregular { m: usize, d: usize },
    /// Anything the closed forms do not cover; simulation only.
    Unclassified,
}

impl MarkedKind {
    pub fn label(&self) -> String {
        match self {
            MarkedKind::Single => "SINGLE".into(),
            MarkedKind::Pair { relation } => match relation {
                PairRelation::Adjacent => "PAIR_ADJACENT".into(),
                PairRelation::CrossNonadjacent => "PAIR_CROSS_NONADJ".into(),
                PairRelation::SamePart => "PAIR_SAME_PART".into(),
            },
            MarkedKind::SamePart { m, part } => format!("SAME_PART({m}, {part:?})"),
            MarkedKind::Biregular { m, d } => format!("BIREGULAR({m}, {d})"),
            MarkedKind::Unclassified => "UNCLASSIFIED".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkedConfig {
    /// Sorted vertex ids, points first then blocks.
    pub vertices: Vec<usize>,
    pub kind: MarkedKind,
}

impl MarkedConfig {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub fn classify_pair(g: &BipartiteGraph, w: usize, w2: usize) -> PairRelation {
    if g.part(w) == g.part(w2) {
        PairRelation::SamePart
    } else if g.is_adjacent(w, w2) {
        PairRelation::Adjacent
    } else {
        PairRelation::CrossNonadjacent
    }
}

fn check_indices(g: &BipartiteGraph, w: &[usize]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::EmptyMarkedSet);
    }
    match w.iter().find(|&&x| x >= g.n()) {
        Some(&index) => Err(Error::BadIndex { index, n: g.n() }),
        None => Ok(()),
    }
}

/// Classifies an arbitrary marked set. Duplicates are removed.
///
/// Singles and pairs take precedence: a point with an incident block is
/// reported as an adjacent pair even though it is also `(1, 1)`-biregular.
pub fn classify(g: &BipartiteGraph, w: &[usize]) -> Result<MarkedConfig> {
    check_indices(g, w)?;
    let mut vertices = w.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    let kind = match vertices.as_slice() {
        [_] => MarkedKind::Single,
        &[a, b] => MarkedKind::Pair {
            relation: classify_pair(g, a, b),
        },
        vs => {
            let part = g.part(vs[0]);
            if vs.iter().all(|&x| g.part(x) == part) {
                MarkedKind::SamePart { m: vs.len(), part }
            } else {
                match check_biregular(g, vs) {
                    Ok((m, d)) => MarkedKind::Biregular { m, d },
                    Err(_) => MarkedKind::Unclassified,
                }
            }
        }
    };
    Ok(MarkedConfig { vertices, kind })
}

/// The `m` lowest-indexed vertices of one part.
pub fn make_same_part(g: &BipartiteGraph, m: usize, part: Part) -> Result<MarkedConfig> {
    let range = g.part_vertices(part);
    if m == 0 {
        return Err(Error::EmptyMarkedSet);
    }
    if m > range.len() {
        return Err(Error::TooMany {
            requested: m,
            available: range.len(),
        });
    }
    Ok(MarkedConfig {
        vertices: range.take(m).collect(),
        kind: MarkedKind::SamePart { m, part },
    })
}

/// Certifies that `w` has `m` vertices in each part and that every marked
/// vertex has exactly `d` marked neighbours. On failure the message names
/// the first offending vertex.
pub fn check_biregular(g: &BipartiteGraph, w: &[usize]) -> std::result::Result<(usize, usize), String> {
    let mut vs = w.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != w.len() {
        return Err("marked set contains duplicates".into());
    }
    if let Some(&bad) = vs.iter().find(|&&x| x >= g.n()) {
        return Err(format!("vertex {bad} out of range (n = {})", g.n()));
    }
    let points = vs.iter().filter(|&&x| g.part(x) == Part::Point).count();
    let blocks = vs.len() - points;
    if points != blocks || points == 0 {
        return Err(format!(
            "parts have unequal or zero size: {points} points, {blocks} blocks"
        ));
    }
    let marked_degree = |x: usize| vs.iter().filter(|&&y| g.is_adjacent(x, y)).count();
    let d = marked_degree(vs[0]);
    for &x in &vs[1..] {
        let dx = marked_degree(x);
        if dx != d {
            return Err(format!(
                "vertex {x} has {dx} marked neighbours, vertex {} has {d}",
                vs[0]
            ));
        }
    }
    Ok((points, d))
}

pub fn find_biregular(g: &BipartiteGraph, m: usize, d: usize, seed: u64) -> Result<MarkedConfig> {
    find_biregular_with_budget(g, m, d, seed, DEFAULT_NODE_BUDGET)
}

struct Search<'a> {
    g: &'a BipartiteGraph,
    m: usize,
    d: usize,
    points: Vec<usize>,
    blocks: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { nodes: self.budget });
        }
        Ok(())
    }

    /// Extends the chosen point set from position `from` of the point order.
    fn choose_points(&mut self, chosen: &mut Vec<usize>, from: usize) -> Result<Option<Vec<usize>>> {
        self.tick()?;
        if chosen.len() == self.m {
            return self.choose_blocks(chosen);
        }
        for i in from..self.points.len() {
            if self.points.len() - i < self.m - chosen.len() {
                break;
            }
            chosen.push(self.points[i]);
            if let Some(found) = self.choose_points(chosen, i + 1)? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
        Ok(None)
    }

    fn choose_blocks(&mut self, pts: &[usize]) -> Result<Option<Vec<usize>>> {
        // Only blocks meeting exactly d chosen points can be marked.
        let cands: Vec<(usize, Vec<usize>)> = self
            .blocks
            .iter()
            .filter_map(|&b| {
                let hits: Vec<usize> = (0..pts.len()).filter(|&i| self.g.is_adjacent(pts[i], b)).collect();
                (hits.len() == self.d).then_some((b, hits))
            })
            .collect();
        if cands.len() < self.m {
            return Ok(None);
        }
        let mut load = vec![0usize; pts.len()];
        let mut chosen = Vec::with_capacity(self.m);
        if self.fill_blocks(&cands, 0, &mut load, &mut chosen)? {
            let mut out = pts.to_vec();
            out.extend(chosen.iter().map(|&i| cands[i].0));
            return Ok(Some(out));
        }
        Ok(None)
    }

    fn fill_blocks(
        &mut self,
        cands: &[(usize, Vec<usize>)],
        from: usize,
        load: &mut [usize],
        chosen: &mut Vec<usize>,
    ) -> Result<bool> {
        self.tick()?;
        if chosen.len() == self.m {
            return Ok(load.iter().all(|&l| l == self.d));
        }
        for i in from..cands.len() {
            if cands.len() - i < self.m - chosen.len() {
                break;
            }
            if cands[i].1.iter().any(|&p| load[p] == self.d) {
                continue;
            }
            for &p in &cands[i].1 {
                load[p] += 1;
            }
            chosen.push(i);
            if self.fill_blocks(cands, i + 1, load, chosen)? {
                return Ok(true);
            }
            chosen.pop();
            for &p in &cands[i].1 {
                load[p] -= 1;
            }
        }
        Ok(false)
    }
}

/// Backtracking search for `m` points and `m` blocks inducing a
/// `d`-regular bipartite subgraph. The visiting order is a seeded shuffle,
/// so a given seed always yields the same configuration.
pub fn find_biregular_with_budget(
    g: &BipartiteGraph,
    m: usize,
    d: usize,
    seed: u64,
    budget: u64,
) -> Result<MarkedConfig> {
    let v = g.num_points();
    let k = g.incidence().params().k as usize;
    if m == 0 || m > v.min(g.num_blocks()) || d > m.min(k) {
        return Err(Error::InvalidParameters(format!(
            "biregular search needs 1 <= m <= v and 0 <= d <= min(m, k); got m = {m}, d = {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = g.part_vertices(Part::Point).collect();
    let mut blocks: Vec<usize> = g.part_vertices(Part::Block).collect();
    points.shuffle(&mut rng);
    blocks.shuffle(&mut rng);

    let mut search = Search {
        g,
        m,
        d,
        points,
        blocks,
        nodes: 0,
        budget,
    };
    let found = search.choose_points(&mut Vec::with_capacity(m), 0)?;
    let mut vertices = found.ok_or(Error::NotFound { m, d })?;
    vertices.sort_unstable();
    match check_biregular(g, &vertices) {
        Ok((mm, dd)) if (mm, dd) == (m, d) => Ok(MarkedConfig {
            vertices,
            kind: MarkedKind::Biregular { m, d },
        }),
        other => unreachable!("search produced an uncertified configuration: {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{fano, gen_projective_plane, to_bipartite};

    #[test]
    fn pair_relations() {
        let g = to_bipartite(&fano());
        let blocks_with_0: Vec<usize> = g.neighbors(0);
        let other = (7..14).find(|b| !blocks_with_0.contains(b)).unwrap();
        assert_eq!(classify_pair(&g, 0, blocks_with_0[0]), PairRelation::Adjacent);
        assert_eq!(classify_pair(&g, 0, other), PairRelation::CrossNonadjacent);
        assert_eq!(classify_pair(&g, 0, 1), PairRelation::SamePart);
        assert_eq!(classify_pair(&g, 8, 9), PairRelation::SamePart);
    }

    #[test]
    fn same_part() {
        let g = to_bipartite(&fano());
        assert_eq!(make_same_part(&g, 3, Part::Point).unwrap().vertices, vec![0, 1, 2]);
        assert_eq!(
            make_same_part(&g, 7, Part::Block).unwrap().vertices,
            (7..14).collect::<Vec<_>>()
        );
        assert!(matches!(
            make_same_part(&g, 8, Part::Point),
            Err(Error::TooMany { requested: 8, available: 7 })
        ));
    }

    #[test]
    fn classify_sets() {
        let g = to_bipartite(&fano());
        assert_eq!(classify(&g, &[5]).unwrap().kind, MarkedKind::Single);
        assert_eq!(
            classify(&g, &[2, 0, 1]).unwrap().kind,
            MarkedKind::SamePart { m: 3, part: Part::Point }
        );
        assert!(matches!(classify(&g, &[]), Err(Error::EmptyMarkedSet)));
        assert!(matches!(classify(&g, &[14]), Err(Error::BadIndex { index: 14, n: 14 })));
        // One point plus two blocks fits no case.
        assert_eq!(classify(&g, &[0, 7, 8]).unwrap().kind, MarkedKind::Unclassified);
    }

    #[test]
    fn check_biregular_cases() {
        let g = to_bipartite(&fano());
        let b = g.neighbors(0)[0];
        assert_eq!(check_biregular(&g, &[0, b]), Ok((1, 1)));
        assert!(check_biregular(&g, &[0, 7, 8]).unwrap_err().contains("unequal"));
    }

    #[test]
    fn find_small() {
        let g = to_bipartite(&fano());
        let one = find_biregular(&g, 1, 1, 0).unwrap();
        assert_eq!(check_biregular(&g, &one.vertices), Ok((1, 1)));
        let three = find_biregular(&g, 3, 1, 7).unwrap();
        assert_eq!(check_biregular(&g, &three.vertices), Ok((3, 1)));
        assert_eq!(find_biregular(&g, 3, 1, 7).unwrap(), three);
    }

    #[test]
    fn projective_plane_has_no_four_cycle() {
        for q in [2, 3] {
            let g = to_bipartite(&gen_projective_plane(q).unwrap());
            assert!(matches!(find_biregular(&g, 2, 2, 1), Err(Error::NotFound { m: 2, d: 2 })));
        }
    }

    #[test]
    fn triangle_is_two_regular() {
        // Three non-collinear points and the three lines joining them induce
        // a hexagon, so d = 2 is reachable at m = 3 even when λ₂ = 1.
        let g = to_bipartite(&fano());
        let tri = find_biregular(&g, 3, 2, 0).unwrap();
        assert_eq!(check_biregular(&g, &tri.vertices), Ok((3, 2)));
    }

    #[test]
    fn budget_is_enforced() {
        let g = to_bipartite(&gen_projective_plane(3).unwrap());
        assert!(matches!(
            find_biregular_with_budget(&g, 2, 2, 0, 50),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
