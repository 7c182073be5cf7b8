//! Piecewise-linear arcs inside a cell union.
//!
//! When two points lie in graph-connected cells, a shortest cell path turns
//! into a polyline that never leaves the union: inside one convex cell any
//! segment stays put, and consecutive path cells are routed through a point
//! of their (non-empty, exact) intersection.

use std::collections::VecDeque;

use super::adjacency::build_adjacency;
use crate::attractor::CellSet;
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::rational::Rational;

/// Vertices of a piecewise-linear path, endpoints included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyline {
    pub vertices: Vec<Point>,
}

impl Polyline {
    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// Connects `p` to `q` inside the cell union, or returns `None` when their
/// cells lie in different components. Both points must lie in some cell.
pub fn find_arc(cells: &CellSet, p: &[Rational], q: &[Rational]) -> Result<Option<Polyline>> {
    let start = cells
        .find_containing(p)
        .ok_or_else(|| Error::invalid("arc start point lies outside every cell"))?;
    let goal = cells
        .find_containing(q)
        .ok_or_else(|| Error::invalid("arc end point lies outside every cell"))?;

    if start == goal {
        let vertices = if p == q {
            vec![p.to_vec(), q.to_vec()]
        } else {
            vec![p.to_vec(), cells.cells()[start].1.center(), q.to_vec()]
        };
        return Ok(Some(Polyline { vertices }));
    }

    let graph = build_adjacency(cells);
    // BFS with neighbors visited in ascending index order: shortest cell
    // path, deterministic tie-breaking by address order.
    let mut parent: Vec<Option<usize>> = vec![None; graph.node_count()];
    let mut seen = vec![false; graph.node_count()];
    let mut queue = VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    while let Some(node) = queue.pop_front() {
        if node == goal {
            break;
        }
        for &next in graph.neighbors(node) {
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some(node);
                queue.push_back(next);
            }
        }
    }
    if !seen[goal] {
        return Ok(None);
    }

    let mut path = vec![goal];
    while let Some(prev) = parent[*path.last().unwrap()] {
        path.push(prev);
    }
    path.reverse();
    debug_assert_eq!(path[0], start);

    let mut vertices = vec![p.to_vec()];
    for (idx, &cell) in path.iter().enumerate() {
        vertices.push(cells.cells()[cell].1.center());
        if let Some(&next) = path.get(idx + 1) {
            let shared = cells.cells()[cell]
                .1
                .intersection(&cells.cells()[next].1)
                .expect("path cells are adjacent");
            vertices.push(shared.center());
        }
    }
    vertices.push(q.to_vec());
    Ok(Some(Polyline { vertices }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::{iterate_attractor, preset, CellSet, DEFAULT_CELL_BUDGET};
    use crate::rational::{rat, rat_int};
    use std::sync::Arc;

    fn level(name: &str, k: usize) -> CellSet {
        let ifs = Arc::new(preset(name).unwrap());
        iterate_attractor(&ifs, k, DEFAULT_CELL_BUDGET).unwrap()
    }

    #[test]
    fn carpet_corners_are_joined() {
        let x2 = level("sierpinski-carpet", 2);
        let p = vec![rat(1, 18), rat(1, 18)];
        let q = vec![rat(17, 18), rat(17, 18)];
        let arc = find_arc(&x2, &p, &q).unwrap().expect("connected");
        assert!(arc.segment_count() >= 2);
        assert_eq!(arc.vertices.first().unwrap(), &p);
        assert_eq!(arc.vertices.last().unwrap(), &q);
        for v in &arc.vertices {
            assert!(x2.contains_point(v), "vertex {v:?} escaped the cell union");
        }
    }

    #[test]
    fn cantor_endpoints_are_not_joined() {
        let x1 = level("cmts", 1);
        let arc = find_arc(&x1, &[rat_int(0)], &[rat_int(1)]).unwrap();
        assert!(arc.is_none());
    }

    #[test]
    fn degenerate_arc_within_one_cell() {
        let x1 = level("cmts", 1);
        let p = vec![rat(1, 6)];
        let arc = find_arc(&x1, &p, &p).unwrap().unwrap();
        assert_eq!(arc.vertices, vec![p.clone(), p.clone()]);
        assert_eq!(arc.segment_count(), 1);
    }

    #[test]
    fn same_cell_distinct_points_route_via_the_center() {
        let x1 = level("cmts", 1);
        let p = vec![rat(1, 12)];
        let q = vec![rat(1, 4)];
        let arc = find_arc(&x1, &p, &q).unwrap().unwrap();
        assert_eq!(arc.vertices.len(), 3);
        assert_eq!(arc.vertices[1], vec![rat(1, 6)]);
    }

    #[test]
    fn outside_points_are_rejected() {
        let x1 = level("cmts", 1);
        assert!(find_arc(&x1, &[rat(1, 2)], &[rat_int(0)]).is_err());
        assert!(find_arc(&x1, &[rat_int(0)], &[rat(1, 2)]).is_err());
    }
}
