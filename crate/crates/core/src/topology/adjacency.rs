//! Cell adjacency graph and its connected components.
//!
//! Nodes are the cells of one level in address order; an edge means the two
//! closed boxes intersect, where touching along an edge or at a single
//! corner counts. That convention is what makes carpet connectivity come
//! out right: the level sets are unions of closed cells, and a shared
//! corner point already joins them.

use super::scaled::scale_boxes;
use crate::attractor::{Address, CellSet};
use crate::geom::Aabb;

#[derive(Debug, Clone)]
pub struct AdjacencyGraph {
    addresses: Vec<Address>,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
}

impl AdjacencyGraph {
    pub fn node_count(&self) -> usize {
        self.addresses.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn addresses(&self) -> &[Address] {
        &self.addresses
    }

    /// Neighbor node indices in ascending order.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[node]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }
}

/// Builds the adjacency graph with a plane sweep: cells sorted by lower `x`
/// only ever get compared to the cells whose `x`-interval reaches back to
/// them, which is near-linear for the grid-like covers built here.
pub fn build_adjacency(cells: &CellSet) -> AdjacencyGraph {
    let n = cells.len();
    let addresses: Vec<Address> = cells.cells().iter().map(|(a, _)| a.clone()).collect();
    let mut neighbors = vec![Vec::new(); n];
    let mut edge_count = 0;

    let add_edge = |a: usize, b: usize, neighbors: &mut Vec<Vec<usize>>| {
        neighbors[a].push(b);
        neighbors[b].push(a);
    };

    if let Some(scaled) = scale_boxes(cells.cells().iter().map(|(_, b)| b)) {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&i| (scaled.coords[i][0], scaled.coords[i][1]));
        for (pos, &i) in order.iter().enumerate() {
            for &j in &order[pos + 1..] {
                if scaled.coords[j][0] > scaled.coords[i][2] {
                    break; // sweep: no later cell can reach back in x
                }
                if scaled.touching(i, j) {
                    add_edge(i.min(j), i.max(j), &mut neighbors);
                    edge_count += 1;
                }
            }
        }
    } else {
        let boxes: Vec<&Aabb> = cells.cells().iter().map(|(_, b)| b).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| boxes[i].lower().cmp(boxes[j].lower()));
        for (pos, &i) in order.iter().enumerate() {
            for &j in &order[pos + 1..] {
                if boxes[j].lower()[0] > boxes[i].upper()[0] {
                    break;
                }
                if boxes[i].intersects(boxes[j]) {
                    add_edge(i.min(j), i.max(j), &mut neighbors);
                    edge_count += 1;
                }
            }
        }
    }

    for list in &mut neighbors {
        list.sort_unstable();
        list.dedup();
    }
    AdjacencyGraph { addresses, neighbors, edge_count }
}

/// Union-find with path halving.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Component labelling of an adjacency graph. Components are numbered in
/// order of their smallest node, so labels are deterministic and component
/// `0` always contains the lexicographically smallest address.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    count: usize,
    component_of: Vec<usize>,
    representatives: Vec<Address>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.count
    }

    /// Component id of a node.
    pub fn component_of(&self, node: usize) -> usize {
        self.component_of[node]
    }

    /// Smallest address in each component, indexed by component id.
    pub fn representatives(&self) -> &[Address] {
        &self.representatives
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.component_of[a] == self.component_of[b]
    }

    /// Node indices of one component, ascending.
    pub fn members(&self, component: usize) -> Vec<usize> {
        (0..self.component_of.len())
            .filter(|&i| self.component_of[i] == component)
            .collect()
    }
}

pub fn connected_components(graph: &AdjacencyGraph) -> Components {
    let n = graph.node_count();
    let mut uf = UnionFind::new(n);
    for a in 0..n {
        for &b in graph.neighbors(a) {
            uf.union(a, b);
        }
    }
    let mut component_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let mut next = 0;
    let mut root_label = vec![usize::MAX; n];
    for i in 0..n {
        let root = uf.find(i);
        if root_label[root] == usize::MAX {
            root_label[root] = next;
            representatives.push(graph.addresses()[i].clone());
            next += 1;
        }
        component_of[i] = root_label[root];
    }
    Components { count: next, component_of, representatives }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attractor::{iterate_attractor, preset, CellSet, DEFAULT_CELL_BUDGET};
    use std::sync::Arc;

    fn level(name: &str, k: usize) -> CellSet {
        let ifs = Arc::new(preset(name).unwrap());
        iterate_attractor(&ifs, k, DEFAULT_CELL_BUDGET).unwrap()
    }

    /// Independent oracle: all-pairs exact box intersection.
    fn brute_force_edges(cells: &CellSet) -> Vec<(usize, usize)> {
        let boxes: Vec<_> = cells.cells().iter().map(|(_, b)| b).collect();
        let mut edges = Vec::new();
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                if boxes[i].intersects(boxes[j]) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    fn graph_edges(g: &AdjacencyGraph) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for a in 0..g.node_count() {
            for &b in g.neighbors(a) {
                if a < b {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    #[test]
    fn cantor_level_one_has_no_edges() {
        let g = build_adjacency(&level("cmts", 1));
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn carpet_level_one_ring_matches_brute_force() {
        let cells = level("sierpinski-carpet", 1);
        let g = build_adjacency(&cells);
        let edges = graph_edges(&g);
        assert_eq!(edges, brute_force_edges(&cells));
        // eight side contacts around the ring plus four corner contacts
        assert_eq!(edges.len(), 12);
    }

    #[test]
    fn sweep_matches_brute_force_across_presets() {
        for (name, k) in [("cmts", 4), ("sierpinski-carpet", 2), ("sierpinski-gasket", 3)] {
            let cells = level(name, k);
            let g = build_adjacency(&cells);
            assert_eq!(graph_edges(&g), brute_force_edges(&cells), "{name} level {k}");
        }
    }

    #[test]
    fn level_zero_is_a_single_node() {
        let g = build_adjacency(&level("cmts", 0));
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 0);
        let c = connected_components(&g);
        assert_eq!(c.count(), 1);
    }

    #[test]
    fn carpet_level_two_is_connected() {
        let c = connected_components(&build_adjacency(&level("sierpinski-carpet", 2)));
        assert_eq!(c.count(), 1);
    }

    #[test]
    fn cantor_components_split_fully() {
        for k in 0..=6 {
            let cells = level("cmts", k);
            let c = connected_components(&build_adjacency(&cells));
            assert_eq!(c.count(), 1 << k, "level {k}");
            // deterministic labels: representative of component 0 is the
            // smallest address overall
            assert_eq!(&c.representatives()[0], &cells.cells()[0].0);
        }
    }

    #[test]
    fn component_labels_are_in_smallest_member_order(){
        let cells = level("cmts", 3);
        let c = connected_components(&build_adjacency(&cells));
        let reps: Vec<String> = c.representatives().iter().map(|a| a.to_string()).collect();
        let mut sorted = reps.clone();
        sorted.sort();
        assert_eq!(reps, sorted);
    }
}
