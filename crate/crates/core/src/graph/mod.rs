//! Undirected simple graphs, file formats, and generators.

mod generators;
mod io;
mod planarity;

use std::collections::VecDeque;

pub use generators::{
    gen_erdos_renyi, gen_family, gen_max_planar, gen_regular, gen_replica, FamilySpec,
};
pub use io::{parse_graph, read_graph_file, write_dimacs, write_edge_list, GraphFormat, ParseOptions};
pub use planarity::is_planar;

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically.
/// Adjacency lists are sorted as well, so two graphs with the same edge set
/// compare equal regardless of insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from vertex pairs. Duplicate and reversed pairs collapse
    /// to a single edge; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Self { n, edges, adj };
        g.debug_check();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Removes degree-0 vertices. Returns the compacted graph and, for each new
    /// vertex, its label in `self`.
    pub fn without_isolated(&self) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in kept.iter().enumerate() {
            relabel[old] = new;
        }
        let g = Graph::from_edges(
            kept.len(),
            self.edges.iter().map(|&(u, v)| (relabel[u], relabel[v])),
        )
        .expect("relabeling preserves simplicity");
        (g, kept)
    }

    /// Graph with `perm[v]` as the new label of vertex `v`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::shape(self.n, perm.len()));
        }
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    pub fn complement(&self) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..self.n {
            let mut nb = self.adj[u].iter().peekable();
            for v in u + 1..self.n {
                while nb.peek().is_some_and(|&&w| w < v) {
                    nb.next();
                }
                if nb.peek() != Some(&&v) {
                    pairs.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, pairs).expect("complement of a simple graph is simple")
    }

    /// Two-coloring by BFS, or `None` if the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<usize>> {
        let mut side = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if side[root] != usize::MAX {
                continue;
            }
            side[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if side[v] == usize::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// Number of triangles through each edge, aligned with [`Graph::edges`].
    pub fn edge_triangle_counts(&self) -> Vec<usize> {
        self.edges
            .iter()
            .map(|&(u, v)| sorted_intersection_len(&self.adj[u], &self.adj[v]))
            .collect()
    }

    #[inline]
    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            let mut degree_sum = 0;
            for (v, list) in self.adj.iter().enumerate() {
                degree_sum += list.len();
                debug_assert!(list.windows(2).all(|w| w[0] < w[1]), "duplicate edge at {v}");
                debug_assert!(list.iter().all(|&w| w != v && w < self.n));
            }
            debug_assert_eq!(degree_sum, 2 * self.edges.len());
        }
    }
}

fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Per-vertex target degrees, used by the replica generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if let Some(&d) = values.iter().find(|&&d| d >= n.max(1)) {
            return Err(Error::invalid(format!(
                "degree {d} is not below the sequence length {n}"
            )));
        }
        if values.iter().sum::<usize>() % 2 != 0 {
            return Err(Error::invalid("degree sum is odd"));
        }
        Ok(Self(values))
    }

    pub fn of(g: &Graph) -> Self {
        Self(g.degrees())
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Values in nonincreasing order.
    pub fn sorted_desc(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}
