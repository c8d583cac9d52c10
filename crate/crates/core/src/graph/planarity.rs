//! Left-right planarity test.
//!
//! Linear-time check in two depth-first passes: the first orients the graph
//! and computes lowpoints and nesting depths, the second maintains a stack of
//! conflict pairs of return-edge intervals and fails as soon as some pair has
//! to place conflicting intervals on the same side. Only the yes/no answer is
//! computed; no embedding is built.

use super::Graph;

const NONE: usize = usize::MAX;

pub fn is_planar(g: &Graph) -> bool {
    is_planar_edges(g.n(), g.edges())
}

/// Planarity of the simple graph on `0..n` with the given edges.
pub(crate) fn is_planar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    if n >= 3 && edges.len() > 3 * n - 6 {
        return false;
    }
    if n < 5 || edges.len() < 9 {
        return true;
    }
    LrState::new(n, edges).run()
}

#[derive(Debug, Clone, Copy, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn single(e: usize) -> Self {
        Self {
            low: Some(e),
            high: Some(e),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState {
    n: usize,
    // undirected adjacency: (neighbor, undirected edge id)
    adj: Vec<Vec<(usize, usize)>>,

    // oriented edges, indexed by the order they were discovered
    src: Vec<usize>,
    dst: Vec<usize>,
    orient: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,

    height: Vec<usize>,
    parent_edge: Vec<usize>,
    roots: Vec<usize>,
    ordered_out: Vec<Vec<usize>>,

    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
    reference: Vec<Option<usize>>,
}

impl LrState {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let m = edges.len();
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        Self {
            n,
            adj,
            src: Vec::with_capacity(m),
            dst: Vec::with_capacity(m),
            orient: vec![NONE; m],
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting_depth: Vec::with_capacity(m),
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            roots: Vec::new(),
            ordered_out: vec![Vec::new(); n],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![NONE; m],
            reference: vec![None; m],
        }
    }

    fn run(mut self) -> bool {
        for v in 0..self.n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient_from(v);
            }
        }

        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for e in 0..self.src.len() {
            out[self.src[e]].push(e);
        }
        for list in &mut out {
            list.sort_by_key(|&e| self.nesting_depth[e]);
        }
        self.ordered_out = out;

        let roots = std::mem::take(&mut self.roots);
        roots.into_iter().all(|r| self.test_from(r))
    }

    fn orient_from(&mut self, root: usize) {
        let mut ind = vec![0usize; self.n];
        let mut awaiting = vec![false; self.orient.len()];
        let mut dfs = vec![root];

        while let Some(&v) = dfs.last() {
            if ind[v] == self.adj[v].len() {
                dfs.pop();
                continue;
            }
            let parent = self.parent_edge[v];
            let (w, uid) = self.adj[v][ind[v]];
            let vw = match self.orient[uid] {
                NONE => {
                    let vw = self.src.len();
                    self.orient[uid] = vw;
                    self.src.push(v);
                    self.dst.push(w);
                    self.lowpt.push(self.height[v]);
                    self.lowpt2.push(self.height[v]);
                    self.nesting_depth.push(0);
                    if self.height[w] == NONE {
                        self.parent_edge[w] = vw;
                        self.height[w] = self.height[v] + 1;
                        awaiting[uid] = true;
                        dfs.push(w);
                        continue;
                    }
                    self.lowpt[vw] = self.height[w];
                    vw
                }
                vw if awaiting[uid] && self.src[vw] == v => {
                    awaiting[uid] = false;
                    vw
                }
                _ => {
                    ind[v] += 1;
                    continue;
                }
            };

            self.nesting_depth[vw] = 2 * self.lowpt[vw];
            if self.lowpt2[vw] < self.height[v] {
                self.nesting_depth[vw] += 1;
            }
            if parent != NONE {
                if self.lowpt[vw] < self.lowpt[parent] {
                    self.lowpt2[parent] = self.lowpt[parent].min(self.lowpt2[vw]);
                    self.lowpt[parent] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[parent] {
                    self.lowpt2[parent] = self.lowpt2[parent].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[parent] = self.lowpt2[parent].min(self.lowpt2[vw]);
                }
            }
            ind[v] += 1;
        }
    }

    fn test_from(&mut self, root: usize) -> bool {
        let mut ind = vec![0usize; self.n];
        let mut skip_init = vec![false; self.src.len()];
        let mut dfs = vec![root];

        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let mut descended = false;
            while ind[v] < self.ordered_out[v].len() {
                let ei = self.ordered_out[v][ind[v]];
                let w = self.dst[ei];
                if !skip_init[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if self.parent_edge[w] == ei {
                        dfs.push(v);
                        dfs.push(w);
                        skip_init[ei] = true;
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval::single(ei),
                    });
                }
                if self.lowpt[ei] < self.height[v] {
                    if ind[v] == 0 {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !descended && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn conflicting(&self, interval: &Interval, e: usize) -> bool {
        match interval.high {
            Some(h) => self.lowpt[h] > self.lowpt[e],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        let low = |i: &Interval| self.lowpt[i.low.expect("nonempty interval has a low edge")];
        if p.left.is_empty() {
            low(&p.right)
        } else if p.right.is_empty() {
            low(&p.left)
        } else {
            low(&p.left).min(low(&p.right))
        }
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();

        // return edges of ei go to the right
        loop {
            let mut q = self.stack.pop().expect("return edges were pushed for ei");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("nonempty right interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.expect("set above")] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = Some(self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }

        // conflicting return edges of earlier siblings go to the left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("peeked");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pr_low) = p.right.low {
                self.reference[pr_low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl_low) = p.left.low {
                self.reference[pl_low] = q.left.high;
            }
            p.left.low = q.left.low;
        }

        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }

        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.reference[low] = p.right.low;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.reference[low] = p.left.low;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }

        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("e has a return edge on the stack");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                (Some(l), None) => Some(l),
                _ => hr,
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, pairs).unwrap()
    }

    fn k33() -> Graph {
        let pairs = (0..3).flat_map(|u| (3..6).map(move |v| (u, v)));
        Graph::from_edges(6, pairs).unwrap()
    }

    fn petersen() -> Graph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, pairs).unwrap()
    }

    #[test]
    fn small_complete_graphs() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&k33()));
    }

    #[test]
    fn petersen_is_not_planar() {
        assert!(!is_planar(&petersen()));
    }

    #[test]
    fn subdivided_k5_is_not_planar() {
        // every edge of K5 replaced by a path of length two
        let mut pairs = Vec::new();
        let mut next = 5;
        for u in 0..5 {
            for v in u + 1..5 {
                pairs.push((u, next));
                pairs.push((next, v));
                next += 1;
            }
        }
        let g = Graph::from_edges(next, pairs).unwrap();
        assert!(g.m() <= 3 * g.n() - 6);
        assert!(!is_planar(&g));
    }

    #[test]
    fn disjoint_union_of_planar_and_k5() {
        let mut pairs: Vec<_> = complete(4).edges().to_vec();
        pairs.extend(complete(5).edges().iter().map(|&(u, v)| (u + 4, v + 4)));
        let g = Graph::from_edges(9, pairs).unwrap();
        assert!(!is_planar(&g));
        let h = Graph::from_edges(9, complete(4).edges().iter().copied()).unwrap();
        assert!(is_planar(&h));
    }

    #[test]
    fn wheel_and_grid_are_planar() {
        let n = 30;
        let mut pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
        pairs.extend((1..n).map(|i| (i, if i + 1 == n { 1 } else { i + 1 })));
        assert!(is_planar(&Graph::from_edges(n, pairs).unwrap()));

        let side = 12;
        let mut grid = Vec::new();
        for r in 0..side {
            for c in 0..side {
                let v = r * side + c;
                if c + 1 < side {
                    grid.push((v, v + 1));
                }
                if r + 1 < side {
                    grid.push((v, v + side));
                }
            }
        }
        assert!(is_planar(&Graph::from_edges(side * side, grid).unwrap()));
    }

    #[test]
    fn euler_bound_shortcut() {
        // any graph above 3n-6 edges is rejected
        let g = complete(6);
        assert!(g.m() > 3 * 6 - 6);
        assert!(!is_planar(&g));
    }
}
