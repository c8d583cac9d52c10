//! Random and structured graph generators.
//!
//! Every random generator is a pure function of its parameters and seed.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use super::planarity::is_planar_edges;
use super::{DegreeSequence, Graph};
use crate::error::{Error, Result};
use crate::rng::SearchRng;

/// Erdős–Rényi graph with edge probability `d / (n - 1)`, so the expected
/// degree of every vertex is `d`.
pub fn gen_erdos_renyi(n: usize, d: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("Erdős–Rényi graph needs n >= 1"));
    }
    if !(d >= 0.0) || d > (n - 1) as f64 {
        return Err(Error::invalid(format!(
            "average degree {d} outside [0, {}]",
            n - 1
        )));
    }
    if n == 1 {
        return Ok(Graph::empty(1));
    }
    let p = d / (n - 1) as f64;
    let mut rng = SearchRng::new(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edges(n, pairs)
}

/// Uniform-ish random `r`-regular graph.
///
/// Stubs are shuffled and paired; pairs that would form a loop or a repeated
/// edge are returned to the pool and re-paired, and the attempt restarts from
/// scratch when no valid pair is left. Dense cases (`r > (n - 1) / 2`) are
/// built as the complement of an `(n - 1 - r)`-regular graph.
pub fn gen_regular(n: usize, r: usize, seed: u64) -> Result<Graph> {
    if r >= n.max(1) {
        return Err(Error::invalid(format!("degree {r} must be below n = {n}")));
    }
    if (n * r) % 2 != 0 {
        return Err(Error::invalid(format!("n * r = {} is odd", n * r)));
    }
    if 2 * r > n - 1 {
        return Ok(gen_regular(n, n - 1 - r, seed)?.complement());
    }
    let mut rng = SearchRng::new(seed);
    let g = loop {
        if let Some(edges) = try_pair_stubs(n, r, &mut rng) {
            break Graph::from_edges(n, edges)?;
        }
    };
    debug_assert!(g.degrees().iter().all(|&d| d == r));
    Ok(g)
}

fn try_pair_stubs(n: usize, r: usize, rng: &mut SearchRng) -> Option<Vec<(usize, usize)>> {
    let mut edges: HashSet<(usize, usize)> = HashSet::with_capacity(n * r / 2);
    let mut ordered = Vec::with_capacity(n * r / 2);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();

    while !stubs.is_empty() {
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && edges.insert((a, b)) {
                ordered.push((a, b));
            } else {
                *leftover.entry(a).or_default() += 1;
                *leftover.entry(b).or_default() += 1;
            }
        }
        if !can_still_pair(&edges, &leftover) {
            return None;
        }
        stubs = leftover
            .iter()
            .flat_map(|(&v, &count)| std::iter::repeat_n(v, count))
            .collect();
    }
    Some(ordered)
}

fn can_still_pair(edges: &HashSet<(usize, usize)>, leftover: &BTreeMap<usize, usize>) -> bool {
    if leftover.is_empty() {
        return true;
    }
    let vs: Vec<usize> = leftover.keys().copied().collect();
    vs.iter()
        .enumerate()
        .any(|(i, &a)| vs[..i].iter().any(|&b| !edges.contains(&(b.min(a), b.max(a)))))
}

/// Deterministic graph families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Cycle(usize),
    Complete(usize),
    /// Integer box `a_1 x ... x a_r`, neighbors differ by one in one coordinate.
    Grid(Vec<usize>),
    /// Brick-wall hexagonal tiling with the given rows and columns of hexagons.
    HexLattice { rows: usize, cols: usize },
    /// Triangular tiling with the given rows and columns of triangles.
    /// `cols` must be even; the graph is the `(rows + 1) x (cols / 2 + 1)`
    /// grid with one diagonal per square, alternating orientation per row.
    TriLattice { rows: usize, cols: usize },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cycle(n) => write!(f, "cycle({n})"),
            FamilySpec::Complete(n) => write!(f, "complete({n})"),
            FamilySpec::Grid(dims) => {
                let dims: Vec<String> = dims.iter().map(ToString::to_string).collect();
                write!(f, "grid({})", dims.join("x"))
            }
            FamilySpec::HexLattice { rows, cols } => write!(f, "hex({rows}x{cols})"),
            FamilySpec::TriLattice { rows, cols } => write!(f, "tri({rows}x{cols})"),
        }
    }
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::invalid(format!("{self}: {msg}")));
        match self {
            FamilySpec::Cycle(n) if *n < 3 => bad("a cycle needs at least 3 vertices"),
            FamilySpec::Complete(n) if *n < 1 => bad("need at least one vertex"),
            FamilySpec::Grid(dims) if dims.is_empty() => bad("grid needs at least one dimension"),
            FamilySpec::Grid(dims) if dims.contains(&0) => bad("grid sides must be positive"),
            FamilySpec::HexLattice { rows, cols } if *rows < 1 || *cols < 1 => {
                bad("need at least one row and column")
            }
            FamilySpec::TriLattice { rows, cols } if *rows < 1 || *cols < 2 || cols % 2 != 0 => {
                bad("need rows >= 1 and an even number of columns >= 2")
            }
            _ => Ok(()),
        }
    }
}

pub fn gen_family(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    match spec {
        FamilySpec::Cycle(n) => Graph::from_edges(*n, (0..*n).map(|i| (i, (i + 1) % n))),
        FamilySpec::Complete(n) => {
            let n = *n;
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        FamilySpec::Grid(dims) => grid(dims),
        FamilySpec::HexLattice { rows, cols } => hex_lattice(*rows, *cols),
        FamilySpec::TriLattice { rows, cols } => tri_lattice(*rows + 1, *cols / 2 + 1),
    }
}

fn grid(dims: &[usize]) -> Result<Graph> {
    let n: usize = dims.iter().product();
    let mut strides = vec![1usize; dims.len()];
    for i in 1..dims.len() {
        strides[i] = strides[i - 1] * dims[i - 1];
    }
    let mut pairs = Vec::new();
    for v in 0..n {
        for (&side, &stride) in dims.iter().zip(&strides) {
            if (v / stride) % side + 1 < side {
                pairs.push((v, v + stride));
            }
        }
    }
    Graph::from_edges(n, pairs)
}

fn hex_lattice(rows: usize, cols: usize) -> Result<Graph> {
    // Brick-wall layout: columns i in 0..=cols, heights j in 0..=2*rows+1.
    // Column edges join (i, j)-(i, j+1); row edges join (i, j)-(i+1, j) when
    // i and j have the same parity. Two degree-one corners are dropped.
    let height = 2 * rows + 2;
    let removed = [(0, height - 1), (cols, (height - 1) * (cols % 2))];
    let mut index = BTreeMap::new();
    for i in 0..=cols {
        for j in 0..height {
            if !removed.contains(&(i, j)) {
                let next = index.len();
                index.insert((i, j), next);
            }
        }
    }
    let mut pairs = Vec::new();
    let mut link = |a: (usize, usize), b: (usize, usize)| {
        if let (Some(&u), Some(&v)) = (index.get(&a), index.get(&b)) {
            pairs.push((u, v));
        }
    };
    for i in 0..=cols {
        for j in 0..height - 1 {
            link((i, j), (i, j + 1));
        }
    }
    for i in 0..cols {
        for j in 0..height {
            if i % 2 == j % 2 {
                link((i, j), (i + 1, j));
            }
        }
    }
    Graph::from_edges(index.len(), pairs)
}

fn tri_lattice(grid_rows: usize, grid_cols: usize) -> Result<Graph> {
    let id = |r: usize, c: usize| r * grid_cols + c;
    let mut pairs = Vec::new();
    for r in 0..grid_rows {
        for c in 0..grid_cols {
            if c + 1 < grid_cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < grid_rows {
                pairs.push((id(r, c), id(r + 1, c)));
                if c + 1 < grid_cols {
                    if r % 2 == 0 {
                        pairs.push((id(r, c), id(r + 1, c + 1)));
                    } else {
                        pairs.push((id(r, c + 1), id(r + 1, c)));
                    }
                }
            }
        }
    }
    Graph::from_edges(grid_rows * grid_cols, pairs)
}

/// Random maximal planar graph.
///
/// Starting from the empty graph, the list of non-edges is shuffled and the
/// first pair that keeps the graph planar is added; the remaining list is
/// reshuffled after every addition. A pair that breaks planarity once breaks
/// it for every supergraph, so rejected pairs are discarded for good.
pub fn gen_max_planar(n: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("maximal planar graphs need n >= 3"));
    }
    let mut rng = SearchRng::new(seed);
    let mut candidates: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(3 * n - 6);

    loop {
        candidates.shuffle(&mut rng);
        let mut accepted = None;
        let mut scanned = 0;
        for (i, &pair) in candidates.iter().enumerate() {
            scanned = i + 1;
            edges.push(pair);
            if is_planar_edges(n, &edges) {
                accepted = Some(i);
                break;
            }
            edges.pop();
        }
        match accepted {
            Some(i) => {
                // everything before i was rejected
                candidates.drain(..=i);
            }
            None => {
                debug_assert_eq!(scanned, candidates.len());
                break;
            }
        }
    }

    let g = Graph::from_edges(n, edges)?;
    debug_assert_eq!(g.m(), 3 * n - 6);
    Ok(g)
}

/// Random graph whose sorted degree sequence stays entrywise below `target`'s.
///
/// Same shuffled-list scheme as [`gen_max_planar`], with the planarity test
/// replaced by the degree constraint. Adding edges only raises degrees, so a
/// rejected pair stays rejected.
pub fn gen_replica(target: &DegreeSequence, seed: u64) -> Result<Graph> {
    let n = target.len();
    let bound = target.sorted_desc();
    let mut rng = SearchRng::new(seed);
    let mut degree = vec![0usize; n];
    let mut candidates: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut edges = Vec::new();
    let mut scratch = Vec::with_capacity(n);

    let fits = |degree: &[usize], scratch: &mut Vec<usize>| {
        scratch.clear();
        scratch.extend_from_slice(degree);
        scratch.sort_unstable_by(|a, b| b.cmp(a));
        scratch.iter().zip(&bound).all(|(d, b)| d <= b)
    };

    loop {
        candidates.shuffle(&mut rng);
        let mut accepted = None;
        for (i, &(u, v)) in candidates.iter().enumerate() {
            degree[u] += 1;
            degree[v] += 1;
            if fits(&degree, &mut scratch) {
                accepted = Some(i);
                edges.push((u, v));
                break;
            }
            degree[u] -= 1;
            degree[v] -= 1;
        }
        match accepted {
            Some(i) => {
                candidates.drain(..=i);
            }
            None => break,
        }
    }
    Graph::from_edges(n, edges)
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `cycle:8`, `complete:5`, `grid:3x2`, `hex:9x9`, `tri:19x18`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("expected `family:params`, got `{s}`")))?;
        let nums: Vec<usize> = args
            .split(['x', ','])
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad family parameter `{t}`")))
            })
            .collect::<Result<_>>()?;
        let spec = match (name, nums.as_slice()) {
            ("cycle", [n]) => FamilySpec::Cycle(*n),
            ("complete", [n]) => FamilySpec::Complete(*n),
            ("grid", dims) => FamilySpec::Grid(dims.to_vec()),
            ("hex", [rows, cols]) => FamilySpec::HexLattice {
                rows: *rows,
                cols: *cols,
            },
            ("tri", [rows, cols]) => FamilySpec::TriLattice {
                rows: *rows,
                cols: *cols,
            },
            _ => return Err(Error::invalid(format!("unknown family spec `{s}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_triangle(g: &Graph) -> bool {
        g.edge_triangle_counts().iter().any(|&t| t > 0)
    }

    #[test]
    fn erdos_renyi_edge_cases() {
        for seed in 0..20 {
            assert_eq!(gen_erdos_renyi(2, 1.0, seed).unwrap().m(), 1);
            assert_eq!(gen_erdos_renyi(5, 0.0, seed).unwrap().m(), 0);
        }
        assert!(gen_erdos_renyi(5, 4.5, 0).is_err());
        assert!(gen_erdos_renyi(0, 0.0, 0).is_err());
        assert_eq!(gen_erdos_renyi(1, 0.0, 0).unwrap().n(), 1);
    }

    #[test]
    fn erdos_renyi_mean_edge_count() {
        // Binomial(C(200,2), 10/199): mean 1000, variance 1000 * (1 - 10/199).
        let trials = 1000;
        let total: usize = (0..trials)
            .map(|s| gen_erdos_renyi(200, 10.0, s).unwrap().m())
            .sum();
        let mean = total as f64 / trials as f64;
        let p = 10.0 / 199.0;
        let var = 19900.0 * p * (1.0 - p);
        let se = (var / trials as f64).sqrt();
        assert!((mean - 1000.0).abs() < 3.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn regular_graphs() {
        assert_eq!(gen_regular(4, 0, 1).unwrap().m(), 0);
        assert!(gen_regular(5, 3, 1).is_err());
        assert!(gen_regular(4, 4, 1).is_err());
        for seed in 0..10 {
            let g = gen_regular(200, 3, seed).unwrap();
            assert!(g.degrees().iter().all(|&d| d == 3));
            let g = gen_regular(40, 30, seed).unwrap();
            assert!(g.degrees().iter().all(|&d| d == 30));
        }
        assert_eq!(gen_regular(6, 5, 0).unwrap().m(), 15);
    }

    #[test]
    fn family_counts() {
        let c8 = gen_family(&FamilySpec::Cycle(8)).unwrap();
        assert_eq!((c8.n(), c8.m()), (8, 8));
        assert!(c8.bipartition().is_some());
        assert!(gen_family(&FamilySpec::Cycle(9)).unwrap().bipartition().is_none());

        let g = gen_family(&FamilySpec::Grid(vec![3, 2])).unwrap();
        assert_eq!((g.n(), g.m()), (6, 7));

        let cube = gen_family(&FamilySpec::Grid(vec![2; 7])).unwrap();
        assert_eq!((cube.n(), cube.m()), (128, 448));
        assert!(cube.bipartition().is_some());

        let k5 = gen_family(&FamilySpec::Complete(5)).unwrap();
        assert_eq!(k5.m(), 10);
    }

    #[test]
    fn grid_matches_brute_force() {
        let dims = [4usize, 3, 2];
        let g = gen_family(&FamilySpec::Grid(dims.to_vec())).unwrap();
        let points: Vec<[usize; 3]> = (0..4)
            .flat_map(|a| (0..3).flat_map(move |b| (0..2).map(move |c| [a, b, c])))
            .collect();
        let mut expected = 0;
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                let diff: usize = p.iter().zip(q).map(|(a, b)| a.abs_diff(*b)).sum();
                if diff == 1 {
                    expected += 1;
                }
            }
        }
        assert_eq!(g.m(), expected);
    }

    #[test]
    fn hex_lattice_shape() {
        let g = gen_family(&FamilySpec::HexLattice { rows: 9, cols: 9 }).unwrap();
        assert_eq!((g.n(), g.m()), (198, 278));
        assert!(g.bipartition().is_some());
        assert!(g.degrees().iter().all(|&d| (2..=3).contains(&d)));
        let one = gen_family(&FamilySpec::HexLattice { rows: 1, cols: 1 }).unwrap();
        assert_eq!((one.n(), one.m()), (6, 6));
        assert!(crate::graph::is_planar(&g));
    }

    #[test]
    fn tri_lattice_shape() {
        let g = gen_family(&FamilySpec::TriLattice { rows: 19, cols: 18 }).unwrap();
        assert_eq!(g.n(), 200);
        // grid edges + one diagonal per square
        assert_eq!(g.m(), (19 * 10 + 20 * 9) + 19 * 9);
        assert!(has_triangle(&g));
        assert!(g.bipartition().is_none());
        assert!(g.degrees().iter().all(|&d| d <= 6));
        assert!(g.degrees().contains(&6));
        assert!(crate::graph::is_planar(&g));
    }

    #[test]
    fn family_validation() {
        assert!(gen_family(&FamilySpec::Cycle(2)).is_err());
        assert!(gen_family(&FamilySpec::Grid(vec![])).is_err());
        assert!(gen_family(&FamilySpec::TriLattice { rows: 3, cols: 3 }).is_err());
    }

    #[test]
    fn family_spec_parsing() {
        assert_eq!("cycle:8".parse::<FamilySpec>().unwrap(), FamilySpec::Cycle(8));
        assert_eq!(
            "grid:3x2x2".parse::<FamilySpec>().unwrap(),
            FamilySpec::Grid(vec![3, 2, 2])
        );
        assert!("cycle:x".parse::<FamilySpec>().is_err());
        assert!("moebius:4".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn max_planar_small() {
        assert_eq!(gen_max_planar(3, 0).unwrap().m(), 3);
        let k4 = gen_max_planar(4, 9).unwrap();
        assert_eq!(k4, gen_family(&FamilySpec::Complete(4)).unwrap());
        assert!(gen_max_planar(2, 0).is_err());
    }

    #[test]
    fn max_planar_sweep() {
        for n in 3..=50 {
            for seed in 0..20 {
                let g = gen_max_planar(n, seed).unwrap();
                assert_eq!(g.m(), 3 * n - 6, "n={n} seed={seed}");
                assert!(crate::graph::is_planar(&g));
            }
        }
    }

    #[test]
    fn replica_small() {
        let g = gen_replica(&DegreeSequence::new(vec![1, 1]).unwrap(), 0).unwrap();
        assert_eq!(g.m(), 1);
        for seed in 0..20 {
            let t = gen_replica(&DegreeSequence::new(vec![2, 2, 2]).unwrap(), seed).unwrap();
            assert_eq!(t.m(), 3);
        }
    }

    #[test]
    fn replica_respects_bound() {
        let planar = gen_max_planar(60, 5).unwrap();
        let target = DegreeSequence::of(&planar);
        for seed in 0..5 {
            let r = gen_replica(&target, seed).unwrap();
            let got = DegreeSequence::of(&r).sorted_desc();
            assert!(got.iter().zip(target.sorted_desc()).all(|(a, b)| *a <= b));
        }
    }

    #[test]
    fn generators_are_reproducible() {
        assert_eq!(gen_erdos_renyi(50, 5.0, 3).unwrap(), gen_erdos_renyi(50, 5.0, 3).unwrap());
        assert_eq!(gen_regular(50, 4, 3).unwrap(), gen_regular(50, 4, 3).unwrap());
        assert_eq!(gen_max_planar(30, 3).unwrap(), gen_max_planar(30, 3).unwrap());
        assert_ne!(gen_erdos_renyi(50, 5.0, 3).unwrap(), gen_erdos_renyi(50, 5.0, 4).unwrap());
    }
}
