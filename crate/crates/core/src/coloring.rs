//! Hard and soft colorings, monochromatic-edge losses, rounding.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Tolerance on row sums accepted by [`SoftColoring::new`].
pub const ROW_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardColoring {
    colors: Vec<usize>,
    k: usize,
}

impl HardColoring {
    pub fn new(colors: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("color budget must be at least 1"));
        }
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::ColorOutOfRange { vertex, color, k });
        }
        Ok(Self { colors, k })
    }

    /// Every vertex gets color 0.
    pub fn monochrome(n: usize) -> Self {
        Self {
            colors: vec![0; n],
            k: 1,
        }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.k];
        self.colors.iter().for_each(|&c| seen[c] = true);
        seen.into_iter().filter(|&s| s).count()
    }

    /// Same assignment under a larger budget.
    pub fn with_budget(&self, k: usize) -> Result<Self> {
        HardColoring::new(self.colors.clone(), k)
    }

    pub(crate) fn set(&mut self, v: usize, color: usize) {
        debug_assert!(color < self.k);
        self.colors[v] = color;
    }

    /// One color per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.colors.len() * 3);
        for c in &self.colors {
            let _ = writeln!(out, "{c}");
        }
        out
    }

    /// Parses one color per line; the budget is one more than the largest color
    /// unless `k` is given.
    pub fn from_text(text: &str, k: Option<usize>) -> Result<Self> {
        let colors = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                l.trim()
                    .parse()
                    .map_err(|_| Error::parse(i + 1, format!("bad color `{}`", l.trim())))
            })
            .collect::<Result<Vec<usize>>>()?;
        let k = k.unwrap_or_else(|| colors.iter().max().map_or(1, |&c| c + 1));
        HardColoring::new(colors, k)
    }
}

/// Row-stochastic `n x k` matrix of per-vertex color distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftColoring {
    p: Array2<f64>,
}

impl SoftColoring {
    pub fn new(p: Array2<f64>) -> Result<Self> {
        if p.ncols() == 0 {
            return Err(Error::invalid("soft coloring needs at least one color"));
        }
        for (row, r) in p.rows().into_iter().enumerate() {
            let sum: f64 = r.sum();
            let min = r.iter().copied().fold(f64::INFINITY, f64::min);
            let max = r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if !((sum - 1.0).abs() <= ROW_SUM_TOL && min >= 0.0 && max <= 1.0) {
                return Err(Error::NotRowStochastic { row, sum, min });
            }
        }
        Ok(Self { p })
    }

    pub(crate) fn from_softmax(p: Array2<f64>) -> Self {
        debug_assert!(p
            .rows()
            .into_iter()
            .all(|r| (r.sum() - 1.0).abs() <= ROW_SUM_TOL));
        Self { p }
    }

    pub fn uniform(n: usize, k: usize) -> Self {
        Self {
            p: Array2::from_elem((n, k.max(1)), 1.0 / k.max(1) as f64),
        }
    }

    pub fn one_hot(c: &HardColoring) -> Self {
        let mut p = Array2::zeros((c.len(), c.k()));
        for (v, &color) in c.colors().iter().enumerate() {
            p[[v, color]] = 1.0;
        }
        Self { p }
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.p
    }

    pub fn into_matrix(self) -> Array2<f64> {
        self.p
    }

    pub fn n(&self) -> usize {
        self.p.nrows()
    }

    pub fn k(&self) -> usize {
        self.p.ncols()
    }

    /// CSV, one row per vertex, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in self.p.rows() {
            let cells: Vec<String> = r.iter().map(|x| format!("{x}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LossKind {
    Standard,
    /// Edge weight `(deg(i)^p + deg(j)^p) / 2`.
    DegreePower(u32),
    /// Edge weight `1 + (triangles through the edge)`.
    Triangle,
}

impl Default for LossKind {
    fn default() -> Self {
        LossKind::DegreePower(3)
    }
}

impl fmt::Display for LossKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LossKind::Standard => f.write_str("standard"),
            LossKind::DegreePower(p) => write!(f, "degree-power:{p}"),
            LossKind::Triangle => f.write_str("triangle"),
        }
    }
}

impl FromStr for LossKind {
    type Err = Error;

    /// `standard`, `triangle`, or `degree-power:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(LossKind::Standard),
            "triangle" => Ok(LossKind::Triangle),
            _ => s
                .strip_prefix("degree-power:")
                .and_then(|p| p.parse().ok())
                .map(LossKind::DegreePower)
                .ok_or_else(|| Error::invalid(format!("unknown loss `{s}`"))),
        }
    }
}

/// A loss kind with its per-edge weights, aligned with [`Graph::edges`].
#[derive(Debug, Clone, PartialEq)]
pub struct LossSpec {
    kind: LossKind,
    weights: Vec<f64>,
}

impl LossSpec {
    pub fn new(g: &Graph, kind: LossKind) -> Self {
        let weights = match kind {
            LossKind::Standard => vec![1.0; g.m()],
            LossKind::DegreePower(p) => {
                let pow: Vec<f64> = g.degrees().iter().map(|&d| (d as f64).powi(p as i32)).collect();
                g.edges().iter().map(|&(u, v)| (pow[u] + pow[v]) / 2.0).collect()
            }
            LossKind::Triangle => g
                .edge_triangle_counts()
                .into_iter()
                .map(|t| 1.0 + t as f64)
                .collect(),
        };
        Self { kind, weights }
    }

    pub fn standard(g: &Graph) -> Self {
        Self::new(g, LossKind::Standard)
    }

    pub fn kind(&self) -> LossKind {
        self.kind
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Number of monochromatic edges.
pub fn loss_hard(g: &Graph, c: &HardColoring) -> Result<usize> {
    if c.len() != g.n() {
        return Err(Error::shape(g.n(), c.len()));
    }
    let colors = c.colors();
    Ok(g.edges().iter().filter(|&&(u, v)| colors[u] == colors[v]).count())
}

/// Weighted expected number of monochromatic edges, `sum_e w_e <p_i, p_j>`.
pub fn loss_soft(g: &Graph, s: &SoftColoring, spec: &LossSpec) -> Result<f64> {
    if s.n() != g.n() {
        return Err(Error::shape(format!("{} rows", g.n()), format!("{} rows", s.n())));
    }
    if spec.weights.len() != g.m() {
        return Err(Error::shape(
            format!("{} edge weights", g.m()),
            spec.weights.len(),
        ));
    }
    Ok(soft_loss_unchecked(g, s.matrix(), spec.weights()))
}

pub(crate) fn soft_loss_unchecked(g: &Graph, p: &Array2<f64>, weights: &[f64]) -> f64 {
    g.edges()
        .iter()
        .zip(weights)
        .map(|(&(u, v), w)| w * p.row(u).dot(&p.row(v)))
        .sum()
}

/// Per-row argmax, lowest index on ties.
pub fn round_soft(s: &SoftColoring) -> HardColoring {
    let colors = s
        .matrix()
        .rows()
        .into_iter()
        .map(|r| {
            let mut best = 0;
            for (j, &x) in r.iter().enumerate() {
                if x > r[best] {
                    best = j;
                }
            }
            best
        })
        .collect();
    HardColoring {
        colors,
        k: s.k(),
    }
}

/// Smallest positive `k` with `2 k ln k > d`.
pub fn k_d(d: f64) -> usize {
    assert!(d > 0.0, "k_d needs a positive average degree");
    let mut k = 1usize;
    while 2.0 * k as f64 * (k as f64).ln() <= d {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use ndarray::array;

    use super::*;
    use crate::graph::{gen_family, FamilySpec};

    fn triangle() -> Graph {
        gen_family(&FamilySpec::Complete(3)).unwrap()
    }

    #[test]
    fn hard_loss_examples() {
        let g = triangle();
        let proper = HardColoring::new(vec![0, 1, 2], 3).unwrap();
        assert_eq!(loss_hard(&g, &proper).unwrap(), 0);
        assert_eq!(loss_hard(&g, &HardColoring::monochrome(3)).unwrap(), 3);

        let c8 = gen_family(&FamilySpec::Cycle(8)).unwrap();
        let c = HardColoring::new(vec![0, 0, 1, 1, 0, 1, 0, 1], 2).unwrap();
        assert_eq!(loss_hard(&c8, &c).unwrap(), 2);

        assert!(loss_hard(&g, &HardColoring::monochrome(2)).is_err());
    }

    #[test]
    fn soft_loss_examples() {
        let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
        let s = SoftColoring::uniform(2, 2);
        assert_eq!(loss_soft(&edge, &s, &LossSpec::standard(&edge)).unwrap(), 0.5);

        let k5 = gen_family(&FamilySpec::Complete(5)).unwrap();
        let s = SoftColoring::uniform(5, 5);
        let l = loss_soft(&k5, &s, &LossSpec::standard(&k5)).unwrap();
        assert!((l - 2.0).abs() < 1e-12);

        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let mono = SoftColoring::one_hot(&HardColoring::monochrome(3));
        let spec = LossSpec::new(&path, LossKind::DegreePower(3));
        assert_eq!(spec.weights(), &[4.5, 4.5]);
        assert_eq!(loss_soft(&path, &mono, &spec).unwrap(), 9.0);
    }

    #[test]
    fn soft_coloring_validation() {
        assert!(SoftColoring::new(array![[0.5, 0.5], [0.3, 0.7]]).is_ok());
        assert!(matches!(
            SoftColoring::new(array![[0.5, 0.5], [0.3, 0.6]]),
            Err(Error::NotRowStochastic { row: 1, .. })
        ));
        assert!(SoftColoring::new(array![[1.5, -0.5]]).is_err());
        assert!(SoftColoring::new(array![[0.5, 0.5 + 1e-10]]).is_ok());
    }

    #[test]
    fn rounding() {
        let s = SoftColoring::new(array![[0.9, 0.1], [0.2, 0.8], [0.5, 0.5]]).unwrap();
        assert_eq!(round_soft(&s).colors(), &[0, 1, 0]);
    }

    #[test]
    fn triangle_weights() {
        let k4 = gen_family(&FamilySpec::Complete(4)).unwrap();
        let spec = LossSpec::new(&k4, LossKind::Triangle);
        assert!(spec.weights().iter().all(|&w| w == 3.0));
    }

    #[test]
    fn k_d_values() {
        assert_eq!(k_d(10.0), 4);
        assert_eq!(k_d(16.0), 5);
        assert_eq!(k_d(20.0), 6);
        assert_eq!(k_d(1.0), 2);
        let mut prev = 1;
        for i in 1..2000 {
            let k = k_d(i as f64 * 0.05);
            assert!(k >= prev);
            prev = k;
        }
    }

    #[test]
    fn loss_kind_round_trip() {
        for kind in [LossKind::Standard, LossKind::DegreePower(3), LossKind::Triangle] {
            assert_eq!(kind.to_string().parse::<LossKind>().unwrap(), kind);
        }
        assert!("degree-power:x".parse::<LossKind>().is_err());
    }

    #[test]
    fn coloring_text_round_trip() {
        let c = HardColoring::new(vec![2, 0, 1, 1], 3).unwrap();
        assert_eq!(HardColoring::from_text(&c.to_text(), None).unwrap(), c);
        assert!(HardColoring::new(vec![0, 3], 3).is_err());
        assert_eq!(c.colors_used(), 3);
    }
}
