use ndarray::{Array2, ArrayView2};

use crate::graph::Graph;

/// Symmetric normalized adjacency without self-loops, `1 / sqrt(deg(i) deg(j))`
/// on every edge, stored in CSR form.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedAdjacency {
    n: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl NormalizedAdjacency {
    pub fn new(g: &Graph) -> Self {
        let inv_sqrt: Vec<f64> = g
            .degrees()
            .iter()
            .map(|&d| if d == 0 { 0.0 } else { 1.0 / (d as f64).sqrt() })
            .collect();
        let mut indptr = Vec::with_capacity(g.n() + 1);
        let mut indices = Vec::with_capacity(2 * g.m());
        let mut values = Vec::with_capacity(2 * g.m());
        indptr.push(0);
        for i in 0..g.n() {
            for &j in g.neighbors(i) {
                indices.push(j);
                values.push(inv_sqrt[i] * inv_sqrt[j]);
            }
            indptr.push(indices.len());
        }
        Self {
            n: g.n(),
            indptr,
            indices,
            values,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let row = &self.indices[self.indptr[i]..self.indptr[i + 1]];
        row.binary_search(&j)
            .map_or(0.0, |pos| self.values[self.indptr[i] + pos])
    }

    pub fn to_dense(&self) -> Array2<f64> {
        let mut a = Array2::zeros((self.n, self.n));
        for i in 0..self.n {
            for idx in self.indptr[i]..self.indptr[i + 1] {
                a[[i, self.indices[idx]]] = self.values[idx];
            }
        }
        a
    }

    /// `Â x`.
    pub fn apply(&self, x: ArrayView2<f64>) -> Array2<f64> {
        assert_eq!(x.nrows(), self.n, "row count must match the graph order");
        let mut out = Array2::zeros(x.raw_dim());
        for (i, mut out_row) in out.rows_mut().into_iter().enumerate() {
            for idx in self.indptr[i]..self.indptr[i + 1] {
                out_row.scaled_add(self.values[idx], &x.row(self.indices[idx]));
            }
        }
        out
    }
}
