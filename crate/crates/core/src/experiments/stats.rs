use crate::error::{Error, Result};

/// Normal quantile used for the approximate 95% intervals.
pub const Z_95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub mean: f64,
    pub halfwidth: f64,
}

impl Interval {
    pub fn lo(&self) -> f64 {
        self.mean - self.halfwidth
    }

    pub fn hi(&self) -> f64 {
        self.mean + self.halfwidth
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }
}

/// `mean +- 1.96 s / sqrt(N)` with the Bessel-corrected standard deviation.
pub fn confidence_interval(samples: &[f64]) -> Result<Interval> {
    if samples.len() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
    let s = (ss / (n - 1.0)).sqrt();
    Ok(Interval {
        mean,
        halfwidth: Z_95 * s / n.sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
}

impl LinearFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// Ordinary least squares line through `(x, y)` points.
pub fn fit_line(points: &[(f64, f64)]) -> Result<LinearFit> {
    if points.len() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: points.len(),
        });
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateRegression);
    }
    let slope = sxy / sxx;
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
    })
}

pub fn fit_and_extrapolate(points: &[(f64, f64)], targets: &[f64]) -> Result<(LinearFit, Vec<f64>)> {
    let fit = fit_line(points)?;
    Ok((fit, targets.iter().map(|&x| fit.predict(x)).collect()))
}

/// Densities `0.10, 0.11, ..., 1.00`.
pub fn density_grid() -> Vec<f64> {
    (10..=100).map(|i| i as f64 / 100.0).collect()
}

/// Smallest grid value where a monotone predicate holds, by binary search.
/// `None` when it fails at the last value.
pub fn search_threshold<F>(grid: &[f64], mut pred: F) -> Result<Option<f64>>
where
    F: FnMut(f64) -> Result<bool>,
{
    let Some(&last) = grid.last() else {
        return Ok(None);
    };
    if !pred(last)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0, grid.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(grid[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(grid[lo]))
}
