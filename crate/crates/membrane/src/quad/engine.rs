//! Numeric quadrature over products of ordered simplices.
//!
//! Each axis carries a list of segments: `count` ordered ranks confined to
//! `[lo, hi]`, optionally subdivided at interior breakpoints (seams of
//! piecewise-smooth integrands). The ordered domain decomposes into cells:
//! nondecreasing assignments of ranks to panels, each run within a panel an
//! ordered sub-simplex mapped to the cube by the telescoping transform
//! `w_j = s_j * s_{j+1} * ... * s_k` with Jacobian `Π s_j^{j-1}`. Polynomial
//! integrands therefore stay polynomial in the cube coordinates and tensor
//! Gauss rules recover them to machine precision.
//!
//! The Monte-Carlo path samples each segment by sorting uniforms, which
//! avoids the `1/n!` acceptance rate of rejection sampling; accumulation is
//! deterministic for a fixed seed and cell order.

use crate::error::{Error, Result};
use crate::quad::gauss::gauss_legendre;
use crate::util::pairwise_sum;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// `count` ordered coordinates in `[lo, hi]`, smooth between `breaks`.
#[derive(Clone, Debug)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub breaks: Vec<f64>,
}

impl Segment {
    pub fn new(lo: f64, hi: f64, count: usize) -> Self {
        Segment {
            lo,
            hi,
            count,
            breaks: vec![],
        }
    }

    pub fn with_breaks(lo: f64, hi: f64, count: usize, mut breaks: Vec<f64>) -> Self {
        breaks.retain(|&b| b > lo && b < hi);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        Segment {
            lo,
            hi,
            count,
            breaks,
        }
    }

    fn panels(&self) -> Vec<(f64, f64)> {
        let mut edges = vec![self.lo];
        edges.extend(self.breaks.iter().copied());
        edges.push(self.hi);
        edges.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// Ordered ranks along one axis: consecutive independent segments.
#[derive(Clone, Debug, Default)]
pub struct AxisSpec {
    pub segments: Vec<Segment>,
}

impl AxisSpec {
    pub fn single(lo: f64, hi: f64, count: usize) -> Self {
        AxisSpec {
            segments: vec![Segment::new(lo, hi, count)],
        }
    }

    pub fn total_count(&self) -> usize {
        self.segments.iter().map(|s| s.count).sum()
    }

    /// Cells: per segment, all nondecreasing panel assignments; across
    /// segments, the cartesian product. Each cell is a list of
    /// `(lo, hi, run)` blocks covering the ranks in order.
    fn cells(&self) -> Vec<Vec<(f64, f64, usize)>> {
        let mut acc: Vec<Vec<(f64, f64, usize)>> = vec![vec![]];
        for seg in &self.segments {
            let panels = seg.panels();
            let assignments = compositions(seg.count, panels.len());
            let mut next = Vec::with_capacity(acc.len() * assignments.len());
            for prefix in &acc {
                for assign in &assignments {
                    let mut cell = prefix.clone();
                    for (p, &run) in assign.iter().enumerate() {
                        if run > 0 {
                            cell.push((panels[p].0, panels[p].1, run));
                        }
                    }
                    next.push(cell);
                }
            }
            acc = next;
        }
        acc
    }
}

/// All ways to write `n` as an ordered sum of `parts` nonnegative integers.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut buf = vec![0usize; parts];
    fn rec(n: usize, idx: usize, buf: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if idx + 1 == buf.len() {
            buf[idx] = n;
            out.push(buf.clone());
            return;
        }
        for take in 0..=n {
            buf[idx] = take;
            rec(n - take, idx + 1, buf, out);
        }
    }
    rec(n, 0, &mut buf, &mut out);
    out
}

/// Quadrature method selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    GaussCell,
    MonteCarlo,
}

/// Knobs for the numeric evaluators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub method: Method,
    /// Gauss points per cube dimension.
    pub points: usize,
    /// Monte-Carlo sample count.
    pub samples: usize,
    pub seed: u64,
    pub abs_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            method: Method::GaussCell,
            points: 16,
            samples: 200_000,
            seed: 0,
            abs_tol: 1e-9,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.points == 0 || self.samples == 0 {
            return Err(Error::invalid("point and sample counts must be positive"));
        }
        if !self.abs_tol.is_finite() || self.abs_tol <= 0.0 {
            return Err(Error::invalid("tolerance must be positive"));
        }
        Ok(())
    }

    pub fn gauss(points: usize) -> Self {
        QuadratureConfig {
            method: Method::GaussCell,
            points,
            ..Default::default()
        }
    }

    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        QuadratureConfig {
            method: Method::MonteCarlo,
            samples,
            seed,
            ..Default::default()
        }
    }
}

/// A numeric integral together with an error estimate: quadrature-refinement
/// based for Gauss cells, one standard error for Monte Carlo.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub est_error: f64,
}

/// Integrate `f` over the product of the ordered axis domains. The callback
/// receives, per axis, the coordinates sorted by rank.
pub fn ordered_quadrature(
    axes: &[AxisSpec],
    f: &(dyn Fn(&[Vec<f64>]) -> f64 + Sync),
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    cfg.validate()?;
    match cfg.method {
        Method::GaussCell => {
            // a coarser companion rule supplies the error estimate
            let coarse = gauss_pass(axes, f, cfg.points.saturating_sub(2).max(2))?;
            let fine = gauss_pass(axes, f, cfg.points)?;
            Ok(QuadResult {
                value: fine,
                est_error: (fine - coarse).abs(),
            })
        }
        Method::MonteCarlo => monte_carlo_pass(axes, f, cfg),
    }
}

fn gauss_pass(
    axes: &[AxisSpec],
    f: &(dyn Fn(&[Vec<f64>]) -> f64 + Sync),
    points: usize,
) -> Result<f64> {
    let per_axis_cells: Vec<Vec<Vec<(f64, f64, usize)>>> = axes.iter().map(|a| a.cells()).collect();
    // cartesian product of cell choices across axes
    let mut cell_combos: Vec<Vec<usize>> = vec![vec![]];
    for cells in &per_axis_cells {
        let mut next = Vec::with_capacity(cell_combos.len() * cells.len());
        for prefix in &cell_combos {
            for i in 0..cells.len() {
                let mut c = prefix.clone();
                c.push(i);
                next.push(c);
            }
        }
        cell_combos = next;
    }
    let (nodes01, weights01) = {
        let (xs, ws) = gauss_legendre(points);
        let xs: Vec<f64> = xs.iter().map(|x| 0.5 * (x + 1.0)).collect();
        let ws: Vec<f64> = ws.iter().map(|w| 0.5 * w).collect();
        (xs, ws)
    };
    let contributions = crate::util::parallel_map(cell_combos.len(), |ci| {
        let combo = &cell_combos[ci];
        let cell_per_axis: Vec<&Vec<(f64, f64, usize)>> = combo
            .iter()
            .enumerate()
            .map(|(ax, &i)| &per_axis_cells[ax][i])
            .collect();
        integrate_cell(&cell_per_axis, axes, f, &nodes01, &weights01)
    });
    Ok(pairwise_sum(&contributions))
}

/// Tensor integration over one cell combination. `cell_per_axis[a]` lists
/// `(lo, hi, run)` blocks; each block contributes `run` cube dimensions.
fn integrate_cell(
    cell_per_axis: &[&Vec<(f64, f64, usize)>],
    axes: &[AxisSpec],
    f: &dyn Fn(&[Vec<f64>]) -> f64,
    nodes01: &[f64],
    weights01: &[f64],
) -> f64 {
    let dims: usize = cell_per_axis
        .iter()
        .map(|c| c.iter().map(|b| b.2).sum::<usize>())
        .sum();
    let g = nodes01.len();
    let mut idx = vec![0usize; dims];
    let mut coords: Vec<Vec<f64>> = axes.iter().map(|a| vec![0.0; a.total_count()]).collect();
    let mut total = 0.0;
    loop {
        // map cube point -> ordered coordinates, accumulate weight
        let mut weight = 1.0;
        let mut dim_cursor = 0usize;
        for (ax, cell) in cell_per_axis.iter().enumerate() {
            let mut rank_cursor = 0usize;
            for &(lo, hi, run) in cell.iter() {
                // telescoping transform within this block: walking from the
                // last rank down gives w_j = s_j * w_{j+1}
                let s = &idx[dim_cursor..dim_cursor + run];
                let scale = hi - lo;
                let mut w_next = 1.0;
                for j in (0..run).rev() {
                    w_next *= nodes01[s[j]];
                    coords[ax][rank_cursor + j] = lo + scale * w_next;
                }
                // Jacobian: scale^run * Π_j s_j^{j-1}, times the cube weights
                let mut jac = scale.powi(run as i32);
                for (j, &si) in s.iter().enumerate() {
                    if j > 0 {
                        jac *= nodes01[si].powi(j as i32);
                    }
                    jac *= weights01[si];
                }
                weight *= jac;
                rank_cursor += run;
                dim_cursor += run;
            }
        }
        total += weight * f(&coords);
        // odometer
        let mut d = 0;
        loop {
            if d == dims {
                return total;
            }
            idx[d] += 1;
            if idx[d] < g {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

fn monte_carlo_pass(
    axes: &[AxisSpec],
    f: &(dyn Fn(&[Vec<f64>]) -> f64 + Sync),
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut volume = 1.0f64;
    for axis in axes {
        for seg in &axis.segments {
            let mut fact = 1.0;
            for k in 1..=seg.count {
                fact *= k as f64;
            }
            volume *= (seg.hi - seg.lo).powi(seg.count as i32) / fact;
        }
    }
    let mut coords: Vec<Vec<f64>> = axes.iter().map(|a| vec![0.0; a.total_count()]).collect();
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    let n = cfg.samples;
    for _ in 0..n {
        for (ax, axis) in axes.iter().enumerate() {
            let mut cursor = 0usize;
            for seg in &axis.segments {
                let block = &mut coords[ax][cursor..cursor + seg.count];
                for slot in block.iter_mut() {
                    *slot = rng.gen_range(seg.lo..seg.hi);
                }
                block.sort_by(f64::total_cmp);
                cursor += seg.count;
            }
        }
        let v = f(&coords);
        sum += v;
        sum_sq += v * v;
    }
    let mean = sum / n as f64;
    let var = (sum_sq / n as f64 - mean * mean).max(0.0);
    Ok(QuadResult {
        value: volume * mean,
        est_error: volume * (var / n as f64).sqrt(),
    })
}
