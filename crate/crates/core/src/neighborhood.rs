//! Rectangular neighborhoods and per-center nearest-neighbor orderings.

use rand::Rng;

use crate::error::{Error, Result};
use crate::sample::{BivariateSample, Seed};

/// Closed axis-aligned rectangle, stored as a center and two half-widths.
///
/// Membership is tested on offsets from the center (`|x - cx| <= half_width`),
/// which is the closed interval `[cx - half_width, cx + half_width]` without
/// the rounding of the endpoint subtraction. A neighborhood built from a
/// corner observation therefore always contains that observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub center: (f64, f64),
    pub half_width: f64,
    pub half_height: f64,
}

impl Rect {
    pub fn from_bounds(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Self> {
        if !(x_lo <= x_hi && y_lo <= y_hi) {
            return Err(Error::invalid("rectangle bounds are inverted"));
        }
        Ok(Self {
            center: ((x_lo + x_hi) / 2.0, (y_lo + y_hi) / 2.0),
            half_width: (x_hi - x_lo) / 2.0,
            half_height: (y_hi - y_lo) / 2.0,
        })
    }

    pub fn x_lo(&self) -> f64 {
        self.center.0 - self.half_width
    }

    pub fn x_hi(&self) -> f64 {
        self.center.0 + self.half_width
    }

    pub fn y_lo(&self) -> f64 {
        self.center.1 - self.half_height
    }

    pub fn y_hi(&self) -> f64 {
        self.center.1 + self.half_height
    }

    pub fn diagonal(&self) -> f64 {
        2.0 * self.half_width.hypot(self.half_height)
    }

    #[inline]
    pub fn contains(&self, (x, y): (f64, f64)) -> bool {
        (x - self.center.0).abs() <= self.half_width
            && (y - self.center.1).abs() <= self.half_height
    }
}

/// The neighborhood centered at `center` with `corner` at a vertex.
pub fn neighborhood_rect(center: (f64, f64), corner: (f64, f64)) -> Rect {
    Rect {
        center,
        half_width: (corner.0 - center.0).abs(),
        half_height: (corner.1 - center.1).abs(),
    }
}

/// Indices of the observations inside `rect`, in sample order.
pub fn points_in_rect(sample: &BivariateSample, rect: &Rect) -> Vec<usize> {
    sample
        .points()
        .enumerate()
        .filter(|&(_, p)| rect.contains(p))
        .map(|(k, _)| k)
        .collect()
}

/// The other observations of a sample, ordered by distance from `center`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborOrdering {
    pub center: usize,
    pub order: Vec<usize>,
}

/// Orders all observations other than `i` by ascending Euclidean distance
/// from observation `i`. Equal distances are resolved by i.i.d. random keys
/// drawn from `seed`, one per observation.
pub fn order_neighbors(sample: &BivariateSample, i: usize, seed: Seed) -> Result<NeighborOrdering> {
    if i >= sample.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: sample.len(),
        });
    }
    let mut scratch = Vec::with_capacity(sample.len());
    let mut order = Vec::with_capacity(sample.len().saturating_sub(1));
    order_into(sample, i, seed, &mut scratch, &mut order);
    Ok(NeighborOrdering { center: i, order })
}

pub(crate) fn order_into(
    sample: &BivariateSample,
    i: usize,
    seed: Seed,
    scratch: &mut Vec<(f64, u64, usize)>,
    order: &mut Vec<usize>,
) {
    let (xi, yi) = sample.point(i);
    let mut rng = seed.rng();
    scratch.clear();
    for (k, (x, y)) in sample.points().enumerate() {
        let key: u64 = rng.random();
        if k != i {
            let (dx, dy) = (x - xi, y - yi);
            scratch.push((dx * dx + dy * dy, key, k));
        }
    }
    scratch.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    order.clear();
    order.extend(scratch.iter().map(|e| e.2));
}
