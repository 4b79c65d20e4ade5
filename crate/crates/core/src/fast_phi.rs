//! Quadrant counts for all neighborhoods of one center in O(n log n).
//!
//! For a center `i`, sort the other observations by their horizontal offset
//! `|x_j - x_i|`. Observation `l` lies in the neighborhood with corner `j`
//! exactly when it comes no later than `j` in that order and its vertical
//! offset is no larger, so the number of observations in every neighborhood
//! is a trail count of the vertical offsets taken in horizontal order.
//! Splitting that sequence by quadrant membership and trail-counting each part
//! yields the per-quadrant counts:
//!
//! * for a corner inside the quadrant, the trail count over the in-quadrant
//!   subsequence is the quadrant count itself;
//! * for any other corner, it is the total trail count minus the trail count
//!   over the out-of-quadrant subsequence.
//!
//! The reduction is exact when no two horizontal offsets coincide and no
//! coordinate is shared with the center. Inputs violating that yield
//! [`Error::TiesPresent`].

use crate::error::{Error, Result};
use crate::sample::BivariateSample;
use crate::statistics::QuadrantCounts;

/// For each position `j`, the number of later elements strictly greater than
/// `values[j]`. Merge sort, O(m log m).
pub fn surpasser_count(values: &[f64]) -> Vec<usize> {
    let mut scratch = MergeScratch::default();
    let mut ranks = Vec::new();
    scratch.dense_ranks(values, &mut ranks);
    let mut out = Vec::new();
    scratch.surpassers(ranks.iter().copied(), &mut out);
    out
}

/// `t_j = #{k <= j : values[k] <= values[j]}`, i.e. the surpasser count of the
/// reversed sequence subtracted from the position. O(m log m).
pub fn trail_count(values: &[f64]) -> Vec<usize> {
    let mut scratch = MergeScratch::default();
    let mut ranks = Vec::new();
    scratch.dense_ranks(values, &mut ranks);
    let mut out = Vec::new();
    scratch.trail_count(&ranks, &mut out);
    out
}

/// Element of the counting merge sort. `acc` accumulates the surpasser count
/// of the element at original position `pos` while it moves through merges.
#[derive(Debug, Clone, Copy, Default)]
struct Item {
    rank: u32,
    pos: u32,
    acc: u32,
}

/// Reusable buffers for merge-sort counting. Values are replaced by dense
/// ranks first (equal values share a rank), so every merge compares integers.
#[derive(Debug, Default)]
pub(crate) struct MergeScratch {
    items: Vec<Item>,
    spare: Vec<Item>,
    ranked: Vec<(f64, u32)>,
}

impl MergeScratch {
    const RUN: usize = 16;

    pub(crate) fn dense_ranks(&mut self, values: &[f64], out: &mut Vec<u32>) {
        self.ranked.clear();
        self.ranked.extend(values.iter().copied().zip(0..));
        self.ranked.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        out.clear();
        out.resize(values.len(), 0);
        let mut rank = 0;
        for w in 0..self.ranked.len() {
            if w > 0 && self.ranked[w].0 != self.ranked[w - 1].0 {
                rank += 1;
            }
            out[self.ranked[w].1 as usize] = rank;
        }
    }

    /// Surpasser counts of a rank sequence, written to `out` by position.
    fn surpassers(&mut self, ranks: impl Iterator<Item = u32>, out: &mut Vec<usize>) {
        self.items.clear();
        self.items
            .extend(ranks.zip(0..).map(|(rank, pos)| Item { rank, pos, acc: 0 }));
        let m = self.items.len();

        for block in self.items.chunks_mut(Self::RUN) {
            for p in 0..block.len() {
                for q in p + 1..block.len() {
                    block[p].acc += (block[p].rank < block[q].rank) as u32;
                }
            }
            block.sort_unstable_by_key(|it| it.rank);
        }

        self.spare.clear();
        self.spare.resize(m, Item::default());
        let mut width = Self::RUN;
        while width < m {
            for lo in (0..m).step_by(2 * width) {
                let mid = (lo + width).min(m);
                let hi = (lo + 2 * width).min(m);
                merge_counting(&self.items[lo..hi], &mut self.spare[lo..hi], mid - lo);
            }
            std::mem::swap(&mut self.items, &mut self.spare);
            width *= 2;
        }

        out.clear();
        out.resize(m, 0);
        for it in &self.items {
            out[it.pos as usize] = it.acc as usize;
        }
    }

    /// Trail counts of a rank sequence.
    pub(crate) fn trail_count(&mut self, ranks: &[u32], out: &mut Vec<usize>) {
        let m = ranks.len();
        self.surpassers(ranks.iter().rev().copied(), out);
        out.reverse();
        for (p, t) in out.iter_mut().enumerate() {
            *t = p + 1 - *t;
        }
        debug_assert_eq!(out.len(), m);
    }
}

/// Merges the sorted runs `src[..mid]` (earlier positions) and `src[mid..]`
/// (later positions) into `dst`. On equal ranks the right element is emitted
/// first, so every right element still pending when a left element is
/// emitted is strictly greater than it.
fn merge_counting(src: &[Item], dst: &mut [Item], mid: usize) {
    let len = src.len();
    let (mut i, mut j, mut out) = (0, mid, 0);
    while i < mid && j < len {
        let (l, r) = (src[i], src[j]);
        let take_left = l.rank < r.rank;
        let mut pick = if take_left { l } else { r };
        pick.acc += take_left as u32 * (len - j) as u32;
        dst[out] = pick;
        i += take_left as usize;
        j += !take_left as usize;
        out += 1;
    }
    dst[out..out + mid - i].copy_from_slice(&src[i..mid]);
    out += mid - i;
    dst[out..].copy_from_slice(&src[j..]);
}

/// Quadrant counts for every neighborhood of center `i`, indexed by corner.
///
/// The returned vector has one entry per observation; the entry at `i` itself
/// is all zeros. Requires pairwise distinct x-values and pairwise distinct
/// y-values.
pub fn counts_for_center(sample: &BivariateSample, i: usize) -> Result<Vec<QuadrantCounts>> {
    if i >= sample.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: sample.len(),
        });
    }
    if !sample.is_tie_free() {
        return Err(Error::TiesPresent);
    }
    let mut out = Vec::new();
    FastPhi::default().counts(sample, i, &mut out)?;
    Ok(out)
}

/// Reusable scratch space for [`counts_for_center`]. `counts` skips the global
/// tie check; callers must have verified the sample is tie-free.
#[derive(Debug, Default)]
pub(crate) struct FastPhi {
    by_dx: Vec<(f64, u32)>,
    dy_seq: Vec<f64>,
    dy_rank: Vec<u32>,
    /// Quadrant of each position in `omega` order: 0..4 for a, b, c, d and 4
    /// for points level with the center.
    quadrant: Vec<u8>,
    inside: Vec<u32>,
    outside: Vec<u32>,
    sub: Vec<u32>,
    within: Vec<usize>,
    trail: Vec<usize>,
    /// Counts by position in `omega` order.
    tally: Vec<[u32; 4]>,
    merge: MergeScratch,
}

impl FastPhi {
    pub(crate) fn counts(
        &mut self,
        sample: &BivariateSample,
        i: usize,
        out: &mut Vec<QuadrantCounts>,
    ) -> Result<()> {
        let n = sample.len();
        let (xs, ys) = (sample.xs(), sample.ys());
        let (xi, yi) = sample.point(i);

        // omega: the other points ordered by horizontal distance to the center.
        self.by_dx.clear();
        self.by_dx.extend(
            xs.iter()
                .zip(0u32..)
                .filter(|&(_, j)| j as usize != i)
                .map(|(&x, j)| ((x - xi).abs(), j)),
        );
        self.by_dx.sort_unstable_by(|p, q| p.0.total_cmp(&q.0));
        if self.by_dx.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::TiesPresent);
        }

        self.dy_seq.clear();
        self.quadrant.clear();
        for &(_, j) in &self.by_dx {
            let (x, y) = (xs[j as usize], ys[j as usize]);
            self.dy_seq.push((y - yi).abs());
            self.quadrant.push(match (x > xi, y > yi, y < yi) {
                (false, true, _) => 0,
                (true, true, _) => 1,
                (false, _, true) => 2,
                (true, _, true) => 3,
                _ => 4,
            });
        }
        self.merge.dense_ranks(&self.dy_seq, &mut self.dy_rank);
        self.merge.trail_count(&self.dy_rank, &mut self.within);

        let m = self.by_dx.len();
        self.tally.clear();
        self.tally.resize(m, [0; 4]);
        for q in 0..4u8 {
            self.inside.clear();
            self.outside.clear();
            for (pos, &quad) in (0u32..).zip(&self.quadrant) {
                if quad == q {
                    self.inside.push(pos);
                } else {
                    self.outside.push(pos);
                }
            }
            let q = usize::from(q);

            self.sub.clear();
            self.sub
                .extend(self.inside.iter().map(|&p| self.dy_rank[p as usize]));
            self.merge.trail_count(&self.sub, &mut self.trail);
            for (&pos, &t) in self.inside.iter().zip(&self.trail) {
                self.tally[pos as usize][q] = t as u32;
            }

            self.sub.clear();
            self.sub
                .extend(self.outside.iter().map(|&p| self.dy_rank[p as usize]));
            self.merge.trail_count(&self.sub, &mut self.trail);
            for (&pos, &t) in self.outside.iter().zip(&self.trail) {
                self.tally[pos as usize][q] = (self.within[pos as usize] - t) as u32;
            }
        }

        out.clear();
        out.resize(n, QuadrantCounts::default());
        for (&(_, j), &[a, b, c, d]) in self.by_dx.iter().zip(&self.tally) {
            out[j as usize] = QuadrantCounts::new(a as usize, b as usize, c as usize, d as usize);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statistics::counts_brute;

    fn trail_oracle(s: &[f64]) -> Vec<usize> {
        (0..s.len())
            .map(|j| (0..=j).filter(|&k| s[k] <= s[j]).count())
            .collect()
    }

    fn surpasser_oracle(s: &[f64]) -> Vec<usize> {
        (0..s.len())
            .map(|j| (j + 1..s.len()).filter(|&k| s[j] < s[k]).count())
            .collect()
    }

    #[test]
    fn trail_count_examples() {
        assert_eq!(trail_count(&[3., 1., 2.]), vec![1, 1, 2]);
        assert_eq!(trail_count(&[1., 2., 3.]), vec![1, 2, 3]);
        assert_eq!(trail_count(&[]), Vec::<usize>::new());
        assert_eq!(trail_count(&[2., 2., 2.]), vec![1, 2, 3]);
    }

    #[test]
    fn surpasser_count_example() {
        // classic example: GENERATING
        let word: Vec<f64> = "GENERATING".bytes().map(f64::from).collect();
        assert_eq!(surpasser_count(&word), vec![5, 6, 2, 5, 1, 4, 0, 1, 0, 0]);
        assert_eq!(surpasser_count(&word), surpasser_oracle(&word));
    }

    #[test]
    fn fast_counts_match_brute_on_small_sample() {
        let s = BivariateSample::from_points(&[(0., 0.), (1., 2.), (-2., 1.), (3., -1.)]).unwrap();
        let fast = counts_for_center(&s, 0).unwrap();
        for (j, counts) in fast.iter().enumerate().skip(1) {
            assert_eq!(*counts, counts_brute(&s, 0, j).unwrap());
        }
        let pair = BivariateSample::from_points(&[(0., 0.), (1., 1.)]).unwrap();
        let fast = counts_for_center(&pair, 0).unwrap();
        assert_eq!(fast[1], counts_brute(&pair, 0, 1).unwrap());
    }

    #[test]
    fn ties_are_reported() {
        let s = BivariateSample::from_points(&[(0., 0.), (0., 2.), (1., 1.)]).unwrap();
        assert_eq!(counts_for_center(&s, 0), Err(Error::TiesPresent));
        // distinct coordinates, but offsets from the center coincide
        let s = BivariateSample::from_points(&[(0., 0.), (1., 2.), (-1., 1.)]).unwrap();
        assert_eq!(counts_for_center(&s, 0), Err(Error::TiesPresent));
        assert!(counts_for_center(&s, 1).is_ok());
        assert!(matches!(
            counts_for_center(&s, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn trail_count_matches_definition(v in prop::collection::vec(-5i32..5, 0..60)) {
                let s: Vec<f64> = v.into_iter().map(f64::from).collect();
                let t = trail_count(&s);
                prop_assert_eq!(&t, &trail_oracle(&s));
                for (j, &tj) in t.iter().enumerate() {
                    prop_assert!(tj >= 1 && tj <= j + 1);
                }
                prop_assert_eq!(surpasser_count(&s), surpasser_oracle(&s));
            }

            #[test]
            fn fast_counts_match_brute(
                pts in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 2..40)
            ) {
                let s = BivariateSample::from_points(&pts).unwrap();
                prop_assume!(s.is_tie_free());
                for i in 0..s.len() {
                    match counts_for_center(&s, i) {
                        Ok(fast) => {
                            for j in (0..s.len()).filter(|&j| j != i) {
                                let q = fast[j];
                                prop_assert_eq!(q, counts_brute(&s, i, j).unwrap());
                            }
                        }
                        Err(e) => prop_assert_eq!(e, Error::TiesPresent),
                    }
                }
            }
        }
    }
}
