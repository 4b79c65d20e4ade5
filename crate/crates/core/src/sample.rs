//! Bivariate samples, reproducible seed streams and random permutations.
//!
//! Indices are zero-based throughout the library: observation `i` of a sample
//! of size `n` satisfies `0 <= i < n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered sequence of `(x, y)` observations with finite coordinates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BivariateSample {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl BivariateSample {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                expected: xs.len(),
                actual: ys.len(),
            });
        }
        if let Some(i) = xs
            .iter()
            .zip(&ys)
            .position(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(Error::invalid(format!("observation {i} is not finite")));
        }
        Ok(Self { xs, ys })
    }

    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        let (xs, ys) = points.iter().copied().unzip();
        Self::new(xs, ys)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    #[inline]
    pub fn point(&self, i: usize) -> (f64, f64) {
        (self.xs[i], self.ys[i])
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    /// The sample with the roles of `x` and `y` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
        }
    }

    /// Observations at `indices`, in the given order.
    pub fn subsample(&self, indices: &[usize]) -> Self {
        Self {
            xs: indices.iter().map(|&i| self.xs[i]).collect(),
            ys: indices.iter().map(|&i| self.ys[i]).collect(),
        }
    }

    pub(crate) fn require_len(&self, min: usize) -> Result<()> {
        if self.len() < min {
            return Err(Error::invalid(format!(
                "sample needs at least {min} observations, got {}",
                self.len()
            )));
        }
        Ok(())
    }

    /// True when all x-values are pairwise distinct and all y-values are
    /// pairwise distinct.
    pub fn is_tie_free(&self) -> bool {
        all_distinct(&self.xs) && all_distinct(&self.ys)
    }
}

pub(crate) fn all_distinct(values: &[f64]) -> bool {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// Identifies one random stream: a master seed plus a stream index.
///
/// Streams are ChaCha8 keystreams, so the output for a given seed is the same
/// on every platform. Child streams are obtained with [`Seed::derive`], which
/// lets independent tasks (permutation replicates, centers, Monte Carlo
/// replicates) draw from their own stream regardless of execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub master: u64,
    pub stream: u64,
}

impl Seed {
    pub const fn new(master: u64) -> Self {
        Self { master, stream: 0 }
    }

    pub const fn with_stream(master: u64, stream: u64) -> Self {
        Self { master, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.stream);
        rng
    }

    /// Child seed number `stream` of this seed.
    pub fn derive(&self, stream: u64) -> Seed {
        let master = splitmix64(splitmix64(self.master) ^ self.stream.rotate_left(29));
        Seed { master, stream }
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A bijection on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            if m >= mapping.len() || seen[m] {
                return Err(Error::invalid("mapping is not a permutation"));
            }
            seen[m] = true;
        }
        Ok(Self(mapping))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &m) in self.0.iter().enumerate() {
            inv[m] = i;
        }
        Self(inv)
    }
}

/// Pairs `x_i` with `y_{tau(i)}`; the x-sequence is unchanged.
pub fn permute_y(sample: &BivariateSample, tau: &Permutation) -> Result<BivariateSample> {
    if tau.len() != sample.len() {
        return Err(Error::LengthMismatch {
            expected: sample.len(),
            actual: tau.len(),
        });
    }
    Ok(BivariateSample {
        xs: sample.xs.clone(),
        ys: tau.0.iter().map(|&t| sample.ys[t]).collect(),
    })
}

/// Uniform random permutation of `0..n` by Fisher–Yates.
pub fn random_permutation(n: usize, seed: Seed) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::invalid("permutation length must be positive"));
    }
    let mut rng = seed.rng();
    let mut mapping: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        // u64 bound keeps the draw sequence independent of pointer width
        let j = rng.random_range(0..=i as u64) as usize;
        mapping.swap(i, j);
    }
    Ok(Permutation(mapping))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn perm(one_based: &[usize]) -> Permutation {
        Permutation::new(one_based.iter().map(|i| i - 1).collect()).unwrap()
    }

    #[test]
    fn permute_y_substitutes() {
        let s = BivariateSample::from_points(&[(1., 10.), (2., 20.), (3., 30.)]).unwrap();
        let p = permute_y(&s, &perm(&[2, 3, 1])).unwrap();
        assert_eq!(p.xs(), &[1., 2., 3.]);
        assert_eq!(p.ys(), &[20., 30., 10.]);

        let s = BivariateSample::from_points(&[(0., 5.), (1., 7.)]).unwrap();
        let p = permute_y(&s, &perm(&[2, 1])).unwrap();
        assert_eq!(
            p,
            BivariateSample::from_points(&[(0., 7.), (1., 5.)]).unwrap()
        );

        assert_eq!(permute_y(&s, &Permutation::identity(2)).unwrap(), s);
    }

    #[test]
    fn permute_y_length_mismatch() {
        let s = BivariateSample::from_points(&[(0., 5.), (1., 7.)]).unwrap();
        assert!(matches!(
            permute_y(&s, &Permutation::identity(3)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn sample_rejects_non_finite() {
        assert!(BivariateSample::new(vec![1.0, f64::NAN], vec![0.0, 1.0]).is_err());
        assert!(BivariateSample::new(vec![1.0], vec![f64::INFINITY]).is_err());
        assert!(BivariateSample::new(vec![1.0], vec![]).is_err());
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![1, 0]).is_ok());
    }

    #[test]
    fn random_permutation_trivial_cases() {
        assert_eq!(
            random_permutation(1, Seed::new(9)).unwrap().as_slice(),
            &[0]
        );
        assert!(random_permutation(0, Seed::new(9)).is_err());
        let a = random_permutation(5, Seed::new(42)).unwrap();
        let b = random_permutation(5, Seed::new(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_permutation_is_uniform_for_n3() {
        let root = Seed::new(20261016);
        let draws = 60_000;
        let mut freq: HashMap<Vec<usize>, usize> = HashMap::new();
        for b in 0..draws {
            let p = random_permutation(3, root.derive(b)).unwrap();
            *freq.entry(p.as_slice().to_vec()).or_default() += 1;
        }
        assert_eq!(freq.len(), 6);
        let expected = draws as f64 / 6.0;
        let mut chi2 = 0.0;
        for &count in freq.values() {
            let f = count as f64 / draws as f64;
            assert!((f - 1.0 / 6.0).abs() <= 0.01, "frequency {f}");
            chi2 += (count as f64 - expected).powi(2) / expected;
        }
        // chi-square, 5 degrees of freedom, 0.999 quantile
        assert!(chi2 < 20.52, "chi2 = {chi2}");
    }

    #[test]
    fn derived_streams_differ() {
        let root = Seed::new(7);
        let mut a = root.derive(0).rng();
        let mut b = root.derive(1).rng();
        let xs: Vec<u64> = (0..1000).map(|_| a.random()).collect();
        let ys: Vec<u64> = (0..1000).map(|_| b.random()).collect();
        assert!(xs.iter().zip(&ys).all(|(x, y)| x != y));
        assert_ne!(root.derive(3), Seed::with_stream(7, 3));
    }

    #[test]
    fn seed_stream_is_pinned() {
        // Regression lock on the generator: a change here silently changes
        // every seeded result in the library.
        let mut rng = Seed::with_stream(1, 2).rng();
        let first: u64 = rng.random();
        let mut again = Seed::with_stream(1, 2).rng();
        assert_eq!(first, again.random::<u64>());
        assert_ne!(first, Seed::with_stream(1, 3).rng().random::<u64>());
    }

    #[test]
    fn tie_detection() {
        let s = BivariateSample::from_points(&[(0., 1.), (1., 2.), (2., 3.)]).unwrap();
        assert!(s.is_tie_free());
        let s = BivariateSample::from_points(&[(0., 1.), (0., 2.)]).unwrap();
        assert!(!s.is_tie_free());
        let s = BivariateSample::from_points(&[(0., 1.), (1., 1.)]).unwrap();
        assert!(!s.is_tie_free());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn sample_and_perm() -> impl Strategy<Value = (Vec<(f64, f64)>, u64)> {
            (
                prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 1..40),
                any::<u64>(),
            )
        }

        proptest! {
            #[test]
            fn inverse_restores((pts, seed) in sample_and_perm()) {
                let s = BivariateSample::from_points(&pts).unwrap();
                let tau = random_permutation(s.len(), Seed::new(seed)).unwrap();
                let there = permute_y(&s, &tau).unwrap();
                let back = permute_y(&there, &tau.inverse()).unwrap();
                prop_assert_eq!(back, s);
            }

            #[test]
            fn y_multiset_preserved((pts, seed) in sample_and_perm()) {
                let s = BivariateSample::from_points(&pts).unwrap();
                let tau = random_permutation(s.len(), Seed::new(seed)).unwrap();
                let p = permute_y(&s, &tau).unwrap();
                let mut a = s.ys().to_vec();
                let mut b = p.ys().to_vec();
                a.sort_by(f64::total_cmp);
                b.sort_by(f64::total_cmp);
                prop_assert_eq!(a, b);
                prop_assert_eq!(p.xs(), s.xs());
            }
        }
    }
}
