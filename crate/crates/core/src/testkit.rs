//! Ground-truth generators and an independent block-size oracle.
//!
//! Nothing here calls into the nilpotent or Jordan decision logic; the oracle only
//! uses ranks of powers, so it can cross-check those modules.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{frac, int, Rational};
use crate::jordan::EigenBlocks;
use crate::linalg::{rank, Mat};

/// Defaults for conjugator generation: entry bound and steps per dimension.
pub const DEFAULT_BOUND: i64 = 3;
pub const DEFAULT_STEPS_PER_DIM: usize = 4;

/// Target Jordan structure, canonicalized: eigenvalues ascending, sizes descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    pub pairs: Vec<(Rational, Vec<usize>)>,
}

impl BlockSpec {
    pub fn new(mut pairs: Vec<(Rational, Vec<usize>)>) -> Self {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        for (_, sizes) in pairs.iter_mut() {
            sizes.sort_unstable_by(|a, b| b.cmp(a));
        }
        debug_assert!(pairs.windows(2).all(|w| w[0].0 != w[1].0));
        BlockSpec { pairs }
    }

    pub fn nilpotent(sizes: Vec<usize>) -> Self {
        Self::new(vec![(Rational::zero(), sizes)])
    }

    pub fn dim(&self) -> usize {
        self.pairs.iter().flat_map(|(_, s)| s).sum()
    }

    pub fn sizes_at(&self, lambda: &Rational) -> Vec<usize> {
        self.pairs
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, s)| s.clone())
            .unwrap_or_default()
    }
}

pub fn spec_of(blocks: &[EigenBlocks]) -> BlockSpec {
    BlockSpec::new(
        blocks
            .iter()
            .map(|eb| (eb.eigenvalue.clone(), eb.sizes.clone()))
            .collect(),
    )
}

/// Block sizes at `λ` from `r_k = rank((A - λI)^k)`: there are
/// `r_{i-1} - 2·r_i + r_{i+1}` blocks of size exactly `i`. Largest first; empty
/// when `λ` is not an eigenvalue.
pub fn weyr_oracle(a: &Mat, lambda: &Rational) -> Vec<usize> {
    let n = a.rows();
    let b = a.shift(lambda);
    let mut power = Mat::identity(n);
    let mut ranks = Vec::with_capacity(n + 2);
    for _ in 0..=n + 1 {
        ranks.push(rank(&power));
        power = &power * &b;
    }
    let mut sizes = Vec::new();
    for i in (1..=n).rev() {
        let count = ranks[i - 1] + ranks[i + 1] - 2 * ranks[i];
        sizes.extend(std::iter::repeat_n(i, count));
    }
    sizes
}

pub fn build_jordan_matrix(spec: &BlockSpec) -> Mat {
    let n = spec.dim();
    let mut m = Mat::zeros(n, n);
    let mut at = 0;
    for (lambda, sizes) in &spec.pairs {
        for &size in sizes {
            for i in at..at + size {
                m[(i, i)] = lambda.clone();
                if i + 1 < at + size {
                    m[(i, i + 1)] = Rational::one();
                }
            }
            at += size;
        }
    }
    m
}

/// Identity transformed by `steps` random row operations: swaps, or adding an
/// integer multiple in `[-bound, bound]` of one row to another.
pub fn random_unimodular(n: usize, seed: u64, steps: usize, bound: i64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Mat::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        if rng.gen_ratio(1, 4) {
            for c in 0..n {
                let tmp = m[(i, c)].clone();
                m[(i, c)] = m[(j, c)].clone();
                m[(j, c)] = tmp;
            }
        } else {
            let k = int(rng.gen_range(-bound..=bound));
            for c in 0..n {
                let delta = &k * &m[(j, c)];
                m[(i, c)] += delta;
            }
        }
    }
    m
}

/// `(S·J·S⁻¹, S)` with `J` realizing `spec` and `S` unimodular.
pub fn random_similar(spec: &BlockSpec, seed: u64) -> (Mat, Mat) {
    let n = spec.dim();
    let s = random_unimodular(n, seed, DEFAULT_STEPS_PER_DIM * n, DEFAULT_BOUND);
    let s_inv = s.inverse().expect("unimodular matrices are invertible");
    let a = &(&s * &build_jordan_matrix(spec)) * &s_inv;
    (a, s)
}

/// Random partition of `n` into positive parts, largest first.
pub fn random_partition(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// A random spec of dimension `1..=max_dim` with up to three distinct small
/// rational eigenvalues.
pub fn random_block_spec(max_dim: usize, seed: u64) -> BlockSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.gen_range(1..=max_dim);
    let mut pool: Vec<Rational> = (-3..=3).map(int).collect();
    pool.extend([frac(1, 2), frac(-3, 2), frac(2, 3)]);
    pool.shuffle(&mut rng);
    let distinct = rng.gen_range(1..=dim.min(3));

    // split dim into `distinct` positive multiplicities
    let mut cuts: Vec<usize> = (1..dim).collect();
    cuts.shuffle(&mut rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(distinct - 1).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(dim);

    BlockSpec::new(
        cuts.windows(2)
            .zip(pool)
            .map(|(w, lambda)| (lambda, random_partition(&mut rng, w[1] - w[0])))
            .collect(),
    )
}

/// Random nilpotent matrix of dimension `1..=max_dim` with its block sizes.
pub fn random_nilpotent(max_dim: usize, seed: u64) -> (Mat, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = rng.gen_range(1..=max_dim);
    let sizes = random_partition(&mut rng, n);
    let (a, _) = random_similar(&BlockSpec::nilpotent(sizes.clone()), seed);
    (a, sizes)
}

/// Matrices from the classic hand-worked examples.
pub mod fixtures {
    use crate::arith::int;
    use crate::linalg::{Mat, Vector};

    /// Two 5×5 nilpotent upper-triangular matrices, each a single block of size 5.
    pub fn conjugate_pair_5x5() -> (Mat, Mat) {
        let a = Mat::from_ints(&[
            [0, 2, 0, 0, 0],
            [0, 0, 1, 0, 0],
            [0, 0, 0, -1, 0],
            [0, 0, 0, 0, -2],
            [0, 0, 0, 0, 0],
        ]);
        let b = Mat::from_ints(&[
            [0, 1, 2, 3, 4],
            [0, 0, 7, 6, 5],
            [0, 0, 0, 8, 9],
            [0, 0, 0, 0, 10],
            [0, 0, 0, 0, 0],
        ]);
        (a, b)
    }

    /// Nilpotent with a one-dimensional kernel, generated by `e4`.
    pub fn single_chain_4x4() -> Mat {
        Mat::from_ints(&[[0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    }

    /// Eigenvalue 2 with blocks {2, 1} and eigenvalue 4 with one block.
    pub fn two_eigenvalue_4x4() -> Mat {
        Mat::from_ints(&[[2, 0, 2, 1], [0, 2, 1, 1], [0, 0, 2, 2], [0, 0, 0, 4]])
    }

    /// Nilpotent of index 6 with blocks {6, 1}.
    pub fn two_chain_7x7() -> Mat {
        Mat::from_ints(&[
            [0, 1, 4, 5, 6, 7, 8],
            [0, 0, 1, 6, 7, 8, 9],
            [0, 0, 0, 0, 7, 8, 9],
            [0, 0, 0, 0, 0, 10, 11],
            [0, 0, 0, 0, 0, 11, 12],
            [0, 0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 0, 0],
        ])
    }

    /// Hand-picked generators for `two_chain_7x7`: heights 1 and 6.
    pub fn two_chain_7x7_generators() -> Vec<Vector> {
        let col = |xs: [i64; 7]| xs.iter().map(|&x| int(x)).collect::<Vector>();
        vec![col([0, 19, -6, 1, 0, 0, 0]), col([0, 0, 0, 0, 0, 0, 1])]
    }
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::{random_block_spec, random_partition, BlockSpec};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub fn block_spec(max_dim: usize) -> impl Strategy<Value = BlockSpec> {
        any::<u64>().prop_map(move |seed| random_block_spec(max_dim, seed))
    }

    /// Partition of some `n` in `1..=max`, largest part first.
    pub fn partition(max: usize) -> impl Strategy<Value = Vec<usize>> {
        any::<u64>().prop_map(move |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=max);
            random_partition(&mut rng, n)
        })
    }
}
