//! Block structure of nilpotent operators.
//!
//! For nilpotent `A` with index `N`, `d_i = dim N(A|R(A^i))` counts the Jordan blocks
//! of size at least `i + 1`, so `d_{i-1} - d_i` is the number of blocks of size
//! exactly `i`. Block generators are found one distinct size at a time, largest
//! first, as coset representatives in `N(A^m)/N(A^{m-1})` that are independent of
//! the chains already found.

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{
    column_space_basis, extend_independent, is_zero_vector, nullspace_basis, rank,
    rank_of, Mat, Vector,
};

/// The sequence `d_0, …, d_N` for a nilpotent operator of index `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSequence {
    values: Vec<usize>,
}

impl DSequence {
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn nilpotency_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `counts[i - 1]` is the number of blocks of size exactly `i`.
    pub fn block_counts(&self) -> Vec<usize> {
        self.values.windows(2).map(|w| w[0] - w[1]).collect()
    }

    /// Block sizes, largest first.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::new();
        for (i, &count) in self.block_counts().iter().enumerate().rev() {
            sizes.extend(std::iter::repeat_n(i + 1, count));
        }
        sizes
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub generator: Vector,
    pub height: usize,
}

impl Chain {
    /// `g, Ag, …, A^{h-1}g`
    pub fn vectors(&self, a: &Mat) -> Vec<Vector> {
        let mut out = Vec::with_capacity(self.height);
        let mut v = self.generator.clone();
        for _ in 0..self.height {
            let next = a.mul_vec(&v);
            out.push(v);
            v = next;
        }
        out
    }
}

/// Cyclic chains whose vectors together form a basis; sorted by descending height,
/// ties in discovery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub chains: Vec<Chain>,
}

impl CyclicDecomposition {
    pub fn heights(&self) -> Vec<usize> {
        self.chains.iter().map(|c| c.height).collect()
    }
}

fn ensure_operator(a: &Mat) -> Result<usize> {
    let n = a.ensure_square()?;
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    Ok(n)
}

/// Smallest `N ≥ 1` with `A^N = 0`.
pub fn nilpotency_index(a: &Mat) -> Result<usize> {
    let n = ensure_operator(a)?;
    let mut power = a.clone();
    for k in 1..=n {
        if power.is_zero() {
            return Ok(k);
        }
        power = &power * a;
    }
    Err(Error::NotNilpotent)
}

/// Smallest `h ≥ 1` with `A^h v = 0`.
pub fn height(a: &Mat, v: &[Rational]) -> Result<usize> {
    let n = ensure_operator(a)?;
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a {n}x{n} operator",
            v.len()
        )));
    }
    if is_zero_vector(v) {
        return Err(Error::ZeroVector);
    }
    let mut w = v.to_vec();
    for h in 1..=n {
        w = a.mul_vec(&w);
        if is_zero_vector(&w) {
            return Ok(h);
        }
    }
    Err(Error::NotNilpotent)
}

/// Powers `A^0, …, A^N` of a nilpotent operator; the last one is zero.
fn powers(a: &Mat) -> Result<Vec<Mat>> {
    let index = nilpotency_index(a)?;
    let mut out = vec![Mat::identity(a.rows())];
    for k in 1..=index {
        out.push(&out[k - 1] * a);
    }
    Ok(out)
}

/// `d_i = rank(A^i) - rank(A^{i+1})` for `i = 0..=N`.
pub fn d_sequence(a: &Mat) -> Result<DSequence> {
    let ranks: Vec<usize> = powers(a)?.iter().map(rank).collect();
    let mut values: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    // rank(A^{N+1}) = rank(A^N) = 0
    values.push(0);
    Ok(DSequence { values })
}

/// Same invariants computed from the definition: the nullity of `A` restricted
/// to a column basis of `A^i`.
pub fn d_sequence_restricted(a: &Mat) -> Result<DSequence> {
    let n = a.rows();
    let values = powers(a)?
        .iter()
        .map(|p| {
            let basis = column_space_basis(p);
            if basis.is_empty() {
                return 0;
            }
            let image = a * &Mat::from_columns(n, &basis);
            basis.len() - rank(&image)
        })
        .collect();
    Ok(DSequence { values })
}

/// Jordan block sizes of a nilpotent operator, largest first.
pub fn block_sizes(a: &Mat) -> Result<Vec<usize>> {
    Ok(d_sequence(a)?.block_sizes())
}

/// Explicit chain generators for every Jordan block of a nilpotent operator.
pub fn block_generators(a: &Mat) -> Result<CyclicDecomposition> {
    let n = ensure_operator(a)?;
    let powers = powers(a)?;
    let counts = d_sequence(a)?.block_counts();
    let kernels: Vec<Vec<Vector>> = powers.iter().map(nullspace_basis).collect();

    let mut chains = Vec::new();
    // (vector, smallest k with A^k v = 0) for every vector of every chain so far
    let mut spanned: Vec<(Vector, usize)> = Vec::new();

    for size in (1..counts.len() + 1).rev() {
        let wanted = counts[size - 1];
        if wanted == 0 {
            continue;
        }
        let mut existing = kernels[size - 1].clone();
        existing.extend(
            spanned
                .iter()
                .filter(|(_, level)| *level <= size)
                .map(|(v, _)| v.clone()),
        );
        let found = extend_independent(&existing, &kernels[size]);
        if found.len() != wanted {
            return Err(Error::InvalidDecomposition(format!(
                "found {} generators of height {size}, expected {wanted}",
                found.len()
            )));
        }
        for generator in found {
            let chain = Chain {
                generator,
                height: size,
            };
            for (j, v) in chain.vectors(a).into_iter().enumerate() {
                spanned.push((v, size - j));
            }
            chains.push(chain);
        }
    }

    debug_assert_eq!(spanned.len(), n);
    Ok(CyclicDecomposition { chains })
}

/// Materializes the chain basis.
///
/// Columns of `p` run, per chain of height `h`, through `A^{h-1}g, …, Ag, g`, so
/// `j` is block diagonal with nilpotent Jordan blocks (1s on the superdiagonal)
/// and `a·p = p·j`.
pub fn chains_to_basis(a: &Mat, dec: &CyclicDecomposition) -> Result<(Mat, Mat)> {
    let n = ensure_operator(a)?;
    let mut columns = Vec::with_capacity(n);
    for chain in &dec.chains {
        if chain.generator.len() != n {
            return Err(Error::InvalidDecomposition(
                "generator has the wrong length".into(),
            ));
        }
        let h = height(a, &chain.generator).map_err(|e| match e {
            Error::ZeroVector | Error::NotNilpotent => {
                Error::InvalidDecomposition(e.to_string())
            }
            other => other,
        })?;
        if h != chain.height {
            return Err(Error::InvalidDecomposition(format!(
                "generator has height {h}, recorded {}",
                chain.height
            )));
        }
        columns.extend(chain.vectors(a).into_iter().rev());
    }
    if columns.len() != n || rank_of(n, &columns) != n {
        return Err(Error::InvalidDecomposition(
            "chain vectors are not a basis".into(),
        ));
    }
    let p = Mat::from_columns(n, &columns);
    let blocks: Vec<Mat> = dec.chains.iter().map(|c| shift_block(c.height)).collect();
    let j = Mat::block_diagonal(&blocks);
    debug_assert_eq!(a * &p, &p * &j);
    Ok((p, j))
}

/// `size × size` matrix with 1s on the superdiagonal.
pub(crate) fn shift_block(size: usize) -> Mat {
    use num_traits::{One, Zero};
    Mat::from_fn(size, size, |i, j| {
        if j == i + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Checks that `gens` generate a cyclic decomposition of the whole space and
/// returns their heights, largest first.
pub fn validate_generators(a: &Mat, gens: &[Vector]) -> Result<Vec<usize>> {
    let n = ensure_operator(a)?;
    nilpotency_index(a)?;
    let mut heights = Vec::with_capacity(gens.len());
    let mut vectors = Vec::new();
    for g in gens {
        let h = height(a, g)?;
        vectors.extend(
            Chain {
                generator: g.clone(),
                height: h,
            }
            .vectors(a),
        );
        heights.push(h);
    }
    let r = rank_of(n, &vectors);
    if vectors.len() != n || r != n {
        return Err(Error::NotABasis { rank: r, dim: n });
    }
    heights.sort_unstable_by(|x, y| y.cmp(x));
    Ok(heights)
}
