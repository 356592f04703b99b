//! Jordan canonical form for matrices with rational spectrum.
//!
//! Canonical conventions: eigenvalues ascending, blocks of one eigenvalue by
//! descending size, 1s on the superdiagonal.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{factorial, int, rational_roots, Poly, Rational};
use crate::error::{Error, Result};
use crate::linalg::{mat_pow, nullspace_basis, rank, solve_right, Mat, Vector};
use crate::nilpotent::{block_generators, chains_to_basis, d_sequence, nilpotency_index, DSequence};

/// Distinct eigenvalues, ascending, with algebraic multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub pairs: Vec<(Rational, usize)>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.pairs.iter().map(|(_, m)| m).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenBlocks {
    pub eigenvalue: Rational,
    /// Descending.
    pub sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub blocks: Vec<EigenBlocks>,
    pub j: Mat,
    /// Invertible, with `a·p = p·j`.
    pub p: Mat,
}

fn ensure_operator(a: &Mat) -> Result<usize> {
    let n = a.ensure_square()?;
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    Ok(n)
}

/// `det(xI - A)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &Mat) -> Result<Poly> {
    let n = a.ensure_square()?;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = Mat::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I, c_{n-k} = -tr(A·M_k)/k
        m = &(a * &m) + &Mat::identity(n).scale(&coeffs[n - k + 1]);
        let am = a * &m;
        coeffs[n - k] = -am.trace() / int(k as i64);
    }
    Ok(Poly::new(coeffs))
}

pub fn eigenvalues(a: &Mat) -> Result<Spectrum> {
    ensure_operator(a)?;
    let found = rational_roots(&char_poly(a)?)?;
    if found.residual.degree() != Some(0) {
        return Err(Error::IrrationalSpectrum(found.residual));
    }
    Ok(Spectrum { pairs: found.roots })
}

/// Canonical basis of `N((A - λI)^mult)`.
pub fn generalized_eigenspace(a: &Mat, lambda: &Rational, mult: usize) -> Result<Vec<Vector>> {
    ensure_operator(a)?;
    let basis = nullspace_basis(&mat_pow(&a.shift(lambda), mult));
    if basis.len() != mult {
        return Err(Error::DimensionMismatch(format!(
            "generalized eigenspace at {lambda} has dimension {}, multiplicity is {mult}",
            basis.len()
        )));
    }
    Ok(basis)
}

/// Matrix of `a` on the invariant subspace spanned by `basis`.
pub fn restrict(a: &Mat, basis: &[Vector]) -> Result<Mat> {
    let n = a.ensure_square()?;
    let b = Mat::from_columns(n, basis);
    solve_right(&b, &(a * &b)).map_err(|e| match e {
        Error::NoSolution => Error::NotInvariant,
        other => other,
    })
}

/// Per-eigenvalue data shared by the decomposition and the exponential.
struct EigenPart {
    eigenvalue: Rational,
    /// Columns span the generalized eigenspace.
    basis: Mat,
    /// Nilpotent part of the restriction, in `basis` coordinates.
    nilpotent: Mat,
}

fn eigen_parts(a: &Mat) -> Result<Vec<EigenPart>> {
    let n = ensure_operator(a)?;
    eigenvalues(a)?
        .pairs
        .into_iter()
        .map(|(lambda, mult)| {
            let basis = generalized_eigenspace(a, &lambda, mult)?;
            let nilpotent = restrict(a, &basis)?.shift(&lambda);
            Ok(EigenPart {
                eigenvalue: lambda,
                basis: Mat::from_columns(n, &basis),
                nilpotent,
            })
        })
        .collect()
}

pub fn jordan_form(a: &Mat) -> Result<JordanDecomposition> {
    let n = ensure_operator(a)?;
    let mut blocks = Vec::new();
    let mut p_columns: Vec<Vector> = Vec::with_capacity(n);
    let mut j_blocks = Vec::new();

    for part in eigen_parts(a)? {
        let dec = block_generators(&part.nilpotent)?;
        let (local_p, local_j) = chains_to_basis(&part.nilpotent, &dec)?;
        p_columns.extend((&part.basis * &local_p).columns());
        j_blocks.push(&local_j + &Mat::identity(local_j.rows()).scale(&part.eigenvalue));
        blocks.push(EigenBlocks {
            eigenvalue: part.eigenvalue,
            sizes: dec.heights(),
        });
    }

    let p = Mat::from_columns(n, &p_columns);
    let j = Mat::block_diagonal(&j_blocks);
    debug_assert_eq!(a * &p, &p * &j);
    Ok(JordanDecomposition { blocks, j, p })
}

/// The canonical Jordan matrix with the given blocks, in the order given.
pub fn jordan_matrix(blocks: &[EigenBlocks]) -> Mat {
    let mut diag = Vec::new();
    for eb in blocks {
        for &size in &eb.sizes {
            diag.push(Mat::from_fn(size, size, |i, j| {
                if i == j {
                    eb.eigenvalue.clone()
                } else if j == i + 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
        }
    }
    Mat::block_diagonal(&diag)
}

/// Whether `blocks` is in canonical order: eigenvalues strictly ascending, sizes
/// positive and non-increasing within each eigenvalue.
fn is_canonical(blocks: &[EigenBlocks]) -> bool {
    blocks.windows(2).all(|w| w[0].eigenvalue < w[1].eigenvalue)
        && blocks.iter().all(|eb| {
            !eb.sizes.is_empty()
                && eb.sizes.iter().all(|&s| s > 0)
                && eb.sizes.windows(2).all(|w| w[0] >= w[1])
        })
}

/// Reads the block structure off a matrix that is claimed to be in Jordan form.
/// Returns `None` unless it is a canonical Jordan matrix.
pub fn jordan_structure(j: &Mat) -> Option<Vec<EigenBlocks>> {
    let n = j.ensure_square().ok()?;
    let mut blocks: Vec<EigenBlocks> = Vec::new();
    let mut start = 0;
    while start < n {
        let lambda = j[(start, start)].clone();
        let mut end = start + 1;
        while end < n && j[(end - 1, end)].is_one() && j[(end, end)] == lambda {
            end += 1;
        }
        let size = end - start;
        match blocks.last_mut() {
            Some(eb) if eb.eigenvalue == lambda => eb.sizes.push(size),
            _ => blocks.push(EigenBlocks {
                eigenvalue: lambda,
                sizes: vec![size],
            }),
        }
        start = end;
    }
    (is_canonical(&blocks) && jordan_matrix(&blocks) == *j).then_some(blocks)
}

/// True iff `p` is invertible, `a·p = p·j`, and `j` is the canonical Jordan
/// matrix of `dec.blocks`.
pub fn validate_decomposition(a: &Mat, dec: &JordanDecomposition) -> bool {
    let Ok(n) = a.ensure_square() else {
        return false;
    };
    let shapes_ok = [dec.p.rows(), dec.p.cols(), dec.j.rows(), dec.j.cols()]
        .iter()
        .all(|&d| d == n);
    if !shapes_ok || !is_canonical(&dec.blocks) {
        return false;
    }
    let total: usize = dec.blocks.iter().flat_map(|eb| &eb.sizes).sum();
    total == n
        && jordan_matrix(&dec.blocks) == dec.j
        && rank(&dec.p) == n
        && a * &dec.p == &dec.p * &dec.j
}

/// A witness `S` with `S⁻¹·A·S = B`, or `None` if the Jordan structures differ.
pub fn similar(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    let n = ensure_operator(a)?;
    let m = ensure_operator(b)?;
    if n != m {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare a {n}x{n} matrix with a {m}x{m} matrix"
        )));
    }
    let ja = jordan_form(a)?;
    let jb = jordan_form(b)?;
    if ja.blocks != jb.blocks {
        return Ok(None);
    }
    let s = &ja.p * &jb.p.inverse()?;
    debug_assert_eq!(a * &s, &s * b);
    Ok(Some(s))
}

/// Block structure of `A - λI` on the generalized eigenspace at `λ`; `None` if
/// `λ` is not an eigenvalue. Works whether or not the rest of the spectrum is
/// rational.
pub fn eigenvalue_structure(a: &Mat, lambda: &Rational) -> Result<Option<DSequence>> {
    ensure_operator(a)?;
    let mult = char_poly(a)?.root_multiplicity(lambda);
    if mult == 0 {
        return Ok(None);
    }
    let basis = generalized_eigenspace(a, lambda, mult)?;
    let nilpotent = restrict(a, &basis)?.shift(lambda);
    d_sequence(&nilpotent).map(Some)
}

/// Matrix whose entries are polynomials in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    /// `Σ_k t^k · coeffs[k]`
    pub fn from_coefficients(rows: usize, cols: usize, coeffs: &[Mat]) -> Self {
        let entries = (0..rows * cols)
            .map(|idx| {
                Poly::new(
                    coeffs
                        .iter()
                        .map(|m| m[(idx / cols, idx % cols)].clone())
                        .collect(),
                )
            })
            .collect();
        PolyMat {
            rows,
            cols,
            entries,
        }
    }

    /// Matrix coefficients of `t^0, …, t^d`, where `d` is the largest entry degree.
    pub fn coefficients(&self) -> Vec<Mat> {
        let len = self.entries.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        (0..len)
            .map(|k| Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).coeff(k)))
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    /// Largest entry degree; `None` when every entry is zero.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    pub fn eval(&self, t: &Rational) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(t))
    }

    pub fn derivative(&self) -> PolyMat {
        self.map(Poly::derivative)
    }

    pub fn scale(&self, c: &Rational) -> PolyMat {
        self.map(|p| p.scale(c))
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMat {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `m · self`
    pub fn left_mul(&self, m: &Mat) -> PolyMat {
        let coeffs: Vec<Mat> = self.coefficients().iter().map(|c| m * c).collect();
        PolyMat::from_coefficients(m.rows(), self.cols, &coeffs)
    }
}

impl fmt::Display for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j).display_in("t"))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpTerm {
    pub eigenvalue: Rational,
    pub coeff: PolyMat,
}

/// `exp(tA) = Σ e^{λt} · coeff_λ(t)`, one term per distinct eigenvalue, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpMatrix {
    pub terms: Vec<ExpTerm>,
}

impl ExpMatrix {
    /// `Σ_λ coeff_λ(0)`, which is the identity.
    pub fn at_zero(&self) -> Option<Mat> {
        let zero = Rational::zero();
        self.terms
            .iter()
            .map(|t| t.coeff.eval(&zero))
            .reduce(|acc, m| &acc + &m)
    }
}

impl fmt::Display for ExpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n+ ")?;
            }
            write!(f, "exp({}*t) * {}", term.eigenvalue, term.coeff)?;
        }
        Ok(())
    }
}

/// `Σ_{k<len} t^k/k! · coeff(k)` for a list of matrix coefficients.
fn truncated_series(len: usize, mut coeff: impl FnMut(usize) -> Mat) -> Vec<Mat> {
    (0..len)
        .map(|k| coeff(k).scale(&factorial(k).recip()))
        .collect()
}

/// Closed form of `exp(tA)` computed on a basis of generalized eigenvectors.
///
/// On each generalized eigenspace `A = λ + N` with `N` nilpotent, so the series
/// for `exp(tN)` terminates; the pieces are pulled back with the inverse of the
/// stacked eigenspace bases.
pub fn matrix_exp(a: &Mat) -> Result<ExpMatrix> {
    let n = ensure_operator(a)?;
    let parts = eigen_parts(a)?;
    let bases: Vec<Vector> = parts.iter().flat_map(|p| p.basis.columns()).collect();
    let q_inv = Mat::from_columns(n, &bases).inverse()?;

    let mut offset = 0;
    let mut terms = Vec::with_capacity(parts.len());
    for part in &parts {
        let k = part.basis.cols();
        let rows: Vec<usize> = (offset..offset + k).collect();
        offset += k;
        let projector = q_inv.select_rows(&rows);
        let index = nilpotency_index(&part.nilpotent)?;
        let coeffs = truncated_series(index, |p| {
            &(&part.basis * &mat_pow(&part.nilpotent, p)) * &projector
        });
        terms.push(ExpTerm {
            eigenvalue: part.eigenvalue.clone(),
            coeff: PolyMat::from_coefficients(n, n, &coeffs),
        });
    }
    let exp = ExpMatrix { terms };
    debug_assert_eq!(Ok(&exp), matrix_exp_jordan(a).as_ref());
    Ok(exp)
}

/// Same closed form computed as `P·exp(tJ)·P⁻¹` from the Jordan decomposition.
pub fn matrix_exp_jordan(a: &Mat) -> Result<ExpMatrix> {
    let n = ensure_operator(a)?;
    let dec = jordan_form(a)?;
    let p_inv = dec.p.inverse()?;

    let mut offset = 0;
    let mut terms = Vec::with_capacity(dec.blocks.len());
    for eb in &dec.blocks {
        let k: usize = eb.sizes.iter().sum();
        let idx: Vec<usize> = (offset..offset + k).collect();
        offset += k;
        let p_part = dec.p.select_columns(&idx);
        let p_inv_part = p_inv.select_rows(&idx);
        let nilpotent = jordan_matrix(&[EigenBlocks {
            eigenvalue: Rational::zero(),
            sizes: eb.sizes.clone(),
        }]);
        let coeffs = truncated_series(eb.sizes[0], |p| {
            &(&p_part * &mat_pow(&nilpotent, p)) * &p_inv_part
        });
        terms.push(ExpTerm {
            eigenvalue: eb.eigenvalue.clone(),
            coeff: PolyMat::from_coefficients(n, n, &coeffs),
        });
    }
    Ok(ExpMatrix { terms })
}
