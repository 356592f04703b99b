//! Exact scalars and univariate polynomials over them.
//!
//! [`Rational`] is an arbitrary-precision fraction that is always kept in lowest
//! terms with a positive denominator, so structural equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `num/den`, reduced. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {token:?}: {reason}")]
pub struct RationalParseError {
    pub token: String,
    pub reason: &'static str,
}

/// Parses the canonical grammar `-?digits(/digits)?`. A zero denominator is rejected.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, RationalParseError> {
    let err = |reason| RationalParseError {
        token: token.to_string(),
        reason,
    };
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(err("expected decimal digits"));
    }
    let mut numer = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    if negative {
        numer = -numer;
    }
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if !digits(d) {
                return Err(err("expected decimal digits after '/'"));
            }
            let d = BigInt::from_str(d).map_err(|_| err("bad denominator"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of `x^k`.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `x - r`
    pub fn linear(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `∏ (x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots
            .into_iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::linear(r))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Euclidean division over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Number of times `x - r` divides `self`. The zero polynomial is reported as 0.
    pub fn root_multiplicity(&self, r: &Rational) -> usize {
        let mut p = self.clone();
        let mut mult = 0;
        while !p.is_zero() && p.eval(r).is_zero() {
            p = synthetic_division(&p, r);
            mult += 1;
        }
        mult
    }

    /// Formats with an explicit variable name, highest power first.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

/// Quotient of `p` by `x - r`, assuming the division is exact.
fn synthetic_division(p: &Poly, r: &Rational) -> Poly {
    let n = p.coeffs.len();
    let mut quot = vec![Rational::zero(); n - 1];
    let mut carry = Rational::zero();
    for k in (1..n).rev() {
        carry = &p.coeffs[k] + carry * r;
        quot[k - 1] = carry.clone();
    }
    Poly::new(quot)
}

struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => f.write_str(self.var)?,
                (_, false) => write!(f, "{mag}*{}", self.var)?,
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("x").fmt(f)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Rational roots of a monic polynomial and the rootless monic cofactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRoots {
    /// Distinct roots in ascending order with their multiplicities.
    pub roots: Vec<(Rational, usize)>,
    pub residual: Poly,
}

impl RationalRoots {
    /// `∏ (x - r)^m · residual`
    pub fn reconstruct(&self) -> Poly {
        self.roots.iter().fold(self.residual.clone(), |acc, (r, m)| {
            (0..*m).fold(acc, |acc, _| &acc * &Poly::linear(r))
        })
    }
}

/// Finds every rational root of `p` with its exact multiplicity.
///
/// Candidates come from the rational root test on the integer polynomial obtained
/// by clearing denominators; each root is divided out as often as it divides.
pub fn rational_roots(p: &Poly) -> Result<RationalRoots> {
    if !p.is_monic() {
        return Err(Error::NonMonic);
    }
    if p.degree() == Some(0) {
        return Err(Error::ConstantPolynomial);
    }

    let mut roots = Vec::new();
    let mut residual = p.clone();

    // x = 0 first, so the constant term used for candidates is nonzero.
    let zero_mult = residual.coeffs.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        residual = Poly::new(residual.coeffs[zero_mult..].to_vec());
        roots.push((Rational::zero(), zero_mult));
    }

    if residual.degree().unwrap_or(0) > 0 {
        let ints = clear_denominators(&residual);
        let constant = ints[0].magnitude().clone();
        let leading = ints.last().unwrap().magnitude().clone();
        let bound = cauchy_bound(&residual);

        let mut candidates = Vec::new();
        for q in divisors(&leading) {
            for num in divisors(&constant) {
                if !num.gcd(&q).is_one() {
                    continue;
                }
                let r = Rational::new(BigInt::from(num), BigInt::from(q.clone()));
                if r > bound {
                    continue;
                }
                candidates.push(-r.clone());
                candidates.push(r);
            }
        }
        candidates.sort();
        candidates.dedup();

        for r in candidates {
            if residual.degree() == Some(0) {
                break;
            }
            let mut mult = 0;
            while residual.degree().unwrap_or(0) > 0 && residual.eval(&r).is_zero() {
                residual = synthetic_division(&residual, &r);
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
    }

    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RationalRoots { roots, residual })
}

/// Integer coefficients of a positive multiple of `p`, with content removed.
fn clear_denominators(p: &Poly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

/// Every root of a monic `p` has absolute value at most `1 + max |a_k|`.
fn cauchy_bound(p: &Poly) -> Rational {
    let n = p.coeffs.len() - 1;
    p.coeffs[..n]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rational::zero)
        + Rational::one()
}

/// Positive divisors of `n > 0` in ascending order, by trial division.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    assert!(!n.is_zero());
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut push = |p: BigUint, rest: &mut BigUint| {
        let mut e = 0;
        while (&*rest % &p).is_zero() {
            *rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(BigUint::from(2u32), &mut rest);
    let mut p = BigUint::from(3u32);
    while &p * &p <= rest {
        push(p.clone(), &mut rest);
        p += 2u32;
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }

    let mut divs = vec![BigUint::one()];
    for (p, e) in &factors {
        let current = divs.len();
        let mut pk = BigUint::one();
        for _ in 0..*e {
            pk *= p;
            for i in 0..current {
                divs.push(&divs[i] * &pk);
            }
        }
    }
    divs.sort();
    divs
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// Lossy conversion for diagnostics only.
pub fn approx_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
