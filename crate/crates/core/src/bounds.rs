//! The generating-function upper bound on the growth constant.
//!
//! For a cutoff `n0` let `R = Q(n0)/P(n0)` and
//!
//! ```text
//! g(x) = sum_{i=0..n0} (Q(i) - R P(i)) x^i.
//! ```
//!
//! The generating function of the majorizing sequence satisfies a quadratic
//! whose discriminant is `(g(x) - 2)^2 - 4R`; wherever `g(x) <= 2 - 2 sqrt(R)`
//! the discriminant is nonnegative and the generating function converges, so
//! any such `x = theta` certifies `lambda <= 1/theta` (conditionally on the
//! `Q/P` monotonicity). The predicate is evaluated square-root-free as
//! `g(x) <= 2` and `(2 - g(x))^2 >= 4R`, entirely in rational arithmetic.
//!
//! When `Q(i)/P(i)` is non-increasing up to `n0`, every coefficient of `g`
//! is nonnegative, `g` is non-decreasing on `[0, inf)`, and the predicate is
//! true exactly on an initial segment of the decimal grid, so a plain
//! binary search finds the largest passing grid point.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::table::CountTable;
use crate::Rational;

/// Errors from the bound pipeline.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BoundsError {
    /// Cutoff or index outside the available tables.
    Range(&'static str),
    /// Argument outside the operation's domain (negative x, zero theta, ...).
    Domain(&'static str),
    /// The search needs nonnegative coefficients and this polynomial has
    /// been flagged non-monotone.
    Unsupported(&'static str),
    /// The predicate fails already at the smallest grid point.
    NoTheta,
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Range(what) => write!(f, "range: {what}"),
            Self::Domain(what) => write!(f, "domain: {what}"),
            Self::Unsupported(what) => write!(f, "unsupported: {what}"),
            Self::NoTheta => write!(f, "no-theta: predicate false at the first grid point"),
        }
    }
}

impl std::error::Error for BoundsError {}

/// The exact ratio `R = Q(n0)/P(n0)` in canonical form.
pub fn r_value(p: &CountTable, q: &CountTable, n0: usize) -> Result<Rational, BoundsError> {
    if n0 < 1 || n0 > p.max_n() || n0 > q.max_n() {
        return Err(BoundsError::Range("n0 must lie within both tables"));
    }
    Ok(Rational::new(
        q.get(n0).clone().into(),
        p.get(n0).clone().into(),
    ))
}

/// The polynomial `g(x) = sum (Q(i) - R P(i)) x^i` for `i = 0 ..= n0`.
#[derive(Clone, Debug)]
pub struct GPolynomial {
    n0: usize,
    r: Rational,
    coefficients: Vec<Rational>,
    nonneg: bool,
}

impl GPolynomial {
    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    /// Coefficients by ascending power; index 0 is always `1 - R` and index
    /// `n0` is always exactly zero.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// True when every coefficient is nonnegative, i.e. when `Q(i)/P(i)`
    /// never drops below `Q(n0)/P(n0)` on the prefix. Only then is `g`
    /// non-decreasing on the nonnegative axis and the theta search valid.
    pub fn is_monotone(&self) -> bool {
        self.nonneg
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Builds `g` from the two tables. A negative coefficient is not an error;
/// it just marks the polynomial as non-monotone, which later blocks the
/// theta search.
pub fn build_g(p: &CountTable, q: &CountTable, n0: usize) -> Result<GPolynomial, BoundsError> {
    let r = r_value(p, q, n0)?;
    let mut coefficients = Vec::with_capacity(n0 + 1);
    let mut nonneg = true;
    for i in 0..=n0 {
        let qi = Rational::from_integer(q.get(i).clone().into());
        let pi = Rational::from_integer(p.get(i).clone().into());
        let c = qi - &r * pi;
        nonneg &= !c.is_negative();
        coefficients.push(c);
    }
    Ok(GPolynomial {
        n0,
        r,
        coefficients,
        nonneg,
    })
}

/// The square-root-free discriminant predicate: true iff `g(x) <= 2` and
/// `(2 - g(x))^2 >= 4R`, which together say exactly `g(x) <= 2 - 2 sqrt(R)`.
pub fn delta_nonneg(g: &GPolynomial, x: &Rational) -> Result<bool, BoundsError> {
    if x.is_negative() {
        return Err(BoundsError::Domain("negative x; the certified interval is symmetric by the coefficient signs, not by evaluation"));
    }
    let two = Rational::from_integer(2.into());
    let gx = g.eval(x);
    if gx > two {
        return Ok(false);
    }
    let diff = two - gx;
    Ok(&diff * &diff >= Rational::from_integer(4.into()) * g.r())
}

/// Largest grid point `theta = k / 10^digits` with the predicate true,
/// rendered as a decimal string.
///
/// Nonnegative coefficients make the predicate true on an initial segment of
/// the grid, so the largest true `k` is found by binary search after an
/// exponential probe. The result satisfies `delta_nonneg(theta)` and
/// `!delta_nonneg(theta + 10^-digits)`.
pub fn find_theta(g: &GPolynomial, digits: u32) -> Result<String, BoundsError> {
    if !(1..=12).contains(&digits) {
        return Err(BoundsError::Domain("digits must be in 1..=12"));
    }
    if !g.is_monotone() {
        return Err(BoundsError::Unsupported(
            "g has a negative coefficient; Q/P is not non-increasing up to n0",
        ));
    }
    if g.coefficients().iter().skip(1).all(|c| c.is_zero()) {
        return Err(BoundsError::Unsupported(
            "g is constant, the predicate has no largest grid point",
        ));
    }
    let scale = BigInt::from(10u32).pow(digits);
    let pred = |k: u64| -> bool {
        let x = Rational::new(BigInt::from(k), scale.clone());
        delta_nonneg(g, &x).expect("grid points are nonnegative")
    };
    if !pred(1) {
        return Err(BoundsError::NoTheta);
    }
    // exponential probe, then binary search on the true/false boundary
    let mut lo = 1u64;
    let mut hi = 2u64;
    while pred(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(decimal_string(&BigInt::from(lo), digits))
}

/// The exact reciprocal `1/theta` rounded up to `digits` decimal places.
/// Rounding up keeps the printed number a valid upper bound.
pub fn lambda_upper(theta: &str, digits: u32) -> Result<String, BoundsError> {
    let theta =
        parse_decimal(theta).ok_or(BoundsError::Domain("theta must be a decimal number"))?;
    if theta <= Rational::zero() {
        return Err(BoundsError::Domain("theta must be positive"));
    }
    Ok(decimal_ceil(&theta.recip(), digits))
}

/// Parses a plain nonnegative decimal literal like `0.24307` into an exact
/// rational. Returns `None` for anything else (signs, exponents, empties).
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = frac_part.len() as u32;
    let mut joined = String::with_capacity(int_part.len() + frac_part.len());
    joined.push_str(int_part);
    joined.push_str(frac_part);
    let numer: BigUint = if joined.is_empty() {
        BigUint::zero()
    } else {
        joined.parse().ok()?
    };
    let denom = BigUint::from(10u32).pow(digits);
    Some(Rational::new(numer.into(), denom.into()))
}

/// Rounds a nonnegative rational down to `digits` decimal places.
pub fn decimal_floor(value: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (value.numer() * &scale).div_floor(value.denom());
    decimal_string(&scaled, digits)
}

/// Rounds a nonnegative rational up to `digits` decimal places.
pub fn decimal_ceil(value: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (value.numer() * &scale).div_ceil(value.denom());
    decimal_string(&scaled, digits)
}

/// Renders `scaled / 10^digits` with exactly `digits` places.
fn decimal_string(scaled: &BigInt, digits: u32) -> String {
    let mut s = scaled.to_string();
    if digits == 0 {
        return s;
    }
    let want = digits as usize + 1;
    if s.len() < want {
        s.insert_str(0, &"0".repeat(want - s.len()));
    }
    s.insert(s.len() - digits as usize, '.');
    s
}

/// The assembled outcome of the bound pipeline.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n0: usize,
    pub r: Rational,
    pub theta: String,
    pub digits: u32,
    pub lambda_upper: String,
    pub lambda_lower: String,
}

impl BoundReport {
    /// JSON form; `R` is an exact fraction so downstream users can tighten
    /// the printed digits without recomputing.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n0": self.n0,
            "R": format!("{}/{}", self.r.numer(), self.r.denom()),
            "theta": self.theta,
            "digits": self.digits,
            "lambda_upper": self.lambda_upper,
            "lambda_lower": self.lambda_lower,
            "assumes": {
                "upper": "Q/P decreasing",
                "lower": "P ratio increasing",
            },
        })
    }
}

/// Runs the whole pipeline: `R`, `g`, the theta search, and both bound
/// decimals. The lambda strings use one decimal place fewer than the theta
/// grid (theta has no integer digit, the bounds have one), rounded outward
/// so each stays valid.
pub fn bound_report(
    p: &CountTable,
    q: &CountTable,
    n0: usize,
    digits: u32,
) -> Result<BoundReport, BoundsError> {
    if n0 < 2 {
        return Err(BoundsError::Range("the lower bound needs n0 >= 2"));
    }
    let g = build_g(p, q, n0)?;
    let theta = find_theta(&g, digits)?;
    let lambda_digits = digits.saturating_sub(1).max(1);
    let upper = lambda_upper(&theta, lambda_digits)?;
    let lower_exact = Rational::new(p.get(n0).clone().into(), p.get(n0 - 1).clone().into());
    let lower = decimal_floor(&lower_exact, lambda_digits);
    Ok(BoundReport {
        n0,
        r: g.r().clone(),
        theta,
        digits,
        lambda_upper: upper,
        lambda_lower: lower,
    })
}
