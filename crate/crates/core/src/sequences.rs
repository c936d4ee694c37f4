//! Sequence algebra over count tables.
//!
//! Everything here is exact: ratio comparisons are integer
//! cross-multiplications and the majorizing sequence U(n) is kept as scaled
//! integers over a known power denominator, so no floating point ever enters
//! a comparison.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::table::{CountTable, TableOrigin};
use crate::Rational;

/// Errors from sequence computations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SequenceError {
    /// The inversion produced a negative value: the input is not a valid
    /// polyomino count table.
    NegativeQ { n: usize },
    /// `R >= 1`, so the `1/(1-R)` prefactor of the recurrence diverges.
    DivergentPrefactor,
    /// Index outside the table or computed range.
    Range { what: &'static str },
    /// Table too short for the requested statistic.
    Insufficient,
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegativeQ { n } => write!(f, "negative-Q: inversion went negative at n = {n}"),
            Self::DivergentPrefactor => write!(f, "divergent-prefactor: R >= 1"),
            Self::Range { what } => write!(f, "range: {what}"),
            Self::Insufficient => write!(f, "insufficient: need at least 2 table entries"),
        }
    }
}

impl std::error::Error for SequenceError {}

/// Inverts the convolution `P(n) = sum_{i=1..n} Q(i) P(n-i)` to recover the
/// inconstructible counts from a full count table.
///
/// `Q(0) = 1` by convention and `Q(n) = P(n) - sum_{i=1..n-1} Q(i) P(n-i)`.
/// A negative intermediate value is reported as an error rather than
/// silently continuing: it means the input cannot be a polyomino count
/// table.
pub fn derive_q(p: &CountTable) -> Result<CountTable, SequenceError> {
    debug_assert!(p.get(0).is_one(), "count tables carry P(0) = 1");
    let max_n = p.max_n();
    let mut q: Vec<BigUint> = Vec::with_capacity(max_n + 1);
    q.push(BigUint::one());
    for n in 1..=max_n {
        let mut sum = BigUint::zero();
        // convolve Q(1..n-1) with P(n-1..1)
        for (qi, pi) in q[1..n].iter().zip(p.counts()[..n - 1].iter().rev()) {
            sum += qi * pi;
        }
        if &sum > p.get(n) {
            return Err(SequenceError::NegativeQ { n });
        }
        q.push(p.get(n) - sum);
    }
    Ok(CountTable::from_values_with_zero(TableOrigin::Derived, q))
}

/// Outcome of a monotonicity scan, with enough detail to report tie
/// positions instead of hiding them behind a bare boolean.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonotonicityReport {
    pub holds: bool,
    /// First index where the required inequality fails, if any.
    pub first_violation: Option<usize>,
    /// Indices `n` where the two compared ratios are exactly equal.
    pub ties: Vec<usize>,
}

/// Strict check that `P(n)/P(n-1)` increases: `P(n)^2 < P(n+1) P(n-1)` for
/// `2 <= n <= max_n - 1`. A tie counts as a violation of strictness but is
/// also recorded separately.
pub fn p_ratio_report(p: &CountTable) -> MonotonicityReport {
    let mut report = MonotonicityReport {
        holds: true,
        first_violation: None,
        ties: Vec::new(),
    };
    for n in 2..p.max_n() {
        let lhs = p.get(n) * p.get(n);
        let rhs = p.get(n + 1) * p.get(n - 1);
        if lhs == rhs {
            report.ties.push(n);
        }
        if lhs >= rhs {
            report.holds = false;
            report.first_violation.get_or_insert(n);
        }
    }
    report
}

/// True iff the ratio sequence `P(n)/P(n-1)` is strictly increasing.
pub fn ratios_increasing(p: &CountTable) -> bool {
    p_ratio_report(p).holds
}

/// Non-strict check that `Q(n)/P(n)` never increases:
/// `Q(n) P(n+1) >= Q(n+1) P(n)` for `1 <= n <= max_n - 1`. Ties are allowed
/// (the real sequence has one at n = 2) and recorded.
pub fn qp_ratio_report(p: &CountTable, q: &CountTable) -> MonotonicityReport {
    let mut report = MonotonicityReport {
        holds: true,
        first_violation: None,
        ties: Vec::new(),
    };
    let max_n = p.max_n().min(q.max_n());
    for n in 1..max_n {
        let lhs = q.get(n) * p.get(n + 1);
        let rhs = q.get(n + 1) * p.get(n);
        if lhs == rhs {
            report.ties.push(n);
        }
        if lhs < rhs {
            report.holds = false;
            report.first_violation.get_or_insert(n);
        }
    }
    report
}

/// True iff `Q(n)/P(n)` is non-increasing.
pub fn ratios_decreasing_qp(p: &CountTable, q: &CountTable) -> bool {
    qp_ratio_report(p, q).holds
}

/// Recommended ceiling for [`compute_u`]: the exact values carry
/// denominators that grow by a fixed ~105-bit factor per index, so U(2000)
/// already holds numbers of ~200k bits.
pub const DEFAULT_U_MAX: usize = 2000;

/// The majorizing sequence:
///
/// ```text
/// U(n) = P(n)                                                   n <= n0
/// U(n) = (1/(1-R)) (sum_{i=1..n0} Q(i) U(n-i)
///         + sum_{i=n0+1..n-1} R U(i) U(n-i))                    n >  n0
/// ```
///
/// with `R = Q(n0)/P(n0)`. Beyond `n0` the values are rationals whose
/// denominator divides `scale^(n-n0)` where `scale = p0 - q0` for the
/// reduced `R = q0/p0`; internally the sequence stores the integer
/// numerators over that implicit denominator, which keeps the whole
/// recurrence in integer arithmetic (no gcd per step).
#[derive(Clone, Debug)]
pub struct USequence {
    n0: usize,
    r: Rational,
    /// Reduced denominator of `R`.
    p0: BigUint,
    /// Reduced numerator of `R`.
    q0: BigUint,
    /// `p0 - q0`; the denominator base of every value past `n0`.
    scale: BigUint,
    /// `U(0 ..= n0)`, plain integers.
    base: Vec<BigUint>,
    /// `U(n) * scale^(n - n0)` for `n = n0+1 ..`, one entry per index.
    scaled: Vec<BigUint>,
}

impl USequence {
    pub fn n0(&self) -> usize {
        self.n0
    }

    /// `R = Q(n0)/P(n0)` in canonical form.
    pub fn r(&self) -> &Rational {
        &self.r
    }

    /// Largest computed index.
    pub fn max_n(&self) -> usize {
        self.n0 + self.scaled.len()
    }

    /// The exact value `U(n)`, reduced.
    pub fn value(&self, n: usize) -> Option<Rational> {
        if n <= self.n0 {
            self.base
                .get(n)
                .map(|v| Rational::from_integer(v.clone().into()))
        } else {
            let v = self.scaled.get(n - self.n0 - 1)?;
            let den = self.scale.pow((n - self.n0) as u32);
            Some(Rational::new(v.clone().into(), den.into()))
        }
    }

    /// Compares `U(n)` with an integer without materializing the reduced
    /// rational.
    pub fn cmp_integer(&self, n: usize, rhs: &BigUint) -> Option<std::cmp::Ordering> {
        if n <= self.n0 {
            self.base.get(n).map(|v| v.cmp(rhs))
        } else {
            let v = self.scaled.get(n - self.n0 - 1)?;
            let den = self.scale.pow((n - self.n0) as u32);
            Some(v.cmp(&(rhs * den)))
        }
    }
}

/// Computes `U` through `n_max` for the cutoff `n0`.
///
/// Fails with `divergent-prefactor` when `R >= 1` (always the case for
/// `n0 = 1`, where `Q(1) = P(1) = 1`).
pub fn compute_u(
    p: &CountTable,
    q: &CountTable,
    n0: usize,
    n_max: usize,
) -> Result<USequence, SequenceError> {
    if n0 < 1 || n0 > p.max_n() || n0 > q.max_n() {
        return Err(SequenceError::Range {
            what: "n0 must lie within both tables",
        });
    }
    if n_max < n0 {
        return Err(SequenceError::Range {
            what: "n_max must be at least n0",
        });
    }
    let r = Rational::new(q.get(n0).clone().into(), p.get(n0).clone().into());
    if r >= Rational::one() {
        return Err(SequenceError::DivergentPrefactor);
    }
    let p0: BigUint = r.denom().to_biguint().expect("denominator is positive");
    let q0: BigUint = r.numer().to_biguint().expect("numerator is nonnegative");
    let scale = &p0 - &q0;

    let base: Vec<BigUint> = (0..=n0).map(|n| p.get(n).clone()).collect();
    let mut seq = USequence {
        n0,
        r,
        p0,
        q0,
        scale,
        base,
        scaled: Vec::new(),
    };

    // Scaled form of the recurrence: with V(n) = U(n) scale^(n-n0) and
    // V(k) = P(k) for k <= n0,
    //   V(n) = p0 [ sum_{i=1..min(n0, n-n0-1)} Q(i) scale^(i-1) V(n-i)
    //             + scale^(n-n0-1) sum_{i=n-n0..n0} Q(i) P(n-i) ]
    //        + q0 [ scale^(n0-1) sum_{i=n0+1..n-n0-1} V(i) V(n-i)
    //             + sum_{i=max(n0+1, n-n0)..n-1} scale^(n-i-1) V(i) P(n-i) ]
    // which stays in integers throughout.
    let small_pow: Vec<BigUint> = {
        let mut pows = Vec::with_capacity(n0 + 1);
        pows.push(BigUint::one());
        for _ in 0..n0 {
            let next = pows.last().expect("nonempty") * &seq.scale;
            pows.push(next);
        }
        pows
    };
    let mut big_pow = BigUint::one(); // scale^(n - n0 - 1), updated per n

    for n in (n0 + 1)..=n_max {
        let v = |k: usize| -> &BigUint {
            if k <= n0 {
                &seq.base[k]
            } else {
                &seq.scaled[k - n0 - 1]
            }
        };

        let mut lin = BigUint::zero();
        let split = n0.min(n.saturating_sub(n0 + 1));
        for i in 1..=split {
            lin += q.get(i) * &small_pow[i - 1] * v(n - i);
        }
        if n - n0 <= n0 {
            let mut prefix_sum = BigUint::zero();
            for i in (n - n0)..=n0 {
                prefix_sum += q.get(i) * v(n - i);
            }
            lin += &big_pow * prefix_sum;
        }

        let mut bilinear = BigUint::zero();
        let sym_hi = n.saturating_sub(n0 + 1);
        if n0 < sym_hi {
            let mut sym = BigUint::zero();
            let mut i = n0 + 1;
            while i < n - i {
                sym += v(i) * v(n - i);
                i += 1;
            }
            sym *= BigUint::from(2u32);
            if n % 2 == 0 && n / 2 > n0 {
                sym += v(n / 2) * v(n / 2);
            }
            bilinear += &small_pow[n0 - 1] * sym;
        }
        for i in (n0 + 1).max(n - n0)..n {
            bilinear += &small_pow[n - i - 1] * v(i) * v(n - i);
        }

        let value = &seq.p0 * lin + &seq.q0 * bilinear;
        seq.scaled.push(value);
        big_pow *= &seq.scale;
    }
    Ok(seq)
}

/// The exact growth ratio `U(n)/U(n-1)`.
pub fn u_growth_ratio(u: &USequence, n: usize) -> Result<Rational, SequenceError> {
    if n < 1 || n > u.max_n() {
        return Err(SequenceError::Range {
            what: "growth ratio index outside computed range",
        });
    }
    if n <= u.n0 {
        return Ok(Rational::new(
            u.base[n].clone().into(),
            u.base[n - 1].clone().into(),
        ));
    }
    let num = &u.scaled[n - u.n0 - 1];
    let den: BigUint = if n == u.n0 + 1 {
        &u.base[u.n0] * &u.scale
    } else {
        &u.scaled[n - u.n0 - 2] * &u.scale
    };
    Ok(Rational::new(num.clone().into(), den.into()))
}

/// Finds the `l` maximizing `P(l) P(n-l)` over the balanced range
/// `n-1 <= 4l <= 3n+1` (smallest such `l` on ties) and reports whether
/// `P(n) <= 4 n^3 P(l) P(n-l)`.
pub fn check_split_bound(p: &CountTable, n: usize) -> Result<(usize, bool), SequenceError> {
    if n < 2 || n > p.max_n() {
        return Err(SequenceError::Range {
            what: "split bound needs 2 <= n <= max_n",
        });
    }
    let mut best: Option<(usize, BigUint)> = None;
    for l in 1..n {
        if 4 * l + 1 < n || 4 * l > 3 * n + 1 {
            continue;
        }
        let product = p.get(l) * p.get(n - l);
        match &best {
            Some((_, value)) if *value >= product => {}
            _ => best = Some((l, product)),
        }
    }
    let (l, value) = best.expect("the balanced range always contains an l");
    let bound = BigUint::from(4 * n * n * n) * value;
    Ok((l, p.get(n) <= &bound))
}

/// The exact last ratio `P(max_n)/P(max_n - 1)`, a lower bound for the
/// growth constant whenever the ratio sequence is increasing.
pub fn lambda_lower(p: &CountTable) -> Result<Rational, SequenceError> {
    let n = p.max_n();
    if n < 2 {
        return Err(SequenceError::Insufficient);
    }
    Ok(Rational::new(
        p.get(n).clone().into(),
        p.get(n - 1).clone().into(),
    ))
}
