//! Closed forms, bounds and Monte Carlo estimators for admissibility and occupancy.
//!
//! Counts and probabilities are exact rationals; only the tail and total
//! variation bounds and the Monte Carlo estimates are floating point.
//!
//! # The two-admissible count
//!
//! The sampling space for [`counts_theorem_1_6`] is `i < j` and `k < l` drawn
//! from `{2, .., n-1}`, `r ∉ {k-1, k}` and `s ∉ {l-1, l}`, giving
//! `(n-2)⁴(n-3)²/4` configurations. The first count is the ordered cases
//! `j ≤ k` minus those with `i ≥ 3`, `k < r < n` and `l < s < n`; the second
//! is `3 ≤ i ≤ k < j ≤ l ≤ n-1` with `r ≤ k-2 or r = n` and `s ≤ l-2 or s = n`.
//! Both are evaluated through polynomials derived from those nested sums
//! (valid for `n ≥ 5`) and checked against a direct enumeration in the tests.
//!
//! As published, the success probability reads
//! `(286n⁶ − 4326n⁵ + 23489n⁴ − 80546n³ + 190342n² − 112242n + 27624) /
//! (360n⁶ − 5040n⁵ + 29160n⁴ − 89280n³ + 152640n² − 138240n + 51840)`.
//! The counts here give numerator
//! `286n⁶ − 4110n⁵ + 24730n⁴ − 79770n³ + 145624n² − 142920n + 59040`
//! over the same denominator; both tend to 143/180.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use statrs::function::factorial::ln_binomial;
use thiserror::Error;

use crate::exec::{below, count_successes, Exec, StdRng};

pub type ExactRational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbError {
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("bound inapplicable: {0}")]
    Inapplicable(String),
}

fn domain<T>(msg: String) -> Result<T, ProbError> {
    Err(ProbError::Domain(msg))
}

fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // fall back to a scaled division for huge numerators and denominators
        let shift = q.denom().bits().saturating_sub(900);
        let n = q.numer() >> shift;
        let d = q.denom() >> shift;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// Probability that a random pseudo 3-cycle through a fixed vertex is admissible: `(n-3)/(2(n-2))`.
pub fn p_admissible_3cycle(n: u64) -> Result<ExactRational, ProbError> {
    if n < 4 {
        return domain(format!("n={n} < 4"));
    }
    Ok(ratio(n - 3, 2 * (n - 2)))
}

/// Probability that two random chords properly cross: `(n-3)/(3(n-2))`.
pub fn p_proper_intersection(n: u64) -> Result<ExactRational, ProbError> {
    if n < 4 {
        return domain(format!("n={n} < 4"));
    }
    Ok(ratio(n - 3, 3 * (n - 2)))
}

/// Success and failure counts behind [`p_proper_intersection`]: over `3 ≤ j ≤ n`,
/// `2 ≤ r < j` and `s ∉ {r, j}`, the chord `{r, s}` crosses `{1, j}` exactly when `s > j`.
pub fn intersection_counts(n: u64) -> Result<(BigUint, BigUint), ProbError> {
    if n < 4 {
        return domain(format!("n={n} < 4"));
    }
    let n = BigUint::from(n);
    let (a, b, c) = (&n - 1u32, &n - 2u32, &n - 3u32);
    let succ = &b * &a * &c / 6u32;
    let fail = &b * &a * (BigUint::from(2u32) * &n - 3u32) / 6u32;
    Ok((succ, fail))
}

/// Exact configuration counts for the at-least-two-admissible estimate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountsT16 {
    pub total: BigInt,
    pub count_cases_1_2: BigInt,
    pub count_case_4: BigInt,
}

fn poly1440(coeffs: &[i64; 7], n: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for &c in coeffs {
        acc = acc * n + BigInt::from(c);
    }
    let (q, r) = acc.div_rem(&BigInt::from(1440));
    debug_assert!(r.is_zero(), "polynomial not integral");
    q
}

fn binom(n: &BigInt, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// Size of the sampling space, `(n-2)⁴(n-3)²/4`.
pub fn t16_total(n: u64) -> BigInt {
    let n = BigInt::from(n);
    let a = &n - 2;
    let b = &n - 3;
    (&a * &a * &a * &a * &b * &b) / 4
}

const BOTH: [i64; 7] = [6, -138, 1290, -6270, 16704, -23112, 12960];
const CASE4: [i64; 7] = [20, -228, 980, -1980, 1880, -672, 0];

pub fn counts_theorem_1_6(n: u64) -> Result<CountsT16, ProbError> {
    if n < 8 {
        return domain(format!("n={n} < 8"));
    }
    let nb = BigInt::from(n);
    let m = &nb - 2;
    let ordered = (binom(&m, 4) + binom(&m, 3)) * &m * &m;
    Ok(CountsT16 {
        total: t16_total(n),
        count_cases_1_2: ordered - poly1440(&BOTH, &nb),
        count_case_4: poly1440(&CASE4, &nb),
    })
}

/// `1 - (cases 1,2 + case 4) / total`, exactly.
pub fn p_at_least_two(n: u64) -> Result<ExactRational, ProbError> {
    let c = counts_theorem_1_6(n)?;
    Ok(BigRational::one() - BigRational::new(c.count_cases_1_2 + c.count_case_4, c.total))
}

/// Probability that `r` balls thrown into `n` equally likely boxes leave none empty.
pub fn occupancy_all_occupied(r: u32, n: u32) -> Result<ExactRational, ProbError> {
    if n == 0 {
        return domain("n must be at least 1".into());
    }
    let nb = BigInt::from(n);
    let mut num = BigInt::zero();
    let mut c = BigInt::one();
    for v in 0..=n {
        let term = &c * num_traits::pow(BigInt::from(n - v), r as usize);
        if v % 2 == 0 {
            num += term;
        } else {
            num -= term;
        }
        c = c * BigInt::from(n - v) / BigInt::from(v + 1);
    }
    Ok(BigRational::new(num, num_traits::pow(nb, r as usize)))
}

/// `Σ_{j=1..n} j^k` for `k ∈ 1..=5`, by closed form.
pub fn power_sum(k: u32, n: u64) -> Result<BigInt, ProbError> {
    let n = BigInt::from(n);
    let n1 = &n + 1;
    let t = &n * &n1 / 2;
    Ok(match k {
        1 => t,
        2 => &n * &n1 * (2 * &n + 1) / 6,
        3 => &t * &t,
        4 => &n * &n1 * (2 * &n + 1) * (3 * &n * &n + 3 * &n - 1) / 30,
        5 => &n * &n * &n1 * &n1 * (2 * &n * &n + 2 * &n - 1) / 12,
        _ => return domain(format!("k={k} outside 1..=5")),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Lower,
    Upper,
}

/// Tail bound for a binomial count with mean `a·p`.
/// Lower: `P(X ≤ (1-α)ap) ≤ exp(-α²ap/2)`. Upper: `P(X ≥ (1+α)ap) ≤ exp(-α²ap/3)`.
pub fn hoeffding_tail(a: f64, p: f64, alpha: f64, side: Tail) -> Result<f64, ProbError> {
    if !(alpha > 0.0 && alpha < 1.0) || !(p > 0.0 && p < 1.0) || !(a >= 1.0) {
        return domain(format!("need 0<α<1, 0<p<1, a≥1; got a={a}, p={p}, α={alpha}"));
    }
    let denom = match side {
        Tail::Lower => 2.0,
        Tail::Upper => 3.0,
    };
    Ok((-alpha * alpha * a * p / denom).exp())
}

/// `P(Bin(r, 1/n) ≤ m)`: the chance a fixed box holds at most `m` balls.
pub fn box_at_most(r: u64, n: u64, m: u64) -> f64 {
    let q = 1.0 / n as f64;
    (0..=m.min(r))
        .map(|j| (ln_binomial(r, j) + j as f64 * q.ln() + (r - j) as f64 * (-q).ln_1p()).exp())
        .sum()
}

/// Mean number of boxes holding at most `m` balls.
pub fn lambda_star(r: u64, n: u64, m: u64) -> f64 {
    n as f64 * box_at_most(r, n, m)
}

/// Total-variation bound between the count of boxes with at most `m` balls and Poisson(λ*).
pub fn poisson_occupancy_tv_bound(r: u64, n: u64, m: u64) -> Result<f64, ProbError> {
    if n < 1 || r < 3 {
        return domain(format!("need n ≥ 1 and r ≥ 3, got r={r}, n={n}"));
    }
    let rf = r as f64;
    let mf = m as f64;
    let (lr, llr) = (rf.ln(), rf.ln().ln());
    let slack = rf - lr - mf * llr - 4.0 * mf;
    if slack <= 0.0 {
        return Err(ProbError::Inapplicable(format!(
            "r={r} does not exceed log r + m log log r + 4m"
        )));
    }
    let pi = box_at_most(r, n, m);
    let lambda = n as f64 * pi;
    if lambda <= 0.0 {
        return Ok(0.0);
    }
    let inner = (lr + mf * llr + 5.0 * mf) / slack * lambda + 4.0 / rf;
    Ok(-(-lambda).exp_m1() * (pi + rf / lambda * inner * inner))
}

/// Hypergeometric pmf: `x` successes in `draws` from `total` items, `good` of them successes.
pub fn hypergeometric_pmf(total: u64, good: u64, draws: u64, x: u64) -> f64 {
    if x > good || x > draws || draws - x > total - good {
        return 0.0;
    }
    (ln_binomial(good, x) + ln_binomial(total - good, draws - x) - ln_binomial(total, draws)).exp()
}

pub fn binomial_pmf(trials: u64, p: f64, x: u64) -> f64 {
    if x > trials {
        return 0.0;
    }
    (ln_binomial(trials, x) + x as f64 * p.ln() + (trials - x) as f64 * (-p).ln_1p()).exp()
}

fn check_mc(n: u64, min: u64) -> Result<(), ProbError> {
    if n < min {
        return domain(format!("n={n} < {min}"));
    }
    Ok(())
}

/// Monte Carlo for [`p_admissible_3cycle`]: on the tour `1..n`, pick `j ∈ {3..n}` and
/// `k ∉ {1, j}` uniformly; success when `(1 j k)` runs clockwise.
pub fn mc_admissible_3cycle(n: u64, trials: u64, seed: u64, exec: Exec) -> Result<f64, ProbError> {
    check_mc(n, 4)?;
    let n = n as usize;
    let hits = count_successes(trials, seed, exec, |r: &mut StdRng, k| {
        let mut hits = 0;
        for _ in 0..k {
            let j = 3 + below(r, n - 2);
            let mut x = 2 + below(r, n - 2);
            if x >= j {
                x += 1;
            }
            hits += u64::from(x > j);
        }
        hits
    });
    Ok(hits as f64 / trials as f64)
}

/// Monte Carlo for [`p_proper_intersection`]: `(j, r)` uniform over `3 ≤ j ≤ n`, `2 ≤ r < j`,
/// then `s ∉ {r, j}`; success when chord `{r, s}` crosses chord `{1, j}`.
pub fn mc_proper_intersection(n: u64, trials: u64, seed: u64, exec: Exec) -> Result<f64, ProbError> {
    check_mc(n, 4)?;
    let n = n as usize;
    // pairs (j, r) are indexed by j-major order: j contributes j-2 pairs
    let pairs = (n - 2) * (n - 1) / 2;
    let hits = count_successes(trials, seed, exec, |rng: &mut StdRng, k| {
        let mut hits = 0;
        for _ in 0..k {
            let mut idx = below(rng, pairs);
            let mut j = 3;
            while idx >= j - 2 {
                idx -= j - 2;
                j += 1;
            }
            let r = 2 + idx;
            let mut s = 1 + below(rng, n - 2);
            for excluded in [r.min(j), r.max(j)] {
                if s >= excluded {
                    s += 1;
                }
            }
            let inside = |x: usize| x > 1 && x < j;
            hits += u64::from(inside(r) != inside(s) && s != 1);
        }
        hits
    });
    Ok(hits as f64 / trials as f64)
}

fn cw(a: usize, b: usize, c: usize) -> bool {
    a != b && b != c && a != c && ((a < b && b < c) || (b < c && c < a) || (c < a && a < b))
}

/// Admissible 3-cycles among the six patterns through vertex `n` on the tour `1..n`.
pub fn two_admissible_patterns(n: usize, i: usize, j: usize, k: usize, l: usize, r: usize, s: usize) -> usize {
    let pred = |v: usize| if v == 1 { n } else { v - 1 };
    [
        (n, k - 1, pred(r)),
        (n, l - 1, pred(s)),
        (n, k - 1, i),
        (n, k - 1, j),
        (n, l - 1, i),
        (n, l - 1, j),
    ]
    .iter()
    .filter(|&&(a, b, c)| cw(a, b, c))
    .count()
}

fn two_distinct_sorted<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> (usize, usize) {
    let span = hi - lo + 1;
    let a = below(rng, span);
    let mut b = below(rng, span - 1);
    if b >= a {
        b += 1;
    }
    (lo + a.min(b), lo + a.max(b))
}

fn avoid_pair<R: Rng>(rng: &mut R, n: usize, x: usize) -> usize {
    // uniform over {1..n} \ {x-1, x} with 2 ≤ x
    let mut v = 1 + below(rng, n - 2);
    if v >= x - 1 {
        v += 2;
    }
    v
}

/// Fraction of random configurations that admit at least two admissible 3-cycles.
pub fn mc_two_admissible(n: u64, trials: u64, seed: u64) -> Result<f64, ProbError> {
    mc_two_admissible_with(n, trials, seed, Exec::default())
}

pub fn mc_two_admissible_with(n: u64, trials: u64, seed: u64, exec: Exec) -> Result<f64, ProbError> {
    check_mc(n, 8)?;
    if trials == 0 {
        return domain("trials must be at least 1".into());
    }
    let n = n as usize;
    let hits = count_successes(trials, seed, exec, |rng: &mut StdRng, k| {
        let mut hits = 0;
        for _ in 0..k {
            let (i, j) = two_distinct_sorted(rng, 2, n - 1);
            let (kk, l) = two_distinct_sorted(rng, 2, n - 1);
            let r = avoid_pair(rng, n, kk);
            let s = avoid_pair(rng, n, l);
            hits += u64::from(two_admissible_patterns(n, i, j, kk, l, r, s) >= 2);
        }
        hits
    });
    Ok(hits as f64 / trials as f64)
}

/// Formats a rational as `p/q ≈ decimal`.
pub fn describe(q: &BigRational) -> String {
    let q = if q.denom().is_negative() { -q.clone() } else { q.clone() };
    format!("{} ≈ {:.6}", q, to_f64(&q))
}
