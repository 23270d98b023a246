//! Exact big-integer formulas and recurrences for all the counting sequences:
//! factorials, binomials, unsigned Stirling numbers of the first kind,
//! derangements, r-derangements with and without fixed parity, and the block
//! families obtained from them.
//!
//! Everything here is the "fast path"; the `oracle` module provides the
//! matching ground truth by exhaustive enumeration.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cycle_types;
use crate::error::{Error, Result};
use crate::oracle::{self, ClassSpec, Family};
use crate::permutation::Parity;
use crate::series;
use crate::split::SplitCondition;

pub fn factorial(n: usize) -> BigInt {
    let mut result = BigInt::one();
    for t in 2..=n {
        result *= BigInt::from(t);
    }
    result
}

/// Binomial coefficient with the usual convention `C(n, k) = 0` for `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut result = BigInt::one();
    for t in 1..=k {
        result = result * BigInt::from(n - k + t) / BigInt::from(t);
    }
    result
}

/// Falling factorial `n (n-1) ... (n-j+1) = n! / (n-j)!`; zero for `j > n`.
pub fn falling_factorial(n: usize, j: usize) -> BigInt {
    if j > n {
        return BigInt::zero();
    }
    let mut result = BigInt::one();
    for t in 0..j {
        result *= BigInt::from(n - t);
    }
    result
}

/// Row `r` of the unsigned Stirling triangle of the first kind, indices
/// `0..=r`, via the recurrence `[r+1, k] = [r, k-1] + r [r, k]`.
pub fn stirling_row(r: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for size in 0..r {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, value) in row.iter().enumerate() {
            next[k + 1] += value;
            next[k] += BigInt::from(size) * value;
        }
        row = next;
    }
    row
}

/// Number of permutations of `{1..r}` with exactly `k` cycles.
pub fn stirling_first(r: usize, k: usize) -> BigInt {
    if k > r {
        return BigInt::zero();
    }
    stirling_row(r).swap_remove(k)
}

/// Derangement numbers by the recurrence `D(n) = (n-1)(D(n-1) + D(n-2))`,
/// `D(0) = 1`, `D(1) = 0`.
pub fn derangement(n: usize) -> BigInt {
    let mut previous = BigInt::one();
    if n == 0 {
        return previous;
    }
    let mut current = BigInt::zero();
    for t in 2..=n {
        let next = BigInt::from(t - 1) * (&current + &previous);
        previous = current;
        current = next;
    }
    current
}

fn neg_one_pow(exponent: usize) -> BigInt {
    if exponent.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn half_exact(value: BigInt) -> BigInt {
    let (half, remainder) = num_integer::Integer::div_rem(&value, &BigInt::from(2));
    assert!(remainder.is_zero(), "expected an even value, got {value}");
    half
}

/// Number of derangements of `{1..r+n}` whose front elements `1..r` lie in
/// pairwise disjoint cycles: `sum_{j=r}^{n} n!/(n-j)! (-1)^{n-j} C(j, r)`,
/// and zero for `n < r`.
pub fn r_derangement(r: usize, n: usize) -> BigInt {
    if n < r {
        return BigInt::zero();
    }
    let mut sum = BigInt::zero();
    for j in r..=n {
        sum += falling_factorial(n, j) * neg_one_pow(n - j) * binomial(j, r);
    }
    sum
}

/// Signed difference (odd count) - (even count) of r-derangements.
///
/// For `r >= 2` this is `(-1)^{n-1} sum_{j=r}^{n} n!/(n-j)! C(j-2, r-2)`;
/// the cases `r = 0` and `r = 1` have the closed forms `(-1)^n (n-1)` and
/// `(-1)^{n-1} n`, which the generating-function route below reproduces.
pub fn parity_difference(r: usize, n: usize) -> BigInt {
    match r {
        0 => neg_one_pow(n) * (BigInt::from(n) - BigInt::one()),
        1 if n == 0 => BigInt::zero(),
        1 => neg_one_pow(n - 1) * BigInt::from(n),
        _ if n < r => BigInt::zero(),
        _ => {
            let mut sum = BigInt::zero();
            for j in r..=n {
                sum += falling_factorial(n, j) * binomial(j - 2, r - 2);
            }
            neg_one_pow(n - 1) * sum
        }
    }
}

/// Number of r-derangements of the given parity, via the explicit route:
/// half of `D_r(n) - (-1)^i C_r(n)` with `C_r` the parity difference.
pub fn r_derangement_parity_explicit(r: usize, n: usize, parity: Parity) -> BigInt {
    let sign = neg_one_pow(parity.bit());
    half_exact(r_derangement(r, n) - sign * parity_difference(r, n))
}

/// Bottom-up table of r-derangement counts split by parity:
/// `table[r][n][i]` counts parity-`i` members. Entries satisfy the
/// three-term recurrence
/// `D_r^{(i)}(n) = r D_{r-1}^{(1-i)}(n-1) + (n-1) D_r^{(1-i)}(n-2) + (n+r-1) D_r^{(1-i)}(n-1)`
/// with `D_r^{(i)}(n) = 0` for `n < r` and `D_r^{(i)}(r) = r!/2 (1 + (-1)^{r+i})`.
pub fn parity_recurrence_table(r_max: usize, n_max: usize) -> Vec<Vec<[BigInt; 2]>> {
    let zero = || [BigInt::zero(), BigInt::zero()];
    let mut table = vec![vec![zero(); n_max + 1]; r_max + 1];
    for r in 0..=r_max {
        for n in 0..=n_max {
            for i in 0..2 {
                table[r][n][i] = if n < r {
                    BigInt::zero()
                } else if n == r {
                    if (r + i) % 2 == 0 {
                        factorial(r)
                    } else {
                        BigInt::zero()
                    }
                } else {
                    let flip = 1 - i;
                    let mut value = BigInt::from(n + r - 1) * &table[r][n - 1][flip];
                    if r > 0 {
                        value += BigInt::from(r) * &table[r - 1][n - 1][flip];
                    }
                    if n >= 2 {
                        value += BigInt::from(n - 1) * &table[r][n - 2][flip];
                    }
                    value
                };
            }
        }
    }
    table
}

/// Number of r-derangements of the given parity, via the recurrence route.
pub fn r_derangement_parity_recurrence(r: usize, n: usize, parity: Parity) -> BigInt {
    parity_recurrence_table(r, n)[r][n][parity.bit()].clone()
}

fn check_reduction(r: usize, u: usize, m: usize, n: usize) -> Result<()> {
    if u > r {
        return Err(Error::Domain(format!("u = {u} exceeds r = {r}")));
    }
    if m > n {
        return Err(Error::Domain(format!("m = {m} exceeds n = {n}")));
    }
    Ok(())
}

/// Count of separated permutations with `u` front and `m` tail fixed points:
/// choosing the fixed points reduces to fixed-point-free separated
/// permutations, `C(r, u) C(n, m) D_{r-u}(n-m)`.
pub fn separated_count(r: usize, u: usize, m: usize, n: usize) -> Result<BigInt> {
    check_reduction(r, u, m, n)?;
    Ok(binomial(r, u) * binomial(n, m) * r_derangement(r - u, n - m))
}

/// Parity refinement of [`separated_count`]; removing fixed points does not
/// change the parity.
pub fn separated_count_parity(
    r: usize,
    u: usize,
    m: usize,
    n: usize,
    parity: Parity,
) -> Result<BigInt> {
    check_reduction(r, u, m, n)?;
    Ok(binomial(r, u) * binomial(n, m) * r_derangement_parity_explicit(r - u, n - m, parity))
}

/// Per-parity base counts `D_{r}(n)` and `D_{r}^{(i)}(n)` from which every
/// family count is composed.
#[derive(Debug, Clone)]
struct BaseCounts {
    total: BigInt,
    even: BigInt,
    odd: BigInt,
}

impl BaseCounts {
    fn of_parity(&self, parity: Parity) -> &BigInt {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }
}

fn closed_form_base(r: usize, n: usize) -> BaseCounts {
    BaseCounts {
        total: r_derangement(r, n),
        even: r_derangement_parity_explicit(r, n, Parity::Even),
        odd: r_derangement_parity_explicit(r, n, Parity::Odd),
    }
}

/// Applies the multiplicative structure of the family counts to base counts
/// for the reduced parameters `(r - u, n - m)`:
/// fixed-point choices contribute `C(r,u) C(n,m)`, the block families carry a
/// Stirling-number (or `r!`, or `r!/2`) factor, and the refinements select a
/// parity, with the block-with-cycle-count refinement reading parity
/// `(r + k + i) mod 2` off the separated side.
fn compose_family(spec: &ClassSpec, base: &BaseCounts) -> BigInt {
    let prefactor = binomial(spec.r, spec.u) * binomial(spec.n, spec.m);
    match spec.family {
        Family::Block => factorial(spec.r) * prefactor * &base.total,
        Family::BlockK => {
            stirling_first(spec.r, spec.k.expect("validated")) * prefactor * &base.total
        }
        Family::BlockParity => {
            if spec.r >= 2 {
                half_exact(factorial(spec.r)) * prefactor * &base.total
            } else {
                prefactor * base.of_parity(spec.parity.expect("validated"))
            }
        }
        Family::BlockKParity => {
            let k = spec.k.expect("validated");
            let i = spec.parity.expect("validated");
            let transported = Parity::from_count(spec.r + k + i.bit());
            stirling_first(spec.r, k) * prefactor * base.of_parity(transported)
        }
        Family::Sep => prefactor * &base.total,
        Family::SepParity => prefactor * base.of_parity(spec.parity.expect("validated")),
    }
}

/// Exact class count by closed formulas, for any family.
pub fn formula_count(spec: &ClassSpec) -> Result<BigInt> {
    check_reduction(spec.r, spec.u, spec.m, spec.n)?;
    let base = closed_form_base(spec.r - spec.u, spec.n - spec.m);
    Ok(compose_family(spec, &base))
}

/// `D(r,u,m,n) = r! C(r,u) C(n,m) D_{r-u}(n-m)`.
pub fn block_count(r: usize, u: usize, m: usize, n: usize) -> Result<BigInt> {
    formula_count(&ClassSpec::new(Family::Block, r, u, m, n, None, None)?)
}

/// Block count refined by the number `k` of front cycles: the Stirling
/// number `[r, k]` times the separated count.
pub fn block_count_by_cycles(r: usize, u: usize, m: usize, n: usize, k: usize) -> Result<BigInt> {
    formula_count(&ClassSpec::new(Family::BlockK, r, u, m, n, Some(k), None)?)
}

/// Block count refined by parity: `r!/2` times the separated count for
/// `r >= 2`, and the parity-refined separated count for `r` in `{0, 1}`.
pub fn block_count_by_parity(
    r: usize,
    u: usize,
    m: usize,
    n: usize,
    parity: Parity,
) -> Result<BigInt> {
    formula_count(&ClassSpec::new(
        Family::BlockParity,
        r,
        u,
        m,
        n,
        None,
        Some(parity),
    )?)
}

/// Block count refined by both cycle count and parity:
/// `[r, k]` times the separated count of parity `(r + k + i) mod 2`.
pub fn block_count_by_cycles_and_parity(
    r: usize,
    u: usize,
    m: usize,
    n: usize,
    k: usize,
    parity: Parity,
) -> Result<BigInt> {
    formula_count(&ClassSpec::new(
        Family::BlockKParity,
        r,
        u,
        m,
        n,
        Some(k),
        Some(parity),
    )?)
}

/// Number of permutations of `{1..r}` whose cycle count satisfies the
/// condition: `r!` times the filtered cycle-type weight sum. With a fixed
/// count `k` this is the Stirling number `[r, k]`; the two parities sum
/// to `r!`.
pub fn condition_count(r: usize, condition: &SplitCondition) -> Result<BigInt> {
    cycle_types::weighted_count(r, condition)
}

/// How the values of a [`SequenceTable`] were computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMethod {
    /// Explicit closed formulas.
    ClosedForm,
    /// The three-term parity recurrence.
    Recurrence,
    /// Coefficient extraction from the exponential generating functions.
    Egf,
    /// Brute-force enumeration (subject to the enumeration cap).
    Oracle,
}

impl TableMethod {
    pub const ALL: [TableMethod; 4] = [
        TableMethod::ClosedForm,
        TableMethod::Recurrence,
        TableMethod::Egf,
        TableMethod::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableMethod::ClosedForm => "formula",
            TableMethod::Recurrence => "recurrence",
            TableMethod::Egf => "egf",
            TableMethod::Oracle => "oracle",
        }
    }
}

impl std::fmt::Display for TableMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TableMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "formula" => Ok(TableMethod::ClosedForm),
            "recurrence" => Ok(TableMethod::Recurrence),
            "egf" => Ok(TableMethod::Egf),
            "oracle" => Ok(TableMethod::Oracle),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "expected formula, recurrence, egf, or oracle".to_string(),
            }),
        }
    }
}

/// One family with fixed `(r, u, m)` (and optional `k`, parity) tabulated
/// over a contiguous range of `n`, with the computation method recorded.
#[derive(Debug, Clone)]
pub struct SequenceTable {
    pub family: Family,
    pub r: usize,
    pub u: usize,
    pub m: usize,
    pub k: Option<usize>,
    pub parity: Option<Parity>,
    pub method: TableMethod,
    /// `(n, count)` for `n = 0..=n_max`.
    pub values: Vec<(usize, BigInt)>,
}

/// Tabulates a family count for `n = 0..=n_max` with the chosen method.
/// Rows with `n < m` are zero, since no tail of size `n` has `m` fixed
/// points. The oracle method is subject to the default enumeration cap.
#[allow(clippy::too_many_arguments)]
pub fn build_table(
    family: Family,
    r: usize,
    u: usize,
    m: usize,
    k: Option<usize>,
    parity: Option<Parity>,
    n_max: usize,
    method: TableMethod,
) -> Result<SequenceTable> {
    // Validate the fixed parameters once, against the largest n.
    ClassSpec::new(family, r, u, m, n_max.max(m), k, parity)?;

    let recurrence = match method {
        TableMethod::Recurrence => Some(parity_recurrence_table(r - u, n_max.saturating_sub(m))),
        _ => None,
    };
    let egf = match method {
        TableMethod::Egf => {
            let order = n_max.saturating_sub(m);
            Some((
                series::egf_f_r(r - u, order),
                series::egf_f_r_parity(r - u, Parity::Even, order),
                series::egf_f_r_parity(r - u, Parity::Odd, order),
            ))
        }
        _ => None,
    };

    let mut values = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n < m {
            values.push((n, BigInt::zero()));
            continue;
        }
        let spec = ClassSpec::new(family, r, u, m, n, k, parity)?;
        let value = match method {
            TableMethod::ClosedForm => formula_count(&spec)?,
            TableMethod::Oracle => oracle::brute_count(&spec)?,
            TableMethod::Recurrence => {
                let table = recurrence.as_ref().expect("built above");
                let row = &table[r - u][n - m];
                let base = BaseCounts {
                    total: &row[0] + &row[1],
                    even: row[0].clone(),
                    odd: row[1].clone(),
                };
                compose_family(&spec, &base)
            }
            TableMethod::Egf => {
                let (total, even, odd) = egf.as_ref().expect("built above");
                let at = |series: &series::TruncatedSeries| -> BigInt {
                    let value = series.egf_coefficient(n - m);
                    assert!(value.is_integer(), "EGF coefficient times n! is a count");
                    value.to_integer()
                };
                let base = BaseCounts {
                    total: at(total),
                    even: at(even),
                    odd: at(odd),
                };
                compose_family(&spec, &base)
            }
        };
        values.push((n, value));
    }
    Ok(SequenceTable {
        family,
        r,
        u,
        m,
        k,
        parity,
        method,
        values,
    })
}
