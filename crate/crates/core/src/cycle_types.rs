//! Cycle-type partitions `(j_1,...,j_r)` with `sum l*j_l = r`, and exact
//! rational sums of their weights `1 / prod_l l^{j_l} j_l!` filtered by a
//! condition on the part count `j_1 + ... + j_r`.
//!
//! `r!` times such a filtered sum counts the permutations of `{1..r}` whose
//! cycle count satisfies the condition, so it is always an integer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::split::SplitCondition;

/// A partition of `r` recorded by part multiplicities: entry `l - 1` is the
/// number of parts equal to `l`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CyclePartition {
    multiplicities: Vec<usize>,
}

impl CyclePartition {
    /// `j_l` for `l = 1..=r`.
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// The partitioned integer `sum l * j_l`.
    pub fn total(&self) -> usize {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(index, j)| (index + 1) * j)
            .sum()
    }

    /// The part count `j_1 + ... + j_r`.
    pub fn part_count(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// The exact weight `1 / prod_l l^{j_l} j_l!`.
    pub fn weight(&self) -> BigRational {
        let mut denominator = BigInt::one();
        for (index, &j) in self.multiplicities.iter().enumerate() {
            if j == 0 {
                continue;
            }
            let l = BigInt::from(index + 1);
            denominator *= l.pow(j as u32);
            for t in 1..=j {
                denominator *= BigInt::from(t);
            }
        }
        BigRational::new(BigInt::one(), denominator)
    }
}

/// All cycle-type partitions of `r`, sorted lexicographically by the
/// multiplicity vector. The count equals the number of integer partitions
/// of `r`.
pub fn enumerate_cycle_partitions(r: usize) -> Vec<CyclePartition> {
    let mut result = Vec::new();
    let mut current = vec![0usize; r];
    descend(r, r, &mut current, &mut result);
    result.sort();
    result
}

fn descend(
    remaining: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<CyclePartition>,
) {
    if remaining == 0 {
        out.push(CyclePartition {
            multiplicities: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current[part - 1] += 1;
        descend(remaining - part, part, current, out);
        current[part - 1] -= 1;
    }
}

/// Number of integer partitions of `n`, by the standard two-parameter
/// recurrence on (amount, largest allowed part). Independent of the
/// enumeration above; used as a cross-check.
pub fn partition_count(n: usize) -> u64 {
    // table[amount][max_part]
    let mut table = vec![vec![0u64; n + 1]; n + 1];
    table[0].fill(1);
    for amount in 1..=n {
        for max_part in 1..=n {
            table[amount][max_part] = table[amount][max_part - 1]
                + if amount >= max_part {
                    table[amount - max_part][max_part]
                } else {
                    0
                };
        }
    }
    table[n][n]
}

/// Sum of partition weights over the cycle-type partitions of `r` whose part
/// count satisfies `condition`.
pub fn filtered_weight_sum(r: usize, condition: &SplitCondition) -> Result<BigRational> {
    condition.validate()?;
    let mut sum = BigRational::zero();
    for partition in enumerate_cycle_partitions(r) {
        if condition.accepts(partition.part_count()) {
            sum += partition.weight();
        }
    }
    Ok(sum)
}

/// `r!` times the filtered weight sum. This counts the permutations of
/// `{1..r}` whose cycle count satisfies `condition`, hence is an integer.
pub fn weighted_count(r: usize, condition: &SplitCondition) -> Result<BigInt> {
    let sum =
        filtered_weight_sum(r, condition)? * BigRational::from(crate::sequences::factorial(r));
    assert!(
        sum.is_integer(),
        "r! times a part-count-filtered weight sum is a sum of Stirling numbers"
    );
    Ok(sum.to_integer())
}
