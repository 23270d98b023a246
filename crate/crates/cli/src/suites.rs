//! Verification suites: each one sweeps a parameter grid and compares two
//! independent computation routes exactly.
//!
//! - `main`: every family count from the closed formulas against full
//!   enumeration, plus the block identity `D(r,0,0,n) = r! D_r(n)` along two
//!   formula routes;
//! - `lemma`: splitting fiber sizes against the partition-weight formula,
//!   over every separated permutation in range;
//! - `partition`: the filtered cycle-type weight sums against Stirling-number
//!   right sides and their piecewise parity values;
//! - `recurrence`: the parity recurrence against the explicit formulas,
//!   including the base-case tables, with oracle confirmation where feasible;
//! - `egf`: coefficients of the generating functions against the sequence
//!   formulas, the parity split, and the differential equation;
//! - `sign`: strict sign alternation of the parity gap.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use derangements::cycle_types;
use derangements::oracle::{self, Census, ClassSpec, Family};
use derangements::permutation::Parity;
use derangements::sequences;
use derangements::series;
use derangements::split::{self, SplitCondition};

use crate::report::VerifyReport;

/// Grid bounds for the suites. The oracle-backed suites sweep everything
/// with `r + n` below their cap; the formula-only suites use `r_max`/`n_max`.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Cap on `r + n` for the enumeration-backed `main` suite.
    pub max_size: usize,
    /// Front sizes swept against the oracle in the `main` suite.
    pub oracle_r_max: usize,
    /// Cap on `r + n` for the fiber suite (one below `max_size` by default).
    pub lemma_size: usize,
    /// Front cap for the formula-only grids.
    pub r_max: usize,
    /// Tail cap for the formula-only grids.
    pub n_max: usize,
    /// Largest `r` for the partition-weight identities.
    pub partition_r_max: usize,
    /// Largest modulus for the residue-filtered weight sums.
    pub residue_modulus_max: usize,
    /// Front cap for the generating-function comparisons.
    pub egf_r_max: usize,
    /// Coefficient cap for the generating-function comparisons.
    pub egf_n_max: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_size: 8,
            oracle_r_max: 4,
            lemma_size: 7,
            r_max: 10,
            n_max: 50,
            partition_r_max: 20,
            residue_modulus_max: 6,
            egf_r_max: 8,
            egf_n_max: 25,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Main,
    Lemma,
    Partition,
    Recurrence,
    Egf,
    Sign,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Main,
        Suite::Lemma,
        Suite::Partition,
        Suite::Recurrence,
        Suite::Egf,
        Suite::Sign,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Main => "main",
            Suite::Lemma => "lemma",
            Suite::Partition => "partition",
            Suite::Recurrence => "recurrence",
            Suite::Egf => "egf",
            Suite::Sign => "sign",
        }
    }
}

/// Parses a suite selection; `all` expands to every suite.
pub fn parse_selection(text: &str) -> Result<Vec<Suite>, String> {
    match text.trim() {
        "all" => Ok(Suite::ALL.to_vec()),
        "main" => Ok(vec![Suite::Main]),
        "lemma" => Ok(vec![Suite::Lemma]),
        "partition" => Ok(vec![Suite::Partition]),
        "recurrence" => Ok(vec![Suite::Recurrence]),
        "egf" => Ok(vec![Suite::Egf]),
        "sign" => Ok(vec![Suite::Sign]),
        other => Err(format!(
            "unknown suite {other:?}; expected main, lemma, partition, recurrence, egf, sign, or all"
        )),
    }
}

/// Runs one suite and stamps its wall time.
pub fn run(suite: Suite, config: &VerifyConfig) -> VerifyReport {
    let start = Instant::now();
    let mut report = match suite {
        Suite::Main => suite_main(config),
        Suite::Lemma => suite_lemma(config),
        Suite::Partition => suite_partition(config),
        Suite::Recurrence => suite_recurrence(config),
        Suite::Egf => suite_egf(config),
        Suite::Sign => suite_sign(config),
    };
    report.wall_time = start.elapsed();
    report
}

/// Every valid `ClassSpec` for the six families at fixed `(r, u, m, n)`.
fn specs_at(r: usize, u: usize, m: usize, n: usize) -> Vec<ClassSpec> {
    let mut specs = vec![
        ClassSpec::new(Family::Block, r, u, m, n, None, None).unwrap(),
        ClassSpec::new(Family::Sep, r, u, m, n, None, None).unwrap(),
    ];
    for k in 0..=r {
        specs.push(ClassSpec::new(Family::BlockK, r, u, m, n, Some(k), None).unwrap());
    }
    for i in Parity::BOTH {
        specs.push(ClassSpec::new(Family::BlockParity, r, u, m, n, None, Some(i)).unwrap());
        specs.push(ClassSpec::new(Family::SepParity, r, u, m, n, None, Some(i)).unwrap());
        for k in 0..=r {
            specs.push(ClassSpec::new(Family::BlockKParity, r, u, m, n, Some(k), Some(i)).unwrap());
        }
    }
    specs
}

fn suite_main(config: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport::new("main");
    for r in 0..=config.oracle_r_max.min(config.max_size) {
        for n in 0..=(config.max_size - r) {
            let census = Census::build(r, n, config.max_size).expect("size within cap");
            for u in 0..=r {
                for m in 0..=n {
                    for spec in specs_at(r, u, m, n) {
                        let enumerated = census.count(&spec).expect("matching census");
                        let formula = sequences::formula_count(&spec).expect("valid spec");
                        report.record(
                            "formula count equals enumeration",
                            spec.to_string(),
                            &enumerated,
                            &formula,
                        );
                    }
                }
            }
        }
    }

    // Block identity along two formula routes: the closed explicit sum and
    // the parity recurrence.
    let table = sequences::parity_recurrence_table(config.r_max, config.n_max);
    for (r, by_n) in table.iter().enumerate() {
        let r_factorial = sequences::factorial(r);
        for (n, pair) in by_n.iter().enumerate() {
            let block = sequences::block_count(r, 0, 0, n).expect("valid parameters");
            let explicit = &r_factorial * sequences::r_derangement(r, n);
            let recurrent = &r_factorial * (&pair[0] + &pair[1]);
            report.record(
                "block count is r! times the explicit separated count",
                format!("r={r} n={n}"),
                &explicit,
                &block,
            );
            report.record(
                "block count is r! times the recurrence separated count",
                format!("r={r} n={n}"),
                &recurrent,
                &block,
            );
        }
    }

    // Oracle confirmation of the block identity over the full size range,
    // including fronts beyond the grid above.
    for r in 0..=config.max_size {
        for n in 0..=(config.max_size - r) {
            let spec = ClassSpec::new(Family::Block, r, 0, 0, n, None, None).unwrap();
            let enumerated =
                oracle::brute_count_with_cap(&spec, config.max_size).expect("size within cap");
            let formula = sequences::block_count(r, 0, 0, n).expect("valid parameters");
            report.record(
                "oracle confirms the block identity",
                format!("r={r} n={n}"),
                &enumerated,
                &formula,
            );
        }
    }
    report
}

fn suite_lemma(config: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport::new("lemma");
    for r in 0..=config.lemma_size {
        let mut conditions = vec![
            SplitCondition::Any,
            SplitCondition::CycleParity(Parity::Even),
            SplitCondition::CycleParity(Parity::Odd),
        ];
        conditions.extend((0..=r).map(SplitCondition::CycleCount));
        let formulas: Vec<BigInt> = conditions
            .iter()
            .map(|condition| split::fiber_size_formula(r, condition).expect("valid condition"))
            .collect();
        for n in 0..=(config.lemma_size - r) {
            for u in 0..=r {
                for m in 0..=n {
                    let spec = ClassSpec::new(Family::Sep, r, u, m, n, None, None).unwrap();
                    let members: Vec<_> = oracle::enumerate_class_with_cap(&spec, config.max_size)
                        .expect("size within cap")
                        .collect();
                    for (condition, formula) in conditions.iter().zip(&formulas) {
                        let mut mismatch = None;
                        for member in &members {
                            let size = split::fiber(member, r, condition)
                                .expect("separated member within cap")
                                .len();
                            if BigInt::from(size) != *formula && mismatch.is_none() {
                                mismatch = Some((member.clone(), size));
                            }
                        }
                        let actual = match &mismatch {
                            None => formula.to_string(),
                            Some((member, size)) => {
                                format!("fiber over {member} has size {size}")
                            }
                        };
                        report.require(
                            "fiber size equals the weight formula for every member",
                            format!("{spec} condition {condition} members={}", members.len()),
                            mismatch.is_none(),
                            actual,
                        );
                    }
                }
            }
        }
    }
    report
}

fn suite_partition(config: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport::new("partition");
    let one = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for r in 0..=config.partition_r_max {
        let row = sequences::stirling_row(r);
        let r_factorial = BigRational::from_integer(sequences::factorial(r));

        let total = cycle_types::filtered_weight_sum(r, &SplitCondition::Any).unwrap();
        report.record(
            "weight sum over all cycle types",
            format!("r={r}"),
            &one,
            &total,
        );

        for (parity, low_value) in [(Parity::Even, 1 - r as i64), (Parity::Odd, r as i64)] {
            let value =
                cycle_types::filtered_weight_sum(r, &SplitCondition::CycleParity(parity)).unwrap();
            let expected = if r < 2 {
                BigRational::from_integer(BigInt::from(low_value))
            } else {
                half.clone()
            };
            report.record(
                "parity-filtered weight sum takes its piecewise value",
                format!("r={r} parity={}", parity.bit()),
                &expected,
                &value,
            );
        }

        for (k, stirling) in row.iter().enumerate() {
            let value =
                cycle_types::filtered_weight_sum(r, &SplitCondition::CycleCount(k)).unwrap();
            let expected = BigRational::from_integer(stirling.clone()) / r_factorial.clone();
            report.record(
                "count-filtered weight sum is the Stirling ratio",
                format!("r={r} k={k}"),
                &expected,
                &value,
            );
        }

        for modulus in 1..=config.residue_modulus_max {
            for remainder in 0..modulus {
                let value = cycle_types::filtered_weight_sum(
                    r,
                    &SplitCondition::Residue { remainder, modulus },
                )
                .unwrap();
                let stirling_sum: BigInt = row
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| k % modulus == remainder)
                    .map(|(_, value)| value)
                    .sum();
                let expected = BigRational::from_integer(stirling_sum) / r_factorial.clone();
                report.record(
                    "residue-filtered weight sum matches the Stirling sum",
                    format!("r={r} c={remainder} d={modulus}"),
                    &expected,
                    &value,
                );
            }
        }

        // Scaled by r!, every filtered sum counts permutations.
        for condition in [
            SplitCondition::Any,
            SplitCondition::CycleParity(Parity::Even),
            SplitCondition::CycleParity(Parity::Odd),
        ] {
            let scaled = cycle_types::weighted_count(r, &condition).unwrap();
            report.require(
                "r! times the filtered weight sum is an integer",
                format!("r={r} condition {condition}"),
                scaled >= BigInt::ZERO,
                scaled.to_string(),
            );
        }
    }
    report.note(
        "residue sum at r=0",
        "the empty cycle type has part count 0, so the residue class c=0 \
         includes the k=0 Stirling term; a right side summed from k=1 would \
         read 0 instead of 1 at r=0"
            .to_string(),
    );
    report
}

fn suite_recurrence(config: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport::new("recurrence");
    let table = sequences::parity_recurrence_table(config.r_max, config.n_max);
    for (r, by_n) in table.iter().enumerate() {
        for (n, pair) in by_n.iter().enumerate() {
            for i in Parity::BOTH {
                let explicit = sequences::r_derangement_parity_explicit(r, n, i);
                report.record(
                    "recurrence equals explicit parity count",
                    format!("r={r} n={n} i={}", i.bit()),
                    &explicit,
                    &pair[i.bit()],
                );
            }
            let total = sequences::r_derangement(r, n);
            let summed = &pair[0] + &pair[1];
            report.record(
                "parity counts sum to the total",
                format!("r={r} n={n}"),
                &total,
                &summed,
            );
        }
    }

    // Base cases at n = r: only the parity of r survives, and the signed
    // parity gap is (-1)^{r+1} r!.
    for (r, by_n) in table.iter().enumerate() {
        let r_factorial = sequences::factorial(r);
        for i in Parity::BOTH {
            let expected = if (r + i.bit()).is_multiple_of(2) {
                r_factorial.clone()
            } else {
                BigInt::ZERO
            };
            report.record(
                "base case at n = r",
                format!("r={r} i={}", i.bit()),
                &expected,
                &by_n[r][i.bit()],
            );
        }
        let gap_expected = if r.is_multiple_of(2) {
            -r_factorial.clone()
        } else {
            r_factorial.clone()
        };
        report.record(
            "signed parity gap at n = r",
            format!("r={r}"),
            &gap_expected,
            &sequences::parity_difference(r, r),
        );
    }

    // Oracle confirmation of the base cases where 2r fits under the cap.
    for (r, by_n) in table.iter().enumerate().take(config.max_size / 2 + 1) {
        for i in Parity::BOTH {
            let spec = ClassSpec::new(Family::SepParity, r, 0, 0, r, None, Some(i)).unwrap();
            let enumerated = oracle::brute_count_with_cap(&spec, config.max_size).unwrap();
            report.record(
                "oracle confirms the base case",
                format!("r={r} i={}", i.bit()),
                &enumerated,
                &by_n[r][i.bit()],
            );
        }
    }
    report
}

fn suite_egf(config: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport::new("egf");
    let order = config.egf_n_max;
    for r in 0..=config.egf_r_max {
        let gap_series = series::egf_g_r(r, order);
        let total_series = series::egf_f_r(r, order);
        let parity_series = [
            series::egf_f_r_parity(r, Parity::Even, order),
            series::egf_f_r_parity(r, Parity::Odd, order),
        ];
        for n in 0..=config.egf_n_max {
            report.record(
                "parity-gap series coefficient",
                format!("r={r} n={n}"),
                &BigRational::from_integer(sequences::parity_difference(r, n)),
                &gap_series.egf_coefficient(n),
            );
            report.record(
                "count series coefficient",
                format!("r={r} n={n}"),
                &BigRational::from_integer(sequences::r_derangement(r, n)),
                &total_series.egf_coefficient(n),
            );
            for i in Parity::BOTH {
                report.record(
                    "parity count series coefficient",
                    format!("r={r} n={n} i={}", i.bit()),
                    &BigRational::from_integer(sequences::r_derangement_parity_explicit(r, n, i)),
                    &parity_series[i.bit()].egf_coefficient(n),
                );
            }
        }
        report.require(
            "parity series sum to the count series",
            format!("r={r}"),
            parity_series[0].add(&parity_series[1]) == total_series,
            "sum compared coefficient-wise".to_string(),
        );
        report.require(
            "parity series difference is the gap series",
            format!("r={r}"),
            parity_series[1].sub(&parity_series[0]) == gap_series,
            "difference compared coefficient-wise".to_string(),
        );
        if r >= 1 {
            // (1+x) G_r' = -r G_{r-1} - (x+r) G_r through one order less.
            let lower = series::egf_g_r(r - 1, order);
            let left = series::binomial_power(series::Sign::Plus, 1, order - 1)
                .mul(&gap_series.derivative());
            let mut linear = vec![BigRational::from_integer(BigInt::ZERO); order];
            linear[0] = BigRational::from_integer(BigInt::from(r));
            linear[1] = BigRational::one();
            let right = lower
                .scale(&BigRational::from_integer(BigInt::from(-(r as i64))))
                .truncated(order - 1)
                .sub(&series::TruncatedSeries::from_coefficients(linear).mul(&gap_series));
            report.require(
                "gap series satisfies its differential equation",
                format!("r={r}"),
                left == right,
                "compared through one order less".to_string(),
            );
        }
    }

    // Rising-factorial coefficients read off the count-filtered weight sums.
    for r in 0..=12 {
        let poly = series::rising_factorial_poly(r);
        let r_factorial = BigRational::from_integer(sequences::factorial(r));
        let mut mismatch = None;
        for k in 0..=r {
            let from_poly = BigRational::from_integer(poly.coefficient(k)) / r_factorial.clone();
            let from_weights =
                cycle_types::filtered_weight_sum(r, &SplitCondition::CycleCount(k)).unwrap();
            if from_poly != from_weights && mismatch.is_none() {
                mismatch = Some(k);
            }
        }
        report.require(
            "rising factorial reads off the filtered weight sums",
            format!("r={r}"),
            mismatch.is_none(),
            match mismatch {
                None => "all k agree".to_string(),
                Some(k) => format!("mismatch at k={k}"),
            },
        );
    }

    // The explicit parity formulas involve C(j-2, r-2); for r < 2 a literal
    // zero-binomial reading collapses, so those cases use the closed forms
    // derived from the r = 0 and r = 1 generating functions instead.
    for r in 0..=1usize {
        for n in 0..=4usize {
            let literal: BigRational = (r..=n)
                .map(|j| {
                    BigRational::from_integer(
                        sequences::falling_factorial(n, j)
                            * sequences::binomial(j, r)
                            * if (n - j).is_multiple_of(2) { 1 } else { -1 },
                    )
                })
                .sum::<BigRational>()
                / BigRational::from_integer(BigInt::from(2));
            report.note(
                "literal explicit parity formula below r=2",
                format!(
                    "r={r} n={n}: zero-binomial reading gives {literal} for both parities; \
                     the closed forms give even={} odd={}",
                    sequences::r_derangement_parity_explicit(r, n, Parity::Even),
                    sequences::r_derangement_parity_explicit(r, n, Parity::Odd),
                ),
            );
        }
    }
    report
}

fn suite_sign(config: &VerifyConfig) -> VerifyReport {
    let mut report = VerifyReport::new("sign");
    for r in 2..=config.r_max {
        for n in r..=config.n_max {
            let gap = sequences::r_derangement_parity_explicit(r, n, Parity::Even)
                - sequences::r_derangement_parity_explicit(r, n, Parity::Odd);
            let signed = if n.is_multiple_of(2) {
                gap.clone()
            } else {
                -gap.clone()
            };
            report.require(
                "signed parity gap is strictly positive",
                format!("r={r} n={n}"),
                signed > BigInt::ZERO,
                signed.to_string(),
            );
        }
    }
    report
}
