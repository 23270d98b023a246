//! Brute-force enumeration of `S_{r+n}` and exact classification of its
//! members into the counted permutation families.
//!
//! This module is the ground truth: it never uses a closed formula, only
//! exhaustive enumeration and direct inspection of each permutation. The
//! counted families all live inside `S_{r+n}` with a distinguished front
//! block `{1..r}`:
//!
//! - the block families constrain the number `u` of front elements mapped
//!   into the front block and the number `m` of fixed points in the tail,
//!   optionally refined by the number `k` of front cycles and/or the parity;
//! - the separated families additionally require every two front elements to
//!   lie in disjoint cycles, with `u` counting front fixed points.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::permutation::{next_arrangement, Parity, Permutation};
use crate::sequences::factorial;

/// Largest `r + n` accepted by the convenience enumeration entry points.
/// 9! = 362880 permutations keeps a full scan well under a second.
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

/// The six counted families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Exactly `u` front-to-front images and `m` tail fixed points.
    Block,
    /// `Block` refined by the number of front cycles.
    BlockK,
    /// `Block` refined by parity.
    BlockParity,
    /// `Block` refined by both front cycle count and parity.
    BlockKParity,
    /// Front elements pairwise separated, `u` front fixed points, `m` tail
    /// fixed points.
    Sep,
    /// `Sep` refined by parity.
    SepParity,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Block,
        Family::BlockK,
        Family::BlockParity,
        Family::BlockKParity,
        Family::Sep,
        Family::SepParity,
    ];

    pub fn requires_cycle_count(self) -> bool {
        matches!(self, Family::BlockK | Family::BlockKParity)
    }

    pub fn requires_parity(self) -> bool {
        matches!(
            self,
            Family::BlockParity | Family::BlockKParity | Family::SepParity
        )
    }

    pub fn is_separated(self) -> bool {
        matches!(self, Family::Sep | Family::SepParity)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Block => "block",
            Family::BlockK => "block-k",
            Family::BlockParity => "block-par",
            Family::BlockKParity => "block-k-par",
            Family::Sep => "sep",
            Family::SepParity => "sep-par",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "block" => Ok(Family::Block),
            "block-k" => Ok(Family::BlockK),
            "block-par" => Ok(Family::BlockParity),
            "block-k-par" => Ok(Family::BlockKParity),
            "sep" => Ok(Family::Sep),
            "sep-par" => Ok(Family::SepParity),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "expected one of block, block-k, block-par, block-k-par, sep, sep-par"
                    .to_string(),
            }),
        }
    }
}

/// Parameters selecting one counted class inside `S_{r+n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSpec {
    pub family: Family,
    pub r: usize,
    pub u: usize,
    pub m: usize,
    pub n: usize,
    pub k: Option<usize>,
    pub parity: Option<Parity>,
}

impl ClassSpec {
    pub fn new(
        family: Family,
        r: usize,
        u: usize,
        m: usize,
        n: usize,
        k: Option<usize>,
        parity: Option<Parity>,
    ) -> Result<Self> {
        if u > r {
            return Err(Error::Domain(format!("u = {u} exceeds r = {r}")));
        }
        if m > n {
            return Err(Error::Domain(format!("m = {m} exceeds n = {n}")));
        }
        match (family.requires_cycle_count(), k) {
            (true, None) => {
                return Err(Error::Domain(format!(
                    "family {family} requires a front cycle count k"
                )))
            }
            (false, Some(_)) => {
                return Err(Error::Domain(format!(
                    "family {family} does not take a front cycle count"
                )))
            }
            (true, Some(k)) if k > r => {
                return Err(Error::Domain(format!("k = {k} exceeds r = {r}")));
            }
            _ => {}
        }
        match (family.requires_parity(), parity) {
            (true, None) => {
                return Err(Error::Domain(format!("family {family} requires a parity")))
            }
            (false, Some(_)) => {
                return Err(Error::Domain(format!(
                    "family {family} does not take a parity"
                )))
            }
            _ => {}
        }
        Ok(ClassSpec {
            family,
            r,
            u,
            m,
            n,
            k,
            parity,
        })
    }

    /// Number of points of the ambient symmetric group, `r + n`.
    pub fn size(&self) -> usize {
        self.r + self.n
    }
}

impl std::fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} r={} u={} m={} n={}",
            self.family, self.r, self.u, self.m, self.n
        )?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(parity) = self.parity {
            write!(f, " i={}", parity.bit())?;
        }
        Ok(())
    }
}

/// Everything the family definitions ask about a single permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassStats {
    /// Front elements mapped into the front block.
    pub u_pairs: usize,
    /// Front elements that are fixed points.
    pub u_fixed_front: usize,
    /// Tail elements that are fixed points.
    pub m_fixed_tail: usize,
    /// Cycles meeting the front block.
    pub k_front: usize,
    /// Whether every two front elements lie in disjoint cycles.
    pub separated: bool,
    pub parity: Parity,
}

/// Computes all classification statistics of `p` relative to the front block
/// `{1..r}` in a single cycle scan.
pub fn classify(p: &Permutation, r: usize) -> ClassStats {
    assert!(r <= p.size(), "front block exceeds permutation size");
    let n = p.size();
    let mut u_pairs = 0;
    let mut u_fixed_front = 0;
    let mut m_fixed_tail = 0;
    for x in 1..=n {
        let y = p.apply(x);
        if x <= r {
            if y <= r {
                u_pairs += 1;
            }
            if y == x {
                u_fixed_front += 1;
            }
        } else if y == x {
            m_fixed_tail += 1;
        }
    }
    let mut visited = vec![false; n];
    let mut cycle_count = 0;
    let mut k_front = 0;
    let mut separated = true;
    for start in 1..=n {
        if visited[start - 1] {
            continue;
        }
        cycle_count += 1;
        if start <= r {
            k_front += 1;
        }
        let mut front_in_cycle = 0;
        let mut x = start;
        while !visited[x - 1] {
            visited[x - 1] = true;
            if x <= r {
                front_in_cycle += 1;
            }
            x = p.apply(x);
        }
        if front_in_cycle > 1 {
            separated = false;
        }
    }
    ClassStats {
        u_pairs,
        u_fixed_front,
        m_fixed_tail,
        k_front,
        separated,
        parity: Parity::from_count(n - cycle_count),
    }
}

/// Whether a permutation with the given statistics belongs to the class.
pub fn matches(stats: &ClassStats, spec: &ClassSpec) -> bool {
    if stats.m_fixed_tail != spec.m {
        return false;
    }
    let u_ok = if spec.family.is_separated() {
        stats.separated && stats.u_fixed_front == spec.u
    } else {
        stats.u_pairs == spec.u
    };
    u_ok && spec.k.is_none_or(|k| stats.k_front == k)
        && spec.parity.is_none_or(|i| stats.parity == i)
}

/// Iterator over all of `S_n` in lexicographic one-line order.
pub fn all_permutations(n: usize) -> LexPermutations {
    LexPermutations {
        next: Some((0..n).collect()),
    }
}

pub struct LexPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let one_line: Vec<usize> = current.iter().map(|&y| y + 1).collect();
        let mut advanced = current;
        if next_arrangement(&mut advanced) {
            self.next = Some(advanced);
        }
        Some(Permutation::from_one_line(&one_line).expect("arrangement of 0..n is a permutation"))
    }
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::EnumerationCapExceeded {
            size,
            factorial: factorial(size).to_string(),
            cap,
        });
    }
    Ok(())
}

/// Exact cardinality of the class by full enumeration of `S_{r+n}`,
/// using the default cap.
pub fn brute_count(spec: &ClassSpec) -> Result<BigInt> {
    brute_count_with_cap(spec, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_count_with_cap(spec: &ClassSpec, cap: usize) -> Result<BigInt> {
    check_cap(spec.size(), cap)?;
    let r = spec.r;
    let count = all_permutations(spec.size())
        .filter(|p| matches(&classify(p, r), spec))
        .count();
    Ok(BigInt::from(count))
}

/// Iterates the members of the class in lexicographic one-line order.
pub fn enumerate_class(spec: &ClassSpec) -> Result<ClassIter> {
    enumerate_class_with_cap(spec, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_class_with_cap(spec: &ClassSpec, cap: usize) -> Result<ClassIter> {
    check_cap(spec.size(), cap)?;
    Ok(ClassIter {
        inner: all_permutations(spec.size()),
        spec: spec.clone(),
    })
}

pub struct ClassIter {
    inner: LexPermutations,
    spec: ClassSpec,
}

impl Iterator for ClassIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        loop {
            let p = self.inner.next()?;
            if matches(&classify(&p, self.spec.r), &self.spec) {
                return Some(p);
            }
        }
    }
}

/// One full scan of `S_{r+n}` with every classification statistic tallied,
/// so that all families and refinements can be counted without re-enumerating.
#[derive(Debug, Clone)]
pub struct Census {
    r: usize,
    n: usize,
    total: u64,
    /// (u_pairs, m, k_front, parity bit) -> count
    block: BTreeMap<(usize, usize, usize, usize), u64>,
    /// (u_fixed_front, m, parity bit) -> count over separated permutations
    sep: BTreeMap<(usize, usize, usize), u64>,
}

impl Census {
    pub fn build(r: usize, n: usize, cap: usize) -> Result<Census> {
        check_cap(r + n, cap)?;
        let mut census = Census {
            r,
            n,
            total: 0,
            block: BTreeMap::new(),
            sep: BTreeMap::new(),
        };
        for p in all_permutations(r + n) {
            let stats = classify(&p, r);
            census.total += 1;
            *census
                .block
                .entry((
                    stats.u_pairs,
                    stats.m_fixed_tail,
                    stats.k_front,
                    stats.parity.bit(),
                ))
                .or_insert(0) += 1;
            if stats.separated {
                *census
                    .sep
                    .entry((stats.u_fixed_front, stats.m_fixed_tail, stats.parity.bit()))
                    .or_insert(0) += 1;
            }
        }
        Ok(census)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of permutations scanned, `(r + n)!`.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Count of the class selected by `spec`, which must share this census's
    /// `r` and `n`.
    pub fn count(&self, spec: &ClassSpec) -> Result<BigInt> {
        if spec.r != self.r || spec.n != self.n {
            return Err(Error::Domain(format!(
                "census is for r={} n={}, spec asks r={} n={}",
                self.r, self.n, spec.r, spec.n
            )));
        }
        let total: u64 = if spec.family.is_separated() {
            self.sep
                .iter()
                .filter(|((u, m, i), _)| {
                    *u == spec.u && *m == spec.m && spec.parity.is_none_or(|want| *i == want.bit())
                })
                .map(|(_, count)| count)
                .sum()
        } else {
            self.block
                .iter()
                .filter(|((u, m, k, i), _)| {
                    *u == spec.u
                        && *m == spec.m
                        && spec.k.is_none_or(|want| *k == want)
                        && spec.parity.is_none_or(|want| *i == want.bit())
                })
                .map(|(_, count)| count)
                .sum()
        };
        Ok(BigInt::from(total))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family, r: usize, u: usize, m: usize, n: usize) -> ClassSpec {
        ClassSpec::new(family, r, u, m, n, None, None).unwrap()
    }

    fn spec_k(family: Family, r: usize, u: usize, m: usize, n: usize, k: usize) -> ClassSpec {
        ClassSpec::new(family, r, u, m, n, Some(k), None).unwrap()
    }

    fn spec_i(family: Family, r: usize, u: usize, m: usize, n: usize, i: Parity) -> ClassSpec {
        ClassSpec::new(family, r, u, m, n, None, Some(i)).unwrap()
    }

    #[test]
    fn classify_examples() {
        let p = Permutation::parse("(1 2)").unwrap();
        let stats = classify(&p, 1);
        assert_eq!(
            stats,
            ClassStats {
                u_pairs: 0,
                u_fixed_front: 0,
                m_fixed_tail: 0,
                k_front: 1,
                separated: true,
                parity: Parity::Odd,
            }
        );

        let p = Permutation::parse("(1 3 2 4)").unwrap();
        let stats = classify(&p, 2);
        assert_eq!(stats.u_pairs, 0);
        assert_eq!(stats.u_fixed_front, 0);
        assert_eq!(stats.m_fixed_tail, 0);
        assert_eq!(stats.k_front, 1);
        assert!(!stats.separated);
        assert_eq!(stats.parity, Parity::Odd);

        for r in 0..=4 {
            let stats = classify(&Permutation::identity(r), r);
            assert_eq!(stats.u_pairs, r);
            assert_eq!(stats.u_fixed_front, r);
            assert_eq!(stats.k_front, r);
            assert!(stats.separated);
            assert_eq!(stats.parity, Parity::Even);
        }
    }

    #[test]
    fn brute_count_examples() {
        assert_eq!(
            brute_count(&spec(Family::Block, 2, 0, 0, 2)).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            brute_count(&spec(Family::Sep, 0, 0, 0, 3)).unwrap(),
            BigInt::from(2)
        );
        for r in 0..=4 {
            assert_eq!(
                brute_count(&spec(Family::Sep, r, r, 0, 0)).unwrap(),
                BigInt::from(1)
            );
        }
    }

    #[test]
    fn enumerate_class_examples() {
        let members: Vec<String> = enumerate_class(&spec(Family::Sep, 1, 0, 0, 1))
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(members, vec!["(1 2)"]);

        let members: Vec<String> = enumerate_class(&spec_k(Family::BlockK, 2, 0, 0, 2, 2))
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(members, vec!["(1 3)(2 4)", "(1 4)(2 3)"]);

        let members: Vec<Permutation> = enumerate_class(&spec(Family::Block, 0, 0, 1, 1))
            .unwrap()
            .collect();
        assert_eq!(members, vec![Permutation::identity(1)]);

        let block_members: Vec<String> = enumerate_class(&spec(Family::Block, 2, 0, 0, 2))
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(
            block_members,
            vec!["(1 3)(2 4)", "(1 3 2 4)", "(1 4 2 3)", "(1 4)(2 3)"]
        );
    }

    #[test]
    fn block_families_partition_the_symmetric_group() {
        for r in 0..=3 {
            for n in 0..=4 {
                let census = Census::build(r, n, DEFAULT_ENUMERATION_CAP).unwrap();
                let mut total = BigInt::from(0);
                for u in 0..=r {
                    for m in 0..=n {
                        total += census.count(&spec(Family::Block, r, u, m, n)).unwrap();
                    }
                }
                assert_eq!(total, factorial(r + n), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn refinements_are_consistent() {
        for r in 0..=3 {
            for n in 0..=4 {
                let census = Census::build(r, n, DEFAULT_ENUMERATION_CAP).unwrap();
                for u in 0..=r {
                    for m in 0..=n {
                        let block = census.count(&spec(Family::Block, r, u, m, n)).unwrap();
                        let by_k: BigInt = (0..=r)
                            .map(|k| {
                                census
                                    .count(&spec_k(Family::BlockK, r, u, m, n, k))
                                    .unwrap()
                            })
                            .sum();
                        let by_i: BigInt = Parity::BOTH
                            .iter()
                            .map(|&i| {
                                census
                                    .count(&spec_i(Family::BlockParity, r, u, m, n, i))
                                    .unwrap()
                            })
                            .sum();
                        assert_eq!(by_k, block);
                        assert_eq!(by_i, block);

                        let sep = census.count(&spec(Family::Sep, r, u, m, n)).unwrap();
                        let sep_by_i: BigInt = Parity::BOTH
                            .iter()
                            .map(|&i| {
                                census
                                    .count(&spec_i(Family::SepParity, r, u, m, n, i))
                                    .unwrap()
                            })
                            .sum();
                        assert_eq!(sep_by_i, sep);
                    }
                }
            }
        }
    }

    #[test]
    fn separated_members_have_matching_pair_counts() {
        // Separated permutations can only map front elements into the front
        // block via fixed points.
        for r in 0..=3 {
            for n in 0..=(6 - r) {
                for u in 0..=r {
                    for m in 0..=n {
                        for p in enumerate_class(&spec(Family::Sep, r, u, m, n)).unwrap() {
                            let stats = classify(&p, r);
                            assert_eq!(stats.u_pairs, u);
                            assert_eq!(stats.u_fixed_front, u);
                            assert_eq!(stats.k_front, r);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn low_front_cases_reduce_to_plain_derangements() {
        // Derangement numbers 1, 0, 1, 2, 9, 44, 265 for n = 0..=6.
        let derangements = [1u64, 0, 1, 2, 9, 44, 265];
        for (n, &expected) in derangements.iter().enumerate() {
            assert_eq!(
                brute_count(&spec(Family::Sep, 0, 0, 0, n)).unwrap(),
                BigInt::from(expected),
                "n={n}"
            );
        }
        // A single separated front element: counts shift by one.
        for n in 0..=5 {
            assert_eq!(
                brute_count(&spec(Family::Sep, 1, 0, 0, n)).unwrap(),
                BigInt::from(derangements[n + 1]),
                "n={n}"
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = brute_count(&spec(Family::Block, 6, 0, 0, 6)).unwrap_err();
        match err {
            Error::EnumerationCapExceeded {
                size,
                factorial,
                cap,
            } => {
                assert_eq!(size, 12);
                assert_eq!(factorial, "479001600");
                assert_eq!(cap, DEFAULT_ENUMERATION_CAP);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn spec_validation() {
        assert!(ClassSpec::new(Family::Sep, 2, 3, 0, 0, None, None).is_err());
        assert!(ClassSpec::new(Family::Block, 1, 0, 2, 1, None, None).is_err());
        assert!(ClassSpec::new(Family::BlockK, 2, 0, 0, 2, None, None).is_err());
        assert!(ClassSpec::new(Family::BlockK, 2, 0, 0, 2, Some(3), None).is_err());
        assert!(ClassSpec::new(Family::Block, 2, 0, 0, 2, Some(1), None).is_err());
        assert!(ClassSpec::new(Family::SepParity, 2, 0, 0, 2, None, None).is_err());
        assert!(ClassSpec::new(Family::Sep, 2, 0, 0, 2, None, Some(Parity::Even)).is_err());
    }
}
