//! The cycle-splitting map on permutations with a distinguished front block
//! `{1..r}`, its gluing inverse, and exact fiber enumeration.
//!
//! Splitting cuts every cycle that contains more than one front element into
//! one cycle per front element, so the image always has all front elements
//! pairwise separated. A separated permutation is recovered by gluing its
//! front cycles back together along a grouping: an ordered set partition of
//! the front cycles in which the cycle with the least front element leads its
//! block. Distinct groupings glue to distinct preimages, and the number of
//! preimages whose front cycle count satisfies a given condition depends only
//! on `r` and the condition, not on the separated permutation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::cycle_types;
use crate::error::{Error, Result};
use crate::permutation::{next_arrangement, Parity, Permutation};

/// Largest front block for which fibers are materialized as lists
/// (7! = 5040 permutations); larger fronts must use `fiber_size_formula`.
pub const MAX_MATERIALIZED_FIBER_FRONT: usize = 7;

/// A condition on the number of front cycles of a preimage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitCondition {
    /// Any number of front cycles.
    Any,
    /// Exactly this many front cycles.
    CycleCount(usize),
    /// Front cycle count of this parity.
    CycleParity(Parity),
    /// Both a fixed count and a parity.
    CycleCountAndParity(usize, Parity),
    /// Front cycle count congruent to `remainder` modulo `modulus`.
    Residue { remainder: usize, modulus: usize },
}

impl SplitCondition {
    pub fn accepts(&self, count: usize) -> bool {
        match *self {
            SplitCondition::Any => true,
            SplitCondition::CycleCount(k) => count == k,
            SplitCondition::CycleParity(parity) => Parity::from_count(count) == parity,
            SplitCondition::CycleCountAndParity(k, parity) => {
                count == k && Parity::from_count(count) == parity
            }
            SplitCondition::Residue { remainder, modulus } => count % modulus == remainder,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let SplitCondition::Residue { remainder, modulus } = *self {
            if modulus == 0 {
                return Err(Error::Domain(
                    "residue condition with modulus 0".to_string(),
                ));
            }
            if remainder >= modulus {
                return Err(Error::Domain(format!(
                    "residue {remainder} is not below modulus {modulus}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for SplitCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SplitCondition::Any => write!(f, "any"),
            SplitCondition::CycleCount(k) => write!(f, "k={k}"),
            SplitCondition::CycleParity(parity) => write!(f, "parity={}", parity.bit()),
            SplitCondition::CycleCountAndParity(k, parity) => {
                write!(f, "k={k},parity={}", parity.bit())
            }
            SplitCondition::Residue { remainder, modulus } => {
                write!(f, "mod={remainder}/{modulus}")
            }
        }
    }
}

impl FromStr for SplitCondition {
    type Err = Error;

    /// Accepts `any`, `k=K`, `parity=P`, `k=K,parity=P`, and `mod=C/D`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let text = s.trim();
        if text == "any" {
            return Ok(SplitCondition::Any);
        }
        if let Some(body) = text.strip_prefix("mod=") {
            let (c, d) = body
                .split_once('/')
                .ok_or_else(|| parse_err("expected mod=C/D"))?;
            let condition = SplitCondition::Residue {
                remainder: c.parse().map_err(|_| parse_err("bad residue"))?,
                modulus: d.parse().map_err(|_| parse_err("bad modulus"))?,
            };
            condition.validate()?;
            return Ok(condition);
        }
        let mut count = None;
        let mut parity = None;
        for part in text.split(',') {
            if let Some(value) = part.strip_prefix("k=") {
                count = Some(value.parse().map_err(|_| parse_err("bad cycle count"))?);
            } else if let Some(value) = part.strip_prefix("parity=") {
                parity = Some(value.parse::<Parity>()?);
            } else {
                return Err(parse_err(
                    "expected any, k=K, parity=P, k=K,parity=P, or mod=C/D",
                ));
            }
        }
        match (count, parity) {
            (Some(k), Some(p)) => Ok(SplitCondition::CycleCountAndParity(k, p)),
            (Some(k), None) => Ok(SplitCondition::CycleCount(k)),
            (None, Some(p)) => Ok(SplitCondition::CycleParity(p)),
            (None, None) => Err(parse_err("empty condition")),
        }
    }
}

/// Splits every cycle of `p` containing more than one element of `{1..r}`
/// into one cycle per front element. Each piece starts at a front element and
/// carries the tail elements that followed it in the original cycle. The
/// result has all front elements pairwise separated; permutations already
/// separated are returned unchanged.
pub fn split(p: &Permutation, r: usize) -> Permutation {
    let decomposition = p.cycle_decomposition();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for cycle in decomposition.cycles() {
        let front_positions: Vec<usize> = cycle
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x <= r)
            .map(|(position, _)| position)
            .collect();
        if front_positions.len() <= 1 {
            cycles.push(cycle.clone());
            continue;
        }
        // The cycle starts at its least element, which is a front element,
        // so the first cut position is 0 and the pieces cover the cycle.
        for (index, &start) in front_positions.iter().enumerate() {
            let end = front_positions
                .get(index + 1)
                .copied()
                .unwrap_or(cycle.len());
            cycles.push(cycle[start..end].to_vec());
        }
    }
    Permutation::from_cycles(p.size(), &cycles).expect("splitting preserves the cycle cover")
}

/// Checks that every two front elements of `p` lie in disjoint cycles.
pub fn ensure_separated(p: &Permutation, r: usize) -> Result<()> {
    for cycle in p.cycle_decomposition().cycles() {
        let mut front = cycle.iter().filter(|&&x| x <= r);
        if let (Some(&a), Some(&b)) = (front.next(), front.next()) {
            return Err(Error::NotSeparated { front: r, a, b });
        }
    }
    Ok(())
}

/// An ordered set partition of the front cycles of a separated permutation,
/// with cycles identified by their front element. Within each block the least
/// element leads; blocks are listed by increasing leading element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grouping {
    blocks: Vec<Vec<usize>>,
}

impl Grouping {
    pub fn new(r: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; r];
        for block in &blocks {
            let &leader = block
                .first()
                .ok_or_else(|| Error::InvalidGrouping("empty block".to_string()))?;
            for &element in block {
                if element == 0 || element > r {
                    return Err(Error::InvalidGrouping(format!(
                        "element {element} is outside 1..={r}"
                    )));
                }
                if seen[element - 1] {
                    return Err(Error::InvalidGrouping(format!(
                        "element {element} appears twice"
                    )));
                }
                seen[element - 1] = true;
                if element < leader {
                    return Err(Error::InvalidGrouping(format!(
                        "block led by {leader} contains the smaller element {element}"
                    )));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&tagged| !tagged) {
            return Err(Error::InvalidGrouping(format!(
                "element {} is not covered",
                missing + 1
            )));
        }
        for pair in blocks.windows(2) {
            if pair[0][0] >= pair[1][0] {
                return Err(Error::InvalidGrouping(
                    "blocks are not sorted by leading element".to_string(),
                ));
            }
        }
        Ok(Grouping { blocks })
    }

    /// The grouping whose blocks are all singletons; gluing along it is the
    /// identity.
    pub fn singletons(r: usize) -> Self {
        Grouping {
            blocks: (1..=r).map(|x| vec![x]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

impl fmt::Display for Grouping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "{{}}");
        }
        for block in &self.blocks {
            write!(f, "{{")?;
            for (position, x) in block.iter().enumerate() {
                if position > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// All groupings of `r` front cycles, deterministically ordered: set
/// partitions are generated by inserting elements `1..=r` in increasing order
/// into existing or new blocks, and for each partition the non-leading
/// elements of every block run through their arrangements lexicographically,
/// with later blocks advancing fastest. There are exactly `r!` groupings.
pub fn enumerate_groupings(r: usize) -> Vec<Grouping> {
    let mut partitions = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    collect_partitions(1, r, &mut blocks, &mut partitions);

    let mut groupings = Vec::new();
    for partition in partitions {
        // Per-block orderings: the leader stays first, the rest is permuted.
        let mut orderings: Vec<Vec<Vec<usize>>> = Vec::new();
        for block in &partition {
            let mut rest = block[1..].to_vec();
            let mut block_orderings = Vec::new();
            loop {
                let mut ordered = vec![block[0]];
                ordered.extend_from_slice(&rest);
                block_orderings.push(ordered);
                if !next_arrangement(&mut rest) {
                    break;
                }
            }
            orderings.push(block_orderings);
        }
        let mut indices = vec![0usize; orderings.len()];
        'odometer: loop {
            let blocks: Vec<Vec<usize>> = indices
                .iter()
                .zip(&orderings)
                .map(|(&index, choices)| choices[index].clone())
                .collect();
            groupings.push(Grouping { blocks });
            let mut position = indices.len();
            loop {
                if position == 0 {
                    break 'odometer;
                }
                position -= 1;
                indices[position] += 1;
                if indices[position] < orderings[position].len() {
                    break;
                }
                indices[position] = 0;
            }
        }
    }
    groupings
}

fn collect_partitions(
    element: usize,
    r: usize,
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if element > r {
        out.push(blocks.clone());
        return;
    }
    for index in 0..blocks.len() {
        blocks[index].push(element);
        collect_partitions(element + 1, r, blocks, out);
        blocks[index].pop();
    }
    blocks.push(vec![element]);
    collect_partitions(element + 1, r, blocks, out);
    blocks.pop();
}

/// Glues the front cycles of a separated permutation along a grouping: the
/// cycles of each block are concatenated in block order into a single cycle.
/// Splitting the result recovers `p`.
pub fn glue(p: &Permutation, r: usize, grouping: &Grouping) -> Result<Permutation> {
    ensure_separated(p, r)?;
    let covered: usize = grouping.blocks.iter().map(|block| block.len()).sum();
    if covered != r {
        return Err(Error::InvalidGrouping(format!(
            "grouping covers {covered} front cycles, permutation has {r}"
        )));
    }
    let decomposition = p.cycle_decomposition();
    let mut front_cycle: Vec<Option<&Vec<usize>>> = vec![None; r];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for cycle in decomposition.cycles() {
        if cycle[0] <= r {
            // A separated front cycle contains exactly one front element,
            // and it is the least, so it identifies the cycle.
            front_cycle[cycle[0] - 1] = Some(cycle);
        } else {
            cycles.push(cycle.clone());
        }
    }
    for block in &grouping.blocks {
        let mut glued = Vec::new();
        for &element in block {
            glued.extend_from_slice(front_cycle[element - 1].expect("front cycles cover 1..=r"));
        }
        cycles.push(glued);
    }
    Permutation::from_cycles(p.size(), &cycles)
}

/// All preimages of the separated permutation `p` under splitting whose
/// front cycle count satisfies `condition`. `r` is capped by
/// [`MAX_MATERIALIZED_FIBER_FRONT`].
pub fn fiber(p: &Permutation, r: usize, condition: &SplitCondition) -> Result<Vec<Permutation>> {
    condition.validate()?;
    if r > MAX_MATERIALIZED_FIBER_FRONT {
        return Err(Error::Domain(format!(
            "fiber materialization is limited to front blocks of at most \
             {MAX_MATERIALIZED_FIBER_FRONT} (asked for {r}); use fiber_size_formula"
        )));
    }
    ensure_separated(p, r)?;
    let mut members = Vec::new();
    for grouping in enumerate_groupings(r) {
        if condition.accepts(grouping.block_count()) {
            members.push(glue(p, r, &grouping)?);
        }
    }
    Ok(members)
}

/// The size of any splitting fiber over a separated permutation with front
/// block `r`, restricted to preimages whose front cycle count satisfies
/// `condition`: `r!` times the filtered cycle-type weight sum.
pub fn fiber_size_formula(r: usize, condition: &SplitCondition) -> Result<BigInt> {
    cycle_types::weighted_count(r, condition)
}
