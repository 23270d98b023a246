//! Permutations of `{1..N}` with canonical cycle decomposition, parity, and
//! the statistics of the distinguished front block `{1..r}`.
//!
//! All external indexing is 1-based. The canonical cycle form starts every
//! cycle at its least element and lists cycles by increasing least element;
//! fixed points appear as 1-cycles.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Parity of a permutation: even permutations map to `Even` (bit 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of a count: even counts give `Even`.
    pub fn from_count(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// 0 for even, 1 for odd.
    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" | "even" => Ok(Parity::Even),
            "1" | "odd" => Ok(Parity::Odd),
            other => Err(Error::Parse {
                input: other.to_string(),
                reason: "expected 0, 1, even, or odd".to_string(),
            }),
        }
    }
}

/// A permutation of `{1..N}`, stored as the 0-based image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// `images[i]` is `sigma(i + 1) - 1`.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its 1-based one-line form, where
    /// `images[x - 1]` is the image of `x`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in images {
            if y == 0 || y > n {
                return Err(Error::ValueOutOfRange { size: n, value: y });
            }
            if seen[y - 1] {
                return Err(Error::DuplicateValue { size: n, value: y });
            }
            seen[y - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&y| y - 1).collect(),
        })
    }

    /// Builds a permutation of `{1..n}` from a product of cycles given as
    /// 1-based element lists. Elements not mentioned are fixed points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::ValueOutOfRange { size: n, value: x });
                }
                if seen[x - 1] {
                    return Err(Error::DuplicateValue { size: n, value: x });
                }
                seen[x - 1] = true;
                let y = cycle[(pos + 1) % cycle.len()];
                if y == 0 || y > n {
                    return Err(Error::ValueOutOfRange { size: n, value: y });
                }
                images[x - 1] = y - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Number of points the permutation acts on.
    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`. Panics if `x` is outside `1..=size`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// 1-based one-line form.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y + 1).collect()
    }

    /// Composition `self . other`: `x` maps to `self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&y| self.images[y]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Canonical cycle decomposition: each cycle starts at its least element,
    /// cycles are ordered by increasing least element, and fixed points are
    /// kept as 1-cycles.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.size();
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        CycleDecomposition { size: n, cycles }
    }

    /// Number of disjoint cycles, counting fixed points as 1-cycles.
    pub fn cycle_count(&self) -> usize {
        let n = self.size();
        let mut visited = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                x = self.images[x];
            }
        }
        count
    }

    /// Parity as `(size - cycle_count) mod 2`.
    pub fn parity(&self) -> Parity {
        Parity::from_count(self.size() - self.cycle_count())
    }

    /// Number of cycles containing at least one element of `{1..r}`.
    ///
    /// Panics if `r > size`.
    pub fn front_cycle_count(&self, r: usize) -> usize {
        assert!(r <= self.size(), "front block exceeds permutation size");
        let n = self.size();
        let mut visited = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            // Scanning in increasing order, `start` is the cycle minimum, and
            // the cycle meets {1..r} exactly when its minimum does.
            if start < r {
                count += 1;
            }
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                x = self.images[x];
            }
        }
        count
    }

    /// Fixed points in increasing order (1-based).
    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x == y)
            .map(|(x, _)| x + 1)
            .collect()
    }

    /// Parses either a one-line form `[2,1,4,3]` or a cycle form `(1 3)(2 4)`.
    /// In cycle form the size is the largest element mentioned and unmentioned
    /// elements are fixed; `()` and `[]` denote the empty permutation.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let parse_err = |reason: &str| Error::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        if let Some(inner) = trimmed
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
        {
            let mut images = Vec::new();
            for token in inner.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                let value: usize = token
                    .parse()
                    .map_err(|_| parse_err("one-line entries must be positive integers"))?;
                images.push(value);
            }
            return Permutation::from_one_line(&images);
        }
        if trimmed.is_empty() || !trimmed.starts_with('(') {
            return Err(parse_err("expected '[...]' or '(...)(...)'"));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut max = 0;
        let mut rest = trimmed;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| parse_err("expected '('"))?;
            let close = body
                .find(')')
                .ok_or_else(|| parse_err("unbalanced parentheses"))?;
            let mut cycle = Vec::new();
            for token in body[..close].split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                let value: usize = token
                    .parse()
                    .map_err(|_| parse_err("cycle entries must be positive integers"))?;
                max = max.max(value);
                cycle.push(value);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(max, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cycle_decomposition().fmt(f)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.one_line())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s)
    }
}

/// Canonical cycle decomposition of a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    size: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Number of points of the underlying permutation.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Rebuilds the permutation; inverse of `Permutation::cycle_decomposition`.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.size, &self.cycles)
            .expect("canonical decomposition is a valid cycle cover")
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (pos, x) in cycle.iter().enumerate() {
                if pos > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Advances `values` to the lexicographically next arrangement, returning
/// `false` when `values` was already the last one.
pub(crate) fn next_arrangement(values: &mut [usize]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(text: &str) -> Permutation {
        Permutation::parse(text).unwrap()
    }

    #[test]
    fn from_one_line_examples() {
        let p = Permutation::from_one_line(&[2, 1]).unwrap();
        assert_eq!(p.to_string(), "(1 2)");

        let empty = Permutation::from_one_line(&[]).unwrap();
        assert_eq!(empty.size(), 0);
        assert_eq!(empty.to_string(), "()");

        let p = Permutation::from_one_line(&[1, 3, 2, 4]).unwrap();
        assert_eq!(p.fixed_points(), vec![1, 4]);
        assert_eq!(p.to_string(), "(1)(2 3)(4)");
    }

    #[test]
    fn from_one_line_rejects_non_bijections() {
        assert_eq!(
            Permutation::from_one_line(&[1, 1]),
            Err(Error::DuplicateValue { size: 2, value: 1 })
        );
        assert_eq!(
            Permutation::from_one_line(&[3, 1]),
            Err(Error::ValueOutOfRange { size: 2, value: 3 })
        );
        assert_eq!(
            Permutation::from_one_line(&[0, 1]),
            Err(Error::ValueOutOfRange { size: 2, value: 0 })
        );
    }

    #[test]
    fn cycle_decomposition_examples() {
        assert_eq!(
            Permutation::from_one_line(&[2, 1, 4, 3])
                .unwrap()
                .to_string(),
            "(1 2)(3 4)"
        );
        assert_eq!(
            Permutation::from_one_line(&[2, 3, 1]).unwrap().to_string(),
            "(1 2 3)"
        );
        assert_eq!(
            Permutation::from_one_line(&[3, 4, 1, 2])
                .unwrap()
                .to_string(),
            "(1 3)(2 4)"
        );
    }

    #[test]
    fn decomposition_round_trips() {
        for text in ["(1 3 2 4)", "(1 2)(3 4)", "()", "(1)(2)(3)"] {
            let p = perm(text);
            assert_eq!(p.cycle_decomposition().to_permutation(), p);
            assert_eq!(p.to_string(), text);
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Permutation::identity(5).parity(), Parity::Even);
        assert_eq!(perm("(1 2)").parity(), Parity::Odd);
        assert_eq!(perm("(1 2 3)(4 5)").parity(), Parity::Odd);
    }

    #[test]
    fn compose_examples() {
        let swap = perm("(1 2)");
        assert!(swap.compose(&swap).unwrap().is_identity());

        let id = Permutation::identity(3);
        let p = perm("(1 2 3)");
        assert_eq!(id.compose(&p).unwrap(), p);

        let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        assert_eq!(a.compose(&b).unwrap().to_string(), "(1 2 3)");

        assert_eq!(
            perm("(1 2)").compose(&Permutation::identity(3)),
            Err(Error::SizeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn front_cycle_count_examples() {
        assert_eq!(perm("(1 3 2 4)").front_cycle_count(2), 1);
        assert_eq!(perm("(1 3)(2 4)").front_cycle_count(2), 2);
        assert_eq!(perm("(1 3)(2 4)").front_cycle_count(0), 0);
    }

    #[test]
    fn fixed_points_examples() {
        assert_eq!(Permutation::identity(3).fixed_points(), vec![1, 2, 3]);
        assert!(perm("(1 2)").fixed_points().is_empty());
        assert_eq!(
            Permutation::from_one_line(&[1, 3, 2, 4])
                .unwrap()
                .fixed_points(),
            vec![1, 4]
        );
    }

    #[test]
    fn parse_accepts_both_text_forms() {
        assert_eq!(perm("[2,1,4,3]"), perm("(1 2)(3 4)"));
        assert_eq!(perm("[3, 4, 1, 2]"), perm("(1 3)(2 4)"));
        assert_eq!(
            perm("(1 3)"),
            Permutation::from_one_line(&[3, 2, 1]).unwrap()
        );
        assert_eq!(perm("[]").size(), 0);
        assert_eq!(perm("()").size(), 0);
        assert!(Permutation::parse("nonsense").is_err());
        assert!(Permutation::parse("(1 2").is_err());
        assert!(Permutation::parse("(1 1)").is_err());
    }

    /// Independent parity oracle: count inversions of the one-line form.
    fn inversion_parity(p: &Permutation) -> Parity {
        let line = p.one_line();
        let mut inversions = 0;
        for i in 0..line.len() {
            for j in i + 1..line.len() {
                if line[i] > line[j] {
                    inversions += 1;
                }
            }
        }
        Parity::from_count(inversions)
    }

    #[test]
    fn parity_matches_inversion_count_exhaustively() {
        for n in 0..=7 {
            let mut line: Vec<usize> = (0..n).collect();
            loop {
                let p = Permutation {
                    images: line.clone(),
                };
                assert_eq!(
                    p.parity(),
                    inversion_parity(&p),
                    "one-line {:?}",
                    p.one_line()
                );
                if !next_arrangement(&mut line) {
                    break;
                }
            }
        }
    }

    fn permutation_strategy(max: usize) -> impl Strategy<Value = Permutation> {
        (0..=max)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(|images| Permutation { images })
    }

    proptest! {
        #[test]
        fn inverse_round_trip(p in permutation_strategy(8)) {
            let composed = p.compose(&p.inverse()).unwrap();
            prop_assert!(composed.is_identity());
            prop_assert_eq!(composed.parity(), Parity::Even);
        }

        #[test]
        fn parity_is_a_homomorphism(
            (p, q) in (0usize..=8).prop_flat_map(|n| {
                let make = move || Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
                (make(), make())
            })
        ) {
            let p = Permutation { images: p };
            let q = Permutation { images: q };
            let product = p.compose(&q).unwrap();
            prop_assert_eq!(
                product.parity(),
                Parity::from_count(p.parity().bit() + q.parity().bit())
            );
        }

        #[test]
        fn decomposition_round_trip(p in permutation_strategy(8)) {
            let decomposition = p.cycle_decomposition();
            let total: usize = decomposition.cycles().iter().map(|c| c.len()).sum();
            prop_assert_eq!(total, p.size());
            prop_assert_eq!(decomposition.to_permutation(), p.clone());
            let reparsed = Permutation::parse(&p.to_string()).unwrap();
            prop_assert_eq!(reparsed, p);
        }
    }
}
