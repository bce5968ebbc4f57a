//! Permutations of `1..=n` and the basic operations on them.
//!
//! Positions and values are 1-based everywhere in this crate. A
//! [`Permutation`] stores its one-line notation `π_1 π_2 ... π_n`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest `n` whose factorial fits the `u64` counters used for tables.
pub const MAX_SUPPORTED_N: usize = 20;

/// Default ceiling on brute-force enumeration.
pub const DEFAULT_CAPACITY: usize = 10;

/// Environment variable that overrides [`DEFAULT_CAPACITY`].
pub const CAPACITY_ENV: &str = "MESHPERM_NMAX";

/// The enumeration ceiling: `MESHPERM_NMAX` if set, otherwise
/// [`DEFAULT_CAPACITY`]. A ceiling wider than the counter width is refused.
pub fn capacity() -> Result<usize> {
    match std::env::var(CAPACITY_ENV) {
        Ok(raw) => {
            let limit: usize = raw.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("{CAPACITY_ENV}={raw:?} is not an integer"))
            })?;
            if limit > MAX_SUPPORTED_N {
                return Err(Error::Capacity {
                    n: limit,
                    limit: MAX_SUPPORTED_N,
                });
            }
            Ok(limit)
        }
        Err(_) => Ok(DEFAULT_CAPACITY),
    }
}

pub(crate) fn check_capacity(n: usize) -> Result<()> {
    let limit = capacity()?;
    if n > limit {
        Err(Error::Capacity { n, limit })
    } else {
        Ok(())
    }
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validates that `values` is a rearrangement of `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let idx = v as usize;
            if idx == 0 || idx > n || seen[idx - 1] {
                return Err(Error::InvalidInput(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[idx - 1] = true;
        }
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    /// `π_i` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// `π^c`: entry `i` becomes `n + 1 - π_i`.
    pub fn complement(&self) -> Self {
        let top = self.len() as u32 + 1;
        Self {
            values: self.values.iter().map(|&v| top - v).collect(),
        }
    }

    /// `π^r`: the one-line notation read right to left.
    pub fn reverse(&self) -> Self {
        Self {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    /// The group-theoretic inverse: entry `v` of the result is the position of `v` in `self`.
    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.len()];
        for (pos, &v) in self.values.iter().enumerate() {
            out[v as usize - 1] = pos as u32 + 1;
        }
        Self { values: out }
    }

    /// Composition as value lookup: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidInput(format!(
                "cannot compose permutations of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Self {
            values: other.values.iter().map(|&i| self.at(i as usize)).collect(),
        })
    }

    /// Swaps the entries at 1-based positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut values = self.values.clone();
        values.swap(i - 1, j - 1);
        Self { values }
    }

    /// Positions (1-based, ascending) of the left-to-right minima.
    pub fn left_to_right_minima(&self) -> Vec<usize> {
        let mut current = u32::MAX;
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| {
                if v < current {
                    current = v;
                    Some(i + 1)
                } else {
                    None
                }
            })
            .collect()
    }
}

/// The unique permutation order-isomorphic to `seq`.
pub fn standardize<T: Ord>(seq: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by(|&a, &b| seq[a].cmp(&seq[b]));
    if order.windows(2).any(|w| seq[w[0]] == seq[w[1]]) {
        return Err(Error::InvalidInput(
            "cannot standardize a sequence with repeated entries".into(),
        ));
    }
    let mut values = vec![0u32; seq.len()];
    for (rank, &idx) in order.iter().enumerate() {
        values[idx] = rank as u32 + 1;
    }
    Ok(Permutation { values })
}

/// All of `S_n` in lexicographic order.
pub fn enumerate_sn(n: usize) -> Result<impl Iterator<Item = Permutation>> {
    check_capacity(n)?;
    Ok(lex_permutations(n))
}

/// The permutations of `S_n` whose first entry is `first`, in lexicographic order.
/// These blocks partition `S_n` for `first = 1..=n`.
pub fn enumerate_with_first(n: usize, first: u32) -> Result<impl Iterator<Item = Permutation>> {
    check_capacity(n)?;
    if first == 0 || first as usize > n {
        return Err(Error::InvalidInput(format!(
            "first entry {first} out of range for n = {n}"
        )));
    }
    let rest: Vec<u32> = (1..=n as u32).filter(|&v| v != first).collect();
    let k = rest.len();
    Ok(rest.into_iter().permutations(k).map(move |tail| {
        let mut values = Vec::with_capacity(n);
        values.push(first);
        values.extend(tail);
        Permutation { values }
    }))
}

fn lex_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n as u32)
        .permutations(n)
        .map(|values| Permutation { values })
}

impl fmt::Display for Permutation {
    /// Digit runs for `n <= 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.values.iter().join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let values: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad permutation entry {tok:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad permutation digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn enumerate_small() {
        let all: Vec<_> = enumerate_sn(0).unwrap().collect();
        assert_eq!(all, vec![Permutation::default()]);

        let s3: Vec<String> = enumerate_sn(3).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(s3, ["123", "132", "213", "231", "312", "321"]);

        assert_eq!(enumerate_sn(5).unwrap().count(), factorial(5));
    }

    #[test]
    fn enumeration_is_lexicographic_and_distinct() {
        for n in 0..=6 {
            let all: Vec<_> = enumerate_sn(n).unwrap().collect();
            assert_eq!(all.len(), factorial(n));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn first_entry_blocks_partition_sn() {
        let n = 5;
        let mut joined = Vec::new();
        for first in 1..=n as u32 {
            joined.extend(enumerate_with_first(n, first).unwrap());
        }
        let direct: Vec<_> = enumerate_sn(n).unwrap().collect();
        assert_eq!(joined, direct);
    }

    #[test]
    fn capacity_error_names_limit() {
        let err = enumerate_sn(DEFAULT_CAPACITY + 5).err().unwrap();
        assert!(err.to_string().contains(&DEFAULT_CAPACITY.to_string()));
    }

    #[test]
    fn symmetry_operations() {
        assert_eq!(p("123").complement(), p("321"));
        assert_eq!(p("23154").complement(), p("43512"));
        assert_eq!(Permutation::default().complement(), Permutation::default());

        assert_eq!(p("123").reverse(), p("321"));
        assert_eq!(p("23154").reverse(), p("45132"));
        assert_eq!(p("1").reverse(), p("1"));

        assert_eq!(p("123").inverse(), p("123"));
        assert_eq!(p("231").inverse(), p("312"));
        assert_eq!(p("321").inverse(), p("321"));
        assert_eq!(p("231").compose(&p("312")).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn operations_are_involutions() {
        for n in 0..=7 {
            for pi in enumerate_sn(n).unwrap() {
                assert_eq!(pi.complement().complement(), pi);
                assert_eq!(pi.reverse().reverse(), pi);
                assert_eq!(pi.inverse().inverse(), pi);
                assert_eq!(pi.inverse().compose(&pi).unwrap(), Permutation::identity(n));
            }
        }
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[2, 3, 5]).unwrap(), p("123"));
        assert_eq!(standardize(&[1, 4, 3]).unwrap(), p("132"));
        assert_eq!(standardize(&[7]).unwrap(), p("1"));
        assert!(standardize(&[3, 1, 3]).is_err());
    }

    #[test]
    fn left_to_right_minima_examples() {
        assert_eq!(p("45123").left_to_right_minima(), vec![1, 3]);
        assert_eq!(p("12345").left_to_right_minima(), vec![1]);
        assert_eq!(p("54321").left_to_right_minima(), vec![1, 2, 3, 4, 5]);
        assert!(Permutation::default().left_to_right_minima().is_empty());
    }

    #[test]
    fn text_encoding() {
        assert_eq!(p("23154").to_string(), "23154");
        let long = Permutation::new(vec![10, 2, 1, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(long.to_string(), "10,2,1,3,4,5,6,7,8,9");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("1224".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_seq() -> impl Strategy<Value = Vec<i64>> {
            proptest::collection::hash_set(-50i64..50, 0..9).prop_map(|s| s.into_iter().collect())
        }

        proptest! {
            #[test]
            fn standardize_is_idempotent(seq in arb_seq()) {
                let once = standardize(&seq).unwrap();
                let twice = standardize(once.values()).unwrap();
                prop_assert_eq!(once, twice);
            }

            #[test]
            fn text_round_trip(seq in arb_seq()) {
                let pi = standardize(&seq).unwrap();
                prop_assert_eq!(pi.to_string().parse::<Permutation>().unwrap(), pi);
            }
        }
    }
}
