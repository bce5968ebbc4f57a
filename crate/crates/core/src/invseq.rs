//! Inversion sequences and the adjacent-equal-nonzero statistic.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::perm::check_capacity;

/// `e_1 .. e_n` with `0 <= e_i <= i - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionSequence {
    entries: Vec<u32>,
}

impl InversionSequence {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if let Some((i, &e)) = entries.iter().enumerate().find(|&(i, &e)| e as usize > i) {
            return Err(Error::InvalidInput(format!(
                "entry {} at position {} exceeds {}",
                e,
                i + 1,
                i
            )));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of `j` with `e_j = e_{j+1} != 0`.
    pub fn adjacent_equal_nonzero(&self) -> usize {
        self.entries
            .iter()
            .tuple_windows()
            .filter(|(a, b)| a == b && **a != 0)
            .count()
    }
}

impl fmt::Display for InversionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.iter().join(","))
    }
}

impl FromStr for InversionSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(Vec::new());
        }
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad entry `{t}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

/// All inversion sequences of length `n`, in lexicographic order.
pub fn enumerate_inversion_sequences(n: usize) -> Result<impl Iterator<Item = InversionSequence>> {
    check_capacity(n)?;
    Ok((0..n)
        .map(|i| 0..=i as u32)
        .multi_cartesian_product()
        .map(|entries| InversionSequence { entries }))
}

/// `I[k]` = number of length-`n` sequences with statistic `k`, trailing zeros trimmed.
pub fn statistic_distribution(n: usize) -> Result<Vec<u64>> {
    let mut dist: Vec<u64> = Vec::new();
    for e in enumerate_inversion_sequences(n)? {
        let k = e.adjacent_equal_nonzero();
        if dist.len() <= k {
            dist.resize(k + 1, 0);
        }
        dist[k] += 1;
    }
    Ok(dist)
}

/// Brute-force `I_{n,k}`.
pub fn count_i(n: usize, k: usize) -> Result<u64> {
    Ok(statistic_distribution(n)?.get(k).copied().unwrap_or(0))
}

/// `I_{n,k} = (n-1)I_{n-1,k} + I_{n-1,k-1} + I_{n-2,k} - I_{n-2,k-1}` for
/// `n >= 4`, with `n <= 3` taken from enumeration.
pub fn recurrence_i(n: usize, k: usize) -> Result<u64> {
    if n <= 3 {
        return count_i(n, k);
    }
    let value = |nn: usize, kk: isize| -> Result<i128> {
        if kk < 0 {
            Ok(0)
        } else {
            recurrence_i(nn, kk as usize).map(i128::from)
        }
    };
    let k = k as isize;
    let v = (n as i128 - 1) * value(n - 1, k)? + value(n - 1, k - 1)? + value(n - 2, k)?
        - value(n - 2, k - 1)?;
    u64::try_from(v).map_err(|_| Error::Internal(format!("recurrence produced {v}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_listings() {
        let one: Vec<String> = enumerate_inversion_sequences(1).unwrap().map(|e| e.to_string()).collect();
        assert_eq!(one, vec!["0"]);
        let three: Vec<String> = enumerate_inversion_sequences(3).unwrap().map(|e| e.to_string()).collect();
        assert_eq!(three, vec!["0,0,0", "0,0,1", "0,0,2", "0,1,0", "0,1,1", "0,1,2"]);
        assert_eq!(enumerate_inversion_sequences(5).unwrap().count(), 120);
        assert_eq!(enumerate_inversion_sequences(0).unwrap().count(), 1);
    }

    #[test]
    fn statistic_examples() {
        let s = |t: &str| t.parse::<InversionSequence>().unwrap().adjacent_equal_nonzero();
        assert_eq!(s("0,0,0"), 0);
        assert_eq!(s("0,1,1"), 1);
        assert_eq!(s("0,1,1,1,0,0"), 2);
    }

    #[test]
    fn rejects_out_of_bounds() {
        assert!("0,2".parse::<InversionSequence>().is_err());
        assert!("1".parse::<InversionSequence>().is_err());
        assert!("0,x".parse::<InversionSequence>().is_err());
    }

    #[test]
    fn counts_and_recurrence() {
        assert_eq!(count_i(3, 1).unwrap(), 1);
        assert_eq!(count_i(3, 0).unwrap(), 5);
        assert_eq!(count_i(5, 0).unwrap(), 73);
        assert_eq!(recurrence_i(4, 0).unwrap(), 17);
        assert_eq!(recurrence_i(4, 1).unwrap(), 6);
        assert_eq!(recurrence_i(4, 2).unwrap(), 1);
    }
}
