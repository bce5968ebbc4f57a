//! Slow, direct reference implementations used to cross-check the library.
//! Nothing here calls the library's counting code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use meshperm::{JointTable, MeshPattern};

pub type Cells = BTreeMap<(usize, usize), u64>;

/// A pattern as plain data: the classical part and its shaded boxes.
#[derive(Clone, Debug)]
pub struct Plain {
    pub tau: Vec<u32>,
    pub shaded: HashSet<(usize, usize)>,
}

impl From<&MeshPattern> for Plain {
    fn from(q: &MeshPattern) -> Self {
        Plain {
            tau: q.tau().values().to_vec(),
            shaded: q.shading().iter().map(|c| (c.col, c.row)).collect(),
        }
    }
}

pub fn perms(n: usize) -> Vec<Vec<u32>> {
    (1..=n as u32).permutations(n).collect()
}

fn pattern_of(values: &[u32]) -> Vec<u32> {
    values
        .iter()
        .map(|&v| 1 + values.iter().filter(|&&w| w < v).count() as u32)
        .collect()
}

/// Occurrences counted straight from the definition: each chosen subsequence
/// must have the right relative order, and every other entry is placed into
/// its box and rejected if that box is shaded.
pub fn count(pi: &[u32], q: &Plain) -> u64 {
    let m = q.tau.len();
    let mut total = 0;
    for chosen in (0..pi.len()).combinations(m) {
        let values: Vec<u32> = chosen.iter().map(|&i| pi[i]).collect();
        if pattern_of(&values) != q.tau {
            continue;
        }
        let clear = (0..pi.len()).filter(|i| !chosen.contains(i)).all(|i| {
            let col = chosen.iter().filter(|&&j| j < i).count();
            let row = values.iter().filter(|&&v| v < pi[i]).count();
            !q.shaded.contains(&(col, row))
        });
        if clear {
            total += 1;
        }
    }
    total
}

pub fn table(n: usize, q1: &MeshPattern, q2: &MeshPattern) -> Cells {
    split(n, q1, q2, |_| 0).remove(&0).unwrap_or_default()
}

/// Tables keyed by the classifier's label.
pub fn split<F: Fn(&[u32]) -> usize>(
    n: usize,
    q1: &MeshPattern,
    q2: &MeshPattern,
    label: F,
) -> BTreeMap<usize, Cells> {
    let (a, b) = (Plain::from(q1), Plain::from(q2));
    let mut out: BTreeMap<usize, Cells> = BTreeMap::new();
    for pi in perms(n) {
        let key = (count(&pi, &a) as usize, count(&pi, &b) as usize);
        *out.entry(label(&pi)).or_default().entry(key).or_default() += 1;
    }
    out
}

pub fn cells(t: &JointTable) -> Cells {
    t.nonzero_cells().map(|(k, l, v)| ((k, l), v)).collect()
}

/// Unsigned Stirling numbers of the first kind.
pub fn stirling(n: usize, k: usize) -> u64 {
    let mut row = vec![1u64];
    for i in 0..n {
        let mut next = vec![0u64; row.len() + 1];
        for (j, &v) in row.iter().enumerate() {
            next[j + 1] += v;
            next[j] += i as u64 * v;
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Counts of inversion sequences of length `n` by the number of positions
/// `i` with `e_i = e_{i+1} > 0`.
pub fn inversion_statistic(n: usize) -> Vec<u64> {
    let mut dist = vec![0u64; n.max(1)];
    let mut e = vec![0u32; n];
    loop {
        let k = e.windows(2).filter(|w| w[0] == w[1] && w[0] > 0).count();
        dist[k] += 1;
        let mut i = n;
        loop {
            if i == 0 {
                while dist.len() > 1 && dist.last() == Some(&0) {
                    dist.pop();
                }
                return dist;
            }
            i -= 1;
            if e[i] < i as u32 {
                e[i] += 1;
                break;
            }
            e[i] = 0;
        }
    }
}
