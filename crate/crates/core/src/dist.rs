//! Joint occurrence distributions over `S_n`.
//!
//! A [`JointTable`] holds `T[k][ℓ]`, the number of permutations of length
//! `n` with exactly `k` occurrences of `q1` and `ℓ` occurrences of `q2`.
//! Dimensions are data-driven and kept canonical (no trailing zero rows or
//! columns), so two tables are equal exactly when they describe the same
//! distribution.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{count_occurrences, joint_counts, MeshPattern};
use crate::perm::{self, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Row sums: distribution of occurrences of `q1`.
    First,
    /// Column sums: distribution of occurrences of `q2`.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointTable {
    n: usize,
    counts: Vec<Vec<u64>>,
}

impl JointTable {
    /// The table with no permutations counted yet; identity for [`JointTable::merge`].
    pub fn empty(n: usize) -> Self {
        Self { n, counts: Vec::new() }
    }

    /// Builds a table from (possibly ragged) rows and canonicalizes it.
    pub fn from_rows(n: usize, rows: Vec<Vec<u64>>) -> Self {
        let mut t = Self { n, counts: rows };
        t.normalize();
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rows indexed by `k`, each of length `cols()`.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn row_count(&self) -> usize {
        self.counts.len()
    }

    pub fn col_count(&self) -> usize {
        self.counts.first().map_or(0, Vec::len)
    }

    /// `T[k][ℓ]`, zero outside the stored range.
    pub fn get(&self, k: usize, l: usize) -> u64 {
        self.counts
            .get(k)
            .and_then(|row| row.get(l))
            .copied()
            .unwrap_or(0)
    }

    /// Adds `amount` to cell `(k, ℓ)`, growing the table as needed.
    pub fn add(&mut self, k: usize, l: usize, amount: u64) {
        if amount == 0 {
            return;
        }
        let cols = self.col_count().max(l + 1);
        if self.counts.len() <= k {
            self.counts.resize(k + 1, Vec::new());
        }
        for row in &mut self.counts {
            row.resize(cols, 0);
        }
        let cell = &mut self.counts[k][l];
        *cell = cell
            .checked_add(amount)
            .expect("joint table cell overflowed u64");
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn nonzero_cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts.iter().enumerate().flat_map(|(k, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(move |(l, &v)| (k, l, v))
        })
    }

    /// `T[k][ℓ] = T[ℓ][k]` for all `k, ℓ`.
    pub fn is_jointly_symmetric(&self) -> bool {
        let side = self.row_count().max(self.col_count());
        (0..side).all(|k| (0..side).all(|l| self.get(k, l) == self.get(l, k)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::empty(self.n);
        for (k, l, v) in self.nonzero_cells() {
            t.add(l, k, v);
        }
        t
    }

    pub fn marginal(&self, axis: Axis) -> Vec<u64> {
        match axis {
            Axis::First => self.counts.iter().map(|row| row.iter().sum()).collect(),
            Axis::Second => (0..self.col_count())
                .map(|l| self.counts.iter().map(|row| row[l]).sum())
                .collect(),
        }
    }

    /// Elementwise sum of two partial tables for the same `n`.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::MismatchedN {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (k, l, v) in other.nonzero_cells() {
            out.add(k, l, v);
        }
        Ok(out)
    }

    pub fn to_polynomial(&self) -> BivarPoly {
        BivarPoly::from_coefficients(
            self.counts
                .iter()
                .map(|row| row.iter().map(|&v| v as i64).collect())
                .collect(),
        )
    }

    /// True when no permutation has both `k >= 1` and `ℓ >= 1`.
    pub fn never_both(&self) -> bool {
        self.nonzero_cells().all(|(k, l, _)| k == 0 || l == 0)
    }

    fn normalize(&mut self) {
        let cols = self
            .counts
            .iter()
            .map(|row| row.iter().rposition(|&v| v != 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0);
        for row in &mut self.counts {
            row.resize(cols, 0);
        }
        while self
            .counts
            .last()
            .is_some_and(|row| row.iter().all(|&v| v == 0))
        {
            self.counts.pop();
        }
        if self.counts.is_empty() || cols == 0 {
            self.counts.clear();
        }
    }
}

/// Bivariate polynomial with exact integer coefficients; `coeffs[i][j]` is the
/// coefficient of `x^i y^j`. Trailing zero rows and columns are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BivarPoly {
    coeffs: Vec<Vec<i64>>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coefficients(vec![vec![c]])
    }

    pub fn monomial(c: i64, x_deg: usize, y_deg: usize) -> Self {
        let mut coeffs = vec![vec![0; y_deg + 1]; x_deg + 1];
        coeffs[x_deg][y_deg] = c;
        Self::from_coefficients(coeffs)
    }

    pub fn from_coefficients(coeffs: Vec<Vec<i64>>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn coefficients(&self) -> &[Vec<i64>] {
        &self.coeffs
    }

    pub fn coeff(&self, x_deg: usize, y_deg: usize) -> i64 {
        self.coeffs
            .get(x_deg)
            .and_then(|row| row.get(y_deg))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn x_len(&self) -> usize {
        self.coeffs.len()
    }

    fn y_len(&self) -> usize {
        self.coeffs.first().map_or(0, Vec::len)
    }

    pub fn add(&self, other: &Self) -> Self {
        let xs = self.x_len().max(other.x_len());
        let ys = self.y_len().max(other.y_len());
        let coeffs = (0..xs)
            .map(|i| {
                (0..ys)
                    .map(|j| {
                        self.coeff(i, j)
                            .checked_add(other.coeff(i, j))
                            .expect("polynomial coefficient overflow")
                    })
                    .collect()
            })
            .collect();
        Self::from_coefficients(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::from_coefficients(
            self.coeffs
                .iter()
                .map(|row| row.iter().map(|&c| -c).collect())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let xs = self.x_len() + other.x_len() - 1;
        let ys = self.y_len() + other.y_len() - 1;
        let mut coeffs = vec![vec![0i64; ys]; xs];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (k, orow) in other.coeffs.iter().enumerate() {
                    for (l, &b) in orow.iter().enumerate() {
                        let term = a.checked_mul(b).expect("polynomial coefficient overflow");
                        coeffs[i + k][j + l] = coeffs[i + k][j + l]
                            .checked_add(term)
                            .expect("polynomial coefficient overflow");
                    }
                }
            }
        }
        Self::from_coefficients(coeffs)
    }

    /// Substitutes `y = 1`, leaving a polynomial in `x` as a coefficient list.
    pub fn at_y_one(&self) -> Vec<i64> {
        self.coeffs.iter().map(|row| row.iter().sum()).collect()
    }

    fn trim(&mut self) {
        let ys = self
            .coeffs
            .iter()
            .map(|row| row.iter().rposition(|&v| v != 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0);
        for row in &mut self.coeffs {
            row.resize(ys, 0);
        }
        while self
            .coeffs
            .last()
            .is_some_and(|row| row.iter().all(|&v| v == 0))
        {
            self.coeffs.pop();
        }
        if ys == 0 {
            self.coeffs.clear();
        }
    }
}

impl fmt::Display for BivarPoly {
    /// Terms in descending total degree, ties broken by descending `x` degree,
    /// e.g. `x^2 + y^2 + 6x + 6y + 10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(usize, usize, i64)> = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    terms.push((i, j, c));
                }
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0)));
        for (idx, &(i, j, c)) in terms.iter().enumerate() {
            let magnitude = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut mono = String::new();
            for (var, deg) in [("x", i), ("y", j)] {
                match deg {
                    0 => {}
                    1 => mono.push_str(var),
                    d => mono.push_str(&format!("{var}^{d}")),
                }
            }
            if mono.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude}{mono}")?;
            }
        }
        Ok(())
    }
}

fn tabulate<'a>(
    n: usize,
    perms: impl Iterator<Item = Permutation>,
    q1: &'a MeshPattern,
    q2: &'a MeshPattern,
) -> JointTable {
    let mut table = JointTable::empty(n);
    for pi in perms {
        let (k, l) = joint_counts(&pi, q1, q2);
        table.add(k as usize, l as usize, 1);
    }
    table
}

/// The joint distribution of `(q1, q2)` over `S_n`, enumerated in parallel
/// blocks keyed by the first entry and merged.
pub fn joint_distribution(n: usize, q1: &MeshPattern, q2: &MeshPattern) -> Result<JointTable> {
    perm::check_capacity(n)?;
    if n == 0 {
        return Ok(tabulate(0, perm::enumerate_sn(0)?, q1, q2));
    }
    let partials: Vec<JointTable> = (1..=n as u32)
        .into_par_iter()
        .map(|first| perm::enumerate_with_first(n, first).map(|it| tabulate(n, it, q1, q2)))
        .collect::<Result<_>>()?;
    partials
        .iter()
        .try_fold(JointTable::empty(n), |acc, part| acc.merge(part))
}

/// Single-threaded reference for [`joint_distribution`].
pub fn joint_distribution_sequential(
    n: usize,
    q1: &MeshPattern,
    q2: &MeshPattern,
) -> Result<JointTable> {
    Ok(tabulate(n, perm::enumerate_sn(n)?, q1, q2))
}

/// Splits the joint distribution by a classifier returning a part index in `0..parts`.
pub fn split_joint_distribution<F>(
    n: usize,
    q1: &MeshPattern,
    q2: &MeshPattern,
    parts: usize,
    classify: F,
) -> Result<Vec<JointTable>>
where
    F: Fn(&Permutation) -> usize,
{
    let mut tables = vec![JointTable::empty(n); parts];
    for pi in perm::enumerate_sn(n)? {
        let part = classify(&pi);
        if part >= parts {
            return Err(Error::Internal(format!(
                "classifier returned part {part} of {parts} for {pi}"
            )));
        }
        let (k, l) = joint_counts(&pi, q1, q2);
        tables[part].add(k as usize, l as usize, 1);
    }
    Ok(tables)
}

/// `dist[k]` = number of `π ∈ S_n` with exactly `k` occurrences of `q`.
pub fn distribution(n: usize, q: &MeshPattern) -> Result<Vec<u64>> {
    let mut out: Vec<u64> = Vec::new();
    for pi in perm::enumerate_sn(n)? {
        let k = count_occurrences(&pi, q) as usize;
        if out.len() <= k {
            out.resize(k + 1, 0);
        }
        out[k] += 1;
    }
    Ok(out)
}

/// `|S_n(q)|`.
pub fn avoider_count(n: usize, q: &MeshPattern) -> Result<u64> {
    Ok(perm::enumerate_sn(n)?
        .filter(|pi| count_occurrences(pi, q) == 0)
        .count() as u64)
}
