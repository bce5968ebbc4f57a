//! Recurrences and closed forms for the joint tables, built without
//! enumerating permutations so they can be checked against brute force.
//!
//! All arithmetic is exact. Products that would overflow `u64` panic rather
//! than wrap; every value computed here is bounded by `n!` for `n` within
//! [`MAX_SUPPORTED_N`](crate::perm::MAX_SUPPORTED_N).

use crate::dist::{Axis, BivarPoly, JointTable};
use crate::error::{Error, Result};
use crate::perm::MAX_SUPPORTED_N;

fn mul(a: u64, b: u64) -> u64 {
    a.checked_mul(b).expect("closed form overflowed u64")
}

fn add(a: u64, b: u64) -> u64 {
    a.checked_add(b).expect("closed form overflowed u64")
}

fn require(condition: bool, message: impl FnOnce() -> String) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::Domain(message()))
    }
}

fn require_supported(n: usize) -> Result<()> {
    require(n <= MAX_SUPPORTED_N, || {
        format!("n = {n} exceeds the supported maximum {MAX_SUPPORTED_N}")
    })
}

/// Unsigned Stirling numbers of the first kind, `c(n,k)` for `0 <= k <= n <= max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<u64>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Result<Self> {
        require_supported(max_n)?;
        let mut rows: Vec<Vec<u64>> = vec![vec![1]];
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let at = |k: usize| prev.get(k).copied().unwrap_or(0);
            let row = (0..=n)
                .map(|k| {
                    let carried = if k == 0 { 0 } else { at(k - 1) };
                    add(mul((n - 1) as u64, at(k)), carried)
                })
                .collect();
            rows.push(row);
        }
        Ok(Self { rows })
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `c(n,k)`; zero for `k > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: usize) -> u64 {
        self.rows[n].get(k).copied().unwrap_or(0)
    }

    pub fn row(&self, n: usize) -> &[u64] {
        &self.rows[n]
    }
}

pub fn stirling_first(n: usize, k: usize) -> Result<u64> {
    Ok(StirlingTable::new(n)?.get(n, k))
}

/// `C(n,k)`, zero for `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| {
        let wide = acc as u128 * (n - i) as u128 / (i + 1) as u128;
        u64::try_from(wide).expect("binomial overflowed u64")
    })
}

pub fn factorial(n: usize) -> Result<u64> {
    require_supported(n)?;
    Ok((1..=n as u64).product())
}

/// Number of `n`-permutations with `k` occurrences of the length-two pattern
/// `12|0,0;1,0;2,0;2,1`, namely `c(n,k+1)`. Uses the convention that the
/// empty permutation has zero occurrences.
pub fn tilde_t(n: usize, k: usize) -> Result<u64> {
    if n == 0 {
        return Ok(u64::from(k == 0));
    }
    Ok(StirlingTable::new(n)?.get(n, k + 1))
}

/// `a_n = n! (1 + H_n)`, computed as `n! + sum n!/i`.
pub fn harmonic_a(n: usize) -> Result<u64> {
    let f = factorial(n)?;
    Ok((1..=n as u64).fold(f, |acc, i| add(acc, f / i)))
}

/// Closed-form joint table of the A17 family.
///
/// `T[k][ℓ] = C(k+ℓ+2, k+1) c(n-1, k+ℓ+2)` for `k, ℓ >= 1`,
/// `T[k][0] = (k+2) c(n-1, k+2) + c(n-1, k+1)` for `k >= 1` (and its mirror),
/// `T[0][0] = 2 (c(n-1,2) + c(n-1,1))`.
pub fn stirling_closed_form_table(n: usize) -> Result<JointTable> {
    require(n >= 2, || format!("closed form needs n >= 2, got {n}"))?;
    let c = StirlingTable::new(n - 1)?;
    let m = n - 1;
    let mut table = JointTable::empty(n);
    for k in 0..=n {
        for l in 0..=n {
            let value = match (k, l) {
                (0, 0) => mul(2, add(c.get(m, 2), c.get(m, 1))),
                (k, 0) | (0, k) => add(mul((k + 2) as u64, c.get(m, k + 2)), c.get(m, k + 1)),
                (k, l) => mul(binomial(k + l + 2, k + 1), c.get(m, k + l + 2)),
            };
            table.add(k, l, value);
        }
    }
    Ok(table)
}

/// `T_{n,k,ℓ} = sum_i C(n-1,i) T~_{i,k} T~_{n-1-i,ℓ}`.
pub fn stirling_convolution(n: usize, k: usize, l: usize) -> Result<u64> {
    require(n >= 1, || "convolution needs n >= 1".to_string())?;
    let mut total = 0u64;
    for i in 0..n {
        let term = mul(mul(binomial(n - 1, i), tilde_t(i, k)?), tilde_t(n - 1 - i, l)?);
        total = add(total, term);
    }
    Ok(total)
}

/// The convolution evaluated over every cell that can be nonzero.
pub fn stirling_convolution_table(n: usize) -> Result<JointTable> {
    let mut table = JointTable::empty(n);
    for k in 0..n {
        for l in 0..n {
            table.add(k, l, stirling_convolution(n, k, l)?);
        }
    }
    Ok(table)
}

/// A joint table split into parts by a property of the permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitTable {
    pub n: usize,
    pub parts: Vec<JointTable>,
}

impl SplitTable {
    pub fn total(&self) -> JointTable {
        self.parts
            .iter()
            .try_fold(JointTable::empty(self.n), |acc, p| acc.merge(p))
            .expect("parts share n")
    }
}

fn cells(rows: &[&[(usize, usize, u64)]], n: usize) -> Vec<JointTable> {
    rows.iter()
        .map(|cells| {
            let mut t = JointTable::empty(n);
            for &(k, l, v) in *cells {
                t.add(k, l, v);
            }
            t
        })
        .collect()
}

fn shifted(t: &JointTable, k: usize, l: usize, dk: usize, dl: usize) -> u64 {
    if k < dk || l < dl {
        0
    } else {
        t.get(k - dk, l - dl)
    }
}

fn bounds(parts: &[JointTable]) -> (usize, usize) {
    let rows = parts.iter().map(JointTable::row_count).max().unwrap_or(0);
    let cols = parts.iter().map(JointTable::col_count).max().unwrap_or(0);
    (rows + 1, cols + 1)
}

/// Split of the S19 table by the first two entries: part 0 has `π1 > π2`,
/// part 1 has `π1 < π2`.
pub fn first_descent_split(n: usize) -> Result<SplitTable> {
    require(n >= 2, || format!("split needs n >= 2, got {n}"))?;
    require_supported(n)?;
    let mut parts = cells(&[&[(0, 0, 1)], &[(0, 0, 1)]], 2);
    for m in 3..=n {
        parts = first_descent_step(m, &parts);
    }
    Ok(SplitTable { n, parts })
}

/// One step of the S19 split recurrence, from `n - 1` to `n`.
pub fn first_descent_step(n: usize, prev: &[JointTable]) -> Vec<JointTable> {
    let (t1, t2) = (&prev[0], &prev[1]);
    let (rows, cols) = bounds(prev);
    let w = (n - 2) as u64;
    let mut next = vec![JointTable::empty(n), JointTable::empty(n)];
    for k in 0..rows {
        for l in 0..cols {
            let a = add(add(mul(w, t1.get(k, l)), shifted(t1, k, l, 0, 1)), t2.get(k, l));
            let b = add(add(t1.get(k, l), mul(w, t2.get(k, l))), shifted(t2, k, l, 1, 0));
            next[0].add(k, l, a);
            next[1].add(k, l, b);
        }
    }
    next
}

/// The A25 split at `n = 3`, frozen from exhaustive enumeration: part 0 has
/// `π1 = 3`, part 1 has `π3 = 3`, part 2 has `3` in the middle.
pub const MAX_POSITION_SEED: [&[(usize, usize, u64)]; 3] =
    [&[(0, 0, 1), (0, 1, 1)], &[(0, 0, 1), (1, 0, 1)], &[(0, 0, 2)]];

/// Split of the A25 table by the position of `n`: first, last, or interior.
pub fn max_position_split(n: usize) -> Result<SplitTable> {
    require(n >= 3, || format!("split needs n >= 3, got {n}"))?;
    require_supported(n)?;
    let mut parts = cells(&MAX_POSITION_SEED, 3);
    for m in 4..=n {
        parts = max_position_step(m, &parts);
    }
    Ok(SplitTable { n, parts })
}

/// One step of the A25 split recurrence, from `n - 1` to `n`.
pub fn max_position_step(n: usize, prev: &[JointTable]) -> Vec<JointTable> {
    let (t1, t2, t3) = (&prev[0], &prev[1], &prev[2]);
    let whole = prev
        .iter()
        .try_fold(JointTable::empty(n - 1), |acc, p| acc.merge(p))
        .expect("parts share n");
    let (rows, cols) = bounds(prev);
    let w = (n - 2) as u64;
    let mut next = vec![JointTable::empty(n), JointTable::empty(n), JointTable::empty(n)];
    for k in 0..rows {
        for l in 0..cols {
            let a = add(
                add(shifted(t1, k, l, 0, 1), t2.get(k, l)),
                shifted(t3, k, l, 0, 1),
            );
            let b = add(
                add(t1.get(k, l), shifted(t2, k, l, 1, 0)),
                shifted(t3, k, l, 1, 0),
            );
            next[0].add(k, l, a);
            next[1].add(k, l, b);
            next[2].add(k, l, mul(w, whole.get(k, l)));
        }
    }
    next
}

/// `T_n(x,y)` of the A33 family from `T_n = (n+x+y-2) T_{n-1} + (1-xy) T_{n-2}`,
/// `T_2 = 2`, `T_3 = x + y + 4`.
pub fn quadratic_recurrence_polynomial(n: usize) -> Result<BivarPoly> {
    require(n >= 2, || format!("polynomial needs n >= 2, got {n}"))?;
    require_supported(n)?;
    let x = BivarPoly::monomial(1, 1, 0);
    let y = BivarPoly::monomial(1, 0, 1);
    let mut older = BivarPoly::constant(2);
    let mut newer = x.add(&y).add(&BivarPoly::constant(4));
    if n == 2 {
        return Ok(older);
    }
    for m in 4..=n {
        let linear = BivarPoly::constant(m as i64 - 2).add(&x).add(&y);
        let damping = BivarPoly::constant(1).sub(&BivarPoly::monomial(1, 1, 1));
        let next = linear.mul(&newer).add(&damping.mul(&older));
        older = newer;
        newer = next;
    }
    Ok(newer)
}

/// Coefficient tables of the A33 family from the five-term recurrence
/// `T_{n,k,ℓ} = (n-2)T_{n-1,k,ℓ} + T_{n-1,k-1,ℓ} + T_{n-1,k,ℓ-1} + T_{n-2,k,ℓ} - T_{n-2,k-1,ℓ-1}`.
/// Returns the tables for `2..=n` with signed entries.
pub fn coefficient_recurrence_tables(n: usize) -> Result<Vec<Vec<Vec<i64>>>> {
    require(n >= 2, || format!("recurrence needs n >= 2, got {n}"))?;
    require_supported(n)?;
    let get = |t: &Vec<Vec<i64>>, k: isize, l: isize| -> i64 {
        if k < 0 || l < 0 {
            return 0;
        }
        t.get(k as usize)
            .and_then(|r| r.get(l as usize))
            .copied()
            .unwrap_or(0)
    };
    let mut tables = vec![vec![vec![2]], vec![vec![4, 1], vec![1, 0]]];
    for m in 4..=n {
        let dim = m - 1;
        let (a, b) = (&tables[tables.len() - 1], &tables[tables.len() - 2]);
        let w = m as i64 - 2;
        let next: Vec<Vec<i64>> = (0..dim as isize)
            .map(|k| {
                (0..dim as isize)
                    .map(|l| {
                        w * get(a, k, l) + get(a, k - 1, l) + get(a, k, l - 1) + get(b, k, l)
                            - get(b, k - 1, l - 1)
                    })
                    .collect()
            })
            .collect();
        tables.push(next);
    }
    tables.truncate(n - 1);
    Ok(tables)
}

/// `T_{n,k,ℓ}` from the five-term recurrence; `n >= 4`.
pub fn coefficient_recurrence(n: usize, k: usize, l: usize) -> Result<i64> {
    require(n >= 4, || format!("coefficient recurrence needs n >= 4, got {n}"))?;
    let tables = coefficient_recurrence_tables(n)?;
    let t = &tables[n - 2];
    Ok(t.get(k).and_then(|r| r.get(l)).copied().unwrap_or(0))
}

/// First-axis marginal shared by the A25-A36 families, from
/// `T_{n,k} = (n-1)T_{n-1,k} + T_{n-1,k-1} + T_{n-2,k} - T_{n-2,k-1}`,
/// `T_2 = [2]`, `T_3 = [5, 1]`.
pub fn marginal_recurrence(n: usize) -> Result<Vec<u64>> {
    require(n >= 2, || format!("marginal recurrence needs n >= 2, got {n}"))?;
    require_supported(n)?;
    let mut older: Vec<i64> = vec![2];
    let mut newer: Vec<i64> = vec![5, 1];
    if n == 2 {
        return Ok(vec![2]);
    }
    let at = |v: &[i64], k: isize| if k < 0 { 0 } else { v.get(k as usize).copied().unwrap_or(0) };
    for m in 4..=n {
        let w = m as i64 - 1;
        let next: Vec<i64> = (0..(m - 1) as isize)
            .map(|k| w * at(&newer, k) + at(&newer, k - 1) + at(&older, k) - at(&older, k - 1))
            .collect();
        older = newer;
        newer = next;
    }
    while newer.last() == Some(&0) {
        newer.pop();
    }
    newer
        .into_iter()
        .map(|v| u64::try_from(v).map_err(|_| Error::Internal(format!("negative marginal {v}"))))
        .collect()
}

/// `sum_{i=m-r}^{n-r} C(n,i) c(i,m-r) c(n-i,r) == C(m,r) c(n,m)` for `0 <= r <= m <= n`.
///
/// This is the binomial-weighted convolution that turns the convolution
/// table into the closed form.
pub fn chu_vandermonde_holds(n: usize, m: usize, r: usize) -> Result<bool> {
    let (lhs, rhs) = chu_vandermonde_sides(n, m, r, true)?;
    Ok(lhs == rhs)
}

/// Both sides of the Stirling convolution identity, with or without the
/// `C(n,i)` weight on each term.
pub fn chu_vandermonde_sides(n: usize, m: usize, r: usize, weighted: bool) -> Result<(u64, u64)> {
    require(r <= m && m <= n, || format!("need 0 <= r <= m <= n, got ({n},{m},{r})"))?;
    let c = StirlingTable::new(n)?;
    let lhs = (m - r..=n - r).fold(0u64, |acc, i| {
        let weight = if weighted { binomial(n, i) } else { 1 };
        add(acc, mul(weight, mul(c.get(i, m - r), c.get(n - i, r))))
    });
    Ok((lhs, mul(binomial(m, r), c.get(n, m))))
}

/// Row sums of a table as the first-axis marginal.
pub fn first_marginal(t: &JointTable) -> Vec<u64> {
    t.marginal(Axis::First)
}
