//! Mesh patterns and their occurrences.
//!
//! A mesh pattern `(τ, R)` of length `m` pairs a classical pattern `τ ∈ S_m`
//! with a set `R` of shaded boxes of the `(m+1) × (m+1)` grid drawn around
//! the plot of `τ`. Box `(i, j)` is the unit square whose lower-left corner
//! is `(i, j)`; columns index positions and rows index values, both 0-based.
//!
//! An occurrence in `π` is a subsequence order-isomorphic to `τ` such that
//! every shaded box, mapped onto `π` through the chosen positions and
//! values, contains no entry of `π`. Mapped regions are open on both axes
//! with sentinels `0` and `n + 1`, so chosen entries never block a box.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A box `(col, row)` of the pattern grid, `0 <= col, row <= m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl Cell {
    pub const fn new(col: usize, row: usize) -> Self {
        Self { col, row }
    }

    pub const fn transposed(self) -> Self {
        Self {
            col: self.row,
            row: self.col,
        }
    }
}

/// A classical pattern together with a shading set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeshPattern {
    tau: Permutation,
    shading: BTreeSet<Cell>,
}

/// Which shading families a pattern belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShadingClass {
    pub symmetric: bool,
    pub minus_antipodal: bool,
}

impl MeshPattern {
    pub fn new(tau: Permutation, shading: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let m = tau.len();
        if m == 0 {
            return Err(Error::InvalidInput("mesh pattern must have length >= 1".into()));
        }
        let shading: BTreeSet<Cell> = shading.into_iter().collect();
        if let Some(bad) = shading.iter().find(|c| c.col > m || c.row > m) {
            return Err(Error::InvalidInput(format!(
                "box ({},{}) lies outside the [0,{m}]x[0,{m}] grid",
                bad.col, bad.row
            )));
        }
        Ok(Self { tau, shading })
    }

    /// The classical pattern `τ` with nothing shaded.
    pub fn classical(tau: Permutation) -> Result<Self> {
        Self::new(tau, [])
    }

    /// `τ` with every box of the grid shaded.
    pub fn fully_shaded(tau: Permutation) -> Result<Self> {
        let m = tau.len();
        let cells = (0..=m).cartesian_product(0..=m).map(|(c, r)| Cell::new(c, r));
        Self::new(tau, cells.collect::<Vec<_>>())
    }

    pub fn tau(&self) -> &Permutation {
        &self.tau
    }

    pub fn shading(&self) -> &BTreeSet<Cell> {
        &self.shading
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    /// Same pattern with one more shaded box.
    pub fn with_cell(&self, cell: Cell) -> Result<Self> {
        let mut shading = self.shading.clone();
        shading.insert(cell);
        Self::new(self.tau.clone(), shading)
    }

    pub fn complement(&self) -> Self {
        let m = self.len();
        Self {
            tau: self.tau.complement(),
            shading: self.shading.iter().map(|c| Cell::new(c.col, m - c.row)).collect(),
        }
    }

    pub fn reverse(&self) -> Self {
        let m = self.len();
        Self {
            tau: self.tau.reverse(),
            shading: self.shading.iter().map(|c| Cell::new(m - c.col, c.row)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            tau: self.tau.inverse(),
            shading: self.shading.iter().map(|c| c.transposed()).collect(),
        }
    }

    /// Symmetric: closed under transposition. Minus-antipodal: exactly one of
    /// `(i,j)` and `(j,i)` is shaded for every `i != j`; the diagonal is free.
    pub fn classify_shading(&self) -> ShadingClass {
        let m = self.len();
        let symmetric = self
            .shading
            .iter()
            .all(|c| self.shading.contains(&c.transposed()));
        let minus_antipodal = (0..=m).array_combinations().all(|[i, j]| {
            self.shading.contains(&Cell::new(i, j)) != self.shading.contains(&Cell::new(j, i))
        });
        ShadingClass {
            symmetric,
            minus_antipodal,
        }
    }

    /// Parses `<tau>|<i,j;i,j;...>` and also returns how many duplicate boxes were dropped.
    pub fn parse_counting_duplicates(text: &str) -> Result<(Self, usize)> {
        let (tau_text, boxes_text) = text
            .trim()
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("pattern {text:?} lacks a `|` separator")))?;
        let tau: Permutation = tau_text.parse()?;
        let mut cells = Vec::new();
        for item in boxes_text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (c, r) = item
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("box {item:?} is not of the form i,j")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad box coordinate {s:?} in {text:?}")))
            };
            cells.push(Cell::new(parse(c)?, parse(r)?));
        }
        let total = cells.len();
        let pattern = Self::new(tau, cells)?;
        let duplicates = total - pattern.shading.len();
        Ok((pattern, duplicates))
    }
}

impl fmt::Display for MeshPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}|{}",
            self.tau,
            self.shading
                .iter()
                .map(|c| format!("{},{}", c.col, c.row))
                .join(";")
        )
    }
}

impl FromStr for MeshPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_counting_duplicates(s).map(|(p, _)| p)
    }
}

/// Prefix counts `#{i <= x : π_i <= y}` giving O(1) rectangle emptiness tests.
#[derive(Clone, Debug)]
pub struct DominanceTable {
    side: usize,
    prefix: Vec<u32>,
}

impl DominanceTable {
    pub fn new(pi: &Permutation) -> Self {
        let n = pi.len();
        let side = n + 2;
        let mut prefix = vec![0u32; side * side];
        for x in 1..side {
            for y in 1..side {
                let here = u32::from(x <= n && pi.at(x) as usize == y);
                prefix[x * side + y] = here + prefix[(x - 1) * side + y]
                    + prefix[x * side + y - 1]
                    - prefix[(x - 1) * side + y - 1];
            }
        }
        Self { side, prefix }
    }

    fn at(&self, x: usize, y: usize) -> u32 {
        self.prefix[x * self.side + y]
    }

    /// Number of entries with position strictly inside `(x_lo, x_hi)` and
    /// value strictly inside `(y_lo, y_hi)`.
    pub fn count_open(&self, x_lo: usize, x_hi: usize, y_lo: usize, y_hi: usize) -> u32 {
        if x_hi <= x_lo + 1 || y_hi <= y_lo + 1 {
            return 0;
        }
        self.at(x_hi - 1, y_hi - 1) + self.at(x_lo, y_lo)
            - self.at(x_lo, y_hi - 1)
            - self.at(x_hi - 1, y_lo)
    }
}

/// Checks condition (i): the chosen values are order-isomorphic to `tau`.
fn matches_classical(values: &[u32], tau: &Permutation) -> bool {
    let t = tau.values();
    (0..values.len())
        .array_combinations()
        .all(|[a, b]| (values[a] < values[b]) == (t[a] < t[b]))
}

/// Boundaries `0 = p_0 < p_1 < ... < p_m < p_{m+1} = n + 1` and the same
/// for the sorted chosen values.
fn boundaries(pi: &Permutation, positions: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = pi.len();
    let mut xs = Vec::with_capacity(positions.len() + 2);
    xs.push(0);
    xs.extend_from_slice(positions);
    xs.push(n + 1);
    let mut ys: Vec<usize> = positions.iter().map(|&p| pi.at(p) as usize).collect();
    ys.sort_unstable();
    ys.insert(0, 0);
    ys.push(n + 1);
    (xs, ys)
}

fn shading_clear_naive(pi: &Permutation, positions: &[usize], pat: &MeshPattern) -> bool {
    let (xs, ys) = boundaries(pi, positions);
    pat.shading.iter().all(|c| {
        let (x_lo, x_hi, y_lo, y_hi) = (xs[c.col], xs[c.col + 1], ys[c.row], ys[c.row + 1]);
        ((x_lo + 1)..x_hi).all(|x| {
            let v = pi.at(x) as usize;
            v <= y_lo || v >= y_hi
        })
    })
}

fn shading_clear_fast(
    table: &DominanceTable,
    pi: &Permutation,
    positions: &[usize],
    pat: &MeshPattern,
) -> bool {
    let (xs, ys) = boundaries(pi, positions);
    pat.shading.iter().all(|c| {
        table.count_open(xs[c.col], xs[c.col + 1], ys[c.row], ys[c.row + 1]) == 0
    })
}

fn validate_positions(n: usize, positions: &[usize], m: usize) -> Result<()> {
    if positions.len() != m {
        return Err(Error::InvalidInput(format!(
            "expected {m} positions, got {}",
            positions.len()
        )));
    }
    if positions.iter().any(|&p| p == 0 || p > n) {
        return Err(Error::InvalidInput(format!(
            "positions {positions:?} out of range 1..={n}"
        )));
    }
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(format!(
            "positions {positions:?} are not strictly increasing"
        )));
    }
    Ok(())
}

/// Whether the entries at `positions` (1-based, increasing) form an occurrence of `pat`.
pub fn is_occurrence(pi: &Permutation, positions: &[usize], pat: &MeshPattern) -> Result<bool> {
    validate_positions(pi.len(), positions, pat.len())?;
    let values: Vec<u32> = positions.iter().map(|&p| pi.at(p)).collect();
    Ok(matches_classical(&values, &pat.tau) && shading_clear_naive(pi, positions, pat))
}

/// All occurrences of `pat` in `pi`, as position tuples in lexicographic order.
pub fn occurrences(pi: &Permutation, pat: &MeshPattern) -> Vec<Vec<usize>> {
    let table = DominanceTable::new(pi);
    (1..=pi.len())
        .combinations(pat.len())
        .filter(|pos| {
            let values: Vec<u32> = pos.iter().map(|&p| pi.at(p)).collect();
            matches_classical(&values, &pat.tau) && shading_clear_fast(&table, pi, pos, pat)
        })
        .collect()
}

/// The lexicographically least occurrence, if any.
pub fn first_occurrence(pi: &Permutation, pat: &MeshPattern) -> Option<Vec<usize>> {
    let table = DominanceTable::new(pi);
    (1..=pi.len()).combinations(pat.len()).find(|pos| {
        let values: Vec<u32> = pos.iter().map(|&p| pi.at(p)).collect();
        matches_classical(&values, &pat.tau) && shading_clear_fast(&table, pi, pos, pat)
    })
}

/// Number of occurrences of `pat` in `pi`, using the dominance table.
pub fn count_occurrences(pi: &Permutation, pat: &MeshPattern) -> u64 {
    let table = DominanceTable::new(pi);
    count_with_table(&table, pi, pat)
}

fn count_with_table(table: &DominanceTable, pi: &Permutation, pat: &MeshPattern) -> u64 {
    if pat.len() > pi.len() {
        return 0;
    }
    let mut values = Vec::with_capacity(pat.len());
    (1..=pi.len())
        .combinations(pat.len())
        .filter(|pos| {
            values.clear();
            values.extend(pos.iter().map(|&p| pi.at(p)));
            matches_classical(&values, &pat.tau) && shading_clear_fast(table, pi, pos, pat)
        })
        .count() as u64
}

/// Reference implementation: scans every mapped region entry by entry.
pub fn count_occurrences_naive(pi: &Permutation, pat: &MeshPattern) -> u64 {
    if pat.len() > pi.len() {
        return 0;
    }
    (1..=pi.len())
        .combinations(pat.len())
        .filter(|pos| is_occurrence(pi, pos, pat).unwrap_or(false))
        .count() as u64
}

/// `(occurrences of q1, occurrences of q2)` in `pi`.
pub fn joint_counts(pi: &Permutation, q1: &MeshPattern, q2: &MeshPattern) -> (u64, u64) {
    let table = DominanceTable::new(pi);
    (count_with_table(&table, pi, q1), count_with_table(&table, pi, q2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_sn;

    fn pat(s: &str) -> MeshPattern {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    const WORKED: &str = "123|0,0;1,2;2,1;3,1";

    #[test]
    fn worked_example_occurrences() {
        let q = pat(WORKED);
        assert!(is_occurrence(&p("23154"), &[1, 2, 4], &q).unwrap());
        assert!(is_occurrence(&p("23154"), &[1, 2, 5], &q).unwrap());
        assert!(!is_occurrence(&p("14325"), &[1, 2, 5], &q).unwrap());
        assert_eq!(count_occurrences(&p("23154"), &q), 2);
        assert_eq!(occurrences(&p("23154"), &q), vec![vec![1, 2, 4], vec![1, 2, 5]]);
        assert_eq!(count_occurrences(&p("14325"), &pat("123|")), 3);
        assert_eq!(count_occurrences(&p("14325"), &q), 0);
    }

    #[test]
    fn circled_triples_of_14325_all_blocked() {
        let q = pat(WORKED);
        let pi = p("14325");
        for triple in [[1, 2, 5], [1, 3, 5], [1, 4, 5]] {
            let vals: Vec<u32> = triple.iter().map(|&i| pi.at(i)).collect();
            assert_eq!(crate::perm::standardize(&vals).unwrap(), p("123"));
            assert!(!is_occurrence(&pi, &triple, &q).unwrap());
        }
    }

    #[test]
    fn empty_shading_is_classical() {
        let q = pat("132|");
        for pi in enumerate_sn(5).unwrap() {
            for pos in (1..=5).combinations(3) {
                let vals: Vec<u32> = pos.iter().map(|&i| pi.at(i)).collect();
                let classical = crate::perm::standardize(&vals).unwrap() == p("132");
                assert_eq!(is_occurrence(&pi, &pos, &q).unwrap(), classical);
            }
        }
    }

    #[test]
    fn invalid_positions_rejected() {
        let q = pat(WORKED);
        let pi = p("23154");
        assert!(is_occurrence(&pi, &[2, 1, 4], &q).is_err());
        assert!(is_occurrence(&pi, &[1, 2, 6], &q).is_err());
        assert!(is_occurrence(&pi, &[0, 2, 3], &q).is_err());
        assert!(is_occurrence(&pi, &[1, 2], &q).is_err());
    }

    #[test]
    fn short_permutations_have_no_occurrences() {
        let q = pat("123|");
        assert_eq!(count_occurrences(&p("12"), &q), 0);
        assert_eq!(count_occurrences_naive(&p("12"), &q), 0);
        assert_eq!(count_occurrences(&Permutation::default(), &q), 0);
    }

    #[test]
    fn pattern_symmetries_follow_displayed_chain() {
        let q = pat(WORKED);
        let c = q.complement();
        assert_eq!(c, pat("321|0,3;1,1;2,2;3,2"));
        let r = c.reverse();
        assert_eq!(r, pat("123|0,2;1,2;2,1;3,3"));
        assert_eq!(r.inverse(), pat("123|2,0;2,1;1,2;3,3"));
        assert_eq!(q.reverse().reverse(), q);
        assert_eq!(q.inverse().inverse(), q);
        assert_eq!(q.complement().complement(), q);
    }

    #[test]
    fn full_and_empty_shadings_are_fixed() {
        let full = MeshPattern::fully_shaded(p("123")).unwrap();
        assert_eq!(full.complement().shading(), full.shading());
        let empty = pat("123|");
        assert!(empty.complement().shading().is_empty());
        assert!(empty.reverse().shading().is_empty());
    }

    #[test]
    fn symmetric_shading_fixed_by_inverse() {
        let q = pat("123|0,0;0,1;0,2;1,0;1,1;1,2;2,0;2,1;2,2");
        assert_eq!(q.inverse().shading(), q.shading());
    }

    #[test]
    fn classify_examples() {
        let s19 = pat("123|0,0;0,1;0,2;1,0;1,1;1,2;2,0;2,1;2,2");
        assert!(s19.classify_shading().symmetric);
        let a17 = pat("123|0,0;0,1;0,2;0,3;1,1;2,1;3,1;3,2");
        assert!(a17.classify_shading().minus_antipodal);
        assert!(!a17.classify_shading().symmetric);
        let empty = pat("123|").classify_shading();
        assert!(empty.symmetric);
        assert!(!empty.minus_antipodal);
    }

    #[test]
    fn parse_and_render() {
        let q = pat(WORKED);
        assert_eq!(q.to_string(), WORKED);
        assert_eq!(pat("123|").to_string(), "123|");
        let (dedup, dups) = MeshPattern::parse_counting_duplicates("123|3,2;0,1;3,2").unwrap();
        assert_eq!(dups, 1);
        assert_eq!(dedup.to_string(), "123|0,1;3,2");
        assert!("123|4,0".parse::<MeshPattern>().is_err());
        assert!("123".parse::<MeshPattern>().is_err());
        assert!("123|1;2".parse::<MeshPattern>().is_err());
        assert!("|".parse::<MeshPattern>().is_err());
        assert_eq!(pat("12|0,0;1,0;2,0;2,1").len(), 2);
    }

    #[test]
    fn dominance_table_matches_naive_everywhere() {
        let patterns = [
            pat(WORKED),
            pat("321|0,0;1,1;2,2;3,3"),
            pat("132|0,3;1,0;2,2"),
            pat("12|0,0;1,0;2,0;2,1"),
            pat("1|0,0;1,1"),
        ];
        for n in 0..=6 {
            for pi in enumerate_sn(n).unwrap() {
                for q in &patterns {
                    assert_eq!(count_occurrences(&pi, q), count_occurrences_naive(&pi, q));
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
            (0..=max)
                .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
                .prop_map(|v| Permutation::new(v).unwrap())
        }

        fn arb_pattern() -> impl Strategy<Value = MeshPattern> {
            (1usize..=3)
                .prop_flat_map(|m| {
                    (
                        Just((1..=m as u32).collect::<Vec<_>>()).prop_shuffle(),
                        proptest::collection::vec((0..=m, 0..=m), 0..8),
                    )
                })
                .prop_map(|(tau, cells)| {
                    MeshPattern::new(
                        Permutation::new(tau).unwrap(),
                        cells.into_iter().map(|(c, r)| Cell::new(c, r)),
                    )
                    .unwrap()
                })
        }

        proptest! {
            #[test]
            fn shading_monotonicity(pi in arb_perm(6), q in arb_pattern(), c in 0usize..4, r in 0usize..4) {
                let m = q.len();
                let cell = Cell::new(c.min(m), r.min(m));
                let more = q.with_cell(cell).unwrap();
                prop_assert!(count_occurrences(&pi, &more) <= count_occurrences(&pi, &q));
            }

            #[test]
            fn classical_count_bounded(pi in arb_perm(7)) {
                let n = pi.len() as u64;
                let bound = if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 };
                prop_assert!(count_occurrences(&pi, &"123|".parse().unwrap()) <= bound);
            }

            #[test]
            fn equivariance(pi in arb_perm(6), q in arb_pattern()) {
                let k = count_occurrences(&pi, &q);
                prop_assert_eq!(count_occurrences(&pi.complement(), &q.complement()), k);
                prop_assert_eq!(count_occurrences(&pi.reverse(), &q.reverse()), k);
                prop_assert_eq!(count_occurrences(&pi.inverse(), &q.inverse()), k);
            }

            #[test]
            fn pattern_operations_are_involutions(q in arb_pattern()) {
                prop_assert_eq!(q.complement().complement(), q.clone());
                prop_assert_eq!(q.reverse().reverse(), q.clone());
                prop_assert_eq!(q.inverse().inverse(), q.clone());
            }

            #[test]
            fn text_round_trip(q in arb_pattern()) {
                prop_assert_eq!(q.to_string().parse::<MeshPattern>().unwrap(), q);
            }
        }
    }
}
