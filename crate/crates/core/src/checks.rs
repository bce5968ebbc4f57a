//! Batch checks: pair verification over the catalog and cross-checks of
//! every recurrence and closed form against exhaustive enumeration.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::{find, PatternPair, Status};
use crate::closed_forms::{
    chu_vandermonde_holds, coefficient_recurrence_tables, first_descent_split, harmonic_a,
    marginal_recurrence, max_position_split, quadratic_recurrence_polynomial,
    stirling_closed_form_table, stirling_convolution_table, StirlingTable,
};
use crate::dist::{distribution, joint_distribution, split_joint_distribution, Axis, BivarPoly, JointTable};
use crate::error::Result;
use crate::invseq::{recurrence_i, statistic_distribution};
use crate::mesh::MeshPattern;
use crate::perm::Permutation;

/// Pattern whose occurrence counts are `c(n, k+1)`.
pub const STIRLING_PATTERN: &str = "12|0,0;1,0;2,0;2,1";
/// Its equidistributed companion.
pub const STIRLING_COMPANION: &str = "21|0,1;1,1;2,1;2,2";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, failures: Vec<String>, ok_detail: impl Into<String>) -> Self {
        let pass = failures.is_empty();
        Self {
            name: name.into(),
            pass,
            detail: if pass {
                ok_detail.into()
            } else {
                failures.join("; ")
            },
        }
    }
}

/// Brute-force tables for every catalog pair and every `n` in `2..=n_max`.
pub struct TableCache {
    tables: BTreeMap<(String, usize), JointTable>,
}

impl TableCache {
    pub fn new() -> Self {
        Self {
            tables: BTreeMap::new(),
        }
    }

    pub fn get(&mut self, pair: &PatternPair, n: usize) -> Result<&JointTable> {
        let key = (pair.id.clone(), n);
        if !self.tables.contains_key(&key) {
            let table = joint_distribution(n, &pair.q1, &pair.q2)?;
            self.tables.insert(key.clone(), table);
        }
        Ok(&self.tables[&key])
    }
}

impl Default for TableCache {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub pair: String,
    pub frame: String,
    pub status: Status,
    pub pass: bool,
    pub checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub strict: bool,
    pub pass: bool,
    pub pairs: Vec<PairReport>,
}

fn is_element_swap_pair(id: &str) -> bool {
    id.strip_prefix('S')
        .and_then(|s| s.parse::<u32>().ok())
        .is_some_and(|k| (9..=18).contains(&k))
}

/// Joint symmetry, frame equality and, for S9-S18, the never-both
/// structure, for each selected pair and each `2 <= n <= n_max`.
pub fn verify_pairs(
    catalog: &[PatternPair],
    selected: &[&PatternPair],
    n_max: usize,
    strict: bool,
    cache: &mut TableCache,
) -> Result<VerifyReport> {
    let mut reports = Vec::new();
    for pair in selected {
        let mut symmetric_fail = Vec::new();
        let mut frame_fail = Vec::new();
        let mut never_both_fail = Vec::new();
        let mates: Vec<&PatternPair> = catalog
            .iter()
            .filter(|p| p.frame == pair.frame && p.id != pair.id)
            .collect();
        for n in 2..=n_max {
            let table = cache.get(pair, n)?.clone();
            if !table.is_jointly_symmetric() {
                symmetric_fail.push(format!("n={n}"));
            }
            if is_element_swap_pair(&pair.id) && !table.never_both() {
                never_both_fail.push(format!("n={n}"));
            }
            for mate in &mates {
                if cache.get(mate, n)? != &table {
                    frame_fail.push(format!("differs from {} at n={n}", mate.id));
                }
            }
        }
        let range = format!("2<=n<={n_max}");
        let symmetric_ok = symmetric_fail.is_empty();
        let mut checks = vec![CheckLine::new("joint symmetry", symmetric_fail, range.clone())];
        if !mates.is_empty() {
            let names: Vec<&str> = mates.iter().map(|m| m.id.as_str()).collect();
            checks.push(CheckLine::new(
                "frame equality",
                frame_fail,
                format!("equal to {} for {range}", names.join(",")),
            ));
        }
        if is_element_swap_pair(&pair.id) {
            checks.push(CheckLine::new("never-both", never_both_fail, range.clone()));
        }
        let conjecture = (pair.status == Status::Conjectured).then(|| {
            if symmetric_ok {
                format!("conjecture: holds at n<={n_max}")
            } else {
                "conjecture: FAILS".to_string()
            }
        });
        let pass = checks.iter().all(|c| c.pass);
        reports.push(PairReport {
            pair: pair.id.clone(),
            frame: pair.frame.clone(),
            status: pair.status,
            pass,
            checks,
            conjecture,
        });
    }
    let pass = reports
        .iter()
        .all(|r| r.pass || (r.status == Status::Conjectured && !strict));
    Ok(VerifyReport {
        n_max,
        strict,
        pass,
        pairs: reports,
    })
}

fn pattern(text: &str) -> MeshPattern {
    text.parse().expect("built-in pattern text")
}

/// Brute-force distribution of the Stirling pattern (and its companion)
/// against `c(n, k+1)`.
pub fn check_stirling_pattern(n_max: usize) -> Result<CheckLine> {
    let c = StirlingTable::new(n_max)?;
    let mut failures = Vec::new();
    let patterns = [pattern(STIRLING_PATTERN), pattern(STIRLING_COMPANION), pattern(STIRLING_PATTERN).complement()];
    for n in 1..=n_max {
        let expected: Vec<u64> = (0..n).map(|k| c.get(n, k + 1)).collect();
        for q in &patterns {
            let mut got = distribution(n, q)?;
            got.resize(n, 0);
            if got != expected {
                failures.push(format!("{q} at n={n}: {got:?} vs {expected:?}"));
            }
        }
    }
    Ok(CheckLine::new(
        "stirling pattern",
        failures,
        format!("tilde_T(n,k) == c(n,k+1) for all k, 1<=n<={n_max}"),
    ))
}

/// Split recurrence for S19 against the brute-force table, and each part
/// against classification by the sign of `π1 - π2`.
pub fn check_descent_split(catalog: &[PatternPair], n_max: usize, split_n_max: usize, cache: &mut TableCache) -> Result<CheckLine> {
    let s19 = find(catalog, "S19")?;
    let s20 = find(catalog, "S20")?;
    let mut failures = Vec::new();
    for n in 2..=n_max {
        let split = first_descent_split(n)?;
        let total = split.total();
        for pair in [s19, s20] {
            if cache.get(pair, n)? != &total {
                failures.push(format!("{} total at n={n}", pair.id));
            }
        }
        if n <= split_n_max {
            let parts = split_joint_distribution(n, &s19.q1, &s19.q2, 2, |pi: &Permutation| {
                usize::from(pi.at(1) < pi.at(2))
            })?;
            if parts != split.parts {
                failures.push(format!("parts at n={n}"));
            }
        }
    }
    Ok(CheckLine::new(
        "S19 split recurrence",
        failures,
        format!("totals match S19,S20 for n<={n_max}; parts match for n<={split_n_max}"),
    ))
}

/// Closed form, convolution and brute force for A17, plus `T_{n,0,0} = 2 a_{n-2}`.
pub fn check_stirling_closed_form(catalog: &[PatternPair], n_max: usize, cache: &mut TableCache) -> Result<CheckLine> {
    let a17 = find(catalog, "A17")?;
    let mut failures = Vec::new();
    for n in 2..=n_max {
        let closed = stirling_closed_form_table(n)?;
        if stirling_convolution_table(n)? != closed {
            failures.push(format!("convolution at n={n}"));
        }
        if cache.get(a17, n)? != &closed {
            failures.push(format!("brute force at n={n}"));
        }
        if closed.get(0, 0) != 2 * harmonic_a(n - 2)? {
            failures.push(format!("corner at n={n}"));
        }
    }
    Ok(CheckLine::new(
        "A17 closed form",
        failures,
        format!("closed form == convolution == brute force, T(n,0,0) == 2a(n-2), n<={n_max}"),
    ))
}

/// Split recurrence for A25 against brute force, and parts against
/// classification by the position of `n`.
pub fn check_max_position_split(catalog: &[PatternPair], n_max: usize, split_n_max: usize, cache: &mut TableCache) -> Result<CheckLine> {
    let a25 = find(catalog, "A25")?;
    let mut failures = Vec::new();
    for n in 3..=n_max {
        let split = max_position_split(n)?;
        if cache.get(a25, n)? != &split.total() {
            failures.push(format!("total at n={n}"));
        }
        if n <= split_n_max {
            let parts = split_joint_distribution(n, &a25.q1, &a25.q2, 3, |pi: &Permutation| {
                let top = pi.len() as u32;
                if pi.at(1) == top {
                    0
                } else if pi.at(pi.len()) == top {
                    1
                } else {
                    2
                }
            })?;
            if parts != split.parts {
                failures.push(format!("parts at n={n}"));
            }
        }
    }
    Ok(CheckLine::new(
        "A25 split recurrence",
        failures,
        format!("totals match A25 for 3<=n<={n_max}; parts match for n<={split_n_max}"),
    ))
}

/// Polynomial recurrence against brute force for A33, and the coefficient
/// recurrence against the polynomial recurrence.
pub fn check_quadratic_recurrence(catalog: &[PatternPair], n_max: usize, coeff_n_max: usize, cache: &mut TableCache) -> Result<CheckLine> {
    let a33 = find(catalog, "A33")?;
    let mut failures = Vec::new();
    for n in 2..=n_max {
        let poly = quadratic_recurrence_polynomial(n)?;
        if cache.get(a33, n)?.to_polynomial() != poly {
            failures.push(format!("brute force at n={n}"));
        }
    }
    let tables = coefficient_recurrence_tables(coeff_n_max.max(2))?;
    for n in 4..=coeff_n_max {
        let poly = quadratic_recurrence_polynomial(n)?;
        if BivarPoly::from_coefficients(tables[n - 2].clone()) != poly {
            failures.push(format!("coefficient recurrence at n={n}"));
        }
    }
    Ok(CheckLine::new(
        "A33 polynomial recurrence",
        failures,
        format!("polynomial == brute force for n<={n_max}; coefficients agree for n<={coeff_n_max}"),
    ))
}

/// First-axis marginals of A25-A36 coincide and follow the marginal recurrence.
pub fn check_marginals(catalog: &[PatternPair], n_max: usize, cache: &mut TableCache) -> Result<CheckLine> {
    let mut failures = Vec::new();
    let family: Vec<&PatternPair> = (25..=36)
        .map(|i| find(catalog, &format!("A{i}")))
        .collect::<Result<_>>()?;
    for n in 2..=n_max {
        let expected = marginal_recurrence(n)?;
        for pair in &family {
            let got = cache.get(pair, n)?.marginal(Axis::First);
            if got != expected {
                failures.push(format!("{} at n={n}: {got:?} vs {expected:?}", pair.id));
            }
        }
    }
    Ok(CheckLine::new(
        "A25-A36 marginals",
        failures,
        format!("all twelve first-axis marginals equal the recurrence for n<={n_max}"),
    ))
}

/// Inversion-sequence statistic against the marginal recurrence.
pub fn check_inversion_sequences(n_max: usize) -> Result<CheckLine> {
    let mut failures = Vec::new();
    for n in 2..=n_max {
        let brute = statistic_distribution(n)?;
        let expected = marginal_recurrence(n)?;
        if brute != expected {
            failures.push(format!("I({n},k) = {brute:?} vs T({n},k) = {expected:?}"));
        }
        for (k, &v) in brute.iter().enumerate() {
            if recurrence_i(n, k)? != v {
                failures.push(format!("recurrence at ({n},{k})"));
            }
        }
    }
    Ok(CheckLine::new(
        "inversion sequences",
        failures,
        format!("I({n_max},k) == T({n_max},k) for all k, and for every smaller n"),
    ))
}

pub fn check_chu_vandermonde(n_max: usize) -> Result<CheckLine> {
    let mut failures = Vec::new();
    for n in 0..=n_max {
        for m in 0..=n {
            for r in 0..=m {
                if !chu_vandermonde_holds(n, m, r)? {
                    failures.push(format!("({n},{m},{r})"));
                }
            }
        }
    }
    Ok(CheckLine::new(
        "Stirling convolution identity",
        failures,
        format!("holds for 0<=r<=m<=n<={n_max}"),
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub n_max: usize,
    pub pass: bool,
    pub checks: Vec<CheckLine>,
}

/// Every closed-form and recurrence check up to `n_max`.
pub fn crosscheck(catalog: &[PatternPair], n_max: usize, cache: &mut TableCache) -> Result<CrosscheckReport> {
    let split_n_max = n_max.min(6);
    let checks = vec![
        check_stirling_pattern(n_max)?,
        check_descent_split(catalog, n_max, split_n_max, cache)?,
        check_stirling_closed_form(catalog, n_max, cache)?,
        check_max_position_split(catalog, n_max, split_n_max, cache)?,
        check_quadratic_recurrence(catalog, n_max, n_max.max(9), cache)?,
        check_marginals(catalog, n_max, cache)?,
        check_inversion_sequences(n_max)?,
        check_chu_vandermonde(n_max)?,
    ];
    Ok(CrosscheckReport {
        n_max,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    #[test]
    fn crosscheck_small() {
        let cat = builtin_catalog();
        let report = crosscheck(&cat, 5, &mut TableCache::new()).unwrap();
        for c in &report.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn verify_small() {
        let cat = builtin_catalog();
        let all: Vec<&PatternPair> = cat.iter().collect();
        let report = verify_pairs(&cat, &all, 5, false, &mut TableCache::new()).unwrap();
        assert!(report.pass);
        assert_eq!(report.pairs.len(), 58);
        let s21 = report.pairs.iter().find(|p| p.pair == "S21").unwrap();
        assert_eq!(s21.conjecture.as_deref(), Some("conjecture: holds at n<=5"));
        let s9 = report.pairs.iter().find(|p| p.pair == "S9").unwrap();
        assert!(s9.checks.iter().any(|c| c.name == "never-both" && c.pass));
    }
}
