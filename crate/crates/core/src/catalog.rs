//! The registry of pattern pairs and its consistency checks.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::MeshPattern;
use crate::perm::Permutation;

const BUILTIN: &str = include_str!("../data/catalog.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Symmetric,
    MinusAntipodal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proven,
    Conjectured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ComplementReverse,
    ElementSwap,
    Recurrence,
    ClosedForm,
    Conjecture,
}

macro_rules! text_enum {
    ($ty:ty, $kind:literal, { $($variant:path => $text:literal),+ $(,)? }) => {
        impl $ty {
            pub fn as_str(self) -> &'static str {
                match self { $($variant => $text),+ }
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($variant),)+
                    other => Err(Error::Parse(format!("unknown {} `{other}`", $kind))),
                }
            }
        }
    };
}

text_enum!(Family, "family", {
    Family::Symmetric => "symmetric",
    Family::MinusAntipodal => "minus_antipodal",
});
text_enum!(Status, "status", {
    Status::Proven => "proven",
    Status::Conjectured => "conjectured",
});
text_enum!(Method, "method", {
    Method::ComplementReverse => "complement_reverse",
    Method::ElementSwap => "element_swap",
    Method::Recurrence => "recurrence",
    Method::ClosedForm => "closed_form",
    Method::Conjecture => "conjecture",
});

/// One catalog entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternPair {
    pub id: String,
    pub q1: MeshPattern,
    pub q2: MeshPattern,
    pub family: Family,
    pub frame: String,
    pub status: Status,
    pub method: Method,
}

impl PatternPair {
    /// The two patterns in swapped order.
    pub fn swapped(&self) -> (MeshPattern, MeshPattern) {
        (self.q2.clone(), self.q1.clone())
    }

    fn validate(&self) -> Result<()> {
        let fail = |message: String| Error::Invariant {
            id: self.id.clone(),
            message,
        };
        let increasing: Permutation = "123".parse()?;
        let decreasing: Permutation = "321".parse()?;
        if self.q1.tau() != &increasing {
            return Err(fail(format!("q1 must be on 123, got {}", self.q1.tau())));
        }
        if self.q2.tau() != &decreasing {
            return Err(fail(format!("q2 must be on 321, got {}", self.q2.tau())));
        }
        match self.family {
            Family::Symmetric => {
                if self.q1.shading() != self.q2.shading() {
                    return Err(fail("symmetric pair must use identical shadings".into()));
                }
                if !self.q1.classify_shading().symmetric {
                    return Err(fail("shading is not closed under transposition".into()));
                }
            }
            Family::MinusAntipodal => {
                for (name, q) in [("q1", &self.q1), ("q2", &self.q2)] {
                    if !q.classify_shading().minus_antipodal {
                        return Err(fail(format!("{name} shading is not minus-antipodal")));
                    }
                }
            }
        }
        let conjectured_id = matches!(self.id.as_str(), "S21" | "S22");
        if conjectured_id != (self.status == Status::Conjectured) {
            return Err(fail(format!("unexpected status `{}`", self.status)));
        }
        Ok(())
    }
}

/// Proof method implied by a pair identifier.
pub fn method_for(id: &str) -> Result<Method> {
    let unknown = || Error::Unknown {
        kind: "pair",
        id: id.to_string(),
    };
    let (table, number) = id.split_at(1.min(id.len()));
    let number: u32 = number.parse().map_err(|_| unknown())?;
    let method = match (table, number) {
        ("S", 1..=8) | ("A", 1..=16) => Method::ComplementReverse,
        ("S", 9..=18) => Method::ElementSwap,
        ("S", 19..=20) | ("A", 25..=36) => Method::Recurrence,
        ("S", 21..=22) => Method::Conjecture,
        ("A", 17..=24) => Method::ClosedForm,
        _ => return Err(unknown()),
    };
    Ok(method)
}

/// Parses catalog text. Duplicate boxes are dropped with a warning.
pub fn parse_catalog(text: &str) -> Result<Vec<PatternPair>> {
    let mut pairs: Vec<PatternPair> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let at_line = |message: String| Error::ParseLine { line, message };
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [id, family, frame, status, q1, q2] = fields[..] else {
            return Err(at_line(format!("expected 6 fields, found {}", fields.len())));
        };
        let family: Family = family.parse().map_err(|e: Error| at_line(e.to_string()))?;
        let status: Status = status.parse().map_err(|e: Error| at_line(e.to_string()))?;
        let method = method_for(id).map_err(|e| at_line(e.to_string()))?;
        let parse_pattern = |text: &str| -> Result<MeshPattern> {
            let (pattern, dropped) =
                MeshPattern::parse_counting_duplicates(text).map_err(|e| at_line(e.to_string()))?;
            if dropped > 0 {
                log::warn!("line {line}: pair {id} lists {dropped} duplicate box(es); deduplicated");
            }
            Ok(pattern)
        };
        let q1 = parse_pattern(q1)?;
        let q2 = parse_pattern(q2)?;
        if pairs.iter().any(|p| p.id == id) {
            return Err(at_line(format!("duplicate pair id `{id}`")));
        }
        let pair = PatternPair {
            id: id.to_string(),
            q1,
            q2,
            family,
            frame: frame.to_string(),
            status,
            method,
        };
        pair.validate()?;
        pairs.push(pair);
    }
    Ok(pairs)
}

/// The embedded catalog, in order S1..S22, A1..A36.
pub fn builtin_catalog() -> Vec<PatternPair> {
    parse_catalog(BUILTIN).expect("embedded catalog is valid")
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<PatternPair>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_catalog(&text)
}

pub fn find<'a>(catalog: &'a [PatternPair], id: &str) -> Result<&'a PatternPair> {
    catalog.iter().find(|p| p.id == id).ok_or_else(|| Error::Unknown {
        kind: "pair",
        id: id.to_string(),
    })
}

/// Frame identifiers in catalog order, each with its member ids.
pub fn frames(catalog: &[PatternPair]) -> Vec<(String, Vec<String>)> {
    let mut out: Vec<(String, Vec<String>)> = Vec::new();
    for pair in catalog {
        match out.iter_mut().find(|(f, _)| *f == pair.frame) {
            Some((_, members)) => members.push(pair.id.clone()),
            None => out.push((pair.frame.clone(), vec![pair.id.clone()])),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternOp {
    Complement,
    Reverse,
    Inverse,
}

impl PatternOp {
    pub fn apply(self, pattern: &MeshPattern) -> MeshPattern {
        match self {
            PatternOp::Complement => pattern.complement(),
            PatternOp::Reverse => pattern.reverse(),
            PatternOp::Inverse => pattern.inverse(),
        }
    }

    pub fn letter(self) -> char {
        match self {
            PatternOp::Complement => 'c',
            PatternOp::Reverse => 'r',
            PatternOp::Inverse => 'i',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Q1,
    Q2,
}

/// One arrow of a displayed derivation: apply `ops` in order, land on
/// pattern `side` of pair `target`.
#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub ops: Vec<PatternOp>,
    pub target: &'static str,
    pub side: Side,
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivationChain {
    pub name: &'static str,
    pub start: &'static str,
    pub side: Side,
    pub steps: Vec<ChainStep>,
}

fn chain(name: &'static str, start: &'static str, side: Side, steps: &[(&str, &'static str, Side)]) -> DerivationChain {
    let steps = steps
        .iter()
        .map(|&(ops, target, side)| ChainStep {
            ops: ops
                .chars()
                .map(|c| match c {
                    'c' => PatternOp::Complement,
                    'r' => PatternOp::Reverse,
                    'i' => PatternOp::Inverse,
                    _ => unreachable!("op letter"),
                })
                .collect(),
            target,
            side,
        })
        .collect();
    DerivationChain {
        name,
        start,
        side,
        steps,
    }
}

/// Every displayed derivation chain between catalog pairs. Waypoints that
/// are not catalog patterns are skipped by folding their operation into the
/// next step.
pub fn derivation_chains() -> Vec<DerivationChain> {
    use Side::{Q1, Q2};
    vec![
        chain("S19 to S20 (q1)", "S19", Q1, &[("cr", "S20", Q1)]),
        chain("S19 to S20 (q2)", "S19", Q2, &[("cr", "S20", Q2)]),
        chain("S21 to S22 (q1)", "S21", Q1, &[("cr", "S22", Q1)]),
        chain("S21 to S22 (q2)", "S21", Q2, &[("cr", "S22", Q2)]),
        chain(
            "A1 to A3 to A4 to A2 (q1)",
            "A1",
            Q1,
            &[("r", "A3", Q2), ("i", "A4", Q2), ("c", "A2", Q1)],
        ),
        chain(
            "A1 to A3 to A4 to A2 (q2)",
            "A1",
            Q2,
            &[("r", "A3", Q1), ("i", "A4", Q1), ("c", "A2", Q2)],
        ),
        chain(
            "A17 complement branch",
            "A17",
            Q1,
            &[("c", "A18", Q2), ("r", "A22", Q1), ("c", "A21", Q2)],
        ),
        chain(
            "A17 inverse branch",
            "A17",
            Q1,
            &[("i", "A19", Q1), ("r", "A20", Q2), ("c", "A23", Q1), ("r", "A24", Q2)],
        ),
        chain(
            "A25 reverse branch",
            "A25",
            Q1,
            &[("r", "A32", Q2), ("c", "A27", Q1), ("r", "A28", Q2)],
        ),
        chain(
            "A25 inverse branch",
            "A25",
            Q1,
            &[("i", "A30", Q1), ("c", "A29", Q2), ("r", "A31", Q1), ("c", "A26", Q2)],
        ),
        chain("A33 to A34", "A33", Q1, &[("cr", "A34", Q1)]),
        chain("A33 inverse branch", "A33", Q1, &[("i", "A35", Q1), ("cr", "A36", Q1)]),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub chain: String,
    pub pass: bool,
    pub mismatches: Vec<String>,
}

fn pick(pair: &PatternPair, side: Side) -> &MeshPattern {
    match side {
        Side::Q1 => &pair.q1,
        Side::Q2 => &pair.q2,
    }
}

/// Recomputes each chain with the pattern operators. A step passes when the
/// operated pattern equals the named target pattern, and the operated pair
/// equals the target pair up to the order of its two patterns.
pub fn validate_symmetry_derivations(catalog: &[PatternPair]) -> Vec<ChainReport> {
    derivation_chains()
        .into_iter()
        .map(|c| {
            let mut mismatches = Vec::new();
            match find(catalog, c.start) {
                Err(e) => mismatches.push(e.to_string()),
                Ok(start) => {
                    let mut current = pick(start, c.side).clone();
                    let mut pair = (start.q1.clone(), start.q2.clone());
                    for step in &c.steps {
                        for op in &step.ops {
                            current = op.apply(&current);
                            pair = (op.apply(&pair.0), op.apply(&pair.1));
                        }
                        let Ok(target) = find(catalog, step.target) else {
                            mismatches.push(format!("unknown target {}", step.target));
                            break;
                        };
                        if &current != pick(target, step.side) {
                            mismatches.push(format!(
                                "{}: got {current}, expected {}",
                                step.target,
                                pick(target, step.side)
                            ));
                        }
                        let same = (pair.0 == target.q1 && pair.1 == target.q2)
                            || (pair.0 == target.q2 && pair.1 == target.q1);
                        if !same {
                            mismatches.push(format!("{}: pair differs ({} / {})", step.target, pair.0, pair.1));
                        }
                    }
                }
            }
            ChainReport {
                chain: c.name.to_string(),
                pass: mismatches.is_empty(),
                mismatches,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_has_all_pairs_in_order() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 58);
        let ids: Vec<String> = cat.iter().map(|p| p.id.clone()).collect();
        let expected: Vec<String> = (1..=22)
            .map(|i| format!("S{i}"))
            .chain((1..=36).map(|i| format!("A{i}")))
            .collect();
        assert_eq!(ids, expected);
        assert_eq!(cat.iter().filter(|p| p.family == Family::Symmetric).count(), 22);
        assert_eq!(cat.iter().filter(|p| p.status == Status::Proven).count(), 56);
    }

    #[test]
    fn highlighted_entries() {
        let cat = builtin_catalog();
        let q1 = |id: &str| find(&cat, id).unwrap().q1.to_string();
        assert_eq!(q1("S19"), "123|0,0;0,1;0,2;1,0;1,1;1,2;2,0;2,1;2,2");
        assert_eq!(q1("A17"), "123|0,0;0,1;0,2;0,3;1,1;2,1;3,1;3,2");
        assert_eq!(q1("A33"), "123|0,2;1,0;1,1;1,2;2,2;3,0;3,1;3,2");
    }

    #[test]
    fn methods_follow_ids() {
        let cat = builtin_catalog();
        let m = |id: &str| find(&cat, id).unwrap().method;
        assert_eq!(m("S3"), Method::ComplementReverse);
        assert_eq!(m("A16"), Method::ComplementReverse);
        assert_eq!(m("S12"), Method::ElementSwap);
        assert_eq!(m("S20"), Method::Recurrence);
        assert_eq!(m("S22"), Method::Conjecture);
        assert_eq!(m("A20"), Method::ClosedForm);
        assert_eq!(m("A30"), Method::Recurrence);
        assert!(method_for("A37").is_err());
        assert!(method_for("X1").is_err());
    }

    #[test]
    fn round_trip_through_text() {
        let cat = builtin_catalog();
        let text: String = cat
            .iter()
            .map(|p| format!("{} {} {} {} {} {}\n", p.id, p.family, p.frame, p.status, p.q1, p.q2))
            .collect();
        assert_eq!(parse_catalog(&text).unwrap(), cat);
    }

    #[test]
    fn rejects_broken_entries() {
        let err = parse_catalog("S1 symmetric F proven 123|0,1 321|0,1\n").unwrap_err();
        assert!(matches!(err, Error::Invariant { ref id, .. } if id == "S1"), "{err}");
        let err = parse_catalog("# header\nS1 symmetric F proven 123|\n").unwrap_err();
        assert!(matches!(err, Error::ParseLine { line: 2, .. }), "{err}");
        let err = parse_catalog("S1 symmetric F proven 123|9,9 321|\n").unwrap_err();
        assert!(matches!(err, Error::ParseLine { line: 1, .. }), "{err}");
        let err = parse_catalog("S21 symmetric F proven 123| 321|\n").unwrap_err();
        assert!(matches!(err, Error::Invariant { .. }), "{err}");
        let err = parse_catalog("S1 weird F proven 123| 321|\n").unwrap_err();
        assert!(matches!(err, Error::ParseLine { line: 1, .. }), "{err}");
    }

    #[test]
    fn duplicate_boxes_are_accepted() {
        let text = "A22 minus_antipodal F proven 123|0,1;0,2;1,2;2,2;3,0;3,1;3,2;3,2;3,3 321|0,1;0,2;1,2;2,2;3,0;3,1;3,2;3,3\n";
        let cat = parse_catalog(text).unwrap();
        assert_eq!(cat[0].q1.shading().len(), 8);
        assert_eq!(cat[0].q1.shading(), cat[0].q2.shading());
    }

    #[test]
    fn all_chains_close() {
        for report in validate_symmetry_derivations(&builtin_catalog()) {
            assert!(report.pass, "{}: {:?}", report.chain, report.mismatches);
        }
    }

    #[test]
    fn frames_are_contiguous() {
        let cat = builtin_catalog();
        let fr = frames(&cat);
        assert_eq!(fr.len(), 22);
        let members: usize = fr.iter().map(|(_, m)| m.len()).sum();
        assert_eq!(members, 58);
    }
}
