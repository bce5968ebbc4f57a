//! Explicit maps on `S_n` that swap the occurrence counts of a pattern
//! pair, and a harness that checks them exhaustively.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{Method, PatternPair};
use crate::closed_forms::binomial;
use crate::error::{Error, Result};
use crate::mesh::{count_occurrences, first_occurrence, joint_counts, occurrences, MeshPattern};
use crate::perm::{enumerate_sn, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Complement,
    Reverse,
    /// `123...` and `321...` prefixes exchanged.
    SwapPrefix,
    /// `12...n` and `n2...1` exchanged.
    SwapEnds,
    /// `1...n` and `n...1` exchanged, interior kept.
    SwapFirstLast,
    /// Entries at the shared first and third occurrence positions exchanged.
    SwapFirstWithT,
    /// Repeated swap of the outer entries of the first `q2` occurrence.
    IteratedSwap,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Complement => "complement",
            MapKind::Reverse => "reverse",
            MapKind::SwapPrefix => "swap_prefix",
            MapKind::SwapEnds => "swap_ends",
            MapKind::SwapFirstLast => "swap_first_last",
            MapKind::SwapFirstWithT => "swap_first_with_t",
            MapKind::IteratedSwap => "iterated_swap",
        }
    }

    /// Whether the map exchanges the two occurrence counts (as opposed to
    /// transporting avoiders of `q1` to avoiders of `q2`).
    pub fn swaps_counts(self) -> bool {
        self != MapKind::IteratedSwap
    }
}

/// The map attached to a catalog pair, if it has one.
pub fn map_for_pair(pair: &PatternPair) -> Result<MapKind> {
    let kind = match (pair.method, pair.id.as_str()) {
        (Method::ComplementReverse, _) => {
            if pair.q1.complement() == pair.q2 {
                MapKind::Complement
            } else if pair.q1.reverse() == pair.q2 {
                MapKind::Reverse
            } else {
                return Err(Error::Invariant {
                    id: pair.id.clone(),
                    message: "neither complement nor reverse exchanges the patterns".into(),
                });
            }
        }
        (_, "S9") => MapKind::SwapPrefix,
        (_, "S11") => MapKind::SwapEnds,
        (_, "S13" | "S15") => MapKind::SwapFirstLast,
        (_, "S17") => MapKind::SwapFirstWithT,
        (_, "S21") => MapKind::IteratedSwap,
        _ => {
            return Err(Error::Unknown {
                kind: "map for pair",
                id: pair.id.clone(),
            })
        }
    };
    Ok(kind)
}

pub fn apply_symmetry_map(pi: &Permutation, kind: MapKind) -> Result<Permutation> {
    match kind {
        MapKind::Complement => Ok(pi.complement()),
        MapKind::Reverse => Ok(pi.reverse()),
        other => Err(Error::InvalidInput(format!("{} is not a symmetry", other.name()))),
    }
}

fn starts_with(pi: &Permutation, prefix: &[u32]) -> bool {
    pi.values().starts_with(prefix)
}

pub fn map_prefix_swap(pi: &Permutation) -> Permutation {
    if pi.len() < 3 {
        return pi.clone();
    }
    if starts_with(pi, &[1, 2, 3]) || starts_with(pi, &[3, 2, 1]) {
        pi.swap_positions(1, 3)
    } else {
        pi.clone()
    }
}

pub fn map_end_swap(pi: &Permutation) -> Permutation {
    let n = pi.len();
    if n < 3 {
        return pi.clone();
    }
    let top = n as u32;
    let v = pi.values();
    let forward = v[0] == 1 && v[1] == 2 && v[n - 1] == top;
    let backward = v[0] == top && v[1] == 2 && v[n - 1] == 1;
    if forward || backward {
        pi.swap_positions(1, n)
    } else {
        pi.clone()
    }
}

pub fn map_first_last_swap(pi: &Permutation) -> Permutation {
    let n = pi.len();
    if n < 2 {
        return pi.clone();
    }
    let top = n as u32;
    let (first, last) = (pi.at(1), pi.at(n));
    if (first == 1 && last == top) || (first == top && last == 1) {
        pi.swap_positions(1, n)
    } else {
        pi.clone()
    }
}

/// First and last positions shared by every occurrence of `q`, if any occur.
fn shared_outer_positions(pi: &Permutation, q: &MeshPattern) -> Result<Option<(usize, usize)>> {
    let occ = occurrences(pi, q);
    let Some(head) = occ.first() else {
        return Ok(None);
    };
    let (first, last) = (head[0], head[head.len() - 1]);
    if occ.iter().any(|o| o[0] != first || o[o.len() - 1] != last) {
        return Err(Error::Internal(format!(
            "occurrences of {q} in {pi} do not share outer positions: {occ:?}"
        )));
    }
    Ok(Some((first, last)))
}

/// The S17 map: swap the entries at the shared first and third positions of
/// the occurrences of whichever pattern occurs.
pub fn map_shared_third_swap(pi: &Permutation, q1: &MeshPattern, q2: &MeshPattern) -> Result<Permutation> {
    for q in [q1, q2] {
        if let Some((first, t)) = shared_outer_positions(pi, q)? {
            return Ok(pi.swap_positions(first, t));
        }
    }
    Ok(pi.clone())
}

/// Result of the iterated swap: the image and the number of swaps performed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedSwap {
    pub image: Permutation,
    pub steps: usize,
}

/// The S21 map on `S_n(q1)`: while `q2` occurs, swap the first and third
/// entries of its occurrence with the lexicographically least positions.
pub fn map_iterated_swap(pi: &Permutation, q1: &MeshPattern, q2: &MeshPattern) -> Result<IteratedSwap> {
    if count_occurrences(pi, q1) > 0 {
        return Err(Error::Domain(format!("{pi} contains {q1}")));
    }
    let guard = binomial(pi.len(), q2.len()) as usize + 1;
    let mut current = pi.clone();
    let mut trace = vec![current.to_string()];
    for steps in 0..=guard {
        match first_occurrence(&current, q2) {
            None => {
                return Ok(IteratedSwap {
                    image: current,
                    steps,
                })
            }
            Some(pos) => {
                current = current.swap_positions(pos[0], pos[pos.len() - 1]);
                trace.push(current.to_string());
            }
        }
    }
    Err(Error::Internal(format!(
        "iterated swap from {pi} did not stop within {guard} steps: {}",
        trace.join(" -> ")
    )))
}

/// Applies a count-swapping map.
pub fn apply_map(kind: MapKind, pi: &Permutation, pair: &PatternPair) -> Result<Permutation> {
    match kind {
        MapKind::Complement | MapKind::Reverse => apply_symmetry_map(pi, kind),
        MapKind::SwapPrefix => Ok(map_prefix_swap(pi)),
        MapKind::SwapEnds => Ok(map_end_swap(pi)),
        MapKind::SwapFirstLast => Ok(map_first_last_swap(pi)),
        MapKind::SwapFirstWithT => map_shared_third_swap(pi, &pair.q1, &pair.q2),
        MapKind::IteratedSwap => map_iterated_swap(pi, &pair.q1, &pair.q2).map(|r| r.image),
    }
}

fn fail(msg: String, slot: &mut Option<String>) {
    if slot.is_none() {
        *slot = Some(msg);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BijectionReport {
    pub map: String,
    pub pair: String,
    pub n: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
    pub stats: BTreeMap<String, Value>,
}

/// Checks `kind` over all of `S_n` for `pair`.
///
/// Count-swapping maps must be injective and send counts `(k, ℓ)` to
/// `(ℓ, k)`. The iterated swap must send `S_n(q1)` injectively into
/// `S_n(q2)`, and the two avoider sets must have equal size.
pub fn verify_bijection(kind: MapKind, pair: &PatternPair, n: usize) -> Result<BijectionReport> {
    let mut stats = BTreeMap::new();
    let mut counterexample = None;
    let mut images: HashMap<Permutation, Permutation> = HashMap::new();
    let mut collisions = 0u64;
    if kind.swaps_counts() {
        let mut domain = 0u64;
        let mut involution = true;
        let mut moved = 0u64;
        for pi in enumerate_sn(n)? {
            domain += 1;
            let image = match apply_map(kind, &pi, pair) {
                Ok(image) => image,
                Err(e) => {
                    fail(format!("{pi}: {e}"), &mut counterexample);
                    continue;
                }
            };
            let (k, l) = joint_counts(&pi, &pair.q1, &pair.q2);
            let swapped = joint_counts(&image, &pair.q1, &pair.q2);
            if swapped != (l, k) {
                fail(
                    format!("{pi} -> {image}: counts ({k},{l}) -> ({},{})", swapped.0, swapped.1),
                    &mut counterexample,
                );
            }
            if image != pi {
                moved += 1;
            }
            match apply_map(kind, &image, pair) {
                Ok(back) if back == pi => {}
                _ => involution = false,
            }
            if let Some(first) = images.insert(image.clone(), pi.clone()) {
                collisions += 1;
                fail(format!("{first} and {pi} both map to {image}"), &mut counterexample);
            }
        }
        stats.insert("domain".into(), json!(domain));
        stats.insert("moved".into(), json!(moved));
        stats.insert("involution".into(), json!(involution));
        if kind == MapKind::SwapFirstWithT {
            stats.insert("shared_outer_positions".into(), json!(counterexample.is_none()));
        }
    } else {
        let mut max_steps = 0usize;
        let mut domain = 0u64;
        let mut codomain = 0u64;
        for pi in enumerate_sn(n)? {
            if count_occurrences(&pi, &pair.q2) == 0 {
                codomain += 1;
            }
            if count_occurrences(&pi, &pair.q1) > 0 {
                continue;
            }
            domain += 1;
            match map_iterated_swap(&pi, &pair.q1, &pair.q2) {
                Ok(IteratedSwap { image, steps }) => {
                    max_steps = max_steps.max(steps);
                    if count_occurrences(&image, &pair.q2) > 0 {
                        fail(format!("{pi} -> {image}: image contains q2"), &mut counterexample);
                    }
                    if let Some(first) = images.insert(image.clone(), pi.clone()) {
                        collisions += 1;
                        fail(format!("{first} and {pi} both map to {image}"), &mut counterexample);
                    }
                }
                Err(e) => fail(format!("{pi}: {e}"), &mut counterexample),
            }
        }
        if domain != codomain {
            fail(
                format!("|S_{n}(q1)| = {domain} but |S_{n}(q2)| = {codomain}"),
                &mut counterexample,
            );
        }
        let bound = binomial(n, pair.q2.len());
        stats.insert("avoiders_q1".into(), json!(domain));
        stats.insert("avoiders_q2".into(), json!(codomain));
        stats.insert("max_steps".into(), json!(max_steps));
        stats.insert("step_bound".into(), json!(bound));
        if max_steps as u64 > bound {
            fail(
                format!("needed {max_steps} swaps, more than C({n},{}) = {bound}", pair.q2.len()),
                &mut counterexample,
            );
        }
    }
    stats.insert("collisions".into(), json!(collisions));
    Ok(BijectionReport {
        map: kind.name().to_string(),
        pair: pair.id.clone(),
        n,
        pass: counterexample.is_none(),
        counterexample,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_catalog, find};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn template_maps() {
        assert_eq!(map_prefix_swap(&p("12345")), p("32145"));
        assert_eq!(map_prefix_swap(&p("32145")), p("12345"));
        assert_eq!(map_prefix_swap(&p("21345")), p("21345"));
        assert_eq!(map_end_swap(&p("1234")), p("4231"));
        assert_eq!(map_end_swap(&p("4231")), p("1234"));
        assert_eq!(map_end_swap(&p("2134")), p("2134"));
        assert_eq!(map_first_last_swap(&p("1324")), p("4321"));
        assert_eq!(map_first_last_swap(&p("4321")), p("1324"));
        assert_eq!(map_first_last_swap(&p("2134")), p("2134"));
        assert_eq!(apply_symmetry_map(&p("21"), MapKind::Complement).unwrap(), p("12"));
        assert!(apply_symmetry_map(&p("21"), MapKind::SwapEnds).is_err());
    }

    #[test]
    fn iterated_swap_examples() {
        let cat = builtin_catalog();
        let s21 = find(&cat, "S21").unwrap();
        let r = map_iterated_swap(&p("321"), &s21.q1, &s21.q2).unwrap();
        assert_eq!(r.image, p("123"));
        assert_eq!(r.steps, 1);
        assert!(map_iterated_swap(&p("123"), &s21.q1, &s21.q2).is_err());
        let fixed = p("213");
        assert_eq!(map_iterated_swap(&fixed, &s21.q1, &s21.q2).unwrap().image, fixed);
    }

    #[test]
    fn symmetry_maps_found_for_simple_pairs() {
        let cat = builtin_catalog();
        for pair in cat.iter().filter(|p| p.method == Method::ComplementReverse) {
            let kind = map_for_pair(pair).unwrap();
            assert!(verify_bijection(kind, pair, 5).unwrap().pass, "{}", pair.id);
        }
        let s19 = find(&cat, "S19").unwrap();
        assert!(map_for_pair(s19).is_err());
    }

    #[test]
    fn s4_complement_swaps_identity() {
        let cat = builtin_catalog();
        let s4 = find(&cat, "S4").unwrap();
        let pi = p("123");
        let image = apply_symmetry_map(&pi, map_for_pair(s4).unwrap()).unwrap();
        assert_eq!(image, p("321"));
        let (k, l) = joint_counts(&pi, &s4.q1, &s4.q2);
        assert_eq!(joint_counts(&image, &s4.q1, &s4.q2), (l, k));
    }
}
