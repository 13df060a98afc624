//! Named generator sets: a JSON Lines corpus format and the built-in
//! collection of desk-size groups.
//!
//! A corpus file holds one JSON object per line with fields `name`, `degree`,
//! `generators` (cycle-notation strings), and optional `expected_order` and
//! `tags`. Loading validates everything up front: names are unique,
//! generators parse at the stated degree, and a stated order must match the
//! constructed group.

use crate::error::GroupError;
use crate::group::Group;
use crate::naive;
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// One named group: generators in cycle notation at a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<Vec<String>>,
}

/// Errors raised while loading or validating a corpus.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {source}")]
    Malformed {
        line: usize,
        source: serde_json::Error,
    },

    #[error("line {line} ({name}): {source}")]
    BadGenerators {
        line: usize,
        name: String,
        source: GroupError,
    },

    #[error("line {line}: duplicate entry name {name:?}")]
    DuplicateName { line: usize, name: String },

    #[error("{name}: expected order {expected} but the generators produce {actual}")]
    OrderMismatch {
        name: String,
        expected: u64,
        actual: u128,
    },
}

impl CorpusEntry {
    /// Parse the generator strings at this entry's degree.
    pub fn permutations(&self) -> Result<Vec<Permutation>, GroupError> {
        self.generators
            .iter()
            .map(|text| Permutation::parse(text, self.degree))
            .collect()
    }

    /// Construct the group. Entries from a loaded corpus always succeed.
    pub fn group(&self) -> Result<Arc<Group>, GroupError> {
        let gens = self.permutations()?;
        if gens.iter().all(|g| g.is_identity()) {
            return Ok(Group::trivial(self.degree));
        }
        Group::from_generators_arc(&gens)
    }
}

/// Parse and validate a JSON Lines corpus. Blank lines are ignored; errors
/// carry the 1-based line number. An empty document is an empty corpus.
pub fn load_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries: Vec<CorpusEntry> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let entry: CorpusEntry =
            serde_json::from_str(raw).map_err(|source| CorpusError::Malformed { line, source })?;
        if !seen.insert(entry.name.clone()) {
            return Err(CorpusError::DuplicateName {
                line,
                name: entry.name,
            });
        }
        let group = entry.group().map_err(|source| CorpusError::BadGenerators {
            line,
            name: entry.name.clone(),
            source,
        })?;
        if let Some(expected) = entry.expected_order {
            if group.order() != expected as u128 {
                return Err(CorpusError::OrderMismatch {
                    name: entry.name,
                    expected,
                    actual: group.order(),
                });
            }
        }
        entries.push(entry);
    }
    Ok(entries)
}

/// Render entries back to JSON Lines, one object per line.
pub fn serialize_corpus(entries: &[CorpusEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        out.push_str(&serde_json::to_string(entry).expect("corpus entries serialize"));
        out.push('\n');
    }
    out
}

/// Find an entry by name.
pub fn find_entry<'a>(entries: &'a [CorpusEntry], name: &str) -> Option<&'a CorpusEntry> {
    entries.iter().find(|e| e.name == name)
}

fn cycle(points: impl IntoIterator<Item = usize>) -> String {
    let mut out = String::from("(");
    for (i, p) in points.into_iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&p.to_string());
    }
    out.push(')');
    out
}

fn entry(
    name: &str,
    degree: usize,
    generators: Vec<String>,
    order: u64,
    tags: &[&str],
) -> CorpusEntry {
    CorpusEntry {
        name: name.to_string(),
        degree,
        generators,
        expected_order: Some(order),
        tags: if tags.is_empty() {
            None
        } else {
            Some(tags.iter().map(|t| t.to_string()).collect())
        },
    }
}

fn build_builtin() -> Vec<CorpusEntry> {
    let mut out = Vec::new();

    // Cyclic groups C1..C32.
    out.push(entry("C1", 1, vec!["()".to_string()], 1, &["cyclic"]));
    for n in 2..=32usize {
        out.push(entry(
            &format!("C{n}"),
            n,
            vec![cycle(1..=n)],
            n as u64,
            &["cyclic"],
        ));
    }

    // Dihedral groups D6..D32 of order 2n on n points (n = 3..16): rotation
    // plus the reflection fixing point 1.
    for n in 3..=16usize {
        let reflection: Vec<(usize, usize)> = (2..=n)
            .filter_map(|i| {
                let j = n + 2 - i;
                (i < j).then_some((i, j))
            })
            .collect();
        let mut text = String::new();
        for (i, j) in reflection {
            text.push_str(&cycle([i, j]));
        }
        out.push(entry(
            &format!("D{}", 2 * n),
            n,
            vec![cycle(1..=n), text],
            2 * n as u64,
            &["dihedral"],
        ));
    }

    // Elementary abelian groups as disjoint p-cycles.
    for (p, k) in [(2usize, 2u32), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3)] {
        let order = (p as u64).pow(k);
        let degree = p * k as usize;
        let gens: Vec<String> = (0..k as usize)
            .map(|block| cycle(block * p + 1..=(block + 1) * p))
            .collect();
        out.push(entry(
            &format!("E{order}"),
            degree,
            gens,
            order,
            &["elementary-abelian"],
        ));
    }

    // Symmetric groups S2..S6.
    out.push(entry("S2", 2, vec![cycle([1, 2])], 2, &["symmetric"]));
    for n in 3..=6usize {
        let order: u64 = (1..=n as u64).product();
        out.push(entry(
            &format!("S{n}"),
            n,
            vec![cycle([1, 2]), cycle(1..=n)],
            order,
            &["symmetric"],
        ));
    }

    // Alternating groups A3..A6.
    out.push(entry("A3", 3, vec![cycle([1, 2, 3])], 3, &["alternating"]));
    for n in 4..=6usize {
        let order: u64 = (1..=n as u64).product::<u64>() / 2;
        let long: String = if n % 2 == 1 {
            cycle(1..=n)
        } else {
            cycle(2..=n)
        };
        out.push(entry(
            &format!("A{n}"),
            n,
            vec![cycle([1, 2, 3]), long],
            order,
            &["alternating"],
        ));
    }

    // The double cover of A4 acting on the eight nonzero vectors of F3².
    out.push(entry(
        "SL23",
        8,
        vec!["(1 4 7)(2 8 5)".into(), "(1 6 2 3)(4 7 8 5)".into()],
        24,
        &["soluble"],
    ));

    // The simple group of order 168 on the projective line over F7.
    out.push(entry(
        "PSL27",
        8,
        vec!["(2 3 4 5 6 7 8)".into(), "(1 2)(3 8)(4 5)(6 7)".into()],
        168,
        &["simple"],
    ));

    // Quaternion group in its regular representation.
    out.push(entry(
        "Q8",
        8,
        vec!["(1 2 3 4)(5 6 7 8)".into(), "(1 5 3 7)(2 8 4 6)".into()],
        8,
        &["quaternion"],
    ));

    // Mixed-order soluble groups.
    out.push(entry(
        "F20",
        5,
        vec![cycle(1..=5), "(1 2 4 3)".into()],
        20,
        &["frobenius"],
    ));
    out.push(entry(
        "F21",
        7,
        vec![cycle(1..=7), "(1 2 4)(3 6 5)".into()],
        21,
        &["frobenius"],
    ));
    out.push(entry(
        "F42",
        7,
        vec![cycle(1..=7), "(1 3 2 6 4 5)".into()],
        42,
        &["frobenius"],
    ));
    out.push(entry(
        "F55",
        11,
        vec![cycle(1..=11), "(1 3 9 5 4)(2 6 7 10 8)".into()],
        55,
        &["frobenius"],
    ));
    out.push(entry(
        "C3:C4",
        7,
        vec!["(1 2 3)".into(), "(2 3)(4 5 6 7)".into()],
        12,
        &["metacyclic"],
    ));

    out
}

/// The built-in corpus. The first call validates every entry's stated order
/// against an element-by-element closure (all bundled groups are small
/// enough) and against the stabilizer chain, then caches the list.
pub fn builtin_corpus() -> &'static [CorpusEntry] {
    static BUILTIN: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    BUILTIN.get_or_init(|| {
        let entries = build_builtin();
        for e in &entries {
            let expected = e.expected_order.expect("built-in entries state orders") as u128;
            let gens = e.permutations().expect("built-in generators parse");
            if expected <= 2000 {
                let closed = naive::closure(e.degree, &gens, 2000)
                    .expect("built-in groups fit the closure bound");
                assert_eq!(
                    closed.len() as u128,
                    expected,
                    "{}: closure disagrees with the stated order",
                    e.name
                );
            }
            let group = e.group().expect("built-in groups construct");
            assert_eq!(
                group.order(),
                expected,
                "{}: stabilizer chain disagrees with the stated order",
                e.name
            );
        }
        entries
    })
}
