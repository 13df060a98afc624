//! Brute-force reference implementations over explicit element sets.
//!
//! Everything here works by product closure and exhaustive scanning — no
//! stabilizer chains, no transversals — so these functions serve as
//! independent cross-checks for the chain-backed engine. They are meant for
//! desk-size groups and are deliberately simple rather than fast.
//!
//! All functions assume their inputs share one degree; element-set results
//! come back sorted, so equal subgroups compare equal as vectors.

use crate::error::GroupError;
use crate::perm::Permutation;
use std::collections::HashSet;

/// Closes `gens` under products, identity included. Fails once the closure
/// passes `cap` elements.
pub fn closure(degree: usize, gens: &[Permutation], cap: u64) -> Result<Vec<Permutation>, GroupError> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut work: Vec<Permutation> = vec![Permutation::identity(degree)];
    seen.insert(work[0].clone());
    while let Some(g) = work.pop() {
        for s in gens {
            if s.degree() != degree {
                return Err(GroupError::DegreeMismatch(degree, s.degree()));
            }
            let next = g.compose(s)?;
            if seen.insert(next.clone()) {
                if seen.len() as u64 > cap {
                    return Err(GroupError::CapExceeded {
                        order: seen.len() as u128,
                        cap,
                    });
                }
                work.push(next);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Closes an arbitrary subset of a finite group under products. Inverses come
/// for free because every element has finite order.
fn close_subset(degree: usize, seed: &HashSet<Permutation>) -> Vec<Permutation> {
    let mut seen = seed.clone();
    seen.insert(Permutation::identity(degree));
    let mut work: Vec<Permutation> = seen.iter().cloned().collect();
    let gens: Vec<Permutation> = seed.iter().cloned().collect();
    while let Some(g) = work.pop() {
        for s in &gens {
            let next = g.mul(s);
            if seen.insert(next.clone()) {
                work.push(next);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    out
}

/// Subgroup generated by `seed` inside a group given as its element set.
pub fn generated_subgroup(degree: usize, seed: &[Permutation]) -> Vec<Permutation> {
    let set: HashSet<Permutation> = seed.iter().cloned().collect();
    close_subset(degree, &set)
}

/// Normal closure of `seed` in the group with element set `elems`: all
/// conjugates of the seed's cyclic subgroups, closed under products.
pub fn normal_closure(degree: usize, elems: &[Permutation], seed: &[Permutation]) -> Vec<Permutation> {
    let mut conjugates: HashSet<Permutation> = HashSet::new();
    for s in seed {
        for g in elems {
            conjugates.insert(s.conjugated_by(g));
        }
    }
    close_subset(degree, &conjugates)
}

/// Every normal subgroup of the group with element set `elems`.
///
/// Atoms are the normal closures of single elements; every normal subgroup is
/// a join of the atoms below it, so closing the atom set under pairwise joins
/// enumerates the full normal lattice. Results are sorted by order, then by
/// element list.
pub fn normal_subgroups(degree: usize, elems: &[Permutation]) -> Vec<Vec<Permutation>> {
    let mut found: HashSet<Vec<Permutation>> = HashSet::new();
    found.insert(vec![Permutation::identity(degree)]);
    for x in elems {
        if !x.is_identity() {
            found.insert(normal_closure(degree, elems, std::slice::from_ref(x)));
        }
    }
    loop {
        let snapshot: Vec<Vec<Permutation>> = found.iter().cloned().collect();
        let mut grew = false;
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                let mut seed: HashSet<Permutation> = snapshot[i].iter().cloned().collect();
                seed.extend(snapshot[j].iter().cloned());
                let join = close_subset(degree, &seed);
                if found.insert(join) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<Vec<Permutation>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Elements of `elems` normalizing the subgroup with element set `sub`.
pub fn normalizer(elems: &[Permutation], sub: &[Permutation]) -> Vec<Permutation> {
    let set: HashSet<&Permutation> = sub.iter().collect();
    let mut out: Vec<Permutation> = elems
        .iter()
        .filter(|g| sub.iter().all(|s| set.contains(&s.conjugated_by(g))))
        .cloned()
        .collect();
    out.sort();
    out
}

/// Elements of `elems` commuting with every element of `sub`.
pub fn centralizer(elems: &[Permutation], sub: &[Permutation]) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = elems
        .iter()
        .filter(|g| sub.iter().all(|s| g.mul(s) == s.mul(g)))
        .cloned()
        .collect();
    out.sort();
    out
}

/// Whether the subgroup with element set `sub` is normal in `elems`.
pub fn is_normal(elems: &[Permutation], sub: &[Permutation]) -> bool {
    let set: HashSet<&Permutation> = sub.iter().collect();
    elems
        .iter()
        .all(|g| sub.iter().all(|s| set.contains(&s.conjugated_by(g))))
}

/// Derived subgroup of the group with element set `elems`: the set of all
/// commutators is conjugation-closed, so closing it under products suffices.
pub fn derived_subgroup(degree: usize, elems: &[Permutation]) -> Vec<Permutation> {
    let mut commutators: HashSet<Permutation> = HashSet::new();
    for a in elems {
        for b in elems {
            commutators.insert(a.inverse().mul(&b.inverse()).mul(a).mul(b));
        }
    }
    close_subset(degree, &commutators)
}

/// Every distinct subgroup generated by at most `max_gens` elements of
/// `elems`. Complete for groups whose every subgroup is `max_gens`-generated;
/// callers pick `max_gens` accordingly.
pub fn subgroups_generated_by(degree: usize, elems: &[Permutation], max_gens: usize) -> Vec<Vec<Permutation>> {
    let mut found: HashSet<Vec<Permutation>> = HashSet::new();
    found.insert(vec![Permutation::identity(degree)]);
    let mut stack: Vec<Vec<&Permutation>> = vec![Vec::new()];
    while let Some(chosen) = stack.pop() {
        if chosen.len() == max_gens {
            continue;
        }
        let start = chosen
            .last()
            .map(|last| elems.iter().position(|e| &e == last).unwrap() + 1)
            .unwrap_or(0);
        for e in &elems[start..] {
            let mut next = chosen.clone();
            next.push(e);
            let seed: HashSet<Permutation> = next.iter().map(|p| (*p).clone()).collect();
            found.insert(close_subset(degree, &seed));
            stack.push(next);
        }
    }
    let mut out: Vec<Vec<Permutation>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    fn elems(gens: &[&str], degree: usize) -> Vec<Permutation> {
        let gens: Vec<_> = gens.iter().map(|t| p(t, degree)).collect();
        closure(degree, &gens, 20_000).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(elems(&["(1 2 3)", "(1 2)"], 3).len(), 6); // S3
        assert_eq!(elems(&["(1 2 3 4)", "(1 3)"], 4).len(), 8); // D8
        assert_eq!(elems(&["(1 2 3 4 5)", "(1 2 3)"], 5).len(), 60); // A5
        assert_eq!(elems(&["(1 2)", "(1 2 3 4)"], 4).len(), 24); // S4
    }

    #[test]
    fn closure_respects_cap() {
        let gens = [p("(1 2 3 4 5)", 5), p("(1 2 3)", 5)];
        assert!(matches!(
            closure(5, &gens, 59),
            Err(GroupError::CapExceeded { .. })
        ));
    }

    #[test]
    fn normal_subgroup_lattices() {
        let s3 = elems(&["(1 2 3)", "(1 2)"], 3);
        let normals = normal_subgroups(3, &s3);
        assert_eq!(
            normals.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 3, 6]
        );

        let s4 = elems(&["(1 2)", "(1 2 3 4)"], 4);
        let normals = normal_subgroups(4, &s4);
        assert_eq!(
            normals.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 4, 12, 24]
        );

        let a5 = elems(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let normals = normal_subgroups(5, &a5);
        assert_eq!(
            normals.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 60]
        );
    }

    #[test]
    fn normalizer_and_centralizer_in_s4() {
        let s4 = elems(&["(1 2)", "(1 2 3 4)"], 4);
        // ⟨(1 2 3 4)⟩ has normalizer D8 and centralizer itself.
        let c4 = generated_subgroup(4, &[p("(1 2 3 4)", 4)]);
        assert_eq!(c4.len(), 4);
        assert_eq!(normalizer(&s4, &c4).len(), 8);
        assert_eq!(centralizer(&s4, &c4), c4);
        // The double transposition subgroup is normal.
        let v4 = generated_subgroup(4, &[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]);
        assert!(is_normal(&s4, &v4));
        assert!(!is_normal(&s4, &c4));
    }

    #[test]
    fn derived_subgroups() {
        let s4 = elems(&["(1 2)", "(1 2 3 4)"], 4);
        assert_eq!(derived_subgroup(4, &s4).len(), 12); // A4
        let a4 = derived_subgroup(4, &s4);
        assert_eq!(derived_subgroup(4, &a4).len(), 4); // V4
        let d8 = elems(&["(1 2 3 4)", "(1 3)"], 4);
        assert_eq!(derived_subgroup(4, &d8).len(), 2);
    }

    #[test]
    fn normal_closure_of_transposition_in_s4() {
        let s4 = elems(&["(1 2)", "(1 2 3 4)"], 4);
        let ncl = normal_closure(4, &s4, &[p("(1 2)", 4)]);
        assert_eq!(ncl.len(), 24); // transpositions generate all of S4
        let ncl = normal_closure(4, &s4, &[p("(1 2)(3 4)", 4)]);
        assert_eq!(ncl.len(), 4); // the double transpositions plus identity
        let ncl = normal_closure(4, &s4, &[p("(1 2 3)", 4)]);
        assert_eq!(ncl.len(), 12); // A4
    }

    #[test]
    fn subgroup_enumeration_of_d8() {
        let d8 = elems(&["(1 2 3 4)", "(1 3)"], 4);
        let subs = subgroups_generated_by(4, &d8, 2);
        // D8 has exactly 10 subgroups, all 2-generated.
        assert_eq!(subs.len(), 10);
        let orders: Vec<usize> = subs.iter().map(Vec::len).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 2, 2, 4, 4, 4, 8]);
    }
}
