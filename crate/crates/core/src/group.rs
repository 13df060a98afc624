//! Permutation groups backed by a base and strong generating set.
//!
//! Construction runs a deterministic Schreier–Sims: base points are chosen as
//! the smallest point moved by the generators being placed at each new level,
//! orbits are explored breadth-first with generators in a fixed order, and no
//! randomization is involved anywhere, so the same generator sequence always
//! produces the same chain, the same order, and the same element enumeration.

use crate::bitset::ElementBitset;
use crate::error::GroupError;
use crate::kernel;
use crate::perm::{Permutation, MAX_DEGREE};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// One level of the stabilizer chain: a base point, the strong generators of
/// this level's stabilizer subgroup, and a transversal `u_p` with
/// `point^(u_p) = p` for each orbit point `p`.
struct Level {
    point: u16,
    gens: Vec<Permutation>,
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<u16>,
}

impl Level {
    fn new(point: u16, degree: usize) -> Self {
        Level {
            point,
            gens: Vec::new(),
            transversal: vec![None; degree],
            orbit: Vec::new(),
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.orbit.clear();
        self.orbit.push(self.point);
        self.transversal[self.point as usize] = Some(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            let u_p = self.transversal[p as usize].clone().unwrap();
            for s in &self.gens {
                let q = s.image(p);
                if self.transversal[q as usize].is_none() {
                    self.transversal[q as usize] = Some(u_p.mul(s));
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// Sifts `g` through `chain[start..]`. Returns the level at which sifting
/// stalled (or `chain.len()` if it ran through) together with the residue.
/// `g` must fix the base points of every level before `start`.
fn sift_from(chain: &[Level], start: usize, mut g: Permutation) -> (usize, Permutation) {
    for (i, level) in chain.iter().enumerate().skip(start) {
        let p = g.image(level.point);
        match &level.transversal[p as usize] {
            None => return (i, g),
            Some(u_p) => g = g.mul(&u_p.inverse()),
        }
    }
    (chain.len(), g)
}

/// Scans level `i`'s Schreier generators in orbit-then-generator order and
/// returns the first one whose sift through the deeper levels leaves a
/// nontrivial residue, along with the level the sift stalled at.
fn failing_schreier(chain: &[Level], i: usize) -> Option<(usize, Permutation)> {
    let level = &chain[i];
    for &p in &level.orbit {
        let u_p = level.transversal[p as usize].as_ref().unwrap();
        for s in &level.gens {
            let u_q = level.transversal[s.image(p) as usize].as_ref().unwrap();
            let schreier = u_p.mul(s).mul(&u_q.inverse());
            if schreier.is_identity() {
                continue;
            }
            let (stall, residue) = sift_from(chain, i + 1, schreier);
            if !residue.is_identity() {
                return Some((stall, residue));
            }
        }
    }
    None
}

/// Deterministic Schreier–Sims. Generator lists below level 0 are cumulative:
/// a strong generator stalling at level `stall` fixes the first `stall` base
/// points, so it joins every level from 1 through `stall` — keeping each
/// level's group contained in the one above it. Verification walks bottom-up;
/// an addition resumes verification at the stall level, below which nothing
/// changed.
fn schreier_sims(degree: usize, gens: &[Permutation]) -> Vec<Level> {
    let mut chain: Vec<Level> = Vec::new();
    if gens.is_empty() {
        return chain;
    }
    // Base point for the first level: smallest point moved by any generator.
    let first = gens.iter().filter_map(|g| g.smallest_moved()).min().unwrap();
    chain.push(Level::new(first, degree));
    for g in gens {
        chain[0].gens.push(g.clone());
    }
    chain[0].rebuild_orbit(degree);
    let mut i = 0;
    loop {
        match failing_schreier(&chain, i) {
            Some((stall, residue)) => {
                if stall == chain.len() {
                    let point = residue.smallest_moved().expect("non-identity moves a point");
                    chain.push(Level::new(point, degree));
                }
                for level in chain[1..=stall].iter_mut() {
                    level.gens.push(residue.clone());
                    level.rebuild_orbit(degree);
                }
                i = stall;
            }
            None => {
                if i == 0 {
                    return chain;
                }
                i -= 1;
            }
        }
    }
}

/// Sorted enumeration of a group's elements; positions in this index are the
/// canonical element identifiers used by bitset keys and memo tables.
pub struct ElementIndex {
    elems: Vec<Permutation>,
}

impl ElementIndex {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Element at position `i`; ordering is lexicographic by image table, so
    /// position 0 is always the identity.
    pub fn get(&self, i: usize) -> &Permutation {
        &self.elems[i]
    }

    pub fn position(&self, p: &Permutation) -> Option<usize> {
        self.elems.binary_search(p).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.elems.iter()
    }
}

/// Cached lattice data hanging off a group. The cached subgroups carry no
/// back-reference to the owning group, so no `Arc` cycles form.
#[derive(Default)]
pub(crate) struct LatticeCaches {
    pub(crate) overgroups: Mutex<HashMap<ElementBitset, Arc<Vec<SubgroupData>>>>,
    pub(crate) normals: OnceLock<Arc<Vec<SubgroupData>>>,
}

/// A subgroup stored ambient-free: the bare group plus its position bitset
/// relative to the ambient element index.
#[derive(Clone)]
pub(crate) struct SubgroupData {
    pub(crate) group: Arc<Group>,
    pub(crate) key: ElementBitset,
}

/// A finite permutation group with a precomputed stabilizer chain.
///
/// Groups are immutable once built and are shared via `Arc`; element indexes
/// and lattice results are cached internally on first use.
pub struct Group {
    degree: usize,
    gens: Vec<Permutation>,
    chain: Vec<Level>,
    order: u128,
    index: OnceLock<ElementIndex>,
    pub(crate) lattice: LatticeCaches,
}

impl Group {
    /// Builds the group generated by `gens` (all of one degree). Duplicate
    /// and identity generators are dropped; the remaining sequence fixes the
    /// deterministic chain.
    pub fn from_generators(gens: &[Permutation]) -> Result<Group, GroupError> {
        let Some(first) = gens.first() else {
            return Err(GroupError::EmptyGenerators);
        };
        let degree = first.degree();
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(GroupError::DegreeOutOfRange(degree));
        }
        let mut cleaned: Vec<Permutation> = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(degree, g.degree()));
            }
            if !g.is_identity() && !cleaned.contains(g) {
                cleaned.push(g.clone());
            }
        }
        let chain = schreier_sims(degree, &cleaned);
        let mut order: u128 = 1;
        for level in &chain {
            order = order
                .checked_mul(level.orbit.len() as u128)
                .ok_or(GroupError::OrderOverflow)?;
        }
        Ok(Group {
            degree,
            gens: cleaned,
            chain,
            order,
            index: OnceLock::new(),
            lattice: LatticeCaches::default(),
        })
    }

    pub fn from_generators_arc(gens: &[Permutation]) -> Result<Arc<Group>, GroupError> {
        Ok(Arc::new(Group::from_generators(gens)?))
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Arc<Group> {
        Arc::new(Group {
            degree,
            gens: Vec::new(),
            chain: Vec::new(),
            order: 1,
            index: OnceLock::new(),
            lattice: LatticeCaches::default(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// The cleaned generator sequence the chain was built from.
    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Base points of the stabilizer chain (0-indexed), in chain order.
    pub fn base(&self) -> Vec<u16> {
        self.chain.iter().map(|l| l.point).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Membership test by sifting. Degree mismatches are an error; sifting
    /// itself never fails.
    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        if p.degree() != self.degree {
            return Err(GroupError::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.is_member(p))
    }

    #[inline]
    pub(crate) fn is_member(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (stall, residue) = sift_from(&self.chain, 0, p.clone());
        stall == self.chain.len() && residue.is_identity()
    }

    /// The canonical sorted element enumeration, built on first use.
    ///
    /// Fails with `CapExceeded` when the order is larger than `cap`; the
    /// cached index is reused by later calls with any sufficient cap.
    pub fn element_index(&self, cap: u64) -> Result<&ElementIndex, GroupError> {
        if self.order > cap as u128 {
            return Err(GroupError::CapExceeded {
                order: self.order,
                cap,
            });
        }
        Ok(self.index.get_or_init(|| {
            let mut elems = vec![Permutation::identity(self.degree)];
            for level in self.chain.iter().rev() {
                let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
                for &p in &level.orbit {
                    let u = level.transversal[p as usize].as_ref().unwrap();
                    for e in &elems {
                        next.push(e.mul(u));
                    }
                }
                elems = next;
            }
            kernel::sort_vec(&mut elems);
            debug_assert_eq!(elems.len() as u128, self.order);
            ElementIndex { elems }
        }))
    }
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("generators", &self.gens)
            .finish()
    }
}

/// Whether two groups of the same degree have the same element set.
pub fn same_element_set(a: &Group, b: &Group) -> bool {
    a.degree() == b.degree()
        && a.order() == b.order()
        && b.generators().iter().all(|g| a.is_member(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    fn group(gens: &[&str], degree: usize) -> Group {
        let gens: Vec<_> = gens.iter().map(|t| p(t, degree)).collect();
        Group::from_generators(&gens).unwrap()
    }

    #[test]
    fn orders_of_known_groups() {
        assert_eq!(group(&["(1 2 3 4 5)", "(1 2 3)"], 5).order(), 60); // A5
        assert_eq!(group(&["(1 2)", "(1 2 3 4 5)"], 5).order(), 120); // S5
        assert_eq!(group(&["(1 2 3 4)", "(1 3)"], 4).order(), 8); // D8
        assert_eq!(group(&["(1 2 3)", "(4 5 6)"], 6).order(), 9); // C3 × C3
        assert_eq!(group(&["(1 2 3 4 5 6 7)"], 7).order(), 7);
    }

    #[test]
    fn trivial_group_and_identity_generators() {
        let t = Group::trivial(4);
        assert_eq!(t.order(), 1);
        assert!(t.is_member(&Permutation::identity(4)));
        assert!(!t.is_member(&p("(1 2)", 4)));
        // Generating with only identities collapses to the trivial group.
        let g = Group::from_generators(&[Permutation::identity(4)]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn membership_in_a5() {
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        assert!(a5.is_member(&p("(1 2)(3 4)", 5)));
        assert!(a5.is_member(&p("(1 3 5)", 5)));
        assert!(!a5.is_member(&p("(1 2)", 5))); // odd
        assert!(!a5.is_member(&p("(1 2 3 4)", 5))); // odd
    }

    #[test]
    fn element_index_is_sorted_and_starts_at_identity() {
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        let idx = s4.element_index(20000).unwrap();
        assert_eq!(idx.len(), 24);
        assert!(idx.get(0).is_identity());
        for i in 1..idx.len() {
            assert!(idx.get(i - 1) < idx.get(i), "index not strictly sorted");
        }
        for i in 0..idx.len() {
            assert_eq!(idx.position(idx.get(i)), Some(i));
        }
        assert!(idx.iter().all(|e| e.degree() == 4));
        assert!(idx.position(&p("(1 2)", 4)).is_some());
    }

    #[test]
    fn element_index_respects_cap() {
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        assert!(matches!(
            s4.element_index(23),
            Err(GroupError::CapExceeded { order: 24, cap: 23 })
        ));
        assert!(s4.element_index(24).is_ok());
    }

    #[test]
    fn construction_is_deterministic() {
        let gens = ["(1 2 3 4 5 6 7)", "(2 3)(4 7)"];
        let a = group(&gens, 7);
        let b = group(&gens, 7);
        assert_eq!(a.base(), b.base());
        assert_eq!(a.order(), b.order());
        let (ia, ib) = (a.element_index(20000).unwrap(), b.element_index(20000).unwrap());
        for i in 0..ia.len() {
            assert_eq!(ia.get(i), ib.get(i));
        }
    }

    #[test]
    fn first_base_point_is_smallest_moved() {
        let g = group(&["(3 4)", "(1 2)"], 4);
        assert_eq!(g.base()[0], 0); // point 1, 0-indexed
    }

    #[test]
    fn same_element_set_detects_equal_groups() {
        let a = group(&["(1 2 3)", "(1 2)"], 3);
        let b = group(&["(1 3)", "(2 3)"], 3);
        assert!(same_element_set(&a, &b));
        let c = group(&["(1 2 3)"], 3);
        assert!(!same_element_set(&a, &c));
    }
}
