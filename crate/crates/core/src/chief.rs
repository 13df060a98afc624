//! The normal-subgroup lattice: minimal normal overgroups, the full lattice,
//! and chief series.
//!
//! A chief series is an ascending chain 1 = N₀ < N₁ < ⋯ < Nₖ = G of normal
//! subgroups of G in which each quotient Nᵢ₊₁/Nᵢ is a minimal normal subgroup
//! of G/Nᵢ — equivalently, Nᵢ₊₁ is a minimal normal overgroup of Nᵢ. Series
//! enumeration is a lazy depth-first walk over those edges, and the edge
//! computation is cached per group so repeated walks stay cheap.

use crate::bitset::ElementBitset;
use crate::error::GroupError;
use crate::group::{Group, SubgroupData};
use crate::kernel;
use crate::subgroup::{normal_closure_gens, Subgroup};
use crate::Caps;
use std::sync::Arc;

fn rebuild(ambient: &Arc<Group>, data: &[SubgroupData]) -> Vec<Subgroup> {
    data.iter()
        .map(|d| Subgroup::from_group_with_key(ambient.clone(), d.group.clone(), d.key.clone()))
        .collect()
}

impl Group {
    /// The inclusion-minimal normal subgroups of this group that properly
    /// contain `below`. Every element outside `below` seeds one candidate —
    /// the normal closure of `below` plus that element — and a minimal normal
    /// overgroup equals the candidate of each of its outside elements, so the
    /// inclusion-minimal candidates are exactly the answer.
    ///
    /// Results are sorted by (order, element key) and cached per `below`.
    pub fn minimal_normal_overgroups(
        self: &Arc<Group>,
        below: &Subgroup,
        caps: Caps,
    ) -> Result<Vec<Subgroup>, GroupError> {
        let below_key = below.key(caps)?.clone();
        if let Some(hit) = self.lattice.overgroups.lock().unwrap().get(&below_key) {
            return Ok(rebuild(self, hit));
        }
        let idx = self.element_index(caps.element)?;
        let outside: Vec<usize> =
            kernel::filter_positions(idx.len(), |pos| !below_key.contains(pos));
        let below_gens = below.generators().to_vec();
        let computed: Vec<Result<(Arc<Group>, ElementBitset), GroupError>> =
            kernel::map_positions(outside.len(), |i| {
                let mut seed = below_gens.clone();
                seed.push(idx.get(outside[i]).clone());
                let gens = normal_closure_gens(self, &seed)?;
                let m = Group::from_generators_arc(&gens)?;
                let m_idx = m.element_index(caps.element)?;
                let mut key = ElementBitset::empty(idx.len());
                for e in m_idx.iter() {
                    key.insert(idx.position(e).ok_or(GroupError::NotASubgroup)?);
                }
                Ok((m, key))
            });
        let mut candidates: Vec<(Arc<Group>, ElementBitset)> = Vec::with_capacity(computed.len());
        for c in computed {
            candidates.push(c?);
        }
        candidates.sort_by(|a, b| {
            a.0.order()
                .cmp(&b.0.order())
                .then_with(|| a.1.cmp(&b.1))
        });
        candidates.dedup_by(|a, b| a.1 == b.1);
        // Keep the inclusion-minimal candidates; the list is order-sorted, so
        // only earlier entries can sit inside a later one.
        let mut minimal: Vec<SubgroupData> = Vec::new();
        for (group, key) in candidates {
            if !minimal.iter().any(|m| m.key.is_subset(&key)) {
                minimal.push(SubgroupData { group, key });
            }
        }
        let out = rebuild(self, &minimal);
        self.lattice
            .overgroups
            .lock()
            .unwrap()
            .insert(below_key, Arc::new(minimal));
        Ok(out)
    }

    /// Every normal subgroup, found by closing upward from the trivial
    /// subgroup along minimal-normal-overgroup edges. Fails with a lattice
    /// cap error if the lattice is larger than `caps.lattice`. Results are
    /// sorted by (order, element key) and cached.
    pub fn all_normal_subgroups(self: &Arc<Group>, caps: Caps) -> Result<Vec<Subgroup>, GroupError> {
        if let Some(hit) = self.lattice.normals.get() {
            return Ok(rebuild(self, hit));
        }
        let mut seen: Vec<SubgroupData> = Vec::new();
        let trivial = self.trivial_subgroup();
        seen.push(SubgroupData {
            group: trivial.group().clone(),
            key: trivial.key(caps)?.clone(),
        });
        let mut head = 0;
        while head < seen.len() {
            let node = Subgroup::from_group_with_key(
                self.clone(),
                seen[head].group.clone(),
                seen[head].key.clone(),
            );
            head += 1;
            for m in self.minimal_normal_overgroups(&node, caps)? {
                let key = m.key(caps)?;
                if !seen.iter().any(|d| &d.key == key) {
                    if seen.len() >= caps.lattice {
                        return Err(GroupError::LatticeCapExceeded { cap: caps.lattice });
                    }
                    seen.push(SubgroupData {
                        group: m.group().clone(),
                        key: key.clone(),
                    });
                }
            }
        }
        seen.sort_by(|a, b| {
            a.group
                .order()
                .cmp(&b.group.order())
                .then_with(|| a.key.cmp(&b.key))
        });
        let out = rebuild(self, &seen);
        let _ = self.lattice.normals.set(Arc::new(seen));
        Ok(out)
    }

    /// Largest normal subgroup of order coprime to `p`: grown by joining the
    /// p′-order minimal normal overgroups of the current stage until none
    /// remain. If the result were not yet the full p′-core, the quotient by
    /// it would still contain a minimal normal p′-subgroup, contradicting
    /// termination.
    pub fn p_prime_core(self: &Arc<Group>, p: u64, caps: Caps) -> Result<Subgroup, GroupError> {
        let mut n = self.trivial_subgroup();
        loop {
            let good: Vec<Subgroup> = self
                .minimal_normal_overgroups(&n, caps)?
                .into_iter()
                .filter(|m| m.order() % p as u128 != 0)
                .collect();
            if good.is_empty() {
                return Ok(n);
            }
            for m in good {
                n = n.join(&m)?;
            }
        }
    }
}

/// An ascending chief series 1 = N₀ < N₁ < ⋯ < Nₖ = G.
#[derive(Clone)]
pub struct ChiefSeries {
    steps: Vec<Subgroup>,
}

impl ChiefSeries {
    pub(crate) fn from_steps(steps: Vec<Subgroup>) -> ChiefSeries {
        debug_assert!(!steps.is_empty());
        ChiefSeries { steps }
    }

    /// All members of the chain, trivial subgroup first, whole group last.
    pub fn steps(&self) -> &[Subgroup] {
        &self.steps
    }

    /// Number of chief factors (one less than the number of chain members).
    pub fn factor_count(&self) -> usize {
        self.steps.len() - 1
    }

    /// Orders of the chief factors, bottom up.
    pub fn factor_orders(&self) -> Vec<u128> {
        self.steps
            .windows(2)
            .map(|w| w[1].order() / w[0].order())
            .collect()
    }

    /// Adjacent pairs (below, above), bottom up.
    pub fn factor_pairs(&self) -> impl Iterator<Item = (&Subgroup, &Subgroup)> + '_ {
        self.steps.windows(2).map(|w| (&w[0], &w[1]))
    }
}

impl std::fmt::Debug for ChiefSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChiefSeries{:?}", self.steps.iter().map(|s| s.order()).collect::<Vec<_>>())
    }
}

struct Frame {
    node: Subgroup,
    children: Vec<Subgroup>,
    next: usize,
}

/// Lazy depth-first enumeration of every chief series of a group, in the
/// deterministic order induced by the sorted overgroup lists.
pub struct ChiefSeriesIter {
    group: Arc<Group>,
    caps: Caps,
    stack: Vec<Frame>,
    primed: bool,
    failed: bool,
}

impl ChiefSeriesIter {
    pub fn new(group: &Arc<Group>, caps: Caps) -> ChiefSeriesIter {
        ChiefSeriesIter {
            group: group.clone(),
            caps,
            stack: Vec::new(),
            primed: false,
            failed: false,
        }
    }

    fn push_frame(&mut self, node: Subgroup) -> Result<bool, GroupError> {
        let at_top = node.order() == self.group.order();
        let children = if at_top {
            Vec::new()
        } else {
            self.group.minimal_normal_overgroups(&node, self.caps)?
        };
        self.stack.push(Frame {
            node,
            children,
            next: 0,
        });
        Ok(at_top)
    }

    fn series(&self) -> ChiefSeries {
        ChiefSeries {
            steps: self.stack.iter().map(|f| f.node.clone()).collect(),
        }
    }
}

impl Iterator for ChiefSeriesIter {
    type Item = Result<ChiefSeries, GroupError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            if self.stack.is_empty() {
                if self.primed {
                    return None;
                }
                self.primed = true;
                let root = self.group.trivial_subgroup();
                match self.push_frame(root) {
                    Ok(true) => return Some(Ok(self.series())),
                    Ok(false) => {}
                    Err(e) => {
                        self.failed = true;
                        return Some(Err(e));
                    }
                }
                continue;
            }
            let top = self.stack.last_mut().unwrap();
            if top.next < top.children.len() {
                let child = top.children[top.next].clone();
                top.next += 1;
                match self.push_frame(child) {
                    Ok(true) => return Some(Ok(self.series())),
                    Ok(false) => {}
                    Err(e) => {
                        self.failed = true;
                        return Some(Err(e));
                    }
                }
            } else {
                self.stack.pop();
            }
        }
    }
}

impl Group {
    /// Lazy enumeration of all chief series.
    pub fn chief_series_iter(self: &Arc<Group>, caps: Caps) -> ChiefSeriesIter {
        ChiefSeriesIter::new(self, caps)
    }

    /// The first chief series in canonical order.
    pub fn first_chief_series(self: &Arc<Group>, caps: Caps) -> Result<ChiefSeries, GroupError> {
        self.chief_series_iter(caps)
            .next()
            .expect("every finite group has a chief series")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse(text, degree).unwrap()
    }

    fn arc_group(gens: &[&str], degree: usize) -> Arc<Group> {
        let gens: Vec<_> = gens.iter().map(|t| p(t, degree)).collect();
        Group::from_generators_arc(&gens).unwrap()
    }

    const CAPS: Caps = Caps {
        element: 20_000,
        lattice: 10_000,
        memo: 10_000,
        filter: 5_000,
    };

    fn sl23() -> Arc<Group> {
        // 2×2 matrices of determinant 1 over the field with three elements,
        // acting on the eight nonzero vectors.
        arc_group(&["(1 4 7)(2 8 5)", "(1 6 2 3)(4 7 8 5)"], 8)
    }

    #[test]
    fn s4_has_a_unique_chief_series() {
        let g = arc_group(&["(1 2)", "(1 2 3 4)"], 4);
        let all: Vec<_> = g.chief_series_iter(CAPS).collect::<Result<_, _>>().unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].factor_orders(), vec![4, 3, 2]);
        let orders: Vec<u128> = all[0].steps().iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert!(all[0].steps().iter().all(|s| s.is_normal()));
    }

    #[test]
    fn normal_lattice_of_sl23() {
        let g = sl23();
        assert_eq!(g.order(), 24);
        let normals = g.all_normal_subgroups(CAPS).unwrap();
        let orders: Vec<u128> = normals.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 8, 24]);
        let series = g.first_chief_series(CAPS).unwrap();
        assert_eq!(series.factor_orders(), vec![2, 4, 3]);
        assert_eq!(g.chief_series_iter(CAPS).count(), 1);
    }

    #[test]
    fn simple_group_has_one_factor() {
        let a5 = arc_group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let normals = a5.all_normal_subgroups(CAPS).unwrap();
        assert_eq!(normals.len(), 2);
        let series = a5.first_chief_series(CAPS).unwrap();
        assert_eq!(series.factor_orders(), vec![60]);
    }

    #[test]
    fn trivial_group_has_an_empty_series() {
        let t = Group::trivial(3);
        let all: Vec<_> = t.chief_series_iter(CAPS).collect::<Result<_, _>>().unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].factor_count(), 0);
    }

    #[test]
    fn elementary_abelian_eight_counts() {
        let e8 = arc_group(&["(1 2)", "(3 4)", "(5 6)"], 6);
        // 16 subgroups, all normal; minimal overgroups of 1 are the seven
        // subgroups of order two; 21 maximal flags.
        assert_eq!(e8.all_normal_subgroups(CAPS).unwrap().len(), 16);
        let minimal = e8
            .minimal_normal_overgroups(&e8.trivial_subgroup(), CAPS)
            .unwrap();
        assert_eq!(minimal.len(), 7);
        assert!(minimal.iter().all(|m| m.order() == 2));
        assert_eq!(e8.chief_series_iter(CAPS).count(), 21);
    }

    #[test]
    fn klein_four_has_three_series() {
        let e4 = arc_group(&["(1 2)", "(3 4)"], 4);
        let all: Vec<_> = e4.chief_series_iter(CAPS).collect::<Result<_, _>>().unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|s| s.factor_orders() == vec![2, 2]));
    }

    #[test]
    fn factor_order_multisets_agree_across_series() {
        let c12 = arc_group(&["(1 2 3 4 5 6 7 8 9 10 11 12)"], 12);
        let all: Vec<_> = c12.chief_series_iter(CAPS).collect::<Result<_, _>>().unwrap();
        assert_eq!(all.len(), 3);
        for s in &all {
            let mut factors = s.factor_orders();
            factors.sort();
            assert_eq!(factors, vec![2, 2, 3]);
        }
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let e8 = arc_group(&["(1 2)", "(3 4)", "(5 6)"], 6);
        let tight = Caps {
            lattice: 3,
            ..CAPS
        };
        assert!(matches!(
            e8.all_normal_subgroups(tight),
            Err(GroupError::LatticeCapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn p_prime_cores() {
        let s4 = arc_group(&["(1 2)", "(1 2 3 4)"], 4);
        assert!(s4.p_prime_core(2, CAPS).unwrap().is_trivial());
        assert_eq!(s4.p_prime_core(3, CAPS).unwrap().order(), 4);

        let s3 = arc_group(&["(1 2 3)", "(1 2)"], 3);
        let core = s3.p_prime_core(2, CAPS).unwrap();
        assert_eq!(core.order(), 3);
        assert!(core.contains(&p("(1 2 3)", 3)).unwrap());

        let d12 = arc_group(&["(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"], 6);
        assert_eq!(d12.p_prime_core(2, CAPS).unwrap().order(), 3);
    }

    #[test]
    fn overgroup_results_are_cached() {
        let g = arc_group(&["(1 2)", "(1 2 3 4)"], 4);
        let first = g
            .minimal_normal_overgroups(&g.trivial_subgroup(), CAPS)
            .unwrap();
        let second = g
            .minimal_normal_overgroups(&g.trivial_subgroup(), CAPS)
            .unwrap();
        assert_eq!(first.len(), second.len());
        assert!(first
            .iter()
            .zip(second.iter())
            .all(|(a, b)| Arc::ptr_eq(a.group(), b.group())));
    }
}
