//! Subgroups of an ambient group and the classical operators on them.
//!
//! A [`Subgroup`] pairs a bare group with the ambient group it lives in.
//! Operators that only multiply generators (join, normal closure, derived
//! subgroup, Sylow ascent, p-group maximals) never enumerate elements and so
//! take no caps; operators that scan (normalizer, centralizer, intersection
//! fallback) enumerate under explicit caps and fail loudly past them.

use crate::bitset::ElementBitset;
use crate::error::GroupError;
use crate::group::{same_element_set, ElementIndex, Group};
use crate::kernel;
use crate::perm::Permutation;
use crate::primes::{factorize, is_prime, p_part, PrimeSet};
use crate::Caps;
use std::sync::{Arc, OnceLock};

/// A subgroup of a fixed ambient group.
///
/// Cloning is cheap (three `Arc`s). There is deliberately no `PartialEq`:
/// equality of subgroups is element-set equality, which [`Subgroup::same_as`]
/// decides without enumeration.
#[derive(Clone)]
pub struct Subgroup {
    ambient: Arc<Group>,
    group: Arc<Group>,
    key: Arc<OnceLock<ElementBitset>>,
}

/// Builds a group from a stream of its members by incremental closure:
/// elements already generated are skipped, so the generator list stays short
/// (at most log₂ of the order) and the result is determined by stream order.
pub(crate) fn group_from_members<'a, I>(degree: usize, members: I) -> Result<Arc<Group>, GroupError>
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = Group::trivial(degree);
    for e in members {
        if !current.is_member(e) {
            gens.push(e.clone());
            current = Group::from_generators_arc(&gens)?;
        }
    }
    Ok(current)
}

/// Generators of the normal closure of `seed` in `parent`, by conjugating the
/// growing generator list with `parent`'s generators until stable. At the
/// fixpoint the result is invariant under every generator of `parent`, hence
/// normal, and it is contained in every normal subgroup covering the seed.
pub(crate) fn normal_closure_gens(
    parent: &Group,
    seed: &[Permutation],
) -> Result<Vec<Permutation>, GroupError> {
    let mut gens: Vec<Permutation> = seed.iter().filter(|g| !g.is_identity()).cloned().collect();
    if gens.is_empty() {
        return Ok(gens);
    }
    let mut n = Group::from_generators_arc(&gens)?;
    'grow: loop {
        for i in 0..gens.len() {
            for g in parent.generators() {
                let c = gens[i].conjugated_by(g);
                if !n.is_member(&c) {
                    gens.push(c);
                    n = Group::from_generators_arc(&gens)?;
                    continue 'grow;
                }
            }
        }
        return Ok(gens);
    }
}

/// Scans `parent`'s elements and closes the survivors of `pred` into a group.
fn scan_subgroup<F>(parent: &Arc<Group>, caps: Caps, pred: F) -> Result<Arc<Group>, GroupError>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    let idx = parent.element_index(caps.element)?;
    let hits = kernel::filter_positions(idx.len(), |i| pred(idx.get(i)));
    group_from_members(parent.degree(), hits.iter().map(|&i| idx.get(i)))
}

impl Subgroup {
    pub(crate) fn from_group(ambient: Arc<Group>, group: Arc<Group>) -> Subgroup {
        debug_assert_eq!(ambient.degree(), group.degree());
        Subgroup {
            ambient,
            group,
            key: Arc::new(OnceLock::new()),
        }
    }

    /// Rebuilds a subgroup from cached parts with its key already known.
    pub(crate) fn from_group_with_key(
        ambient: Arc<Group>,
        group: Arc<Group>,
        key: ElementBitset,
    ) -> Subgroup {
        let cell = OnceLock::new();
        let _ = cell.set(key);
        Subgroup {
            ambient,
            group,
            key: Arc::new(cell),
        }
    }

    /// The whole ambient group as a subgroup of itself.
    pub fn full(ambient: &Arc<Group>) -> Subgroup {
        Subgroup::from_group(ambient.clone(), ambient.clone())
    }

    /// The trivial subgroup of `ambient`.
    pub fn trivial_in(ambient: &Arc<Group>) -> Subgroup {
        let t = Group::trivial(ambient.degree());
        Subgroup::from_group(ambient.clone(), t)
    }

    /// Subgroup generated by `gens`, all of which must lie in `ambient`.
    pub fn generated_in(ambient: &Arc<Group>, gens: &[Permutation]) -> Result<Subgroup, GroupError> {
        for g in gens {
            if !ambient.contains(g)? {
                return Err(GroupError::NotAMember);
            }
        }
        let cleaned: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if cleaned.is_empty() {
            return Ok(Subgroup::trivial_in(ambient));
        }
        let group = Group::from_generators_arc(&cleaned)?;
        Ok(Subgroup::from_group(ambient.clone(), group))
    }

    pub fn ambient(&self) -> &Arc<Group> {
        &self.ambient
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn index_in_ambient(&self) -> u128 {
        self.ambient.order() / self.group.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn is_whole_group(&self) -> bool {
        self.group.order() == self.ambient.order()
    }

    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn prime_spectrum(&self) -> PrimeSet {
        PrimeSet::of_order(self.order())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        self.group.contains(p)
    }

    /// Elements of this subgroup in canonical order (capped).
    pub fn element_index(&self, caps: Caps) -> Result<&ElementIndex, GroupError> {
        self.group.element_index(caps.element)
    }

    /// Positions of this subgroup's elements within the ambient element
    /// index; the canonical identity of a subgroup for caching and dedup.
    pub fn key(&self, caps: Caps) -> Result<&ElementBitset, GroupError> {
        if self.key.get().is_none() {
            let ambient_idx = self.ambient.element_index(caps.element)?;
            let own_idx = self.group.element_index(caps.element)?;
            let mut bits = ElementBitset::empty(ambient_idx.len());
            for e in own_idx.iter() {
                let pos = ambient_idx.position(e).ok_or(GroupError::NotASubgroup)?;
                bits.insert(pos);
            }
            let _ = self.key.set(bits);
        }
        Ok(self.key.get().unwrap())
    }

    /// The same element set viewed as a subgroup of a different ambient
    /// group (generator membership is checked). Used to ask relative
    /// questions — e.g. a property of H inside N rather than inside G.
    pub fn rebase_to(&self, ambient: &Arc<Group>) -> Result<Subgroup, GroupError> {
        Subgroup::generated_in(ambient, self.generators())
    }

    fn check_same_ambient(&self, other: &Subgroup) -> Result<(), GroupError> {
        if Arc::ptr_eq(&self.ambient, &other.ambient)
            || same_element_set(&self.ambient, &other.ambient)
        {
            Ok(())
        } else {
            Err(GroupError::AmbientMismatch)
        }
    }

    /// Element-set equality of the underlying groups.
    pub fn same_as(&self, other: &Subgroup) -> bool {
        same_element_set(&self.group, &other.group)
    }

    /// Whether `other` is contained in this subgroup.
    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool, GroupError> {
        self.check_same_ambient(other)?;
        Ok(other.generators().iter().all(|g| self.group.is_member(g)))
    }

    /// Normality in the ambient group, decided on generators alone.
    pub fn is_normal(&self) -> bool {
        self.ambient.generators().iter().all(|g| {
            self.generators()
                .iter()
                .all(|s| self.group.is_member(&s.conjugated_by(g)))
        })
    }

    /// Normality inside `parent`, which must contain this subgroup.
    pub fn is_normal_in(&self, parent: &Subgroup) -> Result<bool, GroupError> {
        if !parent.contains_subgroup(self)? {
            return Err(GroupError::NotASubgroup);
        }
        Ok(parent.generators().iter().all(|g| {
            self.generators()
                .iter()
                .all(|s| self.group.is_member(&s.conjugated_by(g)))
        }))
    }

    /// The conjugate subgroup `self^g` for `g` in the ambient group.
    pub fn conjugate(&self, g: &Permutation) -> Result<Subgroup, GroupError> {
        if !self.ambient.contains(g)? {
            return Err(GroupError::NotAMember);
        }
        if self.generators().is_empty() {
            return Ok(Subgroup::trivial_in(&self.ambient));
        }
        let gens: Vec<Permutation> = self
            .generators()
            .iter()
            .map(|s| s.conjugated_by(g))
            .collect();
        let group = Group::from_generators_arc(&gens)?;
        Ok(Subgroup::from_group(self.ambient.clone(), group))
    }

    /// Subgroup generated by this subgroup and `other` together.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        self.check_same_ambient(other)?;
        let mut gens: Vec<Permutation> = self.generators().to_vec();
        gens.extend_from_slice(other.generators());
        if gens.is_empty() {
            return Ok(Subgroup::trivial_in(&self.ambient));
        }
        let group = Group::from_generators_arc(&gens)?;
        Ok(Subgroup::from_group(self.ambient.clone(), group))
    }

    /// Intersection, computed by filtering the smaller subgroup's elements
    /// through the other's membership test, or — when both sides are larger
    /// than the filter cap but the ambient group is enumerable — by filtering
    /// the ambient enumeration through both.
    pub fn intersection(&self, other: &Subgroup, caps: Caps) -> Result<Subgroup, GroupError> {
        self.check_same_ambient(other)?;
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        if small.order() <= caps.filter as u128 {
            let idx = small.group.element_index(caps.filter)?;
            return group_from_members(
                self.degree(),
                idx.iter().filter(|e| big.group.is_member(e)),
            )
            .map(|g| Subgroup::from_group(self.ambient.clone(), g));
        }
        if self.ambient.order() <= caps.element as u128 {
            let idx = self.ambient.element_index(caps.element)?;
            let hits = kernel::filter_positions(idx.len(), |i| {
                let e = idx.get(i);
                small.group.is_member(e) && big.group.is_member(e)
            });
            let group = group_from_members(self.degree(), hits.iter().map(|&i| idx.get(i)))?;
            return Ok(Subgroup::from_group(self.ambient.clone(), group));
        }
        Err(GroupError::CapExceeded {
            order: small.order(),
            cap: caps.filter,
        })
    }

    /// Normal closure of this subgroup in the ambient group.
    pub fn normal_closure(&self) -> Result<Subgroup, GroupError> {
        let gens = normal_closure_gens(&self.ambient, self.generators())?;
        if gens.is_empty() {
            return Ok(Subgroup::trivial_in(&self.ambient));
        }
        let group = Group::from_generators_arc(&gens)?;
        Ok(Subgroup::from_group(self.ambient.clone(), group))
    }

    /// Normal closure inside `parent`, which must contain this subgroup.
    pub fn normal_closure_in(&self, parent: &Subgroup) -> Result<Subgroup, GroupError> {
        if !parent.contains_subgroup(self)? {
            return Err(GroupError::NotASubgroup);
        }
        let gens = normal_closure_gens(&parent.group, self.generators())?;
        if gens.is_empty() {
            return Ok(Subgroup::trivial_in(&self.ambient));
        }
        let group = Group::from_generators_arc(&gens)?;
        Ok(Subgroup::from_group(self.ambient.clone(), group))
    }

    /// Derived subgroup: normal closure (within this subgroup) of the
    /// commutators of its generator pairs.
    pub fn derived_subgroup(&self) -> Result<Subgroup, GroupError> {
        let gens = self.generators();
        let mut comms: Vec<Permutation> = Vec::new();
        for a in gens {
            for b in gens {
                let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
                if !c.is_identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        let closed = normal_closure_gens(&self.group, &comms)?;
        if closed.is_empty() {
            return Ok(Subgroup::trivial_in(&self.ambient));
        }
        let group = Group::from_generators_arc(&closed)?;
        Ok(Subgroup::from_group(self.ambient.clone(), group))
    }

    /// Normalizer of this subgroup in `parent` (which must contain it), by a
    /// scan over `parent`'s elements.
    pub fn normalizer_in(&self, parent: &Subgroup, caps: Caps) -> Result<Subgroup, GroupError> {
        if !parent.contains_subgroup(self)? {
            return Err(GroupError::NotASubgroup);
        }
        let group = scan_subgroup(&parent.group, caps, |g| {
            self.generators()
                .iter()
                .all(|s| self.group.is_member(&s.conjugated_by(g)))
        })?;
        Ok(Subgroup::from_group(self.ambient.clone(), group))
    }

    /// Normalizer in the whole ambient group.
    pub fn normalizer(&self, caps: Caps) -> Result<Subgroup, GroupError> {
        self.normalizer_in(&Subgroup::full(&self.ambient), caps)
    }

    /// Centralizer of this subgroup in `parent` (which need not contain it),
    /// by a scan over `parent`'s elements.
    pub fn centralizer_in(&self, parent: &Subgroup, caps: Caps) -> Result<Subgroup, GroupError> {
        self.check_same_ambient(parent)?;
        let group = scan_subgroup(&parent.group, caps, |g| {
            self.generators()
                .iter()
                .all(|s| g.mul(s) == s.mul(g))
        })?;
        Ok(Subgroup::from_group(self.ambient.clone(), group))
    }

    /// Centralizer in the whole ambient group.
    pub fn centralizer(&self, caps: Caps) -> Result<Subgroup, GroupError> {
        self.centralizer_in(&Subgroup::full(&self.ambient), caps)
    }

    /// A Sylow p-subgroup of this subgroup, by normalizer ascent: while the
    /// current p-subgroup S is smaller than the full p-part, its normalizer
    /// (inside this subgroup) contains a p-element outside S — the first one
    /// in enumeration order extends S by a factor of at least p. Returns the
    /// trivial subgroup when p does not divide the order.
    pub fn sylow_subgroup(&self, p: u64, caps: Caps) -> Result<Subgroup, GroupError> {
        assert!(is_prime(p), "sylow_subgroup requires a prime, got {p}");
        let target = p_part(self.order(), p);
        if target == 1 {
            return Ok(Subgroup::trivial_in(&self.ambient));
        }
        let mut s_gens: Vec<Permutation> = Vec::new();
        let mut s = Group::trivial(self.degree());
        while s.order() < target {
            let n = if s.is_trivial() {
                self.group.clone()
            } else {
                scan_subgroup(&self.group, caps, |g| {
                    s_gens.iter().all(|x| s.is_member(&x.conjugated_by(g)))
                })?
            };
            let idx = n.element_index(caps.element)?;
            let mut extended = false;
            for w in idx.iter() {
                let o = w.order();
                if o % (p as u128) != 0 {
                    continue;
                }
                // Strip the p′-part: the result is a p-element in the same
                // coset of S as a suitable power of w.
                let candidate = w.pow(o / p_part(o, p));
                if !s.is_member(&candidate) {
                    s_gens.push(candidate);
                    s = Group::from_generators_arc(&s_gens)?;
                    extended = true;
                    break;
                }
            }
            assert!(
                extended,
                "normalizer of a non-Sylow p-subgroup always contains a p-element outside it"
            );
        }
        Ok(Subgroup::from_group(self.ambient.clone(), s))
    }

    fn p_group_prime(&self) -> Result<(u64, u32), GroupError> {
        let factors = factorize(self.order());
        match factors.as_slice() {
            [(p, k)] => Ok((*p, *k)),
            _ => Err(GroupError::NotAPGroup {
                order: self.order(),
                p: factors.first().map(|&(p, _)| p).unwrap_or(2),
            }),
        }
    }

    /// Frattini subgroup of a p-group: the derived subgroup together with the
    /// p-th powers of the generators (p-th powering is a homomorphism modulo
    /// the derived subgroup, so generator powers suffice).
    pub fn frattini_subgroup(&self) -> Result<Subgroup, GroupError> {
        if self.is_trivial() {
            return Ok(Subgroup::trivial_in(&self.ambient));
        }
        let (p, _) = self.p_group_prime()?;
        let derived = self.derived_subgroup()?;
        let mut gens: Vec<Permutation> = derived.generators().to_vec();
        for g in self.generators() {
            let gp = g.pow(p as u128);
            if !gp.is_identity() {
                gens.push(gp);
            }
        }
        if gens.is_empty() {
            return Ok(Subgroup::trivial_in(&self.ambient));
        }
        let group = Group::from_generators_arc(&gens)?;
        Ok(Subgroup::from_group(self.ambient.clone(), group))
    }

    /// The maximal subgroups of a p-group: exactly the preimages of the
    /// hyperplanes of the elementary abelian quotient by the Frattini
    /// subgroup. Enumeration order is fixed by the lexicographic order of the
    /// defining functionals, so the result is canonical.
    pub fn maximal_subgroups(&self) -> Result<Vec<Subgroup>, GroupError> {
        if self.is_trivial() {
            return Ok(Vec::new());
        }
        let (p, _) = self.p_group_prime()?;
        let phi = self.frattini_subgroup()?;
        // Generators whose images form a basis of the quotient modulo phi.
        let mut span_gens: Vec<Permutation> = phi.generators().to_vec();
        let mut span = if span_gens.is_empty() {
            Group::trivial(self.degree())
        } else {
            Group::from_generators_arc(&span_gens)?
        };
        let mut basis: Vec<Permutation> = Vec::new();
        for g in self.generators() {
            if !span.is_member(g) {
                basis.push(g.clone());
                span_gens.push(g.clone());
                span = Group::from_generators_arc(&span_gens)?;
            }
        }
        debug_assert_eq!(span.order(), self.order());
        let d = basis.len();
        let mut out: Vec<Subgroup> = Vec::new();
        // Functionals with first nonzero coordinate 1, pivot-major order.
        for pivot in 0..d {
            let tail = d - pivot - 1;
            let mut counter = vec![0u64; tail];
            loop {
                let mut coeffs = vec![0u64; d];
                coeffs[pivot] = 1;
                coeffs[pivot + 1..].copy_from_slice(&counter);
                let mut gens: Vec<Permutation> = phi.generators().to_vec();
                for (i, b) in basis.iter().enumerate() {
                    if i == pivot {
                        continue;
                    }
                    // Kernel vector e_i − c_i·e_pivot pulled back to the group.
                    let e = if coeffs[i] == 0 {
                        b.clone()
                    } else {
                        b.mul(&basis[pivot].pow((p - coeffs[i]) as u128))
                    };
                    gens.push(e);
                }
                let m = if gens.is_empty() {
                    Group::trivial(self.degree())
                } else {
                    Group::from_generators_arc(&gens)?
                };
                debug_assert_eq!(m.order() * p as u128, self.order());
                out.push(Subgroup::from_group(self.ambient.clone(), m));
                // Advance the base-p counter over the tail coordinates.
                let mut carry = true;
                for slot in counter.iter_mut().rev() {
                    *slot += 1;
                    if *slot == p {
                        *slot = 0;
                    } else {
                        carry = false;
                        break;
                    }
                }
                if carry {
                    break;
                }
            }
        }
        debug_assert_eq!(
            out.len() as u128,
            ((p as u128).pow(d as u32) - 1) / (p as u128 - 1)
        );
        Ok(out)
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("ambient_order", &self.ambient.order())
            .field("generators", &self.generators())
            .finish()
    }
}

impl Group {
    /// This group as a subgroup of itself.
    pub fn full_subgroup(self: &Arc<Group>) -> Subgroup {
        Subgroup::full(self)
    }

    pub fn trivial_subgroup(self: &Arc<Group>) -> Subgroup {
        Subgroup::trivial_in(self)
    }

    /// Subgroup of this group generated by `gens`.
    pub fn subgroup(self: &Arc<Group>, gens: &[Permutation]) -> Result<Subgroup, GroupError> {
        Subgroup::generated_in(self, gens)
    }

    pub fn prime_spectrum(&self) -> PrimeSet {
        PrimeSet::of_order(self.order())
    }

    /// Sylow p-subgroup of the whole group.
    pub fn sylow_subgroup(self: &Arc<Group>, p: u64, caps: Caps) -> Result<Subgroup, GroupError> {
        self.full_subgroup().sylow_subgroup(p, caps)
    }

    /// Largest normal p-subgroup: the core of a Sylow p-subgroup, found by
    /// intersecting with generator conjugates until the fixpoint. A fixpoint
    /// is invariant under every generator, hence normal; and the core
    /// survives every step, so the fixpoint is exactly the core.
    pub fn p_core(self: &Arc<Group>, p: u64, caps: Caps) -> Result<Subgroup, GroupError> {
        let mut k = self.sylow_subgroup(p, caps)?;
        loop {
            if k.is_trivial() || k.is_normal() {
                return Ok(k);
            }
            let mut changed = false;
            for g in self.generators() {
                let conj = k.conjugate(g)?;
                let next = k.intersection(&conj, caps)?;
                if next.order() < k.order() {
                    k = next;
                    changed = true;
                }
            }
            if !changed {
                return Ok(k);
            }
        }
    }

    /// Fitting subgroup: the join of the largest normal p-subgroups over all
    /// primes dividing the order.
    pub fn fitting_subgroup(self: &Arc<Group>, caps: Caps) -> Result<Subgroup, GroupError> {
        let mut f = self.trivial_subgroup();
        for (p, _) in factorize(self.order()) {
            f = f.join(&self.p_core(p, caps)?)?;
        }
        Ok(f)
    }
}
