//! Group-class predicates and hypercenters.
//!
//! Solubility comes from the derived series; the per-prime predicates read
//! chief-factor orders off the canonical first chief series (factor-order
//! multisets are series-independent, which the lattice tests check
//! separately); nilpotency and tower predicates ask for normal Sylow
//! subgroups directly. Hypercenters are built by an ascent along qualifying
//! minimal-normal-overgroup edges, with an exhaustive lattice scan kept as an
//! independently computed twin.

use crate::error::GroupError;
use crate::group::Group;
use crate::kernel;
use crate::primes::{factorize, p_part, PrimeSet};
use crate::quotient::QuotientMap;
use crate::subgroup::{group_from_members, Subgroup};
use crate::Caps;
use std::sync::Arc;

impl Group {
    /// The normal p-complement if one exists: the subgroup generated by all
    /// elements of order coprime to p. That element set is closed under
    /// conjugation, so the subgroup is always normal; the group is
    /// p-nilpotent exactly when its order is the full p′-part.
    pub fn normal_p_complement(
        self: &Arc<Group>,
        p: u64,
        caps: Caps,
    ) -> Result<Option<Subgroup>, GroupError> {
        let idx = self.element_index(caps.element)?;
        let coprime: Vec<usize> =
            kernel::filter_positions(idx.len(), |i| idx.get(i).order() % p as u128 != 0);
        let h = group_from_members(self.degree(), coprime.iter().map(|&i| idx.get(i)))?;
        let target = self.order() / p_part(self.order(), p);
        if h.order() == target {
            Ok(Some(Subgroup::from_group(self.clone(), h)))
        } else {
            Ok(None)
        }
    }

    /// Whether the group has a normal subgroup of order the p′-part.
    pub fn is_p_nilpotent(self: &Arc<Group>, p: u64, caps: Caps) -> Result<bool, GroupError> {
        Ok(self.normal_p_complement(p, caps)?.is_some())
    }

    /// Solubility via the derived series; generator-only, no enumeration.
    pub fn is_soluble(self: &Arc<Group>) -> Result<bool, GroupError> {
        let mut cur = self.full_subgroup();
        loop {
            let next = cur.derived_subgroup()?;
            if next.is_trivial() {
                return Ok(true);
            }
            if next.order() == cur.order() {
                return Ok(false);
            }
            cur = next;
        }
    }

    /// Whether every Sylow subgroup is normal.
    pub fn is_nilpotent(self: &Arc<Group>, caps: Caps) -> Result<bool, GroupError> {
        for (p, _) in factorize(self.order()) {
            if !self.sylow_subgroup(p, caps)?.is_normal() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every chief factor order is a p-power or coprime to p.
    pub fn is_p_soluble(self: &Arc<Group>, p: u64, caps: Caps) -> Result<bool, GroupError> {
        let series = self.first_chief_series(caps)?;
        Ok(series.factor_orders().into_iter().all(|f| {
            let pp = p_part(f, p);
            f == pp || pp == 1
        }))
    }

    /// Every chief factor has prime order.
    pub fn is_supersoluble(self: &Arc<Group>, caps: Caps) -> Result<bool, GroupError> {
        let series = self.first_chief_series(caps)?;
        Ok(series
            .factor_orders()
            .into_iter()
            .all(|f| f <= u64::MAX as u128 && crate::primes::is_prime(f as u64)))
    }

    /// Every chief factor order is exactly p or coprime to p.
    pub fn is_p_supersoluble(self: &Arc<Group>, p: u64, caps: Caps) -> Result<bool, GroupError> {
        let series = self.first_chief_series(caps)?;
        Ok(series
            .factor_orders()
            .into_iter()
            .all(|f| f == p as u128 || f % p as u128 != 0))
    }

    /// Iteratively: the Sylow subgroup for the largest prime divisor must be
    /// normal; then the same question for the quotient, until trivial.
    pub fn is_sylow_tower_supersoluble_type(
        self: &Arc<Group>,
        caps: Caps,
    ) -> Result<bool, GroupError> {
        let mut cur = self.clone();
        while !cur.is_trivial() {
            let (p, _) = *factorize(cur.order()).last().unwrap();
            let s = cur.sylow_subgroup(p, caps)?;
            if !s.is_normal() {
                return Ok(false);
            }
            let q = QuotientMap::new(&cur, &s, caps)?;
            cur = q.image_group().clone();
        }
        Ok(true)
    }
}

fn hypercenter_ascent<F>(g: &Arc<Group>, caps: Caps, qualifies: F) -> Result<Subgroup, GroupError>
where
    F: Fn(u128) -> bool,
{
    let mut z = g.trivial_subgroup();
    'ascend: loop {
        for m in g.minimal_normal_overgroups(&z, caps)? {
            if qualifies(m.order() / z.order()) {
                z = m;
                continue 'ascend;
            }
        }
        return Ok(z);
    }
}

fn qualifying_path_to<F>(
    g: &Arc<Group>,
    target: &Subgroup,
    cur: &Subgroup,
    caps: Caps,
    qualifies: &F,
) -> Result<bool, GroupError>
where
    F: Fn(u128) -> bool,
{
    if cur.order() == target.order() {
        return Ok(true);
    }
    for m in g.minimal_normal_overgroups(cur, caps)? {
        if target.contains_subgroup(&m)?
            && qualifies(m.order() / cur.order())
            && qualifying_path_to(g, target, &m, caps, qualifies)?
        {
            return Ok(true);
        }
    }
    Ok(false)
}

fn hypercenter_scan<F>(g: &Arc<Group>, caps: Caps, qualifies: F) -> Result<Subgroup, GroupError>
where
    F: Fn(u128) -> bool,
{
    let normals = g.all_normal_subgroups(caps)?;
    let mut reached: Vec<Subgroup> = Vec::new();
    for n in normals {
        if qualifying_path_to(g, &n, &g.trivial_subgroup(), caps, &qualifies)? {
            reached.push(n);
        }
    }
    let best = reached
        .iter()
        .max_by_key(|n| n.order())
        .expect("the trivial subgroup always qualifies")
        .clone();
    // The qualifying normals are closed under join, so the largest one must
    // contain every other; anything else is an implementation fault.
    for n in &reached {
        assert!(
            best.contains_subgroup(n).unwrap_or(false),
            "qualifying normal subgroups must share a unique maximum"
        );
    }
    Ok(best)
}

fn factor_is_prime(f: u128) -> bool {
    f <= u64::MAX as u128 && crate::primes::is_prime(f as u64)
}

impl Group {
    /// Largest normal subgroup all of whose chief factors below it are cyclic
    /// of prime order, built by ascending through qualifying factors. Any
    /// qualifying step stays inside the true maximum, so greedy first-choice
    /// ascent is safe.
    pub fn u_hypercenter(self: &Arc<Group>, caps: Caps) -> Result<Subgroup, GroupError> {
        hypercenter_ascent(self, caps, factor_is_prime)
    }

    /// Largest normal subgroup whose chief factors below it each have order
    /// exactly p or coprime to p.
    pub fn u_p_hypercenter(self: &Arc<Group>, p: u64, caps: Caps) -> Result<Subgroup, GroupError> {
        hypercenter_ascent(self, caps, move |f| f == p as u128 || f % p as u128 != 0)
    }

    /// Lattice-scan twin of [`Group::u_hypercenter`]: checks every normal
    /// subgroup for a qualifying path and certifies the maximum is unique.
    pub fn u_hypercenter_scan(self: &Arc<Group>, caps: Caps) -> Result<Subgroup, GroupError> {
        hypercenter_scan(self, caps, factor_is_prime)
    }

    /// Lattice-scan twin of [`Group::u_p_hypercenter`].
    pub fn u_p_hypercenter_scan(
        self: &Arc<Group>,
        p: u64,
        caps: Caps,
    ) -> Result<Subgroup, GroupError> {
        hypercenter_scan(self, caps, move |f| f == p as u128 || f % p as u128 != 0)
    }

    /// Whether the normal subgroup `m` lies inside the Frattini subgroup,
    /// without enumerating maximal subgroups: m ≤ Φ(G) exactly when
    /// perturbing each generator by any elements of m still generates G.
    /// (A failing perturbation generates a proper supplement of m; in the
    /// other direction a maximal subgroup avoiding m yields a failing
    /// perturbation by factoring the generators across mK = G.)
    pub fn lies_in_frattini(
        self: &Arc<Group>,
        m: &Subgroup,
        caps: Caps,
    ) -> Result<bool, GroupError> {
        if !m.is_normal() {
            return Err(GroupError::NotNormal);
        }
        if m.is_trivial() {
            return Ok(true);
        }
        let k = self.generators().len();
        let m_idx = m.group().element_index(caps.element)?;
        let combos = (m_idx.len() as u128).checked_pow(k as u32);
        match combos {
            Some(c) if c <= caps.filter as u128 => {}
            _ => {
                return Err(GroupError::CapExceeded {
                    order: combos.unwrap_or(u128::MAX),
                    cap: caps.filter,
                })
            }
        }
        let mut pick = vec![0usize; k];
        loop {
            let perturbed: Vec<_> = self
                .generators()
                .iter()
                .zip(pick.iter())
                .map(|(g, &i)| g.mul(m_idx.get(i)))
                .collect();
            let gen = group_from_members(self.degree(), perturbed.iter())?;
            if gen.order() != self.order() {
                return Ok(false);
            }
            // Advance the mixed-radix counter over m's elements.
            let mut done = true;
            for slot in pick.iter_mut().rev() {
                *slot += 1;
                if *slot == m_idx.len() {
                    *slot = 0;
                } else {
                    done = false;
                    break;
                }
            }
            if done {
                return Ok(true);
            }
        }
    }
}

/// Per-prime slice of a [`StructureProfile`].
#[derive(Clone, Debug)]
pub struct PrimeProfile {
    pub p: u64,
    pub p_nilpotent: bool,
    pub p_soluble: bool,
    pub p_supersoluble: bool,
    pub u_p_hypercenter: Subgroup,
}

/// One-stop structural summary of a group.
#[derive(Clone, Debug)]
pub struct StructureProfile {
    pub order: u128,
    pub factorization: Vec<(u64, u32)>,
    pub primes: PrimeSet,
    pub nilpotent: bool,
    pub soluble: bool,
    pub supersoluble: bool,
    pub sylow_tower_supersoluble_type: bool,
    pub u_hypercenter: Subgroup,
    pub per_prime: Vec<PrimeProfile>,
}

impl Group {
    pub fn structure_profile(self: &Arc<Group>, caps: Caps) -> Result<StructureProfile, GroupError> {
        let factorization = factorize(self.order());
        let mut per_prime = Vec::new();
        for &(p, _) in &factorization {
            per_prime.push(PrimeProfile {
                p,
                p_nilpotent: self.is_p_nilpotent(p, caps)?,
                p_soluble: self.is_p_soluble(p, caps)?,
                p_supersoluble: self.is_p_supersoluble(p, caps)?,
                u_p_hypercenter: self.u_p_hypercenter(p, caps)?,
            });
        }
        Ok(StructureProfile {
            order: self.order(),
            primes: self.prime_spectrum(),
            nilpotent: self.is_nilpotent(caps)?,
            soluble: self.is_soluble()?,
            supersoluble: self.is_supersoluble(caps)?,
            sylow_tower_supersoluble_type: self.is_sylow_tower_supersoluble_type(caps)?,
            u_hypercenter: self.u_hypercenter(caps)?,
            factorization,
            per_prime,
        })
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

    fn s3() -> Arc<Group> {
        arc_group(&["(1 2 3)", "(1 2)"], 3)
    }

    fn s4() -> Arc<Group> {
        arc_group(&["(1 2)", "(1 2 3 4)"], 4)
    }

    fn a4() -> Arc<Group> {
        arc_group(&["(1 2 3)", "(2 3 4)"], 4)
    }

    fn a5() -> Arc<Group> {
        arc_group(&["(1 2 3 4 5)", "(1 2 3)"], 5)
    }

    fn sl23() -> Arc<Group> {
        arc_group(&["(1 4 7)(2 8 5)", "(1 6 2 3)(4 7 8 5)"], 8)
    }

    #[test]
    fn p_nilpotency_and_complements() {
        let g = s3();
        let complement = g.normal_p_complement(2, CAPS).unwrap().unwrap();
        assert_eq!(complement.order(), 3);
        assert!(complement.is_normal());
        assert!(!g.is_p_nilpotent(3, CAPS).unwrap());

        assert!(!s4().is_p_nilpotent(2, CAPS).unwrap());
        assert!(!s4().is_p_nilpotent(3, CAPS).unwrap());
        assert!(a4().is_p_nilpotent(3, CAPS).unwrap());
        assert!(!a4().is_p_nilpotent(2, CAPS).unwrap());
        assert!(!a5().is_p_nilpotent(2, CAPS).unwrap());
        // p not dividing the order: trivially p-nilpotent.
        assert!(s3().is_p_nilpotent(5, CAPS).unwrap());
        // p-groups are p-nilpotent with trivial complement.
        let d8 = arc_group(&["(1 2 3 4)", "(1 3)"], 4);
        assert!(d8.normal_p_complement(2, CAPS).unwrap().unwrap().is_trivial());
    }

    #[test]
    fn solubility() {
        assert!(s4().is_soluble().unwrap());
        assert!(sl23().is_soluble().unwrap());
        assert!(!a5().is_soluble().unwrap());
        assert!(Group::trivial(3).is_soluble().unwrap());
    }

    #[test]
    fn nilpotency() {
        assert!(!s3().is_nilpotent(CAPS).unwrap());
        assert!(!s4().is_nilpotent(CAPS).unwrap());
        let d8 = arc_group(&["(1 2 3 4)", "(1 3)"], 4);
        assert!(d8.is_nilpotent(CAPS).unwrap());
        let c12 = arc_group(&["(1 2 3 4 5 6 7 8 9 10 11 12)"], 12);
        assert!(c12.is_nilpotent(CAPS).unwrap());
    }

    #[test]
    fn p_solubility() {
        assert!(s4().is_p_soluble(2, CAPS).unwrap());
        assert!(s4().is_p_soluble(3, CAPS).unwrap());
        assert!(!a5().is_p_soluble(2, CAPS).unwrap());
        assert!(!a5().is_p_soluble(3, CAPS).unwrap());
        assert!(!a5().is_p_soluble(5, CAPS).unwrap());
        // A prime not dividing the order is never an obstruction: even the
        // simple factor of order 60 is a 7′-number.
        assert!(s4().is_p_soluble(7, CAPS).unwrap());
        assert!(a5().is_p_soluble(7, CAPS).unwrap());
    }

    #[test]
    fn supersolubility() {
        assert!(s3().is_supersoluble(CAPS).unwrap());
        assert!(!s4().is_supersoluble(CAPS).unwrap());
        assert!(!a4().is_supersoluble(CAPS).unwrap());
        let d12 = arc_group(&["(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"], 6);
        assert!(d12.is_supersoluble(CAPS).unwrap());
        let c12 = arc_group(&["(1 2 3 4 5 6 7 8 9 10 11 12)"], 12);
        assert!(c12.is_supersoluble(CAPS).unwrap());
    }

    #[test]
    fn p_supersolubility() {
        assert!(!s4().is_p_supersoluble(2, CAPS).unwrap());
        assert!(s4().is_p_supersoluble(3, CAPS).unwrap());
        assert!(!a4().is_p_supersoluble(2, CAPS).unwrap());
        assert!(a4().is_p_supersoluble(3, CAPS).unwrap());
    }

    #[test]
    fn sylow_towers() {
        assert!(s3().is_sylow_tower_supersoluble_type(CAPS).unwrap());
        assert!(!a5().is_sylow_tower_supersoluble_type(CAPS).unwrap());
        // Nilpotent examples.
        let d8 = arc_group(&["(1 2 3 4)", "(1 3)"], 4);
        assert!(d8.is_sylow_tower_supersoluble_type(CAPS).unwrap());
        // The Frobenius group of order 21: normal Sylow 7, quotient of order 3.
        let f21 = arc_group(&["(1 2 3 4 5 6 7)", "(1 2 4)(3 6 5)"], 7);
        assert_eq!(f21.order(), 21);
        assert!(f21.is_sylow_tower_supersoluble_type(CAPS).unwrap());
        // S4 has a tower for the chain 2,3 only in increasing order — the
        // largest prime 3 has a non-normal Sylow subgroup.
        assert!(!s4().is_sylow_tower_supersoluble_type(CAPS).unwrap());
    }

    #[test]
    fn u_hypercenters() {
        assert!(s4().u_hypercenter(CAPS).unwrap().is_trivial());
        assert_eq!(s3().u_hypercenter(CAPS).unwrap().order(), 6);
        assert!(a4().u_hypercenter(CAPS).unwrap().is_trivial());
        let d8 = arc_group(&["(1 2 3 4)", "(1 3)"], 4);
        assert_eq!(d8.u_hypercenter(CAPS).unwrap().order(), 8);
        assert!(a5().u_hypercenter(CAPS).unwrap().is_trivial());
    }

    #[test]
    fn u_p_hypercenters_of_s4() {
        // For p = 2 the first step must have order 2 or odd order, but the
        // only minimal normal subgroup has order 4. For p = 3 every chief
        // factor qualifies.
        assert!(s4().u_p_hypercenter(2, CAPS).unwrap().is_trivial());
        assert_eq!(s4().u_p_hypercenter(3, CAPS).unwrap().order(), 24);
    }

    #[test]
    fn ascent_and_scan_agree() {
        let groups = [s3(), s4(), a4(), sl23()];
        for g in &groups {
            let a = g.u_hypercenter(CAPS).unwrap();
            let b = g.u_hypercenter_scan(CAPS).unwrap();
            assert!(a.same_as(&b), "u-hypercenter mismatch at order {}", g.order());
            for prime in [2u64, 3] {
                let a = g.u_p_hypercenter(prime, CAPS).unwrap();
                let b = g.u_p_hypercenter_scan(prime, CAPS).unwrap();
                assert!(
                    a.same_as(&b),
                    "u_p-hypercenter mismatch at order {} p {}",
                    g.order(),
                    prime
                );
            }
        }
    }

    #[test]
    fn frattini_membership() {
        // The center of the double cover of A4 is its Frattini subgroup.
        let g = sl23();
        let normals = g.all_normal_subgroups(CAPS).unwrap();
        let c2 = normals.iter().find(|n| n.order() == 2).unwrap();
        let q8 = normals.iter().find(|n| n.order() == 8).unwrap();
        assert!(g.lies_in_frattini(c2, CAPS).unwrap());
        assert!(!g.lies_in_frattini(q8, CAPS).unwrap());

        // S4 has trivial Frattini subgroup: even the minimal normal subgroup
        // has a proper supplement (any Sylow 2 normalizer-style complement).
        let g = s4();
        let v4 = g.subgroup(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap();
        assert!(!g.lies_in_frattini(&v4, CAPS).unwrap());

        // Cross-check against the p-group construction on the dihedral group.
        let d8 = arc_group(&["(1 2 3 4)", "(1 3)"], 4);
        let phi = d8.full_subgroup().frattini_subgroup().unwrap();
        assert!(d8.lies_in_frattini(&phi, CAPS).unwrap());
        let c4 = d8.subgroup(&[p("(1 2 3 4)", 4)]).unwrap();
        assert!(!d8.lies_in_frattini(&c4, CAPS).unwrap());
    }

    #[test]
    fn structure_profile_of_s4() {
        let profile = s4().structure_profile(CAPS).unwrap();
        assert_eq!(profile.order, 24);
        assert_eq!(profile.factorization, vec![(2, 3), (3, 1)]);
        assert!(profile.soluble);
        assert!(!profile.supersoluble);
        assert!(!profile.nilpotent);
        assert!(!profile.sylow_tower_supersoluble_type);
        assert!(profile.u_hypercenter.is_trivial());
        assert_eq!(profile.per_prime.len(), 2);
        let p2 = &profile.per_prime[0];
        assert_eq!(p2.p, 2);
        assert!(!p2.p_nilpotent && p2.p_soluble && !p2.p_supersoluble);
        assert!(p2.u_p_hypercenter.is_trivial());
        let p3 = &profile.per_prime[1];
        assert_eq!(p3.p, 3);
        assert!(!p3.p_nilpotent && p3.p_soluble && p3.p_supersoluble);
        assert_eq!(p3.u_p_hypercenter.order(), 24);
    }
}
