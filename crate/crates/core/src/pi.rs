//! The partial Π-property: the normalizer-index condition along chief series.
//!
//! A subgroup H of G satisfies the property when *some* chief series
//! 1 = N₀ < N₁ < ⋯ < Nₖ = G exists such that for every adjacent pair
//! (A, B) = (Nᵢ, Nᵢ₊₁), writing K = HA ∩ B, the index |G : N_G(K)| is
//! divisible only by primes of |K/A|. The search over series is a memoized
//! reachability walk on the normal-subgroup lattice: whether the top can be
//! reached from a node N is independent of the path taken to N, because each
//! edge condition depends only on its own endpoints.

use crate::error::GroupError;
use crate::group::Group;
use crate::bitset::ElementBitset;
use crate::chief::ChiefSeries;
use crate::primes::PrimeSet;
use crate::quotient::QuotientMap;
use crate::subgroup::Subgroup;
use crate::Caps;
use std::collections::HashMap;
use std::sync::Arc;

/// Outcome of the condition at one chief-series edge (A, B) for a subgroup H.
#[derive(Clone, Debug)]
pub struct FactorCheck {
    /// Whether |G : N_G(K)| is a π(K/A)-number.
    pub holds: bool,
    /// |K| for K = HA ∩ B.
    pub k_order: u128,
    /// π(K/A), the prime set the normalizer index must stay within.
    pub factor_pi: PrimeSet,
    /// |G : N_G(K)|.
    pub normalizer_index: u128,
}

/// The edge on which a failed search is reported: the first failing factor of
/// the canonical first chief series.
#[derive(Clone, Debug)]
pub struct FactorFailure {
    pub below: Subgroup,
    pub above: Subgroup,
    pub check: FactorCheck,
}

/// Result of the full search, with enough detail to reproduce it: a passing
/// series on success, a canonical failing edge otherwise, and the number of
/// lattice nodes whose reachability was decided.
#[derive(Clone, Debug)]
pub struct PiVerdict {
    pub holds: bool,
    pub witness: Option<ChiefSeries>,
    pub failure: Option<FactorFailure>,
    pub explored: usize,
}

fn check_ambient(g: &Arc<Group>, h: &Subgroup) -> Result<(), GroupError> {
    if Arc::ptr_eq(h.ambient(), g) || crate::group::same_element_set(h.ambient(), g) {
        Ok(())
    } else {
        Err(GroupError::AmbientMismatch)
    }
}

/// Evaluates the edge condition for H at the adjacent pair (below, above).
/// Both must be normal in the ambient group with `below` ≤ `above`.
pub fn factor_condition(
    g: &Arc<Group>,
    h: &Subgroup,
    below: &Subgroup,
    above: &Subgroup,
    caps: Caps,
) -> Result<FactorCheck, GroupError> {
    check_ambient(g, h)?;
    if !above.contains_subgroup(below)? {
        return Err(GroupError::NotASubgroup);
    }
    if !below.is_normal() || !above.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let k = h.join(below)?.intersection(above, caps)?;
    let factor_pi = PrimeSet::of_order(k.order() / below.order());
    let normalizer_index = k.normalizer(caps)?.index_in_ambient();
    Ok(FactorCheck {
        holds: factor_pi.is_pi_number(normalizer_index),
        k_order: k.order(),
        factor_pi,
        normalizer_index,
    })
}

/// The same condition evaluated inside the quotient G/below: the normalizer
/// of K/below there corresponds to N_G(K)/below, so the index and the prime
/// set agree with the direct route. Kept as an independently computed twin
/// for cross-checking.
pub fn factor_condition_via_quotient(
    g: &Arc<Group>,
    h: &Subgroup,
    below: &Subgroup,
    above: &Subgroup,
    caps: Caps,
) -> Result<FactorCheck, GroupError> {
    check_ambient(g, h)?;
    if !above.contains_subgroup(below)? {
        return Err(GroupError::NotASubgroup);
    }
    let q = QuotientMap::new(g, below, caps)?;
    let k = h.join(below)?.intersection(above, caps)?;
    let k_bar = q.image_of(&k)?;
    let factor_pi = PrimeSet::of_order(k_bar.order());
    let normalizer_index = k_bar.normalizer(caps)?.index_in_ambient();
    Ok(FactorCheck {
        holds: factor_pi.is_pi_number(normalizer_index),
        k_order: k.order(),
        factor_pi,
        normalizer_index,
    })
}

fn reach(
    g: &Arc<Group>,
    h: &Subgroup,
    node: &Subgroup,
    memo: &mut HashMap<ElementBitset, bool>,
    caps: Caps,
) -> Result<bool, GroupError> {
    if node.order() == g.order() {
        return Ok(true);
    }
    let key = node.key(caps)?.clone();
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    let mut result = false;
    for m in g.minimal_normal_overgroups(node, caps)? {
        if factor_condition(g, h, node, &m, caps)?.holds && reach(g, h, &m, memo, caps)? {
            result = true;
            break;
        }
    }
    if memo.len() >= caps.memo {
        return Err(GroupError::MemoCapExceeded { cap: caps.memo });
    }
    memo.insert(key, result);
    Ok(result)
}

/// Decides the property for H in the ambient group `g` by memoized search,
/// and produces a witness: a passing chief series on success, or the first
/// failing edge of the canonical series on failure.
pub fn satisfies_partial_pi(
    g: &Arc<Group>,
    h: &Subgroup,
    caps: Caps,
) -> Result<PiVerdict, GroupError> {
    check_ambient(g, h)?;
    let mut memo: HashMap<ElementBitset, bool> = HashMap::new();
    let root = g.trivial_subgroup();
    let holds = reach(g, h, &root, &mut memo, caps)?;
    let explored = memo.len();
    if holds {
        // Replay the deterministic search to extract the passing series; the
        // memo already covers every node the replay can consult.
        let mut steps: Vec<Subgroup> = vec![root];
        loop {
            let cur = steps.last().unwrap().clone();
            if cur.order() == g.order() {
                break;
            }
            let mut advanced = false;
            for m in g.minimal_normal_overgroups(&cur, caps)? {
                let reachable = m.order() == g.order()
                    || *memo.get(m.key(caps)?).expect("search covered the replay frontier");
                if factor_condition(g, h, &cur, &m, caps)?.holds && reachable {
                    steps.push(m);
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "a reachable node always has a passing edge onward");
        }
        Ok(PiVerdict {
            holds: true,
            witness: Some(ChiefSeries::from_steps(steps)),
            failure: None,
            explored,
        })
    } else {
        // Every series fails; report the first failing edge of the first one.
        let series = g.first_chief_series(caps)?;
        let mut failure = None;
        for (below, above) in series.factor_pairs() {
            let check = factor_condition(g, h, below, above, caps)?;
            if !check.holds {
                failure = Some(FactorFailure {
                    below: below.clone(),
                    above: above.clone(),
                    check,
                });
                break;
            }
        }
        Ok(PiVerdict {
            holds: false,
            witness: None,
            failure: Some(failure.expect("a failed search leaves a failing edge in every series")),
            explored,
        })
    }
}

/// Brute-force twin of [`satisfies_partial_pi`]: tries every chief series
/// outright. Exponentially slower on rich lattices; used for cross-checks.
pub fn satisfies_partial_pi_exhaustive(
    g: &Arc<Group>,
    h: &Subgroup,
    caps: Caps,
) -> Result<bool, GroupError> {
    check_ambient(g, h)?;
    for series in g.chief_series_iter(caps) {
        let series = series?;
        let mut all = true;
        for (below, above) in series.factor_pairs() {
            if !factor_condition(g, h, below, above, caps)?.holds {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}
