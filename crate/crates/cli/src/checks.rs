//! The verification suites.
//!
//! Each suite instantiates one statement's quantifiers over a corpus group
//! and classifies every instantiation as verified, vacuous, or a
//! counterexample.  Quantifiers over normal subgroups and over maximal
//! subgroups of p-groups are exhaustive; quantifiers over arbitrary
//! (p-)subgroups are sampled as all cyclic subgroups plus all Sylow
//! subgroups, up to [`SAMPLE_CAP`] per group, with the policy recorded in the
//! report header.

use crate::report::{CapsLine, CheckId, CheckReport, Params, ReportHeader, Status, Summary};
use chieftain_core::primes::{gcd, p_part};
use chieftain_core::{
    satisfies_partial_pi, Caps, CorpusEntry, ElementBitset, Group, GroupError, QuotientMap,
    Subgroup,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

/// Most sampled subgroups per (group, quantifier) for the non-exhaustive
/// quantifiers.
pub const SAMPLE_CAP: usize = 50;

/// Human summary of the sampling policy, embedded in every report header.
pub const SAMPLING_POLICY: &str = "exhaustive over normal subgroups and over maximal subgroups of p-groups; arbitrary-subgroup quantifiers sampled as all cyclic subgroups plus all Sylow subgroups, at most 50 per group";

/// A hypothesis that the counterexample-search mode removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DropHypothesis {
    /// The side condition gcd(|G|, p-1) = 1.
    GcdCondition,
    /// The requirement that the derived subgroup of the Sylow subgroup
    /// satisfies the membership condition in G.
    PPrimeSubgroupCondition,
    /// The requirement that every maximal subgroup of the Sylow subgroup
    /// satisfies the membership condition in the Sylow normalizer.
    PiInNormalizer,
}

impl DropHypothesis {
    pub fn as_str(self) -> &'static str {
        match self {
            DropHypothesis::GcdCondition => "gcd-condition",
            DropHypothesis::PPrimeSubgroupCondition => "pprime-subgroup-condition",
            DropHypothesis::PiInNormalizer => "pi-in-normalizer",
        }
    }
}

impl std::fmt::Display for DropHypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for DropHypothesis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gcd-condition" => Ok(DropHypothesis::GcdCondition),
            "pprime-subgroup-condition" => Ok(DropHypothesis::PPrimeSubgroupCondition),
            "pi-in-normalizer" => Ok(DropHypothesis::PiInNormalizer),
            _ => Err(format!(
                "unknown hypothesis `{s}` (expected gcd-condition, pprime-subgroup-condition, or pi-in-normalizer)"
            )),
        }
    }
}

/// What to run and under which resource bounds.
#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Suites to run, canonicalized to execution order.
    pub checks: Vec<CheckId>,
    /// Prime filter; `None` means every prime dividing the group order.
    pub primes: Option<Vec<u64>>,
    pub caps: Caps,
    /// Hypothesis removed in search mode; `None` for normal verification.
    pub drop: Option<DropHypothesis>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            checks: CheckId::ALL.to_vec(),
            primes: None,
            caps: Caps::default(),
            drop: None,
        }
    }
}

/// Outcome of a full verification run over a corpus.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub header: ReportHeader,
    pub reports: Vec<CheckReport>,
    pub summary: Summary,
    /// Outcome counts broken down per suite.
    pub per_check: BTreeMap<CheckId, Summary>,
}

impl RunResult {
    pub fn counterexamples(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports
            .iter()
            .filter(|r| r.status == Status::Counterexample)
    }

    /// Human-readable per-suite outcome table plus a list of any
    /// counterexamples and skipped instances.
    pub fn breakdown(&self) -> String {
        let mut s = String::new();
        s.push_str("suite  verified  vacuous  counterexample  skipped-cap\n");
        for (id, sum) in &self.per_check {
            s.push_str(&format!(
                "{:<5}  {:>8}  {:>7}  {:>14}  {:>11}\n",
                id.as_str(),
                sum.verified,
                sum.vacuous,
                sum.counterexample,
                sum.skipped
            ));
        }
        s.push_str(&format!(
            "total  {:>8}  {:>7}  {:>14}  {:>11}\n",
            self.summary.verified,
            self.summary.vacuous,
            self.summary.counterexample,
            self.summary.skipped
        ));
        let cxs: Vec<&CheckReport> = self.counterexamples().collect();
        if cxs.is_empty() {
            s.push_str("counterexamples: none\n");
        } else {
            s.push_str(&format!("counterexamples: {}\n", cxs.len()));
            for r in cxs {
                s.push_str(&format!("  {} {}{}{}\n", r.check_id, r.group, r.params.compact(), {
                    match &r.witness {
                        Some(w) => format!(": {w}"),
                        None => String::new(),
                    }
                }));
            }
        }
        let skips = self
            .reports
            .iter()
            .filter(|r| r.status == Status::SkippedCap)
            .count();
        if skips > 0 {
            s.push_str(&format!(
                "skipped-cap instances: {skips} (raise --cap to attempt them)\n"
            ));
        }
        s
    }
}

/// Whether the error is a resource-cap stop rather than a hard failure.
pub fn is_cap_error(e: &GroupError) -> bool {
    matches!(
        e,
        GroupError::CapExceeded { .. }
            | GroupError::LatticeCapExceeded { .. }
            | GroupError::MemoCapExceeded { .. }
    )
}

/// Compact record of one membership-condition verdict, cheap to cache.
#[derive(Clone, Debug)]
pub struct PiOutcome {
    pub holds: bool,
    /// Orders along the witnessing chief series, when the condition holds.
    pub witness_orders: Option<Vec<u128>>,
    /// The canonical failing edge, when it does not.
    pub failure: Option<PiFailure>,
}

#[derive(Clone, Debug)]
pub struct PiFailure {
    pub below_order: u128,
    pub above_order: u128,
    pub normalizer_index: u128,
}

/// Per-group working state: the group, its quantifier ranges, and caches for
/// everything that recurs across suites (quotients, Sylow data, membership
/// verdicts keyed by ambient identity and element set).
pub struct GroupCtx {
    pub name: String,
    pub g: Arc<Group>,
    caps: Caps,
    normals: RefCell<Option<Result<Vec<Subgroup>, GroupError>>>,
    min_normals: RefCell<Option<Result<Vec<Subgroup>, GroupError>>>,
    quotients: RefCell<HashMap<ElementBitset, Arc<QuotientMap>>>,
    pi_cache: RefCell<HashMap<(usize, ElementBitset), PiOutcome>>,
    /// Ambient groups whose pointers key `pi_cache`; holding them pins the
    /// addresses for the lifetime of the context.
    retained: RefCell<Vec<Arc<Group>>>,
    sylow: RefCell<HashMap<u64, Subgroup>>,
    normalizers: RefCell<HashMap<ElementBitset, Subgroup>>,
    sylow_maximals_ok: RefCell<HashMap<u64, bool>>,
    sylow_derived_ok: RefCell<HashMap<u64, bool>>,
    p_nilpotent: RefCell<HashMap<u64, bool>>,
    supersoluble: RefCell<Option<bool>>,
    tower: RefCell<Option<bool>>,
    u_hyp: RefCell<Option<Subgroup>>,
    u_p_hyp: RefCell<HashMap<u64, Subgroup>>,
    family_all: RefCell<Option<Vec<Subgroup>>>,
    family_p: RefCell<HashMap<u64, Vec<Subgroup>>>,
}

impl GroupCtx {
    pub fn new(entry: &CorpusEntry, caps: Caps) -> Result<GroupCtx, GroupError> {
        Ok(GroupCtx {
            name: entry.name.clone(),
            g: entry.group()?,
            caps,
            normals: RefCell::new(None),
            min_normals: RefCell::new(None),
            quotients: RefCell::new(HashMap::new()),
            pi_cache: RefCell::new(HashMap::new()),
            retained: RefCell::new(Vec::new()),
            sylow: RefCell::new(HashMap::new()),
            normalizers: RefCell::new(HashMap::new()),
            sylow_maximals_ok: RefCell::new(HashMap::new()),
            sylow_derived_ok: RefCell::new(HashMap::new()),
            p_nilpotent: RefCell::new(HashMap::new()),
            supersoluble: RefCell::new(None),
            tower: RefCell::new(None),
            u_hyp: RefCell::new(None),
            u_p_hyp: RefCell::new(HashMap::new()),
            family_all: RefCell::new(None),
            family_p: RefCell::new(HashMap::new()),
        })
    }

    fn retain(&self, ambient: &Arc<Group>) {
        let mut r = self.retained.borrow_mut();
        if !r.iter().any(|a| Arc::ptr_eq(a, ambient)) {
            r.push(ambient.clone());
        }
    }

    /// Every normal subgroup, sorted ascending by order; index i in this list
    /// is the `normal#i` of the report descriptors.
    fn normals(&self) -> Result<Vec<Subgroup>, GroupError> {
        let mut slot = self.normals.borrow_mut();
        if slot.is_none() {
            *slot = Some(self.g.all_normal_subgroups(self.caps));
        }
        slot.as_ref().unwrap().clone()
    }

    fn min_normals(&self) -> Result<Vec<Subgroup>, GroupError> {
        let mut slot = self.min_normals.borrow_mut();
        if slot.is_none() {
            *slot = Some(
                self.g
                    .minimal_normal_overgroups(&self.g.trivial_subgroup(), self.caps),
            );
        }
        slot.as_ref().unwrap().clone()
    }

    fn sylow(&self, p: u64) -> Result<Subgroup, GroupError> {
        if let Some(s) = self.sylow.borrow().get(&p) {
            return Ok(s.clone());
        }
        let s = self.g.sylow_subgroup(p, self.caps)?;
        self.sylow.borrow_mut().insert(p, s.clone());
        Ok(s)
    }

    /// Normalizer in G, cached by the subgroup's element set.
    fn normalizer_of(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        debug_assert!(Arc::ptr_eq(h.ambient(), &self.g));
        let key = h.key(self.caps)?.clone();
        if let Some(n) = self.normalizers.borrow().get(&key) {
            return Ok(n.clone());
        }
        let n = h.normalizer(self.caps)?;
        self.normalizers.borrow_mut().insert(key, n.clone());
        Ok(n)
    }

    /// The membership-condition verdict for `h` inside `ambient`, cached by
    /// (ambient identity, element set of h).
    pub fn pi_in(&self, ambient: &Arc<Group>, h: &Subgroup) -> Result<PiOutcome, GroupError> {
        debug_assert!(Arc::ptr_eq(h.ambient(), ambient));
        let key = (Arc::as_ptr(ambient) as usize, h.key(self.caps)?.clone());
        if let Some(hit) = self.pi_cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        self.retain(ambient);
        let v = satisfies_partial_pi(ambient, h, self.caps)?;
        let out = PiOutcome {
            holds: v.holds,
            witness_orders: v
                .witness
                .map(|s| s.steps().iter().map(|n| n.order()).collect()),
            failure: v.failure.map(|f| PiFailure {
                below_order: f.below.order(),
                above_order: f.above.order(),
                normalizer_index: f.check.normalizer_index,
            }),
        };
        self.pi_cache.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// The subgroup's own closure as an ambient group, except that a subgroup
    /// equal to the whole group reuses G itself so verdict caches keyed by
    /// ambient identity keep hitting.
    fn group_of(&self, n: &Subgroup) -> Arc<Group> {
        if n.order() == self.g.order() {
            self.g.clone()
        } else {
            n.group().clone()
        }
    }

    /// Whether every maximal subgroup of the p-group `p_sub` (a subgroup of
    /// `ambient`) satisfies the membership condition in its normalizer taken
    /// inside `ambient`.
    fn maximals_satisfy_in_normalizer(
        &self,
        ambient: &Arc<Group>,
        p_sub: &Subgroup,
    ) -> Result<bool, GroupError> {
        let norm = if Arc::ptr_eq(ambient, &self.g) {
            self.normalizer_of(p_sub)?
        } else {
            p_sub.normalizer(self.caps)?
        };
        let in_whole = norm.order() == ambient.order();
        let amb = if in_whole {
            ambient.clone()
        } else {
            norm.group().clone()
        };
        self.retain(&amb);
        for m in p_sub.maximal_subgroups()? {
            let h = if in_whole { m } else { m.rebase_to(&amb)? };
            if !self.pi_in(&amb, &h)?.holds {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// T3/C1 hypothesis piece for P = Syl_p(G), cached per prime.
    fn sylow_maximals_ok(&self, p: u64) -> Result<bool, GroupError> {
        if let Some(&b) = self.sylow_maximals_ok.borrow().get(&p) {
            return Ok(b);
        }
        let s = self.sylow(p)?;
        let b = self.maximals_satisfy_in_normalizer(&self.g, &s)?;
        self.sylow_maximals_ok.borrow_mut().insert(p, b);
        Ok(b)
    }

    /// Whether the derived subgroup of Syl_p(G) satisfies the membership
    /// condition in G, cached per prime.
    fn sylow_derived_ok(&self, p: u64) -> Result<bool, GroupError> {
        if let Some(&b) = self.sylow_derived_ok.borrow().get(&p) {
            return Ok(b);
        }
        let d = self.sylow(p)?.derived_subgroup()?;
        let b = self.pi_in(&self.g, &d)?.holds;
        self.sylow_derived_ok.borrow_mut().insert(p, b);
        Ok(b)
    }

    fn p_nilpotent(&self, p: u64) -> Result<bool, GroupError> {
        if let Some(&b) = self.p_nilpotent.borrow().get(&p) {
            return Ok(b);
        }
        let b = self.g.is_p_nilpotent(p, self.caps)?;
        self.p_nilpotent.borrow_mut().insert(p, b);
        Ok(b)
    }

    fn supersoluble(&self) -> Result<bool, GroupError> {
        let mut slot = self.supersoluble.borrow_mut();
        if slot.is_none() {
            *slot = Some(self.g.is_supersoluble(self.caps)?);
        }
        Ok(slot.unwrap())
    }

    fn tower(&self) -> Result<bool, GroupError> {
        let mut slot = self.tower.borrow_mut();
        if slot.is_none() {
            *slot = Some(self.g.is_sylow_tower_supersoluble_type(self.caps)?);
        }
        Ok(slot.unwrap())
    }

    fn u_hypercenter(&self) -> Result<Subgroup, GroupError> {
        let mut slot = self.u_hyp.borrow_mut();
        if slot.is_none() {
            *slot = Some(self.g.u_hypercenter(self.caps)?);
        }
        Ok(slot.as_ref().unwrap().clone())
    }

    fn u_p_hypercenter(&self, p: u64) -> Result<Subgroup, GroupError> {
        if let Some(z) = self.u_p_hyp.borrow().get(&p) {
            return Ok(z.clone());
        }
        let z = self.g.u_p_hypercenter(p, self.caps)?;
        self.u_p_hyp.borrow_mut().insert(p, z.clone());
        Ok(z)
    }

    fn quotient(&self, n: &Subgroup) -> Result<Arc<QuotientMap>, GroupError> {
        let key = n.key(self.caps)?.clone();
        if let Some(q) = self.quotients.borrow().get(&key) {
            return Ok(q.clone());
        }
        let q = Arc::new(QuotientMap::new(&self.g, n, self.caps)?);
        self.quotients.borrow_mut().insert(key, q.clone());
        Ok(q)
    }

    /// Sampled subgroup family for unrestricted subgroup quantifiers: Sylow
    /// subgroups first (so truncation never drops them), then cyclic
    /// subgroups in element-index order; deduplicated by element set.
    fn family_all(&self) -> Result<Vec<Subgroup>, GroupError> {
        if let Some(f) = self.family_all.borrow().as_ref() {
            return Ok(f.clone());
        }
        let mut fam: Vec<Subgroup> = Vec::new();
        let mut seen: HashSet<ElementBitset> = HashSet::new();
        for p in self.g.prime_spectrum().iter() {
            let s = self.sylow(p)?;
            if !s.is_trivial() && seen.insert(s.key(self.caps)?.clone()) {
                fam.push(s);
            }
        }
        let idx = self.g.element_index(self.caps.element)?;
        for i in 0..idx.len() {
            if fam.len() >= SAMPLE_CAP {
                break;
            }
            let x = idx.get(i);
            if x.is_identity() {
                continue;
            }
            let h = Subgroup::generated_in(&self.g, &[x.clone()])?;
            if seen.insert(h.key(self.caps)?.clone()) {
                fam.push(h);
            }
        }
        fam.truncate(SAMPLE_CAP);
        *self.family_all.borrow_mut() = Some(fam.clone());
        Ok(fam)
    }

    /// Sampled p-subgroup family: the Sylow p-subgroup, then cyclic subgroups
    /// generated by p-elements in element-index order.
    fn family_p(&self, p: u64) -> Result<Vec<Subgroup>, GroupError> {
        if let Some(f) = self.family_p.borrow().get(&p) {
            return Ok(f.clone());
        }
        let mut fam: Vec<Subgroup> = Vec::new();
        let mut seen: HashSet<ElementBitset> = HashSet::new();
        let s = self.sylow(p)?;
        if !s.is_trivial() {
            seen.insert(s.key(self.caps)?.clone());
            fam.push(s);
        }
        let idx = self.g.element_index(self.caps.element)?;
        for i in 0..idx.len() {
            if fam.len() >= SAMPLE_CAP {
                break;
            }
            let x = idx.get(i);
            let o = x.order();
            if x.is_identity() || p_part(o, p) != o {
                continue;
            }
            let h = Subgroup::generated_in(&self.g, &[x.clone()])?;
            if seen.insert(h.key(self.caps)?.clone()) {
                fam.push(h);
            }
        }
        fam.truncate(SAMPLE_CAP);
        self.family_p.borrow_mut().insert(p, fam.clone());
        Ok(fam)
    }

    fn requested_primes(&self, opts: &RunOptions) -> Vec<u64> {
        match &opts.primes {
            Some(ps) => ps.clone(),
            None => self.g.prime_spectrum().iter().collect(),
        }
    }
}

/// Pushes one classified report, turning cap errors inside the instance
/// computation into an explicit skipped-cap record.
fn push_instance(
    out: &mut Vec<CheckReport>,
    id: CheckId,
    group: &str,
    params: Params,
    f: impl FnOnce() -> Result<(bool, Option<bool>, Option<String>), GroupError>,
) -> Result<(), GroupError> {
    let t = Instant::now();
    let mut rep = match f() {
        Ok((hyp, concl, wit)) => CheckReport::classified(id, group, params, hyp, concl, wit),
        Err(e) if is_cap_error(&e) => CheckReport::skipped(id, group, params, &e.to_string()),
        Err(e) => return Err(e),
    };
    rep.elapsed_ms = t.elapsed().as_millis() as u64;
    out.push(rep);
    Ok(())
}

/// Unwraps a quantifier-range computation, emitting a single skipped-cap
/// record for the whole suite when a cap prevented enumeration.
fn range_or_skip<T>(
    out: &mut Vec<CheckReport>,
    id: CheckId,
    group: &str,
    r: Result<T, GroupError>,
) -> Result<Option<T>, GroupError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if is_cap_error(&e) => {
            out.push(CheckReport::skipped(id, group, Params::none(), &e.to_string()));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn describe(prefix: &str, i: usize, order: u128) -> String {
    format!("{prefix}#{i} order {order}")
}

impl GroupCtx {
    /// Normal p-subgroups whose maximal subgroups all satisfy the membership
    /// condition in G lie in the U-hypercenter.
    fn check_t1(&self, opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::T1, &self.name, self.normals())? else {
            return Ok(());
        };
        for p in self.requested_primes(opts) {
            for (i, n) in normals.iter().enumerate() {
                if n.is_trivial() || p_part(n.order(), p) != n.order() {
                    continue;
                }
                let params = Params {
                    prime: Some(p),
                    subgroup: Some(describe("normal", i, n.order())),
                    ..Params::default()
                };
                push_instance(out, CheckId::T1, &self.name, params, || {
                    let mut hyp = true;
                    for m in n.maximal_subgroups()? {
                        if !self.pi_in(&self.g, &m)?.holds {
                            hyp = false;
                            break;
                        }
                    }
                    if !hyp {
                        return Ok((false, None, None));
                    }
                    let z = self.u_hypercenter()?;
                    let concl = z.contains_subgroup(n)?;
                    let wit = (!concl)
                        .then(|| format!("hypercenter order {} does not contain it", z.order()));
                    Ok((true, Some(concl), wit))
                })?;
            }
        }
        Ok(())
    }

    /// For normal E with Sylow p-subgroup P: if every maximal subgroup of P
    /// satisfies the condition in G, then E lies in the (U, p)-hypercenter or
    /// |E|_p = p.  E of order coprime to p is treated as hypothesis-unmet.
    fn check_t2(&self, opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::T2, &self.name, self.normals())? else {
            return Ok(());
        };
        for p in self.requested_primes(opts) {
            for (i, e) in normals.iter().enumerate() {
                let params = Params {
                    prime: Some(p),
                    normal: Some(describe("normal", i, e.order())),
                    ..Params::default()
                };
                push_instance(out, CheckId::T2, &self.name, params, || {
                    let ep = p_part(e.order(), p);
                    if ep == 1 {
                        return Ok((false, None, None));
                    }
                    let sp = e.sylow_subgroup(p, self.caps)?;
                    for m in sp.maximal_subgroups()? {
                        if !self.pi_in(&self.g, &m)?.holds {
                            return Ok((false, None, None));
                        }
                    }
                    let z = self.u_p_hypercenter(p)?;
                    let concl = z.contains_subgroup(e)? || ep == p as u128;
                    let wit = (!concl).then(|| {
                        format!("p-hypercenter order {} misses it and |E|_p = {ep}", z.order())
                    });
                    Ok((true, Some(concl), wit))
                })?;
            }
        }
        Ok(())
    }

    /// The p-nilpotency criterion as a biconditional: under the side
    /// conditions p | |G| and gcd(|G|, p-1) = 1, G is p-nilpotent exactly
    /// when every maximal subgroup of P = Syl_p(G) satisfies the condition in
    /// N_G(P) and P' satisfies it in G.
    fn check_t3(&self, opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let drop = opts.drop;
        for p in self.requested_primes(opts) {
            push_instance(out, CheckId::T3, &self.name, Params::prime(p), || {
                let divides = self.g.order() % p as u128 == 0;
                let gcd_ok = gcd(self.g.order(), (p - 1) as u128) == 1;
                let hyp = divides && (gcd_ok || drop == Some(DropHypothesis::GcdCondition));
                if !hyp {
                    return Ok((false, None, None));
                }
                let maximals_ok = drop == Some(DropHypothesis::PiInNormalizer)
                    || self.sylow_maximals_ok(p)?;
                let derived_ok = drop == Some(DropHypothesis::PPrimeSubgroupCondition)
                    || self.sylow_derived_ok(p)?;
                let criterion = maximals_ok && derived_ok;
                let nilpotent = self.p_nilpotent(p)?;
                let concl = criterion == nilpotent;
                let wit = (!concl).then(|| {
                    format!("criterion holds = {criterion} but p-nilpotent = {nilpotent}")
                });
                Ok((true, Some(concl), wit))
            })?;
        }
        Ok(())
    }

    /// Relative p-nilpotency criterion: for normal N with G/N p-nilpotent and
    /// P = Syl_p(N), the two membership-condition hypotheses force G itself
    /// to be p-nilpotent.
    fn check_t4(&self, opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::T4, &self.name, self.normals())? else {
            return Ok(());
        };
        let drop = opts.drop;
        for p in self.requested_primes(opts) {
            for (i, n) in normals.iter().enumerate() {
                let params = Params {
                    prime: Some(p),
                    normal: Some(describe("normal", i, n.order())),
                    ..Params::default()
                };
                push_instance(out, CheckId::T4, &self.name, params, || {
                    let divides = self.g.order() % p as u128 == 0;
                    let gcd_ok = gcd(self.g.order(), (p - 1) as u128) == 1
                        || drop == Some(DropHypothesis::GcdCondition);
                    if !(divides && gcd_ok) {
                        return Ok((false, None, None));
                    }
                    let q = self.quotient(n)?;
                    if !q.image_group().is_p_nilpotent(p, self.caps)? {
                        return Ok((false, None, None));
                    }
                    let sp = n.sylow_subgroup(p, self.caps)?;
                    let maximals_ok = drop == Some(DropHypothesis::PiInNormalizer)
                        || self.maximals_satisfy_in_normalizer(&self.g, &sp)?;
                    if !maximals_ok {
                        return Ok((false, None, None));
                    }
                    let derived_ok = drop == Some(DropHypothesis::PPrimeSubgroupCondition) || {
                        let d = sp.derived_subgroup()?;
                        self.pi_in(&self.g, &d)?.holds
                    };
                    if !derived_ok {
                        return Ok((false, None, None));
                    }
                    let concl = self.p_nilpotent(p)?;
                    Ok((true, Some(concl), None))
                })?;
            }
        }
        Ok(())
    }

    /// Supersolubility criterion: normal N with supersoluble quotient, plus
    /// the two membership-condition hypotheses for every prime dividing |N|,
    /// force G supersoluble.  The per-prime hypothesis is also recomputed on
    /// three seeded-random Sylow conjugates and must agree (conjugation
    /// equivariance of the criterion).
    fn check_t5(&self, _opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::T5, &self.name, self.normals())? else {
            return Ok(());
        };
        for (i, n) in normals.iter().enumerate() {
            let params = Params {
                normal: Some(describe("normal", i, n.order())),
                ..Params::default()
            };
            push_instance(out, CheckId::T5, &self.name, params, || {
                let q = self.quotient(n)?;
                if !q.image_group().is_supersoluble(self.caps)? {
                    return Ok((false, None, None));
                }
                let mut pi_ok = true;
                for p in n.prime_spectrum().iter() {
                    let sp = n.sylow_subgroup(p, self.caps)?;
                    let verdict = self.maximals_satisfy_in_normalizer(&self.g, &sp)? && {
                        let d = sp.derived_subgroup()?;
                        self.pi_in(&self.g, &d)?.holds
                    };
                    self.crosscheck_conjugates(&sp, verdict, i)?;
                    if !verdict {
                        pi_ok = false;
                        break;
                    }
                }
                if !pi_ok {
                    return Ok((false, None, None));
                }
                let concl = self.supersoluble()?;
                Ok((true, Some(concl), None))
            })?;
        }
        Ok(())
    }

    /// Re-evaluates the per-prime hypothesis of the supersolubility criterion
    /// on three seeded-random conjugates of the Sylow subgroup and asserts the
    /// verdict is unchanged.
    fn crosscheck_conjugates(
        &self,
        sp: &Subgroup,
        expected: bool,
        salt: usize,
    ) -> Result<(), GroupError> {
        if sp.is_trivial() {
            return Ok(());
        }
        let idx = self.g.element_index(self.caps.element)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x7A5u64 ^ (salt as u64));
        for _ in 0..3 {
            let x = idx.get(rng.gen_range(0..idx.len())).clone();
            let conj = sp.conjugate(&x)?;
            let verdict = self.maximals_satisfy_in_normalizer(&self.g, &conj)? && {
                let d = conj.derived_subgroup()?;
                self.pi_in(&self.g, &d)?.holds
            };
            assert_eq!(
                verdict, expected,
                "conjugation equivariance violated for a Sylow subgroup of order {} in {}",
                sp.order(),
                self.name
            );
        }
        Ok(())
    }

    /// Sylow-tower criterion: if for every prime the two membership-condition
    /// hypotheses hold, G has a Sylow tower of supersoluble type.  One report
    /// per group; the prime filter is deliberately ignored because the
    /// hypothesis quantifies over all primes at once.
    fn check_c1(&self, _opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        push_instance(out, CheckId::C1, &self.name, Params::none(), || {
            let mut hyp = true;
            for p in self.g.prime_spectrum().iter() {
                if !(self.sylow_maximals_ok(p)? && self.sylow_derived_ok(p)?) {
                    hyp = false;
                    break;
                }
            }
            if !hyp {
                return Ok((false, None, None));
            }
            let concl = self.tower()?;
            Ok((true, Some(concl), None))
        })
    }

    /// The condition passes to quotients: if H satisfies it in G and N is
    /// normal with N ≤ H or gcd(|H|, |N|) = 1, then HN/N satisfies it in G/N.
    fn check_l1(&self, _opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::L1, &self.name, self.normals())? else {
            return Ok(());
        };
        let Some(family) = range_or_skip(out, CheckId::L1, &self.name, self.family_all())? else {
            return Ok(());
        };
        for (i, n) in normals.iter().enumerate() {
            if n.is_trivial() {
                continue;
            }
            for (j, h) in family.iter().enumerate() {
                let params = Params {
                    subgroup: Some(describe("sample", j, h.order())),
                    normal: Some(describe("normal", i, n.order())),
                    ..Params::default()
                };
                push_instance(out, CheckId::L1, &self.name, params, || {
                    let compatible =
                        h.contains_subgroup(n)? || gcd(h.order(), n.order()) == 1;
                    if !compatible || !self.pi_in(&self.g, h)?.holds {
                        return Ok((false, None, None));
                    }
                    let q = self.quotient(n)?;
                    let hq = q.image_of(h)?;
                    let concl = self.pi_in(q.image_group(), &hq)?.holds;
                    let wit =
                        (!concl).then(|| format!("image of order {} fails", hq.order()));
                    Ok((true, Some(concl), wit))
                })?;
            }
        }
        Ok(())
    }

    /// The condition restricts to normal overgroups: a p-subgroup H ≤ N ⊴ G
    /// satisfying it in G satisfies it in N.
    fn check_l2(&self, opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::L2, &self.name, self.normals())? else {
            return Ok(());
        };
        for p in self.requested_primes(opts) {
            let Some(family) = range_or_skip(out, CheckId::L2, &self.name, self.family_p(p))?
            else {
                return Ok(());
            };
            for (i, n) in normals.iter().enumerate() {
                if n.is_trivial() {
                    continue;
                }
                for (j, h) in family.iter().enumerate() {
                    if !n.contains_subgroup(h)? {
                        continue;
                    }
                    let params = Params {
                        prime: Some(p),
                        subgroup: Some(describe("sample", j, h.order())),
                        normal: Some(describe("normal", i, n.order())),
                        ..Params::default()
                    };
                    push_instance(out, CheckId::L2, &self.name, params, || {
                        if !self.pi_in(&self.g, h)?.holds {
                            return Ok((false, None, None));
                        }
                        let amb = self.group_of(n);
                        let h_in_n = if Arc::ptr_eq(&amb, &self.g) {
                            h.clone()
                        } else {
                            h.rebase_to(&amb)?
                        };
                        let concl = self.pi_in(&amb, &h_in_n)?.holds;
                        Ok((true, Some(concl), None))
                    })?;
                }
            }
        }
        Ok(())
    }

    /// Normalizers pass to quotients: N_{G/N}(PN/N) = N_G(P)N/N when P is a
    /// Sylow p-subgroup of G (case "sylow") or when gcd(|N|, p) = 1 (case
    /// "coprime", folded over the sampled p-subgroup family).
    fn check_l3(&self, opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::L3, &self.name, self.normals())? else {
            return Ok(());
        };
        for p in self.requested_primes(opts) {
            for (i, n) in normals.iter().enumerate() {
                if n.is_trivial() {
                    continue;
                }
                let base = Params {
                    prime: Some(p),
                    normal: Some(describe("normal", i, n.order())),
                    ..Params::default()
                };
                let sylow_params = Params {
                    case: Some("sylow".into()),
                    ..base.clone()
                };
                push_instance(out, CheckId::L3, &self.name, sylow_params, || {
                    let sp = self.sylow(p)?;
                    let (ok, wit) = self.normalizer_image_agrees(n, &sp)?;
                    Ok((true, Some(ok), wit))
                })?;
                let coprime_params = Params {
                    case: Some("coprime".into()),
                    ..base
                };
                push_instance(out, CheckId::L3, &self.name, coprime_params, || {
                    if gcd(n.order(), p as u128) != 1 {
                        return Ok((false, None, None));
                    }
                    for h in self.family_p(p)? {
                        let (ok, wit) = self.normalizer_image_agrees(n, &h)?;
                        if !ok {
                            return Ok((true, Some(false), wit));
                        }
                    }
                    Ok((true, Some(true), None))
                })?;
            }
        }
        Ok(())
    }

    /// Compares the normalizer of the image with the image of the normalizer
    /// inside G/N.
    fn normalizer_image_agrees(
        &self,
        n: &Subgroup,
        p_sub: &Subgroup,
    ) -> Result<(bool, Option<String>), GroupError> {
        let q = self.quotient(n)?;
        let pq = q.image_of(p_sub)?;
        let lhs = pq.normalizer(self.caps)?;
        let rhs = q.image_of(&self.normalizer_of(p_sub)?)?;
        let ok = lhs.same_as(&rhs);
        let wit = (!ok).then(|| {
            format!(
                "quotient normalizer order {} vs mapped normalizer order {}",
                lhs.order(),
                rhs.order()
            )
        });
        Ok((ok, wit))
    }

    /// The Sylow-normalizer hypothesis passes to quotients: if every maximal
    /// subgroup of P = Syl_p(G) satisfies the condition in N_G(P), the same
    /// holds for PK/K in N_{G/K}(PK/K).
    fn check_l4(&self, opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::L4, &self.name, self.normals())? else {
            return Ok(());
        };
        for p in self.requested_primes(opts) {
            for (i, k) in normals.iter().enumerate() {
                if k.is_trivial() {
                    continue;
                }
                let params = Params {
                    prime: Some(p),
                    normal: Some(describe("normal", i, k.order())),
                    ..Params::default()
                };
                push_instance(out, CheckId::L4, &self.name, params, || {
                    if !self.sylow_maximals_ok(p)? {
                        return Ok((false, None, None));
                    }
                    let q = self.quotient(k)?;
                    let pq = q.image_of(&self.sylow(p)?)?;
                    let concl = self.maximals_satisfy_in_normalizer(q.image_group(), &pq)?;
                    Ok((true, Some(concl), None))
                })?;
            }
        }
        Ok(())
    }

    /// Same passage to quotients for P ∈ Syl_p(H) with H normal in G and K a
    /// normal subgroup of order coprime to p.
    fn check_l5(&self, opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::L5, &self.name, self.normals())? else {
            return Ok(());
        };
        for p in self.requested_primes(opts) {
            for (i, h) in normals.iter().enumerate() {
                for (j, k) in normals.iter().enumerate() {
                    if k.is_trivial() || gcd(k.order(), p as u128) != 1 {
                        continue;
                    }
                    let params = Params {
                        prime: Some(p),
                        subgroup: Some(describe("normal", i, h.order())),
                        normal: Some(describe("normal", j, k.order())),
                        ..Params::default()
                    };
                    push_instance(out, CheckId::L5, &self.name, params, || {
                        let sp = h.sylow_subgroup(p, self.caps)?;
                        if !self.maximals_satisfy_in_normalizer(&self.g, &sp)? {
                            return Ok((false, None, None));
                        }
                        let q = self.quotient(k)?;
                        let pq = q.image_of(&sp)?;
                        let concl = self.maximals_satisfy_in_normalizer(q.image_group(), &pq)?;
                        Ok((true, Some(concl), None))
                    })?;
                }
            }
        }
        Ok(())
    }

    /// For soluble normal N whose contained minimal normal subgroups all
    /// avoid the Frattini subgroup of G, the Fitting subgroup of N is the
    /// direct product of the minimal normal subgroups of G inside N.
    fn check_l6(&self, _opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::L6, &self.name, self.normals())? else {
            return Ok(());
        };
        let Some(mins) = range_or_skip(out, CheckId::L6, &self.name, self.min_normals())? else {
            return Ok(());
        };
        for (i, n) in normals.iter().enumerate() {
            let params = Params {
                normal: Some(describe("normal", i, n.order())),
                ..Params::default()
            };
            push_instance(out, CheckId::L6, &self.name, params, || {
                if n.is_trivial() || !self.group_of(n).is_soluble()? {
                    return Ok((false, None, None));
                }
                let mut inside: Vec<&Subgroup> = Vec::new();
                for m in &mins {
                    if n.contains_subgroup(m)? {
                        inside.push(m);
                    }
                }
                for m in &inside {
                    if self.g.lies_in_frattini(m, self.caps)? {
                        return Ok((false, None, None));
                    }
                }
                // Greedy direct product: a skipped factor always meets the
                // running product nontrivially, hence (being minimal normal)
                // already lies inside it.
                let mut prod = self.g.trivial_subgroup();
                for m in &inside {
                    if prod.intersection(m, self.caps)?.is_trivial() {
                        prod = prod.join(m)?;
                    }
                }
                let fit = self.group_of(n).fitting_subgroup(self.caps)?;
                let fit_in_g = if fit.is_trivial() {
                    self.g.trivial_subgroup()
                } else {
                    Subgroup::generated_in(&self.g, fit.generators())?
                };
                let concl = prod.same_as(&fit_in_g);
                let wit = (!concl).then(|| {
                    format!(
                        "direct product of minimal normals has order {} but Fitting subgroup has order {}",
                        prod.order(),
                        fit_in_g.order()
                    )
                });
                Ok((true, Some(concl), wit))
            })?;
        }
        Ok(())
    }

    /// If P ∩ N lies in the Frattini subgroup of P = Syl_p(G) for a normal
    /// subgroup N, then N is p-nilpotent.
    fn check_l7(&self, opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        let Some(normals) = range_or_skip(out, CheckId::L7, &self.name, self.normals())? else {
            return Ok(());
        };
        for p in self.requested_primes(opts) {
            for (i, n) in normals.iter().enumerate() {
                let params = Params {
                    prime: Some(p),
                    normal: Some(describe("normal", i, n.order())),
                    ..Params::default()
                };
                push_instance(out, CheckId::L7, &self.name, params, || {
                    let sp = self.sylow(p)?;
                    let phi = sp.frattini_subgroup()?;
                    let inter = sp.intersection(n, self.caps)?;
                    if !phi.contains_subgroup(&inter)? {
                        return Ok((false, None, None));
                    }
                    let concl = self.group_of(n).is_p_nilpotent(p, self.caps)?;
                    Ok((true, Some(concl), None))
                })?;
            }
        }
        Ok(())
    }

    /// Every p-subgroup of a p-nilpotent group satisfies the condition.
    fn check_l8(&self, opts: &RunOptions, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        for p in self.requested_primes(opts) {
            let Some(family) = range_or_skip(out, CheckId::L8, &self.name, self.family_p(p))?
            else {
                return Ok(());
            };
            for (j, h) in family.iter().enumerate() {
                let params = Params {
                    prime: Some(p),
                    subgroup: Some(describe("sample", j, h.order())),
                    ..Params::default()
                };
                push_instance(out, CheckId::L8, &self.name, params, || {
                    if !self.p_nilpotent(p)? {
                        return Ok((false, None, None));
                    }
                    let concl = self.pi_in(&self.g, h)?.holds;
                    let wit = (!concl).then(|| {
                        format!("p-subgroup of order {} fails the condition", h.order())
                    });
                    Ok((true, Some(concl), wit))
                })?;
            }
        }
        Ok(())
    }

    /// Scripted reproduction on PSL(2,7) at p = 2: the Sylow normalizer is
    /// the Sylow subgroup itself, all three of its maximal subgroups satisfy
    /// the condition there, its derived subgroup fails in G with normalizer
    /// index 21, and G is not 2-nilpotent.
    fn check_r1(&self, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        if self.name != "PSL27" {
            return Ok(());
        }
        push_instance(out, CheckId::R1, &self.name, Params::prime(2), || {
            let mut facts: Vec<String> = Vec::new();
            let mut ok = true;
            let mut expect = |label: &str, got: bool, facts: &mut Vec<String>| {
                if got {
                    facts.push(label.to_string());
                } else {
                    ok = false;
                    facts.push(format!("FAILED: {label}"));
                }
            };
            expect("|G| = 168", self.g.order() == 168, &mut facts);
            let p_sub = self.sylow(2)?;
            let norm = self.normalizer_of(&p_sub)?;
            expect(
                "N_G(P) = P of order 8",
                norm.order() == 8 && norm.same_as(&p_sub),
                &mut facts,
            );
            let maximals = p_sub.maximal_subgroups()?;
            expect("P has 3 maximal subgroups", maximals.len() == 3, &mut facts);
            let amb = norm.group().clone();
            self.retain(&amb);
            let mut all = true;
            for m in &maximals {
                let h = m.rebase_to(&amb)?;
                all &= self.pi_in(&amb, &h)?.holds;
            }
            expect("all maximal subgroups satisfy in N_G(P)", all, &mut facts);
            let d = p_sub.derived_subgroup()?;
            expect("P' has order 2", d.order() == 2, &mut facts);
            let dv = self.pi_in(&self.g, &d)?;
            expect(
                "P' fails in G with normalizer index 21",
                !dv.holds
                    && dv
                        .failure
                        .as_ref()
                        .is_some_and(|f| f.normalizer_index == 21),
                &mut facts,
            );
            expect("G is not 2-nilpotent", !self.p_nilpotent(2)?, &mut facts);
            Ok((true, Some(ok), Some(facts.join("; "))))
        })
    }

    /// Scripted reproduction on A5 at p = 3: every maximal subgroup of the
    /// Sylow 3-subgroup satisfies the condition in its normalizer (order 6),
    /// the derived subgroup is trivial and satisfies it in G, yet A5 is not
    /// 3-nilpotent — the gcd side condition cannot be removed.
    fn check_r2(&self, out: &mut Vec<CheckReport>) -> Result<(), GroupError> {
        if self.name != "A5" {
            return Ok(());
        }
        push_instance(out, CheckId::R2, &self.name, Params::prime(3), || {
            let mut facts: Vec<String> = Vec::new();
            let mut ok = true;
            let mut expect = |label: &str, got: bool, facts: &mut Vec<String>| {
                if got {
                    facts.push(label.to_string());
                } else {
                    ok = false;
                    facts.push(format!("FAILED: {label}"));
                }
            };
            expect("|G| = 60", self.g.order() == 60, &mut facts);
            let p_sub = self.sylow(3)?;
            expect("|P| = 3", p_sub.order() == 3, &mut facts);
            let norm = self.normalizer_of(&p_sub)?;
            expect("|N_G(P)| = 6", norm.order() == 6, &mut facts);
            expect(
                "all maximal subgroups of P satisfy in N_G(P)",
                self.maximals_satisfy_in_normalizer(&self.g, &p_sub)?,
                &mut facts,
            );
            let d = p_sub.derived_subgroup()?;
            expect("P' = 1", d.is_trivial(), &mut facts);
            expect(
                "P' satisfies in G",
                self.pi_in(&self.g, &d)?.holds,
                &mut facts,
            );
            expect("G is not 3-nilpotent", !self.p_nilpotent(3)?, &mut facts);
            Ok((true, Some(ok), Some(facts.join("; "))))
        })
    }

    fn run_check(
        &self,
        id: CheckId,
        opts: &RunOptions,
        out: &mut Vec<CheckReport>,
    ) -> Result<(), GroupError> {
        match id {
            CheckId::T1 => self.check_t1(opts, out),
            CheckId::T2 => self.check_t2(opts, out),
            CheckId::T3 => self.check_t3(opts, out),
            CheckId::T4 => self.check_t4(opts, out),
            CheckId::T5 => self.check_t5(opts, out),
            CheckId::C1 => self.check_c1(opts, out),
            CheckId::L1 => self.check_l1(opts, out),
            CheckId::L2 => self.check_l2(opts, out),
            CheckId::L3 => self.check_l3(opts, out),
            CheckId::L4 => self.check_l4(opts, out),
            CheckId::L5 => self.check_l5(opts, out),
            CheckId::L6 => self.check_l6(opts, out),
            CheckId::L7 => self.check_l7(opts, out),
            CheckId::L8 => self.check_l8(opts, out),
            CheckId::R1 => self.check_r1(out),
            CheckId::R2 => self.check_r2(out),
        }
    }
}

fn run_entry(entry: &CorpusEntry, opts: &RunOptions) -> Result<Vec<CheckReport>, GroupError> {
    let ctx = GroupCtx::new(entry, opts.caps)?;
    let mut out = Vec::new();
    for &id in &opts.checks {
        ctx.run_check(id, opts, &mut out)?;
    }
    Ok(out)
}

fn header_for(opts: &RunOptions) -> ReportHeader {
    ReportHeader {
        report: "chieftain-verify".into(),
        sampling: SAMPLING_POLICY.into(),
        caps: CapsLine::from(opts.caps),
        checks: opts.checks.clone(),
        primes: opts.primes.clone(),
        dropped_hypothesis: opts.drop.map(|d| d.as_str().to_string()),
    }
}

/// Runs the requested suites over every corpus entry.  Entries are
/// independent work items checked concurrently when the `parallel` feature is
/// enabled; reports are emitted in corpus order regardless of completion
/// order.
pub fn run_verify(entries: &[CorpusEntry], opts: &RunOptions) -> Result<RunResult, GroupError> {
    let mut opts = opts.clone();
    // Canonical execution order, deduplicated.
    opts.checks = CheckId::ALL
        .iter()
        .copied()
        .filter(|c| opts.checks.contains(c))
        .collect();
    if let Some(ps) = &mut opts.primes {
        ps.sort_unstable();
        ps.dedup();
    }

    #[cfg(feature = "parallel")]
    let per_entry: Vec<Result<Vec<CheckReport>, GroupError>> = {
        use rayon::prelude::*;
        entries.par_iter().map(|e| run_entry(e, &opts)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_entry: Vec<Result<Vec<CheckReport>, GroupError>> =
        entries.iter().map(|e| run_entry(e, &opts)).collect();

    let mut reports = Vec::new();
    for r in per_entry {
        reports.extend(r?);
    }
    let summary = Summary::tally(&reports);
    let mut per_check: BTreeMap<CheckId, Summary> = BTreeMap::new();
    for id in &opts.checks {
        per_check.insert(*id, Summary::default());
    }
    for r in &reports {
        let s = per_check.entry(r.check_id).or_default();
        match r.status {
            Status::Verified => s.verified += 1,
            Status::Vacuous => s.vacuous += 1,
            Status::Counterexample => s.counterexample += 1,
            Status::SkippedCap => s.skipped += 1,
        }
    }
    Ok(RunResult {
        header: header_for(&opts),
        reports,
        summary,
        per_check,
    })
}

/// Outcome of a counterexample search with one hypothesis removed.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub run: RunResult,
    /// The specific instances this drop is expected to flag, when the corpus
    /// contains the relevant groups.
    pub expected: Vec<(String, u64)>,
    /// Expected instances that were NOT flagged — any entry here is a
    /// failure of the search.
    pub missing: Vec<(String, u64)>,
    /// Whether the weakened statement was refuted as expected.
    pub found_expected: bool,
}

/// Re-runs a p-nilpotency suite (T3 or T4) with one hypothesis removed; the
/// weakened statement is expected to be refuted by the corpus.
pub fn run_search(
    entries: &[CorpusEntry],
    check: CheckId,
    drop: DropHypothesis,
    caps: Caps,
) -> Result<SearchResult, GroupError> {
    assert!(
        matches!(check, CheckId::T3 | CheckId::T4),
        "search mode applies to the p-nilpotency suites T3 and T4"
    );
    let opts = RunOptions {
        checks: vec![check],
        primes: None,
        caps,
        drop: Some(drop),
    };
    let run = run_verify(entries, &opts)?;

    let has = |name: &str| entries.iter().any(|e| e.name == name);
    let mut expected: Vec<(String, u64)> = Vec::new();
    if check == CheckId::T3 {
        match drop {
            DropHypothesis::GcdCondition if has("A5") => expected.push(("A5".into(), 3)),
            DropHypothesis::PPrimeSubgroupCondition if has("PSL27") => {
                expected.push(("PSL27".into(), 2))
            }
            _ => {}
        }
    }
    let flagged: Vec<(String, u64)> = run
        .counterexamples()
        .map(|r| (r.group.clone(), r.params.prime.unwrap_or(0)))
        .collect();
    let missing: Vec<(String, u64)> = expected
        .iter()
        .filter(|e| !flagged.contains(e))
        .cloned()
        .collect();
    let found_expected = missing.is_empty() && !flagged.is_empty();
    Ok(SearchResult {
        run,
        expected,
        missing,
        found_expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chieftain_core::{builtin_corpus, find_entry};

    fn entry(name: &str) -> &'static CorpusEntry {
        find_entry(builtin_corpus(), name).expect("builtin entry")
    }

    fn run_on(names: &[&str], checks: &[CheckId]) -> RunResult {
        let entries: Vec<CorpusEntry> = names.iter().map(|n| entry(n).clone()).collect();
        let opts = RunOptions {
            checks: checks.to_vec(),
            ..RunOptions::default()
        };
        run_verify(&entries, &opts).expect("run succeeds")
    }

    #[test]
    fn t3_verifies_on_small_groups() {
        let res = run_on(&["S3", "S4", "A4", "D8", "Q8", "SL23"], &[CheckId::T3]);
        assert_eq!(res.summary.counterexample, 0);
        assert_eq!(res.summary.skipped, 0);
        // S3 at p=2 meets the side conditions and is 2-nilpotent.
        let s3p2 = res
            .reports
            .iter()
            .find(|r| r.group == "S3" && r.params.prime == Some(2))
            .unwrap();
        assert_eq!(s3p2.status, Status::Verified);
        assert_eq!(s3p2.conclusion_holds, Some(true));
        // S3 at p=3 fails gcd(6, 2) = 1 and is vacuous.
        let s3p3 = res
            .reports
            .iter()
            .find(|r| r.group == "S3" && r.params.prime == Some(3))
            .unwrap();
        assert_eq!(s3p3.status, Status::Vacuous);
    }

    #[test]
    fn t1_hypercenter_containment_on_d8() {
        // Every nontrivial normal subgroup of a 2-group is a normal
        // 2-subgroup with all maximal subgroups satisfying the condition, and
        // the U-hypercenter of D8 is D8 itself.
        let res = run_on(&["D8"], &[CheckId::T1]);
        assert!(res.summary.verified >= 5);
        assert_eq!(res.summary.counterexample, 0);
        assert_eq!(res.summary.vacuous, 0);
    }

    #[test]
    fn r1_and_r2_reproduce() {
        let res = run_on(&["PSL27", "A5"], &[CheckId::R1, CheckId::R2]);
        assert_eq!(res.reports.len(), 2);
        for r in &res.reports {
            assert_eq!(r.status, Status::Verified, "{:?}", r);
            assert_eq!(r.conclusion_holds, Some(true));
            assert!(r.witness.as_ref().unwrap().contains("not"));
        }
    }

    #[test]
    fn search_gcd_drop_flags_a5_at_3() {
        let entries: Vec<CorpusEntry> =
            ["A5", "S3", "C6"].iter().map(|n| entry(n).clone()).collect();
        let res = run_search(
            &entries,
            CheckId::T3,
            DropHypothesis::GcdCondition,
            Caps::default(),
        )
        .unwrap();
        assert!(res.found_expected);
        assert!(res.missing.is_empty());
        let flagged: Vec<_> = res.run.counterexamples().collect();
        assert!(flagged
            .iter()
            .any(|r| r.group == "A5" && r.params.prime == Some(3)));
    }

    #[test]
    fn search_pi_drop_finds_a_counterexample() {
        let entries: Vec<CorpusEntry> =
            ["SL23", "S4", "C12"].iter().map(|n| entry(n).clone()).collect();
        let res = run_search(
            &entries,
            CheckId::T3,
            DropHypothesis::PiInNormalizer,
            Caps::default(),
        )
        .unwrap();
        // The derived subgroup of the Sylow 2-subgroup of SL(2,3) is its
        // center, which satisfies the condition, yet SL(2,3) is not
        // 2-nilpotent: dropping the normalizer hypothesis breaks T3.
        assert!(res.found_expected);
        assert!(res
            .run
            .counterexamples()
            .any(|r| r.group == "SL23" && r.params.prime == Some(2)));
    }

    #[test]
    fn tight_caps_yield_skipped_not_silence() {
        let e = entry("S4").clone();
        let opts = RunOptions {
            checks: vec![CheckId::T1],
            primes: None,
            caps: Caps {
                element: 4,
                lattice: 2,
                memo: 2,
                filter: 2,
            },
            drop: None,
        };
        let res = run_verify(&[e], &opts).unwrap();
        assert!(res.summary.skipped > 0);
        assert_eq!(res.summary.verified + res.summary.counterexample, 0);
        let skipped = &res.reports[0];
        assert_eq!(skipped.status, Status::SkippedCap);
        assert!(skipped.witness.is_some());
    }

    #[test]
    fn l6_fitting_decomposition_on_s4_and_d12() {
        let res = run_on(&["S4", "D12"], &[CheckId::L6]);
        assert_eq!(res.summary.counterexample, 0);
        // S4 itself: soluble, minimal normal V4 not in the Frattini
        // subgroup, and F(S4) = V4.
        assert!(res
            .reports
            .iter()
            .any(|r| r.group == "S4" && r.status == Status::Verified));
    }

    #[test]
    fn reports_are_deterministic_modulo_elapsed() {
        let strip = |res: &RunResult| -> Vec<String> {
            res.reports
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).unwrap();
                    v["elapsed_ms"] = serde_json::json!(0);
                    v.to_string()
                })
                .collect()
        };
        let a = run_on(&["S4", "SL23", "F20"], &[CheckId::T3, CheckId::T5, CheckId::L1]);
        let b = run_on(&["S4", "SL23", "F20"], &[CheckId::T3, CheckId::T5, CheckId::L1]);
        assert_eq!(strip(&a), strip(&b));
    }
}
