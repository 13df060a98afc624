//! Lattice-level cross-checks: chief-series factor multisets are
//! series-independent, the memoized membership search agrees with the
//! exhaustive one, the edge condition is conjugation-equivariant and
//! route-independent, and the hypercenter ascent matches the lattice scan.

use chieftain_core::pi::{factor_condition_via_quotient, satisfies_partial_pi_exhaustive};
use chieftain_core::{
    builtin_corpus, factor_condition, find_entry, satisfies_partial_pi, Caps, Group, Subgroup,
};
use std::collections::HashSet;
use std::sync::Arc;

const CAPS: Caps = Caps {
    element: 20_000,
    lattice: 10_000,
    memo: 10_000,
    filter: 5_000,
};

fn entry_group(name: &str) -> Arc<Group> {
    find_entry(builtin_corpus(), name)
        .unwrap_or_else(|| panic!("missing corpus entry {name}"))
        .group()
        .unwrap()
}

/// Every cyclic subgroup, deduplicated by element set.
fn cyclic_subgroups(g: &Arc<Group>) -> Vec<Subgroup> {
    let idx = g.element_index(CAPS.element).unwrap();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..idx.len() {
        let h = Subgroup::generated_in(g, &[idx.get(i).clone()]).unwrap();
        if seen.insert(h.key(CAPS).unwrap().clone()) {
            out.push(h);
        }
    }
    out
}

#[test]
fn chief_factor_multisets_are_series_independent() {
    let counts = [
        ("S4", 1usize),
        ("SL23", 1),
        ("C12", 3),
        ("E4", 3),
        ("E8", 21),
        ("D12", 4),
        // Two routes: through the order-14 and the order-21 overgroup of C7.
        ("F42", 2),
        ("A5", 1),
    ];
    for (name, expected_count) in counts {
        let g = entry_group(name);
        let mut multisets: Vec<Vec<u128>> = Vec::new();
        for series in g.chief_series_iter(CAPS) {
            let series = series.unwrap();
            let mut orders = series.factor_orders();
            orders.sort_unstable();
            multisets.push(orders);
        }
        assert_eq!(multisets.len(), expected_count, "{name}: series count");
        for m in &multisets[1..] {
            assert_eq!(m, &multisets[0], "{name}: factor multiset varies");
        }
    }
}

#[test]
fn the_rank_three_elementary_abelian_5_group_has_186_series() {
    let g = entry_group("E125");
    let mut count = 0usize;
    for series in g.chief_series_iter(CAPS) {
        let mut orders = series.unwrap().factor_orders();
        orders.sort_unstable();
        assert_eq!(orders, vec![5, 5, 5]);
        count += 1;
    }
    assert_eq!(count, 186);
    assert_eq!(g.all_normal_subgroups(CAPS).unwrap().len(), 64);
}

#[test]
fn memoized_search_matches_exhaustive_search() {
    for name in ["S4", "A4", "D12", "SL23"] {
        let g = entry_group(name);
        for h in cyclic_subgroups(&g) {
            let fast = satisfies_partial_pi(&g, &h, CAPS).unwrap();
            let slow = satisfies_partial_pi_exhaustive(&g, &h, CAPS).unwrap();
            assert_eq!(
                fast.holds,
                slow,
                "{name}: verdicts disagree for subgroup of order {}",
                h.order()
            );
        }
    }
}

#[test]
fn verdicts_are_conjugation_equivariant() {
    for name in ["S4", "SL23"] {
        let g = entry_group(name);
        let idx = g.element_index(CAPS.element).unwrap();
        let conjugators: Vec<_> = (0..idx.len()).step_by(5).map(|i| idx.get(i).clone()).collect();
        for h in cyclic_subgroups(&g) {
            let base = satisfies_partial_pi(&g, &h, CAPS).unwrap().holds;
            for c in &conjugators {
                let moved = h.conjugate(c).unwrap();
                let got = satisfies_partial_pi(&g, &moved, CAPS).unwrap().holds;
                assert_eq!(base, got, "{name}: conjugation changed the verdict");
            }
        }
    }
}

#[test]
fn direct_and_quotient_edge_checks_agree() {
    for name in ["S4", "D12"] {
        let g = entry_group(name);
        let subgroups = cyclic_subgroups(&g);
        for series in g.chief_series_iter(CAPS) {
            let series = series.unwrap();
            for (below, above) in series.factor_pairs() {
                for h in &subgroups {
                    let direct = factor_condition(&g, h, below, above, CAPS).unwrap();
                    let via_quotient =
                        factor_condition_via_quotient(&g, h, below, above, CAPS).unwrap();
                    assert_eq!(direct.holds, via_quotient.holds, "{name}");
                    assert_eq!(direct.k_order, via_quotient.k_order, "{name}");
                    assert_eq!(
                        direct.normalizer_index, via_quotient.normalizer_index,
                        "{name}"
                    );
                    assert_eq!(direct.factor_pi, via_quotient.factor_pi, "{name}");
                }
            }
        }
    }
}

#[test]
fn hypercenter_ascent_matches_lattice_scan_across_the_corpus() {
    for entry in builtin_corpus() {
        let Some(order) = entry.expected_order else { continue };
        if order > 200 {
            continue;
        }
        let g = entry.group().unwrap();
        let a = g.u_hypercenter(CAPS).unwrap();
        let b = g.u_hypercenter_scan(CAPS).unwrap();
        assert!(a.same_as(&b), "{}: u-hypercenter differs", entry.name);
        for p in g.prime_spectrum().iter() {
            let a = g.u_p_hypercenter(p, CAPS).unwrap();
            let b = g.u_p_hypercenter_scan(p, CAPS).unwrap();
            assert!(a.same_as(&b), "{} p={p}: hypercenter differs", entry.name);
        }
    }
}

#[test]
fn whole_group_membership_is_always_satisfied_across_the_corpus() {
    for entry in builtin_corpus() {
        if entry.expected_order.unwrap_or(u64::MAX) > 200 {
            continue;
        }
        let g = entry.group().unwrap();
        let full = satisfies_partial_pi(&g, &g.full_subgroup(), CAPS).unwrap();
        assert!(full.holds, "{}: whole group must satisfy", entry.name);
        let trivial = satisfies_partial_pi(&g, &g.trivial_subgroup(), CAPS).unwrap();
        assert!(trivial.holds, "{}: trivial subgroup must satisfy", entry.name);
        if let Some(w) = &full.witness {
            assert_eq!(w.steps().first().unwrap().order(), 1);
            assert_eq!(w.steps().last().unwrap().order(), g.order());
        }
    }
}
