//! The worked-example complexes shared by the test suite, the command
//! line examples and the benchmarks.

use crate::simplicial::{Face, SimplicialComplex};
use std::collections::BTreeSet;

/// The hollow triangle: three vertices, three edges, no interior.
pub fn hollow_triangle() -> SimplicialComplex {
    SimplicialComplex::build_1based(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).expect("valid")
}

/// The path on four vertices: edges 12, 23, 34.
pub fn path4() -> SimplicialComplex {
    SimplicialComplex::build_1based(4, &[vec![1, 2], vec![2, 3], vec![3, 4]]).expect("valid")
}

/// The cone over [`path4`] with apex 5: the apex lies in every facet.
pub fn coned_path() -> SimplicialComplex {
    SimplicialComplex::build_1based(5, &[vec![1, 2, 5], vec![2, 3, 5], vec![3, 4, 5]])
        .expect("valid")
}

/// The full simplex on n vertices.
pub fn simplex(n: usize) -> SimplicialComplex {
    assert!(n >= 1, "a complex needs a vertex");
    SimplicialComplex::build_1based(n, &[(1..=n).collect()]).expect("valid")
}

/// A single point.
pub fn point() -> SimplicialComplex {
    simplex(1)
}

/// The named corpus: the three running examples plus the small smooth
/// cases.
pub fn corpus() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("hollow_triangle", hollow_triangle()),
        ("path4", path4()),
        ("coned_path", coned_path()),
        ("point", point()),
        ("segment", simplex(2)),
        ("solid_triangle", simplex(3)),
    ]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let mut out = Vec::new();
    for shorter in permutations(n - 1) {
        for slot in 0..n {
            let mut p = shorter.clone();
            p.insert(slot, n - 1);
            out.push(p);
        }
    }
    out
}

fn relabel(mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0u32;
    for (i, &target) in perm.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out |= 1 << target;
        }
    }
    out
}

/// Lexicographically least facet list over all vertex relabellings.
fn canonical_facets(n: usize, facet_masks: &[u32]) -> Vec<Face> {
    permutations(n)
        .iter()
        .map(|perm| {
            let mut faces: Vec<Face> = facet_masks
                .iter()
                .map(|&m| Face::support(
                    &(0..n).map(|i| relabel(m, perm) >> i & 1).collect::<Vec<u32>>(),
                ))
                .collect();
            faces.sort();
            faces
        })
        .min()
        .expect("at least the identity permutation")
}

/// Every simplicial complex with at most `max_vertices` vertices, all of
/// them used, up to relabelling; one canonical representative each,
/// ordered by vertex count and then by facet list.
pub fn small_complexes(max_vertices: usize) -> Vec<SimplicialComplex> {
    assert!(
        (1..=4).contains(&max_vertices),
        "enumeration scans all facet antichains, so it stays below five vertices"
    );
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let full = (1u32 << n) - 1;
        let masks: Vec<u32> = (1..=full).collect();
        let mut canonical: BTreeSet<Vec<Face>> = BTreeSet::new();
        for pick in 1u32..(1 << masks.len()) {
            let chosen: Vec<u32> = masks
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .map(|(_, &m)| m)
                .collect();
            let antichain = chosen
                .iter()
                .all(|&a| chosen.iter().all(|&b| a == b || a & b != a));
            if !antichain {
                continue;
            }
            if chosen.iter().fold(0, |acc, &m| acc | m) != full {
                continue;
            }
            canonical.insert(canonical_facets(n, &chosen));
        }
        for facets in canonical {
            out.push(SimplicialComplex::build(n, &facets).expect("canonical facets are valid"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_corpus_is_fixed() {
        let named = corpus();
        assert_eq!(named.len(), 6);
        let by_name: std::collections::BTreeMap<&str, &SimplicialComplex> =
            named.iter().map(|(n, k)| (*n, k)).collect();
        assert_eq!(by_name["hollow_triangle"].f_vector(), vec![1, 3, 3]);
        assert_eq!(by_name["path4"].f_vector(), vec![1, 4, 3]);
        assert_eq!(by_name["coned_path"].f_vector(), vec![1, 5, 7, 3]);
        assert_eq!(by_name["point"].f_vector(), vec![1, 1]);
        assert_eq!(by_name["solid_triangle"].dim(), 2);
    }

    #[test]
    fn coned_path_is_the_join_with_a_point() {
        assert_eq!(path4().join(&point()).unwrap(), coned_path());
    }

    #[test]
    fn small_complex_counts_are_frozen() {
        assert_eq!(small_complexes(1).len(), 1);
        assert_eq!(small_complexes(2).len(), 1 + 2);
        // On three vertices: discrete, edge plus point, path, hollow
        // triangle, solid triangle.
        assert_eq!(small_complexes(3).len(), 1 + 2 + 5);
        assert_eq!(small_complexes(4).len(), 1 + 2 + 5 + 20);
    }

    #[test]
    fn exactly_four_count_matches_a_burnside_count() {
        // Independent orbit count: enumerate labeled complexes on exactly
        // four vertices and average the fixed-point counts over all
        // relabellings.
        let n = 4usize;
        let full = (1u32 << n) - 1;
        let masks: Vec<u32> = (1..=full).collect();
        let mut labeled: Vec<Vec<u32>> = Vec::new();
        for pick in 1u32..(1 << masks.len()) {
            let chosen: Vec<u32> = masks
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .map(|(_, &m)| m)
                .collect();
            let antichain = chosen
                .iter()
                .all(|&a| chosen.iter().all(|&b| a == b || a & b != a));
            if antichain && chosen.iter().fold(0, |acc, &m| acc | m) == full {
                labeled.push(chosen);
            }
        }
        let perms = permutations(n);
        let mut fixed_total = 0usize;
        for perm in &perms {
            for complex in &labeled {
                let mut image: Vec<u32> =
                    complex.iter().map(|&m| relabel(m, perm)).collect();
                image.sort_unstable();
                let mut original = complex.clone();
                original.sort_unstable();
                if image == original {
                    fixed_total += 1;
                }
            }
        }
        assert_eq!(fixed_total % perms.len(), 0);
        let orbits = fixed_total / perms.len();
        let exactly_four = small_complexes(4).len() - small_complexes(3).len();
        assert_eq!(orbits, exactly_four);
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        let all = small_complexes(4);
        for k in &all {
            // Every vertex really appears.
            let used = k
                .facets()
                .iter()
                .fold(Face::EMPTY, |acc, f| acc.union(f));
            assert_eq!(used.len(), k.n_vertices());
        }
        // Three classes share the f-vector of three edges on four
        // vertices: the path, the star, and the hollow triangle with an
        // isolated point.  Their star posets tell them apart.
        let mut poset_sizes: Vec<usize> = all
            .iter()
            .filter(|k| k.n_vertices() == 4 && k.f_vector() == vec![1, 4, 3])
            .map(|k| k.star_poset().len())
            .collect();
        poset_sizes.sort_unstable();
        assert_eq!(poset_sizes, vec![4, 6, 8]);
        // Determinism.
        let again = small_complexes(4);
        assert_eq!(all, again);
    }
}
