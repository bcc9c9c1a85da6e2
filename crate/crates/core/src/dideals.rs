//! Two-sided ideals of the ring of differential operators on a face ring.
//!
//! Every proper two-sided ideal is determined by the face monomials it
//! contains, and `x_tau` lies in the ideal generated by `x_sigma` exactly
//! when the closed star of `tau` is contained in the closed star of
//! `sigma`.  An ideal is therefore modelled as a down-closed set of proper
//! star-poset nodes; the unit ideal is a distinguished value, and a star
//! equal to the whole complex never appears in a down-set.  Equality is
//! down-set equality, sum is union, intersection is intersection, and the
//! full (finite, distributive) lattice of ideals can be enumerated.

use crate::face_ring::{minimal_primes, star_face_ideal, SquarefreeMonomialIdeal};
use crate::simplicial::{monomial_label, Face, StarPoset};
use crate::weyl::{in_d_ring, WeylElement};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;
use thiserror::Error;

/// Cap on proper star classes for whole-lattice enumeration and closure
/// computations; 20 nodes already allow on the order of a million ideals.
pub const MAX_LATTICE_NODES: usize = 20;

/// Errors raised by ideal construction and lattice computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DIdealError {
    /// The given vertex set is not a face of the complex.
    #[error("face {0} is not a face of the complex")]
    NotAFace(Face),
    /// The operands live over different complexes.
    #[error("ideals live over different complexes")]
    AmbientMismatch,
    /// A term of the element does not descend to the face ring, so it
    /// generates no ideal there.
    #[error("term {0} does not act on the face ring")]
    NotInDRing(String),
    /// The element is zero in the face ring and generates the zero ideal
    /// trivially; callers must handle that case themselves.
    #[error("the element is zero in the face ring")]
    ZeroElement,
    /// The complex exceeds a configured enumeration cap.
    #[error("{0}")]
    TooLarge(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum IdealBody {
    Unit,
    /// Down-closed set of proper star-poset node ids.
    DownSet(BTreeSet<usize>),
}

/// A two-sided ideal of the ring of differential operators on the face
/// ring of a fixed complex, in canonical down-set form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSidedIdeal {
    poset: Arc<StarPoset>,
    body: IdealBody,
}

impl TwoSidedIdeal {
    /// The zero ideal.
    pub fn zero(poset: &Arc<StarPoset>) -> TwoSidedIdeal {
        TwoSidedIdeal {
            poset: Arc::clone(poset),
            body: IdealBody::DownSet(BTreeSet::new()),
        }
    }

    /// The whole operator ring.
    pub fn unit(poset: &Arc<StarPoset>) -> TwoSidedIdeal {
        TwoSidedIdeal {
            poset: Arc::clone(poset),
            body: IdealBody::Unit,
        }
    }

    /// Down-closure of the given proper nodes.
    fn down_closure(poset: &Arc<StarPoset>, seed: &[usize]) -> TwoSidedIdeal {
        let mut set = BTreeSet::new();
        for &id in seed {
            debug_assert!(!poset.is_full(id), "unit ideal must use the Unit value");
            for m in poset.proper_node_ids() {
                if poset.leq(m, id) {
                    set.insert(m);
                }
            }
        }
        TwoSidedIdeal {
            poset: Arc::clone(poset),
            body: IdealBody::DownSet(set),
        }
    }

    pub fn poset(&self) -> &Arc<StarPoset> {
        &self.poset
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.body, IdealBody::DownSet(s) if s.is_empty())
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.body, IdealBody::Unit)
    }

    /// Node ids of the down-set; `None` for the unit ideal.
    pub fn node_ids(&self) -> Option<Vec<usize>> {
        match &self.body {
            IdealBody::Unit => None,
            IdealBody::DownSet(s) => Some(s.iter().copied().collect()),
        }
    }

    /// Canonical generators: the representative faces of the maximal nodes
    /// of the down-set, sorted.  The unit ideal is generated by the empty
    /// monomial and the zero ideal by nothing.
    pub fn generators(&self) -> Vec<Face> {
        match &self.body {
            IdealBody::Unit => vec![Face::EMPTY],
            IdealBody::DownSet(set) => {
                let mut reps: Vec<Face> = set
                    .iter()
                    .filter(|&&id| !set.iter().any(|&j| j != id && self.poset.leq(id, j)))
                    .map(|&id| self.poset.nodes()[id].representative)
                    .collect();
                reps.sort();
                reps
            }
        }
    }

    /// Bracketed generator list: `<0>`, `<1>` or e.g. `<x1, x2*x3>`.
    pub fn label(&self) -> String {
        if self.is_unit() {
            return "<1>".to_string();
        }
        if self.is_zero() {
            return "<0>".to_string();
        }
        format!(
            "<{}>",
            self.generators()
                .iter()
                .map(monomial_label)
                .collect::<Vec<_>>()
                .join(", ")
        )
    }

    fn check_ambient(&self, other: &TwoSidedIdeal) -> Result<(), DIdealError> {
        if self.poset.complex() != other.poset.complex() {
            return Err(DIdealError::AmbientMismatch);
        }
        Ok(())
    }

    /// Whether `other` is contained in this ideal (down-set inclusion).
    pub fn contains(&self, other: &TwoSidedIdeal) -> Result<bool, DIdealError> {
        self.check_ambient(other)?;
        Ok(match (&self.body, &other.body) {
            (IdealBody::Unit, _) => true,
            (IdealBody::DownSet(_), IdealBody::Unit) => false,
            (IdealBody::DownSet(a), IdealBody::DownSet(b)) => b.is_subset(a),
        })
    }

    /// Ideal sum: union of down-sets; the unit ideal absorbs everything.
    pub fn sum(&self, other: &TwoSidedIdeal) -> Result<TwoSidedIdeal, DIdealError> {
        self.check_ambient(other)?;
        Ok(match (&self.body, &other.body) {
            (IdealBody::Unit, _) | (_, IdealBody::Unit) => TwoSidedIdeal::unit(&self.poset),
            (IdealBody::DownSet(a), IdealBody::DownSet(b)) => TwoSidedIdeal {
                poset: Arc::clone(&self.poset),
                body: IdealBody::DownSet(a.union(b).copied().collect()),
            },
        })
    }

    /// Ideal intersection: intersection of down-sets; the unit ideal is
    /// neutral.
    pub fn intersection(&self, other: &TwoSidedIdeal) -> Result<TwoSidedIdeal, DIdealError> {
        self.check_ambient(other)?;
        Ok(match (&self.body, &other.body) {
            (IdealBody::Unit, _) => other.clone(),
            (_, IdealBody::Unit) => self.clone(),
            (IdealBody::DownSet(a), IdealBody::DownSet(b)) => TwoSidedIdeal {
                poset: Arc::clone(&self.poset),
                body: IdealBody::DownSet(a.intersection(b).copied().collect()),
            },
        })
    }
}

/// The two-sided ideal generated by the face monomial `x_sigma`.
///
/// When the closed star of `sigma` is the whole complex the monomial acts
/// invertibly enough to generate everything and the result is the unit
/// ideal; otherwise the ideal is the down-set of stars contained in
/// `st(sigma)`.
pub fn principal_ideal(poset: &Arc<StarPoset>, sigma: &Face) -> Result<TwoSidedIdeal, DIdealError> {
    let node = poset
        .node_of_face(sigma)
        .map_err(|_| DIdealError::NotAFace(*sigma))?;
    if poset.is_full(node) {
        return Ok(TwoSidedIdeal::unit(poset));
    }
    Ok(TwoSidedIdeal::down_closure(poset, &[node]))
}

/// The two-sided ideal generated by an operator: the sum over its terms
/// `c x^a d^(b)` of the principal ideal of the support of `a`.
///
/// Terms whose x-support is a non-face vanish in the face ring and are
/// ignored; a term with empty x-support yields the unit ideal.
pub fn ideal_of_element(
    poset: &Arc<StarPoset>,
    elt: &WeylElement,
) -> Result<TwoSidedIdeal, DIdealError> {
    let k = poset.complex();
    if elt.n_vars() != k.n_vertices() {
        return Err(DIdealError::AmbientMismatch);
    }
    if elt.is_zero() {
        return Err(DIdealError::ZeroElement);
    }
    for (a, b, c) in elt.terms() {
        if !in_d_ring(k, a, b, elt.field()) {
            let term = WeylElement::term(elt.n_vars(), elt.field(), a, b, c.clone());
            return Err(DIdealError::NotInDRing(term.to_string()));
        }
    }
    let mut acc = TwoSidedIdeal::zero(poset);
    let mut survives = false;
    for (a, _, _) in elt.terms() {
        let sa = Face::support(a);
        if !k.has_face(&sa) {
            continue;
        }
        survives = true;
        acc = acc.sum(&principal_ideal(poset, &sa)?)?;
    }
    if !survives {
        return Err(DIdealError::ZeroElement);
    }
    Ok(acc)
}

/// The kernel of the localization of the operator ring at `x_sigma`: the
/// extension of the face ideal of the closed star of `sigma`, computed as
/// the sum of principal ideals over the minimal faces outside that star.
pub fn localization_kernel(
    poset: &Arc<StarPoset>,
    sigma: &Face,
) -> Result<TwoSidedIdeal, DIdealError> {
    let k = poset.complex();
    let outside = k
        .open_complement(sigma)
        .map_err(|_| DIdealError::NotAFace(*sigma))?;
    let outside_set: BTreeSet<Face> = outside.iter().copied().collect();
    let mut acc = TwoSidedIdeal::zero(poset);
    for tau in &outside {
        let minimal = tau
            .subsets()
            .iter()
            .all(|s| s == tau || !outside_set.contains(s));
        if minimal {
            // tau is a face of k, and its star is never the whole complex:
            // a face with full star lies in every facet, and adjoining it
            // to the face sigma cannot create a non-face.
            acc = acc.sum(&principal_ideal(poset, tau)?)?;
        }
    }
    Ok(acc)
}

/// Every two-sided ideal except the unit ideal: all down-closed subsets of
/// the proper star poset, ordered by size and then by node index set.
pub fn enumerate_ideals(poset: &Arc<StarPoset>) -> Result<Vec<TwoSidedIdeal>, DIdealError> {
    let proper: Vec<usize> = poset.proper_node_ids().collect();
    let m = proper.len();
    if m > MAX_LATTICE_NODES {
        return Err(DIdealError::TooLarge(format!(
            "{m} proper star classes exceed the enumeration cap of {MAX_LATTICE_NODES}"
        )));
    }
    // down[i]: bitmask of proper indices whose star sits inside star i
    let mut down = vec![0u32; m];
    for i in 0..m {
        for j in 0..m {
            if poset.leq(proper[j], proper[i]) {
                down[i] |= 1 << j;
            }
        }
    }
    let mut masks: Vec<u32> = (0u32..(1u32 << m))
        .filter(|&mask| (0..m).all(|i| mask & (1 << i) == 0 || down[i] & mask == down[i]))
        .collect();
    masks.sort_by_key(|&mask| (mask.count_ones(), mask));
    Ok(masks
        .into_iter()
        .map(|mask| TwoSidedIdeal {
            poset: Arc::clone(poset),
            body: IdealBody::DownSet(
                (0..m)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| proper[i])
                    .collect(),
            ),
        })
        .collect())
}

/// The contraction of a two-sided operator ideal to the face ring: the
/// monomial ideal generated by every face monomial the ideal contains.
pub fn contract(ideal: &TwoSidedIdeal) -> SquarefreeMonomialIdeal {
    let n = ideal.poset.complex().n_vertices();
    match &ideal.body {
        IdealBody::Unit => SquarefreeMonomialIdeal::unit(n),
        IdealBody::DownSet(set) => {
            let mut faces = Vec::new();
            for &id in set {
                faces.extend_from_slice(&ideal.poset.nodes()[id].faces);
            }
            SquarefreeMonomialIdeal::from_faces(n, &faces)
        }
    }
}

/// The ideals of the face ring stable under all differential operators:
/// the closure of the star face ideals under sum and intersection.
///
/// Each member is verified to be an intersection of sums of minimal
/// primes, the second characterization of stability; a violation is a
/// contradiction in the engine and panics.  The unit ideal is stable too
/// but excluded, mirroring [`enumerate_ideals`].
pub fn d_stable_ideals(
    k: &crate::simplicial::SimplicialComplex,
) -> Result<Vec<SquarefreeMonomialIdeal>, DIdealError> {
    let n = k.n_vertices();
    let poset = k.star_poset();
    let proper_count = poset.len() - 1;
    if proper_count > MAX_LATTICE_NODES {
        return Err(DIdealError::TooLarge(format!(
            "{proper_count} proper star classes exceed the closure cap of {MAX_LATTICE_NODES}"
        )));
    }
    let mut pool: BTreeSet<SortableIdeal> = poset
        .nodes()
        .iter()
        .map(|node| {
            let ideal = star_face_ideal(k, &node.representative).expect("representative is a face");
            SortableIdeal(ideal)
        })
        .collect();
    loop {
        let members: Vec<SquarefreeMonomialIdeal> =
            pool.iter().map(|s| s.0.clone()).collect();
        let before = pool.len();
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                let s = members[i].sum(&members[j]).expect("same ambient");
                pool.insert(SortableIdeal(s.reduced_mod(k)));
                let t = members[i]
                    .intersection(&members[j])
                    .expect("same ambient");
                pool.insert(SortableIdeal(t.reduced_mod(k)));
            }
        }
        if pool.len() == before {
            break;
        }
        if pool.len() > 4096 {
            return Err(DIdealError::TooLarge(
                "closure under sums and intersections exceeded 4096 ideals".to_string(),
            ));
        }
    }
    let primes = minimal_primes(k);
    if primes.len() > 12 {
        return Err(DIdealError::TooLarge(format!(
            "verification against sums of {} minimal primes is out of reach",
            primes.len()
        )));
    }
    let mut prime_sums = Vec::new();
    for bits in 1u32..(1 << primes.len()) {
        let mut s = SquarefreeMonomialIdeal::zero(n);
        for (idx, p) in primes.iter().enumerate() {
            if bits & (1 << idx) != 0 {
                s = s.sum(p).expect("same ambient");
            }
        }
        prime_sums.push(s.reduced_mod(k));
    }
    for member in &pool {
        let mut meet = SquarefreeMonomialIdeal::unit(n);
        for p in &prime_sums {
            if p.contains_ideal(&member.0).expect("same ambient") {
                meet = meet.intersection(p).expect("same ambient").reduced_mod(k);
            }
        }
        assert_eq!(
            meet, member.0,
            "stable ideal must be an intersection of sums of minimal primes"
        );
    }
    Ok(pool.into_iter().map(|s| s.0).collect())
}

/// Orders squarefree monomial ideals by generator list for deterministic
/// pooling.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SortableIdeal(SquarefreeMonomialIdeal);

impl Ord for SortableIdeal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.gens().cmp(other.0.gens())
    }
}

impl PartialOrd for SortableIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// DOT rendering of the containment lattice of the given ideals: one node
/// per ideal labelled by its canonical generators, one edge per covering
/// containment, drawn bottom-up.
///
/// Panics if the ideals do not share a complex or there are more than 1024
/// of them.
pub fn hasse_dot(ideals: &[TwoSidedIdeal]) -> String {
    assert!(ideals.len() <= 1024, "lattice drawing capped at 1024 ideals");
    if let Some(first) = ideals.first() {
        assert!(
            ideals
                .iter()
                .all(|i| i.poset.complex() == first.poset.complex()),
            "ideals must share a complex"
        );
    }
    let n = ideals.len();
    let le = |i: usize, j: usize| ideals[j].contains(&ideals[i]).expect("same complex");
    let mut out = String::from("digraph ideal_lattice {\n  rankdir=BT;\n");
    for (idx, ideal) in ideals.iter().enumerate() {
        let _ = writeln!(out, "  i{idx} [label=\"{}\"];", ideal.label());
    }
    for lo in 0..n {
        for hi in 0..n {
            if lo == hi || !le(lo, hi) || le(hi, lo) {
                continue;
            }
            let direct = !(0..n)
                .any(|w| w != lo && w != hi && le(lo, w) && le(w, hi) && !le(w, lo) && !le(hi, w));
            if direct {
                let _ = writeln!(out, "  i{lo} -> i{hi};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Serialized form of a two-sided ideal: the canonical generator faces as
/// 1-based vertex lists, with the unit ideal flagged separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub unit: bool,
    pub generators: Vec<Vec<usize>>,
}

impl From<&TwoSidedIdeal> for IdealJson {
    fn from(ideal: &TwoSidedIdeal) -> IdealJson {
        if ideal.is_unit() {
            return IdealJson {
                unit: true,
                generators: Vec::new(),
            };
        }
        IdealJson {
            unit: false,
            generators: ideal
                .generators()
                .iter()
                .map(|f| f.vertices().iter().map(|v| v + 1).collect())
                .collect(),
        }
    }
}
