//! Squarefree monomial ideals attached to a simplicial complex.
//!
//! The face ideal of a complex is generated by its minimal non-faces; the
//! quotient of the polynomial ring by it has the complex's faces as its
//! standard monomial supports. Ideals are kept in canonical form as a
//! divisibility antichain of squarefree generators, each identified with
//! its support vertex set.

use thiserror::Error;

use crate::simplicial::{Face, SimplicialComplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("ideals live over different ambient variable sets ({0} vs {1})")]
    AmbientMismatch(usize, usize),
}

/// A monomial in `n` variables, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Monomial {
        Monomial { exps: vec![0; n] }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn support(&self) -> Face {
        Face::support(&self.exps)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// An ideal generated by squarefree monomials, in canonical form: the
/// generators form an antichain under divisibility and are sorted.
///
/// The zero ideal has no generators; the unit ideal is generated by the
/// empty monomial `1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquarefreeMonomialIdeal {
    n: usize,
    gens: Vec<Face>,
}

impl SquarefreeMonomialIdeal {
    /// Canonicalizing constructor: drops generators divisible by another.
    pub fn from_faces(n: usize, gens: &[Face]) -> SquarefreeMonomialIdeal {
        let mut minimal: Vec<Face> = Vec::new();
        for &g in gens {
            if gens.iter().any(|h| *h != g && h.is_subset_of(&g)) {
                continue;
            }
            if !minimal.contains(&g) {
                minimal.push(g);
            }
        }
        minimal.sort();
        SquarefreeMonomialIdeal { n, gens: minimal }
    }

    pub fn zero(n: usize) -> SquarefreeMonomialIdeal {
        SquarefreeMonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> SquarefreeMonomialIdeal {
        SquarefreeMonomialIdeal { n, gens: vec![Face::EMPTY] }
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Face] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first() == Some(&Face::EMPTY)
    }

    fn check_ambient(&self, other: &SquarefreeMonomialIdeal) -> Result<(), IdealError> {
        if self.n != other.n {
            Err(IdealError::AmbientMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    /// Membership for arbitrary monomials: some generator divides `m`,
    /// i.e. some generator's support is contained in the support of `m`.
    pub fn contains_monomial(&self, m: &Monomial) -> Result<bool, IdealError> {
        if m.n_vars() != self.n {
            return Err(IdealError::AmbientMismatch(self.n, m.n_vars()));
        }
        let supp = m.support();
        Ok(self.gens.iter().any(|g| g.is_subset_of(&supp)))
    }

    pub(crate) fn contains_support(&self, supp: &Face) -> bool {
        self.gens.iter().any(|g| g.is_subset_of(supp))
    }

    /// Ideal containment: every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &SquarefreeMonomialIdeal) -> Result<bool, IdealError> {
        self.check_ambient(other)?;
        Ok(other.gens.iter().all(|g| self.contains_support(g)))
    }

    pub fn sum(&self, other: &SquarefreeMonomialIdeal) -> Result<SquarefreeMonomialIdeal, IdealError> {
        self.check_ambient(other)?;
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Ok(SquarefreeMonomialIdeal::from_faces(self.n, &gens))
    }

    /// Intersection via pairwise least common multiples, which for
    /// squarefree monomials are support unions.
    pub fn intersection(
        &self,
        other: &SquarefreeMonomialIdeal,
    ) -> Result<SquarefreeMonomialIdeal, IdealError> {
        self.check_ambient(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.union(b));
            }
        }
        Ok(SquarefreeMonomialIdeal::from_faces(self.n, &gens))
    }

    /// Image in the face ring of `k`: generators supported on non-faces are
    /// zero there and get dropped.
    pub fn reduced_mod(&self, k: &SimplicialComplex) -> SquarefreeMonomialIdeal {
        assert_eq!(self.n, k.n_vertices());
        let gens: Vec<Face> = self
            .gens
            .iter()
            .copied()
            .filter(|g| k.has_face(g))
            .collect();
        SquarefreeMonomialIdeal::from_faces(self.n, &gens)
    }

    /// The complex of supports avoiding the ideal. Returns `None` for the
    /// unit ideal, whose avoiding set is empty.
    pub fn dual_complex(&self) -> Option<SimplicialComplex> {
        if self.is_unit() {
            return None;
        }
        assert!(self.n <= 22, "dual complex enumeration limited to 22 variables");
        let free: Vec<Face> = (0u64..(1 << self.n))
            .map(|bits| Face::from_bits(bits as u32))
            .filter(|s| !self.contains_support(s))
            .collect();
        Some(SimplicialComplex::from_faces_unchecked(self.n, &free))
    }

    /// Generators as exponent vectors, the file form of an ideal.
    pub fn exponent_vectors(&self) -> Vec<Vec<u32>> {
        self.gens
            .iter()
            .map(|g| (0..self.n).map(|v| u32::from(g.contains(v))).collect())
            .collect()
    }

    pub fn from_exponent_vectors(n: usize, vecs: &[Vec<u32>]) -> SquarefreeMonomialIdeal {
        let gens: Vec<Face> = vecs.iter().map(|v| Face::support(v)).collect();
        SquarefreeMonomialIdeal::from_faces(n, &gens)
    }

    /// Bracketed generator list, e.g. `<x4, x1*x3>`; `<0>` for the zero ideal.
    pub fn label(&self) -> String {
        if self.is_zero() {
            "<0>".to_string()
        } else {
            format!(
                "<{}>",
                self.gens
                    .iter()
                    .map(crate::simplicial::monomial_label)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        }
    }
}

/// The face ideal: generated by the minimal non-faces of `k` within its
/// ambient vertex set. Uncovered vertices count as non-faces.
pub fn face_ideal(k: &SimplicialComplex) -> SquarefreeMonomialIdeal {
    let n = k.n_vertices();
    assert!(n <= 22, "face ideal enumeration limited to 22 vertices");
    let mut is_face = vec![false; 1 << n];
    for (bits, slot) in is_face.iter_mut().enumerate() {
        *slot = k.has_face(&Face::from_bits(bits as u32));
    }
    let mut gens = Vec::new();
    for bits in 0..(1u64 << n) {
        let bits = bits as u32;
        if is_face[bits as usize] {
            continue;
        }
        let minimal = (0..n)
            .filter(|&v| bits & (1 << v) != 0)
            .all(|v| is_face[(bits & !(1 << v)) as usize]);
        if minimal {
            gens.push(Face::from_bits(bits));
        }
    }
    SquarefreeMonomialIdeal::from_faces(n, &gens)
}

/// The face ideal of the closed star of `sigma`, taken in the face ring:
/// generated by the minimal faces of `k` lying outside the closed star.
///
/// When the star is all of `k` there is nothing outside and the result is
/// the zero ideal.
pub fn star_face_ideal(
    k: &SimplicialComplex,
    sigma: &Face,
) -> Result<SquarefreeMonomialIdeal, crate::simplicial::SimplicialError> {
    let outside = k.open_complement(sigma)?;
    Ok(SquarefreeMonomialIdeal::from_faces(k.n_vertices(), &outside))
}

/// Minimal primes of the face ideal, one per facet: the variables outside
/// the facet. Listed in facet order.
pub fn minimal_primes(k: &SimplicialComplex) -> Vec<SquarefreeMonomialIdeal> {
    let n = k.n_vertices();
    k.facets()
        .iter()
        .map(|facet| {
            let gens: Vec<Face> = (0..n)
                .filter(|&v| !facet.contains(v))
                .map(Face::singleton)
                .collect();
            SquarefreeMonomialIdeal::from_faces(n, &gens)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(vs: &[usize]) -> Face {
        Face::from_vertices(vs)
    }

    fn triangle_boundary() -> SimplicialComplex {
        SimplicialComplex::build(3, &[face(&[0, 1]), face(&[0, 2]), face(&[1, 2])]).unwrap()
    }

    fn three_edge_path() -> SimplicialComplex {
        SimplicialComplex::build(4, &[face(&[0, 1]), face(&[1, 2]), face(&[2, 3])]).unwrap()
    }

    #[test]
    fn face_ideal_of_triangle_boundary() {
        let i = face_ideal(&triangle_boundary());
        assert_eq!(i.gens(), &[face(&[0, 1, 2])]);
    }

    #[test]
    fn face_ideal_of_path() {
        let i = face_ideal(&three_edge_path());
        assert_eq!(i.gens(), &[face(&[0, 2]), face(&[0, 3]), face(&[1, 3])]);
    }

    #[test]
    fn face_ideal_of_simplex_is_zero() {
        let full = SimplicialComplex::build(3, &[face(&[0, 1, 2])]).unwrap();
        assert!(face_ideal(&full).is_zero());
    }

    #[test]
    fn star_face_ideal_values_on_path() {
        let k = three_edge_path();
        let i1 = star_face_ideal(&k, &face(&[0])).unwrap();
        assert_eq!(i1.gens(), &[face(&[2]), face(&[3])]);
        let i2 = star_face_ideal(&k, &face(&[1])).unwrap();
        assert_eq!(i2.gens(), &[face(&[3])]);
        // the empty face's star is everything, leaving nothing outside
        let i0 = star_face_ideal(&k, &Face::EMPTY).unwrap();
        assert!(i0.is_zero());
    }

    #[test]
    fn star_generator_never_contains_its_face() {
        let k = three_edge_path();
        for sigma in k.faces() {
            let i = star_face_ideal(&k, &sigma).unwrap();
            let m = Monomial::new(
                (0..4).map(|v| u32::from(sigma.contains(v))).collect(),
            );
            assert!(!i.contains_monomial(&m).unwrap());
        }
    }

    #[test]
    fn minimal_primes_are_facet_complements() {
        let primes = minimal_primes(&triangle_boundary());
        let gens: Vec<&[Face]> = primes.iter().map(|p| p.gens()).collect();
        assert_eq!(
            gens,
            vec![&[face(&[2])][..], &[face(&[1])][..], &[face(&[0])][..]]
        );
    }

    #[test]
    fn primes_intersect_to_face_ideal() {
        let k = three_edge_path();
        let primes = minimal_primes(&k);
        let mut acc = primes[0].clone();
        for p in &primes[1..] {
            acc = acc.intersection(p).unwrap();
        }
        assert_eq!(acc, face_ideal(&k));
    }

    #[test]
    fn sum_and_intersection_canonicalize() {
        let a = SquarefreeMonomialIdeal::from_faces(4, &[face(&[0]), face(&[1, 2])]);
        let b = SquarefreeMonomialIdeal::from_faces(4, &[face(&[1])]);
        let s = a.sum(&b).unwrap();
        assert_eq!(s.gens(), &[face(&[0]), face(&[1])]);
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.gens(), &[face(&[0, 1]), face(&[1, 2])]);
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = SquarefreeMonomialIdeal::zero(3);
        let b = SquarefreeMonomialIdeal::zero(4);
        assert_eq!(a.sum(&b).unwrap_err(), IdealError::AmbientMismatch(3, 4));
    }

    #[test]
    fn membership_ignores_exponent_sizes() {
        let i = face_ideal(&three_edge_path());
        assert!(i.contains_monomial(&Monomial::new(vec![2, 0, 1, 0])).unwrap());
        assert!(!i.contains_monomial(&Monomial::new(vec![0, 3, 1, 0])).unwrap());
    }

    #[test]
    fn unit_and_zero_forms() {
        let u = SquarefreeMonomialIdeal::unit(3);
        assert!(u.is_unit());
        assert!(u.contains_monomial(&Monomial::one(3)).unwrap());
        let z = SquarefreeMonomialIdeal::zero(3);
        assert!(!z.contains_monomial(&Monomial::one(3)).unwrap());
        assert_eq!(z.label(), "<0>");
        assert_eq!(u.label(), "<1>");
    }

    #[test]
    fn dual_complex_roundtrip() {
        let k = three_edge_path();
        let i = face_ideal(&k);
        let dual = i.dual_complex().unwrap();
        assert_eq!(dual, k);
        assert_eq!(face_ideal(&dual), i);
        // also for a non-face-ideal example
        let j = SquarefreeMonomialIdeal::from_faces(3, &[face(&[0])]);
        let dual_j = j.dual_complex().unwrap();
        assert_eq!(face_ideal(&dual_j), j);
    }

    #[test]
    fn dual_of_unit_is_empty() {
        assert!(SquarefreeMonomialIdeal::unit(2).dual_complex().is_none());
    }

    #[test]
    fn reduction_drops_nonface_generators() {
        let k = three_edge_path();
        let i = SquarefreeMonomialIdeal::from_faces(4, &[face(&[3]), face(&[0, 2])]);
        let r = i.reduced_mod(&k);
        assert_eq!(r.gens(), &[face(&[3])]);
    }

    #[test]
    fn star_ideal_plus_face_ideal_is_star_face_ideal_of_subcomplex() {
        let k = three_edge_path();
        for sigma in k.faces() {
            let lhs = face_ideal(&k.closed_star(&sigma).unwrap());
            let rhs = star_face_ideal(&k, &sigma)
                .unwrap()
                .sum(&face_ideal(&k))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exponent_vector_roundtrip() {
        let i = SquarefreeMonomialIdeal::from_faces(4, &[face(&[1]), face(&[2, 3])]);
        let vecs = i.exponent_vectors();
        assert_eq!(vecs, vec![vec![0, 1, 0, 0], vec![0, 0, 1, 1]]);
        assert_eq!(SquarefreeMonomialIdeal::from_exponent_vectors(4, &vecs), i);
    }
}
