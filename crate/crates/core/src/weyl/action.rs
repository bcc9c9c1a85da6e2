//! The operator action on polynomials and the membership tests that decide
//! which operators descend to the quotient by a face ideal.

use super::element::WeylElement;
use super::field::{field_binomial, FieldSpec, Scalar};
use super::WeylError;
use crate::simplicial::{Face, SimplicialComplex};
use std::collections::BTreeMap;

/// A polynomial with exact coefficients, stored as a sorted map from
/// exponent vectors to nonzero scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    field: FieldSpec,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Polynomial {
    pub fn zero(n: usize, field: FieldSpec) -> Polynomial {
        Polynomial {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, field: FieldSpec) -> Polynomial {
        Polynomial::monomial(n, field, &vec![0; n], field.one())
    }

    /// The single term `coeff * x^exps`.
    pub fn monomial(n: usize, field: FieldSpec, exps: &[u32], coeff: Scalar) -> Polynomial {
        assert_eq!(exps.len(), n, "exponent vector must have length n");
        assert_eq!(coeff.field(), field, "coefficient field mismatch");
        let mut out = Polynomial::zero(n, field);
        out.add_term(exps.to_vec(), coeff);
        out
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as (exponent vector, coefficient), in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Add `coeff * x^exps` into this polynomial, dropping cancellations.
    pub fn add_term(&mut self, exps: Vec<u32>, coeff: Scalar) {
        assert_eq!(exps.len(), self.n, "exponent vector must have length n");
        if coeff.is_zero() {
            return;
        }
        assert_eq!(coeff.field(), self.field, "coefficient field mismatch");
        match self.terms.get_mut(&exps) {
            Some(c) => {
                let sum = c.add(&coeff);
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, WeylError> {
        if self.field != other.field {
            return Err(WeylError::FieldMismatch(self.field, other.field));
        }
        if self.n != other.n {
            return Err(WeylError::AmbientMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        assert_eq!(s.field(), self.field, "scalar field mismatch");
        let mut out = Polynomial::zero(self.n, self.field);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul(s));
        }
        out
    }

    /// The image in the face ring: terms whose support is not a face of `k`
    /// lie in the face ideal and are dropped.
    pub fn reduce_mod(&self, k: &SimplicialComplex) -> Polynomial {
        assert_eq!(k.n_vertices(), self.n, "ambient variable counts differ");
        let mut out = Polynomial::zero(self.n, self.field);
        for (e, c) in &self.terms {
            if k.has_face(&Face::support(e)) {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }
}

/// Apply an operator to a polynomial; with a complex supplied, the result is
/// reduced modulo its face ideal.
///
/// On a monomial, `x^a d^(b) . x^c = prod_i C(c_i, b_i) x^(a + c - b)`,
/// which is zero unless `c >= b` coordinatewise; the general case is linear
/// in both arguments.
pub fn apply(
    op: &WeylElement,
    poly: &Polynomial,
    complex: Option<&SimplicialComplex>,
) -> Result<Polynomial, WeylError> {
    let field = op.field();
    if field != poly.field() {
        return Err(WeylError::FieldMismatch(field, poly.field()));
    }
    let n = op.n_vars();
    if n != poly.n_vars() {
        return Err(WeylError::AmbientMismatch(n, poly.n_vars()));
    }
    if let Some(k) = complex {
        if k.n_vertices() != n {
            return Err(WeylError::AmbientMismatch(k.n_vertices(), n));
        }
    }
    let mut out = Polynomial::zero(n, field);
    for (a, b, oc) in op.terms() {
        'poly: for (c, pc) in poly.terms() {
            let mut coeff = oc.mul(pc);
            for i in 0..n {
                if c[i] < b[i] {
                    continue 'poly;
                }
                coeff = coeff.mul(&field_binomial(field, c[i] as u64, b[i] as u64));
                if coeff.is_zero() {
                    continue 'poly;
                }
            }
            let exps: Vec<u32> = (0..n).map(|i| a[i] + c[i] - b[i]).collect();
            out.add_term(exps, coeff);
        }
    }
    Ok(match complex {
        Some(k) => out.reduce_mod(k),
        None => out,
    })
}

/// Decide whether `x^a d^(b)` descends to an operator on the face ring,
/// by the facet criterion: every facet containing the support of `a` must
/// also contain the support of `b`.
///
/// Equivalently, for every minimal prime of the face ring (one per facet,
/// generated by the variables off that facet), `x^a` lies in the prime or
/// `x^b` does not.  The answer does not depend on the coefficient field;
/// the parameter keeps the calling convention of the other membership tests.
pub fn in_d_ring(k: &SimplicialComplex, a: &[u32], b: &[u32], _field: FieldSpec) -> bool {
    let n = k.n_vertices();
    assert_eq!(a.len(), n, "x-exponent vector must have length n");
    assert_eq!(b.len(), n, "d-exponent vector must have length n");
    let sa = Face::support(a);
    let sb = Face::support(b);
    k.facets()
        .iter()
        .all(|f| !sa.is_subset_of(f) || sb.is_subset_of(f))
}

/// Decide membership of `x^a d^(b)` through the star order: when both
/// supports are faces, the operator descends exactly when the closed star
/// of the support of `a` is contained in the closed star of the support
/// of `b`.
pub fn in_d_ring_star(k: &SimplicialComplex, a: &[u32], b: &[u32]) -> Result<bool, WeylError> {
    let n = k.n_vertices();
    assert_eq!(a.len(), n, "x-exponent vector must have length n");
    assert_eq!(b.len(), n, "d-exponent vector must have length n");
    let sa = Face::support(a);
    let sb = Face::support(b);
    if !k.has_face(&sa) {
        return Err(WeylError::SupportNotAFace(sa));
    }
    if !k.has_face(&sb) {
        return Err(WeylError::SupportNotAFace(sb));
    }
    Ok(k.star_leq(&sa, &sb).expect("supports validated as faces"))
}

/// The default monomial degree cap for [`preserves_face_ideal`]:
/// `max(3, |b| + 2)` leaves room above every divided-power exponent.
pub fn default_degree_bound(b: &[u32]) -> u32 {
    3.max(b.iter().sum::<u32>() + 2)
}

/// Check directly that `x^a d^(b)` maps the face ideal into itself, over
/// every ideal monomial `x^c` with all exponents at most `degree_bound`.
///
/// The box scan is carried out implicitly.  Since
/// `x^a d^(b) . x^c = prod_i C(c_i, b_i) x^(a + c - b)`, a monomial with
/// some `c_i < b_i` is annihilated outright, and for `c >= b` the support
/// of `x^c` is `supp(b) ∪ T` and the support of the image is `supp(a) ∪ T`,
/// where `T` is the set of coordinates with `c_i > b_i`.  Over a field the
/// coefficient is nonzero iff each factor is, and the factor at `i` depends
/// only on `c_i`.  So a counterexample with all `c_i <= degree_bound`
/// exists iff some coordinate set `T` satisfies: every `i` in `T` admits a
/// growth `d` with `b_i + d <= degree_bound` and `C(b_i + d, b_i)` nonzero
/// in the field; `supp(b) ∪ T` is a non-face; and `supp(a) ∪ T` is a face.
pub fn preserves_face_ideal(
    k: &SimplicialComplex,
    a: &[u32],
    b: &[u32],
    field: FieldSpec,
    degree_bound: u32,
) -> bool {
    let n = k.n_vertices();
    assert_eq!(a.len(), n, "x-exponent vector must have length n");
    assert_eq!(b.len(), n, "d-exponent vector must have length n");
    assert!(n <= 22, "ideal scan enumerates coordinate subsets");
    if b.iter().any(|&bi| bi > degree_bound) {
        // The box contains no monomial with c >= b, and everything below b
        // is annihilated.
        return true;
    }
    let sa = Face::support(a);
    let sb = Face::support(b);
    let growable: Vec<bool> = (0..n)
        .map(|i| {
            (1..=degree_bound - b[i])
                .any(|d| !field_binomial(field, (b[i] + d) as u64, b[i] as u64).is_zero())
        })
        .collect();
    for t_bits in 0u64..(1u64 << n) {
        let t = Face::from_bits(t_bits as u32);
        if t.vertices().iter().any(|&i| !growable[i]) {
            continue;
        }
        if k.has_face(&sb.union(&t)) {
            continue; // the candidate x^c is not in the ideal
        }
        if k.has_face(&sa.union(&t)) {
            return false; // its image escapes the ideal
        }
    }
    true
}

/// All basis operators `x^a d^(b)` of the ring of operators on the face
/// ring, restricted to exponents at most `max_exp`; pairs are returned in
/// lexicographic order of (a, b).
///
/// A pair qualifies when the support of `a` is a face (otherwise `x^a` is
/// zero in the face ring) and the facet criterion of [`in_d_ring`] holds.
pub fn d_ring_basis_up_to(
    k: &SimplicialComplex,
    field: FieldSpec,
    max_exp: u32,
) -> Vec<(Vec<u32>, Vec<u32>)> {
    let n = k.n_vertices();
    let vectors = box_vectors(n, max_exp);
    let mut out = Vec::new();
    for a in &vectors {
        if !k.has_face(&Face::support(a)) {
            continue;
        }
        for b in &vectors {
            if in_d_ring(k, a, b, field) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Whether every term of the element individually descends to the face ring.
pub fn element_in_d_ring(k: &SimplicialComplex, u: &WeylElement) -> bool {
    u.terms().all(|(a, b, _)| in_d_ring(k, a, b, u.field()))
}

/// All length-`n` vectors with entries `0..=max_exp`, in lexicographic
/// order (leftmost coordinate most significant).
pub(crate) fn box_vectors(n: usize, max_exp: u32) -> Vec<Vec<u32>> {
    let base = (max_exp as u64) + 1;
    let total = base.pow(n as u32);
    assert!(total <= 1 << 24, "exponent box too large to enumerate");
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut v = vec![0u32; n];
        let mut rem = idx;
        for pos in (0..n).rev() {
            v[pos] = (rem % base) as u32;
            rem /= base;
        }
        out.push(v);
    }
    out
}
