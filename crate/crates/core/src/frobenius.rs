//! Characteristic-p structure of the face ring.
//!
//! Over a perfect field of characteristic p the face ring splits, as a
//! module over its subring of q-th powers (q a power of p), into summands
//! indexed by closed stars of faces; the summand multiplicities are polynomial
//! in q and their total is the Hilbert-Kunz function.  A differential
//! operator of order below q acts linearly over the q-th powers and hence
//! as a finite matrix on the standard monomial generators, with blocks
//! governed by the same star combinatorics as the two-sided ideals.

use crate::dideals::{principal_ideal, DIdealError, TwoSidedIdeal};
use crate::simplicial::{Face, SimplicialComplex, StarPoset};
use crate::weyl::{apply, box_vectors, FieldSpec, Polynomial, WeylElement};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

/// Cap on standard monomial generators for the matrix model.
pub const MAX_MATRIX_GENERATORS: u128 = 5000;

/// Errors raised by characteristic-p computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrobeniusError {
    /// q is not an admissible power: too small, not a prime power, or not
    /// a power of the coefficient characteristic.
    #[error("{0}")]
    BadQ(String),
    /// The operator's order must be strictly below q for the matrix model.
    #[error("q = {q} does not exceed the operator order {order}")]
    QTooSmall { q: u64, order: u32 },
    /// The operator does not act on the face ring.
    #[error("term {0} does not act on the face ring")]
    NotInDRing(String),
    /// The given vertex set is not a face of the complex.
    #[error("face {0} is not a face of the complex")]
    NotAFace(Face),
    /// The computation exceeds a desk-scale cap.
    #[error("{0}")]
    TooLarge(String),
}

/// Writes q as (p, r) with p prime and q = p^r, r >= 1.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut factor = q;
    let mut d = 2u64;
    while d <= q / d {
        if q % d == 0 {
            factor = d;
            break;
        }
        d += 1;
    }
    let mut rest = q;
    let mut r = 0u32;
    while rest % factor == 0 {
        rest /= factor;
        r += 1;
    }
    if rest == 1 {
        Some((factor, r))
    } else {
        None
    }
}

/// The splitting of the face ring over its subring of q-th powers: one
/// multiplicity per closed-star class.
#[derive(Debug, Clone)]
pub struct FrobeniusDecomposition {
    q: u64,
    poset: Arc<StarPoset>,
    /// Multiplicity per star-poset node id.
    entries: BTreeMap<usize, u128>,
}

impl FrobeniusDecomposition {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn poset(&self) -> &Arc<StarPoset> {
        &self.poset
    }

    /// Multiplicity of the summand for the given star-poset node.
    pub fn multiplicity(&self, node: usize) -> u128 {
        self.entries.get(&node).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u128)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Total number of summands, which equals the Hilbert-Kunz value at q.
    pub fn total(&self) -> u128 {
        self.entries.values().sum()
    }

    /// JSON report: q, one record per star class (the facets of the star
    /// and its multiplicity), and the Hilbert-Kunz total.
    pub fn report(&self) -> Value {
        let multiplicities: Vec<Value> = self
            .entries
            .iter()
            .map(|(&node, &m)| {
                let star = &self.poset.nodes()[node].star;
                let facets: Vec<Vec<usize>> = star
                    .facets()
                    .iter()
                    .map(|f| f.vertices().iter().map(|v| v + 1).collect())
                    .collect();
                json!({ "star_facets": facets, "m": m as u64 })
            })
            .collect();
        json!({
            "q": self.q,
            "multiplicities": multiplicities,
            "hk": self.total() as u64,
        })
    }
}

/// Splitting multiplicities at q: each face contributes (q-1)^(its number
/// of vertices) to the class of its closed star.
pub fn multiplicities(
    k: &SimplicialComplex,
    q: u64,
) -> Result<FrobeniusDecomposition, FrobeniusError> {
    if prime_power(q).is_none() {
        return Err(FrobeniusError::BadQ(format!(
            "q = {q} is not a prime power >= 2"
        )));
    }
    let poset = Arc::new(k.star_poset());
    let mut entries: BTreeMap<usize, u128> = BTreeMap::new();
    for alpha in k.faces() {
        let node = poset.node_of_face(&alpha).expect("enumerated face");
        let weight = (q as u128 - 1)
            .checked_pow(alpha.len() as u32)
            .ok_or_else(|| FrobeniusError::TooLarge(format!("(q-1)^{} overflows", alpha.len())))?;
        let slot = entries.entry(node).or_insert(0);
        *slot = slot
            .checked_add(weight)
            .ok_or_else(|| FrobeniusError::TooLarge("multiplicity overflows".to_string()))?;
    }
    Ok(FrobeniusDecomposition { q, poset, entries })
}

/// The Hilbert-Kunz function of a face ring, as a polynomial in (q-1)
/// whose coefficients are the face counts by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkPolynomial {
    /// Face counts from dimension -1 upward.
    f: Vec<u64>,
}

impl HkPolynomial {
    pub fn coefficients(&self) -> &[u64] {
        &self.f
    }

    /// HK(q) = sum of f_i (q-1)^(i+1) over all face dimensions i.
    pub fn evaluate(&self, q: u64) -> Result<u128, FrobeniusError> {
        let base = q as u128 - 1;
        let mut total = 0u128;
        let mut power = 1u128;
        for (j, &fj) in self.f.iter().enumerate() {
            let term = power
                .checked_mul(fj as u128)
                .ok_or_else(|| FrobeniusError::TooLarge(format!("HK({q}) overflows")))?;
            total = total
                .checked_add(term)
                .ok_or_else(|| FrobeniusError::TooLarge(format!("HK({q}) overflows")))?;
            if j + 1 < self.f.len() {
                power = power
                    .checked_mul(base)
                    .ok_or_else(|| FrobeniusError::TooLarge(format!("HK({q}) overflows")))?;
            }
        }
        Ok(total)
    }

    /// The Hilbert-Kunz multiplicity: the leading coefficient, which
    /// counts the top-dimensional faces.
    pub fn e_hk(&self) -> u64 {
        *self.f.last().expect("f-vector is never empty")
    }
}

/// The Hilbert-Kunz polynomial of the face ring: coefficients straight
/// from the f-vector.
pub fn hk_polynomial(k: &SimplicialComplex) -> HkPolynomial {
    HkPolynomial { f: k.f_vector() }
}

/// Direct count of the monomials x^a with every exponent below q and face
/// support; these form a basis of the face ring modulo the q-th powers of
/// the variables.  Accepts any q >= 2, prime power or not.
pub fn hk_bruteforce(k: &SimplicialComplex, q: u64) -> Result<u128, FrobeniusError> {
    if q < 2 {
        return Err(FrobeniusError::BadQ(format!("q = {q} is below 2")));
    }
    let n = k.n_vertices();
    let total = (q as u128)
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| {
            FrobeniusError::TooLarge(format!("direct count would scan {q}^{n} monomials"))
        })?;
    let _ = total;
    let count = box_vectors(n, (q - 1) as u32)
        .into_iter()
        .filter(|a| k.is_face(&Face::support(a)).expect("support fits the vertex range"))
        .count();
    Ok(count as u128)
}

/// The star class supporting the matrix block from column star st(sigma)
/// to row star st(tau): the node of st(sigma union tau) when the union is
/// a face, and `None` when the block is forced to vanish.
pub fn block_support(
    poset: &StarPoset,
    sigma: &Face,
    tau: &Face,
) -> Result<Option<usize>, FrobeniusError> {
    let k = poset.complex();
    for f in [sigma, tau] {
        if !k.is_face(f).map_err(|_| FrobeniusError::NotAFace(*f))? {
            return Err(FrobeniusError::NotAFace(*f));
        }
    }
    let union = sigma.union(tau);
    if !k.is_face(&union).expect("vertex range already checked") {
        return Ok(None);
    }
    Ok(Some(poset.node_of_face(&union).expect("union is a face")))
}

/// The two-sided ideal carried by the (sigma, tau) block of the splitting:
/// the principal ideal of x_(sigma union tau), or zero when the union is
/// not a face.
pub fn j_ideal(
    poset: &Arc<StarPoset>,
    sigma: &Face,
    tau: &Face,
) -> Result<TwoSidedIdeal, FrobeniusError> {
    let k = poset.complex();
    for f in [sigma, tau] {
        if !k.is_face(f).map_err(|_| FrobeniusError::NotAFace(*f))? {
            return Err(FrobeniusError::NotAFace(*f));
        }
    }
    let union = sigma.union(tau);
    if !k.is_face(&union).expect("vertex range already checked") {
        return Ok(TwoSidedIdeal::zero(poset));
    }
    principal_ideal(poset, &union).map_err(|e| match e {
        DIdealError::NotAFace(f) => FrobeniusError::NotAFace(f),
        other => FrobeniusError::TooLarge(other.to_string()),
    })
}

/// A differential operator of order below q written as a matrix over the
/// q-th powers: rows and columns are indexed by the standard monomial
/// generators (exponents below q, face support), and each entry is a
/// polynomial whose exponents are multiples of q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    characteristic: u64,
    q: u64,
    complex: SimplicialComplex,
    generators: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
    /// (column generator, row generator) -> entry; column acts first:
    /// x^col maps to the sum over rows of entry * x^row.
    blocks: BTreeMap<(usize, usize), Polynomial>,
}

impl BlockMatrix {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Standard monomial generators in exponent-vector order.
    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// The entry mapping generator x^from into the x^to component, if
    /// nonzero.
    pub fn entry(&self, from: &[u32], to: &[u32]) -> Option<&Polynomial> {
        let fi = self.index.get(from)?;
        let ti = self.index.get(to)?;
        self.blocks.get(&(*fi, *ti))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&[u32], &[u32], &Polynomial)> {
        self.blocks.iter().map(move |(&(fi, ti), entry)| {
            (
                self.generators[fi].as_slice(),
                self.generators[ti].as_slice(),
                entry,
            )
        })
    }

    fn field(&self) -> FieldSpec {
        FieldSpec::Prime(self.characteristic)
    }

    /// Applies the matrix to a polynomial by splitting every monomial as
    /// x^(q*m) * x^generator and acting linearly over the q-th powers.
    pub fn act(&self, poly: &Polynomial) -> Polynomial {
        assert_eq!(poly.field(), self.field(), "coefficient field must match");
        assert_eq!(poly.n_vars(), self.complex.n_vertices());
        let n = self.complex.n_vertices();
        let reduced = poly.reduce_mod(&self.complex);
        let mut out = Polynomial::zero(n, self.field());
        for (e, c) in reduced.terms() {
            let low: Vec<u32> = e.iter().map(|&x| x % self.q as u32).collect();
            let high: Vec<u32> = e.iter().map(|&x| x - x % self.q as u32).collect();
            let fi = *self
                .index
                .get(&low)
                .expect("reduced support is a face, so its truncation is a generator");
            for ((from, to), entry) in &self.blocks {
                if *from != fi {
                    continue;
                }
                for (ee, ec) in entry.terms() {
                    let mut exps = high.clone();
                    for (i, x) in exps.iter_mut().enumerate() {
                        *x += ee[i] + self.generators[*to][i];
                    }
                    out.add_term(exps, c.mul(ec));
                }
            }
        }
        out.reduce_mod(&self.complex)
    }

    /// Re-expresses the operator on the generator set one Frobenius level
    /// up, at p*q, purely from the matrix data.
    pub fn reblock(&self) -> Result<BlockMatrix, FrobeniusError> {
        let q2 = self.q * self.characteristic;
        let generators = standard_generators(&self.complex, q2)?;
        let index: BTreeMap<Vec<u32>, usize> = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        let mut blocks = BTreeMap::new();
        let n = self.complex.n_vertices();
        for (gi, g) in generators.iter().enumerate() {
            let image = self.act(&Polynomial::monomial(
                n,
                self.field(),
                g,
                self.field().one(),
            ));
            accumulate_blocks(&mut blocks, &index, q2, gi, &image);
        }
        Ok(BlockMatrix {
            characteristic: self.characteristic,
            q: q2,
            complex: self.complex.clone(),
            generators,
            index,
            blocks,
        })
    }

    /// JSON dump: level, characteristic, generator exponent vectors, and
    /// the nonzero blocks with printed entries.
    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|(&(fi, ti), entry)| {
                json!({
                    "from": self.generators[fi],
                    "to": self.generators[ti],
                    "entry": entry.to_string(),
                })
            })
            .collect();
        json!({
            "q": self.q,
            "characteristic": self.characteristic,
            "generators": self.generators,
            "blocks": blocks,
        })
    }
}

/// Standard monomial generators at level q: exponent vectors below q with
/// face support, in lexicographic order.
fn standard_generators(
    k: &SimplicialComplex,
    q: u64,
) -> Result<Vec<Vec<u32>>, FrobeniusError> {
    let n = k.n_vertices();
    let expected = hk_polynomial(k).evaluate(q)?;
    if expected > MAX_MATRIX_GENERATORS {
        return Err(FrobeniusError::TooLarge(format!(
            "{expected} generators at q = {q} exceed the cap of {MAX_MATRIX_GENERATORS}"
        )));
    }
    (q as u128)
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| {
            FrobeniusError::TooLarge(format!("generator scan would cover {q}^{n} vectors"))
        })?;
    let generators: Vec<Vec<u32>> = box_vectors(n, (q - 1) as u32)
        .into_iter()
        .filter(|a| k.is_face(&Face::support(a)).expect("support fits the vertex range"))
        .collect();
    assert_eq!(
        generators.len() as u128,
        expected,
        "direct generator count must match the face-count polynomial"
    );
    Ok(generators)
}

/// Splits a polynomial image of the generator `gi` into blocks at level q.
fn accumulate_blocks(
    blocks: &mut BTreeMap<(usize, usize), Polynomial>,
    index: &BTreeMap<Vec<u32>, usize>,
    q: u64,
    gi: usize,
    image: &Polynomial,
) {
    let n = image.n_vars();
    let field = image.field();
    for (e, c) in image.terms() {
        let low: Vec<u32> = e.iter().map(|&x| x % q as u32).collect();
        let high: Vec<u32> = e.iter().map(|&x| x - x % q as u32).collect();
        let ti = *index
            .get(&low)
            .expect("image support is a face, so its truncation is a generator");
        blocks
            .entry((gi, ti))
            .or_insert_with(|| Polynomial::zero(n, field))
            .add_term(high, c.clone());
    }
    blocks.retain(|_, entry| !entry.is_zero());
}

/// The matrix of a differential operator acting linearly over the q-th
/// powers on the standard monomial generators.
///
/// Requires a prime coefficient field with q a power of its
/// characteristic, operator order strictly below q, and an operator that
/// acts on the face ring.  The construction replays the matrix against
/// the direct action on x^(a + q c) for every generator a and 0/1 vector
/// c and panics on any mismatch, so a returned matrix is exact.
pub fn operator_matrix(
    k: &SimplicialComplex,
    elt: &WeylElement,
    q: u64,
) -> Result<BlockMatrix, FrobeniusError> {
    let n = k.n_vertices();
    assert_eq!(elt.n_vars(), n, "operator must match the vertex count");
    let p = match elt.field() {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rational => {
            return Err(FrobeniusError::BadQ(
                "the matrix model needs a prime coefficient field".to_string(),
            ))
        }
    };
    match prime_power(q) {
        Some((base, _)) if base == p => {}
        _ => {
            return Err(FrobeniusError::BadQ(format!(
                "q = {q} is not a power of the characteristic {p}"
            )))
        }
    }
    if u64::from(elt.order()) >= q {
        return Err(FrobeniusError::QTooSmall {
            q,
            order: elt.order(),
        });
    }
    for (a, b, c) in elt.terms() {
        if !crate::weyl::in_d_ring(k, a, b, elt.field()) {
            let term = WeylElement::term(n, elt.field(), a, b, c.clone());
            return Err(FrobeniusError::NotInDRing(term.to_string()));
        }
    }
    let generators = standard_generators(k, q)?;
    let index: BTreeMap<Vec<u32>, usize> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), i))
        .collect();
    let mut blocks = BTreeMap::new();
    for (gi, g) in generators.iter().enumerate() {
        let image = apply(
            elt,
            &Polynomial::monomial(n, elt.field(), g, elt.field().one()),
            Some(k),
        )
        .expect("fields and sizes were validated");
        accumulate_blocks(&mut blocks, &index, q, gi, &image);
    }
    let matrix = BlockMatrix {
        characteristic: p,
        q,
        complex: k.clone(),
        generators,
        index,
        blocks,
    };
    let check_budget = (matrix.generators.len() as u128) << n;
    if check_budget > 1 << 20 {
        return Err(FrobeniusError::TooLarge(format!(
            "exactness check would replay {check_budget} monomials"
        )));
    }
    for g in matrix.generators.clone() {
        for shift in box_vectors(n, 1) {
            let exps: Vec<u32> = g
                .iter()
                .zip(&shift)
                .map(|(&a, &c)| a + c * q as u32)
                .collect();
            let probe = Polynomial::monomial(n, elt.field(), &exps, elt.field().one());
            let direct = apply(elt, &probe, Some(k)).expect("validated").reduce_mod(k);
            let via_matrix = matrix.act(&probe);
            assert_eq!(
                direct, via_matrix,
                "matrix model must reproduce the action on x^{exps:?}"
            );
        }
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dideals::ideal_of_element;
    use crate::weyl::d_ring_basis_up_to;

    fn k_a() -> SimplicialComplex {
        SimplicialComplex::build_1based(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap()
    }

    fn k_b() -> SimplicialComplex {
        SimplicialComplex::build_1based(4, &[vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap()
    }

    fn k_c() -> SimplicialComplex {
        SimplicialComplex::build_1based(5, &[vec![1, 2, 5], vec![2, 3, 5], vec![3, 4, 5]]).unwrap()
    }

    fn face(vs: &[usize]) -> Face {
        Face::from_vertices(vs)
    }

    #[test]
    fn prime_powers_are_recognized() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(0), None);
    }

    #[test]
    fn multiplicities_on_the_hollow_triangle_at_two() {
        let d = multiplicities(&k_a(), 2).unwrap();
        // Seven faces, seven distinct stars, weight one each.
        assert_eq!(d.poset().len(), 7);
        for (_, m) in d.entries() {
            assert_eq!(m, 1);
        }
        assert_eq!(d.total(), 7);
    }

    #[test]
    fn multiplicities_aggregate_faces_with_equal_stars() {
        let d = multiplicities(&k_b(), 2).unwrap();
        // Node order: full, st{1}, st{2}, st{3}, st{4}, st{2,3}; the end
        // vertices absorb their edges.
        let ms: Vec<u128> = d.entries().map(|(_, m)| m).collect();
        assert_eq!(ms, vec![1, 2, 1, 1, 2, 1]);
        assert_eq!(d.total(), 8);
        let d3 = multiplicities(&k_b(), 3).unwrap();
        let ms3: Vec<u128> = d3.entries().map(|(_, m)| m).collect();
        assert_eq!(ms3, vec![1, 6, 2, 2, 6, 4]);
        assert_eq!(d3.total(), 21);
    }

    #[test]
    fn cone_apex_joins_the_full_star_class() {
        let d = multiplicities(&k_c(), 3).unwrap();
        let full = d.poset().full_node();
        // The faces with full star are the empty face and the apex.
        assert_eq!(d.multiplicity(full), 1 + 2);
        assert_eq!(d.total(), 63);
    }

    #[test]
    fn multiplicities_reject_non_prime_powers() {
        assert!(matches!(
            multiplicities(&k_a(), 6),
            Err(FrobeniusError::BadQ(_))
        ));
        assert!(matches!(
            multiplicities(&k_a(), 1),
            Err(FrobeniusError::BadQ(_))
        ));
    }

    #[test]
    fn hk_polynomials_are_face_counts() {
        let hk = hk_polynomial(&k_a());
        assert_eq!(hk.coefficients(), &[1, 3, 3]);
        assert_eq!(hk.e_hk(), 3);
        assert_eq!(hk.evaluate(2).unwrap(), 7);
        let hk_b = hk_polynomial(&k_b());
        assert_eq!(hk_b.coefficients(), &[1, 4, 3]);
        assert_eq!(hk_b.e_hk(), 3);
        assert_eq!(hk_b.evaluate(2).unwrap(), 8);
        assert_eq!(hk_polynomial(&k_c()).evaluate(2).unwrap(), 16);
    }

    #[test]
    fn full_simplices_have_power_growth() {
        for n in 1..=3usize {
            let simplex =
                SimplicialComplex::build_1based(n, &[(1..=n).collect::<Vec<_>>()]).unwrap();
            let hk = hk_polynomial(&simplex);
            for q in [2u64, 3, 4, 5] {
                assert_eq!(hk.evaluate(q).unwrap(), (q as u128).pow(n as u32));
            }
        }
    }

    #[test]
    fn brute_force_counts_agree_with_the_polynomial() {
        for k in [k_a(), k_b(), k_c()] {
            let hk = hk_polynomial(&k);
            for q in [2u64, 3, 4, 5, 8, 9] {
                assert_eq!(hk_bruteforce(&k, q).unwrap(), hk.evaluate(q).unwrap());
            }
        }
        assert_eq!(hk_bruteforce(&k_a(), 2).unwrap(), 7);
        assert_eq!(hk_bruteforce(&k_b(), 2).unwrap(), 8);
        // Any integer >= 2 is accepted here, prime power or not.
        assert_eq!(
            hk_bruteforce(&k_a(), 6).unwrap(),
            hk_polynomial(&k_a()).evaluate(6).unwrap()
        );
        assert!(matches!(
            hk_bruteforce(&k_a(), 1),
            Err(FrobeniusError::BadQ(_))
        ));
    }

    #[test]
    fn multiplicity_totals_match_hilbert_kunz() {
        for k in [k_a(), k_b(), k_c()] {
            let hk = hk_polynomial(&k);
            for q in [2u64, 3, 4, 5, 8, 9] {
                assert_eq!(multiplicities(&k, q).unwrap().total(), hk.evaluate(q).unwrap());
            }
        }
    }

    #[test]
    fn every_star_class_appears_at_least_once() {
        for k in [k_a(), k_b(), k_c()] {
            for q in [2u64, 4, 9] {
                let d = multiplicities(&k, q).unwrap();
                let nodes: Vec<usize> = d.entries().map(|(id, m)| {
                    assert!(m >= 1);
                    id
                }).collect();
                assert_eq!(nodes.len(), d.poset().len());
            }
        }
    }

    #[test]
    fn block_support_follows_the_union() {
        let k = k_b();
        let p = k.star_poset();
        let edge_node = p.node_of_face(&face(&[1, 2])).unwrap();
        assert_eq!(
            block_support(&p, &face(&[1]), &face(&[2])).unwrap(),
            Some(edge_node)
        );
        assert_eq!(block_support(&p, &face(&[0]), &face(&[3])).unwrap(), None);
        for sigma in k.faces() {
            assert_eq!(
                block_support(&p, &sigma, &sigma).unwrap(),
                Some(p.node_of_face(&sigma).unwrap())
            );
        }
        assert_eq!(
            block_support(&p, &face(&[0, 2]), &face(&[1])),
            Err(FrobeniusError::NotAFace(face(&[0, 2])))
        );
    }

    #[test]
    fn j_ideals_reduce_to_principal_ideals() {
        let k = k_b();
        let p = Arc::new(k.star_poset());
        assert_eq!(
            j_ideal(&p, &face(&[0]), &face(&[0])).unwrap(),
            principal_ideal(&p, &face(&[0])).unwrap()
        );
        assert!(j_ideal(&p, &face(&[0]), &face(&[3])).unwrap().is_zero());
        let kc = k_c();
        let pc = Arc::new(kc.star_poset());
        assert_eq!(
            j_ideal(&pc, &face(&[1]), &face(&[2])).unwrap(),
            principal_ideal(&pc, &face(&[1, 2])).unwrap()
        );
    }

    #[test]
    fn diagonal_j_ideals_match_element_ideals() {
        for k in [k_a(), k_b(), k_c()] {
            let p = Arc::new(k.star_poset());
            let n = k.n_vertices();
            for sigma in k.faces() {
                if sigma.is_empty() {
                    continue;
                }
                let mut a = vec![0u32; n];
                for v in sigma.vertices() {
                    a[v] = 1;
                }
                let op = WeylElement::monomial_op(n, FieldSpec::Rational, &a, &vec![0; n]);
                assert_eq!(
                    j_ideal(&p, &sigma, &sigma).unwrap(),
                    ideal_of_element(&p, &op).unwrap(),
                    "face {sigma}"
                );
            }
        }
    }

    #[test]
    fn j_ideals_are_intersections_of_diagonal_ones() {
        for k in [k_b(), k_c()] {
            let p = Arc::new(k.star_poset());
            for sigma in k.faces() {
                for tau in k.faces() {
                    let direct = j_ideal(&p, &sigma, &tau).unwrap();
                    let meet = j_ideal(&p, &sigma, &sigma)
                        .unwrap()
                        .intersection(&j_ideal(&p, &tau, &tau).unwrap())
                        .unwrap();
                    assert_eq!(direct, meet, "faces {sigma}, {tau}");
                }
            }
        }
    }

    #[test]
    fn euler_operator_matrix_is_diagonal() {
        let k = k_a();
        let f2 = FieldSpec::Prime(2);
        let op = WeylElement::monomial_op(3, f2, &[1, 0, 0], &[1, 0, 0]);
        let m = operator_matrix(&k, &op, 2).unwrap();
        assert_eq!(m.num_generators(), 7);
        let mut diagonal = Vec::new();
        for g in m.generators() {
            for h in m.generators() {
                let entry = m.entry(g, h);
                if g == h {
                    diagonal.push(entry.map(|e| e.to_string()));
                } else {
                    assert!(entry.is_none(), "off-diagonal block {g:?} -> {h:?}");
                }
            }
        }
        // Generators in exponent order: 1, x3, x2, x2x3, x1, x1x3, x1x2;
        // the diagonal entry is the first exponent mod 2.
        let expected: Vec<Option<String>> = m
            .generators()
            .iter()
            .map(|g| {
                if g[0] % 2 == 1 {
                    Some("1".to_string())
                } else {
                    None
                }
            })
            .collect();
        assert_eq!(diagonal, expected);
    }

    #[test]
    fn identity_matrix_is_the_identity() {
        let k = k_b();
        let op = WeylElement::one(4, FieldSpec::Prime(2));
        let m = operator_matrix(&k, &op, 2).unwrap();
        assert_eq!(m.num_generators(), 8);
        let mut count = 0;
        for (g, h, entry) in m.blocks() {
            assert_eq!(g, h);
            assert_eq!(entry.to_string(), "1");
            count += 1;
        }
        assert_eq!(count, 8);
    }

    #[test]
    fn transfer_operator_matrix_blocks_are_frozen() {
        let k = k_b();
        let f2 = FieldSpec::Prime(2);
        let op = WeylElement::monomial_op(4, f2, &[1, 0, 0, 0], &[0, 1, 0, 0]);
        let m = operator_matrix(&k, &op, 2).unwrap();
        let listed: Vec<(Vec<u32>, Vec<u32>, String)> = m
            .blocks()
            .map(|(g, h, e)| (g.to_vec(), h.to_vec(), e.to_string()))
            .collect();
        // x_1 d_2 sends x_2 to x_1 and x_1 x_2 to x_1^2, and kills x_2 x_3
        // because x_1 x_3 is not a face.
        assert_eq!(
            listed,
            vec![
                (vec![0, 1, 0, 0], vec![1, 0, 0, 0], "1".to_string()),
                (vec![1, 1, 0, 0], vec![0, 0, 0, 0], "x[1]^2".to_string()),
            ]
        );
    }

    #[test]
    fn matrix_model_requires_admissible_parameters() {
        let k = k_a();
        let f2 = FieldSpec::Prime(2);
        // Order 2 operator at q = 2.
        let heavy = WeylElement::d_var(3, f2, 1, 2);
        assert_eq!(
            operator_matrix(&k, &heavy, 2),
            Err(FrobeniusError::QTooSmall { q: 2, order: 2 })
        );
        let id = WeylElement::one(3, f2);
        assert!(matches!(
            operator_matrix(&k, &id, 3),
            Err(FrobeniusError::BadQ(_))
        ));
        assert!(matches!(
            operator_matrix(&k, &WeylElement::one(3, FieldSpec::Rational), 2),
            Err(FrobeniusError::BadQ(_))
        ));
        let stranger = WeylElement::monomial_op(3, f2, &[1, 0, 0], &[0, 1, 0]);
        assert!(matches!(
            operator_matrix(&k, &stranger, 2),
            Err(FrobeniusError::NotInDRing(_))
        ));
    }

    #[test]
    fn blocks_respect_support_and_the_element_ideal() {
        for k in [k_a(), k_b()] {
            let poset = Arc::new(k.star_poset());
            let n = k.n_vertices();
            for (a, b) in d_ring_basis_up_to(&k, FieldSpec::Prime(2), 1) {
                let op = WeylElement::monomial_op(n, FieldSpec::Prime(2), &a, &b);
                for q in [2u64, 4] {
                    if u64::from(op.order()) >= q {
                        continue;
                    }
                    let m = operator_matrix(&k, &op, q).unwrap();
                    let ideal = ideal_of_element(&poset, &op);
                    for (g, h, entry) in m.blocks() {
                        let sg = Face::support(g);
                        let sh = Face::support(h);
                        let support = block_support(&poset, &sg, &sh).unwrap();
                        assert!(support.is_some(), "blocked pair must share a star");
                        // Each block carries the ideal of the union star,
                        // which must sit inside the ideal generated by the
                        // operator.
                        if let Ok(ideal) = &ideal {
                            let union = sg.union(&sh);
                            assert!(ideal
                                .contains(&principal_ideal(&poset, &union).unwrap())
                                .unwrap());
                        }
                        // Constant entries appear only when the target
                        // star sits inside the source star.
                        let constant = entry
                            .terms()
                            .any(|(e, _)| e.iter().all(|&x| x == 0));
                        if constant {
                            assert!(k.star_leq(&sh, &sg).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reblocking_matches_direct_construction() {
        let ka = k_a();
        let f2 = FieldSpec::Prime(2);
        let euler = WeylElement::monomial_op(3, f2, &[1, 0, 0], &[1, 0, 0]);
        let coarse = operator_matrix(&ka, &euler, 2).unwrap();
        let fine = coarse.reblock().unwrap();
        assert_eq!(fine, operator_matrix(&ka, &euler, 4).unwrap());
        // The degree-2 entry of the transfer operator becomes a constant
        // entry between finer generators.
        let kb = k_b();
        let transfer = WeylElement::monomial_op(4, f2, &[1, 0, 0, 0], &[0, 1, 0, 0]);
        let coarse = operator_matrix(&kb, &transfer, 2).unwrap();
        let fine = coarse.reblock().unwrap();
        let direct = operator_matrix(&kb, &transfer, 4).unwrap();
        assert_eq!(fine, direct);
        assert_eq!(
            fine.entry(&[1, 1, 0, 0], &[2, 0, 0, 0]).unwrap().to_string(),
            "1"
        );
        // Identity reblocks to identity.
        let id = operator_matrix(&ka, &WeylElement::one(3, f2), 2).unwrap();
        let id4 = id.reblock().unwrap();
        assert_eq!(id4, operator_matrix(&ka, &WeylElement::one(3, f2), 4).unwrap());
    }

    #[test]
    fn reblocked_matrices_act_identically() {
        let k = k_b();
        let f2 = FieldSpec::Prime(2);
        let op = WeylElement::monomial_op(4, f2, &[1, 0, 0, 0], &[0, 1, 0, 0])
            .add(&WeylElement::monomial_op(4, f2, &[0, 1, 0, 0], &[0, 1, 0, 0]))
            .unwrap();
        let coarse = operator_matrix(&k, &op, 2).unwrap();
        let fine = coarse.reblock().unwrap();
        for g in fine.generators() {
            let probe = Polynomial::monomial(4, f2, g, f2.one());
            assert_eq!(coarse.act(&probe), fine.act(&probe));
            assert_eq!(
                fine.act(&probe),
                apply(&op, &probe, Some(&k)).unwrap().reduce_mod(&k)
            );
        }
    }

    #[test]
    fn decomposition_report_is_deterministic() {
        let d = multiplicities(&k_b(), 2).unwrap();
        let report = d.report();
        assert_eq!(report["q"], 2);
        assert_eq!(report["hk"], 8);
        assert_eq!(report["multiplicities"].as_array().unwrap().len(), 6);
        assert_eq!(report["multiplicities"][0]["m"], 1);
        assert_eq!(report["multiplicities"][1]["m"], 2);
        let matrix = operator_matrix(
            &k_a(),
            &WeylElement::monomial_op(3, FieldSpec::Prime(2), &[1, 0, 0], &[1, 0, 0]),
            2,
        )
        .unwrap();
        let dump = matrix.to_json();
        assert_eq!(dump["q"], 2);
        assert_eq!(dump["generators"].as_array().unwrap().len(), 7);
        assert_eq!(dump["blocks"].as_array().unwrap().len(), 3);
    }
}
