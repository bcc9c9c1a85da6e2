//! Normal-form elements of the divided-power Weyl algebra.
//!
//! An element is a finite sum of terms `c * x^a * d^(b)` with all variables
//! to the left of all divided-power derivatives.  Terms are keyed by the
//! exponent pair and stored sorted lexicographically by (b, a), so equality,
//! iteration order and printing are deterministic.

use super::field::{field_binomial, FieldSpec, Scalar};
use super::WeylError;
use std::collections::BTreeMap;

/// A normal-form operator: a sum of terms `c * x^a * d^(b)` over a fixed
/// coefficient field in a fixed number of variables.
///
/// `d[i]^(k)` denotes the k-th divided power of the i-th partial derivative,
/// so `d[i]^k = k! * d[i]^(k)`.  No stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    n: usize,
    field: FieldSpec,
    /// Keyed (b, a): the derivative exponents sort before the variable
    /// exponents, so terms of low order come first.
    terms: BTreeMap<(Vec<u32>, Vec<u32>), Scalar>,
}

impl WeylElement {
    /// The zero operator.
    pub fn zero(n: usize, field: FieldSpec) -> WeylElement {
        WeylElement {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The identity operator.
    pub fn one(n: usize, field: FieldSpec) -> WeylElement {
        WeylElement::term(n, field, &vec![0; n], &vec![0; n], field.one())
    }

    /// The single term `coeff * x^a * d^(b)`.
    ///
    /// Panics if the exponent vectors do not have length `n` or the
    /// coefficient belongs to a different field.
    pub fn term(n: usize, field: FieldSpec, a: &[u32], b: &[u32], coeff: Scalar) -> WeylElement {
        assert_eq!(a.len(), n, "x-exponent vector must have length n");
        assert_eq!(b.len(), n, "d-exponent vector must have length n");
        assert_eq!(coeff.field(), field, "coefficient field mismatch");
        let mut out = WeylElement::zero(n, field);
        out.add_term_in_place(a.to_vec(), b.to_vec(), coeff);
        out
    }

    /// The basis operator `x^a * d^(b)` with coefficient 1.
    pub fn monomial_op(n: usize, field: FieldSpec, a: &[u32], b: &[u32]) -> WeylElement {
        WeylElement::term(n, field, a, b, field.one())
    }

    /// The variable `x[i]` (0-based index).
    pub fn x_var(n: usize, field: FieldSpec, i: usize) -> WeylElement {
        assert!(i < n, "variable index out of range");
        let mut a = vec![0; n];
        a[i] = 1;
        WeylElement::monomial_op(n, field, &a, &vec![0; n])
    }

    /// The divided power `d[i]^(k)` (0-based index).
    pub fn d_var(n: usize, field: FieldSpec, i: usize, k: u32) -> WeylElement {
        assert!(i < n, "variable index out of range");
        let mut b = vec![0; n];
        b[i] = k;
        WeylElement::monomial_op(n, field, &vec![0; n], &b)
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

    /// Terms as (a, b, coeff), sorted by (b, a).
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[u32], &Scalar)> {
        self.terms
            .iter()
            .map(|((b, a), c)| (a.as_slice(), b.as_slice(), c))
    }

    /// The order of the operator: the largest total derivative degree |b|
    /// over its terms, 0 for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .map(|(b, _)| b.iter().sum())
            .max()
            .unwrap_or(0)
    }

    fn check_compat(&self, other: &WeylElement) -> Result<(), WeylError> {
        if self.field != other.field {
            return Err(WeylError::FieldMismatch(self.field, other.field));
        }
        if self.n != other.n {
            return Err(WeylError::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    fn add_term_in_place(&mut self, a: Vec<u32>, b: Vec<u32>, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let key = (b, a);
        match self.terms.get_mut(&key) {
            Some(c) => {
                let sum = c.add(&coeff);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for ((b, a), c) in &other.terms {
            out.add_term_in_place(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> WeylElement {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by a scalar from the same field.
    pub fn scale(&self, s: &Scalar) -> WeylElement {
        assert_eq!(s.field(), self.field, "scalar field mismatch");
        let mut out = WeylElement::zero(self.n, self.field);
        for ((b, a), c) in &self.terms {
            out.add_term_in_place(a.clone(), b.clone(), c.mul(s));
        }
        out
    }

    /// The normal-form product.
    ///
    /// Per variable the reordering rule is
    /// `d^(b) x^a = sum_j C(a, j) x^(a-j) d^(b-j)` followed by
    /// `d^(b1) d^(b2) = C(b1+b2, b2) d^(b1+b2)`; variables with different
    /// indices commute, so the cross-term coefficient is the product over
    /// coordinates of `C(a2_i, j_i) * C(b1_i+b2_i-j_i, b2_i)`.
    pub fn multiply(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check_compat(other)?;
        let n = self.n;
        let mut out = WeylElement::zero(n, self.field);
        for ((b1, a1), c1) in &self.terms {
            for ((b2, a2), c2) in &other.terms {
                let limits: Vec<u32> = (0..n).map(|i| b1[i].min(a2[i])).collect();
                let base = c1.mul(c2);
                for_each_box(&limits, &mut |j| {
                    let mut coeff = base.clone();
                    for i in 0..n {
                        if coeff.is_zero() {
                            break;
                        }
                        coeff = coeff
                            .mul(&field_binomial(self.field, a2[i] as u64, j[i] as u64))
                            .mul(&field_binomial(
                                self.field,
                                (b1[i] + b2[i] - j[i]) as u64,
                                b2[i] as u64,
                            ));
                    }
                    if !coeff.is_zero() {
                        let a: Vec<u32> = (0..n).map(|i| a1[i] + a2[i] - j[i]).collect();
                        let b: Vec<u32> = (0..n).map(|i| b1[i] + b2[i] - j[i]).collect();
                        out.add_term_in_place(a, b, coeff);
                    }
                });
            }
        }
        Ok(out)
    }

    /// The commutator `self * other - other * self`.
    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }
}

/// Visit every multi-index j with 0 <= j[i] <= limits[i], in odometer order.
fn for_each_box(limits: &[u32], f: &mut impl FnMut(&[u32])) {
    let mut j = vec![0u32; limits.len()];
    loop {
        f(&j);
        let mut pos = 0;
        loop {
            if pos == limits.len() {
                return;
            }
            if j[pos] < limits[pos] {
                j[pos] += 1;
                break;
            }
            j[pos] = 0;
            pos += 1;
        }
    }
}
