//! Univariate polynomials over a [`GaloisField`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldRef};

/// A polynomial with coefficients constant-term first and no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Clone)]
pub struct Poly {
    field: FieldRef,
    coeffs: Vec<Elem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs.iter().map(|c| c.index()).collect::<Vec<_>>())
    }
}

impl Poly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&Elem::ZERO) {
            coeffs.pop();
        }
        Poly {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn zero(field: &FieldRef) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &FieldRef) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &FieldRef, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The monomial `c x^deg`.
    pub fn monomial(field: &FieldRef, c: Elem, deg: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::new(field, coeffs)
    }

    /// `x - a`.
    pub fn linear(field: &FieldRef, a: Elem) -> Poly {
        Poly::new(field, vec![field.neg(a), Elem::ONE])
    }

    /// The monic polynomial `prod (x - r)` over the given multiset of roots.
    pub fn from_roots(field: &FieldRef, roots: &[Elem]) -> Poly {
        let mut coeffs = vec![Elem::ONE];
        for &r in roots {
            let neg_r = field.neg(r);
            coeffs.push(Elem::ZERO);
            for i in (0..coeffs.len()).rev() {
                let shifted = if i > 0 { coeffs[i - 1] } else { Elem::ZERO };
                coeffs[i] = field.add(shifted, field.mul(neg_r, coeffs[i]));
            }
        }
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0; handy in dimension
    /// formulas where only nonzero polynomials occur.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval_many(&self, xs: &[Elem]) -> Vec<Elem> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }

    /// Formal derivative; the factor `i` is reduced mod p.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(f));
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg d`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let f = &self.field;
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[top - d] = c;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                rem[top - d + i] = f.sub(rem[top - d + i], f.mul(c, dc));
            }
        }
        rem.truncate(d);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        self.check_field(inner)?;
        let f = &self.field;
        let mut acc = Poly::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?.add(&Poly::constant(f, c))?;
        }
        Ok(acc)
    }

    /// Synthetic division by `x - a`: quotient and the value `self(a)`.
    pub fn divide_linear(&self, a: Elem) -> (Poly, Elem) {
        let f = &self.field;
        if self.is_zero() {
            return (self.clone(), Elem::ZERO);
        }
        let n = self.coeffs.len();
        let mut quot = vec![Elem::ZERO; n - 1];
        let mut carry = Elem::ZERO;
        for i in (0..n).rev() {
            let v = f.add(self.coeffs[i], f.mul(carry, a));
            if i == 0 {
                return (Poly::new(f, quot), v);
            }
            quot[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// Multiplicity of `a` as a root, by repeated synthetic division.
    pub fn multiplicity(&self, a: Elem) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut count = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divide_linear(a);
            if !r.is_zero() {
                return count;
            }
            count += 1;
            cur = q;
        }
    }

    /// Roots in the field with multiplicities, by scanning every element.
    pub fn roots(&self) -> Result<Vec<(Elem, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .field
            .elements()
            .filter(|&x| self.eval(x).is_zero())
            .map(|x| (x, self.multiplicity(x)))
            .collect())
    }

    /// Distinct roots in the field.
    pub fn root_set(&self) -> Result<Vec<Elem>> {
        Ok(self.roots()?.into_iter().map(|(x, _)| x).collect())
    }

    /// True iff every point is a simple root: `f(a) = 0` and `f'(a) != 0`.
    pub fn is_squarefree_on(&self, points: &[Elem]) -> bool {
        let d = self.derivative();
        points
            .iter()
            .all(|&a| self.eval(a).is_zero() && !d.eval(a).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::GaloisField;

    fn p(field: &FieldRef, c: &[u32]) -> Poly {
        Poly::new(field, c.iter().map(|&i| Elem::from_index(i)).collect())
    }

    #[test]
    fn empty_product_is_one() {
        let f = GaloisField::prime(19).unwrap();
        assert_eq!(Poly::from_roots(&f, &[]), Poly::one(&f));
    }

    #[test]
    fn ninth_roots_of_unity_expand_to_x9_minus_1() {
        let f = GaloisField::prime(19).unwrap();
        let roots: Vec<Elem> = f
            .elements()
            .filter(|&a| f.pow(a, 9).unwrap() == Elem::ONE)
            .collect();
        assert_eq!(roots.len(), 9);
        let h = Poly::from_roots(&f, &roots);
        let mut expected = vec![0u32; 10];
        expected[0] = 18;
        expected[9] = 1;
        assert_eq!(h, p(&f, &expected));
    }

    #[test]
    fn subfield_of_gf81_expands_to_x9_minus_x() {
        let f = GaloisField::new(3, 4, None).unwrap();
        let sub = f.subfield_elements(2).unwrap();
        let h = Poly::from_roots(&f, &sub);
        let mut expected = vec![0u32; 10];
        expected[1] = 2;
        expected[9] = 1;
        assert_eq!(h, p(&f, &expected));
        assert!(sub.iter().all(|&a| h.eval(a).is_zero()));
    }

    #[test]
    fn eval_small() {
        let f = GaloisField::prime(3).unwrap();
        assert_eq!(p(&f, &[1, 0, 1]).eval(Elem::ONE), Elem::from_index(2));
    }

    #[test]
    fn derivative_examples() {
        let f = GaloisField::prime(19).unwrap();
        // x^19 - x over GF(19): derivative is -1
        let mut c = vec![0u32; 20];
        c[1] = 18;
        c[19] = 1;
        assert_eq!(p(&f, &c).derivative(), Poly::constant(&f, f.neg(Elem::ONE)));
        // x^9 - 1 -> 9x^8
        let mut c = vec![0u32; 10];
        c[0] = 18;
        c[9] = 1;
        assert_eq!(p(&f, &c).derivative(), Poly::monomial(&f, f.from_int(9), 8));
    }

    #[test]
    fn gcd_and_remainder() {
        let f = GaloisField::prime(19).unwrap();
        let a = p(&f, &[18, 0, 1]);
        let b = p(&f, &[18, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        let g3 = GaloisField::prime(3).unwrap();
        let x9 = p(&g3, &[0, 2, 0, 0, 0, 0, 0, 0, 0, 1]);
        let x3 = p(&g3, &[0, 2, 0, 1]);
        assert!(x9.rem(&x3).unwrap().is_zero());
        assert_eq!(a.divmod(&Poly::zero(&f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn composition_degree() {
        // b(a(x)) with a = x^3 - x over GF(27), b with t+1 = 2 roots
        let f = GaloisField::new(3, 3, None).unwrap();
        let a = p(&f, &[0, 2, 0, 1]);
        let b = Poly::from_roots(&f, &[Elem::ZERO, Elem::from_index(3)]);
        let h = b.compose(&a).unwrap();
        assert_eq!(h.degree(), Some(6));
    }

    #[test]
    fn roots_with_multiplicity() {
        let f = GaloisField::prime(19).unwrap();
        let r = p(&f, &[18, 0, 1]).roots().unwrap();
        assert_eq!(r, vec![(Elem::ONE, 1), (Elem::from_index(18), 1)]);
        let sq = Poly::from_roots(&f, &[Elem::from_index(3), Elem::from_index(3), Elem::ONE]);
        assert_eq!(sq.multiplicity(Elem::from_index(3)), 2);
        assert_eq!(Poly::zero(&f).roots(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn squarefree_on_points() {
        let f = GaloisField::prime(7).unwrap();
        let x2 = Poly::monomial(&f, Elem::ONE, 2);
        assert!(!x2.is_squarefree_on(&[Elem::ZERO]));
        let h = Poly::from_roots(&f, &[Elem::ONE, Elem::from_index(2)]);
        assert!(h.is_squarefree_on(&[Elem::ONE, Elem::from_index(2)]));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = GaloisField::prime(5).unwrap();
        let b = GaloisField::prime(7).unwrap();
        assert_eq!(Poly::one(&a).add(&Poly::one(&b)), Err(Error::FieldMismatch));
    }
}
