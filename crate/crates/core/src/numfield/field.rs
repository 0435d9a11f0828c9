//! Monogenic number fields `Z[x]/(p)` and their elements.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{solve_rational, IntMatrix, IntPolynomial};
use crate::numfield::invariants::is_irreducible_small;

/// The order `Z[x]/(p)` for a monic irreducible `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: IntPolynomial,
    degree: usize,
}

impl NumberField {
    /// Checks monicity and, for degree at most 4, irreducibility.
    pub fn new(p: IntPolynomial) -> Result<Arc<Self>> {
        p.require_monic()?;
        let degree = p.degree().unwrap_or(0);
        if degree == 0 {
            return Err(Error::WrongDegree {
                expected: ">= 1".into(),
                got: 0,
            });
        }
        if degree > 4 {
            return Err(Error::Unsupported(format!(
                "irreducibility test for degree {degree}"
            )));
        }
        if !is_irreducible_small(&p)? {
            return Err(Error::Reducible(p.to_string()));
        }
        Ok(Arc::new(NumberField { modulus: p, degree }))
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[x]/({})", self.modulus)
    }
}

/// Residue class of an integer polynomial modulo the field polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberFieldElement {
    field: Arc<NumberField>,
    /// Power-basis coordinates, length equal to the degree.
    coords: Vec<BigInt>,
}

impl NumberFieldElement {
    pub fn from_poly(field: &Arc<NumberField>, p: &IntPolynomial) -> Self {
        let r = p
            .rem_monic(&field.modulus)
            .expect("field modulus is monic");
        let coords = (0..field.degree).map(|i| r.coeff(i)).collect();
        NumberFieldElement {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn from_i64(field: &Arc<NumberField>, coeffs: &[i64]) -> Self {
        Self::from_poly(field, &IntPolynomial::from_i64(coeffs))
    }

    pub fn from_coords(field: &Arc<NumberField>, coords: &[BigInt]) -> Result<Self> {
        if coords.len() != field.degree {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates in a degree {} field",
                coords.len(),
                field.degree
            )));
        }
        Ok(NumberFieldElement {
            field: Arc::clone(field),
            coords: coords.to_vec(),
        })
    }

    pub fn integer(field: &Arc<NumberField>, c: BigInt) -> Self {
        Self::from_poly(field, &IntPolynomial::constant(c))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::integer(field, BigInt::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::integer(field, BigInt::one())
    }

    /// The class of `x`, a root of the field polynomial.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, &IntPolynomial::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn to_poly(&self) -> IntPolynomial {
        IntPolynomial::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field == other.field || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        NumberFieldElement {
            field: Arc::clone(&self.field),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        NumberFieldElement {
            field: Arc::clone(&self.field),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        Self::from_poly(&self.field, &self.to_poly().mul(&other.to_poly()))
    }

    pub fn neg(&self) -> Self {
        NumberFieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        NumberFieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Non-negative power.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.unit_inverse()?.pow(e.unsigned_abs()))
        }
    }

    /// Matrix of multiplication by `self` in the power basis, row convention:
    /// row `i` holds the coordinates of `self * x^i`.
    pub fn regular_matrix(&self) -> IntMatrix {
        let n = self.field.degree;
        let x = Self::generator(&self.field);
        let mut cur = self.clone();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            for (j, c) in cur.coords.iter().enumerate() {
                m.set(i, j, c.clone());
            }
            if i + 1 < n {
                cur = cur.mul_unchecked(&x);
            }
        }
        m
    }

    pub fn norm(&self) -> BigInt {
        self.regular_matrix().det().expect("square")
    }

    pub fn trace(&self) -> BigInt {
        self.regular_matrix().trace().expect("square")
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Result<Self> {
        let inv = self
            .regular_matrix()
            .inverse_unimodular()
            .map_err(|_| Error::NotAUnit(self.norm().to_string()))?;
        Self::from_coords(&self.field, inv.row(0))
    }

    /// Rational coordinates of `self / other`, `None` when `other` is zero.
    pub fn quotient_rational(&self, other: &Self) -> Result<Option<Vec<BigRational>>> {
        self.check_same(other)?;
        // coords(q) * R(other) = coords(self), i.e. R(other)^t q^t = self^t
        let rt = other.regular_matrix().transpose();
        let rhs: Vec<BigRational> = self
            .coords
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        solve_rational(&rt, &rhs)
    }

    /// Evaluate an integer polynomial at this element.
    pub fn eval_poly(&self, p: &IntPolynomial) -> Self {
        let mut acc = Self::zero(&self.field);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul_unchecked(self);
            acc.coords[0] += c;
        }
        acc
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::new(IntPolynomial::from_i64(c)).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let k = field(&[1, -3, 0, 1]);
        let x = NumberFieldElement::generator(&k);
        let x2 = x.pow(2);
        assert_eq!(x.mul(&x2).unwrap(), NumberFieldElement::from_i64(&k, &[-1, 3]));
        let a = NumberFieldElement::from_i64(&k, &[2, -1, 5]);
        assert_eq!(a.mul(&NumberFieldElement::one(&k)).unwrap(), a);

        let golden = field(&[-1, -1, 1]);
        let y = NumberFieldElement::generator(&golden);
        let ym1 = NumberFieldElement::from_i64(&golden, &[-1, 1]);
        assert!(y.mul(&ym1).unwrap().is_one());
    }

    #[test]
    fn field_mismatch_rejected() {
        let a = NumberFieldElement::generator(&field(&[-1, -1, 1]));
        let b = NumberFieldElement::generator(&field(&[1, -3, 0, 1]));
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn reducible_rejected() {
        assert!(matches!(
            NumberField::new(IntPolynomial::from_i64(&[-1, 0, 0, 0, 1])),
            Err(Error::Reducible(_))
        ));
        assert!(NumberField::new(IntPolynomial::from_i64(&[1, 2])).is_err());
    }

    #[test]
    fn units_and_inverse() {
        let k = field(&[1, -3, 0, 1]);
        let x = NumberFieldElement::generator(&k);
        assert!(x.is_unit());
        let xi = x.unit_inverse().unwrap();
        assert!(x.mul(&xi).unwrap().is_one());
        let two = NumberFieldElement::integer(&k, BigInt::from(2));
        assert!(!two.is_unit());
        assert!(two.unit_inverse().is_err());
        let q = NumberFieldElement::one(&k).quotient_rational(&two).unwrap().unwrap();
        assert_eq!(q[0], BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn regular_matrix_row_convention() {
        let k = field(&[1, -3, 0, 1]);
        let x = NumberFieldElement::generator(&k);
        // x * x^2 = 3x - 1
        assert_eq!(
            x.regular_matrix(),
            IntMatrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![-1, 3, 0]])
        );
        assert_eq!(x.regular_matrix().char_poly().unwrap(), *k.modulus());
    }
}
