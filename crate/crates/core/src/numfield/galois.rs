//! Galois actions, integral bases and the unit-Galois matrix representation.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, IntVector};
use crate::numfield::{NumberField, NumberFieldElement};

/// A field automorphism, given by the image of the generator `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisAction {
    image_of_x: NumberFieldElement,
    order: usize,
}

impl GaloisAction {
    /// Validates that the image is a root of the field polynomial and that
    /// iterating the map returns to `x` within `degree` steps.
    pub fn new(image_of_x: NumberFieldElement) -> Result<Self> {
        let field = Arc::clone(image_of_x.field());
        if !image_of_x.eval_poly(field.modulus()).is_zero() {
            return Err(Error::InvalidGaloisAction(format!(
                "p({image_of_x}) is not zero modulo p"
            )));
        }
        let x = NumberFieldElement::generator(&field);
        let mut action = GaloisAction {
            image_of_x,
            order: 0,
        };
        let mut cur = x.clone();
        for k in 1..=field.degree() {
            cur = action.apply(&cur);
            if cur == x {
                action.order = k;
                return Ok(action);
            }
        }
        Err(Error::InvalidGaloisAction(
            "iterates never return to x".into(),
        ))
    }

    pub fn identity(field: &Arc<NumberField>) -> Self {
        GaloisAction {
            image_of_x: NumberFieldElement::generator(field),
            order: 1,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.image_of_x.field()
    }

    pub fn image_of_x(&self) -> &NumberFieldElement {
        &self.image_of_x
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn apply(&self, a: &NumberFieldElement) -> NumberFieldElement {
        self.image_of_x.eval_poly(&a.to_poly())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::new(self.apply(&other.image_of_x))
    }

    /// `[id, σ, σ^2, ..., σ^(order-1)]`.
    pub fn powers(&self) -> Vec<GaloisAction> {
        let mut out = vec![Self::identity(self.field())];
        let mut cur = self.clone();
        while !cur.is_identity() {
            out.push(cur.clone());
            cur = self.compose(&cur).expect("closure of a valid action");
        }
        out
    }
}

/// Closure of a set of automorphisms under composition.
pub fn galois_closure(field: &Arc<NumberField>, gens: &[GaloisAction]) -> Result<Vec<GaloisAction>> {
    let mut group = vec![GaloisAction::identity(field)];
    let mut frontier = group.clone();
    while let Some(a) = frontier.pop() {
        for g in gens {
            let b = g.compose(&a)?;
            if !group.contains(&b) {
                group.push(b.clone());
                frontier.push(b);
            }
        }
    }
    Ok(group)
}

/// A Z-basis of `Z[x]/(p)` given by elements `ω_1..ω_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZBasis {
    elements: Vec<NumberFieldElement>,
    /// Row `i` holds the power coordinates of `ω_i`.
    to_power: IntMatrix,
    from_power: IntMatrix,
}

impl ZBasis {
    pub fn new(field: &Arc<NumberField>, elements: Vec<NumberFieldElement>) -> Result<Self> {
        let n = field.degree();
        if elements.len() != n {
            return Err(Error::InvalidBasis(format!(
                "{} elements for a degree {n} field",
                elements.len()
            )));
        }
        if elements.iter().any(|e| **e.field() != **field) {
            return Err(Error::FieldMismatch);
        }
        let rows: Vec<Vec<BigInt>> = elements.iter().map(|e| e.coords().to_vec()).collect();
        let to_power = IntMatrix::from_big_rows(rows)?;
        if !to_power.det()?.abs().is_one() {
            return Err(Error::InvalidBasis(
                "transition matrix to the power basis is not unimodular".into(),
            ));
        }
        let from_power = to_power.inverse_unimodular()?;
        Ok(ZBasis {
            elements,
            to_power,
            from_power,
        })
    }

    pub fn power_basis(field: &Arc<NumberField>) -> Self {
        let x = NumberFieldElement::generator(field);
        let elements = (0..field.degree()).map(|i| x.pow(i as u64)).collect();
        Self::new(field, elements).expect("power basis is unimodular")
    }

    pub fn elements(&self) -> &[NumberFieldElement] {
        &self.elements
    }

    pub fn to_power(&self) -> &IntMatrix {
        &self.to_power
    }

    pub fn from_power(&self) -> &IntMatrix {
        &self.from_power
    }

    /// Coordinates of `a` in this basis.
    pub fn coords(&self, a: &NumberFieldElement) -> Vec<BigInt> {
        let row = IntVector(a.coords().to_vec());
        self.from_power
            .transpose()
            .mul_vec(&row)
            .expect("dimensions agree")
            .0
    }
}

/// Matrix of `ω_i ↦ u σ(ω_i)` in the basis, row convention: row `i` holds the
/// basis coordinates of `u σ(ω_i)`.
///
/// With this convention `M(u,σ) M(v,τ) = M(v τ(u), τσ)`.
pub fn unit_galois_matrix(
    u: &NumberFieldElement,
    sigma: &GaloisAction,
    basis: &ZBasis,
) -> Result<IntMatrix> {
    if **u.field() != **sigma.field() {
        return Err(Error::FieldMismatch);
    }
    if !u.is_unit() {
        return Err(Error::NotAUnit(u.norm().to_string()));
    }
    let rows: Vec<Vec<BigInt>> = basis
        .elements()
        .iter()
        .map(|w| basis.coords(&u.mul_unchecked(&sigma.apply(w))))
        .collect();
    IntMatrix::from_big_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::IntPolynomial;

    fn cubic() -> (Arc<NumberField>, ZBasis, GaloisAction) {
        let k = NumberField::new(IntPolynomial::from_i64(&[1, -3, 0, 1])).unwrap();
        let basis = ZBasis::new(
            &k,
            vec![
                NumberFieldElement::from_i64(&k, &[0, 1]),
                NumberFieldElement::from_i64(&k, &[-1, 1, 1]),
                NumberFieldElement::from_i64(&k, &[1]),
            ],
        )
        .unwrap();
        let sigma = GaloisAction::new(NumberFieldElement::from_i64(&k, &[-2, 0, 1])).unwrap();
        (k, basis, sigma)
    }

    #[test]
    fn galois_action_checks() {
        let (k, _, sigma) = cubic();
        assert_eq!(sigma.order(), 3);
        assert_eq!(sigma.powers().len(), 3);
        // x + 1 is not a root of p
        assert!(GaloisAction::new(NumberFieldElement::from_i64(&k, &[1, 1])).is_err());
        assert_eq!(galois_closure(&k, &[sigma]).unwrap().len(), 3);
    }

    #[test]
    fn matrices_of_the_cubic_units() {
        let (k, basis, sigma) = cubic();
        let id = GaloisAction::identity(&k);
        let x = NumberFieldElement::generator(&k);
        let pix = unit_galois_matrix(&x, &id, &basis).unwrap();
        assert_eq!(
            pix,
            IntMatrix::from_rows(&[vec![-1, 1, 1], vec![1, 1, 0], vec![1, 0, 0]])
        );
        let xm1 = NumberFieldElement::from_i64(&k, &[-1, 1]);
        assert_eq!(
            unit_galois_matrix(&xm1, &id, &basis).unwrap(),
            IntMatrix::from_rows(&[vec![-2, 1, 1], vec![1, 0, 0], vec![1, 0, -1]])
        );
        let one = NumberFieldElement::one(&k);
        assert_eq!(
            unit_galois_matrix(&one, &id, &basis).unwrap(),
            IntMatrix::identity(3)
        );
        let g = unit_galois_matrix(&one, &sigma, &basis).unwrap();
        assert_eq!(
            g,
            IntMatrix::from_rows(&[vec![-1, 1, -1], vec![-1, 0, 1], vec![0, 0, 1]])
        );
        assert!(g.pow(3).unwrap().is_identity());
    }

    #[test]
    fn non_unit_rejected() {
        let (k, basis, _) = cubic();
        let two = NumberFieldElement::integer(&k, BigInt::from(2));
        assert!(matches!(
            unit_galois_matrix(&two, &GaloisAction::identity(&k), &basis),
            Err(Error::NotAUnit(_))
        ));
    }

    #[test]
    fn multiplicativity_row_convention() {
        let (k, basis, sigma) = cubic();
        let x = NumberFieldElement::generator(&k);
        let v = NumberFieldElement::from_i64(&k, &[-1, 1]);
        let lhs = unit_galois_matrix(&x, &sigma, &basis)
            .unwrap()
            .try_mul(&unit_galois_matrix(&v, &sigma, &basis).unwrap())
            .unwrap();
        let vtu = v.mul(&sigma.apply(&x)).unwrap();
        let ts = sigma.compose(&sigma).unwrap();
        assert_eq!(lhs, unit_galois_matrix(&vtu, &ts, &basis).unwrap());
    }
}
