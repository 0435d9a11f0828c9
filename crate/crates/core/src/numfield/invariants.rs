//! Polynomial invariants: discriminants, cyclotomic tests, quartic Galois types.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::claim::CertifiedClaim;
use crate::error::{Error, Result};
use crate::exactlin::poly::{cyclotomic, divisors, orders_with_totient_at_most};
use crate::exactlin::IntPolynomial;
use crate::numfield::NumberField;

/// Discriminant `(-1)^(n(n-1)/2) res(p, p') / lc(p)`.
pub fn discriminant(p: &IntPolynomial) -> BigInt {
    let Some(n) = p.degree() else {
        return BigInt::zero();
    };
    if n == 0 {
        return BigInt::from(1);
    }
    let res = p.resultant(&p.derivative());
    let d = res / p.leading();
    if (n * (n - 1) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// True when the monic `p` is a product of cyclotomic polynomials.
pub fn is_cyclotomic_product(p: &IntPolynomial) -> Result<bool> {
    p.require_monic()?;
    let d = p.degree().unwrap_or(0) as u64;
    let mut rest = p.clone();
    for m in orders_with_totient_at_most(d) {
        let phi = cyclotomic(m);
        while let Some(q) = rest.div_exact_monic(&phi)? {
            rest = q;
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    Ok(rest == IntPolynomial::one())
}

/// True when some root of the monic `p` is a root of unity.
pub fn has_cyclotomic_factor(p: &IntPolynomial) -> Result<bool> {
    p.require_monic()?;
    let d = p.degree().unwrap_or(0) as u64;
    for m in orders_with_totient_at_most(d) {
        if p.div_exact_monic(&cyclotomic(m))?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Irreducibility over the rationals for monic integer polynomials of degree
/// at most 4: no rational root, and for quartics no split into two monic
/// integer quadratics.
pub fn is_irreducible_small(p: &IntPolynomial) -> Result<bool> {
    p.require_monic()?;
    let n = p.degree().unwrap_or(0);
    if n > 4 {
        return Err(Error::Unsupported(format!(
            "irreducibility test for degree {n}"
        )));
    }
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    if !p.integer_roots().is_empty() {
        return Ok(false);
    }
    if n < 4 {
        return Ok(true);
    }
    Ok(quadratic_split(p).is_none())
}

/// Search for `(x^2 + a x + b)(x^2 + c x + d)` equal to the monic quartic `p`.
pub fn quadratic_split(p: &IntPolynomial) -> Option<(IntPolynomial, IntPolynomial)> {
    if p.degree() != Some(4) || !p.is_monic() {
        return None;
    }
    let (e, d1, c2, b3) = (p.coeff(0), p.coeff(1), p.coeff(2), p.coeff(3));
    if e.is_zero() {
        return None;
    }
    for b in divisors(&e) {
        for b in [b.clone(), -b] {
            let d = &e / &b;
            // a + c = b3, a c = c2 - b - d
            let s = b3.clone();
            let t = &c2 - &b - &d;
            let disc = &s * &s - BigInt::from(4) * &t;
            if !is_perfect_square(&disc) {
                continue;
            }
            let r = disc.sqrt();
            for r in [r.clone(), -r] {
                let twice_a = &s + &r;
                if (&twice_a % BigInt::from(2)) != BigInt::zero() {
                    continue;
                }
                let a: BigInt = twice_a / 2;
                let c = &s - &a;
                if &a * &d + &b * &c == d1 {
                    let f = IntPolynomial::new(vec![b.clone(), a.clone(), 1.into()]);
                    let g = IntPolynomial::new(vec![d.clone(), c, 1.into()]);
                    return Some((f, g));
                }
            }
        }
    }
    None
}

/// Galois group type of an irreducible quartic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QuarticGaloisType {
    S4,
    A4,
    /// Resolvent cubic has a rational root.
    D4OrC4OrV4,
}

/// Resolvent cubic `y^3 - c y^2 + (b d - 4 e) y - (b^2 e - 4 c e + d^2)` of
/// `x^4 + b x^3 + c x^2 + d x + e`. For `x^4 + a x + b` this is
/// `y^3 - 4 b y - a^2`.
pub fn resolvent_cubic(p: &IntPolynomial) -> Result<IntPolynomial> {
    p.require_monic()?;
    if p.degree() != Some(4) {
        return Err(Error::WrongDegree {
            expected: "4".into(),
            got: p.degree().unwrap_or(0),
        });
    }
    let (e, d, c, b) = (p.coeff(0), p.coeff(1), p.coeff(2), p.coeff(3));
    let four = BigInt::from(4);
    Ok(IntPolynomial::new(vec![
        -(&b * &b * &e - &four * &c * &e + &d * &d),
        &b * &d - &four * &e,
        -c,
        BigInt::from(1),
    ]))
}

pub fn quartic_galois_type(p: &IntPolynomial) -> Result<QuarticGaloisType> {
    if p.degree() != Some(4) {
        return Err(Error::WrongDegree {
            expected: "4".into(),
            got: p.degree().unwrap_or(0),
        });
    }
    if !is_irreducible_small(p)? {
        return Err(Error::Reducible(p.to_string()));
    }
    let r = resolvent_cubic(p)?;
    if !r.integer_roots().is_empty() {
        return Ok(QuarticGaloisType::D4OrC4OrV4);
    }
    if is_perfect_square(&discriminant(p)) {
        Ok(QuarticGaloisType::A4)
    } else {
        Ok(QuarticGaloisType::S4)
    }
}

/// Whether the field has no subfields strictly between Q and itself.
pub fn intermediate_field_free(field: &Arc<NumberField>) -> Result<CertifiedClaim> {
    let p = field.modulus();
    let n = field.degree();
    let statement = format!("no fields strictly between Q and Q[x]/({p})");
    match n {
        1..=3 => Ok(CertifiedClaim::computed(statement).with_data(json!({
            "degree": n,
            "reason": "degree is 1 or prime, so no proper intermediate degree exists",
        }))),
        4 => {
            let ty = quartic_galois_type(p)?;
            let resolvent = resolvent_cubic(p)?;
            let data = json!({
                "degree": 4,
                "galois_type": ty,
                "resolvent": resolvent.display_var("y"),
                "discriminant": discriminant(p).to_string(),
            });
            let claim = match ty {
                QuarticGaloisType::S4 => CertifiedClaim::computed(statement).with_data(json!({
                    "reason": "point stabiliser S3 is maximal in S4",
                    "detail": data,
                })),
                QuarticGaloisType::A4 => CertifiedClaim::computed(statement).with_data(json!({
                    "reason": "point stabiliser C3 is maximal in A4 (A4 has no subgroup of order 6)",
                    "detail": data,
                })),
                QuarticGaloisType::D4OrC4OrV4 => CertifiedClaim::refuted(statement).with_data(json!({
                    "reason": "Galois group is a 2-group, so a point stabiliser sits inside a subgroup of index 2",
                    "detail": data,
                })),
            };
            Ok(claim)
        }
        _ => Err(Error::Unsupported(format!(
            "intermediate field test in degree {n}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    // Closed-form discriminants used as an independent route.
    fn disc_quadratic(a: i64, b: i64, c: i64) -> i64 {
        b * b - 4 * a * c
    }

    fn disc_depressed_cubic(pp: i64, q: i64) -> i64 {
        -4 * pp * pp * pp - 27 * q * q
    }

    fn disc_depressed_quartic(a: i64, b: i64) -> i64 {
        // x^4 + a x + b
        -27 * a.pow(4) + 256 * b.pow(3)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[1, -5, 1])), BigInt::from(disc_quadratic(1, -5, 1)));
        assert_eq!(discriminant(&p(&[1, -5, 1])), BigInt::from(21));
        assert_eq!(discriminant(&p(&[1, -3, 0, 1])), BigInt::from(disc_depressed_cubic(-3, 1)));
        assert_eq!(discriminant(&p(&[1, -3, 0, 1])), BigInt::from(81));
        assert_eq!(discriminant(&p(&[1, 1, 0, 0, 1])), BigInt::from(disc_depressed_quartic(1, 1)));
        assert_eq!(discriminant(&p(&[1, 1, 0, 0, 1])), BigInt::from(229));
        assert_eq!(discriminant(&p(&[0, 0, 1])), BigInt::zero());
        assert_eq!(discriminant(&p(&[1, 1, 0, 1])), BigInt::from(-31));
    }

    #[test]
    fn cyclotomic_products() {
        assert!(is_cyclotomic_product(&p(&[1, 1, 1])).unwrap());
        assert!(!is_cyclotomic_product(&p(&[1, 1, 0, 0, 1])).unwrap());
        assert!(is_cyclotomic_product(&p(&[-1, 1])).unwrap());
        // (x - 1)^2 (x^2 + 1)
        let q = p(&[-1, 1]).pow(2).mul(&p(&[1, 0, 1]));
        assert!(is_cyclotomic_product(&q).unwrap());
        assert!(has_cyclotomic_factor(&p(&[1, 0, 1]).mul(&p(&[1, -5, 1]))).unwrap());
        assert!(!has_cyclotomic_factor(&p(&[1, -5, 1])).unwrap());
    }

    #[test]
    fn quartic_types() {
        assert_eq!(resolvent_cubic(&p(&[1, 1, 0, 0, 1])).unwrap(), p(&[-1, -4, 0, 1]));
        assert!(p(&[-1, -4, 0, 1]).rational_roots().is_empty());
        assert_eq!(quartic_galois_type(&p(&[1, 1, 0, 0, 1])).unwrap(), QuarticGaloisType::S4);
        let a4 = p(&[12, 8, 0, 0, 1]);
        assert!(is_perfect_square(&discriminant(&a4)));
        assert!(resolvent_cubic(&a4).unwrap().rational_roots().is_empty());
        assert_eq!(quartic_galois_type(&a4).unwrap(), QuarticGaloisType::A4);
        assert!(matches!(quartic_galois_type(&p(&[-1, 0, 0, 0, 1])), Err(Error::Reducible(_))));
        assert_eq!(quartic_galois_type(&p(&[1, 0, 0, 0, 1])).unwrap(), QuarticGaloisType::D4OrC4OrV4);
    }

    #[test]
    fn quadratic_split_found() {
        // (x^2 + x + 1)(x^2 - x + 2)
        let q = p(&[1, 1, 1]).mul(&p(&[2, -1, 1]));
        let (f, g) = quadratic_split(&q).unwrap();
        assert_eq!(f.mul(&g), q);
        assert!(!is_irreducible_small(&q).unwrap());
        assert!(is_irreducible_small(&p(&[1, 1, 0, 0, 1])).unwrap());
    }

    #[test]
    fn intermediate_fields() {
        let k = NumberField::new(p(&[1, 1, 0, 1])).unwrap();
        assert!(intermediate_field_free(&k).unwrap().status.is_computed());
        let k = NumberField::new(p(&[1, 1, 0, 0, 1])).unwrap();
        assert!(intermediate_field_free(&k).unwrap().status.is_computed());
        let k = NumberField::new(p(&[1, 0, 0, 0, 1])).unwrap();
        assert!(intermediate_field_free(&k).unwrap().status.is_refuted());
    }
}
