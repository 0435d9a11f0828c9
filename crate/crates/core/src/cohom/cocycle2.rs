//! Scalar 2-cocycles `Ω(x, y) = exp(i π r x^t F y)` on `Z^{2n} ⋊ Γ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::claim::CertifiedClaim;
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, IntVector};
use crate::groups::element::GroupElement;

/// Angles are rational multiples of `π`; `angle = r` means `r π`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpCocycle {
    pub form: IntMatrix,
    #[serde(with = "crate::intrepr::rational")]
    pub angle: BigRational,
}

impl ExpCocycle {
    pub fn new(form: IntMatrix, angle: BigRational) -> Result<Self> {
        form.require_square()?;
        if !form.rows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!("form of odd size {}", form.rows())));
        }
        Ok(ExpCocycle { form, angle })
    }

    pub fn dim(&self) -> usize {
        self.form.rows()
    }

    /// Integer exponent `x^t F y`.
    pub fn exponent(&self, x: &IntVector, y: &IntVector) -> Result<BigInt> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::DimensionMismatch("vector size differs from the form".into()));
        }
        Ok(x.dot(&self.form.mul_vec(y)?))
    }

    /// `r k mod 2`, i.e. the value `exp(i π r k)` as a point of `Q/2Z`.
    pub fn phase(&self, k: &BigInt) -> BigRational {
        reduce_mod_two(&(&self.angle * BigRational::from_integer(k.clone())))
    }

    /// Exponent of `Ω((x, g), (y, h)) = Ω(x, g y)`.
    pub fn semidirect_exponent(&self, a: &GroupElement, b: &GroupElement) -> Result<BigInt> {
        let x = translation_of(a, self.dim());
        let y = translation_of(b, self.dim());
        self.exponent(&x, &a.linear().mul_vec(&y)?)
    }
}

fn translation_of(g: &GroupElement, n: usize) -> IntVector {
    g.translation().cloned().unwrap_or_else(|| IntVector::zeros(n))
}

pub fn reduce_mod_two(q: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let k = (q / &two).floor();
    q - k * two
}

/// `(Ω(a,b) Ω(ab,c)) / (Ω(a,bc) Ω(b,c))` as an exponent.
fn defect(c: &ExpCocycle, a: &GroupElement, b: &GroupElement, d: &GroupElement) -> Result<BigInt> {
    let ab = a.compose(b)?;
    let bd = b.compose(d)?;
    Ok(c.semidirect_exponent(a, b)? + c.semidirect_exponent(&ab, d)?
        - c.semidirect_exponent(a, &bd)?
        - c.semidirect_exponent(b, d)?)
}

fn random_element(rng: &mut ChaCha8Rng, gens: &[IntMatrix], inverses: &[IntMatrix], n: usize) -> Result<GroupElement> {
    let x = IntVector((0..n).map(|_| BigInt::from(rng.random_range(-3i64..=3))).collect());
    let mut g = IntMatrix::identity(n);
    for _ in 0..rng.random_range(0..=4usize) {
        let i = rng.random_range(0..gens.len());
        let m = if rng.random_bool(0.5) { &gens[i] } else { &inverses[i] };
        g = g.try_mul(m)?;
    }
    GroupElement::semidirect(x, g)
}

/// Checks the 2-cocycle identity on random triples and `g^t F g = F` on generators.
///
/// The second check makes the identity hold on the whole group, so it alone
/// decides between COMPUTED and EVIDENCE.
pub fn two_cocycle_check(
    c: &ExpCocycle,
    generators: &[IntMatrix],
    samples: usize,
    seed: u64,
) -> Result<CertifiedClaim> {
    let n = c.dim();
    if generators.iter().any(|g| g.rows() != n || !g.is_square()) {
        return Err(Error::DimensionMismatch("generator size differs from the form".into()));
    }
    if generators.is_empty() {
        return Err(Error::InvalidInput("no linear generators".into()));
    }
    let inverses = generators.iter().map(|g| g.inverse_unimodular()).collect::<Result<Vec<_>>>()?;
    let mut non_invariant = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if g.transpose().try_mul(&c.form)?.try_mul(g)? != c.form {
            non_invariant.push(i);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failure = None;
    for _ in 0..samples {
        let t: Vec<GroupElement> = (0..3)
            .map(|_| random_element(&mut rng, generators, &inverses, n))
            .collect::<Result<_>>()?;
        let k = defect(c, &t[0], &t[1], &t[2])?;
        if failure.is_none() && !c.phase(&k).is_zero() {
            failure = Some(json!({ "triple": t, "defect_exponent": k.to_string() }));
        }
    }
    let angle = json!(c.angle.to_string());
    let identity = match &failure {
        Some(f) => CertifiedClaim::refuted("the 2-cocycle identity holds on sampled triples")
            .with_data(json!({ "samples": samples, "seed": seed, "failure": f })),
        None => CertifiedClaim::evidence(
            "the 2-cocycle identity holds on sampled triples",
            [("samples", json!(samples)), ("seed", json!(seed))],
        ),
    };
    let invariance = CertifiedClaim::decided("g^t F g = F for every linear generator", non_invariant.is_empty())
        .with_data(json!({ "non_invariant_generators": non_invariant }));
    let statement = format!("exp(i pi ({}) x^t F g y) is a 2-cocycle", c.angle);
    let claim = if non_invariant.is_empty() {
        CertifiedClaim::computed(statement)
    } else {
        CertifiedClaim::evidence(statement, [("samples", json!(samples)), ("seed", json!(seed))])
    };
    Ok(claim
        .with_children(vec![invariance, identity])
        .with_data(json!({ "angle": angle, "flagged_failure": failure })))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CohomologyClass {
    TrivialClass,
    Nontrivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConjugateComparison {
    SameClass,
    Different,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class: CohomologyClass,
    pub conjugate: ConjugateComparison,
    /// Content of `F - F^t`.
    pub content: String,
}

/// Class of `Ω` from the antisymmetrization `exp(i π r x^t (F - F^t) y)`.
///
/// With `c` the content of `F - F^t`, the class is trivial iff `r c ∈ 2Z`, and
/// `Ω` and its conjugate agree iff `Ω^2` is trivial, i.e. `r c ∈ Z`.
pub fn coboundary_class(c: &ExpCocycle) -> ClassReport {
    let anti = c.form.try_sub(&c.form.transpose()).expect("square form");
    let content = anti.entries().iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
    let rc = &c.angle * BigRational::from_integer(content.clone());
    let class = if rc.is_integer() && rc.to_integer().is_even() {
        CohomologyClass::TrivialClass
    } else {
        CohomologyClass::Nontrivial
    };
    let conjugate = if rc.is_integer() {
        ConjugateComparison::SameClass
    } else {
        ConjugateComparison::Different
    };
    ClassReport {
        class,
        conjugate,
        content: content.abs().to_string(),
    }
}

/// Parses `p/q` or `p` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("expected p/q, got {text:?}"));
    let (p, q) = match text.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

impl std::fmt::Display for ClassReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} / {:?}", self.class, self.conjugate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ambient::{symplectic_form, AmbientGroupSpec, Family};
    use num_traits::One;

    fn sp_generators(n: usize) -> Vec<IntMatrix> {
        AmbientGroupSpec::standard(Family::Sp, n)
            .unwrap()
            .generators
            .iter()
            .map(|g| g.linear().clone())
            .collect()
    }

    fn angle(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn symplectic_form_is_invariant() {
        let c = ExpCocycle::new(symplectic_form(3), angle(1, 3)).unwrap();
        let claim = two_cocycle_check(&c, &sp_generators(3), 50, 7).unwrap();
        assert!(claim.status.is_computed(), "{}", claim.render_text());
        let zero = IntVector::zeros(6);
        let y = IntVector::from_i64(&[1, 2, 3, 4, 5, 6]);
        assert!(c.exponent(&zero, &y).unwrap().is_zero());
    }

    #[test]
    fn non_invariant_form_is_only_evidence() {
        let mut f = IntMatrix::zeros(4, 4);
        f.set(0, 0, BigInt::one());
        let c = ExpCocycle::new(f, angle(1, 3)).unwrap();
        let claim = two_cocycle_check(&c, &sp_generators(2), 200, 1).unwrap();
        assert!(!claim.status.is_computed());
        assert!(!claim.data["flagged_failure"].is_null());
    }

    #[test]
    fn classes_of_the_symplectic_family() {
        let j = symplectic_form(3);
        let class = |p, q| coboundary_class(&ExpCocycle::new(j.clone(), angle(p, q)).unwrap());
        assert_eq!(class(1, 1).class, CohomologyClass::TrivialClass);
        let third = class(1, 3);
        assert_eq!(third.class, CohomologyClass::Nontrivial);
        assert_eq!(third.conjugate, ConjugateComparison::Different);
        let half = class(1, 2);
        assert_eq!(half.class, CohomologyClass::Nontrivial);
        assert_eq!(half.conjugate, ConjugateComparison::SameClass);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("2/6").unwrap(), angle(1, 3));
        assert_eq!(parse_rational("-3").unwrap(), angle(-3, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("pi").is_err());
    }
}
