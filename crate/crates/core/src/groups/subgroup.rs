//! Subgroup descriptors and exact membership decisions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, IntPolynomial};
use crate::groups::ambient::{doubling, symplectic_form};
use crate::groups::element::GroupElement;
use crate::intrepr;
use crate::numfield::{
    discriminant, galois_closure, is_cyclotomic_product, unit_galois_matrix, GaloisAction,
    NumberField, NumberFieldElement, ZBasis,
};

/// The image of `O_K^* ⋊ Gal` in `GL(n,Z)` acting on a Z-basis of a monogenic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "UnitEmbeddingData", into = "UnitEmbeddingData")]
pub struct UnitEmbedding {
    field_id: String,
    field: Arc<NumberField>,
    basis: ZBasis,
    units: Vec<NumberFieldElement>,
    galois_generators: Vec<GaloisAction>,
    galois_group: Vec<GaloisAction>,
    galois_matrices: Vec<IntMatrix>,
    galois_inverses: Vec<IntMatrix>,
}

/// Serialized form: field polynomial, basis, units and Galois images as coordinate arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitEmbeddingData {
    pub field_id: String,
    #[serde(with = "intrepr::vec")]
    pub modulus: Vec<BigInt>,
    pub basis: Vec<Coords>,
    pub units: Vec<Coords>,
    pub galois: Vec<Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coords(#[serde(with = "intrepr::vec")] pub Vec<BigInt>);

impl TryFrom<UnitEmbeddingData> for UnitEmbedding {
    type Error = Error;

    fn try_from(d: UnitEmbeddingData) -> Result<Self> {
        let field = NumberField::new(IntPolynomial::new(d.modulus))?;
        let elem = |c: &Coords| NumberFieldElement::from_coords(&field, &c.0);
        let basis = ZBasis::new(&field, d.basis.iter().map(elem).collect::<Result<_>>()?)?;
        let units = d.units.iter().map(elem).collect::<Result<Vec<_>>>()?;
        let galois = d
            .galois
            .iter()
            .map(|c| elem(c).and_then(GaloisAction::new))
            .collect::<Result<Vec<_>>>()?;
        UnitEmbedding::new(d.field_id, &field, basis, units, galois)
    }
}

impl From<UnitEmbedding> for UnitEmbeddingData {
    fn from(u: UnitEmbedding) -> Self {
        let c = |e: &NumberFieldElement| Coords(e.coords().to_vec());
        UnitEmbeddingData {
            field_id: u.field_id.clone(),
            modulus: u.field.modulus().coeffs().to_vec(),
            basis: u.basis.elements().iter().map(c).collect(),
            units: u.units.iter().map(c).collect(),
            galois: u.galois_generators.iter().map(|g| c(g.image_of_x())).collect(),
        }
    }
}

impl UnitEmbedding {
    pub fn new(
        field_id: impl Into<String>,
        field: &Arc<NumberField>,
        basis: ZBasis,
        units: Vec<NumberFieldElement>,
        galois_generators: Vec<GaloisAction>,
    ) -> Result<Self> {
        for u in &units {
            if !u.is_unit() {
                return Err(Error::NotAUnit(u.norm().to_string()));
            }
        }
        let galois_group = galois_closure(field, &galois_generators)?;
        let one = NumberFieldElement::one(field);
        let galois_matrices = galois_group
            .iter()
            .map(|s| unit_galois_matrix(&one, s, &basis))
            .collect::<Result<Vec<_>>>()?;
        let galois_inverses = galois_matrices
            .iter()
            .map(|m| m.inverse_unimodular())
            .collect::<Result<Vec<_>>>()?;
        Ok(UnitEmbedding {
            field_id: field_id.into(),
            field: field.clone(),
            basis,
            units,
            galois_generators,
            galois_group,
            galois_matrices,
            galois_inverses,
        })
    }

    pub fn field_id(&self) -> &str {
        &self.field_id
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn basis(&self) -> &ZBasis {
        &self.basis
    }

    pub fn units(&self) -> &[NumberFieldElement] {
        &self.units
    }

    pub fn galois_generators(&self) -> &[GaloisAction] {
        &self.galois_generators
    }

    pub fn galois_group(&self) -> &[GaloisAction] {
        &self.galois_group
    }

    pub fn dim(&self) -> usize {
        self.field.degree()
    }

    /// `π(1, σ)` for every `σ` of the Galois group, in group order.
    pub fn galois_matrices(&self) -> &[IntMatrix] {
        &self.galois_matrices
    }

    pub fn unit_matrix(&self, u: &NumberFieldElement) -> Result<IntMatrix> {
        unit_galois_matrix(u, &GaloisAction::identity(&self.field), &self.basis)
    }

    /// Unit matrices followed by the Galois generator matrices.
    pub fn generator_matrices(&self) -> Result<Vec<IntMatrix>> {
        let one = NumberFieldElement::one(&self.field);
        let mut out = self
            .units
            .iter()
            .map(|u| self.unit_matrix(u))
            .collect::<Result<Vec<_>>>()?;
        for s in &self.galois_generators {
            out.push(unit_galois_matrix(&one, s, &self.basis)?);
        }
        Ok(out)
    }

    /// Decides `g = π(w) π(1,τ)` for a unit `w` and a Galois element `τ`.
    pub fn decide(&self, g: &IntMatrix) -> Result<Option<(NumberFieldElement, usize)>> {
        let n = self.dim();
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch(format!("expected {n}x{n}, got {}x{}", g.rows(), g.cols())));
        }
        for (idx, tau_inv) in self.galois_inverses.iter().enumerate() {
            let r = g.try_mul(tau_inv)?;
            let p = self
                .basis
                .from_power()
                .try_mul(&r)?
                .try_mul(self.basis.to_power())?;
            let w = NumberFieldElement::from_coords(&self.field, p.row(0))?;
            if w.regular_matrix() == p && w.is_unit() {
                return Ok(Some((w, idx)));
            }
        }
        Ok(None)
    }
}

/// Which elements of the ambient group form the subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SubgroupSpec {
    /// `{±A^m : m ∈ Z}`.
    SignedCyclic { a: IntMatrix },
    UnitEmbedding { embedding: UnitEmbedding },
    /// The linear part `{(0, g)}` of an affine group.
    PointStabilizer,
    /// The translations `{(x, 1)}` of an affine group.
    Translations,
    /// `<t, diag(h, h^{-t}) : t ∈ transversal, h ∈ H>` inside `Sp(2n,Z)`, with `H`
    /// a unit embedding closed under inverse transpose.
    DoubledUnits {
        embedding: UnitEmbedding,
        transversal: Vec<IntMatrix>,
    },
}

/// Why an element belongs to a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Witness {
    /// `g = sign · A^exponent`.
    SignedPower { sign: i8, exponent: i64 },
    /// `g = π(unit) π(1, galois[galois_index])`.
    Unit { unit: Coords, galois_index: usize },
    Linear,
    Translation,
    /// `g = transversal[index] · diag(h, h^{-t})` with `h` given by the inner witness.
    Coset { index: usize, inner: Box<Witness> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Membership {
    Yes { witness: Witness },
    No,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Yes { .. })
    }
}

/// `k` and the trace lower bound `|tr A^k| > n` used for the exponent cap.
fn trace_growth(a: &IntMatrix) -> Result<(u64, BigInt)> {
    let n = BigInt::from(a.rows());
    let a12 = a.pow(12)?;
    let mut p = a12.clone();
    let mut k = 12u64;
    while k <= 1200 {
        let t = p.trace()?.abs();
        if t > n {
            return Ok((k, t));
        }
        p = p.try_mul(&a12)?;
        k += 12;
    }
    Err(Error::Precondition(
        "no power A^k with k <= 1200 has |trace| above the dimension".into(),
    ))
}

/// Largest `q` with `t^q <= n m n^q`; then every `A^e` with max entry `m` has `|e| < k(q+1)`.
fn power_cap(n: usize, k: u64, t: &BigInt, max_entry: &BigInt) -> u64 {
    let n = BigInt::from(n);
    let rhs0 = &n * max_entry.max(&BigInt::one());
    let mut q = 0u64;
    let mut lhs = t.clone();
    let mut rhs = &rhs0 * &n;
    while lhs <= rhs {
        q += 1;
        lhs *= t;
        rhs *= &n;
    }
    k * (q + 1)
}

/// Exact decision of `g ∈ ±A^Z`.
#[derive(Clone, Debug)]
pub struct SignedCyclicOracle {
    a: IntMatrix,
    a_inv: IntMatrix,
    forward: (u64, BigInt),
    backward: (u64, BigInt),
}

impl SignedCyclicOracle {
    pub fn new(a: &IntMatrix) -> Result<Self> {
        a.require_square()?;
        let cp = a.char_poly()?;
        if discriminant(&cp).is_zero() {
            return Err(Error::RepeatedRoots);
        }
        if is_cyclotomic_product(&cp)? {
            return Err(Error::Precondition(format!("{a} has finite order or only root-of-unity eigenvalues")));
        }
        let a_inv = a.inverse_unimodular()?;
        Ok(SignedCyclicOracle {
            forward: trace_growth(a)?,
            backward: trace_growth(&a_inv)?,
            a: a.clone(),
            a_inv,
        })
    }

    pub fn generator(&self) -> &IntMatrix {
        &self.a
    }

    /// Exponent caps `(positive, negative)` for a candidate with the given max entry.
    pub fn exponent_caps(&self, max_entry: &BigInt) -> (u64, u64) {
        let n = self.a.rows();
        (
            power_cap(n, self.forward.0, &self.forward.1, max_entry),
            power_cap(n, self.backward.0, &self.backward.1, max_entry),
        )
    }

    pub fn decide(&self, g: &IntMatrix) -> Result<Option<(i8, i64)>> {
        self.decide_with_slack(g, 0)
    }

    /// Searches exponents up to the cap plus `slack`.
    pub fn decide_with_slack(&self, g: &IntMatrix, slack: u64) -> Result<Option<(i8, i64)>> {
        if g.rows() != self.a.rows() || !g.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} against {}x{}", g.rows(), g.cols(), self.a.rows(), self.a.cols())));
        }
        if g.try_mul(&self.a)? != self.a.try_mul(g)? {
            return Ok(None);
        }
        let (fwd, bwd) = self.exponent_caps(&g.max_abs());
        let neg = g.neg();
        for (step, cap, sign) in [(&self.a, fwd + slack, 1i64), (&self.a_inv, bwd + slack, -1)] {
            let mut p = IntMatrix::identity(self.a.rows());
            for m in 0..=cap as i64 {
                if m > 0 || sign == 1 {
                    if p == *g {
                        return Ok(Some((1, sign * m)));
                    }
                    if p == neg {
                        return Ok(Some((-1, sign * m)));
                    }
                }
                p = p.try_mul(step)?;
            }
        }
        Ok(None)
    }
}

/// Block-diagonal test: returns `h` when `g = diag(h, h^{-t})`.
pub fn undouble(g: &IntMatrix) -> Result<Option<IntMatrix>> {
    let n = g.rows() / 2;
    if g.rows() != 2 * n || !g.is_square() {
        return Ok(None);
    }
    if !g.block(0, n, n, n).is_zero() || !g.block(n, 0, n, n).is_zero() {
        return Ok(None);
    }
    let h = g.block(0, 0, n, n);
    if h.det()?.abs() != BigInt::one() {
        return Ok(None);
    }
    if doubling(&h)? == *g {
        Ok(Some(h))
    } else {
        Ok(None)
    }
}

impl SubgroupSpec {
    pub fn signed_cyclic(a: IntMatrix) -> Result<Self> {
        SignedCyclicOracle::new(&a)?;
        Ok(SubgroupSpec::SignedCyclic { a })
    }

    /// `<J, diag(h, h^{-t})>`, checking that `H` is closed under inverse transpose
    /// on generators so that `{1, J}` is a transversal.
    pub fn doubled_units(embedding: UnitEmbedding) -> Result<Self> {
        for h in embedding.generator_matrices()? {
            let hit = h.inverse_unimodular()?.transpose();
            if embedding.decide(&hit)?.is_none() {
                return Err(Error::Precondition(format!(
                    "inverse transpose of {h} leaves the unit embedding"
                )));
            }
        }
        let n = embedding.dim();
        Ok(SubgroupSpec::DoubledUnits {
            embedding,
            transversal: vec![IntMatrix::identity(2 * n), symplectic_form(n)],
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            SubgroupSpec::SignedCyclic { .. } => "SIGNED_CYCLIC",
            SubgroupSpec::UnitEmbedding { .. } => "UNIT_EMBEDDING",
            SubgroupSpec::PointStabilizer => "POINT_STABILIZER",
            SubgroupSpec::Translations => "TRANSLATIONS",
            SubgroupSpec::DoubledUnits { .. } => "DOUBLED_UNITS",
        }
    }

    /// Reusable decision procedure.
    pub fn oracle(&self) -> Result<MembershipOracle<'_>> {
        Ok(MembershipOracle {
            spec: self,
            cyclic: match self {
                SubgroupSpec::SignedCyclic { a } => Some(SignedCyclicOracle::new(a)?),
                _ => None,
            },
        })
    }

    pub fn membership(&self, g: &GroupElement) -> Result<Membership> {
        self.oracle()?.decide(g)
    }
}

/// A subgroup with its precomputed decision data.
#[derive(Clone, Debug)]
pub struct MembershipOracle<'a> {
    spec: &'a SubgroupSpec,
    cyclic: Option<SignedCyclicOracle>,
}

impl MembershipOracle<'_> {
    pub fn spec(&self) -> &SubgroupSpec {
        self.spec
    }

    pub fn cyclic(&self) -> Option<&SignedCyclicOracle> {
        self.cyclic.as_ref()
    }

    pub fn decide(&self, g: &GroupElement) -> Result<Membership> {
        self.decide_with_slack(g, 0)
    }

    pub fn decide_with_slack(&self, g: &GroupElement, slack: u64) -> Result<Membership> {
        let no_translation = g.translation().is_none_or(|t| t.is_zero());
        let m = g.linear();
        let yes = |witness| Ok(Membership::Yes { witness });
        match self.spec {
            SubgroupSpec::PointStabilizer => {
                if !g.is_semidirect() {
                    return Err(Error::KindMismatch("point stabilizer needs an affine element".into()));
                }
                if no_translation {
                    yes(Witness::Linear)
                } else {
                    Ok(Membership::No)
                }
            }
            SubgroupSpec::Translations => {
                if !g.is_semidirect() {
                    return Err(Error::KindMismatch("translations need an affine element".into()));
                }
                if m.is_identity() {
                    yes(Witness::Translation)
                } else {
                    Ok(Membership::No)
                }
            }
            _ if !no_translation => Ok(Membership::No),
            SubgroupSpec::SignedCyclic { .. } => {
                let oracle = self.cyclic.as_ref().expect("signed cyclic subgroups carry a cyclic oracle");
                match oracle.decide_with_slack(m, slack)? {
                    Some((sign, exponent)) => yes(Witness::SignedPower { sign, exponent }),
                    None => Ok(Membership::No),
                }
            }
            SubgroupSpec::UnitEmbedding { embedding } => match embedding.decide(m)? {
                Some((w, galois_index)) => yes(Witness::Unit {
                    unit: Coords(w.coords().to_vec()),
                    galois_index,
                }),
                None => Ok(Membership::No),
            },
            SubgroupSpec::DoubledUnits {
                embedding,
                transversal,
            } => {
                for (index, t) in transversal.iter().enumerate() {
                    let rest = t.inverse_unimodular()?.try_mul(m)?;
                    if let Some(h) = undouble(&rest)? {
                        if let Some((w, galois_index)) = embedding.decide(&h)? {
                            return yes(Witness::Coset {
                                index,
                                inner: Box::new(Witness::Unit {
                                    unit: Coords(w.coords().to_vec()),
                                    galois_index,
                                }),
                            });
                        }
                    }
                }
                Ok(Membership::No)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a4() -> IntMatrix {
        IntMatrix::companion(&IntPolynomial::from_i64(&[1, 1, 0, 0, 1])).unwrap()
    }

    #[test]
    fn signed_cyclic_membership() {
        let a = a4();
        let spec = SubgroupSpec::signed_cyclic(a.clone()).unwrap();
        let o = spec.oracle().unwrap();
        let yes = |g: IntMatrix| o.decide(&GroupElement::matrix(g)).unwrap();
        assert_eq!(
            yes(a.pow(3).unwrap()),
            Membership::Yes { witness: Witness::SignedPower { sign: 1, exponent: 3 } }
        );
        assert_eq!(
            yes(IntMatrix::scalar(4, -1)),
            Membership::Yes { witness: Witness::SignedPower { sign: -1, exponent: 0 } }
        );
        assert_eq!(
            yes(a.pow(-7).unwrap().neg()),
            Membership::Yes { witness: Witness::SignedPower { sign: -1, exponent: -7 } }
        );
        assert_eq!(yes(IntMatrix::elementary(4, 0, 1, &BigInt::one())), Membership::No);
    }

    #[test]
    fn central_generator_rejected() {
        assert!(SubgroupSpec::signed_cyclic(IntMatrix::scalar(2, -1)).is_err());
        let rot = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        assert!(SubgroupSpec::signed_cyclic(rot).is_err());
    }

    #[test]
    fn exponent_cap_covers_actual_power() {
        let a = IntMatrix::from_rows(&[vec![5, -1], vec![1, 0]]);
        let o = SignedCyclicOracle::new(&a).unwrap();
        for e in 1..25 {
            let p = a.pow(e).unwrap();
            let (fwd, _) = o.exponent_caps(&p.max_abs());
            assert!(fwd >= e as u64);
        }
    }

    #[test]
    fn affine_kinds() {
        let t = GroupElement::translation_only(crate::exactlin::IntVector::from_i64(&[1, 0]));
        let l = GroupElement::linear_only(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert!(!SubgroupSpec::PointStabilizer.membership(&t).unwrap().is_member());
        assert!(SubgroupSpec::PointStabilizer.membership(&l).unwrap().is_member());
        assert!(SubgroupSpec::Translations.membership(&t).unwrap().is_member());
        assert!(!SubgroupSpec::Translations.membership(&l).unwrap().is_member());
    }
}
