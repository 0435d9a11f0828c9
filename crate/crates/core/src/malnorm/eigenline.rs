//! Eigenline frames and exact line-mapping tests over `Z[x]/(p)`.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::claim::CertifiedClaim;
use crate::error::{Error, Result};
use crate::exactlin::{orders_with_totient_at_most, IntMatrix, IntPolynomial};
use crate::groups::ambient::doubling;
use crate::groups::registry::GroupPair;
use crate::groups::subgroup::{SubgroupSpec, UnitEmbedding};
use crate::numfield::{discriminant, has_cyclotomic_factor, NumberField, NumberFieldElement};

/// Eigenvalues of a test matrix lying in a number field, with eigenvectors.
///
/// The frame is complete when every eigenvalue of the test matrix is listed.
#[derive(Clone, Debug)]
pub struct Frame {
    pub test_matrix: IntMatrix,
    pub field: Arc<NumberField>,
    pub roots: Vec<NumberFieldElement>,
    pub vectors: Vec<Vec<NumberFieldElement>>,
}

/// Where `g` sends one frame line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LineImage {
    /// Onto the line of frame vector `index`, with `g v = scalar · v_index`.
    Frame { index: usize, scalar: Vec<String> },
    /// Onto an eigenline outside the frame, with the given eigenvalue.
    Other { eigenvalue: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EigenlineMapping {
    /// Some frame line is not sent to an eigenline: a finiteness certificate.
    None { line: usize },
    Lines { images: Vec<LineImage> },
}

impl EigenlineMapping {
    pub fn is_none(&self) -> bool {
        matches!(self, EigenlineMapping::None { .. })
    }

    /// The induced permutation of frame indices, when every image is a frame line.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        match self {
            EigenlineMapping::None { .. } => None,
            EigenlineMapping::Lines { images } => images
                .iter()
                .map(|l| match l {
                    LineImage::Frame { index, .. } => Some(*index),
                    LineImage::Other { .. } => None,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenlineReport {
    pub g: IntMatrix,
    pub test_matrix: IntMatrix,
    pub mapping: EigenlineMapping,
}

fn rational_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|q| q.to_string()).collect()
}

/// `adj(r I - T)` evaluated through `p(x) I = (x I - T) Q(x)`, first nonzero column.
fn eigenvector(t: &IntMatrix, cp: &IntPolynomial, r: &NumberFieldElement) -> Result<Vec<NumberFieldElement>> {
    let n = t.rows();
    let field = r.field();
    // B_{n-1} = I, B_k = c_{k+1} I + T B_{k+1}; Q(r) = sum_k r^k B_k
    let mut b = IntMatrix::identity(n);
    let mut q: Vec<NumberFieldElement> = vec![NumberFieldElement::zero(field); n * n];
    let powers: Vec<NumberFieldElement> = (0..n).map(|k| r.pow(k as u64)).collect();
    for k in (0..n).rev() {
        if k + 1 < n {
            b = IntMatrix::identity(n)
                .scale(&cp.coeff(k + 1))
                .try_add(&t.try_mul(&b)?)?;
        }
        for i in 0..n {
            for j in 0..n {
                let c = b.get(i, j);
                if !c.is_zero() {
                    q[i * n + j] = q[i * n + j].add(&powers[k].scale(c))?;
                }
            }
        }
    }
    for j in 0..n {
        let col: Vec<NumberFieldElement> = (0..n).map(|i| q[i * n + j].clone()).collect();
        if col.iter().any(|e| !e.is_zero()) {
            let tv = apply(t, &col)?;
            for (a, v) in tv.iter().zip(&col) {
                if *a != r.mul(v)? {
                    return Err(Error::Precondition(format!("{r} is not an eigenvalue")));
                }
            }
            return Ok(col);
        }
    }
    Err(Error::RepeatedRoots)
}

/// `m v` for an integer matrix and a field vector.
pub fn apply(m: &IntMatrix, v: &[NumberFieldElement]) -> Result<Vec<NumberFieldElement>> {
    if m.cols() != v.len() {
        return Err(Error::DimensionMismatch(format!("{} columns against length {}", m.cols(), v.len())));
    }
    let field = v
        .first()
        .map(|e| e.field().clone())
        .ok_or_else(|| Error::InvalidInput("empty vector".into()))?;
    (0..m.rows())
        .map(|i| {
            let mut acc = NumberFieldElement::zero(&field);
            for (j, e) in v.iter().enumerate() {
                let c = m.get(i, j);
                if !c.is_zero() {
                    acc = acc.add(&e.scale(c))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

/// `w ∥ v` via all 2x2 minors; `v` must be nonzero.
pub fn parallel(w: &[NumberFieldElement], v: &[NumberFieldElement]) -> Result<bool> {
    let n = v.len();
    let pivot = match v.iter().position(|e| !e.is_zero()) {
        Some(p) => p,
        None => return Err(Error::InvalidInput("zero frame vector".into())),
    };
    for i in 0..n {
        if i != pivot && w[i].mul(&v[pivot])? != w[pivot].mul(&v[i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `w = c v` for a known parallel pair; the rational coordinates of `c`.
fn scalar(w: &[NumberFieldElement], v: &[NumberFieldElement]) -> Result<Vec<BigRational>> {
    let pivot = v.iter().position(|e| !e.is_zero()).expect("nonzero frame vector");
    w[pivot]
        .quotient_rational(&v[pivot])?
        .ok_or_else(|| Error::InvalidInput("singular pivot".into()))
}

impl Frame {
    /// Builds eigenvectors for the given roots of the test matrix.
    pub fn new(test_matrix: IntMatrix, field: Arc<NumberField>, roots: Vec<NumberFieldElement>) -> Result<Self> {
        let cp = test_matrix.char_poly()?;
        if discriminant(&cp).is_zero() {
            return Err(Error::RepeatedRoots);
        }
        let vectors = roots
            .iter()
            .map(|r| {
                if !r.eval_poly(&cp).is_zero() {
                    return Err(Error::CharPolyMismatch(format!("{r} is not a root of {cp}")));
                }
                eigenvector(&test_matrix, &cp, r)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Frame {
            test_matrix,
            field,
            roots,
            vectors,
        })
    }

    pub fn is_complete(&self) -> bool {
        self.roots.len() == self.test_matrix.rows()
    }

    /// Images of the frame lines under `g`.
    pub fn map(&self, g: &IntMatrix) -> Result<EigenlineMapping> {
        let mut images = Vec::with_capacity(self.vectors.len());
        for (i, v) in self.vectors.iter().enumerate() {
            let w = apply(g, v)?;
            let hit = self
                .vectors
                .iter()
                .enumerate()
                .find_map(|(j, u)| match parallel(&w, u) {
                    Ok(true) => Some(Ok(j)),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                })
                .transpose()?;
            if let Some(j) = hit {
                images.push(LineImage::Frame {
                    index: j,
                    scalar: rational_strings(&scalar(&w, &self.vectors[j])?),
                });
                continue;
            }
            let tw = apply(&self.test_matrix, &w)?;
            if parallel(&tw, &w)? {
                images.push(LineImage::Other {
                    eigenvalue: rational_strings(&scalar(&tw, &w)?),
                });
            } else {
                return Ok(EigenlineMapping::None { line: i });
            }
        }
        Ok(EigenlineMapping::Lines { images })
    }

    pub fn report(&self, g: &IntMatrix) -> Result<EigenlineReport> {
        Ok(EigenlineReport {
            g: g.clone(),
            test_matrix: self.test_matrix.clone(),
            mapping: self.map(g)?,
        })
    }
}

/// Roots `σ(x)` for the registered Galois images, starting with `x`.
fn galois_roots(field: &Arc<NumberField>, images: &[NumberFieldElement]) -> Vec<NumberFieldElement> {
    let mut roots = vec![NumberFieldElement::generator(field)];
    for r in images {
        if !roots.contains(r) {
            roots.push(r.clone());
        }
    }
    roots
}

fn embedding_roots(e: &UnitEmbedding) -> Vec<NumberFieldElement> {
    let images: Vec<NumberFieldElement> = e.galois_group().iter().map(|s| s.image_of_x().clone()).collect();
    galois_roots(e.field(), &images)
}

/// The frame used for a pair: `A` itself for signed cyclic subgroups,
/// `π(x)` for unit embeddings and `diag(π(x), π(x)^{-t})` for doubled units.
pub fn pair_frame(pair: &GroupPair) -> Result<Frame> {
    match &pair.subgroup {
        SubgroupSpec::SignedCyclic { a } => {
            let field = NumberField::new(a.char_poly()?)?;
            let images = pair
                .root_images
                .iter()
                .map(|c| NumberFieldElement::from_coords(&field, &c.0))
                .collect::<Result<Vec<_>>>()?;
            Frame::new(a.clone(), field.clone(), galois_roots(&field, &images))
        }
        SubgroupSpec::UnitEmbedding { embedding } => {
            let x = NumberFieldElement::generator(embedding.field());
            Frame::new(embedding.unit_matrix(&x)?, embedding.field().clone(), embedding_roots(embedding))
        }
        SubgroupSpec::DoubledUnits { embedding, .. } => {
            let x = NumberFieldElement::generator(embedding.field());
            let t = doubling(&embedding.unit_matrix(&x)?)?;
            let mut roots = embedding_roots(embedding);
            let inverses = roots.iter().map(|r| r.unit_inverse()).collect::<Result<Vec<_>>>()?;
            roots.extend(inverses);
            Frame::new(t, embedding.field().clone(), roots)
        }
        _ => Err(Error::Unsupported(format!(
            "eigenline frames need a signed cyclic or unit subgroup, {} has {}",
            pair.id,
            pair.subgroup.label()
        ))),
    }
}

/// Whether a missing eigenline image certifies a finite intersection.
///
/// For `±A^Z` this needs every nonzero power of `A` to have distinct eigenvalues.
/// A repeated eigenvalue of `A^k` means `λ_i/λ_j` is a root of unity of some order
/// `m | k` with `φ(m) <= n(n-1)`, so checking `disc(char_poly(A^m)) != 0` for those
/// `m` is exhaustive. For unit subgroups of a field of prime degree every unit
/// other than `±1` generates the field, so its conjugates are distinct.
pub fn frame_soundness(pair: &GroupPair) -> Result<CertifiedClaim> {
    match &pair.subgroup {
        SubgroupSpec::SignedCyclic { a } => {
            let n = a.rows() as u64;
            let orders = orders_with_totient_at_most(n * (n - 1));
            let mut bad = Vec::new();
            for &m in &orders {
                if discriminant(&a.pow(m as i64)?.char_poly()?).is_zero() {
                    bad.push(m);
                }
            }
            let cyclotomic = has_cyclotomic_factor(&a.char_poly()?)?;
            let claim = CertifiedClaim::decided(
                "every nonzero power of A has distinct eigenvalues and none is a root of unity",
                bad.is_empty() && !cyclotomic,
            );
            Ok(claim.with_data(serde_json::json!({
                "orders_checked": orders,
                "orders_with_repeated_eigenvalues": bad,
                "cyclotomic_factor": cyclotomic,
            })))
        }
        SubgroupSpec::UnitEmbedding { embedding } | SubgroupSpec::DoubledUnits { embedding, .. } => {
            let d = embedding.dim();
            let prime = d >= 2 && (2..d).all(|k| d % k != 0);
            let doubled = matches!(pair.subgroup, SubgroupSpec::DoubledUnits { .. });
            // u^(i) u^(j) = 1 for i != j would force the remaining conjugate to be ±1 in degree 3
            let ok = prime && (!doubled || d == 3);
            Ok(CertifiedClaim::decided(
                "every unit other than ±1 acts with distinct eigenvalues on the frame lines",
                ok,
            )
            .with_data(serde_json::json!({ "degree": d, "doubled": doubled })))
        }
        _ => Err(Error::Unsupported(format!("no frame for {}", pair.subgroup.label()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Registry;

    fn golden() -> (GroupPair, Frame) {
        let pair = Registry::bundled().build_example("gl2-golden").unwrap();
        let frame = pair_frame(&pair).unwrap();
        (pair, frame)
    }

    #[test]
    fn golden_frame() {
        let (pair, frame) = golden();
        assert!(frame.is_complete());
        let a = pair.cyclic_generator().unwrap().clone();
        assert_eq!(frame.map(&a).unwrap().permutation(), Some(vec![0, 1]));
        assert_eq!(frame.map(&IntMatrix::scalar(2, -1)).unwrap().permutation(), Some(vec![0, 1]));
        let u = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(frame.map(&u).unwrap().is_none());
        assert!(frame_soundness(&pair).unwrap().status.is_computed());
    }

    #[test]
    fn eigenvectors_are_exact() {
        let pair = Registry::bundled().build_example("gl4-x4px1").unwrap();
        let f = pair_frame(&pair).unwrap();
        assert!(!f.is_complete());
        let tv = apply(&f.test_matrix, &f.vectors[0]).unwrap();
        for (a, v) in tv.iter().zip(&f.vectors[0]) {
            assert_eq!(*a, f.roots[0].mul(v).unwrap());
        }
    }

    #[test]
    fn doubled_frame_is_complete() {
        let pair = Registry::bundled().build_example("sp6-pair").unwrap();
        let f = pair_frame(&pair).unwrap();
        assert!(f.is_complete());
        assert!(frame_soundness(&pair).unwrap().status.is_computed());
    }
}
