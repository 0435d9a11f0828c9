//! Matrix and affine group elements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, IntVector};

/// An element of `GL(n, Z)` or of `Z^n ⋊ GL(n, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GroupElement {
    Matrix {
        matrix: IntMatrix,
    },
    /// `(x, g)` acting on `Z^n` by `y ↦ x + g y`.
    Semidirect {
        translation: IntVector,
        linear: IntMatrix,
    },
}

impl GroupElement {
    pub fn matrix(m: IntMatrix) -> Self {
        GroupElement::Matrix { matrix: m }
    }

    pub fn semidirect(translation: IntVector, linear: IntMatrix) -> Result<Self> {
        if !linear.is_square() || translation.len() != linear.rows() {
            return Err(Error::KindMismatch(format!(
                "translation of length {} with a {}x{} linear part",
                translation.len(),
                linear.rows(),
                linear.cols()
            )));
        }
        Ok(GroupElement::Semidirect {
            translation,
            linear,
        })
    }

    pub fn translation_only(x: IntVector) -> Self {
        let n = x.len();
        GroupElement::Semidirect {
            translation: x,
            linear: IntMatrix::identity(n),
        }
    }

    pub fn linear_only(g: IntMatrix) -> Self {
        let n = g.rows();
        GroupElement::Semidirect {
            translation: IntVector::zeros(n),
            linear: g,
        }
    }

    /// Identity of the same kind and dimension.
    pub fn identity_like(&self) -> Self {
        match self {
            GroupElement::Matrix { matrix } => Self::matrix(IntMatrix::identity(matrix.rows())),
            GroupElement::Semidirect { linear, .. } => {
                Self::linear_only(IntMatrix::identity(linear.rows()))
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.linear().rows()
    }

    pub fn linear(&self) -> &IntMatrix {
        match self {
            GroupElement::Matrix { matrix } => matrix,
            GroupElement::Semidirect { linear, .. } => linear,
        }
    }

    pub fn translation(&self) -> Option<&IntVector> {
        match self {
            GroupElement::Matrix { .. } => None,
            GroupElement::Semidirect { translation, .. } => Some(translation),
        }
    }

    pub fn is_semidirect(&self) -> bool {
        matches!(self, GroupElement::Semidirect { .. })
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Matrix { matrix } => matrix.is_identity(),
            GroupElement::Semidirect {
                translation,
                linear,
            } => translation.is_zero() && linear.is_identity(),
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.is_semidirect() != other.is_semidirect() || self.dim() != other.dim() {
            return Err(Error::KindMismatch(format!(
                "cannot compose {} with {}",
                self.describe_kind(),
                other.describe_kind()
            )));
        }
        Ok(())
    }

    fn describe_kind(&self) -> String {
        match self {
            GroupElement::Matrix { matrix } => format!("{}x{} matrix", matrix.rows(), matrix.cols()),
            GroupElement::Semidirect { linear, .. } => format!("Z^{} semidirect", linear.rows()),
        }
    }

    /// `self * other`; for pairs `(x,g)(y,h) = (x + g y, g h)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(match (self, other) {
            (GroupElement::Matrix { matrix: a }, GroupElement::Matrix { matrix: b }) => {
                Self::matrix(a.try_mul(b)?)
            }
            (
                GroupElement::Semidirect {
                    translation: x,
                    linear: g,
                },
                GroupElement::Semidirect {
                    translation: y,
                    linear: h,
                },
            ) => GroupElement::Semidirect {
                translation: x.add(&g.mul_vec(y)?),
                linear: g.try_mul(h)?,
            },
            _ => unreachable!("kinds checked above"),
        })
    }

    /// Inverse; for pairs `(x,g)^{-1} = (-g^{-1} x, g^{-1})`.
    pub fn invert(&self) -> Result<Self> {
        Ok(match self {
            GroupElement::Matrix { matrix } => Self::matrix(matrix.inverse_unimodular()?),
            GroupElement::Semidirect {
                translation,
                linear,
            } => {
                let gi = linear.inverse_unimodular()?;
                GroupElement::Semidirect {
                    translation: gi.mul_vec(translation)?.neg(),
                    linear: gi,
                }
            }
        })
    }

    pub fn conjugate(&self, by: &Self) -> Result<Self> {
        by.compose(self)?.compose(&by.invert()?)
    }

    /// Integer power.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.identity_like();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.compose(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Affine action on `Z^n`: `(x,g)·y = x + g y`; matrices act linearly.
    pub fn act(&self, y: &IntVector) -> Result<IntVector> {
        match self {
            GroupElement::Matrix { matrix } => matrix.mul_vec(y),
            GroupElement::Semidirect {
                translation,
                linear,
            } => Ok(translation.add(&linear.mul_vec(y)?)),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Matrix { matrix } => write!(f, "{matrix}"),
            GroupElement::Semidirect {
                translation,
                linear,
            } => write!(f, "({translation}, {linear})"),
        }
    }
}
