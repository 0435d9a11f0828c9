//! Ambient group families and their standard generators.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, IntVector};
use crate::groups::element::GroupElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `GL(n, Z)`
    Gl,
    /// `SL(n, Z)`
    Sl,
    /// `Sp(2n, Z)`
    Sp,
    /// `Z^n ⋊ GL(n, Z)`
    AffineGl,
    /// `Z^n ⋊ SL(n, Z)`
    AffineSl,
    /// `Z^2n ⋊ Sp(2n, Z)`
    AffineSp,
    /// `Z^n ⋊ {1}`, the bare translation group.
    AffineTrivial,
}

impl Family {
    pub fn is_affine(self) -> bool {
        matches!(
            self,
            Family::AffineGl | Family::AffineSl | Family::AffineSp | Family::AffineTrivial
        )
    }

    /// Family of the linear part.
    pub fn linear(self) -> Option<Family> {
        match self {
            Family::Gl | Family::AffineGl => Some(Family::Gl),
            Family::Sl | Family::AffineSl => Some(Family::Sl),
            Family::Sp | Family::AffineSp => Some(Family::Sp),
            Family::AffineTrivial => None,
        }
    }
}

/// `J_n = [[0, I], [-I, 0]]`.
pub fn symplectic_form(n: usize) -> IntMatrix {
    let z = IntMatrix::zeros(n, n);
    let i = IntMatrix::identity(n);
    IntMatrix::from_blocks(&z, &i, &i.neg(), &z)
}

/// `g ↦ diag(g, (g^{-1})^t)`.
pub fn doubling(g: &IntMatrix) -> Result<IntMatrix> {
    let git = g.inverse_unimodular()?.transpose();
    Ok(IntMatrix::block_diag(g, &git))
}

pub fn is_symplectic(g: &IntMatrix) -> bool {
    if !g.is_square() || !g.rows().is_multiple_of(2) {
        return false;
    }
    let j = symplectic_form(g.rows() / 2);
    &(&g.transpose() * &j) * g == j
}

/// Symmetric basis `E_ii` then `E_ij + E_ji` (i < j), with 1-based labels.
pub fn symmetric_basis(n: usize) -> Vec<(String, IntMatrix)> {
    let mut out = Vec::new();
    for i in 0..n {
        let mut m = IntMatrix::zeros(n, n);
        m.set(i, i, BigInt::one());
        out.push((format!("{}{}", i + 1, i + 1), m));
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut m = IntMatrix::zeros(n, n);
            m.set(i, j, BigInt::one());
            m.set(j, i, BigInt::one());
            out.push((format!("{}{}", i + 1, j + 1), m));
        }
    }
    out
}

/// Elementary matrices `1 + E_ij`, `i != j`, in lexicographic order.
pub fn elementary_generators(n: usize) -> Vec<(String, IntMatrix)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push((
                    format!("e{}{}", i + 1, j + 1),
                    IntMatrix::elementary(n, i, j, &BigInt::one()),
                ));
            }
        }
    }
    out
}

/// `diag(-1, 1, ..., 1)`.
pub fn reflection(n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    m.set(0, 0, -BigInt::one());
    m
}

fn linear_generators(family: Family, n: usize) -> Vec<(String, IntMatrix)> {
    match family {
        Family::Sl => elementary_generators(n),
        Family::Gl => {
            let mut g = elementary_generators(n);
            g.push(("d1".into(), reflection(n)));
            g
        }
        Family::Sp => {
            let mut out: Vec<(String, IntMatrix)> = linear_generators(Family::Gl, n)
                .into_iter()
                .map(|(name, a)| (format!("P({name})"), doubling(&a).expect("unimodular")))
                .collect();
            let i = IntMatrix::identity(n);
            let z = IntMatrix::zeros(n, n);
            for (name, b) in symmetric_basis(n) {
                out.push((format!("U{name}"), IntMatrix::from_blocks(&i, &b, &z, &i)));
            }
            for (name, c) in symmetric_basis(n) {
                out.push((format!("L{name}"), IntMatrix::from_blocks(&i, &z, &c, &i)));
            }
            out
        }
        _ => unreachable!("linear families only"),
    }
}

/// An ambient group with its generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientGroupSpec {
    pub family: Family,
    /// Rank parameter: matrix size for GL/SL, half size for Sp.
    pub n: usize,
    pub generator_names: Vec<String>,
    pub generators: Vec<GroupElement>,
}

impl AmbientGroupSpec {
    pub fn standard(family: Family, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        let (names, gens): (Vec<String>, Vec<GroupElement>) = match family {
            Family::Gl | Family::Sl | Family::Sp => linear_generators(family, n)
                .into_iter()
                .map(|(s, m)| (s, GroupElement::matrix(m)))
                .unzip(),
            _ => {
                let dim = if family == Family::AffineSp { 2 * n } else { n };
                let mut names = Vec::new();
                let mut gens = Vec::new();
                for i in 0..dim {
                    names.push(format!("t{}", i + 1));
                    gens.push(GroupElement::translation_only(IntVector::unit(dim, i)));
                }
                if let Some(lin) = family.linear() {
                    for (s, m) in linear_generators(lin, n) {
                        names.push(s);
                        gens.push(GroupElement::linear_only(m));
                    }
                }
                (names, gens)
            }
        };
        let spec = AmbientGroupSpec {
            family,
            n,
            generator_names: names,
            generators: gens,
        };
        for g in &spec.generators {
            spec.check_member(g)?;
        }
        Ok(spec)
    }

    /// Size of the matrices of the linear part.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::Sp | Family::AffineSp => 2 * self.n,
            _ => self.n,
        }
    }

    pub fn identity(&self) -> GroupElement {
        if self.family.is_affine() {
            GroupElement::linear_only(IntMatrix::identity(self.dim()))
        } else {
            GroupElement::matrix(IntMatrix::identity(self.dim()))
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.check_member(g).is_ok()
    }

    pub fn check_member(&self, g: &GroupElement) -> Result<()> {
        if g.is_semidirect() != self.family.is_affine() || g.dim() != self.dim() {
            return Err(Error::NotInAmbient(format!("wrong kind or dimension for {self}")));
        }
        let m = g.linear();
        let ok = match self.family.linear() {
            Some(Family::Gl) => m.det()?.abs().is_one(),
            Some(Family::Sl) => m.det()?.is_one(),
            Some(Family::Sp) => is_symplectic(m),
            None => m.is_identity(),
            Some(_) => unreachable!(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotInAmbient(format!("{g} is not in {self}")))
        }
    }
}

impl fmt::Display for AmbientGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.family {
            Family::Gl => write!(f, "GL({n},Z)"),
            Family::Sl => write!(f, "SL({n},Z)"),
            Family::Sp => write!(f, "Sp({},Z)", 2 * n),
            Family::AffineGl => write!(f, "Z^{n} x| GL({n},Z)"),
            Family::AffineSl => write!(f, "Z^{n} x| SL({n},Z)"),
            Family::AffineSp => write!(f, "Z^{} x| Sp({},Z)", 2 * n, 2 * n),
            Family::AffineTrivial => write!(f, "Z^{n}"),
        }
    }
}
