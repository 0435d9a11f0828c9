//! First cohomology with coefficients in `Z^n` from a finite presentation.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{integer_kernel, smith_normal_form, solve_linear_integer, IntMatrix, IntVector, LinearSolution};
use crate::groups::presentation::Presentation;
use crate::groups::words::Word;

/// A presentation with an integer matrix action on `Z^n`.
#[derive(Clone, Debug)]
pub struct PresentationAction {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub action: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
    pub rank: usize,
}

impl PresentationAction {
    /// Checks that every relator acts as the identity.
    pub fn new(generators: Vec<String>, relators: Vec<Word>, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != generators.len() {
            return Err(Error::InvalidInput(format!(
                "{} action matrices for {} generators",
                action.len(),
                generators.len()
            )));
        }
        let rank = action.first().map_or(0, IntMatrix::rows);
        let inverses = action
            .iter()
            .map(|m| {
                if m.rows() != rank || !m.is_square() {
                    return Err(Error::DimensionMismatch("action matrices differ in size".into()));
                }
                m.inverse_unimodular()
            })
            .collect::<Result<Vec<_>>>()?;
        let pa = PresentationAction {
            generators,
            relators,
            action,
            inverses,
            rank,
        };
        for r in &pa.relators {
            if !pa.evaluate(r)?.is_identity() {
                return Err(Error::RelatorViolated(r.display(&pa.generators)));
            }
        }
        Ok(pa)
    }

    /// The linear action carried by a presentation's images.
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        Self::new(p.generators.clone(), p.relators.clone(), p.linear_action())
    }

    fn letter_matrix(&self, g: usize, inverse: bool) -> &IntMatrix {
        if inverse {
            &self.inverses[g]
        } else {
            &self.action[g]
        }
    }

    pub fn evaluate(&self, w: &Word) -> Result<IntMatrix> {
        let mut acc = IntMatrix::identity(self.rank);
        for l in &w.0 {
            if l.generator >= self.action.len() {
                return Err(Error::InvalidInput(format!("letter {} out of range", l.generator)));
            }
            acc = acc.try_mul(self.letter_matrix(l.generator, l.inverse))?;
        }
        Ok(acc)
    }

    /// Free-differential block row of one word: `δ(w) = Σ_g D_g δ(g)`, returned as
    /// the `n x kn` matrix `[D_1 | ... | D_k]`.
    pub fn fox_row(&self, w: &Word) -> Result<IntMatrix> {
        let n = self.rank;
        let k = self.action.len();
        let mut blocks = vec![IntMatrix::zeros(n, n); k];
        let mut prefix = IntMatrix::identity(n);
        for l in &w.0 {
            let g = l.generator;
            if l.inverse {
                // δ(u g^-1) = δ(u) - u g^-1 δ(g)
                let term = prefix.try_mul(&self.inverses[g])?;
                blocks[g] = blocks[g].try_sub(&term)?;
            } else {
                blocks[g] = blocks[g].try_add(&prefix)?;
            }
            prefix = prefix.try_mul(self.letter_matrix(g, l.inverse))?;
        }
        let mut entries = Vec::with_capacity(n * n * k);
        for i in 0..n {
            for b in &blocks {
                entries.extend_from_slice(b.row(i));
            }
        }
        IntMatrix::new(n, n * k, entries)
    }
}

/// Stacked free-differential constraints, one block row per relator.
pub fn cocycle_constraints(pa: &PresentationAction) -> Result<IntMatrix> {
    let cols = pa.rank * pa.action.len();
    let mut entries = Vec::new();
    let mut rows = 0;
    for r in &pa.relators {
        let block = pa.fox_row(r)?;
        rows += block.rows();
        entries.extend_from_slice(block.entries());
    }
    IntMatrix::new(rows, cols, entries)
}

/// `Z^1`, `B^1` and the structure of `Z^1 / B^1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneCohomology {
    /// Basis of the cocycles, stacked values `(δ(g_1), ..., δ(g_k))`.
    pub z1_basis: Vec<IntVector>,
    /// Images of `e_1, ..., e_n` under `x ↦ ((1 - g_i) x)_i`.
    pub b1_generators: Vec<IntVector>,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl OneCohomology {
    pub fn is_zero(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" x ")
        }
    }
}

/// Coboundary matrix: column `j` is `((1 - g_i) e_j)_i`.
pub fn coboundary_matrix(pa: &PresentationAction) -> Result<IntMatrix> {
    let n = pa.rank;
    let id = IntMatrix::identity(n);
    let mut rows = Vec::new();
    for g in &pa.action {
        rows.extend(id.try_sub(g)?.to_rows());
    }
    if rows.is_empty() {
        return Ok(IntMatrix::zeros(0, n));
    }
    IntMatrix::from_big_rows(rows)
}

pub fn h1(pa: &PresentationAction) -> Result<OneCohomology> {
    let c = cocycle_constraints(pa)?;
    let z1_basis = integer_kernel(&c);
    let b = coboundary_matrix(pa)?;
    let b1_generators: Vec<IntVector> = (0..b.cols()).map(|j| b.column(j)).collect();
    let r = z1_basis.len();
    if r == 0 {
        return Ok(OneCohomology {
            z1_basis,
            b1_generators,
            torsion: Vec::new(),
            free_rank: 0,
        });
    }
    let kn = b.rows();
    let mut zentries = Vec::with_capacity(kn * r);
    for i in 0..kn {
        for v in &z1_basis {
            zentries.push(v.0[i].clone());
        }
    }
    let zmat = IntMatrix::new(kn, r, zentries)?;
    // coordinates of each coboundary generator in the cocycle basis
    let mut coords = Vec::with_capacity(b1_generators.len());
    for col in &b1_generators {
        match solve_linear_integer(&zmat, col)? {
            LinearSolution::Solution { particular, .. } => coords.push(particular.0),
            LinearSolution::NoSolution => {
                return Err(Error::Precondition("a coboundary fails the cocycle constraints".into()))
            }
        }
    }
    let y = if coords.is_empty() {
        IntMatrix::zeros(r, 0)
    } else {
        IntMatrix::from_big_rows(coords)?.transpose()
    };
    let snf = smith_normal_form(&y);
    let factors = snf.invariant_factors();
    let rank = factors.iter().filter(|d| !d.is_zero()).count();
    Ok(OneCohomology {
        z1_basis,
        b1_generators,
        torsion: factors
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect(),
        free_rank: r - rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(v: i64) -> IntMatrix {
        IntMatrix::from_rows(&[vec![v]])
    }

    #[test]
    fn single_generator_constraints() {
        let free = PresentationAction::new(vec!["a".into()], vec![], vec![one(5)]);
        // 5 is not unimodular
        assert!(free.is_err());
        let free = PresentationAction::new(vec!["a".into()], vec![], vec![one(1)]).unwrap();
        assert_eq!(cocycle_constraints(&free).unwrap().rows(), 0);
        let h = h1(&free).unwrap();
        assert_eq!(h.free_rank, 1);

        let sq = vec![Word::power_of(0, 2)];
        let neg = PresentationAction::new(vec!["a".into()], sq.clone(), vec![one(-1)]).unwrap();
        assert!(cocycle_constraints(&neg).unwrap().is_zero());
        // Z^1 = Z, B^1 = 2Z
        assert_eq!(h1(&neg).unwrap().torsion, vec![BigInt::from(2)]);
        // a -> +1: 2 δ(a) = 0
        let pos = PresentationAction::new(vec!["a".into()], sq, vec![one(1)]).unwrap();
        assert_eq!(cocycle_constraints(&pos).unwrap(), one(2));
        assert!(h1(&pos).unwrap().is_zero());
        let bad = PresentationAction::new(vec!["a".into()], vec![Word::power_of(0, 3)], vec![one(-1)]);
        assert!(matches!(bad, Err(Error::RelatorViolated(_))));
    }

    #[test]
    fn registry_presentations_have_no_cohomology() {
        let reg = crate::groups::Registry::bundled();
        for id in ["sl2z-std", "sl3z-steinberg"] {
            let pa = PresentationAction::from_presentation(&reg.presentation(id).unwrap()).unwrap();
            let h = h1(&pa).unwrap();
            assert!(h.is_zero(), "{id}: {}", h.describe());
        }
    }
}
