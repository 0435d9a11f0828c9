//! Finite presentations with matrix images.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, IntVector};
use crate::groups::ambient::{elementary_generators, reflection};
use crate::groups::element::GroupElement;
use crate::groups::words::{Letter, Word};

/// Whether the relator list is known to present the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Completeness {
    /// Completeness follows from an argument recorded in the note.
    Computed { note: String },
    /// Completeness is taken from the literature; `axiom` names a registry axiom.
    Axiom { axiom: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub id: String,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub images: Vec<GroupElement>,
    pub completeness: Completeness,
}

impl Presentation {
    pub fn new(
        id: impl Into<String>,
        generators: Vec<String>,
        relators: Vec<Word>,
        images: Vec<GroupElement>,
        completeness: Completeness,
    ) -> Result<Self> {
        let p = Presentation {
            id: id.into(),
            generators,
            relators,
            images,
            completeness,
        };
        p.verify()?;
        Ok(p)
    }

    pub fn identity(&self) -> GroupElement {
        self.images
            .first()
            .map(|g| g.identity_like())
            .unwrap_or_else(|| GroupElement::matrix(IntMatrix::identity(1)))
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Dimension of the module the images act on.
    pub fn module_rank(&self) -> usize {
        self.images.first().map_or(1, |g| g.dim())
    }

    /// Every relator must evaluate to the identity.
    pub fn verify(&self) -> Result<()> {
        if self.images.len() != self.generators.len() {
            return Err(Error::InvalidInput(format!(
                "{}: {} images for {} generators",
                self.id,
                self.images.len(),
                self.generators.len()
            )));
        }
        let id = self.identity();
        for r in &self.relators {
            if !r.evaluate(&self.images, &id)?.is_identity() {
                return Err(Error::RelatorViolated(format!(
                    "{}: {}",
                    self.id,
                    r.display(&self.generators)
                )));
            }
        }
        Ok(())
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.generators)
    }

    /// Linear parts of the images, the action used for cohomology.
    pub fn linear_action(&self) -> Vec<IntMatrix> {
        self.images.iter().map(|g| g.linear().clone()).collect()
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| r.display(&self.generators))
            .collect()
    }
}

fn e(n: usize, i: usize, j: usize) -> usize {
    i * (n - 1) + if j < i { j } else { j - 1 }
}

/// Steinberg relators of `SL(n,Z)`, `n >= 3`, on generators `e_ij = 1 + E_ij`:
/// `[e_ij, e_jk] = e_ik`, `[e_ij, e_kl] = 1` for `j != k`, `i != l`, and
/// `(e_12 e_21^{-1} e_12)^4 = 1`.
pub fn steinberg_relators(n: usize) -> Vec<Word> {
    let mut rels = Vec::new();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            let a = Word::letter(e(n, i, j));
            let b = Word::letter(e(n, k, l));
            if j == k && i != l {
                let c = Word::letter(e(n, i, l));
                rels.push(Word::commutator(&a, &b).concat(&c.inverse()));
            } else if j != k && i != l && (i, j) < (k, l) {
                rels.push(Word::commutator(&a, &b));
            }
        }
    }
    let w = Word::letter(e(n, 0, 1))
        .concat(&Word::letter(e(n, 1, 0)).inverse())
        .concat(&Word::letter(e(n, 0, 1)));
    rels.push(w.pow(4));
    rels
}

pub fn steinberg_sl(n: usize, axiom: &str) -> Result<Presentation> {
    if n < 3 {
        return Err(Error::Unsupported(format!("Steinberg presentation needs n >= 3, got {n}")));
    }
    let (names, mats): (Vec<String>, Vec<IntMatrix>) = elementary_generators(n).into_iter().unzip();
    Presentation::new(
        format!("steinberg-sl({n})"),
        names,
        steinberg_relators(n),
        mats.into_iter().map(GroupElement::matrix).collect(),
        Completeness::Axiom {
            axiom: axiom.into(),
        },
    )
}

/// `GL(n,Z) = SL(n,Z) ⋊ <r>` with `r = diag(-1,1,...,1)`.
pub fn steinberg_gl(n: usize, axiom: &str) -> Result<Presentation> {
    let sl = steinberg_sl(n, axiom)?;
    let r = sl.generators.len();
    let mut names = sl.generators.clone();
    names.push("d1".into());
    let mut images = sl.images.clone();
    images.push(GroupElement::matrix(reflection(n)));
    let mut rels = sl.relators.clone();
    rels.push(Word::power_of(r, 2));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let x = Word::letter(e(n, i, j));
            let conj = Word::letter(r).concat(&x).concat(&Word::letter(r).inverse());
            // r e_ij r^{-1} = e_ij^{-1} exactly when one of i, j is the first index
            let target = if (i == 0) != (j == 0) { x.inverse() } else { x };
            rels.push(conj.concat(&target.inverse()));
        }
    }
    Presentation::new(format!("steinberg-gl({n})"), names, rels, images, sl.completeness)
}

/// `Z^n ⋊ Γ` from a presentation of `Γ` acting on `Z^n` by its images.
pub fn semidirect(base: &Presentation, id: impl Into<String>) -> Result<Presentation> {
    let n = base.module_rank();
    let k = base.rank();
    let mut names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    names.extend(base.generators.iter().cloned());
    let mut images: Vec<GroupElement> = (0..n)
        .map(|i| GroupElement::translation_only(IntVector::unit(n, i)))
        .collect();
    images.extend(base.images.iter().map(|g| GroupElement::linear_only(g.linear().clone())));
    let shift = |w: &Word| Word(w.0.iter().map(|l| Letter::new(l.generator + n, l.inverse)).collect());
    let mut rels: Vec<Word> = base.relators.iter().map(shift).collect();
    for i in 0..n {
        for j in i + 1..n {
            rels.push(Word::commutator(&Word::letter(i), &Word::letter(j)));
        }
    }
    for g in 0..k {
        let m = base.images[g].linear();
        for i in 0..n {
            let gw = Word::letter(g + n);
            let conj = gw.concat(&Word::letter(i)).concat(&gw.inverse());
            let col = m.column(i);
            let mut target = Word::empty();
            for (t, c) in col.0.iter().enumerate() {
                let c: i64 = c
                    .try_into()
                    .map_err(|_| Error::Unsupported("large action entry".into()))?;
                target = target.concat(&Word::power_of(t, c));
            }
            rels.push(conj.concat(&target.inverse()));
        }
    }
    Presentation::new(id, names, rels, images, base.completeness.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steinberg_relators_hold() {
        for n in 3..=4 {
            steinberg_sl(n, "x").unwrap();
            steinberg_gl(n, "x").unwrap();
        }
        assert!(steinberg_sl(2, "x").is_err());
    }

    #[test]
    fn violated_relator_detected() {
        let p = Presentation::new(
            "bad",
            vec!["a".into()],
            vec![Word::power_of(0, 2)],
            vec![GroupElement::matrix(IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]))],
            Completeness::Computed { note: String::new() },
        );
        assert!(matches!(p, Err(Error::RelatorViolated(_))));
    }

    #[test]
    fn semidirect_relators_hold() {
        let sl3 = steinberg_sl(3, "x").unwrap();
        let aff = semidirect(&sl3, "aff").unwrap();
        assert_eq!(aff.rank(), 9);
    }
}
