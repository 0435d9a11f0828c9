//! Abelianizations and character groups of finite presentations.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactlin::{smith_normal_form, IntMatrix};
use crate::groups::presentation::Presentation;
use crate::groups::words::Word;

/// `Z/d_1 x ... x Z/d_k x Z^r` with every `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "trivial".into()
        } else {
            parts.join(" x ")
        }
    }

    /// `Hom(ab, S^1)`: the torsion part is self-dual and `Z` dualizes to the circle.
    pub fn character_group(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("S^1".into()),
            r => parts.push(format!("(S^1)^{r}")),
        }
        if parts.is_empty() {
            "trivial".into()
        } else {
            parts.join(" x ")
        }
    }
}

/// Abelianization of `<generators | relators>` from the exponent-sum matrix.
pub fn abelianize(generators: usize, relators: &[Word]) -> Result<Abelianization> {
    if generators == 0 {
        return Ok(Abelianization {
            torsion: Vec::new(),
            free_rank: 0,
        });
    }
    let rows: Vec<Vec<BigInt>> = relators
        .iter()
        .map(|r| r.exponent_sums(generators).into_iter().map(BigInt::from).collect())
        .collect();
    let m = if rows.is_empty() {
        IntMatrix::zeros(0, generators)
    } else {
        IntMatrix::from_big_rows(rows)?
    };
    let factors = smith_normal_form(&m).invariant_factors();
    let rank = factors.iter().filter(|d| !d.is_zero()).count();
    Ok(Abelianization {
        torsion: factors.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
        free_rank: generators - rank,
    })
}

pub fn abelianization(pres: &Presentation) -> Result<Abelianization> {
    abelianize(pres.rank(), &pres.relators)
}
