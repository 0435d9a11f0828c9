//! Group expressions for the outer automorphism formulas.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cohom::Abelianization;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SymbolicGroup {
    Trivial,
    Cyclic {
        n: u64,
    },
    Symmetric {
        n: u64,
    },
    /// A finite group known only by its order.
    Finite {
        order: u64,
        label: String,
    },
    Product {
        factors: Vec<SymbolicGroup>,
    },
    Semidirect {
        normal: Box<SymbolicGroup>,
        acting: Box<SymbolicGroup>,
    },
    HomGroup {
        source: String,
        target: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<u64>,
    },
    /// A group fixed by a cited fact rather than computed.
    Named {
        name: String,
        citation: String,
    },
    Circle,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl SymbolicGroup {
    pub fn product(factors: Vec<SymbolicGroup>) -> Self {
        SymbolicGroup::Product { factors }.simplify()
    }

    pub fn semidirect(normal: SymbolicGroup, acting: SymbolicGroup) -> Self {
        SymbolicGroup::Semidirect {
            normal: Box::new(normal),
            acting: Box::new(acting),
        }
        .simplify()
    }

    /// `Z/d_1 x ... x Z/d_k x (S^1)^r`, the dual of an abelianization.
    pub fn characters_of(ab: &Abelianization) -> Self {
        let mut factors: Vec<SymbolicGroup> = ab
            .torsion
            .iter()
            .map(|d| SymbolicGroup::Cyclic {
                n: u64::try_from(d).expect("invariant factor fits in u64"),
            })
            .collect();
        factors.extend((0..ab.free_rank).map(|_| SymbolicGroup::Circle));
        Self::product(factors)
    }

    /// Drops trivial factors and flattens nested products.
    pub fn simplify(self) -> Self {
        match self {
            SymbolicGroup::Cyclic { n } | SymbolicGroup::Symmetric { n } if n <= 1 => SymbolicGroup::Trivial,
            SymbolicGroup::Finite { order: 1, .. } => SymbolicGroup::Trivial,
            SymbolicGroup::HomGroup { order: Some(1), .. } => SymbolicGroup::Trivial,
            SymbolicGroup::Product { factors } => {
                let mut flat = Vec::new();
                for f in factors.into_iter().map(SymbolicGroup::simplify) {
                    match f {
                        SymbolicGroup::Trivial => {}
                        SymbolicGroup::Product { factors } => flat.extend(factors),
                        other => flat.push(other),
                    }
                }
                match flat.len() {
                    0 => SymbolicGroup::Trivial,
                    1 => flat.pop().expect("one factor"),
                    _ => SymbolicGroup::Product { factors: flat },
                }
            }
            SymbolicGroup::Semidirect { normal, acting } => match (normal.simplify(), acting.simplify()) {
                (SymbolicGroup::Trivial, a) => a,
                (n, SymbolicGroup::Trivial) => n,
                (n, a) => SymbolicGroup::Semidirect {
                    normal: Box::new(n),
                    acting: Box::new(a),
                },
            },
            other => other,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.clone().simplify() == SymbolicGroup::Trivial
    }

    /// The order, when it is finite and known.
    pub fn order(&self) -> Option<BigInt> {
        match self {
            SymbolicGroup::Trivial => Some(BigInt::one()),
            SymbolicGroup::Cyclic { n } => Some(BigInt::from(*n)),
            SymbolicGroup::Symmetric { n } => Some(factorial(*n)),
            SymbolicGroup::Finite { order, .. } => Some(BigInt::from(*order)),
            SymbolicGroup::Product { factors } => factors.iter().map(SymbolicGroup::order).product(),
            SymbolicGroup::Semidirect { normal, acting } => Some(normal.order()? * acting.order()?),
            SymbolicGroup::HomGroup { order, .. } => order.map(BigInt::from),
            SymbolicGroup::Named { .. } | SymbolicGroup::Circle => None,
        }
    }

    /// Citations of the named leaves.
    pub fn citations(&self) -> Vec<&str> {
        match self {
            SymbolicGroup::Named { citation, .. } => vec![citation.as_str()],
            SymbolicGroup::Product { factors } => factors.iter().flat_map(SymbolicGroup::citations).collect(),
            SymbolicGroup::Semidirect { normal, acting } => {
                let mut c = normal.citations();
                c.extend(acting.citations());
                c
            }
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for SymbolicGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicGroup::Trivial => write!(f, "1"),
            SymbolicGroup::Cyclic { n } => write!(f, "Z/{n}"),
            SymbolicGroup::Symmetric { n } => write!(f, "S_{n}"),
            SymbolicGroup::Finite { label, .. } => write!(f, "{label}"),
            SymbolicGroup::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|g| format!("{g}")).collect();
                write!(f, "({})", parts.join(" x "))
            }
            SymbolicGroup::Semidirect { normal, acting } => write!(f, "({normal} x| {acting})"),
            SymbolicGroup::HomGroup { source, target, .. } => write!(f, "Hom({source}, {target})"),
            SymbolicGroup::Named { name, .. } => write!(f, "{name}"),
            SymbolicGroup::Circle => write!(f, "S^1"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplification() {
        let g = SymbolicGroup::product(vec![
            SymbolicGroup::Trivial,
            SymbolicGroup::Cyclic { n: 1 },
            SymbolicGroup::product(vec![SymbolicGroup::Symmetric { n: 3 }, SymbolicGroup::Cyclic { n: 2 }]),
        ]);
        assert_eq!(g.order(), Some(BigInt::from(12)));
        assert_eq!(g.to_string(), "(S_3 x Z/2)");
        let s = SymbolicGroup::semidirect(SymbolicGroup::Trivial, SymbolicGroup::Trivial);
        assert!(s.is_trivial());
        let named = SymbolicGroup::semidirect(
            SymbolicGroup::Trivial,
            SymbolicGroup::Named { name: "Q".into(), citation: "c".into() },
        );
        assert_eq!(named.order(), None);
        assert_eq!(named.citations(), vec!["c"]);
    }
}
