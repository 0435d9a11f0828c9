//! Purely atomic probability spaces and finite groups acting on their atoms.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cohom::parse_rational;
use crate::dynamics::symbolic::SymbolicGroup;
use crate::error::{Error, Result};

/// Permutation of atom indices, `p[i]` is the image of `i`.
pub type Perm = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub label: String,
    #[serde(with = "crate::intrepr::rational")]
    pub weight: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomicSpace {
    atoms: Vec<Atom>,
}

/// Largest atom count for which permutation groups are enumerated.
pub const MAX_ATOMS: usize = 8;

impl AtomicSpace {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        let atoms = weights
            .into_iter()
            .enumerate()
            .map(|(i, weight)| Atom {
                label: format!("a{i}"),
                weight,
            })
            .collect();
        Self::from_atoms(atoms)
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidInput("an atomic space needs at least one atom".into()));
        }
        let one = BigRational::one();
        if let Some(a) = atoms.iter().find(|a| a.weight <= BigRational::zero() || a.weight > one) {
            return Err(Error::InvalidInput(format!("weight {} of {} is not in (0, 1]", a.weight, a.label)));
        }
        let total: BigRational = atoms.iter().map(|a| a.weight.clone()).sum();
        if total != one {
            return Err(Error::InvalidInput(format!("weights sum to {total}, not 1")));
        }
        Ok(AtomicSpace { atoms })
    }

    /// Comma-separated `p/q` weights.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.split(',').map(parse_rational).collect::<Result<_>>()?)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atom indices grouped by weight, heaviest class first.
    pub fn weight_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<&BigRational, Vec<usize>> = BTreeMap::new();
        for (i, a) in self.atoms.iter().enumerate() {
            classes.entry(&a.weight).or_default().push(i);
        }
        classes.into_values().rev().collect()
    }

    /// Multiplicities of the weight classes, in a canonical order.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.weight_classes().iter().map(Vec::len).collect();
        m.sort_unstable();
        m
    }

    /// Every weight-preserving permutation.
    pub fn weight_preserving(&self) -> Result<Vec<Perm>> {
        if self.len() > MAX_ATOMS {
            return Err(Error::Unsupported(format!("more than {MAX_ATOMS} atoms")));
        }
        let mut out = vec![(0..self.len()).collect::<Perm>()];
        for class in self.weight_classes() {
            let mut next = Vec::new();
            for p in &out {
                for images in permutations(&class) {
                    let mut q = p.clone();
                    for (&src, &dst) in class.iter().zip(&images) {
                        q[src] = dst;
                    }
                    next.push(q);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Measure-preserving point maps of a purely atomic space permute atoms of equal
/// weight, so the group is the product of the symmetric groups of the classes.
pub fn aut_atomic(space: &AtomicSpace) -> SymbolicGroup {
    SymbolicGroup::product(
        space
            .multiplicities()
            .into_iter()
            .map(|m| SymbolicGroup::Symmetric { n: m as u64 })
            .collect(),
    )
}

pub fn compose(p: &Perm, q: &Perm) -> Perm {
    // (p ∘ q)(i) = p(q(i))
    q.iter().map(|&i| p[i]).collect()
}

pub fn invert(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

/// Closure of the generators under composition.
pub fn generate(generators: &[Perm], degree: usize) -> BTreeSet<Perm> {
    let id: Perm = (0..degree).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// A finite group given abstractly by its order and concretely by permutations
/// of the atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAction {
    pub name: String,
    pub order: u64,
    pub generators: Vec<Perm>,
}

impl FiniteAction {
    pub fn trivial(degree: usize) -> Self {
        FiniteAction {
            name: "trivial".into(),
            order: 1,
            generators: vec![(0..degree).collect()],
        }
    }

    /// `trivial`, `Z/m` (cycling atoms `0..m`), or `perm:` followed by
    /// `;`-separated generators written as comma-separated images.
    pub fn parse(spec: &str, degree: usize) -> Result<Self> {
        let spec = spec.trim();
        if spec == "trivial" {
            return Ok(Self::trivial(degree));
        }
        if let Some(m) = spec.strip_prefix("Z/") {
            let m: usize = m.parse().map_err(|_| Error::InvalidInput(format!("bad cyclic group {spec:?}")))?;
            if m == 0 || m > degree {
                return Err(Error::InvalidInput(format!("Z/{m} cannot cycle {degree} atoms")));
            }
            let mut g: Perm = (0..degree).collect();
            for (i, slot) in g.iter_mut().enumerate().take(m) {
                *slot = (i + 1) % m;
            }
            return Ok(FiniteAction {
                name: spec.into(),
                order: m as u64,
                generators: vec![g],
            });
        }
        if let Some(body) = spec.strip_prefix("perm:") {
            let generators = body
                .split(';')
                .map(|g| {
                    g.split(',')
                        .map(|i| i.trim().parse::<usize>())
                        .collect::<std::result::Result<Perm, _>>()
                        .map_err(|_| Error::InvalidInput(format!("bad permutation {g:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            for g in &generators {
                let mut sorted = g.clone();
                sorted.sort_unstable();
                if sorted != (0..degree).collect::<Vec<_>>() {
                    return Err(Error::InvalidInput(format!("{g:?} is not a permutation of {degree} atoms")));
                }
            }
            let order = generate(&generators, degree).len() as u64;
            return Ok(FiniteAction {
                name: spec.into(),
                order,
                generators,
            });
        }
        Err(Error::InvalidInput(format!("unknown compact group {spec:?}")))
    }

    pub fn degree(&self) -> usize {
        self.generators.first().map_or(0, Vec::len)
    }

    pub fn elements(&self) -> BTreeSet<Perm> {
        generate(&self.generators, self.degree())
    }

    /// The permutation image has as many elements as the group.
    pub fn is_faithful(&self) -> bool {
        self.elements().len() as u64 == self.order
    }

    pub fn preserves(&self, space: &AtomicSpace) -> bool {
        let w = space.atoms();
        self.degree() == space.len() && self.generators.iter().all(|g| g.iter().enumerate().all(|(i, &j)| w[i].weight == w[j].weight))
    }

    pub fn center(&self) -> Vec<Perm> {
        let all = self.elements();
        all.iter()
            .filter(|z| self.generators.iter().all(|g| compose(g, z) == compose(z, g)))
            .cloned()
            .collect()
    }
}

/// Order of `p` modulo the subgroup `k`.
fn order_modulo(p: &Perm, k: &BTreeSet<Perm>) -> u64 {
    let mut q = p.clone();
    let mut n = 1;
    while !k.contains(&q) {
        q = compose(p, &q);
        n += 1;
    }
    n
}

/// Result of the normalizer computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerQuotient {
    pub group: SymbolicGroup,
    pub normalizer_order: u64,
    pub subgroup_order: u64,
    pub ambient_order: u64,
}

/// `N(K) / K` inside the weight-preserving permutations of the atoms.
pub fn aut_star_quotient(action: &FiniteAction, space: &AtomicSpace) -> Result<NormalizerQuotient> {
    if !action.preserves(space) {
        return Err(Error::InvalidInput(format!("{} does not preserve the weights", action.name)));
    }
    let k = action.elements();
    let ambient = space.weight_preserving()?;
    let normalizer: Vec<&Perm> = ambient
        .iter()
        .filter(|s| {
            let si = invert(s);
            action.generators.iter().all(|g| k.contains(&compose(&compose(s, g), &si)))
        })
        .collect();
    let quotient = (normalizer.len() / k.len()) as u64;
    let group = if k.len() == 1 {
        aut_atomic(space)
    } else if quotient == 1 {
        SymbolicGroup::Trivial
    } else if normalizer.iter().any(|s| order_modulo(s, &k) == quotient) {
        SymbolicGroup::Cyclic { n: quotient }
    } else {
        SymbolicGroup::Finite {
            order: quotient,
            label: format!("noncyclic group of order {quotient}"),
        }
    };
    Ok(NormalizerQuotient {
        group,
        normalizer_order: normalizer.len() as u64,
        subgroup_order: k.len() as u64,
        ambient_order: ambient.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn atomic_automorphisms() {
        let aut = |w: &str| aut_atomic(&AtomicSpace::parse(w).unwrap());
        assert!(aut("1/2,1/3,1/6").is_trivial());
        assert_eq!(aut("1/4,1/4,1/2"), SymbolicGroup::Symmetric { n: 2 });
        assert_eq!(aut("1/3,1/3,1/3").order(), Some(BigInt::from(6)));
        assert!(AtomicSpace::parse("1/2,1/3").is_err());
        assert!(AtomicSpace::parse("3/2,-1/2").is_err());
    }

    #[test]
    fn normalizers() {
        let two = AtomicSpace::parse("1/2,1/2").unwrap();
        let swap = FiniteAction::parse("Z/2", 2).unwrap();
        assert!(swap.is_faithful());
        assert!(aut_star_quotient(&swap, &two).unwrap().group.is_trivial());

        let three = AtomicSpace::parse("1/3,1/3,1/3").unwrap();
        let cycle = FiniteAction::parse("Z/3", 3).unwrap();
        assert_eq!(aut_star_quotient(&cycle, &three).unwrap().group, SymbolicGroup::Cyclic { n: 2 });
        assert_eq!(cycle.center().len(), 3);

        let distinct = AtomicSpace::parse("1/2,1/3,1/6").unwrap();
        assert!(aut_star_quotient(&FiniteAction::trivial(3), &distinct).unwrap().group.is_trivial());
        assert!(aut_star_quotient(&cycle, &distinct).is_err());
    }

    #[test]
    fn declared_order_detects_unfaithful_actions() {
        let mut k = FiniteAction::parse("Z/3", 3).unwrap();
        k.order = 6;
        assert!(!k.is_faithful());
        assert_eq!(FiniteAction::parse("perm:1,0,2;0,2,1", 3).unwrap().order, 6);
    }
}
