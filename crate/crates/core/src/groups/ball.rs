//! Word balls in the Cayley graph.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::Result;
use crate::groups::ambient::AmbientGroupSpec;
use crate::groups::element::GroupElement;
use crate::groups::words::{Letter, Word};

/// Elements of word length at most the radius, each with a shortlex-minimal word.
#[derive(Clone, Debug)]
pub struct Ball {
    pub radius: usize,
    pub elements: Vec<GroupElement>,
    pub words: Vec<Word>,
    /// `layer_starts[r]` is the index of the first element of word length `r`.
    pub layer_starts: Vec<usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, &Word)> {
        self.elements.iter().zip(&self.words)
    }
}

/// Alphabet `g1, g1^-1, g2, g2^-1, ...`, skipping the inverse of an involution.
pub fn alphabet(generators: &[GroupElement]) -> Result<Vec<(Letter, GroupElement)>> {
    let mut out = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        out.push((Letter::new(i, false), g.clone()));
        let gi = g.invert()?;
        if gi != *g {
            out.push((Letter::new(i, true), gi));
        }
    }
    Ok(out)
}

/// Breadth-first enumeration. The order is canonical: by word length, then by
/// the order in which the shortlex-minimal words are discovered.
pub fn word_ball(ambient: &AmbientGroupSpec, radius: usize) -> Result<Ball> {
    word_ball_from(&ambient.generators, &ambient.identity(), radius)
}

pub fn word_ball_from(
    generators: &[GroupElement],
    identity: &GroupElement,
    radius: usize,
) -> Result<Ball> {
    let letters = alphabet(generators)?;
    let mut seen: HashSet<GroupElement> = HashSet::new();
    seen.insert(identity.clone());
    let mut elements = vec![identity.clone()];
    let mut words = vec![Word::empty()];
    let mut layer_starts = vec![0];
    let mut frontier = 0..1;
    for _ in 0..radius {
        let products: Vec<Vec<(GroupElement, Word)>> = frontier
            .clone()
            .into_par_iter()
            .map(|idx| {
                letters
                    .iter()
                    .map(|(l, g)| {
                        let e = elements[idx].compose(g)?;
                        let mut w = words[idx].clone();
                        w.0.push(*l);
                        Ok((e, w))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let start = elements.len();
        layer_starts.push(start);
        for (e, w) in products.into_iter().flatten() {
            if seen.insert(e.clone()) {
                elements.push(e);
                words.push(w);
            }
        }
        frontier = start..elements.len();
        if frontier.is_empty() {
            break;
        }
    }
    Ok(Ball {
        radius,
        elements,
        words,
        layer_starts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ambient::Family;

    #[test]
    fn small_balls() {
        let gl2 = AmbientGroupSpec::standard(Family::Gl, 2).unwrap();
        let b0 = word_ball(&gl2, 0).unwrap();
        assert_eq!(b0.len(), 1);
        assert!(b0.elements[0].is_identity());
        let b1 = word_ball(&gl2, 1).unwrap();
        // identity, e12^{±1}, e21^{±1}, d1 (an involution)
        assert_eq!(b1.len(), 6);
        let mut last = 0;
        for r in 0..4 {
            let b = word_ball(&gl2, r).unwrap();
            assert!(b.len() >= last);
            last = b.len();
        }
    }

    #[test]
    fn words_evaluate_to_elements() {
        let sl3 = AmbientGroupSpec::standard(Family::Sl, 3).unwrap();
        let b = word_ball(&sl3, 2).unwrap();
        for (g, w) in b.iter() {
            assert_eq!(&w.evaluate(&sl3.generators, &sl3.identity()).unwrap(), g);
        }
    }
}
