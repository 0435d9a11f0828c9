//! Conjugate intersections `g G_0 g^{-1} ∩ G_0` and bounded malnormality scans.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::claim::CertifiedClaim;
use crate::error::{Error, Result};
use crate::groups::ball::word_ball;
use crate::groups::element::GroupElement;
use crate::groups::registry::GroupPair;
use crate::groups::subgroup::{MembershipOracle, SubgroupSpec, Witness};
use crate::malnorm::eigenline::{frame_soundness, pair_frame, EigenlineMapping, Frame};
use crate::numfield::has_cyclotomic_factor;

/// How a single conjugate intersection was settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Some frame line is not sent to an eigenline.
    EigenlineFinite { line: usize },
    /// A nonzero translation cannot be fixed by any nontrivial power.
    TranslationFinite,
    /// `g T^k g^{-1}` lies in `G_0` for the test element `T` of infinite order.
    Infinite { power: u64, witness: Witness },
    /// Frame lines are permuted and no power up to the bound conjugates into `G_0`.
    Inconclusive { mapping: EigenlineMapping },
}

/// Precomputed data for repeated intersection tests on one pair.
pub struct IntersectionEngine<'a> {
    pair: &'a GroupPair,
    oracle: MembershipOracle<'a>,
    frame: Frame,
    soundness: CertifiedClaim,
    translations_finite: bool,
    test_element: GroupElement,
}

impl<'a> IntersectionEngine<'a> {
    pub fn new(pair: &'a GroupPair) -> Result<Self> {
        let frame = pair_frame(pair)?;
        let soundness = frame_soundness(pair)?;
        let translations_finite = match &pair.subgroup {
            SubgroupSpec::SignedCyclic { a } => !has_cyclotomic_factor(&a.char_poly()?)?,
            _ => false,
        };
        let t = frame.test_matrix.clone();
        let test_element = if pair.is_affine() {
            GroupElement::linear_only(t)
        } else {
            GroupElement::matrix(t)
        };
        Ok(IntersectionEngine {
            pair,
            oracle: pair.subgroup.oracle()?,
            frame,
            soundness,
            translations_finite,
            test_element,
        })
    }

    pub fn soundness(&self) -> &CertifiedClaim {
        &self.soundness
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn is_member(&self, g: &GroupElement) -> Result<bool> {
        Ok(self.oracle.decide(g)?.is_member())
    }

    /// Decides the intersection for `g`, which must lie outside `G_0`.
    pub fn verdict(&self, g: &GroupElement, exp_bound: u64) -> Result<Verdict> {
        if self.is_member(g)? {
            return Err(Error::Precondition(format!("{g} lies in the subgroup of {}", self.pair.id)));
        }
        let nonzero_translation = g.translation().is_some_and(|t| !t.is_zero());
        if nonzero_translation && self.translations_finite {
            // (x,h)(0,±A^n)(x,h)^{-1} = (x ∓ h A^n h^{-1} x, ...) needs an eigenvalue ±1 of A^n
            return Ok(Verdict::TranslationFinite);
        }
        let mapping = self.frame.map(g.linear())?;
        if let EigenlineMapping::None { line } = mapping {
            if self.soundness.status.is_computed() && !nonzero_translation {
                return Ok(Verdict::EigenlineFinite { line });
            }
        }
        let conj = self.test_element.conjugate(g)?;
        let mut p = conj.clone();
        for k in 1..=exp_bound {
            if let crate::groups::Membership::Yes { witness } = self.oracle.decide(&p)? {
                return Ok(Verdict::Infinite { power: k, witness });
            }
            p = p.compose(&conj)?;
        }
        Ok(Verdict::Inconclusive { mapping })
    }
}

fn verdict_claim(g: &GroupElement, v: &Verdict, exp_bound: u64) -> CertifiedClaim {
    let s = format!("g G0 g^-1 ∩ G0 is finite for g = {g}");
    let data = json!({ "g": g, "verdict": v });
    match v {
        Verdict::EigenlineFinite { .. } | Verdict::TranslationFinite => CertifiedClaim::computed(s),
        Verdict::Infinite { .. } => CertifiedClaim::refuted(s),
        Verdict::Inconclusive { .. } => CertifiedClaim::evidence(s, [("exp_bound", json!(exp_bound))]),
    }
    .with_data(data)
}

/// Exact test of one conjugate intersection. `g` must lie outside `G_0`.
pub fn conjugate_intersection(pair: &GroupPair, g: &GroupElement, exp_bound: u64) -> Result<CertifiedClaim> {
    pair.ambient.check_member(g)?;
    let engine = IntersectionEngine::new(pair)?;
    let v = engine.verdict(g, exp_bound)?;
    Ok(verdict_claim(g, &v, exp_bound).with_children(vec![engine.soundness.clone()]))
}

/// Counts from a bounded scan.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub ball_size: usize,
    pub members_skipped: usize,
    pub scanned: usize,
    pub eigenline_certified: usize,
    pub translation_certified: usize,
    pub fallback_infinite: usize,
    pub inconclusive: usize,
}

impl ScanSummary {
    /// Fraction of scanned elements settled without the exponent fallback.
    pub fn exact_fraction(&self) -> f64 {
        if self.scanned == 0 {
            1.0
        } else {
            (self.eigenline_certified + self.translation_certified) as f64 / self.scanned as f64
        }
    }
}

/// Runs [`conjugate_intersection`] over the word ball of the given radius.
///
/// The full statement quantifies over all `g`, so a clean scan is EVIDENCE with
/// the bounds recorded; any infinite intersection is REFUTED with witnesses.
pub fn malnormal_scan(pair: &GroupPair, radius: usize, exp_bound: u64) -> Result<CertifiedClaim> {
    let engine = IntersectionEngine::new(pair)?;
    let ball = word_ball(&pair.ambient, radius)?;
    let results: Vec<Option<Verdict>> = ball
        .elements
        .par_iter()
        .map(|g| {
            if engine.is_member(g)? {
                Ok(None)
            } else {
                engine.verdict(g, exp_bound).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    let mut summary = ScanSummary {
        ball_size: ball.len(),
        ..Default::default()
    };
    let mut refutations = Vec::new();
    let mut open = Vec::new();
    for (idx, r) in results.iter().enumerate() {
        let Some(v) = r else {
            summary.members_skipped += 1;
            continue;
        };
        summary.scanned += 1;
        match v {
            Verdict::EigenlineFinite { .. } => summary.eigenline_certified += 1,
            Verdict::TranslationFinite => summary.translation_certified += 1,
            Verdict::Infinite { .. } => {
                summary.fallback_infinite += 1;
                refutations.push(idx);
            }
            Verdict::Inconclusive { .. } => {
                summary.inconclusive += 1;
                open.push(idx);
            }
        }
    }
    let statement = format!(
        "g G0 g^-1 ∩ G0 is finite for every g outside G0 in {}",
        pair.id
    );
    let word = |i: usize| ball.words[i].display(&pair.ambient.generator_names);
    let mut children = vec![engine.soundness.clone()];
    for &i in refutations.iter().chain(&open).take(20) {
        let c = verdict_claim(&ball.elements[i], results[i].as_ref().expect("scanned"), exp_bound);
        let mut data = c.data.clone();
        data["word"] = json!(word(i));
        children.push(c.with_data(data));
    }
    let bounds = [("radius", json!(radius)), ("exp_bound", json!(exp_bound))];
    let claim = if refutations.is_empty() {
        CertifiedClaim::evidence(statement, bounds)
    } else {
        CertifiedClaim::refuted(statement)
    };
    Ok(claim.with_children(children).with_data(json!({
        "summary": summary,
        "exact_fraction": summary.exact_fraction(),
        "radius": radius,
        "exp_bound": exp_bound,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::IntMatrix;
    use crate::groups::Registry;

    #[test]
    fn golden_unipotent_is_finite() {
        let pair = Registry::bundled().build_example("gl2-golden").unwrap();
        let g = GroupElement::matrix(IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]));
        let c = conjugate_intersection(&pair, &g, 20).unwrap();
        assert!(c.status.is_computed());
        let a = GroupElement::matrix(pair.cyclic_generator().unwrap().clone());
        assert!(matches!(conjugate_intersection(&pair, &a, 20), Err(Error::Precondition(_))));
    }

    #[test]
    fn golden_swap_inverts_a() {
        // [[0,1],[1,0]] conjugates A to A^-1, so the intersection is all of ±A^Z
        let pair = Registry::bundled().build_example("gl2-golden").unwrap();
        let g = GroupElement::matrix(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        let c = conjugate_intersection(&pair, &g, 20).unwrap();
        assert!(c.status.is_refuted());
    }

    #[test]
    fn gl4_transposition() {
        let pair = Registry::bundled().build_example("gl4-x4px1").unwrap();
        let mut p = IntMatrix::zeros(4, 4);
        for (i, j) in [(0, 1), (1, 0), (2, 2), (3, 3)] {
            p.set(i, j, 1.into());
        }
        let c = conjugate_intersection(&pair, &GroupElement::matrix(p), 20).unwrap();
        assert!(c.status.is_computed());
    }

    #[test]
    fn affine_translation_is_finite() {
        let pair = Registry::bundled().build_example("z4-sl4").unwrap();
        let g = GroupElement::translation_only(crate::exactlin::IntVector::unit(4, 2));
        assert!(conjugate_intersection(&pair, &g, 5).unwrap().status.is_computed());
    }
}
