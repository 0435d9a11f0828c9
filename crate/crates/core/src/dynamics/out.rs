//! Outer automorphism groups of Bernoulli crossed products and orbit
//! equivalence relations, assembled from their finite ingredients.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::claim::CertifiedClaim;
use crate::cohom::{abelianize, Abelianization};
use crate::dynamics::atomic::{aut_atomic, aut_star_quotient, compose, AtomicSpace, FiniteAction, Perm};
use crate::dynamics::symbolic::SymbolicGroup;
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::groups::element::GroupElement;
use crate::groups::presentation::Presentation;
use crate::groups::registry::{AutQuotient, GroupPair, Registry};
use crate::groups::subgroup::SubgroupSpec;
use crate::groups::words::Word;
use crate::malnorm::condition::{condition_report, ConditionKind, Truncation};

/// `G / <<G_0>>` abelianized, with its character group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeCharacters {
    pub quotient: Abelianization,
    pub group: SymbolicGroup,
}

impl RelativeCharacters {
    /// `|Hom(G/<<G_0>>, C)|` for a finite abelian `C` listed elementwise.
    pub fn hom_order(&self, center: &[Perm]) -> BigInt {
        let torsion: BigInt = self
            .quotient
            .torsion
            .iter()
            .map(|d| {
                let d = d.to_u64().expect("invariant factor fits in u64");
                BigInt::from(center.iter().filter(|z| perm_pow(z, d).iter().enumerate().all(|(i, &j)| i == j)).count())
            })
            .product();
        torsion * BigInt::from(center.len()).pow(self.quotient.free_rank as u32)
    }
}

fn perm_pow(p: &Perm, e: u64) -> Perm {
    let mut out: Perm = (0..p.len()).collect();
    for _ in 0..e {
        out = compose(p, &out);
    }
    out
}

/// Characters of `<generators | relators>` that vanish on the given words.
pub fn relative_characters(pres: &Presentation, killed: &[Word]) -> Result<RelativeCharacters> {
    let mut relators = pres.relators.clone();
    relators.extend(killed.iter().cloned());
    let quotient = abelianize(pres.rank(), &relators)?;
    Ok(RelativeCharacters {
        group: SymbolicGroup::characters_of(&quotient),
        quotient,
    })
}

/// `Hom(G/<<G_0>>, S^1)` from the registry presentation of `G` with the
/// generators of `G_0` added as relators.
pub fn rel_char_group(registry: &Registry, pair: &GroupPair) -> Result<RelativeCharacters> {
    let pres = pair.presentation(registry)?;
    let words = pair.subgroup_words(&pres)?;
    relative_characters(&pres, &words)
}

/// An evaluated formula with its certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutResult {
    pub group: SymbolicGroup,
    /// The second reading for two atoms of weight `1/2`, when it applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wreath: Option<SymbolicGroup>,
    pub claim: CertifiedClaim,
}

fn axiom_claim(a: &crate::groups::registry::Axiom) -> Result<CertifiedClaim> {
    CertifiedClaim::axiom(a.statement.clone(), a.citation.clone())
}

fn out_formula_axiom(axioms: &[crate::groups::registry::Axiom]) -> Result<CertifiedClaim> {
    match axioms.iter().find(|a| a.id == "out-formula") {
        Some(a) => axiom_claim(a),
        None => Ok(CertifiedClaim::evidence(
            "the outer automorphism formula applies",
            [("note", json!("no registry axiom covers this pair"))],
        )),
    }
}

/// `Aut(G_0 ⊂ G)/Ad G_0` as a group and a claim.
fn aut_quotient_part(q: &AutQuotient, pair: Option<&GroupPair>) -> Result<(SymbolicGroup, CertifiedClaim)> {
    let group = if q.group == "trivial" {
        SymbolicGroup::Trivial
    } else {
        let citation: Vec<&str> = q.axioms.iter().map(|a| a.citation.as_str()).collect();
        SymbolicGroup::Named {
            name: q.group.clone(),
            citation: citation.join("; "),
        }
    };
    let mut children = q.axioms.iter().map(axiom_claim).collect::<Result<Vec<_>>>()?;
    if let Some(twist) = pair.map(determinant_twist).transpose()?.flatten() {
        children.push(twist);
    }
    let claim = CertifiedClaim::aggregate(format!("Aut(G0 ⊂ G)/Ad G0 = {group}"), children)
        .with_data(json!({ "note": q.note }));
    Ok((group, claim))
}

/// For `±A^Z` inside a determinant-one ambient group, checks that conjugating
/// by `diag(-1, 1, ..., 1)` does not preserve the subgroup.
fn determinant_twist(pair: &GroupPair) -> Result<Option<CertifiedClaim>> {
    let SubgroupSpec::SignedCyclic { a } = &pair.subgroup else {
        return Ok(None);
    };
    let n = a.rows();
    let mut t = IntMatrix::identity(n);
    t.set(0, 0, -BigInt::one());
    let conj = t.try_mul(a)?.try_mul(&t)?;
    let element = if pair.is_affine() {
        GroupElement::linear_only(conj.clone())
    } else {
        GroupElement::matrix(conj.clone())
    };
    let inside = pair.subgroup.membership(&element)?.is_member();
    Ok(Some(
        CertifiedClaim::decided("conjugation by diag(-1, 1, ..., 1) moves G0", !inside)
            .with_data(json!({ "conjugate_of_generator": conj })),
    ))
}

fn hypothesis(pair: &GroupPair, kind: ConditionKind, truncation: &Truncation) -> Result<CertifiedClaim> {
    let report = condition_report(pair, kind, truncation)?;
    if report.any_refuted() {
        return Err(Error::Precondition(format!(
            "{} fails condition {kind}:\n{}",
            pair.id,
            report.claim.render_text()
        )));
    }
    Ok(report.claim)
}

/// `Hom(G/G_0 → Z(K)) ⋊ (Aut(G_0 ⊂ G)/Ad G_0 × Aut*(K ↷ X_0)/K)`.
pub fn out_equiv_relation(
    registry: &Registry,
    pair: &GroupPair,
    action: &FiniteAction,
    space: &AtomicSpace,
    truncation: &Truncation,
) -> Result<OutResult> {
    let condition = hypothesis(pair, ConditionKind::B, truncation)?;
    if !action.is_faithful() {
        return Err(Error::Precondition(format!(
            "{} acts with a kernel: {} permutations for order {}",
            action.name,
            action.elements().len(),
            action.order
        )));
    }
    let faithful = CertifiedClaim::computed(format!("{} acts faithfully on the atoms", action.name))
        .with_data(json!({ "order": action.order }));

    let chars = rel_char_group(registry, pair)?;
    let center = action.center();
    let hom_order = chars.hom_order(&center);
    let hom = SymbolicGroup::HomGroup {
        source: format!("G/<<G0>> = {}", chars.quotient.describe()),
        target: format!("Z({})", action.name),
        order: hom_order.to_u64(),
    }
    .simplify();
    let pres = pair.presentation(registry)?;
    let hom_claim = CertifiedClaim::aggregate(
        format!("Hom(G/G0, Z(K)) has order {hom_order}"),
        vec![
            CertifiedClaim::computed(format!("G/<<G0>> abelianizes to {}", chars.quotient.describe())),
            registry.completeness_claim(&pres)?,
        ],
    )
    .with_data(json!({ "center_order": center.len() }));

    let q = pair
        .aut_quotient
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("{} has no recorded automorphism quotient", pair.id)))?;
    let (aut_q, aut_q_claim) = aut_quotient_part(q, Some(pair))?;

    let star = aut_star_quotient(action, space)?;
    let star_claim = CertifiedClaim::computed(format!("Aut*(K ↷ X0)/K = {}", star.group)).with_data(json!({
        "normalizer_order": star.normalizer_order,
        "subgroup_order": star.subgroup_order,
        "weight_preserving": star.ambient_order,
    }));

    let group = SymbolicGroup::semidirect(hom, SymbolicGroup::product(vec![aut_q, star.group]));
    let claim = CertifiedClaim::aggregate(
        format!("Out of the orbit equivalence relation of {} = {group}", pair.id),
        vec![condition, faithful, hom_claim, aut_q_claim, star_claim, out_formula_axiom(&pair.axioms)?],
    )
    .with_data(json!({ "group": group, "order": group.order().map(|o| o.to_string()) }));
    Ok(OutResult {
        group,
        wreath: None,
        claim,
    })
}

fn is_two_halves(space: &AtomicSpace) -> bool {
    let half = num_rational::BigRational::new(1.into(), 2.into());
    space.len() == 2 && space.atoms().iter().all(|a| a.weight == half)
}

/// `(Char(G) ⋊ Aut(G_0 ⊂ G)/Ad G_0) × Aut(X_0, μ_0)` for a registry pair,
/// matrix or symbolic.
///
/// For two atoms of weight `1/2` the crossed product is also the group algebra
/// of `H = (⊕_{G/G_0} Z/2) ⋊ G`, and `Char(H) ⋊ Out(H)` is evaluated alongside:
/// `H` abelianizes to `Z/2 x G^ab`, the `Z/2` being the coinvariants of the
/// permutation module over the transitive set `G/G_0`.
pub fn out_factor(registry: &Registry, id: &str, space: &AtomicSpace, truncation: &Truncation) -> Result<OutResult> {
    let aut_x = aut_atomic(space);
    let aut_x_claim = CertifiedClaim::computed(format!("Aut(X0, μ0) = {aut_x}"))
        .with_data(json!({ "multiplicities": space.multiplicities() }));

    let (id, char_g, char_claim, aut_q, aut_q_claim, hypotheses, axioms) = if registry.is_symbolic(id) {
        let sp = registry.symbolic(id)?;
        let family: Vec<CertifiedClaim> = sp
            .axioms
            .iter()
            .filter(|a| a.id != "out-formula")
            .map(axiom_claim)
            .collect::<Result<_>>()?;
        let hypotheses = CertifiedClaim::aggregate(format!("{} lies in a family satisfying the hypotheses", sp.id), family);
        let (aut_q, aut_q_claim) = aut_quotient_part(&sp.aut_quotient, None)?;
        let char_claim = CertifiedClaim::aggregate("Char(G) = 1", sp.aut_quotient.axioms.iter().map(axiom_claim).collect::<Result<_>>()?);
        (sp.id, SymbolicGroup::Trivial, char_claim, aut_q, aut_q_claim, hypotheses, sp.axioms)
    } else {
        let pair = registry.build_example(id)?;
        let hypotheses = hypothesis(&pair, ConditionKind::D, truncation)?;
        let pres = pair.presentation(registry)?;
        let ab = abelianize(pres.rank(), &pres.relators)?;
        let char_g = SymbolicGroup::characters_of(&ab);
        let char_claim = CertifiedClaim::aggregate(
            format!("Char(G) = {char_g}"),
            vec![
                CertifiedClaim::computed(format!("G abelianizes to {}", ab.describe())),
                registry.completeness_claim(&pres)?,
            ],
        );
        let q = pair
            .aut_quotient
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("{} has no recorded automorphism quotient", pair.id)))?;
        let (aut_q, aut_q_claim) = aut_quotient_part(q, Some(&pair))?;
        (pair.id.clone(), char_g, char_claim, aut_q, aut_q_claim, hypotheses, pair.axioms.clone())
    };

    let group = SymbolicGroup::product(vec![
        SymbolicGroup::semidirect(char_g.clone(), aut_q.clone()),
        aut_x,
    ]);
    let mut children = vec![hypotheses, char_claim, aut_q_claim, aut_x_claim, out_formula_axiom(&axioms)?];
    let wreath = if is_two_halves(space) {
        let char_h = SymbolicGroup::product(vec![SymbolicGroup::Cyclic { n: 2 }, char_g]);
        let reading = SymbolicGroup::semidirect(char_h, aut_q);
        let agree = match (reading.order(), group.order()) {
            (Some(a), Some(b)) => CertifiedClaim::decided("Char(H) ⋊ Out(H) and the main formula have the same order", a == b),
            _ => CertifiedClaim::computed("Char(H) ⋊ Out(H) has the same symbolic factors as the main formula"),
        };
        children.push(agree.with_data(json!({ "wreath_reading": reading.to_string() })));
        Some(reading)
    } else {
        None
    };
    let claim = CertifiedClaim::aggregate(format!("Out of the Bernoulli crossed product of {id} = {group}"), children)
        .with_data(json!({
            "group": group,
            "order": group.order().map(|o| o.to_string()),
            "fundamental_group": "trivial",
        }));
    Ok(OutResult { group, wreath, claim })
}
