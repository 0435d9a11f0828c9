//! The bundled registry of fields, presentations, example pairs and axioms.
//!
//! The registry is a versioned JSON document with four sections: `fields`,
//! `presentations`, `examples` and `axioms`. Matrices are row-major integer
//! arrays and polynomials are ascending coefficient arrays.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::claim::CertifiedClaim;
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, IntPolynomial};
use crate::groups::ambient::{doubling, symplectic_form, AmbientGroupSpec, Family};
use crate::groups::element::GroupElement;
use crate::groups::presentation::{self, Completeness, Presentation};
use crate::groups::subgroup::{Coords, SubgroupSpec, UnitEmbedding};
use crate::groups::words::{decompose, Word};
use crate::numfield::{GaloisAction, NumberField, NumberFieldElement, ZBasis};

const BUNDLED: &str = include_str!("../../data/registry.json");

/// A literature fact consumed without proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axiom {
    pub id: String,
    pub statement: String,
    pub citation: String,
    #[serde(default)]
    pub scope: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldEntry {
    pub id: String,
    pub modulus: Vec<i64>,
    pub basis: Vec<Vec<i64>>,
    pub units: Vec<Vec<i64>>,
    pub galois: Vec<Vec<i64>>,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresentationEntry {
    Explicit {
        id: String,
        generators: Vec<String>,
        images: Vec<Vec<Vec<i64>>>,
        relators: Vec<String>,
        completeness: Completeness,
    },
    Family {
        id: String,
        family: String,
        n: usize,
        axiom: String,
    },
}

impl PresentationEntry {
    fn id(&self) -> &str {
        match self {
            PresentationEntry::Explicit { id, .. } | PresentationEntry::Family { id, .. } => id,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SubgroupEntry {
    SignedCyclic {
        #[serde(default)]
        a: Option<Vec<Vec<i64>>>,
        #[serde(default)]
        companion: Option<Vec<i64>>,
    },
    UnitEmbedding {
        field: String,
    },
    PointStabilizer,
    Translations,
    DoubledUnits {
        field: String,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmbientEntry {
    pub family: Family,
    /// A rank, or the string `"param"` for families indexed by `n`.
    pub n: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutQuotientEntry {
    pub group: String,
    pub axioms: Vec<String>,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Checks {
    #[serde(default)]
    pub det: Option<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExampleEntry {
    pub id: String,
    #[serde(default)]
    pub symbolic: bool,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub ambient: Option<AmbientEntry>,
    #[serde(default)]
    pub subgroup: Option<SubgroupEntry>,
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub presentation: Option<String>,
    #[serde(default)]
    pub subgroup_words_n2: Option<Vec<String>>,
    #[serde(default)]
    pub checks: Checks,
    #[serde(default)]
    pub axioms: Vec<String>,
    #[serde(default)]
    pub aut_quotient: Option<AutQuotientEntry>,
    #[serde(default)]
    pub provenance: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Registry {
    pub version: String,
    pub fields: Vec<FieldEntry>,
    pub presentations: Vec<PresentationEntry>,
    pub examples: Vec<ExampleEntry>,
    pub axioms: Vec<Axiom>,
}

/// The automorphism quotient `Aut(G_0 ⊂ G)/Ad G_0` as recorded for a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutQuotient {
    pub group: String,
    pub axioms: Vec<Axiom>,
    pub note: String,
}

/// An ambient group with a subgroup and the registry data attached to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPair {
    pub id: String,
    pub ambient: AmbientGroupSpec,
    pub subgroup: SubgroupSpec,
    /// Galois images of the generator of `Z[x]/(char_poly A)`, when registered.
    pub root_images: Vec<Coords>,
    pub presentation: Option<String>,
    /// Words for the subgroup generators when they are not obtained by decomposition.
    pub subgroup_words: Option<Vec<String>>,
    pub axioms: Vec<Axiom>,
    pub aut_quotient: Option<AutQuotient>,
    pub provenance: Vec<String>,
}

/// A registry pair known only through cited facts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicPair {
    pub id: String,
    pub description: String,
    pub axioms: Vec<Axiom>,
    pub aut_quotient: AutQuotient,
    pub provenance: Vec<String>,
}

fn matrix(rows: &[Vec<i64>]) -> Result<IntMatrix> {
    let n = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Registry("ragged matrix".into()));
    }
    Ok(IntMatrix::from_rows(rows))
}

/// Splits `name(n)` into `("name", Some(n))`.
pub fn split_param(id: &str) -> Result<(&str, Option<usize>)> {
    match id.find('(') {
        Some(open) if id.ends_with(')') => {
            let n = id[open + 1..id.len() - 1]
                .parse()
                .map_err(|_| Error::UnknownEntry(id.to_string()))?;
            Ok((&id[..open], Some(n)))
        }
        Some(_) => Err(Error::UnknownEntry(id.to_string())),
        None => Ok((id, None)),
    }
}

impl Registry {
    pub fn from_json(text: &str) -> Result<Self> {
        let r: Registry = serde_json::from_str(text).map_err(|e| Error::Registry(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Registry(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The registry compiled into the crate.
    pub fn bundled() -> &'static Registry {
        static REG: OnceLock<Registry> = OnceLock::new();
        REG.get_or_init(|| Registry::from_json(BUNDLED).expect("bundled registry is valid"))
    }

    fn validate(&self) -> Result<()> {
        for a in &self.axioms {
            if a.citation.trim().is_empty() {
                return Err(Error::Registry(format!("axiom {} has no citation", a.id)));
            }
        }
        for e in &self.examples {
            for id in &e.axioms {
                self.axiom(id)?;
            }
            if let Some(q) = &e.aut_quotient {
                for id in &q.axioms {
                    self.axiom(id)?;
                }
            }
        }
        for p in &self.presentations {
            if let PresentationEntry::Family { axiom, .. } = p {
                self.axiom(axiom)?;
            }
        }
        Ok(())
    }

    pub fn axiom(&self, id: &str) -> Result<&Axiom> {
        self.axioms
            .iter()
            .find(|a| a.id == id)
            .ok_or_else(|| Error::UnknownEntry(format!("axiom {id}")))
    }

    pub fn example_ids(&self) -> Vec<&str> {
        self.examples.iter().map(|e| e.id.as_str()).collect()
    }

    /// Ids of the explicitly listed presentations; parametric ones are not enumerated.
    pub fn presentation_ids(&self) -> Vec<&str> {
        self.presentations.iter().map(PresentationEntry::id).collect()
    }

    fn field_entry(&self, id: &str) -> Result<&FieldEntry> {
        self.fields
            .iter()
            .find(|f| f.id == id)
            .ok_or_else(|| Error::UnknownEntry(format!("field {id}")))
    }

    pub fn unit_embedding(&self, id: &str) -> Result<UnitEmbedding> {
        let e = self.field_entry(id)?;
        let field = NumberField::new(IntPolynomial::from_i64(&e.modulus))?;
        let elem = |c: &Vec<i64>| NumberFieldElement::from_i64(&field, c);
        let basis = ZBasis::new(&field, e.basis.iter().map(elem).collect())?;
        let units = e.units.iter().map(elem).collect();
        let galois = e
            .galois
            .iter()
            .map(|c| GaloisAction::new(elem(c)))
            .collect::<Result<Vec<_>>>()?;
        UnitEmbedding::new(id, &field, basis, units, galois)
    }

    pub fn field(&self, id: &str) -> Result<Arc<NumberField>> {
        NumberField::new(IntPolynomial::from_i64(&self.field_entry(id)?.modulus))
    }

    fn steinberg_axiom(&self) -> &str {
        "steinberg-presentation"
    }

    /// Resolves a presentation id. Besides the explicit entries, the parametric
    /// ids `steinberg-sl(n)`, `steinberg-gl(n)`, `affine-sl(n)` and `affine-gl(n)`
    /// are understood.
    pub fn presentation(&self, id: &str) -> Result<Presentation> {
        if let Some(entry) = self.presentations.iter().find(|p| p.id() == id) {
            return match entry {
                PresentationEntry::Explicit {
                    id,
                    generators,
                    images,
                    relators,
                    completeness,
                } => {
                    let rels = relators
                        .iter()
                        .map(|r| Word::parse(r, generators))
                        .collect::<Result<Vec<_>>>()?;
                    let imgs = images
                        .iter()
                        .map(|m| matrix(m).map(GroupElement::matrix))
                        .collect::<Result<Vec<_>>>()?;
                    Presentation::new(id.clone(), generators.clone(), rels, imgs, completeness.clone())
                }
                PresentationEntry::Family { id, family, n, axiom } => {
                    let mut p = match family.as_str() {
                        "steinberg-sl" => presentation::steinberg_sl(*n, axiom)?,
                        "steinberg-gl" => presentation::steinberg_gl(*n, axiom)?,
                        other => return Err(Error::Registry(format!("unknown presentation family {other}"))),
                    };
                    p.id = id.clone();
                    Ok(p)
                }
            };
        }
        let (name, n) = split_param(id)?;
        let n = n.ok_or_else(|| Error::UnknownEntry(format!("presentation {id}")))?;
        let ax = self.steinberg_axiom();
        let mut p = match name {
            "steinberg-sl" => presentation::steinberg_sl(n, ax)?,
            "steinberg-gl" => presentation::steinberg_gl(n, ax)?,
            "affine-sl" | "affine-gl" => {
                let base = match (name, n) {
                    ("affine-sl", 2) => self.presentation("sl2z-std")?,
                    ("affine-gl", 2) => self.presentation("gl2z")?,
                    ("affine-sl", _) => presentation::steinberg_sl(n, ax)?,
                    _ => presentation::steinberg_gl(n, ax)?,
                };
                presentation::semidirect(&base, id)?
            }
            _ => return Err(Error::UnknownEntry(format!("presentation {id}"))),
        };
        p.id = id.to_string();
        Ok(p)
    }

    /// Whether the relators of `p` present the group, as a claim.
    pub fn completeness_claim(&self, p: &Presentation) -> Result<CertifiedClaim> {
        let statement = format!("the relators of {} present the group", p.id);
        match &p.completeness {
            Completeness::Computed { note } => {
                Ok(CertifiedClaim::computed(statement).with_data(serde_json::json!({ "note": note })))
            }
            Completeness::Axiom { axiom } => {
                let a = self.axiom(axiom)?;
                CertifiedClaim::axiom(a.statement.clone(), a.citation.clone())
            }
        }
    }

    fn example_entry(&self, base: &str) -> Result<&ExampleEntry> {
        self.examples
            .iter()
            .find(|e| e.id == base)
            .ok_or_else(|| Error::UnknownEntry(format!("example {base}")))
    }

    fn aut_quotient(&self, e: &ExampleEntry) -> Result<Option<AutQuotient>> {
        e.aut_quotient
            .as_ref()
            .map(|q| {
                Ok(AutQuotient {
                    group: q.group.clone(),
                    axioms: q
                        .axioms
                        .iter()
                        .map(|a| self.axiom(a).cloned())
                        .collect::<Result<_>>()?,
                    note: q.note.clone(),
                })
            })
            .transpose()
    }

    pub fn symbolic(&self, id: &str) -> Result<SymbolicPair> {
        let e = self.example_entry(id)?;
        if !e.symbolic {
            return Err(Error::InvalidInput(format!("{id} is a matrix pair")));
        }
        Ok(SymbolicPair {
            id: e.id.clone(),
            description: e.description.clone(),
            axioms: e.axioms.iter().map(|a| self.axiom(a).cloned()).collect::<Result<_>>()?,
            aut_quotient: self
                .aut_quotient(e)?
                .ok_or_else(|| Error::Registry(format!("{id} lacks an automorphism quotient")))?,
            provenance: e.provenance.clone(),
        })
    }

    pub fn is_symbolic(&self, id: &str) -> bool {
        split_param(id)
            .ok()
            .and_then(|(base, _)| self.example_entry(base).ok())
            .is_some_and(|e| e.symbolic)
    }

    /// Builds a registry pair and checks its structural invariants.
    ///
    /// Parametric families take their rank as `name(n)` and default to `n = 2`.
    pub fn build_example(&self, id: &str) -> Result<GroupPair> {
        let (base, param) = split_param(id)?;
        let e = self.example_entry(base)?;
        if e.symbolic {
            return Err(Error::Unsupported(format!("{base} is symbolic and has no matrix model")));
        }
        let amb = e
            .ambient
            .as_ref()
            .ok_or_else(|| Error::Registry(format!("{base} has no ambient group")))?;
        let n = match (&amb.n, param) {
            (Value::Number(k), None) => k.as_u64().map(|k| k as usize),
            (Value::String(s), p) if s == "param" => Some(p.unwrap_or(2)),
            _ => None,
        }
        .ok_or_else(|| Error::UnknownEntry(id.to_string()))?;
        let ambient = AmbientGroupSpec::standard(amb.family, n)?;
        let entry = e
            .subgroup
            .as_ref()
            .ok_or_else(|| Error::Registry(format!("{base} has no subgroup")))?;
        let subgroup = match entry {
            SubgroupEntry::SignedCyclic { a, companion } => {
                let a = match (a, companion) {
                    (Some(rows), None) => matrix(rows)?,
                    (None, Some(p)) => IntMatrix::companion(&IntPolynomial::from_i64(p))?,
                    _ => return Err(Error::Registry(format!("{base}: give exactly one of a, companion"))),
                };
                SubgroupSpec::signed_cyclic(a)?
            }
            SubgroupEntry::UnitEmbedding { field } => SubgroupSpec::UnitEmbedding {
                embedding: self.unit_embedding(field)?,
            },
            SubgroupEntry::DoubledUnits { field } => {
                SubgroupSpec::doubled_units(self.unit_embedding(field)?)?
            }
            SubgroupEntry::PointStabilizer => SubgroupSpec::PointStabilizer,
            SubgroupEntry::Translations => SubgroupSpec::Translations,
        };
        let mut root_images = Vec::new();
        if let (Some(fid), SubgroupSpec::SignedCyclic { a }) = (&e.field, &subgroup) {
            let f = self.field_entry(fid)?;
            let cp = a.char_poly()?;
            if cp != IntPolynomial::from_i64(&f.modulus) {
                return Err(Error::CharPolyMismatch(format!("{base}: {cp} against field {fid}")));
            }
            root_images = f
                .galois
                .iter()
                .map(|c| Coords(c.iter().map(|&v| v.into()).collect()))
                .collect();
        }
        if let (Some(d), SubgroupSpec::SignedCyclic { a }) = (e.checks.det, &subgroup) {
            let det = a.det()?;
            if det != d.into() {
                return Err(Error::Registry(format!("{base}: recorded det {d}, computed {det}")));
            }
        }
        let pair = GroupPair {
            id: match param {
                Some(k) => format!("{base}({k})"),
                None if amb.n.is_string() => format!("{base}(2)"),
                None => base.to_string(),
            },
            ambient,
            subgroup,
            root_images,
            presentation: e.presentation.as_ref().map(|p| p.replace("param", &n.to_string())),
            subgroup_words: if n == 2 { e.subgroup_words_n2.clone() } else { None },
            axioms: e.axioms.iter().map(|a| self.axiom(a).cloned()).collect::<Result<_>>()?,
            aut_quotient: self.aut_quotient(e)?,
            provenance: e.provenance.clone(),
        };
        pair.verify()?;
        Ok(pair)
    }
}

impl GroupPair {
    pub fn is_affine(&self) -> bool {
        self.ambient.family.is_affine()
    }

    /// Generators of the subgroup as ambient elements. Point stabilizers and
    /// translation groups use the corresponding ambient generators.
    pub fn subgroup_generators(&self) -> Result<Vec<GroupElement>> {
        let wrap = |m: IntMatrix| {
            if self.is_affine() {
                GroupElement::linear_only(m)
            } else {
                GroupElement::matrix(m)
            }
        };
        let dim = self.ambient.dim();
        Ok(match &self.subgroup {
            SubgroupSpec::SignedCyclic { a } => vec![wrap(a.clone()), wrap(IntMatrix::scalar(dim, -1))],
            SubgroupSpec::UnitEmbedding { embedding } => {
                embedding.generator_matrices()?.into_iter().map(wrap).collect()
            }
            SubgroupSpec::DoubledUnits {
                embedding,
                transversal,
            } => {
                let mut out: Vec<GroupElement> =
                    transversal.iter().skip(1).cloned().map(wrap).collect();
                for h in embedding.generator_matrices()? {
                    out.push(wrap(doubling(&h)?));
                }
                out
            }
            SubgroupSpec::PointStabilizer => self
                .ambient
                .generators
                .iter()
                .filter(|g| g.translation().is_none_or(|t| t.is_zero()))
                .cloned()
                .collect(),
            SubgroupSpec::Translations => self
                .ambient
                .generators
                .iter()
                .filter(|g| g.linear().is_identity())
                .cloned()
                .collect(),
        })
    }

    /// The generator `A` of a signed cyclic subgroup.
    pub fn cyclic_generator(&self) -> Option<&IntMatrix> {
        match &self.subgroup {
            SubgroupSpec::SignedCyclic { a } => Some(a),
            _ => None,
        }
    }

    fn verify(&self) -> Result<()> {
        for g in self.subgroup_generators()? {
            self.ambient.check_member(&g)?;
        }
        if let SubgroupSpec::DoubledUnits { embedding, .. } = &self.subgroup {
            let j = symplectic_form(embedding.dim());
            let j_inv = j.inverse_unimodular()?;
            for h in embedding.generator_matrices()? {
                let lhs = j.try_mul(&doubling(&h)?)?.try_mul(&j_inv)?;
                let rhs = doubling(&h.inverse_unimodular()?.transpose())?;
                if lhs != rhs {
                    return Err(Error::Registry(format!("{}: J does not twist {h}", self.id)));
                }
            }
        }
        Ok(())
    }

    pub fn presentation(&self, registry: &Registry) -> Result<Presentation> {
        let id = self
            .presentation
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("{} has no registered presentation", self.id)))?;
        registry.presentation(id)
    }

    /// Subgroup generators as words in the presentation generators.
    pub fn subgroup_words(&self, pres: &Presentation) -> Result<Vec<Word>> {
        if let Some(words) = &self.subgroup_words {
            return words.iter().map(|w| pres.word(w)).collect();
        }
        if pres.generators != self.ambient.generator_names {
            return Err(Error::Unsupported(format!(
                "{}: presentation generators differ from the ambient generators",
                self.id
            )));
        }
        self.subgroup_generators()?
            .iter()
            .map(|g| decompose(g, &self.ambient))
            .collect()
    }

    pub fn axiom_map(&self) -> BTreeMap<&str, &Axiom> {
        self.axioms.iter().map(|a| (a.id.as_str(), a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_matrix_example_builds() {
        let reg = Registry::bundled();
        for id in reg.example_ids() {
            if reg.is_symbolic(id) {
                assert!(reg.build_example(id).is_err());
                reg.symbolic(id).unwrap();
            } else {
                reg.build_example(id).unwrap();
            }
        }
        reg.build_example("zn-gln(3)").unwrap();
        assert!(matches!(reg.build_example("nope"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn presentations_resolve() {
        let reg = Registry::bundled();
        for id in [
            "sl2z-std",
            "gl2z",
            "free-a",
            "sl3z-steinberg",
            "steinberg-gl(3)",
            "affine-gl(2)",
            "affine-sl(2)",
            "affine-gl(3)",
        ] {
            reg.presentation(id).unwrap();
        }
    }

    #[test]
    fn subgroup_words_evaluate() {
        let reg = Registry::bundled();
        for id in ["z4-sl4", "zn-gln", "zn-gln(3)"] {
            let pair = reg.build_example(id).unwrap();
            let pres = pair.presentation(reg).unwrap();
            let words = pair.subgroup_words(&pres).unwrap();
            let gens = pair.subgroup_generators().unwrap();
            for (i, w) in words.iter().enumerate() {
                let g = w.evaluate(&pres.images, &pres.identity()).unwrap();
                assert!(pair.subgroup.membership(&g).unwrap().is_member());
                if pair.subgroup_words.is_none() {
                    assert_eq!(g, gens[i]);
                }
            }
        }
    }

    #[test]
    fn gl3_pair_is_not_special_linear() {
        let pair = Registry::bundled().build_example("gl3-x3px1").unwrap();
        assert_eq!(pair.ambient.family, Family::Gl);
        let a = pair.cyclic_generator().unwrap();
        assert_eq!(a.det().unwrap(), (-1).into());
        let sl3 = AmbientGroupSpec::standard(Family::Sl, 3).unwrap();
        assert!(!sl3.contains(&GroupElement::matrix(a.clone())));
    }
}
