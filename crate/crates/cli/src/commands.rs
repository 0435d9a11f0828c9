use cocert_core::cohom::{
    char_report, coboundary_class, h1_report, h1_sp_structured, parse_rational, two_cocycle_check, CohomologyClass,
    ConjugateComparison, ExpCocycle,
};
use cocert_core::dynamics::{
    finite_action_rigidity, out_equiv_relation, out_factor, weak_mixing_witness, AtomicSpace, CosetSpace,
    FiniteAction, WeakMixing,
};
use cocert_core::groups::registry::split_param;
use cocert_core::groups::{ambient::symplectic_form, AmbientGroupSpec, Family, GroupPair, Registry, SubgroupSpec};
use cocert_core::malnorm::{condition_report, malnormal_scan, ConditionKind, Truncation};
use cocert_core::numfield::{discriminant, is_cyclotomic_product};
use cocert_core::{CertifiedClaim, Error, IntMatrix, Result};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::{Cli, CocycleArgs, CocycleCommand, CohomologyCommand, Command, DynamicsCommand, OutArgs, OutCommand,
    Parameters, VerifyArgs, VerifyCommand};

/// Runs a parsed command. Parameters are returned with the error so a failed
/// precondition still produces a report.
pub fn execute(registry: &Registry, cli: &Cli) -> std::result::Result<(Parameters, CertifiedClaim), (Parameters, Error)> {
    let mut params = Parameters::new();
    match run(registry, cli, &mut params) {
        Ok(claim) => Ok((params, claim)),
        Err(e) => Err((params, e)),
    }
}

fn set(params: &mut Parameters, key: &str, value: Value) {
    params.insert(key.to_string(), value);
}

fn run(registry: &Registry, cli: &Cli, params: &mut Parameters) -> Result<CertifiedClaim> {
    match &cli.command {
        Command::Build { id } => {
            set(params, "id", json!(id));
            build(registry, id)
        }
        Command::Verify(v) => verify(registry, v, params),
        Command::Cohomology(c) => cohomology(registry, c, params),
        Command::Cocycle2(c) => cocycle(c, cli.global.seed, params),
        Command::Dynamics(d) => dynamics(registry, d, params),
        Command::Out(o) => out(registry, o, params),
    }
}

fn truncation(
    radius: Option<usize>,
    exp_bound: Option<u64>,
    window: Option<usize>,
    coset_radius: Option<usize>,
    params: &mut Parameters,
) -> Result<Truncation> {
    let mut t = Truncation::default();
    if let Some(r) = radius {
        t.radius = r;
    }
    if let Some(e) = exp_bound {
        t.exp_bound = e;
    }
    if let Some(w) = window {
        if w == 0 {
            return Err(Error::InvalidInput("truncation must be positive".into()));
        }
        t.schedule = (1..=w).collect();
    }
    if let Some(c) = coset_radius {
        t.coset_radius = c;
    }
    set(params, "truncation", json!(t));
    Ok(t)
}

fn build(registry: &Registry, id: &str) -> Result<CertifiedClaim> {
    if registry.is_symbolic(id) {
        let sp = registry.symbolic(id)?;
        let leaves = sp
            .axioms
            .iter()
            .map(|a| CertifiedClaim::axiom(&a.statement, &a.citation))
            .collect::<Result<Vec<_>>>()?;
        return Ok(CertifiedClaim::aggregate(format!("{} is a symbolic registry pair", sp.id), leaves)
            .with_data(json!({ "pair": sp })));
    }
    let pair = registry.build_example(id)?;
    let mut children = vec![CertifiedClaim::computed(format!(
        "every subgroup generator lies in {}",
        ambient_name(&pair.ambient)
    ))
    .with_data(json!({ "generators": pair.subgroup_generators()?.len() }))];
    let mut data = json!({ "pair": pair, "provenance": pair.provenance });
    match &pair.subgroup {
        SubgroupSpec::SignedCyclic { a } => {
            let cp = a.char_poly()?;
            let disc = discriminant(&cp);
            children.push(
                CertifiedClaim::computed(format!("char_poly(A) = {cp}"))
                    .with_data(json!({ "char_poly": cp.to_string(), "det": a.det()?.to_string() })),
            );
            children.push(
                CertifiedClaim::decided("A has distinct eigenvalues", !disc.is_zero())
                    .with_data(json!({ "discriminant": disc.to_string() })),
            );
            children.push(CertifiedClaim::decided(
                "char_poly(A) is not a product of cyclotomic polynomials",
                !is_cyclotomic_product(&cp)?,
            ));
            data["generator"] = json!(a);
            data["char_poly"] = json!(cp.to_string());
        }
        SubgroupSpec::UnitEmbedding { embedding } | SubgroupSpec::DoubledUnits { embedding, .. } => {
            let units = embedding
                .units()
                .iter()
                .map(|u| Ok(json!({ "unit": u.to_string(), "matrix": embedding.unit_matrix(u)? })))
                .collect::<Result<Vec<_>>>()?;
            let galois: Vec<Value> = embedding
                .galois_group()
                .iter()
                .zip(embedding.galois_matrices())
                .filter(|(s, _)| !s.is_identity())
                .map(|(s, m)| json!({ "image_of_x": s.image_of_x().to_string(), "order": s.order(), "matrix": m }))
                .collect();
            children.push(CertifiedClaim::computed(format!(
                "units and Galois group of {} act on the chosen basis by integer matrices",
                embedding.field()
            )));
            data["units"] = json!(units);
            data["galois"] = json!(galois);
            if let SubgroupSpec::DoubledUnits { transversal, .. } = &pair.subgroup {
                children.push(CertifiedClaim::computed("J diag(h, h^-t) J^-1 = diag(h^-t, h) for every generator h"));
                data["transversal"] = json!(transversal);
            }
        }
        SubgroupSpec::PointStabilizer | SubgroupSpec::Translations => {}
    }
    Ok(CertifiedClaim::aggregate(format!("registry pair {} builds", pair.id), children).with_data(data))
}

fn ambient_name(a: &AmbientGroupSpec) -> String {
    match a.family {
        Family::Gl => format!("GL({},Z)", a.n),
        Family::Sl => format!("SL({},Z)", a.n),
        Family::Sp => format!("Sp({},Z)", 2 * a.n),
        Family::AffineGl => format!("Z^{0} ⋊ GL({0},Z)", a.n),
        Family::AffineSl => format!("Z^{0} ⋊ SL({0},Z)", a.n),
        Family::AffineSp => format!("Z^{} ⋊ Sp({},Z)", 2 * a.n, 2 * a.n),
        Family::AffineTrivial => format!("Z^{}", a.n),
    }
}

fn verify(registry: &Registry, v: &VerifyCommand, params: &mut Parameters) -> Result<CertifiedClaim> {
    let (args, kind): (&VerifyArgs, Option<ConditionKind>) = match v {
        VerifyCommand::Malnormal(a) => (a, None),
        VerifyCommand::ConditionB(a) => (a, Some(ConditionKind::B)),
        VerifyCommand::ConditionD(a) => (a, Some(ConditionKind::D)),
    };
    set(params, "id", json!(args.id));
    let t = truncation(args.radius, args.exp_bound, args.truncation, args.coset_radius, params)?;
    let pair = registry.build_example(&args.id)?;
    match kind {
        None => malnormal_scan(&pair, t.radius, t.exp_bound),
        Some(k) => Ok(condition_report(&pair, k, &t)?.claim),
    }
}

fn cohomology(registry: &Registry, c: &CohomologyCommand, params: &mut Parameters) -> Result<CertifiedClaim> {
    match c {
        CohomologyCommand::H1 { presentation } => {
            set(params, "presentation", json!(presentation));
            if let ("sp-structured", Some(n)) = split_param(presentation)? {
                return h1_sp_structured(n);
            }
            h1_report(registry, &registry.presentation(presentation)?)
        }
        CohomologyCommand::Char { presentation } => {
            set(params, "presentation", json!(presentation));
            char_report(registry, &registry.presentation(presentation)?)
        }
    }
}

fn cocycle(c: &CocycleCommand, seed: u64, params: &mut Parameters) -> Result<CertifiedClaim> {
    let args: &CocycleArgs = match c {
        CocycleCommand::Check(a) | CocycleCommand::Class(a) => a,
    };
    let alpha = parse_rational(&args.alpha)?;
    if args.dim == 0 || !args.dim.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("--dim must be even and positive, got {}", args.dim)));
    }
    set(params, "alpha", json!(alpha.to_string()));
    set(params, "dim", json!(args.dim));
    let n = args.dim / 2;
    let cocycle = ExpCocycle::new(symplectic_form(n), alpha.clone())?;
    let generators: Vec<IntMatrix> = AmbientGroupSpec::standard(Family::Sp, n)?
        .generators
        .iter()
        .map(|g| g.linear().clone())
        .collect();
    match c {
        CocycleCommand::Check(_) => {
            set(params, "samples", json!(args.samples));
            two_cocycle_check(&cocycle, &generators, args.samples, seed)
        }
        CocycleCommand::Class(_) => {
            let report = coboundary_class(&cocycle);
            let invariant = generators
                .iter()
                .map(|g| Ok(g.transpose().try_mul(&cocycle.form)?.try_mul(g)? == cocycle.form))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            let class = match report.class {
                CohomologyClass::TrivialClass => "trivial",
                CohomologyClass::Nontrivial => "nontrivial",
            };
            let conjugate = match report.conjugate {
                ConjugateComparison::SameClass => "the same class as",
                ConjugateComparison::Different => "a different class from",
            };
            Ok(CertifiedClaim::aggregate(
                format!(
                    "Ω for α = ({alpha})π on Z^{} ⋊ Sp({},Z) has {class} class and is {conjugate} its conjugate",
                    args.dim, args.dim
                ),
                vec![CertifiedClaim::decided("g^t J g = J for every Sp generator", invariant)],
            )
            .with_data(json!(report)))
        }
    }
}

fn dynamics(registry: &Registry, d: &DynamicsCommand, params: &mut Parameters) -> Result<CertifiedClaim> {
    match d {
        DynamicsCommand::WeakMixing {
            id,
            set_a,
            set_b,
            radius,
            truncation,
        } => {
            set(params, "id", json!(id));
            set(params, "set_a", json!(set_a));
            set(params, "set_b", json!(set_b));
            set(params, "radius", json!(radius));
            set(params, "truncation", json!(truncation));
            let pair = registry.build_example(id)?;
            let space = CosetSpace::truncated(&pair, *truncation)?;
            weak_mixing(&pair, &space, set_a, set_b, *radius)
        }
        DynamicsCommand::FiniteRigidity { n } => {
            set(params, "n", json!(n));
            finite_action_rigidity(*n)
        }
    }
}

fn weak_mixing(pair: &GroupPair, space: &CosetSpace<'_>, a: &[usize], b: &[usize], radius: usize) -> Result<CertifiedClaim> {
    let reps = |s: &[usize]| -> Vec<Value> {
        s.iter()
            .filter_map(|&i| space.representatives().get(i))
            .map(|g| json!(g))
            .collect()
    };
    let statement = format!("some g in {} has g·A ∩ B = ∅ for the chosen coset sets", pair.id);
    let data = json!({ "window_size": space.len(), "set_a": reps(a), "set_b": reps(b) });
    Ok(match weak_mixing_witness(space, a, b, radius)? {
        WeakMixing::Found { element, word } => {
            let mut data = data;
            data["witness"] = json!({ "element": element, "word": word });
            CertifiedClaim::computed(statement).with_data(data)
        }
        WeakMixing::NotFound { radius } => {
            CertifiedClaim::evidence(statement, [("radius", json!(radius)), ("found", json!(false))]).with_data(data)
        }
    })
}

fn out(registry: &Registry, o: &OutCommand, params: &mut Parameters) -> Result<CertifiedClaim> {
    let args: &OutArgs = match o {
        OutCommand::Relation(a) | OutCommand::Factor(a) => a,
    };
    set(params, "id", json!(args.id));
    let space = AtomicSpace::parse(&args.weights)?;
    set(
        params,
        "weights",
        json!(space.atoms().iter().map(|a| a.weight.to_string()).collect::<Vec<_>>()),
    );
    let t = truncation(args.radius, args.exp_bound, args.truncation, args.coset_radius, params)?;
    let result = match o {
        OutCommand::Relation(_) => {
            set(params, "compact_group", json!(args.compact_group));
            let action = FiniteAction::parse(&args.compact_group, space.len())?;
            let pair = registry.build_example(&args.id)?;
            out_equiv_relation(registry, &pair, &action, &space, &t)?
        }
        OutCommand::Factor(_) => out_factor(registry, &args.id, &space, &t)?,
    };
    Ok(result.claim)
}
