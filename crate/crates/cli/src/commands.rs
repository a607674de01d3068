use std::path::Path;

use serde_json::{json, Value};
use stablab::extensions::catalog::{parse_extensions, CatalogExtension};
use stablab::extensions::pushforward::{constructions_agree, pushforward};
use stablab::extensions::{five_term_check, transgression, Hom};
use stablab::extsq::exterior_square;
use stablab::fp::parse::parse_blocks;
use stablab::fp::{abelianization, group_table, Presentation, Word};
use stablab::homology::bar::bar_homology;
use stablab::homology::{cohomology, CoefficientModule, HopfData};
use stablab::par::Execution;
use stablab::stability::{self, NormKind, SolverConfig};
use stablab::verify::{run_suite, Suite};
use stablab::{symspace, Error};

use crate::{Cli, Command, ExtensionArgs, GroupArgs, StabilityArgs, SymspaceArgs, VerifyArgs};

const MAX_COSETS: usize = 200_000;

pub enum Failure {
    Usage(String),
    Computation(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Computation(e)
    }
}

type Outcome = Result<(Value, u8), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Group(a) => group(a),
        Command::Extension(a) => extension(a),
        Command::Verify(a) => verify(a),
        Command::Symspace(a) => symspace_cmd(a),
        Command::Stability(a) => stability_cmd(a),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Computation(Error::InvalidInput(format!("cannot read {}: {e}", path.display()))))
}

fn pick<'a, T>(items: &'a [T], name: Option<&str>, key: impl Fn(&T) -> &str) -> Result<&'a T, Failure> {
    match name {
        Some(n) => items.iter().find(|x| key(x) == n).ok_or_else(|| Error::UnknownEntry(n.to_string()).into()),
        None => items.first().ok_or_else(|| Error::Parse { line: 0, msg: "file holds no entries".into() }.into()),
    }
}

fn coefficients(s: &str) -> Result<CoefficientModule, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn group(a: &GroupArgs) -> Outcome {
    let blocks = parse_blocks(&read(&a.file)?, &[])?;
    let presentations: Vec<Presentation> = blocks.into_iter().map(|b| b.presentation).collect();
    let p = pick(&presentations, a.name.as_deref(), |p| p.name())?;
    let mut doc = json!({"group": p.name()});
    let o = doc.as_object_mut().expect("object");
    if a.abelianization {
        let ab = abelianization(p);
        o.insert("invariant_factors".into(), json!(ab.invariant_factors()));
        o.insert("free_rank".into(), json!(ab.rank()));
        o.insert("text".into(), json!(ab.to_string()));
        return Ok((doc, 0));
    }
    let g = group_table(p, MAX_COSETS)?;
    o.insert("order".into(), json!(g.order()));
    if a.multiplier {
        let hopf = HopfData::new(p, &g)?;
        let bar = bar_homology(&g, 2)?;
        o.insert("invariant_factors".into(), json!(hopf.factors()));
        o.insert("pipelines_agree".into(), json!(hopf.multiplier() == &bar));
    } else if a.exterior_square {
        let e = exterior_square(&g)?;
        o.insert("exterior_square".into(), e.summary_json());
        o.insert("relations_hold".into(), json!(e.check_relations()));
    } else if let Some(args) = &a.cohomology {
        let deg: usize = args[0].parse().map_err(|_| Failure::Usage(format!("bad degree `{}`", args[0])))?;
        let k = coefficients(&args[1])?;
        o.insert("cohomology".into(), cohomology(&g, &k, deg)?.summary_json());
    }
    Ok((doc, 0))
}

fn parse_list(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("bad integer `{x}` in `{s}`"))))
        .collect()
}

/// `TARGET:IMAGES` with images separated by `;`, one per kernel generator.
fn parse_beta(spec: &str, source: &[u64]) -> Result<Hom, Failure> {
    let (target, images) = spec.split_once(':').ok_or_else(|| Failure::Usage(format!("expected TARGET:IMAGES, got `{spec}`")))?;
    let target = parse_list(target)?;
    let images = images.split(';').map(parse_list).collect::<Result<Vec<_>, _>>()?;
    Ok(Hom::new(source, &target, images)?)
}

fn extension(a: &ExtensionArgs) -> Outcome {
    let all = parse_extensions(&read(&a.file)?)?;
    let e: &CatalogExtension = pick(&all, a.name.as_deref(), |e| e.name.as_str())?;
    let ext = &e.extension;
    let mut doc = json!({"extension": e.name, "base": e.base, "summary": ext.summary_json()});
    let o = doc.as_object_mut().expect("object");
    if let Some(spec) = &a.pushforward {
        let beta = parse_beta(spec, ext.moduli())?;
        let pushed = pushforward(ext, &beta)?;
        o.insert("pushforward".into(), pushed.summary_json());
        o.insert("constructions_agree".into(), json!(constructions_agree(ext, &beta)?));
    } else if let Some(k) = &a.transgression {
        let tg = transgression(ext, &coefficients(k)?)?;
        o.insert(
            "transgression".into(),
            json!({
                "hom_orders": tg.hom_orders,
                "h2_generator_orders": tg.h2.generator_orders(),
                "images": tg.images,
                "is_zero": tg.is_zero(),
            }),
        );
    } else if let Some(k) = &a.five_term {
        let r = five_term_check(ext, &coefficients(k)?)?;
        o.insert("exact".into(), json!(r.exact()));
        o.insert("five_term".into(), serde_json::to_value(&r).unwrap_or(Value::Null));
    }
    Ok((doc, 0))
}

fn verify(a: &VerifyArgs) -> Outcome {
    let suite: Suite = a.suite.parse()?;
    let exec = if a.sequential { Execution::Sequential } else { Execution::Parallel };
    let r = run_suite(suite, a.max_order, exec)?;
    let failures: Vec<Value> = r.failures().map(|c| json!({"name": c.name, "detail": c.detail})).collect();
    let mut doc = json!({
        "suite": r.suite,
        "max_order": r.max_order,
        "passed": r.passed,
        "failed": r.failed,
        "ok": r.ok(),
        "failures": failures,
    });
    let cases: Vec<Value> = if a.details {
        r.cases.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect()
    } else {
        r.cases.iter().map(|c| json!({"name": c.name, "passed": c.passed})).collect()
    };
    doc.as_object_mut().expect("object").insert("cases".into(), Value::Array(cases));
    Ok((doc, if r.ok() { 0 } else { 1 }))
}

fn symspace_cmd(a: &SymspaceArgs) -> Outcome {
    if a.list {
        let names: Vec<Value> =
            symspace::catalog()?.iter().map(|e| json!({"name": e.name, "group": e.group, "dimension": e.dimension})).collect();
        return Ok((json!({"entries": names}), 0));
    }
    if let Some(name) = &a.entry {
        let e = symspace::entry(name)?;
        let p = e.poincare_polynomial();
        let odd = symspace::is_odd_rational_homology_sphere(&p, e.dimension)?;
        return Ok((
            json!({
                "name": e.name,
                "group": e.group,
                "dimension": e.dimension,
                "poincare": p.coefficients(),
                "poincare_text": p.to_string(),
                "even_degrees": p.even_degrees(),
                "odd_rhs": odd,
            }),
            0,
        ));
    }
    let factors: Vec<&str> = a.verdict.as_deref().unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if factors.is_empty() {
        return Err(Failure::Usage("--verdict needs at least one factor".into()));
    }
    let r = symspace::instability_verdict(&factors)?;
    Ok((serde_json::to_value(&r).unwrap_or(Value::Null), 0))
}

fn solver_config(a: &StabilityArgs) -> SolverConfig {
    let d = SolverConfig::default();
    SolverConfig {
        max_iterations: a.iterations.unwrap_or(d.max_iterations),
        tolerance: a.tolerance.unwrap_or(d.tolerance),
        seed: a.seed,
        ..d
    }
}

fn tuple_source(a: &StabilityArgs) -> Result<(Presentation, stability::UnitaryTuple), Failure> {
    if let Some(n) = a.voiculescu {
        return Ok((stability::commutator_presentation(), stability::voiculescu_pair(n)?));
    }
    let Some(name) = &a.group else {
        return Err(Failure::Usage("--defect and --solve need --voiculescu <N> or --group <NAME>".into()));
    };
    let g: stability::ExperimentGroup = name.parse()?;
    let (p, exact) = stability::genuine_representation(&g, a.dimension, a.seed)?;
    let t = if a.delta > 0.0 { stability::perturbed(&exact, a.delta, a.seed) } else { exact };
    Ok((p, t))
}

fn norm(a: &StabilityArgs) -> Result<NormKind, Failure> {
    a.norm.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn stability_cmd(a: &StabilityArgs) -> Outcome {
    let kind = norm(a)?;
    if let Some(path) = &a.alpha {
        let p = stablab::fp::parse_presentation(&read(path)?)?;
        let g = group_table(&p, MAX_COSETS)?;
        let r = stability::alpha_report(&g, a.seed)?;
        return Ok((json!({"group": p.name(), "alpha": finite_or_null(r.alpha), "order": r.order,
            "irreducible_dimensions": r.irreducible_dimensions, "seed": r.seed}), 0));
    }
    if let Some(path) = &a.experiment {
        let cfg = stability::ExperimentConfig::parse(&read(path)?)?;
        let rows = stability::run_experiment(&cfg, Execution::Parallel)?;
        return Ok((json!({"config": cfg, "rows": rows}), 0));
    }
    if a.quotient_transfer {
        return quotient_transfer(a);
    }
    if !a.defect && !a.solve && a.voiculescu.is_none() {
        return Err(Failure::Usage(
            "stability needs one of --defect, --solve, --voiculescu <N>, --alpha <FILE>, --quotient-transfer, --experiment <FILE>".into(),
        ));
    }
    let (p, t) = tuple_source(a)?;
    if a.solve {
        let r = stability::perturbation_solve(&p, &t, kind, &solver_config(a))?;
        let mut doc = serde_json::to_value(&r).unwrap_or(Value::Null);
        let o = doc.as_object_mut().expect("object");
        o.insert("dimension".into(), json!(t.dimension()));
        o.insert("max_distance".into(), json!(r.max_distance()));
        return Ok((doc, 0));
    }
    let d = stability::defect(&p, &t, kind)?;
    Ok((json!({"dimension": t.dimension(), "norm": kind, "per_relator": d.per_relator, "max_defect": d.max, "seed": a.seed}), 0))
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() { json!(x) } else { Value::Null }
}

const DEFAULT_TRANSFER: &str = include_str!("../../../data/z4_over_z2.grp");

fn quotient_transfer(a: &StabilityArgs) -> Outcome {
    let text = match &a.presentation {
        Some(path) => read(path)?,
        None => DEFAULT_TRANSFER.to_string(),
    };
    let mut blocks = parse_blocks(&text, &["normal"])?;
    if blocks.len() != 1 {
        return Err(Error::Parse { line: 0, msg: format!("expected one group block, found {}", blocks.len()) }.into());
    }
    let block = blocks.remove(0);
    let n_words: Vec<Word> = block.extras.into_iter().filter(|(k, _)| k == "normal").map(|(_, w)| w).collect();
    if n_words.is_empty() {
        return Err(Error::Parse { line: 0, msg: "no `normal` lines".into() }.into());
    }
    let p = block.presentation;
    let quotient = group_table(&p.with_relators(n_words.iter().cloned())?, MAX_COSETS)?;
    let exact = stability::table_representation(&quotient, a.dimension, a.seed)?;
    let t = if a.delta > 0.0 { stability::perturbed(&exact, a.delta, a.seed) } else { exact };
    let r = stability::quotient_transfer_experiment(&p, &n_words, &t, &solver_config(a))?;
    let mut doc = serde_json::to_value(&r).unwrap_or(Value::Null);
    let o = doc.as_object_mut().expect("object");
    o.insert("group".into(), json!(p.name()));
    o.insert("dimension".into(), json!(a.dimension));
    o.insert("delta".into(), json!(a.delta));
    Ok((doc, 0))
}
