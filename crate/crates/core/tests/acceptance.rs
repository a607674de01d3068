//! One line per acceptance criterion; exits non-zero if any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stablab::catalog;
use stablab::extensions::catalog::{extension, extensions};
use stablab::extensions::five_term_check;
use stablab::extensions::identities::{derived_restriction_check, split_identity_check};
use stablab::extsq::{exterior_square, miller_kernel};
use stablab::fp::{AbelianGroup, Presentation, Word};
use stablab::homology::bar::bar_homology;
use stablab::homology::{CoefficientModule, HopfData};
use stablab::par::Execution;
use stablab::spectral::{d2_01, h2_filtration, symmetrization, Field};
use stablab::stability::norms::frobenius;
use stablab::stability::tuple::random_complex;
use stablab::stability::*;
use stablab::symspace::{self, CohomologySpec, Verdict};
use stablab::verify::{run_suite, Suite};

const NORM_TOL: f64 = 1e-12;
const VOICULESCU_TOL: f64 = 1e-10;
const SOLVER_DEFECT: f64 = 1e-8;
const SOLVER_ENVELOPE: f64 = 10.0;
const SOLVER_SUCCESS: f64 = 0.95;
const ALPHA_TOL: f64 = 1e-8;

const MULTIPLIER_BUDGET: Duration = Duration::from_secs(60);
const MILLER_BUDGET: Duration = Duration::from_secs(600);
const SOLVER_BATCH_BUDGET: Duration = Duration::from_secs(300);
const VERIFY_BUDGET: Duration = Duration::from_secs(1800);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg) }
}

fn multiplier_agreement() -> Outcome {
    let start = Instant::now();
    let groups = catalog::groups_up_to(16).map_err(|e| e.to_string())?;
    for g in &groups {
        let hopf = HopfData::new(&g.presentation, &g.table).map_err(|e| e.to_string())?;
        let bar = bar_homology(&g.table, 2).map_err(|e| e.to_string())?;
        check(hopf.multiplier() == &bar, format!("{}: hopf {:?} vs bar {:?}", g.name(), hopf.factors(), bar.invariant_factors()))?;
    }
    let expect = |name: &str, factors: &[u64]| -> Result<(), String> {
        let g = catalog::group(name).map_err(|e| e.to_string())?;
        let m = bar_homology(&g.table, 2).map_err(|e| e.to_string())?;
        check(m == AbelianGroup::from_cyclic(factors), format!("{name}: got {m}"))
    };
    for g in &groups {
        if g.table.find_isomorphism(&stablab::fp::GroupTable::cyclic(g.order())).is_some() {
            expect(g.name(), &[])?;
        }
    }
    for (name, f) in [("Z2xZ2", &[2u64][..]), ("Z3xZ3", &[3]), ("Z4xZ4", &[4]), ("Q8", &[]), ("D8", &[2]), ("A4", &[2])] {
        expect(name, f)?;
    }
    let t = start.elapsed();
    check(t < MULTIPLIER_BUDGET, format!("took {t:?}"))?;
    Ok(format!("{} groups, both pipelines agree, {t:.1?}", groups.len()))
}

fn miller() -> Outcome {
    let start = Instant::now();
    let groups = catalog::groups_up_to(16).map_err(|e| e.to_string())?;
    for g in &groups {
        let e = exterior_square(&g.table).map_err(|e| e.to_string())?;
        let hopf = HopfData::new(&g.presentation, &g.table).map_err(|e| e.to_string())?;
        check(&miller_kernel(&e) == hopf.multiplier(), g.name().to_string())?;
    }
    let t = start.elapsed();
    check(t < MILLER_BUDGET, format!("took {t:?}"))?;
    Ok(format!("ker(id_bar) = H_2 on {} groups, {t:.1?}", groups.len()))
}

fn five_term() -> Outcome {
    let named = extensions().map_err(|e| e.to_string())?;
    for must in ["Z4_over_Z2", "Heis2", "Heis3"] {
        extension(must).map_err(|e| e.to_string())?;
    }
    let modules = [
        CoefficientModule::prime_field(2).unwrap(),
        CoefficientModule::prime_field(3).unwrap(),
        CoefficientModule::cyclic(4),
        CoefficientModule::finite(&AbelianGroup::from_cyclic(&[2, 2])).unwrap(),
    ];
    let mut checks = 0;
    for e in named {
        for k in &modules {
            let r = five_term_check(&e.extension, k).map_err(|err| format!("{}: {err}", e.name))?;
            check(r.exact(), format!("{} {k}: {r:?}", e.name))?;
            checks += 1;
        }
    }
    check(named.len() >= 10, format!("only {} extensions", named.len()))?;
    Ok(format!("{} extensions x {} coefficient modules, {checks} exact sequences", named.len(), modules.len()))
}

fn split_identity() -> Outcome {
    let mut n = 0;
    for name in ["Z2xZ2", "Z4", "Q8", "S3", "D8"] {
        let g = &catalog::group(name).map_err(|e| e.to_string())?.table;
        for m in [2, 4, 3] {
            let r = split_identity_check(g, &CoefficientModule::cyclic(m)).map_err(|e| e.to_string())?;
            check(r.passed(), format!("{name} Z/{m}: {r:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} (group, coefficient) pairs, h o tg = id and H^2 = Ext + Hom"))
}

fn derived_restriction() -> Outcome {
    let mut classes = 0;
    for name in ["S3", "D8", "A4"] {
        let g = &catalog::group(name).map_err(|e| e.to_string())?.table;
        for m in [2, 3] {
            let r = derived_restriction_check(g, &CoefficientModule::cyclic(m)).map_err(|e| e.to_string())?;
            check(r.passed(), format!("{name} Z/{m}: {r:?}"))?;
            classes += r.classes;
        }
    }
    Ok(format!("{classes} classes checked on S3, D8, A4"))
}

fn spectral() -> Outcome {
    let named = extensions().map_err(|e| e.to_string())?;
    for e in named {
        for p in [2, 3, 5, 7] {
            let d2 = d2_01(&e.extension, Field::Prime(p)).map_err(|err| format!("{}: {err}", e.name))?;
            check(d2.matches_transgression(), format!("d2 != tg for {} over F{p}", e.name))?;
            let f = h2_filtration(&e.extension, Field::Prime(p)).map_err(|err| format!("{}: {err}", e.name))?;
            check(f.consistent(), format!("filtration of {} over F{p}: {f:?}", e.name))?;
        }
    }
    for n in 1..=8 {
        let s = symmetrization(n, Field::Rationals).map_err(|e| e.to_string())?;
        check(s.injective, format!("symmetrization n={n} not injective"))?;
    }
    Ok(format!("d2 = tg and filtration sums on {} extensions, p <= 7; sigma injective n <= 8", named.len()))
}

fn symspaces() -> Outcome {
    let cat = symspace::catalog().map_err(|e| e.to_string())?;
    let mut exceptions = Vec::new();
    for e in cat {
        let p = e.poincare_polynomial();
        let odd = symspace::is_odd_rational_homology_sphere(&p, e.dimension).map_err(|e| e.to_string())?;
        let expected = matches!(e.spec, CohomologySpec::Sphere(n) if n % 2 == 1) || e.name == "SU3_SO3";
        check(odd == expected, format!("{}: odd_rhs = {odd}", e.name))?;
        let v = symspace::instability_verdict(&[&e.name]).map_err(|e| e.to_string())?;
        if v.verdict == Verdict::Exception {
            exceptions.push(e.group.clone());
        }
    }
    for g in &exceptions {
        let odd_hyperbolic = g
            .strip_prefix("SO(")
            .and_then(|s| s.strip_suffix(",1)"))
            .and_then(|n| n.parse::<usize>().ok())
            .is_some_and(|n| n % 2 == 1);
        check(g == "SL3(R)" || odd_hyperbolic, format!("unexpected exception {g}"))?;
    }
    check(exceptions.iter().any(|g| g == "SL3(R)"), "SL3(R) missing from exceptions".into())?;
    let odd_spheres = cat.iter().filter(|e| matches!(e.spec, CohomologySpec::Sphere(n) if n % 2 == 1)).count();
    check(exceptions.len() == odd_spheres + 1, format!("{} exceptions for {odd_spheres} odd spheres", exceptions.len()))?;
    let su16 = symspace::poincare_polynomial("SU16_SO16").map_err(|e| e.to_string())?;
    check(su16.coefficient(14) > 0, "SU16/SO16 has no degree 14 class".into())?;
    for a in cat {
        for b in cat {
            let v = symspace::instability_verdict(&[&a.name, &b.name]).map_err(|e| e.to_string())?;
            check(v.verdict == Verdict::NotOperatorStable, format!("{} x {}", a.name, b.name))?;
        }
    }
    Ok(format!("{} entries, {} exceptions, {} products not operator stable", cat.len(), exceptions.len(), cat.len() * cat.len()))
}

fn norm_numerics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for n in 1..=16 {
        for _ in 0..1000 {
            let a = random_complex(n, &mut rng);
            // trace oracle for the Frobenius norm
            let tr = (a.adjoint() * &a).trace().re.sqrt();
            let f = matrix_norm(&a, NormKind::Frobenius);
            let s2 = matrix_norm(&a, NormKind::Schatten(2.0));
            let hs = matrix_norm(&a, NormKind::HilbertSchmidt);
            worst = worst.max((s2 - tr).abs()).max((f - tr).abs()).max((hs - tr / (n as f64).sqrt()).abs());
        }
    }
    check(worst <= NORM_TOL, format!("norm identity error {worst:.3e}"))?;
    let p = commutator_presentation();
    let mut vworst = 0.0f64;
    for n in 2..=64 {
        let t = voiculescu_pair(n).map_err(|e| e.to_string())?;
        let d = defect(&p, &t, NormKind::Operator).map_err(|e| e.to_string())?.max;
        vworst = vworst.max((d - 2.0 * (PI / n as f64).sin()).abs());
    }
    check(vworst <= VOICULESCU_TOL, format!("Voiculescu error {vworst:.3e}"))?;
    Ok(format!("norm identities max error {worst:.1e}; Voiculescu max error {vworst:.1e}"))
}

fn solver_recovery() -> Outcome {
    let mut summary = Vec::new();
    for g in ["Z3", "S3", "Z^2"] {
        for delta in [1e-2, 1e-3] {
            let start = Instant::now();
            let (mut good, mut total) = (0, 0);
            for n in [2usize, 4, 6, 9, 12] {
                let cfg = ExperimentConfig { n, delta, runs: 8, seed: 31, group: g.parse().unwrap(), ..Default::default() };
                for r in run_experiment(&cfg, Execution::Parallel).map_err(|e| e.to_string())? {
                    total += 1;
                    good += usize::from(r.converged && r.final_defect <= SOLVER_DEFECT && r.distance_moved <= SOLVER_ENVELOPE * delta);
                }
            }
            let t = start.elapsed();
            check(good as f64 >= SOLVER_SUCCESS * total as f64, format!("{g} delta={delta}: {good}/{total}"))?;
            check(t < SOLVER_BATCH_BUDGET, format!("{g} delta={delta}: batch took {t:?}"))?;
            summary.push(format!("{g}@{delta:e} {good}/{total}"));
        }
    }
    Ok(summary.join(", "))
}

fn alpha_and_transfer() -> Outcome {
    for (name, expected) in [("Z2", 2.0), ("Z3", 3f64.sqrt()), ("Z2xZ2", 2.0)] {
        let a = alpha_threshold(&catalog::group(name).map_err(|e| e.to_string())?.table).map_err(|e| e.to_string())?;
        check((a - expected).abs() <= ALPHA_TOL, format!("alpha({name}) = {a}"))?;
    }
    let p = Presentation::from_signed("Z4", &["a"], &[&[1, 1, 1, 1]]).unwrap();
    let quotient = catalog::group("Z2").map_err(|e| e.to_string())?;
    let exact = table_representation(&quotient.table, 4, 12).map_err(|e| e.to_string())?;
    let t = perturbed(&exact, 1e-3, 12);
    let r = quotient_transfer_experiment(&p, &[Word::from_signed(&[1, 1])], &t, &SolverConfig::default())
        .map_err(|e| e.to_string())?;
    let dist = r.distance_to_t.iter().copied().fold(0.0, f64::max);
    check(r.kills_normal_subgroup && dist <= 1e-2, format!("transfer: {r:?}"))?;
    check(frobenius(&(r.solve.tuple.matrices()[0].pow(2) - CMatrix::identity(4, 4))) < SOLVER_DEFECT, "a^2 != 1".into())?;
    Ok(format!("alpha = 2, sqrt 3, 2; Z4 -> Z2 transfer at distance {dist:.1e}"))
}

fn verify_all() -> Outcome {
    let start = Instant::now();
    let r = run_suite(Suite::All, 16, Execution::Parallel).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let first: Vec<&str> = r.failures().take(3).map(|c| c.name.as_str()).collect();
    check(r.ok(), format!("{} failed cases, e.g. {first:?}", r.failed))?;
    check(t < VERIFY_BUDGET, format!("took {t:?}"))?;
    Ok(format!("{} cases passed, {t:.1?}", r.passed))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("multiplier oracle agreement", multiplier_agreement),
        ("Miller kernel equals H_2", miller),
        ("five-term exactness", five_term),
        ("split identity", split_identity),
        ("restriction to the derived subgroup", derived_restriction),
        ("spectral identities", spectral),
        ("symmetric space catalog", symspaces),
        ("norm numerics", norm_numerics),
        ("solver recovery", solver_recovery),
        ("alpha threshold and quotient transfer", alpha_and_transfer),
        ("verify --suite all --max-order 16", verify_all),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
