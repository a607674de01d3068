//! Verification suites over the bundled catalogs, shared by the CLI and the
//! acceptance tests. Each case is independent; results come back sorted by
//! case name.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::extensions::catalog::extensions;
use crate::extensions::five_term_check;
use crate::extensions::identities::{derived_restriction_check, split_identity_check};
use crate::extsq::{exterior_square, miller_kernel};
use crate::homology::bar::bar_homology;
use crate::homology::{CoefficientModule, HopfData};
use crate::par::{self, Execution};
use crate::spectral::{d2_01, h2_filtration, symmetrization, Field};
use crate::stability;
use crate::symspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Multiplier,
    Miller,
    Split,
    DerivedRestriction,
    FiveTerm,
    Spectral,
    Symspace,
    Stability,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Multiplier,
        Suite::Miller,
        Suite::Split,
        Suite::DerivedRestriction,
        Suite::FiveTerm,
        Suite::Spectral,
        Suite::Symspace,
        Suite::Stability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Multiplier => "multiplier",
            Suite::Miller => "miller",
            Suite::Split => "split",
            Suite::DerivedRestriction => "lemma-i",
            Suite::FiveTerm => "five-term",
            Suite::Spectral => "spectral",
            Suite::Symspace => "symspace",
            Suite::Stability => "stability",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_order: usize,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

type Check = Box<dyn Fn() -> Result<(bool, Value)> + Send + Sync>;

struct Case {
    name: String,
    check: Check,
}

fn case(name: impl Into<String>, check: impl Fn() -> Result<(bool, Value)> + Send + Sync + 'static) -> Case {
    Case { name: name.into(), check: Box::new(check) }
}

fn named_groups(names: &[&'static str], max_order: usize) -> Result<Vec<&'static catalog::CatalogGroup>> {
    let mut out = Vec::new();
    for &n in names {
        let g = catalog::group(n)?;
        if g.order() <= max_order {
            out.push(g);
        }
    }
    Ok(out)
}

fn multiplier_cases(max_order: usize) -> Result<Vec<Case>> {
    Ok(catalog::groups_up_to(max_order)?
        .into_iter()
        .map(|g| {
            case(format!("multiplier/{}", g.name()), move || {
                let hopf = HopfData::new(&g.presentation, &g.table)?;
                let bar = bar_homology(&g.table, 2)?;
                Ok((
                    hopf.multiplier() == &bar,
                    json!({"hopf": hopf.factors(), "bar": bar.invariant_factors()}),
                ))
            })
        })
        .collect())
}

fn miller_cases(max_order: usize) -> Result<Vec<Case>> {
    Ok(catalog::groups_up_to(max_order)?
        .into_iter()
        .map(|g| {
            case(format!("miller/{}", g.name()), move || {
                let e = exterior_square(&g.table)?;
                let hopf = HopfData::new(&g.presentation, &g.table)?;
                let k = miller_kernel(&e);
                let ok = &k == hopf.multiplier() && e.id_bar_image() == g.table.derived_subgroup();
                Ok((ok, json!({"exterior_square_order": e.order(), "kernel": k.invariant_factors(), "multiplier": hopf.factors()})))
            })
        })
        .collect())
}

fn split_cases(max_order: usize) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for g in named_groups(&["Z2xZ2", "Z4", "Q8", "S3", "D8"], max_order)? {
        for m in [2u64, 4, 3] {
            out.push(case(format!("split/{}/Z{m}", g.name()), move || {
                let r = split_identity_check(&g.table, &CoefficientModule::cyclic(m))?;
                Ok((r.passed(), serde_json::to_value(&r).unwrap_or(Value::Null)))
            }));
        }
    }
    Ok(out)
}

fn restriction_cases(max_order: usize) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for g in named_groups(&["S3", "D8", "A4"], max_order)? {
        for m in [2u64, 3] {
            out.push(case(format!("lemma-i/{}/Z{m}", g.name()), move || {
                let r = derived_restriction_check(&g.table, &CoefficientModule::cyclic(m))?;
                Ok((r.passed(), serde_json::to_value(&r).unwrap_or(Value::Null)))
            }));
        }
    }
    Ok(out)
}

fn coefficient_modules() -> Vec<(&'static str, CoefficientModule)> {
    vec![
        ("F2", CoefficientModule::prime_field(2).expect("2 is prime")),
        ("F3", CoefficientModule::prime_field(3).expect("3 is prime")),
        ("Z4", CoefficientModule::cyclic(4)),
        ("Z2xZ2", CoefficientModule::finite(&crate::fp::AbelianGroup::from_cyclic(&[2, 2])).expect("finite")),
    ]
}

fn five_term_cases(max_order: usize) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for e in extensions()? {
        if e.extension.base().order() > max_order {
            continue;
        }
        for (label, k) in coefficient_modules() {
            out.push(case(format!("five-term/{}/{label}", e.name), move || {
                let r = five_term_check(&e.extension, &k)?;
                Ok((r.exact(), serde_json::to_value(&r).unwrap_or(Value::Null)))
            }));
        }
    }
    Ok(out)
}

fn spectral_cases(max_order: usize) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for e in extensions()? {
        if e.extension.base().order() > max_order {
            continue;
        }
        out.push(case(format!("spectral/d2/{}", e.name), move || {
            let mut ranks = Vec::new();
            let mut ok = true;
            for p in [2, 3, 5, 7] {
                let d2 = d2_01(&e.extension, Field::Prime(p))?;
                ok &= d2.matches_transgression();
                ranks.push(d2.rank());
            }
            Ok((ok, json!({"ranks_p2_p3_p5_p7": ranks})))
        }));
        out.push(case(format!("spectral/filtration/{}", e.name), move || {
            let mut rows = Vec::new();
            let mut ok = true;
            for p in [2, 3] {
                let r = h2_filtration(&e.extension, Field::Prime(p))?;
                ok &= r.consistent();
                rows.push(serde_json::to_value(&r).unwrap_or(Value::Null));
            }
            Ok((ok, Value::Array(rows)))
        }));
    }
    for n in 1..=8 {
        out.push(case(format!("spectral/symmetrization/n{n}"), move || {
            let s = symmetrization(n, Field::Rationals)?;
            Ok((s.injective, json!({"rank": s.rank})))
        }));
    }
    Ok(out)
}

fn is_exception_group(group: &str) -> bool {
    group == "SL3(R)"
        || group
            .strip_prefix("SO(")
            .and_then(|s| s.strip_suffix(",1)"))
            .and_then(|n| n.parse::<usize>().ok())
            .is_some_and(|n| n % 2 == 1)
}

fn symspace_cases() -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for e in symspace::catalog()? {
        out.push(case(format!("symspace/{}", e.name), move || {
            let p = e.poincare_polynomial();
            let odd = symspace::is_odd_rational_homology_sphere(&p, e.dimension)?;
            let expected_odd = matches!(e.spec, symspace::CohomologySpec::Sphere(n) if n % 2 == 1) || e.name == "SU3_SO3";
            let r = symspace::instability_verdict(&[&e.name])?;
            let exception = r.verdict == symspace::Verdict::Exception;
            let ok = odd == expected_odd && exception == is_exception_group(&e.group) && p.is_palindromic();
            Ok((ok, json!({"odd_rhs": odd, "verdict": r.verdict, "poincare": p.coefficients()})))
        }));
    }
    out.push(case("symspace/SU16_SO16/degree14", || {
        let p = symspace::poincare_polynomial("SU16_SO16")?;
        Ok((p.coefficient(14) > 0, json!({"coefficient_14": p.coefficient(14)})))
    }));
    out.push(case("symspace/products", || {
        let c = symspace::catalog()?;
        let mut bad = Vec::new();
        for a in c {
            for b in c {
                if symspace::instability_verdict(&[&a.name, &b.name])?.verdict != symspace::Verdict::NotOperatorStable {
                    bad.push(format!("{}x{}", a.name, b.name));
                }
            }
        }
        Ok((bad.is_empty(), json!({"pairs": c.len() * c.len(), "exceptions": bad})))
    }));
    Ok(out)
}

fn stability_cases() -> Vec<Case> {
    use stability::{NormKind, *};
    let mut out = Vec::new();
    out.push(case("stability/voiculescu", || {
        let p = commutator_presentation();
        let mut worst = 0.0f64;
        for n in 2..=64 {
            let d = defect(&p, &voiculescu_pair(n)?, NormKind::Operator)?.max;
            worst = worst.max((d - 2.0 * (std::f64::consts::PI / n as f64).sin()).abs());
        }
        Ok((worst < 1e-10, json!({"max_error": worst})))
    }));
    for (name, expected) in [("Z2", 2.0), ("Z3", 3f64.sqrt()), ("Z2xZ2", 2.0)] {
        out.push(case(format!("stability/alpha/{name}"), move || {
            let a = alpha_threshold(&catalog::group(name)?.table)?;
            Ok(((a - expected).abs() < 1e-8, json!({"alpha": a, "expected": expected})))
        }));
    }
    for g in ["Z3", "S3", "Z^2"] {
        out.push(case(format!("stability/solver/{g}"), move || {
            let mut good = 0;
            let mut total = 0;
            for delta in [1e-2, 1e-3] {
                for n in [3usize, 8, 12] {
                    let cfg = ExperimentConfig { n, delta, runs: 4, seed: 2000, group: g.parse()?, ..Default::default() };
                    for r in run_experiment(&cfg, Execution::Sequential)? {
                        total += 1;
                        good += usize::from(r.converged && r.final_defect <= 1e-8 && r.distance_moved <= 10.0 * delta);
                    }
                }
            }
            Ok((good as f64 >= 0.95 * total as f64, json!({"within_envelope": good, "runs": total})))
        }));
    }
    out.push(case("stability/quotient-transfer/Z4", || {
        let p = crate::fp::Presentation::from_signed("Z4", &["a"], &[&[1, 1, 1, 1]])?;
        let n_words = [crate::fp::Word::from_signed(&[1, 1])];
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(4);
        let sign = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(4, |i, _| {
            num_complex::Complex64::new(if i < 2 { 1.0 } else { -1.0 }, 0.0)
        }));
        let t = perturb(&UnitaryTuple::new(vec![sign])?, 1e-3, &mut rng);
        let r = quotient_transfer_experiment(&p, &n_words, &t, &SolverConfig::default())?;
        let ok = r.kills_normal_subgroup && r.distance_to_t.iter().all(|&d| d <= 1e-2);
        Ok((ok, serde_json::to_value(&r).unwrap_or(Value::Null)))
    }));
    out
}

fn cases(suite: Suite, max_order: usize) -> Result<Vec<Case>> {
    Ok(match suite {
        Suite::Multiplier => multiplier_cases(max_order)?,
        Suite::Miller => miller_cases(max_order)?,
        Suite::Split => split_cases(max_order)?,
        Suite::DerivedRestriction => restriction_cases(max_order)?,
        Suite::FiveTerm => five_term_cases(max_order)?,
        Suite::Spectral => spectral_cases(max_order)?,
        Suite::Symspace => symspace_cases()?,
        Suite::Stability => stability_cases(),
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::ALL {
                all.extend(cases(s, max_order)?);
            }
            all
        }
    })
}

/// Runs a suite; a case whose computation errors counts as failed and
/// records the error name.
pub fn run_suite(suite: Suite, max_order: usize, exec: Execution) -> Result<SuiteReport> {
    let list = cases(suite, max_order)?;
    let mut results = par::map(exec, &list, |c| match (c.check)() {
        Ok((passed, detail)) => CaseResult { name: c.name.clone(), passed, detail },
        Err(e) => CaseResult {
            name: c.name.clone(),
            passed: false,
            detail: json!({"error": e.name(), "message": e.to_string()}),
        },
    });
    results.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = results.iter().filter(|c| c.passed).count();
    Ok(SuiteReport { suite, max_order, passed, failed: results.len() - passed, cases: results })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn small_multiplier_suite() {
        let r = run_suite(Suite::Multiplier, 8, Execution::Sequential).unwrap();
        assert!(r.ok());
        assert!(r.cases.windows(2).all(|w| w[0].name <= w[1].name));
    }
}
