use stablab::catalog;
use stablab::extensions::catalog::{extension, extensions, generated_extensions};
use stablab::extensions::pushforward::{constructions_agree, pushforward};
use stablab::extensions::{five_term_check, transgression, Hom};
use stablab::extensions::identities::{derived_restriction_check, split_identity_check};
use stablab::homology::solve::same_class;
use stablab::homology::CoefficientModule;

fn coefficient_sets() -> Vec<CoefficientModule> {
    vec![
        CoefficientModule::cyclic(2),
        CoefficientModule::cyclic(4),
        CoefficientModule::cyclic(3),
        CoefficientModule::prime_field(2).unwrap(),
        CoefficientModule::prime_field(3).unwrap(),
    ]
}

#[test]
fn split_identity_on_small_groups() {
    for name in ["Z2xZ2", "Z4", "Q8", "S3", "D8"] {
        let g = &catalog::group(name).unwrap().table;
        for m in [2, 4, 3] {
            let r = split_identity_check(g, &CoefficientModule::cyclic(m)).unwrap();
            eprintln!("{name} Z/{m}: {r:?}");
            assert!(r.passed(), "{name} Z/{m}: {r:?}");
        }
    }
}

#[test]
fn derived_restriction_classwise() {
    for name in ["S3", "D8", "A4"] {
        let g = &catalog::group(name).unwrap().table;
        for m in [2, 3] {
            let r = derived_restriction_check(g, &CoefficientModule::cyclic(m)).unwrap();
            eprintln!("{name} Z/{m}: {r:?}");
            assert!(r.passed(), "{name} Z/{m}: {r:?}");
        }
    }
    let a4 = derived_restriction_check(&catalog::group("A4").unwrap().table, &CoefficientModule::cyclic(2)).unwrap();
    assert!(a4.nonzero_restrictions > 0);
}

#[test]
fn five_term_exact_on_named_extensions() {
    for e in extensions().unwrap() {
        for k in coefficient_sets() {
            let r = five_term_check(&e.extension, &k).unwrap();
            assert!(r.exact(), "{} {:?}: {r:?}", e.name, k);
        }
    }
}

#[test]
fn five_term_exact_on_generated_extensions() {
    let family = generated_extensions(64, &[2, 3]).unwrap();
    assert!(family.len() > 40);
    for e in &family {
        for k in [CoefficientModule::prime_field(2).unwrap(), CoefficientModule::prime_field(3).unwrap()] {
            let r = five_term_check(&e.extension, &k).unwrap();
            assert!(r.exact(), "{} {:?}: {r:?}", e.name, k);
        }
    }
}

#[test]
fn heisenberg_node_dimensions() {
    let e = &extension("Heis3").unwrap().extension;
    let r = five_term_check(e, &CoefficientModule::prime_field(3).unwrap()).unwrap();
    assert_eq!(r.h1_total, 9);
    let tg = transgression(e, &CoefficientModule::prime_field(3).unwrap()).unwrap();
    assert!(!tg.is_zero());
}

#[test]
fn transgression_is_additive() {
    for name in ["Heis2", "Q8_over_V4", "V4_by_V4", "A4_by_Z2", "Z8_over_Z4"] {
        let e = &extension(name).unwrap().extension;
        for k in [vec![2u64], vec![4], vec![2, 2]] {
            let module = CoefficientModule::FiniteAbelian { invariant_factors: k.clone() };
            let tg = transgression(e, &module).unwrap();
            let homs = Hom::all(e.moduli(), &k, 256).unwrap();
            for a in &homs {
                for b in &homs {
                    let sum = a.add(b);
                    let lhs = tg.cochain(&sum).unwrap();
                    let rhs = tg.cochain(a).unwrap().add(&tg.cochain(b).unwrap());
                    assert!(same_class(&lhs, &rhs, e.base()).unwrap(), "{name}");
                }
            }
        }
    }
}

#[test]
fn pushforward_is_functorial_and_matches_quotient() {
    for name in ["Z4_over_Z2", "Heis2", "V4_by_Z4", "V4_by_V4", "D8_schur"] {
        let e = &extension(name).unwrap().extension;
        for mid in [vec![2u64], vec![4], vec![2, 2]] {
            for beta in Hom::all(e.moduli(), &mid, 64).unwrap() {
                assert!(constructions_agree(e, &beta).unwrap(), "{name} {beta:?}");
                for gamma in Hom::all(&mid, &[2], 16).unwrap() {
                    let once = pushforward(e, &beta.then(&gamma).unwrap()).unwrap();
                    let twice = pushforward(&pushforward(e, &beta).unwrap(), &gamma).unwrap();
                    assert!(same_class(once.cocycle(), twice.cocycle(), e.base()).unwrap(), "{name}");
                }
            }
        }
    }
}
