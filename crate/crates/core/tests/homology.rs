use proptest::prelude::*;
use stablab::catalog;
use stablab::fp::abelian::gcd;
use stablab::fp::{abelianization, AbelianGroup, GroupTable};
use stablab::homology::bar::bar_homology;
use stablab::homology::{cohomology, uct_sequence, CoefficientModule, HopfData};

#[test]
fn catalog_tables_are_groups() {
    for g in catalog::groups_up_to(16).unwrap() {
        assert!(g.table.check_associativity(), "{}", g.name());
        assert_eq!(g.table.generators().len(), g.presentation.generator_count());
    }
}

#[test]
fn h1_is_hom_from_abelianization() {
    for g in catalog::groups_up_to(12).unwrap() {
        let ab = abelianization(&g.presentation);
        for m in [2u64, 3, 4] {
            let h1 = cohomology(&g.table, &CoefficientModule::cyclic(m), 1).unwrap();
            let expected: u64 = ab.invariant_factors().iter().map(|&a| gcd(a, m)).product();
            assert_eq!(h1.order(), expected, "{} Z/{m}", g.name());
        }
    }
}

#[test]
fn h2_order_from_multiplier_and_abelianization() {
    // |H^2(G, Z/m)| = |Hom(H_2, Z/m)| * |Ext(G_ab, Z/m)|, with H_2 from the
    // bar complex and G_ab from the presentation
    for g in catalog::groups_up_to(12).unwrap() {
        let h2 = bar_homology(&g.table, 2).unwrap();
        let ab = abelianization(&g.presentation);
        for m in [2u64, 3, 4] {
            let c = cohomology(&g.table, &CoefficientModule::cyclic(m), 2).unwrap();
            let hom: u64 = h2.invariant_factors().iter().map(|&a| gcd(a, m)).product();
            let ext: u64 = ab.invariant_factors().iter().map(|&a| gcd(a, m)).product();
            assert_eq!(c.order(), hom * ext, "{} Z/{m}", g.name());
        }
    }
}

#[test]
fn uct_sequences_are_exact() {
    for name in ["Z2xZ2", "Z4", "S3", "Q8", "D8", "A4", "Z3xZ3"] {
        let g = &catalog::group(name).unwrap().table;
        for k in [CoefficientModule::cyclic(2), CoefficientModule::cyclic(4), CoefficientModule::cyclic(3)] {
            let u = uct_sequence(g, &k).unwrap();
            assert_eq!(u.exact(), Some(true), "{name} {k}");
        }
    }
}

#[test]
fn first_homology_is_abelianization() {
    for g in catalog::groups_up_to(16).unwrap() {
        assert_eq!(bar_homology(&g.table, 1).unwrap(), abelianization(&g.presentation), "{}", g.name());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn multiplier_of_two_cyclic_factors(a in 1usize..7, b in 1usize..7) {
        let g = GroupTable::cyclic(a).direct_product(&GroupTable::cyclic(b));
        let hopf = HopfData::new(&g.presentation("G").unwrap(), &g).unwrap();
        prop_assert_eq!(hopf.multiplier(), &AbelianGroup::from_cyclic(&[gcd(a as u64, b as u64)]));
    }
}
