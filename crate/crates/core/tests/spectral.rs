use stablab::extensions::catalog::{extension, extensions, generated_extensions, CatalogExtension};
use stablab::extensions::central::extension_from_cocycle;
use stablab::extensions::Cocycle2;
use stablab::homology::{cohomology, CoefficientModule};
use stablab::spectral::*;

fn all_extensions(max_total: usize) -> Vec<CatalogExtension> {
    let mut v = extensions().unwrap().to_vec();
    v.extend(generated_extensions(max_total, &[2, 3]).unwrap());
    v
}

#[test]
fn d2_equals_transgression_as_matrices() {
    for e in all_extensions(32) {
        for p in [2, 3, 5, 7] {
            let d2 = d2_01(&e.extension, Field::Prime(p)).unwrap();
            assert!(d2.matches_transgression(), "{} F{p}: {d2:?}", e.name);
        }
    }
}

#[test]
fn filtration_dimensions_sum() {
    for e in all_extensions(24) {
        for p in [2, 3] {
            let r = h2_filtration(&e.extension, Field::Prime(p)).unwrap();
            assert!(r.consistent(), "{} F{p}: {r:?}", e.name);
        }
    }
}

#[test]
fn e2_product_formula() {
    for e in extensions().unwrap() {
        for p in [2, 3, 5] {
            assert!(e2_page(&e.extension, Field::Prime(p)).unwrap().product_formula_holds, "{}", e.name);
        }
    }
}

#[test]
fn split_extension_reproduces_kunneth() {
    let e = &extension("Z4_split_Z3").unwrap().extension;
    let r = h2_filtration(e, Field::Prime(3)).unwrap();
    assert_eq!((r.inflation, r.middle, r.restriction), (0, 0, 1));
    let e = &extension("Z2_split").unwrap().extension;
    let r = h2_filtration(e, Field::Prime(2)).unwrap();
    let direct = cohomology(e.total(), &CoefficientModule::prime_field(2).unwrap(), 2).unwrap();
    assert_eq!(r.h2_total, direct.dimension().unwrap());
    assert_eq!((r.inflation, r.middle, r.restriction), (1, 1, 1));
}

#[test]
fn heisenberg_two_filtration_matches_order_eight_group() {
    let e = &extension("Heis2").unwrap().extension;
    let r = h2_filtration(e, Field::Prime(2)).unwrap();
    assert_eq!(r.h2_total, 3);
    assert!(r.consistent());
    let d2 = d2_01(e, Field::Prime(2)).unwrap();
    assert_eq!(d2.rank(), 1);
}

#[test]
fn coprime_kernel_has_no_restriction_image() {
    for e in extensions().unwrap() {
        let order: u64 = e.extension.moduli().iter().product();
        for p in [2u64, 3, 5, 7] {
            if !order.is_multiple_of(p) {
                assert_eq!(h2_filtration(&e.extension, Field::Prime(p)).unwrap().restriction, 0, "{}", e.name);
            }
        }
    }
}

#[test]
fn split_extension_has_zero_d2() {
    let g = stablab::catalog::group("S3").unwrap();
    let e = extension_from_cocycle(&Cocycle2::zero(&g.table, &[3])).unwrap();
    assert_eq!(d2_01(&e, Field::Prime(3)).unwrap().rank(), 0);
}

#[test]
fn symmetrization_injective_over_rationals() {
    for n in 0..=8 {
        let s = symmetrization(n, Field::Rationals).unwrap();
        assert_eq!(s.rank, n * n.saturating_sub(1) / 2);
        assert!(s.injective);
    }
}
