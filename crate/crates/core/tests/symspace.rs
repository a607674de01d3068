use proptest::prelude::*;
use stablab::symspace::*;

fn is_listed_exception(group: &str) -> bool {
    if group == "SL3(R)" {
        return true;
    }
    group
        .strip_prefix("SO(")
        .and_then(|s| s.strip_suffix(",1)"))
        .and_then(|n| n.parse::<usize>().ok())
        .is_some_and(|n| n % 2 == 1)
}

#[test]
fn odd_homology_spheres_are_odd_spheres_and_su3_so3() {
    for e in catalog().unwrap() {
        let p = e.poincare_polynomial();
        let expected = matches!(e.spec, CohomologySpec::Sphere(n) if n % 2 == 1) || e.name == "SU3_SO3";
        assert_eq!(is_odd_rational_homology_sphere(&p, e.dimension).unwrap(), expected, "{}", e.name);
    }
}

#[test]
fn exceptions_are_exactly_odd_hyperbolic_and_sl3() {
    for e in catalog().unwrap() {
        let r = instability_verdict(&[&e.name]).unwrap();
        assert_eq!(r.verdict == Verdict::Exception, is_listed_exception(&e.group), "{}", e.group);
    }
    assert_eq!(instability_verdict(&["SO(4,1)"]).unwrap().even_degrees, vec![4]);
}

#[test]
fn su16_so16_has_degree_fourteen() {
    let p = poincare_polynomial("SU16_SO16").unwrap();
    assert!(p.coefficient(14) > 0);
    assert!(instability_verdict(&["SL16(R)"]).unwrap().even_degrees.contains(&14));
}

#[test]
fn products_are_never_exceptions() {
    let c = catalog().unwrap();
    for a in c {
        for b in c {
            let r = instability_verdict(&[&a.name, &b.name]).unwrap();
            assert_eq!(r.verdict, Verdict::NotOperatorStable, "{} x {}", a.name, b.name);
        }
    }
    let r = instability_verdict(&["S3", "S5", "SU3_SO3"]).unwrap();
    assert_eq!(r.verdict, Verdict::NotOperatorStable);
    assert_eq!(r.dimension, 13);
}

#[test]
fn catalog_invariants() {
    for e in catalog().unwrap() {
        let p = e.poincare_polynomial();
        assert!(p.is_palindromic(), "{}", e.name);
        assert_eq!(p.degree(), e.dimension, "{}", e.name);
        if e.dimension % 2 == 1 {
            assert_eq!(p.euler_characteristic(), 0, "{}", e.name);
        }
        if let Some(d) = expected_dimension(&e.group) {
            assert_eq!(d, e.dimension, "{}", e.name);
        }
    }
}

fn poly() -> impl Strategy<Value = PoincarePolynomial> {
    prop::collection::vec(1usize..12, 0..4).prop_map(|d| PoincarePolynomial::exterior(&d))
}

proptest! {
    #[test]
    fn kunneth_is_commutative_and_keeps_duality(p in poly(), q in poly()) {
        let pq = kunneth_product(&p, &q);
        prop_assert_eq!(&pq, &kunneth_product(&q, &p));
        prop_assert!(pq.is_palindromic());
        prop_assert_eq!(pq.degree(), p.degree() + q.degree());
        prop_assert_eq!(pq.euler_characteristic(), p.euler_characteristic() * q.euler_characteristic());
    }

    #[test]
    fn product_of_two_positive_dimensional_spaces_has_even_class(p in poly(), q in poly()) {
        prop_assume!(p.degree() > 0 && q.degree() > 0);
        prop_assert!(!kunneth_product(&p, &q).even_degrees().is_empty());
    }
}
