use num_traits::One;
use proptest::prelude::*;

use multalg::exactpoly::{monomials_of_degree, MPoly, MonomialOrder};
use multalg::genus3::{self, SpecialParams, StdPair};
use multalg::multalg::AlgebraOptions;
use multalg::rational::{frac, int, Rational};

fn nonzero() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| frac(n, d)))
}

fn pair() -> impl Strategy<Value = StdPair> {
    (nonzero(), nonzero()).prop_filter_map("a^2 != b^2", |(a, b)| {
        (&a * &a != &b * &b).then(|| StdPair::new(a, b).unwrap())
    })
}

fn generic_pair() -> impl Strategy<Value = StdPair> {
    pair().prop_filter("off the excluded loci", |p| {
        let one = Rational::one();
        let (a2, b2) = (&p.a * &p.a, &p.b * &p.b);
        (&a2 - &one) * (&b2 - &one) != one && a2 != one && b2 != one
    })
}

fn quadric() -> impl Strategy<Value = MPoly> {
    let monos = monomials_of_degree(3, 2, MonomialOrder::Grevlex);
    prop::collection::vec(-3i64..=3, monos.len()).prop_filter_map("nonzero", move |cs| {
        let q = MPoly::from_terms(&genus3::xyz_ring(), monos.iter().cloned().zip(cs.into_iter().map(int)));
        (!q.is_zero()).then_some(q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn symmetroid_coordinate_change(p in pair()) {
        prop_assert!(genus3::mat2_derivation_check(&p).unwrap());
    }

    #[test]
    fn section_is_two_conics(p in pair()) {
        let r = genus3::section_two_conics_report(&p).unwrap();
        prop_assert!(r.holds);
        prop_assert!(r.meet_on_coordinate_lines);
        prop_assert_eq!(r.conics.len(), 2);
    }

    #[test]
    fn symmetroid_is_a_quartic(p in pair()) {
        let det = genus3::symmetroid_det(&p).unwrap();
        prop_assert_eq!(det.homogeneous_degree(), Some(4));
        prop_assert!(genus3::symmetroid(&p).unwrap().is_symmetric());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn ten_singular_loci(p in generic_pair()) {
        let r = genus3::symmetroid_nodes(&p).unwrap();
        prop_assert_eq!(r.count, 10);
        prop_assert!(r.nodes.iter().all(|n| n.verified));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    #[test]
    fn discriminant_splits(p in pair(), q in quadric()) {
        let d = p.bundle(q).unwrap();
        let s = genus3::discriminant_split(&d).unwrap();
        prop_assert_eq!(&s.quadric * &s.quartic, s.discriminant.clone());
        prop_assert_eq!(s.discriminant.homogeneous_degree(), Some(6));
        prop_assert_eq!(s.quartic.homogeneous_degree(), Some(4));
        prop_assert_eq!(s.quadric_rank, 3);
        prop_assert!(s.degeneracy_plane);
        let section = genus3::degeneracy_plane_section(&d).unwrap();
        prop_assert!(!multalg::curves::is_smooth(&section));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// `a_i b_i` squares by construction, so the surd predicate is decidable
    /// and must agree with the Groebner computation.
    #[test]
    fn surd_criterion_agrees_with_groebner(
        a in prop::collection::vec(nonzero(), 3),
        k in prop::collection::vec(nonzero(), 3),
    ) {
        let b: Vec<Rational> = a.iter().zip(&k).map(|(a, k)| a * k * k).collect();
        let p = SpecialParams { a, b };
        let r = genus3::special_report(&p, &AlgebraOptions::default()).unwrap();
        prop_assert_eq!(r.consistent, Some(true));
    }

    #[test]
    fn surd_sum_one_gives_a_base_point(r1 in nonzero(), r2 in nonzero()) {
        let r3 = Rational::one() - &r1 - &r2;
        prop_assume!(r3 != Rational::from_integer(0.into()));
        let roots = vec![r1, r2, r3];
        let p = SpecialParams { a: roots.clone(), b: roots };
        prop_assert_eq!(genus3::surd_criterion(&p).unwrap(), Some(true));
        prop_assert!(genus3::special_base_point(&p).unwrap());
    }
}

#[test]
fn third_is_a_base_point() {
    let third = vec![frac(1, 3); 3];
    let p = SpecialParams { a: third.clone(), b: third };
    let r = genus3::special_report(&p, &AlgebraOptions::default()).unwrap();
    assert!(!r.very_stable);
    assert_eq!(r.surd_base_point, Some(true));
    assert_eq!(r.consistent, Some(true));
}

#[test]
fn excluded_parameters_are_refused() {
    let equal = StdPair::new(int(2), int(-2)).unwrap();
    assert!(genus3::symmetroid(&equal).is_err());
    let product_one = StdPair::new(frac(5, 4), frac(5, 3)).unwrap();
    assert!(genus3::symmetroid_nodes(&product_one).is_err());
    assert!(StdPair::new(int(0), int(1)).is_err());
}

/// Gradient and Hessian at the rational point of the `w0 = w3 = 0` locus,
/// checked against a direct symbolic evaluation of the determinant.
#[test]
fn coordinate_line_point_has_hessian_rank_two() {
    let p = StdPair::new(frac(5, 4), frac(13, 12)).unwrap();
    assert_eq!(genus3::rational_line_point(&p), Some(vec![int(0), int(9), int(5), int(0)]));
    for (a, b) in [(frac(5, 4), frac(13, 12)), (frac(5, 3), frac(13, 5)), (frac(17, 8), frac(13, 12))] {
        let p = StdPair::new(a, b).unwrap();
        let pt = genus3::rational_line_point(&p).unwrap();
        let r = genus3::classify_symmetroid_point(&p, &pt).unwrap();
        assert!(r.on_hypersurface && r.gradient_vanishes);
        assert_eq!(r.hessian_rank, 2);
    }
}

#[test]
fn degeneracy_plane_section_is_singular() {
    let q = MPoly::parse(&genus3::xyz_ring(), "x*y").unwrap();
    let d = StdPair::new(int(2), int(3)).unwrap().bundle(q).unwrap();
    let c = genus3::degeneracy_plane_section(&d).unwrap();
    assert_eq!(c.degree(), 4);
    assert!(!multalg::curves::is_smooth(&c));
}
