use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;

use multalg::exactpoly::{
    delinearize, linearize_quadratics, m_ring, DetMethod, MPoly, Monomial, MonomialOrder, PolyMatrix, Ring,
};
use multalg::rational::{frac, int, Rational};

fn xyz() -> Arc<Ring> {
    Ring::new(&["x", "y", "z"], MonomialOrder::Grevlex)
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

/// Up to six terms of degree at most three in x, y, z.
fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(([0u16..=3, 0u16..=3, 0u16..=3], coeff()), 0..6).prop_map(|terms| {
        let ring = xyz();
        MPoly::from_terms(&ring, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)))
    })
}

fn nonzero_poly() -> impl Strategy<Value = MPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn quadric() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(coeff(), 6).prop_map(|cs| {
        let ring = xyz();
        let basis = multalg::exactpoly::QUADRATIC_BASIS;
        MPoly::from_terms(&ring, basis.iter().zip(cs).map(|(e, c)| (Monomial::from_exponents(e), c)))
    })
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(coeff(), 3)
}

fn well_formed(p: &MPoly) -> bool {
    let order = p.ring().order();
    p.terms().iter().all(|(_, c)| !c.is_zero())
        && p.terms().windows(2).all(|w| order.compare(&w[0].0, &w[1].0) == std::cmp::Ordering::Greater)
}

fn matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(), n * n).prop_map(move |entries| PolyMatrix::new(&xyz(), n, n, entries).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &MPoly::one(p.ring()), p.clone());
        prop_assert!(well_formed(&(&p * &q)) && well_formed(&(&p + &r)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), pt in point()) {
        let (a, b) = (p.evaluate(&pt).unwrap(), q.evaluate(&pt).unwrap());
        prop_assert_eq!((&p * &q).evaluate(&pt).unwrap(), &a * &b);
        prop_assert_eq!((&p + &q).evaluate(&pt).unwrap(), &a + &b);
    }

    #[test]
    fn exact_division_recovers_the_cofactor(f in poly(), g in nonzero_poly()) {
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), f);
    }

    #[test]
    fn display_parse_roundtrip(p in poly()) {
        prop_assert_eq!(MPoly::parse(p.ring(), &p.to_string()).unwrap(), p);
    }

    #[test]
    fn json_roundtrip(p in poly()) {
        let s = serde_json::to_string(&p).unwrap();
        let back: MPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn linearization_roundtrip(q in quadric()) {
        let l = linearize_quadratics(&q).unwrap();
        prop_assert_eq!(l.len(), q.len());
        prop_assert_eq!(delinearize(&l, q.ring()).unwrap(), q);
    }

    #[test]
    fn linearization_is_injective(p in quadric(), q in quadric()) {
        let (lp, lq) = (linearize_quadratics(&p).unwrap(), linearize_quadratics(&q).unwrap());
        prop_assert_eq!(lp == lq, p == q);
        prop_assert_eq!(lp.ring(), &m_ring());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn det_is_alternating(m in matrix(3), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let d = m.det().unwrap();
        let mut swapped = m.clone();
        swapped.swap_rows(i, j);
        prop_assert_eq!(swapped.det().unwrap(), -&d);
        prop_assert_eq!(m.transpose().det().unwrap(), d);
    }

    #[test]
    fn det_methods_agree(m in matrix(3)) {
        prop_assert_eq!(m.det_with(DetMethod::Bareiss).unwrap(), m.det_with(DetMethod::Minors).unwrap());
    }

    #[test]
    fn det_is_multiplicative(a in matrix(2), b in matrix(2)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn det_commutes_with_evaluation(m in matrix(3), pt in point()) {
        let direct = m.det().unwrap().evaluate(&pt).unwrap();
        prop_assert_eq!(m.evaluate(&pt).unwrap().det(), direct);
    }
}

#[test]
fn linearization_examples() {
    let r = xyz();
    let m = m_ring();
    let lin = |s: &str| linearize_quadratics(&MPoly::parse(&r, s).unwrap()).unwrap();
    assert_eq!(lin("x^2+2*x*y"), MPoly::parse(&m, "m0+2*m3").unwrap());
    assert_eq!(lin("(x+y)*(x-y)"), MPoly::parse(&m, "m0-m1").unwrap());
    assert!(linearize_quadratics(&MPoly::parse(&r, "x^3").unwrap()).is_err());
}

#[test]
fn rationals_are_normalized() {
    let r = frac(6, -4);
    assert_eq!((r.numer().clone(), r.denom().clone()), (int(-3).numer().clone(), int(2).numer().clone()));
    assert!(Rational::zero().denom().is_one());
}
