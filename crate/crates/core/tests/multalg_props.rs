use proptest::prelude::*;

use multalg::curves::{self, PlaneCurve};
use multalg::exactpoly::{monomials_of_degree, MPoly, MonomialOrder, Ring};
use multalg::linalg::RatMatrix;
use multalg::multalg::{build_algebra, is_very_stable, NetOfQuadrics};
use multalg::quadrics;
use multalg::rational::{int, Rational};

fn symmetric(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |v| {
        let mut m = RatMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m[(i, j)] = int(v[k]);
                m[(j, i)] = int(v[k]);
                k += 1;
            }
        }
        m
    })
}

fn net(n: usize) -> impl Strategy<Value = NetOfQuadrics> {
    prop::collection::vec(symmetric(n), n).prop_filter_map("independent grams", move |grams| {
        let stacked = RatMatrix::from_rows(grams.iter().map(|g| g.data().to_vec()).collect());
        (stacked.rank() == n).then(|| NetOfQuadrics::new(n, grams).ok()).flatten()
    })
}

fn invertible(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_filter_map("invertible", move |v| {
        let m = RatMatrix::from_vec(n, n, v.into_iter().map(int).collect());
        (m.rank() == n).then_some(m)
    })
}

fn cubic() -> impl Strategy<Value = MPoly> {
    let monos = monomials_of_degree(3, 3, MonomialOrder::Grevlex);
    prop::collection::vec(-3i64..=3, monos.len()).prop_map(move |cs| {
        let r = Ring::new(&["x", "y", "z"], MonomialOrder::Grevlex);
        MPoly::from_terms(&r, monos.iter().cloned().zip(cs.into_iter().map(int)))
    })
}

/// `f(A x)` for a 3x3 matrix `A`.
fn transform(f: &MPoly, a: &RatMatrix) -> MPoly {
    let r = f.ring().clone();
    let x = MPoly::vars(&r);
    let images: Vec<MPoly> = (0..3)
        .map(|i| (0..3).fold(MPoly::zero(&r), |acc, j| &acc + &x[j].scale(&a[(i, j)])))
        .collect();
    f.substitute(&images).unwrap()
}

fn binomial_row(n: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for k in 1..=n {
        row.push(row[k - 1] * (n + 1 - k) / k);
    }
    row
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn discriminant_is_congruence_covariant(g in net(3), p in invertible(3)) {
        let d = quadrics::discriminant(&g).unwrap().poly;
        let moved = quadrics::discriminant(&g.congruence(&p).unwrap()).unwrap().poly;
        let det = p.det();
        prop_assert_eq!(moved, d.scale(&(&det * &det)));
        prop_assert!(d.is_zero() || d.homogeneous_degree() == Some(3));
    }

    #[test]
    fn very_stability_is_congruence_invariant(g in net(3), p in invertible(3)) {
        prop_assert_eq!(is_very_stable(&g).unwrap(), is_very_stable(&g.congruence(&p).unwrap()).unwrap());
    }

    #[test]
    fn very_stable_algebras_are_graded_gorenstein(g in net(3)) {
        prop_assume!(is_very_stable(&g).unwrap());
        let a = build_algebra(&g).unwrap();
        prop_assert_eq!(a.dim(), a.hilbert().iter().sum::<usize>());
        prop_assert_eq!(a.hilbert().to_vec(), binomial_row(3));
        prop_assert_eq!(a.socle_degree(), 3);
        let h = a.hilbert();
        prop_assert!(h.iter().eq(h.iter().rev()));
        for (i, row) in a.mult_table().iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let deg = a.basis()[i].degree() + a.basis()[j].degree();
                prop_assert!(p.is_zero() || p.homogeneous_degree() == Some(deg));
            }
        }
        for k in 0..=3 {
            let (m, nondegenerate) = a.poincare_pairing(k).unwrap();
            prop_assert!(nondegenerate);
            prop_assert_eq!(m.transpose(), a.poincare_pairing(3 - k).unwrap().0);
        }
    }

    #[test]
    fn net_json_roundtrip(g in net(4)) {
        let back: NetOfQuadrics = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn j_is_projectively_invariant(f in cubic(), a in invertible(3)) {
        let c = PlaneCurve::new(f.clone()).unwrap();
        prop_assume!(curves::is_smooth(&c));
        let moved = PlaneCurve::new(transform(&f, &a)).unwrap();
        prop_assert!(curves::is_smooth(&moved));
        prop_assert_eq!(curves::j_invariant(&c).unwrap(), curves::j_invariant(&moved).unwrap());
    }

    #[test]
    fn invariants_scale_with_det(f in cubic(), a in invertible(3)) {
        prop_assume!(!f.is_zero());
        let (s, t) = curves::cubic_invariants(&PlaneCurve::new(f.clone()).unwrap()).unwrap();
        let (s2, t2) = curves::cubic_invariants(&PlaneCurve::new(transform(&f, &a)).unwrap()).unwrap();
        let d: Rational = a.det();
        prop_assert_eq!(s2, &s * &d.pow(4));
        prop_assert_eq!(t2, &t * &d.pow(6));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn four_variable_nets(g in net(4)) {
        prop_assume!(is_very_stable(&g).unwrap());
        let a = build_algebra(&g).unwrap();
        prop_assert_eq!(a.dim(), 16);
        prop_assert!(a.all_pairings_nondegenerate().unwrap());
        prop_assert_eq!(quadrics::discriminant(&g).unwrap().poly.homogeneous_degree(), Some(4));
    }
}
