use std::sync::Arc;

use proptest::prelude::*;

use multalg::exactpoly::{monomials_of_degree, MPoly, Monomial, MonomialOrder, Ring};
use multalg::groebner::{buchberger, Ideal};
use multalg::macaulay::MacaulayOracle;
use multalg::rational::{int, Rational};

fn ring(n: usize) -> Arc<Ring> {
    Ring::indexed("x", n)
}

/// Homogeneous form of degree `d` with small integer coefficients.
fn form(n: usize, d: u32) -> impl Strategy<Value = MPoly> {
    let monos = monomials_of_degree(n, d, MonomialOrder::Grevlex);
    prop::collection::vec(-3i64..=3, monos.len()).prop_map(move |cs| {
        MPoly::from_terms(&ring(n), monos.iter().cloned().zip(cs.into_iter().map(int)))
    })
}

fn quadrics(n: usize, k: usize) -> impl Strategy<Value = Vec<MPoly>> {
    prop::collection::vec(form(n, 2), k).prop_filter("nonzero", |qs| qs.iter().all(|q| !q.is_zero()))
}

fn binomial_row(n: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for k in 1..=n {
        row.push(row[k - 1] * (n + 1 - k) / k);
    }
    row
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn basis_is_reduced_and_closed(qs in quadrics(3, 3)) {
        let g = buchberger(&Ideal::new(&ring(3), qs.clone()).unwrap());
        prop_assert!(g.s_pairs_reduce_to_zero());
        for e in g.elements() {
            prop_assert_eq!(e.leading_coeff().cloned(), Some(Rational::from_integer(1.into())));
        }
        for q in &qs {
            prop_assert!(g.contains(q).unwrap());
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(qs in quadrics(3, 3), p in form(3, 3), q in form(3, 3), c in -4i64..=4) {
        let g = buchberger(&Ideal::new(&ring(3), qs).unwrap());
        let np = g.normal_form(&p).unwrap();
        prop_assert_eq!(g.normal_form(&np).unwrap(), np.clone());
        let nq = g.normal_form(&q).unwrap();
        let combo = &p + &q.scale(&int(c));
        prop_assert_eq!(g.normal_form(&combo).unwrap(), &np + &nq.scale(&int(c)));
    }

    #[test]
    fn membership_matches_macaulay_matrix(qs in quadrics(3, 2), a in form(3, 1), b in form(3, 1), noise in form(3, 3), keep in any::<bool>()) {
        let r = ring(3);
        let g = buchberger(&Ideal::new(&r, qs.clone()).unwrap());
        let oracle = MacaulayOracle::new(&r, &qs).unwrap();
        let member = &(&a * &qs[0]) + &(&b * &qs[1]);
        let p = if keep { member } else { &member + &noise };
        prop_assert_eq!(g.contains(&p).unwrap(), oracle.contains(&p).unwrap());
    }

    #[test]
    fn zero_dimensional_complete_intersections_are_binomial(qs in quadrics(3, 3)) {
        let r = ring(3);
        let g = buchberger(&Ideal::new(&r, qs.clone()).unwrap());
        prop_assume!(g.is_zero_dimensional());
        let h = g.hilbert_vector().unwrap();
        prop_assert_eq!(h.iter().sum::<usize>(), g.standard_monomials().unwrap().len());
        prop_assert_eq!(&h, &binomial_row(3));
        prop_assert_eq!(h, MacaulayOracle::new(&r, &qs).unwrap().hilbert_vector(7).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn four_quadrics_in_four_variables(qs in quadrics(4, 4)) {
        let r = ring(4);
        let g = buchberger(&Ideal::new(&r, qs.clone()).unwrap());
        let oracle = MacaulayOracle::new(&r, &qs).unwrap();
        let by_macaulay = oracle.hilbert_vector(9).unwrap();
        if g.is_zero_dimensional() {
            prop_assert_eq!(g.hilbert_vector().unwrap(), by_macaulay);
        } else {
            prop_assert_ne!(by_macaulay.last().copied(), Some(0));
        }
    }
}

#[test]
fn leading_terms_match_macaulay_rank() {
    let r = Ring::new(&["x", "y"], MonomialOrder::Grevlex);
    let gens = vec![MPoly::parse(&r, "x^2-y").unwrap(), MPoly::parse(&r, "y^2-x").unwrap()];
    let g = buchberger(&Ideal::new(&r, gens).unwrap());
    let lead: Vec<&Monomial> = g.leading_monomials();
    assert_eq!(lead, vec![&Monomial::from_exponents(&[0, 2]), &Monomial::from_exponents(&[2, 0])]);
    assert_eq!(g.standard_monomials().unwrap().len(), 4);
}

#[test]
fn six_generic_quadrics() {
    let r = ring(6);
    let gens: Vec<MPoly> = (0..6)
        .map(|i| {
            let sq = MPoly::var(&r, i).pow(2);
            let cross = &MPoly::var(&r, i) * &MPoly::var(&r, (i + 1) % 6);
            &sq + &cross.scale(&int(i as i64 + 2))
        })
        .collect();
    let g = buchberger(&Ideal::new(&r, gens.clone()).unwrap());
    assert!(g.is_zero_dimensional());
    assert_eq!(g.hilbert_vector().unwrap(), binomial_row(6));
    assert_eq!(MacaulayOracle::new(&r, &gens).unwrap().hilbert_vector(13).unwrap(), binomial_row(6));
}
