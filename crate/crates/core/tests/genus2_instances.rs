use num_traits::Signed;
use proptest::prelude::*;

use multalg::genus2::{self, Genus2Curve, LorenzenPoint, LorenzenVariant, OddBundleData, VgpNet};
use multalg::linalg::RatMatrix;
use multalg::multalg::{build_algebra, AlgebraOptions};
use multalg::rational::{self, frac, int, Rational};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Decimal expansion as an exact rational.
fn decimal(s: &str) -> Rational {
    let (whole, frac_part) = s.split_once('.').unwrap();
    let num = rational::parse(&format!("{whole}{frac_part}")).unwrap();
    num / rational::parse(&format!("1{}", "0".repeat(frac_part.len()))).unwrap()
}

fn distinct_ints(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::sample::subsequence((-12i64..=12).collect::<Vec<_>>(), n).prop_shuffle()
}

fn symmetric() -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-5i64..=5, 6).prop_map(|v| {
        RatMatrix::from_i64(&[&[v[0], v[1], v[2]], &[v[1], v[3], v[4]], &[v[2], v[4], v[5]]])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn odd_instances_are_triangles(pts in distinct_ints(9)) {
        let curve = Genus2Curve::new(ints(&pts[..6])).unwrap();
        let data = OddBundleData { a: ints(&pts[6..]) };
        let net = genus2::odd_net(&curve, &data).unwrap();
        let alg = build_algebra(&net).unwrap();
        prop_assert_eq!(alg.hilbert(), &[1, 3, 3, 1]);
        prop_assert!(alg.all_pairings_nondegenerate().unwrap());
        prop_assert!(genus2::odd_relations_are_squares(&net));
        let t = genus2::odd_triangle(&curve, &data).unwrap();
        prop_assert!(t.holds);
        prop_assert_eq!(t.discriminant.poly.homogeneous_degree(), Some(3));
    }

    #[test]
    fn branch_identity_on_random_triples(q1 in symmetric(), q2 in symmetric(), q3 in symmetric()) {
        let Ok(v) = VgpNet::new(q1, q2, q3) else { return Ok(()) };
        let r = genus2::vgp_branch_identity_report(&v).unwrap();
        prop_assert!(r.holds);
        prop_assert!(r.direct.degree().unwrap_or(0) <= 6);
    }

    #[test]
    fn net_json_roundtrip(q1 in symmetric(), q2 in symmetric(), q3 in symmetric()) {
        let Ok(v) = VgpNet::new(q1, q2, q3) else { return Ok(()) };
        let back: VgpNet = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(back.matrices(), v.matrices());
    }
}

#[test]
fn odd_instance_on_branch_point_is_not_very_stable() {
    let curve = Genus2Curve::new(ints(&[0, 1, 2, 3, 4, 5])).unwrap();
    for a in [[0, 6, 7], [-1, 5, 7], [-1, 6, 3]] {
        let net = genus2::odd_net(&curve, &OddBundleData { a: ints(&a) }).unwrap();
        assert!(!multalg::multalg::is_very_stable(&net).unwrap());
    }
}

/// j-invariants checked against a numerical computation: the discriminant
/// cubic projected from one of its points is a double cover of the line
/// branched over a binary quartic, whose invariants give j to 60 digits.
#[test]
fn lorenzen_j_matches_projection() {
    let cases = [
        ([2, 3, 5], [(1, 2), (1, 3), (1, 5)], "2781.96606451433578306545017159074954573296321070634009455908"),
        ([2, 3, 5], [(1, 3), (1, 5), (1, 7)], "19257.3298460194408702669916304277739890032734798368300180777"),
        ([3, 4, 7], [(2, 3), (-1, 4), (3, 5)], "2127.01439082245113183482359545250844767446030530905413243438"),
    ];
    let tol = frac(1, 1_000_000_000_000_000_000) * frac(1, 1_000_000_000_000_000_000) * frac(1, 1_000_000_000);
    for (rst, u, expected) in cases {
        let p = LorenzenPoint::new(ints(&rst), u.iter().map(|&(n, d)| frac(n, d)).collect()).unwrap();
        let r = genus2::lorenzen_discriminant_report(&p, LorenzenVariant::Printed, &AlgebraOptions::default()).unwrap();
        assert!(r.very_stable && r.smooth);
        assert_eq!(r.dim, Some(8));
        let j = r.j.unwrap();
        assert!((&j - decimal(expected)).abs() < tol, "j = {j}");
    }
}

#[test]
fn lorenzen_j_fixture() {
    let p = LorenzenPoint::new(ints(&[2, 3, 5]), vec![frac(1, 2), frac(1, 3), frac(1, 5)]).unwrap();
    let r = genus2::lorenzen_discriminant_report(&p, LorenzenVariant::Printed, &AlgebraOptions::default()).unwrap();
    let expected = rational::parse(
        "8073191552396097528978579324061597068930677035627290111609606353478938779140606316297621166941934685509074927937394750808726031377325073960016/\
         2901973412032070266715499439877484391541305963754401642826015618105037511824225686282013355995504831621026417064213325749773464007830646025",
    )
    .unwrap();
    assert_eq!(r.j, Some(expected));
}

#[test]
fn both_readings_of_the_fourth_bracket_are_very_stable() {
    let p = LorenzenPoint::new(ints(&[2, 3, 5]), vec![frac(1, 2), frac(1, 3), frac(1, 5)]).unwrap();
    let opts = AlgebraOptions::default();
    let printed = genus2::lorenzen_discriminant_report(&p, LorenzenVariant::Printed, &opts).unwrap();
    let swapped = genus2::lorenzen_discriminant_report(&p, LorenzenVariant::Swapped, &opts).unwrap();
    for r in [&printed, &swapped] {
        assert!(r.very_stable && r.smooth);
        assert_eq!(r.hilbert.as_deref(), Some(&[1, 3, 3, 1][..]));
        assert_eq!(r.pairings_nondegenerate, Some(true));
    }
}
