//! Nets of conics attached to rank-2 bundles on genus-2 curves.
//!
//! * odd degree: the diagonal net `sum_i f(a_i) L_i(x) xi_i^2` with `L_i` the
//!   Lagrange basis on `a_1, a_2, a_3`, expanded in `1, x, x^2`;
//! * even degree: Lorenzen's quadrics `h_1, h_2, h_3` in `xi_0, xi_1, xi_2`;
//! * nets spanned by three symmetric matrices `Q_1, Q_2, Q_3`, whose
//!   discriminant restricted to the conic `(1, 2u, u^2)` is `det(Q_1 + 2u Q_2 + u^2 Q_3)`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curves::{self, PlaneCurve};
use crate::error::{Error, Result};
use crate::exactpoly::{MPoly, MonomialOrder, PolyMatrix, Ring};
use crate::groebner::{buchberger, Ideal};
use crate::linalg::RatMatrix;
use crate::multalg::{self, AlgebraOptions, NetOfQuadrics};
use crate::quadrics::{self, Discriminant};
use crate::rational::{self, serde_rational, Rational};

fn distinct(xs: &[Rational]) -> bool {
    xs.iter().enumerate().all(|(i, x)| xs[i + 1..].iter().all(|y| y != x))
}

/// `y^2 = (x - x_1) ... (x - x_6)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genus2Curve {
    #[serde(with = "serde_rational::vec")]
    branch: Vec<Rational>,
}

impl Genus2Curve {
    pub fn new(branch: Vec<Rational>) -> Result<Self> {
        if branch.len() != 6 {
            return Err(Error::LengthMismatch { expected: 6, got: branch.len() });
        }
        if !distinct(&branch) {
            return Err(Error::DegenerateInput("branch points must be distinct".into()));
        }
        Ok(Genus2Curve { branch })
    }

    pub fn branch(&self) -> &[Rational] {
        &self.branch
    }

    /// `f(x) = prod (x - x_i)`.
    pub fn f(&self, x: &Rational) -> Rational {
        self.branch.iter().fold(Rational::one(), |acc, b| acc * (x - b))
    }
}

/// Images `a_1, a_2, a_3` of the divisor of the annihilating section.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddBundleData {
    #[serde(with = "serde_rational::vec")]
    pub a: Vec<Rational>,
}

fn check_odd(d: &OddBundleData) -> Result<()> {
    if d.a.len() != 3 {
        return Err(Error::LengthMismatch { expected: 3, got: d.a.len() });
    }
    if !distinct(&d.a) {
        return Err(Error::DegenerateInput("a_1, a_2, a_3 must be distinct".into()));
    }
    Ok(())
}

/// Coefficients of `1, x, x^2` in the Lagrange polynomial `L_i` on `a`.
fn lagrange(a: &[Rational], i: usize) -> [Rational; 3] {
    let (j, k) = match i {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    };
    let den = (&a[i] - &a[j]) * (&a[i] - &a[k]);
    [&a[j] * &a[k] / &den, -(&a[j] + &a[k]) / &den, Rational::one() / &den]
}

pub fn odd_net(c: &Genus2Curve, d: &OddBundleData) -> Result<NetOfQuadrics> {
    check_odd(d)?;
    let weights: Vec<Rational> = d.a.iter().map(|a| c.f(a)).collect();
    let grams = (0..3)
        .map(|k| {
            let mut g = RatMatrix::zeros(3, 3);
            for i in 0..3 {
                g[(i, i)] = &weights[i] * &lagrange(&d.a, i)[k];
            }
            g
        })
        .collect();
    NetOfQuadrics::with_vars(vec!["xi1".into(), "xi2".into(), "xi3".into()], grams)
}

/// The chord of `y0 y2 = y1^2` through `(1, s, s^2)` and `(1, t, t^2)`.
pub fn chord(ring: &Arc<Ring>, s: &Rational, t: &Rational) -> MPoly {
    let y = MPoly::vars(ring);
    &(&y[2] - &y[1].scale(&(s + t))) + &y[0].scale(&(s * t))
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangleReport {
    pub discriminant: Discriminant,
    /// Chords opposite to `a_1, a_2, a_3`.
    pub sides: Vec<MPoly>,
    #[serde(with = "serde_rational")]
    pub scalar: Rational,
    pub holds: bool,
}

/// The discriminant is a nonzero multiple of the product of the three
/// chords, the chord opposite `a_i` joining the other two points.
pub fn odd_triangle(c: &Genus2Curve, d: &OddBundleData) -> Result<TriangleReport> {
    let net = odd_net(c, d)?;
    let mut disc = quadrics::discriminant(&net)?;
    let ring = disc.poly.ring().clone();
    let sides: Vec<MPoly> = (0..3)
        .map(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            chord(&ring, &d.a[j], &d.a[k])
        })
        .collect();
    let product = &(&sides[0] * &sides[1]) * &sides[2];
    let mut holds = true;
    let scalar = match disc.poly.exact_divide(&product) {
        Ok(q) if q.is_constant() && !q.is_zero() => q.constant_term(),
        _ => {
            holds = false;
            Rational::zero()
        }
    };
    for (i, side) in sides.iter().enumerate() {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let line = PlaneCurve::new(side.clone())?;
        holds &= curves::line_through_conic_points(&line, &d.a[j], &d.a[k])?;
    }
    if holds {
        disc.factors = sides.iter().map(|s| quadrics::Factor { poly: s.clone(), multiplicity: 1 }).collect();
    }
    Ok(TriangleReport { discriminant: disc, sides, scalar, holds })
}

pub fn odd_triangle_check(c: &Genus2Curve, d: &OddBundleData) -> Result<bool> {
    Ok(odd_triangle(c, d)?.holds)
}

/// Whether the relations generate the same ideal as `xi_i^2`.
pub fn odd_relations_are_squares(net: &NetOfQuadrics) -> bool {
    let ring = net.ring(MonomialOrder::Grevlex);
    let ours = buchberger(&Ideal::new(&ring, net.quadrics(MonomialOrder::Grevlex)).expect("same ring"));
    let squares: Vec<MPoly> = MPoly::vars(&ring).iter().map(|v| v * v).collect();
    let theirs = buchberger(&Ideal::new(&ring, squares).expect("same ring"));
    ours.elements() == theirs.elements()
}

/// Branch points `0, 1, inf, r, s, t` and the point `(u_0, u_1, u_2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LorenzenPoint {
    #[serde(with = "serde_rational::vec")]
    pub rst: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub u: Vec<Rational>,
}

impl LorenzenPoint {
    pub fn new(rst: Vec<Rational>, u: Vec<Rational>) -> Result<Self> {
        let p = LorenzenPoint { rst, u };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rst.len() != 3 {
            return Err(Error::LengthMismatch { expected: 3, got: self.rst.len() });
        }
        if self.u.len() != 3 {
            return Err(Error::LengthMismatch { expected: 3, got: self.u.len() });
        }
        let mut all = self.rst.clone();
        all.extend([Rational::zero(), Rational::one()]);
        if !distinct(&all) {
            return Err(Error::DegenerateInput("r, s, t must be distinct and differ from 0 and 1".into()));
        }
        Ok(())
    }
}

/// Reading of the fourth bracket of `h_1`: as printed it repeats `xi_0`;
/// the alternative puts `xi_1` there, as in the first bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LorenzenVariant {
    #[default]
    Printed,
    Swapped,
}

pub fn lorenzen_quadrics(p: &LorenzenPoint, variant: LorenzenVariant, ring: &Arc<Ring>) -> Result<[MPoly; 3]> {
    p.validate()?;
    let (r, s, t) = (&p.rst[0], &p.rst[1], &p.rst[2]);
    let (u0, u1, u2) = (&p.u[0], &p.u[1], &p.u[2]);
    let one = Rational::one();
    let four = rational::int(4);
    let xi = MPoly::vars(ring);
    let lin = |c0: Rational, c1: Rational, c2: Rational| -> MPoly {
        &(&xi[0].scale(&c0) + &xi[1].scale(&c1)) + &xi[2].scale(&c2)
    };
    let sq = |m: MPoly| &m * &m;
    let zero = Rational::zero;

    let b1 = lin(u0 * u0 - &one, u0 * u1 + u2, u2 * u0 + u1);
    let b2 = lin(u0 * u1 - u2, u1 * u1 + &one, u1 * u2 + u0);
    let b3 = lin(u0.clone(), u1.clone(), zero());
    let b4 = match variant {
        LorenzenVariant::Printed => lin(u0 * u0 + &one + (u0 * u1 + u2), zero(), u2 * u0 - u1),
        LorenzenVariant::Swapped => lin(u0 * u0 + &one, u0 * u1 + u2, u2 * u0 - u1),
    };
    let h1 = &(&(&sq(b1).scale(&(r * s * t)) - &sq(b2).scale(&(s * t))) + &sq(b3).scale(&(&four * r * s)))
        - &sq(b4).scale(&(r * t));

    let pp = lin(u0.clone(), u1.clone(), u2.clone());
    let p2 = &pp * &pp;
    let (x0, x1, x2) = (&xi[0], &xi[1], &xi[2]);
    let a = u0 * u0 + u1 * u1 + u2 * u2 + &one;
    let b = u0 * u0 - u1 * u1 + u2 * u2 - &one;
    let c = u0 * u2 - u1;
    let d = u2 * u0 + u1;
    let e = u1 * u2 + u0;
    let f = u0 * u1 + u2;
    let terms = [
        (&(&(&(x0 * x0) + &(x1 * x1)) + &(x2 * x2)) + &p2).scale(&(t * &a)),
        (&(&(&(x0 * x0) - &(x1 * x1)) + &(x2 * x2)) - &p2).scale(&(s * t * &b)),
        (&(x0 * x2) + &(&pp * x1)).scale(&(&four * r * &c)),
        (&(x2 * x0) - &(&pp * x1)).scale(&(&four * s * r * &d)),
        (&(x1 * x2) - &(&pp * x0)).scale(&(&four * s * &e)),
        (&(x0 * x1) - &(&pp * x2)).scale(&(&four * r * t * &f)),
    ];
    let h2 = terms.iter().fold(MPoly::zero(ring), |acc, x| &acc + x);

    let c1 = lin(u2 * u0 + u1, u1 * u2 + u0, u2 * u2 - &one);
    let c2 = lin(u2 * u0 - u1, u1 * u2 + u0, u2 * u2 + &one);
    let c3 = lin(u0 * u1 + u2, u2 * u2 + &one, u1 * u2 - u0);
    let c4 = lin(zero(), u1.clone(), u2.clone());
    let h3 = &(&(&sq(c1).scale(s) - &sq(c2)) - &sq(c3).scale(t)) + &sq(c4).scale(&(&four * r));
    Ok([h1, h2, h3])
}

pub fn lorenzen_net(p: &LorenzenPoint, variant: LorenzenVariant) -> Result<NetOfQuadrics> {
    let ring = Ring::new(&["xi0", "xi1", "xi2"], MonomialOrder::Grevlex);
    NetOfQuadrics::from_quadrics(&lorenzen_quadrics(p, variant, &ring)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct LorenzenReport {
    pub variant: LorenzenVariant,
    pub very_stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairings_nondegenerate: Option<bool>,
    pub cubic: MPoly,
    pub smooth: bool,
    #[serde(serialize_with = "serialize_opt")]
    pub j: Option<Rational>,
}

fn serialize_opt<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational::format(r)),
        None => s.serialize_none(),
    }
}

/// Algebra data, discriminant cubic, smoothness and j-invariant. A net that
/// is not very stable or a singular cubic is reported, not an error.
pub fn lorenzen_discriminant_report(
    p: &LorenzenPoint,
    variant: LorenzenVariant,
    opts: &AlgebraOptions,
) -> Result<LorenzenReport> {
    let net = lorenzen_net(p, variant)?;
    let (very_stable, dim, hilbert, pairings) = match multalg::build_algebra_with(&net, opts) {
        Ok(a) => (true, Some(a.dim()), Some(a.hilbert().to_vec()), Some(a.all_pairings_nondegenerate()?)),
        Err(Error::NotVeryStable) => (false, None, None, None),
        Err(e) => return Err(e),
    };
    let disc = quadrics::discriminant(&net)?;
    let (smooth, j) = match PlaneCurve::new(disc.poly.clone()) {
        Ok(cubic) if cubic.degree() == 3 && very_stable => {
            let smooth = curves::is_smooth(&cubic);
            (smooth, if smooth { Some(curves::j_invariant(&cubic)?) } else { None })
        }
        Ok(cubic) if cubic.degree() == 3 => (curves::is_smooth(&cubic), None),
        _ => (false, None),
    };
    Ok(LorenzenReport {
        variant,
        very_stable,
        dim,
        hilbert,
        pairings_nondegenerate: pairings,
        cubic: disc.poly,
        smooth,
        j,
    })
}

/// Three symmetric 3x3 matrices spanning a net of conics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VgpNet {
    q: [RatMatrix; 3],
}

#[derive(Serialize, Deserialize)]
struct VgpJson {
    #[serde(with = "serde_rational::vec")]
    q1: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    q2: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    q3: Vec<Rational>,
}

impl VgpNet {
    pub fn new(q1: RatMatrix, q2: RatMatrix, q3: RatMatrix) -> Result<Self> {
        for q in [&q1, &q2, &q3] {
            if q.rows() != 3 || q.cols() != 3 || !q.is_symmetric() {
                return Err(Error::Invalid("expected symmetric 3x3 matrices".into()));
            }
        }
        let stacked = RatMatrix::from_rows(vec![q1.data().to_vec(), q2.data().to_vec(), q3.data().to_vec()]);
        if stacked.rank() != 3 {
            return Err(Error::DegenerateInput("Q1, Q2, Q3 are linearly dependent".into()));
        }
        Ok(VgpNet { q: [q1, q2, q3] })
    }

    pub fn matrices(&self) -> &[RatMatrix; 3] {
        &self.q
    }
}

impl Serialize for VgpNet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [a, b, c] = &self.q;
        VgpJson { q1: a.data().to_vec(), q2: b.data().to_vec(), q3: c.data().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for VgpNet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = VgpJson::deserialize(d)?;
        let m = |v: Vec<Rational>| {
            if v.len() == 9 {
                Ok(RatMatrix::from_vec(3, 3, v))
            } else {
                Err(D::Error::custom("each matrix needs 9 entries"))
            }
        };
        VgpNet::new(m(j.q1)?, m(j.q2)?, m(j.q3)?).map_err(D::Error::custom)
    }
}

pub fn vgp_net(v: &VgpNet) -> NetOfQuadrics {
    NetOfQuadrics::with_vars(vec!["x".into(), "y".into(), "z".into()], v.q.to_vec()).expect("validated")
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchIdentity {
    /// `D(1, 2u, u^2)`.
    pub restricted: MPoly,
    /// `det(Q_1 + 2u Q_2 + u^2 Q_3)`.
    pub direct: MPoly,
    pub holds: bool,
}

pub fn vgp_branch_identity_report(v: &VgpNet) -> Result<BranchIdentity> {
    let disc = quadrics::discriminant(&vgp_net(v))?;
    let ur = Ring::new(&["u"], MonomialOrder::Grevlex);
    let u = MPoly::var(&ur, 0);
    let images = [MPoly::one(&ur), u.scale(&rational::int(2)), &u * &u];
    let restricted = disc.poly.substitute(&images)?;
    let pencil = PolyMatrix::from_fn(&ur, 3, 3, |i, j| {
        v.q.iter()
            .zip(&images)
            .fold(MPoly::zero(&ur), |acc, (q, c)| &acc + &c.scale(&q[(i, j)]))
    });
    let direct = pencil.det()?;
    let holds = restricted == direct;
    Ok(BranchIdentity { restricted, direct, holds })
}

pub fn vgp_branch_identity(v: &VgpNet) -> Result<bool> {
    Ok(vgp_branch_identity_report(v)?.holds)
}

/// The plane quartic `Q_1 Q_3 - Q_2^2`; a zero quartic is degenerate input.
pub fn vgp_genus3_curve(v: &VgpNet) -> Result<PlaneCurve> {
    let net = vgp_net(v);
    let q = net.quadrics(MonomialOrder::Grevlex);
    let f = &(&q[0] * &q[2]) - &(&q[1] * &q[1]);
    if f.is_zero() {
        return Err(Error::DegenerateInput("Q1 Q3 - Q2^2 vanishes identically".into()));
    }
    PlaneCurve::new(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn sample_curve() -> Genus2Curve {
        Genus2Curve::new(ints(&[0, 1, 2, 3, 4, 5])).unwrap()
    }

    #[test]
    fn odd_net_is_diagonal_with_cube_algebra() {
        let d = OddBundleData { a: ints(&[-1, 6, 7]) };
        let net = odd_net(&sample_curve(), &d).unwrap();
        for g in net.grams() {
            for i in 0..3 {
                for j in 0..3 {
                    assert!(i == j || g[(i, j)].is_zero());
                }
            }
        }
        let alg = multalg::build_algebra(&net).unwrap();
        assert_eq!((alg.dim(), alg.hilbert().to_vec()), (8, vec![1, 3, 3, 1]));
        assert!(odd_relations_are_squares(&net));
        assert!(odd_triangle_check(&sample_curve(), &d).unwrap());
    }

    #[test]
    fn odd_net_degenerate_cases() {
        let c = sample_curve();
        let repeated = OddBundleData { a: ints(&[-1, 6, 6]) };
        assert!(matches!(odd_net(&c, &repeated), Err(Error::DegenerateInput(_))));
        assert!(matches!(odd_triangle_check(&c, &repeated), Err(Error::DegenerateInput(_))));
        // f(a_1) = 0 removes xi_1 from every relation
        let on_branch = OddBundleData { a: ints(&[2, 6, 7]) };
        assert!(!multalg::is_very_stable(&odd_net(&c, &on_branch).unwrap()).unwrap());
    }

    #[test]
    fn lorenzen_h2_at_origin() {
        // at u = 0 the xi_0^2 coefficient of h2 is t*1 + s*t*(-1)
        let p = LorenzenPoint::new(ints(&[2, 3, 5]), ints(&[0, 0, 0])).unwrap();
        let ring = Ring::new(&["xi0", "xi1", "xi2"], MonomialOrder::Grevlex);
        let [_, h2, _] = lorenzen_quadrics(&p, LorenzenVariant::Printed, &ring).unwrap();
        let m = crate::exactpoly::Monomial::from_exponents(&[2, 0, 0]);
        assert_eq!(h2.coeff(&m), int(5 - 15));
    }

    #[test]
    fn lorenzen_grams_are_symmetric() {
        let p = LorenzenPoint::new(ints(&[2, 3, 5]), vec![frac(1, 2), frac(1, 3), frac(1, 5)]).unwrap();
        let net = lorenzen_net(&p, LorenzenVariant::Printed).unwrap();
        assert_eq!(net.k(), 3);
        assert!(net.grams().iter().all(RatMatrix::is_symmetric));
        assert!(LorenzenPoint::new(ints(&[2, 2, 5]), ints(&[0, 0, 0])).is_err());
        assert!(LorenzenPoint::new(ints(&[1, 2, 5]), ints(&[0, 0, 0])).is_err());
    }

    #[test]
    fn lorenzen_degenerate_u() {
        // (0,0,1) is a base point at (r,s,t) = (3/2,3,2), u = (1,1,0)
        let p = LorenzenPoint::new(vec![frac(3, 2), int(3), int(2)], ints(&[1, 1, 0])).unwrap();
        let ring = Ring::new(&["xi0", "xi1", "xi2"], MonomialOrder::Grevlex);
        let base = [int(0), int(0), int(1)];
        for h in lorenzen_quadrics(&p, LorenzenVariant::Printed, &ring).unwrap() {
            assert!(h.evaluate(&base).unwrap().is_zero());
        }
        let r = lorenzen_discriminant_report(&p, LorenzenVariant::Printed, &AlgebraOptions::default()).unwrap();
        assert!(!r.very_stable);
        assert!(r.dim.is_none() && r.j.is_none());
    }

    #[test]
    fn vgp_identity_examples() {
        let id = RatMatrix::identity(3);
        let q3 = RatMatrix::from_i64(&[&[2, 0, 1], &[0, -1, 0], &[1, 0, 3]]);
        let v = VgpNet::new(id.clone(), RatMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]), q3);
        assert!(vgp_branch_identity(&v.unwrap()).unwrap());
        // Q1 = Q3 = I, Q2 = 0 is linearly dependent; the identity itself still holds
        let ur = Ring::new(&["u"], MonomialOrder::Grevlex);
        let expected = MPoly::parse(&ur, "(1+u^2)^3").unwrap();
        let det = PolyMatrix::from_fn(&ur, 3, 3, |i, j| {
            if i == j {
                MPoly::parse(&ur, "1+u^2").unwrap()
            } else {
                MPoly::zero(&ur)
            }
        })
        .det()
        .unwrap();
        assert_eq!(det, expected);
        assert!(VgpNet::new(id.clone(), RatMatrix::zeros(3, 3), id).is_err());
    }

    #[test]
    fn vgp_quartics() {
        let diag = |a: i64, b: i64, c: i64| RatMatrix::from_i64(&[&[a, 0, 0], &[0, b, 0], &[0, 0, c]]);
        let xy = RatMatrix::from_rows(vec![
            vec![int(0), frac(1, 2), int(0)],
            vec![frac(1, 2), int(0), int(0)],
            vec![int(0), int(0), int(0)],
        ]);
        let v = VgpNet::new(diag(1, 1, 0), xy.clone(), diag(0, 1, 1)).unwrap();
        let c = vgp_genus3_curve(&v).unwrap();
        let r = c.poly().ring().clone();
        assert_eq!(c.poly(), &MPoly::parse(&r, "(x^2+y^2)*(y^2+z^2)-x^2*y^2").unwrap());
        let rank_one = VgpNet::new(diag(1, 0, 0), xy, diag(0, 1, 0)).unwrap();
        assert!(matches!(vgp_genus3_curve(&rank_one), Err(Error::DegenerateInput(_))));
    }
}
