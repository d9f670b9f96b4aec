//! Plane curves: smoothness, the invariants of ternary cubics, and exact
//! factorization checks.
//!
//! The degree-4 and degree-6 invariants `S`, `T` of a ternary cubic are
//! obtained as the one-dimensional solution spaces of the infinitesimal
//! invariance equations under the off-diagonal generators of `sl(3)`,
//! restricted to polynomials of weight zero for the diagonal torus. They are
//! scaled so that the Weierstrass cubic `z y^2 - x^3 - a x z^2 - b z^3` has
//! `S = a` and `T = b`.

use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{monomials_of_degree, MPoly, Monomial, MonomialOrder, QuadElem, QuadraticExtension, Ring};
use crate::groebner::{buchberger, Ideal};
use crate::linalg::RatMatrix;
use crate::rational::{self, Rational};

/// Homogeneous nonzero form in three variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PlaneCurve {
    f: MPoly,
}

impl PlaneCurve {
    pub fn new(f: MPoly) -> Result<Self> {
        if f.ring().nvars() != 3 {
            return Err(Error::Invalid(format!("plane curve needs 3 variables, ring has {}", f.ring().nvars())));
        }
        if f.is_zero() {
            return Err(Error::DegenerateInput("zero polynomial".into()));
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous(f.degree().unwrap_or(0)));
        }
        Ok(PlaneCurve { f })
    }

    pub fn poly(&self) -> &MPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.f.degree().unwrap_or(0)
    }
}

/// The partials have no common zero besides the origin.
pub fn is_smooth(c: &PlaneCurve) -> bool {
    let ring = c.f.ring().with_order(MonomialOrder::Grevlex);
    let grads: Vec<MPoly> = c.f.gradient().iter().map(|g| g.with_ring(&ring).expect("same variables")).collect();
    let ideal = Ideal::new(&ring, grads).expect("same ring");
    buchberger(&ideal).is_zero_dimensional()
}

struct CubicInvariants {
    /// Exponent vectors of the ten cubic monomials; `c_k` is the coefficient of `cubic[k]`.
    cubic: Vec<Monomial>,
    s: MPoly,
    t: MPoly,
    /// `j = scale * S^3 / (S^3 - lambda * T^2)`.
    scale: Rational,
    lambda: Rational,
}

fn coefficient_ring() -> Arc<Ring> {
    Ring::indexed("c", 10)
}

/// Action of `x_v d/dx_u` on the coefficients: `delta c_beta = (beta_u + 1) c_{beta + e_u - e_v}`.
fn derivation(cubic: &[Monomial], ring: &Arc<Ring>, u: usize, v: usize) -> Vec<MPoly> {
    cubic
        .iter()
        .map(|beta| {
            let e = beta.exponents();
            if e[v] == 0 {
                return MPoly::zero(ring);
            }
            let mut src = e.to_vec();
            src[u] += 1;
            src[v] -= 1;
            let k = cubic.iter().position(|m| m.exponents() == src.as_slice()).expect("cubic monomial");
            MPoly::var(ring, k).scale(&rational::int(e[u] as i64 + 1))
        })
        .collect()
}

fn invariant_of_degree(cubic: &[Monomial], d: u32) -> MPoly {
    let ring = coefficient_ring();
    let unknowns: Vec<Monomial> = monomials_of_degree(10, d, MonomialOrder::Grevlex)
        .into_iter()
        .filter(|m| {
            (0..3).all(|v| {
                let w: u32 = m.exponents().iter().zip(cubic).map(|(&a, c)| a as u32 * c.exponents()[v] as u32).sum();
                w == d
            })
        })
        .collect();
    let one = Rational::one();
    let mut images: Vec<Vec<MPoly>> = Vec::new();
    for u in 0..3 {
        for v in 0..3 {
            if u == v {
                continue;
            }
            let delta = derivation(cubic, &ring, u, v);
            let col: Vec<MPoly> = unknowns
                .iter()
                .map(|m| {
                    let p = MPoly::monomial(&ring, m.clone(), one.clone());
                    let mut acc = MPoly::zero(&ring);
                    for (k, dk) in delta.iter().enumerate() {
                        if !dk.is_zero() && m.exponents()[k] > 0 {
                            acc = &acc + &(&p.partial_derivative(k).unwrap() * dk);
                        }
                    }
                    acc
                })
                .collect();
            images.push(col);
        }
    }
    // one equation per (derivation, monomial of the image)
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for col in &images {
        let mut mons: Vec<Monomial> = col.iter().flat_map(|p| p.terms().iter().map(|(m, _)| m.clone())).collect();
        mons.sort_by(|a, b| MonomialOrder::Grevlex.compare(a, b));
        mons.dedup();
        for m in &mons {
            rows.push(col.iter().map(|p| p.coeff(m)).collect());
        }
    }
    let kernel = RatMatrix::from_rows(rows).nullspace();
    assert_eq!(kernel.len(), 1, "degree-{d} invariants of ternary cubics should form a line, found dimension {}", kernel.len());
    MPoly::from_terms(&ring, unknowns.into_iter().zip(kernel[0].iter().cloned()))
}

fn weierstrass_coeffs(cubic: &[Monomial], a: &Rational, b: &Rational) -> Vec<Rational> {
    // z y^2 - x^3 - a x z^2 - b z^3
    let find = |e: [u16; 3]| cubic.iter().position(|m| m.exponents() == e).unwrap();
    let mut c = vec![Rational::zero(); 10];
    c[find([0, 2, 1])] = Rational::one();
    c[find([3, 0, 0])] = -Rational::one();
    c[find([1, 0, 2])] = -a.clone();
    c[find([0, 0, 3])] = -b.clone();
    c
}

/// Classical j-invariant of the Weierstrass curve `y^2 = x^3 + a x + b`.
fn weierstrass_j(a: &Rational, b: &Rational) -> Rational {
    let a3 = a * a * a * rational::int(4);
    rational::int(1728) * &a3 / (&a3 + b * b * rational::int(27))
}

fn invariants() -> &'static CubicInvariants {
    static INV: OnceLock<CubicInvariants> = OnceLock::new();
    INV.get_or_init(|| {
        let cubic = monomials_of_degree(3, 3, MonomialOrder::Grevlex);
        let s = invariant_of_degree(&cubic, 4);
        let t = invariant_of_degree(&cubic, 6);
        let (zero, one) = (Rational::zero(), Rational::one());
        let sigma = s.evaluate(&weierstrass_coeffs(&cubic, &one, &zero)).unwrap();
        let tau = t.evaluate(&weierstrass_coeffs(&cubic, &zero, &one)).unwrap();
        assert!(!sigma.is_zero() && !tau.is_zero(), "invariants vanish on the Weierstrass calibration curves");
        let s = s.scale(&sigma.recip());
        let t = t.scale(&tau.recip());
        // j(W(1,0)) fixes the scale, j(W(1,1)) fixes lambda
        let scale = weierstrass_j(&one, &zero);
        let lambda = &one - &scale / weierstrass_j(&one, &one);
        let inv = CubicInvariants { cubic, s, t, scale, lambda };
        for (a, b) in [(0, 1), (2, 3), (-3, 5), (1, 1)] {
            let (a, b) = (rational::int(a), rational::int(b));
            let c = weierstrass_coeffs(&inv.cubic, &a, &b);
            let (sv, tv) = (inv.s.evaluate(&c).unwrap(), inv.t.evaluate(&c).unwrap());
            assert!(sv == a && tv == b, "cubic invariants are not a and b on the Weierstrass family");
            assert_eq!(inv.j_from(&sv, &tv), Some(weierstrass_j(&a, &b)), "no consistent j normalization");
        }
        inv
    })
}

impl CubicInvariants {
    fn j_from(&self, s: &Rational, t: &Rational) -> Option<Rational> {
        let s3 = s * s * s;
        let den = &s3 - &self.lambda * t * t;
        (!den.is_zero()).then(|| &self.scale * s3 / den)
    }

    fn coefficients(&self, c: &PlaneCurve) -> Vec<Rational> {
        self.cubic.iter().map(|m| c.f.coeff(m)).collect()
    }
}

/// `(S, T)` of a plane cubic.
pub fn cubic_invariants(c: &PlaneCurve) -> Result<(Rational, Rational)> {
    if c.degree() != 3 {
        return Err(Error::Invalid(format!("expected a cubic, got degree {}", c.degree())));
    }
    let inv = invariants();
    let coeffs = inv.coefficients(c);
    Ok((inv.s.evaluate(&coeffs)?, inv.t.evaluate(&coeffs)?))
}

/// Constants `(N, lambda)` with `j = N S^3 / (S^3 - lambda T^2)`.
pub fn j_normalization() -> (Rational, Rational) {
    let inv = invariants();
    (inv.scale.clone(), inv.lambda.clone())
}

/// The j-invariant of a smooth cubic; the denominator is a nonzero multiple
/// of the discriminant, so it vanishes exactly on singular cubics.
pub fn j_invariant(c: &PlaneCurve) -> Result<Rational> {
    let (s, t) = cubic_invariants(c)?;
    invariants().j_from(&s, &t).ok_or(Error::SingularCurve)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    #[serde(rename = "S", with = "rational::serde_rational")]
    pub s: Rational,
    #[serde(rename = "T", with = "rational::serde_rational")]
    pub t: Rational,
    #[serde(serialize_with = "serialize_opt")]
    pub j: Option<Rational>,
    pub smooth: bool,
}

fn serialize_opt<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational::format(r)),
        None => s.serialize_none(),
    }
}

pub fn invariant_report(c: &PlaneCurve) -> Result<InvariantReport> {
    let (s, t) = cubic_invariants(c)?;
    let j = invariants().j_from(&s, &t);
    let smooth = is_smooth(c);
    Ok(InvariantReport { s, t, j, smooth })
}

/// Checks `F = lambda * prod(factors)` and returns `lambda`. With an
/// extension the factors live in its ring (base variables plus the
/// generator) and `lambda` may be irrational.
pub fn verify_product(c: &PlaneCurve, factors: &[MPoly], ext: Option<&QuadraticExtension>) -> Result<Option<QuadElem>> {
    let base = c.f.ring().clone();
    match ext {
        None => {
            let mut p = MPoly::one(&base);
            for f in factors {
                p = p.try_mul(f)?;
            }
            let (Some(lf), Some(lp)) = (c.f.leading_coeff(), p.leading_coeff()) else { return Ok(None) };
            if c.f.leading_monomial() != p.leading_monomial() {
                return Ok(None);
            }
            let lambda = lf / lp;
            Ok((p.scale(&lambda) == c.f).then(|| QuadElem::rational(lambda)))
        }
        Some(ext) => {
            let ring = factors.first().map(|f| f.ring().clone()).unwrap_or_else(|| ext.ring_over(&base));
            let mut p = MPoly::one(&ring);
            for f in factors {
                p = ext.reduce(&p.try_mul(f)?)?;
            }
            let (p0, p1) = ext.split(&p, &base)?;
            let m = match (p0.leading_monomial(), p1.leading_monomial()) {
                (Some(m), _) | (None, Some(m)) => m.clone(),
                (None, None) => return Ok(None),
            };
            let denom = QuadElem::new(p0.coeff(&m), p1.coeff(&m));
            let lambda = ext.div(&QuadElem::rational(c.f.coeff(&m)), &denom)?;
            if lambda.is_zero() {
                return Ok(None);
            }
            // lambda * (p0 + s p1) = (re p0 + im D p1) + s (re p1 + im p0)
            let d = ext.radicand();
            let r0 = &p0.scale(&lambda.re) + &p1.scale(&(&lambda.im * d));
            let r1 = &p1.scale(&lambda.re) + &p0.scale(&lambda.im);
            Ok((r0 == c.f && r1.is_zero()).then_some(lambda))
        }
    }
}

/// Whether a line in `(y0, y1, y2)` passes through `(1, t, t^2)` for both values.
pub fn line_through_conic_points(line: &PlaneCurve, t1: &Rational, t2: &Rational) -> Result<bool> {
    if line.degree() != 1 {
        return Err(Error::Invalid("expected a line".into()));
    }
    let on = |t: &Rational| line.f.evaluate(&[Rational::one(), t.clone(), t * t]).map(|v| v.is_zero());
    Ok(on(t1)? && on(t2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn xyz() -> Arc<Ring> {
        Ring::new(&["x", "y", "z"], MonomialOrder::Grevlex)
    }

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::new(MPoly::parse(&xyz(), s).unwrap()).unwrap()
    }

    #[test]
    fn smoothness() {
        assert!(is_smooth(&curve("x^4+y^4+z^4")));
        assert!(!is_smooth(&curve("y^2*z-x^3")));
        assert!(is_smooth(&curve("x^2+y^2+z^2")));
        assert!(!is_smooth(&curve("x*y")));
    }

    #[test]
    fn weierstrass_values() {
        // classical values: j(y^2 = x^3 + x) = 1728, j(y^2 = x^3 + 1) = 0
        assert_eq!(j_invariant(&curve("z*y^2-x^3-x*z^2")).unwrap(), int(1728));
        assert_eq!(j_invariant(&curve("z*y^2-x^3-z^3")).unwrap(), int(0));
        assert_eq!(j_invariant(&curve("y^2*z-x^3-x*z^2-z^3")).unwrap(), frac(6912, 31));
        let (s, t) = cubic_invariants(&curve("z*y^2-x^3-2*x*z^2-3*z^3")).unwrap();
        assert_eq!((s, t), (int(2), int(3)));
        assert_eq!(j_normalization(), (int(1728), frac(-27, 4)));
    }

    #[test]
    fn singular_cubics_have_no_j() {
        assert_eq!(j_invariant(&curve("y^2*z-x^3")), Err(Error::SingularCurve));
        assert_eq!(j_invariant(&curve("y^2*z-x^3-x^2*z")), Err(Error::SingularCurve));
        assert_eq!(j_invariant(&curve("x*y*z")), Err(Error::SingularCurve));
    }

    #[test]
    fn products() {
        let r = xyz();
        let p = |s: &str| MPoly::parse(&r, s).unwrap();
        let lam = verify_product(&curve("x^2-y^2"), &[p("x-y"), p("x+y")], None).unwrap();
        assert_eq!(lam, Some(QuadElem::rational(int(1))));
        assert_eq!(verify_product(&curve("x^2+y^2"), &[p("x-y"), p("x+y")], None).unwrap(), None);
        assert_eq!(
            verify_product(&curve("6*x^2-6*y^2"), &[p("2*x-2*y"), p("x+y")], None).unwrap(),
            Some(QuadElem::rational(int(3)))
        );
    }

    #[test]
    fn products_over_extension() {
        let ext = QuadraticExtension::new(int(2)).unwrap();
        let r = ext.ring_over(&xyz());
        let p = |s: &str| MPoly::parse(&r, s).unwrap();
        let f = curve("x^2-2*y^2");
        let lam = verify_product(&f, &[p("x-s*y"), p("x+s*y")], Some(&ext)).unwrap();
        assert_eq!(lam, Some(QuadElem::rational(int(1))));
        // s * (x - s y) * (x + s y) / s: an irrational scalar
        let lam = verify_product(&curve("2*x^2-4*y^2"), &[p("s*x-2*y"), p("x+s*y")], Some(&ext)).unwrap();
        assert_eq!(lam, Some(QuadElem::new(int(0), int(1))));
        assert_eq!(verify_product(&f, &[p("x-s*y"), p("x-s*y")], Some(&ext)).unwrap(), None);
    }

    #[test]
    fn chords() {
        let r = Ring::indexed("y", 3);
        let line = PlaneCurve::new(MPoly::parse(&r, "y2-5*y1+6*y0").unwrap()).unwrap();
        assert!(line_through_conic_points(&line, &int(2), &int(3)).unwrap());
        let y0 = PlaneCurve::new(MPoly::parse(&r, "y0").unwrap()).unwrap();
        assert!(!line_through_conic_points(&y0, &int(0), &int(0)).unwrap());
    }
}
