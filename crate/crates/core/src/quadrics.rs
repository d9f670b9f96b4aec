//! Symmetric pencils of quadrics, their discriminants, and singular points of
//! hypersurfaces.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{linear_combination, MPoly, PolyMatrix, QuadElem, QuadraticExtension, Ring};
use crate::groebner::{buchberger, Ideal};
use crate::linalg::RatMatrix;
use crate::multalg::NetOfQuadrics;
use crate::rational::{self, Rational};

/// `M(y) = sum_i y_i G_i` over the dual variables `y0 .. y{k-1}`.
pub fn pencil_matrix(net: &NetOfQuadrics) -> PolyMatrix {
    pencil_matrix_in(net, &Ring::indexed("y", net.k())).expect("ring built to size")
}

pub fn pencil_matrix_in(net: &NetOfQuadrics, dual: &Arc<Ring>) -> Result<PolyMatrix> {
    if net.k() == 0 {
        return Err(Error::Invalid("empty net".into()));
    }
    linear_combination(dual, net.grams())
}

/// Determinant of the pencil, with factors when they are known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discriminant {
    pub degree: u32,
    pub poly: MPoly,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub poly: MPoly,
    pub multiplicity: u32,
}

impl Discriminant {
    pub fn from_poly(poly: MPoly) -> Self {
        Discriminant { degree: poly.degree().unwrap_or(0), poly, factors: Vec::new() }
    }
}

pub fn discriminant(net: &NetOfQuadrics) -> Result<Discriminant> {
    Ok(Discriminant::from_poly(pencil_matrix(net).det()?))
}

pub fn discriminant_in(net: &NetOfQuadrics, dual: &Arc<Ring>) -> Result<Discriminant> {
    Ok(Discriminant::from_poly(pencil_matrix_in(net, dual)?.det()?))
}

/// Exact quotient `D / g`.
pub fn extract_factor(d: &Discriminant, g: &MPoly) -> Result<MPoly> {
    if !g.is_homogeneous() {
        return Err(Error::Invalid("factor must be homogeneous".into()));
    }
    d.poly.exact_divide(g)
}

/// Whether every partial derivative of `f` lies in `ideal`, i.e. `f` is
/// singular along the whole scheme `V(ideal)`.
pub fn singular_on_scheme(f: &MPoly, ideal: &Ideal) -> Result<bool> {
    if f.ring() != ideal.ring() {
        return Err(Error::RingMismatch);
    }
    let gb = buchberger(ideal);
    for p in f.gradient() {
        if !gb.contains(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointClass {
    Smooth,
    Node,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    #[serde(serialize_with = "serialize_point")]
    pub point: Vec<QuadElem>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_radicand")]
    pub radicand: Option<Rational>,
    pub on_hypersurface: bool,
    pub gradient_vanishes: bool,
    pub hessian_rank: usize,
    pub classification: PointClass,
}

fn format_elem(x: &QuadElem) -> String {
    if x.is_rational() {
        rational::format(&x.re)
    } else {
        format!("{}+({})*s", rational::format(&x.re), rational::format(&x.im))
    }
}

fn serialize_point<S: serde::Serializer>(p: &[QuadElem], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(format_elem))
}

fn serialize_radicand<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational::format(r)),
        None => s.serialize_none(),
    }
}

fn classify(gradient_vanishes: bool, hessian_rank: usize, nvars: usize) -> PointClass {
    if !gradient_vanishes {
        PointClass::Smooth
    } else if hessian_rank + 1 == nvars {
        PointClass::Node
    } else {
        PointClass::Degenerate
    }
}

fn hessian(f: &MPoly) -> Vec<Vec<MPoly>> {
    f.gradient().iter().map(MPoly::gradient).collect()
}

/// Gradient and Hessian of `f` at a point. For a hypersurface in projective
/// space a singular point is a node iff the Hessian has corank exactly one.
/// Coordinates outside the rationals need the extension they live in.
pub fn classify_point(f: &MPoly, point: &[QuadElem], ext: Option<&QuadraticExtension>) -> Result<SingularityReport> {
    let n = f.ring().nvars();
    if point.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: point.len() });
    }
    if point.iter().all(QuadElem::is_zero) {
        return Err(Error::Invalid("the zero vector is not a projective point".into()));
    }
    let rational = point.iter().all(QuadElem::is_rational);
    if !rational && ext.is_none() {
        return Err(Error::ExtensionRequired);
    }
    let (on, grad_zero, rank) = match (rational, ext) {
        (true, _) => {
            let pt: Vec<Rational> = point.iter().map(|x| x.re.clone()).collect();
            let on = f.evaluate(&pt)?.is_zero();
            let grad_zero = f.gradient().iter().map(|g| g.evaluate(&pt)).collect::<Result<Vec<_>>>()?.iter().all(|v| v.is_zero());
            let h = hessian(f)
                .iter()
                .map(|row| row.iter().map(|e| e.evaluate(&pt)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            (on, grad_zero, RatMatrix::from_rows(h).rank())
        }
        (false, Some(ext)) => {
            let on = ext.evaluate(f, point)?.is_zero();
            let grad_zero = f.gradient().iter().map(|g| ext.evaluate(g, point)).collect::<Result<Vec<_>>>()?.iter().all(QuadElem::is_zero);
            let h = hessian(f)
                .iter()
                .map(|row| row.iter().map(|e| ext.evaluate(e, point)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            (on, grad_zero, ext.rank(&h))
        }
        (false, None) => unreachable!(),
    };
    Ok(SingularityReport {
        point: point.to_vec(),
        radicand: if rational { None } else { ext.map(|e| e.radicand().clone()) },
        on_hypersurface: on,
        gradient_vanishes: grad_zero,
        hessian_rank: rank,
        classification: classify(grad_zero, rank, n),
    })
}

pub fn classify_rational_point(f: &MPoly, point: &[Rational]) -> Result<SingularityReport> {
    let p: Vec<QuadElem> = point.iter().cloned().map(QuadElem::rational).collect();
    classify_point(f, &p, None)
}
