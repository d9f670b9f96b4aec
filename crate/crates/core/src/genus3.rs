//! Genus-3 constructions: the 6x6 matrix of `tr Phi^2`, the web of quadrics
//! it defines, its discriminant, the explicit six-relation algebras and the
//! quartic symmetroid in `w0 .. w3`.

use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curves::{self, PlaneCurve};
use crate::error::{Error, Result};
use crate::exactpoly::{linearize_quadratics, m_ring, MPoly, Monomial, MonomialOrder, PolyMatrix, QuadElem, QuadraticExtension, Ring};
use crate::groebner::{buchberger, Ideal};
use crate::linalg::RatMatrix;
use crate::macaulay::MacaulayOracle;
use crate::multalg::{self, AlgebraOptions, NetOfQuadrics};
use crate::quadrics::{self, SingularityReport};
use crate::rational::{self, serde_rational, Rational};

/// Shared ring `x, y, z` (grevlex) of the plane conic coordinates.
pub fn xyz_ring() -> Arc<Ring> {
    static RING: OnceLock<Arc<Ring>> = OnceLock::new();
    RING.get_or_init(|| Ring::new(&["x", "y", "z"], MonomialOrder::Grevlex)).clone()
}

/// Shared ring `w0 .. w3` of the symmetroid.
pub fn w_ring() -> Arc<Ring> {
    static RING: OnceLock<Arc<Ring>> = OnceLock::new();
    RING.get_or_init(|| Ring::indexed("w", 4)).clone()
}

/// Pairings `b_ij = (v_i, v_j)` (linear in `x, y, z`) and the quadric `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Genus3BundleData {
    pub b11: MPoly,
    pub b12: MPoly,
    pub b22: MPoly,
    pub b33: MPoly,
    pub b34: MPoly,
    pub b44: MPoly,
    pub q: MPoly,
}

impl Genus3BundleData {
    pub fn new(b: [MPoly; 6], q: MPoly) -> Result<Self> {
        let ring = xyz_ring();
        let mut forms = Vec::with_capacity(6);
        for p in b {
            let p = p.with_ring(&ring)?;
            if !p.is_zero() && p.homogeneous_degree() != Some(1) {
                return Err(Error::NotHomogeneous(1));
            }
            forms.push(p);
        }
        let q = q.with_ring(&ring)?;
        if !q.is_zero() && q.homogeneous_degree() != Some(2) {
            return Err(Error::NotHomogeneous(2));
        }
        let [b11, b12, b22, b33, b34, b44]: [MPoly; 6] = forms.try_into().expect("six forms");
        let d = Genus3BundleData { b11, b12, b22, b33, b34, b44, q };
        if d.q1().is_zero() || d.q2().is_zero() {
            return Err(Error::DegenerateInput("Q1 and Q2 must be nonzero".into()));
        }
        Ok(d)
    }

    /// `Q1 = b11 b22 - b12^2`.
    pub fn q1(&self) -> MPoly {
        &(&self.b11 * &self.b22) - &(&self.b12 * &self.b12)
    }

    /// `Q2 = b33 b44 - b34^2`.
    pub fn q2(&self) -> MPoly {
        &(&self.b33 * &self.b44) - &(&self.b34 * &self.b34)
    }

    /// The plane quartic `Q1 Q2 - Q^2`.
    pub fn quartic(&self) -> MPoly {
        &(&self.q1() * &self.q2()) - &(&self.q * &self.q)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FormJson {
    Text(String),
    Poly(MPoly),
}

impl FormJson {
    fn into_poly(self) -> Result<MPoly> {
        match self {
            FormJson::Text(s) => MPoly::parse(&xyz_ring(), &s),
            FormJson::Poly(p) => Ok(p),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    b11: FormJson,
    b12: FormJson,
    b22: FormJson,
    b33: FormJson,
    b34: FormJson,
    b44: FormJson,
    q: FormJson,
}

impl Serialize for Genus3BundleData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let f = |p: &MPoly| FormJson::Poly(p.clone());
        BundleJson {
            b11: f(&self.b11),
            b12: f(&self.b12),
            b22: f(&self.b22),
            b33: f(&self.b33),
            b34: f(&self.b34),
            b44: f(&self.b44),
            q: f(&self.q),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Genus3BundleData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = BundleJson::deserialize(d)?;
        let conv = |f: FormJson| f.into_poly().map_err(D::Error::custom);
        let b = [conv(j.b11)?, conv(j.b12)?, conv(j.b22)?, conv(j.b33)?, conv(j.b34)?, conv(j.b44)?];
        Genus3BundleData::new(b, conv(j.q)?).map_err(D::Error::custom)
    }
}

/// The standard pair: `b11 = x+y, b12 = z, b22 = x-y, b33 = ax+by, b34 = z,
/// b44 = ax-by`, so that `Q1 = x^2-y^2-z^2` and `Q2 = a^2x^2-b^2y^2-z^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StdPair {
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(with = "serde_rational")]
    pub b: Rational,
}

impl StdPair {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        let p = StdPair { a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.is_zero() || self.b.is_zero() {
            return Err(Error::DegenerateParameters("a and b must be nonzero".into()));
        }
        Ok(())
    }

    fn require_distinct_squares(&self) -> Result<()> {
        self.validate()?;
        if &self.a * &self.a == &self.b * &self.b {
            return Err(Error::DegenerateParameters("a^2 = b^2".into()));
        }
        Ok(())
    }

    /// `b11, b12, b22, b33, b34, b44`.
    pub fn forms(&self) -> [MPoly; 6] {
        let r = xyz_ring();
        let v = MPoly::vars(&r);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let ax = x.scale(&self.a);
        let by = y.scale(&self.b);
        [x + y, z.clone(), x - y, &ax + &by, z.clone(), &ax - &by]
    }

    pub fn bundle(&self, q: MPoly) -> Result<Genus3BundleData> {
        self.validate()?;
        Genus3BundleData::new(self.forms(), q)
    }

    /// `(Q1, Q2)` in `x, y, z`.
    pub fn conics(&self) -> (MPoly, MPoly) {
        let [b11, b12, b22, b33, b34, b44] = self.forms();
        (&(&b11 * &b22) - &(&b12 * &b12), &(&b33 * &b44) - &(&b34 * &b34))
    }
}

/// The symmetric 6x6 matrix of quadratic forms in `x, y, z`.
pub fn big_matrix(d: &Genus3BundleData) -> PolyMatrix {
    let r = xyz_ring();
    let p = |a: &MPoly, b: &MPoly| a * b;
    let b12b34 = p(&d.b12, &d.b34);
    let zero = MPoly::zero(&r);
    let rows = vec![
        vec![p(&d.b22, &d.b33), -p(&d.b12, &d.b33), zero.clone(), &d.q - &b12b34, -p(&d.b22, &d.b34), zero.clone()],
        vec![-p(&d.b12, &d.b33), p(&d.b11, &d.b33), zero.clone(), p(&d.b11, &d.b34), &d.q + &b12b34, zero.clone()],
        vec![zero.clone(), zero.clone(), d.q1(), zero.clone(), zero.clone(), d.q.clone()],
        vec![&d.q - &b12b34, p(&d.b11, &d.b34), zero.clone(), p(&d.b11, &d.b44), p(&d.b12, &d.b44), zero.clone()],
        vec![-p(&d.b22, &d.b34), &d.q + &b12b34, zero.clone(), p(&d.b12, &d.b44), p(&d.b22, &d.b44), zero.clone()],
        vec![zero.clone(), zero.clone(), d.q.clone(), zero.clone(), zero, d.q2()],
    ];
    PolyMatrix::from_rows(&r, rows).expect("6x6")
}

/// The 4x4 matrix left after deleting rows and columns 3 and 6 and setting `Q = 0`.
pub fn reduced_matrix(d: &Genus3BundleData) -> PolyMatrix {
    let mut d0 = d.clone();
    d0.q = MPoly::zero(&xyz_ring());
    big_matrix(&d0).submatrix(&[0, 1, 3, 4], &[0, 1, 3, 4])
}

/// Linearizes every entry through `m0 .. m5` and reads off the six Gram
/// matrices; the web's quadrics are in `v1 .. v6`.
pub fn genus3_web(d: &Genus3BundleData) -> Result<NetOfQuadrics> {
    let lin = big_matrix(d).map(linearize_quadratics)?;
    let grams = (0..6)
        .map(|j| {
            let mj = Monomial::var(6, j);
            let mut g = RatMatrix::zeros(6, 6);
            for r in 0..6 {
                for c in 0..6 {
                    g[(r, c)] = lin.get(r, c).coeff(&mj);
                }
            }
            g
        })
        .collect();
    NetOfQuadrics::with_vars((1..=6).map(|i| format!("v{i}")).collect(), grams)
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscriminantSplit {
    /// `det` of the linearized matrix, degree 6 in `m0 .. m5`.
    pub discriminant: MPoly,
    /// `L(Q1) L(Q2) - L(Q)^2`.
    pub quadric: MPoly,
    pub quartic: MPoly,
    pub quadric_rank: usize,
    /// Whether the kernel of the quadric is the plane `L(Q1) = L(Q2) = L(Q) = 0`.
    pub degeneracy_plane: bool,
}

fn linear_coeffs(l: &MPoly) -> Vec<Rational> {
    (0..l.ring().nvars()).map(|i| l.coeff(&Monomial::var(l.ring().nvars(), i))).collect()
}

fn quadratic_gram(q: &MPoly) -> RatMatrix {
    let n = q.ring().nvars();
    let mut g = RatMatrix::zeros(n, n);
    let half = rational::frac(1, 2);
    for (m, c) in q.terms() {
        let e = m.exponents();
        let idx: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        match idx.as_slice() {
            [i] => g[(*i, *i)] = c.clone(),
            [i, j] => {
                g[(*i, *j)] = c * &half;
                g[(*j, *i)] = c * &half;
            }
            _ => unreachable!("quadratic form"),
        }
    }
    g
}

fn same_row_space(a: &RatMatrix, b: &RatMatrix) -> bool {
    let mut rows: Vec<Vec<Rational>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    rows.extend((0..b.rows()).map(|i| b.row(i).to_vec()));
    let joint = RatMatrix::from_rows(rows).rank();
    joint == a.rank() && joint == b.rank()
}

/// Linear forms `L(Q1), L(Q2), L(Q)` in `m0 .. m5`.
pub fn linearized_conics(d: &Genus3BundleData) -> Result<[MPoly; 3]> {
    Ok([linearize_quadratics(&d.q1())?, linearize_quadratics(&d.q2())?, linearize_quadratics(&d.q)?])
}

pub fn discriminant_split(d: &Genus3BundleData) -> Result<DiscriminantSplit> {
    let net = genus3_web(d)?;
    let disc = quadrics::discriminant_in(&net, &m_ring())?.poly;
    let [l1, l2, l] = linearized_conics(d)?;
    let quadric = &(&l1 * &l2) - &(&l * &l);
    let quartic = quadrics::extract_factor(&quadrics::Discriminant::from_poly(disc.clone()), &quadric)?;
    let gram = quadratic_gram(&quadric);
    let kernel = gram.nullspace();
    let plane = RatMatrix::from_rows(vec![linear_coeffs(&l1), linear_coeffs(&l2), linear_coeffs(&l)]);
    let degeneracy_plane = !kernel.is_empty() && same_row_space(&RatMatrix::from_rows(kernel), &plane.nullspace_matrix());
    Ok(DiscriminantSplit { discriminant: disc, quadric, quartic, quadric_rank: gram.rank(), degeneracy_plane })
}

trait NullspaceMatrix {
    fn nullspace_matrix(&self) -> RatMatrix;
}

impl NullspaceMatrix for RatMatrix {
    fn nullspace_matrix(&self) -> RatMatrix {
        let ns = self.nullspace();
        if ns.is_empty() {
            RatMatrix::zeros(0, self.cols())
        } else {
            RatMatrix::from_rows(ns)
        }
    }
}

/// The quartic factor restricted to the plane `L(Q1) = L(Q2) = L(Q) = 0`,
/// in coordinates `p0, p1, p2` along a kernel basis.
pub fn degeneracy_plane_section(d: &Genus3BundleData) -> Result<PlaneCurve> {
    let split = discriminant_split(d)?;
    let [l1, l2, l] = linearized_conics(d)?;
    let basis = RatMatrix::from_rows(vec![linear_coeffs(&l1), linear_coeffs(&l2), linear_coeffs(&l)]).nullspace();
    if basis.len() != 3 {
        return Err(Error::DegenerateInput("L(Q1), L(Q2), L(Q) are linearly dependent".into()));
    }
    let pr = Ring::indexed("p", 3);
    let p = MPoly::vars(&pr);
    let images: Vec<MPoly> = (0..6)
        .map(|k| (0..3).fold(MPoly::zero(&pr), |acc, i| &acc + &p[i].scale(&basis[i][k])))
        .collect();
    PlaneCurve::new(split.quartic.substitute(&images)?)
}

/// `a, b` and the free coefficients `a1 .. a6` of `xi . eta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixRelationParams {
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(with = "serde_rational")]
    pub b: Rational,
    #[serde(with = "serde_rational::vec")]
    pub coeffs: Vec<Rational>,
}

fn xi_eta_ring() -> Arc<Ring> {
    Ring::new(&["xi1", "xi2", "xi3", "eta1", "eta2", "eta3"], MonomialOrder::Grevlex)
}

/// The six relations in `xi1, xi2, xi3, eta1, eta2, eta3`.
pub fn six_relation_polys(p: &SixRelationParams) -> Result<Vec<MPoly>> {
    if p.coeffs.len() != 6 {
        return Err(Error::LengthMismatch { expected: 6, got: p.coeffs.len() });
    }
    let r = xi_eta_ring();
    let v = MPoly::vars(&r);
    let (x1, x2, x3, e1, e2, e3) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
    let (a, b) = (&p.a, &p.b);
    let one = Rational::one();
    let dot = &(&(x1 * e1) + &(x2 * e2)) + &(x3 * e3);
    let sq = |m: &MPoly| m * m;
    let base = [
        &(&(&sq(x1) + &sq(e1)).scale(&((a - b) * (&one + a * b)))
            + &(&sq(x2) + &sq(e2)).scale(&((a + b) * (&one - a * b))))
            + &(&(x1 * e1) - &(x2 * e2)).scale(&(rational::int(2) * (a * a - b * b))),
        &(&(x1 * e2) - &(x2 * e1)) + &(&(x1 * x2) - &(e1 * e2)).scale(a),
        &(&(x1 * e2) + &(x2 * e1)) - &(&(x1 * x2) + &(e1 * e2)).scale(b),
        &(&sq(x2) - &sq(e2)).scale(&(a + b)) - &(&sq(x1) - &sq(e1)).scale(&(a - b)),
        sq(x3),
        sq(e3),
    ];
    Ok(base.iter().zip(&p.coeffs).map(|(r, c)| r + &dot.scale(c)).collect())
}

pub fn six_relations(p: &SixRelationParams) -> Result<NetOfQuadrics> {
    NetOfQuadrics::from_quadrics(&six_relation_polys(p)?)
}

/// `xi_i^2 = a_i (xi . eta)`, `eta_i^2 = b_i (xi . eta)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialParams {
    #[serde(with = "serde_rational::vec")]
    pub a: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub b: Vec<Rational>,
}

impl SpecialParams {
    fn validate(&self) -> Result<()> {
        for v in [&self.a, &self.b] {
            if v.len() != 3 {
                return Err(Error::LengthMismatch { expected: 3, got: v.len() });
            }
        }
        Ok(())
    }
}

pub fn special_case(p: &SpecialParams) -> Result<NetOfQuadrics> {
    p.validate()?;
    let r = xi_eta_ring();
    let v = MPoly::vars(&r);
    let dot = (0..3).fold(MPoly::zero(&r), |acc, i| &acc + &(&v[i] * &v[i + 3]));
    let mut quads = Vec::with_capacity(6);
    for (k, coeffs) in [&p.a, &p.b].into_iter().enumerate() {
        for i in 0..3 {
            let x = &v[3 * k + i];
            quads.push(&(x * x) - &dot.scale(&coeffs[i]));
        }
    }
    NetOfQuadrics::from_quadrics(&quads)
}

/// Over the complex numbers the relations have a common zero iff
/// `e1 sqrt(a1 b1) + e2 sqrt(a2 b2) + e3 sqrt(a3 b3) = 1` for some signs;
/// decidable here when every `a_i b_i` is a rational square.
pub fn surd_criterion(p: &SpecialParams) -> Result<Option<bool>> {
    p.validate()?;
    let mut roots = Vec::with_capacity(3);
    for i in 0..3 {
        match rational::sqrt(&(&p.a[i] * &p.b[i])) {
            Some(r) => roots.push(r),
            None => return Ok(None),
        }
    }
    let one = Rational::one();
    let hit = (0..8u8).any(|mask| {
        let sum = (0..3).fold(Rational::zero(), |acc, i| if mask >> i & 1 == 1 { acc - &roots[i] } else { acc + &roots[i] });
        sum == one
    });
    Ok(Some(hit))
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialReport {
    pub very_stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<usize>>,
    /// Base point predicted by the surd sum, when decidable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surd_base_point: Option<bool>,
    /// Agreement of the two predicates, when the surd one is decidable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
}

pub fn special_report(p: &SpecialParams, opts: &AlgebraOptions) -> Result<SpecialReport> {
    let net = special_case(p)?;
    let report = multalg::algebra_report(&net, opts)?;
    let surd = surd_criterion(p)?;
    Ok(SpecialReport {
        very_stable: report.very_stable,
        dim: report.very_stable.then_some(report.dim),
        hilbert: report.very_stable.then(|| report.hilbert.clone()),
        surd_base_point: surd,
        consistent: surd.map(|s| s == !report.very_stable),
    })
}

/// Whether the special relations have a base point (the net is not very stable).
pub fn special_base_point(p: &SpecialParams) -> Result<bool> {
    Ok(!multalg::is_very_stable(&special_case(p)?)?)
}

/// The symmetric 4x4 matrix of linear forms in `w0 .. w3` with
/// `c = (a-b)(1+ab)` and `d = (a+b)(1-ab)`.
pub fn symmetroid(p: &StdPair) -> Result<PolyMatrix> {
    p.require_distinct_squares()?;
    let r = w_ring();
    let w = MPoly::vars(&r);
    let (a, b) = (&p.a, &p.b);
    let one = Rational::one();
    let c = (a - b) * (&one + a * b);
    let d = (a + b) * (&one - a * b);
    let a2b2 = a * a - b * b;
    let lin = |coeffs: [Rational; 4]| -> MPoly { (0..4).fold(MPoly::zero(&r), |acc, i| &acc + &w[i].scale(&coeffs[i])) };
    let z = Rational::zero;
    let m11 = lin([c.clone(), z(), z(), -(a - b)]);
    let m12 = lin([z(), -b.clone(), -a.clone(), z()]);
    let m13 = lin([-a2b2.clone(), z(), z(), z()]);
    let m14 = lin([z(), one.clone(), -one.clone(), z()]);
    let m22 = lin([d.clone(), z(), z(), a + b]);
    let m23 = lin([z(), one.clone(), one.clone(), z()]);
    let m24 = lin([a2b2.clone(), z(), z(), z()]);
    let m33 = lin([c, z(), z(), a - b]);
    let m34 = lin([z(), -b.clone(), a.clone(), z()]);
    let m44 = lin([d, z(), z(), -(a + b)]);
    let rows = vec![
        vec![m11, m12.clone(), m13.clone(), m14.clone()],
        vec![m12, m22, m23.clone(), m24.clone()],
        vec![m13, m23, m33, m34.clone()],
        vec![m14, m24, m34, m44],
    ];
    PolyMatrix::from_rows(&r, rows)
}

/// The quartic surface `det` of [`symmetroid`].
pub fn symmetroid_det(p: &StdPair) -> Result<MPoly> {
    symmetroid(p)?.det()
}

/// The pull-back `w0 -> z^2/(a^2-b^2), w1 -> yz, w2 -> zx, w3 -> xy`.
fn w_images(p: &StdPair) -> Vec<MPoly> {
    let r = xyz_ring();
    let v = MPoly::vars(&r);
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let inv = Rational::one() / (&p.a * &p.a - &p.b * &p.b);
    vec![(z * z).scale(&inv), y * z, z * x, x * y]
}

/// Substitutes the standard pair into the 4x4 reduced matrix and compares
/// each entry, modulo `(Q1, Q2)`, with the pull-back of the symmetroid entry.
pub fn mat2_derivation_check(p: &StdPair) -> Result<bool> {
    let sym = symmetroid(p)?;
    let m1 = reduced_matrix(&p.bundle(MPoly::zero(&xyz_ring()))?);
    let (q1, q2) = p.conics();
    let gb = buchberger(&Ideal::new(&xyz_ring(), vec![q1, q2])?);
    let images = w_images(p);
    for i in 0..4 {
        for j in 0..4 {
            let lhs = gb.normal_form(m1.get(i, j))?;
            let rhs = gb.normal_form(&sym.get(i, j).substitute(&images)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    SchemeVerified,
    Node,
    Degenerate,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeEntry {
    pub locus: String,
    #[serde(rename = "type")]
    pub kind: NodeKind,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeReport {
    pub nodes: Vec<NodeEntry>,
    pub count: usize,
}

/// The three coordinate-pair loci, each a pair of points on a coordinate line
/// of the plane `w0 = 0`.
pub fn line_loci(p: &StdPair) -> Vec<(String, Vec<MPoly>)> {
    let r = w_ring();
    let w = MPoly::vars(&r);
    let (a2, b2) = (&p.a * &p.a, &p.b * &p.b);
    let one = Rational::one();
    let sq = |i: usize, c: &Rational| (&w[i] * &w[i]).scale(c);
    vec![
        ("w0=w1=0, (a^2-1)w2^2+(a^2-b^2)w3^2=0".into(), vec![w[0].clone(), w[1].clone(), &sq(2, &(&a2 - &one)) + &sq(3, &(&a2 - &b2))]),
        ("w0=w2=0, (b^2-1)w1^2-(b^2-a^2)w3^2=0".into(), vec![w[0].clone(), w[2].clone(), &sq(1, &(&b2 - &one)) - &sq(3, &(&b2 - &a2))]),
        ("w0=w3=0, (b^2-1)w1^2-(a^2-1)w2^2=0".into(), vec![w[0].clone(), w[3].clone(), &sq(1, &(&b2 - &one)) - &sq(2, &(&a2 - &one))]),
    ]
}

/// Whether every partial derivative of the symmetroid vanishes at the four
/// points `(Q1 = Q2 = 0)` through the pull-back to `x, y, z`.
pub fn intersection_points_singular(p: &StdPair) -> Result<bool> {
    let det = symmetroid_det(p)?;
    let (q1, q2) = p.conics();
    let gb = buchberger(&Ideal::new(&xyz_ring(), vec![q1, q2])?);
    let images = w_images(p);
    for g in det.gradient() {
        if !gb.contains(&g.substitute(&images)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn symmetroid_nodes(p: &StdPair) -> Result<NodeReport> {
    p.require_distinct_squares()?;
    let one = Rational::one();
    if (&p.a * &p.a - &one) * (&p.b * &p.b - &one) == one {
        return Err(Error::DegenerateParameters("(a^2-1)(b^2-1) = 1".into()));
    }
    let det = symmetroid_det(p)?;
    let mut nodes = Vec::with_capacity(10);
    for (label, gens) in line_loci(p) {
        let ok = quadrics::singular_on_scheme(&det, &Ideal::new(&w_ring(), gens)?)?;
        for sign in ["+", "-"] {
            nodes.push(NodeEntry { locus: format!("{label} [{sign}]"), kind: NodeKind::SchemeVerified, verified: ok });
        }
    }
    let ok = intersection_points_singular(p)?;
    for signs in ["++", "+-", "-+", "--"] {
        nodes.push(NodeEntry {
            locus: format!("image of Q1=Q2=0 [{signs}]"),
            kind: NodeKind::SchemeVerified,
            verified: ok,
        });
    }
    let count = nodes.iter().filter(|n| n.verified).count();
    Ok(NodeReport { nodes, count })
}

/// `(0, sqrt(a^2-1), sqrt(b^2-1), 0)` on the locus `w0 = w3 = 0`, cleared of
/// denominators, when both roots are rational.
pub fn rational_line_point(p: &StdPair) -> Option<Vec<Rational>> {
    let one = Rational::one();
    let u = rational::sqrt(&(&p.a * &p.a - &one))?;
    let v = rational::sqrt(&(&p.b * &p.b - &one))?;
    let l = num_integer::Integer::lcm(u.denom(), v.denom());
    let scale = Rational::from_integer(l);
    Some(vec![Rational::zero(), u * &scale, v * &scale, Rational::zero()])
}

/// Gradient and Hessian of the symmetroid at a rational point.
pub fn classify_symmetroid_point(p: &StdPair, point: &[Rational]) -> Result<SingularityReport> {
    quadrics::classify_rational_point(&symmetroid_det(p)?, point)
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionReport {
    #[serde(with = "serde_rational")]
    pub radicand: Rational,
    pub conics: Vec<MPoly>,
    #[serde(serialize_with = "serialize_lambda")]
    pub lambda: Option<QuadElem>,
    /// `C+ - C-` is a multiple of `w2 w3`.
    pub meet_on_coordinate_lines: bool,
    pub holds: bool,
}

fn serialize_lambda<S: serde::Serializer>(l: &Option<QuadElem>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match l {
        Some(x) if x.is_rational() => s.serialize_str(&rational::format(&x.re)),
        Some(x) => s.serialize_str(&format!("{}+({})*s", rational::format(&x.re), rational::format(&x.im))),
        None => s.serialize_none(),
    }
}

/// `det|_{w0=0} = lambda C+ C-` with
/// `C± = (b^2-1)w1^2 - (a^2-1)w2^2 + (a^2-b^2)w3^2 ∓ 2s w2 w3`, `s^2 = (1-a^2)(a^2-b^2)`.
pub fn section_two_conics_report(p: &StdPair) -> Result<SectionReport> {
    let det = symmetroid_det(p)?;
    let plane = Ring::new(&["w1", "w2", "w3"], MonomialOrder::Grevlex);
    let pv = MPoly::vars(&plane);
    let section = det.substitute(&[MPoly::zero(&plane), pv[0].clone(), pv[1].clone(), pv[2].clone()])?;
    let one = Rational::one();
    let (a2, b2) = (&p.a * &p.a, &p.b * &p.b);
    let radicand = (&one - &a2) * (&a2 - &b2);
    let curve = match PlaneCurve::new(section) {
        Ok(c) => c,
        Err(_) => {
            return Ok(SectionReport { radicand, conics: vec![], lambda: None, meet_on_coordinate_lines: false, holds: false })
        }
    };
    let (ext, ring, s) = match rational::sqrt(&radicand) {
        Some(root) => (None, plane.clone(), MPoly::constant(&plane, root)),
        None => {
            let ext = QuadraticExtension::new(radicand.clone())?;
            let ring = ext.ring_over(&plane);
            let s = MPoly::var(&ring, 3);
            (Some(ext), ring, s)
        }
    };
    let w = MPoly::vars(&ring);
    let sq = |i: usize, c: &Rational| (&w[i] * &w[i]).scale(c);
    let common = &(&sq(0, &(&b2 - &one)) - &sq(1, &(&a2 - &one))) + &sq(2, &(&a2 - &b2));
    let cross = (&(&w[1] * &w[2]) * &s).scale(&rational::int(2));
    let conics = vec![&common - &cross, &common + &cross];
    let lambda = curves::verify_product(&curve, &conics, ext.as_ref())?;
    let diff = &conics[0] - &conics[1];
    let w2w3 = &w[1] * &w[2];
    let meet = diff.is_zero() || diff.exact_divide(&w2w3).map(|q| !q.terms().iter().any(|(m, _)| m.exponents()[..3].iter().any(|&e| e > 0))).unwrap_or(false);
    let holds = lambda.is_some() && meet;
    Ok(SectionReport { radicand, conics, lambda, meet_on_coordinate_lines: meet, holds })
}

pub fn section_two_conics(p: &StdPair) -> Result<bool> {
    Ok(section_two_conics_report(p)?.holds)
}

/// Hilbert vector through the Macaulay oracle modulo a large prime; see
/// [`crate::macaulay`] for why agreement with `(1+t)^n` is exact.
pub fn macaulay_hilbert(net: &NetOfQuadrics) -> Result<Vec<usize>> {
    let ring = net.ring(MonomialOrder::Grevlex);
    let oracle = MacaulayOracle::new(&ring, &net.quadrics(MonomialOrder::Grevlex))?;
    oracle.hilbert_vector_mod(crate::macaulay::PRIMES[0], 2 * net.n() as u32 + 1)
}
