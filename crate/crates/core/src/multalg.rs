//! Nets of quadrics and the graded quotient algebras they define.

use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{MPoly, Monomial, MonomialOrder, Ring};
use crate::groebner::{buchberger_with, GroebnerBasis, GroebnerOptions, Ideal};
use crate::linalg::RatMatrix;
use crate::rational::{self, Rational};

/// `k` quadratic forms in `n` variables, given by symmetric Gram matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetOfQuadrics {
    n: usize,
    grams: Vec<RatMatrix>,
    vars: Vec<String>,
}

impl NetOfQuadrics {
    pub fn new(n: usize, grams: Vec<RatMatrix>) -> Result<Self> {
        let vars = (0..n).map(|i| format!("v{i}")).collect();
        Self::with_vars(vars, grams)
    }

    pub fn with_vars(vars: Vec<String>, grams: Vec<RatMatrix>) -> Result<Self> {
        let n = vars.len();
        for g in &grams {
            if g.rows() != n || g.cols() != n {
                return Err(Error::Invalid(format!("Gram matrix is {}x{}, expected {n}x{n}", g.rows(), g.cols())));
            }
            if !g.is_symmetric() {
                return Err(Error::Invalid("Gram matrix is not symmetric".into()));
            }
        }
        Ok(NetOfQuadrics { n, grams, vars })
    }

    /// Gram matrices of homogeneous quadrics sharing one ring.
    pub fn from_quadrics(quads: &[MPoly]) -> Result<Self> {
        let ring = quads.first().ok_or_else(|| Error::Invalid("empty net".into()))?.ring().clone();
        let n = ring.nvars();
        let half = rational::frac(1, 2);
        let mut grams = Vec::with_capacity(quads.len());
        for q in quads {
            if q.ring() != &ring {
                return Err(Error::RingMismatch);
            }
            if !q.is_zero() && q.homogeneous_degree() != Some(2) {
                return Err(Error::NotHomogeneous(2));
            }
            let mut g = RatMatrix::zeros(n, n);
            for (m, c) in q.terms() {
                let idx: Vec<usize> = (0..n).filter(|&i| m.exponents()[i] > 0).collect();
                match idx.as_slice() {
                    [i] => g[(*i, *i)] = c.clone(),
                    [i, j] => {
                        g[(*i, *j)] = c * &half;
                        g[(*j, *i)] = c * &half;
                    }
                    _ => unreachable!("degree-2 monomial"),
                }
            }
            grams.push(g);
        }
        Self::with_vars(ring.vars().to_vec(), grams)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.grams.len()
    }

    pub fn grams(&self) -> &[RatMatrix] {
        &self.grams
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn ring(&self, order: MonomialOrder) -> Arc<Ring> {
        Ring::new(&self.vars, order)
    }

    /// `v^T G v` in `ring`.
    pub fn quadric(ring: &Arc<Ring>, g: &RatMatrix) -> MPoly {
        let n = g.rows();
        let two = rational::int(2);
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                let c = if i == j { g[(i, i)].clone() } else { &g[(i, j)] * &two };
                if !c.is_zero() {
                    terms.push((Monomial::var(n, i).mul(&Monomial::var(n, j)), c));
                }
            }
        }
        MPoly::from_terms(ring, terms)
    }

    pub fn quadrics(&self, order: MonomialOrder) -> Vec<MPoly> {
        let ring = self.ring(order);
        self.grams.iter().map(|g| Self::quadric(&ring, g)).collect()
    }

    /// The net transformed by `G -> P^T G P`.
    pub fn congruence(&self, p: &RatMatrix) -> Result<Self> {
        if p.rows() != self.n || p.cols() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: p.rows() });
        }
        let pt = p.transpose();
        let grams = self.grams.iter().map(|g| pt.mul(g).mul(p)).collect();
        Self::with_vars(self.vars.clone(), grams)
    }
}

#[derive(Serialize, Deserialize)]
struct NetJson {
    n: usize,
    grams: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vars: Option<Vec<String>>,
}

impl Serialize for NetOfQuadrics {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NetJson {
            n: self.n,
            grams: self.grams.iter().map(|g| g.data().iter().map(rational::format).collect()).collect(),
            vars: Some(self.vars.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NetOfQuadrics {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let nj = NetJson::deserialize(d)?;
        let n = nj.n;
        let mut grams = Vec::new();
        for g in &nj.grams {
            if g.len() != n * n {
                return Err(D::Error::custom(format!("Gram matrix with {} entries, expected {}", g.len(), n * n)));
            }
            let data = g.iter().map(|x| rational::parse(x)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
            grams.push(RatMatrix::from_vec(n, n, data));
        }
        let vars = match nj.vars {
            Some(v) if v.len() != n => return Err(D::Error::custom("vars length differs from n")),
            Some(v) => v,
            None => (0..n).map(|i| format!("v{i}")).collect(),
        };
        NetOfQuadrics::with_vars(vars, grams).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Default)]
pub struct AlgebraOptions {
    pub order: MonomialOrder,
    pub deadline: Option<Instant>,
}

/// Graded quotient of the polynomial ring by the quadrics of a net.
#[derive(Debug, Clone)]
pub struct MultiplicityAlgebra {
    net: NetOfQuadrics,
    basis: GroebnerBasis,
    standard: Vec<Monomial>,
    hilbert: Vec<usize>,
    /// `mult_table[i][j]` is the normal form of `standard[i] * standard[j]`.
    mult_table: Vec<Vec<MPoly>>,
}

pub fn relation_basis(net: &NetOfQuadrics, opts: &AlgebraOptions) -> Result<GroebnerBasis> {
    let ring = net.ring(opts.order);
    let ideal = Ideal::new(&ring, net.quadrics(opts.order))?;
    buchberger_with(&ideal, &GroebnerOptions { deadline: opts.deadline })
}

/// True iff the quadrics have no common nonzero zero.
pub fn is_very_stable(net: &NetOfQuadrics) -> Result<bool> {
    is_very_stable_with(net, &AlgebraOptions::default())
}

pub fn is_very_stable_with(net: &NetOfQuadrics, opts: &AlgebraOptions) -> Result<bool> {
    let gb = relation_basis(net, opts)?;
    Ok(gb.is_zero_dimensional())
}

pub fn build_algebra(net: &NetOfQuadrics) -> Result<MultiplicityAlgebra> {
    build_algebra_with(net, &AlgebraOptions::default())
}

pub fn build_algebra_with(net: &NetOfQuadrics, opts: &AlgebraOptions) -> Result<MultiplicityAlgebra> {
    if net.k() != net.n() {
        return Err(Error::DegenerateInput(format!("{} quadrics in {} variables", net.k(), net.n())));
    }
    let basis = relation_basis(net, opts)?;
    if !basis.is_zero_dimensional() {
        return Err(Error::NotVeryStable);
    }
    let standard = basis.standard_monomials()?;
    let hilbert = basis.hilbert_vector()?;
    let ring = basis.ring().clone();
    let one = Rational::from_integer(1.into());
    let top = hilbert.len().saturating_sub(1) as u32;
    let mut mult_table: Vec<Vec<MPoly>> = vec![Vec::with_capacity(standard.len()); standard.len()];
    for i in 0..standard.len() {
        for j in 0..standard.len() {
            let p = if j < i {
                mult_table[j][i].clone()
            } else {
                let m = standard[i].mul(&standard[j]);
                if m.degree() > top {
                    MPoly::zero(&ring)
                } else {
                    basis.normal_form(&MPoly::monomial(&ring, m, one.clone()))?
                }
            };
            mult_table[i].push(p);
        }
    }
    Ok(MultiplicityAlgebra { net: net.clone(), basis, standard, hilbert, mult_table })
}

impl MultiplicityAlgebra {
    pub fn net(&self) -> &NetOfQuadrics {
        &self.net
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn hilbert(&self) -> &[usize] {
        &self.hilbert
    }

    pub fn socle_degree(&self) -> usize {
        self.hilbert.len().saturating_sub(1)
    }

    pub fn mult_table(&self) -> &[Vec<MPoly>] {
        &self.mult_table
    }

    fn indices_of_degree(&self, k: usize) -> Vec<usize> {
        (0..self.standard.len()).filter(|&i| self.standard[i].degree() as usize == k).collect()
    }

    /// Matrix of `A_k x A_{s-k} -> A_s` with `s` the socle degree, and
    /// whether it is nondegenerate.
    pub fn poincare_pairing(&self, k: usize) -> Result<(RatMatrix, bool)> {
        let s = self.socle_degree();
        if k > s {
            return Err(Error::Invalid(format!("degree {k} above socle degree {s}")));
        }
        let socle = self.indices_of_degree(s);
        if socle.len() != 1 {
            return Err(Error::SocleNotOneDimensional(socle.len()));
        }
        let top = &self.standard[socle[0]];
        let (left, right) = (self.indices_of_degree(k), self.indices_of_degree(s - k));
        let mut m = RatMatrix::zeros(left.len(), right.len());
        for (a, &i) in left.iter().enumerate() {
            for (b, &j) in right.iter().enumerate() {
                m[(a, b)] = self.mult_table[i][j].coeff(top);
            }
        }
        let nondegenerate = m.rows() == m.cols() && m.rank() == m.rows();
        Ok((m, nondegenerate))
    }

    pub fn pairing_ranks(&self) -> Result<Vec<usize>> {
        (0..=self.socle_degree()).map(|k| Ok(self.poincare_pairing(k)?.0.rank())).collect()
    }

    pub fn all_pairings_nondegenerate(&self) -> Result<bool> {
        for k in 0..=self.socle_degree() {
            if !self.poincare_pairing(k)?.1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn report(&self) -> Result<AlgebraReport> {
        Ok(AlgebraReport {
            dim: self.dim(),
            hilbert: self.hilbert.clone(),
            very_stable: true,
            pairing_ranks: self.pairing_ranks()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub dim: usize,
    pub hilbert: Vec<usize>,
    pub very_stable: bool,
    pub pairing_ranks: Vec<usize>,
}

impl AlgebraReport {
    pub fn not_very_stable() -> Self {
        AlgebraReport { dim: 0, hilbert: Vec::new(), very_stable: false, pairing_ranks: Vec::new() }
    }
}

/// Report for any net: a failed very-stability check is a result, not an error.
pub fn algebra_report(net: &NetOfQuadrics, opts: &AlgebraOptions) -> Result<AlgebraReport> {
    match build_algebra_with(net, opts) {
        Ok(a) => a.report(),
        Err(Error::NotVeryStable) => Ok(AlgebraReport::not_very_stable()),
        Err(e) => Err(e),
    }
}
