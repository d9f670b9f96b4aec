//! Quadratic extensions `Q(s)` with `s^2 = D`.
//!
//! Polynomials over the extension are ordinary [`MPoly`]s in a ring that has
//! one extra variable for `s`; [`QuadraticExtension::reduce`] takes the
//! normal form modulo `s^2 - D`, which leaves every term with `s`-degree at
//! most one.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::{MPoly, Ring};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticExtension {
    radicand: Rational,
    name: String,
}

/// Element `re + im * s` of the extension field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub re: Rational,
    pub im: Rational,
}

impl QuadElem {
    pub fn rational(r: Rational) -> Self {
        QuadElem { re: r, im: Rational::zero() }
    }

    pub fn new(re: Rational, im: Rational) -> Self {
        QuadElem { re, im }
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }
}

impl QuadraticExtension {
    /// `D` must not be the square of a rational, otherwise `s^2 - D` is
    /// reducible and the quotient is not a field.
    pub fn new(radicand: Rational) -> Result<Self> {
        Self::named(radicand, "s")
    }

    pub fn named(radicand: Rational, name: &str) -> Result<Self> {
        if rational::is_square(&radicand) {
            return Err(Error::Invalid(format!(
                "radicand {} is a rational square; use rational coordinates instead",
                rational::format(&radicand)
            )));
        }
        Ok(QuadraticExtension { radicand, name: name.to_string() })
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn generator_name(&self) -> &str {
        &self.name
    }

    /// `base` with the generator appended as its last variable.
    pub fn ring_over(&self, base: &Arc<Ring>) -> Arc<Ring> {
        base.extended(&[self.name.as_str()])
    }

    fn generator_index(&self, ring: &Arc<Ring>) -> Result<usize> {
        ring.var_index(&self.name)
            .ok_or_else(|| Error::Invalid(format!("ring has no generator {:?}", self.name)))
    }

    /// Normal form modulo `s^2 - D`.
    pub fn reduce(&self, p: &MPoly) -> Result<MPoly> {
        let k = self.generator_index(p.ring())?;
        let terms = p.terms().iter().map(|(m, c)| {
            let e = m.exponents()[k];
            let mut exps = m.exponents().to_vec();
            exps[k] = e % 2;
            let c = c * num_traits::pow(self.radicand.clone(), (e / 2) as usize);
            (Monomial::from_exponents(&exps), c)
        });
        Ok(MPoly::from_terms(p.ring(), terms))
    }

    /// Splits a reduced polynomial as `p0 + p1 * s` with `p0, p1` in `base`.
    pub fn split(&self, p: &MPoly, base: &Arc<Ring>) -> Result<(MPoly, MPoly)> {
        let p = self.reduce(p)?;
        let k = self.generator_index(p.ring())?;
        let mut parts = [Vec::new(), Vec::new()];
        for (m, c) in p.terms() {
            let e = m.exponents();
            let rest: Vec<u16> = e.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
            if rest.len() != base.nvars() {
                return Err(Error::RingMismatch);
            }
            parts[e[k] as usize].push((Monomial::from_exponents(&rest), c.clone()));
        }
        let [a, b] = parts;
        Ok((MPoly::from_terms(base, a), MPoly::from_terms(base, b)))
    }

    /// The element as a polynomial in `ring` (which contains the generator).
    pub fn embed_elem(&self, x: &QuadElem, ring: &Arc<Ring>) -> Result<MPoly> {
        let k = self.generator_index(ring)?;
        let s = MPoly::var(ring, k);
        Ok(&MPoly::constant(ring, x.re.clone()) + &s.scale(&x.im))
    }

    pub fn add(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem { re: &x.re + &y.re, im: &x.im + &y.im }
    }

    pub fn sub(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem { re: &x.re - &y.re, im: &x.im - &y.im }
    }

    pub fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem {
            re: &x.re * &y.re + &x.im * &y.im * &self.radicand,
            im: &x.re * &y.im + &x.im * &y.re,
        }
    }

    pub fn inv(&self, x: &QuadElem) -> Result<QuadElem> {
        let norm = &x.re * &x.re - &x.im * &x.im * &self.radicand;
        if norm.is_zero() {
            return Err(Error::Invalid("inverse of zero in quadratic extension".into()));
        }
        Ok(QuadElem { re: &x.re / &norm, im: -&x.im / &norm })
    }

    pub fn div(&self, x: &QuadElem, y: &QuadElem) -> Result<QuadElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// Evaluates a polynomial with rational coefficients at a point with
    /// coordinates in the extension.
    pub fn evaluate(&self, p: &MPoly, point: &[QuadElem]) -> Result<QuadElem> {
        if point.len() != p.ring().nvars() {
            return Err(Error::LengthMismatch { expected: p.ring().nvars(), got: point.len() });
        }
        let one = QuadElem::rational(Rational::one());
        let mut total = QuadElem::zero();
        for (m, c) in p.terms() {
            let mut v = QuadElem::rational(c.clone());
            for (x, &e) in point.iter().zip(m.exponents()) {
                let mut pw = one.clone();
                for _ in 0..e {
                    pw = self.mul(&pw, x);
                }
                v = self.mul(&v, &pw);
            }
            total = self.add(&total, &v);
        }
        Ok(total)
    }

    /// Rank of a matrix with entries in the extension field.
    pub fn rank(&self, rows: &[Vec<QuadElem>]) -> usize {
        let mut m: Vec<Vec<QuadElem>> = rows.to_vec();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(rank, p);
            let inv = self.inv(&m[rank][c]).expect("pivot is nonzero");
            let (top, rest) = m.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            for row in rest.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = self.mul(&row[c], &inv);
                for j in c..ncols {
                    let t = self.mul(&f, &pivot_row[j]);
                    row[j] = self.sub(&row[j], &t);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::MonomialOrder;
    use crate::rational::int;

    #[test]
    fn reduction_and_split() {
        let ext = QuadraticExtension::new(int(15)).unwrap();
        let base = Ring::new(&["x"], MonomialOrder::Grevlex);
        let r = ext.ring_over(&base);
        let p = MPoly::parse(&r, "(x + s)^3").unwrap();
        let red = ext.reduce(&p).unwrap();
        // x^3 + 3 x^2 s + 45 x + 15 s
        assert_eq!(red, MPoly::parse(&r, "x^3 + 3*x^2*s + 45*x + 15*s").unwrap());
        let (a, b) = ext.split(&p, &base).unwrap();
        assert_eq!(a, MPoly::parse(&base, "x^3 + 45*x").unwrap());
        assert_eq!(b, MPoly::parse(&base, "3*x^2 + 15").unwrap());
    }

    #[test]
    fn field_operations() {
        let ext = QuadraticExtension::new(int(2)).unwrap();
        let a = QuadElem::new(int(1), int(1));
        let inv = ext.inv(&a).unwrap();
        assert_eq!(ext.mul(&a, &inv), QuadElem::rational(int(1)));
        assert!(QuadraticExtension::new(int(9)).is_err());
        // rank of [[1, s], [s, 2]] is 1 because s^2 = 2
        let s = QuadElem::new(int(0), int(1));
        let one = QuadElem::rational(int(1));
        let two = QuadElem::rational(int(2));
        assert_eq!(ext.rank(&[vec![one, s.clone()], vec![s, two]]), 1);
    }
}
