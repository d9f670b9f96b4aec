use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Variable names plus the monomial order used for storing terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            order,
        })
    }

    /// `prefix0 .. prefix{n-1}` in grevlex.
    pub fn indexed(prefix: &str, n: usize) -> Arc<Ring> {
        let vars: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Ring::new(&vars, MonomialOrder::Grevlex)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { vars: self.vars.clone(), order })
    }

    /// Same variables followed by `extra`.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Arc<Ring> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Arc::new(Ring { vars, order: self.order })
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Sparse polynomial with exact rational coefficients. Terms are stored
/// strictly decreasing in the ring's order and never carry a zero coefficient.
#[derive(Clone)]
pub struct MPoly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl MPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), Rational::one())
    }

    /// All ring variables, in order.
    pub fn vars(ring: &Arc<Ring>) -> Vec<MPoly> {
        (0..ring.nvars()).map(|i| Self::var(ring, i)).collect()
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity differs from ring");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        MPoly { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity differs from ring");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::from_sorted_unchecked(ring, terms, true)
    }

    pub(crate) fn from_sorted_unchecked(
        ring: &Arc<Ring>,
        mut terms: Vec<(Monomial, Rational)>,
        sort: bool,
    ) -> Self {
        if sort {
            let o = ring.order();
            terms.sort_by(|a, b| o.compare(&b.0, &a.0));
        }
        MPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        let o = self.ring.order();
        self.terms
            .binary_search_by(|(t, _)| o.compare(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponents()[var] as u32).max().unwrap_or(0)
    }

    /// Degree when every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_ring(&self, other: &MPoly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &MPoly, negate: bool) -> MPoly {
        let o = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match o.compare(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        MPoly { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MPoly::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MPoly::from_sorted_unchecked(&self.ring, terms, true))
    }

    /// Multiplication by `c * m`; monomial multiplication preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect();
        MPoly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.clone(), d * c)).collect();
        MPoly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch { expected: self.ring.nvars(), got: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    pub fn partial_derivative(&self, var: usize) -> Result<MPoly> {
        if var >= self.ring.nvars() {
            return Err(Error::BadVariable(var));
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[var] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let e = m2.exponents()[var];
                m2.exps_mut()[var] = e - 1;
                (m2, c * Rational::from_integer(e.into()))
            })
            .collect();
        Ok(MPoly::from_sorted_unchecked(&self.ring, terms, false))
    }

    pub fn gradient(&self) -> Vec<MPoly> {
        (0..self.ring.nvars())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// images' ring.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch { expected: self.ring.nvars(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch);
        }
        let mut cache: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(&target), p.clone()]).collect();
        let mut total = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut v = MPoly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                v = &v * &cache[i][e as usize];
            }
            total = &total + &v;
        }
        Ok(total)
    }

    /// Re-expresses the polynomial in another ring whose variables include
    /// all variables of this one (matched by name).
    pub fn embed(&self, target: &Arc<Ring>) -> Result<MPoly> {
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v).ok_or_else(|| Error::Invalid(format!("variable {v} missing in target ring"))))
            .collect::<Result<_>>()?;
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u16; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] = x;
            }
            (Monomial::from_exponents(&e), c.clone())
        });
        Ok(MPoly::from_terms(target, terms))
    }

    /// Exact quotient `self / g`. Runs multivariate division by the single
    /// divisor and fails unless the remainder vanishes.
    pub fn exact_divide(&self, g: &MPoly) -> Result<MPoly> {
        self.check_ring(g)?;
        let (lm, lc) = match g.terms.first() {
            Some(t) => t,
            None => return Err(Error::DivisionByZero),
        };
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !lm.divides(m) {
                // the leading term of the remainder survives; not exact
                return Err(Error::NotDivisible);
            }
            let qm = lm.quotient_of(m);
            let qc = c * &lc_inv;
            rem = rem.merge(&g.mul_term(&qm, &qc), true);
            quot.push((qm, qc));
        }
        Ok(MPoly { ring: self.ring.clone(), terms: quot })
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        MPoly { ring: self.ring.clone(), terms }
    }

    /// Re-sorts terms for a ring with the same variables in a different order.
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Result<MPoly> {
        if ring.vars() != self.ring.vars() {
            return Err(Error::RingMismatch);
        }
        Ok(MPoly::from_sorted_unchecked(ring, self.terms.clone(), true))
    }

    /// Parses expressions such as `x^2 - 3/4*x*y + (y+z)^3`.
    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<MPoly> {
        super::parse::parse_poly(ring, s)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let a = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts = Vec::new();
            if !a.is_one() || m.is_one() {
                parts.push(rational::format(&a));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.ring.vars()[i].clone()),
                    _ => parts.push(format!("{}^{}", self.ring.vars()[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        MPoly { ring: self.ring.clone(), terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &'a MPoly) -> MPoly {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ring3() -> Arc<Ring> {
        Ring::new(&["x", "y", "z"], MonomialOrder::Grevlex)
    }

    fn p(r: &Arc<Ring>, s: &str) -> MPoly {
        MPoly::parse(r, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring3();
        assert_eq!(&p(&r, "x+y") * &p(&r, "x-y"), p(&r, "x^2-y^2"));
        let q = p(&r, "3*x*y - 1/2*z^2 + 4");
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn cube_of_trinomial() {
        let r = ring3();
        let s = p(&r, "x+y+z");
        let cube = s.pow(3);
        assert_eq!(cube.len(), 10);
        assert_eq!(cube, &(&s * &s) * &s);
        assert_eq!(cube.coeff(&Monomial::from_exponents(&[1, 1, 1])), int(6));
        assert_eq!(cube.coeff(&Monomial::from_exponents(&[2, 1, 0])), int(3));
    }

    #[test]
    fn evaluation() {
        let r = Ring::new(&["x", "y"], MonomialOrder::Grevlex);
        assert_eq!(p(&r, "x^2+y").evaluate(&[int(2), int(3)]).unwrap(), int(7));
        let q = p(&r, "x^3 - 2*x*y + 5/3");
        assert_eq!(q.evaluate(&[int(0), int(0)]).unwrap(), frac(5, 3));
        assert!(matches!(q.evaluate(&[int(1)]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn derivatives() {
        let r = ring3();
        assert_eq!(p(&r, "x^2*y").partial_derivative(0).unwrap(), p(&r, "2*x*y"));
        assert!(p(&r, "7").partial_derivative(0).unwrap().is_zero());
        assert!(p(&r, "x").partial_derivative(3).is_err());
    }

    #[test]
    fn division() {
        let r = Ring::new(&["x", "y"], MonomialOrder::Grevlex);
        assert_eq!(p(&r, "x^2-y^2").exact_divide(&p(&r, "x-y")).unwrap(), p(&r, "x+y"));
        assert_eq!(p(&r, "x^2+y^2").exact_divide(&p(&r, "x-y")), Err(Error::NotDivisible));
        assert_eq!(p(&r, "x").exact_divide(&MPoly::zero(&r)), Err(Error::DivisionByZero));
    }

    #[test]
    fn ring_mismatch() {
        let a = ring3();
        let b = Ring::new(&["u", "v"], MonomialOrder::Grevlex);
        assert_eq!(MPoly::var(&a, 0).try_add(&MPoly::var(&b, 0)), Err(Error::RingMismatch));
    }

    #[test]
    fn display_roundtrip() {
        let r = ring3();
        let q = p(&r, "-x^2*y + 3/4*z - 2");
        assert_eq!(q.to_string(), "-x^2*y + 3/4*z - 2");
        assert_eq!(p(&r, &q.to_string()), q);
    }

    #[test]
    fn substitution_and_embedding() {
        let r = ring3();
        let t = Ring::new(&["t"], MonomialOrder::Grevlex);
        let images = [p(&t, "1"), p(&t, "2*t"), p(&t, "t^2")];
        assert_eq!(p(&r, "x*z - y^2").substitute(&images).unwrap(), p(&t, "-3*t^2"));
        let big = r.extended(&["s"]);
        let e = p(&r, "x*y").embed(&big).unwrap();
        assert_eq!(e, p(&big, "x*y"));
    }
}
