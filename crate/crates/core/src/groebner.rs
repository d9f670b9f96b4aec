//! Buchberger's algorithm, normal forms, and the finite-dimensional quotient
//! data (standard monomials, Hilbert vector) of zero-dimensional ideals.
//!
//! Pairs are selected by the normal strategy (smallest lcm degree first, ties
//! broken by the lcm in lex order and then by index) and filtered with the
//! Gebauer-Moeller update, which implements both Buchberger criteria. For
//! homogeneous input the computation stops as soon as every monomial of the
//! current degree is a multiple of a leading term: at that point the basis is
//! already complete, so nothing beyond the socle degree is ever computed.

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{monomials_of_degree, same_ring, MPoly, Monomial, MonomialOrder, Ring};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<MPoly>,
}

impl Ideal {
    /// Zero generators are dropped; all generators must share one ring.
    pub fn new(ring: &Arc<Ring>, generators: Vec<MPoly>) -> Result<Self> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), generators })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(MPoly::is_homogeneous)
    }
}

#[derive(Debug, Clone, Default)]
pub struct GroebnerOptions {
    pub deadline: Option<Instant>,
}

/// Reduced, monic Groebner basis, sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    elements: Vec<MPoly>,
    ints: Vec<IntPoly>,
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

struct Builder {
    ring: Arc<Ring>,
    order: MonomialOrder,
    polys: Vec<MPoly>,
    ints: Vec<IntPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("basis elements are nonzero")
    }

    fn reducers(&self) -> Vec<&IntPoly> {
        self.ints.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p).collect()
    }

    /// Gebauer-Moeller update for a new (monic, nonzero) element.
    fn insert(&mut self, h: MPoly) {
        let hi = self.polys.len();
        let hlm = h.leading_monomial().unwrap().clone();
        self.ints.push(IntPoly::from_poly(&h));
        self.polys.push(h);
        self.active.push(false);

        let mut candidates: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lcm = self.lm(g).lcm(&hlm);
                Pair { i: g, j: hi, degree: lcm.degree(), lcm }
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = self.lm(p.i).is_coprime(&hlm);
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !self.lm(p.i).is_coprime(&hlm));

        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let drop = hlm.divides(&p.lcm)
                && self.lm(p.i).lcm(&hlm) != p.lcm
                && self.lm(p.j).lcm(&hlm) != p.lcm;
            if !drop {
                self.pairs.push(p);
            }
        }
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && hlm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }

    fn pair_key_cmp(&self, a: &Pair, b: &Pair) -> Ordering {
        a.degree
            .cmp(&b.degree)
            .then_with(|| MonomialOrder::Lex.compare(&a.lcm, &b.lcm))
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let best = (0..self.pairs.len()).min_by(|&a, &b| self.pair_key_cmp(&self.pairs[a], &self.pairs[b]))?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> MPoly {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let one = Rational::from_integer(1.into());
        let a = f.mul_term(&self.lm(p.i).quotient_of(&p.lcm), &one);
        let b = g.mul_term(&self.lm(p.j).quotient_of(&p.lcm), &one);
        &a - &b
    }

    /// Whether every monomial of degree `d` lies in the leading-term ideal.
    fn covers_degree(&self, d: u32) -> bool {
        let lts: Vec<&Monomial> = (0..self.polys.len()).filter(|&i| self.active[i]).map(|i| self.lm(i)).collect();
        monomials_of_degree(self.ring.nvars(), d, self.order)
            .iter()
            .all(|m| lts.iter().any(|lt| lt.divides(m)))
    }
}

/// Primitive integer multiple of a polynomial, used for fraction-free reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IntPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    fn from_poly(p: &MPoly) -> Self {
        let (terms, _) = to_integer(p.terms());
        IntPoly { terms }
    }

    fn leading_monomial(&self) -> &Monomial {
        &self.terms[0].0
    }
}

/// Clears denominators and removes the content; returns the integer terms and
/// the factor `f` with `terms = f * input`.
fn to_integer(terms: &[(Monomial, Rational)]) -> (Vec<(Monomial, BigInt)>, Rational) {
    let den = terms.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let mut ints: Vec<(Monomial, BigInt)> =
        terms.iter().map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom()))).collect();
    let g = content(ints.iter().map(|(_, c)| c));
    if !g.is_one() && !g.is_zero() {
        for (_, c) in ints.iter_mut() {
            *c /= &g;
        }
    }
    (ints, Rational::new(den, g.max(BigInt::one())))
}

fn content<'a>(cs: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for c in cs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Full reduction of `p` by `divisors`, computed fraction-free over the
/// integers with the overall scalar tracked exactly.
fn reduce(p: &MPoly, divisors: &[&IntPoly]) -> MPoly {
    let ring = p.ring().clone();
    let order = ring.order();
    let (mut cur, mut scale) = to_integer(p.terms());
    let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
    let mut pos = 0;
    let mut steps = 0usize;
    while pos < cur.len() {
        let m = &cur[pos].0;
        let Some(g) = divisors.iter().find(|g| g.leading_monomial().divides(m)) else {
            rem.push(cur[pos].clone());
            pos += 1;
            continue;
        };
        let q = g.leading_monomial().quotient_of(m);
        let lc = &g.terms[0].1;
        let c = &cur[pos].1;
        let d = c.gcd(lc);
        let (a, b) = (lc / &d, c / &d);
        if !a.is_one() {
            for (_, r) in rem.iter_mut() {
                *r *= &a;
            }
            scale *= Rational::from_integer(a.clone());
        }
        cur = merge_sub(&cur[pos..], &g.terms, &q, &a, &b, order);
        pos = 0;
        steps += 1;
        if steps.is_multiple_of(8) {
            let g = content(rem.iter().chain(cur.iter()).map(|(_, c)| c));
            if !g.is_zero() && !g.is_one() {
                for (_, c) in rem.iter_mut().chain(cur.iter_mut()) {
                    *c /= &g;
                }
                scale /= Rational::from_integer(g);
            }
        }
    }
    let inv = scale.recip();
    let terms = rem.into_iter().map(|(m, c)| (m, Rational::from_integer(c) * &inv)).collect();
    MPoly::from_sorted_unchecked(&ring, terms, false)
}

/// `a * x - b * q * y` for `x`, `y` sorted decreasingly; the leading terms
/// cancel and are skipped.
fn merge_sub(
    x: &[(Monomial, BigInt)],
    y: &[(Monomial, BigInt)],
    q: &Monomial,
    a: &BigInt,
    b: &BigInt,
    order: MonomialOrder,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let a_one = a.is_one();
    let scaled = |c: &BigInt| if a_one { c.clone() } else { c * a };
    let (mut i, mut j) = (1, 1);
    let mut yj = y.get(1).map(|(m, _)| m.mul(q));
    while i < x.len() || yj.is_some() {
        let take = match (x.get(i), &yj) {
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some((mx, _)), Some(my)) => order.compare(mx, my),
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Greater => {
                out.push((x[i].0.clone(), scaled(&x[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((yj.take().unwrap(), -(b * &y[j].1)));
                j += 1;
                yj = y.get(j).map(|(m, _)| m.mul(q));
            }
            Ordering::Equal => {
                let v = scaled(&x[i].1) - b * &y[j].1;
                if !v.is_zero() {
                    out.push((x[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                yj = y.get(j).map(|(m, _)| m.mul(q));
            }
        }
    }
    out
}

pub fn buchberger(ideal: &Ideal) -> GroebnerBasis {
    buchberger_with(ideal, &GroebnerOptions::default()).expect("no deadline set")
}

pub fn buchberger_with(ideal: &Ideal, opts: &GroebnerOptions) -> Result<GroebnerBasis> {
    let ring = ideal.ring().clone();
    let mut b = Builder { ring: ring.clone(), order: ring.order(), polys: Vec::new(), ints: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let homogeneous = ideal.is_homogeneous();

    let mut gens: Vec<MPoly> = ideal.generators().iter().map(MPoly::monic).collect();
    gens.sort_by(|f, g| {
        let o = ring.order();
        o.compare(f.leading_monomial().unwrap(), g.leading_monomial().unwrap())
    });
    for g in gens {
        let r = reduce(&g, &b.reducers());
        if !r.is_zero() {
            b.insert(r.monic());
        }
    }

    let mut checked_degree = 0u32;
    while !b.pairs.is_empty() {
        if let Some(dl) = opts.deadline {
            if Instant::now() > dl {
                return Err(Error::Timeout);
            }
        }
        if homogeneous {
            let d = b.pairs.iter().map(|p| p.degree).min().unwrap();
            // all pairs below degree d are done: test whether the basis is complete
            if d > checked_degree {
                let lowest = (checked_degree + 1).max(1);
                if (lowest..=d).any(|e| b.covers_degree(e)) {
                    break;
                }
                checked_degree = d;
            }
        }
        let p = b.pop_pair().unwrap();
        let s = b.spoly(&p);
        let h = reduce(&s, &b.reducers());
        if !h.is_zero() {
            b.insert(h.monic());
        }
    }

    let active: Vec<MPoly> = b.polys.iter().zip(&b.active).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect();
    Ok(GroebnerBasis::interreduce(&ring, active))
}

impl GroebnerBasis {
    fn interreduce(ring: &Arc<Ring>, mut polys: Vec<MPoly>) -> GroebnerBasis {
        let order = ring.order();
        polys.sort_by(|f, g| order.compare(f.leading_monomial().unwrap(), g.leading_monomial().unwrap()));
        // drop elements whose leading monomial is divisible by another one
        let mut minimal: Vec<MPoly> = Vec::new();
        for (k, f) in polys.iter().enumerate() {
            let lm = f.leading_monomial().unwrap();
            let redundant = polys.iter().enumerate().any(|(l, g)| {
                let glm = g.leading_monomial().unwrap();
                glm.divides(lm) && (glm != lm || l < k)
            });
            if !redundant {
                minimal.push(f.clone());
            }
        }
        let ints: Vec<IntPoly> = minimal.iter().map(IntPoly::from_poly).collect();
        let mut reduced = Vec::with_capacity(minimal.len());
        for (k, f) in minimal.iter().enumerate() {
            let others: Vec<&IntPoly> = ints.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, g)| g).collect();
            let lead = MPoly::monomial(ring, f.leading_monomial().unwrap().clone(), f.leading_coeff().unwrap().clone());
            let tail = f - &lead;
            let r = &lead + &reduce(&tail, &others);
            reduced.push(r.monic());
        }
        let ints = reduced.iter().map(IntPoly::from_poly).collect();
        GroebnerBasis { ring: ring.clone(), elements: reduced, ints }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[MPoly] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().unwrap()).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.elements.iter().all(MPoly::is_homogeneous)
    }

    /// The unit ideal.
    pub fn is_trivial(&self) -> bool {
        self.elements.iter().any(MPoly::is_constant)
    }

    pub fn normal_form(&self, p: &MPoly) -> Result<MPoly> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let divisors: Vec<&IntPoly> = self.ints.iter().collect();
        Ok(reduce(p, &divisors))
    }

    pub fn contains(&self, p: &MPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Re-checks that every S-polynomial reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let divisors: Vec<&IntPoly> = self.ints.iter().collect();
        let one = Rational::from_integer(1.into());
        for (i, f) in self.elements.iter().enumerate() {
            for g in &self.elements[i + 1..] {
                let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
                let l = fm.lcm(gm);
                let s = &f.mul_term(&fm.quotient_of(&l), &one) - &g.mul_term(&gm.quotient_of(&l), &one);
                if !reduce(&s, &divisors).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        let n = self.ring.nvars();
        if self.is_trivial() {
            return true;
        }
        let mut seen = vec![false; n];
        for lm in self.leading_monomials() {
            if let Some(v) = lm.pure_power_var() {
                seen[v] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        !self.elements.iter().any(|g| g.leading_monomial().unwrap().divides(m))
    }

    /// Monomials outside the leading-term ideal, by increasing degree and
    /// decreasing order within a degree.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return Err(Error::NotFinite);
        }
        if self.is_trivial() {
            return Ok(Vec::new());
        }
        let n = self.ring.nvars();
        let mut out = Vec::new();
        let mut frontier = vec![Monomial::one(n)];
        let mut d = 0;
        while !frontier.is_empty() {
            let mut cur: Vec<Monomial> = frontier.into_iter().filter(|m| self.is_standard(m)).collect();
            cur.sort_by(|a, b| self.order().compare(b, a));
            cur.dedup();
            let mut next = Vec::new();
            for m in &cur {
                // extend only in variables >= the last nonzero one: each monomial once
                let start = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
                for v in start..n {
                    next.push(m.mul(&Monomial::var(n, v)));
                }
            }
            out.extend(cur);
            frontier = next;
            d += 1;
            debug_assert!(d < 10_000, "standard monomial enumeration did not terminate");
        }
        Ok(out)
    }

    /// Dimensions of the graded pieces of the quotient, up to the top degree.
    pub fn hilbert_vector(&self) -> Result<Vec<usize>> {
        if !self.is_homogeneous() {
            return Err(Error::Invalid("hilbert_vector needs a homogeneous ideal".into()));
        }
        let basis = self.standard_monomials()?;
        let top = basis.iter().map(Monomial::degree).max().unwrap_or(0) as usize;
        let mut h = vec![0usize; if basis.is_empty() { 0 } else { top + 1 }];
        for m in &basis {
            h[m.degree() as usize] += 1;
        }
        Ok(h)
    }
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    order: MonomialOrder,
    elements: Vec<MPoly>,
}

impl Serialize for GroebnerBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BasisJson { order: self.order(), elements: self.elements.clone() }.serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
pub struct IdealJson {
    #[serde(default)]
    pub order: MonomialOrder,
    pub generators: Vec<MPoly>,
}

impl IdealJson {
    pub fn into_ideal(self) -> Result<Ideal> {
        let first = self.generators.first().ok_or_else(|| Error::Invalid("ideal without generators".into()))?;
        let ring = first.ring().with_order(self.order);
        let gens = self.generators.iter().map(|g| g.with_ring(&ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }
}
