//! Macaulay-matrix linear algebra for homogeneous ideals.
//!
//! The degree-`d` piece of an ideal is spanned by the products `m * g` of its
//! generators with monomials of complementary degree. Row-reducing these
//! vectors over the degree-`d` monomial basis gives the Hilbert function and
//! degree-wise ideal membership without any Groebner basis.
//!
//! Ranks are computed either exactly over the rationals or over a prime
//! field. A rank modulo `p` never exceeds the rational rank, so a vanishing
//! quotient piece modulo `p` proves the rational piece vanishes too.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{monomials_of_degree, same_ring, MPoly, Monomial, MonomialOrder, Ring};

type Row = Vec<(usize, BigInt)>;

/// Row echelon form of one graded piece of an ideal.
#[derive(Debug, Clone)]
pub struct DegreePiece {
    pub degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    pivots: HashMap<usize, Row>,
}

impl DegreePiece {
    /// Number of degree-`d` monomials.
    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Dimension of the degree-`d` piece of the quotient.
    pub fn quotient_dim(&self) -> usize {
        self.ambient_dim() - self.rank()
    }

    fn to_row(&self, p: &MPoly) -> Option<Row> {
        let mut row: Row = Vec::with_capacity(p.len());
        let den = p.terms().iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        for (m, c) in p.terms() {
            let k = *self.index.get(m)?;
            row.push((k, c.numer() * (&den / c.denom())));
        }
        row.sort_by_key(|e| e.0);
        Some(row)
    }

    /// Reduces `row` against the pivots; returns the (primitive) remainder.
    fn reduce(&self, mut row: Row) -> Row {
        while let Some((col, c)) = row.first() {
            let Some(piv) = self.pivots.get(col) else { break };
            let d = c.gcd(&piv[0].1);
            let a = &piv[0].1 / &d;
            let b = c / &d;
            row = combine(&row, &a, piv, &b);
            make_primitive(&mut row);
        }
        row
    }

    fn insert(&mut self, row: Row) {
        let row = self.reduce(row);
        if let Some((col, _)) = row.first() {
            self.pivots.insert(*col, row);
        }
    }

    /// Membership of a homogeneous polynomial of this degree.
    pub fn contains(&self, p: &MPoly) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        if p.homogeneous_degree() != Some(self.degree) {
            return Err(Error::NotHomogeneous(self.degree));
        }
        let row = self.to_row(p).expect("degree checked");
        Ok(self.reduce(row).is_empty())
    }
}

/// `a * x - b * y` on sparse rows sorted by column.
fn combine(x: &Row, a: &BigInt, y: &Row, b: &BigInt) -> Row {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map(|e| e.0);
        let cy = y.get(j).map(|e| e.0);
        match (cx, cy) {
            (Some(p), Some(q)) if p == q => {
                let v = a * &x[i].1 - b * &y[j].1;
                if !v.is_zero() {
                    out.push((p, v));
                }
                i += 1;
                j += 1;
            }
            (Some(p), Some(q)) if p < q => {
                out.push((p, a * &x[i].1));
                i += 1;
            }
            (Some(p), None) => {
                out.push((p, a * &x[i].1));
                i += 1;
            }
            (_, Some(q)) => {
                out.push((q, -(b * &y[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn make_primitive(row: &mut Row) {
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, c) in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// Homogeneous ideal presented by its generators.
#[derive(Debug, Clone)]
pub struct MacaulayOracle {
    ring: Arc<Ring>,
    generators: Vec<MPoly>,
}

impl MacaulayOracle {
    pub fn new(ring: &Arc<Ring>, generators: &[MPoly]) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::Invalid("Macaulay oracle needs homogeneous generators".into()));
            }
            gens.push(g.clone());
        }
        Ok(MacaulayOracle { ring: ring.clone(), generators: gens })
    }

    pub fn piece(&self, d: u32) -> DegreePiece {
        let n = self.ring.nvars();
        let monomials = monomials_of_degree(n, d, MonomialOrder::Grevlex);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut piece = DegreePiece { degree: d, monomials, index, pivots: HashMap::new() };
        for g in &self.generators {
            let gd = g.homogeneous_degree().unwrap();
            if gd > d {
                continue;
            }
            for m in monomials_of_degree(n, d - gd, MonomialOrder::Grevlex) {
                let one = num_traits::One::one();
                let row = piece.to_row(&g.mul_term(&m, &one)).expect("degree matches");
                piece.insert(row);
                if piece.rank() == piece.ambient_dim() {
                    return piece;
                }
            }
        }
        piece
    }

    /// Quotient dimensions by degree until the first vanishing piece.
    /// Fails with `NotFinite` if no piece up to `max_degree` vanishes.
    pub fn hilbert_vector(&self, max_degree: u32) -> Result<Vec<usize>> {
        let mut h = Vec::new();
        for d in 0..=max_degree {
            let q = self.piece(d).quotient_dim();
            if q == 0 {
                return Ok(h);
            }
            h.push(q);
        }
        Err(Error::NotFinite)
    }

    /// Rank of the degree-`d` Macaulay matrix over `F_p`.
    pub fn rank_mod(&self, d: u32, p: u64) -> (usize, usize) {
        let n = self.ring.nvars();
        let monomials = monomials_of_degree(n, d, MonomialOrder::Grevlex);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let cols = monomials.len();
        let mut ech = ModEchelon::new(cols, p);
        'outer: for g in &self.generators {
            let gd = g.homogeneous_degree().unwrap();
            if gd > d {
                continue;
            }
            let den = g.terms().iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
            let coeffs: Vec<u64> = g
                .terms()
                .iter()
                .map(|(_, c)| reduce_mod(&(c.numer() * (&den / c.denom())), p))
                .collect();
            for m in monomials_of_degree(n, d - gd, MonomialOrder::Grevlex) {
                let mut row = vec![0u64; cols];
                for ((gm, _), &c) in g.terms().iter().zip(&coeffs) {
                    row[index[&gm.mul(&m)]] = c;
                }
                ech.insert(row);
                if ech.rank() == cols {
                    break 'outer;
                }
            }
        }
        (ech.rank(), cols)
    }

    /// Hilbert vector computed over `F_p`; each entry bounds the rational
    /// one from above.
    pub fn hilbert_vector_mod(&self, p: u64, max_degree: u32) -> Result<Vec<usize>> {
        let mut h = Vec::new();
        for d in 0..=max_degree {
            let (rank, cols) = self.rank_mod(d, p);
            if rank == cols {
                return Ok(h);
            }
            h.push(cols - rank);
        }
        Err(Error::NotFinite)
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    /// Degree-wise ideal membership for a homogeneous polynomial.
    pub fn contains(&self, p: &MPoly) -> Result<bool> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        match p.homogeneous_degree() {
            _ if p.is_zero() => Ok(true),
            Some(d) => self.piece(d).contains(p),
            None => Err(Error::Invalid("membership oracle needs a homogeneous polynomial".into())),
        }
    }
}

/// Primes below 2^31 used for modular ranks.
pub const PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];

fn reduce_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.try_into().expect("reduced below p")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Dense semi-echelon form over `F_p` with monic pivot rows.
struct ModEchelon {
    p: u64,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<Vec<u64>>,
}

impl ModEchelon {
    fn new(cols: usize, p: u64) -> Self {
        ModEchelon { p, pivot_of_col: vec![None; cols], rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut row: Vec<u64>) {
        let p = self.p;
        for c in 0..row.len() {
            if row[c] == 0 {
                continue;
            }
            match self.pivot_of_col[c] {
                Some(k) => {
                    let f = p - row[c];
                    let piv = &self.rows[k];
                    for j in c..row.len() {
                        if piv[j] != 0 {
                            row[j] = (row[j] + f * piv[j]) % p;
                        }
                    }
                }
                None => {
                    let inv = inv_mod(row[c], p);
                    for x in row[c..].iter_mut() {
                        *x = *x * inv % p;
                    }
                    self.pivot_of_col[c] = Some(self.rows.len());
                    self.rows.push(row);
                    return;
                }
            }
        }
    }
}
