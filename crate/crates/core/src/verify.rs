//! The acceptance suite: one check per claim, each with its own time budget.

use std::time::{Duration, Instant};

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{monomials_of_degree, MPoly, MonomialOrder};
use crate::genus2::{self, Genus2Curve, LorenzenPoint, LorenzenVariant, OddBundleData, VgpNet};
use crate::genus3::{self, SixRelationParams, SpecialParams, StdPair};
use crate::linalg::RatMatrix;
use crate::macaulay::{MacaulayOracle, PRIMES};
use crate::multalg::{self, AlgebraOptions, MultiplicityAlgebra, NetOfQuadrics};
use crate::quadrics::PointClass;
use crate::rational::{frac, int, Rational};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.passed).map(|c| c.label.as_str()).collect();
        let mut s = format!("{} criterion {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name);
        if !failed.is_empty() {
            s.push_str(&format!(" [failed: {}]", failed.join("; ")));
        }
        s
    }
}

/// Collects labelled checks; errors count as failures.
#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, label: impl Into<String>, passed: bool) {
        self.0.push(Check { label: label.into(), passed });
    }

    fn push_result(&mut self, label: impl Into<String>, r: Result<bool>) {
        let label = label.into();
        match r {
            Ok(b) => self.push(label, b),
            Err(e) => self.push(format!("{label} ({e})"), false),
        }
    }
}

/// Dimension, Hilbert vector and pairing data computed through Groebner
/// bases, kept for comparison with the Macaulay oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertRecord {
    pub label: String,
    pub net: NetOfQuadrics,
    pub hilbert: Vec<usize>,
}

pub struct Suite {
    rng: ChaCha8Rng,
    records: Vec<HilbertRecord>,
    opts: AlgebraOptions,
}

fn run(id: u8, name: &'static str, budget: Duration, f: impl FnOnce(&mut Checks)) -> CriterionResult {
    let start = Instant::now();
    let mut checks = Checks::default();
    f(&mut checks);
    let elapsed = start.elapsed();
    let mut checks = checks.0;
    if elapsed > budget {
        checks.push(Check { label: format!("runtime {} ms over budget", elapsed.as_millis()), passed: false });
    }
    CriterionResult {
        id,
        name,
        passed: checks.iter().all(|c| c.passed),
        checks,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: budget.as_millis(),
    }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn is_binomial_row(h: &[usize], n: usize) -> bool {
    let mut row = vec![1usize];
    for k in 1..=n {
        row.push(row[k - 1] * (n + 1 - k) / k);
    }
    h == row.as_slice()
}

impl Suite {
    pub fn new(seed: u64) -> Self {
        Suite { rng: ChaCha8Rng::seed_from_u64(seed), records: Vec::new(), opts: AlgebraOptions::default() }
    }

    pub fn with_options(seed: u64, opts: AlgebraOptions) -> Self {
        Suite { opts, ..Suite::new(seed) }
    }

    pub fn records(&self) -> &[HilbertRecord] {
        &self.records
    }

    fn rational(&mut self) -> Rational {
        loop {
            let n = self.rng.gen_range(-9i64..=9);
            if n != 0 {
                return frac(n, self.rng.gen_range(1i64..=5));
            }
        }
    }

    fn std_pair(&mut self) -> StdPair {
        loop {
            let (a, b) = (self.rational(), self.rational());
            if &a * &a != &b * &b {
                return StdPair::new(a, b).expect("nonzero");
            }
        }
    }

    fn quadric(&mut self) -> MPoly {
        let r = genus3::xyz_ring();
        loop {
            let terms: Vec<_> = monomials_of_degree(3, 2, MonomialOrder::Grevlex)
                .into_iter()
                .map(|m| (m, int(self.rng.gen_range(-3i64..=3))))
                .collect();
            let q = MPoly::from_terms(&r, terms);
            if !q.is_zero() {
                return q;
            }
        }
    }

    fn symmetric(&mut self) -> RatMatrix {
        let mut m = RatMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in i..3 {
                let v = int(self.rng.gen_range(-5i64..=5));
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        m
    }

    fn algebra(&mut self, label: &str, net: &NetOfQuadrics) -> Result<MultiplicityAlgebra> {
        let a = multalg::build_algebra_with(net, &self.opts)?;
        self.records.push(HilbertRecord { label: label.to_string(), net: net.clone(), hilbert: a.hilbert().to_vec() });
        Ok(a)
    }

    /// Dimension, Hilbert vector and nondegenerate pairings of a very stable net.
    fn check_algebra(&mut self, c: &mut Checks, label: &str, net: &NetOfQuadrics) {
        let n = net.n();
        match self.algebra(label, net) {
            Ok(a) => {
                c.push(format!("{label}: dim {}", 1usize << n), a.dim() == 1 << n);
                c.push(format!("{label}: Hilbert vector binomial"), is_binomial_row(a.hilbert(), n));
                c.push_result(format!("{label}: pairings nondegenerate"), a.all_pairings_nondegenerate());
            }
            Err(e) => c.push(format!("{label}: algebra ({e})"), false),
        }
    }

    pub fn criterion_1(&mut self) -> CriterionResult {
        run(1, "genus-2 odd-degree net", Duration::from_secs(1), |c| {
            let curve = Genus2Curve::new(ints(&[0, 1, 2, 3, 4, 5])).expect("distinct");
            let data = OddBundleData { a: ints(&[-1, 6, 7]) };
            let net = match genus2::odd_net(&curve, &data) {
                Ok(n) => n,
                Err(e) => return c.push(format!("odd net ({e})"), false),
            };
            self.check_algebra(c, "odd net", &net);
            c.push("relations equivalent to xi_i^2", genus2::odd_relations_are_squares(&net));
            c.push_result("discriminant is the chord triangle", genus2::odd_triangle_check(&curve, &data));
        })
    }

    pub fn lorenzen_points() -> Vec<LorenzenPoint> {
        let pts = [
            ([2, 3, 5], [(1, 2), (1, 3), (1, 5)]),
            ([2, 3, 5], [(1, 3), (1, 5), (1, 7)]),
            ([3, 4, 7], [(2, 3), (-1, 4), (3, 5)]),
        ];
        pts.iter()
            .map(|(rst, u)| {
                LorenzenPoint::new(ints(rst), u.iter().map(|&(n, d)| frac(n, d)).collect()).expect("valid point")
            })
            .collect()
    }

    pub fn criterion_2(&mut self) -> CriterionResult {
        run(2, "Lorenzen nets", Duration::from_secs(30), |c| {
            let mut js = Vec::new();
            for (i, p) in Self::lorenzen_points().iter().enumerate() {
                let label = format!("point {}", i + 1);
                let net = match genus2::lorenzen_net(p, LorenzenVariant::Printed) {
                    Ok(n) => n,
                    Err(e) => return c.push(format!("{label} ({e})"), false),
                };
                self.check_algebra(c, &label, &net);
                match genus2::lorenzen_discriminant_report(p, LorenzenVariant::Printed, &self.opts) {
                    Ok(r) => {
                        c.push(format!("{label}: very stable"), r.very_stable);
                        c.push(format!("{label}: discriminant cubic smooth"), r.smooth && r.cubic.homogeneous_degree() == Some(3));
                        js.push(r.j);
                    }
                    Err(e) => c.push(format!("{label}: discriminant ({e})"), false),
                }
            }
            c.push(
                "j differs between the two u at (2,3,5)",
                js.len() >= 2 && js[0].is_some() && js[1].is_some() && js[0] != js[1],
            );
        })
    }

    pub fn criterion_3(&mut self) -> CriterionResult {
        run(3, "branch-point identity for nets of conics", Duration::from_secs(5), |c| {
            let mut ok = 0;
            let mut tried = 0;
            while tried < 100 {
                let (q1, q2, q3) = (self.symmetric(), self.symmetric(), self.symmetric());
                let Ok(v) = VgpNet::new(q1, q2, q3) else { continue };
                tried += 1;
                if let Ok(r) = genus2::vgp_branch_identity_report(&v) {
                    if r.holds && r.direct.degree().unwrap_or(0) <= 6 {
                        ok += 1;
                    }
                }
            }
            c.push(format!("{ok}/100 random triples"), ok == 100);
        })
    }

    pub fn criterion_4(&mut self) -> CriterionResult {
        run(4, "genus-3 discriminant factorization", Duration::from_secs(300), |c| {
            for i in 0..10 {
                let p = self.std_pair();
                let q = self.quadric();
                let label = format!("instance {}", i + 1);
                let start = Instant::now();
                let d = match p.bundle(q) {
                    Ok(d) => d,
                    Err(e) => {
                        c.push(format!("{label} ({e})"), false);
                        continue;
                    }
                };
                match genus3::discriminant_split(&d) {
                    Ok(s) => {
                        c.push(format!("{label}: exact division"), &s.quadric * &s.quartic == s.discriminant);
                        c.push(format!("{label}: quotient degree 4"), s.quartic.homogeneous_degree() == Some(4));
                        c.push(format!("{label}: quadric Gram rank 3"), s.quadric_rank == 3);
                        c.push(format!("{label}: degeneracy plane"), s.degeneracy_plane);
                    }
                    Err(e) => c.push(format!("{label}: split ({e})"), false),
                }
                c.push(format!("{label}: under 30 s"), start.elapsed() < Duration::from_secs(30));
            }
        })
    }

    pub fn criterion_5(&mut self) -> CriterionResult {
        run(5, "genus-3 algebra dimension", Duration::from_secs(240), |c| {
            let mut nets = Vec::new();
            let fixed = SixRelationParams { a: int(2), b: int(3), coeffs: ints(&[1, 1, 1, 1, 1, 1]) };
            let random = {
                let p = self.std_pair();
                SixRelationParams { a: p.a, b: p.b, coeffs: (0..6).map(|_| self.rational()).collect() }
            };
            for (label, p) in [("six relations a=2 b=3", fixed), ("six relations random", random)] {
                match genus3::six_relations(&p) {
                    Ok(n) => nets.push((label.to_string(), n)),
                    Err(e) => c.push(format!("{label} ({e})"), false),
                }
            }
            let std = StdPair::new(int(2), int(3)).expect("nonzero");
            let xy = MPoly::parse(&genus3::xyz_ring(), "x*y").expect("parses");
            let random_pair = self.std_pair();
            let random_q = self.quadric();
            for (label, p, q) in [("web a=2 b=3 Q=xy", std, xy), ("web random", random_pair, random_q)] {
                match p.bundle(q).and_then(|d| genus3::genus3_web(&d)) {
                    Ok(n) => nets.push((label.to_string(), n)),
                    Err(e) => c.push(format!("{label} ({e})"), false),
                }
            }
            for (label, net) in nets {
                let start = Instant::now();
                self.check_algebra(c, &label, &net);
                c.push(format!("{label}: under 60 s"), start.elapsed() < Duration::from_secs(60));
            }
        })
    }

    pub fn criterion_6(&mut self) -> CriterionResult {
        run(6, "special-case base point criterion", Duration::from_secs(60), |c| {
            let third = vec![frac(1, 3); 3];
            let p = SpecialParams { a: third.clone(), b: third };
            c.push_result("a_i = b_i = 1/3: not very stable", genus3::special_base_point(&p));
            c.push_result("a_i = b_i = 1/3: surd sum predicts a base point", genus3::surd_criterion(&p).map(|s| s == Some(true)));
            let q = SpecialParams { a: ints(&[1, 2, 3]), b: ints(&[1, 1, 1]) };
            match genus3::special_case(&q) {
                Ok(net) => self.check_algebra(c, "a=(1,2,3) b=(1,1,1)", &net),
                Err(e) => c.push(format!("a=(1,2,3) ({e})"), false),
            }
            let z = SpecialParams { a: ints(&[0, 0, 0]), b: ints(&[0, 0, 0]) };
            match genus3::special_case(&z) {
                Ok(net) => {
                    self.check_algebra(c, "a=b=0", &net);
                    let ring = net.ring(MonomialOrder::Grevlex);
                    let squares: Vec<MPoly> = MPoly::vars(&ring).iter().map(|v| v * v).collect();
                    c.push("a=b=0: relations are the squares", net.quadrics(MonomialOrder::Grevlex) == squares);
                }
                Err(e) => c.push(format!("a=b=0 ({e})"), false),
            }
        })
    }

    pub fn criterion_7(&mut self) -> CriterionResult {
        run(7, "quartic symmetroid", Duration::from_secs(30), |c| {
            let p = StdPair::new(int(2), int(3)).expect("nonzero");
            match genus3::symmetroid_nodes(&p) {
                Ok(r) => c.push(format!("a=2 b=3: {} of 10 loci verified", r.count), r.count == 10 && r.nodes.len() == 10),
                Err(e) => c.push(format!("a=2 b=3 loci ({e})"), false),
            }
            let q = StdPair::new(frac(5, 4), frac(13, 12)).expect("nonzero");
            let pt = ints(&[0, 9, 5, 0]);
            c.push("a=5/4 b=13/12: (0,9,5,0) lies on the locus", genus3::rational_line_point(&q).as_deref() == Some(pt.as_slice()));
            match genus3::classify_symmetroid_point(&q, &pt) {
                Ok(r) => {
                    c.push("a=5/4 b=13/12: gradient vanishes at (0,9,5,0)", r.on_hypersurface && r.gradient_vanishes);
                    c.push(format!("a=5/4 b=13/12: Hessian rank 3 at (0,9,5,0) (found {})", r.hessian_rank), r.hessian_rank == 3);
                }
                Err(e) => c.push(format!("a=5/4 b=13/12 ({e})"), false),
            }
            let d = StdPair::new(frac(5, 4), frac(5, 3)).expect("nonzero");
            let one = Rational::one();
            let excluded = (&d.a * &d.a - &one) * (&d.b * &d.b - &one) == one;
            c.push("a=5/4 b=5/3: (a^2-1)(b^2-1) = 1", excluded);
            c.push(
                "a=5/4 b=5/3: node analysis refused",
                matches!(genus3::symmetroid_nodes(&d), Err(Error::DegenerateParameters(_))),
            );
            let degenerate = genus3::rational_line_point(&d)
                .ok_or(Error::Invalid("irrational point".into()))
                .and_then(|pt| genus3::classify_symmetroid_point(&d, &pt))
                .map(|r| r.classification == PointClass::Degenerate);
            c.push_result("a=5/4 b=5/3: point classified degenerate", degenerate);
            c.push_result("a=2 b=3: w0=0 section is the two conics", genus3::section_two_conics(&p));
        })
    }

    pub fn criterion_8(&mut self) -> CriterionResult {
        run(8, "coordinate change to the symmetroid", Duration::from_secs(20), |c| {
            let mut ok = 0;
            for _ in 0..20 {
                let p = self.std_pair();
                if genus3::mat2_derivation_check(&p).unwrap_or(false) {
                    ok += 1;
                }
            }
            c.push(format!("{ok}/20 random (a,b)"), ok == 20);
        })
    }

    /// Recomputes every recorded Hilbert vector with the Macaulay oracle:
    /// exactly for nets in at most three variables, modulo two primes
    /// otherwise. A vanishing piece modulo `p` forces the rational piece to
    /// vanish, so the ideal is a complete intersection and the rational
    /// Hilbert vector is binomial; a modular vector equal to it is therefore
    /// an exact certificate.
    pub fn criterion_9(&mut self) -> CriterionResult {
        let records = self.records.clone();
        run(9, "Macaulay oracle agreement", Duration::from_secs(120), |c| {
            if records.is_empty() {
                c.push("no recorded computations", false);
            }
            for r in &records {
                let ring = r.net.ring(MonomialOrder::Grevlex);
                let oracle = match MacaulayOracle::new(&ring, &r.net.quadrics(MonomialOrder::Grevlex)) {
                    Ok(o) => o,
                    Err(e) => {
                        c.push(format!("{} ({e})", r.label), false);
                        continue;
                    }
                };
                let max = 2 * r.net.n() as u32 + 1;
                let agree = if r.net.n() <= 3 {
                    oracle.hilbert_vector(max).map(|h| h == r.hilbert)
                } else {
                    PRIMES.iter().try_fold(true, |acc, &p| {
                        oracle.hilbert_vector_mod(p, max).map(|h| acc && h == r.hilbert && is_binomial_row(&h, r.net.n()))
                    })
                };
                c.push_result(r.label.clone(), agree);
            }
        })
    }

    /// Criteria 1 to 9 in order; criterion 9 reuses the computations of 1 to 6.
    pub fn run_all(&mut self) -> Vec<CriterionResult> {
        vec![
            self.criterion_1(),
            self.criterion_2(),
            self.criterion_3(),
            self.criterion_4(),
            self.criterion_5(),
            self.criterion_6(),
            self.criterion_7(),
            self.criterion_8(),
            self.criterion_9(),
        ]
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    Suite::new(seed).run_all()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_rows() {
        assert!(is_binomial_row(&[1, 3, 3, 1], 3));
        assert!(is_binomial_row(&[1, 6, 15, 20, 15, 6, 1], 6));
        assert!(!is_binomial_row(&[1, 3, 3], 3));
    }

    #[test]
    fn first_criterion_passes() {
        let mut s = Suite::new(DEFAULT_SEED);
        let r = s.criterion_1();
        assert!(r.passed, "{}", r.line());
        assert_eq!(s.records().len(), 1);
    }

    #[test]
    fn line_format() {
        let r = run(0, "demo", Duration::from_secs(1), |c| {
            c.push("a", true);
            c.push("b", false);
        });
        assert_eq!(r.line(), "FAIL criterion 0: demo [failed: b]");
    }
}
