//! Canonical JSON encoding of polynomials and polynomial matrices:
//! `{"vars":[..],"terms":[{"c":"p/q","e":[..]}]}` and
//! `{"rows":r,"cols":c,"entries":[..]}`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::PolyMatrix;
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{MPoly, Ring};
use crate::rational::{self, serde_rational, Rational};

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(with = "serde_rational")]
    c: Rational,
    e: Vec<u16>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.ring().vars().to_vec(),
            terms: self
                .terms()
                .iter()
                .map(|(m, c)| TermJson { c: c.clone(), e: m.exponents().to_vec() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pj = PolyJson::deserialize(d)?;
        let ring = Ring::new(&pj.vars, MonomialOrder::Grevlex);
        let n = ring.nvars();
        let mut terms = Vec::with_capacity(pj.terms.len());
        for t in pj.terms {
            if t.e.len() != n {
                return Err(D::Error::custom(format!("exponent vector of length {} in a {n}-variable ring", t.e.len())));
            }
            terms.push((Monomial::from_exponents(&t.e), t.c));
        }
        Ok(MPoly::from_terms(&ring, terms))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<MPoly>,
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson { rows: self.rows(), cols: self.cols(), entries: self.entries().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mj = MatrixJson::deserialize(d)?;
        let ring = match mj.entries.first() {
            Some(e) => e.ring().clone(),
            None => return Err(D::Error::custom("matrix without entries")),
        };
        PolyMatrix::new(&ring, mj.rows, mj.cols, mj.entries).map_err(D::Error::custom)
    }
}

/// Rationals as canonical strings, for report assembly.
pub fn rational_json(r: &Rational) -> serde_json::Value {
    serde_json::Value::String(rational::format(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_encoding() {
        let r = Ring::new(&["x", "y"], MonomialOrder::Grevlex);
        let p = MPoly::parse(&r, "x^2 - 1/2*y").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"vars":["x","y"],"terms":[{"c":"1","e":[2,0]},{"c":"-1/2","e":[0,1]}]}"#);
        let back: MPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_string(), p.to_string());
        assert!(serde_json::from_str::<MPoly>(r#"{"vars":["x"],"terms":[{"c":"1","e":[1,1]}]}"#).is_err());
    }
}
