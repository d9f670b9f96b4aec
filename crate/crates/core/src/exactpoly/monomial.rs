use std::cmp::Ordering;

use smallvec::SmallVec;

/// Monomial order used to sort terms and pick leading terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                // smaller exponent in the last differing variable wins
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => Err(crate::Error::Parse(format!("unknown monomial order {s:?}"))),
        }
    }
}

/// Exponent vector with one slot per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable when this is a pure power `x_i^e`, e > 0.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [u16] {
        &mut self.exps
    }
}

/// All monomials of total degree `d` in `nvars` variables, sorted
/// decreasingly in `order`.
pub fn monomials_of_degree(nvars: usize, d: u32, order: MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| order.compare(b, a));
    out
}
