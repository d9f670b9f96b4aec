//! Ternary quadrics as linear forms in the six quadratic monomials.
//!
//! The basis is `x^2 -> m0, y^2 -> m1, z^2 -> m2, xy -> m3, xz -> m4,
//! yz -> m5`; products such as `(xy)(yz)` and `(xz)(y^2)` are *not*
//! identified, so the map is a linear isomorphism onto linear forms.

use std::sync::{Arc, OnceLock};

use super::monomial::Monomial;
use super::poly::{MPoly, Ring};
use crate::error::{Error, Result};

/// Exponent vectors of x^2, y^2, z^2, xy, xz, yz.
pub const QUADRATIC_BASIS: [[u16; 3]; 6] =
    [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];

/// Shared ring `m0..m5` (grevlex).
pub fn m_ring() -> Arc<Ring> {
    static RING: OnceLock<Arc<Ring>> = OnceLock::new();
    RING.get_or_init(|| Ring::indexed("m", 6)).clone()
}

pub fn linearize_quadratics(q: &MPoly) -> Result<MPoly> {
    if q.ring().nvars() != 3 {
        return Err(Error::Invalid(format!("expected a ternary form, ring has {} variables", q.ring().nvars())));
    }
    if !q.is_zero() && q.homogeneous_degree() != Some(2) {
        return Err(Error::NotHomogeneous(2));
    }
    let ring = m_ring();
    let terms = q.terms().iter().map(|(m, c)| {
        let k = QUADRATIC_BASIS.iter().position(|b| b == m.exponents()).expect("degree-2 monomial");
        (Monomial::var(6, k), c.clone())
    });
    Ok(MPoly::from_terms(&ring, terms))
}

/// Inverse of [`linearize_quadratics`]: substitutes `m_k` by its monomial.
pub fn delinearize(l: &MPoly, xyz: &Arc<Ring>) -> Result<MPoly> {
    if xyz.nvars() != 3 {
        return Err(Error::Invalid("target ring must have three variables".into()));
    }
    let images: Vec<MPoly> = QUADRATIC_BASIS
        .iter()
        .map(|e| MPoly::monomial(xyz, Monomial::from_exponents(e), num_traits::One::one()))
        .collect();
    if l.ring().nvars() != 6 {
        return Err(Error::RingMismatch);
    }
    l.substitute(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::MonomialOrder;

    #[test]
    fn basic_linearization() {
        let r = Ring::new(&["x", "y", "z"], MonomialOrder::Grevlex);
        let m = m_ring();
        let p = |s: &str| MPoly::parse(&r, s).unwrap();
        assert_eq!(linearize_quadratics(&p("x^2+2*x*y")).unwrap(), MPoly::parse(&m, "m0+2*m3").unwrap());
        assert_eq!(linearize_quadratics(&p("(x+y)*(x-y)")).unwrap(), MPoly::parse(&m, "m0-m1").unwrap());
        assert_eq!(linearize_quadratics(&p("x^2+y")), Err(Error::NotHomogeneous(2)));
        assert_eq!(linearize_quadratics(&p("x^3")), Err(Error::NotHomogeneous(2)));
        assert_eq!(delinearize(&linearize_quadratics(&p("x*z-3*y^2")).unwrap(), &r).unwrap(), p("x*z-3*y^2"));
    }
}
