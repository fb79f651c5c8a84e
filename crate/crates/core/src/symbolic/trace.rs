//! Trace polynomials: `Ψ(x, y) = tr w(g(x, y), g_2, ..., g_n)` where
//! `g(x, y) = [[1, x], [y, 1 + xy]]` and `g_2..g_n` are fixed integer
//! matrices of determinant 1.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::laurent::{LaurentPoly, LaurentPolyJson, Variables};
use crate::error::{Error, Result};
use crate::word::{Group, Word};

/// An integer 2×2 matrix `[a, b, c, d]` (row-major).
pub type IntMat2 = [i64; 4];

/// Bivariate integer polynomial in `x, y`.
#[derive(Clone, PartialEq, Eq)]
pub struct TracePoly(LaurentPoly);

impl TracePoly {
    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn coefficient(&self, x_deg: i32, y_deg: i32) -> BigInt {
        self.0.coefficient(&[x_deg, y_deg])
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.0
            .eval_integers(&[x.clone(), y.clone()])
            .expect("trace polynomials have no negative exponents")
    }

    pub fn eval_mod(&self, p: u64, x: u64, y: u64) -> u64 {
        self.0.eval_mod(p, &[x, y]).expect("no inverses needed")
    }

    pub fn is_constant(&self) -> bool {
        self.0.terms().all(|(e, _)| e.iter().all(|&d| d == 0))
    }

    pub fn to_json(&self) -> LaurentPolyJson {
        self.0.to_json()
    }
}

impl fmt::Display for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TracePoly({})", self.0)
    }
}

/// 2×2 matrix over `Z[x, y]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat2(pub [LaurentPoly; 4]);

impl PolyMat2 {
    pub fn trace(&self) -> LaurentPoly {
        &self.0[0] + &self.0[3]
    }
}

/// `SL_2(Z[x, y])`; inversion uses the adjugate, so every element fed in
/// must have determinant 1.
#[derive(Debug, Clone)]
pub struct PolySl2 {
    vars: Arc<Variables>,
}

impl Default for PolySl2 {
    fn default() -> Self {
        PolySl2 {
            vars: Variables::xy(),
        }
    }
}

impl PolySl2 {
    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    /// `[[1, x], [y, 1 + xy]]`
    pub fn generic(&self) -> PolyMat2 {
        let one = LaurentPoly::one(&self.vars);
        let x = LaurentPoly::var(&self.vars, 0);
        let y = LaurentPoly::var(&self.vars, 1);
        let xy = &x * &y;
        PolyMat2([one.clone(), x, y, &one + &xy])
    }

    pub fn constant(&self, m: &IntMat2) -> PolyMat2 {
        PolyMat2(m.map(|e| LaurentPoly::constant(&self.vars, e)))
    }
}

impl Group for PolySl2 {
    type Elem = PolyMat2;

    fn identity(&self) -> PolyMat2 {
        self.constant(&[1, 0, 0, 1])
    }

    fn mul(&self, a: &PolyMat2, b: &PolyMat2) -> PolyMat2 {
        let [a0, a1, a2, a3] = &a.0;
        let [b0, b1, b2, b3] = &b.0;
        PolyMat2([
            &(a0 * b0) + &(a1 * b2),
            &(a0 * b1) + &(a1 * b3),
            &(a2 * b0) + &(a3 * b2),
            &(a2 * b1) + &(a3 * b3),
        ])
    }

    fn inv(&self, a: &PolyMat2) -> PolyMat2 {
        let [a0, a1, a2, a3] = &a.0;
        PolyMat2([a3.clone(), -a1, -a2, a0.clone()])
    }
}

pub fn int_det(m: &IntMat2) -> i128 {
    m[0] as i128 * m[3] as i128 - m[1] as i128 * m[2] as i128
}

/// `Ψ` for `w` of arity `n`, with `n - 1` constant matrices for
/// `x_2, ..., x_n`.
pub fn trace_polynomial(w: &Word, constants: &[IntMat2]) -> Result<TracePoly> {
    let expected = (w.arity() as usize).saturating_sub(1);
    if constants.len() != expected {
        return Err(Error::TraceConstantCount {
            expected,
            got: constants.len(),
        });
    }
    for (i, m) in constants.iter().enumerate() {
        let det = int_det(m);
        if det != 1 {
            return Err(Error::Determinant {
                index: i + 2,
                det: det.to_string(),
            });
        }
    }
    let ring = PolySl2::default();
    let mut tuple = vec![ring.generic()];
    tuple.extend(constants.iter().map(|m| ring.constant(m)));
    let value = w.evaluate(&ring, &tuple);
    Ok(TracePoly(value.trace()))
}

/// Trace of `w` evaluated at integer matrices (no polynomial variables).
pub fn integer_trace(w: &Word, tuple: &[IntMat2]) -> BigInt {
    let ring = PolySl2::default();
    let mats: Vec<PolyMat2> = tuple.iter().map(|m| ring.constant(m)).collect();
    let t = w.evaluate(&ring, &mats).trace();
    t.coefficient(&[0, 0])
}

/// Whether `w(1, g_2, ..., g_n) = 1` over the integers.
pub fn trivial_at_identity(w: &Word, constants: &[IntMat2]) -> bool {
    let ring = PolySl2::default();
    let mut tuple = vec![ring.identity()];
    tuple.extend(constants.iter().map(|m| ring.constant(m)));
    let v = w.evaluate(&ring, &tuple);
    v == ring.identity() && v.0[0].coefficient(&[0, 0]).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn w(text: &str) -> Word {
        parse_word(text, None).unwrap().into_word().unwrap()
    }

    #[test]
    fn generator_trace() {
        let psi = trace_polynomial(&w("x"), &[]).unwrap();
        assert_eq!(psi.to_string(), "1·x^1·y^1 + 2");
    }

    #[test]
    fn commutator_with_unipotent() {
        let psi = trace_polynomial(&w("[x1,x2]"), &[[1, 1, 0, 1]]).unwrap();
        assert_eq!(psi.to_string(), "1·y^2 + 2");
    }

    #[test]
    fn errors() {
        assert_eq!(
            trace_polynomial(&w("[x1,x2]"), &[]),
            Err(Error::TraceConstantCount { expected: 1, got: 0 })
        );
        assert!(matches!(
            trace_polynomial(&w("[x1,x2]"), &[[2, 0, 0, 1]]),
            Err(Error::Determinant { index: 2, .. })
        ));
    }

    #[test]
    fn identity_word() {
        let psi = trace_polynomial(&Word::identity(0), &[]).unwrap();
        assert_eq!(psi.to_string(), "2");
        assert!(psi.is_constant());
    }
}
