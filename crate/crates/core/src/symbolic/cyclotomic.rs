//! Cyclotomic polynomials and arithmetic in `Z[ζ_n] = Z[x] / Φ_n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Division by a monic polynomial: `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = divisor.degree().expect("nonzero divisor");
        assert!(divisor.0[dd].is_one(), "divisor must be monic");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (IntPoly(Vec::new()), IntPoly::new(rem));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·x")?,
                _ => write!(f, "{c}·x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `Φ_n`, by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::one();
    let mut p = IntPoly::new(coeffs);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = p.div_rem_monic(&cyclotomic_poly(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// An element of `Z[ζ_n]`, reduced modulo `Φ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElt {
    conductor: u64,
    /// Exactly `φ(n)` coefficients.
    coeffs: Vec<BigInt>,
}

/// Arithmetic context for one conductor.
#[derive(Debug, Clone)]
pub struct CycloRing {
    conductor: u64,
    modulus: IntPoly,
}

impl CycloRing {
    pub fn new(n: u64) -> Self {
        CycloRing {
            conductor: n,
            modulus: cyclotomic_poly(n),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("Φ_n is nonzero")
    }

    fn reduce(&self, p: &IntPoly) -> CycloElt {
        let (_, r) = p.div_rem_monic(&self.modulus);
        let mut coeffs = r.0;
        coeffs.resize(self.degree(), BigInt::zero());
        CycloElt {
            conductor: self.conductor,
            coeffs,
        }
    }

    pub fn from_int(&self, c: i64) -> CycloElt {
        self.reduce(&IntPoly::from_i64(&[c]))
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> CycloElt {
        let e = k.rem_euclid(self.conductor as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        self.reduce(&IntPoly::new(coeffs))
    }

    pub fn add(&self, a: &CycloElt, b: &CycloElt) -> CycloElt {
        assert_eq!(a.conductor, self.conductor);
        assert_eq!(b.conductor, self.conductor);
        CycloElt {
            conductor: self.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn mul(&self, a: &CycloElt, b: &CycloElt) -> CycloElt {
        let pa = IntPoly::new(a.coeffs.clone());
        let pb = IntPoly::new(b.coeffs.clone());
        self.reduce(&pa.mul(&pb))
    }
}

impl CycloElt {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = IntPoly::new(self.coeffs.clone());
        write!(f, "{}", p.to_string().replace('x', &format!("ζ{}", self.conductor)))
    }
}
