//! Finite fields `F_q`, `q = p^k`, with log/antilog multiplication tables.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_0 + c_1 x + ...` is its residue modulo the defining polynomial.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `q`.
pub const DEFAULT_Q_BOUND: u64 = 1 << 16;

pub type Fq = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Monic modulus, lowest coefficient first, length `k + 1`.
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `q = p^k` with `p` prime, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate() {
            let idx = deg - k + j;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo the monic `m` over `F_p` (lowest first).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    while r.len() > dm {
        let c = r.pop().expect("nonempty");
        if c == 0 {
            continue;
        }
        let base = r.len() - dm;
        for j in 0..dm {
            r[base + j] = (r[base + j] + (p as u64 - c) * m[j] as u64) % p as u64;
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Irreducibility by trial division with every monic polynomial of degree
/// at most `k / 2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut m = digits(code, p, d);
            m.push(1);
            if poly_rem(modulus, &m, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut code: u64, p: u32, k: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(k);
    for _ in 0..k {
        v.push((code % p as u64) as u32);
        code /= p as u64;
    }
    v
}

impl FieldSpec {
    /// Prime field or extension with the given or default modulus.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        Self::with_bound(p, k, modulus, DEFAULT_Q_BOUND)
    }

    pub fn with_bound(p: u32, k: u32, modulus: Option<Vec<u32>>, q_bound: u64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Field("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > q_bound {
            return Err(Error::Field(format!("q = {p}^{k} exceeds bound {q_bound}")));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(Error::Field(format!("modulus must be monic of degree {k}")));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::Field(format!("modulus coefficients must be < {p}")));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::Field(format!("modulus {m:?} is not irreducible over F_{p}")));
                }
                m
            }
            None => Self::default_modulus(p, k),
        };
        Ok(FieldSpec { p, k, modulus })
    }

    /// `F_q` for a prime power `q`, default modulus.
    pub fn for_q(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        Self::new(p, k, None)
    }

    /// Lowest irreducible monic modulus, ordering the lower coefficients by
    /// their base-`p` code `c_0 + c_1 p + ...`.
    pub fn default_modulus(p: u32, k: u32) -> Vec<u32> {
        if k == 1 {
            return vec![0, 1];
        }
        let count = (p as u64).pow(k);
        for code in 0..count {
            let mut m = digits(code, p, k as usize);
            m.push(1);
            if is_irreducible(&m, p) {
                return m;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.k)
    }
}

/// `F_q` with precomputed tables.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    /// `exp[i] = g^i` for a fixed primitive element `g`, `i < q - 1`.
    exp: Vec<Fq>,
    /// Discrete log; `log[0]` is unused.
    log: Vec<u32>,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let q = spec.q();
        let p = spec.p;
        let k = spec.k as usize;
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let mut exp = Vec::new();
        let mut log = vec![0u32; q as usize];
        if q == 2 {
            exp.push(1);
            log[1] = 0;
        } else {
            'candidates: for g in 2..q.max(3) {
                let gv = digits(g as u64, p, k);
                let mut seen = vec![false; q as usize];
                let mut cur = digits(1, p, k);
                exp.clear();
                for _ in 0..q - 1 {
                    let code = encode(&cur);
                    if seen[code as usize] {
                        continue 'candidates;
                    }
                    seen[code as usize] = true;
                    exp.push(code);
                    cur = poly_mulmod(&cur, &gv, &spec.modulus, p);
                }
                break;
            }
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
        }
        assert_eq!(exp.len(), q as usize - 1, "no primitive element found");
        Field { spec, q, exp, log }
    }

    pub fn for_q(q: u64) -> Result<Self> {
        Ok(Field::new(FieldSpec::for_q(q)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q
    }

    /// The image of an integer.
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.spec.p as i64) as Fq
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.spec.p;
        if self.spec.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.spec.p;
        if self.spec.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            let d = a % p;
            out += ((p - d) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        let l = self.log[a as usize];
        self.exp[((n - l) % n) as usize]
    }

    pub fn div(&self, a: Fq, b: Fq) -> Fq {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fq, e: i64) -> Fq {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            assert!(e > 0, "zero to a negative power");
            return 0;
        }
        let n = (self.q - 1) as i64;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[l as usize]
    }

    pub fn is_square(&self, a: Fq) -> bool {
        a == 0 || self.spec.p == 2 || self.log[a as usize].is_multiple_of(2)
    }
}
