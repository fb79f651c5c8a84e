//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the engine, the group tables or the symbolic
//! layer.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use wordmap::{Family, Word};

/// 2x2 matrix over `Z/p`, row major.
pub type PMat = [u64; 4];

pub fn pmul(a: &PMat, b: &PMat, p: u64) -> PMat {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

/// Inverse of a determinant-one matrix.
pub fn pinv_sl(a: &PMat, p: u64) -> PMat {
    [a[3], (p - a[1]) % p, (p - a[2]) % p, a[0]]
}

pub const PID: PMat = [1, 0, 0, 1];

/// All of `SL_2(Z/p)` by nested loops.
pub fn sl2_elements(p: u64) -> Vec<PMat> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Evaluate a word letter by letter with explicit repeated multiplication.
pub fn eval_word(w: &Word, tuple: &[PMat], p: u64) -> PMat {
    let mut acc = PID;
    for l in w.letters() {
        let g = tuple[l.generator as usize - 1];
        let step = if l.exponent > 0 { g } else { pinv_sl(&g, p) };
        for _ in 0..l.exponent.unsigned_abs() {
            acc = pmul(&acc, &step, p);
        }
    }
    acc
}

/// Image of a word on `SL_2(Z/p)` by single-threaded nested enumeration.
pub fn naive_image(w: &Word, p: u64) -> BTreeSet<PMat> {
    let elems = sl2_elements(p);
    let n = w.arity() as usize;
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let tuple: Vec<PMat> = idx.iter().map(|&i| elems[i]).collect();
        out.insert(eval_word(w, &tuple, p));
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Number of tuples with `w = 1`, by nested enumeration.
pub fn naive_solution_count(w: &Word, p: u64) -> u64 {
    let elems = sl2_elements(p);
    assert_eq!(w.arity(), 2);
    let mut count = 0;
    for a in &elems {
        for b in &elems {
            if eval_word(w, &[*a, *b], p) == PID {
                count += 1;
            }
        }
    }
    count
}

/// The word corpus: `x^m` for `m <= 6`, `[x,y]`, Engel words 1..3 and
/// `[x^2, y^2]`.
pub fn corpus() -> Vec<(String, Word)> {
    let mut out = Vec::new();
    for m in 1..=6 {
        out.push((format!("x^{m}"), Word::family(&Family::Power(m)).unwrap()));
    }
    out.push(("[x,y]".into(), Word::family(&Family::Commutator).unwrap()));
    for m in 1..=3 {
        out.push((format!("engel{m}"), Word::family(&Family::Engel(m)).unwrap()));
    }
    let x2 = Word::generator(1).pow(2);
    let y2 = Word::generator(2).pow(2);
    out.push(("[x^2,y^2]".into(), Word::commutator(&x2, &y2)));
    out
}

/// Sparse integer polynomial in `t_1..t_n, s_1..s_n` with exponent vectors
/// `[t.., s..]`.
pub type SparsePoly = BTreeMap<Vec<i32>, i64>;

fn padd(a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(e.clone()).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn pmono_mul(a: &SparsePoly, c: i64, e: &[i32]) -> SparsePoly {
    let mut out = SparsePoly::new();
    for (k, v) in a {
        let key: Vec<i32> = k.iter().zip(e).map(|(x, y)| x + y).collect();
        *out.entry(key).or_insert(0) += v * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Magnus pair `(t^a, b)`: the diagonal entry is always a monomial, so it
/// is stored as an exponent vector over the `t` variables.
#[derive(Clone)]
pub struct MagnusPair {
    pub alpha: Vec<i32>,
    pub beta: SparsePoly,
}

/// Upper-right entry of the triangular image of `w`, built one unit letter
/// at a time from `x_i -> [[t_i, s_i], [0, t_i^-1]]`.
pub fn magnus_oracle(w: &Word) -> MagnusPair {
    let n = w.arity() as usize;
    let mut cur = MagnusPair {
        alpha: vec![0; n],
        beta: SparsePoly::new(),
    };
    for l in w.letters() {
        let i = l.generator as usize - 1;
        for _ in 0..l.exponent.unsigned_abs() {
            // (a, b) * (c, d) = (ac, a d + b c^-1)
            let (c_exp, d): (i32, SparsePoly) = if l.exponent > 0 {
                let mut e = vec![0; 2 * n];
                e[n + i] = 1;
                (1, [(e, 1)].into())
            } else {
                // x^-1 = (t^-1, -s)
                let mut e = vec![0; 2 * n];
                e[n + i] = 1;
                (-1, [(e, -1)].into())
            };
            let mut a_full = vec![0; 2 * n];
            a_full[..n].copy_from_slice(&cur.alpha);
            let mut c_inv = vec![0; 2 * n];
            c_inv[i] = -c_exp;
            let ad = pmono_mul(&d, 1, &a_full);
            let bc = pmono_mul(&cur.beta, 1, &c_inv);
            cur.beta = padd(&ad, &bc);
            cur.alpha[i] += c_exp;
        }
    }
    cur
}

/// Evaluate a sparse polynomial mod `p` at `t` (nonzero) and `s`.
pub fn sparse_eval_mod(f: &SparsePoly, t: &[u64], s: &[u64], p: u64) -> u64 {
    let n = t.len();
    let mut acc = 0u64;
    for (e, &c) in f {
        let mut term = c.rem_euclid(p as i64) as u64;
        for i in 0..n {
            let base = if e[i] < 0 { modinv(t[i], p) } else { t[i] };
            for _ in 0..e[i].unsigned_abs() {
                term = term * base % p;
            }
            for _ in 0..e[n + i] {
                term = term * s[i] % p;
            }
        }
        acc = (acc + term) % p;
    }
    acc
}

pub fn modinv(a: u64, p: u64) -> u64 {
    (1..p).find(|&b| a * b % p == 1).expect("invertible")
}

/// 2x2 integer matrices over i128.
pub type ZMat = [i128; 4];

pub fn zmul(a: &ZMat, b: &ZMat) -> ZMat {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

pub fn ztrace(a: &ZMat) -> i128 {
    a[0] + a[3]
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
