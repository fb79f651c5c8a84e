//! Magnus embedding of the free metabelian group into upper-triangular
//! 2×2 matrices over `Z[t_i^±1, s_i]`, and the obstruction polynomial
//! `f_w` with its prime set `S_w`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::{LaurentPoly, Variables};
use crate::error::{Error, Result};
use crate::word::{Group, Word};

/// Default bound on the reduced length of words fed to the embedding.
pub const DEFAULT_LENGTH_BOUND: usize = 10_000;

/// `[[alpha, beta], [0, alpha^-1]]` with `alpha` a unit monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusMatrix {
    pub alpha: LaurentPoly,
    pub beta: LaurentPoly,
}

impl MagnusMatrix {
    pub fn is_identity(&self) -> bool {
        self.alpha.is_one() && self.beta.is_zero()
    }
}

/// The triangular group over `Z[t_1^±1..t_n^±1, s_1..s_n]`.
#[derive(Debug, Clone)]
pub struct MagnusGroup {
    vars: Arc<Variables>,
    n: usize,
}

impl MagnusGroup {
    pub fn new(n: usize) -> Self {
        MagnusGroup {
            vars: Variables::magnus(n),
            n,
        }
    }

    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    /// `zeta_i = [[t_i, s_i], [0, t_i^-1]]` for 1-based `i`.
    pub fn zeta(&self, i: usize) -> MagnusMatrix {
        MagnusMatrix {
            alpha: LaurentPoly::var(&self.vars, i - 1),
            beta: LaurentPoly::var(&self.vars, self.n + i - 1),
        }
    }

    pub fn generators(&self) -> Vec<MagnusMatrix> {
        (1..=self.n).map(|i| self.zeta(i)).collect()
    }
}

impl Group for MagnusGroup {
    type Elem = MagnusMatrix;

    fn identity(&self) -> MagnusMatrix {
        MagnusMatrix {
            alpha: LaurentPoly::one(&self.vars),
            beta: LaurentPoly::zero(&self.vars),
        }
    }

    // (a, b)(c, d) = (ac, ad + b c^-1)
    fn mul(&self, x: &MagnusMatrix, y: &MagnusMatrix) -> MagnusMatrix {
        let c_inv = y.alpha.unit_inverse().expect("alpha is a unit");
        MagnusMatrix {
            alpha: &x.alpha * &y.alpha,
            beta: &(&x.alpha * &y.beta) + &(&x.beta * &c_inv),
        }
    }

    // (a, b)^-1 = (a^-1, -b)
    fn inv(&self, x: &MagnusMatrix) -> MagnusMatrix {
        MagnusMatrix {
            alpha: x.alpha.unit_inverse().expect("alpha is a unit"),
            beta: -&x.beta,
        }
    }
}

pub fn magnus_image(w: &Word) -> Result<MagnusMatrix> {
    magnus_image_bounded(w, DEFAULT_LENGTH_BOUND)
}

pub fn magnus_image_bounded(w: &Word, bound: usize) -> Result<MagnusMatrix> {
    if w.len() > bound {
        return Err(Error::WordTooLong {
            len: w.len(),
            bound,
        });
    }
    let g = MagnusGroup::new(w.arity() as usize);
    Ok(w.evaluate(&g, &g.generators()))
}

/// The upper-right entry of the Magnus image of `w ∈ [F_n, F_n]`.
pub fn f_w(w: &Word) -> Result<LaurentPoly> {
    if !w.in_commutator_subgroup() {
        return Err(Error::NotInDerivedSubgroup);
    }
    let m = magnus_image(w)?;
    assert!(m.alpha.is_one(), "alpha of a commutator-subgroup word must be 1");
    let n = w.arity() as usize;
    let s_idx: Vec<usize> = (n..2 * n).collect();
    assert!(
        m.beta.degrees_in(&s_idx).iter().all(|&d| d == 1),
        "every term of f_w must have s-degree exactly 1"
    );
    Ok(m.beta)
}

pub fn is_in_f2(w: &Word) -> Result<bool> {
    Ok(magnus_image(w)?.is_identity())
}

/// Primes dividing every coefficient of `f_w`.
pub fn prime_set(w: &Word) -> Result<BTreeSet<BigInt>> {
    let f = f_w(w)?;
    if f.is_zero() {
        return Err(Error::WordInSecondDerived);
    }
    Ok(prime_factors(&f.content()))
}

/// Distinct prime factors by trial division.
pub fn prime_factors(n: &BigInt) -> BTreeSet<BigInt> {
    let mut out = BTreeSet::new();
    let mut n = n.abs();
    if n.is_zero() {
        return out;
    }
    if let Some(mut m) = n.to_u64() {
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            if m % d == 0 {
                out.insert(BigInt::from(d));
                while m % d == 0 {
                    m /= d;
                }
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.insert(BigInt::from(m));
        }
        return out;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.insert(d.clone());
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += BigInt::one();
    }
    if n > BigInt::one() {
        out.insert(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn w(text: &str) -> Word {
        parse_word(text, None).unwrap().into_word().unwrap()
    }

    #[test]
    fn square_of_generator() {
        let m = magnus_image(&w("x1^2")).unwrap();
        assert_eq!(m.alpha.to_string(), "1·t1^2");
        // s1 (t1 + t1^-1)
        assert_eq!(m.beta.to_string(), "1·t1^1·s1^1 + 1·t1^-1·s1^1");
    }

    #[test]
    fn f_w_requires_commutator_subgroup() {
        assert_eq!(f_w(&w("x^2")), Err(Error::NotInDerivedSubgroup));
    }

    #[test]
    fn prime_sets() {
        let set = |t: &str| -> Vec<i64> {
            prime_set(&w(t))
                .unwrap()
                .into_iter()
                .map(|p| p.to_i64().unwrap())
                .collect()
        };
        assert!(set("[x,y]").is_empty());
        assert_eq!(set("[x,y]^2"), vec![2]);
        assert_eq!(set("[x,y]^3"), vec![3]);
        assert_eq!(set("[x,y]^6"), vec![2, 3]);
        assert_eq!(
            prime_set(&w("[[x1,x2],[x3,x4]]")),
            Err(Error::WordInSecondDerived)
        );
    }

    #[test]
    fn second_derived() {
        assert!(is_in_f2(&w("[[x1,x2],[x3,x4]]")).unwrap());
        assert!(!is_in_f2(&w("[x,y]")).unwrap());
        assert!(is_in_f2(&Word::identity(0)).unwrap());
        assert!(is_in_f2(&Word::identity(3)).unwrap());
    }

    #[test]
    fn length_guard() {
        let long = w("x^20");
        assert!(matches!(
            magnus_image_bounded(&long, 10),
            Err(Error::WordTooLong { len: 20, bound: 10 })
        ));
    }

    #[test]
    fn factorization() {
        let f = |n: i64| -> Vec<i64> {
            prime_factors(&BigInt::from(n))
                .into_iter()
                .map(|p| p.to_i64().unwrap())
                .collect()
        };
        assert_eq!(f(1), Vec::<i64>::new());
        assert_eq!(f(360), vec![2, 3, 5]);
        assert_eq!(f(-97), vec![97]);
        let big: BigInt = BigInt::from(u64::MAX) * BigInt::from(9);
        let primes = prime_factors(&big);
        assert!(primes.contains(&BigInt::from(3)));
    }
}
