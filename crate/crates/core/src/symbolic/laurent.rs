//! Sparse multivariate Laurent polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered variable names; `laurent[i]` says whether negative exponents are
/// allowed for variable `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variables {
    names: Vec<String>,
    laurent: Vec<bool>,
}

impl Variables {
    pub fn new(names: Vec<String>, laurent: Vec<bool>) -> Arc<Self> {
        assert_eq!(names.len(), laurent.len());
        Arc::new(Variables { names, laurent })
    }

    /// `t1..tn` (Laurent) followed by `s1..sn` (polynomial).
    pub fn magnus(n: usize) -> Arc<Self> {
        let names = (1..=n)
            .map(|i| format!("t{i}"))
            .chain((1..=n).map(|i| format!("s{i}")))
            .collect();
        let laurent = (0..2 * n).map(|i| i < n).collect();
        Variables::new(names, laurent)
    }

    /// `x, y`, both polynomial.
    pub fn xy() -> Arc<Self> {
        Variables::new(vec!["x".into(), "y".into()], vec![false, false])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }
}

pub type Exponents = Vec<i32>;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Arc<Variables>,
    terms: BTreeMap<Exponents, BigInt>,
}

/// JSON form: one entry per term, exponents in variable order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPolyJson {
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i32>,
    /// Decimal string; coefficients are arbitrary precision.
    pub coefficient: String,
}

impl LaurentPoly {
    pub fn zero(vars: &Arc<Variables>) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<Variables>, c: impl Into<BigInt>) -> Self {
        let n = vars.len();
        Self::monomial(vars, c, vec![0; n])
    }

    pub fn one(vars: &Arc<Variables>) -> Self {
        Self::constant(vars, 1)
    }

    pub fn monomial(vars: &Arc<Variables>, c: impl Into<BigInt>, exps: Exponents) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        for (i, &e) in exps.iter().enumerate() {
            assert!(
                e >= 0 || vars.is_laurent(i),
                "negative exponent for polynomial variable {}",
                vars.names[i]
            );
        }
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The single variable `v_i` (0-based).
    pub fn var(vars: &Arc<Variables>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, 1, e)
    }

    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn check_compatible(&self, other: &LaurentPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "Laurent polynomials over different variable sets"
        );
    }

    fn add_term(terms: &mut BTreeMap<Exponents, BigInt>, e: Exponents, c: BigInt) {
        use std::collections::btree_map::Entry;
        match terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// A single term `c * v^e` with `c = ±1` that only involves Laurent
    /// variables, i.e. a unit of the ring.
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| {
                c.abs().is_one()
                    && e.iter()
                        .enumerate()
                        .all(|(i, &x)| x == 0 || self.vars.is_laurent(i))
            })
    }

    /// Inverse of a unit monomial.
    pub fn unit_inverse(&self) -> Result<LaurentPoly> {
        if !self.is_unit_monomial() {
            return Err(Error::InvalidArgument(format!("{self} is not a unit")));
        }
        let (e, c) = self.terms.iter().next().expect("one term");
        let inv: Exponents = e.iter().map(|&x| -x).collect();
        Ok(Self::monomial(&self.vars, c.clone(), inv))
    }

    /// Multiply by `c * v^e`.
    pub fn mul_monomial(&self, c: &BigInt, e: &[i32]) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| {
                let ne: Exponents = k.iter().zip(e).map(|(a, b)| a + b).collect();
                (ne, v * c)
            })
            .collect();
        let out = LaurentPoly {
            vars: self.vars.clone(),
            terms,
        };
        debug_assert!(out.check_invariants().is_ok());
        out
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        let n = self.vars.len();
        self.mul_monomial(c, &vec![0; n])
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Total degree in the given variable indices, per term.
    pub fn degrees_in(&self, idx: &[usize]) -> Vec<i64> {
        self.terms
            .keys()
            .map(|e| idx.iter().map(|&i| e[i] as i64).sum())
            .collect()
    }

    /// Verify stored-zero and sign invariants.
    pub fn check_invariants(&self) -> Result<()> {
        for (e, c) in &self.terms {
            if c.is_zero() {
                return Err(Error::InvalidArgument("stored zero coefficient".into()));
            }
            if e.len() != self.vars.len() {
                return Err(Error::InvalidArgument("exponent vector length".into()));
            }
            for (i, &x) in e.iter().enumerate() {
                if x < 0 && !self.vars.is_laurent(i) {
                    return Err(Error::InvalidArgument(format!(
                        "negative exponent of {}",
                        self.vars.names[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Reduce coefficients into `[0, p)`, dropping those divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> LaurentPoly {
        let pb = BigInt::from(p);
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let r = c.mod_floor(&pb);
                (!r.is_zero()).then(|| (e.clone(), r))
            })
            .collect();
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Evaluate over `F_p` at `values` (one residue per variable). Laurent
    /// variables with a negative exponent must take nonzero values.
    pub fn eval_mod(&self, p: u64, values: &[u64]) -> Result<u64> {
        if values.len() != self.vars.len() {
            return Err(Error::InvalidArgument("wrong number of values".into()));
        }
        let pb = BigInt::from(p);
        let mut acc: u128 = 0;
        let p128 = p as u128;
        for (e, c) in &self.terms {
            let mut term = c.mod_floor(&pb).to_u64().expect("residue fits") as u128;
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let v = values[i] % p;
                let base = if x < 0 {
                    if v == 0 {
                        return Err(Error::InvalidArgument(format!(
                            "{} = 0 with negative exponent",
                            self.vars.names[i]
                        )));
                    }
                    mod_pow(v, p - 2, p)
                } else {
                    v
                };
                term = term * mod_pow(base, x.unsigned_abs() as u64, p) as u128 % p128;
            }
            acc = (acc + term) % p128;
        }
        Ok(acc as u64)
    }

    /// Evaluate at integers; all exponents must be nonnegative.
    pub fn eval_integers(&self, values: &[BigInt]) -> Result<BigInt> {
        if values.len() != self.vars.len() {
            return Err(Error::InvalidArgument("wrong number of values".into()));
        }
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &x) in e.iter().enumerate() {
                if x < 0 {
                    return Err(Error::InvalidArgument(
                        "integer evaluation with a negative exponent".into(),
                    ));
                }
                term *= num_traits::pow(values[i].clone(), x as usize);
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> LaurentPolyJson {
        LaurentPolyJson {
            variables: self.vars.names.clone(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| TermJson {
                    exponents: e.clone(),
                    coefficient: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(vars: &Arc<Variables>, json: &LaurentPolyJson) -> Result<LaurentPoly> {
        if json.variables != vars.names {
            return Err(Error::InvalidArgument("variable names differ".into()));
        }
        let mut out = Self::zero(vars);
        for t in &json.terms {
            let c: BigInt = t
                .coefficient
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad coefficient {}", t.coefficient)))?;
            if t.exponents.len() != vars.len() {
                return Err(Error::InvalidArgument("exponent vector length".into()));
            }
            Self::add_term(&mut out.terms, t.exponents.clone(), c);
        }
        out.check_invariants()?;
        Ok(out)
    }
}

pub(crate) fn mod_pow(b: u64, mut e: u64, p: u64) -> u64 {
    let p = p as u128;
    let mut acc: u128 = 1 % p;
    let mut base = b as u128 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u64
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_compatible(rhs);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            LaurentPoly::add_term(&mut terms, e.clone(), c.clone());
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_compatible(rhs);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            LaurentPoly::add_term(&mut terms, e.clone(), -c);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_compatible(rhs);
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                LaurentPoly::add_term(&mut terms, e, c1 * c2);
            }
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Canonical text form: terms in descending lexicographic order of exponent
/// vectors, `coeff·v^e` factors joined by `·`, terms joined by ` + `.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    write!(f, "·{}^{}", self.vars.names[i], x)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
