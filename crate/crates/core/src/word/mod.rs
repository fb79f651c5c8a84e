//! Free-group words, words with constants and their evaluation in an
//! arbitrary group.
//!
//! Words are kept freely reduced at all times. Generators are 1-based; `x`
//! is generator 1 and `y` generator 2 in the single-letter notation.

pub(crate) mod constants;
mod eval;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use constants::{ConstSlot, WordWithConstants};
pub use eval::Group;
pub use parse::{parse_word, Parsed};

/// A generator raised to a nonzero power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: u32,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: u32, exponent: i64) -> Self {
        assert!(generator >= 1, "generators are 1-based");
        assert!(exponent != 0, "letter exponent must be nonzero");
        Letter { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

/// Freely reduce a raw letter sequence. Zero-exponent letters are dropped.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if l.exponent == 0 {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.generator == l.generator => {
                top.exponent += l.exponent;
                if top.exponent == 0 {
                    out.pop();
                }
            }
            _ => out.push(l),
        }
    }
    out
}

/// A freely reduced word in the free group of rank `arity`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
    arity: u32,
}

/// Named word families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `x^m`
    Power(i64),
    /// `[x, y]`
    Commutator,
    /// `[y, [y, ... [y, x]]]` with `m` nestings.
    Engel(u32),
    /// Left-normed commutator `[[x_a, x_b], x_c] ...` of the listed generators.
    MultiCommutator(Vec<u32>),
    /// `[x1, x2][x3, x4] ... [x_{2n-1}, x_{2n}]`
    CommutatorProduct(u32),
}

/// Elementary Nielsen transformations of the free basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NielsenMove {
    /// Exchange generators `i` and `j`.
    Swap(u32, u32),
    /// `x_i -> x_i^-1`
    Invert(u32),
    /// `x_i -> x_i x_j`, `i != j`.
    MultiplyRight(u32, u32),
}

impl Word {
    pub fn identity(arity: u32) -> Self {
        Word {
            letters: Vec::new(),
            arity,
        }
    }

    /// Build a word from raw letters, reducing eagerly. The arity is the
    /// largest generator used, or `arity_hint` if that is larger.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I, arity_hint: u32) -> Self {
        let letters = free_reduce(letters);
        let used = letters.iter().map(|l| l.generator).max().unwrap_or(0);
        Word {
            letters,
            arity: used.max(arity_hint),
        }
    }

    /// The single generator `x_i`.
    pub fn generator(i: u32) -> Self {
        Word::from_letters([Letter::new(i, 1)], i)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    /// Widen the ambient free group; never shrinks below the generators used.
    pub fn with_arity(mut self, arity: u32) -> Self {
        self.arity = self.arity.max(arity);
        self
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length as a reduced word over `x_i^{±1}`.
    pub fn len(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.exponent.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index actually occurring.
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    /// Iterate over the word one unit letter `x_i^{±1}` at a time.
    pub fn unit_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters.iter().flat_map(|l| {
            let unit = Letter::new(l.generator, l.exponent.signum());
            std::iter::repeat_n(unit, l.exponent.unsigned_abs() as usize)
        })
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(
            self.letters.iter().chain(other.letters.iter()).copied(),
            self.arity.max(other.arity),
        )
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            arity: self.arity,
        }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.arity);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[a, b] = a b a^-1 b^-1`
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    pub fn family(kind: &Family) -> Result<Word> {
        let x = Word::generator(1);
        let y = Word::generator(2);
        match kind {
            Family::Power(m) => {
                if *m == 0 {
                    return Err(Error::InvalidArgument("power m must be nonzero".into()));
                }
                Ok(x.pow(*m))
            }
            Family::Commutator => Ok(Word::commutator(&x, &y)),
            Family::Engel(m) => {
                if *m == 0 {
                    return Err(Error::InvalidArgument("engel m must be >= 1".into()));
                }
                let mut w = x;
                for _ in 0..*m {
                    w = Word::commutator(&y, &w);
                }
                Ok(w.with_arity(2))
            }
            Family::MultiCommutator(gens) => {
                if gens.len() < 2 || gens.contains(&0) {
                    return Err(Error::InvalidArgument(
                        "multi-commutator needs at least two 1-based generators".into(),
                    ));
                }
                let mut w = Word::generator(gens[0]);
                for &g in &gens[1..] {
                    w = Word::commutator(&w, &Word::generator(g));
                }
                let arity = gens.iter().copied().max().unwrap_or(0);
                Ok(w.with_arity(arity))
            }
            Family::CommutatorProduct(n) => {
                if *n == 0 {
                    return Err(Error::InvalidArgument("commutator product needs n >= 1".into()));
                }
                let mut w = Word::identity(2 * n);
                for i in 0..*n {
                    let c = Word::commutator(&Word::generator(2 * i + 1), &Word::generator(2 * i + 2));
                    w = w.mul(&c);
                }
                Ok(w)
            }
        }
    }

    /// Rename `x_i -> x_{i+offset}`; the arity grows by `offset`.
    pub fn shift_variables(&self, offset: u32) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(l.generator + offset, l.exponent))
                .collect(),
            arity: self.arity + offset,
        }
    }

    /// Sum of exponents per generator; zero iff `w` lies in `[F_n, F_n]`.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.arity as usize];
        for l in &self.letters {
            v[l.generator as usize - 1] += l.exponent;
        }
        v
    }

    pub fn in_commutator_subgroup(&self) -> bool {
        self.abelianization().iter().all(|&e| e == 0)
    }

    /// Apply the endomorphism `x_i -> images[i-1]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        assert!(
            images.len() >= self.max_generator() as usize,
            "substitution needs an image for every generator"
        );
        let arity = images.iter().map(|w| w.arity).max().unwrap_or(0);
        let mut out = Word::identity(arity);
        for l in &self.letters {
            out = out.mul(&images[l.generator as usize - 1].pow(l.exponent));
        }
        out
    }

    /// Apply elementary Nielsen moves in order, as automorphisms of `F_n`.
    pub fn apply_nielsen(&self, moves: &[NielsenMove]) -> Result<Word> {
        let mut w = self.clone();
        for mv in moves {
            let n = w.arity;
            let check = |i: u32| {
                if i == 0 || i > n {
                    Err(Error::InvalidArgument(format!(
                        "Nielsen move references generator {i} outside arity {n}"
                    )))
                } else {
                    Ok(())
                }
            };
            let mut images: Vec<Word> = (1..=n).map(|i| Word::generator(i).with_arity(n)).collect();
            match *mv {
                NielsenMove::Swap(i, j) => {
                    check(i)?;
                    check(j)?;
                    images.swap(i as usize - 1, j as usize - 1);
                }
                NielsenMove::Invert(i) => {
                    check(i)?;
                    images[i as usize - 1] = Word::generator(i).inverse();
                }
                NielsenMove::MultiplyRight(i, j) => {
                    check(i)?;
                    check(j)?;
                    if i == j {
                        return Err(Error::InvalidArgument(
                            "x_i -> x_i x_j needs i != j".into(),
                        ));
                    }
                    images[i as usize - 1] = Word::generator(i).mul(&Word::generator(j));
                }
            }
            w = w.substitute(&images).with_arity(n);
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", l.generator)?;
            if l.exponent != 1 {
                write!(f, "^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}
