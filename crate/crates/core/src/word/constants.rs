use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Group, Letter, Word};
use crate::error::{Error, Result};

/// A constant slot `σ_index^exponent` inside a word with constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstSlot {
    /// 1-based index into the constant tuple.
    pub index: u32,
    pub exponent: i64,
}

/// `w_1 c_1 w_2 c_2 ... w_r c_r w_{r+1}`: an element of `G * F_n`.
///
/// `w_1` and `w_{r+1}` may be empty; interior words may not.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordWithConstants {
    words: Vec<Word>,
    slots: Vec<ConstSlot>,
    arity: u32,
}

/// One item of a raw word with constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sym {
    Var(Letter),
    Const(ConstSlot),
}

impl Sym {
    pub(crate) fn inverse(self) -> Sym {
        match self {
            Sym::Var(l) => Sym::Var(l.inverse()),
            Sym::Const(c) => Sym::Const(ConstSlot {
                index: c.index,
                exponent: -c.exponent,
            }),
        }
    }
}

/// Reduce in the free product sense: adjacent powers of the same variable or
/// of the same constant merge, and cancel when the exponent sum is zero.
pub(crate) fn reduce_syms<I: IntoIterator<Item = Sym>>(syms: I) -> Vec<Sym> {
    let mut out: Vec<Sym> = Vec::new();
    for s in syms {
        let merged = match (out.last_mut(), s) {
            (Some(Sym::Var(top)), Sym::Var(l)) if top.generator == l.generator => {
                top.exponent += l.exponent;
                Some(top.exponent == 0)
            }
            (Some(Sym::Const(top)), Sym::Const(c)) if top.index == c.index => {
                top.exponent += c.exponent;
                Some(top.exponent == 0)
            }
            _ => None,
        };
        match merged {
            Some(true) => {
                out.pop();
            }
            Some(false) => {}
            None => out.push(s),
        }
    }
    out
}

impl WordWithConstants {
    /// Build from segment words and slots (`words.len() == slots.len() + 1`).
    pub fn new(words: Vec<Word>, slots: Vec<ConstSlot>, arity_hint: u32) -> Result<Self> {
        if words.len() != slots.len() + 1 {
            return Err(Error::InvalidArgument(
                "a word with r constant slots needs r + 1 segment words".into(),
            ));
        }
        if slots.is_empty() {
            return Err(Error::InvalidArgument(
                "a word with constants needs at least one constant slot".into(),
            ));
        }
        for (k, s) in slots.iter().enumerate() {
            if s.index == 0 {
                return Err(Error::ConstantIndexZero { pos: k });
            }
            if s.exponent == 0 {
                return Err(Error::InvalidArgument(format!("constant slot {} has exponent 0", k + 1)));
            }
        }
        for i in 1..words.len() - 1 {
            if words[i].is_identity() {
                return Err(Error::EmptyInteriorWord(i, i + 1));
            }
        }
        let arity = words
            .iter()
            .map(|w| w.arity())
            .max()
            .unwrap_or(0)
            .max(arity_hint);
        let words = words.into_iter().map(|w| w.with_arity(arity)).collect();
        Ok(WordWithConstants { words, slots, arity })
    }

    pub(crate) fn from_syms(syms: Vec<Sym>, arity_hint: u32) -> Result<Self> {
        let mut words = Vec::new();
        let mut slots = Vec::new();
        let mut current = Vec::new();
        for s in syms {
            match s {
                Sym::Var(l) => current.push(l),
                Sym::Const(c) => {
                    words.push(Word::from_letters(current.drain(..), 0));
                    slots.push(c);
                }
            }
        }
        words.push(Word::from_letters(current, 0));
        WordWithConstants::new(words, slots, arity_hint)
    }

    pub(crate) fn syms(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        for (i, w) in self.words.iter().enumerate() {
            out.extend(w.letters().iter().map(|&l| Sym::Var(l)));
            if let Some(&c) = self.slots.get(i) {
                out.push(Sym::Const(c));
            }
        }
        out
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn slots(&self) -> &[ConstSlot] {
        &self.slots
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    /// Length of the constant tuple this word expects.
    pub fn num_constants(&self) -> usize {
        self.slots.iter().map(|s| s.index as usize).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Result<Self> {
        let syms: Vec<Sym> = self.syms().into_iter().rev().map(Sym::inverse).collect();
        WordWithConstants::from_syms(syms, self.arity)
    }

    /// `self * other`; fails if the product collapses to a constant-free word
    /// or to an empty interior segment.
    pub fn mul(&self, other: &WordWithConstants) -> Result<Self> {
        let syms = reduce_syms(self.syms().into_iter().chain(other.syms()));
        WordWithConstants::from_syms(syms, self.arity.max(other.arity))
    }

    pub fn evaluate<G: Group>(
        &self,
        group: &G,
        tuple: &[G::Elem],
        constants: &[G::Elem],
    ) -> Result<G::Elem> {
        if constants.len() != self.num_constants() {
            return Err(Error::ConstantCount {
                expected: self.num_constants(),
                got: constants.len(),
            });
        }
        if tuple.len() < self.arity as usize {
            return Err(Error::InvalidArgument(format!(
                "tuple has {} entries, word has arity {}",
                tuple.len(),
                self.arity
            )));
        }
        let mut acc = group.identity();
        for (i, w) in self.words.iter().enumerate() {
            acc = group.mul(&acc, &w.evaluate(group, tuple));
            if let Some(s) = self.slots.get(i) {
                let c = group.pow(&constants[s.index as usize - 1], s.exponent);
                acc = group.mul(&acc, &c);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for WordWithConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, w) in self.words.iter().enumerate() {
            if !w.is_identity() {
                parts.push(w.to_string());
            }
            if let Some(s) = self.slots.get(i) {
                if s.exponent == 1 {
                    parts.push(format!("#{}", s.index));
                } else {
                    parts.push(format!("#{}^{}", s.index, s.exponent));
                }
            }
        }
        f.write_str(&parts.join(" "))
    }
}
