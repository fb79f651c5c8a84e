//! Recursive-descent parser for the word grammar:
//!
//! ```text
//! expr  := term { "*"? term }
//! term  := atom [ "^" int ]
//! atom  := var | const | "1" | "[" expr "," expr "]" | "(" expr ")"
//! var   := "x" int | "x" | "y" | "z" | "u" | "v"
//! const := "#" int
//! ```
//!
//! Whitespace between tokens is ignored.

use super::constants::{reduce_syms, ConstSlot, Sym};
use super::{Letter, Word, WordWithConstants};
use crate::error::{Error, Result};

/// Result of parsing: a plain word, or a word with constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Word(Word),
    WithConstants(WordWithConstants),
}

impl Parsed {
    pub fn into_word(self) -> Result<Word> {
        match self {
            Parsed::Word(w) => Ok(w),
            Parsed::WithConstants(_) => Err(Error::UnexpectedConstants),
        }
    }

    pub fn into_with_constants(self) -> Result<WordWithConstants> {
        match self {
            Parsed::WithConstants(w) => Ok(w),
            Parsed::Word(_) => Err(Error::InvalidArgument(
                "expected a word with at least one constant #k".into(),
            )),
        }
    }

    pub fn arity(&self) -> u32 {
        match self {
            Parsed::Word(w) => w.arity(),
            Parsed::WithConstants(w) => w.arity(),
        }
    }
}

/// Parse `text`; the arity is the largest generator used unless
/// `arity_hint` is larger.
pub fn parse_word(text: &str, arity_hint: Option<u32>) -> Result<Parsed> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        idx: 0,
        len: text.len(),
    };
    let syms = p.expr()?;
    p.skip_ws();
    if let Some((pos, c)) = p.peek_raw() {
        return Err(Error::syntax(pos, format!("unexpected '{c}'")));
    }
    let syms = reduce_syms(syms);
    let hint = arity_hint.unwrap_or(0);
    if syms.iter().all(|s| matches!(s, Sym::Var(_))) {
        let letters = syms.into_iter().map(|s| match s {
            Sym::Var(l) => l,
            Sym::Const(_) => unreachable!(),
        });
        Ok(Parsed::Word(Word::from_letters(letters, hint)))
    } else {
        Ok(Parsed::WithConstants(WordWithConstants::from_syms(syms, hint)?))
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.idx < self.chars.len() && self.chars[self.idx].1.is_whitespace() {
            self.idx += 1;
        }
    }

    fn peek_raw(&self) -> Option<(usize, char)> {
        self.chars.get(self.idx).copied()
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.peek_raw()
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map(|c| c.0).unwrap_or(self.len)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some((_, c)) if c == want => {
                self.idx += 1;
                Ok(())
            }
            Some((pos, c)) => Err(Error::syntax(pos, format!("expected '{want}', found '{c}'"))),
            None => Err(Error::syntax(self.len, format!("expected '{want}', found end of input"))),
        }
    }

    fn starts_atom(c: char) -> bool {
        matches!(c, 'x' | 'y' | 'z' | 'u' | 'v' | '#' | '[' | '(')
    }

    fn expr(&mut self) -> Result<Vec<Sym>> {
        let mut out = self.term()?;
        loop {
            match self.peek() {
                Some((_, '*')) => {
                    self.idx += 1;
                    out.extend(self.term()?);
                }
                Some((_, c)) if Self::starts_atom(c) => out.extend(self.term()?),
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<Vec<Sym>> {
        let atom = self.atom()?;
        if let Some((_, '^')) = self.peek() {
            self.idx += 1;
            self.skip_ws();
            let pos = self.pos();
            let e = self.int()?;
            if e == 0 {
                return Err(Error::ZeroExponent { pos });
            }
            return Ok(power(atom, e));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Vec<Sym>> {
        let Some((pos, c)) = self.peek() else {
            return Err(Error::syntax(self.len, "unexpected end of input"));
        };
        match c {
            '1' => {
                self.idx += 1;
                Ok(Vec::new())
            }
            'x' => {
                self.idx += 1;
                // digits must follow immediately to form an index
                if matches!(self.peek_raw(), Some((_, d)) if d.is_ascii_digit()) {
                    let ipos = self.pos();
                    let i = self.uint()?;
                    if i == 0 {
                        return Err(Error::GeneratorIndexZero { pos: ipos });
                    }
                    Ok(vec![Sym::Var(Letter::new(to_u32(i, ipos)?, 1))])
                } else {
                    Ok(vec![Sym::Var(Letter::new(1, 1))])
                }
            }
            'y' | 'z' | 'u' | 'v' => {
                self.idx += 1;
                let g = match c {
                    'y' => 2,
                    'z' => 3,
                    'u' => 4,
                    _ => 5,
                };
                Ok(vec![Sym::Var(Letter::new(g, 1))])
            }
            '#' => {
                self.idx += 1;
                let ipos = self.pos();
                if !matches!(self.peek_raw(), Some((_, d)) if d.is_ascii_digit()) {
                    return Err(Error::syntax(ipos, "expected constant index after '#'"));
                }
                let i = self.uint()?;
                if i == 0 {
                    return Err(Error::ConstantIndexZero { pos: ipos });
                }
                Ok(vec![Sym::Const(ConstSlot {
                    index: to_u32(i, ipos)?,
                    exponent: 1,
                })])
            }
            '[' => {
                self.idx += 1;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                let mut out = a.clone();
                out.extend(b.iter().copied());
                out.extend(a.iter().rev().map(|s| s.inverse()));
                out.extend(b.iter().rev().map(|s| s.inverse()));
                Ok(out)
            }
            '(' => {
                self.idx += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            other => Err(Error::syntax(pos, format!("unexpected '{other}'"))),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos();
        let mut s = String::new();
        while let Some((_, d)) = self.peek_raw() {
            if !d.is_ascii_digit() {
                break;
            }
            s.push(d);
            self.idx += 1;
        }
        if s.is_empty() {
            return Err(Error::syntax(start, "expected digits"));
        }
        s.parse()
            .map_err(|_| Error::syntax(start, "integer out of range"))
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos();
        let neg = if let Some((_, '-')) = self.peek_raw() {
            self.idx += 1;
            true
        } else {
            false
        };
        let v = self.uint()?;
        let v = i64::try_from(v).map_err(|_| Error::syntax(start, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }
}

fn to_u32(i: u64, pos: usize) -> Result<u32> {
    u32::try_from(i).map_err(|_| Error::syntax(pos, "index out of range"))
}

fn power(atom: Vec<Sym>, e: i64) -> Vec<Sym> {
    if atom.len() == 1 {
        return vec![match atom[0] {
            Sym::Var(l) => Sym::Var(Letter::new(l.generator, l.exponent * e)),
            Sym::Const(c) => Sym::Const(ConstSlot {
                index: c.index,
                exponent: c.exponent * e,
            }),
        }];
    }
    let base: Vec<Sym> = if e < 0 {
        atom.iter().rev().map(|s| s.inverse()).collect()
    } else {
        atom
    };
    let mut out = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
    for _ in 0..e.unsigned_abs() {
        out.extend(base.iter().copied());
    }
    out
}
