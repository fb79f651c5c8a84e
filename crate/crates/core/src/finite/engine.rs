//! Exhaustive and sampled evaluation of word maps over a `GroupTable`.
//!
//! The tuple space `G^n` is numbered `0..|G|^n` (first variable most
//! significant) and cut into contiguous chunks. Each chunk accumulates into
//! its own result and results are merged with a commutative, associative
//! operation (bitwise or, addition), so the output does not depend on the
//! number of workers or on scheduling.

use std::sync::atomic::{AtomicBool, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::element_set::ElementSet;
use super::group::{GroupKind, GroupTable};
use crate::error::{Error, Result};
use crate::word::{Word, WordWithConstants};

/// Default cap on `|G|^n` for exhaustive enumeration.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

const MAX_CHUNKS: u128 = 1024;
const SAMPLE_CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Worker threads; 0 uses the global rayon pool.
    pub workers: usize,
    pub budget: u128,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            workers: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl EngineOptions {
    pub fn with_workers(workers: usize) -> Self {
        EngineOptions {
            workers,
            ..Default::default()
        }
    }

    /// Run `f` on a pool of the configured size.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.workers == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

/// What to evaluate: a plain word or a word with fixed constants.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    Word(&'a Word),
    WithConstants(&'a WordWithConstants, &'a [u32]),
}

impl<'a> From<&'a Word> for Target<'a> {
    fn from(w: &'a Word) -> Self {
        Target::Word(w)
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    /// Multiply by `powers[table][tuple[var]]`, or by `tuple[var]` itself.
    Var { var: usize, table: Option<usize> },
    Fixed(u32),
}

/// A word compiled against one group: power maps are tabulated once.
#[derive(Debug, Clone)]
pub struct Program {
    ops: Vec<Op>,
    powers: Vec<Vec<u32>>,
    arity: usize,
}

impl Program {
    pub fn compile(target: Target<'_>, g: &GroupTable) -> Result<Program> {
        let mut prog = Program {
            ops: Vec::new(),
            powers: Vec::new(),
            arity: 0,
        };
        let mut exps: Vec<i64> = Vec::new();
        let mut push_word = |prog: &mut Program, w: &Word| {
            for l in w.letters() {
                let table = if l.exponent == 1 {
                    None
                } else {
                    let pos = exps.iter().position(|&e| e == l.exponent).unwrap_or_else(|| {
                        exps.push(l.exponent);
                        prog.powers.push(g.power_map(l.exponent));
                        exps.len() - 1
                    });
                    Some(pos)
                };
                prog.ops.push(Op::Var {
                    var: l.generator as usize - 1,
                    table,
                });
            }
        };
        match target {
            Target::Word(w) => {
                push_word(&mut prog, w);
                prog.arity = w.arity() as usize;
            }
            Target::WithConstants(wc, constants) => {
                if constants.len() != wc.num_constants() {
                    return Err(Error::ConstantCount {
                        expected: wc.num_constants(),
                        got: constants.len(),
                    });
                }
                if let Some(&bad) = constants.iter().find(|&&c| c as usize >= g.order()) {
                    return Err(Error::InvalidArgument(format!("constant index {bad} out of range")));
                }
                for (i, w) in wc.words().iter().enumerate() {
                    push_word(&mut prog, w);
                    if let Some(s) = wc.slots().get(i) {
                        let c = g.pow_idx(constants[s.index as usize - 1], s.exponent);
                        prog.ops.push(Op::Fixed(c));
                    }
                }
                prog.arity = wc.arity() as usize;
            }
        }
        Ok(prog)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn eval(&self, g: &GroupTable, tuple: &[u32]) -> u32 {
        let mut acc = g.identity_index();
        for op in &self.ops {
            let x = match *op {
                Op::Var { var, table: None } => tuple[var],
                Op::Var {
                    var,
                    table: Some(t),
                } => self.powers[t][tuple[var] as usize],
                Op::Fixed(c) => c,
            };
            acc = g.mul_idx(acc, x);
        }
        acc
    }
}

pub fn tuple_count(order: usize, arity: usize) -> u128 {
    let mut t: u128 = 1;
    for _ in 0..arity {
        t = t.saturating_mul(order as u128);
    }
    t
}

pub fn check_budget(order: usize, arity: usize, budget: u128) -> Result<u128> {
    let total = tuple_count(order, arity);
    if total > budget {
        return Err(Error::BudgetExceeded {
            required: total,
            budget,
        });
    }
    Ok(total)
}

fn chunks(total: u128) -> Vec<(u128, u128)> {
    if total == 0 {
        return Vec::new();
    }
    let n = total.min(MAX_CHUNKS);
    let size = total.div_ceil(n);
    (0..n)
        .map(|c| (c * size, ((c + 1) * size).min(total)))
        .filter(|(a, b)| a < b)
        .collect()
}

fn decode(mut idx: u128, base: usize, arity: usize) -> Vec<u32> {
    let mut t = vec![0u32; arity];
    for slot in t.iter_mut().rev() {
        *slot = (idx % base as u128) as u32;
        idx /= base as u128;
    }
    t
}

#[inline]
fn advance(t: &mut [u32], base: u32) {
    for slot in t.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return;
        }
        *slot = 0;
    }
}

/// Fold `visit` over every tuple of `G^arity` and merge chunk results.
fn fold_tuples<R, I, V, M>(
    g: &GroupTable,
    arity: usize,
    opts: &EngineOptions,
    init: I,
    visit: V,
    merge: M,
) -> Result<R>
where
    R: Send,
    I: Fn() -> R + Sync + Send,
    V: Fn(&mut R, &[u32]) + Sync + Send,
    M: Fn(R, R) -> R + Sync + Send,
{
    let total = check_budget(g.order(), arity, opts.budget)?;
    let base = g.order() as u32;
    let run_chunk = |(start, end): (u128, u128)| {
        let mut acc = init();
        let mut t = decode(start, base as usize, arity);
        for _ in start..end {
            visit(&mut acc, &t);
            advance(&mut t, base);
        }
        acc
    };
    // warm the Cayley table outside the timed parallel region
    let _ = g.has_table();
    let parts = chunks(total);
    if opts.workers == 1 {
        return Ok(parts.into_iter().map(run_chunk).fold(init(), &merge));
    }
    Ok(opts.install(|| parts.into_par_iter().map(run_chunk).reduce(&init, &merge)))
}

/// Exact image of a word map.
pub fn word_image(w: &Word, g: &GroupTable, opts: &EngineOptions) -> Result<ElementSet> {
    target_image(Target::Word(w), g, opts)
}

/// Exact image of a word map with constants. With `strict`, central
/// constants are rejected.
pub fn word_image_with_constants(
    wc: &WordWithConstants,
    constants: &[u32],
    g: &GroupTable,
    opts: &EngineOptions,
    strict: bool,
) -> Result<ElementSet> {
    if strict {
        if let Some(k) = constants.iter().position(|&c| g.is_central(c)) {
            return Err(Error::CentralConstant(k + 1));
        }
    }
    target_image(Target::WithConstants(wc, constants), g, opts)
}

pub fn target_image(target: Target<'_>, g: &GroupTable, opts: &EngineOptions) -> Result<ElementSet> {
    let prog = Program::compile(target, g)?;
    let n = g.order();
    check_budget(n, prog.arity(), opts.budget)?;
    fold_tuples(
        g,
        prog.arity(),
        opts,
        || ElementSet::empty(n),
        |acc, t| acc.insert(prog.eval(g, t)),
        |mut a, b| {
            a.union_with(&b);
            a
        },
    )
}

/// Number of tuples whose value satisfies `pred` (indexed by element).
pub fn count_where(target: Target<'_>, g: &GroupTable, pred: &[bool], opts: &EngineOptions) -> Result<u128> {
    let prog = Program::compile(target, g)?;
    fold_tuples(
        g,
        prog.arity(),
        opts,
        || 0u128,
        |acc, t| {
            if pred[prog.eval(g, t) as usize] {
                *acc += 1;
            }
        },
        |a, b| a + b,
    )
}

/// `|W_w| = #{ g in G^n : w(g) = 1 }`
pub fn count_ww(w: &Word, g: &GroupTable, opts: &EngineOptions) -> Result<u128> {
    let mut pred = vec![false; g.order()];
    pred[g.identity_index() as usize] = true;
    count_where(Target::Word(w), g, &pred, opts)
}

/// `|T_w| = #{ g in SL_2(q)^n : tr w(g) = 2 }`
pub fn count_tw(w: &Word, g: &GroupTable, opts: &EngineOptions) -> Result<u128> {
    if g.kind() != GroupKind::Sl2 {
        return Err(Error::UnsupportedKind(g.kind().to_string()));
    }
    let two = g.field().from_int(2);
    let pred: Vec<bool> = (0..g.order() as u32).map(|i| g.trace(i) == two).collect();
    count_where(Target::Word(w), g, &pred, opts)
}

/// Whether some tuple evaluates outside `pred`; stops early.
pub fn exists_tuple(target: Target<'_>, g: &GroupTable, pred: &[bool], opts: &EngineOptions) -> Result<bool> {
    let prog = Program::compile(target, g)?;
    let total = check_budget(g.order(), prog.arity(), opts.budget)?;
    let base = g.order() as u32;
    let arity = prog.arity();
    let found = AtomicBool::new(false);
    let run_chunk = |(start, end): (u128, u128)| {
        let mut t = decode(start, base as usize, arity);
        for k in start..end {
            if k % 256 == 0 && found.load(Ordering::Relaxed) {
                return;
            }
            if pred[prog.eval(g, &t) as usize] {
                found.store(true, Ordering::Relaxed);
                return;
            }
            advance(&mut t, base);
        }
    };
    let parts = chunks(total);
    if opts.workers == 1 {
        for c in parts {
            run_chunk(c);
            if found.load(Ordering::Relaxed) {
                break;
            }
        }
    } else {
        opts.install(|| parts.into_par_iter().for_each(run_chunk));
    }
    Ok(found.into_inner())
}

/// Union of `w` over `samples` random tuples; a subset of the image.
///
/// Sample `i` belongs to chunk `i / 4096`, whose generator is ChaCha8 keyed
/// by `seed` on stream `chunk`, so the result only depends on the seed.
pub fn sampled_image(
    target: Target<'_>,
    g: &GroupTable,
    samples: u64,
    seed: u64,
    opts: &EngineOptions,
) -> Result<ElementSet> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }
    let prog = Program::compile(target, g)?;
    let n = g.order();
    let arity = prog.arity();
    let nchunks = samples.div_ceil(SAMPLE_CHUNK);
    let run_chunk = |c: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c);
        let count = SAMPLE_CHUNK.min(samples - c * SAMPLE_CHUNK);
        let mut acc = ElementSet::empty(n);
        let mut t = vec![0u32; arity];
        for _ in 0..count {
            for slot in t.iter_mut() {
                *slot = rng.gen_range(0..n as u32);
            }
            acc.insert(prog.eval(g, &t));
        }
        acc
    };
    let merge = |mut a: ElementSet, b: ElementSet| {
        a.union_with(&b);
        a
    };
    let _ = g.has_table();
    if opts.workers == 1 {
        return Ok((0..nchunks).map(run_chunk).fold(ElementSet::empty(n), merge));
    }
    Ok(opts.install(|| {
        (0..nchunks)
            .into_par_iter()
            .map(run_chunk)
            .reduce(|| ElementSet::empty(n), merge)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn w(text: &str) -> Word {
        parse_word(text, None).unwrap().into_word().unwrap()
    }

    #[test]
    fn chunking_covers_range() {
        for total in [1u128, 5, 1023, 1024, 1025, 100_000] {
            let cs = chunks(total);
            assert_eq!(cs[0].0, 0);
            assert_eq!(cs.last().unwrap().1, total);
            for pair in cs.windows(2) {
                assert_eq!(pair[0].1, pair[1].0);
            }
        }
        assert!(chunks(0).is_empty());
    }

    #[test]
    fn odometer_matches_decode() {
        let mut t = decode(0, 7, 3);
        for k in 0..343u128 {
            assert_eq!(t, decode(k, 7, 3));
            advance(&mut t, 7);
        }
    }

    #[test]
    fn identity_word_map_is_surjective() {
        let g = GroupTable::for_q(GroupKind::Sl2, 5).unwrap();
        let img = word_image(&w("x"), &g, &EngineOptions::default()).unwrap();
        assert!(img.is_full());
    }

    #[test]
    fn empty_word_image_is_trivial() {
        let g = GroupTable::for_q(GroupKind::Sl2, 3).unwrap();
        let img = word_image(&Word::identity(0), &g, &EngineOptions::default()).unwrap();
        assert_eq!(img.iter().collect::<Vec<_>>(), vec![g.identity_index()]);
    }

    #[test]
    fn budget_refusal() {
        let g = GroupTable::for_q(GroupKind::Sl2, 5).unwrap();
        let opts = EngineOptions {
            budget: 1000,
            ..Default::default()
        };
        let err = word_image(&w("[x,y]"), &g, &opts).unwrap_err();
        assert!(err.is_budget());
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: 14400,
                budget: 1000
            }
        );
    }

    #[test]
    fn sampled_is_reproducible_and_sound() {
        let g = GroupTable::for_q(GroupKind::Sl2, 5).unwrap();
        let word = w("[x,y^2]");
        let full = word_image(&word, &g, &EngineOptions::default()).unwrap();
        let a = sampled_image((&word).into(), &g, 10_000, 7, &EngineOptions::with_workers(1)).unwrap();
        let b = sampled_image((&word).into(), &g, 10_000, 7, &EngineOptions::with_workers(4)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_subset(&full));
        let one = sampled_image(Target::Word(&w("x")), &g, 1, 3, &EngineOptions::default()).unwrap();
        assert_eq!(one.count(), 1);
        assert!(sampled_image(Target::Word(&w("x")), &g, 0, 3, &EngineOptions::default()).is_err());
    }

    #[test]
    fn central_constants() {
        let g = GroupTable::for_q(GroupKind::Sl2, 5).unwrap();
        let wc = parse_word("x #1 x^-1", None).unwrap().into_with_constants().unwrap();
        let opts = EngineOptions::default();
        let z = g.identity_index();
        assert_eq!(
            word_image_with_constants(&wc, &[z], &g, &opts, true),
            Err(Error::CentralConstant(1))
        );
        let img = word_image_with_constants(&wc, &[z], &g, &opts, false).unwrap();
        assert_eq!(img.count(), 1);
        assert!(matches!(
            word_image_with_constants(&wc, &[], &g, &opts, false),
            Err(Error::ConstantCount { expected: 1, got: 0 })
        ));
    }
}
