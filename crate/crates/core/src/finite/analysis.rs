//! Classification of image elements, trace images, and identities with
//! constants.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::classes::ClassStructure;
use super::element_set::ElementSet;
use super::engine::{exists_tuple, target_image, EngineOptions, Target};
use super::field::Fq;
use super::group::{GroupKind, GroupTable, Mat2};
use crate::error::{Error, Result};
use crate::word::constants::{reduce_syms, ConstSlot, Sym};
use crate::word::{Letter, WordWithConstants};

/// `g != 1` and unipotent: `(g - 1)^2 = 0` for the linear kinds, a repeated
/// eigenvalue for the projective kinds. The nilpotency test is used in every
/// characteristic, where the trace test would be ambiguous at `p = 2`.
pub fn is_nontrivial_unipotent(g: &GroupTable, i: u32) -> bool {
    if i == g.identity_index() {
        return false;
    }
    let f = g.field();
    let m = g.element(i);
    if g.kind().is_projective() {
        return discriminant(g, &m) == 0;
    }
    // (g - 1)^2 with g - 1 = [[a-1, b], [c, d-1]]
    let a = f.sub(m.a, 1);
    let d = f.sub(m.d, 1);
    let n = Mat2::new(a, m.b, m.c, d);
    let sq = [
        f.add(f.mul(n.a, n.a), f.mul(n.b, n.c)),
        f.add(f.mul(n.a, n.b), f.mul(n.b, n.d)),
        f.add(f.mul(n.c, n.a), f.mul(n.d, n.c)),
        f.add(f.mul(n.c, n.b), f.mul(n.d, n.d)),
    ];
    sq.iter().all(|&e| e == 0)
}

/// `tr^2 - 4 det`.
fn discriminant(g: &GroupTable, m: &Mat2) -> Fq {
    let f = g.field();
    let mg = g.matrices();
    let t = mg.trace(m);
    f.sub(f.mul(t, t), f.mul(f.from_int(4), mg.det(m)))
}

fn is_scalar(m: &Mat2) -> bool {
    m.b == 0 && m.c == 0 && m.a == m.d
}

/// Central, or with distinct eigenvalues (diagonalizable over `F_{q^2}`).
pub fn is_semisimple(g: &GroupTable, i: u32) -> bool {
    let m = g.element(i);
    if g.kind().is_projective() {
        return i == g.identity_index() || discriminant(g, &m) != 0;
    }
    is_scalar(&m) || discriminant(g, &m) != 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageStats {
    pub size: usize,
    /// Only reported for SL_2.
    pub contains_minus_one: Option<bool>,
    pub unipotent_count: usize,
    pub nontrivial_unipotent_present: bool,
    /// (invariants of noncentral semisimple elements hit, total such invariants)
    pub semisimple_trace_coverage: Option<(usize, usize)>,
    /// (classes meeting the image, total classes)
    pub class_coverage: (usize, usize),
}

pub fn image_stats(image: &ElementSet, g: &GroupTable) -> ImageStats {
    let cs = ClassStructure::new(g);
    let classes_hit: BTreeSet<u32> = image.iter().map(|x| cs.class_of(x)).collect();
    let unipotent_count = image.iter().filter(|&x| is_nontrivial_unipotent(g, x)).count();
    let contains_minus_one = match g.kind() {
        GroupKind::Sl2 => g.minus_one().map(|m| image.contains(m)),
        _ => None,
    };
    let semisimple_trace_coverage = if g.kind() == GroupKind::Gl2 {
        None
    } else {
        let inv = |x: u32| g.class_invariant(x).expect("supported kind");
        let noncentral_ss = |x: u32| !g.is_central(x) && is_semisimple(g, x);
        let all: BTreeSet<Fq> = (0..g.order() as u32).filter(|&x| noncentral_ss(x)).map(inv).collect();
        let hit: BTreeSet<Fq> = image.iter().filter(|&x| noncentral_ss(x)).map(inv).collect();
        Some((hit.len(), all.len()))
    };
    ImageStats {
        size: image.count(),
        contains_minus_one,
        unipotent_count,
        nontrivial_unipotent_present: unipotent_count > 0,
        semisimple_trace_coverage,
        class_coverage: (classes_hit.len(), cs.len()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceImage {
    /// Trace (SL_2) or `tr^2/det` (PGL_2, PSL_2) values, sorted.
    pub values: Vec<Fq>,
    pub cardinality: usize,
    /// Number of values the invariant takes on the whole group.
    pub full_cardinality: usize,
    pub singleton: bool,
}

/// Values of the class invariant on an image.
pub fn trace_set(image: &ElementSet, g: &GroupTable) -> Result<TraceImage> {
    if g.kind() == GroupKind::Gl2 {
        return Err(Error::UnsupportedKind(g.kind().to_string()));
    }
    let values: BTreeSet<Fq> = image
        .iter()
        .map(|x| g.class_invariant(x))
        .collect::<Result<_>>()?;
    let full: BTreeSet<Fq> = (0..g.order() as u32)
        .map(|x| g.class_invariant(x))
        .collect::<Result<_>>()?;
    Ok(TraceImage {
        cardinality: values.len(),
        full_cardinality: full.len(),
        singleton: values.len() == 1,
        values: values.into_iter().collect(),
    })
}

pub fn trace_image(target: Target<'_>, g: &GroupTable, opts: &EngineOptions) -> Result<TraceImage> {
    if g.kind() == GroupKind::Gl2 {
        return Err(Error::UnsupportedKind(g.kind().to_string()));
    }
    trace_set(&target_image(target, g, opts)?, g)
}

/// Whether `w_Σ` is constantly 1 on `G^n`.
pub fn is_identity_with_constants(
    wc: &WordWithConstants,
    constants: &[u32],
    g: &GroupTable,
    opts: &EngineOptions,
) -> Result<bool> {
    let mut not_one = vec![true; g.order()];
    not_one[g.identity_index() as usize] = false;
    Ok(!exists_tuple(Target::WithConstants(wc, constants), g, &not_one, opts)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityScan {
    pub max_len: usize,
    pub arity: u32,
    /// Noncentral class representatives used as the constant.
    pub constants: Vec<u32>,
    pub words_scanned: usize,
    pub checks: usize,
    /// (word, constant index) pairs that are identities.
    pub identities: Vec<(String, u32)>,
}

/// Reduced words with one constant `#1` and at least one variable, of
/// length at most `max_len` in the letters `x_i^±1, #1^±1`.
pub fn short_words_with_constants(max_len: usize, arity: u32) -> Vec<WordWithConstants> {
    let mut alphabet = Vec::new();
    for gi in 1..=arity {
        alphabet.push(Sym::Var(Letter::new(gi, 1)));
        alphabet.push(Sym::Var(Letter::new(gi, -1)));
    }
    alphabet.push(Sym::Const(ConstSlot { index: 1, exponent: 1 }));
    alphabet.push(Sym::Const(ConstSlot { index: 1, exponent: -1 }));

    let mut out = Vec::new();
    let mut stack: Vec<Vec<Sym>> = vec![Vec::new()];
    while let Some(seq) = stack.pop() {
        let has_var = seq.iter().any(|s| matches!(s, Sym::Var(_)));
        let has_const = seq.iter().any(|s| matches!(s, Sym::Const(_)));
        if has_var && has_const {
            let reduced = reduce_syms(seq.iter().copied());
            if let Ok(wc) = WordWithConstants::from_syms(reduced, arity) {
                out.push(wc);
            }
        }
        if seq.len() == max_len {
            continue;
        }
        for &a in alphabet.iter().rev() {
            if let Some(&last) = seq.last() {
                if last == a.inverse() {
                    continue;
                }
            }
            let mut next = seq.clone();
            next.push(a);
            stack.push(next);
        }
    }
    out
}

/// Search for identities with constants among short words, using one
/// noncentral representative per conjugacy class as the constant. Words in
/// which some constant power is trivial in `G` are skipped, since they are
/// not reduced as elements of `G * F_n`.
pub fn identity_scan(g: &GroupTable, max_len: usize, arity: u32, opts: &EngineOptions) -> Result<IdentityScan> {
    let cs = ClassStructure::new(g);
    let reps: Vec<u32> = cs
        .classes()
        .iter()
        .map(|c| c.representative)
        .filter(|&r| !g.is_central(r))
        .collect();
    let words = short_words_with_constants(max_len, arity);
    let mut identities = Vec::new();
    let mut checks = 0;
    for wc in &words {
        for &r in &reps {
            if wc
                .slots()
                .iter()
                .any(|s| g.pow_idx(r, s.exponent) == g.identity_index())
            {
                continue;
            }
            checks += 1;
            if is_identity_with_constants(wc, &[r], g, opts)? {
                identities.push((wc.to_string(), r));
            }
        }
    }
    Ok(IdentityScan {
        max_len,
        arity,
        constants: reps,
        words_scanned: words.len(),
        checks,
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::engine::word_image;
    use crate::word::parse_word;

    #[test]
    fn unipotent_classification_char2() {
        let g = GroupTable::for_q(GroupKind::Sl2, 4).unwrap();
        // q^2 - 1 nontrivial unipotents in SL_2(q)
        let count = (0..g.order() as u32).filter(|&i| is_nontrivial_unipotent(&g, i)).count();
        assert_eq!(count, 15);
    }

    #[test]
    fn unipotent_counts_odd() {
        for q in [3u64, 5, 7, 9] {
            let g = GroupTable::for_q(GroupKind::Sl2, q).unwrap();
            let count = (0..g.order() as u32).filter(|&i| is_nontrivial_unipotent(&g, i)).count();
            assert_eq!(count as u64, q * q - 1);
            let pg = GroupTable::for_q(GroupKind::Pgl2, q).unwrap();
            let count = (0..pg.order() as u32).filter(|&i| is_nontrivial_unipotent(&pg, i)).count();
            assert_eq!(count as u64, q * q - 1);
        }
    }

    #[test]
    fn stats_of_trivial_image() {
        let g = GroupTable::for_q(GroupKind::Sl2, 5).unwrap();
        let img = ElementSet::from_indices(g.order(), [g.identity_index()]);
        let s = image_stats(&img, &g);
        assert_eq!(s.unipotent_count, 0);
        assert_eq!(s.contains_minus_one, Some(false));
        assert_eq!(s.class_coverage, (1, 9));
    }

    #[test]
    fn conjugation_word_has_constant_trace() {
        let g = GroupTable::for_q(GroupKind::Sl2, 5).unwrap();
        let wc = parse_word("x #1 x^-1", None).unwrap().into_with_constants().unwrap();
        for sigma in [3u32, 17, 50] {
            let t = trace_image(Target::WithConstants(&wc, &[sigma]), &g, &EngineOptions::default()).unwrap();
            assert!(t.singleton);
            assert_eq!(t.values, vec![g.trace(sigma)]);
        }
    }

    #[test]
    fn gl2_trace_image_unsupported() {
        let g = GroupTable::for_q(GroupKind::Gl2, 3).unwrap();
        let w = parse_word("x", None).unwrap().into_word().unwrap();
        assert!(trace_image(Target::Word(&w), &g, &EngineOptions::default()).is_err());
    }

    #[test]
    fn exponent_identity() {
        let g = GroupTable::for_q(GroupKind::Sl2, 3).unwrap();
        let text = format!("x^{n} #1 x^-{n} #1^-1", n = g.order());
        let wc = parse_word(&text, None).unwrap().into_with_constants().unwrap();
        for sigma in 0..g.order() as u32 {
            assert!(is_identity_with_constants(&wc, &[sigma], &g, &EngineOptions::default()).unwrap());
        }
    }

    #[test]
    fn commutator_with_constant_is_not_identity() {
        let g = GroupTable::for_q(GroupKind::Sl2, 5).unwrap();
        let wc = parse_word("x #1 x^-1 #1^-1", None).unwrap().into_with_constants().unwrap();
        let sigma = (0..g.order() as u32).find(|&s| !g.is_central(s)).unwrap();
        assert!(!is_identity_with_constants(&wc, &[sigma], &g, &EngineOptions::default()).unwrap());
    }

    #[test]
    fn short_word_enumeration() {
        let words = short_words_with_constants(2, 1);
        // x#, x#^-1, x^-1#, x^-1#^-1 and the reverses
        assert_eq!(words.len(), 8);
        assert!(words.iter().all(|w| w.num_constants() == 1));
    }

    #[test]
    fn stats_flags_unipotents() {
        let g = GroupTable::for_q(GroupKind::Sl2, 5).unwrap();
        let w = parse_word("x^5", None).unwrap().into_word().unwrap();
        let img = word_image(&w, &g, &EngineOptions::default()).unwrap();
        let s = image_stats(&img, &g);
        // in characteristic 5 the fifth power kills unipotents
        assert_eq!(s.unipotent_count, 0);
    }
}
