//! Fully enumerated matrix groups `SL_2(q)`, `GL_2(q)`, `PGL_2(q)` and
//! `PSL_2(q)` with dense element indexing.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{Field, FieldSpec, Fq};
use crate::error::{Error, Result};
use crate::word::Group;

/// Default cap on `|G|` for enumeration.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 22;
/// Groups up to this order get a full Cayley table.
pub const DEFAULT_TABLE_MAX_ORDER: usize = 3000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Sl2,
    Gl2,
    Pgl2,
    /// The image of `SL_2` in `PGL_2`.
    Psl2,
}

impl GroupKind {
    pub fn is_projective(self) -> bool {
        matches!(self, GroupKind::Pgl2 | GroupKind::Psl2)
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Sl2 => "sl2",
            GroupKind::Gl2 => "gl2",
            GroupKind::Pgl2 => "pgl2",
            GroupKind::Psl2 => "psl2",
        }
    }

    /// `|G|` for `F_q`.
    pub fn order_formula(self, q: u64) -> u64 {
        match self {
            GroupKind::Sl2 | GroupKind::Pgl2 => q * (q * q - 1),
            GroupKind::Gl2 => (q * q - 1) * (q * q - q),
            GroupKind::Psl2 => q * (q * q - 1) / if q.is_multiple_of(2) { 1 } else { 2 },
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl2" => Ok(GroupKind::Sl2),
            "gl2" => Ok(GroupKind::Gl2),
            "pgl2" => Ok(GroupKind::Pgl2),
            "psl2" => Ok(GroupKind::Psl2),
            other => Err(Error::InvalidArgument(format!("unknown group kind {other}"))),
        }
    }
}

/// `[[a, b], [c, d]]` over `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: Fq,
    pub b: Fq,
    pub c: Fq,
    pub d: Fq,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: Fq, b: Fq, c: Fq, d: Fq) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn entries(&self) -> [Fq; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Base-`q` packing of the four entries.
    pub fn code(&self, q: u32) -> u64 {
        let q = q as u64;
        self.a as u64 + q * (self.b as u64 + q * (self.c as u64 + q * self.d as u64))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Plain `GL_2(F_q)` matrix arithmetic, without indexing.
#[derive(Debug, Clone, Copy)]
pub struct MatrixGroup<'a>(pub &'a Field);

impl MatrixGroup<'_> {
    pub fn det(&self, m: &Mat2) -> Fq {
        let f = self.0;
        f.sub(f.mul(m.a, m.d), f.mul(m.b, m.c))
    }

    pub fn trace(&self, m: &Mat2) -> Fq {
        self.0.add(m.a, m.d)
    }

    pub fn scale(&self, m: &Mat2, s: Fq) -> Mat2 {
        let f = self.0;
        Mat2::new(f.mul(m.a, s), f.mul(m.b, s), f.mul(m.c, s), f.mul(m.d, s))
    }
}

impl Group for MatrixGroup<'_> {
    type Elem = Mat2;

    fn identity(&self) -> Mat2 {
        Mat2::IDENTITY
    }

    fn mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let f = self.0;
        Mat2::new(
            f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)),
            f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
            f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)),
            f.add(f.mul(x.c, y.b), f.mul(x.d, y.d)),
        )
    }

    fn inv(&self, x: &Mat2) -> Mat2 {
        let f = self.0;
        let di = f.inv(self.det(x));
        Mat2::new(
            f.mul(x.d, di),
            f.mul(f.neg(x.b), di),
            f.mul(f.neg(x.c), di),
            f.mul(x.a, di),
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GroupOptions {
    pub max_order: u64,
    pub table_max_order: usize,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            max_order: DEFAULT_MAX_ORDER,
            table_max_order: DEFAULT_TABLE_MAX_ORDER,
        }
    }
}

#[derive(Debug)]
enum Lookup {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

const DENSE_CODE_LIMIT: u64 = 1 << 24;

/// A finite matrix group with elements indexed `0..order` in increasing
/// order of their packed codes.
#[derive(Debug)]
pub struct GroupTable {
    kind: GroupKind,
    field: Field,
    elements: Vec<Mat2>,
    lookup: Lookup,
    identity: u32,
    inverses: Vec<u32>,
    center: Vec<u32>,
    table_max_order: usize,
    table: OnceLock<Option<Vec<u32>>>,
}

impl GroupTable {
    pub fn build(kind: GroupKind, spec: FieldSpec) -> Result<Self> {
        Self::build_with(kind, spec, GroupOptions::default())
    }

    /// Convenience for the default modulus.
    pub fn for_q(kind: GroupKind, q: u64) -> Result<Self> {
        Self::build(kind, FieldSpec::for_q(q)?)
    }

    pub fn build_with(kind: GroupKind, spec: FieldSpec, opts: GroupOptions) -> Result<Self> {
        let q = spec.q() as u64;
        let expected = kind.order_formula(q);
        if expected > opts.max_order {
            return Err(Error::Field(format!(
                "|{kind}({q})| = {expected} exceeds the enumeration bound {}",
                opts.max_order
            )));
        }
        let field = Field::new(spec);
        let mut elements = enumerate(kind, &field);
        elements.sort_by_key(|m| m.code(field.q()));
        elements.dedup();
        assert_eq!(elements.len() as u64, expected, "enumeration of {kind}({q})");

        let codes = q.pow(4);
        let lookup = if codes <= DENSE_CODE_LIMIT {
            let mut v = vec![u32::MAX; codes as usize];
            for (i, m) in elements.iter().enumerate() {
                v[m.code(field.q()) as usize] = i as u32;
            }
            Lookup::Dense(v)
        } else {
            Lookup::Sparse(
                elements
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (m.code(field.q()), i as u32))
                    .collect(),
            )
        };

        let mut g = GroupTable {
            kind,
            field,
            elements,
            lookup,
            identity: 0,
            inverses: Vec::new(),
            center: Vec::new(),
            table_max_order: opts.table_max_order,
            table: OnceLock::new(),
        };
        g.identity = g.index_of(&Mat2::IDENTITY).expect("identity is an element");
        let mg = MatrixGroup(&g.field);
        g.inverses = g
            .elements
            .iter()
            .map(|m| g.index_of(&mg.inv(m)).expect("closed under inverses"))
            .collect();
        g.center = if kind.is_projective() {
            vec![g.identity]
        } else {
            (0..g.order() as u32)
                .filter(|&i| {
                    let m = &g.elements[i as usize];
                    m.b == 0 && m.c == 0 && m.a == m.d
                })
                .collect()
        };
        Ok(g)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    pub fn center(&self) -> &[u32] {
        &self.center
    }

    pub fn is_central(&self, i: u32) -> bool {
        self.center.contains(&i)
    }

    pub fn element(&self, i: u32) -> Mat2 {
        self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn matrices(&self) -> MatrixGroup<'_> {
        MatrixGroup(&self.field)
    }

    /// Scale so the first nonzero entry (row-major) is 1; identity for
    /// linear kinds.
    pub fn canonical(&self, m: &Mat2) -> Mat2 {
        if !self.kind.is_projective() {
            return *m;
        }
        let lead = m.entries().into_iter().find(|&e| e != 0).expect("invertible matrix");
        self.matrices().scale(m, self.field.inv(lead))
    }

    /// Dense index of a matrix, after canonicalizing projective cosets.
    pub fn index_of(&self, m: &Mat2) -> Option<u32> {
        let c = self.canonical(m);
        let q = self.field.q();
        if c.entries().iter().any(|&e| e >= q) {
            return None;
        }
        let code = c.code(q);
        match &self.lookup {
            Lookup::Dense(v) => v.get(code as usize).copied().filter(|&i| i != u32::MAX),
            Lookup::Sparse(h) => h.get(&code).copied(),
        }
    }

    pub fn has_table(&self) -> bool {
        self.table().is_some()
    }

    fn table(&self) -> Option<&Vec<u32>> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                if n > self.table_max_order {
                    return None;
                }
                let mut t = vec![0u32; n * n];
                t.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
                    for (j, slot) in row.iter_mut().enumerate() {
                        *slot = self.mul_slow(i as u32, j as u32);
                    }
                });
                Some(t)
            })
            .as_ref()
    }

    fn mul_slow(&self, i: u32, j: u32) -> u32 {
        let m = self
            .matrices()
            .mul(&self.elements[i as usize], &self.elements[j as usize]);
        self.index_of(&m).expect("closed under multiplication")
    }

    #[inline]
    pub fn mul_idx(&self, i: u32, j: u32) -> u32 {
        match self.table() {
            Some(t) => t[i as usize * self.order() + j as usize],
            None => self.mul_slow(i, j),
        }
    }

    #[inline]
    pub fn inv_idx(&self, i: u32) -> u32 {
        self.inverses[i as usize]
    }

    pub fn pow_idx(&self, i: u32, e: i64) -> u32 {
        Group::pow(self, &i, e)
    }

    /// `i^e` for every element.
    pub fn power_map(&self, e: i64) -> Vec<u32> {
        (0..self.order() as u32)
            .into_par_iter()
            .map(|i| self.pow_idx(i, e))
            .collect()
    }

    pub fn trace(&self, i: u32) -> Fq {
        self.matrices().trace(&self.elements[i as usize])
    }

    pub fn det(&self, i: u32) -> Fq {
        self.matrices().det(&self.elements[i as usize])
    }

    /// `tr^2 / det`, a class function on the projective kinds.
    pub fn projective_invariant(&self, i: u32) -> Fq {
        let t = self.trace(i);
        self.field.div(self.field.mul(t, t), self.det(i))
    }

    /// Trace for SL_2, `tr^2/det` for the projective kinds.
    pub fn class_invariant(&self, i: u32) -> Result<Fq> {
        match self.kind {
            GroupKind::Sl2 => Ok(self.trace(i)),
            GroupKind::Pgl2 | GroupKind::Psl2 => Ok(self.projective_invariant(i)),
            GroupKind::Gl2 => Err(Error::UnsupportedKind(self.kind.to_string())),
        }
    }

    /// Index of `-1` in SL_2 (equal to the identity in characteristic 2).
    pub fn minus_one(&self) -> Option<u32> {
        let f = &self.field;
        let m1 = f.neg(1);
        self.index_of(&Mat2::new(m1, 0, 0, m1))
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.kind, self.q())
    }
}

impl Group for GroupTable {
    type Elem = u32;

    fn identity(&self) -> u32 {
        self.identity
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_idx(*a, *b)
    }

    fn inv(&self, a: &u32) -> u32 {
        self.inv_idx(*a)
    }
}

fn enumerate(kind: GroupKind, f: &Field) -> Vec<Mat2> {
    let q = f.q();
    let mut out = Vec::new();
    match kind {
        GroupKind::Sl2 => {
            for a in 0..q {
                for b in 0..q {
                    if a != 0 {
                        for c in 0..q {
                            let d = f.div(f.add(1, f.mul(b, c)), a);
                            out.push(Mat2::new(a, b, c, d));
                        }
                    } else if b != 0 {
                        let c = f.neg(f.inv(b));
                        for d in 0..q {
                            out.push(Mat2::new(a, b, c, d));
                        }
                    }
                }
            }
        }
        GroupKind::Gl2 => {
            let mg = MatrixGroup(f);
            for a in 0..q {
                for b in 0..q {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    for c in 0..q {
                        for d in 0..q {
                            let m = Mat2::new(a, b, c, d);
                            if mg.det(&m) != 0 {
                                out.push(m);
                            }
                        }
                    }
                }
            }
        }
        GroupKind::Pgl2 => {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        if f.sub(d, f.mul(b, c)) != 0 {
                            out.push(Mat2::new(1, b, c, d));
                        }
                    }
                }
            }
            for c in 1..q {
                for d in 0..q {
                    out.push(Mat2::new(0, 1, c, d));
                }
            }
        }
        GroupKind::Psl2 => {
            let mg = MatrixGroup(f);
            for m in enumerate(GroupKind::Sl2, f) {
                let lead = m.entries().into_iter().find(|&e| e != 0).expect("invertible");
                out.push(mg.scale(&m, f.inv(lead)));
            }
        }
    }
    out
}
