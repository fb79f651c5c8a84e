use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use wordmap::finite::{FieldSpec, GroupKind, GroupTable, Mat2, DEFAULT_BUDGET};
use wordmap::finite::field::prime_power;
use wordmap::symbolic::IntMat2;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// One experiment: the command plus every parameter it may use. The same
/// structure is read from the command line and from batch files.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,

    /// Word, e.g. "[x,y]^2", "x1 x2^-1" or "x #1 x^-1 #1^-1".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,

    /// Group kind: sl2, gl2, pgl2 or psl2.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,

    /// Field size, a prime power.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,

    /// Monic field modulus as coefficients c0,c1,...,ck.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,

    /// Matrix literals "a,b;c,d" (rows separated by ';'). Several matrices
    /// may be given in one literal or by repeating the flag.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub constants: Vec<String>,

    /// Conjugacy class ids whose representatives are used as constants.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<u32>,

    /// Accept central constants.
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub allow_central: bool,

    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,

    /// Sweep m = 1..=m_max.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u64>,

    /// Root system type: A, B, C, D, E6, E7, E8, F4, G2.
    #[arg(long = "type")]
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub root_type: Option<String>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,

    /// simply_connected, adjoint, or a center order such as z=2.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isogeny: Option<String>,

    /// Characteristic exponent: 1 or a prime.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,

    /// 1-based ordering of the simple roots.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,

    /// Sweep every ordering of the simple roots.
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub all_orderings: bool,

    /// Include the root list in the report.
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub dump_roots: bool,

    /// Weights of the module, e.g. 5,3,1,-1,-3,-5.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,

    /// Use the irreducible SL_2 module of this highest weight.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub highest_weight: Option<u32>,

    /// Order of g.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_order: Option<u64>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arity: Option<u32>,

    /// Sample this many random tuples instead of enumerating.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,

    /// Maximum number of tuples to enumerate.
    #[arg(long, env = "WORDMAP_BUDGET")]
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "integral_budget")]
    pub budget: Option<f64>,

    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,

    /// Add wall-clock timing to the report.
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub timing: bool,
}

fn integral_budget<S: serde::Serializer>(b: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match b {
        Some(x) if x.fract() == 0.0 && *x <= u64::MAX as f64 => s.serialize_u64(*x as u64),
        Some(x) => s.serialize_f64(*x),
        None => s.serialize_none(),
    }
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

impl ExperimentConfig {
    pub fn require_word(&self) -> Result<&str, CliError> {
        self.word.as_deref().ok_or_else(|| input("--word is required"))
    }

    pub fn budget(&self) -> Result<u128, CliError> {
        let b = match self.budget {
            Some(b) => b,
            None => match std::env::var("WORDMAP_BUDGET") {
                Ok(s) => s.trim().parse().map_err(|_| input(format!("invalid WORDMAP_BUDGET {s:?}")))?,
                Err(_) => return Ok(DEFAULT_BUDGET),
            },
        };
        if !(b.is_finite() && b >= 1.0) {
            return Err(input(format!("budget must be a positive number, got {b}")));
        }
        Ok(b as u128)
    }

    pub fn workers(&self) -> usize {
        self.workers
            .filter(|&w| w > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    /// Fill defaults that affect results so the echoed config is complete.
    pub fn normalized(&self, command: &str) -> Result<ExperimentConfig, CliError> {
        let mut c = self.clone();
        c.command = Some(command.to_string());
        c.budget = Some(self.budget()? as f64);
        c.workers = Some(self.workers());
        c.out = None;
        c.format = None;
        Ok(c)
    }

    pub fn group_kind(&self) -> Result<GroupKind, CliError> {
        Ok(self.group.as_deref().unwrap_or("sl2").parse()?)
    }

    pub fn group(&self) -> Result<GroupTable, CliError> {
        let kind = self.group_kind()?;
        let q = self.q.ok_or_else(|| input("--q is required"))?;
        let (p, k) = prime_power(q).ok_or_else(|| input(format!("q = {q} is not a prime power")))?;
        let spec = FieldSpec::new(p, k, self.modulus.clone())?;
        Ok(GroupTable::build(kind, spec)?)
    }

    pub fn need_rank(&self, t: wordmap::RootType) -> Result<usize, CliError> {
        match (self.rank, t.fixed_rank()) {
            (Some(r), _) => Ok(r),
            (None, Some(r)) => Ok(r),
            (None, None) => Err(input(format!("--rank is required for type {t}"))),
        }
    }
}

/// Split matrix literals into 2x2 integer matrices.
pub fn parse_matrix_literals(literals: &[String]) -> Result<Vec<[i64; 4]>, CliError> {
    let mut out = Vec::new();
    for lit in literals {
        let rows: Vec<Vec<i64>> = lit
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| e.trim().parse::<i64>().map_err(|_| input(format!("bad matrix entry {e:?} in {lit:?}"))))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        if !rows.len().is_multiple_of(2) || rows.iter().any(|r| r.len() != 2) {
            return Err(input(format!(
                "matrix literal {lit:?} must consist of 2x2 blocks \"a,b;c,d\""
            )));
        }
        for pair in rows.chunks(2) {
            out.push([pair[0][0], pair[0][1], pair[1][0], pair[1][1]]);
        }
    }
    Ok(out)
}

pub fn integer_constants(literals: &[String]) -> Result<Vec<IntMat2>, CliError> {
    parse_matrix_literals(literals)
}

/// Map an integer literal to a field element: codes `0..q` are taken as
/// is, negative integers are reduced into the prime field.
fn field_entry(g: &GroupTable, n: i64) -> Result<u32, CliError> {
    let q = g.q() as i64;
    if (0..q).contains(&n) {
        Ok(n as u32)
    } else if n < 0 {
        Ok(g.field().from_int(n))
    } else {
        Err(input(format!("matrix entry {n} is not a code below q = {q}")))
    }
}

/// Constant elements of `g` from matrix literals followed by class ids.
pub fn group_constants(
    cfg: &ExperimentConfig,
    g: &GroupTable,
    classes: &wordmap::finite::ClassStructure<'_>,
) -> Result<Vec<u32>, CliError> {
    let mut out = Vec::new();
    for m in parse_matrix_literals(&cfg.constants)? {
        let mat = Mat2::new(
            field_entry(g, m[0])?,
            field_entry(g, m[1])?,
            field_entry(g, m[2])?,
            field_entry(g, m[3])?,
        );
        if g.matrices().det(&mat) == 0 {
            return Err(input(format!("constant {m:?} is singular")));
        }
        let canon = if g.kind().is_projective() { g.canonical(&mat) } else { mat };
        let idx = g
            .index_of(&canon)
            .ok_or_else(|| input(format!("constant {m:?} is not in {}", g.label())))?;
        out.push(idx);
    }
    for &c in &cfg.classes {
        let class = classes
            .classes()
            .get(c as usize)
            .ok_or_else(|| input(format!("class id {c} out of range 0..{}", classes.len())))?;
        out.push(class.representative);
    }
    Ok(out)
}
