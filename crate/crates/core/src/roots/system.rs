use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Cartan type of an irreducible root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl RootType {
    pub fn is_classical(self) -> bool {
        matches!(self, RootType::A | RootType::B | RootType::C | RootType::D)
    }

    /// Rank of an exceptional type.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            RootType::E6 => Some(6),
            RootType::E7 => Some(7),
            RootType::E8 => Some(8),
            RootType::F4 => Some(4),
            RootType::G2 => Some(2),
            _ => None,
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            RootType::A => 1,
            RootType::B | RootType::C => 2,
            RootType::D => 3,
            t => t.fixed_rank().expect("exceptional"),
        }
    }

    pub fn check_rank(self, rank: usize) -> Result<()> {
        let ok = match self.fixed_rank() {
            Some(r) => rank == r,
            None => rank >= self.min_rank(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRootSystem(format!("rank {rank} is not valid for type {self}")))
        }
    }

    /// Parse labels such as `B`, `E8`, or `D4` (family plus rank).
    pub fn parse_with_rank(label: &str) -> Result<(RootType, Option<usize>)> {
        let label = label.trim();
        if let Ok(t) = label.parse::<RootType>() {
            return Ok((t, t.fixed_rank()));
        }
        let (head, tail) = label.split_at(label.chars().next().map_or(0, |c| c.len_utf8()));
        let rank: usize = tail
            .parse()
            .map_err(|_| Error::InvalidRootSystem(format!("unknown root system type {label:?}")))?;
        let t = match head.to_ascii_uppercase().as_str() {
            "A" => RootType::A,
            "B" => RootType::B,
            "C" => RootType::C,
            "D" => RootType::D,
            "E" | "F" | "G" => format!("{head}{tail}").to_ascii_uppercase().parse()?,
            _ => return Err(Error::InvalidRootSystem(format!("unknown root system type {label:?}"))),
        };
        Ok((t, Some(rank)))
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => RootType::A,
            "B" => RootType::B,
            "C" => RootType::C,
            "D" => RootType::D,
            "E6" => RootType::E6,
            "E7" => RootType::E7,
            "E8" => RootType::E8,
            "F4" => RootType::F4,
            "G2" => RootType::G2,
            other => return Err(Error::InvalidRootSystem(format!("unknown root system type {other:?}"))),
        })
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::D => "D",
            RootType::E6 => "E6",
            RootType::E7 => "E7",
            RootType::E8 => "E8",
            RootType::F4 => "F4",
            RootType::G2 => "G2",
        };
        f.write_str(s)
    }
}

/// A vector in the ambient space, stored as twice its coordinates.
pub type Doubled = Vec<i64>;

/// Dot product of two doubled vectors, i.e. four times the true value.
pub fn dot4(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// An irreducible root system in the Bourbaki coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub root_type: RootType,
    pub rank: usize,
    pub dim: usize,
    /// All roots, positive roots first, in doubled coordinates.
    roots: Vec<Doubled>,
    /// Coefficients of each root in the simple roots.
    coeffs: Vec<Vec<i64>>,
    simple: Vec<usize>,
    num_positive: usize,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`
    cartan: Vec<Vec<i64>>,
    index: HashMap<Doubled, usize>,
}

fn unit(dim: usize, i: usize, scale: i64) -> Doubled {
    let mut v = vec![0; dim];
    v[i] = scale;
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Doubled {
    let mut v = vec![0; dim];
    v[i] = 2;
    v[j] = -2;
    v
}

fn simple_roots(t: RootType, r: usize) -> (usize, Vec<Doubled>) {
    match t {
        RootType::A => (r + 1, (0..r).map(|i| diff(r + 1, i, i + 1)).collect()),
        RootType::B | RootType::C | RootType::D => {
            let mut s: Vec<Doubled> = (0..r - 1).map(|i| diff(r, i, i + 1)).collect();
            s.push(match t {
                RootType::B => unit(r, r - 1, 2),
                RootType::C => unit(r, r - 1, 4),
                _ => {
                    let mut v = vec![0; r];
                    v[r - 2] = 2;
                    v[r - 1] = 2;
                    v
                }
            });
            (r, s)
        }
        RootType::G2 => (3, vec![vec![2, -2, 0], vec![-4, 2, 2]]),
        RootType::F4 => (
            4,
            vec![
                vec![0, 2, -2, 0],
                vec![0, 0, 2, -2],
                vec![0, 0, 0, 2],
                vec![1, -1, -1, -1],
            ],
        ),
        RootType::E6 | RootType::E7 | RootType::E8 => {
            let mut s = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], {
                let mut v = vec![0; 8];
                v[0] = 2;
                v[1] = 2;
                v
            }];
            for i in 0..6 {
                s.push(diff(8, i + 1, i));
            }
            s.truncate(r);
            (8, s)
        }
    }
}

pub fn build_root_system(root_type: RootType, rank: usize) -> Result<RootSystem> {
    root_type.check_rank(rank)?;
    let (dim, simple_vecs) = simple_roots(root_type, rank);
    let cartan: Vec<Vec<i64>> = simple_vecs
        .iter()
        .map(|a| {
            simple_vecs
                .iter()
                .map(|b| 2 * dot4(a, b) / dot4(b, b))
                .collect()
        })
        .collect();

    // Close the simple roots under the simple reflections, staying positive.
    let mut positive: Vec<Vec<i64>> = (0..rank).map(|i| unit(rank, i, 1)).collect();
    let mut seen: std::collections::HashSet<Vec<i64>> = positive.iter().cloned().collect();
    let mut k = 0;
    while k < positive.len() {
        let beta = positive[k].clone();
        for i in 0..rank {
            let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[j][i]).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if img.iter().all(|&c| c >= 0) && img.iter().any(|&c| c > 0) && seen.insert(img.clone()) {
                positive.push(img);
            }
        }
        k += 1;
    }
    positive.sort_by_key(|c| (c.iter().sum::<i64>(), std::cmp::Reverse(c.clone())));

    let num_positive = positive.len();
    let mut coeffs = positive.clone();
    coeffs.extend(positive.iter().map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()));
    let roots: Vec<Doubled> = coeffs
        .iter()
        .map(|c| {
            let mut v = vec![0; dim];
            for (ci, a) in c.iter().zip(&simple_vecs) {
                for (vk, ak) in v.iter_mut().zip(a) {
                    *vk += ci * ak;
                }
            }
            v
        })
        .collect();
    let index: HashMap<Doubled, usize> = roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let simple = simple_vecs.iter().map(|v| index[v]).collect();
    Ok(RootSystem {
        root_type,
        rank,
        dim,
        roots,
        coeffs,
        simple,
        num_positive,
        cartan,
        index,
    })
}

impl RootSystem {
    pub fn roots(&self) -> &[Doubled] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Indices of `alpha_1, ..., alpha_r`.
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.roots[self.simple[i]]
    }

    pub fn positive_roots(&self) -> std::ops::Range<usize> {
        0..self.num_positive
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive
    }

    pub fn coefficients(&self, i: usize) -> &[i64] {
        &self.coeffs[i]
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// `2 (a, b) / (b, b)` for roots `a`, `b`.
    pub fn pairing(&self, a: usize, b: usize) -> i64 {
        let (a, b) = (&self.roots[a], &self.roots[b]);
        2 * dot4(a, b) / dot4(b, b)
    }

    /// Root coordinates as reduced fractions `[num, den]`.
    pub fn root_fractions(&self, i: usize) -> Vec<[i64; 2]> {
        self.roots[i]
            .iter()
            .map(|&x| {
                let g = x.gcd(&2);
                [x / g, 2 / g]
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let roots: Vec<Value> = (0..self.num_roots()).map(|i| json!(self.root_fractions(i))).collect();
        json!({
            "type": self.root_type.to_string(),
            "rank": self.rank,
            "dim": self.dim,
            "roots": roots,
            "simple_roots": self.simple,
            "positive_roots": self.positive_roots().collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(build_root_system(RootType::A, 1).unwrap().num_roots(), 2);
        assert_eq!(build_root_system(RootType::B, 3).unwrap().num_roots(), 18);
        assert_eq!(build_root_system(RootType::D, 4).unwrap().num_roots(), 24);
    }

    #[test]
    fn invalid_ranks() {
        assert!(build_root_system(RootType::B, 1).is_err());
        assert!(build_root_system(RootType::D, 2).is_err());
        assert!(build_root_system(RootType::E6, 7).is_err());
        assert!(build_root_system(RootType::A, 0).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(RootType::parse_with_rank("D4").unwrap(), (RootType::D, Some(4)));
        assert_eq!(RootType::parse_with_rank("e8").unwrap(), (RootType::E8, Some(8)));
        assert_eq!(RootType::parse_with_rank("B").unwrap(), (RootType::B, None));
        assert!(RootType::parse_with_rank("H3").is_err());
    }

    #[test]
    fn json_fractions() {
        let e8 = build_root_system(RootType::E8, 8).unwrap();
        let a1 = e8.simple_roots()[0];
        assert_eq!(e8.root_fractions(a1)[0], [1, 2]);
        let v = e8.to_json();
        assert_eq!(v["roots"].as_array().unwrap().len(), 240);
    }
}
