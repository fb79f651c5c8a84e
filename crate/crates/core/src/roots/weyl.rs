use std::collections::{HashSet, VecDeque};

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::system::{dot4, RootSystem, RootType};
use crate::error::{Error, Result};

pub type RatMat = Vec<Vec<Ratio<i64>>>;
pub type IntMat = Vec<Vec<i64>>;

/// Default cap on the size of a Weyl group enumerated by brute force.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 100_000;

/// An element of the Weyl group, kept both as an orthogonal map of the
/// ambient space and as an integer matrix on the simple-root basis
/// (column `j` holds the coordinates of `w(alpha_j)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub ambient: RatMat,
    pub simple: IntMat,
    /// Root indices; the element is `w_{f[0]} w_{f[1]} ...`.
    pub factorization: Vec<usize>,
}

fn int_identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

fn int_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn rat_mul(a: &RatMat, b: &RatMat) -> RatMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Ratio::zero(), |s, k| s + a[i][k] * b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn int_det(m: &IntMat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Characteristic polynomial `det(tI - M)`, coefficients from `t^0` up.
pub fn char_poly(m: &IntMat) -> Vec<i128> {
    let n = m.len();
    let a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut mk = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| a[i][l] * mk[l][j]).sum::<i128>();
            }
            next[i][i] += c[n - k + 1];
        }
        mk = next;
        let tr: i128 = (0..n).map(|i| (0..n).map(|l| a[i][l] * mk[l][i]).sum::<i128>()).sum();
        c[n - k] = -tr / k as i128;
    }
    c
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        let d = rs.dim;
        WeylElement {
            ambient: (0..d)
                .map(|i| (0..d).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }).collect())
                .collect(),
            simple: int_identity(rs.rank),
            factorization: Vec::new(),
        }
    }

    /// The reflection in root `i`.
    pub fn reflection(rs: &RootSystem, i: usize) -> Self {
        let beta = rs.root(i);
        let bb = dot4(beta, beta);
        let d = rs.dim;
        let ambient = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        let id = if r == c { Ratio::one() } else { Ratio::zero() };
                        id - Ratio::new(2 * beta[r] * beta[c], bb)
                    })
                    .collect()
            })
            .collect();
        let b = rs.coefficients(i);
        let n = rs.rank;
        let mut simple = int_identity(n);
        for j in 0..n {
            let p = rs.pairing(rs.simple_roots()[j], i);
            for (k, bk) in b.iter().enumerate() {
                simple[k][j] -= p * bk;
            }
        }
        WeylElement {
            ambient,
            simple,
            factorization: vec![i],
        }
    }

    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Self {
        Self::reflection(rs, rs.simple_roots()[i])
    }

    /// `self * other`, acting by `other` first.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let mut factorization = self.factorization.clone();
        factorization.extend(&other.factorization);
        WeylElement {
            ambient: rat_mul(&self.ambient, &other.ambient),
            simple: int_mul(&self.simple, &other.simple),
            factorization,
        }
    }

    pub fn pow(&self, e: u32) -> WeylElement {
        let n = self.simple.len();
        let mut simple = int_identity(n);
        let mut ambient = self.ambient.clone();
        for (i, row) in ambient.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = if i == j { Ratio::one() } else { Ratio::zero() };
            }
        }
        let mut factorization = Vec::new();
        for _ in 0..e {
            simple = int_mul(&simple, &self.simple);
            ambient = rat_mul(&ambient, &self.ambient);
            factorization.extend(&self.factorization);
        }
        WeylElement {
            ambient,
            simple,
            factorization,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.simple == int_identity(self.simple.len())
    }

    /// Order in the Weyl group.
    pub fn order(&self) -> u32 {
        let id = int_identity(self.simple.len());
        let mut p = self.simple.clone();
        let mut k = 1;
        while p != id {
            p = int_mul(&p, &self.simple);
            k += 1;
        }
        k
    }

    /// `M^T M = I` on the ambient space.
    pub fn is_orthogonal(&self) -> bool {
        let d = self.ambient.len();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let s = (0..d).fold(Ratio::<i64>::zero(), |s, k| s + self.ambient[k][i] * self.ambient[k][j]);
                s == if i == j { Ratio::one() } else { Ratio::zero() }
            })
        })
    }

    /// Image of a doubled ambient vector, if it has half-integral entries.
    pub fn apply(&self, v: &[i64]) -> Option<Vec<i64>> {
        self.ambient
            .iter()
            .map(|row| {
                let s = row.iter().zip(v).fold(Ratio::zero(), |s, (m, &x)| s + m * x);
                s.is_integer().then(|| s.to_integer())
            })
            .collect()
    }

    /// Whether the ambient matrix maps the root set onto itself.
    pub fn permutes_roots(&self, rs: &RootSystem) -> bool {
        let mut hit = vec![false; rs.num_roots()];
        for r in rs.roots() {
            match self.apply(r).and_then(|v| rs.index_of(&v)) {
                Some(i) if !hit[i] => hit[i] = true,
                _ => return false,
            }
        }
        true
    }

    /// Whether the ambient and simple-basis matrices describe the same map.
    pub fn representations_agree(&self, rs: &RootSystem) -> bool {
        (0..rs.rank).all(|j| {
            let img = self.apply(rs.simple_root(j));
            let mut expect = vec![0i64; rs.dim];
            for k in 0..rs.rank {
                for (e, a) in expect.iter_mut().zip(rs.simple_root(k)) {
                    *e += self.simple[k][j] * a;
                }
            }
            img == Some(expect)
        })
    }

    /// `det(M - I)` on the span of the simple roots.
    pub fn det_minus_identity(&self) -> i128 {
        let mut m = self.simple.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= 1;
        }
        int_det(&m)
    }

    pub fn char_poly(&self) -> Vec<i128> {
        char_poly(&self.simple)
    }
}

/// No nonzero fixed vector on the span of the simple roots.
pub fn is_fixed_point_free(w: &WeylElement, _rs: &RootSystem) -> bool {
    w.det_minus_identity() != 0
}

/// `w_{alpha_{o_1}} w_{alpha_{o_2}} ... w_{alpha_{o_r}}` for a 1-based
/// ordering of the simple roots.
pub fn coxeter_element(rs: &RootSystem, ordering: &[usize]) -> Result<WeylElement> {
    let r = rs.rank;
    let mut seen = vec![false; r];
    for &o in ordering {
        if o == 0 || o > r || std::mem::replace(&mut seen[o - 1], true) {
            return Err(Error::InvalidArgument(format!(
                "ordering {ordering:?} is not a permutation of 1..={r}"
            )));
        }
    }
    if ordering.len() != r {
        return Err(Error::InvalidArgument(format!(
            "ordering {ordering:?} is not a permutation of 1..={r}"
        )));
    }
    Ok(ordering
        .iter()
        .fold(WeylElement::identity(rs), |w, &o| w.mul(&WeylElement::simple_reflection(rs, o - 1))))
}

pub fn standard_coxeter_element(rs: &RootSystem) -> WeylElement {
    let ordering: Vec<usize> = (1..=rs.rank).collect();
    coxeter_element(rs, &ordering).expect("identity ordering")
}

/// `w_beta w_{alpha_r} w_{alpha_{r-2}} ... w_{alpha_1}` with
/// `beta = e_1 - e_r` in type `D_r`.
pub fn d_type_cycle_element(rs: &RootSystem) -> Result<WeylElement> {
    if rs.root_type != RootType::D {
        return Err(Error::InvalidRootSystem(format!(
            "cycle element needs type D, got {}",
            rs.root_type
        )));
    }
    let r = rs.rank;
    let mut beta = vec![0; rs.dim];
    beta[0] = 2;
    beta[r - 1] = -2;
    let b = rs.index_of(&beta).expect("e1 - er is a root");
    let mut w = WeylElement::reflection(rs, b).mul(&WeylElement::simple_reflection(rs, r - 1));
    for i in (0..r - 2).rev() {
        w = w.mul(&WeylElement::simple_reflection(rs, i));
    }
    Ok(w)
}

/// Signed permutation of `{±e_1, ..., ±e_r}` induced by an element of a
/// classical Weyl group: entry `i` is `(j, sign)` with `w(e_i) = sign e_j`.
pub fn signed_permutation(w: &WeylElement) -> Option<Vec<(usize, i64)>> {
    let d = w.ambient.len();
    (0..d)
        .map(|i| {
            let col: Vec<Ratio<i64>> = (0..d).map(|k| w.ambient[k][i]).collect();
            let nz: Vec<usize> = (0..d).filter(|&k| !col[k].is_zero()).collect();
            match nz.as_slice() {
                [k] if col[*k] == Ratio::one() => Some((*k, 1)),
                [k] if col[*k] == -Ratio::one() => Some((*k, -1)),
                _ => None,
            }
        })
        .collect()
}

/// Lengths of the orbits of a signed permutation on `{±e_i}`.
pub fn signed_orbit_lengths(perm: &[(usize, i64)]) -> Vec<usize> {
    let n = perm.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for start in 0..n {
        for s in [1i64, -1] {
            if seen.contains(&(start, s)) {
                continue;
            }
            let mut cur = (start, s);
            let mut len = 0;
            while seen.insert(cur) {
                let (j, t) = perm[cur.0];
                cur = (j, t * cur.1);
                len += 1;
            }
            out.push(len);
        }
    }
    out.sort_unstable();
    out
}

/// All Weyl group elements as simple-basis matrices.
pub fn enumerate_weyl_group(rs: &RootSystem, limit: usize) -> Result<Vec<IntMat>> {
    let gens: Vec<IntMat> = (0..rs.rank)
        .map(|i| WeylElement::simple_reflection(rs, i).simple)
        .collect();
    let id = int_identity(rs.rank);
    let mut seen: HashSet<IntMat> = [id.clone()].into();
    let mut out = vec![id.clone()];
    let mut queue: VecDeque<IntMat> = [id].into();
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let x = int_mul(&w, g);
            if seen.insert(x.clone()) {
                if out.len() >= limit {
                    return Err(Error::BudgetExceeded {
                        required: out.len() as u128 + 1,
                        budget: limit as u128,
                    });
                }
                out.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    Ok(out)
}

/// Whether two elements are conjugate, by scanning the whole group.
pub fn conjugate_in_weyl_group(rs: &RootSystem, a: &WeylElement, b: &WeylElement, limit: usize) -> Result<bool> {
    let group = enumerate_weyl_group(rs, limit)?;
    Ok(group.iter().any(|g| int_mul(g, &a.simple) == int_mul(&b.simple, g)))
}

/// `-1` lies in the Weyl group, by scanning it.
pub fn minus_one_in_weyl_group(rs: &RootSystem, limit: usize) -> Result<bool> {
    let n = rs.rank;
    let minus: IntMat = (0..n).map(|i| (0..n).map(|j| -((i == j) as i64)).collect()).collect();
    Ok(enumerate_weyl_group(rs, limit)?.contains(&minus))
}

/// Whether the longest element acts as `-1`; false exactly for `A_r`
/// (`r >= 2`), `D_r` with `r` odd, and `E6`.
pub fn longest_element_is_minus_one(root_type: RootType, rank: usize) -> Result<bool> {
    root_type.check_rank(rank)?;
    Ok(match root_type {
        RootType::A => rank == 1,
        RootType::D => rank.is_multiple_of(2),
        RootType::E6 => false,
        _ => true,
    })
}

/// All orderings of `1..=r`, in lexicographic order.
pub fn orderings(r: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i + 1);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}
