//! Conjugacy classes and products of normal subsets.
//!
//! A normal subset is a union of classes, so it is stored as a set of class
//! ids. `C_i C_j` is computed from one representative of `C_i` times every
//! member of `C_j`, which is enough because the product is again normal.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::element_set::ElementSet;
use super::engine::{word_image, EngineOptions};
use super::group::GroupTable;
use crate::error::{Error, Result};
use crate::word::{Family, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    /// Smallest member index.
    pub representative: u32,
    pub members: ElementSet,
    pub size: usize,
}

/// The class decomposition of a group together with lazily tabulated class
/// products.
#[derive(Debug)]
pub struct ClassStructure<'g> {
    group: &'g GroupTable,
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    products: std::sync::Mutex<HashMap<(u32, u32), Vec<u32>>>,
}

pub fn conjugacy_classes(g: &GroupTable) -> Vec<ConjClass> {
    ClassStructure::new(g).classes
}

impl<'g> ClassStructure<'g> {
    pub fn new(g: &'g GroupTable) -> Self {
        let n = g.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let orbit: Vec<u32> = (0..n as u32)
                .into_par_iter()
                .map(|h| g.mul_idx(g.mul_idx(h, x), g.inv_idx(h)))
                .collect();
            let mut members = ElementSet::empty(n);
            for y in orbit {
                members.insert(y);
                class_of[y as usize] = id;
            }
            let size = members.count();
            classes.push(ConjClass {
                representative: x,
                members,
                size,
            });
        }
        ClassStructure {
            group: g,
            classes,
            class_of,
            products: Default::default(),
        }
    }

    pub fn group(&self) -> &GroupTable {
        self.group
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: u32) -> u32 {
        self.class_of[x as usize]
    }

    pub fn identity_class(&self) -> u32 {
        self.class_of(self.group.identity_index())
    }

    /// Ids of the classes other than `{1}`.
    pub fn nontrivial(&self) -> Vec<u32> {
        let e = self.identity_class();
        (0..self.len() as u32).filter(|&c| c != e).collect()
    }

    /// Classes occurring in `C_i C_j`.
    pub fn class_product(&self, i: u32, j: u32) -> Vec<u32> {
        let key = if i <= j { (i, j) } else { (j, i) };
        if let Some(v) = self.products.lock().expect("lock").get(&key) {
            return v.clone();
        }
        let g = self.group;
        let r = self.classes[key.0 as usize].representative;
        let set: BTreeSet<u32> = self.classes[key.1 as usize]
            .members
            .iter()
            .map(|c| self.class_of(g.mul_idx(r, c)))
            .collect();
        let v: Vec<u32> = set.into_iter().collect();
        self.products.lock().expect("lock").insert(key, v.clone());
        v
    }

    /// Product of two normal subsets given by class ids.
    pub fn product(&self, a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for &i in a {
            for &j in b {
                out.extend(self.class_product(i, j));
            }
        }
        out
    }

    pub fn is_everything(&self, s: &BTreeSet<u32>) -> bool {
        s.len() == self.len()
    }

    pub fn to_element_set(&self, s: &BTreeSet<u32>) -> ElementSet {
        let mut out = ElementSet::empty(self.group.order());
        for &c in s {
            out.union_with(&self.classes[c as usize].members);
        }
        out
    }

    /// Class ids of a normal subset; `None` if `s` is not a union of classes.
    pub fn from_element_set(&self, s: &ElementSet) -> Option<BTreeSet<u32>> {
        let ids: BTreeSet<u32> = s.iter().map(|x| self.class_of(x)).collect();
        let total: usize = ids.iter().map(|&c| self.classes[c as usize].size).sum();
        (total == s.count()).then_some(ids)
    }

    /// Whether `C_1 C_2 ... C_m = G`.
    pub fn covers(&self, class_ids: &[u32]) -> Result<bool> {
        let (first, rest) = class_ids
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("empty class list".into()))?;
        let mut acc: BTreeSet<u32> = [*first].into();
        for &c in rest {
            acc = self.product(&acc, &[c].into());
        }
        Ok(self.is_everything(&acc))
    }

    /// Classes `C` with `C^2 = G`.
    pub fn thompson_classes(&self) -> Vec<u32> {
        (0..self.len() as u32)
            .filter(|&c| self.covers(&[c, c]).expect("nonempty"))
            .collect()
    }
}

/// Whether the product of the given classes is all of `G`.
pub fn class_product_covers(classes: &[ConjClass], g: &GroupTable) -> Result<bool> {
    let cs = ClassStructure::new(g);
    let ids: Vec<u32> = classes
        .iter()
        .map(|c| cs.class_of(c.representative))
        .collect();
    cs.covers(&ids)
}

/// Covering numbers: the least `d` such that every product of `m > d`
/// nontrivial classes is `G` (`extended`), respectively every `m`-th power
/// of a single nontrivial class (`covering`). `None` means no such `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringNumbers {
    pub covering: Option<u32>,
    pub extended: Option<u32>,
    /// Per nontrivial class: least `m` with `C^m = G`, if any.
    pub class_powers: Vec<(u32, Option<u32>)>,
}

pub fn covering_numbers(g: &GroupTable, opts: &EngineOptions) -> Result<CoveringNumbers> {
    let n = g.order();
    if (n as u128).saturating_mul(n as u128) > opts.budget {
        return Err(Error::BudgetExceeded {
            required: (n as u128) * (n as u128),
            budget: opts.budget,
        });
    }
    let cs = ClassStructure::new(g);
    let nontrivial = cs.nontrivial();
    if nontrivial.is_empty() {
        return Ok(CoveringNumbers {
            covering: Some(0),
            extended: Some(0),
            class_powers: Vec::new(),
        });
    }

    let mut class_powers = Vec::new();
    for &c in &nontrivial {
        let single: BTreeSet<u32> = [c].into();
        let mut power = single.clone();
        let mut seen = HashSet::new();
        let mut m = 1u32;
        let reached = loop {
            if cs.is_everything(&power) {
                break Some(m);
            }
            if !seen.insert(power.clone()) {
                break None;
            }
            power = cs.product(&power, &single);
            m += 1;
        };
        class_powers.push((c, reached));
    }
    let covering = class_powers
        .iter()
        .try_fold(0u32, |acc, &(_, m)| m.map(|m| acc.max(m)))
        .map(|m| m - 1);

    // All products of m nontrivial classes, as a set of normal subsets.
    let mut layer: BTreeSet<BTreeSet<u32>> = nontrivial.iter().map(|&c| [c].into()).collect();
    let mut seen: HashSet<BTreeSet<BTreeSet<u32>>> = HashSet::new();
    let mut m = 1u32;
    let extended = loop {
        if layer.iter().all(|s| cs.is_everything(s)) {
            break Some(m - 1);
        }
        if !seen.insert(layer.clone()) {
            break None;
        }
        let mut next = BTreeSet::new();
        for s in &layer {
            for &c in &nontrivial {
                next.insert(cs.product(s, &[c].into()));
            }
        }
        layer = next;
        m += 1;
    };
    Ok(CoveringNumbers {
        covering,
        extended,
        class_powers,
    })
}

/// Least `n` with `(Im [x,y])^n = [G, G]`; 0 when `[G, G]` is trivial.
pub fn commutator_width(g: &GroupTable, opts: &EngineOptions) -> Result<u32> {
    let img = word_image(&Word::family(&Family::Commutator)?, g, opts)?;
    let cs = ClassStructure::new(g);
    let base = cs
        .from_element_set(&img)
        .expect("word images are normal subsets");
    if base.len() == 1 {
        return Ok(0);
    }
    let mut acc = base.clone();
    let mut n = 1;
    loop {
        let next = cs.product(&acc, &base);
        if next == acc {
            return Ok(n);
        }
        acc = next;
        n += 1;
    }
}

/// The derived subgroup, as the closure of the commutator image.
pub fn derived_subgroup(g: &GroupTable, opts: &EngineOptions) -> Result<ElementSet> {
    let img = word_image(&Word::family(&Family::Commutator)?, g, opts)?;
    let cs = ClassStructure::new(g);
    let base = cs.from_element_set(&img).expect("normal");
    let mut acc = base.clone();
    loop {
        let next = cs.product(&acc, &base);
        if next == acc {
            return Ok(cs.to_element_set(&acc));
        }
        acc = next;
    }
}
