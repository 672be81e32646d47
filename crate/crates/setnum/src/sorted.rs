//! Sorted injections: pair a set's arithmetical type value with its
//! within-type index, for several choices of type function, plus the
//! power-set compression multisets and density/decay estimators.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{nat, Nat};
use crate::pairing::{pair, Point};
use crate::setcodec::{combinadic_rank, phi_car_index, phi_car_inv, upsilon, FinSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZetaKind {
    Cardinality,
    Sum,
    Product,
    Binary,
    Parity,
}

pub const ALL_ZETA_KINDS: [ZetaKind; 5] = [
    ZetaKind::Cardinality,
    ZetaKind::Sum,
    ZetaKind::Product,
    ZetaKind::Binary,
    ZetaKind::Parity,
];

/// Default cap on the within-type linear scan; the scan is exponential
/// in the set's representation size, so callers must opt in to more.
pub const DEFAULT_SCAN_BUDGET: u64 = 1_000_000;

/// The type value of a non-empty set under the chosen function.
pub fn zeta_eval(kind: ZetaKind, s: &FinSet) -> Result<Nat> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(match kind {
        ZetaKind::Cardinality => nat(s.len() as u64),
        ZetaKind::Sum => s.elems().iter().sum(),
        ZetaKind::Product => s.elems().iter().product(),
        ZetaKind::Binary => upsilon(s),
        ZetaKind::Parity => s.elems().iter().sum::<Nat>() % 2u32,
    })
}

/// Memoized scan over the cardinality-order enumeration of finite sets:
/// caches the type value at each plane index so repeated within-type
/// queries cost one pass.
#[derive(Debug)]
pub struct ThetaCache {
    kind: ZetaKind,
    zetas: Vec<Nat>,
}

impl ThetaCache {
    pub fn new(kind: ZetaKind) -> Self {
        ThetaCache {
            kind,
            zetas: Vec::new(),
        }
    }

    fn ensure(&mut self, upto: usize) {
        while self.zetas.len() < upto {
            let s = phi_car_inv(&nat(self.zetas.len() as u64));
            let z = zeta_eval(self.kind, &s).expect("decoded sets are non-empty");
            self.zetas.push(z);
        }
    }

    /// Position of `s` among same-type sets in enumeration order: the
    /// count of earlier sets sharing its type value.
    pub fn theta(&mut self, s: &FinSet, budget: u64) -> Result<Nat> {
        let idx = phi_car_index(s)?;
        if idx > nat(budget) {
            return Err(Error::BudgetExceeded(budget));
        }
        let idx = idx.to_usize().expect("budget-bounded index fits");
        self.ensure(idx);
        let z = zeta_eval(self.kind, s)?;
        let count = self.zetas[..idx].iter().filter(|&v| *v == z).count();
        Ok(nat(count as u64))
    }
}

/// One-shot within-type index; builds a fresh scan each call.
pub fn theta_index(kind: ZetaKind, s: &FinSet, budget: u64) -> Result<Nat> {
    ThetaCache::new(kind).theta(s, budget)
}

// first plane coordinate used when pairing a type value: the cardinality
// family keeps its column numbering (|s| - 1), everything else uses the
// type value itself
fn zeta_coord(kind: ZetaKind, s: &FinSet) -> Result<Nat> {
    match kind {
        ZetaKind::Cardinality => {
            if s.is_empty() {
                return Err(Error::EmptySet);
            }
            Ok(nat(s.len() as u64 - 1))
        }
        _ => zeta_eval(kind, s),
    }
}

/// pair(type value, within-type index). For the cardinality family the
/// within-type index has a closed form — the combinadic rank — so no
/// scan is needed and the result coincides with the plain cardinality
/// embedding of the set.
pub fn phi_zeta(kind: ZetaKind, s: &FinSet, budget: u64) -> Result<Nat> {
    let theta = match kind {
        ZetaKind::Cardinality => combinadic_rank(s)?,
        _ => theta_index(kind, s, budget)?,
    };
    Ok(pair(&Point {
        x: zeta_coord(kind, s)?,
        y: theta,
    }))
}

/// Apply the type function to every non-empty subset of `base` and
/// return the sorted multiset of values.
pub fn powerset_dilation(base: &FinSet, kind: ZetaKind) -> Result<Vec<Nat>> {
    const MAX_BASE: usize = 24;
    if base.len() > MAX_BASE {
        return Err(Error::BudgetExceeded(MAX_BASE as u64));
    }
    let elems = base.elems();
    let mut out = Vec::with_capacity((1usize << elems.len()) - 1);
    for mask in 1u32..(1u32 << elems.len()) {
        let subset: Vec<Nat> = (0..elems.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| elems[i].clone())
            .collect();
        let s = FinSet::new(subset).expect("subset of a set is duplicate-free");
        out.push(zeta_eval(kind, &s)?);
    }
    out.sort();
    Ok(out)
}

/// Collapse a sorted multiset into a value -> multiplicity table.
pub fn multiset_counts(values: &[Nat]) -> BTreeMap<Nat, u64> {
    let mut counts = BTreeMap::new();
    for v in values {
        *counts.entry(v.clone()).or_insert(0u64) += 1;
    }
    counts
}

pub fn multiset_to_csv(values: &[Nat]) -> String {
    let mut out = String::from("value,count\n");
    for (v, c) in multiset_counts(values) {
        out.push_str(&format!("{v},{c}\n"));
    }
    out
}

/// Count of distinct values at most n, their natural density c/n, and
/// the decay n/c (absent when nothing falls in range).
pub fn density_census(values: &[Nat], n: &Nat) -> Result<(u64, f64, Option<f64>)> {
    if n.is_zero() {
        return Err(Error::OutOfDomain("density needs n >= 1"));
    }
    let mut in_range: Vec<&Nat> = values.iter().filter(|v| *v <= n).collect();
    in_range.sort();
    in_range.dedup();
    let c = in_range.len() as u64;
    let nf = n.to_f64().expect("density horizon fits in f64");
    let d = c as f64 / nf;
    let decay = if c > 0 { Some(nf / c as f64) } else { None };
    Ok((c, d, decay))
}
