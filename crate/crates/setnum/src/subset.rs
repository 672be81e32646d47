//! Subset-sum, subset-product and subset-parity problems over ordered
//! codebooks: scale-free instance generation, exact solvers and full
//! solution-space censuses.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{nat, scale, Nat};
use crate::prng::SplitMix64;

/// Ordered codebook; the index of an entry is its scale position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    entries: Vec<Nat>,
}

impl Codebook {
    pub fn new(entries: Vec<Nat>) -> Result<Self> {
        for (i, a) in entries.iter().enumerate() {
            if entries[..i].contains(a) {
                return Err(Error::Duplicate(a.to_string()));
            }
        }
        Ok(Codebook { entries })
    }

    pub fn from_u64s(entries: &[u64]) -> Self {
        Codebook::new(entries.iter().map(|&e| nat(e)).collect()).expect("distinct entries")
    }

    pub fn entries(&self) -> &[Nat] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Scale of each entry (position of the leading binary digit);
    /// absent for the entry 0.
    pub fn scales(&self) -> Vec<Option<u64>> {
        self.entries.iter().map(scale).collect()
    }
}

/// The canonical template [2^0, 2^1, ..., 2^(k-1)]: subset sums read off
/// binary representations, so every target below 2^k has exactly one
/// solution.
pub fn canonical_template(k: u64) -> Codebook {
    Codebook {
        entries: (0..k).map(|i| Nat::one() << i).collect(),
    }
}

/// Scale-free codebook: entry i drawn uniformly from the inclusive
/// interval [0, 2^i], redrawn on duplicates.
pub fn gen_scale_free(k: u64, seed: u64) -> Codebook {
    assert!(k >= 1);
    let mut rng = SplitMix64::new(seed);
    let mut entries: Vec<Nat> = Vec::with_capacity(k as usize);
    for i in 0..k {
        loop {
            let v = rng.in_scale_interval(i);
            if !entries.contains(&v) {
                entries.push(v);
                break;
            }
        }
    }
    Codebook { entries }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetOp {
    Sum,
    Product,
    Parity,
}

#[derive(Debug, Clone)]
pub struct SubsetProblem {
    pub codebook: Codebook,
    pub target: Nat,
    pub op: SubsetOp,
}

/// Entries selected by a characteristic string, with their sum.
pub fn select_by_charstring(cb: &Codebook, cs: &str) -> Result<(Vec<Nat>, Nat)> {
    if cs.len() != cb.len() {
        return Err(Error::LengthMismatch {
            left: cb.len(),
            right: cs.len(),
        });
    }
    let mut selected = Vec::new();
    let mut sum = Nat::zero();
    for (bit, entry) in cs.chars().zip(cb.entries()) {
        match bit {
            '1' => {
                sum += entry;
                selected.push(entry.clone());
            }
            '0' => {}
            other => return Err(Error::Parse(format!("invalid bit '{other}'"))),
        }
    }
    Ok((selected, sum))
}

fn op_value(op: SubsetOp, selected: &[Nat]) -> Nat {
    match op {
        SubsetOp::Sum => selected.iter().sum(),
        SubsetOp::Product => selected.iter().product(),
        SubsetOp::Parity => selected.iter().sum::<Nat>() % 2u32,
    }
}

/// Validate a witness selection against the problem. The empty selection
/// is a valid witness only for op = sum/parity with target 0; products
/// must select at least one entry (the empty product is excluded).
pub fn check_witness(p: &SubsetProblem, cs: &str) -> Result<bool> {
    let (selected, _) = select_by_charstring(&p.codebook, cs)?;
    if selected.is_empty() {
        return Ok(matches!(p.op, SubsetOp::Sum | SubsetOp::Parity) && p.target.is_zero());
    }
    Ok(op_value(p.op, &selected) == p.target)
}

const SUM_SOLVE_BOUND: usize = 48;
const PRODUCT_SOLVE_BOUND: usize = 64;

/// Exact solver; returns a witness characteristic string or None.
/// Every witness is re-validated through `check_witness` before return.
pub fn solve(p: &SubsetProblem) -> Result<Option<String>> {
    let witness = match p.op {
        SubsetOp::Sum => solve_sum(&p.codebook, &p.target)?,
        SubsetOp::Product => solve_product(&p.codebook, &p.target)?,
        SubsetOp::Parity => solve_parity(&p.codebook, &p.target),
    };
    if let Some(cs) = &witness {
        debug_assert!(check_witness(p, cs).unwrap_or(false));
    }
    Ok(witness)
}

fn mask_to_charstring(mask: u64, len: usize) -> String {
    (0..len)
        .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn positions_to_charstring(positions: &[usize], len: usize) -> String {
    let mut bits = vec![b'0'; len];
    for &p in positions {
        bits[p] = b'1';
    }
    String::from_utf8(bits).unwrap()
}

// meet in the middle: tabulate subset sums of the first half, scan the
// second half for complements
fn solve_sum(cb: &Codebook, target: &Nat) -> Result<Option<String>> {
    let k = cb.len();
    if k > SUM_SOLVE_BOUND {
        return Err(Error::BudgetExceeded(SUM_SOLVE_BOUND as u64));
    }
    let half = k / 2;
    let (lo, hi) = cb.entries().split_at(half);
    let mut left: HashMap<Nat, u64> = HashMap::with_capacity(1 << lo.len());
    for mask in 0u64..(1 << lo.len()) {
        let sum: Nat = (0..lo.len()).filter(|i| mask >> i & 1 == 1).map(|i| &lo[i]).sum();
        left.entry(sum).or_insert(mask);
    }
    for mask in 0u64..(1 << hi.len()) {
        let sum: Nat = (0..hi.len()).filter(|i| mask >> i & 1 == 1).map(|i| &hi[i]).sum();
        if sum > *target {
            continue;
        }
        if let Some(&lo_mask) = left.get(&(target - sum)) {
            return Ok(Some(mask_to_charstring(lo_mask | mask << half, k)));
        }
    }
    Ok(None)
}

// products only shrink the candidate set: restrict to entries dividing
// the target (the budget applies to the filtered set), then depth-first
// search over descending divisors with a divisibility prune
fn solve_product(cb: &Codebook, target: &Nat) -> Result<Option<String>> {
    if target.is_zero() {
        // a product is 0 exactly when the entry 0 is selected
        return Ok(cb
            .entries()
            .iter()
            .position(|e| e.is_zero())
            .map(|i| positions_to_charstring(&[i], cb.len())));
    }
    let mut candidates: Vec<usize> = cb
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero() && (target % *e).is_zero())
        .map(|(i, _)| i)
        .collect();
    if candidates.len() > PRODUCT_SOLVE_BOUND {
        return Err(Error::BudgetExceeded(PRODUCT_SOLVE_BOUND as u64));
    }
    candidates.sort_by(|&a, &b| cb.entries()[b].cmp(&cb.entries()[a]));

    fn dfs(
        cb: &Codebook,
        candidates: &[usize],
        from: usize,
        remaining: &Nat,
        picked: &mut Vec<usize>,
    ) -> bool {
        if remaining.is_one() {
            return !picked.is_empty();
        }
        for i in from..candidates.len() {
            let entry = &cb.entries()[candidates[i]];
            if entry.is_one() {
                // 1 never changes the remaining product
                continue;
            }
            if (remaining % entry).is_zero() {
                picked.push(candidates[i]);
                if dfs(cb, candidates, i + 1, &(remaining / entry), picked) {
                    return true;
                }
                picked.pop();
            }
        }
        false
    }

    let mut picked = Vec::new();
    if target.is_one() {
        // witnesses must be non-empty; only the entry 1 qualifies
        return Ok(cb
            .entries()
            .iter()
            .position(|e| e.is_one())
            .map(|i| positions_to_charstring(&[i], cb.len())));
    }
    if dfs(cb, &candidates, 0, target, &mut picked) {
        Ok(Some(positions_to_charstring(&picked, cb.len())))
    } else {
        Ok(None)
    }
}

fn solve_parity(cb: &Codebook, target: &Nat) -> Option<String> {
    if target.is_zero() {
        return Some(positions_to_charstring(&[], cb.len()));
    }
    if *target != Nat::one() {
        return None;
    }
    cb.entries()
        .iter()
        .position(|e| e % 2u32 == Nat::one())
        .map(|i| positions_to_charstring(&[i], cb.len()))
}

/// Full map target -> number of achieving subsets. Sums count all 2^k
/// subsets (the empty one lands on 0); products count the 2^k - 1
/// non-empty subsets.
#[derive(Debug, Clone)]
pub struct SolutionCensus {
    pub counts: BTreeMap<Nat, u64>,
    pub subset_total: u64,
}

const CENSUS_BOUND: usize = 26;

pub fn census(cb: &Codebook, op: SubsetOp) -> Result<SolutionCensus> {
    let k = cb.len();
    if k > CENSUS_BOUND {
        return Err(Error::BudgetExceeded(CENSUS_BOUND as u64));
    }
    match op {
        SubsetOp::Sum => Ok(census_sum(cb)),
        SubsetOp::Product => Ok(census_product(cb)),
        SubsetOp::Parity => Err(Error::OutOfDomain("census supports sum and product")),
    }
}

fn census_sum(cb: &Codebook) -> SolutionCensus {
    let k = cb.len();
    // gray-code walk keeps a running sum with one add/sub per subset
    if let Some(small) = cb
        .entries()
        .iter()
        .map(|e| e.to_u64())
        .collect::<Option<Vec<u64>>>()
        .filter(|v| v.iter().try_fold(0u64, |a, &b| a.checked_add(b)).is_some())
    {
        let mut counts: HashMap<u64, u64> = HashMap::new();
        let mut sum = 0u64;
        counts.insert(0, 1);
        let mut prev_gray = 0u64;
        for i in 1u64..(1u64 << k) {
            let gray = i ^ (i >> 1);
            let bit = (gray ^ prev_gray).trailing_zeros() as usize;
            if gray >> bit & 1 == 1 {
                sum += small[bit];
            } else {
                sum -= small[bit];
            }
            prev_gray = gray;
            *counts.entry(sum).or_insert(0) += 1;
        }
        return SolutionCensus {
            counts: counts.into_iter().map(|(v, c)| (nat(v), c)).collect(),
            subset_total: 1u64 << k,
        };
    }
    let mut counts: BTreeMap<Nat, u64> = BTreeMap::new();
    for mask in 0u64..(1 << k) {
        let sum: Nat = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &cb.entries()[i]).sum();
        *counts.entry(sum).or_insert(0) += 1;
    }
    SolutionCensus {
        counts,
        subset_total: 1u64 << k,
    }
}

fn census_product(cb: &Codebook) -> SolutionCensus {
    let k = cb.len();
    let mut counts: BTreeMap<Nat, u64> = BTreeMap::new();
    for mask in 1u64..(1 << k) {
        let product: Nat =
            (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &cb.entries()[i]).product();
        *counts.entry(product).or_insert(0) += 1;
    }
    SolutionCensus {
        counts,
        subset_total: (1u64 << k) - 1,
    }
}

impl SolutionCensus {
    pub fn count(&self, target: &Nat) -> u64 {
        self.counts.get(target).copied().unwrap_or(0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("target,count\n");
        for (t, c) in &self.counts {
            out.push_str(&format!("{t},{c}\n"));
        }
        out
    }

    pub fn to_csv_range(&self, lo: &Nat, hi: &Nat) -> String {
        let mut out = String::from("target,count\n");
        for (t, c) in self.counts.range(lo.clone()..=hi.clone()) {
            out.push_str(&format!("{t},{c}\n"));
        }
        out
    }

    /// Mean number of solutions over the reachable targets.
    pub fn mean_solutions(&self) -> f64 {
        if self.counts.is_empty() {
            return 0.0;
        }
        let total: u64 = self.counts.values().sum();
        total as f64 / self.counts.len() as f64
    }
}

/// Gaps between consecutive reachable targets inside [lo, hi].
pub fn interval_lengths(c: &SolutionCensus, lo: &Nat, hi: &Nat) -> Vec<Nat> {
    let reachable: Vec<&Nat> = c.counts.range(lo.clone()..=hi.clone()).map(|(t, _)| t).collect();
    reachable.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Fraction of the naturals 1..=n that are reachable targets (the
/// trivial target 0 is not counted, so a full-coverage codebook has
/// density exactly 1).
pub fn fractal_density(c: &SolutionCensus, n: &Nat) -> Result<f64> {
    if n.is_zero() {
        return Err(Error::OutOfDomain("density needs n >= 1"));
    }
    let reachable = c.counts.range(Nat::one()..=n.clone()).count();
    Ok(reachable as f64 / n.to_f64().expect("horizon fits in f64"))
}

/// The codebook and scrambling charstring of the worked scale-free
/// instance shipped as a fixture (k = 22).
pub fn fixture_codebook() -> (Codebook, String) {
    let raw: &str = include_str!("../fixtures/scale_free_k22.json");
    let v: serde_json::Value = serde_json::from_str(raw).expect("fixture parses");
    let entries: Vec<Nat> = v["codebook"]
        .as_array()
        .expect("codebook array")
        .iter()
        .map(|e| e.as_str().expect("decimal string").parse().expect("decimal"))
        .collect();
    let cs = v["charstring"].as_str().expect("charstring").to_owned();
    (Codebook::new(entries).expect("fixture entries distinct"), cs)
}
