//! Subset-bitwise-XOR instances: generation from a seeded bit stream,
//! checking, brute-force and GF(2)-elimination solving, chain (multiple
//! mutual key) encryption, message absorption and the SAT reduction.

pub mod bitvec;
pub mod cnf;
pub mod entropy;
pub mod sat;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::prng::SplitMix64;
pub use bitvec::{hamming, xor_fold, BitVector};

/// An n x k bit matrix (the key set), a target vector, and — for
/// generated instances — the hidden selection used to build the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbxorInstance {
    rows: Vec<BitVector>,
    target: BitVector,
    hidden_selection: Option<BitVector>,
}

impl SbxorInstance {
    pub fn new(
        rows: Vec<BitVector>,
        target: BitVector,
        hidden_selection: Option<BitVector>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for r in &rows {
            if r.len() != target.len() {
                return Err(Error::LengthMismatch {
                    left: r.len(),
                    right: target.len(),
                });
            }
            if !seen.insert(r.clone()) {
                return Err(Error::Duplicate(r.to_string()));
            }
        }
        if let Some(sel) = &hidden_selection {
            if sel.len() != rows.len() {
                return Err(Error::LengthMismatch {
                    left: sel.len(),
                    right: rows.len(),
                });
            }
        }
        Ok(SbxorInstance {
            rows,
            target,
            hidden_selection,
        })
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn k(&self) -> usize {
        self.target.len()
    }

    pub fn target(&self) -> &BitVector {
        &self.target
    }

    pub fn hidden_selection(&self) -> Option<&BitVector> {
        self.hidden_selection.as_ref()
    }

    fn selected_rows(&self, sel: &BitVector) -> Result<Vec<BitVector>> {
        if sel.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: sel.len(),
                right: self.n(),
            });
        }
        Ok(sel.ones().iter().map(|&i| self.rows[i].clone()).collect())
    }
}

/// n rows of length k read off a single seeded bit stream, then a
/// selection vector from the next n bits (redrawn while all-zero, since
/// an empty XOR fold is undefined); the target is the fold of the
/// selected rows. Duplicate rows are redrawn.
pub fn gen_random(n: usize, k: usize, seed: u64) -> SbxorInstance {
    assert!(n >= 1 && k >= 1);
    assert!(
        k >= 64 || n as u64 <= 1 << k,
        "need 2^k >= n distinct rows"
    );
    let mut rng = SplitMix64::new(seed);
    let mut rows: Vec<BitVector> = Vec::with_capacity(n);
    while rows.len() < n {
        let row = BitVector::random(k, &mut rng);
        if !rows.contains(&row) {
            rows.push(row);
        }
    }
    let selection = loop {
        let sel = BitVector::random(n, &mut rng);
        if !sel.is_zero() {
            break sel;
        }
    };
    let selected: Vec<BitVector> =
        selection.ones().iter().map(|&i| rows[i].clone()).collect();
    let target = xor_fold(&selected).expect("selection is non-empty");
    SbxorInstance {
        rows,
        target,
        hidden_selection: Some(selection),
    }
}

/// Square instance: n keys of length n, the layout of a single random
/// string of length n(n+1).
pub fn gen_canonical(n: usize, seed: u64) -> SbxorInstance {
    gen_random(n, n, seed)
}

/// True iff the non-empty selection's fold equals the target.
pub fn check(inst: &SbxorInstance, sel: &BitVector) -> Result<bool> {
    let selected = inst.selected_rows(sel)?;
    if selected.is_empty() {
        return Ok(false);
    }
    Ok(xor_fold(&selected)? == inst.target)
}

const BRUTE_FORCE_BOUND: usize = 26;

/// Walk all 2^n - 1 non-empty selections in gray-code order, keeping a
/// running fold with one XOR per step.
pub fn solve_bruteforce(inst: &SbxorInstance) -> Result<Option<BitVector>> {
    let n = inst.n();
    if n > BRUTE_FORCE_BOUND {
        return Err(Error::BudgetExceeded(BRUTE_FORCE_BOUND as u64));
    }
    let mut fold = BitVector::zero(inst.k());
    let mut prev_gray = 0u64;
    for i in 1u64..(1 << n) {
        let gray = i ^ (i >> 1);
        let bit = (gray ^ prev_gray).trailing_zeros() as usize;
        fold = fold.xor(&inst.rows[bit])?;
        prev_gray = gray;
        if fold == inst.target {
            let sel = BitVector::new((0..n).map(|j| gray >> j & 1 == 1).collect());
            debug_assert!(check(inst, &sel)?);
            return Ok(Some(sel));
        }
    }
    Ok(None)
}

/// Polynomial-time solver: Gauss-Jordan elimination over the two-element
/// field on the column-space system, then a kernel vector if the
/// particular solution degenerates to the empty selection.
pub fn solve_gf2(inst: &SbxorInstance) -> Result<Option<BitVector>> {
    let n = inst.n();
    let k = inst.k();
    // equations indexed by bit position: sum_j rows[j][bit] * s_j = target[bit]
    let mut matrix: Vec<Vec<bool>> = (0..k)
        .map(|bit| {
            let mut row: Vec<bool> = (0..n).map(|j| inst.rows[j].get(bit)).collect();
            row.push(inst.target.get(bit));
            row
        })
        .collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if let Some(p) = (r..k).find(|&i| matrix[i][col]) {
            matrix.swap(r, p);
            for i in 0..k {
                if i != r && matrix[i][col] {
                    let (pivot_row, other) = if i < r {
                        let (a, b) = matrix.split_at_mut(r);
                        (&b[0], &mut a[i])
                    } else {
                        let (a, b) = matrix.split_at_mut(i);
                        (&a[r], &mut b[0])
                    };
                    for c in 0..=n {
                        other[c] ^= pivot_row[c];
                    }
                }
            }
            pivot_cols.push(col);
            r += 1;
            if r == k {
                break;
            }
        }
    }
    // inconsistent row: all zero coefficients, nonzero right-hand side
    for row in &matrix[r..] {
        if row[n] && !row[..n].iter().any(|&b| b) {
            return Ok(None);
        }
    }
    // particular solution: free variables 0, pivots read off the rhs
    let mut sel = vec![false; n];
    for (i, &col) in pivot_cols.iter().enumerate() {
        sel[col] = matrix[i][n];
    }
    if sel.iter().any(|&b| b) {
        let sel = BitVector::new(sel);
        debug_assert!(check(inst, &sel)?);
        return Ok(Some(sel));
    }
    // zero target: look for a non-trivial kernel vector through a free
    // column (set it to 1, back-substitute the pivots)
    if let Some(free) = (0..n).find(|c| !pivot_cols.contains(c)) {
        let mut kernel = vec![false; n];
        kernel[free] = true;
        for (i, &col) in pivot_cols.iter().enumerate() {
            kernel[col] = matrix[i][free];
        }
        let sel = BitVector::new(kernel);
        debug_assert!(check(inst, &sel)?);
        return Ok(Some(sel));
    }
    Ok(None)
}

/// Chain encryption: fold the keys into the message. Decryption is the
/// same involution.
pub fn mmk_encrypt(keys: &[BitVector], message: &BitVector) -> Result<BitVector> {
    let mut out = message.clone();
    for key in keys {
        out = out.xor(key)?;
    }
    Ok(out)
}

pub fn mmk_decrypt(keys: &[BitVector], cipher: &BitVector) -> Result<BitVector> {
    mmk_encrypt(keys, cipher)
}

/// Re-encode the instance to carry `message`: for every column where the
/// current target differs, flip that column's bit in one randomly chosen
/// selected row. The hidden selection keeps checking out against the new
/// target, and the flip count is the Hamming distance between the old
/// target and the message.
pub fn absorb(inst: &SbxorInstance, message: &BitVector, seed: u64) -> Result<SbxorInstance> {
    let selection = inst
        .hidden_selection
        .as_ref()
        .ok_or(Error::MissingArgument("instance carries no hidden selection"))?;
    if message.len() != inst.k() {
        return Err(Error::LengthMismatch {
            left: message.len(),
            right: inst.k(),
        });
    }
    let selected = selection.ones();
    let mut rng = SplitMix64::new(seed);
    let mut rows = inst.rows.clone();
    for col in 0..inst.k() {
        if inst.target.get(col) != message.get(col) {
            if selected.is_empty() {
                return Err(Error::EmptySet);
            }
            let pick = selected[rng.below(selected.len() as u64) as usize];
            rows[pick].flip(col);
        }
    }
    Ok(SbxorInstance {
        rows,
        target: message.clone(),
        hidden_selection: Some(selection.clone()),
    })
}
