//! Exact big-integer arithmetic and logarithmic information measures.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision natural number.
pub type Nat = BigUint;

pub fn nat(n: u64) -> Nat {
    Nat::from(n)
}

/// Exact binomial coefficient; `binom(n, k) = 0` when `k > n`.
pub fn binom(n: &Nat, k: &Nat) -> Nat {
    if k > n {
        return Nat::zero();
    }
    let complement = n - k;
    let small = if &complement < k { &complement } else { k };
    let reps = small
        .to_u64()
        .expect("binomial class index does not fit in 64 bits");
    let mut result = Nat::one();
    let mut factor = n - small;
    for i in 1..=reps {
        factor += 1u32;
        result = result * &factor / nat(i);
    }
    result
}

/// Largest `r` with `r*r <= n`, computed exactly on integers.
pub fn isqrt(n: &Nat) -> Nat {
    n.sqrt()
}

/// Largest `r` with `r^e <= n`.
pub fn nth_root(n: &Nat, e: u32) -> Nat {
    n.nth_root(e)
}

/// The scale of `n`: the position of its leading binary digit,
/// `floor(log2 n)`. Undefined for 0.
pub fn scale(n: &Nat) -> Option<u64> {
    if n.is_zero() {
        None
    } else {
        Some(n.bits() - 1)
    }
}

/// Base-2 logarithm of an arbitrary-size natural, with `log2 0 := 0`.
pub fn log2(n: &Nat) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let bits = n.bits();
    if bits <= 53 {
        n.to_f64().expect("fits in f64").log2()
    } else {
        let shift = bits - 53;
        let top = (n >> shift).to_f64().expect("53-bit mantissa fits");
        top.log2() + shift as f64
    }
}

/// Information in a natural number, in bits: `log2 n`, with the
/// convention `info(0) = info(1) = 0`.
pub fn info(n: &Nat) -> f64 {
    log2(n)
}

/// Shannon entropy of a finite distribution, in bits.
/// Rejects inputs whose probabilities do not sum to 1 (tolerance 1e-12)
/// or fall outside [0, 1].
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-12 || probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
        return Err(Error::InvalidDistribution(sum));
    }
    Ok(probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum())
}

/// Binary entropy h(p) with h(0) = h(1) = 0.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    Catalan,
    Stirling2,
    Bell,
}

/// Number of balanced bracketings of `n` pairs: `C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> Nat {
    binom(&nat(2 * n), &nat(n)) / nat(n + 1)
}

/// Number of partitions of an `n`-set into exactly `k` non-empty blocks.
pub fn stirling2(n: u64, k: u64) -> Nat {
    if k > n {
        return Nat::zero();
    }
    if n == 0 {
        return Nat::one(); // S(0,0) = 1
    }
    if k == 0 {
        return Nat::zero();
    }
    // S(n,k) = k*S(n-1,k) + S(n-1,k-1)
    let mut row: Vec<Nat> = vec![Nat::one()]; // row for n=0: [S(0,0)]
    for m in 1..=n {
        let mut next: Vec<Nat> = Vec::with_capacity((m + 1) as usize);
        next.push(if m == 0 { Nat::one() } else { Nat::zero() });
        for j in 1..=m {
            let carry = if (j as usize) < row.len() {
                row[j as usize].clone() * nat(j)
            } else {
                Nat::zero()
            };
            let diag = row[(j - 1) as usize].clone();
            next.push(carry + diag);
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Number of partitions of an `n`-set: sum of the Stirling numbers.
pub fn bell(n: u64) -> Nat {
    (0..=n).map(|k| stirling2(n, k)).sum()
}

pub fn combinatorial_count(kind: CountKind, n: u64, k: Option<u64>) -> Result<Nat> {
    match kind {
        CountKind::Catalan => Ok(catalan(n)),
        CountKind::Stirling2 => {
            let k = k.ok_or(Error::MissingArgument("k is required for stirling2"))?;
            Ok(stirling2(n, k))
        }
        CountKind::Bell => Ok(bell(n)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    SelfAdd,
    SelfMul,
}

/// Information efficiency of an elementary arithmetical operation:
/// output information minus input information, in bits.
pub fn delta_arith(op: ArithOp, x: &Nat, y: Option<&Nat>) -> Result<f64> {
    if x.is_zero() {
        return Err(Error::ZeroOperand);
    }
    match op {
        ArithOp::Add => {
            let y = y.ok_or(Error::MissingArgument("y is required for add"))?;
            if y.is_zero() {
                return Err(Error::ZeroOperand);
            }
            Ok(log2(&(x + y)) - log2(x) - log2(y))
        }
        ArithOp::Mul => {
            let y = y.ok_or(Error::MissingArgument("y is required for mul"))?;
            if y.is_zero() {
                return Err(Error::ZeroOperand);
            }
            Ok(log2(&(x * y)) - log2(x) - log2(y))
        }
        ArithOp::SelfAdd => Ok(log2(&(x << 1u32)) - log2(x)),
        ArithOp::SelfMul => Ok(log2(&(x * x)) - log2(x)),
    }
}
