//! Bijections between finite sets of naturals, the plane and the
//! naturals: combinadic rank/unrank, the cardinality embedding, the
//! binary-number bijection and the endomorphism they induce on the
//! naturals.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{binom, info, nat, Nat};
use crate::pairing::{pair, unpair, Point};
use crate::prng::SplitMix64;

/// A finite set of naturals, stored strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSet {
    elems: Vec<Nat>,
}

impl FinSet {
    pub fn new(mut elems: Vec<Nat>) -> Result<Self> {
        elems.sort();
        for w in elems.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Duplicate(w[0].to_string()));
            }
        }
        Ok(FinSet { elems })
    }

    pub fn from_u64s(elems: &[u64]) -> Self {
        FinSet::new(elems.iter().map(|&e| nat(e)).collect()).expect("distinct elements")
    }

    pub fn empty() -> Self {
        FinSet { elems: Vec::new() }
    }

    pub fn elems(&self) -> &[Nat] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn max_elem(&self) -> Option<&Nat> {
        self.elems.last()
    }

    /// Characteristic string of the set over the prefix 0..len, leftmost
    /// character = element 0.
    pub fn char_string(&self, len: usize) -> String {
        let mut bits = vec![b'0'; len];
        for e in &self.elems {
            let i = e.to_usize().expect("element fits in usize");
            assert!(i < len, "element outside characteristic prefix");
            bits[i] = b'1';
        }
        String::from_utf8(bits).unwrap()
    }

    pub fn from_char_string(cs: &str) -> Result<Self> {
        let mut elems = Vec::new();
        for (i, c) in cs.chars().enumerate() {
            match c {
                '1' => elems.push(nat(i as u64)),
                '0' => {}
                other => return Err(Error::Parse(format!("invalid bit '{other}'"))),
            }
        }
        Ok(FinSet { elems })
    }
}

impl std::fmt::Display for FinSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Lexicographic rank of `s` among all sets of the same cardinality:
/// sum of binom(s_i, i) with i counted from 1 in ascending order.
pub fn combinadic_rank(s: &FinSet) -> Result<Nat> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut total = Nat::zero();
    for (i, e) in s.elems.iter().enumerate() {
        total += binom(e, &nat(i as u64 + 1));
    }
    Ok(total)
}

/// Greedy inverse: repeatedly take the largest m with binom(m,j) <= rest.
pub fn combinadic_unrank(k: u64, idx: &Nat) -> Result<FinSet> {
    if k == 0 {
        return Err(Error::ZeroCardinality);
    }
    let mut rest = idx.clone();
    let mut elems: Vec<Nat> = Vec::with_capacity(k as usize);
    for j in (1..=k).rev() {
        // the j-th largest element: maximal m with binom(m,j) <= rest,
        // found by climbing (rank grows fast, so this is cheap)
        let jn = nat(j);
        let mut m = nat(j - 1); // binom(j-1, j) = 0 <= rest always holds
        loop {
            let next = &m + 1u32;
            if binom(&next, &jn) <= rest {
                m = next;
            } else {
                break;
            }
        }
        rest -= binom(&m, &jn);
        elems.push(m);
    }
    elems.reverse();
    debug_assert!(rest.is_zero());
    FinSet::new(elems)
}

/// Plane position of a non-empty set: (cardinality - 1, combinadic rank).
pub fn phi_car(s: &FinSet) -> Result<Point> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(Point {
        x: nat(s.len() as u64 - 1),
        y: combinadic_rank(s)?,
    })
}

pub fn phi_car_index(s: &FinSet) -> Result<Nat> {
    Ok(pair(&phi_car(s)?))
}

/// Total inverse on the naturals: unpair, then unrank at cardinality x+1.
pub fn phi_car_inv(n: &Nat) -> FinSet {
    let p = unpair(n);
    let k = p.x.to_u64().expect("cardinality fits in u64") + 1;
    combinadic_unrank(k, &p.y).expect("k >= 1")
}

/// The binary-number bijection: sum of 2^e over the elements.
pub fn upsilon(s: &FinSet) -> Nat {
    let mut out = Nat::zero();
    for e in s.elems() {
        let bit = e.to_u64().expect("exponent fits in u64");
        out.set_bit(bit, true);
    }
    out
}

pub fn upsilon_inv(n: &Nat) -> FinSet {
    let mut elems = Vec::new();
    for bit in 0..n.bits() {
        if n.bit(bit) {
            elems.push(nat(bit));
        }
    }
    FinSet { elems }
}

/// Endomorphism of the naturals obtained by reading a Cantor index as a
/// set position and re-encoding the set as a binary number.
pub fn endo(n: &Nat) -> Nat {
    upsilon(&phi_car_inv(n))
}

/// Information needed to pick a k-subset from an n-set: log2 binom(n,k).
pub fn cond_subset_info(n: &Nat, k: &Nat) -> Result<f64> {
    if k > n {
        return Err(Error::OutOfDomain("subset larger than its superset"));
    }
    Ok(info(&binom(n, k)))
}

/// How many extra bits the cardinality embedding spends on `s` compared
/// with the binary-number encoding.
pub fn car_bin_divergence(s: &FinSet) -> Result<f64> {
    Ok(info(&phi_car_index(s)?) - info(&upsilon(s)))
}

/// Random set of cardinality k whose largest element is exactly 2k:
/// include 2k, then sweep the smaller values with inclusion probability
/// one half until the cardinality is reached.
pub fn string_typical(k: u64, rng: &mut SplitMix64) -> FinSet {
    assert!(k >= 1);
    let mut elems = vec![nat(2 * k)];
    'outer: loop {
        for v in (0..2 * k).rev() {
            if elems.len() == k as usize {
                break 'outer;
            }
            if rng.next_bit() && !elems.contains(&nat(v)) {
                elems.push(nat(v));
            }
        }
    }
    FinSet::new(elems).expect("constructed distinct")
}
