//! Fixed-length bit vectors with componentwise XOR.

use crate::error::{Error, Result};
use crate::prng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: Vec<bool>,
}

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        BitVector { bits }
    }

    pub fn zero(k: usize) -> Self {
        BitVector {
            bits: vec![false; k],
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(Error::Parse(format!("invalid bit '{other}'"))),
            }
        }
        Ok(BitVector { bits })
    }

    pub fn random(k: usize, rng: &mut SplitMix64) -> Self {
        BitVector {
            bits: (0..k).map(|_| rng.next_bit()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Indices of the set bits.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.bits[i]).collect()
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(BitVector {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| a ^ b)
                .collect(),
        })
    }
}

impl std::fmt::Display for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Componentwise XOR over a non-empty sequence of equal-length vectors;
/// order- and association-independent.
pub fn xor_fold(rows: &[BitVector]) -> Result<BitVector> {
    let first = rows.first().ok_or(Error::EmptySet)?;
    let mut acc = BitVector::zero(first.len());
    for row in rows {
        acc = acc.xor(row)?;
    }
    Ok(acc)
}

/// Number of positions where the two vectors differ.
pub fn hamming(a: &BitVector, b: &BitVector) -> Result<usize> {
    Ok(a.xor(b)?.weight())
}
