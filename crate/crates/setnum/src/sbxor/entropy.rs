//! Input-uncertainty tables for the basic logical operations: given a
//! uniformly random input pair and an observed output, how many bits of
//! entropy remain about the inputs, and how that compares to the bits
//! consumed. XOR is the only operation whose observed output leaves the
//! inputs exactly one bit uncertain regardless of the observed value.

use crate::error::{Error, Result};
use crate::numeric::binary_entropy;
use crate::prng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicOp {
    Or,
    And,
    Xor,
}

pub const ALL_LOGIC_OPS: [LogicOp; 3] = [LogicOp::Or, LogicOp::And, LogicOp::Xor];

impl LogicOp {
    pub fn name(self) -> &'static str {
        match self {
            LogicOp::Or => "or",
            LogicOp::And => "and",
            LogicOp::Xor => "xor",
        }
    }

    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            LogicOp::Or => a | b,
            LogicOp::And => a & b,
            LogicOp::Xor => a ^ b,
        }
    }
}

/// Input shapes over which the operation is iterated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputMode {
    /// One pair of random bits.
    SingleBit,
    /// A chain of k+1 random bits folded into one output bit.
    VectorChain { k: usize },
    /// k independent pairs of random bits, combined componentwise.
    BitwisePair { k: usize },
    /// k independent chains of n random bits each, componentwise.
    BitwiseSet { k: usize, n: usize },
}

impl InputMode {
    /// Bits of randomness consumed by one trial.
    pub fn input_bits(self) -> Result<usize> {
        match self {
            InputMode::SingleBit => Ok(2),
            InputMode::VectorChain { k } => {
                if k == 0 {
                    return Err(Error::OutOfDomain("chain length must be positive"));
                }
                Ok(k + 1)
            }
            InputMode::BitwisePair { k } => {
                if k == 0 {
                    return Err(Error::OutOfDomain("vector width must be positive"));
                }
                Ok(2 * k)
            }
            InputMode::BitwiseSet { k, n } => {
                if k == 0 || n < 2 {
                    return Err(Error::OutOfDomain(
                        "need positive width and at least two operands",
                    ));
                }
                Ok(k * n)
            }
        }
    }

    /// Output bits produced by one trial.
    pub fn output_bits(self) -> usize {
        match self {
            InputMode::SingleBit | InputMode::VectorChain { .. } => 1,
            InputMode::BitwisePair { k } | InputMode::BitwiseSet { k, .. } => k,
        }
    }
}

/// Entropy of the output distribution and its difference against the
/// input bits consumed, both in exact closed form.
pub fn logic_entropy(op: LogicOp, mode: InputMode) -> Result<(f64, f64)> {
    let input_bits = mode.input_bits()? as f64;
    let h = match (op, mode) {
        // P(or = 0) = 1/4, P(and = 1) = 1/4; same entropy either way
        (LogicOp::Or | LogicOp::And, InputMode::SingleBit) => binary_entropy(0.25),
        (LogicOp::Xor, InputMode::SingleBit) => 1.0,
        // an OR chain is 0 only when every input is 0; an AND chain is 1
        // only when every input is 1
        (LogicOp::Or | LogicOp::And, InputMode::VectorChain { k }) => {
            binary_entropy(0.5_f64.powi((k + 1) as i32))
        }
        (LogicOp::Xor, InputMode::VectorChain { .. }) => 1.0,
        (LogicOp::Or | LogicOp::And, InputMode::BitwisePair { k }) => {
            k as f64 * binary_entropy(0.25)
        }
        (LogicOp::Xor, InputMode::BitwisePair { k }) => k as f64,
        (LogicOp::Or | LogicOp::And, InputMode::BitwiseSet { k, n }) => {
            k as f64 * binary_entropy(0.5_f64.powi(n as i32))
        }
        (LogicOp::Xor, InputMode::BitwiseSet { k, .. }) => k as f64,
    };
    Ok((h, h - input_bits))
}

/// Monte Carlo counterpart of `logic_entropy`: empirical output entropy
/// over `trials` random draws (per-component entropies summed for the
/// bitwise modes), and its difference against the input bits.
pub fn logic_entropy_empirical(
    op: LogicOp,
    mode: InputMode,
    trials: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let input_bits = mode.input_bits()? as f64;
    if trials == 0 {
        return Err(Error::OutOfDomain("need at least one trial"));
    }
    let mut rng = SplitMix64::new(seed);
    let (width, operands) = match mode {
        InputMode::SingleBit => (1, 2),
        InputMode::VectorChain { k } => (1, k + 1),
        InputMode::BitwisePair { k } => (k, 2),
        InputMode::BitwiseSet { k, n } => (k, n),
    };
    let mut ones = vec![0u64; width];
    for _ in 0..trials {
        for count in ones.iter_mut() {
            let mut acc = rng.next_bit();
            for _ in 1..operands {
                acc = op.apply(acc, rng.next_bit());
            }
            if acc {
                *count += 1;
            }
        }
    }
    let mut h = 0.0;
    for &count in &ones {
        h += binary_entropy(count as f64 / trials as f64);
    }
    Ok((h, h - input_bits))
}

/// One row of the closed-form table.
#[derive(Debug, Clone)]
pub struct EntropyRow {
    pub op: LogicOp,
    pub mode: InputMode,
    pub input_bits: usize,
    pub output_entropy: f64,
    pub delta: f64,
}

/// Closed-form rows for all three operations over the given mode.
pub fn entropy_table(mode: InputMode) -> Result<Vec<EntropyRow>> {
    ALL_LOGIC_OPS
        .iter()
        .map(|&op| {
            let (h, delta) = logic_entropy(op, mode)?;
            Ok(EntropyRow {
                op,
                mode,
                input_bits: mode.input_bits()?,
                output_entropy: h,
                delta,
            })
        })
        .collect()
}
