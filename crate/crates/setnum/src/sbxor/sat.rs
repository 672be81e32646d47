//! Propositional encoding of the subset-XOR decision: a conjunction of
//! four blocks — bit coding of keys and target, a disjunction of XOR
//! chains of every length, distribution of keys over chain slots, and
//! pairwise-distinctness of the slots. Satisfiable exactly when some
//! non-empty subset of the keys folds to the target.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

use super::SbxorInstance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Var(String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

pub fn var(name: impl Into<String>) -> Formula {
    Formula::Var(name.into())
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn xor(a: Formula, b: Formula) -> Formula {
    Formula::Xor(Box::new(a), Box::new(b))
}

pub fn iff(a: Formula, b: Formula) -> Formula {
    Formula::Iff(Box::new(a), Box::new(b))
}

impl Formula {
    pub fn eval(&self, assignment: &HashMap<String, bool>) -> bool {
        match self {
            Formula::Var(name) => *assignment.get(name).unwrap_or(&false),
            Formula::Not(f) => !f.eval(assignment),
            Formula::And(fs) => fs.iter().all(|f| f.eval(assignment)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(assignment)),
            Formula::Xor(a, b) => a.eval(assignment) ^ b.eval(assignment),
            Formula::Iff(a, b) => a.eval(assignment) == b.eval(assignment),
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(name) => {
                out.insert(name.clone());
            }
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_vars(out);
                }
            }
            Formula::Xor(a, b) | Formula::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Not(f) => 1 + f.node_count(),
            Formula::And(fs) | Formula::Or(fs) => {
                1 + fs.iter().map(Formula::node_count).sum::<usize>()
            }
            Formula::Xor(a, b) | Formula::Iff(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }
}

const ENCODE_BOUND: usize = 8;

fn key_bit(i: usize, j: usize) -> Formula {
    var(format!("b_{}_{}", i + 1, j + 1))
}

fn target_bit(j: usize) -> Formula {
    var(format!("b_c_{}", j + 1))
}

fn slot_bit(i: usize, j: usize) -> Formula {
    var(format!("y_{}_{}", i + 1, j + 1))
}

/// Build the four-block formula for an instance (n, k at most 8).
pub fn sat_encode(inst: &SbxorInstance) -> Result<Formula> {
    let n = inst.n();
    let k = inst.k();
    if n > ENCODE_BOUND || k > ENCODE_BOUND {
        return Err(Error::BudgetExceeded(ENCODE_BOUND as u64));
    }

    // p1: bit coding of the keys and the target
    let mut coding = Vec::new();
    for (i, row) in inst.rows().iter().enumerate() {
        for j in 0..k {
            let lit = key_bit(i, j);
            coding.push(if row.get(j) { lit } else { not(lit) });
        }
    }
    for j in 0..k {
        let lit = target_bit(j);
        coding.push(if inst.target().get(j) { lit } else { not(lit) });
    }
    let p1 = Formula::And(coding);

    // p2: some chain prefix of the slots folds to the target
    let mut chains = Vec::new();
    for len in 1..=n {
        let mut conj = Vec::new();
        for j in 0..k {
            let mut chain = slot_bit(0, j);
            for i in 1..len {
                chain = xor(chain, slot_bit(i, j));
            }
            conj.push(iff(chain, target_bit(j)));
        }
        chains.push(Formula::And(conj));
    }
    let p2 = Formula::Or(chains);

    // p3: each slot holds exactly one key (exclusive chain of full-vector
    // equivalences)
    let mut distribution = Vec::new();
    for slot in 0..n {
        let mut alternatives: Option<Formula> = None;
        for key in 0..n {
            let matches = Formula::And(
                (0..k).map(|j| iff(slot_bit(slot, j), key_bit(key, j))).collect(),
            );
            alternatives = Some(match alternatives {
                None => matches,
                Some(prev) => xor(prev, matches),
            });
        }
        distribution.push(alternatives.expect("n >= 1"));
    }
    let p3 = Formula::And(distribution);

    // p4: no two slots hold the same key
    let mut uniqueness = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            uniqueness.push(Formula::Or(
                (0..k).map(|j| not(iff(slot_bit(a, j), slot_bit(b, j)))).collect(),
            ));
        }
    }
    let p4 = Formula::And(uniqueness);

    Ok(Formula::And(vec![p1, p2, p3, p4]))
}

/// Satisfiability by exhaustive assignment search; usable as an oracle
/// for small formulas only.
pub fn sat_bruteforce(f: &Formula) -> Option<HashMap<String, bool>> {
    let vars: Vec<String> = f.variables().into_iter().collect();
    assert!(vars.len() <= 26, "exhaustive search bounded at 26 variables");
    let mut assignment: HashMap<String, bool> =
        vars.iter().map(|v| (v.clone(), false)).collect();
    if f.eval(&assignment) {
        return Some(assignment);
    }
    // walk assignments in Gray-code order, flipping one variable per step
    for step in 1u64..(1 << vars.len()) {
        let flipped = &vars[step.trailing_zeros() as usize];
        let slot = assignment.get_mut(flipped).expect("known variable");
        *slot = !*slot;
        if f.eval(&assignment) {
            return Some(assignment);
        }
    }
    None
}
