//! Clause form: Tseitin transformation of arbitrary formulas to CNF,
//! DIMACS serialization, and a small unit-propagating backtracking
//! solver used as a satisfiability oracle.

use std::collections::HashMap;

use super::sat::Formula;

/// Signed variable index: positive = variable, negative = its negation.
pub type Literal = i32;

#[derive(Debug, Clone)]
pub struct Cnf {
    pub clauses: Vec<Vec<Literal>>,
    pub num_vars: usize,
    /// Original formula variables, by DIMACS index (1-based); Tseitin
    /// definition variables follow after these.
    pub names: Vec<String>,
}

impl Cnf {
    /// DIMACS cnf text: problem line, then zero-terminated clauses.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

struct Tseitin {
    clauses: Vec<Vec<Literal>>,
    next_var: i32,
    names: Vec<String>,
    by_name: HashMap<String, Literal>,
}

impl Tseitin {
    fn fresh(&mut self) -> Literal {
        let v = self.next_var;
        self.next_var += 1;
        v
    }

    fn var_for(&mut self, name: &str) -> Literal {
        if let Some(&v) = self.by_name.get(name) {
            return v;
        }
        let v = self.fresh();
        self.by_name.insert(name.to_string(), v);
        self.names.push(name.to_string());
        v
    }

    /// Returns a literal equisatisfiably representing `f`, adding the
    /// defining clauses for any fresh gate variable.
    fn translate(&mut self, f: &Formula) -> Literal {
        match f {
            Formula::Var(name) => self.var_for(name),
            Formula::Not(inner) => -self.translate(inner),
            Formula::And(fs) => {
                let lits: Vec<Literal> = fs.iter().map(|g| self.translate(g)).collect();
                let gate = self.fresh();
                // gate -> each lit; all lits -> gate
                for &lit in &lits {
                    self.clauses.push(vec![-gate, lit]);
                }
                let mut long: Vec<Literal> = lits.iter().map(|&l| -l).collect();
                long.push(gate);
                self.clauses.push(long);
                gate
            }
            Formula::Or(fs) => {
                let lits: Vec<Literal> = fs.iter().map(|g| self.translate(g)).collect();
                let gate = self.fresh();
                for &lit in &lits {
                    self.clauses.push(vec![gate, -lit]);
                }
                let mut long = lits;
                long.push(-gate);
                self.clauses.push(long);
                gate
            }
            Formula::Xor(a, b) => {
                let la = self.translate(a);
                let lb = self.translate(b);
                let gate = self.fresh();
                self.clauses.push(vec![-gate, la, lb]);
                self.clauses.push(vec![-gate, -la, -lb]);
                self.clauses.push(vec![gate, -la, lb]);
                self.clauses.push(vec![gate, la, -lb]);
                gate
            }
            Formula::Iff(a, b) => {
                let la = self.translate(a);
                let lb = self.translate(b);
                let gate = self.fresh();
                self.clauses.push(vec![-gate, -la, lb]);
                self.clauses.push(vec![-gate, la, -lb]);
                self.clauses.push(vec![gate, la, lb]);
                self.clauses.push(vec![gate, -la, -lb]);
                gate
            }
        }
    }
}

/// Tseitin transformation: the result is satisfiable iff `f` is, and
/// any model restricted to the named variables is a model of `f`.
pub fn tseitin(f: &Formula) -> Cnf {
    let mut t = Tseitin {
        clauses: Vec::new(),
        next_var: 1,
        names: Vec::new(),
        by_name: HashMap::new(),
    };
    // allocate the original variables first so names line up with 1..
    for name in f.variables() {
        t.var_for(&name);
    }
    let root = t.translate(f);
    t.clauses.push(vec![root]);
    Cnf {
        clauses: t.clauses,
        num_vars: (t.next_var - 1) as usize,
        names: t.names,
    }
}

/// Backtracking search with unit propagation. Returns a total
/// assignment (index 0 unused) or None.
pub fn dpll(cnf: &Cnf) -> Option<Vec<bool>> {
    let mut assign: Vec<Option<bool>> = vec![None; cnf.num_vars + 1];
    if solve_rec(&cnf.clauses, &mut assign) {
        Some(assign.iter().map(|v| v.unwrap_or(false)).collect())
    } else {
        None
    }
}

fn lit_value(assign: &[Option<bool>], lit: Literal) -> Option<bool> {
    assign[lit.unsigned_abs() as usize].map(|v| v == (lit > 0))
}

fn solve_rec(clauses: &[Vec<Literal>], assign: &mut Vec<Option<bool>>) -> bool {
    // unit propagation to fixpoint
    let mut trail: Vec<usize> = Vec::new();
    loop {
        let mut propagated = false;
        for clause in clauses {
            let mut unassigned: Option<Literal> = None;
            let mut satisfied = false;
            let mut open = 0usize;
            for &lit in clause {
                match lit_value(assign, lit) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open += 1;
                        unassigned = Some(lit);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match open {
                0 => {
                    for &v in &trail {
                        assign[v] = None;
                    }
                    return false;
                }
                1 => {
                    let lit = unassigned.unwrap();
                    let var = lit.unsigned_abs() as usize;
                    assign[var] = Some(lit > 0);
                    trail.push(var);
                    propagated = true;
                }
                _ => {}
            }
        }
        if !propagated {
            break;
        }
    }
    // branch on the first unassigned variable (slot 0 is unused)
    match (1..assign.len()).find(|&i| assign[i].is_none()) {
        None => true,
        Some(var) => {
            for value in [true, false] {
                assign[var] = Some(value);
                if solve_rec(clauses, assign) {
                    return true;
                }
                assign[var] = None;
            }
            for &v in &trail {
                assign[v] = None;
            }
            false
        }
    }
}

/// Model of the clause form restricted to the original formula variables.
pub fn named_model(cnf: &Cnf, assign: &[bool]) -> HashMap<String, bool> {
    cnf.names
        .iter()
        .enumerate()
        .map(|(i, name)| (name.clone(), assign[i + 1]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::sat::{iff, not, sat_bruteforce, sat_encode, var, xor, Formula};
    use super::super::{gen_random, BitVector, SbxorInstance};
    use super::*;

    fn sat_via_dpll(f: &Formula) -> Option<HashMap<String, bool>> {
        let cnf = tseitin(f);
        dpll(&cnf).map(|assign| named_model(&cnf, &assign))
    }

    #[test]
    fn trivial_formulas() {
        let f = var("a");
        let model = sat_via_dpll(&f).unwrap();
        assert!(model["a"]);
        let contradiction = Formula::And(vec![var("a"), not(var("a"))]);
        assert!(sat_via_dpll(&contradiction).is_none());
    }

    #[test]
    fn connective_gates_agree_with_semantics() {
        let shapes: Vec<Formula> = vec![
            Formula::And(vec![var("a"), var("b"), var("c")]),
            Formula::Or(vec![var("a"), var("b"), var("c")]),
            xor(var("a"), var("b")),
            iff(var("a"), var("b")),
            xor(iff(var("a"), var("b")), Formula::Or(vec![var("b"), not(var("c"))])),
            Formula::And(vec![
                Formula::Or(vec![var("a"), var("b")]),
                Formula::Or(vec![not(var("a")), var("c")]),
                xor(var("b"), var("c")),
            ]),
        ];
        for f in &shapes {
            // force each possible input pattern with unit constraints and
            // compare the clause form against direct evaluation
            let vars: Vec<String> = f.variables().into_iter().collect();
            for mask in 0u32..(1 << vars.len()) {
                let assignment: HashMap<String, bool> = vars
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.clone(), mask >> i & 1 == 1))
                    .collect();
                let mut pinned = vec![f.clone()];
                for (i, name) in vars.iter().enumerate() {
                    let value = mask >> i & 1 == 1;
                    pinned.push(if value { var(name.clone()) } else { not(var(name.clone())) });
                }
                let pinned = Formula::And(pinned);
                assert_eq!(
                    f.eval(&assignment),
                    sat_via_dpll(&pinned).is_some(),
                    "formula {f:?} mask {mask}"
                );
            }
        }
    }

    #[test]
    fn dimacs_shape() {
        let f = Formula::And(vec![var("a"), Formula::Or(vec![not(var("a")), var("b")])]);
        let cnf = tseitin(&f);
        let text = cnf.to_dimacs();
        let mut lines = text.lines();
        let header = lines.next().unwrap();
        assert_eq!(
            header,
            format!("p cnf {} {}", cnf.num_vars, cnf.clauses.len())
        );
        for line in lines {
            assert!(line.ends_with(" 0"));
            for token in line.split_whitespace() {
                let v: i32 = token.parse().unwrap();
                assert!(v.unsigned_abs() as usize <= cnf.num_vars);
            }
        }
        // named variables occupy the first indices in sorted order
        assert_eq!(cnf.names, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn clause_form_matches_exhaustive_search_on_encodings() {
        for seed in 0..30u64 {
            let inst = gen_random(3, 3, 7000 + seed);
            let inst = if seed % 3 == 0 {
                let mut rng = crate::prng::SplitMix64::new(seed);
                SbxorInstance::new(inst.rows().to_vec(), BitVector::random(3, &mut rng), None)
                    .unwrap()
            } else {
                inst
            };
            let f = sat_encode(&inst).unwrap();
            let direct = sat_bruteforce(&f);
            let cnf = tseitin(&f);
            let clause_model = dpll(&cnf);
            assert_eq!(direct.is_some(), clause_model.is_some(), "seed {seed}");
            if let Some(assign) = clause_model {
                let model = named_model(&cnf, &assign);
                assert!(f.eval(&model), "restricted model must satisfy the formula");
            }
        }
    }

    #[test]
    fn worked_encoding_round_trip() {
        let rows = vec![
            BitVector::parse("100").unwrap(),
            BitVector::parse("101").unwrap(),
            BitVector::parse("110").unwrap(),
        ];
        let inst = SbxorInstance::new(rows, BitVector::parse("011").unwrap(), None).unwrap();
        let f = sat_encode(&inst).unwrap();
        let cnf = tseitin(&f);
        let assign = dpll(&cnf).expect("satisfiable");
        let model = named_model(&cnf, &assign);
        assert!(f.eval(&model));
        // the DIMACS text is deterministic for a fixed instance
        assert_eq!(cnf.to_dimacs(), tseitin(&sat_encode(&inst).unwrap()).to_dimacs());
    }
}
