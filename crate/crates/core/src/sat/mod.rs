//! Satisfiability reformulation of "does a good `(s, t)`-coloring of
//! `KG(n, r)` exist?", a built-in complete solver, and DIMACS interchange
//! with external solvers.
//!
//! Variable convention: variable `e + 1` is true iff edge `e` (in the frozen
//! edge index order) is red. For every `s`-clique the encoder emits one
//! all-negative clause (at least one blue edge), and for every `t`-clique
//! one all-positive clause (at least one red edge). When `s = t` both
//! clauses are emitted per clique in a single pass.

pub mod solver;

use alloc::string::String;
use alloc::vec::Vec;

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::kneser::KneserGraph;

pub use solver::{Budget, SatOutcome, SolveStats, Status};

/// A CNF formula in DIMACS literal convention (nonzero signed integers).
#[derive(Clone, Debug, Default)]
pub struct CnfFormula {
    /// Number of variables; literals range over `±1..=±variable_count`.
    pub variable_count: usize,
    /// Clauses as lists of literals.
    pub clauses: Vec<Vec<i32>>,
    /// Optional per-variable labels (index = variable - 1), written as
    /// `c edge <idx> = ...` comments into DIMACS output.
    pub var_labels: Vec<String>,
}

impl CnfFormula {
    /// Checks literal ranges and rejects clauses containing both `v` and
    /// `-v`.
    pub fn validate(&self) -> Result<()> {
        for (i, clause) in self.clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > self.variable_count {
                    return Err(Error::Parse {
                        line: 0,
                        message: alloc::format!("clause {i} has out-of-range literal {lit}"),
                    });
                }
                if clause.contains(&-lit) {
                    return Err(Error::Parse {
                        line: 0,
                        message: alloc::format!("clause {i} is tautological"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Serializes to DIMACS CNF: variable-map comments, then the
    /// `p cnf <variables> <clauses>` header, then one clause per line with a
    /// terminating `0`.
    pub fn emit_dimacs<W: core::fmt::Write>(&self, out: &mut W) -> core::fmt::Result {
        for (i, label) in self.var_labels.iter().enumerate() {
            writeln!(out, "c edge {i} = {label}")?;
        }
        writeln!(out, "p cnf {} {}", self.variable_count, self.clauses.len())?;
        for clause in &self.clauses {
            for &lit in clause {
                write!(out, "{lit} ")?;
            }
            writeln!(out, "0")?;
        }
        Ok(())
    }

    /// [`CnfFormula::emit_dimacs`] into a fresh string.
    pub fn to_dimacs_string(&self) -> String {
        let mut s = String::new();
        self.emit_dimacs(&mut s).expect("string write cannot fail");
        s
    }

    /// Solves with the built-in CDCL solver. A SAT answer is re-checked
    /// against every clause before being reported.
    pub fn solve(&self, budget: &Budget) -> Result<SatOutcome> {
        self.validate()?;
        let mut s = solver::Solver::new(self.variable_count);
        for clause in &self.clauses {
            s.add_clause(clause.iter().copied());
        }
        let outcome = s.solve(budget);
        if let Some(model) = &outcome.model {
            if let Some(violated) = self.first_violated_clause(model) {
                return Err(Error::ModelInconsistent { clause: violated });
            }
        }
        Ok(outcome)
    }

    /// Index of the first clause the assignment falsifies, if any.
    pub fn first_violated_clause(&self, model: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|clause| {
            !clause.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize - 1;
                model.get(v).map_or(false, |&val| val == (lit > 0))
            })
        })
    }
}

/// Encodes "no red `K_s`, no blue `K_t`" over the edges of `g`.
///
/// Clause order follows clique enumeration order. For `s = t` each clique
/// contributes its all-negative clause immediately followed by its
/// all-positive clause; otherwise all `s`-clique clauses precede all
/// `t`-clique clauses.
///
/// A complete host graph is the degenerate case `r = 1`.
pub fn encode(g: &KneserGraph, s: usize, t: usize) -> Result<CnfFormula> {
    if s < 2 || t < 2 {
        return Err(Error::InvalidParameter("encode needs s, t >= 2"));
    }
    let mut f = CnfFormula {
        variable_count: g.edge_count(),
        clauses: Vec::new(),
        var_labels: Vec::with_capacity(g.edge_count()),
    };
    for e in 0..g.edge_count() as u32 {
        let (u, v) = g.edge(e);
        f.var_labels
            .push(alloc::format!("{}|{}", g.vertex(u), g.vertex(v)));
    }

    let clique_vars = |ranks: &[u32]| -> Vec<i32> {
        let mut vars = Vec::with_capacity(ranks.len() * (ranks.len() - 1) / 2);
        for (i, &u) in ranks.iter().enumerate() {
            for &v in &ranks[i + 1..] {
                let e = g.edge_index(u, v).expect("clique pairs are edges");
                vars.push(e as i32 + 1);
            }
        }
        vars
    };

    if s == t {
        for ranks in g.cliques(s) {
            let vars = clique_vars(&ranks);
            f.clauses.push(vars.iter().map(|&v| -v).collect());
            f.clauses.push(vars);
        }
    } else {
        for ranks in g.cliques(s) {
            let vars = clique_vars(&ranks);
            f.clauses.push(vars.iter().map(|&v| -v).collect());
        }
        for ranks in g.cliques(t) {
            f.clauses.push(clique_vars(&ranks));
        }
    }
    Ok(f)
}

/// Decodes a satisfying assignment into an edge coloring: edge `e` is red
/// iff variable `e + 1` is true. The model is checked against the formula
/// first.
pub fn decode(f: &CnfFormula, model: &[bool], g: &KneserGraph) -> Result<EdgeColoring> {
    if model.len() != f.variable_count || f.variable_count != g.edge_count() {
        return Err(Error::WrongCardinality {
            expected: g.edge_count(),
            actual: model.len(),
        });
    }
    if let Some(clause) = f.first_violated_clause(model) {
        return Err(Error::ModelInconsistent { clause });
    }
    let mut coloring = EdgeColoring::uniform(g.clone(), Color::Blue);
    for (e, &red) in model.iter().enumerate() {
        if red {
            coloring.set(e as u32, Color::Red);
        }
    }
    Ok(coloring)
}

/// Parses a solver model in SAT-competition output format.
///
/// Accepts `v` value lines (`v 1 -2 3 ... 0`), skips `c` comments, and
/// honors `s SATISFIABLE` / `s UNSATISFIABLE` status lines (the latter is
/// an error: there is no model to parse). Every variable in
/// `1..=variable_count` must receive a value.
pub fn parse_dimacs_model(source: &str, variable_count: usize) -> Result<Vec<bool>> {
    let mut values: Vec<Option<bool>> = alloc::vec![None; variable_count];
    let mut saw_values = false;
    for (lineno, line) in source.lines().enumerate() {
        let line = line.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(status) = line.strip_prefix('s') {
            if status.trim() == "UNSATISFIABLE" {
                return Err(Error::Parse {
                    line: lineno,
                    message: String::from("model file declares UNSATISFIABLE"),
                });
            }
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line).trim();
        for tok in body.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: alloc::format!("bad literal token {tok:?}"),
            })?;
            if lit == 0 {
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > variable_count {
                return Err(Error::Parse {
                    line: lineno,
                    message: alloc::format!("literal {lit} exceeds {variable_count} variables"),
                });
            }
            let value = lit > 0;
            if let Some(prev) = values[var - 1] {
                if prev != value {
                    return Err(Error::Parse {
                        line: lineno,
                        message: alloc::format!("variable {var} assigned both polarities"),
                    });
                }
            }
            values[var - 1] = Some(value);
            saw_values = true;
        }
    }
    if !saw_values {
        return Err(Error::Parse {
            line: 0,
            message: String::from("no value lines found"),
        });
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| Error::Parse {
                line: 0,
                message: alloc::format!("variable {} never assigned", i + 1),
            })
        })
        .collect()
}

/// Serializes an assignment as a model file (`s SATISFIABLE` plus `v`
/// lines), the inverse of [`parse_dimacs_model`].
pub fn emit_dimacs_model<W: core::fmt::Write>(model: &[bool], out: &mut W) -> core::fmt::Result {
    writeln!(out, "s SATISFIABLE")?;
    let mut col = 0usize;
    write!(out, "v")?;
    for (i, &value) in model.iter().enumerate() {
        let lit = if value { i as i64 + 1 } else { -(i as i64 + 1) };
        write!(out, " {lit}")?;
        col += 1;
        if col % 20 == 0 && i + 1 != model.len() {
            writeln!(out)?;
            write!(out, "v")?;
        }
    }
    writeln!(out, " 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn encode_counts() {
        let g8 = KneserGraph::build(8, 2).unwrap();
        let f8 = encode(&g8, 3, 3).unwrap();
        assert_eq!(f8.variable_count, 210);
        assert_eq!(f8.clauses.len(), 840);
        f8.validate().unwrap();

        let g9 = KneserGraph::build(9, 2).unwrap();
        let f9 = encode(&g9, 3, 3).unwrap();
        assert_eq!(f9.variable_count, 378);
        assert_eq!(f9.clauses.len(), 2520);
    }

    #[test]
    fn encode_clause_structure() {
        let g = KneserGraph::build(6, 2).unwrap();
        let f = encode(&g, 3, 3).unwrap();
        // Pairs: negative clause then positive clause per clique.
        for pair in f.clauses.chunks(2) {
            assert_eq!(pair[0].len(), 3);
            assert!(pair[0].iter().all(|&l| l < 0));
            assert_eq!(
                pair[1],
                pair[0].iter().map(|&l| -l).collect::<Vec<i32>>()
            );
        }
        // Asymmetric: negatives first, then positives.
        let f34 = encode(&g, 2, 3).unwrap();
        let negs = f34.clauses.iter().take_while(|c| c[0] < 0).count();
        assert_eq!(negs, g.edge_count()); // one per 2-clique = per edge
        assert!(f34.clauses[negs..].iter().all(|c| c.iter().all(|&l| l > 0)));
    }

    #[test]
    fn dimacs_header_and_shape() {
        let g = KneserGraph::build(8, 2).unwrap();
        let f = encode(&g, 3, 3).unwrap();
        let text = f.to_dimacs_string();
        let header = text
            .lines()
            .find(|l| l.starts_with("p cnf"))
            .expect("header present");
        assert_eq!(header, "p cnf 210 840");
        assert!(text.starts_with("c edge 0 = {1,2}|{3,4}"));
        let clause_lines = text
            .lines()
            .filter(|l| !l.starts_with('c') && !l.starts_with('p'))
            .count();
        assert_eq!(clause_lines, 840);
        assert!(text
            .lines()
            .filter(|l| !l.starts_with('c') && !l.starts_with('p'))
            .all(|l| l.trim_end().ends_with(" 0")));

        let empty = CnfFormula::default();
        assert_eq!(empty.to_dimacs_string(), "p cnf 0 0\n");
    }

    #[test]
    fn model_roundtrip() {
        let model = vec![true, false, true, true, false];
        let mut text = String::new();
        emit_dimacs_model(&model, &mut text).unwrap();
        let parsed = parse_dimacs_model(&text, 5).unwrap();
        assert_eq!(parsed, model);

        assert!(parse_dimacs_model("s UNSATISFIABLE\n", 3).is_err());
        assert!(parse_dimacs_model("v 1 2\n", 3).is_err()); // var 3 missing
        let err = parse_dimacs_model("v 1 x 0\n", 3).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn decode_all_true_unconstrained() {
        let g = KneserGraph::build(6, 2).unwrap();
        let f = CnfFormula {
            variable_count: g.edge_count(),
            clauses: Vec::new(),
            var_labels: Vec::new(),
        };
        let model = vec![true; g.edge_count()];
        let coloring = decode(&f, &model, &g).unwrap();
        assert_eq!(coloring.red_count(), g.edge_count());
    }

    #[test]
    fn decode_rejects_violating_model() {
        let g = KneserGraph::build(6, 2).unwrap();
        let f = encode(&g, 3, 3).unwrap();
        let model = vec![true; g.edge_count()]; // all red: violates a clause
        assert!(matches!(
            decode(&f, &model, &g),
            Err(Error::ModelInconsistent { .. })
        ));
    }
}
