//! Exact linear programs: model, solution, and solver-independent dual check.
//!
//! Programs are always maximizations. Each constraint carries a unique
//! label, and dual multipliers are keyed by those labels so that an
//! externally produced certificate can be checked without knowing the
//! row order.

use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Write as _};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::{format_rational, Rational};
use crate::simplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Sparse row as `(variable, coefficient)`; repeated indices add up.
    pub row: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    nonneg: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraint {label:?} references variable {index} but the program has {num_vars}")]
    DanglingIndex {
        label: String,
        index: usize,
        num_vars: usize,
    },
    #[error("duplicate constraint label {0:?}")]
    DuplicateLabel(String),
    #[error("objective has {got} coefficients, expected {expected}")]
    ObjectiveLength { got: usize, expected: usize },
    #[error("solver produced an inconsistent certificate: {0}")]
    Inconsistent(String),
}

impl LinearProgram {
    /// A program over `num_vars` variables, all constrained to be nonnegative,
    /// with a zero objective.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            nonneg: vec![true; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg[var]
    }

    pub fn set_objective(&mut self, objective: Vec<Rational>) {
        self.objective = objective;
    }

    pub fn set_objective_coeff(&mut self, var: usize, coeff: Rational) {
        self.objective[var] = coeff;
    }

    pub fn set_free(&mut self, var: usize) {
        self.nonneg[var] = false;
    }

    pub fn add_constraint(
        &mut self,
        label: impl Into<String>,
        row: Vec<(usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) {
        self.constraints.push(Constraint {
            row,
            relation,
            rhs,
            label: label.into(),
        });
    }

    pub fn constraint(&self, label: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.label == label)
    }

    /// Checks the structural invariants: objective length, in-range indices,
    /// and unique labels.
    pub fn validate(&self) -> Result<(), LpError> {
        if self.objective.len() != self.num_vars {
            return Err(LpError::ObjectiveLength {
                got: self.objective.len(),
                expected: self.num_vars,
            });
        }
        let mut seen = HashSet::new();
        for c in &self.constraints {
            if let Some((index, _)) = c.row.iter().find(|(i, _)| *i >= self.num_vars) {
                return Err(LpError::DanglingIndex {
                    label: c.label.clone(),
                    index: *index,
                    num_vars: self.num_vars,
                });
            }
            if !seen.insert(c.label.as_str()) {
                return Err(LpError::DuplicateLabel(c.label.clone()));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum()
    }

    /// Returns the label of the first constraint (or `"x<i> >= 0"`) that `x`
    /// violates, or `None` when `x` is feasible.
    pub fn first_violation(&self, x: &[Rational]) -> Option<String> {
        if x.len() != self.num_vars {
            return Some(format!("point has {} coordinates", x.len()));
        }
        if let Some(i) = (0..self.num_vars).find(|&i| self.nonneg[i] && x[i].is_negative()) {
            return Some(format!("x{i} >= 0"));
        }
        self.constraints.iter().find_map(|c| {
            let lhs: Rational = c.row.iter().map(|(i, a)| a * &x[*i]).sum();
            let ok = match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            };
            (!ok).then(|| c.label.clone())
        })
    }

    /// Line-oriented text dump for debugging. Not a stable format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vars {}", self.num_vars);
        let terms = |row: &mut dyn Iterator<Item = (usize, &Rational)>| {
            row.map(|(i, a)| format!("{} x{}", format_rational(a), i))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let obj = terms(
            &mut self
                .objective
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero()),
        );
        let _ = writeln!(out, "max {obj}");
        for c in &self.constraints {
            let row = terms(&mut c.row.iter().map(|(i, a)| (*i, a)));
            let _ = writeln!(
                out,
                "{}: {} {} {}",
                c.label,
                row,
                c.relation,
                format_rational(&c.rhs)
            );
        }
        let free: Vec<String> = (0..self.num_vars)
            .filter(|&i| !self.nonneg[i])
            .map(|i| format!("x{i}"))
            .collect();
        if !free.is_empty() {
            let _ = writeln!(out, "free {}", free.join(" "));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`solve`]. `value`, `primal` and `dual` are meaningful only
/// when `status` is [`LpStatus::Optimal`]; otherwise they are zero/empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rational,
    pub primal: Vec<Rational>,
    pub dual: BTreeMap<String, Rational>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Solves `lp` exactly with the two-phase simplex method and Bland's rule.
///
/// On an optimal instance the returned primal point, dual multipliers and
/// objective value are re-checked with exact arithmetic before returning.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let sol = simplex::solve_validated(lp);
    if sol.is_optimal() {
        if let Some(label) = lp.first_violation(&sol.primal) {
            return Err(LpError::Inconsistent(format!("primal violates {label}")));
        }
        match check_dual_feasible(lp, &sol.dual) {
            Ok(bound) if bound == sol.value => {}
            Ok(bound) => {
                return Err(LpError::Inconsistent(format!(
                    "dual bound {} differs from primal value {}",
                    format_rational(&bound),
                    format_rational(&sol.value)
                )))
            }
            Err(v) => return Err(LpError::Inconsistent(v.to_string())),
        }
    }
    Ok(sol)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualViolation {
    #[error("multiplier for unknown constraint {0:?}")]
    UnknownLabel(String),
    #[error("multiplier {value} on {relation} constraint {label:?} has the wrong sign")]
    Sign {
        label: String,
        relation: Relation,
        value: String,
    },
    #[error("reduced cost {value} of {kind} variable x{var} violates dual feasibility")]
    ReducedCost {
        var: usize,
        kind: &'static str,
        value: String,
    },
    #[error("malformed program: {0}")]
    Program(#[from] LpError),
}

/// Verifies that `dual` is a feasible solution of the dual of `lp` and
/// returns the implied upper bound on the primal optimum.
///
/// Constraints without an entry in `dual` get multiplier zero. For a
/// maximization, multipliers on `<=` rows must be nonnegative and on `>=`
/// rows nonpositive; the reduced cost `sum_i y_i a_ij - c_j` must be
/// nonnegative for nonnegative variables and zero for free ones. The bound is
/// `sum_i y_i b_i`. Pure arithmetic; no solver involved.
pub fn check_dual_feasible(
    lp: &LinearProgram,
    dual: &BTreeMap<String, Rational>,
) -> Result<Rational, DualViolation> {
    lp.validate()?;
    let known: HashSet<&str> = lp.constraints.iter().map(|c| c.label.as_str()).collect();
    if let Some(label) = dual.keys().find(|l| !known.contains(l.as_str())) {
        return Err(DualViolation::UnknownLabel(label.clone()));
    }

    let mut reduced: Vec<Rational> = lp.objective.iter().map(|c| -c).collect();
    let mut bound = Rational::zero();
    for c in &lp.constraints {
        let Some(y) = dual.get(&c.label).filter(|y| !y.is_zero()) else {
            continue;
        };
        let bad_sign = match c.relation {
            Relation::Le => y.is_negative(),
            Relation::Ge => y.is_positive(),
            Relation::Eq => false,
        };
        if bad_sign {
            return Err(DualViolation::Sign {
                label: c.label.clone(),
                relation: c.relation,
                value: format_rational(y),
            });
        }
        for (i, a) in &c.row {
            reduced[*i] += y * a;
        }
        bound += y * &c.rhs;
    }

    for (var, rc) in reduced.iter().enumerate() {
        let (bad, kind) = if lp.nonneg[var] {
            (rc.is_negative(), "nonnegative")
        } else {
            (!rc.is_zero(), "free")
        };
        if bad {
            return Err(DualViolation::ReducedCost {
                var,
                kind,
                value: format_rational(rc),
            });
        }
    }
    Ok(bound)
}
