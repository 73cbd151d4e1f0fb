//! Symmetry-reduced LP for the first extension of the odd cycle game, and
//! its closed-form dual certificate.
//!
//! Under output flips, cyclic shifts of the questions, and the exchange of
//! the two copied players, an optimal behavior is described by
//! `r(b,c|j,k)`: the probability (rescaled so each question pair sums to 1)
//! that B and C answer `b`, `c` relative to A's answer when their questions
//! are `j`, `k` relative to A's question. The reduced program maximizes
//! `(r(0,0|0,0) + r(1,1|1,1)) / 2` subject to four constraint families,
//! whose labels double as the names of the dual variables:
//!
//! * `n(j,k)`: `sum_{b,c} r(b,c|j,k) = 1`;
//! * `s(b,c|j,k)`: `r(b,c|j,k) - r(c,b|k,j) = 0`, omitted when `b = c`
//!   and `j = k`;
//! * `y(d|j,k)`, `1 <= j < n`: the B,C marginal does not depend on A's
//!   question, `r(0,d|0,k) + r(1,!d|0,k) - r(0,d|j,j+k) - r(1,!d|j,j+k) = 0`;
//! * `z(d|j,k)`, `1 <= j < n`: the A,C marginal does not depend on B's
//!   question, `r(0,d|0,k) + r(1,d|0,k) - r(0,d|j,k) - r(1,d|j,k) = 0`.
//!
//! All index arithmetic is mod `n`. Certificate values are stored scaled by
//! `2n` relative to the LP multipliers, so the dual objective is
//! `sum n(j,k) / 2n` and the dual constraints read `mu >= n` on the two
//! objective columns and `mu >= 0` elsewhere.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::lp::{self, LinearProgram, LpError, LpStatus, Relation};
use crate::rational::{format_rational, int, rat, sign_pow, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OddCycleError {
    #[error("cycle length must be odd and at least 3, got {0}")]
    BadLength(usize),
    #[error("{var} assigned twice: {first} vs {second}")]
    Collision {
        var: String,
        first: String,
        second: String,
    },
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("certificate infeasible at mu({b},{c}|{j},{k}) = {value}, need >= {required}")]
    Infeasible {
        b: usize,
        c: usize,
        j: usize,
        k: usize,
        value: String,
        required: String,
    },
    #[error("{vars} reduced variables exceed the LP budget of {budget}")]
    BudgetExceeded { vars: usize, budget: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("reduced LP ended {0:?}; it is always feasible and bounded")]
    NotOptimal(LpStatus),
}

pub fn check_length(n: usize) -> Result<(), OddCycleError> {
    if n < 3 || n.is_multiple_of(2) {
        Err(OddCycleError::BadLength(n))
    } else {
        Ok(())
    }
}

/// LP column of `r(b,c|j,k)`: answers fastest, then `k`, then `j`.
pub fn reduced_index(n: usize, b: usize, c: usize, j: usize, k: usize) -> usize {
    (j * n + k) * 4 + b * 2 + c
}

pub fn norm_label(j: usize, k: usize) -> String {
    format!("n({j},{k})")
}

pub fn sym_label(b: usize, c: usize, j: usize, k: usize) -> String {
    format!("s({b},{c}|{j},{k})")
}

pub fn a_to_bc_label(d: usize, j: usize, k: usize) -> String {
    format!("y({d}|{j},{k})")
}

pub fn b_to_ac_label(d: usize, j: usize, k: usize) -> String {
    format!("z({d}|{j},{k})")
}

pub fn build_reduced_lp(n: usize) -> Result<LinearProgram, OddCycleError> {
    check_length(n)?;
    let r = |b, c, j, k| reduced_index(n, b, c, j, k);
    let mut lp = LinearProgram::new(4 * n * n);
    lp.set_objective_coeff(r(0, 0, 0, 0), rat(1, 2));
    lp.set_objective_coeff(r(1, 1, 1, 1), rat(1, 2));

    for j in 0..n {
        for k in 0..n {
            let row = (0..4).map(|bc| (r(bc / 2, bc % 2, j, k), int(1))).collect();
            lp.add_constraint(norm_label(j, k), row, Relation::Eq, int(1));
        }
    }
    for b in 0..2 {
        for c in 0..2 {
            for j in 0..n {
                for k in 0..n {
                    if b == c && j == k {
                        continue;
                    }
                    let row = vec![(r(b, c, j, k), int(1)), (r(c, b, k, j), int(-1))];
                    lp.add_constraint(sym_label(b, c, j, k), row, Relation::Eq, int(0));
                }
            }
        }
    }
    for d in 0..2 {
        for j in 1..n {
            for k in 0..n {
                let jk = (j + k) % n;
                let row = vec![
                    (r(0, d, 0, k), int(1)),
                    (r(1, 1 - d, 0, k), int(1)),
                    (r(0, d, j, jk), int(-1)),
                    (r(1, 1 - d, j, jk), int(-1)),
                ];
                lp.add_constraint(a_to_bc_label(d, j, k), row, Relation::Eq, int(0));
                let row = vec![
                    (r(0, d, 0, k), int(1)),
                    (r(1, d, 0, k), int(1)),
                    (r(0, d, j, k), int(-1)),
                    (r(1, d, j, k), int(-1)),
                ];
                lp.add_constraint(b_to_ac_label(d, j, k), row, Relation::Eq, int(0));
            }
        }
    }
    Ok(lp)
}

/// Reduced variables `r(b,c|j,k)`, dense in [`reduced_index`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedVars {
    pub n: usize,
    values: Vec<Rational>,
}

impl ReducedVars {
    pub fn get(&self, b: usize, c: usize, j: usize, k: usize) -> &Rational {
        &self.values[reduced_index(self.n, b, c, j, k)]
    }
}

#[derive(Debug, Clone)]
pub struct ReducedSolution {
    pub value: Rational,
    pub vars: ReducedVars,
    pub dual: BTreeMap<String, Rational>,
}

pub fn reduced_ns_value(n: usize, var_budget: usize) -> Result<ReducedSolution, OddCycleError> {
    check_length(n)?;
    if 4 * n * n > var_budget {
        return Err(OddCycleError::BudgetExceeded {
            vars: 4 * n * n,
            budget: var_budget,
        });
    }
    let lp = build_reduced_lp(n)?;
    let sol = lp::solve(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(OddCycleError::NotOptimal(sol.status));
    }
    Ok(ReducedSolution {
        value: sol.value,
        vars: ReducedVars {
            n,
            values: sol.primal,
        },
        dual: sol.dual,
    })
}

/// Dual variables of the reduced LP, scaled by `2n`. Absent entries are 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualCertificate {
    pub n: usize,
    /// `n(j,k)`
    pub normalization: BTreeMap<(usize, usize), Rational>,
    /// `s(b,c|j,k)`
    pub symmetry: BTreeMap<(usize, usize, usize, usize), Rational>,
    /// `y(d|j,k)`
    pub a_to_bc: BTreeMap<(usize, usize, usize), Rational>,
    /// `z(d|j,k)`
    pub b_to_ac: BTreeMap<(usize, usize, usize), Rational>,
}

fn get<K: Ord>(m: &BTreeMap<K, Rational>, k: &K) -> Rational {
    m.get(k).cloned().unwrap_or_else(Rational::zero)
}

impl DualCertificate {
    pub fn empty(n: usize) -> DualCertificate {
        DualCertificate {
            n,
            ..Default::default()
        }
    }

    /// Dual objective `sum n(j,k) / 2n`.
    pub fn objective(&self) -> Rational {
        let total: Rational = self.normalization.values().sum();
        total / int(2 * self.n as i64)
    }

    /// Checks index ranges against the reduced LP's constraint set.
    pub fn check_structure(&self) -> Result<(), OddCycleError> {
        let n = self.n;
        if n < 3 || n.is_multiple_of(2) {
            return Err(OddCycleError::Malformed(format!("cycle length {n}")));
        }
        let bad = |what: String| Err(OddCycleError::Malformed(what));
        for &(j, k) in self.normalization.keys() {
            if j >= n || k >= n {
                return bad(norm_label(j, k));
            }
        }
        for &(b, c, j, k) in self.symmetry.keys() {
            if b > 1 || c > 1 || j >= n || k >= n {
                return bad(sym_label(b, c, j, k));
            }
            if b == c && j == k {
                return bad(format!("{} is a trivial constraint", sym_label(b, c, j, k)));
            }
        }
        for (family, map) in [("y", &self.a_to_bc), ("z", &self.b_to_ac)] {
            for &(d, j, k) in map.keys() {
                if d > 1 || j == 0 || j >= n || k >= n {
                    return bad(format!("{family}({d}|{j},{k})"));
                }
            }
        }
        Ok(())
    }

    /// LP multipliers keyed by [`build_reduced_lp`] labels (values / 2n).
    pub fn to_multipliers(&self) -> BTreeMap<String, Rational> {
        let scale = int(2 * self.n as i64);
        let mut out = BTreeMap::new();
        for (&(j, k), v) in &self.normalization {
            out.insert(norm_label(j, k), v / &scale);
        }
        for (&(b, c, j, k), v) in &self.symmetry {
            out.insert(sym_label(b, c, j, k), v / &scale);
        }
        for (&(d, j, k), v) in &self.a_to_bc {
            out.insert(a_to_bc_label(d, j, k), v / &scale);
        }
        for (&(d, j, k), v) in &self.b_to_ac {
            out.insert(b_to_ac_label(d, j, k), v / &scale);
        }
        out
    }
}

/// Accumulates certificate entries, remembering which formula set each one.
struct Builder {
    n: usize,
    cert: DualCertificate,
    origin: BTreeMap<String, (Rational, &'static str)>,
}

#[derive(Clone, Copy)]
enum Var {
    Norm(usize, usize),
    Sym(usize, usize, usize, usize),
    AToBc(usize, usize, usize),
    BToAc(usize, usize, usize),
}

impl Builder {
    fn put(&mut self, var: Var, value: Rational, source: &'static str) -> Result<(), OddCycleError> {
        let n = self.n;
        let var = match var {
            Var::Norm(j, k) => Var::Norm(j % n, k % n),
            Var::Sym(b, c, j, k) => Var::Sym(b, c, j % n, k % n),
            Var::AToBc(d, j, k) => Var::AToBc(d, j % n, k % n),
            Var::BToAc(d, j, k) => Var::BToAc(d, j % n, k % n),
        };
        let label = match var {
            Var::Norm(j, k) => norm_label(j, k),
            Var::Sym(b, c, j, k) => sym_label(b, c, j, k),
            Var::AToBc(d, j, k) => a_to_bc_label(d, j, k),
            Var::BToAc(d, j, k) => b_to_ac_label(d, j, k),
        };
        if let Some((old, first)) = self.origin.get(&label) {
            if *old != value {
                return Err(OddCycleError::Collision {
                    var: label,
                    first: format!("{first} = {}", format_rational(old)),
                    second: format!("{source} = {}", format_rational(&value)),
                });
            }
            return Ok(());
        }
        self.origin.insert(label, (value.clone(), source));
        if value.is_zero() {
            return Ok(());
        }
        let c = &mut self.cert;
        match var {
            Var::Norm(j, k) => c.normalization.insert((j, k), value),
            Var::Sym(b, cc, j, k) => c.symmetry.insert((b, cc, j, k), value),
            Var::AToBc(d, j, k) => c.a_to_bc.insert((d, j, k), value),
            Var::BToAc(d, j, k) => c.b_to_ac.insert((d, j, k), value),
        };
        Ok(())
    }
}

/// The closed-form dual solution for cycle length `n`.
///
/// Every listed entry is materialized with indices reduced mod `n`; empty
/// ranges contribute nothing. Two formulas assigning different values to the
/// same variable is an error naming both.
pub fn closed_form_certificate(n: usize) -> Result<DualCertificate, OddCycleError> {
    check_length(n)?;
    let mut b = Builder {
        n,
        cert: DualCertificate::empty(n),
        origin: BTreeMap::new(),
    };
    let ni = n as i64;
    let half = |x: i64| rat(x, 2);
    // -n + k + 5/2 + (-1)^k / 2
    let rising = |k: usize| int(-ni + k as i64) + half(5) + sign_pow(k) / int(2);
    // n - k - 3/2 + (-1)^k / 2
    let falling = |k: usize| int(ni - k as i64) - half(3) + sign_pow(k) / int(2);

    b.put(Var::Norm(0, 0), int(2 * ni - 1), "n(0,0) = 2n-1")?;

    b.put(Var::Sym(0, 1, 0, 0), half(3 * ni), "s(0,1|0,0) = 3n/2")?;
    b.put(Var::Sym(0, 1, 1, 0), int(1 - ni), "s(0,1|1,0) = 1-n")?;
    b.put(Var::Sym(0, 0, 0, 1), int(1 - ni), "s(0,0|0,1) = 1-n")?;
    b.put(Var::Sym(0, 1, 1, 1), half(-ni), "s(0,1|1,1) = -n/2")?;
    for j in 1..n {
        b.put(Var::Sym(0, 0, j, j + 1), sign_pow(j), "s(0,0|j,j+1) = (-1)^j")?;
        b.put(Var::Sym(0, 1, j, j + 1), -sign_pow(j), "s(0,1|j,j+1) = -(-1)^j")?;
    }

    b.put(Var::AToBc(0, 1, 0), int(3 - 2 * ni), "y(0|1,0) = 3-2n")?;
    for k in 1..n {
        b.put(Var::AToBc(0, 1, k), rising(k), "y(0|1,k) = -n+k+5/2+(-1)^k/2")?;
    }
    b.put(Var::AToBc(1, 1, 0), int(3) - half(3 * ni), "y(1|1,0) = 3-3n/2")?;
    b.put(Var::AToBc(1, 1, 1), int(4 - ni), "y(1|1,1) = 4-n")?;
    for j in 2..n {
        b.put(Var::AToBc(1, j, 1), -sign_pow(j), "y(1|j,1) = -(-1)^j")?;
    }
    for k in 2..n - 1 {
        b.put(Var::AToBc(1, 1, k), rising(k), "y(1|1,k) = -n+k+5/2+(-1)^k/2")?;
    }
    b.put(Var::AToBc(1, 1, n - 1), int(3 - ni), "y(1|1,n-1) = 3-n")?;
    for j in 2..n {
        b.put(Var::AToBc(1, j, n - 1), int(1) - sign_pow(j), "y(1|j,n-1) = 1-(-1)^j")?;
    }

    b.put(Var::BToAc(0, 1, 0), int(ni - 3), "z(0|1,0) = n-3")?;
    b.put(Var::BToAc(0, 1, 1), int(2 * ni - 3), "z(0|1,1) = 2n-3")?;
    b.put(Var::BToAc(0, 1, 2), int(ni - 4), "z(0|1,2) = n-4")?;
    for j in 2..n {
        b.put(Var::BToAc(0, j, j - 1), int(-1), "z(0|j,j-1) = -1")?;
        b.put(Var::BToAc(0, j, j + 1), sign_pow(j), "z(0|j,j+1) = (-1)^j")?;
    }
    for k in 3..n {
        b.put(Var::BToAc(0, 1, k), falling(k), "z(0|1,k) = n-k-3/2+(-1)^k/2")?;
    }
    for j in 1..n {
        b.put(Var::BToAc(1, j, j - 1), int(-1) + sign_pow(j), "z(1|j,j-1) = -1+(-1)^j")?;
    }
    for k in 1..n {
        b.put(Var::BToAc(1, 1, k), falling(k), "z(1|1,k) = n-k-3/2+(-1)^k/2")?;
    }
    Ok(b.cert)
}

/// Reduced cost (scaled by `2n`) of column `r(b,c|j,k)` under `cert`:
///
/// `n(j,k) + s(b,c|j,k) - s(c,b|k,j)`
/// `+ [j = 0] sum_{j'=1}^{n-1} (y(b^c|j',k) + z(c|j',k))`
/// `- [j != 0] (y(b^c|j,k-j) + z(c|j,k))`.
pub fn mu(cert: &DualCertificate, b: usize, c: usize, j: usize, k: usize) -> Rational {
    let n = cert.n;
    let d = b ^ c;
    let mut v = get(&cert.normalization, &(j, k)) + get(&cert.symmetry, &(b, c, j, k))
        - get(&cert.symmetry, &(c, b, k, j));
    if j == 0 {
        for jp in 1..n {
            v += get(&cert.a_to_bc, &(d, jp, k)) + get(&cert.b_to_ac, &(c, jp, k));
        }
    } else {
        v -= get(&cert.a_to_bc, &(d, j, (k + n - j) % n)) + get(&cert.b_to_ac, &(c, j, k));
    }
    v
}

/// Lower bound the dual constraint places on `mu(b,c|j,k)`.
pub fn mu_requirement(n: usize, b: usize, c: usize, j: usize, k: usize) -> Rational {
    if (b, c, j, k) == (0, 0, 0, 0) || (b, c, j, k) == (1, 1, 1, 1) {
        int(n as i64)
    } else {
        Rational::zero()
    }
}

/// The reduced costs the closed-form certificate is known to produce:
/// `n` on the two objective columns, `2n` at `(0,1|0,0)`, `2n-2` at
/// `(1,0|0,1)`, `1+(-1)^j` at `(0,0|j,j-1)` and `1+(-1)^k` at
/// `(1,1|k+1,k)` for `1 <= j,k < n`, and zero elsewhere.
pub fn expected_mu(n: usize, b: usize, c: usize, j: usize, k: usize) -> Rational {
    let ni = n as i64;
    match (b, c) {
        (0, 0) if j == 0 && k == 0 => int(ni),
        (1, 1) if j == 1 && k == 1 => int(ni),
        (0, 1) if j == 0 && k == 0 => int(2 * ni),
        (1, 0) if j == 0 && k == 1 => int(2 * ni - 2),
        (0, 0) if j >= 1 && k == j - 1 => int(1) + sign_pow(j),
        (1, 1) if k >= 1 && j == (k + 1) % n => int(1) + sign_pow(k),
        _ => Rational::zero(),
    }
}

/// A reduced cost that satisfies the dual constraint but differs from the
/// known closed-form pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuMismatch {
    pub b: usize,
    pub c: usize,
    pub j: usize,
    pub k: usize,
    pub got: Rational,
    pub expected: Rational,
}

impl fmt::Display for MuMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mu({},{}|{},{}) = {}, pattern says {}",
            self.b,
            self.c,
            self.j,
            self.k,
            format_rational(&self.got),
            format_rational(&self.expected)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    /// Implied upper bound on the no-signaling value.
    pub bound: Rational,
    /// Departures from the closed-form reduced-cost pattern. These do not
    /// affect validity.
    pub warnings: Vec<MuMismatch>,
}

/// Checks every dual constraint of the reduced LP by direct evaluation of
/// [`mu`] and returns the implied bound. No LP is solved.
pub fn verify_certificate(cert: &DualCertificate) -> Result<CertificateReport, OddCycleError> {
    cert.check_structure()?;
    let n = cert.n;
    let mut warnings = Vec::new();
    for b in 0..2 {
        for c in 0..2 {
            for j in 0..n {
                for k in 0..n {
                    let value = mu(cert, b, c, j, k);
                    let required = mu_requirement(n, b, c, j, k);
                    if value < required {
                        return Err(OddCycleError::Infeasible {
                            b,
                            c,
                            j,
                            k,
                            value: format_rational(&value),
                            required: format_rational(&required),
                        });
                    }
                    let expected = expected_mu(n, b, c, j, k);
                    if value != expected {
                        warnings.push(MuMismatch {
                            b,
                            c,
                            j,
                            k,
                            got: value,
                            expected,
                        });
                    }
                }
            }
        }
    }
    Ok(CertificateReport {
        bound: cert.objective(),
        warnings,
    })
}

/// `1 - 1/(2n)`.
pub fn odd_cycle_value(n: usize) -> Rational {
    int(1) - rat(1, 2 * n as i64)
}
