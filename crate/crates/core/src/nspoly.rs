//! No-signaling behaviors and the linear program over them.
//!
//! A behavior is a table `p(a|q)` over every joint answer and joint question.
//! Cells are laid out with answers varying fastest and questions slower,
//! both row-major in player order; LP variable `i` is table cell `i`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::game::{decode_tuple, encode_tuple, tuple_count, tuples, Game};
use crate::lp::{self, LinearProgram, LpError, LpStatus, Relation};
use crate::rational::{format_rational, int, max_abs, rat, Rational};

/// Default cap on LP variables (behavior cells) for [`ns_value`].
pub const DEFAULT_CELL_BUDGET: usize = 1 << 14;

/// Alphabet sizes shared by a game and its behaviors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub question_sizes: Vec<usize>,
    pub answer_sizes: Vec<usize>,
}

impl Shape {
    pub fn new(question_sizes: Vec<usize>, answer_sizes: Vec<usize>) -> Shape {
        assert_eq!(question_sizes.len(), answer_sizes.len(), "one size per player");
        Shape {
            question_sizes,
            answer_sizes,
        }
    }

    pub fn of(g: &Game) -> Shape {
        Shape::new(g.question_sizes().to_vec(), g.answer_sizes().to_vec())
    }

    pub fn players(&self) -> usize {
        self.question_sizes.len()
    }

    pub fn answer_tuples(&self) -> usize {
        tuple_count(&self.answer_sizes)
    }

    pub fn question_tuples(&self) -> usize {
        tuple_count(&self.question_sizes)
    }

    pub fn cells(&self) -> usize {
        self.answer_tuples() * self.question_tuples()
    }

    pub fn cell(&self, a: &[usize], q: &[usize]) -> usize {
        encode_tuple(&self.question_sizes, q) * self.answer_tuples()
            + encode_tuple(&self.answer_sizes, a)
    }

    /// `(answers, questions)` of a cell index.
    pub fn cell_tuples(&self, cell: usize) -> (Vec<usize>, Vec<usize>) {
        let at = self.answer_tuples();
        (
            decode_tuple(&self.answer_sizes, cell % at),
            decode_tuple(&self.question_sizes, cell / at),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BehaviorError {
    #[error("behavior table has {got} cells, shape needs {expected}")]
    Incomplete { got: usize, expected: usize },
    #[error("cell answers {a:?} questions {q:?} given twice")]
    DuplicateCell { a: Vec<usize>, q: Vec<usize> },
    #[error("cell answers {a:?} questions {q:?} lies outside the shape")]
    OutOfShape { a: Vec<usize>, q: Vec<usize> },
    #[error("parties {x} and {y} need two questions and binary answers for a CHSH expectation")]
    NotChshPair { x: usize, y: usize },
    #[error("marginal on parties {x},{y} depends on the other parties' questions {q_other:?}")]
    Signaling {
        x: usize,
        y: usize,
        q_other: Vec<usize>,
    },
}

/// The first way a table fails to be a no-signaling behavior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BehaviorViolation {
    Positivity {
        a: Vec<usize>,
        q: Vec<usize>,
        value: Rational,
    },
    Normalization {
        q: Vec<usize>,
        sum: Rational,
    },
    /// The marginal on the parties outside `subset` at answers `a_rest`,
    /// questions `q_rest` differs between the `subset` questions `q_first`
    /// and `q_other`. Party indices are 0-based.
    Signaling {
        subset: Vec<usize>,
        a_rest: Vec<usize>,
        q_rest: Vec<usize>,
        q_first: Vec<usize>,
        q_other: Vec<usize>,
    },
}

impl fmt::Display for BehaviorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BehaviorViolation::Positivity { a, q, value } => {
                write!(f, "p({a:?}|{q:?}) = {} is negative", format_rational(value))
            }
            BehaviorViolation::Normalization { q, sum } => {
                write!(f, "probabilities for questions {q:?} sum to {}", format_rational(sum))
            }
            BehaviorViolation::Signaling {
                subset,
                a_rest,
                q_rest,
                q_first,
                q_other,
            } => write!(
                f,
                "parties {subset:?} signal: marginal at answers {a_rest:?} questions {q_rest:?} \
                 differs between their questions {q_first:?} and {q_other:?}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Behavior {
    shape: Shape,
    table: Vec<Rational>,
}

impl Behavior {
    pub fn from_table(shape: Shape, table: Vec<Rational>) -> Result<Behavior, BehaviorError> {
        if table.len() != shape.cells() {
            return Err(BehaviorError::Incomplete {
                got: table.len(),
                expected: shape.cells(),
            });
        }
        Ok(Behavior { shape, table })
    }

    /// Builds a behavior from `(answers, questions, value)` entries, which
    /// must cover every cell exactly once.
    pub fn from_entries(
        shape: Shape,
        entries: impl IntoIterator<Item = (Vec<usize>, Vec<usize>, Rational)>,
    ) -> Result<Behavior, BehaviorError> {
        let fits = |t: &[usize], s: &[usize]| t.len() == s.len() && t.iter().zip(s).all(|(x, y)| x < y);
        let mut table: Vec<Option<Rational>> = vec![None; shape.cells()];
        for (a, q, v) in entries {
            if !fits(&a, &shape.answer_sizes) || !fits(&q, &shape.question_sizes) {
                return Err(BehaviorError::OutOfShape { a, q });
            }
            let slot = &mut table[shape.cell(&a, &q)];
            if slot.is_some() {
                return Err(BehaviorError::DuplicateCell { a, q });
            }
            *slot = Some(v);
        }
        let got = table.iter().filter(|c| c.is_some()).count();
        let table: Option<Vec<Rational>> = table.into_iter().collect();
        match table {
            Some(table) => Ok(Behavior { shape, table }),
            None => Err(BehaviorError::Incomplete {
                got,
                expected: shape.cells(),
            }),
        }
    }

    /// `p = 1 / (number of answer tuples)` everywhere.
    pub fn uniform(shape: Shape) -> Behavior {
        let v = rat(1, shape.answer_tuples() as i64);
        let table = vec![v; shape.cells()];
        Behavior { shape, table }
    }

    /// Every player answers by a fixed function of their own question.
    pub fn deterministic(shape: Shape, answer: impl Fn(usize, usize) -> usize) -> Behavior {
        let mut table = vec![Rational::zero(); shape.cells()];
        for q in tuples(&shape.question_sizes) {
            let a: Vec<usize> = q.iter().enumerate().map(|(i, &qi)| answer(i, qi)).collect();
            table[shape.cell(&a, &q)] = Rational::one();
        }
        Behavior { shape, table }
    }

    /// The two-party box `p(a1,a2|q1,q2) = 1/2 [a1 xor a2 = q1 and q2]`.
    pub fn pr_box() -> Behavior {
        let shape = Shape::new(vec![2, 2], vec![2, 2]);
        let mut table = vec![Rational::zero(); shape.cells()];
        for q in tuples(&[2, 2]) {
            for a in tuples(&[2, 2]) {
                if (a[0] ^ a[1]) == (q[0] & q[1]) {
                    table[shape.cell(&a, &q)] = rat(1, 2);
                }
            }
        }
        Behavior { shape, table }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn table(&self) -> &[Rational] {
        &self.table
    }

    pub fn get(&self, a: &[usize], q: &[usize]) -> &Rational {
        &self.table[self.shape.cell(a, q)]
    }

    pub fn set(&mut self, a: &[usize], q: &[usize], v: Rational) {
        let i = self.shape.cell(a, q);
        self.table[i] = v;
    }

    /// All cells as `(answers, questions, value)` in layout order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, Vec<usize>, &Rational)> + '_ {
        self.table.iter().enumerate().map(|(i, v)| {
            let (a, q) = self.shape.cell_tuples(i);
            (a, q, v)
        })
    }

    /// Sum of `p(a|q)` over the answers of the parties in `subset`, with the
    /// remaining parties' answers fixed by `a` (entries for `subset` are
    /// ignored).
    fn marginal(&self, subset: &[bool], a: &[usize], q: &[usize]) -> Rational {
        let free: Vec<usize> = (0..self.shape.players()).filter(|&i| subset[i]).collect();
        let sizes: Vec<usize> = free.iter().map(|&i| self.shape.answer_sizes[i]).collect();
        let mut a = a.to_vec();
        let mut total = Rational::zero();
        for sub in tuples(&sizes) {
            for (&i, &v) in free.iter().zip(&sub) {
                a[i] = v;
            }
            total += self.get(&a, q);
        }
        total
    }
}

/// Checks positivity, normalization, and no-signaling for every nonempty
/// proper subset of parties, exactly. Subsets are visited in increasing
/// bitmask order (bit `i` is party `i`).
pub fn validate_behavior(b: &Behavior) -> Result<(), BehaviorViolation> {
    let shape = &b.shape;
    for (a, q, v) in b.entries() {
        if v.is_negative() {
            return Err(BehaviorViolation::Positivity {
                a,
                q,
                value: v.clone(),
            });
        }
    }
    let at = shape.answer_tuples();
    for (qi, q) in tuples(&shape.question_sizes).enumerate() {
        let sum: Rational = b.table[qi * at..(qi + 1) * at].iter().sum();
        if !sum.is_one() {
            return Err(BehaviorViolation::Normalization { q, sum });
        }
    }

    let m = shape.players();
    for mask in 1..(1usize << m) - 1 {
        let subset: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
        let inside: Vec<usize> = (0..m).filter(|&i| subset[i]).collect();
        let outside: Vec<usize> = (0..m).filter(|&i| !subset[i]).collect();
        let pick = |sizes: &[usize], who: &[usize]| who.iter().map(|&i| sizes[i]).collect::<Vec<_>>();
        let rest_q = pick(&shape.question_sizes, &outside);
        let rest_a = pick(&shape.answer_sizes, &outside);
        let sub_q = pick(&shape.question_sizes, &inside);

        let assemble = |rest: &[usize], sub: &[usize]| {
            let mut t = vec![0; m];
            for (&i, &v) in outside.iter().zip(rest) {
                t[i] = v;
            }
            for (&i, &v) in inside.iter().zip(sub) {
                t[i] = v;
            }
            t
        };
        for q_rest in tuples(&rest_q) {
            for a_rest in tuples(&rest_a) {
                let a = assemble(&a_rest, &vec![0; inside.len()]);
                let mut first: Option<(Vec<usize>, Rational)> = None;
                for q_sub in tuples(&sub_q) {
                    let q = assemble(&q_rest, &q_sub);
                    let marg = b.marginal(&subset, &a, &q);
                    match &first {
                        None => first = Some((q_sub, marg)),
                        Some((q0, m0)) if *m0 != marg => {
                            return Err(BehaviorViolation::Signaling {
                                subset: inside.clone(),
                                a_rest: a_rest.clone(),
                                q_rest: q_rest.clone(),
                                q_first: q0.clone(),
                                q_other: q_sub,
                            })
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(())
}

fn tuple_label(t: &[usize], skip: usize) -> String {
    t.iter()
        .enumerate()
        .map(|(i, v)| if i == skip { "*".to_string() } else { v.to_string() })
        .collect::<Vec<_>>()
        .join(",")
}

/// Positivity, normalization, and single-party no-signaling constraints over
/// the cells of `shape`, with a zero objective.
///
/// Normalization rows are labeled `norm(q)`. For party `i`, the row
/// `ns<i>(a|q;x~y)` equates the marginal summed over `a_i` at `q_i = x` and
/// at `q_i = y` (`*` marks party `i`'s slot). One row per pair `x < y`.
pub fn ns_constraints(shape: &Shape) -> LinearProgram {
    let mut lp = LinearProgram::new(shape.cells());
    let at = shape.answer_tuples();
    for (qi, q) in tuples(&shape.question_sizes).enumerate() {
        let row = (qi * at..(qi + 1) * at).map(|c| (c, int(1))).collect();
        lp.add_constraint(format!("norm({})", tuple_label(&q, usize::MAX)), row, Relation::Eq, int(1));
    }
    for party in 0..shape.players() {
        let qn = shape.question_sizes[party];
        let an = shape.answer_sizes[party];
        for q in tuples(&shape.question_sizes).filter(|q| q[party] == 0) {
            for a in tuples(&shape.answer_sizes).filter(|a| a[party] == 0) {
                for x in 0..qn {
                    for y in x + 1..qn {
                        let mut row = Vec::with_capacity(2 * an);
                        let (mut a, mut qx, mut qy) = (a.clone(), q.clone(), q.clone());
                        qx[party] = x;
                        qy[party] = y;
                        for ai in 0..an {
                            a[party] = ai;
                            row.push((shape.cell(&a, &qx), int(1)));
                            row.push((shape.cell(&a, &qy), int(-1)));
                        }
                        let label = format!(
                            "ns{party}({}|{};{x}~{y})",
                            tuple_label(&a, party),
                            tuple_label(&q, party)
                        );
                        lp.add_constraint(label, row, Relation::Eq, Rational::zero());
                    }
                }
            }
        }
    }
    lp
}

/// The no-signaling LP of `g`: maximize `sum pi(q) V(a|q) p(a|q)`.
pub fn build_ns_lp(g: &Game) -> LinearProgram {
    let shape = Shape::of(g);
    let mut lp = ns_constraints(&shape);
    for ((a, q), v) in g.payoff_entries() {
        let w = g.pi(q);
        if !w.is_zero() {
            lp.set_objective_coeff(shape.cell(a, q), w * v);
        }
    }
    lp
}

#[derive(Debug, Error)]
pub enum NsError {
    #[error("{cells} behavior cells exceed the LP budget of {budget}")]
    BudgetExceeded { cells: usize, budget: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("no-signaling LP ended {0:?}; it is always feasible and bounded")]
    NotOptimal(LpStatus),
    #[error(transparent)]
    Behavior(#[from] BehaviorError),
    #[error("weight pair (0, 0) has no direction")]
    ZeroWeights,
}

#[derive(Debug, Clone)]
pub struct NsValue {
    pub value: Rational,
    pub behavior: Behavior,
    /// Optimal dual multipliers keyed by constraint label.
    pub dual: BTreeMap<String, Rational>,
}

fn solve_behavior(shape: Shape, lp: &LinearProgram) -> Result<NsValue, NsError> {
    let sol = lp::solve(lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(NsError::NotOptimal(sol.status));
    }
    Ok(NsValue {
        value: sol.value,
        behavior: Behavior::from_table(shape, sol.primal)?,
        dual: sol.dual,
    })
}

/// Exact no-signaling value of `g` and an optimal behavior.
pub fn ns_value(g: &Game, cell_budget: usize) -> Result<NsValue, NsError> {
    let shape = Shape::of(g);
    if shape.cells() > cell_budget {
        return Err(NsError::BudgetExceeded {
            cells: shape.cells(),
            budget: cell_budget,
        });
    }
    let lp = build_ns_lp(g);
    solve_behavior(shape, &lp)
}

fn chsh_pair_ok(shape: &Shape, x: usize, y: usize) -> bool {
    x != y
        && x < shape.players()
        && y < shape.players()
        && [x, y]
            .iter()
            .all(|&i| shape.question_sizes[i] >= 2 && shape.answer_sizes[i] == 2)
}

/// Coefficients `c` with `<B_CHSH> = sum_cell c[cell] p[cell]` for parties
/// `x`, `y`, reading the marginal where every other party is asked 0.
fn chsh_coefficients(shape: &Shape, x: usize, y: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); shape.cells()];
    for (cell, coeff) in c.iter_mut().enumerate() {
        let (a, q) = shape.cell_tuples(cell);
        let others_zero = (0..shape.players()).all(|i| i == x || i == y || q[i] == 0);
        if !others_zero || q[x] > 1 || q[y] > 1 {
            continue;
        }
        let negative = ((q[x] & q[y]) ^ a[x] ^ a[y]) == 1;
        *coeff = if negative { int(-1) } else { int(1) };
    }
    c
}

/// `<B_CHSH>` between parties `x` and `y` (0-based):
/// `E(0,0) + E(0,1) + E(1,0) - E(1,1)`, where `E(qx,qy)` is the answer
/// correlator of the pair's marginal. The marginal is read with the other
/// parties asked 0, after checking it does not depend on their questions.
pub fn chsh_expectation(b: &Behavior, x: usize, y: usize) -> Result<Rational, BehaviorError> {
    let shape = &b.shape;
    if !chsh_pair_ok(shape, x, y) {
        return Err(BehaviorError::NotChshPair { x, y });
    }
    let m = shape.players();
    let others: Vec<usize> = (0..m).filter(|&i| i != x && i != y).collect();
    let mut pair = vec![false; m];
    for &i in &others {
        pair[i] = true;
    }
    let other_q: Vec<usize> = others.iter().map(|&i| shape.question_sizes[i]).collect();
    for qx in 0..2 {
        for qy in 0..2 {
            for ax in 0..2 {
                for ay in 0..2 {
                    let mut a = vec![0; m];
                    a[x] = ax;
                    a[y] = ay;
                    let mut q = vec![0; m];
                    q[x] = qx;
                    q[y] = qy;
                    let reference = b.marginal(&pair, &a, &q);
                    for oq in tuples(&other_q) {
                        for (&i, &v) in others.iter().zip(&oq) {
                            q[i] = v;
                        }
                        if b.marginal(&pair, &a, &q) != reference {
                            return Err(BehaviorError::Signaling { x, y, q_other: oq });
                        }
                    }
                }
            }
        }
    }
    Ok(chsh_coefficients(shape, x, y)
        .iter()
        .zip(&b.table)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, p)| c * p)
        .sum())
}

/// Rational weight directions swept by the frontier report. The support
/// function at these directions pins down the polygonal tradeoff region.
pub fn frontier_directions() -> Vec<(Rational, Rational)> {
    [
        (1, 0),
        (2, 1),
        (1, 1),
        (1, 2),
        (0, 1),
        (1, -1),
        (-1, 2),
        (3, -2),
    ]
    .into_iter()
    .map(|(a, b)| (int(a), int(b)))
    .chain([(rat(1, 2), int(1)), (int(1), rat(2, 3))])
    .collect()
}

/// Closed form of the support function of `|x| + |y| <= 4`.
pub fn square_support(alpha: &Rational, beta: &Rational) -> Rational {
    int(4) * max_abs(alpha, beta)
}

#[derive(Debug, Clone)]
pub struct FrontierPoint {
    pub alpha: Rational,
    pub beta: Rational,
    pub optimum: Rational,
    pub behavior: Behavior,
}

/// Maximizes `alpha <B_AB> + beta <B_AC>` over three-party no-signaling
/// behaviors with two questions and two answers per party.
pub fn chsh_tradeoff_max(alpha: &Rational, beta: &Rational) -> Result<FrontierPoint, NsError> {
    if alpha.is_zero() && beta.is_zero() {
        return Err(NsError::ZeroWeights);
    }
    let shape = Shape::new(vec![2, 2, 2], vec![2, 2, 2]);
    let mut lp = ns_constraints(&shape);
    let ab = chsh_coefficients(&shape, 0, 1);
    let ac = chsh_coefficients(&shape, 0, 2);
    lp.set_objective(
        ab.iter()
            .zip(&ac)
            .map(|(x, y)| alpha * x + beta * y)
            .collect(),
    );
    let v = solve_behavior(shape, &lp)?;
    Ok(FrontierPoint {
        alpha: alpha.clone(),
        beta: beta.clone(),
        optimum: v.value,
        behavior: v.behavior,
    })
}
