//! Dense two-phase tableau simplex over exact rationals.
//!
//! Both phases use Bland's least-index rule for the entering column and for
//! ties in the ratio test, so the method terminates on degenerate programs.
//! One artificial column is kept per row for the whole run: its final
//! column in the tableau is the matching column of the inverse basis, which
//! is where the dual multipliers are read from.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::lp::{LinearProgram, LpSolution, LpStatus, Relation};
use crate::rational::Rational;

/// Where an original variable lives in the standard-form columns.
#[derive(Clone, Copy)]
enum VarMap {
    NonNeg(usize),
    Split(usize, usize),
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs `c_j - c_B B^-1 A_j`; a column may enter when positive.
    reduced: Vec<Rational>,
    value: Rational,
    /// Columns at or beyond this index are artificial and never enter.
    first_artificial: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, p: usize, q: usize) {
        let piv = self.rows[p][q].clone();
        let support: Vec<usize> = (0..self.rows[p].len())
            .filter(|&j| !self.rows[p][j].is_zero())
            .collect();
        if !piv.is_one() {
            let inv = piv.recip();
            for &j in &support {
                self.rows[p][j] *= &inv;
            }
            self.rhs[p] *= &inv;
        }

        let (before, rest) = self.rows.split_at_mut(p);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        let pivot_rhs = self.rhs[p].clone();
        for (r, row) in before
            .iter_mut()
            .enumerate()
            .chain(after.iter_mut().enumerate().map(|(i, row)| (i + p + 1, row)))
        {
            if row[q].is_zero() {
                continue;
            }
            let f = row[q].clone();
            for &j in &support {
                let t = &f * &pivot_row[j];
                row[j] -= t;
            }
            self.rhs[r] -= &f * &pivot_rhs;
        }

        let f = self.reduced[q].clone();
        if !f.is_zero() {
            for &j in &support {
                let t = &f * &pivot_row[j];
                self.reduced[j] -= t;
            }
            self.value += &f * &pivot_rhs;
        }
        self.basis[p] = q;
    }

    fn entering(&self) -> Option<usize> {
        (0..self.first_artificial).find(|&j| self.reduced[j].is_positive())
    }

    /// Minimum-ratio row; ties go to the row whose basic column is smallest.
    fn leaving(&self, q: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if !row[q].is_positive() {
                continue;
            }
            let ratio = &self.rhs[r] / &row[q];
            let better = match &best {
                None => true,
                Some((b, br)) => ratio < *br || (ratio == *br && self.basis[r] < self.basis[*b]),
            };
            if better {
                best = Some((r, ratio));
            }
        }
        best.map(|(r, _)| r)
    }

    fn run(&mut self) -> Outcome {
        while let Some(q) = self.entering() {
            match self.leaving(q) {
                Some(p) => self.pivot(p, q),
                None => return Outcome::Unbounded,
            }
        }
        Outcome::Optimal
    }

    /// Installs the cost vector `cost` (one entry per column) and recomputes
    /// reduced costs and the objective value for the current basis.
    fn price(&mut self, cost: &[Rational]) {
        self.reduced = cost.to_vec();
        self.value = Rational::zero();
        for (r, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    self.reduced[j] -= cb * a;
                }
            }
            self.value += cb * &self.rhs[r];
        }
    }
}

/// Solves a program that has already passed [`LinearProgram::validate`].
pub(crate) fn solve_validated(lp: &LinearProgram) -> LpSolution {
    let m = lp.constraints().len();

    let mut var_map = Vec::with_capacity(lp.num_vars());
    let mut ncols = 0;
    for v in 0..lp.num_vars() {
        if lp.is_nonneg(v) {
            var_map.push(VarMap::NonNeg(ncols));
            ncols += 1;
        } else {
            var_map.push(VarMap::Split(ncols, ncols + 1));
            ncols += 2;
        }
    }
    let structural = ncols;
    let mut slack_of = vec![None; m];
    for (i, c) in lp.constraints().iter().enumerate() {
        if c.relation != Relation::Eq {
            slack_of[i] = Some(ncols);
            ncols += 1;
        }
    }
    let first_artificial = ncols;
    let total = ncols + m;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut flipped = vec![false; m];
    for (i, c) in lp.constraints().iter().enumerate() {
        let mut row = vec![Rational::zero(); total];
        for (v, a) in &c.row {
            match var_map[*v] {
                VarMap::NonNeg(j) => row[j] += a,
                VarMap::Split(p, n) => {
                    row[p] += a;
                    row[n] -= a;
                }
            }
        }
        if let Some(s) = slack_of[i] {
            row[s] = match c.relation {
                Relation::Le => Rational::one(),
                _ => -Rational::one(),
            };
        }
        let mut b = c.rhs.clone();
        if b.is_negative() {
            flipped[i] = true;
            for a in row.iter_mut().filter(|a| !a.is_zero()) {
                *a = -&*a;
            }
            b = -b;
        }
        row[first_artificial + i] = Rational::one();
        rows.push(row);
        rhs.push(b);
    }

    let mut t = Tableau {
        rows,
        rhs,
        basis: (first_artificial..total).collect(),
        reduced: Vec::new(),
        value: Rational::zero(),
        first_artificial,
    };

    // Phase one: maximize minus the sum of artificials.
    let mut cost = vec![Rational::zero(); total];
    for c in &mut cost[first_artificial..] {
        *c = -Rational::one();
    }
    t.price(&cost);
    t.run();
    if t.value.is_negative() {
        return LpSolution {
            status: LpStatus::Infeasible,
            value: Rational::zero(),
            primal: Vec::new(),
            dual: BTreeMap::new(),
        };
    }

    // Drive zero-level artificials out of the basis where the row allows it;
    // rows with no structural or slack support are redundant and keep theirs.
    for r in 0..m {
        if t.basis[r] >= first_artificial {
            if let Some(q) = (0..first_artificial).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, q);
            }
        }
    }

    // Phase two.
    let mut cost = vec![Rational::zero(); total];
    for (v, c) in lp.objective().iter().enumerate() {
        match var_map[v] {
            VarMap::NonNeg(j) => cost[j] = c.clone(),
            VarMap::Split(p, n) => {
                cost[p] = c.clone();
                cost[n] = -c;
            }
        }
    }
    t.price(&cost);
    if let Outcome::Unbounded = t.run() {
        return LpSolution {
            status: LpStatus::Unbounded,
            value: Rational::zero(),
            primal: Vec::new(),
            dual: BTreeMap::new(),
        };
    }

    let mut column_value = vec![Rational::zero(); structural];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < structural {
            column_value[b] = t.rhs[r].clone();
        }
    }
    let primal = var_map
        .iter()
        .map(|m| match *m {
            VarMap::NonNeg(j) => column_value[j].clone(),
            VarMap::Split(p, n) => &column_value[p] - &column_value[n],
        })
        .collect();

    // y_i = c_B B^-1 e_i = -(reduced cost of artificial i), undoing row flips.
    let dual = lp
        .constraints()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let y = -&t.reduced[first_artificial + i];
            let y = if flipped[i] { -y } else { y };
            (c.label.clone(), y)
        })
        .collect();

    LpSolution {
        status: LpStatus::Optimal,
        value: t.value,
        primal,
        dual,
    }
}
