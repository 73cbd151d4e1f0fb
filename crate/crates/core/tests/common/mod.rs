//! Shared test helpers: random bounded LPs and a vertex-enumeration oracle
//! that shares no code with the simplex solver.

#![allow(dead_code)]

use nsgames::lp::{LinearProgram, Relation};
use nsgames::rational::{int, rat, Rational};
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

pub fn small_rational(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// A bounded random LP: 1 to 3 variables (some free), 1 to 4 random rows of
/// mixed relations, plus box rows `x_i <= 10` and, for free variables,
/// `x_i >= -10`. Most rows are built to hold at a random interior point;
/// about one in six gets an arbitrary right-hand side, so infeasible
/// instances still occur.
pub fn random_lp(rng: &mut StdRng) -> LinearProgram {
    let n = rng.gen_range(1..=3);
    let mut lp = LinearProgram::new(n);
    lp.set_objective((0..n).map(|_| small_rational(rng)).collect());
    let mut anchor = Vec::with_capacity(n);
    for i in 0..n {
        if rng.gen_bool(0.3) {
            lp.set_free(i);
            lp.add_constraint(format!("lo{i}"), vec![(i, int(1))], Relation::Ge, int(-10));
            anchor.push(small_rational(rng));
        } else {
            anchor.push(small_rational(rng).abs());
        }
        lp.add_constraint(format!("hi{i}"), vec![(i, int(1))], Relation::Le, int(10));
    }
    for r in 0..rng.gen_range(1..=4) {
        let row: Vec<(usize, Rational)> = (0..n)
            .map(|i| (i, small_rational(rng)))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        let relation = match rng.gen_range(0..5) {
            0 => Relation::Eq,
            1 => Relation::Ge,
            _ => Relation::Le,
        };
        let at_anchor: Rational = row.iter().map(|(i, a)| a * &anchor[*i]).sum();
        let slack = small_rational(rng).abs();
        let rhs = if rng.gen_range(0..6) == 0 {
            small_rational(rng) * int(2)
        } else {
            match relation {
                Relation::Le => at_anchor + slack,
                Relation::Ge => at_anchor - slack,
                Relation::Eq => at_anchor,
            }
        };
        lp.add_constraint(format!("r{r}"), row, relation, rhs);
    }
    lp
}

/// Solves the square system `a x = b` by Gauss-Jordan elimination, or
/// returns `None` when `a` is singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let (pivot_row, row) = if r < col {
                    let (lo, hi) = a.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Maximum of the objective over the (bounded) feasible region, found by
/// trying every set of `n` tight hyperplanes; `None` when infeasible.
pub fn vertex_enumeration_max(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.num_vars();
    let mut planes: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for c in lp.constraints() {
        let mut row = vec![Rational::zero(); n];
        for (i, a) in &c.row {
            row[*i] += a;
        }
        planes.push((row, c.rhs.clone()));
    }
    for i in (0..n).filter(|&i| lp.is_nonneg(i)) {
        let mut row = vec![Rational::zero(); n];
        row[i] = int(1);
        planes.push((row, Rational::zero()));
    }

    let mut best: Option<Rational> = None;
    let mut pick = vec![0usize; n];
    fn subsets(k: usize, start: usize, total: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == pick.len() {
            out.push(pick.clone());
            return;
        }
        for s in start..total {
            pick[k] = s;
            subsets(k + 1, s + 1, total, pick, out);
        }
    }
    let mut all = Vec::new();
    subsets(0, 0, planes.len(), &mut pick, &mut all);
    for set in all {
        let a = set.iter().map(|&s| planes[s].0.clone()).collect();
        let b = set.iter().map(|&s| planes[s].1.clone()).collect();
        let Some(x) = solve_square(a, b) else { continue };
        if lp.first_violation(&x).is_some() {
            continue;
        }
        let v = lp.objective_value(&x);
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    }
    best
}

pub fn is_nonneg(r: &Rational) -> bool {
    !r.is_negative()
}
