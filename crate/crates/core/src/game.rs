//! Multiplayer nonlocal games.
//!
//! A referee draws a joint question tuple from `pi`, sends one coordinate to
//! each player, and pays `payoff(answers | questions)` in `[0, 1]`. Both maps
//! are stored sparsely: absent entries are zero. Joint tuples are ordered
//! row-major with player 1 varying slowest.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::{format_rational, int, rat, Rational};

/// Default cap on the number of deterministic strategies enumerated by
/// [`classical_value`].
pub const DEFAULT_STRATEGY_BUDGET: u64 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("alphabet size lists disagree: {questions} question sizes, {answers} answer sizes")]
    ShapeMismatch { questions: usize, answers: usize },
    #[error("player {player} has an empty {what} alphabet")]
    EmptyAlphabet { player: usize, what: &'static str },
    #[error("tuple {tuple:?} does not fit alphabet sizes {sizes:?}")]
    TupleOutOfRange { tuple: Vec<usize>, sizes: Vec<usize> },
    #[error("negative question probability {value} at {q:?}")]
    NegativeProbability { q: Vec<usize>, value: String },
    #[error("question distribution sums to {0}, expected 1")]
    NotNormalized(String),
    #[error("payoff {value} at answers {a:?} questions {q:?} is outside [0, 1]")]
    PayoffOutOfRange {
        a: Vec<usize>,
        q: Vec<usize>,
        value: String,
    },
    #[error("duplicate entry for {0}")]
    DuplicateEntry(String),
    #[error("odd cycle length must be odd and at least 3, got {0}")]
    BadCycleLength(usize),
    #[error("extension is defined for 2-player games, got {0} players")]
    NotTwoPlayer(usize),
    #[error("{count} deterministic strategies exceed the enumeration budget of {budget}")]
    BudgetExceeded { count: String, budget: u64 },
}

/// Number of tuples over alphabets of the given sizes.
pub fn tuple_count(sizes: &[usize]) -> usize {
    sizes.iter().product()
}

/// Row-major index of `tuple` (first coordinate slowest).
pub fn encode_tuple(sizes: &[usize], tuple: &[usize]) -> usize {
    tuple
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&t, &s)| acc * s + t)
}

pub fn decode_tuple(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, &s) in out.iter_mut().zip(sizes).rev() {
        *slot = index % s;
        index /= s;
    }
    out
}

/// All tuples over `sizes` in row-major order.
pub fn tuples(sizes: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..tuple_count(sizes)).map(move |i| decode_tuple(sizes, i))
}

fn fits(sizes: &[usize], tuple: &[usize]) -> bool {
    tuple.len() == sizes.len() && tuple.iter().zip(sizes).all(|(t, s)| t < s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    name: String,
    question_sizes: Vec<usize>,
    answer_sizes: Vec<usize>,
    pi: BTreeMap<Vec<usize>, Rational>,
    /// Keyed by `(answers, questions)`.
    payoff: BTreeMap<(Vec<usize>, Vec<usize>), Rational>,
}

impl Game {
    /// Builds and validates a game. Zero entries are dropped so that equal
    /// games compare equal regardless of how sparsely they were written.
    pub fn new(
        name: impl Into<String>,
        question_sizes: Vec<usize>,
        answer_sizes: Vec<usize>,
        pi: impl IntoIterator<Item = (Vec<usize>, Rational)>,
        payoff: impl IntoIterator<Item = (Vec<usize>, Vec<usize>, Rational)>,
    ) -> Result<Game, GameError> {
        if question_sizes.is_empty() {
            return Err(GameError::NoPlayers);
        }
        if question_sizes.len() != answer_sizes.len() {
            return Err(GameError::ShapeMismatch {
                questions: question_sizes.len(),
                answers: answer_sizes.len(),
            });
        }
        for (player, (&q, &a)) in question_sizes.iter().zip(&answer_sizes).enumerate() {
            if q == 0 || a == 0 {
                let what = if q == 0 { "question" } else { "answer" };
                return Err(GameError::EmptyAlphabet { player, what });
            }
        }

        let mut pi_map = BTreeMap::new();
        let mut total = Rational::zero();
        for (q, p) in pi {
            if !fits(&question_sizes, &q) {
                return Err(GameError::TupleOutOfRange {
                    tuple: q,
                    sizes: question_sizes,
                });
            }
            if p.is_negative() {
                return Err(GameError::NegativeProbability {
                    q,
                    value: format_rational(&p),
                });
            }
            total += &p;
            if pi_map.contains_key(&q) {
                return Err(GameError::DuplicateEntry(format!("pi{q:?}")));
            }
            if !p.is_zero() {
                pi_map.insert(q, p);
            }
        }
        if !total.is_one() {
            return Err(GameError::NotNormalized(format_rational(&total)));
        }

        let mut payoff_map = BTreeMap::new();
        for (a, q, v) in payoff {
            if !fits(&question_sizes, &q) {
                return Err(GameError::TupleOutOfRange {
                    tuple: q,
                    sizes: question_sizes,
                });
            }
            if !fits(&answer_sizes, &a) {
                return Err(GameError::TupleOutOfRange {
                    tuple: a,
                    sizes: answer_sizes,
                });
            }
            if v.is_negative() || v > Rational::one() {
                return Err(GameError::PayoffOutOfRange {
                    a,
                    q,
                    value: format_rational(&v),
                });
            }
            let key = (a, q);
            if payoff_map.contains_key(&key) {
                return Err(GameError::DuplicateEntry(format!("V{:?}|{:?}", key.0, key.1)));
            }
            if !v.is_zero() {
                payoff_map.insert(key, v);
            }
        }

        Ok(Game {
            name: name.into(),
            question_sizes,
            answer_sizes,
            pi: pi_map,
            payoff: payoff_map,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn players(&self) -> usize {
        self.question_sizes.len()
    }

    pub fn question_sizes(&self) -> &[usize] {
        &self.question_sizes
    }

    pub fn answer_sizes(&self) -> &[usize] {
        &self.answer_sizes
    }

    pub fn pi(&self, q: &[usize]) -> Rational {
        self.pi.get(q).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn payoff(&self, a: &[usize], q: &[usize]) -> Rational {
        // BTreeMap lookup needs an owned key of the same type.
        self.payoff
            .get(&(a.to_vec(), q.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Question tuples with positive probability, in row-major order.
    pub fn pi_support(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.pi.iter()
    }

    /// Nonzero payoff entries as `((answers, questions), value)`.
    pub fn payoff_entries(&self) -> impl Iterator<Item = (&(Vec<usize>, Vec<usize>), &Rational)> {
        self.payoff.iter()
    }

    /// Winning probability of the behavior `p(a|q)` given as a closure.
    pub fn winning_probability(&self, mut p: impl FnMut(&[usize], &[usize]) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for ((a, q), v) in &self.payoff {
            let w = self.pi(q);
            if !w.is_zero() {
                total += w * v * p(a, q);
            }
        }
        total
    }
}

fn bit(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Two-player CHSH game: uniform bits, win iff `a1 xor a2 = q1 and q2`.
pub fn make_chsh() -> Game {
    let qs = [2, 2];
    let pi = tuples(&qs).map(|q| (q, rat(1, 4))).collect::<Vec<_>>();
    let mut payoff = Vec::new();
    for q in tuples(&qs) {
        for a in tuples(&[2, 2]) {
            payoff.push((a.clone(), q.clone(), bit((a[0] ^ a[1]) == (q[0] & q[1]))));
        }
    }
    Game::new("chsh", vec![2, 2], vec![2, 2], pi, payoff).expect("CHSH game is well formed")
}

/// Three-player game scoring the CHSH predicate on (A,B) and on (A,C) with
/// weight one half each.
pub fn make_chsh_triangle() -> Game {
    let qs = [2, 2, 2];
    let pi = tuples(&qs).map(|q| (q, rat(1, 8))).collect::<Vec<_>>();
    let half = rat(1, 2);
    let mut payoff = Vec::new();
    for q in tuples(&qs) {
        for a in tuples(&[2, 2, 2]) {
            let ab = bit((a[0] ^ a[1]) == (q[0] & q[1]));
            let ac = bit((a[0] ^ a[2]) == (q[0] & q[2]));
            payoff.push((a, q.clone(), &half * (ab + ac)));
        }
    }
    Game::new("chsh3", vec![2, 2, 2], vec![2, 2, 2], pi, payoff)
        .expect("three-player CHSH game is well formed")
}

/// Odd cycle game on `n` vertices: questions are equal or adjacent
/// (`q2 = q1 + 1 mod n`); equal questions demand equal answers, adjacent
/// ones different answers.
pub fn make_odd_cycle(n: usize) -> Result<Game, GameError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(GameError::BadCycleLength(n));
    }
    let w = rat(1, 2 * n as i64);
    let mut pi = Vec::with_capacity(2 * n);
    let mut payoff = Vec::with_capacity(4 * n);
    for q in 0..n {
        let next = (q + 1) % n;
        pi.push((vec![q, q], w.clone()));
        pi.push((vec![q, next], w.clone()));
        for a in tuples(&[2, 2]) {
            payoff.push((a.clone(), vec![q, q], bit(a[0] == a[1])));
            payoff.push((a.clone(), vec![q, next], bit(a[0] != a[1])));
        }
    }
    Game::new(format!("oddcycle{n}"), vec![n, n], vec![2, 2], pi, payoff)
}

/// The `copies`-th extension: player 2's question is also sent to `copies`
/// extra players, who must all answer as player 2 does. `extend(g, 0)` is `g`.
pub fn extend(g: &Game, copies: usize) -> Result<Game, GameError> {
    if g.players() != 2 {
        return Err(GameError::NotTwoPlayer(g.players()));
    }
    if copies == 0 {
        return Ok(g.clone());
    }
    let q2 = g.question_sizes[1];
    let a2 = g.answer_sizes[1];
    let mut question_sizes = g.question_sizes.clone();
    question_sizes.extend(std::iter::repeat_n(q2, copies));
    let mut answer_sizes = g.answer_sizes.clone();
    answer_sizes.extend(std::iter::repeat_n(a2, copies));

    let pi = g.pi.iter().map(|(q, p)| {
        let mut qn = q.clone();
        qn.extend(std::iter::repeat_n(q[1], copies));
        (qn, p.clone())
    });
    let clone_questions: Vec<Vec<usize>> = tuples(&vec![q2; copies]).collect();
    let mut payoff = Vec::new();
    for ((a, q), v) in &g.payoff {
        let mut an = a.clone();
        an.extend(std::iter::repeat_n(a[1], copies));
        for extra in &clone_questions {
            let mut qn = q.clone();
            qn.extend_from_slice(extra);
            payoff.push((an.clone(), qn, v.clone()));
        }
    }
    Game::new(
        format!("{}-ext{copies}", g.name),
        question_sizes,
        answer_sizes,
        pi,
        payoff,
    )
}

/// A deterministic classical strategy: `tables[i][q]` is player `i`'s answer
/// to question `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub tables: Vec<Vec<usize>>,
}

impl DeterministicStrategy {
    pub fn answer(&self, player: usize, question: usize) -> usize {
        self.tables[player][question]
    }

    pub fn answers(&self, q: &[usize]) -> Vec<usize> {
        q.iter()
            .enumerate()
            .map(|(i, &qi)| self.tables[i][qi])
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalValue {
    pub value: Rational,
    pub strategy: DeterministicStrategy,
}

/// Number of deterministic strategies, `prod_i answers_i ^ questions_i`,
/// or `None` on overflow.
pub fn strategy_count(g: &Game) -> Option<u128> {
    let mut count: u128 = 1;
    for (&q, &a) in g.question_sizes.iter().zip(&g.answer_sizes) {
        let per = (a as u128).checked_pow(q.try_into().ok()?)?;
        count = count.checked_mul(per)?;
    }
    Some(count)
}

/// Exact classical value by enumerating every deterministic strategy.
///
/// Shared randomness is a convex combination of deterministic strategies,
/// so the maximum over deterministic ones is the classical value. The first
/// optimal strategy in enumeration order is returned: tables are read as
/// one mixed-radix number whose most significant digit is player 1's answer
/// to question 0.
pub fn classical_value(g: &Game, budget: u64) -> Result<ClassicalValue, GameError> {
    let count = strategy_count(g);
    match count {
        Some(c) if c <= budget as u128 => {}
        _ => {
            return Err(GameError::BudgetExceeded {
                count: count.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string()),
                budget,
            })
        }
    }

    // Per supported question tuple, a dense table of pi(q) * V(a|q) over a.
    let answer_tuples = tuple_count(&g.answer_sizes);
    let mut weights: Vec<(Vec<usize>, Vec<Rational>)> = g
        .pi
        .keys()
        .map(|q| (q.clone(), vec![Rational::zero(); answer_tuples]))
        .collect();
    let pos: BTreeMap<&Vec<usize>, usize> = g.pi.keys().enumerate().map(|(i, q)| (q, i)).collect();
    for ((a, q), v) in &g.payoff {
        if let Some(&i) = pos.get(q) {
            weights[i].1[encode_tuple(&g.answer_sizes, a)] = &g.pi[q] * v;
        }
    }

    let lcm = weights
        .iter()
        .flat_map(|(_, w)| w.iter())
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let scaled: Option<Vec<Vec<i128>>> = weights
        .iter()
        .map(|(_, w)| {
            w.iter()
                .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer().to_i128())
                .collect()
        })
        .collect();
    let questions: Vec<Vec<usize>> = weights.iter().map(|(q, _)| q.clone()).collect();

    let (best, digits) = match (&scaled, lcm.to_i128()) {
        // Total score is at most lcm (pi sums to 1, payoffs <= 1).
        (Some(s), Some(l)) if l < i128::MAX / 2 => {
            let (b, d) = enumerate(g, &questions, s);
            (Rational::new(BigInt::from(b), lcm), d)
        }
        _ => {
            let w: Vec<Vec<Rational>> = weights.into_iter().map(|(_, w)| w).collect();
            enumerate(g, &questions, &w)
        }
    };

    let mut tables = Vec::with_capacity(g.players());
    let mut it = digits.into_iter();
    for &q in &g.question_sizes {
        tables.push(it.by_ref().take(q).collect());
    }
    Ok(ClassicalValue {
        value: best,
        strategy: DeterministicStrategy { tables },
    })
}

fn enumerate<T>(g: &Game, questions: &[Vec<usize>], weights: &[Vec<T>]) -> (T, Vec<usize>)
where
    T: Clone + PartialOrd + Zero + for<'a> std::ops::AddAssign<&'a T>,
{
    // Flattened digits: player-major, question-minor.
    let mut radix = Vec::new();
    let mut offset = Vec::new();
    for (&q, &a) in g.question_sizes.iter().zip(&g.answer_sizes) {
        offset.push(radix.len());
        radix.extend(std::iter::repeat_n(a, q));
    }
    let mut digits = vec![0usize; radix.len()];
    let mut best: Option<(T, Vec<usize>)> = None;
    loop {
        let mut score = T::zero();
        for (q, w) in questions.iter().zip(weights) {
            let a = q
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &qi)| acc * g.answer_sizes[i] + digits[offset[i] + qi]);
            score += &w[a];
        }
        if best.as_ref().is_none_or(|(b, _)| score > *b) {
            best = Some((score, digits.clone()));
        }
        // Increment, least significant digit last.
        let mut i = digits.len();
        loop {
            if i == 0 {
                return best.expect("at least one strategy");
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radix[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// The game paying 1 on every outcome, with uniform questions.
pub fn trivial_game(question_sizes: Vec<usize>, answer_sizes: Vec<usize>) -> Game {
    let n = tuple_count(&question_sizes) as i64;
    let pi: Vec<_> = tuples(&question_sizes).map(|q| (q, rat(1, n))).collect();
    let mut payoff = Vec::new();
    for q in tuples(&question_sizes) {
        for a in tuples(&answer_sizes) {
            payoff.push((a, q.clone(), int(1)));
        }
    }
    Game::new("trivial", question_sizes, answer_sizes, pi, payoff).expect("trivial game is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn chsh_entries() {
        let g = make_chsh();
        assert_eq!(g.payoff(&[0, 0], &[1, 1]), int(0));
        assert_eq!(g.payoff(&[0, 1], &[1, 1]), int(1));
        assert_eq!(g.pi(&[0, 1]), rat(1, 4));
    }

    #[test]
    fn chsh_triangle_entries() {
        let g = make_chsh_triangle();
        assert_eq!(g.players(), 3);
        assert_eq!(g.payoff(&[0, 0, 0], &[0, 0, 0]), int(1));
        assert_eq!(g.payoff(&[0, 0, 1], &[1, 1, 1]), rat(1, 2));
        assert_eq!(g.pi(&[1, 0, 1]), rat(1, 8));
    }

    #[test]
    fn odd_cycle_entries() {
        let g = make_odd_cycle(3).unwrap();
        assert_eq!(g.pi(&[2, 0]), rat(1, 6));
        assert_eq!(g.payoff(&[1, 1], &[0, 0]), int(1));
        assert_eq!(g.pi_support().count(), 6);
        assert_eq!(make_odd_cycle(5).unwrap().pi(&[1, 3]), int(0));
        assert_eq!(make_odd_cycle(4), Err(GameError::BadCycleLength(4)));
        assert_eq!(make_odd_cycle(1), Err(GameError::BadCycleLength(1)));
    }

    #[test]
    fn extension_entries() {
        assert_eq!(extend(&make_chsh(), 0).unwrap(), make_chsh());
        let g = extend(&make_odd_cycle(3).unwrap(), 1).unwrap();
        assert_eq!(g.players(), 3);
        assert_eq!(g.payoff(&[0, 1, 1], &[0, 1, 1]), int(1));
        assert_eq!(g.payoff(&[0, 1, 0], &[0, 1, 1]), int(0));
        assert_eq!(g.pi(&[2, 0, 0]), rat(1, 6));
        assert_eq!(g.pi(&[2, 0, 1]), int(0));
        assert_eq!(
            extend(&make_chsh_triangle(), 1),
            Err(GameError::NotTwoPlayer(3))
        );
    }

    #[test]
    fn rejects_invalid_games() {
        let bad_pi = Game::new("x", vec![2], vec![2], vec![(vec![0], rat(1, 2))], vec![]);
        assert!(matches!(bad_pi, Err(GameError::NotNormalized(_))));
        let bad_v = Game::new(
            "x",
            vec![1],
            vec![2],
            vec![(vec![0], int(1))],
            vec![(vec![0], vec![0], rat(3, 2))],
        );
        assert!(matches!(bad_v, Err(GameError::PayoffOutOfRange { .. })));
        let bad_tuple = Game::new("x", vec![1], vec![2], vec![(vec![1], int(1))], vec![]);
        assert!(matches!(bad_tuple, Err(GameError::TupleOutOfRange { .. })));
    }

    #[test]
    fn classical_values_of_builtin_games() {
        let cv = classical_value(&make_chsh(), DEFAULT_STRATEGY_BUDGET).unwrap();
        assert_eq!(cv.value, rat(3, 4));
        // First optimum in enumeration order is everyone answering 0.
        assert_eq!(cv.strategy.tables, vec![vec![0, 0], vec![0, 0]]);
        let oc = make_odd_cycle(5).unwrap();
        assert_eq!(classical_value(&oc, DEFAULT_STRATEGY_BUDGET).unwrap().value, rat(9, 10));
        let t = make_chsh_triangle();
        assert_eq!(classical_value(&t, DEFAULT_STRATEGY_BUDGET).unwrap().value, rat(3, 4));
    }

    #[test]
    fn returned_strategy_attains_value() {
        let g = make_odd_cycle(3).unwrap();
        let cv = classical_value(&g, DEFAULT_STRATEGY_BUDGET).unwrap();
        let s = &cv.strategy;
        let achieved = g.winning_probability(|a, q| bit(s.answers(q) == a));
        assert_eq!(achieved, cv.value);
    }

    #[test]
    fn budget_is_enforced() {
        let g = make_odd_cycle(7).unwrap();
        assert_eq!(strategy_count(&g), Some(1 << 14));
        assert!(matches!(
            classical_value(&g, 1000),
            Err(GameError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn trivial_game_value_is_one() {
        let g = trivial_game(vec![2, 3], vec![2, 2]);
        assert_eq!(classical_value(&g, DEFAULT_STRATEGY_BUDGET).unwrap().value, int(1));
    }

    #[test]
    fn extension_preserves_classical_value() {
        for base in [make_chsh(), make_odd_cycle(3).unwrap()] {
            let v0 = classical_value(&base, DEFAULT_STRATEGY_BUDGET).unwrap().value;
            for copies in 1..=2 {
                let g = extend(&base, copies).unwrap();
                let v = classical_value(&g, DEFAULT_STRATEGY_BUDGET).unwrap().value;
                assert_eq!(v, v0, "{} extended {copies}", base.name());
            }
        }
    }

    #[test]
    fn rational_fallback_matches_integer_path() {
        // A denominator too large for the i128 fast path.
        let big = Rational::new(BigInt::one(), BigInt::from(3u8).pow(90));
        let rest = Rational::one() - &big;
        let g = Game::new(
            "skew",
            vec![2, 2],
            vec![2, 2],
            vec![(vec![0, 0], big.clone()), (vec![1, 1], rest.clone())],
            vec![
                (vec![0, 0], vec![0, 0], int(1)),
                (vec![0, 1], vec![1, 1], int(1)),
            ],
        )
        .unwrap();
        assert_eq!(classical_value(&g, 1 << 10).unwrap().value, int(1));
    }

    /// Relabels one player's questions and answers.
    fn relabel(g: &Game, player: usize, qperm: &[usize], aperm: &[usize]) -> Game {
        let map = |t: &Vec<usize>, perm: &[usize]| {
            let mut t = t.clone();
            t[player] = perm[t[player]];
            t
        };
        Game::new(
            g.name(),
            g.question_sizes().to_vec(),
            g.answer_sizes().to_vec(),
            g.pi_support().map(|(q, p)| (map(q, qperm), p.clone())),
            g.payoff_entries()
                .map(|((a, q), v)| (map(a, aperm), map(q, qperm), v.clone())),
        )
        .unwrap()
    }

    fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn classical_value_invariant_under_relabeling(
            which in 0usize..3,
            player in 0usize..2,
            q3 in perm(3), q2 in perm(2), a2 in perm(2),
        ) {
            let g = match which {
                0 => make_chsh(),
                1 => make_odd_cycle(3).unwrap(),
                _ => make_odd_cycle(5).unwrap(),
            };
            let qperm: Vec<usize> = if g.question_sizes()[player] == 2 {
                q2
            } else if g.question_sizes()[player] == 3 {
                q3
            } else {
                (0..5).rev().collect()
            };
            let base = classical_value(&g, DEFAULT_STRATEGY_BUDGET).unwrap().value;
            let moved = classical_value(&relabel(&g, player, &qperm, &a2), DEFAULT_STRATEGY_BUDGET)
                .unwrap()
                .value;
            prop_assert_eq!(base.clone(), moved);
            prop_assert!(base >= Rational::zero() && base <= Rational::one());
        }
    }
}
