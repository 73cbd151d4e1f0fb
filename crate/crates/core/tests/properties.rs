use nsgames::game::{classical_value, extend, make_odd_cycle, tuples, Game, DEFAULT_STRATEGY_BUDGET};
use nsgames::nspoly::{chsh_expectation, ns_value, validate_behavior, Behavior, Shape, DEFAULT_CELL_BUDGET};
use nsgames::rational::{int, rat, Rational};
use num_traits::Zero;
use proptest::prelude::*;

/// A random game over the given alphabets with payoffs in {0, 1/2, 1} and a
/// question distribution built from positive integer weights.
fn random_game(questions: Vec<usize>, answers: Vec<usize>) -> impl Strategy<Value = Game> {
    let nq: usize = questions.iter().product();
    let cells = nq * answers.iter().product::<usize>();
    (
        prop::collection::vec(0i64..4, nq),
        prop::collection::vec(0i64..3, cells),
    )
        .prop_filter("some question must be asked", |(w, _)| w.iter().any(|&x| x > 0))
        .prop_map(move |(weights, pay)| {
            let total: i64 = weights.iter().sum();
            let pi: Vec<_> = tuples(&questions)
                .zip(&weights)
                .map(|(q, &w)| (q, rat(w, total)))
                .collect();
            let mut payoff = Vec::new();
            let mut it = pay.into_iter();
            for q in tuples(&questions) {
                for a in tuples(&answers) {
                    payoff.push((a, q.clone(), rat(it.next().unwrap(), 2)));
                }
            }
            Game::new("random", questions.clone(), answers.clone(), pi, payoff).unwrap()
        })
}

fn check_game(g: &Game) -> Result<(), TestCaseError> {
    let ns = ns_value(g, DEFAULT_CELL_BUDGET).unwrap();
    let c = classical_value(g, DEFAULT_STRATEGY_BUDGET).unwrap();
    prop_assert!(ns.value >= c.value);
    prop_assert!(ns.value <= int(1) && c.value >= Rational::zero());
    prop_assert_eq!(validate_behavior(&ns.behavior), Ok(()));
    prop_assert_eq!(g.winning_probability(|a, q| ns.behavior.get(a, q).clone()), ns.value);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn two_player_games(g in random_game(vec![3, 2], vec![2, 2])) {
        check_game(&g)?;
    }

    #[test]
    fn three_player_games(g in random_game(vec![2, 2, 2], vec![2, 2, 2])) {
        check_game(&g)?;
        let ns = ns_value(&g, DEFAULT_CELL_BUDGET).unwrap();
        for (x, y) in [(0, 1), (0, 2), (1, 2)] {
            let e = chsh_expectation(&ns.behavior, x, y).unwrap();
            prop_assert!(e >= int(-4) && e <= int(4));
        }
    }

    #[test]
    fn mixtures_of_deterministic_boxes_stay_local(
        tables in prop::collection::vec(prop::collection::vec(0usize..2, 6), 1..4),
    ) {
        // Uniform mixtures of deterministic three-party strategies are
        // no-signaling, and each pair's CHSH value obeys |<B>| <= 2.
        let shape = Shape::new(vec![2, 2, 2], vec![2, 2, 2]);
        let mut mix = vec![Rational::zero(); shape.cells()];
        let w = rat(1, tables.len() as i64);
        for t in &tables {
            let d = Behavior::deterministic(shape.clone(), |i, q| t[2 * i + q]);
            for (m, v) in mix.iter_mut().zip(d.table()) {
                *m += &w * v;
            }
        }
        let b = Behavior::from_table(shape, mix).unwrap();
        prop_assert_eq!(validate_behavior(&b), Ok(()));
        for (x, y) in [(0, 1), (0, 2), (1, 2)] {
            let e = chsh_expectation(&b, x, y).unwrap();
            prop_assert!(e >= int(-2) && e <= int(2));
        }
    }
}

#[test]
fn odd_cycle_extension_is_monotone() {
    let base = make_odd_cycle(3).unwrap();
    let plain = ns_value(&base, DEFAULT_CELL_BUDGET).unwrap().value;
    let first = ns_value(&extend(&base, 1).unwrap(), DEFAULT_CELL_BUDGET).unwrap().value;
    // The plain odd cycle game is won with certainty by a PR-type box.
    assert_eq!(plain, int(1));
    assert_eq!(first, rat(5, 6));
}
