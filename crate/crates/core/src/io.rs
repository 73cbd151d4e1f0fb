//! JSON interchange for games, behaviors, and odd-cycle certificates.
//!
//! Rationals are written as decimal `"num/den"` strings (`/den` omitted for
//! integers). Zero entries are omitted from game maps and certificates;
//! behavior files list every cell.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Game, GameError};
use crate::nspoly::{Behavior, BehaviorError, Shape};
use crate::oddcycle::DualCertificate;
use crate::rational::{serde_str, Rational};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid game: {0}")]
    Game(#[from] GameError),
    #[error("invalid behavior: {0}")]
    Behavior(#[from] BehaviorError),
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error("{0}")]
    Shape(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PiEntry {
    q: Vec<usize>,
    #[serde(with = "serde_str")]
    p: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PayoffEntry {
    q: Vec<usize>,
    a: Vec<usize>,
    #[serde(with = "serde_str")]
    v: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    name: String,
    players: usize,
    questions: Vec<usize>,
    answers: Vec<usize>,
    pi: Vec<PiEntry>,
    #[serde(rename = "V")]
    payoff: Vec<PayoffEntry>,
}

pub fn game_to_json(g: &Game) -> String {
    let file = GameFile {
        name: g.name().to_string(),
        players: g.players(),
        questions: g.question_sizes().to_vec(),
        answers: g.answer_sizes().to_vec(),
        pi: g
            .pi_support()
            .map(|(q, p)| PiEntry {
                q: q.clone(),
                p: p.clone(),
            })
            .collect(),
        payoff: g
            .payoff_entries()
            .map(|((a, q), v)| PayoffEntry {
                q: q.clone(),
                a: a.clone(),
                v: v.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("game serializes")
}

/// Parses and validates a game; `pi` must sum to exactly 1.
pub fn game_from_json(text: &str) -> Result<Game, IoError> {
    let file: GameFile = serde_json::from_str(text)?;
    if file.players != file.questions.len() || file.players != file.answers.len() {
        return Err(IoError::Shape(format!(
            "players = {} but {} question sizes and {} answer sizes",
            file.players,
            file.questions.len(),
            file.answers.len()
        )));
    }
    Ok(Game::new(
        file.name,
        file.questions,
        file.answers,
        file.pi.into_iter().map(|e| (e.q, e.p)),
        file.payoff.into_iter().map(|e| (e.a, e.q, e.v)),
    )?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellEntry {
    a: Vec<usize>,
    q: Vec<usize>,
    #[serde(with = "serde_str")]
    v: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BehaviorFile {
    questions: Vec<usize>,
    answers: Vec<usize>,
    p: Vec<CellEntry>,
}

pub fn behavior_to_json(b: &Behavior) -> String {
    let file = BehaviorFile {
        questions: b.shape().question_sizes.clone(),
        answers: b.shape().answer_sizes.clone(),
        p: b
            .entries()
            .map(|(a, q, v)| CellEntry { a, q, v: v.clone() })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("behavior serializes")
}

/// Parses a behavior table; every cell must be present exactly once.
pub fn behavior_from_json(text: &str) -> Result<Behavior, IoError> {
    let file: BehaviorFile = serde_json::from_str(text)?;
    if file.questions.len() != file.answers.len()
        || file.questions.is_empty()
        || file.questions.iter().chain(&file.answers).any(|&s| s == 0)
    {
        return Err(IoError::Shape(format!(
            "bad alphabet sizes {:?} / {:?}",
            file.questions, file.answers
        )));
    }
    let shape = Shape::new(file.questions, file.answers);
    Ok(Behavior::from_entries(
        shape,
        file.p.into_iter().map(|e| (e.a, e.q, e.v)),
    )?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertVar {
    family: String,
    idx: Vec<usize>,
    #[serde(with = "serde_str")]
    v: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertFile {
    n: usize,
    vars: Vec<CertVar>,
}

pub fn certificate_to_json(c: &DualCertificate) -> String {
    let mut vars = Vec::new();
    let mut push = |family: &str, idx: Vec<usize>, v: &Rational| {
        vars.push(CertVar {
            family: family.to_string(),
            idx,
            v: v.clone(),
        })
    };
    for (&(j, k), v) in &c.normalization {
        push("n", vec![j, k], v);
    }
    for (&(b, cc, j, k), v) in &c.symmetry {
        push("s", vec![b, cc, j, k], v);
    }
    for (&(d, j, k), v) in &c.a_to_bc {
        push("y", vec![d, j, k], v);
    }
    for (&(d, j, k), v) in &c.b_to_ac {
        push("z", vec![d, j, k], v);
    }
    serde_json::to_string_pretty(&CertFile { n: c.n, vars }).expect("certificate serializes")
}

/// Parses a certificate and checks its index ranges. Repeated variables are
/// rejected.
pub fn certificate_from_json(text: &str) -> Result<DualCertificate, IoError> {
    let file: CertFile = serde_json::from_str(text)?;
    let mut cert = DualCertificate::empty(file.n);
    for var in file.vars {
        let i = &var.idx;
        let dup = match (var.family.as_str(), i.len()) {
            ("n", 2) => cert.normalization.insert((i[0], i[1]), var.v).is_some(),
            ("s", 4) => cert.symmetry.insert((i[0], i[1], i[2], i[3]), var.v).is_some(),
            ("y", 3) => cert.a_to_bc.insert((i[0], i[1], i[2]), var.v).is_some(),
            ("z", 3) => cert.b_to_ac.insert((i[0], i[1], i[2]), var.v).is_some(),
            (f, len) => {
                return Err(IoError::Certificate(format!(
                    "unknown variable family {f:?} with {len} indices"
                )))
            }
        };
        if dup {
            return Err(IoError::Certificate(format!(
                "variable {}{:?} listed twice",
                var.family, var.idx
            )));
        }
    }
    cert.check_structure()
        .map_err(|e| IoError::Certificate(e.to_string()))?;
    Ok(cert)
}
