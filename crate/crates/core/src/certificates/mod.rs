//! Certificates: Hamiltonian-path orderings turned into `2n - 1` move
//! solutions, solution verification, and solution diagnostics.

mod paired;
mod profile;

pub use paired::{is_paired, paired_stickers, track_pair, PairFate, Pairing};
pub use profile::{analyze_solution, CubeMoveCounts, IndexClasses, IndexCount, RowParity, SolutionProfile};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hampath::CubicalInstance;
use crate::puzzle::{is_solved, parse_move, Axis, Geometry, Metric, Move, MoveAction, MoveSequence, Rotation};
use crate::reduction::ReducedInstance;

/// An ordering `i_1, ..., i_n` (1-based) of the labels along a Hamiltonian
/// path with `i_1 = 1` and `i_n = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathCertificate {
    pub ordering: Vec<usize>,
}

impl PathCertificate {
    pub fn new(ordering: Vec<usize>) -> Self {
        PathCertificate { ordering }
    }

    pub fn validate(&self, inst: &CubicalInstance) -> Result<()> {
        let n = inst.n();
        let ord = &self.ordering;
        if ord.len() != n {
            return Err(invalid(format!("ordering has {} entries for {n} labels", ord.len())));
        }
        let mut seen = vec![false; n + 1];
        for &i in ord {
            if i == 0 || i > n || std::mem::replace(&mut seen[i], true) {
                return Err(invalid("ordering is not a permutation of 1..n"));
            }
        }
        if ord[0] != 1 || ord[n - 1] != n {
            return Err(invalid("ordering must start at 1 and end at n"));
        }
        for w in ord.windows(2) {
            if inst.label(w[0]).differing_bit(inst.label(w[1])).is_none() {
                return Err(invalid(format!(
                    "labels {} and {} are not at Hamming distance one",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    /// For each step, the bit position where consecutive labels differ.
    fn steps(&self, inst: &CubicalInstance) -> Result<Vec<usize>> {
        self.validate(inst)?;
        Ok(self
            .ordering
            .windows(2)
            .map(|w| inst.label(w[0]).differing_bit(inst.label(w[1])).expect("validated"))
            .collect())
    }
}

/// `y_{i_1}, x_{j_1}, y_{i_2}, ..., x_{j_{n-1}}, y_{i_n}` in application
/// order, where `j_p` is the bit at which `l_{i_p}` and `l_{i_{p+1}}` differ.
pub fn synthesize_square_solution(inst: &CubicalInstance, cert: &PathCertificate) -> Result<MoveSequence> {
    let steps = cert.steps(inst)?;
    let mut out = Vec::with_capacity(2 * inst.n() - 1);
    for (p, &i) in cert.ordering.iter().enumerate() {
        out.push(Move::flip(Axis::Y, i as i32));
        if let Some(&j) = steps.get(p) {
            out.push(Move::flip(Axis::X, j as i32));
        }
    }
    Ok(MoveSequence::new(out))
}

/// Counterclockwise turns of slices `z_{m+i_p}` separated by quarter turns of
/// `x_{j_p}`: clockwise when the bit goes from 0 to 1 along the path,
/// counterclockwise when it goes from 1 to 0. Every move is a quarter turn,
/// so the same sequence serves both metrics.
pub fn synthesize_cube_solution(
    inst: &CubicalInstance,
    cert: &PathCertificate,
    metric: Metric,
) -> Result<MoveSequence> {
    if !matches!(metric, Metric::Stm | Metric::Sqtm) {
        return Err(invalid(format!("{metric:?} is not a Cube metric")));
    }
    let steps = cert.steps(inst)?;
    let m = inst.m();
    let mut out = Vec::with_capacity(2 * inst.n() - 1);
    for (p, &i) in cert.ordering.iter().enumerate() {
        out.push(Move::turn(Axis::Z, (m + i) as i32, Rotation::Ccw));
        if let Some(&j) = steps.get(p) {
            let rising = inst.label(cert.ordering[p + 1]).bit(j);
            let rotation = if rising { Rotation::Cw } else { Rotation::Ccw };
            out.push(Move::turn(Axis::X, j as i32, rotation));
        }
    }
    Ok(MoveSequence::new(out))
}

/// Why a candidate solution was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    LengthExceeded { length: usize, budget: usize },
    NotSolved,
    IllegalMove { token: String, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub accepted: bool,
    pub length: usize,
    pub budget: usize,
    pub reasons: Vec<Rejection>,
}

impl Verdict {
    fn from_reasons(length: usize, budget: usize, reasons: Vec<Rejection>) -> Verdict {
        Verdict {
            accepted: reasons.is_empty(),
            length,
            budget,
            reasons,
        }
    }
}

/// Whether `moves` takes the instance's start to a solved state within the
/// budget. Group instances must return every sticker to its home; others
/// only need monochromatic faces.
pub fn verify_solution(ri: &ReducedInstance, moves: &MoveSequence) -> Verdict {
    let mut reasons = Vec::new();
    if moves.len() > ri.k {
        reasons.push(Rejection::LengthExceeded {
            length: moves.len(),
            budget: ri.k,
        });
    }
    for mv in moves.moves() {
        if let Err(e) = mv.check(ri.kind(), ri.side, ri.metric()) {
            reasons.push(Rejection::IllegalMove {
                token: mv.to_string(),
                detail: e.to_string(),
            });
        }
    }
    let legal = !reasons.iter().any(|r| matches!(r, Rejection::IllegalMove { .. }));
    if legal && !reaches_solved(ri, moves) {
        reasons.push(Rejection::NotSolved);
    }
    Verdict::from_reasons(moves.len(), ri.k, reasons)
}

/// Like [`verify_solution`] for an unparsed token line; unparsable tokens
/// are reported as illegal moves.
pub fn verify_tokens(ri: &ReducedInstance, text: &str) -> Verdict {
    let mut moves = Vec::new();
    let mut bad = Vec::new();
    for tok in text.split_whitespace() {
        match parse_move(tok, ri.kind(), ri.side) {
            Ok(m) => moves.push(m),
            Err(e) => bad.push(Rejection::IllegalMove {
                token: tok.to_string(),
                detail: e.to_string(),
            }),
        }
    }
    if bad.is_empty() {
        return verify_solution(ri, &MoveSequence::new(moves));
    }
    let length = moves.len() + bad.len();
    if length > ri.k {
        bad.insert(0, Rejection::LengthExceeded { length, budget: ri.k });
    }
    Verdict::from_reasons(length, ri.k, bad)
}

fn reaches_solved(ri: &ReducedInstance, moves: &MoveSequence) -> bool {
    let geom = Geometry::new(ri.kind(), ri.side).expect("instance geometry is valid");
    let actions = moves.moves().iter().map(|mv| MoveAction::new(&geom, mv).expect("checked legal"));
    if ri.group {
        let t = ri.transformation.as_ref().expect("group instances carry t");
        let mut at = vec![0u32; t.len()];
        for (i, &j) in t.map().iter().enumerate() {
            at[j as usize] = i as u32;
        }
        for a in actions {
            a.apply(&mut at);
        }
        at.iter().enumerate().all(|(p, &i)| p == i as usize)
    } else {
        let mut config = ri.configuration.clone().expect("non-group instances carry C_t");
        let mut colors = config.colors().to_vec();
        for a in actions {
            a.apply(&mut colors);
        }
        config = crate::puzzle::PuzzleConfig::from_colors(config.kind(), config.side(), colors)
            .expect("same dimensions");
        is_solved(&config)
    }
}
