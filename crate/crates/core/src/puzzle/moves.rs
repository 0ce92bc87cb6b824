use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::geometry::{is_valid_coord, Axis, Geometry, Point, PuzzleKind};
use crate::error::{invalid, Error, Result};

/// Rotation amount of a Cube slice turn, named looking from the positive end
/// of the slice's axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rotation {
    Cw,
    Ccw,
    Half,
}

impl Rotation {
    pub fn inverse(self) -> Rotation {
        match self {
            Rotation::Cw => Rotation::Ccw,
            Rotation::Ccw => Rotation::Cw,
            Rotation::Half => Rotation::Half,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Rotation::Cw => "cw",
            Rotation::Ccw => "ccw",
            Rotation::Half => "half",
        }
    }

    /// Number of positive (right-handed) quarter turns.
    fn quarter_turns(self) -> u8 {
        match self {
            Rotation::Ccw => 1,
            Rotation::Half => 2,
            Rotation::Cw => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Metric {
    /// Row and column flips of the Square.
    SquareFlip,
    /// Slice Turn Metric: any multiple of 90°.
    Stm,
    /// Slice Quarter Turn Metric: ±90° only.
    Sqtm,
}

impl Metric {
    pub fn default_for(kind: PuzzleKind) -> Metric {
        match kind {
            PuzzleKind::Square => Metric::SquareFlip,
            PuzzleKind::Cube => Metric::Stm,
        }
    }

    pub fn kind(self) -> PuzzleKind {
        match self {
            Metric::SquareFlip => PuzzleKind::Square,
            Metric::Stm | Metric::Sqtm => PuzzleKind::Cube,
        }
    }
}

/// A single move.
///
/// `Flip { axis: X, index: j }` is the Square column flip `x_j` (the cubies
/// with x-coordinate `j`); `Flip { axis: Y, index: i }` is the row flip `y_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Flip { axis: Axis, index: i32 },
    Turn { axis: Axis, index: i32, rotation: Rotation },
}

impl Move {
    pub fn flip(axis: Axis, index: i32) -> Move {
        Move::Flip { axis, index }
    }

    pub fn turn(axis: Axis, index: i32, rotation: Rotation) -> Move {
        Move::Turn { axis, index, rotation }
    }

    pub fn axis(&self) -> Axis {
        match *self {
            Move::Flip { axis, .. } | Move::Turn { axis, .. } => axis,
        }
    }

    pub fn index(&self) -> i32 {
        match *self {
            Move::Flip { index, .. } | Move::Turn { index, .. } => index,
        }
    }

    pub fn rotation(&self) -> Option<Rotation> {
        match *self {
            Move::Flip { .. } => None,
            Move::Turn { rotation, .. } => Some(rotation),
        }
    }

    pub fn kind(&self) -> PuzzleKind {
        match self {
            Move::Flip { .. } => PuzzleKind::Square,
            Move::Turn { .. } => PuzzleKind::Cube,
        }
    }

    pub fn inverse(&self) -> Move {
        match *self {
            Move::Flip { .. } => *self,
            Move::Turn { axis, index, rotation } => Move::Turn {
                axis,
                index,
                rotation: rotation.inverse(),
            },
        }
    }

    /// Whether the move is legal on a puzzle of this kind and side under the
    /// metric.
    pub fn check(&self, kind: PuzzleKind, side: usize, metric: Metric) -> Result<()> {
        if metric.kind() != kind {
            return Err(invalid(format!("metric {metric:?} does not apply to a {kind}")));
        }
        if self.kind() != kind {
            return Err(invalid(format!("move {self} is not a {kind} move")));
        }
        if kind == PuzzleKind::Square && self.axis() == Axis::Z {
            return Err(invalid("the Square has no z moves"));
        }
        if !is_valid_coord(self.index(), side) {
            return Err(invalid(format!(
                "index {} is not a valid coordinate for side {side}",
                self.index()
            )));
        }
        if metric == Metric::Sqtm && self.rotation() == Some(Rotation::Half) {
            return Err(invalid(format!("{self} is not a quarter turn")));
        }
        Ok(())
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Flip { axis, index } => write!(f, "{}:{}", axis.letter(), index),
            Move::Turn { axis, index, rotation } => {
                write!(f, "{}:{}:{}", axis.letter(), index, rotation.token())
            }
        }
    }
}

/// Formats a move as its token.
pub fn format_move(m: &Move) -> String {
    m.to_string()
}

/// Parses a move token for a puzzle of the given kind and side.
///
/// Square tokens are `<axis>:<index>` with axis `x` or `y`; Cube tokens are
/// `<axis>:<index>:<rot>` with rot one of `cw`, `ccw`, `half`. Indices are
/// signed decimals without leading zeros.
pub fn parse_move(token: &str, kind: PuzzleKind, side: usize) -> Result<Move> {
    let bad = |reason: &str| Error::MalformedMove {
        token: token.to_string(),
        reason: reason.to_string(),
    };
    let parts: Vec<&str> = token.split(':').collect();
    let expected = match kind {
        PuzzleKind::Square => 2,
        PuzzleKind::Cube => 3,
    };
    if parts.len() != expected {
        return Err(bad(&format!("expected {expected} ':'-separated fields")));
    }
    let axis = match (parts[0], kind) {
        ("x", _) => Axis::X,
        ("y", _) => Axis::Y,
        ("z", PuzzleKind::Cube) => Axis::Z,
        _ => return Err(bad("unknown axis")),
    };
    let index = parse_index(parts[1]).ok_or_else(|| bad("index is not a canonical signed integer"))?;
    if !is_valid_coord(index, side) {
        return Err(bad(&format!("index out of range for side {side}")));
    }
    match kind {
        PuzzleKind::Square => Ok(Move::Flip { axis, index }),
        PuzzleKind::Cube => {
            let rotation = match parts[2] {
                "cw" => Rotation::Cw,
                "ccw" => Rotation::Ccw,
                "half" => Rotation::Half,
                _ => return Err(bad("unknown rotation")),
            };
            Ok(Move::Turn { axis, index, rotation })
        }
    }
}

fn parse_index(text: &str) -> Option<i32> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    if text.starts_with('-') && digits == "0" {
        return None;
    }
    text.parse().ok()
}

/// All moves of a metric, in canonical order: axis `x < y < z`, then index
/// ascending, then `cw < ccw < half`. Search tie-breaking follows this order.
pub fn enumerate_moves(kind: PuzzleKind, side: usize, metric: Metric) -> Result<Vec<Move>> {
    if metric.kind() != kind {
        return Err(invalid(format!("metric {metric:?} does not apply to a {kind}")));
    }
    if side < 2 {
        return Err(invalid(format!("side must be at least 2, got {side}")));
    }
    let indices = super::geometry::coords(side);
    let mut out = Vec::new();
    match metric {
        Metric::SquareFlip => {
            for axis in [Axis::X, Axis::Y] {
                out.extend(indices.iter().map(|&index| Move::Flip { axis, index }));
            }
        }
        Metric::Stm | Metric::Sqtm => {
            let rots: &[Rotation] = if metric == Metric::Stm {
                &[Rotation::Cw, Rotation::Ccw, Rotation::Half]
            } else {
                &[Rotation::Cw, Rotation::Ccw]
            };
            for axis in Axis::ALL {
                for &index in &indices {
                    out.extend(rots.iter().map(|&rotation| Move::Turn { axis, index, rotation }));
                }
            }
        }
    }
    Ok(out)
}

/// Rotates a sticker point about `axis` by `quarter` positive (right-handed)
/// quarter turns.
fn rotate_point(p: Point, axis: Axis, quarter: u8) -> Point {
    let k = axis.index();
    let (a, b) = ((k + 1) % 3, (k + 2) % 3);
    let mut out = p;
    let (mut x, mut y) = (p[a], p[b]);
    for _ in 0..quarter {
        (x, y) = (-y, x);
    }
    out[a] = x;
    out[b] = y;
    out
}

/// The stickers a move relocates, as `(from, to)` pairs of canonical ids.
///
/// Pairs are sorted by `from`; the `to` column is a permutation of the
/// `from` column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveAction {
    pub pairs: Vec<(u32, u32)>,
}

impl MoveAction {
    pub fn new(geom: &Geometry, mv: &Move) -> Result<MoveAction> {
        let metric = match mv {
            Move::Flip { .. } => Metric::SquareFlip,
            Move::Turn { .. } => Metric::Stm,
        };
        mv.check(geom.kind(), geom.side(), metric)?;
        let axis = mv.axis();
        let index = mv.index();
        let quarter = match mv {
            Move::Flip { .. } => 2,
            Move::Turn { rotation, .. } => rotation.quarter_turns(),
        };
        let k = axis.index();
        let others = [Axis::from_index((k + 1) % 3), Axis::from_index((k + 2) % 3)];

        let mut points: Vec<Point> = Vec::new();
        // Side strips: stickers in the slice on the four faces around the axis.
        for (which, &face_axis) in others.iter().enumerate() {
            let along = others[1 - which];
            let out = geom.outside(face_axis);
            for sign in [1, -1] {
                for c in geom.axis_coords(along) {
                    let mut p = [0; 3];
                    p[k] = index;
                    p[face_axis.index()] = sign * out;
                    p[along.index()] = c;
                    points.push(p);
                }
            }
        }
        // Face slices also carry the whole face.
        let max = geom.max_coord();
        if index.abs() == max {
            let out = geom.outside(axis) * index.signum();
            for c0 in geom.axis_coords(others[0]) {
                for c1 in geom.axis_coords(others[1]) {
                    let mut p = [0; 3];
                    p[k] = out;
                    p[others[0].index()] = c0;
                    p[others[1].index()] = c1;
                    points.push(p);
                }
            }
        }

        let mut pairs = Vec::with_capacity(points.len());
        for p in points {
            let from = geom
                .id_of_point(p)
                .expect("slice point is a sticker") as u32;
            let to = geom
                .id_of_point(rotate_point(p, axis, quarter))
                .expect("rotated sticker stays on the puzzle") as u32;
            if from != to {
                pairs.push((from, to));
            }
        }
        pairs.sort_unstable();
        Ok(MoveAction { pairs })
    }

    pub fn inverse(&self) -> MoveAction {
        let mut pairs: Vec<(u32, u32)> = self.pairs.iter().map(|&(f, t)| (t, f)).collect();
        pairs.sort_unstable();
        MoveAction { pairs }
    }

    /// Moves the entry at each `from` to `to`, in place. `data` is indexed
    /// by sticker position, e.g. a color or sticker-label array.
    pub fn apply<T: Copy>(&self, data: &mut [T]) {
        let moved: Vec<T> = self.pairs.iter().map(|&(f, _)| data[f as usize]).collect();
        for (&(_, t), v) in self.pairs.iter().zip(moved) {
            data[t as usize] = v;
        }
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs.iter().map(|&(f, _)| f)
    }
}

/// Parsed list of moves in application order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSequence(pub Vec<Move>);

impl MoveSequence {
    pub fn new(moves: Vec<Move>) -> Self {
        MoveSequence(moves)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    /// Parses a whitespace-separated token line.
    pub fn parse(text: &str, kind: PuzzleKind, side: usize) -> Result<MoveSequence> {
        text.split_whitespace()
            .map(|tok| parse_move(tok, kind, side))
            .collect::<Result<Vec<_>>>()
            .map(MoveSequence)
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for Rotation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cw" => Ok(Rotation::Cw),
            "ccw" => Ok(Rotation::Ccw),
            "half" => Ok(Rotation::Half),
            _ => Err(invalid(format!("unknown rotation `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn move_counts() {
        assert_eq!(enumerate_moves(PuzzleKind::Square, 12, Metric::SquareFlip).unwrap().len(), 24);
        assert_eq!(enumerate_moves(PuzzleKind::Cube, 16, Metric::Stm).unwrap().len(), 144);
        assert_eq!(enumerate_moves(PuzzleKind::Cube, 16, Metric::Sqtm).unwrap().len(), 96);
        assert!(enumerate_moves(PuzzleKind::Cube, 4, Metric::SquareFlip).is_err());
        assert!(enumerate_moves(PuzzleKind::Square, 4, Metric::Stm).is_err());
    }

    #[test]
    fn token_grammar() {
        assert_eq!(
            parse_move("y:-5", PuzzleKind::Square, 12).unwrap(),
            Move::flip(Axis::Y, -5)
        );
        assert_eq!(
            parse_move("z:7:ccw", PuzzleKind::Cube, 16).unwrap(),
            Move::turn(Axis::Z, 7, Rotation::Ccw)
        );
        for bad in ["x:0:cw", "x:07:cw", "x:-0:cw", "x:+1:cw", "w:1:cw", "x:1", "x:1:quarter", "x:9:cw", "x::cw"] {
            assert!(parse_move(bad, PuzzleKind::Cube, 16).is_err(), "{bad}");
        }
        assert!(parse_move("z:1", PuzzleKind::Square, 4).is_err());
        assert!(parse_move("x:1:cw", PuzzleKind::Square, 4).is_err());
        assert_eq!(parse_move("x:0:half", PuzzleKind::Cube, 5).unwrap().index(), 0);
    }

    #[test]
    fn format_parse_roundtrip() {
        for (kind, metric) in [(PuzzleKind::Square, Metric::SquareFlip), (PuzzleKind::Cube, Metric::Stm)] {
            for side in [4, 5] {
                for m in enumerate_moves(kind, side, metric).unwrap() {
                    assert_eq!(parse_move(&format_move(&m), kind, side).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn quarter_rotation_conventions() {
        // Looking from +z, clockwise takes +y to +x.
        assert_eq!(rotate_point([0, 5, 1], Axis::Z, Rotation::Cw.quarter_turns()), [5, 0, 1]);
        // Looking from +x, clockwise takes +z to +y.
        assert_eq!(rotate_point([1, 0, 5], Axis::X, Rotation::Cw.quarter_turns()), [1, 5, 0]);
        assert_eq!(rotate_point([2, 3, 4], Axis::Y, 4), [2, 3, 4]);
    }

    #[test]
    fn action_support_sizes() {
        let g = Geometry::new(PuzzleKind::Cube, 6).unwrap();
        let inner = MoveAction::new(&g, &Move::turn(Axis::Z, 1, Rotation::Cw)).unwrap();
        assert_eq!(inner.pairs.len(), 24);
        let face = MoveAction::new(&g, &Move::turn(Axis::Z, 3, Rotation::Cw)).unwrap();
        // 4s strip stickers plus s² face stickers, minus nothing fixed for even s.
        assert_eq!(face.pairs.len(), 24 + 36);
        let sq = Geometry::new(PuzzleKind::Square, 6).unwrap();
        let row = MoveAction::new(&sq, &Move::flip(Axis::Y, 3)).unwrap();
        // 2s top/bottom, 2 side stickers, s edge stickers.
        assert_eq!(row.pairs.len(), 12 + 2 + 6);
    }
}
