//! Coordinates, faces and the canonical dense sticker numbering.
//!
//! Every sticker is identified by the face it sits on and two in-face
//! coordinates `(u, v)`:
//!
//! | face  | u | v |
//! |-------|---|---|
//! | `±z`  | x | y |
//! | `±x`  | y | z |
//! | `±y`  | x | z |
//!
//! The Square is modelled as an `s × s × 1` box whose single layer has
//! z-coordinate `0`, so its side stickers carry `v = 0` as the fixed slot.
//!
//! Canonical ids enumerate faces in the order `+z, -z, +x, -x, +y, -y`, and
//! within a face increase with `u` first and then `v` (row-major with `u` as
//! the row). This ordering is part of the permutation file format and must
//! not change.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PuzzleKind {
    Square,
    Cube,
}

impl fmt::Display for PuzzleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PuzzleKind::Square => "square",
            PuzzleKind::Cube => "cube",
        })
    }
}

impl FromStr for PuzzleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(PuzzleKind::Square),
            "cube" => Ok(PuzzleKind::Cube),
            other => Err(invalid(format!("unknown puzzle kind `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    PosZ,
    NegZ,
    PosX,
    NegX,
    PosY,
    NegY,
}

impl Face {
    /// Faces in canonical id order.
    pub const ALL: [Face; 6] = [
        Face::PosZ,
        Face::NegZ,
        Face::PosX,
        Face::NegX,
        Face::PosY,
        Face::NegY,
    ];

    pub fn normal_axis(self) -> Axis {
        match self {
            Face::PosX | Face::NegX => Axis::X,
            Face::PosY | Face::NegY => Axis::Y,
            Face::PosZ | Face::NegZ => Axis::Z,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Face::PosX | Face::PosY | Face::PosZ)
    }

    pub fn from_axis(axis: Axis, positive: bool) -> Face {
        match (axis, positive) {
            (Axis::X, true) => Face::PosX,
            (Axis::X, false) => Face::NegX,
            (Axis::Y, true) => Face::PosY,
            (Axis::Y, false) => Face::NegY,
            (Axis::Z, true) => Face::PosZ,
            (Axis::Z, false) => Face::NegZ,
        }
    }

    /// The axes carrying the `(u, v)` in-face coordinates.
    pub fn in_face_axes(self) -> (Axis, Axis) {
        match self.normal_axis() {
            Axis::Z => (Axis::X, Axis::Y),
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::X, Axis::Z),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Face::PosZ => "+z",
            Face::NegZ => "-z",
            Face::PosX => "+x",
            Face::NegX => "-x",
            Face::PosY => "+y",
            Face::NegY => "-y",
        }
    }

    fn ordinal(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Face {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Face::ALL
            .into_iter()
            .find(|f| f.label() == s)
            .ok_or_else(|| invalid(format!("unknown face `{s}`")))
    }
}

/// A validated slice coordinate for a puzzle of a given side length.
///
/// Even sides `s = 2a` use `{-a..-1} ∪ {1..a}`; odd sides `s = 2a+1` use
/// `{-a..a}`. Under this scheme a move only ever permutes and negates the
/// coordinates of the stickers it relocates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord(i32);

impl Coord {
    pub fn new(value: i32, side: usize) -> Result<Coord> {
        if is_valid_coord(value, side) {
            Ok(Coord(value))
        } else {
            Err(invalid(format!(
                "coordinate {value} is not valid for side {side}"
            )))
        }
    }

    pub fn value(self) -> i32 {
        self.0
    }
}

pub fn is_valid_coord(value: i32, side: usize) -> bool {
    let a = (side / 2) as i32;
    if side.is_multiple_of(2) {
        value != 0 && value.abs() <= a
    } else {
        value.abs() <= a
    }
}

/// All valid coordinates for `side`, ascending.
pub fn coords(side: usize) -> Vec<i32> {
    let a = (side / 2) as i32;
    (-a..=a)
        .filter(|&c| side % 2 == 1 || c != 0)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StickerPos {
    pub face: Face,
    pub u: i32,
    pub v: i32,
}

impl StickerPos {
    pub fn new(face: Face, u: i32, v: i32) -> Self {
        StickerPos { face, u, v }
    }
}

impl fmt::Display for StickerPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.face, self.u, self.v)
    }
}

/// A point in "sticker space": the cubie coordinates of the sticker with the
/// face-normal component pushed one step outside the puzzle. Slice rotations
/// act on these points by permuting and negating components.
pub type Point = [i32; 3];

/// Sticker layout of one puzzle of fixed kind and side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    kind: PuzzleKind,
    side: usize,
    max: i32,
    face_offsets: [usize; 7],
}

impl Geometry {
    pub fn new(kind: PuzzleKind, side: usize) -> Result<Geometry> {
        if side < 2 {
            return Err(invalid(format!("side must be at least 2, got {side}")));
        }
        if side > 4096 {
            return Err(invalid(format!("side {side} is too large")));
        }
        let mut face_offsets = [0usize; 7];
        let mut acc = 0;
        for (k, face) in Face::ALL.into_iter().enumerate() {
            face_offsets[k] = acc;
            let (nu, nv) = face_dims(kind, side, face);
            acc += nu * nv;
        }
        face_offsets[6] = acc;
        Ok(Geometry {
            kind,
            side,
            max: (side / 2) as i32,
            face_offsets,
        })
    }

    pub fn kind(&self) -> PuzzleKind {
        self.kind
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// Largest coordinate value; the face slices have index `±max`.
    pub fn max_coord(&self) -> i32 {
        self.max
    }

    pub fn num_stickers(&self) -> usize {
        self.face_offsets[6]
    }

    pub fn face_dims(&self, face: Face) -> (usize, usize) {
        face_dims(self.kind, self.side, face)
    }

    pub fn face_size(&self, face: Face) -> usize {
        let (nu, nv) = self.face_dims(face);
        nu * nv
    }

    /// Id range occupied by a face.
    pub fn face_range(&self, face: Face) -> std::ops::Range<usize> {
        let k = face.ordinal();
        self.face_offsets[k]..self.face_offsets[k + 1]
    }

    pub fn face_of_id(&self, id: usize) -> Face {
        let k = self.face_offsets[1..]
            .iter()
            .position(|&end| id < end)
            .expect("sticker id out of range");
        Face::ALL[k]
    }

    /// Valid coordinates along an axis. The Square's z axis is the single
    /// layer `{0}`.
    pub fn axis_coords(&self, axis: Axis) -> Vec<i32> {
        if self.kind == PuzzleKind::Square && axis == Axis::Z {
            vec![0]
        } else {
            coords(self.side)
        }
    }

    /// Face-normal component of a sticker point on a positive face.
    pub fn outside(&self, axis: Axis) -> i32 {
        if self.kind == PuzzleKind::Square && axis == Axis::Z {
            1
        } else {
            self.max + 1
        }
    }

    fn axis_index(&self, axis: Axis, value: i32) -> Option<usize> {
        if self.kind == PuzzleKind::Square && axis == Axis::Z {
            return (value == 0).then_some(0);
        }
        if !is_valid_coord(value, self.side) {
            return None;
        }
        let shifted = value + self.max;
        if self.side.is_multiple_of(2) && value > 0 {
            Some((shifted - 1) as usize)
        } else {
            Some(shifted as usize)
        }
    }

    fn axis_value(&self, axis: Axis, index: usize) -> i32 {
        if self.kind == PuzzleKind::Square && axis == Axis::Z {
            return 0;
        }
        let v = index as i32 - self.max;
        if self.side.is_multiple_of(2) && v >= 0 {
            v + 1
        } else {
            v
        }
    }

    pub fn contains(&self, pos: StickerPos) -> bool {
        self.id_of(pos).is_some()
    }

    pub fn id_of(&self, pos: StickerPos) -> Option<usize> {
        let (ua, va) = pos.face.in_face_axes();
        let ui = self.axis_index(ua, pos.u)?;
        let vi = self.axis_index(va, pos.v)?;
        let (_, nv) = self.face_dims(pos.face);
        Some(self.face_offsets[pos.face.ordinal()] + ui * nv + vi)
    }

    pub fn pos_of(&self, id: usize) -> StickerPos {
        let face = self.face_of_id(id);
        let local = id - self.face_offsets[face.ordinal()];
        let (_, nv) = self.face_dims(face);
        let (ua, va) = face.in_face_axes();
        StickerPos {
            face,
            u: self.axis_value(ua, local / nv),
            v: self.axis_value(va, local % nv),
        }
    }

    pub fn point_of(&self, pos: StickerPos) -> Point {
        let mut p = [0i32; 3];
        let n = pos.face.normal_axis();
        let out = self.outside(n);
        p[n.index()] = if pos.face.is_positive() { out } else { -out };
        let (ua, va) = pos.face.in_face_axes();
        p[ua.index()] = pos.u;
        p[va.index()] = pos.v;
        p
    }

    pub fn pos_of_point(&self, p: Point) -> Option<StickerPos> {
        for axis in Axis::ALL {
            let out = self.outside(axis);
            let c = p[axis.index()];
            if c.abs() == out {
                let face = Face::from_axis(axis, c > 0);
                let (ua, va) = face.in_face_axes();
                let pos = StickerPos {
                    face,
                    u: p[ua.index()],
                    v: p[va.index()],
                };
                return self.contains(pos).then_some(pos);
            }
        }
        None
    }

    pub fn id_of_point(&self, p: Point) -> Option<usize> {
        self.pos_of_point(p).and_then(|pos| self.id_of(pos))
    }

    pub fn positions(&self) -> impl Iterator<Item = StickerPos> + '_ {
        (0..self.num_stickers()).map(|id| self.pos_of(id))
    }
}

fn face_dims(kind: PuzzleKind, side: usize, face: Face) -> (usize, usize) {
    match kind {
        PuzzleKind::Cube => (side, side),
        PuzzleKind::Square => match face.normal_axis() {
            Axis::Z => (side, side),
            _ => (side, 1),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sticker_counts() {
        for s in 2..=16 {
            assert_eq!(Geometry::new(PuzzleKind::Cube, s).unwrap().num_stickers(), 6 * s * s);
            assert_eq!(
                Geometry::new(PuzzleKind::Square, s).unwrap().num_stickers(),
                2 * s * s + 4 * s
            );
        }
        assert_eq!(Geometry::new(PuzzleKind::Cube, 36).unwrap().num_stickers(), 7776);
    }

    #[test]
    fn coordinate_schemes() {
        assert_eq!(coords(4), vec![-2, -1, 1, 2]);
        assert_eq!(coords(5), vec![-2, -1, 0, 1, 2]);
        assert!(Coord::new(0, 4).is_err());
        assert!(Coord::new(0, 5).is_ok());
        assert!(Coord::new(3, 4).is_err());
        assert_eq!(Coord::new(-2, 4).unwrap().value(), -2);
    }

    #[test]
    fn id_roundtrip() {
        for kind in [PuzzleKind::Square, PuzzleKind::Cube] {
            for s in [2, 3, 4, 5, 8] {
                let g = Geometry::new(kind, s).unwrap();
                for id in 0..g.num_stickers() {
                    let pos = g.pos_of(id);
                    assert_eq!(g.id_of(pos), Some(id));
                    assert_eq!(g.id_of_point(g.point_of(pos)), Some(id));
                }
            }
        }
    }

    #[test]
    fn canonical_order_is_face_then_u_then_v() {
        let g = Geometry::new(PuzzleKind::Cube, 2).unwrap();
        assert_eq!(g.pos_of(0), StickerPos::new(Face::PosZ, -1, -1));
        assert_eq!(g.pos_of(1), StickerPos::new(Face::PosZ, -1, 1));
        assert_eq!(g.pos_of(2), StickerPos::new(Face::PosZ, 1, -1));
        assert_eq!(g.pos_of(4).face, Face::NegZ);
        let sq = Geometry::new(PuzzleKind::Square, 2).unwrap();
        assert_eq!(sq.pos_of(8), StickerPos::new(Face::PosX, -1, 0));
        assert_eq!(sq.face_range(Face::NegY), 14..16);
    }

    #[test]
    fn rejects_tiny_sides() {
        assert!(Geometry::new(PuzzleKind::Cube, 1).is_err());
        assert!(Geometry::new(PuzzleKind::Square, 0).is_err());
    }
}
