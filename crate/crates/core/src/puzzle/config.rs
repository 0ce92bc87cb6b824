use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use super::geometry::{Face, Geometry, PuzzleKind};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Color {
    Red,
    Blue,
    Green,
    White,
    Yellow,
    Orange,
}

impl Color {
    pub const ALL: [Color; 6] = [
        Color::Red,
        Color::Blue,
        Color::Green,
        Color::White,
        Color::Yellow,
        Color::Orange,
    ];

    pub fn code(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
            Color::Green => 'G',
            Color::White => 'W',
            Color::Yellow => 'Y',
            Color::Orange => 'O',
        }
    }

    pub fn from_code(c: char) -> Option<Color> {
        Color::ALL.into_iter().find(|col| col.code() == c)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// Color of each face in the canonical solved configuration.
///
/// Cube: `+x` orange, `-x` red, `+y` green, `-y` yellow, `+z` white, `-z`
/// blue. Square: top (`+z`) red, bottom (`-z`) blue, and the four sides
/// `+x` orange, `-x` white, `+y` green, `-y` yellow.
pub fn solved_face_color(kind: PuzzleKind, face: Face) -> Color {
    match (kind, face) {
        (PuzzleKind::Cube, Face::PosX) => Color::Orange,
        (PuzzleKind::Cube, Face::NegX) => Color::Red,
        (PuzzleKind::Cube, Face::PosY) => Color::Green,
        (PuzzleKind::Cube, Face::NegY) => Color::Yellow,
        (PuzzleKind::Cube, Face::PosZ) => Color::White,
        (PuzzleKind::Cube, Face::NegZ) => Color::Blue,
        (PuzzleKind::Square, Face::PosZ) => Color::Red,
        (PuzzleKind::Square, Face::NegZ) => Color::Blue,
        (PuzzleKind::Square, Face::PosX) => Color::Orange,
        (PuzzleKind::Square, Face::NegX) => Color::White,
        (PuzzleKind::Square, Face::PosY) => Color::Green,
        (PuzzleKind::Square, Face::NegY) => Color::Yellow,
    }
}

/// A color for every sticker position, stored in canonical id order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuzzleConfig {
    kind: PuzzleKind,
    side: usize,
    colors: Vec<Color>,
}

impl PuzzleConfig {
    pub fn from_colors(kind: PuzzleKind, side: usize, colors: Vec<Color>) -> Result<Self> {
        let n = Geometry::new(kind, side)?.num_stickers();
        if colors.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} colors for a puzzle with {n} stickers",
                colors.len()
            )));
        }
        Ok(PuzzleConfig { kind, side, colors })
    }

    /// Builds a configuration whose faces are uniformly colored.
    pub fn with_face_colors(kind: PuzzleKind, side: usize, face_color: impl Fn(Face) -> Color) -> Result<Self> {
        let geom = Geometry::new(kind, side)?;
        let mut colors = Vec::with_capacity(geom.num_stickers());
        for face in Face::ALL {
            colors.extend(std::iter::repeat_n(face_color(face), geom.face_size(face)));
        }
        Ok(PuzzleConfig { kind, side, colors })
    }

    pub fn kind(&self) -> PuzzleKind {
        self.kind
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn geometry(&self) -> Geometry {
        Geometry::new(self.kind, self.side).expect("validated at construction")
    }

    pub fn color_at(&self, id: usize) -> Color {
        self.colors[id]
    }

    pub fn face_colors(&self, face: Face) -> &[Color] {
        &self.colors[self.geometry().face_range(face)]
    }
}

/// The canonical solved configuration `C_0`.
pub fn make_solved(kind: PuzzleKind, side: usize) -> Result<PuzzleConfig> {
    PuzzleConfig::with_face_colors(kind, side, |f| solved_face_color(kind, f))
}

/// Like [`make_solved`], but rejects the odd sides that reductions never
/// produce.
pub fn make_solved_even(kind: PuzzleKind, side: usize) -> Result<PuzzleConfig> {
    if side % 2 == 1 {
        return Err(invalid(format!("reduction puzzles have even side, got {side}")));
    }
    make_solved(kind, side)
}

/// Every face monochromatic, and the six face colors pairwise distinct.
pub fn is_solved(config: &PuzzleConfig) -> bool {
    let geom = config.geometry();
    let mut used = [false; 6];
    for face in Face::ALL {
        let cs = &config.colors[geom.face_range(face)];
        let first = cs[0];
        if cs.iter().any(|&c| c != first) || std::mem::replace(&mut used[first.index()], true) {
            return false;
        }
    }
    true
}

#[derive(Serialize, Deserialize)]
struct ConfigDoc {
    kind: PuzzleKind,
    side: usize,
    faces: BTreeMap<String, Vec<Vec<String>>>,
}

impl Serialize for PuzzleConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let geom = self.geometry();
        let mut faces = BTreeMap::new();
        for face in Face::ALL {
            let (_, nv) = geom.face_dims(face);
            let rows = self.colors[geom.face_range(face)]
                .chunks(nv)
                .map(|row| row.iter().map(|c| c.code().to_string()).collect())
                .collect();
            faces.insert(face.label().to_string(), rows);
        }
        ConfigDoc {
            kind: self.kind,
            side: self.side,
            faces,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PuzzleConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ConfigDoc::deserialize(d)?;
        config_from_doc(doc).map_err(serde::de::Error::custom)
    }
}

fn config_from_doc(doc: ConfigDoc) -> Result<PuzzleConfig> {
    let geom = Geometry::new(doc.kind, doc.side)?;
    if doc.faces.len() != 6 {
        return Err(Error::Schema(format!("expected 6 faces, got {}", doc.faces.len())));
    }
    let mut colors = Vec::with_capacity(geom.num_stickers());
    for face in Face::ALL {
        let rows = doc
            .faces
            .get(face.label())
            .ok_or_else(|| Error::Schema(format!("missing face {face}")))?;
        let (nu, nv) = geom.face_dims(face);
        if rows.len() != nu || rows.iter().any(|r| r.len() != nv) {
            return Err(Error::Schema(format!("face {face} must be {nu}x{nv}")));
        }
        for code in rows.iter().flatten() {
            let mut chars = code.chars();
            let color = match (chars.next(), chars.next()) {
                (Some(c), None) => Color::from_code(c),
                _ => None,
            }
            .ok_or_else(|| Error::Schema(format!("bad color code `{code}`")))?;
            colors.push(color);
        }
    }
    PuzzleConfig::from_colors(doc.kind, doc.side, colors)
}
