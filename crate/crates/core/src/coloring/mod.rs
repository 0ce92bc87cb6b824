//! Closed-form colorings of `C_b` and `C_t`, and face renderers.

mod render;

pub use render::{render_coloring, render_config, FaceSelection, RenderFormat};

use crate::error::{Error, Result};
use crate::hampath::CubicalInstance;
use crate::puzzle::{Color, Face, Geometry, PuzzleConfig, PuzzleKind, StickerPermutation};
use crate::reduction::{build_a, reduction_side};

/// A predicted color for some sticker positions. Square predictions cover
/// only the `±z` faces; Cube predictions cover every sticker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedColoring {
    kind: PuzzleKind,
    side: usize,
    colors: Vec<Option<Color>>,
}

impl PredictedColoring {
    pub fn kind(&self) -> PuzzleKind {
        self.kind
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn get(&self, id: usize) -> Option<Color> {
        self.colors[id]
    }

    pub fn covered(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    /// Covered positions whose color differs from `config`.
    pub fn mismatches(&self, config: &PuzzleConfig) -> Result<Vec<usize>> {
        if config.kind() != self.kind || config.side() != self.side {
            return Err(Error::DimensionMismatch("prediction and configuration differ in shape".into()));
        }
        Ok(self
            .colors
            .iter()
            .zip(config.colors())
            .enumerate()
            .filter(|(_, (p, &c))| p.is_some_and(|p| p != c))
            .map(|(id, _)| id)
            .collect())
    }

    pub fn matches(&self, config: &PuzzleConfig) -> bool {
        self.mismatches(config).is_ok_and(|m| m.is_empty())
    }

    /// The coloring after applying `p`.
    pub fn permuted(&self, p: &StickerPermutation) -> Result<PredictedColoring> {
        if p.kind() != self.kind || p.side() != self.side {
            return Err(Error::DimensionMismatch("permutation and prediction differ in shape".into()));
        }
        let mut colors = vec![None; self.colors.len()];
        for (i, &j) in p.map().iter().enumerate() {
            colors[j as usize] = self.colors[i];
        }
        Ok(PredictedColoring {
            kind: self.kind,
            side: self.side,
            colors,
        })
    }
}

fn predict(inst: &CubicalInstance, kind: PuzzleKind, rule: impl Fn(Face, i32, i32) -> Option<Color>) -> Result<PredictedColoring> {
    inst.check()?;
    let side = reduction_side(kind, inst.n(), inst.m());
    let geom = Geometry::new(kind, side)?;
    let colors = geom.positions().map(|pos| rule(pos.face, pos.u, pos.v)).collect();
    Ok(PredictedColoring { kind, side, colors })
}

/// Square `C_b`: the top sticker at `(c, r)` is blue iff `1 <= r <= n` and
/// either `|c| > m` or bit `|c|` of `l_r` is 0, red otherwise. The bottom
/// face shows the opposite color of the same cubie.
pub fn predict_square_cb(inst: &CubicalInstance) -> Result<PredictedColoring> {
    let (n, m) = (inst.n() as i32, inst.m() as i32);
    let flipped = |c: i32, r: i32| (1..=n).contains(&r) && (c.abs() > m || !inst.label(r as usize).bit(c.unsigned_abs() as usize));
    predict(inst, PuzzleKind::Square, |face, c, r| match face {
        Face::PosZ => Some(if flipped(c, r) { Color::Blue } else { Color::Red }),
        Face::NegZ => Some(if flipped(c, r) { Color::Red } else { Color::Blue }),
        _ => None,
    })
}

/// Cube `C_b`, face by face. With `i` in `1..=n` and the band `z = m + i`:
///
/// * `+z`/`-z`: red/orange at `(x, y) = (j, -(m+i))` where bit `j` of `l_i`
///   is 1; white/blue elsewhere.
/// * `+y`/`-y`: red/orange at `(x, z) = (j, m+i)` where `l_i` has no bit `j`
///   or it is 0; green/yellow elsewhere.
/// * `+x`/`-x`: white/blue at `(y, z) = (-j, m+i)` where bit `j` of `l_i` is
///   1; green/yellow elsewhere in the band; orange/red outside it.
pub fn predict_cube_cb(inst: &CubicalInstance) -> Result<PredictedColoring> {
    let (n, m) = (inst.n() as i32, inst.m() as i32);
    let band = |z: i32| (z - m >= 1 && z - m <= n).then(|| (z - m) as usize);
    let one = |i: usize, j: i32| j >= 1 && inst.label(i).bit(j as usize);
    predict(inst, PuzzleKind::Cube, |face, u, v| {
        Some(match face {
            Face::PosZ | Face::NegZ => {
                let hit = band(-v).is_some_and(|i| one(i, u));
                match (face, hit) {
                    (Face::PosZ, true) => Color::Red,
                    (Face::PosZ, false) => Color::White,
                    (_, true) => Color::Orange,
                    (_, false) => Color::Blue,
                }
            }
            Face::PosY | Face::NegY => {
                let hit = band(v).is_some_and(|i| !one(i, u));
                match (face, hit) {
                    (Face::PosY, true) => Color::Red,
                    (Face::PosY, false) => Color::Green,
                    (_, true) => Color::Orange,
                    (_, false) => Color::Yellow,
                }
            }
            Face::PosX | Face::NegX => {
                let pos = face == Face::PosX;
                match band(v) {
                    Some(i) if one(i, -u) => if pos { Color::White } else { Color::Blue },
                    Some(_) => if pos { Color::Green } else { Color::Yellow },
                    None => if pos { Color::Orange } else { Color::Red },
                }
            }
        })
    })
}

/// `C_b` for either puzzle.
pub fn predict_cb(inst: &CubicalInstance, kind: PuzzleKind) -> Result<PredictedColoring> {
    match kind {
        PuzzleKind::Square => predict_square_cb(inst),
        PuzzleKind::Cube => predict_cube_cb(inst),
    }
}

/// `C_t = a_1(C_b)`.
pub fn predict_ct(inst: &CubicalInstance, kind: PuzzleKind) -> Result<PredictedColoring> {
    predict_cb(inst, kind)?.permuted(&build_a(inst, 1, kind)?)
}
