use serde::{Deserialize, Serialize};

use super::config::PuzzleConfig;
use super::geometry::{Geometry, PuzzleKind};
use super::moves::{Move, MoveAction};
use crate::error::{Error, Result};

/// A bijection on the canonical sticker ids of one puzzle.
///
/// `map[i] = j` means the sticker at position `i` is carried to position `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StickerPermutation {
    kind: PuzzleKind,
    side: usize,
    map: Vec<u32>,
}

impl StickerPermutation {
    pub fn identity(kind: PuzzleKind, side: usize) -> Result<Self> {
        let n = Geometry::new(kind, side)?.num_stickers();
        Ok(StickerPermutation {
            kind,
            side,
            map: (0..n as u32).collect(),
        })
    }

    pub fn from_map(kind: PuzzleKind, side: usize, map: Vec<u32>) -> Result<Self> {
        let n = Geometry::new(kind, side)?.num_stickers();
        if map.len() != n {
            return Err(Error::Schema(format!(
                "permutation has {} entries, expected {n}",
                map.len()
            )));
        }
        let mut seen = vec![false; n];
        for &j in &map {
            let j = j as usize;
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Schema("permutation map is not a bijection".into()));
            }
        }
        Ok(StickerPermutation { kind, side, map })
    }

    pub fn kind(&self) -> PuzzleKind {
        self.kind
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, id: usize) -> usize {
        self.map[id] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Ids that the permutation moves.
    pub fn support(&self) -> Vec<usize> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i != j as usize)
            .map(|(i, _)| i)
            .collect()
    }

    fn same_puzzle(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind || self.side != other.side {
            return Err(Error::DimensionMismatch(format!(
                "{} side {} vs {} side {}",
                self.kind, self.side, other.kind, other.side
            )));
        }
        Ok(())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        StickerPermutation {
            kind: self.kind,
            side: self.side,
            map: inv,
        }
    }

    /// Right-multiplies in place by a move: `self ← self ∘ m`. Only the
    /// move's support is touched.
    pub fn mul_move_right(&mut self, action: &MoveAction) {
        // (p ∘ m)(i) = p(m(i)); entries outside supp(m) are unchanged.
        let updates: Vec<(u32, u32)> = action
            .pairs
            .iter()
            .map(|&(from, to)| (from, self.map[to as usize]))
            .collect();
        for (i, v) in updates {
            self.map[i as usize] = v;
        }
    }

    pub fn from_move(geom: &Geometry, mv: &Move) -> Result<Self> {
        let action = MoveAction::new(geom, mv)?;
        let mut p = StickerPermutation::identity(geom.kind(), geom.side())?;
        p.mul_move_right(&action);
        Ok(p)
    }

    /// The composition `w[0] ∘ w[1] ∘ … ∘ w[L-1]` (the last factor acts
    /// first).
    pub fn from_word(kind: PuzzleKind, side: usize, word: &[Move]) -> Result<Self> {
        let geom = Geometry::new(kind, side)?;
        let mut p = StickerPermutation::identity(kind, side)?;
        for mv in word {
            p.mul_move_right(&MoveAction::new(&geom, mv)?);
        }
        Ok(p)
    }
}

/// The permutation of a single move on a puzzle of the given kind and side.
pub fn move_to_permutation(mv: &Move, kind: PuzzleKind, side: usize) -> Result<StickerPermutation> {
    StickerPermutation::from_move(&Geometry::new(kind, side)?, mv)
}

/// `(p ∘ q)(i) = p(q(i))`: `q` acts first.
pub fn compose(p: &StickerPermutation, q: &StickerPermutation) -> Result<StickerPermutation> {
    p.same_puzzle(q)?;
    Ok(StickerPermutation {
        kind: p.kind,
        side: p.side,
        map: q.map.iter().map(|&j| p.map[j as usize]).collect(),
    })
}

pub fn invert(p: &StickerPermutation) -> StickerPermutation {
    p.inverse()
}

/// Moves every sticker's color from `pos` to `p(pos)`.
pub fn apply_permutation(p: &StickerPermutation, config: &PuzzleConfig) -> Result<PuzzleConfig> {
    if p.kind != config.kind() || p.side != config.side() {
        return Err(Error::DimensionMismatch(format!(
            "permutation for {} side {} applied to {} side {}",
            p.kind,
            p.side,
            config.kind(),
            config.side()
        )));
    }
    let src = config.colors();
    let mut out = src.to_vec();
    for (i, &j) in p.map.iter().enumerate() {
        out[j as usize] = src[i];
    }
    PuzzleConfig::from_colors(p.kind, p.side, out)
}

#[derive(Serialize, Deserialize)]
struct PermDoc {
    kind: PuzzleKind,
    side: usize,
    map: Vec<u32>,
}

impl Serialize for StickerPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermDoc {
            kind: self.kind,
            side: self.side,
            map: self.map.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StickerPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = PermDoc::deserialize(d)?;
        StickerPermutation::from_map(doc.kind, doc.side, doc.map).map_err(serde::de::Error::custom)
    }
}
