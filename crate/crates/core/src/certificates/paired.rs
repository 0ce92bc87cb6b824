use crate::error::{invalid, Result};
use crate::puzzle::{Face, Geometry, Move, MoveAction, PuzzleKind, StickerPos};

/// Slice magnitudes `(p1, p2, q)` of a sticker pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub p1: u32,
    pub p2: u32,
    pub q: u32,
}

impl Pairing {
    fn check(&self, geom: &Geometry) -> Result<()> {
        let max = geom.max_coord() as u32;
        let ok = [self.p1, self.p2, self.q].iter().all(|&v| v >= 1 && v < max)
            && self.p1 != self.p2
            && self.p1 != self.q
            && self.p2 != self.q;
        if geom.kind() != PuzzleKind::Cube || !ok {
            return Err(invalid("pairing needs distinct positive non-face Cube indices"));
        }
        Ok(())
    }
}

/// `a` and `b` lie on the same face and quadrant, share the coordinate `±q`
/// along the same in-face axis, and have `±p1` (for `a`) and `±p2` (for `b`)
/// as their other coordinate.
pub fn is_paired(a: StickerPos, b: StickerPos, pairing: Pairing) -> bool {
    let Pairing { p1, p2, q } = pairing;
    if a.face != b.face || a.u.signum() != b.u.signum() || a.v.signum() != b.v.signum() {
        return false;
    }
    let abs = |x: i32| x.unsigned_abs();
    (a.u == b.u && abs(a.u) == q && abs(a.v) == p1 && abs(b.v) == p2)
        || (a.v == b.v && abs(a.v) == q && abs(a.u) == p1 && abs(b.u) == p2)
}

/// Every `(a, b)` pair of sticker ids that is paired under `pairing`.
pub fn paired_stickers(geom: &Geometry, pairing: Pairing) -> Result<Vec<(usize, usize)>> {
    pairing.check(geom)?;
    let (p1, p2, q) = (pairing.p1 as i32, pairing.p2 as i32, pairing.q as i32);
    let mut out = Vec::new();
    for face in Face::ALL {
        for su in [1, -1] {
            for sv in [1, -1] {
                let id = |u, v| geom.id_of(StickerPos::new(face, u, v)).expect("non-face indices are valid");
                out.push((id(su * q, sv * p1), id(su * q, sv * p2)));
                out.push((id(su * p1, sv * q), id(su * p2, sv * q)));
            }
        }
    }
    Ok(out)
}

/// What became of a tracked pair over a move sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairFate {
    /// Still paired after the last move.
    Intact,
    /// Separated at `step` by an index-`p1` or index-`p2` move that moved one
    /// of the two stickers.
    Released { step: usize },
    /// Separated at `step` by any other move. The pairing lemma says this
    /// never happens.
    Violated { step: usize },
}

fn image(action: &MoveAction, id: usize) -> (usize, bool) {
    match action.pairs.binary_search_by_key(&(id as u32), |&(f, _)| f) {
        Ok(k) => (action.pairs[k].1 as usize, true),
        Err(_) => (id, false),
    }
}

/// Replays `moves` on the two stickers starting at ids `a` and `b`.
pub fn track_pair(geom: &Geometry, moves: &[Move], a: usize, b: usize, pairing: Pairing) -> Result<PairFate> {
    pairing.check(geom)?;
    if !is_paired(geom.pos_of(a), geom.pos_of(b), pairing) {
        return Err(invalid("the starting stickers are not paired"));
    }
    let (mut a, mut b) = (a, b);
    for (step, mv) in moves.iter().enumerate() {
        let action = MoveAction::new(geom, mv)?;
        let (na, moved_a) = image(&action, a);
        let (nb, moved_b) = image(&action, b);
        (a, b) = (na, nb);
        if !is_paired(geom.pos_of(a), geom.pos_of(b), pairing) {
            let v = mv.index().unsigned_abs();
            let excused = (v == pairing.p1 || v == pairing.p2) && (moved_a || moved_b);
            return Ok(if excused {
                PairFate::Released { step }
            } else {
                PairFate::Violated { step }
            });
        }
    }
    Ok(PairFate::Intact)
}
