//! Reductions from cubical Hamiltonian path instances to Rubik's Square and
//! Rubik's Cube instances.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::hampath::CubicalInstance;
use crate::puzzle::{
    apply_permutation, make_solved, Axis, Metric, Move, PuzzleConfig, PuzzleKind, Rotation, StickerPermutation,
};

/// Which puzzle and metric an instance targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Square,
    CubeStm,
    CubeSqtm,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::Square, Target::CubeStm, Target::CubeSqtm];

    pub fn kind(self) -> PuzzleKind {
        match self {
            Target::Square => PuzzleKind::Square,
            Target::CubeStm | Target::CubeSqtm => PuzzleKind::Cube,
        }
    }

    pub fn metric(self) -> Metric {
        match self {
            Target::Square => Metric::SquareFlip,
            Target::CubeStm => Metric::Stm,
            Target::CubeSqtm => Metric::Sqtm,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Square => "square",
            Target::CubeStm => "cube-stm",
            Target::CubeSqtm => "cube-sqtm",
        })
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(Target::Square),
            "cube-stm" | "cube_stm" => Ok(Target::CubeStm),
            "cube-sqtm" | "cube_sqtm" => Ok(Target::CubeSqtm),
            other => Err(invalid(format!("unknown target `{other}`"))),
        }
    }
}

/// Side length of the reduced puzzle.
pub fn reduction_side(kind: PuzzleKind, n: usize, m: usize) -> usize {
    match kind {
        PuzzleKind::Square => 2 * (m.max(n) + 2 * n),
        PuzzleKind::Cube => 6 * n + 2 * m,
    }
}

/// Move budget `k = 2n - 1`.
pub fn reduction_budget(n: usize) -> usize {
    2 * n - 1
}

fn check_index(inst: &CubicalInstance, i: usize) -> Result<()> {
    if i == 0 || i > inst.n() {
        return Err(invalid(format!("label index {i} is outside 1..={}", inst.n())));
    }
    Ok(())
}

fn column_move(kind: PuzzleKind, j: usize) -> Move {
    match kind {
        PuzzleKind::Square => Move::flip(Axis::X, j as i32),
        PuzzleKind::Cube => Move::turn(Axis::X, j as i32, Rotation::Cw),
    }
}

fn invert_word(word: &[Move]) -> Vec<Move> {
    word.iter().rev().map(Move::inverse).collect()
}

/// `a_i` as a composition word: one column move for every 1 bit of `l_i`.
pub fn a_word(inst: &CubicalInstance, i: usize, kind: PuzzleKind) -> Result<Vec<Move>> {
    check_index(inst, i)?;
    let label = inst.label(i);
    Ok((1..=label.len())
        .filter(|&j| label.bit(j))
        .map(|j| column_move(kind, j))
        .collect())
}

/// `b_i = a_i⁻¹ ∘ y_i ∘ a_i` (Square) or `a_i⁻¹ ∘ z_{m+i} ∘ a_i` (Cube, with
/// `z_{m+i}` a clockwise turn).
pub fn b_word(inst: &CubicalInstance, i: usize, kind: PuzzleKind) -> Result<Vec<Move>> {
    let a = a_word(inst, i, kind)?;
    let middle = match kind {
        PuzzleKind::Square => Move::flip(Axis::Y, i as i32),
        PuzzleKind::Cube => Move::turn(Axis::Z, (inst.m() + i) as i32, Rotation::Cw),
    };
    let mut word = invert_word(&a);
    word.push(middle);
    word.extend(a);
    Ok(word)
}

/// `t = a_1 ∘ b_1 ∘ b_2 ∘ ... ∘ b_n` as a composition word.
pub fn t_word(inst: &CubicalInstance, kind: PuzzleKind) -> Result<Vec<Move>> {
    let mut word = a_word(inst, 1, kind)?;
    for i in 1..=inst.n() {
        word.extend(b_word(inst, i, kind)?);
    }
    Ok(word)
}

fn side_of(inst: &CubicalInstance, kind: PuzzleKind) -> Result<usize> {
    inst.check()?;
    Ok(reduction_side(kind, inst.n(), inst.m()))
}

pub fn build_a(inst: &CubicalInstance, i: usize, kind: PuzzleKind) -> Result<StickerPermutation> {
    StickerPermutation::from_word(kind, side_of(inst, kind)?, &a_word(inst, i, kind)?)
}

pub fn build_b(inst: &CubicalInstance, i: usize, kind: PuzzleKind) -> Result<StickerPermutation> {
    StickerPermutation::from_word(kind, side_of(inst, kind)?, &b_word(inst, i, kind)?)
}

pub fn build_t(inst: &CubicalInstance, kind: PuzzleKind) -> Result<StickerPermutation> {
    StickerPermutation::from_word(kind, side_of(inst, kind)?, &t_word(inst, kind)?)
}

/// `b_1 ∘ ... ∘ b_n`, the transformation taking `C_0` to `C_b`.
pub fn build_b_product(inst: &CubicalInstance, kind: PuzzleKind) -> Result<StickerPermutation> {
    let mut word = Vec::new();
    for i in 1..=inst.n() {
        word.extend(b_word(inst, i, kind)?);
    }
    StickerPermutation::from_word(kind, side_of(inst, kind)?, &word)
}

/// A reduced puzzle instance.
///
/// Both the transformation and the scrambled configuration are kept in
/// memory when available; serialization writes only the one belonging to the
/// variant (`transformation` for the group variant, `configuration`
/// otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    pub target: Target,
    pub group: bool,
    pub side: usize,
    pub k: usize,
    pub transformation: Option<StickerPermutation>,
    pub configuration: Option<PuzzleConfig>,
    pub source: CubicalInstance,
    /// The composition word defining `t`.
    pub word: Vec<Move>,
}

impl ReducedInstance {
    pub fn kind(&self) -> PuzzleKind {
        self.target.kind()
    }

    pub fn metric(&self) -> Metric {
        self.target.metric()
    }

    /// The same instance for the other variant, if the needed data is held.
    pub fn with_group(&self, group: bool) -> Result<ReducedInstance> {
        if group && self.transformation.is_none() {
            return Err(invalid("no transformation is known for this instance"));
        }
        Ok(ReducedInstance {
            group,
            ..self.clone()
        })
    }

    pub fn with_target(&self, target: Target) -> Result<ReducedInstance> {
        if target.kind() != self.kind() {
            return Err(invalid(format!("cannot retarget a {} instance to {target}", self.kind())));
        }
        Ok(ReducedInstance {
            target,
            ..self.clone()
        })
    }
}

/// Emits the instance `(t, k)` or `(C_t, k)`.
pub fn reduce(inst: &CubicalInstance, target: Target, group: bool) -> Result<ReducedInstance> {
    let kind = target.kind();
    let side = side_of(inst, kind)?;
    let word = t_word(inst, kind)?;
    let t = StickerPermutation::from_word(kind, side, &word)?;
    let config = apply_permutation(&t, &make_solved(kind, side)?)?;
    Ok(ReducedInstance {
        target,
        group,
        side,
        k: reduction_budget(inst.n()),
        transformation: Some(t),
        configuration: Some(config),
        source: inst.clone(),
        word,
    })
}

#[derive(Serialize)]
struct ReducedDocOut<'a> {
    kind: Target,
    group: bool,
    side: usize,
    k: usize,
    transformation: Option<&'a StickerPermutation>,
    configuration: Option<&'a PuzzleConfig>,
    source: &'a CubicalInstance,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReducedDocIn {
    kind: Target,
    group: bool,
    side: usize,
    k: usize,
    transformation: Option<StickerPermutation>,
    configuration: Option<PuzzleConfig>,
    source: CubicalInstance,
}

impl Serialize for ReducedInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReducedDocOut {
            kind: self.target,
            group: self.group,
            side: self.side,
            k: self.k,
            transformation: self.transformation.as_ref().filter(|_| self.group),
            configuration: self.configuration.as_ref().filter(|_| !self.group),
            source: &self.source,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ReducedInstance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ReducedDocIn::deserialize(d)?;
        from_doc(doc).map_err(serde::de::Error::custom)
    }
}

fn from_doc(doc: ReducedDocIn) -> Result<ReducedInstance> {
    let kind = doc.kind.kind();
    let fits = |k: PuzzleKind, s: usize| k == kind && s == doc.side;
    if let Some(t) = &doc.transformation {
        if !fits(t.kind(), t.side()) {
            return Err(Error::Schema("transformation does not match kind and side".into()));
        }
    }
    if let Some(c) = &doc.configuration {
        if !fits(c.kind(), c.side()) {
            return Err(Error::Schema("configuration does not match kind and side".into()));
        }
    }
    let configuration = match (doc.group, doc.configuration, &doc.transformation) {
        (true, _, None) => return Err(Error::Schema("group instance needs a transformation".into())),
        (false, None, _) => return Err(Error::Schema("non-group instance needs a configuration".into())),
        (true, _, Some(t)) => apply_permutation(t, &make_solved(kind, doc.side)?)?,
        (false, Some(c), _) => c,
    };
    let word = if doc.source.check().is_ok() {
        t_word(&doc.source, kind)?
    } else {
        Vec::new()
    };
    Ok(ReducedInstance {
        target: doc.kind,
        group: doc.group,
        side: doc.side,
        k: doc.k,
        transformation: doc.transformation,
        configuration: Some(configuration),
        source: doc.source,
        word,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puzzle::{compose, is_solved, Geometry, StickerPos, Face};

    fn example() -> CubicalInstance {
        CubicalInstance::from_strs(&["011", "110", "111", "100", "000"]).unwrap()
    }

    #[test]
    fn worked_example_sizes() {
        let sq = reduce(&example(), Target::Square, false).unwrap();
        assert_eq!((sq.side, sq.k), (30, 9));
        let cu = reduce(&example(), Target::CubeSqtm, true).unwrap();
        assert_eq!((cu.side, cu.k), (36, 9));
        assert!(!is_solved(sq.configuration.as_ref().unwrap()));
        let small = reduce(&CubicalInstance::from_strs(&["1", "0"]).unwrap(), Target::Square, true).unwrap();
        assert_eq!((small.side, small.k), (12, 3));
    }

    #[test]
    fn size_formulas() {
        for n in 1..=50 {
            for m in 1..=50 {
                let s = reduction_side(PuzzleKind::Square, n, m);
                let c = reduction_side(PuzzleKind::Cube, n, m);
                assert!(s.is_multiple_of(2) && c.is_multiple_of(2));
                assert_eq!(c, 6 * n + 2 * m);
                assert_eq!(reduction_budget(n), 2 * n - 1);
            }
        }
    }

    #[test]
    fn a_words() {
        let inst = example();
        assert_eq!(a_word(&inst, 5, PuzzleKind::Square).unwrap(), vec![]);
        assert_eq!(
            a_word(&inst, 2, PuzzleKind::Square).unwrap(),
            vec![Move::flip(Axis::X, 1), Move::flip(Axis::X, 2)]
        );
        let a = build_a(&inst, 2, PuzzleKind::Square).unwrap();
        assert!(compose(&a, &a).unwrap().is_identity());
        assert!(build_a(&inst, 5, PuzzleKind::Cube).unwrap().is_identity());
        assert!(build_a(&inst, 6, PuzzleKind::Cube).is_err());
    }

    #[test]
    fn degenerate_single_label() {
        let inst = CubicalInstance::from_strs(&["0"]).unwrap();
        let t = build_t(&inst, PuzzleKind::Square).unwrap();
        let side = reduction_side(PuzzleKind::Square, 1, 1);
        assert_eq!(t, StickerPermutation::from_word(PuzzleKind::Square, side, &[Move::flip(Axis::Y, 1)]).unwrap());
    }

    #[test]
    fn b_reorderings_give_same_t() {
        let inst = example();
        let kind = PuzzleKind::Cube;
        let mut word = a_word(&inst, 1, kind).unwrap();
        for i in [4, 2, 5, 1, 3] {
            word.extend(b_word(&inst, i, kind).unwrap());
        }
        let shuffled = StickerPermutation::from_word(kind, 36, &word).unwrap();
        assert_eq!(shuffled, build_t(&inst, kind).unwrap());
    }

    #[test]
    fn square_b2_matches_cubie_swaps() {
        // l_2 = 110: columns 1 and 2 are not flipped, column 3 and beyond are.
        let b = build_b(&example(), 2, PuzzleKind::Square).unwrap();
        let g = Geometry::new(PuzzleKind::Square, 30).unwrap();
        let top = |c, r| g.id_of(StickerPos::new(Face::PosZ, c, r)).unwrap();
        let bottom = |c, r| g.id_of(StickerPos::new(Face::NegZ, c, r)).unwrap();
        for c in [1, 2] {
            assert_eq!(b.image(top(c, -2)), top(-c, 2));
            assert_eq!(b.image(top(-c, 2)), top(c, -2));
        }
        for c in 3..=15 {
            assert_eq!(b.image(top(c, 2)), bottom(-c, 2));
            assert_eq!(b.image(top(-c, 2)), bottom(c, 2));
        }
    }

    #[test]
    fn json_emits_only_the_variant_field() {
        let inst = CubicalInstance::from_strs(&["1", "0"]).unwrap();
        let ri = reduce(&inst, Target::CubeSqtm, false).unwrap();
        let v = serde_json::to_value(&ri).unwrap();
        assert_eq!(v["kind"], "cube_sqtm");
        assert!(v["transformation"].is_null());
        assert_eq!(v["configuration"]["side"], 14);
        assert_eq!(v["source"]["labels"][0], "1");
        let back: ReducedInstance = serde_json::from_value(v).unwrap();
        assert_eq!(back.configuration, ri.configuration);
        assert_eq!(back.word, ri.word);

        let g = reduce(&inst, Target::Square, true).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        let back: ReducedInstance = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }
}
