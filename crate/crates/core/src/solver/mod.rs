//! Exhaustive bounded-depth optimal solver for both puzzles, both variants
//! and all metrics.

mod state;

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::puzzle::{
    enumerate_moves, Geometry, Metric, Move, MoveAction, MoveSequence, PuzzleConfig, PuzzleKind, Rotation,
    StickerPermutation,
};
use crate::reduction::ReducedInstance;
use state::{ColorState, PermState, SearchState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "uni")]
    Unidirectional,
    #[serde(rename = "bi")]
    Bidirectional,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uni" => Ok(Strategy::Unidirectional),
            "bi" => Ok(Strategy::Bidirectional),
            other => Err(invalid(format!("unknown strategy `{other}`"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Unidirectional => "uni",
            Strategy::Bidirectional => "bi",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_depth: usize,
    /// Search nodes (forward and backward) before giving up.
    pub node_limit: u64,
    pub strategy: Strategy,
    /// Skip move sequences that are provably not the least optimal one.
    /// Turning this off only makes the search slower.
    pub pruning: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 3,
            node_limit: 500_000_000,
            strategy: Strategy::Bidirectional,
            pruning: true,
        }
    }
}

/// What to solve: a configuration (any solved coloring will do) or a
/// transformation (every sticker must return home).
#[derive(Clone, Copy, Debug)]
pub enum SearchStart<'a> {
    Config(&'a PuzzleConfig),
    Transformation(&'a StickerPermutation),
}

impl SearchStart<'_> {
    fn dims(&self) -> (PuzzleKind, usize) {
        match self {
            SearchStart::Config(c) => (c.kind(), c.side()),
            SearchStart::Transformation(t) => (t.kind(), t.side()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// A shortest solution, least in canonical move order among those of its
    /// length; `None` proves there is none within `max_depth`.
    pub solution: Option<MoveSequence>,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(MoveSequence),
    No,
}

#[derive(Clone, Copy)]
struct MoveInfo {
    axis: u8,
    index: i32,
    cw: bool,
}

/// The last move made and whether it already repeated the one before.
type Last = Option<(usize, bool)>;

struct Searcher<'a> {
    moves: &'a [Move],
    info: Vec<MoveInfo>,
    actions: Vec<MoveAction>,
    inverses: Vec<MoveAction>,
    metric: Metric,
    pruning: bool,
    nodes: u64,
    limit: u64,
    path: Vec<usize>,
}

impl<'a> Searcher<'a> {
    fn new(geom: &Geometry, moves: &'a [Move], metric: Metric, budget: &SearchBudget) -> Result<Self> {
        let actions = moves
            .iter()
            .map(|m| MoveAction::new(geom, m))
            .collect::<Result<Vec<_>>>()?;
        let inverses = actions.iter().map(MoveAction::inverse).collect();
        let info = moves
            .iter()
            .map(|m| MoveInfo {
                axis: m.axis().index() as u8,
                index: m.index(),
                cw: m.rotation() == Some(Rotation::Cw),
            })
            .collect();
        Ok(Searcher {
            moves,
            info,
            actions,
            inverses,
            metric,
            pruning: budget.pruning,
            nodes: 0,
            limit: budget.node_limit,
            path: Vec::new(),
        })
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Capacity(format!("search exceeded {} nodes", self.limit)));
        }
        Ok(())
    }

    /// Canonical-sequence filter. Moves on one axis commute, so within a run
    /// of same-axis moves only ascending indices are kept; a slice may repeat
    /// only as two clockwise quarter turns under SQTM.
    fn next_last(&self, last: Last, next: usize) -> Option<Last> {
        let Some((prev, repeated)) = last else {
            return Some(Some((next, false)));
        };
        if !self.pruning {
            return Some(Some((next, false)));
        }
        let (a, b) = (self.info[prev], self.info[next]);
        if a.axis != b.axis || b.index > a.index {
            return Some(Some((next, false)));
        }
        let sqtm_double = self.metric == Metric::Sqtm && b.index == a.index && a.cw && b.cw && !repeated;
        sqtm_double.then_some(Some((next, true)))
    }

    fn dfs_goal<S: SearchState>(&mut self, state: &mut S, remaining: usize, last: Last) -> Result<bool> {
        self.tick()?;
        if remaining == 0 {
            return Ok(state.is_goal());
        }
        for mi in 0..self.moves.len() {
            let Some(nl) = self.next_last(last, mi) else { continue };
            state.apply(&self.actions[mi]);
            self.path.push(mi);
            if self.dfs_goal(state, remaining - 1, nl)? {
                return Ok(true);
            }
            self.path.pop();
            state.apply(&self.inverses[mi]);
        }
        Ok(false)
    }

    fn unidirectional<S: SearchState>(&mut self, start: &S, max_depth: usize) -> Result<Option<Vec<usize>>> {
        for d in 0..=max_depth {
            let mut s = start.clone();
            self.path.clear();
            if self.dfs_goal(&mut s, d, None)? {
                return Ok(Some(self.path.clone()));
            }
        }
        Ok(None)
    }

    /// Records, for every state within `depth` moves of a goal, its exact
    /// distance to the goal set.
    fn fill<S: SearchState>(
        &mut self,
        state: &mut S,
        depth: u8,
        h: u8,
        last: Last,
        table: &mut HashMap<u128, u8>,
    ) -> Result<()> {
        self.tick()?;
        let e = table.entry(state.key()).or_insert(depth);
        *e = (*e).min(depth);
        if depth == h {
            return Ok(());
        }
        for mi in 0..self.moves.len() {
            let Some(nl) = self.next_last(last, mi) else { continue };
            state.apply(&self.actions[mi]);
            self.fill(state, depth + 1, h, nl, table)?;
            state.apply(&self.inverses[mi]);
        }
        Ok(())
    }

    /// Least move sequence of length `r` walking down the distance table.
    fn descend<S: SearchState>(&self, mut state: S, r: u8, table: &HashMap<u128, u8>) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(r as usize);
        for step in (1..=r).rev() {
            let mi = (0..self.moves.len()).find(|&mi| {
                state.apply(&self.actions[mi]);
                let hit = table.get(&state.key()) == Some(&(step - 1));
                if !hit {
                    state.apply(&self.inverses[mi]);
                }
                hit
            })?;
            out.push(mi);
        }
        Some(out)
    }

    fn replays_to_goal<S: SearchState>(&self, start: &S, seq: &[usize]) -> bool {
        let mut s = start.clone();
        for &mi in seq {
            s.apply(&self.actions[mi]);
        }
        s.is_goal()
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs_meet<S: SearchState>(
        &mut self,
        start: &S,
        state: &mut S,
        remaining: usize,
        r: u8,
        last: Last,
        table: &HashMap<u128, u8>,
    ) -> Result<Option<Vec<usize>>> {
        self.tick()?;
        if remaining == 0 {
            if table.get(&state.key()) != Some(&r) {
                return Ok(None);
            }
            if let Some(tail) = self.descend(state.clone(), r, table) {
                let mut seq = self.path.clone();
                seq.extend(tail);
                // Guards against hash collisions.
                if self.replays_to_goal(start, &seq) {
                    return Ok(Some(seq));
                }
            }
            return Ok(None);
        }
        for mi in 0..self.moves.len() {
            let Some(nl) = self.next_last(last, mi) else { continue };
            state.apply(&self.actions[mi]);
            self.path.push(mi);
            let found = self.dfs_meet(start, state, remaining - 1, r, nl, table)?;
            self.path.pop();
            state.apply(&self.inverses[mi]);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn bidirectional<S: SearchState>(&mut self, start: &S, goals: &[S], max_depth: usize) -> Result<Option<Vec<usize>>> {
        let h = (max_depth / 2) as u8;
        let mut table = HashMap::new();
        for g in goals {
            self.fill(&mut g.clone(), 0, h, None, &mut table)?;
        }
        for len in 0..=max_depth {
            let f = len.saturating_sub(h as usize);
            let r = (len - f) as u8;
            let mut s = start.clone();
            self.path.clear();
            if let Some(seq) = self.dfs_meet(start, &mut s, f, r, None, &table)? {
                return Ok(Some(seq));
            }
        }
        Ok(None)
    }
}

fn run<S: SearchState>(
    searcher: &mut Searcher,
    start: S,
    goals: impl FnOnce(&S) -> Vec<S>,
    budget: &SearchBudget,
) -> Result<Option<Vec<usize>>> {
    match budget.strategy {
        Strategy::Unidirectional => searcher.unidirectional(&start, budget.max_depth),
        Strategy::Bidirectional => {
            let goals = goals(&start);
            searcher.bidirectional(&start, &goals, budget.max_depth)
        }
    }
}

/// Exhaustive search with node accounting.
pub fn solve_with_stats(start: SearchStart, metric: Metric, budget: &SearchBudget) -> Result<SearchOutcome> {
    let (kind, side) = start.dims();
    let geom = Geometry::new(kind, side)?;
    let moves = enumerate_moves(kind, side, metric)?;
    let mut searcher = Searcher::new(&geom, &moves, metric, budget)?;
    let found = match start {
        SearchStart::Transformation(t) => run(
            &mut searcher,
            PermState::from_transformation(t),
            |_| vec![PermState::identity(geom.num_stickers())],
            budget,
        )?,
        SearchStart::Config(c) => run(&mut searcher, ColorState::new(c), |s| s.solved_variants(&geom), budget)?,
    };
    Ok(SearchOutcome {
        solution: found.map(|seq| MoveSequence::new(seq.into_iter().map(|mi| moves[mi]).collect())),
        nodes: searcher.nodes,
    })
}

/// A minimum-length solution of length at most `budget.max_depth`, or
/// `None` when exhaustive search proves there is none.
pub fn solve_optimal(start: SearchStart, metric: Metric, budget: &SearchBudget) -> Result<Option<MoveSequence>> {
    solve_with_stats(start, metric, budget).map(|o| o.solution)
}

/// Decides a reduced instance exactly: is it solvable within `ri.k` moves?
/// The budget's `max_depth` is replaced by `ri.k`.
pub fn decide(ri: &ReducedInstance, budget: &SearchBudget) -> Result<Decision> {
    let budget = SearchBudget {
        max_depth: ri.k,
        ..*budget
    };
    let start = if ri.group {
        SearchStart::Transformation(
            ri.transformation
                .as_ref()
                .ok_or_else(|| invalid("group instance without a transformation"))?,
        )
    } else {
        SearchStart::Config(
            ri.configuration
                .as_ref()
                .ok_or_else(|| invalid("instance without a configuration"))?,
        )
    };
    Ok(match solve_optimal(start, ri.metric(), &budget)? {
        Some(seq) => Decision::Yes(seq),
        None => Decision::No,
    })
}
