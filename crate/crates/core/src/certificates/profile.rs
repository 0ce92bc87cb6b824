use serde::Serialize;
use std::collections::BTreeMap;

use crate::puzzle::{coords, Axis, Move, MoveSequence, PuzzleKind};
use crate::reduction::ReducedInstance;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexCount {
    pub axis: Axis,
    /// Absolute slice index.
    pub index: u32,
    pub count: usize,
}

/// Number of flips of one signed row and whether it matches the parity
/// every solution must have (odd exactly for rows `1..=n`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowParity {
    pub index: i32,
    pub count: usize,
    pub expected_odd: bool,
}

impl RowParity {
    pub fn is_odd(&self) -> bool {
        self.count % 2 == 1
    }

    pub fn conforms(&self) -> bool {
        self.is_odd() == self.expected_odd
    }
}

/// Partition of `1..=n` by how many index-`(m+i)` moves a Cube solution
/// makes: zero, one, two, or more.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IndexClasses {
    pub z: Vec<usize>,
    pub o: Vec<usize>,
    pub t: Vec<usize>,
    pub m: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CubeMoveCounts {
    pub c_o: usize,
    pub c_t: usize,
    pub c_m: usize,
    pub c_j: usize,
    /// Face moves of the `±x` and `±y` faces.
    pub c_vertical: usize,
    pub c_other: usize,
}

impl CubeMoveCounts {
    pub fn total(&self) -> usize {
        self.c_o + self.c_t + self.c_m + self.c_j + self.c_vertical + self.c_other
    }
}

/// Observational counts over a candidate solution of a reduced instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionProfile {
    pub length: usize,
    /// Nonzero move counts by axis and absolute index.
    pub counts: Vec<IndexCount>,
    /// Square only: every signed row index with its flip count.
    pub row_parity: Vec<RowParity>,
    /// Square: rows `i` in `1..=n` with exactly one index-`i` row move.
    /// Cube: see `classes`.
    pub o_rows: Vec<usize>,
    pub classes: Option<IndexClasses>,
    pub cube_counts: Option<CubeMoveCounts>,
    /// Least index in the window the lower-bound argument draws from that no
    /// move touches: `max(m,n)+1 ..= max(m,n)+2n` for the Square,
    /// `m+n+1 ..= m+3n` for the Cube.
    pub unused_index: Option<u32>,
}

impl SolutionProfile {
    /// Square parity rule: rows `1..=n` flipped an odd number of times and
    /// every other row an even number. `None` for Cube instances.
    pub fn parity_holds(&self) -> Option<bool> {
        (!self.row_parity.is_empty()).then(|| self.row_parity.iter().all(RowParity::conforms))
    }
}

pub fn analyze_solution(ri: &ReducedInstance, moves: &MoveSequence) -> SolutionProfile {
    let n = ri.source.n();
    let m = ri.source.m();
    let mut by_index: BTreeMap<(Axis, u32), usize> = BTreeMap::new();
    for mv in moves.moves() {
        *by_index.entry((mv.axis(), mv.index().unsigned_abs())).or_default() += 1;
    }
    let counts = by_index
        .iter()
        .map(|(&(axis, index), &count)| IndexCount { axis, index, count })
        .collect();
    let touches = |v: u32| moves.moves().iter().any(|mv| mv.index().unsigned_abs() == v);
    let window = match ri.kind() {
        PuzzleKind::Square => (m.max(n) + 1)..=(m.max(n) + 2 * n),
        PuzzleKind::Cube => (m + n + 1)..=(m + 3 * n),
    };
    let unused_index = window.map(|v| v as u32).find(|&v| !touches(v));

    let mut profile = SolutionProfile {
        length: moves.len(),
        counts,
        row_parity: Vec::new(),
        o_rows: Vec::new(),
        classes: None,
        cube_counts: None,
        unused_index,
    };
    match ri.kind() {
        PuzzleKind::Square => square_part(&mut profile, ri.side, n, moves.moves()),
        PuzzleKind::Cube => cube_part(&mut profile, ri.side, n, m, moves.moves()),
    }
    profile
}

fn square_part(profile: &mut SolutionProfile, side: usize, n: usize, moves: &[Move]) {
    let rows = |pred: &dyn Fn(i32) -> bool| {
        moves
            .iter()
            .filter(|mv| mv.axis() == Axis::Y && pred(mv.index()))
            .count()
    };
    profile.row_parity = coords(side)
        .into_iter()
        .map(|i| RowParity {
            index: i,
            count: rows(&|j| j == i),
            expected_odd: i >= 1 && i as usize <= n,
        })
        .collect();
    profile.o_rows = (1..=n as i32)
        .filter(|&i| rows(&|j| j.abs() == i) == 1)
        .map(|i| i as usize)
        .collect();
}

fn cube_part(profile: &mut SolutionProfile, side: usize, n: usize, m: usize, moves: &[Move]) {
    let max = (side / 2) as u32;
    let mut per_i = vec![0usize; n + 1];
    for mv in moves {
        let v = mv.index().unsigned_abs() as usize;
        if v > m && v <= m + n {
            per_i[v - m] += 1;
        }
    }
    let mut classes = IndexClasses::default();
    for (i, &c) in per_i.iter().enumerate().skip(1) {
        match c {
            0 => classes.z.push(i),
            1 => classes.o.push(i),
            2 => classes.t.push(i),
            _ => classes.m.push(i),
        }
    }
    let mut counts = CubeMoveCounts::default();
    for mv in moves {
        let v = mv.index().unsigned_abs();
        if v as usize > m && v as usize <= m + n {
            match per_i[v as usize - m] {
                1 => counts.c_o += 1,
                2 => counts.c_t += 1,
                _ => counts.c_m += 1,
            }
        } else if v >= 1 && v as usize <= m {
            counts.c_j += 1;
        } else if v == max && mv.axis() != Axis::Z {
            counts.c_vertical += 1;
        } else {
            counts.c_other += 1;
        }
    }
    profile.o_rows = classes.o.clone();
    profile.classes = Some(classes);
    profile.cube_counts = Some(counts);
}
