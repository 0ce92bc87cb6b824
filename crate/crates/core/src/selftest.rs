//! Quick end-to-end checks over the bundled corpus and seeded random
//! instances, used by the `selftest` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::time::Instant;

use crate::certificates::{synthesize_cube_solution, synthesize_square_solution, verify_solution, PathCertificate};
use crate::coloring::predict_cb;
use crate::corpus::{bundled_items, CorpusItem, Expected};
use crate::error::Result;
use crate::hampath::{
    cycle_to_path, embedding_order, find_grid_ham_path, find_ham_cycle, find_ham_path, grid_to_cubical,
    random_grid_graph, random_instance, CubicalInstance, random_path_instance, GridGraph, PromiseGridInstance,
};
use crate::puzzle::{
    apply_permutation, compose, enumerate_moves, make_solved, Geometry, Metric, MoveAction, PuzzleKind,
    StickerPermutation,
};
use crate::reduction::{build_b, build_b_product, reduce, reduction_side, ReducedInstance, Target};
use crate::solver::{decide, solve_optimal, Decision, SearchBudget, SearchStart};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestOptions {
    pub seed: u64,
    pub budget: SearchBudget,
    /// Random cases per randomized check.
    pub rounds: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            seed: 20261016,
            budget: SearchBudget::default(),
            rounds: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `Ok(detail)` passes, `Err(detail)` fails.
type Outcome = std::result::Result<String, String>;

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn worked_example() -> Outcome {
    let inst = lift(CubicalInstance::from_strs(&["011", "110", "111", "100", "000"]))?;
    let sq = lift(reduce(&inst, Target::Square, false))?;
    let cu = lift(reduce(&inst, Target::CubeSqtm, false))?;
    let got = (sq.side, cu.side, sq.k);
    if got == (30, 36, 9) {
        Ok("square side 30, cube side 36, k 9".into())
    } else {
        Err(format!("got square side {}, cube side {}, k {}", got.0, got.1, got.2))
    }
}

fn coloring(rng: &mut ChaCha8Rng, rounds: usize) -> Outcome {
    for _ in 0..rounds {
        let n: usize = rng.gen_range(2..=8);
        let m = rng.gen_range(n.next_power_of_two().trailing_zeros() as usize..=8);
        let inst = lift(random_instance(rng, n, m))?;
        for kind in [PuzzleKind::Square, PuzzleKind::Cube] {
            let side = reduction_side(kind, n, m);
            let cb = lift(build_b_product(&inst, kind))?;
            let sim = lift(apply_permutation(&cb, &lift(make_solved(kind, side))?))?;
            let bad = lift(lift(predict_cb(&inst, kind))?.mismatches(&sim))?;
            if !bad.is_empty() {
                return Err(format!("{kind} {inst}: {} stickers differ", bad.len()));
            }
        }
    }
    Ok(format!("{rounds} instances"))
}

fn all_variants(ri: &ReducedInstance) -> Result<Vec<ReducedInstance>> {
    let mut out = Vec::new();
    for target in Target::ALL.into_iter().filter(|t| t.kind() == ri.kind()) {
        for group in [false, true] {
            out.push(ri.with_target(target)?.with_group(group)?);
        }
    }
    Ok(out)
}

/// Synthesizes from `order` and checks acceptance in all six variants.
fn certify_everywhere(inst: &CubicalInstance, order: &[usize]) -> Outcome {
    let cert = PathCertificate::new(order.to_vec());
    let want = 2 * inst.n() - 1;
    for (target, seq) in [
        (Target::Square, lift(synthesize_square_solution(inst, &cert))?),
        (Target::CubeSqtm, lift(synthesize_cube_solution(inst, &cert, Metric::Sqtm))?),
    ] {
        if seq.len() != want {
            return Err(format!("{target}: length {} instead of {want}", seq.len()));
        }
        for ri in lift(all_variants(&lift(reduce(inst, target, false))?))? {
            let v = verify_solution(&ri, &seq);
            if !v.accepted {
                return Err(format!("{} group={} rejected: {:?}", ri.target, ri.group, v.reasons));
            }
        }
    }
    Ok(String::new())
}

fn forward(rng: &mut ChaCha8Rng, rounds: usize) -> Outcome {
    for _ in 0..rounds {
        let n = rng.gen_range(2..=12);
        let m = rng.gen_range(4..=12);
        let (inst, order) = lift(random_path_instance(rng, n, m))?;
        certify_everywhere(&inst, &order)?;
    }
    Ok(format!("{rounds} yes-instances in 6 variants"))
}

fn corpus(budget: &SearchBudget, items: &[(CorpusItem, CubicalInstance)]) -> Outcome {
    let mut solved = 0;
    for (item, inst) in items {
        let inst = inst.clone();
        let found = lift(find_ham_path(&inst))?;
        match (item.expected, found) {
            (Expected::Yes, Some(order)) => {
                if item.ordering.as_ref().is_some_and(|o| *o != order) {
                    return Err(format!("{}: path {order:?} differs from the recorded one", item.name));
                }
                certify_everywhere(&inst, &order).map_err(|e| format!("{}: {e}", item.name))?;
            }
            (Expected::No, None) => {
                let ri = lift(reduce(&inst, Target::Square, false))?;
                if ri.k <= budget.max_depth {
                    if let Decision::Yes(seq) = lift(decide(&ri, budget))? {
                        return Err(format!("{}: solver found {seq}", item.name));
                    }
                    solved += 1;
                }
            }
            (want, got) => return Err(format!("{}: expected {want:?}, path search gave {got:?}", item.name)),
        }
    }
    Ok(format!("{} items, {solved} no-instances decided by search", items.len()))
}

fn labeling(rng: &mut ChaCha8Rng, rounds: usize) -> Outcome {
    for _ in 0..rounds {
        let g = random_grid_graph(rng, 12);
        let mut vs: Vec<_> = g.vertices().collect();
        vs.shuffle(rng);
        let pg = lift(PromiseGridInstance::new(g, vs[0], vs[1]))?;
        let labels = lift(grid_to_cubical(&pg))?;
        let order = embedding_order(&pg);
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                let adj = GridGraph::is_adjacent(order[a], order[b]);
                if (labels.label(a + 1).hamming(labels.label(b + 1)) == 1) != adj {
                    return Err(format!("{:?} and {:?}", order[a], order[b]));
                }
            }
        }
    }
    Ok(format!("{rounds} grid graphs"))
}

fn commutativity(rng: &mut ChaCha8Rng, rounds: usize) -> Outcome {
    for _ in 0..rounds {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(3..=5);
        let inst = lift(random_instance(rng, n, m))?;
        let (i, j) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        let kind = if rng.gen() { PuzzleKind::Square } else { PuzzleKind::Cube };
        let (bi, bj) = (lift(build_b(&inst, i, kind))?, lift(build_b(&inst, j, kind))?);
        if lift(compose(&bi, &bj))? != lift(compose(&bj, &bi))? {
            return Err(format!("b_{i} and b_{j} of {inst} on the {kind}"));
        }
    }
    Ok(format!("{rounds} triples"))
}

fn gadget() -> Outcome {
    let cells: Vec<(i32, i32)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    let mut checked = 0;
    for mask in 0u32..1 << 9 {
        let g = lift(GridGraph::new(
            cells.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &c)| c),
        ))?;
        if g.len() < 4 || g.vertices().any(|v| g.degree(v) == 1) {
            continue;
        }
        let cycle = lift(find_ham_cycle(&g))?.is_some();
        let path = match cycle_to_path(&g) {
            Ok(p) => lift(find_grid_ham_path(&p.graph))?.is_some(),
            Err(_) => false,
        };
        if cycle != path {
            return Err(format!("mask {mask:09b}: cycle {cycle}, path {path}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} subgraphs"))
}

/// Breadth-first distances from the identity on a side-4 Square.
fn oracle(rng: &mut ChaCha8Rng, rounds: usize, budget: &SearchBudget) -> Outcome {
    const RADIUS: u8 = 4;
    let (kind, side) = (PuzzleKind::Square, 4);
    let geom = lift(Geometry::new(kind, side))?;
    let actions: Vec<MoveAction> = lift(enumerate_moves(kind, side, Metric::SquareFlip))?
        .iter()
        .map(|m| MoveAction::new(&geom, m))
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    let start: Vec<u32> = (0..geom.num_stickers() as u32).collect();
    let mut dist = HashMap::from([(start.clone(), 0u8)]);
    let mut frontier = vec![start];
    for d in 1..=RADIUS {
        let mut next = Vec::new();
        for s in &frontier {
            for a in &actions {
                let mut t = s.clone();
                a.apply(&mut t);
                if !dist.contains_key(&t) {
                    dist.insert(t.clone(), d);
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let budget = SearchBudget {
        max_depth: RADIUS as usize,
        ..*budget
    };
    for _ in 0..rounds {
        let len = rng.gen_range(0..=RADIUS as usize);
        let mut state: Vec<u32> = (0..geom.num_stickers() as u32).collect();
        for _ in 0..len {
            actions.choose(rng).expect("moves exist").apply(&mut state);
        }
        let want = dist[&state] as usize;
        // `state[j] = i` records that sticker `i` now sits at `j`.
        let mut map = vec![0u32; state.len()];
        for (j, &i) in state.iter().enumerate() {
            map[i as usize] = j as u32;
        }
        let t = lift(StickerPermutation::from_map(kind, side, map))?;
        let got = lift(solve_optimal(SearchStart::Transformation(&t), Metric::SquareFlip, &budget))?
            .map(|s| s.len());
        if got != Some(want) {
            return Err(format!("distance {want}, solver {got:?}"));
        }
    }
    Ok(format!("{rounds} scrambles against {} states", dist.len()))
}

/// Runs every check over the bundled corpus; failures are reported, never
/// raised.
pub fn run_selftest(opts: &SelftestOptions) -> SelftestReport {
    run_selftest_with(opts, &bundled_items())
}

pub fn run_selftest_with(opts: &SelftestOptions, items: &[(CorpusItem, CubicalInstance)]) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = SelftestReport::default();
    let mut record = |name: &str, f: &mut dyn FnMut() -> Outcome| {
        let t0 = Instant::now();
        let out = f();
        let millis = t0.elapsed().as_millis();
        let (passed, detail) = match out {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        report.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
            millis,
        });
    };
    let r = opts.rounds;
    record("worked-example", &mut worked_example);
    record("coloring", &mut || coloring(&mut rng, r));
    record("forward", &mut || forward(&mut rng, r));
    record("corpus", &mut || corpus(&opts.budget, items));
    record("labeling", &mut || labeling(&mut rng, r));
    record("commutativity", &mut || commutativity(&mut rng, r));
    record("gadget", &mut gadget);
    record("oracle", &mut || oracle(&mut rng, r, &opts.budget));
    report
}
