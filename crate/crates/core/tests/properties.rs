use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use rubik_np::certificates::{
    analyze_solution, paired_stickers, synthesize_cube_solution, synthesize_square_solution, track_pair,
    verify_solution, PairFate, Pairing, PathCertificate,
};
use rubik_np::coloring::{render_config, FaceSelection, RenderFormat};
use rubik_np::hampath::{
    cycle_to_path, find_ham_path, grid_to_cubical, random_instance, random_path_instance, validate_promise,
    CubicalInstance, GridGraph, Label, PromiseGridInstance,
};
use rubik_np::puzzle::{
    apply_permutation, compose, enumerate_moves, make_solved, Color, Face, Geometry, Metric, Move, MoveSequence,
    PuzzleConfig, PuzzleKind, StickerPermutation, StickerPos,
};
use rubik_np::reduction::{build_b, reduce, ReducedInstance, Target};
use rubik_np::solver::{decide, solve_optimal, Decision, SearchBudget, SearchStart, Strategy as SearchStrategy};

fn abs_sorted(geom: &Geometry, id: usize) -> [i32; 3] {
    let mut p = geom.point_of(geom.pos_of(id)).map(i32::abs);
    p.sort();
    p
}

#[test]
fn move_permutations_are_bijections_up_to_side_16() {
    for kind in [PuzzleKind::Square, PuzzleKind::Cube] {
        for side in 2..=16 {
            let geom = Geometry::new(kind, side).unwrap();
            let metric = Metric::default_for(kind);
            for mv in enumerate_moves(kind, side, metric).unwrap() {
                let p = StickerPermutation::from_move(&geom, &mv).unwrap();
                let mut hit = vec![false; geom.num_stickers()];
                for &j in p.map() {
                    assert!(!std::mem::replace(&mut hit[j as usize], true), "{kind} {side} {mv}");
                }
                assert!(hit.iter().all(|&h| h));
                for id in 0..geom.num_stickers() {
                    assert_eq!(abs_sorted(&geom, id), abs_sorted(&geom, p.image(id)), "{kind} {side} {mv}");
                }
                let square = compose(&p, &p).unwrap();
                match (kind, mv) {
                    (PuzzleKind::Square, _) => assert!(square.is_identity()),
                    (_, Move::Turn { rotation, .. }) => {
                        let fourth = compose(&square, &square).unwrap();
                        assert!(fourth.is_identity());
                        let half = rotation == rubik_np::puzzle::Rotation::Half;
                        assert_eq!(square.is_identity(), half, "{side} {mv}");
                    }
                    _ => unreachable!(),
                }
            }
        }
    }
}

#[test]
fn square_b_i_matches_cubie_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let m = rand::Rng::gen_range(&mut rng, 3..=6);
        let inst = random_instance(&mut rng, n, m).unwrap();
        let ri = reduce(&inst, Target::Square, true).unwrap();
        let geom = Geometry::new(PuzzleKind::Square, ri.side).unwrap();
        let half = geom.max_coord();
        for i in 1..=n {
            let b = build_b(&inst, i, PuzzleKind::Square).unwrap();
            let ii = i as i32;
            let bit = |c: i32| c >= 1 && c <= m as i32 && inst.label(i).bit(c as usize);
            // destination cubie and whether it flips
            let rule = |c: i32, r: i32| -> (i32, i32, bool) {
                let a = c.abs();
                if bit(a) && ((c > 0 && r == -ii) || (c < 0 && r == ii)) {
                    (-c, -r, false)
                } else if !bit(a) && r == ii {
                    (-c, r, true)
                } else {
                    (c, r, false)
                }
            };
            for c in geom.axis_coords(rubik_np::puzzle::Axis::X) {
                for r in geom.axis_coords(rubik_np::puzzle::Axis::Y) {
                    let (c2, r2, flip) = rule(c, r);
                    for (from, to) in [
                        (Face::PosZ, if flip { Face::NegZ } else { Face::PosZ }),
                        (Face::NegZ, if flip { Face::PosZ } else { Face::NegZ }),
                    ] {
                        let a = geom.id_of(StickerPos::new(from, c, r)).unwrap();
                        let z = geom.id_of(StickerPos::new(to, c2, r2)).unwrap();
                        assert_eq!(b.image(a), z, "i={i} ({c},{r}) of {inst}");
                    }
                }
            }
            for id in b.support() {
                let y = geom.point_of(geom.pos_of(id))[1];
                assert!(y.abs() == ii && y.abs() != half, "b_{i} moved a sticker outside rows ±{i}");
            }
        }
    }
}

/// The cube-face lemmas for one `b_i`, as a map on sticker positions.
fn cube_rule(inst: &CubicalInstance, i: usize, pos: StickerPos) -> StickerPos {
    let m = inst.m() as i32;
    let band = m + i as i32;
    let one = |j: i32| j >= 1 && j <= m && inst.label(i).bit(j as usize);
    let (u, v) = (pos.u, pos.v);
    match pos.face {
        Face::PosZ if v == -band && one(u) => StickerPos::new(Face::PosX, -u, band),
        Face::NegZ if v == -band && one(u) => StickerPos::new(Face::NegX, -u, band),
        Face::PosY if v == band && !one(u) => StickerPos::new(Face::PosX, -u, band),
        Face::NegY if v == band && !one(u) => StickerPos::new(Face::NegX, -u, band),
        Face::PosX if v == band && one(u) => StickerPos::new(Face::NegZ, u, -band),
        Face::PosX if v == band => StickerPos::new(Face::NegY, u, band),
        Face::NegX if v == band && one(u) => StickerPos::new(Face::PosZ, u, -band),
        Face::NegX if v == band => StickerPos::new(Face::PosY, u, band),
        _ => pos,
    }
}

#[test]
fn cube_b_i_matches_sticker_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let n = rand::Rng::gen_range(&mut rng, 1..=5);
        let m = rand::Rng::gen_range(&mut rng, 3..=5);
        let inst = random_instance(&mut rng, n, m).unwrap();
        let ri = reduce(&inst, Target::CubeSqtm, true).unwrap();
        let geom = Geometry::new(PuzzleKind::Cube, ri.side).unwrap();
        for i in 1..=n {
            let b = build_b(&inst, i, PuzzleKind::Cube).unwrap();
            for id in 0..geom.num_stickers() {
                let want = cube_rule(&inst, i, geom.pos_of(id));
                assert_eq!(geom.pos_of(b.image(id)), want, "i={i} from {} of {inst}", geom.pos_of(id));
            }
        }
    }
}

#[test]
fn b_factors_commute_for_all_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..6 {
        let inst = random_instance(&mut rng, 4, 4).unwrap();
        for kind in [PuzzleKind::Square, PuzzleKind::Cube] {
            let bs: Vec<_> = (1..=4).map(|i| build_b(&inst, i, kind).unwrap()).collect();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(compose(&bs[i], &bs[j]).unwrap(), compose(&bs[j], &bs[i]).unwrap());
                }
            }
        }
    }
}

#[test]
fn reduce_is_fast_and_consistent_at_fifty() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let (inst, _) = random_path_instance(&mut rng, 50, 50).unwrap();
    for target in [Target::Square, Target::CubeStm] {
        let t0 = std::time::Instant::now();
        let ri = reduce(&inst, target, false).unwrap();
        assert!(t0.elapsed().as_secs_f64() < 1.0, "{target} took {:?}", t0.elapsed());
        let c0 = make_solved(ri.kind(), ri.side).unwrap();
        let via_t = apply_permutation(ri.transformation.as_ref().unwrap(), &c0).unwrap();
        assert_eq!(ri.configuration.as_ref().unwrap(), &via_t);
    }
}

fn block_subgraphs() -> impl Iterator<Item = GridGraph> {
    let cells: Vec<(i32, i32)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    (0u32..1 << 9).filter_map(move |mask| {
        let g = GridGraph::new(cells.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &c)| c)).unwrap();
        (g.len() >= 4 && g.vertices().all(|v| g.degree(v) != 1)).then_some(g)
    })
}

#[test]
fn gadget_degrees_and_promise() {
    let mut seen = 0;
    for g in block_subgraphs() {
        let Ok(p) = cycle_to_path(&g) else { continue };
        let ones: HashSet<_> = p.graph.vertices().filter(|&v| p.graph.degree(v) == 1).collect();
        assert_eq!(ones, HashSet::from([p.s, p.t]));
        let inst = grid_to_cubical(&p).unwrap();
        let report = validate_promise(&inst, true);
        assert!(report.is_valid(), "{:?}", report.problems);
        assert_eq!(report.endpoint_promise, Some(true));
        seen += 1;
    }
    assert!(seen > 10);
}

#[test]
fn decide_agrees_with_path_search_on_tiny_instances() {
    let budget = SearchBudget::default();
    for labels in [vec!["0"], vec!["1", "0"], vec!["11", "00"], vec!["01", "00"], vec!["10", "00"]] {
        let inst = CubicalInstance::from_strs(&labels).unwrap();
        let yes = find_ham_path(&inst).unwrap().is_some();
        for target in [Target::Square, Target::CubeStm] {
            for group in [false, true] {
                let ri = reduce(&inst, target, group).unwrap();
                let d = decide(&ri, &budget).unwrap();
                assert_eq!(matches!(d, Decision::Yes(_)), yes, "{labels:?} {target} group={group}");
                if let Decision::Yes(seq) = d {
                    assert!(verify_solution(&ri, &seq).accepted);
                    if target == Target::Square {
                        assert_eq!(analyze_solution(&ri, &seq).parity_holds(), Some(true));
                    }
                }
            }
        }
    }
}

fn arb_kind_side() -> impl Strategy<Value = (PuzzleKind, usize)> {
    prop_oneof![
        (2usize..=8).prop_map(|s| (PuzzleKind::Square, s)),
        (2usize..=6).prop_map(|s| (PuzzleKind::Cube, s)),
    ]
}

fn word(kind: PuzzleKind, side: usize, picks: &[usize]) -> Vec<Move> {
    let moves = enumerate_moves(kind, side, Metric::default_for(kind)).unwrap();
    picks.iter().map(|&k| moves[k % moves.len()]).collect()
}

fn random_config(kind: PuzzleKind, side: usize, seed: u64) -> PuzzleConfig {
    use rand::Rng;
    let n = Geometry::new(kind, side).unwrap().num_stickers();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors = (0..n).map(|_| Color::ALL[rng.gen_range(0..6)]).collect();
    PuzzleConfig::from_colors(kind, side, colors).unwrap()
}

fn arb_instance() -> impl Strategy<Value = CubicalInstance> {
    (1usize..=6, 3usize..=6, any::<u64>()).prop_map(|(n, m, seed)| {
        random_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, m).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn apply_respects_composition(
        (kind, side) in arb_kind_side(),
        p in prop::collection::vec(any::<usize>(), 0..6),
        q in prop::collection::vec(any::<usize>(), 0..6),
        seed in any::<u64>(),
    ) {
        let pp = StickerPermutation::from_word(kind, side, &word(kind, side, &p)).unwrap();
        let qq = StickerPermutation::from_word(kind, side, &word(kind, side, &q)).unwrap();
        let c = random_config(kind, side, seed);
        let lhs = apply_permutation(&compose(&pp, &qq).unwrap(), &c).unwrap();
        let rhs = apply_permutation(&pp, &apply_permutation(&qq, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(compose(&pp, &pp.inverse()).unwrap().is_identity());
    }

    #[test]
    fn labeling_matches_adjacency(cells in prop::collection::hash_set((0i32..4, 0i32..3), 2..=12), pick in any::<(usize, usize)>()) {
        let g = GridGraph::new(cells).unwrap();
        let vs: Vec<_> = g.vertices().collect();
        let s = vs[pick.0 % vs.len()];
        let t = vs[(pick.0 % vs.len() + 1 + pick.1 % (vs.len() - 1)) % vs.len()];
        let p = PromiseGridInstance::new(g, s, t).unwrap();
        let inst = grid_to_cubical(&p).unwrap();
        prop_assert!(inst.label(inst.n()).is_zero());
        let order = rubik_np::hampath::embedding_order(&p);
        for a in 0..order.len() {
            for b in 0..order.len() {
                if a != b {
                    prop_assert_eq!(
                        inst.label(a + 1).hamming(inst.label(b + 1)) == 1,
                        GridGraph::is_adjacent(order[a], order[b])
                    );
                }
            }
        }
    }

    #[test]
    fn synthesized_solutions_verify_everywhere(n in 2usize..=16, m in 4usize..=16, seed in any::<u64>()) {
        let (inst, order) = random_path_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, m).unwrap();
        let cert = PathCertificate::new(order);
        let sq = synthesize_square_solution(&inst, &cert).unwrap();
        let cu = synthesize_cube_solution(&inst, &cert, Metric::Sqtm).unwrap();
        prop_assert_eq!(sq.len(), 2 * n - 1);
        prop_assert_eq!(cu.len(), 2 * n - 1);
        for group in [true, false] {
            let rs = reduce(&inst, Target::Square, group).unwrap();
            prop_assert!(verify_solution(&rs, &sq).accepted);
            prop_assert_eq!(analyze_solution(&rs, &sq).parity_holds(), Some(true));
            // SQTM acceptance carries over to STM.
            for target in [Target::CubeSqtm, Target::CubeStm] {
                prop_assert!(verify_solution(&reduce(&inst, target, group).unwrap(), &cu).accepted);
            }
        }
    }

    #[test]
    fn pairs_survive_unrelated_moves(picks in prop::collection::vec(any::<usize>(), 1..12), which in any::<usize>()) {
        let side = 10;
        let geom = Geometry::new(PuzzleKind::Cube, side).unwrap();
        let pairing = Pairing { p1: 1, p2: 3, q: 2 };
        let pairs = paired_stickers(&geom, pairing).unwrap();
        let (a, b) = pairs[which % pairs.len()];
        let moves = word(PuzzleKind::Cube, side, &picks);
        let fate = track_pair(&geom, &moves, a, b, pairing).unwrap();
        prop_assert!(!matches!(fate, PairFate::Violated { .. }), "{:?}", fate);
        if moves.iter().all(|m| ![1, 3].contains(&m.index().abs())) {
            prop_assert_eq!(fate, PairFate::Intact);
        }
    }

    #[test]
    fn strategies_and_pruning_agree(picks in prop::collection::vec(any::<usize>(), 0..=3), seed in any::<u64>()) {
        let (kind, side) = if seed % 2 == 0 { (PuzzleKind::Square, 4) } else { (PuzzleKind::Cube, 3) };
        let metric = Metric::default_for(kind);
        let t = StickerPermutation::from_word(kind, side, &word(kind, side, &picks)).unwrap().inverse();
        let mut lens = Vec::new();
        for strategy in [SearchStrategy::Unidirectional, SearchStrategy::Bidirectional] {
            for pruning in [true, false] {
                let budget = SearchBudget { max_depth: 3, node_limit: 50_000_000, strategy, pruning };
                lens.push(solve_optimal(SearchStart::Transformation(&t), metric, &budget).unwrap().map(|s| s.len()));
            }
        }
        prop_assert!(lens.iter().all(|l| *l == lens[0]), "{:?}", lens);
        prop_assert!(lens[0].is_some_and(|l| l <= picks.len()));
    }

    #[test]
    fn move_sequences_round_trip((kind, side) in arb_kind_side(), picks in prop::collection::vec(any::<usize>(), 0..10)) {
        let seq = MoveSequence::new(word(kind, side, &picks));
        let text = seq.to_string();
        prop_assert_eq!(MoveSequence::parse(&text, kind, side).unwrap(), seq);
    }

    #[test]
    fn json_round_trips(inst in arb_instance(), group in any::<bool>(), t in 0usize..3, seed in any::<u64>()) {
        let text = serde_json::to_string(&inst).unwrap();
        prop_assert_eq!(&serde_json::from_str::<CubicalInstance>(&text).unwrap(), &inst);
        let ri = reduce(&inst, Target::ALL[t], group).unwrap();
        let text = serde_json::to_string(&ri).unwrap();
        let back: ReducedInstance = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back.configuration, ri.configuration);
        let c = random_config(PuzzleKind::Cube, 3, seed);
        prop_assert_eq!(serde_json::from_str::<PuzzleConfig>(&serde_json::to_string(&c).unwrap()).unwrap(), c);
        let cert = PathCertificate::new(vec![1, 2, 3]);
        prop_assert_eq!(serde_json::from_str::<PathCertificate>(&serde_json::to_string(&cert).unwrap()).unwrap(), cert);
        let l: Label = "0110".parse().unwrap();
        prop_assert_eq!(l.to_string(), "0110");
    }

    #[test]
    fn grid_json_round_trips(cells in prop::collection::hash_set((-3i32..3, -3i32..3), 2..10)) {
        let g = GridGraph::new(cells).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(&serde_json::from_str::<GridGraph>(&text).unwrap(), &g);
        let vs: Vec<_> = g.vertices().collect();
        let p = PromiseGridInstance::new(g, vs[0], vs[1]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<PromiseGridInstance>(&text).unwrap(), p);
    }

    #[test]
    fn rendering_is_deterministic((kind, side) in arb_kind_side(), seed in any::<u64>()) {
        let c = random_config(kind, side, seed);
        for format in [RenderFormat::Ascii, RenderFormat::Svg] {
            prop_assert_eq!(render_config(&c, format, FaceSelection::All), render_config(&c.clone(), format, FaceSelection::All));
        }
    }
}
