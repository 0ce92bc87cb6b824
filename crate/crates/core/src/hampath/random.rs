use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashSet;

use super::cubical::{CubicalInstance, Label};
use super::grid::GridGraph;
use crate::error::{invalid, Result};

fn random_walk<R: Rng>(rng: &mut R, n: usize, m: usize) -> Option<Vec<Label>> {
    let start = Label::new((0..m).map(|_| rng.gen()).collect());
    let mut seen = HashSet::from([start.clone()]);
    let mut walk = vec![start];
    while walk.len() < n {
        let cur = walk.last().expect("walk is nonempty");
        let mut bits: Vec<usize> = (0..m).collect();
        bits.shuffle(rng);
        let next = bits.into_iter().find_map(|k| {
            let mut b = cur.bits().to_vec();
            b[k] = !b[k];
            let l = Label::new(b);
            (!seen.contains(&l)).then_some(l)
        })?;
        seen.insert(next.clone());
        walk.push(next);
    }
    Some(walk)
}

/// A stretch of the reflected Gray code, with bits permuted and flipped.
fn gray_walk<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<Label> {
    let offset = rng.gen_range(0..=(1u64 << m) - n as u64);
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let flip: Vec<bool> = (0..m).map(|_| rng.gen()).collect();
    (offset..offset + n as u64)
        .map(|k| {
            let g = k ^ (k >> 1);
            Label::new((0..m).map(|j| (g >> perm[j] & 1 == 1) ^ flip[j]).collect())
        })
        .collect()
}

/// A random instance with a known Hamiltonian path: a self-avoiding walk in
/// the `m`-cube, normalized so the walk ends at zero, with the interior
/// labels shuffled. Returns the instance and the walk as a 1-based ordering.
pub fn random_path_instance<R: Rng>(rng: &mut R, n: usize, m: usize) -> Result<(CubicalInstance, Vec<usize>)> {
    if n < 2 || m < 1 {
        return Err(invalid("need n >= 2 and m >= 1"));
    }
    if m < 63 && n as u64 > 1u64 << m {
        return Err(invalid(format!("the {m}-cube has fewer than {n} vertices")));
    }
    let walk = (0..200)
        .find_map(|_| random_walk(rng, n, m))
        .unwrap_or_else(|| gray_walk(rng, n, m));
    let last = walk[n - 1].clone();
    let normalized: Vec<Label> = walk.iter().map(|l| l.xor(&last)).collect();

    // slot[p] is the 0-based position in the instance of walk step p.
    let mut interior: Vec<usize> = (1..n - 1).collect();
    interior.shuffle(rng);
    let mut slot = vec![0; n];
    slot[n - 1] = n - 1;
    for (p, &pos) in interior.iter().enumerate() {
        slot[p + 1] = pos;
    }
    let mut labels = vec![Label::zeros(m); n];
    for (p, label) in normalized.into_iter().enumerate() {
        labels[slot[p]] = label;
    }
    Ok((CubicalInstance::new(labels), slot.into_iter().map(|p| p + 1).collect()))
}

/// A random structurally valid instance: `n` distinct labels of length `m`,
/// the last one all zeros. No Hamiltonian path is implied.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, m: usize) -> Result<CubicalInstance> {
    if n < 1 || m < 1 {
        return Err(invalid("need n >= 1 and m >= 1"));
    }
    if m < 63 && n as u64 > 1u64 << m {
        return Err(invalid(format!("only {} labels of length {m} exist", 1u64 << m)));
    }
    let zero = Label::zeros(m);
    let mut seen = HashSet::from([zero.clone()]);
    let mut labels = Vec::with_capacity(n);
    while labels.len() < n - 1 {
        let l = Label::new((0..m).map(|_| rng.gen()).collect());
        if seen.insert(l.clone()) {
            labels.push(l);
        }
    }
    labels.push(zero);
    Ok(CubicalInstance::new(labels))
}

/// A random set of between 2 and `max_vertices` lattice points inside a
/// small box.
pub fn random_grid_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> GridGraph {
    let max_vertices = max_vertices.max(2);
    let k = rng.gen_range(2..=max_vertices);
    let (w, h) = loop {
        let w: i32 = rng.gen_range(1..=5);
        let h: i32 = rng.gen_range(1..=5);
        if (w * h) as usize >= k {
            break (w, h);
        }
    };
    let mut cells: Vec<(i32, i32)> = (0..w).flat_map(|x| (0..h).map(move |y| (x, y))).collect();
    cells.shuffle(rng);
    cells.truncate(k);
    GridGraph::new(cells).expect("cells are distinct")
}
