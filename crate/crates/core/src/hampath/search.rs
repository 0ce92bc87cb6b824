use super::cubical::CubicalInstance;
use super::grid::{GridGraph, Vertex};
use crate::error::{Error, Result};

/// Largest vertex count handled by the bitmask dynamic program. Bigger
/// graphs fall back to backtracking under a node limit.
pub const DP_MAX_VERTICES: usize = 20;

/// Default number of backtracking nodes before giving up with a capacity
/// error.
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

fn bitmasks(adj: &[Vec<usize>]) -> Vec<u32> {
    adj.iter()
        .map(|ns| ns.iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect()
}

/// `reach[mask]` holds every `v` in `mask` from which some path visiting
/// exactly `mask` ends inside `targets`.
fn reach_table(adj: &[u32], targets: u32) -> Vec<u32> {
    let n = adj.len();
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        if targets >> v & 1 == 1 {
            reach[1 << v] = 1 << v;
        }
    }
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut bits = mask;
        let mut set = 0u32;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            if adj[v as usize] & reach[(mask ^ 1 << v) as usize] != 0 {
                set |= 1 << v;
            }
        }
        reach[mask as usize] = set;
    }
    reach
}

/// Lexicographically least Hamiltonian path from `start` ending in
/// `targets`, by dynamic programming.
fn dp_path(adj: &[u32], start: usize, targets: u32) -> Option<Vec<usize>> {
    let n = adj.len();
    let full = ((1u64 << n) - 1) as u32;
    let reach = reach_table(adj, targets);
    if reach[full as usize] >> start & 1 == 0 {
        return None;
    }
    let mut path = vec![start];
    let mut cur = start;
    let mut rest = full ^ 1 << start;
    while rest != 0 {
        let next = (adj[cur] & reach[rest as usize]).trailing_zeros() as usize;
        path.push(next);
        rest ^= 1 << next;
        cur = next;
    }
    Some(path)
}

/// Bitmask of vertices that end some Hamiltonian path (`n <= 20`).
pub(crate) fn path_endpoints(adj: &[Vec<usize>]) -> u32 {
    let n = adj.len();
    assert!(n <= DP_MAX_VERTICES);
    let masks = bitmasks(adj);
    let all = ((1u64 << n) - 1) as u32;
    reach_table(&masks, all)[all as usize]
}

struct Backtrack<'a> {
    adj: &'a [Vec<usize>],
    targets: Vec<bool>,
    visited: Vec<bool>,
    path: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl Backtrack<'_> {
    fn dfs(&mut self, v: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Capacity(format!(
                "Hamiltonian search exceeded {} nodes",
                self.limit
            )));
        }
        self.visited[v] = true;
        self.path.push(v);
        if self.path.len() == self.adj.len() {
            if self.targets[v] {
                return Ok(true);
            }
        } else {
            for &w in &self.adj[v] {
                if !self.visited[w] && self.dfs(w)? {
                    return Ok(true);
                }
            }
        }
        self.visited[v] = false;
        self.path.pop();
        Ok(false)
    }
}

fn backtrack_path(
    adj: &[Vec<usize>],
    starts: &[usize],
    targets: Vec<bool>,
    limit: u64,
) -> Result<Option<Vec<usize>>> {
    let mut bt = Backtrack {
        adj,
        targets,
        visited: vec![false; adj.len()],
        path: Vec::new(),
        nodes: 0,
        limit,
    };
    for &s in starts {
        if bt.dfs(s)? {
            return Ok(Some(bt.path));
        }
    }
    Ok(None)
}

fn sorted(adj: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    adj.into_iter()
        .map(|mut ns| {
            ns.sort_unstable();
            ns
        })
        .collect()
}

/// Any Hamiltonian path, with free endpoints.
fn any_path(adj: &[Vec<usize>], limit: u64) -> Result<Option<Vec<usize>>> {
    let n = adj.len();
    if n <= DP_MAX_VERTICES {
        let masks = bitmasks(adj);
        let all = ((1u64 << n) - 1) as u32;
        let reach = reach_table(&masks, all);
        let ends = reach[all as usize];
        if ends == 0 {
            return Ok(None);
        }
        return Ok(dp_path(&masks, ends.trailing_zeros() as usize, all));
    }
    let starts: Vec<usize> = (0..n).collect();
    backtrack_path(adj, &starts, vec![true; n], limit)
}

/// A Hamiltonian path `1 = i_1, ..., i_n = n` of the cubical graph, as
/// 1-based label indices, or `None` when the graph has no Hamiltonian path
/// at all. The lexicographically least ordering is returned.
///
/// A graph that has Hamiltonian paths, none of them from `l_1` to `l_n`,
/// breaks the promise and yields [`Error::PromiseViolated`].
pub fn find_ham_path(inst: &CubicalInstance) -> Result<Option<Vec<usize>>> {
    find_ham_path_with(inst, DEFAULT_NODE_LIMIT)
}

pub fn find_ham_path_with(inst: &CubicalInstance, node_limit: u64) -> Result<Option<Vec<usize>>> {
    inst.check()?;
    let n = inst.n();
    if n == 1 {
        return Ok(Some(vec![1]));
    }
    let adj = sorted(inst.adjacency());
    let found = if n <= DP_MAX_VERTICES {
        dp_path(&bitmasks(&adj), 0, 1 << (n - 1))
    } else {
        let mut targets = vec![false; n];
        targets[n - 1] = true;
        backtrack_path(&adj, &[0], targets, node_limit)?
    };
    match found {
        Some(p) => Ok(Some(p.into_iter().map(|i| i + 1).collect())),
        None => match any_path(&adj, node_limit)? {
            None => Ok(None),
            Some(p) => Err(Error::PromiseViolated(format!(
                "Hamiltonian path from l_{} to l_{} exists but none from l_1 to l_{n}",
                p[0] + 1,
                p[n - 1] + 1
            ))),
        },
    }
}

/// A Hamiltonian cycle of a grid graph, listed from its least vertex, or
/// `None`. Graphs with fewer than three vertices have no cycle.
pub fn find_ham_cycle(g: &GridGraph) -> Result<Option<Vec<Vertex>>> {
    find_ham_cycle_with(g, DEFAULT_NODE_LIMIT)
}

pub fn find_ham_cycle_with(g: &GridGraph, node_limit: u64) -> Result<Option<Vec<Vertex>>> {
    let order: Vec<Vertex> = g.vertices().collect();
    let n = order.len();
    if n < 3 {
        return Ok(None);
    }
    let adj = g.adjacency(&order);
    let mut closing = vec![false; n];
    for &w in &adj[0] {
        closing[w] = true;
    }
    let found = if n <= DP_MAX_VERTICES {
        let masks = bitmasks(&adj);
        dp_path(&masks, 0, masks[0])
    } else {
        backtrack_path(&adj, &[0], closing, node_limit)?
    };
    Ok(found.map(|p| p.into_iter().map(|i| order[i]).collect()))
}

/// Any Hamiltonian path of a grid graph (free endpoints), or `None`.
pub fn find_grid_ham_path(g: &GridGraph) -> Result<Option<Vec<Vertex>>> {
    let order: Vec<Vertex> = g.vertices().collect();
    if order.is_empty() {
        return Ok(None);
    }
    let adj = g.adjacency(&order);
    Ok(any_path(&adj, DEFAULT_NODE_LIMIT)?.map(|p| p.into_iter().map(|i| order[i]).collect()))
}
