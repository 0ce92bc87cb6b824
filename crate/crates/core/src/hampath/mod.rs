//! Grid graphs, the cycle-to-path gadget, bitstring labelings of grid
//! graphs, and exhaustive Hamiltonicity oracles.

mod cubical;
mod grid;
mod random;
mod search;

pub use cubical::{embedding_order, grid_to_cubical, validate_promise, CubicalInstance, Label, ValidationReport};
pub use grid::{cycle_to_path, parse_grid_graph, GridGraph, PromiseGridInstance, Vertex};
pub use random::{random_grid_graph, random_instance, random_path_instance};
pub use search::{
    find_grid_ham_path, find_ham_cycle, find_ham_cycle_with, find_ham_path, find_ham_path_with, DEFAULT_NODE_LIMIT,
    DP_MAX_VERTICES,
};
