//! Sticker-level models of the n×n Rubik's Square and the n×n×n Rubik's
//! Cube, their moves, and the permutation-group view of transformations.

mod config;
mod geometry;
mod moves;
mod perm;

pub use config::{is_solved, make_solved, make_solved_even, solved_face_color, Color, PuzzleConfig};
pub use geometry::{coords, is_valid_coord, Axis, Coord, Face, Geometry, Point, PuzzleKind, StickerPos};
pub use moves::{enumerate_moves, format_move, parse_move, Metric, Move, MoveAction, MoveSequence, Rotation};
pub use perm::{apply_permutation, compose, invert, move_to_permutation, StickerPermutation};
