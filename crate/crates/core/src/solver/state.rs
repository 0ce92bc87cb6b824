use crate::puzzle::{Color, Face, Geometry, MoveAction, PuzzleConfig, StickerPermutation};

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Key of "value `val` sits at position `pos`". A state's hash is the XOR of
/// the keys of all its positions, so a move updates it in time proportional
/// to its support.
fn zobrist(pos: u32, val: u32) -> u128 {
    let x = (pos as u64) << 32 | val as u64;
    (splitmix(x) as u128) << 64 | splitmix(x ^ 0xD6E8_FEB8_6659_FD93) as u128
}

pub(crate) trait SearchState: Clone {
    fn apply(&mut self, action: &MoveAction);
    fn key(&self) -> u128;
    fn is_goal(&self) -> bool;
}

/// Group variant: which sticker sits at each position. Solved means every
/// sticker is home.
#[derive(Clone, Debug)]
pub(crate) struct PermState {
    at: Vec<u32>,
    misplaced: usize,
    hash: u128,
    scratch: Vec<u32>,
}

impl PermState {
    pub(crate) fn from_labels(at: Vec<u32>) -> Self {
        let misplaced = at.iter().enumerate().filter(|&(p, &v)| p != v as usize).count();
        let hash = at
            .iter()
            .enumerate()
            .fold(0u128, |h, (p, &v)| h ^ zobrist(p as u32, v));
        PermState {
            at,
            misplaced,
            hash,
            scratch: Vec::new(),
        }
    }

    pub(crate) fn identity(len: usize) -> Self {
        PermState::from_labels((0..len as u32).collect())
    }

    /// The state reached from the identity by applying `t`.
    pub(crate) fn from_transformation(t: &StickerPermutation) -> Self {
        let mut at = vec![0u32; t.len()];
        for (i, &j) in t.map().iter().enumerate() {
            at[j as usize] = i as u32;
        }
        PermState::from_labels(at)
    }
}

impl SearchState for PermState {
    fn apply(&mut self, action: &MoveAction) {
        self.scratch.clear();
        self.scratch.extend(action.pairs.iter().map(|&(f, _)| self.at[f as usize]));
        for (k, &(_, t)) in action.pairs.iter().enumerate() {
            let new = self.scratch[k];
            let old = std::mem::replace(&mut self.at[t as usize], new);
            self.hash ^= zobrist(t, old) ^ zobrist(t, new);
            self.misplaced = self.misplaced + usize::from(new != t) - usize::from(old != t);
        }
    }

    fn key(&self) -> u128 {
        self.hash
    }

    fn is_goal(&self) -> bool {
        self.misplaced == 0
    }
}

/// Non-group variant: the color at each position plus per-face color
/// histograms.
#[derive(Clone, Debug)]
pub(crate) struct ColorState {
    colors: Vec<u8>,
    face_of: std::sync::Arc<Vec<u8>>,
    face_size: [u32; 6],
    hist: [[u32; 6]; 6],
    hash: u128,
    scratch: Vec<u8>,
}

impl ColorState {
    pub(crate) fn new(config: &PuzzleConfig) -> Self {
        let geom = config.geometry();
        let colors: Vec<u8> = config.colors().iter().map(|c| c.index() as u8).collect();
        let mut face_of = vec![0u8; colors.len()];
        let mut face_size = [0u32; 6];
        for (k, face) in Face::ALL.into_iter().enumerate() {
            for id in geom.face_range(face) {
                face_of[id] = k as u8;
            }
            face_size[k] = geom.face_size(face) as u32;
        }
        let mut hist = [[0u32; 6]; 6];
        let mut hash = 0u128;
        for (p, &c) in colors.iter().enumerate() {
            hist[face_of[p] as usize][c as usize] += 1;
            hash ^= zobrist(p as u32, c as u32);
        }
        ColorState {
            colors,
            face_of: std::sync::Arc::new(face_of),
            face_size,
            hist,
            hash,
            scratch: Vec::new(),
        }
    }

    /// Every solved coloring with the same number of stickers of each color
    /// as `self`, in a fixed order.
    pub(crate) fn solved_variants(&self, geom: &Geometry) -> Vec<ColorState> {
        let mut count = [0u32; 6];
        for &c in &self.colors {
            count[c as usize] += 1;
        }
        let mut out = Vec::new();
        for perm in permutations6() {
            if (0..6).all(|f| self.face_size[f] == count[perm[f]]) {
                let cfg = PuzzleConfig::with_face_colors(geom.kind(), geom.side(), |face| {
                    let k = Face::ALL.iter().position(|&x| x == face).expect("face listed");
                    Color::ALL[perm[k]]
                })
                .expect("geometry is valid");
                out.push(ColorState::new(&cfg));
            }
        }
        out
    }
}

fn permutations6() -> Vec<[usize; 6]> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool; 6], out: &mut Vec<[usize; 6]>) {
        if cur.len() == 6 {
            out.push(cur.as_slice().try_into().expect("six entries"));
            return;
        }
        for c in 0..6 {
            if !used[c] {
                used[c] = true;
                cur.push(c);
                rec(cur, used, out);
                cur.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::with_capacity(720);
    rec(&mut Vec::new(), &mut [false; 6], &mut out);
    out
}

impl SearchState for ColorState {
    fn apply(&mut self, action: &MoveAction) {
        self.scratch.clear();
        self.scratch.extend(action.pairs.iter().map(|&(f, _)| self.colors[f as usize]));
        for (k, &(_, t)) in action.pairs.iter().enumerate() {
            let new = self.scratch[k];
            let old = std::mem::replace(&mut self.colors[t as usize], new);
            if old != new {
                let face = self.face_of[t as usize] as usize;
                self.hist[face][old as usize] -= 1;
                self.hist[face][new as usize] += 1;
                self.hash ^= zobrist(t, old as u32) ^ zobrist(t, new as u32);
            }
        }
    }

    fn key(&self) -> u128 {
        self.hash
    }

    fn is_goal(&self) -> bool {
        let mut used = 0u8;
        for f in 0..6 {
            let Some(c) = (0..6).find(|&c| self.hist[f][c] == self.face_size[f]) else {
                return false;
            };
            if used >> c & 1 == 1 {
                return false;
            }
            used |= 1 << c;
        }
        true
    }
}
