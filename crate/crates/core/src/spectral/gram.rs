use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pointsets::PointSet;
use crate::spaces::{cos_distance_raw, Space};

pub const DEFAULT_TILE_SIZE: usize = 1024;

/// One block `[row0, row0+rows) × [col0, col0+cols)` of the cosine matrix,
/// row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    pub row0: usize,
    pub col0: usize,
    pub rows: usize,
    pub cols: usize,
    pub cos: Vec<f64>,
}

impl Tile {
    pub fn is_diagonal(&self) -> bool {
        self.row0 == self.col0
    }
}

/// Pairwise cosine-distances `t_{jk} = cos ρ(x_j, x_k)` with weights.
/// Only tiles with `row0 ≤ col0` are stored; the matrix is symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct PairGram {
    space: Space,
    weights: Vec<f64>,
    tile_size: usize,
    tiles: Vec<Tile>,
}

impl PairGram {
    pub fn new(set: &PointSet) -> Result<Self> {
        Self::with_tile_size(set, DEFAULT_TILE_SIZE)
    }

    pub fn with_tile_size(set: &PointSet, tile_size: usize) -> Result<Self> {
        if tile_size == 0 {
            return Err(Error::domain("tile size must be positive"));
        }
        let space = set.space();
        let field = space.field()?;
        let n = set.len();
        let blocks = n.div_ceil(tile_size);
        let index: Vec<(usize, usize)> = (0..blocks).flat_map(|i| (i..blocks).map(move |j| (i, j))).collect();
        let pts = set.points();
        let tiles = index
            .into_par_iter()
            .map(|(bi, bj)| {
                let row0 = bi * tile_size;
                let col0 = bj * tile_size;
                let rows = tile_size.min(n - row0);
                let cols = tile_size.min(n - col0);
                let mut cos = Vec::with_capacity(rows * cols);
                for j in row0..row0 + rows {
                    for k in col0..col0 + cols {
                        cos.push(if j == k {
                            1.0
                        } else {
                            cos_distance_raw(field, pts[j].coords(), pts[k].coords())
                        });
                    }
                }
                Tile {
                    row0,
                    col0,
                    rows,
                    cols,
                    cos,
                }
            })
            .collect();
        Ok(PairGram {
            space,
            weights: set.weights().to_vec(),
            tile_size,
            tiles,
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn tile_size(&self) -> usize {
        self.tile_size
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    /// `t_{jk}`.
    pub fn get(&self, j: usize, k: usize) -> f64 {
        let (j, k) = if j <= k { (j, k) } else { (k, j) };
        let (bi, bj) = (j / self.tile_size, k / self.tile_size);
        let blocks = self.n().div_ceil(self.tile_size);
        // Block row i holds blocks − i tiles.
        let idx = bi * blocks - bi * bi.saturating_sub(1) / 2 + (bj - bi);
        let t = &self.tiles[idx];
        debug_assert_eq!((t.row0, t.col0), (bi * self.tile_size, bj * self.tile_size));
        t.cos[(j - t.row0) * t.cols + (k - t.col0)]
    }

    /// `Σ a_j²`.
    pub fn sum_sq_weights(&self) -> f64 {
        crate::sum::neumaier_sum(self.weights.iter().map(|w| w * w))
    }
}
