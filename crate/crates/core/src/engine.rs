//! The twelve-round total scrambler and its inverse.
//!
//! Each round cyclically shifts the image, then walks the `N x N` block
//! tiling in row-major order and moves every bit-plane of the block with its
//! own Sudoku-associated bijection. Edge blocks overlap their neighbours and
//! read the already-scrambled buffer, so descrambling must visit rounds and
//! blocks in exactly reverse order.

use crate::error::{Error, Result};
use crate::image::Image;
use crate::key::{block_size, parameter_generator, round_seed, ScramblerKey, ROUNDS};
use crate::representations::{build_bijection, invert, PermutationMap};
use crate::sudoku::SudokuMatrix;

/// Cyclic rotation bringing row `w` and column `h` (both 1-based) to the
/// top-left corner of a row-major `rows x cols` raster.
pub fn img_shift<T: Copy>(data: &[T], rows: usize, cols: usize, w: usize, h: usize) -> Result<Vec<T>> {
    check_shift(data.len(), rows, cols, w, h)?;
    Ok(rotate(data, rows, cols, w - 1, h - 1))
}

/// Exact inverse of [`img_shift`] with the same parameters.
pub fn img_unshift<T: Copy>(data: &[T], rows: usize, cols: usize, w: usize, h: usize) -> Result<Vec<T>> {
    check_shift(data.len(), rows, cols, w, h)?;
    Ok(rotate(data, rows, cols, (rows - (w - 1)) % rows, (cols - (h - 1)) % cols))
}

fn check_shift(len: usize, rows: usize, cols: usize, w: usize, h: usize) -> Result<()> {
    if len != rows * cols {
        return Err(Error::SizeMismatch { expected: rows * cols, actual: len });
    }
    if !(1..=rows).contains(&w) || !(1..=cols).contains(&h) {
        return Err(Error::Range(format!("shift ({w}, {h}) outside 1..={rows} x 1..={cols}")));
    }
    Ok(())
}

// out[i][j] = in[(i + dr) % rows][(j + dc) % cols]
fn rotate<T: Copy>(data: &[T], rows: usize, cols: usize, dr: usize, dc: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(data.len());
    for i in 0..rows {
        let src = &data[((i + dr) % rows) * cols..][..cols];
        out.extend_from_slice(&src[dc..]);
        out.extend_from_slice(&src[..dc]);
    }
    out
}

/// Top-left corner (0-based) of an `N x N` block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockRect {
    pub row: usize,
    pub col: usize,
}

/// Row-major tiling of a `rows x cols` raster by `side x side` blocks; the last
/// block row and column are pulled back to end at the edge, overlapping
/// their predecessors when `side` does not divide the dimension.
pub fn block_tiling(rows: usize, cols: usize, side: usize) -> Result<Vec<BlockRect>> {
    if side == 0 || rows < side || cols < side {
        return Err(Error::ImageTooSmall { rows, cols, min: side.max(1) });
    }
    let starts = |len: usize| -> Vec<usize> {
        let count = len.div_ceil(side);
        (0..count).map(|i| if i + 1 < count { i * side } else { len - side }).collect()
    };
    let row_starts = starts(rows);
    let col_starts = starts(cols);
    Ok(row_starts.iter().flat_map(|&row| col_starts.iter().map(move |&col| BlockRect { row, col })).collect())
}

/// Per-round shift parameters `(ceil(rows / 12), ceil(cols / 12))`.
pub fn shift_params(rows: usize, cols: usize) -> (usize, usize) {
    (rows.div_ceil(ROUNDS), cols.div_ceil(ROUNDS))
}

fn check_maps(img: &Image, maps: &[PermutationMap], side: usize) -> Result<()> {
    if maps.len() != img.depth().planes() {
        return Err(Error::SizeMismatch { expected: img.depth().planes(), actual: maps.len() });
    }
    if let Some(m) = maps.iter().find(|m| m.side() != side) {
        return Err(Error::SizeMismatch { expected: side, actual: m.side() });
    }
    Ok(())
}

/// One scrambling round: shift by `(w, h)`, then permute every bit-plane of
/// every block in tiling order, in place. `maps[l - 1]` moves plane `l`.
pub fn blockwise_scramble(img: &Image, maps: &[PermutationMap], side: usize, w: usize, h: usize) -> Result<Image> {
    check_maps(img, maps, side)?;
    let (rows, cols) = (img.height(), img.width());
    let tiles = block_tiling(rows, cols, side)?;
    let mut out = img.clone();
    let shifted = img_shift(img.data(), rows, cols, w, h)?;
    out.data_mut().copy_from_slice(&shifted);
    let forwards: Vec<&[usize]> = maps.iter().map(PermutationMap::forward).collect();
    let mut kernel = BlockKernel::new(side);
    for tile in &tiles {
        kernel.permute(out.data_mut(), cols, *tile, &forwards);
    }
    Ok(out)
}

/// Inverse of [`blockwise_scramble`] given the same (non-inverted) maps.
pub fn blockwise_descramble(img: &Image, maps: &[PermutationMap], side: usize, w: usize, h: usize) -> Result<Image> {
    check_maps(img, maps, side)?;
    let inverses = maps.iter().map(invert).collect::<Result<Vec<_>>>()?;
    let (rows, cols) = (img.height(), img.width());
    let tiles = block_tiling(rows, cols, side)?;
    let mut buf = img.data().to_vec();
    let backwards: Vec<&[usize]> = inverses.iter().map(PermutationMap::forward).collect();
    let mut kernel = BlockKernel::new(side);
    for tile in tiles.iter().rev() {
        kernel.permute(&mut buf, cols, *tile, &backwards);
    }
    let data = img_unshift(&buf, rows, cols, w, h)?;
    let mut out = img.clone();
    out.data_mut().copy_from_slice(&data);
    Ok(out)
}

struct BlockKernel {
    side: usize,
    src: Vec<u32>,
    dst: Vec<u32>,
}

impl BlockKernel {
    fn new(side: usize) -> Self {
        BlockKernel { side, src: vec![0; side * side], dst: vec![0; side * side] }
    }

    fn permute(&mut self, data: &mut [u32], stride: usize, tile: BlockRect, forwards: &[&[usize]]) {
        let side = self.side;
        for r in 0..side {
            let start = (tile.row + r) * stride + tile.col;
            self.src[r * side..(r + 1) * side].copy_from_slice(&data[start..start + side]);
        }
        self.dst.iter_mut().for_each(|d| *d = 0);
        for (plane, forward) in forwards.iter().enumerate() {
            let bit = 1u32 << plane;
            for (&word, &to) in self.src.iter().zip(forward.iter()) {
                self.dst[to] |= word & bit;
            }
        }
        for r in 0..side {
            let start = (tile.row + r) * stride + tile.col;
            data[start..start + side].copy_from_slice(&self.dst[r * side..(r + 1) * side]);
        }
    }
}

/// Keyed scrambler. Round Sudokus default to the block-size rule; a fixed
/// Sudoku order can be forced for demonstrations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scrambler {
    key: ScramblerKey,
    sudoku_order: Option<usize>,
}

impl Scrambler {
    pub fn new(key: ScramblerKey) -> Self {
        Scrambler { key, sudoku_order: None }
    }

    /// Use `n x n`-block Sudokus (side `n^2`) instead of the block-size rule.
    pub fn with_sudoku_order(mut self, n: usize) -> Self {
        self.sudoku_order = Some(n);
        self
    }

    pub fn key(&self) -> &ScramblerKey {
        &self.key
    }

    /// Sudoku `(N, n)` used for an image of `rows x cols` pixels.
    pub fn sudoku_size(&self, rows: usize, cols: usize) -> Result<(usize, usize)> {
        let rule = block_size(rows, cols)?;
        match self.sudoku_order {
            None => Ok(rule),
            Some(n) if n < 2 => Err(Error::Domain(format!("Sudoku order must be at least 2, got {n}"))),
            Some(n) if n * n > rows.min(cols) => Err(Error::ImageTooSmall { rows, cols, min: n * n }),
            Some(n) => Ok((n * n, n)),
        }
    }

    /// Bijection `f_u^i` for every round `u` (outer) and bit-plane `i` (inner).
    pub fn round_maps(&self, rows: usize, cols: usize, planes: usize) -> Result<Vec<Vec<PermutationMap>>> {
        let (_, n) = self.sudoku_size(rows, cols)?;
        let plans: Vec<_> = (1..=planes).map(|i| parameter_generator(&self.key, i)).collect();
        (1..=ROUNDS)
            .map(|u| {
                let sudoku = SudokuMatrix::generate(round_seed(&self.key, u)?, n)?;
                let mut cache: Vec<(crate::key::RoundStep, PermutationMap)> = Vec::new();
                Ok(plans
                    .iter()
                    .map(|plan| {
                        let step = plan.steps[u - 1];
                        if let Some((_, m)) = cache.iter().find(|(s, _)| *s == step) {
                            return m.clone();
                        }
                        let m = build_bijection(&sudoku, step.pair, step.fixed, step.direction);
                        cache.push((step, m.clone()));
                        m
                    })
                    .collect())
            })
            .collect()
    }

    pub fn scramble(&self, img: &Image) -> Result<Image> {
        let (rows, cols) = (img.height(), img.width());
        let (side, _) = self.sudoku_size(rows, cols)?;
        let (w, h) = shift_params(rows, cols);
        let rounds = self.round_maps(rows, cols, img.depth().planes())?;
        let mut out = img.clone();
        for maps in &rounds {
            out = blockwise_scramble(&out, maps, side, w, h)?;
        }
        Ok(out)
    }

    pub fn descramble(&self, img: &Image) -> Result<Image> {
        let (rows, cols) = (img.height(), img.width());
        let (side, _) = self.sudoku_size(rows, cols)?;
        let (w, h) = shift_params(rows, cols);
        let rounds = self.round_maps(rows, cols, img.depth().planes())?;
        let mut out = img.clone();
        for maps in rounds.iter().rev() {
            out = blockwise_descramble(&out, maps, side, w, h)?;
        }
        Ok(out)
    }
}

pub fn scramble(img: &Image, key: &ScramblerKey) -> Result<Image> {
    Scrambler::new(*key).scramble(img)
}

pub fn descramble(img: &Image, key: &ScramblerKey) -> Result<Image> {
    Scrambler::new(*key).descramble(img)
}
