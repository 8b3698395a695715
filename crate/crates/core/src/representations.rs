//! Matrix element representations and the two-dimensional bijections they
//! induce on an `N x N` index grid.
//!
//! Two fixed representations address a cell by `(row, col)` or by
//! `(block, grid)`. Six Sudoku-associated representations pair a line or
//! block index with the Sudoku digit stored at the cell. Reading the same
//! index pair under a Sudoku-associated and a fixed representation gives a
//! permutation of the grid.
//!
//! All indices are 0-based; the digit component of an index pair is
//! `digit - 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sudoku::SudokuMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixedPair {
    /// `(r, c)`
    RowCol,
    /// `(b, g)`
    BlockGrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SudokuPair {
    /// `(r, d)`
    RowDigit,
    /// `(d, r)`
    DigitRow,
    /// `(c, d)`
    ColDigit,
    /// `(d, c)`
    DigitCol,
    /// `(b, d)`
    BlockDigit,
    /// `(d, b)`
    DigitBlock,
}

impl FixedPair {
    pub const ALL: [FixedPair; 2] = [FixedPair::RowCol, FixedPair::BlockGrid];
}

impl SudokuPair {
    pub const ALL: [SudokuPair; 6] = [
        SudokuPair::RowDigit,
        SudokuPair::DigitRow,
        SudokuPair::ColDigit,
        SudokuPair::DigitCol,
        SudokuPair::BlockDigit,
        SudokuPair::DigitBlock,
    ];
}

impl fmt::Display for FixedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixedPair::RowCol => "rc",
            FixedPair::BlockGrid => "bg",
        })
    }
}

impl fmt::Display for SudokuPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SudokuPair::RowDigit => "rd",
            SudokuPair::DigitRow => "dr",
            SudokuPair::ColDigit => "cd",
            SudokuPair::DigitCol => "dc",
            SudokuPair::BlockDigit => "bd",
            SudokuPair::DigitBlock => "db",
        })
    }
}

/// Any of the eight element-addressing schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Fixed(FixedPair),
    Sudoku(SudokuPair),
}

impl From<FixedPair> for Representation {
    fn from(p: FixedPair) -> Self {
        Representation::Fixed(p)
    }
}

impl From<SudokuPair> for Representation {
    fn from(p: SudokuPair) -> Self {
        Representation::Sudoku(p)
    }
}

impl Representation {
    pub const ALL: [Representation; 8] = [
        Representation::Fixed(FixedPair::RowCol),
        Representation::Fixed(FixedPair::BlockGrid),
        Representation::Sudoku(SudokuPair::RowDigit),
        Representation::Sudoku(SudokuPair::DigitRow),
        Representation::Sudoku(SudokuPair::ColDigit),
        Representation::Sudoku(SudokuPair::DigitCol),
        Representation::Sudoku(SudokuPair::BlockDigit),
        Representation::Sudoku(SudokuPair::DigitBlock),
    ];
}

/// Which way a Sudoku-associated bijection runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `P -> F`: the pixel indexed `(u, v)` under `P` moves to the position
    /// indexed `(u, v)` under `F`.
    SudokuToFixed,
    /// `P <- F`: the inverse of [`Direction::SudokuToFixed`].
    FixedToSudoku,
}

fn check_index(value: usize, side: usize, what: &str) -> Result<()> {
    if value >= side {
        return Err(Error::Range(format!("{what} {value} out of range 0..{side}")));
    }
    Ok(())
}

/// `(row, col)` -> `(block, grid)` with row-major block numbering.
pub fn rc_to_bg(row: usize, col: usize, n: usize) -> Result<(usize, usize)> {
    let side = n * n;
    check_index(row, side, "row")?;
    check_index(col, side, "column")?;
    Ok(((row / n) * n + col / n, (row % n) * n + col % n))
}

/// `(block, grid)` -> `(row, col)`, the exact inverse of [`rc_to_bg`].
pub fn bg_to_rc(block: usize, grid: usize, n: usize) -> Result<(usize, usize)> {
    let side = n * n;
    check_index(block, side, "block")?;
    check_index(grid, side, "grid")?;
    Ok(((block / n) * n + grid / n, (block % n) * n + grid % n))
}

/// Index pair of the cell at `pos` under representation `rep`.
pub fn rep_index(s: &SudokuMatrix, rep: impl Into<Representation>, pos: (usize, usize)) -> Result<(usize, usize)> {
    let (r, c) = pos;
    let n = s.order();
    let (b, g) = rc_to_bg(r, c, n)?;
    let d = s.get(r, c) - 1;
    Ok(match rep.into() {
        Representation::Fixed(FixedPair::RowCol) => (r, c),
        Representation::Fixed(FixedPair::BlockGrid) => (b, g),
        Representation::Sudoku(p) => match p {
            SudokuPair::RowDigit => (r, d),
            SudokuPair::DigitRow => (d, r),
            SudokuPair::ColDigit => (c, d),
            SudokuPair::DigitCol => (d, c),
            SudokuPair::BlockDigit => (b, d),
            SudokuPair::DigitBlock => (d, b),
        },
    })
}

/// Cell whose index pair under `rep` is `idx`; the inverse of [`rep_index`].
pub fn rep_locate(s: &SudokuMatrix, rep: impl Into<Representation>, idx: (usize, usize)) -> Result<(usize, usize)> {
    let side = s.side();
    check_index(idx.0, side, "first index")?;
    check_index(idx.1, side, "second index")?;
    Ok(locate_unchecked(s, rep.into(), idx))
}

fn locate_unchecked(s: &SudokuMatrix, rep: Representation, (u, v): (usize, usize)) -> (usize, usize) {
    let n = s.order();
    let bg = |b: usize, g: usize| ((b / n) * n + g / n, (b % n) * n + g % n);
    match rep {
        Representation::Fixed(FixedPair::RowCol) => (u, v),
        Representation::Fixed(FixedPair::BlockGrid) => bg(u, v),
        Representation::Sudoku(p) => {
            let (line, digit) = match p {
                SudokuPair::RowDigit | SudokuPair::ColDigit | SudokuPair::BlockDigit => (u, v + 1),
                SudokuPair::DigitRow | SudokuPair::DigitCol | SudokuPair::DigitBlock => (v, u + 1),
            };
            match p {
                SudokuPair::RowDigit | SudokuPair::DigitRow => (line, s.col_of_digit_in_row(line, digit)),
                SudokuPair::ColDigit | SudokuPair::DigitCol => (s.row_of_digit_in_col(line, digit), line),
                SudokuPair::BlockDigit | SudokuPair::DigitBlock => bg(line, s.grid_of_digit_in_block(line, digit)),
            }
        }
    }
}

/// An explicit bijection on an `N x N` grid: `forward[src] = dst` over
/// row-major linear indices `row * N + col`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PermutationMap {
    side: usize,
    forward: Vec<usize>,
}

impl fmt::Debug for PermutationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationMap").field("side", &self.side).field("forward", &self.forward).finish()
    }
}

/// Checks that `forward` holds every index in `0..forward.len()` exactly once.
pub fn check_permutation(forward: &[usize]) -> Result<()> {
    let mut seen = vec![false; forward.len()];
    for (i, &dst) in forward.iter().enumerate() {
        if dst >= forward.len() {
            return Err(Error::CorruptPermutation(format!("entry {i} maps to {dst}, outside 0..{}", forward.len())));
        }
        if std::mem::replace(&mut seen[dst], true) {
            return Err(Error::CorruptPermutation(format!("destination {dst} is hit twice")));
        }
    }
    Ok(())
}

impl PermutationMap {
    pub fn identity(side: usize) -> Self {
        PermutationMap { side, forward: (0..side * side).collect() }
    }

    pub fn from_forward(side: usize, forward: Vec<usize>) -> Result<Self> {
        if forward.len() != side * side {
            return Err(Error::SizeMismatch { expected: side * side, actual: forward.len() });
        }
        check_permutation(&forward)?;
        Ok(PermutationMap { side, forward })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, &d)| i == d)
    }

    /// Destination of the cell at `(row, col)`.
    pub fn map(&self, (row, col): (usize, usize)) -> (usize, usize) {
        let dst = self.forward[row * self.side + col];
        (dst / self.side, dst % self.side)
    }

    /// Text form: `N` on the first line, then the `N^2` destination indices.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.side);
        let body: Vec<String> = self.forward.iter().map(usize::to_string).collect();
        out.push_str(&body.join(" "));
        out.push('\n');
        out
    }
}

impl FromStr for PermutationMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::CorruptPermutation(format!("not an index: {t:?}"))));
        let side = tokens.next().ok_or_else(|| Error::CorruptPermutation("empty permutation text".into()))??;
        let forward = tokens.collect::<Result<Vec<_>>>()?;
        PermutationMap::from_forward(side, forward)
    }
}

/// The Sudoku-associated bijection between `pair` and `fixed` over `s`.
pub fn build_bijection(s: &SudokuMatrix, pair: SudokuPair, fixed: FixedPair, direction: Direction) -> PermutationMap {
    let side = s.side();
    let n = s.order();
    let mut forward = vec![0; side * side];
    for r in 0..side {
        for c in 0..side {
            let d = s.get(r, c) - 1;
            let b = (r / n) * n + c / n;
            let idx = match pair {
                SudokuPair::RowDigit => (r, d),
                SudokuPair::DigitRow => (d, r),
                SudokuPair::ColDigit => (c, d),
                SudokuPair::DigitCol => (d, c),
                SudokuPair::BlockDigit => (b, d),
                SudokuPair::DigitBlock => (d, b),
            };
            let (dr, dc) = locate_unchecked(s, Representation::Fixed(fixed), idx);
            forward[r * side + c] = dr * side + dc;
        }
    }
    let map = PermutationMap { side, forward };
    match direction {
        Direction::SudokuToFixed => map,
        Direction::FixedToSudoku => invert_unchecked(&map),
    }
}

/// `(f ∘ g)(pos) = f(g(pos))`.
pub fn compose(f: &PermutationMap, g: &PermutationMap) -> Result<PermutationMap> {
    if f.side != g.side {
        return Err(Error::SizeMismatch { expected: f.side, actual: g.side });
    }
    let forward = g.forward.iter().map(|&i| f.forward[i]).collect();
    Ok(PermutationMap { side: f.side, forward })
}

pub fn invert(f: &PermutationMap) -> Result<PermutationMap> {
    check_permutation(&f.forward)?;
    Ok(invert_unchecked(f))
}

fn invert_unchecked(f: &PermutationMap) -> PermutationMap {
    let mut inverse = vec![0; f.forward.len()];
    for (src, &dst) in f.forward.iter().enumerate() {
        inverse[dst] = src;
    }
    PermutationMap { side: f.side, forward: inverse }
}

/// Moves every element of a row-major `N x N` plane: `out[f(pos)] = in[pos]`.
pub fn apply_permutation<T: Copy + Default>(plane: &[T], f: &PermutationMap) -> Result<Vec<T>> {
    if plane.len() != f.forward.len() {
        return Err(Error::SizeMismatch { expected: f.forward.len(), actual: plane.len() });
    }
    let mut out = vec![T::default(); plane.len()];
    for (&value, &dst) in plane.iter().zip(&f.forward) {
        out[dst] = value;
    }
    Ok(out)
}
