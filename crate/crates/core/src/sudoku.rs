//! Sudoku matrices: validation, the canonical seed matrix, validity-preserving
//! transforms, and keyed parametric generation.
//!
//! Positions are 0-based `(row, col)` throughout the crate; digits keep their
//! natural range `1..=N`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::prng::SplitMix64;

/// Which constraint family a violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    Row,
    Column,
    Block,
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintKind::Row => "row",
            ConstraintKind::Column => "column",
            ConstraintKind::Block => "block",
        })
    }
}

/// First failing constraint: the line (0-based) and the smallest digit it misses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub kind: ConstraintKind,
    pub index: usize,
    pub missing_digit: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} is missing digit {}", self.kind, self.index + 1, self.missing_digit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the row, column and block constraints of an `N x N` digit array.
///
/// Rows are checked first, then columns, then blocks; within each family
/// lines are scanned in order and the smallest missing digit is reported.
pub fn validate_sudoku<R: AsRef<[usize]>>(rows: &[R], n: usize) -> Result<ValidationReport> {
    if n < 2 {
        return Err(Error::DimensionMismatch(format!("sub-block side must be at least 2, got {n}")));
    }
    let side = n * n;
    if rows.len() != side {
        return Err(Error::DimensionMismatch(format!("expected {side} rows, got {}", rows.len())));
    }
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != side {
            return Err(Error::DimensionMismatch(format!("row {} has {} entries, expected {side}", r + 1, row.len())));
        }
        if let Some((c, &d)) = row.iter().enumerate().find(|(_, &d)| d == 0 || d > side) {
            return Err(Error::Domain(format!("entry ({}, {}) = {d} is outside 1..={side}", r + 1, c + 1)));
        }
    }
    let at = |r: usize, c: usize| rows[r].as_ref()[c];

    // (family, line, k) -> k-th entry of that line
    type Line<'a> = &'a dyn Fn(usize, usize) -> usize;
    let families: [(ConstraintKind, Line); 3] = [
        (ConstraintKind::Row, &|line, k| at(line, k)),
        (ConstraintKind::Column, &|line, k| at(k, line)),
        (ConstraintKind::Block, &|line, k| {
            let (r, c) = block_cell(line, k, n);
            at(r, c)
        }),
    ];
    let mut seen = vec![false; side + 1];
    for (kind, cell) in families {
        for line in 0..side {
            seen.iter_mut().for_each(|s| *s = false);
            for k in 0..side {
                seen[cell(line, k)] = true;
            }
            if let Some(missing_digit) = (1..=side).find(|&d| !seen[d]) {
                return Ok(ValidationReport { violation: Some(Violation { kind, index: line, missing_digit }) });
            }
        }
    }
    Ok(ValidationReport { violation: None })
}

// (row, col) of the k-th cell of block b, both 0-based, row-major block numbering.
fn block_cell(b: usize, k: usize, n: usize) -> (usize, usize) {
    ((b / n) * n + k / n, (b % n) * n + k % n)
}

/// A validity-preserving action on Sudoku matrices.
///
/// Every permutation is 0-based and uses "pull" semantics: position `i` of the
/// result takes what was at position `perm[i]`. Digit relabelling maps digit
/// `d` to `perm[d - 1] + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SudokuTransform {
    RelabelDigits(Vec<usize>),
    PermuteBands(Vec<usize>),
    PermuteRowsInBand { band: usize, perm: Vec<usize> },
    PermuteStacks(Vec<usize>),
    PermuteColumnsInStack { stack: usize, perm: Vec<usize> },
    Transpose,
}

fn check_perm(perm: &[usize], len: usize, what: &str) -> Result<()> {
    if perm.len() != len {
        return Err(Error::Range(format!("{what} permutation has length {}, expected {len}", perm.len())));
    }
    let mut seen = vec![false; len];
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Range(format!("{what} permutation {perm:?} is not a permutation of 0..{len}")));
        }
    }
    Ok(())
}

/// An `N x N` Sudoku matrix with `N = n^2`, plus inverse lookup tables that
/// answer "where in line `u` is digit `d`".
#[derive(Clone, PartialEq, Eq)]
pub struct SudokuMatrix {
    n: usize,
    side: usize,
    cells: Vec<usize>,
    // [line * side + (digit - 1)] -> position within the line
    col_of_digit_in_row: Vec<usize>,
    row_of_digit_in_col: Vec<usize>,
    grid_of_digit_in_block: Vec<usize>,
}

impl fmt::Debug for SudokuMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SudokuMatrix").field("n", &self.n).field("rows", &self.rows()).finish()
    }
}

impl SudokuMatrix {
    /// Validates `rows` and builds the matrix; fails with the first violation.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R], n: usize) -> Result<Self> {
        let report = validate_sudoku(rows, n)?;
        if let Some(v) = report.violation {
            return Err(Error::Domain(format!("not a Sudoku matrix: {v}")));
        }
        let cells = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Ok(Self::from_valid_cells(n, cells))
    }

    fn from_valid_cells(n: usize, cells: Vec<usize>) -> Self {
        let side = n * n;
        let mut col_of_digit_in_row = vec![0; side * side];
        let mut row_of_digit_in_col = vec![0; side * side];
        let mut grid_of_digit_in_block = vec![0; side * side];
        for r in 0..side {
            for c in 0..side {
                let d = cells[r * side + c] - 1;
                col_of_digit_in_row[r * side + d] = c;
                row_of_digit_in_col[c * side + d] = r;
                let b = (r / n) * n + c / n;
                let g = (r % n) * n + c % n;
                grid_of_digit_in_block[b * side + d] = g;
            }
        }
        SudokuMatrix { n, side, cells, col_of_digit_in_row, row_of_digit_in_col, grid_of_digit_in_block }
    }

    /// The seed matrix `C[r][c] = ((r mod n) * n + r / n + c) mod N + 1`.
    pub fn canonical(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("sub-block side must be at least 2, got {n}")));
        }
        let side = n * n;
        let cells = (0..side).flat_map(|r| (0..side).map(move |c| ((r % n) * n + r / n + c) % side + 1)).collect();
        Ok(Self::from_valid_cells(n, cells))
    }

    /// Deterministic keyed generation: the canonical matrix followed by a
    /// digit relabel, band permutation, per-band row permutations, stack
    /// permutation, per-stack column permutations and an optional transpose,
    /// all drawn from SplitMix64 seeded with `seed`, in that order.
    pub fn generate(seed: u64, n: usize) -> Result<Self> {
        let mut m = Self::canonical(n)?;
        let side = m.side;
        let mut rng = SplitMix64::new(seed);
        m = m.apply(&SudokuTransform::RelabelDigits(rng.permutation(side)))?;
        m = m.apply(&SudokuTransform::PermuteBands(rng.permutation(n)))?;
        for band in 0..n {
            m = m.apply(&SudokuTransform::PermuteRowsInBand { band, perm: rng.permutation(n) })?;
        }
        m = m.apply(&SudokuTransform::PermuteStacks(rng.permutation(n)))?;
        for stack in 0..n {
            m = m.apply(&SudokuTransform::PermuteColumnsInStack { stack, perm: rng.permutation(n) })?;
        }
        if rng.next_u64() & 1 == 1 {
            m = m.apply(&SudokuTransform::Transpose)?;
        }
        Ok(m)
    }

    pub fn apply(&self, t: &SudokuTransform) -> Result<Self> {
        let (n, side) = (self.n, self.side);
        // source (row, col) for each destination (row, col)
        let (row_src, col_src): (Vec<usize>, Vec<usize>) = match t {
            SudokuTransform::RelabelDigits(perm) => {
                check_perm(perm, side, "digit")?;
                let cells = self.cells.iter().map(|&d| perm[d - 1] + 1).collect();
                return Ok(Self::from_valid_cells(n, cells));
            }
            SudokuTransform::Transpose => {
                let cells =
                    (0..side).flat_map(|r| (0..side).map(move |c| (c, r))).map(|(r, c)| self.get(r, c)).collect();
                return Ok(Self::from_valid_cells(n, cells));
            }
            SudokuTransform::PermuteBands(perm) => {
                check_perm(perm, n, "band")?;
                ((0..side).map(|r| perm[r / n] * n + r % n).collect(), (0..side).collect())
            }
            SudokuTransform::PermuteRowsInBand { band, perm } => {
                if *band >= n {
                    return Err(Error::Range(format!("band {band} out of range 0..{n}")));
                }
                check_perm(perm, n, "row")?;
                let rows = (0..side).map(|r| if r / n == *band { band * n + perm[r % n] } else { r }).collect();
                (rows, (0..side).collect())
            }
            SudokuTransform::PermuteStacks(perm) => {
                check_perm(perm, n, "stack")?;
                ((0..side).collect(), (0..side).map(|c| perm[c / n] * n + c % n).collect())
            }
            SudokuTransform::PermuteColumnsInStack { stack, perm } => {
                if *stack >= n {
                    return Err(Error::Range(format!("stack {stack} out of range 0..{n}")));
                }
                check_perm(perm, n, "column")?;
                let cols = (0..side).map(|c| if c / n == *stack { stack * n + perm[c % n] } else { c }).collect();
                ((0..side).collect(), cols)
            }
        };
        let cells = (0..side)
            .flat_map(|r| (0..side).map(move |c| (r, c)))
            .map(|(r, c)| self.get(row_src[r], col_src[c]))
            .collect();
        Ok(Self::from_valid_cells(n, cells))
    }

    /// Sub-block side `n`.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Side length `N = n^2`.
    pub fn side(&self) -> usize {
        self.side
    }

    /// Digit (1..=N) at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.side + col]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.side).map(<[usize]>::to_vec).collect()
    }

    pub(crate) fn col_of_digit_in_row(&self, row: usize, digit: usize) -> usize {
        self.col_of_digit_in_row[row * self.side + digit - 1]
    }

    pub(crate) fn row_of_digit_in_col(&self, col: usize, digit: usize) -> usize {
        self.row_of_digit_in_col[col * self.side + digit - 1]
    }

    pub(crate) fn grid_of_digit_in_block(&self, block: usize, digit: usize) -> usize {
        self.grid_of_digit_in_block[block * self.side + digit - 1]
    }

    /// Text form: `"n N"` then `N` lines of space-separated digits.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.side);
        for row in self.cells.chunks(self.side) {
            let line: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses the text form without validating the Sudoku constraints.
pub fn parse_sudoku_text(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::DimensionMismatch("empty Sudoku file".into()))?;
    let nums = parse_numbers(header)?;
    let [n, side] = nums[..] else {
        return Err(Error::DimensionMismatch(format!("header must be \"n N\", got {header:?}")));
    };
    if n * n != side {
        return Err(Error::DimensionMismatch(format!("header N = {side} is not n^2 for n = {n}")));
    }
    let rows = lines.map(parse_numbers).collect::<Result<Vec<_>>>()?;
    Ok((n, rows))
}

fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace().map(|tok| tok.parse().map_err(|_| Error::Domain(format!("not a digit: {tok:?}")))).collect()
}

impl FromStr for SudokuMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, rows) = parse_sudoku_text(s)?;
        SudokuMatrix::from_rows(&rows, n)
    }
}
