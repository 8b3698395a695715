//! The 192-bit scrambler key and everything derived from it: round seeds,
//! round Sudoku matrices, per-plane round plans and the block-size rule.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::prng::prng_next;
use crate::representations::{Direction, FixedPair, SudokuPair};
use crate::sudoku::SudokuMatrix;

/// Number of scrambling rounds.
pub const ROUNDS: usize = 12;

/// Smallest accepted image side.
pub const MIN_IMAGE_SIDE: usize = 16;

/// Environment variable consulted when no key is given on the command line.
pub const KEY_ENV_VAR: &str = "SUDOKU_SCRAMBLE_KEY";

/// 192-bit key made of twenty-four 8-bit subkeys, most significant first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScramblerKey {
    bytes: [u8; 24],
}

impl fmt::Debug for ScramblerKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScramblerKey({self})")
    }
}

impl fmt::Display for ScramblerKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bytes.iter().try_for_each(|b| write!(f, "{b:02X}"))
    }
}

impl FromStr for ScramblerKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScramblerKey::parse(s)
    }
}

impl ScramblerKey {
    pub fn from_bytes(bytes: [u8; 24]) -> Self {
        ScramblerKey { bytes }
    }

    /// Parses exactly 48 hexadecimal digits (either case).
    pub fn parse(hex: &str) -> Result<Self> {
        let hex = hex.trim();
        if hex.len() != 48 {
            return Err(Error::KeyFormat(format!("expected 48 hex digits, got {}", hex.len())));
        }
        if let Some(bad) = hex.chars().find(|ch| !ch.is_ascii_hexdigit()) {
            return Err(Error::KeyFormat(format!("non-hex character {bad:?}")));
        }
        let mut bytes = [0u8; 24];
        for (i, byte) in bytes.iter_mut().enumerate() {
            *byte = u8::from_str_radix(&hex[2 * i..2 * i + 2], 16).expect("validated hex");
        }
        Ok(ScramblerKey { bytes })
    }

    pub fn bytes(&self) -> &[u8; 24] {
        &self.bytes
    }

    /// Subkey `j` for `j` in `1..=24`; subkey 1 is the most significant byte.
    pub fn subkey(&self, j: usize) -> u8 {
        assert!((1..=24).contains(&j), "subkey index {j} out of 1..=24");
        self.bytes[j - 1]
    }

    /// The three big-endian 64-bit words `k0, k1, k2`.
    pub fn words(&self) -> [u64; 3] {
        std::array::from_fn(|w| u64::from_be_bytes(self.bytes[8 * w..8 * w + 8].try_into().unwrap()))
    }
}

/// Seed for round `round` (1..=12).
pub fn round_seed(key: &ScramblerKey, round: usize) -> Result<u64> {
    if !(1..=ROUNDS).contains(&round) {
        return Err(Error::Range(format!("round {round} out of 1..={ROUNDS}")));
    }
    let mut s = 0u64;
    for word in key.words() {
        s = prng_next(s ^ word).0;
    }
    Ok(prng_next(s ^ round as u64).0)
}

/// Sudoku `(N, n)` for an image with `rows x cols` pixels: the sub-block
/// side is `n = isqrt(min(rows, cols))`, so the `N = n^2` Sudoku is the
/// largest one fitting inside the image.
pub fn block_size(rows: usize, cols: usize) -> Result<(usize, usize)> {
    let min = rows.min(cols);
    if min < MIN_IMAGE_SIDE {
        return Err(Error::ImageTooSmall { rows, cols, min: MIN_IMAGE_SIDE });
    }
    let n = min.isqrt();
    Ok((n * n, n))
}

/// The Sudoku matrix driving round `round` of an image with `rows x cols` pixels.
pub fn round_sudoku(key: &ScramblerKey, round: usize, rows: usize, cols: usize) -> Result<SudokuMatrix> {
    let (_, n) = block_size(rows, cols)?;
    SudokuMatrix::generate(round_seed(key, round)?, n)
}

/// One round's choice for one bit-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoundStep {
    pub pair: SudokuPair,
    pub fixed: FixedPair,
    pub direction: Direction,
}

/// The twelve `(P, F)` combinations, indexed by `q - 1`.
pub const PAIR_TABLE: [(SudokuPair, FixedPair); 12] = [
    (SudokuPair::BlockDigit, FixedPair::RowCol),
    (SudokuPair::BlockDigit, FixedPair::BlockGrid),
    (SudokuPair::ColDigit, FixedPair::RowCol),
    (SudokuPair::ColDigit, FixedPair::BlockGrid),
    (SudokuPair::DigitBlock, FixedPair::RowCol),
    (SudokuPair::DigitBlock, FixedPair::BlockGrid),
    (SudokuPair::DigitCol, FixedPair::RowCol),
    (SudokuPair::DigitCol, FixedPair::BlockGrid),
    (SudokuPair::DigitRow, FixedPair::RowCol),
    (SudokuPair::DigitRow, FixedPair::BlockGrid),
    (SudokuPair::RowDigit, FixedPair::RowCol),
    (SudokuPair::RowDigit, FixedPair::BlockGrid),
];

/// Per-plane schedule: step `u - 1` is used in round `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RoundPlan {
    pub steps: [RoundStep; ROUNDS],
    /// Table indices `q` (1..=12) chosen for each round.
    pub order: [usize; ROUNDS],
}

/// Plan for bit-plane `plane` (1-based).
///
/// Twelve cyclically consecutive subkeys starting at subkey `plane` are
/// stably argsorted ascending; the `u`-th index picks round `u`'s entry of
/// [`PAIR_TABLE`], and odd indices run Sudoku-to-fixed.
pub fn parameter_generator(key: &ScramblerKey, plane: usize) -> RoundPlan {
    assert!(plane >= 1, "bit-plane indices start at 1");
    let subkeys: [u8; ROUNDS] = std::array::from_fn(|j| key.subkey((plane - 1 + j) % 24 + 1));
    let mut order: [usize; ROUNDS] = std::array::from_fn(|j| j + 1);
    // sort_by_key is stable: equal subkeys keep the smaller j first
    order.sort_by_key(|&q| subkeys[q - 1]);
    let steps = order.map(|q| {
        let (pair, fixed) = PAIR_TABLE[q - 1];
        let direction = if q % 2 == 1 { Direction::SudokuToFixed } else { Direction::FixedToSudoku };
        RoundStep { pair, fixed, direction }
    });
    RoundPlan { steps, order }
}
