//! Key-driven image scrambling built from Sudoku-associated two-dimensional
//! bijections.
//!
//! A 192-bit [`ScramblerKey`] selects, for each of twelve rounds, a Sudoku
//! matrix and for every bit-plane a pairing of a Sudoku-associated element
//! representation with a fixed one. Each pairing induces a permutation of
//! the Sudoku grid, which is applied block by block to that bit-plane after a
//! cyclic image shift. Descrambling runs everything in reverse.
//!
//! ```
//! use sudoku_scramble::{descramble, scramble, BitDepth, Image, ScramblerKey};
//!
//! let key: ScramblerKey = "B697F2703EA4347A85D997FB18A1FC3CE7E6901B6A9AE5EA".parse().unwrap();
//! let img = Image::new(20, 16, BitDepth::Eight, (0..320).map(|v| v % 256).collect()).unwrap();
//! let scrambled = scramble(&img, &key).unwrap();
//! assert_eq!(descramble(&scrambled, &key).unwrap(), img);
//! ```

pub mod analysis;
pub mod engine;
pub mod error;
pub mod image;
pub mod key;
pub mod metrics;
pub mod pnm;
pub mod prng;
pub mod representations;
pub mod sudoku;

pub use engine::{descramble, scramble, Scrambler};
pub use error::{Error, Result};
pub use image::{BitDepth, Image};
pub use key::ScramblerKey;
pub use representations::{Direction, FixedPair, PermutationMap, SudokuPair};
pub use sudoku::SudokuMatrix;
