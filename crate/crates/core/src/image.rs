use crate::error::{Error, Result};

/// Bits per pixel. Each bit is one independently scrambled bit-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BitDepth {
    One,
    Eight,
    Sixteen,
    /// Three 8-bit channels R, G, B.
    TwentyFour,
}

impl BitDepth {
    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            1 => Ok(BitDepth::One),
            8 => Ok(BitDepth::Eight),
            16 => Ok(BitDepth::Sixteen),
            24 => Ok(BitDepth::TwentyFour),
            other => Err(Error::UnsupportedDepth(other)),
        }
    }

    pub fn planes(self) -> usize {
        match self {
            BitDepth::One => 1,
            BitDepth::Eight => 8,
            BitDepth::Sixteen => 16,
            BitDepth::TwentyFour => 24,
        }
    }

    pub fn channels(self) -> usize {
        match self {
            BitDepth::TwentyFour => 3,
            _ => 1,
        }
    }

    pub fn bits_per_channel(self) -> usize {
        self.planes() / self.channels()
    }

    /// Largest value a packed pixel word may hold.
    pub fn max_word(self) -> u32 {
        ((1u64 << self.planes()) - 1) as u32
    }
}

/// A raster of `height` rows by `width` columns.
///
/// Each pixel is one packed word whose bit `l - 1` is bit-plane `l`. For
/// 24-bit images the word is `R | G << 8 | B << 16`, so planes 1..=8 are the
/// red channel LSB first, then green, then blue.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Image {
    width: usize,
    height: usize,
    depth: BitDepth,
    data: Vec<u32>,
}

impl Image {
    pub fn new(width: usize, height: usize, depth: BitDepth, data: Vec<u32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::DimensionMismatch(format!("image must be non-empty, got {width}x{height}")));
        }
        if data.len() != width * height {
            return Err(Error::SizeMismatch { expected: width * height, actual: data.len() });
        }
        if let Some(&bad) = data.iter().find(|&&w| w > depth.max_word()) {
            return Err(Error::Domain(format!("pixel word {bad:#x} exceeds {}-bit depth", depth.planes())));
        }
        Ok(Image { width, height, depth, data })
    }

    pub fn filled(width: usize, height: usize, depth: BitDepth, word: u32) -> Result<Self> {
        Image::new(width, height, depth, vec![word; width * height])
    }

    /// Builds a 24-bit image from `[r, g, b]` triples.
    pub fn from_rgb(width: usize, height: usize, rgb: &[[u8; 3]]) -> Result<Self> {
        let data = rgb.iter().map(|&[r, g, b]| pack_rgb(r, g, b)).collect();
        Image::new(width, height, BitDepth::TwentyFour, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn depth(&self) -> BitDepth {
        self.depth
    }

    /// Packed pixel words in row-major order.
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [u32] {
        &mut self.data
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.data[row * self.width + col]
    }

    /// Sample of `channel` (0-based) at every pixel.
    pub fn channel(&self, channel: usize) -> Result<Vec<u32>> {
        if channel >= self.depth.channels() {
            return Err(Error::Range(format!("channel {channel} out of 0..{}", self.depth.channels())));
        }
        let bits = self.depth.bits_per_channel();
        let mask = ((1u64 << bits) - 1) as u32;
        Ok(self.data.iter().map(|&w| (w >> (channel * bits)) & mask).collect())
    }

    /// Bit-plane `plane` (1-based) as a row-major 0/1 raster.
    pub fn bit_plane(&self, plane: usize) -> Result<Vec<u8>> {
        if !(1..=self.depth.planes()).contains(&plane) {
            return Err(Error::Range(format!("plane {plane} out of 1..={}", self.depth.planes())));
        }
        Ok(self.data.iter().map(|&w| ((w >> (plane - 1)) & 1) as u8).collect())
    }
}

pub fn pack_rgb(r: u8, g: u8, b: u8) -> u32 {
    u32::from(r) | u32::from(g) << 8 | u32::from(b) << 16
}

pub fn unpack_rgb(word: u32) -> [u8; 3] {
    [word as u8, (word >> 8) as u8, (word >> 16) as u8]
}
