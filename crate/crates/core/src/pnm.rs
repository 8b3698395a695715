//! Binary portable anymap files: P4 (1-bit), P5 (8/16-bit gray), P6 (24-bit RGB).
//!
//! P4 stores 1 as black, MSB first, with each row padded to a whole byte.
//! 16-bit samples are big-endian. ASCII variants (P1–P3) are rejected.

use crate::error::{Error, Result};
use crate::image::{pack_rgb, unpack_rgb, BitDepth, Image};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Magic {
    P4,
    P5,
    P6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PnmHeader {
    pub magic: Magic,
    pub width: usize,
    pub height: usize,
    /// `None` for P4.
    pub maxval: Option<u32>,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n' && b != b'\r') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { offset: start, message: format!("{what} does not fit in 32 bits") })
    }
}

/// Parses the header and returns it with the offset of the first raster byte.
pub fn read_header(bytes: &[u8]) -> Result<(PnmHeader, usize)> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = match bytes.get(..2) {
        Some(b"P4") => Magic::P4,
        Some(b"P5") => Magic::P5,
        Some(b"P6") => Magic::P6,
        Some([b'P', b'1'..=b'3']) => return Err(cur.error("ASCII anymaps are not supported")),
        _ => return Err(cur.error("missing P4/P5/P6 magic number")),
    };
    cur.pos = 2;
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    if width == 0 || height == 0 {
        return Err(cur.error("image dimensions must be positive"));
    }
    let maxval = match magic {
        Magic::P4 => None,
        _ => {
            let m = cur.number("maxval")?;
            if m != 255 && m != 65535 {
                return Err(Error::UnsupportedMaxval(m));
            }
            Some(m)
        }
    };
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(cur.error("expected a single whitespace byte before the raster")),
    }
    Ok((PnmHeader { magic, width, height, maxval }, cur.pos))
}

pub fn read_pnm(bytes: &[u8]) -> Result<Image> {
    let (header, start) = read_header(bytes)?;
    let PnmHeader { magic, width, height, maxval } = header;
    let (depth, row_bytes) = match (magic, maxval) {
        (Magic::P4, _) => (BitDepth::One, width.div_ceil(8)),
        (Magic::P5, Some(255)) => (BitDepth::Eight, width),
        (Magic::P5, _) => (BitDepth::Sixteen, 2 * width),
        (Magic::P6, Some(255)) => (BitDepth::TwentyFour, 3 * width),
        (Magic::P6, _) => return Err(Error::UnsupportedMaxval(65535)),
    };
    let needed = row_bytes * height;
    let raster = &bytes[start..];
    if raster.len() < needed {
        return Err(Error::Parse {
            offset: bytes.len(),
            message: format!("raster truncated: need {needed} bytes, found {}", raster.len()),
        });
    }
    let mut data = Vec::with_capacity(width * height);
    for row in raster[..needed].chunks_exact(row_bytes) {
        match depth {
            BitDepth::One => data.extend((0..width).map(|c| u32::from((row[c / 8] >> (7 - c % 8)) & 1))),
            BitDepth::Eight => data.extend(row.iter().map(|&b| u32::from(b))),
            BitDepth::Sixteen => data.extend(row.chunks_exact(2).map(|p| u32::from(u16::from_be_bytes([p[0], p[1]])))),
            BitDepth::TwentyFour => data.extend(row.chunks_exact(3).map(|p| pack_rgb(p[0], p[1], p[2]))),
        }
    }
    Image::new(width, height, depth, data)
}

/// Canonical encoding: `"magic\nW H\nmaxval\n"` followed by the raster.
pub fn write_pnm(img: &Image) -> Vec<u8> {
    let (w, h) = (img.width(), img.height());
    let mut out = match img.depth() {
        BitDepth::One => format!("P4\n{w} {h}\n"),
        BitDepth::Eight => format!("P5\n{w} {h}\n255\n"),
        BitDepth::Sixteen => format!("P5\n{w} {h}\n65535\n"),
        BitDepth::TwentyFour => format!("P6\n{w} {h}\n255\n"),
    }
    .into_bytes();
    for row in img.data().chunks_exact(w) {
        match img.depth() {
            BitDepth::One => {
                let mut packed = vec![0u8; w.div_ceil(8)];
                for (c, &bit) in row.iter().enumerate() {
                    packed[c / 8] |= (bit as u8 & 1) << (7 - c % 8);
                }
                out.extend_from_slice(&packed);
            }
            BitDepth::Eight => out.extend(row.iter().map(|&v| v as u8)),
            BitDepth::Sixteen => row.iter().for_each(|&v| out.extend_from_slice(&(v as u16).to_be_bytes())),
            BitDepth::TwentyFour => row.iter().for_each(|&v| out.extend_from_slice(&unpack_rgb(v))),
        }
    }
    out
}
