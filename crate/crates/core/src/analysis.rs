//! Behavioural analyses of the scrambler: chosen-plaintext recovery of the
//! per-plane equivalent permutation, key sensitivity, and adjacent-pixel
//! scatter samples.

use rayon::prelude::*;

use crate::engine::Scrambler;
use crate::error::{Error, Result};
use crate::image::{BitDepth, Image};
use crate::key::ScramblerKey;
use crate::metrics::MetricFrame;
use crate::prng::SplitMix64;
use crate::representations::check_permutation;

/// The single position permutation a fixed-key scrambler applies to one
/// bit-plane of a `height x width` image. Indices are row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquivalentPermutation {
    pub width: usize,
    pub height: usize,
    pub plane: usize,
    pub forward: Vec<usize>,
}

impl EquivalentPermutation {
    /// Moves plane `self.plane` of `img` and leaves every other plane alone.
    pub fn apply(&self, img: &Image) -> Result<Image> {
        if (img.width(), img.height()) != (self.width, self.height) {
            return Err(Error::SizeMismatch { expected: self.width * self.height, actual: img.width() * img.height() });
        }
        let bit = 1u32 << (self.plane - 1);
        let mut data: Vec<u32> = img.data().iter().map(|&w| w & !bit).collect();
        for (src, &dst) in self.forward.iter().enumerate() {
            data[dst] |= img.data()[src] & bit;
        }
        Image::new(self.width, self.height, img.depth(), data)
    }

    /// Text form: `N` when square, otherwise `height width`, then the indices.
    pub fn to_text(&self) -> String {
        let mut out = if self.width == self.height {
            format!("{}\n", self.width)
        } else {
            format!("{} {}\n", self.height, self.width)
        };
        let body: Vec<String> = self.forward.iter().map(usize::to_string).collect();
        out.push_str(&body.join(" "));
        out.push('\n');
        out
    }
}

/// Recovers the permutation `scramble` applies to bit-plane `plane` by
/// scrambling `width * height` single-bit probe images.
///
/// Probes run in parallel; the result does not depend on scheduling.
pub fn extract_equivalent_permutation<F>(
    scramble: F,
    width: usize,
    height: usize,
    depth: BitDepth,
    plane: usize,
) -> Result<EquivalentPermutation>
where
    F: Fn(&Image) -> Result<Image> + Sync,
{
    if !(1..=depth.planes()).contains(&plane) {
        return Err(Error::Range(format!("plane {plane} out of 1..={}", depth.planes())));
    }
    let bit = 1u32 << (plane - 1);
    let total = width * height;
    let forward = (0..total)
        .into_par_iter()
        .map(|probe| {
            let mut data = vec![0u32; total];
            data[probe] = bit;
            let out = scramble(&Image::new(width, height, depth, data)?)?;
            let hits: Vec<usize> =
                out.data().iter().enumerate().filter(|(_, &w)| w & bit != 0).map(|(i, _)| i).collect();
            match hits[..] {
                [dst] => Ok(dst),
                _ => Err(Error::NotAPermutation { plane, probe, set_bits: hits.len() }),
            }
        })
        .collect::<Result<Vec<usize>>>()?;
    check_permutation(&forward).map_err(|_| Error::NotAPermutation { plane, probe: total, set_bits: 0 })?;
    Ok(EquivalentPermutation { width, height, plane, forward })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityReport {
    /// Fraction of pixels whose packed value differs.
    pub differing_fraction: f64,
    /// Per bit-plane fraction of differing bits, plane 1 first.
    pub plane_flip_fractions: Vec<f64>,
    /// Mean absolute difference over all channel samples.
    pub mean_abs_difference: f64,
}

/// Compares `a` and `b` pixel by pixel.
pub fn compare_images(a: &Image, b: &Image) -> Result<SensitivityReport> {
    if (a.width(), a.height(), a.depth()) != (b.width(), b.height(), b.depth()) {
        return Err(Error::DimensionMismatch("images differ in size or depth".into()));
    }
    let count = a.data().len() as f64;
    let differing = a.data().iter().zip(b.data()).filter(|(x, y)| x != y).count();
    let plane_flip_fractions = (0..a.depth().planes())
        .map(|p| a.data().iter().zip(b.data()).filter(|(x, y)| ((*x ^ *y) >> p) & 1 == 1).count() as f64 / count)
        .collect();
    let mut abs_sum = 0.0;
    for ch in 0..a.depth().channels() {
        abs_sum += a.channel(ch)?.iter().zip(b.channel(ch)?).map(|(&x, y)| f64::from(x.abs_diff(y))).sum::<f64>();
    }
    Ok(SensitivityReport {
        differing_fraction: differing as f64 / count,
        plane_flip_fractions,
        mean_abs_difference: abs_sum / (count * a.depth().channels() as f64),
    })
}

/// Scrambles `img` under both keys and compares the results.
pub fn key_sensitivity(img: &Image, key_a: &ScramblerKey, key_b: &ScramblerKey) -> Result<SensitivityReport> {
    let ya = Scrambler::new(*key_a).scramble(img)?;
    let yb = Scrambler::new(*key_b).scramble(img)?;
    compare_images(&ya, &yb)
}

/// `count` distinct pixels that have both a right and a lower neighbour,
/// drawn without replacement, as `(pixel, right, below)` intensity triples.
pub fn adjacency_samples(frame: &MetricFrame, count: usize, seed: u64) -> Result<Vec<(f64, f64, f64)>> {
    let (rows, cols) = (frame.rows(), frame.cols());
    let available = rows.saturating_sub(1) * cols.saturating_sub(1);
    if count > available {
        return Err(Error::CountTooLarge { requested: count, available });
    }
    let mut rng = SplitMix64::new(seed);
    let mut candidates: Vec<usize> = (0..available).collect();
    // partial Fisher–Yates: the first `count` slots end up a uniform sample
    for i in 0..count {
        let j = i + rng.below(available - i);
        candidates.swap(i, j);
    }
    Ok(candidates[..count]
        .iter()
        .map(|&k| {
            let (r, c) = (k / (cols - 1), k % (cols - 1));
            (frame.get(r, c), frame.get(r, c + 1), frame.get(r + 1, c))
        })
        .collect())
}
