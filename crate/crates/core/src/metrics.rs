//! Scrambling-quality measures: mean gray difference and GDD, adjacent-pixel
//! autocorrelation, and the Student-t significance test for it.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::image::Image;

/// A single-channel `rows x cols` plane of non-negative samples, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricFrame {
    rows: usize,
    cols: usize,
    samples: Vec<f64>,
}

impl MetricFrame {
    pub fn new(rows: usize, cols: usize, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != rows * cols {
            return Err(Error::SizeMismatch { expected: rows * cols, actual: samples.len() });
        }
        Ok(MetricFrame { rows, cols, samples })
    }

    pub fn from_u32(rows: usize, cols: usize, samples: &[u32]) -> Result<Self> {
        MetricFrame::new(rows, cols, samples.iter().map(|&s| f64::from(s)).collect())
    }

    /// Channel `channel` of `img` (0 for grayscale).
    pub fn from_image(img: &Image, channel: usize) -> Result<Self> {
        MetricFrame::from_u32(img.height(), img.width(), &img.channel(channel)?)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.samples[row * self.cols + col]
    }
}

/// Neighbours entering the gray difference of a pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Neighborhood {
    /// The four diagonal neighbours `(i ± 1, j ± 1)`.
    #[default]
    Diagonal,
    /// The four edge neighbours. Not the published definition.
    Cross,
}

/// Mean over interior pixels of `GD(i,j) = 1/4 Σ (X(i,j) - X(neighbour))²`.
pub fn mean_gray_difference(x: &MetricFrame, hood: Neighborhood) -> Result<f64> {
    if x.rows < 3 || x.cols < 3 {
        return Err(Error::Domain(format!("gray difference needs at least 3x3 pixels, got {}x{}", x.rows, x.cols)));
    }
    let offsets: [(isize, isize); 4] = match hood {
        Neighborhood::Diagonal => [(-1, -1), (-1, 1), (1, -1), (1, 1)],
        Neighborhood::Cross => [(-1, 0), (1, 0), (0, -1), (0, 1)],
    };
    let mut total = 0.0;
    for i in 1..x.rows - 1 {
        for j in 1..x.cols - 1 {
            let centre = x.get(i, j);
            let gd: f64 = offsets
                .iter()
                .map(|&(p, q)| {
                    let diff = centre - x.get(i.wrapping_add_signed(p), j.wrapping_add_signed(q));
                    diff * diff
                })
                .sum();
            total += gd / 4.0;
        }
    }
    Ok(total / ((x.rows - 2) * (x.cols - 2)) as f64)
}

/// Gray degree of scrambling, `|E - E'| / (E + E')`.
pub fn gdd(before: &MetricFrame, after: &MetricFrame, hood: Neighborhood) -> Result<f64> {
    if (before.rows, before.cols) != (after.rows, after.cols) {
        return Err(Error::DimensionMismatch(format!(
            "frames differ in size: {}x{} vs {}x{}",
            before.rows, before.cols, after.rows, after.cols
        )));
    }
    let e0 = mean_gray_difference(before, hood)?;
    let e1 = mean_gray_difference(after, hood)?;
    if e0 + e1 == 0.0 {
        return Err(Error::UndefinedGdd);
    }
    Ok((e0 - e1).abs() / (e0 + e1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorrelationDirection {
    /// Pixels read along rows.
    Horizontal,
    /// Pixels read along columns.
    Vertical,
}

impl CorrelationDirection {
    pub fn name(self) -> &'static str {
        match self {
            CorrelationDirection::Horizontal => "horizontal",
            CorrelationDirection::Vertical => "vertical",
        }
    }
}

/// Lag-1 autocorrelation of the frame flattened along `direction`, using
/// the global mean and variance and the `T - 1` non-circular pairs.
pub fn apcc(x: &MetricFrame, direction: CorrelationDirection) -> Result<f64> {
    let t = x.samples.len();
    if t < 6 {
        return Err(Error::Domain(format!("correlation needs at least 6 samples, got {t}")));
    }
    let seq: Vec<f64> = match direction {
        CorrelationDirection::Horizontal => x.samples.clone(),
        CorrelationDirection::Vertical => {
            (0..x.cols).flat_map(|c| (0..x.rows).map(move |r| (r, c))).map(|(r, c)| x.get(r, c)).collect()
        }
    };
    let mean = seq.iter().sum::<f64>() / t as f64;
    let var = seq.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / t as f64;
    if var == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let cov = seq.windows(2).map(|p| (p[0] - mean) * (p[1] - mean)).sum::<f64>() / (t - 1) as f64;
    Ok(cov / var)
}

/// `t = rho * sqrt((T - 2) / (1 - rho²))`.
pub fn t_statistic(rho: f64, samples: usize) -> Result<f64> {
    if samples < 6 {
        return Err(Error::Domain(format!("t statistic needs at least 6 samples, got {samples}")));
    }
    if !(rho.abs() < 1.0) {
        return Err(Error::Domain(format!("|rho| must be below 1, got {rho}")));
    }
    Ok(rho * ((samples - 2) as f64 / (1.0 - rho * rho)).sqrt())
}

/// Two-sided P-value of `t` under Student's t with `dof` degrees of freedom,
/// `I_{v/(v+t²)}(v/2, 1/2)`.
pub fn p_value(t: f64, dof: f64) -> Result<f64> {
    if !(dof >= 1.0) {
        return Err(Error::Domain(format!("degrees of freedom must be at least 1, got {dof}")));
    }
    if t.is_nan() {
        return Err(Error::Domain("t is NaN".into()));
    }
    if t.is_infinite() {
        return Ok(0.0);
    }
    let x = dof / (dof + t * t);
    Ok(regularized_incomplete_beta(x, dof / 2.0, 0.5)?.clamp(0.0, 1.0))
}

/// One full significance test: `(rho, t, v, P)` for a frame and direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTest {
    pub direction: CorrelationDirection,
    pub rho: f64,
    pub t: f64,
    pub dof: usize,
    pub p_value: f64,
}

pub fn correlation_test(x: &MetricFrame, direction: CorrelationDirection) -> Result<CorrelationTest> {
    let rho = apcc(x, direction)?;
    let samples = x.samples.len();
    let t = t_statistic(rho, samples)?;
    let dof = samples - 2;
    Ok(CorrelationTest { direction, rho, t, dof, p_value: p_value(t, dof as f64)? })
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`: Lanczos below 10, Stirling's series above.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("log-gamma needs x > 0, got {x}")));
    }
    Ok(if x < 0.5 {
        // shift up once so the Lanczos sum stays in its accurate range
        lanczos(x + 1.0) - x.ln()
    } else if x < 10.0 {
        lanczos(x)
    } else {
        stirling(x)
    })
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}

fn stirling(x: f64) -> f64 {
    // Bernoulli terms B_{2k} / (2k (2k - 1) x^{2k-1})
    const TERMS: [f64; 6] = [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360_360.0];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv;
    for c in TERMS {
        series += c * power;
        power *= inv2;
    }
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// `I_x(a, b)` via Lentz's continued fraction, using the symmetry
/// `I_x(a, b) = 1 - I_{1-x}(b, a)` where it converges faster.
pub fn regularized_incomplete_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) || !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Domain(format!("incomplete beta undefined at x={x}, a={a}, b={b}")));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(x);
    }
    let ln_front = log_gamma(a + b)? - log_gamma(a)? - log_gamma(b)? + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok(front * beta_continued_fraction(x, a, b) / a)
    } else {
        Ok(1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b)
    }
}

fn beta_continued_fraction(x: f64, a: f64, b: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    const MAX_ITER: usize = 100_000;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}
