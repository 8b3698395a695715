#![allow(dead_code)]

use std::path::PathBuf;

use sudoku_scramble::prng::SplitMix64;
use sudoku_scramble::{pnm, BitDepth, Image, ScramblerKey};

pub const KEY_A: &str = "B697F2703EA4347A85D997FB18A1FC3CE7E6901B6A9AE5EA";
pub const KEY_B: &str = "A697F2703EA4347A85D997FB18A1FC3CE7E6901B6A9AE5EA";

/// 256x256 8-bit cameraman photograph.
pub fn cameraman() -> Image {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/cameraman_256.pgm");
    pnm::read_pnm(&std::fs::read(path).unwrap()).unwrap()
}

pub fn random_key(rng: &mut SplitMix64) -> ScramblerKey {
    let mut bytes = [0u8; 24];
    for chunk in bytes.chunks_mut(8) {
        chunk.copy_from_slice(&rng.next_u64().to_be_bytes());
    }
    ScramblerKey::from_bytes(bytes)
}

pub fn random_image(width: usize, height: usize, depth: BitDepth, rng: &mut SplitMix64) -> Image {
    let mask = u64::from(depth.max_word());
    let data = (0..width * height).map(|_| (rng.next_u64() & mask) as u32).collect();
    Image::new(width, height, depth, data).unwrap()
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Literal double loop over interior pixels and the four diagonal neighbours.
pub fn naive_egd(x: &[Vec<f64>]) -> f64 {
    let (w, h) = (x.len(), x[0].len());
    let mut sum = 0.0;
    for i in 1..w - 1 {
        for j in 1..h - 1 {
            let mut gd = 0.0;
            for p in [-1i64, 1] {
                for q in [-1i64, 1] {
                    let nb = x[(i as i64 + p) as usize][(j as i64 + q) as usize];
                    gd += (x[i][j] - nb) * (x[i][j] - nb);
                }
            }
            sum += gd / 4.0;
        }
    }
    sum / ((w - 2) * (h - 2)) as f64
}

/// Direct evaluation of rho = E[(X_t - mu)(X_t+1 - mu)] / sigma^2 on a sequence.
pub fn naive_rho(seq: &[f64]) -> f64 {
    let n = seq.len();
    let mut mu = 0.0;
    for v in seq {
        mu += v;
    }
    mu /= n as f64;
    let mut var = 0.0;
    for v in seq {
        var += (v - mu) * (v - mu);
    }
    var /= n as f64;
    let mut e = 0.0;
    for t in 0..n - 1 {
        e += (seq[t] - mu) * (seq[t + 1] - mu);
    }
    e /= (n - 1) as f64;
    e / var
}

// Unnormalised Student-t density (1 + t^2 / v)^(-(v + 1) / 2).
fn t_kernel(t: f64, v: f64) -> f64 {
    (-(v + 1.0) / 2.0 * (t * t / v).ln_1p()).exp()
}

#[allow(clippy::too_many_arguments)]
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 60)
}

/// Integral of the kernel over [from, inf) via tau = from + s / (1 - s).
fn tail(from: f64, v: f64) -> f64 {
    let g = move |s: f64| {
        if s >= 1.0 {
            return 0.0;
        }
        let tau = from + s / (1.0 - s);
        t_kernel(tau, v) / ((1.0 - s) * (1.0 - s))
    };
    // split so the adaptive rule sees the bulk of the mass
    let cuts = [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0];
    cuts.windows(2).map(|w| integrate(&g, w[0], w[1], 1e-15)).sum()
}

/// Two-sided P-value by quadrature of the printed density, normalised
/// numerically so no gamma function is involved.
pub fn quadrature_p_value(t: f64, v: f64) -> f64 {
    let total = 2.0 * tail(0.0, v);
    2.0 * tail(t.abs(), v) / total
}
