//! Scrambles a grayscale PNM image and prints scrambling-quality metrics.
//!
//! cargo run --release -p sudoku-scramble --example quality -- image.pgm [hex-key]

use sudoku_scramble::metrics::{correlation_test, gdd, CorrelationDirection, MetricFrame, Neighborhood};
use sudoku_scramble::{pnm, Scrambler, ScramblerKey};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args.next().ok_or("usage: quality IMAGE [KEY]")?;
    let key: ScramblerKey =
        args.next().as_deref().unwrap_or("B697F2703EA4347A85D997FB18A1FC3CE7E6901B6A9AE5EA").parse()?;
    let img = pnm::read_pnm(&std::fs::read(path)?)?;
    let scrambler = Scrambler::new(key);
    let (big_n, n) = scrambler.sudoku_size(img.height(), img.width())?;
    println!("{}x{} image, {big_n}x{big_n} Sudoku (order {n})", img.width(), img.height());

    let y = scrambler.scramble(&img)?;
    let before = MetricFrame::from_image(&img, 0)?;
    let after = MetricFrame::from_image(&y, 0)?;
    println!("GDD {:.4}", gdd(&before, &after, Neighborhood::Diagonal)?);
    for dir in [CorrelationDirection::Horizontal, CorrelationDirection::Vertical] {
        let (a, b) = (correlation_test(&before, dir)?, correlation_test(&after, dir)?);
        println!(
            "{:>10}: rho {:+.4} -> {:+.4}  (t {:+.3}, P {:.2}%)",
            dir.name(),
            a.rho,
            b.rho,
            b.t,
            100.0 * b.p_value
        );
    }
    Ok(())
}
