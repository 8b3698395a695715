use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sudoku_scramble::analysis::{adjacency_samples, extract_equivalent_permutation, key_sensitivity};
use sudoku_scramble::key::KEY_ENV_VAR;
use sudoku_scramble::metrics::{correlation_test, gdd, CorrelationDirection, MetricFrame, Neighborhood};
use sudoku_scramble::sudoku::{parse_sudoku_text, validate_sudoku};
use sudoku_scramble::{pnm, BitDepth, Image, Scrambler, ScramblerKey, SudokuMatrix};

/// Key-driven image scrambling with Sudoku-associated bijections.
#[derive(Parser)]
#[command(name = "sudoku-scramble", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scramble a PBM/PGM/PPM image.
    Scramble(Transform),
    /// Invert `scramble` with the same key.
    Descramble(Transform),
    /// Scrambling-quality metrics, as CSV on stdout.
    Analyze(Analyze),
    /// Recover the per-plane permutation of a key by chosen-plaintext probing.
    Attack(Attack),
    /// Generate a keyed Sudoku matrix.
    GenSudoku(GenSudoku),
    /// Check a Sudoku matrix file; exits 2 if it is not a valid Sudoku.
    ValidateSudoku { file: PathBuf },
    /// Compare the scrambles of one image under two keys, as CSV on stdout.
    Sensitivity(Sensitivity),
    /// Random (pixel, right, below) intensity triples, as CSV on stdout.
    Scatter(Scatter),
}

#[derive(Args)]
struct KeyArg {
    /// 192-bit key as 48 hex digits.
    #[arg(long, env = KEY_ENV_VAR, hide_env_values = true)]
    key: Option<String>,
}

#[derive(Args)]
struct SudokuSize {
    /// Debug override of the Sudoku side (a perfect square such as 16 or 256);
    /// by default the largest Sudoku fitting the image is used.
    #[arg(long, value_name = "N")]
    sudoku_size: Option<usize>,
}

#[derive(Args)]
struct Transform {
    input: PathBuf,
    output: PathBuf,
    #[command(flatten)]
    key: KeyArg,
    #[command(flatten)]
    size: SudokuSize,
}

#[derive(Args)]
struct Analyze {
    /// Gray difference degree between an original and its scramble.
    #[arg(long, num_args = 2, value_names = ["BEFORE", "AFTER"], conflicts_with = "apcc", required_unless_present = "apcc")]
    gdd: Option<Vec<PathBuf>>,
    #[arg(long, value_enum, default_value_t = Hood::Diagonal, requires = "gdd")]
    neighborhood: Hood,
    /// Adjacent-pixel correlation coefficient of one image.
    #[arg(long, value_name = "IMAGE")]
    apcc: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Dir::Both, requires = "apcc")]
    direction: Dir,
    /// Also report the t statistic and two-sided P-value.
    #[arg(long, requires = "apcc")]
    pvalue: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Hood {
    Diagonal,
    /// Four-neighbour variant (not the published metric).
    Cross,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Horizontal,
    Vertical,
    Both,
}

#[derive(Args)]
struct Attack {
    /// Image size as WIDTHxHEIGHT.
    #[arg(long, value_parser = parse_size)]
    size: (usize, usize),
    /// Bit-plane, 1 = least significant.
    #[arg(long, default_value_t = 1)]
    plane: usize,
    /// Bits per pixel: 1, 8, 16 or 24.
    #[arg(long, default_value_t = 1)]
    depth: u32,
    #[command(flatten)]
    key: KeyArg,
    #[command(flatten)]
    size_override: SudokuSize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenSudoku {
    /// Sudoku order; the matrix is n^2 x n^2.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Sensitivity {
    /// Files holding the two keys as hex.
    key_a: PathBuf,
    key_b: PathBuf,
    image: PathBuf,
}

#[derive(Args)]
struct Scatter {
    image: PathBuf,
    #[arg(long, default_value_t = 1024)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Channel for RGB images (0 = red).
    #[arg(long, default_value_t = 0)]
    channel: usize,
}

enum Failure {
    Usage(String),
    Data(String),
    Domain(String),
}

impl From<sudoku_scramble::Error> for Failure {
    fn from(e: sudoku_scramble::Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Data(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure::Data(format!("{}: {e}", path.display()))
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or("expected WIDTHxHEIGHT")?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    Ok((parse(w)?, parse(h)?))
}

fn read_image(path: &Path) -> CliResult<Image> {
    let bytes = std::fs::read(path).map_err(|e| io_error(path, e))?;
    pnm::read_pnm(&bytes).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory so a failure
/// never leaves a partial output behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_error(path, e))?;
    tmp.write_all(bytes).map_err(|e| io_error(path, e))?;
    tmp.persist(path).map_err(|e| io_error(path, e.error))?;
    Ok(())
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn key_from(arg: &KeyArg) -> CliResult<ScramblerKey> {
    let hex = arg
        .key
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("a key is required: pass --key or set {KEY_ENV_VAR}")))?;
    Ok(hex.parse()?)
}

fn scrambler(key: ScramblerKey, size: &SudokuSize) -> CliResult<Scrambler> {
    let s = Scrambler::new(key);
    match size.sudoku_size {
        None => Ok(s),
        Some(side) if side.isqrt().pow(2) == side => Ok(s.with_sudoku_order(side.isqrt())),
        Some(side) => Err(Failure::Usage(format!("--sudoku-size {side} is not a perfect square"))),
    }
}

fn transform(args: &Transform, forward: bool) -> CliResult<()> {
    let s = scrambler(key_from(&args.key)?, &args.size)?;
    let img = read_image(&args.input)?;
    let out = if forward { s.scramble(&img)? } else { s.descramble(&img)? };
    write_atomic(&args.output, &pnm::write_pnm(&out))
}

fn channel_label(depth: BitDepth, ch: usize) -> &'static str {
    match depth {
        BitDepth::TwentyFour => ["r", "g", "b"][ch],
        _ => "gray",
    }
}

fn frames(img: &Image) -> CliResult<Vec<MetricFrame>> {
    (0..img.depth().channels()).map(|ch| Ok(MetricFrame::from_image(img, ch)?)).collect()
}

const CSV_HEADER: &str = "metric,channel,direction,value,t,v,p_value\n";

fn analyze(args: &Analyze) -> CliResult<()> {
    let mut csv = String::from(CSV_HEADER);
    if let Some(paths) = &args.gdd {
        let (a, b) = (read_image(&paths[0])?, read_image(&paths[1])?);
        if (a.width(), a.height(), a.depth()) != (b.width(), b.height(), b.depth()) {
            return Err(Failure::Data("images differ in size or depth".into()));
        }
        let hood = match args.neighborhood {
            Hood::Diagonal => Neighborhood::Diagonal,
            Hood::Cross => Neighborhood::Cross,
        };
        let (fa, fb) = (frames(&a)?, frames(&b)?);
        let mut values = Vec::new();
        for (ch, (x, y)) in fa.iter().zip(&fb).enumerate() {
            let v = gdd(x, y, hood)?;
            values.push(v);
            writeln!(csv, "gdd,{},,{v},,,", channel_label(a.depth(), ch)).unwrap();
        }
        if values.len() > 1 {
            writeln!(csv, "gdd,mean,,{},,,", values.iter().sum::<f64>() / values.len() as f64).unwrap();
        }
    } else if let Some(path) = &args.apcc {
        let img = read_image(path)?;
        let dirs: &[CorrelationDirection] = match args.direction {
            Dir::Horizontal => &[CorrelationDirection::Horizontal],
            Dir::Vertical => &[CorrelationDirection::Vertical],
            Dir::Both => &[CorrelationDirection::Horizontal, CorrelationDirection::Vertical],
        };
        let fs = frames(&img)?;
        for &dir in dirs {
            let mut rhos = Vec::new();
            for (ch, frame) in fs.iter().enumerate() {
                let test = correlation_test(frame, dir)?;
                rhos.push(test.rho);
                let label = channel_label(img.depth(), ch);
                if args.pvalue {
                    writeln!(csv, "apcc,{label},{},{},{},{},{}", dir.name(), test.rho, test.t, test.dof, test.p_value)
                } else {
                    writeln!(csv, "apcc,{label},{},{},,,", dir.name(), test.rho)
                }
                .unwrap();
            }
            if rhos.len() > 1 {
                writeln!(csv, "apcc,mean,{},{},,,", dir.name(), rhos.iter().sum::<f64>() / rhos.len() as f64).unwrap();
            }
        }
    }
    emit(None, &csv)
}

fn attack(args: &Attack) -> CliResult<()> {
    let s = scrambler(key_from(&args.key)?, &args.size_override)?;
    let depth = BitDepth::from_bits(args.depth)?;
    let (width, height) = args.size;
    let perm = extract_equivalent_permutation(|img| s.scramble(img), width, height, depth, args.plane)?;
    emit(args.output.as_deref(), &perm.to_text())
}

fn gen_sudoku(args: &GenSudoku) -> CliResult<()> {
    let m = SudokuMatrix::generate(args.seed, args.n)?;
    emit(args.output.as_deref(), &m.to_text())
}

fn validate(file: &Path) -> CliResult<()> {
    let text = std::fs::read_to_string(file).map_err(|e| io_error(file, e))?;
    let (n, rows) = parse_sudoku_text(&text).map_err(|e| Failure::Data(format!("{}: {e}", file.display())))?;
    let report = validate_sudoku(&rows, n).map_err(|e| Failure::Data(e.to_string()))?;
    match report.violation {
        None => {
            println!("valid");
            Ok(())
        }
        Some(v) => Err(Failure::Data(format!("not a Sudoku: {v}"))),
    }
}

fn read_key_file(path: &Path) -> CliResult<ScramblerKey> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    text.trim().parse().map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn sensitivity(args: &Sensitivity) -> CliResult<()> {
    let (ka, kb) = (read_key_file(&args.key_a)?, read_key_file(&args.key_b)?);
    let img = read_image(&args.image)?;
    let r = key_sensitivity(&img, &ka, &kb)?;
    let mut csv = format!(
        "metric,value\ndiffering_fraction,{}\nmean_abs_difference,{}\n",
        r.differing_fraction, r.mean_abs_difference
    );
    for (i, f) in r.plane_flip_fractions.iter().enumerate() {
        writeln!(csv, "plane_{}_flip_fraction,{f}", i + 1).unwrap();
    }
    emit(None, &csv)
}

fn scatter(args: &Scatter) -> CliResult<()> {
    let img = read_image(&args.image)?;
    let frame = MetricFrame::from_image(&img, args.channel)?;
    let mut csv = String::from("x,y,z\n");
    for (x, y, z) in adjacency_samples(&frame, args.count, args.seed)? {
        writeln!(csv, "{x},{y},{z}").unwrap();
    }
    emit(None, &csv)
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Scramble(a) => transform(a, true),
        Command::Descramble(a) => transform(a, false),
        Command::Analyze(a) => analyze(a),
        Command::Attack(a) => attack(a),
        Command::GenSudoku(a) => gen_sudoku(a),
        Command::ValidateSudoku { file } => validate(file),
        Command::Sensitivity(a) => sensitivity(a),
        Command::Scatter(a) => scatter(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Data(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
