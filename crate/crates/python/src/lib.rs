//! Python bindings: `import sudoku_scramble`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use sudoku_scramble as ss;
use sudoku_scramble::metrics::{CorrelationDirection, MetricFrame, Neighborhood};

create_exception!(sudoku_scramble, ScrambleError, PyValueError, "Raised for any scrambling, parsing or metric error.");

fn err(e: ss::Error) -> PyErr {
    ScrambleError::new_err(e.to_string())
}

/// 192-bit scrambling key.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "sudoku_scramble")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Key(ss::ScramblerKey);

#[pymethods]
impl Key {
    /// Parses 48 hex digits.
    #[new]
    fn new(hex: &str) -> PyResult<Self> {
        hex.parse().map(Key).map_err(err)
    }

    #[staticmethod]
    fn from_bytes(raw: &[u8]) -> PyResult<Self> {
        let bytes: [u8; 24] = raw.try_into().map_err(|_| PyValueError::new_err("a key is exactly 24 bytes"))?;
        Ok(Key(ss::ScramblerKey::from_bytes(bytes)))
    }

    #[getter]
    fn hex(&self) -> String {
        self.0.to_string()
    }

    /// Subkey `j` in 1..=24 (subkey 1 is the most significant byte).
    fn subkey(&self, j: usize) -> PyResult<u8> {
        if !(1..=24).contains(&j) {
            return Err(PyValueError::new_err("subkey index must be in 1..=24"));
        }
        Ok(self.0.subkey(j))
    }

    fn __bytes__<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, self.0.bytes())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Key('{}')", self.0)
    }
}

/// Raster image with 1, 8, 16 or 24 bits per pixel; 24-bit pixels are
/// packed as `r | g << 8 | b << 16`.
#[pyclass(frozen, eq, skip_from_py_object, module = "sudoku_scramble")]
#[derive(Clone, PartialEq)]
struct Image(ss::Image);

#[pymethods]
impl Image {
    #[new]
    fn new(width: usize, height: usize, depth: u32, data: Vec<u32>) -> PyResult<Self> {
        let depth = ss::BitDepth::from_bits(depth).map_err(err)?;
        ss::Image::new(width, height, depth, data).map(Image).map_err(err)
    }

    /// Decodes a binary PBM, PGM or PPM file.
    #[staticmethod]
    fn from_pnm(raw: &[u8]) -> PyResult<Self> {
        ss::pnm::read_pnm(raw).map(Image).map_err(err)
    }

    fn to_pnm<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &ss::pnm::write_pnm(&self.0))
    }

    #[getter]
    fn width(&self) -> usize {
        self.0.width()
    }

    #[getter]
    fn height(&self) -> usize {
        self.0.height()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth().planes()
    }

    /// Row-major pixel words.
    #[getter]
    fn data(&self) -> Vec<u32> {
        self.0.data().to_vec()
    }

    fn get(&self, row: usize, col: usize) -> PyResult<u32> {
        if row >= self.0.height() || col >= self.0.width() {
            return Err(pyo3::exceptions::PyIndexError::new_err("pixel out of range"));
        }
        Ok(self.0.get(row, col))
    }

    fn __repr__(&self) -> String {
        format!("Image({}x{}, {}-bit)", self.0.width(), self.0.height(), self.0.depth().planes())
    }
}

/// Scrambler bound to a key, optionally with a forced Sudoku order.
#[pyclass(frozen, module = "sudoku_scramble")]
struct Scrambler(ss::Scrambler);

#[pymethods]
impl Scrambler {
    #[new]
    #[pyo3(signature = (key, sudoku_order=None))]
    fn new(key: &Key, sudoku_order: Option<usize>) -> Self {
        let s = ss::Scrambler::new(key.0);
        Scrambler(match sudoku_order {
            Some(n) => s.with_sudoku_order(n),
            None => s,
        })
    }

    /// `(N, n)` of the Sudoku used for an image of the given size.
    fn sudoku_size(&self, rows: usize, cols: usize) -> PyResult<(usize, usize)> {
        self.0.sudoku_size(rows, cols).map_err(err)
    }

    fn scramble(&self, py: Python<'_>, img: &Image) -> PyResult<Image> {
        py.detach(|| self.0.scramble(&img.0)).map(Image).map_err(err)
    }

    fn descramble(&self, py: Python<'_>, img: &Image) -> PyResult<Image> {
        py.detach(|| self.0.descramble(&img.0)).map(Image).map_err(err)
    }
}

#[pyfunction]
fn scramble(py: Python<'_>, img: &Image, key: &Key) -> PyResult<Image> {
    py.detach(|| ss::scramble(&img.0, &key.0)).map(Image).map_err(err)
}

#[pyfunction]
fn descramble(py: Python<'_>, img: &Image, key: &Key) -> PyResult<Image> {
    py.detach(|| ss::descramble(&img.0, &key.0)).map(Image).map_err(err)
}

/// Keyed `n^2 x n^2` Sudoku matrix as a list of rows.
#[pyfunction]
fn generate_sudoku(seed: u64, n: usize) -> PyResult<Vec<Vec<usize>>> {
    ss::SudokuMatrix::generate(seed, n).map(|m| m.rows()).map_err(err)
}

/// `None` if valid, else `(kind, index, missing_digit)` with a 0-based index.
#[pyfunction]
fn validate_sudoku(rows: Vec<Vec<usize>>, n: usize) -> PyResult<Option<(String, usize, usize)>> {
    let report = ss::sudoku::validate_sudoku(&rows, n).map_err(err)?;
    Ok(report.violation.map(|v| (v.kind.to_string(), v.index, v.missing_digit)))
}

fn frame(img: &Image, channel: usize) -> PyResult<MetricFrame> {
    MetricFrame::from_image(&img.0, channel).map_err(err)
}

fn direction(name: &str) -> PyResult<CorrelationDirection> {
    match name {
        "horizontal" => Ok(CorrelationDirection::Horizontal),
        "vertical" => Ok(CorrelationDirection::Vertical),
        _ => Err(PyValueError::new_err("direction must be 'horizontal' or 'vertical'")),
    }
}

/// Gray difference degree of `after` relative to `before`.
#[pyfunction]
#[pyo3(signature = (before, after, channel=0, neighborhood="diagonal"))]
fn gdd(before: &Image, after: &Image, channel: usize, neighborhood: &str) -> PyResult<f64> {
    let hood = match neighborhood {
        "diagonal" => Neighborhood::Diagonal,
        "cross" => Neighborhood::Cross,
        _ => return Err(PyValueError::new_err("neighborhood must be 'diagonal' or 'cross'")),
    };
    ss::metrics::gdd(&frame(before, channel)?, &frame(after, channel)?, hood).map_err(err)
}

/// Adjacent-pixel correlation test: `(rho, t, dof, p_value)`.
#[pyfunction]
#[pyo3(signature = (img, direction="horizontal", channel=0))]
fn correlation_test(img: &Image, direction: &str, channel: usize) -> PyResult<(f64, f64, usize, f64)> {
    let dir = self::direction(direction)?;
    let t = ss::metrics::correlation_test(&frame(img, channel)?, dir).map_err(err)?;
    Ok((t.rho, t.t, t.dof, t.p_value))
}

#[pyfunction]
fn t_statistic(rho: f64, samples: usize) -> PyResult<f64> {
    ss::metrics::t_statistic(rho, samples).map_err(err)
}

/// Two-sided Student-t P-value.
#[pyfunction]
fn p_value(t: f64, dof: f64) -> PyResult<f64> {
    ss::metrics::p_value(t, dof).map_err(err)
}

/// Recovers the row-major permutation the key applies to one bit-plane.
#[pyfunction]
#[pyo3(signature = (key, width, height, plane=1, depth=1))]
fn extract_permutation(
    py: Python<'_>,
    key: &Key,
    width: usize,
    height: usize,
    plane: usize,
    depth: u32,
) -> PyResult<Vec<usize>> {
    let depth = ss::BitDepth::from_bits(depth).map_err(err)?;
    let s = ss::Scrambler::new(key.0);
    py.detach(|| ss::analysis::extract_equivalent_permutation(|img| s.scramble(img), width, height, depth, plane))
        .map(|p| p.forward)
        .map_err(err)
}

#[pymodule(name = "sudoku_scramble")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ScrambleError", m.py().get_type::<ScrambleError>())?;
    m.add_class::<Key>()?;
    m.add_class::<Image>()?;
    m.add_class::<Scrambler>()?;
    m.add_function(wrap_pyfunction!(scramble, m)?)?;
    m.add_function(wrap_pyfunction!(descramble, m)?)?;
    m.add_function(wrap_pyfunction!(generate_sudoku, m)?)?;
    m.add_function(wrap_pyfunction!(validate_sudoku, m)?)?;
    m.add_function(wrap_pyfunction!(gdd, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_test, m)?)?;
    m.add_function(wrap_pyfunction!(t_statistic, m)?)?;
    m.add_function(wrap_pyfunction!(p_value, m)?)?;
    m.add_function(wrap_pyfunction!(extract_permutation, m)?)?;
    Ok(())
}
