//! C interface to `fedmoea`.
//!
//! Objects are exposed as opaque handles created by `fm_*_new` style
//! functions and released with the matching `fm_*_free`. Every fallible
//! function returns an [`FmStatus`]; on failure `fm_last_error` describes the
//! problem until the next call on the same thread. Strings returned through
//! `char **` out-parameters must be released with `fm_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use fedmoea::harness::{run_experiment, write_records_csv, ExperimentConfig, ExperimentResult};
use fedmoea::{Error, Family, Problem, RbfnModel};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    OutOfBounds = 4,
    Parse = 5,
    Io = 6,
    Internal = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> FmStatus {
    match err {
        Error::DimensionMismatch { .. } | Error::ShapeMismatch(_) => FmStatus::DimensionMismatch,
        Error::OutOfBounds { .. } => FmStatus::OutOfBounds,
        Error::Json(_) | Error::Csv(_) => FmStatus::Parse,
        Error::Io(_) => FmStatus::Io,
        _ => FmStatus::InvalidArgument,
    }
}

fn fail(status: FmStatus, msg: impl Into<String>) -> FmStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning library errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), FmStatus> + UnwindSafe>(f: F) -> FmStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => FmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(FmStatus::Internal, "internal panic"),
    }
}

fn lib<T>(r: fedmoea::Result<T>) -> Result<T, FmStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, FmStatus> {
    if p.is_null() {
        return Err(fail(FmStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        fail(
            FmStatus::InvalidArgument,
            format!("{name} is not valid UTF-8"),
        )
    })
}

unsafe fn slice_arg<'a>(p: *const f64, len: usize, name: &str) -> Result<&'a [f64], FmStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(FmStatus::NullPointer, format!("{name} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, FmStatus> {
    p.as_ref()
        .ok_or_else(|| fail(FmStatus::NullPointer, format!("{name} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &str) -> Result<(), FmStatus> {
    if out.is_null() {
        return Err(fail(FmStatus::NullPointer, format!("{name} is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_slice(out: *mut f64, out_len: usize, values: &[f64]) -> Result<(), FmStatus> {
    if out_len != values.len() {
        return Err(fail(
            FmStatus::DimensionMismatch,
            format!(
                "output buffer holds {out_len} values, need {}",
                values.len()
            ),
        ));
    }
    if out.is_null() {
        return Err(fail(FmStatus::NullPointer, "output buffer is null"));
    }
    std::slice::from_raw_parts_mut(out, out_len).copy_from_slice(values);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), FmStatus> {
    let c = CString::new(s).map_err(|_| fail(FmStatus::Internal, "string contains nul"))?;
    write_out(out, c.into_raw(), "out")
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Problems

/// A DTLZ benchmark instance.
pub struct FmProblem(Problem);

/// Creates a benchmark from its name (`"dtlz1"` .. `"dtlz7"`).
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fm_problem_new(
    name: *const c_char,
    objectives: usize,
    dims: usize,
    out: *mut *mut FmProblem,
) -> FmStatus {
    guard(|| {
        let family: Family = lib(str_arg(name, "name")?.parse())?;
        let problem = lib(Problem::new(family, objectives, dims))?;
        write_out(out, Box::into_raw(Box::new(FmProblem(problem))), "out")
    })
}

/// Writes the `objectives` values of `x` (length `dims`, inside `[0, 1]`) to `out`.
///
/// # Safety
/// Pointers must be valid for the given lengths.
#[no_mangle]
pub unsafe extern "C" fn fm_problem_evaluate(
    problem: *const FmProblem,
    x: *const f64,
    x_len: usize,
    out: *mut f64,
    out_len: usize,
) -> FmStatus {
    guard(|| {
        let p = handle(problem, "problem")?;
        let f = lib(p.0.evaluate(slice_arg(x, x_len, "x")?))?;
        write_slice(out, out_len, &f)
    })
}

/// # Safety
/// `problem` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fm_problem_free(problem: *mut FmProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

// ---------------------------------------------------------------------------
// Surrogate models

/// A radial-basis-function network.
pub struct FmModel(RbfnModel);

/// Parses a model from `{"centers", "spreads", "weights", "biases"}` JSON.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fm_model_from_json(
    json: *const c_char,
    out: *mut *mut FmModel,
) -> FmStatus {
    guard(|| {
        let model = lib(RbfnModel::from_json(str_arg(json, "json")?))?;
        write_out(out, Box::into_raw(Box::new(FmModel(model))), "out")
    })
}

/// Serializes a model; release the string with `fm_string_free`.
///
/// # Safety
/// `model` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fm_model_to_json(
    model: *const FmModel,
    out: *mut *mut c_char,
) -> FmStatus {
    guard(|| {
        let m = handle(model, "model")?;
        write_string(out, lib(m.0.to_json())?)
    })
}

/// Number of centers, input dimension and output dimension.
///
/// # Safety
/// `model` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fm_model_shape(
    model: *const FmModel,
    centers: *mut usize,
    inputs: *mut usize,
    outputs: *mut usize,
) -> FmStatus {
    guard(|| {
        let (q, d, m) = handle(model, "model")?.0.shape();
        write_out(centers, q, "centers")?;
        write_out(inputs, d, "inputs")?;
        write_out(outputs, m, "outputs")
    })
}

/// # Safety
/// Pointers must be valid for the given lengths.
#[no_mangle]
pub unsafe extern "C" fn fm_model_predict(
    model: *const FmModel,
    x: *const f64,
    x_len: usize,
    out: *mut f64,
    out_len: usize,
) -> FmStatus {
    guard(|| {
        let m = handle(model, "model")?;
        let y = lib(m.0.predict(slice_arg(x, x_len, "x")?))?;
        write_slice(out, out_len, &y)
    })
}

/// # Safety
/// `model` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fm_model_free(model: *mut FmModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

// ---------------------------------------------------------------------------
// Experiments

/// Experiment settings, initialized to the defaults.
pub struct FmConfig(ExperimentConfig);

/// Default settings for the named problem.
///
/// # Safety
/// `problem` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fm_config_new(
    problem: *const c_char,
    objectives: usize,
    dims: usize,
    out: *mut *mut FmConfig,
) -> FmStatus {
    guard(|| {
        let family: Family = lib(str_arg(problem, "problem")?.parse())?;
        let cfg = ExperimentConfig::new(family, objectives, dims);
        write_out(out, Box::into_raw(Box::new(FmConfig(cfg))), "out")
    })
}

/// Sets one setting by name, with the same keys as the config file format.
///
/// # Safety
/// `config` must be a live handle; `key` and `value` nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn fm_config_set(
    config: *mut FmConfig,
    key: *const c_char,
    value: *const c_char,
) -> FmStatus {
    guard(|| {
        let cfg = config
            .as_mut()
            .ok_or_else(|| fail(FmStatus::NullPointer, "config is null"))?;
        let (k, v) = (str_arg(key, "key")?, str_arg(value, "value")?);
        lib(cfg.0.set(k, v)).map_err(|_| FmStatus::Parse)
    })
}

/// # Safety
/// `config` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fm_config_free(config: *mut FmConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Outcome of `fm_run_experiment`.
pub struct FmResult(ExperimentResult);

/// Validates the settings and runs every repetition.
///
/// # Safety
/// `config` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fm_run_experiment(
    config: *const FmConfig,
    out: *mut *mut FmResult,
) -> FmStatus {
    guard(|| {
        let cfg = handle(config, "config")?;
        if out.is_null() {
            return Err(fail(FmStatus::NullPointer, "out is null"));
        }
        let result = lib(run_experiment(&cfg.0))?;
        write_out(out, Box::into_raw(Box::new(FmResult(result))), "out")
    })
}

/// Number of runs in the result; 0 for NULL.
///
/// # Safety
/// `result` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fm_result_runs(result: *const FmResult) -> usize {
    result.as_ref().map_or(0, |r| r.0.runs.len())
}

/// Mean and sample standard deviation of the final IGD over runs.
///
/// # Safety
/// `result` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fm_result_summary(
    result: *const FmResult,
    mean: *mut f64,
    std: *mut f64,
) -> FmStatus {
    guard(|| {
        let r = handle(result, "result")?;
        write_out(mean, r.0.mean_igd(), "mean")?;
        write_out(std, r.0.std_igd(), "std")
    })
}

/// Final IGD of run `run`.
///
/// # Safety
/// `result` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fm_result_final_igd(
    result: *const FmResult,
    run: usize,
    out: *mut f64,
) -> FmStatus {
    guard(|| {
        let r = handle(result, "result")?;
        let v =
            r.0.runs
                .get(run)
                .ok_or_else(|| fail(FmStatus::InvalidArgument, format!("run {run} out of range")))?
                .final_igd();
        write_out(out, v, "out")
    })
}

/// Convergence records as CSV (`run,iter,fes,igd,ms`); release with `fm_string_free`.
///
/// # Safety
/// `result` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fm_result_records_csv(
    result: *const FmResult,
    out: *mut *mut c_char,
) -> FmStatus {
    guard(|| {
        let r = handle(result, "result")?;
        let mut buf = Vec::new();
        lib(write_records_csv(&mut buf, &r.0.records()))?;
        write_string(
            out,
            String::from_utf8(buf).map_err(|_| fail(FmStatus::Internal, "non-UTF-8 CSV"))?,
        )
    })
}

/// # Safety
/// `result` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn fm_result_free(result: *mut FmResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

// ---------------------------------------------------------------------------
// Metrics

/// Inverted generational distance of `n_solutions` points against
/// `n_reference` points, both row-major with `objectives` columns.
///
/// # Safety
/// Pointers must be valid for the given sizes.
#[no_mangle]
pub unsafe extern "C" fn fm_igd(
    solutions: *const f64,
    n_solutions: usize,
    reference: *const f64,
    n_reference: usize,
    objectives: usize,
    out: *mut f64,
) -> FmStatus {
    guard(|| {
        if objectives == 0 {
            return Err(fail(FmStatus::InvalidArgument, "objectives must be >= 1"));
        }
        let rows = |p, n, name| -> Result<Vec<Vec<f64>>, FmStatus> {
            let flat = slice_arg(p, n * objectives, name)?;
            Ok(flat.chunks(objectives).map(<[f64]>::to_vec).collect())
        };
        let s = rows(solutions, n_solutions, "solutions")?;
        let r = rows(reference, n_reference, "reference")?;
        write_out(out, lib(fedmoea::igd(&s, &r))?, "out")
    })
}
