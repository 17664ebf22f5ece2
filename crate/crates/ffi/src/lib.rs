//! C ABI over `sieu-core`.
//!
//! Engines are opaque handles. Every call returns a [`SieuStatus`]; on
//! failure the message is available from [`sieu_last_error_message`] on the
//! same thread. Strings handed out through `out` parameters are owned by the
//! caller and must be released with [`sieu_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use sieu_core::eval::{evaluate, summarize, JudgmentSet, RunFile};
use sieu_core::{Config, Engine, EngineError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieuStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    EmptyQuery = 3,
    Config = 4,
    Resource = 5,
    BackendUnavailable = 6,
    Parse = 7,
    Internal = 8,
}

/// Opaque engine handle.
pub struct SieuEngine {
    engine: Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SieuStatus, String);

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let status = match e {
            EngineError::EmptyQuery => SieuStatus::EmptyQuery,
            EngineError::BackendUnavailable(_) => SieuStatus::BackendUnavailable,
            _ => SieuStatus::Resource,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SieuStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SieuStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            SieuStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SieuStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SieuStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SieuStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: &impl serde::Serialize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SieuStatus::NullArgument, "output pointer is null".into()));
    }
    let text = serde_json::to_string(value).map_err(|e| Failure(SieuStatus::Internal, e.to_string()))?;
    let c = CString::new(text).map_err(|e| Failure(SieuStatus::Internal, e.to_string()))?;
    out.write(c.into_raw());
    Ok(())
}

unsafe fn engine_ref<'a>(engine: *const SieuEngine) -> Result<&'a Engine, Failure> {
    engine
        .as_ref()
        .map(|h| &h.engine)
        .ok_or_else(|| Failure(SieuStatus::NullArgument, "engine is null".into()))
}

/// Builds an engine from a TOML config file, or from the bundled data when
/// `config_path` is null.
///
/// # Safety
/// `config_path` must be null or a NUL-terminated string. `out` must be a
/// valid pointer; on success it receives a handle to free with
/// [`sieu_engine_free`].
#[no_mangle]
pub unsafe extern "C" fn sieu_engine_new(config_path: *const c_char, out: *mut *mut SieuEngine) -> SieuStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(SieuStatus::NullArgument, "output pointer is null".into()));
        }
        let engine = if config_path.is_null() {
            Engine::bundled()?
        } else {
            let path = read_str(config_path, "config path")?;
            let (config, warnings) =
                Config::load(Path::new(path)).map_err(|e| Failure(SieuStatus::Config, e.to_string()))?;
            for w in warnings {
                log::warn!("{w}");
            }
            Engine::from_config(&config)?
        };
        write_out(out, Box::into_raw(Box::new(SieuEngine { engine })))
    })
}

/// Releases an engine. Null is ignored.
///
/// # Safety
/// `engine` must be null or a handle from [`sieu_engine_new`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn sieu_engine_free(engine: *mut SieuEngine) {
    if !engine.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(engine))));
    }
}

/// Runs the full pipeline and writes the response as JSON to `out_json`.
/// `k` is the per-query result count; 0 keeps the configured value.
///
/// # Safety
/// `engine` must be a live handle, `query` a NUL-terminated string and
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sieu_engine_search(
    engine: *const SieuEngine,
    query: *const c_char,
    k: usize,
    out_json: *mut *mut c_char,
) -> SieuStatus {
    guard(|| {
        let engine = engine_ref(engine)?;
        let query = read_str(query, "query")?;
        let response = engine.search(query, (k > 0).then_some(k))?;
        write_json(out_json, &response)
    })
}

/// Runs analysis through refinement and writes the trace as JSON.
///
/// # Safety
/// Same contract as [`sieu_engine_search`].
#[no_mangle]
pub unsafe extern "C" fn sieu_engine_expand(
    engine: *const SieuEngine,
    query: *const c_char,
    out_json: *mut *mut c_char,
) -> SieuStatus {
    guard(|| {
        let engine = engine_ref(engine)?;
        let query = read_str(query, "query")?;
        write_json(out_json, &engine.expand(query)?)
    })
}

/// Scores two run files (`qid\trank\turl` lines) against pooled judgments
/// (`qid\turl` lines) and writes `{rows, averages}` as JSON.
///
/// # Safety
/// All string arguments must be NUL-terminated; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sieu_evaluate(
    name_a: *const c_char,
    run_a: *const c_char,
    name_b: *const c_char,
    run_b: *const c_char,
    judgments: *const c_char,
    out_json: *mut *mut c_char,
) -> SieuStatus {
    guard(|| {
        let parse = |e: &dyn std::fmt::Display| Failure(SieuStatus::Parse, e.to_string());
        let a = RunFile::parse(read_str(name_a, "name_a")?, read_str(run_a, "run_a")?).map_err(|e| parse(&e))?;
        let b = RunFile::parse(read_str(name_b, "name_b")?, read_str(run_b, "run_b")?).map_err(|e| parse(&e))?;
        let j = JudgmentSet::parse(read_str(judgments, "judgments")?).map_err(|e| parse(&e))?;
        let rows = evaluate(&a, &b, &j).map_err(|e| parse(&e))?;
        let report = summarize(rows).map_err(|e| parse(&e))?;
        write_json(out_json, &report)
    })
}

/// Releases a string returned through an `out_json` parameter. Null is
/// ignored.
///
/// # Safety
/// `s` must be null or a string produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sieu_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sieu_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sieu_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
