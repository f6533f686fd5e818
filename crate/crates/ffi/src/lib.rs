//! C ABI over the `csg` library.
//!
//! Games travel as opaque [`CsgGame`] handles holding canonical invariants.
//! Every fallible call returns a [`CsgStatus`]; on failure the message is kept
//! per thread and read back with [`csg_last_error`]. Strings handed out by
//! this library must be released with [`csg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use csg::enumeration::{self, EnumSpec};
use csg::json::{game_to_string, invariants_to_string, parse_input};
use csg::roles::{semantic_roles, structural_roles};
use csg::{apply_bijection, apply_inverse, BijectionId, Error, FormulaFamily, Invariants, Role, RoleSet};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Input = 3,
    Validation = 4,
    Domain = 5,
    Capacity = 6,
    Io = 7,
    Panic = 8,
}

/// Opaque handle to one complete game, stored as canonical invariants.
pub struct CsgGame {
    inv: Invariants,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CsgStatus {
    match e {
        Error::Input(_) | Error::Json(_) => CsgStatus::Input,
        Error::Validation(_) | Error::Invariants(_) | Error::NotComplete(..) => CsgStatus::Validation,
        Error::Domain(_) => CsgStatus::Domain,
        Error::Capacity(_) => CsgStatus::Capacity,
        Error::Io(_) => CsgStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Utf8(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, records any failure and turns it into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CsgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CsgStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            CsgStatus::NullPointer
        }
        Ok(Err(Fail::Utf8(what))) => {
            set_error(format!("invalid utf-8 in {what}"));
            CsgStatus::InvalidUtf8
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            CsgStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a valid nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8(what))
}

/// Optional string argument; null means absent.
unsafe fn read_opt_str<'a>(p: *const c_char, what: &'static str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        read_str(p, what).map(Some)
    }
}

unsafe fn game_ref<'a>(p: *const CsgGame) -> Result<&'a CsgGame, Fail> {
    p.as_ref().ok_or(Fail::Null("game"))
}

unsafe fn put<T>(out: *mut T, value: T) {
    ptr::write(out, value);
}

fn out_check<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail::Null("out"))
    } else {
        Ok(())
    }
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s).expect("library output has no nul bytes").into_raw()
}

fn into_handle(inv: Invariants) -> *mut CsgGame {
    Box::into_raw(Box::new(CsgGame { inv }))
}

/// Comma-separated role names, null or empty for none.
fn role_list(s: Option<&str>) -> Result<RoleSet, Error> {
    let mut set = RoleSet::EMPTY;
    for part in s.unwrap_or("").split(',').filter(|p| !p.trim().is_empty()) {
        set.insert(part.parse::<Role>()?);
    }
    Ok(set)
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn csg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn csg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn csg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses game, invariant or weighted JSON into a new handle.
///
/// # Safety
/// `json` is a nul-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn csg_game_parse(json: *const c_char, out: *mut *mut CsgGame) -> CsgStatus {
    guard(|| {
        out_check(out)?;
        let text = read_str(json, "json")?;
        let inv = parse_input(text)?.invariants()?;
        put(out, into_handle(inv));
        Ok(())
    })
}

/// # Safety
/// `game` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn csg_game_free(game: *mut CsgGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Number of voters, or 0 for a null handle.
///
/// # Safety
/// `game` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn csg_game_n(game: *const CsgGame) -> u32 {
    game.as_ref().map_or(0, |g| g.inv.n())
}

/// Number of equivalence classes, or 0 for a null handle.
///
/// # Safety
/// `game` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn csg_game_t(game: *const CsgGame) -> u32 {
    game.as_ref().map_or(0, |g| g.inv.t() as u32)
}

/// Number of shift-minimal winning profiles, or 0 for a null handle.
///
/// # Safety
/// `game` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn csg_game_r(game: *const CsgGame) -> u32 {
    game.as_ref().map_or(0, |g| g.inv.r() as u32)
}

/// Canonical invariant JSON.
///
/// # Safety
/// `game` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn csg_game_invariants_json(game: *const CsgGame, out: *mut *mut c_char) -> CsgStatus {
    guard(|| {
        out_check(out)?;
        let g = game_ref(game)?;
        put(out, into_c(invariants_to_string(&g.inv)));
        Ok(())
    })
}

/// Canonical minimal-winning-coalition JSON of the expanded game.
///
/// # Safety
/// `game` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn csg_game_expand_json(game: *const CsgGame, out: *mut *mut c_char) -> CsgStatus {
    guard(|| {
        out_check(out)?;
        let g = game_ref(game)?;
        put(out, into_c(game_to_string(&g.inv.expand()?)));
        Ok(())
    })
}

/// Role report as JSON. With `structural` set, roles are read off the
/// invariants instead of the coalitions.
///
/// # Safety
/// `game` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn csg_game_roles_json(
    game: *const CsgGame,
    structural: bool,
    out: *mut *mut c_char,
) -> CsgStatus {
    guard(|| {
        out_check(out)?;
        let g = game_ref(game)?;
        let report = if structural {
            structural_roles(&g.inv)
        } else {
            semantic_roles(&g.inv.expand()?)?
        };
        let text = serde_json::to_string(&report.to_json()).map_err(Error::from)?;
        put(out, into_c(text));
        Ok(())
    })
}

/// New handle holding the dual game.
///
/// # Safety
/// `game` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn csg_game_dual(game: *const CsgGame, out: *mut *mut CsgGame) -> CsgStatus {
    guard(|| {
        out_check(out)?;
        let g = game_ref(game)?;
        put(out, into_handle(g.inv.dual()?));
        Ok(())
    })
}

/// New handle holding the image under bijection `name` (`f`, `g`, `h`, `k`,
/// `h1`, `h2`), or its inverse.
///
/// # Safety
/// `game` is a live handle, `name` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn csg_game_map(
    game: *const CsgGame,
    name: *const c_char,
    inverse: bool,
    out: *mut *mut CsgGame,
) -> CsgStatus {
    guard(|| {
        out_check(out)?;
        let g = game_ref(game)?;
        let id: BijectionId = read_str(name, "bijection")?.parse()?;
        let image = if inverse {
            apply_inverse(id, &g.inv)?
        } else {
            apply_bijection(id, &g.inv)?
        };
        put(out, into_handle(image));
        Ok(())
    })
}

/// Counts games with `n` voters and `t` classes as a decimal string.
/// `rows` of 0 means any number of rows. `with` and `without` are
/// comma-separated role names or null.
///
/// # Safety
/// `with` and `without` are null or nul-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn csg_count(
    n: u32,
    t: u32,
    rows: u32,
    with: *const c_char,
    without: *const c_char,
    jobs: u32,
    out: *mut *mut c_char,
) -> CsgStatus {
    guard(|| {
        out_check(out)?;
        let require = role_list(read_opt_str(with, "with")?)?;
        let forbid = role_list(read_opt_str(without, "without")?)?;
        let mut spec = EnumSpec::new(n, t).require(require).forbid(forbid);
        spec.rows = (rows > 0).then_some(rows as usize);
        spec.count_only = true;
        let c = enumeration::count(&spec, jobs.max(1) as usize)?;
        put(out, into_c(c.to_string()));
        Ok(())
    })
}

/// Evaluates a closed-form family as a decimal string. `t` is ignored unless
/// `has_t` is set.
///
/// # Safety
/// `family` is nul-terminated and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn csg_formula(
    family: *const c_char,
    n: u64,
    t: u64,
    has_t: bool,
    out: *mut *mut c_char,
) -> CsgStatus {
    guard(|| {
        out_check(out)?;
        let f: FormulaFamily = read_str(family, "family")?.parse()?;
        let v = f.evaluate(n, has_t.then_some(t))?;
        put(out, into_c(v.to_string()));
        Ok(())
    })
}
