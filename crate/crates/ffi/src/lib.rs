//! C interface: opaque handles for categories and homology summaries,
//! integer status codes, and a per-thread last error message.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use corner::cli::{homology_of, Theory, MAX_DIM_CAP};
use corner::fixtures::standard_cube;
use corner::homology::{free_homology, Group, HomologySummary};
use corner::molecule::{build_free_category, build_presented, OmegaCategory, Presented, DEFAULT_BUDGET};
use corner::precub::{goubault_complex, parse_precubical, PrecubicalSet};
use corner::Error;

pub const CORNER_OK: i32 = 0;
pub const CORNER_ERR_NULL: i32 = 1;
pub const CORNER_ERR_UTF8: i32 = 2;
pub const CORNER_ERR_PARSE: i32 = 3;
pub const CORNER_ERR_INVALID: i32 = 4;
pub const CORNER_ERR_DIMENSION_CAP: i32 = 5;
pub const CORNER_ERR_BUDGET: i32 = 6;
pub const CORNER_ERR_RANGE: i32 = 7;
pub const CORNER_ERR_PANIC: i32 = 8;

pub const CORNER_THEORY_BRANCHING: i32 = 0;
pub const CORNER_THEORY_MERGING: i32 = 1;
pub const CORNER_THEORY_REDUCED_BRANCHING: i32 = 2;
pub const CORNER_THEORY_FORMAL: i32 = 3;
pub const CORNER_THEORY_GOUBAULT_MINUS: i32 = 4;
pub const CORNER_THEORY_GOUBAULT_PLUS: i32 = 5;

/// A finite ω-category, with the precubical set it was generated from
/// when there is one.
pub struct CornerCategory {
    cat: OmegaCategory,
    precubical: Option<PrecubicalSet>,
}

/// Homology groups in consecutive degrees starting at 0.
pub struct CornerHomology {
    summary: HomologySummary,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Syntax(_) | Error::DanglingFace { .. } | Error::DimensionMismatch { .. } => CORNER_ERR_PARSE,
        Error::DimensionCap { .. } => CORNER_ERR_DIMENSION_CAP,
        Error::ClosureBudgetExceeded(_) => CORNER_ERR_BUDGET,
        Error::BadIndex { .. } => CORNER_ERR_RANGE,
        _ => CORNER_ERR_INVALID,
    }
}

struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(code_of(&e), e.to_string())
    }
}

/// Runs `f`, turning errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CORNER_OK,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            CORNER_ERR_PANIC
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(CORNER_ERR_NULL, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Fail(CORNER_ERR_UTF8, e.to_string()))
}

fn non_null<T>(p: *const T) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(CORNER_ERR_NULL, "null pointer".into()))
    } else {
        Ok(())
    }
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn corner_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a precubical set in the JSON wire format and builds its free
/// ω-category. A `budget` of 0 selects the default closure budget.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn corner_category_from_json(
    json: *const c_char,
    budget: usize,
    out: *mut *mut CornerCategory,
) -> i32 {
    guard(|| {
        non_null(out)?;
        let k = parse_precubical(text(json)?)?;
        let budget = if budget == 0 { DEFAULT_BUDGET } else { budget };
        let cat = build_free_category(&k, budget)?;
        *out = Box::into_raw(Box::new(CornerCategory { cat, precubical: Some(k) }));
        Ok(())
    })
}

/// Built-in categories "2_p", "G_p" (presented) and "I_n" (free on the
/// standard n-cube).
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn corner_category_builtin(name: *const c_char, out: *mut *mut CornerCategory) -> i32 {
    guard(|| {
        non_null(out)?;
        let name = text(name)?;
        let index = |prefix: &str| name.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
        let handle = if let Some(p) = index("2_") {
            CornerCategory { cat: build_presented(Presented::Arrow, p, MAX_DIM_CAP)?, precubical: None }
        } else if let Some(p) = index("G_") {
            CornerCategory { cat: build_presented(Presented::Pair, p, MAX_DIM_CAP)?, precubical: None }
        } else if let Some(n) = index("I_") {
            if n > MAX_DIM_CAP {
                return Err(Error::DimensionCap { requested: n, cap: MAX_DIM_CAP }.into());
            }
            let k = standard_cube(n);
            CornerCategory { cat: build_free_category(&k, DEFAULT_BUDGET)?, precubical: Some(k) }
        } else {
            return Err(Fail(CORNER_ERR_INVALID, format!("unknown built-in {name:?}")));
        };
        *out = Box::into_raw(Box::new(handle));
        Ok(())
    })
}

/// Number of morphisms of dimension exactly `dim`.
///
/// # Safety
/// `cat` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn corner_category_count(cat: *const CornerCategory, dim: usize, out: *mut usize) -> i32 {
    guard(|| {
        non_null(cat)?;
        non_null(out)?;
        let c = &(*cat).cat;
        *out = if dim <= c.max_dim() { c.of_dim(dim).len() } else { 0 };
        Ok(())
    })
}

/// # Safety
/// `cat` must come from this library (or be NULL) and is not used again.
#[no_mangle]
pub unsafe extern "C" fn corner_category_free(cat: *mut CornerCategory) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

fn theory(code: i32) -> Result<Theory, Fail> {
    Ok(match code {
        CORNER_THEORY_BRANCHING => Theory::Branching,
        CORNER_THEORY_MERGING => Theory::Merging,
        CORNER_THEORY_REDUCED_BRANCHING => Theory::ReducedBranching,
        CORNER_THEORY_FORMAL => Theory::Formal,
        CORNER_THEORY_GOUBAULT_MINUS => Theory::GoubaultMinus,
        CORNER_THEORY_GOUBAULT_PLUS => Theory::GoubaultPlus,
        _ => return Err(Fail(CORNER_ERR_RANGE, format!("unknown theory {code}"))),
    })
}

/// Homology in degrees 0..max_dim-1, enumerating cubes up to `max_dim`
/// (between 1 and 4).
///
/// # Safety
/// `cat` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn corner_homology(
    cat: *const CornerCategory,
    theory_code: i32,
    max_dim: usize,
    out: *mut *mut CornerHomology,
) -> i32 {
    guard(|| {
        non_null(cat)?;
        non_null(out)?;
        let t = theory(theory_code)?;
        if max_dim > MAX_DIM_CAP {
            return Err(Error::DimensionCap { requested: max_dim, cap: MAX_DIM_CAP }.into());
        }
        if max_dim == 0 {
            return Err(Fail(CORNER_ERR_RANGE, "max_dim must be at least 1".into()));
        }
        let handle = &*cat;
        let summary = match t {
            Theory::GoubaultMinus | Theory::GoubaultPlus => {
                let k = handle.precubical.as_ref().ok_or_else(|| {
                    Fail(CORNER_ERR_INVALID, "the Goubault complexes need a precubical set".into())
                })?;
                free_homology(&goubault_complex(k, t == Theory::GoubaultPlus)?, max_dim - 1)?
            }
            _ => homology_of(&handle.cat, t, max_dim)?,
        };
        *out = Box::into_raw(Box::new(CornerHomology { summary }));
        Ok(())
    })
}

/// Number of degrees stored (the highest degree plus one).
///
/// # Safety
/// `h` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn corner_homology_degrees(h: *const CornerHomology, out: *mut usize) -> i32 {
    guard(|| {
        non_null(h)?;
        non_null(out)?;
        *out = (*h).summary.groups.len();
        Ok(())
    })
}

unsafe fn group<'a>(h: *const CornerHomology, degree: usize) -> Result<&'a Group, Fail> {
    non_null(h)?;
    let h = &*h;
    h.summary
        .groups
        .get(degree)
        .ok_or_else(|| Fail(CORNER_ERR_RANGE, format!("no group in degree {degree}")))
}

/// Betti number in `degree`.
///
/// # Safety
/// `h` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn corner_homology_betti(h: *const CornerHomology, degree: usize, out: *mut usize) -> i32 {
    guard(|| {
        non_null(out)?;
        *out = group(h, degree)?.betti;
        Ok(())
    })
}

/// Torsion coefficients in `degree`. Writes at most `cap` values into
/// `buf` (which may be NULL when `cap` is 0) and the total count into
/// `len`.
///
/// # Safety
/// `h` must come from this library, `len` must be valid and `buf` must
/// hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn corner_homology_torsion(
    h: *const CornerHomology,
    degree: usize,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> i32 {
    guard(|| {
        non_null(len)?;
        let g = group(h, degree)?;
        *len = g.torsion.len();
        if cap > 0 {
            non_null(buf)?;
        }
        for (i, t) in g.torsion.iter().take(cap).enumerate() {
            *buf.add(i) =
                u64::try_from(t).map_err(|_| Fail(CORNER_ERR_RANGE, format!("torsion coefficient {t} exceeds 64 bits")))?;
        }
        Ok(())
    })
}

/// # Safety
/// `h` must come from this library (or be NULL) and is not used again.
#[no_mangle]
pub unsafe extern "C" fn corner_homology_free(h: *mut CornerHomology) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
