//! C ABI over `treegmf`.
//!
//! Trees and polynomials cross the boundary as opaque handles released with
//! their `*_free` function. Strings returned through out-pointers are owned
//! by the caller and released with [`tg_string_free`]. Every function
//! returns a [`TgStatus`]; on failure [`tg_last_error_message`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use treegmf::rational::to_slash;
use treegmf::{enumerate_free_trees, gmf_poly_matching, Basis, Error, Gamma, LabeledTree, Partition, Rational, SymFunctions, XQPoly};

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    DegreeMismatch = 4,
    OutOfRange = 5,
    TooLarge = 6,
    Internal = 7,
}

/// A labeled tree.
pub struct TgTree(LabeledTree);

/// A polynomial `Σ_r (-1)^r c_r(q) x^{n-r}`.
pub struct TgPoly(XQPoly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(TgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidPartition(_) | Error::InvalidTree(_) | Error::ShiftPrecondition(_) | Error::Config(_) => {
                TgStatus::InvalidArgument
            }
            Error::Parse(_) | Error::Json(_) | Error::Csv(_) => TgStatus::Parse,
            Error::DegreeMismatch { .. } => TgStatus::DegreeMismatch,
            Error::OutOfRange { .. } => TgStatus::OutOfRange,
            Error::TooLarge { .. } => TgStatus::TooLarge,
            Error::OracleMismatch(_) | Error::Io(_) => TgStatus::Internal,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(TgStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TgStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TgStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(TgStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(TgStatus::Internal, "string contains nul".into()))
}

unsafe fn tree_ref<'a>(t: *const TgTree) -> Result<&'a LabeledTree, Fail> {
    t.as_ref().map(|t| &t.0).ok_or_else(|| null("tree"))
}

unsafe fn poly_ref<'a>(p: *const TgPoly) -> Result<&'a XQPoly, Fail> {
    p.as_ref().map(|p| &p.0).ok_or_else(|| null("poly"))
}

fn parse_basis(s: &str) -> Result<Basis, Fail> {
    Ok(s.parse::<Basis>()?)
}

/// Message for the last failing call on this thread; empty after success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn tg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the edge-list text format or `{"n": .., "edges": ..}`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_parse(text: *const c_char, out: *mut *mut TgTree) -> TgStatus {
    guard(|| {
        let t = LabeledTree::parse(str_arg(text, "text")?)?;
        put(out, Box::into_raw(Box::new(TgTree(t))))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_path(n: usize, out: *mut *mut TgTree) -> TgStatus {
    guard(|| {
        if n == 0 {
            return Err(Fail(TgStatus::InvalidArgument, "n must be positive".into()));
        }
        put(out, Box::into_raw(Box::new(TgTree(LabeledTree::path(n)))))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_star(n: usize, out: *mut *mut TgTree) -> TgStatus {
    guard(|| {
        if n == 0 {
            return Err(Fail(TgStatus::InvalidArgument, "n must be positive".into()));
        }
        put(out, Box::into_raw(Box::new(TgTree(LabeledTree::star(n)))))
    })
}

/// # Safety
/// `tree` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_free(tree: *mut TgTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_vertex_count(tree: *const TgTree, out: *mut usize) -> TgStatus {
    guard(|| put(out, tree_ref(tree)?.n()))
}

/// Isomorphism-invariant code of the tree.
///
/// # Safety
/// `tree` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_tree_canonical_code(tree: *const TgTree, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        let code = tree_ref(tree)?.canonical().code().to_string();
        put(out, c_string(code)?)
    })
}

/// Number of free trees on `n` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_free_tree_count(n: usize, out: *mut usize) -> TgStatus {
    guard(|| put(out, enumerate_free_trees(n).len()))
}

/// `α_i` of a basis element as `"num/den"`. `basis` is one of `m e h p s f`;
/// `lambda` uses the `2^2,1^3` or `2,2,1,1,1` notation.
///
/// # Safety
/// `basis` and `lambda` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_alpha(
    basis: *const c_char,
    lambda: *const c_char,
    i: usize,
    out: *mut *mut c_char,
) -> TgStatus {
    guard(|| {
        let basis = parse_basis(str_arg(basis, "basis")?)?;
        let lambda: Partition = str_arg(lambda, "lambda")?.parse()?;
        let gamma = SymFunctions::new(lambda.n()).power_expansion(basis, &lambda)?;
        let a = treegmf::symfunc::alpha(&gamma, i)?;
        put(out, c_string(to_slash(&a))?)
    })
}

/// `d_γ(xI − L_q(T))` for `γ` the basis element at `lambda`.
///
/// # Safety
/// `tree` must be a live handle, `basis` and `lambda` nul-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tg_gmf(
    tree: *const TgTree,
    basis: *const c_char,
    lambda: *const c_char,
    out: *mut *mut TgPoly,
) -> TgStatus {
    guard(|| {
        let t = tree_ref(tree)?;
        let basis = parse_basis(str_arg(basis, "basis")?)?;
        let lambda: Partition = str_arg(lambda, "lambda")?.parse()?;
        let gamma = Gamma::basis(&SymFunctions::new(lambda.n()), basis, &lambda)?;
        let z = gmf_poly_matching(t, &gamma)?;
        put(out, Box::into_raw(Box::new(TgPoly(z.poly))))
    })
}

/// # Safety
/// `poly` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_poly_free(poly: *mut TgPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Matrix size `n`; coefficients are indexed `0..=n`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_poly_degree(poly: *const TgPoly, out: *mut usize) -> TgStatus {
    guard(|| put(out, poly_ref(poly)?.n()))
}

/// Human-readable rendering such as `(1)x^2 - (2)x + (1 + q^2)`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_poly_to_string(poly: *const TgPoly, out: *mut *mut c_char) -> TgStatus {
    guard(|| put(out, c_string(poly_ref(poly)?.to_string())?))
}

/// `c_r(q)` as the `c0;c1;..` cell format, lowest power of `q` first.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_poly_coeff(poly: *const TgPoly, r: usize, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        let p = poly_ref(poly)?;
        if r > p.n() {
            return Err(Error::OutOfRange { index: r, max: p.n() }.into());
        }
        put(out, c_string(p.c(r).to_csv_cell())?)
    })
}

/// `c_r(q_num / q_den)` as `"num/den"`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_poly_coeff_at(
    poly: *const TgPoly,
    r: usize,
    q_num: i64,
    q_den: i64,
    out: *mut *mut c_char,
) -> TgStatus {
    guard(|| {
        let p = poly_ref(poly)?;
        if r > p.n() {
            return Err(Error::OutOfRange { index: r, max: p.n() }.into());
        }
        if q_den == 0 {
            return Err(Fail(TgStatus::InvalidArgument, "zero denominator".into()));
        }
        let q = Rational::new(q_num.into(), q_den.into());
        put(out, c_string(to_slash(&p.c(r).eval(&q)))?)
    })
}
