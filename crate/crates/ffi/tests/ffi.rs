use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use corner_ffi::*;

fn builtin(name: &str) -> *mut CornerCategory {
    let name = CString::new(name).unwrap();
    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { corner_category_builtin(name.as_ptr(), &mut cat) }, CORNER_OK);
    cat
}

fn bettis(cat: *const CornerCategory, theory: i32, max_dim: usize) -> Vec<usize> {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { corner_homology(cat, theory, max_dim, &mut h) }, CORNER_OK);
    let mut n = 0;
    assert_eq!(unsafe { corner_homology_degrees(h, &mut n) }, CORNER_OK);
    let out = (0..n)
        .map(|d| {
            let mut b = 0;
            assert_eq!(unsafe { corner_homology_betti(h, d, &mut b) }, CORNER_OK);
            b
        })
        .collect();
    unsafe { corner_homology_free(h) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(corner_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn homology_through_handles() {
    let g2 = builtin("G_2");
    assert_eq!(bettis(g2, CORNER_THEORY_BRANCHING, 3), [1, 0, 1]);
    assert_eq!(bettis(g2, CORNER_THEORY_REDUCED_BRANCHING, 3), [1, 0, 1]);
    let mut count = 0;
    assert_eq!(unsafe { corner_category_count(g2, 2, &mut count) }, CORNER_OK);
    assert_eq!(count, 2);
    unsafe { corner_category_free(g2) };
}

#[test]
fn json_input_and_goubault() {
    let json = CString::new(corner::fixtures::two_branches().to_json()).unwrap();
    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { corner_category_from_json(json.as_ptr(), 0, &mut cat) }, CORNER_OK);
    assert_eq!(bettis(cat, CORNER_THEORY_GOUBAULT_MINUS, 1), [2]);
    assert_eq!(bettis(cat, CORNER_THEORY_GOUBAULT_PLUS, 1), [1]);
    assert_eq!(bettis(cat, CORNER_THEORY_BRANCHING, 2), [2, 1]);
    unsafe { corner_category_free(cat) };
}

#[test]
fn status_codes() {
    let mut cat = ptr::null_mut();
    let bad = CString::new("{ not json").unwrap();
    assert_eq!(unsafe { corner_category_from_json(bad.as_ptr(), 0, &mut cat) }, CORNER_ERR_PARSE);
    assert!(cat.is_null());
    assert!(last_error().contains("syntax"));
    assert_eq!(unsafe { corner_category_from_json(ptr::null(), 0, &mut cat) }, CORNER_ERR_NULL);
    let q = CString::new("Q_1").unwrap();
    assert_eq!(unsafe { corner_category_builtin(q.as_ptr(), &mut cat) }, CORNER_ERR_INVALID);
    let big = CString::new("I_9").unwrap();
    assert_eq!(unsafe { corner_category_builtin(big.as_ptr(), &mut cat) }, CORNER_ERR_DIMENSION_CAP);

    let a = builtin("2_1");
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { corner_homology(a, CORNER_THEORY_BRANCHING, 5, &mut h) }, CORNER_ERR_DIMENSION_CAP);
    assert_eq!(unsafe { corner_homology(a, 42, 2, &mut h) }, CORNER_ERR_RANGE);
    assert_eq!(unsafe { corner_homology(a, CORNER_THEORY_GOUBAULT_MINUS, 2, &mut h) }, CORNER_ERR_INVALID);
    assert!(last_error().contains("precubical"));
    assert_eq!(unsafe { corner_homology(a, CORNER_THEORY_BRANCHING, 2, &mut h) }, CORNER_OK);
    let mut b = 0;
    assert_eq!(unsafe { corner_homology_betti(h, 2, &mut b) }, CORNER_ERR_RANGE);
    assert_eq!(unsafe { corner_homology_betti(h, 0, ptr::null_mut()) }, CORNER_ERR_NULL);
    let mut len = 0;
    assert_eq!(unsafe { corner_homology_torsion(h, 0, ptr::null_mut(), 0, &mut len) }, CORNER_OK);
    assert_eq!(len, 0);
    unsafe {
        corner_homology_free(h);
        corner_category_free(a);
        corner_category_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/corner.h")).unwrap();
    for name in [
        "corner_last_error",
        "corner_category_from_json",
        "corner_category_builtin",
        "corner_category_free",
        "corner_homology(",
        "corner_homology_betti",
        "corner_homology_torsion",
        "corner_homology_free",
        "typedef struct CornerCategory CornerCategory",
        "#define CORNER_ERR_DIMENSION_CAP 5",
    ] {
        assert!(header.contains(name), "{name} missing from the header");
    }
}

/// Compiles the C smoke test against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libcorner_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or no static library at {}", lib.display());
        return;
    }
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("corner_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "2 1 1 0\n");
}
