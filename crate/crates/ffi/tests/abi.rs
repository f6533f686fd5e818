use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use csg_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let v = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { csg_string_free(s) };
    v
}

fn last_error() -> String {
    let p = csg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(json: &str) -> *mut CsgGame {
    let c = CString::new(json).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { csg_game_parse(c.as_ptr(), &mut g) }, CsgStatus::Ok);
    g
}

#[test]
fn parse_and_serialize_round_trip() {
    let g = parse(r#"{"n_bar":[2,3],"M":[[2,0],[1,2]]}"#);
    unsafe {
        assert_eq!((csg_game_n(g), csg_game_t(g), csg_game_r(g)), (5, 2, 2));
        let mut s = ptr::null_mut();
        assert_eq!(csg_game_invariants_json(g, &mut s), CsgStatus::Ok);
        let inv = take(s);
        assert_eq!(inv, r#"{"M":[[2,0],[1,2]],"n_bar":[2,3]}"#);

        assert_eq!(csg_game_expand_json(g, &mut s), CsgStatus::Ok);
        let h = parse(&take(s));
        assert_eq!(csg_game_invariants_json(h, &mut s), CsgStatus::Ok);
        assert_eq!(take(s), inv);
        csg_game_free(h);
        csg_game_free(g);
    }
}

#[test]
fn dual_is_an_involution() {
    let g = parse(r#"{"min_winning":[[1,2],[1,3],[2,3]],"n":3}"#);
    unsafe {
        let mut d = ptr::null_mut();
        let mut dd = ptr::null_mut();
        assert_eq!(csg_game_dual(g, &mut d), CsgStatus::Ok);
        assert_eq!(csg_game_dual(d, &mut dd), CsgStatus::Ok);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        csg_game_invariants_json(g, &mut a);
        csg_game_invariants_json(dd, &mut b);
        assert_eq!(take(a), take(b));
        for h in [g, d, dd] {
            csg_game_free(h);
        }
    }
}

#[test]
fn bijection_and_inverse() {
    // One vetoer class of size 1 next to four others.
    let g = parse(r#"{"n_bar":[1,4],"M":[[1,2]]}"#);
    let name = CString::new("f").unwrap();
    unsafe {
        let mut img = ptr::null_mut();
        assert_eq!(csg_game_map(g, name.as_ptr(), false, &mut img), CsgStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(csg_game_map(img, name.as_ptr(), true, &mut back), CsgStatus::Ok);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        csg_game_invariants_json(g, &mut a);
        csg_game_invariants_json(back, &mut b);
        assert_eq!(take(a), take(b));
        for h in [g, img, back] {
            csg_game_free(h);
        }
    }
}

#[test]
fn roles_report() {
    let g = parse(r#"{"min_winning":[[1]],"n":3}"#);
    unsafe {
        for structural in [false, true] {
            let mut s = ptr::null_mut();
            assert_eq!(csg_game_roles_json(g, structural, &mut s), CsgStatus::Ok);
            assert!(take(s).contains("dictator"));
        }
        csg_game_free(g);
    }
}

#[test]
fn counts_and_formulas() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(csg_count(7, 3, 0, ptr::null(), ptr::null(), 2, &mut s), CsgStatus::Ok);
        assert_eq!(take(s), "1114");
        let with = CString::new("vetoer").unwrap();
        assert_eq!(csg_count(6, 3, 0, with.as_ptr(), ptr::null(), 1, &mut s), CsgStatus::Ok);
        assert_eq!(take(s), "37");

        let fam = CString::new("cgvn_t4").unwrap();
        assert_eq!(csg_formula(fam.as_ptr(), 5, 0, false, &mut s), CsgStatus::Ok);
        assert_eq!(take(s), "1");
        let fib = CString::new("fib").unwrap();
        assert_eq!(csg_formula(fib.as_ptr(), 100, 0, false, &mut s), CsgStatus::Ok);
        assert_eq!(take(s), "354224848179261915075");
    }
}

#[test]
fn error_codes_and_messages() {
    let mut g = ptr::null_mut();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(csg_game_parse(ptr::null(), &mut g), CsgStatus::NullPointer);
        assert!(last_error().contains("null"));

        let bad = CString::new(r#"{"n_bar":[2],"M":[[0]]}"#).unwrap();
        assert_eq!(csg_game_parse(bad.as_ptr(), &mut g), CsgStatus::Validation);
        assert!(g.is_null());

        let junk = CString::new("not json").unwrap();
        assert_eq!(csg_game_parse(junk.as_ptr(), &mut g), CsgStatus::Input);

        let fam = CString::new("cgv_t3").unwrap();
        assert_eq!(csg_formula(fam.as_ptr(), 2, 0, false, &mut s), CsgStatus::Domain);
        assert!(last_error().contains("n >= 4"));

        assert_eq!(csg_count(64, 31, 0, ptr::null(), ptr::null(), 1, &mut s), CsgStatus::Capacity);

        let role = CString::new("king").unwrap();
        assert_eq!(csg_count(3, 2, 0, role.as_ptr(), ptr::null(), 1, &mut s), CsgStatus::Input);

        // A successful call clears the previous message.
        assert_eq!(csg_formula(fam.as_ptr(), 4, 0, false, &mut s), CsgStatus::Ok);
        take(s);
        assert!(csg_last_error().is_null());

        assert_eq!(csg_game_n(ptr::null()), 0);
        csg_game_free(ptr::null_mut());
        csg_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(csg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/csg.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["csg_game_parse", "csg_game_free", "csg_count", "csg_last_error", "CSG_STATUS_CAPACITY"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .output()
    else {
        eprintln!("cc not found; syntax check skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
