use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use saw_lab_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    sawlab_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(sawlab_last_error()).to_str().unwrap().to_owned()
}

#[test]
fn counts_cross_the_boundary() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(sawlab_count_walks(10, 2, &mut out), SawStatus::Ok);
        assert_eq!(take(out), "44100");
        assert_eq!(sawlab_count_polygons(8, 2, &mut out), SawStatus::Ok);
        assert_eq!(take(out), "7");
        let (mut num, mut den) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(sawlab_closing_probability(5, 2, &mut num, &mut den), SawStatus::Ok);
        assert_eq!((take(num), take(den)), ("6".to_owned(), "71".to_owned()));
        assert_eq!(sawlab_hypergeometric_pmf(2, 2, 2, 1, &mut num, &mut den), SawStatus::Ok);
        assert_eq!((take(num), take(den)), ("2".to_owned(), "3".to_owned()));
    }
}

#[test]
fn guardrail_and_argument_errors() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(sawlab_count_walks(100, 2, &mut out), SawStatus::Guardrail);
        assert!(last_error().contains("infeasible"));
        assert_eq!(sawlab_count_walks(3, 1, &mut out), SawStatus::InvalidArgument);
        let (mut num, mut den) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(sawlab_hypergeometric_pmf(2, 2, 2, 3, &mut num, &mut den), SawStatus::InvalidArgument);
        assert_eq!(sawlab_count_walks(3, 2, ptr::null_mut()), SawStatus::NullPointer);
    }
}

#[test]
fn walk_handles_roundtrip_and_decompose() {
    unsafe {
        let text = CString::new("d=2;origin=0,0;steps=EE").unwrap();
        let mut w = ptr::null_mut();
        assert_eq!(sawlab_walk_parse(text.as_ptr(), &mut w), SawStatus::Ok);
        let mut len = 0usize;
        assert_eq!(sawlab_walk_len(w, &mut len), SawStatus::Ok);
        assert_eq!(len, 2);
        let mut s = ptr::null_mut();
        assert_eq!(sawlab_walk_serialize(w, &mut s), SawStatus::Ok);
        assert_eq!(take(s), "d=2;origin=0,0;steps=EE");

        let (mut first, mut second, mut origin_in_first) = (ptr::null_mut(), ptr::null_mut(), -1);
        assert_eq!(sawlab_decompose(w, &mut first, &mut second, &mut origin_in_first), SawStatus::Ok);
        assert_eq!(sawlab_walk_serialize(first, &mut s), SawStatus::Ok);
        assert_eq!(take(s), "d=2;origin=2,0;steps=WW");
        assert_eq!(sawlab_walk_len(second, &mut len), SawStatus::Ok);
        assert_eq!(len, 0);
        assert_eq!(origin_in_first, 1);
        sawlab_walk_free(first);
        sawlab_walk_free(second);
        sawlab_walk_free(w);

        let bad = CString::new("d=2;origin=0,0;steps=EW").unwrap();
        assert_eq!(sawlab_walk_parse(bad.as_ptr(), &mut w), SawStatus::Ok);
        assert_eq!(
            sawlab_decompose(w, &mut first, &mut second, &mut origin_in_first),
            SawStatus::NotSelfAvoiding
        );
        sawlab_walk_free(w);
        let junk = CString::new("hello").unwrap();
        assert_eq!(sawlab_walk_parse(junk.as_ptr(), &mut w), SawStatus::Parse);
    }
}

#[test]
fn header_is_current_and_compiles() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/saw_lab.h")).unwrap();
    for name in [
        "sawlab_count_walks",
        "sawlab_count_polygons",
        "sawlab_closing_probability",
        "sawlab_decompose",
        "sawlab_hypergeometric_pmf",
        "sawlab_string_free",
        "sawlab_last_error",
        "typedef struct SawWalk SawWalk",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
    // only when a C compiler is around
    if let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(dir.join("include/saw_lab.h"))
        .status()
    {
        assert!(status.success());
    }
}
