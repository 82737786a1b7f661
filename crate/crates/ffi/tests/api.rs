use std::ffi::{c_char, CStr, CString};
use std::ptr;

use coxbrauer_ffi::*;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cb_string_free(s) };
    out
}

fn last_error() -> String {
    let p = cb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn g2_fixture_and_tilting() {
    let name = CString::new("2g2").unwrap();
    let mut tree = ptr::null_mut();
    assert_eq!(unsafe { cb_tree_fixture(name.as_ptr(), 0, 0, 0, 0, &mut tree) }, CbStatus::Ok);
    assert!(cb_last_error().is_null());
    assert_eq!(unsafe { cb_tree_num_edges(tree) }, 6);
    assert_eq!(unsafe { cb_tree_multiplicity(tree) }, 3);

    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { cb_tree_to_dot(tree, &mut dot) }, CbStatus::Ok);
    let golden = include_str!("../../core/tests/golden/2g2.dot");
    assert_eq!(take(dot), golden);

    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { cb_algebra_new(tree, 0, &mut alg) }, CbStatus::Ok);
    let mut end_dim = 0;
    assert_eq!(unsafe { cb_algebra_check_tilting(alg, &mut end_dim) }, CbStatus::Ok);
    assert_eq!(end_dim, 114);
    unsafe {
        cb_algebra_free(alg);
        cb_tree_free(tree);
    }
}

#[test]
fn json_round_trip_and_algebra() {
    let name = CString::new("line3").unwrap();
    let mut tree = ptr::null_mut();
    assert_eq!(unsafe { cb_tree_fixture(name.as_ptr(), 0, 0, 2, 2, &mut tree) }, CbStatus::Ok);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { cb_tree_to_json(tree, &mut json) }, CbStatus::Ok);
    let json = CString::new(take(json)).unwrap();
    let mut copy = ptr::null_mut();
    assert_eq!(unsafe { cb_tree_from_json(json.as_ptr(), &mut copy) }, CbStatus::Ok);

    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { cb_algebra_new(copy, 0, &mut alg) }, CbStatus::Ok);
    assert_eq!(unsafe { cb_algebra_dim(alg) }, 11);
    let arrows: usize = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut n = 0;
            assert_eq!(unsafe { cb_algebra_ext1(alg, i, j, &mut n) }, CbStatus::Ok);
            n
        })
        .sum();
    // Two arrows per inner edge of the line plus a loop at the exceptional node.
    assert_eq!(arrows, 5);

    let mut rick = ptr::null_mut();
    assert_eq!(unsafe { cb_algebra_rickard_json(alg, 2, &mut rick) }, CbStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(rick)).unwrap();
    assert_eq!(v["degrees"], serde_json::json!([2, 4]));
    unsafe {
        cb_algebra_free(alg);
        cb_tree_free(copy);
        cb_tree_free(tree);
    }
}

#[test]
fn errors_are_reported() {
    let mut tree = ptr::null_mut();
    assert_eq!(unsafe { cb_tree_star(7, 3, 3, &mut tree) }, CbStatus::InvalidInput);
    assert!(tree.is_null());
    assert!(!last_error().is_empty());

    let junk = CString::new("{not json").unwrap();
    assert_eq!(unsafe { cb_tree_from_json(junk.as_ptr(), &mut tree) }, CbStatus::Parse);

    assert_eq!(unsafe { cb_tree_fixture(ptr::null(), 0, 0, 0, 0, &mut tree) }, CbStatus::NullPointer);
    assert_eq!(unsafe { cb_tree_to_json(ptr::null(), ptr::null_mut()) }, CbStatus::NullPointer);
    assert_eq!(unsafe { cb_tree_num_edges(ptr::null()) }, 0);

    assert_eq!(unsafe { cb_tree_star(7, 3, 2, &mut tree) }, CbStatus::Ok);
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { cb_algebra_new(tree, 0, &mut alg) }, CbStatus::Ok);
    let mut n = 0;
    assert_eq!(unsafe { cb_algebra_ext1(alg, 0, 99, &mut n) }, CbStatus::InvalidInput);
    assert!(last_error().contains("out of range"));
    assert_eq!(unsafe { cb_algebra_rickard_json(alg, 99, &mut ptr::null_mut()) }, CbStatus::InvalidInput);
    unsafe {
        cb_algebra_free(alg);
        cb_tree_free(tree);
        cb_string_free(ptr::null_mut());
    }
}

#[test]
fn version_and_header() {
    let v = unsafe { CStr::from_ptr(cb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let header = include_str!("../include/coxbrauer.h");
    for f in [
        "cb_last_error",
        "cb_version",
        "cb_string_free",
        "cb_tree_fixture",
        "cb_tree_from_json",
        "cb_tree_star",
        "cb_tree_free",
        "cb_tree_num_edges",
        "cb_tree_multiplicity",
        "cb_tree_to_json",
        "cb_tree_to_dot",
        "cb_algebra_new",
        "cb_algebra_free",
        "cb_algebra_dim",
        "cb_algebra_ext1",
        "cb_algebra_check_tilting",
        "cb_algebra_rickard_json",
    ] {
        assert!(header.contains(&format!(" {f}(")) || header.contains(&format!("*{f}(")), "{f} missing from header");
    }
}
