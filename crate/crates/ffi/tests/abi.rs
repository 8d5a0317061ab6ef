use std::ffi::{CStr, CString};
use std::ptr;

use kneser_det_ffi::*;

fn last_error() -> String {
    let p = kneser_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn family(n: u32, k: u32, flat: &[u32]) -> *mut KneserFamily {
    let mut f = ptr::null_mut();
    let status = unsafe { kneser_family_new(n, k, flat.as_ptr(), flat.len() / k as usize, &mut f) };
    assert_eq!(status, KneserStatus::Ok);
    f
}

fn to_json(f: *const KneserFamily) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { kneser_family_to_json(f, &mut s) }, KneserStatus::Ok);
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { kneser_string_free(s) };
    out
}

#[test]
fn family_round_trip() {
    let f = family(7, 3, &[3, 2, 1, 1, 4, 5, 2, 4, 6]);
    unsafe {
        assert_eq!(kneser_family_len(f), 3);
        assert_eq!((kneser_family_n(f), kneser_family_k(f)), (7, 3));
        let mut buf = [0u32; 3];
        assert_eq!(kneser_family_copy_set(f, 0, buf.as_mut_ptr(), 3), KneserStatus::Ok);
        assert_eq!(buf, [1, 2, 3]);
        assert_eq!(kneser_family_copy_set(f, 3, buf.as_mut_ptr(), 3), KneserStatus::InvalidArgument);
        assert_eq!(kneser_family_copy_set(f, 0, buf.as_mut_ptr(), 2), KneserStatus::InvalidArgument);
        let mut det = false;
        assert_eq!(kneser_family_is_determining(f, &mut det), KneserStatus::Ok);
        assert!(det);
    }
    let json = to_json(f);
    assert_eq!(json, r#"{"n":7,"k":3,"sets":[[1,2,3],[1,4,5],[2,4,6]]}"#);
    let c = CString::new(json.clone()).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { kneser_family_from_json(c.as_ptr(), &mut g) }, KneserStatus::Ok);
    assert_eq!(to_json(g), json);
    unsafe {
        kneser_family_free(f);
        kneser_family_free(g);
        kneser_family_free(ptr::null_mut());
    }
}

#[test]
fn unseparated_pair_and_auxiliary() {
    let f = family(5, 2, &[1, 2, 3, 4]);
    let (mut found, mut a, mut b) = (false, 0, 0);
    unsafe {
        assert_eq!(kneser_family_first_unseparated_pair(f, &mut found, &mut a, &mut b), KneserStatus::Ok);
        kneser_family_free(f);
    }
    assert!(found);
    assert_eq!((a, b), (1, 2));

    let aux = family(4, 2, &[1, 2, 1, 3, 2, 4]);
    let mut ok = false;
    unsafe {
        assert_eq!(kneser_family_is_auxiliary(aux, &mut ok), KneserStatus::Ok);
        kneser_family_free(aux);
    }
    assert!(ok);
}

#[test]
fn invalid_input_sets_message() {
    let mut f = ptr::null_mut();
    let flat = [1u32, 9];
    assert_eq!(unsafe { kneser_family_new(5, 2, flat.as_ptr(), 1, &mut f) }, KneserStatus::InvalidArgument);
    assert!(last_error().contains("outside"));
    assert_eq!(unsafe { kneser_family_new(6, 2, ptr::null(), 1, &mut f) }, KneserStatus::NullPointer);
    assert_eq!(unsafe { kneser_family_new(6, 3, flat.as_ptr(), 0, ptr::null_mut()) }, KneserStatus::NullPointer);
    let bad = CString::new("{not json").unwrap();
    assert_eq!(unsafe { kneser_family_from_json(bad.as_ptr(), &mut f) }, KneserStatus::InvalidArgument);
    assert!(last_error().starts_with("parse error"));
    let mut v = 0;
    assert_eq!(unsafe { kneser_det(6, 3, ptr::null(), &mut v, ptr::null_mut()) }, KneserStatus::InvalidArgument);
    assert_eq!(unsafe { kneser_family_len(ptr::null()) }, 0);
}

#[test]
fn det_and_bounds() {
    let mut value = 0;
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { kneser_det(6, 2, ptr::null(), &mut value, &mut w) }, KneserStatus::Ok);
    assert_eq!(value, 4);
    assert!(!w.is_null());
    assert_eq!(unsafe { kneser_family_len(w) }, 4);
    unsafe { kneser_family_free(w) };

    let tight = KneserBudget { max_nodes: 2, max_seconds: 0.0, max_r: 0 };
    assert_eq!(unsafe { kneser_det(20, 7, &tight, &mut value, &mut w) }, KneserStatus::BudgetExceeded);
    assert!(w.is_null());
    let nan = KneserBudget { max_nodes: 0, max_seconds: f64::NAN, max_r: 0 };
    assert_eq!(unsafe { kneser_det(20, 7, &nan, &mut value, &mut w) }, KneserStatus::InvalidArgument);

    let mut b = KneserBounds::default();
    assert_eq!(unsafe { kneser_bounds(13, 3, &mut b) }, KneserStatus::Ok);
    assert_eq!((b.lower, b.upper, b.exact, b.has_exact), (6, 6, 6, true));
}

#[test]
fn constructions_and_census() {
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(kneser_construct_triangular(4, &mut f), KneserStatus::Ok);
        assert_eq!((kneser_family_n(f), kneser_family_len(f)), (11, 4));
        let mut g = ptr::null_mut();
        assert_eq!(kneser_extend_n(f, &mut g), KneserStatus::Ok);
        assert_eq!(kneser_family_n(g), 12);
        let mut h = ptr::null_mut();
        assert_eq!(kneser_reduce_n(g, &mut h), KneserStatus::Ok);
        assert_eq!(kneser_family_n(h), 11);
        let mut l = ptr::null_mut();
        assert_eq!(kneser_lift_nk(h, &mut l), KneserStatus::Ok);
        assert_eq!((kneser_family_n(l), kneser_family_k(l)), (12, 5));
        let mut det = false;
        kneser_family_is_determining(l, &mut det);
        assert!(det);
        for p in [f, g, h, l] {
            kneser_family_free(p);
        }
        assert_eq!(kneser_extend_n(ptr::null(), &mut g), KneserStatus::NullPointer);

        assert_eq!(kneser_construct_aux(5, &mut f), KneserStatus::Ok);
        let mut aux = false;
        kneser_family_is_auxiliary(f, &mut aux);
        assert!(aux);
        kneser_family_free(f);
        assert_eq!(kneser_construct_det_odd(9, &mut f), KneserStatus::Ok);
        assert_eq!(kneser_family_len(f), 5);
        kneser_family_free(f);
        assert_eq!(kneser_construct_aux(1, &mut f), KneserStatus::InvalidArgument);

        let mut c = KneserCensus::default();
        assert_eq!(kneser_census(4, ptr::null(), &mut c), KneserStatus::Ok);
        assert_eq!((c.f, c.cumulative, c.unresolved), (12, 16, 0));
    }
}
