use std::ffi::CStr;
use std::ptr;

use farey_odd_ffi::*;

fn last_error() -> String {
    let p = farey_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    farey_string_free(s);
    out
}

#[test]
fn counts() {
    let mut n = 0u64;
    unsafe {
        assert_eq!(farey_count_fractions(8, false, &mut n), FareyStatus::Ok);
        assert_eq!(n, 22);
        assert_eq!(farey_count_fractions(8, true, &mut n), FareyStatus::Ok);
        assert_eq!(n, 13);
        let delta = [7u64];
        let mut windows = 0u64;
        assert_eq!(farey_count_delta_tuples(8, delta.as_ptr(), 1, false, &mut n, &mut windows), FareyStatus::Ok);
        assert_eq!((n, windows), (1, 12));
        assert_eq!(farey_count_delta_tuples(8, delta.as_ptr(), 1, true, &mut n, ptr::null_mut()), FareyStatus::Ok);
    }
}

#[test]
fn regions() {
    unsafe {
        let ks = [2u64];
        let mut r: *mut FareyRegion = ptr::null_mut();
        assert_eq!(farey_region_tile(ks.as_ptr(), 1, &mut r), FareyStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(farey_region_area_string(r, &mut s), FareyStatus::Ok);
        assert_eq!(take(s), "1/6");
        let mut a = 0.0;
        assert_eq!(farey_region_area(r, &mut a), FareyStatus::Ok);
        assert!((a - 1.0 / 6.0).abs() < 1e-15);
        let mut inside = false;
        assert_eq!(farey_region_contains(r, 1, 1, 1, 1, &mut inside), FareyStatus::Ok);
        assert!(inside);
        let mut v = 0usize;
        assert_eq!(farey_region_vertex_count(r, &mut v), FareyStatus::Ok);
        assert_eq!(v, 4);
        let mut json = ptr::null_mut();
        assert_eq!(farey_region_json(r, &mut json), FareyStatus::Ok);
        let dump: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(dump["area"], "1/6");

        let mut n = 0u64;
        assert_eq!(farey_count_lattice(r, 100, FareyParity::Odd, FareyParity::Even, true, &mut n), FareyStatus::Ok);
        assert_eq!(n, 336);
        let mut whole = 0u64;
        assert_eq!(
            farey_count_lattice_interval(r, 100, FareyParity::Odd, FareyParity::Even, 0, 1, 1, 1, FareyEndpoints::Closed, &mut whole),
            FareyStatus::Ok
        );
        assert_eq!(whole, n);

        let mut img = ptr::null_mut();
        assert_eq!(farey_region_image(r, 2, &mut img), FareyStatus::Ok);
        let mut s = ptr::null_mut();
        farey_region_area_string(img, &mut s);
        assert_eq!(take(s), "1/6");
        assert_eq!(farey_region_image(r, 3, &mut img), FareyStatus::Precondition);
        farey_region_free(img);
        farey_region_free(r);

        let mut q = ptr::null_mut();
        assert_eq!(farey_region_quadrangle(6, 1, 1, &mut q), FareyStatus::Ok);
        farey_region_free(q);
        assert_eq!(farey_region_quadrangle(5, 1, 1, &mut q), FareyStatus::OutOfRegime);
        assert!(last_error().contains("threshold"));
        farey_region_free(ptr::null_mut());
    }
}

#[test]
fn enclosures() {
    unsafe {
        let delta = [2u64];
        let mut e = ptr::null_mut();
        assert_eq!(farey_rho_odd(delta.as_ptr(), 1, 1, 1_000_000_000, 0, &mut e), FareyStatus::Ok);
        let (mut lo, mut hi) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(farey_enclosure_strings(e, &mut lo, &mut hi), FareyStatus::Ok);
        assert_eq!((take(lo), take(hi)), ("1/6".to_string(), "1/6".to_string()));
        let (mut exact, mut conv, mut k) = (false, false, 0u64);
        assert_eq!(farey_enclosure_info(e, &mut exact, &mut conv, &mut k), FareyStatus::Ok);
        assert!(exact && conv);
        farey_enclosure_free(e);

        let ones = [1u64, 1];
        assert_eq!(farey_rho_odd(ones.as_ptr(), 2, 1, 1_000_000, 0, &mut e), FareyStatus::Ok);
        let (mut l, mut h) = (0.0, 0.0);
        farey_enclosure_bounds(e, &mut l, &mut h);
        assert!(l < h && h - l <= 1e-6 + 1e-15 && (l - 0.4333333).abs() < 1e-6);
        assert_eq!(farey_enclosure_info(e, ptr::null_mut(), &mut conv, ptr::null_mut()), FareyStatus::Ok);
        assert!(conv);
        farey_enclosure_free(e);
    }
}

#[test]
fn identity_check() {
    let delta = [2u64, 3];
    let mut pass = false;
    unsafe {
        assert_eq!(farey_verify_identity(100, delta.as_ptr(), 2, &mut pass), FareyStatus::Ok);
    }
    assert!(pass);
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut n = 0u64;
        assert_eq!(farey_count_fractions(0, true, &mut n), FareyStatus::InvalidArgument);
        assert!(last_error().contains("positive"));
        assert_eq!(farey_count_fractions(FAREY_MAX_Q + 1, true, &mut n), FareyStatus::CapExceeded);
        assert_eq!(farey_count_fractions(10, true, ptr::null_mut()), FareyStatus::NullPointer);
        assert_eq!(last_error(), "out is NULL");
        let zero = [0u64];
        assert_eq!(farey_region_tile(zero.as_ptr(), 1, &mut ptr::null_mut()), FareyStatus::InvalidArgument);
        assert_eq!(farey_region_tile(ptr::null(), 2, &mut ptr::null_mut()), FareyStatus::NullPointer);
        assert_eq!(farey_rho_odd(ptr::null(), 0, 1, 10, 0, &mut ptr::null_mut()), FareyStatus::InvalidArgument);
        assert_eq!(farey_rho_odd([1u64].as_ptr(), 1, 1, 0, 0, &mut ptr::null_mut()), FareyStatus::InvalidArgument);
        let mut b = false;
        assert_eq!(farey_region_contains(ptr::null(), 1, 1, 1, 1, &mut b), FareyStatus::NullPointer);
        farey_clear_error();
        assert!(farey_last_error().is_null());
    }
}

#[test]
fn errors_stay_on_their_thread() {
    let mut n = 0u64;
    unsafe { farey_count_fractions(0, true, &mut n) };
    std::thread::spawn(|| assert!(farey_last_error().is_null())).join().unwrap();
    assert!(!farey_last_error().is_null());
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(farey_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
