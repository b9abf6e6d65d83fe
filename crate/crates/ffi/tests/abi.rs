use std::ffi::{c_char, CStr, CString};
use std::ptr;

use kxcount_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    unsafe { kx_last_error(buf.as_mut_ptr(), buf.len()) };
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn counts() {
    let mut out = 0u64;
    unsafe {
        assert_eq!(kx_transitive_count(2, 4, ptr::null(), &mut out), KxStatus::Ok);
        assert_eq!(out, 26);
        assert_eq!(kx_hall_count(2, 5, &mut out), KxStatus::Ok);
        assert_eq!(out, 461);
        assert_eq!(kx_bs_count(2, 3, &mut out), KxStatus::Ok);
        assert_eq!(out, 2);
        let rel = CString::new("aba-b-b-").unwrap();
        assert_eq!(kx_oracle_count(rel.as_ptr(), 3, ptr::null(), &mut out), KxStatus::Ok);
        assert_eq!(out, 2);
        let mut buf = [0u64; 4];
        assert_eq!(kx_cuspidal_counts(2, 3, ptr::null(), buf.as_mut_ptr(), buf.len()), KxStatus::Ok);
        assert_eq!(&buf[1..3], &[1, 2]);
        assert_eq!(kx_cuspidal_counts(2, 3, ptr::null(), buf.as_mut_ptr(), 2), KxStatus::InvalidInput);
    }
}

#[test]
fn errors_and_limits() {
    unsafe {
        let lim = kx_limits_new();
        assert_eq!(kx_limits_set_group_order_cap(lim, 1), KxStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(kx_hilbert(2, 3, KxHilbertMethod::Cuspidal, lim, &mut s), KxStatus::CapExceeded);
        assert!(last_error().contains("cap"));
        kx_limits_free(lim);
        assert_eq!(kx_limits_set_max_degree(ptr::null_mut(), 3), KxStatus::NullPointer);
        let mut out = 0u64;
        assert_eq!(kx_klein_count(0, &mut out), KxStatus::InvalidInput);
        assert_eq!(kx_klein_count(3, ptr::null_mut()), KxStatus::NullPointer);
        assert_eq!(kx_hall_count(0, 3, &mut out), KxStatus::InvalidInput);
        assert_eq!(kx_klein_count(3, &mut out), KxStatus::Ok);
        assert_eq!(last_error(), "");
    }
}

#[test]
fn tuples() {
    unsafe {
        // ((0 1), (0 1)) conjugated onto itself, and a 3-cycle pair
        let images = [1usize, 0, 1, 0];
        let mut t = ptr::null_mut();
        assert_eq!(kx_tuple_new(2, 2, images.as_ptr(), &mut t), KxStatus::Ok);
        let mut norm = 0u64;
        assert_eq!(kx_tuple_norm_squared(t, ptr::null(), &mut norm), KxStatus::Ok);
        assert_eq!(norm, 2);
        let mut transitive = false;
        assert_eq!(kx_tuple_is_transitive(t, &mut transitive), KxStatus::Ok);
        assert!(transitive);
        kx_tuple_free(t);

        let images = [1usize, 2, 0, 0, 2, 1];
        assert_eq!(kx_tuple_new(3, 2, images.as_ptr(), &mut t), KxStatus::Ok);
        let mut c = ptr::null_mut();
        assert_eq!(kx_tuple_canonical(t, &mut c), KxStatus::Ok);
        let mut buf = [0usize; 6];
        assert_eq!(kx_tuple_images(c, buf.as_mut_ptr(), 6), KxStatus::Ok);
        assert_eq!(kx_tuple_images(c, buf.as_mut_ptr(), 5), KxStatus::InvalidInput);
        kx_tuple_free(c);
        kx_tuple_free(t);

        let bad = [0usize, 0];
        assert_eq!(kx_tuple_new(2, 1, bad.as_ptr(), &mut t), KxStatus::InvalidInput);
        assert_eq!(kx_tuple_new(2, 1, ptr::null(), &mut t), KxStatus::NullPointer);
    }
}

#[test]
fn graphs() {
    let json = CString::new(
        r#"{"signature":[[1,1]],"vertices":[{"id":0,"color":1},{"id":1,"color":1},{"id":2,"color":1}],
        "edges":[{"src":0,"dst":1,"out":1,"in":1},{"src":1,"dst":2,"out":1,"in":1},{"src":2,"dst":0,"out":1,"in":1}]}"#,
    )
    .unwrap();
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(kx_graph_from_json(json.as_ptr(), &mut g), KxStatus::Ok);
        let mut deck = 0usize;
        assert_eq!(kx_graph_deck_order(g, ptr::null(), &mut deck), KxStatus::Ok);
        assert_eq!(deck, 3);
        let mut base = ptr::null_mut();
        assert_eq!(kx_graph_minimize(g, &mut base), KxStatus::Ok);
        let mut same = true;
        assert_eq!(kx_graph_isomorphic(g, base, &mut same), KxStatus::Ok);
        assert!(!same);
        let mut text = ptr::null_mut();
        assert_eq!(kx_graph_to_json(base, &mut text), KxStatus::Ok);
        let round = CStr::from_ptr(text).to_owned();
        kx_string_free(text);
        let mut again = ptr::null_mut();
        assert_eq!(kx_graph_from_json(round.as_ptr(), &mut again), KxStatus::Ok);
        assert_eq!(kx_graph_isomorphic(base, again, &mut same), KxStatus::Ok);
        assert!(same);
        for h in [g, base, again] {
            kx_graph_free(h);
        }
        kx_graph_free(ptr::null_mut());
    }
}

#[test]
fn selftest_entry() {
    let mut passed = false;
    unsafe {
        assert_eq!(kx_selftest(4, 1, ptr::null(), &mut passed), KxStatus::Ok);
        assert!(passed);
        assert_eq!(kx_selftest(99, 1, ptr::null(), &mut passed), KxStatus::Ok);
        assert!(!passed);
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(kx_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
