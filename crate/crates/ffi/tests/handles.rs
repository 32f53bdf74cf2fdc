use std::ffi::{c_char, CStr};
use std::ptr;

use valinf_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let mut n = 0;
    unsafe {
        assert_eq!(valinf_last_error(buf.as_mut_ptr(), buf.len(), &mut n), ValinfStatus::Ok);
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn new_core(entries: &[i64]) -> (ValinfStatus, *mut ValinfCore) {
    let mut core = ptr::null_mut();
    let status = unsafe { valinf_core_new(entries.as_ptr(), entries.len(), &mut core) };
    (status, core)
}

#[test]
fn core_queries() {
    let (status, core) = new_core(&[18, 12, 33, 4]);
    assert_eq!(status, ValinfStatus::Ok);
    unsafe {
        let mut len = 0;
        assert_eq!(valinf_core_len(core, &mut len), ValinfStatus::Ok);
        assert_eq!(len, 4);

        let mut beta = [0i64; 3];
        let mut n = 0;
        assert_eq!(valinf_core_beta(core, beta.as_mut_ptr(), 3, &mut n), ValinfStatus::Ok);
        assert_eq!(beta, [6, 21, 104]);

        let mut small = [0i64; 1];
        assert_eq!(valinf_core_em_pairs(core, small.as_mut_ptr(), 1, &mut n), ValinfStatus::BufferTooSmall);
        assert_eq!(n, 4);

        let mut member = true;
        assert_eq!(valinf_core_contains(core, 47, &mut member), ValinfStatus::Ok);
        assert!(!member);
        assert_eq!(valinf_core_contains(core, 48, &mut member), ValinfStatus::Ok);
        assert!(member);

        let mut r = 0;
        assert_eq!(valinf_noether_residual(core, 12, &mut r), ValinfStatus::Ok);
        assert_eq!(r, 12);
        assert_eq!(valinf_noether_residual(core, 13, &mut r), ValinfStatus::InvalidSequence);
        assert!(last_error().contains("exceeds the bound"));
        valinf_core_free(core);
    }
}

#[test]
fn invalid_inputs_and_null_pointers() {
    let (status, core) = new_core(&[4, 6]);
    assert_eq!(status, ValinfStatus::InvalidSequence);
    assert!(core.is_null());
    assert!(last_error().contains("condition (3): δ0 > δ1 fails"));

    let (status, _) = new_core(&[5]);
    assert_eq!(status, ValinfStatus::InvalidArgument);
    unsafe {
        assert_eq!(valinf_core_new(ptr::null(), 3, &mut ptr::null_mut()), ValinfStatus::NullPointer);
        let mut len = 0;
        assert_eq!(valinf_core_len(ptr::null(), &mut len), ValinfStatus::NullPointer);
        valinf_core_free(ptr::null_mut());
        valinf_sequence_free(ptr::null_mut());
        let name = CStr::from_ptr(valinf_status_name(ValinfStatus::BufferTooSmall));
        assert_eq!(name.to_str().unwrap(), "buffer too small");
    }
}

#[test]
fn sequences_from_json() {
    let cases = [
        (c"{\"type\":\"A\",\"core\":[18,12,33,4],\"last\":-5}", b'A', "{18,12,33,4,-5}"),
        (c"{\"type\":\"C\",\"core\":[5,3]}", b'C', "{(2,1),(1,1)}"),
        (
            c"{\"type\":\"E\",\"rule\":{\"kind\":\"geometric\",\"head\":[\"5/3\",\"1\"],\"ratio\":\"3/2\"}}",
            b'E',
            "{5/3,1,3/2,9/4,27/8,…}",
        ),
    ];
    for (json, tag, text) in cases {
        let mut seq = ptr::null_mut();
        unsafe {
            assert_eq!(valinf_sequence_from_json(json.as_ptr(), &mut seq), ValinfStatus::Ok);
            let mut t: c_char = 0;
            assert_eq!(valinf_sequence_type(seq, &mut t), ValinfStatus::Ok);
            assert_eq!(t as u8, tag);
            let mut n = 0;
            assert_eq!(valinf_sequence_describe(seq, ptr::null_mut(), 0, &mut n), ValinfStatus::BufferTooSmall);
            let mut buf = vec![0 as c_char; n + 1];
            assert_eq!(valinf_sequence_describe(seq, buf.as_mut_ptr(), buf.len(), &mut n), ValinfStatus::Ok);
            assert_eq!(CStr::from_ptr(buf.as_ptr()).to_str().unwrap(), text);
            valinf_sequence_free(seq);
        }
    }
    let mut seq = ptr::null_mut();
    unsafe {
        assert_eq!(valinf_sequence_from_json(c"{oops".as_ptr(), &mut seq), ValinfStatus::InvalidArgument);
        assert_eq!(
            valinf_sequence_from_json(c"{\"type\":\"A\",\"core\":[4,6],\"last\":0}".as_ptr(), &mut seq),
            ValinfStatus::InvalidSequence
        );
        assert!(seq.is_null());
    }
}
