use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use corank_ffi::*;

unsafe fn render(num: *const CorankNumber) -> String {
    let s = corank_number_to_string(num);
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    corank_string_free(s);
    out
}

#[test]
fn hminus_through_handles() {
    let fam = CString::new("pow2").unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(corank_hminus(fam.as_ptr(), 7, &mut h), CorankStatus::Ok);
        assert_eq!(render(h), "359057");
        assert_eq!(corank_number_is_integer(h), 1);
        corank_number_free(h);
    }
}

#[test]
fn masses_and_upper_bound() {
    let mut m = ptr::null_mut();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(corank_mass(8, &mut m), CorankStatus::Ok);
        assert_eq!(render(m), "1/24");
        assert_eq!(corank_number_is_integer(m), 0);
        assert_eq!(corank_genus_upper(32, &mut g), CorankStatus::Ok);
        assert_eq!(render(g), "34920");
        corank_number_free(m);
        corank_number_free(g);
        let mut r = ptr::null_mut();
        assert_eq!(corank_mass_report(8, &mut r), CorankStatus::Ok);
        let field = CString::new("euler_pu").unwrap();
        let mut e = ptr::null_mut();
        assert_eq!(
            corank_mass_report_field(r, field.as_ptr(), &mut e),
            CorankStatus::Ok
        );
        assert_eq!(render(e), "-1/48");
        let bad = CString::new("nope").unwrap();
        let mut x = ptr::null_mut();
        assert_eq!(
            corank_mass_report_field(r, bad.as_ptr(), &mut x),
            CorankStatus::InvalidArgument
        );
        assert!(x.is_null());
        corank_number_free(e);
        corank_mass_report_free(r);
    }
}

#[test]
fn errors_set_message() {
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(corank_mass(10, &mut m), CorankStatus::InvalidArgument);
        assert!(m.is_null());
        let msg = CStr::from_ptr(corank_last_error_message())
            .to_str()
            .unwrap();
        assert!(msg.contains("10"));
        let fam = CString::new("pow7").unwrap();
        assert_eq!(
            corank_hminus(fam.as_ptr(), 5, &mut m),
            CorankStatus::InvalidArgument
        );
        assert_eq!(
            corank_hminus(ptr::null(), 5, &mut m),
            CorankStatus::NullPointer
        );
        corank_number_free(ptr::null_mut());
        corank_string_free(ptr::null_mut());
        assert!(corank_number_to_string(ptr::null()).is_null());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/corank.h");
    let dir = std::env::temp_dir().join(format!("corank_hdr_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{ CorankNumber *n = 0; CorankStatus st = corank_mass(8, &n);\n\
             char *s = corank_number_to_string(n); corank_string_free(s); corank_number_free(n);\n\
             return st == CORANK_STATUS_OK ? 0 : 1; }}\n"
        ),
    )
    .unwrap();
    let Ok(out) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .output()
    else {
        eprintln!("no C compiler; skipping header check");
        return;
    };
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
