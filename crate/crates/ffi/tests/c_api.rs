use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use roundfold_ffi::*;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { rf_string_free(s) };
    out
}

fn catalog(name: &str, params: &[&str]) -> *mut RfDescriptor {
    let name = CString::new(name).unwrap();
    let owned: Vec<CString> = params.iter().map(|p| CString::new(*p).unwrap()).collect();
    let ptrs: Vec<*const c_char> = owned.iter().map(|p| p.as_ptr()).collect();
    let mut d = ptr::null_mut();
    let st = unsafe { rf_descriptor_catalog(name.as_ptr(), ptrs.as_ptr(), ptrs.len(), &mut d) };
    assert_eq!(st, RfStatus::Ok);
    d
}

#[test]
fn pipeline_through_handles() {
    let d = catalog("connected_sum_sphere_bundles", &["6", "2", "2"]);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { rf_descriptor_serialize(d, &mut text) }, RfStatus::Ok);
    let src = CString::new(take(text)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { rf_descriptor_parse(src.as_ptr(), &mut back) }, RfStatus::Ok);
    let mut diags = 9;
    assert_eq!(unsafe { rf_descriptor_diagnostics(back, &mut diags) }, RfStatus::Ok);
    assert_eq!(diags, 0);

    let mut start = false;
    let set = [0usize];
    let st = unsafe { rf_graph_is_starting_set(back, 1, RfRing::ModTwo, set.as_ptr(), 1, &mut start) };
    assert_eq!(st, RfStatus::Ok);
    assert!(start);
    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { rf_graph_dot(back, 1, RfRing::Integers, &mut dot) }, RfStatus::Ok);
    assert!(take(dot).contains("r0 -> r1;"));

    let mut b = ptr::null_mut();
    assert_eq!(unsafe { rf_bundle_trivial(&mut b) }, RfStatus::Ok);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { rf_check(back, b, RfRule::Auto, ptr::null(), 0, &mut r) }, RfStatus::Ok);
    let mut yes = false;
    unsafe { rf_report_applicable(r, &mut yes) };
    assert!(yes);
    let mut report = ptr::null_mut();
    unsafe { rf_report_text(r, &mut report) };
    assert!(take(report).starts_with("applicable: yes\n"));

    let fiber = CString::new("torus(1)").unwrap();
    let mut lifted = ptr::null_mut();
    assert_eq!(unsafe { rf_apply_p_operation(back, fiber.as_ptr(), r, &mut lifted) }, RfStatus::Ok);
    let (mut m, mut n, mut l) = (0, 0, 0);
    unsafe { rf_descriptor_dims(lifted, &mut m, &mut n, &mut l) };
    assert_eq!((m, n, l), (8, 2, 2));

    unsafe {
        rf_descriptor_free(lifted);
        rf_report_free(r);
        rf_bundle_free(b);
        rf_descriptor_free(back);
        rf_descriptor_free(d);
    }
}

#[test]
fn status_codes() {
    let d = catalog("connected_sum_sphere_bundles", &["4", "2", "2"]);
    let src = CString::new("[bundle]\norientable = false\nfill = trivial\n").unwrap();
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { rf_bundle_parse(src.as_ptr(), &mut b) }, RfStatus::Ok);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { rf_check(d, b, RfRule::Thm3, ptr::null(), 0, &mut r) }, RfStatus::Precondition);
    assert!(r.is_null());
    let msg = unsafe { CStr::from_ptr(rf_last_error()) }.to_string_lossy().into_owned();
    assert!(msg.starts_with("precondition violated"), "{msg}");

    let name = CString::new("spun_torus_family").unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { rf_descriptor_catalog(name.as_ptr(), ptr::null(), 0, &mut e) }, RfStatus::Parameter);

    let rp2 = CString::new("explicit(2: Z, Z/2, 0)").unwrap();
    let mut x = ptr::null_mut();
    let twisted = catalog("bundle_over_sphere", &["explicit(2: Z, Z/2, 0)", "3"]);
    assert_eq!(unsafe { rf_apply_p_operation(twisted, rp2.as_ptr(), ptr::null(), &mut x) }, RfStatus::Algebra);

    let fam = CString::new("thm8").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rf_family_report(fam.as_ptr(), [4i64, 6].as_ptr(), 2, &mut s) }, RfStatus::Ok);
    assert!(take(s).contains("H_1(M_(k1,k2)) = Z ⊕ Z ⊕ Z/12"));
    assert_eq!(unsafe { rf_family_report(fam.as_ptr(), [4i64].as_ptr(), 1, &mut s) }, RfStatus::Parameter);

    unsafe {
        rf_descriptor_free(twisted);
        rf_bundle_free(b);
        rf_descriptor_free(d);
    }
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/roundfold.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for f in [
        "rf_last_error",
        "rf_string_free",
        "rf_descriptor_parse",
        "rf_descriptor_catalog",
        "rf_descriptor_free",
        "rf_descriptor_serialize",
        "rf_descriptor_diagnostics",
        "rf_descriptor_dims",
        "rf_graph_dot",
        "rf_graph_is_starting_set",
        "rf_bundle_trivial",
        "rf_bundle_parse",
        "rf_bundle_free",
        "rf_check",
        "rf_report_applicable",
        "rf_report_text",
        "rf_report_free",
        "rf_apply_p_operation",
        "rf_family_report",
    ] {
        assert!(h.contains(&format!(" {f}(")) || h.contains(&format!("*{f}(")), "{f} missing from header");
    }
    assert!(h.contains("typedef struct RfDescriptor RfDescriptor;"));
    assert!(h.contains("RF_STATUS_OK = 0"));
}

/// Compiles the C smoke program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().unwrap().join("libroundfold_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bin = out_dir.join("roundfold_smoke");
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "thm1 no\nlifted 5 2 2\nH_1(M_(k1,k2)) = Z ⊕ Z ⊕ Z/12\nS-trivial: false\nerror parse error at line 2, column 5: `m` expects an integer, got `x`\n"
    );
}
