use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use daerealize_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(dr_last_error()) }.to_string_lossy().into_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { dr_string_free(s) };
    out
}

#[test]
fn verify_io_and_realize_through_the_c_abi() {
    let doc = CString::new(r#"{"states": ["x1"], "rates": ["x1*u^2"], "output": "x1 + u"}"#).unwrap();
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { dr_system_from_json(doc.as_ptr(), &mut sys) }, DrStatus::Ok);

    let mut io = ptr::null_mut();
    assert_eq!(unsafe { dr_io_equation(sys, &mut io) }, DrStatus::Ok);
    let mut holds = false;
    assert_eq!(unsafe { dr_verify(sys, io, &mut holds) }, DrStatus::Ok);
    assert!(holds);

    let (mut outcome, mut found) = (DrOutcome::No, ptr::null_mut());
    assert_eq!(unsafe { dr_realize(io, DrMode::FirstOrder, &mut outcome, &mut found) }, DrStatus::Ok);
    assert_eq!(outcome, DrOutcome::Realized);
    assert!(!found.is_null());
    let mut holds = false;
    assert_eq!(unsafe { dr_verify(found, io, &mut holds) }, DrStatus::Ok);
    assert!(holds);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { dr_system_to_json(found, &mut json) }, DrStatus::Ok);
    assert!(take(json).contains("\"states\""));
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { dr_equation_to_string(io, &mut text) }, DrStatus::Ok);
    assert!(take(text).contains("y'"));

    unsafe {
        dr_system_free(found);
        dr_equation_free(io);
        dr_system_free(sys);
    }
}

#[test]
fn parameters_come_from_the_system_document() {
    let doc = CString::new(r#"{"states": ["x1"], "params": ["a"], "rates": ["a*x1"], "output": "x1"}"#).unwrap();
    let eq = CString::new("y' - a*y").unwrap();
    let mut sys = ptr::null_mut();
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(dr_system_from_json(doc.as_ptr(), &mut sys), DrStatus::Ok);
        assert_eq!(dr_equation_parse(eq.as_ptr(), ptr::null(), &mut p), DrStatus::Parse);
        assert!(last_error().contains('a'));
        assert_eq!(dr_equation_parse(eq.as_ptr(), sys, &mut p), DrStatus::Ok);
        let mut holds = false;
        assert_eq!(dr_verify(sys, p, &mut holds), DrStatus::Ok);
        assert!(holds);
        dr_equation_free(p);
        dr_system_free(sys);
    }
}

#[test]
fn errors_are_reported_by_code_and_message() {
    let mut sys = ptr::null_mut();
    let bad = CString::new(r#"{"states": ["x1"], "rates": [], "output": "x1"}"#).unwrap();
    unsafe {
        assert_eq!(dr_system_from_json(ptr::null(), &mut sys), DrStatus::NullPointer);
        assert_eq!(dr_system_from_json(bad.as_ptr(), ptr::null_mut()), DrStatus::NullPointer);
        assert_eq!(dr_system_from_json(bad.as_ptr(), &mut sys), DrStatus::Parse);
        assert!(last_error().contains("rates"));
        assert!(sys.is_null());

        let invalid = [0xffu8, 0];
        let mut eq = ptr::null_mut();
        assert_eq!(dr_equation_parse(invalid.as_ptr().cast(), ptr::null(), &mut eq), DrStatus::InvalidUtf8);

        let text = CString::new("u*y'' - y^2*u^2 - y'*u'").unwrap();
        assert_eq!(dr_equation_parse(text.as_ptr(), ptr::null(), &mut eq), DrStatus::Ok);
        assert!(last_error().is_empty());
        let (mut outcome, mut found) = (DrOutcome::No, ptr::null_mut());
        assert_eq!(dr_realize(eq, DrMode::FirstOrder, &mut outcome, &mut found), DrStatus::Invalid);
        assert!(last_error().contains("ord_y"));
        assert_eq!(dr_realize(eq, DrMode::Auto, &mut outcome, &mut found), DrStatus::Ok);
        assert_eq!(outcome, DrOutcome::Unsupported);
        assert!(found.is_null());
        dr_equation_free(eq);
        dr_system_free(ptr::null_mut());
        dr_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/daerealize.h")).unwrap();
    for name in [
        "dr_last_error",
        "dr_system_from_json",
        "dr_system_to_json",
        "dr_system_free",
        "dr_equation_parse",
        "dr_equation_to_string",
        "dr_equation_free",
        "dr_string_free",
        "dr_verify",
        "dr_io_equation",
        "dr_realize",
        "DR_STATUS_UNSUPPORTED",
        "typedef struct DrSystem DrSystem",
    ] {
        assert!(header.contains(name), "{name} missing from the header");
    }
}

/// Compiles `tests/smoke.c` against the static library and runs it.
#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libdaerealize_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("u*y''"), "{stdout}");
    assert!(stdout.contains("\"rates\""), "{stdout}");
}
