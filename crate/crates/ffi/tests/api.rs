use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use sftkit_ffi::*;

const FULL2: &str = "%sft\ndim: 2\nalphabet: 0 1\n";
const GOLDEN: &str = "%sft\ndim: 1\nalphabet: 0 1\nforbid:\n(0) = 1\n(1) = 1\n";

fn spec(text: &str) -> *mut SftkitSpec {
    let src = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sftkit_spec_parse(src.as_ptr(), &mut out) }, SftkitStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sftkit_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn strong_period_report() {
    let s = spec(FULL2);
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(sftkit_spec_dim(s), 2);
        assert_eq!(sftkit_strong_period(s, 2, ptr::null(), &mut r), SftkitStatus::Ok);
        assert_eq!(sftkit_report_verdict(r), SftkitVerdict::Yes);
        assert!(sftkit_report_nodes(r) > 0);
        let text = CStr::from_ptr(sftkit_report_text(r)).to_str().unwrap();
        assert!(text.starts_with("verdict=yes"), "{text}");

        let mut t = ptr::null_mut();
        assert_eq!(sftkit_report_torus(r, &mut t), SftkitStatus::Ok);
        let mut valid = false;
        assert_eq!(sftkit_torus_is_valid(t, s, &mut valid), SftkitStatus::Ok);
        assert!(valid);
        let mut dims = [0usize; 4];
        assert_eq!(sftkit_torus_dims(t, dims.as_mut_ptr(), dims.len()), 2);
        assert_eq!(&dims[..2], &[2, 2]);

        // round trip through the text form
        let mut txt = ptr::null_mut();
        assert_eq!(sftkit_torus_text(t, s, &mut txt), SftkitStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(sftkit_torus_parse(s, txt, &mut back), SftkitStatus::Ok);
        let mut txt2 = ptr::null_mut();
        assert_eq!(sftkit_torus_text(back, s, &mut txt2), SftkitStatus::Ok);
        assert_eq!(CStr::from_ptr(txt), CStr::from_ptr(txt2));
        sftkit_string_free(txt);
        sftkit_string_free(txt2);
        sftkit_torus_free(back);
        sftkit_torus_free(t);
        sftkit_report_free(r);
        sftkit_spec_free(s);
    }
}

#[test]
fn counts_agree_across_modes() {
    let s = spec(GOLDEN);
    let (mut a, mut b) = (0u64, 0u64);
    unsafe {
        assert_eq!(sftkit_count_strong(s, 5, SftkitCountMode::Stabilizer, ptr::null(), &mut a), SftkitStatus::Ok);
        assert_eq!(sftkit_count_strong(s, 5, SftkitCountMode::LexMin, ptr::null(), &mut b), SftkitStatus::Ok);
        sftkit_spec_free(s);
    }
    // golden mean: 11 words of length 5 on the cycle, minus the fixed point, over 5 rotations
    assert_eq!((a, b), (2, 2));
}

#[test]
fn one_period_has_walk_not_torus() {
    let s = spec(FULL2);
    let mut r = ptr::null_mut();
    let mut t = ptr::null_mut::<SftkitTorus>();
    unsafe {
        assert_eq!(sftkit_one_period(s, 1, 0, ptr::null(), &mut r), SftkitStatus::Ok);
        assert_eq!(sftkit_report_verdict(r), SftkitVerdict::Yes);
        assert_eq!(sftkit_report_torus(r, &mut t), SftkitStatus::Ok);
        assert!(t.is_null());
        sftkit_report_free(r);
        sftkit_spec_free(s);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("%sft\ndim: two\n").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(sftkit_spec_parse(bad.as_ptr(), &mut out), SftkitStatus::Parse);
        assert!(out.is_null());
        assert!(last_error().contains("line 2"), "{}", last_error());
        assert_eq!(sftkit_spec_parse(ptr::null(), &mut out), SftkitStatus::NullPointer);
        assert_eq!(sftkit_report_verdict(ptr::null()), SftkitVerdict::Unknown);
        assert!(sftkit_report_text(ptr::null()).is_null());
        sftkit_spec_free(ptr::null_mut());
        sftkit_string_free(ptr::null_mut());

        let non_utf8 = [0x25u8, 0xff, 0];
        assert_eq!(sftkit_spec_parse(non_utf8.as_ptr().cast(), &mut out), SftkitStatus::InvalidUtf8);
    }
    let s = spec(FULL2);
    let mut r = ptr::null_mut();
    let tight = SftkitBudget { max_nodes: 1, ..sftkit_budget_default() };
    let mut n = 0;
    unsafe {
        assert_eq!(sftkit_count_strong(s, 3, SftkitCountMode::Stabilizer, &tight, &mut n), SftkitStatus::BudgetExhausted);
        assert_eq!(sftkit_strong_period(s, 0, ptr::null(), &mut r), SftkitStatus::InvalidArgument);
        assert!(r.is_null());
        sftkit_spec_free(s);
    }
}

#[test]
fn header_lists_the_api() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/sftkit.h")).unwrap();
    for f in [
        "sftkit_spec_parse",
        "sftkit_spec_free",
        "sftkit_strong_period",
        "sftkit_horizontal_period",
        "sftkit_one_period",
        "sftkit_count_strong",
        "sftkit_report_verdict",
        "sftkit_report_free",
        "sftkit_torus_free",
        "sftkit_last_error",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("typedef struct SftkitSpec SftkitSpec;"));
    assert!(h.contains("SFTKIT_STATUS_BUDGET_EXHAUSTED = 5"));
}

fn staticlib() -> PathBuf {
    // target/<profile>/deps/api-… -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().join("libsftkit_ffi.a")
}

#[test]
#[cfg(unix)]
fn c_program_links_and_runs() {
    let lib = staticlib();
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("sftkit_smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&out)
        .status()
        .expect("run the C compiler");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("verdict=yes"));
}
