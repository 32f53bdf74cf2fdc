//! Compiles a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests run from target/<profile>/deps
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libvalinf_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("valinf_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "{(0,5),(0,3),(-1,25)}");
}
