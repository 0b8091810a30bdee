use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use modcont_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 512];
    unsafe {
        mc_last_error_message(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn scalar_functions() {
    let mut v = f64::NAN;
    unsafe {
        assert_eq!(mc_cantor_eval(1.0 / 3.0, 64, &mut v), McStatus::Ok);
        assert_eq!(v, 0.5);
        assert_eq!(mc_f2_eval(1.0 / 3.0, &mut v), McStatus::Ok);
        assert!((v - 0.5).abs() < 1e-15);
        assert_eq!(mc_f3_eval(0.0, &mut v), McStatus::Ok);
        assert_eq!(v, 0.0);
        assert_eq!(mc_phi(0.0, 7.0, &mut v), McStatus::Ok);
        assert_eq!(v, 7.0);
        assert_eq!(mc_max_phi_boundary(1.0, &mut v), McStatus::Ok);
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(mc_max_phi_critical(1.0, &mut v), McStatus::Ok);
        assert!((v - 1.2915).abs() < 1e-4);

        let mut ds = 0.0;
        assert_eq!(mc_find_delta_star(1e-12, &mut ds), McStatus::Ok);
        assert!(ds > 0.17 && ds < 0.19);
        assert_eq!(mc_psi(1.0 + ds, &mut v), McStatus::Ok);
        assert!(v.abs() < 1e-10);
        assert_eq!(mc_omega_g_closed(7.0, &mut v), McStatus::Ok);
        assert_eq!(v, 7.0);
    }
    assert!((mc_alpha() - 2f64.ln() / 3f64.ln()).abs() < 1e-16);
}

#[test]
fn error_codes_and_messages() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(mc_cantor_eval(1.5, 64, &mut v), McStatus::Domain);
        assert!(last_error().contains("outside"), "{}", last_error());
        assert_eq!(mc_cantor_eval(0.5, 0, &mut v), McStatus::Precondition);
        assert_eq!(mc_find_delta_star(0.5, &mut v), McStatus::Precondition);
        assert_eq!(mc_f2_eval(0.5, ptr::null_mut()), McStatus::NullPointer);
        assert_eq!(
            mc_function_eval(ptr::null(), 0.5, &mut v),
            McStatus::NullPointer
        );
        assert_eq!(
            mc_modulus_grid(ptr::null(), 100, &mut ptr::null_mut()),
            McStatus::NullPointer
        );
        assert_eq!(mc_f2_eval(0.5, &mut v), McStatus::Ok);
        assert_eq!(last_error(), "");
        assert_eq!(mc_last_error_message(ptr::null_mut(), 0), 0);
    }
}

#[test]
fn function_handles() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(mc_function_new(McFunctionKind::F, &mut f), McStatus::Ok);
        let mut v = 0.0;
        assert_eq!(mc_function_eval(f, 2.5, &mut v), McStatus::Ok);
        assert_eq!(v, 2.5);
        let (mut lo, mut hi) = (f64::NAN, f64::NAN);
        assert_eq!(mc_function_domain(f, &mut lo, &mut hi), McStatus::Ok);
        assert_eq!((lo, hi), (0.0, 7.0));
        let (mut sum, mut len) = (0.0, 0.0);
        assert_eq!(
            mc_singular_cover_increment(f, 6, &mut sum, &mut len),
            McStatus::Ok
        );
        assert!((sum - 1.0).abs() < 1e-10);
        assert!((len - (2.0f64 / 3.0).powi(6)).abs() < 1e-12);
        mc_function_free(f);
        mc_function_free(ptr::null_mut());

        let (xs, ys) = ([0.0, 1.0, 2.0], [0.0, 2.0, 1.0]);
        let mut p = ptr::null_mut();
        assert_eq!(
            mc_function_piecewise_linear(xs.as_ptr(), ys.as_ptr(), 3, &mut p),
            McStatus::Ok
        );
        assert_eq!(mc_function_eval(p, 1.5, &mut v), McStatus::Ok);
        assert_eq!(v, 1.5);
        mc_function_free(p);
        let bad = [0.0, 0.0, 1.0];
        assert_eq!(
            mc_function_piecewise_linear(bad.as_ptr(), ys.as_ptr(), 3, &mut p),
            McStatus::Precondition
        );
    }
}

#[test]
fn modulus_tables() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(mc_function_new(McFunctionKind::F1, &mut c), McStatus::Ok);
        let mut t = ptr::null_mut();
        assert_eq!(mc_modulus_grid(c, 3usize.pow(7) + 1, &mut t), McStatus::Ok);
        let n = mc_modulus_len(t);
        assert_eq!(n, 2188);
        assert!(mc_modulus_is_nondecreasing(t));
        let (mut ds, mut vs) = (vec![0.0; n], vec![0.0; n]);
        assert_eq!(
            mc_modulus_copy(t, ds.as_mut_ptr(), vs.as_mut_ptr(), n),
            McStatus::Ok
        );
        assert!((ds[729] - 1.0 / 3.0).abs() < 1e-15);
        assert!((vs[729] - 0.5).abs() < 1e-12);
        assert_eq!(
            mc_modulus_copy(t, ds.as_mut_ptr(), ptr::null_mut(), n - 1),
            McStatus::BufferTooSmall
        );

        let mut hull = ptr::null_mut();
        assert_eq!(mc_modulus_concave_majorant(t, &mut hull), McStatus::Ok);
        let mut hv = vec![0.0; n];
        assert_eq!(
            mc_modulus_copy(hull, ptr::null_mut(), hv.as_mut_ptr(), n),
            McStatus::Ok
        );
        assert!(hv.iter().zip(&vs).all(|(h, v)| h + 1e-12 >= *v));
        let mut v = 0.0;
        assert_eq!(mc_modulus_value_at(hull, 1.0, &mut v), McStatus::Ok);
        assert!((v - 1.0).abs() < 1e-12);

        mc_modulus_free(hull);
        mc_modulus_free(t);
        mc_function_free(c);

        let mut closed = ptr::null_mut();
        assert_eq!(mc_omega_g_table(1001, &mut closed), McStatus::Ok);
        assert_eq!(mc_modulus_len(closed), 1001);
        mc_modulus_free(closed);
        assert_eq!(mc_omega_g_table(1, &mut closed), McStatus::Precondition);
        assert_eq!(mc_modulus_len(ptr::null()), 0);
    }
}

fn cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_api_and_compiles() {
    let header = std::fs::read_to_string(crate_dir().join("include/modcont.h")).unwrap();
    for symbol in [
        "mc_function_new",
        "mc_modulus_grid",
        "mc_last_error_message",
        "MC_STATUS_PANIC",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping syntax check");
        return;
    };
    let status = Command::new(cc)
        .args(["-fsyntax-only", "-std=c99", "-Wall", "-Werror", "-x", "c"])
        .arg(crate_dir().join("include/modcont.h"))
        .status()
        .unwrap();
    assert!(status.success());
}

/// The static library sits next to the `deps` directory holding this test binary.
fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libmodcont_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let (Some(cc), Some(lib)) = (cc(), static_lib()) else {
        eprintln!("no C compiler or static library; skipping");
        return;
    };
    let dir = tempfile_dir();
    let exe = dir.join("smoke");
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
    let _ = std::fs::remove_dir_all(&dir);
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("modcont-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
