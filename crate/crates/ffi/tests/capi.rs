use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use hpcolor_ffi::*;

const I3: &str = r#"{"halfplanes":[{"a":"1","b":"0","side":"upper"},{"a":"-1","b":"2","side":"upper"},{"a":"0","b":"0","side":"lower"}]}"#;

fn i3() -> *mut HpInstance {
    let inst = hp_instance_new();
    unsafe {
        assert_eq!(hp_instance_push(inst, 1, 1, 0, 1, HpSide::Upper), HpStatus::Ok);
        assert_eq!(hp_instance_push(inst, -1, 1, 2, 1, HpSide::Upper), HpStatus::Ok);
        assert_eq!(hp_instance_push(inst, 0, 1, 0, 1, HpSide::Lower), HpStatus::Ok);
    }
    inst
}

#[test]
fn solve_and_verify_round_trip() {
    unsafe {
        let inst = i3();
        assert_eq!(hp_instance_len(inst), 3);
        let mut c = ptr::null_mut();
        assert_eq!(hp_solve(inst, &mut c), HpStatus::Ok);
        assert_eq!(hp_coloring_len(c), 3);
        assert_eq!(hp_verify(inst, c, 3), HpStatus::Ok);
        let mut col = HpColor::Blue;
        let mut reds = 0;
        for i in 0..3 {
            assert_eq!(hp_coloring_get(c, i, &mut col), HpStatus::Ok);
            reds += (col == HpColor::Red) as usize;
        }
        assert!(reds == 1 || reds == 2);
        assert_eq!(hp_coloring_get(c, 3, &mut col), HpStatus::IndexOutOfRange);
        hp_coloring_free(c);
        hp_instance_free(inst);
    }
}

#[test]
fn json_in_and_out() {
    unsafe {
        let text = CString::new(I3).unwrap();
        let mut inst = ptr::null_mut();
        assert_eq!(hp_instance_from_json(text.as_ptr(), &mut inst), HpStatus::Ok);
        let json = hp_instance_to_json(inst);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"-1/1\""));
        hp_string_free(json);

        let blue = [HpColor::Blue; 3];
        let mut c = ptr::null_mut();
        assert_eq!(hp_coloring_new(blue.as_ptr(), 3, &mut c), HpStatus::Ok);
        assert_eq!(hp_verify(inst, c, 3), HpStatus::Violation);
        let cj = hp_coloring_to_json(c);
        assert_eq!(CStr::from_ptr(cj).to_str().unwrap(), "{\"colors\":[\"blue\",\"blue\",\"blue\"]}\n");
        hp_string_free(cj);
        hp_coloring_free(c);

        let short = [HpColor::Red];
        assert_eq!(hp_coloring_new(short.as_ptr(), 1, &mut c), HpStatus::Ok);
        assert_eq!(hp_verify(inst, c, 3), HpStatus::LengthMismatch);
        hp_coloring_free(c);
        hp_instance_free(inst);

        let bad = CString::new("{").unwrap();
        let mut other = ptr::null_mut();
        assert_eq!(hp_instance_from_json(bad.as_ptr(), &mut other), HpStatus::InvalidInput);
        assert!(other.is_null());
    }
}

#[test]
fn oracle_statuses() {
    unsafe {
        let tri = hp_instance_new();
        hp_instance_push(tri, 0, 1, 0, 1, HpSide::Upper);
        hp_instance_push(tri, 3, 2, 0, 1, HpSide::Lower);
        hp_instance_push(tri, -3, 2, 6, 1, HpSide::Lower);
        let mut c = ptr::null_mut();
        assert_eq!(hp_oracle(tri, 2, &mut c), HpStatus::NoColoring);
        assert!(c.is_null());
        assert_eq!(hp_oracle(tri, 3, &mut c), HpStatus::Ok);
        hp_coloring_free(c);
        for _ in 0..18 {
            hp_instance_push(tri, 1, 1, 1, 1, HpSide::Upper);
        }
        assert_eq!(hp_oracle(tri, 3, &mut c), HpStatus::TooLarge);
        hp_instance_free(tri);
    }
}

#[test]
fn null_and_bad_arguments() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(hp_solve(ptr::null(), &mut c), HpStatus::NullPointer);
        assert_eq!(hp_verify(ptr::null(), ptr::null(), 3), HpStatus::NullPointer);
        assert_eq!(hp_instance_push(ptr::null_mut(), 1, 1, 1, 1, HpSide::Upper), HpStatus::NullPointer);
        assert_eq!(hp_instance_from_json(ptr::null(), ptr::null_mut()), HpStatus::NullPointer);
        assert_eq!(hp_coloring_new(ptr::null(), 2, &mut c), HpStatus::NullPointer);
        assert_eq!(hp_instance_len(ptr::null()), 0);
        assert!(hp_instance_to_json(ptr::null()).is_null());
        let inst = hp_instance_new();
        assert_eq!(hp_instance_push(inst, 1, 0, 1, 1, HpSide::Upper), HpStatus::InvalidInput);
        assert_eq!(hp_instance_len(inst), 0);
        hp_instance_free(inst);
        hp_instance_free(ptr::null_mut());
        hp_coloring_free(ptr::null_mut());
        hp_string_free(ptr::null_mut());
        let msg = CStr::from_ptr(hp_status_message(HpStatus::NoColoring)).to_str().unwrap();
        assert_eq!(msg, "no good coloring exists");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = format!("{dir}/include/hpcolor.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["hp_solve", "hp_verify", "hp_oracle", "HP_STATUS_NO_COLORING", "typedef struct HpInstance HpInstance"]
    {
        assert!(text.contains(name), "{name} missing from header");
    }
    let probe = std::env::temp_dir().join(format!("hpcolor_probe_{}.c", std::process::id()));
    std::fs::write(
        &probe,
        "#include \"hpcolor.h\"\nint main(void) { HpInstance *i = hp_instance_new(); HpColoring *c = 0;\n\
         HpStatus s = hp_solve(i, &c); hp_coloring_free(c); hp_instance_free(i); return s == HP_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(format!("{dir}/include"))
        .arg(&probe)
        .output()
    else {
        eprintln!("no C compiler; header syntax not checked");
        return;
    };
    let _ = std::fs::remove_file(&probe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
