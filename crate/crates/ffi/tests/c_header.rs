//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "meshperm.h"

int main(void) {
    MeshpermPattern *q1 = NULL, *q2 = NULL;
    MeshpermTable *t = NULL;
    char *poly = NULL;
    uint64_t count = 0;
    if (meshperm_catalog_pair("A33", &q1, &q2) != MESHPERM_STATUS_OK) return 10;
    if (meshperm_joint_table(4, q1, q2, &t) != MESHPERM_STATUS_OK) return 11;
    if (meshperm_table_polynomial(t, &poly) != MESHPERM_STATUS_OK) return 12;
    if (strcmp(poly, "x^2 + y^2 + 6x + 6y + 10") != 0) return 13;
    if (meshperm_count("12", NULL, &count) != MESHPERM_STATUS_NULL_POINTER) return 14;
    if (meshperm_last_error() == NULL) return 15;
    printf("%s\n", poly);
    meshperm_string_free(poly);
    meshperm_table_free(t);
    meshperm_pattern_free(q1);
    meshperm_pattern_free(q2);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libmeshperm_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let work = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let source = work.join("smoke.c");
    let binary = work.join("smoke");
    std::fs::write(&source, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(&source)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&binary)
        .status()
        .unwrap_or_else(|e| panic!("cannot run {cc}: {e}"));
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&binary).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "x^2 + y^2 + 6x + 6y + 10");
}
