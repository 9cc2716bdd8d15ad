#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const CASES: &[(&str, &[&str])] = &[
    (
        "analyze_gauss",
        &["analyze", "z*(1-z)*D^2 + (1-2*z)*D - 1/4"],
    ),
    ("kovacic_primitive", &["kovacic", "D^2 + (1/z)*D"]),
    ("kovacic_euler", &["kovacic", "z^2*D^2 + 2/9"]),
    (
        "galochkin_half",
        &["galochkin", "D - 1/(2*(z-1))", "--k", "10"],
    ),
    ("order1_cube_root", &["order1", "D - 1/(3*z)"]),
    ("inhom_rational", &["inhom", "1/(2*z)", "1"]),
    ("inhom_log", &["inhom", "0", "1/z"]),
    ("nga_split", &["nga-split", "terms.txt", "--trunc", "12"]),
    (
        "guess_geometric",
        &[
            "guess",
            "geometric2.txt",
            "--max-order",
            "1",
            "--max-degree",
            "1",
            "--trunc",
            "30",
        ],
    ),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Out {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the built binary inside the golden directory.
pub fn gop(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_gop"))
        .args(args)
        .current_dir(golden_dir())
        .env_remove("GOP_TRUNC_DEFAULT")
        .output()
        .expect("binary runs");
    Out {
        code: o.status.code().unwrap_or(-1),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

pub fn json_args<'a>(args: &[&'a str]) -> Vec<&'a str> {
    let mut v = args.to_vec();
    v.push("--json");
    v
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(format!("{name}.json"))).unwrap_or_default()
}
