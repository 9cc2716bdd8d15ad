mod common;

use common::{golden, golden_dir, gop, json_args, CASES};

#[test]
fn goldens_are_stable() {
    let bless = std::env::var_os("GOP_BLESS").is_some();
    for (name, args) in CASES {
        let a = gop(&json_args(args));
        let b = gop(&json_args(args));
        assert_eq!(a.code, 0, "{name}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{name}");
        if bless {
            std::fs::write(golden_dir().join(format!("{name}.json")), &a.stdout).unwrap();
        }
        assert_eq!(a.stdout, golden(name), "{name}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(gop(&["analyze", "D/(z)"]).code, 2);
    assert!(gop(&["analyze", "D/(z)"])
        .stderr
        .contains("operator in denominator"));
    assert_eq!(gop(&["analyze", "2z"]).code, 2);
    assert_eq!(gop(&["frobnicate"]).code, 1);
    assert_eq!(gop(&["galochkin", "D", "--k", "x"]).code, 1);
    assert_eq!(gop(&["order1", "D^2"]).code, 2);
    assert_eq!(gop(&["guess", "missing.txt"]).code, 2);
    assert_eq!(gop(&["guess", "geometric1.txt", "--trunc", "5"]).code, 2);
    assert_eq!(gop(&["--help"]).code, 0);
}

#[test]
fn text_and_json_agree_on_verdicts() {
    let t = gop(&["kovacic", "D^2 + (1/z)*D"]);
    assert_eq!(t.code, 0);
    assert!(t.stdout.contains("primitive_form"));
    let j: serde_json::Value =
        serde_json::from_str(&gop(&["kovacic", "D^2 + (1/z)*D", "--json"]).stdout).unwrap();
    assert_eq!(j["result"]["case"], 1);
    let o = &j["result"]["outcomes"][0];
    assert_eq!(o["g"]["value"], "1");
    assert_eq!(o["h"]["value"], "1/z");
    let keys: Vec<&String> = j.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["command", "diagnostics", "input", "result", "warnings"]
    );
}

#[test]
fn trunc_env_default() {
    let r = gop_cli::run_args(["gop", "guess", "geometric1.txt"], Some("12"));
    assert_eq!(r.code, 2);
    let r = gop_cli::run_args(["gop", "analyze", "D"], Some("many"));
    assert_eq!(r.code, 0);
}
