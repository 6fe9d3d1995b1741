#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

/// One recorded invocation of the binary, run from the crate directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Golden {
    pub name: String,
    pub args: Vec<String>,
    pub env: BTreeMap<String, String>,
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run(args: &[String], env: &BTreeMap<String, String>) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qsigma"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("QSIGMA_SEED")
        .envs(env)
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().map(|s| s.as_str().expect("string").to_string()).collect())
        .unwrap_or_default()
}

pub fn load(path: &Path) -> Golden {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let env = v["env"]
        .as_object()
        .map(|o| {
            o.iter()
                .map(|(k, x)| (k.clone(), x.as_str().unwrap().to_string()))
                .collect()
        })
        .unwrap_or_default();
    Golden {
        name: path.file_stem().unwrap().to_string_lossy().into_owned(),
        args: strings(&v["args"]),
        env,
        exit: v["exit"].as_i64().unwrap_or(0) as i32,
        stdout: v["stdout"].as_str().unwrap_or("").to_string(),
        stderr: v["stderr"].as_str().unwrap_or("").to_string(),
    }
}

pub fn load_all() -> Vec<Golden> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load(p)).collect()
}

/// Runs a case; `Err` describes the first byte-level mismatch.
pub fn check(g: &Golden) -> Result<(), String> {
    let (exit, stdout, stderr) = run(&g.args, &g.env);
    if exit != g.exit {
        return Err(format!("{}: exit {exit}, expected {}", g.name, g.exit));
    }
    if stdout != g.stdout {
        return Err(format!("{}: stdout\n{stdout}\nexpected\n{}", g.name, g.stdout));
    }
    if stderr != g.stderr {
        return Err(format!("{}: stderr\n{stderr}\nexpected\n{}", g.name, g.stderr));
    }
    Ok(())
}

/// Rewrites a case file with the binary's current output.
pub fn bless(g: &Golden) {
    let (exit, stdout, stderr) = run(&g.args, &g.env);
    let v = json!({
        "args": g.args,
        "env": g.env,
        "exit": exit,
        "stdout": stdout,
        "stderr": stderr,
    });
    let text = serde_json::to_string_pretty(&v).unwrap() + "\n";
    std::fs::write(golden_dir().join(format!("{}.json", g.name)), text).unwrap();
}
