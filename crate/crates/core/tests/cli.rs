//! End-to-end checks of the binary: output schema, exit codes, batch
//! handling, and determinism.

use std::process::{Command, Stdio};

fn vtlink() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vtlink"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> (String, String, Option<i32>) {
    let mut child = vtlink()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code(),
    )
}

fn k5_minus_edge_g6() -> String {
    let mut edges = Vec::new();
    for u in 0..5usize {
        for v in u + 1..5 {
            if (u, v) != (0, 1) {
                edges.push((u, v));
            }
        }
    }
    vtlink::emit_graph6(&vtlink::Graph::from_edges(5, &edges).unwrap()).unwrap()
}

fn fixture_path(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn eliminate_json_schema_and_exit_codes() {
    let g6 = k5_minus_edge_g6();
    let (out, _, code) = run_with_stdin(&["eliminate", "--format", "graph6", "--json", "-"], &g6);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["overall"]["outcome"], "eliminated");
    assert_eq!(v["overall"]["rule"], "R1-edge-bound");
    assert_eq!(v["overall"]["scope"], "vertex-transitive");
    assert_eq!(v["n"], 5);
    assert_eq!(v["m"], 9);
    assert!(v["rules"].as_array().unwrap().iter().all(|r| {
        r.get("id").is_some()
            && r.get("outcome").is_some()
            && r.get("scope").is_some()
            && r.get("witness").is_some()
            && r.get("explanation").is_some()
    }));
    assert_eq!(v["limits"]["max_clique_order"], 8);

    let (_, _, code) = run_with_stdin(
        &["eliminate", "--json", "--fail-on-eliminated", "-"],
        &g6,
    );
    assert_eq!(code, Some(1));
}

#[test]
fn eliminate_is_deterministic() {
    let g6 = k5_minus_edge_g6();
    let args = ["eliminate", "--json", "--all-rules", "-"];
    let (a, _, _) = run_with_stdin(&args, &g6);
    let (b, _, _) = run_with_stdin(&args, &g6);
    assert_eq!(a, b);
    assert!(!a.is_empty());
}

#[test]
fn eliminate_batch_preserves_order() {
    let k5e = k5_minus_edge_g6();
    let c5 = vtlink::emit_graph6(
        &vtlink::Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap(),
    )
    .unwrap();
    let input = format!("{k5e}\n{c5}\n");
    let (out, _, code) = run_with_stdin(&["eliminate", "--json", "-"], &input);
    assert_eq!(code, Some(0));
    let lines: Vec<&str> = out.trim().lines().collect();
    assert_eq!(lines.len(), 2);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    let second: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(first["overall"]["outcome"], "eliminated");
    assert_eq!(second["overall"]["outcome"], "inconclusive");
}

#[test]
fn eliminate_figure1_all_rules() {
    let (out, _, code) = run_with_stdin(
        &[
            "eliminate",
            &fixture_path("figure1.edges"),
            "--all-rules",
            "--json",
        ],
        "",
    );
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let rules = v["rules"].as_array().unwrap();
    let outcome = |id: &str| {
        rules
            .iter()
            .find(|r| r["id"] == id)
            .map(|r| r["outcome"].clone())
            .unwrap()
    };
    assert_eq!(outcome("R3-odd-class-involution"), "inconclusive");
    assert_eq!(outcome("R5-prime-clique"), "eliminated");
    assert_eq!(outcome("R6-orbit-restrictor-order"), "eliminated");
    assert_eq!(v["overall"]["scope"], "vertex-transitive");
}

#[test]
fn demo_prints_asymmetric_graph6() {
    let (out, _, code) = run_with_stdin(&["demo"], "");
    assert_eq!(code, Some(0));
    let first = out.lines().next().unwrap();
    let g = vtlink::parse_graph6(first).unwrap();
    assert_eq!(g.order(), 6);
    assert!(vtlink::is_asymmetric(&g));
}

#[test]
fn analyze_json_fields() {
    let (out, _, code) = run_with_stdin(
        &["analyze", &fixture_path("figure2.edges"), "--json"],
        "",
    );
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["n"], 6);
    assert_eq!(v["m"], 6);
    assert_eq!(v["asymmetric"], true);
    assert!(v["classes"].as_array().unwrap().len() >= 4);
}

#[test]
fn parse_errors_exit_2() {
    let (_, err, code) = run_with_stdin(&["eliminate", "--format", "graph6", "-"], "~~nonsense~~");
    assert_eq!(code, Some(2));
    assert!(err.contains("error"));

    let (_, _, code) = run_with_stdin(&["no-such-subcommand"], "");
    assert_eq!(code, Some(2));
}

#[test]
fn census_small_run_via_env() {
    let dir = std::env::temp_dir().join("vtlink-cli-census-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("census.g6");
    std::fs::remove_file(&path).ok();

    let out = vtlink()
        .args(["census", "--max-group-order", "6"])
        .env("NEIGHBOURHOOD_CENSUS_PATH", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(path.exists());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# meta:"));

    // second run loads the persisted file and still reports soundness
    let out = vtlink()
        .args(["census", "--json"])
        .env("NEIGHBOURHOOD_CENSUS_PATH", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(
        String::from_utf8(out.stdout).unwrap().trim(),
    )
    .unwrap();
    assert!(v["members"].as_u64().unwrap() > 0);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    std::fs::remove_file(&path).ok();
}
