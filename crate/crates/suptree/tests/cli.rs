use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn suptree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suptree"))
        .args(args)
        .output()
        .expect("spawn suptree")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_suptree"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Data rows of a TSV output, split into fields.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(2)
        .map(|l| l.split('\t').map(String::from).collect())
        .collect()
}

fn crown_trails(file: &str) -> Vec<usize> {
    let o = suptree(&["decompose", file]);
    rows(&stdout(&o))
        .iter()
        .filter(|r| r[1] == "Crown")
        .map(|r| r[0].parse().unwrap())
        .collect()
}

#[test]
fn count_of_a_tree_is_one() {
    let o = suptree(&["count", &data("cherry.net")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn count_reads_stdin() {
    let o = with_stdin(&["count"], "rho a 1\na x 1\na y 1\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    let o = with_stdin(
        &["count", "-"],
        &std::fs::read_to_string(data("three_crowns.net")).unwrap(),
    );
    assert_eq!(stdout(&o), "8\n");
}

#[test]
fn rank_reproduces_the_golden_order() {
    let file = data("three_crowns.net");
    let crowns = crown_trails(&file);
    assert_eq!(crowns.len(), 3);
    let o = suptree(&["rank", "-k", "8", &file]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("# format_version=1"));
    let order: Vec<String> = rows(&text)
        .iter()
        .map(|r| {
            let v: Vec<&str> = r[3].split(',').collect();
            crowns.iter().map(|&c| v[c]).collect::<String>()
        })
        .collect();
    assert_eq!(
        order,
        ["111", "112", "211", "212", "121", "122", "221", "222"]
    );
    let first = &rows(&text)[0];
    assert_eq!(first[0], "1");
    // 3/4 on each of the eight connector arcs
    assert_eq!(first[1], "6561/65536");
    assert_eq!(first[2], "1.00112915039e-1");
    assert_eq!(first[4].split(',').count(), 14);
}

#[test]
fn rank_json_schema() {
    let o = suptree(&[
        "rank",
        "-k",
        "3",
        "--format",
        "json",
        &data("three_crowns.net"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 3);
    for (j, obj) in arr.iter().enumerate() {
        assert_eq!(obj["format_version"], 1);
        assert_eq!(obj["rank"], j as u64 + 1);
        assert!(obj["likelihood_fraction"].is_string());
        assert!(obj["likelihood_decimal"].is_string());
        assert!(obj["rank_vector"].is_array());
        assert!(obj["arcs"].is_array());
    }
}

#[test]
fn rank_output_options() {
    let file = data("three_crowns.net");
    let o = suptree(&["rank", "-k", "2", "--ranks-only", "--exact", &file]);
    let text = stdout(&o);
    assert_eq!(
        text.lines().nth(1),
        Some("rank\tlikelihood_fraction\trank_vector")
    );
    assert_eq!(rows(&text)[1].len(), 3);
    let o = suptree(&["rank", "-k", "1", "--decimal-digits", "3", &file]);
    assert_eq!(rows(&stdout(&o))[0][2], "1.00e-1");
    let o = suptree(&["rank", "-k", "1", "--decimal-digits", "3", "--exact", &file]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rank_on_non_tree_based_names_the_w_fence() {
    let o = suptree(&["rank", "-k", "3", &data("w_fence.net")]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("not tree-based"), "{err}");
    assert!(err.contains("W-fence with arcs 8,9,10,11"), "{err}");
    assert!(stdout(&o).is_empty());
}

#[test]
fn k_out_of_range_is_a_domain_error() {
    let file = data("three_crowns.net");
    for k in ["0", "9"] {
        let o = suptree(&["rank", "-k", k, &file]);
        assert_eq!(o.status.code(), Some(1), "k={k}");
        assert!(stdout(&o).is_empty());
    }
    let o = suptree(&["oracle", "rank", "-k", "9", &file]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes_for_bad_input() {
    let o = with_stdin(&["count"], "r x 1\nr y\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = with_stdin(&["count"], "r x 1\nr y 1/0\n");
    assert_eq!(o.status.code(), Some(2));
    let o = with_stdin(
        &["count"],
        "r a 1\nr b 1\na c 1\nb c 1\nc d 1\nc e 1\na f 1\nb f 1\nf g 1\nf h 1\n",
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("structural violation: vertex degrees"),
        "{}",
        stderr(&o)
    );
    let o = suptree(&["rank", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = suptree(&["count", "/nonexistent/file.net"]);
    assert_eq!(o.status.code(), Some(2));
    let o = suptree(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_lists_every_clause() {
    let o = with_stdin(&["validate"], "rho x 1\n");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid: 2 vertices, 1 arcs"));
    let o = with_stdin(&["validate"], "r1 x 1\nr2 y 1\na b 1\nb a 1\n");
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("structural violation: unique root"), "{out}");
    assert!(out.contains("structural violation: acyclicity"), "{out}");
}

#[test]
fn streaming_prefixes_agree() {
    let file = data("three_crowns.net");
    let full = stdout(&suptree(&["rank", "-k", "8", &file]));
    for j in 1..=8 {
        let part = stdout(&suptree(&["rank", "-k", &j.to_string(), &file]));
        let head: Vec<&str> = full.lines().take(j + 2).collect();
        assert_eq!(part.lines().collect::<Vec<_>>(), head);
    }
}

#[test]
fn closed_pipe_ends_quietly() {
    let net = std::process::Command::new(env!("CARGO_BIN_EXE_suptree"))
        .args(["generate", "--leaves", "60", "--extra", "20", "--seed", "3"])
        .output()
        .unwrap();
    let path = std::env::temp_dir().join(format!("suptree-pipe-{}.net", std::process::id()));
    std::fs::write(&path, &net.stdout).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_suptree"))
        .args(["rank", "-k", "100000"])
        .arg(&path)
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut reader = BufReader::new(child.stdout.take().unwrap());
    let mut line = String::new();
    for _ in 0..5 {
        line.clear();
        reader.read_line(&mut line).unwrap();
    }
    drop(reader);
    let status = child.wait().unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn oracle_rank_matches_rank() {
    let file = data("three_crowns.net");
    let a = suptree(&["rank", "-k", "8", &file]);
    let b = suptree(&["oracle", "rank", "-k", "8", &file]);
    assert_eq!(stdout(&a), stdout(&b));
    let o = suptree(&["oracle", "rank", "-k", "1", "--cap", "10", &file]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cap"));
}

#[test]
fn oracle_check_reports_conditions() {
    let file = data("three_crowns.net");
    let all: Vec<String> = (0..20).map(|i| i.to_string()).collect();
    let o = suptree(&["oracle", "check", &all.join(","), &file]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.starts_with("admissible\tfalse\nviolated\thead-exactly-one\n"),
        "{out}"
    );
    assert!(out.contains("head-exactly-one\tc1\t2,3"), "{out}");

    let best = rows(&stdout(&suptree(&["rank", "-k", "1", &file])))[0][4].clone();
    let o = suptree(&["oracle", "check", &best, &file]);
    assert!(stdout(&o).starts_with("admissible\ttrue\n"));
    let o = suptree(&["oracle", "check", "0,99", &file]);
    assert_eq!(o.status.code(), Some(1));
    let o = suptree(&["oracle", "check", "0,x", &file]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_formats() {
    let file = data("three_crowns.net");
    let o = suptree(&["decompose", &file]);
    let text = stdout(&o);
    assert_eq!(text.lines().nth(1), Some("trail\tkind\tarc_count\tarcs"));
    let r = rows(&text);
    let total: usize = r.iter().map(|r| r[2].parse::<usize>().unwrap()).sum();
    assert_eq!(total, 20);
    assert_eq!(r.iter().find(|r| r[1] == "Crown").unwrap()[3], "2,3,4,5");

    let o = suptree(&["decompose", "--format", "json", &file]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), r.len());
    assert_eq!(v[0]["format_version"], 1);
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|t| t["kind"] == "Crown" && t["arc_count"] == 4));
}

#[test]
fn local_rank_of_a_crown() {
    let file = data("three_crowns.net");
    let c = crown_trails(&file)[1];
    let o = suptree(&["local-rank", &c.to_string(), &file]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 2);
    assert_eq!(r[0][2], "1");
    assert_eq!(r[1][2], "1/16");
    let o = suptree(&["local-rank", "99", &file]);
    assert_eq!(o.status.code(), Some(1));
    let o = suptree(&["local-rank", "0", &data("w_fence.net")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn is_tree_based_reports_w_fences() {
    let o = suptree(&["is-tree-based", &data("w_fence.net")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("false"));
    assert!(stdout(&o).contains("w-fence\t"));
    let o = suptree(&["is-tree-based", &data("three_crowns.net")]);
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn generate_is_deterministic_and_parses() {
    let a = suptree(&["generate", "--leaves", "4", "--extra", "2", "--seed", "1"]);
    let b = suptree(&["generate", "--leaves", "4", "--extra", "2", "--seed", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 2 * 4 - 2 + 3 * 2);
    let o = with_stdin(&["is-tree-based"], &text);
    assert_eq!(stdout(&o), "true\n");

    let w = suptree(&[
        "generate",
        "--leaves",
        "5",
        "--extra",
        "1",
        "--seed",
        "2",
        "--w-fence",
        "2",
    ]);
    let o = with_stdin(&["is-tree-based"], &stdout(&w));
    assert!(stdout(&o).starts_with("false\n"));
    assert_eq!(
        suptree(&["generate", "--leaves", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn enumerate_streams_everything() {
    let o = suptree(&["enumerate", &data("three_crowns.net")]);
    assert_eq!(rows(&stdout(&o)).len(), 8);
    let o = suptree(&["enumerate", &data("w_fence.net")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn profile_delay_csv() {
    let o = suptree(&[
        "profile-delay",
        "--sizes",
        "40,80",
        "-k",
        "5",
        "--reps",
        "2",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# format_version=1"));
    assert_eq!(lines.next(), Some("arc_count,repetition,seed,j,delay_ns"));
    let data: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && l.contains(','))
        .skip(1)
        .collect();
    assert_eq!(data.len(), 2 * 2 * 5);
    assert!(text.contains("# growth_per_doubling="));
    let o = suptree(&["profile-delay", "--sizes", "10", "-k", "100000"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn in_process_run_matches_binary() {
    let file = data("three_crowns.net");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = suptree::run(
        ["suptree", "rank", "-k", "4", &file],
        &mut std::io::empty(),
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    assert_eq!(out, suptree(&["rank", "-k", "4", &file]).stdout);
}
