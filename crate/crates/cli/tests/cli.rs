use std::io::Write;
use std::process::{Command, Stdio};

use cdlab_cli::{run, CommandOutcome};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cdlab(args: &[&str]) -> CommandOutcome {
    cdlab_stdin(args, "")
}

fn cdlab_stdin(args: &[&str], stdin: &str) -> CommandOutcome {
    let argv = std::iter::once("cdlab").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

fn json(out: &CommandOutcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn discordant_example_is_condorcet() {
    let out = cdlab(&["check", &fixture("discordant-6.domain")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json(&out)["is_cd"], true);
}

#[test]
fn copious_example_abundance() {
    let out = cdlab(&["abundance", &fixture("copious-8.domain"), "--k", "3"]);
    assert_eq!(out.code, 0);
    assert_eq!(json(&out)["s"], 4);
    let above = cdlab(&["abundance", &fixture("copious-8.domain"), "--k", "3", "--s", "5"]);
    assert_eq!(above.code, 1);
    assert_eq!(json(&above)["abundant"], false);
}

#[test]
fn generate_pipes_into_vector() {
    let gen = cdlab(&["generate", "fishburn", "--n", "4"]);
    assert_eq!(gen.code, 0);
    let out = cdlab_stdin(&["vector", "-"], &gen.stdout);
    assert_eq!(out.stdout.trim(), "(1,2,4,9)");
}

#[test]
fn binary_pipeline() {
    let bin = env!("CARGO_BIN_EXE_cdlab");
    let gen = Command::new(bin)
        .args(["generate", "fishburn", "--n", "4"])
        .output()
        .unwrap();
    assert!(gen.status.success());
    let mut child = Command::new(bin)
        .args(["vector", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&gen.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "(1,2,4,9)");
    let bad = Command::new(bin).args(["check", "--nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let unknown = cdlab(&["vector", "x", "--frobnicate"]);
    assert_eq!(unknown.code, 2);
    assert!(unknown.stderr.contains("Usage"));
    assert_eq!(cdlab(&["teleport"]).code, 2);
    assert_eq!(cdlab(&["check", "/definitely/not/here"]).code, 3);
    let not_cd = cdlab_stdin(&["check", "-"], "n=3\n123\n231\n312\n");
    assert_eq!(not_cd.code, 1);
    assert_eq!(json(&not_cd)["is_cd"], false);
    let garbage = cdlab_stdin(&["check", "-"], "n=3\n123\n124\n");
    assert_eq!(garbage.code, 3);
    assert!(garbage.stderr.contains("line"), "{}", garbage.stderr);
    assert_eq!(cdlab(&["--help"]).code, 0);
}

#[test]
fn randomized_commands_require_a_seed() {
    let f = fixture("copious-8.domain");
    assert_eq!(cdlab(&["sample", &f, "--agents", "4"]).code, 2);
    assert_eq!(
        cdlab(&["experiment", &f, "--agents", "4", "--trials", "3", "--k", "3"]).code,
        2
    );
}

#[test]
fn reports_are_reproducible_across_worker_counts() {
    let f = fixture("copious-8.domain");
    let args = |w: &'static str| {
        vec![
            "experiment",
            "FILE",
            "--agents",
            "6",
            "--trials",
            "200",
            "--k",
            "2,3,4",
            "--seed",
            "11",
            "--workers",
            w,
        ]
    };
    let mut outs = Vec::new();
    for w in ["1", "3", "8"] {
        let mut a = args(w);
        a[1] = &f;
        outs.push(cdlab(&a));
    }
    assert_eq!(outs[0].code, 0, "{}", outs[0].stderr);
    assert!(outs.windows(2).all(|w| w[0].stdout == w[1].stdout));
    let sample = |w| cdlab(&["sample", &f, "--agents", "9", "--seed", "5", "--workers", w]).stdout;
    assert_eq!(sample("1"), sample("4"));
}

#[test]
fn experiment_csv() {
    let out = cdlab(&[
        "experiment",
        &fixture("copious-8.domain"),
        "--agents",
        "4",
        "--trials",
        "30",
        "--k",
        "3",
        "--seed",
        "2",
        "--format",
        "csv",
    ]);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("k,s,frequency"));
    let total: u64 = lines
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 30);
}

#[test]
fn discordant_example_maximal_and_discordant() {
    let f = fixture("discordant-6.domain");
    assert_eq!(cdlab(&["maximal", &f]).code, 0);
    let d = cdlab(&["discordant", &f]);
    assert_eq!(d.code, 0);
    let v = json(&d);
    assert_eq!(v["subsets"].as_array().unwrap().len(), 6);
    let restricted = cdlab(&["restrict", &f, "--set", "1,2,3,4,5"]);
    assert_eq!(cdlab_stdin(&["maximal", "-"], &restricted.stdout).code, 1);
    let closed = cdlab_stdin(&["close", "-"], &restricted.stdout);
    let v = json(&cdlab_stdin(&["maximal", "-"], &closed.stdout));
    assert_eq!(v["size"], 8);
}

#[test]
fn generate_every_family() {
    let dir = tempfile::tempdir().unwrap();
    let left = dir.path().join("left.domain");
    let right = dir.path().join("right.domain");
    std::fs::write(&left, cdlab(&["generate", "black-sp", "--n", "3"]).stdout).unwrap();
    std::fs::write(&right, "4 5\n5 4\n").unwrap();
    let cases: Vec<(Vec<String>, usize)> = vec![
        (vec!["black-sp".into(), "--n".into(), "5".into()], 16),
        (vec!["caterpillar-gs".into(), "--n".into(), "5".into()], 16),
        (vec!["single-crossing".into(), "--n".into(), "5".into()], 11),
        (vec!["fishburn".into(), "--n".into(), "6".into()], 45),
        (
            vec![
                "set-alternating".into(),
                "--n".into(),
                "4".into(),
                "--set".into(),
                "1,3".into(),
            ],
            8,
        ),
        (
            vec![
                "s-construction".into(),
                "--left".into(),
                left.display().to_string(),
                "--right".into(),
                right.display().to_string(),
            ],
            16,
        ),
        (
            vec![
                "never-law".into(),
                "--n".into(),
                "6".into(),
                "--law".into(),
                fixture("laws/black-6.law"),
            ],
            32,
        ),
        (
            vec![
                "never-law".into(),
                "--n".into(),
                "5".into(),
                "--law".into(),
                fixture("laws/fishburn-5.law"),
            ],
            20,
        ),
        (
            vec![
                "arrow-sp".into(),
                "--n".into(),
                "4".into(),
                "--law".into(),
                fixture("laws/arrow-4.law"),
            ],
            8,
        ),
    ];
    for (args, size) in cases {
        let mut argv: Vec<&str> = vec!["generate"];
        argv.extend(args.iter().map(String::as_str));
        argv.extend(["--format", "json"]);
        let out = cdlab(&argv);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert_eq!(json(&out)["size"], size, "{args:?}");
    }
}

#[test]
fn arrow_family_rejects_other_conditions() {
    let out = cdlab(&[
        "generate",
        "arrow-sp",
        "--n",
        "5",
        "--law",
        &fixture("laws/fishburn-5.law"),
    ]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("xN3"));
}

#[test]
fn long_runs_need_the_flag() {
    let out = cdlab(&["generate", "fishburn", "--n", "11"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("--allow-long"));
    let out = cdlab(&["search-min", "--n", "9", "--k", "3", "--s", "3"]);
    assert_eq!(out.code, 3);
}

#[test]
fn long_runs_report_progress() {
    let out = cdlab(&[
        "generate",
        "fishburn",
        "--n",
        "11",
        "--allow-long",
        "--format",
        "json",
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(json(&out)["size"], 2324);
    assert!(out.stderr.contains("started") && out.stderr.contains("finished"));
}

#[test]
fn search_and_canon() {
    let found = cdlab(&["search-min", "--n", "8", "--k", "3", "--s", "4"]);
    assert_eq!(found.code, 0);
    let a = cdlab_stdin(&["canon", "-"], &found.stdout).stdout;
    let b = cdlab(&["canon", &fixture("copious-8.domain")]).stdout;
    assert_eq!(a, b);
    let none = cdlab(&[
        "search-min",
        "--n",
        "4",
        "--k",
        "3",
        "--s",
        "5",
        "--max-size",
        "6",
    ]);
    assert_eq!(none.code, 1);
}

#[test]
fn compare_and_uniform_subset() {
    let dir = tempfile::tempdir().unwrap();
    let black = dir.path().join("black.domain");
    let fish = dir.path().join("fish.domain");
    std::fs::write(&black, cdlab(&["generate", "black-sp", "--n", "6"]).stdout).unwrap();
    std::fs::write(&fish, cdlab(&["generate", "fishburn", "--n", "6"]).stdout).unwrap();
    let out = cdlab(&["compare", black.to_str().unwrap(), fish.to_str().unwrap()]);
    assert_eq!(json(&out)["order"], "less");
    let u = json(&cdlab(&["uniform-subset", black.to_str().unwrap()]));
    assert_eq!(u["condition"], "2N3");
    assert_eq!(u["alternatives"].as_array().unwrap().len(), 6);
}

#[test]
fn soc_ingestion() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("votes.soc");
    std::fs::write(
        &path,
        "# DATA TYPE: soc\n# NUMBER ALTERNATIVES: 4\n# NUMBER VOTERS: 6\n3: 4,1,2,3\n2: 4,2,1,3\n1: 4,3,2,1\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let v = json(&cdlab(&["ingest-soc", p]));
    assert_eq!(v["agents"], 6);
    assert_eq!(v["universal_top"], 4);
    assert_eq!(v["ample"], false);
    let v = json(&cdlab(&["ingest-soc", p, "--drop-universal-top"]));
    assert_eq!(v["dropped"][0], 4);
    assert_eq!(v["support_size"], 3);
    assert_eq!(v["vector"], serde_json::json!([1, 2, 3]));
    let indices = json(&cdlab(&["indices", p, "--index", "supp"]));
    assert_eq!(indices["indices"][0]["value"], 2.0);
    let bad = dir.path().join("bad.soc");
    std::fs::write(&bad, "# NUMBER ALTERNATIVES: 3\n# NUMBER VOTERS: 1\n1: 1,{2,3}\n").unwrap();
    let out = cdlab(&["ingest-soc", bad.to_str().unwrap()]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
}

#[test]
fn sampled_profile_round_trips_through_indices() {
    let f = fixture("copious-8.domain");
    let sample = cdlab(&["sample", &f, "--agents", "25", "--seed", "4"]);
    let v = json(&sample);
    let total: u64 = v["census"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 25);
    let soc = cdlab(&["sample", &f, "--agents", "25", "--seed", "4", "--format", "text"]);
    let a = cdlab_stdin(&["indices", "-"], &sample.stdout).stdout;
    let b = cdlab_stdin(&["indices", "-"], &soc.stdout).stdout;
    assert_eq!(a, b);
}
