use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn svbr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svbr"))
        .args(args)
        .env_remove("SVBR_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

const SIGMA: &str = "colors: 2\nF-: (1 _ _)\nb: B2: 1\nF+: (2 _ _)\n";

#[test]
fn expansion_is_one_reduction_away() {
    let a = write("sigma.sp", SIGMA);
    let out = svbr(&["expand", a.to_str().unwrap(), "--leaf", "1", "--color", "2"]);
    assert!(out.status.success());
    let b = write("sigma-expanded.sp", &stdout(&out));
    let out = svbr(&["eq", "--budget", "5000", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "Equal (script: 1 reduction)");
}

#[test]
fn distinct_elements_are_separated() {
    let a = write("sep-a.sp", SIGMA);
    let b = write("sep-b.sp", "colors: 2\nF-: (1 _ _)\nb: B2: e\nF+: (1 _ _)\n");
    let out = svbr(&["eq", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("NotEqual"));
}

#[test]
fn algebra_verbs_print_parseable_diagrams() {
    let a = write("alg.sp", SIGMA);
    let p = a.to_str().unwrap();
    let inv = stdout(&svbr(&["inv", p]));
    assert_eq!(inv, "colors: 2\nF-: (2 _ _)\nb: B2: -1\nF+: (1 _ _)\n");
    let i = write("alg-inv.sp", &inv);
    let prod = svbr(&["mul", p, i.to_str().unwrap()]);
    assert_eq!(stdout(&prod), "colors: 2\nF-: _\nb: B1: e\nF+: _\n");
    let crossed = stdout(&svbr(&["cross", p, "--leaf", "1", "--outer", "1", "--inner", "2"]));
    let c = write("alg-cross.sp", &crossed);
    assert_eq!(stdout(&svbr(&["cross", c.to_str().unwrap(), "--leaf", "1", "--remove"])), SIGMA);
    let e = write("alg-exp.sp", "colors: 1\nF-: (1 _ _)\nb: B2: e\nF+: (1 _ _)\n");
    let r = svbr(&["reduce", "--log", e.to_str().unwrap()]);
    assert_eq!(stdout(&r), "# reduce leaves 1,2\ncolors: 1\nF-: _\nb: B1: e\nF+: _\n");
}

#[test]
fn homology_of_the_petersen_graph() {
    let out = svbr(&["homology", "--graph", "K5", "--max-dim", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("H~_0 = 0\n"));
    assert!(s.contains("H~_1 = Z^6\n"));
}

#[test]
fn homology_of_a_facet_file() {
    // boundary of a triangle
    let f = write("circle.txt", "0 1\n1 2\n# comment\n0 2\n");
    let s = stdout(&svbr(&["homology", "--facets", f.to_str().unwrap(), "--max-dim", "1"]));
    assert_eq!(s, "f-vector: [3, 3]\nH~_0 = 0\nH~_1 = Z^1\n");
}

#[test]
fn matching_connectivity_exit_codes() {
    let out = svbr(&["matching", "--graph", "K7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("H~_1 = Z/3"));
    let out = svbr(&["matching", "--graph", "K7", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL: 1-acyclic + connected check"));
}

#[test]
fn verify_suites() {
    let out = svbr(&["verify", "--suite", "cross-relation"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = svbr(&["verify", "--all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let names: Vec<String> = stdout(&out).lines().map(|l| l.split(':').next().unwrap().to_string()).collect();
    assert_eq!(
        names,
        [
            "pass cross-relation",
            "pass group-laws",
            "pass matching-K",
            "pass join-lemma",
            "pass morse-figure10",
            "pass inequalities"
        ]
    );
}

#[test]
fn morse_stats_of_a_bottleneck_braige() {
    let z = write(
        "bottleneck.sp",
        "colors: 2\nF-: _ _ _ _ _ _ _ _ _\nb: B9: e\nF+: _ (1 (2 _ _) (2 _ _)) _ (1 (2 _ _) _)\n",
    );
    let out = svbr(&["morse", "stats", z.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("height = ((1, 1), 4)"));
    assert!(s.contains("classification: bottleneck merge at foot 4"));
}

#[test]
fn render_is_deterministic() {
    let a = write("render.sp", SIGMA);
    let out = write("render.svg", "");
    assert!(svbr(&["render", a.to_str().unwrap(), "-o", out.to_str().unwrap()]).status.success());
    let first = fs::read_to_string(&out).unwrap();
    assert!(first.starts_with("<svg"));
    assert_eq!(stdout(&svbr(&["render", a.to_str().unwrap()])), first);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(svbr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(svbr(&["eq", "/nonexistent/a.sp", "/nonexistent/b.sp"]).status.code(), Some(2));
    let bad = write("bad.sp", "colors: 2\nF-: (1 _ _)\n");
    assert_eq!(svbr(&["inv", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(svbr(&["homology", "--graph", "Q4"]).status.code(), Some(2));
}

#[test]
fn budget_from_the_environment() {
    use rand::{Rng, SeedableRng};
    use svbr::spraige::{random, svbr_equal, Budget, Verdict};
    // two stacked gadgets: a one-state search cannot remove both
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let (x, y) = (0..500)
        .find_map(|_| {
            let x = random::element(&mut rng, 2, 2, 4);
            let mut y = x.clone();
            for _ in 0..2 {
                let leaf = rng.gen_range(1..=y.leaves());
                let outer = rng.gen_range(1..=2);
                y = y.cross_insert(leaf, outer, 3 - outer).unwrap();
            }
            (svbr_equal(&y, &x, Budget::with_states(1)) == Verdict::Unknown
                && svbr_equal(&y, &x, Budget::default()).is_equal())
            .then_some((x, y))
        })
        .expect("some rewrite needs a real search");
    let a = write("env-a.sp", &y.to_file_string());
    let b = write("env-b.sp", &x.to_file_string());
    let run = |budget: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_svbr"));
        c.args(["eq", a.to_str().unwrap(), b.to_str().unwrap()]).env_remove("SVBR_BUDGET");
        if let Some(v) = budget {
            c.env("SVBR_BUDGET", v);
        }
        c.output().unwrap()
    };
    let out = run(Some("1"));
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).starts_with("Unknown"));
    assert_eq!(run(None).status.code(), Some(0));
}
