use xhomotopy::cli::{run, Output, EXIT_CAP, EXIT_USAGE};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn xh(args: &[&str]) -> Output {
    let mut argv = vec!["xhomotopy".to_string()];
    argv.extend(args.iter().map(|a| {
        if a.ends_with(".g") || a.ends_with(".map") {
            data(a)
        } else {
            a.to_string()
        }
    }));
    run(argv)
}

#[test]
fn example_walks_are_equal() {
    let out = xh(&["homotopy", "walks", "ex42.g", "a,c,b,c,e", "a,d,e"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("Equal\n"));
    assert!(out.stdout.contains("certificate"));
}

#[test]
fn verdict_exit_codes() {
    let out = xh(&["homotopy", "walks", "c5.g", "0,1,2,3,4,0", "0,4,3,2,1,0"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("abelianization"));
    let out = xh(&["homotopy", "walks", "square.g", "a,b,c", "a,d,c", "--looped"]);
    assert_eq!(out.code, 1);
    let out = xh(&["homotopy", "walks", "square.g", "a,b,c", "a,d,c"]);
    assert_eq!(out.code, 0);
    // a bound too small to meet and no invariant to separate
    let out = xh(&["homotopy", "walks", "wheel.g", "x,a,b,x,a,b,x", "x", "--max-len", "6"]);
    assert_eq!(out.code, 2, "{}", out.stdout);
}

#[test]
fn morphisms() {
    let out = xh(&["homotopy", "morphisms", "ex42.g", "ex42.g", "id42.map", "fold42.map"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = xh(&["homotopy", "morphisms", "ex42.g", "ex42.g", "id42.map", "nosuch.map"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn wheel_presentation() {
    let out = xh(&["pi1", "present", "wheel.g", "--base", "x"]);
    assert_eq!(out.code, 0);
    for e in ["e1", "e2", "e3", "e4", "e5"] {
        assert!(out.stdout.contains(&format!("  {e} = ")), "{}", out.stdout);
    }
    assert!(out.stdout.contains("abelian invariants: rank 0, torsion [2]"));
}

#[test]
fn presentation_json() {
    let out = xh(&["pi1", "present", "t.g", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["rank"], 0);
    assert_eq!(v["torsion"], serde_json::json!([2]));
    assert_eq!(v["relators"], serde_json::json!([[1, 1]]));
    assert_eq!(v["generators"].as_array().unwrap().len(), 1);
}

#[test]
fn graph_validation() {
    assert_eq!(xh(&["graph", "validate", "ex42.g"]).code, 0);
    assert_eq!(xh(&["graph", "validate", "broken.g"]).code, 1);
    let out = xh(&["graph", "validate", "nosuch.g"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.starts_with("error:"));
}

#[test]
fn walk_normalize() {
    let out = xh(&["walk", "normalize", "ex42.g", "a,c,b,c,e"]);
    assert_eq!(out.stdout, "a,c,e\n");
    let out = xh(&["walk", "normalize", "square.g", "a,a,b,b,a", "--looped"]);
    assert_eq!(out.stdout, "a\n");
    assert_eq!(xh(&["walk", "normalize", "ex42.g", "a,b"]).code, EXIT_USAGE);
}

#[test]
fn stiff_reduction() {
    let out = xh(&["reduce", "stiff", "ex42.g"]);
    assert!(out.stdout.contains("folds (3):"));
    assert!(out.stdout.contains("edge d e"));
    let a = xh(&["reduce", "stiff", "ex42.g", "--random", "--seed", "3", "--json"]);
    let b = xh(&["reduce", "stiff", "ex42.g", "--random", "--seed", "3", "--json"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["folds"].as_array().unwrap().len(), 3);
}

#[test]
fn van_kampen_commands() {
    let out = xh(&["pi1", "vankampen", "c5.g", "--part1", "0,1,2", "--part2", "2,3,4,0"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("abelian invariants: rank 1, torsion []"));
    let out = xh(&["pi1", "vankampen", "wheel.g", "--part1", "x,a,b,c", "--part2", "x,c,d,e,a"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("lies in neither part"));
}

#[test]
fn product_check() {
    let out = xh(&["pi1", "product-check", "p2.g", "k2.g", "--max-len", "6"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let out = xh(&["pi1", "product-check", "p2.g", "k2.g", "--max-len", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v["unreachable"].as_array().unwrap().contains(&serde_json::json!(["0|0", "1|0"])));
}

#[test]
fn hom_commands() {
    let out = xh(&["hom", "complex", "k2.g", "c5.g", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((v["cells0"].as_u64(), v["cells1"].as_u64(), v["cells2"].as_u64()), (Some(10), Some(10), Some(0)));
    let out = xh(&["hom", "exp", "k2.g", "k2.g"]);
    assert_eq!(out.stdout, "vertex 00\nvertex 01 loop\nvertex 10 loop\nvertex 11\nedge 00 11\n");
    let out = xh(&["hom", "compare", "k2.g", "c5.g", "--max-len", "8"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(xh(&["hom", "exp", "c5.g", "c5.g", "--cap", "1000"]).code, EXIT_CAP);
}

#[test]
fn usage_errors() {
    assert_eq!(xh(&["homotopy", "walks", "ex42.g", "a", "a", "--bogus"]).code, EXIT_USAGE);
    assert_eq!(xh(&["frobnicate"]).code, EXIT_USAGE);
    let help = xh(&["--help"]);
    assert_eq!(help.code, 0);
    for sub in ["graph", "walk", "homotopy", "reduce", "pi1", "hom"] {
        assert!(help.stdout.contains(sub));
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["pi1", "present", "wheel.g", "--json"];
    assert_eq!(xh(&args), xh(&args));
}
