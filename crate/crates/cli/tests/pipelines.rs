use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn monosim(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_monosim"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn monosim");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = monosim(args, stdin);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const THREE_PERMS: &str = r#"{"labels":[0,1,2,3],"permutations":[[0,1,2,3],[3,1,0,2],[2,3,1,0]]}"#;

#[test]
fn generated_dual2d_is_certified() {
    let inst = ok(&["gen", "dual2d"], "");
    let out = monosim(&["certify"], &inst);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], "NOT-EMBEDDABLE");
    assert_eq!(doc["kind"], "parallel");
}

#[test]
fn monotone_certification_of_dual2d_is_undecided() {
    let inst = ok(&["gen", "dual2d"], "");
    let out = monosim(&["certify", "--kind", "monotone"], &inst);
    assert_eq!(code(&out), 2);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], "UNDECIDED");
}

#[test]
fn primal2d_is_certified_against_monotone_embeddings() {
    let inst = ok(&["gen", "primal2d"], "");
    let out = monosim(&["certify"], &inst);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], "NOT-EMBEDDABLE");
    assert_eq!(doc["kind"], "monotone");
}

#[test]
fn higher_families_are_certified_with_spot_checks() {
    for (family, d) in [("dual3d", None), ("primal3d", None), ("dual-general", Some("4")), ("primal-general", Some("3"))] {
        let mut args = vec!["gen", family];
        if let Some(d) = d {
            args.extend(["--d", d]);
        }
        let inst = ok(&args, "");
        let out = monosim(&["certify", "--samples", "5", "--seed", "3"], &inst);
        assert_eq!(code(&out), 0, "{family}: {}", String::from_utf8_lossy(&out.stderr));
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(doc["verdict"], "NOT-EMBEDDABLE");
        assert_eq!(doc["spot_checks"].as_array().unwrap().len(), 5);
        // Same seed, same document.
        assert_eq!(out.stdout, monosim(&["certify", "--samples", "5", "--seed", "3"], &inst).stdout);
    }
}

#[test]
fn rank_embedding_verifies() {
    let emb = ok(&["embed", "--d", "3"], THREE_PERMS);
    assert_eq!(ok(&["verify"], &emb).trim(), "VERIFIED");
    let dual = ok(&["embed", "--d", "3", "--dual"], THREE_PERMS);
    assert_eq!(ok(&["verify"], &dual).trim(), "VERIFIED");
}

#[test]
fn duality_round_trips_through_the_cli() {
    let dual = ok(&["embed", "--d", "3", "--dual"], THREE_PERMS);
    let primal = ok(&["dualize"], &dual);
    assert_eq!(ok(&["verify"], &primal).trim(), "VERIFIED");
    let back = monosim(&["primalize"], &primal);
    assert_eq!(code(&back), 0);
    let text = String::from_utf8(back.stdout).unwrap();
    assert!(text.contains("\"hyperplanes\""));
    assert_eq!(ok(&["verify"], &text).trim(), "VERIFIED");
}

#[test]
fn claimed_embeddings_of_primal3d_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let inst = ok(&["gen", "primal3d"], "");
    let inst_path = write(dir.path(), "primal3d.json", &inst);
    let claims = [
        ok(&["embed", "--d", "3"], THREE_PERMS),
        ok(&["embed", "--d", "3", "--dual"], THREE_PERMS),
        // The instance itself minus one permutation embeds, but not the whole.
        ok(&["embed", "--d", "3"], &{
            let mut v: serde_json::Value = serde_json::from_str(&inst).unwrap();
            v["permutations"].as_array_mut().unwrap().pop();
            v.as_object_mut().unwrap().remove("groups");
            v.to_string()
        }),
        r#"{"dimension":3,"points":{},"directions":[]}"#.to_string(),
    ];
    for (i, claim) in claims.iter().enumerate() {
        let emb_path = write(dir.path(), &format!("claim{i}.json"), claim);
        let out = monosim(&["verify", "--embedding", &emb_path], &inst);
        assert_ne!(code(&out), 0, "claim {i} accepted");
        let out = monosim(&["verify", "--embedding", &emb_path, &inst_path], "");
        assert_ne!(code(&out), 0, "claim {i} accepted");
    }
}

#[test]
fn wrong_instance_is_not_verified() {
    let emb = ok(&["embed", "--d", "3"], THREE_PERMS);
    let other = r#"{"labels":[0,1,2,3],"permutations":[[3,2,1,0],[0,1,2,3],[1,0,3,2]]}"#;
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "other.json", other);
    let out = monosim(&["verify", "--instance", &p], &emb);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("NOT VERIFIED"));
}

#[test]
fn refute_reports_witnesses_and_degeneracy() {
    let inst = ok(&["gen", "dual-general", "--d", "3"], "");
    let w: serde_json::Value = serde_json::from_str(&ok(&["refute", "--at", "-1/2,5"], &inst)).unwrap();
    assert!(w["partition"].is_array() && w["farkas"].is_array());
    assert_eq!(code(&monosim(&["refute", "--at", "0,0"], &inst)), 3);

    let compact = ok(&["gen", "dual3d"], "");
    let v: serde_json::Value = serde_json::from_str(&ok(&["refute", "--at", "1/3,1/3"], &compact)).unwrap();
    assert_eq!(v["violated"], serde_json::json!([[0, 1]]));
}

#[test]
fn search_exit_codes_follow_the_outcome() {
    let found = monosim(&["search", "--d", "3", "--budget", "5"], THREE_PERMS);
    assert_eq!(code(&found), 0);
    let inst = ok(&["gen", "dual2d"], "");
    let missing = monosim(&["search", "--d", "2", "--budget", "50"], &inst);
    assert_eq!(code(&missing), 2);
    let doc: serde_json::Value = serde_json::from_slice(&missing.stdout).unwrap();
    assert_eq!(doc["kind"], "parallel");
}

#[test]
fn render_draws_planar_embeddings_deterministically() {
    let two = r#"{"labels":[0,1,2,3],"permutations":[[0,1,2,3],[2,0,3,1]]}"#;
    let emb = ok(&["embed", "--d", "2"], two);
    let svg = ok(&["render"], &emb);
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert_eq!(svg.matches("<circle").count(), 4);
    assert_eq!(svg, ok(&["render"], &emb));

    let dual = ok(&["embed", "--d", "2", "--dual"], two);
    let svg = ok(&["render"], &dual);
    assert_eq!(svg.matches("class=\"hyperplane\"").count(), 4);
    assert_eq!(svg.matches("stroke-dasharray").count(), 2);
}

#[test]
fn render_rejects_higher_dimensions() {
    let emb = ok(&["embed", "--d", "3"], THREE_PERMS);
    let out = monosim(&["render"], &emb);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("d=2 only"));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("inst.json");
    ok(&["gen", "dual3d", "--out", p.to_str().unwrap()], "");
    assert_eq!(std::fs::read_to_string(&p).unwrap(), ok(&["gen", "dual3d"], ""));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&monosim(&["nonsense"], "")), 1);
    assert_eq!(code(&monosim(&["gen", "dual-general"], "")), 1);
    assert_eq!(code(&monosim(&["gen", "no-such-family"], "")), 1);
    assert_eq!(code(&monosim(&["verify"], "not json")), 1);
    assert_eq!(code(&monosim(&["verify"], r#"{"labels":[]}"#)), 1);
    assert_eq!(code(&monosim(&["--help"], "")), 0);
}
