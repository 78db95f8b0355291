//! Acceptance criteria 1–10. Runs `nilp2 suite acceptance` three times
//! (twice on one worker, once on eight), prints one PASS/FAIL line per
//! criterion and fails if any criterion fails. All comparisons are exact
//! integer or rational equalities.

use std::path::Path;
use std::process::Command;
use std::time::Duration;

use nilp2_cli::report::strip_timing;
use serde_json::Value;

fn run_suite(dir: &Path, tag: &str, threads: usize) -> (Value, String) {
    let out = dir.join(format!("{tag}.json"));
    let output = Command::new(env!("CARGO_BIN_EXE_nilp2"))
        .args(["suite", "acceptance", "--threads", &threads.to_string(), "--out"])
        .arg(&out)
        .output()
        .expect("binary runs");
    assert!(output.status.code().is_some(), "suite terminated by a signal");
    let text = std::fs::read_to_string(&out).expect("report written");
    (serde_json::from_str(&text).expect("report is JSON"), text)
}

fn criterion(report: &Value, id: u32) -> &Value {
    report["verdicts"]
        .as_array()
        .expect("verdicts")
        .iter()
        .find(|v| v["name"] == format!("criterion-{id}"))
        .unwrap_or_else(|| panic!("criterion {id} missing"))
}

fn elapsed(v: &Value) -> Duration {
    Duration::from_millis(v["wall_time_ms"].as_u64().expect("timing"))
}

struct Line {
    id: u32,
    pass: bool,
    text: String,
}

fn line(id: u32, pass: bool, text: String) -> Line {
    Line { id, pass, text }
}

fn lemma_bil(r: &Value) -> Line {
    let c = criterion(r, 1);
    let d = &c["detail"];
    let (a, b, ctl) = (&d["p3_d2"], &d["p5_d2"], &d["control_p3_d1"]);
    let t = elapsed(c);
    let pass = c["holds"] == true
        && a["maps_checked"] == 6561
        && a["satisfying_count"] == 0
        && b["maps_checked"] == 390_625
        && b["satisfying_count"] == 0
        && ctl["satisfying_count"].as_u64().is_some_and(|s| s >= 1)
        && t < Duration::from_secs(10);
    line(1, pass, format!(
        "satisfying maps (3,2,2) {}/{} == 0, (5,2,2) {}/{} == 0, control (3,2,1) {} >= 1 [exact]; {:.2?} < 10s",
        a["satisfying_count"], a["maps_checked"], b["satisfying_count"], b["maps_checked"], ctl["satisfying_count"], t
    ))
}

fn counting(r: &Value) -> Line {
    let c = criterion(r, 2);
    let t = elapsed(c);
    let mismatches = c["detail"]["mismatches"].as_array().map_or(usize::MAX, Vec::len);
    let pass = c["holds"] == true && c["detail"]["cells"] == 90 && mismatches == 0 && t < Duration::from_secs(1);
    line(2, pass, format!(
        "packing_possible == (d == 1) on {} cells p in {{3,5,7}}, 2<=n<=6, 1<=d<=6; mismatches {mismatches} == 0 [exact]; {t:.2?} < 1s",
        c["detail"]["cells"]
    ))
}

fn coherence(r: &Value) -> Line {
    let c = criterion(r, 3);
    let t = elapsed(c);
    let rows = c["detail"]["rows"].as_array().expect("rows");
    let agree = rows.iter().filter(|x| x["group_holds"] == x["reduced_holds"]).count();
    let pass = c["holds"] == true && rows.len() == 12 && agree == 12 && t < Duration::from_secs(60);
    line(3, pass, format!(
        "group-level vs reduced sigma agree on {agree}/{} (4 groups x k=1..3) [exact]; {t:.2?} < 60s",
        rows.len()
    ))
}

fn sigma_profile(r: &Value) -> Line {
    let c = criterion(r, 4);
    let d = &c["detail"];
    let (e, h) = (&d["extraspecial_3_2"], &d["heisenberg_3_2_1"]);
    let dens = &h["density"];
    let pass = c["holds"] == true
        && e["sigma_1"] == true
        && e["sigma_2"] == true
        && h["sigma_1"] == true
        && h["sigma_2"] == false
        && h["witness_revalidated"] == true
        && h["group_witness_revalidated"] == true
        && dens["failing_subspace_fraction"] == "1/13"
        && dens["unreachable_target_fraction"] == "8/9";
    line(4, pass, format!(
        "extraspecial(3,2) sigma1={} sigma2={}; heisenberg(3,2,1) sigma1={} sigma2={} witness revalidated={}/{}; \
         density {} == 1/13, unreachable {} == 8/9 [exact rationals]",
        e["sigma_1"], e["sigma_2"], h["sigma_1"], h["sigma_2"], h["witness_revalidated"], h["group_witness_revalidated"],
        dens["failing_subspace_fraction"], dens["unreachable_target_fraction"]
    ))
}

fn class_three(r: &Value) -> Line {
    let c = criterion(r, 5);
    let t = elapsed(c);
    let (a, b) = (&c["detail"]["ut_2_4"], &c["detail"]["ut_3_4"]);
    let pass = c["holds"] == true
        && a["laurent"]["holds"] == true
        && b["laurent"]["holds"] == true
        && a["laurent"]["series"]["orders"] == serde_json::json!([64, 8, 2, 1])
        && b["laurent"]["series"]["orders"] == serde_json::json!([729, 27, 3, 1])
        && a["hall_witt"]["holds"] == true
        && a["hall_witt"]["cases_checked"] == 262_144
        && a["hall_witt"]["mode"]["mode"] == "exhaustive"
        && b["hall_witt"]["holds"] == true
        && b["hall_witt"]["cases_checked"] == 100_000
        && t < Duration::from_secs(60);
    line(5, pass, format!(
        "series ut(2,4) {} ut(3,4) {}; |gamma3| {} <= {} and {} <= {}; Hall-Witt {} exhaustive triples, {} seeded samples [exact]; {t:.2?} < 60s",
        a["laurent"]["series"]["orders"], b["laurent"]["series"]["orders"],
        a["laurent"]["gamma3_order"], a["laurent"]["bound"], b["laurent"]["gamma3_order"], b["laurent"]["bound"],
        a["hall_witt"]["cases_checked"], b["hall_witt"]["cases_checked"]
    ))
}

fn identities(r: &Value) -> Line {
    let c = criterion(r, 6);
    let (a, b) = (&c["detail"]["extraspecial_3_1"], &c["detail"]["extraspecial_5_1"]);
    let pass = c["holds"] == true
        && a["holds"] == true
        && b["holds"] == true
        && a["triples_checked"] == 27u64.pow(3)
        && b["triples_checked"] == 125u64.pow(3);
    line(6, pass, format!(
        "power and product identities exhaustive: extraspecial(3,1) {} pairs/{} triples, extraspecial(5,1) {} pairs/{} triples [exact]",
        a["pairs_checked"], a["triples_checked"], b["pairs_checked"], b["triples_checked"]
    ))
}

fn chains(r: &Value) -> Line {
    let c = criterion(r, 7);
    let d = &c["detail"];
    let expected = serde_json::json!([9 * 27 * 27 * 27, 81 * 27 * 27, 729 * 27, 6561]);
    let pass = c["holds"] == true
        && d["chain"]["centralizer_orders"] == expected
        && d["chain"]["strict"] == serde_json::json!([true, true, true])
        && d["chain"]["verified"] == true
        && d["maximality"]["validated"] == true;
    line(7, pass, format!(
        "centralizer orders {} == {expected}, strict by inclusion {}; maximal element at k=2 validated={} [exact]",
        d["chain"]["centralizer_orders"], d["chain"]["strict"], d["maximality"]["validated"]
    ))
}

fn comprehensive(r: &Value) -> Line {
    let c = criterion(r, 8);
    let t = elapsed(c);
    let d = &c["detail"];
    let scan = &d["star_scan_extraspecial_3_2"];
    let pass = c["holds"] == true
        && scan["all_satisfied"] == true
        && scan["truncated"] == false
        && d["cyclic_9"]["height_of_cube"] == 1
        && d["cyclic_9"]["cube_subgroup_purity"]["holds"] == false
        && d["elementary"]["impure"] == serde_json::json!([])
        && t < Duration::from_secs(1);
    line(8, pass, format!(
        "extension instances {}/{} satisfied (rank <= 1); ht(a^3) in C9 = {} == 1; <a^3> pure = {}; elementary subgroups pure {}/{} [exact]; {t:.2?} < 1s",
        scan["satisfied"], scan["instances"], d["cyclic_9"]["height_of_cube"],
        d["cyclic_9"]["cube_subgroup_purity"]["holds"],
        d["elementary"]["subgroups_checked"].as_u64().unwrap_or(0)
            - d["elementary"]["impure"].as_array().map_or(0, |v| v.len() as u64),
        d["elementary"]["subgroups_checked"]
    ))
}

fn certificates(r: &Value) -> Line {
    let c = criterion(r, 9);
    let rows = c["detail"]["certificates"].as_array().expect("rows");
    let good = rows
        .iter()
        .filter(|x| x["certificate"]["passed"] == true && x["table_validation"]["associativity_exhaustive"] == true)
        .count();
    let pass = c["holds"] == true
        && good == rows.len()
        && c["detail"]["central_product_order"] == 243
        && c["detail"]["central_product_equals_extraspecial_3_2"] == true;
    line(9, pass, format!(
        "{good}/{} groups pass every certificate check with exhaustive associativity; central product order {} == 243, equals extraspecial(3,2) = {} [exact]",
        rows.len(), c["detail"]["central_product_order"], c["detail"]["central_product_equals_extraspecial_3_2"]
    ))
}

#[test]
fn acceptance_criteria() {
    let dir = tempfile::tempdir().expect("tempdir");
    let (first, first_text) = run_suite(dir.path(), "first", 1);
    let (second, _) = run_suite(dir.path(), "second", 1);
    let (eight, _) = run_suite(dir.path(), "eight", 8);

    let mut lines = vec![
        lemma_bil(&first),
        counting(&first),
        coherence(&first),
        sigma_profile(&first),
        class_three(&first),
        identities(&first),
        chains(&first),
        comprehensive(&first),
        certificates(&first),
    ];

    let strip = |mut v: Value| {
        strip_timing(&mut v);
        serde_json::to_string(&v).expect("serializes")
    };
    let (a, b, c) = (strip(first.clone()), strip(second), strip(eight));
    let in_process = criterion(&first, 10)["holds"] == true;
    lines.push(line(10, a == b && a == c && in_process, format!(
        "reports byte-identical without wall_time_ms: run1 == run2 {}, 1 worker == 8 workers {}, in-process probe {} ({} bytes)",
        a == b, a == c, in_process, a.len()
    )));

    for l in &lines {
        println!("{} criterion {:>2}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.text);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria {failed:?}\n{first_text}");
    assert_eq!(first["exit_code"], 0);
}
