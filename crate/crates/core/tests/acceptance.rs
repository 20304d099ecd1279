//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use hermeq_core::reproduce::{report_json, reproduce_all, run_criterion, Fixtures, CRITERIA};
use hermeq_core::tables;

fn determinism(fx: &Fixtures) -> Result<(), String> {
    let ids = [1, 6, 10, 13];
    let a: Vec<_> = ids.iter().map(|&i| run_criterion(i, fx)).collect();
    let b: Vec<_> = ids.iter().map(|&i| run_criterion(i, fx)).collect();
    (report_json(&a) == report_json(&b))
        .then_some(())
        .ok_or_else(|| "repeated run produced a different report".into())
}

fn corrupted_fixture() -> Result<(), String> {
    let dir = std::env::temp_dir().join(format!("hermeq-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for i in 1..=3 {
        let mut text = tables::builtin_text(i).unwrap().to_string();
        if i == 2 {
            text = text.replacen("\"-5\"", "\"-6\"", 1);
        }
        std::fs::write(dir.join(format!("table{i}.json")), text).map_err(|e| e.to_string())?;
    }
    let fx = Fixtures::from_dir(&dir);
    let bad = run_criterion(7, &fx);
    let good = run_criterion(6, &fx);
    std::fs::remove_dir_all(&dir).ok();
    if bad.passed || !bad.detail.contains("checksum") {
        return Err(format!("corrupted table 2 not reported: {}", bad.detail));
    }
    if !good.passed {
        return Err("intact table 1 failed next to a corrupted table 2".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let fx = Fixtures::builtin();
    let results = reproduce_all(&fx);
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria passed", CRITERIA.len());

    let mut ok = passed == CRITERIA.len() && results.len() == CRITERIA.len();
    for (name, check) in [
        ("report determinism", determinism(&fx)),
        ("corrupted fixture control", corrupted_fixture()),
    ] {
        match check {
            Ok(()) => println!("[PASS] {name}"),
            Err(e) => {
                println!("[FAIL] {name}: {e}");
                ok = false;
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
