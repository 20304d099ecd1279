use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use hermeq_core::algebra::zeta_lattice;
use hermeq_core::bounds::bound_report;
use hermeq_core::equivalence::{
    gl2_act, gl2_related, gl2_witness_solve, hermite_witness_check, partition_gl2, reducible_pair, z_equiv_test,
    Gl2Witness,
};
use hermeq_core::exact::{discriminant, IntPoly};
use hermeq_core::family::{
    build_kit, check_params, find_params, generate_certified_pair, verify_kit_identities, FamilyParams,
};
use hermeq_core::form::{form_content, hermite_form};
use hermeq_core::json::{
    form_to_json, int_matrix_to_json, lattice_to_json, parse_int, parse_ints, parse_poly, poly_to_json,
    rational_to_json,
};
use hermeq_core::quartic::{iota, principality_evidence, verify_example};
use hermeq_core::reproduce::{report_json, reproduce_all, Fixtures};
use hermeq_core::tables::{self, compare_classes, Table};
use hermeq_core::{Error, Result};

use super::{Command, FamilyCmd, Outcome, QuarticCmd};

/// Inline JSON, or the contents of a file when prefixed with `@`.
fn read_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn poly(arg: &str) -> Result<IntPoly> {
    let f = parse_poly(&read_arg(arg)?)?;
    if f.is_zero() {
        return Err(Error::Domain("the zero polynomial has no degree".into()));
    }
    Ok(f)
}

fn ints(arg: &str) -> Result<Vec<BigInt>> {
    parse_ints(&read_arg(arg)?)
}

fn yes(output: Value) -> Result<Outcome> {
    Ok(Outcome { output, affirmative: true })
}

fn verdict(output: Value, affirmative: bool) -> Result<Outcome> {
    Ok(Outcome { output, affirmative })
}

fn gl2_witness_json(f: &IntPoly, w: &Gl2Witness) -> Result<Value> {
    Ok(json!({
        "gamma": int_matrix_to_json(&w.gamma),
        "sign": w.sign,
        "minimal_polynomial": poly_to_json(&gl2_act(f, &w.polynomial_action(), w.sign)?),
    }))
}

fn load_table(source: &str) -> Result<Table> {
    if let Some(i) = source.strip_prefix("builtin:") {
        let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad table index {i:?}")))?;
        return tables::builtin(i);
    }
    let text = std::fs::read_to_string(source).map_err(|e| Error::Parse(format!("{source}: {e}")))?;
    tables::parse_table(&text)
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Form(p) => {
            let f = poly(&p.poly)?;
            let form = hermite_form(&f)?;
            yes(json!({
                "poly": poly_to_json(&f),
                "n": f.deg()?,
                "form": form_to_json(&form),
                "content": form_content(&form)?.to_string(),
            }))
        }
        Command::Disc(p) => {
            let f = poly(&p.poly)?;
            yes(json!({ "poly": poly_to_json(&f), "discriminant": discriminant(&f)?.to_string() }))
        }
        Command::Order { poly: p, k } => {
            let f = poly(&p.poly)?;
            let l = zeta_lattice(&f, *k)?;
            yes(json!({
                "poly": poly_to_json(&f),
                "k": k,
                "lattice": lattice_to_json(&l),
                "is_order": l.is_order()?,
                "trace_discriminant": rational_to_json(&l.trace_discriminant()?),
            }))
        }
        Command::Normform { poly: p, k } => {
            let f = poly(&p.poly)?;
            let r = zeta_lattice(&f, 0)?;
            let i = zeta_lattice(&f, *k)?;
            yes(json!({
                "poly": poly_to_json(&f),
                "k": k,
                "norm": rational_to_json(&i.norm_over(&r)?),
                "basis": lattice_to_json(&i),
                "form": form_to_json(&i.norm_form(&r)?),
            }))
        }
        Command::CheckZ { poly: p, other } => {
            let (f, g) = (poly(&p.poly)?, poly(other)?);
            match z_equiv_test(&f, &g)? {
                Some(w) => yes(json!({
                    "equivalent": true,
                    "eps": w.eps,
                    "a": w.a.to_string(),
                    "root_map": poly_to_json(&w.root_map()),
                })),
                None => verdict(json!({ "equivalent": false }), false),
            }
        }
        Command::CheckGl2 { poly: p, beta, target } => {
            let f = poly(&p.poly)?;
            let beta = ints(beta)?;
            let (found, scope) = match target {
                Some(t) => (gl2_related(&f, &beta, &ints(t)?)?, "target = (a beta + b)/(c beta + d)"),
                None => (gl2_witness_solve(&f, &beta)?, "beta = (a alpha + b)/(c alpha + d)"),
            };
            let hypothesis = "tests the given embedding only; polynomial-level inequivalence needs full symmetric Galois group";
            match found {
                Some(w) => yes(json!({ "witness": gl2_witness_json(&f, &w)?, "relation": scope })),
                None => verdict(json!({ "witness": Value::Null, "relation": scope, "hypothesis": hypothesis }), false),
            }
        }
        Command::CheckHermite { poly: p, other, expr } => {
            let (f, g, e) = (poly(&p.poly)?, poly(other)?, poly(expr)?);
            match hermite_witness_check(&f, &g, &e)? {
                Some(u) => yes(json!({
                    "equivalent": true,
                    "transition": int_matrix_to_json(&u),
                    "det": u.det()?.to_string(),
                })),
                None => verdict(
                    json!({
                        "equivalent": Value::Null,
                        "note": "no witness for this expression; this does not prove inequivalence",
                    }),
                    false,
                ),
            }
        }
        Command::Partition { table, sequential } => {
            let t = load_table(table)?;
            let p = partition_gl2(&t.poly, &t.betas, !sequential)?;
            let computed: Vec<Vec<usize>> =
                p.classes.iter().map(|c| c.iter().map(|x| x + 1).collect()).collect();
            let diff = compare_classes(&computed, &t.printed_classes);
            yes(json!({
                "table": t.name,
                "poly": poly_to_json(&t.poly),
                "class_count": computed.len(),
                "classes": computed,
                "matches_printed": diff.exact(),
                "diff": diff,
            }))
        }
        Command::ReduciblePair(p) => {
            let f = poly(&p.poly)?;
            let r = reducible_pair(&f)?;
            yes(json!({
                "f": poly_to_json(&f),
                "g": poly_to_json(&r.g),
                "h": poly_to_json(&r.h),
                "witness": poly_to_json(&r.witness),
                "transition": int_matrix_to_json(&r.transition),
                "discriminant": discriminant(&r.g)?.to_string(),
            }))
        }
        Command::Family { action } => family(action),
        Command::Quartic { action } => quartic(action),
        Command::Bounds { n, disc, monic } => {
            let d = parse_int(disc)?;
            yes(bound_report(*n, &d, *monic)?.to_json())
        }
        Command::ReproduceAll { fixtures } => {
            let fx = match fixtures {
                Some(dir) => Fixtures::from_dir(Path::new(dir)),
                None => Fixtures::builtin(),
            };
            let results = reproduce_all(&fx);
            for r in &results {
                eprintln!("{}", r.line());
            }
            let all = results.iter().all(|r| r.passed);
            verdict(report_json(&results), all)
        }
    }
}

fn family(cmd: &FamilyCmd) -> Result<Outcome> {
    match cmd {
        FamilyCmd::Kit { n } => {
            let kit = build_kit(*n)?;
            let checks = verify_kit_identities(&kit);
            let all = checks.iter().all(|c| c.holds);
            verdict(
                json!({
                    "n": n,
                    "a": poly_to_json(&kit.a),
                    "b": poly_to_json(&kit.b),
                    "h": poly_to_json(&kit.h),
                    "k": poly_to_json(&kit.k),
                    "identities": checks,
                }),
                all,
            )
        }
        FamilyCmd::FindParams { n, monic, limit } => {
            let params = find_params(*n, *limit, *monic)?;
            yes(json!(params))
        }
        FamilyCmd::Gen { n, c, t, p, out } => {
            let p = match p {
                Some(p) => *p,
                None => find_params(*n, 10_000, true)?.p,
            };
            let params = FamilyParams { n: *n, p, c: *c, t: *t };
            let bad = check_params(&params)?;
            if !bad.is_empty() {
                return Err(Error::Precondition(bad.join("; ")));
            }
            let bundle = generate_certified_pair(&params)?.to_json();
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&bundle).expect("serializable");
                std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            yes(bundle)
        }
    }
}

fn quartic(cmd: &QuarticCmd) -> Result<Outcome> {
    match cmd {
        QuarticCmd::Iota(p) => {
            let f = poly(&p.poly)?;
            let pair = iota(&f)?;
            yes(json!({
                "poly": poly_to_json(&f),
                "a": int_matrix_to_json(pair.a.doubled()),
                "b": int_matrix_to_json(pair.b.doubled()),
                "encoding": "doubled Gram matrices",
            }))
        }
        QuarticCmd::VerifyExample => {
            let r = verify_example()?;
            verdict(r.to_json(), r.passed())
        }
        QuarticCmd::PrincipalEvidence { poly: p, bound } => {
            let f = poly(&p.poly)?;
            let e = principality_evidence(&f, *bound)?;
            let found = e.generator.is_some();
            let mut out = e.to_json();
            out["poly"] = poly_to_json(&f);
            verdict(out, found)
        }
    }
}
