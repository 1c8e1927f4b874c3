//! Commands on finite algebras read from files: check, solve, sharp,
//! quotient and construct.

use std::path::Path;

use serde_json::json;

use sea_core::catalog::{catalog, CatalogModel};
use sea_core::construct::{cartesian_product, horizontal_sum, interval_algebra};
use sea_core::finite::TableSea;
use sea_core::format::serialize_algebra;
use sea_core::seq_order::{sequential_quotient, QuotientError};
use sea_core::solver::{enumerate_with, SolveError, SolverConfig, HARD_MAX_SIZE};
use sea_core::{
    check_effect_axioms, check_sea_axioms, parse_algebra, AlgebraFile, FiniteEffectAlgebra, FiniteSea, SeqProductTable,
    Verdict,
};

use crate::report::{Inputs, Report};
use crate::{read, summary, CliError, Construction, Expect};

fn load(path: &Path, inputs: &mut Inputs) -> Result<AlgebraFile, CliError> {
    let text = read(path, inputs)?;
    parse_algebra(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source: Box::new(source),
    })
}

/// The effect algebra of `file`, or `None` after recording why not.
fn effect_algebra(file: &AlgebraFile, report: &mut Report, text: &mut String) -> Option<FiniteEffectAlgebra> {
    match file.effect_algebra() {
        Ok(alg) => Some(alg),
        Err(e) => {
            text.push_str(&e.report.render());
            report.add_set(e.report);
            None
        }
    }
}

fn names(alg: &FiniteEffectAlgebra) -> Vec<String> {
    alg.table().names().to_vec()
}

/// Row `a`, column `b` holds `a∘b`.
fn grid(alg: &FiniteEffectAlgebra, t: &SeqProductTable) -> String {
    let rows = t.render(alg.table());
    let w = alg.table().names().iter().map(|s| s.chars().count()).max().unwrap_or(1);
    let pad = |s: &str| format!("{s:>w$}");
    let mut out = format!("{}  |", pad("∘"));
    for n in alg.table().names() {
        out.push(' ');
        out.push_str(&pad(n));
    }
    out.push('\n');
    for (a, row) in alg.table().names().iter().zip(rows) {
        out.push_str(&format!("{}  |", pad(a)));
        for c in row {
            out.push(' ');
            out.push_str(&pad(&c));
        }
        out.push('\n');
    }
    out
}

pub fn check(path: &Path, seed: u64) -> Result<(Report, String), CliError> {
    let mut inputs = Inputs::default();
    let file = load(path, &mut inputs)?;
    let mut report = Report::new("check", seed, &inputs);
    let mut text = String::new();

    let elems: Vec<_> = file.table.elements().collect();
    let axioms = check_effect_axioms(&file.table, &elems);
    text.push_str(&axioms.render());
    report.add_set(axioms);
    report.stat("elements", elems.len());

    let mut result = json!({ "algebra": file.name(), "elements": file.table.names() });
    if let Ok(alg) = file.effect_algebra() {
        result["orthoalgebra"] = json!(alg.is_orthoalgebra());
        result["chain"] = json!(alg.order().is_chain());
        if let Some(p) = &file.product {
            let r = check_sea_axioms(&TableSea::new(&alg, p), &alg.element_list());
            result["commutative"] = json!(r.commutative);
            text.push_str(&r.checks.render());
            report.add_set(r.checks);
        }
    } else if file.product.is_some() {
        report.verdict("product table not checked: not an effect algebra", false);
    }
    report.result = result;
    text.push_str(&summary(&report));
    Ok((report, text))
}

pub fn solve(
    path: &Path,
    limit: usize,
    max_size: usize,
    expect: Option<Expect>,
    seed: u64,
) -> Result<(Report, String), CliError> {
    if max_size > HARD_MAX_SIZE {
        return Err(CliError::usage(format!("--max-size is at most {HARD_MAX_SIZE}")));
    }
    if limit == 0 {
        return Err(CliError::usage("--limit must be positive"));
    }
    let mut inputs = Inputs::default();
    let file = load(path, &mut inputs)?;
    inputs.arg("limit", limit);
    inputs.arg("max_size", max_size);
    inputs.arg("expect", format!("{expect:?}"));
    let mut report = Report::new("solve", seed, &inputs);
    let mut text = String::new();
    let Some(alg) = effect_algebra(&file, &mut report, &mut text) else {
        text.push_str(&summary(&report));
        return Ok((report, text));
    };

    let config = SolverConfig { max_size, limit };
    let out = enumerate_with(&alg, &config).map_err(|e| match e {
        SolveError::TooLarge { .. } => CliError::usage(format!("{e}; see --max-size")),
        other => CliError::usage(other),
    })?;

    let label = out.verdict.label();
    report.verdict(format!("solver verdict: {label}"), true);
    if let Some(want) = expect {
        let got = match out.verdict {
            Verdict::None => Expect::None,
            Verdict::Unique => Expect::Unique,
            Verdict::Multiple { .. } => Expect::Multiple,
        };
        report.verdict(format!("expected {want:?}, got {label}").to_lowercase(), got == want);
    }
    let s = &out.stats;
    report.stat("nodes", s.nodes);
    report.stat("dead_ends", s.dead_ends);
    report.stat("leaves", s.leaves);
    report.stat("leaves_rejected", s.leaves_rejected);
    for (i, f) in s.firings.iter().enumerate() {
        report.stat(&format!("firings_s{}", i + 1), *f);
    }
    report.result = json!({
        "algebra": alg.name(),
        "elements": names(&alg),
        "verdict": out.verdict,
        "tables": out.tables.iter().map(|t| t.render(alg.table())).collect::<Vec<_>>(),
        "truncated": out.truncated,
    });

    text.push_str(&format!(
        "{}: verdict {label}, {} table(s){} ({} nodes, {:.1} ms)\n",
        alg.name(),
        out.tables.len(),
        if out.truncated { ", truncated" } else { "" },
        s.nodes,
        s.wall_time.as_secs_f64() * 1e3
    ));
    for t in &out.tables {
        text.push('\n');
        text.push_str(&grid(&alg, t));
    }
    text.push_str(&summary(&report));
    Ok((report, text))
}

pub fn sharp(path: &Path, seed: u64) -> Result<(Report, String), CliError> {
    let mut inputs = Inputs::default();
    let file = load(path, &mut inputs)?;
    let mut report = Report::new("sharp", seed, &inputs);
    let mut text = String::new();
    let Some(alg) = effect_algebra(&file, &mut report, &mut text) else {
        text.push_str(&summary(&report));
        return Ok((report, text));
    };

    let sharp: Vec<&str> = alg.sharp_elements().into_iter().map(|a| alg.elem_name(a)).collect();
    let hats: Vec<(&str, Option<&str>)> = alg
        .elements()
        .map(|a| (alg.elem_name(a), alg.hat_id(a).map(|h| alg.elem_name(h))))
        .collect();
    text.push_str(&format!("sharp: {}\n", sharp.join(" ")));
    for (a, h) in &hats {
        text.push_str(&format!("  hat({a}) = {}\n", h.unwrap_or("none")));
        if h.is_none() {
            report.witnesses.push(format!("`{a}` has no least sharp dominator"));
        }
    }
    report.verdict("sharply dominating", hats.iter().all(|(_, h)| h.is_some()));
    report.stat("elements", alg.len());
    report.stat("sharp", sharp.len());
    report.result = json!({
        "algebra": alg.name(),
        "sharp": sharp,
        "hats": hats,
        "orthoalgebra": alg.is_orthoalgebra(),
    });
    text.push_str(&summary(&report));
    Ok((report, text))
}

pub fn quotient(path: &Path, a: &str, b: &str, seed: u64) -> Result<(Report, String), CliError> {
    let mut inputs = Inputs::default();
    let file = load(path, &mut inputs)?;
    inputs.arg("a", a);
    inputs.arg("b", b);
    let mut report = Report::new("quotient", seed, &inputs);
    let mut text = String::new();
    let Some(alg) = effect_algebra(&file, &mut report, &mut text) else {
        text.push_str(&summary(&report));
        return Ok((report, text));
    };
    let (ai, bi) = (alg.lookup(a).map_err(CliError::usage)?, alg.lookup(b).map_err(CliError::usage)?);

    let table = match &file.product {
        Some(p) => {
            let r = check_sea_axioms(&TableSea::new(&alg, p), &alg.element_list());
            let ok = r.passed();
            text.push_str(&r.checks.render());
            report.add_set(r.checks);
            if !ok {
                text.push_str(&summary(&report));
                return Ok((report, text));
            }
            p.clone()
        }
        None => {
            let out = enumerate_with(&alg, &SolverConfig { limit: 2, ..Default::default() }).map_err(CliError::usage)?;
            match out.verdict {
                Verdict::Unique => {
                    text.push_str("no product in the file; using the unique sequential product\n");
                    out.tables[0].clone()
                }
                v => {
                    return Err(CliError::usage(format!(
                        "no product in the file and the solver verdict is {}; add `prod` lines",
                        v.label()
                    )))
                }
            }
        }
    };
    let sea = match FiniteSea::new(alg.clone(), table) {
        Ok(s) => s,
        Err(e) => {
            report.verdict("sharply dominating", false);
            report.witnesses.push(e.to_string());
            text.push_str(&summary(&report));
            return Ok((report, text));
        }
    };

    let mut result = json!({ "algebra": alg.name(), "a": a, "b": b });
    match sequential_quotient(&sea, &ai, &bi) {
        Ok(w) => {
            let c = alg.elem_name(w.c);
            report.verdict("a/b exists", true);
            report.verdict("certified: b∘c = a, c ≤ b̂", w.certified);
            result["quotient"] = json!(c);
            result["unique"] = json!(w.unique);
            text.push_str(&format!("{a}/{b} = {c}{}\n", if w.unique { " (unique)" } else { "" }));
        }
        Err(e) => {
            let what = match e {
                QuotientError::NotBelow => "a ≤ b",
                QuotientError::NoFactor => "a = b∘d for some d",
                QuotientError::Certification(_) => "certified: b∘c = a, c ≤ b̂",
            };
            report.verdict(what, false);
            report.witnesses.push(format!("{a}/{b}: {e}"));
            result["quotient"] = serde_json::Value::Null;
        }
    }
    report.result = result;
    text.push_str(&summary(&report));
    Ok((report, text))
}

fn operand(spec: &str, inputs: &mut Inputs) -> Result<FiniteEffectAlgebra, CliError> {
    if let Ok(model) = catalog(spec) {
        inputs.arg("operand", spec);
        return match model {
            CatalogModel::Finite(a) => Ok(a),
            _ => Err(CliError::usage(format!("`{spec}` is not a finite algebra"))),
        };
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::usage(format!("`{spec}` is neither a catalog name nor a file")));
    }
    let file = load(path, inputs)?;
    file.effect_algebra().map_err(CliError::usage)
}

pub fn construct(what: &Construction, out: Option<&Path>, seed: u64) -> Result<(Report, String), CliError> {
    let mut inputs = Inputs::default();
    let (kind, alg) = match what {
        Construction::Catalog { name } => ("catalog", operand(name, &mut inputs)?),
        Construction::Product { factors } => {
            let fs = factors.iter().map(|f| operand(f, &mut inputs)).collect::<Result<Vec<_>, _>>()?;
            ("product", cartesian_product(&fs).map_err(CliError::usage)?.algebra)
        }
        Construction::Hsum { summands } => {
            let fs = summands.iter().map(|f| operand(f, &mut inputs)).collect::<Result<Vec<_>, _>>()?;
            ("hsum", horizontal_sum(&fs).map_err(CliError::usage)?)
        }
        Construction::Interval { algebra, b } => {
            let base = operand(algebra, &mut inputs)?;
            inputs.arg("b", b);
            let bi = base.lookup(b).map_err(CliError::usage)?;
            ("interval", interval_algebra(&base, bi).map_err(CliError::usage)?)
        }
    };
    inputs.arg("kind", kind);
    let mut report = Report::new("construct", seed, &inputs);
    let file = serialize_algebra(alg.table(), None);
    report.verdict("effect algebra axioms", true);
    report.stat("elements", alg.len());
    report.result = json!({ "algebra": alg.name(), "elements": names(&alg), "file": file });

    let text = match out {
        Some(p) => {
            std::fs::write(p, &file).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            format!("wrote {} ({} elements) to {}\n", alg.name(), alg.len(), p.display())
        }
        None => file,
    };
    Ok((report, text))
}
