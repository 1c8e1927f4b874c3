//! Sampled and windowed suites: order, hilbert and fuzzy.

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use sea_core::catalog::{boolean, boolean_meet};
use sea_core::fuzzy::{fuzzy_hat, fuzzy_product, fuzzy_quotient, parse_pairs, FuzzyError};
use sea_core::hilbert::{
    check_quotient_roundtrip, check_sequential_order, check_characterization, EffectSampler, LOEWNER_TOL, QUOTIENT_TOL,
};
use sea_core::hs::HsModel;
use sea_core::seq_order::{
    all_triples, check_condition1, check_condition2, identity_suite, interval_sea, quotient_characterization,
    sequential_quotient,
};
use sea_core::{
    check_sea_axioms_sampled, Check, CheckSet, FiniteSea, FuzzySystem, HilbertEffects, OmegaOmegaStar, SeaModel,
};

use crate::report::{Inputs, Report};
use crate::{summary, CliError, FuzzyOp, HilbertSuite, Model, OrderSuite};

const MAX_DIM: usize = 8;
/// Interval suites check this many units `b`.
const INTERVAL_BASES: usize = 5;

pub struct OrderOpts {
    pub model: Model,
    pub suite: OrderSuite,
    pub samples: usize,
    pub dim: usize,
    pub size: usize,
    pub window: u64,
    pub tol: Option<f64>,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_dim(dim: usize) -> Result<(), CliError> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(CliError::usage(format!("--dim must be between 1 and {MAX_DIM}")))
    }
}

fn finish(mut report: Report, sets: Vec<CheckSet>) -> (Report, String) {
    let mut text = String::new();
    for s in sets {
        text.push_str(&s.render());
        report.add_set(s);
    }
    text.push_str(&summary(&report));
    (report, text)
}

/// `(y∘x, y)` for every sampled `(x, y, _)`: comparable by construction.
fn below_pairs<M: SeaModel>(m: &M, triples: &[(M::Elem, M::Elem, M::Elem)]) -> Vec<(M::Elem, M::Elem)> {
    triples.iter().map(|(x, y, _)| (m.product(y, x), y.clone())).collect()
}

fn order_suite<M: SeaModel>(m: &M, suite: OrderSuite, triples: &[(M::Elem, M::Elem, M::Elem)], bases: &[M::Elem]) -> Vec<CheckSet> {
    let raw: Vec<_> = triples.iter().map(|(x, y, _)| (x.clone(), y.clone())).collect();
    match suite {
        OrderSuite::Cond1 => {
            let mut pairs = below_pairs(m, triples);
            pairs.extend(raw);
            vec![check_condition1(m, &pairs)]
        }
        OrderSuite::Cond2 => {
            // (c, a, a ⊕ a′∘b) has a ≤ third, so the premise is often met
            let mut t = triples.to_vec();
            t.extend(triples.iter().filter_map(|(c, a, b)| {
                let up = m.sum(a, &m.product(&m.complement(a), b))?;
                Some((c.clone(), a.clone(), up))
            }));
            vec![check_condition2(m, &t)]
        }
        OrderSuite::Quotient => {
            let quotient = |a: &M::Elem, b: &M::Elem| sequential_quotient(m, a, b).ok().map(|w| w.c);
            vec![quotient_characterization(m, quotient, &raw)]
        }
        OrderSuite::Identities => vec![identity_suite(m, triples)],
        OrderSuite::Interval => {
            // ∘_b is built from quotients over b, so Condition (1) comes first
            let mut pairs = below_pairs(m, triples);
            pairs.extend(raw);
            let c1 = check_condition1(m, &pairs);
            if !c1.passed() {
                let mut refused = CheckSet::new("interval SEA", "not built");
                refused.push(Check::new("Condition (1) holds, so a/b exists below b").with_note("see condition 1"));
                refused.checks[0].fail("Condition (1) fails on this model");
                return vec![c1, refused];
            }
            let sub = &triples[..triples.len().min(200)];
            let mut sets = vec![c1];
            for b in bases.iter().filter(|b| !m.is_zero(b)).take(INTERVAL_BASES) {
                match interval_sea(m, b, sub) {
                    Ok(s) => sets.push(s),
                    Err(e) => {
                        let mut s = CheckSet::new("interval SEA", "not built");
                        let mut c = Check::new("interval exists");
                        c.fail(e.to_string());
                        s.push(c);
                        sets.push(s);
                    }
                }
            }
            sets
        }
    }
}

pub fn order(o: &OrderOpts, seed: u64) -> Result<(Report, String), CliError> {
    let mut inputs = Inputs::default();
    inputs.arg("model", format!("{:?}", o.model));
    inputs.arg("suite", format!("{:?}", o.suite));
    let mut r = rng(seed);
    let (sets, scope) = match o.model {
        Model::Boolean => {
            inputs.arg("size", o.size);
            let alg = boolean(o.size).map_err(CliError::usage)?;
            if alg.len() > 16 {
                return Err(CliError::usage("--size is at most 4 for boolean"));
            }
            let meet = boolean_meet(&alg);
            let sea = FiniteSea::new(alg, meet).map_err(CliError::usage)?;
            let elems = sea.elements();
            let triples = all_triples(&elems);
            (order_suite(&sea, o.suite, &triples, &elems), format!("Boolean {} exhaustive", elems.len()))
        }
        Model::Omega => {
            inputs.arg("window", o.window);
            if o.window > 40 {
                return Err(CliError::usage("--window is at most 40"));
            }
            let w = OmegaOmegaStar;
            let elems = w.window(o.window);
            let triples = all_triples(&elems);
            (order_suite(&w, o.suite, &triples, &elems), format!("ω+ω* window K={}", o.window))
        }
        Model::Fuzzy => {
            inputs.arg("size", o.size);
            inputs.arg("samples", o.samples);
            let sys = FuzzySystem::with_points(o.size);
            let triples: Vec<_> = (0..o.samples).map(|_| sys.sample_triple(&mut r)).collect();
            let bases: Vec<_> = triples.iter().map(|t| t.0.clone()).collect();
            (order_suite(&sys, o.suite, &triples, &bases), format!("fuzzy |X|={}, {} samples", o.size, o.samples))
        }
        Model::Hilbert => {
            check_dim(o.dim)?;
            let tol = o.tol.unwrap_or(QUOTIENT_TOL);
            inputs.arg("dim", o.dim);
            inputs.arg("samples", o.samples);
            inputs.arg("tol", tol);
            let h = HilbertEffects::with_tol(o.dim, tol);
            let mut s = EffectSampler::new(o.dim, r);
            let triples: Vec<_> = (0..o.samples).map(|_| s.triple()).collect();
            let bases: Vec<_> = (0..INTERVAL_BASES).map(|_| s.invertible_effect(0.2)).collect();
            (order_suite(&h, o.suite, &triples, &bases), format!("E(H) dim {}, {} samples, tol {tol:e}", o.dim, o.samples))
        }
        Model::Hs => {
            check_dim(o.dim)?;
            inputs.arg("dim", o.dim);
            inputs.arg("samples", o.samples);
            let mut s = EffectSampler::new(o.dim, r);
            let hs = HsModel::new(s.faithful_density()).map_err(CliError::usage)?;
            let triples: Vec<_> = (0..o.samples).map(|_| hs.sample_triple(&mut s)).collect();
            let bases: Vec<_> = triples.iter().map(|t| t.0.clone()).collect();
            (order_suite(&hs, o.suite, &triples, &bases), format!("HS dim {}, {} samples", o.dim, o.samples))
        }
    };
    let mut report = Report::new("order", seed, &inputs);
    report.result = json!({ "model": format!("{:?}", o.model).to_lowercase(), "suite": format!("{:?}", o.suite).to_lowercase(), "scope": scope });
    Ok(finish(report, sets))
}

pub fn hilbert(dim: usize, samples: usize, tol: Option<f64>, suite: HilbertSuite, seed: u64) -> Result<(Report, String), CliError> {
    check_dim(dim)?;
    let tol = tol.unwrap_or(match suite {
        HilbertSuite::SequentialOrder | HilbertSuite::Quotient => QUOTIENT_TOL,
        _ => LOEWNER_TOL,
    });
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::usage("--tol must lie in (0, 1)"));
    }
    let mut inputs = Inputs::default();
    inputs.arg("dim", dim);
    inputs.arg("samples", samples);
    inputs.arg("tol", tol);
    inputs.arg("suite", format!("{suite:?}"));
    let mut s = EffectSampler::new(dim, rng(seed));
    let sets = match suite {
        HilbertSuite::Axioms => {
            let h = HilbertEffects::with_tol(dim, tol);
            let triples: Vec<_> = (0..samples).map(|_| s.triple()).collect();
            vec![check_sea_axioms_sampled(&h, &triples).checks]
        }
        HilbertSuite::Characterization => vec![check_characterization(&mut s, samples, tol)],
        HilbertSuite::SequentialOrder => vec![check_sequential_order(&mut s, samples, tol)],
        HilbertSuite::Quotient => vec![check_quotient_roundtrip(&mut s, samples, tol)],
        HilbertSuite::Hs => {
            let hs = HsModel::new(s.faithful_density()).map_err(CliError::usage)?;
            let triples: Vec<_> = (0..samples).map(|_| hs.sample_triple(&mut s)).collect();
            vec![check_sea_axioms_sampled(&hs, &triples).checks]
        }
    };
    let mut report = Report::new("hilbert", seed, &inputs);
    report.result = json!({ "dim": dim, "samples": samples, "tol": tol, "suite": suite.to_possible_value().map(|v| v.get_name().to_string()) });
    Ok(finish(report, sets))
}

/// The base set is the points named in the operands, in order of first
/// mention.
fn fuzzy_system(operands: &[&str]) -> Result<FuzzySystem, CliError> {
    let mut points: Vec<String> = Vec::new();
    for text in operands {
        for (p, _) in parse_pairs(text).map_err(CliError::usage)? {
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    if points.is_empty() {
        return Err(CliError::usage("no points given; write elements as x=p/q pairs"));
    }
    Ok(FuzzySystem::new(points))
}

pub fn fuzzy(op: &FuzzyOp, seed: u64) -> Result<(Report, String), CliError> {
    let mut inputs = Inputs::default();
    let (operands, name): (Vec<&str>, &str) = match op {
        FuzzyOp::Product { f, g } => (vec![f, g], "product"),
        FuzzyOp::Quotient { f, g } => (vec![f, g], "quotient"),
        FuzzyOp::Hat { f } => (vec![f], "hat"),
        FuzzyOp::Check { points, samples } => {
            inputs.arg("points", points);
            inputs.arg("samples", samples);
            let sys = FuzzySystem::with_points(*points);
            let mut r = rng(seed);
            let triples: Vec<_> = (0..*samples).map(|_| sys.sample_triple(&mut r)).collect();
            let mut sets = vec![check_sea_axioms_sampled(&sys, &triples).checks];
            for suite in [OrderSuite::Cond1, OrderSuite::Cond2, OrderSuite::Identities] {
                sets.extend(order_suite(&sys, suite, &triples, &[]));
            }
            let mut report = Report::new("fuzzy check", seed, &inputs);
            report.result = json!({ "points": sys.points(), "samples": samples });
            return Ok(finish(report, sets));
        }
    };
    inputs.arg("op", name);
    for o in &operands {
        inputs.arg("operand", o);
    }
    let sys = fuzzy_system(&operands)?;
    let elems = operands
        .iter()
        .map(|t| sys.parse_element(t))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::usage)?;
    let mut report = Report::new(&format!("fuzzy {name}"), seed, &inputs);
    let value = match op {
        FuzzyOp::Product { .. } => Some(fuzzy_product(&elems[0], &elems[1]).map_err(CliError::usage)?),
        FuzzyOp::Hat { .. } => Some(fuzzy_hat(&elems[0])),
        FuzzyOp::Quotient { .. } => match fuzzy_quotient(&elems[0], &elems[1]) {
            Ok(q) => Some(q),
            Err(FuzzyError::NotBelow { .. }) => {
                let (f, g) = (elems[0].values(), elems[1].values());
                if let Some(i) = (0..f.len()).find(|&i| f[i] > g[i]) {
                    report.witnesses.push(format!("f ≰ g at `{}`", sys.points()[i]));
                }
                None
            }
            Err(e) => return Err(CliError::usage(e)),
        },
        FuzzyOp::Check { .. } => unreachable!(),
    };
    report.verdict(format!("{name} defined"), value.is_some());
    let shown = value.as_ref().map(|v| sys.format_element(v));
    report.result = json!({ "points": sys.points(), "value": shown });
    let mut text = match &shown {
        Some(v) => format!("{v}\n"),
        None => String::new(),
    };
    text.push_str(&summary(&report));
    Ok((report, text))
}
