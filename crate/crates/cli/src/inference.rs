//! `prob`, `update`, `bayes` and `correlations` over scenario files.

use std::io::Write;
use std::path::Path;

use entropic::belief::{BeliefWeb, BlockIndex};
use entropic::correlation::{
    mutual_information, npi, shannon_entropy, to_bits, total_correlation, Split,
};
use entropic::maxent::update as maxent_update;
use entropic::scenario::{parse_observation, Scenario};
use entropic::syntax::{parse_formula, render};

use crate::format::{num, table};
use crate::{Failure, Outcome, Units};

/// Reads and parses a scenario, reporting its warnings on `err`.
pub(crate) fn load(path: &Path, err: &mut dyn Write) -> Result<Scenario, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let scn = Scenario::parse(&text)?;
    for w in &scn.warnings {
        writeln!(err, "warning: {w}")?;
    }
    Ok(scn)
}

pub(crate) fn prob(
    path: &Path,
    formula: &str,
    rest: &[String],
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let given = match rest {
        [] => None,
        [kw, g] if kw == "given" => Some(g.as_str()),
        _ => {
            return Err(Failure::Usage(
                "expected `prob <scenario> <formula> [given <formula>]`".into(),
            ))
        }
    };
    let scn = load(path, err)?;
    let f = parse_formula(formula, &scn.space)?;
    let shown = render(&f, &scn.space);
    match given {
        None => writeln!(out, "P({shown}) = {}", num(scn.prior.probability(&f)?))?,
        Some(g) => {
            let g = parse_formula(g, &scn.space)?;
            let p = scn.prior.conditional(&f, &g)?;
            writeln!(out, "P({shown} given {}) = {}", render(&g, &scn.space), num(p))?;
        }
    }
    Ok(())
}

fn world_rows(header: &[&str], columns: &[&BeliefWeb]) -> Vec<Vec<String>> {
    let space = columns[0].space();
    let mut rows = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    for i in 0..columns[0].weights().len() {
        let mut row = vec![space.describe(&space.world(i))];
        row.extend(columns.iter().map(|w| num(w.weight(i))));
        rows.push(row);
    }
    rows
}

pub(crate) fn update(
    path: &Path,
    report_lambdas: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let scn = load(path, err)?;
    let report = maxent_update(&scn.prior, &scn.constraints, &scn.options)?;
    let rows = world_rows(&["world", "prior", "posterior"], &[&scn.prior, &report.posterior]);
    write!(out, "{}", table(&rows))?;
    let mut summary = vec![vec!["relative entropy".to_string(), num(report.entropy)]];
    if let Some(dual) = &report.dual {
        summary.push(vec!["iterations".to_string(), dual.iterations.to_string()]);
        summary.push(vec!["residual".to_string(), num(dual.residual_inf_norm)]);
        if report_lambdas {
            for (k, l) in dual.lambdas.iter().enumerate() {
                summary.push(vec![format!("lambda {}", k + 1), num(*l)]);
            }
        }
    }
    write!(out, "{}", table(&summary))?;
    Ok(())
}

pub(crate) fn bayes(path: &Path, observe: &str, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let scn = load(path, err)?;
    let (block, observed) = parse_observation(&scn.space, observe)?;
    let evidence = scn.prior.probability(&block.formula(&observed))?;
    let posterior = scn.prior.bayes_condition(&block, &observed)?;
    writeln!(out, "evidence {}", num(evidence))?;
    let rest: Vec<usize> = (0..scn.space.len())
        .filter(|v| !block.indices().contains(v))
        .collect();
    if rest.is_empty() {
        return Ok(());
    }
    let keep = BlockIndex::new(&scn.space, rest)?;
    let prior = scn.prior.marginalize(&keep)?;
    let post = posterior.marginalize(&keep)?;
    write!(out, "{}", table(&world_rows(&["value", "prior", "posterior"], &[&prior, &post])))?;
    Ok(())
}

pub(crate) fn correlations(
    path: &Path,
    spec: &str,
    units: Units,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let scn = load(path, err)?;
    let split = Split::parse(&scn.space, spec)?;
    let show = |nats: f64| match units {
        Units::Nats => num(nats),
        Units::Bits => num(to_bits(nats)),
    };
    let unit = match units {
        Units::Nats => "nats",
        Units::Bits => "bits",
    };
    let mut rows = vec![
        vec!["units".to_string(), unit.to_string()],
        vec!["entropy".to_string(), show(shannon_entropy(&scn.prior))],
    ];
    for block in split.blocks() {
        let names: Vec<&str> = block
            .indices()
            .iter()
            .map(|&v| scn.space.variables()[v].name())
            .collect();
        let marginal = scn.prior.marginalize(block)?;
        rows.push(vec![
            format!("entropy {}", names.join(",")),
            show(shannon_entropy(&marginal)),
        ]);
    }
    rows.push(vec![
        "total correlation".to_string(),
        show(total_correlation(&scn.prior, &split)?),
    ]);
    if split.blocks().len() == 2 {
        rows.push(vec![
            "mutual information".to_string(),
            show(mutual_information(&scn.prior, &split)?),
        ]);
    }
    rows.push(vec!["npi".to_string(), show(npi(&scn.prior, &split)?)]);
    write!(out, "{}", table(&rows))?;
    Ok(())
}
