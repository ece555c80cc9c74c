//! `tt`, `check` and `hasse`.

use std::io::Write;
use std::path::Path;

use entropic::extended::{build_order, export_dot};
use entropic::logic::identities::{
    catalogue, holds_schematically, lookup, representatives, verify_exhaustively,
};
use entropic::logic::{semantics, Formula};
use entropic::syntax::{parse_formula, parse_propositional, render};

use crate::format::table;
use crate::{Failure, Outcome};

fn tv(b: bool) -> String {
    if b { "T" } else { "F" }.to_string()
}

pub(crate) fn truth_table(text: &str, out: &mut dyn Write) -> Outcome {
    let (space, fs) = parse_propositional(&[text])?;
    let f = &fs[0];
    let mut rows = vec![space
        .variables()
        .iter()
        .map(|v| v.name().to_string())
        .chain([render(f, &space)])
        .collect::<Vec<_>>()];
    for (world, value) in semantics::truth_table(&space, f)? {
        let mut row: Vec<String> = world.values().iter().map(|&v| tv(v == 0)).collect();
        row.push(tv(value));
        rows.push(row);
    }
    write!(out, "{}", table(&rows))?;
    Ok(())
}

pub(crate) fn check(
    target: Option<&str>,
    list: bool,
    atoms: usize,
    depth: usize,
    out: &mut dyn Write,
) -> Outcome {
    if list {
        for identity in catalogue() {
            writeln!(out, "{}", identity.name)?;
        }
        return Ok(());
    }
    let Some(target) = target else {
        return Err(Failure::Usage(
            "check needs an identity name or `f == g` (see --list)".into(),
        ));
    };
    if let Some((lhs, rhs)) = target.split_once("==").or_else(|| target.split_once('≡')) {
        return equivalence(lhs, rhs, out);
    }
    let identity = lookup(target.trim()).ok_or_else(|| {
        Failure::Usage(format!("unknown identity `{}` (see --list)", target.trim()))
    })?;
    let schematic = holds_schematically(&identity)?;
    let reps = representatives(atoms, depth)?;
    let report = verify_exhaustively(&identity, &reps);
    let rows = vec![
        vec!["identity".to_string(), identity.name.to_string()],
        vec!["schematic".to_string(), verdict(schematic).to_string()],
        vec!["atoms".to_string(), atoms.to_string()],
        vec!["depth".to_string(), depth.to_string()],
        vec!["representatives".to_string(), reps.len().to_string()],
        vec!["instances".to_string(), report.instances.to_string()],
        vec!["failures".to_string(), report.failures.to_string()],
    ];
    write!(out, "{}", table(&rows))?;
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

fn equivalence(lhs: &str, rhs: &str, out: &mut dyn Write) -> Outcome {
    let (space, fs) = parse_propositional(&[lhs, rhs])?;
    let (f, g) = (&fs[0], &fs[1]);
    let (cf, cg) = (f.column(&space)?, g.column(&space)?);
    writeln!(out, "{} == {}", render(f, &space), render(g, &space))?;
    match (0..cf.len()).find(|&i| cf.get(i) != cg.get(i)) {
        None => writeln!(out, "equivalent")?,
        Some(i) => {
            writeln!(out, "not equivalent")?;
            writeln!(
                out,
                "counterexample {}: {} vs {}",
                space.describe(&space.world(i)),
                tv(cf.get(i)),
                tv(cg.get(i))
            )?;
        }
    }
    Ok(())
}

pub(crate) fn hasse(
    texts: &[String],
    bounds: bool,
    context: Option<&str>,
    scenario: Option<&Path>,
    dot: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let (space, fs, gamma) = match scenario {
        Some(path) => {
            let scn = crate::inference::load(path, err)?;
            let fs = texts
                .iter()
                .map(|t| parse_formula(t, &scn.space))
                .collect::<Result<Vec<_>, _>>()?;
            let gamma = match context {
                Some(c) => parse_formula(c, &scn.space)?,
                None => Formula::True,
            };
            (scn.space, fs, gamma)
        }
        None => {
            let mut all: Vec<&str> = texts.iter().map(String::as_str).collect();
            if let Some(c) = context {
                all.push(c);
            }
            let (space, mut fs) = parse_propositional(&all)?;
            let gamma = if context.is_some() {
                fs.pop().expect("context parsed")
            } else {
                Formula::True
            };
            (space, fs, gamma)
        }
    };
    let order = build_order(&space, &fs, &gamma, bounds)?;
    match dot {
        Some("-") => write!(out, "{}", export_dot(&order))?,
        Some(path) => {
            std::fs::write(path, export_dot(&order))
                .map_err(|e| Failure::Io(format!("{path}: {e}")))?;
            summary(&order, out)?;
        }
        None => summary(&order, out)?,
    }
    Ok(())
}

fn summary(order: &entropic::extended::OrderedSet, out: &mut dyn Write) -> Outcome {
    let n = order.nodes().len();
    writeln!(out, "nodes {n}")?;
    writeln!(out, "cover edges {}", order.cover_edges().len())?;
    writeln!(out, "levels {}", order.level_count())?;
    let mut rows = vec![vec!["node".to_string(), "level".to_string(), "formula".to_string()]];
    for node in 0..n {
        rows.push(vec![
            format!("n{node}"),
            order.levels()[node].to_string(),
            order.label(node),
        ]);
    }
    write!(out, "{}", table(&rows))?;
    for &(i, j) in order.cover_edges() {
        writeln!(out, "n{i} -> n{j}")?;
    }
    Ok(())
}
