//! Plain-text scenario files: a space, a prior over it, constraints and
//! solver options.
//!
//! ```text
//! # a loaded die
//! [variables]
//! face = 1 2 3 4 5 6
//!
//! [constraints]
//! expect value(face) = 4.5
//!
//! [options]
//! tol = 1e-10
//! max_iter = 200
//! ```
//!
//! Sections:
//!
//! - `[variables]`: one `name = label label …` per line, in order.
//! - `[weights]`: one weight per world in world order, whitespace separated.
//! - `[factor v …]`: a table over the listed variables in their own world
//!   order. Factors multiply; variables no factor mentions are uniform.
//! - `[constraints]`: `expect value(v) = t` (numeric labels of `v`),
//!   `expect [x …] = t` (one value per world), `mass <formula> = t`, and
//!   `data v=label, …`.
//! - `[options]`: `tol` and `max_iter`.
//!
//! Without `[weights]` or factors the prior is uniform. `#` starts a comment.

use crate::belief::{BeliefWeb, BlockIndex};
use crate::error::{Error, Result};
use crate::logic::space::{Space, Variable};
use crate::maxent::{Constraint, ConstraintSet, SolverOptions};
use crate::numeric::fsum;
use crate::syntax::parse_formula;

/// Renormalization larger than this is reported as a warning.
pub const RENORMALIZATION_WARNING: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Scenario {
    pub space: Space,
    pub prior: BeliefWeb,
    pub constraints: ConstraintSet,
    pub options: SolverOptions,
    pub warnings: Vec<String>,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Scenario {
        line,
        column,
        message: message.into(),
    })
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (offset + text[..s].chars().count() + 1, t))
        .collect()
}

/// A line with its number and the column where `text` starts.
#[derive(Clone, Copy)]
struct Line<'a> {
    number: usize,
    column: usize,
    text: &'a str,
}

enum Section<'a> {
    Variables(Vec<Line<'a>>),
    Weights(Line<'a>, Vec<Line<'a>>),
    Factor(Line<'a>, Vec<(usize, &'a str)>, Vec<Line<'a>>),
    Constraints(Vec<Line<'a>>),
    Options(Vec<Line<'a>>),
}

fn numbers(lines: &[Line<'_>]) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for l in lines {
        for (col, t) in tokens(l.text, l.column - 1) {
            match t.parse::<f64>() {
                Ok(x) if x.is_finite() && x >= 0.0 => out.push(x),
                _ => return err(l.number, col, format!("`{t}` is not a non-negative number")),
            }
        }
    }
    Ok(out)
}

fn split_sections(text: &str) -> Result<Vec<Section<'_>>> {
    let mut sections = Vec::new();
    let mut current: Option<Section<'_>> = None;
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column = body.len() - body.trim_start().len() + 1;
        let line = Line {
            number,
            column,
            text: trimmed,
        };
        if let Some(inner) = trimmed.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return err(number, column, "section header must end with `]`");
            };
            if let Some(s) = current.take() {
                sections.push(s);
            }
            let words = tokens(inner, column);
            let Some(&(_, name)) = words.first() else {
                return err(number, column, "empty section header");
            };
            current = Some(match name {
                "variables" => Section::Variables(Vec::new()),
                "weights" => Section::Weights(line, Vec::new()),
                "factor" => Section::Factor(line, words[1..].to_vec(), Vec::new()),
                "constraints" => Section::Constraints(Vec::new()),
                "options" => Section::Options(Vec::new()),
                other => return err(number, column + 1, format!("unknown section `{other}`")),
            });
            continue;
        }
        match &mut current {
            None => return err(number, column, "content before the first section"),
            Some(
                Section::Variables(ls)
                | Section::Weights(_, ls)
                | Section::Factor(_, _, ls)
                | Section::Constraints(ls)
                | Section::Options(ls),
            ) => ls.push(line),
        }
    }
    if let Some(s) = current {
        sections.push(s);
    }
    Ok(sections)
}

fn parse_variable(l: &Line<'_>) -> Result<Variable> {
    let Some((name, labels)) = l.text.split_once('=') else {
        return err(l.number, l.column, "expected `name = label label …`");
    };
    let labels_col = l.column + name.chars().count() + 1;
    let labels: Vec<&str> = tokens(labels, labels_col - 1).into_iter().map(|t| t.1).collect();
    Variable::new(name.trim(), labels).or_else(|e| err(l.number, l.column, e.to_string()))
}

/// Splits `lhs = rhs` at the last `=`, returning the target and its column.
fn target_of<'a>(l: &Line<'a>, rest: &'a str, rest_col: usize) -> Result<(&'a str, f64)> {
    let Some(at) = rest.rfind('=') else {
        return err(l.number, rest_col, "expected `= <target>`");
    };
    let value = rest[at + 1..].trim();
    let col = rest_col + rest[..at + 1].chars().count();
    match value.parse::<f64>() {
        Ok(t) if t.is_finite() => Ok((rest[..at].trim(), t)),
        _ => err(l.number, col, format!("`{value}` is not a number")),
    }
}

fn parse_constraint(l: &Line<'_>, space: &Space) -> Result<Constraint> {
    let (kind, rest) = l.text.split_once(char::is_whitespace).unwrap_or((l.text, ""));
    let rest_col = l.column + kind.chars().count() + 1;
    let anchor = |e: Error| -> Error {
        match e {
            Error::Parse { position, message } => Error::Scenario {
                line: l.number,
                column: rest_col + position - 1,
                message,
            },
            other => Error::Scenario {
                line: l.number,
                column: rest_col,
                message: other.to_string(),
            },
        }
    };
    match kind {
        "expect" => {
            let (function, target) = target_of(l, rest, rest_col)?;
            let values = if let Some(var) = function
                .strip_prefix("value(")
                .and_then(|s| s.strip_suffix(')'))
            {
                let var = var.trim();
                let Some(v) = space.variable_index(var) else {
                    return err(l.number, rest_col, format!("unknown variable `{var}`"));
                };
                let labels = space.variables()[v]
                    .domain()
                    .iter()
                    .map(|s| s.parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>();
                let Ok(labels) = labels else {
                    return err(l.number, rest_col, format!("labels of `{var}` are not numbers"));
                };
                space.tabulate(|w| labels[w.value(v)]).map_err(anchor)?
            } else if let Some(list) = function.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let mut values = Vec::new();
                for (col, t) in tokens(list, rest_col) {
                    match t.parse::<f64>() {
                        Ok(x) if x.is_finite() => values.push(x),
                        _ => return err(l.number, col, format!("`{t}` is not a number")),
                    }
                }
                values
            } else {
                return err(l.number, rest_col, "expected `value(<variable>)` or `[values …]`");
            };
            let c = Constraint::Expectation { values, target };
            c.validate(space).map_err(anchor)?;
            Ok(c)
        }
        "mass" => {
            let (formula, target) = target_of(l, rest, rest_col)?;
            let domain = parse_formula(formula, space).map_err(anchor)?;
            let c = Constraint::SubdomainMass { domain, target };
            c.validate(space).map_err(anchor)?;
            Ok(c)
        }
        "data" => {
            let (block, observed) = parse_observation(space, rest).map_err(anchor)?;
            Ok(Constraint::PointData { block, observed })
        }
        other => err(l.number, l.column, format!("unknown constraint `{other}`")),
    }
}

/// Parses `v=label, w=label` into a block and its observed value tuple.
pub fn parse_observation(space: &Space, text: &str) -> Result<(BlockIndex, Vec<usize>)> {
    let mut vars = Vec::new();
    let mut observed = Vec::new();
    for item in text.split(',') {
        let Some((name, label)) = item.split_once('=') else {
            return Err(Error::InvalidArgument(format!(
                "expected `variable=value`, found `{}`",
                item.trim()
            )));
        };
        let (name, label) = (name.trim(), label.trim());
        let v = space
            .variable_index(name)
            .ok_or_else(|| Error::Unbound(format!("unknown variable `{name}`")))?;
        let x = space.variables()[v]
            .value_index(label)
            .ok_or_else(|| Error::Unbound(format!("unknown value `{label}` for `{name}`")))?;
        vars.push(v);
        observed.push(x);
    }
    Ok((BlockIndex::new(space, vars)?, observed))
}

fn parse_options(lines: &[Line<'_>]) -> Result<SolverOptions> {
    let mut opts = SolverOptions::default();
    for l in lines {
        let Some((key, value)) = l.text.split_once('=') else {
            return err(l.number, l.column, "expected `key = value`");
        };
        let value_col = l.column + key.chars().count() + 1;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "tol" => match value.parse::<f64>() {
                Ok(t) if t > 0.0 && t.is_finite() => opts.tol = t,
                _ => return err(l.number, value_col, "tol must be a positive number"),
            },
            "max_iter" => match value.parse::<usize>() {
                Ok(m) => opts.max_iter = m,
                _ => return err(l.number, value_col, "max_iter must be a whole number"),
            },
            other => return err(l.number, l.column, format!("unknown option `{other}`")),
        }
    }
    Ok(opts)
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        let sections = split_sections(text)?;
        let mut variables = Vec::new();
        for s in &sections {
            if let Section::Variables(lines) = s {
                for l in lines {
                    variables.push(parse_variable(l)?);
                }
            }
        }
        if variables.is_empty() {
            return err(1, 1, "no variables declared");
        }
        let space = Space::new(variables).or_else(|e| err(1, 1, e.to_string()))?;
        let n = space.world_count().or_else(|e| err(1, 1, e.to_string()))?;

        let mut warnings = Vec::new();
        let mut explicit: Option<Vec<f64>> = None;
        let mut factors: Vec<(Line<'_>, Vec<usize>, Vec<f64>)> = Vec::new();
        let mut constraint_lines = Vec::new();
        let mut options = SolverOptions::default();
        for s in &sections {
            match s {
                Section::Weights(header, lines) => {
                    if explicit.is_some() {
                        return err(header.number, header.column, "duplicate [weights] section");
                    }
                    let w = numbers(lines)?;
                    if w.len() != n {
                        return err(
                            header.number,
                            header.column,
                            format!("expected {n} weights, found {}", w.len()),
                        );
                    }
                    explicit = Some(w);
                }
                Section::Factor(header, names, lines) => {
                    let mut vars = Vec::new();
                    for &(col, name) in names {
                        match space.variable_index(name) {
                            Some(v) if !vars.contains(&v) => vars.push(v),
                            Some(_) => return err(header.number, col, format!("`{name}` repeated")),
                            None => {
                                return err(header.number, col, format!("unknown variable `{name}`"))
                            }
                        }
                    }
                    if vars.is_empty() {
                        return err(header.number, header.column, "factor lists no variables");
                    }
                    let size: usize = vars.iter().map(|&v| space.variables()[v].size()).product();
                    let table = numbers(lines)?;
                    if table.len() != size {
                        return err(
                            header.number,
                            header.column,
                            format!("expected {size} factor entries, found {}", table.len()),
                        );
                    }
                    factors.push((*header, vars, table));
                }
                Section::Constraints(lines) => constraint_lines.extend(lines.iter().copied()),
                Section::Options(lines) => options = parse_options(lines)?,
                Section::Variables(_) => {}
            }
        }

        // Expected total before renormalization: 1 for explicit weights,
        // and for factors the number of joint values of the variables no
        // factor covers, since each contributes a uniform factor of 1.
        let (raw, expected) = match (explicit, factors.is_empty()) {
            (Some(_), false) => {
                let h = factors[0].0;
                return err(h.number, h.column, "use either [weights] or factors, not both");
            }
            (Some(w), true) => (w, 1.0),
            (None, true) => (vec![1.0; n], n as f64),
            (None, false) => {
                let worlds = space.worlds().or_else(|e| err(1, 1, e.to_string()))?;
                let mut w = vec![1.0; n];
                let blocks = factors
                    .iter()
                    .map(|(_, vars, table)| Ok((BlockIndex::new(&space, vars.clone())?, table)))
                    .collect::<Result<Vec<_>>>()?;
                for (i, world) in worlds.enumerate() {
                    for (block, table) in &blocks {
                        w[i] *= table[block.tuple_index(&space, &world)];
                    }
                }
                let mut covered = vec![false; space.len()];
                for (_, vars, _) in &factors {
                    for &v in vars {
                        covered[v] = true;
                    }
                }
                let free: f64 = space
                    .variables()
                    .iter()
                    .zip(&covered)
                    .filter(|(_, &c)| !c)
                    .map(|(v, _)| v.size() as f64)
                    .product();
                (w, free)
            }
        };
        let total = fsum(raw.iter().copied());
        if total <= 0.0 {
            return err(1, 1, "prior weights have zero total");
        }
        if (total / expected - 1.0).abs() > RENORMALIZATION_WARNING {
            warnings.push(format!("prior weights summed to {total}; renormalized"));
        }
        let prior = BeliefWeb::normalized(space.clone(), raw).or_else(|e| err(1, 1, e.to_string()))?;

        let constraints = constraint_lines
            .iter()
            .map(|l| parse_constraint(l, &space))
            .collect::<Result<Vec<_>>>()?;
        Ok(Scenario {
            space,
            prior,
            constraints: ConstraintSet::new(constraints),
            options,
            warnings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dice() {
        let s = Scenario::parse(
            "# die\n[variables]\nface = 1 2 3 4 5 6\n\n[constraints]\nexpect value(face) = 4.5\n",
        )
        .unwrap();
        assert_eq!(s.prior.weights().len(), 6);
        assert!(s.warnings.is_empty());
        match &s.constraints.constraints[0] {
            Constraint::Expectation { values, target } => {
                assert_eq!(values, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
                assert_eq!(*target, 4.5);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn explicit_weights_and_options() {
        let s = Scenario::parse(
            "[variables]\nx = T F\ny = T F\n[weights]\n0.5 0 0\n0.5\n[options]\ntol = 1e-8\nmax_iter = 50\n",
        )
        .unwrap();
        assert_eq!(s.prior.weights(), &[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(s.options.tol, 1e-8);
        assert_eq!(s.options.max_iter, 50);
    }

    #[test]
    fn factors_multiply_and_warn() {
        let s = Scenario::parse(
            "[variables]\nx = a b\ny = 0 1 2\n[factor x]\n0.25 0.75\n[factor y]\n1 1 2\n",
        )
        .unwrap();
        let w = s.prior.weights();
        assert!((w[0] - 0.25 * 0.25).abs() < 1e-15);
        assert!((w[5] - 0.75 * 0.5).abs() < 1e-15);
        assert_eq!(s.warnings.len(), 1);
        let quiet = Scenario::parse("[variables]\nx = a b\ny = 0 1 2\n[factor x]\n0.25 0.75\n")
            .unwrap();
        assert!(quiet.warnings.is_empty());
        assert!((quiet.prior.weights()[0] - 0.25 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn constraint_forms() {
        let s = Scenario::parse(
            "[variables]\nx = 1 2 3\ny = T F\n[constraints]\nmass x=1 | x=2 = 0.4\ndata y=F\nexpect [1 0 0 0 0 1] = 0.2\n",
        )
        .unwrap();
        assert_eq!(s.constraints.len(), 3);
        assert!(matches!(
            &s.constraints.constraints[1],
            Constraint::PointData { observed, .. } if observed == &[1]
        ));
    }

    #[test]
    fn errors_are_anchored() {
        let e = Scenario::parse("[variables]\nx = 1 2\n[weights]\n0.5 abc\n").unwrap_err();
        assert_eq!(
            e,
            Error::Scenario {
                line: 4,
                column: 5,
                message: "`abc` is not a non-negative number".into()
            }
        );
        let e = Scenario::parse("[variables]\nx = 1 2\n[constraints]\nmass x=3 = 0.5\n").unwrap_err();
        assert!(matches!(e, Error::Scenario { line: 4, column: 6, .. }), "{e:?}");
        let e = Scenario::parse("[variables]\nx = 1 2\n[constraints]\nmass x=1 & = 0.5\n").unwrap_err();
        assert!(matches!(e, Error::Scenario { line: 4, .. }), "{e:?}");
        assert!(Scenario::parse("x = 1 2\n").is_err());
        assert!(Scenario::parse("[variables]\nx = 1 2\n[weights]\n1\n").is_err());
        assert!(Scenario::parse("[nonsense]\n").is_err());
    }
}
