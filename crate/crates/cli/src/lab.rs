//! `verify` and `demo`.

use std::io::Write;

use clap::{Args, Subcommand};
use entropic::belief::double_slit_demo;
use entropic::regraduation::{
    reconstruct_phi, solve_pexider, uniform_grid, verify_associativity, verify_cauchy_linearity,
    verify_regraduation, BinaryOpTable, Lattice, Regraduation,
};

use crate::format::{num, table};
use crate::{Failure, Outcome};

#[derive(Debug, Subcommand)]
pub(crate) enum Verify {
    /// Associativity of an operation and its known regraduation.
    Aczel {
        #[command(flatten)]
        op: OpArgs,
    },
    /// Additivity in the second argument, with fitted slopes.
    Cauchy {
        /// `product`, `square` or `sine`.
        #[arg(long, default_value = "product")]
        op: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Solve a Pexider equation built from a linear form.
    Pexider {
        /// Comma-separated coefficients of the linear form.
        #[arg(long, default_value = "1.5,-0.5", allow_hyphen_values = true)]
        coefficients: String,
        #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, default_value_t = 4)]
        max: i64,
    },
    /// Rebuild the regraduation of an operation by halving.
    Reconstruct {
        #[command(flatten)]
        op: OpArgs,
        /// Point where the regraduation is 1.
        #[arg(long, default_value_t = 0.5)]
        anchor: f64,
        /// Number of halvings.
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
}

#[derive(Debug, Args)]
pub(crate) struct GridArgs {
    #[arg(long, default_value_t = 0.05)]
    lo: f64,
    #[arg(long, default_value_t = 1.0)]
    hi: f64,
    /// Grid points.
    #[arg(long, default_value_t = 20)]
    n: usize,
}

#[derive(Debug, Args)]
pub(crate) struct OpArgs {
    /// `sum`, `product` or `power:<alpha>`.
    #[arg(long, default_value = "product")]
    op: String,
    #[command(flatten)]
    grid: GridArgs,
}

/// A named associative operation with its known regraduation.
#[derive(Debug, Clone, Copy)]
enum Op {
    Sum,
    Product,
    Power(f64),
}

impl Op {
    fn parse(text: &str) -> Result<Op, Failure> {
        match text {
            "sum" => Ok(Op::Sum),
            "product" => Ok(Op::Product),
            _ => match text.strip_prefix("power:").map(str::parse::<f64>) {
                Some(Ok(alpha)) if alpha.is_finite() && alpha != 0.0 => Ok(Op::Power(alpha)),
                _ => Err(Failure::Usage(format!(
                    "unknown operation `{text}`; expected sum, product or power:<alpha>"
                ))),
            },
        }
    }

    fn table(self, grid: &GridArgs) -> Result<BinaryOpTable, Failure> {
        if grid.n < 2 {
            return Err(Failure::Usage("--n must be at least 2".into()));
        }
        let g = uniform_grid(grid.lo, grid.hi, grid.n);
        let t = match self {
            Op::Sum => BinaryOpTable::restricted(g, |a, b| a + b),
            Op::Product => BinaryOpTable::restricted(g, |a, b| a * b),
            Op::Power(alpha) => {
                BinaryOpTable::restricted(g, move |a, b| (a.powf(alpha) + b.powf(alpha)).powf(1.0 / alpha))
            }
        }?;
        Ok(t)
    }

    fn known(self) -> Regraduation {
        match self {
            Op::Sum => Regraduation::analytic(|x| x, |y| y),
            Op::Product => Regraduation::analytic(f64::ln, f64::exp),
            Op::Power(alpha) => {
                Regraduation::analytic(move |x| x.powf(alpha), move |y| y.powf(1.0 / alpha))
            }
        }
    }
}

fn pair(k: &str, v: String) -> Vec<String> {
    vec![k.to_string(), v]
}

pub(crate) fn verify(check: Verify, out: &mut dyn Write) -> Outcome {
    let rows = match check {
        Verify::Aczel { op } => {
            let o = Op::parse(&op.op)?;
            let t = o.table(&op.grid)?;
            vec![
                pair("operation", op.op.clone()),
                pair("associativity residual", num(verify_associativity(&t)?)),
                pair("regraduation residual", num(verify_regraduation(&t, &o.known())?)),
            ]
        }
        Verify::Cauchy { op, grid } => {
            let f: fn(f64, f64) -> f64 = match op.as_str() {
                "product" => |a, b| a * b,
                "square" => |a, b| a * b * b,
                "sine" => |a, b| (a * b).sin(),
                _ => {
                    return Err(Failure::Usage(format!(
                        "unknown operation `{op}`; expected product, square or sine"
                    )))
                }
            };
            if grid.n < 2 {
                return Err(Failure::Usage("--n must be at least 2".into()));
            }
            let t = BinaryOpTable::sample(uniform_grid(grid.lo, grid.hi, grid.n), false, move |a, b| {
                Some(f(a, b))
            })?;
            let report = verify_cauchy_linearity(&t);
            let mut rows = vec![
                pair("operation", op.clone()),
                pair("additive", report.is_additive.to_string()),
                pair("max residual", num(report.max_residual)),
            ];
            for (a, k) in &report.fitted {
                rows.push(vec![format!("slope at {}", num(*a)), num(*k)]);
            }
            rows
        }
        Verify::Pexider {
            coefficients,
            a,
            b,
            step,
            min,
            max,
        } => {
            let c = coefficients
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(format!("bad coefficient list `{coefficients}`: {e}")))?;
            let lattice = Lattice::new(c.len(), step, min, max)?;
            let xi = |x: &[f64]| x.iter().zip(&c).map(|(x, c)| x * c).sum::<f64>();
            let f = lattice.sample(|x| xi(x) + a + b);
            let g = lattice.sample(|x| xi(x) + b);
            let h = lattice.sample(|x| xi(x) + a);
            let s = solve_pexider(&lattice, &f, &g, &h)?;
            let mut rows = vec![
                pair("a", num(s.a)),
                pair("b", num(s.b)),
                pair("linear", s.xi_is_linear.to_string()),
            ];
            for (k, c) in s.coefficients.iter().enumerate() {
                rows.push(vec![format!("c{}", k + 1), num(*c)]);
            }
            rows.push(pair("residual", num(s.residual)));
            rows
        }
        Verify::Reconstruct { op, anchor, depth } => {
            let o = Op::parse(&op.op)?;
            let t = o.table(&op.grid)?;
            let r = reconstruct_phi(&t, anchor, depth)?;
            let known = o.known();
            let e = r.identity;
            let scale = known.phi(anchor) - known.phi(e);
            let deviation = t
                .grid()
                .iter()
                .map(|&x| (r.regraduation.phi(x) - (known.phi(x) - known.phi(e)) / scale).abs())
                .fold(0.0f64, f64::max);
            vec![
                pair("operation", op.op.clone()),
                pair("identity", num(e)),
                pair("training residual", num(r.training_residual)),
                pair("deviation from known", num(deviation)),
            ]
        }
    };
    write!(out, "{}", table(&rows))?;
    Ok(())
}

pub(crate) fn double_slit(pa: f64, pb: f64, xa: f64, xb: f64, out: &mut dyn Write) -> Outcome {
    let d = double_slit_demo(pa, pb, xa, xb)?;
    let rows = vec![
        pair("consistent", num(d.consistent)),
        pair("naive", num(d.naive)),
        pair("total probability residual", num(d.total_probability_residual)),
        pair("disagree", d.disagrees().to_string()),
    ];
    write!(out, "{}", table(&rows))?;
    Ok(())
}
