use clap::{Args, Subcommand, ValueEnum};

use krasner_core::extensions::padic_sqrt;
use krasner_core::field::hensel::hensel_lift_from_int;
use krasner_core::field::{arith, padic_val, ArithOp};
use krasner_core::{FieldElement, Poly};

use super::el;
use crate::report::RunReport;
use crate::{parse, CliError, Ctx};

#[derive(Args, Debug)]
pub struct ValueArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    x: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

#[derive(Subcommand, Debug)]
pub enum PadicCmd {
    /// Valuation of x.
    Val(ValueArgs),
    /// Square root of x, if x is a square.
    Sqrt(ValueArgs),
    /// Lift an integer approximate root of `--poly` (ascending coefficients).
    Hensel {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        x0: i64,
        /// Absolute digits wanted; defaults to the field precision.
        #[arg(long)]
        target: Option<u32>,
    },
    /// Checked arithmetic in any supported field.
    Arith {
        #[arg(long)]
        field: String,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: Option<String>,
    },
}

fn need_padic(d: &krasner_core::FieldDescriptor) -> Result<(), CliError> {
    if d.is_padic() {
        Ok(())
    } else {
        Err(CliError::Usage("this subcommand needs a Qp field".into()))
    }
}

pub fn run(c: &PadicCmd, _ctx: &Ctx, r: &mut RunReport) -> Result<(), CliError> {
    match c {
        PadicCmd::Val(a) => {
            let d = parse::field(&a.field)?;
            need_padic(&d)?;
            r.field(&d);
            let x = parse::element(&d, &a.x)?;
            r.input("x", el(&x));
            let v = padic_val(&x, None)?;
            r.output("valuation", v.map_or(serde_json::Value::from("inf"), serde_json::Value::from));
        }
        PadicCmd::Sqrt(a) => {
            let d = parse::field(&a.field)?;
            need_padic(&d)?;
            r.field(&d);
            let x = parse::element(&d, &a.x)?;
            r.input("x", el(&x));
            match padic_sqrt(&x)? {
                Some(s) => {
                    r.output("root", el(&s));
                    let diff = s.clone() * s - x;
                    r.check("root_squares_to_x", diff.as_padic().is_some_and(|p| p.is_zero()));
                }
                None => r.output("root", serde_json::Value::Null),
            }
        }
        PadicCmd::Hensel { field, poly, x0, target } => {
            let d = parse::field(field)?;
            need_padic(&d)?;
            r.field(&d);
            let f = Poly::from_coeffs(parse::elements(&d, poly)?);
            let target = target.unwrap_or_else(|| d.padic_precision().unwrap());
            r.input("x0", *x0);
            r.input("target", target);
            let (root, trace) = hensel_lift_from_int(&f, *x0, target)?;
            let root = FieldElement::from_padic(&d, root)?;
            r.output("root", el(&root));
            r.output("residual_valuations", trace.residual_valuations.clone());
            r.output("derivative_valuation", trace.derivative_valuation);
            let resid = f.eval(&root);
            let pd = resid.as_padic().unwrap();
            let good = pd.is_zero() || pd.valuation_bound().is_some_and(|v| v >= i64::from(target));
            r.check("residual_doubles", trace.doubles());
            r.check("root_residual_small", good);
        }
        PadicCmd::Arith { field, op, x, y } => {
            let d = parse::field(field)?;
            r.field(&d);
            let xv = parse::element(&d, x)?;
            let yv = y.as_deref().map(|s| parse::element(&d, s)).transpose()?;
            r.input("x", el(&xv));
            if let Some(v) = &yv {
                r.input("y", el(v));
            }
            let op = match op {
                Op::Add => ArithOp::Add,
                Op::Sub => ArithOp::Sub,
                Op::Mul => ArithOp::Mul,
                Op::Div => ArithOp::Div,
                Op::Neg => ArithOp::Neg,
                Op::Inv => ArithOp::Inv,
            };
            if matches!(op, ArithOp::Add | ArithOp::Sub | ArithOp::Mul | ArithOp::Div) && yv.is_none() {
                return Err(CliError::Usage("binary operation needs --y".into()));
            }
            r.output("result", el(&arith(op, &xv, yv.as_ref())?));
        }
    }
    Ok(())
}
