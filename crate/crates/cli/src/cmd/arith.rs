use clap::{Args, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use krasner_core::arith::{
    artin_schreier_index, conic_solve, coset_sum_covers, four_squares, krasner_vadic_check, power_subgroup_index,
    power_sum_solve, sopn_check, CosetTable,
};
use krasner_core::{FieldDescriptor, Ring};

use super::{el, mv, pt};
use crate::report::RunReport;
use crate::{parse, CliError, Ctx};

#[derive(Args, Debug)]
pub struct FieldArg {
    #[arg(long)]
    field: String,
}

#[derive(Subcommand, Debug)]
pub enum ArithCmd {
    /// Index of the m-th powers in K^*.
    PowerIndex {
        #[command(flatten)]
        f: FieldArg,
        #[arg(long)]
        m: u64,
    },
    /// Index of the image of x^p - x in (K, +).
    AsIndex(FieldArg),
    /// Which sums of two m-th power cosets cover K^*.
    CosetSum {
        #[command(flatten)]
        f: FieldArg,
        #[arg(long)]
        m: u64,
    },
    /// A point on a c^2 + b d^2 = 1.
    Conic {
        #[command(flatten)]
        f: FieldArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// A solution of c^m + a e^m = b.
    PowerSum {
        #[command(flatten)]
        f: FieldArg,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Restrict c and e to K^*.
        #[arg(long)]
        nonzero: bool,
    },
    /// Four rational squares summing to n.
    FourSquares {
        #[arg(long)]
        n: String,
    },
    /// Checks x - y - 1 = sum of four squares along a chain of rationals.
    Sopn {
        #[arg(long)]
        chain: String,
        #[arg(long)]
        cyclic: bool,
    },
    /// Seeded perturbations of a quadratic over Qp.
    KrasnerVadic {
        #[command(flatten)]
        f: FieldArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        radius: i64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn table(r: &mut RunReport, t: &CosetTable) {
    r.output("index", t.index.to_string());
    r.output("subgroup_order", t.subgroup_order.to_string());
    r.output("representatives", pt(&t.representatives));
    r.output("expected_index", t.expected_index.to_string());
    r.check("representative_count", t.representatives.len() as u128 == t.index);
}

fn field(r: &mut RunReport, s: &str) -> Result<FieldDescriptor, CliError> {
    let d = parse::field(s)?;
    r.field(&d);
    Ok(d)
}

fn rational(s: &str) -> Result<BigRational, CliError> {
    let q = FieldDescriptor::rationals();
    Ok(parse::element(&q, s)?.as_rational().expect("rational element").clone())
}

fn sum_of_squares(z: &[BigRational]) -> BigRational {
    z.iter().fold(BigRational::from_integer(0.into()), |acc, x| acc + x * x)
}

pub fn run(c: &ArithCmd, ctx: &Ctx, r: &mut RunReport) -> Result<(), CliError> {
    match c {
        ArithCmd::PowerIndex { f, m } => {
            let d = field(r, &f.field)?;
            r.input("m", *m);
            let t = power_subgroup_index(&d, *m, ctx.budget)?;
            table(r, &t);
            r.check("index_equals_gcd", t.matches_expected());
        }
        ArithCmd::AsIndex(f) => {
            let d = field(r, &f.field)?;
            let t = artin_schreier_index(&d, ctx.budget)?;
            table(r, &t);
            r.check("index_equals_characteristic", t.matches_expected());
        }
        ArithCmd::CosetSum { f, m } => {
            let d = field(r, &f.field)?;
            r.input("m", *m);
            let rep = coset_sum_covers(&d, *m, ctx.budget)?;
            let k = rep.representatives.len();
            r.output("representatives", pt(&rep.representatives));
            r.output(
                "pairs",
                rep.pairs.iter().map(|p| json!({"first": p.first, "second": p.second, "covers": p.covers})).collect::<Vec<_>>(),
            );
            r.output("all_cover", rep.all_cover());
            r.check("pair_count", rep.pairs.len() == k * k);
        }
        ArithCmd::Conic { f, a, b } => {
            let d = field(r, &f.field)?;
            let (a, b) = (parse::element(&d, a)?, parse::element(&d, b)?);
            r.input("a", el(&a));
            r.input("b", el(&b));
            let (cc, dd) = conic_solve(&a, &b, ctx.budget)?;
            let valid = (a * cc.clone() * cc.clone() + b * dd.clone() * dd.clone()).is_one();
            r.output("c", el(&cc));
            r.output("d", el(&dd));
            r.output("valid", valid);
            r.check("valid", valid);
        }
        ArithCmd::PowerSum { f, m, a, b, nonzero } => {
            let d = field(r, &f.field)?;
            let (a, b) = (parse::element(&d, a)?, parse::element(&d, b)?);
            r.input("m", *m);
            r.input("a", el(&a));
            r.input("b", el(&b));
            r.input("nonzero", *nonzero);
            match power_sum_solve(*m, &a, &b, *nonzero, ctx.budget)? {
                Some((cc, e)) => {
                    let lhs = cc.pow_u(*m as u128) + a * e.pow_u(*m as u128);
                    r.output("solution", json!([el(&cc), el(&e)]));
                    r.check("valid", lhs == b && (!*nonzero || (!cc.is_zero() && !e.is_zero())));
                }
                None => r.output("solution", Value::Null),
            }
        }
        ArithCmd::FourSquares { n } => {
            let x = rational(n)?;
            r.input("n", x.to_string());
            let z = four_squares(&x)?;
            r.output("squares", z.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            r.check("resums", sum_of_squares(&z) == x);
        }
        ArithCmd::Sopn { chain, cyclic } => {
            let q = FieldDescriptor::rationals();
            let xs: Vec<BigRational> =
                parse::elements(&q, chain)?.iter().map(|e| e.as_rational().unwrap().clone()).collect();
            r.input("chain", xs.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            r.input("cyclic", *cyclic);
            let v = sopn_check(&xs, *cyclic)?;
            let mut ok = true;
            let links: Vec<Value> = v
                .links
                .iter()
                .map(|l| {
                    if let Some(w) = &l.witness {
                        ok &= sum_of_squares(w) == l.value;
                    }
                    json!({
                        "x": l.x.to_string(),
                        "y": l.y.to_string(),
                        "value": l.value.to_string(),
                        "witness": l.witness.as_ref().map(|w| w.iter().map(|z| z.to_string()).collect::<Vec<_>>()),
                    })
                })
                .collect();
            r.output("links", links);
            r.output("all_hold", v.all_hold());
            r.check("witnesses_verified", ok);
            if let Some(t) = &v.telescoped {
                r.output("telescoped", t.to_string());
                r.check("cycle_refuted", v.cycle_refuted());
            }
        }
        ArithCmd::KrasnerVadic { f, poly, radius, samples } => {
            let d = field(r, &f.field)?;
            let a = parse::monic(&d, poly)?;
            r.input("poly", mv(&a));
            r.input("radius", *radius);
            r.input("samples", *samples);
            let rep = krasner_vadic_check(&a, *radius, *samples, ctx.seed)?;
            r.output("a_in_u", rep.a_in_u);
            r.output("disc_valuation", rep.disc_valuation);
            r.output("passes", rep.passes());
            r.output("fails", rep.fails());
            r.output("refused", rep.refused());
            r.output("minimal_radius", rep.minimal_radius);
            r.output(
                "samples",
                rep.samples
                    .iter()
                    .map(|s| json!({"b": pt(&s.b), "in_u": s.b_in_u, "equiv": s.equiv}))
                    .collect::<Vec<_>>(),
            );
            if rep.refused() > 0 {
                r.note(format!("{} samples refused for lack of precision", rep.refused()));
            }
            r.check("all_samples_pass", rep.fails() == 0);
        }
    }
    Ok(())
}
