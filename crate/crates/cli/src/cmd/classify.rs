use clap::Args;

use krasner_core::extensions::{count_classes, equiv, in_u, Sampler};

use super::mv;
use crate::report::RunReport;
use crate::{parse, CliError, Ctx};

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    deg: usize,
    /// Enumerate all of K^n (finite fields only).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Number of members of U to draw.
    #[arg(long)]
    samples: Option<usize>,
    /// Coefficient bound for random draws.
    #[arg(long, default_value_t = 60)]
    bound: i64,
}

pub fn run(a: &ClassifyArgs, ctx: &Ctx, r: &mut RunReport) -> Result<(), CliError> {
    let d = parse::field(&a.field)?;
    r.field(&d);
    r.input("deg", a.deg);
    let sampler = match (a.exhaustive, a.samples) {
        (_, Some(k)) => {
            r.input("samples", k);
            r.input("bound", a.bound);
            Sampler::Random { accepted: k, seed: ctx.seed, bound: a.bound, max_draws: k.saturating_mul(50) }
        }
        (true, None) => Sampler::Exhaustive { budget: ctx.budget.limit },
        (false, None) if d.is_finite() => Sampler::Exhaustive { budget: ctx.budget.limit },
        (false, None) => return Err(CliError::Usage("infinite fields need --samples".into())),
    };
    let c = count_classes(&d, a.deg, &sampler)?;
    r.output("count", c.count);
    r.output("reps", c.representatives.iter().map(mv).collect::<Vec<_>>());
    r.output("method", c.method);
    r.output("examined", c.examined);
    r.output("accepted", c.accepted);
    for n in &c.precision_notes {
        r.note(n.clone());
    }
    // representatives are in U and pairwise inequivalent
    let mut ok = true;
    for (i, x) in c.representatives.iter().enumerate() {
        ok &= in_u(x)?;
        for y in &c.representatives[..i] {
            ok &= !equiv(x, y).unwrap_or(true);
        }
    }
    r.check("representatives_distinct", ok);
    Ok(())
}
