use std::collections::BTreeSet;

use clap::{Args, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use krasner_core::ee::{
    affine_transform, cover_from_json, cover_to_json, image, intersect, membership_witness, verify_witness, EtaleCover,
};
use krasner_core::field::enumerate_field;
use krasner_core::{Error, FieldElement, FiniteField};

use super::pt;
use crate::report::RunReport;
use crate::{parse, CliError, Ctx};

#[derive(Args, Debug)]
pub struct CoverArg {
    /// Cover JSON file, or `-` for stdin.
    #[arg(long)]
    cover: String,
}

#[derive(Subcommand, Debug)]
pub enum EeCmd {
    /// Every image point over a finite field.
    Image(CoverArg),
    /// A preimage of `--point`, if one exists.
    Member {
        #[command(flatten)]
        c: CoverArg,
        #[arg(long)]
        point: String,
    },
    /// Points in both images, or the fiber over `--point`.
    Intersect {
        #[command(flatten)]
        c: CoverArg,
        #[arg(long)]
        cover2: String,
        #[arg(long)]
        point: Option<String>,
    },
    /// The cover of `scale * image + shift`.
    Transform {
        #[command(flatten)]
        c: CoverArg,
        #[arg(long)]
        shift: String,
        #[arg(long)]
        scale: String,
    },
}

fn load(path: &str) -> Result<EtaleCover, CliError> {
    Ok(cover_from_json(&parse::json_file(path)?)?)
}

fn keys(v: &[Vec<FieldElement>]) -> BTreeSet<Vec<u128>> {
    v.iter().map(|p| p.iter().map(FiniteField::index).collect()).collect()
}

/// Image recomputed by a plain sequential odometer over the domain.
fn image_oracle(c: &EtaleCover) -> Result<BTreeSet<Vec<u128>>, CliError> {
    let elems: Vec<FieldElement> = enumerate_field(c.field())?.collect();
    let m = c.nvars();
    let mut idx = vec![0usize; m];
    let mut out = BTreeSet::new();
    loop {
        let v: Vec<FieldElement> = idx.iter().map(|&i| elems[i].clone()).collect();
        if c.in_domain(&v)? {
            out.insert(c.apply(&v)?.iter().map(FiniteField::index).collect());
        }
        let Some(k) = (0..m).rev().find(|&k| idx[k] + 1 < elems.len()) else { break };
        idx[k] += 1;
        idx[k + 1..].iter_mut().for_each(|i| *i = 0);
    }
    Ok(out)
}

pub fn run(c: &EeCmd, ctx: &Ctx, r: &mut RunReport) -> Result<(), CliError> {
    match c {
        EeCmd::Image(a) => {
            let cover = load(&a.cover)?;
            r.field(cover.field());
            r.input("cover", a.cover.clone());
            let img = image(&cover, cover.field(), ctx.budget)?;
            r.output("count", img.len());
            r.output("points", img.iter().map(|p| pt(p)).collect::<Vec<_>>());
            r.check("image_reenumerated", keys(&img) == image_oracle(&cover)?);
        }
        EeCmd::Member { c: a, point } => {
            let cover = load(&a.cover)?;
            let d = cover.field().clone();
            r.field(&d);
            let w = parse::elements(&d, point)?;
            r.input("point", pt(&w));
            match membership_witness(&cover, &w, ctx.budget) {
                Ok(Some(v)) => {
                    r.output("member", true);
                    r.output("witness", pt(&v));
                    r.check("witness_verified", verify_witness(&cover, &v, &w)?);
                }
                Ok(None) => {
                    r.output("member", false);
                    r.output("witness", Value::Null);
                }
                Err(Error::Inconclusive(m)) => {
                    r.output("member", Value::Null);
                    r.note(format!("inconclusive: {m}"));
                }
                Err(e) => return Err(e.into()),
            }
            if d.is_padic() {
                r.note("p-adic search covers integral preimages only");
            }
        }
        EeCmd::Intersect { c: a, cover2, point } => {
            let (c1, c2) = (load(&a.cover)?, load(cover2)?);
            r.field(c1.field());
            let mut sys = intersect(&c1, &c2)?;
            if let Some(p) = point {
                let w = parse::elements(c1.field(), p)?;
                r.input("point", pt(&w));
                sys = sys.restrict_to(&w)?;
            }
            let sols = sys.solve_finite(ctx.budget)?;
            let proj = sys.projected_solutions(ctx.budget)?;
            r.output("solutions", sols.len());
            r.output("points", proj.iter().map(|p| pt(p)).collect::<Vec<_>>());
            let mut ok = true;
            for s in &sols {
                ok &= sys.is_solution(s)?;
            }
            r.check("solutions_verified", ok);
        }
        EeCmd::Transform { c: a, shift, scale } => {
            let cover = load(&a.cover)?;
            let d = cover.field().clone();
            r.field(&d);
            let (s, k) = (parse::elements(&d, shift)?, parse::elements(&d, scale)?);
            r.input("shift", pt(&s));
            r.input("scale", pt(&k));
            let t = affine_transform(&cover, &s, &k)?;
            r.output("cover", cover_to_json(&t));
            // spot-check the transformed map at seeded small-integer points
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let mut ok = true;
            for _ in 0..32 {
                let v: Vec<FieldElement> =
                    (0..cover.nvars()).map(|_| FieldElement::from_i64(&d, rng.random_range(-9..=9))).collect();
                let (x, y) = (cover.apply(&v)?, t.apply(&v)?);
                ok &= x.iter().zip(&y).zip(s.iter().zip(&k)).all(|((x, y), (s, k))| *y == k.clone() * x.clone() + s.clone());
            }
            r.check("transform_pointwise", ok);
        }
    }
    Ok(())
}
