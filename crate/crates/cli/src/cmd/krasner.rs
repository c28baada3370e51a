use clap::{Args, Subcommand};
use serde_json::json;

use krasner_core::ee::{cover_to_json, verify_witness};
use krasner_core::field::json::multipoly_to_json;
use krasner_core::krasner::{build, chain_rule_factors, verify_base_point};

use super::{el, mv, pt};
use crate::report::RunReport;
use crate::{parse, CliError, Ctx};

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long)]
    field: String,
    /// `[a_0, ..., a_(n-1)]` for `p_a = x^n + a_(n-1) x^(n-1) + ... + a_0`.
    #[arg(long)]
    poly: String,
}

#[derive(Subcommand, Debug)]
pub enum KrasnerCmd {
    /// Symbolic G, the independence determinant and the Jacobian determinant.
    Build(PolyArgs),
    /// Base-point identity, Jacobian versus discriminant, chain rule.
    Verify(PolyArgs),
    /// The class cover as cover JSON with a verified witness.
    Cover(PolyArgs),
}

pub fn run(c: &KrasnerCmd, _ctx: &Ctx, r: &mut RunReport) -> Result<(), CliError> {
    let (KrasnerCmd::Build(a) | KrasnerCmd::Verify(a) | KrasnerCmd::Cover(a)) = c;
    let d = parse::field(&a.field)?;
    r.field(&d);
    let v = parse::monic(&d, &a.poly)?;
    r.input("poly", mv(&v));
    let kd = build(&v)?;
    match c {
        KrasnerCmd::Build(_) => {
            r.output("g_sym", kd.g_sym.iter().map(multipoly_to_json).collect::<Vec<_>>());
            r.output("v_condition", multipoly_to_json(&kd.v_condition));
            r.output("jac_det", multipoly_to_json(&kd.jac_det));
            r.output("base_point", pt(&kd.base_point()));
            r.check("base_point_maps_to_a", kd.g_eval(&kd.base_point())? == v);
        }
        KrasnerCmd::Verify(_) => {
            let rep = verify_base_point(&kd)?;
            r.output("jac", el(&rep.jac_value));
            r.output("disc", el(&rep.disc_value));
            r.output("sign", rep.sign.map(i64::from));
            r.check("base_point_maps_to_a", rep.base_point_ok);
            r.check("jac_invertible", rep.jac_invertible);
            r.check("jac_equals_pm_disc", rep.jac_equals_pm_disc);
            if d.is_finite() {
                let ch = chain_rule_factors(&kd)?;
                r.output(
                    "chain_rule",
                    json!({
                        "splitting_field_order": ch.splitting_field.order().map(|q| q.to_string()),
                        "roots": pt(&ch.roots),
                        "jac_d": ch.jac_d,
                        "jac_d_displayed": ch.jac_d_displayed,
                        "jac_e": el(&ch.jac_e),
                        "jac_f": el(&ch.jac_f),
                        "product": el(&ch.product),
                        "jac_g": el(&ch.jac_g),
                    }),
                );
                r.check("chain_rule_product", ch.product == ch.jac_g);
            }
        }
        KrasnerCmd::Cover(_) => {
            let cover = kd.cover()?;
            let b = kd.base_point();
            let ok = verify_witness(&cover, &b, v.coeffs())?;
            let mut j = cover_to_json(&cover);
            j["witnesses"] = json!([{ "preimage": pt(&b), "point": mv(&v) }]);
            r.output("cover", j);
            r.check("witness_verified", ok);
        }
    }
    Ok(())
}
