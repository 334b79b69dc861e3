//! One function per subcommand.

use crate::{dot, Context, Outcome};
use serde_json::json;
use tricat::presets;
use tricat::rigid::complement;
use tricat::tricat::{sorted, StObject};
use tricat::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Main,
    Fbar,
    Localisations,
    All,
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "main" => Ok(Theorem::Main),
            "fbar" => Ok(Theorem::Fbar),
            "localisations" => Ok(Theorem::Localisations),
            "all" => Ok(Theorem::All),
            _ => Err(Error::InvalidInput(format!("unknown theorem {s}"))),
        }
    }
}

pub fn preset_list() -> Result<Outcome> {
    let infos: Vec<_> = presets::names().into_iter().map(presets::info).collect::<Result<_>>()?;
    let rows: Vec<_> = infos
        .iter()
        .map(|i| json!({"name": i.name, "description": i.description, "n": i.n, "a": i.a, "b": i.b, "engine": i.engine}))
        .collect();
    Ok(Outcome::new(json!({ "presets": rows })))
}

pub fn preset_validate(name: &str) -> Result<Outcome> {
    let ctx = Context::preset(name)?;
    let p = ctx.preset.as_ref().expect("preset context");
    let serre = ctx.cat.serre_check()?;
    let mut out = Outcome::new(json!({
        "validation": p.validation,
        "serre": serre,
        "labels": ctx.cat.labels,
    }));
    out.check("serre_equals_tau_sigma", serre.serre_equals_tau_sigma);
    out.check("translation_quiver", ctx.cat.ar_quiver().is_translation_quiver());
    out.dots.insert("ar".into(), dot::ar_quiver(&ctx.cat, name, &[], &[]));
    Ok(out)
}

fn require_indecomposable(ctx: &Context, r: &[usize]) -> Result<()> {
    if r.len() == 1 {
        Ok(())
    } else {
        Err(Error::UnsupportedShape(format!("{} is not indecomposable", ctx.cat.label_obj(r))))
    }
}

pub fn mutate(ctx: &Context, t: &[usize], r: &[usize], indecomposable_only: bool) -> Result<Outcome> {
    if indecomposable_only {
        require_indecomposable(ctx, r)?;
    }
    let c = &ctx.cat;
    let m = c.mutate(t, r)?;
    let tri = &m.exchange;
    let mut out = Outcome::new(json!({
        "t": c.label_obj(&sorted(t)),
        "r": c.label_obj(&sorted(r)),
        "t_prime": c.label_obj(&m.t_prime),
        "r_star": c.label_obj(&m.r_star),
        "b": c.label_obj(&m.b),
        "exchange_triangle": [c.label_obj(&tri.x), c.label_obj(&tri.y), c.label_obj(&tri.z), c.label_obj(&c.sigma_obj(&tri.x))],
        "t_prime_cluster_tilting": c.is_cluster_tilting(&m.t_prime),
        "t_cluster_tilting": c.is_cluster_tilting(t),
    }));
    out.check("exchange_triangle_exact", c.is_exact_triangle(tri));
    out.check("t_prime_rigid", c.is_rigid(&m.t_prime));
    out.dots.insert("exchange".into(), dot::triangle(c, "exchange", tri));
    out.dots.insert("t_prime".into(), dot::ar_quiver(c, "t_prime", &m.t_prime, &[]));
    Ok(out)
}

/// `C(T)`, or `C̄(T)` with the perpendicular-category checks when `R` is given.
pub fn subcat(ctx: &Context, t: &[usize], r: Option<&[usize]>, cbart: bool) -> Result<Outcome> {
    let c = &ctx.cat;
    if cbart && r.is_none() {
        return Err(Error::InvalidInput("--cbart needs --R".into()));
    }
    match r {
        None => {
            let ct = c.c_set(t)?;
            let mut out = Outcome::new(json!({
                "t": c.label_obj(&sorted(t)),
                "c_t": ctx.labels(&ct),
                "membership": membership(ctx, &ct),
            }));
            out.dots.insert("c_t".into(), dot::ar_quiver(c, "c_t", &ct, t));
            Ok(out)
        }
        Some(r) => {
            let tbar = complement(t, r);
            let cbar = c.cbar_set(t, &tbar)?;
            let perps = c.check_compute_perps(t, r)?;
            let m = c.mutate(t, r)?;
            let sigma_t_prime = sorted(&c.sigma_obj(&m.t_prime));
            let mut out = Outcome::new(json!({
                "t": c.label_obj(&sorted(t)),
                "r": c.label_obj(&sorted(r)),
                "cbar": ctx.labels(&cbar),
                "non_members": ctx.labels(&(0..c.n()).filter(|x| !cbar.contains(x)).collect::<Vec<_>>()),
                "sigma_t_prime": ctx.labels(&sigma_t_prime),
                "membership": membership(ctx, &cbar),
                "perps": perps,
            }));
            out.check("cbar_criteria_agree", perps.criteria_agree);
            out.check("cbar_cap_perp", perps.cbar_cap_perp);
            out.check("under_cap_perp", perps.under_cap_perp);
            out.dots.insert("cbar".into(), dot::ar_quiver(c, "cbar", &cbar, &sigma_t_prime));
            Ok(out)
        }
    }
}

fn membership(ctx: &Context, set: &[usize]) -> serde_json::Value {
    let rows: Vec<_> = (0..ctx.cat.n())
        .map(|x| json!({"label": ctx.cat.labels[x], "cover": ctx.cat.cover[x], "member": set.contains(&x)}))
        .collect();
    json!(rows)
}

/// Runs the requested verifications; `seed` only picks the sampled morphisms.
pub fn verify(ctx: &Context, t: &[usize], r: &[usize], theorem: Theorem, seed: u64, two_of_three: bool) -> Result<Outcome> {
    let c = &ctx.cat;
    let mut out = Outcome::new(json!({
        "t": c.label_obj(&sorted(t)),
        "r": c.label_obj(&sorted(r)),
        "note": "localisations are represented by the quotient categories that model them; no category of fractions is built",
    }));
    let mut report = serde_json::Map::new();
    if matches!(theorem, Theorem::Main | Theorem::All) {
        match c.verify_main_equivalence(t, r) {
            Ok(rep) => {
                out.check("main_unit_iso", rep.unit_iso);
                out.check("main_counit_iso", rep.counit_iso);
                report.insert("main".into(), json!(rep));
            }
            Err(Error::EquivalenceFailure(m)) => {
                out.check(&format!("main: {m}"), false);
                report.insert("main".into(), json!({ "error": m }));
            }
            Err(e) => return Err(e),
        }
        let del = c.deletion_report(t, r)?;
        out.check("main_quiver_iso", del.tau_iso.is_some());
        out.dots.insert("left".into(), dot::quiver(&del.without_sigma_t_prime, "left", &[]));
        out.dots.insert("right".into(), dot::quiver(&del.tau_without_tau_t, "right", &[]));
        report.insert("quotient_quivers".into(), json!(del));
    }
    if matches!(theorem, Theorem::Fbar | Theorem::All) {
        let rep = c.verify_theorem_fbar(t, r)?;
        for (name, ok) in [
            ("e_routes_agree", rep.e_routes_agree),
            ("ec_faithful", rep.ec_faithful),
            ("fbar", rep.fbar),
            ("e_prime_routes_agree", rep.e_prime_routes_agree),
            ("ecprime_faithful", rep.ecprime_faithful),
            ("fbar_dual", rep.fbar_dual),
            ("localisations_equivalent", rep.localisations_equivalent),
            ("q_m_is_simple_top", rep.q_m_is_simple_top != Some(false)),
            ("b_is_add_s_m", rep.b_is_add_s_m != Some(false)),
            ("q_m_simple_in_e", rep.q_m_simple_in_e != Some(false)),
        ] {
            out.check(name, ok);
        }
        report.insert("fbar".into(), json!(rep));
    }
    if matches!(theorem, Theorem::Localisations | Theorem::All) {
        let rep = c.verify_more_localisations(t, r, seed)?;
        for f in &rep.failures {
            out.check(&format!("localisations: {f}"), false);
        }
        report.insert("localisations".into(), json!(rep));
        if two_of_three {
            let scan = c.two_out_of_three_scan(t, r)?;
            out.check("s_tilde_closed_under_composition", scan.composition_failures.is_empty());
            report.insert("two_out_of_three".into(), json!(scan));
        }
    }
    if let serde_json::Value::Object(m) = &mut out.report {
        m.extend(report);
    }
    Ok(out)
}

pub fn enumerate_rigid(ctx: &Context) -> Result<Outcome> {
    let c = &ctx.cat;
    let all = c.basic_rigid_objects();
    let rows: Vec<_> = all
        .iter()
        .map(|x: &StObject| json!({"object": ctx.labels(x), "cluster_tilting": !x.is_empty() && c.is_cluster_tilting(x)}))
        .collect();
    let count = c.count_rigid();
    Ok(Outcome::new(json!({ "count": count, "objects": rows })))
}
