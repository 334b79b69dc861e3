//! Reproduction of the worked examples. Which preset and which `T`, `R` each
//! figure uses is data; the content is recomputed.

use crate::{dot, Context, Outcome};
use serde_json::json;
use tricat::rigid::complement;
use tricat::subcat::quiver_iso;
use tricat::tricat::sorted;
use tricat::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    One,
    Two,
    Three,
    Four,
    Five,
    IntroA3,
    IntroA4,
}

impl std::str::FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Figure::One),
            "2" => Ok(Figure::Two),
            "3" => Ok(Figure::Three),
            "4" => Ok(Figure::Four),
            "5" => Ok(Figure::Five),
            "intro_A3" => Ok(Figure::IntroA3),
            "intro_A4" => Ok(Figure::IntroA4),
            _ => Err(Error::InvalidInput(format!("unknown figure {s}"))),
        }
    }
}

/// Preset, `T` and `R` of one example.
pub struct Setting {
    pub preset: &'static str,
    pub t: &'static str,
    pub r: &'static str,
}

impl Figure {
    pub fn all() -> [Figure; 7] {
        [Figure::One, Figure::Two, Figure::Three, Figure::Four, Figure::Five, Figure::IntroA3, Figure::IntroA4]
    }

    pub fn name(self) -> &'static str {
        match self {
            Figure::One => "figure_1",
            Figure::Two => "figure_2",
            Figure::Three => "figure_3",
            Figure::Four => "figure_4",
            Figure::Five => "figure_5",
            Figure::IntroA3 => "intro_A3",
            Figure::IntroA4 => "intro_A4",
        }
    }

    pub fn setting(self) -> Setting {
        match self {
            Figure::One | Figure::Two => Setting { preset: "A9_t3s1", t: "a,b,c", r: "c" },
            Figure::Three | Figure::Four => Setting { preset: "A9_t3s1", t: "a,c", r: "c" },
            Figure::Five => Setting { preset: "A5_tm2s1", t: "a,b,c,d", r: "c,d" },
            Figure::IntroA3 => Setting { preset: "A3_tm1s1", t: "T1,T2,T3", r: "T2" },
            Figure::IntroA4 => Setting { preset: "A4_tm1s1", t: "T1,T2,T3", r: "T2" },
        }
    }
}

pub fn reproduce(fig: Figure, seed: u64) -> Result<Outcome> {
    let s = fig.setting();
    let ctx = Context::preset(s.preset)?;
    let t = ctx.object(s.t)?;
    let r = ctx.object(s.r)?;
    let mut out = match fig {
        Figure::One | Figure::Three => encircled(&ctx, &t, &r)?,
        Figure::Two | Figure::Four => deletions(&ctx, &t, &r)?,
        Figure::Five => {
            let mut out = encircled(&ctx, &t, &r)?;
            let del = deletions(&ctx, &t, &r)?;
            merge(&mut out, del, "deletions");
            out
        }
        Figure::IntroA3 => nearly_morita(&ctx, &t, &r, true)?,
        Figure::IntroA4 => {
            let mut out = nearly_morita(&ctx, &t, &r, false)?;
            let v = crate::commands::verify(&ctx, &t, &r, crate::commands::Theorem::All, seed, false)?;
            merge(&mut out, v, "verification");
            out
        }
    };
    if let serde_json::Value::Object(m) = &mut out.report {
        m.insert("figure".into(), json!(fig.name()));
        m.insert("preset".into(), json!(s.preset));
    }
    Ok(out)
}

fn merge(into: &mut Outcome, other: Outcome, key: &str) {
    if let serde_json::Value::Object(m) = &mut into.report {
        m.insert(key.into(), other.report);
    }
    into.dots.extend(other.dots);
    into.passed &= other.passed;
    into.failures.extend(other.failures.into_iter().map(|f| format!("{key}: {f}")));
}

/// AR quiver with `C̄(T)` encircled, `ΣT′` grayed, plus the mutation.
fn encircled(ctx: &Context, t: &[usize], r: &[usize]) -> Result<Outcome> {
    let c = &ctx.cat;
    let mut out = crate::commands::subcat(ctx, t, Some(r), true)?;
    let m = c.mutate(t, r)?;
    let sigma_t_prime = sorted(&c.sigma_obj(&m.t_prime));
    let cbar = c.cbar_set(t, &complement(t, r))?;
    if let serde_json::Value::Object(map) = &mut out.report {
        map.insert("vertices".into(), json!(c.labels));
        map.insert("t_prime".into(), json!(c.label_obj(&m.t_prime)));
        map.insert(
            "exchange_triangle".into(),
            json!([c.label_obj(&m.exchange.x), c.label_obj(&m.exchange.y), c.label_obj(&m.exchange.z)]),
        );
        map.insert("t_cluster_tilting".into(), json!(c.is_cluster_tilting(t)));
        if r.len() == 1 {
            map.insert("loop_at_r".into(), json!(c.has_loop(t, r[0])));
        }
    }
    out.dots.clear();
    out.dots.insert("ar".into(), dot::ar_quiver(c, "ar", &cbar, &sigma_t_prime));
    Ok(out)
}

/// The quotient quivers of `C̄(T)` by `ΣT′` and by `T`, with the certificate.
fn deletions(ctx: &Context, t: &[usize], r: &[usize]) -> Result<Outcome> {
    let rep = ctx.cat.deletion_report(t, r)?;
    let mut out = Outcome::new(json!({
        "cbar": rep.cbar,
        "without_sigma_t_prime": rep.without_sigma_t_prime.labels,
        "without_t": rep.without_t.labels,
        "deletion_iso": rep.deletion_iso.as_ref().map(|iso| certificate(&rep.without_sigma_t_prime.labels, &rep.without_t.labels, iso)),
        "tau_iso": rep.tau_iso.as_ref().map(|iso| certificate(&rep.without_sigma_t_prime.labels, &rep.tau_without_tau_t.labels, iso)),
    }));
    out.check("deletion_iso", rep.deletion_iso.is_some());
    out.check("tau_iso", rep.tau_iso.is_some());
    out.dots.insert("without_sigma_t_prime".into(), dot::quiver(&rep.without_sigma_t_prime, "without_sigma_t_prime", &[]));
    out.dots.insert("without_t".into(), dot::quiver(&rep.without_t, "without_t", &[]));
    Ok(out)
}

fn certificate(from: &[String], to: &[String], iso: &[usize]) -> Vec<(String, String)> {
    iso.iter().enumerate().map(|(i, &j)| (from[i].clone(), to[j].clone())).collect()
}

/// Module categories of `End(T)` and `End(T′)` and their quotients by the
/// simples at `R` and `R*`. With `expect_iso` the quotients must be
/// isomorphic; otherwise the module categories must not be.
fn nearly_morita(ctx: &Context, t: &[usize], r: &[usize], expect_iso: bool) -> Result<Outcome> {
    let c = &ctx.cat;
    let m = c.mutate(t, r)?;
    let model = c.mod_model(t)?;
    let model_p = c.mod_model(&m.t_prime)?;
    let full = c.quotient_quiver(&model.objects, &c.sigma_obj(t));
    let full_p = c.quotient_quiver(&model_p.objects, &c.sigma_obj(&m.t_prime));
    let simple = sorted(&c.sigma_obj(&m.r_star));
    let simple_p = sorted(&c.sigma_obj(r));
    let mut kill = c.sigma_obj(t);
    kill.extend(&simple);
    let mut kill_p = c.sigma_obj(&m.t_prime);
    kill_p.extend(&simple_p);
    let q = c.quotient_quiver(&model.objects, &kill);
    let q_p = c.quotient_quiver(&model_p.objects, &kill_p);
    let iso = quiver_iso(&q, &q_p);
    let full_iso = quiver_iso(&full, &full_p).is_some();
    let mut out = Outcome::new(json!({
        "t": c.label_obj(&sorted(t)),
        "t_prime": c.label_obj(&m.t_prime),
        "mod": full.labels,
        "mod_prime": full_p.labels,
        "mod_quivers_isomorphic": full_iso,
        "simple": c.label_obj(&simple),
        "simple_prime": c.label_obj(&simple_p),
        "quotient": q.labels,
        "quotient_prime": q_p.labels,
        "quotient_iso": iso.as_ref().map(|i| certificate(&q.labels, &q_p.labels, i)),
    }));
    if expect_iso {
        out.check("quotient_iso", iso.is_some());
    } else {
        out.check("mod_quivers_differ", !full_iso);
    }
    out.dots.insert("mod".into(), dot::quiver(&full, "mod", &[c.label_obj(&simple)]));
    out.dots.insert("mod_prime".into(), dot::quiver(&full_p, "mod_prime", &[c.label_obj(&simple_p)]));
    out.dots.insert("quotient".into(), dot::quiver(&q, "quotient", &[]));
    out.dots.insert("quotient_prime".into(), dot::quiver(&q_p, "quotient_prime", &[]));
    Ok(out)
}
