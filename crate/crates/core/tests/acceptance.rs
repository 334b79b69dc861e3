//! Acceptance suite: ten criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines are always printed; exits nonzero on failure.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::Instant;
use tricat::linalg::{unit_vec, Q};
use tricat::modcat::LocClass;
use tricat::presets::{self, load, Preset};
use tricat::rigid::complement;
use tricat::subcat::{quiver_iso, Quiver};
use tricat::tricat::{sorted, StObject, TriCat};
use tricat::Error;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn labels_of(c: &TriCat, ids: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = ids.iter().map(|&x| c.labels[x].clone()).collect();
    v.sort();
    v
}

fn quiver_labels(q: &Quiver) -> Vec<String> {
    let mut v = q.labels.clone();
    v.sort();
    v
}

fn obj(c: &TriCat, l: &[&str]) -> Result<StObject, String> {
    c.obj_of(l).map_err(|e| e.to_string())
}

fn err(e: Error) -> String {
    e.to_string()
}

fn strings(l: &[&str]) -> Vec<String> {
    l.iter().map(|s| s.to_string()).collect()
}

fn criterion_1() -> Check {
    let mut notes = Vec::new();
    for name in ["A9_t3s1", "A5_tm2s1", "A3_tm1s1", "A4_tm1s1"] {
        let p = load(name).map_err(err)?;
        let n = p.cat.n();
        ensure(p.validation.vertices == n && p.validation.hom_pairs_checked == n * n, || format!("{name}: incomplete validation"))?;
        ensure(p.cat.ar_quiver().is_translation_quiver(), || format!("{name}: AR quiver is not a translation quiver"))?;
        notes.push(format!("{name} {n}"));
    }
    let p = load("A9_t3s1").map_err(err)?;
    let expected = strings(&["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "p", "q", "r", "s"]);
    ensure(labels_of(&p.cat, &(0..p.cat.n()).collect::<Vec<_>>()) == expected, || "A9_t3s1 labels differ from the 18 figure labels".into())?;
    Ok(notes.join(", "))
}

fn criterion_2() -> Check {
    let p = load("A9_t3s1").map_err(err)?;
    let c = &p.cat;
    let t = obj(c, &["a", "b", "c"])?;
    let r = obj(c, &["c"])?;
    ensure(c.is_cluster_tilting(&t), || "T is not cluster-tilting".into())?;
    ensure(c.has_loop(&t, r[0]), || "no loop at c".into())?;
    let m = c.mutate(&t, &r).map_err(err)?;
    ensure(c.label_obj(&m.t_prime) == "a+b+s", || format!("T' = {}", c.label_obj(&m.t_prime)))?;
    let ex = &m.exchange;
    ensure(
        c.label_obj(&ex.x) == "s" && c.label_obj(&sorted(&ex.y)) == "b+b" && c.label_obj(&ex.z) == "c",
        || "exchange triangle differs".into(),
    )?;
    let cbar = c.cbar_set(&t, &complement(&t, &r)).map_err(err)?;
    ensure(cbar.len() == 14, || format!("|C̄(T)| = {}", cbar.len()))?;
    let outside: Vec<usize> = (0..c.n()).filter(|x| !cbar.contains(x)).collect();
    ensure(labels_of(c, &outside) == strings(&["f", "k", "p", "s"]), || format!("non-members {:?}", labels_of(c, &outside)))?;
    let rep = c.deletion_report(&t, &r).map_err(err)?;
    ensure(rep.deletion_iso.is_some() && rep.tau_iso.is_some(), || "quotient quivers not isomorphic".into())?;
    Ok(format!("C̄(T) has 14 objects; quotients of size {} isomorphic", rep.without_sigma_t_prime.len()))
}

fn criterion_3() -> Check {
    let p = load("A9_t3s1").map_err(err)?;
    let c = &p.cat;
    let t = obj(c, &["a", "c"])?;
    let r = obj(c, &["c"])?;
    let m = c.mutate(&t, &r).map_err(err)?;
    ensure(c.label_obj(&m.t_prime) == "a+n", || format!("T' = {}", c.label_obj(&m.t_prime)))?;
    let ex = &m.exchange;
    ensure(
        c.label_obj(&ex.x) == "n" && c.label_obj(&sorted(&ex.y)) == "a+a" && c.label_obj(&ex.z) == "c",
        || "exchange triangle differs".into(),
    )?;
    let cbar = c.cbar_set(&t, &complement(&t, &r)).map_err(err)?;
    ensure(labels_of(c, &cbar) == strings(&["a", "c", "d", "h", "i", "q"]), || format!("C̄(T) = {:?}", labels_of(c, &cbar)))?;
    ensure(labels_of(c, &c.sigma_obj(&m.t_prime)) == strings(&["i", "q"]), || "ΣT' differs".into())?;
    let rep = c.deletion_report(&t, &r).map_err(err)?;
    ensure(quiver_labels(&rep.without_sigma_t_prime) == strings(&["a", "c", "d", "h"]), || "C̄(T)/(ΣT') objects differ".into())?;
    ensure(quiver_labels(&rep.without_t) == strings(&["d", "h", "i", "q"]), || "C̄(T)/(T) objects differ".into())?;
    ensure(rep.deletion_iso.is_some(), || "not isomorphic".into())?;
    Ok("{a,c,d,h} ≅ {d,h,i,q}".into())
}

fn criterion_4() -> Check {
    let p = load("A5_tm2s1").map_err(err)?;
    let c = &p.cat;
    let t = obj(c, &["a", "b", "c", "d"])?;
    let r = obj(c, &["c", "d"])?;
    let m = c.mutate(&t, &r).map_err(err)?;
    ensure(labels_of(c, &m.t_prime) == strings(&["a", "b", "c'", "d'"]), || format!("T' = {}", c.label_obj(&m.t_prime)))?;
    ensure(labels_of(c, &c.sigma_obj(&m.t_prime)) == strings(&["e", "f", "g", "h"]), || "ΣT' differs from e,f,g,h".into())?;
    let rep = c.deletion_report(&t, &r).map_err(err)?;
    let kept_t = quiver_labels(&rep.without_t);
    let kept_s = quiver_labels(&rep.without_sigma_t_prime);
    ensure(["a", "b", "c", "d"].iter().all(|l| !kept_t.contains(&l.to_string())), || "a,b,c,d not deleted".into())?;
    ensure(["e", "f", "g", "h"].iter().all(|l| !kept_s.contains(&l.to_string())), || "e,f,g,h not deleted".into())?;
    ensure(kept_t.len() + 4 == rep.cbar.len() && kept_s.len() + 4 == rep.cbar.len(), || "deletions of the wrong size".into())?;
    ensure(rep.deletion_iso.is_some(), || "deletions not isomorphic".into())?;
    Ok(format!("{} encircled, both deletions have {}", rep.cbar.len(), kept_t.len()))
}

fn criterion_5() -> Check {
    let p = load("A3_tm1s1").map_err(err)?;
    let c = &p.cat;
    let t = obj(c, &["T1", "T2", "T3"])?;
    let r = obj(c, &["T2"])?;
    let m = c.mutate(&t, &r).map_err(err)?;
    let model = c.mod_model(&t).map_err(err)?;
    let model_p = c.mod_model(&m.t_prime).map_err(err)?;
    ensure(model.objects.len() == 6, || format!("mod Γ model has {} objects", model.objects.len()))?;
    let mut kill = c.sigma_obj(&t);
    kill.extend(c.sigma_obj(&m.r_star));
    let mut kill_p = c.sigma_obj(&m.t_prime);
    kill_p.extend(c.sigma_obj(&r));
    let q = c.quotient_quiver(&model.objects, &kill);
    let q_p = c.quotient_quiver(&model_p.objects, &kill_p);
    ensure(q.len() == 5 && q_p.len() == 5, || format!("quotients of size {} and {}", q.len(), q_p.len()))?;
    ensure(quiver_iso(&q, &q_p).is_some(), || "A3 quotients not isomorphic".into())?;

    let p = load("A4_tm1s1").map_err(err)?;
    let c = &p.cat;
    let t = obj(c, &["T1", "T2", "T3"])?;
    let r = obj(c, &["T2"])?;
    let m = c.mutate(&t, &r).map_err(err)?;
    let full = c.quotient_quiver(&c.mod_model(&t).map_err(err)?.objects, &c.sigma_obj(&t));
    let full_p = c.quotient_quiver(&c.mod_model(&m.t_prime).map_err(err)?.objects, &c.sigma_obj(&m.t_prime));
    ensure(quiver_iso(&full, &full_p).is_none(), || "A4 module quivers isomorphic".into())?;
    let rep = c.verify_theorem_fbar(&t, &r).map_err(err)?;
    ensure(rep.passed(), || format!("fbar report failed: {rep:?}"))?;
    ensure(rep.b_is_add_s_m == Some(true) && rep.b_objects.len() == 1, || "B is not add S₂".into())?;
    let loc = c.verify_more_localisations(&t, &r, 5).map_err(err)?;
    ensure(loc.passed(), || format!("{:?}", loc.failures))?;
    Ok(format!("A3 quotients 5 ≅ 5; A4 {} vs {} objects, localisations verified", full.len(), full_p.len()))
}

/// All nonzero basic rigid `T` with every nonempty summand `R`.
fn all_splits(c: &TriCat) -> Vec<(StObject, StObject)> {
    let mut out = Vec::new();
    for t in c.basic_rigid_objects().into_iter().filter(|t| !t.is_empty()) {
        for mask in 1u32..(1 << t.len()) {
            let r = t.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &x)| x).collect();
            out.push((t.clone(), r));
        }
    }
    out
}

const SAMPLE: usize = 200;

/// Every split of cluster A₃, and `SAMPLE` splits (all, if fewer) of the other
/// presets whose mutation stays rigid. Returns (preset, splits, skipped).
fn split_sample() -> Result<Vec<(Preset, Vec<(StObject, StObject)>, usize)>, String> {
    let mut out = Vec::new();
    for name in ["A3_tm1s1", "A4_tm1s1", "A9_t3s1", "A5_tm2s1"] {
        let p = load(name).map_err(err)?;
        let mut splits = all_splits(&p.cat);
        if name != "A3_tm1s1" {
            splits.shuffle(&mut ChaCha8Rng::seed_from_u64(6));
        }
        let mut kept = Vec::new();
        let mut skipped = 0;
        for (t, r) in splits {
            if name != "A3_tm1s1" && kept.len() == SAMPLE {
                break;
            }
            match p.cat.mutate(&t, &r) {
                Ok(_) => kept.push((t, r)),
                Err(Error::RigidityLost(_)) => skipped += 1,
                Err(e) => return Err(format!("{name}: {e}")),
            }
        }
        out.push((p, kept, skipped));
    }
    Ok(out)
}

fn criterion_6(sample: &[(Preset, Vec<(StObject, StObject)>, usize)]) -> Check {
    let mut notes = Vec::new();
    for (p, splits, skipped) in sample {
        let c = &p.cat;
        for (t, r) in splits {
            let rep = c.check_compute_perps(t, r).map_err(err)?;
            ensure(rep.passed(), || format!("{}: {rep:?}", p.info.name))?;
        }
        notes.push(format!("{} {} (skipped {})", p.info.name, splits.len(), skipped));
    }
    let a3 = &sample[0].1;
    ensure(a3.iter().map(|(t, _)| t).collect::<std::collections::BTreeSet<_>>().len() == 44, || "A3 did not cover 44 nonzero rigid objects".into())?;
    ensure(sample[1..].iter().all(|(_, s, _)| s.len() >= SAMPLE.min(242)), || "sample too small".into())?;
    Ok(notes.join(", "))
}

fn criterion_7(sample: &[(Preset, Vec<(StObject, StObject)>, usize)]) -> Check {
    let mut total = 0;
    for (p, splits, _) in sample {
        for (t, r) in splits {
            let rep = p.cat.verify_main_equivalence(t, r).map_err(|e| format!("{}: T={} R={}: {e}", p.info.name, p.cat.label_obj(t), p.cat.label_obj(r)))?;
            ensure(rep.unit_iso && rep.counit_iso, || format!("{}: unit or counit not iso", p.info.name))?;
            total += 1;
        }
    }
    Ok(format!("{total} splits"))
}

fn criterion_8() -> Check {
    let mut notes = Vec::new();
    for (name, t, r) in [("A9_t3s1", vec!["a", "c"], vec!["c"]), ("A4_tm1s1", vec!["T1", "T2", "T3"], vec!["T2"])] {
        let p = load(name).map_err(err)?;
        let c = &p.cat;
        let (t, r) = (obj(c, &t)?, obj(c, &r)?);
        let fbar = c.verify_theorem_fbar(&t, &r).map_err(err)?;
        ensure(fbar.passed(), || format!("{name}: {fbar:?}"))?;
        let loc = c.verify_more_localisations(&t, &r, 8).map_err(err)?;
        ensure(loc.passed(), || format!("{name}: {:?}", loc.failures))?;
        ensure(
            loc.inverses_constructed > 0 && loc.stilde_sb0_compared > 0 && loc.z_in_ct_checked > 0 && loc.b_factorisations_compared > 0,
            || format!("{name}: a sub-check never ran: {loc:?}"),
        )?;
        let ls = c.loc_setup(&t, &r).map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut tested = 0;
        for x in 0..c.n() {
            for y in 0..c.n() {
                let d = c.hom_dim(x, y);
                if d == 0 {
                    continue;
                }
                let span: Vec<Vec<Q>> = (0..d).map(|i| unit_vec(d, i)).collect();
                let f = c.random_in_span(&[x], &[y], &span, &mut rng);
                let cls = c.classify_morphism(&ls, &f).map_err(err)?;
                ensure(!cls.contains(&LocClass::S) || cls.contains(&LocClass::STilde), || format!("{name}: S ⊄ S̃"))?;
                tested += 1;
            }
        }
        notes.push(format!("{name}: {} sampled, {} inverses, S ⊆ S̃ on {tested} more", loc.morphisms_tested, loc.inverses_constructed));
    }
    Ok(notes.join("; "))
}

fn criterion_9() -> Check {
    let mut notes = Vec::new();
    for name in presets::names() {
        let p = load(name).map_err(err)?;
        let c = &p.cat;
        let n = c.n();
        c.serre_check().map_err(err)?;
        for x in 0..n {
            let profile: Vec<usize> = (0..n).map(|y| c.hom_dim(x, y)).collect();
            let candidates: Vec<usize> = (0..n).filter(|&z| (0..n).all(|y| c.hom_dim(y, z) == profile[y])).collect();
            ensure(candidates == vec![c.tau[c.sigma[x]]], || format!("{name}: Serre image of {} is {:?}", c.labels[x], labels_of(c, &candidates)))?;
        }
        let mut cones = 0;
        if let Some(model) = &p.model {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            while cones < 100 {
                let (x, y) = (rand::Rng::gen_range(&mut rng, 0..n), rand::Rng::gen_range(&mut rng, 0..n));
                let d = c.hom_dim(x, y);
                if d == 0 {
                    continue;
                }
                let span: Vec<Vec<Q>> = (0..d).map(|i| unit_vec(d, i)).collect();
                let f = c.random_in_span(&[x], &[y], &span, &mut rng);
                let a = sorted(&model.cone_of(&f).map_err(err)?);
                let b = sorted(&model.cone_of_perturbed(&f, rand::Rng::gen(&mut rng)).map_err(err)?);
                ensure(a == b, || format!("{name}: cone of {}→{} depends on the representative", c.labels[x], c.labels[y]))?;
                cones += 1;
            }
        }
        notes.push(format!("{name} {} pairs, {cones} cones", n * n));
    }
    Ok(notes.join(", "))
}

/// Diagonals of a convex hexagon as vertex pairs `(i, j)`, `j - i ≥ 2`, not the edge `(0, 5)`.
fn hexagon_diagonals() -> Vec<(usize, usize)> {
    let mut d = Vec::new();
    for i in 0..6 {
        for j in i + 2..6 {
            if !(i == 0 && j == 5) {
                d.push((i, j));
            }
        }
    }
    d
}

fn cross(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

fn criterion_10() -> Check {
    let diags = hexagon_diagonals();
    let mut oracle: BTreeMap<usize, usize> = BTreeMap::new();
    for mask in 0u32..(1 << diags.len()) {
        let chosen: Vec<(usize, usize)> = (0..diags.len()).filter(|i| mask >> i & 1 == 1).map(|i| diags[i]).collect();
        if chosen.iter().enumerate().all(|(i, &a)| chosen[i + 1..].iter().all(|&b| !cross(a, b))) {
            *oracle.entry(chosen.len()).or_default() += 1;
        }
    }
    let p = load("A3_tm1s1").map_err(err)?;
    let c = &p.cat;
    let mut found: BTreeMap<usize, usize> = BTreeMap::new();
    for t in c.basic_rigid_objects() {
        *found.entry(t.len()).or_default() += 1;
    }
    let count = c.count_rigid();
    let total: usize = oracle.values().sum();
    ensure(found == oracle, || format!("by size: {found:?} vs oracle {oracle:?}"))?;
    ensure(count.basic_rigid == total && total == 45, || format!("{} rigid vs {total}", count.basic_rigid))?;
    ensure(count.cluster_tilting == oracle[&3] && oracle[&3] == 14, || format!("{} cluster-tilting", count.cluster_tilting))?;
    Ok(format!("{total} rigid (by size {oracle:?}), {} cluster-tilting", count.cluster_tilting))
}

const TITLES: [&str; 10] = [
    "preset validation",
    "cluster-tilting example with a loop",
    "non-maximal rigid example",
    "A5 example deletions",
    "A3 and A4 module examples",
    "perpendicular-category lemma suite",
    "main equivalence suite",
    "localisation suite",
    "engine self-consistency",
    "rigid enumeration in cluster A3",
];

fn main() {
    let start = Instant::now();
    let results: Vec<(Check, f64)> = std::thread::scope(|s| {
        let timed = |f: fn() -> Check| {
            move || {
                let t = Instant::now();
                let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                (r, t.elapsed().as_secs_f64())
            }
        };
        let sampled = s.spawn(|| {
            let t = Instant::now();
            let sample = split_sample();
            let (r6, r7) = match &sample {
                Ok(sample) => std::thread::scope(|s2| {
                    let h6 = s2.spawn(|| {
                        let t = Instant::now();
                        (criterion_6(sample), t.elapsed().as_secs_f64())
                    });
                    let h7 = s2.spawn(|| {
                        let t = Instant::now();
                        (criterion_7(sample), t.elapsed().as_secs_f64())
                    });
                    (h6.join().unwrap_or((Err("panicked".into()), 0.0)), h7.join().unwrap_or((Err("panicked".into()), 0.0)))
                }),
                Err(e) => ((Err(e.clone()), 0.0), (Err(e.clone()), 0.0)),
            };
            let setup = t.elapsed().as_secs_f64() - r6.1.max(r7.1);
            ((r6.0, r6.1 + setup), (r7.0, r7.1 + setup))
        });
        let singles: Vec<_> = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_8, criterion_9, criterion_10]
            .into_iter()
            .map(|f| s.spawn(timed(f)))
            .collect();
        let mut singles: Vec<(Check, f64)> = singles.into_iter().map(|h| h.join().expect("criterion thread")).collect();
        let (r6, r7) = sampled.join().expect("sample thread");
        let tail = singles.split_off(5);
        singles.push(r6);
        singles.push(r7);
        singles.extend(tail);
        singles
    });
    let mut failed = 0;
    for (i, ((res, secs), title)) in results.iter().zip(TITLES).enumerate() {
        match res {
            Ok(note) => println!("criterion {:>2} PASS ({secs:5.1}s) {title}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL ({secs:5.1}s) {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 10 passed in {:.1}s", 10 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
