use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use tricat::linalg::{unit_vec, Q};
use tricat::modcat::LocClass;
use tricat::presets::{self, Preset};
use tricat::rigid::complement;
use tricat::subcat::{quiver_iso, Quiver, Side};
use tricat::tricat::{sorted, StMorphism, StObject, TriCat};
use tricat::Error;

struct Loaded {
    preset: Preset,
    /// Nonzero basic rigid objects.
    rigid: Vec<StObject>,
}

fn loaded() -> &'static [Loaded] {
    static CELL: OnceLock<Vec<Loaded>> = OnceLock::new();
    CELL.get_or_init(|| {
        presets::names()
            .into_iter()
            .map(|n| {
                let preset = presets::load(n).unwrap();
                let rigid = preset.cat.basic_rigid_objects().into_iter().filter(|x| !x.is_empty()).collect();
                Loaded { preset, rigid }
            })
            .collect()
    })
}

fn cat(i: usize) -> &'static TriCat {
    &loaded()[i % loaded().len()].preset.cat
}

/// A basic rigid `T` and a nonempty summand `R`, chosen by two indices and a mask.
fn any_split(i: usize, k: usize, mask: u32) -> (&'static TriCat, StObject, StObject) {
    let l = &loaded()[i % loaded().len()];
    let t = l.rigid[k % l.rigid.len()].clone();
    let mut r: StObject = t.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &x)| x).collect();
    if r.is_empty() {
        r.push(t[0]);
    }
    (&l.preset.cat, t, r)
}

/// As [`any_split`], restricted to splits whose mutation stays rigid.
fn split(i: usize, k: usize, mask: u32) -> Option<(&'static TriCat, StObject, StObject)> {
    let (c, t, r) = any_split(i, k, mask);
    match c.mutate(&t, &r) {
        Ok(_) => Some((c, t, r)),
        Err(Error::RigidityLost(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

const CLUSTER_PRESETS: [&str; 2] = ["A3_tm1s1", "A4_tm1s1"];

fn random_map(c: &TriCat, x: usize, y: usize, seed: u64) -> StMorphism {
    let d = c.hom_dim(x, y);
    let span: Vec<Vec<Q>> = (0..d).map(|i| unit_vec(d, i)).collect();
    c.random_in_span(&[x], &[y], &span, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn sigma_preserves_hom_dimensions(i in 0usize..4, x in 0usize..64, y in 0usize..64) {
        let c = cat(i);
        let (x, y) = (x % c.n(), y % c.n());
        prop_assert_eq!(c.hom_dim(x, y), c.hom_dim(c.sigma[x], c.sigma[y]));
    }

    #[test]
    fn serre_duality_dimensions(i in 0usize..4, x in 0usize..64, y in 0usize..64) {
        let c = cat(i);
        let (x, y) = (x % c.n(), y % c.n());
        prop_assert_eq!(c.hom_dim(x, y), c.hom_dim(y, c.serre[x]));
        prop_assert_eq!(c.serre[x], c.tau[c.sigma[x]]);
    }

    #[test]
    fn triangles_are_exact_and_rotate(i in 0usize..4, x in 0usize..64, y in 0usize..64, seed in any::<u64>()) {
        let c = cat(i);
        let (x, y) = (x % c.n(), y % c.n());
        let f = random_map(c, x, y, seed);
        let tri = c.complete_triangle(&f).unwrap();
        prop_assert!(c.is_exact_triangle(&tri));
        let rot = c.complete_triangle(&tri.g).unwrap();
        prop_assert_eq!(sorted(&rot.z), sorted(&c.sigma_obj(&[x])));
    }

    #[test]
    fn cone_independent_of_representative(i in 0usize..4, x in 0usize..64, y in 0usize..64, seed in any::<u64>()) {
        let l = &loaded()[i % loaded().len()];
        if let Some(model) = &l.preset.model {
            let c = &model.cat;
            let (x, y) = (x % c.n(), y % c.n());
            let f = random_map(c, x, y, seed);
            let a = sorted(&model.cone_of(&f).unwrap());
            let b = sorted(&model.cone_of_perturbed(&f, seed ^ 0x5eed).unwrap());
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a, sorted(&c.cone(&f).unwrap()));
        }
    }

    #[test]
    fn perp_is_monotone(i in 0usize..4, xs in prop::collection::vec(0usize..64, 0..4), extra in prop::collection::vec(0usize..64, 0..3)) {
        let c = cat(i);
        let x: Vec<usize> = xs.iter().map(|v| v % c.n()).collect();
        let mut y = x.clone();
        y.extend(extra.iter().map(|v| v % c.n()));
        for side in [Side::Right, Side::Left] {
            let (px, py) = (c.perp(&x, side), c.perp(&y, side));
            prop_assert!(py.iter().all(|v| px.contains(v)));
        }
    }

    #[test]
    fn mutation_facts(i in 0usize..4, k in any::<usize>(), mask in any::<u32>()) {
        let split = split(i, k, mask);
        prop_assume!(split.is_some());
        let (c, t, r) = split.unwrap();
        let m = c.mutate(&t, &r).unwrap();
        let tbar = complement(&t, &r);
        prop_assert!(c.is_rigid(&m.t_prime) && c.is_basic(&m.t_prime) && c.is_basic(&m.r_star));
        prop_assert_eq!(m.r_star.len(), r.len());
        prop_assert_eq!(c.hom_dim_obj(&tbar, &c.sigma_obj(&m.r_star)), 0);
        prop_assert!(c.is_exact_triangle(&m.exchange));
        prop_assert!(c.is_right_minimal(&m.exchange.g));
    }

    #[test]
    fn cluster_categories_keep_rigidity(i in 0usize..2, k in any::<usize>(), mask in any::<u32>()) {
        let idx = presets::names().iter().position(|n| *n == CLUSTER_PRESETS[i]).unwrap();
        let (c, t, r) = any_split(idx, k, mask);
        prop_assert!(c.mutate(&t, &r).is_ok());
    }

    #[test]
    fn compute_perps_lemma(i in 0usize..4, k in any::<usize>(), mask in any::<u32>()) {
        let split = split(i, k, mask);
        prop_assume!(split.is_some());
        let (c, t, r) = split.unwrap();
        let rep = c.check_compute_perps(&t, &r).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep);
    }

    #[test]
    fn cbar_membership_ignores_sigma_t_prime_summands(i in 0usize..4, k in any::<usize>(), mask in any::<u32>(), x in 0usize..64, j in 0usize..8) {
        let split = split(i, k, mask);
        prop_assume!(split.is_some());
        let (c, t, r) = split.unwrap();
        let tbar = complement(&t, &r);
        let x = x % c.n();
        let m = c.mutate(&t, &r).unwrap();
        let stp = c.sigma_obj(&m.t_prime);
        let probe = vec![x, stp[j % stp.len()]];
        prop_assert_eq!(c.in_cbar(&t, &tbar, &[x]).unwrap(), c.in_cbar(&t, &tbar, &probe).unwrap());
    }

    #[test]
    fn cbar_membership_on_direct_sums(i in 0usize..4, k in any::<usize>(), mask in any::<u32>(), x in 0usize..64, y in 0usize..64) {
        let split = split(i, k, mask);
        prop_assume!(split.is_some());
        let (c, t, r) = split.unwrap();
        let tbar = complement(&t, &r);
        let (x, y) = (x % c.n(), y % c.n());
        let both = c.in_cbar(&t, &tbar, &[x]).unwrap() && c.in_cbar(&t, &tbar, &[y]).unwrap();
        prop_assert_eq!(c.in_cbar(&t, &tbar, &[x, y]).unwrap(), both);
    }

    #[test]
    fn extensions_by_sigma_tbar_stay_in_cbar(i in 0usize..4, k in any::<usize>(), mask in any::<u32>(), seed in any::<u64>()) {
        let split = split(i, k, mask);
        prop_assume!(split.is_some());
        let (c, t, r) = split.unwrap();
        let tbar = complement(&t, &r);
        let cbar = c.cbar_set(&t, &tbar).unwrap();
        let met = c.sample_extensions(&cbar, &c.sigma_obj(&tbar), seed).unwrap();
        prop_assert!(met.iter().all(|x| cbar.contains(x)), "{:?} not in {:?}", met, cbar);
    }

    #[test]
    fn factoring_through_perp_factors_inside_cbar(i in 0usize..4, k in any::<usize>(), mask in any::<u32>(), seed in any::<u64>()) {
        let split = split(i, k, mask);
        prop_assume!(split.is_some());
        let (c, t, r) = split.unwrap();
        let tbar = complement(&t, &r);
        let cbar = c.cbar_set(&t, &tbar).unwrap();
        let perp = c.perp(&tbar, Side::Right);
        let inside: Vec<usize> = perp.iter().copied().filter(|x| cbar.contains(x)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let x = cbar[rng.gen_range(0..cbar.len())];
            let y = rng.gen_range(0..c.n());
            let f = random_map(c, x, y, rng.gen());
            if c.ideal_membership(&f, &perp).is_some() {
                prop_assert!(c.ideal_membership(&f, &inside).is_some());
            }
        }
    }

    #[test]
    fn s_is_contained_in_s_tilde(i in 0usize..4, k in any::<usize>(), mask in any::<u32>(), seed in any::<u64>()) {
        let split = split(i, k, mask);
        prop_assume!(split.is_some());
        let (c, t, r) = split.unwrap();
        let ls = c.loc_setup(&t, &r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let (x, y) = (rng.gen_range(0..c.n()), rng.gen_range(0..c.n()));
            let f = random_map(c, x, y, rng.gen());
            let cls = c.classify_morphism(&ls, &f).unwrap();
            prop_assert!(!cls.contains(&LocClass::S) || cls.contains(&LocClass::STilde));
        }
    }

    #[test]
    fn quiver_iso_finds_relabellings(i in 0usize..4, k in any::<usize>(), mask in any::<u32>(), perm_seed in any::<u64>()) {
        let split = split(i, k, mask);
        prop_assume!(split.is_some());
        let (c, t, r) = split.unwrap();
        let rep = c.deletion_report(&t, &r).unwrap();
        let q = &rep.without_sigma_t_prime;
        let mut order: Vec<usize> = (0..q.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(perm_seed);
        for a in (1..order.len()).rev() {
            order.swap(a, rng.gen_range(0..=a));
        }
        let p: Quiver = q.restrict(&order);
        prop_assert!(quiver_iso(q, &p).is_some());
        prop_assert!(rep.passed());
    }
}
