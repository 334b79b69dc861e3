//! Subcategory calculus: perpendiculars, extension-closure membership and
//! isomorphism of finite quivers.

use crate::error::{Error, Result};
use crate::tricat::{sorted, PresentedCategory, TriCat, Triangle};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// An additively closed subcategory, given by its indecomposables (sorted ids).
pub type Subcategory = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// A finite quiver with arrow multiplicities and, optionally, Hom dimensions.
#[derive(Clone, Debug, Serialize)]
pub struct Quiver {
    pub labels: Vec<String>,
    /// `(from, to) → multiplicity`; serialized as `[from, to, multiplicity]` triples.
    #[serde(serialize_with = "arrow_triples")]
    pub arrows: BTreeMap<(usize, usize), usize>,
    pub homs: Option<Vec<Vec<usize>>>,
}

fn arrow_triples<S: serde::Serializer>(arrows: &BTreeMap<(usize, usize), usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(arrows.iter().map(|(&(a, b), &m)| [a, b, m]))
}

/// The conclusions of the perpendicular-category lemma for one split `T = T̄ ⊕ R`.
#[derive(Clone, Debug, Serialize)]
pub struct PerpsReport {
    pub t: String,
    pub r: String,
    pub t_prime: String,
    pub cbar: Vec<String>,
    /// Both membership criteria for `C̄(T)` agree on every indecomposable.
    pub criteria_agree: bool,
    /// `C̄(T) ∩ T̄^⊥ = add ΣT′`.
    pub cbar_cap_perp: bool,
    /// `(Σ⁻¹ST̄ ∗ ST′) ∩ T̄^⊥ = add Σ⁻¹ST`.
    pub under_cap_perp: bool,
}

/// Gabriel quivers of `C̄(T)` with `add ΣT′` or `add T` factored out, and of
/// `τC̄(T)/(τT)`.
#[derive(Clone, Debug, Serialize)]
pub struct DeletionReport {
    pub t: String,
    pub r: String,
    pub cbar: Vec<String>,
    /// `C̄(T)/(ΣT′)`.
    pub without_sigma_t_prime: Quiver,
    /// `C̄(T)/(T)`.
    pub without_t: Quiver,
    /// `τC̄(T)/(τT)`.
    pub tau_without_tau_t: Quiver,
    pub deletion_iso: Option<Vec<usize>>,
    pub tau_iso: Option<Vec<usize>>,
}

impl DeletionReport {
    pub fn passed(&self) -> bool {
        self.deletion_iso.is_some() && self.tau_iso.is_some()
    }
}

impl PerpsReport {
    pub fn passed(&self) -> bool {
        self.criteria_agree && self.cbar_cap_perp && self.under_cap_perp
    }
}

impl Quiver {
    /// Gabriel quiver of the nonzero objects of a presented category
    /// (arrows are `dim rad/rad²`); Hom dimensions are kept when `with_homs`.
    pub fn of_presented(p: &PresentedCategory, with_homs: bool) -> Self {
        let nz = p.nonzero_objects();
        let pos = |a: usize| nz.iter().position(|&x| x == a).expect("nonzero object");
        let arrows = p.arrows().into_iter().map(|(a, b, m)| ((pos(a), pos(b)), m)).collect();
        let homs = with_homs.then(|| nz.iter().map(|&a| nz.iter().map(|&b| p.hom_dim(a, b)).collect()).collect());
        Quiver { labels: nz.iter().map(|&a| p.objects[a].clone()).collect(), arrows, homs }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.arrows.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Full subquiver on the vertices whose labels are not listed.
    pub fn delete(&self, labels: &[&str]) -> Quiver {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| !labels.contains(&self.labels[i].as_str())).collect();
        self.restrict(&keep)
    }

    /// Full subquiver on the given vertex indices.
    pub fn restrict(&self, keep: &[usize]) -> Quiver {
        let pos = |a: usize| keep.iter().position(|&x| x == a);
        let arrows = self
            .arrows
            .iter()
            .filter_map(|(&(a, b), &m)| Some(((pos(a)?, pos(b)?), m)))
            .collect();
        let homs = self.homs.as_ref().map(|h| keep.iter().map(|&a| keep.iter().map(|&b| h[a][b]).collect()).collect());
        Quiver { labels: keep.iter().map(|&i| self.labels[i].clone()).collect(), arrows, homs }
    }

    fn out_degree(&self, a: usize) -> usize {
        self.arrows.iter().filter(|((x, _), _)| *x == a).map(|(_, m)| m).sum()
    }

    fn in_degree(&self, a: usize) -> usize {
        self.arrows.iter().filter(|((_, y), _)| *y == a).map(|(_, m)| m).sum()
    }

    pub fn to_dot(&self, name: &str, highlight: &[String]) -> String {
        let mut s = format!("digraph \"{name}\" {{\n");
        for l in &self.labels {
            let shape = if highlight.contains(l) { "circle" } else { "plaintext" };
            s.push_str(&format!("  \"{l}\" [shape={shape}];\n"));
        }
        for (&(a, b), &m) in &self.arrows {
            for _ in 0..m {
                s.push_str(&format!("  \"{}\" -> \"{}\";\n", self.labels[a], self.labels[b]));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Searches for a bijection of vertices preserving arrow multiplicities (and
/// Hom dimensions when both quivers carry them). Returns `iso[i]` for vertex `i`.
pub fn quiver_iso(p: &Quiver, q: &Quiver) -> Option<Vec<usize>> {
    if p.len() != q.len() {
        return None;
    }
    let n = p.len();
    let use_homs = p.homs.is_some() && q.homs.is_some();
    let sig = |g: &Quiver, a: usize| {
        let h = if use_homs { g.homs.as_ref().map_or(0, |h| h[a][a]) } else { 0 };
        (g.in_degree(a), g.out_degree(a), g.multiplicity(a, a), h)
    };
    let mut ps: Vec<_> = (0..n).map(|a| sig(p, a)).collect();
    let mut qs: Vec<_> = (0..n).map(|a| sig(q, a)).collect();
    let (ps_orig, qs_orig) = (ps.clone(), qs.clone());
    ps.sort_unstable();
    qs.sort_unstable();
    if ps != qs {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| std::cmp::Reverse(p.in_degree(a) + p.out_degree(a)));
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn ok(p: &Quiver, q: &Quiver, use_homs: bool, phi: &[usize], a: usize, b: usize) -> bool {
        for (x, &y) in phi.iter().enumerate() {
            if y == usize::MAX {
                continue;
            }
            if p.multiplicity(a, x) != q.multiplicity(b, y) || p.multiplicity(x, a) != q.multiplicity(y, b) {
                return false;
            }
            if use_homs {
                let (ph, qh) = (p.homs.as_ref().expect("homs"), q.homs.as_ref().expect("homs"));
                if ph[a][x] != qh[b][y] || ph[x][a] != qh[y][b] {
                    return false;
                }
            }
        }
        true
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        order: &[usize],
        p: &Quiver,
        q: &Quiver,
        use_homs: bool,
        ps: &[(usize, usize, usize, usize)],
        qs: &[(usize, usize, usize, usize)],
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let a = order[k];
        for b in 0..q.len() {
            if used[b] || ps[a] != qs[b] || !ok(p, q, use_homs, phi, a, b) {
                continue;
            }
            phi[a] = b;
            used[b] = true;
            if rec(k + 1, order, p, q, use_homs, ps, qs, phi, used) {
                return true;
            }
            phi[a] = usize::MAX;
            used[b] = false;
        }
        false
    }
    rec(0, &order, p, q, use_homs, &ps_orig, &qs_orig, &mut phi, &mut used).then_some(phi)
}

impl TriCat {
    pub fn perp(&self, x: &[usize], side: Side) -> Subcategory {
        match side {
            Side::Right => self.right_perp(x),
            Side::Left => self.left_perp(x),
        }
    }

    fn require_orthogonal(&self, a: &[usize], b: &[usize]) -> Result<()> {
        if self.hom_dim_obj(a, b) != 0 {
            return Err(Error::UnsupportedShape(format!(
                "Hom({}, {}) is nonzero",
                self.label_obj(a),
                self.label_obj(b)
            )));
        }
        Ok(())
    }

    /// `X ∈ add A ∗ add B` for `Hom(A, B) = 0`: then the cone of a minimal right
    /// `add A`-approximation of `X` lies in `add B` exactly when `X` is such an
    /// extension. Returns the witness triangle `A₀ → X → B₀ → ΣA₀` on success.
    pub fn star_membership(&self, x: &[usize], a: &[usize], b: &[usize]) -> Result<Option<Triangle>> {
        self.require_orthogonal(a, b)?;
        let p = self.min_right_approx(x, a);
        let tri = self.complete_triangle(&p)?;
        Ok(self.in_add(&tri.z, b).then_some(tri))
    }

    /// The same decision through a minimal left `add B`-approximation and its cocone.
    pub fn star_membership_dual(&self, x: &[usize], a: &[usize], b: &[usize]) -> Result<bool> {
        self.require_orthogonal(a, b)?;
        let p = self.min_left_approx(x, b);
        let tri = self.cocone(&p)?;
        Ok(self.in_add(&tri.x, a))
    }

    /// Indecomposables of `add A ∗ add B` for `Hom(A, B) = 0`.
    pub fn star_set(&self, a: &[usize], b: &[usize]) -> Result<Subcategory> {
        let mut out = Vec::new();
        for x in 0..self.n() {
            if self.star_membership(&[x], a, b)?.is_some() {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Full subquiver of the AR quiver on the given indecomposables.
    pub fn ar_subquiver(&self, vertices: &[usize]) -> Quiver {
        let ar = self.ar_quiver();
        let pos = |a: usize| vertices.iter().position(|&x| x == a);
        let arrows = ar
            .arrows
            .iter()
            .filter_map(|a| Some(((pos(a.from)?, pos(a.to)?), a.multiplicity)))
            .collect();
        Quiver { labels: vertices.iter().map(|&v| self.labels[v].clone()).collect(), arrows, homs: None }
    }

    /// Checks the three parts of the perpendicular-category lemma for `T = T̄ ⊕ R`.
    pub fn check_compute_perps(&self, t: &[usize], r: &[usize]) -> Result<PerpsReport> {
        let m = self.mutate(t, r)?;
        let tbar = crate::rigid::complement(t, r);
        let cbar = self.cbar_set(t, &tbar)?;
        let mut criteria_agree = true;
        for x in 0..self.n() {
            if self.in_cbar_via_mutation(&tbar, &m.t_prime, &[x])? != cbar.contains(&x) {
                criteria_agree = false;
            }
        }
        let perp = self.right_perp(&tbar);
        let cap: Vec<usize> = cbar.iter().copied().filter(|x| perp.contains(x)).collect();
        let cbar_cap_perp = cap == sorted(&self.sigma_obj(&m.t_prime));
        let under = self.star_set(&self.tau_obj(&tbar), &self.serre_obj(&m.t_prime))?;
        let cap: Vec<usize> = under.into_iter().filter(|x| perp.contains(x)).collect();
        let under_cap_perp = cap == sorted(&self.tau_obj(t));
        Ok(PerpsReport {
            t: self.label_obj(t),
            r: self.label_obj(r),
            t_prime: self.label_obj(&m.t_prime),
            cbar: cbar.iter().map(|&x| self.labels[x].clone()).collect(),
            criteria_agree,
            cbar_cap_perp,
            under_cap_perp,
        })
    }

    /// Gabriel quiver (with Hom dimensions) of the full subcategory on
    /// `objects` modulo maps factoring through `add ideal`.
    pub fn quotient_quiver(&self, objects: &[usize], ideal: &[usize]) -> Quiver {
        Quiver::of_presented(&self.quotient_category(objects, ideal), true)
    }

    /// Compares `C̄(T)/(ΣT′)` with `C̄(T)/(T)` and with `τC̄(T)/(τT)`.
    pub fn deletion_report(&self, t: &[usize], r: &[usize]) -> Result<DeletionReport> {
        let m = self.mutate(t, r)?;
        let tbar = crate::rigid::complement(t, r);
        let cbar = self.cbar_set(t, &tbar)?;
        let without_sigma_t_prime = self.quotient_quiver(&cbar, &self.sigma_obj(&m.t_prime));
        let without_t = self.quotient_quiver(&cbar, t);
        let tau_without_tau_t = self.quotient_quiver(&sorted(&self.tau_obj(&cbar)), &self.tau_obj(t));
        Ok(DeletionReport {
            t: self.label_obj(t),
            r: self.label_obj(r),
            cbar: cbar.iter().map(|&x| self.labels[x].clone()).collect(),
            deletion_iso: quiver_iso(&without_sigma_t_prime, &without_t),
            tau_iso: quiver_iso(&without_sigma_t_prime, &tau_without_tau_t),
            without_sigma_t_prime,
            without_t,
            tau_without_tau_t,
        })
    }

    /// Cocones of sampled maps `B → ΣA` with `A` ranging over pairs of
    /// indecomposables of `a` and `B` over indecomposables of `b`: the
    /// indecomposables met, a subset of `add A ∗ add B`.
    pub fn sample_extensions(&self, a: &[usize], b: &[usize], seed: u64) -> Result<Subcategory> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut met = std::collections::BTreeSet::new();
        let mut sources: Vec<Vec<usize>> = a.iter().map(|&x| vec![x]).collect();
        for (i, &x) in a.iter().enumerate() {
            for &y in &a[i..] {
                sources.push(vec![x, y]);
            }
        }
        for aa in &sources {
            let sa = self.sigma_obj(aa);
            for &bb in b {
                let d = self.hom_dim_obj(&[bb], &sa);
                if d == 0 {
                    continue;
                }
                let span: Vec<Vec<crate::linalg::Q>> = (0..d).map(|i| crate::linalg::unit_vec(d, i)).collect();
                let h = self.random_in_span(&[bb], &sa, &span, &mut rng);
                let tri = self.cocone(&h)?;
                met.extend(tri.x.iter().copied());
            }
        }
        Ok(met.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::load;

    #[test]
    fn a9_cbar_and_star_products() {
        let p = load("A9_t3s1").unwrap();
        let c = &p.cat;
        let t = c.obj_of(&["a", "b", "c"]).unwrap();
        let tbar = c.obj_of(&["a", "b"]).unwrap();
        let cbar = c.cbar_set(&t, &tbar).unwrap();
        let mut labels: Vec<&str> = cbar.iter().map(|&x| c.labels[x].as_str()).collect();
        labels.sort_unstable();
        assert_eq!(labels, ["a", "b", "c", "d", "e", "g", "h", "i", "j", "l", "m", "n", "q", "r"]);
        let d = c.obj_of(&["d"]).unwrap();
        let cc = c.obj_of(&["c"]).unwrap();
        let sa = c.sigma_obj(&c.obj_of(&["a"]).unwrap());
        assert!(c.star_membership(&d, &cc, &sa).unwrap().is_some());
        assert!(c.star_membership_dual(&d, &cc, &sa).unwrap());
        let f = c.obj_of(&["f"]).unwrap();
        assert!(c.star_membership(&f, &t, &c.sigma_obj(&tbar)).unwrap().is_none());
        let x = c.obj_of(&["a"]).unwrap();
        assert!(c.star_membership(&x, &x, &x).is_err());
        let rep = c.check_compute_perps(&t, &c.obj_of(&["c"]).unwrap()).unwrap();
        assert!(rep.passed());
    }

    fn sorted_labels(q: &Quiver) -> Vec<String> {
        let mut l = q.labels.clone();
        l.sort();
        l
    }

    #[test]
    fn a9_maximal_split_quotients() {
        let p = load("A9_t3s1").unwrap();
        let c = &p.cat;
        let rep = c.deletion_report(&c.obj_of(&["a", "b", "c"]).unwrap(), &c.obj_of(&["c"]).unwrap()).unwrap();
        assert_eq!(rep.without_sigma_t_prime.len(), 11);
        assert_eq!(rep.tau_without_tau_t.len(), 11);
        assert!(rep.passed());
    }

    #[test]
    fn a9_non_maximal_split_quotients() {
        let p = load("A9_t3s1").unwrap();
        let c = &p.cat;
        let t = c.obj_of(&["a", "c"]).unwrap();
        let rep = c.deletion_report(&t, &c.obj_of(&["c"]).unwrap()).unwrap();
        assert_eq!(sorted_labels(&rep.without_sigma_t_prime), ["a", "c", "d", "h"]);
        assert_eq!(sorted_labels(&rep.without_t), ["d", "h", "i", "q"]);
        assert!(rep.passed());
    }

    #[test]
    fn a5_deletions() {
        let p = load("A5_tm2s1").unwrap();
        let c = &p.cat;
        let t = c.obj_of(&["a", "b", "c", "d"]).unwrap();
        let rep = c.deletion_report(&t, &c.obj_of(&["c", "d"]).unwrap()).unwrap();
        for l in ["a", "b", "c", "d", "e", "f", "g", "h"] {
            assert!(rep.cbar.contains(&l.to_string()), "{l}");
        }
        let wo_t = sorted_labels(&rep.without_t);
        let wo_s = sorted_labels(&rep.without_sigma_t_prime);
        assert!(["a", "b", "c", "d"].iter().all(|l| !wo_t.contains(&l.to_string())));
        assert!(["e", "f", "g", "h"].iter().all(|l| !wo_s.contains(&l.to_string())));
        assert_eq!(rep.without_t.len(), rep.cbar.len() - 4);
        assert!(rep.passed());
    }

    #[test]
    fn star_with_own_object() {
        let p = load("A3_tm1s1").unwrap();
        let c = &p.cat;
        let t = c.obj_of(&["T1", "T2", "T3"]).unwrap();
        for &x in &t {
            let tri = c.star_membership(&[x], &t, &c.sigma_obj(&t)).unwrap().unwrap();
            assert!(tri.z.is_empty());
        }
        assert_eq!(c.c_set(&t).unwrap().len(), 9);
    }

    #[test]
    fn perp_of_zero_is_everything() {
        let p = load("A3_tm1s1").unwrap();
        assert_eq!(p.cat.perp(&[], Side::Right).len(), 9);
        assert_eq!(p.cat.perp(&[], Side::Left).len(), 9);
    }

    #[test]
    fn quiver_iso_of_itself_and_a_negative() {
        let p = load("A9_t3s1").unwrap();
        let q = p.cat.ar_subquiver(&(0..p.cat.n()).collect::<Vec<_>>());
        assert!(quiver_iso(&q, &q).is_some());
        let fewer = q.delete(&["a"]);
        assert!(quiver_iso(&q, &fewer).is_none());
    }
}
