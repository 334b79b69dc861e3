//! Rigid objects, approximations and mutation.

use crate::error::{Error, Result};
use crate::linalg::{express_in_span, Q};
use crate::tricat::{basic_of, sorted, StMorphism, StObject, TriCat, Triangle};
use num::Zero;
use serde::Serialize;
use std::collections::BTreeSet;

/// Outcome of [`TriCat::mutate`].
#[derive(Clone, Debug)]
pub struct MutationResult {
    pub t_prime: StObject,
    pub r_star: StObject,
    pub b: StObject,
    /// `R* → B → R → ΣR*`.
    pub exchange: Triangle,
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidCount {
    pub basic_rigid: usize,
    pub cluster_tilting: usize,
}

/// Sorted set of the indecomposables of `x`.
pub fn support(x: &[usize]) -> Vec<usize> {
    basic_of(x)
}

/// Indecomposables of `t` not in `r`.
pub fn complement(t: &[usize], r: &[usize]) -> Vec<usize> {
    let r: BTreeSet<usize> = r.iter().copied().collect();
    basic_of(&t.iter().copied().filter(|x| !r.contains(x)).collect::<Vec<_>>())
}

impl TriCat {
    /// Basis of the maps `X → Y` factoring through `add G`, in [`TriCat::to_vec`] coordinates.
    pub fn ideal_span(&self, x: &[usize], y: &[usize], g: &[usize]) -> Vec<Vec<Q>> {
        let total = self.hom_dim_obj(x, y);
        let mut out = Vec::new();
        let mut off = 0;
        for &b in y {
            for &a in x {
                let d = self.hom_dim(a, b);
                for v in self.ideal_subspace(a, b, g) {
                    let mut w = vec![Q::zero(); total];
                    w[off..off + d].clone_from_slice(&v);
                    out.push(w);
                }
                off += d;
            }
        }
        out
    }

    /// Whether `f` factors through `add G` (no witness).
    pub fn in_ideal(&self, f: &StMorphism, g: &[usize]) -> bool {
        let v = self.to_vec(f);
        v.iter().all(|c| c.is_zero()) || express_in_span(&self.ideal_span(&f.src, &f.tgt, g), &v).is_some()
    }

    /// Radical of `End(x)` for an indecomposable `x`.
    pub fn radical_end(&self, x: usize) -> Vec<Vec<Q>> {
        self.as_presented(&[x]).radical_end(0)
    }

    /// Indecomposables `y` with `Hom(X, y) = 0`.
    pub fn right_perp(&self, x: &[usize]) -> Vec<usize> {
        (0..self.n()).filter(|&y| self.hom_dim_obj(x, &[y]) == 0).collect()
    }

    /// Indecomposables `y` with `Hom(y, X) = 0`.
    pub fn left_perp(&self, x: &[usize]) -> Vec<usize> {
        (0..self.n()).filter(|&y| self.hom_dim_obj(&[y], x) == 0).collect()
    }

    /// Whether every summand of `x` lies in `s`.
    pub fn in_add(&self, x: &[usize], s: &[usize]) -> bool {
        x.iter().all(|a| s.contains(a))
    }

    pub fn is_rigid(&self, x: &[usize]) -> bool {
        self.ext1(x, x) == 0
    }

    /// Rigid, and every indecomposable `y` with `X ⊕ y` rigid lies in `add X`.
    pub fn is_cluster_tilting(&self, x: &[usize]) -> bool {
        if !self.is_rigid(x) {
            return false;
        }
        (0..self.n()).all(|y| {
            x.contains(&y) || {
                let mut z = x.to_vec();
                z.push(y);
                !self.is_rigid(&z)
            }
        })
    }

    /// Radical maps `A → A` for a direct sum `A` of indecomposables, as a span.
    fn radical_span(&self, a: &[usize]) -> Vec<Vec<Q>> {
        let total = self.hom_dim_obj(a, a);
        let mut out = Vec::new();
        let mut off = 0;
        for &b in a {
            for &c in a {
                let d = self.hom_dim(c, b);
                let block: Vec<Vec<Q>> = if b == c {
                    self.radical_end(b)
                } else {
                    (0..d).map(|i| crate::linalg::unit_vec(d, i)).collect()
                };
                for v in block {
                    let mut w = vec![Q::zero(); total];
                    w[off..off + d].clone_from_slice(&v);
                    out.push(w);
                }
                off += d;
            }
        }
        out
    }

    /// Minimal right `add S`-approximation `A → X`.
    ///
    /// For each `g ∈ S` the components are a basis of a complement of the
    /// maps `g → X` factoring through a radical map `g → g'` with `g' ∈ S`.
    pub fn min_right_approx(&self, x: &[usize], s: &[usize]) -> StMorphism {
        let s = basic_of(s);
        let mut pieces = Vec::new();
        for &g in &s {
            let d = self.hom_dim_obj(&[g], x);
            if d == 0 {
                continue;
            }
            let mut sub = Vec::new();
            for &h in &s {
                let rad: Vec<Vec<Q>> = if h == g {
                    self.radical_end(g)
                } else {
                    (0..self.hom_dim(g, h)).map(|i| crate::linalg::unit_vec(self.hom_dim(g, h), i)).collect()
                };
                for r in &rad {
                    let rm = self.from_vec(&[g], &[h], r);
                    for phi in self.mor_basis(&[h], x) {
                        sub.push(self.to_vec(&self.compose(&phi, &rm)));
                    }
                }
            }
            let units: Vec<Vec<Q>> = (0..d).map(|i| crate::linalg::unit_vec(d, i)).collect();
            for i in crate::linalg::complement_indices(&sub, &units, d) {
                pieces.push(self.from_vec(&[g], x, &units[i]));
            }
        }
        self.hcat_or_zero(&pieces, x)
    }

    /// Minimal left `add S`-approximation `X → A`.
    pub fn min_left_approx(&self, x: &[usize], s: &[usize]) -> StMorphism {
        let s = basic_of(s);
        let mut pieces = Vec::new();
        for &g in &s {
            let d = self.hom_dim_obj(x, &[g]);
            if d == 0 {
                continue;
            }
            let mut sub = Vec::new();
            for &h in &s {
                let rad: Vec<Vec<Q>> = if h == g {
                    self.radical_end(g)
                } else {
                    (0..self.hom_dim(h, g)).map(|i| crate::linalg::unit_vec(self.hom_dim(h, g), i)).collect()
                };
                for r in &rad {
                    let rm = self.from_vec(&[h], &[g], r);
                    for phi in self.mor_basis(x, &[h]) {
                        sub.push(self.to_vec(&self.compose(&rm, &phi)));
                    }
                }
            }
            let units: Vec<Vec<Q>> = (0..d).map(|i| crate::linalg::unit_vec(d, i)).collect();
            for i in crate::linalg::complement_indices(&sub, &units, d) {
                pieces.push(self.from_vec(x, &[g], &units[i]));
            }
        }
        if pieces.is_empty() {
            return self.zero_mor(x, &[]);
        }
        self.vcat(&pieces, x)
    }

    fn hcat_or_zero(&self, pieces: &[StMorphism], x: &[usize]) -> StMorphism {
        if pieces.is_empty() {
            self.zero_mor(&[], x)
        } else {
            self.hcat(pieces, x)
        }
    }

    /// `Hom(g, A) → Hom(g, X)` is onto for every `g ∈ S`.
    pub fn is_right_approx(&self, f: &StMorphism, s: &[usize]) -> bool {
        s.iter().all(|&g| {
            let m = self.post_matrix(f, &[g]);
            let r = if m.rows == 0 || m.cols == 0 { 0 } else { m.rank() };
            r == self.hom_dim_obj(&[g], &f.tgt)
        })
    }

    /// Right minimality: every endomorphism `k` of the source with `f ∘ k = 0` is radical,
    /// so every `g` with `f ∘ g = f` is invertible.
    pub fn is_right_minimal(&self, f: &StMorphism) -> bool {
        let a = &f.src;
        let m = self.post_matrix(f, a);
        let kernel = if m.rows == 0 {
            (0..m.cols).map(|i| crate::linalg::unit_vec(m.cols, i)).collect()
        } else {
            m.nullspace()
        };
        let rad = self.radical_span(a);
        kernel.iter().all(|k| express_in_span(&rad, k).is_some())
    }

    /// Left minimality, dual to [`TriCat::is_right_minimal`].
    pub fn is_left_minimal(&self, f: &StMorphism) -> bool {
        let a = &f.tgt;
        let m = self.pre_matrix(f, a);
        let kernel = if m.rows == 0 {
            (0..m.cols).map(|i| crate::linalg::unit_vec(m.cols, i)).collect()
        } else {
            m.nullspace()
        };
        let rad = self.radical_span(a);
        kernel.iter().all(|k| express_in_span(&rad, k).is_some())
    }

    /// Replaces the summand `R` of the basic rigid `T` by `R*`, the desuspended
    /// cone of a minimal right `add T̄`-approximation of `R`.
    pub fn mutate(&self, t: &[usize], r: &[usize]) -> Result<MutationResult> {
        if !self.is_basic(t) || !self.is_rigid(t) {
            return Err(Error::InvalidInput(format!("{} is not basic rigid", self.label_obj(t))));
        }
        if r.is_empty() || !self.is_basic(r) || !r.iter().all(|x| t.contains(x)) {
            return Err(Error::NotASummand(self.label_obj(r)));
        }
        let tbar = complement(t, r);
        let r = sorted(r);
        let approx = self.min_right_approx(&r, &tbar);
        let exchange = self.cocone(&approx)?;
        let r_star = sorted(&exchange.x);
        let mut t_prime = tbar.clone();
        t_prime.extend(&r_star);
        let t_prime = sorted(&t_prime);
        let lost = |m: &str| Error::RigidityLost(format!("{m} after mutating {} at {}", self.label_obj(t), self.label_obj(&r)));
        if !self.is_rigid(&t_prime) {
            return Err(lost("T' is not rigid"));
        }
        if !self.is_basic(&t_prime) || !self.is_basic(&r_star) || r_star.len() != r.len() {
            return Err(lost("R* has the wrong summands"));
        }
        if self.hom_dim_obj(&tbar, &self.sigma_obj(&r_star)) != 0 {
            return Err(lost("ΣR* is not in the right perp of T̄"));
        }
        Ok(MutationResult { t_prime, r_star, b: approx.src.clone(), exchange })
    }

    /// `X ∈ T ∗ ΣT̄`: the cocone of a minimal right `add T`-approximation lies in `add T̄`.
    pub fn in_cbar(&self, t: &[usize], tbar: &[usize], x: &[usize]) -> Result<bool> {
        let p = self.min_right_approx(x, t);
        let tri = self.cocone(&p)?;
        Ok(self.in_add(&tri.x, tbar))
    }

    /// `X ∈ T̄ ∗ ΣT′`: the cone of a minimal right `add T̄`-approximation lies in `add ΣT′`.
    pub fn in_cbar_via_mutation(&self, tbar: &[usize], t_prime: &[usize], x: &[usize]) -> Result<bool> {
        let p = self.min_right_approx(x, tbar);
        let tri = self.complete_triangle(&p)?;
        Ok(self.in_add(&tri.z, &self.sigma_obj(t_prime)))
    }

    /// Indecomposables of `T ∗ ΣT̄`.
    pub fn cbar_set(&self, t: &[usize], tbar: &[usize]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for x in 0..self.n() {
            if self.in_cbar(t, tbar, &[x])? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Indecomposables of `T ∗ ΣT`.
    pub fn c_set(&self, t: &[usize]) -> Result<Vec<usize>> {
        self.cbar_set(t, t)
    }

    /// All basic rigid objects, as sorted id lists (the zero object included).
    pub fn basic_rigid_objects(&self) -> Vec<StObject> {
        let n = self.n();
        let self_rigid: Vec<bool> = (0..n).map(|x| self.ext1(&[x], &[x]) == 0).collect();
        let compatible: Vec<Vec<bool>> = (0..n)
            .map(|x| (0..n).map(|y| self.ext1(&[x], &[y]) == 0 && self.ext1(&[y], &[x]) == 0).collect())
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(
            start: usize,
            n: usize,
            ok: &[bool],
            comp: &[Vec<bool>],
            cur: &mut Vec<usize>,
            out: &mut Vec<StObject>,
        ) {
            out.push(cur.clone());
            for x in start..n {
                if ok[x] && cur.iter().all(|&y| comp[x][y]) {
                    cur.push(x);
                    rec(x + 1, n, ok, comp, cur, out);
                    cur.pop();
                }
            }
        }
        rec(0, n, &self_rigid, &compatible, &mut cur, &mut out);
        out
    }

    /// Counts basic rigid objects, the zero object included.
    pub fn count_rigid(&self) -> RigidCount {
        let all = self.basic_rigid_objects();
        RigidCount {
            basic_rigid: all.len(),
            cluster_tilting: all.iter().filter(|x| !x.is_empty() && self.is_cluster_tilting(x)).count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::presets::load;

    #[test]
    fn cluster_a3_counts() {
        let p = load("A3_tm1s1").unwrap();
        let c = p.cat.count_rigid();
        assert_eq!((c.basic_rigid, c.cluster_tilting), (45, 14));
    }

    #[test]
    fn a9_mutation_at_c() {
        let p = load("A9_t3s1").unwrap();
        let c = &p.cat;
        let t = c.obj_of(&["a", "b", "c"]).unwrap();
        assert!(c.is_cluster_tilting(&t));
        let r = c.obj_of(&["c"]).unwrap();
        let m = c.mutate(&t, &r).unwrap();
        assert_eq!(c.label_obj(&m.t_prime), "a+b+s");
        assert_eq!(c.label_obj(&m.b), "b+b");
        let approx = c.min_right_approx(&r, &c.obj_of(&["a", "b"]).unwrap());
        assert!(c.is_right_approx(&approx, &c.obj_of(&["a", "b"]).unwrap()));
        assert!(c.is_right_minimal(&approx));
    }

    #[test]
    fn a9_non_maximal_mutation() {
        let p = load("A9_t3s1").unwrap();
        let c = &p.cat;
        let t = c.obj_of(&["a", "c"]).unwrap();
        assert!(c.is_rigid(&t) && !c.is_cluster_tilting(&t));
        let m = c.mutate(&t, &c.obj_of(&["c"]).unwrap()).unwrap();
        assert_eq!(c.label_obj(&m.t_prime), "a+n");
        assert_eq!(c.label_obj(&m.b), "a+a");
    }

    #[test]
    fn mutation_with_empty_complement() {
        let p = load("A3_tm1s1").unwrap();
        let c = &p.cat;
        let r = c.obj_of(&["T1"]).unwrap();
        let m = c.mutate(&r, &r).unwrap();
        assert!(m.b.is_empty());
        assert_eq!(m.r_star, c.sigma_inv_obj(&r));
    }

    #[test]
    fn approximation_of_own_object() {
        let p = load("A9_t3s1").unwrap();
        let c = &p.cat;
        let x = c.obj_of(&["c"]).unwrap();
        let f = c.min_right_approx(&x, &x);
        assert_eq!(f.src, x);
        assert!(c.is_iso(&f));
    }
}
