//! The approximations `R₀`, `L₀`, the functors `G`, `H` between
//! `C̄(T)/(ΣT′)` and `τC̄(T)/(τT)`, and the check that they are quasi-inverse.

use crate::error::{Error, Result};
use crate::linalg::{express_in_span, unit_vec, Matrix, Q};
use crate::rigid::complement;
use crate::tricat::{sorted, PresentedCategory, StMorphism, StObject, TriCat, Triangle};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const LIFT_ATTEMPTS: usize = 16;

/// The data attached to a basic rigid `T = T̄ ⊕ R` and its mutation `T′ = T̄ ⊕ R*`.
#[derive(Clone, Debug)]
pub struct Setup {
    pub t: StObject,
    pub tbar: StObject,
    pub r: StObject,
    pub r_star: StObject,
    pub t_prime: StObject,
    /// Indecomposables of `C̄(T) = T ∗ ΣT̄`.
    pub cbar: Vec<usize>,
    /// Indecomposables of `τC̄(T) = Σ⁻¹ST̄ ∗ ST′`.
    pub under: Vec<usize>,
    pub perp_tbar: Vec<usize>,
    pub perp_t: Vec<usize>,
    pub perp_t_prime: Vec<usize>,
    pub sigma_t_prime: StObject,
    pub tau_t: StObject,
    pub serre_t_prime: StObject,
    pub serre_tbar: StObject,
    pub exchange: Triangle,
}

/// An approximation `obj → X` (for `R₀`) or `X → obj` (for `L₀`) with its triangle.
#[derive(Clone, Debug)]
pub struct Approx {
    pub obj: StObject,
    pub map: StMorphism,
    pub triangle: Triangle,
}

/// A functor between the nonzero objects of two presented quotients.
#[derive(Clone, Debug)]
pub struct FunctorData {
    /// Object map on nonzero objects, as indices into the presented categories.
    pub objects: Vec<(usize, usize)>,
    /// Matrix on `Hom(a, b)` for every pair of nonzero source objects.
    pub homs: Vec<((usize, usize), Matrix)>,
}

impl FunctorData {
    pub fn object(&self, a: usize) -> Option<usize> {
        self.objects.iter().find(|(x, _)| *x == a).map(|(_, y)| *y)
    }

    pub fn matrix(&self, a: usize, b: usize) -> &Matrix {
        &self.homs.iter().find(|(k, _)| *k == (a, b)).expect("pair of nonzero objects").1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub t: String,
    pub r: String,
    pub t_prime: String,
    pub cbar: Vec<String>,
    /// Nonzero objects of `C̄(T)/(ΣT′)`.
    pub left_objects: Vec<String>,
    /// Nonzero objects of `τC̄(T)/(τT)`.
    pub right_objects: Vec<String>,
    /// Nonzero objects of `C̄(T)/(T)`, the τ⁻¹-image of `right_objects`.
    pub right_objects_untwisted: Vec<String>,
    /// `X ↦ GX`.
    pub object_map: Vec<(String, String)>,
    pub hom_pairs_checked: usize,
    pub composable_pairs_checked: usize,
    pub unit_iso: bool,
    pub counit_iso: bool,
}

/// Solves `A v = b`: a particular solution and a kernel basis.
fn solve_affine(a: &Matrix, b: &[Q]) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    if a.cols == 0 {
        return b.iter().all(|c| c.is_zero()).then(|| (Vec::new(), Vec::new()));
    }
    if a.rows == 0 {
        let k = (0..a.cols).map(|i| unit_vec(a.cols, i)).collect();
        return Some((vec![Q::zero(); a.cols], k));
    }
    let v = a.solve(b)?;
    Some((v, a.nullspace()))
}

fn add_random(v: &[Q], kernel: &[Vec<Q>], rng: &mut ChaCha8Rng) -> Vec<Q> {
    let mut out = v.to_vec();
    for k in kernel {
        let c = Q::from_integer(rng.gen_range(-5..=5).into());
        for (o, x) in out.iter_mut().zip(k) {
            *o += &c * x;
        }
    }
    out
}

/// Positions of `x` whose summand is not in `s`.
fn positions_outside(x: &[usize], s: &[usize]) -> Vec<usize> {
    (0..x.len()).filter(|&i| !s.contains(&x[i])).collect()
}

impl TriCat {
    /// Mutation data and the subcategories used by the adjunction.
    pub fn setup(&self, t: &[usize], r: &[usize]) -> Result<Setup> {
        let m = self.mutate(t, r)?;
        let t = sorted(t);
        let tbar = complement(&t, r);
        let cbar = self.cbar_set(&t, &tbar)?;
        let under = sorted(&self.tau_obj(&cbar));
        Ok(Setup {
            perp_tbar: self.right_perp(&tbar),
            perp_t: self.right_perp(&t),
            perp_t_prime: self.right_perp(&m.t_prime),
            sigma_t_prime: sorted(&self.sigma_obj(&m.t_prime)),
            tau_t: sorted(&self.tau_obj(&t)),
            serre_t_prime: sorted(&self.serre_obj(&m.t_prime)),
            serre_tbar: sorted(&self.serre_obj(&tbar)),
            r: sorted(r),
            r_star: m.r_star,
            t_prime: m.t_prime,
            exchange: m.exchange,
            t,
            tbar,
            cbar,
            under,
        })
    }

    /// Membership of a morphism `X → Y` in the class `S`: in a triangle
    /// `Z → X → Y → ΣZ` we need `Z ∈ T̄^⊥` and `Y → ΣZ ∈ (T^⊥)`.
    pub fn in_class_s(&self, s: &Setup, f: &StMorphism) -> Result<bool> {
        let tri = self.complete_triangle(f)?;
        let z = self.sigma_inv_obj(&tri.z);
        Ok(self.hom_dim_obj(&s.tbar, &z) == 0 && self.in_ideal(&tri.g, &s.perp_t))
    }

    /// Right `C̄(T)`-approximation `R₀X → X` lying in `S`.
    pub fn approx_r0(&self, s: &Setup, x: &[usize]) -> Result<Approx> {
        let p = self.min_right_approx(x, &s.t);
        let tri1 = self.cocone(&p)?;
        let q = self.min_right_approx(&tri1.x, &s.tbar);
        let c = self.compose(&tri1.f, &q);
        let tri2 = self.complete_triangle(&c)?;
        let r0 = tri2.z.clone();
        let a = self.pre_matrix(&tri2.g, x);
        let (v0, kernel) = solve_affine(&a, &self.to_vec(&p))
            .ok_or_else(|| Error::ConstructionFailed("approximation does not factor through R₀X".into()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e0);
        for attempt in 0..LIFT_ATTEMPTS {
            let v = if attempt == 0 { v0.clone() } else { add_random(&v0, &kernel, &mut rng) };
            let eta = self.from_vec(&r0, x, &v);
            let tri = self.complete_triangle(&eta)?;
            let z = self.sigma_inv_obj(&tri.z);
            if self.hom_dim_obj(&s.tbar, &z) == 0 && self.in_ideal(&tri.g, &s.perp_t) {
                return Ok(Approx { obj: r0, map: eta, triangle: tri });
            }
        }
        Err(Error::ConstructionFailed(format!("no R₀-approximation of {} in S", self.label_obj(x))))
    }

    /// Left `τC̄(T)`-approximation `X → L₀X`, dual to [`TriCat::approx_r0`]: in the triangle
    /// `Z → X → L₀X → ΣZ` we need `ΣZ ∈ T̄^⊥` and `Z → X ∈ ((T′)^⊥)`.
    pub fn approx_l0(&self, s: &Setup, x: &[usize]) -> Result<Approx> {
        let u = self.min_left_approx(x, &s.serre_t_prime);
        let tri1 = self.complete_triangle(&u)?;
        let q = self.min_left_approx(&tri1.z, &s.serre_tbar);
        let c = self.compose(&q, &tri1.g);
        let tri2 = self.cocone(&c)?;
        let l0 = tri2.x.clone();
        let a = self.post_matrix(&tri2.f, x);
        let (v0, kernel) = solve_affine(&a, &self.to_vec(&u))
            .ok_or_else(|| Error::ConstructionFailed("approximation does not factor through L₀X".into()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x10);
        for attempt in 0..LIFT_ATTEMPTS {
            let v = if attempt == 0 { v0.clone() } else { add_random(&v0, &kernel, &mut rng) };
            let eps = self.from_vec(x, &l0, &v);
            let tri = self.complete_triangle(&eps)?;
            let alpha = self.neg(&self.sigma_inv_mor(&tri.h));
            if self.hom_dim_obj(&s.tbar, &tri.z) == 0 && self.in_ideal(&alpha, &s.perp_t_prime) {
                return Ok(Approx { obj: l0, map: eps, triangle: tri });
            }
        }
        Err(Error::ConstructionFailed(format!("no L₀-approximation of {} with the required triangle", self.label_obj(x))))
    }

    /// Solves `η ∘ v ≡ g (mod I)` for `v : W → R`, with `η : R → Y`, `g : W → Y`
    /// and `I` the maps `W → Y` through `add ideal`. Returns a solution and the
    /// kernel of `v ↦ η ∘ v` modulo `I`.
    pub(crate) fn lift_through(
        &self,
        eta: &StMorphism,
        g: &StMorphism,
        ideal: &[usize],
    ) -> Option<(StMorphism, Vec<StMorphism>)> {
        let w = &g.src;
        let a = self.post_matrix(eta, w);
        self.solve_mod(&a, &self.ideal_span(w, &eta.tgt, ideal), &self.to_vec(g), w, &eta.src)
    }

    /// Solves `v ∘ ε ≡ g (mod I)` for `v : L → W`, with `ε : X → L`, `g : X → W`.
    pub(crate) fn extend_along(
        &self,
        eps: &StMorphism,
        g: &StMorphism,
        ideal: &[usize],
    ) -> Option<(StMorphism, Vec<StMorphism>)> {
        let w = &g.tgt;
        let a = self.pre_matrix(eps, w);
        self.solve_mod(&a, &self.ideal_span(&eps.src, w, ideal), &self.to_vec(g), &eps.tgt, w)
    }

    fn solve_mod(
        &self,
        a: &Matrix,
        ideal: &[Vec<Q>],
        rhs: &[Q],
        src: &[usize],
        tgt: &[usize],
    ) -> Option<(StMorphism, Vec<StMorphism>)> {
        let n = a.cols;
        let full = if ideal.is_empty() { a.clone() } else { a.hstack(&Matrix::from_cols(ideal, a.rows)) };
        let (v, kernel) = solve_affine(&full, rhs)?;
        let sol = self.from_vec(src, tgt, &v[..n]);
        let ker = kernel.iter().map(|k| self.from_vec(src, tgt, &k[..n])).collect();
        Some((sol, ker))
    }

    /// Checks the main equivalence `C̄(T)/(ΣT′) ≃ τC̄(T)/(τT)` through `G` and `H`.
    pub fn verify_main_equivalence(&self, t: &[usize], r: &[usize]) -> Result<EquivalenceReport> {
        let serre = self.serre_check()?;
        if !serre.serre_equals_tau_sigma {
            return Err(Error::NoSerre);
        }
        let s = self.setup(t, r)?;
        let left = self.quotient_category(&s.cbar, &s.sigma_t_prime);
        let right = self.quotient_category(&s.under, &s.tau_t);
        let fail = |m: String| Error::EquivalenceFailure(m);

        let g = self.functor_g(&s, &left, &right)?;
        let h = self.functor_h(&s, &left, &right)?;
        let (left_nz, right_nz) = (left.nonzero_objects(), right.nonzero_objects());
        if left_nz.len() != right_nz.len() {
            return Err(fail(format!("{} objects on the left, {} on the right", left_nz.len(), right_nz.len())));
        }
        let mut images: Vec<usize> = left_nz.iter().map(|&a| g.object(a).expect("nonzero")).collect();
        images.sort_unstable();
        if images != right_nz {
            return Err(fail("G is not a bijection on objects".into()));
        }
        for &a in &left_nz {
            if h.object(g.object(a).expect("nonzero")) != Some(a) {
                return Err(fail(format!("HG does not fix {}", left.objects[a])));
            }
        }
        let mut hom_pairs = 0;
        for &a in &left_nz {
            for &b in &left_nz {
                let m = g.matrix(a, b);
                let (ga, gb) = (g.object(a).expect("nonzero"), g.object(b).expect("nonzero"));
                if left.hom_dim(a, b) != right.hom_dim(ga, gb) {
                    return Err(fail(format!(
                        "Hom({}, {}) has dimension {} but its image has {}",
                        left.objects[a],
                        left.objects[b],
                        left.hom_dim(a, b),
                        right.hom_dim(ga, gb)
                    )));
                }
                if m.rows > 0 && m.rank() != m.rows {
                    return Err(fail(format!("G is not bijective on Hom({}, {})", left.objects[a], left.objects[b])));
                }
                hom_pairs += 1;
            }
        }
        let composable = check_functor(&left, &right, &g).map_err(fail)? + check_functor(&right, &left, &h).map_err(fail)?;
        let unit_iso = self.check_unit(&s, &left, &right, &g, &h).map_err(fail)?;
        let counit_iso = self.check_counit(&s, &left, &right, &g, &h).map_err(fail)?;

        let labels = |p: &PresentedCategory, ids: &[usize]| ids.iter().map(|&i| p.objects[i].clone()).collect::<Vec<_>>();
        let untwisted: Vec<String> =
            right_nz.iter().map(|&b| self.labels[self.tau_inv[right.source_ids[b]]].clone()).collect();
        Ok(EquivalenceReport {
            t: self.label_obj(&s.t),
            r: self.label_obj(&s.r),
            t_prime: self.label_obj(&s.t_prime),
            cbar: s.cbar.iter().map(|&x| self.labels[x].clone()).collect(),
            left_objects: labels(&left, &left_nz),
            right_objects: labels(&right, &right_nz),
            right_objects_untwisted: untwisted,
            object_map: left_nz
                .iter()
                .map(|&a| (left.objects[a].clone(), right.objects[g.object(a).expect("nonzero")].clone()))
                .collect(),
            hom_pairs_checked: hom_pairs,
            composable_pairs_checked: composable,
            unit_iso,
            counit_iso,
        })
    }

    /// `G` on nonzero objects and basis morphisms: `GX = L₀X` with its
    /// `τT`-summands dropped, and `Gf` the unique extension along `ε`.
    pub fn functor_g(&self, s: &Setup, left: &PresentedCategory, right: &PresentedCategory) -> Result<FunctorData> {
        let nz = left.nonzero_objects();
        let mut data = Vec::new();
        for &a in &nz {
            let x = left.source_ids[a];
            let ap = self.approx_l0(s, &[x])?;
            let pos = positions_outside(&ap.obj, &s.tau_t);
            let [p] = pos.as_slice() else {
                return Err(Error::EquivalenceFailure(format!(
                    "L₀{} = {} does not have exactly one summand outside add τT",
                    self.labels[x],
                    self.label_obj(&ap.obj)
                )));
            };
            let y = ap.obj[*p];
            let b = right.index_of_id(y).ok_or_else(|| {
                Error::EquivalenceFailure(format!("L₀{} lies outside τC̄(T)", self.labels[x]))
            })?;
            data.push((a, b, ap, *p));
        }
        let mut homs = Vec::new();
        for (a, b, ap, p) in &data {
            for (a2, b2, ap2, p2) in &data {
                let (x, x2) = (left.source_ids[*a], left.source_ids[*a2]);
                let d = left.hom_dim(*a, *a2);
                let mut m = Matrix::zeros(right.hom_dim(*b, *b2), d);
                for i in 0..d {
                    let f = self.from_vec(&[x], &[x2], &left.lift(*a, *a2, &unit_vec(d, i)));
                    let target = self.compose(&ap2.map, &f);
                    let (u, kernel) = self.extend_along(&ap.map, &target, &s.perp_tbar).ok_or_else(|| {
                        Error::EquivalenceFailure(format!("no lift of a map {} → {}", self.labels[x], self.labels[x2]))
                    })?;
                    let reduce = |u: &StMorphism| {
                        let sub = self.submorphism(u, &[*p], &[*p2]);
                        right.project(*b, *b2, &self.to_vec(&sub))
                    };
                    for k in &kernel {
                        if reduce(k).iter().any(|c| !c.is_zero()) {
                            return Err(Error::LiftNotUnique(format!("G on {} → {}", self.labels[x], self.labels[x2])));
                        }
                    }
                    for (r, v) in reduce(&u).into_iter().enumerate() {
                        m.set(r, i, v);
                    }
                }
                homs.push(((*a, *a2), m));
            }
        }
        Ok(FunctorData { objects: data.iter().map(|(a, b, _, _)| (*a, *b)).collect(), homs })
    }

    /// `H` on nonzero objects and basis morphisms: `HY = R₀Y` with its
    /// `ΣT′`-summands dropped, and `Hg` the unique lift through `η`.
    pub fn functor_h(&self, s: &Setup, left: &PresentedCategory, right: &PresentedCategory) -> Result<FunctorData> {
        let nz = right.nonzero_objects();
        let mut data = Vec::new();
        for &b in &nz {
            let y = right.source_ids[b];
            let ap = self.approx_r0(s, &[y])?;
            let pos = positions_outside(&ap.obj, &s.sigma_t_prime);
            let [p] = pos.as_slice() else {
                return Err(Error::EquivalenceFailure(format!(
                    "R₀{} = {} does not have exactly one summand outside add ΣT′",
                    self.labels[y],
                    self.label_obj(&ap.obj)
                )));
            };
            let x = ap.obj[*p];
            let a = left
                .index_of_id(x)
                .ok_or_else(|| Error::EquivalenceFailure(format!("R₀{} lies outside C̄(T)", self.labels[y])))?;
            data.push((b, a, ap, *p));
        }
        let mut homs = Vec::new();
        for (b, a, ap, p) in &data {
            for (b2, a2, ap2, p2) in &data {
                let (y, y2) = (right.source_ids[*b], right.source_ids[*b2]);
                let d = right.hom_dim(*b, *b2);
                let mut m = Matrix::zeros(left.hom_dim(*a, *a2), d);
                for i in 0..d {
                    let g = self.from_vec(&[y], &[y2], &right.lift(*b, *b2, &unit_vec(d, i)));
                    let target = self.compose(&g, &ap.map);
                    let (v, kernel) = self.lift_through(&ap2.map, &target, &s.perp_tbar).ok_or_else(|| {
                        Error::EquivalenceFailure(format!("no lift of a map {} → {}", self.labels[y], self.labels[y2]))
                    })?;
                    let reduce = |v: &StMorphism| {
                        let sub = self.submorphism(v, &[*p], &[*p2]);
                        left.project(*a, *a2, &self.to_vec(&sub))
                    };
                    for k in &kernel {
                        if reduce(k).iter().any(|c| !c.is_zero()) {
                            return Err(Error::LiftNotUnique(format!("H on {} → {}", self.labels[y], self.labels[y2])));
                        }
                    }
                    for (r, val) in reduce(&v).into_iter().enumerate() {
                        m.set(r, i, val);
                    }
                }
                homs.push(((*b, *b2), m));
            }
        }
        Ok(FunctorData { objects: data.iter().map(|(b, a, _, _)| (*b, *a)).collect(), homs })
    }

    /// Unit `φ : 1 → HG`: the component at `X` is the lift of `X → GX` through
    /// `η : HGX → GX` (the first basis solution); it must be invertible and natural.
    fn check_unit(
        &self,
        s: &Setup,
        left: &PresentedCategory,
        right: &PresentedCategory,
        g: &FunctorData,
        h: &FunctorData,
    ) -> std::result::Result<bool, String> {
        let mut phi = Vec::new();
        for &(a, b) in &g.objects {
            let x = left.source_ids[a];
            let y = right.source_ids[b];
            let l0 = self.approx_l0(s, &[x]).map_err(|e| e.to_string())?;
            let p = l0.obj.iter().position(|&z| z == y).ok_or("GX is not a summand of L₀X")?;
            let eps_main = self.submorphism(&l0.map, &[0], &[p]);
            let r0 = self.approx_r0(s, &[y]).map_err(|e| e.to_string())?;
            let q = positions_outside(&r0.obj, &s.sigma_t_prime)[0];
            let (lift, _) = self.lift_through(&r0.map, &eps_main, &[]).ok_or("ε does not lift through η")?;
            let comp = self.submorphism(&lift, &[0], &[q]);
            let v = left.project(a, a, &self.to_vec(&comp));
            if !is_unit(left, a, &v) {
                return Ok(false);
            }
            phi.push((a, v));
        }
        naturality(left, &phi, true, |a, b, f| {
            let (ga, gb) = (g.object(a).expect("nonzero"), g.object(b).expect("nonzero"));
            let gf = g.matrix(a, b).mul_vec(f);
            h.matrix(ga, gb).mul_vec(&gf)
        })?;
        Ok(true)
    }

    /// Counit `ψ : GH → 1`: the extension of `HY → Y` along `ε : HY → GHY`.
    fn check_counit(
        &self,
        s: &Setup,
        left: &PresentedCategory,
        right: &PresentedCategory,
        g: &FunctorData,
        h: &FunctorData,
    ) -> std::result::Result<bool, String> {
        let mut psi = Vec::new();
        for &(b, a) in &h.objects {
            let y = right.source_ids[b];
            let x = left.source_ids[a];
            let r0 = self.approx_r0(s, &[y]).map_err(|e| e.to_string())?;
            let p = r0.obj.iter().position(|&z| z == x).ok_or("HY is not a summand of R₀Y")?;
            let eta_main = self.submorphism(&r0.map, &[p], &[0]);
            let l0 = self.approx_l0(s, &[x]).map_err(|e| e.to_string())?;
            let q = positions_outside(&l0.obj, &s.tau_t)[0];
            let (ext, _) = self.extend_along(&l0.map, &eta_main, &[]).ok_or("η does not extend along ε")?;
            let comp = self.submorphism(&ext, &[q], &[0]);
            let v = right.project(b, b, &self.to_vec(&comp));
            if !is_unit(right, b, &v) {
                return Ok(false);
            }
            psi.push((b, v));
        }
        naturality(right, &psi, false, |b, b2, f| {
            let (hb, hb2) = (h.object(b).expect("nonzero"), h.object(b2).expect("nonzero"));
            let hf = h.matrix(b, b2).mul_vec(f);
            g.matrix(hb, hb2).mul_vec(&hf)
        })?;
        Ok(true)
    }
}

/// `v ∈ End(a)` is invertible in a category whose endomorphism rings are local.
fn is_unit(p: &PresentedCategory, a: usize, v: &[Q]) -> bool {
    let rad = p.radical_end(a);
    !v.iter().all(|c| c.is_zero()) && express_in_span(&rad, v).is_none()
}

/// Checks naturality of `η_a ∈ End(a)` against the endofunctor `apply` on basis
/// morphisms: `apply(f) ∘ η_a = η_b ∘ f` for `1 → apply`, and
/// `f ∘ η_a = η_b ∘ apply(f)` for `apply → 1`.
fn naturality<F>(
    p: &PresentedCategory,
    eta: &[(usize, Vec<Q>)],
    forward: bool,
    apply: F,
) -> std::result::Result<(), String>
where
    F: Fn(usize, usize, &[Q]) -> Vec<Q>,
{
    for (a, ea) in eta {
        for (b, eb) in eta {
            let d = p.hom_dim(*a, *b);
            for i in 0..d {
                let f = unit_vec(d, i);
                let ff = apply(*a, *b, &f);
                let (pre, post) = if forward { (&ff, &f) } else { (&f, &ff) };
                let lhs = p.compose_vec(*a, *a, *b, ea, pre);
                let rhs = p.compose_vec(*a, *b, *b, post, eb);
                if lhs != rhs {
                    return Err(format!("naturality fails on a map {} → {}", p.objects[*a], p.objects[*b]));
                }
            }
        }
    }
    Ok(())
}

/// Checks `F(g ∘ f) = Fg ∘ Ff` on basis pairs and `F(id) = id`; returns the number of pairs.
fn check_functor(src: &PresentedCategory, tgt: &PresentedCategory, f: &FunctorData) -> std::result::Result<usize, String> {
    let mut count = 0;
    for &(a, fa) in &f.objects {
        let id = f.matrix(a, a).mul_vec(src.identity(a));
        if id != tgt.identity(fa) {
            return Err(format!("identity of {} is not preserved", src.objects[a]));
        }
        for &(b, fb) in &f.objects {
            for &(c, fc) in &f.objects {
                let (dab, dbc) = (src.hom_dim(a, b), src.hom_dim(b, c));
                for i in 0..dab {
                    for j in 0..dbc {
                        let (u, v) = (unit_vec(dab, i), unit_vec(dbc, j));
                        let lhs = f.matrix(a, c).mul_vec(&src.compose_vec(a, b, c, &u, &v));
                        let rhs = tgt.compose_vec(fa, fb, fc, &f.matrix(a, b).mul_vec(&u), &f.matrix(b, c).mul_vec(&v));
                        if lhs != rhs {
                            return Err(format!(
                                "composition {} → {} → {} is not preserved",
                                src.objects[a], src.objects[b], src.objects[c]
                            ));
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use crate::presets::load;

    #[test]
    fn non_maximal_rigid_in_a9() {
        let p = load("A9_t3s1").unwrap();
        let c = &p.cat;
        let t = c.obj_of(&["a", "c"]).unwrap();
        let r = c.obj_of(&["c"]).unwrap();
        let rep = c.verify_main_equivalence(&t, &r).unwrap();
        assert_eq!(rep.cbar, ["a", "c", "d", "h", "i", "q"]);
        assert_eq!(rep.left_objects, ["a", "c", "d", "h"]);
        let mut untwisted = rep.right_objects_untwisted.clone();
        untwisted.sort();
        assert_eq!(untwisted, ["d", "h", "i", "q"]);
        assert!(rep.unit_iso && rep.counit_iso);
    }

    #[test]
    fn r0_and_l0_land_in_the_right_subcategories() {
        let p = load("A9_t3s1").unwrap();
        let c = &p.cat;
        let t = c.obj_of(&["a", "b", "c"]).unwrap();
        let s = c.setup(&t, &c.obj_of(&["c"]).unwrap()).unwrap();
        for x in 0..c.n() {
            let r0 = c.approx_r0(&s, &[x]).unwrap();
            assert!(r0.obj.iter().all(|y| s.cbar.contains(y)));
            assert!(c.is_right_approx(&r0.map, &s.cbar));
            let l0 = c.approx_l0(&s, &[x]).unwrap();
            assert!(l0.obj.iter().all(|y| s.under.contains(y)));
        }
    }
}

#[cfg(test)]
mod sweep {
    use crate::presets::load;

    #[test]
    fn every_split_in_cluster_a3() {
        let p = load("A3_tm1s1").unwrap();
        let c = &p.cat;
        let mut runs = 0;
        for t in c.basic_rigid_objects().into_iter().filter(|t| !t.is_empty()) {
            for mask in 1..(1u32 << t.len()) {
                let r: Vec<usize> = (0..t.len()).filter(|i| mask >> i & 1 == 1).map(|i| t[i]).collect();
                c.verify_main_equivalence(&t, &r).unwrap_or_else(|e| panic!("{} at {}: {e}", c.label_obj(&t), c.label_obj(&r)));
                runs += 1;
            }
        }
        assert_eq!(runs, 9 + 3 * 21 + 7 * 14);
    }
}
