use super::{StMorphism, StObject, TriCat};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `X --f--> Y --g--> Z --h--> ΣX`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub x: StObject,
    pub y: StObject,
    pub z: StObject,
    pub f: StMorphism,
    pub g: StMorphism,
    pub h: StMorphism,
}

const MAX_CANDIDATES: usize = 64;
const ATTEMPTS: u64 = 12;

fn rank(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        0
    } else {
        m.rank()
    }
}

/// Coordinates spanning `{v : A v = 0}` for a matrix with `cols` columns.
fn kernel_span(a: &Matrix, cols: usize) -> Vec<Vec<Q>> {
    if a.rows == 0 {
        (0..cols).map(|i| super::unit(cols, i)).collect()
    } else {
        a.nullspace()
    }
}

impl TriCat {
    /// Completes `f : X → Y` to a triangle `X → Y → C → ΣX`.
    ///
    /// The third object is found from the dimensions forced by the long exact
    /// Hom sequences; the maps are generic elements of the spaces cut out by
    /// the vanishing of consecutive composites, accepted only when the
    /// covariant Hom sequence is exact at `Y`, `C` and `ΣX` for every
    /// indecomposable. This characterises the cone up to isomorphism.
    pub fn complete_triangle(&self, f: &StMorphism) -> Result<Triangle> {
        let n = self.n();
        let sf = self.sigma_mor(f);
        let mut d = vec![0usize; n];
        let mut e = vec![0usize; n];
        for w in 0..n {
            let post_f = self.post_matrix(f, &[w]);
            let post_sf = self.post_matrix(&sf, &[w]);
            d[w] = post_f.rows - rank(&post_f) + (post_sf.cols - rank(&post_sf));
            let pre_f = self.pre_matrix(f, &[w]);
            let pre_sf = self.pre_matrix(&sf, &[w]);
            e[w] = pre_f.cols - rank(&pre_f) + (pre_sf.rows - rank(&pre_sf));
        }
        let candidates = self.solve_multiplicities(&d, &e);
        for (ci, cand) in candidates.iter().enumerate() {
            for attempt in 0..ATTEMPTS {
                let mut rng = ChaCha8Rng::seed_from_u64(0x7219 + 1000 * ci as u64 + attempt);
                if let Some(t) = self.try_cone(f, &sf, cand, &mut rng) {
                    return Ok(t);
                }
            }
        }
        Err(Error::ConstructionFailed(format!(
            "no cone found for a morphism {} -> {}",
            self.label_obj(&f.src),
            self.label_obj(&f.tgt)
        )))
    }

    fn try_cone(&self, f: &StMorphism, sf: &StMorphism, c: &[usize], rng: &mut ChaCha8Rng) -> Option<Triangle> {
        let (x, y) = (&f.src, &f.tgt);
        let sx = self.sigma_obj(x);
        let dyc = self.hom_dim_obj(y, c);
        let pre = self.pre_matrix(f, c);
        let gspan = kernel_span(&pre, dyc);
        let g = self.random_in_span(y, c, &gspan, rng);
        let dcsx = self.hom_dim_obj(c, &sx);
        let a = self.pre_matrix(&g, &sx);
        let b = self.post_matrix(sf, c);
        let stacked = a.vstack(&b);
        let hspan = kernel_span(&stacked, dcsx);
        let h = self.random_in_span(c, &sx, &hspan, rng);
        let t = Triangle { x: x.clone(), y: y.clone(), z: c.to_vec(), f: f.clone(), g, h };
        self.is_exact_triangle(&t).then_some(t)
    }

    /// Checks that consecutive composites vanish and that `Hom(W, −)` is
    /// exact at `Y`, `Z` and `ΣX` for every indecomposable `W`.
    pub fn is_exact_triangle(&self, t: &Triangle) -> bool {
        let sf = self.sigma_mor(&t.f);
        if !self.is_zero(&self.compose(&t.g, &t.f))
            || !self.is_zero(&self.compose(&t.h, &t.g))
            || !self.is_zero(&self.compose(&sf, &t.h))
        {
            return false;
        }
        (0..self.n()).all(|w| {
            let w = [w];
            let rf = rank(&self.post_matrix(&t.f, &w));
            let rg = rank(&self.post_matrix(&t.g, &w));
            let rh = rank(&self.post_matrix(&t.h, &w));
            let rsf = rank(&self.post_matrix(&sf, &w));
            let (dy, dz, dsx) = (
                self.hom_dim_obj(&w, &t.y),
                self.hom_dim_obj(&w, &t.z),
                self.hom_dim_obj(&w, &self.sigma_obj(&t.x)),
            );
            rg == dy - rf && rh == dz - rg && rsf == dsx - rh
        })
    }

    /// Nonnegative integer vectors `m` with `Σ_c m_c dim Hom(w, c) = d_w`
    /// and `Σ_c m_c dim Hom(c, w) = e_w`, expanded to objects.
    pub fn solve_multiplicities(&self, d: &[usize], e: &[usize]) -> Vec<StObject> {
        let n = self.n();
        let mut last = vec![None; n];
        for w in 0..n {
            for c in 0..n {
                if self.hom_dim(w, c) > 0 || self.hom_dim(c, w) > 0 {
                    last[w] = Some(c);
                }
            }
        }
        let mut out = Vec::new();
        let mut m = vec![0usize; n];
        let mut rd = d.to_vec();
        let mut re = e.to_vec();
        if last.iter().zip(d.iter().zip(e)).any(|(l, (a, b))| l.is_none() && (*a > 0 || *b > 0)) {
            return out;
        }
        self.multiplicity_dfs(0, &last, &mut m, &mut rd, &mut re, &mut out);
        out
    }

    fn multiplicity_dfs(
        &self,
        c: usize,
        last: &[Option<usize>],
        m: &mut Vec<usize>,
        rd: &mut Vec<usize>,
        re: &mut Vec<usize>,
        out: &mut Vec<StObject>,
    ) {
        let n = self.n();
        if out.len() >= MAX_CANDIDATES {
            return;
        }
        if c == n {
            if rd.iter().all(|&x| x == 0) && re.iter().all(|&x| x == 0) {
                out.push((0..n).flat_map(|i| std::iter::repeat_n(i, m[i])).collect());
            }
            return;
        }
        let mut max = usize::MAX;
        for w in 0..n {
            let (a, b) = (self.hom_dim(w, c), self.hom_dim(c, w));
            if a > 0 {
                max = max.min(rd[w] / a);
            }
            if b > 0 {
                max = max.min(re[w] / b);
            }
        }
        for k in (0..=max).rev() {
            let mut ok = true;
            for w in 0..n {
                rd[w] -= k * self.hom_dim(w, c);
                re[w] -= k * self.hom_dim(c, w);
            }
            for w in 0..n {
                if last[w] == Some(c) && (rd[w] != 0 || re[w] != 0) {
                    ok = false;
                }
            }
            if ok {
                m[c] = k;
                self.multiplicity_dfs(c + 1, last, m, rd, re, out);
                m[c] = 0;
            }
            for w in 0..n {
                rd[w] += k * self.hom_dim(w, c);
                re[w] += k * self.hom_dim(c, w);
            }
        }
    }

    /// Cone object of `f`.
    pub fn cone(&self, f: &StMorphism) -> Result<StObject> {
        Ok(self.complete_triangle(f)?.z)
    }

    /// Completes `f : X → Y` on the left: a triangle `Z → X → Y → ΣZ`
    /// obtained by rotating the cone triangle backwards.
    pub fn cocone(&self, f: &StMorphism) -> Result<Triangle> {
        let t = self.complete_triangle(f)?;
        let z = self.sigma_inv_obj(&t.z);
        let u = self.neg(&self.sigma_inv_mor(&t.h));
        Ok(Triangle { x: z, y: t.x.clone(), z: t.y.clone(), f: u, g: f.clone(), h: t.g })
    }
}
