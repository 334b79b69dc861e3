use super::{unit, StMorphism, TriCat};
use crate::linalg::{complement_indices, express_in_span, span_basis, vec_axpy, vec_is_zero, vec_zero, Matrix, Q};
use num::Zero;

/// A factorization `f = Σ c_k · h_k ∘ g_k` with `g_k : X → G_k`, `h_k : G_k → Y`.
#[derive(Clone, Debug)]
pub struct IdealWitness {
    pub terms: Vec<(Q, usize, StMorphism, StMorphism)>,
}

/// A finite k-linear category with explicit Hom bases and composition table.
/// Quotients remember how to project morphisms of the ambient category.
#[derive(Clone, Debug)]
pub struct PresentedCategory {
    pub objects: Vec<String>,
    /// Catalog id of each object in the ambient category, when there is one.
    pub source_ids: Vec<usize>,
    hom: Vec<usize>,
    comp: Vec<Vec<Vec<Q>>>,
    identity: Vec<Vec<Q>>,
    /// Per ordered pair: matrix from ambient coordinates to quotient coordinates.
    proj: Vec<Matrix>,
    /// Per ordered pair: ambient coordinates of the quotient basis (as columns).
    reps: Vec<Matrix>,
}

impl TriCat {
    /// Basis of the subspace of `Hom(x, y)` of maps factoring through `add G`.
    pub fn ideal_subspace(&self, x: usize, y: usize, g: &[usize]) -> Vec<Vec<Q>> {
        let d = self.hom_dim(x, y);
        if d == 0 {
            return Vec::new();
        }
        let mut vs = Vec::new();
        for &gj in g {
            let (a, b) = (self.hom_dim(x, gj), self.hom_dim(gj, y));
            for i in 0..a {
                for j in 0..b {
                    let v = self.compose_vec(x, gj, y, &unit(a, i), &unit(b, j));
                    if !vec_is_zero(&v) {
                        vs.push(v);
                    }
                }
            }
        }
        span_basis(&vs, d)
    }

    /// Whether `f` factors through `add G`, with a witness on success.
    pub fn ideal_membership(&self, f: &StMorphism, g: &[usize]) -> Option<IdealWitness> {
        let mut gens: Vec<Vec<Q>> = Vec::new();
        let mut data: Vec<(usize, StMorphism, StMorphism)> = Vec::new();
        for &gj in g {
            let into = self.mor_basis(&f.src, &[gj]);
            let out = self.mor_basis(&[gj], &f.tgt);
            for a in &into {
                for b in &out {
                    let c = self.compose(b, a);
                    if !self.is_zero(&c) {
                        gens.push(self.to_vec(&c));
                        data.push((gj, a.clone(), b.clone()));
                    }
                }
            }
        }
        let target = self.to_vec(f);
        let coeffs = express_in_span(&gens, &target)?;
        let terms = coeffs
            .into_iter()
            .zip(data)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, (gj, a, b))| (c, gj, a, b))
            .collect();
        Some(IdealWitness { terms })
    }

    /// The full subcategory on `objects`, as a presented category.
    pub fn as_presented(&self, objects: &[usize]) -> PresentedCategory {
        self.quotient_category(objects, &[])
    }

    /// Full subcategory on `objects` modulo the ideal of maps factoring through `add I`.
    pub fn quotient_category(&self, objects: &[usize], ideal: &[usize]) -> PresentedCategory {
        let k = objects.len();
        let mut proj = Vec::with_capacity(k * k);
        let mut reps = Vec::with_capacity(k * k);
        let mut hom = Vec::with_capacity(k * k);
        for &x in objects {
            for &y in objects {
                let d = self.hom_dim(x, y);
                let sub = self.ideal_subspace(x, y, ideal);
                let units: Vec<Vec<Q>> = (0..d).map(|i| unit(d, i)).collect();
                let chosen = complement_indices(&sub, &units, d);
                let mut all = sub.clone();
                all.extend(chosen.iter().map(|&i| units[i].clone()));
                let binv = Matrix::from_cols(&all, d).inverse().expect("basis of Hom");
                let rows: Vec<usize> = (sub.len()..d).collect();
                let cols: Vec<usize> = (0..d).collect();
                proj.push(binv.submatrix(&rows, &cols));
                reps.push(Matrix::from_cols(
                    &chosen.iter().map(|&i| units[i].clone()).collect::<Vec<_>>(),
                    d,
                ));
                hom.push(chosen.len());
            }
        }
        let mut comp = Vec::with_capacity(k * k * k);
        for (a, &x) in objects.iter().enumerate() {
            for (b, &y) in objects.iter().enumerate() {
                for (c, &z) in objects.iter().enumerate() {
                    let (dab, dbc) = (hom[a * k + b], hom[b * k + c]);
                    let mut table = Vec::with_capacity(dab * dbc);
                    for i in 0..dab {
                        let f = reps[a * k + b].col(i);
                        for j in 0..dbc {
                            let g = reps[b * k + c].col(j);
                            let gf = self.compose_vec(x, y, z, &f, &g);
                            table.push(proj[a * k + c].mul_vec(&gf));
                        }
                    }
                    comp.push(table);
                }
            }
        }
        let identity = objects
            .iter()
            .enumerate()
            .map(|(a, &x)| proj[a * k + a].mul_vec(self.identity_vec(x)))
            .collect();
        PresentedCategory {
            objects: objects.iter().map(|&x| self.labels[x].clone()).collect(),
            source_ids: objects.to_vec(),
            hom,
            comp,
            identity,
            proj,
            reps,
        }
    }
}

impl PresentedCategory {
    /// Assembles a category from explicit data; `comp` uses the same layout as [`TriCat`].
    pub fn from_tables(objects: Vec<String>, hom: Vec<usize>, comp: Vec<Vec<Vec<Q>>>, identity: Vec<Vec<Q>>) -> Self {
        let proj = hom.iter().map(|&d| Matrix::identity(d)).collect();
        let reps = hom.iter().map(|&d| Matrix::identity(d)).collect();
        PresentedCategory { objects, source_ids: Vec::new(), hom, comp, identity, proj, reps }
    }

    pub fn n(&self) -> usize {
        self.objects.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    /// Index of the object with the given ambient catalog id.
    pub fn index_of_id(&self, id: usize) -> Option<usize> {
        self.source_ids.iter().position(|&s| s == id)
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom[a * self.n() + b]
    }

    pub fn identity(&self, a: usize) -> &[Q] {
        &self.identity[a]
    }

    pub fn compose_vec(&self, a: usize, b: usize, c: usize, f: &[Q], g: &[Q]) -> Vec<Q> {
        let k = self.n();
        let dac = self.hom_dim(a, c);
        let dbc = self.hom_dim(b, c);
        let table = &self.comp[(a * k + b) * k + c];
        let mut out = vec_zero(dac);
        if dac == 0 {
            return out;
        }
        for (i, fi) in f.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in g.iter().enumerate() {
                if !gj.is_zero() {
                    vec_axpy(&mut out, &(fi * gj), &table[i * dbc + j]);
                }
            }
        }
        out
    }

    /// Image in the quotient of an ambient morphism between objects `a` and `b`.
    pub fn project(&self, a: usize, b: usize, v: &[Q]) -> Vec<Q> {
        self.proj[a * self.n() + b].mul_vec(v)
    }

    /// Ambient representative of a quotient morphism.
    pub fn lift(&self, a: usize, b: usize, v: &[Q]) -> Vec<Q> {
        self.reps[a * self.n() + b].mul_vec(v)
    }

    pub fn is_zero_object(&self, a: usize) -> bool {
        self.hom_dim(a, a) == 0
    }

    pub fn nonzero_objects(&self) -> Vec<usize> {
        (0..self.n()).filter(|&a| !self.is_zero_object(a)).collect()
    }

    pub fn nonzero_labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.nonzero_objects().into_iter().map(|a| self.objects[a].clone()).collect();
        v.sort();
        v
    }

    /// Full subcategory on the given objects (typically dropping zero objects).
    pub fn restrict(&self, keep: &[usize]) -> PresentedCategory {
        let k = self.n();
        let m = keep.len();
        let mut hom = Vec::with_capacity(m * m);
        let mut proj = Vec::with_capacity(m * m);
        let mut reps = Vec::with_capacity(m * m);
        for &a in keep {
            for &b in keep {
                hom.push(self.hom_dim(a, b));
                proj.push(self.proj[a * k + b].clone());
                reps.push(self.reps[a * k + b].clone());
            }
        }
        let mut comp = Vec::with_capacity(m * m * m);
        for &a in keep {
            for &b in keep {
                for &c in keep {
                    comp.push(self.comp[(a * k + b) * k + c].clone());
                }
            }
        }
        PresentedCategory {
            objects: keep.iter().map(|&a| self.objects[a].clone()).collect(),
            source_ids: if self.source_ids.is_empty() {
                Vec::new()
            } else {
                keep.iter().map(|&a| self.source_ids[a]).collect()
            },
            hom,
            comp,
            identity: keep.iter().map(|&a| self.identity[a].clone()).collect(),
            proj,
            reps,
        }
    }

    pub fn check_associative(&self) -> bool {
        let k = self.n();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for d in 0..k {
                        let (dab, dbc, dcd) = (self.hom_dim(a, b), self.hom_dim(b, c), self.hom_dim(c, d));
                        for i in 0..dab {
                            for j in 0..dbc {
                                let gf = self.compose_vec(a, b, c, &unit(dab, i), &unit(dbc, j));
                                for l in 0..dcd {
                                    let h = unit(dcd, l);
                                    let left = self.compose_vec(a, c, d, &gf, &h);
                                    let hg = self.compose_vec(b, c, d, &unit(dbc, j), &h);
                                    let right = self.compose_vec(a, b, d, &unit(dab, i), &hg);
                                    if left != right {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Basis of the radical of `End(a)`: kernel of the trace form of the
    /// regular representation.
    pub fn radical_end(&self, a: usize) -> Vec<Vec<Q>> {
        let d = self.hom_dim(a, a);
        if d == 0 {
            return Vec::new();
        }
        let mats: Vec<Matrix> = (0..d)
            .map(|i| {
                let cols: Vec<Vec<Q>> =
                    (0..d).map(|j| self.compose_vec(a, a, a, &unit(d, j), &unit(d, i))).collect();
                Matrix::from_cols(&cols, d)
            })
            .collect();
        let mut gram = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                gram.set(i, j, mats[i].mul(&mats[j]).trace());
            }
        }
        gram.nullspace()
    }

    /// Basis of `rad(a, b)`.
    pub fn radical(&self, a: usize, b: usize) -> Vec<Vec<Q>> {
        if a == b {
            self.radical_end(a)
        } else {
            let d = self.hom_dim(a, b);
            (0..d).map(|i| unit(d, i)).collect()
        }
    }

    /// Basis of `rad²(a, b)`.
    pub fn radical_sq(&self, a: usize, b: usize) -> Vec<Vec<Q>> {
        let d = self.hom_dim(a, b);
        if d == 0 {
            return Vec::new();
        }
        let mut vs = Vec::new();
        for c in 0..self.n() {
            let r1 = self.radical(a, c);
            if r1.is_empty() {
                continue;
            }
            let r2 = self.radical(c, b);
            for f in &r1 {
                for g in &r2 {
                    let v = self.compose_vec(a, c, b, f, g);
                    if !vec_is_zero(&v) {
                        vs.push(v);
                    }
                }
            }
        }
        span_basis(&vs, d)
    }

    /// Irreducible-morphism multiplicities `dim rad/rad²` for all pairs of nonzero objects.
    pub fn arrows(&self) -> Vec<(usize, usize, usize)> {
        let nz = self.nonzero_objects();
        let mut out = Vec::new();
        for &a in &nz {
            for &b in &nz {
                let m = self.radical(a, b).len() - self.radical_sq(a, b).len();
                if m > 0 {
                    out.push((a, b, m));
                }
            }
        }
        out
    }

    /// Whether the identity of `a` is the only invertible-up-to-scalar endomorphism,
    /// i.e. `End(a)/rad` is one-dimensional.
    pub fn is_local(&self, a: usize) -> bool {
        self.hom_dim(a, a) == self.radical_end(a).len() + 1
    }

    pub fn unit_vector(&self, a: usize, b: usize, i: usize) -> Vec<Q> {
        unit(self.hom_dim(a, b), i)
    }

    pub fn scalar_identity(&self, a: usize, s: &Q) -> Vec<Q> {
        self.identity[a].iter().map(|x| x * s).collect()
    }
}
