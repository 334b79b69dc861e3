//! A finite Krull–Schmidt triangulated category presented by its
//! indecomposables, Hom bases, composition constants and the action of Σ.

mod ar;
mod ideal;
mod triangle;

pub use ar::{ArArrow, ArQuiver, SerreReport};
pub use ideal::{IdealWitness, PresentedCategory};
pub use triangle::Triangle;

use crate::error::{Error, Result};
use crate::linalg::{vec_axpy, vec_is_zero, vec_zero, Matrix, Q};
use num::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Direct sum of catalog indecomposables, listed with repetition.
pub type StObject = Vec<usize>;

/// A morphism between direct sums; `blocks[j][i]` is the component from
/// `src[i]` to `tgt[j]`, in coordinates of the chosen Hom basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StMorphism {
    pub src: StObject,
    pub tgt: StObject,
    pub blocks: Vec<Vec<Vec<Q>>>,
}

/// Raw data from which a [`TriCat`] is assembled by a backend.
pub struct TriCatData {
    pub name: String,
    pub labels: Vec<String>,
    pub cover: Vec<Option<(i64, i64)>>,
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    /// `hom[x * n + y]`.
    pub hom: Vec<usize>,
    /// `comp[(x * n + y) * n + z][i * d_yz + j]` is `b_j ∘ b_i` for `b_i ∈ Hom(x,y)`, `b_j ∈ Hom(y,z)`.
    pub comp: Vec<Vec<Vec<Q>>>,
    /// `sigma_mor[x * n + y]`: matrix `Hom(x,y) → Hom(Σx,Σy)`.
    pub sigma_mor: Vec<Matrix>,
    pub identity: Vec<Vec<Q>>,
}

#[derive(Clone, Debug)]
pub struct TriCat {
    pub name: String,
    pub labels: Vec<String>,
    pub cover: Vec<Option<(i64, i64)>>,
    pub sigma: Vec<usize>,
    pub sigma_inv: Vec<usize>,
    pub tau: Vec<usize>,
    pub tau_inv: Vec<usize>,
    pub serre: Vec<usize>,
    hom: Vec<usize>,
    comp: Vec<Vec<Vec<Q>>>,
    sigma_mor: Vec<Matrix>,
    sigma_inv_mor: Vec<Matrix>,
    identity: Vec<Vec<Q>>,
}

fn invert_perm(p: &[usize]) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; p.len()];
    for (i, &j) in p.iter().enumerate() {
        if j >= p.len() || inv[j] != usize::MAX {
            return None;
        }
        inv[j] = i;
    }
    Some(inv)
}

impl TriCat {
    pub fn from_data(d: TriCatData) -> Result<Self> {
        let n = d.labels.len();
        let bad = |m: &str| Error::ConstructionFailed(format!("{}: {m}", d.name));
        if d.sigma.len() != n || d.tau.len() != n || d.hom.len() != n * n || d.cover.len() != n {
            return Err(bad("inconsistent sizes"));
        }
        let sigma_inv = invert_perm(&d.sigma).ok_or_else(|| bad("Σ is not a bijection"))?;
        let tau_inv = invert_perm(&d.tau).ok_or_else(|| bad("τ is not a bijection"))?;
        let serre: Vec<usize> = (0..n).map(|x| d.tau[d.sigma[x]]).collect();
        let mut sigma_inv_mor = vec![Matrix::zeros(0, 0); n * n];
        for x in 0..n {
            for y in 0..n {
                let m = &d.sigma_mor[x * n + y];
                let (sx, sy) = (d.sigma[x], d.sigma[y]);
                if m.cols != d.hom[x * n + y] || m.rows != d.hom[sx * n + sy] {
                    return Err(bad("Σ on morphisms has the wrong shape"));
                }
                sigma_inv_mor[sx * n + sy] = m.inverse().ok_or_else(|| bad("Σ is not bijective on Homs"))?;
            }
        }
        Ok(TriCat {
            name: d.name,
            labels: d.labels,
            cover: d.cover,
            sigma: d.sigma,
            sigma_inv,
            tau: d.tau,
            tau_inv,
            serre,
            hom: d.hom,
            comp: d.comp,
            sigma_mor: d.sigma_mor,
            sigma_inv_mor,
            identity: d.identity,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn id_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn obj_of(&self, labels: &[&str]) -> Result<StObject> {
        labels.iter().map(|l| self.id_of(l)).collect()
    }

    pub fn label_obj(&self, x: &[usize]) -> String {
        if x.is_empty() {
            return "0".into();
        }
        let mut v: Vec<usize> = x.to_vec();
        v.sort_unstable();
        v.iter().map(|&i| self.labels[i].as_str()).collect::<Vec<_>>().join("+")
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom[x * self.n() + y]
    }

    pub fn hom_dim_obj(&self, x: &[usize], y: &[usize]) -> usize {
        x.iter().map(|&a| y.iter().map(|&b| self.hom_dim(a, b)).sum::<usize>()).sum()
    }

    pub fn ext1(&self, x: &[usize], y: &[usize]) -> usize {
        self.hom_dim_obj(x, &self.sigma_obj(y))
    }

    pub fn identity_vec(&self, x: usize) -> &[Q] {
        &self.identity[x]
    }

    /// `g ∘ f` for `f ∈ Hom(x,y)`, `g ∈ Hom(y,z)` in basis coordinates.
    pub fn compose_vec(&self, x: usize, y: usize, z: usize, f: &[Q], g: &[Q]) -> Vec<Q> {
        let n = self.n();
        let dxz = self.hom_dim(x, z);
        let dyz = self.hom_dim(y, z);
        let table = &self.comp[(x * n + y) * n + z];
        let mut out = vec_zero(dxz);
        if dxz == 0 {
            return out;
        }
        for (i, fi) in f.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in g.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                vec_axpy(&mut out, &(fi * gj), &table[i * dyz + j]);
            }
        }
        out
    }

    pub fn sigma_obj(&self, x: &[usize]) -> StObject {
        x.iter().map(|&a| self.sigma[a]).collect()
    }

    pub fn sigma_inv_obj(&self, x: &[usize]) -> StObject {
        x.iter().map(|&a| self.sigma_inv[a]).collect()
    }

    pub fn tau_obj(&self, x: &[usize]) -> StObject {
        x.iter().map(|&a| self.tau[a]).collect()
    }

    pub fn tau_inv_obj(&self, x: &[usize]) -> StObject {
        x.iter().map(|&a| self.tau_inv[a]).collect()
    }

    pub fn serre_obj(&self, x: &[usize]) -> StObject {
        x.iter().map(|&a| self.serre[a]).collect()
    }

    pub fn serre_inv_obj(&self, x: &[usize]) -> StObject {
        x.iter().map(|&a| self.sigma_inv[self.tau_inv[a]]).collect()
    }

    pub fn zero_mor(&self, x: &[usize], y: &[usize]) -> StMorphism {
        let blocks = y
            .iter()
            .map(|&b| x.iter().map(|&a| vec_zero(self.hom_dim(a, b))).collect())
            .collect();
        StMorphism { src: x.to_vec(), tgt: y.to_vec(), blocks }
    }

    pub fn identity_mor(&self, x: &[usize]) -> StMorphism {
        let mut f = self.zero_mor(x, x);
        for (i, &a) in x.iter().enumerate() {
            f.blocks[i][i] = self.identity[a].clone();
        }
        f
    }

    /// Morphism between indecomposables from basis coordinates.
    pub fn mor(&self, x: usize, y: usize, v: Vec<Q>) -> StMorphism {
        assert_eq!(v.len(), self.hom_dim(x, y));
        StMorphism { src: vec![x], tgt: vec![y], blocks: vec![vec![v]] }
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &StMorphism, f: &StMorphism) -> StMorphism {
        assert_eq!(f.tgt, g.src, "composition of non-matching morphisms");
        let mut out = self.zero_mor(&f.src, &g.tgt);
        for (k, &c) in g.tgt.iter().enumerate() {
            for (i, &a) in f.src.iter().enumerate() {
                let mut acc = vec_zero(self.hom_dim(a, c));
                for (j, &b) in f.tgt.iter().enumerate() {
                    let fv = &f.blocks[j][i];
                    let gv = &g.blocks[k][j];
                    if vec_is_zero(fv) || vec_is_zero(gv) {
                        continue;
                    }
                    let p = self.compose_vec(a, b, c, fv, gv);
                    vec_axpy(&mut acc, &Q::one(), &p);
                }
                out.blocks[k][i] = acc;
            }
        }
        out
    }

    pub fn add(&self, f: &StMorphism, g: &StMorphism) -> StMorphism {
        self.lin(f, &Q::one(), g)
    }

    pub fn sub(&self, f: &StMorphism, g: &StMorphism) -> StMorphism {
        self.lin(f, &-Q::one(), g)
    }

    fn lin(&self, f: &StMorphism, s: &Q, g: &StMorphism) -> StMorphism {
        assert!(f.src == g.src && f.tgt == g.tgt);
        let mut out = f.clone();
        for (ob, gb) in out.blocks.iter_mut().zip(&g.blocks) {
            for (o, x) in ob.iter_mut().zip(gb) {
                vec_axpy(o, s, x);
            }
        }
        out
    }

    pub fn scale(&self, f: &StMorphism, s: &Q) -> StMorphism {
        let mut out = f.clone();
        for row in out.blocks.iter_mut() {
            for v in row.iter_mut() {
                for e in v.iter_mut() {
                    *e *= s;
                }
            }
        }
        out
    }

    pub fn neg(&self, f: &StMorphism) -> StMorphism {
        self.scale(f, &-Q::one())
    }

    pub fn is_zero(&self, f: &StMorphism) -> bool {
        f.blocks.iter().all(|r| r.iter().all(|v| vec_is_zero(v)))
    }

    /// Flattened coordinates, target-major.
    pub fn to_vec(&self, f: &StMorphism) -> Vec<Q> {
        f.blocks.iter().flat_map(|r| r.iter().flat_map(|v| v.iter().cloned())).collect()
    }

    pub fn from_vec(&self, x: &[usize], y: &[usize], v: &[Q]) -> StMorphism {
        let mut f = self.zero_mor(x, y);
        let mut k = 0;
        for (j, &b) in y.iter().enumerate() {
            for (i, &a) in x.iter().enumerate() {
                let d = self.hom_dim(a, b);
                f.blocks[j][i] = v[k..k + d].to_vec();
                k += d;
            }
        }
        f
    }

    pub fn mor_basis(&self, x: &[usize], y: &[usize]) -> Vec<StMorphism> {
        let d = self.hom_dim_obj(x, y);
        (0..d)
            .map(|i| {
                let mut v = vec_zero(d);
                v[i] = Q::one();
                self.from_vec(x, y, &v)
            })
            .collect()
    }

    /// Random integer combination (coefficients in `[-9, 9]`) of coordinate vectors.
    pub fn random_in_span(&self, x: &[usize], y: &[usize], span: &[Vec<Q>], rng: &mut ChaCha8Rng) -> StMorphism {
        let mut v = vec_zero(self.hom_dim_obj(x, y));
        for s in span {
            let c = Q::from_integer(rng.gen_range(-9..=9).into());
            vec_axpy(&mut v, &c, s);
        }
        self.from_vec(x, y, &v)
    }

    pub fn sigma_mor(&self, f: &StMorphism) -> StMorphism {
        self.apply_sigma(f, false)
    }

    pub fn sigma_inv_mor(&self, f: &StMorphism) -> StMorphism {
        self.apply_sigma(f, true)
    }

    fn apply_sigma(&self, f: &StMorphism, inverse: bool) -> StMorphism {
        let n = self.n();
        let perm = if inverse { &self.sigma_inv } else { &self.sigma };
        let src: StObject = f.src.iter().map(|&a| perm[a]).collect();
        let tgt: StObject = f.tgt.iter().map(|&a| perm[a]).collect();
        let mut out = self.zero_mor(&src, &tgt);
        for (j, &b) in f.tgt.iter().enumerate() {
            for (i, &a) in f.src.iter().enumerate() {
                let m = if inverse { &self.sigma_inv_mor[a * n + b] } else { &self.sigma_mor[a * n + b] };
                out.blocks[j][i] = m.mul_vec(&f.blocks[j][i]);
            }
        }
        out
    }

    /// Matrix of `Σ : Hom(x,y) → Hom(Σx,Σy)`.
    pub fn sigma_matrix(&self, x: usize, y: usize) -> &Matrix {
        &self.sigma_mor[x * self.n() + y]
    }

    /// Matrix of `f ∘ − : Hom(W, X) → Hom(W, Y)`.
    pub fn post_matrix(&self, f: &StMorphism, w: &[usize]) -> Matrix {
        let basis = self.mor_basis(w, &f.src);
        let rows = self.hom_dim_obj(w, &f.tgt);
        let cols: Vec<Vec<Q>> = basis.iter().map(|b| self.to_vec(&self.compose(f, b))).collect();
        Matrix::from_cols(&cols, rows)
    }

    /// Matrix of `− ∘ f : Hom(Y, W) → Hom(X, W)`.
    pub fn pre_matrix(&self, f: &StMorphism, w: &[usize]) -> Matrix {
        let basis = self.mor_basis(&f.tgt, w);
        let rows = self.hom_dim_obj(&f.src, w);
        let cols: Vec<Vec<Q>> = basis.iter().map(|b| self.to_vec(&self.compose(b, f))).collect();
        Matrix::from_cols(&cols, rows)
    }

    /// Isomorphism test via Yoneda: `f_*` is bijective on `Hom(w, −)` for every indecomposable `w`.
    pub fn is_iso(&self, f: &StMorphism) -> bool {
        (0..self.n()).all(|w| {
            let m = self.post_matrix(f, &[w]);
            m.rows == m.cols && m.rank() == m.rows
        })
    }

    /// Inclusion of the `i`-th summand of `x`.
    pub fn inclusion(&self, x: &[usize], i: usize) -> StMorphism {
        let mut f = self.zero_mor(&[x[i]], x);
        f.blocks[i][0] = self.identity[x[i]].clone();
        f
    }

    /// Projection onto the `i`-th summand of `x`.
    pub fn projection(&self, x: &[usize], i: usize) -> StMorphism {
        let mut f = self.zero_mor(x, &[x[i]]);
        f.blocks[0][i] = self.identity[x[i]].clone();
        f
    }

    /// `[f_1 ... f_k] : ⊕ X_i → Y`.
    pub fn hcat(&self, maps: &[StMorphism], y: &[usize]) -> StMorphism {
        let src: StObject = maps.iter().flat_map(|f| f.src.iter().copied()).collect();
        let mut out = self.zero_mor(&src, y);
        let mut off = 0;
        for f in maps {
            assert_eq!(f.tgt, y);
            for j in 0..y.len() {
                for i in 0..f.src.len() {
                    out.blocks[j][off + i] = f.blocks[j][i].clone();
                }
            }
            off += f.src.len();
        }
        out
    }

    /// `(f_1; ...; f_k) : X → ⊕ Y_i`.
    pub fn vcat(&self, maps: &[StMorphism], x: &[usize]) -> StMorphism {
        let tgt: StObject = maps.iter().flat_map(|f| f.tgt.iter().copied()).collect();
        let mut out = self.zero_mor(x, &tgt);
        let mut off = 0;
        for f in maps {
            assert_eq!(f.src, x);
            for j in 0..f.tgt.len() {
                out.blocks[off + j] = f.blocks[j].clone();
            }
            off += f.tgt.len();
        }
        out
    }

    /// Restriction of `f` to the summands `rows` of its target and `cols` of its source.
    pub fn submorphism(&self, f: &StMorphism, cols: &[usize], rows: &[usize]) -> StMorphism {
        StMorphism {
            src: cols.iter().map(|&i| f.src[i]).collect(),
            tgt: rows.iter().map(|&j| f.tgt[j]).collect(),
            blocks: rows.iter().map(|&j| cols.iter().map(|&i| f.blocks[j][i].clone()).collect()).collect(),
        }
    }

    /// Checks associativity of the structure constants on all basis triples.
    pub fn check_associative(&self) -> bool {
        let n = self.n();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (dab, dbc, dcd) = (self.hom_dim(a, b), self.hom_dim(b, c), self.hom_dim(c, d));
                        for i in 0..dab {
                            let f = unit(dab, i);
                            for j in 0..dbc {
                                let g = unit(dbc, j);
                                let gf = self.compose_vec(a, b, c, &f, &g);
                                for k in 0..dcd {
                                    let h = unit(dcd, k);
                                    let left = self.compose_vec(a, c, d, &gf, &h);
                                    let hg = self.compose_vec(b, c, d, &g, &h);
                                    let right = self.compose_vec(a, b, d, &f, &hg);
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

    /// Checks that identities are two-sided units and Σ is a functor.
    pub fn check_units_and_sigma(&self) -> bool {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for i in 0..self.hom_dim(x, y) {
                    let f = unit(self.hom_dim(x, y), i);
                    if self.compose_vec(x, x, y, &self.identity[x], &f) != f
                        || self.compose_vec(x, y, y, &f, &self.identity[y]) != f
                    {
                        return false;
                    }
                }
            }
            let sid = self.sigma_matrix(x, x).mul_vec(&self.identity[x]);
            if sid != self.identity[self.sigma[x]] {
                return false;
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for i in 0..self.hom_dim(x, y) {
                        for j in 0..self.hom_dim(y, z) {
                            let f = unit(self.hom_dim(x, y), i);
                            let g = unit(self.hom_dim(y, z), j);
                            let lhs = self.sigma_matrix(x, z).mul_vec(&self.compose_vec(x, y, z, &f, &g));
                            let sf = self.sigma_matrix(x, y).mul_vec(&f);
                            let sg = self.sigma_matrix(y, z).mul_vec(&g);
                            let rhs = self.compose_vec(self.sigma[x], self.sigma[y], self.sigma[z], &sf, &sg);
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Whether every summand is distinct.
    pub fn is_basic(&self, x: &[usize]) -> bool {
        let mut v = x.to_vec();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Hom-dimension table, row `x`, column `y`.
    pub fn hom_table(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        (0..n).map(|x| (0..n).map(|y| self.hom_dim(x, y)).collect()).collect()
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec_zero(n);
    v[i] = Q::one();
    v
}

/// Sorted copy of a multiset of indecomposables.
pub fn sorted(x: &[usize]) -> StObject {
    let mut v = x.to_vec();
    v.sort_unstable();
    v
}

/// Remove duplicates, keeping sorted order.
pub fn basic_of(x: &[usize]) -> StObject {
    let mut v = sorted(x);
    v.dedup();
    v
}
