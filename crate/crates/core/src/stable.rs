//! Stable module categories of self-injective algebras, presented as [`TriCat`]s.

use crate::algebra::module::{
    cokernel, cosyzygy, find_iso, hom_basis, inj_hull, is_projective, nakayama, proj_cover, random_combination,
    syzygy, Module, ModuleMap,
};
use crate::algebra::{decompose, QuiverAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{complement_indices, unit_vec, Matrix, Q};
use crate::tricat::{StMorphism, StObject, TriCat, TriCatData};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;

const MAX_CATALOG: usize = 400;

/// `Hom_A(X, Y)` together with its quotient by maps factoring through projectives.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub full: Vec<ModuleMap>,
    /// Flattened map → coordinates in `full`.
    left_inv: Matrix,
    /// Coordinates in `full` → stable coordinates.
    to_stable: Matrix,
    /// Representatives of the stable basis.
    pub reps: Vec<ModuleMap>,
}

impl StableHom {
    pub fn new(alg: &QuiverAlgebra, x: &Module, y: &Module) -> Self {
        let full = hom_basis(alg, x, y);
        let flat_len: usize = x.dims.iter().zip(&y.dims).map(|(a, b)| a * b).sum();
        let cols: Vec<Vec<Q>> = full.iter().map(|f| f.to_vec()).collect();
        let left_inv = Matrix::from_cols(&cols, flat_len).left_inverse().expect("independent Hom basis");
        let d = full.len();
        let (p, pm, _) = proj_cover(alg, y);
        let pspan: Vec<Vec<Q>> = hom_basis(alg, x, &p)
            .iter()
            .map(|u| left_inv.mul_vec(&u.then(&pm).to_vec()))
            .collect();
        let units: Vec<Vec<Q>> = (0..d).map(|i| unit_vec(d, i)).collect();
        let chosen = complement_indices(&pspan, &units, d);
        let base = crate::linalg::span_basis(&pspan, d);
        let mut all = base.clone();
        all.extend(chosen.iter().map(|&i| units[i].clone()));
        let binv = Matrix::from_cols(&all, d).inverse().expect("basis");
        let rows: Vec<usize> = (base.len()..d).collect();
        let allc: Vec<usize> = (0..d).collect();
        let to_stable = binv.submatrix(&rows, &allc);
        let reps = chosen.iter().map(|&i| full[i].clone()).collect();
        StableHom { full, left_inv, to_stable, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Stable coordinates of a module map.
    pub fn coords(&self, f: &ModuleMap) -> Vec<Q> {
        self.to_stable.mul_vec(&self.left_inv.mul_vec(&f.to_vec()))
    }

    /// Module map representing the given stable coordinates.
    pub fn represent(&self, v: &[Q], x: &Module, y: &Module) -> ModuleMap {
        let mut acc = ModuleMap::zero(x, y);
        for (r, c) in self.reps.iter().zip(v) {
            acc = acc.add(&r.scale(c));
        }
        acc
    }
}

/// A self-injective algebra with its catalog of non-projective indecomposables
/// and the stable category built from it.
#[derive(Clone, Debug)]
pub struct StableModel {
    pub alg: QuiverAlgebra,
    pub catalog: Vec<Module>,
    pub cat: TriCat,
    homs: Vec<StableHom>,
}

/// Non-projective indecomposable summands of `m`.
pub fn strip_projectives(alg: &QuiverAlgebra, m: &Module) -> Result<Vec<Module>> {
    Ok(decompose(alg, m)?
        .into_iter()
        .map(|p| p.module)
        .filter(|p| !is_projective(alg, p))
        .collect())
}

struct Catalog<'a> {
    alg: &'a QuiverAlgebra,
    items: Vec<Module>,
}

impl Catalog<'_> {
    fn find(&self, m: &Module) -> Option<usize> {
        self.items.iter().position(|c| c.dims == m.dims && find_iso(self.alg, c, m).is_some())
    }

    /// Catalog ids of the non-projective summands of `m`, inserting new ones.
    fn identify(&mut self, m: &Module, queue: &mut VecDeque<usize>) -> Result<Vec<usize>> {
        let mut ids = Vec::new();
        for piece in strip_projectives(self.alg, m)? {
            let id = match self.find(&piece) {
                Some(i) => i,
                None => {
                    if self.items.len() >= MAX_CATALOG {
                        return Err(Error::ConstructionFailed("stable catalog does not close".into()));
                    }
                    self.items.push(piece);
                    queue.push_back(self.items.len() - 1);
                    self.items.len() - 1
                }
            };
            ids.push(id);
        }
        Ok(ids)
    }
}

fn single(ids: Vec<usize>, what: &str) -> Result<usize> {
    match ids.as_slice() {
        [i] => Ok(*i),
        _ => Err(Error::ConstructionFailed(format!("{what} is not indecomposable"))),
    }
}

/// `τX = Ω²νX` at module level.
fn ar_translate(alg: &QuiverAlgebra, m: &Module) -> Result<Module> {
    let nu = nakayama(alg, m)?;
    let (o1, _) = syzygy(alg, &nu)?;
    Ok(syzygy(alg, &o1)?.0)
}

/// Middle term of the almost split sequence ending in the indecomposable `x`.
fn ar_middle(alg: &QuiverAlgebra, x: &Module, tx: &Module) -> Result<Module> {
    let (p, pm, _) = proj_cover(alg, x);
    let (om, incl) = crate::algebra::module::kernel(alg, &p, &pm);
    let sh = StableHom::new(alg, &om, tx);
    let end = StableHom::new(alg, &om, &om);
    let rad = stable_radical(&end);
    // u spans the maps killed by precomposition with the radical.
    let d = sh.dim();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for r in &rad {
        let rmap = end.represent(r, &om, &om);
        let cols: Vec<Vec<Q>> = sh.reps.iter().map(|u| sh.coords(&rmap.then(u))).collect();
        let m = Matrix::from_cols(&cols, d);
        for i in 0..m.rows {
            rows.push(m.row(i));
        }
    }
    let socle = if rows.is_empty() {
        (0..d).map(|i| unit_vec(d, i)).collect()
    } else {
        Matrix::from_rows(rows, d).nullspace()
    };
    let u = socle.first().ok_or_else(|| Error::ConstructionFailed("no almost split sequence".into()))?;
    let umap = sh.represent(u, &om, tx);
    let both = ModuleMap::vcat(&[umap, incl], &om);
    let (e, _) = cokernel(alg, &tx.direct_sum(&p), &both);
    Ok(e)
}

/// Radical of a local stable endomorphism ring, as stable coordinate vectors.
fn stable_radical(end: &StableHom) -> Vec<Vec<Q>> {
    let d = end.dim();
    let mats: Vec<Matrix> = end
        .reps
        .iter()
        .map(|a| {
            let cols: Vec<Vec<Q>> = end.reps.iter().map(|b| end.coords(&b.then(a))).collect();
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

impl StableModel {
    pub fn build(alg: QuiverAlgebra, name: &str) -> Result<Self> {
        alg.require_self_injective()?;
        let nv = alg.num_vertices();
        let mut cat = Catalog { alg: &alg, items: Vec::new() };
        let mut queue = VecDeque::new();
        for v in 0..nv {
            cat.identify(&alg.simple(v), &mut queue)?;
        }
        let mut sigma: Vec<Option<usize>> = Vec::new();
        let mut tau: Vec<Option<usize>> = Vec::new();
        while let Some(x) = queue.pop_front() {
            let m = cat.items[x].clone();
            let (c, _) = cosyzygy(&alg, &m)?;
            let s = single(cat.identify(&c, &mut queue)?, "cosyzygy")?;
            let (o, _) = syzygy(&alg, &m)?;
            cat.identify(&o, &mut queue)?;
            let tm = ar_translate(&alg, &m)?;
            let t = single(cat.identify(&tm, &mut queue)?, "AR translate")?;
            let tmi = cat.items[t].clone();
            let e = ar_middle(&alg, &m, &tmi)?;
            cat.identify(&e, &mut queue)?;
            if sigma.len() < cat.items.len() {
                sigma.resize(cat.items.len(), None);
                tau.resize(cat.items.len(), None);
            }
            sigma[x] = Some(s);
            tau[x] = Some(t);
        }
        let catalog = cat.items;
        let n = catalog.len();
        let sigma: Vec<usize> = sigma.into_iter().map(|s| s.expect("every entry processed")).collect();
        let tau: Vec<usize> = tau.into_iter().map(|s| s.expect("every entry processed")).collect();

        let mut homs = Vec::with_capacity(n * n);
        for x in &catalog {
            for y in &catalog {
                homs.push(StableHom::new(&alg, x, y));
            }
        }
        let hom: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz, hxz) = (&homs[x * n + y], &homs[y * n + z], &homs[x * n + z]);
                    let mut table = Vec::with_capacity(hxy.dim() * hyz.dim());
                    for f in &hxy.reps {
                        for g in &hyz.reps {
                            table.push(hxz.coords(&f.then(g)));
                        }
                    }
                    comp.push(table);
                }
            }
        }
        let identity: Vec<Vec<Q>> =
            (0..n).map(|x| homs[x * n + x].coords(&ModuleMap::identity(&catalog[x]))).collect();

        // Σ on morphisms: extend along injective hulls, pass to cokernels,
        // and conjugate to the catalog representatives.
        struct Hull {
            inj: Module,
            iota: ModuleMap,
            section: Vec<Matrix>,
            pi: ModuleMap,
            theta: ModuleMap,
        }
        let mut hulls = Vec::with_capacity(n);
        for x in 0..n {
            let (inj, iota, _) = inj_hull(&alg, &catalog[x]);
            let (c, pi) = cokernel(&alg, &inj, &iota);
            let theta = find_iso(&alg, &c, &catalog[sigma[x]])
                .ok_or_else(|| Error::ConstructionFailed("cosyzygy lost its catalog entry".into()))?;
            let section = pi
                .comps
                .iter()
                .map(|p| p.transpose().left_inverse().expect("surjective").transpose())
                .collect();
            hulls.push(Hull { inj, iota, section, pi, theta });
        }
        let mut sigma_mor = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (hx, hy) = (&hulls[x], &hulls[y]);
                let ext_basis = hom_basis(&alg, &hx.inj, &hy.inj);
                let flat: usize = catalog[x].dims.iter().zip(&hy.inj.dims).map(|(a, b)| a * b).sum();
                let cols: Vec<Vec<Q>> = ext_basis.iter().map(|b| hx.iota.then(b).to_vec()).collect();
                let sys = Matrix::from_cols(&cols, flat);
                let target = &homs[x * n + y];
                let (sx, sy) = (sigma[x], sigma[y]);
                let theta_x_inv = hx.theta.inverse().expect("iso");
                let mut m = Matrix::zeros(hom[sx * n + sy], hom[x * n + y]);
                for (c, f) in target.reps.iter().enumerate() {
                    let rhs = f.then(&hy.iota).to_vec();
                    let coef = sys
                        .solve(&rhs)
                        .ok_or_else(|| Error::ConstructionFailed("map does not extend to injective hulls".into()))?;
                    let mut big = ModuleMap::zero(&hx.inj, &hy.inj);
                    for (b, k) in ext_basis.iter().zip(&coef) {
                        big = big.add(&b.scale(k));
                    }
                    let fbar = ModuleMap {
                        comps: (0..nv)
                            .map(|v| hy.pi.comps[v].mul(&big.comps[v]).mul(&hx.section[v]))
                            .collect(),
                    };
                    let conj = theta_x_inv.then(&fbar).then(&hy.theta);
                    let v = homs[sx * n + sy].coords(&conj);
                    for (r, val) in v.into_iter().enumerate() {
                        m.set(r, c, val);
                    }
                }
                sigma_mor.push(m);
            }
        }
        let labels = (0..n).map(|i| format!("M{i}")).collect();
        let cat = TriCat::from_data(TriCatData {
            name: name.to_string(),
            labels,
            cover: vec![None; n],
            sigma,
            tau,
            hom,
            comp,
            sigma_mor,
            identity,
        })?;
        Ok(StableModel { alg, catalog, cat, homs })
    }

    fn stable_hom(&self, x: usize, y: usize) -> &StableHom {
        &self.homs[x * self.catalog.len() + y]
    }

    pub fn module_of(&self, x: &[usize]) -> Module {
        x.iter().fold(self.alg.zero_module(), |acc, &i| acc.direct_sum(&self.catalog[i]))
    }

    /// A module-level representative of a stable morphism between direct sums.
    pub fn module_map_of(&self, f: &StMorphism) -> ModuleMap {
        let src = self.module_of(&f.src);
        let rows: Vec<ModuleMap> = f
            .tgt
            .iter()
            .enumerate()
            .map(|(j, &b)| {
                let blocks: Vec<ModuleMap> = f
                    .src
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| {
                        self.stable_hom(a, b).represent(&f.blocks[j][i], &self.catalog[a], &self.catalog[b])
                    })
                    .collect();
                ModuleMap::hcat(&blocks, &self.catalog[b])
            })
            .collect();
        ModuleMap::vcat(&rows, &src)
    }

    /// Catalog ids of the non-projective summands of a module.
    pub fn identify(&self, m: &Module) -> Result<StObject> {
        let mut out = Vec::new();
        for piece in strip_projectives(&self.alg, m)? {
            let id = self
                .catalog
                .iter()
                .position(|c| c.dims == piece.dims && find_iso(&self.alg, c, &piece).is_some())
                .ok_or_else(|| Error::ConstructionFailed("module outside the catalog".into()))?;
            out.push(id);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Cone of a module map `f : X → Y` as the cokernel of `(f, ι) : X → Y ⊕ I(X)`.
    pub fn module_cone(&self, x: &Module, y: &Module, f: &ModuleMap) -> Result<StObject> {
        let (inj, iota, _) = inj_hull(&self.alg, x);
        let both = ModuleMap::vcat(&[f.clone(), iota], x);
        let (c, _) = cokernel(&self.alg, &y.direct_sum(&inj), &both);
        self.identify(&c)
    }

    /// Cone of a stable morphism computed at module level.
    pub fn cone_of(&self, f: &StMorphism) -> Result<StObject> {
        let (x, y) = (self.module_of(&f.src), self.module_of(&f.tgt));
        self.module_cone(&x, &y, &self.module_map_of(f))
    }

    /// Cone of a different representative of the same stable class: a random
    /// map factoring through the projective cover of the target is added.
    pub fn cone_of_perturbed(&self, f: &StMorphism, seed: u64) -> Result<StObject> {
        let (x, y) = (self.module_of(&f.src), self.module_of(&f.tgt));
        let base = self.module_map_of(f);
        let (p, pm, _) = proj_cover(&self.alg, &y);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_combination(&hom_basis(&self.alg, &x, &p), &x, &p, &mut rng);
        let g = base.add(&u.then(&pm));
        self.module_cone(&x, &y, &g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{loop_two, nakayama_six};
    use crate::algebra::AlgebraSpec;

    fn preset(json: &str) -> QuiverAlgebra {
        let spec: AlgebraSpec = serde_json::from_str(json).unwrap();
        QuiverAlgebra::from_spec(&spec).unwrap()
    }

    fn check(model: &StableModel) {
        let c = &model.cat;
        assert!(c.check_associative());
        assert!(c.check_units_and_sigma());
        assert!(c.serre_check().unwrap().serre_equals_tau_sigma);
        assert!(c.ar_quiver().is_translation_quiver());
    }

    #[test]
    fn dual_numbers() {
        let m = StableModel::build(loop_two(), "k[x]/x^2").unwrap();
        assert_eq!(m.catalog.len(), 1);
        assert_eq!(m.cat.hom_dim(0, 0), 1);
        assert_eq!(m.cat.sigma, vec![0]);
        check(&m);
    }

    #[test]
    fn nakayama_loewy_three() {
        let m = StableModel::build(nakayama_six(), "nak").unwrap();
        assert_eq!(m.catalog.len(), 4);
        check(&m);
    }

    #[test]
    fn twisted_trivial_extensions() {
        let a3 = StableModel::build(preset(include_str!("../presets/A3_tm1s1.algebra.json")), "a3").unwrap();
        assert_eq!(a3.catalog.len(), 9);
        check(&a3);
        let a5 = StableModel::build(preset(include_str!("../presets/A5_tm2s1.algebra.json")), "a5").unwrap();
        assert_eq!(a5.catalog.len(), 25);
        check(&a5);
    }

    #[test]
    fn module_cone_agrees_with_triangle_completion() {
        let m = StableModel::build(preset(include_str!("../presets/A3_tm1s1.algebra.json")), "a3").unwrap();
        let c = &m.cat;
        for x in 0..c.n() {
            for y in 0..c.n() {
                for b in c.mor_basis(&[x], &[y]) {
                    let mut a = c.complete_triangle(&b).unwrap().z;
                    a.sort_unstable();
                    assert_eq!(m.cone_of(&b).unwrap(), a);
                    assert_eq!(m.cone_of_perturbed(&b, 7).unwrap(), a);
                }
            }
        }
    }
}
