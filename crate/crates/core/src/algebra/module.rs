use super::QuiverAlgebra;
use crate::error::Result;
use crate::linalg::{complement_indices, express_in_span, span_basis, unit_vec, Matrix, Q};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A finite-dimensional representation: a space per vertex and a matrix
/// `dims[tgt] x dims[src]` per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

/// A morphism of representations, one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub comps: Vec<Matrix>,
}

impl Module {
    pub fn zero(alg: &QuiverAlgebra) -> Self {
        Module {
            dims: vec![0; alg.num_vertices()],
            maps: alg.arrows.iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        Module {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()]))
                .collect(),
        }
    }

    /// Matrix of a path starting at `src`.
    pub fn path_matrix(&self, alg: &QuiverAlgebra, src: usize, arrows: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.dims[src]);
        for &a in arrows {
            m = self.maps[a].mul(&m);
        }
        let _ = alg;
        m
    }

    pub fn basis_action(&self, alg: &QuiverAlgebra, b: usize) -> Matrix {
        let p = &alg.basis[b];
        self.path_matrix(alg, p.src, &p.arrows)
    }

    /// Whether the arrow matrices satisfy every relation of the algebra.
    pub fn satisfies_relations(&self, alg: &QuiverAlgebra) -> bool {
        alg.relations.iter().all(|rel| {
            let Some((_, first)) = rel.first() else { return true };
            let src = alg.arrows[first[0]].src;
            let tgt = alg.arrows[*first.last().unwrap()].tgt;
            let mut acc = Matrix::zeros(self.dims[tgt], self.dims[src]);
            for (c, p) in rel {
                acc = acc.add(&self.path_matrix(alg, src, p).scale(c));
            }
            acc.is_zero()
        })
    }
}

impl ModuleMap {
    pub fn zero(m: &Module, n: &Module) -> Self {
        ModuleMap { comps: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(b, a)).collect() }
    }

    pub fn identity(m: &Module) -> Self {
        ModuleMap { comps: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    pub fn src_dims(&self) -> Vec<usize> {
        self.comps.iter().map(|c| c.cols).collect()
    }

    pub fn tgt_dims(&self) -> Vec<usize> {
        self.comps.iter().map(|c| c.rows).collect()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap { comps: self.comps.iter().zip(&g.comps).map(|(f, g)| g.mul(f)).collect() }
    }

    pub fn add(&self, o: &ModuleMap) -> ModuleMap {
        ModuleMap { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &ModuleMap) -> ModuleMap {
        ModuleMap { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &Q) -> ModuleMap {
        ModuleMap { comps: self.comps.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_invertible())
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let comps = self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { comps })
    }

    /// Entries of all components, vertex by vertex, row-major.
    pub fn to_vec(&self) -> Vec<Q> {
        let mut v = Vec::new();
        for c in &self.comps {
            for r in 0..c.rows {
                v.extend(c.row(r));
            }
        }
        v
    }

    pub fn from_vec(src: &[usize], tgt: &[usize], v: &[Q]) -> ModuleMap {
        let mut k = 0;
        let comps = src
            .iter()
            .zip(tgt)
            .map(|(&s, &t)| {
                let mut m = Matrix::zeros(t, s);
                for r in 0..t {
                    for c in 0..s {
                        m.set(r, c, v[k].clone());
                        k += 1;
                    }
                }
                m
            })
            .collect();
        ModuleMap { comps }
    }

    /// `[f_1 ... f_k] : ⊕ M_i → N`.
    pub fn hcat(maps: &[ModuleMap], tgt: &Module) -> ModuleMap {
        let comps = (0..tgt.dims.len())
            .map(|v| maps.iter().fold(Matrix::zeros(tgt.dims[v], 0), |acc, f| acc.hstack(&f.comps[v])))
            .collect();
        ModuleMap { comps }
    }

    /// `(f_1; ...; f_k) : M → ⊕ N_i`.
    pub fn vcat(maps: &[ModuleMap], src: &Module) -> ModuleMap {
        let comps = (0..src.dims.len())
            .map(|v| maps.iter().fold(Matrix::zeros(0, src.dims[v]), |acc, f| acc.vstack(&f.comps[v])))
            .collect();
        ModuleMap { comps }
    }

    pub fn diag(maps: &[ModuleMap]) -> ModuleMap {
        let nv = maps.first().map_or(0, |m| m.comps.len());
        let comps = (0..nv)
            .map(|v| Matrix::block_diag(&maps.iter().map(|f| f.comps[v].clone()).collect::<Vec<_>>()))
            .collect();
        ModuleMap { comps }
    }

    /// Whole map as one block-diagonal matrix on the total space.
    pub fn to_block(&self) -> Matrix {
        Matrix::block_diag(&self.comps)
    }

    pub fn is_module_map(&self, m: &Module, n: &Module, alg: &QuiverAlgebra) -> bool {
        alg.arrows.iter().enumerate().all(|(ai, a)| {
            n.maps[ai].mul(&self.comps[a.src]) == self.comps[a.tgt].mul(&m.maps[ai])
        })
    }
}

/// Basis of `Hom_A(M, N)`.
pub fn hom_basis(alg: &QuiverAlgebra, m: &Module, n: &Module) -> Vec<ModuleMap> {
    let nv = alg.num_vertices();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let nvars = offset[nv];
    if nvars == 0 {
        return Vec::new();
    }
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (ai, a) in alg.arrows.iter().enumerate() {
        let (s, t) = (a.src, a.tgt);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![Q::zero(); nvars];
                for k in 0..n.dims[s] {
                    let x = n.maps[ai].get(r, k);
                    if !x.is_zero() {
                        row[var(s, k, c)] += x;
                    }
                }
                for k in 0..m.dims[t] {
                    let x = m.maps[ai].get(k, c);
                    if !x.is_zero() {
                        row[var(t, r, k)] -= x;
                    }
                }
                rows.push(row);
            }
        }
    }
    let ns = if rows.is_empty() {
        (0..nvars).map(|i| unit_vec(nvars, i)).collect()
    } else {
        Matrix::from_rows(rows, nvars).nullspace()
    };
    ns.iter().map(|v| ModuleMap::from_vec(&m.dims, &n.dims, v)).collect()
}

pub fn hom_dim(alg: &QuiverAlgebra, m: &Module, n: &Module) -> usize {
    hom_basis(alg, m, n).len()
}

/// Coordinates of `f` in a list of maps, if it lies in their span.
pub fn express_map(basis: &[ModuleMap], f: &ModuleMap) -> Option<Vec<Q>> {
    let vs: Vec<Vec<Q>> = basis.iter().map(|b| b.to_vec()).collect();
    express_in_span(&vs, &f.to_vec())
}

pub fn combine(basis: &[ModuleMap], coeffs: &[Q], src: &Module, tgt: &Module) -> ModuleMap {
    let mut acc = ModuleMap::zero(src, tgt);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}


/// Submodule spanned at each vertex by the given independent columns, which
/// must be closed under the arrow action.
pub fn submodule(alg: &QuiverAlgebra, m: &Module, cols: &[Matrix]) -> (Module, ModuleMap) {
    let dims: Vec<usize> = cols.iter().map(|c| c.cols).collect();
    let inv: Vec<Matrix> =
        cols.iter().map(|c| c.left_inverse().expect("independent columns")).collect();
    let maps = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| inv[a.tgt].mul(&m.maps[ai]).mul(&cols[a.src]))
        .collect();
    (Module { dims, maps }, ModuleMap { comps: cols.to_vec() })
}

fn columns_matrix(vs: &[Vec<Q>], rows: usize) -> Matrix {
    Matrix::from_cols(vs, rows)
}

pub fn kernel(alg: &QuiverAlgebra, m: &Module, f: &ModuleMap) -> (Module, ModuleMap) {
    let cols: Vec<Matrix> = f
        .comps
        .iter()
        .enumerate()
        .map(|(v, c)| {
            let ns = if c.rows == 0 {
                (0..m.dims[v]).map(|i| unit_vec(m.dims[v], i)).collect()
            } else {
                c.nullspace()
            };
            columns_matrix(&ns, m.dims[v])
        })
        .collect();
    submodule(alg, m, &cols)
}

/// Image of `f : M → N` as a submodule of `N`.
pub fn image(alg: &QuiverAlgebra, n: &Module, f: &ModuleMap) -> (Module, ModuleMap) {
    let cols: Vec<Matrix> = f
        .comps
        .iter()
        .enumerate()
        .map(|(v, c)| {
            let vs: Vec<Vec<Q>> = (0..c.cols).map(|j| c.col(j)).collect();
            columns_matrix(&span_basis(&vs, n.dims[v]), n.dims[v])
        })
        .collect();
    submodule(alg, n, &cols)
}

/// Cokernel `π : N → C` of `f : M → N`.
pub fn cokernel(alg: &QuiverAlgebra, n: &Module, f: &ModuleMap) -> (Module, ModuleMap) {
    let nv = n.dims.len();
    let mut pis = Vec::with_capacity(nv);
    let mut reps = Vec::with_capacity(nv);
    for v in 0..nv {
        let d = n.dims[v];
        let c = &f.comps[v];
        let img = span_basis(&(0..c.cols).map(|j| c.col(j)).collect::<Vec<_>>(), d);
        let units: Vec<Vec<Q>> = (0..d).map(|i| unit_vec(d, i)).collect();
        let chosen = complement_indices(&img, &units, d);
        let mut all = img.clone();
        all.extend(chosen.iter().map(|&i| units[i].clone()));
        let b = columns_matrix(&all, d).inverse().expect("basis");
        let rows: Vec<usize> = (img.len()..d).collect();
        let cols: Vec<usize> = (0..d).collect();
        pis.push(b.submatrix(&rows, &cols));
        reps.push(columns_matrix(&chosen.iter().map(|&i| units[i].clone()).collect::<Vec<_>>(), d));
    }
    let dims: Vec<usize> = pis.iter().map(|p| p.rows).collect();
    let maps = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| pis[a.tgt].mul(&n.maps[ai]).mul(&reps[a.src]))
        .collect();
    (Module { dims, maps }, ModuleMap { comps: pis })
}

/// The map `P_v → M` sending the idempotent `e_v` to `x ∈ M_v`.
pub fn map_from_projective(alg: &QuiverAlgebra, v: usize, m: &Module, x: &[Q]) -> ModuleMap {
    let comps = (0..alg.num_vertices())
        .map(|j| {
            let paths = alg.paths_between(v, j);
            let cols: Vec<Vec<Q>> =
                paths.iter().map(|&b| m.basis_action(alg, b).mul_vec(x)).collect();
            columns_matrix(&cols, m.dims[j])
        })
        .collect();
    ModuleMap { comps }
}

/// The map `M → I_i` induced by a functional `phi` on `M_i`.
pub fn map_to_injective(alg: &QuiverAlgebra, i: usize, m: &Module, phi: &[Q]) -> ModuleMap {
    let comps = (0..alg.num_vertices())
        .map(|j| {
            let paths = alg.paths_between(j, i);
            let rows: Vec<Vec<Q>> = paths
                .iter()
                .map(|&b| m.basis_action(alg, b).transpose().mul_vec(phi))
                .collect();
            Matrix::from_rows(rows, m.dims[j])
        })
        .collect();
    ModuleMap { comps }
}

/// Left multiplication by the arrow `a : v → w` as a map `P_w → P_v`.
pub fn arrow_map(alg: &QuiverAlgebra, a: usize) -> ModuleMap {
    let (v, w) = (alg.arrows[a].src, alg.arrows[a].tgt);
    let pv = alg.projective(v);
    let x = {
        let paths = alg.paths_between(v, w);
        let mut x = vec![Q::zero(); paths.len()];
        for (b, c) in alg.reduce(v, &[a]) {
            x[paths.iter().position(|&p| p == b).expect("arrow lies in P_v")] = c;
        }
        x
    };
    map_from_projective(alg, w, &pv, &x)
}

/// Projective cover `p : P → M`; also returns the vertices of the summands of `P`.
pub fn proj_cover(alg: &QuiverAlgebra, m: &Module) -> (Module, ModuleMap, Vec<usize>) {
    let mut p = Module::zero(alg);
    let mut pieces = Vec::new();
    let mut tops = Vec::new();
    for v in 0..alg.num_vertices() {
        let d = m.dims[v];
        let mut rad = Vec::new();
        for (ai, a) in alg.arrows.iter().enumerate() {
            if a.tgt == v {
                let ma = &m.maps[ai];
                rad.extend((0..ma.cols).map(|j| ma.col(j)));
            }
        }
        let units: Vec<Vec<Q>> = (0..d).map(|i| unit_vec(d, i)).collect();
        for i in complement_indices(&rad, &units, d) {
            pieces.push(map_from_projective(alg, v, m, &units[i]));
            p = p.direct_sum(&alg.projective(v));
            tops.push(v);
        }
    }
    let map = ModuleMap::hcat(&pieces, m);
    (p, map, tops)
}

/// Injective hull `ι : M → I`; also returns the vertices of the summands of `I`.
pub fn inj_hull(alg: &QuiverAlgebra, m: &Module) -> (Module, ModuleMap, Vec<usize>) {
    let mut inj = Module::zero(alg);
    let mut pieces = Vec::new();
    let mut socs = Vec::new();
    for v in 0..alg.num_vertices() {
        let d = m.dims[v];
        if d == 0 {
            continue;
        }
        let outgoing: Vec<&Matrix> = alg
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.src == v)
            .map(|(ai, _)| &m.maps[ai])
            .collect();
        let soc = if outgoing.is_empty() {
            (0..d).map(|i| unit_vec(d, i)).collect()
        } else {
            let stacked = outgoing.iter().fold(Matrix::zeros(0, d), |acc, x| acc.vstack(x));
            if stacked.rows == 0 {
                (0..d).map(|i| unit_vec(d, i)).collect()
            } else {
                stacked.nullspace()
            }
        };
        if soc.is_empty() {
            continue;
        }
        let units: Vec<Vec<Q>> = (0..d).map(|i| unit_vec(d, i)).collect();
        let mut all = soc.clone();
        all.extend(complement_indices(&soc, &units, d).into_iter().map(|i| units[i].clone()));
        let binv = columns_matrix(&all, d).inverse().expect("basis");
        for k in 0..soc.len() {
            pieces.push(map_to_injective(alg, v, m, &binv.row(k)));
            inj = inj.direct_sum(&alg.injective(v));
            socs.push(v);
        }
    }
    let map = ModuleMap::vcat(&pieces, m);
    (inj, map, socs)
}

/// First syzygy `ΩM = ker(P → M)` with its inclusion into the projective cover.
pub fn syzygy(alg: &QuiverAlgebra, m: &Module) -> Result<(Module, ModuleMap)> {
    alg.require_self_injective()?;
    let (p, pm, _) = proj_cover(alg, m);
    Ok(kernel(alg, &p, &pm))
}

/// First cosyzygy `Ω⁻M = coker(M → I)` with the projection from the injective hull.
pub fn cosyzygy(alg: &QuiverAlgebra, m: &Module) -> Result<(Module, ModuleMap)> {
    alg.require_self_injective()?;
    let (i, im, _) = inj_hull(alg, m);
    Ok(cokernel(alg, &i, &im))
}

/// Nakayama functor `νM = D Hom_A(M, A)` on objects.
pub fn nakayama(alg: &QuiverAlgebra, m: &Module) -> Result<Module> {
    alg.require_self_injective()?;
    let nv = alg.num_vertices();
    let projs: Vec<Module> = (0..nv).map(|v| alg.projective(v)).collect();
    let homs: Vec<Vec<ModuleMap>> = (0..nv).map(|v| hom_basis(alg, m, &projs[v])).collect();
    let dims: Vec<usize> = homs.iter().map(|h| h.len()).collect();
    let maps = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let rho = arrow_map(alg, ai);
            let (v, w) = (a.src, a.tgt);
            let mut r = Matrix::zeros(dims[v], dims[w]);
            for (c, f) in homs[w].iter().enumerate() {
                let coords = express_map(&homs[v], &f.then(&rho)).expect("composite lies in Hom(M, P_v)");
                for (row, x) in coords.into_iter().enumerate() {
                    r.set(row, c, x);
                }
            }
            r.transpose()
        })
        .collect();
    Ok(Module { dims, maps })
}

/// Random integer combination of maps, coefficients in `[-9, 9]`.
pub fn random_combination(
    basis: &[ModuleMap],
    src: &Module,
    tgt: &Module,
    rng: &mut ChaCha8Rng,
) -> ModuleMap {
    let coeffs: Vec<Q> = basis.iter().map(|_| Q::from_integer(rng.gen_range(-9..=9).into())).collect();
    combine(basis, &coeffs, src, tgt)
}

/// An isomorphism `M → N`, if one exists. A generic element of `Hom(M, N)` is
/// invertible when the modules are isomorphic, so random elements are tried.
pub fn find_iso(alg: &QuiverAlgebra, m: &Module, n: &Module) -> Option<ModuleMap> {
    if m.dims != n.dims {
        return None;
    }
    if m.is_zero() {
        return Some(ModuleMap::zero(m, n));
    }
    let basis = hom_basis(alg, m, n);
    if basis.is_empty() {
        return None;
    }
    for b in &basis {
        if b.is_iso() {
            return Some(b.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1505);
    for _ in 0..24 {
        let f = random_combination(&basis, m, n, &mut rng);
        if f.is_iso() {
            return Some(f);
        }
    }
    None
}

pub fn isomorphic(alg: &QuiverAlgebra, m: &Module, n: &Module) -> bool {
    find_iso(alg, m, n).is_some()
}

/// Whether `M` is projective: its projective cover is an isomorphism.
pub fn is_projective(alg: &QuiverAlgebra, m: &Module) -> bool {
    let (p, _, _) = proj_cover(alg, m);
    p.dims == m.dims
}
