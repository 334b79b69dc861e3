use super::module::{hom_basis, image, kernel, random_combination, Module, ModuleMap};
use super::QuiverAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{minimal_polynomial, rational_roots, Matrix, Q};
use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// An indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Piece {
    pub module: Module,
    pub incl: ModuleMap,
    pub proj: ModuleMap,
}

pub type Decomposition = Vec<Piece>;

/// Splits `M` into indecomposable summands.
pub fn decompose(alg: &QuiverAlgebra, m: &Module) -> Result<Decomposition> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    match split(alg, m)? {
        None => Ok(vec![Piece {
            module: m.clone(),
            incl: ModuleMap::identity(m),
            proj: ModuleMap::identity(m),
        }]),
        Some(parts) => {
            let mut out = Vec::new();
            for (sub, incl, proj) in parts {
                for piece in decompose(alg, &sub)? {
                    out.push(Piece {
                        module: piece.module,
                        incl: piece.incl.then(&incl),
                        proj: proj.then(&piece.proj),
                    });
                }
            }
            Ok(out)
        }
    }
}

pub fn is_indecomposable(alg: &QuiverAlgebra, m: &Module) -> Result<bool> {
    Ok(!m.is_zero() && split(alg, m)?.is_none())
}

/// Dimension of `End(M)` modulo its radical.
pub fn top_dim(alg: &QuiverAlgebra, m: &Module) -> usize {
    let basis = hom_basis(alg, m, m);
    let blocks: Vec<Matrix> = basis.iter().map(|f| f.to_block()).collect();
    basis.len() - radical_coords(&blocks).len()
}

/// Coordinate vectors (in the given basis) of the radical of the
/// endomorphism algebra, computed as the kernel of the trace form.
fn radical_coords(blocks: &[Matrix]) -> Vec<Vec<Q>> {
    let n = blocks.len();
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = blocks[i].mul(&blocks[j]).trace();
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    gram.nullspace()
}

type Part = (Module, ModuleMap, ModuleMap);

fn split(alg: &QuiverAlgebra, m: &Module) -> Result<Option<Vec<Part>>> {
    let basis = hom_basis(alg, m, m);
    if basis.len() <= 1 {
        return Ok(None);
    }
    let blocks: Vec<Matrix> = basis.iter().map(|f| f.to_block()).collect();
    if basis.len() - radical_coords(&blocks).len() == 1 {
        return Ok(None);
    }
    let mut candidates: Vec<ModuleMap> = basis.clone();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            candidates.push(basis[i].add(&basis[j]));
        }
    }
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            candidates.push(basis[i].then(&basis[j]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xdec0);
    for _ in 0..40 {
        candidates.push(random_combination(&basis, m, m, &mut rng));
    }
    for x in &candidates {
        if let Some(parts) = split_by(alg, m, x) {
            return Ok(Some(parts));
        }
    }
    Err(Error::NonSplitField(format!("no rational idempotent found in End of module {:?}", m.dims)))
}

/// Splits along the generalized eigenspace of a rational eigenvalue of `x`.
fn split_by(alg: &QuiverAlgebra, m: &Module, x: &ModuleMap) -> Option<Vec<Part>> {
    let poly = minimal_polynomial(&x.to_block());
    let deg = poly.len() - 1;
    for lambda in rational_roots(&poly) {
        let k = root_multiplicity(&poly, &lambda);
        if k == deg {
            continue;
        }
        let shifted = ModuleMap {
            comps: x
                .comps
                .iter()
                .map(|c| c.sub(&Matrix::identity(c.rows).scale(&lambda)).pow(k))
                .collect(),
        };
        let (v, iv) = kernel(alg, m, &shifted);
        let (w, iw) = image(alg, m, &shifted);
        let mut pv = Vec::new();
        let mut pw = Vec::new();
        for vert in 0..m.dims.len() {
            let b = iv.comps[vert].hstack(&iw.comps[vert]).inverse()?;
            let all: Vec<usize> = (0..m.dims[vert]).collect();
            let top: Vec<usize> = (0..v.dims[vert]).collect();
            let bottom: Vec<usize> = (v.dims[vert]..m.dims[vert]).collect();
            pv.push(b.submatrix(&top, &all));
            pw.push(b.submatrix(&bottom, &all));
        }
        return Some(vec![
            (v, iv, ModuleMap { comps: pv }),
            (w, iw, ModuleMap { comps: pw }),
        ]);
    }
    None
}

fn root_multiplicity(poly: &[Q], lambda: &Q) -> usize {
    let mut p = poly.to_vec();
    let mut k = 0;
    loop {
        // Synthetic division by (t - lambda).
        let n = p.len();
        if n < 2 {
            return k;
        }
        let mut quot = vec![Q::zero(); n - 1];
        let mut carry = Q::zero();
        for i in (1..n).rev() {
            carry = &p[i] + &carry * lambda;
            quot[i - 1] = carry.clone();
        }
        let rem = &p[0] + &carry * lambda;
        if !rem.is_zero() {
            return k;
        }
        k += 1;
        p = quot;
    }
}

/// Indecomposable summands up to isomorphism, with multiplicities.
pub fn decompose_grouped(alg: &QuiverAlgebra, m: &Module) -> Result<Vec<(Module, usize)>> {
    let mut groups: Vec<(Module, usize)> = Vec::new();
    for piece in decompose(alg, m)? {
        match groups.iter_mut().find(|(g, _)| super::module::isomorphic(alg, g, &piece.module)) {
            Some(entry) => entry.1 += 1,
            None => groups.push((piece.module, 1)),
        }
    }
    Ok(groups)
}
