//! The translation quiver ZAₙ, the actions of τ and Σ on it, orbit quotients
//! ZAₙ/⟨τᵃΣᵇ⟩, and the mesh-category model of the orbit category.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};
use crate::tricat::{TriCat, TriCatData};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Vertex `(p, i)` of ZAₙ: slice `p`, level `i ∈ 1..=n`.
pub type CoverVertex = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSpec {
    pub n: usize,
    /// Exponent of τ in the generator τᵃΣᵇ.
    pub a: i64,
    /// Exponent of Σ in the generator.
    pub b: i64,
}

pub fn tau(v: CoverVertex) -> CoverVertex {
    (v.0 - 1, v.1)
}

pub fn tau_inv(v: CoverVertex) -> CoverVertex {
    (v.0 + 1, v.1)
}

pub fn sigma(n: usize, v: CoverVertex) -> CoverVertex {
    (v.0 + v.1, n as i64 + 1 - v.1)
}

pub fn sigma_inv(n: usize, v: CoverVertex) -> CoverVertex {
    let i = n as i64 + 1 - v.1;
    (v.0 - i, i)
}

/// `(τ, Σ)` as vertex maps on ZAₙ.
pub fn cover_actions(n: usize) -> (impl Fn(CoverVertex) -> CoverVertex, impl Fn(CoverVertex) -> CoverVertex) {
    (tau, move |v| sigma(n, v))
}

pub fn tau_pow(v: CoverVertex, k: i64) -> CoverVertex {
    (v.0 - k, v.1)
}

pub fn sigma_pow(n: usize, mut v: CoverVertex, k: i64) -> CoverVertex {
    for _ in 0..k.abs() {
        v = if k > 0 { sigma(n, v) } else { sigma_inv(n, v) };
    }
    v
}

impl OrbitSpec {
    pub fn new(n: usize, a: i64, b: i64) -> Self {
        OrbitSpec { n, a, b }
    }

    /// `F^k v` for the generator `F = τᵃΣᵇ`.
    pub fn apply(&self, v: CoverVertex, k: i64) -> CoverVertex {
        tau_pow(sigma_pow(self.n, v, k * self.b), k * self.a)
    }

    /// Smallest `e ∈ {1, 2}` with `F^e` a pure τ-power, and the shift `N` with `F^e = τ^{-N}`.
    pub fn translation_period(&self) -> (i64, i64) {
        let e = if self.b % 2 == 0 { 1 } else { 2 };
        let v = self.apply((0, 1), e);
        (e, v.0)
    }

    pub fn in_range(&self, v: CoverVertex) -> bool {
        v.1 >= 1 && v.1 <= self.n as i64
    }
}

/// Canonical arrows of ZAₙ: `up (p,i) → (p,i+1)` and `down (p,i) → (p+1,i-1)`.
pub fn cover_arrows(n: usize, v: CoverVertex) -> Vec<CoverVertex> {
    let mut out = Vec::new();
    if v.1 < n as i64 {
        out.push((v.0, v.1 + 1));
    }
    if v.1 > 1 {
        out.push((v.0 + 1, v.1 - 1));
    }
    out
}

/// `(u, d)` with `z = x + u·up + d·down` when `Hom(x, z) ≠ 0` in the mesh category of ZAₙ.
pub fn hom_rect(n: usize, x: CoverVertex, z: CoverVertex) -> Option<(i64, i64)> {
    let d = z.0 - x.0;
    let u = z.1 - x.1 + d;
    let n = n as i64;
    (u >= 0 && u <= n - x.1 && d >= 0 && d < x.1).then_some((u, d))
}

/// Hom dimension in D^b(mod Aₙ) between the indecomposables at two cover vertices.
pub fn hom_dim_cover(n: usize, v: CoverVertex, w: CoverVertex) -> usize {
    usize::from(hom_rect(n, v, w).is_some())
}

/// Sign of Σ^{±1} on the canonical path `U^u D^d`; it becomes `U^d D^u`.
fn sigma_sign(u: i64, d: i64) -> i64 {
    if (u * d) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign acquired by the canonical path of shape `(u, d)` under `k` applications
/// of `τᵃΣᵇ`, and the resulting shape. Every Σ^{±1} contributes `(-1)^{ud}` and
/// swaps `u` and `d`; τ contributes nothing.
fn generator_sign(spec: &OrbitSpec, u: i64, d: i64, k: i64) -> (i64, i64, i64) {
    let flips = (k * spec.b).abs();
    if flips % 2 == 1 {
        (sigma_sign(u, d), d, u)
    } else {
        (1, u, d)
    }
}

/// The finite translation quiver ZAₙ/⟨τᵃΣᵇ⟩.
#[derive(Clone, Debug)]
pub struct OrbitQuiver {
    pub spec: OrbitSpec,
    /// Canonical representative of each orbit.
    pub reps: Vec<CoverVertex>,
    index: HashMap<CoverVertex, usize>,
    pub tau: Vec<usize>,
    pub sigma: Vec<usize>,
    /// Arrows with multiplicity.
    pub arrows: Vec<(usize, usize, usize)>,
    period: (i64, i64),
}

impl OrbitQuiver {
    pub fn new(spec: OrbitSpec) -> Result<Self> {
        if spec.n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        let (e, shift) = spec.translation_period();
        if shift == 0 {
            return Err(Error::NonFreeAction { vertex: format!("{:?}", (0, 1)) });
        }
        for i in 1..=spec.n as i64 {
            let v = spec.apply((0, i), e);
            if v != (shift, i) {
                return Err(Error::InvalidInput("generator power is not a translation".into()));
            }
        }
        let mut q = OrbitQuiver {
            spec,
            reps: Vec::new(),
            index: HashMap::new(),
            tau: Vec::new(),
            sigma: Vec::new(),
            arrows: Vec::new(),
            period: (e, shift),
        };
        let width = shift.abs();
        let mut reps = Vec::new();
        for p in 0..width {
            for i in 1..=spec.n as i64 {
                let v = (p, i);
                if e == 2 && q.reduce(spec.apply(v, 1)) == v {
                    return Err(Error::NonFreeAction { vertex: format!("({p},{i})") });
                }
                let c = q.canonical(v);
                if !reps.contains(&c) {
                    reps.push(c);
                }
            }
        }
        reps.sort();
        q.index = reps.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        q.reps = reps;
        let n = spec.n;
        q.tau = q.reps.iter().map(|&v| q.orbit_of(tau(v))).collect();
        q.sigma = q.reps.iter().map(|&v| q.orbit_of(sigma(n, v))).collect();
        let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &v in &q.reps {
            for w in cover_arrows(n, v) {
                *mult.entry((q.orbit_of(v), q.orbit_of(w))).or_default() += 1;
            }
        }
        q.arrows = mult.into_iter().map(|((a, b), m)| (a, b, m)).collect();
        Ok(q)
    }

    fn reduce(&self, v: CoverVertex) -> CoverVertex {
        let w = self.period.1.abs();
        (v.0.rem_euclid(w), v.1)
    }

    fn canonical(&self, v: CoverVertex) -> CoverVertex {
        let a = self.reduce(v);
        if self.period.0 == 2 {
            a.min(self.reduce(self.spec.apply(v, 1)))
        } else {
            a
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn orbit_of(&self, v: CoverVertex) -> usize {
        self.index[&self.canonical(v)]
    }

    /// Exponent `k` with `F^k(rep(orbit_of(v))) = v`.
    pub fn exponent_of(&self, v: CoverVertex) -> i64 {
        let r = self.reps[self.orbit_of(v)];
        let (e, shift) = self.period;
        for j in 0..e {
            let w = self.spec.apply(r, j);
            let diff = v.0 - w.0;
            if w.1 == v.1 && diff % shift == 0 {
                return j + e * (diff / shift);
            }
        }
        unreachable!("vertex lies in its orbit")
    }

    /// Exponents `k` with `Hom(x̂, F^k ŷ) ≠ 0`, increasing, with the path shape.
    pub fn hom_support(&self, x: usize, y: usize) -> Vec<(i64, i64, i64)> {
        let (xr, yr) = (self.reps[x], self.reps[y]);
        let (e, shift) = self.period;
        let reach = (self.spec.n as i64 + 2) / shift.abs() + 2;
        let mut out = Vec::new();
        for k in (-e * reach - e)..=(e * reach + e) {
            if let Some((u, d)) = hom_rect(self.spec.n, xr, self.spec.apply(yr, k)) {
                out.push((k, u, d));
            }
        }
        out
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom_support(x, y).len()
    }

    /// Mesh-category model of the orbit category as a [`TriCat`]; `labels`
    /// assigns names to cover vertices (any orbit representative), the rest
    /// are named `v{p}_{i}` after their canonical representative.
    /// Names for the orbits: `labels` assigns names to cover vertices (any
    /// orbit representative), the rest are named `v{p}_{i}` after their
    /// canonical representative.
    pub fn orbit_labels(&self, labels: &BTreeMap<String, CoverVertex>) -> Result<Vec<String>> {
        let mut names: Vec<Option<String>> = vec![None; self.len()];
        for (l, &v) in labels {
            if !self.spec.in_range(v) {
                return Err(Error::InvalidInput(format!("label {l} at {v:?} is off the quiver")));
            }
            let o = self.orbit_of(v);
            if let Some(prev) = &names[o] {
                return Err(Error::InvalidInput(format!("labels {prev} and {l} name the same object")));
            }
            names[o] = Some(l.clone());
        }
        Ok(names
            .into_iter()
            .enumerate()
            .map(|(o, l)| l.unwrap_or_else(|| format!("v{}_{}", self.reps[o].0, self.reps[o].1)))
            .collect())
    }

    /// Mesh-category model of the orbit category as a [`TriCat`], named by [`Self::orbit_labels`].
    pub fn to_tricat(&self, name: &str, labels: &BTreeMap<String, CoverVertex>) -> Result<TriCat> {
        let k = self.len();
        let labels = self.orbit_labels(labels)?;
        let supports: Vec<Vec<(i64, i64, i64)>> =
            (0..k * k).map(|xy| self.hom_support(xy / k, xy % k)).collect();
        let hom: Vec<usize> = supports.iter().map(|s| s.len()).collect();
        let n = self.spec.n;
        let spec = self.spec;
        let mut comp = Vec::with_capacity(k * k * k);
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let (sxy, syz, sxz) = (&supports[x * k + y], &supports[y * k + z], &supports[x * k + z]);
                    let mut table = Vec::with_capacity(sxy.len() * syz.len());
                    for &(k1, _u1, d1) in sxy {
                        for &(k2, u2, d2) in syz {
                            let mut v = vec![Q::zero(); sxz.len()];
                            let (s, u2g, _d2g) = generator_sign(&spec, u2, d2, k1);
                            if let Some(pos) = sxz.iter().position(|&(k3, _, _)| k3 == k1 + k2) {
                                let sign = if (d1 * u2g) % 2 == 0 { s } else { -s };
                                v[pos] = Q::from_integer(sign.into());
                            }
                            table.push(v);
                        }
                    }
                    comp.push(table);
                }
            }
        }
        // Σ: Hom(x̂, F^k ŷ) → Hom(σx̂, σF^k ŷ), re-based at the canonical representatives.
        let sig: Vec<usize> = self.sigma.clone();
        let shifts: Vec<i64> = self.reps.iter().map(|&v| self.exponent_of(sigma(n, v))).collect();
        let mut sigma_mor = Vec::with_capacity(k * k);
        for x in 0..k {
            for y in 0..k {
                let src = &supports[x * k + y];
                let tgt = &supports[sig[x] * k + sig[y]];
                let mut m = Matrix::zeros(tgt.len(), src.len());
                for (c, &(kk, u, d)) in src.iter().enumerate() {
                    let s1 = sigma_sign(u, d);
                    let (s2, _, _) = generator_sign(&spec, d, u, -shifts[x]);
                    let k_new = kk + shifts[y] - shifts[x];
                    let r = tgt
                        .iter()
                        .position(|&(k3, _, _)| k3 == k_new)
                        .ok_or_else(|| Error::ConstructionFailed("Σ does not preserve the hammock".into()))?;
                    m.set(r, c, Q::from_integer((s1 * s2).into()));
                }
                sigma_mor.push(m);
            }
        }
        let identity = (0..k)
            .map(|x| {
                let s = &supports[x * k + x];
                s.iter().map(|&(kk, _, _)| if kk == 0 { Q::one() } else { Q::zero() }).collect()
            })
            .collect();
        TriCat::from_data(TriCatData {
            name: name.to_string(),
            labels,
            cover: self.reps.iter().map(|&v| Some(v)).collect(),
            sigma: sig,
            tau: self.tau.clone(),
            hom,
            comp,
            sigma_mor,
            identity,
        })
    }
}

/// Brute-force model of D^b(mod Aₙ) for linear Aₙ with arrows `i+1 → i`:
/// interval modules `[x, y]`, Homs and Ext¹ computed from explicit representations.
pub mod oracle {
    use super::{sigma, sigma_inv, CoverVertex};
    use crate::algebra::module::{hom_dim, kernel, proj_cover};
    use crate::algebra::{AlgebraSpec, ArrowSpec, Module, QuiverAlgebra};
    use crate::linalg::Matrix;

    pub struct DerivedAn {
        pub n: usize,
        pub alg: QuiverAlgebra,
    }

    impl DerivedAn {
        pub fn new(n: usize) -> Self {
            let spec = AlgebraSpec {
                vertices: (1..=n).map(|i| i.to_string()).collect(),
                arrows: (1..n)
                    .map(|i| ArrowSpec {
                        id: format!("a{i}"),
                        src: (i + 1).to_string(),
                        tgt: i.to_string(),
                    })
                    .collect(),
                relations: Vec::new(),
            };
            DerivedAn { n, alg: QuiverAlgebra::from_spec(&spec).expect("path algebra of A_n") }
        }

        /// Interval module supported on vertices `x..=y` (1-based).
        pub fn interval(&self, x: usize, y: usize) -> Module {
            let dims: Vec<usize> = (1..=self.n).map(|v| usize::from(x <= v && v <= y)).collect();
            let maps = self
                .alg
                .arrows
                .iter()
                .map(|a| {
                    let (s, t) = (a.src, a.tgt);
                    let mut m = Matrix::zeros(dims[t], dims[s]);
                    if dims[t] == 1 && dims[s] == 1 {
                        m.set(0, 0, crate::linalg::q(1));
                    }
                    m
                })
                .collect();
            Module { dims, maps }
        }

        pub fn hom(&self, m: &Module, n: &Module) -> usize {
            hom_dim(&self.alg, m, n)
        }

        /// `dim Ext¹(M, N)` from a projective resolution `0 → ΩM → P → M → 0`.
        pub fn ext1(&self, m: &Module, n: &Module) -> usize {
            let (p, pm, _) = proj_cover(&self.alg, m);
            let (om, _) = kernel(&self.alg, &p, &pm);
            self.hom(&om, n) + self.hom(m, n) - self.hom(&p, n)
        }

        /// The interval module and shift placed at a cover vertex: modules
        /// occupy `0 ≤ p`, `p + i ≤ n` with `(p, i) ↦ [p+1, p+i]`, and the
        /// rest is reached by the cover Σ.
        pub fn place(&self, v: CoverVertex) -> ((usize, usize), i64) {
            let n = self.n as i64;
            let mut v = v;
            let mut shift = 0;
            loop {
                if v.0 >= 0 && v.0 + v.1 <= n {
                    return (((v.0 + 1) as usize, (v.0 + v.1) as usize), shift);
                }
                if v.0 < 0 {
                    v = sigma(self.n, v);
                    shift -= 1;
                } else {
                    v = sigma_inv(self.n, v);
                    shift += 1;
                }
            }
        }

        /// `dim Hom_{D^b}(M[s], N[t])` for the objects placed at two vertices.
        pub fn derived_hom(&self, v: CoverVertex, w: CoverVertex) -> usize {
            let ((x1, y1), s) = self.place(v);
            let ((x2, y2), t) = self.place(w);
            let (m, n) = (self.interval(x1, y1), self.interval(x2, y2));
            match t - s {
                0 => self.hom(&m, &n),
                1 => self.ext1(&m, &n),
                _ => 0,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_formula_matches_brute_force() {
        for n in 1..=5usize {
            let d = oracle::DerivedAn::new(n);
            let window: Vec<CoverVertex> = (-(2 * n as i64)..=(2 * n as i64))
                .flat_map(|p| (1..=n as i64).map(move |i| (p, i)))
                .collect();
            for &v in &window {
                for &w in &window {
                    assert_eq!(d.derived_hom(v, w), hom_dim_cover(n, v, w), "n={n} v={v:?} w={w:?}");
                }
            }
        }
    }

    #[test]
    fn n1_sigma_is_tau_inverse() {
        for p in -3..3 {
            assert_eq!(sigma(1, (p, 1)), tau_inv((p, 1)));
        }
    }

    #[test]
    fn tau_sigma_commute() {
        for n in 1..=9 {
            for p in -5..5 {
                for i in 1..=n as i64 {
                    assert_eq!(tau(sigma(n, (p, i))), sigma(n, tau((p, i))));
                    assert_eq!(sigma_inv(n, sigma(n, (p, i))), (p, i));
                }
            }
        }
    }

    #[test]
    fn generator_square_a9() {
        let s = OrbitSpec::new(9, 3, 1);
        for i in 1..=9 {
            assert_eq!(s.apply((0, i), 2), (4, i));
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(OrbitQuiver::new(OrbitSpec::new(9, 3, 1)).unwrap().len(), 18);
        assert_eq!(OrbitQuiver::new(OrbitSpec::new(5, -2, 1)).unwrap().len(), 25);
        assert_eq!(OrbitQuiver::new(OrbitSpec::new(3, -1, 1)).unwrap().len(), 9);
        assert_eq!(OrbitQuiver::new(OrbitSpec::new(4, -1, 1)).unwrap().len(), 14);
    }

    #[test]
    fn non_free_action_rejected() {
        // Σ² = τ^{-4} on ZA₃, so τ⁴Σ² is the identity.
        assert!(matches!(OrbitQuiver::new(OrbitSpec::new(3, 4, 2)), Err(Error::NonFreeAction { .. })));
    }

    #[test]
    fn mesh_model_is_a_category_with_functorial_sigma() {
        for spec in [OrbitSpec::new(3, -1, 1), OrbitSpec::new(4, -1, 1), OrbitSpec::new(9, 3, 1)] {
            let q = OrbitQuiver::new(spec).unwrap();
            let c = q.to_tricat("t", &BTreeMap::new()).unwrap();
            assert!(c.check_units_and_sigma(), "{spec:?}");
            assert!(c.check_associative(), "{spec:?}");
            assert!(c.serre_check().is_ok());
        }
    }
}
