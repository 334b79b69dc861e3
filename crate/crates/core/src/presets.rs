//! Shipped categories: orbit categories of ZAₙ, realized either as stable
//! module categories of self-injective algebras or as mesh categories.

use crate::algebra::{AlgebraSpec, QuiverAlgebra};
use crate::cover::{CoverVertex, OrbitQuiver, OrbitSpec};
use crate::error::{Error, Result};
use crate::stable::StableModel;
use crate::tricat::TriCat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

struct Shipped {
    name: &'static str,
    labels: &'static str,
    algebra: Option<&'static str>,
}

const SHIPPED: &[Shipped] = &[
    Shipped { name: "A9_t3s1", labels: include_str!("../presets/A9_t3s1.labels.json"), algebra: None },
    Shipped {
        name: "A5_tm2s1",
        labels: include_str!("../presets/A5_tm2s1.labels.json"),
        algebra: Some(include_str!("../presets/A5_tm2s1.algebra.json")),
    },
    Shipped {
        name: "A3_tm1s1",
        labels: include_str!("../presets/A3_tm1s1.labels.json"),
        algebra: Some(include_str!("../presets/A3_tm1s1.algebra.json")),
    },
    Shipped { name: "A4_tm1s1", labels: include_str!("../presets/A4_tm1s1.labels.json"), algebra: None },
];

#[derive(Deserialize)]
struct LabelFile {
    description: String,
    n: usize,
    a: i64,
    b: i64,
    labels: BTreeMap<String, [i64; 2]>,
}

/// Static description of a preset.
#[derive(Clone, Debug, Serialize)]
pub struct PresetInfo {
    pub name: String,
    pub description: String,
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub engine: Engine,
    pub labels: BTreeMap<String, CoverVertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Stable module category of a shipped self-injective algebra.
    Module,
    /// Mesh category of the orbit quiver.
    Mesh,
}

impl PresetInfo {
    pub fn spec(&self) -> OrbitSpec {
        OrbitSpec::new(self.n, self.a, self.b)
    }
}

/// Outcome of [`validate_preset`].
#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub preset: String,
    pub engine: Engine,
    pub vertices: usize,
    pub arrows: usize,
    pub hom_pairs_checked: usize,
    /// Catalog label, cover coordinate of the matched orbit.
    pub matching: Vec<(String, CoverVertex)>,
}

/// A validated preset ready for use.
#[derive(Clone, Debug)]
pub struct Preset {
    pub info: PresetInfo,
    pub cat: TriCat,
    pub model: Option<StableModel>,
    pub validation: Validation,
}

pub fn names() -> Vec<&'static str> {
    SHIPPED.iter().map(|s| s.name).collect()
}

fn shipped(name: &str) -> Result<&'static Shipped> {
    SHIPPED.iter().find(|s| s.name == name).ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

pub fn info(name: &str) -> Result<PresetInfo> {
    let s = shipped(name)?;
    let f: LabelFile = serde_json::from_str(s.labels).map_err(|e| Error::parse(e.to_string()))?;
    Ok(PresetInfo {
        name: name.to_string(),
        description: f.description,
        n: f.n,
        a: f.a,
        b: f.b,
        engine: if s.algebra.is_some() { Engine::Module } else { Engine::Mesh },
        labels: f.labels.into_iter().map(|(k, [p, i])| (k, (p, i))).collect(),
    })
}

/// The shipped algebra of a module preset.
pub fn algebra(name: &str) -> Result<Option<QuiverAlgebra>> {
    match shipped(name)?.algebra {
        None => Ok(None),
        Some(json) => {
            let spec: AlgebraSpec = serde_json::from_str(json).map_err(|e| Error::parse(e.to_string()))?;
            Ok(Some(QuiverAlgebra::from_spec(&spec)?))
        }
    }
}

/// Builds and validates a preset; display labels are transported onto the catalog.
pub fn load(name: &str) -> Result<Preset> {
    let info = info(name)?;
    let oq = OrbitQuiver::new(info.spec())?;
    match algebra(name)? {
        Some(alg) => {
            let mut model = StableModel::build(alg, name)?;
            let validation = validate_preset(&mut model.cat, &oq, &info.labels, name, Engine::Module)?;
            let cat = model.cat.clone();
            Ok(Preset { info, cat, model: Some(model), validation })
        }
        None => {
            let mut cat = oq.to_tricat(name, &info.labels)?;
            let validation = validate_preset(&mut cat, &oq, &info.labels, name, Engine::Mesh)?;
            Ok(Preset { info, cat, model: None, validation })
        }
    }
}

fn mismatch(msg: String) -> Error {
    Error::PresetMismatch(msg)
}

/// Matches a category against the orbit quiver: a bijection of indecomposables
/// commuting with τ and Σ and preserving Hom dimensions and the arrows of the
/// AR quiver computed from the composition tables. On success the labels and
/// cover coordinates of `cat` are replaced by those of the orbit quiver.
pub fn validate_preset(
    cat: &mut TriCat,
    oq: &OrbitQuiver,
    labels: &BTreeMap<String, CoverVertex>,
    preset: &str,
    engine: Engine,
) -> Result<Validation> {
    let n = cat.n();
    if n != oq.len() {
        return Err(mismatch(format!("vertex count: category has {n}, orbit quiver has {}", oq.len())));
    }
    cat.serre_check()?;
    let ar = cat.ar_quiver();
    let mut src_arrows = vec![0usize; n * n];
    for a in &ar.arrows {
        src_arrows[a.from * n + a.to] = a.multiplicity;
    }
    let mut tgt_arrows = vec![0usize; n * n];
    for &(a, b, m) in &oq.arrows {
        tgt_arrows[a * n + b] = m;
    }
    let src_hom = cat.hom_table();
    let tgt_hom: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| oq.hom_dim(x, y)).collect()).collect();
    let src_arrow_count: usize = src_arrows.iter().sum();
    let tgt_arrow_count: usize = tgt_arrows.iter().sum();
    if src_arrow_count != tgt_arrow_count {
        return Err(mismatch(format!(
            "arrow count: category has {src_arrow_count}, orbit quiver has {tgt_arrow_count}"
        )));
    }
    let search = IsoSearch {
        n,
        src_hom: &src_hom,
        tgt_hom: &tgt_hom,
        src_arrows: &src_arrows,
        tgt_arrows: &tgt_arrows,
        src_maps: [&cat.tau, &cat.sigma],
        tgt_maps: [&oq.tau, &oq.sigma],
    };
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !search.extend(0, &mut phi, &mut used) {
        return Err(mismatch("no bijection matches Hom dimensions, arrows, τ and Σ".into()));
    }
    let names = oq.orbit_labels(labels)?;
    cat.labels = phi.iter().map(|&o| names[o].clone()).collect();
    cat.cover = phi.iter().map(|&o| Some(oq.reps[o])).collect();
    Ok(Validation {
        preset: preset.to_string(),
        engine,
        vertices: n,
        arrows: src_arrow_count,
        hom_pairs_checked: n * n,
        matching: (0..n).map(|x| (cat.labels[x].clone(), oq.reps[phi[x]])).collect(),
    })
}

struct IsoSearch<'a> {
    n: usize,
    src_hom: &'a [Vec<usize>],
    tgt_hom: &'a [Vec<usize>],
    src_arrows: &'a [usize],
    tgt_arrows: &'a [usize],
    src_maps: [&'a [usize]; 2],
    tgt_maps: [&'a [usize]; 2],
}

impl IsoSearch<'_> {
    fn compatible(&self, x: usize, o: usize, phi: &[usize]) -> bool {
        let n = self.n;
        if self.src_hom[x][x] != self.tgt_hom[o][o] {
            return false;
        }
        for y in 0..n {
            let p = if y == x { o } else { phi[y] };
            if p == usize::MAX {
                continue;
            }
            if self.src_hom[x][y] != self.tgt_hom[o][p]
                || self.src_hom[y][x] != self.tgt_hom[p][o]
                || self.src_arrows[x * n + y] != self.tgt_arrows[o * n + p]
                || self.src_arrows[y * n + x] != self.tgt_arrows[p * n + o]
            {
                return false;
            }
        }
        for (s, t) in self.src_maps.iter().zip(&self.tgt_maps) {
            let img = phi[s[x]];
            if s[x] == x && t[o] != o || img != usize::MAX && img != t[o] {
                return false;
            }
            let pre = s.iter().position(|&z| z == x).expect("bijection");
            if phi[pre] != usize::MAX && t[phi[pre]] != o {
                return false;
            }
        }
        true
    }

    fn extend(&self, x: usize, phi: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if x == self.n {
            return true;
        }
        for o in 0..self.n {
            if used[o] || !self.compatible(x, o, phi) {
                continue;
            }
            phi[x] = o;
            used[o] = true;
            if self.extend(x + 1, phi, used) {
                return true;
            }
            phi[x] = usize::MAX;
            used[o] = false;
        }
        false
    }
}
