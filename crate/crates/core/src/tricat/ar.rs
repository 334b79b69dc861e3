use super::TriCat;
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArArrow {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

/// Vertices, irreducible-morphism arrows and the translation.
#[derive(Clone, Debug, Serialize)]
pub struct ArQuiver {
    pub labels: Vec<String>,
    pub arrows: Vec<ArArrow>,
    pub tau: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SerreReport {
    pub pairs_checked: usize,
    pub serre_equals_tau_sigma: bool,
}

impl ArQuiver {
    pub fn in_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.to == v).map(|a| a.multiplicity).sum()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.from == v).map(|a| a.multiplicity).sum()
    }

    pub fn multiplicity(&self, from: usize, to: usize) -> usize {
        self.arrows.iter().find(|a| a.from == from && a.to == to).map_or(0, |a| a.multiplicity)
    }

    /// Mesh condition: arrows into `x` come from the targets of arrows out of `τx`.
    pub fn is_translation_quiver(&self) -> bool {
        (0..self.labels.len()).all(|x| {
            let tx = self.tau[x];
            (0..self.labels.len()).all(|y| self.multiplicity(y, x) == self.multiplicity(tx, y))
        })
    }
}

impl TriCat {
    pub fn ar_quiver(&self) -> ArQuiver {
        let all: Vec<usize> = (0..self.n()).collect();
        let pc = self.as_presented(&all);
        let arrows = pc
            .arrows()
            .into_iter()
            .map(|(from, to, multiplicity)| ArArrow { from, to, multiplicity })
            .collect();
        ArQuiver { labels: self.labels.clone(), arrows, tau: self.tau.clone() }
    }

    /// Serre duality at the level of dimensions: `dim Hom(x, y) = dim Hom(y, Sx)`.
    pub fn serre_check(&self) -> Result<SerreReport> {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                if self.hom_dim(x, y) != self.hom_dim(y, self.serre[x]) {
                    return Err(Error::SerreViolation { x: self.labels[x].clone(), y: self.labels[y].clone() });
                }
            }
        }
        let serre_equals_tau_sigma = (0..n).all(|x| self.serre[x] == self.tau[self.sigma[x]]);
        Ok(SerreReport { pairs_checked: n * n, serre_equals_tau_sigma })
    }
}
