//! Changing the kernel of a central extension along `β: A -> k`.

use super::central::{extension_from_cocycle, CentralExtension, Cocycle2};
use super::hom::{abelian_coords, abelian_index, abelian_order, neg_coords, Hom};
use crate::error::{Error, Result};
use crate::fp::GroupTable;
use crate::homology::solve::same_class;
use crate::homology::Cochain;

fn check_source(e: &CentralExtension, beta: &Hom) -> Result<()> {
    if beta.source != e.moduli() {
        return Err(Error::DimensionMismatch("β must start at the kernel of the extension".into()));
    }
    Ok(())
}

/// `β∘c` for the canonical cocycle `c` of `e`.
pub fn pushforward_cochain(e: &CentralExtension, beta: &Hom) -> Result<Cochain> {
    check_source(e, beta)?;
    Ok(e.cocycle().map_values(&beta.target, |a| beta.apply(a)))
}

/// `L^β` realized from the cocycle `β∘c`.
pub fn pushforward(e: &CentralExtension, beta: &Hom) -> Result<CentralExtension> {
    let c = pushforward_cochain(e, beta)?;
    extension_from_cocycle(&Cocycle2::new(e.base(), c)?)
}

/// Table of `⊕ Z/m_j` indexed compatibly with [`abelian_index`].
pub fn abelian_table(moduli: &[u64]) -> GroupTable {
    moduli.iter().fold(GroupTable::cyclic(1), |acc, &m| acc.direct_product(&GroupTable::cyclic(m as usize)))
}

/// `(L × k) / gr(−β)` built as an explicit quotient, together with the maps
/// `L -> L^β` and `k -> L^β` induced by `id × 0` and `0 × id`.
#[derive(Clone, Debug)]
pub struct QuotientPushforward {
    pub extension: CentralExtension,
    pub from_total: Vec<usize>,
    pub from_kernel: Vec<usize>,
}

impl QuotientPushforward {
    /// Checks that both squares of the pushforward diagram commute and that
    /// `L -> L^β` is a homomorphism.
    pub fn diagram_commutes(&self, e: &CentralExtension, beta: &Hom) -> bool {
        let lb = self.extension.total();
        let l = e.total();
        let hom = (0..l.order())
            .all(|x| (0..l.order()).all(|y| self.from_total[l.mul(x, y)] == lb.mul(self.from_total[x], self.from_total[y])));
        let right = (0..l.order()).all(|x| self.extension.projection()[self.from_total[x]] == e.projection()[x]);
        let left = (0..abelian_order(e.moduli())).all(|i| {
            let a = abelian_coords(e.moduli(), i);
            self.from_total[e.embed(&a)] == self.from_kernel[abelian_index(&beta.target, &beta.apply(&a))]
        });
        hom && right && left
    }
}

pub fn pushforward_quotient(e: &CentralExtension, beta: &Hom) -> Result<QuotientPushforward> {
    check_source(e, beta)?;
    let k = abelian_table(&beta.target);
    let nk = k.order();
    let product = e.total().direct_product(&k);
    let graph: Vec<usize> = (0..abelian_order(e.moduli()))
        .map(|i| {
            let a = abelian_coords(e.moduli(), i);
            let b = neg_coords(&beta.target, &beta.apply(&a));
            e.embed(&a) * nk + abelian_index(&beta.target, &b)
        })
        .collect();
    let mut graph_sorted = graph.clone();
    graph_sorted.sort_unstable();
    graph_sorted.dedup();
    let (quotient, proj) = product.quotient(&graph_sorted)?;
    let mut projection = vec![0usize; quotient.order()];
    for (p, &q) in proj.iter().enumerate() {
        projection[q] = e.projection()[p / nk];
    }
    let from_kernel: Vec<usize> = (0..nk).map(|b| proj[b]).collect();
    let from_total: Vec<usize> = (0..e.total().order()).map(|l| proj[l * nk]).collect();
    let extension = CentralExtension::from_parts(e.base(), &quotient, &beta.target, projection, from_kernel.clone())?;
    Ok(QuotientPushforward { extension, from_total, from_kernel })
}

/// Cross-check of the two constructions: isomorphic total groups (by
/// brute-force search) and cohomologous cocycles over the same base.
pub fn constructions_agree(e: &CentralExtension, beta: &Hom) -> Result<bool> {
    let a = pushforward(e, beta)?;
    let b = pushforward_quotient(e, beta)?;
    Ok(b.diagram_commutes(e, beta)
        && a.total().is_isomorphic(b.extension.total())
        && same_class(a.cocycle(), b.extension.cocycle(), e.base())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_over_z2() -> CentralExtension {
        let g = GroupTable::cyclic(2);
        let c = Cochain::from_fn(2, 2, &[2], |t| vec![u64::from(t[0] + t[1] >= 2)]);
        extension_from_cocycle(&Cocycle2::new(&g, c).unwrap()).unwrap()
    }

    #[test]
    fn zero_beta_splits() {
        let e = z4_over_z2();
        let beta = Hom::zero(&[2], &[3]);
        let p = pushforward(&e, &beta).unwrap();
        assert!(p.cocycle().is_zero());
        assert!(constructions_agree(&e, &beta).unwrap());
    }

    #[test]
    fn identity_beta_recovers_the_extension() {
        let e = z4_over_z2();
        let beta = Hom::identity(&[2]);
        let q = pushforward_quotient(&e, &beta).unwrap();
        assert!(q.extension.total().is_isomorphic(e.total()));
        assert!(q.diagram_commutes(&e, &beta));
    }

    #[test]
    fn inclusion_into_z4() {
        let e = z4_over_z2();
        let beta = Hom::new(&[2], &[4], vec![vec![2]]).unwrap();
        let p = pushforward(&e, &beta).unwrap();
        assert_eq!(p.total().order(), 8);
        assert!(constructions_agree(&e, &beta).unwrap());
    }
}
