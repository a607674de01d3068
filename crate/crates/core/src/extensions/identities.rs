//! Executable forms of two identities linking `h`, the transgression of a
//! Schur covering and restriction to the derived subgroup.

use serde::Serialize;

use super::hom::Hom;
use super::pushforward::pushforward_cochain;
use crate::error::{Error, Result};
use crate::extsq::{exterior_square, hopf_data, pi_bar_homomorphism, schur_covering};
use crate::fp::table::GroupTable;
use crate::homology::solve::same_class;
use crate::homology::{cohomology, Cochain, CoefficientModule};

const MAX_HOMS: u64 = 1 << 12;

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub h2_multiplier: Vec<u64>,
    pub coefficients: Vec<u64>,
    pub hom_count: usize,
    /// `h(tg(β)) = β` for every `β ∈ Hom(H_2, k)`.
    pub identity_holds: bool,
    pub h2_order: usize,
    pub image_order: usize,
    /// Order of `ker h`, the Ext part of `H^2`.
    pub ext_order: usize,
    /// `|Ext(Γ_ab, k)|` from invariant factors alone.
    pub ext_expected: usize,
    pub intersection_trivial: bool,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        self.identity_holds
            && self.intersection_trivial
            && self.ext_order == self.ext_expected
            && self.image_order * self.ext_order == self.h2_order
    }
}

fn finite_moduli(k: &CoefficientModule) -> Result<Vec<u64>> {
    k.moduli().ok_or_else(|| Error::InvalidInput("needs finite coefficients".into()))
}

pub fn split_identity_check(g: &GroupTable, k: &CoefficientModule) -> Result<SplitReport> {
    let moduli = finite_moduli(k)?;
    let hopf = hopf_data(g)?;
    let cover = schur_covering(&hopf)?;
    let h2 = cohomology(g, k, 2)?;
    let homs = Hom::all(hopf.factors(), &moduli, MAX_HOMS)?;

    let mut identity_holds = true;
    let mut image: Vec<Vec<u64>> = Vec::new();
    for beta in &homs {
        let c = pushforward_cochain(&cover, beta)?;
        identity_holds &= hopf.h_map(&c) == beta.images;
        image.push(h2.class_of(&c, g)?);
    }
    image.sort();
    image.dedup();

    let elements = h2.elements()?;
    let mut ext_part = Vec::new();
    for coords in &elements {
        if hopf.h_map(&h2.cochain(coords)).iter().flatten().all(|&v| v == 0) {
            ext_part.push(coords.clone());
        }
    }
    let zero = vec![0u64; h2.generator_orders().len()];
    let intersection_trivial = image.iter().all(|c| *c == zero || !ext_part.contains(c));

    let ab = crate::fp::abelian::abelianization(&g.presentation("G")?);
    let ext_expected: usize = ab
        .torsion()
        .invariant_factors()
        .iter()
        .map(|&a| moduli.iter().map(|&m| crate::fp::abelian::gcd(a, m) as usize).product::<usize>())
        .product();

    Ok(SplitReport {
        h2_multiplier: hopf.factors().to_vec(),
        coefficients: moduli,
        hom_count: homs.len(),
        identity_holds,
        h2_order: elements.len(),
        image_order: image.len(),
        ext_order: ext_part.len(),
        ext_expected,
        intersection_trivial,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub coefficients: Vec<u64>,
    pub derived_order: usize,
    pub classes: usize,
    /// Classes whose restriction to `[Γ,Γ]` is nonzero.
    pub nonzero_restrictions: usize,
    pub failures: usize,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// For every class `π ∈ H^2(Γ,k)`, compares `tg_{id_bar}(h(π))` with the
/// restriction of `π` to `[Γ,Γ]`.
pub fn derived_restriction_check(g: &GroupTable, k: &CoefficientModule) -> Result<RestrictionReport> {
    let moduli = finite_moduli(k)?;
    let hopf = hopf_data(g)?;
    let cover = schur_covering(&hopf)?;
    let e = exterior_square(g)?;
    let wedge = e.realized();
    let to_h2 = pi_bar_homomorphism(&e, &cover)?;

    let derived = g.derived_subgroup();
    let (d, embed) = g.subgroup_table(&derived)?;
    // least element of each fibre of id_bar over [Γ,Γ]
    let section: Vec<usize> = embed
        .iter()
        .map(|&x| (0..wedge.order()).find(|&w| e.id_bar()[w] == x).expect("id_bar onto [G,G]"))
        .collect();
    let nd = d.order();
    let mut index_of = vec![usize::MAX; g.order()];
    for (i, &x) in embed.iter().enumerate() {
        index_of[x] = i;
    }
    // cocycle of ker(id_bar) -> Γ∧Γ -> [Γ,Γ], as elements of the kernel
    let raw: Vec<usize> = (0..nd * nd)
        .map(|t| {
            let (a, b) = (t / nd, t % nd);
            let ab = index_of[g.mul(embed[a], embed[b])];
            wedge.mul(wedge.mul(section[a], section[b]), wedge.inv(section[ab]))
        })
        .collect();

    let h2 = cohomology(g, k, 2)?;
    let mut failures = 0;
    let mut nonzero = 0;
    let elements = h2.elements()?;
    for coords in &elements {
        let pi = h2.cochain(coords);
        let h = Hom::new(hopf.factors(), &moduli, hopf.h_map(&pi))?;
        let lhs = Cochain::from_fn(2, nd, &moduli, |t| {
            let m = raw[t[0] * nd + t[1]];
            let v = cover.kernel_coords(to_h2[m]).expect("π̄ of ker(id_bar) lies in H_2");
            h.apply(&v)
        });
        let rhs = Cochain::from_fn(2, nd, &moduli, |t| pi.get(&[embed[t[0]], embed[t[1]]]).to_vec());
        if !same_class(&rhs, &Cochain::zero(2, nd, &moduli), &d)? {
            nonzero += 1;
        }
        if !same_class(&lhs, &rhs, &d)? {
            failures += 1;
        }
    }
    Ok(RestrictionReport { coefficients: moduli, derived_order: nd, classes: elements.len(), nonzero_restrictions: nonzero, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn table(name: &str) -> GroupTable {
        catalog::group(name).unwrap().table.clone()
    }

    #[test]
    fn split_on_klein_four() {
        let r = split_identity_check(&table("Z2xZ2"), &CoefficientModule::cyclic(2)).unwrap();
        assert_eq!(r.hom_count, 2);
        assert_eq!(r.h2_order, 8);
        assert_eq!((r.image_order, r.ext_order), (2, 4));
        assert!(r.passed());
    }

    #[test]
    fn split_on_q8_is_all_ext() {
        let r = split_identity_check(&table("Q8"), &CoefficientModule::cyclic(2)).unwrap();
        assert_eq!(r.hom_count, 1);
        assert_eq!(r.ext_order, r.h2_order);
        assert!(r.passed());
    }

    #[test]
    fn restriction_on_s3() {
        let r = derived_restriction_check(&table("S3"), &CoefficientModule::cyclic(3)).unwrap();
        assert_eq!(r.nonzero_restrictions, 0);
        assert!(r.passed());
    }
}
