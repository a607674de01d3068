//! The transgression `Hom(A, k) -> H^2(Γ, k)` and the five-term
//! inflation–restriction sequence of a central extension.

use std::collections::HashSet;

use serde::Serialize;

use super::central::CentralExtension;
use super::hom::{abelian_coords, abelian_order, Hom};
use super::pushforward::pushforward_cochain;
use crate::error::{Error, Result};
use crate::homology::cohomology::MAX_ENUMERATION;
use crate::homology::solve::CoboundarySolver;
use crate::homology::{cohomology, Cochain, CoefficientModule, CohomologyGroup};

/// `tg(β) = [β∘c]` on the generators of `Hom(A, k)`.
#[derive(Clone, Debug)]
pub struct Transgression {
    pub hom_generators: Vec<Hom>,
    pub hom_orders: Vec<u64>,
    pub h2: CohomologyGroup,
    /// H² coordinates of the image of each generator.
    pub images: Vec<Vec<u64>>,
    extension: CentralExtension,
}

fn finite_moduli(k: &CoefficientModule) -> Result<Vec<u64>> {
    k.moduli().ok_or_else(|| Error::InvalidInput("a finite coefficient module is required".into()))
}

impl Transgression {
    pub fn cochain(&self, beta: &Hom) -> Result<Cochain> {
        pushforward_cochain(&self.extension, beta)
    }

    pub fn class_of(&self, beta: &Hom) -> Result<Vec<u64>> {
        self.h2.class_of(&self.cochain(beta)?, self.extension.base())
    }

    /// Image of `Σ coords_i · generator_i`, computed from the generator
    /// images alone.
    pub fn apply_coords(&self, coords: &[u64]) -> Vec<u64> {
        let orders = self.h2.generator_orders();
        let mut out = vec![0u64; orders.len()];
        for (&k, img) in coords.iter().zip(&self.images) {
            for ((o, &v), &m) in out.iter_mut().zip(img).zip(orders) {
                *o = (*o + k % m * v) % m;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| v.iter().all(|&x| x == 0))
    }
}

pub fn transgression(e: &CentralExtension, k: &CoefficientModule) -> Result<Transgression> {
    let h2 = cohomology(e.base(), k, 2)?;
    let (hom_generators, hom_orders) = match k.moduli() {
        Some(m) => Hom::generators(e.moduli(), &m),
        // Hom from a finite group into Q vanishes
        None => (vec![], vec![]),
    };
    let mut t = Transgression { hom_generators, hom_orders, h2, images: vec![], extension: e.clone() };
    t.images = t.hom_generators.iter().map(|b| t.class_of(b)).collect::<Result<_>>()?;
    Ok(t)
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    pub node: String,
    pub image_order: usize,
    pub kernel_order: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub coefficients: String,
    pub h1_base: usize,
    pub h1_total: usize,
    pub h1_kernel: usize,
    pub h2_base: usize,
    pub nodes: Vec<NodeReport>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }
}

fn node<T: Eq + std::hash::Hash>(name: &str, image: HashSet<T>, kernel: HashSet<T>) -> NodeReport {
    NodeReport { node: name.to_string(), image_order: image.len(), kernel_order: kernel.len(), exact: image == kernel }
}

/// Homomorphisms `G -> k` as normalized 1-cochains.
fn h1_elements(g: &crate::fp::GroupTable, k: &CoefficientModule) -> Result<Vec<Cochain>> {
    let h1 = cohomology(g, k, 1)?;
    Ok(h1.elements()?.iter().map(|c| h1.cochain(c)).collect())
}

/// Computes every term and map of
/// `0 -> H^1(Γ) -> H^1(L) -> H^1(A) -> H^2(Γ) -> H^2(L)` and compares image
/// with kernel at each interior node, element by element.
pub fn five_term_check(e: &CentralExtension, k: &CoefficientModule) -> Result<ExactnessReport> {
    let km = finite_moduli(k)?;
    let base = e.base();
    let total = e.total();
    let h1_base = h1_elements(base, k)?;
    let h1_total = h1_elements(total, k)?;
    let homs = Hom::all(e.moduli(), &km, MAX_ENUMERATION)?;
    let tg = transgression(e, k)?;
    let h2 = &tg.h2;
    let h2_elems = h2.elements()?;
    let zero1 = Cochain::zero(1, total.order(), &km);

    // inflation in degree 1
    let inflated: Vec<Cochain> = h1_base.iter().map(|f| f.pullback(e.projection())).collect();
    let inf1_kernel: HashSet<usize> = inflated.iter().enumerate().filter(|(_, f)| **f == zero1).map(|(i, _)| i).collect();
    let n1 = NodeReport {
        node: "H1(Gamma)".into(),
        image_order: 1,
        kernel_order: inf1_kernel.len(),
        exact: inf1_kernel.len() == 1,
    };

    // restriction to the kernel
    let units: Vec<Vec<u64>> = (0..e.moduli().len())
        .map(|i| {
            let mut v = vec![0u64; e.moduli().len()];
            v[i] = 1;
            v
        })
        .collect();
    let restrict = |f: &Cochain| -> Hom {
        Hom { source: e.moduli().to_vec(), target: km.clone(), images: units.iter().map(|u| f.get(&[e.embed(u)]).to_vec()).collect() }
    };
    let restricted: Vec<Hom> = h1_total.iter().map(restrict).collect();
    // the restriction must agree with F on the whole kernel, not just on generators
    for (f, r) in h1_total.iter().zip(&restricted) {
        for i in 0..abelian_order(e.moduli()) {
            let a = abelian_coords(e.moduli(), i);
            if f.get(&[e.embed(&a)]) != r.apply(&a).as_slice() {
                return Err(Error::InvalidInput("degree-1 class is not additive on the kernel".into()));
            }
        }
    }
    let n2 = node(
        "H1(L)",
        inflated.iter().cloned().collect(),
        h1_total.iter().zip(&restricted).filter(|(_, r)| r.is_zero()).map(|(f, _)| f.clone()).collect(),
    );

    let tg_classes: Vec<Vec<u64>> = homs.iter().map(|b| tg.class_of(b)).collect::<Result<_>>()?;
    let n3 = node(
        "H1(A)",
        restricted.iter().cloned().collect(),
        homs.iter().zip(&tg_classes).filter(|(_, c)| c.iter().all(|&x| x == 0)).map(|(b, _)| b.clone()).collect(),
    );

    let solver = CoboundarySolver::new(total, 2, &km)?;
    let inf2_kernel: HashSet<Vec<u64>> = h2_elems
        .iter()
        .filter(|x| solver.is_coboundary(&h2.cochain(x).pullback(e.projection())))
        .cloned()
        .collect();
    let n4 = node("H2(Gamma)", tg_classes.iter().cloned().collect(), inf2_kernel);

    Ok(ExactnessReport {
        coefficients: k.to_string(),
        h1_base: h1_base.len(),
        h1_total: h1_total.len(),
        h1_kernel: homs.len(),
        h2_base: h2_elems.len(),
        nodes: vec![n1, n2, n3, n4],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::central::{extension_from_cocycle, Cocycle2};
    use crate::fp::GroupTable;

    fn ext(g: GroupTable, m: u64, f: impl Fn(usize, usize) -> u64) -> CentralExtension {
        let n = g.order();
        let c = Cochain::from_fn(2, n, &[m], |t| vec![f(t[0], t[1])]);
        extension_from_cocycle(&Cocycle2::new(&g, c).unwrap()).unwrap()
    }

    #[test]
    fn z4_over_z2() {
        let e = ext(GroupTable::cyclic(2), 2, |x, y| u64::from(x + y >= 2));
        let k = CoefficientModule::cyclic(2);
        let t = transgression(&e, &k).unwrap();
        assert_eq!(t.images, vec![vec![1]]);
        let r = five_term_check(&e, &k).unwrap();
        assert!(r.exact(), "{r:?}");
        assert_eq!(r.h1_total, 2);
    }

    #[test]
    fn heisenberg_three() {
        let g = GroupTable::cyclic(3).direct_product(&GroupTable::cyclic(3));
        let e = ext(g, 3, |x, y| ((x / 3) * (y % 3) % 3) as u64);
        let k = CoefficientModule::prime_field(3).unwrap();
        let r = five_term_check(&e, &k).unwrap();
        assert!(r.exact());
        assert_eq!(r.h1_total, 9);
        assert_eq!(r.nodes[2].kernel_order, 1);
    }

    #[test]
    fn split_extension_has_zero_transgression() {
        let e = ext(GroupTable::cyclic(4), 2, |_, _| 0);
        let k = CoefficientModule::cyclic(4);
        assert!(transgression(&e, &k).unwrap().is_zero());
        let r = five_term_check(&e, &k).unwrap();
        assert!(r.exact());
        // H^1(Z4 x Z2, Z/4) = Z/4 x Z/2
        assert_eq!(r.h1_total, 8);
    }
}
