//! The universal coefficient sequence
//! `0 -> Ext(G_ab, k) -> H^2(G, k) -> Hom(H_2(G), k) -> 0`
//! with both maps written out on representatives.

use std::collections::HashSet;

use serde_json::json;

use super::cochain::Cochain;
use super::cohomology::{cohomology, CohomologyGroup, MAX_ENUMERATION};
use super::hopf::HopfData;
use super::module::CoefficientModule;
use crate::error::{Error, Result};
use crate::fp::abelian::{gcd, FiniteAbelian};
use crate::fp::{AbelianGroup, GroupTable};

#[derive(Clone, Debug)]
pub struct UctSequence {
    pub ext_term: AbelianGroup,
    pub h2: CohomologyGroup,
    pub h2_integral: AbelianGroup,
    pub hom_term: AbelianGroup,
    /// Cocycle realizing each Ext generator, `(abelianization factor,
    /// module factor)` pairs in row-major order.
    pub ext_cocycles: Vec<Cochain>,
    /// H² coordinates of each Ext generator.
    pub ext_map: Vec<Vec<u64>>,
    /// Hom coordinates of the image of each H² generator.
    pub hom_map: Vec<Vec<u64>>,
    ext_orders: Vec<u64>,
    hom_orders: Vec<u64>,
    exact: Option<bool>,
}

/// The cocycle `(x, y) -> a if x + y wraps past d` on `Z/d`.
pub fn carry(d: u64, x: u64, y: u64) -> bool {
    x + y >= d
}

impl UctSequence {
    /// Whether exactness was confirmed element by element; `None` when the
    /// module is rational or the groups are too large to enumerate.
    pub fn exact(&self) -> Option<bool> {
        self.exact
    }

    pub fn ext_element_to_h2(&self, coords: &[u64]) -> Vec<u64> {
        combine(coords, &self.ext_map, self.h2.generator_orders())
    }

    pub fn h2_element_to_hom(&self, coords: &[u64]) -> Vec<u64> {
        combine(coords, &self.hom_map, &self.hom_orders)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ext": self.ext_term.to_string(),
            "h2": self.h2.summary_json(),
            "h2_integral": self.h2_integral.to_string(),
            "hom": self.hom_term.to_string(),
            "ext_map": self.ext_map,
            "hom_map": self.hom_map,
            "exact": self.exact,
        })
    }

    fn check_exactness(&mut self) -> Result<()> {
        let ext_count: u64 = self.ext_orders.iter().product();
        if ext_count > MAX_ENUMERATION || self.h2.order() > MAX_ENUMERATION {
            self.exact = None;
            return Ok(());
        }
        let ext_elems = enumerate(&self.ext_orders);
        let ext_image: HashSet<Vec<u64>> = ext_elems.iter().map(|e| self.ext_element_to_h2(e)).collect();
        let injective = ext_image.len() as u64 == ext_count;
        let mut kernel = HashSet::new();
        let mut image = HashSet::new();
        for x in self.h2.elements()? {
            let y = self.h2_element_to_hom(&x);
            if y.iter().all(|&v| v == 0) {
                kernel.insert(x);
            }
            image.insert(y);
        }
        let hom_count: u64 = self.hom_orders.iter().product();
        let surjective = image.len() as u64 == hom_count;
        self.exact = Some(injective && surjective && kernel == ext_image);
        Ok(())
    }
}

fn combine(coords: &[u64], images: &[Vec<u64>], orders: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; orders.len()];
    for (&k, img) in coords.iter().zip(images) {
        for ((o, &v), &m) in out.iter_mut().zip(img).zip(orders) {
            *o = (*o + k % m * v) % m;
        }
    }
    out
}

fn enumerate(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &o in orders {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..o).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Builds the sequence for `H^2(g, k)` and checks exactness.
pub fn uct_sequence(g: &GroupTable, k: &CoefficientModule) -> Result<UctSequence> {
    let h2 = cohomology(g, k, 2)?;
    let presentation = g.presentation("G")?;
    let hopf = HopfData::new(&presentation, g)?;
    let h2_integral = hopf.multiplier().clone();
    let (ab, proj) = g.quotient(&g.derived_subgroup())?;
    let all: Vec<usize> = (0..ab.order()).collect();
    let chi = FiniteAbelian::new(&ab, &all)?;
    let Some(moduli) = k.moduli() else {
        // rational coefficients: Ext and Hom of torsion groups into Q vanish
        if h2.dimension() != Some(0) {
            return Err(Error::DimensionMismatch("H^2 with rational coefficients is nonzero".into()));
        }
        return Ok(UctSequence {
            ext_term: AbelianGroup::trivial(),
            h2,
            h2_integral,
            hom_term: AbelianGroup::trivial(),
            ext_cocycles: vec![],
            ext_map: vec![],
            hom_map: vec![],
            ext_orders: vec![],
            hom_orders: vec![],
            exact: None,
        });
    };

    let mut ext_orders = Vec::new();
    let mut ext_cocycles = Vec::new();
    for (i, &d) in chi.factors().iter().enumerate() {
        for (j, &m) in moduli.iter().enumerate() {
            let o = gcd(d, m);
            if o == 1 {
                continue;
            }
            ext_orders.push(o);
            ext_cocycles.push(Cochain::from_fn(2, g.order(), &moduli, |t| {
                let (x, y) = (chi.coords(proj[t[0]]).unwrap()[i], chi.coords(proj[t[1]]).unwrap()[i]);
                let mut v = vec![0; moduli.len()];
                if carry(d, x, y) {
                    v[j] = 1;
                }
                v
            }));
        }
    }
    let ext_map = ext_cocycles.iter().map(|c| h2.class_of(c, g)).collect::<Result<Vec<_>>>()?;

    // Hom(⊕Z/f_i, ⊕Z/m_j) = ⊕ Z/gcd(f_i, m_j), generator 1 -> m_j / gcd
    let f = hopf.factors().to_vec();
    let mut hom_orders = Vec::new();
    let mut hom_slots = Vec::new();
    for (i, &fi) in f.iter().enumerate() {
        for (j, &m) in moduli.iter().enumerate() {
            let o = gcd(fi, m);
            if o > 1 {
                hom_orders.push(o);
                hom_slots.push((i, j, m / o));
            }
        }
    }
    let mut hom_map = Vec::new();
    for rep in h2.representatives() {
        let h = hopf.h_map(rep);
        let mut coords = Vec::with_capacity(hom_slots.len());
        for &(i, j, step) in &hom_slots {
            let v = h[i][j];
            if v % step != 0 {
                return Err(Error::DualityViolation(format!("h value {v} is not killed by {}", f[i])));
            }
            coords.push(v / step);
        }
        hom_map.push(coords);
    }

    let mut seq = UctSequence {
        ext_term: AbelianGroup::from_cyclic(&ext_orders),
        h2,
        h2_integral,
        hom_term: AbelianGroup::from_cyclic(&hom_orders),
        ext_cocycles,
        ext_map,
        hom_map,
        ext_orders,
        hom_orders,
        exact: None,
    };
    seq.check_exactness()?;
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v4() -> GroupTable {
        GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2))
    }

    #[test]
    fn cyclic_two() {
        let s = uct_sequence(&GroupTable::cyclic(2), &CoefficientModule::cyclic(2)).unwrap();
        assert_eq!(s.ext_term.order(), Some(2));
        assert_eq!(s.h2.order(), 2);
        assert!(s.hom_term.is_trivial());
        assert_eq!(s.exact(), Some(true));
    }

    #[test]
    fn klein_four() {
        let s = uct_sequence(&v4(), &CoefficientModule::cyclic(2)).unwrap();
        assert_eq!(s.ext_term.order(), Some(4));
        assert_eq!(s.hom_term.order(), Some(2));
        assert_eq!(s.h2.order(), 8);
        assert_eq!(s.exact(), Some(true));
    }

    #[test]
    fn trivial_group() {
        let s = uct_sequence(&GroupTable::cyclic(1), &CoefficientModule::cyclic(6)).unwrap();
        assert!(s.ext_term.is_trivial() && s.hom_term.is_trivial());
        assert_eq!(s.h2.order(), 1);
    }

    #[test]
    fn rational() {
        let s = uct_sequence(&v4(), &CoefficientModule::Rationals).unwrap();
        assert_eq!(s.h2.dimension(), Some(0));
        assert_eq!(s.exact(), None);
    }
}
