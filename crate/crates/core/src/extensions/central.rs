//! Central extensions `1 -> A -> L -> Γ -> 1` stored through a normalized
//! cocycle, with the total group realized as a table on pairs `(γ, a)`.

use serde_json::json;

use super::hom::{abelian_coords, abelian_index, abelian_order, add_coords, neg_coords};
use crate::error::{Error, Result};
use crate::fp::{AbelianGroup, GroupTable};
use crate::homology::Cochain;

/// A normalized 2-cocycle `Γ × Γ -> A` with `A = ⊕ Z/m_j`.
#[derive(Clone, Debug)]
pub struct Cocycle2 {
    base: GroupTable,
    cochain: Cochain,
}

impl Cocycle2 {
    pub fn new(base: &GroupTable, cochain: Cochain) -> Result<Self> {
        if cochain.degree() != 2 || cochain.group_order() != base.order() {
            return Err(Error::DimensionMismatch("expected a 2-cochain on the base group".into()));
        }
        if !cochain.is_normalized() {
            return Err(Error::InvalidInput("cocycle is not normalized".into()));
        }
        if !cochain.is_cocycle(base) {
            return Err(Error::InvalidInput("cocycle identity fails".into()));
        }
        Ok(Cocycle2 { base: base.clone(), cochain })
    }

    pub fn zero(base: &GroupTable, moduli: &[u64]) -> Self {
        Cocycle2 { base: base.clone(), cochain: Cochain::zero(2, base.order(), moduli) }
    }

    pub fn base(&self) -> &GroupTable {
        &self.base
    }

    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }

    pub fn moduli(&self) -> &[u64] {
        self.cochain.moduli()
    }

    pub fn kernel(&self) -> AbelianGroup {
        AbelianGroup::from_cyclic(self.moduli())
    }
}

/// A central extension with an explicit total group. The kernel `A` is
/// identified with `⊕ Z/m_j` through `kernel[abelian_index(a)]`.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    base: GroupTable,
    total: GroupTable,
    moduli: Vec<u64>,
    projection: Vec<usize>,
    kernel: Vec<usize>,
    kernel_index: Vec<Option<usize>>,
    section: Vec<usize>,
    cocycle: Cochain,
}

impl CentralExtension {
    /// Assembles an extension from a surjection `total -> base` and an
    /// embedding of `⊕ Z/m_j` onto its kernel, checking every axiom. The
    /// section is the least element of each fibre.
    pub fn from_parts(
        base: &GroupTable,
        total: &GroupTable,
        moduli: &[u64],
        projection: Vec<usize>,
        kernel: Vec<usize>,
    ) -> Result<Self> {
        let (nl, ng) = (total.order(), base.order());
        if projection.len() != nl || projection.iter().any(|&x| x >= ng) {
            return Err(Error::InvalidInput("projection has the wrong shape".into()));
        }
        for x in 0..nl {
            for y in 0..nl {
                if projection[total.mul(x, y)] != base.mul(projection[x], projection[y]) {
                    return Err(Error::InvalidInput("projection is not a homomorphism".into()));
                }
            }
        }
        let na = abelian_order(moduli);
        if kernel.len() != na || na * ng != nl {
            return Err(Error::DimensionMismatch(format!("|L| = {nl} but |Γ|·|A| = {}", na * ng)));
        }
        let mut kernel_index = vec![None; nl];
        for (i, &k) in kernel.iter().enumerate() {
            if k >= nl || projection[k] != 0 || kernel_index[k].is_some() {
                return Err(Error::InvalidInput("kernel embedding is not injective into the kernel".into()));
            }
            kernel_index[k] = Some(i);
        }
        for i in 0..na {
            let a = abelian_coords(moduli, i);
            for j in 0..na {
                let b = abelian_coords(moduli, j);
                let s = abelian_index(moduli, &add_coords(moduli, &a, &b));
                if total.mul(kernel[i], kernel[j]) != kernel[s] {
                    return Err(Error::InvalidInput("kernel embedding is not a homomorphism".into()));
                }
            }
        }
        for &k in &kernel {
            for x in 0..nl {
                if total.mul(k, x) != total.mul(x, k) {
                    return Err(Error::NotCentral(format!("kernel element {k} does not commute with {x}")));
                }
            }
        }
        let mut section = vec![usize::MAX; ng];
        for (x, &g) in projection.iter().enumerate() {
            if section[g] == usize::MAX {
                section[g] = x;
            }
        }
        if section.contains(&usize::MAX) {
            return Err(Error::InvalidInput("projection is not surjective".into()));
        }
        let mut e = CentralExtension {
            base: base.clone(),
            total: total.clone(),
            moduli: moduli.to_vec(),
            projection,
            kernel,
            kernel_index,
            section: section.clone(),
            cocycle: Cochain::zero(2, ng, moduli),
        };
        e.cocycle = e.cocycle_for_section(&section)?;
        Ok(e)
    }

    pub fn base(&self) -> &GroupTable {
        &self.base
    }

    pub fn total(&self) -> &GroupTable {
        &self.total
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn kernel_group(&self) -> AbelianGroup {
        AbelianGroup::from_cyclic(&self.moduli)
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Element of `L` for each kernel element, by mixed-radix index.
    pub fn kernel_elements(&self) -> &[usize] {
        &self.kernel
    }

    pub fn embed(&self, a: &[u64]) -> usize {
        self.kernel[abelian_index(&self.moduli, a)]
    }

    /// Kernel coordinates of an element of `L`, if it lies in the kernel.
    pub fn kernel_coords(&self, x: usize) -> Option<Vec<u64>> {
        self.kernel_index[x].map(|i| abelian_coords(&self.moduli, i))
    }

    /// The canonical section: least element of each fibre.
    pub fn section(&self) -> &[usize] {
        &self.section
    }

    /// Cocycle of the canonical section.
    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    pub fn to_cocycle(&self) -> Cocycle2 {
        Cocycle2 { base: self.base.clone(), cochain: self.cocycle.clone() }
    }

    /// `c(x, y) = s(x) s(y) s(xy)^-1` for a normalized section `s`.
    pub fn cocycle_for_section(&self, section: &[usize]) -> Result<Cochain> {
        let ng = self.base.order();
        if section.len() != ng || section.iter().enumerate().any(|(g, &s)| s >= self.total.order() || self.projection[s] != g) {
            return Err(Error::InvalidInput("not a section of the projection".into()));
        }
        if section[0] != 0 {
            return Err(Error::InvalidInput("section must send the identity to the identity".into()));
        }
        let t = &self.total;
        let mut err = None;
        let c = Cochain::from_fn(2, ng, &self.moduli, |tu| {
            let (x, y) = (tu[0], tu[1]);
            let v = t.mul(t.mul(section[x], section[y]), t.inv(section[self.base.mul(x, y)]));
            self.kernel_coords(v).unwrap_or_else(|| {
                err = Some(Error::InvalidInput("section product left the kernel".into()));
                vec![0; self.moduli.len()]
            })
        });
        match err {
            Some(e) => Err(e),
            None => Ok(c),
        }
    }

    pub fn summary_json(&self) -> serde_json::Value {
        json!({
            "base_order": self.base.order(),
            "kernel": self.kernel_group().to_string(),
            "total_order": self.total.order(),
            "total_abelian": self.total.is_abelian(),
            "center_order": self.total.center().len(),
        })
    }
}

/// Realizes `L = Γ ×_c A` with `(γ,a)(γ′,a′) = (γγ′, a+a′+c(γ,γ′))`, stored
/// at index `γ·|A| + index(a)`.
pub fn extension_from_cocycle(c: &Cocycle2) -> Result<CentralExtension> {
    let base = c.base();
    let moduli = c.moduli().to_vec();
    let (ng, na) = (base.order(), abelian_order(&moduli));
    let n = ng * na;
    let coords: Vec<Vec<u64>> = (0..na).map(|i| abelian_coords(&moduli, i)).collect();
    let mut mul = vec![0u32; n * n];
    for g in 0..ng {
        for h in 0..ng {
            let gh = base.mul(g, h);
            let cv = c.cochain().get(&[g, h]);
            for (i, a) in coords.iter().enumerate() {
                let ac = add_coords(&moduli, a, cv);
                for (j, b) in coords.iter().enumerate() {
                    let s = abelian_index(&moduli, &add_coords(&moduli, &ac, b));
                    mul[(g * na + i) * n + h * na + j] = (gh * na + s) as u32;
                }
            }
        }
    }
    let mut gens: Vec<usize> = base.generators().iter().map(|&g| g * na).collect();
    for j in 0..moduli.len() {
        let mut e = vec![0u64; moduli.len()];
        e[j] = 1;
        gens.push(abelian_index(&moduli, &e));
    }
    let total = GroupTable::from_mul(n, mul, gens)?;
    let projection = (0..n).map(|x| x / na).collect();
    let kernel = (0..na).collect();
    CentralExtension::from_parts(base, &total, &moduli, projection, kernel)
}

/// The cocycle of an extension with respect to any normalized section.
pub fn cocycle_from_extension(e: &CentralExtension, section: &[usize]) -> Result<Cocycle2> {
    Ok(Cocycle2 { base: e.base.clone(), cochain: e.cocycle_for_section(section)? })
}

/// `s′(γ) = s(γ)·a(γ)` for kernel elements `a(γ)` with `a(1) = 0`.
pub fn shifted_section(e: &CentralExtension, shift: &[Vec<u64>]) -> Vec<usize> {
    e.section.iter().zip(shift).map(|(&s, a)| e.total.mul(s, e.embed(a))).collect()
}

/// Negation in the kernel, as an element of `L`.
pub fn kernel_negate(e: &CentralExtension, a: &[u64]) -> usize {
    e.embed(&neg_coords(&e.moduli, a))
}
